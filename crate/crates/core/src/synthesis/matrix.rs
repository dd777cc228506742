//! The matrix-state construction.
//!
//! A state `(M, i)` stands for the `i`-th of the `l` syntactic classes inside
//! one class of the governing relation, listed by increasing least
//! representative; `M(j, j')` is the pair-automaton state reached on the
//! representatives `(u_j, u_j')`. Everything needed to extend the words by
//! one letter is readable from `M`, so the construction never materializes
//! the representatives themselves.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::Letter;
use crate::error::{Error, Result};
use crate::nfa::{Nfa, StateId};
use crate::relation::DiagonalSet;

/// An `l × l` matrix of pair-automaton states with a distinguished row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixState {
    dimension: usize,
    entries: Vec<StateId>,
    row: usize,
}

impl MatrixState {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Zero-based distinguished row.
    pub fn row(&self) -> usize {
        self.row
    }

    pub fn entry(&self, i: usize, j: usize) -> StateId {
        self.entries[i * self.dimension + j]
    }

    pub fn entries(&self) -> &[StateId] {
        &self.entries
    }
}

/// The states the construction walks over: pairs of a complete pair-DFA for
/// `R` and, optionally, a complete pair-DFA for a coarser relation `P`
/// which then governs the outputs. Without `P`, `R` governs them.
pub(crate) struct PairSpace<'a> {
    letters: usize,
    relation: &'a Nfa,
    diagonal: &'a DiagonalSet,
    coarse: Option<&'a Nfa>,
}

impl<'a> PairSpace<'a> {
    pub fn new(letters: usize, relation: &'a Nfa, diagonal: &'a DiagonalSet, coarse: Option<&'a Nfa>) -> Self {
        debug_assert!(relation.is_deterministic() && relation.is_complete());
        debug_assert!(coarse.is_none_or(|p| p.is_deterministic() && p.is_complete()));
        PairSpace {
            letters,
            relation,
            diagonal,
            coarse,
        }
    }

    fn width(&self) -> usize {
        self.coarse.map_or(1, Nfa::num_states)
    }

    fn split(&self, q: StateId) -> (StateId, StateId) {
        (q / self.width(), q % self.width())
    }

    pub fn initial(&self) -> StateId {
        let r0 = self.relation.initials()[0];
        let p0 = self.coarse.map_or(0, |p| p.initials()[0]);
        r0 * self.width() + p0
    }

    pub fn step(&self, q: StateId, a: Letter, b: Letter) -> StateId {
        let (r, p) = self.split(q);
        let letter = a * self.letters + b;
        let r2 = self.relation.step(r, letter).expect("complete");
        let p2 = self.coarse.map_or(0, |c| c.step(p, letter).expect("complete"));
        r2 * self.width() + p2
    }

    /// Pairs in the governing relation.
    pub fn related(&self, q: StateId) -> bool {
        let (r, p) = self.split(q);
        match self.coarse {
            Some(c) => c.is_final(p),
            None => self.relation.is_final(r),
        }
    }

    /// Syntactically congruent pairs.
    pub fn syntactic(&self, q: StateId) -> bool {
        self.diagonal.contains(self.split(q).0)
    }

    /// Pairs in `R` itself.
    pub fn in_relation(&self, q: StateId) -> bool {
        self.relation.is_final(self.split(q).0)
    }
}

/// How the pairs `{0..l} × A` of a matrix split when every representative
/// is extended by one letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessorPartition {
    letters: usize,
    /// Index of the governing-relation class of every pair `j * |A| + b`.
    related_class: Vec<usize>,
    /// Least pair of the syntactic class of every pair.
    syntactic_leader: Vec<usize>,
    /// Per governing class, its syntactic leaders in increasing order.
    representatives: Vec<Vec<usize>>,
}

impl SuccessorPartition {
    pub(crate) fn compute(space: &PairSpace<'_>, m: &MatrixState) -> Result<Self> {
        let k = space.letters;
        let l = m.dimension;
        let q = |x: usize, y: usize| space.step(m.entry(x / k, y / k), x % k, y % k);
        let total = l * k;
        let mut related_class = vec![0; total];
        let mut class_leaders: Vec<usize> = Vec::new();
        let mut syntactic_leader = vec![0; total];
        let mut syn_leaders: Vec<usize> = Vec::new();
        let mut representatives: Vec<Vec<usize>> = Vec::new();
        for x in 0..total {
            match class_leaders.iter().position(|&y| space.related(q(y, x))) {
                Some(c) => related_class[x] = c,
                None => {
                    related_class[x] = class_leaders.len();
                    class_leaders.push(x);
                    representatives.push(Vec::new());
                }
            }
            match syn_leaders.iter().find(|&&y| space.syntactic(q(y, x))) {
                Some(&y) => {
                    if related_class[y] != related_class[x] {
                        return Err(Error::InvariantBreach(
                            "syntactic class straddles two classes of the relation".into(),
                        ));
                    }
                    syntactic_leader[x] = y;
                }
                None => {
                    syntactic_leader[x] = x;
                    syn_leaders.push(x);
                    representatives[related_class[x]].push(x);
                }
            }
        }
        Ok(SuccessorPartition {
            letters: k,
            related_class,
            syntactic_leader,
            representatives,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    /// Governing class of `(row, letter)`.
    pub fn class_of(&self, row: usize, letter: Letter) -> usize {
        self.related_class[row * self.letters + letter]
    }

    /// Minimal syntactic representatives of a class, as `(row, letter)`, increasing.
    pub fn representatives(&self, class: usize) -> impl Iterator<Item = (usize, Letter)> + '_ {
        self.representatives[class]
            .iter()
            .map(|&x| (x / self.letters, x % self.letters))
    }

    /// Least element of a class; doubles as the output letter.
    pub fn output(&self, class: usize) -> (usize, Letter) {
        let x = self.representatives[class][0];
        (x / self.letters, x % self.letters)
    }

    fn successor(&self, space: &PairSpace<'_>, m: &MatrixState, row: usize, letter: Letter) -> MatrixState {
        let k = self.letters;
        let x = row * k + letter;
        let reps = &self.representatives[self.related_class[x]];
        let dim = reps.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &y in reps {
            for &z in reps {
                entries.push(space.step(m.entry(y / k, z / k), y % k, z % k));
            }
        }
        let leader = self.syntactic_leader[x];
        let new_row = reps
            .iter()
            .position(|&y| y == leader)
            .expect("leader is a representative");
        MatrixState {
            dimension: dim,
            entries,
            row: new_row,
        }
    }
}

/// Result of running the worklist: reachable matrix states and transitions
/// labelled with `(row, letter)` output pairs.
pub(crate) struct MatrixMachine {
    pub states: Vec<MatrixState>,
    /// `transitions[state][letter] = ((row, letter) output, target)`.
    pub transitions: Vec<Vec<((usize, Letter), StateId)>>,
    pub max_dimension: usize,
}

pub(crate) fn explore(space: &PairSpace<'_>, dimension_cap: usize) -> Result<MatrixMachine> {
    let k = space.letters;
    let start = MatrixState {
        dimension: 1,
        entries: vec![space.initial()],
        row: 0,
    };
    let mut index: HashMap<MatrixState, StateId> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut transitions = Vec::new();
    let mut partitions: HashMap<Vec<StateId>, SuccessorPartition> = HashMap::new();
    let mut queue = VecDeque::from([0]);
    let mut max_dimension = 1;
    while let Some(id) = queue.pop_front() {
        let m = states[id].clone();
        check_matrix(space, &m)?;
        if !partitions.contains_key(&m.entries) {
            let p = SuccessorPartition::compute(space, &m)?;
            partitions.insert(m.entries.clone(), p);
        }
        let partition = &partitions[&m.entries];
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next = partition.successor(space, &m, m.row, a);
            if next.dimension > dimension_cap {
                return Err(Error::DimensionCap { cap: dimension_cap });
            }
            max_dimension = max_dimension.max(next.dimension);
            let output = partition.output(partition.class_of(m.row, a));
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = states.len();
                    index.insert(next.clone(), t);
                    states.push(next);
                    queue.push_back(t);
                    t
                }
            };
            row.push((output, target));
        }
        transitions.push(row);
    }
    Ok(MatrixMachine {
        states,
        transitions,
        max_dimension,
    })
}

/// Every entry relates its representatives and the diagonal is syntactic.
fn check_matrix(space: &PairSpace<'_>, m: &MatrixState) -> Result<()> {
    for i in 0..m.dimension {
        for j in 0..m.dimension {
            let q = m.entry(i, j);
            if !space.related(q) {
                return Err(Error::InvariantBreach(format!(
                    "matrix entry ({i}, {j}) is not accepting"
                )));
            }
            if i == j && !space.syntactic(q) {
                return Err(Error::InvariantBreach(format!("diagonal entry {i} is not diagonal")));
            }
        }
    }
    Ok(())
}

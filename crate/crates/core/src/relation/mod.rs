//! Algebra of letter-to-letter relations: equivalence checks, composition,
//! inverse, syntactic congruence and prefix closure. Transitive closure and
//! lexicographic uniformization live in submodules.

mod closure;
mod uniformize;

pub use closure::{
    transitive_closure, transitive_closure_with, ClosureOptions, ClosureResult, DEFAULT_CLOSURE_STATE_BUDGET,
};
pub use uniformize::min_lex_uniformizer;
pub(crate) use uniformize::min_lex_uniformizer_unchecked;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nfa::{Nfa, StateId};
use crate::transducer::LetterTransducer;

/// Which equivalence-relation axioms a relation satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationValidation {
    pub is_letter_to_letter: bool,
    pub is_reflexive: bool,
    pub is_symmetric: bool,
    pub is_transitive: bool,
}

impl RelationValidation {
    pub fn is_equivalence(&self) -> bool {
        self.is_letter_to_letter && self.is_reflexive && self.is_symmetric && self.is_transitive
    }
}

/// Checks `Id ⊆ R`, `R⁻¹ ⊆ R` and `R∘R ⊆ R` by automata inclusion.
pub fn validate_relation(r: &LetterTransducer) -> RelationValidation {
    if !r.is_endo() {
        return RelationValidation {
            is_letter_to_letter: true,
            is_reflexive: false,
            is_symmetric: false,
            is_transitive: false,
        };
    }
    let id = LetterTransducer::identity(r.input_alphabet());
    let subset = |x: &LetterTransducer| x.is_subset_of(r).expect("same alphabets");
    RelationValidation {
        is_letter_to_letter: true,
        is_reflexive: subset(&id),
        is_symmetric: subset(&inverse(r)),
        is_transitive: subset(&compose(r, r).expect("same alphabets")),
    }
}

pub(crate) fn require_equivalence(r: &LetterTransducer) -> Result<()> {
    if validate_relation(r).is_equivalence() {
        Ok(())
    } else {
        Err(Error::NotEquivalence)
    }
}

/// `R∘S = {(u, w) | ∃v. u S v ∧ v R w}`: applies `s` first, then `r`.
pub fn compose(r: &LetterTransducer, s: &LetterTransducer) -> Result<LetterTransducer> {
    if s.output_alphabet() != r.input_alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "cannot feed outputs over {} into a relation reading {}",
            s.output_alphabet(),
            r.input_alphabet()
        )));
    }
    let input = s.input_alphabet().clone();
    let output = r.output_alphabet().clone();
    let pair_alphabet = input.product(&output);
    let (sa, ra) = (s.automaton(), r.automaton());
    let mut out = Nfa::new(pair_alphabet, 0);
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    for &p in sa.initials() {
        for &q in ra.initials() {
            let id = out.add_state(sa.is_final(p) && ra.is_final(q));
            index.insert((p, q), id);
            states.push((p, q));
            out.add_initial(id);
            queue.push_back(id);
        }
    }
    let width = output.len();
    while let Some(id) = queue.pop_front() {
        let (p, q) = states[id];
        for (_, a, b, p2) in transitions_of(s, p) {
            for (_, b2, c, q2) in transitions_of(r, q) {
                if b2 != b {
                    continue;
                }
                let t = *index.entry((p2, q2)).or_insert_with(|| {
                    let t = out.add_state(sa.is_final(p2) && ra.is_final(q2));
                    states.push((p2, q2));
                    queue.push_back(t);
                    t
                });
                out.add_transition(id, a * width + c, t);
            }
        }
    }
    LetterTransducer::new(input, output, out)
}

fn transitions_of(t: &LetterTransducer, p: StateId) -> impl Iterator<Item = (StateId, usize, usize, StateId)> + '_ {
    t.automaton().transitions_from(p).iter().map(move |&(l, q)| {
        let (a, b) = t.split(l);
        (p, a, b, q)
    })
}

/// `R⁻¹`: swaps the tracks of every transition.
pub fn inverse(r: &LetterTransducer) -> LetterTransducer {
    LetterTransducer::from_transitions(
        r.output_alphabet().clone(),
        r.input_alphabet().clone(),
        r.num_states(),
        r.transitions().map(|(p, a, b, q)| (p, b, a, q)),
        r.automaton().initials().iter().copied(),
        r.automaton().finals(),
    )
    .expect("swapping tracks preserves well-formedness")
}

/// States of a pair-deterministic transducer from which the identity
/// relation is accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSet {
    members: Vec<bool>,
}

impl DiagonalSet {
    /// Greatest set of final states closed under diagonal moves `(a, a)`,
    /// requiring every diagonal move to exist. `r` must be deterministic.
    pub fn compute(r: &LetterTransducer) -> Self {
        let nfa = r.automaton();
        let n = nfa.num_states();
        let letters: Vec<usize> = r.input_alphabet().letters().map(|a| r.pair(a, a)).collect();
        let mut bad: Vec<bool> = (0..n)
            .map(|q| !nfa.is_final(q) || letters.iter().any(|&l| nfa.step(q, l).is_none()))
            .collect();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for &l in &letters {
                if let Some(t) = nfa.step(q, l) {
                    preds[t].push(q);
                }
            }
        }
        let mut stack: Vec<StateId> = (0..n).filter(|&q| bad[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !bad[p] {
                    bad[p] = true;
                    stack.push(p);
                }
            }
        }
        DiagonalSet {
            members: bad.into_iter().map(|b| !b).collect(),
        }
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.members.get(q).copied().unwrap_or(false)
    }

    pub fn members(&self) -> impl Iterator<Item = StateId> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(q, _)| q)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The syntactic congruence `S_R` together with the pair-deterministic
/// automaton for `R` it was carved out of.
#[derive(Clone, Debug)]
pub struct SyntacticCongruence {
    /// Minimal complete pair-DFA for `R`.
    pub relation: LetterTransducer,
    /// `relation` with finals restricted to the diagonal states.
    pub congruence: LetterTransducer,
    /// Diagonal states of `relation` (the finals of `congruence`).
    pub diagonal: DiagonalSet,
}

/// Computes `S_R` for an equivalence relation `R`.
pub fn syntactic_congruence(r: &LetterTransducer) -> Result<SyntacticCongruence> {
    require_equivalence(r)?;
    Ok(syntactic_congruence_unchecked(r))
}

pub(crate) fn syntactic_congruence_unchecked(r: &LetterTransducer) -> SyntacticCongruence {
    let relation = r.minimized();
    let diagonal = DiagonalSet::compute(&relation);
    let congruence = relation.with_automaton(relation.automaton().with_finals(|q| diagonal.contains(q)));
    SyntacticCongruence {
        relation,
        congruence,
        diagonal,
    }
}

/// `P_R`: every state that can reach a final state becomes final.
pub fn prefix_closure(r: &LetterTransducer) -> LetterTransducer {
    let coacc = r.automaton().co_accessible();
    r.with_automaton(r.automaton().with_finals(|q| coacc[q]))
}

/// Whether `R = P_R`, decided by looking for a non-final state in the
/// trimmed pair-DFA.
pub fn is_prefix_closed(r: &LetterTransducer) -> Result<bool> {
    require_equivalence(r)?;
    Ok(is_prefix_closed_unchecked(r))
}

pub(crate) fn is_prefix_closed_unchecked(r: &LetterTransducer) -> bool {
    let dfa = r.automaton().minimize().trim();
    (0..dfa.num_states()).all(|q| dfa.is_final(q))
}

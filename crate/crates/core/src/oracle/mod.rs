//! Brute-force semantics on all words up to a length bound. Nothing here
//! uses the determinization, diagonal-set or product constructions the
//! decision procedures rely on; runs are simulated directly on state sets.

mod random;

pub use random::{generate_instance, generate_suite, seed_from_env, Family, RandomInstance, DEFAULT_SEED, SEED_ENV};

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{words_of_length, words_up_to, Letter, Word};
use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::nfa::StateId;
use crate::transducer::LetterTransducer;

/// Largest bound accepted by the enumerations.
pub const MAX_BOUND: usize = 10;

/// All pairs of a relation with both components of length at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedRelation {
    pub bound: usize,
    pub pairs: BTreeSet<(Word, Word)>,
}

impl EnumeratedRelation {
    pub fn contains(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.pairs.contains(&(u.to_vec(), v.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Smallest pair in exactly one of the two relations.
    pub fn first_difference(&self, other: &EnumeratedRelation) -> Option<(Word, Word)> {
        self.pairs.symmetric_difference(&other.pairs).next().cloned()
    }

    /// Least relation containing `self` that is transitive on every length.
    pub fn transitive_closure(&self) -> EnumeratedRelation {
        let mut succ: HashMap<&Word, BTreeSet<&Word>> = HashMap::new();
        for (u, v) in &self.pairs {
            succ.entry(u).or_default().insert(v);
        }
        let mut pairs = BTreeSet::new();
        for &u in succ.keys() {
            let mut seen: BTreeSet<&Word> = BTreeSet::new();
            let mut stack = vec![u];
            while let Some(x) = stack.pop() {
                for &y in succ.get(x).into_iter().flatten() {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            pairs.extend(seen.into_iter().map(|v| (u.clone(), v.clone())));
        }
        EnumeratedRelation {
            bound: self.bound,
            pairs,
        }
    }
}

fn check_bound(bound: usize) -> Result<()> {
    if bound > MAX_BOUND {
        Err(Error::BoundTooLarge { bound, max: MAX_BOUND })
    } else {
        Ok(())
    }
}

fn step_set(r: &LetterTransducer, set: &[StateId], a: Letter, b: Letter) -> Vec<StateId> {
    let letter = r.pair(a, b);
    let mut next: Vec<StateId> = set.iter().flat_map(|&p| r.automaton().successors(p, letter)).collect();
    next.sort_unstable();
    next.dedup();
    next
}

/// Enumerates `r` by a forward search over pairs of words, extending both
/// words letter by letter and pruning when no run survives.
pub fn enumerate_relation(r: &LetterTransducer, bound: usize) -> Result<EnumeratedRelation> {
    check_bound(bound)?;
    let mut pairs = BTreeSet::new();
    let mut stack: Vec<(Word, Word, Vec<StateId>)> = vec![(Vec::new(), Vec::new(), r.automaton().initials().to_vec())];
    while let Some((u, v, set)) = stack.pop() {
        if set.iter().any(|&q| r.automaton().is_final(q)) {
            pairs.insert((u.clone(), v.clone()));
        }
        if u.len() == bound {
            continue;
        }
        for a in r.input_alphabet().letters() {
            for b in r.output_alphabet().letters() {
                let next = step_set(r, &set, a, b);
                if !next.is_empty() {
                    let (mut u2, mut v2) = (u.clone(), v.clone());
                    u2.push(a);
                    v2.push(b);
                    stack.push((u2, v2, next));
                }
            }
        }
    }
    Ok(EnumeratedRelation { bound, pairs })
}

/// Membership by a backward run search from the final states.
pub fn accepts_backward(r: &LetterTransducer, u: &[Letter], v: &[Letter]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let nfa = r.automaton();
    let mut current: BTreeSet<StateId> = nfa.finals().collect();
    for i in (0..u.len()).rev() {
        let letter = r.pair(u[i], v[i]);
        current = nfa
            .transitions()
            .filter(|&(_, l, q)| l == letter && current.contains(&q))
            .map(|(p, _, _)| p)
            .collect();
    }
    nfa.initials().iter().any(|q| current.contains(q))
}

/// The kernel of a machine: words up to `bound` grouped by their output.
pub fn brute_kernel(machine: &Machine, bound: usize) -> Result<EnumeratedRelation> {
    check_bound(bound)?;
    let k = machine.input_alphabet().len();
    let mut groups: HashMap<Word, Vec<Word>> = HashMap::new();
    for u in words_up_to(k, bound) {
        if let Some(out) = machine.apply(&u) {
            groups.entry(out).or_default().push(u);
        }
    }
    let mut pairs = BTreeSet::new();
    for group in groups.values() {
        for u in group {
            for v in group {
                pairs.insert((u.clone(), v.clone()));
            }
        }
    }
    Ok(EnumeratedRelation { bound, pairs })
}

/// Largest number of pairwise `s`-inequivalent words inside one `r`-class,
/// over words of length at most `bound`. Both are taken to be equivalences.
pub fn brute_index(s: &LetterTransducer, r: &LetterTransducer, bound: usize) -> Result<usize> {
    check_bound(bound)?;
    let k = r.input_alphabet().len();
    let mut best = 0;
    for len in 0..=bound {
        let mut classes: Vec<(Word, Vec<Word>)> = Vec::new();
        for u in words_of_length(k, len) {
            match classes.iter_mut().find(|(rep, _)| accepts_backward(r, rep, &u)) {
                Some((_, members)) => members.push(u),
                None => classes.push((u.clone(), vec![u])),
            }
        }
        for (_, members) in &classes {
            let mut reps: Vec<&Word> = Vec::new();
            for u in members {
                if !reps.iter().any(|rep| accepts_backward(s, rep, u)) {
                    reps.push(u);
                }
            }
            best = best.max(reps.len());
        }
    }
    Ok(best)
}

/// Number of distinct outputs of `u`.
pub fn count_outputs(t: &LetterTransducer, u: &[Letter]) -> usize {
    fn go(t: &LetterTransducer, u: &[Letter], set: Vec<StateId>) -> usize {
        match u.split_first() {
            None => usize::from(set.iter().any(|&q| t.automaton().is_final(q))),
            Some((&a, rest)) => t
                .output_alphabet()
                .letters()
                .map(|b| step_set(t, &set, a, b))
                .filter(|next| !next.is_empty())
                .map(|next| go(t, rest, next))
                .sum(),
        }
    }
    go(t, u, t.automaton().initials().to_vec())
}

/// `max |t(u)|` over inputs of length at most `bound`.
pub fn brute_valuedness(t: &LetterTransducer, bound: usize) -> Result<usize> {
    check_bound(bound)?;
    Ok(words_up_to(t.input_alphabet().len(), bound)
        .map(|u| count_outputs(t, &u))
        .max()
        .unwrap_or(0))
}

/// `u S_R v`: every common extension stays in `r`. Decided on a
/// pair-deterministic `r` by exploring all diagonal continuations of the
/// state reached on `(u, v)`.
pub fn brute_syntactic(r: &LetterTransducer, u: &[Letter], v: &[Letter]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let det = r.minimized();
    let nfa = det.automaton();
    let Some(start) = u
        .iter()
        .zip(v)
        .try_fold(nfa.initials()[0], |q, (&a, &b)| nfa.step(q, det.pair(a, b)))
    else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        if !nfa.is_final(q) {
            return false;
        }
        for a in det.input_alphabet().letters() {
            match nfa.step(q, det.pair(a, a)) {
                None => return false,
                Some(t) => {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
    }
    true
}

/// `u P_R v`: some equal-length extensions with suffixes of length at most
/// `suffix_bound` land in `r`.
pub fn brute_prefix_related(r: &LetterTransducer, u: &[Letter], v: &[Letter], suffix_bound: usize) -> bool {
    let k = r.input_alphabet().len();
    u.len() == v.len()
        && words_up_to(k, suffix_bound).any(|w1| {
            words_of_length(k, w1.len()).any(|w2| {
                let (mut uu, mut vv) = (u.to_vec(), v.to_vec());
                uu.extend(&w1);
                vv.extend(&w2);
                accepts_backward(r, &uu, &vv)
            })
        })
}

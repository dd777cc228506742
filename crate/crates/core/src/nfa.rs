//! Nondeterministic finite automata without ε-moves and the usual
//! language operations on them.
//!
//! States are dense integers `0..num_states`. Every construction returns a
//! fresh automaton with contiguous state identifiers; no operation mutates
//! its inputs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    /// Outgoing transitions per state, sorted by `(letter, target)`, no duplicates.
    delta: Vec<Vec<(Letter, StateId)>>,
    /// Sorted, no duplicates.
    initials: Vec<StateId>,
    finals: Vec<bool>,
}

impl Nfa {
    /// An automaton with `num_states` states and no transitions, initials or finals.
    pub fn new(alphabet: Alphabet, num_states: usize) -> Self {
        Nfa {
            alphabet,
            delta: vec![Vec::new(); num_states],
            initials: Vec::new(),
            finals: vec![false; num_states],
        }
    }

    /// Builds an automaton, checking that every endpoint and letter is declared.
    pub fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        transitions: impl IntoIterator<Item = (StateId, Letter, StateId)>,
        initials: impl IntoIterator<Item = StateId>,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let mut nfa = Nfa::new(alphabet, num_states);
        let check = |q: StateId| {
            if q < num_states {
                Ok(())
            } else {
                Err(Error::InvalidAutomaton(format!("state {q} is not declared")))
            }
        };
        for (p, a, q) in transitions {
            check(p)?;
            check(q)?;
            if a >= nfa.alphabet.len() {
                return Err(Error::InvalidAutomaton(format!("letter {a} is not declared")));
            }
            nfa.add_transition(p, a, q);
        }
        for q in initials {
            check(q)?;
            nfa.add_initial(q);
        }
        for q in finals {
            check(q)?;
            nfa.set_final(q, true);
        }
        Ok(nfa)
    }

    pub fn add_state(&mut self, is_final: bool) -> StateId {
        self.delta.push(Vec::new());
        self.finals.push(is_final);
        self.delta.len() - 1
    }

    pub fn add_transition(&mut self, from: StateId, letter: Letter, to: StateId) {
        debug_assert!(letter < self.alphabet.len());
        let row = &mut self.delta[from];
        if let Err(pos) = row.binary_search(&(letter, to)) {
            row.insert(pos, (letter, to));
        }
    }

    pub fn add_initial(&mut self, q: StateId) {
        if let Err(pos) = self.initials.binary_search(&q) {
            self.initials.insert(pos, q);
        }
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q] = is_final;
    }

    /// Same automaton with a new final-state predicate.
    pub fn with_finals(&self, is_final: impl Fn(StateId) -> bool) -> Nfa {
        let mut out = self.clone();
        for q in 0..out.num_states() {
            out.finals[q] = is_final(q);
        }
        out
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    pub fn initials(&self) -> &[StateId] {
        &self.initials
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.finals[q])
    }

    /// Outgoing transitions of `q` as `(letter, target)`, sorted.
    pub fn transitions_from(&self, q: StateId) -> &[(Letter, StateId)] {
        &self.delta[q]
    }

    /// All transitions as `(source, letter, target)` triples, sorted.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().map(move |&(a, q)| (p, a, q)))
    }

    pub fn successors(&self, q: StateId, letter: Letter) -> impl Iterator<Item = StateId> + '_ {
        let row = &self.delta[q];
        let start = row.partition_point(|&(a, _)| a < letter);
        row[start..]
            .iter()
            .take_while(move |&&(a, _)| a == letter)
            .map(|&(_, t)| t)
    }

    /// The unique successor in a deterministic automaton.
    pub fn step(&self, q: StateId, letter: Letter) -> Option<StateId> {
        self.successors(q, letter).next()
    }

    /// Runs a deterministic automaton from `q` on `word`.
    pub fn run_from(&self, q: StateId, word: &[Letter]) -> Option<StateId> {
        word.iter().try_fold(q, |p, &a| self.step(p, a))
    }

    /// At most one initial state and no two transitions sharing `(source, letter)`.
    pub fn is_deterministic(&self) -> bool {
        self.initials.len() <= 1 && self.delta.iter().all(|row| row.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// Has an initial state and a transition on every letter from every state.
    pub fn is_complete(&self) -> bool {
        let k = self.alphabet.len();
        !self.initials.is_empty()
            && self.delta.iter().all(|row| {
                let mut seen = vec![false; k];
                row.iter().for_each(|&(a, _)| seen[a] = true);
                seen.into_iter().all(|s| s)
            })
    }

    /// Subset-simulation membership test.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current: BTreeSet<StateId> = self.initials.iter().copied().collect();
        for &a in word {
            current = current.iter().flat_map(|&q| self.successors(q, a)).collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&q| self.finals[q])
    }

    fn check_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )))
        }
    }

    /// States reachable from an initial state.
    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<StateId> = self.initials.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.delta[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn co_accessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            preds[q].push(p);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<StateId> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Restriction to the states selected by `keep`, renumbered in increasing order.
    fn restrict(&self, keep: &[bool]) -> Nfa {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = next;
                next += 1;
            }
        }
        let mut out = Nfa::new(self.alphabet.clone(), next);
        for (p, a, q) in self.transitions() {
            if keep[p] && keep[q] {
                out.delta[map[p]].push((a, map[q]));
            }
        }
        out.initials = self.initials.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect();
        for q in 0..self.num_states() {
            if keep[q] {
                out.finals[map[q]] = self.finals[q];
            }
        }
        out
    }

    /// Keeps only states lying on some accepting path.
    pub fn trim(&self) -> Nfa {
        let acc = self.accessible();
        let coacc = self.co_accessible();
        let keep: Vec<bool> = acc.iter().zip(&coacc).map(|(&a, &c)| a && c).collect();
        self.restrict(&keep)
    }

    /// Keeps only accessible states.
    pub fn reachable_part(&self) -> Nfa {
        self.restrict(&self.accessible())
    }

    /// Subset construction. The result is deterministic and complete; the
    /// empty subset, when reached, is the non-final sink.
    pub fn determinize(&self) -> Nfa {
        self.determinize_with_subsets().0
    }

    /// Like [`Nfa::determinize`], also returning the subset each new state stands for.
    pub fn determinize_with_subsets(&self) -> (Nfa, Vec<Vec<StateId>>) {
        self.determinize_within(usize::MAX).expect("unbounded")
    }

    /// Subset construction that gives up once more than `max_states`
    /// subsets have been created.
    pub fn determinize_within(&self, max_states: usize) -> Option<(Nfa, Vec<Vec<StateId>>)> {
        let k = self.alphabet.len();
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut subsets: Vec<Vec<StateId>> = Vec::new();
        let mut out = Nfa::new(self.alphabet.clone(), 0);
        let start = self.initials.clone();
        index.insert(start.clone(), 0);
        subsets.push(start.clone());
        out.add_state(start.iter().any(|&q| self.finals[q]));
        out.initials = vec![0];
        let mut queue = VecDeque::from([0]);
        let mut targets: Vec<Vec<StateId>> = vec![Vec::new(); k];
        while let Some(id) = queue.pop_front() {
            for set in targets.iter_mut() {
                set.clear();
            }
            for &q in &subsets[id] {
                for &(a, t) in &self.delta[q] {
                    targets[a].push(t);
                }
            }
            for (a, set) in targets.iter_mut().enumerate() {
                set.sort_unstable();
                set.dedup();
                let target = match index.get(set.as_slice()) {
                    Some(&t) => t,
                    None => {
                        if subsets.len() >= max_states {
                            return None;
                        }
                        let t = out.add_state(set.iter().any(|&q| self.finals[q]));
                        index.insert(set.clone(), t);
                        subsets.push(set.clone());
                        queue.push_back(t);
                        t
                    }
                };
                out.delta[id].push((a, target));
            }
        }
        Some((out, subsets))
    }

    /// Deterministic, complete automaton with the minimum number of states,
    /// numbered in breadth-first order from the initial state.
    pub fn minimize(&self) -> Nfa {
        self.minimize_within(usize::MAX).expect("unbounded")
    }

    /// [`Nfa::minimize`], unless determinization needs more than `max_states` subsets.
    pub fn minimize_within(&self, max_states: usize) -> Option<Nfa> {
        let dfa = if self.is_deterministic() && self.is_complete() {
            self.reachable_part()
        } else {
            self.determinize_within(max_states)?.0
        };
        let n = dfa.num_states();
        let k = dfa.alphabet.len();
        let mut class: Vec<usize> = (0..n).map(|q| usize::from(dfa.finals[q])).collect();
        let mut count = class.iter().copied().collect::<BTreeSet<_>>().len();
        loop {
            let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                for a in 0..k {
                    sig.push(class[dfa.step(q, a).expect("complete")]);
                }
                let fresh = sigs.len();
                next[q] = *sigs.entry(sig).or_insert(fresh);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // BFS renumbering over classes for a canonical layout.
        let mut order = vec![usize::MAX; count];
        let mut rep = Vec::with_capacity(count);
        let start = class[dfa.initials[0]];
        order[start] = 0;
        rep.push(dfa.initials[0]);
        let mut i = 0;
        while i < rep.len() {
            let q = rep[i];
            for a in 0..k {
                let t = dfa.step(q, a).expect("complete");
                if order[class[t]] == usize::MAX {
                    order[class[t]] = rep.len();
                    rep.push(t);
                }
            }
            i += 1;
        }
        let mut out = Nfa::new(dfa.alphabet.clone(), rep.len());
        out.initials = vec![0];
        for (id, &q) in rep.iter().enumerate() {
            out.finals[id] = dfa.finals[q];
            for a in 0..k {
                let t = dfa.step(q, a).expect("complete");
                out.delta[id].push((a, order[class[t]]));
            }
        }
        Some(out)
    }

    /// Adds a non-final sink for missing transitions (and as initial state
    /// when there is none). Keeps determinism.
    pub fn complete(&self) -> Nfa {
        if self.is_complete() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = out.add_state(false);
        if out.initials.is_empty() {
            out.initials.push(sink);
        }
        for q in 0..out.num_states() {
            for a in out.alphabet.letters() {
                if out.successors(q, a).next().is_none() {
                    out.add_transition(q, a, sink);
                }
            }
        }
        out
    }

    /// Complement of a deterministic complete automaton.
    pub fn complement(&self) -> Result<Nfa> {
        if !(self.is_deterministic() && self.is_complete()) {
            return Err(Error::NotDeterministicComplete);
        }
        Ok(self.with_finals(|q| !self.finals[q]))
    }

    /// Accessible part of the synchronized product.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(other)?;
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = Vec::new();
        let mut out = Nfa::new(self.alphabet.clone(), 0);
        let mut queue = VecDeque::new();
        for &p in &self.initials {
            for &q in &other.initials {
                let id = out.add_state(self.finals[p] && other.finals[q]);
                index.insert((p, q), id);
                pairs.push((p, q));
                out.initials.push(id);
                queue.push_back(id);
            }
        }
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id];
            for &(a, p2) in &self.delta[p] {
                for q2 in other.successors(q, a) {
                    let t = *index.entry((p2, q2)).or_insert_with(|| {
                        let t = out.add_state(self.finals[p2] && other.finals[q2]);
                        pairs.push((p2, q2));
                        queue.push_back(t);
                        t
                    });
                    out.add_transition(id, a, t);
                }
            }
        }
        Ok(out)
    }

    /// Disjoint union.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(other)?;
        let offset = self.num_states();
        let mut out = self.clone();
        for q in 0..other.num_states() {
            out.add_state(other.finals[q]);
        }
        for (p, a, q) in other.transitions() {
            out.delta[p + offset].push((a, q + offset));
        }
        for &q in &other.initials {
            out.add_initial(q + offset);
        }
        Ok(out)
    }

    /// `L(self) \ L(other)`.
    pub fn difference(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(other)?;
        self.intersect(&other.determinize().complement()?)
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// A shortest accepted word, preferring the lexicographically least one.
    pub fn shortest_word(&self) -> Option<Word> {
        let mut parent: Vec<Option<(StateId, Letter)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        for &q in &self.initials {
            seen[q] = true;
            queue.push_back(q);
        }
        while let Some(p) = queue.pop_front() {
            if self.finals[p] {
                let mut word = Vec::new();
                let mut cur = p;
                while let Some((prev, a)) = parent[cur] {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for &(a, q) in &self.delta[p] {
                if !seen[q] {
                    seen[q] = true;
                    parent[q] = Some((p, a));
                    queue.push_back(q);
                }
            }
        }
        None
    }

    /// A shortest word in `L(self) \ L(other)`, if any. Explores the product
    /// of `self` with the subset automaton of `other` on the fly.
    pub fn inclusion_counterexample(&self, other: &Nfa) -> Result<Option<Word>> {
        self.check_alphabet(other)?;
        type Node = (StateId, Vec<StateId>);
        let mut parent: BTreeMap<Node, Option<(Node, Letter)>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let start_b: Vec<StateId> = other.initials.clone();
        for &p in &self.initials {
            let node = (p, start_b.clone());
            if parent.insert(node.clone(), None).is_none() {
                queue.push_back(node);
            }
        }
        while let Some(node) = queue.pop_front() {
            let (p, ref set) = node;
            if self.finals[p] && !set.iter().any(|&q| other.finals[q]) {
                let mut word = Vec::new();
                let mut cur = node.clone();
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    word.push(*a);
                    cur = prev.clone();
                }
                word.reverse();
                return Ok(Some(word));
            }
            for &(a, p2) in &self.delta[p] {
                let set2: BTreeSet<StateId> = set.iter().flat_map(|&q| other.successors(q, a)).collect();
                let next = (p2, set2.into_iter().collect::<Vec<_>>());
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((node.clone(), a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// `L(self) ⊆ L(other)`.
    pub fn includes_in(&self, other: &Nfa) -> Result<bool> {
        Ok(self.inclusion_counterexample(other)?.is_none())
    }

    pub fn language_equal(&self, other: &Nfa) -> Result<bool> {
        Ok(self.includes_in(other)? && other.includes_in(self)?)
    }
}

/// `L(a) ⊆ L(b)`.
pub fn includes(a: &Nfa, b: &Nfa) -> Result<bool> {
    a.includes_in(b)
}

pub fn language_equal(a: &Nfa, b: &Nfa) -> Result<bool> {
    a.language_equal(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// Words over {a,b} ending in `a`.
    fn ends_in_a() -> Nfa {
        Nfa::from_parts(ab(), 2, [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)], [0], [1]).unwrap()
    }

    /// Words containing `ab` as a factor, nondeterministic.
    fn contains_ab() -> Nfa {
        Nfa::from_parts(
            ab(),
            3,
            [(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 2), (2, 0, 2), (2, 1, 2)],
            [0],
            [2],
        )
        .unwrap()
    }

    fn agree_up_to(x: &Nfa, y: &Nfa, len: usize) -> bool {
        words_up_to(x.alphabet().len(), len).all(|w| x.accepts(&w) == y.accepts(&w))
    }

    #[test]
    fn from_parts_checks_endpoints() {
        assert!(Nfa::from_parts(ab(), 1, [(0, 0, 1)], [0], []).is_err());
        assert!(Nfa::from_parts(ab(), 1, [(0, 2, 0)], [0], []).is_err());
    }

    #[test]
    fn determinize_deterministic_input_is_isomorphic() {
        let d = ends_in_a();
        let det = d.determinize();
        assert_eq!(det.num_states(), 2);
        assert!(det.is_deterministic() && det.is_complete());
        assert!(agree_up_to(&d, &det, 8));
    }

    #[test]
    fn determinize_empty_initials_gives_sink() {
        let n = Nfa::from_parts(ab(), 2, [(0, 0, 1)], [], [1]).unwrap();
        let det = n.determinize();
        assert_eq!(det.num_states(), 1);
        assert!(!det.is_final(0));
        assert!(det.is_empty());
        assert!(det.is_complete());
    }

    #[test]
    fn determinize_nfa() {
        let n = contains_ab();
        let det = n.determinize();
        assert!(det.is_deterministic() && det.is_complete());
        assert!(agree_up_to(&n, &det, 8));
    }

    #[test]
    fn trim_removes_unreachable_final() {
        let n = Nfa::from_parts(ab(), 3, [(0, 0, 1)], [0], [1, 2]).unwrap();
        let t = n.trim();
        assert_eq!(t.num_states(), 2);
        assert!(agree_up_to(&n, &t, 5));
    }

    #[test]
    fn trim_empty_language_has_no_states() {
        let n = Nfa::from_parts(ab(), 2, [(0, 0, 1)], [0], []).unwrap();
        assert_eq!(n.trim().num_states(), 0);
    }

    #[test]
    fn boolean_identities() {
        let l = contains_ab();
        let c = l.determinize().complement().unwrap();
        assert!(l.intersect(&c).unwrap().is_empty());
        let empty = Nfa::new(ab(), 1);
        assert!(l.union(&empty).unwrap().language_equal(&l).unwrap());
        assert!(l.complement().is_err());
    }

    #[test]
    fn complement_involution() {
        let d = contains_ab().determinize();
        let cc = d.complement().unwrap().complement().unwrap();
        assert!(cc.language_equal(&d).unwrap());
    }

    #[test]
    fn inclusion_basics() {
        let l = contains_ab();
        let empty = Nfa::new(ab(), 0);
        assert!(includes(&l, &l).unwrap());
        assert!(includes(&empty, &l).unwrap());
        assert!(!includes(&l, &empty).unwrap());
        assert!(!includes(&ends_in_a(), &l).unwrap());
        let w = ends_in_a().inclusion_counterexample(&l).unwrap().unwrap();
        assert_eq!(w, vec![0]);
    }

    #[test]
    fn alphabet_mismatch() {
        let other = Nfa::new(Alphabet::new(["x"]).unwrap(), 1);
        assert!(matches!(
            contains_ab().intersect(&other),
            Err(Error::AlphabetMismatch(_))
        ));
        assert!(matches!(
            includes(&contains_ab(), &other),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn minimize_collapses_equivalent_states() {
        let n = contains_ab();
        let m = n.minimize();
        assert_eq!(m.num_states(), 3);
        assert!(m.language_equal(&n).unwrap());
        // Idempotent up to structure.
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn complete_adds_sink() {
        let n = Nfa::from_parts(ab(), 1, [(0, 0, 0)], [0], [0]).unwrap();
        let c = n.complete();
        assert!(c.is_complete());
        assert!(c.language_equal(&n).unwrap());
    }
}

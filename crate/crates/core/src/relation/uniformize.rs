use std::collections::{HashMap, VecDeque};

use super::require_equivalence;
use crate::error::Result;
use crate::nfa::{Nfa, StateId};
use crate::transducer::LetterTransducer;

/// Graph of `f(u) = min_lex S(u)` for a length-preserving equivalence `S`.
///
/// `f` is total, letter-to-letter and `ker(f) = S`.
pub fn min_lex_uniformizer(s: &LetterTransducer) -> Result<LetterTransducer> {
    require_equivalence(s)?;
    Ok(min_lex_uniformizer_unchecked(s))
}

/// Pairs `(u, v) ∈ S` for which some `v' <lex v` with `(u, v') ∈ S` exists
/// are removed; what remains is the graph of the lexicographic minimum.
pub(crate) fn min_lex_uniformizer_unchecked(s: &LetterTransducer) -> LetterTransducer {
    let dfa = s.minimized().trimmed();
    let bad = dominated_pairs(&dfa);
    let keep = bad.determinize().complement().expect("determinized");
    let graph = dfa.automaton().intersect(&keep).expect("same pair alphabet");
    dfa.with_automaton(graph.minimize().trim())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Mode {
    EqualSoFar,
    AlreadySmaller,
}

/// Reads `(u, v)` while guessing a competitor `v'` letter by letter; runs
/// `S` on both `(u, v)` and `(u, v')` and remembers whether `v'` already
/// dropped below `v`.
fn dominated_pairs(s: &LetterTransducer) -> Nfa {
    let nfa = s.automaton();
    let k_out = s.output_alphabet().len();
    let mut out = Nfa::new(nfa.alphabet().clone(), 0);
    let mut index: HashMap<(StateId, StateId, Mode), StateId> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    let accepting = |p: StateId, q: StateId, m: Mode| nfa.is_final(p) && nfa.is_final(q) && m == Mode::AlreadySmaller;
    for &q0 in nfa.initials() {
        let key = (q0, q0, Mode::EqualSoFar);
        let id = out.add_state(accepting(q0, q0, Mode::EqualSoFar));
        index.insert(key, id);
        states.push(key);
        out.add_initial(id);
        queue.push_back(id);
    }
    while let Some(id) = queue.pop_front() {
        let (p, q, mode) = states[id];
        for &(letter, p2) in nfa.transitions_from(p) {
            let (a, b) = s.split(letter);
            for b2 in 0..k_out {
                let next_mode = match mode {
                    Mode::AlreadySmaller => Mode::AlreadySmaller,
                    Mode::EqualSoFar if b2 < b => Mode::AlreadySmaller,
                    Mode::EqualSoFar if b2 == b => Mode::EqualSoFar,
                    Mode::EqualSoFar => continue,
                };
                for q2 in nfa.successors(q, s.pair(a, b2)) {
                    let key = (p2, q2, next_mode);
                    let t = *index.entry(key).or_insert_with(|| {
                        let t = out.add_state(accepting(p2, q2, next_mode));
                        states.push(key);
                        queue.push_back(t);
                        t
                    });
                    out.add_transition(id, letter, t);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{words_of_length, words_up_to, Alphabet};
    use crate::fixtures;

    /// Brute-force lexicographic minimum of the class of `u`.
    fn class_min(s: &LetterTransducer, u: &[usize]) -> Vec<usize> {
        words_of_length(s.output_alphabet().len(), u.len())
            .find(|v| s.accepts(u, v))
            .expect("reflexive")
    }

    fn check_against_oracle(s: &LetterTransducer, len: usize) {
        let f = min_lex_uniformizer(s).unwrap();
        let k = s.input_alphabet().len();
        for u in words_up_to(k, len) {
            let outputs: Vec<_> = words_of_length(k, u.len()).filter(|v| f.accepts(&u, v)).collect();
            assert_eq!(outputs, vec![class_min(s, &u)], "input {u:?}");
        }
    }

    #[test]
    fn identity_uniformizer_is_identity() {
        let id = LetterTransducer::identity(&Alphabet::new(["a", "b"]).unwrap());
        let f = min_lex_uniformizer(&id).unwrap();
        assert!(f.relation_equal(&id).unwrap());
    }

    #[test]
    fn universal_maps_to_first_letter_power() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let f = min_lex_uniformizer(&LetterTransducer::universal(&ab)).unwrap();
        for u in words_up_to(2, 6) {
            let a_pow = vec![0; u.len()];
            assert!(f.accepts(&u, &a_pow));
            for v in words_of_length(2, u.len()).filter(|v| *v != a_pow) {
                assert!(!f.accepts(&u, &v));
            }
        }
    }

    #[test]
    fn last_a_uniformizer_matches_class_minimum() {
        check_against_oracle(&fixtures::last_a(), 6);
    }

    #[test]
    fn even_a_and_index_infinite_uniformizers() {
        check_against_oracle(&fixtures::even_a(), 6);
        check_against_oracle(&fixtures::index_infinite(), 4);
    }
}

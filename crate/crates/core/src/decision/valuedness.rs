use std::collections::VecDeque;

use crate::alphabet::Letter;
use crate::nfa::StateId;
use crate::transducer::LetterTransducer;

/// Transitions grouped by input letter: `moves[state][a] = [(b, target)]`.
struct Moves {
    moves: Vec<Vec<Vec<(Letter, StateId)>>>,
}

impl Moves {
    fn new(t: &LetterTransducer) -> Self {
        let k = t.input_alphabet().len();
        let mut moves = vec![vec![Vec::new(); k]; t.num_states()];
        for (p, a, b, q) in t.transitions() {
            moves[p][a].push((b, q));
        }
        Moves { moves }
    }

    fn letters(&self) -> usize {
        self.moves.first().map_or(0, Vec::len)
    }

    fn on(&self, p: StateId, a: Letter) -> &[(Letter, StateId)] {
        &self.moves[p][a]
    }
}

/// Whether every input word has boundedly many outputs.
///
/// The transducer is first normalized to a trim pair-deterministic one, then
/// searched for the two patterns that characterize infinite valuedness:
/// a state with two loops on the same input and different outputs, or two
/// distinct states `p`, `q` with loops and a connecting path on a common
/// input `u` whose outputs `v1, v2, v3` are not all equal.
pub fn is_finitely_valued(t: &LetterTransducer) -> bool {
    let t = t.minimized().trimmed();
    let moves = Moves::new(&t);
    let n = t.num_states();
    !(0..n).any(|q| twin_loops(&moves, q)) && !(0..n).any(|p| (0..n).any(|q| p != q && diverging_triple(&moves, p, q)))
}

/// `(q, q, clean) ⇝ (q, q, dirty)` in the self-product joined on input.
fn twin_loops(m: &Moves, q: StateId) -> bool {
    let n = m.moves.len();
    let id = |x: StateId, y: StateId, d: bool| (x * n + y) * 2 + d as usize;
    let mut seen = vec![false; n * n * 2];
    let mut queue = VecDeque::from([(q, q, false)]);
    seen[id(q, q, false)] = true;
    while let Some((x, y, d)) = queue.pop_front() {
        for a in 0..m.letters() {
            for &(b1, x2) in m.on(x, a) {
                for &(b2, y2) in m.on(y, a) {
                    let d2 = d || b1 != b2;
                    if d2 && x2 == q && y2 == q {
                        return true;
                    }
                    if !seen[id(x2, y2, d2)] {
                        seen[id(x2, y2, d2)] = true;
                        queue.push_back((x2, y2, d2));
                    }
                }
            }
        }
    }
    false
}

/// `(p, p, q, clean) ⇝ (p, q, q, dirty)` in the three-fold product joined on input.
fn diverging_triple(m: &Moves, p: StateId, q: StateId) -> bool {
    let n = m.moves.len();
    let id = |x: StateId, y: StateId, z: StateId, d: bool| ((x * n + y) * n + z) * 2 + d as usize;
    let mut seen = vec![false; n * n * n * 2];
    let mut queue = VecDeque::from([(p, p, q, false)]);
    seen[id(p, p, q, false)] = true;
    while let Some((x, y, z, d)) = queue.pop_front() {
        for a in 0..m.letters() {
            for &(b1, x2) in m.on(x, a) {
                for &(b2, y2) in m.on(y, a) {
                    for &(b3, z2) in m.on(z, a) {
                        let d2 = d || b1 != b2 || b2 != b3;
                        if d2 && x2 == p && y2 == q && z2 == q {
                            return true;
                        }
                        if !seen[id(x2, y2, z2, d2)] {
                            seen[id(x2, y2, z2, d2)] = true;
                            queue.push_back((x2, y2, z2, d2));
                        }
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn functions_are_finitely_valued() {
        assert!(is_finitely_valued(&LetterTransducer::identity(&ab())));
    }

    #[test]
    fn two_loops_with_different_outputs() {
        let t = LetterTransducer::from_transitions(ab(), ab(), 1, [(0, 0, 0, 0), (0, 0, 1, 0)], [0], [0]).unwrap();
        assert!(!is_finitely_valued(&t));
    }

    #[test]
    fn switch_point_gives_linear_valuedness() {
        // a^n -> x^i y^(n-i)
        let t =
            LetterTransducer::from_transitions(ab(), ab(), 2, [(0, 0, 0, 0), (0, 0, 1, 1), (1, 0, 1, 1)], [0], [0, 1])
                .unwrap();
        assert!(!is_finitely_valued(&t));
    }

    #[test]
    fn bounded_ambiguity_is_finite() {
        // Two outputs for every nonempty word: first letter kept or flipped.
        let t = LetterTransducer::from_transitions(
            ab(),
            ab(),
            2,
            [
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (0, 0, 1, 1),
                (0, 1, 0, 1),
                (1, 0, 0, 1),
                (1, 1, 1, 1),
            ],
            [0],
            [0, 1],
        )
        .unwrap();
        assert!(is_finitely_valued(&t));
    }
}

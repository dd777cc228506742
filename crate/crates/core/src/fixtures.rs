//! Small hand-built relations used throughout the tests, the acceptance
//! suite and the CLI examples.

use crate::alphabet::Alphabet;
use crate::transducer::LetterTransducer;

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).expect("static alphabet")
}

/// Words are equivalent when their last `a` is at the same position
/// (or neither contains an `a`).
pub fn last_a() -> LetterTransducer {
    LetterTransducer::from_transitions(
        ab(),
        ab(),
        2,
        [
            (0, A, A, 0),
            (0, B, B, 0),
            (0, A, B, 1),
            (0, B, A, 1),
            (1, A, B, 1),
            (1, B, A, 1),
            (1, B, B, 1),
            (1, A, A, 0),
        ],
        [0],
        [0],
    )
    .expect("static fixture")
}

/// A non-sequential letter-to-letter canonical function for [`last_a`]:
/// outputs `0` up to the last `a`, then `1` for every trailing `b`.
pub fn last_a_canonical() -> LetterTransducer {
    let out = Alphabet::new(["0", "1"]).expect("static alphabet");
    LetterTransducer::from_transitions(
        ab(),
        out,
        3,
        [
            (0, B, 0, 1),
            (1, A, 0, 0),
            (1, A, 0, 2),
            (0, A, 0, 2),
            (0, A, 0, 0),
            (1, B, 0, 1),
            (2, B, 1, 2),
        ],
        [0, 2],
        [2],
    )
    .expect("static fixture")
}

/// Words are equivalent when their numbers of `a`s agree modulo 2.
pub fn even_a() -> LetterTransducer {
    LetterTransducer::from_transitions(
        ab(),
        ab(),
        2,
        [
            (0, A, A, 0),
            (0, B, B, 0),
            (0, A, B, 1),
            (0, B, A, 1),
            (1, A, A, 1),
            (1, B, B, 1),
            (1, A, B, 0),
            (1, B, A, 0),
        ],
        [0],
        [0],
    )
    .expect("static fixture")
}

/// Over `{a, b, c}`: all `c`-free words of a given length are equivalent,
/// a word containing `c` is equivalent only to itself.
pub fn index_infinite() -> LetterTransducer {
    let abc = Alphabet::new(["a", "b", "c"]).expect("static alphabet");
    let mut trans = vec![(0, A, A, 0), (0, B, B, 0), (0, A, B, 1), (0, B, A, 1), (0, C, C, 2)];
    for x in [A, B] {
        for y in [A, B] {
            trans.push((1, x, y, 1));
        }
    }
    for x in [A, B, C] {
        trans.push((2, x, x, 2));
    }
    LetterTransducer::from_transitions(abc.clone(), abc, 3, trans, [0], [0, 1, 2]).expect("static fixture")
}

/// Kernel of the Mealy machine that outputs, for every letter, whether it
/// repeats the previous letter. Two words are equivalent iff they have the
/// same pattern of repetitions, so each class holds a word and its
/// letter-wise swap. Prefix-closed, and its syntactic congruence has index 2.
pub fn change_pattern() -> LetterTransducer {
    // States: 0 = start, 1 + 2*x + y = last letters (x, y) of the two words.
    let state = |x: usize, y: usize| 1 + 2 * x + y;
    let mut trans = Vec::new();
    for c1 in [A, B] {
        for c2 in [A, B] {
            trans.push((0, c1, c2, state(c1, c2)));
            for x in [A, B] {
                for y in [A, B] {
                    if (c1 == x) == (c2 == y) {
                        trans.push((state(x, y), c1, c2, state(c1, c2)));
                    }
                }
            }
        }
    }
    LetterTransducer::from_transitions(ab(), ab(), 5, trans, [0], 0..5).expect("static fixture")
}

/// Identity plus, for `i < len`, the class `{x_i x_i, x_{i+1} x_i}` on
/// words of length 2, over letters `x_0 … x_len`. The prefix closure links
/// `x_i` and `x_{i+1}` on single letters, so its transitive closure needs
/// exponent exactly `len` (for `len ≥ 1`).
pub fn chain(len: usize) -> LetterTransducer {
    let names: Vec<String> = (0..=len).map(|i| format!("x{i}")).collect();
    let alpha = Alphabet::new(names).expect("generated alphabet");
    let k = alpha.len();
    // 0: start; 1: identity; 2 + 2i after reading (x_i, x_{i+1}) and
    // 3 + 2i after (x_{i+1}, x_i); 2 + 2*len: end of a chain pair.
    let end = 2 + 2 * len;
    let mut trans: Vec<(usize, usize, usize, usize)> = Vec::new();
    for a in 0..k {
        trans.push((0, a, a, 1));
        trans.push((1, a, a, 1));
    }
    for i in 0..len {
        trans.push((0, i, i + 1, 2 + 2 * i));
        trans.push((0, i + 1, i, 3 + 2 * i));
        trans.push((2 + 2 * i, i, i, end));
        trans.push((3 + 2 * i, i, i, end));
    }
    LetterTransducer::from_transitions(alpha.clone(), alpha, end + 1, trans, [0], [0, 1, end])
        .expect("generated fixture")
}

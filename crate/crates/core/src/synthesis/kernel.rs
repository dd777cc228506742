use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::machine::{Machine, SequentialTransducer};
use crate::nfa::{Nfa, StateId};
use crate::relation::{compose, inverse};
use crate::transducer::LetterTransducer;

/// `ker(f) = {(u, v) | f(u) = f(v)}` as a letter-to-letter relation over the
/// input alphabet of `f`, minimized and trimmed.
///
/// Sequential machines must be letter-to-letter; otherwise equal outputs do
/// not force equal lengths and the kernel need not be synchronous.
pub fn kernel_transducer(machine: &Machine) -> Result<LetterTransducer> {
    let ker = match machine {
        Machine::Letter(f) => compose(&inverse(f), f)?,
        Machine::Sequential(s) => joined_product(s, |_, _| true)?,
        Machine::Subsequential(s) => joined_product(s.base(), |p, q| s.final_output(p) == s.final_output(q))?,
    };
    Ok(ker.minimized().trimmed())
}

fn joined_product(
    s: &SequentialTransducer,
    same_final_output: impl Fn(StateId, StateId) -> bool,
) -> Result<LetterTransducer> {
    if !s.is_letter_to_letter() {
        return Err(Error::NotLetterToLetter);
    }
    let input = s.input_alphabet().clone();
    let k = input.len();
    let is_final = |p: StateId, q: StateId| s.is_final(p) && s.is_final(q) && same_final_output(p, q);
    let mut nfa = Nfa::new(input.product(&input), 0);
    let start = (s.initial(), s.initial());
    let mut index = HashMap::from([(start, nfa.add_state(is_final(start.0, start.1)))]);
    nfa.add_initial(0);
    let mut states = vec![start];
    let mut queue = VecDeque::from([0]);
    while let Some(id) = queue.pop_front() {
        let (p, q) = states[id];
        for a in 0..k {
            let Some((x, p2)) = s.transition(p, a) else { continue };
            for b in 0..k {
                let Some((y, q2)) = s.transition(q, b) else { continue };
                if x != y {
                    continue;
                }
                let t = *index.entry((p2, q2)).or_insert_with(|| {
                    let t = nfa.add_state(is_final(p2, q2));
                    states.push((p2, q2));
                    queue.push_back(t);
                    t
                });
                nfa.add_transition(id, a * k + b, t);
            }
        }
    }
    LetterTransducer::new(input.clone(), input, nfa)
}

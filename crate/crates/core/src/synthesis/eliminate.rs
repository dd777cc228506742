use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::Letter;
use crate::error::Result;
use crate::machine::{SequentialTransducer, SubsequentialTransducer};
use crate::nfa::StateId;

/// Folds the final output into the body: every output letter is repeated
/// `n` times except the last one, which is repeated `class(q)` times, where
/// `n` is the number of distinct final-output values and `class(q)` numbers
/// the final output of the current state. The result is sequential but not
/// letter-to-letter, and has the same kernel as `m`.
///
/// Classes are numbered so that the initial state gets class `n`; non-final
/// states also get class `n`. The first output letter is tracked from
/// letter 0 of the output alphabet, and only in states whose class is
/// below `n`.
pub fn eliminate_final_output(m: &SubsequentialTransducer) -> Result<SequentialTransducer> {
    let base = m.base();
    let reachable = reachable_states(base);
    let values: BTreeSet<Letter> = reachable.iter().filter_map(|&q| m.final_output(q)).collect();
    let n = values.len().max(1);
    let initial_value = m.final_output(base.initial());
    let mut class_of_value: HashMap<Letter, usize> = HashMap::new();
    let mut next = 1;
    for &v in &values {
        if Some(v) == initial_value {
            class_of_value.insert(v, n);
        } else {
            class_of_value.insert(v, next);
            next += 1;
        }
    }
    let class = |q: StateId| m.final_output(q).map_or(n, |v| class_of_value[&v]);

    let b0: Letter = 0;
    let start = (base.initial(), b0);
    let mut index: HashMap<(StateId, Letter), StateId> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(id) = queue.pop_front() {
        let (p, c) = states[id];
        let i = class(p);
        for a in base.input_alphabet().letters() {
            let Some((w, q)) = base.transition(p, a) else { continue };
            let b = w[0];
            let j = class(q);
            let mut out = vec![c; n - i];
            out.extend(std::iter::repeat_n(b, j));
            // In class n the pending letter is never repeated again.
            let key = (q, if j == n { b0 } else { b });
            let t = *index.entry(key).or_insert_with(|| {
                states.push(key);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            edges.push((id, a, out, t));
        }
    }
    let mut result = SequentialTransducer::new(
        base.input_alphabet().clone(),
        base.output_alphabet().clone(),
        states.len(),
        0,
    )?;
    for (id, &(q, _)) in states.iter().enumerate() {
        result.set_final(id, base.is_final(q));
    }
    for (p, a, out, q) in edges {
        result.set_transition(p, a, out, q)?;
    }
    Ok(result)
}

fn reachable_states(m: &SequentialTransducer) -> Vec<StateId> {
    let mut seen = vec![false; m.num_states()];
    seen[m.initial()] = true;
    let mut stack = vec![m.initial()];
    while let Some(p) = stack.pop() {
        for a in m.input_alphabet().letters() {
            if let Some((_, q)) = m.transition(p, a) {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    (0..m.num_states()).filter(|&q| seen[q]).collect()
}

use std::collections::HashMap;

use crate::alphabet::{words_of_length, Word};
use crate::error::Result;
use crate::machine::Machine;
use crate::transducer::LetterTransducer;

/// Looks for words `u, v` of equal length at most `max_len` on which
/// "`machine` gives equal outputs" and "`(u, v)` is in `r`" disagree.
///
/// Per length, words are bucketed by output; each bucket must lie in one
/// `r`-class (checked against its first word) and have the size of that
/// class (counted on the pair-DFA).
pub fn bounded_kernel_mismatch(
    r: &LetterTransducer,
    machine: &Machine,
    max_len: usize,
) -> Result<Option<(Word, Word)>> {
    let k = r.input_alphabet().len();
    let dfa = r.automaton().minimize();
    let class_size = |u: &[usize]| -> u64 {
        let mut counts = vec![0u64; dfa.num_states()];
        counts[dfa.initials()[0]] = 1;
        for &a in u {
            let mut next = vec![0u64; counts.len()];
            for (q, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                for b in 0..k {
                    let t = dfa.step(q, r.pair(a, b)).expect("complete");
                    next[t] += c;
                }
            }
            counts = next;
        }
        dfa.finals().map(|q| counts[q]).sum()
    };
    for len in 0..=max_len {
        let words: Vec<Word> = words_of_length(k, len).collect();
        let outputs: Vec<Option<Word>> = words.iter().map(|u| machine.apply(u)).collect();
        let mut buckets: HashMap<&Word, (usize, u64)> = HashMap::new();
        for (i, out) in outputs.iter().enumerate() {
            match out {
                None => return Ok(Some((words[i].clone(), words[i].clone()))),
                Some(o) => buckets.entry(o).or_insert((i, 0)).1 += 1,
            }
        }
        for (i, u) in words.iter().enumerate() {
            let (rep, size) = buckets[outputs[i].as_ref().expect("defined")];
            if !r.accepts(u, &words[rep]) {
                return Ok(Some((u.clone(), words[rep].clone())));
            }
            if class_size(u) != size {
                let v = words
                    .iter()
                    .zip(&outputs)
                    .find(|(v, o)| r.accepts(u, v) && *o != &outputs[i])
                    .map(|(v, _)| v.clone())
                    .expect("a related word outside the bucket");
                return Ok(Some((u.clone(), v)));
            }
        }
    }
    Ok(None)
}

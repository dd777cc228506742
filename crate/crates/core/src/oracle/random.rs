//! Seeded generator of equivalence relations. Every family produces an
//! equivalence by construction, so no rejection sampling is needed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::machine::{Machine, SequentialTransducer};
use crate::synthesis::kernel_transducer;
use crate::transducer::LetterTransducer;

pub const SEED_ENV: &str = "KERNSEQ_ORACLE_SEED";
pub const DEFAULT_SEED: u64 = 0x6b65_726e;

/// Seed from `KERNSEQ_ORACLE_SEED`, or the default when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Same length and same class of a state partition of a random DFA.
    DfaPartition,
    /// As above, but some classes only relate a word to itself.
    DfaPartitionWithSingletons,
    /// Kernel of a random Mealy machine.
    MealyKernel,
    /// Kernel of a random letter-to-letter function reading right to left.
    LookaheadKernel,
    /// Intersection of a Mealy kernel and a lookahead kernel.
    Mixed,
}

const FAMILIES: [Family; 5] = [
    Family::DfaPartition,
    Family::DfaPartitionWithSingletons,
    Family::MealyKernel,
    Family::LookaheadKernel,
    Family::Mixed,
];

#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub index: usize,
    pub family: Family,
    pub relation: LetterTransducer,
}

/// `count` instances cycling through the families, reproducible from `seed`.
pub fn generate_suite(seed: u64, count: usize) -> Vec<RandomInstance> {
    (0..count).map(|index| generate_instance(seed, index)).collect()
}

/// The `index`-th instance of the suite for `seed`.
pub fn generate_instance(seed: u64, index: usize) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    let family = FAMILIES[index % FAMILIES.len()];
    let relation = generate(&mut rng, family).minimized().trimmed();
    RandomInstance {
        index,
        family,
        relation,
    }
}

fn binary() -> Alphabet {
    Alphabet::new(["a", "b"]).expect("static alphabet")
}

fn generate(rng: &mut ChaCha8Rng, family: Family) -> LetterTransducer {
    match family {
        Family::DfaPartition => dfa_partition(rng, false),
        Family::DfaPartitionWithSingletons => dfa_partition(rng, true),
        Family::MealyKernel => mealy_kernel(rng),
        Family::LookaheadKernel => lookahead_kernel(rng),
        Family::Mixed => mealy_kernel(rng)
            .intersect(&lookahead_kernel(rng))
            .expect("same alphabets"),
    }
}

fn dfa_partition(rng: &mut ChaCha8Rng, singletons: bool) -> LetterTransducer {
    let alpha = binary();
    let k = alpha.len();
    let n = rng.gen_range(2..=4);
    let delta: Vec<Vec<usize>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect()).collect();
    let classes = rng.gen_range(1..=n);
    let class: Vec<usize> = (0..n).map(|_| rng.gen_range(0..classes)).collect();
    let single: Vec<bool> = (0..classes).map(|_| singletons && rng.gen_bool(0.4)).collect();
    // State (p, q, equal so far) encoded as (p * n + q) * 2 + equal.
    let id = |p: usize, q: usize, eq: bool| (p * n + q) * 2 + eq as usize;
    let mut trans = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for eq in [false, true] {
                for a in 0..k {
                    for b in 0..k {
                        trans.push((id(p, q, eq), a, b, id(delta[p][a], delta[q][b], eq && a == b)));
                    }
                }
            }
        }
    }
    let mut finals = Vec::new();
    for p in 0..n {
        for q in (0..n).filter(|&q| class[q] == class[p]) {
            finals.push(id(p, q, true));
            if !single[class[p]] {
                finals.push(id(p, q, false));
            }
        }
    }
    LetterTransducer::from_transitions(alpha.clone(), alpha, 2 * n * n, trans, [id(0, 0, true)], finals)
        .expect("generated relation")
}

fn random_mealy(rng: &mut ChaCha8Rng) -> SequentialTransducer {
    let alpha = binary();
    let n = rng.gen_range(1..=3);
    let mut m = SequentialTransducer::new(alpha.clone(), alpha.clone(), n, 0).expect("nonempty");
    for p in 0..n {
        m.set_final(p, true);
        for a in alpha.letters() {
            let b = rng.gen_range(0..alpha.len());
            let q = rng.gen_range(0..n);
            m.set_transition(p, a, vec![b], q).expect("fresh slot");
        }
    }
    m
}

fn mealy_kernel(rng: &mut ChaCha8Rng) -> LetterTransducer {
    kernel_transducer(&Machine::Sequential(random_mealy(rng))).expect("letter-to-letter")
}

/// `u ↦ reverse(M(reverse(u)))` for a random Mealy machine `M`.
fn lookahead_kernel(rng: &mut ChaCha8Rng) -> LetterTransducer {
    let m = random_mealy(rng);
    let n = m.num_states();
    let f = LetterTransducer::from_transitions(
        m.input_alphabet().clone(),
        m.output_alphabet().clone(),
        n,
        m.transitions().map(|(p, a, w, q)| (q, a, w[0], p)),
        0..n,
        [m.initial()],
    )
    .expect("reversed machine");
    kernel_transducer(&Machine::Letter(f)).expect("letter transducer")
}

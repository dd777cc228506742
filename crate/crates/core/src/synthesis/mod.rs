//! Witness construction: Mealy machines and subsequential machines whose
//! kernel is a given relation, final-output elimination, and kernels of
//! synthesized machines as synchronous relations.

mod eliminate;
mod kernel;
mod matrix;

pub use eliminate::eliminate_final_output;
pub use kernel::kernel_transducer;
pub use matrix::{MatrixState, SuccessorPartition};

use crate::alphabet::{Alphabet, Letter};
use crate::decision::index_is_finite_unchecked;
use crate::error::{Error, Precondition, Result};
use crate::machine::{SequentialTransducer, SubsequentialTransducer};
use crate::relation::{
    is_prefix_closed_unchecked, syntactic_congruence_unchecked, validate_relation, SyntacticCongruence,
};
use crate::transducer::LetterTransducer;
use matrix::{explore, MatrixMachine, PairSpace};

/// Default bound on matrix dimensions. Reaching it means the index check
/// and the construction disagree.
pub const DEFAULT_DIMENSION_CAP: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct SynthesisOptions {
    pub dimension_cap: usize,
    /// Re-establish the preconditions before building (costly; the decision
    /// procedures skip it because they have just checked them).
    pub check_preconditions: bool,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            dimension_cap: DEFAULT_DIMENSION_CAP,
            check_preconditions: true,
        }
    }
}

/// A synthesized machine together with the matrix state behind each of its states.
#[derive(Clone, Debug)]
pub struct Synthesis<M> {
    pub machine: M,
    pub states: Vec<MatrixState>,
    pub max_dimension: usize,
}

/// Builds a Mealy machine whose kernel is `r`, for a prefix-closed
/// equivalence whose syntactic congruence has finite index in it.
pub fn synthesize_mealy(r: &LetterTransducer) -> Result<Synthesis<SequentialTransducer>> {
    synthesize_mealy_with(r, SynthesisOptions::default())
}

pub fn synthesize_mealy_with(
    r: &LetterTransducer,
    options: SynthesisOptions,
) -> Result<Synthesis<SequentialTransducer>> {
    if options.check_preconditions {
        if !validate_relation(r).is_equivalence() {
            return Err(Error::PreconditionViolated(Precondition::NotEquivalence));
        }
        if !is_prefix_closed_unchecked(r) {
            return Err(Error::PreconditionViolated(Precondition::NotPrefixClosed));
        }
    }
    let synt = syntactic_congruence_unchecked(r);
    if options.check_preconditions && !index_is_finite_unchecked(&synt.congruence, &synt.relation) {
        return Err(Error::PreconditionViolated(Precondition::InfiniteIndex));
    }
    mealy_from_congruence(&synt, options.dimension_cap)
}

pub(crate) fn mealy_from_congruence(
    synt: &SyntacticCongruence,
    dimension_cap: usize,
) -> Result<Synthesis<SequentialTransducer>> {
    let input = synt.relation.input_alphabet().clone();
    let space = PairSpace::new(input.len(), synt.relation.automaton(), &synt.diagonal, None);
    let built = explore(&space, dimension_cap)?;
    let output = body_alphabet(&input, built.max_dimension, false);
    let machine = assemble(&input, output, &built)?;
    Ok(Synthesis {
        machine,
        states: built.states,
        max_dimension: built.max_dimension,
    })
}

/// Builds a letter-to-letter subsequential machine whose kernel is `r`,
/// given `pplus = P_R⁺` in which the syntactic congruence of `r` has finite index.
pub fn synthesize_subsequential(
    r: &LetterTransducer,
    pplus: &LetterTransducer,
) -> Result<Synthesis<SubsequentialTransducer>> {
    synthesize_subsequential_with(r, pplus, SynthesisOptions::default())
}

pub fn synthesize_subsequential_with(
    r: &LetterTransducer,
    pplus: &LetterTransducer,
    options: SynthesisOptions,
) -> Result<Synthesis<SubsequentialTransducer>> {
    if options.check_preconditions {
        if !validate_relation(r).is_equivalence() {
            return Err(Error::PreconditionViolated(Precondition::NotEquivalence));
        }
        crate::decision::check_closure_witness(r, pplus)?;
    }
    let synt = syntactic_congruence_unchecked(r);
    if options.check_preconditions && !index_is_finite_unchecked(&synt.congruence, pplus) {
        return Err(Error::PreconditionViolated(Precondition::InfiniteIndex));
    }
    subsequential_from_congruence(&synt, pplus, options.dimension_cap)
}

pub(crate) fn subsequential_from_congruence(
    synt: &SyntacticCongruence,
    pplus: &LetterTransducer,
    dimension_cap: usize,
) -> Result<Synthesis<SubsequentialTransducer>> {
    let input = synt.relation.input_alphabet().clone();
    let coarse = pplus.automaton().minimize();
    let space = PairSpace::new(input.len(), synt.relation.automaton(), &synt.diagonal, Some(&coarse));
    let built = explore(&space, dimension_cap)?;
    let output = body_alphabet(&input, built.max_dimension, true);
    let base = assemble(&input, output, &built)?;
    let first_final = built.max_dimension * input.len();
    let final_output = built
        .states
        .iter()
        .map(|m| {
            (0..m.dimension())
                .find(|&j| space.in_relation(m.entry(m.row(), j)))
                .map(|j| first_final + j)
                .ok_or_else(|| Error::InvariantBreach("row without an R-related column".into()))
                .map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let machine = SubsequentialTransducer::new(base, final_output)?;
    Ok(Synthesis {
        machine,
        states: built.states,
        max_dimension: built.max_dimension,
    })
}

/// Letters `o<j>_<a>` for rows `1..=l_max` and input letters, ordered by
/// `(row, letter)`, then `t1..t<l_max>` when final outputs are needed.
fn body_alphabet(input: &Alphabet, max_dimension: usize, with_final: bool) -> Alphabet {
    let mut names = Vec::new();
    for j in 1..=max_dimension {
        for a in input.names() {
            names.push(format!("o{j}_{a}"));
        }
    }
    if with_final {
        names.extend((1..=max_dimension).map(|j| format!("t{j}")));
    }
    Alphabet::new(names).expect("fresh letters are distinct")
}

fn assemble(input: &Alphabet, output: Alphabet, built: &MatrixMachine) -> Result<SequentialTransducer> {
    let k = input.len();
    let mut machine = SequentialTransducer::new(input.clone(), output, built.states.len(), 0)?;
    for (p, row) in built.transitions.iter().enumerate() {
        machine.set_final(p, true);
        for (a, &((j, b), q)) in row.iter().enumerate() {
            let letter: Letter = j * k + b;
            machine.set_transition(p, a, vec![letter], q)?;
        }
    }
    Ok(machine)
}

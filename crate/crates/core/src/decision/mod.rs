//! Decision procedures: finite valuedness, finite index, and membership in
//! the classes of kernels of Mealy machines and of sequential functions.

mod valuedness;
mod verify;

pub use valuedness::is_finitely_valued;
pub use verify::bounded_kernel_mismatch;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::relation::{
    compose, inverse, is_prefix_closed_unchecked, min_lex_uniformizer_unchecked, prefix_closure,
    syntactic_congruence_unchecked, transitive_closure_with, validate_relation, ClosureOptions, RelationValidation,
    SyntacticCongruence,
};
use crate::synthesis::{
    eliminate_final_output, kernel_transducer, mealy_from_congruence, subsequential_from_congruence,
    DEFAULT_DIMENSION_CAP,
};
use crate::transducer::LetterTransducer;

/// Default number of closure rounds before giving up.
pub const DEFAULT_CLOSURE_CAP: usize = 16;
/// Default word length for checks that are only done up to a bound.
pub const DEFAULT_ORACLE_BOUND: usize = 8;

/// Whether `s` has finite index in `r`, i.e. every `r`-class is a finite
/// union of `s`-classes. Both must be equivalences and `s ⊆ r`.
pub fn index_is_finite(s: &LetterTransducer, r: &LetterTransducer) -> Result<bool> {
    if !validate_relation(s).is_equivalence() || !validate_relation(r).is_equivalence() {
        return Err(Error::NotEquivalence);
    }
    if !s.is_subset_of(r)? {
        return Err(Error::NotFiner);
    }
    Ok(index_is_finite_unchecked(s, r))
}

/// The index of `s` in `r` is the valuedness of `f∘r` for a function `f`
/// with kernel `s`.
pub(crate) fn index_is_finite_unchecked(s: &LetterTransducer, r: &LetterTransducer) -> bool {
    let f = min_lex_uniformizer_unchecked(s);
    let t = compose(&f, r).expect("endo relations over one alphabet");
    is_finitely_valued(&t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    NotLengthPreserving,
    NotPrefixClosed,
    InfiniteIndex,
    ClosureCapExhausted,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::NotLengthPreserving => "NOT_LENGTH_PRESERVING",
            Reason::NotPrefixClosed => "NOT_PREFIX_CLOSED",
            Reason::InfiniteIndex => "INFINITE_INDEX",
            Reason::ClosureCapExhausted => "CLOSURE_CAP_EXHAUSTED",
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "YES",
            Outcome::No => "NO",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// How far the witness kernel was checked against the input relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelCheck {
    Exact,
    Bounded {
        #[serde(rename = "maxLen")]
        max_len: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub machine: Machine,
    pub check: KernelCheck,
    /// Largest matrix dimension used while building the machine.
    pub max_dimension: usize,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reason: Option<Reason>,
    pub witness: Option<Witness>,
    /// Exponent reached by the closure iteration, when it ran.
    pub closure_exponent: Option<usize>,
}

impl Verdict {
    fn no(reason: Reason) -> Self {
        Verdict {
            outcome: Outcome::No,
            reason: Some(reason),
            witness: None,
            closure_exponent: None,
        }
    }

    fn yes(witness: Witness) -> Self {
        Verdict {
            outcome: Outcome::Yes,
            reason: None,
            witness: Some(witness),
            closure_exponent: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IndexClass {
    Finite,
    Infinite,
}

impl From<bool> for IndexClass {
    fn from(finite: bool) -> Self {
        if finite {
            IndexClass::Finite
        } else {
            IndexClass::Infinite
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub exponent: usize,
    pub converged: bool,
    pub supplied: bool,
}

/// Every condition the two characterizations are made of.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub validation: RelationValidation,
    pub length_preserving: bool,
    /// The remaining fields are only filled in for equivalence relations.
    pub prefix_closed: Option<bool>,
    pub index_wrt_r: Option<IndexClass>,
    pub closure: Option<ClosureSummary>,
    pub index_wrt_pplus: Option<IndexClass>,
}

pub fn analyze(r: &LetterTransducer, closure: Option<&LetterTransducer>, cap: usize) -> Result<AnalysisReport> {
    let validation = validate_relation(r);
    let mut report = AnalysisReport {
        validation,
        length_preserving: validation.is_letter_to_letter,
        prefix_closed: None,
        index_wrt_r: None,
        closure: None,
        index_wrt_pplus: None,
    };
    if !validation.is_equivalence() {
        return Ok(report);
    }
    let synt = syntactic_congruence_unchecked(r);
    report.prefix_closed = Some(is_prefix_closed_unchecked(r));
    report.index_wrt_r = Some(index_is_finite_unchecked(&synt.congruence, &synt.relation).into());
    let (pplus, summary) = obtain_closure(r, closure, cap, ClosureOptions::default())?;
    report.closure = Some(summary);
    if let Some(pplus) = pplus {
        report.index_wrt_pplus = Some(index_is_finite_unchecked(&synt.congruence, &pplus).into());
    }
    Ok(report)
}

fn require_letter_equivalence(r: &LetterTransducer) -> Result<Option<Verdict>> {
    let v = validate_relation(r);
    if !v.is_letter_to_letter {
        return Ok(Some(Verdict::no(Reason::NotLengthPreserving)));
    }
    if !v.is_equivalence() {
        return Err(Error::NotEquivalence);
    }
    Ok(None)
}

/// Is `r` the kernel of a Mealy machine? On YES the witness is a Mealy
/// machine whose kernel has been checked equal to `r`.
pub fn decide_kerseq_ll(r: &LetterTransducer) -> Result<Verdict> {
    if let Some(v) = require_letter_equivalence(r)? {
        return Ok(v);
    }
    if !is_prefix_closed_unchecked(r) {
        return Ok(Verdict::no(Reason::NotPrefixClosed));
    }
    let synt = syntactic_congruence_unchecked(r);
    if !index_is_finite_unchecked(&synt.congruence, &synt.relation) {
        return Ok(Verdict::no(Reason::InfiniteIndex));
    }
    let built = mealy_from_congruence(&synt, DEFAULT_DIMENSION_CAP)?;
    let machine = Machine::from(built.machine);
    require_kernel(&machine, r)?;
    Ok(Verdict::yes(Witness {
        machine,
        check: KernelCheck::Exact,
        max_dimension: built.max_dimension,
    }))
}

#[derive(Clone, Copy, Debug)]
pub struct LpOptions {
    pub cap: usize,
    pub closure: ClosureOptions,
    /// Turn the subsequential witness into a sequential one. Its kernel is
    /// then only checked on words up to `oracle_bound`.
    pub eliminate_final_output: bool,
    pub oracle_bound: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            cap: DEFAULT_CLOSURE_CAP,
            closure: ClosureOptions::default(),
            eliminate_final_output: false,
            oracle_bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

/// Is `r` the kernel of a sequential function? `closure`, when given, must
/// be the transitive closure of the prefix closure of `r`; otherwise it is
/// computed with at most `options.cap` rounds.
pub fn decide_kerseq_lp(
    r: &LetterTransducer,
    closure: Option<&LetterTransducer>,
    options: LpOptions,
) -> Result<Verdict> {
    if let Some(v) = require_letter_equivalence(r)? {
        return Ok(v);
    }
    let synt = syntactic_congruence_unchecked(r);
    if !index_is_finite_unchecked(&synt.congruence, &synt.relation) {
        return Ok(Verdict::no(Reason::InfiniteIndex));
    }
    let (pplus, summary) = obtain_closure(r, closure, options.cap, options.closure)?;
    let exponent = (!summary.supplied).then_some(summary.exponent);
    let Some(pplus) = pplus else {
        return Ok(Verdict {
            outcome: Outcome::Unknown,
            reason: Some(Reason::ClosureCapExhausted),
            witness: None,
            closure_exponent: exponent,
        });
    };
    if !index_is_finite_unchecked(&synt.congruence, &pplus) {
        return Ok(Verdict {
            closure_exponent: exponent,
            ..Verdict::no(Reason::InfiniteIndex)
        });
    }
    let mut verdict = lp_witness(r, &synt, &pplus, options)?;
    verdict.closure_exponent = exponent;
    Ok(verdict)
}

fn lp_witness(
    r: &LetterTransducer,
    synt: &SyntacticCongruence,
    pplus: &LetterTransducer,
    options: LpOptions,
) -> Result<Verdict> {
    let built = subsequential_from_congruence(synt, pplus, DEFAULT_DIMENSION_CAP)?;
    let sub = Machine::from(built.machine.clone());
    require_kernel(&sub, r)?;
    if !options.eliminate_final_output {
        return Ok(Verdict::yes(Witness {
            machine: sub,
            check: KernelCheck::Exact,
            max_dimension: built.max_dimension,
        }));
    }
    let machine = Machine::from(eliminate_final_output(&built.machine)?);
    if let Some((u, v)) = bounded_kernel_mismatch(r, &machine, options.oracle_bound)? {
        return Err(Error::InvariantBreach(format!(
            "eliminated witness disagrees with the relation on {u:?}, {v:?}"
        )));
    }
    Ok(Verdict::yes(Witness {
        machine,
        check: KernelCheck::Bounded {
            max_len: options.oracle_bound,
        },
        max_dimension: built.max_dimension,
    }))
}

fn require_kernel(machine: &Machine, r: &LetterTransducer) -> Result<()> {
    if kernel_transducer(machine)?.relation_equal(r)? {
        Ok(())
    } else {
        Err(Error::InvariantBreach(
            "synthesized kernel differs from the relation".into(),
        ))
    }
}

/// `(P⁺, summary)`, with `P⁺ = None` when the capped iteration gave up.
fn obtain_closure(
    r: &LetterTransducer,
    closure: Option<&LetterTransducer>,
    cap: usize,
    options: ClosureOptions,
) -> Result<(Option<LetterTransducer>, ClosureSummary)> {
    if let Some(c) = closure {
        check_closure_witness(r, c)?;
        let summary = ClosureSummary {
            exponent: 0,
            converged: true,
            supplied: true,
        };
        return Ok((Some(c.minimized().trimmed()), summary));
    }
    let result = transitive_closure_with(&prefix_closure(r), cap, options);
    let summary = ClosureSummary {
        exponent: result.exponent,
        converged: result.converged,
        supplied: false,
    };
    Ok((result.converged.then_some(result.closure), summary))
}

/// Accepts `c` as `P_R⁺` if it contains `P_R`, is symmetric and transitive,
/// and is a fixpoint of `C ↦ C ∪ C∘P_R`. Minimality cannot be checked
/// without computing the closure itself and is left to the caller.
pub fn check_closure_witness(r: &LetterTransducer, c: &LetterTransducer) -> Result<()> {
    let bad = |m: &str| Err(Error::BadClosureWitness(m.into()));
    if c.input_alphabet() != r.input_alphabet() || !c.is_endo() {
        return bad("alphabet differs from the relation's");
    }
    let p = prefix_closure(r);
    if !p.is_subset_of(c)? {
        return bad("does not contain the prefix closure");
    }
    if !inverse(c).is_subset_of(c)? {
        return bad("not symmetric");
    }
    if !compose(c, c)?.is_subset_of(c)? {
        return bad("not transitive");
    }
    if !c.union(&compose(c, &p)?)?.relation_equal(c)? {
        return bad("not a fixpoint of composition with the prefix closure");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::fixtures;
    use crate::relation::syntactic_congruence;

    fn id() -> LetterTransducer {
        LetterTransducer::identity(&Alphabet::new(["a", "b"]).unwrap())
    }

    fn not_symmetric() -> LetterTransducer {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        LetterTransducer::from_transitions(ab.clone(), ab, 1, [(0, 0, 0, 0), (0, 1, 1, 0), (0, 0, 1, 0)], [0], [0])
            .unwrap()
    }

    #[test]
    fn index_examples() {
        let r = fixtures::even_a();
        assert!(index_is_finite(&r, &r).unwrap());
        let s = syntactic_congruence(&r).unwrap();
        assert!(index_is_finite(&s.congruence, &r).unwrap());
        let inf = fixtures::index_infinite();
        let s = syntactic_congruence(&inf).unwrap();
        assert!(!index_is_finite(&s.congruence, &inf).unwrap());
        assert!(matches!(index_is_finite(&r, &id()), Err(Error::NotFiner)));
    }

    #[test]
    fn ll_verdicts() {
        assert_eq!(
            decide_kerseq_ll(&fixtures::even_a()).unwrap().reason,
            Some(Reason::NotPrefixClosed)
        );
        assert_eq!(
            decide_kerseq_ll(&fixtures::index_infinite()).unwrap().reason,
            Some(Reason::InfiniteIndex)
        );
        let v = decide_kerseq_ll(&id()).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
        assert_eq!(v.witness.unwrap().machine.num_states(), 1);
        assert!(matches!(decide_kerseq_ll(&not_symmetric()), Err(Error::NotEquivalence)));
    }

    #[test]
    fn lp_verdicts() {
        let options = LpOptions {
            cap: 10,
            eliminate_final_output: true,
            ..LpOptions::default()
        };
        let v = decide_kerseq_lp(&fixtures::even_a(), None, options).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
        assert_eq!(v.witness.unwrap().check, KernelCheck::Bounded { max_len: 8 });
        let v = decide_kerseq_lp(&fixtures::last_a(), None, options).unwrap();
        assert_eq!((v.outcome, v.reason), (Outcome::No, Some(Reason::InfiniteIndex)));
        let v = decide_kerseq_lp(&id(), None, LpOptions { cap: 1, ..options }).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
        assert_eq!(v.witness.unwrap().machine.num_states(), 1);
    }

    #[test]
    fn closure_cap_gives_unknown() {
        let r = fixtures::chain(3);
        let v = decide_kerseq_lp(
            &r,
            None,
            LpOptions {
                cap: 1,
                ..LpOptions::default()
            },
        )
        .unwrap();
        assert_eq!(
            (v.outcome, v.reason),
            (Outcome::Unknown, Some(Reason::ClosureCapExhausted))
        );
        assert_eq!(v.closure_exponent, Some(1));
    }

    #[test]
    fn closure_witness_validation() {
        let r = fixtures::even_a();
        let all = LetterTransducer::universal(r.input_alphabet());
        assert!(check_closure_witness(&r, &all).is_ok());
        assert!(matches!(
            check_closure_witness(&r, &r),
            Err(Error::BadClosureWitness(_))
        ));
        let v = decide_kerseq_lp(&r, Some(&all), LpOptions::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
    }

    #[test]
    fn analysis_report() {
        let rep = analyze(&fixtures::last_a(), None, 10).unwrap();
        assert_eq!(rep.prefix_closed, Some(false));
        assert_eq!(rep.index_wrt_r, Some(IndexClass::Finite));
        assert_eq!(rep.index_wrt_pplus, Some(IndexClass::Infinite));
        let rep = analyze(&not_symmetric(), None, 10).unwrap();
        assert!(!rep.validation.is_equivalence());
        assert_eq!(rep.index_wrt_r, None);
    }
}

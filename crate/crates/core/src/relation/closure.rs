use serde::Serialize;

use super::compose;
use crate::transducer::LetterTransducer;

/// Outcome of the capped fixpoint iteration `Q₁ = P`, `Q_{i+1} = Q_i ∪ Q_i∘P`.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// Last computed iterate; equals `P⁺` when `converged`.
    pub closure: LetterTransducer,
    /// On convergence, the least `k` with `P^k = P^{k+1}`; otherwise the
    /// round at which the iteration stopped.
    pub exponent: usize,
    pub converged: bool,
    /// The iteration stopped because a determinization outgrew
    /// [`ClosureOptions::max_states`] rather than by reaching the cap.
    pub budget_exceeded: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClosureOptions {
    /// Minimize every iterate instead of only determinizing and trimming it.
    pub minimize: bool,
    /// Largest subset construction attempted for one iterate.
    pub max_states: usize,
}

/// Default bound on the subset construction for one closure iterate.
pub const DEFAULT_CLOSURE_STATE_BUDGET: usize = 50_000;

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            minimize: true,
            max_states: DEFAULT_CLOSURE_STATE_BUDGET,
        }
    }
}

/// Transitive closure of a reflexive, symmetric relation, giving up after
/// `cap` rounds. Never loops: whether the iteration reaches a fixpoint is
/// not decidable in general, so a non-converged result is reported as such.
pub fn transitive_closure(p: &LetterTransducer, cap: usize) -> ClosureResult {
    transitive_closure_with(p, cap, ClosureOptions::default())
}

pub fn transitive_closure_with(p: &LetterTransducer, cap: usize, options: ClosureOptions) -> ClosureResult {
    let normalize = |t: &LetterTransducer| -> Option<LetterTransducer> {
        let nfa = if options.minimize {
            t.automaton().minimize_within(options.max_states)?
        } else {
            t.automaton().determinize_within(options.max_states)?.0
        };
        Some(t.with_automaton(nfa.trim()))
    };
    let gave_up = |closure: LetterTransducer, exponent: usize, budget_exceeded: bool| ClosureResult {
        closure,
        exponent,
        converged: false,
        budget_exceeded,
    };
    let Some(base) = normalize(p) else {
        return gave_up(p.clone(), 0, true);
    };
    let mut current = base.clone();
    for i in 1..=cap {
        let step = compose(&current, &base).expect("endo relation");
        let Some(next) = normalize(&current.union(&step).expect("same alphabets")) else {
            return gave_up(current, i, true);
        };
        if next.relation_equal(&current).expect("same alphabets") {
            return ClosureResult {
                closure: current,
                exponent: i,
                converged: true,
                budget_exceeded: false,
            };
        }
        current = next;
    }
    gave_up(current, cap, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::fixtures;
    use crate::relation::{prefix_closure, validate_relation};

    #[test]
    fn transitive_input_converges_immediately() {
        let id = LetterTransducer::identity(&Alphabet::new(["a", "b"]).unwrap());
        let c = transitive_closure(&id, 4);
        assert!(c.converged);
        assert_eq!(c.exponent, 1);
        assert!(c.closure.relation_equal(&id).unwrap());
    }

    #[test]
    fn even_a_prefix_closure_is_universal() {
        let p = prefix_closure(&fixtures::even_a());
        let c = transitive_closure(&p, 10);
        assert!(c.converged);
        let all = LetterTransducer::universal(p.input_alphabet());
        assert!(c.closure.relation_equal(&all).unwrap());
        assert!(validate_relation(&c.closure).is_transitive);
    }

    #[test]
    fn chain_needs_exponent_beyond_cap() {
        let r = fixtures::chain(3);
        let p = prefix_closure(&r);
        let capped = transitive_closure(&p, 1);
        assert!(!capped.converged);
        assert_eq!(capped.exponent, 1);
        let full = transitive_closure(&p, 10);
        assert!(full.converged);
        assert_eq!(full.exponent, 3);
    }

    #[test]
    fn state_budget_stops_the_iteration() {
        let p = prefix_closure(&fixtures::chain(3));
        let options = ClosureOptions {
            max_states: 4,
            ..Default::default()
        };
        let c = transitive_closure_with(&p, 10, options);
        assert!(!c.converged && c.budget_exceeded);
    }

    #[test]
    fn minimization_flag_does_not_change_the_relation() {
        let p = prefix_closure(&fixtures::chain(2));
        let a = transitive_closure_with(
            &p,
            8,
            ClosureOptions {
                minimize: true,
                ..Default::default()
            },
        );
        let b = transitive_closure_with(
            &p,
            8,
            ClosureOptions {
                minimize: false,
                ..Default::default()
            },
        );
        assert_eq!(a.exponent, b.exponent);
        assert!(a.closure.relation_equal(&b.closure).unwrap());
    }
}

use proptest::prelude::*;

use kernseq::alphabet::words_up_to;
use kernseq::decision::{decide_kerseq_ll, decide_kerseq_lp, LpOptions, Outcome};
use kernseq::format;
use kernseq::machine::{Machine, SequentialTransducer, SubsequentialTransducer};
use kernseq::oracle::{
    accepts_backward, brute_kernel, brute_syntactic, brute_valuedness, enumerate_relation, generate_instance,
    DEFAULT_SEED,
};
use kernseq::relation::{min_lex_uniformizer, prefix_closure, syntactic_congruence, transitive_closure};
use kernseq::synthesis::{eliminate_final_output, kernel_transducer, synthesize_subsequential};
use kernseq::{Alphabet, LetterTransducer};

fn alphabet(prefix: &str, size: usize) -> Alphabet {
    Alphabet::new((0..size).map(|i| format!("{prefix}{i}"))).unwrap()
}

prop_compose! {
    fn letter_transducer()(n in 1usize..5, ni in 1usize..4, no in 1usize..3)
        (trans in prop::collection::vec((0..n, 0..ni, 0..no, 0..n), 0..14),
         initials in prop::collection::vec(0..n, 1..3),
         finals in prop::collection::vec(0..n, 0..4),
         n in Just(n), ni in Just(ni), no in Just(no)) -> LetterTransducer {
        LetterTransducer::from_transitions(alphabet("a", ni), alphabet("b", no), n, trans, initials, finals).unwrap()
    }
}

prop_compose! {
    fn sequential(out_len: std::ops::Range<usize>)(n in 1usize..5, ni in 1usize..4, no in 1usize..3)
        (edges in prop::collection::vec(prop::option::of((prop::collection::vec(0..no, out_len.clone()), 0..n)), n * ni),
         finals in prop::collection::vec(any::<bool>(), n),
         n in Just(n), ni in Just(ni), no in Just(no)) -> SequentialTransducer {
        let mut m = SequentialTransducer::new(alphabet("a", ni), alphabet("b", no), n, 0).unwrap();
        for (i, edge) in edges.into_iter().enumerate() {
            if let Some((out, to)) = edge {
                m.set_transition(i / ni, i % ni, out, to).unwrap();
            }
        }
        for (q, f) in finals.into_iter().enumerate() {
            m.set_final(q, f);
        }
        m
    }
}

fn machine() -> impl Strategy<Value = Machine> {
    prop_oneof![
        letter_transducer().prop_map(Machine::from),
        sequential(0..3).prop_map(Machine::from),
        (sequential(1..2), any::<u64>()).prop_map(|(m, pick)| {
            let no = m.output_alphabet().len() as u64;
            let t = (0..m.num_states())
                .map(|q| m.is_final(q).then_some(((pick >> q) % no) as usize))
                .collect();
            Machine::from(SubsequentialTransducer::new(m, t).unwrap())
        }),
    ]
}

/// A relation from the seeded random suite.
fn instance() -> impl Strategy<Value = LetterTransducer> {
    (0usize..1000).prop_map(|i| generate_instance(DEFAULT_SEED, i).relation)
}

fn same_length_pair(k: usize, max: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (0..=max).prop_flat_map(move |n| (prop::collection::vec(0..k, n), prop::collection::vec(0..k, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn print_parse_round_trip(m in machine()) {
        let text = format::print(&m);
        let parsed = format::parse(&text).unwrap();
        prop_assert_eq!(&parsed.machine, &m);
        prop_assert_eq!(parsed.print(), text);
    }

    #[test]
    fn membership_agrees_with_enumeration(t in letter_transducer(), seed in any::<u64>()) {
        let enumerated = enumerate_relation(&t, 4).unwrap();
        let k = t.input_alphabet().len();
        let no = t.output_alphabet().len();
        for (i, u) in words_up_to(k, 4).enumerate() {
            let v: Vec<usize> = u.iter().enumerate().map(|(j, _)| ((seed >> ((i + j) % 60)) as usize) % no).collect();
            let direct = t.accepts(&u, &v);
            prop_assert_eq!(direct, accepts_backward(&t, &u, &v));
            prop_assert_eq!(direct, enumerated.contains(&u, &v));
        }
        for (u, v) in &enumerated.pairs {
            prop_assert!(t.accepts(u, v));
        }
    }

    #[test]
    fn minimization_and_complement_preserve_languages(t in letter_transducer()) {
        let m = t.minimized();
        prop_assert_eq!(enumerate_relation(&m, 4).unwrap(), enumerate_relation(&t, 4).unwrap());
        prop_assert!(m.automaton().is_deterministic() && m.automaton().is_complete());
        let dfa = t.automaton().determinize();
        let complement = dfa.complement().unwrap();
        prop_assert!(complement.intersect(&dfa).unwrap().is_empty());
        prop_assert!(complement.complement().unwrap().language_equal(t.automaton()).unwrap());
        prop_assert!(t.is_subset_of(&prefix_closure(&t)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn syntactic_congruence_is_a_right_congruence_inside_r(r in instance(), pair in same_length_pair(2, 5)) {
        let synt = syntactic_congruence(&r).unwrap();
        prop_assert!(synt.congruence.is_subset_of(&r).unwrap());
        let (u, v) = pair;
        let related = synt.congruence.accepts(&u, &v);
        prop_assert_eq!(related, brute_syntactic(&r, &u, &v));
        if related {
            for a in 0..2 {
                let (mut ua, mut va) = (u.clone(), v.clone());
                ua.push(a);
                va.push(a);
                prop_assert!(synt.congruence.accepts(&ua, &va));
            }
        }
    }

    #[test]
    fn uniformizer_is_a_function_with_kernel_s(r in instance()) {
        let s = syntactic_congruence(&r).unwrap().congruence;
        let f = min_lex_uniformizer(&s).unwrap();
        prop_assert!(brute_valuedness(&f, 7).unwrap() <= 1);
        let ker = brute_kernel(&Machine::from(f), 6).unwrap();
        prop_assert_eq!(ker, enumerate_relation(&s, 6).unwrap());
    }

    #[test]
    fn converged_closure_is_transitive(r in instance()) {
        let result = transitive_closure(&prefix_closure(&r), 16);
        if result.converged {
            let c = &result.closure;
            let twice = kernseq::relation::compose(c, c).unwrap();
            prop_assert!(twice.is_subset_of(c).unwrap());
        }
    }

    #[test]
    fn ll_yes_implies_lp_yes(r in instance()) {
        let ll = decide_kerseq_ll(&r).unwrap();
        let lp = decide_kerseq_lp(&r, None, LpOptions::default()).unwrap();
        if ll.outcome == Outcome::Yes {
            prop_assert_eq!(lp.outcome, Outcome::Yes);
        }
    }

    #[test]
    fn mealy_outputs_coincide_exactly_on_r_classes(r in instance(), pair in same_length_pair(2, 6)) {
        if let Some(w) = decide_kerseq_ll(&r).unwrap().witness {
            let (u, v) = pair;
            prop_assert_eq!(w.machine.apply(&u) == w.machine.apply(&v), accepts_backward(&r, &u, &v));
        }
    }

    #[test]
    fn witnesses_have_equal_kernels(r in instance()) {
        let result = transitive_closure(&prefix_closure(&r), 16);
        prop_assume!(result.converged);
        let Ok(sub) = synthesize_subsequential(&r, &result.closure) else {
            return Ok(());
        };
        let seq = Machine::from(eliminate_final_output(&sub.machine).unwrap());
        let sub = Machine::from(sub.machine);
        let want = enumerate_relation(&r, 7).unwrap();
        prop_assert_eq!(&brute_kernel(&sub, 7).unwrap(), &want);
        prop_assert_eq!(&brute_kernel(&seq, 7).unwrap(), &want);
        prop_assert_eq!(&enumerate_relation(&kernel_transducer(&sub).unwrap(), 7).unwrap(), &want);
        if let Some(w) = decide_kerseq_ll(&r).unwrap().witness {
            prop_assert_eq!(&brute_kernel(&w.machine, 7).unwrap(), &want);
        }
    }
}

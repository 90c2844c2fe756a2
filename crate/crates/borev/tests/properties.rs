//! Cross-module invariants under randomised rank assignments. The
//! strategies build arbitrary normal states rather than replaying the
//! library's own generator, so disagreements shrink to small rank vectors.

mod common;

use borev::canonical::classify_black_box;
use borev::logic::{canonical_formula, models, parse_formula, AtomTable, WorldSet};
use borev::npr::{is_credible, npr_revise, NprState};
use borev::orders::{GenClass, RankedInterpretation};
use borev::postulates::{check_suite, violates, CheckMode, OperatorUnderTest, Suite, Verdict};
use borev::problem::{render, ProblemFile};
use borev::revision::{revise, BeliefState, OperatorClass};
use common::random_state;
use proptest::prelude::*;

fn table() -> AtomTable {
    AtomTable::new(["p", "q"]).unwrap()
}

/// Any pair of rank vectors with the lower ranks shifted down to zero is a
/// normal biorder state; nothing else about the shape is constrained.
fn arb_state() -> impl Strategy<Value = BeliefState> {
    (
        proptest::collection::vec(0u32..4, 4),
        proptest::collection::vec(0u32..4, 4),
    )
        .prop_map(|(mut lower, upper)| {
            let floor = *lower.iter().min().unwrap();
            for rank in &mut lower {
                *rank -= floor;
            }
            let interp = RankedInterpretation::new(2, lower, upper).unwrap();
            BeliefState::new(interp, OperatorClass::Bob).unwrap()
        })
}

proptest! {
    #[test]
    fn revision_agrees_with_optimisation(state in arb_state(), mask in 0u64..16) {
        let a = WorldSet::from_mask(2, mask);
        let via_ranks = revise(&state, &a).models;
        let via_relation = state.interpretation().relation().opt(&a);
        prop_assert_eq!(via_ranks, via_relation);
    }

    #[test]
    fn non_prioritised_revision_factors_and_stays_consistent(
        state in arb_state(),
        mask in 0u64..16,
    ) {
        let a = WorldSet::from_mask(2, mask);
        let nstate = NprState::new(state.clone());
        let outcome = npr_revise(&nstate, &a);
        prop_assert!(!outcome.is_empty());
        let expected = if is_credible(&nstate, &a) {
            revise(&state, &a).models
        } else {
            state.belief_models().clone()
        };
        prop_assert_eq!(outcome, expected);
    }

    #[test]
    fn rendered_states_reload_verbatim(state in arb_state()) {
        let t = table();
        let text = render(&state, &t);
        let reparsed = ProblemFile::parse(&text).unwrap();
        let reloaded = reparsed.state().unwrap();
        prop_assert_eq!(reloaded.interpretation(), state.interpretation());
        prop_assert_eq!(render(&reloaded, reparsed.table()), text);
    }

    #[test]
    fn canonical_extraction_reproduces_every_state(state in arb_state()) {
        let op = OperatorUnderTest::from_revision(&state);
        let observed = classify_black_box(&op).unwrap();
        prop_assert!(observed.roundtrip.holds);
        prop_assert!(observed.classes.contains(&OperatorClass::Bob));
    }

    #[test]
    fn interval_rewrites_preserve_inhabited_choices(seed in any::<u64>()) {
        let state = random_state(2, GenClass::ZTransitive, OperatorClass::Ztbob, seed);
        let relation = state.interpretation().relation();
        let rewritten = relation.to_interval_order().unwrap();
        prop_assert!(rewritten.is_reflexive());
        prop_assert!(rewritten.is_ferrers());
        for mask in 0..16u64 {
            let a = WorldSet::from_mask(2, mask);
            let original = relation.opt(&a);
            if !original.is_empty() {
                prop_assert_eq!(rewritten.opt(&a), original);
            }
        }
    }

    #[test]
    fn failing_suite_witnesses_replay(state in arb_state()) {
        let op = OperatorUnderTest::from_revision(&state);
        for report in check_suite(&op, Suite::Agm, CheckMode::Exhaustive).unwrap() {
            if report.verdict == Verdict::Fails {
                let w = report.witness.as_ref().expect("failing reports carry a witness");
                prop_assert!(violates(&op, report.postulate, &w.alpha, w.beta.as_ref()));
            }
        }
    }

    #[test]
    fn formula_rendering_round_trips_through_the_parser(mask in 0u64..16) {
        let t = table();
        let set = WorldSet::from_mask(2, mask);
        let rendered = canonical_formula(&set, &t).display(&t).to_string();
        let reparsed = models(&parse_formula(&rendered, &t).unwrap(), &t);
        prop_assert_eq!(reparsed, set);
    }
}

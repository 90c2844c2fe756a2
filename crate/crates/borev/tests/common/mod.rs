//! Shared fixture loading and corpus generation for the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use borev::logic::WorldSet;
use borev::orders::{random_interpretation, GenClass};
use borev::problem::ProblemFile;
use borev::revision::{BeliefState, OperatorClass};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_fixture(name: &str) -> (ProblemFile, BeliefState) {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"));
    let pf = ProblemFile::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    let state = pf.state().unwrap_or_else(|e| panic!("{name}: {e}"));
    (pf, state)
}

pub fn interval_example() -> BeliefState {
    load_fixture("interval_example.bk").1
}

pub fn biorder_example() -> BeliefState {
    load_fixture("biorder_example.bk").1
}

pub fn ccm_failure_example() -> BeliefState {
    load_fixture("ccm_failure.bk").1
}

pub fn z_transitive_example() -> BeliefState {
    load_fixture("z_transitive_example.bk").1
}

/// Generator class paired with the operator class its output inhabits.
pub const PLANS: [(GenClass, OperatorClass); 4] = [
    (GenClass::Interval, OperatorClass::Iob),
    (GenClass::Biorder, OperatorClass::Bob),
    (GenClass::ZTransitive, OperatorClass::Ztbob),
    (GenClass::Transitive, OperatorClass::Tbob),
];

/// A deterministic random state: the anchor is carved out of the seed so
/// different seeds vary both ranks and belief set.
pub fn random_state(n_atoms: usize, gen: GenClass, class: OperatorClass, seed: u64) -> BeliefState {
    let worlds = 1u64 << (1 << n_atoms);
    let anchor_mask = (seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) % (worlds - 1)) + 1;
    let anchor = WorldSet::from_mask(n_atoms, anchor_mask);
    let max_rank = if n_atoms == 2 { 3 } else { 4 };
    let interp = random_interpretation(n_atoms, &anchor, gen, max_rank, seed)
        .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    BeliefState::new(interp, class).unwrap_or_else(|e| panic!("seed {seed}: {e}"))
}

/// Every sentence class over `n_atoms` atoms, ascending mask order.
pub fn all_classes(n_atoms: usize) -> impl Iterator<Item = WorldSet> {
    (0..(1u64 << (1 << n_atoms))).map(move |mask| WorldSet::from_mask(n_atoms, mask))
}

pub fn ws(mask: u64) -> WorldSet {
    WorldSet::from_mask(2, mask)
}

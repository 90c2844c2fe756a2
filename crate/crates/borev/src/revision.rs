//! Belief states and the prioritised revision operators.
//!
//! A belief state pairs a normal ranked interpretation with a declared
//! operator class. Its belief set is whatever the interpretation makes
//! optimal overall; revision by a world set keeps the members whose lower
//! rank reaches the set's minimal upper rank. That direct formula coincides
//! with optimisation under the induced relation, which the tests treat as
//! the ground truth.

use crate::logic::{Valuation, WorldSet, MAX_EXHAUSTIVE_ATOMS};
use crate::orders::{interpretation_of, RankedInterpretation};
use thiserror::Error;

/// The four operator classes, ordered from most to least constrained
/// relation shape (interval orders sit apart: reflexive but not comparable
/// to the threshold conditions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorClass {
    /// Interval-order based: every interval well formed (`lower <= upper`).
    Iob,
    /// Plain biorder based: any rank assignment.
    Bob,
    /// Biorder whose compressed form is boundary z-transitive.
    Ztbob,
    /// Biorder whose compressed form meets the backward-threshold condition.
    Tbob,
}

impl OperatorClass {
    pub const ALL: [OperatorClass; 4] =
        [OperatorClass::Iob, OperatorClass::Bob, OperatorClass::Ztbob, OperatorClass::Tbob];

    pub fn name(self) -> &'static str {
        match self {
            OperatorClass::Iob => "iob",
            OperatorClass::Bob => "bob",
            OperatorClass::Ztbob => "ztbob",
            OperatorClass::Tbob => "tbob",
        }
    }
}

impl std::fmt::Display for OperatorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for OperatorClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iob" => Ok(OperatorClass::Iob),
            "bob" => Ok(OperatorClass::Bob),
            "ztbob" => Ok(OperatorClass::Ztbob),
            "tbob" => Ok(OperatorClass::Tbob),
            other => Err(format!("unknown operator class `{other}` (expected iob, bob, ztbob or tbob)")),
        }
    }
}

/// Errors from belief-state construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RevisionError {
    #[error("interpretation is not normal: no valuation has lower rank 0")]
    NotNormal,
    #[error("interpretation does not inhabit class {class}: {detail}")]
    ClassViolation { class: OperatorClass, detail: String },
    #[error("vacuity condition fails: {detail}")]
    VacuityViolation { detail: String },
}

/// An anchored belief state: interpretation, declared class, and the belief
/// set it induces (the overall-optimal worlds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefState {
    interp: RankedInterpretation,
    class: OperatorClass,
    k: WorldSet,
}

impl BeliefState {
    /// Validate and build. The interpretation must be normal (which makes
    /// the belief set nonempty) and must genuinely inhabit the declared
    /// class; class membership is judged on the compressed equivalent, where
    /// the threshold conditions characterise the relation shape.
    pub fn new(interp: RankedInterpretation, class: OperatorClass) -> Result<Self, RevisionError> {
        if !interp.is_normal() {
            return Err(RevisionError::NotNormal);
        }
        let inhabited = classify_operator_class(&interp);
        if !inhabited.contains(&class) {
            let detail = match class {
                OperatorClass::Iob => {
                    let v = (0..interp.world_count() as u16)
                        .map(Valuation)
                        .find(|v| interp.lower(*v) > interp.upper(*v))
                        .expect("a class violation has a witness");
                    format!(
                        "valuation {} has lower {} above upper {}",
                        v.bitstring(interp.n_atoms()),
                        interp.lower(v),
                        interp.upper(v)
                    )
                }
                OperatorClass::Bob => unreachable!("every interpretation is biorder based"),
                OperatorClass::Ztbob => {
                    let compressed = compress(&interp);
                    let (u, z) = compressed.bzt_witness().expect("a class violation has a witness");
                    format!(
                        "boundary z-transitivity fails on the compressed form at u={}, z={}",
                        u.bitstring(interp.n_atoms()),
                        z.bitstring(interp.n_atoms())
                    )
                }
                OperatorClass::Tbob => {
                    let compressed = compress(&interp);
                    let v = compressed.bt_witness().expect("a class violation has a witness");
                    format!(
                        "backward threshold fails on the compressed form at {}",
                        v.bitstring(interp.n_atoms())
                    )
                }
            };
            return Err(RevisionError::ClassViolation { class, detail });
        }
        let k = belief_of(&interp);
        Ok(BeliefState { interp, class, k })
    }

    /// Like [`BeliefState::new`], additionally requiring the belief worlds to
    /// sit strictly below all others (the condition that forces Vacuity).
    /// Reports the failure; never repairs the ranks.
    pub fn with_vacuity_check(
        interp: RankedInterpretation,
        class: OperatorClass,
    ) -> Result<Self, RevisionError> {
        let state = BeliefState::new(interp, class)?;
        let rel = state.interp.relation();
        if !rel.satisfies_vacuity_condition(&state.k) {
            let offender = state
                .k
                .iter()
                .find_map(|v| {
                    state
                        .k
                        .complement()
                        .iter()
                        .find(|v2| !rel.le(v, *v2) || rel.le(*v2, v))
                        .map(|v2| (v, v2))
                })
                .expect("a vacuity violation has a witness");
            return Err(RevisionError::VacuityViolation {
                detail: format!(
                    "belief world {} is not strictly below {}",
                    offender.0.bitstring(state.interp.n_atoms()),
                    offender.1.bitstring(state.interp.n_atoms())
                ),
            });
        }
        Ok(state)
    }

    pub fn interpretation(&self) -> &RankedInterpretation {
        &self.interp
    }

    pub fn class(&self) -> OperatorClass {
        self.class
    }

    /// Models of the belief set `K`.
    pub fn belief_models(&self) -> &WorldSet {
        &self.k
    }

    pub fn n_atoms(&self) -> usize {
        self.interp.n_atoms()
    }

    pub fn dissonant_worlds(&self) -> WorldSet {
        self.interp.dissonant_worlds()
    }
}

fn belief_of(interp: &RankedInterpretation) -> WorldSet {
    let min_u = (0..interp.world_count() as u16)
        .map(|v| interp.upper(Valuation(v)))
        .min()
        .expect("nonempty valuation space");
    WorldSet::from_worlds(
        interp.n_atoms(),
        (0..interp.world_count() as u16).map(Valuation).filter(|v| interp.lower(*v) <= min_u),
    )
}

fn compress(interp: &RankedInterpretation) -> RankedInterpretation {
    interpretation_of(&interp.relation()).expect("rank-induced relations are Ferrers")
}

/// Which classes does this interpretation genuinely inhabit? Judged on the
/// compressed equivalent: well-formed intervals, the boundary z-transitivity
/// condition, the backward-threshold condition. Every interpretation is at
/// least biorder based.
pub fn classify_operator_class(interp: &RankedInterpretation) -> Vec<OperatorClass> {
    let compressed = compress(interp);
    let mut out = Vec::new();
    if compressed.is_interval() {
        out.push(OperatorClass::Iob);
    }
    out.push(OperatorClass::Bob);
    if compressed.satisfies_bzt() {
        out.push(OperatorClass::Ztbob);
    }
    if compressed.satisfies_bt() {
        out.push(OperatorClass::Tbob);
    }
    out
}

/// The most specific class tag an interpretation supports, useful when a
/// state has to be emitted with a single declared class.
pub fn strongest_class(interp: &RankedInterpretation) -> OperatorClass {
    let classes = classify_operator_class(interp);
    for preferred in [OperatorClass::Tbob, OperatorClass::Ztbob, OperatorClass::Iob] {
        if classes.contains(&preferred) {
            return preferred;
        }
    }
    OperatorClass::Bob
}

/// Result of a single revision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionOutcome {
    pub models: WorldSet,
}

impl RevisionOutcome {
    /// An inconsistent outcome (no models) denotes the absurd belief set.
    pub fn consistent(&self) -> bool {
        !self.models.is_empty()
    }
}

/// Componentwise minima of the two ranks over `a`; absent for the empty set.
pub fn sentence_ranks(state: &BeliefState, a: &WorldSet) -> (Option<u32>, Option<u32>) {
    let interp = state.interpretation();
    let lower = a.iter().map(|v| interp.lower(v)).min();
    let upper = a.iter().map(|v| interp.upper(v)).min();
    (lower, upper)
}

/// Prioritised revision: keep the members of `a` whose lower rank is within
/// the minimal upper rank met by `a`. Revising by the empty set yields the
/// inconsistent outcome.
pub fn revise(state: &BeliefState, a: &WorldSet) -> RevisionOutcome {
    let interp = state.interpretation();
    assert_eq!(a.n_atoms(), interp.n_atoms(), "world set width must match the state");
    let models = match a.iter().map(|v| interp.upper(v)).min() {
        None => WorldSet::empty(interp.n_atoms()),
        Some(bound) => WorldSet::from_worlds(
            interp.n_atoms(),
            a.iter().filter(|v| interp.lower(*v) <= bound),
        ),
    };
    RevisionOutcome { models }
}

/// Is revising by `a` inconsistent?
pub fn is_destabilising(state: &BeliefState, a: &WorldSet) -> bool {
    !revise(state, a).consistent()
}

/// Is every strengthening of `a` destabilising as well? Equivalent to all of
/// `a`'s worlds being dissonant, since optimisation never keeps a dissonant
/// world; the subset-by-subset reading is enforced in tests.
pub fn is_irreconcilable(state: &BeliefState, a: &WorldSet) -> bool {
    a.is_subset_of(&state.dissonant_worlds())
}

/// Default (conjunctive) reading of precariousness: some sentence accepted
/// after revising by `a` can be conjoined to `a` so that beliefs are lost,
/// i.e. there is `b` covering the outcome with `revise(a and b)` escaping it.
///
/// Only `b`'s intersection with `a` matters, so the witness search ranges
/// over the sets between the outcome and `a`.
pub fn is_precarious(state: &BeliefState, a: &WorldSet) -> bool {
    let r = revise(state, a).models;
    let mut candidates = between(r.clone(), a);
    candidates.any(|c| !revise(state, &c).models.is_subset_of(&r))
}

/// Disjunctive reading, matching a weakening of `a` instead: some `b`
/// covering the outcome with `revise(a or b)` escaping it. Only `b`'s union
/// with `a` matters, so the witness search ranges over supersets of `a`.
pub fn is_precarious_vee(state: &BeliefState, a: &WorldSet) -> bool {
    let r = revise(state, a).models;
    let mut candidates = between(a.clone(), &WorldSet::full(a.n_atoms()));
    candidates.any(|d| !revise(state, &d).models.is_subset_of(&r))
}

/// All world sets `c` with `low` a subset of `c` a subset of `high`.
fn between(low: WorldSet, high: &WorldSet) -> impl Iterator<Item = WorldSet> {
    let n = low.n_atoms();
    assert!(
        n <= MAX_EXHAUSTIVE_ATOMS,
        "witness enumeration is exponential; limited to {MAX_EXHAUSTIVE_ATOMS} atoms"
    );
    debug_assert!(low.is_subset_of(high));
    let free: Vec<Valuation> = high.difference(&low).iter().collect();
    (0u32..(1 << free.len())).map(move |bits| {
        let mut c = low.clone();
        for (i, v) in free.iter().enumerate() {
            if bits & (1 << i) != 0 {
                c.insert(*v);
            }
        }
        c
    })
}

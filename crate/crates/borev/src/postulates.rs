//! Postulate checking for revision operators treated as black boxes.
//!
//! Sentence-level postulates are decided through fixed model-level
//! equivalences: a theory is its model set, theory inclusion flips to model
//! inclusion, and expanding a theory by a sentence intersects their models.
//! Every operator here is semantically defined, so Closure and
//! Extensionality hold by construction and are reported as such; syntactic
//! operators that could break them are out of scope. A slower oracle that
//! quantifies over all candidate consequences stays available for auditing
//! the closed forms.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::logic::{canonical_formula, AtomTable, WorldSet, MAX_EXHAUSTIVE_ATOMS};
use crate::npr::{cl_revise, npr_revise, ClStructure, NprState};
use crate::revision::{revise, BeliefState};

/// Mask sampling draws one u64 per world set, so six atoms is the ceiling.
const MAX_SAMPLED_ATOMS: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PostulateError {
    #[error("exhaustive postulate checking needs at most {MAX_EXHAUSTIVE_ATOMS} atoms, got {n}")]
    TooManyAtoms { n: usize },
    #[error("sampled postulate checking needs at most {MAX_SAMPLED_ATOMS} atoms, got {n}")]
    TooManyAtomsForSampling { n: usize },
}

/// The postulates this artifact can decide, each with a fixed arity and a
/// model-level predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PostulateId {
    Tautology,
    Closure,
    Success,
    RelativeSuccess,
    Inclusion,
    Vacuity,
    Extensionality,
    Consistency,
    RelativeConsistency,
    DisjunctiveOverlap,
    Subexpansion,
    Superexpansion,
    DisjunctiveRationality,
    ConsistentCautiousMonotony,
    DisjunctiveMonotony,
    P11,
    P12,
    P12Plus,
    P13,
    P14,
    EndogenousInclusion,
    PositiveVacuity,
}

impl PostulateId {
    pub const ALL: [PostulateId; 22] = [
        PostulateId::Tautology,
        PostulateId::Closure,
        PostulateId::Success,
        PostulateId::RelativeSuccess,
        PostulateId::Inclusion,
        PostulateId::Vacuity,
        PostulateId::Extensionality,
        PostulateId::Consistency,
        PostulateId::RelativeConsistency,
        PostulateId::DisjunctiveOverlap,
        PostulateId::Subexpansion,
        PostulateId::Superexpansion,
        PostulateId::DisjunctiveRationality,
        PostulateId::ConsistentCautiousMonotony,
        PostulateId::DisjunctiveMonotony,
        PostulateId::P11,
        PostulateId::P12,
        PostulateId::P12Plus,
        PostulateId::P13,
        PostulateId::P14,
        PostulateId::EndogenousInclusion,
        PostulateId::PositiveVacuity,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PostulateId::Tautology => "P0",
            PostulateId::Closure => "P1",
            PostulateId::Success => "P2",
            PostulateId::RelativeSuccess => "P2'",
            PostulateId::Inclusion => "P3",
            PostulateId::Vacuity => "P4",
            PostulateId::Extensionality => "P5",
            PostulateId::Consistency => "P6",
            PostulateId::RelativeConsistency => "P6'",
            PostulateId::DisjunctiveOverlap => "P7",
            PostulateId::Subexpansion => "P8",
            PostulateId::Superexpansion => "Superexpansion",
            PostulateId::DisjunctiveRationality => "P9",
            PostulateId::ConsistentCautiousMonotony => "P10",
            PostulateId::DisjunctiveMonotony => "DM",
            PostulateId::P11 => "P11",
            PostulateId::P12 => "P12",
            PostulateId::P12Plus => "P12+",
            PostulateId::P13 => "P13",
            PostulateId::P14 => "P14",
            PostulateId::EndogenousInclusion => "EndogenousInclusion",
            PostulateId::PositiveVacuity => "PositiveVacuity",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PostulateId::Tautology => "Tautology",
            PostulateId::Closure => "Closure",
            PostulateId::Success => "Success",
            PostulateId::RelativeSuccess => "Relative Success",
            PostulateId::Inclusion => "Inclusion",
            PostulateId::Vacuity => "Vacuity",
            PostulateId::Extensionality => "Extensionality",
            PostulateId::Consistency => "Consistency",
            PostulateId::RelativeConsistency => "Relative Consistency",
            PostulateId::DisjunctiveOverlap => "Disjunctive Overlap",
            PostulateId::Subexpansion => "Subexpansion",
            PostulateId::Superexpansion => "Superexpansion",
            PostulateId::DisjunctiveRationality => "Disjunctive Rationality",
            PostulateId::ConsistentCautiousMonotony => "Consistent Cautious Monotony",
            PostulateId::DisjunctiveMonotony => "Disjunctive Monotony",
            PostulateId::P11 => "P11",
            PostulateId::P12 => "P12",
            PostulateId::P12Plus => "P12+",
            PostulateId::P13 => "P13",
            PostulateId::P14 => "P14",
            PostulateId::EndogenousInclusion => "Endogenous Inclusion",
            PostulateId::PositiveVacuity => "Positive Vacuity",
        }
    }

    /// Number of sentence variables the predicate ranges over.
    pub fn arity(self) -> usize {
        match self {
            PostulateId::Tautology | PostulateId::Closure | PostulateId::Extensionality => 0,
            PostulateId::Success
            | PostulateId::RelativeSuccess
            | PostulateId::Inclusion
            | PostulateId::Vacuity
            | PostulateId::Consistency
            | PostulateId::RelativeConsistency
            | PostulateId::EndogenousInclusion
            | PostulateId::PositiveVacuity => 1,
            _ => 2,
        }
    }

    fn by_construction(self) -> bool {
        matches!(self, PostulateId::Closure | PostulateId::Extensionality)
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for PostulateId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| !matches!(c, ' ' | '-' | '_')).collect();
        let key = key.to_ascii_lowercase();
        PostulateId::ALL
            .into_iter()
            .find(|id| {
                let code = id.code().to_ascii_lowercase();
                let name: String = id
                    .name()
                    .chars()
                    .filter(|c| !matches!(c, ' ' | '-' | '_'))
                    .collect::<String>()
                    .to_ascii_lowercase();
                key == code || key == name
            })
            .ok_or_else(|| format!("unknown postulate: {s}"))
    }
}

/// A black-box operator: the prior belief models plus the map from input
/// models to outcome models. `eval` must be pure; checks may replay it
/// freely on any class.
pub struct OperatorUnderTest {
    k_models: WorldSet,
    eval: Box<dyn Fn(&WorldSet) -> WorldSet + Send + Sync>,
}

impl fmt::Debug for OperatorUnderTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorUnderTest")
            .field("k_models", &self.k_models)
            .finish_non_exhaustive()
    }
}

impl OperatorUnderTest {
    pub fn from_fn(
        k_models: WorldSet,
        eval: impl Fn(&WorldSet) -> WorldSet + Send + Sync + 'static,
    ) -> Self {
        OperatorUnderTest { k_models, eval: Box::new(eval) }
    }

    pub fn from_revision(state: &BeliefState) -> Self {
        let k = state.belief_models().clone();
        let s = state.clone();
        OperatorUnderTest::from_fn(k, move |a| revise(&s, a).models)
    }

    pub fn from_npr(state: &NprState) -> Self {
        let k = state.base().belief_models().clone();
        let s = state.clone();
        OperatorUnderTest::from_fn(k, move |a| npr_revise(&s, a))
    }

    pub fn from_cl(cl: &ClStructure) -> Self {
        let k = cl.star().belief_models().clone();
        let c = cl.clone();
        OperatorUnderTest::from_fn(k, move |a| cl_revise(&c, a))
    }

    pub fn n_atoms(&self) -> usize {
        self.k_models.n_atoms()
    }

    pub fn k_models(&self) -> &WorldSet {
        &self.k_models
    }

    pub fn eval(&self, a: &WorldSet) -> WorldSet {
        assert_eq!(a.n_atoms(), self.n_atoms(), "class over a different atom count");
        (self.eval)(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    HoldsByConstruction,
    NotApplicable,
}

impl Verdict {
    pub fn ok(self) -> bool {
        !matches!(self, Verdict::Fails)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HoldsByConstruction => "holds-by-construction",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// The violating tuple plus the two sides of the comparison that broke.
/// For disjunctive consequents the sides come from the first disjunct; for
/// oracle reports `rhs_models` is the class of the distinguishing sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub alpha: WorldSet,
    pub beta: Option<WorldSet>,
    pub lhs_models: WorldSet,
    pub rhs_models: WorldSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub postulate: PostulateId,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub coverage: Coverage,
}

impl CheckReport {
    pub fn to_json(&self, table: &AtomTable) -> serde_json::Value {
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "alpha": canonical_formula(&w.alpha, table).display(table).to_string(),
                "beta": w
                    .beta
                    .as_ref()
                    .map(|b| canonical_formula(b, table).display(table).to_string()),
                "lhs_models": w.lhs_models.bitstrings(),
                "rhs_models": w.rhs_models.bitstrings(),
            })
        });
        let coverage = match self.coverage {
            Coverage::Exhaustive => json!("exhaustive"),
            Coverage::Sampled { seed, count } => json!({ "seed": seed, "count": count }),
        };
        json!({
            "postulate": self.postulate.code(),
            "verdict": self.verdict.label(),
            "witness": witness,
            "coverage": coverage,
        })
    }
}

/// Postulate suites pinned to the characterisation results for each
/// operator class, plus the classical benchmark set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Agm,
    Iob,
    Bob,
    Ztbob,
    Tbob,
    BobNpr,
    ZtbobNpr,
    TbobNpr,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Agm,
        Suite::Iob,
        Suite::Bob,
        Suite::Ztbob,
        Suite::Tbob,
        Suite::BobNpr,
        Suite::ZtbobNpr,
        Suite::TbobNpr,
    ];

    pub fn postulates(self) -> &'static [PostulateId] {
        use PostulateId::*;
        match self {
            Suite::Agm => &[
                Tautology,
                Closure,
                Success,
                Inclusion,
                Vacuity,
                Extensionality,
                Consistency,
                DisjunctiveOverlap,
                Subexpansion,
            ],
            Suite::Iob => &[
                Tautology,
                Closure,
                Success,
                Inclusion,
                Extensionality,
                Consistency,
                DisjunctiveOverlap,
                DisjunctiveRationality,
            ],
            Suite::Bob => &[
                Tautology,
                Closure,
                Success,
                Inclusion,
                Extensionality,
                DisjunctiveOverlap,
                DisjunctiveRationality,
            ],
            Suite::Ztbob => &[
                Tautology,
                Closure,
                Success,
                Inclusion,
                Extensionality,
                DisjunctiveOverlap,
                DisjunctiveRationality,
                ConsistentCautiousMonotony,
            ],
            Suite::Tbob => &[
                Tautology,
                Closure,
                Success,
                Inclusion,
                Extensionality,
                DisjunctiveOverlap,
                DisjunctiveRationality,
                Subexpansion,
            ],
            Suite::BobNpr => &[
                Tautology,
                Closure,
                RelativeSuccess,
                Inclusion,
                Extensionality,
                Consistency,
                DisjunctiveOverlap,
                P11,
                P12,
                P13,
            ],
            Suite::ZtbobNpr => &[
                Tautology,
                Closure,
                RelativeSuccess,
                Inclusion,
                Extensionality,
                Consistency,
                DisjunctiveOverlap,
                DisjunctiveRationality,
                P11,
                P12Plus,
            ],
            Suite::TbobNpr => &[
                Tautology,
                Closure,
                RelativeSuccess,
                Inclusion,
                Extensionality,
                Consistency,
                DisjunctiveOverlap,
                DisjunctiveRationality,
                P11,
                P12Plus,
                DisjunctiveMonotony,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Agm => "AGM",
            Suite::Iob => "IOB",
            Suite::Bob => "BOB",
            Suite::Ztbob => "ZTBOB",
            Suite::Tbob => "TBOB",
            Suite::BobNpr => "BOB-NPR",
            Suite::ZtbobNpr => "ZTBOB-NPR",
            Suite::TbobNpr => "TBOB-NPR",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().to_ascii_lowercase() == key)
            .ok_or_else(|| format!("unknown suite: {s}"))
    }
}

/// Evaluation context; exhaustive runs tabulate the operator once.
struct Ctx<'a> {
    op: &'a OperatorUnderTest,
    memo: Option<Vec<WorldSet>>,
}

impl<'a> Ctx<'a> {
    fn new(op: &'a OperatorUnderTest, memoize: bool) -> Self {
        let memo = memoize.then(|| {
            let n = op.n_atoms();
            (0..class_count(n)).map(|mask| op.eval(&WorldSet::from_mask(n, mask))).collect()
        });
        Ctx { op, memo }
    }

    fn m(&self, a: &WorldSet) -> WorldSet {
        match &self.memo {
            Some(t) => t[a.mask() as usize].clone(),
            None => self.op.eval(a),
        }
    }

    fn k(&self) -> &WorldSet {
        &self.op.k_models
    }
}

fn class_count(n: usize) -> u64 {
    assert!(n <= MAX_EXHAUSTIVE_ATOMS);
    1u64 << (1usize << n)
}

fn class_iter(n: usize) -> impl Iterator<Item = WorldSet> {
    (0..class_count(n)).map(move |mask| WorldSet::from_mask(n, mask))
}

fn p12_antecedent(ctx: &Ctx<'_>, a: &WorldSet, b: &WorldSet) -> bool {
    let u = a.union(b);
    ctx.m(&u).is_subset_of(&u) && !ctx.m(b).is_subset_of(b)
}

/// Evaluate the model-level predicate on one tuple. `None` means the tuple
/// satisfies the postulate; `Some` carries the two violated sides.
fn violation(
    ctx: &Ctx<'_>,
    id: PostulateId,
    a: &WorldSet,
    b: &WorldSet,
) -> Option<(WorldSet, WorldSet)> {
    use PostulateId::*;
    let k = ctx.k();
    match id {
        Closure | Extensionality => None,
        Tautology => {
            let lhs = ctx.m(&WorldSet::full(ctx.op.n_atoms()));
            (lhs != *k).then(|| (lhs, k.clone()))
        }
        Success => {
            let ma = ctx.m(a);
            (!ma.is_subset_of(a)).then(|| (ma, a.clone()))
        }
        RelativeSuccess => {
            let ma = ctx.m(a);
            (!ma.is_subset_of(a) && ma != *k).then(|| (ma, a.clone()))
        }
        Inclusion => {
            let ka = k.intersection(a);
            let ma = ctx.m(a);
            (!ka.is_subset_of(&ma)).then_some((ka, ma))
        }
        Vacuity => {
            let ka = k.intersection(a);
            if ka.is_empty() {
                return None;
            }
            let ma = ctx.m(a);
            (!ma.is_subset_of(&ka)).then_some((ma, ka))
        }
        Consistency => {
            if a.is_empty() {
                return None;
            }
            let ma = ctx.m(a);
            ma.is_empty().then(|| (ma, a.clone()))
        }
        RelativeConsistency => {
            if !k.is_subset_of(a) {
                return None;
            }
            let ma = ctx.m(a);
            ma.is_empty().then(|| (ma, a.clone()))
        }
        DisjunctiveOverlap => {
            let lhs = ctx.m(&a.union(b));
            let rhs = ctx.m(a).union(&ctx.m(b));
            (!lhs.is_subset_of(&rhs)).then_some((lhs, rhs))
        }
        Subexpansion => {
            let mba = ctx.m(b).intersection(a);
            if mba.is_empty() {
                return None;
            }
            let lhs = ctx.m(&a.intersection(b));
            (!lhs.is_subset_of(&mba)).then_some((lhs, mba))
        }
        Superexpansion => {
            let lhs = ctx.m(b).intersection(a);
            let rhs = ctx.m(&a.intersection(b));
            (!lhs.is_subset_of(&rhs)).then_some((lhs, rhs))
        }
        DisjunctiveRationality => {
            let mu = ctx.m(&a.union(b));
            let ma = ctx.m(a);
            (!ma.is_subset_of(&mu) && !ctx.m(b).is_subset_of(&mu)).then_some((ma, mu))
        }
        ConsistentCautiousMonotony => {
            let ma = ctx.m(a);
            if ma.is_empty() || !ma.is_subset_of(b) {
                return None;
            }
            let lhs = ctx.m(&a.intersection(b));
            (!lhs.is_subset_of(&ma)).then_some((lhs, ma))
        }
        DisjunctiveMonotony => {
            if !ctx.m(a).intersects(b) {
                return None;
            }
            let lhs = ctx.m(b);
            let rhs = ctx.m(&a.union(b));
            (!lhs.is_subset_of(&rhs)).then_some((lhs, rhs))
        }
        P11 => {
            let u = a.union(b);
            if !ctx.m(&u).is_subset_of(&u) {
                return None;
            }
            let ma = ctx.m(a);
            (!ma.is_subset_of(a) && !ctx.m(b).is_subset_of(b)).then(|| (ma, a.clone()))
        }
        P12 => {
            if !p12_antecedent(ctx, a, b) {
                return None;
            }
            let lhs = ctx.m(&a.union(b));
            let rhs = ctx.m(a);
            (!lhs.is_subset_of(&rhs)).then_some((lhs, rhs))
        }
        P12Plus => {
            if !p12_antecedent(ctx, a, b) {
                return None;
            }
            let lhs = ctx.m(a);
            let rhs = ctx.m(&a.union(b));
            (lhs != rhs).then_some((lhs, rhs))
        }
        P13 => {
            let ma = ctx.m(a);
            let mb = ctx.m(b);
            if !ma.is_subset_of(a) || !mb.is_subset_of(b) {
                return None;
            }
            let mu = ctx.m(&a.union(b));
            (!ma.is_subset_of(&mu) && !mb.is_subset_of(&mu)).then_some((ma, mu))
        }
        P14 => {
            if !ctx.m(a).is_subset_of(a) || !ctx.m(b).is_subset_of(b) {
                return None;
            }
            let u = a.union(b);
            let mu = ctx.m(&u);
            (!mu.is_subset_of(&u)).then_some((mu, u))
        }
        EndogenousInclusion => {
            if !k.is_subset_of(a) {
                return None;
            }
            let ma = ctx.m(a);
            (!k.is_subset_of(&ma)).then(|| (k.clone(), ma))
        }
        PositiveVacuity => {
            if !k.is_subset_of(a) {
                return None;
            }
            let ma = ctx.m(a);
            (!ma.is_subset_of(k)).then(|| (ma, k.clone()))
        }
    }
}

/// Find a candidate consequence separating two theories: its class contains
/// the first theory's models but not the second's.
fn gamma_separating(n: usize, t1: &WorldSet, t2: &WorldSet) -> Option<WorldSet> {
    class_iter(n).find(|g| t1.is_subset_of(g) && !t2.is_subset_of(g))
}

fn gamma_distinguishing(n: usize, t1: &WorldSet, t2: &WorldSet) -> Option<WorldSet> {
    class_iter(n).find(|g| t1.is_subset_of(g) != t2.is_subset_of(g))
}

/// The sentence-level forms, transcribed with an explicit quantifier over
/// candidate consequences wherever the postulate speaks about theory
/// inclusion or equality. On failure the sides are the unentailed theory's
/// models and the distinguishing sentence's class.
fn gamma_violation(
    ctx: &Ctx<'_>,
    id: PostulateId,
    a: &WorldSet,
    b: &WorldSet,
) -> Option<(WorldSet, WorldSet)> {
    use PostulateId::*;
    let n = ctx.op.n_atoms();
    let k = ctx.k();
    match id {
        Closure | Extensionality => None,
        Tautology => {
            let mt = ctx.m(&WorldSet::full(n));
            gamma_distinguishing(n, &mt, k).map(|g| (mt, g))
        }
        Success | RelativeConsistency | Consistency | P11 | P14 => violation(ctx, id, a, b),
        RelativeSuccess => {
            let ma = ctx.m(a);
            if ma.is_subset_of(a) {
                return None;
            }
            gamma_distinguishing(n, &ma, k).map(|g| (ma, g))
        }
        Inclusion => {
            let ma = ctx.m(a);
            let ka = k.intersection(a);
            gamma_separating(n, &ma, &ka).map(|g| (ka, g))
        }
        Vacuity => {
            let ka = k.intersection(a);
            if ka.is_empty() {
                return None;
            }
            let ma = ctx.m(a);
            gamma_separating(n, &ka, &ma).map(|g| (ma, g))
        }
        DisjunctiveOverlap => {
            let both = ctx.m(a).union(&ctx.m(b));
            let mu = ctx.m(&a.union(b));
            gamma_separating(n, &both, &mu).map(|g| (mu, g))
        }
        Subexpansion => {
            let mba = ctx.m(b).intersection(a);
            if mba.is_empty() {
                return None;
            }
            let lhs = ctx.m(&a.intersection(b));
            gamma_separating(n, &mba, &lhs).map(|g| (lhs, g))
        }
        Superexpansion => {
            let mba = ctx.m(b).intersection(a);
            let mab = ctx.m(&a.intersection(b));
            gamma_separating(n, &mab, &mba).map(|g| (mba, g))
        }
        DisjunctiveRationality => {
            let mu = ctx.m(&a.union(b));
            let ma = ctx.m(a);
            let mb = ctx.m(b);
            class_iter(n)
                .find(|g| mu.is_subset_of(g) && !ma.is_subset_of(g) && !mb.is_subset_of(g))
                .map(|g| (ma, g))
        }
        ConsistentCautiousMonotony => {
            let ma = ctx.m(a);
            if ma.is_empty() || !ma.is_subset_of(b) {
                return None;
            }
            let mab = ctx.m(&a.intersection(b));
            gamma_separating(n, &ma, &mab).map(|g| (mab, g))
        }
        DisjunctiveMonotony => {
            if !ctx.m(a).intersects(b) {
                return None;
            }
            let mu = ctx.m(&a.union(b));
            let mb = ctx.m(b);
            gamma_separating(n, &mu, &mb).map(|g| (mb, g))
        }
        P12 => {
            if !p12_antecedent(ctx, a, b) {
                return None;
            }
            let ma = ctx.m(a);
            let mu = ctx.m(&a.union(b));
            gamma_separating(n, &ma, &mu).map(|g| (mu, g))
        }
        P12Plus => {
            if !p12_antecedent(ctx, a, b) {
                return None;
            }
            let ma = ctx.m(a);
            let mu = ctx.m(&a.union(b));
            gamma_distinguishing(n, &ma, &mu).map(|g| (ma, g))
        }
        P13 => {
            let ma = ctx.m(a);
            let mb = ctx.m(b);
            if !ma.is_subset_of(a) || !mb.is_subset_of(b) {
                return None;
            }
            let mu = ctx.m(&a.union(b));
            class_iter(n)
                .find(|g| mu.is_subset_of(g) && !ma.is_subset_of(g) && !mb.is_subset_of(g))
                .map(|g| (ma, g))
        }
        EndogenousInclusion => {
            if !k.is_subset_of(a) {
                return None;
            }
            let ma = ctx.m(a);
            gamma_separating(n, &ma, k).map(|g| (k.clone(), g))
        }
        PositiveVacuity => {
            if !k.is_subset_of(a) {
                return None;
            }
            let ma = ctx.m(a);
            gamma_separating(n, k, &ma).map(|g| (ma, g))
        }
    }
}

fn sample_mask(rng: &mut ChaCha8Rng, n: usize) -> u64 {
    let bits = 1usize << n;
    if bits >= 64 {
        rng.random::<u64>()
    } else {
        rng.random_range(0..(1u64 << bits))
    }
}

type ViolationFn = fn(&Ctx<'_>, PostulateId, &WorldSet, &WorldSet) -> Option<(WorldSet, WorldSet)>;

fn run_check(
    op: &OperatorUnderTest,
    id: PostulateId,
    mode: CheckMode,
    predicate: ViolationFn,
    memoize: bool,
) -> CheckReport {
    let n = op.n_atoms();
    if id.by_construction() {
        return CheckReport {
            postulate: id,
            verdict: Verdict::HoldsByConstruction,
            witness: None,
            coverage: Coverage::Exhaustive,
        };
    }
    let ctx = Ctx::new(op, memoize);
    let empty = WorldSet::empty(n);

    let mut failure: Option<Witness> = None;
    let mut coverage = Coverage::Exhaustive;
    match (id.arity(), mode) {
        (0, _) => {
            if let Some((lhs, rhs)) = predicate(&ctx, id, &empty, &empty) {
                failure = Some(Witness {
                    alpha: WorldSet::full(n),
                    beta: None,
                    lhs_models: lhs,
                    rhs_models: rhs,
                });
            }
        }
        (arity, CheckMode::Exhaustive) => {
            'outer: for a in class_iter(n) {
                if arity == 1 {
                    if let Some((lhs, rhs)) = predicate(&ctx, id, &a, &empty) {
                        failure = Some(Witness {
                            alpha: a,
                            beta: None,
                            lhs_models: lhs,
                            rhs_models: rhs,
                        });
                        break 'outer;
                    }
                    continue;
                }
                for b in class_iter(n) {
                    if let Some((lhs, rhs)) = predicate(&ctx, id, &a, &b) {
                        failure = Some(Witness {
                            alpha: a,
                            beta: Some(b),
                            lhs_models: lhs,
                            rhs_models: rhs,
                        });
                        break 'outer;
                    }
                }
            }
        }
        (arity, CheckMode::Sampled { seed, count }) => {
            coverage = Coverage::Sampled { seed, count };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(u64, u64, Witness)> = None;
            for _ in 0..count {
                let a = WorldSet::from_mask(n, sample_mask(&mut rng, n));
                let b = if arity == 2 {
                    WorldSet::from_mask(n, sample_mask(&mut rng, n))
                } else {
                    empty.clone()
                };
                if let Some((lhs, rhs)) = predicate(&ctx, id, &a, &b) {
                    let key = (a.mask(), if arity == 2 { b.mask() } else { 0 });
                    if best.as_ref().is_none_or(|(ka, kb, _)| key < (*ka, *kb)) {
                        let witness = Witness {
                            alpha: a,
                            beta: (arity == 2).then_some(b),
                            lhs_models: lhs,
                            rhs_models: rhs,
                        };
                        best = Some((key.0, key.1, witness));
                    }
                }
            }
            failure = best.map(|(_, _, w)| w);
        }
    }

    CheckReport {
        postulate: id,
        verdict: if failure.is_some() { Verdict::Fails } else { Verdict::Holds },
        witness: failure,
        coverage,
    }
}

fn guard(op: &OperatorUnderTest, mode: CheckMode) -> Result<(), PostulateError> {
    let n = op.n_atoms();
    match mode {
        CheckMode::Exhaustive if n > MAX_EXHAUSTIVE_ATOMS => {
            Err(PostulateError::TooManyAtoms { n })
        }
        CheckMode::Sampled { .. } if n > MAX_SAMPLED_ATOMS => {
            Err(PostulateError::TooManyAtomsForSampling { n })
        }
        _ => Ok(()),
    }
}

/// Decide one postulate via its closed model-level form.
pub fn check(
    op: &OperatorUnderTest,
    id: PostulateId,
    mode: CheckMode,
) -> Result<CheckReport, PostulateError> {
    guard(op, mode)?;
    let memoize = matches!(mode, CheckMode::Exhaustive);
    Ok(run_check(op, id, mode, violation, memoize))
}

/// Decide one postulate via the quantified sentence-level transcription.
/// Audit path: slower, enumerates candidate consequences, so it is capped
/// at the exhaustive atom bound in every mode.
pub fn check_via_gamma_oracle(
    op: &OperatorUnderTest,
    id: PostulateId,
    mode: CheckMode,
) -> Result<CheckReport, PostulateError> {
    let n = op.n_atoms();
    if n > MAX_EXHAUSTIVE_ATOMS {
        return Err(PostulateError::TooManyAtoms { n });
    }
    let memoize = matches!(mode, CheckMode::Exhaustive);
    Ok(run_check(op, id, mode, gamma_violation, memoize))
}

/// One report per postulate in the suite.
pub fn check_suite(
    op: &OperatorUnderTest,
    suite: Suite,
    mode: CheckMode,
) -> Result<Vec<CheckReport>, PostulateError> {
    suite.postulates().iter().map(|id| check(op, *id, mode)).collect()
}

/// Replay a tuple against the model-level predicate; true means it
/// violates. Every failing report's witness must replay to true.
pub fn violates(
    op: &OperatorUnderTest,
    id: PostulateId,
    alpha: &WorldSet,
    beta: Option<&WorldSet>,
) -> bool {
    if id.arity() == 2 {
        assert!(beta.is_some(), "{} relates two sentences", id.code());
    }
    let ctx = Ctx::new(op, false);
    let empty = WorldSet::empty(op.n_atoms());
    violation(&ctx, id, alpha, beta.unwrap_or(&empty)).is_some()
}

/// Relationships between postulates that the theory predicts; checked
/// empirically on one operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedRule {
    P7ImpliesP14,
    DmEquivP8UnderTbob,
}

/// Confirm a derived rule on `op`. For the implication the report carries
/// the consequent's id and is not applicable when the antecedent already
/// fails; for the equivalence it carries the Disjunctive Monotony id and
/// fails only if the two verdicts diverge.
pub fn derived_rule_check(
    op: &OperatorUnderTest,
    rule: DerivedRule,
    mode: CheckMode,
) -> Result<CheckReport, PostulateError> {
    match rule {
        DerivedRule::P7ImpliesP14 => {
            let p7 = check(op, PostulateId::DisjunctiveOverlap, mode)?;
            if p7.verdict == Verdict::Fails {
                return Ok(CheckReport {
                    postulate: PostulateId::P14,
                    verdict: Verdict::NotApplicable,
                    witness: None,
                    coverage: p7.coverage,
                });
            }
            check(op, PostulateId::P14, mode)
        }
        DerivedRule::DmEquivP8UnderTbob => {
            let dm = check(op, PostulateId::DisjunctiveMonotony, mode)?;
            let p8 = check(op, PostulateId::Subexpansion, mode)?;
            let agree = dm.verdict == p8.verdict;
            Ok(CheckReport {
                postulate: PostulateId::DisjunctiveMonotony,
                verdict: if agree { Verdict::Holds } else { Verdict::Fails },
                witness: if agree {
                    None
                } else {
                    dm.witness.or(p8.witness)
                },
                coverage: dm.coverage,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::AtomTable;
    use crate::npr::cl_structure_of;
    use crate::orders::{random_interpretation, GenClass, RankedInterpretation};
    use crate::revision::OperatorClass;

    fn pq() -> AtomTable {
        AtomTable::new(["p", "q"]).unwrap()
    }

    fn ws(mask: u64) -> WorldSet {
        WorldSet::from_mask(2, mask)
    }

    fn interval_state() -> BeliefState {
        let interp = RankedInterpretation::from_pairs(
            &pq(),
            [("11", 0, 1), ("10", 2, 3), ("01", 1, 1), ("00", 0, 3)],
        )
        .unwrap();
        BeliefState::new(interp, OperatorClass::Iob).unwrap()
    }

    fn biorder_state() -> BeliefState {
        let interp = RankedInterpretation::from_pairs(
            &pq(),
            [("11", 2, 3), ("10", 3, 1), ("01", 4, 0), ("00", 0, 4)],
        )
        .unwrap();
        BeliefState::new(interp, OperatorClass::Bob).unwrap()
    }

    fn ccm_failure_state() -> BeliefState {
        let interp = RankedInterpretation::from_pairs(
            &pq(),
            [("11", 0, 2), ("10", 1, 1), ("01", 2, 0), ("00", 0, 0)],
        )
        .unwrap();
        BeliefState::new(interp, OperatorClass::Bob).unwrap()
    }

    fn random_state(class: GenClass, tag: OperatorClass, seed: u64) -> BeliefState {
        let anchor = ws((seed % 15) + 1);
        let interp = random_interpretation(2, &anchor, class, 3, seed).unwrap();
        BeliefState::new(interp, tag).unwrap()
    }

    #[test]
    fn vacuity_failure_on_the_interval_example() {
        let op = OperatorUnderTest::from_revision(&interval_state());
        let report = check(&op, PostulateId::Vacuity, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let w = report.witness.unwrap();
        assert_eq!(w.alpha, ws(3));
        assert_eq!(w.beta, None);
        assert_eq!(w.lhs_models, ws(3));
        assert_eq!(w.rhs_models, ws(1));
    }

    #[test]
    fn subexpansion_failure_on_the_interval_example() {
        let op = OperatorUnderTest::from_revision(&interval_state());
        let report = check(&op, PostulateId::Subexpansion, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let w = report.witness.unwrap();
        assert_eq!((w.alpha.mask(), w.beta.unwrap().mask()), (3, 7));
        // The classic witness pair, revising by not-q against a tautology,
        // violates the same postulate even though an earlier pair exists.
        assert!(violates(&op, PostulateId::Subexpansion, &ws(3), Some(&ws(15))));
    }

    #[test]
    fn consistency_failure_on_the_biorder_example() {
        let op = OperatorUnderTest::from_revision(&biorder_state());
        let report = check(&op, PostulateId::Consistency, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let w = report.witness.unwrap();
        assert_eq!(w.alpha, ws(2));
        assert!(w.lhs_models.is_empty());
        // The headline dissonant input is a violation too.
        assert!(violates(&op, PostulateId::Consistency, &ws(10), None));
    }

    #[test]
    fn ccm_failure_witness_is_the_documented_pair() {
        let op = OperatorUnderTest::from_revision(&ccm_failure_state());
        let report =
            check(&op, PostulateId::ConsistentCautiousMonotony, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let w = report.witness.unwrap();
        assert_eq!((w.alpha.mask(), w.beta.unwrap().mask()), (14, 10));
    }

    #[test]
    fn npr_p12_plus_failure_witness() {
        let op = OperatorUnderTest::from_npr(&NprState::new(ccm_failure_state()));
        let report = check(&op, PostulateId::P12Plus, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let w = report.witness.unwrap();
        assert_eq!((w.alpha.mask(), w.beta.unwrap().mask()), (10, 4));
        // The weaker inclusion form still holds here.
        let p12 = check(&op, PostulateId::P12, CheckMode::Exhaustive).unwrap();
        assert_eq!(p12.verdict, Verdict::Holds);
    }

    #[test]
    fn positive_vacuity_failure_on_the_biorder_example() {
        let op = OperatorUnderTest::from_revision(&biorder_state());
        let report = check(&op, PostulateId::PositiveVacuity, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.witness.unwrap().alpha, ws(9));
    }

    #[test]
    fn success_holds_for_revision_backed_operators() {
        for seed in 0..10u64 {
            let op = OperatorUnderTest::from_revision(&random_state(
                GenClass::Biorder,
                OperatorClass::Bob,
                seed,
            ));
            let report = check(&op, PostulateId::Success, CheckMode::Exhaustive).unwrap();
            assert_eq!(report.verdict, Verdict::Holds, "seed {seed}");
        }
    }

    #[test]
    fn agm_suite_flags_exactly_vacuity_consistency_subexpansion_on_the_biorder_example() {
        let op = OperatorUnderTest::from_revision(&biorder_state());
        let reports = check_suite(&op, Suite::Agm, CheckMode::Exhaustive).unwrap();
        let failed: Vec<&str> =
            reports.iter().filter(|r| !r.verdict.ok()).map(|r| r.postulate.code()).collect();
        assert_eq!(failed, ["P4", "P6", "P8"]);
    }

    #[test]
    fn bob_suite_passes_on_the_biorder_example() {
        let op = OperatorUnderTest::from_revision(&biorder_state());
        let reports = check_suite(&op, Suite::Bob, CheckMode::Exhaustive).unwrap();
        assert!(reports.iter().all(|r| r.verdict.ok()));
    }

    #[test]
    fn interval_example_fails_agm_consistency_nowhere() {
        let op = OperatorUnderTest::from_revision(&interval_state());
        let reports = check_suite(&op, Suite::Iob, CheckMode::Exhaustive).unwrap();
        assert!(reports.iter().all(|r| r.verdict.ok()));
    }

    #[test]
    fn class_suites_hold_on_random_states() {
        let plans = [
            (GenClass::Interval, OperatorClass::Iob, Suite::Iob),
            (GenClass::Biorder, OperatorClass::Bob, Suite::Bob),
            (GenClass::ZTransitive, OperatorClass::Ztbob, Suite::Ztbob),
            (GenClass::Transitive, OperatorClass::Tbob, Suite::Tbob),
        ];
        for (class, tag, suite) in plans {
            for seed in 0..12u64 {
                let state = random_state(class, tag, 1000 + seed);
                let op = OperatorUnderTest::from_revision(&state);
                let reports = check_suite(&op, suite, CheckMode::Exhaustive).unwrap();
                for r in &reports {
                    assert!(r.verdict.ok(), "{suite} {} seed {seed}", r.postulate.code());
                }
            }
        }
    }

    #[test]
    fn npr_suites_hold_on_random_states() {
        let plans = [
            (GenClass::Biorder, OperatorClass::Bob, Suite::BobNpr),
            (GenClass::ZTransitive, OperatorClass::Ztbob, Suite::ZtbobNpr),
            (GenClass::Transitive, OperatorClass::Tbob, Suite::TbobNpr),
        ];
        for (class, tag, suite) in plans {
            for seed in 0..12u64 {
                let state = NprState::new(random_state(class, tag, 2000 + seed));
                let op = OperatorUnderTest::from_npr(&state);
                let reports = check_suite(&op, suite, CheckMode::Exhaustive).unwrap();
                for r in &reports {
                    assert!(r.verdict.ok(), "{suite} {} seed {seed}", r.postulate.code());
                }
            }
        }
    }

    #[test]
    fn stronger_classes_pass_weaker_suites() {
        for seed in 0..10u64 {
            let zt = OperatorUnderTest::from_revision(&random_state(
                GenClass::ZTransitive,
                OperatorClass::Ztbob,
                3000 + seed,
            ));
            let tb = OperatorUnderTest::from_revision(&random_state(
                GenClass::Transitive,
                OperatorClass::Tbob,
                4000 + seed,
            ));
            let io = OperatorUnderTest::from_revision(&random_state(
                GenClass::Interval,
                OperatorClass::Iob,
                5000 + seed,
            ));
            for (op, suite) in [(&zt, Suite::Bob), (&tb, Suite::Ztbob), (&io, Suite::Bob)] {
                let reports = check_suite(op, suite, CheckMode::Exhaustive).unwrap();
                assert!(reports.iter().all(|r| r.verdict.ok()), "seed {seed} {suite}");
            }
        }
    }

    #[test]
    fn gamma_oracle_agrees_with_closed_forms() {
        let states = [interval_state(), biorder_state(), ccm_failure_state()];
        let mut ops: Vec<OperatorUnderTest> = Vec::new();
        for s in &states {
            ops.push(OperatorUnderTest::from_revision(s));
            ops.push(OperatorUnderTest::from_npr(&NprState::new(s.clone())));
        }
        for seed in [11u64, 12, 13] {
            ops.push(OperatorUnderTest::from_revision(&random_state(
                GenClass::Biorder,
                OperatorClass::Bob,
                seed,
            )));
        }
        for op in &ops {
            for id in PostulateId::ALL {
                let closed = check(op, id, CheckMode::Exhaustive).unwrap();
                let oracle = check_via_gamma_oracle(op, id, CheckMode::Exhaustive).unwrap();
                assert_eq!(closed.verdict, oracle.verdict, "{}", id.code());
                let tuple = |r: &CheckReport| {
                    r.witness.as_ref().map(|w| (w.alpha.mask(), w.beta.as_ref().map(|b| b.mask())))
                };
                assert_eq!(tuple(&closed), tuple(&oracle), "{}", id.code());
            }
        }
    }

    #[test]
    fn failing_witnesses_replay_as_violations() {
        let ops = [
            OperatorUnderTest::from_revision(&interval_state()),
            OperatorUnderTest::from_revision(&biorder_state()),
            OperatorUnderTest::from_npr(&NprState::new(ccm_failure_state())),
        ];
        for op in &ops {
            for id in PostulateId::ALL {
                let report = check(op, id, CheckMode::Exhaustive).unwrap();
                if let Some(w) = &report.witness {
                    assert!(report.verdict == Verdict::Fails);
                    assert!(violates(op, id, &w.alpha, w.beta.as_ref()), "{}", id.code());
                }
            }
        }
    }

    #[test]
    fn sampled_mode_is_reproducible_and_sound() {
        let op = OperatorUnderTest::from_revision(&interval_state());
        let mode = CheckMode::Sampled { seed: 7, count: 300 };
        let first = check(&op, PostulateId::Vacuity, mode).unwrap();
        let second = check(&op, PostulateId::Vacuity, mode).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.coverage, Coverage::Sampled { seed: 7, count: 300 });
        // With that many draws over 16 classes the failing class appears.
        assert_eq!(first.verdict, Verdict::Fails);
        if let Some(w) = &first.witness {
            assert!(violates(&op, PostulateId::Vacuity, &w.alpha, None));
        }
    }

    #[test]
    fn closure_and_extensionality_hold_by_construction() {
        let op = OperatorUnderTest::from_revision(&biorder_state());
        for id in [PostulateId::Closure, PostulateId::Extensionality] {
            let report = check(&op, id, CheckMode::Exhaustive).unwrap();
            assert_eq!(report.verdict, Verdict::HoldsByConstruction);
            assert!(report.witness.is_none());
        }
    }

    #[test]
    fn derived_implication_confirmed_or_inapplicable() {
        let op = OperatorUnderTest::from_revision(&biorder_state());
        let report = derived_rule_check(&op, DerivedRule::P7ImpliesP14, CheckMode::Exhaustive)
            .unwrap();
        assert_eq!(report.postulate, PostulateId::P14);
        assert_eq!(report.verdict, Verdict::Holds);

        // A garbage operator that shifts every class fails the antecedent.
        let shifty = OperatorUnderTest::from_fn(ws(1), |a| ws((a.mask() + 1) % 16));
        let p7 = check(&shifty, PostulateId::DisjunctiveOverlap, CheckMode::Exhaustive).unwrap();
        assert_eq!(p7.verdict, Verdict::Fails);
        let report =
            derived_rule_check(&shifty, DerivedRule::P7ImpliesP14, CheckMode::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn subexpansion_and_disjunctive_monotony_agree_on_transitive_states() {
        for seed in 0..10u64 {
            let state = random_state(GenClass::Transitive, OperatorClass::Tbob, 6000 + seed);
            let op = OperatorUnderTest::from_revision(&state);
            let report =
                derived_rule_check(&op, DerivedRule::DmEquivP8UnderTbob, CheckMode::Exhaustive)
                    .unwrap();
            assert_eq!(report.verdict, Verdict::Holds, "seed {seed}");
        }
    }

    #[test]
    fn cl_operators_check_like_their_npr_sources() {
        for seed in 0..8u64 {
            let s = NprState::new(random_state(GenClass::ZTransitive, OperatorClass::Ztbob, seed));
            let cl = cl_structure_of(&s).unwrap();
            let direct = OperatorUnderTest::from_npr(&s);
            let factored = OperatorUnderTest::from_cl(&cl);
            for suite in [Suite::ZtbobNpr, Suite::BobNpr] {
                let a = check_suite(&direct, suite, CheckMode::Exhaustive).unwrap();
                let b = check_suite(&factored, suite, CheckMode::Exhaustive).unwrap();
                assert_eq!(a, b, "seed {seed}");
            }
        }
    }

    #[test]
    fn report_serialises_to_the_documented_shape() {
        let op = OperatorUnderTest::from_revision(&interval_state());
        let report = check(&op, PostulateId::Vacuity, CheckMode::Exhaustive).unwrap();
        let j = report.to_json(&pq());
        assert_eq!(j["postulate"], "P4");
        assert_eq!(j["verdict"], "fails");
        assert_eq!(j["coverage"], "exhaustive");
        assert!(j["witness"]["alpha"].is_string());
        assert!(j["witness"]["beta"].is_null());
        assert_eq!(j["witness"]["lhs_models"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn suite_contents_are_pinned() {
        use PostulateId::*;
        assert_eq!(
            Suite::Iob.postulates(),
            [
                Tautology,
                Closure,
                Success,
                Inclusion,
                Extensionality,
                Consistency,
                DisjunctiveOverlap,
                DisjunctiveRationality
            ]
        );
        assert_eq!(
            Suite::Bob.postulates(),
            Suite::Iob
                .postulates()
                .iter()
                .copied()
                .filter(|p| *p != Consistency)
                .collect::<Vec<_>>()
        );
        assert_eq!(
            Suite::Ztbob.postulates().last(),
            Some(&ConsistentCautiousMonotony)
        );
        assert_eq!(Suite::Tbob.postulates().last(), Some(&Subexpansion));
        assert_eq!(Suite::BobNpr.postulates().len(), 10);
        assert_eq!(Suite::ZtbobNpr.postulates().len(), 10);
        assert_eq!(Suite::TbobNpr.postulates().len(), 11);
        assert_eq!(Suite::TbobNpr.postulates().last(), Some(&DisjunctiveMonotony));
    }

    #[test]
    fn parsing_round_trips() {
        for id in PostulateId::ALL {
            assert_eq!(id.code().parse::<PostulateId>().unwrap(), id);
            assert_eq!(id.name().parse::<PostulateId>().unwrap(), id);
        }
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert_eq!("ztbob-npr".parse::<Suite>().unwrap(), Suite::ZtbobNpr);
        assert!("P99".parse::<PostulateId>().is_err());
    }

    #[test]
    fn exhaustive_guard_rejects_wide_operators() {
        let op = OperatorUnderTest::from_fn(WorldSet::full(4), |a| a.clone());
        assert_eq!(
            check(&op, PostulateId::Success, CheckMode::Exhaustive).unwrap_err(),
            PostulateError::TooManyAtoms { n: 4 }
        );
        // Sampling still works there.
        let report =
            check(&op, PostulateId::Success, CheckMode::Sampled { seed: 1, count: 50 }).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }
}

//! Non-prioritised revision, credible sets and credibility-limited structures.
//!
//! The non-prioritised operator keeps the old beliefs whenever prioritised
//! revision would go inconsistent. The inputs it does incorporate form its
//! credible set; pairing a well-behaved revision operator with a credible
//! set gives a credibility-limited structure, and for z-transitive bases the
//! interval-order rewrite factors the non-prioritised operator through such
//! a structure exactly.

use crate::logic::{WorldSet, MAX_EXHAUSTIVE_ATOMS};
use crate::orders::interpretation_of;
use crate::revision::{is_destabilising, revise, BeliefState, OperatorClass};
use thiserror::Error;

/// Errors from credible-set extraction and structure building.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NprError {
    #[error("exhaustive enumeration over sentence classes needs at most {MAX_EXHAUSTIVE_ATOMS} atoms, got {n}")]
    TooManyAtoms { n: usize },
    #[error("credibility-limited factoring needs a z-transitive base: {detail}")]
    UnsupportedBase { detail: String },
    #[error("structure validation failed: {0}")]
    Invalid(String),
}

/// A belief state used non-prioritised: same data, different operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NprState {
    base: BeliefState,
}

impl NprState {
    pub fn new(base: BeliefState) -> Self {
        NprState { base }
    }

    pub fn base(&self) -> &BeliefState {
        &self.base
    }

    pub fn n_atoms(&self) -> usize {
        self.base.n_atoms()
    }
}

/// Non-prioritised revision: the prioritised outcome when consistent, the
/// old beliefs otherwise. Never empty.
pub fn npr_revise(s: &NprState, a: &WorldSet) -> WorldSet {
    let outcome = revise(&s.base, a);
    if outcome.consistent() {
        outcome.models
    } else {
        s.base.belief_models().clone()
    }
}

/// Does the operator actually incorporate `a`? Holds exactly when the
/// prioritised outcome is consistent, i.e. the non-prioritised outcome
/// entails the input.
pub fn is_credible(s: &NprState, a: &WorldSet) -> bool {
    !is_destabilising(&s.base, a)
}

/// The credible sentence classes of one state, stored extensionally (one
/// flag per class, indexed by world-set mask).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CredibleSet {
    n_atoms: u8,
    members: Vec<bool>,
}

impl CredibleSet {
    /// `members` is indexed by class mask and must cover all `2^2^n` classes.
    pub fn new(n_atoms: usize, members: Vec<bool>) -> Result<Self, NprError> {
        if n_atoms > MAX_EXHAUSTIVE_ATOMS {
            return Err(NprError::TooManyAtoms { n: n_atoms });
        }
        let expected = 1usize << (1usize << n_atoms);
        if members.len() != expected {
            return Err(NprError::Invalid(format!(
                "a credible set over {n_atoms} atoms needs {expected} class flags, got {}",
                members.len()
            )));
        }
        Ok(CredibleSet { n_atoms: n_atoms as u8, members })
    }

    /// Every nonempty class; the maximal credible set.
    pub fn all_nonempty(n_atoms: usize) -> Self {
        let expected = 1usize << (1usize << n_atoms);
        let mut members = vec![true; expected];
        members[0] = false;
        CredibleSet { n_atoms: n_atoms as u8, members }
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms as usize
    }

    pub fn contains(&self, a: &WorldSet) -> bool {
        assert_eq!(a.n_atoms(), self.n_atoms as usize);
        self.members[a.mask() as usize]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|m| **m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Member classes in ascending mask order.
    pub fn members(&self) -> impl Iterator<Item = WorldSet> + '_ {
        let n = self.n_atoms as usize;
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| **m)
            .map(move |(mask, _)| WorldSet::from_mask(n, mask as u64))
    }
}

/// Enumerate the credible classes of `s`.
pub fn credible_set(s: &NprState) -> Result<CredibleSet, NprError> {
    let n = s.n_atoms();
    if n > MAX_EXHAUSTIVE_ATOMS {
        return Err(NprError::TooManyAtoms { n });
    }
    let classes = 1usize << (1usize << n);
    let members = (0..classes as u64)
        .map(|mask| is_credible(s, &WorldSet::from_mask(n, mask)))
        .collect();
    Ok(CredibleSet { n_atoms: n as u8, members })
}

/// Outcome of checking one closure condition, with the lexicographically
/// first violating class (pair) when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<(WorldSet, Option<WorldSet>)>,
}

impl ConditionCheck {
    fn pass(name: &'static str) -> Self {
        ConditionCheck { name, holds: true, witness: None }
    }

    fn fail(name: &'static str, a: WorldSet, b: Option<WorldSet>) -> Self {
        ConditionCheck { name, holds: false, witness: Some((a, b)) }
    }
}

/// The closure conditions of a credible set relative to belief models `k`.
/// The first three are what a credibility-limited structure requires; the
/// single-sentence closure check is informational (the framework rejects
/// it), as is the case-split rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CredsetReport {
    /// Everything entailed by the beliefs is credible.
    pub c1: ConditionCheck,
    /// A credible disjunction has a credible disjunct.
    pub c3: ConditionCheck,
    /// Credibility is closed under disjunction.
    pub c4_prime: ConditionCheck,
    /// Credibility is closed under weakening. Deliberately not required.
    pub c4: ConditionCheck,
    /// If both ways of strengthening by a case are credible, so is the
    /// sentence itself.
    pub case_split: ConditionCheck,
}

impl CredsetReport {
    pub fn checks(&self) -> [&ConditionCheck; 5] {
        [&self.c1, &self.c3, &self.c4_prime, &self.c4, &self.case_split]
    }

    /// The conditions a credibility-limited structure demands.
    pub fn required_hold(&self) -> bool {
        self.c1.holds && self.c3.holds && self.c4_prime.holds
    }
}

fn classes(n: usize) -> impl Iterator<Item = WorldSet> {
    (0..(1u64 << (1usize << n))).map(move |mask| WorldSet::from_mask(n, mask))
}

/// Check the closure conditions of `cred` against belief models `k`.
pub fn check_credset(cred: &CredibleSet, k: &WorldSet) -> CredsetReport {
    let n = cred.n_atoms();
    assert_eq!(k.n_atoms(), n);

    let mut c1 = ConditionCheck::pass("C1");
    for a in classes(n) {
        if k.is_subset_of(&a) && !cred.contains(&a) {
            c1 = ConditionCheck::fail("C1", a, None);
            break;
        }
    }

    let mut c3 = ConditionCheck::pass("C3");
    'c3: for a in classes(n) {
        for b in classes(n) {
            if cred.contains(&a.union(&b)) && !cred.contains(&a) && !cred.contains(&b) {
                c3 = ConditionCheck::fail("C3", a, Some(b));
                break 'c3;
            }
        }
    }

    let mut c4_prime = ConditionCheck::pass("C4'");
    'c4p: for a in classes(n) {
        for b in classes(n) {
            if cred.contains(&a) && cred.contains(&b) && !cred.contains(&a.union(&b)) {
                c4_prime = ConditionCheck::fail("C4'", a, Some(b));
                break 'c4p;
            }
        }
    }

    let mut c4 = ConditionCheck::pass("C4");
    'c4: for a in classes(n) {
        for b in classes(n) {
            if cred.contains(&a) && a.is_subset_of(&b) && !cred.contains(&b) {
                c4 = ConditionCheck::fail("C4", a, Some(b));
                break 'c4;
            }
        }
    }

    let mut case_split = ConditionCheck::pass("case-split");
    'split: for a in classes(n) {
        for b in classes(n) {
            let with = b.intersection(&a);
            let without = b.complement().intersection(&a);
            if cred.contains(&with) && cred.contains(&without) && !cred.contains(&a) {
                case_split = ConditionCheck::fail("case-split", a, Some(b));
                break 'split;
            }
        }
    }

    CredsetReport { c1, c3, c4_prime, c4, case_split }
}

/// The joint exceptionality condition tying a revision operator to a
/// credible set: when `a` is credible but strengthening it by `b` is not,
/// revising by `a` must rule `b` out entirely.
pub fn check_joint_condition(star: &BeliefState, cred: &CredibleSet) -> ConditionCheck {
    let n = star.n_atoms();
    assert_eq!(cred.n_atoms(), n);
    for a in classes(n) {
        if !cred.contains(&a) {
            continue;
        }
        for b in classes(n) {
            if !cred.contains(&a.intersection(&b)) && revise(star, &a).models.intersects(&b) {
                return ConditionCheck::fail("joint", a, Some(b));
            }
        }
    }
    ConditionCheck::pass("joint")
}

/// A credibility-limited structure: a revision operator that always succeeds
/// consistently, plus a credible set satisfying the closure conditions and
/// the joint condition. Construction validates all of it and fails loudly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClStructure {
    star: BeliefState,
    cred: CredibleSet,
}

impl ClStructure {
    pub fn new(star: BeliefState, cred: CredibleSet) -> Result<Self, NprError> {
        let n = star.n_atoms();
        if n != cred.n_atoms() {
            return Err(NprError::Invalid(format!(
                "operator is over {n} atoms but the credible set is over {}",
                cred.n_atoms()
            )));
        }
        // Success holds for any rank-backed operator; Consistency needs
        // every world to survive its own revision, i.e. no dissonance.
        let diss = star.dissonant_worlds();
        if let Some(z) = diss.iter().next() {
            return Err(NprError::Invalid(format!(
                "operator violates Consistency: world {} is dissonant",
                z.bitstring(n)
            )));
        }
        let report = check_credset(&cred, star.belief_models());
        for check in [&report.c1, &report.c3, &report.c4_prime] {
            if !check.holds {
                return Err(NprError::Invalid(format!(
                    "credible set violates {}: witness {}",
                    check.name,
                    describe_witness(check)
                )));
            }
        }
        let joint = check_joint_condition(&star, &cred);
        if !joint.holds {
            return Err(NprError::Invalid(format!(
                "joint condition fails: witness {}",
                describe_witness(&joint)
            )));
        }
        Ok(ClStructure { star, cred })
    }

    pub fn star(&self) -> &BeliefState {
        &self.star
    }

    pub fn credible(&self) -> &CredibleSet {
        &self.cred
    }
}

fn describe_witness(check: &ConditionCheck) -> String {
    match &check.witness {
        None => "none".to_string(),
        Some((a, None)) => format!("{:?}", a),
        Some((a, Some(b))) => format!("({:?}, {:?})", a, b),
    }
}

/// Credibility-limited revision: apply the operator to credible inputs,
/// keep the beliefs otherwise.
pub fn cl_revise(cl: &ClStructure, a: &WorldSet) -> WorldSet {
    if cl.cred.contains(a) {
        revise(&cl.star, a).models
    } else {
        cl.star.belief_models().clone()
    }
}

/// Factor a non-prioritised operator through a credibility-limited
/// structure: the interval-order rewrite of the base relation becomes the
/// inner operator, the base's credible set is kept, and the result is
/// validated plus checked to reproduce the non-prioritised operator on
/// every sentence class. Needs a z-transitive base; plain biorders are
/// rejected with the witness.
pub fn cl_structure_of(s: &NprState) -> Result<ClStructure, NprError> {
    let n = s.n_atoms();
    if n > MAX_EXHAUSTIVE_ATOMS {
        return Err(NprError::TooManyAtoms { n });
    }
    let rel = s.base.interpretation().relation();
    if let Some((u, v, z)) = rel.z_transitivity_witness() {
        return Err(NprError::UnsupportedBase {
            detail: format!(
                "base class {} fails z-transitivity at ({}, {}, {})",
                s.base.class(),
                u.bitstring(n),
                v.bitstring(n),
                z.bitstring(n)
            ),
        });
    }
    let interval = rel.to_interval_order().expect("checked Ferrers and z-transitive");
    let star_interp = interpretation_of(&interval).expect("the rewrite is Ferrers");
    let star = BeliefState::new(star_interp, OperatorClass::Iob)
        .map_err(|e| NprError::Invalid(format!("rewritten operator is not a valid state: {e}")))?;
    let cred = credible_set(s)?;
    let cl = ClStructure::new(star, cred)?;
    for a in classes(n) {
        let direct = npr_revise(s, &a);
        let factored = cl_revise(&cl, &a);
        if direct != factored {
            return Err(NprError::Invalid(format!(
                "factoring mismatch on {:?}: direct {:?}, structure {:?}",
                a, direct, factored
            )));
        }
    }
    Ok(cl)
}

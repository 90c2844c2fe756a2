//! Canonical interpretation extraction from black-box operators.
//!
//! Given only the map from input classes to outcome classes, the extraction
//! rebuilds a ranked interpretation in two interleaved sweeps: the U-sets
//! grow by revising by the disjunction of what is still contentious, the
//! V-sets shrink to the classes whose revision still escapes the current
//! U-set. The result reproduces the operator exactly when the operator
//! satisfies the biorder postulates; the round-trip check decides that, and
//! classification reads the stronger class properties off the extracted
//! ranks. The extraction itself is total: ill-behaved operators still yield
//! a trace, they just fail the round-trip.

use serde_json::json;
use thiserror::Error;

use crate::logic::{Valuation, WorldSet, MAX_EXHAUSTIVE_ATOMS};
use crate::orders::RankedInterpretation;
use crate::postulates::OperatorUnderTest;
use crate::revision::OperatorClass;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("extraction enumerates all sentence classes and needs at most {MAX_EXHAUSTIVE_ATOMS} atoms, got {n}")]
    TooManyAtoms { n: usize },
}

/// The full extraction audit: both set sequences plus the ranks they
/// induce. `u_seq` holds the growing sets starting one step before zero,
/// with the full space appended when the fixpoint missed some worlds;
/// `v_seq` holds the shrinking sets over the same indices except the
/// appended tail. For operators passing the biorder suite the result is
/// normal and compressed and its upper fixpoint is exactly the consonant
/// worlds; ill-behaved operators can produce anything, which the round-trip
/// check then reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTrace {
    pub u_seq: Vec<WorldSet>,
    pub v_seq: Vec<WorldSet>,
    pub result: RankedInterpretation,
}

impl CanonicalTrace {
    /// A pair violating the consonance lemma: a world whose lower rank is
    /// reachable from some upper rank yet exceeds its own upper rank. For
    /// operators passing the biorder suite this is always `None`.
    pub fn consonance_witness(&self) -> Option<(Valuation, Valuation)> {
        let full = WorldSet::full(self.result.n_atoms());
        let witness = full.iter().find_map(|w| {
            let lw = self.result.lower(w);
            if lw <= self.result.upper(w) {
                return None;
            }
            full.iter().find(|u| lw <= self.result.upper(*u)).map(|u| (w, u))
        });
        witness
    }

    /// The audit dump: sequences as bitstring lists, ranks keyed by world.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.result.n_atoms();
        let sets = |seq: &[WorldSet]| {
            seq.iter().map(|s| json!(s.bitstrings())).collect::<Vec<_>>()
        };
        let full = WorldSet::full(n);
        let ranks = |f: &dyn Fn(Valuation) -> u32| {
            let mut map = serde_json::Map::new();
            for v in full.iter() {
                map.insert(v.bitstring(n), json!(f(v)));
            }
            serde_json::Value::Object(map)
        };
        json!({
            "u_seq": sets(&self.u_seq),
            "v_seq": sets(&self.v_seq),
            "result": {
                "lower": ranks(&|v| self.result.lower(v)),
                "upper": ranks(&|v| self.result.upper(v)),
            },
        })
    }
}

/// Run the completeness construction against `op`. Every sentence class is
/// evaluated exactly once up front; the V-step then unions literally over
/// all classes whose outcome escapes the current U-set.
pub fn extract_canonical(op: &OperatorUnderTest) -> Result<CanonicalTrace, CanonicalError> {
    let n = op.n_atoms();
    if n > MAX_EXHAUSTIVE_ATOMS {
        return Err(CanonicalError::TooManyAtoms { n });
    }
    let w = 1usize << n;
    let classes = 1u64 << w;
    let table: Vec<WorldSet> =
        (0..classes).map(|mask| op.eval(&WorldSet::from_mask(n, mask))).collect();
    let m = |set: &WorldSet| table[set.mask() as usize].clone();

    let full = WorldSet::full(n);
    let mut u_seq = vec![WorldSet::empty(n)];
    let mut v_seq = vec![full.clone()];
    for step in 0.. {
        assert!(step <= w + 3, "the U-sets grow strictly until the fixpoint, so this is unreachable");
        let u_next = u_seq.last().unwrap().union(&m(v_seq.last().unwrap()));
        // The sequences stop at the first index past the start whose
        // successor adds nothing. The V-step depends only on the current
        // U-set, so the fixpoint is absorbing and the duplicate candidate
        // can be dropped, except that the stop index is at least one: a
        // fixpoint reached immediately still contributes one entry.
        if u_seq.len() >= 3 && u_next == *u_seq.last().unwrap() {
            break;
        }
        let v_next = (0..classes)
            .filter(|mask| !table[*mask as usize].is_subset_of(&u_next))
            .fold(WorldSet::empty(n), |acc, mask| acc.union(&WorldSet::from_mask(n, mask)));
        u_seq.push(u_next);
        v_seq.push(v_next);
    }
    if u_seq.last().unwrap() != &full {
        u_seq.push(full.clone());
    }

    let lower: Vec<u32> = full
        .iter()
        .map(|v| {
            u_seq[1..]
                .iter()
                .position(|u| u.contains(v))
                .expect("the appended full set holds every world") as u32
        })
        .collect();
    let upper: Vec<u32> = full
        .iter()
        .map(|v| {
            v_seq[1..]
                .iter()
                .position(|s| !s.contains(v))
                .unwrap_or(v_seq.len() - 1) as u32
        })
        .collect();
    let result = RankedInterpretation::new(n, lower, upper).expect("rank vectors cover all worlds");
    Ok(CanonicalTrace { u_seq, v_seq, result })
}

/// One class where the operator and the extracted ranks disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub class: WorldSet,
    pub operator: WorldSet,
    pub extracted: WorldSet,
}

/// Outcome of replaying the operator against the extracted ranks on every
/// class. Holds exactly when the operator satisfies the biorder suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub holds: bool,
    pub mismatches: Vec<Mismatch>,
}

pub fn roundtrip_verify(op: &OperatorUnderTest, trace: &CanonicalTrace) -> RoundtripReport {
    let n = op.n_atoms();
    let rel = trace.result.relation();
    let mismatches: Vec<Mismatch> = (0..(1u64 << (1usize << n)))
        .filter_map(|mask| {
            let class = WorldSet::from_mask(n, mask);
            let operator = op.eval(&class);
            let extracted = rel.opt(&class);
            (operator != extracted).then_some(Mismatch { class, operator, extracted })
        })
        .collect();
    RoundtripReport { holds: mismatches.is_empty(), mismatches }
}

/// Classification of a black-box operator, with the evidence that decided
/// it: the biorder verdict comes from the round-trip, the stronger classes
/// from properties of the extracted ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlackBoxClassification {
    pub classes: Vec<OperatorClass>,
    pub trace: CanonicalTrace,
    pub roundtrip: RoundtripReport,
}

pub fn classify_black_box(op: &OperatorUnderTest) -> Result<BlackBoxClassification, CanonicalError> {
    let trace = extract_canonical(op)?;
    let roundtrip = roundtrip_verify(op, &trace);
    let mut classes = Vec::new();
    if roundtrip.holds {
        if trace.result.is_interval() {
            classes.push(OperatorClass::Iob);
        }
        classes.push(OperatorClass::Bob);
        if trace.result.satisfies_bzt() {
            classes.push(OperatorClass::Ztbob);
        }
        if trace.result.satisfies_bt() {
            classes.push(OperatorClass::Tbob);
        }
    }
    Ok(BlackBoxClassification { classes, trace, roundtrip })
}

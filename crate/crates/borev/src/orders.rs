//! Relations and ranked interpretations over the valuation space.
//!
//! The central representation theorem driving this module: a relation on
//! worlds is a biorder (satisfies the Ferrers condition) exactly when it can
//! be written as `v <= u iff lower(v) <= upper(u)` for some rank assignment.
//! Reflexive biorders are interval orders; collapsing both ranks gives total
//! preorders. A world whose lower rank exceeds its upper rank is *dissonant*:
//! it sits strictly above its own interval and never survives optimisation.

use crate::logic::{AtomTable, Valuation, WorldSet, MAX_ATOMS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Errors from relation and interpretation construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdersError {
    /// Relation is not a biorder; the quadruple witnesses the Ferrers failure.
    #[error("relation is not Ferrers: ({v},{u}) and ({v2},{u2}) hold but neither cross pair does")]
    NotFerrers { v: u16, u: u16, v2: u16, u2: u16 },
    /// Relation is not z-transitive; `(u, v, z)` witnesses the failure.
    #[error("relation is not z-transitive at ({u}, {v}, {z})")]
    NotZTransitive { u: u16, v: u16, z: u16 },
    /// Rank vectors do not cover the valuation space exactly.
    #[error("rank assignment must cover all {expected} valuations, got {got}")]
    RankCoverage { expected: usize, got: usize },
    /// Interpretation misses a precondition of a transform.
    #[error("{0}")]
    Precondition(String),
    /// Sphere ranking structure is malformed.
    #[error("{0}")]
    BadSphere(String),
    /// The generator cannot satisfy the request.
    #[error("{0}")]
    Generation(String),
}

/// A binary relation on the valuation space, stored as one up-set per world:
/// `up(v) = {u | v <= u}` (worlds `v` considers at least as plausible as
/// itself... read `v <= u` as "v is at least as plausible as u").
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n_atoms: u8,
    rows: Vec<WorldSet>,
}

impl Relation {
    pub fn empty(n_atoms: usize) -> Self {
        assert!((1..=MAX_ATOMS).contains(&n_atoms));
        let worlds = 1usize << n_atoms;
        Relation { n_atoms: n_atoms as u8, rows: vec![WorldSet::empty(n_atoms); worlds] }
    }

    pub fn from_pairs<I>(n_atoms: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Valuation, Valuation)>,
    {
        let mut r = Relation::empty(n_atoms);
        for (v, u) in pairs {
            r.insert(v, u);
        }
        r
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms as usize
    }

    pub fn world_count(&self) -> usize {
        1usize << self.n_atoms
    }

    /// Does `v <= u` hold?
    pub fn le(&self, v: Valuation, u: Valuation) -> bool {
        self.rows[v.index()].contains(u)
    }

    pub fn insert(&mut self, v: Valuation, u: Valuation) {
        self.rows[v.index()].insert(u);
    }

    /// Up-set of `v`: all `u` with `v <= u`.
    pub fn up_set(&self, v: Valuation) -> &WorldSet {
        &self.rows[v.index()]
    }

    /// Down-set of `u`: all `v` with `v <= u`.
    pub fn down_set(&self, u: Valuation) -> WorldSet {
        let worlds = (0..self.world_count() as u16).map(Valuation).filter(|v| self.le(*v, u));
        WorldSet::from_worlds(self.n_atoms as usize, worlds)
    }

    /// All pairs `(v, u)` with `v <= u`, ascending by `(v, u)`.
    pub fn pairs(&self) -> impl Iterator<Item = (Valuation, Valuation)> + '_ {
        (0..self.world_count() as u16)
            .map(Valuation)
            .flat_map(move |v| self.rows[v.index()].iter().map(move |u| (v, u)))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(WorldSet::len).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.world_count() as u16).all(|v| self.le(Valuation(v), Valuation(v)))
    }

    /// Ferrers condition: `v <= u` and `v' <= u'` imply `v <= u'` or
    /// `v' <= u`. Equivalently, the up-sets are nested; that is what we
    /// check, quantifying over world pairs.
    pub fn is_ferrers(&self) -> bool {
        let w = self.world_count();
        for v in 0..w {
            for v2 in (v + 1)..w {
                let a = &self.rows[v];
                let b = &self.rows[v2];
                if !a.is_subset_of(b) && !b.is_subset_of(a) {
                    return false;
                }
            }
        }
        true
    }

    /// First quadruple violating Ferrers, in ascending `(v, u, v', u')`
    /// order, or `None` when the relation is a biorder.
    pub fn ferrers_witness(&self) -> Option<(Valuation, Valuation, Valuation, Valuation)> {
        let w = self.world_count() as u16;
        for v in 0..w {
            for u in 0..w {
                if !self.le(Valuation(v), Valuation(u)) {
                    continue;
                }
                for v2 in 0..w {
                    for u2 in 0..w {
                        if self.le(Valuation(v2), Valuation(u2))
                            && !self.le(Valuation(v), Valuation(u2))
                            && !self.le(Valuation(v2), Valuation(u))
                        {
                            return Some((Valuation(v), Valuation(u), Valuation(v2), Valuation(u2)));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        let w = self.world_count() as u16;
        (0..w).all(|v| {
            self.rows[v as usize]
                .iter()
                .all(|u| self.rows[u.index()].is_subset_of(&self.rows[v as usize]))
        })
    }

    /// Worlds not related to themselves.
    pub fn dissonant_worlds(&self) -> WorldSet {
        let n = self.n_atoms as usize;
        let worlds =
            (0..self.world_count() as u16).map(Valuation).filter(|v| !self.le(*v, *v));
        WorldSet::from_worlds(n, worlds)
    }

    /// z-transitivity: `u <= v`, `v <= z` and `z` dissonant imply `u <= z`.
    pub fn is_z_transitive(&self) -> bool {
        self.z_transitivity_witness().is_none()
    }

    /// First `(u, v, z)` violating z-transitivity, ascending.
    pub fn z_transitivity_witness(&self) -> Option<(Valuation, Valuation, Valuation)> {
        let w = self.world_count() as u16;
        let diss = self.dissonant_worlds();
        for u in (0..w).map(Valuation) {
            for v in (0..w).map(Valuation) {
                if !self.le(u, v) {
                    continue;
                }
                for z in (0..w).map(Valuation) {
                    if diss.contains(z) && self.le(v, z) && !self.le(u, z) {
                        return Some((u, v, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_complete(&self) -> bool {
        let w = self.world_count() as u16;
        (0..w).all(|v| {
            (0..w).all(|u| self.le(Valuation(v), Valuation(u)) || self.le(Valuation(u), Valuation(v)))
        })
    }

    pub fn is_total_preorder(&self) -> bool {
        self.is_complete() && self.is_transitive()
    }

    /// Property used throughout: an outgoing edge certifies consonance
    /// (`v <= v'` implies `v <= v`).
    pub fn has_no_dissonant_outedges(&self) -> bool {
        (0..self.world_count() as u16)
            .map(Valuation)
            .all(|z| self.le(z, z) || self.rows[z.index()].is_empty())
    }

    /// Optimal members of `set`: those at least as plausible as every member.
    pub fn opt(&self, set: &WorldSet) -> WorldSet {
        assert_eq!(set.n_atoms(), self.n_atoms as usize);
        let worlds = set.iter().filter(|v| set.is_subset_of(&self.rows[v.index()]));
        WorldSet::from_worlds(self.n_atoms as usize, worlds)
    }

    /// Is the relation anchored on `m`, i.e. `opt` of the full space equals
    /// `m` and `m` is nonempty?
    pub fn is_anchored_on(&self, m: &WorldSet) -> bool {
        !m.is_empty() && self.opt(&WorldSet::full(self.n_atoms as usize)) == *m
    }

    /// Strict-preference form of vacuity: every `m`-world is strictly below
    /// every non-`m`-world.
    pub fn satisfies_vacuity_condition(&self, m: &WorldSet) -> bool {
        assert_eq!(m.n_atoms(), self.n_atoms as usize);
        m.iter().all(|v| {
            m.complement().iter().all(|v2| self.le(v, v2) && !self.le(v2, v))
        })
    }

    /// Drop every edge leaving a dissonant world. Optimal sets are unchanged
    /// on every input, since a dissonant world never belongs to one.
    pub fn trim_dissonant_outedges(&self) -> Relation {
        let diss = self.dissonant_worlds();
        let mut out = self.clone();
        for z in diss.iter() {
            out.rows[z.index()] = WorldSet::empty(self.n_atoms as usize);
        }
        out
    }

    /// Rewrite a z-transitive biorder into an interval order with the same
    /// nonempty optimal sets: consonant pairs keep their edges, and every
    /// world is placed below each dissonant world.
    pub fn to_interval_order(&self) -> Result<Relation, OrdersError> {
        if let Some((v, u, v2, u2)) = self.ferrers_witness() {
            return Err(OrdersError::NotFerrers { v: v.0, u: u.0, v2: v2.0, u2: u2.0 });
        }
        if let Some((u, v, z)) = self.z_transitivity_witness() {
            return Err(OrdersError::NotZTransitive { u: u.0, v: v.0, z: z.0 });
        }
        Ok(self.to_interval_order_unchecked())
    }

    /// The raw interval-order rewrite, without checking the preconditions
    /// that make it optimisation-preserving. For experimentation.
    pub fn to_interval_order_unchecked(&self) -> Relation {
        let n = self.n_atoms as usize;
        let diss = self.dissonant_worlds();
        let cons = diss.complement();
        let mut out = Relation::empty(n);
        for v in (0..self.world_count() as u16).map(Valuation) {
            if diss.contains(v) {
                out.rows[v.index()] = diss.clone();
            } else {
                out.rows[v.index()] = self.rows[v.index()].intersection(&cons).union(&diss);
            }
        }
        out
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.n_atoms as usize;
        let pairs: Vec<String> = self
            .pairs()
            .map(|(v, u)| format!("({},{})", v.bitstring(n), u.bitstring(n)))
            .collect();
        write!(f, "Relation[{}]", pairs.join(", "))
    }
}

/// A ranked interpretation: total lower and upper rank assignments over the
/// valuation space, inducing the relation `v <= u iff lower(v) <= upper(u)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RankedInterpretation {
    n_atoms: u8,
    lower: Vec<u32>,
    upper: Vec<u32>,
}

impl RankedInterpretation {
    /// Build from rank vectors indexed by valuation; both must have length
    /// `2^n_atoms`.
    pub fn new(n_atoms: usize, lower: Vec<u32>, upper: Vec<u32>) -> Result<Self, OrdersError> {
        assert!((1..=MAX_ATOMS).contains(&n_atoms));
        let expected = 1usize << n_atoms;
        if lower.len() != expected || upper.len() != expected {
            return Err(OrdersError::RankCoverage {
                expected,
                got: lower.len().min(upper.len()),
            });
        }
        Ok(RankedInterpretation { n_atoms: n_atoms as u8, lower, upper })
    }

    /// Build from `(bitstring, lower, upper)` entries; every valuation must
    /// appear exactly once.
    pub fn from_pairs<'a, I>(table: &AtomTable, entries: I) -> Result<Self, OrdersError>
    where
        I: IntoIterator<Item = (&'a str, u32, u32)>,
    {
        let n = table.len();
        let expected = 1usize << n;
        let mut lower = vec![u32::MAX; expected];
        let mut upper = vec![u32::MAX; expected];
        let mut seen = 0usize;
        for (bits, l, u) in entries {
            let v = Valuation::from_bitstring(bits, n)
                .ok_or_else(|| OrdersError::Precondition(format!("bad valuation `{bits}`")))?;
            if lower[v.index()] != u32::MAX {
                return Err(OrdersError::Precondition(format!("duplicate valuation `{bits}`")));
            }
            lower[v.index()] = l;
            upper[v.index()] = u;
            seen += 1;
        }
        if seen != expected {
            return Err(OrdersError::RankCoverage { expected, got: seen });
        }
        RankedInterpretation::new(n, lower, upper)
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms as usize
    }

    pub fn world_count(&self) -> usize {
        1usize << self.n_atoms
    }

    pub fn lower(&self, v: Valuation) -> u32 {
        self.lower[v.index()]
    }

    pub fn upper(&self, v: Valuation) -> u32 {
        self.upper[v.index()]
    }

    pub fn max_lower(&self) -> u32 {
        *self.lower.iter().max().expect("nonempty")
    }

    pub fn max_upper(&self) -> u32 {
        *self.upper.iter().max().expect("nonempty")
    }

    /// A normal interpretation has some world at lower rank zero, which
    /// guarantees the induced relation has optimal worlds overall.
    pub fn is_normal(&self) -> bool {
        self.lower.contains(&0)
    }

    /// Zero-length-interval check: `lower <= upper` everywhere. Equivalent
    /// to reflexivity of the induced relation.
    pub fn is_interval(&self) -> bool {
        self.lower.iter().zip(&self.upper).all(|(l, u)| l <= u)
    }

    /// Worlds with `lower > upper`.
    pub fn dissonant_worlds(&self) -> WorldSet {
        let n = self.n_atoms as usize;
        let worlds = (0..self.world_count() as u16)
            .map(Valuation)
            .filter(|v| self.lower[v.index()] > self.upper[v.index()]);
        WorldSet::from_worlds(n, worlds)
    }

    /// The induced relation `v <= u iff lower(v) <= upper(u)`.
    pub fn relation(&self) -> Relation {
        let n = self.n_atoms as usize;
        let mut rel = Relation::empty(n);
        for v in 0..self.world_count() {
            let worlds = (0..self.world_count() as u16)
                .map(Valuation)
                .filter(|u| self.lower[v] <= self.upper[u.index()]);
            rel.rows[v] = WorldSet::from_worlds(n, worlds);
        }
        rel
    }

    /// Compressed shape: lower ranks from 1 up are gapless, upper ranks from
    /// 0 up are gapless, and the two maxima differ by at most one (lower on
    /// top). Lower rank 0 may be empty, exactly when the relation has no
    /// overall-optimal worlds.
    pub fn is_compressed(&self) -> bool {
        let max_l = self.max_lower();
        let max_u = self.max_upper();
        for i in 1..max_l {
            if !self.lower.contains(&i) {
                return false;
            }
        }
        if max_l > 0 && !self.lower.contains(&max_l) {
            return false;
        }
        for i in 0..=max_u {
            if !self.upper.contains(&i) {
                return false;
            }
        }
        max_l >= max_u && max_l - max_u <= 1
    }

    /// Boundary z-transitivity: whenever some interval reaches past `z`'s
    /// upper end (`lower(u) <= upper(z) < upper(u)`), `z` must be consonant.
    pub fn satisfies_bzt(&self) -> bool {
        self.bzt_witness().is_none()
    }

    /// First `(u, z)` violating BZT, ascending.
    pub fn bzt_witness(&self) -> Option<(Valuation, Valuation)> {
        let w = self.world_count() as u16;
        for u in (0..w).map(Valuation) {
            for z in (0..w).map(Valuation) {
                if self.lower[u.index()] <= self.upper[z.index()]
                    && self.upper[z.index()] < self.upper[u.index()]
                    && self.lower[z.index()] > self.upper[z.index()]
                {
                    return Some((u, z));
                }
            }
        }
        None
    }

    /// Backward-threshold condition: `upper <= lower` everywhere. Implies
    /// the induced relation is transitive.
    pub fn satisfies_bt(&self) -> bool {
        self.bt_witness().is_none()
    }

    /// First world with `upper > lower`.
    pub fn bt_witness(&self) -> Option<Valuation> {
        (0..self.world_count() as u16)
            .map(Valuation)
            .find(|v| self.upper[v.index()] > self.lower[v.index()])
    }

    /// Extract the compressed interpretation of a biorder. This is the
    /// constructive half of the representation theorem: peel off the worlds
    /// whose up-set already covers everything not yet settled, layer by
    /// layer, reading lower ranks from when a world gets peeled and upper
    /// ranks from when its down-set is fully absorbed.
    ///
    /// Rejects non-Ferrers input (with the witness quadruple). The result
    /// induces exactly `r` and is compressed; it is normal exactly when `r`
    /// has optimal worlds overall.
    pub fn from_relation(r: &Relation) -> Result<Self, OrdersError> {
        if let Some((v, u, v2, u2)) = r.ferrers_witness() {
            return Err(OrdersError::NotFerrers { v: v.0, u: u.0, v2: v2.0, u2: u2.0 });
        }
        let n = r.n_atoms();
        let w = r.world_count();
        let full = WorldSet::full(n);
        let all: Vec<Valuation> = (0..w as u16).map(Valuation).collect();
        let down: Vec<WorldSet> = all.iter().map(|u| r.down_set(*u)).collect();

        let mut lower = vec![u32::MAX; w];
        let mut upper = vec![u32::MAX; w];
        let mut u_cur = WorldSet::empty(n); // the settled worlds after step i
        let mut v_cur = WorldSet::empty(n); // worlds whose down-set is settled
        for i in 0..=(w as u32 + 1) {
            // A world joins at step i when its up-set covers everything whose
            // down-set was not yet settled.
            let pending = v_cur.complement();
            let mut u_next = u_cur.clone();
            for v in all.iter() {
                if !u_next.contains(*v) && pending.is_subset_of(r.up_set(*v)) {
                    u_next.insert(*v);
                    lower[v.index()] = i;
                }
            }
            let mut v_next = WorldSet::empty(n);
            for v in all.iter() {
                if down[v.index()].is_subset_of(&u_next) {
                    v_next.insert(*v);
                    if upper[v.index()] == u32::MAX {
                        upper[v.index()] = i;
                    }
                }
            }
            u_cur = u_next;
            v_cur = v_next;
            if u_cur == full && v_cur == full {
                let result = RankedInterpretation { n_atoms: n as u8, lower, upper };
                debug_assert_eq!(result.relation(), *r, "extraction must round-trip");
                debug_assert!(result.is_compressed(), "extraction must be compressed");
                return Ok(result);
            }
        }
        unreachable!("extraction terminates within world-count steps on Ferrers input")
    }

    /// Collapse a backward-threshold interpretation into a single ranking
    /// with impossible ranks: the consonant worlds at upper level `i` share
    /// a possible rank, and the dissonant worlds at that level drop into a
    /// fresh impossible rank just above it. Levels are processed in
    /// increasing order and empty ones contribute nothing, so the ranking is
    /// gapless even when the input is not compressed.
    pub fn to_sphere_ranking(&self) -> Result<SphereRanking, OrdersError> {
        if let Some(v) = self.bt_witness() {
            return Err(OrdersError::Precondition(format!(
                "sphere collapse needs the backward-threshold condition; world {} has upper {} > lower {}",
                v.bitstring(self.n_atoms as usize),
                self.upper[v.index()],
                self.lower[v.index()],
            )));
        }
        let n = self.n_atoms as usize;
        let mut rank = vec![0u32; self.world_count()];
        let mut impossible = Vec::new();
        let mut next = 0u32;
        for level in 0..=self.max_upper() {
            let at_level = |v: &Valuation| self.upper[v.index()] == level;
            let cons: Vec<Valuation> = (0..self.world_count() as u16)
                .map(Valuation)
                .filter(|v| at_level(v) && self.lower[v.index()] <= self.upper[v.index()])
                .collect();
            let diss: Vec<Valuation> = (0..self.world_count() as u16)
                .map(Valuation)
                .filter(|v| at_level(v) && self.lower[v.index()] > self.upper[v.index()])
                .collect();
            if !cons.is_empty() {
                for v in cons {
                    rank[v.index()] = next;
                }
                impossible.push(false);
                next += 1;
            }
            if !diss.is_empty() {
                for v in diss {
                    rank[v.index()] = next;
                }
                impossible.push(true);
                next += 1;
            }
        }
        SphereRanking::new(n, rank, impossible)
    }
}

impl std::fmt::Debug for RankedInterpretation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.n_atoms as usize;
        let entries: Vec<String> = (0..self.world_count() as u16)
            .map(|v| {
                let v = Valuation(v);
                format!("{}: L{} U{}", v.bitstring(n), self.lower[v.index()], self.upper[v.index()])
            })
            .collect();
        write!(f, "RankedInterpretation[{}]", entries.join(", "))
    }
}

/// A single system-of-spheres style ranking over worlds, with some ranks
/// flagged impossible. Revision by `a` returns the minimal-rank members of
/// `a`, or nothing at all when that minimal rank is impossible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SphereRanking {
    n_atoms: u8,
    rank: Vec<u32>,
    impossible: Vec<bool>,
}

impl SphereRanking {
    /// `rank` is indexed by valuation and must use ranks `0..impossible.len()`
    /// with every rank occupied; `impossible` flags each rank.
    pub fn new(n_atoms: usize, rank: Vec<u32>, impossible: Vec<bool>) -> Result<Self, OrdersError> {
        assert!((1..=MAX_ATOMS).contains(&n_atoms));
        let expected = 1usize << n_atoms;
        if rank.len() != expected {
            return Err(OrdersError::RankCoverage { expected, got: rank.len() });
        }
        let count = impossible.len() as u32;
        if count == 0 {
            return Err(OrdersError::BadSphere("a ranking needs at least one rank".into()));
        }
        for r in 0..count {
            if !rank.contains(&r) {
                return Err(OrdersError::BadSphere(format!("rank {r} is unoccupied")));
            }
        }
        if let Some(bad) = rank.iter().find(|r| **r >= count) {
            return Err(OrdersError::BadSphere(format!(
                "rank {bad} outside the declared 0..{count}"
            )));
        }
        Ok(SphereRanking { n_atoms: n_atoms as u8, rank, impossible })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms as usize
    }

    pub fn rank_of(&self, v: Valuation) -> u32 {
        self.rank[v.index()]
    }

    pub fn max_rank(&self) -> u32 {
        self.impossible.len() as u32 - 1
    }

    pub fn is_impossible(&self, rank: u32) -> bool {
        self.impossible[rank as usize]
    }

    pub fn impossible_ranks(&self) -> Vec<u32> {
        (0..=self.max_rank()).filter(|r| self.is_impossible(*r)).collect()
    }

    pub fn members(&self, rank: u32) -> WorldSet {
        let n = self.n_atoms as usize;
        let worlds = (0..self.rank.len() as u16).map(Valuation).filter(|v| self.rank[v.index()] == rank);
        WorldSet::from_worlds(n, worlds)
    }

    /// Minimal rank met by `a`, `None` for the empty set.
    pub fn sentence_rank(&self, a: &WorldSet) -> Option<u32> {
        a.iter().map(|v| self.rank[v.index()]).min()
    }

    /// The case formula: minimal-rank members of `a`, unless that rank is
    /// impossible, in which case the outcome is empty.
    pub fn revise(&self, a: &WorldSet) -> WorldSet {
        match self.sentence_rank(a) {
            None => WorldSet::empty(self.n_atoms as usize),
            Some(r) if self.is_impossible(r) => WorldSet::empty(self.n_atoms as usize),
            Some(r) => {
                let worlds = a.iter().filter(|v| self.rank[v.index()] == r);
                WorldSet::from_worlds(self.n_atoms as usize, worlds)
            }
        }
    }

    /// Expand back into a ranked interpretation: possible rank `r` becomes a
    /// zero-length interval at `r`, impossible rank `r` becomes the dissonant
    /// interval `upper = r`, `lower = r + 1`. Collapsing the result yields
    /// this ranking again, exactly.
    pub fn to_interpretation(&self) -> RankedInterpretation {
        let n = self.n_atoms as usize;
        let mut lower = vec![0u32; self.rank.len()];
        let mut upper = vec![0u32; self.rank.len()];
        for v in 0..self.rank.len() {
            let r = self.rank[v];
            upper[v] = r;
            lower[v] = if self.impossible[r as usize] { r + 1 } else { r };
        }
        RankedInterpretation::new(n, lower, upper).expect("coverage is structural")
    }
}

/// Compressed-interpretation extraction as a free function; see
/// [`RankedInterpretation::from_relation`].
pub fn interpretation_of(r: &Relation) -> Result<RankedInterpretation, OrdersError> {
    RankedInterpretation::from_relation(r)
}

/// Shape requested from the random generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenClass {
    /// Unconstrained ranks.
    Biorder,
    /// Biorder whose relation is z-transitive.
    ZTransitive,
    /// Backward-threshold ranks (`upper <= lower`); the relation is transitive.
    Transitive,
    /// Interval ranks (`lower <= upper`); the relation is an interval order.
    Interval,
    /// Zero-length intervals; the relation is a total preorder.
    TotalPreorder,
}

impl GenClass {
    pub fn name(self) -> &'static str {
        match self {
            GenClass::Biorder => "biorder",
            GenClass::ZTransitive => "z-transitive",
            GenClass::Transitive => "transitive",
            GenClass::Interval => "interval",
            GenClass::TotalPreorder => "total-preorder",
        }
    }
}

const GENERATION_ATTEMPTS: usize = 400;

/// Sample a normal interpretation of the requested class whose relation is
/// anchored on `anchor`. Deterministic for a given seed: rejection sampling
/// first, then a seeded constructive fallback that cannot fail.
pub fn random_interpretation(
    n_atoms: usize,
    anchor: &WorldSet,
    class: GenClass,
    max_rank: u32,
    seed: u64,
) -> Result<RankedInterpretation, OrdersError> {
    assert_eq!(anchor.n_atoms(), n_atoms);
    if anchor.is_empty() {
        return Err(OrdersError::Generation("anchor must be a nonempty world set".into()));
    }
    if max_rank == 0 && anchor.len() != anchor.world_count() {
        return Err(OrdersError::Generation(
            "max_rank 0 forces every world optimal; anchor must be the full space".into(),
        ));
    }
    let w = 1usize << n_atoms;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..GENERATION_ATTEMPTS {
        let mut lower = vec![0u32; w];
        let mut upper = vec![0u32; w];
        for v in 0..w {
            match class {
                GenClass::Biorder | GenClass::ZTransitive => {
                    lower[v] = rng.random_range(0..=max_rank);
                    upper[v] = rng.random_range(0..=max_rank);
                }
                GenClass::Transitive => {
                    upper[v] = rng.random_range(0..=max_rank);
                    lower[v] = rng.random_range(upper[v]..=max_rank);
                }
                GenClass::Interval => {
                    lower[v] = rng.random_range(0..=max_rank);
                    upper[v] = rng.random_range(lower[v]..=max_rank);
                }
                GenClass::TotalPreorder => {
                    lower[v] = rng.random_range(0..=max_rank);
                    upper[v] = lower[v];
                }
            }
        }
        let interp = RankedInterpretation { n_atoms: n_atoms as u8, lower, upper };
        if !interp.is_normal() {
            continue;
        }
        let min_u = *interp.upper.iter().min().expect("nonempty");
        let opt_all =
            WorldSet::from_worlds(n_atoms, (0..w as u16).map(Valuation).filter(|v| interp.lower[v.index()] <= min_u));
        if opt_all != *anchor {
            continue;
        }
        if class == GenClass::ZTransitive && !interp.relation().is_z_transitive() {
            continue;
        }
        return Ok(interp);
    }

    Ok(constructive_fallback(n_atoms, anchor, class, max_rank, &mut rng))
}

/// Anchored-by-construction sampler used when rejection runs dry. Every
/// class pins the anchor at the bottom (lower 0, with upper arranged so the
/// minimal upper rank is 0) and spreads the rest above it.
fn constructive_fallback(
    n_atoms: usize,
    anchor: &WorldSet,
    class: GenClass,
    max_rank: u32,
    rng: &mut ChaCha8Rng,
) -> RankedInterpretation {
    let w = 1usize << n_atoms;
    let mut lower = vec![0u32; w];
    let mut upper = vec![0u32; w];
    let anchor_list: Vec<Valuation> = anchor.iter().collect();
    let pinned = anchor_list[rng.random_range(0..anchor_list.len())];
    for v in (0..w as u16).map(Valuation) {
        let i = v.index();
        let in_anchor = anchor.contains(v);
        match class {
            GenClass::Biorder | GenClass::ZTransitive | GenClass::Transitive => {
                // Anchor at lower 0 with upper 0 (zero-length), everything
                // else strictly above with upper at most lower: a transitive,
                // hence z-transitive, biorder.
                if in_anchor {
                    lower[i] = 0;
                    upper[i] = 0;
                } else {
                    lower[i] = rng.random_range(1..=max_rank);
                    upper[i] = rng.random_range(0..=lower[i]);
                }
            }
            GenClass::Interval => {
                if in_anchor {
                    lower[i] = 0;
                    upper[i] = if v == pinned { 0 } else { rng.random_range(0..=max_rank) };
                } else {
                    lower[i] = rng.random_range(1..=max_rank);
                    upper[i] = rng.random_range(lower[i]..=max_rank);
                }
            }
            GenClass::TotalPreorder => {
                let r = if in_anchor { 0 } else { rng.random_range(1..=max_rank) };
                lower[i] = r;
                upper[i] = r;
            }
        }
    }
    let interp =
        RankedInterpretation { n_atoms: n_atoms as u8, lower, upper };
    debug_assert!(interp.is_normal());
    debug_assert!(interp.relation().is_anchored_on(anchor));
    interp
}

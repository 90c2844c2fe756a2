//! Propositional core: atoms, valuations, world sets and formulas.
//!
//! Everything downstream is finite and semantic. A [`Valuation`] is a bit
//! pattern over the atom table (bit `i` holds the truth of atom `i`), a
//! [`WorldSet`] is a set of valuations, and a theory is represented by its
//! model set, so entailment is subset testing.

mod parser;

pub use parser::{parse_formula, parse_formula_into};

use smallvec::{smallvec, SmallVec};
use std::fmt;
use thiserror::Error;

/// Hard cap on the number of atoms; exhaustive sentence-class enumeration is
/// further restricted to [`MAX_EXHAUSTIVE_ATOMS`].
pub const MAX_ATOMS: usize = 16;

/// Largest atom count for which code may enumerate all `2^(2^n)` sentence
/// classes (256 at three atoms).
pub const MAX_EXHAUSTIVE_ATOMS: usize = 3;

/// Errors from the propositional layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    /// Formula text failed to parse; `offset` is the byte position.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    /// An atom occurred that the (closed) table does not contain.
    #[error("unknown atom `{name}` at offset {offset}")]
    UnknownAtom { name: String, offset: usize },
    /// Atom name does not match `[a-z][a-zA-Z0-9_]*`.
    #[error("invalid atom name `{name}`")]
    BadAtomName { name: String },
    /// Duplicate atom name in a table.
    #[error("duplicate atom `{name}`")]
    DuplicateAtom { name: String },
    /// Table would be empty or exceed [`MAX_ATOMS`].
    #[error("atom count {n} outside 1..={MAX_ATOMS}")]
    AtomCount { n: usize },
}

/// Index of an atom in its [`AtomTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u8);

/// Ordered set of atom names. The order is fixed for the life of the table:
/// valuation bit `i` is the truth of atom `i`.
///
/// A table is either closed (unknown atoms are parse errors) or open (the
/// parser registers new atoms on first sight). Open tables are a convenience
/// for ad-hoc parsing; close them before doing semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    open: bool,
}

fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl AtomTable {
    /// Closed table over the given names, in the given order.
    pub fn new<I, S>(names: I) -> Result<Self, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = AtomTable { names: Vec::new(), open: false };
        for name in names {
            table.push_name(name.into())?;
        }
        if table.names.is_empty() {
            return Err(LogicError::AtomCount { n: 0 });
        }
        Ok(table)
    }

    /// Empty open table; the parser will register atoms as it meets them.
    pub fn open() -> Self {
        AtomTable { names: Vec::new(), open: true }
    }

    /// Stop accepting new atoms.
    pub fn close(&mut self) {
        self.open = false;
    }

    /// True if the parser may register unseen atoms.
    pub fn is_open(&self) -> bool {
        self.open
    }

    fn push_name(&mut self, name: String) -> Result<AtomId, LogicError> {
        if !valid_atom_name(&name) {
            return Err(LogicError::BadAtomName { name });
        }
        if self.names.contains(&name) {
            return Err(LogicError::DuplicateAtom { name });
        }
        if self.names.len() == MAX_ATOMS {
            return Err(LogicError::AtomCount { n: MAX_ATOMS + 1 });
        }
        self.names.push(name);
        Ok(AtomId((self.names.len() - 1) as u8))
    }

    pub(crate) fn register(&mut self, name: &str, offset: usize) -> Result<AtomId, LogicError> {
        if let Some(id) = self.index_of(name) {
            return Ok(id);
        }
        if !self.open {
            return Err(LogicError::UnknownAtom { name: name.to_string(), offset });
        }
        self.push_name(name.to_string())
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of valuations, `2^len`.
    pub fn world_count(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<AtomId> {
        self.names.iter().position(|n| n == name).map(|i| AtomId(i as u8))
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.0 as usize]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// All valuations over this table, in ascending index order.
    pub fn valuations(&self) -> impl Iterator<Item = Valuation> {
        (0..self.world_count() as u32).map(|i| Valuation(i as u16))
    }
}

/// A propositional valuation, stored as its index: bit `i` is the truth of
/// atom `i`. Widths come from context (the atom table).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(pub u16);

impl Valuation {
    /// Truth of the given atom under this valuation.
    pub fn truth(self, atom: AtomId) -> bool {
        (self.0 >> atom.0) & 1 == 1
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Bitstring in atom order, leftmost character = atom 0. `10` over
    /// `p, q` means p true, q false.
    pub fn bitstring(self, n_atoms: usize) -> String {
        (0..n_atoms)
            .map(|i| if (self.0 >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Parse a bitstring in atom order; length must equal the atom count.
    pub fn from_bitstring(s: &str, n_atoms: usize) -> Option<Valuation> {
        if s.len() != n_atoms {
            return None;
        }
        let mut bits = 0u16;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return None,
            }
        }
        Some(Valuation(bits))
    }

    /// Barred display style: each atom name in order, prefixed with `-` when
    /// false. `pq` over `p, q` is both true; `-p-q` is both false.
    pub fn barred(self, table: &AtomTable) -> String {
        let mut out = String::new();
        for (i, name) in table.names().enumerate() {
            if (self.0 >> i) & 1 == 0 {
                out.push('-');
            }
            out.push_str(name);
        }
        out
    }
}

const WORDS_INLINE: usize = 4;

/// A set of valuations over a fixed atom table width.
///
/// Backed by a bit mask: bit `v` is membership of the valuation with index
/// `v`. Sets over up to eight atoms stay inline (no heap).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    n_atoms: u8,
    words: SmallVec<[u64; WORDS_INLINE]>,
}

fn word_count(n_atoms: u8) -> usize {
    let worlds = 1usize << n_atoms;
    worlds.div_ceil(64)
}

impl WorldSet {
    /// Empty set over `n_atoms` atoms.
    pub fn empty(n_atoms: usize) -> Self {
        assert!((1..=MAX_ATOMS).contains(&n_atoms), "atom count {n_atoms} outside 1..={MAX_ATOMS}");
        WorldSet { n_atoms: n_atoms as u8, words: smallvec![0; word_count(n_atoms as u8)] }
    }

    /// The full valuation space over `n_atoms` atoms.
    pub fn full(n_atoms: usize) -> Self {
        let mut set = WorldSet::empty(n_atoms);
        let worlds = 1usize << n_atoms;
        for (i, word) in set.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = worlds.min(lo + 64);
            *word = if hi - lo == 64 { !0 } else { (1u64 << (hi - lo)) - 1 };
        }
        set
    }

    pub fn singleton(n_atoms: usize, v: Valuation) -> Self {
        let mut set = WorldSet::empty(n_atoms);
        set.insert(v);
        set
    }

    pub fn from_worlds<I: IntoIterator<Item = Valuation>>(n_atoms: usize, worlds: I) -> Self {
        let mut set = WorldSet::empty(n_atoms);
        for v in worlds {
            set.insert(v);
        }
        set
    }

    /// Set whose mask, read as an integer, is `mask`. Only for widths where
    /// the mask fits one word (up to six atoms).
    pub fn from_mask(n_atoms: usize, mask: u64) -> Self {
        assert!(n_atoms <= 6, "mask constructor needs the space to fit in one word");
        let mut set = WorldSet::empty(n_atoms);
        let width = 1u32 << n_atoms;
        assert!(width == 64 || mask < (1u64 << width), "mask wider than the valuation space");
        set.words[0] = mask;
        set
    }

    /// The mask as an integer, when it fits one word (up to six atoms).
    pub fn mask(&self) -> u64 {
        assert!(self.n_atoms <= 6, "mask accessor needs the space to fit in one word");
        self.words[0]
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms as usize
    }

    pub fn world_count(&self) -> usize {
        1usize << self.n_atoms
    }

    fn check_width(&self, other: &WorldSet) {
        assert_eq!(self.n_atoms, other.n_atoms, "world sets over different atom tables");
    }

    pub fn contains(&self, v: Valuation) -> bool {
        let i = v.index();
        debug_assert!(i < self.world_count());
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn insert(&mut self, v: Valuation) {
        let i = v.index();
        assert!(i < self.world_count(), "valuation outside the table width");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, v: Valuation) {
        let i = v.index();
        assert!(i < self.world_count(), "valuation outside the table width");
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &WorldSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &WorldSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.check_width(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.check_width(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.check_width(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> WorldSet {
        WorldSet::full(self.n_atoms as usize).difference(self)
    }

    /// Worlds in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = Valuation> + '_ {
        let count = self.world_count();
        (0..count).filter(|i| (self.words[i / 64] >> (i % 64)) & 1 == 1).map(|i| Valuation(i as u16))
    }

    /// Bitstrings of the members, ascending.
    pub fn bitstrings(&self) -> Vec<String> {
        self.iter().map(|v| v.bitstring(self.n_atoms as usize)).collect()
    }

    /// Barred-style rendering, e.g. `{pq, -p-q}`.
    pub fn barred(&self, table: &AtomTable) -> String {
        let parts: Vec<String> = self.iter().map(|v| v.barred(table)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Mask as hex, most significant word first, e.g. `0x9`.
    pub fn hex_mask(&self) -> String {
        let top = self.words.iter().rposition(|w| *w != 0).unwrap_or(0);
        let mut out = format!("0x{:x}", self.words[top]);
        for word in self.words[..top].iter().rev() {
            out.push_str(&format!("{word:016x}"));
        }
        out
    }

    /// Integer comparison of masks (low worlds are low bits); used for
    /// deterministic witness ordering.
    fn mask_cmp(&self, other: &WorldSet) -> std::cmp::Ordering {
        self.check_width(other);
        for (a, b) in self.words.iter().zip(&other.words).rev() {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for WorldSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WorldSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.mask_cmp(other)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.bitstrings().join(", "))
    }
}

/// Formula syntax tree. Connectives in precedence order: `!`, `&`, `|`,
/// `->` (right associative), `<->`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(AtomId),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    // This is a constructor taking ownership, not a negation of `self`, so
    // the `Not` trait would be the wrong shape for it.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Truth under a single valuation.
    pub fn eval(&self, v: Valuation) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(id) => v.truth(*id),
            Formula::Not(f) => !f.eval(v),
            Formula::And(a, b) => a.eval(v) && b.eval(v),
            Formula::Or(a, b) => a.eval(v) || b.eval(v),
            Formula::Implies(a, b) => !a.eval(v) || b.eval(v),
            Formula::Iff(a, b) => a.eval(v) == b.eval(v),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            Formula::True | Formula::False | Formula::Atom(_) => 6,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, table: &AtomTable, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_prec(f, table, 0)?;
            return write!(f, ")");
        }
        match self {
            Formula::True => write!(f, "T"),
            Formula::False => write!(f, "F"),
            Formula::Atom(id) => write!(f, "{}", table.name(*id)),
            Formula::Not(g) => {
                write!(f, "!")?;
                g.fmt_prec(f, table, 5)
            }
            Formula::And(a, b) => {
                a.fmt_prec(f, table, 4)?;
                write!(f, " & ")?;
                b.fmt_prec(f, table, 4)
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, table, 3)?;
                write!(f, " | ")?;
                b.fmt_prec(f, table, 3)
            }
            Formula::Implies(a, b) => {
                a.fmt_prec(f, table, 3)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, table, 2)
            }
            Formula::Iff(a, b) => {
                a.fmt_prec(f, table, 2)?;
                write!(f, " <-> ")?;
                b.fmt_prec(f, table, 1)
            }
        }
    }

    /// Render against a table; parentheses are minimal.
    pub fn display<'a>(&'a self, table: &'a AtomTable) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Formula, &'a AtomTable);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_prec(f, self.1, 0)
            }
        }
        D(self, table)
    }
}

/// Model set of a formula over the table's full valuation space.
pub fn models(f: &Formula, table: &AtomTable) -> WorldSet {
    assert!(!table.is_empty(), "semantic operations need at least one atom");
    let n = table.len();
    match f {
        Formula::True => WorldSet::full(n),
        Formula::False => WorldSet::empty(n),
        Formula::Atom(id) => {
            WorldSet::from_worlds(n, table.valuations().filter(|v| v.truth(*id)))
        }
        Formula::Not(g) => models(g, table).complement(),
        Formula::And(a, b) => models(a, table).intersection(&models(b, table)),
        Formula::Or(a, b) => models(a, table).union(&models(b, table)),
        Formula::Implies(a, b) => models(a, table).complement().union(&models(b, table)),
        Formula::Iff(a, b) => {
            let ma = models(a, table);
            let mb = models(b, table);
            ma.intersection(&mb).union(&ma.complement().intersection(&mb.complement()))
        }
    }
}

/// Sentence membership in a theory given semantically: `alpha` holds in the
/// theory with model set `k` iff every `k`-world satisfies it.
pub fn holds_in_theory(k: &WorldSet, alpha: &WorldSet) -> bool {
    k.is_subset_of(alpha)
}

/// Canonical formula of a world set: the full disjunctive normal form, one
/// minterm per world in ascending index order, `F` for the empty set.
pub fn canonical_formula(ws: &WorldSet, table: &AtomTable) -> Formula {
    assert_eq!(ws.n_atoms(), table.len(), "world set over a different atom table");
    let minterm = |v: Valuation| {
        let mut lits = (0..table.len()).map(|i| {
            let atom = Formula::Atom(AtomId(i as u8));
            if v.truth(AtomId(i as u8)) {
                atom
            } else {
                Formula::not(atom)
            }
        });
        let first = lits.next().expect("tables are never empty");
        lits.fold(first, Formula::and)
    };
    let mut worlds = ws.iter();
    match worlds.next() {
        None => Formula::False,
        Some(first) => worlds.fold(minterm(first), |acc, v| Formula::or(acc, minterm(v))),
    }
}

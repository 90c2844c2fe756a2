//! The textual form of a belief state, as read and written by the CLI.
//!
//! A problem file is a handful of `key: value` lines. `atoms` fixes the
//! vocabulary, `L`/`U` give the two rank functions keyed by bitstring, and
//! the optional `belief` and `class` lines declare what the ranks are
//! supposed to mean so the loader can hold the file to it. `#` starts a
//! comment anywhere on a line. One file holds exactly one belief state;
//! sentences to revise by arrive separately.
//!
//! ```text
//! atoms: p,q
//! belief: !p & !q
//! class: bob
//! L: 11=2, 10=3, 01=4, 00=0
//! U: 11=3, 10=1, 01=0, 00=4
//! ```
//!
//! Parse errors (malformed syntax) and invariant errors (well-formed text
//! describing an invalid state) are distinct variants because the CLI maps
//! them to different exit codes.

use std::fmt::Write as _;

use thiserror::Error;

use crate::logic::{canonical_formula, models, parse_formula, AtomTable, Valuation, WorldSet};
use crate::orders::RankedInterpretation;
use crate::revision::{BeliefState, OperatorClass};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProblemError {
    #[error("line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("{detail}")]
    Invariant { detail: String },
}

impl ProblemError {
    fn parse(line: usize, detail: impl Into<String>) -> Self {
        ProblemError::Parse { line, detail: detail.into() }
    }

    fn invariant(detail: impl Into<String>) -> Self {
        ProblemError::Invariant { detail: detail.into() }
    }
}

/// A parsed problem file, syntax resolved but semantics not yet enforced.
/// [`ProblemFile::state`] performs the semantic checks: normality, the
/// declared class, and agreement of the declared belief formula with the
/// belief set the ranks induce.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    table: AtomTable,
    interp: RankedInterpretation,
    belief: Option<WorldSet>,
    class: Option<OperatorClass>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, ProblemError> {
        let mut atoms: Option<(usize, &str)> = None;
        let mut belief: Option<(usize, &str)> = None;
        let mut class: Option<(usize, &str)> = None;
        let mut lower: Option<(usize, &str)> = None;
        let mut upper: Option<(usize, &str)> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| ProblemError::parse(line, "expected `key: value`"))?;
            let slot = match key.trim() {
                "atoms" => &mut atoms,
                "belief" => &mut belief,
                "class" => &mut class,
                "L" => &mut lower,
                "U" => &mut upper,
                other => {
                    return Err(ProblemError::parse(
                        line,
                        format!("unknown key `{other}` (expected atoms, belief, class, L or U)"),
                    ))
                }
            };
            if slot.is_some() {
                return Err(ProblemError::parse(line, format!("duplicate `{}` line", key.trim())));
            }
            *slot = Some((line, value.trim()));
        }

        let (atoms_line, atoms_text) =
            atoms.ok_or_else(|| ProblemError::parse(0, "missing `atoms` line"))?;
        let table = AtomTable::new(atoms_text.split(',').map(str::trim))
            .map_err(|e| ProblemError::parse(atoms_line, e.to_string()))?;
        let n = table.len();

        let (l_line, l_text) =
            lower.ok_or_else(|| ProblemError::parse(0, "missing `L` line"))?;
        let (u_line, u_text) =
            upper.ok_or_else(|| ProblemError::parse(0, "missing `U` line"))?;
        let lower_ranks = parse_ranks(l_text, n, l_line)?;
        let upper_ranks = parse_ranks(u_text, n, u_line)?;
        let interp = RankedInterpretation::new(n, lower_ranks, upper_ranks)
            .expect("rank parsing fills every world exactly once");

        let belief = match belief {
            None => None,
            Some((line, text)) => {
                let f = parse_formula(text, &table)
                    .map_err(|e| ProblemError::parse(line, e.to_string()))?;
                Some(models(&f, &table))
            }
        };
        let class = match class {
            None => None,
            Some((line, text)) => Some(
                text.to_ascii_lowercase()
                    .parse::<OperatorClass>()
                    .map_err(|e| ProblemError::parse(line, e))?,
            ),
        };

        Ok(ProblemFile { table, interp, belief, class })
    }

    pub fn table(&self) -> &AtomTable {
        &self.table
    }

    pub fn interpretation(&self) -> &RankedInterpretation {
        &self.interp
    }

    pub fn declared_class(&self) -> Option<OperatorClass> {
        self.class
    }

    pub fn declared_belief(&self) -> Option<&WorldSet> {
        self.belief.as_ref()
    }

    /// Build the belief state the file describes, enforcing what it
    /// declares. Files without a `class` line get the universally valid
    /// biorder reading.
    pub fn state(&self) -> Result<BeliefState, ProblemError> {
        if let Some(b) = &self.belief {
            if b.is_empty() {
                return Err(ProblemError::invariant("declared belief formula is inconsistent"));
            }
        }
        let class = self.class.unwrap_or(OperatorClass::Bob);
        let state = BeliefState::new(self.interp.clone(), class)
            .map_err(|e| ProblemError::invariant(e.to_string()))?;
        if let Some(b) = &self.belief {
            if b != state.belief_models() {
                return Err(ProblemError::invariant(format!(
                    "declared belief has models {} but the ranks anchor on {}",
                    b.barred(&self.table),
                    state.belief_models().barred(&self.table)
                )));
            }
        }
        Ok(state)
    }
}

/// Serialize a belief state in the file syntax, with the belief line spelt
/// as the canonical formula of its models. Rendered text parses back to an
/// equal state.
pub fn render(state: &BeliefState, table: &AtomTable) -> String {
    let n = table.len();
    let interp = state.interpretation();
    let belief = canonical_formula(state.belief_models(), table);
    let mut out = String::new();
    let names: Vec<&str> = table.names().collect();
    writeln!(out, "atoms: {}", names.join(",")).unwrap();
    writeln!(out, "belief: {}", belief.display(table)).unwrap();
    writeln!(out, "class: {}", state.class()).unwrap();
    let row = |f: &dyn Fn(Valuation) -> u32| {
        let entries: Vec<String> =
            display_order(n).map(|v| format!("{}={}", v.bitstring(n), f(v))).collect();
        entries.join(", ")
    };
    writeln!(out, "L: {}", row(&|v| interp.lower(v))).unwrap();
    writeln!(out, "U: {}", row(&|v| interp.upper(v))).unwrap();
    out
}

/// Worlds in the order rank lines conventionally list them: bitstring
/// descending, all-true first.
pub fn display_order(n_atoms: usize) -> impl Iterator<Item = Valuation> {
    let mut worlds: Vec<Valuation> = WorldSet::full(n_atoms).iter().collect();
    worlds.sort_by_key(|v| std::cmp::Reverse(v.bitstring(n_atoms)));
    worlds.into_iter()
}

fn parse_ranks(text: &str, n_atoms: usize, line: usize) -> Result<Vec<u32>, ProblemError> {
    let mut ranks: Vec<Option<u32>> = vec![None; 1 << n_atoms];
    for entry in text.split(',') {
        let entry = entry.trim();
        let (bits, rank) = entry.split_once('=').ok_or_else(|| {
            ProblemError::parse(line, format!("expected `bits=rank`, got `{entry}`"))
        })?;
        let v = Valuation::from_bitstring(bits.trim(), n_atoms).ok_or_else(|| {
            ProblemError::parse(
                line,
                format!("`{}` is not a {}-atom bitstring", bits.trim(), n_atoms),
            )
        })?;
        let r: u32 = rank.trim().parse().map_err(|_| {
            ProblemError::parse(line, format!("`{}` is not a rank", rank.trim()))
        })?;
        if ranks[v.index()].replace(r).is_some() {
            return Err(ProblemError::parse(
                line,
                format!("world {} listed twice", bits.trim()),
            ));
        }
    }
    if let Some(i) = ranks.iter().position(Option::is_none) {
        return Err(ProblemError::parse(
            line,
            format!("missing rank for world {}", Valuation(i as u16).bitstring(n_atoms)),
        ));
    }
    Ok(ranks.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::RankedInterpretation;

    const BIORDER_FILE: &str = "\
# an unstable agent: p and q each flip the whole picture
atoms: p,q
belief: !p & !q
class: bob
L: 11=2, 10=3, 01=4, 00=0
U: 11=3, 10=1, 01=0, 00=4
";

    fn pq() -> AtomTable {
        AtomTable::new(["p", "q"]).unwrap()
    }

    #[test]
    fn parses_the_biorder_example() {
        let file = ProblemFile::parse(BIORDER_FILE).unwrap();
        let expected = RankedInterpretation::from_pairs(
            &pq(),
            [("11", 2, 3), ("10", 3, 1), ("01", 4, 0), ("00", 0, 4)],
        )
        .unwrap();
        assert_eq!(*file.interpretation(), expected);
        assert_eq!(file.declared_class(), Some(OperatorClass::Bob));
        let state = file.state().unwrap();
        assert_eq!(state.belief_models().bitstrings(), ["00"]);
    }

    #[test]
    fn rendering_round_trips() {
        let file = ProblemFile::parse(BIORDER_FILE).unwrap();
        let state = file.state().unwrap();
        let text = render(&state, file.table());
        let back = ProblemFile::parse(&text).unwrap();
        assert_eq!(back.state().unwrap(), state);
        assert_eq!(back.declared_class(), Some(OperatorClass::Bob));
        assert_eq!(back.declared_belief(), Some(state.belief_models()));
    }

    #[test]
    fn lines_may_come_in_any_order_and_carry_comments() {
        let text = "\
U: 11=3, 10=1, 01=0, 00=4  # upper first
L: 11=2, 10=3, 01=4, 00=0
atoms: p , q
";
        let file = ProblemFile::parse(text).unwrap();
        assert_eq!(file.table().names().collect::<Vec<_>>(), ["p", "q"]);
        assert!(file.declared_class().is_none());
        assert_eq!(file.state().unwrap().class(), OperatorClass::Bob);
    }

    #[test]
    fn syntax_problems_name_the_line() {
        let cases: &[(&str, usize, &str)] = &[
            ("atoms: p,q\nnoise\n", 2, "expected `key: value`"),
            ("atoms: p,q\nspin: up\n", 2, "unknown key `spin`"),
            (
                "atoms: p,q\nL: 11=0, 10=0, 01=0, 00=0\nL: 11=1, 10=1, 01=1, 00=1\n",
                3,
                "duplicate `L` line",
            ),
            ("atoms: p,q\nL: 11=0, 10=0, 01=0\nU: 11=0, 10=0, 01=0, 00=0\n", 2, "missing rank"),
            ("atoms: p,q\nL: 11=0, 10=0, 01=0, 00=0, 00=1\nU: 11=0, 10=0, 01=0, 00=0\n", 2, "listed twice"),
            ("atoms: p,q\nL: 111=0, 10=0, 01=0, 00=0\nU: 11=0, 10=0, 01=0, 00=0\n", 2, "bitstring"),
            ("atoms: p,q\nL: 11=x, 10=0, 01=0, 00=0\nU: 11=0, 10=0, 01=0, 00=0\n", 2, "not a rank"),
            ("atoms: p,q\nbelief: p & (q |\nL: 11=0, 10=0, 01=0, 00=0\nU: 11=0, 10=0, 01=0, 00=0\n", 2, ""),
        ];
        for (text, line, needle) in cases {
            match ProblemFile::parse(text) {
                Err(ProblemError::Parse { line: l, detail }) => {
                    assert_eq!(l, *line, "{text}");
                    assert!(detail.contains(needle), "{detail} missing {needle}");
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn missing_required_lines_are_parse_errors() {
        for text in ["belief: p\n", "atoms: p,q\nU: 11=0, 10=0, 01=0, 00=0\n"] {
            assert!(matches!(ProblemFile::parse(text), Err(ProblemError::Parse { .. })));
        }
    }

    #[test]
    fn semantic_problems_are_invariant_errors() {
        // No world at lower rank zero.
        let text = "atoms: p,q\nL: 11=1, 10=1, 01=1, 00=1\nU: 11=0, 10=0, 01=0, 00=0\n";
        let err = ProblemFile::parse(text).unwrap().state().unwrap_err();
        assert!(matches!(err, ProblemError::Invariant { .. }), "{err}");

        // Belief line disagreeing with the anchor of the ranks.
        let text = BIORDER_FILE.replace("!p & !q", "p & q");
        let err = ProblemFile::parse(&text).unwrap().state().unwrap_err();
        assert!(err.to_string().contains("anchor"), "{err}");

        // Inconsistent belief line.
        let text = BIORDER_FILE.replace("!p & !q", "p & !p");
        let err = ProblemFile::parse(&text).unwrap().state().unwrap_err();
        assert!(err.to_string().contains("inconsistent"), "{err}");

        // A declared class the ranks do not inhabit.
        let text = BIORDER_FILE.replace("class: bob", "class: iob");
        let err = ProblemFile::parse(&text).unwrap().state().unwrap_err();
        assert!(err.to_string().contains("iob"), "{err}");
    }

    #[test]
    fn class_names_are_case_insensitive() {
        let text = BIORDER_FILE.replace("class: bob", "class: BOB");
        let file = ProblemFile::parse(&text).unwrap();
        assert_eq!(file.declared_class(), Some(OperatorClass::Bob));
    }

    #[test]
    fn display_order_is_bitstring_descending() {
        let order: Vec<String> = display_order(2).map(|v| v.bitstring(2)).collect();
        assert_eq!(order, ["11", "10", "01", "00"]);
        let order3: Vec<String> = display_order(3).map(|v| v.bitstring(3)).collect();
        assert_eq!(order3[0], "111");
        assert_eq!(order3[7], "000");
    }
}

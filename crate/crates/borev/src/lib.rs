//! Belief revision over interval orders and biorders.
//!
//! A belief state is a ranked interpretation: every propositional valuation
//! gets a lower and an upper rank, and `v` is at least as plausible as `u`
//! when `lower(v) <= upper(u)`. Zero-length intervals give classical total
//! preorders, `lower <= upper` everywhere gives interval orders, and
//! unconstrained ranks give biorders, where a world can be *dissonant*
//! (strictly above its own interval) and revision can come out inconsistent
//! even for a consistent input.
//!
//! The crate provides:
//!
//! * [`logic`]: atoms, valuations, world sets and a small formula language;
//! * [`orders`]: relations, ranked interpretations, order-theoretic
//!   predicates, compression, and transforms into interval orders and
//!   sphere-style rankings;
//! * [`revision`]: the revision operator itself plus sentence classification
//!   (destabilising, irreconcilable, precarious);
//! * [`npr`]: the non-prioritised wrapper, credibility sets and
//!   credibility-limited structures;
//! * [`postulates`]: a model-level postulate checker with named suites and
//!   deterministic witnesses;
//! * [`canonical`]: black-box extraction of the canonical interpretation of
//!   an operator, with round-trip verification and classification;
//! * [`problem`]: the text format used by the CLI and the test corpus.
//!
//! ```
//! use borev::logic::{models, parse_formula, AtomTable};
//! use borev::orders::RankedInterpretation;
//! use borev::revision::{revise, BeliefState, OperatorClass};
//!
//! let table = AtomTable::new(["p", "q"]).unwrap();
//! // K = Cn(!p & !q), with pq one step behind and the two mixed worlds dissonant.
//! let interp = RankedInterpretation::from_pairs(
//!     &table,
//!     [("00", 0, 4), ("10", 3, 1), ("01", 4, 0), ("11", 2, 3)],
//! )
//! .unwrap();
//! let state = BeliefState::new(interp, OperatorClass::Bob).unwrap();
//!
//! let alpha = parse_formula("p & q", &table).unwrap();
//! let outcome = revise(&state, &models(&alpha, &table));
//! assert_eq!(outcome.models.bitstrings(), ["11"]);
//!
//! let beta = parse_formula("p", &table).unwrap();
//! assert!(!revise(&state, &models(&beta, &table)).consistent());
//! ```

pub mod canonical;
pub mod logic;
pub mod npr;
pub mod orders;
pub mod postulates;
pub mod problem;
pub mod revision;

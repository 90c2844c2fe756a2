//! Python bindings: a `State` class wrapping a belief state together with
//! the atom table its formulas are written against, plus the random
//! generator. Everything crosses the boundary as strings (formulas and
//! world bitstrings), so no engine types leak into Python.

use borev::canonical::{classify_black_box, extract_canonical};
use borev::logic::{canonical_formula, models, parse_formula, AtomTable, WorldSet};
use borev::npr::{is_credible, npr_revise, NprState};
use borev::orders::{random_interpretation, GenClass};
use borev::postulates::{check_suite, CheckMode, OperatorUnderTest, Suite};
use borev::problem::{render, ProblemFile};
use borev::revision::{
    classify_operator_class, is_destabilising, is_irreconcilable, is_precarious, revise,
    strongest_class, BeliefState, OperatorClass,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A belief state over named atoms. Construct it from problem-file text
/// with `State.parse` or from the `random_state` generator.
#[pyclass]
struct State {
    table: AtomTable,
    state: BeliefState,
}

impl State {
    fn sentence(&self, formula: &str) -> PyResult<WorldSet> {
        let f = parse_formula(formula, &self.table).map_err(to_value_error)?;
        Ok(models(&f, &self.table))
    }

    fn formula_of(&self, set: &WorldSet) -> String {
        canonical_formula(set, &self.table).display(&self.table).to_string()
    }
}

#[pymethods]
impl State {
    /// Parse a problem file (the same syntax the CLI reads).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<State> {
        let pf = ProblemFile::parse(text).map_err(to_value_error)?;
        let state = pf.state().map_err(to_value_error)?;
        Ok(State { table: pf.table().clone(), state })
    }

    #[getter]
    fn atoms(&self) -> Vec<String> {
        self.table.names().map(str::to_string).collect()
    }

    /// Named with the trailing underscore Python uses for keyword clashes.
    #[getter]
    fn class_(&self) -> String {
        self.state.class().name().to_string()
    }

    /// The belief set as a formula.
    fn belief(&self) -> String {
        self.formula_of(self.state.belief_models())
    }

    /// Models of the belief set as bitstrings, first atom leftmost.
    fn belief_models(&self) -> Vec<String> {
        self.state.belief_models().bitstrings()
    }

    /// Models of the revised belief set; empty means the absurd outcome.
    fn revise(&self, formula: &str) -> PyResult<Vec<String>> {
        let a = self.sentence(formula)?;
        Ok(revise(&self.state, &a).models.bitstrings())
    }

    /// The revised belief set as a formula.
    fn revise_formula(&self, formula: &str) -> PyResult<String> {
        let a = self.sentence(formula)?;
        Ok(self.formula_of(&revise(&self.state, &a).models))
    }

    /// Non-prioritised revision: `(models, retained)`, where `retained`
    /// means the input was incredible and the old beliefs were kept.
    fn npr_revise(&self, formula: &str) -> PyResult<(Vec<String>, bool)> {
        let a = self.sentence(formula)?;
        let nstate = NprState::new(self.state.clone());
        let retained = !is_credible(&nstate, &a);
        Ok((npr_revise(&nstate, &a).bitstrings(), retained))
    }

    fn is_destabilising(&self, formula: &str) -> PyResult<bool> {
        Ok(is_destabilising(&self.state, &self.sentence(formula)?))
    }

    fn is_irreconcilable(&self, formula: &str) -> PyResult<bool> {
        Ok(is_irreconcilable(&self.state, &self.sentence(formula)?))
    }

    fn is_precarious(&self, formula: &str) -> PyResult<bool> {
        Ok(is_precarious(&self.state, &self.sentence(formula)?))
    }

    /// Run a postulate suite. Exhaustive by default; pass `seed` and
    /// `count` for sampled mode. Suites ending in `-NPR` wrap the state
    /// in the non-prioritised operator, as the CLI does.
    #[pyo3(signature = (suite, seed=None, count=None))]
    fn check<'py>(
        &self,
        py: Python<'py>,
        suite: &str,
        seed: Option<u64>,
        count: Option<usize>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let suite: Suite = suite.parse().map_err(to_value_error)?;
        let non_prioritised = matches!(suite, Suite::BobNpr | Suite::ZtbobNpr | Suite::TbobNpr);
        let op = if non_prioritised {
            OperatorUnderTest::from_npr(&NprState::new(self.state.clone()))
        } else {
            OperatorUnderTest::from_revision(&self.state)
        };
        let mode = match (seed, count) {
            (None, None) => CheckMode::Exhaustive,
            (s, c) => CheckMode::Sampled { seed: s.unwrap_or(0), count: c.unwrap_or(256) },
        };
        let reports = check_suite(&op, suite, mode).map_err(to_value_error)?;

        let dict = PyDict::new(py);
        dict.set_item("suite", suite.name())?;
        dict.set_item("all_hold", reports.iter().all(|r| r.verdict.ok()))?;
        let mut failures = Vec::new();
        let witnesses = PyDict::new(py);
        for report in &reports {
            if !report.verdict.ok() {
                failures.push(report.postulate.code().to_string());
                if let Some(w) = &report.witness {
                    let alpha = self.formula_of(&w.alpha);
                    let beta = w.beta.as_ref().map(|b| self.formula_of(b));
                    witnesses.set_item(report.postulate.code(), (alpha, beta))?;
                }
            }
        }
        dict.set_item("failures", failures)?;
        dict.set_item("witnesses", witnesses)?;
        Ok(dict)
    }

    /// Extract the canonical interpretation of this state's operator and
    /// wrap it as a new state under its most specific class.
    fn canonical(&self) -> PyResult<State> {
        let op = OperatorUnderTest::from_revision(&self.state);
        let trace = extract_canonical(&op).map_err(to_value_error)?;
        let class = strongest_class(&trace.result);
        let state = BeliefState::new(trace.result, class).map_err(to_value_error)?;
        Ok(State { table: self.table.clone(), state })
    }

    /// Classes the declared ranks fall into.
    fn classes(&self) -> Vec<String> {
        classify_operator_class(self.state.interpretation())
            .iter()
            .map(|c| c.name().to_string())
            .collect()
    }

    /// Classes observed by treating the operator as a black box.
    fn black_box_classes(&self) -> PyResult<Vec<String>> {
        let op = OperatorUnderTest::from_revision(&self.state);
        let observed = classify_black_box(&op).map_err(to_value_error)?;
        Ok(observed.classes.iter().map(|c| c.name().to_string()).collect())
    }

    /// Serialise back to problem-file text.
    fn render(&self) -> String {
        render(&self.state, &self.table)
    }

    fn __repr__(&self) -> String {
        format!(
            "<borev.State atoms={} class={} K={}>",
            self.atoms().join(","),
            self.state.class().name(),
            self.belief()
        )
    }
}

/// Generate a random state anchored on `anchor`, mirroring the CLI
/// `random` command. `class_` is one of bob, ztbob, tbob, iob,
/// total-preorder.
#[pyfunction]
#[pyo3(signature = (atoms, anchor, class_="bob", max_rank=4, seed=0))]
fn random_state(atoms: &str, anchor: &str, class_: &str, max_rank: u32, seed: u64) -> PyResult<State> {
    let table = AtomTable::new(atoms.split(',').map(str::trim)).map_err(to_value_error)?;
    let anchor_models = models(&parse_formula(anchor, &table).map_err(to_value_error)?, &table);
    let (gen, op_class) = match class_ {
        "bob" => (GenClass::Biorder, OperatorClass::Bob),
        "ztbob" => (GenClass::ZTransitive, OperatorClass::Ztbob),
        "tbob" => (GenClass::Transitive, OperatorClass::Tbob),
        "iob" => (GenClass::Interval, OperatorClass::Iob),
        "total-preorder" => (GenClass::TotalPreorder, OperatorClass::Tbob),
        other => return Err(PyValueError::new_err(format!("unknown class {other:?}"))),
    };
    let interp = random_interpretation(table.len(), &anchor_models, gen, max_rank, seed)
        .map_err(to_value_error)?;
    let state = BeliefState::new(interp, op_class).map_err(to_value_error)?;
    Ok(State { table, state })
}

#[pymodule]
fn borev_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<State>()?;
    m.add_function(wrap_pyfunction!(random_state, m)?)?;
    Ok(())
}

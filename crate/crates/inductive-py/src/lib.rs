//! Python bindings: the main types and operations of the inductive
//! library as an extension module.
//!
//! ```python
//! import inductive_py as il
//!
//! h = il.History(2, 1).append(0, 0).append(0, 0).append(0, 0)
//! rule = il.carnap_rule([1.0, 1.0])
//! rule.predict(h)                      # [0.8, 0.2]
//!
//! a = il.analogical_rule([[1.0, 1.0]] * 3, beta=0.5, gamma=0.5)
//! a.audit("partial-exchangeability")   # {'passed': False, ...}
//! ```

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use inductive::analogy::{
    check_beta_positivity as core_beta_positivity, limiting_predictive as core_limiting,
    urn_simulate as core_urn_simulate, AnalogicalRule, AnalogyParams,
};
use inductive::carnap::{
    dirichlet_mc_predictive as core_mc, polya_sequence_probability as core_polya, CarnapParams,
    CarnapRule,
};
use inductive::history::TypedHistory;
use inductive::mixtures::{
    check_on_manifold as core_on_manifold, maher_sequence_probability as core_maher_prob,
    mixture_posterior as core_mixture_posterior, wright_manifold_point as core_wright, MaherParams,
    MaherRule, MixtureModel, SkyrmsRule,
};
use inductive::rule::{joint_probability as core_joint, predictive_from_joint};
use inductive::stream::simulate_trace;
use inductive::symmetry::{
    check_exchangeability, check_future_type_independence,
    check_generalized_partial_exchangeability, check_partial_exchangeability, check_sufficientness,
    EnumerationBudget, SufficientnessVariant, SymmetryReport,
};
use inductive::{InductiveError, PredictiveRule, SimplexVector};

fn py_err(e: InductiveError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An immutable record of (outcome, type) observations. `append` returns
/// a new history; the original is unchanged.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct History {
    inner: TypedHistory,
}

#[pymethods]
impl History {
    #[new]
    #[pyo3(signature = (outcome_count, type_count=1))]
    fn new(outcome_count: usize, type_count: usize) -> PyResult<Self> {
        Ok(Self {
            inner: TypedHistory::empty(outcome_count, type_count).map_err(py_err)?,
        })
    }

    /// Builds a history from parallel outcome and type index sequences.
    #[staticmethod]
    #[pyo3(signature = (outcome_count, type_count, outcomes, types))]
    fn from_sequences(
        outcome_count: usize,
        type_count: usize,
        outcomes: Vec<usize>,
        types: Vec<usize>,
    ) -> PyResult<Self> {
        Ok(Self {
            inner: TypedHistory::from_indices(outcome_count, type_count, outcomes, types)
                .map_err(py_err)?,
        })
    }

    /// A new history extended by one observation.
    fn append(&self, outcome: usize, ty: usize) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.with_observation(outcome, ty).map_err(py_err)?,
        })
    }

    fn outcomes(&self) -> Vec<usize> {
        self.inner.outcomes().to_vec()
    }

    fn types(&self) -> Vec<usize> {
        self.inner.types().to_vec()
    }

    #[getter]
    fn outcome_count(&self) -> usize {
        self.inner.outcome_count()
    }

    #[getter]
    fn type_count(&self) -> usize {
        self.inner.type_count()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "History(len={}, outcomes={:?}, types={:?})",
            self.inner.len(),
            self.inner.outcomes(),
            self.inner.types()
        )
    }
}

/// A predictive rule: history and next type in, outcome probabilities
/// out. Construct via `carnap_rule`, `analogical_rule`, `skyrms_rule`,
/// or `maher_rule`.
#[pyclass(frozen)]
struct Rule {
    name: String,
    inner: Box<dyn PredictiveRule>,
}

fn report_to_dict<'py>(py: Python<'py>, report: &SymmetryReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("postulate", &report.postulate)?;
    d.set_item("tolerance", report.tolerance)?;
    d.set_item("max_violation", report.max_violation)?;
    d.set_item("passed", report.passed)?;
    d.set_item("comparisons", report.comparisons)?;
    let witnesses = PyList::empty(py);
    for witness in &report.witnesses {
        let w = PyDict::new(py);
        let (left, right) = witness.recorded();
        w.set_item("violation", witness.violation())?;
        w.set_item("left_probability", left)?;
        w.set_item("right_probability", right)?;
        witnesses.append(w)?;
    }
    d.set_item("witnesses", witnesses)?;
    d.set_item("text", report.render_text())?;
    Ok(d)
}

#[pymethods]
impl Rule {
    #[getter]
    fn outcome_count(&self) -> usize {
        self.inner.outcome_count()
    }

    #[getter]
    fn type_count(&self) -> usize {
        self.inner.type_count()
    }

    /// Predictive distribution for the next outcome.
    #[pyo3(signature = (history, next_type=0))]
    fn predict(&self, history: &History, next_type: usize) -> PyResult<Vec<f64>> {
        Ok(self
            .inner
            .predict(&history.inner, next_type)
            .map_err(py_err)?
            .into_values())
    }

    /// The same distribution computed as a ratio of joints; agrees with
    /// `predict` for any rule satisfying the contract.
    #[pyo3(signature = (history, next_type=0))]
    fn predict_from_joint(&self, history: &History, next_type: usize) -> PyResult<Vec<f64>> {
        Ok(
            predictive_from_joint(self.inner.as_ref(), &history.inner, next_type)
                .map_err(py_err)?
                .into_values(),
        )
    }

    /// Chain-rule probability of an outcome sequence given its types.
    fn joint_probability(&self, outcomes: Vec<usize>, types: Vec<usize>) -> PyResult<f64> {
        core_joint(self.inner.as_ref(), &outcomes, &types).map_err(py_err)
    }

    /// Samples a trajectory from the rule's own observation process,
    /// returning (outcomes, per-step predictions).
    fn simulate(&self, types: Vec<usize>, seed: u64) -> PyResult<(Vec<usize>, Vec<Vec<f64>>)> {
        let trace = simulate_trace(self.inner.as_ref(), &types, seed).map_err(py_err)?;
        let outcomes = trace.steps.iter().map(|s| s.outcome).collect();
        let predictions = trace
            .steps
            .into_iter()
            .map(|s| s.prediction.into_values())
            .collect();
        Ok((outcomes, predictions))
    }

    /// Runs one symmetry check and returns its report as a dict. Check
    /// names: exchangeability, partial-exchangeability,
    /// generalized-partial-exchangeability, sufficientness-classic,
    /// sufficientness-modified, future-type-independence.
    #[pyo3(signature = (check, max_len=4, tolerance=1e-10))]
    fn audit<'py>(
        &self,
        py: Python<'py>,
        check: &str,
        max_len: usize,
        tolerance: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let rule = self.inner.as_ref();
        let k = rule.outcome_count();
        let budget = EnumerationBudget::default();
        let report = match check {
            "exchangeability" => check_exchangeability(rule, k, max_len, tolerance, &budget),
            "partial-exchangeability" => {
                check_partial_exchangeability(rule, k, max_len, tolerance, &budget)
            }
            "generalized-partial-exchangeability" => {
                check_generalized_partial_exchangeability(rule, k, max_len, tolerance, &budget)
            }
            "sufficientness-classic" => check_sufficientness(
                rule,
                SufficientnessVariant::Classic,
                k,
                max_len,
                tolerance,
                &budget,
            ),
            "sufficientness-modified" => check_sufficientness(
                rule,
                SufficientnessVariant::Modified,
                k,
                max_len,
                tolerance,
                &budget,
            ),
            "future-type-independence" => {
                check_future_type_independence(rule, k, max_len, tolerance, &budget)
            }
            other => return Err(PyValueError::new_err(format!("unknown check {other:?}"))),
        }
        .map_err(py_err)?;
        report_to_dict(py, &report)
    }

    fn __repr__(&self) -> String {
        format!(
            "Rule({}, outcomes={}, types={})",
            self.name,
            self.inner.outcome_count(),
            self.inner.type_count()
        )
    }
}

/// The basic system with prior weights `alpha`, optionally lifted to more
/// than one (ignored) type.
#[pyfunction]
#[pyo3(signature = (alpha, type_count=1))]
fn carnap_rule(alpha: Vec<f64>, type_count: usize) -> PyResult<Rule> {
    let params = CarnapParams::new(alpha).map_err(py_err)?;
    let rule = CarnapRule::with_type_count(params, type_count).map_err(py_err)?;
    Ok(Rule {
        name: "carnap".into(),
        inner: Box::new(rule),
    })
}

fn alpha_matrix(alpha: Vec<Vec<f64>>) -> PyResult<Vec<[f64; 2]>> {
    alpha
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() == 2 {
                Ok([row[0], row[1]])
            } else {
                Err(PyValueError::new_err(format!(
                    "alpha row {i} must have exactly 2 entries (one per type)"
                )))
            }
        })
        .collect()
}

/// The two-type analogical rule with prior matrix `alpha` (row per
/// outcome, column per type) and analogy weights `beta`, `gamma`.
#[pyfunction]
#[pyo3(signature = (alpha, beta, gamma, self_analogy_bound=false))]
fn analogical_rule(
    alpha: Vec<Vec<f64>>,
    beta: f64,
    gamma: f64,
    self_analogy_bound: bool,
) -> PyResult<Rule> {
    let rows = alpha_matrix(alpha)?;
    let params = if self_analogy_bound {
        AnalogyParams::with_self_analogy_bound(rows, beta, gamma)
    } else {
        AnalogyParams::new(rows, beta, gamma)
    }
    .map_err(py_err)?;
    Ok(Rule {
        name: "analogical".into(),
        inner: Box::new(AnalogicalRule::new(params)),
    })
}

fn mixture(components: Vec<Vec<f64>>, weights: Option<Vec<f64>>) -> PyResult<MixtureModel> {
    let components: Vec<CarnapParams> = components
        .into_iter()
        .map(|alpha| CarnapParams::new(alpha).map_err(py_err))
        .collect::<PyResult<_>>()?;
    match weights {
        Some(w) => MixtureModel::new(components, SimplexVector::new(w).map_err(py_err)?),
        None => MixtureModel::uniform(components),
    }
    .map_err(py_err)
}

/// A finite mixture of basic systems with the given prior component
/// weights (uniform when omitted).
#[pyfunction]
#[pyo3(signature = (components, weights=None))]
fn skyrms_rule(components: Vec<Vec<f64>>, weights: Option<Vec<f64>>) -> PyResult<Rule> {
    Ok(Rule {
        name: "skyrms".into(),
        inner: Box::new(SkyrmsRule::new(mixture(components, weights)?)),
    })
}

/// The two-family Q-predicate mixture system.
#[pyfunction]
#[pyo3(signature = (weight_dependent, alpha_joint, alpha_v, alpha_w))]
fn maher_rule(
    weight_dependent: f64,
    alpha_joint: Vec<f64>,
    alpha_v: Vec<f64>,
    alpha_w: Vec<f64>,
) -> PyResult<Rule> {
    let params = MaherParams::new(
        weight_dependent,
        CarnapParams::new(alpha_joint).map_err(py_err)?,
        CarnapParams::new(alpha_v).map_err(py_err)?,
        CarnapParams::new(alpha_w).map_err(py_err)?,
    )
    .map_err(py_err)?;
    Ok(Rule {
        name: "maher".into(),
        inner: Box::new(MaherRule::new(params)),
    })
}

/// Closed-form probability of an outcome sequence under the basic system
/// (rising-factorial form).
#[pyfunction]
fn polya_sequence_probability(outcomes: Vec<usize>, alpha: Vec<f64>) -> PyResult<f64> {
    let params = CarnapParams::new(alpha).map_err(py_err)?;
    core_polya(&outcomes, &params).map_err(py_err)
}

/// Posterior weights of a mixture of basic systems after a sequence.
#[pyfunction]
#[pyo3(signature = (components, outcomes, weights=None))]
fn mixture_posterior(
    components: Vec<Vec<f64>>,
    outcomes: Vec<usize>,
    weights: Option<Vec<f64>>,
) -> PyResult<Vec<f64>> {
    let model = mixture(components, weights)?;
    Ok(core_mixture_posterior(&model, &outcomes)
        .map_err(py_err)?
        .into_values())
}

/// Probability of a Q-predicate sequence under the two-family mixture.
#[pyfunction]
fn maher_sequence_probability(
    qs: Vec<usize>,
    weight_dependent: f64,
    alpha_joint: Vec<f64>,
    alpha_v: Vec<f64>,
    alpha_w: Vec<f64>,
) -> PyResult<f64> {
    let params = MaherParams::new(
        weight_dependent,
        CarnapParams::new(alpha_joint).map_err(py_err)?,
        CarnapParams::new(alpha_v).map_err(py_err)?,
        CarnapParams::new(alpha_w).map_err(py_err)?,
    )
    .map_err(py_err)?;
    core_maher_prob(&qs, &params).map_err(py_err)
}

/// Samples an outcome sequence from the two-urn scheme of the analogical
/// rule for the given type sequence.
#[pyfunction]
fn urn_simulate(
    alpha: Vec<Vec<f64>>,
    beta: f64,
    gamma: f64,
    types: Vec<usize>,
    seed: u64,
) -> PyResult<Vec<usize>> {
    let params = AnalogyParams::new(alpha_matrix(alpha)?, beta, gamma).map_err(py_err)?;
    core_urn_simulate(&params, &types, seed).map_err(py_err)
}

/// The limiting predictive distribution of the analogical rule for
/// per-type frequencies `freq0`, `freq1` and type-0 share `type_ratio`.
#[pyfunction]
#[pyo3(signature = (freq0, freq1, alpha, beta, gamma, type_ratio, next_type=0))]
#[allow(clippy::too_many_arguments)]
fn limiting_predictive(
    freq0: Vec<f64>,
    freq1: Vec<f64>,
    alpha: Vec<Vec<f64>>,
    beta: f64,
    gamma: f64,
    type_ratio: f64,
    next_type: usize,
) -> PyResult<Vec<f64>> {
    let params = AnalogyParams::new(alpha_matrix(alpha)?, beta, gamma).map_err(py_err)?;
    let freqs = [
        SimplexVector::new(freq0).map_err(py_err)?,
        SimplexVector::new(freq1).map_err(py_err)?,
    ];
    Ok(core_limiting(&freqs, &params, type_ratio, next_type)
        .map_err(py_err)?
        .into_values())
}

/// β-positivity diagnostic: cross-type repetition probabilities against
/// the prior, the equivalence verdict, and the monotonicity sweep.
#[pyfunction]
fn beta_positivity<'py>(
    py: Python<'py>,
    alpha: Vec<Vec<f64>>,
    beta: f64,
    gamma: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let params = AnalogyParams::new(alpha_matrix(alpha)?, beta, gamma).map_err(py_err)?;
    let report = core_beta_positivity(&params).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("beta", report.beta)?;
    d.set_item("equivalence_holds", report.equivalence_holds)?;
    d.set_item("monotone_in_beta", report.monotone_in_beta)?;
    d.set_item("sweep_betas", report.sweep_betas)?;
    d.set_item("sweep_repeat", report.sweep_repeat)?;
    let entries = PyList::empty(py);
    for entry in &report.entries {
        let e = PyDict::new(py);
        e.set_item("outcome", entry.outcome)?;
        e.set_item("repeat_probability", entry.repeat_probability)?;
        e.set_item("prior_probability", entry.prior_probability)?;
        e.set_item("strictly_greater", entry.strictly_greater)?;
        e.set_item("consistent", entry.consistent)?;
        entries.append(e)?;
    }
    d.set_item("entries", entries)?;
    Ok(d)
}

/// The point of the 3-simplex where the two predicate families are
/// independent with marginals `a`, `b`.
#[pyfunction]
fn wright_manifold_point(a: f64, b: f64) -> PyResult<Vec<f64>> {
    Ok(core_wright(a, b).map_err(py_err)?.into_values())
}

/// Whether a point of the 3-simplex satisfies the Wright-manifold
/// independence constraint.
#[pyfunction]
fn check_on_manifold(x: Vec<f64>) -> PyResult<bool> {
    core_on_manifold(&SimplexVector::new(x).map_err(py_err)?).map_err(py_err)
}

/// Monte Carlo posterior-predictive estimate under a Dirichlet prior:
/// returns (estimate, standard errors).
#[pyfunction]
fn dirichlet_mc_predictive(
    alpha: Vec<f64>,
    counts: Vec<usize>,
    samples: usize,
    seed: u64,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let params = CarnapParams::new(alpha).map_err(py_err)?;
    let k = params.outcome_count();
    if counts.len() != k {
        return Err(PyValueError::new_err(format!(
            "counts cover {} outcomes but alpha covers {k}",
            counts.len()
        )));
    }
    let mut stats = inductive::CountStatistics::zero(k, 1).map_err(py_err)?;
    for (i, &n) in counts.iter().enumerate() {
        for _ in 0..n {
            stats.observe(i, 0).map_err(py_err)?;
        }
    }
    let mc = core_mc(&params, &stats, samples, seed).map_err(py_err)?;
    Ok((mc.estimate.into_values(), mc.std_error))
}

#[pymodule]
fn inductive_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<History>()?;
    m.add_class::<Rule>()?;
    m.add_function(wrap_pyfunction!(carnap_rule, m)?)?;
    m.add_function(wrap_pyfunction!(analogical_rule, m)?)?;
    m.add_function(wrap_pyfunction!(skyrms_rule, m)?)?;
    m.add_function(wrap_pyfunction!(maher_rule, m)?)?;
    m.add_function(wrap_pyfunction!(polya_sequence_probability, m)?)?;
    m.add_function(wrap_pyfunction!(mixture_posterior, m)?)?;
    m.add_function(wrap_pyfunction!(maher_sequence_probability, m)?)?;
    m.add_function(wrap_pyfunction!(urn_simulate, m)?)?;
    m.add_function(wrap_pyfunction!(limiting_predictive, m)?)?;
    m.add_function(wrap_pyfunction!(beta_positivity, m)?)?;
    m.add_function(wrap_pyfunction!(wright_manifold_point, m)?)?;
    m.add_function(wrap_pyfunction!(check_on_manifold, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_mc_predictive, m)?)?;
    Ok(())
}

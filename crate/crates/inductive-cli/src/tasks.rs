//! Task implementations. Each task fully computes its artifact in memory,
//! writes it atomically, and prints a one-line summary per result to
//! standard output. Identical config and seed produce byte-identical
//! files.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use inductive::analogy::{limiting_predictive, AnalogyParams};
use inductive::carnap::{dirichlet_mc_predictive, CarnapParams};
use inductive::csvio;
use inductive::history::{counts_from_history, TypedHistory};
use inductive::stream::{sample_index, sample_stream, simulate_trace};
use inductive::symmetry::{
    check_exchangeability, check_future_type_independence,
    check_generalized_partial_exchangeability, check_partial_exchangeability, check_sufficientness,
    estimate_reichenbach_limit, CandidateLimit, EnumerationBudget, SufficientnessVariant,
    SymmetryReport,
};
use inductive::{OutcomeSpace, PredictiveRule, TypeSpace};

use crate::config::{
    build_rule, build_spaces, build_stream, config_err, lift_to_types, require_seed,
    ExperimentConfig, RuleSpec,
};
use crate::output::write_atomic;
use crate::CliError;

/// Flags and paths shared by every task invocation.
pub struct TaskContext {
    pub config_dir: PathBuf,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
}

impl TaskContext {
    fn out_dir(&self, config: &ExperimentConfig) -> PathBuf {
        self.out.clone().unwrap_or_else(|| {
            config
                .output
                .as_ref()
                .map(|o| PathBuf::from(&o.dir))
                .unwrap_or_else(|| PathBuf::from("out"))
        })
    }
}

fn parse_history(
    config: &ExperimentConfig,
    ctx: &TaskContext,
    rule: &dyn PredictiveRule,
    outcomes: &OutcomeSpace,
    types: &TypeSpace,
) -> Result<TypedHistory, CliError> {
    let spec = config.predict.clone().unwrap_or_default();
    match (&spec.history_csv, &spec.outcomes) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "predict.outcomes and predict.history_csv are mutually exclusive".into(),
        )),
        (Some(path), None) => {
            let resolved = ctx.config_dir.join(path);
            let text = fs::read_to_string(&resolved)
                .map_err(|e| CliError::Io(format!("reading {}: {e}", resolved.display())))?;
            csvio::history_from_csv(&text, outcomes, types).map_err(config_err)
        }
        (None, given) => {
            let outcome_labels = given.clone().unwrap_or_default();
            let type_labels = spec.types.clone().unwrap_or_default();
            if !type_labels.is_empty() && type_labels.len() != outcome_labels.len() {
                return Err(CliError::Config(format!(
                    "predict.outcomes has {} entries but predict.types has {}",
                    outcome_labels.len(),
                    type_labels.len()
                )));
            }
            let mut outcome_seq = Vec::with_capacity(outcome_labels.len());
            let mut type_seq = Vec::with_capacity(outcome_labels.len());
            for (i, label) in outcome_labels.iter().enumerate() {
                let outcome = outcomes.index_of(label).ok_or_else(|| {
                    CliError::Config(format!("predict.outcomes[{i}]: unknown outcome {label:?}"))
                })?;
                let ty = if type_labels.is_empty() {
                    0
                } else {
                    types.index_of(&type_labels[i]).ok_or_else(|| {
                        CliError::Config(format!(
                            "predict.types[{i}]: unknown type {:?}",
                            type_labels[i]
                        ))
                    })?
                };
                outcome_seq.push(outcome);
                type_seq.push(ty);
            }
            TypedHistory::from_indices(
                rule.outcome_count(),
                rule.type_count(),
                outcome_seq,
                type_seq,
            )
            .map_err(config_err)
        }
    }
}

pub fn run_predict(config: &ExperimentConfig, ctx: &TaskContext) -> Result<(), CliError> {
    config.check_task_kind("predict")?;
    let spec = config.require_rule()?;
    let built = build_rule(spec)?;
    let rule = built.rule.as_ref();
    let (outcomes, types) = build_spaces(
        config.labels.as_ref(),
        rule.outcome_count(),
        rule.type_count(),
    )?;
    let history = parse_history(config, ctx, rule, &outcomes, &types)?;

    let predict_spec = config.predict.clone().unwrap_or_default();
    let next_types: Vec<usize> = match &predict_spec.next_types {
        None => (0..rule.type_count()).collect(),
        Some(labels) => labels
            .iter()
            .map(|label| {
                types.index_of(label).ok_or_else(|| {
                    CliError::Config(format!("predict.next_types: unknown type {label:?}"))
                })
            })
            .collect::<Result<_, _>>()?,
    };

    // optional Dirichlet-mixture cross-check of the closed form
    let mc = match predict_spec.mc_samples {
        None => None,
        Some(samples) => {
            let alpha = match spec {
                RuleSpec::Carnap { alpha } => alpha.clone(),
                other => {
                    return Err(CliError::Config(format!(
                        "predict.mc_samples applies to carnap rules only, not {}",
                        other.kind()
                    )))
                }
            };
            let seed = require_seed(ctx.seed, config.process.as_ref())?;
            let params = CarnapParams::new(alpha).map_err(config_err)?;
            let counts = counts_from_history(&history);
            Some(dirichlet_mc_predictive(&params, &counts, samples, seed)?)
        }
    };

    let mut csv = String::from("next_type,outcome,probability");
    if mc.is_some() {
        csv.push_str(",mc_estimate,mc_std_error");
    }
    csv.push('\n');
    for &next_type in &next_types {
        let prediction = rule.predict(&history, next_type).map_err(config_err)?;
        for i in 0..rule.outcome_count() {
            let _ = write!(
                csv,
                "{},{},{}",
                types.label(next_type).map_err(config_err)?,
                outcomes.label(i).map_err(config_err)?,
                prediction[i]
            );
            if let Some(mc) = &mc {
                let _ = write!(csv, ",{},{}", mc.estimate[i], mc.std_error[i]);
            }
            csv.push('\n');
        }
    }

    let path = write_atomic(&ctx.out_dir(config), "predictions.csv", &csv)?;
    println!(
        "predict[{}]: history of {} observations, {} next type(s) -> {}",
        built.name,
        history.len(),
        next_types.len(),
        path.display()
    );
    Ok(())
}

pub fn run_simulate(config: &ExperimentConfig, ctx: &TaskContext) -> Result<(), CliError> {
    config.check_task_kind("simulate")?;
    let built = build_rule(config.require_rule()?)?;
    let process = config.require_process()?;
    let stream = build_stream(process)?;
    let built = lift_to_types(built, stream.type_count())?;
    if built.rule.outcome_count() != stream.outcome_count() {
        return Err(CliError::Config(format!(
            "rule predicts over {} outcomes but the process has {}",
            built.rule.outcome_count(),
            stream.outcome_count()
        )));
    }
    let seed = require_seed(ctx.seed, Some(process))?;

    // type sequence from its own generator stream; outcomes are drawn from
    // the rule's predictions inside simulate_trace (stream 0 of the seed)
    let mut type_rng = ChaCha8Rng::seed_from_u64(seed);
    type_rng.set_stream(1);
    let types: Vec<usize> = (0..process.horizon)
        .map(|_| sample_index(stream.type_probs().values(), &mut type_rng))
        .collect();
    let trace = simulate_trace(built.rule.as_ref(), &types, seed).map_err(config_err)?;
    let csv = csvio::trace_to_csv(&trace);

    let path = write_atomic(&ctx.out_dir(config), "trace.csv", &csv)?;
    println!(
        "simulate[{}]: {} steps, seed {seed} -> {}",
        built.name,
        trace.steps.len(),
        path.display()
    );
    Ok(())
}

fn run_one_check(
    name: &str,
    rule: &dyn PredictiveRule,
    max_len: usize,
    tolerance: f64,
    budget: &EnumerationBudget,
) -> Result<SymmetryReport, CliError> {
    let k = rule.outcome_count();
    let report = match name {
        "exchangeability" => check_exchangeability(rule, k, max_len, tolerance, budget),
        "partial-exchangeability" => {
            check_partial_exchangeability(rule, k, max_len, tolerance, budget)
        }
        "generalized-partial-exchangeability" => {
            check_generalized_partial_exchangeability(rule, k, max_len, tolerance, budget)
        }
        "sufficientness-classic" => check_sufficientness(
            rule,
            SufficientnessVariant::Classic,
            k,
            max_len,
            tolerance,
            budget,
        ),
        "sufficientness-modified" => check_sufficientness(
            rule,
            SufficientnessVariant::Modified,
            k,
            max_len,
            tolerance,
            budget,
        ),
        "future-type-independence" => {
            check_future_type_independence(rule, k, max_len, tolerance, budget)
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown audit check {other:?} (expected exchangeability, \
                 partial-exchangeability, generalized-partial-exchangeability, \
                 sufficientness-classic, sufficientness-modified, or \
                 future-type-independence)"
            )))
        }
    };
    report.map_err(CliError::from)
}

pub fn run_audit(config: &ExperimentConfig, ctx: &TaskContext) -> Result<(), CliError> {
    config.check_task_kind("audit")?;
    let built = build_rule(config.require_rule()?)?;
    let rule = built.rule.as_ref();
    let audit = config.audit.clone().unwrap_or_default();
    let tolerance = ctx.tolerance.or(audit.tolerance).unwrap_or(1e-10);
    let defaults = EnumerationBudget::default();
    let budget = EnumerationBudget {
        max_outcomes: audit.budget_max_outcomes.unwrap_or(defaults.max_outcomes),
        max_sequence_length: audit.budget_max_len.unwrap_or(defaults.max_sequence_length),
    };
    let checks: Vec<String> = match &audit.checks {
        Some(named) => named.clone(),
        None if rule.type_count() == 1 => {
            vec!["exchangeability".into(), "sufficientness-classic".into()]
        }
        None => vec![
            "generalized-partial-exchangeability".into(),
            "partial-exchangeability".into(),
            "sufficientness-modified".into(),
            "future-type-independence".into(),
        ],
    };

    let mut text = String::new();
    for name in &checks {
        let report = run_one_check(name, rule, audit.max_len, tolerance, &budget)?;
        println!(
            "audit[{}] {}: {} (max violation {:e})",
            built.name,
            report.postulate,
            if report.passed { "PASS" } else { "FAIL" },
            report.max_violation
        );
        text.push_str(&report.render_text());
        text.push('\n');
    }

    let path = write_atomic(&ctx.out_dir(config), "audit_report.txt", &text)?;
    println!(
        "audit[{}]: {} check(s) at tolerance {tolerance:e} -> {}",
        built.name,
        checks.len(),
        path.display()
    );
    Ok(())
}

fn convex_candidate_from_spec(
    spec: &RuleSpec,
    config: &ExperimentConfig,
) -> Result<Option<CandidateLimit>, CliError> {
    let RuleSpec::Analogical {
        alpha, beta, gamma, ..
    } = spec
    else {
        return Ok(None);
    };
    let process = config.require_process()?;
    if process.type_probs.len() != 2 {
        return Err(CliError::Config(
            "the convex-combination candidate needs a two-type process".into(),
        ));
    }
    let rows: Vec<[f64; 2]> = alpha.iter().map(|r| [r[0], r[1]]).collect();
    let params = AnalogyParams::new(rows, *beta, *gamma).map_err(config_err)?;
    let stream = build_stream(process)?;
    let freqs = [
        stream.outcome_probs(0).clone(),
        stream.outcome_probs(1).clone(),
    ];
    let ratio = process.type_probs[0];
    let per_type = vec![
        limiting_predictive(&freqs, &params, ratio, 0).map_err(config_err)?,
        limiting_predictive(&freqs, &params, ratio, 1).map_err(config_err)?,
    ];
    Ok(Some(CandidateLimit {
        name: "convex".into(),
        per_type,
    }))
}

pub fn run_converge(config: &ExperimentConfig, ctx: &TaskContext) -> Result<(), CliError> {
    config.check_task_kind("converge")?;
    let spec = config.require_rule()?;
    let built = build_rule(spec)?;
    let process = config.require_process()?;
    let stream = build_stream(process)?;
    let built = lift_to_types(built, stream.type_count())?;
    let seed = require_seed(ctx.seed, Some(process))?;

    let want_convex = config
        .converge
        .as_ref()
        .and_then(|c| c.convex_candidate)
        .unwrap_or(matches!(spec, RuleSpec::Analogical { .. }));
    let mut candidates = Vec::new();
    if want_convex {
        match convex_candidate_from_spec(spec, config)? {
            Some(candidate) => candidates.push(candidate),
            None => {
                return Err(CliError::Config(
                    "convex candidate requested for a non-analogical rule".into(),
                ))
            }
        }
    }

    let report = estimate_reichenbach_limit(
        built.rule.as_ref(),
        &stream,
        process.horizon,
        seed,
        &candidates,
    )?;
    let csv = csvio::convergence_to_csv(&report);
    let path = write_atomic(&ctx.out_dir(config), "convergence.csv", &csv)?;
    for next_type in 0..stream.type_count() {
        if let Some((name, distance)) = report.approached(next_type) {
            println!(
                "converge[{}] type {next_type}: closest limit is {name} (sup distance {distance})",
                built.name
            );
        }
    }
    println!(
        "converge[{}]: horizon {}, seed {seed} -> {}",
        built.name,
        process.horizon,
        path.display()
    );
    Ok(())
}

pub fn run_compare(config: &ExperimentConfig, ctx: &TaskContext) -> Result<(), CliError> {
    config.check_task_kind("compare")?;
    let compare = config
        .compare
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [compare] section".into()))?;
    if compare.rules.len() < 2 {
        return Err(CliError::Config(format!(
            "compare needs at least 2 rules, found {}",
            compare.rules.len()
        )));
    }
    if compare.emit_every == 0 {
        return Err(CliError::Config(
            "compare.emit_every must be positive".into(),
        ));
    }
    let process = config.require_process()?;
    let stream = build_stream(process)?;
    let seed = require_seed(ctx.seed, Some(process))?;

    let mut rules = Vec::new();
    for (index, spec) in compare.rules.iter().enumerate() {
        let built = build_rule(spec)?;
        let built = lift_to_types(built, stream.type_count())?;
        if built.rule.outcome_count() != stream.outcome_count() {
            return Err(CliError::Config(format!(
                "compare rule {index} predicts over {} outcomes but the process has {}",
                built.rule.outcome_count(),
                stream.outcome_count()
            )));
        }
        rules.push((format!("r{index}-{}", built.name), built.rule));
    }

    let sample = sample_stream(&stream, process.horizon, seed);
    let k = stream.outcome_count();
    let mut csv = String::from("step,type,outcome");
    for (name, _) in &rules {
        for i in 0..k {
            let _ = write!(csv, ",{name}_pred_{i}");
        }
    }
    csv.push('\n');
    for step in 1..=process.horizon {
        if step % compare.emit_every != 0 && step != process.horizon {
            continue;
        }
        let history = TypedHistory::from_indices(
            k,
            stream.type_count(),
            sample.outcomes[..step - 1].to_vec(),
            sample.types[..step - 1].to_vec(),
        )
        .map_err(config_err)?;
        let ty = sample.types[step - 1];
        let _ = write!(csv, "{step},{ty},{}", sample.outcomes[step - 1]);
        for (_, rule) in &rules {
            let prediction = rule.predict(&history, ty).map_err(config_err)?;
            for i in 0..k {
                let _ = write!(csv, ",{}", prediction[i]);
            }
        }
        csv.push('\n');
    }

    let path = write_atomic(&ctx.out_dir(config), "compare.csv", &csv)?;
    println!(
        "compare[{} rules]: horizon {}, seed {seed} -> {}",
        rules.len(),
        process.horizon,
        path.display()
    );
    Ok(())
}

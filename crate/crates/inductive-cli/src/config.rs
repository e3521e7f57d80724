//! Experiment configuration: a versioned TOML schema.
//!
//! The schema, not the syntax, is the contract: `version = 1` selects this
//! layout. Rule parameters are validated against the chosen rule's
//! invariants before any task runs; stochastic tasks refuse to start
//! without a seed.

use serde::{Deserialize, Serialize};

use inductive::analogy::{AnalogicalRule, AnalogyParams};
use inductive::carnap::{CarnapParams, CarnapRule};
use inductive::mixtures::{MaherParams, MaherRule, MixtureModel, SkyrmsRule};
use inductive::rule::TypeBlindLift;
use inductive::stream::StreamConfig;
use inductive::{OutcomeSpace, PredictiveRule, SimplexVector, TypeSpace};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<LabelsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub process: Option<ProcessSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predict: Option<PredictSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converge: Option<ConvergeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare: Option<CompareSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RuleSpec {
    Carnap {
        alpha: Vec<f64>,
    },
    Analogical {
        alpha: Vec<Vec<f64>>,
        beta: f64,
        gamma: f64,
        #[serde(default)]
        self_analogy_bound: bool,
    },
    Skyrms {
        components: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
    Maher {
        weight_dependent: f64,
        alpha_joint: Vec<f64>,
        alpha_v: Vec<f64>,
        alpha_w: Vec<f64>,
    },
}

impl RuleSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            RuleSpec::Carnap { .. } => "carnap",
            RuleSpec::Analogical { .. } => "analogical",
            RuleSpec::Skyrms { .. } => "skyrms",
            RuleSpec::Maher { .. } => "maher",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessSpec {
    pub type_probs: Vec<f64>,
    pub outcome_probs: Vec<Vec<f64>>,
    pub horizon: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct PredictSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub history_csv: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next_types: Option<Vec<String>>,
    /// Optional Monte Carlo cross-check of the closed-form predictive
    /// (carnap rules only): sample count for the Dirichlet-mixture
    /// estimate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc_samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default = "default_audit_len")]
    pub max_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_max_outcomes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_max_len: Option<usize>,
}

fn default_audit_len() -> usize {
    5
}

impl Default for AuditSpec {
    fn default() -> Self {
        Self {
            checks: None,
            max_len: default_audit_len(),
            tolerance: None,
            budget_max_outcomes: None,
            budget_max_len: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ConvergeSpec {
    /// Add the convex-combination candidate limit (analogical rules only;
    /// defaults to on for them).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convex_candidate: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSpec {
    pub rules: Vec<RuleSpec>,
    #[serde(default = "default_emit_every")]
    pub emit_every: usize,
}

fn default_emit_every() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: String,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Config(format!("config parse: {e}")))?;
        if config.version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "config schema version {} not supported (expected {SCHEMA_VERSION})",
                config.version
            )));
        }
        Ok(config)
    }

    pub fn require_rule(&self) -> Result<&RuleSpec, CliError> {
        self.rule
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [rule] section".into()))
    }

    pub fn require_process(&self) -> Result<&ProcessSpec, CliError> {
        self.process
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [process] section".into()))
    }

    /// The configured task kind must agree with the invoked subcommand.
    pub fn check_task_kind(&self, subcommand: &str) -> Result<(), CliError> {
        if let Some(task) = &self.task {
            if task.kind != subcommand {
                return Err(CliError::Config(format!(
                    "config declares task kind {:?} but the {subcommand:?} subcommand was invoked",
                    task.kind
                )));
            }
        }
        Ok(())
    }
}

/// A rule built from its spec, with a short name for output columns.
pub struct BuiltRule {
    pub name: String,
    pub rule: Box<dyn PredictiveRule>,
}

/// Validates the spec against the rule's invariants and constructs it.
pub fn build_rule(spec: &RuleSpec) -> Result<BuiltRule, CliError> {
    let rule: Box<dyn PredictiveRule> = match spec {
        RuleSpec::Carnap { alpha } => Box::new(CarnapRule::new(
            CarnapParams::new(alpha.clone()).map_err(config_err)?,
        )),
        RuleSpec::Analogical {
            alpha,
            beta,
            gamma,
            self_analogy_bound,
        } => {
            let rows: Vec<[f64; 2]> = alpha
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    if row.len() == 2 {
                        Ok([row[0], row[1]])
                    } else {
                        Err(CliError::Config(format!(
                            "rule.alpha row {i} must have exactly 2 entries (one per type)"
                        )))
                    }
                })
                .collect::<Result<_, _>>()?;
            let params = if *self_analogy_bound {
                AnalogyParams::with_self_analogy_bound(rows, *beta, *gamma)
            } else {
                AnalogyParams::new(rows, *beta, *gamma)
            }
            .map_err(config_err)?;
            Box::new(AnalogicalRule::new(params))
        }
        RuleSpec::Skyrms {
            components,
            weights,
        } => {
            let components: Vec<CarnapParams> = components
                .iter()
                .map(|alpha| CarnapParams::new(alpha.clone()).map_err(config_err))
                .collect::<Result<_, _>>()?;
            let model = match weights {
                Some(w) => MixtureModel::new(
                    components,
                    SimplexVector::new(w.clone()).map_err(config_err)?,
                ),
                None => MixtureModel::uniform(components),
            }
            .map_err(config_err)?;
            Box::new(SkyrmsRule::new(model))
        }
        RuleSpec::Maher {
            weight_dependent,
            alpha_joint,
            alpha_v,
            alpha_w,
        } => {
            let params = MaherParams::new(
                *weight_dependent,
                CarnapParams::new(alpha_joint.clone()).map_err(config_err)?,
                CarnapParams::new(alpha_v.clone()).map_err(config_err)?,
                CarnapParams::new(alpha_w.clone()).map_err(config_err)?,
            )
            .map_err(config_err)?;
            Box::new(MaherRule::new(params))
        }
    };
    Ok(BuiltRule {
        name: spec.kind().to_string(),
        rule,
    })
}

/// Lifts a built rule onto a `type_count`-type history space if needed.
pub fn lift_to_types(built: BuiltRule, type_count: usize) -> Result<BuiltRule, CliError> {
    if built.rule.type_count() == type_count {
        return Ok(built);
    }
    if built.rule.type_count() == 1 {
        let lifted = TypeBlindLift::new(built.rule, type_count).map_err(config_err)?;
        return Ok(BuiltRule {
            name: built.name,
            rule: Box::new(lifted),
        });
    }
    Err(CliError::Config(format!(
        "rule {} is defined over {} types but the process has {type_count}",
        built.name,
        built.rule.type_count()
    )))
}

pub fn build_stream(process: &ProcessSpec) -> Result<StreamConfig, CliError> {
    let type_probs = SimplexVector::new(process.type_probs.clone()).map_err(config_err)?;
    let outcome_probs: Vec<SimplexVector> = process
        .outcome_probs
        .iter()
        .map(|p| SimplexVector::new(p.clone()).map_err(config_err))
        .collect::<Result<_, _>>()?;
    StreamConfig::new(type_probs, outcome_probs).map_err(config_err)
}

/// Label spaces for the given dimensions, from the config or indexed
/// defaults.
pub fn build_spaces(
    labels: Option<&LabelsSpec>,
    outcome_count: usize,
    type_count: usize,
) -> Result<(OutcomeSpace, TypeSpace), CliError> {
    let outcomes = match labels.and_then(|l| l.outcomes.as_ref()) {
        Some(given) => {
            if given.len() != outcome_count {
                return Err(CliError::Config(format!(
                    "labels.outcomes has {} entries but the rule has {outcome_count} outcomes",
                    given.len()
                )));
            }
            OutcomeSpace::new(given.clone()).map_err(config_err)?
        }
        None => OutcomeSpace::indexed(outcome_count).map_err(config_err)?,
    };
    let types = match labels.and_then(|l| l.types.as_ref()) {
        Some(given) => {
            if given.len() != type_count {
                return Err(CliError::Config(format!(
                    "labels.types has {} entries but the task uses {type_count} types",
                    given.len()
                )));
            }
            TypeSpace::new(given.clone()).map_err(config_err)?
        }
        None => TypeSpace::indexed(type_count).map_err(config_err)?,
    };
    Ok((outcomes, types))
}

/// Seed resolution: the CLI flag wins, then the config; stochastic tasks
/// cannot run without one.
pub fn require_seed(flag: Option<u64>, process: Option<&ProcessSpec>) -> Result<u64, CliError> {
    flag.or_else(|| process.and_then(|p| p.seed))
        .ok_or_else(|| {
            CliError::Config(
                "seed is mandatory for stochastic tasks (set process.seed or pass --seed)".into(),
            )
        })
}

pub fn config_err(e: inductive::InductiveError) -> CliError {
    CliError::from(e)
}

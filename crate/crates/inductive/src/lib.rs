//! Inductive logic as executable probability: generalized rules of
//! succession, mixture systems, and an analogical rule whose cross-type
//! influence persists in the limit, together with a verification engine
//! for the symmetry postulates each system satisfies or violates.
//!
//! The crate is organized around one contract: a [`rule::PredictiveRule`]
//! maps a [`history::TypedHistory`] and the type of the next observation
//! to a probability vector over outcomes. Everything else builds on it.
//!
//! - [`carnap`] — the basic system `(n_i + α_i)/(n + Σα)`, its λ–γ form,
//!   closed-form Polya sequence probabilities, and a Monte Carlo check of
//!   the Dirichlet-mixture representation.
//! - [`analogy`] — the two-type analogical rule, its urn sampler, the
//!   β-positivity diagnostic, and the convex-combination limit that
//!   replaces Reichenbach's axiom.
//! - [`mixtures`] — Skyrms-style mixtures of basic systems and the
//!   two-family Q-predicate system with weight on the Wright manifold;
//!   exchangeable systems whose analogy effects are transient.
//! - [`symmetry`] — exhaustive finite checks of exchangeability, partial
//!   and generalized partial exchangeability, sufficientness, and
//!   future-type independence, plus seeded convergence studies.
//! - [`stream`] / [`csvio`] — observation processes, simulation traces,
//!   and fixed CSV formats.

pub mod analogy;
pub mod carnap;
pub mod csvio;
pub mod error;
pub mod history;
pub mod mixtures;
pub mod rule;
pub mod simplex;
pub mod space;
pub mod stream;
pub mod symmetry;

pub use error::{InductiveError, Result};
pub use history::{counts_from_history, CountStatistics, TypedHistory};
pub use rule::{joint_probability, predictive_from_joint, PredictiveRule};
pub use simplex::SimplexVector;
pub use space::{OutcomeSpace, TypeSpace};

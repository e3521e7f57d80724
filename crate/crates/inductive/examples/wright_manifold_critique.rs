//! Why positive prior weight on the Wright manifold is neither necessary
//! nor sufficient for analogy effects between Q-predicates.
//!
//! Q_1=(0,0) shares a predicate with Q_2=(1,0) and none with Q_4=(1,1),
//! so an analogical system should make Q_1 likelier after Q_2 than after
//! Q_4. Three priors over the chance simplex are compared on that test:
//!
//! 1. the two-family mixture, which puts weight 1−w on the manifold via
//!    the product of family priors — the analogy effect appears;
//! 2. a mixture that concentrates all of its manifold weight on the
//!    barycenter — positive manifold weight, yet no analogy effect
//!    (not sufficient);
//! 3. a finite mixture of Dirichlet components centered near the four
//!    similar-pair edges — zero manifold weight, yet the analogy effect
//!    appears (not necessary).
//!
//! Output: a CSV table of the two predictive probabilities per prior.
//!
//! Run with `cargo run -p inductive --example wright_manifold_critique`.

use inductive::carnap::{polya_sequence_probability, CarnapParams};
use inductive::mixtures::{maher_predict, skyrms_predict, MaherParams, MixtureModel};

/// Predictive of the mixture w·Dirichlet(flat) + (1−w)·(point mass at the
/// barycenter). The point-mass component makes every length-n sequence
/// equally likely, so it cannot prefer one Q-predicate to another.
fn barycenter_mixture_predict(first: usize, then: usize, w: f64) -> f64 {
    let flat = CarnapParams::flat(4).unwrap();
    let joint_pair = polya_sequence_probability(&[first, then], &flat).unwrap();
    let joint_single = polya_sequence_probability(&[first], &flat).unwrap();
    let numerator = w * joint_pair + (1.0 - w) * (0.25 * 0.25);
    let denominator = w * joint_single + (1.0 - w) * 0.25;
    numerator / denominator
}

fn main() {
    println!("prior,p_q1_after_q2,p_q1_after_q4,analogy_effect");

    // 1. the two-family mixture (manifold weight 1/2)
    let maher = MaherParams::symmetric();
    let after_q2 = maher_predict(&[1], &maher).unwrap()[0];
    let after_q4 = maher_predict(&[3], &maher).unwrap()[0];
    println!(
        "two-family-mixture,{after_q2},{after_q4},{}",
        after_q2 > after_q4
    );

    // 2. manifold weight concentrated on the barycenter
    let after_q2 = barycenter_mixture_predict(1, 0, 0.5);
    let after_q4 = barycenter_mixture_predict(3, 0, 0.5);
    println!(
        "barycenter-point-mass,{after_q2},{after_q4},{}",
        after_q2 > after_q4
    );

    // 3. edge-focused Dirichlet mixture, zero manifold weight: one
    // component per similar pair {Q1,Q2}, {Q1,Q3}, {Q2,Q4}, {Q3,Q4}
    let edges = MixtureModel::uniform(vec![
        CarnapParams::new(vec![4.0, 4.0, 0.25, 0.25]).unwrap(),
        CarnapParams::new(vec![4.0, 0.25, 4.0, 0.25]).unwrap(),
        CarnapParams::new(vec![0.25, 4.0, 0.25, 4.0]).unwrap(),
        CarnapParams::new(vec![0.25, 0.25, 4.0, 4.0]).unwrap(),
    ])
    .unwrap();
    let after_q2 = skyrms_predict(&edges, &[1]).unwrap()[0];
    let after_q4 = skyrms_predict(&edges, &[3]).unwrap()[0];
    println!(
        "edge-dirichlet-mixture,{after_q2},{after_q4},{}",
        after_q2 > after_q4
    );
}

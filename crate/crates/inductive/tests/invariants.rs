//! Cross-rule invariants: normalization of joints by exhaustive
//! enumeration, prefix consistency of the chain rule, and bit-level
//! determinism of predictions.

use inductive::analogy::{AnalogicalRule, AnalogyParams};
use inductive::carnap::{CarnapParams, CarnapRule};
use inductive::mixtures::{MaherParams, MaherRule, MixtureModel, SkyrmsRule};
use inductive::rule::joint_probability;
use inductive::{PredictiveRule, TypedHistory};

fn rules() -> Vec<(&'static str, Box<dyn PredictiveRule>)> {
    vec![
        (
            "carnap",
            Box::new(CarnapRule::new(
                CarnapParams::new(vec![0.7, 1.3, 2.0]).unwrap(),
            )),
        ),
        (
            "analogical",
            Box::new(AnalogicalRule::new(
                AnalogyParams::new(vec![[1.0, 0.5], [2.0, 1.0], [0.5, 1.5]], 0.7, 0.3).unwrap(),
            )),
        ),
        (
            "skyrms",
            Box::new(SkyrmsRule::new(
                MixtureModel::uniform(vec![
                    CarnapParams::new(vec![4.0, 4.0, 0.25]).unwrap(),
                    CarnapParams::new(vec![0.25, 4.0, 4.0]).unwrap(),
                ])
                .unwrap(),
            )),
        ),
        ("maher", Box::new(MaherRule::new(MaherParams::symmetric()))),
    ]
}

fn for_each_sequence(base: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut seq = vec![0usize; len];
    loop {
        f(&seq);
        let mut pos = 0;
        loop {
            if pos == len {
                return;
            }
            seq[pos] += 1;
            if seq[pos] < base {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn joints_normalize_for_every_rule_and_type_sequence() {
    for (name, rule) in rules() {
        let k = rule.outcome_count();
        let m = rule.type_count();
        for len in 0..=6usize {
            for_each_sequence(m, len, |types| {
                let mut sum = 0.0;
                for_each_sequence(k, len, |outcomes| {
                    sum += joint_probability(rule.as_ref(), outcomes, types).unwrap();
                });
                assert!(
                    (sum - 1.0).abs() < 1e-10,
                    "{name}, types {types:?}: joints sum to {sum}"
                );
            });
        }
    }
}

#[test]
fn prefix_joint_equals_sum_of_extensions() {
    for (name, rule) in rules() {
        let k = rule.outcome_count();
        let m = rule.type_count();
        // a handful of prefixes, every next type
        let prefixes: Vec<(Vec<usize>, Vec<usize>)> = vec![
            (vec![], vec![]),
            (vec![0], vec![0]),
            (vec![1, 0], vec![m - 1, 0]),
            (vec![2, 2, 1], vec![0, m - 1, 0]),
        ];
        for (outcomes, types) in prefixes {
            let base = joint_probability(rule.as_ref(), &outcomes, &types).unwrap();
            for next_type in 0..m {
                let mut sum = 0.0;
                for extension in 0..k {
                    let mut o = outcomes.clone();
                    o.push(extension);
                    let mut t = types.clone();
                    t.push(next_type);
                    sum += joint_probability(rule.as_ref(), &o, &t).unwrap();
                }
                assert!(
                    (sum - base).abs() < 1e-12,
                    "{name}: prefix {outcomes:?}/{types:?} at type {next_type}: {sum} vs {base}"
                );
            }
        }
    }
}

#[test]
fn predictions_are_bit_identical_across_calls() {
    for (name, rule) in rules() {
        let k = rule.outcome_count();
        let m = rule.type_count();
        let history =
            TypedHistory::from_indices(k, m, vec![0, 1, 2 % k, 1], vec![0, m - 1, 0, m - 1])
                .unwrap();
        for next_type in 0..m {
            let first = rule.predict(&history, next_type).unwrap();
            for _ in 0..3 {
                let again = rule.predict(&history, next_type).unwrap();
                assert_eq!(
                    first.values(),
                    again.values(),
                    "{name}: prediction not bit-identical"
                );
            }
        }
    }
}

mod common;

use common::*;
use mdl_bmf::mdl::{
    dimension_length, entropy_length, extent_length, intent_length, residual_length, vector_length,
};
use mdl_bmf::synth::random_matrix;
use mdl_bmf::{total_cost, AttributeSet, BooleanMatrix, Error, FactorSet, ObjectSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn entropy_matches_natural_log_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..1000 {
        let t = rng.gen_range(1..=5000);
        let a = rng.gen_range(0..=t);
        let got = entropy_length(a, t).unwrap().bits();
        let want = entropy_bits(a, t);
        assert!(close(got, want, 1e-12), "a={a} t={t}: {got} vs {want}");
    }
}

#[test]
fn entropy_edge_cases() {
    assert_eq!(entropy_length(0, 10).unwrap().bits(), 0.0);
    assert_eq!(entropy_length(10, 10).unwrap().bits(), 0.0);
    assert!((entropy_length(4, 8).unwrap().bits() - 8.0).abs() < 1e-12);
    assert!(matches!(entropy_length(0, 0), Err(Error::Domain(_))));
    assert!(matches!(entropy_length(3, 2), Err(Error::Domain(_))));
}

#[test]
fn vector_lengths() {
    let e = |ix: &[usize]| extent_length(&ObjectSet::from_indices(8, ix.iter().copied()), 8);
    assert!((e(&[0, 1]).unwrap().bits() - 9.490224995673064).abs() < 1e-9);
    let five = e(&[2, 3, 4, 5, 6]).unwrap().bits();
    assert!((five - 10.635472023399721).abs() < 1e-9);
    assert!((e(&[0, 1, 2]).unwrap().bits() - five).abs() < 1e-12);
    assert_eq!(e(&[]).unwrap().bits(), 3.0);
    assert_eq!(
        intent_length(&AttributeSet::full(8), 8).unwrap().bits(),
        3.0
    );
    assert_eq!(vector_length(1, 1).unwrap().bits(), 0.0);
    assert!(extent_length(&ObjectSet::empty(8), 9).is_err());
}

#[test]
fn residual_and_header_lengths() {
    assert!((residual_length(4, 8, 8).unwrap().bits() - 27.58656426348889).abs() < 1e-9);
    assert!((residual_length(39, 8, 8).unwrap().bits() - 67.7729087200042).abs() < 1e-9);
    assert_eq!(residual_length(0, 8, 8).unwrap().bits(), 6.0);
    assert_eq!(dimension_length(8, 8, 4).bits(), 9.0);
    assert_eq!(dimension_length(8, 8, 16).bits(), 12.0);
}

#[test]
fn running_example_costs() {
    let data = example_matrix();
    let empty = total_cost(&data, &FactorSet::new()).unwrap().bits();
    assert!((empty - 76.7729087200042).abs() < 1e-9);
    let first = total_cost(&data, &first_factor_set()).unwrap().bits();
    assert!((first - 118.59912734410696).abs() < 1e-9);
    let second = total_cost(&data, &second_factor_set()).unwrap().bits();
    assert!((second - 108.682969007857).abs() < 1e-9);
}

#[test]
fn total_cost_matches_plain_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..100 {
        let (m, n) = (rng.gen_range(1..20), rng.gen_range(1..20));
        let data = random_matrix(m, n, rng.gen_range(0.1..0.9), seed);
        let r = mdl_bmf::grecond(&data).unwrap();
        let plain: Vec<_> = r.factors.iter().map(concept_pair).collect();
        let want = total_bits(&cells(&data), n, &plain);
        let got = total_cost(&data, &r.factors).unwrap().bits();
        assert!(close(got, want, 1e-12), "{got} vs {want}");
    }
}

#[test]
fn cost_ignores_factor_order() {
    let data = example_matrix();
    let mut reversed: Vec<_> = first_factor_set().as_slice().to_vec();
    reversed.reverse();
    let reversed = FactorSet::from_factors(reversed).unwrap();
    assert_eq!(
        total_cost(&data, &first_factor_set()).unwrap(),
        total_cost(&data, &reversed).unwrap()
    );
}

#[test]
fn cost_invariant_under_permutation() {
    let data = example_matrix();
    let f = first_factor_set();
    let rows = [7usize, 3, 0, 5, 1, 6, 2, 4];
    let cols = [2usize, 5, 7, 0, 1, 3, 6, 4];
    let inv = |p: &[usize; 8], x: usize| p.iter().position(|&v| v == x).unwrap();
    let permuted = BooleanMatrix::from_fn(8, 8, |i, j| data.get(rows[i], cols[j]));
    let pf = FactorSet::from_factors(
        f.iter()
            .map(|c| {
                let e: Vec<usize> = c.extent().iter().map(|i| inv(&rows, i)).collect();
                let d: Vec<usize> = c.intent().iter().map(|j| inv(&cols, j)).collect();
                factor(8, 8, &e, &d)
            })
            .collect(),
    )
    .unwrap();
    let a = total_cost(&data, &f).unwrap().bits();
    let b = total_cost(&permuted, &pf).unwrap().bits();
    assert!(close(a, b, 1e-12));
}

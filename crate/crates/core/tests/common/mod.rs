//! Reference implementations used as test oracles. Everything here works on
//! plain `Vec<Vec<bool>>` and sorted index vectors and shares no code with
//! the library beyond reading cells.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mdl_bmf::{AttributeSet, BooleanMatrix, FactorSet, FormalConcept, ObjectSet};

pub type Cells = Vec<Vec<bool>>;

/// An (extent, intent) pair of index lists.
pub type Pair = (Vec<usize>, Vec<usize>);

pub fn cells(m: &BooleanMatrix) -> Cells {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

pub fn matrix(c: &Cells, cols: usize) -> BooleanMatrix {
    BooleanMatrix::from_fn(c.len(), cols, |i, j| c[i][j])
}

pub fn product(a: &Cells, b: &Cells, rows: usize, inner: usize, cols: usize) -> Cells {
    let mut out = vec![vec![false; cols]; rows];
    for i in 0..rows {
        for l in 0..inner {
            for j in 0..cols {
                if a[i][l] && b[l][j] {
                    out[i][j] = true;
                }
            }
        }
    }
    out
}

pub fn up(data: &Cells, cols: usize, objects: &[usize]) -> Vec<usize> {
    (0..cols)
        .filter(|&j| objects.iter().all(|&i| data[i][j]))
        .collect()
}

pub fn down(data: &Cells, attributes: &[usize]) -> Vec<usize> {
    (0..data.len())
        .filter(|&i| attributes.iter().all(|&j| data[i][j]))
        .collect()
}

/// Every formal concept as (extent, intent), by closing all 2^n attribute
/// subsets.
pub fn powerset_concepts(data: &Cells, cols: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    assert!(cols <= 16);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << cols) {
        let attrs: Vec<usize> = (0..cols).filter(|j| mask >> j & 1 == 1).collect();
        let extent = down(data, &attrs);
        let intent = up(data, cols, &extent);
        out.insert((extent, intent));
    }
    out
}

pub fn concept_pair(c: &FormalConcept) -> (Vec<usize>, Vec<usize>) {
    (c.extent().iter().collect(), c.intent().iter().collect())
}

/// `t·H(a/t)` in bits, written with natural logs on probabilities.
pub fn entropy_bits(a: usize, t: usize) -> f64 {
    let p = a as f64 / t as f64;
    let q = (t - a) as f64 / t as f64;
    let h = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    t as f64 * (h(p) + h(q)) / std::f64::consts::LN_2
}

pub fn vector_bits(a: usize, t: usize) -> f64 {
    (t as f64).ln() / std::f64::consts::LN_2 + entropy_bits(a, t)
}

/// Total description length of factors given as (extent, intent) index
/// lists.
pub fn total_bits(data: &Cells, cols: usize, factors: &[(Vec<usize>, Vec<usize>)]) -> f64 {
    let m = data.len();
    let k = factors.len();
    let mut covered = vec![vec![false; cols]; m];
    for (e, d) in factors {
        for &i in e {
            for &j in d {
                covered[i][j] = true;
            }
        }
    }
    let residual = (0..m)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .filter(|&(i, j)| data[i][j] && !covered[i][j])
        .count();
    let header = 3.0 * (m.max(cols).max(k) as f64).log2();
    let model: f64 = factors
        .iter()
        .map(|(e, d)| vector_bits(e.len(), m) + vector_bits(d.len(), cols))
        .sum();
    header + model + vector_bits(residual, m * cols)
}

/// Greedy MDL factor selection followed step by step on plain data: grow
/// each candidate from the empty intent by the attribute whose closure gives
/// the lowest total cost, as long as that cost strictly improves; the first
/// factor must beat the empty model. Returns the accepted factors.
pub fn reference_mdl_greedy(data: &Cells, cols: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut factors: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut best_total = total_bits(data, cols, &factors);
    loop {
        let mut intent: Vec<usize> = Vec::new();
        let mut chosen = None;
        loop {
            let mut step: Option<(f64, Pair)> = None;
            for j in 0..cols {
                if intent.contains(&j) {
                    continue;
                }
                let mut attrs = intent.clone();
                attrs.push(j);
                let e = down(data, &attrs);
                if e.is_empty() {
                    continue;
                }
                let d = up(data, cols, &e);
                let cand = (e, d);
                if factors.contains(&cand) {
                    continue;
                }
                let mut trial = factors.clone();
                trial.push(cand.clone());
                let cost = total_bits(data, cols, &trial);
                if step.as_ref().is_none_or(|(c, _)| cost < *c) {
                    step = Some((cost, cand));
                }
            }
            match step {
                Some((cost, cand)) if cost < best_total => {
                    best_total = cost;
                    intent = cand.1.clone();
                    chosen = Some(cand);
                }
                _ => break,
            }
        }
        match chosen {
            Some(c) => factors.push(c),
            None => return factors,
        }
    }
}

pub fn factor(m: usize, n: usize, extent: &[usize], intent: &[usize]) -> FormalConcept {
    FormalConcept::from_parts(
        ObjectSet::from_indices(m, extent.iter().copied()),
        AttributeSet::from_indices(n, intent.iter().copied()),
    )
}

/// The 8×8 running example, attributes a..h.
pub fn example_matrix() -> BooleanMatrix {
    let rows = [
        "abcgh", "abcgh", "abcd", "abcdf", "bcdh", "bcdef", "bcdefgh", "efgh",
    ];
    BooleanMatrix::from_fn(8, 8, |i, j| rows[i].contains((b'a' + j as u8) as char))
}

pub fn attrs(s: &str) -> Vec<usize> {
    s.bytes().map(|b| (b - b'a') as usize).collect()
}

/// First factorization of the running example (1-based objects in the
/// comments, 0-based here).
pub fn first_factor_set() -> FactorSet {
    FactorSet::from_factors(vec![
        factor(8, 8, &[0, 1], &attrs("abcgh")),
        factor(8, 8, &[2, 3, 4, 5, 6], &attrs("bcd")),
        factor(8, 8, &[5, 6], &attrs("bcdef")),
        factor(8, 8, &[6, 7], &attrs("efgh")),
    ])
    .unwrap()
}

pub fn second_factor_set() -> FactorSet {
    FactorSet::from_factors(vec![
        factor(8, 8, &[0, 1, 6, 7], &attrs("gh")),
        factor(8, 8, &[2, 3, 4, 5, 6], &attrs("bcd")),
    ])
    .unwrap()
}

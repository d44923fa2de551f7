//! Quality measures of a factor set: factor counts, data and object
//! coverage, overlap, and description length.
//!
//! Ratios keep their integer numerator and denominator so that exact values
//! such as 35/39 can be compared without floating point.

use crate::error::{Error, Result};
use crate::fca::{FactorSet, FormalConcept};
use crate::matrix::BooleanMatrix;
use crate::mdl::{self, BitLength};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
    pub value: f64,
}

impl Ratio {
    fn new(num: usize, den: usize) -> Self {
        Ratio {
            num,
            den,
            value: num as f64 / den as f64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorCounts {
    pub nontrivial: usize,
    pub trivial: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Overlap {
    /// `Σ |C|·|D|` over the factors.
    pub area: usize,
    /// Distinct cells covered by at least one factor.
    pub covered: usize,
    /// `area / covered`; `None` when nothing is covered.
    pub rate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub k_total: usize,
    pub k_trivial: usize,
    pub k_nontrivial: usize,
    pub data_coverage: Ratio,
    pub object_coverage: Ratio,
    pub overlap: Overlap,
    pub total_cost: BitLength,
    pub residual_ones: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorFilter {
    All,
    Trivial,
    Nontrivial,
}

impl FactorFilter {
    pub fn keeps(self, factor: &FormalConcept) -> bool {
        match self {
            FactorFilter::All => true,
            FactorFilter::Trivial => is_trivial(factor),
            FactorFilter::Nontrivial => !is_trivial(factor),
        }
    }
}

/// A factor is trivial when its intent is a single attribute.
pub fn is_trivial(factor: &FormalConcept) -> bool {
    factor.intent().count() == 1
}

pub fn factor_counts(factors: &FactorSet) -> FactorCounts {
    let trivial = factors.iter().filter(|f| is_trivial(f)).count();
    FactorCounts {
        nontrivial: factors.len() - trivial,
        trivial,
    }
}

/// Per-cell cover multiplicities of a from-below factor set.
struct CoverCounts {
    counts: Vec<u32>,
    area: usize,
}

impl CoverCounts {
    fn new(data: &BooleanMatrix, factors: &FactorSet) -> Result<Self> {
        let (m, n) = (data.rows(), data.cols());
        let mut counts = vec![0u32; m * n];
        let mut area = 0;
        for (l, f) in factors.iter().enumerate() {
            for (expected, found) in [(m, f.extent().universe()), (n, f.intent().universe())] {
                if expected != found {
                    return Err(Error::UniverseMismatch { expected, found });
                }
            }
            for i in f.extent().iter() {
                for j in f.intent().iter() {
                    if !data.get(i, j) {
                        return Err(Error::NotFromBelow {
                            factor: l,
                            row: i,
                            col: j,
                        });
                    }
                    counts[i * n + j] += 1;
                }
            }
            area += f.area();
        }
        Ok(CoverCounts { counts, area })
    }

    fn covered(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Covered ones over all ones of `data`. Defined as 1 when `data` has no ones.
pub fn data_coverage(data: &BooleanMatrix, factors: &FactorSet) -> Result<Ratio> {
    let covered = CoverCounts::new(data, factors)?.covered();
    Ok(data_ratio(covered, data.ones()))
}

fn data_ratio(covered: usize, ones: usize) -> Ratio {
    if ones == 0 {
        Ratio {
            num: 0,
            den: 0,
            value: 1.0,
        }
    } else {
        Ratio::new(covered, ones)
    }
}

/// Fraction of objects that lie in the extent of at least one factor with a
/// non-empty intent.
pub fn object_coverage(data: &BooleanMatrix, factors: &FactorSet) -> Result<Ratio> {
    let m = data.rows();
    let mut touched = crate::bitset::BitSet::empty(m);
    for f in factors {
        if f.extent().universe() != m {
            return Err(Error::UniverseMismatch {
                expected: m,
                found: f.extent().universe(),
            });
        }
        if !f.intent().is_empty() {
            touched.union_with(f.extent());
        }
    }
    Ok(Ratio::new(touched.count(), m))
}

/// Total factor area over distinct covered cells. Errors when no cell is
/// covered.
pub fn overlap_rate(data: &BooleanMatrix, factors: &FactorSet) -> Result<Ratio> {
    let counts = CoverCounts::new(data, factors)?;
    let covered = counts.covered();
    if covered == 0 {
        return Err(Error::UndefinedRate);
    }
    Ok(Ratio::new(counts.area, covered))
}

/// All metrics of `factors` on `data`.
pub fn evaluate(data: &BooleanMatrix, factors: &FactorSet) -> Result<MetricsReport> {
    let counts = CoverCounts::new(data, factors)?;
    let covered = counts.covered();
    let ones = data.ones();
    let k = factor_counts(factors);
    Ok(MetricsReport {
        k_total: factors.len(),
        k_trivial: k.trivial,
        k_nontrivial: k.nontrivial,
        data_coverage: data_ratio(covered, ones),
        object_coverage: object_coverage(data, factors)?,
        overlap: Overlap {
            area: counts.area,
            covered,
            rate: (covered > 0).then(|| counts.area as f64 / covered as f64),
        },
        total_cost: mdl::total_cost(data, factors)?,
        residual_ones: ones - covered,
    })
}

/// [`evaluate`] restricted to the factors selected by `filter`.
pub fn evaluate_filtered(
    data: &BooleanMatrix,
    factors: &FactorSet,
    filter: FactorFilter,
) -> Result<MetricsReport> {
    evaluate(data, &factors.filtered(|f| filter.keeps(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fca::{AttributeSet, ObjectSet};

    fn rect(m: usize, n: usize, rows: &[usize], cols: &[usize]) -> FormalConcept {
        FormalConcept::from_parts(
            ObjectSet::from_indices(m, rows.iter().copied()),
            AttributeSet::from_indices(n, cols.iter().copied()),
        )
    }

    #[test]
    fn empty_factor_set() {
        let data = BooleanMatrix::from_fn(4, 4, |i, j| i == j);
        let f = FactorSet::new();
        assert_eq!(data_coverage(&data, &f).unwrap().num, 0);
        assert_eq!(object_coverage(&data, &f).unwrap().value, 0.0);
        assert!(matches!(overlap_rate(&data, &f), Err(Error::UndefinedRate)));
        let r = evaluate(&data, &f).unwrap();
        assert_eq!(r.residual_ones, 4);
        assert_eq!(r.overlap.rate, None);
    }

    #[test]
    fn all_zero_data_has_full_coverage() {
        let data = BooleanMatrix::zeros(3, 3);
        let r = data_coverage(&data, &FactorSet::new()).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn rejects_cover_outside_data() {
        let data = BooleanMatrix::from_fn(3, 3, |i, j| i == j);
        let f = FactorSet::from_factors(vec![rect(3, 3, &[0, 1], &[0])]).unwrap();
        match data_coverage(&data, &f) {
            Err(Error::NotFromBelow { factor, row, col }) => {
                assert_eq!((factor, row, col), (0, 1, 0))
            }
            other => panic!("expected from-below violation, got {other:?}"),
        }
    }

    #[test]
    fn empty_intent_does_not_touch_objects() {
        let data = BooleanMatrix::from_fn(3, 3, |_, _| true);
        let f = FactorSet::from_factors(vec![rect(3, 3, &[0, 1], &[])]).unwrap();
        assert_eq!(object_coverage(&data, &f).unwrap().num, 0);
    }

    #[test]
    fn disjoint_factors_do_not_overlap() {
        let data = BooleanMatrix::from_fn(4, 4, |_, _| true);
        let f = FactorSet::from_factors(vec![
            rect(4, 4, &[0, 1], &[0, 1, 2, 3]),
            rect(4, 4, &[2, 3], &[0, 1]),
        ])
        .unwrap();
        let o = overlap_rate(&data, &f).unwrap();
        assert_eq!((o.num, o.den, o.value), (12, 12, 1.0));
    }

    #[test]
    fn trivial_and_nontrivial_counts() {
        let f = FactorSet::from_factors(vec![
            rect(4, 4, &[0], &[0]),
            rect(4, 4, &[1], &[0, 1]),
            rect(4, 4, &[2], &[]),
        ])
        .unwrap();
        assert_eq!(
            factor_counts(&f),
            FactorCounts {
                nontrivial: 2,
                trivial: 1
            }
        );
    }
}

//! Description lengths, in bits, of a from-below factorization.
//!
//! The model is encoded as the three dimensions, each factor's extent and
//! intent as a characteristic vector under an optimal prefix code, and the
//! residual matrix cell by cell. Only code lengths are computed; no code is
//! materialized.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::fca::{factors_to_matrices, AttributeSet, FactorSet, FormalConcept, ObjectSet};
use crate::matrix::BooleanMatrix;

/// A non-negative code length in bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct BitLength(f64);

impl BitLength {
    pub const ZERO: BitLength = BitLength(0.0);

    pub fn bits(self) -> f64 {
        self.0
    }

    pub(crate) fn from_bits(bits: f64) -> Self {
        BitLength(bits)
    }
}

impl Add for BitLength {
    type Output = BitLength;

    fn add(self, rhs: BitLength) -> BitLength {
        BitLength(self.0 + rhs.0)
    }
}

impl Sum for BitLength {
    fn sum<I: Iterator<Item = BitLength>>(iter: I) -> BitLength {
        iter.fold(BitLength::ZERO, Add::add)
    }
}

impl fmt::Display for BitLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4} bits", self.0)
    }
}

/// `-(a·log2(a/t) + (t-a)·log2((t-a)/t))`, the optimal code length of a
/// binary string of length `t` holding `a` ones, with `0·log 0 = 0`.
pub fn entropy_length(ones: usize, total: usize) -> Result<BitLength> {
    if total == 0 {
        return Err(Error::Domain("entropy of an empty string".into()));
    }
    if ones > total {
        return Err(Error::Domain(format!(
            "{ones} ones in a string of length {total}"
        )));
    }
    Ok(BitLength(entropy_bits(ones, total)))
}

#[inline]
fn entropy_bits(ones: usize, total: usize) -> f64 {
    let t = total as f64;
    let term = |c: usize| {
        if c == 0 {
            0.0
        } else {
            let c = c as f64;
            c * (c / t).log2()
        }
    };
    -(term(ones) + term(total - ones))
}

/// Length of one characteristic vector over a universe of `universe`
/// elements with `members` ones: `log2(universe)` bits for the symbol
/// probability plus the entropy code.
pub fn vector_length(members: usize, universe: usize) -> Result<BitLength> {
    let body = entropy_length(members, universe)?;
    Ok(BitLength((universe as f64).log2()) + body)
}

/// Code length of one column of `A_F`.
pub fn extent_length(extent: &ObjectSet, rows: usize) -> Result<BitLength> {
    if extent.universe() != rows {
        return Err(Error::UniverseMismatch {
            expected: rows,
            found: extent.universe(),
        });
    }
    vector_length(extent.count(), rows)
}

/// Code length of one row of `B_F`.
pub fn intent_length(intent: &AttributeSet, cols: usize) -> Result<BitLength> {
    if intent.universe() != cols {
        return Err(Error::UniverseMismatch {
            expected: cols,
            found: intent.universe(),
        });
    }
    vector_length(intent.count(), cols)
}

/// `extent_length + intent_length` of a single factor.
pub fn factor_length(factor: &FormalConcept, rows: usize, cols: usize) -> Result<BitLength> {
    Ok(extent_length(factor.extent(), rows)? + intent_length(factor.intent(), cols)?)
}

/// Code length of the residual matrix, encoded element by element.
pub fn error_length(residual: &BooleanMatrix) -> Result<BitLength> {
    residual_length(residual.ones(), residual.rows(), residual.cols())
}

/// [`error_length`] for a `rows × cols` residual holding `ones` ones.
pub fn residual_length(ones: usize, rows: usize, cols: usize) -> Result<BitLength> {
    vector_length(ones, rows * cols)
}

/// `L(m) + L(n) + L(k)` with block coding: `3·log2(max(m, n, k))`.
pub fn dimension_length(rows: usize, cols: usize, factors: usize) -> BitLength {
    let max = rows.max(cols).max(factors).max(1);
    BitLength(3.0 * (max as f64).log2())
}

/// Combines the cost parts in a fixed order so every caller evaluating the
/// same factorization gets a bit-identical value.
pub(crate) fn assemble(
    rows: usize,
    cols: usize,
    factors: usize,
    model: BitLength,
    residual_ones: usize,
) -> Result<BitLength> {
    Ok(dimension_length(rows, cols, factors) + model + residual_length(residual_ones, rows, cols)?)
}

/// Total description length `L(A_F ∘ B_F) + L(E)` of `data` under `factors`,
/// with `E = I ⊖ (A_F ∘ B_F)`.
///
/// This evaluates the formula from scratch: it builds both factor matrices,
/// multiplies them and counts the residual.
pub fn total_cost(data: &BooleanMatrix, factors: &FactorSet) -> Result<BitLength> {
    let (m, n) = (data.rows(), data.cols());
    let (a, b) = factors_to_matrices(factors, m, n)?;
    let residual = data.subtract(&a.product(&b)?)?;
    let mut model = BitLength::ZERO;
    for f in factors {
        model = model + factor_length(f, m, n)?;
    }
    assemble(m, n, factors.len(), model, residual.ones())
}

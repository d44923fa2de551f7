//! Bit-packed Boolean matrices.
//!
//! Rows are stored as packed `u64` words, and a transposed copy gives the
//! same word-level access to columns. Both views are built once; a matrix is
//! never mutated after construction.

use std::fmt;

use crate::bitset::{words_for, BitSet};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    rows: usize,
    cols: usize,
    row_stride: usize,
    col_stride: usize,
    row_data: Vec<u64>,
    col_data: Vec<u64>,
}

/// Mutable staging area for a [`BooleanMatrix`].
#[derive(Clone, Debug)]
pub struct MatrixBuilder {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl MatrixBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        MatrixBuilder {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "cell ({i}, {j}) out of bounds"
        );
        let w = &mut self.data[i * self.stride + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    /// Sets every cell of `rows × cols` to one.
    pub fn fill_rectangle(&mut self, rows: &BitSet, cols: &BitSet) {
        assert_eq!(rows.universe(), self.rows);
        assert_eq!(cols.universe(), self.cols);
        for i in rows {
            let row = &mut self.data[i * self.stride..(i + 1) * self.stride];
            for (w, c) in row.iter_mut().zip(cols.words()) {
                *w |= c;
            }
        }
    }

    pub fn build(self) -> BooleanMatrix {
        BooleanMatrix::from_row_words(self.rows, self.cols, self.data)
    }
}

impl BooleanMatrix {
    fn from_row_words(rows: usize, cols: usize, row_data: Vec<u64>) -> Self {
        let row_stride = words_for(cols);
        let col_stride = words_for(rows);
        debug_assert_eq!(row_data.len(), rows * row_stride);
        let mut col_data = vec![0u64; cols * col_stride];
        for i in 0..rows {
            let row = &row_data[i * row_stride..(i + 1) * row_stride];
            for (wi, &word) in row.iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let j = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    col_data[j * col_stride + i / 64] |= 1 << (i % 64);
                }
            }
        }
        BooleanMatrix {
            rows,
            cols,
            row_stride,
            col_stride,
            row_data,
            col_data,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixBuilder::new(rows, cols).build()
    }

    pub fn from_fn<F: FnMut(usize, usize) -> bool>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut b = MatrixBuilder::new(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    b.set(i, j, true);
                }
            }
        }
        b.build()
    }

    /// Builds a matrix from rows of 0/1 values. All rows must have the same
    /// length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut b = MatrixBuilder::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    op: "from_rows",
                    left_rows: i,
                    left_cols: row.len(),
                    right_rows: i,
                    right_cols: cols,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => b.set(i, j, true),
                    other => {
                        return Err(Error::Domain(format!(
                            "cell ({i}, {j}) has value {other}, expected 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(b.build())
    }

    /// Builds a matrix whose `i`th row is `row_sets[i]`.
    pub fn from_row_sets(cols: usize, row_sets: &[BitSet]) -> Result<Self> {
        let stride = words_for(cols);
        let mut data = Vec::with_capacity(row_sets.len() * stride);
        for r in row_sets {
            if r.universe() != cols {
                return Err(Error::UniverseMismatch {
                    expected: cols,
                    found: r.universe(),
                });
            }
            data.extend_from_slice(r.words());
        }
        Ok(Self::from_row_words(row_sets.len(), cols, data))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "cell ({i}, {j}) out of bounds"
        );
        self.row_data[i * self.row_stride + j / 64] >> (j % 64) & 1 == 1
    }

    /// Packed words of row `i` (bit `j` is column `j`).
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.row_data[i * self.row_stride..(i + 1) * self.row_stride]
    }

    /// Packed words of column `j` (bit `i` is row `i`).
    #[inline]
    pub fn col_words(&self, j: usize) -> &[u64] {
        &self.col_data[j * self.col_stride..(j + 1) * self.col_stride]
    }

    pub fn row(&self, i: usize) -> BitSet {
        BitSet::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn col(&self, j: usize) -> BitSet {
        BitSet::from_words(self.rows, self.col_words(j).to_vec())
    }

    /// Number of ones in the matrix.
    pub fn ones(&self) -> usize {
        self.row_data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn density(&self) -> f64 {
        if self.cells() == 0 {
            0.0
        } else {
            self.ones() as f64 / self.cells() as f64
        }
    }

    pub fn transpose(&self) -> BooleanMatrix {
        BooleanMatrix {
            rows: self.cols,
            cols: self.rows,
            row_stride: self.col_stride,
            col_stride: self.row_stride,
            row_data: self.col_data.clone(),
            col_data: self.row_data.clone(),
        }
    }

    fn check_same_shape(&self, other: &BooleanMatrix, op: &'static str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn zip_words(&self, other: &BooleanMatrix, f: impl Fn(u64, u64) -> u64) -> BooleanMatrix {
        let data = self
            .row_data
            .iter()
            .zip(&other.row_data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_row_words(self.rows, self.cols, data)
    }

    /// Boolean product: `(A ∘ B)_ij = OR_l (A_il AND B_lj)`.
    pub fn product(&self, other: &BooleanMatrix) -> Result<BooleanMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "product",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let stride = other.row_stride;
        let mut data = vec![0u64; self.rows * stride];
        for i in 0..self.rows {
            let out = &mut data[i * stride..(i + 1) * stride];
            for l in BitSetView::new(self.row_words(i)) {
                for (o, b) in out.iter_mut().zip(other.row_words(l)) {
                    *o |= b;
                }
            }
        }
        Ok(Self::from_row_words(self.rows, other.cols, data))
    }

    /// Boolean difference: one where `self` is one and `other` is zero.
    pub fn subtract(&self, other: &BooleanMatrix) -> Result<BooleanMatrix> {
        self.check_same_shape(other, "subtract")?;
        Ok(self.zip_words(other, |a, b| a & !b))
    }

    /// Boolean sum: cell-wise OR.
    pub fn sum(&self, other: &BooleanMatrix) -> Result<BooleanMatrix> {
        self.check_same_shape(other, "sum")?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    /// True if every one of `self` is also a one of `other`.
    pub fn is_below(&self, other: &BooleanMatrix) -> Result<bool> {
        self.check_same_shape(other, "is_below")?;
        Ok(self
            .row_data
            .iter()
            .zip(&other.row_data)
            .all(|(a, b)| a & !b == 0))
    }
}

/// `E(I, A ∘ B) = ‖I ⊖ (A ∘ B)‖`, the number of ones of `data` left
/// uncovered by the product.
pub fn reconstruction_error(
    data: &BooleanMatrix,
    a: &BooleanMatrix,
    b: &BooleanMatrix,
) -> Result<usize> {
    let product = a.product(b)?;
    Ok(data.subtract(&product)?.ones())
}

struct BitSetView<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitSetView<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitSetView {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitSetView<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BooleanMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn identity(n: usize) -> BooleanMatrix {
        BooleanMatrix::from_fn(n, n, |i, j| i == j)
    }

    #[test]
    fn ones_count_basic() {
        assert_eq!(BooleanMatrix::zeros(3, 3).ones(), 0);
        assert_eq!(identity(4).ones(), 4);
    }

    #[test]
    fn column_view_matches_rows() {
        let m = BooleanMatrix::from_fn(70, 130, |i, j| (i * 7 + j * 3) % 5 == 0);
        for j in 0..130 {
            for i in 0..70 {
                assert_eq!(m.col(j).contains(i), m.get(i, j));
            }
        }
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn full_rectangle_product() {
        let a = BooleanMatrix::from_fn(4, 1, |_, _| true);
        let b = BooleanMatrix::from_fn(1, 5, |_, _| true);
        let p = a.product(&b).unwrap();
        assert_eq!(p.ones(), 20);
    }

    #[test]
    fn empty_inner_dimension_product_is_zero() {
        let a = BooleanMatrix::zeros(3, 0);
        let b = BooleanMatrix::zeros(0, 4);
        let p = a.product(&b).unwrap();
        assert_eq!((p.rows(), p.cols(), p.ones()), (3, 4, 0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = BooleanMatrix::zeros(3, 2);
        let b = BooleanMatrix::zeros(3, 2);
        assert!(matches!(
            a.product(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        let c = BooleanMatrix::zeros(2, 3);
        assert!(a.subtract(&c).is_err());
        assert!(a.sum(&c).is_err());
    }

    #[test]
    fn self_subtraction_and_zero_sum() {
        let m = BooleanMatrix::from_fn(5, 9, |i, j| (i + j) % 3 == 0);
        assert_eq!(m.subtract(&m).unwrap().ones(), 0);
        assert_eq!(m.sum(&BooleanMatrix::zeros(5, 9)).unwrap(), m);
    }

    #[test]
    fn from_rows_rejects_ragged_and_non_binary() {
        assert!(BooleanMatrix::from_rows(&[vec![1, 0], vec![1]]).is_err());
        assert!(BooleanMatrix::from_rows(&[vec![2, 0]]).is_err());
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r)
        })
    }

    fn build(cells: &[Vec<bool>]) -> BooleanMatrix {
        BooleanMatrix::from_fn(cells.len(), cells[0].len(), |i, j| cells[i][j])
    }

    proptest! {
        #[test]
        fn product_distributes_over_factor_union(
            a in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 3), 6),
            b in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 5), 3),
            c in proptest::collection::vec(any::<bool>(), 6),
            r in proptest::collection::vec(any::<bool>(), 5),
        ) {
            let am = build(&a);
            let bm = build(&b);
            let a_ext = BooleanMatrix::from_fn(6, 4, |i, l| if l < 3 { a[i][l] } else { c[i] });
            let b_ext = BooleanMatrix::from_fn(4, 5, |l, j| if l < 3 { b[l][j] } else { r[j] });
            let rect = BooleanMatrix::from_fn(6, 5, |i, j| c[i] && r[j]);
            let lhs = a_ext.product(&b_ext).unwrap();
            let rhs = am.product(&bm).unwrap().sum(&rect).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn subtract_never_keeps_ones_of_subtrahend(x in arb_matrix(32), seed in any::<u64>()) {
            let a = build(&x);
            let b = BooleanMatrix::from_fn(a.rows(), a.cols(), |i, j| (seed >> ((i * 7 + j) % 64)) & 1 == 1);
            let d = a.subtract(&b).unwrap();
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    prop_assert!(!(b.get(i, j) && d.get(i, j)));
                }
            }
        }
    }
}

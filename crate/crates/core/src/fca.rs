//! Formal concept analysis over a [`BooleanMatrix`] viewed as a formal
//! context: rows are objects, columns are attributes.

use std::ops::{Deref, DerefMut};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::matrix::{BooleanMatrix, MatrixBuilder};

/// Default cap on `rows * cols` for [`enumerate_concepts`].
pub const DEFAULT_CONCEPT_LIMIT: usize = 1_000_000;

macro_rules! index_set {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
        pub struct $name(BitSet);

        impl $name {
            pub fn empty(universe: usize) -> Self {
                $name(BitSet::empty(universe))
            }

            pub fn full(universe: usize) -> Self {
                $name(BitSet::full(universe))
            }

            pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
                $name(BitSet::from_indices(universe, indices))
            }

            pub fn as_bits(&self) -> &BitSet {
                &self.0
            }

            pub fn into_bits(self) -> BitSet {
                self.0
            }
        }

        impl From<BitSet> for $name {
            fn from(bits: BitSet) -> Self {
                $name(bits)
            }
        }

        impl Deref for $name {
            type Target = BitSet;

            fn deref(&self) -> &BitSet {
                &self.0
            }
        }

        impl DerefMut for $name {
            fn deref_mut(&mut self) -> &mut BitSet {
                &mut self.0
            }
        }
    };
}

index_set!(
    /// A set of objects (row indices).
    ObjectSet
);
index_set!(
    /// A set of attributes (column indices).
    AttributeSet
);

fn check_universe(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::UniverseMismatch { expected, found });
    }
    Ok(())
}

/// Attributes shared by every object of `objects`. The empty object set maps
/// to all attributes.
pub fn up(data: &BooleanMatrix, objects: &ObjectSet) -> Result<AttributeSet> {
    check_universe(data.rows(), objects.universe())?;
    Ok(up_unchecked(data, objects))
}

/// Objects having every attribute of `attributes`. The empty attribute set
/// maps to all objects.
pub fn down(data: &BooleanMatrix, attributes: &AttributeSet) -> Result<ObjectSet> {
    check_universe(data.cols(), attributes.universe())?;
    Ok(down_unchecked(data, attributes))
}

pub(crate) fn up_unchecked(data: &BooleanMatrix, objects: &BitSet) -> AttributeSet {
    let mut acc = BitSet::full(data.cols()).words().to_vec();
    for i in objects {
        let mut any = 0;
        for (a, r) in acc.iter_mut().zip(data.row_words(i)) {
            *a &= r;
            any |= *a;
        }
        if any == 0 {
            break;
        }
    }
    AttributeSet(BitSet::from_words(data.cols(), acc))
}

pub(crate) fn down_unchecked(data: &BooleanMatrix, attributes: &BitSet) -> ObjectSet {
    let mut acc = BitSet::full(data.rows()).words().to_vec();
    for j in attributes {
        intersect_words(&mut acc, data.col_words(j));
    }
    ObjectSet(BitSet::from_words(data.rows(), acc))
}

/// `extent ∩ column(j)`, the objects of `extent` that also have attribute `j`.
pub(crate) fn extend_extent(data: &BooleanMatrix, extent: &ObjectSet, j: usize) -> ObjectSet {
    let mut words = extent.words().to_vec();
    intersect_words(&mut words, data.col_words(j));
    ObjectSet(BitSet::from_words(data.rows(), words))
}

#[inline]
fn intersect_words(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a &= b;
    }
}

/// Closes an attribute set: returns `⟨D↓, D↓↑⟩`.
pub fn close_attribute_set(
    data: &BooleanMatrix,
    attributes: &AttributeSet,
) -> Result<FormalConcept> {
    let extent = down(data, attributes)?;
    let intent = up_unchecked(data, &extent);
    Ok(FormalConcept { extent, intent })
}

/// A pair ⟨extent, intent⟩. Values produced by the closure operators are
/// formal concepts of the matrix they came from; pairs read from factor
/// files may be arbitrary rectangles, see [`FormalConcept::is_concept_of`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormalConcept {
    extent: ObjectSet,
    intent: AttributeSet,
}

impl FormalConcept {
    /// Pairs an extent and an intent without checking closedness.
    pub fn from_parts(extent: ObjectSet, intent: AttributeSet) -> Self {
        FormalConcept { extent, intent }
    }

    pub fn extent(&self) -> &ObjectSet {
        &self.extent
    }

    pub fn intent(&self) -> &AttributeSet {
        &self.intent
    }

    /// `|C| · |D|`, the number of cells the rectangle spans.
    pub fn area(&self) -> usize {
        self.extent.count() * self.intent.count()
    }

    pub fn is_concept_of(&self, data: &BooleanMatrix) -> bool {
        self.extent.universe() == data.rows()
            && self.intent.universe() == data.cols()
            && up_unchecked(data, &self.extent) == self.intent
            && down_unchecked(data, &self.intent) == self.extent
    }

    /// True when every cell of the rectangle is a one of `data`.
    pub fn is_inside(&self, data: &BooleanMatrix) -> bool {
        self.extent
            .iter()
            .all(|i| self.intent.is_subset(&data.row(i)))
    }
}

/// An ordered list of pairwise distinct factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorSet {
    factors: Vec<FormalConcept>,
}

impl FactorSet {
    pub fn new() -> Self {
        FactorSet::default()
    }

    /// Builds a factor set, rejecting duplicate factors.
    pub fn from_factors(factors: Vec<FormalConcept>) -> Result<Self> {
        let mut set = FactorSet::new();
        for (l, f) in factors.into_iter().enumerate() {
            if !set.push(f) {
                return Err(Error::Domain(format!("factor {} is a duplicate", l + 1)));
            }
        }
        Ok(set)
    }

    /// Appends `factor` unless an equal factor is already present. Returns
    /// whether it was added.
    pub fn push(&mut self, factor: FormalConcept) -> bool {
        if self.contains(&factor) {
            return false;
        }
        self.factors.push(factor);
        true
    }

    pub fn contains(&self, factor: &FormalConcept) -> bool {
        self.factors.iter().any(|f| f == factor)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FormalConcept> {
        self.factors.iter()
    }

    pub fn as_slice(&self) -> &[FormalConcept] {
        &self.factors
    }

    /// The sub-list of factors satisfying `keep`, in original order.
    pub fn filtered<F: Fn(&FormalConcept) -> bool>(&self, keep: F) -> FactorSet {
        FactorSet {
            factors: self.factors.iter().filter(|f| keep(f)).cloned().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a FactorSet {
    type Item = &'a FormalConcept;
    type IntoIter = std::slice::Iter<'a, FormalConcept>;

    fn into_iter(self) -> Self::IntoIter {
        self.factors.iter()
    }
}

/// Object-factor matrix `A_F` (m×k) and factor-attribute matrix `B_F` (k×n):
/// column `l` of `A_F` is the extent of factor `l`, row `l` of `B_F` its intent.
pub fn factors_to_matrices(
    factors: &FactorSet,
    rows: usize,
    cols: usize,
) -> Result<(BooleanMatrix, BooleanMatrix)> {
    let k = factors.len();
    let mut a = MatrixBuilder::new(rows, k);
    let mut intents = Vec::with_capacity(k);
    for (l, f) in factors.iter().enumerate() {
        check_universe(rows, f.extent.universe())?;
        check_universe(cols, f.intent.universe())?;
        for i in f.extent.iter() {
            a.set(i, l, true);
        }
        intents.push(f.intent.as_bits().clone());
    }
    let b = BooleanMatrix::from_row_sets(cols, &intents)?;
    Ok((a.build(), b))
}

/// All formal concepts of `data`, in lectic order of the enumerated side.
/// Fails if the matrix has more than [`DEFAULT_CONCEPT_LIMIT`] cells.
pub fn enumerate_concepts(data: &BooleanMatrix) -> Result<Vec<FormalConcept>> {
    enumerate_concepts_with_limit(data, DEFAULT_CONCEPT_LIMIT)
}

pub fn enumerate_concepts_with_limit(
    data: &BooleanMatrix,
    limit: usize,
) -> Result<Vec<FormalConcept>> {
    let mut out = Vec::new();
    for_each_concept(data, limit, |c| out.push(c))?;
    Ok(out)
}

/// Streams every formal concept of `data` to `visit`.
///
/// Runs NextClosure over whichever dimension is smaller. Each concept is
/// produced exactly once.
pub fn for_each_concept<F: FnMut(FormalConcept)>(
    data: &BooleanMatrix,
    limit: usize,
    mut visit: F,
) -> Result<()> {
    let cells = data.cells();
    if cells > limit {
        return Err(Error::SizeLimit { cells, limit });
    }
    if data.rows() < data.cols() {
        let t = data.transpose();
        next_closure(&t, |extent_t, intent_t| {
            visit(FormalConcept {
                extent: ObjectSet(intent_t),
                intent: AttributeSet(extent_t),
            })
        });
    } else {
        next_closure(data, |extent, intent| {
            visit(FormalConcept {
                extent: ObjectSet(extent),
                intent: AttributeSet(intent),
            })
        });
    }
    Ok(())
}

/// Enumerates closed attribute sets of `data` in lectic order, passing
/// `(extent, intent)` bitsets to `visit`.
fn next_closure<F: FnMut(BitSet, BitSet)>(data: &BooleanMatrix, mut visit: F) {
    let n = data.cols();
    let close = |attrs: &BitSet| {
        let extent = down_unchecked(data, attrs).0;
        let intent = up_unchecked(data, &extent).0;
        (extent, intent)
    };

    let (extent, mut current) = close(&BitSet::empty(n));
    visit(extent, current.clone());

    'outer: loop {
        // Lectic successor: the largest i not in `current` whose closure of
        // (current ∩ {0..i}) ∪ {i} adds nothing below i.
        let mut prefix = current.clone();
        for i in (0..n).rev() {
            if prefix.contains(i) {
                prefix.remove(i);
                continue;
            }
            let mut candidate = prefix.clone();
            candidate.insert(i);
            let (extent, closed) = close(&candidate);
            let mut added = closed.clone();
            added.difference_with(&prefix);
            if added.iter().next() == Some(i) {
                current = closed;
                visit(extent, current.clone());
                continue 'outer;
            }
        }
        break;
    }
}

/// Number of formal concepts, counted without materializing them.
pub fn count_concepts(data: &BooleanMatrix, limit: usize) -> Result<usize> {
    let mut count = 0;
    for_each_concept(data, limit, |_| count += 1)?;
    Ok(count)
}

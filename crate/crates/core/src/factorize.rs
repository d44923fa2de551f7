//! Greedy from-below factorization by formal concepts.
//!
//! Both algorithms grow one candidate concept at a time: starting from the
//! empty intent, they repeatedly try adding each attribute `j ∉ D`, close
//! `D ∪ {j}`, and keep the best closure. [`mdl_grecond`] scores a candidate
//! by the total description length of the factorization it would produce;
//! [`grecond`] scores it by how many uncovered ones it would cover.

use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;

use crate::bitset::and_count;
use crate::error::{Error, Result};
use crate::fca::{extend_extent, up_unchecked, AttributeSet, FactorSet, FormalConcept, ObjectSet};
use crate::matrix::BooleanMatrix;
use crate::mdl::{self, BitLength};

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResult {
    pub factors: FactorSet,
    /// Total description length of the empty factorization, followed by the
    /// total after each accepted factor.
    pub cost_trace: Vec<BitLength>,
    pub residual_ones: usize,
}

impl FactorizationResult {
    pub fn final_cost(&self) -> BitLength {
        *self
            .cost_trace
            .last()
            .expect("trace holds the starting cost")
    }
}

/// How [`mdl_grecond_with`] evaluates the cost of a candidate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CostEvaluation {
    /// Tracks the residual and the running model length, and scores a
    /// candidate from its newly covered cells only.
    #[default]
    Incremental,
    /// Recomputes [`mdl::total_cost`] from scratch for every candidate.
    Naive,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MdlOptions {
    pub evaluation: CostEvaluation,
    /// Score the candidates of one growth step on the rayon pool.
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GreConDOptions {
    /// Stop once at most this many ones remain uncovered.
    pub epsilon: usize,
    pub max_factors: Option<usize>,
    pub parallel: bool,
}

fn check_nonempty(data: &BooleanMatrix) -> Result<()> {
    if data.rows() == 0 || data.cols() == 0 {
        return Err(Error::Domain(format!(
            "cannot factorize a {}x{} matrix",
            data.rows(),
            data.cols()
        )));
    }
    Ok(())
}

/// Uncovered ones of the data, row-major and packed like the matrix.
struct Residual {
    stride: usize,
    words: Vec<u64>,
    ones: usize,
}

impl Residual {
    fn new(data: &BooleanMatrix) -> Self {
        let stride = data.row_words(0).len();
        let mut words = Vec::with_capacity(data.rows() * stride);
        for i in 0..data.rows() {
            words.extend_from_slice(data.row_words(i));
        }
        Residual {
            stride,
            words,
            ones: data.ones(),
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Uncovered ones inside `extent × intent`.
    fn covered_by(&self, extent: &ObjectSet, intent: &AttributeSet) -> usize {
        extent
            .iter()
            .map(|i| and_count(self.row(i), intent.words()))
            .sum()
    }

    fn cover(&mut self, factor: &FormalConcept) {
        let intent = factor.intent().words();
        for i in factor.extent().iter() {
            let row = &mut self.words[i * self.stride..(i + 1) * self.stride];
            for (w, d) in row.iter_mut().zip(intent) {
                self.ones -= (*w & d).count_ones() as usize;
                *w &= !d;
            }
        }
    }
}

/// A scored candidate. Ordered by score, then by attribute index, so the
/// minimum is the deterministic winner of a growth step.
struct Scored<S> {
    score: S,
    attribute: usize,
    concept: FormalConcept,
}

/// Scores every attribute outside `intent` and returns the best candidate
/// under `better` (a strict "is better than" on scores); ties go to the
/// smallest attribute index.
fn best_extension<S, F, B>(
    data: &BooleanMatrix,
    extent: &ObjectSet,
    intent: &AttributeSet,
    parallel: bool,
    score: F,
    better: B,
) -> Result<Option<Scored<S>>>
where
    S: Send,
    F: Fn(&FormalConcept) -> Result<Option<S>> + Sync,
    B: Fn(&S, &S) -> Ordering + Sync,
{
    let evaluate = |j: usize| -> Result<Option<Scored<S>>> {
        let new_extent = extend_extent(data, extent, j);
        if new_extent.is_empty() {
            return Ok(None);
        }
        let new_intent = up_unchecked(data, &new_extent);
        let concept = FormalConcept::from_parts(new_extent, new_intent);
        Ok(score(&concept)?.map(|score| Scored {
            score,
            attribute: j,
            concept,
        }))
    };
    let pick = |a: Scored<S>, b: Scored<S>| match better(&a.score, &b.score)
        .then(a.attribute.cmp(&b.attribute))
    {
        Ordering::Greater => b,
        _ => a,
    };
    let free = (0..data.cols()).filter(|&j| !intent.contains(j));
    if parallel {
        let scored: Vec<Scored<S>> = free
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(evaluate)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(scored.into_iter().reduce(pick))
    } else {
        let mut best: Option<Scored<S>> = None;
        for j in free {
            if let Some(c) = evaluate(j)? {
                best = Some(match best {
                    None => c,
                    Some(b) => pick(b, c),
                });
            }
        }
        Ok(best)
    }
}

/// MDLGreConD with default options (incremental cost, sequential scan).
pub fn mdl_grecond(data: &BooleanMatrix) -> Result<FactorizationResult> {
    mdl_grecond_with(data, &MdlOptions::default())
}

/// Selects factor concepts greedily while the total description length
/// `L(A_F ∘ B_F) + L(E)` strictly decreases.
///
/// Each factor is grown from `⟨∅, ∅⟩`: every attribute `j ∉ D` is tried by
/// closing `D ∪ {j}`, candidates already in `F` are skipped, and the
/// candidate with the lowest cost replaces the current one if that cost is
/// strictly below the best seen so far. When no attribute improves the cost
/// the candidate is accepted; if the first pass finds no improvement the
/// run ends.
pub fn mdl_grecond_with(data: &BooleanMatrix, options: &MdlOptions) -> Result<FactorizationResult> {
    check_nonempty(data)?;
    let (m, n) = (data.rows(), data.cols());
    let mut factors = FactorSet::new();
    let mut intents: HashSet<AttributeSet> = HashSet::new();
    let mut residual = Residual::new(data);
    let mut model = BitLength::ZERO;

    let mut total_cost = mdl::assemble(m, n, 0, model, residual.ones)?;
    let mut trace = vec![total_cost];

    loop {
        let k = factors.len() + 1;
        let score = |c: &FormalConcept| -> Result<Option<f64>> {
            if intents.contains(c.intent()) {
                return Ok(None);
            }
            let cost = match options.evaluation {
                CostEvaluation::Incremental => {
                    let covered = residual.covered_by(c.extent(), c.intent());
                    let model = model + mdl::factor_length(c, m, n)?;
                    mdl::assemble(m, n, k, model, residual.ones - covered)?
                }
                CostEvaluation::Naive => {
                    let mut extended = factors.clone();
                    extended.push(c.clone());
                    mdl::total_cost(data, &extended)?
                }
            };
            Ok(Some(cost.bits()))
        };

        let mut extent = ObjectSet::full(m);
        let mut intent = AttributeSet::empty(n);
        let mut candidate: Option<FormalConcept> = None;
        let mut candidate_cost = total_cost;
        loop {
            let best = best_extension(data, &extent, &intent, options.parallel, score, |a, b| {
                a.total_cmp(b)
            })?;
            match best {
                Some(s) if s.score < candidate_cost.bits() => {
                    candidate_cost = BitLength::from_bits(s.score);
                    extent = s.concept.extent().clone();
                    intent = s.concept.intent().clone();
                    candidate = Some(s.concept);
                }
                _ => break,
            }
        }

        let Some(factor) = candidate else { break };
        model = model + mdl::factor_length(&factor, m, n)?;
        residual.cover(&factor);
        intents.insert(factor.intent().clone());
        factors.push(factor);
        total_cost = candidate_cost;
        trace.push(total_cost);
    }

    Ok(FactorizationResult {
        factors,
        cost_trace: trace,
        residual_ones: residual.ones,
    })
}

/// GreConD with `epsilon = 0` and no factor limit: an exact from-below
/// decomposition.
pub fn grecond(data: &BooleanMatrix) -> Result<FactorizationResult> {
    grecond_with(data, &GreConDOptions::default())
}

/// Greedy concept cover. Each factor is grown from `⟨∅, ∅⟩` by adding the
/// attribute whose closure covers the most still-uncovered ones, as long as
/// that strictly increases the coverage. Factors are added until at most
/// `epsilon` ones remain uncovered or `max_factors` is reached.
pub fn grecond_with(data: &BooleanMatrix, options: &GreConDOptions) -> Result<FactorizationResult> {
    check_nonempty(data)?;
    let (m, n) = (data.rows(), data.cols());
    let mut factors = FactorSet::new();
    let mut residual = Residual::new(data);
    let mut model = BitLength::ZERO;
    let mut trace = vec![mdl::assemble(m, n, 0, model, residual.ones)?];

    while residual.ones > options.epsilon
        && options.max_factors.is_none_or(|max| factors.len() < max)
    {
        let score = |c: &FormalConcept| -> Result<Option<usize>> {
            Ok(Some(residual.covered_by(c.extent(), c.intent())))
        };
        let mut extent = ObjectSet::full(m);
        let mut intent = AttributeSet::empty(n);
        let mut candidate: Option<FormalConcept> = None;
        let mut covered = 0;
        loop {
            // Larger coverage is better.
            let best = best_extension(data, &extent, &intent, options.parallel, score, |a, b| {
                b.cmp(a)
            })?;
            match best {
                Some(s) if s.score > covered => {
                    covered = s.score;
                    extent = s.concept.extent().clone();
                    intent = s.concept.intent().clone();
                    candidate = Some(s.concept);
                }
                _ => break,
            }
        }

        let Some(factor) = candidate else { break };
        model = model + mdl::factor_length(&factor, m, n)?;
        residual.cover(&factor);
        factors.push(factor);
        trace.push(mdl::assemble(m, n, factors.len(), model, residual.ones)?);
    }

    Ok(FactorizationResult {
        factors,
        cost_trace: trace,
        residual_ones: residual.ones,
    })
}

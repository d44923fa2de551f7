//! From-below Boolean matrix factorization by formal concepts, with factor
//! selection driven by minimum description length.
//!
//! * [`matrix`]: bit-packed Boolean matrices and their algebra.
//! * [`fca`]: arrow operators, concept closure, concept enumeration.
//! * [`mdl`]: code lengths of factors and residuals.
//! * [`factorize`]: the MDLGreConD and GreConD algorithms.
//! * [`metrics`]: coverage, overlap and factor-count measures.
//! * [`io`], [`report`]: file formats and JSON reports.

pub mod bitset;
pub mod cli;
pub mod error;
pub mod factorize;
pub mod fca;
pub mod io;
pub mod matrix;
pub mod mdl;
pub mod metrics;
pub mod report;
pub mod synth;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use factorize::{
    grecond, grecond_with, mdl_grecond, mdl_grecond_with, CostEvaluation, FactorizationResult,
    GreConDOptions, MdlOptions,
};
pub use fca::{
    close_attribute_set, down, enumerate_concepts, factors_to_matrices, up, AttributeSet,
    FactorSet, FormalConcept, ObjectSet,
};
pub use matrix::{reconstruction_error, BooleanMatrix, MatrixBuilder};
pub use mdl::{total_cost, BitLength};
pub use metrics::MetricsReport;

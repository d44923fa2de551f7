//! Command implementations behind the `bmf` binary. They work on parsed
//! datasets and return text, leaving file handling to the caller.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::factorize::{grecond_with, mdl_grecond_with, GreConDOptions, MdlOptions};
use crate::fca::{for_each_concept, FactorSet};
use crate::io::{self, Dataset, Format};
use crate::metrics::{self, FactorFilter};
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    MdlGreConD,
    GreConD,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MdlGreConD => "mdl-grecond",
            Algorithm::GreConD => "grecond",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mdl-grecond" => Ok(Algorithm::MdlGreConD),
            "grecond" => Ok(Algorithm::GreConD),
            other => Err(Error::Domain(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FactorizeOptions {
    pub epsilon: usize,
    pub max_factors: Option<usize>,
    pub parallel: bool,
}

/// Output of [`factorize`]: the factor file text and the report document.
#[derive(Clone, Debug)]
pub struct FactorizeOutput {
    pub factors: FactorSet,
    pub factor_file: String,
    pub report: Value,
}

pub fn factorize(
    dataset: &Dataset,
    name: &str,
    algorithm: Algorithm,
    options: &FactorizeOptions,
) -> Result<FactorizeOutput> {
    let data = &dataset.matrix;
    let result = match algorithm {
        Algorithm::MdlGreConD => mdl_grecond_with(
            data,
            &MdlOptions {
                parallel: options.parallel,
                ..MdlOptions::default()
            },
        )?,
        Algorithm::GreConD => grecond_with(
            data,
            &GreConDOptions {
                epsilon: options.epsilon,
                max_factors: options.max_factors,
                parallel: options.parallel,
            },
        )?,
    };
    let metrics = metrics::evaluate(data, &result.factors)?;
    let report = report::report_value(name, data, algorithm.name(), &metrics, &result.cost_trace);
    Ok(FactorizeOutput {
        factor_file: io::format_factors(&result.factors, &dataset.labels),
        factors: result.factors,
        report,
    })
}

/// Output of [`evaluate`]. `warnings` lists factors that are not formal
/// concepts of the data; they are still evaluated.
#[derive(Clone, Debug)]
pub struct EvaluateOutput {
    pub report: Value,
    pub warnings: Vec<String>,
}

pub fn evaluate(
    dataset: &Dataset,
    name: &str,
    factor_file: &str,
    filter: FactorFilter,
) -> Result<EvaluateOutput> {
    let data = &dataset.matrix;
    let factors = io::parse_factors(factor_file, data.rows(), &dataset.labels)?;
    let factors = factors.filtered(|f| filter.keeps(f));
    let metrics = match metrics::evaluate(data, &factors) {
        Err(Error::NotFromBelow { factor, row, col }) => {
            return Err(Error::Domain(format!(
                "factor {} covers cell (object {}, attribute {}) which is 0 in the data",
                factor + 1,
                row + 1,
                dataset.labels[col]
            )))
        }
        other => other?,
    };
    let warnings = factors
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_concept_of(data))
        .map(|(l, _)| format!("factor {} is not a formal concept of the data", l + 1))
        .collect();
    let trace = [metrics.total_cost];
    Ok(EvaluateOutput {
        report: report::report_value(name, data, "evaluate", &metrics, &trace),
        warnings,
    })
}

/// Counts formal concepts, or lists them in factor-file syntax through
/// `emit` when `count_only` is false. Returns the count.
pub fn concepts<F: FnMut(&str)>(
    dataset: &Dataset,
    limit: usize,
    count_only: bool,
    mut emit: F,
) -> Result<usize> {
    let mut count = 0;
    let mut single = FactorSet::new();
    for_each_concept(&dataset.matrix, limit, |c| {
        count += 1;
        if !count_only {
            single = FactorSet::new();
            single.push(c);
            emit(&io::format_factors(&single, &dataset.labels));
        }
    })?;
    Ok(count)
}

#[derive(Clone, Debug, Deserialize)]
pub struct BatchConfig {
    #[serde(rename = "dataset")]
    pub datasets: Vec<BatchEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BatchEntry {
    pub name: String,
    pub path: PathBuf,
    pub format: Option<String>,
}

impl BatchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: e.to_string(),
        })
    }
}

/// Factorizes every dataset of `config` in parallel and writes
/// `<name>.<algorithm>.factors` and `<name>.<algorithm>.json` into `out_dir`.
/// Relative dataset paths are resolved against `base`. Returns the written
/// report paths in configuration order.
pub fn batch(
    config: &BatchConfig,
    base: &Path,
    out_dir: &Path,
    algorithm: Algorithm,
    options: &FactorizeOptions,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    config
        .datasets
        .par_iter()
        .map(|entry| {
            let path = base.join(&entry.path);
            let format = match &entry.format {
                Some(f) => f.parse()?,
                None => Format::from_path(&path),
            };
            let dataset = io::load_matrix(&path, format)?;
            let out = factorize(&dataset, &entry.name, algorithm, options)?;
            let stem = format!("{}.{}", entry.name, algorithm.name());
            std::fs::write(out_dir.join(format!("{stem}.factors")), &out.factor_file)?;
            let report_path = out_dir.join(format!("{stem}.json"));
            std::fs::write(&report_path, report::render(&out.report))?;
            Ok(report_path)
        })
        .collect()
}

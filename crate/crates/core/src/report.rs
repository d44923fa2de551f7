//! JSON report emission.
//!
//! Keys are sorted and numbers use fixed formatting (ratios with six
//! decimals, bit lengths with four) so that reports are byte-stable.

use std::str::FromStr;

use serde_json::{json, Number, Value};

use crate::matrix::BooleanMatrix;
use crate::mdl::BitLength;
use crate::metrics::{MetricsReport, Ratio};

fn fixed(value: f64, decimals: usize) -> Value {
    let text = format!("{value:.decimals$}");
    Value::Number(Number::from_str(&text).expect("fixed-point text is a valid JSON number"))
}

pub fn ratio_value(value: f64) -> Value {
    fixed(value, 6)
}

pub fn bits_value(bits: BitLength) -> Value {
    fixed(bits.bits(), 4)
}

fn ratio(r: &Ratio) -> Value {
    json!({ "num": r.num, "den": r.den, "ratio": ratio_value(r.value) })
}

/// Builds the report document for one dataset and factor set.
pub fn report_value(
    name: &str,
    data: &BooleanMatrix,
    algorithm: &str,
    metrics: &MetricsReport,
    trace: &[BitLength],
) -> Value {
    json!({
        "dataset": {
            "name": name,
            "m": data.rows(),
            "n": data.cols(),
            "ones": data.ones(),
            "density": ratio_value(data.density()),
        },
        "algorithm": algorithm,
        "factors": {
            "total": metrics.k_total,
            "trivial": metrics.k_trivial,
            "nontrivial": metrics.k_nontrivial,
        },
        "coverage": {
            "data": ratio(&metrics.data_coverage),
            "object": ratio(&metrics.object_coverage),
        },
        "overlap": {
            "area": metrics.overlap.area,
            "covered": metrics.overlap.covered,
            "ratio": metrics.overlap.rate.map_or(Value::Null, ratio_value),
        },
        "mdl": {
            "total_bits": bits_value(metrics.total_cost),
            "residual_ones": metrics.residual_ones,
        },
        "trace": trace.iter().map(|&b| bits_value(b)).collect::<Vec<_>>(),
    })
}

/// Pretty-printed report text with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values always serialize");
    s.push('\n');
    s
}

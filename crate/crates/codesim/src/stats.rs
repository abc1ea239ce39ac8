//! Descriptive statistics and histograms over pairwise observations.

use serde::Serialize;

use crate::metric::PairwiseMatrix;
use crate::{Error, Result};

/// Six-number summary of a list of observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsSummary {
    pub average: f64,
    pub median: f64,
    pub std_dev: f64,
    pub range: f64,
    pub minimum: f64,
    pub maximum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramBin {
    pub lower_edge: f64,
    pub upper_edge: f64,
    pub count: usize,
}

/// Equal-width bins anchored at zero: each bin is half-open [lo, lo+w), with
/// the final bin closed at the top so the maximum is always counted.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_width: f64,
    pub bins: Vec<HistogramBin>,
    pub total: usize,
}

const MAX_BINS: usize = 10_000_000;

/// Arithmetic mean, median, population standard deviation (divisor N),
/// range, minimum, and maximum. Values are summed in sorted order so the
/// summary is bit-identical under permutation of the input.
pub fn summarize(values: &[f64]) -> Result<StatsSummary> {
    if values.is_empty() {
        return Err(Error::Config("no observations to summarize".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);

    let n = sorted.len();
    let average = sorted.iter().sum::<f64>() / n as f64;
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let variance = sorted.iter().map(|v| (v - average).powi(2)).sum::<f64>() / n as f64;
    let minimum = sorted[0];
    let maximum = sorted[n - 1];
    Ok(StatsSummary {
        average,
        median,
        std_dev: variance.sqrt(),
        range: maximum - minimum,
        minimum,
        maximum,
    })
}

/// Bin non-negative observations into equal-width bins anchored at zero.
/// Empty bins below the maximum are present with count 0.
pub fn histogram(values: &[f64], bin_width: f64) -> Result<Histogram> {
    if bin_width <= 0.0 || !bin_width.is_finite() {
        return Err(Error::Config(format!(
            "bin width must be positive, got {bin_width}"
        )));
    }
    if values.is_empty() {
        return Err(Error::Config("no observations to bin".into()));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::Internal(format!(
            "histogram observation {bad} not in [0, ∞)"
        )));
    }

    let max = values.iter().cloned().fold(0.0, f64::max);
    let bin_count = (max / bin_width).floor() as usize + 1;
    if bin_count > MAX_BINS {
        return Err(Error::Config(format!(
            "bin width {bin_width} too small for observed maximum {max}"
        )));
    }

    let mut counts = vec![0usize; bin_count];
    for v in values {
        counts[(v / bin_width).floor() as usize] += 1;
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            lower_edge: i as f64 * bin_width,
            upper_edge: (i + 1) as f64 * bin_width,
            count,
        })
        .collect();
    Ok(Histogram {
        bin_width,
        bins,
        total: values.len(),
    })
}

/// The k(k−1)/2 strict upper-triangle values of a pairwise matrix — the
/// population of distinct compared pairs.
pub fn pair_observations<M: PairwiseMatrix>(matrix: &M) -> Result<Vec<f64>> {
    let k = matrix.size();
    if k < 2 {
        return Err(Error::Config(format!(
            "no pairs to observe: corpus has {k} submission(s)"
        )));
    }
    let mut values = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            values.push(matrix.pair_value(i, j));
        }
    }
    Ok(values)
}

/// CSV export with a `lower_edge,upper_edge,count` header.
pub fn histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("lower_edge,upper_edge,count\n");
    for bin in &h.bins {
        out.push_str(&format!(
            "{:.4},{:.4},{}\n",
            bin.lower_edge, bin.upper_edge, bin.count
        ));
    }
    out
}

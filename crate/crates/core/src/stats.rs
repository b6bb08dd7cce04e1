//! Functionals: reduce a time series to named scalar features.
//!
//! Missing frame values (`NaN`) are skipped. Difference statistics use only
//! pairs (or triples) of adjacent frames that are all present; regression
//! statistics use the frame index of each present value.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    Mean,
    Std,
    Skewness,
    Kurtosis,
    Min,
    Max,
    Range,
    Q1,
    Median,
    Q3,
    Iqr,
    Slope,
    Intercept,
    D1MeanAbs,
    D1Std,
    D2MeanAbs,
    D2Std,
}

impl Statistic {
    pub const ALL: [Statistic; 17] = [
        Statistic::Mean,
        Statistic::Std,
        Statistic::Skewness,
        Statistic::Kurtosis,
        Statistic::Min,
        Statistic::Max,
        Statistic::Range,
        Statistic::Q1,
        Statistic::Median,
        Statistic::Q3,
        Statistic::Iqr,
        Statistic::Slope,
        Statistic::Intercept,
        Statistic::D1MeanAbs,
        Statistic::D1Std,
        Statistic::D2MeanAbs,
        Statistic::D2Std,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Mean => "mean",
            Statistic::Std => "std",
            Statistic::Skewness => "skewness",
            Statistic::Kurtosis => "kurtosis",
            Statistic::Min => "min",
            Statistic::Max => "max",
            Statistic::Range => "range",
            Statistic::Q1 => "q1",
            Statistic::Median => "median",
            Statistic::Q3 => "q3",
            Statistic::Iqr => "iqr",
            Statistic::Slope => "slope",
            Statistic::Intercept => "intercept",
            Statistic::D1MeanAbs => "d1_mean_abs",
            Statistic::D1Std => "d1_std",
            Statistic::D2MeanAbs => "d2_mean_abs",
            Statistic::D2Std => "d2_std",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Statistic::ALL
            .iter()
            .copied()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

/// Named statistic values, dimension-major then statistic-minor.
#[derive(Debug, Clone, PartialEq)]
pub struct StatisticSet {
    pub names: Vec<String>,
    pub values: Vec<Option<f64>>,
}

impl StatisticSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<Option<f64>> {
        self.names.iter().position(|n| n == name).map(|i| self.values[i])
    }
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn moments(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

fn mean_abs_and_std(v: &[f64]) -> (Option<f64>, Option<f64>) {
    if v.is_empty() {
        return (None, None);
    }
    let mean_abs = v.iter().map(|d| d.abs()).sum::<f64>() / v.len() as f64;
    (Some(mean_abs), Some(moments(v).1.sqrt()))
}

/// All statistics of one 1-D sequence, in [`Statistic::ALL`] order.
pub fn compute_all(series: &[f64]) -> [Option<f64>; 17] {
    let present: Vec<(usize, f64)> = series
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, v)| !v.is_nan())
        .collect();
    let mut out = [None; 17];
    if present.is_empty() {
        return out;
    }
    let values: Vec<f64> = present.iter().map(|p| p.1).collect();
    let (mean, var) = moments(&values);
    let std = var.sqrt();
    let mut sorted = values.clone();
    sorted.sort_by(f64::total_cmp);
    let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
    let (q1, median, q3) = (
        quantile_sorted(&sorted, 0.25),
        quantile_sorted(&sorted, 0.5),
        quantile_sorted(&sorted, 0.75),
    );
    let (skewness, kurtosis) = if var > 0.0 {
        let n = values.len() as f64;
        let m3 = values.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
        let m4 = values.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
        (Some(m3 / var.powf(1.5)), Some(m4 / (var * var) - 3.0))
    } else {
        (None, None)
    };
    let (slope, intercept) = if present.len() >= 2 {
        let n = present.len() as f64;
        let xm = present.iter().map(|p| p.0 as f64).sum::<f64>() / n;
        let sxx: f64 = present.iter().map(|p| (p.0 as f64 - xm).powi(2)).sum();
        let sxy: f64 = present.iter().map(|p| (p.0 as f64 - xm) * (p.1 - mean)).sum();
        let slope = sxy / sxx;
        (Some(slope), Some(mean - slope * xm))
    } else {
        (None, None)
    };
    let d1: Vec<f64> = series
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|d| !d.is_nan())
        .collect();
    let d2: Vec<f64> = series
        .windows(3)
        .map(|w| (w[2] - w[1]) - (w[1] - w[0]))
        .filter(|d| !d.is_nan())
        .collect();
    let (d1_mean_abs, d1_std) = mean_abs_and_std(&d1);
    let (d2_mean_abs, d2_std) = mean_abs_and_std(&d2);

    out[0] = Some(mean);
    out[1] = Some(std);
    out[2] = skewness;
    out[3] = kurtosis;
    out[4] = Some(min);
    out[5] = Some(max);
    out[6] = Some(max - min);
    out[7] = Some(q1);
    out[8] = Some(median);
    out[9] = Some(q3);
    out[10] = Some(q3 - q1);
    out[11] = slope;
    out[12] = intercept;
    out[13] = d1_mean_abs;
    out[14] = d1_std;
    out[15] = d2_mean_abs;
    out[16] = d2_std;
    out
}

/// Feature names for a series of `dims` dimensions under `component`.
pub fn feature_names(component: &str, dims: usize, which: &[Statistic]) -> Vec<String> {
    let mut names = Vec::with_capacity(dims * which.len());
    for k in 0..dims {
        for st in which {
            if dims == 1 {
                names.push(format!("{component}.{st}"));
            } else {
                names.push(format!("{component}.{k}.{st}"));
            }
        }
    }
    names
}

/// Applies the selected statistics to every dimension of `t`.
pub fn apply_statistics(t: &TimeSeries, which: &[Statistic]) -> StatisticSet {
    let names = feature_names(t.name(), t.dims(), which);
    let mut values = Vec::with_capacity(names.len());
    for k in 0..t.dims() {
        let all = compute_all(&t.column(k));
        for st in which {
            let idx = Statistic::ALL.iter().position(|s| s == st).expect("catalogued statistic");
            values.push(all[idx].filter(|v| v.is_finite()));
        }
    }
    StatisticSet { names, values }
}

/// The series itself, for callers that want frame-level output.
pub fn passthrough(t: &TimeSeries) -> TimeSeries {
    t.clone()
}

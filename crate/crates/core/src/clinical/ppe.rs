//! Pitch period entropy.
//!
//! Voiced F0 is mapped to semitones relative to [`REFERENCE_HZ`], whitened
//! with a second-order linear predictor, and the residuals are histogrammed
//! into [`BINS`] bins over ±[`RESIDUAL_RANGE`] semitones (outliers clipped
//! into the edge bins). The Shannon entropy of that histogram is divided by
//! `ln(BINS)`.

use super::lpc::{autocorrelation, levinson_durbin};
use crate::error::{Error, Result};
use crate::prosody::F0Contour;

pub const REFERENCE_HZ: f64 = 10.0;
pub const BINS: usize = 30;
pub const RESIDUAL_RANGE: f64 = 1.5;
pub const MIN_VOICED_FRAMES: usize = 30;

/// Normalised entropy of a residual sequence's histogram.
pub fn residual_entropy(residuals: &[f64]) -> f64 {
    let mut counts = [0usize; BINS];
    let width = 2.0 * RESIDUAL_RANGE / BINS as f64;
    for r in residuals {
        let bin = ((r + RESIDUAL_RANGE) / width).floor().clamp(0.0, (BINS - 1) as f64) as usize;
        counts[bin] += 1;
    }
    let n = residuals.len() as f64;
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum();
    h / (BINS as f64).ln()
}

pub fn pitch_period_entropy(c: &F0Contour) -> Result<f64> {
    let voiced: Vec<f64> = c.voiced_values().collect();
    if voiced.len() < MIN_VOICED_FRAMES {
        return Err(Error::InsufficientVoicing(format!(
            "{} voiced frames, need {MIN_VOICED_FRAMES}",
            voiced.len()
        )));
    }
    let semitones: Vec<f64> = voiced.iter().map(|f| 12.0 * (f / REFERENCE_HZ).log2()).collect();
    let mean = semitones.iter().sum::<f64>() / semitones.len() as f64;
    let centred: Vec<f64> = semitones.iter().map(|s| s - mean).collect();
    let a = match levinson_durbin(&autocorrelation(&centred, 2), 2) {
        Ok(model) => model.coefficients,
        // Constant pitch: nothing to whiten, residuals are the (zero) deviations.
        Err(Error::DegenerateSignal(_)) => vec![1.0, 0.0, 0.0],
        Err(e) => return Err(e),
    };
    let residuals: Vec<f64> = (2..centred.len())
        .map(|t| centred[t] + a[1] * centred[t - 1] + a[2] * centred[t - 2])
        .collect();
    Ok(residual_entropy(&residuals))
}

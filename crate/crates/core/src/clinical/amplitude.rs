use crate::audio::{FrameSequence, FrameSpec, Waveform};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Shannon entropy of the normalised instantaneous energy `x_i² / Σx²`.
pub fn amplitude_entropy(x: &[f64]) -> Result<f64> {
    let total: f64 = x.iter().map(|v| v * v).sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateSignal("all-zero signal".into()));
    }
    Ok(-x
        .iter()
        .map(|v| v * v / total)
        .filter(|&s| s > 0.0)
        .map(|s| s * s.ln())
        .sum::<f64>())
}

/// Excess kurtosis of raw samples; `NaN` for a constant frame.
pub fn excess_kurtosis(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let (mut m2, mut m4) = (0.0, 0.0);
    for v in x {
        let d = (v - mean) * (v - mean);
        m2 += d;
        m4 += d * d;
    }
    let (m2, m4) = (m2 / n, m4 / n);
    if m2 > 0.0 {
        m4 / (m2 * m2) - 3.0
    } else {
        f64::NAN
    }
}

pub fn sliding_kurtosis(w: &Waveform, frame: &FrameSpec) -> Result<TimeSeries> {
    let (len, hop) = frame.to_samples(w.sample_rate())?;
    let frames = FrameSequence::from_samples(w.samples(), w.sample_rate(), len, hop)?;
    let values = frames.iter().map(excess_kurtosis).collect();
    Ok(TimeSeries::new_1d("sliding_amplitude_kurtosis", values, hop, w.sample_rate()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeStats {
    pub shannon_entropy: f64,
    pub sliding_kurtosis: TimeSeries,
}

pub fn amplitude_stats(w: &Waveform, frame: &FrameSpec) -> Result<AmplitudeStats> {
    Ok(AmplitudeStats {
        shannon_entropy: amplitude_entropy(w.samples())?,
        sliding_kurtosis: sliding_kurtosis(w, frame)?,
    })
}

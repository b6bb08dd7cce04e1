//! Energy, zero-crossing and crest-factor measures.

use crate::audio::{FrameSequence, FrameSpec, Waveform};
use crate::error::Result;
use crate::series::TimeSeries;
use crate::spectral::EPSILON;

fn frames<'a>(w: &'a Waveform, frame: &FrameSpec) -> Result<FrameSequence<'a>> {
    let (len, hop) = frame.to_samples(w.sample_rate())?;
    FrameSequence::from_samples(w.samples(), w.sample_rate(), len, hop)
}

fn per_frame(w: &Waveform, frame: &FrameSpec, name: &str, f: impl Fn(&[f64]) -> f64) -> Result<TimeSeries> {
    let fs = frames(w, frame)?;
    let values = fs.iter().map(f).collect();
    Ok(TimeSeries::new_1d(name, values, fs.hop_length(), w.sample_rate()))
}

fn mean_square(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64
}

fn population_sd(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Frame power (mean squared amplitude).
pub fn intensity(w: &Waveform, frame: &FrameSpec) -> Result<TimeSeries> {
    per_frame(w, frame, "intensity", mean_square)
}

/// Population SD of the frame-power series.
pub fn intensity_sd(w: &Waveform, frame: &FrameSpec) -> Result<f64> {
    Ok(population_sd(intensity(w, frame)?.values()))
}

pub fn rms(w: &Waveform, frame: &FrameSpec) -> Result<TimeSeries> {
    per_frame(w, frame, "rms", |x| mean_square(x).sqrt())
}

/// `ln(mean square + ε)` over the whole signal.
pub fn log_energy(w: &Waveform) -> f64 {
    (mean_square(w.samples()) + EPSILON).ln()
}

pub fn sliding_log_energy(w: &Waveform, frame: &FrameSpec) -> Result<TimeSeries> {
    per_frame(w, frame, "sliding_log_energy", |x| (mean_square(x) + EPSILON).ln())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCrossings {
    pub count: usize,
    /// `count / (N - 1)`; 0 for a single sample.
    pub rate: f64,
}

/// Sign changes between consecutive samples; zero counts as positive.
pub fn zero_crossing_count(x: &[f64]) -> usize {
    x.windows(2).filter(|p| (p[0] >= 0.0) != (p[1] >= 0.0)).count()
}

pub fn zero_crossings(w: &Waveform) -> ZeroCrossings {
    let x = w.samples();
    let count = zero_crossing_count(x);
    let rate = if x.len() > 1 { count as f64 / (x.len() - 1) as f64 } else { 0.0 };
    ZeroCrossings { count, rate }
}

pub fn sliding_zcr(w: &Waveform, frame: &FrameSpec) -> Result<TimeSeries> {
    per_frame(w, frame, "sliding_zcr", |x| {
        if x.len() > 1 {
            zero_crossing_count(x) as f64 / (x.len() - 1) as f64
        } else {
            0.0
        }
    })
}

/// Peak |x| over frame RMS. Silent frames are missing (`NaN`).
pub fn crest_factor(w: &Waveform, frame: &FrameSpec) -> Result<TimeSeries> {
    per_frame(w, frame, "crest_factor", |x| {
        let rms = mean_square(x).sqrt();
        if rms > 0.0 {
            x.iter().fold(0.0f64, |m, v| m.max(v.abs())) / rms
        } else {
            f64::NAN
        }
    })
}

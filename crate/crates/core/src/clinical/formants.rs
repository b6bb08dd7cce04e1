//! LPC formant estimation: F1–F4 per frame, their medians and frame deltas.

use std::f64::consts::PI;

use super::lpc::{lpc, polynomial_roots};
use crate::audio::{FrameSequence, FrameSpec, Waveform, WindowKind};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub const PRE_EMPHASIS: f64 = 0.97;
pub const MIN_FORMANT_HZ: f64 = 90.0;
pub const MAX_BANDWIDTH_HZ: f64 = 400.0;
pub const N_FORMANTS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct FormantSet {
    /// Median over frames of each formant; `None` if it never resolved.
    pub frequencies: [Option<f64>; N_FORMANTS],
    /// Per-frame F1–F4 in Hz, `NaN` where unresolved.
    pub tracks: TimeSeries,
    /// First differences of each track; `NaN` wherever either frame is missing.
    pub deltas: TimeSeries,
}

pub fn pre_emphasize(x: &[f64], coefficient: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    let mut prev = 0.0;
    for &v in x {
        out.push(v - coefficient * prev);
        prev = v;
    }
    out
}

pub fn lpc_order_for(sample_rate: u32) -> usize {
    2 + (sample_rate as f64 / 1000.0).round() as usize
}

/// Resonances `(frequency, bandwidth)` of an LPC polynomial, sorted by frequency,
/// restricted to plausible formants.
pub fn resonances(a: &[f64], sample_rate: u32) -> Vec<(f64, f64)> {
    let fs = sample_rate as f64;
    let mut out: Vec<(f64, f64)> = polynomial_roots(a)
        .into_iter()
        .filter(|z| z.im > 0.0)
        .map(|z| (z.arg() * fs / (2.0 * PI), -(fs / PI) * z.norm().ln()))
        .filter(|&(f, bw)| f > MIN_FORMANT_HZ && bw < MAX_BANDWIDTH_HZ && f < fs / 2.0)
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn frame_formants(frame: &[f64], window: &[f64], order: usize, sample_rate: u32) -> [f64; N_FORMANTS] {
    let mut row = [f64::NAN; N_FORMANTS];
    let windowed: Vec<f64> = frame.iter().zip(window).map(|(x, w)| x * w).collect();
    let Ok(model) = lpc(&windowed, order) else {
        return row;
    };
    for (slot, (f, _)) in row.iter_mut().zip(resonances(&model.coefficients, sample_rate)) {
        *slot = f;
    }
    row
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) })
}

pub fn formants(w: &Waveform, frame: &FrameSpec) -> Result<FormantSet> {
    let fs = w.sample_rate();
    if fs < 8000 {
        return Err(Error::InvalidParameter(format!("formant analysis needs >= 8 kHz, got {fs} Hz")));
    }
    let emphasized = pre_emphasize(w.samples(), PRE_EMPHASIS);
    let (len, hop) = frame.to_samples(fs)?;
    let frames = FrameSequence::from_samples(&emphasized, fs, len, hop)?;
    let window = WindowKind::Hann.coefficients(len);
    let order = lpc_order_for(fs);

    let rows: Vec<Vec<f64>> = frames
        .iter()
        .map(|f| frame_formants(f, &window, order, fs).to_vec())
        .collect();
    if rows.iter().all(|r| r[0].is_nan()) {
        return Err(Error::TooFewResolvedFormants);
    }
    let frequencies = std::array::from_fn(|k| median(rows.iter().map(|r| r[k]).filter(|v| !v.is_nan()).collect()));
    let deltas: Vec<Vec<f64>> = rows
        .windows(2)
        .map(|p| p[1].iter().zip(&p[0]).map(|(b, a)| b - a).collect())
        .collect();
    Ok(FormantSet {
        frequencies,
        tracks: TimeSeries::from_rows("formant_tracks", &rows, N_FORMANTS, hop, fs),
        deltas: TimeSeries::from_rows("formant_deltas", &deltas, N_FORMANTS, hop, fs),
    })
}

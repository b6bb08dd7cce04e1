//! Real Morlet continuous wavelet transform.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::audio::Waveform;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub const MORLET_OMEGA0: f64 = 5.0;

/// `count` logarithmically spaced widths between `lo` and `hi` samples.
pub fn log_spaced_widths(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Default: 32 widths in [1, 256] samples.
pub fn default_widths() -> Vec<f64> {
    log_spaced_widths(1.0, 256.0, 32)
}

/// Real Morlet wavelet of `len` samples at scale `width`, energy-scaled by `1/sqrt(width)`.
pub fn morlet_wavelet(len: usize, width: f64) -> Vec<f64> {
    let centre = (len as f64 - 1.0) / 2.0;
    (0..len)
        .map(|n| {
            let t = (n as f64 - centre) / width;
            PI.powf(-0.25) * (MORLET_OMEGA0 * t).cos() * (-0.5 * t * t).exp() / width.sqrt()
        })
        .collect()
}

/// Wavelet support in samples for a given width: ten widths, capped at the signal length.
pub fn wavelet_length(width: f64, signal_len: usize) -> usize {
    ((10.0 * width).ceil() as usize).clamp(1, signal_len)
}

/// "Same"-mode linear convolution via FFT.
fn convolve_same(x: &[f64], kernel: &[f64], planner: &mut FftPlanner<f64>) -> Vec<f64> {
    let full_len = x.len() + kernel.len() - 1;
    let n = full_len.next_power_of_two();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut a: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    a.resize(n, Complex::new(0.0, 0.0));
    let mut b: Vec<Complex<f64>> = kernel.iter().map(|&v| Complex::new(v, 0.0)).collect();
    b.resize(n, Complex::new(0.0, 0.0));
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (p, q) in a.iter_mut().zip(&b) {
        *p *= q;
    }
    inv.process(&mut a);
    let offset = (kernel.len() - 1) / 2;
    a[offset..offset + x.len()].iter().map(|z| z.re / n as f64).collect()
}

/// One row per sample, one column per width.
pub fn morlet_cwt(w: &Waveform, widths: &[f64]) -> Result<TimeSeries> {
    if widths.is_empty() || widths.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::InvalidParameter("widths must be non-empty and positive".into()));
    }
    let x = w.samples();
    if x.len() < 2 {
        return Err(Error::SignalTooShort { needed: 2, got: x.len() });
    }
    let mut planner = FftPlanner::new();
    let per_width: Vec<Vec<f64>> = widths
        .iter()
        .map(|&s| {
            // The wavelet is symmetric, so convolution equals correlation.
            let mut kernel = morlet_wavelet(wavelet_length(s, x.len()), s);
            kernel.reverse();
            convolve_same(x, &kernel, &mut planner)
        })
        .collect();
    let rows: Vec<Vec<f64>> = (0..x.len()).map(|t| per_width.iter().map(|r| r[t]).collect()).collect();
    Ok(TimeSeries::from_rows("morlet_cwt", &rows, widths.len(), 1, w.sample_rate()))
}

//! Slaney-style mel filterbank, log-mel spectrogram and MFCCs.

use std::f64::consts::PI;

use super::stft::{stft_magnitude, Spectrogram};
use super::EPSILON;
use crate::audio::{Waveform, WindowKind};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

const F_SP: f64 = 200.0 / 3.0;
const MIN_LOG_HZ: f64 = 1000.0;
const MIN_LOG_MEL: f64 = MIN_LOG_HZ / F_SP;

fn log_step() -> f64 {
    6.4f64.ln() / 27.0
}

/// Slaney mel scale: linear below 1 kHz, logarithmic above.
pub fn hz_to_mel(hz: f64) -> f64 {
    if hz < MIN_LOG_HZ {
        hz / F_SP
    } else {
        MIN_LOG_MEL + (hz / MIN_LOG_HZ).ln() / log_step()
    }
}

pub fn mel_to_hz(mel: f64) -> f64 {
    if mel < MIN_LOG_MEL {
        mel * F_SP
    } else {
        MIN_LOG_HZ * (log_step() * (mel - MIN_LOG_MEL)).exp()
    }
}

/// Triangular, area-normalised mel filters.
#[derive(Debug, Clone)]
pub struct MelFilterbank {
    /// `n_mels × n_bins`, row-major.
    weights: Vec<f64>,
    n_mels: usize,
    n_bins: usize,
    /// `n_mels + 2` edge frequencies in Hz.
    edges: Vec<f64>,
}

impl MelFilterbank {
    pub fn new(sample_rate: u32, n_fft: usize, n_mels: usize, fmin: f64, fmax: f64) -> Result<Self> {
        let nyquist = sample_rate as f64 / 2.0;
        if !(fmin >= 0.0 && fmin < fmax && fmax <= nyquist) {
            return Err(Error::InvalidBand { fmin, fmax, nyquist });
        }
        if n_mels < 2 {
            return Err(Error::InvalidParameter("n_mels must be at least 2".into()));
        }
        let n_bins = n_fft / 2 + 1;
        let (mlo, mhi) = (hz_to_mel(fmin), hz_to_mel(fmax));
        let edges: Vec<f64> = (0..n_mels + 2)
            .map(|i| mel_to_hz(mlo + (mhi - mlo) * i as f64 / (n_mels + 1) as f64))
            .collect();
        let bin_hz: Vec<f64> = (0..n_bins).map(|k| k as f64 * sample_rate as f64 / n_fft as f64).collect();
        let mut weights = vec![0.0; n_mels * n_bins];
        for m in 0..n_mels {
            let (lo, centre, hi) = (edges[m], edges[m + 1], edges[m + 2]);
            let norm = 2.0 / (hi - lo);
            for (k, &f) in bin_hz.iter().enumerate() {
                let rising = (f - lo) / (centre - lo);
                let falling = (hi - f) / (hi - centre);
                weights[m * n_bins + k] = rising.min(falling).max(0.0) * norm;
            }
        }
        Ok(MelFilterbank {
            weights,
            n_mels,
            n_bins,
            edges,
        })
    }

    pub fn n_mels(&self) -> usize {
        self.n_mels
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn filter(&self, m: usize) -> &[f64] {
        &self.weights[m * self.n_bins..(m + 1) * self.n_bins]
    }

    pub fn apply(&self, power: &[f64]) -> Vec<f64> {
        (0..self.n_mels)
            .map(|m| self.filter(m).iter().zip(power).map(|(w, p)| w * p).sum())
            .collect()
    }
}

/// `ln(mel power + ε)` per frame.
pub fn log_mel_spectrogram(
    w: &Waveform,
    n_fft: usize,
    hop: usize,
    n_mels: usize,
    fmin: f64,
    fmax: f64,
) -> Result<Spectrogram> {
    let bank = MelFilterbank::new(w.sample_rate(), n_fft, n_mels, fmin, fmax)?;
    let mag = stft_magnitude(w, n_fft, hop, WindowKind::Hann)?;
    let mut values = Vec::with_capacity(mag.n_frames() * n_mels);
    let mut power = vec![0.0; mag.n_bins()];
    for frame in mag.frames() {
        for (p, m) in power.iter_mut().zip(frame) {
            *p = m * m;
        }
        values.extend(bank.apply(&power).into_iter().map(|e| (e + EPSILON).ln()));
    }
    let centres = bank.edges()[1..=n_mels].to_vec();
    Ok(Spectrogram::new(values, mag.n_frames(), centres, hop, w.sample_rate()))
}

/// Orthonormal DCT-II basis, first `n_out` rows of an `n_in`-point transform.
pub(crate) fn dct_basis(n_out: usize, n_in: usize) -> Vec<f64> {
    let n = n_in as f64;
    let mut basis = Vec::with_capacity(n_out * n_in);
    for k in 0..n_out {
        let scale = if k == 0 { (1.0 / n).sqrt() } else { (2.0 / n).sqrt() };
        basis.extend((0..n_in).map(|i| scale * (PI * k as f64 * (2 * i + 1) as f64 / (2.0 * n)).cos()));
    }
    basis
}

/// Orthonormal DCT-II of `input`, truncated to `n_out` coefficients.
pub fn dct2_orthonormal(input: &[f64], n_out: usize) -> Vec<f64> {
    let basis = dct_basis(n_out, input.len());
    basis
        .chunks_exact(input.len())
        .map(|row| row.iter().zip(input).map(|(b, x)| b * x).sum())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MfccParams {
    pub n_mfcc: usize,
    pub n_fft: usize,
    pub hop: usize,
    pub n_mels: usize,
    pub fmin: f64,
    /// `None` means Nyquist.
    pub fmax: Option<f64>,
}

impl Default for MfccParams {
    fn default() -> Self {
        MfccParams {
            n_mfcc: 13,
            n_fft: 512,
            hop: 160,
            n_mels: 40,
            fmin: 0.0,
            fmax: None,
        }
    }
}

pub fn mfcc(w: &Waveform, params: &MfccParams) -> Result<TimeSeries> {
    if params.n_mfcc == 0 || params.n_mfcc > params.n_mels {
        return Err(Error::InvalidParameter(format!(
            "n_mfcc must be in 1..={}, got {}",
            params.n_mels, params.n_mfcc
        )));
    }
    let fmax = params.fmax.unwrap_or_else(|| w.nyquist());
    let logmel = log_mel_spectrogram(w, params.n_fft, params.hop, params.n_mels, params.fmin, fmax)?;
    let basis = dct_basis(params.n_mfcc, params.n_mels);
    let rows: Vec<Vec<f64>> = logmel
        .frames()
        .map(|frame| {
            basis
                .chunks_exact(params.n_mels)
                .map(|row| row.iter().zip(frame).map(|(b, x)| b * x).sum())
                .collect()
        })
        .collect();
    Ok(TimeSeries::from_rows("mfcc", &rows, params.n_mfcc, params.hop, w.sample_rate()))
}

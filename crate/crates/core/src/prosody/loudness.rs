//! Integrated loudness per ITU-R BS.1770-4 for a single (mono) channel.
//!
//! The K-weighting pre-filter is the standard's high-shelf and high-pass
//! biquad pair, with coefficients derived for the input sample rate from
//! the analog prototypes (bilinear transform, prewarped at each centre
//! frequency). Gating blocks are 400 ms with 75 % overlap.

use std::f64::consts::PI;

use crate::audio::Waveform;
use crate::error::{Error, Result};
use crate::spectral::EPSILON;

const BLOCK_S: f64 = 0.4;
const STEP_S: f64 = 0.1;
const ABSOLUTE_GATE_LUFS: f64 = -70.0;
const RELATIVE_GATE_LU: f64 = -10.0;

#[derive(Debug, Clone, Copy)]
struct Biquad {
    b0: f64,
    b1: f64,
    b2: f64,
    a1: f64,
    a2: f64,
}

impl Biquad {
    fn high_shelf(fs: f64) -> Biquad {
        let gain_db = 3.999_843_853_973_347;
        let q = 0.707_175_236_955_419_3;
        let centre = 1_681.974_450_955_531_9;
        let k = (PI * centre / fs).tan();
        let vh = 10f64.powf(gain_db / 20.0);
        let vb = vh.powf(0.499_666_774_154_541_6);
        let a0 = 1.0 + k / q + k * k;
        Biquad {
            b0: (vh + vb * k / q + k * k) / a0,
            b1: 2.0 * (k * k - vh) / a0,
            b2: (vh - vb * k / q + k * k) / a0,
            a1: 2.0 * (k * k - 1.0) / a0,
            a2: (1.0 - k / q + k * k) / a0,
        }
    }

    fn high_pass(fs: f64) -> Biquad {
        let q = 0.500_327_037_323_877_3;
        let centre = 38.135_470_876_139_82;
        let k = (PI * centre / fs).tan();
        let a0 = 1.0 + k / q + k * k;
        Biquad {
            b0: 1.0,
            b1: -2.0,
            b2: 1.0,
            a1: 2.0 * (k * k - 1.0) / a0,
            a2: (1.0 - k / q + k * k) / a0,
        }
    }

    fn filter(&self, x: &[f64]) -> Vec<f64> {
        let (mut x1, mut x2, mut y1, mut y2) = (0.0, 0.0, 0.0, 0.0);
        x.iter()
            .map(|&x0| {
                let y0 = self.b0 * x0 + self.b1 * x1 + self.b2 * x2 - self.a1 * y1 - self.a2 * y2;
                x2 = x1;
                x1 = x0;
                y2 = y1;
                y1 = y0;
                y0
            })
            .collect()
    }
}

/// K-weighted copy of `x`.
pub fn k_weight(x: &[f64], sample_rate: u32) -> Vec<f64> {
    let fs = sample_rate as f64;
    Biquad::high_pass(fs).filter(&Biquad::high_shelf(fs).filter(x))
}

fn power_to_lufs(power: f64) -> f64 {
    -0.691 + 10.0 * power.log10()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoudnessResult {
    /// Gated integrated loudness in LUFS; `-inf` when every block is gated out.
    pub integrated_loudness: f64,
    /// Ungated loudness of each 400 ms block, ε-floored.
    pub windowed_loudness: Vec<f64>,
}

impl LoudnessResult {
    /// Population SD of the windowed loudness.
    pub fn variation(&self) -> f64 {
        let v = &self.windowed_loudness;
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        (v.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / n).sqrt()
    }
}

pub fn loudness(w: &Waveform) -> Result<LoudnessResult> {
    let fs = w.sample_rate() as f64;
    let block = (BLOCK_S * fs).round() as usize;
    let step = (STEP_S * fs).round() as usize;
    let n = w.len();
    if n < block {
        return Err(Error::TooShortForLoudness);
    }
    let weighted = k_weight(w.samples(), w.sample_rate());
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for v in &weighted {
        acc += v * v;
        prefix.push(acc);
    }
    let n_blocks = (n - block) / step + 1;
    let powers: Vec<f64> = (0..n_blocks)
        .map(|j| {
            let s = j * step;
            ((prefix[s + block] - prefix[s]) / block as f64).max(0.0)
        })
        .collect();

    let windowed_loudness = powers.iter().map(|&z| power_to_lufs(z + EPSILON)).collect();

    let above_absolute: Vec<f64> = powers
        .iter()
        .copied()
        .filter(|&z| z > 0.0 && power_to_lufs(z) > ABSOLUTE_GATE_LUFS)
        .collect();
    let integrated_loudness = if above_absolute.is_empty() {
        f64::NEG_INFINITY
    } else {
        let relative_gate =
            power_to_lufs(above_absolute.iter().sum::<f64>() / above_absolute.len() as f64) + RELATIVE_GATE_LU;
        let gated: Vec<f64> = above_absolute
            .into_iter()
            .filter(|&z| power_to_lufs(z) > relative_gate)
            .collect();
        power_to_lufs(gated.iter().sum::<f64>() / gated.len() as f64)
    };
    Ok(LoudnessResult {
        integrated_loudness,
        windowed_loudness,
    })
}

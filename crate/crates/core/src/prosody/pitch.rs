//! NCCF pitch tracking with dynamic-programming smoothing.
//!
//! Each frame yields up to [`MAX_CANDIDATES`] lag candidates from the
//! normalised cross-correlation function. Voicing is decided per frame
//! (peak NCCF and energy thresholds); within each voiced run a Viterbi
//! pass chooses one candidate per frame, trading local NCCF strength
//! against a transition cost proportional to the octave distance between
//! consecutive choices.

use crate::audio::{frame_count, FrameSpec, Waveform};
use crate::error::{Error, Result};

/// Candidates kept per frame.
pub const MAX_CANDIDATES: usize = 8;
/// Penalty on long lags, relative to the maximum lag. Biases against
/// sub-harmonic (octave-down) choices.
const LAG_WEIGHT: f64 = 0.3;
/// Transition cost per octave of F0 change between consecutive frames.
const OCTAVE_COST: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PitchParams {
    pub f0_min: f64,
    pub f0_max: f64,
    pub frame: FrameSpec,
    /// Minimum peak NCCF for a voiced frame.
    pub voicing_threshold: f64,
    /// Frames quieter than this many dB below the loudest frame are unvoiced.
    pub silence_db: f64,
}

impl Default for PitchParams {
    fn default() -> Self {
        PitchParams {
            f0_min: 60.0,
            f0_max: 500.0,
            frame: FrameSpec::default(),
            voicing_threshold: 0.3,
            silence_db: 60.0,
        }
    }
}

/// Per-frame F0 in Hz; 0 marks an unvoiced frame.
#[derive(Debug, Clone, PartialEq)]
pub struct F0Contour {
    values: Vec<f64>,
    frame_length: usize,
    hop_length: usize,
    sample_rate: u32,
    f0_min: f64,
    f0_max: f64,
}

impl F0Contour {
    /// Builds a contour from explicit values (0 = unvoiced).
    pub fn new(
        values: Vec<f64>,
        frame_length: usize,
        hop_length: usize,
        sample_rate: u32,
        f0_min: f64,
        f0_max: f64,
    ) -> Result<Self> {
        if values.iter().any(|&v| v != 0.0 && !(f0_min..=f0_max).contains(&v)) {
            return Err(Error::InvalidParameter(format!(
                "voiced F0 values must lie in [{f0_min}, {f0_max}] Hz"
            )));
        }
        Ok(F0Contour {
            values,
            frame_length,
            hop_length,
            sample_rate,
            f0_min,
            f0_max,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_voiced(&self, i: usize) -> bool {
        self.values[i] > 0.0
    }

    pub fn voiced_mask(&self) -> Vec<bool> {
        self.values.iter().map(|&v| v > 0.0).collect()
    }

    pub fn voiced_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied().filter(|&v| v > 0.0)
    }

    pub fn voiced_count(&self) -> usize {
        self.voiced_values().count()
    }

    pub fn frame_length(&self) -> usize {
        self.frame_length
    }

    pub fn hop_length(&self) -> usize {
        self.hop_length
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn f0_min(&self) -> f64 {
        self.f0_min
    }

    pub fn f0_max(&self) -> f64 {
        self.f0_max
    }

    /// Contour values with unvoiced frames as `NaN`, for the statistics layer.
    pub fn to_missing_unvoiced(&self) -> Vec<f64> {
        self.values.iter().map(|&v| if v > 0.0 { v } else { f64::NAN }).collect()
    }

    /// Runs of consecutive voiced frames as half-open index ranges.
    pub fn voiced_runs(&self) -> Vec<std::ops::Range<usize>> {
        let mut runs = Vec::new();
        let mut start = None;
        for (i, &v) in self.values.iter().enumerate() {
            match (v > 0.0, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    runs.push(s..i);
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            runs.push(s..self.values.len());
        }
        runs
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    lag: f64,
    strength: f64,
}

/// Normalised cross-correlation between `x[start..start+w]` and
/// `x[start+lag..start+lag+w]`, with `w` shortened at the end of the
/// signal. Returns 0 when fewer than `window / 2` samples overlap.
pub(crate) fn nccf(x: &[f64], energy_prefix: &[f64], start: usize, window: usize, lag: usize) -> f64 {
    let avail = x.len().saturating_sub(start + lag);
    let w = window.min(avail);
    if w == 0 || w < window / 2 {
        return 0.0;
    }
    let e0 = energy_prefix[start + w] - energy_prefix[start];
    let ek = energy_prefix[start + lag + w] - energy_prefix[start + lag];
    let denom = (e0 * ek).sqrt();
    if denom <= 0.0 {
        return 0.0;
    }
    let a = &x[start..start + w];
    let b = &x[start + lag..start + lag + w];
    let num: f64 = a.iter().zip(b).map(|(p, q)| p * q).sum();
    (num / denom).clamp(-1.0, 1.0)
}

pub(crate) fn energy_prefix(x: &[f64]) -> Vec<f64> {
    let mut prefix = Vec::with_capacity(x.len() + 1);
    let mut acc = 0.0;
    prefix.push(0.0);
    for v in x {
        acc += v * v;
        prefix.push(acc);
    }
    prefix
}

/// Vertex offset and height of the parabola through three equally spaced points.
pub(crate) fn parabolic_peak(left: f64, centre: f64, right: f64) -> (f64, f64) {
    let denom = left - 2.0 * centre + right;
    if denom.abs() < 1e-15 {
        return (0.0, centre);
    }
    let delta = (0.5 * (left - right) / denom).clamp(-0.5, 0.5);
    (delta, centre - 0.25 * (left - right) * delta)
}

/// Inclusive lag search range in samples.
pub(crate) fn lag_range(sample_rate: u32, f0_min: f64, f0_max: f64) -> (usize, usize) {
    let fs = sample_rate as f64;
    let lo = ((fs / f0_max).floor() as usize).max(2);
    let hi = (fs / f0_min).ceil() as usize;
    (lo, hi.max(lo + 1))
}

fn frame_candidates(x: &[f64], prefix: &[f64], start: usize, window: usize, lags: (usize, usize)) -> Vec<Candidate> {
    let (lo, hi) = lags;
    let corr: Vec<f64> = (lo - 1..=hi + 1).map(|k| nccf(x, prefix, start, window, k)).collect();
    let mut cands: Vec<Candidate> = (1..corr.len() - 1)
        .filter(|&i| corr[i] > 0.0 && corr[i] >= corr[i - 1] && corr[i] > corr[i + 1])
        .map(|i| {
            let (delta, strength) = parabolic_peak(corr[i - 1], corr[i], corr[i + 1]);
            Candidate {
                lag: (lo - 1 + i) as f64 + delta,
                strength: strength.min(1.0),
            }
        })
        .collect();
    cands.sort_by(|a, b| b.strength.total_cmp(&a.strength));
    cands.truncate(MAX_CANDIDATES);
    cands
}

/// Tracks F0 over `w`. Frames follow the usual framing: `frame` seconds
/// long every `hop` seconds, no partial trailing frame.
pub fn track_f0(w: &Waveform, params: &PitchParams) -> Result<F0Contour> {
    let fs = w.sample_rate();
    if !(params.f0_min > 0.0 && params.f0_min < params.f0_max && params.f0_max < fs as f64 / 2.0) {
        return Err(Error::InvalidParameter(format!(
            "F0 range [{}, {}] Hz is invalid at {} Hz",
            params.f0_min, params.f0_max, fs
        )));
    }
    let (window, hop) = params.frame.to_samples(fs)?;
    let x = w.samples();
    if x.len() < window {
        return Err(Error::SignalTooShort { needed: window, got: x.len() });
    }
    let n_frames = frame_count(x.len(), window, hop);
    let prefix = energy_prefix(x);
    let lags = lag_range(fs, params.f0_min, params.f0_max);
    let max_lag = lags.1 as f64;

    let rms: Vec<f64> = (0..n_frames)
        .map(|i| {
            let s = i * hop;
            ((prefix[s + window] - prefix[s]) / window as f64).sqrt()
        })
        .collect();
    let loudest = rms.iter().cloned().fold(0.0, f64::max);
    let silence_floor = loudest * 10f64.powf(-params.silence_db / 20.0);

    let candidates: Vec<Vec<Candidate>> = (0..n_frames)
        .map(|i| {
            if rms[i] <= 0.0 || rms[i] < silence_floor {
                return Vec::new();
            }
            let c = frame_candidates(x, &prefix, i * hop, window, lags);
            match c.first() {
                Some(best) if best.strength >= params.voicing_threshold => c,
                _ => Vec::new(),
            }
        })
        .collect();

    let local_cost = |c: &Candidate| 1.0 - c.strength * (1.0 - LAG_WEIGHT * c.lag / max_lag);
    let mut values = vec![0.0; n_frames];
    let mut i = 0;
    while i < n_frames {
        if candidates[i].is_empty() {
            i += 1;
            continue;
        }
        let start = i;
        while i < n_frames && !candidates[i].is_empty() {
            i += 1;
        }
        // Viterbi over frames start..i.
        let mut cost: Vec<f64> = candidates[start].iter().map(local_cost).collect();
        let mut back: Vec<Vec<usize>> = vec![Vec::new()];
        for t in start + 1..i {
            let mut next_cost = Vec::with_capacity(candidates[t].len());
            let mut next_back = Vec::with_capacity(candidates[t].len());
            for c in &candidates[t] {
                let (best_j, best) = candidates[t - 1]
                    .iter()
                    .enumerate()
                    .map(|(j, p)| (j, cost[j] + OCTAVE_COST * (p.lag / c.lag).log2().abs()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("voiced frames have candidates");
                next_cost.push(best + local_cost(c));
                next_back.push(best_j);
            }
            cost = next_cost;
            back.push(next_back);
        }
        let mut choice = cost
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(j, _)| j)
            .unwrap();
        for t in (start..i).rev() {
            let lag = candidates[t][choice].lag;
            values[t] = (fs as f64 / lag).clamp(params.f0_min, params.f0_max);
            if t > start {
                choice = back[t - start][choice];
            }
        }
    }

    F0Contour::new(values, window, hop, fs, params.f0_min, params.f0_max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F0Statistics {
    pub mean: f64,
    /// Population standard deviation.
    pub sd: f64,
}

/// Mean and population SD of F0 over voiced frames.
pub fn f0_statistics(c: &F0Contour) -> Result<F0Statistics> {
    let voiced: Vec<f64> = c.voiced_values().collect();
    if voiced.is_empty() {
        return Err(Error::NoVoicedFrames);
    }
    let n = voiced.len() as f64;
    let mean = voiced.iter().sum::<f64>() / n;
    let var = voiced.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Ok(F0Statistics { mean, sd: var.sqrt() })
}

//! Glottal cycle extraction by F0-guided peak picking.
//!
//! Within each voiced run of the contour, cycle boundaries are positive
//! waveform peaks spaced roughly one predicted period apart. The next peak
//! is the largest local maximum within ±25 % of the predicted period; when
//! that window is empty the first peak beyond it is taken, and the
//! resulting long cycle is then rejected by the ratio guard. A rejected
//! cycle also breaks adjacency: perturbation measures never difference
//! across it.

use crate::error::{Error, Result};
use crate::prosody::pitch::{parabolic_peak, F0Contour};
use crate::audio::Waveform;

/// Retained cycles satisfy `MIN_RATIO < T_i / T_prev < MAX_RATIO`.
pub const MIN_RATIO: f64 = 0.5;
pub const MAX_RATIO: f64 = 2.0;
const SEARCH_TOLERANCE: f64 = 0.25;

/// Ordered glottal cycles grouped into contiguous segments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PeriodSequence {
    periods: Vec<f64>,
    amplitudes: Vec<f64>,
    /// Index of the first cycle of each segment.
    segment_starts: Vec<usize>,
}

impl PeriodSequence {
    /// A single contiguous run of cycles.
    pub fn from_cycles(periods: Vec<f64>, amplitudes: Vec<f64>) -> Self {
        assert_eq!(periods.len(), amplitudes.len());
        let segment_starts = if periods.is_empty() { Vec::new() } else { vec![0] };
        PeriodSequence {
            periods,
            amplitudes,
            segment_starts,
        }
    }

    /// Periods in seconds.
    pub fn periods(&self) -> &[f64] {
        &self.periods
    }

    /// Peak amplitude opening each cycle.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.periods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.periods.is_empty()
    }

    fn segment_ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.segment_starts.iter().enumerate().map(move |(k, &s)| {
            let e = self.segment_starts.get(k + 1).copied().unwrap_or(self.periods.len());
            s..e
        })
    }

    pub fn period_segments(&self) -> Vec<&[f64]> {
        self.segment_ranges().map(|r| &self.periods[r]).collect()
    }

    pub fn amplitude_segments(&self) -> Vec<&[f64]> {
        self.segment_ranges().map(|r| &self.amplitudes[r]).collect()
    }

    fn push(&mut self, period: f64, amplitude: f64, new_segment: bool) {
        if new_segment || self.periods.is_empty() {
            self.segment_starts.push(self.periods.len());
        }
        self.periods.push(period);
        self.amplitudes.push(amplitude);
    }
}

/// Local maxima with positive amplitude in `x[lo..hi]`.
fn positive_peaks(x: &[f64], lo: usize, hi: usize) -> Vec<usize> {
    (lo.max(1)..hi.min(x.len().saturating_sub(1)))
        .filter(|&i| x[i] > 0.0 && x[i] > x[i - 1] && x[i] >= x[i + 1])
        .collect()
}

fn largest_in(x: &[f64], peaks: &[usize], lo: f64, hi: f64) -> Option<usize> {
    let a = peaks.partition_point(|&p| (p as f64) < lo);
    let b = peaks.partition_point(|&p| (p as f64) <= hi);
    peaks[a..b].iter().copied().max_by(|&p, &q| x[p].total_cmp(&x[q]))
}

/// Refined peak time (samples) and height.
fn refine(x: &[f64], i: usize) -> (f64, f64) {
    let (delta, height) = parabolic_peak(x[i - 1], x[i], x[i + 1]);
    (i as f64 + delta, height)
}

pub fn extract_periods(w: &Waveform, c: &F0Contour) -> Result<PeriodSequence> {
    if c.voiced_count() < 3 {
        return Err(Error::InsufficientVoicing(format!(
            "{} voiced frames, need at least 3",
            c.voiced_count()
        )));
    }
    let x = w.samples();
    let fs = w.sample_rate() as f64;
    let hop = c.hop_length();
    let frame = c.frame_length();
    let (min_period, max_period) = (1.0 / c.f0_max(), 1.0 / c.f0_min());

    let mut out = PeriodSequence::default();
    for run in c.voiced_runs() {
        let a = run.start * hop;
        let b = ((run.end - 1) * hop + frame).min(x.len());
        let period_at = |p: usize| {
            let idx = ((p as f64 - frame as f64 / 2.0) / hop as f64).round().max(0.0) as usize;
            fs / c.values()[idx.clamp(run.start, run.end - 1)]
        };
        let peaks = positive_peaks(x, a, b);
        // A run may open on a gap longer than one period before the first pulse.
        let Some(first) = largest_in(x, &peaks, a as f64, a as f64 + period_at(a)).or_else(|| peaks.first().copied())
        else {
            continue;
        };
        let mut chain = vec![first];
        let mut cur = first;
        loop {
            let t = period_at(cur);
            let (lo, hi) = (cur as f64 + (1.0 - SEARCH_TOLERANCE) * t, cur as f64 + (1.0 + SEARCH_TOLERANCE) * t);
            let next = largest_in(x, &peaks, lo, hi).or_else(|| {
                let k = peaks.partition_point(|&p| (p as f64) <= hi);
                peaks.get(k).copied()
            });
            match next {
                Some(n) => {
                    chain.push(n);
                    cur = n;
                }
                None => break,
            }
        }

        let refined: Vec<(f64, f64)> = chain.iter().map(|&i| refine(x, i)).collect();
        let mut last_kept: Option<f64> = None;
        let mut break_segment = true;
        for pair in refined.windows(2) {
            let period = (pair[1].0 - pair[0].0) / fs;
            let amplitude = pair[0].1;
            let ratio_ok = last_kept.is_none_or(|prev| {
                let r = period / prev;
                r > MIN_RATIO && r < MAX_RATIO
            });
            let in_range = period > min_period && period < max_period;
            if ratio_ok && in_range && amplitude > 0.0 {
                out.push(period, amplitude, break_segment);
                last_kept = Some(period);
                break_segment = false;
            } else {
                break_segment = true;
            }
        }
    }
    if out.is_empty() {
        return Err(Error::InsufficientVoicing("no glottal cycles found".into()));
    }
    Ok(out)
}

//! Jitter and shimmer: cycle-to-cycle perturbation of period and amplitude.
//!
//! All difference terms are taken within segments of adjacent cycles; the
//! normalising mean is over every cycle in the sequence.

use super::periods::PeriodSequence;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterSet {
    pub local: f64,
    /// Seconds.
    pub local_absolute: f64,
    pub rap: f64,
    pub ppq5: f64,
    pub ddp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShimmerSet {
    pub local: f64,
    pub local_db: f64,
    pub apq3: Option<f64>,
    pub apq5: Option<f64>,
    pub apq11: Option<f64>,
}

fn mean(v: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Mean |v[i+1] − v[i]| over adjacent pairs.
fn mean_abs_diff(segments: &[&[f64]]) -> Option<f64> {
    mean(segments.iter().flat_map(|s| s.windows(2).map(|p| (p[1] - p[0]).abs())))
}

/// Mean absolute deviation of each value from its centred `k`-point average.
fn centred_deviation(segments: &[&[f64]], k: usize) -> Option<f64> {
    mean(segments.iter().flat_map(|s| {
        s.windows(k).map(move |w| {
            let avg = w.iter().sum::<f64>() / k as f64;
            (w[k / 2] - avg).abs()
        })
    }))
}

/// Mean |(v[i+1] − v[i]) − (v[i] − v[i−1])|.
fn mean_abs_second_diff(segments: &[&[f64]]) -> Option<f64> {
    mean(segments.iter().flat_map(|s| s.windows(3).map(|w| ((w[2] - w[1]) - (w[1] - w[0])).abs())))
}

pub const MIN_JITTER_PERIODS: usize = 5;

pub fn jitters(p: &PeriodSequence) -> Result<JitterSet> {
    let n = p.len();
    let too_few = || Error::TooFewPeriods { needed: MIN_JITTER_PERIODS, got: n };
    if n < MIN_JITTER_PERIODS {
        return Err(too_few());
    }
    let segs = p.period_segments();
    let mean_period = p.periods().iter().sum::<f64>() / n as f64;
    let local_absolute = mean_abs_diff(&segs).ok_or_else(too_few)?;
    let rap = centred_deviation(&segs, 3).ok_or_else(too_few)? / mean_period;
    let ppq5 = centred_deviation(&segs, 5).ok_or_else(too_few)? / mean_period;
    let ddp = mean_abs_second_diff(&segs).ok_or_else(too_few)? / mean_period;
    Ok(JitterSet {
        local: local_absolute / mean_period,
        local_absolute,
        rap,
        ppq5,
        ddp,
    })
}

pub fn shimmers(p: &PeriodSequence) -> Result<ShimmerSet> {
    let segs = p.amplitude_segments();
    let n = p.len();
    let too_few = || Error::TooFewPeriods { needed: 2, got: n };
    let mean_amp = p.amplitudes().iter().sum::<f64>() / n.max(1) as f64;
    let local = mean_abs_diff(&segs).ok_or_else(too_few)? / mean_amp;
    let local_db = mean(
        segs.iter()
            .flat_map(|s| s.windows(2).map(|w| (20.0 * (w[1] / w[0]).log10()).abs())),
    )
    .ok_or_else(too_few)?;
    let apq = |k| centred_deviation(&segs, k).map(|d| d / mean_amp);
    Ok(ShimmerSet {
        local,
        local_db,
        apq3: apq(3),
        apq5: apq(5),
        apq11: apq(11),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(periods: &[f64]) -> PeriodSequence {
        PeriodSequence::from_cycles(periods.to_vec(), vec![1.0; periods.len()])
    }

    #[test]
    fn periodic_train_has_no_jitter() {
        let j = jitters(&seq(&[0.01; 20])).unwrap();
        assert_eq!(j, JitterSet { local: 0.0, local_absolute: 0.0, rap: 0.0, ppq5: 0.0, ddp: 0.0 });
    }

    #[test]
    fn alternating_periods_by_hand() {
        let j = jitters(&seq(&[0.010, 0.011, 0.010, 0.011, 0.010])).unwrap();
        assert!((j.local_absolute - 0.001).abs() < 1e-15);
        assert!((j.local - 0.001 / 0.0104).abs() < 1e-12);
        assert!((j.local - 0.096_153_846).abs() < 1e-8);
    }

    #[test]
    fn too_few_periods() {
        assert!(matches!(jitters(&seq(&[0.01; 4])), Err(Error::TooFewPeriods { .. })));
    }

    #[test]
    fn constant_amplitude_has_no_shimmer() {
        let s = shimmers(&seq(&[0.01; 12])).unwrap();
        assert_eq!(s.local, 0.0);
        assert_eq!(s.local_db, 0.0);
        assert_eq!(s.apq11, Some(0.0));
    }

    #[test]
    fn alternating_amplitude_db() {
        let amps: Vec<f64> = (0..10).map(|i| if i % 2 == 0 { 1.0 } else { 1.1 }).collect();
        let s = shimmers(&PeriodSequence::from_cycles(vec![0.01; 10], amps)).unwrap();
        assert!((s.local_db - 20.0 * 1.1f64.log10()).abs() < 1e-12);
        assert!((s.local_db - 0.828).abs() < 1e-3);
        assert_eq!(s.apq11, None);
        assert!(s.apq5.is_some());
    }

    proptest! {
        #[test]
        fn ddp_is_three_rap(periods in prop::collection::vec(0.002f64..0.016, 5..200)) {
            let j = jitters(&seq(&periods)).unwrap();
            prop_assert!((j.ddp - 3.0 * j.rap).abs() <= 1e-12);
            prop_assert!(j.local >= 0.0 && j.ppq5 >= 0.0);
        }

        #[test]
        fn shimmer_gain_invariant(amps in prop::collection::vec(0.05f64..1.0, 12..60), gain in 0.01f64..10.0) {
            let a = shimmers(&PeriodSequence::from_cycles(vec![0.01; amps.len()], amps.clone())).unwrap();
            let scaled: Vec<f64> = amps.iter().map(|v| v * gain).collect();
            let b = shimmers(&PeriodSequence::from_cycles(vec![0.01; amps.len()], scaled)).unwrap();
            prop_assert!((a.local - b.local).abs() <= 1e-9 * a.local.max(1e-12));
            prop_assert!((a.local_db - b.local_db).abs() <= 1e-9);
            prop_assert!((a.apq11.unwrap() - b.apq11.unwrap()).abs() <= 1e-9 * a.apq11.unwrap().max(1e-12));
        }
    }
}

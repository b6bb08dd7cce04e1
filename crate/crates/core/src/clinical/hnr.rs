//! Harmonics-to-noise ratio from the normalised autocorrelation peak.

use crate::audio::Waveform;
use crate::error::{Error, Result};
use crate::prosody::pitch::{energy_prefix, nccf, parabolic_peak};
use crate::prosody::F0Contour;

/// Clamp on the correlation peak; bounds frame HNR to about ±60 dB.
pub const R_CLAMP: f64 = 1e-6;
/// Lag search half-width around the tracked period, as a fraction of it.
const LAG_TOLERANCE: f64 = 0.1;

/// `10·log10(r / (1 − r))` with `r` clamped to `[R_CLAMP, 1 − R_CLAMP]`.
pub fn hnr_from_correlation(r: f64) -> f64 {
    let r = r.clamp(R_CLAMP, 1.0 - R_CLAMP);
    10.0 * (r / (1.0 - r)).log10()
}

/// Per-frame HNR in dB for every voiced frame of `c`, on the contour's framing.
pub fn frame_hnr(w: &Waveform, c: &F0Contour) -> Vec<f64> {
    let x = w.samples();
    let prefix = energy_prefix(x);
    let fs = w.sample_rate() as f64;
    (0..c.len())
        .filter(|&i| c.is_voiced(i))
        .map(|i| {
            let start = i * c.hop_length();
            let period = fs / c.values()[i];
            let lo = ((period * (1.0 - LAG_TOLERANCE)).floor() as usize).max(2);
            let hi = (period * (1.0 + LAG_TOLERANCE)).ceil() as usize;
            let corr: Vec<f64> = (lo - 1..=hi + 1).map(|k| nccf(x, &prefix, start, c.frame_length(), k)).collect();
            let mut best = corr[1..corr.len() - 1].iter().cloned().fold(f64::MIN, f64::max);
            for j in 1..corr.len() - 1 {
                if corr[j] >= corr[j - 1] && corr[j] >= corr[j + 1] {
                    best = best.max(parabolic_peak(corr[j - 1], corr[j], corr[j + 1]).1);
                }
            }
            hnr_from_correlation(best)
        })
        .collect()
}

/// Mean frame HNR over voiced frames.
pub fn hnr(w: &Waveform, c: &F0Contour) -> Result<f64> {
    let frames = frame_hnr(w, c);
    if frames.is_empty() {
        return Err(Error::NoVoicedFrames);
    }
    Ok(frames.iter().sum::<f64>() / frames.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prosody::{track_f0, PitchParams};
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};
    use std::f64::consts::PI;

    fn sine_plus_noise(snr_db: Option<f64>, seed: u64) -> Waveform {
        let amp = 0.5;
        let signal_power = amp * amp / 2.0;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let sd = snr_db.map(|s| (signal_power / 10f64.powf(s / 10.0)).sqrt()).unwrap_or(0.0);
        let normal = Normal::new(0.0, sd.max(1e-300)).unwrap();
        let x = (0..32000)
            .map(|i| {
                let n = if snr_db.is_some() { normal.sample(&mut rng) } else { 0.0 };
                amp * (2.0 * PI * 200.0 * i as f64 / 16000.0).sin() + n
            })
            .collect();
        Waveform::new(x, 16000).unwrap()
    }

    fn measure(w: &Waveform) -> f64 {
        let c = track_f0(w, &PitchParams::default()).unwrap();
        hnr(w, &c).unwrap()
    }

    #[test]
    fn pure_sine_is_highly_harmonic() {
        let h = measure(&sine_plus_noise(None, 0));
        assert!(h >= 30.0 && h <= 60.1, "{h}");
    }

    #[test]
    fn ten_db_snr() {
        let h = measure(&sine_plus_noise(Some(10.0), 3));
        assert!((h - 10.0).abs() <= 2.0, "{h}");
    }

    #[test]
    fn monotone_in_snr() {
        let h: Vec<f64> = [0.0, 10.0, 20.0].iter().map(|&s| measure(&sine_plus_noise(Some(s), 5))).collect();
        assert!(h[0] < h[1] && h[1] < h[2], "{h:?}");
    }

    #[test]
    fn unvoiced_contour_errors() {
        let w = Waveform::new(vec![0.0; 4000], 16000).unwrap();
        let c = F0Contour::new(vec![0.0; 20], 400, 160, 16000, 60.0, 500.0).unwrap();
        assert!(matches!(hnr(&w, &c), Err(Error::NoVoicedFrames)));
    }

    #[test]
    fn clamp_bounds() {
        assert!((hnr_from_correlation(1.0) - 60.0).abs() < 1e-3);
        assert!((hnr_from_correlation(0.0) + 60.0).abs() < 1e-3);
        assert!(hnr_from_correlation(0.5).abs() < 1e-12);
    }
}

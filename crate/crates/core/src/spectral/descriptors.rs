//! Frame-level spectral shape descriptors computed from a magnitude spectrogram.
//!
//! Silent frames (zero total magnitude) produce fixed values: centroid,
//! spread, skewness, kurtosis, slope, entropy and rolloff are 0, flatness
//! is 1, and flux follows its definition on the all-zero normalised frame.

use super::stft::Spectrogram;
use super::EPSILON;

/// Fraction of total magnitude below the rolloff frequency.
pub const ROLLOFF_FRACTION: f64 = 0.85;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralDescriptor {
    Slope,
    Flux,
    Entropy,
    Centroid,
    Spread,
    Skewness,
    Kurtosis,
    Flatness,
    Rolloff,
}

impl SpectralDescriptor {
    pub const ALL: [SpectralDescriptor; 9] = [
        SpectralDescriptor::Slope,
        SpectralDescriptor::Flux,
        SpectralDescriptor::Entropy,
        SpectralDescriptor::Centroid,
        SpectralDescriptor::Spread,
        SpectralDescriptor::Skewness,
        SpectralDescriptor::Kurtosis,
        SpectralDescriptor::Flatness,
        SpectralDescriptor::Rolloff,
    ];

    /// Column-name root used in feature tables.
    pub fn name(self) -> &'static str {
        match self {
            SpectralDescriptor::Slope => "spectral_slope",
            SpectralDescriptor::Flux => "spectral_flux",
            SpectralDescriptor::Entropy => "spectral_entropy",
            SpectralDescriptor::Centroid => "spectral_centroid",
            SpectralDescriptor::Spread => "spectral_spread",
            SpectralDescriptor::Skewness => "spectral_skewness",
            SpectralDescriptor::Kurtosis => "spectral_kurtosis",
            SpectralDescriptor::Flatness => "spectral_flatness",
            SpectralDescriptor::Rolloff => "spectral_rolloff",
        }
    }

    pub fn units(self) -> &'static str {
        match self {
            SpectralDescriptor::Centroid | SpectralDescriptor::Spread | SpectralDescriptor::Rolloff => "Hz",
            SpectralDescriptor::Slope => "1/Hz",
            _ => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDescriptorSeries {
    pub descriptor: SpectralDescriptor,
    pub values: Vec<f64>,
}

impl SpectralDescriptorSeries {
    pub fn name(&self) -> &'static str {
        self.descriptor.name()
    }
}

/// Moments of a frame treated as a distribution over frequency.
struct Moments {
    centroid: f64,
    spread: f64,
    skewness: f64,
    kurtosis: f64,
}

fn moments(freqs: &[f64], mag: &[f64], total: f64) -> Moments {
    if total <= 0.0 {
        return Moments { centroid: 0.0, spread: 0.0, skewness: 0.0, kurtosis: 0.0 };
    }
    let centroid = freqs.iter().zip(mag).map(|(f, s)| f * s).sum::<f64>() / total;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for (f, s) in freqs.iter().zip(mag) {
        let d = f - centroid;
        let d2 = d * d;
        m2 += d2 * s;
        m3 += d2 * d * s;
        m4 += d2 * d2 * s;
    }
    let (m2, m3, m4) = (m2 / total, m3 / total, m4 / total);
    let spread = m2.sqrt();
    let (skewness, kurtosis) = if m2 > 0.0 {
        (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
    } else {
        (0.0, 0.0)
    };
    Moments { centroid, spread, skewness, kurtosis }
}

fn slope(freqs: &[f64], mag: &[f64]) -> f64 {
    let n = freqs.len() as f64;
    let fm = freqs.iter().sum::<f64>() / n;
    let sm = mag.iter().sum::<f64>() / n;
    let (mut cov, mut var) = (0.0, 0.0);
    for (f, s) in freqs.iter().zip(mag) {
        cov += (f - fm) * (s - sm);
        var += (f - fm) * (f - fm);
    }
    if var > 0.0 {
        cov / var
    } else {
        0.0
    }
}

fn entropy(mag: &[f64]) -> f64 {
    let total: f64 = mag.iter().map(|m| m * m).sum();
    if total <= 0.0 {
        return 0.0;
    }
    -mag.iter()
        .map(|m| m * m / total)
        .filter(|&p| p > 0.0)
        .map(|p| p * p.ln())
        .sum::<f64>()
}

fn flatness(mag: &[f64]) -> f64 {
    let n = mag.len() as f64;
    let (mut log_sum, mut sum) = (0.0, 0.0);
    for m in mag {
        let p = (m * m).max(EPSILON);
        log_sum += p.ln();
        sum += p;
    }
    ((log_sum / n).exp() / (sum / n)).min(1.0)
}

fn rolloff(freqs: &[f64], mag: &[f64], total: f64) -> f64 {
    if total <= 0.0 {
        return 0.0;
    }
    let threshold = ROLLOFF_FRACTION * total;
    let mut cumulative = 0.0;
    for (f, m) in freqs.iter().zip(mag) {
        cumulative += m;
        if cumulative >= threshold {
            return *f;
        }
    }
    *freqs.last().unwrap_or(&0.0)
}

/// All nine descriptors, in [`SpectralDescriptor::ALL`] order.
pub fn spectral_descriptors(s: &Spectrogram) -> Vec<SpectralDescriptorSeries> {
    let freqs = s.bin_frequencies();
    let n = s.n_frames();
    let mut out: Vec<Vec<f64>> = vec![Vec::with_capacity(n); SpectralDescriptor::ALL.len()];
    let mut prev_norm: Option<Vec<f64>> = None;
    for frame in s.frames() {
        let total: f64 = frame.iter().sum();
        let norm: Vec<f64> = if total > 0.0 {
            frame.iter().map(|m| m / total).collect()
        } else {
            vec![0.0; frame.len()]
        };
        let flux = prev_norm
            .as_ref()
            .map(|p| p.iter().zip(&norm).map(|(a, b)| (b - a).powi(2)).sum::<f64>().sqrt())
            .unwrap_or(0.0);
        let m = moments(freqs, frame, total);
        let row = [
            slope(freqs, frame),
            flux,
            entropy(frame),
            m.centroid,
            m.spread,
            m.skewness,
            m.kurtosis,
            flatness(frame),
            rolloff(freqs, frame, total),
        ];
        for (series, v) in out.iter_mut().zip(row) {
            series.push(v);
        }
        prev_norm = Some(norm);
    }
    SpectralDescriptor::ALL
        .iter()
        .zip(out)
        .map(|(&descriptor, values)| SpectralDescriptorSeries { descriptor, values })
        .collect()
}

/// Convenience lookup into the output of [`spectral_descriptors`].
pub fn descriptor<'a>(set: &'a [SpectralDescriptorSeries], which: SpectralDescriptor) -> &'a [f64] {
    &set.iter().find(|s| s.descriptor == which).expect("all descriptors are computed").values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audio::{Waveform, WindowKind};
    use crate::spectral::stft::stft_magnitude;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};
    use std::f64::consts::PI;

    fn tone_spec(freq: f64) -> Spectrogram {
        let x: Vec<f64> = (0..16000).map(|i| 0.5 * (2.0 * PI * freq * i as f64 / 16000.0).sin()).collect();
        stft_magnitude(&Waveform::new(x, 16000).unwrap(), 512, 160, WindowKind::Hann).unwrap()
    }

    #[test]
    fn pure_tone_descriptors() {
        let s = tone_spec(1000.0);
        let d = spectral_descriptors(&s);
        let bin = 16000.0 / 512.0;
        for &c in descriptor(&d, SpectralDescriptor::Centroid) {
            assert!((c - 1000.0).abs() <= bin, "centroid {c}");
        }
        for &r in descriptor(&d, SpectralDescriptor::Rolloff) {
            assert!((r - 1000.0).abs() <= bin, "rolloff {r}");
        }
        for &sp in descriptor(&d, SpectralDescriptor::Spread) {
            assert!(sp < 100.0, "spread {sp}");
        }
        for &f in descriptor(&d, SpectralDescriptor::Flatness) {
            assert!(f < 0.01);
        }
    }

    #[test]
    fn flat_spectrum_identities() {
        let k = 64;
        let freqs: Vec<f64> = (0..k).map(|i| i as f64 * 10.0).collect();
        let s = Spectrogram::new(vec![1.0; k], 1, freqs.clone(), 160, 16000);
        let d = spectral_descriptors(&s);
        assert!((descriptor(&d, SpectralDescriptor::Entropy)[0] - (k as f64).ln()).abs() < 1e-12);
        assert!((descriptor(&d, SpectralDescriptor::Flatness)[0] - 1.0).abs() < 1e-12);
        let mean_f = freqs.iter().sum::<f64>() / k as f64;
        assert!((descriptor(&d, SpectralDescriptor::Centroid)[0] - mean_f).abs() < 1e-9);
        assert!(descriptor(&d, SpectralDescriptor::Slope)[0].abs() < 1e-15);
    }

    #[test]
    fn silent_frames_degenerate_values() {
        let s = Spectrogram::new(vec![0.0; 2 * 8], 2, (0..8).map(|i| i as f64 * 100.0).collect(), 160, 16000);
        let d = spectral_descriptors(&s);
        for series in &d {
            let expected = if series.descriptor == SpectralDescriptor::Flatness { 1.0 } else { 0.0 };
            assert!(series.values.iter().all(|&v| v == expected), "{}", series.name());
        }
    }

    #[test]
    fn white_noise_flatness_monte_carlo() {
        let normal = Normal::new(0.0, 0.1).unwrap();
        let mut means = Vec::new();
        for seed in 0..10 {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let x: Vec<f64> = (0..8000).map(|_| normal.sample(&mut rng)).collect();
            let s = stft_magnitude(&Waveform::new(x, 16000).unwrap(), 512, 160, WindowKind::Hann).unwrap();
            let d = spectral_descriptors(&s);
            let f = descriptor(&d, SpectralDescriptor::Flatness);
            means.push(f.iter().sum::<f64>() / f.len() as f64);
        }
        let mean = means.iter().sum::<f64>() / means.len() as f64;
        assert!(mean > 0.4, "mean flatness {mean}");
    }

    #[test]
    fn flux_zero_for_hop_aligned_periodic_signal() {
        // 32-sample period divides the 160-sample hop.
        let d = spectral_descriptors(&tone_spec(500.0));
        assert!(descriptor(&d, SpectralDescriptor::Flux).iter().all(|&v| v.abs() < 1e-12));
    }
}

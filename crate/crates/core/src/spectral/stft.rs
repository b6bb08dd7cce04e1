use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::audio::{FrameSequence, Waveform, WindowKind};
use crate::error::{Error, Result};

/// Frames × bins matrix with per-bin centre frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    values: Vec<f64>,
    n_frames: usize,
    bin_frequencies: Vec<f64>,
    hop_length: usize,
    sample_rate: u32,
}

impl Spectrogram {
    pub fn new(
        values: Vec<f64>,
        n_frames: usize,
        bin_frequencies: Vec<f64>,
        hop_length: usize,
        sample_rate: u32,
    ) -> Self {
        assert_eq!(values.len(), n_frames * bin_frequencies.len());
        Spectrogram {
            values,
            n_frames,
            bin_frequencies,
            hop_length,
            sample_rate,
        }
    }

    pub fn n_frames(&self) -> usize {
        self.n_frames
    }

    pub fn n_bins(&self) -> usize {
        self.bin_frequencies.len()
    }

    pub fn bin_frequencies(&self) -> &[f64] {
        &self.bin_frequencies
    }

    pub fn hop_length(&self) -> usize {
        self.hop_length
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn frame(&self, i: usize) -> &[f64] {
        let k = self.n_bins();
        &self.values[i * k..(i + 1) * k]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n_bins().max(1))
    }

    /// Rows as owned vectors, for building a [`crate::TimeSeries`].
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.frames().map(<[f64]>::to_vec).collect()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Spectrogram {
        Spectrogram {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }
}

pub(crate) fn check_fft_size(n_fft: usize, hop: usize) -> Result<()> {
    if n_fft < 2 || !n_fft.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "n_fft must be a power of two >= 2, got {n_fft}"
        )));
    }
    if hop == 0 {
        return Err(Error::InvalidParameter("hop must be positive".into()));
    }
    Ok(())
}

/// Magnitudes of the windowed DFT, `frames × (n_fft / 2 + 1)`.
///
/// Frames start at multiples of `hop`; there is no centring or padding.
pub fn stft_magnitude(w: &Waveform, n_fft: usize, hop: usize, window: WindowKind) -> Result<Spectrogram> {
    check_fft_size(n_fft, hop)?;
    let frames = FrameSequence::from_samples(w.samples(), w.sample_rate(), n_fft, hop)?;
    let coeffs = window.coefficients(n_fft);
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n_fft);
    let n_bins = n_fft / 2 + 1;
    let mut values = Vec::with_capacity(frames.len() * n_bins);
    let mut buf = vec![Complex::new(0.0, 0.0); n_fft];
    let mut scratch = vec![Complex::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for frame in frames.iter() {
        for ((b, x), c) in buf.iter_mut().zip(frame).zip(&coeffs) {
            *b = Complex::new(x * c, 0.0);
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        values.extend(buf[..n_bins].iter().map(|z| z.norm()));
    }
    let fs = w.sample_rate() as f64;
    let bin_frequencies = (0..n_bins).map(|k| k as f64 * fs / n_fft as f64).collect();
    Ok(Spectrogram::new(values, frames.len(), bin_frequencies, hop, w.sample_rate()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn tone_peaks_at_expected_bin() {
        let fs = 16000;
        let x: Vec<f64> = (0..8000).map(|i| (2.0 * PI * 1000.0 * i as f64 / fs as f64).sin()).collect();
        let s = stft_magnitude(&Waveform::new(x, fs).unwrap(), 1024, 256, WindowKind::Hann).unwrap();
        for f in s.frames() {
            let argmax = f.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
            assert_eq!(argmax, 64);
        }
    }

    #[test]
    fn zero_signal_zero_spectrum() {
        let s = stft_magnitude(&Waveform::new(vec![0.0; 2048], 16000).unwrap(), 512, 160, WindowKind::Hann).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.0));
        assert!(s.bin_frequencies().windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn parseval_on_white_noise() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let x: Vec<f64> = (0..512).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = stft_magnitude(&Waveform::new(x.clone(), 16000).unwrap(), 512, 512, WindowKind::Hann).unwrap();
        let frame = s.frame(0);
        let n = 512;
        // One-sided: interior bins count twice.
        let spectral: f64 = frame
            .iter()
            .enumerate()
            .map(|(k, m)| if k == 0 || k == n / 2 { m * m } else { 2.0 * m * m })
            .sum::<f64>()
            / n as f64;
        let windowed: f64 = x
            .iter()
            .zip(WindowKind::Hann.coefficients(n))
            .map(|(v, c)| (v * c).powi(2))
            .sum();
        assert!((spectral - windowed).abs() / windowed < 1e-6);
    }

    #[test]
    fn rejects_non_power_of_two() {
        let w = Waveform::new(vec![0.0; 1000], 16000).unwrap();
        assert!(stft_magnitude(&w, 500, 100, WindowKind::Hann).is_err());
        assert!(matches!(
            stft_magnitude(&w, 1024, 100, WindowKind::Hann),
            Err(Error::SignalTooShort { .. })
        ));
    }
}

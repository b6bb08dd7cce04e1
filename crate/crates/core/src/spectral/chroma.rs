use super::stft::stft_magnitude;
use crate::audio::{Waveform, WindowKind};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub const PITCH_CLASSES: [&str; 12] = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];

/// Pitch class index (C = 0) of a frequency, with A4 = 440 Hz.
pub fn pitch_class(freq: f64) -> usize {
    let semitones_from_a = (12.0 * (freq / 440.0).log2()).round() as i64;
    (semitones_from_a + 9).rem_euclid(12) as usize
}

/// STFT power folded onto 12 pitch classes, each frame L2-normalised.
///
/// All-zero frames stay all-zero.
pub fn chromagram_stft(w: &Waveform, n_fft: usize, hop: usize, n_chroma: usize) -> Result<TimeSeries> {
    if n_chroma != 12 {
        return Err(Error::InvalidParameter(format!("n_chroma must be 12, got {n_chroma}")));
    }
    let mag = stft_magnitude(w, n_fft, hop, WindowKind::Hann)?;
    let classes: Vec<Option<usize>> = mag
        .bin_frequencies()
        .iter()
        .map(|&f| (f > 0.0).then(|| pitch_class(f)))
        .collect();
    let rows: Vec<Vec<f64>> = mag
        .frames()
        .map(|frame| {
            let mut chroma = vec![0.0; 12];
            for (m, class) in frame.iter().zip(&classes) {
                if let Some(c) = class {
                    chroma[*c] += m * m;
                }
            }
            let norm = chroma.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                chroma.iter_mut().for_each(|v| *v /= norm);
            }
            chroma
        })
        .collect();
    Ok(TimeSeries::from_rows("chroma_stft", &rows, 12, hop, w.sample_rate()))
}

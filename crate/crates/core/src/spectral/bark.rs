//! Bark critical-band spectrogram.

use super::stft::{stft_magnitude, Spectrogram};
use crate::audio::{Waveform, WindowKind};
use crate::error::Result;

/// Zwicker critical-band edges in Hz (24 bands).
pub const ZWICKER_EDGES: [f64; 25] = [
    20.0, 100.0, 200.0, 300.0, 400.0, 510.0, 630.0, 770.0, 920.0, 1080.0, 1270.0, 1480.0, 1720.0,
    2000.0, 2320.0, 2700.0, 3150.0, 3700.0, 4400.0, 5300.0, 6400.0, 7700.0, 9500.0, 12000.0, 15500.0,
];

/// Number of complete Bark bands below the Nyquist frequency.
pub fn usable_bark_bands(sample_rate: u32) -> usize {
    let nyquist = sample_rate as f64 / 2.0;
    ZWICKER_EDGES.windows(2).filter(|e| e[1] <= nyquist).count()
}

/// STFT power summed into Bark critical bands `[lo, hi)`.
///
/// Bands whose upper edge exceeds Nyquist are dropped. The returned
/// `bin_frequencies` hold each band's lower edge.
pub fn bark_spectrogram(w: &Waveform, n_fft: usize, hop: usize) -> Result<Spectrogram> {
    let mag = stft_magnitude(w, n_fft, hop, WindowKind::Hann)?;
    let n_bands = usable_bark_bands(w.sample_rate());
    let band_of_bin: Vec<Option<usize>> = mag
        .bin_frequencies()
        .iter()
        .map(|&f| (0..n_bands).find(|&b| ZWICKER_EDGES[b] <= f && f < ZWICKER_EDGES[b + 1]))
        .collect();
    let mut values = Vec::with_capacity(mag.n_frames() * n_bands);
    for frame in mag.frames() {
        let mut bands = vec![0.0; n_bands];
        for (m, band) in frame.iter().zip(&band_of_bin) {
            if let Some(b) = band {
                bands[*b] += m * m;
            }
        }
        values.extend(bands);
    }
    Ok(Spectrogram::new(
        values,
        mag.n_frames(),
        ZWICKER_EDGES[..n_bands].to_vec(),
        hop,
        w.sample_rate(),
    ))
}

//! Time-frequency representations and spectral shape descriptors.

pub mod bark;
pub mod chroma;
pub mod cwt;
pub mod descriptors;
pub mod mel;
pub mod stft;

pub use bark::{bark_spectrogram, usable_bark_bands, ZWICKER_EDGES};
pub use chroma::chromagram_stft;
pub use cwt::{default_widths, morlet_cwt};
pub use descriptors::{descriptor, spectral_descriptors, SpectralDescriptor, SpectralDescriptorSeries};
pub use mel::{log_mel_spectrogram, mfcc, MelFilterbank, MfccParams};
pub use stft::{stft_magnitude, Spectrogram};

/// Floor applied before every logarithm.
pub const EPSILON: f64 = 1e-10;

/// FFT size used for descriptor computation (32 ms at 16 kHz).
pub const DEFAULT_N_FFT: usize = 512;
/// Hop used for descriptor computation (10 ms at 16 kHz).
pub const DEFAULT_HOP: usize = 160;

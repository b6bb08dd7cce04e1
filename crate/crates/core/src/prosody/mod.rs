//! Fundamental frequency and classical speech measures.

pub mod energy;
pub mod loudness;
pub mod pitch;

pub use energy::{
    crest_factor, intensity, intensity_sd, log_energy, rms, sliding_log_energy, sliding_zcr, zero_crossings,
    ZeroCrossings,
};
pub use loudness::{k_weight, loudness, LoudnessResult};
pub use pitch::{f0_statistics, track_f0, F0Contour, F0Statistics, PitchParams};

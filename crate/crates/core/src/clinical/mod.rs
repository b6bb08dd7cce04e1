//! Voice-quality measures: perturbation, entropy, fractal scaling, HNR,
//! linear prediction and formants.

pub mod amplitude;
pub mod dfa;
pub mod formants;
pub mod hnr;
pub mod lpc;
pub mod periods;
pub mod perturbation;
pub mod ppe;

pub use amplitude::{amplitude_entropy, amplitude_stats, sliding_kurtosis, AmplitudeStats};
pub use dfa::{dfa, dfa_with_boxes};
pub use formants::{formants, FormantSet};
pub use hnr::hnr;
pub use lpc::{lpc, lsf, LpcModel};
pub use periods::{extract_periods, PeriodSequence};
pub use perturbation::{jitters, shimmers, JitterSet, ShimmerSet};
pub use ppe::pitch_period_entropy;

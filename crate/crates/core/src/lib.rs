//! Speech feature extraction for clinical voice and speech analysis.
//!
//! Audio is loaded into a [`Waveform`], passed through feature components
//! (spectral, prosodic, clinical) that produce either frame-level
//! [`TimeSeries`] or scalars, reduced by [`stats`] functionals, and
//! assembled into a per-file feature matrix by [`pipeline`].

pub mod audio;
pub mod clinical;
pub mod error;
pub mod pipeline;
pub mod prosody;
pub mod series;
pub mod spectral;
pub mod stats;

pub use audio::{frame_signal, load_audio, resample, FrameSequence, FrameSpec, Waveform, WindowKind};
pub use error::{Error, Result};
pub use series::TimeSeries;
pub use stats::{apply_statistics, Statistic, StatisticSet};

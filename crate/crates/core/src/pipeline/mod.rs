//! Configuration-driven batch extraction into CSV feature matrices.

pub mod components;
pub mod config;
pub mod extract;
pub mod matrix;
pub mod spearman;

pub use components::{lookup, registry, ComponentInfo, Layout};
pub use config::{parse_config, parse_config_str, ComponentSpec, FeatureConfig, DEFAULT_CONFIG};
pub use extract::{
    column_names, extract_directory, extract_file, extract_waveform, find_audio_files, Extraction, FileRow, Warning,
};
pub use matrix::{impute_column_means, read_csv, write_csv, write_series_csv, FeatureMatrix, ImputationReport};
pub use spearman::spearman_rho;

//! Per-file and per-directory feature extraction.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::components::{lookup, Context, Layout, Output};
use super::config::FeatureConfig;
use super::matrix::FeatureMatrix;
use crate::audio::{load_audio, Waveform};
use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::stats::apply_statistics;

pub const AUDIO_EXTENSIONS: [&str; 2] = ["wav", "flac"];

/// Component name used for warnings raised while reading the file itself.
pub const DECODE_COMPONENT: &str = "audio";

/// One failure event: a component that could not be computed for a file.
#[derive(Debug, Clone, PartialEq)]
pub struct Warning {
    pub file: String,
    pub component: String,
    pub kind: String,
    pub message: String,
}

impl fmt::Display for Warning {
    /// Tab-separated: file, component, error kind, message.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clean = |s: &str| s.replace(['\t', '\n', '\r'], " ");
        write!(
            f,
            "{}\t{}\t{}\t{}",
            clean(&self.file),
            clean(&self.component),
            self.kind,
            clean(&self.message)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FileRow {
    pub id: String,
    pub cells: Vec<Option<f64>>,
    /// Raw series of time-series components, when statistics are disabled.
    pub series: Vec<TimeSeries>,
    pub warnings: Vec<Warning>,
}

/// Column names produced by `config`, in emission order.
pub fn column_names(config: &FeatureConfig) -> Vec<String> {
    let mut names = Vec::new();
    for spec in &config.components {
        match lookup(&spec.name).expect("validated config").layout(spec) {
            Layout::Series { dims } => {
                names.extend(crate::stats::feature_names(&spec.name, dims, &config.statistics));
            }
            Layout::Scalars(n) => names.extend(n),
        }
    }
    names
}

fn cell_count(config: &FeatureConfig, layout: &Layout) -> usize {
    match layout {
        Layout::Series { dims } => dims * config.statistics.len(),
        Layout::Scalars(n) => n.len(),
    }
}

/// Evaluates every configured component on an in-memory waveform.
pub fn extract_waveform(w: Waveform, id: &str, config: &FeatureConfig) -> FileRow {
    let ctx = Context::new(w);
    let mut row = FileRow {
        id: id.to_string(),
        cells: Vec::new(),
        series: Vec::new(),
        warnings: Vec::new(),
    };
    for spec in &config.components {
        let info = lookup(&spec.name).expect("validated config");
        let layout = info.layout(spec);
        let width = cell_count(config, &layout);
        match info.compute(spec, &ctx) {
            Ok(Output::Series(t)) => {
                if config.passthrough() {
                    row.series.push(t);
                } else {
                    row.cells.extend(apply_statistics(&t, &config.statistics).values);
                }
            }
            Ok(Output::Scalars(v)) => row.cells.extend(v),
            Err(f) => {
                log::debug!("{id}: {} failed: {f}", spec.name);
                row.warnings.push(Warning {
                    file: id.to_string(),
                    component: spec.name.clone(),
                    kind: f.kind.to_string(),
                    message: f.message,
                });
                row.cells.extend(std::iter::repeat_n(None, width));
            }
        }
    }
    row
}

fn extract_as(path: &Path, id: &str, config: &FeatureConfig) -> FileRow {
    match load_audio(path, config.sample_rate) {
        Ok(w) => extract_waveform(w, id, config),
        Err(e) => FileRow {
            id: id.to_string(),
            cells: vec![None; column_names(config).len()],
            series: Vec::new(),
            warnings: vec![Warning {
                file: id.to_string(),
                component: DECODE_COMPONENT.to_string(),
                kind: e.kind().to_string(),
                message: e.to_string(),
            }],
        },
    }
}

/// Extracts one file. A file that cannot be decoded yields an all-missing
/// row and a warning rather than an error.
pub fn extract_file(path: impl AsRef<Path>, config: &FeatureConfig) -> FileRow {
    let path = path.as_ref();
    extract_as(path, &path.to_string_lossy(), config)
}

fn is_audio(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| AUDIO_EXTENSIONS.iter().any(|a| e.eq_ignore_ascii_case(a)))
}

/// Audio files under `dir`, as (relative id, path) sorted by id. Ids use
/// `/` separators on every platform.
pub fn find_audio_files(dir: impl AsRef<Path>) -> Result<Vec<(String, PathBuf)>> {
    let dir = dir.as_ref();
    if !dir.is_dir() {
        return Err(Error::FileNotFound(dir.to_path_buf()));
    }
    let mut files = Vec::new();
    for entry in walkdir::WalkDir::new(dir).follow_links(true) {
        let entry = entry.map_err(|e| Error::Io(e.into()))?;
        if entry.file_type().is_file() && is_audio(entry.path()) {
            let rel = entry.path().strip_prefix(dir).expect("walked under dir");
            let id = rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/");
            files.push((id, entry.path().to_path_buf()));
        }
    }
    files.sort();
    Ok(files)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub matrix: FeatureMatrix,
    pub warnings: Vec<Warning>,
    /// Raw series per row id, in row order; empty unless statistics are disabled.
    pub series: Vec<(String, Vec<TimeSeries>)>,
}

/// Extracts every audio file under `dir` on `n_jobs` workers. Rows are in
/// relative-path order whatever the worker count.
pub fn extract_directory(dir: impl AsRef<Path>, config: &FeatureConfig, n_jobs: usize) -> Result<Extraction> {
    let dir = dir.as_ref();
    let files = find_audio_files(dir)?;
    if files.is_empty() {
        return Err(Error::NoAudioFound(dir.to_path_buf()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n_jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<FileRow> = pool.install(|| {
        files
            .par_iter()
            .map(|(id, path)| extract_as(path, id, config))
            .collect()
    });

    let mut matrix = FeatureMatrix::new(column_names(config));
    let mut warnings = Vec::new();
    let mut series = Vec::new();
    for row in rows {
        warnings.extend(row.warnings);
        if config.passthrough() {
            series.push((row.id.clone(), row.series));
        }
        matrix.push_row(row.id, row.cells);
    }
    Ok(Extraction {
        matrix,
        warnings,
        series,
    })
}

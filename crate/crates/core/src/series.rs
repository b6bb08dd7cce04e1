//! Frame-level time series produced by components.

/// A named, uniformly sampled sequence of frame values.
///
/// Values are stored row-major (`frames × dims`). A 1-D series has
/// `dims == 1`. Missing frame values (unvoiced F0, silent crest factor,
/// unresolved formants) are stored as `NaN` and skipped by the
/// statistics layer.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    name: String,
    values: Vec<f64>,
    dims: usize,
    hop_length: usize,
    sample_rate: u32,
}

impl TimeSeries {
    pub fn new_1d(name: impl Into<String>, values: Vec<f64>, hop_length: usize, sample_rate: u32) -> Self {
        TimeSeries {
            name: name.into(),
            values,
            dims: 1,
            hop_length,
            sample_rate,
        }
    }

    /// Builds a 2-D series from per-frame rows. All rows must share a length.
    pub fn from_rows(
        name: impl Into<String>,
        rows: &[Vec<f64>],
        dims: usize,
        hop_length: usize,
        sample_rate: u32,
    ) -> Self {
        assert!(dims > 0, "a series needs at least one dimension");
        let mut values = Vec::with_capacity(rows.len() * dims);
        for row in rows {
            assert_eq!(row.len(), dims, "ragged time series rows");
            values.extend_from_slice(row);
        }
        TimeSeries {
            name: name.into(),
            values,
            dims,
            hop_length,
            sample_rate,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Number of frames.
    pub fn len(&self) -> usize {
        self.values.len() / self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
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

    pub fn row(&self, frame: usize) -> &[f64] {
        &self.values[frame * self.dims..(frame + 1) * self.dims]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dims)
    }

    /// The values of dimension `k` across all frames.
    pub fn column(&self, k: usize) -> Vec<f64> {
        assert!(k < self.dims);
        self.rows().map(|r| r[k]).collect()
    }

    /// True when every value is missing (or the series is empty).
    pub fn all_missing(&self) -> bool {
        self.values.iter().all(|v| v.is_nan())
    }
}

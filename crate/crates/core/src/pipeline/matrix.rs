//! Feature matrices, mean imputation and CSV serialization.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Rows are input files, columns are named features, cells may be missing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureMatrix {
    pub row_ids: Vec<String>,
    pub column_names: Vec<String>,
    pub cells: Vec<Vec<Option<f64>>>,
}

impl FeatureMatrix {
    pub fn new(column_names: Vec<String>) -> Self {
        FeatureMatrix {
            column_names,
            ..Default::default()
        }
    }

    pub fn push_row(&mut self, id: impl Into<String>, cells: Vec<Option<f64>>) {
        assert_eq!(cells.len(), self.column_names.len(), "row width must match the header");
        self.row_ids.push(id.into());
        self.cells.push(cells);
    }

    pub fn n_rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn n_cols(&self) -> usize {
        self.column_names.len()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.column_names.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.column_index(name)?;
        Some(self.cells.iter().map(|r| r[j]).collect())
    }

    pub fn missing_count(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_none()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ImputationReport {
    pub filled_cells: usize,
    /// Columns with no observed value, filled with 0.
    pub all_missing_columns: Vec<String>,
}

/// Replaces each missing cell by the mean of its column's observed cells.
pub fn impute_column_means(m: &FeatureMatrix) -> (FeatureMatrix, ImputationReport) {
    let mut out = m.clone();
    let mut report = ImputationReport::default();
    for (j, name) in m.column_names.iter().enumerate() {
        let observed: Vec<f64> = m.cells.iter().filter_map(|r| r[j]).collect();
        let fill = if observed.is_empty() {
            report.all_missing_columns.push(name.clone());
            0.0
        } else {
            observed.iter().sum::<f64>() / observed.len() as f64
        };
        for row in &mut out.cells {
            if row[j].is_none() {
                row[j] = Some(fill);
                report.filled_cells += 1;
            }
        }
    }
    (out, report)
}

/// 17 significant digits: enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn format_cell(c: Option<f64>) -> String {
    c.map(format_float).unwrap_or_default()
}

pub fn write_csv_to<W: Write>(m: &FeatureMatrix, w: W) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(w);
    wr.write_record(std::iter::once("file").chain(m.column_names.iter().map(String::as_str)))?;
    for (id, row) in m.row_ids.iter().zip(&m.cells) {
        wr.write_record(std::iter::once(id.clone()).chain(row.iter().map(|&c| format_cell(c))))?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_csv(m: &FeatureMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_csv_to(m, std::fs::File::create(path)?)
}

pub fn read_csv_from<R: Read>(r: R) -> Result<FeatureMatrix> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let header = rd.headers()?.clone();
    if header.get(0) != Some("file") {
        return Err(Error::Decode("feature CSV must start with a `file` column".into()));
    }
    let mut m = FeatureMatrix::new(header.iter().skip(1).map(str::to_string).collect());
    for record in rd.records() {
        let record = record?;
        let cells = record
            .iter()
            .skip(1)
            .map(|s| {
                if s.is_empty() {
                    Ok(None)
                } else {
                    s.trim()
                        .parse::<f64>()
                        .map(Some)
                        .map_err(|_| Error::Decode(format!("not a number: `{s}`")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        m.push_row(record.get(0).unwrap_or_default(), cells);
    }
    Ok(m)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<FeatureMatrix> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    read_csv_from(std::fs::File::open(path)?)
}

/// Frame-level CSV: `frame`, `time_s`, then one column per dimension.
pub fn write_series_csv(t: &TimeSeries, path: impl AsRef<Path>) -> Result<()> {
    let mut wr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_path(path)?;
    let dims: Vec<String> = if t.dims() == 1 {
        vec![t.name().to_string()]
    } else {
        (0..t.dims()).map(|k| format!("{}.{k}", t.name())).collect()
    };
    wr.write_record(["frame".to_string(), "time_s".to_string()].into_iter().chain(dims))?;
    let step = t.hop_length() as f64 / t.sample_rate() as f64;
    for (i, row) in t.rows().enumerate() {
        let lead = [i.to_string(), format_float(i as f64 * step)];
        let cells = row.iter().map(|&v| format_cell((!v.is_nan()).then_some(v)));
        wr.write_record(lead.into_iter().chain(cells))?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_column(v: &[Option<f64>]) -> FeatureMatrix {
        let mut m = FeatureMatrix::new(vec!["x".into()]);
        for (i, &c) in v.iter().enumerate() {
            m.push_row(format!("f{i}.wav"), vec![c]);
        }
        m
    }

    #[test]
    fn imputes_mean_of_observed() {
        let (m, r) = impute_column_means(&one_column(&[Some(1.0), None, Some(3.0)]));
        assert_eq!(m.column("x").unwrap(), vec![Some(1.0), Some(2.0), Some(3.0)]);
        assert_eq!(r.filled_cells, 1);
        assert!(r.all_missing_columns.is_empty());
    }

    #[test]
    fn complete_column_unchanged() {
        let m = one_column(&[Some(1.0), Some(5.0)]);
        assert_eq!(impute_column_means(&m).0, m);
    }

    #[test]
    fn all_missing_column_zero_and_reported() {
        let (m, r) = impute_column_means(&one_column(&[None, None]));
        assert_eq!(m.column("x").unwrap(), vec![Some(0.0), Some(0.0)]);
        assert_eq!(r.all_missing_columns, vec!["x".to_string()]);
    }

    #[test]
    fn two_by_two_is_three_lines() {
        let mut m = FeatureMatrix::new(vec!["a".into(), "b".into()]);
        m.push_row("one.wav", vec![Some(1.0), None]);
        m.push_row("two.wav", vec![Some(0.1), Some(-2.5)]);
        let mut buf = Vec::new();
        write_csv_to(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("file,a,b\r\n"));
        assert!(text.contains("one.wav,1.0000000000000000e0,\r\n"));
        let back = read_csv_from(text.as_bytes()).unwrap();
        assert_eq!(back.cells[1][0], Some(0.1));
        assert_eq!(back, m);
    }

    #[test]
    fn comma_in_name_is_quoted() {
        let mut m = FeatureMatrix::new(vec!["a,b".into()]);
        m.push_row("x.wav", vec![Some(1.0)]);
        let mut buf = Vec::new();
        write_csv_to(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("file,\"a,b\"\r\n"));
        assert_eq!(read_csv_from(text.as_bytes()).unwrap(), m);
    }

    fn cell() -> impl Strategy<Value = Option<f64>> {
        prop_oneof![
            1 => Just(None),
            4 => any::<f64>().prop_filter("finite", |v| v.is_finite()).prop_map(Some),
        ]
    }

    proptest! {
        #[test]
        fn csv_round_trip(rows in prop::collection::vec(prop::collection::vec(cell(), 3), 0..20)) {
            let mut m = FeatureMatrix::new(vec!["a".into(), "b,c".into(), "d \"q\"".into()]);
            for (i, r) in rows.into_iter().enumerate() {
                m.push_row(format!("dir/file {i}.wav"), r);
            }
            let mut buf = Vec::new();
            write_csv_to(&m, &mut buf).unwrap();
            prop_assert_eq!(read_csv_from(buf.as_slice()).unwrap(), m);
        }

        #[test]
        fn imputation_idempotent(rows in prop::collection::vec(prop::collection::vec(cell(), 3), 1..20)) {
            let mut m = FeatureMatrix::new(vec!["a".into(), "b".into(), "c".into()]);
            for (i, r) in rows.into_iter().enumerate() {
                m.push_row(format!("{i}"), r);
            }
            let (once, _) = impute_column_means(&m);
            let (twice, report) = impute_column_means(&once);
            prop_assert_eq!(once.missing_count(), 0);
            prop_assert_eq!(report.filled_cells, 0);
            prop_assert_eq!(twice, once);
        }
    }
}

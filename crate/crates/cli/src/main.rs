use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use speechfeat::pipeline::{
    extract_directory, impute_column_means, parse_config, read_csv, registry, spearman_rho, write_csv,
    write_series_csv, Extraction, Layout,
};
use speechfeat::pipeline::{ComponentSpec, FeatureMatrix};
use speechfeat::Error;

#[derive(Parser)]
#[command(name = "speechfeat", version, about = "Clinical speech feature extraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract features from every .wav/.flac file under a directory.
    Extract {
        /// Input directory, scanned recursively.
        #[arg(short, long)]
        input: PathBuf,
        /// Output CSV.
        #[arg(short, long)]
        output: PathBuf,
        /// Feature configuration (YAML).
        #[arg(short = 'F', long = "config")]
        config: PathBuf,
        /// Worker count; overrides the config file.
        #[arg(short, long)]
        jobs: Option<usize>,
        /// Replace missing cells with column means.
        #[arg(long)]
        impute: bool,
        /// Write warnings here instead of stderr.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Spearman correlation between two CSV columns, matched by file.
    Compare {
        /// First column, as COLUMN@FILE.csv
        #[arg(short)]
        a: String,
        /// Second column, as COLUMN@FILE.csv
        #[arg(short)]
        b: String,
    },
    /// List available components and their parameters.
    Components,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Extract {
            input,
            output,
            config,
            jobs,
            impute,
            log,
        } => extract(&input, &output, &config, jobs, impute, log.as_deref()),
        Command::Compare { a, b } => compare(&a, &b),
        Command::Components => {
            list_components();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NoAudioFound(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn extract(
    input: &Path,
    output: &Path,
    config_path: &Path,
    jobs: Option<usize>,
    impute: bool,
    log_path: Option<&Path>,
) -> speechfeat::Result<()> {
    let config = parse_config(config_path)?;
    let n_jobs = jobs.or(config.n_jobs).unwrap_or_else(default_jobs);
    if n_jobs == 0 {
        return Err(Error::InvalidParameter("--jobs must be positive".into()));
    }
    let Extraction {
        mut matrix,
        warnings,
        series,
    } = extract_directory(input, &config, n_jobs)?;

    let mut log: Box<dyn Write> = match log_path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stderr()),
    };
    for w in &warnings {
        writeln!(log, "{w}")?;
    }
    if impute {
        let (filled, report) = impute_column_means(&matrix);
        for column in &report.all_missing_columns {
            writeln!(log, "*\t{column}\tAllMissingColumn\tno observed values, filled with 0")?;
        }
        matrix = filled;
    }
    log.flush()?;
    write_csv(&matrix, output)?;

    if series.iter().any(|(_, s)| !s.is_empty()) {
        let dir = series_dir(output);
        for (id, list) in &series {
            for t in list {
                let path = dir.join(format!("{id}.{}.csv", t.name()));
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent)?;
                }
                write_series_csv(t, &path)?;
            }
        }
        eprintln!("wrote frame-level series to {}", dir.display());
    }
    eprintln!(
        "{} files, {} features, {} warnings",
        matrix.n_rows(),
        matrix.n_cols(),
        warnings.len()
    );
    Ok(())
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// `out.csv` → `out_series/`.
fn series_dir(output: &Path) -> PathBuf {
    let stem = output.file_stem().map_or_else(|| "features".into(), |s| s.to_string_lossy());
    output.with_file_name(format!("{stem}_series"))
}

fn column_ref(spec: &str) -> speechfeat::Result<(FeatureMatrix, usize)> {
    let (column, path) = spec
        .split_once('@')
        .ok_or_else(|| Error::InvalidParameter(format!("expected COLUMN@FILE, got `{spec}`")))?;
    let m = read_csv(path)?;
    let j = m
        .column_index(column)
        .ok_or_else(|| Error::InvalidParameter(format!("no column `{column}` in {path}")))?;
    Ok((m, j))
}

fn compare(a: &str, b: &str) -> speechfeat::Result<()> {
    let (ma, ja) = column_ref(a)?;
    let (mb, jb) = column_ref(b)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (id, row) in ma.row_ids.iter().zip(&ma.cells) {
        let Some(k) = mb.row_ids.iter().position(|r| r == id) else {
            continue;
        };
        if let (Some(x), Some(y)) = (row[ja], mb.cells[k][jb]) {
            xs.push(x);
            ys.push(y);
        }
    }
    let rho = spearman_rho(&xs, &ys)?;
    eprintln!("{} paired files", xs.len());
    println!("{rho}");
    Ok(())
}

fn list_components() {
    for info in registry() {
        let kind = match info.layout(&ComponentSpec::new(info.name)) {
            Layout::Series { .. } => "series",
            Layout::Scalars(_) => "scalar",
        };
        let params: Vec<String> = info.params.iter().map(|p| format!("{}={}", p.name, p.default)).collect();
        println!("{:<28} {:<7} {}  [{}]", info.name, kind, info.summary, params.join(", "));
    }
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("unsupported audio format: {0}")]
    UnsupportedFormat(String),
    #[error("failed to decode audio: {0}")]
    Decode(String),
    #[error("audio contains no samples")]
    EmptyAudio,
    #[error("signal too short: need at least {needed} samples, got {got}")]
    SignalTooShort { needed: usize, got: usize },
    #[error("signal too short for loudness measurement (need 400 ms)")]
    TooShortForLoudness,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid frequency band: fmin {fmin} Hz, fmax {fmax} Hz, nyquist {nyquist} Hz")]
    InvalidBand { fmin: f64, fmax: f64, nyquist: f64 },
    #[error("no voiced frames")]
    NoVoicedFrames,
    #[error("insufficient voicing: {0}")]
    InsufficientVoicing(String),
    #[error("too few glottal periods: need {needed}, got {got}")]
    TooFewPeriods { needed: usize, got: usize },
    #[error("degenerate signal: {0}")]
    DegenerateSignal(String),
    #[error("too few resolved formants")]
    TooFewResolvedFormants,
    #[error("config syntax error at line {line}, column {column}: {message}")]
    ConfigSyntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
    #[error("bad parameter `{parameter}` for component `{component}`: {reason}")]
    BadParameter {
        component: String,
        parameter: String,
        reason: String,
    },
    #[error("no audio files found under {0}")]
    NoAudioFound(PathBuf),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable identifier used in the structured warning log.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FileNotFound(_) => "FileNotFound",
            Error::UnsupportedFormat(_) => "UnsupportedFormat",
            Error::Decode(_) => "DecodeFailure",
            Error::EmptyAudio => "EmptyAudio",
            Error::SignalTooShort { .. } => "SignalTooShort",
            Error::TooShortForLoudness => "TooShortForLoudness",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::InvalidBand { .. } => "InvalidBand",
            Error::NoVoicedFrames => "NoVoicedFrames",
            Error::InsufficientVoicing(_) => "InsufficientVoicing",
            Error::TooFewPeriods { .. } => "TooFewPeriods",
            Error::DegenerateSignal(_) => "DegenerateSignal",
            Error::TooFewResolvedFormants => "TooFewResolvedFormants",
            Error::ConfigSyntax { .. } => "ConfigSyntaxError",
            Error::UnknownComponent(_) => "UnknownComponent",
            Error::UnknownStatistic(_) => "UnknownStatistic",
            Error::BadParameter { .. } => "BadParameter",
            Error::NoAudioFound(_) => "NoAudioFound",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::Io(_) => "IoError",
            Error::Csv(_) => "CsvError",
        }
    }
}

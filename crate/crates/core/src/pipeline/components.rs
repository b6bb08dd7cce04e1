//! The component registry: every feature the pipeline can extract, with its
//! parameter schema, output layout and evaluation.
//!
//! Time-series components produce one [`TimeSeries`] per file and are
//! reduced by the configured statistics. Scalar components produce a fixed
//! list of named cells. Column layout depends only on the configuration,
//! never on the audio, so every row of a feature matrix lines up.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::rc::Rc;

use super::config::{bad, ComponentSpec};
use crate::audio::{FrameSpec, Waveform, WindowKind};
use crate::clinical::{self, FormantSet, PeriodSequence};
use crate::error::{Error, Result};
use crate::prosody::{self, F0Contour, PitchParams};
use crate::series::TimeSeries;
use crate::spectral::{self, MfccParams, SpectralDescriptor, SpectralDescriptorSeries, ZWICKER_EDGES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    /// Integer no smaller than `min`.
    Count { min: usize },
    /// Integer power of two, at least 2.
    PowerOfTwo,
    Positive,
    NonNegative,
}

impl ParamKind {
    pub fn check(self, v: f64) -> std::result::Result<(), String> {
        let ok = match self {
            ParamKind::Count { min } => v.fract() == 0.0 && v >= min as f64,
            ParamKind::PowerOfTwo => v.fract() == 0.0 && v >= 2.0 && (v as u64).is_power_of_two(),
            ParamKind::Positive => v.is_finite() && v > 0.0,
            ParamKind::NonNegative => v.is_finite() && v >= 0.0,
        };
        if ok {
            return Ok(());
        }
        Err(match self {
            ParamKind::Count { min } => format!("expected an integer >= {min}, got {v}"),
            ParamKind::PowerOfTwo => format!("expected a power of two >= 2, got {v}"),
            ParamKind::Positive => format!("expected a positive number, got {v}"),
            ParamKind::NonNegative => format!("expected a non-negative number, got {v}"),
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: f64,
}

const fn param(name: &'static str, kind: ParamKind, default: f64) -> ParamSpec {
    ParamSpec { name, kind, default }
}

const FRAME: [ParamSpec; 2] = [
    param("frame_length", ParamKind::Positive, 0.025),
    param("hop_length", ParamKind::Positive, 0.010),
];
const STFT: [ParamSpec; 2] = [
    param("n_fft", ParamKind::PowerOfTwo, spectral::DEFAULT_N_FFT as f64),
    param("hop", ParamKind::Count { min: 1 }, spectral::DEFAULT_HOP as f64),
];
const PITCH: [ParamSpec; 2] = [
    param("f0_min", ParamKind::Positive, 60.0),
    param("f0_max", ParamKind::Positive, 500.0),
];
const MEL: [ParamSpec; 5] = [
    STFT[0],
    STFT[1],
    param("n_mels", ParamKind::Count { min: 1 }, 40.0),
    param("fmin", ParamKind::NonNegative, 0.0),
    // 0 stands for the Nyquist frequency.
    param("fmax", ParamKind::NonNegative, 0.0),
];
const MFCC: [ParamSpec; 6] = [param("n_mfcc", ParamKind::Count { min: 1 }, 13.0), MEL[0], MEL[1], MEL[2], MEL[3], MEL[4]];
const CWT: [ParamSpec; 3] = [
    param("n_widths", ParamKind::Count { min: 1 }, 32.0),
    param("min_width", ParamKind::Positive, 1.0),
    param("max_width", ParamKind::Positive, 256.0),
];
const LPC: [ParamSpec; 1] = [param("order", ParamKind::Count { min: 1 }, 12.0)];

/// Columns a component contributes, known before any audio is read.
#[derive(Debug, Clone, PartialEq)]
pub enum Layout {
    Series { dims: usize },
    Scalars(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Series(TimeSeries),
    Scalars(Vec<Option<f64>>),
}

/// A component error, detached from [`Error`] so it can be cached and shared.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

type Computed = std::result::Result<Output, Failure>;
type Cache<K, V> = RefCell<HashMap<K, std::result::Result<Rc<V>, Failure>>>;

/// Per-file evaluation state. Intermediate results shared by several
/// components (F0 contour, glottal cycles, spectral descriptors, formants)
/// are computed once per parameter set.
pub struct Context {
    waveform: Waveform,
    contours: Cache<(u64, u64), F0Contour>,
    periods: Cache<(u64, u64), PeriodSequence>,
    descriptors: Cache<(usize, usize), Vec<SpectralDescriptorSeries>>,
    formants: Cache<(u64, u64), FormantSet>,
}

fn memo<K: Hash + Eq, V>(
    cache: &Cache<K, V>,
    key: K,
    f: impl FnOnce() -> Result<V>,
) -> std::result::Result<Rc<V>, Failure> {
    if let Some(hit) = cache.borrow().get(&key) {
        return hit.clone();
    }
    let value = f().map(Rc::new).map_err(Failure::from);
    cache.borrow_mut().insert(key, value.clone());
    value
}

impl Context {
    pub fn new(waveform: Waveform) -> Self {
        Context {
            waveform,
            contours: RefCell::default(),
            periods: RefCell::default(),
            descriptors: RefCell::default(),
            formants: RefCell::default(),
        }
    }

    pub fn waveform(&self) -> &Waveform {
        &self.waveform
    }

    fn contour(&self, spec: &ComponentSpec) -> std::result::Result<Rc<F0Contour>, Failure> {
        let params = pitch_params(spec);
        memo(&self.contours, (params.f0_min.to_bits(), params.f0_max.to_bits()), || {
            prosody::track_f0(&self.waveform, &params)
        })
    }

    fn periods(&self, spec: &ComponentSpec) -> std::result::Result<Rc<PeriodSequence>, Failure> {
        let contour = self.contour(spec)?;
        let params = pitch_params(spec);
        memo(&self.periods, (params.f0_min.to_bits(), params.f0_max.to_bits()), || {
            clinical::extract_periods(&self.waveform, &contour)
        })
    }

    fn descriptors(&self, spec: &ComponentSpec) -> std::result::Result<Rc<Vec<SpectralDescriptorSeries>>, Failure> {
        let (n_fft, hop) = stft_params(spec);
        memo(&self.descriptors, (n_fft, hop), || {
            let mag = spectral::stft_magnitude(&self.waveform, n_fft, hop, WindowKind::Hann)?;
            Ok(spectral::spectral_descriptors(&mag))
        })
    }

    fn formants(&self, spec: &ComponentSpec) -> std::result::Result<Rc<FormantSet>, Failure> {
        let frame = frame_spec(spec);
        memo(&self.formants, (frame.length_s.to_bits(), frame.hop_s.to_bits()), || {
            clinical::formants(&self.waveform, &frame)
        })
    }
}

pub struct ComponentInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    pub(crate) check: fn(&ComponentSpec) -> Result<()>,
    pub(crate) layout: fn(&ComponentSpec) -> Layout,
    pub(crate) compute: fn(&ComponentSpec, &Context) -> Computed,
}

impl ComponentInfo {
    pub fn layout(&self, spec: &ComponentSpec) -> Layout {
        (self.layout)(spec)
    }

    pub fn compute(&self, spec: &ComponentSpec, ctx: &Context) -> std::result::Result<Output, Failure> {
        (self.compute)(spec, ctx)
    }

    pub fn is_series(&self, spec: &ComponentSpec) -> bool {
        matches!(self.layout(spec), Layout::Series { .. })
    }
}

impl fmt::Debug for ComponentInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComponentInfo").field("name", &self.name).finish_non_exhaustive()
    }
}

fn p(spec: &ComponentSpec, key: &str) -> f64 {
    let info = lookup(&spec.name).expect("validated component");
    let default = info.params.iter().find(|p| p.name == key).map_or(0.0, |p| p.default);
    spec.param(key, default)
}

fn n(spec: &ComponentSpec, key: &str) -> usize {
    p(spec, key) as usize
}

fn frame_spec(spec: &ComponentSpec) -> FrameSpec {
    FrameSpec::new(p(spec, "frame_length"), p(spec, "hop_length"))
}

fn stft_params(spec: &ComponentSpec) -> (usize, usize) {
    (n(spec, "n_fft"), n(spec, "hop"))
}

fn pitch_params(spec: &ComponentSpec) -> PitchParams {
    PitchParams {
        f0_min: p(spec, "f0_min"),
        f0_max: p(spec, "f0_max"),
        ..PitchParams::default()
    }
}

fn mel_band(spec: &ComponentSpec, w: &Waveform) -> (f64, f64) {
    let fmax = p(spec, "fmax");
    (p(spec, "fmin"), if fmax > 0.0 { fmax } else { w.nyquist() })
}

fn no_check(_: &ComponentSpec) -> Result<()> {
    Ok(())
}

fn check_pitch(spec: &ComponentSpec) -> Result<()> {
    if p(spec, "f0_min") >= p(spec, "f0_max") {
        return Err(bad(&spec.name, "f0_min", "must be below f0_max"));
    }
    Ok(())
}

fn check_mel(spec: &ComponentSpec) -> Result<()> {
    let fmax = p(spec, "fmax");
    if fmax > 0.0 && p(spec, "fmin") >= fmax {
        return Err(bad(&spec.name, "fmin", "must be below fmax"));
    }
    Ok(())
}

fn check_mfcc(spec: &ComponentSpec) -> Result<()> {
    if n(spec, "n_mfcc") > n(spec, "n_mels") {
        return Err(bad(&spec.name, "n_mfcc", "must not exceed n_mels"));
    }
    check_mel(spec)
}

fn check_cwt(spec: &ComponentSpec) -> Result<()> {
    if p(spec, "min_width") > p(spec, "max_width") {
        return Err(bad(&spec.name, "min_width", "must not exceed max_width"));
    }
    Ok(())
}

fn series(dims: usize) -> Layout {
    Layout::Series { dims }
}

fn one_d(_: &ComponentSpec) -> Layout {
    series(1)
}

fn four_d(_: &ComponentSpec) -> Layout {
    series(4)
}

fn scalar(spec: &ComponentSpec) -> Layout {
    Layout::Scalars(vec![spec.name.clone()])
}

fn named(spec: &ComponentSpec, parts: &[&str]) -> Layout {
    Layout::Scalars(parts.iter().map(|s| format!("{}.{s}", spec.name)).collect())
}

fn indexed(spec: &ComponentSpec, count: usize) -> Layout {
    Layout::Scalars((0..count).map(|k| format!("{}.{k}", spec.name)).collect())
}

fn ok_series(t: TimeSeries, spec: &ComponentSpec) -> Computed {
    Ok(Output::Series(t.with_name(spec.name.clone())))
}

fn ok_scalars(values: impl IntoIterator<Item = f64>) -> Computed {
    Ok(Output::Scalars(values.into_iter().map(|v| v.is_finite().then_some(v)).collect()))
}

fn spectrogram_series(s: spectral::Spectrogram, spec: &ComponentSpec) -> Computed {
    let rows = s.rows();
    ok_series(
        TimeSeries::from_rows(spec.name.clone(), &rows, s.n_bins(), s.hop_length(), s.sample_rate()),
        spec,
    )
}

fn mfcc(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let w = ctx.waveform();
    let fmax = p(spec, "fmax");
    let params = MfccParams {
        n_mfcc: n(spec, "n_mfcc"),
        n_fft: n(spec, "n_fft"),
        hop: n(spec, "hop"),
        n_mels: n(spec, "n_mels"),
        fmin: p(spec, "fmin"),
        fmax: (fmax > 0.0).then_some(fmax),
    };
    ok_series(spectral::mfcc(w, &params)?, spec)
}

fn log_melspec(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let w = ctx.waveform();
    let (fmin, fmax) = mel_band(spec, w);
    let s = spectral::log_mel_spectrogram(w, n(spec, "n_fft"), n(spec, "hop"), n(spec, "n_mels"), fmin, fmax)?;
    spectrogram_series(s, spec)
}

fn magnitude_spectrum(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let (n_fft, hop) = stft_params(spec);
    spectrogram_series(spectral::stft_magnitude(ctx.waveform(), n_fft, hop, WindowKind::Hann)?, spec)
}

/// Bands above Nyquist are missing, so columns do not depend on sample rate.
fn bark(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let (n_fft, hop) = stft_params(spec);
    let s = spectral::bark_spectrogram(ctx.waveform(), n_fft, hop)?;
    let full = ZWICKER_EDGES.len() - 1;
    let rows: Vec<Vec<f64>> = s
        .frames()
        .map(|f| {
            let mut row = f.to_vec();
            row.resize(full, f64::NAN);
            row
        })
        .collect();
    ok_series(TimeSeries::from_rows(spec.name.clone(), &rows, full, hop, s.sample_rate()), spec)
}

fn chroma(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let (n_fft, hop) = stft_params(spec);
    ok_series(spectral::chromagram_stft(ctx.waveform(), n_fft, hop, 12)?, spec)
}

fn cwt_widths(spec: &ComponentSpec) -> Vec<f64> {
    spectral::cwt::log_spaced_widths(p(spec, "min_width"), p(spec, "max_width"), n(spec, "n_widths"))
}

fn morlet(spec: &ComponentSpec, ctx: &Context) -> Computed {
    ok_series(spectral::morlet_cwt(ctx.waveform(), &cwt_widths(spec))?, spec)
}

fn spectral_descriptor(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let which = SpectralDescriptor::ALL
        .into_iter()
        .find(|d| d.name() == spec.name)
        .expect("registered descriptor");
    let set = ctx.descriptors(spec)?;
    let (_, hop) = stft_params(spec);
    let values = spectral::descriptor(&set, which).to_vec();
    ok_series(TimeSeries::new_1d(spec.name.clone(), values, hop, ctx.waveform().sample_rate()), spec)
}

fn f0_contour(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let c = ctx.contour(spec)?;
    if c.voiced_count() == 0 {
        return Err(Error::NoVoicedFrames.into());
    }
    let t = TimeSeries::new_1d(spec.name.clone(), c.to_missing_unvoiced(), c.hop_length(), c.sample_rate());
    ok_series(t, spec)
}

fn f0_statistics(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let s = prosody::f0_statistics(&*ctx.contour(spec)?)?;
    ok_scalars([s.mean, s.sd])
}

fn framed(
    f: fn(&Waveform, &FrameSpec) -> Result<TimeSeries>,
) -> impl Fn(&ComponentSpec, &Context) -> Computed {
    move |spec, ctx| ok_series(f(ctx.waveform(), &frame_spec(spec))?, spec)
}

fn intensity(spec: &ComponentSpec, ctx: &Context) -> Computed {
    framed(prosody::intensity)(spec, ctx)
}

fn rms(spec: &ComponentSpec, ctx: &Context) -> Computed {
    framed(prosody::rms)(spec, ctx)
}

fn sliding_log_energy(spec: &ComponentSpec, ctx: &Context) -> Computed {
    framed(prosody::sliding_log_energy)(spec, ctx)
}

fn sliding_zcr(spec: &ComponentSpec, ctx: &Context) -> Computed {
    framed(prosody::sliding_zcr)(spec, ctx)
}

fn crest_factor(spec: &ComponentSpec, ctx: &Context) -> Computed {
    framed(prosody::crest_factor)(spec, ctx)
}

fn sliding_kurtosis(spec: &ComponentSpec, ctx: &Context) -> Computed {
    framed(clinical::sliding_kurtosis)(spec, ctx)
}

fn intensity_sd(spec: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([prosody::intensity_sd(ctx.waveform(), &frame_spec(spec))?])
}

fn log_energy(_: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([prosody::log_energy(ctx.waveform())])
}

fn zero_crossing_rate(_: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([prosody::zero_crossings(ctx.waveform()).rate])
}

fn zero_crossing_count(_: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([prosody::zero_crossings(ctx.waveform()).count as f64])
}

fn loudness(_: &ComponentSpec, ctx: &Context) -> Computed {
    let l = prosody::loudness(ctx.waveform())?;
    if !l.integrated_loudness.is_finite() {
        return Err(Error::DegenerateSignal("every loudness block is below the absolute gate".into()).into());
    }
    ok_scalars([l.integrated_loudness])
}

fn loudness_variation(_: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([prosody::loudness(ctx.waveform())?.variation()])
}

fn windowed_loudness(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let w = ctx.waveform();
    let l = prosody::loudness(w)?;
    let hop = (w.sample_rate() as f64 * 0.1).round() as usize;
    ok_series(TimeSeries::new_1d(spec.name.clone(), l.windowed_loudness, hop, w.sample_rate()), spec)
}

fn jitters(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let j = clinical::jitters(&*ctx.periods(spec)?)?;
    ok_scalars([j.local, j.local_absolute, j.rap, j.ppq5, j.ddp])
}

fn shimmers(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let s = clinical::shimmers(&*ctx.periods(spec)?)?;
    let opt = |v: Option<f64>| v.unwrap_or(f64::NAN);
    ok_scalars([s.local, s.local_db, opt(s.apq3), opt(s.apq5), opt(s.apq11)])
}

fn ppe(spec: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([clinical::pitch_period_entropy(&*ctx.contour(spec)?)?])
}

fn hnr(spec: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([clinical::hnr(ctx.waveform(), &*ctx.contour(spec)?)?])
}

fn dfa(_: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([clinical::dfa(ctx.waveform().samples())?])
}

fn lpc(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let model = clinical::lpc(ctx.waveform().samples(), n(spec, "order"))?;
    ok_scalars(model.coefficients[1..].iter().copied())
}

fn lsf(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let order = n(spec, "order");
    let model = clinical::lpc(ctx.waveform().samples(), order)?;
    let mut values = clinical::lsf(&model.coefficients);
    values.resize(order, f64::NAN);
    ok_scalars(values)
}

fn formants(spec: &ComponentSpec, ctx: &Context) -> Computed {
    let set = ctx.formants(spec)?;
    ok_scalars(set.frequencies.map(|f| f.unwrap_or(f64::NAN)))
}

fn formant_tracks(spec: &ComponentSpec, ctx: &Context) -> Computed {
    ok_series(ctx.formants(spec)?.tracks.clone(), spec)
}

fn formant_deltas(spec: &ComponentSpec, ctx: &Context) -> Computed {
    ok_series(ctx.formants(spec)?.deltas.clone(), spec)
}

fn amplitude_entropy(_: &ComponentSpec, ctx: &Context) -> Computed {
    ok_scalars([clinical::amplitude_entropy(ctx.waveform().samples())?])
}

macro_rules! component {
    ($name:expr, $summary:expr, $params:expr, $check:expr, $layout:expr, $compute:expr) => {
        ComponentInfo {
            name: $name,
            summary: $summary,
            params: &$params,
            check: $check,
            layout: $layout,
            compute: $compute,
        }
    };
}

macro_rules! descriptor_component {
    ($name:expr, $summary:expr) => {
        component!($name, $summary, STFT, no_check, one_d, spectral_descriptor)
    };
}

static REGISTRY: &[ComponentInfo] = &[
    component!("mfcc", "mel-frequency cepstral coefficients", MFCC, check_mfcc, |s| series(n(s, "n_mfcc")), mfcc),
    component!("log_melspec", "log mel spectrogram", MEL, check_mel, |s| series(n(s, "n_mels")), log_melspec),
    component!("morlet_cwt", "Morlet continuous wavelet transform, one row per sample", CWT, check_cwt, |s| series(n(s, "n_widths")), morlet),
    component!("bark_spectrogram", "power in the 24 Zwicker critical bands", STFT, no_check, |_| series(ZWICKER_EDGES.len() - 1), bark),
    component!("magnitude_spectrum", "STFT magnitude", STFT, no_check, |s| series(n(s, "n_fft") / 2 + 1), magnitude_spectrum),
    component!("chroma_stft", "12-bin chromagram from the STFT", STFT, no_check, |_| series(12), chroma),
    descriptor_component!("spectral_slope", "least-squares slope of the magnitude spectrum"),
    descriptor_component!("spectral_flux", "change of the normalised spectrum between frames"),
    descriptor_component!("spectral_entropy", "Shannon entropy of the normalised spectrum"),
    descriptor_component!("spectral_centroid", "magnitude-weighted mean frequency"),
    descriptor_component!("spectral_spread", "magnitude-weighted frequency SD"),
    descriptor_component!("spectral_skewness", "spectral third standardised moment"),
    descriptor_component!("spectral_kurtosis", "spectral fourth standardised moment"),
    descriptor_component!("spectral_flatness", "geometric over arithmetic mean of the power spectrum"),
    descriptor_component!("spectral_rolloff", "frequency below which 85% of the magnitude lies"),
    component!("f0_contour", "F0 per frame, missing where unvoiced", PITCH, check_pitch, one_d, f0_contour),
    component!("f0_statistics", "mean and SD of voiced F0", PITCH, check_pitch, |s| named(s, &["mean", "sd"]), f0_statistics),
    component!("intensity", "frame power", FRAME, no_check, one_d, intensity),
    component!("intensity_sd", "SD of frame power", FRAME, no_check, scalar, intensity_sd),
    component!("rms", "frame root mean square", FRAME, no_check, one_d, rms),
    component!("log_energy", "log mean square of the whole signal", [], no_check, scalar, log_energy),
    component!("sliding_log_energy", "frame log mean square", FRAME, no_check, one_d, sliding_log_energy),
    component!("zero_crossing_rate", "fraction of adjacent sample pairs that change sign", [], no_check, scalar, zero_crossing_rate),
    component!("zero_crossing_count", "number of sign changes", [], no_check, scalar, zero_crossing_count),
    component!("sliding_zcr", "frame zero-crossing rate", FRAME, no_check, one_d, sliding_zcr),
    component!("loudness", "gated integrated loudness (LUFS)", [], no_check, scalar, loudness),
    component!("loudness_variation", "SD of 400 ms block loudness", [], no_check, scalar, loudness_variation),
    component!("windowed_loudness", "ungated loudness of each 400 ms block", [], no_check, one_d, windowed_loudness),
    component!("crest_factor", "frame peak over RMS", FRAME, no_check, one_d, crest_factor),
    component!("jitters", "period perturbation: local, local_absolute, rap, ppq5, ddp", PITCH, check_pitch,
        |s| named(s, &["local", "local_absolute", "rap", "ppq5", "ddp"]), jitters),
    component!("shimmers", "amplitude perturbation: local, local_db, apq3, apq5, apq11", PITCH, check_pitch,
        |s| named(s, &["local", "local_db", "apq3", "apq5", "apq11"]), shimmers),
    component!("ppe", "pitch period entropy", PITCH, check_pitch, scalar, ppe),
    component!("hnr", "harmonics-to-noise ratio (dB)", PITCH, check_pitch, scalar, hnr),
    component!("dfa", "detrended fluctuation analysis exponent", [], no_check, scalar, dfa),
    component!("lpc", "linear prediction coefficients a1..ap", LPC, no_check, |s| indexed(s, n(s, "order")), lpc),
    component!("lsf", "line spectral frequencies (radians)", LPC, no_check, |s| indexed(s, n(s, "order")), lsf),
    component!("formants", "median F1-F4 (Hz)", FRAME, no_check, |s| named(s, &["f1", "f2", "f3", "f4"]), formants),
    component!("formant_tracks", "per-frame F1-F4", FRAME, no_check, four_d, formant_tracks),
    component!("formant_deltas", "first differences of the formant tracks", FRAME, no_check, four_d, formant_deltas),
    component!("amplitude_entropy", "Shannon entropy of normalised sample energy", [], no_check, scalar, amplitude_entropy),
    component!("sliding_amplitude_kurtosis", "frame excess kurtosis of samples", FRAME, no_check, one_d, sliding_kurtosis),
];

pub fn registry() -> &'static [ComponentInfo] {
    REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static ComponentInfo> {
    REGISTRY
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownComponent(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use std::f64::consts::PI;

    fn tone(freq: f64, secs: f64) -> Waveform {
        let fs = 16000;
        let x = (0..(fs as f64 * secs) as usize)
            .map(|i| 0.5 * (2.0 * PI * freq * i as f64 / fs as f64).sin())
            .collect();
        Waveform::new(x, fs).unwrap()
    }

    #[test]
    fn names_unique_and_descriptors_registered() {
        let names: HashSet<&str> = REGISTRY.iter().map(|c| c.name).collect();
        assert_eq!(names.len(), REGISTRY.len());
        for d in SpectralDescriptor::ALL {
            assert!(names.contains(d.name()));
        }
    }

    #[test]
    fn every_component_matches_its_layout() {
        let ctx = Context::new(tone(220.0, 1.0));
        for info in REGISTRY {
            let spec = ComponentSpec::new(info.name);
            let out = info.compute(&spec, &ctx).unwrap_or_else(|e| panic!("{}: {e}", info.name));
            match (info.layout(&spec), out) {
                (Layout::Series { dims }, Output::Series(t)) => {
                    assert_eq!(t.dims(), dims, "{}", info.name);
                    assert_eq!(t.name(), info.name);
                }
                (Layout::Scalars(names), Output::Scalars(v)) => assert_eq!(names.len(), v.len(), "{}", info.name),
                (l, _) => panic!("{}: output does not match {l:?}", info.name),
            }
        }
    }

    #[test]
    fn silence_fails_pitch_components() {
        let ctx = Context::new(Waveform::new(vec![0.0; 16000], 16000).unwrap());
        for name in ["f0_contour", "f0_statistics", "jitters", "ppe", "hnr"] {
            let info = lookup(name).unwrap();
            assert!(info.compute(&ComponentSpec::new(name), &ctx).is_err(), "{name}");
        }
    }

    #[test]
    fn bark_padded_to_all_bands() {
        let ctx = Context::new(tone(1000.0, 0.5));
        let Output::Series(t) = lookup("bark_spectrogram").unwrap().compute(&ComponentSpec::new("bark_spectrogram"), &ctx).unwrap() else {
            panic!()
        };
        assert_eq!(t.dims(), 24);
        assert!(t.row(0)[21..].iter().all(|v| v.is_nan()));
        assert!(t.row(0)[..21].iter().all(|v| !v.is_nan()));
    }

    #[test]
    fn param_kinds() {
        assert!(ParamKind::Count { min: 1 }.check(-1.0).is_err());
        assert!(ParamKind::Count { min: 1 }.check(3.0).is_ok());
        assert!(ParamKind::PowerOfTwo.check(500.0).is_err());
        assert!(ParamKind::PowerOfTwo.check(1024.0).is_ok());
        assert!(ParamKind::Positive.check(0.0).is_err());
        assert!(ParamKind::NonNegative.check(0.0).is_ok());
    }
}

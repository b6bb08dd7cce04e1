//! Audio decoding, resampling, framing and windowing.
//!
//! Every feature in the crate consumes a [`Waveform`]: mono `f64` samples
//! plus a sample rate. Integer PCM is scaled by `2^(bits - 1)`, so 16-bit
//! full scale maps to 32768.

use std::f64::consts::PI;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Immutable mono signal. Cloning is cheap: samples are shared.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    samples: Arc<[f64]>,
    sample_rate: u32,
}

impl Waveform {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::InvalidParameter("sample rate must be positive".into()));
        }
        if samples.is_empty() {
            return Err(Error::EmptyAudio);
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidParameter("samples must be finite".into()));
        }
        Ok(Waveform {
            samples: samples.into(),
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn nyquist(&self) -> f64 {
        self.sample_rate as f64 / 2.0
    }

    /// Returns a copy with every sample multiplied by `gain`.
    pub fn scaled(&self, gain: f64) -> Result<Waveform> {
        Waveform::new(self.samples.iter().map(|s| s * gain).collect(), self.sample_rate)
    }
}

enum Container {
    Wav,
    Flac,
}

fn sniff(path: &Path) -> Result<Container> {
    let mut magic = [0u8; 4];
    let mut file = File::open(path)?;
    let n = file.read(&mut magic)?;
    match &magic[..n] {
        b"RIFF" => Ok(Container::Wav),
        b"fLaC" => Ok(Container::Flac),
        _ => Err(Error::UnsupportedFormat(format!(
            "{} is neither RIFF/WAVE nor FLAC",
            path.display()
        ))),
    }
}

/// Averages interleaved channels into a mono buffer.
fn downmix(interleaved: &[f64], channels: usize) -> Vec<f64> {
    if channels <= 1 {
        return interleaved.to_vec();
    }
    interleaved
        .chunks_exact(channels)
        .map(|frame| frame.iter().sum::<f64>() / channels as f64)
        .collect()
}

fn map_hound(err: hound::Error) -> Error {
    match err {
        hound::Error::IoError(e) => Error::Io(e),
        hound::Error::Unsupported => Error::UnsupportedFormat("unsupported WAV encoding".into()),
        other => Error::Decode(other.to_string()),
    }
}

fn decode_wav(path: &Path) -> Result<(Vec<f64>, usize, u32)> {
    let mut reader = hound::WavReader::open(path).map_err(map_hound)?;
    let spec = reader.spec();
    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Int, bits @ (16 | 24 | 32)) => {
            let scale = (1u64 << (bits - 1)) as f64;
            reader
                .samples::<i32>()
                .map(|s| s.map(|v| v as f64 / scale))
                .collect::<std::result::Result<_, _>>()
                .map_err(map_hound)?
        }
        (hound::SampleFormat::Float, 32) => {
            let mut out = Vec::with_capacity(reader.len() as usize);
            for s in reader.samples::<f32>() {
                let v = s.map_err(map_hound)? as f64;
                if !v.is_finite() {
                    return Err(Error::Decode("non-finite float sample".into()));
                }
                out.push(v.clamp(-1.0, 1.0));
            }
            out
        }
        (format, bits) => {
            return Err(Error::UnsupportedFormat(format!(
                "WAV {format:?} with {bits} bits per sample"
            )))
        }
    };
    Ok((samples, spec.channels as usize, spec.sample_rate))
}

fn decode_flac(path: &Path) -> Result<(Vec<f64>, usize, u32)> {
    let mut reader = claxon::FlacReader::open(path).map_err(|e| Error::Decode(e.to_string()))?;
    let info = reader.streaminfo();
    let bits = info.bits_per_sample;
    if !(8..=32).contains(&bits) {
        return Err(Error::UnsupportedFormat(format!("FLAC with {bits} bits per sample")));
    }
    let scale = (1u64 << (bits - 1)) as f64;
    let samples = reader
        .samples()
        .map(|s| s.map(|v| v as f64 / scale))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Decode(e.to_string()))?;
    Ok((samples, info.channels as usize, info.sample_rate))
}

/// Decodes a PCM WAV or FLAC file into a mono waveform, optionally
/// resampling it to `target_sample_rate`.
pub fn load_audio(path: impl AsRef<Path>, target_sample_rate: Option<u32>) -> Result<Waveform> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    let (interleaved, channels, sample_rate) = match sniff(path)? {
        Container::Wav => decode_wav(path)?,
        Container::Flac => decode_flac(path)?,
    };
    if channels == 0 {
        return Err(Error::Decode("zero channels".into()));
    }
    let mono = downmix(&interleaved, channels);
    if mono.is_empty() {
        return Err(Error::EmptyAudio);
    }
    let wave = Waveform::new(mono, sample_rate)?;
    match target_sample_rate {
        Some(target) if target != sample_rate => resample(&wave, target),
        _ => Ok(wave),
    }
}

/// Half-width of the interpolation kernel, in zero crossings of the sinc.
const SINC_ZERO_CROSSINGS: f64 = 32.0;
/// Passband edge as a fraction of the lower of the two Nyquist rates.
const SINC_ROLLOFF: f64 = 0.95;

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Band-limited windowed-sinc resampling (Hann-tapered kernel).
///
/// Output length is `round(N * target / source)`.
pub fn resample(w: &Waveform, target_sample_rate: u32) -> Result<Waveform> {
    if target_sample_rate == 0 {
        return Err(Error::InvalidParameter("target sample rate must be positive".into()));
    }
    let source = w.sample_rate() as f64;
    let target = target_sample_rate as f64;
    if w.sample_rate() == target_sample_rate {
        return Ok(w.clone());
    }
    let x = w.samples();
    let ratio = target / source;
    let out_len = ((x.len() as f64) * ratio).round().max(1.0) as usize;

    // Cutoff relative to the input rate; below 1 when downsampling.
    let cutoff = ratio.min(1.0) * SINC_ROLLOFF;
    let half_width = SINC_ZERO_CROSSINGS / cutoff;

    let out = (0..out_len)
        .map(|i| {
            let t = i as f64 / ratio;
            let lo = (t - half_width).ceil().max(0.0) as usize;
            let hi = ((t + half_width).floor() as usize).min(x.len() - 1);
            let mut acc = 0.0;
            for (k, &xk) in x.iter().enumerate().take(hi + 1).skip(lo) {
                let d = t - k as f64;
                let taper = 0.5 * (1.0 + (PI * d / half_width).cos());
                acc += xk * cutoff * sinc(cutoff * d) * taper;
            }
            acc
        })
        .collect();
    Waveform::new(out, target_sample_rate)
}

/// Frame length and hop in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSpec {
    pub length_s: f64,
    pub hop_s: f64,
}

impl Default for FrameSpec {
    /// 25 ms frames with a 10 ms hop.
    fn default() -> Self {
        FrameSpec {
            length_s: 0.025,
            hop_s: 0.010,
        }
    }
}

impl FrameSpec {
    pub fn new(length_s: f64, hop_s: f64) -> Self {
        FrameSpec { length_s, hop_s }
    }

    /// Converts to `(frame_length, hop_length)` in samples.
    pub fn to_samples(&self, sample_rate: u32) -> Result<(usize, usize)> {
        if !(self.length_s > 0.0 && self.hop_s > 0.0) {
            return Err(Error::InvalidParameter(
                "frame length and hop must be positive".into(),
            ));
        }
        let fs = sample_rate as f64;
        let frame = (self.length_s * fs).round().max(1.0) as usize;
        let hop = (self.hop_s * fs).round().max(1.0) as usize;
        Ok((frame, hop))
    }
}

/// Number of full frames that fit in `n` samples.
pub fn frame_count(n: usize, frame_length: usize, hop_length: usize) -> usize {
    if n < frame_length || frame_length == 0 || hop_length == 0 {
        0
    } else {
        (n - frame_length) / hop_length + 1
    }
}

/// Contiguous, equal-length views into a signal. No trailing partial frame.
#[derive(Debug, Clone, Copy)]
pub struct FrameSequence<'a> {
    samples: &'a [f64],
    frame_length: usize,
    hop_length: usize,
    sample_rate: u32,
    count: usize,
}

impl<'a> FrameSequence<'a> {
    pub fn from_samples(
        samples: &'a [f64],
        sample_rate: u32,
        frame_length: usize,
        hop_length: usize,
    ) -> Result<Self> {
        if frame_length == 0 || hop_length == 0 {
            return Err(Error::InvalidParameter(
                "frame and hop lengths must be positive".into(),
            ));
        }
        if samples.len() < frame_length {
            return Err(Error::SignalTooShort {
                needed: frame_length,
                got: samples.len(),
            });
        }
        Ok(FrameSequence {
            samples,
            frame_length,
            hop_length,
            sample_rate,
            count: frame_count(samples.len(), frame_length, hop_length),
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn frame_length(&self) -> usize {
        self.frame_length
    }

    pub fn hop_length(&self) -> usize {
        self.hop_length
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    /// Sample offset of frame `i`.
    pub fn start(&self, i: usize) -> usize {
        i * self.hop_length
    }

    pub fn frame(&self, i: usize) -> &'a [f64] {
        let s = self.start(i);
        &self.samples[s..s + self.frame_length]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &'a [f64]> + '_ {
        (0..self.count).map(move |i| self.frame(i))
    }
}

/// Splits a waveform into frames of `frame_length_s` seconds every `hop_length_s` seconds.
pub fn frame_signal(w: &Waveform, frame_length_s: f64, hop_length_s: f64) -> Result<FrameSequence<'_>> {
    let (frame, hop) = FrameSpec::new(frame_length_s, hop_length_s).to_samples(w.sample_rate())?;
    FrameSequence::from_samples(w.samples(), w.sample_rate(), frame, hop)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowKind {
    #[default]
    Hann,
    Hamming,
    Rectangular,
}

impl WindowKind {
    /// Symmetric window coefficients of length `len`.
    pub fn coefficients(self, len: usize) -> Vec<f64> {
        if len == 1 {
            return vec![1.0];
        }
        let denom = (len - 1) as f64;
        (0..len)
            .map(|n| {
                let phase = 2.0 * PI * n as f64 / denom;
                match self {
                    WindowKind::Hann => 0.5 * (1.0 - phase.cos()),
                    WindowKind::Hamming => 0.54 - 0.46 * phase.cos(),
                    WindowKind::Rectangular => 1.0,
                }
            })
            .collect()
    }
}

pub fn apply_window(frame: &[f64], kind: WindowKind) -> Vec<f64> {
    if kind == WindowKind::Rectangular {
        return frame.to_vec();
    }
    frame
        .iter()
        .zip(kind.coefficients(frame.len()))
        .map(|(x, w)| x * w)
        .collect()
}

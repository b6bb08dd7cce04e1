use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_speechfeat"))
}

fn write_wav(path: &Path, samples: &[f64]) {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: 16000,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut w = hound::WavWriter::create(path, spec).unwrap();
    for &s in samples {
        w.write_sample((s * 32767.0).round() as i16).unwrap();
    }
    w.finalize().unwrap();
}

fn sine(freq: f64, secs: f64) -> Vec<f64> {
    (0..(16000.0 * secs) as usize)
        .map(|i| 0.5 * (2.0 * PI * freq * i as f64 / 16000.0).sin())
        .collect()
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let p = dir.join("config.yaml");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn extract_writes_sorted_csv_and_log() {
    let tmp = tempfile::tempdir().unwrap();
    let audio = tmp.path().join("audio");
    std::fs::create_dir_all(audio.join("sub")).unwrap();
    write_wav(&audio.join("b.wav"), &sine(220.0, 1.0));
    write_wav(&audio.join("sub/a.WAV"), &sine(120.0, 1.0));
    write_wav(&audio.join("silent.wav"), &vec![0.0; 16000]);
    std::fs::write(audio.join("notes.txt"), "not audio").unwrap();
    let config = write_config(tmp.path(), "components: [f0_contour, rms]\nstatistics: [mean]\n");
    let out = tmp.path().join("out.csv");
    let log = tmp.path().join("warn.log");

    let status = bin()
        .args(["extract", "-i"])
        .arg(&audio)
        .arg("-o")
        .arg(&out)
        .arg("-F")
        .arg(&config)
        .args(["-j", "2", "--log"])
        .arg(&log)
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "file,f0_contour.mean,rms.mean");
    let ids: Vec<&str> = lines[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids, vec!["b.wav", "silent.wav", "sub/a.WAV"]);
    assert!(lines[2].starts_with("silent.wav,,"));
    let log = std::fs::read_to_string(&log).unwrap();
    assert_eq!(log.trim(), "silent.wav\tf0_contour\tNoVoicedFrames\tno voiced frames");
}

#[test]
fn impute_fills_missing() {
    let tmp = tempfile::tempdir().unwrap();
    let audio = tmp.path().join("audio");
    std::fs::create_dir_all(&audio).unwrap();
    write_wav(&audio.join("a.wav"), &sine(200.0, 1.0));
    write_wav(&audio.join("z.wav"), &vec![0.0; 16000]);
    let config = write_config(tmp.path(), "components: [f0_contour]\nstatistics: [mean]\n");
    let out = tmp.path().join("out.csv");
    let status = bin()
        .arg("extract")
        .arg("-i")
        .arg(&audio)
        .arg("-o")
        .arg(&out)
        .arg("-F")
        .arg(&config)
        .arg("--impute")
        .output()
        .unwrap();
    assert!(status.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][1], rows[1][1]);
    assert!(!rows[1][1].is_empty());
}

#[test]
fn passthrough_writes_series_sidecar() {
    let tmp = tempfile::tempdir().unwrap();
    let audio = tmp.path().join("audio");
    std::fs::create_dir_all(&audio).unwrap();
    write_wav(&audio.join("a.wav"), &sine(200.0, 0.5));
    let config = write_config(tmp.path(), "components: [rms, log_energy]\n");
    let out = tmp.path().join("feat.csv");
    let status = bin()
        .arg("extract")
        .arg("-i")
        .arg(&audio)
        .arg("-o")
        .arg(&out)
        .arg("-F")
        .arg(&config)
        .status()
        .unwrap();
    assert!(status.success());
    let header = std::fs::read_to_string(&out).unwrap();
    assert!(header.starts_with("file,log_energy\r\n"));
    let series = std::fs::read_to_string(tmp.path().join("feat_series/a.wav.rms.csv")).unwrap();
    assert!(series.starts_with("frame,time_s,rms\r\n"));
    // 0.5 s: (8000 - 400) / 160 + 1 = 48 frames
    assert_eq!(series.lines().count(), 49);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let empty = tmp.path().join("empty");
    std::fs::create_dir_all(&empty).unwrap();
    let good = write_config(tmp.path(), "components: [rms]\nstatistics: [mean]\n");
    let out = tmp.path().join("o.csv");

    let code = |args: &[&std::ffi::OsStr]| bin().args(args).output().unwrap().status.code();
    assert_eq!(
        code(&["extract".as_ref(), "-i".as_ref(), empty.as_os_str(), "-o".as_ref(), out.as_os_str(), "-F".as_ref(), good.as_os_str()]),
        Some(2)
    );
    let typo = tmp.path().join("typo.yaml");
    std::fs::write(&typo, "components: [mfccs_typo]\n").unwrap();
    let o = bin()
        .arg("extract")
        .arg("-i")
        .arg(&empty)
        .arg("-o")
        .arg(&out)
        .arg("-F")
        .arg(&typo)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mfccs_typo"));
    assert_eq!(code(&["extract".as_ref()]), Some(1));
    assert_eq!(code(&["frobnicate".as_ref()]), Some(1));
    assert_eq!(code(&["--help".as_ref()]), Some(0));
}

#[test]
fn compare_prints_rho() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a.csv");
    let b = tmp.path().join("b.csv");
    std::fs::write(&a, "file,x\nf1,1\nf2,2\nf3,3\nf4,\n").unwrap();
    std::fs::write(&b, "file,y\nf3,1\nf2,2\nf1,3\nf4,9\n").unwrap();
    let o = bin()
        .args(["compare", "-a"])
        .arg(format!("x@{}", a.display()))
        .arg("-b")
        .arg(format!("y@{}", b.display()))
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "-1");
}

#[test]
fn components_lists_registry() {
    let o = bin().arg("components").output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.lines().any(|l| l.starts_with("mfcc ")));
    assert!(text.lines().any(|l| l.starts_with("jitters ")));
}

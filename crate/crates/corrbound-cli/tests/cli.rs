//! End-to-end tests of the `corrbound` binary: artifact layout, byte
//! determinism, config layering, exit codes, and the kernel dump format.
//!
//! All runs use coarse meshes so the whole file finishes in seconds.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_corrbound"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir()
        .join("corrbound-cli-tests")
        .join(format!("{}-{name}", std::process::id()));
    if dir.exists() {
        std::fs::remove_dir_all(&dir).unwrap();
    }
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.code().is_some(),
        "process terminated by a signal"
    );
    out
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

/// Pull one real out of the line-per-field report JSON.
fn json_real(text: &str, key: &str) -> f64 {
    let tag = format!("\"{key}\": ");
    let at = text.find(&tag).unwrap_or_else(|| panic!("no key {key}"));
    let rest = &text[at + tag.len()..];
    let end = rest
        .find(|c| c == ',' || c == '\n' || c == '}')
        .expect("value terminator");
    rest[..end].trim().parse().expect("real value")
}

fn quick_solve_args(out: &Path) -> Vec<String> {
    [
        "solve",
        "--weight",
        "box",
        "--delta",
        "0.05",
        "--lambda-lo",
        "0.7",
        "--lambda-hi",
        "2.0",
        "--lambda-step",
        "0.05",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain(["--out".to_string(), out.display().to_string()])
    .collect()
}

#[test]
fn solve_writes_the_artifact_set_and_manifest() {
    let dir = scratch("artifacts");
    let out = run(bin().args(quick_solve_args(&dir.join("run"))));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    for name in [
        "config.txt",
        "report.json",
        "per_lambda.tsv",
        "extremizer.tsv",
        "manifest.txt",
    ] {
        assert!(dir.join("run").join(name).exists(), "missing {name}");
    }
    let manifest = read(&dir.join("run/manifest.txt"));
    assert!(manifest.starts_with("config_sha256="));
    let hash = manifest.lines().next().unwrap().split('=').nth(1).unwrap();
    assert_eq!(hash.len(), 64);
    assert!(hash.chars().all(|c| c.is_ascii_hexdigit()));
    for name in ["config.txt", "report.json", "per_lambda.tsv", "extremizer.tsv"] {
        assert!(manifest.contains(&format!("artifact={name}\n")));
    }
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("lower"), "summary line missing: {stdout}");
}

#[test]
fn identical_configs_give_byte_identical_reports() {
    let dir = scratch("determinism");
    let a = dir.join("a");
    let b = dir.join("b");
    assert_eq!(run(bin().args(quick_solve_args(&a))).status.code(), Some(0));
    assert_eq!(
        run(bin().args(quick_solve_args(&b)).args(["--threads", "1"]))
            .status
            .code(),
        Some(0)
    );
    for name in ["report.json", "per_lambda.tsv", "extremizer.tsv", "config.txt", "manifest.txt"] {
        assert_eq!(
            read(&a.join(name)),
            read(&b.join(name)),
            "{name} differs between identical runs"
        );
    }
}

#[test]
fn config_file_supplies_settings_and_flags_override_it() {
    let dir = scratch("layering");
    let cfg = dir.join("run.cfg");
    std::fs::write(
        &cfg,
        "# quick box run\nweight = box\ndelta = 0.08\nlambda_lo = 0.7\nlambda_hi = 2.0\nlambda_step = 0.1\n",
    )
    .unwrap();
    let out_dir = dir.join("out");
    let out = run(bin().args([
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--delta",
        "0.05",
        "--out",
        out_dir.to_str().unwrap(),
    ]));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let canonical = read(&out_dir.join("config.txt"));
    assert!(canonical.contains("weight=box"));
    assert!(
        canonical.contains("delta=5.0000000000000003e-2"),
        "flag did not override the file: {canonical}"
    );
}

#[test]
fn giving_both_delta_and_eps_target_fails_with_exit_1() {
    let out = run(bin().args([
        "solve",
        "--weight",
        "box",
        "--delta",
        "0.01",
        "--eps-target",
        "1e-5",
    ]));
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("exactly one"), "unexpected stderr: {stderr}");
}

#[test]
fn unknown_config_key_fails_with_exit_1() {
    let dir = scratch("badkey");
    let cfg = dir.join("bad.cfg");
    std::fs::write(&cfg, "weight=box\ndetla=0.05\n").unwrap();
    let out = run(bin().args(["solve", "--config", cfg.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("detla"), "typo not reported: {stderr}");
}

#[test]
fn fixed_point_subcommand_writes_value_and_trace() {
    let dir = scratch("fixedpoint");
    let out_dir = dir.join("out");
    let out = run(bin().args([
        "fixed-point",
        "--weight",
        "gaussian",
        "--delta",
        "0.05",
        "--out",
        out_dir.to_str().unwrap(),
    ]));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc = read(&out_dir.join("fixedpoint.json"));
    assert!(doc.contains("\"converged\": true"), "{doc}");
    let value = json_real(&doc, "value");
    assert!(
        (0.70..0.72).contains(&value),
        "fixed-point value {value} out of the expected window"
    );
    let trace = read(&out_dir.join("fixedpoint_trace.tsv"));
    let rows = trace.lines().filter(|l| !l.starts_with('#')).count();
    assert!(rows >= 2, "trace has {rows} rows");
    let profile = read(&out_dir.join("fixedpoint_extremizer.tsv"));
    for line in profile.lines().filter(|l| !l.starts_with('#')).take(5) {
        let mut cols = line.split('\t');
        cols.next().unwrap().parse::<f64>().unwrap();
        cols.next().unwrap().parse::<f64>().unwrap();
    }
    assert!(!out_dir.join("report.json").exists());
}

#[test]
fn both_methods_agree_and_fixed_point_stays_below_the_upper_bound() {
    let dir = scratch("both");
    let out_dir = dir.join("out");
    let mut args = quick_solve_args(&out_dir);
    args.extend(["--method".to_string(), "both".to_string()]);
    let out = run(bin().args(args));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report = read(&out_dir.join("report.json"));
    let fp = read(&out_dir.join("fixedpoint.json"));
    let upper = json_real(&report, "upper");
    let lower = json_real(&report, "lower");
    let value = json_real(&fp, "value");
    assert!(value <= upper, "fixed point {value} above the certified upper {upper}");
    assert!(
        (value - lower).abs() <= 1e-5,
        "fixed point {value} vs spectral lower {lower}"
    );
}

#[test]
fn kernel_dump_prints_the_frozen_box_lags() {
    let out = run(bin().args([
        "kernel-dump",
        "--weight",
        "box",
        "--delta",
        "0.1",
        "--cells",
        "8",
    ]));
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].ends_with("1.0000000000000000e0"));
    assert!(rows[5].ends_with("5.0000000000000000e-1"), "{}", rows[5]);
    assert!(rows[7].ends_with("0.0000000000000000e0"));
}

#[test]
fn gaussian_exponent_writes_rescaled_bounds() {
    let dir = scratch("rescale");
    let out_dir = dir.join("out");
    let out = run(bin().args([
        "solve",
        "--weight",
        "gaussian:2.0",
        "--delta",
        "0.05",
        "--lambda-lo",
        "0.9",
        "--lambda-hi",
        "1.1",
        "--lambda-step",
        "0.05",
        "--out",
        out_dir.to_str().unwrap(),
    ]));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc = read(&out_dir.join("gaussian_rescaled.json"));
    let factor = (2.0 / std::f64::consts::PI).powf(0.25);
    let canonical_lower = json_real(&doc, "canonical_lower");
    let lower = json_real(&doc, "lower");
    assert!((lower - factor * canonical_lower).abs() <= 1e-14);
    let upper = json_real(&doc, "upper");
    let canonical_upper = json_real(&doc, "canonical_upper");
    assert!((upper - factor * canonical_upper).abs() <= 1e-14);
}

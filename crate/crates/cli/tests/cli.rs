use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rankdrop::facesplit::PointPairConfig;
use rankdrop::fixtures;
use rankdrop::io::{self, AnalyzeReport, CertificateJson, Num};
use rankdrop::Rational;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rankdrop"))
}

fn write_config(dir: &Path, name: &str, cfg: &PointPairConfig<Rational>) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, io::config_to_string(cfg)).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn analyze(path: &Path, extra: &[&str]) -> (i32, AnalyzeReport) {
    let mut args = vec!["analyze", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    let code = out.status.code().unwrap();
    assert!(code != 1, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    (code, AnalyzeReport::parse(&String::from_utf8(out.stdout).unwrap()).unwrap())
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn n(v: i64) -> Num {
    Num::Exact(v.to_string())
}

#[test]
fn quadric_eight_analysis() {
    let dir = TempDir::new().unwrap();
    let p = write_config(dir.path(), "eight.json", &fixtures::quadric_eight());
    let (code, report) = analyze(&p, &[]);
    assert_eq!(code, 2);
    assert_eq!(report.rank, 7);
    let CertificateJson::Eight(t) = &report.certificate else { panic!("k = 8 certificate") };
    assert_eq!(t.members.len(), 3);
    let cremona = t.cremona.as_ref().unwrap();
    // x₁² − x₂² + x₃² up to scale: compare ratios of the printed form
    let f0: Vec<Rational> = cremona.forms[0].iter().map(|v| v.to_rational().unwrap()).collect();
    let want = [1, 0, 0, -1, 0, 1].map(r);
    let s = &f0[0];
    assert!(f0.iter().zip(&want).all(|(a, b)| a == &(b * s)));
}

#[test]
fn nine_pair_examples() {
    let dir = TempDir::new().unwrap();
    let p = write_config(dir.path(), "r1.json", &fixtures::rank_one_nine());
    let (code, report) = analyze(&p, &[]);
    assert_eq!(code, 2);
    assert_eq!(report.rank, 8);
    let CertificateJson::Nine(c) = &report.certificate else { panic!() };
    assert_eq!(c.rank_t, Some(1));
    assert!(matches!(c.evidence, Some(io::EvidenceJson::RankOne { .. })));

    let gen = dir.path().join("random.json");
    let out = run(&["generate", "--mechanism", "random", "--k", "9", "--seed", "5", "--out", gen.to_str().unwrap()]);
    assert!(out.status.success());
    let (code, report) = analyze(&gen, &[]);
    assert_eq!(code, 0);
    assert_eq!(report.rank, 9);
    assert!(!report.deficient);
}

#[test]
fn seven_pair_certificates() {
    let dir = TempDir::new().unwrap();
    let six = fixtures::hexahedral_six();
    let (x7, y7) = fixtures::hexahedral_seventh();
    let p = write_config(dir.path(), "seven.json", &six.with_pair(x7, y7).unwrap());
    let out = run(&["certify", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let c: CertificateJson = serde_json::from_slice(&out.stdout).unwrap();
    let CertificateJson::Seven(c) = c else { panic!() };
    assert!(c.all_values_vanish && c.deficient);
    assert!(c.values_x.iter().all(|v| *v == n(0)));

    let q = write_config(dir.path(), "counter.json", &fixtures::degenerate_seven_a());
    let out = run(&["certify", q.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"inconclusive\""));

    let (code, report) = analyze(&p, &["--backend", "float"]);
    assert_eq!(code, 2);
    assert_eq!(report.backend, "float");
}

#[test]
fn analyze_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let p = write_config(dir.path(), "six.json", &fixtures::hexahedral_six());
    let a = run(&["analyze", p.to_str().unwrap(), "--seed", "3"]);
    let b = run(&["analyze", p.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let report = AnalyzeReport::parse(&String::from_utf8(a.stdout.clone()).unwrap()).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim(), String::from_utf8(a.stdout).unwrap().trim());
    assert!(matches!(report.certificate, CertificateJson::Net { .. }));
}

#[test]
fn trinity_command() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("line.json");
    fs::write(&p, r#"{"basis":[[[1,0,0],[0,-1,0],[0,0,0]],[[0,0,0],[0,1,0],[0,0,-1]]]}"#).unwrap();
    let out = run(&["trinity", p.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: io::TrinityJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.members.len(), 3);
    // the standard involution (x₂x₃, x₁x₃, x₁x₂) up to scale
    let forms: Vec<Vec<Rational>> = rep.cremona.unwrap().forms.iter().map(|f| f.iter().map(|v| v.to_rational().unwrap()).collect()).collect();
    let support: Vec<Vec<usize>> = forms.iter().map(|f| (0..6).filter(|&i| f[i] != r(0)).collect()).collect();
    assert_eq!(support, vec![vec![4], vec![2], vec![1]]);

    fs::write(&p, r#"{"basis":[[[1,0,0],[0,1,0],[0,0,1]],[[1,0,0],[0,1,0],[0,0,1]]]}"#).unwrap();
    let out = run(&["trinity", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dependent basis"));
}

#[test]
fn errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, "{not json").unwrap();
    assert_eq!(run(&["analyze", p.to_str().unwrap()]).status.code(), Some(1));
    fs::write(&p, r#"{"pairs":[{"x":[1,2,3],"y":[1,2,3]}]}"#).unwrap();
    assert_eq!(run(&["analyze", p.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["generate", "--mechanism", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["generate", "--mechanism", "cremona8", "--k", "7"]).status.code(), Some(1));
}

#[test]
fn generate_writes_sidecar() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c8.json");
    let a = run(&["generate", "--mechanism", "cremona8", "--seed", "11", "--out", out.to_str().unwrap()]);
    assert!(a.status.success());
    let truth = fs::read_to_string(dir.path().join("c8.truth.json")).unwrap();
    assert!(truth.contains("\"cremona\""));
    let first = fs::read(&out).unwrap();
    run(&["generate", "--mechanism", "cremona8", "--seed", "11", "--out", out.to_str().unwrap()]);
    assert_eq!(first, fs::read(&out).unwrap());
    let (code, report) = analyze(&out, &[]);
    assert_eq!(code, 2);
    assert!(report.rank <= 7);
}

#[test]
fn plots() {
    let dir = TempDir::new().unwrap();
    let p = write_config(dir.path(), "six.json", &fixtures::hexahedral_six());
    let svg = dir.path().join("fig.svg");
    let out = run(&["plot", p.to_str().unwrap(), "--grid", "200", "--out", svg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for side in ["x", "y"] {
        let text = fs::read_to_string(dir.path().join(format!("fig_{side}.svg"))).unwrap();
        assert_eq!(text.matches("<circle").count(), 6);
        assert!(text.contains("<path d=\"M"));
    }

    let q = write_config(dir.path(), "seven.json", &fixtures::epipole_seven());
    let out = run(&["plot", q.to_str().unwrap(), "--grid", "200", "--out", svg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("fig_x.svg")).unwrap();
    assert_eq!(text.matches("<path").count(), 7);
    assert!(text.matches("<rect x=").count() >= 3);

    // positive throughout a small window around (100, 100)
    let c = dir.path().join("curve.json");
    fs::write(&c, r#"{"curves":[[1,0,0,0,0,0,1,0,0,1]],"points":[[100,100,1],[101,101,1]]}"#).unwrap();
    let out = run(&["plot", c.to_str().unwrap(), "--grid", "50", "--out", svg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no real locus"));
}

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_renyi-lab"));
    c.env_remove("RENYI_LAB_SEED");
    c
}

fn run(c: &mut Command) -> Output {
    c.output().expect("binary runs")
}

fn sweep(out: &Path, extra: &[&str]) -> Command {
    let mut c = bin();
    c.args(["sweep", "--suite", "decomp,rmu", "--trials", "3", "--out"]).arg(out).args(extra);
    c
}

#[test]
fn sweep_succeeds_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&mut sweep(dir.path(), &["--seed", "4"]));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("decomp") && stdout.contains("rmu"));
    assert!(dir.path().join("decomp.csv").exists());
    assert!(dir.path().join("rmu.csv").exists());
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for extra in [&["--dim-a", "9"][..], &["--dim-b", "1"], &["--trials", "0"], &["--tol", "-1"]] {
        let o = run(&mut sweep(dir.path(), extra));
        assert_eq!(o.status.code(), Some(2), "{extra:?}");
    }
    let o = run(bin().args(["sweep", "--suite", "nope", "--out"]).arg(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
    let o = run(sweep(dir.path(), &[]).env("RENYI_LAB_SEED", "seven"));
    assert_eq!(o.status.code(), Some(2));
    let o = run(bin().args(["frobnicate"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    assert!(run(&mut sweep(&a, &["--seed", "17"])).status.success());
    assert!(run(sweep(&b, &[]).env("RENYI_LAB_SEED", "17")).status.success());
    assert!(run(sweep(&c, &["--seed", "17"]).env("RENYI_LAB_SEED", "99")).status.success());
    for f in ["decomp.csv", "rmu.csv"] {
        let x = std::fs::read(a.join(f)).unwrap();
        assert_eq!(x, std::fs::read(b.join(f)).unwrap());
        assert_eq!(x, std::fs::read(c.join(f)).unwrap());
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert!(run(&mut sweep(&a, &[])).status.success());
    assert!(run(&mut sweep(&b, &[])).status.success());
    assert_eq!(std::fs::read(a.join("rmu.csv")).unwrap(), std::fs::read(b.join("rmu.csv")).unwrap());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(&cfg, format!("# test\nsuite = rmu\ntrials = 5\nout = {}\n", dir.path().join("out").display()))
        .unwrap();
    let o = run(bin().args(["sweep", "--trials", "2", "--config"]).arg(&cfg));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv::Reader::from_path(dir.path().join("out/rmu.csv")).unwrap().records().count();
    assert_eq!(rows, 2);
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(bin().args(["sweep", "--config"]).arg(&cfg)).status.code(), Some(2));
}

#[test]
fn explore_mode_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&mut sweep(dir.path(), &["--explore", "--emit-plots"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("decomp-explore.csv").exists());
    assert!(dir.path().join("decomp-explore-gaps.dat").exists());
}

#[test]
fn bounds_subcommand() {
    let o = run(bin().args(["bounds", "--pair", "mub", "--dim-a", "3", "--delta", "0.5,2"]));
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("q_mu") && text.contains("q_delta_si(2)"));
    assert!(run(bin().args(["bounds", "--pair", "random", "--dim-a", "4"])).status.success());
    assert_eq!(run(bin().args(["bounds", "--pair", "missing.txt"])).status.code(), Some(2));
}

#[test]
fn state_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.txt");
    let mut text = String::from("dim 4\n");
    for r in 0..4 {
        for c in 0..4 {
            let v = if (r == 0 || r == 3) && (c == 0 || c == 3) { 0.5 } else { 0.0 };
            text.push_str(&format!("{v} 0\n"));
        }
    }
    std::fs::write(&path, text).unwrap();
    let o = run(bin().arg("state").arg(&path).args(["--dim-a", "2", "--orders", "2"]));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("Hmin(A|B) = -1"), "{out}");
    assert_eq!(run(bin().arg("state").arg(dir.path().join("none.txt"))).status.code(), Some(2));
    assert_eq!(run(bin().arg("state").arg(&path).args(["--dim-a", "3"])).status.code(), Some(2));
}

#[test]
fn limits_subcommand() {
    let o = run(bin().args(["limits", "--trials", "3", "--seed", "1"]));
    assert!(o.status.success());
    assert!(!String::from_utf8(o.stdout).unwrap().contains("FAIL"));
}

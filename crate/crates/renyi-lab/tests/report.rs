mod common;

use common::*;
use renyi_lab::inequalities::{run_suite, Dims, OPTIMIZED_TOL};
use renyi_lab::params::TheoremTag;
use renyi_lab::report::*;
use renyi_lab::states::{random_density, DensityOperator};
use renyi_lab::Error;

#[test]
fn g12_formatting() {
    let cases = [
        (0.1, "0.1"),
        (1.0, "1"),
        (-2.5, "-2.5"),
        (1.0 / 3.0, "0.333333333333"),
        (1e-5, "1e-05"),
        (0.0001, "0.0001"),
        (1e12, "1e+12"),
        (1e11, "100000000000"),
        (123456789012345.0, "1.23456789012e+14"),
        (f64::NAN, "nan"),
        (f64::INFINITY, "inf"),
        (f64::NEG_INFINITY, "-inf"),
        (0.0, "0"),
        (-0.0, "-0"),
    ];
    for (x, want) in cases {
        assert_eq!(fmt_g12(x), want, "{x:e}");
    }
}

#[test]
fn config_text_is_parsed() {
    let o = SweepOverrides::parse(
        "# sweep\n\nsuite = decomp, rmu\ntrials=5\n dim_a = 3 \nseed = 42\ntol = 1e-6\nout = /tmp/x\nexplore = true\n",
    )
    .unwrap();
    assert_eq!(o.tags, Some(vec![TheoremTag::Decomp, TheoremTag::Rmu]));
    assert_eq!(o.trials, Some(5));
    assert_eq!(o.dim_a, Some(3));
    assert_eq!(o.dim_b, None);
    assert_eq!(o.master_seed, Some(42));
    assert_eq!(o.tolerance, Some(1e-6));
    assert_eq!(o.output_path.as_deref(), Some(std::path::Path::new("/tmp/x")));
    assert_eq!(o.explore, Some(true));
    assert_eq!(o.emit_plots, None);
    for bad in ["color = red", "trials = many", "dim_b = -1", "no equals sign", "suite = nope", "explore = maybe"] {
        assert!(matches!(SweepOverrides::parse(bad), Err(Error::Config(_))), "{bad}");
    }
}

#[test]
fn overrides_take_precedence() {
    let cli = SweepOverrides { trials: Some(3), ..Default::default() };
    let file = SweepOverrides { trials: Some(9), dim_a: Some(4), ..Default::default() };
    let merged = cli.or(file);
    assert_eq!(merged.trials, Some(3));
    assert_eq!(merged.dim_a, Some(4));
}

#[test]
fn resolution_applies_defaults_and_validates() {
    let cfg = SweepConfig::resolve(SweepOverrides { master_seed: Some(5), ..Default::default() }).unwrap();
    assert_eq!(cfg.master_seed, 5);
    assert_eq!(cfg.trials, DEFAULT_TRIALS);
    assert_eq!(cfg.tolerance, DEFAULT_TOL);
    assert_eq!(cfg.tags.len(), 20);
    assert_eq!(cfg.dims(), Dims { a: 2, b: 2, c: 2 });
    let with = |o: SweepOverrides| SweepConfig::resolve(SweepOverrides { master_seed: Some(0), ..o });
    for o in [
        SweepOverrides { dim_a: Some(1), ..Default::default() },
        SweepOverrides { dim_c: Some(9), ..Default::default() },
        SweepOverrides { trials: Some(0), ..Default::default() },
        SweepOverrides { tolerance: Some(-1.0), ..Default::default() },
        SweepOverrides { tolerance: Some(f64::NAN), ..Default::default() },
        SweepOverrides { tags: Some(vec![]), ..Default::default() },
    ] {
        assert!(matches!(with(o), Err(Error::Config(_))));
    }
    assert!(with(SweepOverrides { dim_b: Some(8), ..Default::default() }).is_ok());
}

#[test]
fn suite_selection() {
    assert_eq!(parse_suites("all").unwrap().len(), 20);
    assert_eq!(parse_suites("divergence").unwrap().len(), 8);
    assert_eq!(parse_suites("uncertainty").unwrap().len(), 12);
    assert_eq!(parse_suites("decomp,decomp, divergence").unwrap().len(), 8);
    assert_eq!(parse_suites("hall,rmu").unwrap(), vec![TheoremTag::HallClassical, TheoremTag::Rmu]);
    assert!(matches!(parse_suites("decomp,bogus"), Err(Error::Config(_))));
    assert!(matches!(parse_suites(" , "), Err(Error::Config(_))));
}

fn csv_text(tag: TheoremTag, trials: usize, seed: u64) -> String {
    let r = run_suite(tag, trials, Dims::default(), seed, OPTIMIZED_TOL);
    let mut buf = Vec::new();
    write_csv(&r.reports, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn csv_layout() {
    let text = csv_text(TheoremTag::Decomp, 3, 1);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rows.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_COLUMNS);
    let records: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 3);
    for (i, rec) in records.iter().enumerate() {
        assert_eq!(rec.len(), 16);
        assert_eq!(&rec[0], i.to_string());
        assert_eq!(&rec[2], "2");
        assert_eq!(&rec[4], "");
        assert_eq!(&rec[8], "");
        assert!(["forward", "reverse"].contains(&&rec[9]));
        let lhs: f64 = rec[10].parse().unwrap();
        let rhs: f64 = rec[11].parse().unwrap();
        let gap: f64 = rec[12].parse().unwrap();
        assert!((gap.abs() - (lhs - rhs).abs()).abs() <= 1e-9 * (1.0 + lhs.abs()));
    }
    let chain = csv_text(TheoremTag::Chain, 1, 1);
    let rec = csv::Reader::from_reader(chain.as_bytes()).records().next().unwrap().unwrap();
    assert_eq!(&rec[4], "2");
    let noncond = csv_text(TheoremTag::Noncond, 1, 1);
    let rec = csv::Reader::from_reader(noncond.as_bytes()).records().next().unwrap().unwrap();
    assert!(rec[8].parse::<f64>().is_ok());
}

#[test]
fn csv_output_is_deterministic() {
    assert_eq!(csv_text(TheoremTag::Rmu, 4, 9), csv_text(TheoremTag::Rmu, 4, 9));
    assert_ne!(csv_text(TheoremTag::Rmu, 4, 9), csv_text(TheoremTag::Rmu, 4, 10));
}

#[test]
fn histogram_counts_every_finite_gap() {
    let r = run_suite(TheoremTag::Rmu, 10, Dims::default(), 2, OPTIMIZED_TOL);
    let h = gap_histogram(&r.reports, HISTOGRAM_BINS);
    assert_eq!(h.len(), HISTOGRAM_BINS);
    assert_eq!(h.iter().map(|b| b.2).sum::<usize>(), 10);
    for w in h.windows(2) {
        assert_close(w[0].1, w[1].0, 1e-15);
    }
    assert!(gap_histogram(&[], 5).is_empty());
}

#[test]
fn matrix_files_round_trip() {
    let rho = random_density(3, 3, &mut rng(1)).into_operator();
    let back = parse_matrix(&format_matrix(&rho)).unwrap();
    assert_op_close(&back, &rho, 1e-11);
    let text = "# comment\ndim 2\n0.5 0\n\n0 0\n0 0\n0.5 0\n";
    assert_op_close(&parse_matrix(text).unwrap(), &renyi_lab::Operator::identity(2).scale(0.5), 0.0);
    for bad in ["", "dim x\n", "dim 2\n1 0\n", "dim 1\n1\n", "dim 1\n1 0 0\n", "size 1\n1 0\n"] {
        assert!(matches!(parse_matrix(bad), Err(Error::InvalidInput(_))), "{bad:?}");
    }
}

#[test]
fn state_files_are_split_by_dim_a() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.txt");
    let rho = random_density(4, 4, &mut rng(2)).into_operator();
    std::fs::write(&path, format_matrix(&rho)).unwrap();
    assert_eq!(state_from_file(&path, Some(2)).unwrap().layout().dims(), &[2, 2]);
    assert_eq!(state_from_file(&path, None).unwrap().layout().dims(), &[4]);
    assert!(matches!(state_from_file(&path, Some(3)), Err(Error::Config(_))));
    let mut out = Vec::new();
    cmd_state(&state_from_file(&path, Some(2)).unwrap(), &[0.25, 1.0, 2.0, f64::INFINITY], &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("Hup(A|B)") && text.contains("Hmin(A|B)"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn named_pairs() {
    assert_close(pair_from_spec("mub", 3, 0).unwrap().c(), 1.0 / 3.0, 1e-12);
    let a = pair_from_spec("random", 3, 4).unwrap();
    let b = pair_from_spec("random", 3, 4).unwrap();
    assert_eq!(a.c(), b.c());
    assert!(matches!(pair_from_spec("fourier", 3, 0), Err(Error::Config(_))));
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    let z = dir.path().join("z.txt");
    std::fs::write(&x, format_matrix(a.basis_x().vectors())).unwrap();
    std::fs::write(&z, format_matrix(a.basis_z().vectors())).unwrap();
    let files = pair_from_spec(&format!("{},{}", x.display(), z.display()), 3, 0).unwrap();
    assert_close(files.c(), a.c(), 1e-10);
}

#[test]
fn bounds_table_lists_every_bound() {
    let mut out = Vec::new();
    cmd_bounds(&pair_from_spec("mub", 2, 0).unwrap(), &[0.5, 2.0], &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    for name in ["q_mu", "r_h", "r_xz", "r_zx", "r_cp", "r_g", "q_delta_mixed(0.5)", "q_delta_si(2)"] {
        let line = text.lines().find(|l| l.starts_with(name)).unwrap_or_else(|| panic!("{name} missing"));
        let v: f64 = line.split_whitespace().last().unwrap().parse().unwrap();
        assert!(v.is_finite() && v >= 1.0 - 1e-6, "{name} = {v}");
    }
}

#[test]
fn limit_checks_pass_on_small_runs() {
    let r = limit_residuals(5, 3).unwrap();
    assert_eq!(r.instances, 5);
    assert!(r.passed(), "{r:?}");
    let mut out = Vec::new();
    assert!(cmd_limits(2, 3, &mut out).unwrap());
    assert!(!String::from_utf8(out).unwrap().contains("FAIL"));
}

#[test]
fn sweep_writes_one_csv_per_suite() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SweepConfig {
        tags: vec![TheoremTag::Decomp, TheoremTag::Rmu],
        trials: 3,
        output_path: dir.path().to_path_buf(),
        emit_plots: true,
        ..SweepConfig::default()
    };
    let mut log = Vec::new();
    let outcome = cmd_sweep(&cfg, &mut log).unwrap();
    assert_eq!(outcome.exit_code, EXIT_PASS);
    assert_eq!(outcome.suites.len(), 2);
    for s in &outcome.suites {
        assert_eq!(s.summary.trials, 3);
        let rows = csv::Reader::from_path(&s.csv_path).unwrap().records().count();
        assert_eq!(rows, 3);
    }
    assert!(dir.path().join("decomp.csv").exists());
    assert!(dir.path().join("rmu-gaps.dat").exists());
    assert_eq!(String::from_utf8(log).unwrap().lines().count(), 2);
}

#[test]
fn sweep_rejects_invalid_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SweepConfig {
        tags: vec![TheoremTag::Rmu],
        trials: 2,
        tolerance: -1.0,
        output_path: dir.path().to_path_buf(),
        ..SweepConfig::default()
    };
    assert!(matches!(cmd_sweep(&cfg, &mut Vec::new()), Err(Error::Config(_))));
}

#[test]
fn exploration_never_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SweepConfig {
        tags: vec![TheoremTag::Decomp, TheoremTag::Noncond],
        trials: 4,
        explore: true,
        output_path: dir.path().to_path_buf(),
        ..SweepConfig::default()
    };
    let outcome = cmd_sweep(&cfg, &mut Vec::new()).unwrap();
    assert_eq!(outcome.exit_code, EXIT_PASS);
    assert_eq!(outcome.suites.len(), 1);
    assert!(outcome.suites[0].explore);
    assert!(dir.path().join("decomp-explore.csv").exists());
    assert!(!dir.path().join("noncond-explore.csv").exists());
}

#[test]
fn qubit_layout_is_reported() {
    let rho = DensityOperator::maximally_mixed(2);
    let mut out = Vec::new();
    cmd_state(&rho, &[2.0], &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("layout [2]"));
    assert!(!text.contains("Hmin"));
}

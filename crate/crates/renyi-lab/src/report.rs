//! Configuration, CSV output and the commands behind the `renyi-lab`
//! binary.
//!
//! Floats in CSV files and tables are printed with 12 significant digits
//! in the style of C's `%.12g`, so identical runs give identical bytes.

use crate::inequalities::{explorable, explore_trial, run_suite, Dims, InequalityReport, SuiteSummary, Verdict};
use crate::linalg::{Operator, SystemLayout};
use crate::params::TheoremTag;
use crate::renyi::{
    cond_entropy_down, cond_entropy_up, min_entropy, mutual_info_down, mutual_info_up, renyi_entropy,
    sandwiched_divergence,
};
use crate::states::{random_density, trial_rng, DensityOperator, MeasurementBasis};
use crate::uncertainty::{
    hall_bound, q_delta, q_delta_state_independent, q_mu, r_cp, r_g, r_xz, MeasurementPair, Orientation,
};
use crate::{Error, Result, C64};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable supplying the default master seed.
pub const SEED_ENV: &str = "RENYI_LAB_SEED";

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_TOL: f64 = 1e-5;
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

/// Number of bins in the gap histogram files.
pub const HISTOGRAM_BINS: usize = 20;

/// Exit code for a run in which every trial passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a run with at least one failed trial.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for an invalid configuration.
pub const EXIT_CONFIG: i32 = 2;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 16] = [
    "trial_id",
    "seed",
    "dim_a",
    "dim_b",
    "dim_c",
    "alpha",
    "beta",
    "gamma",
    "delta",
    "direction",
    "lhs_bits",
    "rhs_bits",
    "gap_bits",
    "verdict",
    "opt_iters",
    "opt_residual",
];

/// Settings of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub tags: Vec<TheoremTag>,
    pub trials: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_c: usize,
    pub master_seed: u64,
    pub tolerance: f64,
    pub output_path: PathBuf,
    /// Also write gap histogram data files.
    pub emit_plots: bool,
    /// Sample orders outside the admissible sets; never affects the exit
    /// code.
    pub explore: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            tags: TheoremTag::ALL.to_vec(),
            trials: DEFAULT_TRIALS,
            dim_a: 2,
            dim_b: 2,
            dim_c: 2,
            master_seed: DEFAULT_SEED,
            tolerance: DEFAULT_TOL,
            output_path: PathBuf::from("renyi-lab-out"),
            emit_plots: false,
            explore: false,
        }
    }
}

/// Optional overrides, as read from a config file or the command line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepOverrides {
    pub tags: Option<Vec<TheoremTag>>,
    pub trials: Option<usize>,
    pub dim_a: Option<usize>,
    pub dim_b: Option<usize>,
    pub dim_c: Option<usize>,
    pub master_seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub emit_plots: Option<bool>,
    pub explore: Option<bool>,
}

impl SweepOverrides {
    /// Parses flat `key = value` text. Blank lines and lines starting with
    /// `#` are ignored; unknown keys are errors.
    ///
    /// Keys: `suite`, `trials`, `dim_a`, `dim_b`, `dim_c`, `seed`, `tol`,
    /// `out`, `emit_plots`, `explore`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut o = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key=value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |what: &str| Error::Config(format!("line {}: invalid {what} {v:?}", n + 1));
            match k {
                "suite" => o.tags = Some(parse_suites(v)?),
                "trials" => o.trials = Some(v.parse().map_err(|_| bad("trial count"))?),
                "dim_a" => o.dim_a = Some(v.parse().map_err(|_| bad("dimension"))?),
                "dim_b" => o.dim_b = Some(v.parse().map_err(|_| bad("dimension"))?),
                "dim_c" => o.dim_c = Some(v.parse().map_err(|_| bad("dimension"))?),
                "seed" => o.master_seed = Some(v.parse().map_err(|_| bad("seed"))?),
                "tol" => o.tolerance = Some(v.parse().map_err(|_| bad("tolerance"))?),
                "out" => o.output_path = Some(PathBuf::from(v)),
                "emit_plots" => o.emit_plots = Some(v.parse().map_err(|_| bad("flag"))?),
                "explore" => o.explore = Some(v.parse().map_err(|_| bad("flag"))?),
                _ => return Err(Error::Config(format!("line {}: unknown key {k:?}", n + 1))),
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// `self` where set, otherwise `other`.
    pub fn or(self, other: Self) -> Self {
        Self {
            tags: self.tags.or(other.tags),
            trials: self.trials.or(other.trials),
            dim_a: self.dim_a.or(other.dim_a),
            dim_b: self.dim_b.or(other.dim_b),
            dim_c: self.dim_c.or(other.dim_c),
            master_seed: self.master_seed.or(other.master_seed),
            tolerance: self.tolerance.or(other.tolerance),
            output_path: self.output_path.or(other.output_path),
            emit_plots: self.emit_plots.or(other.emit_plots),
            explore: self.explore.or(other.explore),
        }
    }
}

impl SweepConfig {
    /// Applies overrides on top of the defaults, with the seed falling back
    /// to [`SEED_ENV`], and validates the result.
    pub fn resolve(o: SweepOverrides) -> Result<Self> {
        let d = Self::default();
        let seed = match o.master_seed {
            Some(s) => s,
            None => env_seed()?.unwrap_or(DEFAULT_SEED),
        };
        let cfg = Self {
            tags: o.tags.unwrap_or(d.tags),
            trials: o.trials.unwrap_or(d.trials),
            dim_a: o.dim_a.unwrap_or(d.dim_a),
            dim_b: o.dim_b.unwrap_or(d.dim_b),
            dim_c: o.dim_c.unwrap_or(d.dim_c),
            master_seed: seed,
            tolerance: o.tolerance.unwrap_or(d.tolerance),
            output_path: o.output_path.unwrap_or(d.output_path),
            emit_plots: o.emit_plots.unwrap_or(d.emit_plots),
            explore: o.explore.unwrap_or(d.explore),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        for (name, d) in [("dim_a", self.dim_a), ("dim_b", self.dim_b), ("dim_c", self.dim_c)] {
            if !(MIN_DIM..=MAX_DIM).contains(&d) {
                return Err(Error::Config(format!("{name} = {d} outside [{MIN_DIM}, {MAX_DIM}]")));
            }
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Config(format!("tolerance {} must be finite and nonnegative", self.tolerance)));
        }
        if self.tags.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(())
    }

    pub fn dims(&self) -> Dims {
        Dims { a: self.dim_a, b: self.dim_b, c: self.dim_c }
    }
}

/// Seed from [`SEED_ENV`], if set.
pub fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{SEED_ENV}={s:?} is not an unsigned 64-bit integer"))),
        Err(_) => Ok(None),
    }
}

/// Comma-separated suite names, or `all`, `divergence`, `uncertainty`.
pub fn parse_suites(s: &str) -> Result<Vec<TheoremTag>> {
    let mut out = Vec::new();
    for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        let group: Vec<TheoremTag> = match name {
            "all" => TheoremTag::ALL.to_vec(),
            "divergence" => TheoremTag::ALL.iter().copied().filter(|t| t.is_divergence()).collect(),
            "uncertainty" => TheoremTag::ALL.iter().copied().filter(|t| !t.is_divergence()).collect(),
            _ => vec![TheoremTag::parse(name).ok_or_else(|| {
                let known: Vec<&str> = TheoremTag::ALL.iter().map(|t| t.name()).collect();
                Error::Config(format!("unknown suite {name:?}; known: {}", known.join(", ")))
            })?],
        };
        for t in group {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no suites selected".into()));
    }
    Ok(out)
}

/// `x` formatted like C's `%.12g`.
pub fn fmt_g12(x: f64) -> String {
    const P: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= P {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mant), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// One CSV record.
pub fn csv_record(r: &InequalityReport) -> Vec<String> {
    let dims = r.dims.dims();
    let dim = |k: usize| dims.get(k).map(|d| d.to_string()).unwrap_or_default();
    vec![
        r.trial_id.to_string(),
        r.trial_seed.to_string(),
        dim(0),
        dim(1),
        dim(2),
        fmt_g12(r.orders.alpha),
        fmt_g12(r.orders.beta),
        fmt_g12(r.orders.gamma),
        r.orders.delta.map(fmt_g12).unwrap_or_default(),
        r.direction.as_str().to_string(),
        fmt_g12(r.lhs),
        fmt_g12(r.rhs),
        fmt_g12(r.gap),
        r.verdict.as_str().to_string(),
        r.diagnostics.iterations.to_string(),
        fmt_g12(r.diagnostics.residual),
    ]
}

/// Writes the header and one row per report.
pub fn write_csv<W: Write>(reports: &[InequalityReport], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_COLUMNS)?;
    for r in reports {
        out.write_record(csv_record(r))?;
    }
    out.flush()?;
    Ok(())
}

/// `(lo, hi, count)` bins over the finite gaps.
pub fn gap_histogram(reports: &[InequalityReport], bins: usize) -> Vec<(f64, f64, usize)> {
    let gaps: Vec<f64> = reports.iter().map(|r| r.gap).filter(|g| g.is_finite()).collect();
    if gaps.is_empty() || bins == 0 {
        return Vec::new();
    }
    let lo = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
    let mut counts = vec![0usize; bins];
    for g in gaps {
        let k = (((g - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    counts.into_iter().enumerate().map(|(k, c)| (lo + k as f64 * width, lo + (k + 1) as f64 * width, c)).collect()
}

/// Per-suite outcome of a sweep.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub tag: TheoremTag,
    pub summary: SuiteSummary,
    pub csv_path: PathBuf,
    pub explore: bool,
}

/// Result of [`cmd_sweep`].
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub suites: Vec<SuiteOutcome>,
    pub exit_code: i32,
}

fn summary_line(tag: TheoremTag, s: &SuiteSummary, secs: f64, explore: bool) -> String {
    let mode = if explore { " (explore)" } else { "" };
    format!(
        "{:<11} trials {:>5}  pass {:>5}  fail {:>5}  skipped {:>5}  min_gap {:>20}  {:.2}s{mode}",
        tag.name(),
        s.trials,
        s.passed,
        s.failed,
        s.skipped,
        fmt_g12(s.min_gap),
        secs
    )
}

/// Runs each selected suite, writes `<out>/<suite>.csv` (and
/// `<out>/<suite>-gaps.dat` with `emit_plots`), prints one summary line
/// per suite and returns the exit code: [`EXIT_PASS`] when no trial
/// failed, [`EXIT_FAIL`] otherwise. Exploration runs write
/// `<out>/<suite>-explore.csv` and always return [`EXIT_PASS`].
pub fn cmd_sweep<W: Write>(cfg: &SweepConfig, out: &mut W) -> Result<SweepOutcome> {
    cfg.validate()?;
    std::fs::create_dir_all(&cfg.output_path)?;
    let mut suites = Vec::new();
    let mut any_fail = false;
    for &tag in &cfg.tags {
        let start = Instant::now();
        let (reports, summary, suffix) = if cfg.explore {
            if !explorable(tag) {
                writeln!(out, "{:<11} no exploration mode, skipped", tag.name())?;
                continue;
            }
            let reports: Vec<InequalityReport> = (0..cfg.trials as u64)
                .filter_map(|i| explore_trial(tag, cfg.dims(), cfg.master_seed, i).ok())
                .map(|r| r.with_tolerance(cfg.tolerance))
                .collect();
            let summary = SuiteSummary::of(&reports);
            (reports, summary, "-explore")
        } else {
            let r = run_suite(tag, cfg.trials, cfg.dims(), cfg.master_seed, cfg.tolerance);
            (r.reports, r.summary, "")
        };
        let csv_path = cfg.output_path.join(format!("{}{suffix}.csv", tag.name()));
        write_csv(&reports, std::fs::File::create(&csv_path)?)?;
        if cfg.emit_plots {
            let path = cfg.output_path.join(format!("{}{suffix}-gaps.dat", tag.name()));
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            writeln!(f, "# bin_lo bin_hi count")?;
            for (lo, hi, c) in gap_histogram(&reports, HISTOGRAM_BINS) {
                writeln!(f, "{} {} {c}", fmt_g12(lo), fmt_g12(hi))?;
            }
        }
        writeln!(out, "{}", summary_line(tag, &summary, start.elapsed().as_secs_f64(), cfg.explore))?;
        if !cfg.explore && summary.failed > 0 {
            any_fail = true;
            for r in reports.iter().filter(|r| r.verdict == Verdict::Fail).take(3) {
                writeln!(
                    out,
                    "    fail: trial {} seed {} gap {} orders ({}, {}, {})",
                    r.trial_id,
                    r.trial_seed,
                    fmt_g12(r.gap),
                    fmt_g12(r.orders.alpha),
                    fmt_g12(r.orders.beta),
                    fmt_g12(r.orders.gamma)
                )?;
            }
        }
        suites.push(SuiteOutcome { tag, summary, csv_path, explore: cfg.explore });
    }
    let exit_code = if any_fail { EXIT_FAIL } else { EXIT_PASS };
    Ok(SweepOutcome { suites, exit_code })
}

/// Parses the plain-text matrix format: a line `dim d`, then `d²` lines
/// `re im` in row-major order. Blank lines and `#` comments are ignored.
pub fn parse_matrix(text: &str) -> Result<Operator> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let head = lines.next().ok_or_else(|| Error::InvalidInput("empty matrix file".into()))?;
    let d: usize = head
        .strip_prefix("dim")
        .and_then(|r| r.trim().parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::InvalidInput(format!("expected \"dim d\", got {head:?}")))?;
    let mut data = Vec::with_capacity(d * d);
    for l in lines {
        let mut it = l.split_whitespace();
        let parse = |s: Option<&str>| -> Result<f64> {
            s.and_then(|x| x.parse().ok()).ok_or_else(|| Error::InvalidInput(format!("expected \"re im\", got {l:?}")))
        };
        let re = parse(it.next())?;
        let im = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::InvalidInput(format!("expected \"re im\", got {l:?}")));
        }
        data.push(C64::new(re, im));
    }
    if data.len() != d * d {
        return Err(Error::InvalidInput(format!("expected {} entries, found {}", d * d, data.len())));
    }
    Operator::new(d, d, data)
}

/// Writes `m` in the format read by [`parse_matrix`].
pub fn format_matrix(m: &Operator) -> String {
    let mut s = format!("dim {}\n", m.rows());
    for z in m.as_slice() {
        s.push_str(&format!("{} {}\n", fmt_g12(z.re), fmt_g12(z.im)));
    }
    s
}

pub fn read_matrix(path: &Path) -> Result<Operator> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

/// Prints `q_MU`, `q_δ` at the maximally mixed state, `q_δ` state
/// independent, `r_H`, `r(X, Z)`, `r(Z, X)`, `r_CP` and `r_G` for a pair.
pub fn cmd_bounds<W: Write>(pair: &MeasurementPair, deltas: &[f64], out: &mut W) -> Result<()> {
    let d = pair.dim();
    writeln!(out, "dimension {d}, c = {}", fmt_g12(pair.c()))?;
    writeln!(out, "{:<24} {:>20}", "bound", "bits")?;
    let row = |out: &mut W, name: &str, v: f64| writeln!(out, "{name:<24} {:>20}", fmt_g12(v));
    row(out, "q_mu", q_mu(pair).value)?;
    row(out, "r_h", hall_bound(pair).value)?;
    row(out, "r_xz", r_xz(pair, Orientation::XZ).value)?;
    row(out, "r_zx", r_xz(pair, Orientation::ZX).value)?;
    row(out, "r_cp", r_cp(pair).value)?;
    row(out, "r_g", r_g(pair).value)?;
    let mixed = DensityOperator::maximally_mixed(d);
    for &delta in deltas {
        let q = q_delta(&mixed, pair, delta, Orientation::XZ)?.value;
        row(out, &format!("q_delta_mixed({})", fmt_g12(delta)), q)?;
        let si = q_delta_state_independent(pair, delta)?;
        row(out, &format!("q_delta_si({})", fmt_g12(delta)), si.value)?;
    }
    Ok(())
}

/// Named pair (`mub`, `random`) or two basis files `X,Z` whose columns
/// are the basis kets.
pub fn pair_from_spec(spec: &str, dim: usize, seed: u64) -> Result<MeasurementPair> {
    match spec {
        "mub" => Ok(MeasurementPair::mub(dim)),
        "random" => Ok(MeasurementPair::random(dim, &mut trial_rng(seed, 0))),
        _ => {
            let (x, z) = spec
                .split_once(',')
                .ok_or_else(|| Error::Config(format!("pair {spec:?}: expected mub, random or X_FILE,Z_FILE")))?;
            let bx = MeasurementBasis::new(read_matrix(Path::new(x.trim()))?)?;
            let bz = MeasurementBasis::new(read_matrix(Path::new(z.trim()))?)?;
            MeasurementPair::new(bx, bz)
        }
    }
}

/// Table of the entropic quantities of a state at each order. With a
/// bipartite layout the conditional entropies and mutual informations are
/// included.
pub fn cmd_state<W: Write>(rho: &DensityOperator, orders: &[f64], out: &mut W) -> Result<()> {
    let bi = rho.layout().len() == 2;
    writeln!(out, "layout {:?}", rho.layout().dims())?;
    let mut head = vec!["alpha", "H(AB)"];
    if bi {
        head.extend(["H(A)", "H(B)", "Hdown(A|B)", "Hup(A|B)", "Iup(A;B)", "Idown(A:B)"]);
    }
    let line: Vec<String> = head.iter().map(|h| format!("{h:>20}")).collect();
    writeln!(out, "{}", line.join(" "))?;
    for &a in orders {
        let mut cells = vec![fmt_g12(a), fmt_g12(renyi_entropy(rho, a)?)];
        if bi {
            cells.push(fmt_g12(renyi_entropy(&rho.marginal(&[0])?, a)?));
            cells.push(fmt_g12(renyi_entropy(&rho.marginal(&[1])?, a)?));
            if a >= 0.5 {
                cells.push(fmt_g12(cond_entropy_down(rho, a)?));
                cells.push(fmt_g12(cond_entropy_up(rho, a)?.value));
                cells.push(fmt_g12(mutual_info_up(rho, a)?.value));
                cells.push(fmt_g12(mutual_info_down(rho, a)?.value));
            } else {
                cells.extend(std::iter::repeat("-".to_string()).take(4));
            }
        }
        let line: Vec<String> = cells.iter().map(|c| format!("{c:>20}")).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    if bi {
        writeln!(out, "Hmin(A|B) = {}", fmt_g12(min_entropy(rho)?.value))?;
    }
    Ok(())
}

/// State read from a matrix file, split as `dim_a ⊗ (d / dim_a)` when
/// `dim_a` is given and is a proper divisor of `d`.
pub fn state_from_file(path: &Path, dim_a: Option<usize>) -> Result<DensityOperator> {
    let m = read_matrix(path)?;
    let d = m.rows();
    let layout = match dim_a {
        Some(a) if a > 1 && a < d && d % a == 0 => SystemLayout::bipartite(a, d / a),
        Some(a) if a != d => {
            return Err(Error::Config(format!("dim_a = {a} does not split dimension {d}")));
        }
        _ => SystemLayout::single(d),
    };
    DensityOperator::new(m, layout)
}

/// Offset from the limit point used by the limit checks.
pub const LIMIT_OFFSET: f64 = 1e-4;
/// Largest residual accepted by the limit checks.
pub const LIMIT_TOL: f64 = 1e-3;

/// Largest residuals of the limit checks over random qubit instances.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LimitResiduals {
    pub instances: usize,
    /// `|H_{1±ε}(ρ) − H(ρ)|`.
    pub entropy_to_one: f64,
    /// `|D_{1±ε}(ρ‖σ) − D(ρ‖σ)|` on full-rank pairs.
    pub divergence_to_one: f64,
    /// `|q_{1±ε}(ρ, X, Z) − q(ρ, X, Z)|`.
    pub q_delta_to_one: f64,
    /// `|q_{±ε}(ρ, X, Z) − q_MU|`.
    pub q_delta_to_zero: f64,
}

impl LimitResiduals {
    pub fn passed(&self) -> bool {
        [self.entropy_to_one, self.divergence_to_one, self.q_delta_to_one, self.q_delta_to_zero]
            .iter()
            .all(|&r| r <= LIMIT_TOL)
    }
}

/// Evaluates the `α → 1` and `δ → {0, 1}` limits on `instances` random
/// qubit states, bases and full-rank references.
pub fn limit_residuals(instances: usize, seed: u64) -> Result<LimitResiduals> {
    let mut out = LimitResiduals { instances, ..LimitResiduals::default() };
    for i in 0..instances as u64 {
        let mut rng = trial_rng(seed, i);
        let rho = random_density(2, 2, &mut rng);
        let sigma = random_density(2, 2, &mut rng);
        let pair = MeasurementPair::random(2, &mut rng);
        let h = renyi_entropy(&rho, 1.0)?;
        let d = sandwiched_divergence(&rho, sigma.op(), 1.0)?;
        for o in [Orientation::XZ, Orientation::ZX] {
            let q1 = q_delta(&rho, &pair, 1.0, o)?.value;
            let qmu = q_mu(&pair).value;
            for s in [-1.0, 1.0] {
                let e = s * LIMIT_OFFSET;
                out.entropy_to_one = out.entropy_to_one.max((renyi_entropy(&rho, 1.0 + e)? - h).abs());
                out.divergence_to_one =
                    out.divergence_to_one.max((sandwiched_divergence(&rho, sigma.op(), 1.0 + e)? - d).abs());
                out.q_delta_to_one = out.q_delta_to_one.max((q_delta(&rho, &pair, 1.0 + e, o)?.value - q1).abs());
                out.q_delta_to_zero = out.q_delta_to_zero.max((q_delta(&rho, &pair, e, o)?.value - qmu).abs());
            }
        }
    }
    Ok(out)
}

/// Prints the limit residuals; returns whether all are within
/// [`LIMIT_TOL`].
pub fn cmd_limits<W: Write>(instances: usize, seed: u64, out: &mut W) -> Result<bool> {
    let r = limit_residuals(instances, seed)?;
    writeln!(out, "{instances} random qubit instances, offset {}", fmt_g12(LIMIT_OFFSET))?;
    for (name, v) in [
        ("entropy alpha -> 1", r.entropy_to_one),
        ("divergence alpha -> 1", r.divergence_to_one),
        ("q_delta delta -> 1", r.q_delta_to_one),
        ("q_delta delta -> 0", r.q_delta_to_zero),
    ] {
        let ok = if v <= LIMIT_TOL { "ok" } else { "FAIL" };
        writeln!(out, "{name:<24} max residual {:>20}  {ok}", fmt_g12(v))?;
    }
    Ok(r.passed())
}

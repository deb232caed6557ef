use crate::linalg::{herm_eig, HermitianEig, Operator, SystemLayout, C64};
use crate::states::DensityOperator;
use crate::{Error, Result};

/// Minimization strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimizerMethod {
    /// Quasi-Newton descent on `log σ` with step halving.
    MirrorDescent,
    /// Exhaustive Bloch-ball grid followed by simplex refinement (qubits).
    GridQubit,
    /// Derivative-free simplex search on `log σ`; used for nonsmooth objectives.
    NelderMead,
}

/// Bloch-ball lattice for [`OptimizerMethod::GridQubit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridResolution {
    pub radial: usize,
    pub polar: usize,
    pub azimuthal: usize,
}

impl Default for GridResolution {
    fn default() -> Self {
        Self { radial: 64, polar: 64, azimuthal: 64 }
    }
}

#[derive(Clone, Debug)]
pub struct OptimizerConfig {
    pub method: OptimizerMethod,
    pub max_iter: usize,
    /// Stop once the accepted decrease stays below this for two steps.
    pub value_tol: f64,
    /// Largest final residual accepted as converged.
    pub residual_tol: f64,
    /// Central-difference step on the Hermitian parameters.
    pub grad_step: f64,
    /// Eigenvalue floor for iterates.
    pub floor: f64,
    pub grid: GridResolution,
    pub refine_steps: usize,
    /// Apply the ε-regularized limit when the optimum is near the boundary.
    pub extrapolate: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            method: OptimizerMethod::MirrorDescent,
            max_iter: 10_000,
            value_tol: 1e-10,
            residual_tol: 1e-6,
            grad_step: 1e-6,
            floor: 1e-12,
            grid: GridResolution::default(),
            refine_steps: 2_000,
            extrapolate: true,
        }
    }
}

impl OptimizerConfig {
    pub fn grid_qubit(grid: GridResolution) -> Self {
        Self { method: OptimizerMethod::GridQubit, grid, ..Self::default() }
    }
}

/// Outcome of a density optimization. `value` is the quantity being
/// reported (which may be the negated minimum, e.g. for `H↑`).
#[derive(Clone, Debug)]
pub struct OptimizerResult {
    pub optimum: DensityOperator,
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
    pub method: OptimizerMethod,
}

/// Minimum over a product of density blocks.
#[derive(Clone, Debug)]
pub(crate) struct BlockMinimum {
    pub blocks: Vec<Operator>,
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
    pub method: OptimizerMethod,
}

impl BlockMinimum {
    pub fn into_result(self, value: f64) -> OptimizerResult {
        let op = self.blocks.iter().skip(1).fold(self.blocks[0].clone(), |acc, b| crate::linalg::tensor(&acc, b));
        let dims: Vec<usize> = self.blocks.iter().map(|b| b.rows()).collect();
        let layout = SystemLayout::new(&dims).expect("positive block dimensions");
        let optimum = DensityOperator::normalized(op.hermitian_part(), layout).expect("density blocks");
        OptimizerResult { optimum, value, iterations: self.iterations, residual: self.residual, method: self.method }
    }
}

/// Minimizes a real function of a density operator on `C^dim`.
///
/// The objective must be finite on full-rank inputs.
pub fn optimize_density(
    objective: &dyn Fn(&Operator) -> f64,
    dim: usize,
    config: &OptimizerConfig,
) -> Result<OptimizerResult> {
    let f = |b: &[HermitianEig]| objective(&eig_to_op(&b[0]));
    let start = vec![Operator::identity(dim).scale(1.0 / dim as f64)];
    let m = minimize_blocks(&[dim], &f, &[start], config)?;
    let v = m.value;
    Ok(m.into_result(v))
}

pub(crate) fn eig_to_op(e: &HermitianEig) -> Operator {
    e.map(|x| x).hermitian_part()
}

fn n_params(d: usize) -> usize {
    d * d
}

fn hermitian_from_params(x: &[f64], d: usize) -> Operator {
    let mut h = Operator::zeros(d, d);
    let mut k = d;
    for i in 0..d {
        h[(i, i)] = C64::new(x[i], 0.0);
        for j in i + 1..d {
            let z = C64::new(x[k], x[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    h
}

fn params_from_hermitian(h: &Operator) -> Vec<f64> {
    let d = h.rows();
    let mut x = vec![0.0; n_params(d)];
    let mut k = d;
    for i in 0..d {
        x[i] = h[(i, i)].re;
        for j in i + 1..d {
            x[k] = h[(i, j)].re;
            x[k + 1] = h[(i, j)].im;
            k += 2;
        }
    }
    x
}

/// Spectral form of `exp(H)/tr exp(H)` with eigenvalues floored.
fn density_from_params(x: &[f64], d: usize, floor: f64) -> HermitianEig {
    let e = herm_eig(&hermitian_from_params(x, d)).expect("Hermitian by construction");
    let top = e.values[0];
    let mut p: Vec<f64> = e.values.iter().map(|v| (v - top).exp()).collect();
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v = (*v / s).max(floor));
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= s);
    HermitianEig { values: p, vectors: e.vectors }
}

/// `log σ` with eigenvalues floored, as a parameter vector.
fn params_from_density(sigma: &Operator, floor: f64) -> Vec<f64> {
    let e = herm_eig(&sigma.hermitian_part()).expect("Hermitian start");
    let top = e.values[0].max(floor);
    let h = e.map(|v| (v.max(floor * top)).ln());
    params_from_hermitian(&h)
}

struct Layout {
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl Layout {
    fn new(dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in dims {
            offsets.push(total);
            total += n_params(d);
        }
        Self { dims: dims.to_vec(), offsets }
    }

    fn blocks(&self, x: &[f64], floor: f64) -> Vec<HermitianEig> {
        self.dims
            .iter()
            .zip(&self.offsets)
            .map(|(&d, &o)| density_from_params(&x[o..o + n_params(d)], d, floor))
            .collect()
    }

    fn params(&self, blocks: &[Operator], floor: f64) -> Vec<f64> {
        blocks.iter().flat_map(|b| params_from_density(b, floor)).collect()
    }
}

/// Minimizes `f` over products of densities with the given block
/// dimensions, trying each start and keeping the best.
pub(crate) fn minimize_blocks(
    dims: &[usize],
    f: &dyn Fn(&[HermitianEig]) -> f64,
    starts: &[Vec<Operator>],
    cfg: &OptimizerConfig,
) -> Result<BlockMinimum> {
    if cfg.method == OptimizerMethod::GridQubit {
        if dims != [2] {
            return Err(Error::UnsupportedDim(dims.iter().product()));
        }
        return grid_qubit(f, cfg);
    }
    let lay = Layout::new(dims);
    let obj = |x: &[f64]| {
        let v = f(&lay.blocks(x, cfg.floor));
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut best: Option<(Vec<f64>, Minimum)> = None;
    let mut iterations = 0;
    for s in starts {
        let x0 = lay.params(s, cfg.floor);
        let m = match cfg.method {
            OptimizerMethod::NelderMead => simplex_restarts(&obj, &x0, cfg),
            _ => quasi_newton(&obj, &x0, cfg),
        };
        iterations += m.iterations;
        if best.as_ref().map_or(true, |b| m.value < b.1.value) {
            best = Some((m.x.clone(), m));
        }
    }
    let (x, m) = best.ok_or_else(|| Error::InvalidInput("no starting point".into()))?;
    if m.residual > cfg.residual_tol && m.iterations >= cfg.max_iter {
        return Err(Error::OptimizerDiverged { iterations: m.iterations, residual: m.residual });
    }
    let eigs = lay.blocks(&x, cfg.floor);
    let mut value = m.value;
    if cfg.extrapolate && eigs.iter().any(|e| e.min() < 1e-6) {
        value = value.min(boundary_limit(f, &eigs));
    }
    Ok(BlockMinimum {
        blocks: eigs.iter().map(eig_to_op).collect(),
        value,
        iterations,
        residual: m.residual,
        method: cfg.method,
    })
}

/// Richardson limit of `f((1−ε)σ + ε·id/d)` from `ε ∈ {1e−6, 1e−8}`.
fn boundary_limit(f: &dyn Fn(&[HermitianEig]) -> f64, eigs: &[HermitianEig]) -> f64 {
    let at = |eps: f64| {
        let mixed: Vec<HermitianEig> = eigs
            .iter()
            .map(|e| {
                let d = e.dim() as f64;
                HermitianEig {
                    values: e.values.iter().map(|v| (1.0 - eps) * v + eps / d).collect(),
                    vectors: e.vectors.clone(),
                }
            })
            .collect();
        f(&mixed)
    };
    let (e1, e2) = (1e-6, 1e-8);
    let (v1, v2) = (at(e1), at(e2));
    let limit = v2 + (v2 - v1) * e2 / (e1 - e2);
    [v1, v2, limit].into_iter().filter(|v| v.is_finite()).fold(f64::INFINITY, f64::min)
}

pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
}

fn gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut xp = x.to_vec();
    (0..x.len())
        .map(|i| {
            let xi = x[i];
            xp[i] = xi + h;
            let up = f(&xp);
            xp[i] = xi - h;
            let dn = f(&xp);
            xp[i] = xi;
            let g = (up - dn) / (2.0 * h);
            if g.is_finite() {
                g
            } else {
                0.0
            }
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// BFGS in the log-parameterization with halving line search.
pub(crate) fn quasi_newton(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], cfg: &OptimizerConfig) -> Minimum {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut g = gradient(f, &x, cfg.grad_step);
    let mut hinv = identity(n);
    let mut fresh = true;
    let mut small = 0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        let mut p: Vec<f64> = (0..n).map(|i| -dot(&hinv[i], &g)).collect();
        let mut slope = dot(&g, &p);
        if slope >= 0.0 {
            hinv = identity(n);
            fresh = true;
            p = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }
        if slope == 0.0 {
            residual = 0.0;
            break;
        }
        let mut t = 1.0;
        let mut next = None;
        for _ in 0..60 {
            let xn: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + t * b).collect();
            let fnew = f(&xn);
            if fnew.is_finite() && fnew <= fx + 1e-4 * t * slope {
                next = Some((xn, fnew));
                break;
            }
            t *= 0.5;
        }
        let Some((xn, fnew)) = next else {
            if fresh {
                if residual.is_infinite() {
                    residual = g.iter().map(|v| v.abs()).fold(0.0, f64::max) * cfg.grad_step;
                }
                break;
            }
            hinv = identity(n);
            fresh = true;
            continue;
        };
        let delta = fx - fnew;
        residual = delta.abs();
        let gn = gradient(f, &xn, cfg.grad_step);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-18 {
            if fresh {
                let scale = sy / dot(&y, &y);
                hinv = identity(n).into_iter().map(|r| r.into_iter().map(|v| v * scale).collect()).collect();
            }
            bfgs_update(&mut hinv, &s, &y, sy);
            fresh = false;
        }
        x = xn;
        fx = fnew;
        g = gn;
        if delta < cfg.value_tol {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Minimum { x, value: fx, iterations, residual }
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

fn bfgs_update(h: &mut [Vec<f64>], s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..n).map(|i| dot(&h[i], y)).collect();
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            h[i][j] += (1.0 + rho * yhy) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
        }
    }
}

/// Nelder–Mead simplex search.
pub(crate) fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, max_iter: usize, ftol: f64) -> Minimum {
    let n = x0.len();
    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    while iterations < max_iter {
        iterations += 1;
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        residual = (vals[n] - vals[0]).abs();
        if residual <= ftol {
            break;
        }
        let centroid: Vec<f64> = (0..n).map(|k| pts[..n].iter().map(|p| p[k]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&pts[n]).map(|(c, w)| c + t * (c - w)).collect() };
        let xr = along(1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = f(&xe);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            let (xc, fc) = if fr < vals[n] {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < vals[n].min(fr) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    pts[i] = pts[0].iter().zip(&pts[i]).map(|(a, b)| a + 0.5 * (b - a)).collect();
                    vals[i] = f(&pts[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    Minimum { x: pts[best].clone(), value: vals[best], iterations, residual }
}

/// Restarted simplex search until a restart no longer improves.
fn simplex_restarts(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], cfg: &OptimizerConfig) -> Minimum {
    let mut m = nelder_mead(f, x0, 0.5, cfg.max_iter, cfg.value_tol * 1e-2);
    let mut total = m.iterations;
    for k in 0..6 {
        let step = 0.1 / (1 << k) as f64;
        let r = nelder_mead(f, &m.x, step, cfg.max_iter, cfg.value_tol * 1e-2);
        total += r.iterations;
        let gain = m.value - r.value;
        if r.value < m.value {
            m = Minimum { residual: gain.abs(), ..r };
        }
        if gain < cfg.value_tol {
            m.residual = m.residual.min(gain.abs());
            break;
        }
    }
    m.iterations = total;
    m
}

/// Bloch vector `r` (with `|r| ≤ 1`) to a qubit density.
pub fn bloch_density(r: [f64; 3]) -> Operator {
    let half = 0.5;
    Operator::new(
        2,
        2,
        vec![
            C64::new(half * (1.0 + r[2]), 0.0),
            C64::new(half * r[0], -half * r[1]),
            C64::new(half * r[0], half * r[1]),
            C64::new(half * (1.0 - r[2]), 0.0),
        ],
    )
    .expect("finite entries")
}

/// Unconstrained `x ∈ R³` to the open Bloch ball via `tanh |x|`.
pub(crate) fn bloch_from_free(x: &[f64]) -> [f64; 3] {
    let n = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if n == 0.0 {
        return [0.0; 3];
    }
    let s = n.tanh() / n;
    [x[0] * s, x[1] * s, x[2] * s]
}

/// Evaluates `f` on the Bloch lattice and refines the best point.
fn grid_qubit(f: &dyn Fn(&[HermitianEig]) -> f64, cfg: &OptimizerConfig) -> Result<BlockMinimum> {
    let at = |r: [f64; 3]| {
        let e = herm_eig(&bloch_density(r)).expect("Hermitian");
        let v = f(&[e]);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let (best_r, best_v, evals) = bloch_grid_search(&at, cfg.grid);
    let free = |x: &[f64]| at(bloch_from_free(x));
    let n = (best_r[0].powi(2) + best_r[1].powi(2) + best_r[2].powi(2)).sqrt();
    let x0: Vec<f64> = if n > 0.0 { best_r.iter().map(|c| c / n * n.atanh()).collect() } else { vec![0.0; 3] };
    let m = nelder_mead(&free, &x0, 0.05, cfg.refine_steps, cfg.value_tol * 1e-2);
    let (x, value) = if m.value < best_v { (m.x, m.value) } else { (x0, best_v) };
    Ok(BlockMinimum {
        blocks: vec![bloch_density(bloch_from_free(&x))],
        value,
        iterations: evals + m.iterations,
        residual: m.residual,
        method: OptimizerMethod::GridQubit,
    })
}

/// Exhaustive search over `r ∈ {0, …, 0.999}` and a polar/azimuthal grid.
pub(crate) fn bloch_grid_search(f: &dyn Fn([f64; 3]) -> f64, grid: GridResolution) -> ([f64; 3], f64, usize) {
    let mut best = ([0.0; 3], f([0.0; 3]));
    let mut evals = 1;
    for i in 1..grid.radial.max(2) {
        let r = 0.999 * i as f64 / (grid.radial.max(2) - 1) as f64;
        for j in 0..grid.polar.max(1) {
            let th = std::f64::consts::PI * (j as f64 + 0.5) / grid.polar.max(1) as f64;
            for k in 0..grid.azimuthal.max(1) {
                let ph = 2.0 * std::f64::consts::PI * k as f64 / grid.azimuthal.max(1) as f64;
                let p = [r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos()];
                let v = f(p);
                evals += 1;
                if v < best.1 {
                    best = (p, v);
                }
            }
        }
    }
    (best.0, best.1, evals)
}

use super::{Operator, C64};
use crate::{Error, Result};

/// Eigenvalues below `CUTOFF_REL · λ_max` are treated as exact zeros.
pub const CUTOFF_REL: f64 = 1e-12;

/// Negative eigenvalues down to `−CLAMP_TOL` are clamped to zero.
pub const CLAMP_TOL: f64 = 1e-10;

const HERM_TOL: f64 = 1e-9;
const OFF_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `H = U diag(λ) U†` with `λ` descending.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: Operator,
}

/// Cyclic complex Jacobi eigensolver.
pub fn herm_eig(h: &Operator) -> Result<HermitianEig> {
    jacobi(h, true)
}

/// Eigenvalues only, descending.
pub fn herm_eigenvalues(h: &Operator) -> Result<Vec<f64>> {
    Ok(jacobi(h, false)?.values)
}

fn jacobi(h: &Operator, want_vectors: bool) -> Result<HermitianEig> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", h.rows(), h.cols())));
    }
    let defect = h.hermitian_defect();
    if defect > HERM_TOL * (1.0 + h.max_abs()) {
        return Err(Error::NotHermitian(defect));
    }
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = Operator::identity(n);
    let scale = a.frobenius();
    if n > 1 && scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            if off_norm(&a) <= OFF_TOL * scale {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, want_vectors.then_some(&mut v), p, q);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = Operator::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEig { values, vectors })
}

fn off_norm(a: &Operator) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Jacobi rotation `(c, s, e^{-iφ})` annihilating the `(p, q)` entry of a
/// Hermitian pair block `[[app, apq], [conj(apq), aqq]]`.
pub(super) fn jacobi_params(app: f64, aqq: f64, apq: C64) -> Option<(f64, f64, C64)> {
    let mag = apq.norm();
    if mag == 0.0 {
        return None;
    }
    let phase = (apq / mag).conj();
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    Some((c, t * c, phase))
}

fn rotate(a: &mut Operator, mut v: Option<&mut Operator>, p: usize, q: usize) {
    let Some((c, s, ph)) = jacobi_params(a[(p, p)].re, a[(q, q)].re, a[(p, q)]) else {
        return;
    };
    let n = a.dim();
    // Columns: J = [[c, s], [−s·ph, c·ph]] on (p, q).
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ph * s;
        a[(k, q)] = akp * s + akq * ph * c;
        if let Some(v) = v.as_deref_mut() {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * ph * s;
            v[(k, q)] = vkp * s + vkq * ph * c;
        }
    }
    let phc = ph.conj();
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phc * s;
        a[(q, k)] = apk * s + aqk * phc * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `U diag(f(λ)) U†`.
    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> Operator {
        let n = self.dim();
        let w: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let u = &self.vectors;
        let mut out = Operator::zeros(n, n);
        for k in 0..n {
            if w[k] == 0.0 {
                continue;
            }
            for i in 0..n {
                let a = u[(i, k)] * w[k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * u[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Spectral decomposition of `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                pairs.push((self.values[i] * other.values[j], i, j));
            }
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let values = pairs.iter().map(|p| p.0).collect();
        let vectors = Operator::from_fn(n * m, n * m, |r, c| {
            let (_, i, j) = pairs[c];
            self.vectors[(r / m, i)] * other.vectors[(r % m, j)]
        });
        Self { values, vectors }
    }

    /// Eigenvalues after PSD clamping, or `NotPsd`.
    pub fn psd_values(&self) -> Result<Vec<f64>> {
        let lo = self.min();
        if lo < -CLAMP_TOL {
            return Err(Error::NotPsd(lo));
        }
        let top = self.max().max(0.0);
        let cut = CUTOFF_REL * top;
        Ok(self.values.iter().map(|&x| if x <= cut { 0.0 } else { x }).collect())
    }

    /// `U diag(f(v_k)) U†` over the entries with `v_k > 0`, zero elsewhere.
    pub fn map_support(&self, vals: &[f64], f: impl Fn(f64) -> f64) -> Operator {
        let mut it = vals.iter();
        self.map(|_| {
            let x = *it.next().unwrap_or(&0.0);
            if x > 0.0 {
                f(x)
            } else {
                0.0
            }
        })
    }

    /// `H^a` with the pseudoinverse convention on the support.
    pub fn power(&self, a: f64) -> Result<Operator> {
        let vals = self.psd_values()?;
        let mut it = vals.into_iter();
        Ok(self.map(|_| {
            let x = it.next().unwrap_or(0.0);
            if x > 0.0 {
                x.powf(a)
            } else {
                0.0
            }
        }))
    }

    /// `log₂ H` on the support, zero elsewhere.
    pub fn log2(&self) -> Result<Operator> {
        let vals = self.psd_values()?;
        let mut it = vals.into_iter();
        Ok(self.map(|_| {
            let x = it.next().unwrap_or(0.0);
            if x > 0.0 {
                x.log2()
            } else {
                0.0
            }
        }))
    }

    /// Projector onto the support.
    pub fn support(&self) -> Result<Operator> {
        self.power(0.0)
    }

    /// Number of eigenvalues above the cutoff.
    pub fn rank(&self) -> usize {
        let cut = CUTOFF_REL * self.max().max(0.0);
        self.values.iter().filter(|&&x| x > cut && x > 0.0).count()
    }
}

/// `H^a` for positive semi-definite `H`, with eigenvalues below the cutoff
/// mapped to zero for every exponent.
pub fn frac_power(h: &Operator, a: f64) -> Result<Operator> {
    herm_eig(h)?.power(a)
}

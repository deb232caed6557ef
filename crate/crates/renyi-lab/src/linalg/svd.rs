use super::eig::{herm_eig, jacobi_params};
use super::{inner, vec_norm, Operator, C64};
use crate::{Error, Result};

const SVD_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 100;

/// `M = U · diag(d) · V` with `U` an isometry (columns), `V` a co-isometry
/// (rows) and `d` positive, descending and of length `rank(M)`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Operator,
    pub d: Vec<f64>,
    pub v: Operator,
}

/// One-sided Jacobi: returns the orthogonalized columns `A·W` and the
/// accumulated unitary `W`.
fn one_sided(m: &Operator) -> (Vec<Vec<C64>>, Operator) {
    let n = m.cols();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.column_vec(j)).collect();
    let mut w = Operator::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let a = vec_norm(&cols[p]).powi(2);
                let b = vec_norm(&cols[q]).powi(2);
                let g = inner(&cols[p], &cols[q]);
                if g.norm() <= SVD_TOL * (a * b).sqrt() || g.norm() == 0.0 {
                    continue;
                }
                let Some((c, s, ph)) = jacobi_params(a, b, g) else { continue };
                rotated = true;
                for k in 0..cols[p].len() {
                    let xp = cols[p][k];
                    let xq = cols[q][k];
                    cols[p][k] = xp * c - xq * ph * s;
                    cols[q][k] = xp * s + xq * ph * c;
                }
                for k in 0..n {
                    let wp = w[(k, p)];
                    let wq = w[(k, q)];
                    w[(k, p)] = wp * c - wq * ph * s;
                    w[(k, q)] = wp * s + wq * ph * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    (cols, w)
}

/// Singular values in descending order, `min(rows, cols)` of them.
pub fn singular_values(m: &Operator) -> Vec<f64> {
    if m.is_square() && m.is_hermitian(1e-14) {
        if let Ok(e) = herm_eig(m) {
            let mut s: Vec<f64> = e.values.iter().map(|x| x.abs()).collect();
            s.sort_by(|a, b| b.total_cmp(a));
            return s;
        }
    }
    let target = if m.rows() < m.cols() { m.adjoint() } else { m.clone() };
    let (cols, _) = one_sided(&target);
    let mut s: Vec<f64> = cols.iter().map(|c| vec_norm(c)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s.truncate(m.rows().min(m.cols()));
    s
}

/// Rank-revealing singular value decomposition.
pub fn svd(m: &Operator) -> Svd {
    let (cols, w) = one_sided(m);
    let norms: Vec<f64> = cols.iter().map(|c| vec_norm(c)).collect();
    let top = norms.iter().cloned().fold(0.0, f64::max);
    let tol = top * 1e-13 * (m.rows().max(m.cols()) as f64);
    let mut idx: Vec<usize> = (0..norms.len()).filter(|&i| norms[i] > tol && norms[i] > 0.0).collect();
    idx.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let r = idx.len().max(1);
    if idx.is_empty() {
        let mut u = Operator::zeros(m.rows(), 1);
        u[(0, 0)] = C64::new(1.0, 0.0);
        let mut v = Operator::zeros(1, m.cols());
        v[(0, 0)] = C64::new(1.0, 0.0);
        return Svd { u, d: vec![0.0], v };
    }
    let u = Operator::from_fn(m.rows(), r, |i, k| cols[idx[k]][i] / norms[idx[k]]);
    let v = Operator::from_fn(r, m.cols(), |k, j| w[(j, idx[k])].conj());
    Svd { u, d: idx.iter().map(|&i| norms[i]).collect(), v }
}

/// Extends orthonormal columns to an orthonormal basis of `C^n`.
fn complete_basis(cols: &mut Vec<Vec<C64>>, n: usize) {
    let mut e = 0;
    while cols.len() < n && e < n {
        let mut x = vec![C64::new(0.0, 0.0); n];
        x[e] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for c in cols.iter() {
                let proj = inner(c, &x);
                for k in 0..n {
                    x[k] -= c[k] * proj;
                }
            }
        }
        let nx = vec_norm(&x);
        if nx > 1e-8 {
            cols.push(x.into_iter().map(|z| z / nx).collect());
        }
        e += 1;
    }
}

/// Polar decomposition `M = U P` of a square operator, `U` unitary and `P`
/// positive semi-definite.
pub fn polar(m: &Operator) -> Result<(Operator, Operator)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("polar needs a square operator".into()));
    }
    let n = m.dim();
    let s = svd(m);
    let r = if s.d == [0.0] { 0 } else { s.d.len() };
    let mut left: Vec<Vec<C64>> = (0..r).map(|k| s.u.column_vec(k)).collect();
    let mut right: Vec<Vec<C64>> = (0..r).map(|k| (0..n).map(|j| s.v[(k, j)].conj()).collect()).collect();
    complete_basis(&mut left, n);
    complete_basis(&mut right, n);
    // M = W Σ V†, U = W V†, P = V Σ V†.
    let w = Operator::from_fn(n, n, |i, k| left[k][i]);
    let vmat = Operator::from_fn(n, n, |i, k| right[k][i]);
    let mut sigma = vec![0.0; n];
    sigma[..r].copy_from_slice(&s.d[..r]);
    let u = w.matmul(&vmat.adjoint());
    let p = vmat.matmul(&Operator::diag(&sigma)).matmul(&vmat.adjoint());
    Ok((u, p.hermitian_part()))
}

/// Schatten `p`-norm (a quasi-norm for `p < 1`); `p = ∞` is the largest
/// singular value.
pub fn schatten_norm(m: &Operator, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidOrder(p));
    }
    Ok(norm_of_values(&singular_values(m), p))
}

pub(crate) fn norm_of_values(s: &[f64], p: f64) -> f64 {
    let top = s.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return top;
    }
    // singular values below the pseudoinverse cutoff count as zero
    let sum: f64 = s.iter().filter(|&&x| x > super::CUTOFF_REL * top).map(|x| (x / top).powf(p)).sum();
    top * sum.powf(1.0 / p)
}

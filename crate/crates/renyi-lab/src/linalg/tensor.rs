use super::eig::herm_eig;
use super::svd::svd;
use super::{Operator, C64};
use crate::{Error, Result};

/// Ordered subsystem dimensions of a composite space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemLayout {
    dims: Vec<usize>,
}

impl SystemLayout {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::LayoutMismatch(format!("invalid dimensions {dims:?}")));
        }
        Ok(Self { dims: dims.to_vec() })
    }

    pub fn single(d: usize) -> Self {
        Self { dims: vec![d] }
    }

    pub fn bipartite(a: usize, b: usize) -> Self {
        Self { dims: vec![a, b] }
    }

    pub fn tripartite(a: usize, b: usize, c: usize) -> Self {
        Self { dims: vec![a, b, c] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    /// Product of the dimensions of the listed subsystems.
    pub fn dim_of(&self, systems: &[usize]) -> usize {
        systems.iter().map(|&k| self.dims[k]).product()
    }

    /// Layout restricted to `keep` (in ascending subsystem order).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut k = keep.to_vec();
        k.sort_unstable();
        let dims: Vec<usize> = k.iter().map(|&i| self.dims[i]).collect();
        if dims.is_empty() {
            Self { dims: vec![1] }
        } else {
            Self { dims }
        }
    }

    pub fn check(&self, op: &Operator) -> Result<()> {
        if !op.is_square() || op.rows() != self.total() {
            return Err(Error::LayoutMismatch(format!(
                "layout {:?} (total {}) vs operator {}x{}",
                self.dims,
                self.total(),
                op.rows(),
                op.cols()
            )));
        }
        Ok(())
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = idx % self.dims[k];
            idx /= self.dims[k];
        }
        out
    }

    fn compose(&self, digits: &[usize], systems: &[usize]) -> usize {
        systems.iter().fold(0, |acc, &k| acc * self.dims[k] + digits[k])
    }
}

/// Kronecker product `A ⊗ B`.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    Operator::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

/// Partial trace keeping the subsystems in `keep`; the result is ordered by
/// ascending subsystem index.
pub fn partial_trace(m: &Operator, layout: &SystemLayout, keep: &[usize]) -> Result<Operator> {
    layout.check(m)?;
    if keep.iter().any(|&k| k >= layout.len()) {
        return Err(Error::LayoutMismatch(format!("keep {keep:?} outside {:?}", layout.dims())));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..layout.len()).filter(|k| !kept.contains(k)).collect();
    let dk = layout.dim_of(&kept);
    let dt = layout.dim_of(&traced);
    let n = layout.total();
    // rows_by_trace[t][a] = full index with kept index a and traced index t
    let mut rows_by_trace = vec![vec![0usize; dk]; dt];
    for r in 0..n {
        let dg = layout.digits(r);
        rows_by_trace[layout.compose(&dg, &traced)][layout.compose(&dg, &kept)] = r;
    }
    let mut out = Operator::zeros(dk, dk);
    for rows in &rows_by_trace {
        for a in 0..dk {
            for b in 0..dk {
                out[(a, b)] += m[(rows[a], rows[b])];
            }
        }
    }
    Ok(out)
}

/// Reorders tensor factors: subsystem `perm[k]` of the input becomes
/// subsystem `k` of the output.
pub fn permute_systems(m: &Operator, layout: &SystemLayout, perm: &[usize]) -> Result<Operator> {
    layout.check(m)?;
    let map = permutation_map(layout, perm)?;
    let n = layout.total();
    Ok(Operator::from_fn(n, n, |i, j| m[(map[i], map[j])]))
}

/// Vector version of [`permute_systems`].
pub fn permute_vector(v: &[C64], layout: &SystemLayout, perm: &[usize]) -> Result<Vec<C64>> {
    if v.len() != layout.total() {
        return Err(Error::LayoutMismatch(format!("vector length {} vs {:?}", v.len(), layout.dims())));
    }
    let map = permutation_map(layout, perm)?;
    Ok(map.iter().map(|&i| v[i]).collect())
}

// map[new_index] = old_index
fn permutation_map(layout: &SystemLayout, perm: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..layout.len()).collect::<Vec<_>>() {
        return Err(Error::LayoutMismatch(format!("{perm:?} is not a permutation")));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&k| layout.dim(k)).collect();
    let new_layout = SystemLayout { dims: new_dims };
    let n = layout.total();
    let mut map = vec![0; n];
    for (new_idx, slot) in map.iter_mut().enumerate() {
        let nd = new_layout.digits(new_idx);
        let mut od = vec![0; layout.len()];
        for (k, &p) in perm.iter().enumerate() {
            od[p] = nd[k];
        }
        *slot = layout.compose(&od, &(0..layout.len()).collect::<Vec<_>>());
    }
    Ok(map)
}

/// Schmidt decomposition `|ψ⟩ = Σ_k r_k |u_k⟩ ⊗ |w_k⟩`.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    /// Columns `|u_k⟩`.
    pub left_basis: Operator,
    /// Columns `|w_k⟩`.
    pub right_basis: Operator,
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> Vec<C64> {
        let (da, db) = (self.left_basis.rows(), self.right_basis.rows());
        let mut v = vec![C64::new(0.0, 0.0); da * db];
        for (k, &r) in self.coefficients.iter().enumerate() {
            for i in 0..da {
                for j in 0..db {
                    v[i * db + j] += self.left_basis[(i, k)] * self.right_basis[(j, k)] * r;
                }
            }
        }
        v
    }
}

fn bipartite_dims(v: &[C64], layout: &SystemLayout) -> Result<(usize, usize)> {
    if layout.len() != 2 || v.len() != layout.total() {
        return Err(Error::LayoutMismatch(format!(
            "need a bipartite layout matching length {}, got {:?}",
            v.len(),
            layout.dims()
        )));
    }
    Ok((layout.dim(0), layout.dim(1)))
}

pub fn schmidt(v: &[C64], layout: &SystemLayout) -> Result<SchmidtForm> {
    let (da, db) = bipartite_dims(v, layout)?;
    let psi = Operator::from_fn(da, db, |i, j| v[i * db + j]);
    let s = svd(&psi);
    let r = s.d.len();
    Ok(SchmidtForm { coefficients: s.d, left_basis: s.u, right_basis: Operator::from_fn(db, r, |j, k| s.v[(k, j)]) })
}

/// Operator-vector correspondence `Op_{A→B}(|e_i⟩ ⊗ |f_j⟩) = |f_j⟩⟨e_i|`.
pub fn op_vec(v: &[C64], layout: &SystemLayout) -> Result<Operator> {
    let (da, db) = bipartite_dims(v, layout)?;
    Ok(Operator::from_fn(db, da, |j, i| v[i * db + j]))
}

/// Purification on `system ⊗ ancilla` with ancilla dimension `rank(ρ)`.
pub fn purify(rho: &Operator) -> Result<(Vec<C64>, usize)> {
    let e = herm_eig(rho)?;
    let vals = e.psd_values()?;
    let support: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > 0.0).collect();
    let r = support.len().max(1);
    let d = rho.dim();
    let mut v = vec![C64::new(0.0, 0.0); d * r];
    for (a, &k) in support.iter().enumerate() {
        let w = vals[k].sqrt();
        for i in 0..d {
            v[i * r + a] = e.vectors[(i, k)] * w;
        }
    }
    Ok((v, r))
}

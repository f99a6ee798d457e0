//! One-sided (Hestenes) Jacobi SVD for small complex matrices.
//!
//! The decomposition is `Q = V Σ W†` with `V` (m×m) and `W` (n×n) unitary.
//! Jacobi is slow for big matrices but relatively accurate for small singular
//! values, which is exactly what rank decisions need.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use num_traits::{Float, Zero};

use super::matrix::{inner, vec_norm, CMatrix};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Full singular value decomposition `Q = V·diag(sigma)·W†`.
#[derive(Clone, Debug)]
pub struct SvdResult {
    /// m×m unitary; column k is the left singular vector `v_k`.
    pub v: CMatrix,
    /// Nonincreasing singular values, length `min(m, n)`.
    pub sigma: Vec<f64>,
    /// n×n unitary; column k is the right singular vector `w_k`.
    pub w: CMatrix,
    /// `‖Q − VΣW†‖_F / ‖Q‖_F` (zero for the zero matrix).
    pub residual: f64,
}

impl SvdResult {
    pub fn left(&self, k: usize) -> Vec<C64> {
        self.v.col(k)
    }

    pub fn right(&self, k: usize) -> Vec<C64> {
        self.w.col(k)
    }

    /// `V Σ W†` recomputed from the factors.
    pub fn reconstruct(&self) -> CMatrix {
        let (m, n) = (self.v.rows(), self.w.rows());
        let mut vs = CMatrix::zeros(m, n);
        for (k, s) in self.sigma.iter().enumerate() {
            for i in 0..m {
                vs[(i, k)] = self.v[(i, k)] * *s;
            }
        }
        &vs * &self.w.adjoint()
    }
}

/// Computes the full SVD of `q`.
///
/// Deterministic: the first component of each `v_k` with modulus above
/// `1e-10` is made real positive and the compensating phase is absorbed into
/// `w_k`.
pub fn svd(q: &CMatrix) -> Result<SvdResult> {
    let (m, n) = (q.rows(), q.cols());
    if m == 0 || n == 0 {
        return Err(Error::DimensionMismatch("svd of an empty matrix"));
    }
    if !q.is_finite() {
        return Err(Error::NonFinite);
    }

    // Work on a tall matrix A (p × k, p >= k): A = U Σ J†.
    let tall = m >= n;
    let a = if tall { q.clone() } else { q.adjoint() };
    let (p, k) = (a.rows(), a.cols());

    let mut cols: Vec<Vec<C64>> = (0..k).map(|j| a.col(j)).collect();
    let mut jac: Vec<Vec<C64>> = (0..k)
        .map(|j| (0..k).map(|i| if i == j { C64::new(1.0, 0.0) } else { C64::zero() }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..k {
            for j in i + 1..k {
                let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&cols[i], &cols[j]);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // phase that makes the off-diagonal Gram entry real positive
                let ph = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                rotate(&mut cols, i, j, ph, cs, sn);
                rotate(&mut jac, i, j, ph, cs, sn);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms: Vec<(usize, f64)> = cols.iter().map(|c| vec_norm(c)).enumerate().collect();
    norms.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));

    let sigma: Vec<f64> = norms.iter().map(|&(_, s)| s).collect();
    let floor = f64::MIN_POSITIVE * 1e4;
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(p);
    for &(idx, s) in &norms {
        if s > floor {
            u_cols.push(cols[idx].iter().map(|z| z / s).collect());
        } else {
            u_cols.push(vec![C64::zero(); p]);
        }
    }
    let j_sorted: Vec<Vec<C64>> = norms.iter().map(|&(idx, _)| jac[idx].clone()).collect();
    let u_full = complete_unitary(u_cols, p, &sigma, floor);
    let j_full = complete_unitary(j_sorted, k, &vec![1.0; k], 0.0);

    let (mut v_cols, mut w_cols) = if tall { (u_full, j_full) } else { (j_full, u_full) };
    let r = sigma.len();
    for idx in 0..r {
        if let Some(ph) = leading_phase(&v_cols[idx]) {
            let fix = ph.conj();
            v_cols[idx].iter_mut().for_each(|z| *z *= fix);
            w_cols[idx].iter_mut().for_each(|z| *z *= fix);
        }
    }
    for col in v_cols.iter_mut().skip(r).chain(w_cols.iter_mut().skip(r)) {
        if let Some(ph) = leading_phase(col) {
            let fix = ph.conj();
            col.iter_mut().for_each(|z| *z *= fix);
        }
    }

    let mut out = SvdResult {
        v: CMatrix::from_columns(&v_cols),
        sigma,
        w: CMatrix::from_columns(&w_cols),
        residual: 0.0,
    };
    let qn = q.frobenius_norm();
    out.residual = if qn == 0.0 {
        0.0
    } else {
        q.sub(&out.reconstruct()).frobenius_norm() / qn
    };
    Ok(out)
}

fn rotate(cols: &mut [Vec<C64>], i: usize, j: usize, ph: C64, cs: f64, sn: f64) {
    let (lo, hi) = cols.split_at_mut(j);
    let (ci, cj) = (&mut lo[i], &mut hi[0]);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let yt = *y * ph;
        let xn = *x * cs - yt * sn;
        let yn = *x * sn + yt * cs;
        *x = xn;
        *y = yn;
    }
}

/// Re-orthonormalises the given columns (zeros where `weight <= floor`) and
/// fills them up to a full `dim × dim` unitary with standard basis vectors.
fn complete_unitary(mut cols: Vec<Vec<C64>>, dim: usize, weight: &[f64], floor: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(dim);
    let mut pending: Vec<usize> = Vec::new();
    for (idx, col) in cols.iter_mut().enumerate() {
        if weight.get(idx).copied().unwrap_or(0.0) > floor {
            if let Some(v) = orthonormalize_against(col.clone(), &basis) {
                basis.push(v);
                continue;
            }
        }
        pending.push(basis.len());
        basis.push(Vec::new());
    }
    while basis.len() < dim {
        pending.push(basis.len());
        basis.push(Vec::new());
    }
    // fill the gaps with whichever unit vectors have the largest residual
    for slot in pending {
        let filled: Vec<Vec<C64>> = basis.iter().filter(|b| !b.is_empty()).cloned().collect();
        let mut best: Option<(f64, Vec<C64>)> = None;
        for e in 0..dim {
            let mut cand = vec![C64::zero(); dim];
            cand[e] = C64::new(1.0, 0.0);
            let resid = project_out(cand, &filled);
            let nrm = vec_norm(&resid);
            if best.as_ref().is_none_or(|(b, _)| nrm > *b) {
                best = Some((nrm, resid));
            }
        }
        let (nrm, v) = best.expect("dim >= 1");
        let v: Vec<C64> = v.iter().map(|z| z / nrm).collect();
        basis[slot] = orthonormalize_against(v.clone(), &filled).unwrap_or(v);
    }
    basis
}

fn project_out(mut v: Vec<C64>, basis: &[Vec<C64>]) -> Vec<C64> {
    for _ in 0..2 {
        for b in basis {
            let d = inner(b, &v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= d * y;
            }
        }
    }
    v
}

fn orthonormalize_against(v: Vec<C64>, basis: &[Vec<C64>]) -> Option<Vec<C64>> {
    let before = vec_norm(&v);
    let v = project_out(v, basis);
    let n = vec_norm(&v);
    if n == 0.0 || n < 1e-6 * before {
        return None;
    }
    Some(v.iter().map(|z| z / n).collect())
}

fn leading_phase(v: &[C64]) -> Option<C64> {
    v.iter().find(|z| z.norm() > 1e-10).map(|z| z / z.norm())
}

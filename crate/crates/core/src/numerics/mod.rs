//! Numeric kernels and the tolerance policy every rank or degeneracy
//! decision goes through.

pub mod forms;
pub mod matrix;
mod svd;

use num_complex::Complex64 as C64;
use num_traits::Zero;

pub use matrix::{CMatrix, Mat2};
pub use svd::{svd, SvdResult};

use crate::{Error, Result};

/// Thresholds used for every numerical decision.
///
/// * `rank_rel_tol`: a singular value counts iff `σ_k > rank_rel_tol · σ_1`.
/// * `deg_tol`: relative threshold on squared eigenvalue gaps and on
///   discriminants of binary quadratics.
/// * `residual_tol`: accepted relative residual of a constructed reduction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub rank_rel_tol: f64,
    pub deg_tol: f64,
    pub residual_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            rank_rel_tol: 1e-9,
            deg_tol: 1e-8,
            residual_tol: 1e-8,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rank_rel_tol: f64, deg_tol: f64, residual_tol: f64) -> Result<Self> {
        let ok = |x: f64| x > 0.0 && x < 1.0;
        if !ok(rank_rel_tol) {
            return Err(Error::InvalidPolicy("rank_rel_tol must lie in (0, 1)"));
        }
        if !ok(deg_tol) {
            return Err(Error::InvalidPolicy("deg_tol must lie in (0, 1)"));
        }
        if !ok(residual_tol) {
            return Err(Error::InvalidPolicy("residual_tol must lie in (0, 1)"));
        }
        Ok(TolerancePolicy {
            rank_rel_tol,
            deg_tol,
            residual_tol,
        })
    }

    /// Default policy with a different rank threshold.
    pub fn with_rank_tol(rank_rel_tol: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(rank_rel_tol, d.deg_tol, d.residual_tol)
    }
}

/// Number of singular values strictly above `rank_rel_tol · σ_1`.
///
/// `sigma` must be sorted nonincreasing. An all-zero spectrum has rank 0.
pub fn numerical_rank(sigma: &[f64], pol: &TolerancePolicy) -> Result<usize> {
    let first = *sigma.first().ok_or(Error::EmptySpectrum)?;
    if first <= 0.0 {
        return Ok(0);
    }
    let cut = pol.rank_rel_tol * first;
    Ok(sigma.iter().take_while(|&&s| s > cut).count())
}

/// Ratio `σ_2 / σ_1` of a spectrum, or 0 if there is no second value.
pub(crate) fn second_ratio(sigma: &[f64]) -> f64 {
    match sigma {
        [s1, s2, ..] if *s1 > 0.0 => s2 / s1,
        _ => 0.0,
    }
}

/// Eigenvalues of a 2×2 matrix from its characteristic polynomial
/// `λ² − tr·λ + det`, larger-magnitude root first.
pub fn eig2(m: &Mat2) -> (C64, C64) {
    let tr = m.trace();
    let det = m.det();
    let disc = (tr * tr - det * 4.0).sqrt();
    let plus = tr + disc;
    let minus = tr - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    let l1 = big * 0.5;
    if l1.is_zero() {
        return (C64::zero(), C64::zero());
    }
    (l1, det / l1)
}

/// Degeneracy test for an eigenvalue pair.
///
/// The squared gap is compared rather than the gap itself:
/// `|λ₁ − λ₂|² ≤ deg_tol · max(scale, |λ₁| + |λ₂|)²`. The squared gap is the
/// discriminant of the characteristic polynomial, which moves linearly under
/// rounding errors while the gap of a Jordan block moves with their square
/// root.
pub fn is_degenerate(pair: (C64, C64), scale: f64, pol: &TolerancePolicy) -> bool {
    degeneracy_ratio(pair, scale) <= pol.deg_tol
}

/// `|λ₁ − λ₂|² / max(scale, |λ₁| + |λ₂|)²`, zero when everything vanishes.
pub fn degeneracy_ratio(pair: (C64, C64), scale: f64) -> f64 {
    let gap2 = (pair.0 - pair.1).norm_sqr();
    let s = scale.max(pair.0.norm() + pair.1.norm());
    if s == 0.0 {
        0.0
    } else {
        gap2 / (s * s)
    }
}

/// Adjugate-over-determinant inverse; refuses matrices with
/// `|det| ≤ rank_rel_tol · ‖m‖_F²`.
pub fn inv2(m: &Mat2, pol: &TolerancePolicy) -> Result<Mat2> {
    let det = m.det();
    let n = m.frobenius_norm();
    if n == 0.0 || det.norm() <= pol.rank_rel_tol * n * n {
        return Err(Error::SingularMatrix);
    }
    let [[a, b], [c, d]] = m.0;
    Ok(Mat2::new(d / det, -b / det, -c / det, a / det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::c;
    use proptest::prelude::*;

    const I: C64 = C64::new(0.0, 1.0);

    #[test]
    fn rank_examples() {
        let pol = TolerancePolicy::default();
        assert_eq!(numerical_rank(&[1.0, 1.0], &pol).unwrap(), 2);
        assert_eq!(numerical_rank(&[1.0, 1e-15], &pol).unwrap(), 1);
        assert_eq!(numerical_rank(&[], &pol).unwrap_err(), Error::EmptySpectrum);
    }

    #[test]
    fn eig2_examples() {
        let (a, b) = eig2(&Mat2::from_real(0.0, 1.0, 0.0, 0.0));
        assert!(a.is_zero() && b.is_zero());
        let (a, b) = eig2(&Mat2::from_real(1.0, 0.0, 0.0, 2.0));
        assert!((a - c(2.0, 0.0)).norm() < 1e-15 && (b - c(1.0, 0.0)).norm() < 1e-15);
        let (a, b) = eig2(&Mat2::from_real(0.0, 1.0, -1.0, 0.0));
        assert!((a - I).norm() < 1e-15 && (b + I).norm() < 1e-15);
    }

    #[test]
    fn degeneracy_examples() {
        let pol = TolerancePolicy::default();
        assert!(is_degenerate((C64::zero(), C64::zero()), 1.0, &pol));
        assert!(!is_degenerate((c(2.0, 0.0), c(1.0, 0.0)), 1.0, &pol));
        assert!(is_degenerate((c(1.0, 0.0), c(1.0 + 1e-12, 0.0)), 1.0, &pol));
    }

    #[test]
    fn inv2_examples() {
        let pol = TolerancePolicy::default();
        assert_eq!(inv2(&Mat2::identity(), &pol).unwrap(), Mat2::identity());
        assert_eq!(
            inv2(&Mat2::from_real(2.0, 0.0, 0.0, 4.0), &pol).unwrap(),
            Mat2::from_real(0.5, 0.0, 0.0, 0.25)
        );
        assert_eq!(
            inv2(&Mat2::from_real(0.0, 1.0, 0.0, 0.0), &pol).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn policy_validation() {
        assert!(TolerancePolicy::new(0.0, 1e-8, 1e-8).is_err());
        assert!(TolerancePolicy::new(1e-9, 1.0, 1e-8).is_err());
        assert!(TolerancePolicy::new(1e-9, 1e-8, -1.0).is_err());
        assert!(TolerancePolicy::new(1e-9, 1e-8, 1e-8).is_ok());
    }

    fn cplx() -> impl Strategy<Value = C64> {
        (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(re, im)| c(re, im))
    }

    proptest! {
        #[test]
        fn eig2_roots_solve_characteristic_polynomial(a in cplx(), b in cplx(), cc in cplx(), d in cplx()) {
            let m = Mat2::new(a, b, cc, d);
            let (tr, det) = (m.trace(), m.det());
            let (l1, l2) = eig2(&m);
            for l in [l1, l2] {
                let r = l * l - tr * l + det;
                prop_assert!(r.norm() <= 1e-10 * (1.0 + tr.norm() + det.norm()), "residual {}", r.norm());
            }
        }

        #[test]
        fn rank_is_scale_invariant(
            entries in proptest::collection::vec(cplx(), 8),
            drop in any::<bool>(),
            s in cplx().prop_filter("nonzero", |z| z.norm() > 1e-3),
        ) {
            let pol = TolerancePolicy::default();
            let mut q = CMatrix::from_row_major(2, 4, entries).unwrap();
            if drop {
                // make row 2 a multiple of row 1
                for j in 0..4 { q[(1, j)] = q[(0, j)] * c(0.5, -1.5); }
            }
            let r1 = numerical_rank(&svd(&q).unwrap().sigma, &pol).unwrap();
            let r2 = numerical_rank(&svd(&q.scale(s)).unwrap().sigma, &pol).unwrap();
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn svd_reconstructs(rows in 1usize..5, cols in 1usize..6, seed in proptest::collection::vec(cplx(), 30)) {
            let q = CMatrix::from_fn(rows, cols, |i, j| seed[i * 6 + j]);
            let s = svd(&q).unwrap();
            let pol = TolerancePolicy::default();
            prop_assert!(s.residual <= pol.residual_tol);
            let du = (&s.v.adjoint() * &s.v).sub(&CMatrix::identity(rows)).frobenius_norm();
            let dw = (&s.w.adjoint() * &s.w).sub(&CMatrix::identity(cols)).frobenius_norm();
            prop_assert!(du <= 1e-10 && dw <= 1e-10);
            prop_assert!(s.sigma.windows(2).all(|p| p[0] >= p[1]));
        }
    }
}

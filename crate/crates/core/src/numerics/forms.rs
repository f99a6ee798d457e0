//! Binary forms `Σ c_k α^{d−k} β^k` over ℂ and their projective roots.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use num_traits::{Float, Zero};

use super::matrix::Mat2;

/// A point `(α : β)` of the complex projective line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint(pub C64, pub C64);

impl ProjPoint {
    /// Rescaled so that the larger-magnitude component equals 1.
    pub fn normalized(self) -> ProjPoint {
        let s = if self.0.norm() >= self.1.norm() { self.0 } else { self.1 };
        if s.is_zero() {
            return self;
        }
        ProjPoint(self.0 / s, self.1 / s)
    }

    /// Rescaled to unit Euclidean norm (phase of the normalized form kept).
    pub fn unit(self) -> ProjPoint {
        let p = self.normalized();
        let n = (p.0.norm_sqr() + p.1.norm_sqr()).sqrt();
        ProjPoint(p.0 / n, p.1 / n)
    }

    /// Chordal distance `|α β' − β α'| / (‖p‖ ‖q‖)`, in `[0, 1]`.
    pub fn distance(&self, other: &ProjPoint) -> f64 {
        let n1 = (self.0.norm_sqr() + self.1.norm_sqr()).sqrt();
        let n2 = (other.0.norm_sqr() + other.1.norm_sqr()).sqrt();
        (self.0 * other.1 - self.1 * other.0).norm() / (n1 * n2)
    }
}

/// Root set of a binary quadratic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadraticRoots {
    /// All coefficients are below the zero threshold.
    Vanishing,
    Distinct(ProjPoint, ProjPoint),
    Double(ProjPoint),
}

/// Roots of `a α² + b αβ + c β²`.
///
/// `zero_tol` is absolute on `|a| + |b| + |c|`; the double-root test is
/// `|b² − 4ac| ≤ deg_tol · (|a| + |b| + |c|)²`.
pub fn solve_quadratic(q: [C64; 3], zero_tol: f64, deg_tol: f64) -> QuadraticRoots {
    let [a, b, c] = q;
    let n = a.norm() + b.norm() + c.norm();
    if n <= zero_tol {
        return QuadraticRoots::Vanishing;
    }
    let disc = b * b - a * c * 4.0;
    if disc.norm() <= deg_tol * n * n {
        let p = if a.norm() >= c.norm() {
            ProjPoint(-b, a * 2.0)
        } else {
            ProjPoint(c * 2.0, -b)
        };
        return QuadraticRoots::Double(p.normalized());
    }
    let sq = disc.sqrt();
    let s = if (b + sq).norm() >= (b - sq).norm() { b + sq } else { b - sq };
    let h = -s * 0.5;
    // roots t = h / a and t = c / h of a t² + b t + c, written projectively
    QuadraticRoots::Distinct(ProjPoint(h, a).normalized(), ProjPoint(c, h).normalized())
}

/// Binary form of degree `coeffs.len() - 1`; `coeffs[k]` multiplies
/// `α^{d−k} β^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    pub coeffs: Vec<C64>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `det(α P + β Q)` as a binary quadratic.
    pub fn det_pencil(p: &Mat2, q: &Mat2) -> Self {
        let a = p.det();
        let c = q.det();
        let b = p.add(q).det() - a - c;
        BinaryForm::new(vec![a, b, c])
    }

    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).sum()
    }

    pub fn eval(&self, p: ProjPoint) -> C64 {
        let d = self.degree();
        let mut acc = C64::zero();
        for (k, ck) in self.coeffs.iter().enumerate() {
            acc += ck * p.0.powu((d - k) as u32) * p.1.powu(k as u32);
        }
        acc
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut out = vec![C64::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        BinaryForm::new(out)
    }

    pub fn sub(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.coeffs.len(), o.coeffs.len());
        BinaryForm::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: C64) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|z| z * s).collect())
    }

    /// All projective roots, with multiplicity, of a form that is not
    /// identically zero. Clustered roots of a multiple root come back
    /// individually; see [`distinct_roots`](Self::distinct_roots).
    pub fn roots(&self) -> Vec<ProjPoint> {
        match self.chart_roots() {
            Some((m, ts)) => ts.into_iter().map(|t| from_chart(&m, t)).collect(),
            None => Vec::new(),
        }
    }

    /// Roots merged within chordal distance `radius`, with multiplicities.
    ///
    /// A cluster of size `k` is polished by Newton steps on the `(k−1)`-th
    /// derivative in the working chart, where the multiple root is simple.
    pub fn distinct_roots(&self, radius: f64) -> Vec<(ProjPoint, usize)> {
        let Some((m, ts)) = self.chart_roots() else {
            return Vec::new();
        };
        let pts: Vec<ProjPoint> = ts.iter().map(|&t| from_chart(&m, t)).collect();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            match clusters.iter_mut().find(|c| pts[c[0]].distance(p) <= radius) {
                Some(c) => c.push(i),
                None => clusters.push(vec![i]),
            }
        }
        let poly = self.in_chart(&m);
        clusters
            .into_iter()
            .map(|c| {
                let k = c.len();
                let mean = c.iter().map(|&i| ts[i]).sum::<C64>() / k as f64;
                let t = newton_polish(&derivative(&poly, k - 1), mean);
                let p = from_chart(&m, t);
                let p = if p.distance(&from_chart(&m, mean)) <= radius { p } else { from_chart(&m, mean) };
                (p, k)
            })
            .collect()
    }

    /// Durand–Kerner roots in the chart `(α, β) = M (t, 1)` whose leading
    /// coefficient `F(M e₁)` is largest, so no root sits at `t = ∞`.
    fn chart_roots(&self) -> Option<(Mat2, Vec<C64>)> {
        let d = self.degree();
        if d == 0 || self.norm1() == 0.0 {
            return None;
        }
        let (m, lead) = chart_matrices()
            .iter()
            .map(|m| (*m, self.eval(ProjPoint(m.0[0][0], m.0[1][0])).norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty chart list");
        if lead == 0.0 {
            return None;
        }
        let poly = self.in_chart(&m);
        let lead = poly[d];
        let monic: Vec<C64> = poly.iter().map(|z| z / lead).collect();
        Some((m, durand_kerner(&monic)))
    }

    /// Univariate coefficients (ascending powers of t) of `F(M (t, 1))`.
    fn in_chart(&self, m: &Mat2) -> Vec<C64> {
        let d = self.degree();
        // x(t) = m00 t + m01, y(t) = m10 t + m11, as ascending coefficient lists
        let x = [m.0[0][1], m.0[0][0]];
        let y = [m.0[1][1], m.0[1][0]];
        let mut out = vec![C64::zero(); d + 1];
        for (k, ck) in self.coeffs.iter().enumerate() {
            let mut term = vec![*ck];
            for _ in 0..(d - k) {
                term = poly_mul(&term, &x);
            }
            for _ in 0..k {
                term = poly_mul(&term, &y);
            }
            for (i, z) in term.iter().enumerate() {
                out[i] += z;
            }
        }
        out
    }
}

fn from_chart(m: &Mat2, t: C64) -> ProjPoint {
    ProjPoint(m.0[0][0] * t + m.0[0][1], m.0[1][0] * t + m.0[1][1]).normalized()
}

fn derivative(poly: &[C64], times: usize) -> Vec<C64> {
    let mut p = poly.to_vec();
    for _ in 0..times {
        p = p.iter().enumerate().skip(1).map(|(i, z)| z * i as f64).collect();
    }
    p
}

fn horner(poly: &[C64], t: C64) -> C64 {
    poly.iter().rev().fold(C64::zero(), |acc, c| acc * t + c)
}

fn newton_polish(poly: &[C64], mut t: C64) -> C64 {
    let dp = derivative(poly, 1);
    for _ in 0..30 {
        let (f, df) = (horner(poly, t), horner(&dp, t));
        if df.is_zero() {
            break;
        }
        let step = f / df;
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        let next = t - step;
        if horner(poly, next).norm() >= f.norm() {
            break;
        }
        t = next;
    }
    t
}

fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn chart_matrices() -> [Mat2; 4] {
    let rot = |th: f64, ph: f64| {
        let (s, c) = th.sin_cos();
        let e = C64::from_polar(1.0, ph);
        Mat2::new(C64::new(c, 0.0), -e.conj() * s, e * s, C64::new(c, 0.0))
    };
    [Mat2::identity(), rot(0.61, 0.37), rot(1.13, -1.9), rot(-0.83, 2.71)]
}

/// Weierstrass/Durand–Kerner iteration on a monic polynomial given in
/// ascending coefficients (last entry 1).
fn durand_kerner(monic: &[C64]) -> Vec<C64> {
    let d = monic.len() - 1;
    let eval = |z: C64| monic.iter().rev().fold(C64::zero(), |acc, c| acc * z + c);
    // Cauchy bound for the initial circle
    let radius = 1.0 + monic[..d].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = C64::from_polar(1.0, 0.4);
    let mut z: Vec<C64> = (0..d)
        .map(|k| seed * C64::from_polar(radius.min(4.0), 2.0 * core::f64::consts::PI * k as f64 / d as f64))
        .collect();
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.is_zero() {
                denom = C64::new(1e-300, 0.0);
            }
            let step = eval(z[i]) / denom;
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::c;

    fn has_root(roots: &[ProjPoint], p: ProjPoint, tol: f64) -> bool {
        roots.iter().any(|r| r.distance(&p) < tol)
    }

    #[test]
    fn quadratic_alpha_beta() {
        // αβ has roots (1:0) and (0:1)
        match solve_quadratic([C64::zero(), c(1.0, 0.0), C64::zero()], 1e-12, 1e-8) {
            QuadraticRoots::Distinct(p, q) => {
                assert!(has_root(&[p, q], ProjPoint(c(1.0, 0.0), C64::zero()), 1e-15));
                assert!(has_root(&[p, q], ProjPoint(C64::zero(), c(1.0, 0.0)), 1e-15));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quadratic_double_and_vanishing() {
        // (α - 2β)² = α² - 4αβ + 4β²
        let r = solve_quadratic([c(1.0, 0.0), c(-4.0, 0.0), c(4.0, 0.0)], 1e-12, 1e-8);
        assert_eq!(r, QuadraticRoots::Double(ProjPoint(c(1.0, 0.0), c(0.5, 0.0))));
        assert_eq!(solve_quadratic([C64::zero(); 3], 1e-12, 1e-8), QuadraticRoots::Vanishing);
    }

    #[test]
    fn quartic_roots() {
        // (α - β)(α + 2β)(α - iβ)(3α - β)
        let lin = |a: C64, b: C64| BinaryForm::new(vec![a, b]);
        let f = lin(c(1.0, 0.0), c(-1.0, 0.0))
            .mul(&lin(c(1.0, 0.0), c(2.0, 0.0)))
            .mul(&lin(c(1.0, 0.0), c(0.0, -1.0)))
            .mul(&lin(c(3.0, 0.0), c(-1.0, 0.0)));
        let roots = f.roots();
        assert_eq!(roots.len(), 4);
        for p in [
            ProjPoint(c(1.0, 0.0), c(1.0, 0.0)),
            ProjPoint(c(-2.0, 0.0), c(1.0, 0.0)),
            ProjPoint(c(0.0, 1.0), c(1.0, 0.0)),
            ProjPoint(c(1.0, 0.0), c(3.0, 0.0)),
        ] {
            assert!(has_root(&roots, p, 1e-10), "missing {p:?} in {roots:?}");
        }
    }

    #[test]
    fn roots_at_infinity_and_clusters() {
        // α²β² : double roots at (1:0) and (0:1)
        let f = BinaryForm::new(vec![C64::zero(), C64::zero(), c(1.0, 0.0), C64::zero(), C64::zero()]);
        let roots = f.roots();
        assert_eq!(roots.len(), 4);
        let clusters = f.distinct_roots(1e-4);
        assert_eq!(clusters.len(), 2);
        assert!(clusters.iter().all(|(_, m)| *m == 2));
        let pts: Vec<ProjPoint> = clusters.iter().map(|(p, _)| *p).collect();
        assert!(has_root(&pts, ProjPoint(c(1.0, 0.0), C64::zero()), 1e-14));
        assert!(has_root(&pts, ProjPoint(C64::zero(), c(1.0, 0.0)), 1e-14));
    }
}

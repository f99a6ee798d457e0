//! Seeded generators and brute-force oracles for the property suites.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64 as C64;
use num_traits::Float;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::numerics::forms::ProjPoint;
use crate::numerics::matrix::{inner, orth2, vec_norm};
use crate::numerics::{svd, CMatrix, Mat2};
use crate::states::PureState;
use crate::subspace::{slice, ProductVector};
use crate::{Error, Result};

/// Seeded ChaCha20 stream. Cloning copies the position, so two clones
/// yield the same values; use [`RandomSource::split`] for independent
/// children.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Child source seeded from this stream.
    pub fn split(&mut self) -> RandomSource {
        RandomSource::new(self.rng.next_u64())
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal())
    }

    pub fn complex_vec(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.complex_normal()).collect()
    }
}

/// State with independent standard-normal real and imaginary parts.
pub fn random_state(dims: &[usize], src: &mut RandomSource) -> PureState {
    let n: usize = dims.iter().product();
    loop {
        let amps = src.complex_vec(n);
        if vec_norm(&amps) > 1e-6 {
            return PureState::new(dims.to_vec(), amps).expect("valid random state");
        }
    }
}

/// Gaussian `dim × dim` matrix, redrawn until its 2-norm condition number is
/// at most `cond_cap`.
pub fn random_ilo(dim: usize, src: &mut RandomSource, cond_cap: f64) -> CMatrix {
    assert!(cond_cap > 1.0, "condition cap must exceed 1");
    loop {
        let m = CMatrix::from_row_major(dim, dim, src.complex_vec(dim * dim)).expect("square");
        let s = svd(&m).expect("finite");
        let smin = s.sigma[dim - 1];
        if smin > 0.0 && s.sigma[0] / smin <= cond_cap {
            return m;
        }
    }
}

/// Haar-random 2×2 unitary.
pub fn random_unitary2(src: &mut RandomSource) -> Mat2 {
    let a = [src.complex_normal(), src.complex_normal()];
    let n = vec_norm(&a);
    let u = [a[0] / n, a[1] / n];
    let v = orth2(u);
    let ph = C64::from_polar(1.0, 2.0 * PI * src.uniform());
    Mat2::from_cols(u, [v[0] * ph, v[1] * ph])
}

/// Outcome of the brute-force product-vector search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCount {
    Zero,
    One,
    Two,
    Many,
}

/// Counts product directions in `span{w1, w2}` by direct search of
/// `|det(α W1 + β W2)|` over the Riemann sphere.
///
/// Grid local minima (about `grid_n` points) are refined by compass search
/// down to a step of 1e-13 and accepted when `|q| ≤ 1e-10 · ‖q‖` at a unit
/// point. A second pass searches `|q| / Π d(p, r)` over the roots found so
/// far, which separates roots closer than the grid spacing. Roots within
/// 1e-6 chordal distance are merged.
pub fn brute_product_count(w1: &[C64; 4], w2: &[C64; 4], grid_n: usize) -> Result<ProductCount> {
    let gram = vec_norm(w1).powi(2) * vec_norm(w2).powi(2) - inner(w1, w2).norm_sqr();
    if !(gram > 1e-12 * vec_norm(w1).powi(2) * vec_norm(w2).powi(2)) {
        return Err(Error::DependentGenerators);
    }
    let (m1, m2) = (slice(w1).0, slice(w2).0);
    let scale = (m1.frobenius_norm() + m2.frobenius_norm()).powi(2);
    // |det| at the unit point with polar coordinates (θ, φ)
    let q = |th: f64, ph: f64| {
        let (s, c) = (th * 0.5).sin_cos();
        let beta = C64::from_polar(s, ph);
        m1.scale(C64::new(c, 0.0)).add(&m2.scale(beta)).det().norm() / scale
    };
    let point = |th: f64, ph: f64| {
        let (s, c) = (th * 0.5).sin_cos();
        ProjPoint(C64::new(c, 0.0), C64::from_polar(s, ph))
    };

    let side = ((grid_n as f64).sqrt().ceil() as usize).max(8);
    let (dth, dph) = (PI / side as f64, 2.0 * PI / side as f64);
    let grid: Vec<f64> = (0..side * side)
        .map(|k| q((k / side) as f64 * dth + 0.5 * dth, (k % side) as f64 * dph))
        .collect();
    if grid.iter().all(|&v| v <= 1e-10) {
        return Ok(ProductCount::Many);
    }

    let mut roots: Vec<ProjPoint> = Vec::new();
    for pass in 0..2 {
        let found = roots.clone();
        let f = |th: f64, ph: f64| {
            let p = point(th, ph);
            found.iter().fold(q(th, ph), |acc, r| acc / r.distance(&p).max(1e-300))
        };
        let vals: Vec<f64> = if pass == 0 {
            grid.clone()
        } else {
            (0..side * side)
                .map(|k| f((k / side) as f64 * dth + 0.5 * dth, (k % side) as f64 * dph))
                .collect()
        };
        for i in 0..side {
            for j in 0..side {
                let v = vals[i * side + j];
                let is_min = neighbours(i, j, side).all(|(a, b)| vals[a * side + b] >= v);
                if !is_min {
                    continue;
                }
                let (th, ph) = compass(&f, i as f64 * dth + 0.5 * dth, j as f64 * dph, dth);
                if q(th, ph) <= 1e-10 {
                    let p = point(th, ph);
                    if !roots.iter().any(|r| r.distance(&p) <= 1e-6) {
                        roots.push(p);
                    }
                }
            }
        }
    }
    Ok(match roots.len() {
        0 => ProductCount::Zero,
        1 => ProductCount::One,
        2 => ProductCount::Two,
        _ => ProductCount::Many,
    })
}

fn neighbours(i: usize, j: usize, side: usize) -> impl Iterator<Item = (usize, usize)> {
    let rows = [i.checked_sub(1), Some(i), (i + 1 < side).then_some(i + 1)];
    rows.into_iter().flatten().flat_map(move |a| {
        [(j + side - 1) % side, j, (j + 1) % side]
            .into_iter()
            .filter(move |&b| (a, b) != (i, j))
            .map(move |b| (a, b))
    })
}

fn compass(f: &impl Fn(f64, f64) -> f64, mut th: f64, mut ph: f64, step0: f64) -> (f64, f64) {
    let mut step = step0;
    let mut best = f(th, ph);
    while step > 1e-13 {
        let mut moved = false;
        for (a, b) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = f(th + a, ph + b);
            if v < best {
                best = v;
                th += a;
                ph += b;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (th, ph)
}

/// Coordinate defect of the companion vector of a span with a single product
/// direction `φ⊗ψ`.
///
/// `other` is expressed in the basis `{φ, φ̄} ⊗ {ψ, ψ̄}` (`φ̄ ⊥ φ`,
/// `ψ̄ ⊥ ψ`, all unit); returns `|x₂₂| / ‖x‖`, which vanishes iff the span
/// contains a vector `φ⊗ψ' + φ'⊗ψ`.
pub fn companion_defect(witness: &ProductVector, other: &[C64; 4]) -> f64 {
    let unit = |v: [C64; 2]| {
        let n = vec_norm(&v);
        [v[0] / n, v[1] / n]
    };
    let phi = unit(witness.left);
    let psi = unit(witness.right);
    let phib = orth2(phi);
    let psib = orth2(psi);
    let x22 = inner(&crate::numerics::matrix::kron_vec(&phib, &psib), other);
    x22.norm() / vec_norm(other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::c;

    fn v4(x: [f64; 4]) -> [C64; 4] {
        x.map(|r| c(r, 0.0))
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_state(&[2, 2, 2], &mut RandomSource::new(1));
        let b = random_state(&[2, 2, 2], &mut RandomSource::new(1));
        assert_eq!(a, b);
        let s = random_state(&[3, 4], &mut RandomSource::new(5));
        assert_eq!(s.amps().len(), 12);
        let f = random_ilo(2, &mut RandomSource::new(7), 1e3);
        let g = random_ilo(2, &mut RandomSource::new(7), 1e3);
        assert_eq!(f, g);
    }

    #[test]
    fn split_gives_distinct_streams() {
        let mut a = RandomSource::new(9);
        let mut b = a.split();
        assert_ne!(a.normal(), b.normal());
    }

    #[test]
    fn ilo_respects_cap_and_inverts() {
        let mut src = RandomSource::new(21);
        for dim in 2..5 {
            for _ in 0..20 {
                let f = random_ilo(dim, &mut src, 10.0);
                let s = svd(&f).unwrap();
                assert!(s.sigma[0] / s.sigma[dim - 1] <= 10.0);
                let prod = &f * &f.inverse().unwrap();
                assert!(prod.sub(&CMatrix::identity(dim)).frobenius_norm() < 1e-10);
            }
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary2(&mut RandomSource::new(4));
        let p = u.adjoint().mul(&u);
        assert!(p.add(&Mat2::identity().scale(c(-1.0, 0.0))).frobenius_norm() < 1e-14);
    }

    #[test]
    fn brute_force_fixtures() {
        let e11 = v4([1.0, 0.0, 0.0, 0.0]);
        let e22 = v4([0.0, 0.0, 0.0, 1.0]);
        let e12 = v4([0.0, 1.0, 0.0, 0.0]);
        let psi = v4([0.0, 1.0, 1.0, 0.0]);
        assert_eq!(brute_product_count(&e11, &e22, 10_000).unwrap(), ProductCount::Two);
        assert_eq!(brute_product_count(&psi, &e11, 10_000).unwrap(), ProductCount::One);
        assert_eq!(brute_product_count(&e11, &e12, 10_000).unwrap(), ProductCount::Many);
        assert_eq!(brute_product_count(&e11, &e11, 10_000).unwrap_err(), Error::DependentGenerators);
    }

    #[test]
    fn brute_force_separates_close_roots() {
        // products e1⊗e1 and (e1 + 1e-3 e2)⊗(e1 + 1e-3 e2)
        let a = [c(1.0, 0.0), c(1e-3, 0.0)];
        let w2 = crate::numerics::matrix::kron_vec(&a, &a);
        let w2: [C64; 4] = w2.try_into().unwrap();
        let e11 = v4([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(brute_product_count(&e11, &w2, 10_000).unwrap(), ProductCount::Two);
    }

    #[test]
    fn companion_defect_on_w_span() {
        let wit = ProductVector {
            left: [c(1.0, 0.0), c(0.0, 0.0)],
            right: [c(1.0, 0.0), c(0.0, 0.0)],
        };
        assert!(companion_defect(&wit, &v4([0.0, 1.0, 1.0, 0.0])) < 1e-15);
        assert!(companion_defect(&wit, &v4([0.0, 0.0, 0.0, 1.0])) > 0.99);
    }
}

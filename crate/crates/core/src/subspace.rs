//! One- and two-dimensional subspaces of ℂ²⊗ℂ² and their product vectors.
//!
//! Vectors are indexed `(11, 12, 21, 22)` in the `e_i ⊗ e_j` basis.

use num_complex::Complex64 as C64;
use num_traits::{Float, Zero};

use crate::numerics::forms::{solve_quadratic, BinaryForm, ProjPoint, QuadraticRoots};
use crate::numerics::matrix::{inner, kron_vec, vec_norm};
use crate::numerics::{Mat2, TolerancePolicy};
use crate::{Error, Result};

/// `[w₁ w₂]` for `w = e₁⊗w₁ + e₂⊗w₂`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceMatrix(pub Mat2);

pub fn slice(w: &[C64; 4]) -> SliceMatrix {
    SliceMatrix(Mat2::from_cols([w[0], w[1]], [w[2], w[3]]))
}

impl SliceMatrix {
    pub fn to_vector(&self) -> [C64; 4] {
        let m = self.0 .0;
        [m[0][0], m[1][0], m[0][1], m[1][1]]
    }

    /// `|det| / ‖W‖_F²`, which lies within a factor 2 of `σ₂/σ₁`.
    pub fn rank_ratio(&self) -> f64 {
        let n = self.0.frobenius_norm();
        if n == 0.0 {
            0.0
        } else {
            self.0.det().norm() / (n * n)
        }
    }

    /// 0, 1 or 2, using the relative rank threshold.
    pub fn rank(&self, pol: &TolerancePolicy) -> usize {
        if self.0.frobenius_norm() == 0.0 {
            0
        } else if self.rank_ratio() <= pol.rank_rel_tol {
            1
        } else {
            2
        }
    }
}

/// A product vector `left ⊗ right`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductVector {
    pub left: [C64; 2],
    pub right: [C64; 2],
}

impl ProductVector {
    pub fn to_vector(&self) -> [C64; 4] {
        let v = kron_vec(&self.left, &self.right);
        [v[0], v[1], v[2], v[3]]
    }

    /// Best rank-one factorization of `w`: the largest row of the 2×2
    /// reshape gives `right`, the projections onto it give `left`.
    pub fn factor(w: &[C64; 4]) -> ProductVector {
        let rows = [[w[0], w[1]], [w[2], w[3]]];
        let right = if vec_norm(&rows[0]) >= vec_norm(&rows[1]) { rows[0] } else { rows[1] };
        let n2 = vec_norm(&right).powi(2);
        if n2 == 0.0 {
            return ProductVector {
                left: [C64::zero(); 2],
                right,
            };
        }
        let left = [inner(&right, &rows[0]) / n2, inner(&right, &rows[1]) / n2];
        ProductVector { left, right }
    }
}

/// Projective roots of `det(α W1 + β W2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootReport {
    InfinitelyMany,
    TwoDistinct(ProjPoint, ProjPoint),
    OneDouble(ProjPoint),
}

/// Which of the span shapes a subspace has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureTag {
    ProductLine,
    EntangledLine,
    LeftFactor,
    RightFactor,
    TwoProducts,
    OneProductPlusEntangled,
}

impl StructureTag {
    pub fn name(&self) -> &'static str {
        match self {
            StructureTag::ProductLine => "ProductLine",
            StructureTag::EntangledLine => "EntangledLine",
            StructureTag::LeftFactor => "LeftFactor",
            StructureTag::RightFactor => "RightFactor",
            StructureTag::TwoProducts => "TwoProducts",
            StructureTag::OneProductPlusEntangled => "OneProductPlusEntangled",
        }
    }
}

/// A subspace shape together with its product witnesses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SubspaceStructure {
    /// `span{φ⊗ψ}`.
    ProductLine(ProductVector),
    /// `span{Ψ}` with `Ψ` entangled.
    EntangledLine,
    /// `φ ⊗ ℂ²`; carries `φ`.
    LeftFactor([C64; 2]),
    /// `ℂ² ⊗ ψ`; carries `ψ`.
    RightFactor([C64; 2]),
    /// `span{φ₁⊗ψ₁, φ₂⊗ψ₂}`.
    TwoProducts([ProductVector; 2]),
    /// `span{φ⊗ψ, Ψ}` with a single product direction.
    OneProductPlusEntangled(ProductVector),
}

impl SubspaceStructure {
    pub fn tag(&self) -> StructureTag {
        match self {
            SubspaceStructure::ProductLine(_) => StructureTag::ProductLine,
            SubspaceStructure::EntangledLine => StructureTag::EntangledLine,
            SubspaceStructure::LeftFactor(_) => StructureTag::LeftFactor,
            SubspaceStructure::RightFactor(_) => StructureTag::RightFactor,
            SubspaceStructure::TwoProducts(_) => StructureTag::TwoProducts,
            SubspaceStructure::OneProductPlusEntangled(_) => StructureTag::OneProductPlusEntangled,
        }
    }
}

/// `sin²` of the angle between two generators; zero when dependent.
pub(crate) fn gram_ratio(w1: &[C64; 4], w2: &[C64; 4]) -> f64 {
    let (n1, n2) = (vec_norm(w1), vec_norm(w2));
    if n1 == 0.0 || n2 == 0.0 {
        return 0.0;
    }
    1.0 - (inner(w1, w2).norm() / (n1 * n2)).powi(2)
}

fn check_independent(w1: &[C64; 4], w2: &[C64; 4], pol: &TolerancePolicy) -> Result<()> {
    if gram_ratio(w1, w2) <= pol.rank_rel_tol {
        return Err(Error::DependentGenerators);
    }
    Ok(())
}

/// Pencil quadratic `[det W1, det(W1+W2) − det W1 − det W2, det W2]`.
pub fn pencil(w1: &SliceMatrix, w2: &SliceMatrix) -> [C64; 3] {
    let f = BinaryForm::det_pencil(&w1.0, &w2.0);
    [f.coeffs[0], f.coeffs[1], f.coeffs[2]]
}

pub(crate) fn pencil_scale(w1: &SliceMatrix, w2: &SliceMatrix) -> f64 {
    (w1.0.frobenius_norm() + w2.0.frobenius_norm()).powi(2)
}

pub fn product_roots(w1: &SliceMatrix, w2: &SliceMatrix, pol: &TolerancePolicy) -> Result<RootReport> {
    check_independent(&w1.to_vector(), &w2.to_vector(), pol)?;
    let q = pencil(w1, w2);
    let zero = pol.rank_rel_tol * pencil_scale(w1, w2);
    if q.iter().all(|z| z.norm() <= zero) {
        return Ok(RootReport::InfinitelyMany);
    }
    Ok(match solve_quadratic(q, 0.0, pol.deg_tol) {
        QuadraticRoots::Distinct(p, r) => RootReport::TwoDistinct(p, r),
        QuadraticRoots::Double(p) => RootReport::OneDouble(p),
        QuadraticRoots::Vanishing => RootReport::InfinitelyMany,
    })
}

pub(crate) fn combine(p: ProjPoint, w1: &[C64; 4], w2: &[C64; 4]) -> [C64; 4] {
    core::array::from_fn(|i| p.0 * w1[i] + p.1 * w2[i])
}

/// Common factor of a span made entirely of product vectors.
///
/// Samples the span at `(1:0)`, `(0:1)` and `(1:1)` and compares the
/// factors pairwise; the side whose worst pairwise overlap is closer to 1
/// wins.
pub(crate) fn common_factor(w1: &[C64; 4], w2: &[C64; 4]) -> SubspaceStructure {
    let one = C64::new(1.0, 0.0);
    let samples = [
        ProductVector::factor(w1),
        ProductVector::factor(w2),
        ProductVector::factor(&combine(ProjPoint(one, one), w1, w2)),
    ];
    let cos = |f: &dyn Fn(&ProductVector) -> [C64; 2]| {
        let mut worst = 1.0f64;
        for i in 0..3 {
            for j in i + 1..3 {
                let (a, b) = (f(&samples[i]), f(&samples[j]));
                worst = worst.min(inner(&a, &b).norm() / (vec_norm(&a) * vec_norm(&b)));
            }
        }
        worst
    };
    let left_cos = cos(&|p| p.left);
    let right_cos = cos(&|p| p.right);
    if left_cos >= right_cos {
        SubspaceStructure::LeftFactor(samples[0].left)
    } else {
        SubspaceStructure::RightFactor(samples[0].right)
    }
}

pub fn classify_span(w1: &[C64; 4], w2: &[C64; 4], pol: &TolerancePolicy) -> Result<SubspaceStructure> {
    let roots = product_roots(&slice(w1), &slice(w2), pol)?;
    Ok(match roots {
        RootReport::InfinitelyMany => common_factor(w1, w2),
        RootReport::TwoDistinct(p, r) => SubspaceStructure::TwoProducts([
            ProductVector::factor(&combine(p, w1, w2)),
            ProductVector::factor(&combine(r, w1, w2)),
        ]),
        RootReport::OneDouble(p) => {
            SubspaceStructure::OneProductPlusEntangled(ProductVector::factor(&combine(p, w1, w2)))
        }
    })
}

pub fn classify_line(w: &[C64; 4], pol: &TolerancePolicy) -> Result<SubspaceStructure> {
    let s = slice(w);
    match s.rank(pol) {
        0 => Err(Error::ZeroVector),
        1 => Ok(SubspaceStructure::ProductLine(ProductVector::factor(w))),
        _ => Ok(SubspaceStructure::EntangledLine),
    }
}

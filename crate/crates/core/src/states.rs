//! Pure states, coefficient matrices and local operators.
//!
//! Amplitudes are stored flat with the first subsystem most significant:
//! the ket `|i₁ i₂ … i_N⟩` (0-based digits) sits at offset
//! `Σ i_k · ∏_{j>k} d_j`. Subsystem indices are 1-based in every public
//! signature.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use num_traits::{Float, Zero};

use crate::numerics::matrix::vec_norm;
use crate::numerics::CMatrix;
use crate::{Error, Result};

/// An unnormalized pure state of `N` subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl PureState {
    /// Validates and stores the amplitudes verbatim.
    pub fn new(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::DimensionMismatch("every subsystem needs a positive dimension"));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or(Error::DimensionMismatch("dimension product overflows"))?;
        if total < 2 {
            return Err(Error::DimensionMismatch("state space must have dimension at least 2"));
        }
        if amps.len() != total {
            return Err(Error::DimensionMismatch("amplitude count != product of dims"));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if amps.iter().all(|z| z.is_zero()) {
            return Err(Error::ZeroState);
        }
        Ok(PureState { dims, amps })
    }

    /// Sum of weighted basis kets; each ket lists one 0-based digit per
    /// subsystem.
    pub fn from_kets(dims: &[usize], kets: &[(&[usize], C64)]) -> Result<Self> {
        let total: usize = dims.iter().product();
        let mut amps = vec![C64::zero(); total];
        for (digits, coeff) in kets {
            if digits.len() != dims.len() || digits.iter().zip(dims).any(|(i, d)| i >= d) {
                return Err(Error::DimensionMismatch("ket digits do not fit dims"));
            }
            let off = digits.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i);
            amps[off] += coeff;
        }
        Self::new(dims.to_vec(), amps)
    }

    /// Qubit state `Σ |b⟩` over the given bit strings, e.g.
    /// `PureState::qubits(&["001", "010", "100"])`.
    pub fn qubits(kets: &[&str]) -> Result<Self> {
        let n = kets.first().map_or(0, |k| k.len());
        let digits: Vec<Vec<usize>> = kets
            .iter()
            .map(|k| k.bytes().map(|b| usize::from(b == b'1')).collect())
            .collect();
        if kets.iter().any(|k| k.len() != n || k.bytes().any(|b| b != b'0' && b != b'1')) {
            return Err(Error::InvalidArgument("ket strings must be equal-length bit strings"));
        }
        let terms: Vec<(&[usize], C64)> = digits.iter().map(|d| (d.as_slice(), C64::new(1.0, 0.0))).collect();
        Self::from_kets(&vec![2; n], &terms)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amps)
    }

    fn check_pivot(&self, pivot: usize) -> Result<usize> {
        let n = self.dims.len();
        if pivot == 0 || pivot > n {
            return Err(Error::BadPivot { pivot, n });
        }
        Ok(pivot - 1)
    }

    /// Reshape with subsystem `pivot` (1-based) indexing the rows.
    pub fn coefficient_matrix(&self, pivot: usize) -> Result<CoeffMatrix> {
        let p = self.check_pivot(pivot)?;
        let rows = self.dims[p];
        let cols = self.amps.len() / rows;
        let inner: usize = self.dims[p + 1..].iter().product();
        // flat offset = (outer · d_p + r) · inner + rest, column = outer · inner + rest
        let data = CMatrix::from_fn(rows, cols, |r, col| {
            let (outer, rest) = (col / inner, col % inner);
            self.amps[(outer * rows + r) * inner + rest]
        });
        let col_order = (1..=self.dims.len()).filter(|&k| k != pivot).collect();
        Ok(CoeffMatrix {
            pivot,
            dims: self.dims.clone(),
            col_order,
            matrix: data,
        })
    }

    /// `(F¹ ⊗ … ⊗ F^N) Ψ` by successive mode contractions.
    pub fn apply_local_operators(&self, ops: &LocalOperatorSet) -> Result<PureState> {
        if ops.ops.len() != self.dims.len()
            || ops.ops.iter().zip(&self.dims).any(|(f, &d)| f.rows() != d)
        {
            return Err(Error::DimensionMismatch("operator sizes do not match dims"));
        }
        let mut amps = self.amps.clone();
        for (k, f) in ops.ops.iter().enumerate() {
            amps = contract_mode(&amps, &self.dims, k, f);
        }
        if amps.iter().all(|z| z.is_zero()) {
            return Err(Error::ZeroState);
        }
        Ok(PureState {
            dims: self.dims.clone(),
            amps,
        })
    }

    /// Reorders subsystems: subsystem `k` of the result is subsystem
    /// `order[k]` (1-based) of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<PureState> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        for &o in order {
            if o == 0 || o > n || seen[o - 1] {
                return Err(Error::InvalidArgument("order must be a permutation of 1..=N"));
            }
            seen[o - 1] = true;
        }
        if order.len() != n {
            return Err(Error::InvalidArgument("order must be a permutation of 1..=N"));
        }
        let dims: Vec<usize> = order.iter().map(|&o| self.dims[o - 1]).collect();
        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        let mut amps = vec![C64::zero(); self.amps.len()];
        let mut digits = vec![0usize; n];
        for slot in amps.iter_mut() {
            let src: usize = digits.iter().zip(order).map(|(&i, &o)| i * strides[o - 1]).sum();
            *slot = self.amps[src];
            // odometer over the new dims
            for k in (0..n).rev() {
                digits[k] += 1;
                if digits[k] < dims[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        Ok(PureState { dims, amps })
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let amps = crate::numerics::matrix::kron_vec(&self.amps, &other.amps);
        PureState { dims, amps }
    }
}

fn contract_mode(amps: &[C64], dims: &[usize], k: usize, f: &CMatrix) -> Vec<C64> {
    let d = dims[k];
    let inner: usize = dims[k + 1..].iter().product();
    let outer = amps.len() / (d * inner);
    let mut out = vec![C64::zero(); amps.len()];
    for o in 0..outer {
        for r in 0..d {
            for j in 0..d {
                let fr = f[(r, j)];
                if fr.is_zero() {
                    continue;
                }
                let src = (o * d + j) * inner;
                let dst = (o * d + r) * inner;
                for t in 0..inner {
                    out[dst + t] += fr * amps[src + t];
                }
            }
        }
    }
    out
}

/// The reshaped amplitudes of a state for one subsystem against the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMatrix {
    /// 1-based subsystem indexing the rows.
    pub pivot: usize,
    /// Dimensions of the original state.
    pub dims: Vec<usize>,
    /// Remaining subsystems, in the order whose lexicographic product
    /// indexes the columns.
    pub col_order: Vec<usize>,
    pub matrix: CMatrix,
}

impl CoeffMatrix {
    /// Inverse of [`PureState::coefficient_matrix`].
    pub fn flatten(&self) -> Vec<C64> {
        let p = self.pivot - 1;
        let rows = self.dims[p];
        let inner: usize = self.dims[p + 1..].iter().product();
        let mut amps = vec![C64::zero(); self.matrix.rows() * self.matrix.cols()];
        for r in 0..rows {
            for col in 0..self.matrix.cols() {
                let (outer, rest) = (col / inner, col % inner);
                amps[(outer * rows + r) * inner + rest] = self.matrix[(r, col)];
            }
        }
        amps
    }
}

/// One invertible operator per subsystem.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperatorSet {
    ops: Vec<CMatrix>,
    abs_dets: Vec<f64>,
}

impl LocalOperatorSet {
    /// Rejects non-square, non-finite or numerically singular operators.
    /// An operator is singular when `|det F| ≤ ε · ‖F‖_F^d`.
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let mut abs_dets = Vec::with_capacity(ops.len());
        for (i, f) in ops.iter().enumerate() {
            if !f.is_square() || f.rows() == 0 {
                return Err(Error::DimensionMismatch("local operators must be square"));
            }
            if !f.is_finite() {
                return Err(Error::NonFinite);
            }
            let abs_det = f.det().norm();
            let floor = f64::EPSILON * f.frobenius_norm().powi(f.rows() as i32);
            if !(abs_det > floor) {
                return Err(Error::SingularOperator { index: i + 1, abs_det });
            }
            abs_dets.push(abs_det);
        }
        Ok(LocalOperatorSet { ops, abs_dets })
    }

    /// Identity operators for the given dims.
    pub fn identity(dims: &[usize]) -> Self {
        let ops: Vec<CMatrix> = dims.iter().map(|&d| CMatrix::identity(d)).collect();
        let abs_dets = vec![1.0; ops.len()];
        LocalOperatorSet { ops, abs_dets }
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn abs_dets(&self) -> &[f64] {
        &self.abs_dets
    }
}

//! Bipartite states: Schmidt decomposition and Schmidt-rank classes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::numerics::{numerical_rank, svd, TolerancePolicy};
use crate::states::PureState;
use crate::{Error, Result};

/// Class `Ψ_k⁺` of a bipartite state, `k` being the Schmidt rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteClass {
    pub schmidt_rank: usize,
}

impl BipartiteClass {
    /// Report label. Two-qubit states use `"00"` and `"Psi+"`, everything
    /// else `"Psi+_k"`.
    pub fn label(&self, dims: [usize; 2]) -> String {
        match (dims, self.schmidt_rank) {
            ([2, 2], 1) => "00".into(),
            ([2, 2], 2) => "Psi+".into(),
            (_, k) => format!("Psi+_{k}"),
        }
    }
}

/// `Ψ = Σ_k λ_k · left_k ⊗ right_k` with only the numerically nonzero terms.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtForm {
    pub coeffs: Vec<f64>,
    pub left: Vec<Vec<C64>>,
    pub right: Vec<Vec<C64>>,
}

impl SchmidtForm {
    /// Amplitudes of `Σ λ_k left_k ⊗ right_k`.
    pub fn reconstruct(&self) -> Vec<C64> {
        let n = self.left[0].len() * self.right[0].len();
        let mut out = alloc::vec![C64::new(0.0, 0.0); n];
        for ((l, u), v) in self.coeffs.iter().zip(&self.left).zip(&self.right) {
            for (o, z) in out.iter_mut().zip(crate::numerics::matrix::kron_vec(u, v)) {
                *o += z * *l;
            }
        }
        out
    }
}

fn two_parties(state: &PureState) -> Result<()> {
    match state.n_subsystems() {
        2 => Ok(()),
        found => Err(Error::WrongArity { expected: "2", found }),
    }
}

pub fn schmidt(state: &PureState, pol: &TolerancePolicy) -> Result<SchmidtForm> {
    two_parties(state)?;
    let s = svd(&state.coefficient_matrix(1)?.matrix)?;
    let k = numerical_rank(&s.sigma, pol)?;
    // Q = V Σ W† means Ψ = Σ σ_k v_k ⊗ conj(w_k)
    Ok(SchmidtForm {
        coeffs: s.sigma[..k].to_vec(),
        left: (0..k).map(|i| s.left(i)).collect(),
        right: (0..k).map(|i| s.right(i).iter().map(|z| z.conj()).collect()).collect(),
    })
}

pub fn classify_bipartite(state: &PureState, pol: &TolerancePolicy) -> Result<BipartiteClass> {
    two_parties(state)?;
    let s = svd(&state.coefficient_matrix(1)?.matrix)?;
    Ok(BipartiteClass {
        schmidt_rank: numerical_rank(&s.sigma, pol)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{c, inner, kron_vec, vec_norm};
    use crate::states::LocalOperatorSet;
    use crate::testkit::{random_ilo, random_state, RandomSource};
    use alloc::vec;
    use proptest::prelude::*;

    fn diag_state(d1: usize, d2: usize, coeffs: &[f64]) -> PureState {
        let kets: Vec<([usize; 2], C64)> = coeffs.iter().enumerate().map(|(i, &x)| ([i, i], c(x, 0.0))).collect();
        let terms: Vec<(&[usize], C64)> = kets.iter().map(|(d, z)| (&d[..], *z)).collect();
        PureState::from_kets(&[d1, d2], &terms).unwrap()
    }

    #[test]
    fn schmidt_examples() {
        let pol = TolerancePolicy::default();
        assert_eq!(schmidt(&diag_state(2, 2, &[1.0, 1.0]), &pol).unwrap().coeffs, vec![1.0, 1.0]);
        let prod = PureState::from_kets(&[3, 4], &[(&[0, 1], c(1.0, 0.0))]).unwrap();
        assert_eq!(schmidt(&prod, &pol).unwrap().coeffs, vec![1.0]);
        let f = schmidt(&diag_state(2, 2, &[2.0, 1.0]), &pol).unwrap();
        assert_eq!(f.coeffs, vec![2.0, 1.0]);
    }

    #[test]
    fn classify_examples() {
        let pol = TolerancePolicy::default();
        let bell = diag_state(2, 2, &[1.0, 1.0]);
        let k = classify_bipartite(&bell, &pol).unwrap();
        assert_eq!(k.schmidt_rank, 2);
        assert_eq!(k.label([2, 2]), "Psi+");

        let mut src = RandomSource::new(11);
        let phi = random_state(&[5], &mut src);
        let psi = random_state(&[7], &mut src);
        let prod = PureState::new(vec![5, 7], kron_vec(phi.amps(), psi.amps())).unwrap();
        let k = classify_bipartite(&prod, &pol).unwrap();
        assert_eq!((k.schmidt_rank, k.label([5, 7])), (1, "Psi+_1".into()));

        let three = diag_state(3, 4, &[1.0, 1.0, 1.0]);
        assert_eq!(classify_bipartite(&three, &pol).unwrap().schmidt_rank, 3);

        let ghz = PureState::qubits(&["000", "111"]).unwrap();
        assert_eq!(
            classify_bipartite(&ghz, &pol).unwrap_err(),
            Error::WrongArity { expected: "2", found: 3 }
        );
    }

    #[test]
    fn schmidt_bases_orthonormal_and_reconstruct() {
        let pol = TolerancePolicy::default();
        let mut src = RandomSource::new(3);
        let s = random_state(&[3, 5], &mut src);
        let f = schmidt(&s, &pol).unwrap();
        assert_eq!(f.coeffs.len(), 3);
        for basis in [&f.left, &f.right] {
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    let g = inner(&basis[i], &basis[j]);
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - c(want, 0.0)).norm() < 1e-10);
                }
            }
        }
        let diff: Vec<C64> = f.reconstruct().iter().zip(s.amps()).map(|(a, b)| a - b).collect();
        assert!(vec_norm(&diff) <= pol.residual_tol * s.norm());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn class_is_slocc_invariant(seed in any::<u64>(), d1 in 2usize..5, d2 in 2usize..5, k in 1usize..5) {
            let pol = TolerancePolicy::default();
            let k = k.min(d1).min(d2);
            let base = diag_state(d1, d2, &vec![1.0; k]);
            let mut src = RandomSource::new(seed);
            let ops = LocalOperatorSet::new(vec![random_ilo(d1, &mut src, 1e3), random_ilo(d2, &mut src, 1e3)]).unwrap();
            let moved = base.apply_local_operators(&ops).unwrap();
            let cls = classify_bipartite(&moved, &pol).unwrap();
            prop_assert_eq!(cls.schmidt_rank, k);
            prop_assert_eq!(schmidt(&moved, &pol).unwrap().coeffs.len(), k);
        }

        #[test]
        fn products_have_rank_one(seed in any::<u64>(), d1 in 1usize..6, d2 in 2usize..6) {
            let pol = TolerancePolicy::default();
            let mut src = RandomSource::new(seed);
            let phi = random_state(&[d1.max(2)], &mut src);
            let psi = random_state(&[d2], &mut src);
            let s = PureState::new(vec![d1.max(2), d2], kron_vec(phi.amps(), psi.amps())).unwrap();
            prop_assert_eq!(classify_bipartite(&s, &pol).unwrap().schmidt_rank, 1);
        }
    }
}

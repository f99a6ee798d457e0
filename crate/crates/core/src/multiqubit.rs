//! Four and more qubits: right-singular-subspace descriptors, product
//! support detection and the class-count bound.
//!
//! For an `N`-qubit state the coefficient matrix of qubit 1 is
//! `2 × 2^{N−1}`; its right singular subspace is spanned by one or two
//! `(N−1)`-qubit vectors. Class labels inside a descriptor number the qubits
//! of those vectors, so label position `k` is qubit `k + 1` of the state.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_complex::Complex64 as C64;
use num_traits::{Float, Zero};

use crate::numerics::forms::{solve_quadratic, BinaryForm, ProjPoint, QuadraticRoots};
use crate::numerics::matrix::vec_norm;
use crate::numerics::{numerical_rank, svd, CMatrix, Mat2, TolerancePolicy};
use crate::states::PureState;
use crate::testkit::RandomSource;
use crate::tripartite::{classify3, TripartiteClass};
use crate::{Error, Result};

/// Depth limit and sampling seed for [`descriptor_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DescriptorConfig {
    /// Largest accepted number of qubits.
    pub max_qubits: usize,
    /// Seed of the generic sample points.
    pub seed: u64,
}

impl Default for DescriptorConfig {
    fn default() -> Self {
        DescriptorConfig {
            max_qubits: 4,
            seed: 0x5eed_0004,
        }
    }
}

/// Class of an `(N−1)`-qubit vector: a named class for three qubits,
/// otherwise its own descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassLabel {
    Tri(TripartiteClass),
    Multi(Box<StructureDescriptor>),
}

impl ClassLabel {
    pub fn signature(&self) -> Signature {
        match self {
            ClassLabel::Tri(c) => Signature::Tri(*c),
            ClassLabel::Multi(d) => d.signature(),
        }
    }
}

/// Where on the projective line a class is attained.
#[derive(Clone, Debug, PartialEq)]
pub enum Occurrence {
    /// On a dense subset of the line.
    Generic,
    /// Only at these points, in the basis of the two generators.
    Exceptional(Vec<ProjPoint>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileEntry {
    pub class: ClassLabel,
    pub occurrence: Occurrence,
}

/// Continuous data that does not enter the broad-sense comparison.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ContinuousParams {
    /// Cross-ratio of the exceptional points, in listed order, when there
    /// are exactly four.
    pub cross_ratio: Option<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureDescriptor {
    pub n_qubits: usize,
    /// Dimension of the right singular subspace of the qubit-1 matrix.
    pub dim_w: usize,
    /// Class of the single generator when `dim_w == 1`.
    pub line_class: Option<ClassLabel>,
    /// Classes along `{α g₁ + β g₂}` when `dim_w == 2`; the generic entry
    /// comes first.
    pub profile: Vec<ProfileEntry>,
    pub continuous_params: ContinuousParams,
}

/// Comparable skeleton of a descriptor: classes, subspace dimension and
/// exceptional-point counts, nothing continuous.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    Tri(TripartiteClass),
    Multi {
        dim_w: usize,
        line: Option<Box<Signature>>,
        /// `(class, None)` for the generic class, `(class, Some(k))` for one
        /// attained at `k` points; sorted.
        profile: Vec<(Signature, Option<usize>)>,
    },
}

impl StructureDescriptor {
    pub fn signature(&self) -> Signature {
        let mut profile: Vec<(Signature, Option<usize>)> = self
            .profile
            .iter()
            .map(|e| {
                let count = match &e.occurrence {
                    Occurrence::Generic => None,
                    Occurrence::Exceptional(p) => Some(p.len()),
                };
                (e.class.signature(), count)
            })
            .collect();
        profile.sort();
        Signature::Multi {
            dim_w: self.dim_w,
            line: self.line_class.as_ref().map(|c| Box::new(c.signature())),
            profile,
        }
    }

    pub fn generic_class(&self) -> Option<&ClassLabel> {
        self.profile
            .iter()
            .find(|e| e.occurrence == Occurrence::Generic)
            .map(|e| &e.class)
    }

    pub fn exceptional_count(&self) -> usize {
        self.profile
            .iter()
            .map(|e| match &e.occurrence {
                Occurrence::Exceptional(p) => p.len(),
                Occurrence::Generic => 0,
            })
            .sum()
    }
}

/// Broad-sense equality: same subspace dimension and the same profile as a
/// multiset of classes with their generic/exceptional structure.
pub fn same_broad_class(a: &StructureDescriptor, b: &StructureDescriptor) -> Result<bool> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::ArityMismatch(a.n_qubits, b.n_qubits));
    }
    Ok(a.signature() == b.signature())
}

pub fn descriptor(state: &PureState, pol: &TolerancePolicy) -> Result<StructureDescriptor> {
    descriptor_with(state, pol, &DescriptorConfig::default())
}

pub fn descriptor_with(state: &PureState, pol: &TolerancePolicy, cfg: &DescriptorConfig) -> Result<StructureDescriptor> {
    let n = state.n_subsystems();
    if n < 4 {
        return Err(Error::WrongArity { expected: ">= 4", found: n });
    }
    if !state.is_qubits() {
        return Err(Error::NotQubits);
    }
    if n > cfg.max_qubits {
        return Err(Error::UnsupportedDepth { n, max: cfg.max_qubits });
    }
    let s = svd(&state.coefficient_matrix(1)?.matrix)?;
    let dim_w = numerical_rank(&s.sigma, pol)?;
    let gens: Vec<Vec<C64>> = (0..dim_w).map(|k| s.right(k).iter().map(|z| z.conj()).collect()).collect();

    if dim_w == 1 {
        return Ok(StructureDescriptor {
            n_qubits: n,
            dim_w,
            line_class: Some(class_of(&gens[0], pol, cfg)?),
            profile: Vec::new(),
            continuous_params: ContinuousParams::default(),
        });
    }

    let line = Line::new(&gens[0], &gens[1]);
    let generic = generic_class(&line, pol, cfg)?;
    let generic_sig = generic.signature();

    let mut exceptional: Vec<(ClassLabel, ProjPoint)> = Vec::new();
    let drops = rank_drop_points(&line, pol)?;
    if n == 4 {
        for (p, parts) in &drops.points {
            let mut set: Vec<usize> = drops.everywhere.clone();
            set.extend(parts);
            set.sort_unstable();
            set.dedup();
            let class = match set.as_slice() {
                [i] => TripartiteClass::factored(*i).expect("partition index"),
                _ => TripartiteClass::C000,
            };
            if class != tri_of(&generic) {
                exceptional.push((ClassLabel::Tri(class), *p));
            }
        }
        for p in w_points(&line, pol) {
            if drops.points.iter().any(|(q, _)| q.distance(&p) <= 1e-4) {
                continue;
            }
            let class = ClassLabel::Tri(classify3(&line.state_at(p)?, pol)?.class);
            if class.signature() != generic_sig {
                exceptional.push((class, p));
            }
        }
    } else {
        for (p, _) in &drops.points {
            let class = class_of(&line.at(*p), pol, cfg)?;
            if class.signature() != generic_sig {
                exceptional.push((class, *p));
            }
        }
    }

    let mut profile = vec![ProfileEntry {
        class: generic,
        occurrence: Occurrence::Generic,
    }];
    for (class, p) in exceptional {
        let sig = class.signature();
        match profile
            .iter_mut()
            .skip(1)
            .find(|e| e.class.signature() == sig)
        {
            Some(ProfileEntry {
                occurrence: Occurrence::Exceptional(pts),
                ..
            }) => pts.push(p),
            _ => profile.push(ProfileEntry {
                class,
                occurrence: Occurrence::Exceptional(vec![p]),
            }),
        }
    }
    let points: Vec<ProjPoint> = profile
        .iter()
        .flat_map(|e| match &e.occurrence {
            Occurrence::Exceptional(p) => p.clone(),
            Occurrence::Generic => Vec::new(),
        })
        .collect();
    let cross_ratio = (points.len() == 4).then(|| {
        let br = |a: &ProjPoint, b: &ProjPoint| a.0 * b.1 - a.1 * b.0;
        let [p1, p2, p3, p4] = [points[0], points[1], points[2], points[3]];
        br(&p1, &p3) * br(&p2, &p4) / (br(&p1, &p4) * br(&p2, &p3))
    });
    Ok(StructureDescriptor {
        n_qubits: n,
        dim_w,
        line_class: None,
        profile,
        continuous_params: ContinuousParams { cross_ratio },
    })
}

fn tri_of(label: &ClassLabel) -> TripartiteClass {
    match label {
        ClassLabel::Tri(c) => *c,
        // only reached for three-qubit lines
        ClassLabel::Multi(_) => unreachable!("three-qubit line with a multi-qubit label"),
    }
}

fn class_of(v: &[C64], pol: &TolerancePolicy, cfg: &DescriptorConfig) -> Result<ClassLabel> {
    let n = v.len().trailing_zeros() as usize;
    let st = PureState::new(vec![2; n], v.to_vec())?;
    if n == 3 {
        Ok(ClassLabel::Tri(classify3(&st, pol)?.class))
    } else {
        Ok(ClassLabel::Multi(Box::new(descriptor_with(&st, pol, cfg)?)))
    }
}

/// The projective line `{α g₁ + β g₂}` of `(N−1)`-qubit vectors.
struct Line {
    g1: Vec<C64>,
    g2: Vec<C64>,
    n: usize,
}

impl Line {
    fn new(g1: &[C64], g2: &[C64]) -> Self {
        Line {
            g1: g1.to_vec(),
            g2: g2.to_vec(),
            n: g1.len().trailing_zeros() as usize,
        }
    }

    fn at(&self, p: ProjPoint) -> Vec<C64> {
        let p = p.unit();
        self.g1.iter().zip(&self.g2).map(|(a, b)| p.0 * a + p.1 * b).collect()
    }

    fn state_at(&self, p: ProjPoint) -> Result<PureState> {
        PureState::new(vec![2; self.n], self.at(p))
    }

    fn matrices(&self, partition: usize) -> Result<(CMatrix, CMatrix)> {
        let a = PureState::new(vec![2; self.n], self.g1.clone())?.coefficient_matrix(partition)?;
        let b = PureState::new(vec![2; self.n], self.g2.clone())?.coefficient_matrix(partition)?;
        Ok((a.matrix, b.matrix))
    }

    fn scale(&self) -> f64 {
        vec_norm(&self.g1) + vec_norm(&self.g2)
    }
}

/// Majority class over three seeded random points of the line.
fn generic_class(line: &Line, pol: &TolerancePolicy, cfg: &DescriptorConfig) -> Result<ClassLabel> {
    let mut src = RandomSource::new(cfg.seed);
    let mut seen: Vec<(ClassLabel, usize)> = Vec::new();
    for _ in 0..3 {
        let p = ProjPoint(src.complex_normal(), src.complex_normal());
        let class = class_of(&line.at(p), pol, cfg)?;
        let sig = class.signature();
        match seen.iter_mut().find(|(c, _)| c.signature() == sig) {
            Some((_, k)) => *k += 1,
            None => seen.push((class, 1)),
        }
    }
    // first class to reach the largest count wins ties
    let best = seen.iter().map(|(_, k)| *k).max().unwrap_or(0);
    let idx = seen.iter().position(|(_, k)| *k == best).expect("three samples");
    Ok(seen.swap_remove(idx).0)
}

struct RankDrops {
    /// Partitions (1-based) whose matrix has rank ≤ 1 on the whole line.
    everywhere: Vec<usize>,
    /// Isolated rank-drop points with the partitions dropping there.
    points: Vec<(ProjPoint, Vec<usize>)>,
}

/// Common roots of the 2×2 minors of `α A_i + β B_i` for every partition.
fn rank_drop_points(line: &Line, pol: &TolerancePolicy) -> Result<RankDrops> {
    let s2 = line.scale().powi(2);
    let mut drops = RankDrops {
        everywhere: Vec::new(),
        points: Vec::new(),
    };
    for part in 1..=line.n {
        let (a, b) = line.matrices(part)?;
        let k = a.cols();
        let mut minors = Vec::with_capacity(k * (k - 1) / 2);
        for j in 0..k {
            for l in j + 1..k {
                let p = Mat2::new(a[(0, j)], a[(0, l)], a[(1, j)], a[(1, l)]);
                let q = Mat2::new(b[(0, j)], b[(0, l)], b[(1, j)], b[(1, l)]);
                minors.push(BinaryForm::det_pencil(&p, &q));
            }
        }
        let biggest = minors
            .iter()
            .max_by(|x, y| x.norm1().total_cmp(&y.norm1()))
            .expect("at least one minor");
        if biggest.norm1() <= pol.rank_rel_tol * s2 {
            drops.everywhere.push(part);
            continue;
        }
        let q = [biggest.coeffs[0], biggest.coeffs[1], biggest.coeffs[2]];
        let candidates = match solve_quadratic(q, 0.0, pol.deg_tol) {
            QuadraticRoots::Distinct(x, y) => vec![x, y],
            QuadraticRoots::Double(x) => vec![x],
            QuadraticRoots::Vanishing => Vec::new(),
        };
        for p in candidates {
            let u = p.unit();
            if minors.iter().all(|m| m.eval(u).norm() <= 1e-7 * s2) {
                match drops.points.iter_mut().find(|(r, _)| r.distance(&p) <= 1e-5) {
                    Some((_, parts)) => parts.push(part),
                    None => drops.points.push((p, vec![part])),
                }
            }
        }
    }
    Ok(drops)
}

/// Roots of the discriminant quartic of a three-qubit line: the points
/// where the slice pencil of the qubit-1 matrix degenerates. Empty when the
/// quartic vanishes identically.
fn w_points(line: &Line, pol: &TolerancePolicy) -> Vec<ProjPoint> {
    // rows of C^(1)(g) are the 4-vectors g[0..4] and g[4..8]; their slices
    // are linear in (α, β)
    let sl = |g: &[C64], r: usize| Mat2::from_cols([g[4 * r], g[4 * r + 1]], [g[4 * r + 2], g[4 * r + 3]]);
    let (x1, y1) = (sl(&line.g1, 0), sl(&line.g2, 0));
    let (x2, y2) = (sl(&line.g1, 1), sl(&line.g2, 1));
    let a = BinaryForm::det_pencil(&x1, &y1);
    let c = BinaryForm::det_pencil(&x2, &y2);
    let sum = BinaryForm::det_pencil(&x1.add(&x2), &y1.add(&y2));
    let b = BinaryForm::new(
        sum.coeffs
            .iter()
            .zip(&a.coeffs)
            .zip(&c.coeffs)
            .map(|((s, x), y)| s - x - y)
            .collect(),
    );
    let d = b.mul(&b).sub(&a.mul(&c).scale(C64::new(4.0, 0.0)));
    if d.norm1() <= pol.deg_tol * line.scale().powi(4) {
        return Vec::new();
    }
    d.distinct_roots(1e-4).into_iter().map(|(p, _)| p).collect()
}

/// A single-qubit factor shared by the whole state.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSupport {
    /// 1-based qubit carrying the factor (never the pivot qubit 1).
    pub qubit: usize,
    /// Unit factor vector.
    pub factor: [C64; 2],
    /// The state with that qubit contracted against `factor`.
    pub reduced: PureState,
}

/// Looks for a qubit `p ≥ 2` on which every right singular vector of the
/// qubit-1 matrix carries the same factor. Pivot factorization shows up as
/// `dim_w == 1` in [`descriptor`] instead.
pub fn factor_support(state: &PureState, pol: &TolerancePolicy) -> Option<FactorSupport> {
    let n = state.n_subsystems();
    if n < 3 || !state.is_qubits() {
        return None;
    }
    let s = svd(&state.coefficient_matrix(1).ok()?.matrix).ok()?;
    let r = numerical_rank(&s.sigma, pol).ok()?;
    let gens: Vec<PureState> = (0..r)
        .map(|k| PureState::new(vec![2; n - 1], s.right(k).iter().map(|z| z.conj()).collect()))
        .collect::<Result<_>>()
        .ok()?;
    for qubit in 2..=n {
        let blocks: Vec<CMatrix> = gens
            .iter()
            .map(|g| g.coefficient_matrix(qubit - 1).map(|c| c.matrix))
            .collect::<Result<_>>()
            .ok()?;
        let w = blocks[0].cols();
        let stacked = CMatrix::from_fn(2, w * blocks.len(), |i, j| blocks[j / w][(i, j % w)]);
        let st = svd(&stacked).ok()?;
        if numerical_rank(&st.sigma, pol).ok()? != 1 {
            continue;
        }
        let u = st.left(0);
        let factor = [u[0], u[1]];
        let full = state.coefficient_matrix(qubit).ok()?.matrix;
        let amps: Vec<C64> = (0..full.cols())
            .map(|j| factor[0].conj() * full[(0, j)] + factor[1].conj() * full[(1, j)])
            .collect();
        let reduced = PureState::new(vec![2; n - 1], amps).ok()?;
        return Some(FactorSupport { qubit, factor, reduced });
    }
    None
}

/// `M(N+1) ≤ ½ M(N) (M(N) + 2N + 3)` with its two summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCountBound {
    pub m_n: u64,
    pub n: u64,
    pub bound: BigUint,
    /// `½ M(N) (M(N) + 1)`: two-dimensional subspaces.
    pub genuine: BigUint,
    /// `(N + 1) M(N)`: a class of `N` qubits at one of `N + 1` sites.
    pub degenerate: BigUint,
}

pub fn class_count_bound(m_n: u64, n: u64) -> Result<ClassCountBound> {
    if m_n < 1 {
        return Err(Error::InvalidArgument("the class count must be at least 1"));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("the number of qubits must be at least 2"));
    }
    let m = BigUint::from(m_n);
    let genuine = &m * (&m + 1u32) / 2u32;
    let degenerate = (BigUint::from(n) + 1u32) * &m;
    let bound = &genuine + &degenerate;
    debug_assert_eq!(bound, &m * (&m + BigUint::from(n) * 2u32 + 3u32) / 2u32);
    Ok(ClassCountBound {
        m_n,
        n,
        bound,
        genuine,
        degenerate,
    })
}

/// `|001⟩⊗ψ + |1000⟩ + |1111⟩`, a member of a continuous family of
/// four-qubit states with the same subspace structure.
pub fn example_4partite_canonical(psi: [C64; 2], pol: &TolerancePolicy) -> Result<PureState> {
    let n = vec_norm(&psi);
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    if psi.iter().any(|z| z.norm() <= pol.rank_rel_tol * n) {
        return Err(Error::DegenerateParameter);
    }
    let mut amps = vec![C64::zero(); 16];
    amps[0b0010] = psi[0];
    amps[0b0011] = psi[1];
    amps[0b1000] = C64::new(1.0, 0.0);
    amps[0b1111] = C64::new(1.0, 0.0);
    PureState::new(vec![2; 4], amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::LocalOperatorSet;
    use crate::testkit::random_ilo;

    fn ghz4() -> PureState {
        PureState::qubits(&["0000", "1111"]).unwrap()
    }

    fn cluster() -> PureState {
        let one = C64::new(1.0, 0.0);
        PureState::from_kets(
            &[2; 4],
            &[(&[0, 0, 0, 0], one), (&[0, 0, 1, 1], one), (&[1, 1, 0, 0], one), (&[1, 1, 1, 1], -one)],
        )
        .unwrap()
    }

    fn entries(d: &StructureDescriptor) -> Vec<(Signature, Option<usize>)> {
        match d.signature() {
            Signature::Multi { profile, .. } => profile,
            Signature::Tri(_) => unreachable!(),
        }
    }

    #[test]
    fn ghz4_profile() {
        let pol = TolerancePolicy::default();
        let d = descriptor(&ghz4(), &pol).unwrap();
        assert_eq!(d.dim_w, 2);
        assert_eq!(
            entries(&d),
            vec![
                (Signature::Tri(TripartiteClass::C000), Some(2)),
                (Signature::Tri(TripartiteClass::Ghz), None),
            ]
        );
    }

    #[test]
    fn cluster_profile() {
        // generators e₁⊗Ψ⁺ and e₂⊗Ψ⁻: a generic point is GHZ, the two
        // generators themselves have their first qubit factored
        let pol = TolerancePolicy::default();
        let d = descriptor(&cluster(), &pol).unwrap();
        assert_eq!(d.dim_w, 2);
        assert_eq!(
            entries(&d),
            vec![
                (Signature::Tri(TripartiteClass::C01Psi23), Some(2)),
                (Signature::Tri(TripartiteClass::Ghz), None),
            ]
        );
        assert!(!same_broad_class(&d, &descriptor(&ghz4(), &pol).unwrap()).unwrap());
    }

    #[test]
    fn factored_pivot_gives_a_line() {
        let pol = TolerancePolicy::default();
        let s = PureState::qubits(&["0000", "0111"]).unwrap();
        let d = descriptor(&s, &pol).unwrap();
        assert_eq!(d.dim_w, 1);
        assert_eq!(d.line_class, Some(ClassLabel::Tri(TripartiteClass::Ghz)));
        assert!(same_broad_class(&d, &d).unwrap());
    }

    #[test]
    fn depth_and_arity() {
        let pol = TolerancePolicy::default();
        let five = PureState::qubits(&["00000", "11111"]).unwrap();
        assert_eq!(descriptor(&five, &pol).unwrap_err(), Error::UnsupportedDepth { n: 5, max: 4 });
        let cfg = DescriptorConfig {
            max_qubits: 5,
            ..Default::default()
        };
        let d = descriptor_with(&five, &pol, &cfg).unwrap();
        assert_eq!(d.dim_w, 2);
        let generic = d.generic_class().unwrap();
        assert!(matches!(generic, ClassLabel::Multi(_)));
        assert_eq!(generic.signature(), descriptor(&ghz4(), &pol).unwrap().signature());
        let three = PureState::qubits(&["000"]).unwrap();
        assert!(matches!(descriptor(&three, &pol), Err(Error::WrongArity { .. })));
        let a = descriptor(&ghz4(), &pol).unwrap();
        assert_eq!(same_broad_class(&a, &d).unwrap_err(), Error::ArityMismatch(4, 5));
    }

    #[test]
    fn ilo_orbit_keeps_descriptor() {
        let pol = TolerancePolicy::default();
        let mut src = RandomSource::new(77);
        for base in [ghz4(), cluster()] {
            let d0 = descriptor(&base, &pol).unwrap();
            for _ in 0..10 {
                let ops = LocalOperatorSet::new((0..4).map(|_| random_ilo(2, &mut src, 1e3)).collect()).unwrap();
                let d = descriptor(&base.apply_local_operators(&ops).unwrap(), &pol).unwrap();
                assert!(same_broad_class(&d0, &d).unwrap(), "{d0:?}\n{d:?}");
                assert!(d.exceptional_count() <= 4);
            }
        }
    }

    #[test]
    fn factor_support_examples() {
        let pol = TolerancePolicy::default();
        let s = PureState::qubits(&["0000", "0011"]).unwrap();
        let f = factor_support(&s, &pol).unwrap();
        assert_eq!(f.qubit, 2);
        assert!((f.factor[0].norm() - 1.0).abs() < 1e-12 && f.factor[1].norm() < 1e-12);
        assert_eq!(classify3(&f.reduced, &pol).unwrap().class, TripartiteClass::C01Psi23);
        assert!(factor_support(&ghz4(), &pol).is_none());
        assert!(factor_support(&cluster(), &pol).is_none());
    }

    #[test]
    fn factor_support_matches_generic_class() {
        // qubit 3 carries a fixed factor; the generic class of the subspace
        // must have generator position 2 factored
        let pol = TolerancePolicy::default();
        let mut src = RandomSource::new(5);
        let one = C64::new(1.0, 0.0);
        let base = PureState::from_kets(&[2; 4], &[(&[0, 0, 0, 0], one), (&[1, 1, 0, 1], one)]).unwrap();
        for _ in 0..10 {
            let ops = LocalOperatorSet::new((0..4).map(|_| random_ilo(2, &mut src, 1e3)).collect()).unwrap();
            let s = base.apply_local_operators(&ops).unwrap();
            let f = factor_support(&s, &pol).unwrap();
            assert_eq!(f.qubit, 3);
            let d = descriptor(&s, &pol).unwrap();
            let generic = tri_of(d.generic_class().unwrap());
            assert!(matches!(generic, TripartiteClass::C02Psi13 | TripartiteClass::C000), "{generic:?}");
        }
    }

    #[test]
    fn bound_examples() {
        let b = class_count_bound(6, 3).unwrap();
        assert_eq!(b.bound, BigUint::from(45u32));
        assert_eq!((b.genuine, b.degenerate), (BigUint::from(21u32), BigUint::from(24u32)));
        assert_eq!(class_count_bound(2, 2).unwrap().bound, BigUint::from(9u32));
        assert_eq!(class_count_bound(1, 2).unwrap().bound, BigUint::from(4u32));
        assert!(class_count_bound(0, 3).is_err());
        let big = class_count_bound(u64::MAX, u64::MAX).unwrap();
        assert_eq!(big.bound, big.genuine.clone() + big.degenerate.clone());
    }

    #[test]
    fn family_examples() {
        let pol = TolerancePolicy::default();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let s = example_4partite_canonical([C64::new(h, 0.0), C64::new(h, 0.0)], &pol).unwrap();
        assert_eq!(s.amps().len(), 16);
        // |0010⟩, |0011⟩, |1000⟩, |1111⟩
        assert_eq!(s.amps().iter().filter(|z| !z.is_zero()).count(), 4);
        assert_eq!(
            example_4partite_canonical([C64::new(1.0, 0.0), C64::zero()], &pol).unwrap_err(),
            Error::DegenerateParameter
        );
        let t = example_4partite_canonical([C64::new(0.3, 0.1), C64::new(-0.7, 0.2)], &pol).unwrap();
        let (a, b) = (descriptor(&s, &pol).unwrap(), descriptor(&t, &pol).unwrap());
        assert_eq!(a.dim_w, 2);
        assert!(entries(&a).contains(&(Signature::Tri(TripartiteClass::C000), Some(1))));
        assert_eq!(a.generic_class(), Some(&ClassLabel::Tri(TripartiteClass::Ghz)));
        assert!(same_broad_class(&a, &b).unwrap());
    }
}

//! SLOCC classification of pure states: bipartite Schmidt classes, the six
//! three-qubit classes with explicit reductions to canonical form, and
//! right-singular-subspace descriptors for four and more qubits.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// float methods come from `num_traits::Float` without std; when std is linked
// (tests, or num-traits/std through feature unification) inherent methods
// shadow it
#![allow(unused_imports)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bipartite;
mod error;
pub mod multiqubit;
pub mod numerics;
pub mod states;
pub mod subspace;
pub mod testkit;
pub mod tripartite;

pub use bipartite::{classify_bipartite, schmidt, BipartiteClass, SchmidtForm};
pub use error::{Error, Result};
pub use multiqubit::{
    class_count_bound, descriptor, descriptor_with, example_4partite_canonical, factor_support, same_broad_class,
    ClassCountBound, ClassLabel, DescriptorConfig, StructureDescriptor,
};
pub use numerics::TolerancePolicy;
pub use states::{CoeffMatrix, LocalOperatorSet, PureState};
pub use subspace::{classify_line, classify_span, product_roots, slice, RootReport, StructureTag, SubspaceStructure};
pub use tripartite::{
    canonical_vector, classify3, classify3_with_pivot, reduce_to_canonical, ClassificationReport, IloTriple,
    TripartiteClass,
};

//! Finite posets, orthoposets and representation systems over them.
//!
//! A representation system is a family of posets (views) linked by monotone
//! transformation maps. Its sum glues the views into one poset, and the
//! decomposition goes the other way: an orthoposet is split into its Boolean
//! subalgebras, which form a representation system whose sum gives the
//! orthoposet back when it is orthomodular.

pub mod conditions;
pub mod decompose;
pub mod model;
pub mod order;
pub mod ortho;
pub mod repsys;
pub mod sum;
pub mod verdict;

pub use order::{find_order_isomorphism, validate_poset, FinitePoset, OrderError};
pub use ortho::{validate_orthoposet, OrthoError, OrthoPoset};
pub use repsys::{
    validate_boolean_rs, validate_rs, BooleanRepresentationSystem, RepresentationSystem, RsCandidate,
};
pub use sum::{Sum, SumPoset};
pub use verdict::Verdict;

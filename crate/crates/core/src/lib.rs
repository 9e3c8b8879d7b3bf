//! Divisor theory on finite connected vertex-weighted multigraphs.
//!
//! Divisors, rational functions and linear equivalence; Picard groups via
//! Smith normal form and Dhar-certified reduced divisors; divisor rank
//! extended to weights and loops through the weightless loopless model;
//! edge contraction with divisor push-forward; semibalanced multidegrees.

pub mod brute;
pub mod corpus;
pub mod divisor;
pub mod document;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod picard;
pub mod rank;
pub mod transforms;
pub mod verify;

pub use divisor::{canonical_divisor, t_v, Divisor, RationalFunction};
pub use error::{Error, Result};
pub use graph::{bullet_model, contract, BulletModel, ContractionMap, Graph};
pub use picard::{
    enumerate_classes, is_equivalent, picard_structure, q_reduce, PicardStructure,
    PrincipalLattice, ReducedDivisor, Reducer,
};
pub use rank::{
    clifford_check, degree_zero_classification, is_class_effective, kz_bound, rank,
    rank_weightless, riemann_roch_check, DegreeZeroClass, RankEngine, RankResult, RiemannRoch,
};
pub use transforms::{
    balance_report, bridge_rank_preservation, find_semibalanced_representative, push_forward,
    verify_prin_pushforward, BalanceReport, SubsetCheck, Violation,
};

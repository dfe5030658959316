//! Permutation groups, graph families and verification of
//! connected-homogeneity properties of finite vertex-transitive graphs.

pub mod action;
pub mod cayley;
pub mod classification;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod group;
pub mod homogeneity;
pub mod patterns;
pub mod perm;
pub mod quotients;
pub mod suite;

pub use action::Action;
pub use error::{Error, Result};
pub use graph::Graph;
pub use group::{BlockSystem, PermGroup};
pub use perm::Permutation;

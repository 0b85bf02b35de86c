//! Exhaustive computation with finite p-groups and groups of automorphisms
//! acting on them.

pub mod action;
pub mod autsearch;
pub mod backend;
pub mod cache;
pub mod catalog;
pub mod corpus;
pub mod error;
pub mod group;
pub mod series;
pub mod verify;

pub use action::{ActionPair, MixedSeries};
pub use backend::{Element, ElementKey, FpMatrix, Permutation};
pub use catalog::{build, FamilySpec};
pub use corpus::{run_corpus, ExperimentConfig, RunReport};
pub use error::{Error, Result};
pub use group::{Automorphism, GroupTable, QuotientGroup, Subgroup};

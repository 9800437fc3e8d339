//! Exact-arithmetic engine for colax Reedy diagrams valued in concrete
//! finite monoidal categories.
//!
//! The crate builds finite truncations of simple locally Reedy
//! 2-categories, normal colax diagrams on them, latching/matching objects
//! with their canonical comparison map, level-wise colimits and inductive
//! limits, lifted weak factorization systems, a model-axiom verifier, and
//! the combinatorial bridge between chain groupements and labelled-simplex
//! presheaves. Everything is computed with exact integer arithmetic and
//! certified by enumeration at desk scale.

pub mod base;
pub mod colax;
pub mod error;
pub mod fincat;
pub mod groupement;
pub mod homotopy;
pub mod sample;
pub mod segal;
pub mod reedy;
pub mod report;
pub mod simplex;

pub use error::{Error, Result};

//! Finite, executable models for the combinatorics of homotopy theories.
//!
//! The crate is organised around a handful of carriers:
//!
//! * [`simpset`]: truncated simplicial sets stored by nondegenerate cells, with
//!   Eilenberg-Zilber normal forms, components and integral homology.
//! * [`fincat`]: finite categories, functors, nerves, bounded localization and
//!   the hom-set combinatorics of Joyal's Θ_n.
//! * [`lifting`]: horn enumeration and filler search (Kan, quasi-category and
//!   nerve recognition up to a dimension bound).
//! * [`sspace`]: truncated bisimplicial sets, classifying diagrams, Segal maps,
//!   homotopy categories, completeness and Dwyer-Kan checks.
//! * [`enriched`]: finite simplicial categories, the cube categories
//!   `C[Δ^n]`, the coherent nerve and the hammock mapping spaces.
//! * [`hall`]: Hall algebras of quiver representations over finite fields and
//!   derived Hall numbers of graded vector spaces.
//!
//! Every "is this a weak equivalence" question goes through [`certify`], which
//! answers with a three-valued verdict instead of guessing.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod certify;
pub mod corpus;
pub mod enriched;
pub mod error;
pub mod fincat;
pub mod hall;
pub mod lifting;
pub mod simpset;
pub mod sspace;
pub(crate) mod text;
pub(crate) mod util;

pub use error::{Error, Result};

//! Exact-arithmetic analysis of geodesic orbit structure for metric
//! homogeneous spaces given by rational structure constants.
//!
//! The crate builds finite-dimensional Lie algebras over the rationals,
//! forms reductive decompositions with invariant inner products, solves
//! the geodesic graph linear systems behind the geodesic orbit property,
//! runs the derivation-based test for two-step nilpotent metric algebras,
//! constructs a corpus of example spaces, and audits the structural
//! identities that geodesic orbit spaces must satisfy. Every verdict is
//! either an exact certificate or explicitly labeled sampled evidence.

pub mod api;
pub mod audit;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod files;
pub mod gocheck;
pub mod homspace;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod report;

//! Exact-arithmetic construction of gradations of the classical simple Lie
//! algebras, Tanaka prolongations of their nilpotent negative parts, and the
//! resulting classification machinery, with every dimension count and
//! embedding verified over the rationals.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactlin`] — rational matrices, canonical echelon forms, subspaces;
//! * [`rootsys`] — root systems of types A, B, C, D with marked subsets;
//! * [`liealg`] — matrix realizations sl(l+1), sp(2l), so(2l+1), so(2l);
//! * [`grading`] — gradations (X_l, Δ₁), symbol algebras, block diagrams;
//! * [`prolong`] — Tanaka prolongation towers, restricted prolongations,
//!   and the canonical embedding of the nonnegative part;
//! * [`classify`] — the excluded / I / II / III trichotomy, exceptional
//!   automorphism-group targets, VMRT dimension data;
//! * [`typeiii`] — the g₋₁ = g₋₁⁽¹⁾ ⊕ g₋₁⁽²⁾ decomposition and the
//!   equation-counting derivation of its symmetry algebra;
//! * [`embedj`] — the embeddings so(2l+1) ↪ so(2l+2) and sp(2l) ⊆ sl(2l);
//! * [`ecp2`] — the two additive-group structures on P² and an invariant
//!   separating them;
//! * [`report`] — machine-readable reports and the text input formats;
//! * [`verify`] — the full verification suite run by the CLI.
//!
//! The primary flow, end to end:
//!
//! ```
//! use liegrade::grading::{grade, symbol};
//! use liegrade::liealg::realize;
//! use liegrade::prolong::ProlongationTower;
//! use liegrade::{LieType, MarkedSet};
//! use std::sync::Arc;
//!
//! let alg = Arc::new(realize(LieType::C, 3).unwrap());
//! let g = grade(alg, MarkedSet::new(3, [2]).unwrap()).unwrap();
//! assert_eq!(g.depth, 2);
//! assert_eq!(g.dim_part(-1), 4);
//!
//! // The prolongation of m reproduces sp(6) degree by degree and stops:
//! // this gradation is of type I.
//! let tower = ProlongationTower::compute(&symbol(&g), g.depth + 1);
//! assert_eq!(tower.dims(), vec![7, 4, 3, 0, 0]);
//! assert!(tower.stabilized);
//! ```

pub mod classify;
pub mod ecp2;
pub mod embedj;
pub mod exactlin;
pub mod grading;
pub mod liealg;
pub mod prolong;
pub mod report;
pub mod rootsys;
pub mod typeiii;
pub mod verify;

pub use exactlin::{QMatrix, Subspace, Q};
pub use rootsys::{LieType, MarkedSet};

//! Exact homological invariants of finite affine torus actions.
//!
//! The objects of study are triples `(d, W, ♮)`: a rank-`d` algebraic torus,
//! a finite group `W` of affine automorphisms `x ↦ Mx + τ` with `M ∈ GL_d(Z)`
//! and rational translation `τ`, and a normalized 2-cocycle `♮` on `W` valued
//! in roots of unity. Such a triple encodes a crossed product of the torus
//! function algebra by `W` twisted by `♮`, and the crate computes, in exact
//! arithmetic over `Z` and `Q`:
//!
//! * the fixed locus of every group element and its decomposition into
//!   connected components ([`loci`]),
//! * orbits of pairs (element, fixed component) with their stabilizers and
//!   twist characters ([`loci::pair_orbits`]),
//! * graded dimensions of the Hochschild-type invariants, degree by degree
//!   and fiberwise over the orbit space ([`invariants`]),
//! * the periodic (even/odd) pair, the tails connecting the cyclic theory to
//!   it, and the rational K-theory ranks ([`invariants::BlockDatum::hp_dims`]),
//! * counts of twisted-regular conjugacy classes, which match the fiberwise
//!   degree-zero dimensions ([`cocycle::count_irr_twisted`]).
//!
//! Everything is computed from integer matrix normal forms and cyclotomic
//! bookkeeping — no floating point anywhere — so equal inputs always produce
//! byte-identical reports.
//!
//! The [`input`] module reads JSON documents describing a triple, [`presets`]
//! ships worked examples, and [`report`] assembles the full invariant report
//! in text or canonical JSON form. The `block-homology` binary wraps these.

pub mod cocycle;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod input;
pub mod invariants;
pub mod lattice;
pub mod loci;
pub mod presets;
pub mod report;

pub use error::{EngineError, Result};

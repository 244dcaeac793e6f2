//! Finite presentations of mapping class groups of oriented surfaces.
//!
//! The surface of genus `g >= 1` with `n` boundary components carries a
//! family of `1 + (g-1) + N + N(N-1)` simple closed curves (`N = 2g+n-2`)
//! whose Dehn twists generate the mapping class group, subject to three
//! families of relations: handle identifications, braid relations for
//! pairs of curves meeting in at most one point, and star relations
//! supported on embedded genus-one subsurfaces with three boundary
//! components.
//!
//! This crate materializes that presentation for any admissible `(g, n)`,
//! cross-checks it against an exact integer transvection representation on
//! first homology, computes abelian invariants via Smith normal form,
//! replays equational derivations (lantern relations, chain identities,
//! kernel computations) through a step checker, and applies the boundary
//! capping homomorphism at the word level.

pub mod abelian;
pub mod export;
pub mod homology;
pub mod morphism;
pub mod presentation;
pub mod rewrite;
pub mod scripts;
pub mod surface;
pub mod word;

pub use presentation::{Equation, Presentation, RelationKind};
pub use surface::{CurveConfiguration, CurveId, IntersectionClass, SurfaceSignature};
pub use word::{Letter, Word};

//! Exact-arithmetic verification workbench for ordered algebraic structures.
//!
//! The crate provides:
//!
//! - exact rational arithmetic with dyadic detection ([`rational`]),
//! - an abstract term language over the MV-monoidal signatures and a
//!   generic evaluator ([`term`]),
//! - a model zoo of concrete algebras: the unit interval, Łukasiewicz
//!   chains, finite lattice models, function algebras over finite posets
//!   and lexicographic ℓ-monoids ([`algebra`]),
//! - batch axiom-suite verification with counterexample extraction
//!   ([`axioms`]),
//! - the Γ/Ξ equivalence between unital ℓ-monoids and MV-monoidal
//!   algebras via good ℤ-sequences ([`equivalence`]),
//! - the μ/τ/λ limit machinery with certified intervals ([`limit`]),
//! - congruence lattices and subdirect-irreducibility analysis for
//!   finite models ([`congruence`]),
//! - finite posets, ordered separation, corelational structures and the
//!   effectiveness check ([`poset`], [`corel`]),
//! - internal distance functions and the Archimedean test ([`dist`]).
//!
//! All computations are exact; no floating point is used anywhere.

pub mod algebra;
pub mod axioms;
pub mod congruence;
pub mod corel;
pub mod dist;
pub mod equivalence;
pub mod error;
pub mod limit;
pub mod poset;
pub mod rational;
pub mod term;

pub use error::Error;
pub use rational::{Rational, UnitRational};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

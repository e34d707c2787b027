//! Exact computations on finite left commutative rngs.
//!
//! A left commutative rng is an associative rng with `xyz = yxz`, a left
//! identity `1ℓ`, and a local product `♯` making its additive halo
//! `ℏ⁺(R) = { x : x·1ℓ = 0 }` a commutative unital ring, tied to `·` by
//! `(xα)♯β = x(α♯β)`. This crate verifies these axioms on explicit tables,
//! enumerates ideals and Hu-Liu primes, computes nil radicals and radicals,
//! builds the expanded Zariski topology on the spectrum, and checks the
//! contravariant behavior of spectra under homomorphisms.

pub mod axioms;
pub mod carrier;
pub mod construct;
pub mod corpus;
pub mod dsl;
pub mod error;
pub mod ideal;
pub mod morphism;
pub mod prime;
pub mod quotient;
pub mod replay;
pub mod report;
pub mod ring;
pub mod rng;
pub mod topology;
pub mod workspace;

pub use carrier::{Elem, FiniteCarrier};
pub use error::{LcrError, Result};
pub use rng::LcrTable;

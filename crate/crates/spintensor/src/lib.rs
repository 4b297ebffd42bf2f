//! Tensor representation of spin states.
//!
//! A spin-j density matrix can be expanded over the Weinberg covariant
//! matrices S_{mu_1...mu_N}, N = 2j, which form a 2^N-tight frame for the
//! operators on the spin-j space. The expansion coefficients
//! x_{mu_1...mu_N} = tr(rho S_{mu_1...mu_N}) are real, symmetric under index
//! permutation, and generalize the Bloch vector: coherent states have product
//! coordinates, SU(2) rotations act index-wise through 3x3 rotation matrices,
//! and partial traces are index slices. On top of the representation sits a
//! detector for the anticoherence order of arbitrary states, computed through
//! three independent, provably equivalent criteria.
//!
//! Modules:
//!
//! - [`angular`]: spin operators, coherent states, rotations, Clebsch-Gordan
//!   coefficients, irreducible tensor operators;
//! - [`weinberg`]: the covariant matrices, built by projecting Pauli strings
//!   into the symmetric subspace, plus the closed-form polynomial and boost
//!   evaluations used to cross-validate them;
//! - [`tensor`]: coordinate tensors, reconstruction, inner products, rotation
//!   and partial-trace actions, closed-form coordinates of named states;
//! - [`anticoherence`]: the three order criteria and the spin-1 family of
//!   order-1 anticoherent states;
//! - [`states`]: named reference states.

#![forbid(unsafe_code)]

pub mod angular;
pub mod anticoherence;
pub mod comb;
pub mod dicke;
pub mod error;
pub mod four_vector;
pub mod linalg;
pub mod multi_index;
pub mod spin;
pub mod states;
pub mod tensor;
pub mod weinberg;

pub use error::{Error, Result};
pub use four_vector::FourVector;
pub use spin::{HalfIntegerSpin, DEFAULT_SPIN_CAP};

//! Fermion-to-qubit mappings.
//!
//! Exact GF(2) and Pauli algebra, affine encodings of the Fock basis,
//! ternary-tree constructions, equivalence checks under relabelling, and a
//! dense state-vector oracle for small qubit counts.

pub mod encoding;
pub mod equiv;
pub mod gf2;
pub mod mapping;
pub mod oracle;
pub mod pauli;
pub mod ttree;

pub use encoding::{AffineEncoding, StabiliserTableau};
pub use equiv::{Equivalence, Fingerprint, SymmetryOp, TwoModeTemplate, Witness};
pub use gf2::{BinMatrix, BitVec};
pub use mapping::{FermionQubitMapping, GaussianDyadic, NamedMapping, PauliSumOf};
pub use pauli::{Eigenstate, Pauli, PauliString, ProductState, UnsignedPauli};
pub use ttree::TernaryTree;

/// Dense state with `f64` amplitudes.
pub type DenseState = oracle::DenseStateOf<f64>;

/// Pauli sum with exact dyadic coefficients.
pub type PauliSum = mapping::PauliSumOf<GaussianDyadic>;

/// Pauli sum with floating-point coefficients.
pub type ComplexPauliSum = mapping::PauliSumOf<num_complex::Complex<f64>>;

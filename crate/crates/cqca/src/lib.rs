//! Exact arithmetic for translation-invariant Clifford quantum cellular automata.
//!
//! A Clifford QCA on a `d`-dimensional lattice of prime-`p` qudits is encoded as a
//! `2q x 2q` matrix over the Laurent polynomial ring `F_p[x_1^{\pm1}, ..., x_d^{\pm1}]`
//! that preserves a trivial hermitian form (a "lambda-unitary") or, in the refined
//! quadratic setting, a trivial quadratic form up to even equivalence (an
//! "eta-unitary").  This crate provides:
//!
//! * [`ring`] — sparse Laurent polynomials over `F_p` with the inversion involution,
//!   constant-term and augmentation maps;
//! * [`matrix`] — dense matrices of Laurent polynomials: adjoints, exact determinants
//!   and inverses, the interleaved unitary direct sum, degree windows, coarse-graining;
//! * [`pidlin`] — Smith normal form, kernels, direct-summand tests and basis
//!   completion over `F_p` and `F_p[z^{\pm1}]`;
//! * [`forms`] — quadratic and hermitian `s`-forms, equivalence and evenness tests,
//!   sublagrangians, and the complete Witt-class computation over `F_p`;
//! * [`unitary`] — flavor checks, elementary generators and circuits, the Pauli
//!   transcription, time-reversal normalization over qubits, and the one-dimensional
//!   Euclidean circuit decomposition;
//! * [`descent`] — boundary modules and boundary forms of unitaries, lagrangian pairs
//!   of even hermitian forms, and the formation-to-unitary construction;
//! * [`ascent`] — embeddings into one more variable, the swindle construction lifting
//!   forms to unitaries, and the explicit block matrices lifting unitaries to forms;
//! * [`classify`] — the classification table, complete invariants for up to two
//!   variables, certified higher-dimensional representatives built by ascent chains,
//!   coarse-graining kill checks and blending certificates;
//! * [`textio`] — the text grammar for polynomials, matrices, forms, unitaries and
//!   Pauli specifications;
//! * [`selftest`] — a deterministic end-to-end check suite shared by the test
//!   harness and the CLI.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod ascent;
pub mod classify;
pub mod descent;
pub mod error;
pub mod forms;
pub mod fp;
pub mod matrix;
pub mod pidlin;
pub mod ring;
pub mod selftest;
pub mod textio;
pub mod unitary;

pub use error::{Error, Result};
pub use forms::{Form, FormKind, WittClass, WittGroup};
pub use unitary::{Circuit, Flavor, Gate, Unitary};
pub use matrix::Mat;
pub use ring::Poly;

//! Exact computational tools for modular representation theory of split
//! Chevalley groups in characteristic 2.
//!
//! The crate has three layers:
//!
//! * scalar arithmetic: arbitrary-precision rationals ([`Rational`]) and
//!   cyclotomic numbers in a canonical integral basis ([`cyclo::Cyclotomic`]),
//!   plus bit-packed finite-field scalars ([`field::Gf2`], [`field::Gf3`]);
//! * linear algebra and group machinery: packed matrices generic over the
//!   field ([`mtx::PackedMatrix`]), MeatAxe-style chopping, root systems,
//!   the unipotent group over F2 and the Steinberg module with its
//!   fixed-point condensation;
//! * the character-theoretic workbench: character tables with induction,
//!   restriction and block decomposition ([`chartab`]), and the
//!   decomposition-matrix state machine with an auditable proof log
//!   ([`decomp`]).

pub mod chartab;
pub mod cyclo;
pub mod decomp;
pub mod field;
pub mod mtx;
pub mod refdata;
pub mod rootdata;
pub mod steinberg;
pub mod unipotent;

/// Arbitrary-precision rational scalar used by all character computations.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Packed matrix over GF(2), one bit per entry.
pub type MatGf2 = mtx::PackedMatrix<field::Gf2>;

/// Packed matrix over GF(3), two bit-planes per row.
pub type MatGf3 = mtx::PackedMatrix<field::Gf3>;

pub use cyclo::Cyclotomic;

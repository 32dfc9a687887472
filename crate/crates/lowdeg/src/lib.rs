//! Desk-scale experiments on total-degree tests over finite fields.
//!
//! The crate provides exact arithmetic in GF(p^s), polynomial and function
//! table algebra, maximum-agreement line fits, the line-point test with its
//! plurality self-corrector, the exact characterization of total degree by
//! line restrictions (with its tightness counterexample), a row/column
//! bivariate consistency harness, and the polynomial-line code with a
//! two-query local tester.
//!
//! Everything exact is measured as reduced fractions; everything randomized
//! is seeded and counter-based, so identical configurations reproduce
//! identical results.
//!
//! Error conventions: data-dependent failures (budgets, unique-decoding
//! failures, division by zero, malformed inputs) are `Result`s; structural
//! misuse (mixing elements of different fields, arity mismatches) panics.

pub mod bivariate;
pub mod exactchar;
pub mod field;
pub mod frac;
pub mod io;
pub mod lines;
pub mod plcode;
pub mod poly;
pub mod report;
pub mod rng;
pub mod tester;

pub use field::{Fe, Field, FieldError};
pub use frac::{frac, frac_str, Frac};
pub use lines::{Backend, Line, LineFit};
pub use poly::{distance, interpolate_table, Degree, FunctionTable, MultiPoly, UniPoly};

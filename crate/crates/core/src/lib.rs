//! Exact classification of matrices that split as `A - B` or `A B^-1` with
//! `p(A) = 0` and `q(B) = 0` for monic quadratics `p` and `q`.
//!
//! The crate is `no_std` and only needs `alloc`. It provides exact fields
//! (prime fields, the rationals, rational functions over a prime field and
//! truncated local rings), univariate polynomials, dense matrices, canonical
//! forms, the four-dimensional algebra `W(p,q,x)` with its norm form, the
//! classifier, the witness builder and a brute-force oracle over small prime
//! fields.

#![no_std]

extern crate alloc;

pub mod canon;
pub mod classify;
pub mod construct;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod quadform;
pub mod walgebra;

pub use error::{Error, Result};
pub use field::{BaseField, ExtElem, Field, FieldDescriptor, Fp, QElem, QuotientRing, RatFunc, Rational, Ring};
pub use linalg::Matrix;
pub use poly::Poly;

//! Exact-arithmetic error-correcting codes over the subring Z[w] of the
//! octonion integers.
//!
//! The crate builds the residue field V_pi = Z[w]/(pi) for split primes
//! p = 7k + 1, constructs constacyclic codes of length n = (p - 1)/7
//! from Vandermonde-style parity-check matrices, and decodes one or two
//! errors from syndromes. A brute-force oracle and a seeded Monte-Carlo
//! channel simulator round out the toolkit.

pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod octonion;
pub mod sim;
pub mod zw;

pub use code::{Code, DecodeOutcome, Verdict};
pub use error::{Error, Result};
pub use field::{Label, OmegaSign, ResidueField};
pub use octonion::Octonion;
pub use zw::{find_prime, ZwInt};

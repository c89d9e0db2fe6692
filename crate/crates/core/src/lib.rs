//! Exact computations with Drinfeld `F_q[t]`-modules over finite fields.

pub mod error;
pub mod field;
pub mod linalg;
pub mod skew;
pub mod upoly;

pub use error::{Error, Result};
pub mod arith;
pub mod poly_a;
pub mod ratfun;
pub mod drinfeld;
pub mod moduli;
pub mod spherical;
pub mod par;
pub mod supersingular;
pub mod brandt;

pub use poly_a::{primes_up_to, residue_field, PolyA, PrimeP};

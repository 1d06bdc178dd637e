//! Exotic additions on fixed scalar groups.

pub mod error;
pub mod exact_arith;
pub mod finite_structures;
pub mod induced_ops;
pub mod mult_maps;
pub mod nearfield_core;
pub mod nvs_core;
pub mod quad_field;
pub mod report;
pub mod structures;

pub use error::{Error, Result};
pub use exact_arith::{factor_int, factor_rat, nth_prime, rebuild, Rat, SignedFactorization};
pub use finite_structures::{Fe, FiniteField};
pub use quad_field::{factor_quad, primes_above, KFactorization, QuadInt, QuadRat, Splitting};
pub use report::{Check, Report};
pub use structures::{Bijection, Perm, Structure};

pub use num_bigint::{BigInt, BigUint};
pub use num_complex::Complex64;

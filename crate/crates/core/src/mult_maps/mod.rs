//! Map taxonomy: multiplicative, quasi-multiplicative and ℤ-maps, σ: ℚ → K, ε_α on ℂ.

mod endo;
mod epsilon;
mod quasi;
mod sigma;

pub use endo::{endo_q_apply, EndoBijectionSpecQ};
pub use epsilon::{check_epsilon, close, epsilon_inverse_exponent, eval_epsilon};
pub use quasi::{check_qmc_equivalence, qm_compose, qm_invert, verify_qm_ops, QmcVerdict, QuasiMultSpec};
pub use sigma::{sigma_apply, sigma_invert, PrimeCorrespondence, Sigma};

use crate::error::Result;
use crate::report::Check;
use crate::structures::Structure;

/// Checks f(1) = 1 and f(αβ) = f(α)f(β) on the given pairs; the pair (1, 1) is evaluated first.
pub fn check_multiplicative<A: Structure, B: Structure>(
    f: impl Fn(&A::Elem) -> Result<B::Elem>,
    src: &A,
    dst: &B,
    pairs: impl IntoIterator<Item = (A::Elem, A::Elem)>,
) -> Result<Check> {
    let mut c = Check::new("multiplicative");
    let one = src.one();
    let f1 = f(&one)?;
    if f1 != dst.one() {
        c.record(false, || vec![one.to_string(), one.to_string()]);
        return Ok(c.with_note(format!("f(1) = {f1} ≠ 1")));
    }
    c.record(true, Vec::new);
    for (a, b) in pairs {
        let lhs = f(&src.mul(&a, &b)?)?;
        let rhs = dst.mul(&f(&a)?, &f(&b)?)?;
        if !c.record(lhs == rhs, || vec![a.to_string(), b.to_string()]) {
            break;
        }
    }
    Ok(c)
}

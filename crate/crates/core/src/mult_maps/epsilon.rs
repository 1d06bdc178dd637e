use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::report::{Check, Report};

/// ε_α(r·s) = r^α·s, or r^α·s̄ with `conjugate`; ε_α(0) = 0.
pub fn eval_epsilon(alpha: Complex64, conjugate: bool, z: Complex64) -> Result<Complex64> {
    if alpha.re == 0.0 {
        return Err(domain("alpha must have nonzero real part"));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let r = z.norm();
    let s = z / r;
    let ra = (alpha * r.ln()).exp();
    Ok(ra * if conjugate { s.conj() } else { s })
}

/// β with ε_β = ε_α⁻¹: (1 − i·Im α)/Re α, or (1 + i·Im α)/Re α for the conjugate family.
pub fn epsilon_inverse_exponent(alpha: Complex64, conjugate: bool) -> Result<Complex64> {
    if alpha.re == 0.0 {
        return Err(domain("alpha must have nonzero real part"));
    }
    let im = if conjugate { alpha.im } else { -alpha.im };
    Ok(Complex64::new(1.0, im) / alpha.re)
}

/// |a − b| ≤ tol·max(1, |b|).
pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

/// Multiplicativity and the inverse exponent on `trials` seeded pairs with 0.1 ≤ |z| ≤ 10.
pub fn check_epsilon(alpha: Complex64, conjugate: bool, trials: usize, seed: u64, tol: f64) -> Result<Report> {
    let beta = epsilon_inverse_exponent(alpha, conjugate)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = || Complex64::from_polar(10f64.powf(rng.gen_range(-1.0..1.0)), rng.gen_range(-PI..PI));
    let mut mult = Check::new("ε(zw) = ε(z)ε(w)");
    let mut inv = Check::new("inverse exponent");
    let e = |z| eval_epsilon(alpha, conjugate, z);
    for _ in 0..trials {
        let (z, w) = (sample(), sample());
        mult.record(close(e(z * w)?, e(z)? * e(w)?, tol), || vec![z.to_string(), w.to_string()]);
        let back = eval_epsilon(beta, conjugate, e(z)?)?;
        let fwd = e(eval_epsilon(beta, conjugate, z)?)?;
        inv.record(close(back, z, tol) && close(fwd, z, tol), || vec![z.to_string()]);
    }
    let mut r = Report::new(format!("ε_α, α = {alpha}, tolerance {tol:e} relative"));
    r.push(mult);
    r.push(inv.with_note(format!("β = {beta}")));
    Ok(r)
}

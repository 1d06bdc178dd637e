//! Operations pulled back through a bijection, and the exotic addition ⊞ on ℚ.

use std::marker::PhantomData;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact_arith::{rat, Rat};
use crate::mult_maps::{sigma_apply, sigma_invert, PrimeCorrespondence};
use crate::quad_field::{QuadInt, QuadRat};
use crate::report::Check;
use crate::structures::{Bijection, Structure};

/// (S, +_σ, ·_σ) for a bijection σ: S → R.
pub struct Induced<'a, S, B, R: Structure> {
    sigma: &'a B,
    target: &'a R,
    zero: S,
    one: S,
    _s: PhantomData<S>,
}

impl<'a, S, B, R> Induced<'a, S, B, R>
where
    S: Clone + PartialEq + std::fmt::Display,
    B: Bijection<S, R::Elem>,
    R: Structure,
{
    pub fn new(sigma: &'a B, target: &'a R) -> Result<Self> {
        let zero = sigma.invert(&target.zero())?;
        let one = sigma.invert(&target.one())?;
        Ok(Induced { sigma, target, zero, one, _s: PhantomData })
    }
}

impl<S, B, R> Structure for Induced<'_, S, B, R>
where
    S: Clone + PartialEq + std::fmt::Display,
    B: Bijection<S, R::Elem>,
    R: Structure,
{
    type Elem = S;

    fn name(&self) -> String {
        format!("induced from {}", self.target.name())
    }
    fn zero(&self) -> S {
        self.zero.clone()
    }
    fn one(&self) -> S {
        self.one.clone()
    }
    fn add(&self, a: &S, b: &S) -> Result<S> {
        induced_add(self.sigma, self.target, a, b)
    }
    fn mul(&self, a: &S, b: &S) -> Result<S> {
        induced_mul(self.sigma, self.target, a, b)
    }
    fn neg(&self, a: &S) -> Result<S> {
        self.sigma.invert(&self.target.neg(&self.sigma.apply(a)?)?)
    }
    fn inv(&self, a: &S) -> Result<S> {
        self.sigma.invert(&self.target.inv(&self.sigma.apply(a)?)?)
    }
}

/// σ⁻¹(σ(α) + σ(β))
pub fn induced_add<S, R: Structure>(sigma: &impl Bijection<S, R::Elem>, target: &R, a: &S, b: &S) -> Result<S> {
    sigma.invert(&target.add(&sigma.apply(a)?, &sigma.apply(b)?)?)
}

/// σ⁻¹(σ(α) · σ(β))
pub fn induced_mul<S, R: Structure>(sigma: &impl Bijection<S, R::Elem>, target: &R, a: &S, b: &S) -> Result<S> {
    sigma.invert(&target.mul(&sigma.apply(a)?, &sigma.apply(b)?)?)
}

/// Size guard for ⊞ on ℚ.
#[derive(Clone, Debug, Default)]
pub struct Limits {
    /// Bound on the norm of the integral K-sum numerator σ(a)σ(d) + σ(c)σ(b) for a/b ⊞ c/d.
    pub norm_ceiling: Option<BigUint>,
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { norm_ceiling: None }
    }

    pub fn with_ceiling(c: impl Into<BigUint>) -> Self {
        Limits { norm_ceiling: Some(c.into()) }
    }
}

/// The pieces of one evaluation of α ⊞ β.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExoticSum {
    #[serde(serialize_with = "ser_rat")]
    pub result: Rat,
    pub sigma_images: [QuadRat; 2],
    pub k_sum: QuadRat,
}

fn ser_rat<S: serde::Serializer>(q: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn sigma_int(c: &PrimeCorrespondence, n: &BigInt) -> Result<QuadInt> {
    let x = sigma_apply(c, &Rat::from_integer(n.clone()))?;
    debug_assert!(x.den().is_one());
    Ok(x.num().clone())
}

pub fn exotic_add_detailed(c: &PrimeCorrespondence, a: &Rat, b: &Rat, limits: &Limits) -> Result<ExoticSum> {
    let sa = sigma_apply(c, a)?;
    let sb = sigma_apply(c, b)?;
    if let Some(ceiling) = &limits.norm_ceiling {
        let cross = &(&sigma_int(c, a.numer())? * &sigma_int(c, b.denom())?)
            + &(&sigma_int(c, b.numer())? * &sigma_int(c, a.denom())?);
        let n = cross.norm();
        if n.magnitude() > ceiling {
            return Err(Error::Resource { what: format!("K-sum norm {n} for {a} ⊞ {b}"), ceiling: ceiling.to_string() });
        }
    }
    let k_sum = &sa + &sb;
    let result = sigma_invert(c, &k_sum)?;
    Ok(ExoticSum { result, sigma_images: [sa, sb], k_sum })
}

/// α ⊞ β = σ⁻¹(σ(α) + σ(β)).
pub fn exotic_add_q(c: &PrimeCorrespondence, a: &Rat, b: &Rat, limits: &Limits) -> Result<Rat> {
    Ok(exotic_add_detailed(c, a, b, limits)?.result)
}

/// (ℚ, ⊞, ·).
#[derive(Clone)]
pub struct ExoticRationals<'a> {
    pub corr: &'a PrimeCorrespondence,
    pub limits: Limits,
}

impl<'a> ExoticRationals<'a> {
    pub fn new(corr: &'a PrimeCorrespondence, limits: Limits) -> Self {
        ExoticRationals { corr, limits }
    }
}

impl Structure for ExoticRationals<'_> {
    type Elem = Rat;

    fn name(&self) -> String {
        "(Q,⊞,·)".into()
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Result<Rat> {
        exotic_add_q(self.corr, a, b, &self.limits)
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Result<Rat> {
        Ok(a * b)
    }
    fn neg(&self, a: &Rat) -> Result<Rat> {
        Ok(-a)
    }
    fn inv(&self, a: &Rat) -> Result<Rat> {
        if a.is_zero() {
            Err(domain("zero has no inverse"))
        } else {
            Ok(a.recip())
        }
    }
}

/// First integer pair (a, b), |a|, |b| ≤ bound, with a ⊞ b ≠ a + b.
///
/// Pairs are visited ring by ring (max(|a|,|b|) = 0, 1, ...), each ring row by row.
pub fn plus_witness_spiral(c: &PrimeCorrespondence, bound: i64, limits: &Limits) -> Result<Option<(i64, i64, Rat)>> {
    for r in 0..=bound {
        for a in -r..=r {
            for b in -r..=r {
                if a.abs().max(b.abs()) != r {
                    continue;
                }
                let s = exotic_add_q(c, &rat(a, 1), &rat(b, 1), limits)?;
                if s != rat(a + b, 1) {
                    return Ok(Some((a, b, s)));
                }
            }
        }
    }
    Ok(None)
}

/// Verdicts for the three equivalent conditions on φ: R₂ → R₁.
#[derive(Clone, Debug, Serialize)]
pub struct RingIsomReport {
    /// φ additive and multiplicative.
    pub isomorphism: Check,
    /// φ multiplicative and +₂ induced by φ.
    pub mult_induced_add: Check,
    /// φ additive and ·₂ induced by φ.
    pub add_induced_mul: Check,
}

impl RingIsomReport {
    pub fn verdicts(&self) -> [bool; 3] {
        [self.isomorphism.passed, self.mult_induced_add.passed, self.add_induced_mul.passed]
    }

    pub fn agree(&self) -> bool {
        let v = self.verdicts();
        v[0] == v[1] && v[1] == v[2]
    }
}

/// Evaluates the three conditions on every sampled pair.
pub fn check_ringisom<A, B, P>(phi: &P, r2: &A, r1: &B, pairs: &[(A::Elem, A::Elem)]) -> Result<RingIsomReport>
where
    A: Structure,
    B: Structure,
    P: Bijection<A::Elem, B::Elem>,
{
    let mut c1 = Check::new("isomorphism");
    let mut c2 = Check::new("multiplicative with induced addition");
    let mut c3 = Check::new("additive with induced multiplication");
    for (a, b) in pairs {
        let w = || vec![a.to_string(), b.to_string()];
        let (pa, pb) = (phi.apply(a)?, phi.apply(b)?);
        let bij = phi.invert(&pa)? == *a && phi.invert(&pb)? == *b;
        let sum2 = r2.add(a, b)?;
        let prod2 = r2.mul(a, b)?;
        let sum1 = r1.add(&pa, &pb)?;
        let prod1 = r1.mul(&pa, &pb)?;
        let additive = phi.apply(&sum2)? == sum1;
        let multiplicative = phi.apply(&prod2)? == prod1;
        let induced_add = sum2 == phi.invert(&sum1)?;
        let induced_mul = prod2 == phi.invert(&prod1)?;
        c1.record(bij && additive && multiplicative, w);
        c2.record(bij && multiplicative && induced_add, w);
        c3.record(bij && additive && induced_mul, w);
    }
    Ok(RingIsomReport { isomorphism: c1, mult_induced_add: c2, add_induced_mul: c3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_structures::{make_field, native_addition};
    use crate::mult_maps::Sigma;
    use crate::structures::{FieldStructure, FnBijection, Perm, QuadField, Rationals};

    fn c() -> &'static PrimeCorrespondence {
        PrimeCorrespondence::global()
    }

    fn add(a: Rat, b: Rat) -> Rat {
        exotic_add_q(c(), &a, &b, &Limits::unbounded()).unwrap()
    }

    #[test]
    fn exotic_examples() {
        assert_eq!(add(rat(7, 3), rat(0, 1)), rat(7, 3));
        assert_eq!(add(rat(1, 1), rat(-1, 1)), rat(0, 1));
        assert_eq!(add(rat(1, 1), rat(1, 1)), rat(2, 1));
        assert_eq!(add(rat(1, 1), rat(2, 1)), sigma_invert(c(), &QuadRat::from(QuadInt::int(3))).unwrap());
        assert_eq!(add(rat(1, 1), rat(4, 1)), rat(-205, 1));
    }

    #[test]
    fn resource_ceiling() {
        let r = exotic_add_q(c(), &rat(999_983, 1), &rat(1, 999_979), &Limits::with_ceiling(1000u32));
        assert!(matches!(r, Err(Error::Resource { .. })));
    }

    #[test]
    fn induced_mul_is_native_for_sigma() {
        let s = Sigma(c());
        assert_eq!(induced_mul(&s, &QuadField, &rat(2, 1), &rat(3, 1)).unwrap(), rat(6, 1));
        let ind = Induced::new(&s, &QuadField).unwrap();
        assert_eq!(ind.zero(), rat(0, 1));
        assert_eq!(ind.one(), rat(1, 1));
        assert_eq!(ind.mul(&rat(5, 7), &ind.one()).unwrap(), rat(5, 7));
        assert_eq!(ind.mul(&ind.zero(), &rat(5, 7)).unwrap(), rat(0, 1));
        assert_eq!(ind.add(&rat(5, 7), &ind.neg(&rat(5, 7)).unwrap()).unwrap(), rat(0, 1));
    }

    #[test]
    fn ringisom_examples() {
        let pairs: Vec<(Rat, Rat)> = (1..6).map(|i| (rat(i, 1), rat(i + 3, 2))).collect();
        let s = Sigma(c());
        let ex = ExoticRationals::new(c(), Limits::unbounded());
        let r = check_ringisom(&s, &ex, &QuadField, &pairs).unwrap();
        assert_eq!(r.verdicts(), [true; 3]);

        let id = FnBijection(|q: &Rat| Ok(q.clone()), |q: &Rat| Ok(q.clone()));
        let r = check_ringisom(&id, &Rationals, &ex, &pairs).unwrap();
        assert_eq!(r.verdicts(), [false; 3]);
        assert!(r.isomorphism.witness.is_some());

        let f = make_field(3, 2).unwrap();
        let t = native_addition(&f);
        let fs = FieldStructure::new(&f, &t);
        let frob = Perm::power(&f, 3, f.one()).unwrap();
        let all: Vec<_> = f.elements().flat_map(|a| f.elements().map(move |b| (a, b))).collect();
        let r = check_ringisom(&frob, &fs, &fs, &all).unwrap();
        assert_eq!(r.verdicts(), [true; 3]);
    }

    #[test]
    fn spiral_finds_a_witness() {
        let w = plus_witness_spiral(c(), 20, &Limits::unbounded()).unwrap();
        let (a, b, s) = w.expect("⊞ differs from +");
        assert_ne!(s, rat(a + b, 1));
    }
}

//! The multiplicative bijection σ: ℚ → K = ℚ(√−19).
//!
//! σ is determined by a bijection between the rational primes and the canonical primes of O_K.
//! That bijection is assembled from two injections:
//!
//! * `lift`: p ↦ the first canonical prime above p;
//! * `shadow`: π ↦ the smallest prime k·p + 1 where p is the rational prime under π, k is
//!   p-smooth, and k ≡ 2 (mod 4) when π is the first prime above p, k ≡ 0 (mod 4) when it is the
//!   second.
//!
//! A prime's ancestor chain under these maps strictly decreases, so the usual back-and-forth
//! construction decides locally which injection pairs it, and σ can be evaluated at any prime
//! without enumerating the ones below it.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, integrity, Result};
use crate::exact_arith::{factor_natural, factor_rat, is_prime, Rat};
use crate::quad_field::{factor_quad, primes_above, rational_prime_below, QuadInt, QuadRat, Splitting};
use crate::structures::Bijection;

/// Largest multiplier tried by `shadow` before giving up.
const SHADOW_K_LIMIT: u64 = 10_000_000;

fn lift(p: &BigUint) -> Result<QuadInt> {
    Ok(primes_above(p)?.primes().swap_remove(0))
}

fn prime_at(p: &BigUint, j: usize) -> Result<QuadInt> {
    primes_above(p)?
        .primes()
        .get(j)
        .cloned()
        .ok_or_else(|| integrity(format!("{p} has no prime number {j} above it")))
}

/// (rational prime under π, position of π among the primes above it).
fn tag(pi: &QuadInt) -> Result<(BigUint, usize)> {
    if !pi.is_canonical() || !pi.is_prime_element() {
        return Err(domain(format!("{pi} is not a canonical prime")));
    }
    let p = rational_prime_below(pi);
    let j = primes_above(&p)?
        .primes()
        .iter()
        .position(|x| x == pi)
        .ok_or_else(|| integrity(format!("{pi} not found above {p}")))?;
    Ok((p, j))
}

fn is_smooth(k: u64, p: &BigUint) -> Result<bool> {
    let pk = p.to_u64().unwrap_or(u64::MAX);
    Ok(factor_natural(&BigUint::from(k))?.keys().all(|q| q.to_u64().is_some_and(|q| q <= pk)))
}

pub(crate) fn shadow(p: &BigUint, j: usize) -> Result<BigUint> {
    let mut k: u64 = if j == 0 { 2 } else { 4 };
    while k <= SHADOW_K_LIMIT {
        if is_smooth(k, p)? {
            let cand = p * k + 1u32;
            if is_prime(&cand) {
                return Ok(cand);
            }
        }
        k += 4;
    }
    Err(integrity(format!("no shadow prime for ({p}, {j}) below k = {SHADOW_K_LIMIT}")))
}

/// Inverse of `shadow` where defined.
pub(crate) fn shadow_source(big: &BigUint) -> Result<Option<(BigUint, usize)>> {
    if *big < BigUint::from(5u32) {
        return Ok(None);
    }
    let m = big - 1u32;
    let p = factor_natural(&m)?.into_keys().next_back().expect("m > 1");
    let k = &m / &p;
    if k.is_odd() {
        return Ok(None);
    }
    let j = if (&k % 4u32).is_zero() { 1 } else { 0 };
    if j == 1 && !matches!(primes_above(&p)?, Splitting::Split(..)) {
        return Ok(None);
    }
    if k.to_u64().is_none_or(|k| k > SHADOW_K_LIMIT) {
        return Ok(None);
    }
    Ok((shadow(&p, j)? == *big).then_some((p, j)))
}

#[derive(Default)]
struct Memo {
    forward: HashMap<BigUint, QuadInt>,
    backward: HashMap<QuadInt, BigUint>,
}

/// Lazily filled pairing between rational primes and canonical O_K primes.
///
/// Entries are only ever added, and each is a pure function of its key, so values observed by one
/// reader never change for another.
#[derive(Default)]
pub struct PrimeCorrespondence {
    memo: RwLock<Memo>,
}

impl PrimeCorrespondence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance.
    pub fn global() -> &'static PrimeCorrespondence {
        static G: OnceLock<PrimeCorrespondence> = OnceLock::new();
        G.get_or_init(PrimeCorrespondence::new)
    }

    fn remember(&self, p: &BigUint, pi: &QuadInt) {
        let mut m = self.memo.write().expect("correspondence lock poisoned");
        m.forward.insert(p.clone(), pi.clone());
        m.backward.insert(pi.clone(), p.clone());
    }

    /// σ(p) for a rational prime p.
    pub fn image(&self, p: &BigUint) -> Result<QuadInt> {
        if let Some(pi) = self.memo.read().expect("correspondence lock poisoned").forward.get(p) {
            return Ok(pi.clone());
        }
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        let first = shadow_source(p)?;
        let mut cur = first.clone();
        let pi = loop {
            match cur {
                None => break lift(p)?,
                Some((_, 1)) => {
                    let (q, j) = first.expect("chain started in the shadow image");
                    break prime_at(&q, j)?;
                }
                Some((q, _)) => cur = shadow_source(&q)?,
            }
        };
        self.remember(p, &pi);
        Ok(pi)
    }

    /// σ⁻¹(π) for a canonical prime π.
    pub fn preimage(&self, pi: &QuadInt) -> Result<BigUint> {
        if let Some(p) = self.memo.read().expect("correspondence lock poisoned").backward.get(pi) {
            return Ok(p.clone());
        }
        let (q, j) = tag(pi)?;
        let p = if j == 1 {
            shadow(&q, 1)?
        } else {
            let mut a = q.clone();
            loop {
                match shadow_source(&a)? {
                    None => break q,
                    Some((_, 1)) => break shadow(&q, 0)?,
                    Some((next, _)) => a = next,
                }
            }
        };
        self.remember(&p, pi);
        Ok(p)
    }

    /// Pairs computed so far, by rational prime.
    pub fn pairs(&self) -> Vec<(BigUint, QuadInt)> {
        let m = self.memo.read().expect("correspondence lock poisoned");
        let mut v: Vec<_> = m.forward.iter().map(|(p, pi)| (p.clone(), pi.clone())).collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("correspondence lock poisoned").forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn sigma_apply(c: &PrimeCorrespondence, q: &Rat) -> Result<QuadRat> {
    if q.is_zero() {
        return Ok(QuadRat::zero());
    }
    let f = factor_rat(q)?;
    let mut num = QuadInt::int(f.sign);
    let mut den = QuadInt::one();
    for (p, &e) in &f.exponents {
        let pe = c.image(p)?.pow(e.unsigned_abs() as u32);
        if e > 0 {
            num = &num * &pe;
        } else {
            den = &den * &pe;
        }
    }
    QuadRat::from(num).div(&QuadRat::from(den))
}

pub fn sigma_invert(c: &PrimeCorrespondence, x: &QuadRat) -> Result<Rat> {
    if x.is_zero() {
        return Ok(Rat::zero());
    }
    let f = factor_quad(x)?;
    let mut num = BigInt::from(f.unit);
    let mut den = BigInt::one();
    for (pi, &e) in &f.factors {
        let pe = BigInt::from(c.preimage(pi)?).pow(e.unsigned_abs() as u32);
        if e > 0 {
            num *= pe;
        } else {
            den *= pe;
        }
    }
    Ok(Rat::new(num, den))
}

/// σ as a `Bijection` over a correspondence.
#[derive(Clone, Copy)]
pub struct Sigma<'a>(pub &'a PrimeCorrespondence);

impl Bijection<Rat, QuadRat> for Sigma<'_> {
    fn apply(&self, x: &Rat) -> Result<QuadRat> {
        sigma_apply(self.0, x)
    }
    fn invert(&self, y: &QuadRat) -> Result<Rat> {
        sigma_invert(self.0, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn shadow_values() {
        assert_eq!(shadow(&b(2), 0).unwrap(), b(5));
        assert_eq!(shadow(&b(3), 0).unwrap(), b(7));
        assert_eq!(shadow(&b(5), 1).unwrap(), b(41));
        assert_eq!(shadow(&b(19), 0).unwrap(), b(191));
        assert_eq!(shadow_source(&b(5)).unwrap(), Some((b(2), 0)));
        assert_eq!(shadow_source(&b(41)).unwrap(), Some((b(5), 1)));
        assert_eq!(shadow_source(&b(3)).unwrap(), None);
        assert_eq!(shadow_source(&b(11)).unwrap(), Some((b(5), 0)));
        assert_eq!(shadow_source(&b(13)).unwrap(), None);
    }

    #[test]
    fn small_images() {
        let c = PrimeCorrespondence::new();
        assert_eq!(c.image(&b(2)).unwrap(), QuadInt::int(2));
        assert_eq!(c.image(&b(3)).unwrap(), QuadInt::int(3));
        assert_eq!(c.preimage(&QuadInt::int(2)).unwrap(), b(2));
        assert_eq!(c.preimage(&QuadInt::int(3)).unwrap(), b(3));
        assert!(c.image(&b(4)).is_err());
        assert!(c.preimage(&QuadInt::new(1, -1)).is_err());
    }

    #[test]
    fn prime_round_trips() {
        let c = PrimeCorrespondence::new();
        for p in crate::exact_arith::primes_below(3000) {
            let p = b(p as u64);
            let pi = c.image(&p).unwrap();
            assert!(pi.is_canonical() && pi.is_prime_element());
            assert_eq!(PrimeCorrespondence::new().preimage(&pi).unwrap(), p);
        }
    }

    #[test]
    fn every_small_k_prime_is_hit() {
        let c = PrimeCorrespondence::new();
        for p in crate::exact_arith::primes_below(1000) {
            for pi in primes_above(&b(p as u64)).unwrap().primes() {
                let q = c.preimage(&pi).unwrap();
                assert_eq!(PrimeCorrespondence::new().image(&q).unwrap(), pi);
            }
        }
    }

    #[test]
    fn apply_examples() {
        let c = PrimeCorrespondence::new();
        assert_eq!(sigma_apply(&c, &rat(1, 1)).unwrap(), QuadRat::one());
        assert_eq!(sigma_apply(&c, &rat(0, 1)).unwrap(), QuadRat::zero());
        assert_eq!(sigma_apply(&c, &rat(-1, 1)).unwrap(), -&QuadRat::one());
        assert_eq!(sigma_apply(&c, &rat(2, 1)).unwrap(), QuadRat::from(QuadInt::int(2)));
        let s = |n| sigma_apply(&c, &rat(n, 1)).unwrap();
        let expect = (&s(2) * &s(3)).div(&s(5)).unwrap();
        assert_eq!(sigma_apply(&c, &rat(6, 5)).unwrap(), expect);
        assert_eq!(sigma_invert(&c, &QuadRat::from(QuadInt::int(2))).unwrap(), rat(2, 1));
        assert_eq!(sigma_invert(&c, &QuadRat::zero()).unwrap(), rat(0, 1));
    }
}

//! Rationals and their signed prime-exponent coordinates.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Builds `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Uniform numerator in [−h, h] and denominator in [1, h], reduced.
pub fn random_rat(rng: &mut impl rand::Rng, h: i64) -> Rat {
    rat(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

/// `count` seeded draws of `random_rat`.
pub fn sample_rats(seed: u64, count: usize, h: i64) -> Vec<Rat> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_rat(&mut rng, h)).collect()
}

/// max(|numerator|, denominator).
pub fn height(q: &Rat) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d { n } else { d }
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| domain(format!("not a rational: {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| domain(format!("not a rational: {s:?}")))?;
    if d.is_zero() {
        return Err(domain("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

const TRIAL_LIMIT: u32 = 10_000;

struct Sieve {
    limit: u32,
    primes: Vec<u32>,
}

static SIEVE: RwLock<Sieve> = RwLock::new(Sieve { limit: 1, primes: Vec::new() });

fn sieve_to(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Runs `f` on the cached prime list, growing it first if it does not reach `limit`.
/// The list is rebuilt off-lock and swapped in whole, so readers never see a partial sieve.
fn with_primes_to<T>(limit: u32, f: impl FnOnce(&[u32]) -> T) -> T {
    {
        let s = SIEVE.read().expect("sieve lock poisoned");
        if s.limit >= limit {
            return f(&s.primes);
        }
    }
    let target = limit.max(1024).next_power_of_two();
    let primes = sieve_to(target);
    let mut s = SIEVE.write().expect("sieve lock poisoned");
    if s.limit < target {
        s.limit = target;
        s.primes = primes;
    }
    f(&s.primes)
}

/// The k-th prime (1-based): nth_prime(1) = 2.
pub fn nth_prime(k: usize) -> u64 {
    assert!(k >= 1, "nth_prime is 1-based");
    let kf = k as f64;
    let bound = if k < 6 { 15.0 } else { kf * (kf.ln() + kf.ln().ln()) + 3.0 };
    with_primes_to(bound as u32, |p| p[k - 1] as u64)
}

/// Primes below `limit` from the shared sieve.
pub fn primes_below(limit: u32) -> Vec<u32> {
    with_primes_to(limit, |p| p.iter().copied().take_while(|&q| q < limit).collect())
}

pub fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(v) => num_prime::nt_funcs::is_prime64(v),
        None => num_prime::nt_funcs::is_prime(n, None).probably(),
    }
}

pub fn is_prime_int(n: &BigInt) -> bool {
    n.sign() == Sign::Plus && is_prime(n.magnitude())
}

/// Prime factorization of a positive integer, as an ascending map.
pub fn factor_natural(n: &BigUint) -> Result<BTreeMap<BigUint, u32>> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return Err(domain("zero has no factorization"));
    }
    let mut m = n.clone();
    with_primes_to(TRIAL_LIMIT, |primes| {
        for &p in primes.iter().take_while(|&&p| p < TRIAL_LIMIT) {
            let pb = BigUint::from(p);
            if &pb * &pb > m {
                break;
            }
            let mut e = 0;
            loop {
                let (q, r) = m.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            if e > 0 {
                out.insert(pb, e);
            }
        }
    });
    if m.is_one() {
        return Ok(out);
    }
    if m < BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT) {
        *out.entry(m).or_insert(0) += 1;
        return Ok(out);
    }
    if let Some(v) = m.to_u128() {
        for (p, e) in num_prime::nt_funcs::factorize128(v) {
            *out.entry(BigUint::from(p)).or_insert(0) += e as u32;
        }
        return Ok(out);
    }
    let (found, rest) = num_prime::nt_funcs::factors(m.clone(), None);
    if let Some(rest) = rest {
        return Err(Error::Resource {
            what: format!("unfactored cofactor(s) {rest:?} of {m}"),
            ceiling: "factorization effort".into(),
        });
    }
    for (p, e) in found {
        *out.entry(p).or_insert(0) += e as u32;
    }
    Ok(out)
}

/// Sign plus nonzero prime exponents; the coordinates of ℚ*.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedFactorization {
    pub sign: i8,
    pub exponents: BTreeMap<BigUint, i64>,
}

impl SignedFactorization {
    pub fn one() -> Self {
        SignedFactorization { sign: 1, exponents: BTreeMap::new() }
    }

    /// Sign product and exponent-wise sum.
    pub fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (p, e) in &other.exponents {
            let slot = exponents.entry(p.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                exponents.remove(p);
            }
        }
        SignedFactorization { sign: self.sign * other.sign, exponents }
    }
}

/// Primes are written as JSON numbers when they fit in u64, as decimal strings otherwise.
pub(crate) fn serialize_big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

pub(crate) fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

struct BigU<'a>(&'a BigUint);
impl Serialize for BigU<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_big(self.0, s)
    }
}

impl Serialize for SignedFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Pairs<'a>(&'a BTreeMap<BigUint, i64>);
        impl Serialize for Pairs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (p, e) in self.0 {
                    seq.serialize_element(&(BigU(p), e))?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("SignedFactorization", 2)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("factors", &Pairs(&self.exponents))?;
        st.end()
    }
}

impl std::fmt::Display for SignedFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if self.sign < 0 { "-1" } else { "1" })?;
        for (p, e) in &self.exponents {
            if *e == 1 {
                write!(f, " * {p}")?;
            } else {
                write!(f, " * {p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn factor_int(n: &BigInt) -> Result<SignedFactorization> {
    if n.is_zero() {
        return Err(domain("zero has no factorization"));
    }
    let exponents = factor_natural(n.magnitude())?.into_iter().map(|(p, e)| (p, e as i64)).collect();
    Ok(SignedFactorization { sign: if n.is_negative() { -1 } else { 1 }, exponents })
}

pub fn factor_rat(q: &Rat) -> Result<SignedFactorization> {
    if q.is_zero() {
        return Err(domain("zero has no factorization"));
    }
    let num = factor_int(q.numer())?;
    let mut exponents = num.exponents;
    for (p, e) in factor_natural(q.denom().magnitude())? {
        exponents.insert(p, -(e as i64));
    }
    Ok(SignedFactorization { sign: num.sign, exponents })
}

pub fn rebuild(f: &SignedFactorization) -> Rat {
    let mut num = BigInt::from(f.sign);
    let mut den = BigInt::one();
    for (p, &e) in &f.exponents {
        let pp = BigInt::from(p.clone()).pow(e.unsigned_abs() as u32);
        if e > 0 {
            num *= pp;
        } else {
            den *= pp;
        }
    }
    Rat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(sign: i8, pairs: &[(u64, i64)]) -> SignedFactorization {
        SignedFactorization {
            sign,
            exponents: pairs.iter().map(|&(p, e)| (BigUint::from(p), e)).collect(),
        }
    }

    #[test]
    fn factor_int_examples() {
        assert_eq!(factor_int(&BigInt::from(12)).unwrap(), fac(1, &[(2, 2), (3, 1)]));
        assert_eq!(factor_int(&BigInt::from(-1)).unwrap(), fac(-1, &[]));
        assert_eq!(factor_int(&BigInt::from(19)).unwrap(), fac(1, &[(19, 1)]));
        assert!(matches!(factor_int(&BigInt::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_rat_examples() {
        assert_eq!(factor_rat(&rat(6, 35)).unwrap(), fac(1, &[(2, 1), (3, 1), (5, -1), (7, -1)]));
        assert_eq!(factor_rat(&rat(1, 1)).unwrap(), fac(1, &[]));
        assert_eq!(factor_rat(&rat(-9, 4)).unwrap(), fac(-1, &[(2, -2), (3, 2)]));
        assert!(factor_rat(&rat(0, 1)).is_err());
    }

    #[test]
    fn rebuild_examples() {
        assert_eq!(rebuild(&fac(1, &[])), rat(1, 1));
        assert_eq!(rebuild(&fac(-1, &[(2, 1)])), rat(-2, 1));
        assert_eq!(rebuild(&fac(1, &[(3, -1), (5, 1)])), rat(5, 3));
    }

    #[test]
    fn nth_prime_examples() {
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(4), 7);
        assert_eq!(nth_prime(10), 29);
        assert_eq!(nth_prime(1000), 7919);
    }

    #[test]
    fn large_semiprime() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let r: BigUint = "170141183460469231731687303715884105727".parse().unwrap();
        let n = &p * &q * &r;
        let f = factor_natural(&n).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[&r], 1);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&factor_rat(&rat(-9, 4)).unwrap()).unwrap();
        assert_eq!(s, r#"{"sign":-1,"factors":[[2,-2],[3,2]]}"#);
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), rat(7, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}

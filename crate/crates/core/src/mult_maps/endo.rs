use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact_arith::{factor_rat, is_prime, Rat};

/// Finitely supported multiplicative endobijection of ℚ.
///
/// A prime p is sent to (η_p · perm(p))^(ν_p): the sign is attached to the image prime first and
/// the exponent flip applied afterwards. Primes outside the supports use perm(p) = p, η = ν = +1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EndoBijectionSpecQ {
    perm: BTreeMap<BigUint, BigUint>,
    eta: BTreeMap<BigUint, i8>,
    nu: BTreeMap<BigUint, i8>,
}

fn check_prime(p: &BigUint) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(domain(format!("{p} is not prime")))
    }
}

impl EndoBijectionSpecQ {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(
        perm: impl IntoIterator<Item = (BigUint, BigUint)>,
        eta: impl IntoIterator<Item = (BigUint, i8)>,
        nu: impl IntoIterator<Item = (BigUint, i8)>,
    ) -> Result<Self> {
        let perm: BTreeMap<_, _> = perm.into_iter().filter(|(a, b)| a != b).collect();
        let keys: BTreeSet<_> = perm.keys().collect();
        let vals: BTreeSet<_> = perm.values().collect();
        if keys != vals || vals.len() != perm.len() {
            return Err(domain("perm is not a bijection on its support"));
        }
        for p in perm.keys() {
            check_prime(p)?;
        }
        let signs = |m: &mut dyn Iterator<Item = (BigUint, i8)>| -> Result<BTreeMap<BigUint, i8>> {
            let mut out = BTreeMap::new();
            for (p, s) in m {
                check_prime(&p)?;
                match s {
                    1 => {}
                    -1 => {
                        out.insert(p, -1);
                    }
                    _ => return Err(domain(format!("sign for {p} must be ±1, got {s}"))),
                }
            }
            Ok(out)
        };
        let eta = signs(&mut eta.into_iter())?;
        let nu = signs(&mut nu.into_iter())?;
        Ok(EndoBijectionSpecQ { perm, eta, nu })
    }

    /// Transposition p ↔ q.
    pub fn swap(p: u64, q: u64) -> Result<Self> {
        Self::new([(p.into(), q.into()), (q.into(), p.into())], [], [])
    }

    pub fn image_prime(&self, p: &BigUint) -> BigUint {
        self.perm.get(p).cloned().unwrap_or_else(|| p.clone())
    }

    pub fn eta(&self, p: &BigUint) -> i8 {
        self.eta.get(p).copied().unwrap_or(1)
    }

    pub fn nu(&self, p: &BigUint) -> i8 {
        self.nu.get(p).copied().unwrap_or(1)
    }

    fn support(&self) -> BTreeSet<BigUint> {
        self.perm.keys().chain(self.eta.keys()).chain(self.nu.keys()).cloned().collect()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let mut perm = BTreeMap::new();
        let mut eta = BTreeMap::new();
        let mut nu = BTreeMap::new();
        let support: BTreeSet<BigUint> = self.support().into_iter().chain(other.support()).collect();
        for p in support {
            let r = other.image_prime(&p);
            perm.insert(p.clone(), self.image_prime(&r));
            eta.insert(p.clone(), other.eta(&p) * self.eta(&r));
            nu.insert(p.clone(), self.nu(&r) * other.nu(&p));
        }
        Self::new(perm, eta, nu).expect("composite of valid specs")
    }
}

pub fn endo_q_apply(s: &EndoBijectionSpecQ, q: &Rat) -> Result<Rat> {
    if q.is_zero() {
        return Ok(Rat::zero());
    }
    let f = factor_rat(q)?;
    let mut sign = f.sign as i64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, &e) in &f.exponents {
        if s.eta(p) < 0 && e % 2 != 0 {
            sign = -sign;
        }
        let e = e * s.nu(p) as i64;
        let pe = BigInt::from(s.image_prime(p)).pow(e.unsigned_abs() as u32);
        if e > 0 {
            num *= pe;
        } else {
            den *= pe;
        }
    }
    Ok(Rat::new(num * sign, den))
}

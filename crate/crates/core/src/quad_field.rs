//! Arithmetic and factorization in O_K = ℤ[ω], ω = (1+√−19)/2, ω² = ω − 5.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct, SerializeTuple};
use serde::{Serialize, Serializer};

use crate::error::{domain, integrity, Result};
use crate::exact_arith::{factor_natural, is_prime, serialize_bigint, Rat};

/// a + bω.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        QuadInt::new(a, 0)
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    pub fn omega() -> Self {
        QuadInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b + BigInt::from(5) * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        QuadInt { a: &self.a + &self.b, b: -&self.b }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// gcd(a, b), nonnegative.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }

    /// self / d when the quotient lies in O_K.
    pub fn exact_div(&self, d: &QuadInt) -> Option<QuadInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let t = self * &d.conj();
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(QuadInt { a: qa, b: qb })
    }

    pub fn div_int(&self, d: &BigInt) -> Option<QuadInt> {
        let (qa, ra) = self.a.div_rem(d);
        let (qb, rb) = self.b.div_rem(d);
        (ra.is_zero() && rb.is_zero()).then_some(QuadInt { a: qa, b: qb })
    }

    pub fn is_canonical(&self) -> bool {
        self.b.is_positive() || (self.b.is_zero() && self.a.is_positive())
    }

    /// Associate with b > 0, or b = 0 and a > 0.
    pub fn canonical_sign(&self) -> Self {
        if self.is_canonical() || self.is_zero() {
            self.clone()
        } else {
            -self
        }
    }

    pub fn is_prime_element(&self) -> bool {
        let n = self.norm();
        if n <= BigInt::one() {
            return false;
        }
        let m = n.magnitude();
        if is_prime(m) {
            return true;
        }
        // remaining primes are ±q with q inert
        self.b.is_zero() && is_prime(self.a.magnitude()) && splitting_kind(self.a.magnitude()) == Kind::Inert
    }

    /// Canonical primes carry a total order by (norm, a, b).
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.norm().cmp(&other.norm()).then_with(|| self.a.cmp(&other.a)).then_with(|| self.b.cmp(&other.b))
    }
}

impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    // (a+bω)(c+dω) = (ac − 5bd) + (ad + bc + bd)ω
    fn mul(self, o: &QuadInt) -> QuadInt {
        let bd = &self.b * &o.b;
        QuadInt {
            a: &self.a * &o.a - BigInt::from(5) * &bd,
            b: &self.a * &o.b + &self.b * &o.a + bd,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.a, &self.b);
        if b.is_zero() {
            return write!(f, "{a}");
        }
        let bpart = if b.is_one() {
            "ω".to_string()
        } else if *b == -BigInt::one() {
            "-ω".to_string()
        } else {
            format!("{b}ω")
        };
        if a.is_zero() {
            write!(f, "{bpart}")
        } else if b.is_negative() {
            write!(f, "{a}{bpart}")
        } else {
            write!(f, "{a}+{bpart}")
        }
    }
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct B<'a>(&'a BigInt);
        impl Serialize for B<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&B(&self.a))?;
        t.serialize_element(&B(&self.b))?;
        t.end()
    }
}

/// num/den with den > 0 and gcd(content(num), den) = 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadRat {
    num: QuadInt,
    den: BigInt,
}

impl QuadRat {
    pub fn new(num: QuadInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(domain("zero denominator"));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: QuadInt, den: BigInt) -> Self {
        if num.is_zero() {
            return QuadRat { num, den: BigInt::one() };
        }
        let mut g = num.content().gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return QuadRat { num, den };
        }
        QuadRat { num: num.div_int(&g).expect("gcd divides"), den: den / g }
    }

    pub fn zero() -> Self {
        QuadRat { num: QuadInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        QuadRat { num: QuadInt::one(), den: BigInt::one() }
    }

    pub fn from_rat(q: &Rat) -> Self {
        QuadRat { num: QuadInt::int(q.numer().clone()), den: q.denom().clone() }
    }

    pub fn num(&self) -> &QuadInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadRat { num: self.num.conj(), den: self.den.clone() }
    }

    /// The rational value when b = 0.
    pub fn to_rat(&self) -> Option<Rat> {
        self.num.b.is_zero().then(|| Rat::new(self.num.a.clone(), self.den.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain("zero has no inverse"));
        }
        let n = self.num.norm();
        let num = &self.num.conj() * &QuadInt::int(self.den.clone());
        Ok(Self::reduced(num, n))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(QuadRat { num: base.num.pow(k), den: base.den.pow(k) })
    }
}

impl From<QuadInt> for QuadRat {
    fn from(num: QuadInt) -> Self {
        QuadRat { num, den: BigInt::one() }
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;
    fn add(self, o: &QuadRat) -> QuadRat {
        let num = &(&self.num * &QuadInt::int(o.den.clone())) + &(&o.num * &QuadInt::int(self.den.clone()));
        QuadRat::reduced(num, &self.den * &o.den)
    }
}

impl Sub for &QuadRat {
    type Output = QuadRat;
    fn sub(self, o: &QuadRat) -> QuadRat {
        self + &(-o)
    }
}

impl Mul for &QuadRat {
    type Output = QuadRat;
    fn mul(self, o: &QuadRat) -> QuadRat {
        QuadRat::reduced(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.a.is_zero() || self.num.b.is_zero() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl Serialize for QuadRat {
    /// [a, b, den]
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct B<'a>(&'a BigInt);
        impl Serialize for B<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&B(&self.num.a))?;
        t.serialize_element(&B(&self.num.b))?;
        t.serialize_element(&B(&self.den))?;
        t.end()
    }
}

pub fn canonical_associate(x: &QuadInt) -> Result<QuadInt> {
    if !x.is_prime_element() {
        return Err(domain(format!("{x} is not a prime element")));
    }
    Ok(x.canonical_sign())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Inert,
    Split,
    Ramified,
}

/// Legendre symbol (−19 | p) by Euler's criterion; p an odd prime other than 19.
fn splitting_kind(p: &BigUint) -> Kind {
    let two = BigUint::from(2u32);
    if *p == BigUint::from(19u32) {
        return Kind::Ramified;
    }
    if *p == two {
        return Kind::Inert;
    }
    let r = (p - (BigUint::from(19u32) % p)) % p;
    let e = (p - 1u32) / &two;
    if r.modpow(&e, p).is_one() {
        Kind::Split
    } else {
        Kind::Inert
    }
}

/// How a rational prime decomposes in O_K.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Splitting {
    Inert(QuadInt),
    /// Two canonical conjugates, ordered by (norm, a, b).
    Split(QuadInt, QuadInt),
    Ramified(QuadInt),
}

impl Splitting {
    pub fn primes(&self) -> Vec<QuadInt> {
        match self {
            Splitting::Inert(p) | Splitting::Ramified(p) => vec![p.clone()],
            Splitting::Split(p, q) => vec![p.clone(), q.clone()],
        }
    }

    /// Exponent of each prime in the rational prime, and the leftover unit.
    fn rational_prime_factorization(&self) -> (i8, Vec<(QuadInt, i64)>) {
        match self {
            Splitting::Inert(p) => (1, vec![(p.clone(), 1)]),
            // π·π̄ = p with both canonical: the product is ±p
            Splitting::Split(p, q) => {
                let prod = p * q;
                (if prod.a.is_positive() { 1 } else { -1 }, vec![(p.clone(), 1), (q.clone(), 1)])
            }
            Splitting::Ramified(p) => {
                let prod = p * p;
                (if prod.a.is_positive() { 1 } else { -1 }, vec![(p.clone(), 2)])
            }
        }
    }
}

/// Square root of `n` modulo an odd prime `p` (Tonelli–Shanks); `n` must be a residue.
pub(crate) fn sqrt_mod(n: &BigUint, p: &BigUint) -> Option<BigUint> {
    let n = n % p;
    if n.is_zero() {
        return Some(n);
    }
    let one = BigUint::one();
    let pm1 = p - &one;
    if !n.modpow(&(&pm1 >> 1), p).is_one() {
        return None;
    }
    if (p % 4u32) == BigUint::from(3u32) {
        return Some(n.modpow(&((p + &one) >> 2), p));
    }
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigUint::from(2u32);
    while z.modpow(&(&pm1 >> 1), p) != pm1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = n.modpow(&q, p);
    let mut r = n.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2 % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = &t * &c % p;
        r = &r * &b % p;
    }
    Some(r)
}

/// Solves 4p = x² + 19y² for a split prime p (Cornacchia, modified form for D ≡ 1 mod 4).
fn cornacchia(p: &BigUint) -> Result<(BigInt, BigInt)> {
    let nineteen = BigUint::from(19u32);
    let d = (p - (&nineteen % p)) % p;
    let mut r = sqrt_mod(&d, p).ok_or_else(|| integrity(format!("−19 is not a square mod {p}")))?;
    if r.is_even() {
        r = p - r;
    }
    let four_p = p * 4u32;
    let bound = four_p.sqrt();
    let (mut a, mut b) = (p * 2u32, r);
    while b > bound {
        let t = &a % &b;
        a = b;
        b = t;
    }
    let rest = &four_p - &b * &b;
    if !(&rest % &nineteen).is_zero() {
        return Err(integrity(format!("Cornacchia failed for {p}")));
    }
    let y2 = rest / &nineteen;
    let y = y2.sqrt();
    if &y * &y != y2 {
        return Err(integrity(format!("Cornacchia failed for {p}")));
    }
    Ok((BigInt::from(b), BigInt::from(y)))
}

pub fn primes_above(p: &BigUint) -> Result<Splitting> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    Ok(match splitting_kind(p) {
        Kind::Inert => Splitting::Inert(QuadInt::int(BigInt::from(p.clone()))),
        Kind::Ramified => Splitting::Ramified(QuadInt::new(-1, 2)),
        Kind::Split => {
            let (x, y) = cornacchia(p)?;
            // x = 2a + b, y = b
            let pi = QuadInt { a: (&x - &y) / 2, b: y }.canonical_sign();
            let bar = pi.conj().canonical_sign();
            if pi < bar {
                Splitting::Split(pi, bar)
            } else {
                Splitting::Split(bar, pi)
            }
        }
    })
}

/// The rational prime lying under a canonical prime π.
pub fn rational_prime_below(pi: &QuadInt) -> BigUint {
    if pi.b.is_zero() {
        pi.a.magnitude().clone()
    } else {
        pi.norm().magnitude().clone()
    }
}

/// unit · ∏ π^e with canonical primes π, sorted by (norm, a, b).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KFactorization {
    pub unit: i8,
    pub factors: BTreeMap<QuadInt, i64>,
}

impl KFactorization {
    pub fn rebuild(&self) -> QuadRat {
        let mut num = QuadInt::int(self.unit);
        let mut den = QuadInt::one();
        for (p, &e) in &self.factors {
            let pp = p.pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &pp;
            } else {
                den = &den * &pp;
            }
        }
        QuadRat::from(num).div(&QuadRat::from(den)).expect("nonzero product")
    }

    fn add(&mut self, p: QuadInt, e: i64) {
        let slot = self.factors.entry(p.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&p);
        }
    }
}

impl Serialize for KFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Pairs<'a>(&'a BTreeMap<QuadInt, i64>);
        impl Serialize for Pairs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for pe in self.0 {
                    seq.serialize_element(&pe)?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("KFactorization", 2)?;
        st.serialize_field("unit", &self.unit)?;
        st.serialize_field("factors", &Pairs(&self.factors))?;
        st.end()
    }
}

impl fmt::Display for KFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (p, e) in &self.factors {
            let p = if p.b.is_zero() || (p.a.is_zero() && p.b.is_one()) { p.to_string() } else { format!("({p})") };
            if *e == 1 {
                write!(f, " * {p}")?;
            } else {
                write!(f, " * {p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn strip(x: &mut QuadInt, pi: &QuadInt) -> i64 {
    let mut e = 0;
    while let Some(q) = x.exact_div(pi) {
        *x = q;
        e += 1;
    }
    e
}

pub fn factor_quad(x: &QuadRat) -> Result<KFactorization> {
    if x.is_zero() {
        return Err(domain("zero has no factorization"));
    }
    let mut out = KFactorization { unit: 1, factors: BTreeMap::new() };
    let mut num = x.num.clone();
    if !x.den.is_one() {
        for (p, e) in factor_natural(x.den.magnitude())? {
            let split = primes_above(&p)?;
            // num shares no rational factor with den, but may contain primes above p
            for pi in split.primes() {
                let k = strip(&mut num, &pi);
                if k > 0 {
                    out.add(pi, k);
                }
            }
            let (u, parts) = split.rational_prime_factorization();
            if u < 0 && e % 2 == 1 {
                out.unit = -out.unit;
            }
            for (pi, m) in parts {
                out.add(pi, -m * e as i64);
            }
        }
    }
    let n = num.norm();
    if !n.is_one() {
        for (p, _) in factor_natural(n.magnitude())? {
            for pi in primes_above(&p)?.primes() {
                let k = strip(&mut num, &pi);
                if k > 0 {
                    out.add(pi, k);
                }
            }
        }
    }
    if num.b.is_zero() && num.a.magnitude().is_one() {
        if num.a.is_negative() {
            out.unit = -out.unit;
        }
        Ok(out)
    } else {
        Err(integrity(format!("factorization left non-unit cofactor {num}")))
    }
}

//! Small finite fields with fully materialized tables.

mod additions;
mod modnear;

pub use additions::{
    addition_from_exponent, check_isomorphic_additions, enumerate_additions, enumerate_additions_with, field_axioms,
    native_addition, AdditionTable, AxiomMode, Enumeration, Provenance,
};
pub use modnear::{modnear_ring_check, ModnearOutcome};

use std::fmt;

use serde::Serialize;

use crate::error::{domain, integrity, Result};

/// Element index: the coefficient vector (c_0, ..., c_{n-1}) read as Σ c_i p^i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Fe(pub u16);

impl Fe {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Supported (p, n) with their fixed moduli, low coefficient first.
const MODULI: [(u32, u32, &[u32]); 5] = [
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    n: u32,
    modulus: Vec<u32>,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    generator: Fe,
    exp: Vec<u16>,
    log: Vec<u32>,
}

fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let top = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if top != 0 {
            let c = top * lead_inv % p;
            for (i, &mi) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - c * mi % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero mod prime")
}

/// Exhaustive search for a monic factor of degree 1..=deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut f: Vec<u32> = (0..d).map(|i| (idx / (p as usize).pow(i as u32) % p as usize) as u32).collect();
            f.push(1);
            if poly_rem(m.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// pⁿ.
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn name(&self) -> String {
        format!("F{}", self.q)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q as u16).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.q as u16).map(Fe)
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    pub fn minus_one(&self) -> Fe {
        self.neg(Fe(1))
    }

    /// Image of the integer c in the prime subfield.
    pub fn from_int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.p as i64) as u16)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0 as u32;
        (0..self.n)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        Fe(c.iter().rev().fold(0u32, |acc, &x| acc * self.p + x % self.p) as u16)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.idx() * self.q + b.idx()])
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.idx() * self.q + b.idx()])
    }

    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.idx()])
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a.0 != 0).then(|| Fe(self.inv[a.idx()]))
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// Discrete log to the fixed generator.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.idx()])
    }

    /// a^k with 0^0 = 1 and 0^k = 0 for k > 0.
    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let e = (self.log[a.idx()] as u64 * (k % (self.q as u64 - 1))) % (self.q as u64 - 1);
        Fe(self.exp[e as usize])
    }

    fn mul_poly(&self, a: Fe, b: Fe) -> Fe {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; 2 * self.n as usize - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(prod, &self.modulus, self.p);
        self.from_coeffs(&r)
    }
}

pub fn make_field(p: u32, n: u32) -> Result<FiniteField> {
    let (_, _, m) = MODULI
        .iter()
        .find(|(pp, nn, _)| *pp == p && *nn == n)
        .ok_or_else(|| domain(format!("unsupported field ({p},{n}); supported: F4, F8, F9, F25, F27")))?;
    if !is_irreducible(m, p) {
        return Err(integrity(format!("modulus {m:?} is reducible mod {p}")));
    }
    let q = (p as usize).pow(n);
    let mut f = FiniteField {
        p,
        n,
        modulus: m.to_vec(),
        q,
        add: vec![0; q * q],
        mul: vec![0; q * q],
        neg: vec![0; q],
        inv: vec![0; q],
        generator: Fe(0),
        exp: Vec::new(),
        log: vec![0; q],
    };
    for a in 0..q {
        let ca = f.coeffs(Fe(a as u16));
        let negc: Vec<u32> = ca.iter().map(|&c| (p - c) % p).collect();
        f.neg[a] = f.from_coeffs(&negc).0;
        for b in 0..q {
            let cb = f.coeffs(Fe(b as u16));
            let s: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
            f.add[a * q + b] = f.from_coeffs(&s).0;
            f.mul[a * q + b] = f.mul_poly(Fe(a as u16), Fe(b as u16)).0;
        }
    }
    for a in 1..q {
        f.inv[a] = (1..q).find(|&b| f.mul[a * q + b] == 1).ok_or_else(|| integrity("zero divisor"))? as u16;
    }
    let g = (1..q as u16)
        .map(Fe)
        .find(|&g| {
            let mut x = g;
            let mut ord = 1;
            while x != Fe(1) {
                x = f.mul(x, g);
                ord += 1;
            }
            ord == q - 1
        })
        .ok_or_else(|| integrity("no generator of the unit group"))?;
    f.generator = g;
    let mut x = Fe(1);
    for e in 0..q - 1 {
        f.exp.push(x.0);
        f.log[x.idx()] = e as u32;
        x = f.mul(x, g);
    }
    if x != Fe(1) || f.exp.iter().collect::<std::collections::HashSet<_>>().len() != q - 1 {
        return Err(integrity("generator check failed"));
    }
    Ok(f)
}

/// `f4`, `f8`, `f9`, `f25`, `f27`.
pub fn field_by_name(name: &str) -> Result<FiniteField> {
    match name.to_ascii_lowercase().as_str() {
        "f4" => make_field(2, 2),
        "f8" => make_field(2, 3),
        "f9" => make_field(3, 2),
        "f25" => make_field(5, 2),
        "f27" => make_field(3, 3),
        other => Err(domain(format!("unknown field {other:?}"))),
    }
}

pub fn supported_fields() -> Vec<FiniteField> {
    MODULI.iter().map(|(p, n, _)| make_field(*p, *n).expect("fixed moduli are valid")).collect()
}

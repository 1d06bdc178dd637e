//! Carriers with an addition and a multiplication, and bijections between them.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact_arith::Rat;
use crate::finite_structures::{AdditionTable, Fe, FiniteField};
use crate::quad_field::QuadRat;
use crate::report::{Check, Report};

/// A candidate (near-)field: an addition plus a scalar group (F, ·) with 0 and −1.
///
/// `neg` is multiplication by −1 and `inv` fails on zero.
pub trait Structure {
    type Elem: Clone + PartialEq + fmt::Display;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Every element, for finite carriers.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// Field axioms on the given triples: each triple (α, β, γ) feeds every law it can.
pub fn check_field_axioms<S: Structure>(s: &S, triples: &[(S::Elem, S::Elem, S::Elem)]) -> Result<Report> {
    let mut rep = Report::new(format!("field axioms on {}", s.name()));
    let names = [
        "additive associativity",
        "additive commutativity",
        "zero",
        "additive inverses",
        "multiplicative associativity",
        "multiplicative commutativity",
        "one",
        "multiplicative inverses",
        "left distributivity",
        "right distributivity",
    ];
    let mut c: Vec<Check> = names.iter().map(|n| Check::new(*n)).collect();
    let (zero, one) = (s.zero(), s.one());
    for (a, b, g) in triples {
        let w = || vec![a.to_string(), b.to_string(), g.to_string()];
        let ab = s.add(a, b)?;
        c[0].record(s.add(&ab, g)? == s.add(a, &s.add(b, g)?)?, w);
        c[1].record(ab == s.add(b, a)?, w);
        c[2].record(s.add(a, &zero)? == *a, w);
        c[3].record(s.is_zero(&s.add(a, &s.neg(a)?)?), w);
        let m = s.mul(a, b)?;
        c[4].record(s.mul(&m, g)? == s.mul(a, &s.mul(b, g)?)?, w);
        c[5].record(m == s.mul(b, a)?, w);
        c[6].record(s.mul(a, &one)? == *a, w);
        if !s.is_zero(a) {
            c[7].record(s.mul(a, &s.inv(a)?)? == one, w);
        }
        let bg = s.add(b, g)?;
        c[8].record(s.mul(a, &bg)? == s.add(&s.mul(a, b)?, &s.mul(a, g)?)?, w);
        c[9].record(s.mul(&bg, a)? == s.add(&s.mul(b, a)?, &s.mul(g, a)?)?, w);
    }
    for x in c {
        rep.push(x);
    }
    Ok(rep)
}

/// (ℚ, +, ·)
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Structure for Rationals {
    type Elem = Rat;

    fn name(&self) -> String {
        "(Q,+,·)".into()
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Result<Rat> {
        Ok(a + b)
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

/// (K, +, ·) with K = ℚ(√−19).
#[derive(Clone, Copy, Debug, Default)]
pub struct QuadField;

impl Structure for QuadField {
    type Elem = QuadRat;

    fn name(&self) -> String {
        "(K,+,·)".into()
    }
    fn zero(&self) -> QuadRat {
        QuadRat::zero()
    }
    fn one(&self) -> QuadRat {
        QuadRat::one()
    }
    fn add(&self, a: &QuadRat, b: &QuadRat) -> Result<QuadRat> {
        Ok(a + b)
    }
    fn mul(&self, a: &QuadRat, b: &QuadRat) -> Result<QuadRat> {
        Ok(a * b)
    }
    fn neg(&self, a: &QuadRat) -> Result<QuadRat> {
        Ok(-a)
    }
    fn inv(&self, a: &QuadRat) -> Result<QuadRat> {
        a.inv()
    }
}

/// (F, t, ·): a finite field's multiplication with an arbitrary addition table.
#[derive(Clone, Copy, Debug)]
pub struct FieldStructure<'a> {
    pub field: &'a FiniteField,
    pub add: &'a AdditionTable,
}

impl<'a> FieldStructure<'a> {
    pub fn new(field: &'a FiniteField, add: &'a AdditionTable) -> Self {
        FieldStructure { field, add }
    }
}

impl Structure for FieldStructure<'_> {
    type Elem = Fe;

    fn name(&self) -> String {
        format!("({}, {}, ·)", self.field.name(), self.add.provenance)
    }
    fn zero(&self) -> Fe {
        self.field.zero()
    }
    fn one(&self) -> Fe {
        self.field.one()
    }
    fn add(&self, a: &Fe, b: &Fe) -> Result<Fe> {
        Ok(self.add.get(*a, *b))
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Result<Fe> {
        Ok(self.field.mul(*a, *b))
    }
    fn neg(&self, a: &Fe) -> Result<Fe> {
        Ok(self.field.neg(*a))
    }
    fn inv(&self, a: &Fe) -> Result<Fe> {
        self.field.inv(*a).ok_or_else(|| domain("zero has no inverse"))
    }
    fn elements(&self) -> Option<Vec<Fe>> {
        Some(self.field.elements().collect())
    }
}

/// A bijection with its inverse.
pub trait Bijection<S, T> {
    fn apply(&self, x: &S) -> Result<T>;
    fn invert(&self, y: &T) -> Result<S>;
}

/// Bijection from a pair of closures.
pub struct FnBijection<F, G>(pub F, pub G);

impl<S, T, F, G> Bijection<S, T> for FnBijection<F, G>
where
    F: Fn(&S) -> Result<T>,
    G: Fn(&T) -> Result<S>,
{
    fn apply(&self, x: &S) -> Result<T> {
        (self.0)(x)
    }
    fn invert(&self, y: &T) -> Result<S> {
        (self.1)(y)
    }
}

/// A permutation of a finite field's element indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm {
    fwd: Vec<u16>,
    back: Vec<u16>,
}

impl Perm {
    pub fn from_table(fwd: Vec<u16>) -> Result<Self> {
        let n = fwd.len();
        let mut back = vec![u16::MAX; n];
        for (i, &v) in fwd.iter().enumerate() {
            if v as usize >= n || back[v as usize] != u16::MAX {
                return Err(domain(format!("table {fwd:?} is not a bijection")));
            }
            back[v as usize] = i as u16;
        }
        Ok(Perm { fwd, back })
    }

    pub fn from_fn(f: &FiniteField, map: impl Fn(Fe) -> Fe) -> Result<Self> {
        Self::from_table(f.elements().map(|x| map(x).0).collect())
    }

    pub fn identity(size: usize) -> Self {
        let t: Vec<u16> = (0..size as u16).collect();
        Perm { fwd: t.clone(), back: t }
    }

    /// x ↦ λ·x^k.
    pub fn power(f: &FiniteField, k: u64, lambda: Fe) -> Result<Self> {
        Self::from_fn(f, |x| f.mul(lambda, f.pow(x, k)))
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    pub fn at(&self, x: Fe) -> Fe {
        Fe(self.fwd[x.idx()])
    }

    pub fn inv_at(&self, y: Fe) -> Fe {
        Fe(self.back[y.idx()])
    }

    pub fn table(&self) -> &[u16] {
        &self.fwd
    }

    pub fn inverse(&self) -> Perm {
        Perm { fwd: self.back.clone(), back: self.fwd.clone() }
    }

    /// self ∘ other
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm::from_table(other.fwd.iter().map(|&x| self.fwd[x as usize]).collect()).expect("composite of bijections")
    }

    /// Swaps the images of `a` and `b`.
    pub fn swapped(&self, a: Fe, b: Fe) -> Perm {
        let mut fwd = self.fwd.clone();
        fwd.swap(a.idx(), b.idx());
        Perm::from_table(fwd).expect("swap keeps bijectivity")
    }
}

impl Bijection<Fe, Fe> for Perm {
    fn apply(&self, x: &Fe) -> Result<Fe> {
        Ok(self.at(*x))
    }
    fn invert(&self, y: &Fe) -> Result<Fe> {
        Ok(self.inv_at(*y))
    }
}

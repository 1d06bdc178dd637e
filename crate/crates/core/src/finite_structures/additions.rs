use std::collections::BTreeMap;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Fe, FiniteField};
use crate::error::{domain, integrity, Result};
use crate::report::{Check, Report};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Native,
    Exponent(u64),
    Derived(String),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Native => write!(f, "+"),
            Provenance::Exponent(a) => write!(f, "⊞{a}"),
            Provenance::Derived(s) => write!(f, "{s}"),
        }
    }
}

/// Full m×m table of a binary operation on element indices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AdditionTable {
    pub size: usize,
    pub table: Vec<u16>,
    pub provenance: Provenance,
}

impl AdditionTable {
    pub fn from_fn(size: usize, provenance: Provenance, mut op: impl FnMut(Fe, Fe) -> Fe) -> Self {
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size as u16 {
            for b in 0..size as u16 {
                table.push(op(Fe(a), Fe(b)).0);
            }
        }
        AdditionTable { size, table, provenance }
    }

    pub fn get(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.table[a.idx() * self.size + b.idx()])
    }

    /// Same operation, ignoring provenance.
    pub fn same_op(&self, other: &Self) -> bool {
        self.size == other.size && self.table == other.table
    }

    pub fn rows(&self) -> Vec<Vec<u16>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }
}

pub fn native_addition(f: &FiniteField) -> AdditionTable {
    AdditionTable::from_fn(f.order(), Provenance::Native, |a, b| f.add(a, b))
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i64).extended_gcd(&(m as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i64) as u64)
}

/// ⊞_a(α, β) = (α^a + β^a)^(a⁻¹ mod pⁿ−1), zero rows passing through.
pub fn addition_from_exponent(f: &FiniteField, a: u64) -> Result<AdditionTable> {
    let m = f.order() as u64 - 1;
    if a == 0 {
        return Err(domain("exponent must be positive"));
    }
    let ainv = inverse_mod(a % m, m)
        .ok_or_else(|| domain(format!("{a} is not a unit mod {m}")))?;
    let ainv = if ainv == 0 { m } else { ainv };
    Ok(AdditionTable::from_fn(f.order(), Provenance::Exponent(a), |x, y| {
        if x.0 == 0 {
            y
        } else if y.0 == 0 {
            x
        } else {
            f.pow(f.add(f.pow(x, a), f.pow(y, a)), ainv)
        }
    }))
}

#[derive(Clone, Copy, Debug)]
pub enum AxiomMode {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
}

impl AxiomMode {
    /// Exhaustive up to nine elements, otherwise 10⁶ seeded triples.
    pub fn default_for(f: &FiniteField) -> Self {
        if f.order() <= 9 {
            AxiomMode::Exhaustive
        } else {
            AxiomMode::Sampled { triples: 1_000_000, seed: 0x5eed }
        }
    }

    fn triples(self, q: usize) -> Box<dyn Iterator<Item = (Fe, Fe, Fe)>> {
        match self {
            AxiomMode::Exhaustive => Box::new((0..q * q * q).map(move |i| {
                (Fe((i / (q * q)) as u16), Fe((i / q % q) as u16), Fe((i % q) as u16))
            })),
            AxiomMode::Sampled { triples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Box::new((0..triples).map(move |_| {
                    let mut pick = || Fe(rng.gen_range(0..q) as u16);
                    (pick(), pick(), pick())
                }))
            }
        }
    }
}

/// Field-axiom suite for (F, t, ·) with the native multiplication.
pub fn field_axioms(f: &FiniteField, t: &AdditionTable, mode: AxiomMode) -> Report {
    let q = f.order();
    let s = |x: Fe| x.to_string();
    let mut r = Report::new(format!("field axioms for {} on {}", t.provenance, f.name()));
    let mut closure = Check::new("closure");
    for &v in &t.table {
        closure.record((v as usize) < q, || vec![v.to_string()]);
    }
    r.push(closure);
    let mut zero = Check::new("zero");
    let mut inverses = Check::new("inverses");
    let mut comm = Check::new("commutativity");
    for a in f.elements() {
        zero.record(t.get(f.zero(), a) == a && t.get(a, f.zero()) == a, || vec![s(a)]);
        inverses.record(f.elements().any(|b| t.get(a, b) == f.zero()), || vec![s(a)]);
        for b in f.elements() {
            comm.record(t.get(a, b) == t.get(b, a), || vec![s(a), s(b)]);
        }
    }
    r.push(zero);
    r.push(inverses);
    r.push(comm);
    let mut assoc = Check::new("associativity");
    let mut left = Check::new("left distributivity");
    let mut right = Check::new("right distributivity");
    for (a, b, c) in mode.triples(q) {
        let w = || vec![s(a), s(b), s(c)];
        assoc.record(t.get(a, t.get(b, c)) == t.get(t.get(a, b), c), w);
        left.record(f.mul(a, t.get(b, c)) == t.get(f.mul(a, b), f.mul(a, c)), w);
        right.record(f.mul(t.get(a, b), c) == t.get(f.mul(a, c), f.mul(b, c)), w);
    }
    if let AxiomMode::Sampled { triples, seed } = mode {
        let note = format!("{triples} sampled triples, seed {seed}");
        assoc = assoc.with_note(note.clone());
        left = left.with_note(note.clone());
        right = right.with_note(note);
    }
    r.push(assoc);
    r.push(left);
    r.push(right);
    let mut mult = Check::new("multiplicative group");
    for a in f.nonzero() {
        mult.record(f.inv(a).map(|i| f.mul(a, i)) == Some(f.one()), || vec![s(a)]);
        for b in f.nonzero() {
            mult.record(f.mul(a, b).0 != 0, || vec![s(a), s(b)]);
        }
    }
    r.push(mult);
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub field: String,
    pub units: Vec<u64>,
    /// Units grouped by identical table, each class ascending, classes by first member.
    pub classes: Vec<Vec<u64>>,
    /// One table per class, same order as `classes`.
    pub tables: Vec<AdditionTable>,
    #[serde(skip)]
    pub frobenius: Check,
    #[serde(skip)]
    pub axioms: Vec<Report>,
}

impl Enumeration {
    pub fn class_of(&self, a: u64) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&a))
    }

    pub fn passed(&self) -> bool {
        self.frobenius.passed && self.axioms.iter().all(Report::passed)
    }
}

pub fn enumerate_additions(f: &FiniteField) -> Result<Enumeration> {
    enumerate_additions_with(f, AxiomMode::default_for(f))
}

pub fn enumerate_additions_with(f: &FiniteField, mode: AxiomMode) -> Result<Enumeration> {
    let m = f.order() as u64 - 1;
    let units: Vec<u64> = (1..=m.max(1)).filter(|&a| a.gcd(&m) == 1 && a <= m).collect();
    let mut by_unit = BTreeMap::new();
    let mut tables: Vec<AdditionTable> = Vec::new();
    let mut classes: Vec<Vec<u64>> = Vec::new();
    for &a in &units {
        let t = addition_from_exponent(f, a)?;
        match tables.iter().position(|u| u.same_op(&t)) {
            Some(i) => classes[i].push(a),
            None => {
                tables.push(t.clone());
                classes.push(vec![a]);
            }
        }
        by_unit.insert(a, t);
    }
    let mut frobenius = Check::new("frobenius collapse");
    let p = f.p() as u64;
    for &a in &units {
        let pa = (p * a) % m;
        let pa = if pa == 0 { m } else { pa };
        frobenius.record(by_unit[&a].same_op(&by_unit[&pa]), || vec![a.to_string(), pa.to_string()]);
    }
    let axioms = tables.iter().map(|t| field_axioms(f, t, mode)).collect();
    Ok(Enumeration { field: f.name(), units, classes, tables, frobenius, axioms })
}

/// Smallest k with x ↦ x^k an isomorphism (F, t1) → (F, t2).
pub fn check_isomorphic_additions(f: &FiniteField, t1: &AdditionTable, t2: &AdditionTable) -> Result<u64> {
    let m = f.order() as u64 - 1;
    'k: for k in (1..=m.max(1)).filter(|&k| k.gcd(&m) == 1) {
        for a in f.elements() {
            for b in f.elements() {
                if f.pow(t1.get(a, b), k) != t2.get(f.pow(a, k), f.pow(b, k)) {
                    continue 'k;
                }
            }
        }
        return Ok(k);
    }
    Err(integrity(format!(
        "no power-map isomorphism between {} and {} on {}",
        t1.provenance,
        t2.provenance,
        f.name()
    )))
}

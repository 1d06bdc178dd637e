//! Near-field addition maps ρ, the ρ ↔ ⊞ correspondence and the characteristic map.

use serde::Serialize;

use crate::error::{domain, integrity, Result};
use crate::exact_arith::is_prime;
use crate::finite_structures::{Fe, FiniteField};
use crate::report::{Check, Report};
use crate::structures::{Perm, Structure};

type RhoFn<'a, E> = Box<dyn Fn(&E) -> Result<E> + 'a>;

/// ρ on a carrier's scalar group.
pub struct RhoMap<'a, S: Structure> {
    carrier: &'a S,
    label: String,
    rho: RhoFn<'a, S::Elem>,
}

impl<'a, S: Structure> RhoMap<'a, S> {
    pub fn new(carrier: &'a S, label: impl Into<String>, rho: impl Fn(&S::Elem) -> Result<S::Elem> + 'a) -> Self {
        RhoMap { carrier, label: label.into(), rho: Box::new(rho) }
    }

    pub fn eval(&self, a: &S::Elem) -> Result<S::Elem> {
        (self.rho)(a)
    }

    pub fn carrier(&self) -> &'a S {
        self.carrier
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Full value list on a finite carrier, in element order.
    pub fn table(&self) -> Result<Option<Vec<S::Elem>>> {
        match self.carrier.elements() {
            Some(els) => Ok(Some(els.iter().map(|e| self.eval(e)).collect::<Result<_>>()?)),
            None => Ok(None),
        }
    }
}

impl<'a, 'f> RhoMap<'a, crate::structures::FieldStructure<'f>> {
    /// ρ given by an explicit table of element indices.
    pub fn from_table(carrier: &'a crate::structures::FieldStructure<'f>, label: impl Into<String>, table: Vec<u16>) -> Self {
        RhoMap::new(carrier, label, move |a: &Fe| Ok(Fe(table[a.idx()])))
    }
}

/// ρ_⊞(α) = 1 ⊞ α.
pub fn rho_from_add<S: Structure>(s: &S) -> RhoMap<'_, S> {
    RhoMap::new(s, format!("1 + α in {}", s.name()), move |a| s.add(&s.one(), a))
}

/// α ⊞_ρ β = α·ρ(α⁻¹β) for α ≠ 0, and β otherwise.
pub fn add_from_rho<S: Structure>(r: &RhoMap<'_, S>, a: &S::Elem, b: &S::Elem) -> Result<S::Elem> {
    let s = r.carrier;
    if s.is_zero(a) {
        return Ok(b.clone());
    }
    s.mul(a, &r.eval(&s.mul(&s.inv(a)?, b)?)?)
}

/// Properties 1–4 of a near-field addition map, bijectivity via α ↦ −ρ(−α), and (redundantly)
/// commutativity of ⊞_ρ.
pub fn verify_rho_axioms<S: Structure>(r: &RhoMap<'_, S>, points: &[S::Elem], pairs: &[(S::Elem, S::Elem)]) -> Result<Report> {
    let s = r.carrier;
    let (zero, one) = (s.zero(), s.one());
    let minus_one = s.neg(&one)?;
    let mut rep = Report::new(format!("near-field addition map axioms ({})", r.label));

    let mut p1 = Check::new("identity: ρ(0) = 1");
    let r0 = r.eval(&zero)?;
    p1.record(r0 == one, || vec![r0.to_string()]);
    rep.push(p1);

    let mut p2 = Check::new("inverse: ρ(−1) = 0");
    let rm = r.eval(&minus_one)?;
    p2.record(rm == zero, || vec![rm.to_string()]);
    rep.push(p2);

    let mut p3 = Check::new("abelian: ρ(α⁻¹) = α⁻¹ρ(α)");
    let mut bij = Check::new("bijective with inverse α ↦ −ρ(−α)");
    for a in points {
        if !s.is_zero(a) {
            let ai = s.inv(a)?;
            p3.record(r.eval(&ai)? == s.mul(&ai, &r.eval(a)?)?, || vec![a.to_string()]);
        }
        let back = s.neg(&r.eval(&s.neg(a)?)?)?;
        let ok = r.eval(&back)? == *a && s.neg(&r.eval(&s.neg(&r.eval(a)?)?)?)? == *a;
        bij.record(ok, || vec![a.to_string()]);
    }
    rep.push(p3);

    let mut p4 = Check::new("associative: ρ(αρ(β)) = αρ(βρ((αβ)⁻¹))");
    let mut comm = Check::new("⊞_ρ commutative (redundant)");
    for (a, b) in pairs {
        if !s.is_zero(a) && !s.is_zero(b) {
            let lhs = r.eval(&s.mul(a, &r.eval(b)?)?)?;
            let ab_inv = s.inv(&s.mul(a, b)?)?;
            let rhs = s.mul(a, &r.eval(&s.mul(b, &r.eval(&ab_inv)?)?)?)?;
            p4.record(lhs == rhs, || vec![a.to_string(), b.to_string()]);
        }
        comm.record(add_from_rho(r, a, b)? == add_from_rho(r, b, a)?, || vec![a.to_string(), b.to_string()]);
    }
    rep.push(p4);
    rep.push(bij);
    rep.push(comm);
    Ok(rep)
}

fn all_pairs<E: Clone>(els: &[E]) -> Vec<(E, E)> {
    els.iter().flat_map(|a| els.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

/// `verify_rho_axioms` over every element and pair of a finite carrier.
pub fn verify_rho_exhaustive<S: Structure>(r: &RhoMap<'_, S>) -> Result<Report> {
    let els = r.carrier.elements().ok_or_else(|| domain("carrier is not finite"))?;
    verify_rho_axioms(r, &els, &all_pairs(&els))
}

/// ⊞ → ρ_⊞ → ⊞_{ρ_⊞} reproduces ⊞.
pub fn nfa_round_trip_add<S: Structure>(s: &S, pairs: &[(S::Elem, S::Elem)]) -> Result<Check> {
    let r = rho_from_add(s);
    let mut c = Check::new("⊞ → ρ → ⊞ round trip");
    for (a, b) in pairs {
        c.record(add_from_rho(&r, a, b)? == s.add(a, b)?, || vec![a.to_string(), b.to_string()]);
    }
    Ok(c)
}

/// ρ → ⊞_ρ → ρ_{⊞_ρ} reproduces ρ.
pub fn nfa_round_trip_rho<S: Structure>(r: &RhoMap<'_, S>, points: &[S::Elem]) -> Result<Check> {
    let one = r.carrier.one();
    let mut c = Check::new("ρ → ⊞ → ρ round trip");
    for a in points {
        c.record(add_from_rho(r, &one, a)? == r.eval(a)?, || vec![a.to_string()]);
    }
    Ok(c)
}

/// n-fold ⊞_ρ sum of α equals α·ρⁿ(0).
pub fn repeated_add_check<S: Structure>(r: &RhoMap<'_, S>, a: &S::Elem, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    let s = r.carrier;
    let mut sum = a.clone();
    let mut rn = r.eval(&s.zero())?;
    for _ in 1..n {
        sum = add_from_rho(r, &sum, a)?;
        rn = r.eval(&rn)?;
    }
    Ok(sum == s.mul(a, &rn)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharMapResult<E> {
    /// 0 when no zero of χ_ρ was found up to the bound.
    pub characteristic: u64,
    /// Characteristic 0 reported from a finite search only.
    pub bounded_evidence: bool,
    pub table: Vec<(i64, E)>,
    /// C̃_p for finite characteristic, otherwise the tabulated image.
    pub prime_subfield: Vec<E>,
    pub checks: Report,
}

/// χ_ρ(n) = sgn(n)·ρ^|n|(0) for |n| ≤ bound.
pub fn char_map<S: Structure>(r: &RhoMap<'_, S>, bound: u32) -> Result<CharMapResult<S::Elem>> {
    if bound < 2 {
        return Err(domain("bound must be at least 2"));
    }
    let s = r.carrier;
    let mut pos = vec![s.zero()];
    for _ in 0..bound {
        let next = r.eval(pos.last().expect("nonempty"))?;
        pos.push(next);
    }
    let characteristic = (1..pos.len()).find(|&n| s.is_zero(&pos[n])).map_or(0, |n| n as u64);
    if characteristic > 0 && !is_prime(&characteristic.into()) {
        return Err(integrity(format!("χ_ρ vanishes first at composite {characteristic}")));
    }
    let b = bound as i64;
    let chi = |n: i64| -> Result<S::Elem> {
        let v = pos[n.unsigned_abs() as usize].clone();
        if n < 0 {
            s.neg(&v)
        } else {
            Ok(v)
        }
    };
    let table: Vec<(i64, S::Elem)> = (-b..=b).map(|n| Ok((n, chi(n)?))).collect::<Result<_>>()?;
    let mut checks = Report::new(format!("characteristic map ({})", r.label));
    let mut base = Check::new("χ(0) = 0, χ(1) = 1");
    base.record(s.is_zero(&pos[0]) && pos[1] == s.one(), Vec::new);
    checks.push(base);
    let mut add = Check::new("χ(n+m) = χ(n) ⊞ χ(m)");
    let mut mul = Check::new("χ(nm) = χ(n)·χ(m)");
    for n in -b..=b {
        for m in -b..=b {
            if (n + m).abs() <= b {
                add.record(chi(n + m)? == add_from_rho(r, &chi(n)?, &chi(m)?)?, || vec![n.to_string(), m.to_string()]);
            }
            if (n * m).abs() <= b {
                mul.record(chi(n * m)? == s.mul(&chi(n)?, &chi(m)?)?, || vec![n.to_string(), m.to_string()]);
            }
        }
    }
    checks.push(add);
    checks.push(mul);

    let prime_subfield: Vec<S::Elem> = if characteristic > 0 {
        pos[..characteristic as usize].to_vec()
    } else {
        let mut v: Vec<S::Elem> = Vec::new();
        for (_, e) in &table {
            if !v.contains(e) {
                v.push(e.clone());
            }
        }
        v
    };
    if characteristic > 0 {
        let c = &prime_subfield;
        let mut closed = Check::new("C̃_p closed under · and inverses, commutative");
        for x in c {
            if !s.is_zero(x) {
                let xi = s.inv(x)?;
                closed.record(c.contains(&xi), || vec![x.to_string()]);
            }
            for y in c {
                let xy = s.mul(x, y)?;
                closed.record(c.contains(&xy) && xy == s.mul(y, x)?, || vec![x.to_string(), y.to_string()]);
            }
        }
        checks.push(closed);
        if let Some(els) = s.elements() {
            let mut dist = Check::new("C̃_p distributes on both sides");
            for x in c {
                for a in &els {
                    for bb in &els {
                        let sum = add_from_rho(r, a, bb)?;
                        let left = s.mul(x, &sum)? == add_from_rho(r, &s.mul(x, a)?, &s.mul(x, bb)?)?;
                        let right = s.mul(&sum, x)? == add_from_rho(r, &s.mul(a, x)?, &s.mul(bb, x)?)?;
                        dist.record(left && right, || vec![x.to_string(), a.to_string(), bb.to_string()]);
                    }
                }
            }
            checks.push(dist);
            let mut order = Check::new("|F| is a power of the characteristic");
            let mut q = els.len() as u64;
            while q.is_multiple_of(characteristic) {
                q /= characteristic;
            }
            order.record(q == 1, || vec![els.len().to_string()]);
            checks.push(order);
        }
    }
    Ok(CharMapResult { characteristic, bounded_evidence: characteristic == 0, table, prime_subfield, checks })
}

/// Left distributivity of (F, +_σ, ·) and, when it holds, the restriction properties of σ on the
/// prime subfield.
pub fn check_bij_plus(f: &FiniteField, sigma: &Perm) -> Report {
    let plus = |a: Fe, b: Fe| sigma.inv_at(f.add(sigma.at(a), sigma.at(b)));
    let s = |x: Fe| x.to_string();
    let mut rep = Report::new(format!("+_σ on {}", f.name()));
    let mut dist = Check::new("left distributivity α(β +_σ γ) = αβ +_σ αγ");
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                dist.record(f.mul(a, plus(b, c)) == plus(f.mul(a, b), f.mul(a, c)), || vec![s(a), s(b), s(c)]);
            }
        }
    }
    let near_field = dist.passed;
    rep.push(dist);
    if !near_field {
        return rep;
    }
    let cp: Vec<Fe> = (0..f.p() as i64).map(|c| f.from_int(c)).collect();
    let s1 = sigma.at(f.one());
    let mut zmap = Check::new("σ is a ℤ-map");
    zmap.record(sigma.at(f.zero()) == f.zero(), || vec![s(f.zero())]);
    for a in f.elements() {
        zmap.record(sigma.at(f.neg(a)) == f.neg(sigma.at(a)), || vec![s(a)]);
    }
    rep.push(zmap);
    let mut restr = Check::new("σ⁻¹(βa) = σ⁻¹(β)·σ⁻¹(σ(1)a) on C̃_p");
    let mut shift = Check::new("σ(α·σ⁻¹(βa)) = σ(α·σ⁻¹(β))·a on C̃_p");
    for &a in &cp {
        for b in f.elements() {
            let lhs = sigma.inv_at(f.mul(b, a));
            let rhs = f.mul(sigma.inv_at(b), sigma.inv_at(f.mul(s1, a)));
            restr.record(lhs == rhs, || vec![s(b), s(a)]);
            for al in f.elements() {
                let l = sigma.at(f.mul(al, sigma.inv_at(f.mul(b, a))));
                let r = f.mul(sigma.at(f.mul(al, sigma.inv_at(b))), a);
                shift.record(l == r, || vec![s(al), s(b), s(a)]);
            }
        }
    }
    rep.push(restr);
    rep.push(shift);
    let s1i = f.inv(s1).expect("σ is bijective and σ(0) = 0");
    let tilde = |a: Fe| f.mul(sigma.at(a), s1i);
    let mut qm = Check::new("σ̃(α) = σ(α)σ(1)⁻¹ multiplicative on C̃_p");
    qm.record(tilde(f.one()) == f.one(), Vec::new);
    for &a in &cp {
        for &b in &cp {
            qm.record(tilde(f.mul(a, b)) == f.mul(tilde(a), tilde(b)), || vec![s(a), s(b)]);
        }
    }
    rep.push(qm);
    rep
}

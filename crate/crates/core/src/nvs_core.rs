//! Elementary near-vector spaces over a finite field: V = F with α ⊞ β = Ψ⁻¹(Ψα + Ψβ) and
//! α ⊡ β = Ψ⁻¹(φ(α)Ψ(β)).

use crate::error::{domain, Result};
use crate::finite_structures::{field_axioms, AdditionTable, AxiomMode, Fe, FiniteField, Provenance};
use crate::report::{Check, Report};
use crate::structures::Perm;

#[derive(Clone, Debug)]
pub struct ElementaryNVS<'a> {
    field: &'a FiniteField,
    psi: Perm,
    phi: Perm,
    add: AdditionTable,
    smul: Vec<u16>,
}

fn validate_psi(f: &FiniteField, psi: &Perm) -> Result<()> {
    if psi.len() != f.order() {
        return Err(domain("Ψ table has the wrong size"));
    }
    if psi.at(f.zero()) != f.zero() {
        return Err(domain("Ψ is not a ℤ-map: Ψ(0) ≠ 0"));
    }
    if let Some(a) = f.elements().find(|&a| psi.at(f.neg(a)) != f.neg(psi.at(a))) {
        return Err(domain(format!("Ψ is not a ℤ-map: Ψ(−α) ≠ −Ψ(α) at α = {a}")));
    }
    Ok(())
}

fn validate_phi(f: &FiniteField, phi: &Perm) -> Result<()> {
    if phi.len() != f.order() {
        return Err(domain("φ table has the wrong size"));
    }
    if phi.at(f.one()) != f.one() {
        return Err(domain("φ is not multiplicative: φ(1) ≠ 1"));
    }
    for a in f.elements() {
        for b in f.elements() {
            if phi.at(f.mul(a, b)) != f.mul(phi.at(a), phi.at(b)) {
                return Err(domain(format!("φ is not multiplicative at ({a}, {b})")));
            }
        }
    }
    Ok(())
}

/// Validates Ψ (ℤ-bijection) and φ (multiplicative bijection) exhaustively.
pub fn build_elementary(f: &FiniteField, psi: Perm, phi: Perm) -> Result<ElementaryNVS<'_>> {
    validate_psi(f, &psi)?;
    validate_phi(f, &phi)?;
    Ok(ElementaryNVS::from_tables_unchecked(f, psi, phi))
}

impl<'a> ElementaryNVS<'a> {
    /// Skips validation; used to build deliberately broken spaces.
    pub fn from_tables_unchecked(f: &'a FiniteField, psi: Perm, phi: Perm) -> Self {
        let q = f.order();
        let add = AdditionTable::from_fn(q, Provenance::Derived("+_Ψ".into()), |a, b| psi.inv_at(f.add(psi.at(a), psi.at(b))));
        let mut smul = Vec::with_capacity(q * q);
        for a in f.elements() {
            for b in f.elements() {
                smul.push(psi.inv_at(f.mul(phi.at(a), psi.at(b))).0);
            }
        }
        ElementaryNVS { field: f, psi, phi, add, smul }
    }

    pub fn field(&self) -> &'a FiniteField {
        self.field
    }

    pub fn psi(&self) -> &Perm {
        &self.psi
    }

    pub fn phi(&self) -> &Perm {
        &self.phi
    }

    pub fn addition(&self) -> &AdditionTable {
        &self.add
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add.get(a, b)
    }

    /// α ⊡ β
    pub fn smul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.smul[a.idx() * self.field.order() + b.idx()])
    }

    /// The δ with α⊡u ⊞ β⊡u = δ⊡u, if there is exactly one.
    pub fn plus_u(&self, u: Fe, a: Fe, b: Fe) -> Option<Fe> {
        let target = self.add(self.smul(a, u), self.smul(b, u));
        let mut hits = self.field.elements().filter(|&d| self.smul(d, u) == target);
        let d = hits.next()?;
        hits.next().is_none().then_some(d)
    }

    /// Q(V) by definition: u with α⊡u ⊞ β⊡u ∈ F⊡u for all α, β.
    pub fn quasi_kernel(&self) -> Vec<Fe> {
        let f = self.field;
        f.elements()
            .filter(|&u| {
                let orbit: Vec<Fe> = f.elements().map(|d| self.smul(d, u)).collect();
                f.elements().all(|a| f.elements().all(|b| orbit.contains(&self.add(self.smul(a, u), self.smul(b, u)))))
            })
            .collect()
    }

    fn plus_one_table(&self) -> Result<AdditionTable> {
        let f = self.field;
        let mut missing = None;
        let t = AdditionTable::from_fn(f.order(), Provenance::Derived("⊞₁".into()), |a, b| {
            self.plus_u(f.one(), a, b).unwrap_or_else(|| {
                missing.get_or_insert((a, b));
                f.zero()
            })
        });
        match missing {
            Some((a, b)) => Err(domain(format!("+_1 is undefined at ({a}, {b})"))),
            None => Ok(t),
        }
    }
}

fn span_under(f: &FiniteField, add: &AdditionTable, gens: &[Fe]) -> Vec<Fe> {
    let mut seen = vec![false; f.order()];
    let mut stack = vec![f.zero()];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = add.get(x, g);
            if !seen[y.idx()] {
                seen[y.idx()] = true;
                stack.push(y);
            }
        }
    }
    f.elements().filter(|x| seen[x.idx()]).collect()
}

pub fn verify_nvs_axioms(s: &ElementaryNVS<'_>) -> Report {
    let f = s.field;
    let st = |x: Fe| x.to_string();
    let mut rep = Report::new(format!("near-vector space axioms on {}", f.name()));
    let zero = f.elements().find(|&z| f.elements().all(|a| s.add(z, a) == a));

    let mut group = Check::new("(V, ⊞) abelian group");
    group.record(zero.is_some(), || vec!["no identity".into()]);
    let z = zero.unwrap_or(f.zero());
    let mut neg = vec![None; f.order()];
    for a in f.elements() {
        neg[a.idx()] = f.elements().find(|&b| s.add(a, b) == z);
        group.record(neg[a.idx()].is_some(), || vec![st(a)]);
        for b in f.elements() {
            group.record(s.add(a, b) == s.add(b, a), || vec![st(a), st(b)]);
            for c in f.elements() {
                group.record(s.add(s.add(a, b), c) == s.add(a, s.add(b, c)), || vec![st(a), st(b), st(c)]);
            }
        }
    }
    rep.push(group);

    let mut unit = Check::new("1⊡γ = γ");
    let mut minus = Check::new("(−1)⊡γ = −γ");
    let mut nil = Check::new("0⊡γ = 0");
    let mut compat = Check::new("(γα)⊡β = γ⊡(α⊡β)");
    let mut dist = Check::new("γ⊡(α⊞β) = γ⊡α ⊞ γ⊡β");
    for g in f.elements() {
        unit.record(s.smul(f.one(), g) == g, || vec![st(g)]);
        minus.record(Some(s.smul(f.minus_one(), g)) == neg[g.idx()], || vec![st(g)]);
        nil.record(s.smul(f.zero(), g) == z, || vec![st(g)]);
        for a in f.elements() {
            for b in f.elements() {
                compat.record(s.smul(f.mul(g, a), b) == s.smul(g, s.smul(a, b)), || vec![st(g), st(a), st(b)]);
                dist.record(s.smul(g, s.add(a, b)) == s.add(s.smul(g, a), s.smul(g, b)), || vec![st(g), st(a), st(b)]);
            }
        }
    }
    for c in [unit, minus, nil, compat, dist] {
        rep.push(c);
    }

    let mut free = Check::new("free action: α⊡γ = β⊡γ, γ ≠ 0 ⟹ α = β");
    let mut fixed = Check::new("α⊡γ = γ, γ ≠ 0 ⟹ α = 1");
    for g in f.elements().filter(|&g| g != z) {
        for a in f.elements() {
            fixed.record(s.smul(a, g) != g || a == f.one(), || vec![st(a), st(g)]);
            for b in f.elements() {
                free.record(s.smul(a, g) != s.smul(b, g) || a == b, || vec![st(a), st(b), st(g)]);
            }
        }
    }
    rep.push(free);
    rep.push(fixed);

    let qk = s.quasi_kernel();
    let mut gens = Check::new("Q(V) generates (V, ⊞)");
    let span = span_under(f, &s.add, &qk);
    gens.record(span.len() == f.order(), || qk.iter().map(|x| st(*x)).collect());
    rep.push(gens.with_note(format!("|Q(V)| = {}", qk.len())));
    let mut full = Check::new("Q(V) = V");
    full.record(qk.len() == f.order(), || f.elements().filter(|x| !qk.contains(x)).take(1).map(st).collect());
    rep.push(full);

    let mut orbit = Check::new("F⊡1 = F");
    let mut hit = vec![false; f.order()];
    for a in f.elements() {
        hit[s.smul(a, f.one()).idx()] = true;
    }
    orbit.record(hit.iter().all(|&h| h), || f.elements().filter(|x| !hit[x.idx()]).take(1).map(st).collect());
    rep.push(orbit);

    let mut iso = Check::new("Ψ(α⊡β) = φ(α)Ψ(β), Ψ(α⊞β) = Ψ(α)+Ψ(β)");
    for a in f.elements() {
        for b in f.elements() {
            let ok = s.psi.at(s.smul(a, b)) == f.mul(s.phi.at(a), s.psi.at(b))
                && s.psi.at(s.add(a, b)) == f.add(s.psi.at(a), s.psi.at(b));
            iso.record(ok, || vec![st(a), st(b)]);
        }
    }
    rep.push(iso);
    rep
}

fn near_field_checks(f: &FiniteField, t: &AdditionTable, rep: &mut Report) {
    for c in field_axioms(f, t, AxiomMode::Exhaustive).checks {
        // a near-field needs only one distributive law
        if c.name != "right distributivity" {
            rep.push(c);
        }
    }
}

/// ⊞_γ(α, β) = (αγ ⊞₁ βγ)γ⁻¹, cross-checked against +_u for u = γ⊡1 and checked to be a
/// near-field addition.
pub fn addition_at(s: &ElementaryNVS<'_>, gamma: Fe) -> Result<(AdditionTable, Report)> {
    let f = s.field;
    let gi = f.inv(gamma).ok_or_else(|| domain("γ must be nonzero"))?;
    let one = s.plus_one_table()?;
    let t = AdditionTable::from_fn(f.order(), Provenance::Derived(format!("⊞ at γ = {gamma}")), |a, b| {
        f.mul(one.get(f.mul(a, gamma), f.mul(b, gamma)), gi)
    });
    let mut rep = Report::new(format!("⊞_γ at γ = {gamma} on {}", f.name()));
    let u = s.smul(gamma, f.one());
    let mut cross = Check::new("agrees with +_u, u = γ⊡1");
    for a in f.elements() {
        for b in f.elements() {
            cross.record(s.plus_u(u, a, b) == Some(t.get(a, b)), || vec![a.to_string(), b.to_string()]);
        }
    }
    rep.push(cross);
    if gamma == f.one() {
        let mut same = Check::new("γ = 1 gives ⊞₁");
        same.record(t.same_op(&one), Vec::new);
        rep.push(same);
    }
    near_field_checks(f, &t, &mut rep);
    Ok((t, rep))
}

/// ⊞₁ against +_φ' with φ'(α) = φ(α)Ψ(1), and against +_φ.
pub fn check_elementary_box1(s: &ElementaryNVS<'_>) -> Report {
    let f = s.field;
    let mut rep = Report::new(format!("⊞₁ = +_φ on {}", f.name()));
    let one = match s.plus_one_table() {
        Ok(t) => t,
        Err(e) => {
            rep.push(Check::new("⊞₁ defined").fail_with(vec![e.to_string()]));
            return rep;
        }
    };
    let lambda = s.psi.at(f.one());
    let phi_prime = Perm::from_fn(f, |a| f.mul(s.phi.at(a), lambda));
    let Ok(phi_prime) = phi_prime else {
        rep.push(Check::new("φ' bijective").fail_with(vec![lambda.to_string()]));
        return rep;
    };
    let mut assoc = Check::new("⊞₁ = +_φ', φ' = φ·Ψ(1)");
    let mut plain = Check::new("⊞₁ = +_φ");
    for a in f.elements() {
        for b in f.elements() {
            let x = one.get(a, b);
            let w = || vec![a.to_string(), b.to_string()];
            assoc.record(x == phi_prime.inv_at(f.add(phi_prime.at(a), phi_prime.at(b))), w);
            plain.record(x == s.phi.inv_at(f.add(s.phi.at(a), s.phi.at(b))), w);
        }
    }
    rep.push(assoc.with_note(format!("Ψ(1) = {lambda}")));
    rep.push(plain);
    near_field_checks(f, &one, &mut rep);
    rep
}

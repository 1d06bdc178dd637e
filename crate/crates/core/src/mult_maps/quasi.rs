use serde::Serialize;

use crate::error::{domain, Result};
use crate::finite_structures::{Fe, FiniteField};
use crate::report::{Check, Report};
use crate::structures::Perm;

fn is_multiplicative(f: &FiniteField, m: impl Fn(Fe) -> Fe) -> bool {
    m(f.one()) == f.one() && f.elements().all(|a| f.elements().all(|b| m(f.mul(a, b)) == f.mul(m(a), m(b))))
}

/// α ↦ phi_mult(α)·λ on a finite field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiMultSpec {
    pub phi_mult: Perm,
    pub lambda: Fe,
}

impl QuasiMultSpec {
    pub fn new(f: &FiniteField, phi_mult: Perm, lambda: Fe) -> Result<Self> {
        if lambda == f.zero() {
            return Err(domain("lambda must be invertible"));
        }
        if !is_multiplicative(f, |x| phi_mult.at(x)) {
            return Err(domain("phi_mult is not multiplicative"));
        }
        Ok(QuasiMultSpec { phi_mult, lambda })
    }

    pub fn identity(f: &FiniteField) -> Self {
        QuasiMultSpec { phi_mult: Perm::identity(f.order()), lambda: f.one() }
    }

    pub fn apply(&self, f: &FiniteField, x: Fe) -> Fe {
        f.mul(self.phi_mult.at(x), self.lambda)
    }

    pub fn to_perm(&self, f: &FiniteField) -> Perm {
        Perm::from_fn(f, |x| self.apply(f, x)).expect("quasi-multiplicative maps are bijective")
    }
}

/// (φ₁∘φ₂, φ₁(λ₂)·λ₁)
pub fn qm_compose(f: &FiniteField, a: &QuasiMultSpec, b: &QuasiMultSpec) -> QuasiMultSpec {
    QuasiMultSpec {
        phi_mult: a.phi_mult.compose(&b.phi_mult),
        lambda: f.mul(a.phi_mult.at(b.lambda), a.lambda),
    }
}

/// (φ⁻¹, φ⁻¹(λ⁻¹))
pub fn qm_invert(f: &FiniteField, a: &QuasiMultSpec) -> QuasiMultSpec {
    let inv = a.phi_mult.inverse();
    let lambda = inv.at(f.inv(a.lambda).expect("lambda is invertible"));
    QuasiMultSpec { phi_mult: inv, lambda }
}

/// Extensional checks of the composition and inversion formulas.
pub fn verify_qm_ops(f: &FiniteField, a: &QuasiMultSpec, b: &QuasiMultSpec) -> Report {
    let mut r = Report::new("quasi-multiplicative group operations");
    let ab = qm_compose(f, a, b);
    let ia = qm_invert(f, a);
    let aia = qm_compose(f, a, &ia);
    let iaa = qm_compose(f, &ia, a);
    let mut comp = Check::new("compose matches pointwise composition");
    let mut inv = Check::new("invert is a two-sided inverse");
    let mut mult = Check::new("composite multiplicative part is multiplicative");
    for x in f.elements() {
        comp.record(ab.apply(f, x) == a.apply(f, b.apply(f, x)), || vec![x.to_string()]);
        inv.record(aia.apply(f, x) == x && iaa.apply(f, x) == x, || vec![x.to_string()]);
        inv.record(ia.apply(f, a.apply(f, x)) == x, || vec![x.to_string()]);
    }
    mult.record(is_multiplicative(f, |x| ab.phi_mult.at(x)) && is_multiplicative(f, |x| ia.phi_mult.at(x)), Vec::new);
    r.push(comp);
    r.push(inv);
    r.push(mult);
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct QmcVerdict {
    /// Conditions 1–5 in order.
    pub conditions: [bool; 5],
    pub gamma: Fe,
    pub lambda: Fe,
}

impl QmcVerdict {
    pub fn agree(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }
}

/// The five equivalent descriptions of a right quasi-multiplicative bijection, each evaluated
/// exhaustively with γ = φ⁻¹(1) and λ = φ(1).
pub fn check_qmc_equivalence(f: &FiniteField, phi: &[u16]) -> Result<QmcVerdict> {
    if phi.len() != f.order() {
        return Err(domain("table size does not match the field"));
    }
    let phi = Perm::from_table(phi.to_vec())?;
    let gamma = phi.inv_at(f.one());
    let lambda = phi.at(f.one());
    let units = gamma != f.zero() && lambda != f.zero();
    let all_pairs = |pred: &dyn Fn(Fe, Fe) -> bool| f.elements().all(|a| f.elements().all(|b| pred(a, b)));
    let c1 = lambda != f.zero() && {
        let li = f.inv(lambda).expect("nonzero");
        is_multiplicative(f, |x| f.mul(phi.at(x), li))
    };
    let c2 = units && all_pairs(&|a, b| phi.at(f.mul(a, b)) == f.mul(phi.at(a), phi.at(f.mul(gamma, b))));
    let c3 = units && all_pairs(&|a, b| phi.at(f.mul(a, b)) == f.mul(phi.at(f.mul(a, gamma)), phi.at(b)));
    let c4 = units && is_multiplicative(f, |x| phi.at(f.mul(x, gamma)));
    let c5 = units && is_multiplicative(f, |x| phi.at(f.mul(gamma, x)));
    Ok(QmcVerdict { conditions: [c1, c2, c3, c4, c5], gamma, lambda })
}

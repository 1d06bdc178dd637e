use std::collections::HashMap;

use serde::Serialize;

use super::{addition_from_exponent, make_field, Fe};
use crate::report::{Check, Report};

#[derive(Clone, Debug, Serialize)]
pub struct ModnearOutcome {
    /// |Hom((F₉,+),(F₉,+₃))|
    pub size: usize,
    pub report: Report,
}

impl ModnearOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

type Map = Vec<u16>;

/// Right modnear-ring axioms for ((ℳ, ⊞, ∘), (ℳ, +, ∘)) with ℳ = Hom((F₉,+),(F₉,+₃)).
pub fn modnear_ring_check() -> ModnearOutcome {
    let f = make_field(3, 2).expect("F9");
    let plus3 = addition_from_exponent(&f, 3).expect("3 is a unit mod 8");
    let q = f.order();
    let basis = [f.from_coeffs(&[1, 0]), f.from_coeffs(&[0, 1])];

    // candidate maps are fixed by the images of the additive basis
    let mut maps: Vec<Map> = Vec::new();
    let mut rejected = 0;
    for u in f.elements() {
        for v in f.elements() {
            let m: Map = f
                .elements()
                .map(|x| {
                    let c = f.coeffs(x);
                    let mut acc = f.zero();
                    for (img, &k) in [u, v].iter().zip(&c) {
                        for _ in 0..k {
                            acc = plus3.get(acc, *img);
                        }
                    }
                    acc.0
                })
                .collect();
            debug_assert_eq!(m[basis[0].idx()], u.0);
            let additive = f.elements().all(|a| {
                f.elements().all(|b| m[f.add(a, b).idx()] == plus3.get(Fe(m[a.idx()]), Fe(m[b.idx()])).0)
            });
            if additive {
                maps.push(m);
            } else {
                rejected += 1;
            }
        }
    }
    let n = maps.len();
    let index: HashMap<Map, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    let mut report = Report::new("right modnear-ring on Hom((F9,+),(F9,+3))");
    let mut closure = Check::new("closure of ⊞, +, ∘");
    let mut op_table = |op: &dyn Fn(&Map, &Map) -> Map| -> Vec<usize> {
        let mut t = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                let r = op(&maps[i], &maps[j]);
                if let Some(&k) = index.get(&r) {
                    t[i * n + j] = k;
                }
                closure.record(index.contains_key(&r), || vec![format!("{:?}", maps[i]), format!("{:?}", maps[j])]);
            }
        }
        t
    };
    let boxplus = op_table(&|a, b| (0..q).map(|x| plus3.get(Fe(a[x]), Fe(b[x])).0).collect());
    let plus = op_table(&|a, b| (0..q).map(|x| f.add(Fe(a[x]), Fe(b[x])).0).collect());
    let comp = op_table(&|a, b| (0..q).map(|x| a[b[x] as usize]).collect());
    report.push(closure.with_note(format!("{rejected} candidate maps rejected as non-additive")));

    let zero = index[&vec![0u16; q]];
    let id = index[&(0..q as u16).collect::<Map>()];
    let w = |i: usize| format!("{:?}", maps[i]);
    let at = |t: &Vec<usize>, i: usize, j: usize| t[i * n + j];

    for (name, t) in [("(M,⊞) group", &boxplus), ("(M,+) group", &plus)] {
        let mut c = Check::new(format!("axiom 1 {name}"));
        for a in 0..n {
            c.record(at(t, a, zero) == a && at(t, zero, a) == a, || vec![w(a)]);
            c.record((0..n).any(|b| at(t, a, b) == zero), || vec![w(a)]);
            for b in 0..n {
                for d in 0..n {
                    c.record(at(t, a, at(t, b, d)) == at(t, at(t, a, b), d), || vec![w(a), w(b), w(d)]);
                }
            }
        }
        report.push(c);
    }

    let mut monoid = Check::new("axiom 2 (M,∘) monoid");
    let mut a3 = Check::new("axiom 3' h∘(f+g) = h∘f ⊞ h∘g");
    let mut a4 = Check::new("axiom 4' h∘(f·g) = h∘(f∘g)");
    let mut a6 = Check::new("axiom 6' (f⊞g)∘h = f∘h ⊞ g∘h");
    let mut paren = Check::new("(f+g)∘h = f∘h + g∘h");
    for a in 0..n {
        monoid.record(at(&comp, id, a) == a && at(&comp, a, id) == a, || vec![w(a)]);
        for b in 0..n {
            for c in 0..n {
                let wit = || vec![w(a), w(b), w(c)];
                monoid.record(at(&comp, a, at(&comp, b, c)) == at(&comp, at(&comp, a, b), c), wit);
                // h = a, f = b, g = c
                a3.record(at(&comp, a, at(&plus, b, c)) == at(&boxplus, at(&comp, a, b), at(&comp, a, c)), wit);
                a4.record(at(&comp, a, at(&comp, b, c)) == at(&comp, a, at(&comp, b, c)), wit);
                // f = a, g = b, h = c
                a6.record(at(&comp, at(&boxplus, a, b), c) == at(&boxplus, at(&comp, a, c), at(&comp, b, c)), wit);
                paren.record(at(&comp, at(&plus, a, b), c) == at(&plus, at(&comp, a, c), at(&comp, b, c)), wit);
            }
        }
    }
    report.push(monoid);
    report.push(a3);
    report.push(a4);
    let mut a5 = Check::new("axiom 5' α ↦ 1⊡α bijective");
    let mut seen = vec![false; n];
    for a in 0..n {
        let img = at(&comp, id, a);
        a5.record(!seen[img], || vec![w(a)]);
        seen[img] = true;
    }
    report.push(a5);
    report.push(a6);
    report.push(paren);
    ModnearOutcome { size: n, report }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighty_one_homs_and_all_axioms() {
        let out = modnear_ring_check();
        assert_eq!(out.size, 81);
        assert!(out.passed(), "{}", out.report);
    }
}

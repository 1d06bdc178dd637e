use std::fmt::Write as _;

use serde_json::{json, Value};

use nearadd::exact_arith::{factor_int, factor_rat, height, parse_rat, sample_rats, Rat};
use nearadd::finite_structures::{
    addition_from_exponent, check_isomorphic_additions, enumerate_additions_with, field_by_name, modnear_ring_check,
    native_addition, AdditionTable, AxiomMode, Fe, FiniteField,
};
use nearadd::induced_ops::{exotic_add_detailed, ExoticRationals, Limits};
use nearadd::mult_maps::{
    check_epsilon, check_qmc_equivalence, endo_q_apply, eval_epsilon, sigma_apply, sigma_invert, EndoBijectionSpecQ,
    PrimeCorrespondence,
};
use nearadd::nearfield_core::{char_map, rho_from_add, verify_rho_axioms, verify_rho_exhaustive, RhoMap};
use nearadd::nvs_core::{addition_at, build_elementary, check_elementary_box1, verify_nvs_axioms};
use nearadd::quad_field::{factor_quad, QuadInt, QuadRat};
use nearadd::structures::{FieldStructure, Perm, Rationals, Structure};
use nearadd::{BigInt, BigUint, Complex64, Error, Report, Result};

use crate::config::RunConfig;
use crate::Cmd;

pub struct Outcome {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn done(command: &str, passed: bool, mut body: Value, text: String) -> Outcome {
    let obj = body.as_object_mut().expect("object body");
    obj.insert("schema".into(), json!(1));
    obj.insert("command".into(), json!(command));
    obj.insert("passed".into(), json!(passed));
    Outcome { passed, json: body, text }
}

fn to_json(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn report_out(command: &str, reports: &[Report], extra: Value) -> Outcome {
    let passed = reports.iter().all(Report::passed);
    let text: String = reports.iter().map(|r| r.to_string()).collect();
    let mut body = extra;
    body["reports"] = to_json(&reports);
    done(command, passed, body, text)
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| bad(format!("not an integer: {s:?}")))
}

fn parse_quad(a: &str, b: &str, den: &str) -> Result<QuadRat> {
    QuadRat::new(QuadInt::new(parse_int(a)?, parse_int(b)?), parse_int(den)?)
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let p = |x: &str| x.trim().parse::<f64>().map_err(|_| bad(format!("not a complex number re,im: {s:?}")));
    Ok(Complex64::new(p(re)?, p(im)?))
}

fn bounded_rat(s: &str, cfg: &RunConfig) -> Result<Rat> {
    let q = parse_rat(s)?;
    if height(&q) > BigInt::from(cfg.height_bound) {
        return Err(bad(format!("{q} exceeds the height bound {}", cfg.height_bound)));
    }
    Ok(q)
}

fn limits(cfg: &RunConfig) -> Limits {
    match &cfg.norm_ceiling {
        Some(c) => Limits::with_ceiling(c.clone()),
        None => Limits::unbounded(),
    }
}

fn element(f: &FiniteField, i: u16) -> Result<Fe> {
    if (i as usize) < f.order() {
        Ok(Fe(i))
    } else {
        Err(bad(format!("element index {i} out of range for {}", f.name())))
    }
}

fn parse_table(f: &FiniteField, s: &str) -> Result<Vec<u16>> {
    let t: Vec<u16> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad(format!("bad table entry {x:?}"))))
        .collect::<Result<_>>()?;
    if t.len() != f.order() {
        return Err(bad(format!("table needs {} entries", f.order())));
    }
    for &v in &t {
        element(f, v)?;
    }
    Ok(t)
}

/// id, pow:k, or a comma-separated table of element indices.
fn parse_perm(f: &FiniteField, s: &str) -> Result<Perm> {
    let s = s.trim();
    if s == "id" {
        return Ok(Perm::identity(f.order()));
    }
    if let Some(k) = s.strip_prefix("pow:") {
        let k: u64 = k.parse().map_err(|_| bad(format!("bad exponent in {s:?}")))?;
        return Perm::power(f, k, f.one());
    }
    Perm::from_table(parse_table(f, s)?)
}

fn parse_addition(f: &FiniteField, s: &str) -> Result<AdditionTable> {
    match s.trim() {
        "native" => Ok(native_addition(f)),
        other => match other.strip_prefix("a=").map(str::parse::<u64>) {
            Some(Ok(a)) => addition_from_exponent(f, a),
            _ => Err(bad(format!("addition must be native or a=K, got {s:?}"))),
        },
    }
}

fn sampled_points(cfg: &RunConfig, salt: u64) -> (Vec<Rat>, Vec<(Rat, Rat)>) {
    let n = cfg.trials as usize;
    let h = cfg.height_bound as i64;
    let pts = sample_rats(cfg.seed ^ salt, n, h);
    let other = sample_rats(cfg.seed ^ salt ^ 0x9e37_79b9, n, h);
    let pairs = pts.iter().cloned().zip(other).collect();
    (pts, pairs)
}

fn rho_report<S: Structure>(r: &RhoMap<'_, S>, cfg: &RunConfig, sample: impl Fn(&RunConfig) -> (Vec<S::Elem>, Vec<(S::Elem, S::Elem)>)) -> Result<Report> {
    if r.carrier().elements().is_some() {
        verify_rho_exhaustive(r)
    } else {
        let (pts, pairs) = sample(cfg);
        verify_rho_axioms(r, &pts, &pairs)
    }
}

fn char_map_out<S: Structure>(r: &RhoMap<'_, S>, bound: u32, enc: impl Fn(&S::Elem) -> Value) -> Result<Outcome> {
    let cm = char_map(r, bound)?;
    let table: Vec<Value> = cm.table.iter().map(|(n, v)| json!([n, enc(v)])).collect();
    let sub: Vec<Value> = cm.prime_subfield.iter().map(&enc).collect();
    let mut text = format!("characteristic {}", cm.characteristic);
    if cm.bounded_evidence {
        let _ = write!(text, " (no zero of χ up to {bound})");
    }
    text.push('\n');
    for (n, v) in cm.table.iter().filter(|(n, _)| (0..=10).contains(n)) {
        let _ = writeln!(text, "  χ({n}) = {v}");
    }
    text += &cm.checks.to_string();
    let body = json!({
        "characteristic": cm.characteristic,
        "bounded_evidence": cm.bounded_evidence,
        "table": table,
        "prime_subfield": sub,
        "reports": [to_json(&cm.checks)],
    });
    Ok(done("char-map", cm.checks.passed(), body, text))
}

fn rat_json(q: &Rat) -> Value {
    json!(q.to_string())
}

fn fe_json(x: &Fe) -> Value {
    json!(x.0)
}

// the let-bound tails keep borrowed temporaries alive long enough
#[allow(clippy::let_and_return)]
pub fn run(cmd: &Cmd, cfg: &RunConfig) -> Result<Outcome> {
    let corr = PrimeCorrespondence::global();
    match cmd {
        Cmd::FactorInt { n } => {
            let f = factor_int(&parse_int(n)?)?;
            Ok(done("factor-int", true, json!({ "input": n.trim(), "factorization": to_json(&f) }), format!("{f}\n")))
        }
        Cmd::FactorRat { q } => {
            let q = parse_rat(q)?;
            let f = factor_rat(&q)?;
            Ok(done("factor-rat", true, json!({ "input": q.to_string(), "factorization": to_json(&f) }), format!("{f}\n")))
        }
        Cmd::FactorQuad { a, b, den } => {
            let x = parse_quad(a, b, den)?;
            let f = factor_quad(&x)?;
            Ok(done("factor-quad", true, json!({ "input": to_json(&x), "factorization": to_json(&f) }), format!("{x} = {f}\n")))
        }
        Cmd::Sigma { q } => {
            let q = bounded_rat(q, cfg)?;
            let s = sigma_apply(corr, &q)?;
            Ok(done("sigma", true, json!({ "input": q.to_string(), "image": to_json(&s), "display": s.to_string() }), format!("{s}\n")))
        }
        Cmd::SigmaInv { a, b, den } => {
            let x = parse_quad(a, b, den)?;
            let q = sigma_invert(corr, &x)?;
            Ok(done("sigma-inv", true, json!({ "input": to_json(&x), "preimage": q.to_string() }), format!("{q}\n")))
        }
        Cmd::ExoticAdd { a, b } => {
            let (a, b) = (bounded_rat(a, cfg)?, bounded_rat(b, cfg)?);
            let s = exotic_add_detailed(corr, &a, &b, &limits(cfg))?;
            let text = format!("{a} ⊞ {b} = {}\n  σ: {} + {} = {}\n", s.result, s.sigma_images[0], s.sigma_images[1], s.k_sum);
            let mut body = to_json(&s);
            body["inputs"] = json!([a.to_string(), b.to_string()]);
            Ok(done("exotic-add", true, body, text))
        }
        Cmd::Endoq { q, swaps, eta, nu } => {
            let q = parse_rat(q)?;
            let mut spec = EndoBijectionSpecQ::identity();
            for s in swaps {
                let (p, r) = s.split_once(',').ok_or_else(|| bad(format!("swap needs P,Q: {s:?}")))?;
                let p: u64 = p.trim().parse().map_err(|_| bad(format!("bad prime {p:?}")))?;
                let r: u64 = r.trim().parse().map_err(|_| bad(format!("bad prime {r:?}")))?;
                spec = EndoBijectionSpecQ::swap(p, r)?.compose(&spec);
            }
            let signs = EndoBijectionSpecQ::new(
                [],
                eta.iter().map(|&p| (BigUint::from(p), -1)),
                nu.iter().map(|&p| (BigUint::from(p), -1)),
            )?;
            let spec = signs.compose(&spec);
            let image = endo_q_apply(&spec, &q)?;
            Ok(done("endoq", true, json!({ "input": q.to_string(), "image": image.to_string() }), format!("{image}\n")))
        }
        Cmd::VerifyRho { carrier, addition, table } => {
            let rep = match carrier.as_str() {
                "q" => rho_report(&rho_from_add(&Rationals), cfg, |c| sampled_points(c, 1))?,
                "qx" => {
                    let ex = ExoticRationals::new(corr, limits(cfg));
                    let r = rho_from_add(&ex);
                    let rep = rho_report(&r, cfg, |c| sampled_points(c, 1))?;
                    rep
                }
                name => {
                    let f = field_by_name(name)?;
                    let t = parse_addition(&f, addition)?;
                    let s = FieldStructure::new(&f, &t);
                    let r = match table {
                        Some(tab) => RhoMap::from_table(&s, "explicit table", parse_table(&f, tab)?),
                        None => rho_from_add(&s),
                    };
                    let rep = verify_rho_exhaustive(&r)?;
                    rep
                }
            };
            Ok(report_out("verify-rho", &[rep], json!({ "carrier": carrier, "addition": addition })))
        }
        Cmd::CharMap { carrier, addition, bound } => match carrier.as_str() {
            "q" => char_map_out(&rho_from_add(&Rationals), *bound, rat_json),
            "qx" => {
                let ex = ExoticRationals::new(corr, limits(cfg));
                let r = rho_from_add(&ex);
                let out = char_map_out(&r, *bound, rat_json);
                out
            }
            name => {
                let f = field_by_name(name)?;
                let t = parse_addition(&f, addition)?;
                let s = FieldStructure::new(&f, &t);
                let r = rho_from_add(&s);
                let out = char_map_out(&r, *bound, fe_json);
                out
            }
        },
        Cmd::EnumerateAdditions { field, exhaustive } => {
            let f = field_by_name(field)?;
            let mode = if *exhaustive {
                AxiomMode::Exhaustive
            } else {
                match AxiomMode::default_for(&f) {
                    AxiomMode::Sampled { triples, .. } => AxiomMode::Sampled { triples, seed: cfg.seed },
                    m => m,
                }
            };
            let e = enumerate_additions_with(&f, mode)?;
            let mut text = format!("{}: {} distinct tables over units {:?}\n", e.field, e.tables.len(), e.units);
            for c in &e.classes {
                let _ = writeln!(text, "  class {c:?}");
            }
            let mut reports = vec![Report { title: "frobenius collapse".into(), checks: vec![e.frobenius.clone()] }];
            reports.extend(e.axioms.iter().cloned());
            let body = json!({
                "field": e.field,
                "units": e.units,
                "classes": e.classes,
                "table_count": e.tables.len(),
                "exhaustive": matches!(mode, AxiomMode::Exhaustive),
            });
            let mut out = report_out("enumerate-additions", &reports, body);
            out.text = text + &out.text;
            Ok(out)
        }
        Cmd::IsomCheck { field, a, b } => {
            let f = field_by_name(field)?;
            let (ta, tb) = (addition_from_exponent(&f, *a)?, addition_from_exponent(&f, *b)?);
            let k = check_isomorphic_additions(&f, &ta, &tb)?;
            let text = format!("x ↦ x^{k} maps ⊞_{a} onto ⊞_{b} on {}\n", f.name());
            Ok(done("isom-check", true, json!({ "field": f.name(), "a": a, "b": b, "witness": k }), text))
        }
        Cmd::ModnearCheck => {
            let m = modnear_ring_check();
            let mut out = report_out("modnear-check", std::slice::from_ref(&m.report), json!({ "size": m.size }));
            out.text = format!("|M| = {}\n", m.size) + &out.text;
            Ok(out)
        }
        Cmd::NvsVerify { field, psi, phi, psi_scale } => {
            let f = field_by_name(field)?;
            let mut psi_p = parse_perm(&f, psi)?;
            if let Some(l) = psi_scale {
                let l = element(&f, *l)?;
                let scaled: Vec<u16> = f.elements().map(|x| f.mul(l, psi_p.at(x)).0).collect();
                psi_p = Perm::from_table(scaled)?;
            }
            let s = build_elementary(&f, psi_p, parse_perm(&f, phi)?)?;
            let mut reports = vec![verify_nvs_axioms(&s), check_elementary_box1(&s)];
            for g in f.nonzero() {
                reports.push(addition_at(&s, g)?.1);
            }
            let quasi_kernel: Vec<u16> = s.quasi_kernel().iter().map(|x| x.0).collect();
            Ok(report_out("nvs-verify", &reports, json!({ "field": f.name(), "psi": psi, "phi": phi, "quasi_kernel": quasi_kernel })))
        }
        Cmd::QmcCheck { field, phi, scale } => {
            let f = field_by_name(field)?;
            let mut p = parse_perm(&f, phi)?;
            if let Some(l) = scale {
                let l = element(&f, *l)?;
                p = Perm::from_table(f.elements().map(|x| f.mul(p.at(x), l).0).collect())?;
            }
            let v = check_qmc_equivalence(&f, p.table())?;
            let text = format!("conditions {:?} (γ = {}, λ = {}), {}\n", v.conditions, v.gamma, v.lambda, if v.agree() { "agree" } else { "DISAGREE" });
            let mut body = to_json(&v);
            body["agree"] = json!(v.agree());
            body["quasi_multiplicative"] = json!(v.agree() && v.conditions[0]);
            Ok(done("qmc-check", v.agree(), body, text))
        }
        Cmd::Epsilon { alpha, conjugate, z, tol } => {
            let a = parse_complex(alpha)?;
            let rep = check_epsilon(a, *conjugate, cfg.trials as usize, cfg.seed, *tol)?;
            let mut body = json!({ "alpha": [a.re, a.im], "conjugate": conjugate });
            let mut pre = String::new();
            if let Some(z) = z {
                let z = parse_complex(z)?;
                let v = eval_epsilon(a, *conjugate, z)?;
                body["value"] = json!([v.re, v.im]);
                pre = format!("ε({z}) = {v}\n");
            }
            let mut out = report_out("epsilon", &[rep], body);
            out.text = pre + &out.text;
            Ok(out)
        }
    }
}

//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nearadd::exact_arith::{nth_prime, random_rat, Rat};
use nearadd::finite_structures::{
    addition_from_exponent, check_isomorphic_additions, enumerate_additions, field_axioms, field_by_name,
    modnear_ring_check, native_addition, supported_fields, AxiomMode,
};
use nearadd::induced_ops::{check_ringisom, plus_witness_spiral, ExoticRationals, Limits};
use nearadd::mult_maps::{
    check_qmc_equivalence, close, epsilon_inverse_exponent, eval_epsilon, verify_qm_ops, PrimeCorrespondence,
    QuasiMultSpec, Sigma,
};
use nearadd::nearfield_core::{char_map, nfa_round_trip_add, nfa_round_trip_rho, rho_from_add, verify_rho_exhaustive};
use nearadd::nvs_core::{addition_at, build_elementary, check_elementary_box1, verify_nvs_axioms, ElementaryNVS};
use nearadd::quad_field::{factor_quad, primes_above, QuadInt, QuadRat, Splitting};
use nearadd::structures::{check_field_axioms, FieldStructure, Perm, QuadField};
use nearadd::{Fe, Result};

const SEED: u64 = 20_240_601;
const HEIGHT: i64 = 10_000;
const TRIPLES: usize = 1000;
const ISO_PAIRS: usize = 500;
const QUAD_SAMPLES: usize = 1000;
const NORM_BOUND: u64 = 10_000_000_000;
const SPLIT_PRIMES: usize = 100;
const SPIRAL_BOUND: i64 = 20;
const CHI_BOUND: u32 = 200;
const QMC_CASES: usize = 50;
const EPS_ALPHAS: usize = 10;
const EPS_PAIRS: usize = 1000;
const EPS_TOL: f64 = 1e-9;

struct Outcome {
    ok: bool,
    detail: String,
    budget: Option<Duration>,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into(), budget: None }
}

fn budget(mut o: Outcome, secs: u64) -> Outcome {
    o.budget = Some(Duration::from_secs(secs));
    o
}

fn exotic() -> ExoticRationals<'static> {
    ExoticRationals::new(PrimeCorrespondence::global(), Limits::unbounded())
}

fn c1_exotic_field() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let triples: Vec<(Rat, Rat, Rat)> =
        (0..TRIPLES).map(|_| (random_rat(&mut rng, HEIGHT), random_rat(&mut rng, HEIGHT), random_rat(&mut rng, HEIGHT))).collect();
    let rep = check_field_axioms(&exotic(), &triples)?;
    let witness = plus_witness_spiral(PrimeCorrespondence::global(), SPIRAL_BOUND, &Limits::unbounded())?;
    let mut detail = format!("{} laws on {TRIPLES} triples, height ≤ {HEIGHT}", rep.checks.len());
    if let Some(f) = rep.first_failure() {
        detail += &format!("; {} fails at {:?}", f.name, f.witness);
    }
    match &witness {
        Some((a, b, s)) => detail += &format!("; {a} ⊞ {b} = {s}"),
        None => detail += &format!("; no ⊞ ≠ + witness with |entries| ≤ {SPIRAL_BOUND}"),
    }
    Ok(budget(outcome(rep.passed() && witness.is_some(), detail), 60))
}

fn c2_ringisom() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let pairs: Vec<(Rat, Rat)> = (0..ISO_PAIRS).map(|_| (random_rat(&mut rng, HEIGHT), random_rat(&mut rng, HEIGHT))).collect();
    let corr = PrimeCorrespondence::global();
    let r = check_ringisom(&Sigma(corr), &exotic(), &QuadField, &pairs)?;
    let v = r.verdicts();
    Ok(budget(outcome(v == [true; 3], format!("verdicts {v:?} on {ISO_PAIRS} pairs")), 30))
}

/// Bounded search for a² + ab + 5b² = n.
fn norm_form_solvable(n: i64) -> bool {
    let bmax = ((4 * n / 19) as f64).sqrt() as i64 + 1;
    (-bmax..=bmax).any(|b| {
        let amax = ((4 * n) as f64).sqrt() as i64 + 1;
        (-amax..=amax).any(|a| a * a + a * b + 5 * b * b == n)
    })
}

fn c3_factorization() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let bmax = ((4 * NORM_BOUND / 19) as f64).sqrt() as i64;
    let amax = (NORM_BOUND as f64).sqrt() as i64 * 2;
    let mut done = 0;
    let mut bad: Option<String> = None;
    while done < QUAD_SAMPLES {
        let x = QuadInt::new(rng.gen_range(-amax..=amax), rng.gen_range(-bmax..=bmax));
        if x.is_zero() || x.norm() > BigInt::from(NORM_BOUND) {
            continue;
        }
        done += 1;
        let f = factor_quad(&QuadRat::from(x.clone()))?;
        let ok = f.rebuild() == QuadRat::from(x.clone())
            && f.factors.iter().all(|(p, e)| *e > 0 && p.is_canonical() && p.is_prime_element());
        if !ok && bad.is_none() {
            bad = Some(x.to_string());
        }
    }
    let mut tri_bad: Option<u64> = None;
    for k in 1..=SPLIT_PRIMES {
        let p = nth_prime(k);
        let s = primes_above(&BigUint::from(p))?;
        let pb = BigInt::from(p);
        let ok = match &s {
            Splitting::Ramified(pi) => p == 19 && pi.norm() == pb,
            Splitting::Inert(pi) => p != 19 && !norm_form_solvable(p as i64) && *pi == QuadInt::int(p),
            Splitting::Split(a, b) => {
                p != 19
                    && norm_form_solvable(p as i64)
                    && a.norm() == pb
                    && b.norm() == pb
                    && a != b
                    && (a * b).b.is_zero()
                    && (a * b).a.abs() == pb
            }
        };
        if !ok && tri_bad.is_none() {
            tri_bad = Some(p);
        }
    }
    let ok = bad.is_none() && tri_bad.is_none();
    let mut detail = format!("{QUAD_SAMPLES} round trips with norm ≤ 10^10; trichotomy on first {SPLIT_PRIMES} primes");
    if let Some(x) = bad {
        detail += &format!("; round trip fails at {x}");
    }
    if let Some(p) = tri_bad {
        detail += &format!("; trichotomy fails at {p}");
    }
    Ok(outcome(ok, detail))
}

fn c4_enumeration() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in supported_fields() {
        let e = enumerate_additions(&f)?;
        // exhaustive as well: q³ triples stay small for every supported field
        let exhaustive = e.tables.iter().all(|t| field_axioms(&f, t, AxiomMode::Exhaustive).passed());
        // oracle: group units by full table comparison
        let mut groups: Vec<(Vec<u16>, Vec<u64>)> = Vec::new();
        for &a in &e.units {
            let t = addition_from_exponent(&f, a)?.table;
            match groups.iter_mut().find(|(u, _)| *u == t) {
                Some((_, g)) => g.push(a),
                None => groups.push((t, vec![a])),
            }
        }
        let oracle: Vec<Vec<u64>> = groups.into_iter().map(|(_, g)| g).collect();
        ok &= e.passed() && exhaustive && oracle == e.classes;
        if f.name() == "F9" {
            ok &= e.classes == vec![vec![1, 3], vec![5, 7]];
        }
        parts.push(format!("{}: {} tables", f.name(), e.tables.len()));
    }
    Ok(budget(outcome(ok, format!("{}; F25, F27 sampled at 10^6 triples and exhaustive", parts.join(", "))), 120))
}

fn c5_isomorphisms() -> Result<Outcome> {
    let mut count = 0;
    let mut errors = 0;
    for name in ["f4", "f8", "f9", "f25"] {
        let f = field_by_name(name)?;
        let e = enumerate_additions(&f)?;
        for (i, t1) in e.tables.iter().enumerate() {
            for t2 in e.tables.iter().skip(i + 1) {
                for (x, y) in [(t1, t2), (t2, t1)] {
                    count += 1;
                    match check_isomorphic_additions(&f, x, y) {
                        Ok(k) => {
                            let ok = f.elements().all(|a| {
                                f.elements().all(|b| f.pow(x.get(a, b), k) == y.get(f.pow(a, k), f.pow(b, k)))
                            });
                            errors += usize::from(!ok);
                        }
                        Err(_) => errors += 1,
                    }
                }
            }
        }
    }
    Ok(outcome(errors == 0, format!("{count} ordered table pairs, {errors} integrity errors")))
}

fn c6_rho() -> Result<Outcome> {
    let f = field_by_name("f9")?;
    let mut ok = true;
    let mut notes = Vec::new();
    for t in [native_addition(&f), addition_from_exponent(&f, 5)?] {
        let s = FieldStructure::new(&f, &t);
        let r = rho_from_add(&s);
        let els = f.elements().collect::<Vec<Fe>>();
        let pairs: Vec<(Fe, Fe)> = els.iter().flat_map(|&a| els.iter().map(move |&b| (a, b))).collect();
        ok &= verify_rho_exhaustive(&r)?.passed();
        ok &= nfa_round_trip_add(&s, &pairs)?.passed && nfa_round_trip_rho(&r, &els)?.passed;
        let cm = char_map(&r, 30)?;
        ok &= cm.characteristic == 3 && cm.prime_subfield.len() == 3 && cm.checks.passed();
    }
    notes.push("F9 native and ⊞5: axioms, round trips, characteristic 3".to_string());
    let ex = exotic();
    let r = rho_from_add(&ex);
    let cm = char_map(&r, CHI_BOUND)?;
    ok &= cm.characteristic == 0 && cm.checks.passed();
    let pts: Vec<Rat> = cm.table.iter().map(|(_, v)| v.clone()).take(40).collect();
    ok &= nfa_round_trip_rho(&r, &pts)?.passed;
    notes.push(format!("ℚ⊞: no zero up to {CHI_BOUND}, χ(5) = {}", cm.table.iter().find(|(n, _)| *n == 5).map(|x| x.1.to_string()).unwrap_or_default()));
    if let Some(c) = cm.checks.first_failure() {
        notes.push(format!("{} fails at {:?}", c.name, c.witness));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c7_modnear() -> Result<Outcome> {
    let m = modnear_ring_check();
    let mut detail = format!("|M| = {}, {} axiom checks", m.size, m.report.checks.len());
    if let Some(c) = m.report.first_failure() {
        detail += &format!("; {} fails at {:?}", c.name, c.witness);
    }
    Ok(budget(outcome(m.size == 81 && m.passed(), detail), 60))
}

fn c8_nvs() -> Result<Outcome> {
    let f = field_by_name("f9")?;
    let g = f.generator();
    let g2 = f.mul(g, g);
    let configs: Vec<(&str, Perm, Perm)> = vec![
        ("identity", Perm::identity(9), Perm::identity(9)),
        ("frobenius φ", Perm::identity(9), Perm::power(&f, 3, f.one())?),
        ("power-5 Ψ", Perm::power(&f, 5, f.one())?, Perm::identity(9)),
        ("scaled Ψ", Perm::power(&f, 1, g)?, Perm::identity(9)),
        ("scaled frobenius", Perm::power(&f, 3, g)?, Perm::power(&f, 3, f.one())?),
        ("scaled power-5, φ = x^7", Perm::power(&f, 5, g2)?, Perm::power(&f, 7, f.one())?),
        ("scaled power-7, φ = x^5", Perm::power(&f, 7, f.minus_one())?, Perm::power(&f, 5, f.one())?),
    ];
    let mut ok = true;
    let mut failed = Vec::new();
    for (name, psi, phi) in &configs {
        let s = build_elementary(&f, psi.clone(), phi.clone())?;
        let mut good = verify_nvs_axioms(&s).passed() && check_elementary_box1(&s).passed();
        for gamma in f.nonzero() {
            good &= addition_at(&s, gamma)?.1.passed();
        }
        let mutated = ElementaryNVS::from_tables_unchecked(&f, psi.clone(), phi.swapped(Fe(3), Fe(4)));
        let (a, b) = (verify_nvs_axioms(&mutated), check_elementary_box1(&mutated));
        let caught = [a.first_failure(), b.first_failure()].into_iter().flatten().next();
        good &= caught.is_some_and(|c| c.witness.is_some());
        if !good {
            failed.push(*name);
        }
        ok &= good;
    }
    let mut detail = format!("{} configurations, one mutation each", configs.len());
    if !failed.is_empty() {
        detail += &format!("; failing: {}", failed.join(", "));
    }
    Ok(outcome(ok, detail))
}

fn c9_qmc() -> Result<Outcome> {
    let f = field_by_name("f9")?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let exps = [1u64, 3, 5, 7];
    let nonzero: Vec<Fe> = f.nonzero().collect();
    let mut specs = Vec::new();
    let mut ok = true;
    for _ in 0..QMC_CASES {
        let k = *exps.choose(&mut rng).expect("nonempty");
        let l = *nonzero.choose(&mut rng).expect("nonempty");
        let spec = QuasiMultSpec::new(&f, Perm::power(&f, k, f.one())?, l)?;
        let v = check_qmc_equivalence(&f, spec.to_perm(&f).table())?;
        ok &= v.conditions == [true; 5];
        specs.push(spec);
    }
    let mut non_examples = 0;
    for _ in 0..QMC_CASES {
        let mut t: Vec<u16> = (0..9).collect();
        t.shuffle(&mut rng);
        let v = check_qmc_equivalence(&f, &t)?;
        ok &= v.agree();
        non_examples += usize::from(!v.conditions[0]);
    }
    for w in specs.windows(2) {
        ok &= verify_qm_ops(&f, &w[0], &w[1]).passed();
    }
    Ok(outcome(
        ok,
        format!("{QMC_CASES} constructed, {QMC_CASES} shuffled ({non_examples} non-quasi-multiplicative), closure and inverses on {} pairs", specs.len() - 1),
    ))
}

fn c10_epsilon() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let z = |rng: &mut ChaCha8Rng| {
        let r: f64 = 10f64.powf(rng.gen_range(-1.0..1.0));
        Complex64::from_polar(r, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
    };
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for i in 0..EPS_ALPHAS {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let alpha = Complex64::new(sign * rng.gen_range(0.25..2.0), rng.gen_range(-2.0..2.0));
        let conj = i % 2 == 1;
        let beta = epsilon_inverse_exponent(alpha, conj)?;
        for _ in 0..EPS_PAIRS {
            let (x, y) = (z(&mut rng), z(&mut rng));
            let lhs = eval_epsilon(alpha, conj, x * y)?;
            let rhs = eval_epsilon(alpha, conj, x)? * eval_epsilon(alpha, conj, y)?;
            let back = eval_epsilon(beta, conj, eval_epsilon(alpha, conj, x)?)?;
            let fwd = eval_epsilon(alpha, conj, eval_epsilon(beta, conj, x)?)?;
            ok &= close(lhs, rhs, EPS_TOL) && close(back, x, EPS_TOL) && close(fwd, x, EPS_TOL);
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0)).max((back - x).norm() / x.norm().max(1.0));
        }
    }
    Ok(outcome(ok, format!("{EPS_ALPHAS} α × {EPS_PAIRS} pairs, tol {EPS_TOL:e} relative, worst {worst:.2e}")))
}

type Criterion = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("exotic field on ℚ", c1_exotic_field),
        ("σ ring isomorphism", c2_ringisom),
        ("O_K factorization", c3_factorization),
        ("finite enumeration", c4_enumeration),
        ("power-map isomorphisms", c5_isomorphisms),
        ("ρ-calculus", c6_rho),
        ("modnear-ring", c7_modnear),
        ("elementary near-vector spaces", c8_nvs),
        ("quasi-multiplicative equivalence", c9_qmc),
        ("ε_α", c10_epsilon),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let took = start.elapsed();
        let in_time = o.budget.is_none_or(|b| took <= b);
        let ok = o.ok && in_time;
        all &= ok;
        let limit = o.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        println!("criterion {:>2} [{}] {name}: {} ({:.2?}{limit})", i + 1, if ok { "PASS" } else { "FAIL" }, o.detail, took);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

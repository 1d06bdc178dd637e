use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use proptest::prelude::*;

use nearadd::exact_arith::{factor_int, factor_rat, is_prime, rat, rebuild, Rat};
use nearadd::finite_structures::{addition_from_exponent, field_axioms, field_by_name, AxiomMode};
use nearadd::induced_ops::{exotic_add_q, Limits};
use nearadd::mult_maps::{close, endo_q_apply, epsilon_inverse_exponent, eval_epsilon, sigma_apply, sigma_invert};
use nearadd::mult_maps::{EndoBijectionSpecQ, PrimeCorrespondence};
use nearadd::nearfield_core::{char_map, rho_from_add};
use nearadd::quad_field::{factor_quad, primes_above, QuadInt, QuadRat, Splitting};
use nearadd::structures::{FieldStructure, Structure};

fn rat_strategy(h: i64) -> impl Strategy<Value = Rat> {
    (-h..=h, 1..=h).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat(h: i64) -> impl Strategy<Value = Rat> {
    rat_strategy(h).prop_filter("nonzero", |q| *q != rat(0, 1))
}

fn corr() -> &'static PrimeCorrespondence {
    PrimeCorrespondence::global()
}

/// Bounded search over a² + ab + 5b² = p.
fn norm_solutions(p: i64) -> Vec<(i64, i64)> {
    let bmax = ((4 * p / 19) as f64).sqrt() as i64 + 1;
    let amax = ((4 * p) as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for b in -bmax..=bmax {
        for a in -amax..=amax {
            if a * a + a * b + 5 * b * b == p {
                out.push((a, b));
            }
        }
    }
    out
}

#[test]
fn primes_above_matches_norm_search() {
    for p in 2..3000i64 {
        if !is_prime(&BigUint::from(p as u64)) {
            continue;
        }
        let sols = norm_solutions(p);
        let got = primes_above(&BigUint::from(p as u64)).unwrap();
        match got {
            Splitting::Inert(pi) => {
                assert!(sols.is_empty(), "{p}");
                assert_eq!(pi, QuadInt::int(p));
            }
            Splitting::Ramified(pi) => {
                assert_eq!(p, 19);
                assert!(sols.contains(&(i64::try_from(pi.a.clone()).unwrap(), i64::try_from(pi.b.clone()).unwrap())));
            }
            Splitting::Split(x, y) => {
                assert_ne!(p, 19);
                for pi in [x, y] {
                    assert!(pi.is_canonical());
                    let pair = (i64::try_from(pi.a.clone()).unwrap(), i64::try_from(pi.b.clone()).unwrap());
                    assert!(sols.contains(&pair), "{p}: {pi}");
                }
                // two associate classes of solutions, each {±π}
                assert_eq!(sols.len(), 4, "{p}");
            }
        }
    }
}

#[test]
fn f27_axioms_exhaustive() {
    let f = field_by_name("f27").unwrap();
    for a in [1, 5, 7, 11] {
        let t = addition_from_exponent(&f, a).unwrap();
        assert!(field_axioms(&f, &t, AxiomMode::Exhaustive).passed(), "a = {a}");
    }
}

#[test]
fn chi_is_a_homomorphism_on_finite_fields() {
    for name in ["f4", "f8", "f25", "f27"] {
        let f = field_by_name(name).unwrap();
        let t = addition_from_exponent(&f, f.order() as u64 - 2).unwrap();
        let s = FieldStructure::new(&f, &t);
        let cm = char_map(&rho_from_add(&s), 12).unwrap();
        assert_eq!(cm.characteristic, f.p() as u64, "{name}");
        assert!(cm.checks.passed(), "{name}: {}", cm.checks);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn int_factorization_round_trips(n in prop_oneof![-1_000_000_000_000i64..-1, 1i64..1_000_000_000_000]) {
        let f = factor_int(&BigInt::from(n)).unwrap();
        prop_assert!(f.exponents.keys().all(is_prime));
        prop_assert!(f.exponents.values().all(|&e| e > 0));
        prop_assert_eq!(rebuild(&f), rat(n, 1));
    }

    #[test]
    fn rat_factorization_round_trips(x in nonzero_rat(1_000_000)) {
        let f = factor_rat(&x).unwrap();
        prop_assert!(f.exponents.values().all(|&e| e != 0));
        prop_assert_eq!(rebuild(&f), x);
    }

    #[test]
    fn quad_factorization_round_trips(a in -100_000i64..100_000, b in -30_000i64..30_000, d in 1i64..5000) {
        prop_assume!(a != 0 || b != 0);
        let x = QuadRat::new(QuadInt::new(a, b), BigInt::from(d)).unwrap();
        let f = factor_quad(&x).unwrap();
        prop_assert!(f.factors.keys().all(|p| p.is_canonical() && p.is_prime_element()));
        prop_assert_eq!(f.rebuild(), x);
    }

    #[test]
    fn quad_norm_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000, d in -10_000i64..10_000) {
        let (x, y) = (QuadInt::new(a, b), QuadInt::new(c, d));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(&x * &x.conj(), QuadInt::int(x.norm()));
    }

    #[test]
    fn sigma_round_trips(x in rat_strategy(1_000_000)) {
        let s = sigma_apply(corr(), &x).unwrap();
        prop_assert_eq!(sigma_invert(corr(), &s).unwrap(), x);
    }

    #[test]
    fn sigma_is_multiplicative(x in rat_strategy(1_000_000), y in rat_strategy(1_000_000)) {
        let c = corr();
        let lhs = sigma_apply(c, &(&x * &y)).unwrap();
        prop_assert_eq!(lhs, &sigma_apply(c, &x).unwrap() * &sigma_apply(c, &y).unwrap());
        prop_assert_eq!(sigma_apply(c, &-x.clone()).unwrap(), -&sigma_apply(c, &x).unwrap());
    }

    #[test]
    fn exotic_addition_laws(x in rat_strategy(1000), y in rat_strategy(1000), z in rat_strategy(1000)) {
        let add = |a: &Rat, b: &Rat| exotic_add_q(corr(), a, b, &Limits::unbounded()).unwrap();
        prop_assert_eq!(add(&x, &y), add(&y, &x));
        prop_assert_eq!(add(&add(&x, &y), &z), add(&x, &add(&y, &z)));
        prop_assert_eq!(&z * &add(&x, &y), add(&(&z * &x), &(&z * &y)));
        prop_assert_eq!(add(&x, &-x.clone()), rat(0, 1));
    }

    #[test]
    fn endo_composition_is_pointwise(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        r in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        eta in prop::sample::select(vec![2u64, 3, 5]),
        nu in prop::sample::select(vec![3u64, 7, 13]),
        x in nonzero_rat(100_000),
    ) {
        prop_assume!(p != r);
        let s = EndoBijectionSpecQ::swap(p, r).unwrap();
        let t = EndoBijectionSpecQ::new([], [(BigUint::from(eta), -1)], [(BigUint::from(nu), -1)]).unwrap();
        for (a, b) in [(&s, &t), (&t, &s)] {
            let comp = a.compose(b);
            prop_assert_eq!(endo_q_apply(&comp, &x).unwrap(), endo_q_apply(a, &endo_q_apply(b, &x).unwrap()).unwrap());
        }
        let y = endo_q_apply(&s, &x).unwrap();
        prop_assert_eq!(endo_q_apply(&s, &y).unwrap(), x);
    }

    #[test]
    fn epsilon_is_multiplicative_and_invertible(
        re in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0],
        im in -3.0f64..3.0,
        conj in any::<bool>(),
        (r1, t1) in (0.05f64..20.0, -3.1f64..3.1),
        (r2, t2) in (0.05f64..20.0, -3.1f64..3.1),
    ) {
        let a = Complex64::new(re, im);
        let (x, y) = (Complex64::from_polar(r1, t1), Complex64::from_polar(r2, t2));
        let e = |z| eval_epsilon(a, conj, z).unwrap();
        prop_assert!(close(e(x * y), e(x) * e(y), 1e-9));
        let b = epsilon_inverse_exponent(a, conj).unwrap();
        prop_assert!(close(eval_epsilon(b, conj, e(x)).unwrap(), x, 1e-9));
    }

    #[test]
    fn chi_on_exotic_rationals(n in -15i64..15, m in -15i64..15) {
        let ex = nearadd::induced_ops::ExoticRationals::new(corr(), Limits::unbounded());
        let r = rho_from_add(&ex);
        let cm = char_map(&r, 30).unwrap();
        let chi = |k: i64| cm.table.iter().find(|(j, _)| *j == k).unwrap().1.clone();
        prop_assert_eq!(chi(n + m), ex.add(&chi(n), &chi(m)).unwrap());
        if (n * m).abs() <= 30 {
            prop_assert_eq!(chi(n * m), chi(n) * chi(m));
        }
    }
}

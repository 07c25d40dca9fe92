use proptest::prelude::*;

use projeq_core::exact::{parse_poly, Cyclo, RatFn};
use projeq_core::moebius::{equivariance_check, GroupConfig};
use projeq_core::operators::identities::*;
use projeq_core::operators::*;
use projeq_core::random::{self, rng};

fn frac(n: &str, d: &str) -> RatFn {
    RatFn::from_parts(parse_poly(n, 1).unwrap(), parse_poly(d, 1).unwrap())
}

fn form(group: &str, label: &str) -> (RatFn, i64) {
    let cfg = GroupConfig::builtin(group).unwrap();
    let inv = cfg.invariant(label).unwrap();
    (RatFn::from_poly(inv.poly.clone()), inv.weight)
}

/// Skips inputs on the degenerate set, which the identities exclude.
fn holds(r: Result<bool, OperatorError>) -> Option<bool> {
    r.ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn p1_duality(seed in any::<u64>()) {
        let f = random::ratfn(&mut rng(seed), 6);
        if let Some(ok) = holds(duality(&f, &FormCoeff::dz())) {
            prop_assert!(ok, "f = {}", f);
        }
    }

    #[test]
    fn p2_cocycle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, w) = (random::ratfn(&mut r, 6), random::ratfn(&mut r, 3));
        prop_assert!(cocycle(&f, &w).unwrap());
    }

    #[test]
    fn p3_covariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, t) = (random::ratfn(&mut r, 6), random::moebius(&mut r));
        prop_assert!(moebius_covariance(&f, &t, &FormCoeff::dz()).unwrap());
        let theta = FormCoeff::new(random::ratfn(&mut r, 2)).unwrap();
        prop_assert!(moebius_covariance(&f, &t, &theta).unwrap());
    }

    #[test]
    fn p4_corrected_holds(seed in any::<u64>()) {
        let f = random::ratfn(&mut rng(seed), 6);
        if let Some(ok) = holds(d_squared_corrected(&f, &FormCoeff::dz())) {
            prop_assert!(ok, "f = {}", f);
        }
    }

    #[test]
    fn p5_cross_ratio_inversion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, h) = (random::ratfn(&mut r, 5), random::ratfn(&mut r, 3));
        if let Some(ok) = holds(cross_ratio_inversion(&f, &h)) {
            prop_assert!(ok, "f = {}, h = {}", f, h);
        }
    }

    #[test]
    fn p6_local_readings(seed in any::<u64>()) {
        let f = random::ratfn(&mut rng(seed), 5);
        if let Ok(r) = ramification(&f) {
            prop_assert!(r.local_equality && r.schwarzian_poles, "f = {}", f);
        }
    }

    #[test]
    fn p7_critical_identity(seed in any::<u64>(), k in -12i64..12) {
        let alpha = random::ratfn(&mut rng(seed), 5);
        prop_assume!(k != 0 && !alpha.derivative().is_zero());
        prop_assert!(critical_identity(&alpha, k).unwrap());
    }

    #[test]
    fn klein_field_is_biweight_phi(seed in any::<u64>(), extra in 0i64..3) {
        let mut r = rng(seed);
        let alpha = random::poly(&mut r, 4, 5);
        let a = 4 + extra;
        let beta = random::poly(&mut r, 2, 5);
        let kvf = klein_vector_field(&alpha, a, &beta);
        let phi = phi_biweight(&RatFn::from_poly(alpha), &RatFn::from_poly(beta), -a);
        if let (Ok(k), Ok(p)) = (kvf, phi) {
            prop_assert_eq!(k.value, p);
        }
    }

    #[test]
    fn quotient_phi_is_biweight(seed in any::<u64>(), k in -8i64..8) {
        let mut r = rng(seed);
        let (a, b) = (random::poly_fn(&mut r, 4), random::poly_fn(&mut r, 4));
        let q = &b / &a;
        prop_assume!(!q.is_constant() && k != -1);
        let lhs = phi_operator(&q, 2).unwrap();
        let rhs = phi_biweight(&(&a * &b), &rankin_cohen(&a, k, &b, k + 2, 1), 2 * k + 2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn p4_literal_form_fails() {
    let mut r = rng(4);
    let mut failures = 0;
    for _ in 0..20 {
        let f = random::ratfn(&mut r, 6);
        if let Ok(ok) = d_squared_literal(&f, &FormCoeff::dz()) {
            failures += usize::from(!ok);
        }
    }
    assert!(failures >= 15, "literal D∘D held on {} samples", 20 - failures);
}

#[test]
fn p6_global_equality_fails_with_schwarzian_zeros() {
    let f = frac("z^3 - 3*z", "1");
    let r = ramification(&f).unwrap();
    assert!(!r.global_equality && r.local_holds());
}

#[test]
fn p7_on_table_invariants() {
    for (g, l) in [("A5", "v5"), ("A5", "f5"), ("S4", "v4"), ("S4", "e4"), ("A4", "f3")] {
        let (a, k) = form(g, l);
        assert!(critical_identity(&a, k).unwrap(), "{g} {l}");
    }
}

#[test]
fn polyhedral_weight_two_quotient() {
    let (v, _) = form("A4", "v3");
    let (f, _) = form("A4", "f3");
    let (e, _) = form("A4", "e3");
    let alpha = &e / &(&v * &f);
    let log_d = |p: &RatFn| &p.derivative() / p;
    let expected = &RatFn::z() - &(&(&log_d(&v) - &log_d(&e)) + &log_d(&f)).inv().scale(&Cyclo::from_int(2));
    let phi = phi_operator(&alpha, 2).unwrap();
    assert_eq!(phi, expected);
    let cfg = GroupConfig::builtin("A4").unwrap();
    assert!(equivariance_check(&phi, &cfg.pairs()).holds);
}

#[test]
fn deform_corollary_preserves_equivariance() {
    let cfg = GroupConfig::builtin("S4").unwrap();
    let (v, k) = form("S4", "v4");
    let (f4, _) = form("S4", "f4");
    let (e4, _) = form("S4", "e4");
    let f = phi_operator(&v, k).unwrap();
    // absolute invariant of degree 24
    let g = &f4.pow(3) / &e4.pow(2);
    for h in [RatFn::zero(), g.clone(), &(&g + &RatFn::one()) / &(&g - &RatFn::from_int(2))] {
        let out = deform_corollary(&f, &g, &h).unwrap();
        assert!(equivariance_check(&out, &cfg.pairs()).holds, "h = {h}");
    }
}

#[test]
fn legendrian_lift_order_eight() {
    let mut r = rng(8);
    let mut done = 0;
    while done < 10 {
        let f = random::ratfn(&mut r, 4);
        let theta = FormCoeff::dz();
        let Ok(d) = d_operator(&f, &theta) else { continue };
        if d.degenerate {
            continue;
        }
        let Some(l) = (0..10).find_map(|p| legendrian_lift_series(&f, &theta, &Cyclo::from_int(p), 8).ok()) else {
            continue;
        };
        assert!(l.contact_holds(), "f = {f}");
        assert!(l.canonical_form_is_theta() && l.schrodinger_holds());
        assert!(l.upper_right_equals(&schwarzian(&f, &theta).unwrap()));
        assert!(l.projection_equals(&d.value), "f = {f}");
        done += 1;
    }
}

#[test]
fn lift_is_moebius_covariant() {
    let f = frac("z^3 + 2", "z - 4");
    let t = projeq_core::moebius::Moebius::from_ints(2, 1, 1, 3).unwrap();
    let p = Cyclo::from_int(1);
    let l = legendrian_lift_series(&f, &FormCoeff::dz(), &p, 6).unwrap();
    let lt = legendrian_lift_series(&t.apply(&f), &FormCoeff::dz(), &p, 6).unwrap();
    assert!(lt.is_proportional_to(&l.left_multiply(&t)));
}

#[test]
fn period_values_are_integers() {
    let mut r = rng(10);
    let mut done = 0;
    while done < 20 {
        let f = random::ratfn(&mut r, 5);
        let Ok(d) = d_operator(&f, &FormCoeff::dz()) else { continue };
        if d.degenerate {
            continue;
        }
        let entries = period_residues(&f, &d.value).unwrap();
        assert!(entries.iter().all(PeriodEntry::is_integral), "f = {f}: {entries:?}");
        done += 1;
    }
    assert!(period_residues(&RatFn::z(), &RatFn::z()).is_err());
    let none = period_residues(&frac("z", "1"), &frac("z + 1", "1")).unwrap();
    assert!(none.is_empty());
    let sq = period_residues(&frac("z^2", "1"), &frac("-3*z^2", "1")).unwrap();
    assert_eq!(sq.len(), 1);
    assert_eq!(sq[0].value, PeriodValue::Exact(Cyclo::from_int(1)));
}

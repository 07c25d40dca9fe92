use num_complex::Complex64;
use projeq_core::exact::{q, qi, Cyclo};
use projeq_core::qseries::*;

fn name(s: &str) -> SeriesName {
    s.parse().unwrap()
}

/// Pentagonal-number theorem: ∏(1 − qⁿ) = Σ(−1)^k q^(k(3k−1)/2).
fn pentagonal(t: i64) -> Vec<i64> {
    let mut c = vec![0; t as usize];
    for k in -20i64..=20 {
        let e = k * (3 * k - 1) / 2;
        if e < t {
            c[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    c
}

#[test]
fn eta_matches_pentagonal_numbers() {
    let eta = named_series(&name("eta"), 30).unwrap();
    let expected = pentagonal(30);
    for (k, c) in expected.iter().enumerate() {
        let e = qi(k as i64) + q(1, 24);
        if e < qi(30) {
            assert_eq!(eta.coeff(&e), Cyclo::from_int(*c), "q^{e}");
        }
    }
}

#[test]
fn delta_two_ways() {
    let eta24 = named_series(&name("eta"), 12).unwrap().pow(24).unwrap().with_prec(&qi(12));
    let delta = named_series(&name("delta"), 12).unwrap();
    let e4 = named_series(&name("E4"), 12).unwrap();
    let e6 = named_series(&name("E6"), 12).unwrap();
    let disc = (&e4.pow(3).unwrap() - &e6.pow(2).unwrap()).scale(&Cyclo::from_frac(1, 1728));
    assert_eq!(eta24, delta);
    assert_eq!(disc, delta);
    // Ramanujan tau: 1, −24, 252, −1472
    let tau: Vec<Cyclo> = (1..5).map(|k| delta.coeff(&qi(k))).collect();
    assert_eq!(tau, [1, -24, 252, -1472].map(Cyclo::from_int));
}

#[test]
fn j_expansion_and_integrality() {
    let j = named_series(&name("j"), 4).unwrap();
    let c: Vec<Cyclo> = (-1..3).map(|k| j.coeff(&qi(k))).collect();
    assert_eq!(c, [1, 744, 196884, 21493760].map(Cyclo::from_int));
    let jd = &j * &named_series(&name("delta"), 10).unwrap();
    assert!(jd.terms().iter().all(|(_, c)| c.is_integer()));
}

/// ∏(1 − q^(2n−1))/(1 − q^(4n−2))² below q^t.
fn odd_even_product(t: i64) -> Series {
    let mut prod = Series::one().with_prec(&qi(t));
    for n in 1..=t {
        let odd = Series::from_terms([(qi(0), Cyclo::one()), (qi(2 * n - 1), Cyclo::from_int(-1))], None);
        let even = Series::from_terms([(qi(0), Cyclo::one()), (qi(4 * n - 2), Cyclo::from_int(-1))], Some(&qi(t)));
        prod = (&prod * &odd).div(&even.pow(2).unwrap()).unwrap();
    }
    prod
}

#[test]
fn j4_eta_quotient_against_products() {
    let t = 8;
    let p = odd_even_product(t);
    let j4 = named_series(&name("j4"), t as u32).unwrap();
    // the eta quotient expands to 2q^(1/4)·P², not 2q^(1/4)·P
    let squared = p.pow(2).unwrap().shift(&q(1, 4)).scale(&Cyclo::from_int(2)).with_prec(&qi(t));
    let single = p.shift(&q(1, 4)).scale(&Cyclo::from_int(2)).with_prec(&qi(t));
    assert_eq!(j4, squared);
    assert_ne!(j4, single);
    assert_eq!((&j4 - &single).valuation(), Some(q(5, 4)));
}

#[test]
fn coefficient_fields() {
    let j5 = named_series(&name("j5"), 10).unwrap();
    assert!(j5.terms().iter().all(|(_, c)| c.is_integer()));
    assert_eq!(j5.valuation(), Some(q(1, 5)));
    let j3 = named_series(&name("j3"), 4).unwrap();
    assert!(j3.terms().iter().all(|(_, c)| {
        // elements of ℚ(√2) are fixed by ζ₂₄ ↦ ζ₂₄^7
        c.is_rational() || c.order() == 24
    }));
}

#[test]
fn j_relations_order_ten() {
    for n in [4, 5] {
        assert!(verify_j_relation(n, &qi(10)).unwrap().is_zero_below(&qi(10)), "n = {n}");
    }
    let lit2 = verify_j_relation(2, &qi(10)).unwrap();
    assert_eq!(lit2.leading().unwrap(), (qi(-1), Cyclo::from_int(-255)));
    assert!(verify_j_relation_corrected(2, &qi(10)).unwrap().is_zero_below(&qi(10)));
    let lit3 = verify_j_relation(3, &qi(10)).unwrap();
    assert_eq!(lit3.valuation(), Some(q(-2, 3)));
    assert!(verify_j_relation_corrected(3, &qi(10)).unwrap().is_zero_below(&qi(10)));
}

#[test]
fn j3_constant_is_minus_half_sqrt2() {
    let b = solve_j3_constant().unwrap();
    let s2 = &Cyclo::zeta_pow(24, 3) + &Cyclo::zeta_pow(24, -3);
    assert_eq!(b, s2.scale(&q(-1, 2)));
}

#[test]
fn ramanujan_order_sixty() {
    for r in ramanujan_check(60).unwrap() {
        assert!(r.is_zero_below(&qi(60)));
    }
    for r in ramanujan_check(1).unwrap() {
        assert!(r.is_zero_below(&qi(1)));
    }
}

#[test]
fn ramanujan_mutation_control() {
    let e = |w: u32| named_series(&SeriesName::Eisenstein(w), 10).unwrap();
    let [_, r, _] = ramanujan_residuals(&e(2), &e(6), &e(4));
    assert_eq!(r.valuation(), Some(qi(1)));
}

#[test]
fn rogers_ramanujan_is_j5() {
    let out = rr_equals_j5(&qi(6)).unwrap();
    assert!(out.residual.is_zero_below(&qi(6)));
    assert!(out.depth >= 30);
    assert!(rr_equals_j5(&q(1, 5)).unwrap().residual.is_zero_below(&q(1, 5)));
}

#[test]
fn numeric_values() {
    let i = Complex64::new(0.0, 1.0);
    let e2 = named_series(&name("E2"), 40).unwrap();
    let v = series_eval(&e2, i, 1e-12).unwrap();
    assert!((v.re - 3.0 / std::f64::consts::PI).abs() < 1e-8 && v.im.abs() < 1e-8);
    let j = named_series(&name("j"), 40).unwrap();
    assert!((series_eval(&j, i, 1e-9).unwrap() - 1728.0).norm() < 1e-6);
    assert_eq!(series_eval(&Series::zero(), i, 0.0).unwrap(), Complex64::new(0.0, 0.0));
    let short = named_series(&name("E2"), 2).unwrap();
    assert!(matches!(series_eval(&short, Complex64::new(0.0, 0.05), 1e-12), Err(QSeriesError::TailBound { .. })));
}

/// E_{2k}(τ) from absolutely convergent lattice partial sums.
fn lattice_eisenstein(k: i32, tau: Complex64, r: i64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for m in -r..=r {
        for n in -r..=r {
            if m != 0 || n != 0 {
                s += (tau * m as f64 + n as f64).powi(-2 * k);
            }
        }
    }
    let pi = std::f64::consts::PI;
    let zeta = match k {
        2 => pi.powi(4) / 90.0,
        3 => pi.powi(6) / 945.0,
        _ => unreachable!(),
    };
    s / (2.0 * zeta)
}

#[test]
fn eisenstein_lattice_oracle() {
    let tau = Complex64::new(0.0, 2.0);
    for (w, k) in [(4, 2), (6, 3)] {
        let s = named_series(&SeriesName::Eisenstein(w), 20).unwrap();
        let v = series_eval(&s, tau, 1e-14).unwrap();
        // square truncation leaves an O(R⁻²) tail; one Richardson step removes it
        let l = (lattice_eisenstein(k, tau, 800) * 4.0 - lattice_eisenstein(k, tau, 400)) / 3.0;
        assert!((v - l).norm() < 1e-9, "E{w}: {v} vs {l}");
    }
}

#[test]
fn heins_equivariance() {
    let samples =
        [Complex64::new(0.1, 1.2), Complex64::new(-0.3, 0.8), Complex64::new(0.45, 2.0), Complex64::new(0.0, 2.0)];
    for tau in samples {
        let h = heins_value(tau, 60).unwrap();
        let ht = heins_value(tau + 1.0, 60).unwrap();
        assert!((ht - h - 1.0).norm() < 1e-8);
        let hs = heins_value(-tau.inv(), 60).unwrap();
        assert!((hs + h.inv()).norm() < 1e-6);
    }
}

#[test]
fn export_golden() {
    let eta = named_series(&name("eta"), 3).unwrap();
    assert_eq!(eta.to_export(), "1/24 1\n25/24 -1\n49/24 -1\n");
    let e4 = named_series(&name("E4"), 3).unwrap();
    assert_eq!(e4.to_export(), "0/1 1\n1/1 240\n2/1 2160\n");
}

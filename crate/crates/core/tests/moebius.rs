use proptest::prelude::*;

use projeq_core::exact::{parse_cyclo, qi, Cyclo, RatFn};
use projeq_core::moebius::*;
use projeq_core::operators::{phi_biweight, phi_operator, rankin_cohen};
use projeq_core::random::{self, rng};

fn config(name: &str) -> GroupConfig {
    GroupConfig::builtin(name).unwrap()
}

fn form(cfg: &GroupConfig, label: &str) -> (RatFn, i64, Vec<Cyclo>) {
    let inv = cfg.invariant(label).unwrap();
    (RatFn::from_poly(inv.poly.clone()), inv.weight, inv.characters.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_a_group_action(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (s, t) = (random::moebius(&mut r), random::moebius(&mut r));
        let f = random::ratfn(&mut r, 4);
        prop_assert_eq!(s.compose(&t).apply(&f), s.apply(&t.apply(&f)));
        prop_assert_eq!(s.compose(&s.inverse()).apply(&f), f);
    }

    #[test]
    fn cross_ratio_is_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random::moebius(&mut r);
        let fs: Vec<RatFn> = (0..4).map(|_| random::ratfn(&mut r, 3)).collect();
        let before = cross_ratio(&fs[0], &fs[1], &fs[2], &fs[3]);
        prop_assume!(!before.degenerate);
        let after = cross_ratio(&t.apply(&fs[0]), &t.apply(&fs[1]), &t.apply(&fs[2]), &t.apply(&fs[3]));
        prop_assert_eq!(after.value, before.value);
    }
}

#[test]
fn shipped_configs_load_with_table_weights() {
    let weights = |n: &str| config(n).invariants.iter().map(|i| (i.label.clone(), i.weight)).collect::<Vec<_>>();
    let own = |v: &[(&str, i64)]| v.iter().map(|(l, w)| (l.to_string(), *w)).collect::<Vec<_>>();
    assert_eq!(weights("A5"), own(&[("v5", -12), ("f5", -20), ("e5", -30)]));
    assert_eq!(weights("S4"), own(&[("v4", -6), ("f4", -8), ("e4", -12)]));
    assert_eq!(weights("A4"), own(&[("v3", -4), ("f3", -4), ("e3", -6)]));
    assert_eq!(BUILTIN_GROUPS.len(), 3);
}

#[test]
fn syzygies_hold_exactly() {
    let s2 = parse_cyclo("zeta^3 + zeta^21", 24).unwrap();
    let expected = [("A5", Cyclo::from_int(1728), 5), ("S4", Cyclo::from_int(-108), 4), ("A4", s2.scale(&qi(16)), 3)];
    for (name, c, pow) in expected {
        let cfg = config(name);
        let s = cfg.syzygy.clone().unwrap();
        assert_eq!((s.constant.clone(), s.vertex_power), (c.clone(), pow), "{name}");
        let g = |l: &str| cfg.invariant(l).unwrap().poly.clone();
        assert_eq!(&g(&s.edge).pow(2) - &g(&s.face).pow(3), g(&s.vertex).pow(pow).scale(&c), "{name}");
    }
}

#[test]
fn every_form_passes_every_generator() {
    for name in BUILTIN_GROUPS {
        let cfg = config(name);
        for inv in &cfg.invariants {
            let a = RatFn::from_poly(inv.poly.clone());
            for (g, chi) in cfg.generators.iter().zip(&inv.characters) {
                assert!(form_invariance_check(&a, inv.weight, chi, g).holds, "{name} {}", inv.label);
                assert_eq!(discover_character(&a, inv.weight, g).as_ref(), Some(chi));
            }
        }
    }
}

#[test]
fn config_round_trip_is_byte_exact() {
    for name in BUILTIN_GROUPS {
        let cfg = config(name);
        let text = cfg.to_text();
        let again = load_group_config(&text).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.to_text(), text);
        assert_eq!(text, GroupConfig::builtin_text(name).unwrap(), "{name} ships canonical text");
    }
}

#[test]
fn corrupted_configs_are_rejected() {
    let text = GroupConfig::builtin_text("A5").unwrap();
    let bad = text.replace("z^20 - 228*z^15", "z^20 - 227*z^15");
    match load_group_config(&bad) {
        Err(MoebiusError::Validation(msg)) => assert!(msg.contains("f5") && msg.contains("generator"), "{msg}"),
        other => panic!("expected a validation error, got {other:?}"),
    }
    let bad_syzygy = text.replace("constant = \"1728\"", "constant = \"1729\"");
    assert!(matches!(load_group_config(&bad_syzygy), Err(MoebiusError::Validation(_))));
    assert!(matches!(load_group_config("name = 3"), Err(MoebiusError::Parse(_))));
    let extra = format!("{text}\nunexpected = 1\n");
    assert!(load_group_config(&extra).is_err());
    let bad_char = text.replacen("characters = [\"1\", \"1\"]", "characters = [\"1\"]", 1);
    assert!(matches!(load_group_config(&bad_char), Err(MoebiusError::Parse(_))));
}

#[test]
fn klein_map_is_icosahedrally_equivariant() {
    let cfg = config("A5");
    let (v5, k, _) = form(&cfg, "v5");
    let klein = phi_operator(&v5, k).unwrap();
    assert!(equivariance_check(&klein, &cfg.pairs()).holds);
    assert!(equivariance_check(&RatFn::z(), &cfg.pairs()).holds);
    let tr = Moebius::from_ints(1, 1, 0, 1).unwrap();
    let r = equivariance_check(&klein, &[(tr.clone(), tr)]);
    assert!(!r.holds && r.failing.unwrap().0 == 0);
}

#[test]
fn phi_of_every_form_is_equivariant() {
    for name in BUILTIN_GROUPS {
        let cfg = config(name);
        let pairs = cfg.pairs();
        for inv in &cfg.invariants {
            let a = RatFn::from_poly(inv.poly.clone());
            assert!(equivariance_check(&phi_operator(&a, inv.weight).unwrap(), &pairs).holds, "{name} {}", inv.label);
        }
    }
}

#[test]
fn bracket_weights_close() {
    for name in BUILTIN_GROUPS {
        let cfg = config(name);
        for a in &cfg.invariants {
            for b in &cfg.invariants {
                let (fa, fb) = (RatFn::from_poly(a.poly.clone()), RatFn::from_poly(b.poly.clone()));
                for n in 0..3 {
                    let br = rankin_cohen(&fa, a.weight, &fb, b.weight, n);
                    if br.is_zero() {
                        continue;
                    }
                    let w = a.weight + b.weight + 2 * n as i64;
                    for (i, g) in cfg.generators.iter().enumerate() {
                        let chi = &a.characters[i] * &b.characters[i];
                        assert!(form_invariance_check(&br, w, &chi, g).holds, "{name} [{},{}]_{n}", a.label, b.label);
                    }
                }
            }
        }
    }
}

#[test]
fn biweight_on_invariant_pairs() {
    // weights (k, k + 2): v5·f5 at −32 with e5 at −30
    let cfg = config("A5");
    let (v, _, _) = form(&cfg, "v5");
    let (f, _, _) = form(&cfg, "f5");
    let (e, _, _) = form(&cfg, "e5");
    let alpha = &v * &f;
    for c in [1, -3, 7] {
        let beta = e.scale(&Cyclo::from_int(c));
        let phi = phi_biweight(&alpha, &beta, -32).unwrap();
        assert!(equivariance_check(&phi, &cfg.pairs()).holds, "c = {c}");
    }
    assert_eq!(phi_biweight(&alpha, &RatFn::zero(), -32).unwrap(), phi_operator(&alpha, -32).unwrap());
}

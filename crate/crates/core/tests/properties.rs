use abelkit::arith::tau;
use abelkit::counting::{count, DecompCounts, SurfaceSpec};
use abelkit::discform::{disc_form_of, global_order, scaled_order, DEFAULT_GUARD};
use abelkit::genus::genus_of;
use abelkit::picard3::{
    al_orbit_check, embedding_vectors, gram_relations_hold, multiplier_invariant, period_point,
    sigma_set, SigmaEntry, DEFAULT_TOL,
};
use abelkit::qform::{reduce, EvenBinaryLattice};
use num_complex::Complex64;
use proptest::prelude::*;

fn lattice() -> impl Strategy<Value = EvenBinaryLattice> {
    (1i64..30, -30i64..30, 1i64..30)
        .prop_filter_map("positive definite", |(a, b, c)| EvenBinaryLattice::new(a, b, c).ok())
        .prop_filter("small discriminant group", |l| l.det() <= 1500)
}

fn counts_ok(c: &DecompCounts) -> bool {
    c.delta >= 1 && c.delta0 <= c.delta && c.delta_tilde == 2 * c.delta - c.delta0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_respect_identity(l in lattice()) {
        let c = count(&SurfaceSpec::Rho4(l)).unwrap();
        prop_assert!(counts_ok(&c), "{:?}", c);
    }

    #[test]
    fn counts_depend_on_class_only(l in lattice()) {
        let r = reduce(&l).form;
        prop_assert_eq!(count(&SurfaceSpec::Rho4(l)).unwrap(), count(&SurfaceSpec::Rho4(r)).unwrap());
        prop_assert_eq!(global_order(&l).unwrap(), global_order(&r).unwrap());
    }

    #[test]
    fn genus_report_invariant(l in lattice()) {
        let g = genus_of(&l, DEFAULT_GUARD).unwrap();
        let amb = g.ambiguous.iter().filter(|&&a| a).count() as u64;
        prop_assert_eq!(g.proper_count, amb + 2 * (g.g_count - amb));
        prop_assert!(g.members.iter().all(|m| m.det() == l.det()));
        let d = disc_form_of(&l).unwrap();
        prop_assert!(g.members.iter().all(|m| disc_form_of(m).unwrap().order() == d.order()));
    }

    #[test]
    fn scaled_order_is_a_multiple(l in lattice(), n in 1i64..8) {
        prop_assert_eq!(scaled_order(&l, n).unwrap() % global_order(&l).unwrap(), 0);
    }

    #[test]
    fn picard3_counts(n in 1u64..100_000) {
        let c = count(&SurfaceSpec::Rho3(n)).unwrap();
        prop_assert!(counts_ok(&c));
        prop_assert_eq!(c.delta, 1 << (tau(n) - 1));
        prop_assert_eq!(sigma_set(n as i64).unwrap().len() as u64, c.delta);
    }

    #[test]
    fn embedding_and_multipliers(n in 1i64..5000) {
        for s in sigma_set(n).unwrap() {
            prop_assert!(gram_relations_hold(&embedding_vectors(n, &s).unwrap(), n));
            let m = multiplier_invariant(n, &s).unwrap() as i128;
            prop_assert_eq!((m * m - 1).rem_euclid(4 * n as i128), 0);
        }
    }

    #[test]
    fn multiplier_ignores_bezout_choice(n in 1i64..2000, k in -5i64..5) {
        for s in sigma_set(n).unwrap() {
            let other = SigmaEntry { a: s.a + k * s.s, b: s.b - k * s.r, ..s };
            prop_assert_eq!(multiplier_invariant(n, &s).unwrap(), multiplier_invariant(n, &other).unwrap());
        }
    }

    #[test]
    fn period_points_stay_in_upper_half_plane(n in 1i64..200, re in -0.5f64..0.5, im in 1.0f64..2.0) {
        let tau = Complex64::new(re, im);
        for s in sigma_set(n).unwrap() {
            prop_assert!(period_point(n, &s, tau).unwrap().im > 0.0);
        }
    }

    #[test]
    fn orbit_check_random(n in 2i64..60, re in -0.5f64..0.5, im in 1.0f64..2.0) {
        let tau = Complex64::new(re, im);
        prop_assert!(al_orbit_check(n, tau, DEFAULT_TOL).unwrap());
    }
}

use jastrow::geometry::Configuration;
use jastrow::harmonics::poly::{parse_polynomial, Polynomial};
use jastrow::jastrow::{eval_f2, gamma2, gamma3, laplacian_f2};
use jastrow::schrodinger::coulomb_potential;
use jastrow::poisson::solve::resonance_coefficient;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-3.0..3.0f64)
}

proptest! {
    #[test]
    fn gamma2_in_range(x in point(), y in point()) {
        prop_assume!(x.iter().chain(&y).any(|c| c.abs() > 1e-3));
        if let Ok(g) = gamma2(&x, &y) {
            prop_assert!(g.abs() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn gamma3_in_range(x in point(), y in point(), z in point()) {
        if let Ok(g) = gamma3(&x, &y, &z) {
            prop_assert!((1.0 - 1e-12..=1.5 + 1e-12).contains(&g));
        }
    }

    #[test]
    fn laplacian_f2_is_potential(
        e in prop::collection::vec(point(), 1..4),
        z in 0.5..4.0f64,
    ) {
        let cfg = Configuration::atomic(z, e).unwrap();
        prop_assume!(cfg.singular_distance() > 1e-2);
        let v = coulomb_potential(&cfg).unwrap();
        let lap = laplacian_f2(&cfg).unwrap();
        prop_assert!((lap - v).abs() <= 1e-10 * v.abs().max(1.0));
        prop_assert!(eval_f2(&cfg).is_finite());
    }

    #[test]
    fn polynomial_display_parses_back(
        terms in prop::collection::vec((prop::array::uniform3(0u32..4), -5i32..5), 1..6)
    ) {
        let mut p = Polynomial::<f64>::zero(3);
        for (e, c) in terms {
            p = p.add(&Polynomial::term(e.to_vec(), c as f64 * 0.25));
        }
        let q = parse_polynomial(&p.to_string(), 3).unwrap();
        prop_assert_eq!(p.sub(&q).is_zero(), true);
    }

    #[test]
    fn resonance_exactly_at_k_plus_two(n in 3usize..10, k in 0usize..5) {
        let zeros: Vec<usize> = (0..20).filter(|&l| resonance_coefficient(n, k, l) == 0).collect();
        prop_assert_eq!(zeros, vec![k + 2]);
    }
}

use proptest::prelude::*;
use stieltjes::stieltjes::{
    c_k_integral, c_k_integral_split, dilcher_psi, gamma_k, gamma_oracle, laurent_coefficients, log_term, Method,
};

#[test]
fn oracle_against_integral_grid() {
    for k in 1..=4 {
        for a in [0.25, 0.5, 0.75, 1.0] {
            let o = gamma_oracle(k, a, 1e-12).unwrap();
            let c = c_k_integral(k, a, 1e-12).unwrap();
            let r = (o.value - (c.value + log_term(k, a))).abs();
            assert!(r <= (o.err + c.err).max(1e-13), "k = {k}, a = {a}: {r:e}");
            assert!(r <= 1e-9);
        }
    }
}

#[test]
fn shared_contour_matches_table_route() {
    let all = laurent_coefficients(5, 0.75, 1e-12).unwrap();
    for v in &all {
        let t = gamma_k(v.k, 0.75, Method::Integral, 1e-12).unwrap();
        assert!((v.value - t.value).abs() <= 1e-11, "k = {}", v.k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn three_routes_agree(k in 1usize..=4, a in 0.05f64..3.0) {
        let o = gamma_oracle(k, a, 1e-11).unwrap();
        let c = c_k_integral(k, a, 1e-11).unwrap().c_to_gamma();
        let d = dilcher_psi(k, a, 1e-10).unwrap();
        let scale = o.value.abs().max(1.0);
        prop_assert!((o.value - c.value).abs() <= 1e-9 * scale);
        prop_assert!((o.value + d.value).abs() <= 1e-8 * scale);
    }

    #[test]
    fn split_and_combined_integrals_agree(k in 1usize..=6, a in 0.05f64..1.0) {
        let x = c_k_integral(k, a, 1e-12).unwrap();
        let y = c_k_integral_split(k, a, 1e-12).unwrap();
        prop_assert!((x.value - y.value).abs() <= x.err + y.err + 1e-13);
    }

    #[test]
    fn definition_identity(k in 0usize..=5, a in 0.1f64..4.0) {
        let g = gamma_oracle(k, a, 1e-11).unwrap();
        let back = g.gamma_to_c().c_to_gamma();
        prop_assert!((back.value - g.value).abs() <= 4.0 * f64::EPSILON * (g.value.abs() + log_term(k, a).abs()));
    }
}

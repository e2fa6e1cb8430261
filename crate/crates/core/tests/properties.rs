use hqz::fd::{fd_laplacian_abs_f, fd_laplacian_ulogu, FD_STEP};
use hqz::laplacian::laplacian_sample;
use hqz::planar::{big_k, random_qr_map};
use hqz::theorems::verify_T2;
use hqz::{Complex64, QuadratureSpec};
use proptest::prelude::*;

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.999f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laplacian_ratio_is_bounded_by_k_squared(seed in 0u64..10_000, k in 0.0..0.9f64, z in disk_point()) {
        let map = random_qr_map(seed, k, 8, 0.02);
        let s = laplacian_sample(&map, z).unwrap();
        let bound = big_k(map.k_declared()).powi(2);
        prop_assert!(s.ratio <= bound * (1.0 + 1e-12), "ratio {} > {}", s.ratio, bound);
    }

    #[test]
    fn jacobian_is_positive(seed in 0u64..10_000, k in 0.0..0.9f64, z in disk_point()) {
        let map = random_qr_map(seed, k, 8, 0.02);
        let jac = map.jacobian(z);
        let dg = map.dg(z).norm_sqr();
        prop_assert!(jac > 0.0);
        prop_assert!((jac - (dg - map.dh(z).norm_sqr())).abs() <= 1e-12 * dg);
    }

    #[test]
    fn closed_forms_match_finite_differences(seed in 0u64..10_000, k in 0.0..0.6f64, z in disk_point()) {
        let map = random_qr_map(seed, k, 8, 0.02);
        let s = laplacian_sample(&map, z).unwrap();
        let fd_abs = fd_laplacian_abs_f(&map, z, FD_STEP);
        let fd_ent = fd_laplacian_ulogu(&map, z, FD_STEP);
        prop_assert!((s.lap_abs_f - fd_abs).abs() <= 1e-5 * s.lap_abs_f.abs());
        prop_assert!((s.lap_ulogu - fd_ent).abs() <= 1e-5 * s.lap_ulogu.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn theorem2_holds_with_consistent_v_bound(seed in 0u64..100_000, k in 0.0..0.9f64, r in 0.3..1.0f64) {
        let map = random_qr_map(seed, k, 6, 0.02);
        let rep = verify_T2(&map, r, &QuadratureSpec::default()).unwrap();
        prop_assert!(rep.margin >= -1e-9, "margin {}", rep.margin);
        prop_assert!(rep.param("v_norm1").unwrap() <= rep.lhs + 1e-12);
    }
}

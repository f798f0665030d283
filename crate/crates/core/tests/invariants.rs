//! Cross-module invariants that do not belong to any single unit suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paracontact_core::catalog::{example_lie, test_instances};
use paracontact_core::classify::rank_at_point;
use paracontact_core::frame::FrameContext;
use paracontact_core::structure::{
    compute_h, validate_almost_paracontact, validate_metric,
};
use paracontact_core::deform::dc_deform;
use paracontact_core::Scalar;

#[test]
fn h_is_nilpotent_on_every_instance() {
    // Im h_p is contained in ker h_p everywhere: h^2 = 0 as an exact
    // polynomial identity, hence at every point.
    for (name, s) in test_instances() {
        let h = compute_h(&s);
        assert!(h.mul(&h).is_zero_matrix(), "{name}: h^2 != 0");
    }
}

#[test]
fn pointwise_rank_never_exceeds_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (name, s) in test_instances() {
        let h = compute_h(&s);
        let n = s.n();
        let chart_len = s.frame.chart().len();
        for _ in 0..25 {
            let point: Vec<BigRational> = (0..chart_len)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-30i64..=30)),
                        BigInt::from(rng.gen_range(1i64..=9)),
                    )
                })
                .collect();
            let rank = rank_at_point(&h, &point).unwrap();
            assert!(rank <= n, "{name}: rank {rank} > n = {n} at {point:?}");
        }
    }
    // up to n = 4 as well
    for m in 0..=4 {
        let s = example_lie(4, m).unwrap();
        let h = compute_h(&s);
        assert!(rank_at_point(&h, &[]).unwrap() <= 4);
    }
}

#[test]
fn d_eta_is_antisymmetric_and_degenerate_on_xi() {
    // phi xi = 0 forces d eta(xi, .) = 0 on every valid structure; the xi
    // direction of the catalog frames is index 0 except for r3 where it is 2.
    for (name, s) in test_instances() {
        let dim = s.dim();
        for i in 0..dim {
            for j in 0..dim {
                assert_eq!(s.d_eta(i, j), -s.d_eta(j, i), "{name}: d eta antisymmetry");
            }
        }
        let xi_index = if name == "r3" { 2 } else { 0 };
        for i in 0..dim {
            assert!(
                s.d_eta(xi_index, i).is_zero(),
                "{name}: d eta(xi, E_{i}) != 0"
            );
        }
    }
}

#[test]
fn h_squared_vanishes_at_kappa_minus_one() {
    use paracontact_core::curvature::h_squared_check;
    for (name, s) in test_instances() {
        let h = compute_h(&s);
        let report = h_squared_check(&s, &h, &Scalar::from_int(-1));
        assert!(report.all_passed(), "{name}: {report}");
    }
}

#[test]
fn deformations_preserve_the_axiom_suite() {
    for (name, s) in test_instances() {
        for c in [Scalar::from_int(2), Scalar::from_ratio(-1, 3)] {
            let d = dc_deform(&s, &c).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(validate_almost_paracontact(&d).all_passed(), "{name}");
            assert!(validate_metric(&d).all_passed(), "{name}");
        }
    }
}

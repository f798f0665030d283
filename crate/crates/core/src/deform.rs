//! D_c-homothetic deformations: `phi' = phi`, `xi' = xi / c`, `eta' = c eta`,
//! `g' = c g + c(c - 1) eta (x) eta`, for nonzero `c`.
//!
//! Deformation preserves the paracontact metric class and transforms the
//! nullity constants of a (-1, mu)-space by `mu' = (mu - 2 + 2c) / c`. The
//! round-trip checker never applies that law to both sides: the deformed
//! constants are re-inferred from scratch through Koszul and Riemann.

use num_traits::Zero;

use crate::curvature::{infer_nullity, NullityVerdict};
use crate::linalg::Matrix;
use crate::structure::{validate_almost_paracontact, validate_metric, ParacontactData};
use crate::{AxiomReport, DeformError, Poly, Scalar};

/// Applies the deformation and revalidates the result as a paracontact
/// metric structure before returning it.
///
/// The deformed metric must stay constant in the frame; with polynomial
/// `eta` this can fail, and is rejected with a diagnostic.
pub fn dc_deform(s: &ParacontactData, c: &Scalar) -> Result<ParacontactData, DeformError> {
    if c.is_zero() {
        return Err(DeformError::ZeroC);
    }
    let dim = s.dim();
    let c_inv = c.inverse().expect("c nonzero");
    let xi = s.xi.scale_scalar(&c_inv);
    let eta: Vec<Poly> = s.eta.iter().map(|p| p.scale(c)).collect();

    // g' = c g + c(c-1) eta (x) eta, entrywise as polynomials first
    let factor = c * &(c - &Scalar::from_int(1));
    let mut g = Matrix::zeroes(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let entry = &Poly::constant(s.g.get(i, j) * c)
                + &(&s.eta[i] * &s.eta[j]).scale(&factor);
            match entry.constant_value() {
                Some(v) => g.set(i, j, v),
                None => {
                    return Err(DeformError::NonConstantMetric {
                        i,
                        j,
                        entry: entry.to_string(),
                    })
                }
            }
        }
    }

    let deformed = ParacontactData::new(s.frame.clone(), s.phi.clone(), xi, eta, g)?;
    let almost = validate_almost_paracontact(&deformed);
    let metric = validate_metric(&deformed);
    if !almost.all_passed() || !metric.all_passed() {
        return Err(DeformError::RevalidationFailed(format!("{almost}{metric}")));
    }
    Ok(deformed)
}

/// The transformation law `mu' = (mu - 2 + 2c) / c`.
pub fn predicted_mu(mu: &Scalar, c: &Scalar) -> Result<Scalar, DeformError> {
    if c.is_zero() {
        return Err(DeformError::ZeroC);
    }
    let numerator = &(mu - &Scalar::from_int(2)) + &(c * &Scalar::from_int(2));
    Ok(&numerator / c)
}

/// Deforms, recomputes curvature from scratch, and compares the inferred
/// constants with the law: kappa stays -1 and mu transforms as predicted.
pub fn deform_roundtrip_check(s: &ParacontactData, c: &Scalar) -> Result<AxiomReport, DeformError> {
    let mut report = AxiomReport::new(format!("D_c deformation round trip, c = {c}"));

    let before = infer_nullity(s);
    let mu = match before {
        NullityVerdict::Constants { ref kappa, ref mu } if *kappa == Scalar::from_int(-1) => {
            report.pass("source_is_minus_one_space");
            mu.clone()
        }
        other => {
            report.fail(
                "source_is_minus_one_space",
                format!("source inferred as {other}"),
            );
            return Ok(report);
        }
    };

    let deformed = dc_deform(s, c)?;
    report.pass("deformed_revalidates");

    match infer_nullity(&deformed) {
        NullityVerdict::Constants { kappa, mu: mu_new } => {
            report.record(
                "deformed_kappa_minus_one",
                (kappa != Scalar::from_int(-1)).then(|| format!("kappa' = {kappa}")),
            );
            let expected = predicted_mu(&mu, c)?;
            report.record(
                "mu_transformation_law",
                (mu_new != expected)
                    .then(|| format!("inferred mu' = {mu_new}, law gives {expected}")),
            );
        }
        other => report.fail("deformed_kappa_minus_one", format!("inferred {other}")),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::curvature::infer_nullity;
    use proptest::prelude::*;

    fn si(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_deformation() {
        let s = catalog::example_r3();
        let d = dc_deform(&s, &si(1)).unwrap();
        assert_eq!(s, d);
    }

    #[test]
    fn zero_c_rejected() {
        let s = catalog::example_r3();
        assert!(matches!(dc_deform(&s, &Scalar::zero()), Err(DeformError::ZeroC)));
        assert!(predicted_mu(&si(2), &Scalar::zero()).is_err());
    }

    #[test]
    fn r3_deforms_to_a_valid_minus_one_two_space() {
        let s = catalog::example_r3();
        let d = dc_deform(&s, &si(2)).unwrap();
        assert_eq!(
            infer_nullity(&d),
            NullityVerdict::Constants { kappa: si(-1), mu: si(2) }
        );
    }

    #[test]
    fn deform_then_inverse_restores() {
        let s = catalog::example_lie(2, 1).unwrap();
        let c = Scalar::from_ratio(3, 2);
        let back = dc_deform(&dc_deform(&s, &c).unwrap(), &c.inverse().unwrap()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn predicted_mu_examples() {
        // mu = 2 is a fixed point for every c
        for c in [si(2), si(-1), Scalar::from_ratio(1, 2), si(3)] {
            assert_eq!(predicted_mu(&si(2), &c).unwrap(), si(2));
        }
        // from mu = 0, c = 2/(2 - mu_target) lands on mu_target
        for target in [si(-2), si(1), si(4)] {
            let c = &si(2) / &(&si(2) - &target);
            assert_eq!(predicted_mu(&si(0), &c).unwrap(), target);
        }
        // from mu != 2, c = 1 - mu/2 lands on 0
        for mu in [si(4), si(-2)] {
            let c = &si(1) - &(&mu / &si(2));
            assert_eq!(predicted_mu(&mu, &c).unwrap(), si(0));
        }
    }

    #[test]
    fn roundtrip_check_on_catalog() {
        for c in [si(2), Scalar::from_ratio(1, 2), si(-1), si(3)] {
            for s in [catalog::example_lie(1, 1).unwrap(), catalog::example_r3()] {
                let report = deform_roundtrip_check(&s, &c).unwrap();
                assert!(report.all_passed(), "c = {c}: {report}");
            }
        }
    }

    #[test]
    fn mu0_seed_reaches_other_mu_values() {
        let seed = catalog::example_mu0();
        // c = 2/(2 - 4) = -1 sends mu = 0 to mu = 4
        let d = dc_deform(&seed, &si(-1)).unwrap();
        assert_eq!(
            infer_nullity(&d),
            NullityVerdict::Constants { kappa: si(-1), mu: si(4) }
        );
        // and c = 1 - 4/2 = -1 sends it back to mu = 0
        let back = dc_deform(&d, &si(-1)).unwrap();
        assert_eq!(
            infer_nullity(&back),
            NullityVerdict::Constants { kappa: si(-1), mu: si(0) }
        );
    }

    proptest! {
        /// Composition law: deforming by c1 then c2 equals deforming by c1*c2.
        #[test]
        fn mu_law_composes(
            mu_n in -9i64..=9, mu_d in 1i64..=4,
            c1_n in -9i64..=9, c1_d in 1i64..=4,
            c2_n in -9i64..=9, c2_d in 1i64..=4,
        ) {
            prop_assume!(c1_n != 0 && c2_n != 0);
            let mu = Scalar::from_ratio(mu_n, mu_d);
            let c1 = Scalar::from_ratio(c1_n, c1_d);
            let c2 = Scalar::from_ratio(c2_n, c2_d);
            let step = predicted_mu(&predicted_mu(&mu, &c1).unwrap(), &c2).unwrap();
            let joint = predicted_mu(&mu, &(&c1 * &c2)).unwrap();
            prop_assert_eq!(step, joint);
        }
    }
}

//! Programmatic constructors for the built-in example structures.
//!
//! All catalog structures come back fully assembled and with their frames
//! validated (Jacobi at construction for Lie frames, constant-determinant
//! frame matrix for the chart example); the geometric axiom suites are
//! expected to pass on every entry and the test suites pin that down.

use std::sync::Arc;

use crate::frame::{CoordFrame, FieldVec, Frame, LieFrame};
use crate::linalg::{ConstMatrix, PolyMatrix};
use crate::{CatalogError, ParacontactData, Poly, Scalar};

/// Frame index of `xi` in the Lie-algebra examples.
const XI: usize = 0;

fn x_idx(i: usize) -> usize {
    2 * i - 1
}

fn y_idx(i: usize) -> usize {
    2 * i
}

/// The (2n+1)-dimensional Lie-algebra family with `rank(h) = m`.
///
/// Basis `{xi, X_1, Y_1, ..., X_n, Y_n}`; the nonzero brackets are
/// `[xi, X_i] = Y_i` for `i <= m` together with the three-case `[X_i, Y_j]`
/// table (diagonal entries `2 xi + sqrt2 (1 + delta_im) Y_m` resp.
/// `2 xi + sqrt2 Y_i`, and mixed entries `sqrt2 Y_i`). The tensors are
/// `phi X_i = X_i`, `phi Y_i = -Y_i`, `eta` dual to `xi`, and
/// `g(xi, xi) = g(X_i, Y_i) = 1`.
///
/// `m = 0` is admitted as the degenerate `h = 0` variant (a K-paracontact
/// specimen useful as a negative control); the family proper has `m >= 1`.
pub fn example_lie(n: usize, m: usize) -> Result<ParacontactData, CatalogError> {
    if n < 1 || m > n {
        return Err(CatalogError::InvalidParams { n, m });
    }
    let dim = 2 * n + 1;
    let mut names = vec!["xi".to_string()];
    for i in 1..=n {
        names.push(format!("X{i}"));
        names.push(format!("Y{i}"));
    }

    let sqrt2 = Scalar::sqrt(2).expect("2 is square-free");
    let two = Scalar::from_int(2);
    let mut entries: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    let mut push = |a: usize, b: usize, parts: Vec<(usize, Scalar)>| {
        let mut v = vec![Scalar::from_int(0); dim];
        for (k, c) in parts {
            v[k] = &v[k] + &c;
        }
        entries.push((a, b, v));
    };

    for i in 1..=m {
        push(XI, x_idx(i), vec![(y_idx(i), Scalar::from_int(1))]);
    }
    for i in 1..=n {
        for j in 1..=n {
            let mut parts: Vec<(usize, Scalar)> = Vec::new();
            if i <= m && j <= m {
                if i == j {
                    let coef = if i == m { &sqrt2 * &two } else { sqrt2.clone() };
                    parts.push((XI, two.clone()));
                    parts.push((y_idx(m), coef));
                } else {
                    if i == m {
                        parts.push((y_idx(j), sqrt2.clone()));
                    }
                    if j == m {
                        parts.push((y_idx(i), sqrt2.clone()));
                    }
                }
            } else if i > m && j > m {
                if i == j {
                    parts.push((XI, two.clone()));
                    parts.push((y_idx(i), sqrt2.clone()));
                }
            } else if i <= m && j > m {
                parts.push((y_idx(i), sqrt2.clone()));
            }
            if !parts.is_empty() {
                push(x_idx(i), y_idx(j), parts);
            }
        }
    }

    let frame = LieFrame::new(names, &entries)
        .expect("catalog bracket table satisfies antisymmetry and Jacobi");

    let mut phi = PolyMatrix::zeroes(dim, dim);
    for i in 1..=n {
        phi.set(x_idx(i), x_idx(i), Poly::one());
        phi.set(y_idx(i), y_idx(i), Poly::constant(Scalar::from_int(-1)));
    }
    let xi = FieldVec::unit(dim, XI);
    let mut eta = vec![Poly::zero(); dim];
    eta[XI] = Poly::one();
    let mut g = ConstMatrix::zeroes(dim, dim);
    g.set(XI, XI, Scalar::from_int(1));
    for i in 1..=n {
        g.set(x_idx(i), y_idx(i), Scalar::from_int(1));
        g.set(y_idx(i), x_idx(i), Scalar::from_int(1));
    }

    Ok(ParacontactData::new(Frame::Lie(frame), phi, xi, eta, g)
        .expect("catalog data is well-shaped"))
}

/// The 3-dimensional chart example on coordinates `(x, y, z)`:
/// `e1 = d_x + xz d_y - 2y d_z`, `e2 = d_y`, `xi = d_z`, with
/// `eta = 2y dx + dz`, `g(e1, e2) = g(xi, xi) = 1` and
/// `phi e1 = e1, phi e2 = -e2, phi xi = 0`. Its `h` has non-constant rank:
/// 0 on the plane `x = 0` and 1 elsewhere.
pub fn example_r3() -> ParacontactData {
    let coords: Arc<Vec<String>> = Arc::new(vec!["x".into(), "y".into(), "z".into()]);
    let x = Poly::var(&coords, 0);
    let y = Poly::var(&coords, 1);
    let z = Poly::var(&coords, 2);

    let e1 = FieldVec::from_components(vec![Poly::one(), &x * &z, y.scale(&Scalar::from_int(-2))]);
    let e2 = FieldVec::from_components(vec![Poly::zero(), Poly::one(), Poly::zero()]);
    let xi_coord = FieldVec::from_components(vec![Poly::zero(), Poly::zero(), Poly::one()]);
    let frame = CoordFrame::new(
        coords.as_ref().clone(),
        vec!["e1".into(), "e2".into(), "xi".into()],
        vec![e1, e2, xi_coord.clone()],
    )
    .expect("frame matrix is unit triangular");

    let xi = frame.to_frame_components(&xi_coord);
    // eta = 2y dx + dz, paired with the frame fields
    let eta = frame.covector_to_frame(&[y.scale(&Scalar::from_int(2)), Poly::zero(), Poly::one()]);

    let mut phi = PolyMatrix::zeroes(3, 3);
    phi.set(0, 0, Poly::one());
    phi.set(1, 1, Poly::constant(Scalar::from_int(-1)));

    let mut g = ConstMatrix::zeroes(3, 3);
    g.set(0, 1, Scalar::from_int(1));
    g.set(1, 0, Scalar::from_int(1));
    g.set(2, 2, Scalar::from_int(1));

    ParacontactData::new(Frame::Coord(frame), phi, xi, eta, g)
        .expect("catalog data is well-shaped")
}

/// A 3-dimensional left-invariant structure with nullity constants (-1, 0)
/// and `h != 0`: brackets `[xi, X] = X + Y`, `[xi, Y] = -Y`, `[X, Y] = 2 xi`,
/// with the standard tensors `phi X = X`, `phi Y = -Y`, `eta` dual to `xi`,
/// `g(xi, xi) = g(X, Y) = 1`.
///
/// This is the seed for every deformation identity that needs a starting
/// point away from the mu = 2 fixed line: it satisfies the paraSasakian
/// curvature equation while not being paraSasakian.
pub fn example_mu0() -> ParacontactData {
    let one = Scalar::from_int(1);
    let frame = LieFrame::new(
        vec!["xi".into(), "X".into(), "Y".into()],
        &[
            (0, 1, vec![Scalar::from_int(0), one.clone(), one.clone()]),
            (0, 2, vec![Scalar::from_int(0), Scalar::from_int(0), Scalar::from_int(-1)]),
            (1, 2, vec![Scalar::from_int(2), Scalar::from_int(0), Scalar::from_int(0)]),
        ],
    )
    .expect("bracket table satisfies Jacobi");

    let mut phi = PolyMatrix::zeroes(3, 3);
    phi.set(1, 1, Poly::one());
    phi.set(2, 2, Poly::constant(Scalar::from_int(-1)));
    let xi = FieldVec::unit(3, 0);
    let eta = vec![Poly::one(), Poly::zero(), Poly::zero()];
    let mut g = ConstMatrix::zeroes(3, 3);
    g.set(0, 0, Scalar::from_int(1));
    g.set(1, 2, Scalar::from_int(1));
    g.set(2, 1, Scalar::from_int(1));

    ParacontactData::new(Frame::Lie(frame), phi, xi, eta, g)
        .expect("catalog data is well-shaped")
}

/// The instances exercised by the cross-cutting test suites.
pub fn test_instances() -> Vec<(String, ParacontactData)> {
    let mut out = vec![
        ("r3".to_string(), example_r3()),
        ("mu0".to_string(), example_mu0()),
    ];
    for (n, m) in [(1, 0), (1, 1), (2, 1), (2, 2), (3, 2)] {
        out.push((
            format!("lie(n={n},m={m})"),
            example_lie(n, m).expect("parameters in range"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{
        compute_h, h_properties, is_k_paracontact, nijenhuis_normality,
        validate_almost_paracontact, validate_metric,
    };

    #[test]
    fn parameter_bounds() {
        assert!(example_lie(0, 0).is_err());
        assert!(example_lie(2, 3).is_err());
        assert!(example_lie(4, 4).is_ok());
    }

    #[test]
    fn every_instance_passes_the_axiom_suite() {
        for (name, s) in test_instances() {
            let almost = validate_almost_paracontact(&s);
            assert!(almost.all_passed(), "{name}: {almost}");
            let metric = validate_metric(&s);
            assert!(metric.all_passed(), "{name}: {metric}");
            let h = compute_h(&s);
            let hp = h_properties(&s, &h);
            assert!(hp.all_passed(), "{name}: {hp}");
        }
    }

    #[test]
    fn lie_h_has_m_nonzero_columns() {
        for (n, m) in [(1, 0), (1, 1), (2, 1), (2, 2), (3, 3), (4, 2)] {
            let s = example_lie(n, m).unwrap();
            let h = compute_h(&s);
            let nonzero_cols = (0..s.dim())
                .filter(|&j| (0..s.dim()).any(|i| !h.get(i, j).is_zero()))
                .count();
            assert_eq!(nonzero_cols, m, "(n, m) = ({n}, {m})");
            assert_eq!(h.rank(), m);
        }
    }

    #[test]
    fn nontrivial_instances_are_not_normal() {
        for (name, s) in test_instances() {
            let k = is_k_paracontact(&s);
            let normal = nijenhuis_normality(&s)
                .check("normality_tensor")
                .unwrap()
                .passed;
            if k {
                // dimension-3 K-paracontact catalog entries are paraSasakian
                assert!(normal, "{name} should be normal");
            } else {
                assert!(!normal, "{name} should not be normal");
            }
        }
    }

    #[test]
    fn r3_brackets_match_the_stated_table() {
        let s = example_r3();
        let frame = s.frame.as_coord().unwrap();
        let coords = frame.chart().clone();
        let x = Poly::var(&coords, 0);
        use crate::frame::FrameContext;
        // [e1, e2] = 2 xi, [e1, xi] = -x e2, [e2, xi] = 0
        assert_eq!(
            frame.bracket(0, 1),
            &FieldVec::from_components(vec![
                Poly::zero(),
                Poly::zero(),
                Poly::constant(Scalar::from_int(2))
            ])
        );
        assert_eq!(
            frame.bracket(0, 2),
            &FieldVec::from_components(vec![Poly::zero(), -x, Poly::zero()])
        );
        assert!(frame.bracket(1, 2).is_zero());
    }
}

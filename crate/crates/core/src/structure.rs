//! Almost paracontact and paracontact metric structure data, axiom
//! validation, the h-tensor, and normality.
//!
//! Conventions, fixed once for the whole crate:
//!
//! - `phi` is stored as a matrix whose column `j` holds the frame components
//!   of `phi(E_j)`.
//! - `eta` is stored by its frame values `eta(E_i)`.
//! - The exterior derivative of a 1-form is
//!   `d eta(X, Y) = (X eta(Y) - Y eta(X) - eta([X, Y])) / 2`; this is the
//!   convention under which the built-in examples satisfy `Phi = d eta`
//!   exactly.
//! - `h = (L_xi phi) / 2`, expanded as `(L_xi phi)X = [xi, phi X] - phi [xi, X]`.

use num_traits::Zero;

use crate::frame::{general_bracket, FieldVec, Frame, FrameContext};
use crate::linalg::{ConstMatrix, Matrix, PolyMatrix};
use crate::{AxiomReport, Poly, Scalar, StructureError};

/// A candidate paracontact metric structure expressed in a frame.
///
/// Construction checks shapes, chart consistency, symmetry and invertibility
/// of the metric; the geometric axioms are verdicts, produced by
/// [`validate_almost_paracontact`] and [`validate_metric`].
#[derive(Clone, Debug, PartialEq)]
pub struct ParacontactData {
    pub frame: Frame,
    pub phi: PolyMatrix,
    pub xi: FieldVec,
    pub eta: Vec<Poly>,
    pub g: ConstMatrix,
}

impl ParacontactData {
    pub fn new(
        frame: Frame,
        phi: PolyMatrix,
        xi: FieldVec,
        eta: Vec<Poly>,
        g: ConstMatrix,
    ) -> Result<Self, StructureError> {
        let dim = frame.dim();
        if phi.rows() != dim || phi.cols() != dim {
            return Err(StructureError::BadShape {
                field: "phi",
                expected: format!("{dim}x{dim}"),
                got: format!("{}x{}", phi.rows(), phi.cols()),
            });
        }
        if xi.dim() != dim {
            return Err(StructureError::BadShape {
                field: "xi",
                expected: dim.to_string(),
                got: xi.dim().to_string(),
            });
        }
        if eta.len() != dim {
            return Err(StructureError::BadShape {
                field: "eta",
                expected: dim.to_string(),
                got: eta.len().to_string(),
            });
        }
        if g.rows() != dim || g.cols() != dim {
            return Err(StructureError::BadShape {
                field: "g",
                expected: format!("{dim}x{dim}"),
                got: format!("{}x{}", g.rows(), g.cols()),
            });
        }
        if let Some((i, j)) = g.symmetry_defect() {
            return Err(StructureError::MetricNotSymmetric(i, j));
        }
        if g.inverse().is_none() {
            return Err(StructureError::MetricSingular);
        }
        let chart = frame.chart().clone();
        let conform = |p: &Poly, field: &'static str| -> Result<Poly, StructureError> {
            if p.vars().is_empty() || p.vars() == &chart {
                Ok(p.clone())
            } else {
                Err(StructureError::ForeignVariables { field })
            }
        };
        let phi = {
            let mut out = phi.clone();
            for i in 0..dim {
                for j in 0..dim {
                    out.set(i, j, conform(phi.get(i, j), "phi")?);
                }
            }
            out
        };
        let xi = FieldVec::from_components(
            xi.components
                .iter()
                .map(|p| conform(p, "xi"))
                .collect::<Result<_, _>>()?,
        );
        let eta = eta
            .iter()
            .map(|p| conform(p, "eta"))
            .collect::<Result<_, _>>()?;
        Ok(ParacontactData {
            frame,
            phi,
            xi,
            eta,
            g,
        })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// `n` with `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    /// Frame components of `phi(E_j)`.
    pub fn phi_col(&self, j: usize) -> FieldVec {
        FieldVec::from_components(self.phi.col(j))
    }

    /// `phi` applied to a frame-component field.
    pub fn phi_apply(&self, v: &FieldVec) -> FieldVec {
        apply_matrix(&self.phi, v)
    }

    /// `eta(v)` for a frame-component field.
    pub fn eta_of(&self, v: &FieldVec) -> Poly {
        let mut acc = Poly::zero();
        for (e, c) in self.eta.iter().zip(&v.components) {
            acc = &acc + &(e * c);
        }
        acc
    }

    /// `g(u, v)` for frame-component fields; polynomial since the metric is
    /// constant in the frame but the components need not be.
    pub fn g_pair(&self, u: &FieldVec, v: &FieldVec) -> Poly {
        let dim = self.dim();
        let mut acc = Poly::zero();
        for i in 0..dim {
            if u.components[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if v.components[j].is_zero() || self.g.get(i, j).is_zero() {
                    continue;
                }
                acc = &acc
                    + &(&u.components[i] * &v.components[j]).scale(self.g.get(i, j));
            }
        }
        acc
    }

    /// `d eta(E_i, E_j)` under the crate convention (see module docs).
    pub fn d_eta(&self, i: usize, j: usize) -> Poly {
        let x_eta = self.frame.derive(i, &self.eta[j]);
        let y_eta = self.frame.derive(j, &self.eta[i]);
        let on_bracket = self.eta_of(self.frame.bracket(i, j));
        (&(&x_eta - &y_eta) - &on_bracket).scale(&Scalar::from_ratio(1, 2))
    }

    /// `I - eta (x) xi` as a polynomial matrix.
    fn projector(&self) -> PolyMatrix {
        let dim = self.dim();
        Matrix::from_fn(dim, dim, |i, j| {
            let mut entry = -(&self.eta[j] * &self.xi.components[i]);
            if i == j {
                entry = &entry + &Poly::one();
            }
            entry
        })
    }
}

/// Applies a matrix (column convention) to a frame-component field.
pub fn apply_matrix(m: &PolyMatrix, v: &FieldVec) -> FieldVec {
    let dim = v.dim();
    assert_eq!(m.cols(), dim, "dimension mismatch");
    let mut out = FieldVec::zero(m.rows());
    for j in 0..dim {
        if v.components[j].is_zero() {
            continue;
        }
        out = out.add(&FieldVec::from_components(m.col(j)).scale(&v.components[j]));
    }
    out
}

/// Renders the first nonzero entry of a residual matrix, or `None` if zero.
fn matrix_witness(residual: &PolyMatrix, names: &[String]) -> Option<String> {
    residual
        .first_nonzero()
        .map(|(i, j, p)| format!("entry ({}, {}) = {}", names[i], names[j], p))
}

fn vector_witness(residual: &FieldVec, names: &[String]) -> Option<String> {
    if residual.is_zero() {
        None
    } else {
        Some(residual.display(names))
    }
}

/// Checks the almost paracontact axioms:
/// `phi^2 = I - eta (x) xi`, `eta(xi) = 1`, and that the +1 and -1
/// eigendistributions of `phi` on `ker eta` both have dimension `n`
/// (equivalently, `phi -/+ I` both have rank `n + 1` over the fraction field).
pub fn validate_almost_paracontact(s: &ParacontactData) -> AxiomReport {
    let names = s.frame.names().to_vec();
    let mut report = AxiomReport::new("almost paracontact axioms");
    let dim = s.dim();
    let n = s.n();

    let residual = s.phi.mul(&s.phi).sub(&s.projector());
    report.record("phi_squared", matrix_witness(&residual, &names));

    let residual = &s.eta_of(&s.xi) - &Poly::one();
    report.record(
        "eta_xi",
        (!residual.is_zero()).then(|| format!("eta(xi) - 1 = {residual}")),
    );

    let identity = PolyMatrix::identity_in(dim, s.frame.chart());
    let plus = s.phi.sub(&identity).rank();
    let minus = s.phi.add(&identity).rank();
    let expected = n + 1;
    let ok = plus == expected && minus == expected;
    report.record(
        "eigendistributions",
        (!ok).then(|| {
            format!(
                "dim D+ = {}, dim D- = {}, expected {} each",
                dim - plus,
                dim - minus,
                n
            )
        }),
    );
    report
}

/// Checks the metric axioms: compatibility
/// `g(phi X, phi Y) = -g(X, Y) + eta(X) eta(Y)`, the paracontact condition
/// `d eta(E_i, E_j) = g(E_i, phi E_j)`, and signature `(n + 1, n)`.
pub fn validate_metric(s: &ParacontactData) -> AxiomReport {
    let names = s.frame.names().to_vec();
    let mut report = AxiomReport::new("paracontact metric axioms");
    let dim = s.dim();
    let n = s.n();

    let g_poly = s.g.to_poly();
    let lhs = s.phi.transpose().mul(&g_poly).mul(&s.phi);
    let eta_sq = Matrix::from_fn(dim, dim, |i, j| &s.eta[i] * &s.eta[j]);
    let residual = lhs.add(&g_poly).sub(&eta_sq);
    report.record("metric_compatibility", matrix_witness(&residual, &names));

    let g_phi = g_poly.mul(&s.phi);
    let mut witness = None;
    'outer: for i in 0..dim {
        for j in 0..dim {
            let residual = &s.d_eta(i, j) - g_phi.get(i, j);
            if !residual.is_zero() {
                witness = Some(format!(
                    "d eta({}, {}) - g({}, phi {}) = {}",
                    names[i], names[j], names[i], names[j], residual
                ));
                break 'outer;
            }
        }
    }
    report.record("d_eta_matches_metric", witness);

    match s.g.signature() {
        Ok(sig) => report.record(
            "signature",
            (sig != (n + 1, n, 0)).then(|| {
                format!("signature {sig:?}, expected ({}, {}, 0)", n + 1, n)
            }),
        ),
        Err(e) => report.fail("signature", e.to_string()),
    }
    report
}

/// The tensor `h = (L_xi phi) / 2` as a matrix in the frame.
pub fn compute_h(s: &ParacontactData) -> PolyMatrix {
    let dim = s.dim();
    let half = Scalar::from_ratio(1, 2);
    let mut h = PolyMatrix::zeroes(dim, dim);
    for j in 0..dim {
        let ej = FieldVec::unit(dim, j);
        let lie_phi = general_bracket(&s.frame, &s.xi, &s.phi_col(j))
            .sub(&s.phi_apply(&general_bracket(&s.frame, &s.xi, &ej)));
        for i in 0..dim {
            h.set(i, j, lie_phi.components[i].scale(&half));
        }
    }
    h
}

/// Checks the identities `g(hX, Y) = g(X, hY)`, `h phi = -phi h`, `h xi = 0`
/// and `tr h = 0`, all as exact polynomial identities.
pub fn h_properties(s: &ParacontactData, h: &PolyMatrix) -> AxiomReport {
    let names = s.frame.names().to_vec();
    let mut report = AxiomReport::new("h-tensor identities");
    let g_poly = s.g.to_poly();

    let residual = g_poly.mul(h).sub(&h.transpose().mul(&g_poly));
    report.record("h_symmetric_wrt_g", matrix_witness(&residual, &names));

    let residual = h.mul(&s.phi).add(&s.phi.mul(h));
    report.record("h_phi_anticommute", matrix_witness(&residual, &names));

    let h_xi = apply_matrix(h, &s.xi);
    report.record("h_xi_zero", vector_witness(&h_xi, &names));

    let trace = h.trace();
    report.record(
        "h_traceless",
        (!trace.is_zero()).then(|| format!("tr h = {trace}")),
    );
    report
}

/// Evaluates the normality tensor `[phi, phi] - 2 d eta (x) xi` on all frame
/// pairs. The structure is normal iff every value vanishes; paraSasakian
/// means normal plus the paracontact metric axioms.
pub fn nijenhuis_normality(s: &ParacontactData) -> AxiomReport {
    let names = s.frame.names().to_vec();
    let mut report = AxiomReport::new("normality");
    let dim = s.dim();
    let mut witness = None;
    'outer: for i in 0..dim {
        for j in (i + 1)..dim {
            let ei = FieldVec::unit(dim, i);
            let ej = FieldVec::unit(dim, j);
            let phi_ei = s.phi_col(i);
            let phi_ej = s.phi_col(j);
            let mut value = s.phi_apply(&s.phi_apply(s.frame.bracket(i, j)));
            value = value.add(&general_bracket(&s.frame, &phi_ei, &phi_ej));
            value = value.sub(&s.phi_apply(&general_bracket(&s.frame, &phi_ei, &ej)));
            value = value.sub(&s.phi_apply(&general_bracket(&s.frame, &ei, &phi_ej)));
            value = value.sub(&s.xi.scale(&s.d_eta(i, j).scale(&Scalar::from_int(2))));
            if !value.is_zero() {
                witness = Some(format!(
                    "N({}, {}) = {}",
                    names[i],
                    names[j],
                    value.display(&names)
                ));
                break 'outer;
            }
        }
    }
    let normal = witness.is_none();
    report.record("normality_tensor", witness);
    let axioms =
        validate_almost_paracontact(s).all_passed() && validate_metric(s).all_passed();
    report.record(
        "parasasakian",
        (!(normal && axioms)).then(|| {
            if axioms {
                "structure is not normal".to_string()
            } else {
                "structure axioms fail".to_string()
            }
        }),
    );
    report
}

/// True iff `h = 0`, i.e. the Reeb field is Killing.
pub fn is_k_paracontact(s: &ParacontactData) -> bool {
    compute_h(s).is_zero_matrix()
}

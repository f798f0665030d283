//! Moving frames presented abstractly: a bracket table plus a directional
//! derivative, with two backends.
//!
//! [`LieFrame`] is a left-invariant frame on a Lie group, given by structure
//! constants; the Jacobi identity is verified at construction and constants
//! are the only admissible functions. [`CoordFrame`] is a global frame on a
//! polynomial chart; the frame matrix must have constant nonzero determinant
//! so that every change of basis stays polynomial.

use std::fmt;
use std::sync::Arc;

use crate::linalg::{Matrix, PolyMatrix};
use crate::{FrameError, Poly, Scalar};

/// A vector field as components relative to a basis (frame basis unless a
/// function says otherwise).
#[derive(Clone, Debug, PartialEq)]
pub struct FieldVec {
    pub components: Vec<Poly>,
}

impl FieldVec {
    pub fn zero(dim: usize) -> Self {
        FieldVec {
            components: vec![Poly::zero(); dim],
        }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.components[i] = Poly::one();
        v
    }

    pub fn from_components(components: Vec<Poly>) -> Self {
        FieldVec { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, rhs: &FieldVec) -> FieldVec {
        assert_eq!(self.dim(), rhs.dim());
        FieldVec {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &FieldVec) -> FieldVec {
        assert_eq!(self.dim(), rhs.dim());
        FieldVec {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldVec {
        FieldVec {
            components: self.components.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> FieldVec {
        FieldVec {
            components: self.components.iter().map(|a| a * f).collect(),
        }
    }

    pub fn scale_scalar(&self, c: &Scalar) -> FieldVec {
        FieldVec {
            components: self.components.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Renders as a combination of named basis vectors, e.g. `2*x*e2 - xi`.
    pub fn display(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (c, name) in self.components.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            if cs == "1" {
                parts.push(format!("+ {name}"));
            } else if cs == "-1" {
                parts.push(format!("- {name}"));
            } else if c.num_terms() == 1 && !cs.contains(" + ") && !cs.contains(" - ") {
                if let Some(stripped) = cs.strip_prefix('-') {
                    parts.push(format!("- {stripped}*{name}"));
                } else {
                    parts.push(format!("+ {cs}*{name}"));
                }
            } else {
                // print each term of the coefficient separately; the grammar
                // has no parentheses
                for piece in split_terms(&cs) {
                    if let Some(stripped) = piece.strip_prefix('-') {
                        parts.push(format!("- {stripped}*{name}"));
                    } else {
                        parts.push(format!("+ {piece}*{name}"));
                    }
                }
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let joined = parts.join(" ");
        joined
            .strip_prefix("+ ")
            .map(str::to_string)
            .unwrap_or_else(|| {
                if let Some(rest) = joined.strip_prefix("- ") {
                    format!("-{rest}")
                } else {
                    joined
                }
            })
    }
}

/// Split a rendered polynomial back into signed term strings.
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = s;
    let mut sign = "";
    if let Some(r) = rest.strip_prefix('-') {
        sign = "-";
        rest = r;
    }
    loop {
        if let Some(plus) = rest.find(" + ").map(|i| (i, "")) {
            let minus = rest.find(" - ").map(|i| (i, "-"));
            let (idx, next_sign) = match minus {
                Some((mi, ms)) if mi < plus.0 => (mi, ms),
                _ => plus,
            };
            out.push(format!("{sign}{}", &rest[..idx]));
            sign = next_sign;
            rest = &rest[idx + 3..];
        } else if let Some((idx, next_sign)) = rest.find(" - ").map(|i| (i, "-")) {
            out.push(format!("{sign}{}", &rest[..idx]));
            sign = next_sign;
            rest = &rest[idx + 3..];
        } else {
            out.push(format!("{sign}{rest}"));
            return out;
        }
    }
}

/// Abstract presentation of a manifold-with-frame: dimension, bracket table,
/// and directional derivatives along frame fields.
pub trait FrameContext {
    fn dim(&self) -> usize;

    /// Frame member names, used for rendering.
    fn names(&self) -> &[String];

    /// Chart variables; empty for an abstract Lie frame.
    fn chart(&self) -> &Arc<Vec<String>>;

    /// `[E_i, E_j]` in frame components.
    fn bracket(&self, i: usize, j: usize) -> &FieldVec;

    /// Directional derivative `E_i f`.
    fn derive(&self, i: usize, f: &Poly) -> Poly;
}

// ---- Lie-algebra backend ----

/// Left-invariant frame given by structure constants `[E_i, E_j] = c^k_ij E_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieFrame {
    names: Vec<String>,
    chart: Arc<Vec<String>>,
    table: Vec<FieldVec>, // row-major dim x dim
}

impl LieFrame {
    /// Builds the antisymmetric bracket table from the listed entries
    /// (unlisted pairs are zero) and verifies the Jacobi identity exactly.
    pub fn new(
        names: Vec<String>,
        entries: &[(usize, usize, Vec<Scalar>)],
    ) -> Result<Self, FrameError> {
        let dim = names.len();
        if dim < 3 || dim % 2 == 0 {
            return Err(FrameError::BadDimension(dim));
        }
        let mut table = vec![FieldVec::zero(dim); dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, coeffs) in entries {
            let (i, j) = (*i, *j);
            if coeffs.len() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    got: coeffs.len(),
                });
            }
            let v = FieldVec::from_components(
                coeffs.iter().map(|c| Poly::constant(c.clone())).collect(),
            );
            if i == j {
                if !v.is_zero() {
                    return Err(FrameError::NotAntisymmetric {
                        a: names[i].clone(),
                        b: names[j].clone(),
                    });
                }
                continue;
            }
            let neg = v.neg();
            for (a, b, val) in [(i, j, v), (j, i, neg)] {
                let slot = a * dim + b;
                if seen[slot] && table[slot] != val {
                    return Err(FrameError::NotAntisymmetric {
                        a: names[i].clone(),
                        b: names[j].clone(),
                    });
                }
                seen[slot] = true;
                table[slot] = val;
            }
        }
        let frame = LieFrame {
            names,
            chart: Arc::new(Vec::new()),
            table,
        };
        frame.check_jacobi()?;
        Ok(frame)
    }

    fn check_jacobi(&self) -> Result<(), FrameError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let mut sum = FieldVec::zero(dim);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        sum = sum.add(&self.bracket_of(&self.bracket(a, b).clone(), c));
                    }
                    if !sum.is_zero() {
                        return Err(FrameError::JacobiFailure {
                            a: self.names[i].clone(),
                            b: self.names[j].clone(),
                            c: self.names[k].clone(),
                            residual: sum.display(&self.names),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[v, E_k]` for a constant-coefficient `v`.
    fn bracket_of(&self, v: &FieldVec, k: usize) -> FieldVec {
        let dim = self.dim();
        let mut out = FieldVec::zero(dim);
        for l in 0..dim {
            if v.components[l].is_zero() {
                continue;
            }
            out = out.add(&self.bracket(l, k).scale(&v.components[l]));
        }
        out
    }
}

impl FrameContext for LieFrame {
    fn dim(&self) -> usize {
        self.names.len()
    }

    fn names(&self) -> &[String] {
        &self.names
    }

    fn chart(&self) -> &Arc<Vec<String>> {
        &self.chart
    }

    fn bracket(&self, i: usize, j: usize) -> &FieldVec {
        &self.table[i * self.dim() + j]
    }

    fn derive(&self, _i: usize, f: &Poly) -> Poly {
        if f.is_constant() {
            return Poly::zero();
        }
        // Left-invariant data has no chart to differentiate in; nonconstant
        // coefficients cannot legally reach a Lie frame.
        panic!("{}", FrameError::NoChart(f.to_string()));
    }
}

// ---- Coordinate-chart backend ----

/// Global frame on a polynomial chart, `E_i = sum_k F[i][k] d/dx_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordFrame {
    names: Vec<String>,
    chart: Arc<Vec<String>>,
    fields: Vec<FieldVec>,         // coordinate components
    frame_matrix: PolyMatrix,      // F[i][k]
    inverse_matrix: PolyMatrix,    // G = F^{-1}
    brackets: Vec<FieldVec>,       // frame components, row-major dim x dim
}

impl CoordFrame {
    pub fn new(
        coords: Vec<String>,
        names: Vec<String>,
        fields: Vec<FieldVec>,
    ) -> Result<Self, FrameError> {
        let dim = names.len();
        if dim < 3 || dim % 2 == 0 {
            return Err(FrameError::BadDimension(dim));
        }
        if coords.len() != dim || fields.len() != dim {
            return Err(FrameError::ChartMismatch {
                coords: coords.len(),
                fields: fields.len(),
            });
        }
        for f in &fields {
            if f.dim() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
        }
        let chart = Arc::new(coords);
        let frame_matrix = Matrix::from_fn(dim, dim, |i, k| fields[i].components[k].clone());
        let (inverse_matrix, _det) =
            frame_matrix
                .inverse_const_det()
                .map_err(|_| FrameError::NonConstantDeterminant {
                    det: frame_matrix.det().to_string(),
                })?;
        let mut frame = CoordFrame {
            names,
            chart,
            fields,
            frame_matrix,
            inverse_matrix,
            brackets: Vec::new(),
        };
        let mut brackets = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let coord = coord_bracket(&frame.fields[i], &frame.fields[j], &frame.chart)?;
                brackets.push(frame.to_frame_components(&coord));
            }
        }
        frame.brackets = brackets;
        Ok(frame)
    }

    /// Frame fields in coordinate components.
    pub fn fields(&self) -> &[FieldVec] {
        &self.fields
    }

    pub fn frame_matrix(&self) -> &PolyMatrix {
        &self.frame_matrix
    }

    /// Change of basis from coordinate components to frame components;
    /// exact because the frame matrix has constant determinant.
    pub fn to_frame_components(&self, v: &FieldVec) -> FieldVec {
        let dim = self.dim();
        assert_eq!(v.dim(), dim, "dimension mismatch");
        let mut out = FieldVec::zero(dim);
        for i in 0..dim {
            let mut acc = Poly::zero();
            for k in 0..dim {
                acc = &acc + &(&v.components[k] * self.inverse_matrix.get(k, i));
            }
            out.components[i] = acc;
        }
        out
    }

    /// Frame components back to coordinate components.
    pub fn to_coord_components(&self, v: &FieldVec) -> FieldVec {
        let dim = self.dim();
        assert_eq!(v.dim(), dim, "dimension mismatch");
        let mut out = FieldVec::zero(dim);
        for k in 0..dim {
            let mut acc = Poly::zero();
            for i in 0..dim {
                acc = &acc + &(&v.components[i] * self.frame_matrix.get(i, k));
            }
            out.components[k] = acc;
        }
        out
    }

    /// Pairs a coordinate 1-form (components on dx_k) with frame vectors,
    /// returning the frame components of the covector.
    pub fn covector_to_frame(&self, omega: &[Poly]) -> Vec<Poly> {
        let dim = self.dim();
        assert_eq!(omega.len(), dim, "dimension mismatch");
        (0..dim)
            .map(|i| {
                let mut acc = Poly::zero();
                for k in 0..dim {
                    acc = &acc + &(self.frame_matrix.get(i, k) * &omega[k]);
                }
                acc
            })
            .collect()
    }

    /// Frame components of a covector back to coordinate 1-form components.
    pub fn covector_to_coords(&self, eta: &[Poly]) -> Vec<Poly> {
        let dim = self.dim();
        assert_eq!(eta.len(), dim, "dimension mismatch");
        (0..dim)
            .map(|k| {
                let mut acc = Poly::zero();
                for i in 0..dim {
                    acc = &acc + &(self.inverse_matrix.get(k, i) * &eta[i]);
                }
                acc
            })
            .collect()
    }
}

impl FrameContext for CoordFrame {
    fn dim(&self) -> usize {
        self.names.len()
    }

    fn names(&self) -> &[String] {
        &self.names
    }

    fn chart(&self) -> &Arc<Vec<String>> {
        &self.chart
    }

    fn bracket(&self, i: usize, j: usize) -> &FieldVec {
        &self.brackets[i * self.dim() + j]
    }

    fn derive(&self, i: usize, f: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for k in 0..self.dim() {
            let df = f.derive_index_in(k, &self.chart);
            if df.is_zero() {
                continue;
            }
            acc = &acc + &(self.frame_matrix.get(i, k) * &df);
        }
        acc
    }
}

impl Poly {
    /// Derivative by chart index, accepting constants from the empty chart.
    fn derive_index_in(&self, index: usize, chart: &Arc<Vec<String>>) -> Poly {
        if self.vars().is_empty() {
            return Poly::zero();
        }
        debug_assert_eq!(self.vars().as_slice(), chart.as_slice());
        self.derive_index(index)
    }
}

/// Lie bracket of two vector fields given in coordinate components:
/// `[U, V]^k = U(V^k) - V(U^k)`.
pub fn coord_bracket(
    u: &FieldVec,
    v: &FieldVec,
    coords: &Arc<Vec<String>>,
) -> Result<FieldVec, FrameError> {
    let dim = coords.len();
    if u.dim() != dim || v.dim() != dim {
        return Err(FrameError::DimensionMismatch {
            expected: dim,
            got: if u.dim() != dim { u.dim() } else { v.dim() },
        });
    }
    let mut out = FieldVec::zero(dim);
    for k in 0..dim {
        let mut acc = Poly::zero();
        for l in 0..dim {
            let dv = v.components[k].derive_index_in(l, coords);
            if !dv.is_zero() {
                acc = &acc + &(&u.components[l] * &dv);
            }
            let du = u.components[k].derive_index_in(l, coords);
            if !du.is_zero() {
                acc = &acc - &(&v.components[l] * &du);
            }
        }
        out.components[k] = acc;
    }
    Ok(out)
}

/// Lie bracket of frame-component fields with polynomial coefficients:
/// `[f E_i, g E_j] = f g [E_i, E_j] + f (E_i g) E_j - g (E_j f) E_i`.
pub fn general_bracket<C: FrameContext + ?Sized>(
    ctx: &C,
    u: &FieldVec,
    v: &FieldVec,
) -> FieldVec {
    let dim = ctx.dim();
    assert_eq!(u.dim(), dim, "dimension mismatch");
    assert_eq!(v.dim(), dim, "dimension mismatch");
    let mut out = FieldVec::zero(dim);
    for i in 0..dim {
        let fi = &u.components[i];
        if fi.is_zero() {
            continue;
        }
        for j in 0..dim {
            let gj = &v.components[j];
            if !gj.is_zero() {
                out = out.add(&ctx.bracket(i, j).scale(&(fi * gj)));
                let d = ctx.derive(i, gj);
                if !d.is_zero() {
                    out.components[j] = &out.components[j] + &(fi * &d);
                }
            }
        }
    }
    for j in 0..dim {
        let gj = &v.components[j];
        if gj.is_zero() {
            continue;
        }
        for i in 0..dim {
            let d = ctx.derive(j, &u.components[i]);
            if !d.is_zero() {
                out.components[i] = &out.components[i] - &(gj * &d);
            }
        }
    }
    out
}

/// The two frame backends behind one value type.
#[derive(Clone, Debug, PartialEq)]
pub enum Frame {
    Lie(LieFrame),
    Coord(CoordFrame),
}

impl Frame {
    pub fn as_coord(&self) -> Option<&CoordFrame> {
        match self {
            Frame::Coord(c) => Some(c),
            Frame::Lie(_) => None,
        }
    }

    pub fn is_lie(&self) -> bool {
        matches!(self, Frame::Lie(_))
    }
}

impl FrameContext for Frame {
    fn dim(&self) -> usize {
        match self {
            Frame::Lie(f) => f.dim(),
            Frame::Coord(f) => f.dim(),
        }
    }

    fn names(&self) -> &[String] {
        match self {
            Frame::Lie(f) => f.names(),
            Frame::Coord(f) => f.names(),
        }
    }

    fn chart(&self) -> &Arc<Vec<String>> {
        match self {
            Frame::Lie(f) => f.chart(),
            Frame::Coord(f) => f.chart(),
        }
    }

    fn bracket(&self, i: usize, j: usize) -> &FieldVec {
        match self {
            Frame::Lie(f) => f.bracket(i, j),
            Frame::Coord(f) => f.bracket(i, j),
        }
    }

    fn derive(&self, i: usize, f: &Poly) -> Poly {
        match self {
            Frame::Lie(fr) => fr.derive(i, f),
            Frame::Coord(fr) => fr.derive(i, f),
        }
    }
}

impl fmt::Display for FieldVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

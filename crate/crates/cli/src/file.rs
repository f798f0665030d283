//! The structure-file format: a self-contained text description of a
//! paracontact metric structure, with positioned diagnostics and a canonical
//! emitter that round-trips exactly.
//!
//! ```text
//! # Lie-algebra mode                    # coordinates mode
//! mode = lie_algebra                    mode = coordinates
//! radical = 2                           radical = 2
//! dim = 3                               dim = 3
//! frame = xi, X, Y                      coords = x, y, z
//!                                       frame = e1, e2, xi
//! [xi, X] = X + Y
//! [X, Y] = 2*xi                         field e1 = d_x + x*z*d_y - 2*y*d_z
//!                                       field e2 = d_y
//! phi X = X                             field xi = d_z
//! phi Y = -Y
//!                                       phi e1 = e1
//! xi = xi                               phi e2 = -e2
//! eta xi = 1
//!                                       xi = d_z
//! g(xi, xi) = 1                         eta = 2*y*dx + dz
//! g(X, Y) = 1
//!                                       g(e1, e2) = 1
//!                                       g(xi, xi) = 1
//! ```
//!
//! Vector fields use `d_<coord>` for coordinate vector fields and 1-forms use
//! `d<coord>` for coordinate differentials. Unlisted brackets, `phi` columns,
//! `eta` values and metric entries are zero. Expressions follow the scalar
//! grammar: integers, `a/b` rationals, `sqrtD`, variables, `+ - * ^`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use paracontact_core::frame::{CoordFrame, FieldVec, Frame, FrameContext, LieFrame};
use paracontact_core::linalg::{ConstMatrix, PolyMatrix};
use paracontact_core::parse::{tokenize, Expr, ExprParser, ParseError, Token, TokenKind};
use paracontact_core::{ParacontactData, Poly, Scalar, DEFAULT_RADICAND};

/// A diagnostic anchored at a 1-based line and column of the input.
#[derive(Debug, Clone)]
pub struct FileError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl FileError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        FileError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn from_parse(line: usize, err: ParseError) -> Self {
        FileError::new(line, err.pos + 1, err.msg)
    }

    fn semantic(msg: impl Into<String>) -> Self {
        FileError::new(0, 0, msg)
    }
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "{}:{}: {}", self.line, self.col, self.msg)
        }
    }
}

impl std::error::Error for FileError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    LieAlgebra,
    Coordinates,
}

/// Parsed but not yet semantically assembled structure file.
#[derive(Debug, Clone)]
pub struct StructureFile {
    pub mode: Mode,
    pub radicand: u32,
    pub dim: Option<usize>,
    pub frame_names: Vec<String>,
    pub coords: Vec<String>,
    brackets: Vec<(usize, String, String, Expr)>,
    fields: Vec<(usize, String, Expr)>,
    phi_cols: Vec<(usize, String, Expr)>,
    xi: Option<(usize, Expr)>,
    eta_expr: Option<(usize, Expr)>,
    eta_values: Vec<(usize, String, Expr)>,
    metric: Vec<(usize, String, String, Expr)>,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<Token>,
}

fn ident(tok: &Token) -> Option<&str> {
    match &tok.kind {
        TokenKind::Ident(s) => Some(s),
        _ => None,
    }
}

/// Splits the source into comment-stripped, tokenized logical lines.
fn logical_lines(text: &str) -> Result<Vec<Line<'_>>, FileError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let tokens =
            tokenize(content).map_err(|e| FileError::from_parse(number, e))?;
        out.push(Line {
            number,
            text: content,
            tokens,
        });
    }
    Ok(out)
}

struct LineParser<'a> {
    line: &'a Line<'a>,
    pos: usize,
}

impl<'a> LineParser<'a> {
    fn new(line: &'a Line<'a>) -> Self {
        LineParser { line, pos: 0 }
    }

    fn err(&self, col0: usize, msg: impl Into<String>) -> FileError {
        FileError::new(self.line.number, col0 + 1, msg)
    }

    fn peek(&self) -> Option<&Token> {
        self.line.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.line.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.line.text.len(), |t| t.start)
    }

    fn expect_kind(&mut self, kind: TokenKind, what: &str) -> Result<(), FileError> {
        let here = self.here();
        match self.bump() {
            Some(t) if t.kind == kind => Ok(()),
            Some(t) => Err(FileError::new(
                self.line.number,
                t.start + 1,
                format!("expected {what}"),
            )),
            None => Err(FileError::new(
                self.line.number,
                here + 1,
                format!("expected {what}"),
            )),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize), FileError> {
        let here = self.here();
        match self.bump() {
            Some(t) => match &t.kind {
                TokenKind::Ident(s) => Ok((s.clone(), t.start)),
                _ => Err(FileError::new(
                    self.line.number,
                    t.start + 1,
                    format!("expected {what}"),
                )),
            },
            None => Err(FileError::new(
                self.line.number,
                here + 1,
                format!("expected {what}"),
            )),
        }
    }

    fn expect_usize(&mut self, what: &str) -> Result<usize, FileError> {
        let here = self.here();
        match self.bump() {
            Some(t) => match &t.kind {
                TokenKind::Int(n) => n.try_into().map_err(|_| {
                    FileError::new(self.line.number, t.start + 1, "value out of range")
                }),
                _ => Err(FileError::new(
                    self.line.number,
                    t.start + 1,
                    format!("expected {what}"),
                )),
            },
            None => Err(FileError::new(
                self.line.number,
                here + 1,
                format!("expected {what}"),
            )),
        }
    }

    /// Comma-separated identifier list to end of line.
    fn name_list(&mut self) -> Result<Vec<String>, FileError> {
        let mut names = Vec::new();
        loop {
            let (name, _) = self.expect_ident("a name")?;
            if names.contains(&name) {
                return Err(self.err(0, format!("duplicate name `{name}`")));
            }
            names.push(name);
            match self.peek() {
                None => return Ok(names),
                Some(t) if t.kind == TokenKind::Comma => {
                    self.bump();
                }
                Some(t) => {
                    return Err(FileError::new(
                        self.line.number,
                        t.start + 1,
                        "expected `,` or end of line",
                    ))
                }
            }
        }
    }

    /// Parses the rest of the line as one expression.
    fn rest_as_expr(&mut self) -> Result<Expr, FileError> {
        let tokens = &self.line.tokens[self.pos..];
        let mut parser = ExprParser::new(tokens, self.line.text.len());
        if parser.at_end() {
            return Err(self.err(self.here(), "expected an expression"));
        }
        let expr = parser
            .parse_expr()
            .map_err(|e| FileError::from_parse(self.line.number, e))?;
        parser
            .expect_end()
            .map_err(|e| FileError::from_parse(self.line.number, e))?;
        self.pos = self.line.tokens.len();
        Ok(expr)
    }
}

/// Parses the text into a [`StructureFile`] without semantic assembly.
pub fn parse_structure(text: &str) -> Result<StructureFile, FileError> {
    let lines = logical_lines(text)?;

    let mut mode = None;
    let mut radicand = None;
    let mut dim = None;
    let mut frame_names: Option<Vec<String>> = None;
    let mut coords: Option<Vec<String>> = None;

    // header pass: mode/radical/dim/frame/coords may appear anywhere
    for line in &lines {
        let mut p = LineParser::new(line);
        let Some(first) = line.tokens.first() else { continue };
        let Some(key) = ident(first) else { continue };
        match key {
            "mode" => {
                p.bump();
                p.expect_kind(TokenKind::Eq, "`=`")?;
                let (value, at) = p.expect_ident("`lie_algebra` or `coordinates`")?;
                let parsed = match value.as_str() {
                    "lie_algebra" => Mode::LieAlgebra,
                    "coordinates" => Mode::Coordinates,
                    other => {
                        return Err(p.err(at, format!("unknown mode `{other}`")));
                    }
                };
                if mode.replace(parsed).is_some() {
                    return Err(p.err(first.start, "duplicate `mode`"));
                }
            }
            "radical" => {
                p.bump();
                p.expect_kind(TokenKind::Eq, "`=`")?;
                let at = p.here();
                let value = p.expect_usize("a radicand")? as u32;
                Scalar::sqrt(value).map_err(|e| p.err(at, e.to_string()))?;
                if radicand.replace(value).is_some() {
                    return Err(p.err(first.start, "duplicate `radical`"));
                }
            }
            "dim" => {
                p.bump();
                p.expect_kind(TokenKind::Eq, "`=`")?;
                let value = p.expect_usize("a dimension")?;
                if dim.replace(value).is_some() {
                    return Err(p.err(first.start, "duplicate `dim`"));
                }
            }
            "frame" => {
                p.bump();
                p.expect_kind(TokenKind::Eq, "`=`")?;
                if frame_names.replace(p.name_list()?).is_some() {
                    return Err(p.err(first.start, "duplicate `frame`"));
                }
            }
            "coords" => {
                p.bump();
                p.expect_kind(TokenKind::Eq, "`=`")?;
                if coords.replace(p.name_list()?).is_some() {
                    return Err(p.err(first.start, "duplicate `coords`"));
                }
            }
            _ => continue,
        }
    }

    let mode = mode.ok_or_else(|| FileError::semantic("missing `mode = ...` line"))?;
    let frame_names =
        frame_names.ok_or_else(|| FileError::semantic("missing `frame = ...` line"))?;
    let coords = coords.unwrap_or_default();
    if mode == Mode::Coordinates && coords.is_empty() {
        return Err(FileError::semantic(
            "coordinates mode requires a `coords = ...` line",
        ));
    }
    if mode == Mode::LieAlgebra && !coords.is_empty() {
        return Err(FileError::semantic(
            "lie_algebra mode does not take a `coords` line",
        ));
    }

    let mut file = StructureFile {
        mode,
        radicand: radicand.unwrap_or(DEFAULT_RADICAND),
        dim,
        frame_names,
        coords,
        brackets: Vec::new(),
        fields: Vec::new(),
        phi_cols: Vec::new(),
        xi: None,
        eta_expr: None,
        eta_values: Vec::new(),
        metric: Vec::new(),
    };

    // body pass
    for line in &lines {
        let mut p = LineParser::new(line);
        let first = line.tokens.first().unwrap();
        if first.kind == TokenKind::LBracket {
            p.bump();
            let (a, _) = p.expect_ident("a frame name")?;
            p.expect_kind(TokenKind::Comma, "`,`")?;
            let (b, _) = p.expect_ident("a frame name")?;
            p.expect_kind(TokenKind::RBracket, "`]`")?;
            p.expect_kind(TokenKind::Eq, "`=`")?;
            let expr = p.rest_as_expr()?;
            file.brackets.push((line.number, a, b, expr));
            continue;
        }
        let Some(key) = ident(first) else {
            return Err(FileError::new(
                line.number,
                first.start + 1,
                "expected a keyword or `[`",
            ));
        };
        match key {
            "mode" | "radical" | "dim" | "frame" | "coords" => {}
            "field" => {
                p.bump();
                let (name, _) = p.expect_ident("a frame name")?;
                p.expect_kind(TokenKind::Eq, "`=`")?;
                let expr = p.rest_as_expr()?;
                file.fields.push((line.number, name, expr));
            }
            "phi" => {
                p.bump();
                let (name, _) = p.expect_ident("a frame name")?;
                p.expect_kind(TokenKind::Eq, "`=`")?;
                let expr = p.rest_as_expr()?;
                file.phi_cols.push((line.number, name, expr));
            }
            "xi" => {
                p.bump();
                p.expect_kind(TokenKind::Eq, "`=`")?;
                let expr = p.rest_as_expr()?;
                if file.xi.replace((line.number, expr)).is_some() {
                    return Err(p.err(first.start, "duplicate `xi` line"));
                }
            }
            "eta" => {
                p.bump();
                match p.peek().map(|t| t.kind.clone()) {
                    Some(TokenKind::Eq) => {
                        p.bump();
                        let expr = p.rest_as_expr()?;
                        if file.eta_expr.replace((line.number, expr)).is_some() {
                            return Err(p.err(first.start, "duplicate `eta` line"));
                        }
                    }
                    Some(TokenKind::Ident(_)) => {
                        let (name, _) = p.expect_ident("a frame name")?;
                        p.expect_kind(TokenKind::Eq, "`=`")?;
                        let expr = p.rest_as_expr()?;
                        file.eta_values.push((line.number, name, expr));
                    }
                    _ => {
                        return Err(p.err(p.here(), "expected `=` or a frame name"));
                    }
                }
            }
            "g" => {
                p.bump();
                p.expect_kind(TokenKind::LParen, "`(`")?;
                let (a, _) = p.expect_ident("a frame name")?;
                p.expect_kind(TokenKind::Comma, "`,`")?;
                let (b, _) = p.expect_ident("a frame name")?;
                p.expect_kind(TokenKind::RParen, "`)`")?;
                p.expect_kind(TokenKind::Eq, "`=`")?;
                let expr = p.rest_as_expr()?;
                file.metric.push((line.number, a, b, expr));
            }
            other => {
                return Err(FileError::new(
                    line.number,
                    first.start + 1,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    Ok(file)
}

/// Value of a vector-valued expression: a scalar part plus components over a
/// named basis.
struct VecValue {
    scalar: Poly,
    vector: Vec<Poly>,
}

fn eval_vector_expr(
    expr: &Expr,
    basis: &[String],
    vars: &Arc<Vec<String>>,
    radicand: u32,
) -> Result<VecValue, ParseError> {
    let zero = || VecValue {
        scalar: Poly::zero(),
        vector: vec![Poly::zero(); basis.len()],
    };
    match expr {
        Expr::Ident(name, pos) => {
            if let Some(k) = basis.iter().position(|b| b == name) {
                let mut v = zero();
                v.vector[k] = Poly::one();
                return Ok(v);
            }
            let scalar = paracontact_core::parse::expr_to_poly(expr, vars, radicand)?;
            let _ = pos;
            Ok(VecValue {
                scalar,
                vector: vec![Poly::zero(); basis.len()],
            })
        }
        Expr::Num(_) => Ok(VecValue {
            scalar: paracontact_core::parse::expr_to_poly(expr, vars, radicand)?,
            vector: vec![Poly::zero(); basis.len()],
        }),
        Expr::Neg(inner) => {
            let v = eval_vector_expr(inner, basis, vars, radicand)?;
            Ok(VecValue {
                scalar: -v.scalar,
                vector: v.vector.into_iter().map(|p| -p).collect(),
            })
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let lhs = eval_vector_expr(a, basis, vars, radicand)?;
            let rhs = eval_vector_expr(b, basis, vars, radicand)?;
            let combine: fn(&Poly, &Poly) -> Poly = if matches!(expr, Expr::Add(..)) {
                |x, y| x + y
            } else {
                |x, y| x - y
            };
            Ok(VecValue {
                scalar: combine(&lhs.scalar, &rhs.scalar),
                vector: lhs
                    .vector
                    .iter()
                    .zip(&rhs.vector)
                    .map(|(x, y)| combine(x, y))
                    .collect(),
            })
        }
        Expr::Mul(a, b) => {
            let lhs = eval_vector_expr(a, basis, vars, radicand)?;
            let rhs = eval_vector_expr(b, basis, vars, radicand)?;
            let lhs_vec = lhs.vector.iter().any(|p| !p.is_zero());
            let rhs_vec = rhs.vector.iter().any(|p| !p.is_zero());
            if lhs_vec && rhs_vec {
                return Err(ParseError::new(
                    expr_offset(expr),
                    "cannot multiply two basis vectors",
                ));
            }
            if lhs_vec {
                Ok(VecValue {
                    scalar: &lhs.scalar * &rhs.scalar,
                    vector: lhs.vector.iter().map(|p| p * &rhs.scalar).collect(),
                })
            } else {
                Ok(VecValue {
                    scalar: &lhs.scalar * &rhs.scalar,
                    vector: rhs.vector.iter().map(|p| p * &lhs.scalar).collect(),
                })
            }
        }
        Expr::Pow(base, _) => {
            let inner = eval_vector_expr(base, basis, vars, radicand)?;
            if inner.vector.iter().any(|p| !p.is_zero()) {
                return Err(ParseError::new(
                    expr_offset(expr),
                    "cannot raise a basis vector to a power",
                ));
            }
            Ok(VecValue {
                scalar: paracontact_core::parse::expr_to_poly(expr, vars, radicand)?,
                vector: vec![Poly::zero(); basis.len()],
            })
        }
    }
}

fn expr_offset(expr: &Expr) -> usize {
    match expr {
        Expr::Num(_) => 0,
        Expr::Ident(_, pos) => *pos,
        Expr::Pow(b, _) => expr_offset(b),
        Expr::Neg(i) => expr_offset(i),
        Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) => expr_offset(a),
    }
}

/// Strictly vector-valued (no scalar remainder).
fn as_pure_vector(
    line: usize,
    expr: &Expr,
    basis: &[String],
    vars: &Arc<Vec<String>>,
    radicand: u32,
) -> Result<Vec<Poly>, FileError> {
    let v = eval_vector_expr(expr, basis, vars, radicand)
        .map_err(|e| FileError::from_parse(line, e))?;
    if !v.scalar.is_zero() {
        return Err(FileError::new(
            line,
            expr_offset(expr) + 1,
            "expression has a scalar term where a vector is required",
        ));
    }
    Ok(v.vector)
}

fn as_pure_scalar(
    line: usize,
    expr: &Expr,
    vars: &Arc<Vec<String>>,
    radicand: u32,
) -> Result<Poly, FileError> {
    paracontact_core::parse::expr_to_poly(expr, vars, radicand)
        .map_err(|e| FileError::from_parse(line, e))
}

impl StructureFile {
    /// Assembles and validates the file into structure data.
    pub fn build(&self) -> Result<ParacontactData, FileError> {
        let dim = self.frame_names.len();
        if let Some(declared) = self.dim {
            if declared != dim {
                return Err(FileError::semantic(format!(
                    "dim = {declared} but the frame lists {dim} names"
                )));
            }
        }
        if dim < 3 || dim % 2 == 0 {
            return Err(FileError::semantic(format!(
                "frame dimension must be odd and >= 3, got {dim}"
            )));
        }
        let mut reserved: Vec<String> = self.frame_names.clone();
        reserved.extend(self.coords.iter().cloned());
        for name in &reserved {
            if paracontact_core::parse::radical_of_ident(name).is_some() {
                return Err(FileError::semantic(format!(
                    "name `{name}` collides with a radical literal"
                )));
            }
        }
        for c in &self.coords {
            if self.frame_names.contains(c) {
                return Err(FileError::semantic(format!(
                    "`{c}` is both a coordinate and a frame name"
                )));
            }
        }

        match self.mode {
            Mode::LieAlgebra => self.build_lie(),
            Mode::Coordinates => self.build_coords(),
        }
    }

    fn frame_index(&self, line: usize, name: &str) -> Result<usize, FileError> {
        self.frame_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| {
                FileError::new(line, 1, format!("`{name}` is not a frame name"))
            })
    }

    fn build_lie(&self) -> Result<ParacontactData, FileError> {
        let dim = self.frame_names.len();
        let vars: Arc<Vec<String>> = Arc::new(Vec::new());
        if !self.fields.is_empty() {
            let line = self.fields[0].0;
            return Err(FileError::new(
                line,
                1,
                "`field` lines belong to coordinates mode",
            ));
        }
        if let Some((line, _)) = &self.eta_expr {
            return Err(FileError::new(
                *line,
                1,
                "lie_algebra mode takes `eta <name> = ...` component lines",
            ));
        }

        // bracket table, with duplicate/antisymmetry conflicts caught here so
        // the diagnostic carries a position
        let mut seen: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        let mut entries = Vec::new();
        for (line, a, b, expr) in &self.brackets {
            let ia = self.frame_index(*line, a)?;
            let ib = self.frame_index(*line, b)?;
            let components =
                as_pure_vector(*line, expr, &self.frame_names, &vars, self.radicand)?;
            let mut consts = Vec::with_capacity(dim);
            for p in &components {
                consts.push(p.constant_value().ok_or_else(|| {
                    FileError::new(*line, 1, "bracket entries must be constant")
                })?);
            }
            if ia == ib && consts.iter().any(|c| !c.is_zero()) {
                return Err(FileError::new(
                    *line,
                    1,
                    format!("[{a}, {a}] must vanish"),
                ));
            }
            for (key, value) in [
                ((ia, ib), consts.clone()),
                ((ib, ia), consts.iter().map(|c| -c).collect()),
            ] {
                if let Some(prev) = seen.get(&key) {
                    if *prev != value {
                        return Err(FileError::new(
                            *line,
                            1,
                            format!(
                                "bracket [{a}, {b}] conflicts with an earlier entry \
                                 (antisymmetry c_ij = -c_ji)"
                            ),
                        ));
                    }
                } else {
                    seen.insert(key, value.clone());
                }
            }
            entries.push((ia, ib, consts));
        }
        let frame = LieFrame::new(self.frame_names.clone(), &entries)
            .map_err(|e| FileError::semantic(e.to_string()))?;

        let phi = self.assemble_phi(&vars)?;
        let xi = match &self.xi {
            Some((line, expr)) => FieldVec::from_components(as_pure_vector(
                *line,
                expr,
                &self.frame_names,
                &vars,
                self.radicand,
            )?),
            None => return Err(FileError::semantic("missing `xi = ...` line")),
        };
        let mut eta = vec![Poly::zero(); dim];
        for (line, name, expr) in &self.eta_values {
            let i = self.frame_index(*line, name)?;
            eta[i] = as_pure_scalar(*line, expr, &vars, self.radicand)?;
        }
        let g = self.assemble_metric(&vars)?;

        ParacontactData::new(Frame::Lie(frame), phi, xi, eta, g)
            .map_err(|e| FileError::semantic(e.to_string()))
    }

    fn build_coords(&self) -> Result<ParacontactData, FileError> {
        let dim = self.frame_names.len();
        let vars: Arc<Vec<String>> = Arc::new(self.coords.clone());
        if !self.brackets.is_empty() {
            let line = self.brackets[0].0;
            return Err(FileError::new(
                line,
                1,
                "bracket lines belong to lie_algebra mode; brackets are computed \
                 from the fields",
            ));
        }
        if !self.eta_values.is_empty() {
            let line = self.eta_values[0].0;
            return Err(FileError::new(
                line,
                1,
                "coordinates mode takes a single `eta = ...` 1-form line",
            ));
        }

        let d_vectors: Vec<String> = self.coords.iter().map(|c| format!("d_{c}")).collect();
        let d_forms: Vec<String> = self.coords.iter().map(|c| format!("d{c}")).collect();

        let mut fields: Vec<Option<FieldVec>> = vec![None; dim];
        for (line, name, expr) in &self.fields {
            let i = self.frame_index(*line, name)?;
            let components =
                as_pure_vector(*line, expr, &d_vectors, &vars, self.radicand)?;
            if fields[i]
                .replace(FieldVec::from_components(components))
                .is_some()
            {
                return Err(FileError::new(
                    *line,
                    1,
                    format!("duplicate `field {name}` line"),
                ));
            }
        }
        let fields: Vec<FieldVec> = fields
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                f.ok_or_else(|| {
                    FileError::semantic(format!(
                        "missing `field {} = ...` line",
                        self.frame_names[i]
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        let frame = CoordFrame::new(self.coords.clone(), self.frame_names.clone(), fields)
            .map_err(|e| FileError::semantic(e.to_string()))?;

        let phi = self.assemble_phi(&vars)?;
        let xi = match &self.xi {
            Some((line, expr)) => {
                let coord_components =
                    as_pure_vector(*line, expr, &d_vectors, &vars, self.radicand)?;
                frame.to_frame_components(&FieldVec::from_components(coord_components))
            }
            None => return Err(FileError::semantic("missing `xi = ...` line")),
        };
        let eta = match &self.eta_expr {
            Some((line, expr)) => {
                let form = as_pure_vector(*line, expr, &d_forms, &vars, self.radicand)?;
                frame.covector_to_frame(&form)
            }
            None => return Err(FileError::semantic("missing `eta = ...` line")),
        };
        let g = self.assemble_metric(&vars)?;

        ParacontactData::new(Frame::Coord(frame), phi, xi, eta, g)
            .map_err(|e| FileError::semantic(e.to_string()))
    }

    fn assemble_phi(&self, vars: &Arc<Vec<String>>) -> Result<PolyMatrix, FileError> {
        let dim = self.frame_names.len();
        let mut phi = PolyMatrix::zeroes(dim, dim);
        let mut seen = vec![false; dim];
        for (line, name, expr) in &self.phi_cols {
            let j = self.frame_index(*line, name)?;
            if seen[j] {
                return Err(FileError::new(
                    *line,
                    1,
                    format!("duplicate `phi {name}` line"),
                ));
            }
            seen[j] = true;
            let col = as_pure_vector(*line, expr, &self.frame_names, vars, self.radicand)?;
            for (i, p) in col.into_iter().enumerate() {
                phi.set(i, j, p);
            }
        }
        Ok(phi)
    }

    fn assemble_metric(&self, vars: &Arc<Vec<String>>) -> Result<ConstMatrix, FileError> {
        let dim = self.frame_names.len();
        let mut g = ConstMatrix::zeroes(dim, dim);
        let mut seen: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (line, a, b, expr) in &self.metric {
            let i = self.frame_index(*line, a)?;
            let j = self.frame_index(*line, b)?;
            let poly = as_pure_scalar(*line, expr, vars, self.radicand)?;
            let value = poly.constant_value().ok_or_else(|| {
                FileError::new(*line, 1, "metric entries must be constant in the frame")
            })?;
            for key in [(i, j), (j, i)] {
                if let Some(prev) = seen.get(&key) {
                    if *prev != value {
                        return Err(FileError::new(
                            *line,
                            1,
                            format!("g({a}, {b}) conflicts with an earlier symmetric entry"),
                        ));
                    }
                } else {
                    seen.insert(key, value.clone());
                }
            }
            g.set(i, j, value.clone());
            g.set(j, i, value);
        }
        Ok(g)
    }
}

/// Parses text all the way to validated structure data.
pub fn load_structure(text: &str) -> Result<ParacontactData, FileError> {
    parse_structure(text)?.build()
}

// ---- emitter ----

fn emit_combination(v: &FieldVec, names: &[String]) -> String {
    v.display(names)
}

/// Canonical text form of a structure; `load_structure(emit_structure(s))`
/// rebuilds an identical structure.
pub fn emit_structure(s: &ParacontactData) -> String {
    let dim = s.dim();
    let names = s.frame.names().to_vec();
    let mut out = String::new();
    let radicand = structure_radicand(s);
    match &s.frame {
        Frame::Lie(frame) => {
            out.push_str("mode = lie_algebra\n");
            out.push_str(&format!("radical = {radicand}\n"));
            out.push_str(&format!("dim = {dim}\n"));
            out.push_str(&format!("frame = {}\n\n", names.join(", ")));
            let mut any = false;
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let b = frame.bracket(i, j);
                    if !b.is_zero() {
                        out.push_str(&format!(
                            "[{}, {}] = {}\n",
                            names[i],
                            names[j],
                            emit_combination(b, &names)
                        ));
                        any = true;
                    }
                }
            }
            if any {
                out.push('\n');
            }
        }
        Frame::Coord(frame) => {
            out.push_str("mode = coordinates\n");
            out.push_str(&format!("radical = {radicand}\n"));
            out.push_str(&format!("dim = {dim}\n"));
            out.push_str(&format!("coords = {}\n", frame.chart().join(", ")));
            out.push_str(&format!("frame = {}\n\n", names.join(", ")));
            let d_vectors: Vec<String> =
                frame.chart().iter().map(|c| format!("d_{c}")).collect();
            for (name, field) in names.iter().zip(frame.fields()) {
                out.push_str(&format!(
                    "field {name} = {}\n",
                    emit_combination(field, &d_vectors)
                ));
            }
            out.push('\n');
        }
    }

    for j in 0..dim {
        let col = s.phi_col(j);
        if !col.is_zero() {
            out.push_str(&format!(
                "phi {} = {}\n",
                names[j],
                emit_combination(&col, &names)
            ));
        }
    }
    out.push('\n');

    match &s.frame {
        Frame::Lie(_) => {
            out.push_str(&format!("xi = {}\n", emit_combination(&s.xi, &names)));
            for (i, value) in s.eta.iter().enumerate() {
                if !value.is_zero() {
                    out.push_str(&format!("eta {} = {value}\n", names[i]));
                }
            }
        }
        Frame::Coord(frame) => {
            let d_vectors: Vec<String> =
                frame.chart().iter().map(|c| format!("d_{c}")).collect();
            let d_forms: Vec<String> =
                frame.chart().iter().map(|c| format!("d{c}")).collect();
            let xi_coord = frame.to_coord_components(&s.xi);
            out.push_str(&format!("xi = {}\n", emit_combination(&xi_coord, &d_vectors)));
            let eta_coord = frame.covector_to_coords(&s.eta);
            out.push_str(&format!(
                "eta = {}\n",
                emit_combination(&FieldVec::from_components(eta_coord), &d_forms)
            ));
        }
    }
    out.push('\n');

    for i in 0..dim {
        for j in i..dim {
            if !s.g.get(i, j).is_zero() {
                out.push_str(&format!(
                    "g({}, {}) = {}\n",
                    names[i],
                    names[j],
                    s.g.get(i, j)
                ));
            }
        }
    }
    out
}

/// The radicand a structure's scalars live over; falls back to the default
/// when every coefficient is rational.
pub fn structure_radicand(s: &ParacontactData) -> u32 {
    let mut found = 0u32;
    let mut visit = |sc: &Scalar| {
        if sc.radicand() != 0 {
            found = sc.radicand();
        }
    };
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            visit(s.g.get(i, j));
            for (_, c) in s.phi.get(i, j).terms() {
                visit(c);
            }
        }
    }
    if let Frame::Lie(frame) = &s.frame {
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                for c in &frame.bracket(i, j).components {
                    for (_, sc) in c.terms() {
                        visit(sc);
                    }
                }
            }
        }
    }
    if found == 0 {
        DEFAULT_RADICAND
    } else {
        found
    }
}

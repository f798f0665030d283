//! Multivariate polynomials over [`Scalar`] in a fixed, ordered chart.
//!
//! Terms are kept in a map from exponent vectors to nonzero coefficients,
//! ordered graded-lexicographically by the declared variable order, so
//! printing and equality are canonical. A polynomial built in the empty chart
//! is a constant and combines with polynomials from any chart.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::{ExactError, Scalar};

/// Exponent vector, one entry per chart variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent vector.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, Debug)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            vars: empty_vars(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Poly {
            vars: empty_vars(),
            terms,
        }
    }

    /// The variable at `index` in the given chart.
    pub fn var(vars: &Arc<Vec<String>>, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut exps = vec![0u32; vars.len()];
        exps[index] = 1;
        Poly::from_term(vars.clone(), Monomial(exps), Scalar::one())
    }

    pub fn from_term(vars: Arc<Vec<String>>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { vars, terms }
    }

    pub fn from_terms(
        vars: Arc<Vec<String>>,
        entries: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Poly {
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in entries {
            assert_eq!(m.0.len(), p.vars.len(), "exponent arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// The constant value, if this polynomial has no nonconstant term.
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_constant() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Largest monomial in graded-lex order, with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading_term().map_or(0, |(m, _)| m.degree())
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    /// Re-expresses a constant polynomial in another chart; identity when the
    /// charts already agree. Combining genuinely different charts is a bug.
    fn unified(&self, vars: &Arc<Vec<String>>) -> Poly {
        if Arc::ptr_eq(&self.vars, vars) || self.vars == *vars {
            return self.clone();
        }
        if self.vars.is_empty() {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                debug_assert!(m.is_constant());
                terms.insert(Monomial(vec![0; vars.len()]), c.clone());
            }
            return Poly {
                vars: vars.clone(),
                terms,
            };
        }
        panic!(
            "incompatible variable charts {:?} and {:?}",
            self.vars, vars
        );
    }

    fn join_vars(&self, other: &Poly) -> Arc<Vec<String>> {
        if self.vars.is_empty() {
            other.vars.clone()
        } else {
            self.vars.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Exact partial derivative with respect to a declared variable.
    pub fn derive(&self, var: &str) -> Result<Poly, ExactError> {
        let index = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| ExactError::UnknownVariable(var.to_string()))?;
        Ok(self.derive_index(index))
    }

    /// Partial derivative by variable index; constants in the empty chart
    /// differentiate to zero for any index.
    pub fn derive_index(&self, index: usize) -> Poly {
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        if self.vars.is_empty() {
            return out;
        }
        assert!(index < self.vars.len(), "variable index out of range");
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] = e - 1;
            out.add_term(Monomial(exps), c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Exact evaluation at a rational point of the chart. Constants from the
    /// empty chart evaluate at any point.
    pub fn eval(&self, point: &[BigRational]) -> Result<Scalar, ExactError> {
        if point.len() != self.vars.len() && !self.vars.is_empty() {
            return Err(ExactError::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                for _ in 0..*e {
                    term = &term * &Scalar::from_rational(x.clone());
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn to_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: f64 = m
                    .0
                    .iter()
                    .zip(point)
                    .map(|(e, x)| x.powi(*e as i32))
                    .product();
                c.to_f64() * mono
            })
            .sum()
    }

    /// Exact quotient `self / divisor`, or `None` when the division is not
    /// exact. Used by fraction-free elimination, where exactness is guaranteed.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let divisor = divisor.unified(&self.join_vars(divisor));
        let mut rem = self.unified(divisor.vars());
        let (dm, dc) = divisor.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut quot = Poly {
            vars: rem.vars.clone(),
            terms: BTreeMap::new(),
        };
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term().unwrap();
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient(rm);
            let qc = rc / &dc;
            let piece = Poly::from_term(rem.vars.clone(), qm.clone(), qc.clone());
            rem = &rem - &(&piece * &divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

fn empty_vars() -> Arc<Vec<String>> {
    static EMPTY: std::sync::OnceLock<Arc<Vec<String>>> = std::sync::OnceLock::new();
    EMPTY.get_or_init(|| Arc::new(Vec::new())).clone()
}

impl PartialEq for Poly {
    /// Mathematical equality; constants compare equal across charts.
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        match (self.constant_value(), other.constant_value()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Poly {}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let vars = self.join_vars(rhs);
        let mut out = self.unified(&vars);
        for (m, c) in rhs.unified(&vars).terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        &self + rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        &self - rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let vars = self.join_vars(rhs);
        let mut out = self.unified(&vars);
        for (m, c) in rhs.unified(&vars).terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let vars = self.join_vars(rhs);
        let lhs = self.unified(&vars);
        let rhs = rhs.unified(&vars);
        let mut out = Poly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &lhs.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl fmt::Display for Poly {
    /// Canonical text form in the expression grammar: terms in descending
    /// graded-lex order, mixed coefficients split so that no parentheses are
    /// needed, e.g. `x^2*z + 2*x + sqrt2*x + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = monomial_string(m, &self.vars);
            // Split a + b*sqrtD coefficients into two printed terms.
            let mut pieces: Vec<Scalar> = Vec::new();
            if !c.rational_part().is_zero() {
                pieces.push(Scalar::from_rational(c.rational_part().clone()));
            }
            if !c.radical_part().is_zero() {
                pieces.push(
                    Scalar::with_radical(
                        BigRational::zero(),
                        c.radical_part().clone(),
                        c.radicand(),
                    )
                    .expect("radicand validated at construction"),
                );
            }
            for piece in pieces {
                let neg = piece.is_negative();
                let abs = if neg { -&piece } else { piece };
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                let coeff = abs.to_string();
                match (&mono, coeff.as_str()) {
                    (None, _) => write!(f, "{coeff}")?,
                    (Some(ms), "1") => write!(f, "{ms}")?,
                    (Some(ms), _) => write!(f, "{coeff}*{ms}")?,
                }
            }
        }
        Ok(())
    }
}

fn monomial_string(m: &Monomial, vars: &[String]) -> Option<String> {
    let mut parts = Vec::new();
    for (e, v) in m.0.iter().zip(vars) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn chart() -> Arc<Vec<String>> {
        Arc::new(vec!["x".into(), "y".into(), "z".into()])
    }

    fn rat(p: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(p))
    }

    #[test]
    fn derive_monomials() {
        let vars = chart();
        let x = Poly::var(&vars, 0);
        let z = Poly::var(&vars, 2);
        let xz = &x * &z;
        assert_eq!(xz.derive("x").unwrap(), z);
        assert_eq!(xz.derive("z").unwrap(), x);
        let two_y = Poly::var(&vars, 1).scale(&Scalar::from_int(2));
        assert_eq!(two_y.derive("y").unwrap(), Poly::constant(Scalar::from_int(2)));
        assert!(xz.derive("w").is_err());
    }

    #[test]
    fn eval_examples() {
        let vars = chart();
        let x = Poly::var(&vars, 0);
        let xz = &x * &Poly::var(&vars, 2);
        assert_eq!(x.eval(&[rat(0), rat(1), rat(2)]).unwrap(), Scalar::zero());
        assert_eq!(xz.eval(&[rat(1), rat(0), rat(3)]).unwrap(), Scalar::from_int(3));
        let c = Poly::constant(Scalar::sqrt(2).unwrap());
        assert_eq!(c.eval(&[]).unwrap(), Scalar::sqrt(2).unwrap());
        assert!(x.eval(&[rat(1)]).is_err());
    }

    #[test]
    fn constants_cross_charts() {
        let vars = chart();
        let two = Poly::constant(Scalar::from_int(2));
        let x = Poly::var(&vars, 0);
        let sum = &x + &two;
        assert_eq!(sum.vars().as_slice(), vars.as_slice());
        assert_eq!(&sum - &x, two);
    }

    #[test]
    fn div_exact_roundtrip() {
        let vars = chart();
        let x = Poly::var(&vars, 0);
        let y = Poly::var(&vars, 1);
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert!(f.div_exact(&x).is_none());
    }

    #[test]
    fn display_graded_lex() {
        let vars = chart();
        let x = Poly::var(&vars, 0);
        let z = Poly::var(&vars, 2);
        let p = &(&(&x * &z) + &x.scale(&Scalar::from_int(-2)))
            + &Poly::constant(Scalar::from_ratio(1, 2));
        assert_eq!(p.to_string(), "x*z - 2*x + 1/2");
        let q = x.scale(&Scalar::with_radical(rat(1), rat(1), 2).unwrap());
        assert_eq!(q.to_string(), "x + sqrt2*x");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -9i64..=9), 0..6).prop_map(
            |entries| {
                let vars = chart();
                Poly::from_terms(
                    vars,
                    entries.into_iter().map(|((a, b, c), coef)| {
                        (Monomial(vec![a, b, c]), Scalar::from_int(coef))
                    }),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn mixed_partials_commute(p in arb_poly()) {
            let dxy = p.derive_index(0).derive_index(1);
            let dyx = p.derive_index(1).derive_index(0);
            prop_assert_eq!(dxy, dyx);
        }

        #[test]
        fn product_rule(p in arb_poly(), q in arb_poly()) {
            let lhs = (&p * &q).derive_index(0);
            let rhs = &(&p.derive_index(0) * &q) + &(&p * &q.derive_index(0));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p - &p) * &q, Poly::zero());
        }
    }
}

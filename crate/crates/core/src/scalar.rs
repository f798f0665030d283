//! Exact scalars in the quadratic extension Q(sqrt D).
//!
//! A [`Scalar`] is `rational_part + radical_part * sqrt(D)` with both parts
//! arbitrary-precision rationals and `D` a square-free integer >= 2 fixed per
//! session (default 2). The representation is canonical: a scalar with zero
//! radical part stores radicand 0, so derived equality is value equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::ExactError;

/// Radicand used when a structure file does not declare one.
pub const DEFAULT_RADICAND: u32 = 2;

/// Element of Q(sqrt D): `rational_part + radical_part * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: BigRational,
    radical: BigRational,
    radicand: u32,
}

/// True iff `d` has no repeated prime factor.
pub fn is_square_free(d: u32) -> bool {
    let mut d = d;
    let mut p = 2u32;
    while p.saturating_mul(p) <= d {
        if d % p == 0 {
            d /= p;
            if d % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl Scalar {
    /// `a + b*sqrt(d)`. Fails unless `d` is square-free and >= 2 (or `b = 0`).
    pub fn with_radical(a: BigRational, b: BigRational, d: u32) -> Result<Self, ExactError> {
        if b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        if d < 2 || !is_square_free(d) {
            return Err(ExactError::BadRadicand(d));
        }
        Ok(Scalar {
            rational: a,
            radical: b,
            radicand: d,
        })
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            rational: a,
            radical: BigRational::zero(),
            radicand: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as a scalar; `q` must be nonzero.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u32) -> Result<Self, ExactError> {
        Self::with_radical(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    /// Radicand of the stored radical term; 0 when the radical part vanishes.
    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    /// The rational value, if the radical part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.radical.is_zero() {
            Some(&self.rational)
        } else {
            None
        }
    }

    fn join_radicand(&self, other: &Scalar) -> u32 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (a, b) if a == b => a,
            (a, b) => panic!("mixed radicals sqrt{a} and sqrt{b} in one computation"),
        }
    }

    fn normalized(rational: BigRational, radical: BigRational, radicand: u32) -> Self {
        if radical.is_zero() {
            Scalar {
                rational,
                radical,
                radicand: 0,
            }
        } else {
            Scalar {
                rational,
                radical,
                radicand,
            }
        }
    }

    /// Multiplicative inverse; `None` for zero. Always exact: the norm
    /// `a^2 - b^2 d` vanishes only at zero because `d` is not a square.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.radical * &self.radical * d;
        debug_assert!(!norm.is_zero());
        Some(Self::normalized(
            &self.rational / &norm,
            -(&self.radical / &norm),
            self.radicand,
        ))
    }

    /// Sign of the real value: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sa = rational_signum(&self.rational);
        let sb = rational_signum(&self.radical);
        match (sa, sb) {
            (0, s) | (s, 0) => s,
            (a, b) if a == b => a,
            (a, b) => {
                // a and b*sqrt(d) have opposite signs: compare a^2 with b^2 d.
                let d = BigRational::from_integer(BigInt::from(self.radicand));
                let lhs = &self.rational * &self.rational;
                let rhs = &self.radical * &self.radical * d;
                if lhs > rhs {
                    a
                } else {
                    b
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.radical.to_f64().unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }
}

fn rational_signum(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::from_int(0)
    }

    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.join_radicand(rhs);
        Scalar::normalized(
            &self.rational + &rhs.rational,
            &self.radical + &rhs.radical,
            d,
        )
    }
}

impl Add<&Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        &self + rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Sub<&Scalar> for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        &self - rhs
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.join_radicand(rhs);
        Scalar::normalized(
            &self.rational - &rhs.rational,
            &self.radical - &rhs.radical,
            d,
        )
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = self.join_radicand(rhs);
        let dq = BigRational::from_integer(BigInt::from(d));
        let rational =
            &self.rational * &rhs.rational + &self.radical * &rhs.radical * dq;
        let radical = &self.rational * &rhs.radical + &self.radical * &rhs.rational;
        Scalar::normalized(rational, radical, d)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division as mul by inverse
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-self.rational, -self.radical, self.radicand)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(
            -self.rational.clone(),
            -self.radical.clone(),
            self.radicand,
        )
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form, re-parseable by the expression grammar:
    /// `2`, `-1/2`, `sqrt2`, `3/2*sqrt2`, `1/2+3/2*sqrt2`, `2-sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let radical = |f: &mut fmt::Formatter<'_>, b: &BigRational| -> fmt::Result {
            if b.is_one() {
                write!(f, "sqrt{}", self.radicand)
            } else {
                write!(f, "{}*sqrt{}", b, self.radicand)
            }
        };
        if self.rational.is_zero() {
            if self.radical.is_negative() {
                write!(f, "-")?;
            }
            return radical(f, &self.radical.abs());
        }
        write!(f, "{}", self.rational)?;
        write!(f, "{}", if self.radical.is_negative() { "-" } else { "+" })?;
        radical(f, &self.radical.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn s(p: i64, q: i64, rp: i64, rq: i64) -> Scalar {
        Scalar::with_radical(rat(p, q), rat(rp, rq), 2).unwrap()
    }

    #[test]
    fn zero_iff_both_parts_zero() {
        assert!(Scalar::zero().is_zero());
        assert!(!s(0, 1, 1, 1).is_zero());
        assert!(!Scalar::from_int(3).is_zero());
    }

    #[test]
    fn inverse_of_radical() {
        // 1/(1 + sqrt2) = -1 + sqrt2
        let x = s(1, 1, 1, 1);
        assert_eq!(x.inverse().unwrap(), s(-1, 1, 1, 1));
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn signum_opposite_parts() {
        // 3 - 2*sqrt2 > 0, 1 - sqrt2 < 0
        assert_eq!(s(3, 1, -2, 1).signum(), 1);
        assert_eq!(s(1, 1, -1, 1).signum(), -1);
        assert_eq!(Scalar::zero().signum(), 0);
        assert_eq!(s(-3, 1, 2, 1).signum(), -1);
    }

    #[test]
    fn square_free_radicands_only() {
        assert!(Scalar::sqrt(2).is_ok());
        assert!(Scalar::sqrt(10).is_ok());
        assert!(Scalar::sqrt(4).is_err());
        assert!(Scalar::sqrt(12).is_err());
        assert!(Scalar::sqrt(1).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed radicals")]
    fn mixed_radicals_rejected() {
        let a = Scalar::sqrt(2).unwrap();
        let b = Scalar::sqrt(3).unwrap();
        let _ = &a + &b;
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_int(-1).to_string(), "-1");
        assert_eq!(Scalar::from_ratio(1, 2).to_string(), "1/2");
        assert_eq!(Scalar::sqrt(2).unwrap().to_string(), "sqrt2");
        assert_eq!(s(0, 1, -1, 1).to_string(), "-sqrt2");
        assert_eq!(s(1, 2, 3, 2).to_string(), "1/2+3/2*sqrt2");
        assert_eq!(s(2, 1, -1, 1).to_string(), "2-sqrt2");
        assert_eq!(s(0, 1, 1, 2).to_string(), "1/2*sqrt2");
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
            .prop_map(|(a, b, c, d)| s(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &Scalar::zero(), x.clone());
            prop_assert_eq!(&x * &Scalar::one(), x.clone());
            prop_assert_eq!(&x - &x, Scalar::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn signum_matches_float(x in arb_scalar()) {
            let v = x.to_f64();
            if v.abs() > 1e-9 {
                prop_assert_eq!(x.signum() as f64, v.signum());
            }
        }
    }
}

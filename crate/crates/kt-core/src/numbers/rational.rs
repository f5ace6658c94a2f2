//! Arbitrary-precision rationals in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::KtError;

/// Exact rational number. Always in lowest terms with a positive
/// denominator; the backing `BigRational` maintains both on every
/// operation, so equality is plain component equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// p/q from machine integers. Panics on q == 0; use [`FromStr`] for
    /// untrusted input.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "rational with zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Result<Self, KtError> {
        if q.is_zero() {
            return Err(KtError::InvalidParameter(
                "rational with zero denominator".into(),
            ));
        }
        Ok(Rational(BigRational::new(p, q)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rational(self.0.pow(e))
    }

    /// Largest integer not exceeding the value.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Exact square root, if the value is a square of a rational:
    /// both numerator and denominator must be perfect integer squares.
    /// Returns the nonnegative root.
    pub fn exact_sqrt(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let p = integer_sqrt_exact(self.numer())?;
        let q = integer_sqrt_exact(self.denom())?;
        Some(Rational(BigRational::new(p, q)))
    }

    /// True when the value is the square of a rational.
    pub fn is_perfect_square(&self) -> bool {
        self.exact_sqrt().is_some()
    }

    /// Nearest f64; only the spectral layer should consume this.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// Floor square root that checks exactness: Some(s) iff n == s².
fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = KtError;

    /// Accepts "p" or "p/q" with optional sign and arbitrary whitespace
    /// around tokens. q == 0 is rejected.
    fn from_str(s: &str) -> Result<Self, KtError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(KtError::Parse("empty rational".into()));
        }
        let (num, den) = match compact.split_once('/') {
            None => (compact.as_str(), "1"),
            Some((n, d)) => (n, d),
        };
        let p = BigInt::from_str(num)
            .map_err(|_| KtError::Parse(format!("bad integer {num:?} in rational")))?;
        let q = BigInt::from_str(den)
            .map_err(|_| KtError::Parse(format!("bad integer {den:?} in rational")))?;
        if q.is_zero() {
            return Err(KtError::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational(BigRational::new(p, q)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Squarefree factorization helper shared with the quadratic field:
/// n = s²·f with f squarefree; returns (s, f). Trial division is fine at
/// the sizes that reach us (radicands in user input).
pub(crate) fn squarefree_split(n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree split of zero");
    let mut square = 1u64;
    let mut free = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += 1;
    }
    free *= rest;
    (square, free)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "5", "-5", "3/4", "-3/4", "22/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Non-canonical spellings normalize.
        assert_eq!("6/8".parse::<Rational>().unwrap().to_string(), "3/4");
        assert_eq!("3/-4".parse::<Rational>().unwrap().to_string(), "-3/4");
        assert_eq!(" 25 / 2 ".parse::<Rational>().unwrap().to_string(), "25/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!("1/0".parse::<Rational>(), Err(KtError::Parse(_))));
        assert!("one".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn perfect_square_detection() {
        let q = |s: &str| s.parse::<Rational>().unwrap();
        assert_eq!(q("4/9").exact_sqrt(), Some(q("2/3")));
        assert_eq!(q("0").exact_sqrt(), Some(q("0")));
        assert_eq!(q("144").exact_sqrt(), Some(q("12")));
        assert_eq!(q("2").exact_sqrt(), None);
        assert_eq!(q("4/7").exact_sqrt(), None);
        assert_eq!(q("-4").exact_sqrt(), None);
        // 9/4 * 1 * 1 from the circle condition at d=1, sqrt(rho)=3/2:
        // a rational square but not an integer one; the lattice layer
        // additionally requires integrality.
        assert_eq!(q("9/4").exact_sqrt(), Some(q("3/2")));
    }

    #[test]
    fn squarefree_split_examples() {
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(17), (1, 17));
        assert_eq!(squarefree_split(18), (3, 2));
        assert_eq!(squarefree_split(144), (12, 1));
        assert_eq!(squarefree_split(2 * 3 * 5 * 7), (1, 210));
    }
}

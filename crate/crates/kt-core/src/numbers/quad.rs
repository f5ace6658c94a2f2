//! Real quadratic field elements x + y·sqrt(D).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

use super::rational::squarefree_split;
use super::Rational;
use crate::error::KtError;

/// Element x + y·sqrt(d) of a real quadratic field.
///
/// Construction normalizes the radicand to its squarefree part
/// (sqrt(18) becomes 3·sqrt(2)) and folds perfect-square radicands into
/// the rational part, so d == 1 exactly when the element was built from
/// rational data; in that case y is always 0. Within one field the
/// representation is unique: y == 0 iff the element is rational, because
/// sqrt(d) is irrational for squarefree d > 1.
///
/// Arithmetic is only defined between elements of the same field;
/// mixing radicands is a caller bug and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    x: Rational,
    y: Rational,
    d: u64,
}

impl QuadExt {
    /// Canonical form: a vanishing irrational part forces d = 1, so
    /// rational elements compare equal across fields.
    fn make(x: Rational, y: Rational, d: u64) -> Self {
        if y.is_zero() {
            QuadExt {
                x,
                y,
                d: 1,
            }
        } else {
            QuadExt { x, y, d }
        }
    }

    /// x + y·sqrt(d), normalizing the radicand. d == 0 is rejected.
    pub fn new(x: Rational, y: Rational, d: u64) -> Result<Self, KtError> {
        if d == 0 {
            return Err(KtError::InvalidParameter("sqrt(0) radicand".into()));
        }
        let (s, free) = squarefree_split(d);
        let y = &y * &Rational::from_int(s as i64);
        if free == 1 {
            Ok(QuadExt {
                x: &x + &y,
                y: Rational::zero(),
                d: 1,
            })
        } else {
            Ok(Self::make(x, y, free))
        }
    }

    pub fn from_rational(x: Rational) -> Self {
        QuadExt {
            x,
            y: Rational::zero(),
            d: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// Rational part.
    pub fn x(&self) -> &Rational {
        &self.x
    }

    /// sqrt(d) coefficient.
    pub fn y(&self) -> &Rational {
        &self.y
    }

    /// Squarefree radicand (1 for rational elements).
    pub fn radicand(&self) -> u64 {
        self.d
    }

    fn check_same_field(&self, rhs: &Self) {
        // A rational element (y == 0) is a member of every field.
        assert!(
            self.d == rhs.d || self.y.is_zero() || rhs.y.is_zero(),
            "mixed quadratic fields sqrt({}) and sqrt({})",
            self.d,
            rhs.d
        );
    }

    fn joined_radicand(&self, rhs: &Self) -> u64 {
        if self.y.is_zero() {
            rhs.d
        } else {
            self.d
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Field conjugate x - y·sqrt(d).
    pub fn conj(&self) -> Self {
        QuadExt {
            x: self.x.clone(),
            y: -&self.y,
            d: self.d,
        }
    }

    /// Field norm x² - y²·d, exact.
    pub fn norm(&self) -> Rational {
        &self.x.square() - &(&self.y.square() * &Rational::from_int(self.d as i64))
    }

    /// Exact sign of x + y·sqrt(d): -1, 0, or +1.
    ///
    /// When x and y disagree in sign the comparison reduces to x² vs
    /// y²·d; those can only be equal when both parts vanish, since d is
    /// squarefree and greater than 1 whenever y is nonzero.
    pub fn signum(&self) -> i32 {
        let (sx, sy) = (self.x.signum(), self.y.signum());
        match (sx, sy) {
            (0, 0) => 0,
            (_, 0) => sx,
            (0, _) => sy,
            _ if sx == sy => sx,
            _ => {
                let x2 = self.x.square();
                let y2d = &self.y.square() * &Rational::from_int(self.d as i64);
                debug_assert!(x2 != y2d, "sqrt({}) cannot be rational", self.d);
                if x2 > y2d {
                    sx
                } else {
                    sy
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// True iff the element lies in Z: no irrational part and an
    /// integral rational part.
    pub fn is_integer(&self) -> bool {
        self.y.is_zero() && self.x.is_integer()
    }

    /// The witness behind an ODE solvability certificate: Some(n) iff
    /// the element is an integer n < 0.
    pub fn as_negative_integer(&self) -> Option<BigInt> {
        if self.y.is_zero() && self.x.is_integer() && self.x.is_negative() {
            self.x.to_integer()
        } else {
            None
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero quadratic element");
        Self::make(&self.x / &n, -&(&self.y / &n), self.d)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::make(&self.x * r, &self.y * r, self.d)
    }

    /// Nearest f64; only the spectral layer should consume this.
    pub fn to_f64(&self) -> f64 {
        self.x.to_f64() + self.y.to_f64() * (self.d as f64).sqrt()
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.check_same_field(rhs);
        QuadExt::make(
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            self.joined_radicand(rhs),
        )
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self + &(-rhs)
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.check_same_field(rhs);
        let d = self.joined_radicand(rhs);
        let dr = Rational::from_int(d as i64);
        QuadExt::make(
            &(&self.x * &rhs.x) + &(&(&self.y * &rhs.y) * &dr),
            &(&self.x * &rhs.y) + &(&self.y * &rhs.x),
            d,
        )
    }
}

impl Div for &QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.recip()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            x: -&self.x,
            y: -&self.y,
            d: self.d,
        }
    }
}

impl fmt::Display for QuadExt {
    /// Canonical grammar: "x", "y*sqrt(d)", or "x+y*sqrt(d)" with the
    /// sign of y merged into the separator. Round-trips through
    /// [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        if self.x.is_zero() {
            return write!(f, "{}*sqrt({})", self.y, self.d);
        }
        if self.y.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.x, self.y.abs(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.x, self.y, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = KtError;

    /// Accepts "x", "y*sqrt(D)", "x+y*sqrt(D)", "x-y*sqrt(D)" with
    /// rational x and y, an optional bare "sqrt(D)" (coefficient 1),
    /// and arbitrary whitespace. The radicand is normalized squarefree.
    fn from_str(s: &str) -> Result<Self, KtError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(KtError::Parse("empty quadratic element".into()));
        }
        let Some(root_at) = compact.find("sqrt(") else {
            return Ok(QuadExt::from_rational(compact.parse()?));
        };
        let radical = &compact[root_at..];
        let inner = radical
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| KtError::Parse(format!("malformed radical in {s:?}")))?;
        let d: u64 = inner
            .parse()
            .map_err(|_| KtError::Parse(format!("bad radicand {inner:?}")))?;

        let prefix = &compact[..root_at];
        // Split the prefix into the rational part and the sqrt
        // coefficient. Signs can only occur at the start of either
        // coefficient, so the last +/- past position 0 separates them.
        let (x_str, y_str) = match prefix.strip_suffix('*') {
            Some(coefs) => match coefs.rfind(['+', '-']).filter(|&i| i > 0) {
                Some(i) => (&coefs[..i], &coefs[i..]),
                None => ("0", coefs),
            },
            None => match prefix {
                "" | "+" => ("0", "1"),
                "-" => ("0", "-1"),
                _ => {
                    let stripped = prefix
                        .strip_suffix(['+', '-'])
                        .ok_or_else(|| KtError::Parse(format!("malformed {s:?}")))?;
                    let sign = if prefix.ends_with('-') { "-1" } else { "1" };
                    (stripped, sign)
                }
            },
        };
        if x_str.is_empty() || y_str.is_empty() || y_str == "+" || y_str == "-" {
            return Err(KtError::Parse(format!("malformed {s:?}")));
        }
        QuadExt::new(x_str.parse()?, y_str.parse()?, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "4+1*sqrt(17)",
            "4-1*sqrt(17)",
            "-3/2+5/7*sqrt(2)",
            "1*sqrt(5)",
            "9/2",
            "0",
        ] {
            assert_eq!(q(s).to_string(), s);
        }
        // Sugar and normalization.
        assert_eq!(q("sqrt(17)").to_string(), "1*sqrt(17)");
        assert_eq!(q("-sqrt(17)").to_string(), "-1*sqrt(17)");
        assert_eq!(q("4 + 1*sqrt(18)").to_string(), "4+3*sqrt(2)");
        assert_eq!(q("1+2*sqrt(4)").to_string(), "5");
        assert_eq!(q("5+0*sqrt(17)").to_string(), "5");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "sqrt()", "sqrt(x)", "sqrt(0)", "1+", "+*sqrt(2)", "1/0+1*sqrt(2)"] {
            assert!(s.parse::<QuadExt>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn exact_sign() {
        // 4 - sqrt(17) < 0 < 4 + sqrt(17); 5 - sqrt(17) > 0.
        assert_eq!(q("4-1*sqrt(17)").signum(), -1);
        assert_eq!(q("4+1*sqrt(17)").signum(), 1);
        assert_eq!(q("5-1*sqrt(17)").signum(), 1);
        assert_eq!(q("-5+1*sqrt(17)").signum(), -1);
        assert_eq!(q("0").signum(), 0);
        assert_eq!(q("-2*sqrt(3)").signum(), -1);
    }

    #[test]
    fn field_arithmetic() {
        let t = q("4+1*sqrt(17)");
        assert_eq!(t.square(), q("33+8*sqrt(17)"));
        assert_eq!(&t * &t.recip(), QuadExt::from_int(1));
        assert_eq!(&t + &t.conj(), QuadExt::from_int(8));
        assert_eq!(t.norm(), Rational::from_int(-1));
    }

    /// Oracle for `signum`: clear denominators to get sign(A + B·sqrt(d))
    /// with integer A, B, then compare A·10^100 against -B·isqrt(d·10^200).
    /// The truncated integer square root is within 1 of the true value, so
    /// the verdict is trustworthy whenever the difference dominates |B|.
    fn sign_oracle(x: &Rational, y: &Rational, d: u64) -> Option<i32> {
        let a = x.numer() * y.denom();
        let b = y.numer() * x.denom();
        let scale = BigInt::from(10u8).pow(100);
        let root = (BigInt::from(d) * &scale * &scale).sqrt();
        let t = &a * &scale + &b * &root;
        if t.magnitude() <= b.magnitude() {
            return None;
        }
        Some(match t.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        })
    }

    proptest::proptest! {
        #[test]
        fn sign_matches_high_precision_oracle(
            p1 in -2000i64..2000,
            q1 in 1i64..50,
            p2 in -2000i64..2000,
            q2 in 1i64..50,
            d in 2u64..400,
        ) {
            let x = Rational::new(p1, q1);
            let y = Rational::new(p2, q2);
            let elem = QuadExt::new(x.clone(), y.clone(), d).unwrap();
            if let Some(expected) = sign_oracle(&x, &y, d) {
                proptest::prop_assert_eq!(elem.signum(), expected);
            }
        }

        #[test]
        fn recip_is_exact_inverse(
            p1 in -100i64..100,
            p2 in -100i64..100,
            d in 2u64..100,
        ) {
            let elem = QuadExt::new(
                Rational::new(p1, 3),
                Rational::new(p2, 7),
                d,
            )
            .unwrap();
            if !elem.is_zero() {
                proptest::prop_assert_eq!(&elem * &elem.recip(), QuadExt::from_int(1));
            }
        }
    }

    #[test]
    fn negative_integer_witness() {
        assert_eq!(
            q("-1").as_negative_integer(),
            Some(BigInt::from(-1))
        );
        assert_eq!(q("-1/2").as_negative_integer(), None);
        assert_eq!(q("1").as_negative_integer(), None);
        assert_eq!(q("-1+1*sqrt(2)").as_negative_integer(), None);
        // The certificate computation for t = 4 + sqrt(17), n = 1:
        // u = (n² - t²) / (8|n|t) must come out exactly -1.
        let t = q("4+1*sqrt(17)");
        let n2 = QuadExt::from_int(1);
        let u = &(&n2 - &t.square()) / &t.scale(&Rational::from_int(8));
        assert_eq!(u.as_negative_integer(), Some(BigInt::from(-1)));
    }
}

//! Exact symbolic scalars for the invariant coframe calculus.
//!
//! A scalar is a finite sum of monomials c·a^p·b^q·ρ^r·W(h), with
//! Gaussian-rational c, integer exponents (negative powers allowed for b
//! and ρ), and at most one derivative word W applied to one of the four
//! function symbols f, g, f̄, ḡ. The calculus is linear in the function
//! symbols: multiplying two function-carrying scalars is a caller bug.
//!
//! Terms are kept in a fixed canonical order (function terms before pure
//! parameters, longer derivative words first) so printed equations come
//! out the same way every time.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::numbers::{GaussianRational, Rational};

/// Function symbols the harmonic system is written in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FuncSymbol {
    F,
    G,
    FBar,
    GBar,
}

impl FuncSymbol {
    fn rank(self) -> u8 {
        match self {
            FuncSymbol::F => 0,
            FuncSymbol::G => 1,
            FuncSymbol::FBar => 2,
            FuncSymbol::GBar => 3,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            FuncSymbol::F => FuncSymbol::FBar,
            FuncSymbol::FBar => FuncSymbol::F,
            FuncSymbol::G => FuncSymbol::GBar,
            FuncSymbol::GBar => FuncSymbol::G,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            FuncSymbol::F => "f",
            FuncSymbol::G => "g",
            FuncSymbol::FBar => "f\u{304}",
            FuncSymbol::GBar => "g\u{304}",
        }
    }
}

/// Complex frame directions acting as first-order derivative operators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum VDir {
    V1,
    V2,
    V1Bar,
    V2Bar,
}

impl VDir {
    pub const ALL: [VDir; 4] = [VDir::V1, VDir::V2, VDir::V1Bar, VDir::V2Bar];

    pub fn conj(self) -> Self {
        match self {
            VDir::V1 => VDir::V1Bar,
            VDir::V1Bar => VDir::V1,
            VDir::V2 => VDir::V2Bar,
            VDir::V2Bar => VDir::V2,
        }
    }

    /// Index of the coframe generator dual to this direction.
    pub fn generator(self) -> usize {
        match self {
            VDir::V1 => 0,
            VDir::V2 => 1,
            VDir::V1Bar => 2,
            VDir::V2Bar => 3,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            VDir::V1 => "V\u{2081}",
            VDir::V2 => "V\u{2082}",
            VDir::V1Bar => "V\u{304}\u{2081}",
            VDir::V2Bar => "V\u{304}\u{2082}",
        }
    }
}

/// A derivative word applied to a function symbol, outermost first:
/// `word = [V1, V2Bar]` on f denotes V₁(V̄₂(f)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuncTerm {
    pub sym: FuncSymbol,
    pub word: Vec<VDir>,
}

impl FuncTerm {
    fn render(&self) -> String {
        let mut out = String::new();
        for dir in &self.word {
            out.push_str(dir.symbol());
        }
        if self.word.is_empty() {
            out.push_str(self.sym.symbol());
        } else {
            out.push('(');
            out.push_str(self.sym.symbol());
            out.push(')');
        }
        out
    }
}

/// One canonical monomial: a^p·b^q·ρ^r times an optional function term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub a_pow: u32,
    pub b_pow: i32,
    pub rho_pow: i32,
    pub func: Option<FuncTerm>,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        a_pow: 0,
        b_pow: 0,
        rho_pow: 0,
        func: None,
    };

    pub fn param(a_pow: u32, b_pow: i32, rho_pow: i32) -> Self {
        Monomial {
            a_pow,
            b_pow,
            rho_pow,
            func: None,
        }
    }

    pub fn func(sym: FuncSymbol) -> Self {
        Monomial {
            func: Some(FuncTerm { sym, word: vec![] }),
            ..Monomial::ONE
        }
    }

}

impl Ord for Monomial {
    /// Display order: function-carrying terms by symbol f < g < f̄ < ḡ,
    /// then longer derivative words first, then word content; pure
    /// parameter monomials last, by exponent tuple.
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(m: &Monomial) -> u8 {
            m.func.as_ref().map_or(4, |t| t.sym.rank())
        }
        fn word(m: &Monomial) -> &[VDir] {
            m.func.as_ref().map_or(&[], |t| t.word.as_slice())
        }
        rank(self)
            .cmp(&rank(other))
            .then_with(|| word(other).len().cmp(&word(self).len()))
            .then_with(|| word(self).cmp(word(other)))
            .then_with(|| {
                (self.a_pow, self.b_pow, self.rho_pow).cmp(&(
                    other.a_pow,
                    other.b_pow,
                    other.rho_pow,
                ))
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite sum of monomials with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarExpr {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(GaussianRational::from_rational(r))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_monomial(Monomial::ONE, c)
    }

    /// a^p·b^q·ρ^r with coefficient 1.
    pub fn param(a_pow: u32, b_pow: i32, rho_pow: i32) -> Self {
        Self::from_monomial(Monomial::param(a_pow, b_pow, rho_pow), GaussianRational::one())
    }

    /// The bare function symbol as a scalar.
    pub fn func(sym: FuncSymbol) -> Self {
        Self::from_monomial(Monomial::func(sym), GaussianRational::one())
    }

    pub fn from_monomial(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ScalarExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_func(&self) -> bool {
        self.terms.keys().any(|m| m.func.is_some())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, coeff)| (m.clone(), coeff * c))
                .collect(),
        }
    }

    /// Apply a frame direction as a derivative. Parameter monomials are
    /// constants and vanish; a function term gains the direction as its
    /// new outermost derivative.
    pub fn differentiate(&self, dir: VDir) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(func) = &m.func {
                let mut word = Vec::with_capacity(func.word.len() + 1);
                word.push(dir);
                word.extend_from_slice(&func.word);
                let dm = Monomial {
                    func: Some(FuncTerm {
                        sym: func.sym,
                        word,
                    }),
                    ..m.clone()
                };
                out.accumulate(dm, c.clone());
            }
        }
        out
    }

    /// Complex conjugation: conjugates coefficients, bars function
    /// symbols and derivative directions. The parameters a, b, ρ are
    /// real and pass through.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let func = m.func.as_ref().map(|t| FuncTerm {
                sym: t.sym.conj(),
                word: t.word.iter().map(|d| d.conj()).collect(),
            });
            let cm = Monomial {
                func,
                ..m.clone()
            };
            out.accumulate(cm, c.conj());
        }
        out
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        self + &(-rhs)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    /// Product of sums of monomials. Panics if both factors carry a
    /// function symbol: the calculus is linear in f and g.
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (lm, lc) in &self.terms {
            for (rm, rc) in &rhs.terms {
                let func = match (&lm.func, &rm.func) {
                    (None, None) => None,
                    (Some(t), None) | (None, Some(t)) => Some(t.clone()),
                    (Some(_), Some(_)) => {
                        panic!("nonlinear product of function-carrying scalars")
                    }
                };
                let m = Monomial {
                    a_pow: lm.a_pow + rm.a_pow,
                    b_pow: lm.b_pow + rm.b_pow,
                    rho_pow: lm.rho_pow + rm.rho_pow,
                    func,
                };
                out.accumulate(m, lc * rc);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

fn push_pow(parts: &mut Vec<String>, name: &str, pow: u32) {
    match pow {
        0 => {}
        1 => parts.push(name.to_string()),
        p => parts.push(format!("{name}^{p}")),
    }
}

/// Render one term. Returns the sign (true for a leading minus) and the
/// magnitude string, with `suffix` appended after the function part; the
/// coefficient and parameters collapse into a single (num/den) prefix.
pub(crate) fn render_term(c: &GaussianRational, m: &Monomial, suffix: &str) -> (bool, String) {
    let negative = c.re.is_negative() || (c.re.is_zero() && c.im.is_negative());
    let c = if negative { -c } else { c.clone() };

    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    let one = BigInt::one();

    if !c.re.is_zero() && !c.im.is_zero() {
        num.push(format!("({c})"));
    } else {
        let (r, imaginary) = if c.im.is_zero() {
            (&c.re, false)
        } else {
            (&c.im, true)
        };
        if *r.numer() != one {
            num.push(r.numer().to_string());
        }
        if imaginary {
            num.push("i".to_string());
        }
        if *r.denom() != one {
            den.push(r.denom().to_string());
        }
    }

    push_pow(&mut num, "a", m.a_pow);
    push_pow(&mut num, "b", m.b_pow.max(0) as u32);
    push_pow(&mut den, "b", (-m.b_pow).max(0) as u32);
    push_pow(&mut num, "\u{3c1}", m.rho_pow.max(0) as u32);
    push_pow(&mut den, "\u{3c1}", (-m.rho_pow).max(0) as u32);

    let tail = format!(
        "{}{}",
        m.func.as_ref().map(FuncTerm::render).unwrap_or_default(),
        suffix
    );

    let prefix = if den.is_empty() {
        num.concat()
    } else {
        let n = if num.is_empty() {
            "1".to_string()
        } else {
            num.concat()
        };
        let wrapped = format!("{n}/{}", den.concat());
        if tail.is_empty() {
            wrapped
        } else {
            format!("({wrapped})")
        }
    };

    let magnitude = if prefix.is_empty() && tail.is_empty() {
        "1".to_string()
    } else {
        format!("{prefix}{tail}")
    };
    (negative, magnitude)
}

/// Join rendered terms with " + " / " − " separators, minus sign U+2212.
pub(crate) fn join_terms(terms: impl Iterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, mag)) in terms.enumerate() {
        if i == 0 {
            if neg {
                out.push('\u{2212}');
            }
        } else {
            out.push_str(if neg { " \u{2212} " } else { " + " });
        }
        out.push_str(&mag);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = self.terms.iter().map(|(m, c)| render_term(c, m, ""));
        write!(f, "{}", join_terms(rendered))
    }
}

impl fmt::Debug for ScalarExpr {
    /// Debug matches Display so test failures stay readable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter_b() -> ScalarExpr {
        ScalarExpr::param(0, 1, 0).scale(&GaussianRational::ratio(1, 4))
    }

    #[test]
    fn canonical_term_rendering() {
        let g_term = &quarter_b() * &ScalarExpr::func(FuncSymbol::G);
        assert_eq!(g_term.to_string(), "(b/4)g");

        let rho_df = ScalarExpr::param(0, 0, 1)
            .mul(ScalarExpr::func(FuncSymbol::F).differentiate(VDir::V1));
        assert_eq!(rho_df.to_string(), "\u{3c1}V\u{2081}(f)");

        let neg = -ScalarExpr::func(FuncSymbol::F).differentiate(VDir::V2Bar);
        assert_eq!(neg.to_string(), "\u{2212}V\u{304}\u{2082}(f)");
    }

    #[test]
    fn display_order_is_func_then_length_then_params() {
        let eq = &(&ScalarExpr::func(FuncSymbol::G).differentiate(VDir::V1Bar)
            - &ScalarExpr::func(FuncSymbol::F).differentiate(VDir::V2Bar))
            + &(&quarter_b() * &ScalarExpr::func(FuncSymbol::G));
        assert_eq!(
            eq.to_string(),
            "\u{2212}V\u{304}\u{2082}(f) + V\u{304}\u{2081}(g) + (b/4)g"
        );
    }

    #[test]
    fn mixed_coefficients_render() {
        let c = ScalarExpr::constant(GaussianRational::new(
            Rational::from_int(1),
            Rational::from_int(2),
        ));
        assert_eq!(c.to_string(), "(1+2i)");
        assert_eq!(ScalarExpr::zero().to_string(), "0");
        assert_eq!(ScalarExpr::one().to_string(), "1");
        assert_eq!(ScalarExpr::int(-3).to_string(), "\u{2212}3");
        assert_eq!(ScalarExpr::param(0, 0, -1).to_string(), "1/\u{3c1}");
        let half_i = ScalarExpr::i().scale(&GaussianRational::ratio(1, 2));
        assert_eq!(half_i.to_string(), "i/2");
        assert_eq!(
            (&half_i * &ScalarExpr::param(0, -1, 0)).to_string(),
            "i/2b"
        );
    }

    #[test]
    fn differentiation_is_linear_and_kills_constants() {
        let expr = &(&ScalarExpr::param(2, -1, 0) * &ScalarExpr::func(FuncSymbol::G))
            + &ScalarExpr::int(7);
        let d = expr.differentiate(VDir::V2);
        assert_eq!(d.len(), 1);
        let (m, _) = d.terms().next().unwrap();
        assert_eq!(m.a_pow, 2);
        assert_eq!(m.b_pow, -1);
        assert_eq!(
            m.func.as_ref().unwrap().word,
            vec![VDir::V2]
        );
    }

    #[test]
    fn conjugation_is_an_involution() {
        let expr = &(&ScalarExpr::i() * &ScalarExpr::func(FuncSymbol::F))
            .differentiate(VDir::V2Bar)
            + &ScalarExpr::param(1, 0, -1);
        assert_eq!(expr.conj().conj(), expr);
        assert_eq!(
            ScalarExpr::func(FuncSymbol::F).conj(),
            ScalarExpr::func(FuncSymbol::FBar)
        );
    }

    #[test]
    fn addition_cancels_exactly() {
        let x = &quarter_b() * &ScalarExpr::func(FuncSymbol::G);
        assert!((&x - &x).is_zero());
    }

    #[test]
    #[should_panic(expected = "nonlinear")]
    fn function_products_are_rejected() {
        let f = ScalarExpr::func(FuncSymbol::F);
        let g = ScalarExpr::func(FuncSymbol::G);
        let _ = &f * &g;
    }
}

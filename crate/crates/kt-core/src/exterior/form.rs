//! Invariant forms over the complex coframe, with exact coefficients.
//!
//! The four generators φ¹, φ², φ̄¹, φ̄² are indexed 0..4 and a wedge
//! monomial is a 4-bit mask, its generators taken in increasing index
//! order. A form maps masks to [`ScalarExpr`] coefficients. The exterior
//! derivative lives on [`CoframeStructure`], which records dφⁱ for each
//! generator so tests can swap in a tampered structure and watch the
//! downstream identities fail.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::numbers::{GaussianRational, Rational};
use crate::KtError;

use super::scalar::{join_terms, render_term, ScalarExpr, VDir};

/// Sign of φ^left ∧ φ^right as a sorted monomial: None when a generator
/// repeats, otherwise the parity of the merge.
fn merge_sign(left: u8, right: u8) -> Option<i32> {
    if left & right != 0 {
        return None;
    }
    let mut inversions = 0;
    for j in 0..4 {
        if right & (1 << j) != 0 {
            inversions += (left >> (j + 1)).count_ones();
        }
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Generator index for the complex conjugate: 0 ↔ 2, 1 ↔ 3.
pub(crate) fn conjugate_generator(bit: usize) -> usize {
    bit ^ 2
}

fn generator_string(mask: u8) -> String {
    const SINGLE: [&str; 4] = [
        "\u{3c6}\u{b9}",
        "\u{3c6}\u{b2}",
        "\u{3c6}\u{304}\u{b9}",
        "\u{3c6}\u{304}\u{b2}",
    ];
    match mask.count_ones() {
        0 => String::new(),
        1 => SINGLE[mask.trailing_zeros() as usize].to_string(),
        _ => {
            let mut s = String::from("\u{3c6}^{");
            for bit in 0..4 {
                if mask & (1 << bit) != 0 {
                    s.push(if bit % 2 == 0 { '1' } else { '2' });
                    if bit >= 2 {
                        s.push('\u{304}');
                    }
                }
            }
            s.push('}');
            s
        }
    }
}

/// A complex-valued invariant form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<u8, ScalarExpr>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    /// The basis monomial φ^mask with coefficient 1.
    pub fn monomial(mask: u8) -> Self {
        Form::term(mask, ScalarExpr::one())
    }

    /// Single generator φⁱ, i in 0..4.
    pub fn generator(i: usize) -> Self {
        assert!(i < 4, "generator index out of range");
        Form::monomial(1 << i)
    }

    /// A 0-form.
    pub fn from_scalar(coeff: ScalarExpr) -> Self {
        Form::term(0, coeff)
    }

    pub fn term(mask: u8, coeff: ScalarExpr) -> Self {
        assert!(mask < 16, "mask out of range");
        let mut f = Form::zero();
        f.add_term(mask, coeff);
        f
    }

    pub fn add_term(&mut self, mask: u8, coeff: ScalarExpr) {
        assert!(mask < 16, "mask out of range");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &ScalarExpr)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Coefficient of φ^mask (zero if absent).
    pub fn coefficient(&self, mask: u8) -> ScalarExpr {
        self.terms.get(&mask).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    /// Ok(None) for the zero form, Ok(Some(k)) when every monomial has
    /// degree k, and an error for mixed degrees.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, KtError> {
        let mut degree = None;
        for mask in self.terms.keys() {
            let k = mask.count_ones();
            match degree {
                None => degree = Some(k),
                Some(d) if d != k => return Err(KtError::NonHomogeneous),
                Some(_) => {}
            }
        }
        Ok(degree)
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (lm, lc) in &self.terms {
            for (rm, rc) in &other.terms {
                if let Some(sign) = merge_sign(*lm, *rm) {
                    let mut coeff = lc * rc;
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    out.add_term(lm | rm, coeff);
                }
            }
        }
        out
    }

    pub fn scalar_mul(&self, s: &ScalarExpr) -> Form {
        let mut out = Form::zero();
        for (mask, coeff) in &self.terms {
            out.add_term(*mask, coeff * s);
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Form {
        let mut out = Form::zero();
        for (mask, coeff) in &self.terms {
            out.add_term(*mask, coeff.scale(c));
        }
        out
    }

    /// Complex conjugation: coefficients conjugate and each generator
    /// maps to its barred partner, with the sign of re-sorting.
    pub fn conj(&self) -> Form {
        let mut out = Form::zero();
        for (mask, coeff) in &self.terms {
            let mapped: Vec<usize> = (0..4)
                .filter(|b| mask & (1 << b) != 0)
                .map(conjugate_generator)
                .collect();
            let mut inversions = 0;
            for i in 0..mapped.len() {
                for j in i + 1..mapped.len() {
                    if mapped[i] > mapped[j] {
                        inversions += 1;
                    }
                }
            }
            let new_mask = mapped.iter().fold(0u8, |m, b| m | (1 << b));
            let mut c = coeff.conj();
            if inversions % 2 == 1 {
                c = -c;
            }
            out.add_term(new_mask, c);
        }
        out
    }

    /// The compatible symplectic form of the structure family:
    /// −2i(φ¹∧φ̄¹ + ρ·φ²∧φ̄²).
    pub fn omega() -> Form {
        let minus_2i = GaussianRational::new(Rational::zero(), Rational::from_int(-2));
        let mut f = Form::term(0b0101, ScalarExpr::constant(minus_2i.clone()));
        f.add_term(0b1010, ScalarExpr::param(0, 0, 1).scale(&minus_2i));
        f
    }

    /// Riemannian volume form ρ·φ¹∧φ²∧φ̄¹∧φ̄², oriented by ω∧ω.
    pub fn volume() -> Form {
        Form::term(0b1111, ScalarExpr::param(0, 0, 1))
    }

    /// The real coframe e¹..e⁴ (index 0..4) expanded over the complex
    /// generators. The last leg carries the (a ± i)/2b weights that tie
    /// the two frames together.
    pub fn e_coframe(i: usize) -> Form {
        let half = GaussianRational::ratio(1, 2);
        let half_i = GaussianRational::new(Rational::zero(), Rational::new(1, 2));
        match i {
            0 => {
                let mut f = Form::term(0b0001, ScalarExpr::constant(half.clone()));
                f.add_term(0b0100, ScalarExpr::constant(half));
                f
            }
            1 => {
                let mut f = Form::term(0b0001, ScalarExpr::constant(-&half_i));
                f.add_term(0b0100, ScalarExpr::constant(half_i));
                f
            }
            2 => {
                let mut f = Form::term(0b0010, ScalarExpr::constant(half.clone()));
                f.add_term(0b1000, ScalarExpr::constant(half));
                f
            }
            3 => {
                // −(a−i)/(2b)·φ² − (a+i)/(2b)·φ̄²
                let a_over_2b = ScalarExpr::param(1, -1, 0).scale(&half);
                let i_over_2b = ScalarExpr::param(0, -1, 0).scale(&half_i);
                let mut f = Form::term(0b0010, &(-&a_over_2b) + &i_over_2b);
                f.add_term(0b1000, &(-&a_over_2b) - &i_over_2b);
                f
            }
            _ => panic!("coframe index out of range"),
        }
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        for (mask, coeff) in &rhs.terms {
            out.add_term(*mask, coeff.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        let mut out = Form::zero();
        for (mask, coeff) in &self.terms {
            out.add_term(*mask, -coeff);
        }
        out
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = self.terms.iter().map(|(mask, coeff)| {
            let suffix = generator_string(*mask);
            let mut it = coeff.terms();
            match (it.next(), it.next()) {
                (Some((m, c)), None) => render_term(c, m, &suffix),
                _ => (false, format!("({coeff}){suffix}")),
            }
        });
        write!(f, "{}", join_terms(rendered))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The differentials of the four coframe generators, defining d on all
/// invariant forms by the graded Leibniz rule.
pub struct CoframeStructure {
    d_gen: [Form; 4],
}

impl CoframeStructure {
    /// The structure of the underlying nilmanifold family: φ¹ and φ̄¹
    /// are closed and dφ² = (b/4)(φ¹∧φ² + φ¹∧φ̄² + φ²∧φ̄¹ − φ̄¹∧φ̄²),
    /// with dφ̄² its conjugate.
    pub fn standard() -> Self {
        let quarter_b = ScalarExpr::param(0, 1, 0).scale(&GaussianRational::ratio(1, 4));
        let mut dphi2 = Form::term(0b0011, quarter_b.clone());
        dphi2.add_term(0b1001, quarter_b.clone());
        dphi2.add_term(0b0110, quarter_b.clone());
        dphi2.add_term(0b1100, -&quarter_b);
        Self::with_dphi2(dphi2)
    }

    /// A structure with a custom dφ² (dφ̄² is kept as its conjugate).
    /// Exists so tests can perturb one structure constant and check
    /// which identities genuinely depend on it.
    pub fn with_dphi2(dphi2: Form) -> Self {
        let conj = dphi2.conj();
        CoframeStructure {
            d_gen: [Form::zero(), dphi2, Form::zero(), conj],
        }
    }

    pub fn d_generator(&self, i: usize) -> &Form {
        &self.d_gen[i]
    }

    /// Exterior derivative: d(c·φ^I) = dc ∧ φ^I + c·d(φ^I), where dc
    /// expands over the dual frame directions and d(φ^I) distributes
    /// with alternating signs.
    pub fn d(&self, form: &Form) -> Form {
        let mut out = Form::zero();
        for (mask, coeff) in form.terms() {
            let mut dc = Form::zero();
            for dir in VDir::ALL {
                dc.add_term(1 << dir.generator(), coeff.differentiate(dir));
            }
            out = &out + &dc.wedge(&Form::monomial(mask));

            let bits: Vec<usize> = (0..4).filter(|b| mask & (1 << b) != 0).collect();
            for (k, &bit) in bits.iter().enumerate() {
                let low = (1u8 << bit) - 1;
                let before = mask & low;
                let after = mask & !low & !(1 << bit);
                let mut piece = Form::monomial(before)
                    .wedge(&self.d_gen[bit])
                    .wedge(&Form::monomial(after))
                    .scalar_mul(coeff);
                if k % 2 == 1 {
                    piece = -piece;
                }
                out = &out + &piece;
            }
        }
        out
    }
}

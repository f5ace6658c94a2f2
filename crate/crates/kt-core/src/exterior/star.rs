//! Hodge star on invariant forms.
//!
//! The metric pairs each coframe generator with its barred partner:
//! ⟨φ¹, φ̄¹⟩ = 1 and ⟨φ², φ̄²⟩ = 1/ρ under the bilinear extension, all
//! other pairs vanish, and the volume form is ρ·φ¹∧φ²∧φ̄¹∧φ̄². For a
//! basis monomial φ^γ the only monomial pairing against it is its
//! partner set, so *φ^γ is a single monomial on the complementary mask
//! with an exact ±ρ^k coefficient.

use crate::KtError;

use super::form::{conjugate_generator, Form};
use super::scalar::ScalarExpr;

/// Parity of the permutation sorting `seq` ascending: +1 or −1.
fn sort_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Star of a single basis monomial: the complementary mask and the
/// exact coefficient sign·ρ^pow.
fn star_monomial(gamma: u8) -> (u8, i32, i32) {
    let bits: Vec<usize> = (0..4).filter(|b| gamma & (1 << b) != 0).collect();

    // Pairing weight: the partner determinant contributes the sign of
    // the matching permutation and 1/ρ per second-pair generator.
    let partners: Vec<usize> = bits.iter().map(|&b| conjugate_generator(b)).collect();
    let pairing_sign = sort_sign(&partners);
    let rho_from_pairing = -(bits.iter().filter(|&&b| b == 1 || b == 3).count() as i32);

    let alpha = partners.iter().fold(0u8, |m, b| m | (1 << b));
    let delta = !alpha & 0b1111;

    // Coefficient fixed by φ^α ∧ (*φ^γ) = ⟨φ^α, φ^γ⟩·vol.
    let mut concat: Vec<usize> = (0..4).filter(|b| alpha & (1 << b) != 0).collect();
    concat.extend((0..4).filter(|b| delta & (1 << b) != 0));
    let completion_sign = sort_sign(&concat);

    (delta, pairing_sign * completion_sign, rho_from_pairing + 1)
}

/// Hodge star of a homogeneous form. Mixed-degree input is an error;
/// the zero form maps to zero.
pub fn star(form: &Form) -> Result<Form, KtError> {
    form.homogeneous_degree()?;
    let mut out = Form::zero();
    for (gamma, coeff) in form.terms() {
        let (delta, sign, rho_pow) = star_monomial(gamma);
        let mut weight = ScalarExpr::param(0, 0, rho_pow);
        if sign < 0 {
            weight = -weight;
        }
        out.add_term(delta, coeff * &weight);
    }
    Ok(out)
}

//! Derivation of the harmonic system for a candidate (0,1)-form.
//!
//! The candidate is s = f·φ̄¹ + g·φ̄². Harmonicity of s reduces to two
//! scalar equations: the component of ds on φ̄¹∧φ̄² must vanish, and so
//! must d(*s), a top form with a single component. The derivation is
//! exposed step by step, because one structural fact does real work:
//! the bare-f term in d(*s) cancels exactly between the dφ² and dφ̄²
//! contributions, and tampering with one structure constant breaks it.

use crate::KtError;

use super::form::{CoframeStructure, Form};
use super::scalar::{FuncSymbol, ScalarExpr};
use super::star::star;

/// Mask of φ̄¹∧φ̄², the antiholomorphic 2-form direction.
pub const ANTIHOLOMORPHIC_MASK: u8 = 0b1100;
/// Mask of the top monomial φ¹∧φ²∧φ̄¹∧φ̄².
pub const TOP_MASK: u8 = 0b1111;

/// One labelled line of the derivation transcript.
#[derive(Clone, Debug)]
pub struct DerivationStep {
    pub label: String,
    pub value: String,
}

/// The exact cancellation behind the coclosure equation: d of the two
/// starred basis 3-forms, split into their structure-constant pieces.
#[derive(Clone, Debug)]
pub struct CancellationExhibit {
    /// dφ² ∧ (φ̄¹∧φ̄²)
    pub from_dphi2: Form,
    /// (φ²∧φ̄¹) ∧ dφ̄²
    pub from_dphibar2: Form,
    /// d(φ²∧φ̄¹∧φ̄²), the sum of the two pieces above.
    pub d_of_starred_fbar_basis: Form,
    /// d(φ¹∧φ̄¹∧φ̄²), which vanishes degree by degree.
    pub d_of_starred_gbar_basis: Form,
}

/// The derived harmonic system with its full audit trail.
#[derive(Clone, Debug)]
pub struct HarmonicSystem {
    pub candidate: Form,
    pub differential: Form,
    /// Coefficient of φ̄¹∧φ̄² in ds; first equation of the system.
    pub antiholomorphic_residual: ScalarExpr,
    pub costar: Form,
    pub codifferential: Form,
    /// Coefficient of the top monomial in d(*s); second equation.
    pub coclosure_residual: ScalarExpr,
    pub cancellation: CancellationExhibit,
    pub steps: Vec<DerivationStep>,
}

impl HarmonicSystem {
    /// The two equations in canonical rendering, " = 0" included.
    pub fn equations(&self) -> [String; 2] {
        [
            format!("{} = 0", self.antiholomorphic_residual),
            format!("{} = 0", self.coclosure_residual),
        ]
    }
}

/// Run the derivation against a coframe structure.
pub fn derive_harmonic_system(structure: &CoframeStructure) -> Result<HarmonicSystem, KtError> {
    let mut steps = Vec::new();
    let mut record = |label: &str, value: String| {
        steps.push(DerivationStep {
            label: label.to_string(),
            value,
        });
    };

    let candidate = &Form::term(0b0100, ScalarExpr::func(FuncSymbol::F))
        + &Form::term(0b1000, ScalarExpr::func(FuncSymbol::G));
    record("s", candidate.to_string());

    let differential = structure.d(&candidate);
    record("ds", differential.to_string());
    let antiholomorphic_residual = differential.coefficient(ANTIHOLOMORPHIC_MASK);
    record(
        "ds on \u{3c6}\u{304}\u{b9}\u{2227}\u{3c6}\u{304}\u{b2}",
        antiholomorphic_residual.to_string(),
    );

    let costar = star(&candidate)?;
    record("*s", costar.to_string());

    // d of the two starred basis 3-forms, with the dφ²/dφ̄² pieces of
    // the first shown separately: their exact cancellation is why no
    // underived f term survives in the final equation.
    let antihol_pair = Form::monomial(ANTIHOLOMORPHIC_MASK);
    let from_dphi2 = structure.d_generator(1).wedge(&antihol_pair);
    let from_dphibar2 = Form::monomial(0b0110).wedge(structure.d_generator(3));
    let d_of_starred_fbar_basis = structure.d(&Form::monomial(0b1110));
    let d_of_starred_gbar_basis = structure.d(&Form::monomial(0b1101));
    record("d\u{3c6}\u{b2} \u{2227} (\u{3c6}\u{304}\u{b9}\u{2227}\u{3c6}\u{304}\u{b2})", from_dphi2.to_string());
    record("(\u{3c6}\u{b2}\u{2227}\u{3c6}\u{304}\u{b9}) \u{2227} d\u{3c6}\u{304}\u{b2}", from_dphibar2.to_string());
    record(
        "d(\u{3c6}\u{b2}\u{2227}\u{3c6}\u{304}\u{b9}\u{2227}\u{3c6}\u{304}\u{b2})",
        d_of_starred_fbar_basis.to_string(),
    );
    record(
        "d(\u{3c6}\u{b9}\u{2227}\u{3c6}\u{304}\u{b9}\u{2227}\u{3c6}\u{304}\u{b2})",
        d_of_starred_gbar_basis.to_string(),
    );

    let codifferential = structure.d(&costar);
    record("d*s", codifferential.to_string());
    let coclosure_residual = codifferential.coefficient(TOP_MASK);
    record("d*s on the volume monomial", coclosure_residual.to_string());

    record(
        "first harmonicity equation",
        format!("{antiholomorphic_residual} = 0"),
    );
    record(
        "second harmonicity equation",
        format!("{coclosure_residual} = 0"),
    );

    Ok(HarmonicSystem {
        candidate,
        differential,
        antiholomorphic_residual,
        costar,
        codifferential,
        coclosure_residual,
        cancellation: CancellationExhibit {
            from_dphi2,
            from_dphibar2,
            d_of_starred_fbar_basis,
            d_of_starred_gbar_basis,
        },
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::scalar::VDir;
    use crate::numbers::GaussianRational;

    fn derived() -> HarmonicSystem {
        derive_harmonic_system(&CoframeStructure::standard()).unwrap()
    }

    fn quarter_b() -> ScalarExpr {
        ScalarExpr::param(0, 1, 0).scale(&GaussianRational::ratio(1, 4))
    }

    #[test]
    fn canonical_equations_are_stable() {
        assert_eq!(
            derived().equations(),
            [
                "\u{2212}V\u{304}\u{2082}(f) + V\u{304}\u{2081}(g) + (b/4)g = 0".to_string(),
                "\u{3c1}V\u{2081}(f) + V\u{2082}(g) = 0".to_string(),
            ]
        );
    }

    #[test]
    fn residuals_match_hand_expansion() {
        let system = derived();
        let f = ScalarExpr::func(FuncSymbol::F);
        let g = ScalarExpr::func(FuncSymbol::G);

        let first = &(&g.differentiate(VDir::V1Bar) - &f.differentiate(VDir::V2Bar))
            + &(&quarter_b() * &g);
        assert_eq!(system.antiholomorphic_residual, first);

        let second = &(&ScalarExpr::param(0, 0, 1) * &f.differentiate(VDir::V1))
            + &g.differentiate(VDir::V2);
        assert_eq!(system.coclosure_residual, second);
    }

    #[test]
    fn differential_components_follow_leibniz() {
        let system = derived();
        let g = ScalarExpr::func(FuncSymbol::G);
        // Component on φ¹∧φ² comes only from g·dφ̄².
        assert_eq!(
            system.differential.coefficient(0b0011),
            -&(&quarter_b() * &g)
        );
        // Component on φ²∧φ̄¹ mixes a derivative of f with the g term.
        let f = ScalarExpr::func(FuncSymbol::F);
        assert_eq!(
            system.differential.coefficient(0b0110),
            &f.differentiate(VDir::V2) - &(&quarter_b() * &g)
        );
    }

    #[test]
    fn bare_f_terms_cancel_exactly() {
        let system = derived();
        let quarter_b_vol = Form::term(TOP_MASK, quarter_b());
        assert_eq!(system.cancellation.from_dphi2, quarter_b_vol);
        assert_eq!(system.cancellation.from_dphibar2, -quarter_b_vol);
        assert!(system.cancellation.d_of_starred_fbar_basis.is_zero());
        assert!(system.cancellation.d_of_starred_gbar_basis.is_zero());
        // And consequently no underived f or g survives in the second
        // equation: every term carries a derivative.
        assert!(system
            .coclosure_residual
            .terms()
            .all(|(m, _)| !m.func.as_ref().unwrap().word.is_empty()));
    }

    #[test]
    fn tampered_structure_breaks_the_cancellation() {
        // Scale only the φ¹∧φ² component of dφ². The conjugate piece
        // is built from dφ̄² and no longer balances it.
        let standard = CoframeStructure::standard();
        let mut dphi2 = standard.d_generator(1).clone();
        let doubled = dphi2.coefficient(0b0011);
        dphi2.add_term(0b0011, doubled);
        let tampered = derive_harmonic_system(&CoframeStructure::with_dphi2(dphi2)).unwrap();

        assert!(!tampered.cancellation.d_of_starred_fbar_basis.is_zero());
        let leak = &tampered.coclosure_residual - &derived().coclosure_residual;
        let expected = &ScalarExpr::param(0, 1, 1).scale(&GaussianRational::ratio(1, 4))
            * &ScalarExpr::func(FuncSymbol::F);
        assert_eq!(leak, expected);
        assert_ne!(tampered.equations(), derived().equations());
    }

    #[test]
    fn transcript_covers_the_route() {
        let system = derived();
        let labels: Vec<&str> = system.steps.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels.first(), Some(&"s"));
        assert!(labels.contains(&"ds"));
        assert!(labels.contains(&"*s"));
        assert!(labels.contains(&"d*s"));
        assert_eq!(
            system.steps.last().map(|s| s.value.as_str()),
            Some("\u{3c1}V\u{2081}(f) + V\u{2082}(g) = 0")
        );
    }
}

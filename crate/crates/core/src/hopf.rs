//! The interpolating group scheme `G = Spec Z[t,x]_{1+tx}`.
//!
//! `G` carries a Hopf structure whose fiber at an invertible value of `t`
//! is the multiplicative group (via `y = 1 + tx`) and whose fiber at
//! `t = 0` is the additive group. This module holds a presentation of the
//! structure maps by generator images, symbolic verification of the Hopf
//! axioms, the induced group law on field points, and the compatibility
//! identity between the coordinate action and the vector field
//! `(1 + t·x) ∂/∂x`.
//!
//! Axioms are checked on the generator `x` only: every structure map is a
//! `Z[t]`-algebra homomorphism, hence determined by its value on `x`, so
//! an identity of such maps holds iff it holds on `x`.

use crate::diagnostics::Diagnostics;
use crate::exactalg::intpoly::IntPoly;
use crate::exactalg::localized::{LocalizedElement, LocalizedError};
use crate::exactalg::rat::Rat;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    /// `1 + tau·a = 0`: the coordinate lies outside the group of points.
    #[error("not a point of the group: 1 + tau*{0} vanishes")]
    NotAPoint(Rat),
}

/// A presentation of the Hopf structure by generator images.
///
/// Every image must lie in the declared localization: denominators are
/// products of the distinguished units `1 + t·x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfPresentation {
    /// Images of `x ⊗ 1` and `1 ⊗ x` under multiplication (one generator).
    pub mult: (LocalizedElement, LocalizedElement),
    /// Image of `x` under comultiplication (two tensor-factor generators).
    pub comult: LocalizedElement,
    /// Image of `x` under the counit (no chart generators).
    pub counit: LocalizedElement,
    /// Image of `x` under the antipode (one generator).
    pub antipode: LocalizedElement,
}

impl HopfPresentation {
    /// The presentation interpolating `G_m` to `G_a`:
    /// multiplication merges factors, `Δx = x⊗1 + 1⊗x + t·x⊗x`,
    /// `εx = 0`, `Sx = −x/(1+tx)`.
    pub fn standard() -> Self {
        let x1 = LocalizedElement::gen(2, 0);
        let x2 = LocalizedElement::gen(2, 1);
        let t2 = LocalizedElement::t(2);
        let comult = &(&x1 + &x2) + &(&t2 * &(&x1 * &x2));
        let x = LocalizedElement::gen(1, 0);
        let antipode = LocalizedElement::new(1, -x.numerator(), vec![1]);
        HopfPresentation {
            mult: (x.clone(), x),
            comult,
            counit: LocalizedElement::zero(0),
            antipode,
        }
    }
}

/// Names of the verified axioms, in report order.
pub const AXIOM_NAMES: [&str; 4] = [
    "coassociativity",
    "counit",
    "antipode",
    "localization-compatibility",
];

/// Per-axiom outcome: `Ok(())` on pass, otherwise the nonzero residual
/// elements (or a textual reason when the computation escapes the ring).
#[derive(Debug, Clone)]
pub struct AxiomOutcome {
    pub name: &'static str,
    pub result: Result<(), AxiomFailure>,
}

#[derive(Debug, Clone)]
pub enum AxiomFailure {
    /// Residual elements that should have been zero.
    Residuals(Vec<LocalizedElement>),
    /// The check could not even be formed inside the localization.
    Escape(String),
}

#[derive(Debug, Clone, Default)]
pub struct AxiomsReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomsReport {
    pub fn pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.result.is_ok())
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let mut d = Diagnostics::new();
        for o in &self.outcomes {
            match &o.result {
                Ok(()) => {}
                Err(AxiomFailure::Residuals(rs)) => {
                    let shown: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
                    d.fail(o.name, "generator x", format!("residual {}", shown.join(", ")));
                }
                Err(AxiomFailure::Escape(msg)) => d.fail(o.name, "generator x", msg.clone()),
            }
        }
        d
    }

    /// Residuals of the named axiom, if it failed with residuals.
    pub fn residuals(&self, name: &str) -> Option<&[LocalizedElement]> {
        self.outcomes.iter().find(|o| o.name == name).and_then(|o| match &o.result {
            Err(AxiomFailure::Residuals(rs)) => Some(rs.as_slice()),
            _ => None,
        })
    }
}

fn outcome(name: &'static str, residuals: Result<Vec<LocalizedElement>, LocalizedError>) -> AxiomOutcome {
    let result = match residuals {
        Err(e) => Err(AxiomFailure::Escape(e.to_string())),
        Ok(rs) => {
            let nonzero: Vec<LocalizedElement> = rs.into_iter().filter(|r| !r.is_zero()).collect();
            if nonzero.is_empty() {
                Ok(())
            } else {
                Err(AxiomFailure::Residuals(nonzero))
            }
        }
    };
    AxiomOutcome { name, result }
}

/// Checks coassociativity, the counit laws, the antipode laws, and the
/// compatibility of comultiplication with the localization, all as exact
/// identities applied to the generator.
pub fn verify_axioms(h: &HopfPresentation) -> AxiomsReport {
    let x1 = LocalizedElement::gen(1, 0);
    let mut report = AxiomsReport::default();

    // (Δ⊗id)Δ = (id⊗Δ)Δ in three tensor factors.
    let coassoc = (|| {
        let lhs = h.comult.apply_hom(3, &[h.comult.embed(3, &[0, 1]), LocalizedElement::gen(3, 2)])?;
        let rhs = h.comult.apply_hom(3, &[LocalizedElement::gen(3, 0), h.comult.embed(3, &[1, 2])])?;
        Ok(vec![&lhs - &rhs])
    })();
    report.outcomes.push(outcome(AXIOM_NAMES[0], coassoc));

    // (ε⊗id)Δ = id = (id⊗ε)Δ.
    let counit = (|| {
        let eps_in_one = h.counit.embed(1, &[]);
        let left = h.comult.apply_hom(1, &[eps_in_one.clone(), x1.clone()])?;
        let right = h.comult.apply_hom(1, &[x1.clone(), eps_in_one])?;
        Ok(vec![&left - &x1, &right - &x1])
    })();
    report.outcomes.push(outcome(AXIOM_NAMES[1], counit));

    // m(S⊗id)Δ = η∘ε = m(id⊗S)Δ.
    let antipode = (|| {
        let s_then_m1 = h.antipode.apply_hom(1, std::slice::from_ref(&h.mult.0))?;
        let s_then_m2 = h.antipode.apply_hom(1, std::slice::from_ref(&h.mult.1))?;
        let left = h.comult.apply_hom(1, &[s_then_m1, h.mult.1.clone()])?;
        let right = h.comult.apply_hom(1, &[h.mult.0.clone(), s_then_m2])?;
        let unit_eps = h.counit.embed(1, &[]);
        Ok(vec![&left - &unit_eps, &right - &unit_eps])
    })();
    report.outcomes.push(outcome(AXIOM_NAMES[2], antipode));

    // 1 + t·Δx must factor as (1 + t·x_1)(1 + t·x_2); this is what makes
    // Δ land in the localized tensor product at all.
    let compat: Result<_, LocalizedError> = {
        let one = LocalizedElement::one(2);
        let t = LocalizedElement::t(2);
        let lhs = &one + &(&t * &h.comult);
        let units = &LocalizedElement::unit_poly(2, 0) * &LocalizedElement::unit_poly(2, 1);
        let rhs = LocalizedElement::from_poly(2, units);
        Ok(vec![&lhs - &rhs])
    };
    report.outcomes.push(outcome(AXIOM_NAMES[3], compat));

    report
}

/// Diagnostics form of [`verify_axioms`].
pub fn hopf_verify_axioms(h: &HopfPresentation) -> Diagnostics {
    verify_axioms(h).diagnostics()
}

/// Verifies that `y = 1 + tx` is grouplike: `Δy = y⊗y`, `εy = 1`,
/// `Sy = y^{-1}`. After inverting `t` this is the isomorphism with the
/// multiplicative group.
pub fn check_iso_to_gm(h: &HopfPresentation) -> AxiomsReport {
    let y1 = {
        let one = LocalizedElement::one(1);
        let t = LocalizedElement::t(1);
        &one + &(&t * &LocalizedElement::gen(1, 0))
    };
    let mut report = AxiomsReport::default();

    let grouplike = (|| {
        let lhs = y1.apply_hom(2, std::slice::from_ref(&h.comult))?;
        let units = &LocalizedElement::unit_poly(2, 0) * &LocalizedElement::unit_poly(2, 1);
        Ok(vec![&lhs - &LocalizedElement::from_poly(2, units)])
    })();
    report.outcomes.push(outcome("comultiplication-grouplike", grouplike));

    let counit_one = (|| {
        let lhs = y1.apply_hom(0, std::slice::from_ref(&h.counit))?;
        Ok(vec![&lhs - &LocalizedElement::one(0)])
    })();
    report.outcomes.push(outcome("counit-one", counit_one));

    let antipode_inverse = (|| {
        let lhs = y1.apply_hom(1, std::slice::from_ref(&h.antipode))?;
        let inv = LocalizedElement::new(1, IntPoly::constant(2, 1), vec![1]);
        Ok(vec![&lhs - &inv])
    })();
    report.outcomes.push(outcome("antipode-inverse", antipode_inverse));

    report
}

/// Diagnostics form of [`check_iso_to_gm`].
pub fn hopf_check_iso_to_gm(h: &HopfPresentation) -> Diagnostics {
    check_iso_to_gm(h).diagnostics()
}

/// The group law on points over a field: `a * b = a + b + tau·a·b`.
///
/// The identity is 0 and the inverse is [`inverse`].
pub fn group_law(a: &Rat, b: &Rat, tau: &Rat) -> Result<Rat, HopfError> {
    for v in [a, b] {
        if (Rat::one() + tau * v).is_zero() {
            return Err(HopfError::NotAPoint(v.clone()));
        }
    }
    Ok(a + b + tau * a * b)
}

/// Inverse for [`group_law`]: `a^{-1} = −a/(1 + tau·a)`.
pub fn inverse(a: &Rat, tau: &Rat) -> Result<Rat, HopfError> {
    let denom = Rat::one() + tau * a;
    if denom.is_zero() {
        return Err(HopfError::NotAPoint(a.clone()));
    }
    Ok(-a / denom)
}

use num_traits::One;

/// The coordinate action `α(a, x) = x + a + t·a·x` in variables `(t, a, x)`.
pub fn action_coordinate() -> IntPoly {
    IntPoly::from_terms(3, &[(&[0, 0, 1], 1), (&[0, 1, 0], 1), (&[1, 1, 1], 1)])
}

/// Report of the action-compatibility checks.
#[derive(Debug, Clone)]
pub struct ActionReport {
    /// `(1 + t·x) − ∂α/∂a|_{a=0}` in variables `(t, a, x)`.
    pub derivative_residual: IntPoly,
    /// `α(a, α(b, x)) − α(a*b, x)` in variables `(t, a, b, x)`.
    pub composition_residual: IntPoly,
}

impl ActionReport {
    pub fn pass(&self) -> bool {
        self.derivative_residual.is_zero() && self.composition_residual.is_zero()
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let mut d = Diagnostics::new();
        d.check(
            self.derivative_residual.is_zero(),
            "action-derivative",
            "a = 0",
            format!("residual {}", self.derivative_residual),
        );
        d.check(
            self.composition_residual.is_zero(),
            "action-composition",
            "generic (a, b)",
            format!("residual {}", self.composition_residual),
        );
        d
    }
}

/// Runs the compatibility checks on an arbitrary coordinate action
/// `alpha(t, a, x)`:
/// its `a`-derivative at `a = 0` must be the field coefficient `1 + t·x`,
/// and flowing by `b` then `a` must equal flowing by `a + b + t·a·b`.
pub fn check_action(alpha: &IntPoly) -> ActionReport {
    assert_eq!(alpha.nvars(), 3);
    // target field coefficient 1 + t·x in (t, a, x)
    let target = IntPoly::from_terms(3, &[(&[0, 0, 0], 1), (&[1, 0, 1], 1)]);
    let derivative = alpha.derivative(1).eval_var_zero(1);
    let derivative_residual = &target - &derivative;

    // variables (t, a, b, x)
    let t4 = IntPoly::var(4, 0);
    let a4 = IntPoly::var(4, 1);
    let b4 = IntPoly::var(4, 2);
    let x4 = IntPoly::var(4, 3);
    let inner = alpha.substitute(4, &[t4.clone(), b4.clone(), x4.clone()]);
    let lhs = alpha.substitute(4, &[t4.clone(), a4.clone(), inner]);
    let law = &(&a4 + &b4) + &(&t4 * &(&a4 * &b4));
    let rhs = alpha.substitute(4, &[t4, law, x4]);
    ActionReport {
        derivative_residual,
        composition_residual: &lhs - &rhs,
    }
}

/// Compatibility of the standard action with the field `(1 + t·x) ∂/∂x`.
pub fn action_derivative_check() -> Diagnostics {
    check_action(&action_coordinate()).diagnostics()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{rat, ratq};

    #[test]
    fn standard_presentation_satisfies_all_axioms() {
        let report = verify_axioms(&HopfPresentation::standard());
        assert!(report.pass(), "{}", report.diagnostics());
    }

    #[test]
    fn dropping_the_t_term_breaks_the_antipode() {
        let mut h = HopfPresentation::standard();
        let x1 = LocalizedElement::gen(2, 0);
        let x2 = LocalizedElement::gen(2, 1);
        h.comult = &x1 + &x2;
        let report = verify_axioms(&h);
        assert!(!report.pass());
        // m(S⊗id)Δ(x) = −x/(1+tx) + x = t·x²/(1+tx)
        let residuals = report.residuals("antipode").expect("antipode fails");
        let tx2 = {
            let t = IntPoly::var(2, 0);
            let x = IntPoly::var(2, 1);
            &(&t * &x) * &x
        };
        let expected = LocalizedElement::new(1, tx2, vec![1]);
        assert_eq!(residuals[0], expected);
    }

    #[test]
    fn naive_antipode_fails_except_at_t_zero() {
        let mut h = HopfPresentation::standard();
        h.antipode = -&LocalizedElement::gen(1, 0);
        let report = verify_axioms(&h);
        let residuals = report.residuals("antipode").expect("antipode fails");
        // residual −t·x² vanishes exactly at t = 0
        assert!(!residuals[0].is_zero());
        assert!(residuals[0].specialize_t_zero().is_zero());
    }

    #[test]
    fn grouplike_checks_pass_on_standard_presentation() {
        let report = check_iso_to_gm(&HopfPresentation::standard());
        assert!(report.pass(), "{}", report.diagnostics());
    }

    #[test]
    fn grouplike_residual_without_t_term() {
        let mut h = HopfPresentation::standard();
        let x1 = LocalizedElement::gen(2, 0);
        let x2 = LocalizedElement::gen(2, 1);
        h.comult = &x1 + &x2;
        let report = check_iso_to_gm(&h);
        let residuals = report.residuals("comultiplication-grouplike").unwrap();
        // Δ(1+tx) − (1+tx1)(1+tx2) = −t²·x1·x2
        let expected = {
            let t = IntPoly::var(3, 0);
            let prod = &(&t * &t) * &(&IntPoly::var(3, 1) * &IntPoly::var(3, 2));
            LocalizedElement::from_poly(2, -&prod)
        };
        assert_eq!(residuals[0], expected);
    }

    #[test]
    fn group_law_matches_spec_fixtures() {
        assert_eq!(group_law(&rat(2), &rat(3), &rat(0)).unwrap(), rat(5));
        let g = group_law(&rat(1), &rat(1), &rat(1)).unwrap();
        assert_eq!(g, rat(3));
        // consistency with y-multiplication: (1+1)(1+1) = 1 + 1·3
        assert_eq!(rat(2) * rat(2), rat(1) + rat(1) * g);
        assert_eq!(inverse(&rat(1), &rat(1)).unwrap(), ratq(-1, 2));
        assert!(group_law(&rat(-1), &rat(0), &rat(1)).is_err());
    }

    #[test]
    fn action_checks_pass_and_mutant_fails() {
        assert!(action_derivative_check().pass());
        // α(a,x) = x + a: residual of the derivative check is t·x
        let translation = IntPoly::from_terms(3, &[(&[0, 0, 1], 1), (&[0, 1, 0], 1)]);
        let report = check_action(&translation);
        let tx = IntPoly::from_terms(3, &[(&[1, 0, 1], 1)]);
        assert_eq!(report.derivative_residual, tx);
        // standard action residuals specialize to zero at t = 0
        let standard = check_action(&action_coordinate());
        assert!(standard.derivative_residual.is_zero());
        assert!(standard.derivative_residual.eval_var_zero(0).is_zero());
    }
}

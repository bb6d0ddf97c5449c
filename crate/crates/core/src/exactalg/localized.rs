//! The ring `Z[t, x_1..x_k]` localized at the units `u_i = 1 + t·x_i`.
//!
//! A [`LocalizedElement`] is a numerator polynomial together with a tuple
//! of denominator exponents, denoting `num / Π u_i^{e_i}`. The canonical
//! form divides the numerator by each `u_i` while it is exactly divisible
//! (decrementing the exponent), so structural equality of canonical forms
//! is ring equality.
//!
//! Ring homomorphisms determined by generator images are applied through
//! [`LocalizedElement::apply_hom`]; the images must keep each `1 + t·x_i`
//! invertible, which is checked by attempting the division.

use super::intpoly::IntPoly;
use num_bigint::BigInt;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizedError {
    /// A homomorphism image landed outside the localized ring.
    #[error("result does not lie in the localization (denominator {0} is not a product of distinguished units)")]
    NotInLocalization(String),
}

/// An element of `Z[t, x_1..x_k]` localized at `Π(1 + t·x_i)`.
///
/// Variable 0 of the numerator is `t`; variable `i + 1` is the chart
/// generator `x_i` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedElement {
    ngens: usize,
    num: IntPoly,
    denom_exp: Vec<u32>,
}

impl LocalizedElement {
    /// Wraps `num / Π u_i^{denom_exp[i]}` and normalizes.
    pub fn new(ngens: usize, num: IntPoly, denom_exp: Vec<u32>) -> Self {
        assert_eq!(num.nvars(), ngens + 1);
        assert_eq!(denom_exp.len(), ngens);
        LocalizedElement {
            ngens,
            num,
            denom_exp,
        }
        .normalized()
    }

    pub fn from_poly(ngens: usize, num: IntPoly) -> Self {
        Self::new(ngens, num, vec![0; ngens])
    }

    pub fn zero(ngens: usize) -> Self {
        Self::from_poly(ngens, IntPoly::zero(ngens + 1))
    }

    pub fn one(ngens: usize) -> Self {
        Self::from_poly(ngens, IntPoly::constant(ngens + 1, 1))
    }

    /// The parameter `t`.
    pub fn t(ngens: usize) -> Self {
        Self::from_poly(ngens, IntPoly::var(ngens + 1, 0))
    }

    /// The chart generator `x_i` (0-based).
    pub fn gen(ngens: usize, i: usize) -> Self {
        assert!(i < ngens);
        Self::from_poly(ngens, IntPoly::var(ngens + 1, i + 1))
    }

    /// The distinguished unit `1 + t·x_i` as a polynomial.
    pub fn unit_poly(ngens: usize, i: usize) -> IntPoly {
        let t = IntPoly::var(ngens + 1, 0);
        let x = IntPoly::var(ngens + 1, i + 1);
        &IntPoly::constant(ngens + 1, 1) + &(&t * &x)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom_exponents(&self) -> &[u32] {
        &self.denom_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Canonical form: divide the numerator by each `u_i` while exactly
    /// divisible, decrementing the matching exponent. Idempotent.
    pub fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.denom_exp = vec![0; self.ngens];
            return self;
        }
        for i in 0..self.ngens {
            if self.denom_exp[i] == 0 {
                continue;
            }
            let unit = Self::unit_poly(self.ngens, i);
            while self.denom_exp[i] > 0 {
                match self.num.exact_div(&unit) {
                    Some(q) => {
                        self.num = q;
                        self.denom_exp[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// The pair `(numerator, expanded denominator polynomial)`.
    pub fn as_fraction(&self) -> (IntPoly, IntPoly) {
        let mut den = IntPoly::constant(self.ngens + 1, 1);
        for (i, e) in self.denom_exp.iter().enumerate() {
            let unit = Self::unit_poly(self.ngens, i);
            for _ in 0..*e {
                den = &den * &unit;
            }
        }
        (self.num.clone(), den)
    }

    /// Ring equality via cross multiplication (used to test that the
    /// canonical form respects the equivalence class).
    pub fn equiv(&self, other: &Self) -> bool {
        let (an, ad) = self.as_fraction();
        let (bn, bd) = other.as_fraction();
        &an * &bd == &bn * &ad
    }

    /// Specializes `t = 0`; every denominator unit becomes 1.
    pub fn specialize_t_zero(&self) -> Self {
        Self::from_poly(self.ngens, self.num.eval_var_zero(0))
    }

    /// Applies the `Z[t]`-algebra homomorphism sending `x_i` to `images[i]`
    /// (elements over `out_gens` generators) and `t` to `t`.
    ///
    /// Fails when a denominator unit does not map to a unit of the target
    /// localization.
    pub fn apply_hom(
        &self,
        out_gens: usize,
        images: &[LocalizedElement],
    ) -> Result<LocalizedElement, LocalizedError> {
        assert_eq!(images.len(), self.ngens);
        for im in images {
            assert_eq!(im.ngens, out_gens);
        }
        let nv = out_gens + 1;
        let one = IntPoly::constant(nv, 1);
        let image_fracs: Vec<(IntPoly, IntPoly)> = images.iter().map(|e| e.as_fraction()).collect();

        // Substitute fractions into the numerator, term by term.
        // Common denominator: Π D_i^{deg_{x_i}(num)}.
        let degs: Vec<u32> = (0..self.ngens).map(|i| self.num.degree_in(i + 1)).collect();
        let mut num_total = IntPoly::zero(nv);
        for (exp, coeff) in self.num.terms() {
            let mut term = IntPoly::from_bigint(nv, coeff.clone());
            // t^a maps to t^a
            for _ in 0..exp[0] {
                term = &term * &IntPoly::var(nv, 0);
            }
            for i in 0..self.ngens {
                let (n_i, d_i) = &image_fracs[i];
                for _ in 0..exp[i + 1] {
                    term = &term * n_i;
                }
                for _ in 0..(degs[i] - exp[i + 1]) {
                    term = &term * d_i;
                }
            }
            num_total = &num_total + &term;
        }
        let mut den_total = one.clone();
        for (i, (_, d_i)) in image_fracs.iter().enumerate() {
            for _ in 0..degs[i] {
                den_total = &den_total * d_i;
            }
        }

        // The source denominator Π u_i^{e_i} maps to Π((D_i + t N_i)/D_i)^{e_i}.
        let t = IntPoly::var(nv, 0);
        for (i, e) in self.denom_exp.iter().enumerate() {
            let (n_i, d_i) = &image_fracs[i];
            let mapped_unit = d_i + &(&t * n_i);
            for _ in 0..*e {
                den_total = &den_total * &mapped_unit;
                num_total = &num_total * d_i;
            }
        }

        // Express num_total/den_total over a product of target units.
        let mut denom_exp = vec![0u32; out_gens];
        let mut den = den_total;
        for (j, exp) in denom_exp.iter_mut().enumerate() {
            let unit = Self::unit_poly(out_gens, j);
            while let Some(q) = den.exact_div(&unit) {
                den = q;
                *exp += 1;
            }
        }
        // Remaining cofactor must divide the numerator exactly (possibly ±c).
        if den != one {
            match num_total.exact_div(&den) {
                Some(q) => num_total = q,
                None => return Err(LocalizedError::NotInLocalization(den.to_string())),
            }
        }
        Ok(LocalizedElement::new(out_gens, num_total, denom_exp))
    }

    /// Renames generators: `x_i` becomes `x_{gen_map[i]}` over `out_gens`.
    pub fn embed(&self, out_gens: usize, gen_map: &[usize]) -> LocalizedElement {
        let images: Vec<LocalizedElement> = gen_map
            .iter()
            .map(|&j| LocalizedElement::gen(out_gens, j))
            .collect();
        self.apply_hom(out_gens, &images)
            .expect("generator renaming stays in the localization")
    }
}

impl Add for &LocalizedElement {
    type Output = LocalizedElement;
    fn add(self, rhs: &LocalizedElement) -> LocalizedElement {
        assert_eq!(self.ngens, rhs.ngens);
        // common denominator: exponentwise max
        let mut num_a = self.num.clone();
        let mut num_b = rhs.num.clone();
        let mut exps = vec![0u32; self.ngens];
        for (i, slot) in exps.iter_mut().enumerate() {
            let (ea, eb) = (self.denom_exp[i], rhs.denom_exp[i]);
            let m = ea.max(eb);
            *slot = m;
            let unit = LocalizedElement::unit_poly(self.ngens, i);
            for _ in 0..(m - ea) {
                num_a = &num_a * &unit;
            }
            for _ in 0..(m - eb) {
                num_b = &num_b * &unit;
            }
        }
        LocalizedElement::new(self.ngens, &num_a + &num_b, exps)
    }
}

impl Sub for &LocalizedElement {
    type Output = LocalizedElement;
    fn sub(self, rhs: &LocalizedElement) -> LocalizedElement {
        self + &(-rhs)
    }
}

impl Neg for &LocalizedElement {
    type Output = LocalizedElement;
    fn neg(self) -> LocalizedElement {
        LocalizedElement {
            ngens: self.ngens,
            num: -&self.num,
            denom_exp: self.denom_exp.clone(),
        }
    }
}

impl Mul for &LocalizedElement {
    type Output = LocalizedElement;
    fn mul(self, rhs: &LocalizedElement) -> LocalizedElement {
        assert_eq!(self.ngens, rhs.ngens);
        let exps: Vec<u32> = self
            .denom_exp
            .iter()
            .zip(&rhs.denom_exp)
            .map(|(a, b)| a + b)
            .collect();
        LocalizedElement::new(self.ngens, &self.num * &rhs.num, exps)
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp.iter().all(|e| *e == 0) {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        let mut first = true;
        for (i, e) in self.denom_exp.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            write!(f, "(1+t·x{})^{}", i + 1, e)?;
        }
        write!(f, ")")
    }
}

/// Scales by an integer (test and display convenience).
impl LocalizedElement {
    pub fn scale_int(&self, c: i64) -> LocalizedElement {
        let c = IntPoly::from_bigint(self.ngens + 1, BigInt::from(c));
        LocalizedElement::new(self.ngens, &self.num * &c, self.denom_exp.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize, i: usize) -> LocalizedElement {
        LocalizedElement::gen(k, i)
    }

    #[test]
    fn normalize_divides_out_units() {
        // (1 + t x)·x over exponent 1 normalizes to x over exponent 0
        let k = 1;
        let u = LocalizedElement::unit_poly(k, 0);
        let num = &u * x(k, 0).numerator();
        let e = LocalizedElement::new(k, num, vec![1]);
        assert_eq!(e, x(k, 0));
        assert_eq!(e.denom_exponents(), &[0]);
    }

    #[test]
    fn normalize_leaves_irreducible_fractions() {
        let k = 1;
        let e = LocalizedElement::new(k, -x(k, 0).numerator(), vec![1]);
        assert_eq!(e.denom_exponents(), &[1]);
        // idempotent
        assert_eq!(e.clone().normalized(), e);
    }

    #[test]
    fn normalize_two_factor_unit_product() {
        // numerator (1+t x1)(1+t x2) over exponents (1,1) gives 1
        let k = 2;
        let num = &LocalizedElement::unit_poly(k, 0) * &LocalizedElement::unit_poly(k, 1);
        let e = LocalizedElement::new(k, num, vec![1, 1]);
        assert_eq!(e, LocalizedElement::one(k));
    }

    #[test]
    fn hom_keeps_localization_when_units_map_to_units() {
        // Substitute x -> -x/(1+tx) into x: stays in the ring.
        let k = 1;
        let antipode = LocalizedElement::new(k, -x(k, 0).numerator(), vec![1]);
        let img = x(k, 0).apply_hom(k, std::slice::from_ref(&antipode)).unwrap();
        assert_eq!(img, antipode);
    }

    #[test]
    fn hom_detects_escape_from_localization() {
        // x/(1+tx) with x -> x - 1/t is not expressible: simulate with
        // x -> x1 + x2 whose unit image 1 + t(x1+x2) is not a unit product.
        let k = 1;
        let e = LocalizedElement::new(k, x(k, 0).numerator().clone(), vec![1]);
        let sum = &x(2, 0) + &x(2, 1);
        assert!(matches!(
            e.apply_hom(2, &[sum]),
            Err(LocalizedError::NotInLocalization(_))
        ));
    }

    #[test]
    fn cross_multiplication_agrees_with_canonical_equality() {
        let k = 1;
        let u = LocalizedElement::unit_poly(k, 0);
        let a = LocalizedElement::new(k, &u * x(k, 0).numerator(), vec![1]);
        let b = x(k, 0);
        assert!(a.equiv(&b));
        assert_eq!(a, b);
    }
}

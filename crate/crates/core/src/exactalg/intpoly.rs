//! Sparse multivariate polynomials over the integers.
//!
//! Terms live in a `BTreeMap` keyed by exponent tuples, whose lexicographic
//! key order (first variable most significant) doubles as the monomial
//! order for division. Division is only ever needed against a single
//! divisor, for which the standard reduction loop yields a unique
//! remainder, so exact divisibility is `remainder == 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in `nvars` variables with `BigInt` coefficients.
///
/// No zero coefficients are stored; the zero polynomial has an empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::from_bigint(nvars, BigInt::from(c))
    }

    pub fn from_bigint(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exp, BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars);
            p.add_term(exp.to_vec(), BigInt::from(*c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    /// Degree in variable `i` (zero for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    fn add_term(&mut self, exp: Vec<u32>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Leading term under the lexicographic order (first variable most
    /// significant). None for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Division with remainder by a single nonzero divisor under lex order.
    ///
    /// Against a single divisor the remainder is unique, so `f` is exactly
    /// divisible by `d` iff the remainder is zero.
    pub fn divrem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert_eq!(self.nvars, d.nvars);
        let (lt_exp, lt_coeff) = d.leading_term().expect("division by zero polynomial");
        let mut quot = IntPoly::zero(self.nvars);
        let mut rem = IntPoly::zero(self.nvars);
        let mut work = self.clone();
        while let Some((exp, coeff)) = work.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            let divisible = exp.iter().zip(lt_exp).all(|(a, b)| a >= b)
                && (&coeff % lt_coeff).is_zero();
            if divisible {
                let qexp: Vec<u32> = exp.iter().zip(lt_exp).map(|(a, b)| a - b).collect();
                let qcoeff = &coeff / lt_coeff;
                let mut factor = IntPoly::zero(self.nvars);
                factor.add_term(qexp, qcoeff);
                work = &work - &(&factor * d);
                quot = &quot + &factor;
            } else {
                work.terms.remove(&exp);
                rem.add_term(exp, coeff);
            }
        }
        (quot, rem)
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (exp, coeff) in &self.terms {
            if exp[i] == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[i] -= 1;
            out.add_term(e, coeff * BigInt::from(exp[i]));
        }
        out
    }

    /// Sets variable `i` to zero.
    pub fn eval_var_zero(&self, i: usize) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (exp, coeff) in &self.terms {
            if exp[i] == 0 {
                out.add_term(exp.clone(), coeff.clone());
            }
        }
        out
    }

    /// Substitutes `images[i]` (over `out_nvars` variables) for variable `i`.
    pub fn substitute(&self, out_nvars: usize, images: &[IntPoly]) -> IntPoly {
        assert_eq!(images.len(), self.nvars);
        let mut out = IntPoly::zero(out_nvars);
        for (exp, coeff) in &self.terms {
            let mut term = IntPoly::from_bigint(out_nvars, coeff.clone());
            for (i, e) in exp.iter().enumerate() {
                for _ in 0..*e {
                    term = &term * &images[i];
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = IntPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["t", "x1", "x2", "x3", "x4", "x5"];
        let mut first = true;
        for (exp, coeff) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if coeff.is_negative() { "-" } else { "+" })?;
            } else if coeff.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mag = coeff.abs();
            let has_vars = exp.iter().any(|e| *e > 0);
            if !mag.is_one() || !has_vars {
                write!(f, "{mag}")?;
            }
            for (i, e) in exp.iter().enumerate() {
                if *e > 0 {
                    let name = names.get(i).copied().unwrap_or("y");
                    write!(f, "{name}")?;
                    if *e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // variables: 0 = t, 1 = x
    fn t() -> IntPoly {
        IntPoly::var(2, 0)
    }
    fn x() -> IntPoly {
        IntPoly::var(2, 1)
    }
    fn one() -> IntPoly {
        IntPoly::constant(2, 1)
    }

    #[test]
    fn exact_division_by_unit() {
        let u = &one() + &(&t() * &x()); // 1 + t x
        let f = &u * &x();
        assert_eq!(f.exact_div(&u), Some(x()));
        assert_eq!((-&x()).exact_div(&u), None);
    }

    #[test]
    fn remainder_detects_non_divisibility() {
        let u = &one() + &(&t() * &x());
        let (q, r) = x().divrem(&u);
        assert!(q.is_zero());
        assert_eq!(r, x());
    }

    #[test]
    fn derivative_and_specialization() {
        // x + a + t a x in vars (t, a, x)
        let p = IntPoly::from_terms(3, &[(&[0, 0, 1], 1), (&[0, 1, 0], 1), (&[1, 1, 1], 1)]);
        let dp = p.derivative(1); // d/da = 1 + t x
        assert_eq!(
            dp,
            IntPoly::from_terms(3, &[(&[0, 0, 0], 1), (&[1, 0, 1], 1)])
        );
        assert_eq!(
            dp.eval_var_zero(0),
            IntPoly::constant(3, 1)
        );
    }

    #[test]
    fn substitution_composes() {
        // f(t, x) = x^2 + t, substitute x -> t: t^2 + t in one variable
        let f = IntPoly::from_terms(2, &[(&[0, 2], 1), (&[1, 0], 1)]);
        let tt = IntPoly::var(1, 0);
        let g = f.substitute(1, &[tt.clone(), tt]);
        assert_eq!(g, IntPoly::from_terms(1, &[(&[2], 1), (&[1], 1)]));
    }
}

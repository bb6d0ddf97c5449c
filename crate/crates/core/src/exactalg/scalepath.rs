//! Finite multivariate Laurent polynomials over an ordered parameter tuple.
//!
//! A [`ScalePath`] records a path of field elements depending on a small
//! tuple of degeneration parameters. The parameter order is significant:
//! the first parameter is the dominant one, so "infinitesimally smaller"
//! parameters sit earlier in the tuple and win lexicographic comparisons.
//! The valuation of a nonzero path is the lexicographically minimal
//! exponent tuple carrying a nonzero coefficient; for products it adds
//! componentwise and leading coefficients multiply.
//!
//! Only finite Laurent *polynomials* are supported, never infinite
//! series; this is what guarantees termination of the limit recursion
//! built on top of them.

use super::rat::{format_rat, parse_rat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

/// Exponent tuples are capped at this many parameters.
pub const MAX_RANK: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    /// The zero path has no valuation (it is +∞ by convention).
    #[error("zero path has no valuation")]
    ZeroPath,
    #[error("parameter tuple has rank {0}, maximum is {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("exponent tuple {0:?} does not match rank {1}")]
    BadExponent(Vec<i64>, usize),
}

/// A finite Laurent polynomial in the ordered parameters `params`.
///
/// Invariants: no zero coefficients are stored, every exponent tuple has
/// length `params.len()`, and the zero path has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalePath {
    // shared across the many intermediate values arithmetic produces
    params: Arc<[String]>,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl ScalePath {
    /// The zero path over the given parameters.
    pub fn zero(params: &[&str]) -> Self {
        assert!(params.len() <= MAX_RANK, "rank above {MAX_RANK}");
        ScalePath {
            params: params.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds a path from `(exponent tuple, coefficient)` pairs.
    ///
    /// Repeated exponents accumulate; zero coefficients are dropped.
    pub fn new(params: &[&str], terms: &[(&[i64], Rat)]) -> Result<Self, PathError> {
        if params.len() > MAX_RANK {
            return Err(PathError::RankTooLarge(params.len()));
        }
        let mut path = ScalePath::zero(params);
        for (exp, coeff) in terms {
            if exp.len() != params.len() {
                return Err(PathError::BadExponent(exp.to_vec(), params.len()));
            }
            path.add_term(exp.to_vec(), coeff.clone());
        }
        Ok(path)
    }

    /// The constant path `c`.
    pub fn constant(params: &[&str], c: Rat) -> Self {
        let mut path = ScalePath::zero(params);
        path.add_term(vec![0; path.params.len()], c);
        path
    }

    /// The single term `c · params^exp`.
    pub fn monomial(params: &[&str], exp: &[i64], c: Rat) -> Result<Self, PathError> {
        ScalePath::new(params, &[(exp, c)])
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exp: Vec<i64>, coeff: Rat) {
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

    fn assert_same_params(&self, other: &Self) {
        assert_eq!(
            self.params, other.params,
            "scale paths over different parameter tuples"
        );
    }

    /// Valuation and leading coefficient of a nonzero path.
    ///
    /// The valuation is the lexicographically minimal exponent tuple with
    /// nonzero coefficient (the first parameter is most significant).
    pub fn val_lc(&self) -> Result<(Vec<i64>, Rat), PathError> {
        // BTreeMap iterates exponent tuples in lexicographic order.
        self.terms
            .iter()
            .next()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(PathError::ZeroPath)
    }

    /// Coefficient at the exponent tuple `exp` (zero when absent).
    pub fn coeff_at(&self, exp: &[i64]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// The path minus its leading term.
    pub fn truncate_lead(&self) -> Result<ScalePath, PathError> {
        let (val, _) = self.val_lc()?;
        let mut out = self.clone();
        out.terms.remove(&val);
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> ScalePath {
        if c.is_zero() {
            return ScalePath {
                params: self.params.clone(),
                terms: BTreeMap::new(),
            };
        }
        ScalePath {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the monomial `params^exp` (shifts every exponent).
    pub fn mul_monomial(&self, exp: &[i64]) -> Result<ScalePath, PathError> {
        if exp.len() != self.params.len() {
            return Err(PathError::BadExponent(exp.to_vec(), self.params.len()));
        }
        Ok(ScalePath {
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        e.iter().zip(exp).map(|(a, b)| a + b).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        })
    }
}

impl Add for &ScalePath {
    type Output = ScalePath;
    fn add(self, rhs: &ScalePath) -> ScalePath {
        self.assert_same_params(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalePath {
    type Output = ScalePath;
    fn sub(self, rhs: &ScalePath) -> ScalePath {
        self + &(-rhs)
    }
}

impl Neg for &ScalePath {
    type Output = ScalePath;
    fn neg(self) -> ScalePath {
        ScalePath {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &ScalePath {
    type Output = ScalePath;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &ScalePath) -> ScalePath {
        self.assert_same_params(rhs);
        let mut out = ScalePath {
            params: self.params.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ScalePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rat(coeff))?;
            for (name, e) in self.params.iter().zip(exp) {
                if *e != 0 {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PathRepr {
    params: Vec<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for ScalePath {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        PathRepr {
            params: self.params.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coeff: format_rat(c),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ScalePath {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = PathRepr::deserialize(de)?;
        if repr.params.len() > MAX_RANK {
            return Err(serde::de::Error::custom(PathError::RankTooLarge(
                repr.params.len(),
            )));
        }
        let mut path = ScalePath {
            params: repr.params.into(),
            terms: BTreeMap::new(),
        };
        for term in repr.terms {
            if term.exp.len() != path.params.len() {
                return Err(serde::de::Error::custom(PathError::BadExponent(
                    term.exp,
                    path.params.len(),
                )));
            }
            let coeff = parse_rat(&term.coeff).map_err(serde::de::Error::custom)?;
            path.add_term(term.exp, coeff);
        }
        Ok(path)
    }
}

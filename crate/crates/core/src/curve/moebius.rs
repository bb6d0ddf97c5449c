//! Möbius transformations of the projective line over Q, acting on chart
//! points and pushing forward degree-≤2 vector fields.

use crate::exactalg::rat::{format_rat, Rat};
use num_traits::{One, Zero};
use std::fmt;

use super::ChartPoint;

/// `x ↦ (a·x + b)/(c·x + d)` with `ad − bc ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moebius {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Moebius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        let m = Moebius { a, b, c, d };
        assert!(!m.det().is_zero(), "degenerate Möbius matrix");
        m
    }

    pub fn identity() -> Self {
        Moebius {
            a: Rat::one(),
            b: Rat::zero(),
            c: Rat::zero(),
            d: Rat::one(),
        }
    }

    /// `x ↦ alpha·x + beta` (`alpha ≠ 0`).
    pub fn affine(alpha: Rat, beta: Rat) -> Self {
        Moebius::new(alpha, beta, Rat::zero(), Rat::one())
    }

    /// A map sending `p` to ∞ (the identity when `p` is already ∞,
    /// otherwise `x ↦ 1/(x − p)`).
    pub fn send_to_inf(p: &ChartPoint) -> Self {
        match p {
            ChartPoint::Inf => Moebius::identity(),
            ChartPoint::Finite(v) => {
                Moebius::new(Rat::zero(), Rat::one(), Rat::one(), -v.clone())
            }
        }
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &ChartPoint) -> ChartPoint {
        match p {
            ChartPoint::Inf => {
                if self.c.is_zero() {
                    ChartPoint::Inf
                } else {
                    ChartPoint::Finite(&self.a / &self.c)
                }
            }
            ChartPoint::Finite(x) => {
                let den = &self.c * x + &self.d;
                if den.is_zero() {
                    ChartPoint::Inf
                } else {
                    ChartPoint::Finite((&self.a * x + &self.b) / den)
                }
            }
        }
    }

    pub fn inverse(&self) -> Moebius {
        Moebius::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Moebius) -> Moebius {
        Moebius::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    /// Pushforward of the field `(p0 + p1·x + p2·x²) ∂/∂x` along `self`.
    ///
    /// With `y = (ax+b)/(cx+d)` the image field is
    /// `[p0(a−cy)² + p1(dy−b)(a−cy) + p2(dy−b)²]/det · ∂/∂y`.
    pub fn push_field(&self, p: &[Rat; 3]) -> [Rat; 3] {
        let det = self.det();
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let q0 = (&p[0] * a * a - &p[1] * a * b + &p[2] * b * b) / &det;
        let q1 = (-(a * c * &p[0] * Rat::from_integer(2.into()))
            + &p[1] * (a * d + b * c)
            - (b * d * &p[2] * Rat::from_integer(2.into())))
            / &det;
        let q2 = (&p[0] * c * c - &p[1] * c * d + &p[2] * d * d) / &det;
        [q0, q1, q2]
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x -> ({}x + {})/({}x + {})",
            format_rat(&self.a),
            format_rat(&self.b),
            format_rat(&self.c),
            format_rat(&self.d)
        )
    }
}

//! Exact-arithmetic toolkit for marked genus-0 nodal curves carrying
//! logarithmic vector fields.
//!
//! The library has three layers:
//!
//! * [`exactalg`]: arbitrary-precision rationals, sparse multivariate
//!   Laurent polynomials with lexicographic valuations, and the localized
//!   ring `Z[t, x_1..x_k]` inverted at the units `1 + t·x_i`;
//! * [`hopf`], [`curve`], [`bubble`]: the interpolating group scheme
//!   `Spec Z[t,x]_{1+tx}`, marked nodal curves with degree-≤2 vector
//!   fields per component, and the two bubbling-up operations together
//!   with their inverse contraction;
//! * [`strata`], [`limits`]: boundary-stratum combinatorics for the
//!   chain-side and translation-side compactifications, and the
//!   valuation-driven stable-limit engine that connects them.
//!
//! Everything is exact: there is no floating point anywhere in the crate.
//! All values are immutable after construction and all operations are pure
//! functions, so data can be freely shared across threads.

pub mod bubble;
pub mod curve;
pub mod diagnostics;
pub mod exactalg;
pub mod hopf;
pub mod limits;
pub mod strata;

pub use diagnostics::Diagnostics;
pub use exactalg::{Rat, ScalePath};
pub use curve::MarkedCurve;

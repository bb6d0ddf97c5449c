//! Exact arithmetic foundation.
//!
//! * [`rat`]: arbitrary-precision rationals with the `"p/q"` text form
//!   used by every JSON surface of the crate;
//! * [`scalepath`]: finite multivariate Laurent polynomials over an
//!   ordered parameter tuple, with lexicographic valuations;
//! * [`intpoly`]: sparse multivariate polynomials over the integers
//!   (the carrier for the localized ring);
//! * [`localized`]: elements of `Z[t, x_1..x_k]` localized at the
//!   distinguished units `1 + t·x_i`, kept in canonical form.

pub mod intpoly;
pub mod localized;
pub mod rat;
pub mod scalepath;

pub use intpoly::IntPoly;
pub use localized::LocalizedElement;
pub use rat::{rat, ratq, Rat};
pub use scalepath::{PathError, ScalePath, MAX_RANK};

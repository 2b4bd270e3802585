//! Exact-arithmetic engine for the coefficient rings of algebraic cobordism.
//!
//! The crate provides, bottom up:
//!
//! - sparse graded polynomials with exact rational coefficients over a
//!   named generator alphabet ([`poly::GradedPoly`]),
//! - truncated power series in one or more variables whose coefficients are
//!   graded polynomials or Laurent objects ([`series::Series`]),
//! - finitely supported Laurent objects in the degree `-1` variable `t`
//!   ([`tlaurent::TLaurent`]),
//! - the universal formal group law in `b`-coordinates, its logarithm,
//!   formal sums/multiples and characteristic numbers ([`fgl`]),
//! - the p-typical theory: Quillen projector, Hazewinkel generators, the
//!   p-series and ideal filtration ([`bp`]),
//! - the total Steenrod operation on coefficients via twisted logarithms and
//!   the Symmetric operation obtained by exact division by the p-series
//!   ([`steenrod`]),
//! - Koszul resolutions, Tor ranks and the descent step on explicit
//!   presentations ([`koszul`]).
//!
//! All values are immutable after construction; every operation returns a
//! fresh value, so any object may be shared freely between threads.

pub mod alphabet;
pub mod bp;
pub mod error;
pub mod fgl;
pub mod json;
pub mod koszul;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod samples;
pub mod series;
pub mod steenrod;
pub mod tlaurent;

pub use alphabet::Alphabet;
pub use error::Error;
pub use monomial::Monomial;
pub use poly::GradedPoly;
pub use rational::Rat;
pub use series::Series;
pub use tlaurent::TLaurent;

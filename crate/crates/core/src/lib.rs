//! Exact continued fractions and the approximation spectrum of a real number.
//!
//! The approximation spectrum of `α` is the set of accumulation points of
//! `m²(k/m − α)` over integer pairs `(k, m)`. This crate computes it exactly for
//! quadratic irrationals, encloses it at finite depth for digit streams (Euler's
//! number, the constructed words), and provides the surrounding machinery:
//! quadratic-surd arithmetic, Möbius actions, convergents, Markov constants,
//! bounded-quotient Cantor sets and the rectangular-well spectra that motivate
//! the whole construction.
//!
//! Heavy inner loops (grid scans, cylinder enumeration, term tables) run on
//! rayon when the `parallel` feature is enabled; see [`Exec`].

pub mod cantor;
pub mod contfrac;
mod error;
pub mod exact;
mod exec;
pub mod literal;
pub mod repro;
pub mod spectrum;
pub mod well;
pub mod words;

pub use error::{Error, Result};
pub use exec::{init_workers, Exec};

pub use contfrac::{ContinuedFraction, Convergent, DigitSource};
pub use exact::{Exact, IntMatrix2, Interval, QuadraticSurd};

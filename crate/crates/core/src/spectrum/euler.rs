use std::sync::Arc;

use crate::contfrac::{ContinuedFraction, DigitSource};

/// Partial quotient `a_i` of Euler's number `e = [2; 1, 2, 1, 1, 4, 1, 1, 6, …]`.
pub fn euler_digit(i: usize) -> i64 {
    match i {
        0 => 2,
        _ if i % 3 == 2 => 2 * (i as i64 + 1) / 3,
        _ => 1,
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EulerDigits;

impl DigitSource for EulerDigits {
    fn digit(&self, i: usize) -> i64 {
        euler_digit(i)
    }

    fn label(&self) -> String {
        "e".into()
    }
}

/// The continued fraction of `e` as a digit stream.
pub fn euler() -> ContinuedFraction {
    ContinuedFraction::stream(Arc::new(EulerDigits))
}

//! The exact integer scalar trait.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar: `i64`, `i128`, or any `num` integer type.
///
/// Everything in this crate computes over `Z`; this trait is the single
/// bound used by group exponents, matrices, Laurent coefficients and
/// exterior classes.
pub trait Int:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive
{
    /// Lossless conversion from a machine integer.
    fn of(n: i64) -> Self {
        Self::from_i64(n).expect("i64 embeds into any Int scalar")
    }

    /// `|self|` as u64, if it fits. Used for finite indices and counts.
    fn magnitude(&self) -> Option<u64> {
        self.abs().to_u64()
    }
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive
{
}

/// Least common multiple that treats zero as absorbing: `lcm(0, n) = 0`.
pub fn lcm_nonzero<I: Int>(a: &I, b: &I) -> I {
    if a.is_zero() || b.is_zero() {
        I::zero()
    } else {
        a.lcm(b).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn of_and_magnitude() {
        let x: i64 = Int::of(-42);
        assert_eq!(x, -42);
        assert_eq!(x.magnitude(), Some(42));
        let y: i128 = Int::of(7);
        assert_eq!(y.magnitude(), Some(7));
    }

    #[test]
    fn lcm_handles_zero() {
        assert_eq!(lcm_nonzero(&0i64, &5), 0);
        assert_eq!(lcm_nonzero(&4i64, &6), 12);
    }
}

use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Exact rational numbers used for counts, defects and scl bounds.
pub type Rational = Ratio<i64>;

/// A rational number or `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(Rational::from_integer(n))
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    /// Approximate value; `+inf` maps to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtRational::Finite(r) => ratio_to_f64(r),
            ExtRational::Infinite => f64::INFINITY,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

/// Always prints `num/den`, or `inf`.
impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{}", FractionDisplay(*r)),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

/// Formats a rational as `num/den` even when the denominator is 1.
pub struct FractionDisplay(pub Rational);

impl fmt::Display for FractionDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn abs(r: Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn ordering_puts_infinity_last() {
        let half = ExtRational::Finite(Rational::new(1, 2));
        assert!(half < ExtRational::Infinite);
        assert!(ExtRational::zero() < half);
        assert_eq!(ExtRational::Infinite.cmp(&ExtRational::Infinite), Ordering::Equal);
    }

    #[test]
    fn display_is_always_a_fraction() {
        assert_eq!(ExtRational::from_int(3).to_string(), "3/1");
        assert_eq!(ExtRational::Finite(Rational::new(2, 24)).to_string(), "1/12");
        assert_eq!(ExtRational::Infinite.to_string(), "inf");
    }
}

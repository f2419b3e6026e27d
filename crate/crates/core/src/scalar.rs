//! Numeric abstraction for scores, fractions and CDF coordinates.
//!
//! Every ratio in this crate is built from two counts, so the only thing a
//! scalar type has to know is how to form `num / den`, compare, do basic
//! arithmetic and print itself as a fixed-point decimal. `f32` and `f64` are
//! supported for speed; [`BigRational`] gives exact results and is what the
//! reports use by default.

use std::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Scalar type usable for scores and distribution statistics.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// `num / den`. `den` must be non-zero.
    fn ratio(num: u64, den: u64) -> Self;

    /// Lossy conversion used for plotting.
    fn to_f64(&self) -> f64;

    /// Exact rational value of `self`. Floats convert through their exact
    /// binary value, so `0.1f64` is not `1/10`.
    fn to_exact(&self) -> BigRational;

    /// Fixed-point rendering with `digits` fractional digits, rounding half
    /// to even on the exact value.
    fn to_fixed(&self, digits: u32) -> String {
        format_fixed(&self.to_exact(), digits)
    }
}

impl Scalar for f64 {
    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_exact(&self) -> BigRational {
        BigRational::from_f64(*self).expect("non-finite score")
    }
}

impl Scalar for f32 {
    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        (num as f64 / den as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn to_exact(&self) -> BigRational {
        BigRational::from_f32(*self).expect("non-finite score")
    }
}

impl Scalar for BigRational {
    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_exact(&self) -> BigRational {
        self.clone()
    }
}

/// Renders an exact rational with `digits` fractional digits, round half to
/// even.
pub fn format_fixed(value: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = value.abs() * BigRational::from_integer(scale.clone());
    let (mut q, r) = scaled.numer().div_rem(scaled.denom());
    // compare 2r with the denominator to decide rounding
    let twice = r * 2;
    let den = scaled.denom();
    if twice > *den || (twice == *den && q.is_odd()) {
        q += 1;
    }
    let negative = value.is_negative() && !q.is_zero();
    let (int_part, frac_part) = q.div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        for _ in frac.len()..digits as usize {
            out.push('0');
        }
        out.push_str(&frac);
    }
    debug_assert!(q.sign() != Sign::Minus);
    out
}

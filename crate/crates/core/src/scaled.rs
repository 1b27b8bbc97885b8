//! Overflow-safe reals: a signed mantissa in `[1, 2)` and a binary exponent.
//!
//! Polynomial recurrences evaluated in the void region and `e^{-Nη}` factors
//! leave the `f64` exponent range long before the quantities of interest stop
//! being meaningful, so those paths carry a [`ScaledReal`] instead.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::math::{exp2, floor, frexp, ldexp, log2, LN_2};

/// `mantissa · 2^log2_scale` with `|mantissa| ∈ [1, 2)`, or exactly zero.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledReal {
    mantissa: f64,
    log2_scale: i64,
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal { mantissa: 0.0, log2_scale: 0 };
    pub const ONE: ScaledReal = ScaledReal { mantissa: 1.0, log2_scale: 0 };

    /// Builds from an arbitrary mantissa and exponent, normalizing.
    pub fn new(mantissa: f64, log2_scale: i64) -> Self {
        if mantissa == 0.0 || !mantissa.is_finite() {
            return ScaledReal { mantissa: if mantissa.is_nan() { f64::NAN } else { 0.0 }, log2_scale: 0 };
        }
        let (m, e) = frexp(mantissa);
        ScaledReal { mantissa: 2.0 * m, log2_scale: log2_scale + e as i64 - 1 }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    /// `mantissa · e^{ln_factor}`, exact in the exponent range of `ln_factor`.
    pub fn from_exp(mantissa: f64, ln_factor: f64) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        let t = ln_factor / LN_2;
        let k = floor(t);
        Self::new(mantissa * exp2(t - k), k as i64)
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn log2_scale(&self) -> i64 {
        self.log2_scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.is_finite()
    }

    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn abs(&self) -> Self {
        ScaledReal { mantissa: self.mantissa.abs(), log2_scale: self.log2_scale }
    }

    /// Plain value; underflows to zero or overflows to infinity outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        if self.log2_scale > 1100 {
            return self.mantissa.signum() * f64::INFINITY;
        }
        if self.log2_scale < -1200 {
            return 0.0;
        }
        ldexp(self.mantissa, self.log2_scale as i32)
    }

    /// Natural logarithm of `|self|`.
    pub fn ln_abs(&self) -> f64 {
        if self.mantissa == 0.0 {
            return f64::NEG_INFINITY;
        }
        (log2(self.mantissa.abs()) + self.log2_scale as f64) * LN_2
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.mantissa >= 0.0, "square root of a negative scaled real");
        if self.mantissa == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = if self.log2_scale % 2 == 0 { (self.mantissa, self.log2_scale) } else { (2.0 * self.mantissa, self.log2_scale - 1) };
        Self::new(crate::math::sqrt(m), e / 2)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.mantissa * factor, self.log2_scale)
    }

    pub fn recip(&self) -> Self {
        Self::new(1.0 / self.mantissa, -self.log2_scale)
    }
}

impl Default for ScaledReal {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for ScaledReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Debug for ScaledReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.log2_scale)
    }
}

impl Neg for ScaledReal {
    type Output = ScaledReal;
    fn neg(self) -> Self {
        ScaledReal { mantissa: -self.mantissa, log2_scale: self.log2_scale }
    }
}

impl Mul for ScaledReal {
    type Output = ScaledReal;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.mantissa * rhs.mantissa, self.log2_scale + rhs.log2_scale)
    }
}

impl Mul<f64> for ScaledReal {
    type Output = ScaledReal;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Div for ScaledReal {
    type Output = ScaledReal;
    fn div(self, rhs: Self) -> Self {
        Self::new(self.mantissa / rhs.mantissa, self.log2_scale - rhs.log2_scale)
    }
}

impl Add for ScaledReal {
    type Output = ScaledReal;
    fn add(self, rhs: Self) -> Self {
        if self.mantissa == 0.0 {
            return rhs;
        }
        if rhs.mantissa == 0.0 {
            return self;
        }
        let (big, small) = if self.log2_scale >= rhs.log2_scale { (self, rhs) } else { (rhs, self) };
        let shift = big.log2_scale - small.log2_scale;
        if shift > 1100 {
            return big;
        }
        Self::new(big.mantissa + ldexp(small.mantissa, -(shift as i32)), big.log2_scale)
    }
}

impl Sub for ScaledReal {
    type Output = ScaledReal;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl PartialOrd for ScaledReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = *self - *other;
        if d.mantissa.is_nan() {
            None
        } else {
            d.mantissa.partial_cmp(&0.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_mantissa() {
        let s = ScaledReal::from_f64(-12.0);
        assert_eq!(s.mantissa(), -1.5);
        assert_eq!(s.log2_scale(), 3);
        assert_eq!(s.to_f64(), -12.0);
        assert!(ScaledReal::from_f64(0.0).is_zero());
    }

    #[test]
    fn survives_beyond_double_range() {
        let tiny = ScaledReal::from_exp(1.0, -2000.0);
        let back = tiny * ScaledReal::from_exp(1.0, 2000.0);
        assert!((back.to_f64() - 1.0).abs() < 1e-12);
        assert_eq!(tiny.to_f64(), 0.0);
        assert!((tiny.ln_abs() + 2000.0).abs() < 1e-10);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = ScaledReal::from_f64(3.0);
        let b = ScaledReal::from_f64(0.25);
        assert_eq!((a + b).to_f64(), 3.25);
        assert_eq!((a - a).to_f64(), 0.0);
        let huge = ScaledReal::new(1.0, 5000);
        assert_eq!(huge + a, huge);
    }

    #[test]
    fn sqrt_and_order() {
        let x = ScaledReal::new(1.5, 601);
        let r = x.sqrt();
        let back = r * r;
        assert!(((back / x).to_f64() - 1.0).abs() < 1e-15);
        assert!(ScaledReal::from_f64(2.0) > ScaledReal::from_f64(1.0));
        assert!(ScaledReal::from_exp(1.0, -900.0) < ScaledReal::from_exp(1.0, -800.0));
    }
}

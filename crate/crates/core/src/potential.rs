//! External fields `V` on an interval `J`, their derivatives, perturbations
//! `Q + εf`, and the affine rescaling onto the equilibrium support.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::math::{cos, PI};

/// Number of sample points in the convexity / confinement check.
pub const CONVEXITY_GRID: usize = 2048;

/// Half-width of the window used to sample fields on unbounded intervals.
pub const UNBOUNDED_SAMPLE_RADIUS: f64 = 10.0;

/// Closed interval `[lo, hi]` whose ends may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendedInterval {
    lo: f64,
    hi: f64,
}

impl ExtendedInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidInput("interval needs lo < hi"));
        }
        Ok(ExtendedInterval { lo, hi })
    }

    pub fn real_line() -> Self {
        ExtendedInterval { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_compact(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    /// Intersection with `[lo, hi]`.
    pub fn clip(&self, lo: f64, hi: f64) -> (f64, f64) {
        (self.lo.max(lo), self.hi.min(hi))
    }
}

/// A scalar function with its first two derivatives.
pub trait Field: Send + Sync {
    fn value(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
}

/// [`Field`] assembled from three closures.
pub struct FnField<F, G, H> {
    f: F,
    df: G,
    d2f: H,
}

impl<F, G, H> FnField<F, G, H>
where
    F: Fn(f64) -> f64 + Send + Sync,
    G: Fn(f64) -> f64 + Send + Sync,
    H: Fn(f64) -> f64 + Send + Sync,
{
    pub fn new(f: F, df: G, d2f: H) -> Self {
        FnField { f, df, d2f }
    }
}

impl<F, G, H> Field for FnField<F, G, H>
where
    F: Fn(f64) -> f64 + Send + Sync,
    G: Fn(f64) -> f64 + Send + Sync,
    H: Fn(f64) -> f64 + Send + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (self.df)(x)
    }
    fn d2(&self, x: f64) -> f64 {
        (self.d2f)(x)
    }
}

/// `amplitude · sin(x)`, the perturbation used throughout the tests.
#[derive(Clone, Copy, Debug)]
pub struct Sine {
    pub amplitude: f64,
}

impl Field for Sine {
    fn value(&self, x: f64) -> f64 {
        self.amplitude * crate::math::sin(x)
    }
    fn d1(&self, x: f64) -> f64 {
        self.amplitude * crate::math::cos(x)
    }
    fn d2(&self, x: f64) -> f64 {
        -self.amplitude * crate::math::sin(x)
    }
}

#[derive(Clone)]
enum Kind {
    /// Ascending coefficients, trailing zeros trimmed.
    Polynomial(Vec<f64>),
    Generic(Arc<dyn Field>),
    Perturbed {
        base: Arc<Potential>,
        f: Arc<dyn Field>,
        eps: f64,
    },
}

/// A convex external field on an interval.
#[derive(Clone)]
pub struct Potential {
    interval: ExtendedInterval,
    kind: Kind,
    label: String,
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Potential").field("label", &self.label).field("interval", &self.interval).field("coeffs", &self.coeffs()).finish()
    }
}

impl Potential {
    /// Polynomial field with ascending coefficients.
    pub fn polynomial(coeffs: &[f64], interval: ExtendedInterval) -> Result<Self> {
        let mut c: Vec<f64> = coeffs.to_vec();
        while c.last() == Some(&0.0) {
            c.pop();
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite polynomial coefficient"));
        }
        if c.len() < 3 {
            return Err(Error::InvalidInput("polynomial potential needs degree >= 2"));
        }
        let degree = c.len() - 1;
        let lead = c[degree];
        if !interval.is_compact() {
            let both = !interval.lo().is_finite() && !interval.hi().is_finite();
            if lead <= 0.0 || (both && degree % 2 == 1) {
                return Err(Error::NonConfining);
            }
        }
        let label = polynomial_label(&c);
        let pot = Potential { interval, kind: Kind::Polynomial(c), label };
        pot.check_convexity()?;
        Ok(pot)
    }

    /// Generic field; the interval must be compact.
    pub fn generic(field: Arc<dyn Field>, interval: ExtendedInterval, label: &str) -> Result<Self> {
        if !interval.is_compact() {
            return Err(Error::InvalidInput("generic potentials require a compact interval"));
        }
        let pot = Potential { interval, kind: Kind::Generic(field), label: String::from(label) };
        pot.check_convexity()?;
        Ok(pot)
    }

    /// `V = base + eps·f` on the interval of `base`, which must be compact.
    pub fn perturb(base: &Potential, f: Arc<dyn Field>, eps: f64) -> Result<Self> {
        if !base.interval.is_compact() {
            return Err(Error::InvalidInput("perturbations require a compact interval"));
        }
        if !eps.is_finite() {
            return Err(Error::InvalidInput("non-finite perturbation size"));
        }
        let mut label = base.label.clone();
        label.push_str(" + eps*f");
        let pot = Potential { interval: base.interval, kind: Kind::Perturbed { base: Arc::new(base.clone()), f, eps }, label };
        pot.check_convexity()?;
        Ok(pot)
    }

    /// `x²` on the real line.
    pub fn gue() -> Self {
        Self::polynomial(&[0.0, 0.0, 1.0], ExtendedInterval::real_line()).expect("x^2 is admissible")
    }

    /// `x⁴` on the real line.
    pub fn quartic() -> Self {
        Self::polynomial(&[0.0, 0.0, 0.0, 0.0, 1.0], ExtendedInterval::real_line()).expect("x^4 is admissible")
    }

    pub fn interval(&self) -> ExtendedInterval {
        self.interval
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: &str) {
        self.label = String::from(label);
    }

    /// Coefficients when the field is a plain polynomial.
    pub fn coeffs(&self) -> Option<&[f64]> {
        match &self.kind {
            Kind::Polynomial(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.kind, Kind::Polynomial(_))
    }

    /// True for polynomials with only even powers on a symmetric interval.
    pub fn is_even(&self) -> bool {
        match &self.kind {
            Kind::Polynomial(c) => self.interval.lo() == -self.interval.hi() && c.iter().skip(1).step_by(2).all(|&v| v == 0.0),
            _ => false,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Polynomial(c) => horner(c, x),
            Kind::Generic(f) => f.value(x),
            Kind::Perturbed { base, f, eps } => base.value(x) + eps * f.value(x),
        }
    }

    pub fn d1(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Polynomial(c) => {
                let mut acc = 0.0;
                for (k, &ck) in c.iter().enumerate().skip(1).rev() {
                    acc = acc * x + k as f64 * ck;
                }
                acc
            }
            Kind::Generic(f) => f.d1(x),
            Kind::Perturbed { base, f, eps } => base.d1(x) + eps * f.d1(x),
        }
    }

    pub fn d2(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Polynomial(c) => {
                let mut acc = 0.0;
                for (k, &ck) in c.iter().enumerate().skip(2).rev() {
                    acc = acc * x + (k * (k - 1)) as f64 * ck;
                }
                acc
            }
            Kind::Generic(f) => f.d2(x),
            Kind::Perturbed { base, f, eps } => base.d2(x) + eps * f.d2(x),
        }
    }

    /// The window sampled by the convexity check.
    pub fn sample_window(&self) -> (f64, f64) {
        self.interval.clip(-UNBOUNDED_SAMPLE_RADIUS, UNBOUNDED_SAMPLE_RADIUS)
    }

    /// Ascending Chebyshev-distributed sample points on [`Self::sample_window`].
    pub fn sample_grid(&self) -> Vec<f64> {
        let (lo, hi) = self.sample_window();
        let n = CONVEXITY_GRID;
        (0..n).map(|j| 0.5 * (lo + hi) - 0.5 * (hi - lo) * cos(PI * (j as f64 + 0.5) / n as f64)).collect()
    }

    fn check_convexity(&self) -> Result<()> {
        let grid = self.sample_grid();
        let mut prev: Option<f64> = None;
        for &x in &grid {
            let v2 = self.d2(x);
            let v1 = self.d1(x);
            if !(v2 >= 0.0) || !v1.is_finite() {
                return Err(Error::ConvexityViolation { x });
            }
            if let Some(p) = prev {
                if v1 <= p {
                    return Err(Error::ConvexityViolation { x });
                }
            }
            prev = Some(v1);
        }
        if !self.interval.lo().is_finite() && self.d1(grid[0]) >= 0.0 {
            return Err(Error::NonConfining);
        }
        if !self.interval.hi().is_finite() && self.d1(grid[grid.len() - 1]) <= 0.0 {
            return Err(Error::NonConfining);
        }
        Ok(())
    }

    /// `W = V∘λ` for the affine map `λ` sending `[-1, 1]` onto `[a, b]`.
    pub fn rescale(&self, a: f64, b: f64) -> Result<Rescaled> {
        if !(a < b) {
            return Err(Error::InvalidInput("rescale needs a < b"));
        }
        if !self.interval.contains(a) {
            return Err(Error::Domain { what: "rescale endpoint a", value: a });
        }
        if !self.interval.contains(b) {
            return Err(Error::Domain { what: "rescale endpoint b", value: b });
        }
        Ok(Rescaled { pot: self.clone(), map: AffineMap::new(a, b) })
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
}

fn polynomial_label(c: &[f64]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (k, &ck) in c.iter().enumerate() {
        if ck == 0.0 {
            continue;
        }
        if !s.is_empty() {
            s.push_str(if ck < 0.0 { " - " } else { " + " });
        } else if ck < 0.0 {
            s.push('-');
        }
        let a = ck.abs();
        match k {
            0 => {
                let _ = write!(s, "{a}");
            }
            _ => {
                if a != 1.0 {
                    let _ = write!(s, "{a}*");
                }
                if k == 1 {
                    s.push('x');
                } else {
                    let _ = write!(s, "x^{k}");
                }
            }
        }
    }
    s
}

/// `λ(s) = ((b-a)/2)s + (b+a)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    a: f64,
    b: f64,
}

impl AffineMap {
    pub fn new(a: f64, b: f64) -> Self {
        AffineMap { a, b }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `λ' = (b-a)/2`.
    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.b + self.a)
    }

    pub fn to_outer(&self, s: f64) -> f64 {
        self.half_width() * s + self.center()
    }

    pub fn to_inner(&self, x: f64) -> f64 {
        (x - self.center()) / self.half_width()
    }
}

/// The rescaled field `W = V∘λ` on `λ⁻¹(J)`.
#[derive(Clone, Debug)]
pub struct Rescaled {
    pot: Potential,
    map: AffineMap,
}

impl Rescaled {
    pub fn map(&self) -> AffineMap {
        self.map
    }

    pub fn potential(&self) -> &Potential {
        &self.pot
    }

    /// `λ⁻¹(J)`.
    pub fn domain(&self) -> ExtendedInterval {
        let j = self.pot.interval();
        ExtendedInterval { lo: self.map.to_inner(j.lo()), hi: self.map.to_inner(j.hi()) }
    }

    pub fn w(&self, s: f64) -> f64 {
        self.pot.value(self.map.to_outer(s))
    }

    pub fn w1(&self, s: f64) -> f64 {
        self.map.half_width() * self.pot.d1(self.map.to_outer(s))
    }

    pub fn w2(&self, s: f64) -> f64 {
        let h = self.map.half_width();
        h * h * self.pot.d2(self.map.to_outer(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::sqrt;

    fn compact(lo: f64, hi: f64) -> ExtendedInterval {
        ExtendedInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn polynomial_evaluation() {
        let v = Potential::gue();
        assert_eq!(v.value(3.0), 9.0);
        assert_eq!(v.d1(1.0), 2.0);
        assert_eq!(v.d2(-4.0), 2.0);
        let q = Potential::quartic();
        assert_eq!(q.d2(1.0), 12.0);
        assert_eq!(q.d1(2.0), 32.0);
        assert!(q.is_even());
    }

    #[test]
    fn concave_polynomial_is_rejected() {
        let r = Potential::polynomial(&[0.0, 0.0, -1.0], ExtendedInterval::real_line());
        assert!(matches!(r, Err(Error::ConvexityViolation { .. }) | Err(Error::NonConfining)));
        let r = Potential::polynomial(&[0.0, 0.0, -1.0], compact(-1.0, 1.0));
        assert!(matches!(r, Err(Error::ConvexityViolation { .. })));
    }

    #[test]
    fn low_degree_and_odd_degree_rejected() {
        assert!(Potential::polynomial(&[1.0, 2.0], ExtendedInterval::real_line()).is_err());
        assert_eq!(Potential::polynomial(&[0.0, 0.0, 1.0, 1.0], ExtendedInterval::real_line()).unwrap_err(), Error::NonConfining);
    }

    #[test]
    fn generic_needs_compact_interval() {
        let f: Arc<dyn Field> = Arc::new(FnField::new(|x| x * x, |x| 2.0 * x, |_| 2.0));
        assert!(Potential::generic(f.clone(), ExtendedInterval::real_line(), "sq").is_err());
        assert!(Potential::generic(f, compact(-2.0, 2.0), "sq").is_ok());
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let base = Potential::polynomial(&[0.0, 0.0, 1.0], compact(-3.0, 3.0)).unwrap();
        let p = Potential::perturb(&base, Arc::new(Sine { amplitude: 1.0 }), 0.0).unwrap();
        for &x in &[-2.5, -0.1, 0.0, 1.3, 2.9] {
            assert_eq!(p.value(x), base.value(x));
            assert_eq!(p.d1(x), base.d1(x));
            assert_eq!(p.d2(x), base.d2(x));
        }
    }

    #[test]
    fn perturbation_is_linear() {
        let base = Potential::polynomial(&[0.0, 0.0, 1.0], compact(-3.0, 3.0)).unwrap();
        let p = Potential::perturb(&base, Arc::new(Sine { amplitude: 1.0 }), 0.01).unwrap();
        assert!((p.d1(0.0) - 0.01).abs() < 1e-16);
        assert!((p.value(1.0) - (1.0 + 0.01 * libm::sin(1.0))).abs() < 1e-15);
    }

    #[test]
    fn large_perturbation_breaks_convexity() {
        let base = Potential::polynomial(&[0.0, 0.0, 1.0], compact(-3.0, 3.0)).unwrap();
        let r = Potential::perturb(&base, Arc::new(Sine { amplitude: 100.0 }), 0.1);
        assert!(matches!(r, Err(Error::ConvexityViolation { .. })));
    }

    #[test]
    fn rescale_composes_derivatives() {
        let v = Potential::gue();
        let w = v.rescale(-sqrt(2.0), sqrt(2.0)).unwrap();
        assert!((w.map().to_outer(1.0) - sqrt(2.0)).abs() < 1e-15);
        assert!((w.map().to_outer(-1.0) + sqrt(2.0)).abs() < 1e-15);
        for &s in &[-1.3, 0.0, 0.4, 2.0] {
            assert!((w.w(s) - 2.0 * s * s).abs() < 1e-13);
            assert!((w.w2(s) - 4.0).abs() < 1e-13);
        }
        let b4 = libm::pow(4.0 / 3.0, 0.25);
        let q = Potential::quartic().rescale(-b4, b4).unwrap();
        assert!((q.w(0.7) - (4.0 / 3.0) * libm::pow(0.7, 4.0)).abs() < 1e-13);
    }

    #[test]
    fn rescale_rejects_endpoints_outside_interval() {
        let v = Potential::polynomial(&[0.0, 0.0, 1.0], compact(-1.0, 1.0)).unwrap();
        assert!(matches!(v.rescale(-2.0, 0.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn labels_read_naturally() {
        let v = Potential::polynomial(&[0.0, 0.0, 1.0, 0.0, 0.1], ExtendedInterval::real_line()).unwrap();
        assert_eq!(v.label(), "x^2 + 0.1*x^4");
    }
}

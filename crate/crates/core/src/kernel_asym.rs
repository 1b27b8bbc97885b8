//! Asymptotic forms of the Christoffel-Darboux kernel in the rescaled
//! variable `x = λ_V⁻¹(λ)`: the four-branch vector `k(x)`, the leading kernel
//! `(k₁(x)k₂(y) - k₂(x)k₁(y))/(x - y)`, the one-point density `D(x)` and the
//! sine/Airy universality forms.
//!
//! All quantities are normalized as `(b - a)/2 · K_{N,V}(λ(x), λ(y))`.
//! Error constants are not known; `correction_scale` reports the structural
//! size of the error term only.

use core::fmt;

use crate::edge_map::{n23, EdgeMap};
use crate::equilibrium::EquilibriumData;
use crate::error::{Error, Result};
use crate::math::{cos, powf, sinc, sqrt, PI};
use crate::scaled::ScaledReal;
use crate::special_fn::{airy, airy_kernel_scaled};

/// Below this separation divided differences use derivatives at the midpoint.
pub const DIVIDED_DIFFERENCE_SWITCH: f64 = 1e-5;
/// Inner edge band of [`AsymptoticKernel::density`], in units of `N^{-2/3}/γ`.
pub const EDGE_INNER: f64 = 5.0;
/// Outer edge band of [`AsymptoticKernel::density`], in units of `N^{-2/5}`.
pub const EDGE_OUTER: f64 = 0.5;
/// Default `q` of the edge universality window.
pub const EDGE_Q: f64 = -5.0;
/// Default `p` of the edge universality window.
pub const EDGE_P: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Bulk,
    EdgePlus,
    EdgeMinus,
    Void,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Bulk => "bulk",
            Regime::EdgePlus => "edge_plus",
            Regime::EdgeMinus => "edge_minus",
            Regime::Void => "void",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An asymptotic kernel or density value.
#[derive(Clone, Copy, Debug)]
pub struct KernelValue {
    pub value: ScaledReal,
    pub regime: Regime,
    /// Formula used, e.g. `"bulk_kernel"` or `"edge_plus_density"`.
    pub branch: &'static str,
    /// Relative size of the error term, constants omitted.
    pub correction_scale: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct KVector {
    pub k1: ScaledReal,
    pub k2: ScaledReal,
    pub regime: Regime,
}

/// Sine-kernel approximation at bulk point `x`.
#[derive(Clone, Copy, Debug)]
pub struct BulkRescaled {
    pub approx: f64,
    pub error_scale: f64,
    /// `x + s/(Nρ(x))`.
    pub u: f64,
    /// `x + t/(Nρ(x))`.
    pub v: f64,
    /// Normalization `Nρ(x)`.
    pub scale: f64,
}

/// Airy-kernel approximation at the right edge.
#[derive(Clone, Copy, Debug)]
pub struct EdgeRescaled {
    pub approx: ScaledReal,
    /// 1: `q ≤ s,t ≤ 2`; 2: `1 ≤ s,t ≤ pN^{4/15}`; 3: mixed.
    pub case: u8,
    pub error_scale: f64,
    /// `1 + s/(N^{2/3}γ⁺)`.
    pub u: f64,
    /// `1 + t/(N^{2/3}γ⁺)`.
    pub v: f64,
    /// Normalization `N^{2/3}γ⁺`.
    pub scale: f64,
}

/// `a(x) = ((x-1)/(x+1))^{1/4}` for `|x| > 1`.
pub fn a_void(x: f64) -> f64 {
    sqrt(sqrt((x - 1.0) / (x + 1.0)))
}

/// `â(x) = ((1-x)/(1+x))^{1/4}` for `|x| < 1`.
pub fn a_bulk(x: f64) -> f64 {
    sqrt(sqrt((1.0 - x) / (1.0 + x)))
}

// a'/a = â'/â = 1/(2(x²-1))
fn log_derivative(x: f64) -> f64 {
    0.5 / ((x - 1.0) * (x + 1.0))
}

/// `δ₀`: largest admissible branch width.
pub fn delta0(eq: &EquilibriumData, plus: &EdgeMap<'_>, minus: &EdgeMap<'_>) -> f64 {
    (eq.sigma_hat() / 20.0).min(0.5 * plus.delta_v().min(minus.delta_v()))
}

/// Asymptotic kernel for fixed `V`, `N` and branch width `δ`.
#[derive(Clone, Debug)]
pub struct AsymptoticKernel<'a> {
    eq: &'a EquilibriumData,
    plus: EdgeMap<'a>,
    minus: EdgeMap<'a>,
    n: u32,
    delta: f64,
}

impl<'a> AsymptoticKernel<'a> {
    /// `delta = None` selects `δ₀`.
    pub fn new(eq: &'a EquilibriumData, n: u32, delta: Option<f64>) -> Result<Self> {
        let (plus, minus) = EdgeMap::pair(eq)?;
        Self::with_edges(eq, plus, minus, n, delta)
    }

    pub fn with_edges(eq: &'a EquilibriumData, plus: EdgeMap<'a>, minus: EdgeMap<'a>, n: u32, delta: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("N must be positive"));
        }
        let d0 = delta0(eq, &plus, &minus);
        let delta = delta.unwrap_or(d0);
        if !(delta > 0.0 && delta <= d0) {
            return Err(Error::Range { what: "delta", value: delta, limit: d0 });
        }
        Ok(AsymptoticKernel { eq, plus, minus, n, delta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn equilibrium(&self) -> &'a EquilibriumData {
        self.eq
    }

    pub fn edge(&self, side: i8) -> &EdgeMap<'a> {
        if side > 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    fn check(&self, x: f64) -> Result<()> {
        if !x.is_finite() || !self.eq.domain().contains(x) {
            return Err(Error::Domain { what: "kernel argument", value: x });
        }
        Ok(())
    }

    /// Branch of `k` containing `x`.
    pub fn regime(&self, x: f64) -> Result<Regime> {
        self.check(x)?;
        let d = self.delta;
        if (x - 1.0).abs() <= d {
            Ok(Regime::EdgePlus)
        } else if (x + 1.0).abs() <= d {
            Ok(Regime::EdgeMinus)
        } else if x.abs() < 1.0 - d {
            Ok(Regime::Bulk)
        } else if x.abs() > 1.0 + d {
            Ok(Regime::Void)
        } else {
            Err(Error::RegimeGap { x })
        }
    }

    // N^{1/6}(γ^±)^{1/4}d_V(x)
    fn edge_factor(&self, side: i8, x: f64) -> Result<f64> {
        let em = self.edge(side);
        Ok(sqrt(sqrt(n23(self.n))) * sqrt(sqrt(self.eq.gamma(side))) * em.d_v(x)?)
    }

    pub fn k_vector(&self, x: f64) -> Result<KVector> {
        let regime = self.regime(x)?;
        let n = self.nf();
        let (k1, k2) = match regime {
            Regime::Void => {
                let sign = if x < 0.0 && self.n % 2 == 1 { -1.0 } else { 1.0 };
                let eta = self.eq.eta(x)?;
                let a = a_void(x);
                let c = sign / sqrt(4.0 * PI);
                (ScaledReal::from_exp(c * a, -0.5 * n * eta), ScaledReal::from_exp(c / a, -0.5 * n * eta))
            }
            Regime::Bulk => {
                let a = a_bulk(x);
                let ph = 0.5 * n * self.eq.xi(x);
                let c = 1.0 / sqrt(PI);
                (ScaledReal::from_f64(c * a * cos(ph + 0.25 * PI)), ScaledReal::from_f64(c / a * cos(ph - 0.25 * PI)))
            }
            Regime::EdgePlus => {
                let f = self.plus.f_n(self.n, x)?;
                let ai = airy(f)?;
                let e = self.edge_factor(1, x)?;
                (-ai.ai_prime_scaled() * (1.0 / e), ai.ai_scaled() * e)
            }
            Regime::EdgeMinus => {
                let f = self.minus.f_n(self.n, x)?;
                let ai = airy(f)?;
                let e = self.edge_factor(-1, x)?;
                let sign = if self.n % 2 == 1 { -1.0 } else { 1.0 };
                (ai.ai_scaled() * (sign * e), -ai.ai_prime_scaled() * (sign / e))
            }
        };
        Ok(KVector { k1, k2, regime })
    }

    // |k(x)||k(y)|/N
    fn structural_error(&self, kx: &KVector, ky: &KVector) -> ScaledReal {
        let nx = kx.k1.abs() + kx.k2.abs();
        let ny = ky.k1.abs() + ky.k2.abs();
        nx * ny * (1.0 / self.nf())
    }

    /// `(k₁(x)k₂(y) - k₂(x)k₁(y))/(x - y)` for arbitrary `x ≠ y`, including
    /// points in different branches.
    pub fn kernel_from_k(&self, x: f64, y: f64) -> Result<KernelValue> {
        if x == y {
            return self.leading_kernel(x, y);
        }
        let kx = self.k_vector(x)?;
        let ky = self.k_vector(y)?;
        let value = (kx.k1 * ky.k2 - kx.k2 * ky.k1) * (1.0 / (x - y));
        let err = self.structural_error(&kx, &ky);
        Ok(KernelValue { value, regime: kx.regime, branch: "k_quotient", correction_scale: relative(err, value) })
    }

    /// Leading kernel by the closed forms (a)-(d); both points must share a branch.
    pub fn leading_kernel(&self, x: f64, y: f64) -> Result<KernelValue> {
        let rx = self.regime(x)?;
        let ry = self.regime(y)?;
        if rx != ry {
            return Err(Error::MixedRegime { x, y });
        }
        let near = (x - y).abs() < DIVIDED_DIFFERENCE_SWITCH;
        let m = 0.5 * (x + y);
        let n = self.nf();
        let (value, branch) = match rx {
            Regime::Void => {
                let sign = if x * y < 0.0 && self.n % 2 == 1 { -1.0 } else { 1.0 };
                let (ax, ay) = (a_void(x), a_void(y));
                let dq = if near { a_void(m) * log_derivative(m) } else { (ax - ay) / (x - y) };
                let c = sign / (4.0 * PI) * (1.0 / ax + 1.0 / ay) * dq;
                let e = -0.5 * n * (self.eq.eta(x)? + self.eq.eta(y)?);
                (ScaledReal::from_exp(c, e), "void_kernel")
            }
            Regime::Bulk => {
                let (ax, ay) = (a_bulk(x), a_bulk(y));
                // π∫_y^x ρ divided by x - y
                let mean = if near { PI * self.eq.rho(m) } else { 0.5 * self.eq.xi_between(y, x) / (x - y) };
                let sine = n * mean * sinc(n * mean * (x - y));
                let dq = if near { a_bulk(m) * log_derivative(m) } else { (ax - ay) / (x - y) };
                let t1 = (ax / ay + ay / ax) * sine;
                let t2 = cos(0.5 * n * (self.eq.xi(x) + self.eq.xi(y))) * (1.0 / ax + 1.0 / ay) * dq;
                (ScaledReal::from_f64((t1 + t2) / (2.0 * PI)), "bulk_kernel")
            }
            Regime::EdgePlus | Regime::EdgeMinus => {
                let side = if rx == Regime::EdgePlus { 1 } else { -1 };
                let em = self.edge(side);
                let (fx, fy) = (em.f_n(self.n, x)?, em.f_n(self.n, y)?);
                let (dx, dy) = (em.d_v(x)?, em.d_v(y)?);
                let fq = if near { em.f_n_prime(self.n, m)? } else { (fx - fy) / (x - y) };
                let dq = if near { em.d_v_prime(m)? } else { (dx - dy) / (x - y) };
                let (px, py) = (airy(fx)?, airy(fy)?);
                let kern = airy_kernel_scaled(fx, fy)? * fq;
                let cross = (px.ai_scaled() * py.ai_prime_scaled() * (1.0 / dy) + py.ai_scaled() * px.ai_prime_scaled() * (1.0 / dx)) * dq;
                let v = kern + cross;
                if side > 0 {
                    (v, "edge_plus_kernel")
                } else {
                    (-v, "edge_minus_kernel")
                }
            }
        };
        let kx = self.k_vector(x)?;
        let ky = self.k_vector(y)?;
        let err = self.structural_error(&kx, &ky);
        Ok(KernelValue { value, regime: rx, branch, correction_scale: relative(err, value) })
    }

    /// Width of the band around `σ` in which [`Self::density`] uses the Airy form.
    pub fn density_edge_band(&self, side: i8) -> f64 {
        let n = self.nf();
        let inner = EDGE_INNER / (n23(self.n) * self.eq.gamma(side));
        let outer = self.edge(side).delta_v().min(EDGE_OUTER * powf(n, -0.4));
        inner.max(outer).min(self.edge(side).eval_radius())
    }

    /// `D(x) = (b - a)/2 · K_{N,V}(λ(x), λ(x))` to leading order with the bulk correction.
    pub fn density(&self, x: f64) -> Result<KernelValue> {
        self.check(x)?;
        let n = self.nf();
        for side in [1i8, -1] {
            let s = side as f64;
            if (x - s).abs() <= self.density_edge_band(side) {
                let g = self.eq.gamma(side);
                let scale = n23(self.n) * g;
                let arg = scale * (s * x - 1.0);
                let value = airy_kernel_scaled(arg, arg)? * scale;
                let dist = s * x - 1.0;
                let corr = if dist <= 0.0 { -dist + 1.0 / n23(self.n) } else { n * powf(dist, 2.5) + 1.0 / n23(self.n) };
                let (regime, branch) = if side > 0 { (Regime::EdgePlus, "edge_plus_density") } else { (Regime::EdgeMinus, "edge_minus_density") };
                return Ok(KernelValue { value, regime, branch, correction_scale: corr });
            }
        }
        if x.abs() < 1.0 {
            let w = (1.0 - x) * (1.0 + x);
            let v = n * self.eq.rho(x) - cos(n * self.eq.xi(x)) / (2.0 * PI * w);
            let e = 1.0 - x.abs();
            let corr = 1.0 / (n * n * e * e * e);
            return Ok(KernelValue { value: ScaledReal::from_f64(v), regime: Regime::Bulk, branch: "bulk_density", correction_scale: corr });
        }
        let eta = self.eq.eta(x)?;
        let w = (x - 1.0) * (x + 1.0);
        let value = ScaledReal::from_exp(1.0 / (4.0 * PI * w), -n * eta);
        let e = x.abs() - 1.0;
        let corr = w * (1.0 / (n * powf(e, 2.5)) + 1.0 / n);
        Ok(KernelValue { value, regime: Regime::Void, branch: "void_density", correction_scale: corr })
    }

    /// Bare leading term `Nρ(x)` of the bulk density.
    pub fn density_uncorrected(&self, x: f64) -> f64 {
        self.nf() * self.eq.rho(x)
    }
}

fn relative(err: ScaledReal, value: ScaledReal) -> f64 {
    if value.is_zero() {
        return f64::INFINITY;
    }
    (err / value.abs()).to_f64()
}

/// `c_δ = (δ d/(4π))√(1 - (1-δ)²)`.
pub fn c_delta(eq: &EquilibriumData, delta: f64) -> f64 {
    let r = 1.0 - delta;
    delta * eq.d_min() / (4.0 * PI) * sqrt((1.0 - r * r).max(0.0))
}

/// Sine-kernel form at bulk point `x`, with `δ = 1 - |x|`.
pub fn bulk_rescaled(eq: &EquilibriumData, n: u32, x: f64, s: f64, t: f64) -> Result<BulkRescaled> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain { what: "bulk point", value: x });
    }
    let nf = n as f64;
    let limit = c_delta(eq, 1.0 - x.abs()) * nf;
    for v in [s, t] {
        if !(v.abs() < limit) {
            return Err(Error::Range { what: "bulk offset", value: v, limit });
        }
    }
    let scale = nf * eq.rho(x);
    Ok(BulkRescaled { approx: sinc(PI * (s - t)), error_scale: (1.0 + s.abs() + t.abs()) / nf, u: x + s / scale, v: x + t / scale, scale })
}

/// Airy-kernel form at the right edge for `q ≤ s, t ≤ pN^{4/15}`.
pub fn edge_rescaled(eq: &EquilibriumData, n: u32, s: f64, t: f64, q: f64, p: f64) -> Result<EdgeRescaled> {
    if !(q < 0.0 && p > 0.0) {
        return Err(Error::InvalidInput("edge window needs q < 0 < p"));
    }
    let nf = n as f64;
    let top = p * powf(nf, 4.0 / 15.0);
    for v in [s, t] {
        if !(v >= q && v <= top) {
            return Err(Error::Range { what: "edge offset", value: v, limit: if v < q { q } else { top } });
        }
    }
    let n23v = n23(n);
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
    let (case, error_scale) = if hi <= 2.0 {
        (1, 1.0 / n23v)
    } else if lo >= 1.0 {
        (2, (powf(s, 2.5) + powf(t, 2.5)) / n23v)
    } else {
        let ap = airy(hi)?.ai_prime_value().abs();
        (3, ap * powf(hi, 1.5) / n23v)
    };
    let scale = n23v * eq.gamma_plus();
    Ok(EdgeRescaled { approx: airy_kernel_scaled(s, t)?, case, error_scale, u: 1.0 + s / scale, v: 1.0 + t / scale, scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Potential;
    use crate::special_fn::{AI0, AIP0};

    fn gue() -> EquilibriumData {
        EquilibriumData::new(&Potential::gue()).unwrap()
    }

    #[test]
    fn k_vector_at_the_edge() {
        let eq = gue();
        for n in [10u32, 37] {
            let ak = AsymptoticKernel::new(&eq, n, None).unwrap();
            let k = ak.k_vector(1.0).unwrap();
            let f = sqrt(sqrt(n23(n))) * sqrt(sqrt(2.0)) * sqrt(sqrt(2.0));
            assert!((k.k1.to_f64() + AIP0 / f).abs() < 1e-12);
            assert!((k.k2.to_f64() - AI0 * f).abs() < 1e-12);
            assert_eq!(k.regime, Regime::EdgePlus);
        }
    }

    #[test]
    fn k_vector_bulk_and_void() {
        let eq = gue();
        let ak = AsymptoticKernel::new(&eq, 12, None).unwrap();
        let k = ak.k_vector(0.0).unwrap();
        let ph = 6.0 * eq.xi(0.0);
        assert!((k.k1.to_f64() - cos(ph + 0.25 * PI) / sqrt(PI)).abs() < 1e-13);
        assert!((k.k2.to_f64() - cos(ph - 0.25 * PI) / sqrt(PI)).abs() < 1e-13);
        let even = AsymptoticKernel::new(&eq, 12, None).unwrap().k_vector(-1.5).unwrap();
        let odd = AsymptoticKernel::new(&eq, 13, None).unwrap().k_vector(-1.5).unwrap();
        assert!(even.k1.signum() > 0.0 && odd.k1.signum() < 0.0);
        assert!(AsymptoticKernel::new(&eq, 12, Some(1.0)).is_err());
    }

    #[test]
    fn closed_forms_match_k_quotient() {
        let eq = gue();
        let ak = AsymptoticKernel::new(&eq, 30, None).unwrap();
        for &(x, y) in &[(0.2, -0.4), (1.2, 1.6), (-1.3, -2.0), (0.99, 1.01), (-0.995, -1.02)] {
            let a = ak.leading_kernel(x, y).unwrap().value.to_f64();
            let b = ak.kernel_from_k(x, y).unwrap().value.to_f64();
            assert!((a - b).abs() <= 1e-10 * (a.abs() + b.abs()), "{x} {y}: {a} {b}");
        }
        assert!(matches!(ak.leading_kernel(0.0, 1.5), Err(Error::MixedRegime { .. })));
    }

    #[test]
    fn bulk_diagonal_is_corrected_density() {
        let eq = gue();
        let ak = AsymptoticKernel::new(&eq, 40, None).unwrap();
        let x = 0.3;
        let k = ak.leading_kernel(x, x).unwrap().value.to_f64();
        let d = ak.density(x).unwrap().value.to_f64();
        assert!((k - d).abs() < 1e-8);
        let inside = ak.leading_kernel(x, x + 0.999e-5).unwrap().value.to_f64();
        let outside = ak.leading_kernel(x, x + 1.001e-5).unwrap().value.to_f64();
        assert!((inside - outside).abs() < 1e-6);
    }

    #[test]
    fn symmetry() {
        let eq = gue();
        let ak = AsymptoticKernel::new(&eq, 25, None).unwrap();
        for &(x, y) in &[(0.1, 0.5), (1.3, 1.9), (0.985, 1.004)] {
            assert_eq!(ak.leading_kernel(x, y).unwrap().value, ak.leading_kernel(y, x).unwrap().value);
        }
    }

    #[test]
    fn edge_diagonal() {
        let eq = gue();
        let n = 64;
        let ak = AsymptoticKernel::new(&eq, n, None).unwrap();
        let em = ak.edge(1);
        let v = ak.leading_kernel(1.0, 1.0).unwrap().value.to_f64();
        let expect = crate::special_fn::airy_kernel(0.0, 0.0).unwrap() * em.f_n_prime(n, 1.0).unwrap()
            + 2.0 * AI0 * AIP0 * em.d_v_prime(1.0).unwrap() / em.d_v(1.0).unwrap();
        assert!((v - expect).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn density_examples() {
        let eq = gue();
        let ak = AsymptoticKernel::new(&eq, 50, None).unwrap();
        let d0 = ak.density(0.0).unwrap();
        assert!((d0.value.to_f64() - (100.0 / PI - 1.0 / (2.0 * PI))).abs() < 1e-9);
        assert_eq!(d0.regime, Regime::Bulk);
        let x: f64 = 1.5;
        let eta = 2.0 * (x * sqrt(x * x - 1.0) - crate::math::ln(x + sqrt(x * x - 1.0)));
        let d = ak.density(x).unwrap();
        let ln_expect = -50.0 * eta - crate::math::ln(4.0 * PI * 1.25);
        assert!((d.value.ln_abs() - ln_expect).abs() < 1e-9);
        assert!(d.value.log2_scale() <= 0);
        let e = ak.density(1.0).unwrap().value.to_f64();
        let expect = powf(50.0, 2.0 / 3.0) * 2.0 * crate::special_fn::airy_kernel(0.0, 0.0).unwrap();
        assert!((e - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn density_parity() {
        let eq = EquilibriumData::new(&Potential::quartic()).unwrap();
        let ak = AsymptoticKernel::new(&eq, 33, None).unwrap();
        for &x in &[0.1, 0.7, 0.97, 1.0, 1.04, 1.3] {
            let a = ak.density(x).unwrap().value;
            let b = ak.density(-x).unwrap().value;
            assert!(((a - b) / a).to_f64().abs() < 1e-10, "{x}");
        }
    }

    #[test]
    fn rescaled_forms() {
        let eq = gue();
        let b = bulk_rescaled(&eq, 100, 0.0, 0.0, 0.5).unwrap();
        assert!((b.approx - 2.0 / PI).abs() < 1e-15);
        assert!((bulk_rescaled(&eq, 100, 0.0, 0.0, 1.0).unwrap().approx).abs() < 1e-15);
        assert!(bulk_rescaled(&eq, 100, 0.0, 0.0, 100.0).is_err());
        assert_eq!(edge_rescaled(&eq, 100, 0.0, 0.0, EDGE_Q, EDGE_P).unwrap().case, 1);
        let e = edge_rescaled(&eq, 100, 4.0, 4.0, EDGE_Q, EDGE_P).unwrap();
        assert_eq!(e.case, 2);
        assert!((e.error_scale - 64.0 / powf(100.0, 2.0 / 3.0)).abs() < 1e-12);
        assert_eq!(edge_rescaled(&eq, 100, -1.0, 5.0, EDGE_Q, EDGE_P).unwrap().case, 3);
        assert!(edge_rescaled(&eq, 100, -6.0, 0.0, EDGE_Q, EDGE_P).is_err());
    }
}

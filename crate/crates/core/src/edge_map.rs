//! Edge coordinates `f̂_V`, `f_{N,V}` and `d_V` near `x = ±1`.
//!
//! With `σ = ±1` the side, write `φ(x) = σ(x-σ)γ_σ f̂(x)`, so that
//! `f_{N,V} = N^{2/3}φ` and `|φ|^{3/2}` is `(3/4)η` beyond the edge and
//! `(3/4)ξ` resp. `(3/4)(2π-ξ)` inside. Within `h₀` of the edge the quotient
//! defining `f̂` is replaced by the quartic through `f̂(σ) = 1` and the four
//! directly computed values at `σ ± h₀`, `σ ± 2h₀`.

use crate::equilibrium::EquilibriumData;
use crate::error::{Error, Result};
use crate::math::{cbrt, powf, sqrt, PI};

/// Radius of the local interpolant around the edge.
pub const SERIES_RADIUS: f64 = 1e-3;

const CONTAINMENT: f64 = 0.2;
const CONTAINMENT_GRID: usize = 64;

/// Edge coordinates on one side of the support.
#[derive(Clone, Debug)]
pub struct EdgeMap<'a> {
    eq: &'a EquilibriumData,
    side: i8,
    delta_v: f64,
    series_radius: f64,
    // quartic in t = (x - σ)/h₀
    local: [f64; 5],
}

impl<'a> EdgeMap<'a> {
    /// Edge map at `+1` for `side > 0`, at `-1` otherwise.
    pub fn new(eq: &'a EquilibriumData, side: i8) -> Result<Self> {
        let side = if side > 0 { 1 } else { -1 };
        let mut em = EdgeMap { eq, side, delta_v: 0.0, series_radius: SERIES_RADIUS, local: [1.0, 0.0, 0.0, 0.0, 0.0] };
        let s = side as f64;
        let h = SERIES_RADIUS;
        let fm2 = em.quotient(s - 2.0 * h)?;
        let fm1 = em.quotient(s - h)?;
        let fp1 = em.quotient(s + h)?;
        let fp2 = em.quotient(s + 2.0 * h)?;
        let o1 = 0.5 * (fp1 - fm1);
        let o2 = 0.5 * (fp2 - fm2);
        let e1 = 0.5 * (fp1 + fm1) - 1.0;
        let e2 = 0.5 * (fp2 + fm2) - 1.0;
        let c3 = (o2 - 2.0 * o1) / 6.0;
        let c4 = (e2 - 4.0 * e1) / 12.0;
        em.local = [1.0, o1 - c3, e1 - c4, c3, c4];

        let mut delta = eq.sigma_hat() / 10.0;
        for _ in 0..200 {
            if em.contained(delta)? {
                break;
            }
            delta *= 0.8;
        }
        em.delta_v = delta;
        Ok(em)
    }

    /// Both edge maps.
    pub fn pair(eq: &'a EquilibriumData) -> Result<(Self, Self)> {
        Ok((Self::new(eq, 1)?, Self::new(eq, -1)?))
    }

    fn contained(&self, delta: f64) -> Result<bool> {
        let s = self.side as f64;
        for k in 0..CONTAINMENT_GRID {
            let x = s - delta + 2.0 * delta * k as f64 / (CONTAINMENT_GRID - 1) as f64;
            if (self.f_hat(x)? - 1.0).abs() >= CONTAINMENT {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn side(&self) -> i8 {
        self.side
    }

    pub fn equilibrium(&self) -> &'a EquilibriumData {
        self.eq
    }

    /// Validity radius `δ_V` used by the kernel branches.
    pub fn delta_v(&self) -> f64 {
        self.delta_v
    }

    pub fn series_radius(&self) -> f64 {
        self.series_radius
    }

    /// Radius on which `f̂` can be evaluated (`σ̂`).
    pub fn eval_radius(&self) -> f64 {
        self.eq.sigma_hat()
    }

    fn gamma(&self) -> f64 {
        self.eq.gamma(self.side)
    }

    fn check(&self, x: f64) -> Result<f64> {
        let s = self.side as f64;
        if !((x - s).abs() <= self.eval_radius()) {
            return Err(Error::Domain { what: "edge map", value: x });
        }
        Ok(s)
    }

    // the quantity Q with |φ|^{3/2} = (3/4)Q, and whether x lies beyond the edge
    fn q(&self, x: f64) -> Result<(f64, bool)> {
        let s = self.side as f64;
        let beyond = (x - s) * s > 0.0;
        if beyond {
            Ok((self.eq.eta(x)?, true))
        } else if self.side > 0 {
            Ok((self.eq.xi(x), false))
        } else {
            Ok((self.eq.xi_complement(x), false))
        }
    }

    fn quotient(&self, x: f64) -> Result<f64> {
        let s = self.side as f64;
        let (q, _) = self.q(x)?;
        let p = cbrt(0.75 * q);
        Ok(p * p / ((x - s).abs() * self.gamma()))
    }

    /// `f̂_V(x)` for `|x - σ| <= σ̂`.
    pub fn f_hat(&self, x: f64) -> Result<f64> {
        let s = self.check(x)?;
        if (x - s).abs() < self.series_radius {
            let t = (x - s) / self.series_radius;
            let c = &self.local;
            return Ok(c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4]))));
        }
        self.quotient(x)
    }

    /// `φ(x) = σ(x-σ)γ_σ f̂(x)`.
    pub fn phi(&self, x: f64) -> Result<f64> {
        let s = self.check(x)?;
        Ok(s * (x - s) * self.gamma() * self.f_hat(x)?)
    }

    /// `φ'(x)`.
    pub fn phi_prime(&self, x: f64) -> Result<f64> {
        let s = self.check(x)?;
        if (x - s).abs() < self.series_radius {
            let h = self.series_radius;
            let t = (x - s) / h;
            let c = &self.local;
            let p = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
            let dp = (c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * 4.0 * c[4]))) / h;
            return Ok(s * self.gamma() * (p + (x - s) * dp));
        }
        let (q, beyond) = self.q(x)?;
        let root = cbrt(0.75 * q);
        if beyond {
            Ok(0.5 * self.eq.eta_prime(x) / root)
        } else {
            Ok(s * 0.5 * 2.0 * PI * self.eq.rho(x) / root)
        }
    }

    /// `f̂_V'(x)`.
    pub fn f_hat_prime(&self, x: f64) -> Result<f64> {
        let s = self.check(x)?;
        let h = self.series_radius;
        if (x - s).abs() < h {
            let t = (x - s) / h;
            let c = &self.local;
            return Ok((c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * 4.0 * c[4]))) / h);
        }
        let g = self.gamma();
        let d = x - s;
        Ok((self.phi_prime(x)? * d - self.phi(x)?) / (s * g * d * d))
    }

    /// `f_{N,V}(x) = N^{2/3}φ(x)`.
    pub fn f_n(&self, n: u32, x: f64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidInput("N must be positive"));
        }
        Ok(n23(n) * self.phi(x)?)
    }

    pub fn f_n_prime(&self, n: u32, x: f64) -> Result<f64> {
        Ok(n23(n) * self.phi_prime(x)?)
    }

    /// `d_V(x)`: `((x+1)f̂)^{1/4}` at `+1`, `((1-x)f̂)^{1/4}` at `-1`.
    pub fn d_v(&self, x: f64) -> Result<f64> {
        let s = self.check(x)?;
        Ok(sqrt(sqrt((s * x + 1.0) * self.f_hat(x)?)))
    }

    pub fn d_v_prime(&self, x: f64) -> Result<f64> {
        let s = self.check(x)?;
        let d = self.d_v(x)?;
        Ok(0.25 * (s * self.f_hat(x)? + (s * x + 1.0) * self.f_hat_prime(x)?) / (d * d * d))
    }
}

pub(crate) fn n23(n: u32) -> f64 {
    powf(n as f64, 2.0 / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Potential;

    // closed-form η for G ≡ 4
    fn eta_gue(x: f64) -> f64 {
        let r = sqrt(x * x - 1.0);
        2.0 * (x * r - libm::log(x + r))
    }

    fn f_hat_gue(x: f64) -> f64 {
        let p = cbrt(0.75 * eta_gue(x));
        p * p / ((x - 1.0) * 2.0)
    }

    #[test]
    fn anchored_at_one() {
        let eq = EquilibriumData::new(&Potential::gue()).unwrap();
        let (p, m) = EdgeMap::pair(&eq).unwrap();
        assert_eq!(p.f_hat(1.0).unwrap(), 1.0);
        assert_eq!(m.f_hat(-1.0).unwrap(), 1.0);
        assert_eq!(p.f_n(37, 1.0).unwrap(), 0.0);
        assert!((p.d_v(1.0).unwrap() - libm::pow(2.0, 0.25)).abs() < 1e-15);
        assert!((m.d_v(-1.0).unwrap() - libm::pow(2.0, 0.25)).abs() < 1e-15);
    }

    #[test]
    fn gue_closed_form() {
        let eq = EquilibriumData::new(&Potential::gue()).unwrap();
        let p = EdgeMap::new(&eq, 1).unwrap();
        let v = p.f_hat(1.1).unwrap();
        assert!((v - f_hat_gue(1.1)).abs() < 1e-12);
        assert!((v - 1.009_888_004_257_59).abs() < 1e-12);
        let fn100 = p.f_n(100, 1.01).unwrap();
        assert!((fn100 - libm::pow(100.0, 2.0 / 3.0) * 2.0 * 0.01 * f_hat_gue(1.01)).abs() < 1e-12);
        assert!((fn100 - 0.431_317_333_511_806).abs() < 1e-12);
    }

    #[test]
    fn continuous_through_the_edge() {
        let eq = EquilibriumData::new(&Potential::quartic()).unwrap();
        for side in [1i8, -1] {
            let em = EdgeMap::new(&eq, side).unwrap();
            let s = side as f64;
            let a = em.f_hat(s - 1e-4).unwrap();
            let b = em.f_hat(s + 1e-4).unwrap();
            assert!((a - b).abs() < 1e-3);
            for &h in &[0.999e-3, 1.001e-3] {
                let inner = em.f_hat(s + h).unwrap();
                let direct = em.quotient(s + h).unwrap();
                assert!((inner - direct).abs() < 1e-11, "side {side}, h {h}");
            }
        }
    }

    #[test]
    fn matching_identities() {
        let eq = EquilibriumData::new(&Potential::quartic()).unwrap();
        let p = EdgeMap::new(&eq, 1).unwrap();
        let dv = p.delta_v();
        for k in 1..=10 {
            let x = 1.0 + dv * k as f64 / 10.0;
            let lhs = powf((x - 1.0) * eq.gamma_plus() * p.f_hat(x).unwrap(), 1.5);
            let rhs = 0.75 * eq.eta(x).unwrap();
            assert!((lhs / rhs - 1.0).abs() < 1e-8);
            let y = 1.0 - dv * k as f64 / 10.0;
            let n = 50;
            let u = 2.0 / 3.0 * powf(-p.f_n(n, y).unwrap(), 1.5);
            assert!((u / (0.5 * n as f64 * eq.xi(y)) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let v = Potential::polynomial(&[0.0, 0.3, 1.0, 0.0, 0.1], crate::potential::ExtendedInterval::real_line()).unwrap();
        let eq = EquilibriumData::new(&v).unwrap();
        for side in [1i8, -1] {
            let em = EdgeMap::new(&eq, side).unwrap();
            let s = side as f64;
            for &off in &[-0.04, -0.0005, 0.0, 0.0007, 0.03] {
                let x = s + off;
                let h = 1e-5;
                let fd = (em.f_hat(x + h).unwrap() - em.f_hat(x - h).unwrap()) / (2.0 * h);
                assert!((fd - em.f_hat_prime(x).unwrap()).abs() < 1e-6, "side {side} x {x}");
                let fd = (em.phi(x + h).unwrap() - em.phi(x - h).unwrap()) / (2.0 * h);
                assert!((fd - em.phi_prime(x).unwrap()).abs() < 1e-6);
                let fd = (em.d_v(x + h).unwrap() - em.d_v(x - h).unwrap()) / (2.0 * h);
                assert!((fd - em.d_v_prime(x).unwrap()).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn containment_and_sign() {
        let eq = EquilibriumData::new(&Potential::gue()).unwrap();
        let p = EdgeMap::new(&eq, 1).unwrap();
        assert!(p.delta_v() > 0.0 && p.delta_v() < eq.sigma_hat());
        for k in -10..=10 {
            let x = 1.0 + p.delta_v() * k as f64 / 10.0;
            assert!((p.f_hat(x).unwrap() - 1.0).abs() < 0.2);
            assert!(p.d_v(x).unwrap() > 0.0);
            let f = p.f_n(10, x).unwrap();
            assert!(f == 0.0 || f.signum() == (x - 1.0).signum());
        }
        assert!(p.f_hat(2.0).is_err());
    }
}

//! Largest-eigenvalue statistics: the Tracy-Widom distribution, its right
//! tail, and the moderate and large deviation formulas for
//! `O_N(s) = P(λ_max > λ_V(1 + s/(γ⁺N^{2/3})))`.

use core::fmt;

use alloc::vec::Vec;

use crate::edge_map::n23;
use crate::equilibrium::EquilibriumData;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::math::{expm1, ln1p, powf, sqrt, KahanSum, PI};
use crate::oracle::RecurrenceTable;
use crate::quadrature::GaussLegendre;
use crate::scaled::ScaledReal;
use crate::special_fn::airy;

/// Length scale of the map `r = s + L(1+u)/(1-u)`.
pub const TW_MAP_SCALE: f64 = 10.0;
/// The Airy kernel is set to zero beyond this argument.
pub const TW_CUTOFF: f64 = 150.0;
/// Required agreement of `m` and `2m` node evaluations.
pub const TW_TOL: f64 = 1e-8;
/// `s` range accepted by [`tw2_cdf`].
pub const TW_RANGE: (f64, f64) = (-10.0, 15.0);
/// Moderate deviations are flagged valid for `s ≤ c N^{4/15}`.
pub const MODERATE_VALIDITY: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    TwCdf,
    TwTail,
    Moderate,
    Large,
    OracleGap,
}

impl Formula {
    pub fn as_str(&self) -> &'static str {
        match self {
            Formula::TwCdf => "tw_cdf",
            Formula::TwTail => "tw_tail",
            Formula::Moderate => "moderate",
            Formula::Large => "large",
            Formula::OracleGap => "oracle_gap",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DeviationResult {
    pub s_or_x: f64,
    pub value: ScaledReal,
    pub formula: Formula,
    pub error_scale: f64,
    /// Whether the argument lies in the range where the formula is claimed.
    pub regime_valid: bool,
}

/// `F_2(s)` together with `1 - F_2(s)`.
#[derive(Clone, Copy, Debug)]
pub struct TracyWidom {
    pub cdf: f64,
    pub complement: ScaledReal,
    /// `|F_m - F_{2m}|`.
    pub abs_change: f64,
}

// det(1 - A) and 1 - det(1 - A) for the Nyström matrix of the Airy kernel
fn tw_nystrom(s: f64, m: usize) -> Result<(f64, ScaledReal)> {
    let gl = GaussLegendre::new(m);
    let mut r = Vec::with_capacity(m);
    let mut w = Vec::with_capacity(m);
    let mut ai = Vec::with_capacity(m);
    let mut aip = Vec::with_capacity(m);
    for (&u, &wu) in gl.nodes().iter().zip(gl.weights()) {
        let x = s + TW_MAP_SCALE * (1.0 + u) / (1.0 - u);
        let jac = 2.0 * TW_MAP_SCALE / ((1.0 - u) * (1.0 - u));
        r.push(x);
        w.push(sqrt(wu * jac));
        if x > TW_CUTOFF {
            ai.push(0.0);
            aip.push(0.0);
        } else {
            let p = airy(x)?;
            ai.push(p.ai_value());
            aip.push(p.ai_prime_value());
        }
    }
    let a = Matrix::from_fn(m, |i, j| {
        let k = if i == j { aip[i] * aip[i] - r[i] * ai[i] * ai[i] } else { (ai[i] * aip[j] - aip[i] * ai[j]) / (r[i] - r[j]) };
        w[i] * w[j] * k
    });
    let top = (0..m).map(|i| a[(i, i)].abs()).fold(0.0f64, f64::max);
    let det = Matrix::from_fn(m, |i, j| (if i == j { 1.0 } else { 0.0 }) - a[(i, j)]).det();
    if top == 0.0 {
        return Ok((1.0, ScaledReal::ZERO));
    }
    let mu = Matrix::from_fn(m, |i, j| a[(i, j)] / top).symmetric_eigenvalues();
    let mut sum = KahanSum::new();
    for v in mu {
        sum.add(-ln1p(-(v * top).clamp(0.0, 1.0)));
    }
    let complement = -expm1(-sum.value());
    Ok((det.clamp(0.0, 1.0), ScaledReal::from_f64(complement)))
}

/// Tracy-Widom (`β = 2`) distribution by a Nyström discretization of `det(1 - 𝔸i)` on `(s, ∞)`.
pub fn tracy_widom(s: f64, m: usize) -> Result<TracyWidom> {
    if !(s >= TW_RANGE.0 && s <= TW_RANGE.1) {
        return Err(Error::Range { what: "Tracy-Widom argument", value: s, limit: if s < TW_RANGE.0 { TW_RANGE.0 } else { TW_RANGE.1 } });
    }
    if m < 20 {
        return Err(Error::InvalidInput("Tracy-Widom needs m >= 20"));
    }
    let (f1, _) = tw_nystrom(s, m)?;
    let (f2, c2) = tw_nystrom(s, 2 * m)?;
    let change = (f1 - f2).abs();
    if change > TW_TOL {
        return Err(Error::NoConvergence { what: "Tracy-Widom Nystrom", iterations: 2 * m, residual: change });
    }
    Ok(TracyWidom { cdf: f2, complement: c2, abs_change: change })
}

/// `F_2(s)`.
pub fn tw2_cdf(s: f64, m: usize) -> Result<f64> {
    Ok(tracy_widom(s, m)?.cdf)
}

/// `(1/16π) s^{-3/2} e^{-(4/3)s^{3/2}}`.
pub fn tw2_tail(s: f64) -> Result<ScaledReal> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain { what: "Tracy-Widom tail", value: s });
    }
    let s32 = s * sqrt(s);
    Ok(ScaledReal::from_exp(1.0 / (16.0 * PI * s32), -4.0 / 3.0 * s32))
}

/// Leading term of `O_N(s)` for `s ≥ 1`.
pub fn moderate_deviation(n: u32, s: f64) -> Result<DeviationResult> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::Domain { what: "moderate deviation", value: s });
    }
    if n == 0 {
        return Err(Error::InvalidInput("N must be positive"));
    }
    let nf = n as f64;
    Ok(DeviationResult {
        s_or_x: s,
        value: tw2_tail(s)?,
        formula: Formula::Moderate,
        error_scale: powf(s, 2.5) / n23(n) + powf(s, -1.5),
        regime_valid: s <= MODERATE_VALIDITY * powf(nf, 4.0 / 15.0),
    })
}

/// `log O_N(s)` to leading order.
pub fn moderate_deviation_log(n: u32, s: f64) -> Result<f64> {
    Ok(moderate_deviation(n, s)?.value.ln_abs())
}

/// `P(λ_max > λ_V(x)) ≈ e^{-Nη(x)}/(4πN(x²-1)η'(x))`.
pub fn large_deviation(eq: &EquilibriumData, n: u32, x: f64) -> Result<DeviationResult> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be positive"));
    }
    let lower = 1.0 + 1.0 / n23(n);
    if !(x > lower) || !(x < eq.domain().hi()) {
        return Err(Error::Domain { what: "large deviation", value: x });
    }
    let nf = n as f64;
    let eta = eq.eta(x)?;
    let deta = eq.eta_prime(x);
    let value = ScaledReal::from_exp(1.0 / (4.0 * PI * nf * (x * x - 1.0) * deta), -nf * eta);
    Ok(DeviationResult { s_or_x: x, value, formula: Formula::Large, error_scale: 1.0 / (nf * powf(x - 1.0, 1.5)), regime_valid: true })
}

/// `x = 1 + s/(γ⁺N^{2/3})`.
pub fn edge_point(eq: &EquilibriumData, n: u32, s: f64) -> f64 {
    1.0 + s / (eq.gamma_plus() * n23(n))
}

/// Finite-`N` probability that the largest eigenvalue exceeds `λ_V(x)`.
pub fn oracle_exceedance(eq: &EquilibriumData, tab: &RecurrenceTable, x: f64, m: usize) -> Result<DeviationResult> {
    let t = eq.map().to_outer(x);
    let g = tab.gap_probability(t, f64::INFINITY, m)?;
    Ok(DeviationResult {
        s_or_x: x,
        value: g.complement,
        formula: Formula::OracleGap,
        error_scale: g.abs_change.max(g.rel_change_complement * g.complement.to_f64()),
        regime_valid: true,
    })
}

/// `log` of the large-deviation leading term minus that of the moderate one at `s`.
pub fn log_gap_moderate_large(eq: &EquilibriumData, n: u32, s: f64) -> Result<f64> {
    let x = edge_point(eq, n, s);
    Ok(large_deviation(eq, n, x)?.value.ln_abs() - moderate_deviation(n, s)?.value.ln_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::ln;
    use crate::potential::Potential;

    #[test]
    fn tail_identity() {
        for &s in &[0.5, 4.0, 9.0, 40.0] {
            let v = tw2_tail(s).unwrap();
            let lhs = v.ln_abs() + 4.0 / 3.0 * powf(s, 1.5) + 1.5 * ln(s);
            assert!((lhs + ln(16.0 * PI)).abs() < 1e-12);
        }
        let v = tw2_tail(4.0).unwrap().to_f64();
        assert!((v / 5.7989e-8 - 1.0).abs() < 1e-3, "{v}");
        assert!(tw2_tail(0.0).is_err());
    }

    #[test]
    fn cdf_limits_and_monotonicity() {
        assert!(tw2_cdf(12.0, 40).unwrap() > 1.0 - 1e-10);
        assert!(tw2_cdf(-9.0, 80).unwrap() < 1e-6);
        let mut prev = 0.0;
        for k in 0..50 {
            let s = -8.0 + 16.0 * k as f64 / 49.0;
            let f = tw2_cdf(s, 40).unwrap();
            assert!(f >= prev - 1e-12);
            prev = f;
        }
    }

    #[test]
    fn known_values() {
        // F_2(-2) and F_2(0) from the Painlevé II representation
        assert!((tw2_cdf(-2.0, 40).unwrap() - 0.413_224_142_505_2).abs() < 1e-9);
        assert!((tw2_cdf(0.0, 40).unwrap() - 0.969_372_828_355_3).abs() < 1e-9);
    }

    #[test]
    fn moderate_structure() {
        let r = moderate_deviation(100, 3.0).unwrap();
        let expect = powf(3.0, 2.5) / powf(100.0, 2.0 / 3.0) + powf(3.0, -1.5);
        assert!((r.error_scale - expect).abs() < 1e-14);
        assert!(moderate_deviation(100, 1.5).unwrap().regime_valid);
        let s = 0.6 * powf(100.0, 4.0 / 15.0);
        assert!(!moderate_deviation(100, s).unwrap().regime_valid);
        assert!(moderate_deviation(100, 0.5).is_err());
    }

    #[test]
    fn large_deviation_gue() {
        let eq = EquilibriumData::new(&Potential::gue()).unwrap();
        let x: f64 = 1.5;
        let eta = 2.0 * (x * sqrt(1.25) - ln(x + sqrt(1.25)));
        assert!((eq.eta(x).unwrap() - eta).abs() < 1e-12);
        assert!((eq.eta_prime(x) - 4.0 * sqrt(1.25)).abs() < 1e-12);
        let r = large_deviation(&eq, 50, x).unwrap();
        let expect = -50.0 * eta - ln(4.0 * PI * 50.0 * 1.25 * 4.0 * sqrt(1.25));
        assert!((r.value.ln_abs() - expect).abs() < 1e-10);
        let mut prev = f64::INFINITY;
        for k in 0..=40 {
            let x = 1.1 + 0.8 * k as f64 / 40.0;
            let v = large_deviation(&eq, 50, x).unwrap().value.ln_abs();
            assert!(v < prev);
            prev = v;
        }
        assert!(large_deviation(&eq, 50, 1.0).is_err());
    }
}

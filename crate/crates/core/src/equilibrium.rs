//! Mhaskar-Rakhmanov-Saff endpoints and the equilibrium-measure quantities
//! `G_V`, `ρ_V`, `ξ_V`, `η_V`, `γ_V^±`, the Lagrange multiplier `l` and the
//! positivity constant `d`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{arccos_accurate, arccosh_accurate, cbrt, cosh, ksum, ln, sinh, sqrt, KahanSum, LN_2, PI};
use crate::potential::{AffineMap, ExtendedInterval, Field, Potential, Rescaled};
use crate::quadrature::{adaptive_gauss_legendre, gauss_chebyshev_nodes, ChebyshevSeries, ClenshawCurtis, GaussLegendre};

/// Gauss-Chebyshev order used when none is given.
pub const DEFAULT_QUAD_ORDER: usize = 256;
/// Smallest accepted Gauss-Chebyshev order.
pub const MIN_QUAD_ORDER: usize = 64;
/// Residual tolerance of [`solve_mrs`] when none is given.
pub const DEFAULT_MRS_TOL: f64 = 1e-13;

const MAX_NEWTON: usize = 100;
const DIAGONAL_SWITCH: f64 = 1e-6;
const NEAR_DIAGONAL: f64 = 1e-2;
const TAIL_COUNT: usize = 5;
const TAIL_THRESHOLD: f64 = 1e-12;
const DMIN_GRID: usize = 512;
const DMIN_SAFETY: f64 = 0.99;
const SIGMA_HAT_MAX: f64 = 0.5;

/// Endpoints `a_V < b_V` of the equilibrium support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MrsEndpoints {
    pub a: f64,
    pub b: f64,
    pub residual_norm: f64,
    pub newton_iters: usize,
}

/// The two endpoint conditions at `(a, b)`:
/// `A1 = ∫V'(λ(s))/√(1-s²)ds` and `A2 = (b-a)∫sV'(λ(s))/√(1-s²)ds - 4π`.
pub fn mrs_residual(pot: &Potential, a: f64, b: f64, order: usize) -> (f64, f64) {
    let map = AffineMap::new(a, b);
    let nodes = gauss_chebyshev_nodes(order);
    let w = PI / order as f64;
    let i0 = ksum(nodes.iter().map(|&s| pot.d1(map.to_outer(s))));
    let i1 = ksum(nodes.iter().map(|&s| s * pot.d1(map.to_outer(s))));
    (w * i0, (b - a) * w * i1 - 4.0 * PI)
}

fn mrs_jacobian(pot: &Potential, a: f64, b: f64, order: usize) -> [[f64; 2]; 2] {
    let map = AffineMap::new(a, b);
    let nodes = gauss_chebyshev_nodes(order);
    let w = PI / order as f64;
    let mut m = [KahanSum::new(); 3];
    let mut i1 = KahanSum::new();
    for &s in &nodes {
        let x = map.to_outer(s);
        let v2 = pot.d2(x);
        m[0].add(v2);
        m[1].add(s * v2);
        m[2].add(s * s * v2);
        i1.add(s * pot.d1(x));
    }
    let (m0, m1, m2, i1) = (w * m[0].value(), w * m[1].value(), w * m[2].value(), w * i1.value());
    let hw = 0.5 * (b - a);
    [[0.5 * (m0 - m1), 0.5 * (m0 + m1)], [-i1 + hw * (m1 - m2), i1 + hw * (m1 + m2)]]
}

fn inside(j: &ExtendedInterval, a: f64, b: f64) -> bool {
    a < b && j.contains_interior(a) && j.contains_interior(b)
}

// Symmetric starting bracket around the minimizer of V, widened or narrowed
// until the second endpoint condition changes sign.
fn initial_guess(pot: &Potential, order: usize) -> (f64, f64) {
    let j = pot.interval();
    let (lo, hi) = pot.sample_window();
    let grid = pot.sample_grid();
    let center = grid.iter().copied().find(|&x| pot.d1(x) >= 0.0).unwrap_or(0.5 * (lo + hi));
    let fits = |r: f64| inside(&j, center - r, center + r);
    let a2 = |r: f64| mrs_residual(pot, center - r, center + r, order).1;
    let mut r_lo = 0.0;
    let mut r_hi = 1.0;
    while !fits(r_hi) {
        r_hi *= 0.5;
    }
    for _ in 0..60 {
        if a2(r_hi) >= 0.0 {
            break;
        }
        r_lo = r_hi;
        if !fits(2.0 * r_hi) {
            return (center - r_hi, center + r_hi);
        }
        r_hi *= 2.0;
    }
    for _ in 0..40 {
        let mid = 0.5 * (r_lo + r_hi);
        if a2(mid) < 0.0 {
            r_lo = mid;
        } else {
            r_hi = mid;
        }
    }
    let r = 0.5 * (r_lo + r_hi);
    (center - r, center + r)
}

/// Solves the endpoint conditions by damped Newton iteration.
pub fn solve_mrs(pot: &Potential, tol: f64, init: Option<(f64, f64)>) -> Result<MrsEndpoints> {
    solve_mrs_with_order(pot, tol, init, DEFAULT_QUAD_ORDER)
}

pub fn solve_mrs_with_order(pot: &Potential, tol: f64, init: Option<(f64, f64)>, order: usize) -> Result<MrsEndpoints> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("MRS tolerance must be positive"));
    }
    if order < MIN_QUAD_ORDER {
        return Err(Error::InvalidInput("quadrature order below 64"));
    }
    let j = pot.interval();
    let (mut a, mut b) = init.unwrap_or_else(|| initial_guess(pot, order));
    if !inside(&j, a, b) {
        return Err(Error::EndpointEscape { a, b });
    }
    let norm = |r: (f64, f64)| r.0.abs().max(r.1.abs());
    let mut r = mrs_residual(pot, a, b, order);
    for it in 0..=MAX_NEWTON {
        if norm(r) < tol {
            return Ok(MrsEndpoints { a, b, residual_norm: norm(r), newton_iters: it });
        }
        if it == MAX_NEWTON {
            break;
        }
        let jac = mrs_jacobian(pot, a, b, order);
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if !(det.abs() > 0.0) || !det.is_finite() {
            return Err(Error::NoConvergence { what: "MRS Newton (singular Jacobian)", iterations: it, residual: norm(r) });
        }
        let da = (jac[1][1] * r.0 - jac[0][1] * r.1) / det;
        let db = (jac[0][0] * r.1 - jac[1][0] * r.0) / det;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (na, nb) = (a - step * da, b - step * db);
            if inside(&j, na, nb) {
                let nr = mrs_residual(pot, na, nb, order);
                if norm(nr) < norm(r) || step < 1e-6 {
                    a = na;
                    b = nb;
                    r = nr;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            return Err(Error::EndpointEscape { a: a - da, b: b - db });
        }
    }
    Err(Error::NoConvergence { what: "MRS Newton", iterations: MAX_NEWTON, residual: norm(r) })
}

/// One row of [`endpoint_sensitivity`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SensitivityRow {
    pub eps: f64,
    pub a: f64,
    pub b: f64,
    /// `(a_ε - a_0)/ε`, zero at `ε = 0`.
    pub slope_a: f64,
    pub slope_b: f64,
}

/// Endpoints of `base + ε f` for each `ε`, with difference-quotient slopes.
pub fn endpoint_sensitivity(base: &Potential, f: Arc<dyn Field>, eps_list: &[f64]) -> Result<Vec<SensitivityRow>> {
    if !base.interval().is_compact() {
        return Err(Error::InvalidInput("endpoint sensitivity needs a compact interval"));
    }
    let e0 = solve_mrs(base, DEFAULT_MRS_TOL, None)?;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        if eps == 0.0 {
            rows.push(SensitivityRow { eps, a: e0.a, b: e0.b, slope_a: 0.0, slope_b: 0.0 });
            continue;
        }
        let v = Potential::perturb(base, f.clone(), eps)?;
        let e = solve_mrs(&v, DEFAULT_MRS_TOL, Some((e0.a, e0.b)))?;
        rows.push(SensitivityRow { eps, a: e.a, b: e.b, slope_a: (e.a - e0.a) / eps, slope_b: (e.b - e0.b) / eps });
    }
    Ok(rows)
}

/// All equilibrium-measure quantities of a potential, in the rescaled variable.
#[derive(Clone, Debug)]
pub struct EquilibriumData {
    endpoints: MrsEndpoints,
    w: Rescaled,
    g_cheb: ChebyshevSeries,
    g_prime: ChebyshevSeries,
    sigma_hat: f64,
    gamma_plus: f64,
    gamma_minus: f64,
    lagrange_l: f64,
    d_min: f64,
    quad_order: usize,
    nodes: Vec<f64>,
    cc: ClenshawCurtis,
}

impl EquilibriumData {
    /// Solves the endpoints and builds everything with default orders.
    pub fn new(pot: &Potential) -> Result<Self> {
        let e = solve_mrs(pot, DEFAULT_MRS_TOL, None)?;
        Self::build(pot, e, DEFAULT_QUAD_ORDER)
    }

    /// Builds the data from solved endpoints.
    pub fn build(pot: &Potential, endpoints: MrsEndpoints, quad_order: usize) -> Result<Self> {
        if quad_order < MIN_QUAD_ORDER {
            return Err(Error::InvalidInput("quadrature order below 64"));
        }
        let w = pot.rescale(endpoints.a, endpoints.b)?;
        let dom = w.domain();
        let sigma_hat = if dom.is_compact() || !pot.is_polynomial() {
            let room = (dom.hi() - 1.0).min(-1.0 - dom.lo());
            SIGMA_HAT_MAX.min(0.5 * room)
        } else {
            SIGMA_HAT_MAX
        };
        if !(sigma_hat > 0.0) {
            return Err(Error::EndpointEscape { a: endpoints.a, b: endpoints.b });
        }
        let nodes = gauss_chebyshev_nodes(quad_order);
        let (lo, hi) = (-1.0 - sigma_hat, 1.0 + sigma_hat);
        let mut g_cheb = None;
        let mut last_tail = f64::INFINITY;
        let mut m = 32;
        while m <= 1024 {
            let s = ChebyshevSeries::fit(lo, hi, m, |x| g_direct(&w, &nodes, x));
            last_tail = s.relative_tail(TAIL_COUNT);
            if last_tail < TAIL_THRESHOLD {
                g_cheb = Some(s);
                break;
            }
            m *= 2;
        }
        let g_cheb = g_cheb.ok_or(Error::Resolution { tail: last_tail })?;
        let g_prime = g_cheb.derivative();

        let mut gmin = f64::INFINITY;
        let mut argmin = 0.0;
        for k in 0..DMIN_GRID {
            let x = lo + (hi - lo) * k as f64 / (DMIN_GRID - 1) as f64;
            let v = g_cheb.eval(x);
            if v < gmin {
                gmin = v;
                argmin = x;
            }
        }
        if !(gmin > 0.0) {
            return Err(Error::Positivity { x: argmin, value: gmin });
        }
        let gp = g_cheb.eval(1.0);
        let gm = g_cheb.eval(-1.0);
        let gamma = |g: f64| {
            let c = cbrt(g);
            c * c / cbrt(2.0)
        };
        let mut eq = EquilibriumData {
            endpoints,
            w,
            g_cheb,
            g_prime,
            sigma_hat,
            gamma_plus: gamma(gp),
            gamma_minus: gamma(gm),
            lagrange_l: 0.0,
            d_min: DMIN_SAFETY * gmin,
            quad_order,
            nodes,
            cc: ClenshawCurtis::new(256),
        };
        eq.lagrange_l = eq.compute_lagrange();
        Ok(eq)
    }

    // l = 2∫log(1-t)ρ(t)dt - W(1). With t = cos θ the integrand is
    // sin²θ G(cos θ) log(1 - cos θ)/(2π); the part G(1) is integrated exactly.
    fn compute_lagrange(&self) -> f64 {
        let g1 = self.g(1.0);
        let exact = PI * (1.0 - 2.0 * LN_2) / 4.0 * g1;
        let cc = ClenshawCurtis::new(1024);
        let rest = cc.integrate(0.0, PI, |th| {
            if th == 0.0 {
                return 0.0;
            }
            let s = crate::math::sin(th);
            let half = crate::math::sin(0.5 * th);
            let log1mc = LN_2 + 2.0 * ln(half);
            s * s * (self.g(crate::math::cos(th)) - g1) * log1mc
        });
        2.0 * (exact + rest) / (2.0 * PI) - self.w.w(1.0)
    }

    pub fn endpoints(&self) -> MrsEndpoints {
        self.endpoints
    }

    pub fn map(&self) -> AffineMap {
        self.w.map()
    }

    pub fn rescaled(&self) -> &Rescaled {
        &self.w
    }

    pub fn potential(&self) -> &Potential {
        self.w.potential()
    }

    /// `λ⁻¹(J)`.
    pub fn domain(&self) -> ExtendedInterval {
        self.w.domain()
    }

    pub fn sigma_hat(&self) -> f64 {
        self.sigma_hat
    }

    pub fn gamma_plus(&self) -> f64 {
        self.gamma_plus
    }

    pub fn gamma_minus(&self) -> f64 {
        self.gamma_minus
    }

    /// `γ^+` for `side > 0`, `γ^-` otherwise.
    pub fn gamma(&self, side: i8) -> f64 {
        if side > 0 {
            self.gamma_plus
        } else {
            self.gamma_minus
        }
    }

    pub fn lagrange_l(&self) -> f64 {
        self.lagrange_l
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn quad_order(&self) -> usize {
        self.quad_order
    }

    /// Chebyshev coefficients of `G_V` on `[-1-σ̂, 1+σ̂]`.
    pub fn g_coeffs(&self) -> &[f64] {
        self.g_cheb.coeffs()
    }

    pub fn g_series(&self) -> &ChebyshevSeries {
        &self.g_cheb
    }

    /// `G_V(x)`; direct quadrature outside the fitted interval.
    pub fn g(&self, x: f64) -> f64 {
        if x.abs() <= 1.0 + self.sigma_hat {
            self.g_cheb.eval(x)
        } else {
            g_direct(&self.w, &self.nodes, x)
        }
    }

    /// `G_V(x)` by direct Gauss-Chebyshev quadrature.
    pub fn g_quadrature(&self, x: f64) -> f64 {
        g_direct(&self.w, &self.nodes, x)
    }

    /// `G_V'(x)` on the fitted interval.
    pub fn g_prime(&self, x: f64) -> f64 {
        self.g_prime.eval(x)
    }

    pub fn rho(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            return 0.0;
        }
        sqrt((1.0 - x) * (1.0 + x)) * self.g(x) / (2.0 * PI)
    }

    /// `ξ_V(x) = 2π∫_x^1 ρ_V`.
    pub fn xi(&self, x: f64) -> f64 {
        if x >= 1.0 {
            return 0.0;
        }
        if x <= -1.0 {
            return 2.0 * PI;
        }
        if x >= 0.0 {
            self.xi_raw(x)
        } else {
            2.0 * PI - self.xi_complement_raw(x)
        }
    }

    /// `2π - ξ_V(x) = 2π∫_{-1}^x ρ_V`, accurate near `x = -1`.
    pub fn xi_complement(&self, x: f64) -> f64 {
        if x >= 1.0 {
            return 2.0 * PI;
        }
        if x <= -1.0 {
            return 0.0;
        }
        if x < 0.0 {
            self.xi_complement_raw(x)
        } else {
            2.0 * PI - self.xi_raw(x)
        }
    }

    fn xi_raw(&self, x: f64) -> f64 {
        let th = arccos_accurate(x);
        let v = self.cc.integrate(0.0, th, |t| {
            let s = crate::math::sin(t);
            s * s * self.g(crate::math::cos(t))
        });
        v.clamp(0.0, 2.0 * PI)
    }

    fn xi_complement_raw(&self, x: f64) -> f64 {
        let th = arccos_accurate(-x);
        let v = self.cc.integrate(0.0, th, |t| {
            let s = crate::math::sin(t);
            s * s * self.g(-crate::math::cos(t))
        });
        v.clamp(0.0, 2.0 * PI)
    }

    /// `2π∫_y^x ρ_V` for `x, y ∈ [-1, 1]`, without cancellation when `x ≈ y`.
    pub fn xi_between(&self, y: f64, x: f64) -> f64 {
        let (tx, ty) = (arccos_accurate(x.clamp(-1.0, 1.0)), arccos_accurate(y.clamp(-1.0, 1.0)));
        GaussLegendre::new(16).integrate(tx, ty, |t| {
            let s = crate::math::sin(t);
            s * s * self.g(crate::math::cos(t))
        })
    }

    /// `η_V(x)`; zero on `[-1, 1]`.
    pub fn eta(&self, x: f64) -> Result<f64> {
        if x.abs() <= 1.0 {
            return Ok(0.0);
        }
        if !self.domain().contains(x) {
            return Err(Error::Domain { what: "eta", value: x });
        }
        let side = if x > 0.0 { 1.0 } else { -1.0 };
        let u = arccosh_accurate(x.abs());
        // ∫_0^u sinh² ≥ u³/3, so this tolerance is relative
        let scale = self.d_min * (u * u * u / 3.0);
        let v = adaptive_gauss_legendre(0.0, u, 1e-15 * scale, |t| {
            let s = sinh(t);
            s * s * self.g(side * cosh(t))
        });
        Ok(v)
    }

    /// `η_V'(x)`: `√(x²-1)G_V(x)` for `x > 1`, its negative for `x < -1`.
    pub fn eta_prime(&self, x: f64) -> f64 {
        if x.abs() <= 1.0 {
            return 0.0;
        }
        let v = sqrt((x - 1.0) * (x + 1.0)) * self.g(x);
        if x > 0.0 {
            v
        } else {
            -v
        }
    }
}

// (1/π)∫h(t,x)/√(1-t²)dt by Gauss-Chebyshev quadrature.
fn g_direct(w: &Rescaled, nodes: &[f64], x: f64) -> f64 {
    let w1x = w.w1(x);
    let s = ksum(nodes.iter().map(|&t| divided_difference(w, t, x, w1x)));
    s / nodes.len() as f64
}

// h(t,x) = (W'(t)-W'(x))/(t-x) = ∫_0^1 W''(x+u(t-x))du.
fn divided_difference(w: &Rescaled, t: f64, x: f64, w1x: f64) -> f64 {
    let d = t - x;
    if d.abs() < DIAGONAL_SWITCH {
        w.w2(0.5 * (t + x))
    } else if d.abs() < NEAR_DIAGONAL {
        // four-point Gauss-Legendre on the u-average avoids cancellation
        const U: [f64; 2] = [0.339_981_043_584_856_26, 0.861_136_311_594_052_6];
        const WT: [f64; 2] = [0.652_145_154_862_546_1, 0.347_854_845_137_453_9];
        let mut acc = 0.0;
        for k in 0..2 {
            acc += WT[k] * (w.w2(x + 0.5 * (1.0 + U[k]) * d) + w.w2(x + 0.5 * (1.0 - U[k]) * d));
        }
        0.5 * acc
    } else {
        (w.w1(t) - w1x) / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Sine;

    fn quartic_b() -> f64 {
        libm::pow(4.0 / 3.0, 0.25)
    }

    #[test]
    fn gue_endpoints() {
        let e = solve_mrs(&Potential::gue(), 1e-13, None).unwrap();
        assert!((e.a + sqrt(2.0)).abs() < 1e-12);
        assert!((e.b - sqrt(2.0)).abs() < 1e-12);
        assert!(e.residual_norm < 1e-13);
    }

    #[test]
    fn quartic_endpoints() {
        let e = solve_mrs(&Potential::quartic(), 1e-13, None).unwrap();
        assert!((e.b - quartic_b()).abs() < 1e-12);
        assert!((e.a + quartic_b()).abs() < 1e-12);
    }

    #[test]
    fn residual_holds_under_doubled_order() {
        let v = Potential::polynomial(&[0.0, 0.3, 1.0, 0.0, 0.1], ExtendedInterval::real_line()).unwrap();
        let e = solve_mrs(&v, 1e-12, None).unwrap();
        let (r1, r2) = mrs_residual(&v, e.a, e.b, 2 * DEFAULT_QUAD_ORDER);
        assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
    }

    #[test]
    fn even_potential_has_symmetric_support() {
        let v = Potential::polynomial(&[0.0, 0.0, 1.0, 0.0, 0.1], ExtendedInterval::real_line()).unwrap();
        let e = solve_mrs(&v, 1e-13, None).unwrap();
        assert!((e.a + e.b).abs() < 1e-12);
    }

    #[test]
    fn hard_edge_is_reported() {
        let v = Potential::polynomial(&[0.0, 0.0, 1.0], ExtendedInterval::new(-1.0, 1.0).unwrap()).unwrap();
        assert!(matches!(solve_mrs(&v, 1e-12, None), Err(Error::EndpointEscape { .. })));
    }

    #[test]
    fn gue_equilibrium_quantities() {
        let eq = EquilibriumData::new(&Potential::gue()).unwrap();
        for &x in &[-1.4, -0.3, 0.0, 0.77, 1.5] {
            assert!((eq.g(x) - 4.0).abs() < 1e-12);
        }
        assert!((eq.gamma_plus() - 2.0).abs() < 1e-12);
        assert!((eq.gamma_minus() - 2.0).abs() < 1e-12);
        assert!((eq.rho(0.0) - 2.0 / PI).abs() < 1e-12);
        assert_eq!(eq.rho(1.0), 0.0);
        assert!((eq.xi(0.0) - PI).abs() < 1e-12);
        assert_eq!(eq.xi(1.0), 0.0);
        assert_eq!(eq.xi(-1.0), 2.0 * PI);
        assert!((eq.eta(2.0).unwrap() - 4.294_287_436_425_875_8).abs() < 1e-12);
        assert!((eq.lagrange_l() + 1.0 + 2.0 * LN_2).abs() < 1e-12);
        assert!(eq.d_min() > 0.0 && eq.d_min() < 4.0);
    }

    #[test]
    fn quartic_equilibrium_quantities() {
        let eq = EquilibriumData::new(&Potential::quartic()).unwrap();
        let g = |x: f64| 16.0 / 3.0 * (x * x + 0.5);
        for &x in &[-1.5, -1.0, -0.2, 0.0, 0.9, 1.4] {
            assert!((eq.g(x) - g(x)).abs() < 1e-11, "x = {x}");
        }
        assert!((eq.gamma_plus() - libm::pow(2.0, 5.0 / 3.0)).abs() < 1e-11);
        assert!((eq.lagrange_l() + 1.886_294_361_119_890_6).abs() < 1e-10);
        assert!((eq.xi(0.5) - 1.661_382_400_500_976_2).abs() < 1e-11);
        assert!((eq.eta(1.3).unwrap() - 1.640_328_596_649_782_5).abs() < 1e-11);
    }

    #[test]
    fn g_beyond_fit_uses_quadrature() {
        let eq = EquilibriumData::new(&Potential::quartic()).unwrap();
        assert!((eq.g(3.0) - 16.0 / 3.0 * 9.5).abs() < 1e-10);
    }

    #[test]
    fn perturbed_compact_potential() {
        let base = Potential::polynomial(&[0.0, 0.0, 1.0], ExtendedInterval::new(-3.0, 3.0).unwrap()).unwrap();
        let v = Potential::perturb(&base, Arc::new(Sine { amplitude: 1.0 }), 0.1).unwrap();
        let eq = EquilibriumData::new(&v).unwrap();
        let e = eq.endpoints();
        assert!(e.a + e.b < 0.0);
        assert!(eq.sigma_hat() > 0.0 && eq.sigma_hat() <= 0.5);
        assert!(eq.eta(eq.domain().hi() + 0.1).is_err());
    }

    #[test]
    fn xi_and_complement_agree() {
        let v = Potential::polynomial(&[0.0, 0.3, 1.0, 0.0, 0.1], ExtendedInterval::real_line()).unwrap();
        let eq = EquilibriumData::new(&v).unwrap();
        for &x in &[-0.99, -0.4, 0.0, 0.3, 0.95] {
            assert!((eq.xi(x) + eq.xi_complement(x) - 2.0 * PI).abs() < 1e-12);
        }
        assert!((eq.xi_between(-0.2, 0.4) - (eq.xi(-0.2) - eq.xi(0.4))).abs() < 1e-12);
    }

    #[test]
    fn sensitivity_at_zero_is_exact() {
        let base = Potential::polynomial(&[0.0, 0.0, 1.0], ExtendedInterval::new(-3.0, 3.0).unwrap()).unwrap();
        let rows = endpoint_sensitivity(&base, Arc::new(Sine { amplitude: 1.0 }), &[0.0, 0.01]).unwrap();
        let e0 = solve_mrs(&base, DEFAULT_MRS_TOL, None).unwrap();
        assert_eq!((rows[0].a, rows[0].b), (e0.a, e0.b));
        assert!(rows[1].slope_b.is_finite());
    }

    #[test]
    fn low_quad_order_is_rejected() {
        let e = solve_mrs(&Potential::gue(), 1e-12, None).unwrap();
        assert!(EquilibriumData::build(&Potential::gue(), e, 32).is_err());
    }
}

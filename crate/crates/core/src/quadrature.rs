//! Quadrature rules and Chebyshev approximation.

use alloc::vec::Vec;

use crate::math::{cos, ksum, KahanSum, PI};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule; nodes ascending.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = cos(PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        ksum(self.mapped(a, b).map(|(x, w)| w * f(x)))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre grid: `panels` equal panels of `order` nodes on `[a, b]`.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(order);
    let h = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * order);
    let mut ws = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + h * p as f64;
        for (x, w) in rule.mapped(lo, lo + h) {
            xs.push(x);
            ws.push(w);
        }
    }
    (xs, ws)
}

/// Gauss–Chebyshev nodes `cos((2k-1)π/2n)`; every weight equals `π/n`.
pub fn gauss_chebyshev_nodes(n: usize) -> Vec<f64> {
    (1..=n).map(|k| cos((2 * k - 1) as f64 * PI / (2 * n) as f64)).collect()
}

/// `∫_{-1}^{1} f(t)/√(1-t²) dt` by `n`-point Gauss–Chebyshev.
pub fn gauss_chebyshev<F: FnMut(f64) -> f64>(n: usize, mut f: F) -> f64 {
    let mut acc = KahanSum::new();
    for k in 1..=n {
        acc.add(f(cos((2 * k - 1) as f64 * PI / (2 * n) as f64)));
    }
    acc.value() * PI / n as f64
}

/// Clenshaw–Curtis rule with `n + 1` points on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct ClenshawCurtis {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl ClenshawCurtis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2), "Clenshaw-Curtis order must be even and at least 2");
        let nf = n as f64;
        let mut nodes = Vec::with_capacity(n + 1);
        let mut weights = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let theta = k as f64 * PI / nf;
            let mut s = KahanSum::new();
            for j in 1..=n / 2 {
                let b = if 2 * j == n { 1.0 } else { 2.0 };
                s.add(b / (4.0 * (j * j) as f64 - 1.0) * cos(2.0 * j as f64 * theta));
            }
            let c = if k == 0 || k == n { 1.0 } else { 2.0 };
            nodes.push(-cos(theta));
            weights.push(c / nf * (1.0 - s.value()));
        }
        ClenshawCurtis { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * ksum(self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)))
    }
}

/// Adaptive bisection with a 10/20-point Gauss–Legendre error estimate.
pub fn adaptive_gauss_legendre<F: FnMut(f64) -> f64>(a: f64, b: f64, tol: f64, mut f: F) -> f64 {
    let coarse = GaussLegendre::new(10);
    let fine = GaussLegendre::new(20);
    let mut stack: Vec<(f64, f64, usize)> = alloc::vec![(a, b, 0)];
    let mut total = KahanSum::new();
    let scale = (b - a).abs().max(f64::MIN_POSITIVE);
    while let Some((lo, hi, depth)) = stack.pop() {
        let i1 = coarse.integrate(lo, hi, &mut f);
        let i2 = fine.integrate(lo, hi, &mut f);
        let local_tol = tol * (hi - lo).abs() / scale;
        if (i1 - i2).abs() <= local_tol.max(1e-15 * i2.abs()) || depth >= 40 {
            total.add(i2);
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    total.value()
}

/// Chebyshev series on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevSeries {
    lo: f64,
    hi: f64,
    coeffs: Vec<f64>,
}

impl ChebyshevSeries {
    /// Interpolates `f` at `m` first-kind Chebyshev points of `[lo, hi]`.
    pub fn fit<F: FnMut(f64) -> f64>(lo: f64, hi: f64, m: usize, mut f: F) -> Self {
        let values: Vec<f64> = chebyshev_points(lo, hi, m).into_iter().map(&mut f).collect();
        Self::from_values(lo, hi, &values)
    }

    /// Coefficients from samples at the points returned by [`chebyshev_points`].
    pub fn from_values(lo: f64, hi: f64, values: &[f64]) -> Self {
        let m = values.len();
        let mf = m as f64;
        let mut coeffs = Vec::with_capacity(m);
        for k in 0..m {
            let mut s = KahanSum::new();
            for (j, &v) in values.iter().enumerate() {
                s.add(v * cos(PI * k as f64 * (j as f64 + 0.5) / mf));
            }
            let c = 2.0 * s.value() / mf;
            coeffs.push(if k == 0 { 0.5 * c } else { c });
        }
        ChebyshevSeries { lo, hi, coeffs }
    }

    pub fn from_coeffs(lo: f64, hi: f64, coeffs: Vec<f64>) -> Self {
        ChebyshevSeries { lo, hi, coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let t = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + self.coeffs.first().copied().unwrap_or(0.0)
    }

    /// Series of the derivative.
    pub fn derivative(&self) -> ChebyshevSeries {
        let n = self.coeffs.len();
        if n <= 1 {
            return ChebyshevSeries { lo: self.lo, hi: self.hi, coeffs: alloc::vec![0.0] };
        }
        let mut d = alloc::vec![0.0; n];
        for k in (0..n - 1).rev() {
            let next = if k + 2 < n { d[k + 2] } else { 0.0 };
            d[k] = next + 2.0 * (k + 1) as f64 * self.coeffs[k + 1];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        let scale = 2.0 / (self.hi - self.lo);
        for c in d.iter_mut() {
            *c *= scale;
        }
        ChebyshevSeries { lo: self.lo, hi: self.hi, coeffs: d }
    }

    /// Largest of the last `k` coefficients relative to the largest coefficient.
    pub fn relative_tail(&self, k: usize) -> f64 {
        let max = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return 0.0;
        }
        let n = self.coeffs.len();
        self.coeffs[n.saturating_sub(k)..].iter().fold(0.0f64, |m, c| m.max(c.abs())) / max
    }
}

/// First-kind Chebyshev points of `[lo, hi]`, in the order used by [`ChebyshevSeries::from_values`].
pub fn chebyshev_points(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..m).map(|j| mid + half * cos(PI * (j as f64 + 0.5) / m as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, sqrt};

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(12);
        // degree 23 is exact for 12 nodes
        let v = rule.integrate(-1.0, 1.0, |x| crate::math::powi(x, 22));
        assert!((v - 2.0 / 23.0).abs() < 1e-15);
        let s: f64 = rule.weights().iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn large_legendre_rule_is_accurate() {
        let rule = GaussLegendre::new(400);
        let v = rule.integrate(0.0, 3.0, exp);
        assert!((v - (exp(3.0) - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_rule_moments() {
        assert!((gauss_chebyshev(8, |t| t * t) - PI / 2.0).abs() < 1e-14);
        assert!((gauss_chebyshev(8, |_| 1.0) - PI).abs() < 1e-14);
    }

    #[test]
    fn clenshaw_curtis_matches_closed_form() {
        let cc = ClenshawCurtis::new(32);
        let v = cc.integrate(0.0, 1.0, |x| sqrt(1.0 + x));
        assert!((v - (2.0 / 3.0) * (2.0f64.powf(1.5) - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn adaptive_rule_handles_peaks() {
        let v = adaptive_gauss_legendre(-1.0, 1.0, 1e-13, |x| 1.0 / (1e-4 + x * x));
        let exact = 2.0 / 1e-2 * libm::atan(1.0 / 1e-2);
        assert!((v - exact).abs() / exact < 1e-11);
    }

    #[test]
    fn chebyshev_fit_and_derivative() {
        let s = ChebyshevSeries::fit(-2.0, 3.0, 30, |x| exp(0.5 * x));
        for &x in &[-2.0, -0.3, 1.7, 3.0] {
            assert!((s.eval(x) - exp(0.5 * x)).abs() < 1e-13);
            let err = (s.derivative().eval(x) - 0.5 * exp(0.5 * x)).abs();
            assert!(err < 1e-11, "{x}: {err}");
        }
        assert!(s.relative_tail(5) < 1e-14);
    }
}

//! Exact finite-`N` quantities for the weight `e^{-NV}` on `J`: recurrence
//! coefficients of the orthogonal polynomials, the Christoffel-Darboux kernel,
//! correlation determinants and Fredholm-determinant gap probabilities.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::math::{exp, expm1, ksum, ln, ln1p, sqrt, KahanSum};
use crate::potential::{ExtendedInterval, Potential};
use crate::quadrature::{composite_gauss_legendre, GaussLegendre};
use crate::scaled::ScaledReal;

/// Initial bound on `N(V - V_min)` defining the truncated support.
pub const TAIL_EXPONENT: f64 = 92.0;
/// Largest admissible `K_{n_max+1}(e, e)` at the truncation ends.
pub const TAIL_DENSITY: f64 = 1e-25;
/// Maximal relative change of a coefficient under grid doubling.
pub const DOUBLING_TOL: f64 = 1e-10;
/// Gauss-Legendre order of each grid panel.
pub const PANEL_ORDER: usize = 20;
/// Below this separation the kernel is evaluated as a sum.
pub const SUM_FORM_SWITCH: f64 = 1e-6;
/// Nyström `m` versus `2m` agreement required of a gap probability.
pub const GAP_TOL: f64 = 1e-8;
/// Truncation of semi-infinite gap intervals relative to the density at the finite end.
pub const GAP_TAIL: f64 = 1e-30;

const MAX_TAIL_ROUNDS: usize = 12;

/// Three-term recurrence `p_{j+1} = (x - α_j)p_j - β_j p_{j-1}` of the monic
/// orthogonal polynomials of `e^{-NV}dx` on `J`; `β_0` is the total mass.
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    pot: Potential,
    n_weight: u32,
    alphas: Vec<f64>,
    betas: Vec<f64>,
    ln_beta0: f64,
    truncation: ExtendedInterval,
    grid_size: usize,
    max_rel_change: f64,
}

fn minimizer(pot: &Potential) -> f64 {
    let (mut lo, mut hi) = pot.sample_window();
    if pot.d1(lo) >= 0.0 {
        return lo;
    }
    if pot.d1(hi) <= 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if pot.d1(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * (1.0 + mid.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

// Point on the `dir` side of `xmin` where N(V - V_min) reaches `level`, or the end of J.
fn level_crossing(pot: &Potential, n: f64, xmin: f64, vmin: f64, level: f64, dir: f64) -> Result<f64> {
    let j = pot.interval();
    let end = if dir > 0.0 { j.hi() } else { j.lo() };
    let t = |x: f64| n * (pot.value(x) - vmin);
    if end.is_finite() && t(end) <= level {
        return Ok(end);
    }
    let mut step = 1.0;
    let mut inner = xmin;
    let mut outer = xmin + dir * step;
    for _ in 0..200 {
        if end.is_finite() && (outer - end) * dir >= 0.0 {
            outer = end;
            break;
        }
        if t(outer) > level {
            break;
        }
        inner = outer;
        step *= 2.0;
        outer = xmin + dir * step;
    }
    if !(t(outer) > level) {
        return Err(Error::Tail);
    }
    for _ in 0..200 {
        let mid = 0.5 * (inner + outer);
        if t(mid) > level {
            outer = mid;
        } else {
            inner = mid;
        }
        if (outer - inner).abs() < 1e-14 * (1.0 + mid.abs()) {
            break;
        }
    }
    Ok(outer)
}

// Orthonormal Stieltjes (Lanczos) sweep on a discrete measure; returns
// α_0..α_{n_max}, monic β_1..β_{n_max} (β_0 slot left for the mass), ln(mass).
fn stieltjes(nodes: &[f64], weights: &[f64], n_max: usize) -> (Vec<f64>, Vec<f64>, f64) {
    let m = nodes.len();
    let mass = ksum(weights.iter().copied());
    let mut q_prev = alloc::vec![0.0; m];
    let mut q: Vec<f64> = weights.iter().map(|w| sqrt(w / mass)).collect();
    let mut alphas = Vec::with_capacity(n_max + 1);
    let mut betas = alloc::vec![0.0; n_max + 1];
    let mut r = alloc::vec![0.0; m];
    for j in 0..=n_max {
        let alpha = ksum(nodes.iter().zip(&q).map(|(x, qi)| x * qi * qi));
        alphas.push(alpha);
        if j == n_max {
            break;
        }
        let sb = if j == 0 { 0.0 } else { sqrt(betas[j]) };
        for i in 0..m {
            r[i] = (nodes[i] - alpha) * q[i] - sb * q_prev[i];
        }
        let beta = ksum(r.iter().map(|v| v * v));
        betas[j + 1] = beta;
        let inv = 1.0 / sqrt(beta);
        core::mem::swap(&mut q_prev, &mut q);
        for i in 0..m {
            q[i] = r[i] * inv;
        }
    }
    (alphas, betas, ln(mass))
}

struct Discretized {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    ln_mass: f64,
}

fn discretize(pot: &Potential, n: f64, vmin: f64, lo: f64, hi: f64, grid_size: usize, n_max: usize) -> Discretized {
    let panels = grid_size.div_ceil(PANEL_ORDER);
    let (x, w) = composite_gauss_legendre(lo, hi, panels, PANEL_ORDER);
    let wt: Vec<f64> = x.iter().zip(&w).map(|(&xi, &wi)| wi * exp(-n * (pot.value(xi) - vmin))).collect();
    let (alphas, betas, ln_mass) = stieltjes(&x, &wt, n_max);
    Discretized { alphas, betas, ln_mass: ln_mass - n * vmin }
}

/// Builds the recurrence for `e^{-NV}` up to degree `n_max`.
pub fn build_recurrence(pot: &Potential, n_weight: u32, n_max: usize) -> Result<RecurrenceTable> {
    build_recurrence_with_grid(pot, n_weight, n_max, 8 * n_max + 400)
}

/// As [`build_recurrence`] with an explicit minimal grid size.
pub fn build_recurrence_with_grid(pot: &Potential, n_weight: u32, n_max: usize, grid_size: usize) -> Result<RecurrenceTable> {
    if n_weight == 0 {
        return Err(Error::InvalidInput("N must be positive"));
    }
    if n_max == 0 || n_max > 2 * n_weight as usize {
        return Err(Error::InvalidInput("need 1 <= n_max <= 2N"));
    }
    let grid_size = grid_size.max(8 * n_max + 400);
    let n = n_weight as f64;
    let xmin = minimizer(pot);
    let vmin = pot.value(xmin);
    let mut level = TAIL_EXPONENT;
    for _ in 0..MAX_TAIL_ROUNDS {
        let lo = level_crossing(pot, n, xmin, vmin, level, -1.0)?;
        let hi = level_crossing(pot, n, xmin, vmin, level, 1.0)?;
        let d = discretize(pot, n, vmin, lo, hi, grid_size, n_max);
        let mut table = RecurrenceTable {
            pot: pot.clone(),
            n_weight,
            betas: {
                let mut b = d.betas.clone();
                b[0] = exp(d.ln_mass);
                b
            },
            alphas: d.alphas,
            ln_beta0: d.ln_mass,
            truncation: ExtendedInterval::new(lo, hi)?,
            grid_size: grid_size.div_ceil(PANEL_ORDER) * PANEL_ORDER,
            max_rel_change: 0.0,
        };
        let lo_open = lo > pot.interval().lo();
        let hi_open = hi < pot.interval().hi();
        let tail_ok = [(lo, lo_open), (hi, hi_open)].iter().all(|&(e, open)| !open || table.partial_density(e, n_max + 1).to_f64() < TAIL_DENSITY);
        if !tail_ok {
            level *= 1.5;
            continue;
        }
        let fine = discretize(pot, n, vmin, lo, hi, 2 * grid_size, n_max);
        let mut worst = 0.0f64;
        for j in 0..=n_max {
            let scale = table.alphas[j].abs().max(sqrt(table.betas[j.max(1)])).max(1e-300);
            let da = (fine.alphas[j] - table.alphas[j]).abs() / scale;
            worst = worst.max(da);
            if da > DOUBLING_TOL {
                return Err(Error::GridTooCoarse { index: j, rel_change: da });
            }
            if j >= 1 {
                let db = (fine.betas[j] - table.betas[j]).abs() / table.betas[j];
                worst = worst.max(db);
                if db > DOUBLING_TOL {
                    return Err(Error::GridTooCoarse { index: j, rel_change: db });
                }
            }
        }
        let dm = (fine.ln_mass - table.ln_beta0).abs();
        if dm > DOUBLING_TOL {
            return Err(Error::GridTooCoarse { index: 0, rel_change: dm });
        }
        table.max_rel_change = worst.max(dm);
        return Ok(table);
    }
    Err(Error::Tail)
}

/// Outcome of a Nyström gap-probability evaluation.
#[derive(Clone, Copy, Debug)]
pub struct GapProbability {
    /// `det(1 - K)` on the interval.
    pub probability: f64,
    /// `1 - det(1 - K)`, accurate also when it is tiny.
    pub complement: ScaledReal,
    /// `|P_m - P_{2m}|`.
    pub abs_change: f64,
    /// Relative change of the complement between `m` and `2m` nodes.
    pub rel_change_complement: f64,
    /// Integration window actually used.
    pub window: (f64, f64),
    pub nodes: usize,
}

impl RecurrenceTable {
    /// Table from known coefficients; `betas[0]` is the total mass.
    pub fn from_coefficients(pot: &Potential, n_weight: u32, alphas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if alphas.len() != betas.len() || alphas.is_empty() {
            return Err(Error::InvalidInput("alphas and betas must have equal, positive length"));
        }
        if betas.iter().any(|&b| !(b > 0.0)) {
            return Err(Error::InvalidInput("betas must be positive"));
        }
        let mut table = RecurrenceTable {
            pot: pot.clone(),
            n_weight,
            ln_beta0: ln(betas[0]),
            alphas,
            betas,
            truncation: pot.interval(),
            grid_size: 0,
            max_rel_change: 0.0,
        };
        let n = n_weight as f64;
        let xmin = minimizer(pot);
        let vmin = pot.value(xmin);
        let count = table.alphas.len();
        let mut level = TAIL_EXPONENT;
        for _ in 0..MAX_TAIL_ROUNDS {
            let lo = level_crossing(pot, n, xmin, vmin, level, -1.0)?;
            let hi = level_crossing(pot, n, xmin, vmin, level, 1.0)?;
            let ok = [(lo, lo > pot.interval().lo()), (hi, hi < pot.interval().hi())]
                .iter()
                .all(|&(e, open)| !open || table.partial_density(e, count).to_f64() < TAIL_DENSITY);
            if ok {
                table.truncation = ExtendedInterval::new(lo, hi)?;
                return Ok(table);
            }
            level *= 1.5;
        }
        Err(Error::Tail)
    }

    /// Closed-form table for `V = x²`: `α_j = 0`, `β_j = j/(2N)`, `β_0 = √(π/N)`.
    pub fn hermite(n_weight: u32, n_max: usize) -> Self {
        let n = n_weight as f64;
        let alphas = alloc::vec![0.0; n_max + 1];
        let mut betas: Vec<f64> = (0..=n_max).map(|j| j as f64 / (2.0 * n)).collect();
        betas[0] = sqrt(crate::math::PI / n);
        Self::from_coefficients(&Potential::gue(), n_weight, alphas, betas).expect("valid Hermite coefficients")
    }

    pub fn n_weight(&self) -> u32 {
        self.n_weight
    }

    pub fn n_max(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Monic `β_j`; `β_0` is the total mass (may under- or overflow, see [`Self::ln_beta0`]).
    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn ln_beta0(&self) -> f64 {
        self.ln_beta0
    }

    pub fn truncation(&self) -> ExtendedInterval {
        self.truncation
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// Largest relative coefficient change observed under grid doubling.
    pub fn max_rel_change(&self) -> f64 {
        self.max_rel_change
    }

    pub fn potential(&self) -> &Potential {
        &self.pot
    }

    fn check(&self, x: f64) -> Result<()> {
        if !self.pot.interval().contains(x) {
            return Err(Error::Domain { what: "oracle kernel", value: x });
        }
        Ok(())
    }

    /// Weighted orthonormal polynomials `φ_j = p_j e^{-NV/2}`, `j < count`.
    pub fn phis(&self, x: f64, count: usize) -> Result<Vec<ScaledReal>> {
        self.check(x)?;
        if count > self.alphas.len() {
            return Err(Error::InvalidInput("requested degree beyond the table"));
        }
        Ok(self.phis_unchecked(x, count))
    }

    fn phis_unchecked(&self, x: f64, count: usize) -> Vec<ScaledReal> {
        let n = self.n_weight as f64;
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        let phi0 = ScaledReal::from_exp(1.0, -0.5 * n * self.pot.value(x) - 0.5 * self.ln_beta0);
        out.push(phi0);
        let mut prev = ScaledReal::ZERO;
        let mut cur = phi0;
        for j in 0..count - 1 {
            let sb = if j == 0 { 0.0 } else { sqrt(self.betas[j]) };
            let next = (cur * (x - self.alphas[j]) - prev * sb) * (1.0 / sqrt(self.betas[j + 1]));
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    fn partial_density(&self, x: f64, count: usize) -> ScaledReal {
        let count = count.min(self.alphas.len());
        self.phis_unchecked(x, count).iter().fold(ScaledReal::ZERO, |acc, p| acc + *p * *p)
    }

    fn require_n(&self) -> Result<usize> {
        let n = self.n_weight as usize;
        if self.n_max() < n {
            return Err(Error::InvalidInput("table needs n_max >= N for the kernel"));
        }
        Ok(n)
    }

    /// `K_{N,V}(x, x)`.
    pub fn density(&self, x: f64) -> Result<ScaledReal> {
        self.check(x)?;
        let n = self.require_n()?;
        Ok(self.partial_density(x, n))
    }

    /// `K_{N,V}(x, y)`.
    pub fn kernel(&self, x: f64, y: f64) -> Result<ScaledReal> {
        self.check(x)?;
        self.check(y)?;
        let n = self.require_n()?;
        let px = self.phis_unchecked(x, n + 1);
        let py = self.phis_unchecked(y, n + 1);
        Ok(self.kernel_from(x, y, &px, &py, n))
    }

    fn kernel_from(&self, x: f64, y: f64, px: &[ScaledReal], py: &[ScaledReal], n: usize) -> ScaledReal {
        if x == y || (x - y).abs() <= SUM_FORM_SWITCH * (1.0 + x.abs()) {
            return px[..n].iter().zip(&py[..n]).fold(ScaledReal::ZERO, |acc, (a, b)| acc + *a * *b);
        }
        let num = px[n] * py[n - 1] - px[n - 1] * py[n];
        num * (sqrt(self.betas[n]) / (x - y))
    }

    /// `det[K(x_i, x_j)]` for up to six points.
    pub fn correlation(&self, points: &[f64]) -> Result<ScaledReal> {
        let k = points.len();
        if k == 0 || k > 6 {
            return Err(Error::InvalidInput("correlation needs 1 to 6 points"));
        }
        let n = self.require_n()?;
        for &p in points {
            self.check(p)?;
        }
        let ph: Vec<Vec<ScaledReal>> = points.iter().map(|&p| self.phis_unchecked(p, n + 1)).collect();
        let diag: Vec<ScaledReal> = (0..k).map(|i| self.kernel_from(points[i], points[i], &ph[i], &ph[i], n)).collect();
        if diag.iter().any(|d| d.is_zero()) {
            return Ok(ScaledReal::ZERO);
        }
        let roots: Vec<ScaledReal> = diag.iter().map(|d| d.sqrt()).collect();
        let m = Matrix::from_fn(k, |i, j| {
            if i == j {
                1.0
            } else {
                (self.kernel_from(points[i], points[j], &ph[i], &ph[j], n) / (roots[i] * roots[j])).to_f64()
            }
        });
        let det = m.det();
        let prod = diag.iter().fold(ScaledReal::ONE, |acc, d| acc * *d);
        Ok(prod * det)
    }

    fn gap_window(&self, lo: f64, hi: f64) -> Result<(f64, f64)> {
        let j = self.pot.interval();
        let tr = self.truncation;
        let mut lo = lo.max(j.lo());
        let mut hi = hi.min(j.hi());
        if lo.is_finite() && hi.is_finite() {
            return Ok((lo.max(tr.lo()), hi.min(tr.hi())));
        }
        if !lo.is_finite() && !hi.is_finite() {
            return Ok((tr.lo(), tr.hi()));
        }
        let (start, dir, limit) = if lo.is_finite() { (lo, 1.0, j.hi()) } else { (hi, -1.0, j.lo()) };
        let reference = self.density(start)?;
        let span = if lo.is_finite() { tr.hi() - start } else { start - tr.lo() };
        let h = if span > 0.0 { span / 400.0 } else { 0.01 * (1.0 + start.abs()) };
        let mut x = start;
        let mut found = false;
        for _ in 0..100_000 {
            let nx = x + dir * h;
            if limit.is_finite() && (nx - limit) * dir >= 0.0 {
                x = limit;
                found = true;
                break;
            }
            x = nx;
            if self.density(x)? < reference * GAP_TAIL {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Tail);
        }
        if dir > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        Ok((lo, hi))
    }

    fn nystrom(&self, lo: f64, hi: f64, m: usize, n: usize) -> (f64, ScaledReal) {
        let gl = GaussLegendre::new(m);
        let pts: Vec<(f64, f64)> = gl.mapped(lo, hi).collect();
        let ph: Vec<Vec<ScaledReal>> = pts.iter().map(|&(x, _)| self.phis_unchecked(x, n + 1)).collect();
        let mut entries = alloc::vec![ScaledReal::ZERO; m * m];
        let mut top = i64::MIN;
        for i in 0..m {
            for j in 0..=i {
                let k = self.kernel_from(pts[i].0, pts[j].0, &ph[i], &ph[j], n) * sqrt(pts[i].1 * pts[j].1);
                entries[i * m + j] = k;
                entries[j * m + i] = k;
                if !k.is_zero() {
                    top = top.max(k.log2_scale());
                }
            }
        }
        if top == i64::MIN {
            return (1.0, ScaledReal::ZERO);
        }
        let unit = ScaledReal::new(1.0, top);
        let scaled = Matrix::from_fn(m, |i, j| (entries[i * m + j] / unit).to_f64());
        let a = Matrix::from_fn(m, |i, j| (if i == j { 1.0 } else { 0.0 }) - (entries[i * m + j]).to_f64());
        let det = a.det();
        let mu = scaled.symmetric_eigenvalues();
        let factor = unit.to_f64();
        let complement = if factor == 0.0 || top < -900 {
            // all eigenvalues tiny: 1 - Π(1-μ) = Σμ to leading order
            mu.iter().fold(ScaledReal::ZERO, |acc, &v| acc + unit * v)
        } else {
            let mut s = KahanSum::new();
            for &v in &mu {
                let mv = (v * factor).clamp(0.0, 1.0);
                s.add(-ln1p(-mv));
            }
            let c = -expm1(-s.value());
            ScaledReal::from_f64(c)
        };
        (det.clamp(0.0, 1.0), complement)
    }

    /// `det(1 - K|_{L²(lo, hi)})`; either end may be infinite.
    pub fn gap_probability(&self, lo: f64, hi: f64, m: usize) -> Result<GapProbability> {
        if m < 10 {
            return Err(Error::InvalidInput("gap probability needs m >= 10"));
        }
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidInput("NaN interval"));
        }
        let n = self.require_n()?;
        if !(lo < hi) {
            return Ok(GapProbability {
                probability: 1.0,
                complement: ScaledReal::ZERO,
                abs_change: 0.0,
                rel_change_complement: 0.0,
                window: (lo, hi),
                nodes: 0,
            });
        }
        let (a, b) = self.gap_window(lo, hi)?;
        if !(a < b) {
            return Ok(GapProbability {
                probability: 1.0,
                complement: ScaledReal::ZERO,
                abs_change: 0.0,
                rel_change_complement: 0.0,
                window: (a, b),
                nodes: 0,
            });
        }
        let (p1, c1) = self.nystrom(a, b, m, n);
        let (p2, c2) = self.nystrom(a, b, 2 * m, n);
        let abs_change = (p1 - p2).abs();
        let rel = if c2.is_zero() { 0.0 } else { ((c1 - c2) / c2).to_f64().abs() };
        if abs_change > GAP_TOL {
            return Err(Error::NoConvergence { what: "Nystrom gap probability", iterations: 2 * m, residual: abs_change });
        }
        Ok(GapProbability { probability: p2, complement: c2, abs_change, rel_change_complement: rel, window: (a, b), nodes: 2 * m })
    }
}

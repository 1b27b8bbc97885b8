//! Airy function, Airy kernel, its tail asymptotics, and the sine kernel.
//!
//! `Ai` and `Ai'` come from the Maclaurin series for `|s| <= 4.5`. Outside
//! that disk they are expressed through Bessel functions of order `1/3` and
//! `2/3` at `ζ = (2/3)|s|^{3/2}`, which are evaluated with Steed's continued
//! fractions. Both routes are convergent, so the accuracy does not degrade
//! near the switch point the way a truncated asymptotic series would.

use crate::error::{Error, Result};
use crate::math::{exp, ln, powf, sinc, sqrt, PI};
use crate::scaled::ScaledReal;

/// `Ai(0)`.
pub const AI0: f64 = 0.355_028_053_887_817_239;
/// `Ai'(0)`.
pub const AIP0: f64 = -0.258_819_403_792_806_798;

/// Documented accuracy window of [`airy`].
pub const AIRY_WINDOW: (f64, f64) = (-50.0, 200.0);
/// Beyond this argument values are returned with a separate exponent.
pub const SCALED_FROM: f64 = 30.0;

const SERIES_RADIUS: f64 = 4.5;
const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `Ai(s)` and `Ai'(s)`, each equal to the stored value times `e^{ln_scale}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub ai_prime: f64,
    /// Zero for `s <= 30`, `-(2/3)s^{3/2}` beyond.
    pub ln_scale: f64,
}

impl AiryPair {
    /// `Ai(s)` as a plain double (underflows for very large `s`).
    pub fn ai_value(&self) -> f64 {
        self.ai * exp(self.ln_scale)
    }

    pub fn ai_prime_value(&self) -> f64 {
        self.ai_prime * exp(self.ln_scale)
    }

    pub fn ai_scaled(&self) -> ScaledReal {
        ScaledReal::from_exp(self.ai, self.ln_scale)
    }

    pub fn ai_prime_scaled(&self) -> ScaledReal {
        ScaledReal::from_exp(self.ai_prime, self.ln_scale)
    }
}

/// `Ai(s)`, `Ai'(s)` for `s` in [`AIRY_WINDOW`].
pub fn airy(s: f64) -> Result<AiryPair> {
    if !(s >= AIRY_WINDOW.0 && s <= AIRY_WINDOW.1) {
        return Err(Error::Domain { what: "airy", value: s });
    }
    if s.abs() <= SERIES_RADIUS {
        let (ai, ai_prime) = airy_series(s);
        return Ok(AiryPair { ai, ai_prime, ln_scale: 0.0 });
    }
    airy_bessel(s)
}

/// `Ai(s)`, `Ai'(s)` through Bessel functions of order `1/3`, `2/3`, for `|s| ≥ 3`.
pub fn airy_bessel(s: f64) -> Result<AiryPair> {
    if !(s.abs() >= 3.0) || !s.is_finite() {
        return Err(Error::Domain { what: "airy_bessel", value: s });
    }
    if s > 0.0 {
        let zeta = 2.0 / 3.0 * s * sqrt(s);
        let (k13, k23) = bessel_k_third_scaled(zeta);
        let ai = sqrt(s / 3.0) / PI * k13;
        let ai_prime = -s / (PI * SQRT3) * k23;
        if s > SCALED_FROM {
            Ok(AiryPair { ai, ai_prime, ln_scale: -zeta })
        } else {
            let e = exp(-zeta);
            Ok(AiryPair { ai: ai * e, ai_prime: ai_prime * e, ln_scale: 0.0 })
        }
    } else {
        let x = -s;
        let rx = sqrt(x);
        let zeta = 2.0 / 3.0 * x * rx;
        let (j, y, jp, yp) = bessel_jy_third(zeta);
        let c = j - y / SQRT3;
        let cp = jp - yp / SQRT3;
        let ai = 0.5 * rx * c;
        let ai_prime = -0.25 / rx * c - 0.5 * x * cp;
        Ok(AiryPair { ai, ai_prime, ln_scale: 0.0 })
    }
}

/// Maclaurin series of `Ai` and `Ai'`.
pub fn airy_series(s: f64) -> (f64, f64) {
    let s3 = s * s * s;
    let (mut f, mut g, mut fp, mut gp) = (0.0, 0.0, 0.0, 0.0);
    let mut tf = 1.0;
    let mut tg = s;
    let mut tfp = 0.5 * s * s;
    let mut tgp = 1.0;
    for k in 0..200 {
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        let k3 = 3.0 * k as f64;
        tf *= s3 / ((k3 + 2.0) * (k3 + 3.0));
        tg *= s3 / ((k3 + 3.0) * (k3 + 4.0));
        tfp *= s3 / ((k3 + 3.0) * (k3 + 5.0));
        tgp *= s3 / ((k3 + 1.0) * (k3 + 3.0));
        let scale = f.abs() + g.abs() + fp.abs() + gp.abs();
        if (tf.abs() + tg.abs() + tfp.abs() + tgp.abs()) < 1e-18 * scale {
            break;
        }
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

/// `e^x K_{1/3}(x)` and `e^x K_{2/3}(x)` for `x >= 2` (Steed's CF2 with `μ = -1/3`).
fn bessel_k_third_scaled(x: f64) -> (f64, f64) {
    let xmu = -1.0 / 3.0;
    let xmu2 = xmu * xmu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let kmu = sqrt(PI / (2.0 * x)) / s;
    let k1 = kmu * (xmu + x + 0.5 - h) / x;
    (kmu, k1)
}

/// `J_{1/3}(x)`, `Y_{1/3}(x)` and their derivatives for `x >= 2` (CF1 plus Steed's CF2).
fn bessel_jy_third(x: f64) -> (f64, f64, f64, f64) {
    const FPMIN: f64 = 1e-300;
    const EPS: f64 = 1e-17;
    let xnu = 1.0 / 3.0;
    let xmu = xnu;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..100_000 {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    let rjl = isign * FPMIN;
    let rjpl = h * rjl;
    let f = rjpl / rjl;

    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..100_000 {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let mut rjmu = sqrt(w / ((p - f) * gam + q));
    if rjl < 0.0 {
        rjmu = -rjmu;
    }
    let rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let j = rjmu;
    let jp = f * rjmu;
    (j, rymu, jp, rymup)
}

/// Airy kernel `(Ai(s)Ai'(t) - Ai'(s)Ai(t))/(s - t)`, with the diagonal
/// `Ai'(m)^2 - m Ai(m)^2` plus a second-order correction when `|s - t| < 1e-4`.
pub fn airy_kernel(s: f64, t: f64) -> Result<f64> {
    Ok(airy_kernel_scaled(s, t)?.to_f64())
}

/// [`airy_kernel`] without underflow for large positive arguments.
pub fn airy_kernel_scaled(s: f64, t: f64) -> Result<ScaledReal> {
    if (s - t).abs() < 1e-4 {
        let m = 0.5 * (s + t);
        let e = 0.5 * (s - t);
        let p = airy(m)?;
        let (a, ap) = (p.ai, p.ai_prime);
        let diag = ap * ap - m * a * a;
        let corr = (2.0 / 3.0) * m * ap * ap - (2.0 / 3.0) * m * m * a * a + a * ap / 3.0;
        let v = diag + e * e * corr;
        return Ok(ScaledReal::from_exp(v, 2.0 * p.ln_scale));
    }
    let ps = airy(s)?;
    let pt = airy(t)?;
    let num = ps.ai * pt.ai_prime - ps.ai_prime * pt.ai;
    Ok(ScaledReal::from_exp(num / (s - t), ps.ln_scale + pt.ln_scale))
}

/// Leading tail `(4π)^{-1}(st)^{-1/4}(√s + √t)^{-1}e^{-(2/3)(s^{3/2}+t^{3/2})}` for `s, t >= 1`.
pub fn airy_kernel_tail(s: f64, t: f64) -> Result<ScaledReal> {
    if !(s >= 1.0) {
        return Err(Error::Domain { what: "airy_kernel_tail", value: s });
    }
    if !(t >= 1.0) {
        return Err(Error::Domain { what: "airy_kernel_tail", value: t });
    }
    let pre = 1.0 / (4.0 * PI) * powf(s * t, -0.25) / (sqrt(s) + sqrt(t));
    Ok(ScaledReal::from_exp(pre, -2.0 / 3.0 * (s * sqrt(s) + t * sqrt(t))))
}

/// `sin(π(s-t))/(π(s-t))`.
pub fn sine_kernel(s: f64, t: f64) -> f64 {
    sinc(PI * (s - t))
}

/// `(1/(2√π)) s^{-1/4} e^{-(2/3)s^{3/2}}`, the one-term asymptotic of `Ai` for large `s`.
pub fn airy_leading_asymptotic(s: f64) -> ScaledReal {
    ScaledReal::from_exp(0.5 / sqrt(PI) * powf(s, -0.25), -2.0 / 3.0 * s * sqrt(s))
}

/// `ln Ai(s)` for `s > 0`.
pub fn ln_airy(s: f64) -> Result<f64> {
    let p = airy(s)?;
    Ok(ln(p.ai) + p.ln_scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        let p = airy(0.0).unwrap();
        assert_eq!(p.ai, AI0);
        assert_eq!(p.ai_prime, AIP0);
        let g = libm::tgamma(2.0 / 3.0);
        assert!((AI0 - powf(3.0, -2.0 / 3.0) / g).abs() < 1e-16);
        assert!((AIP0 + powf(3.0, -1.0 / 3.0) / libm::tgamma(1.0 / 3.0)).abs() < 1e-16);
    }

    #[test]
    fn ode_residual() {
        let h = 1e-2;
        for k in -50..=50 {
            let s = k as f64 / 10.0;
            let f = |x: f64| airy(x).unwrap().ai;
            let d2 = (-f(s + 2.0 * h) + 16.0 * f(s + h) - 30.0 * f(s) + 16.0 * f(s - h) - f(s - 2.0 * h)) / (12.0 * h * h);
            assert!((d2 - s * f(s)).abs() < 1e-8, "s = {s}: {}", d2 - s * f(s));
        }
    }

    #[test]
    fn derivative_is_consistent() {
        let h = 1e-3;
        for &s in &[-12.0, -4.6, -4.4, 0.7, 4.4, 4.6, 9.0] {
            let f = |x: f64| airy(x).unwrap().ai;
            let d = (f(s - 2.0 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h);
            assert!((d - airy(s).unwrap().ai_prime).abs() < 1e-8, "s = {s}");
        }
    }

    #[test]
    fn series_and_bessel_routes_overlap() {
        for k in 0..=40 {
            let r = 4.0 + k as f64 / 40.0;
            for &s in &[r, -r] {
                let (a, ap) = airy_series(s);
                let p = airy_bessel(s).unwrap();
                let (b, bp) = (p.ai_value(), p.ai_prime_value());
                assert!((a - b).abs() < 1e-10 && (ap - bp).abs() < 1e-10, "s = {s}: {a} {b} {ap} {bp}");
            }
        }
    }

    #[test]
    fn large_argument_matches_leading_asymptotic() {
        let p = airy(10.0).unwrap();
        let lead = airy_leading_asymptotic(10.0).to_f64();
        assert!((p.ai_value() / lead - 1.0).abs() < 0.01);
        let far = airy(150.0).unwrap();
        assert!(far.ai_value() == 0.0 || far.ai_value() < 1e-300);
        let ratio = (far.ai_scaled() / airy_leading_asymptotic(150.0)).to_f64();
        assert!((ratio - 1.0).abs() < 1e-3);
    }

    #[test]
    fn window_is_enforced() {
        assert!(airy(-50.5).is_err());
        assert!(airy(200.5).is_err());
        assert!(airy(f64::NAN).is_err());
    }

    #[test]
    fn kernel_diagonal_and_symmetry() {
        let k00 = airy_kernel(0.0, 0.0).unwrap();
        assert!((k00 - AIP0 * AIP0).abs() < 1e-16);
        for &(s, t) in &[(0.3, -1.2), (2.0, 5.5), (-7.0, -6.9999)] {
            assert_eq!(airy_kernel(s, t).unwrap(), airy_kernel(t, s).unwrap());
        }
    }

    #[test]
    fn kernel_is_continuous_across_diagonal_switch() {
        for &m in &[-6.0, -1.0, 0.0, 1.5, 4.0] {
            let (s, t) = (m + 0.49e-4, m - 0.49e-4);
            let taylor = airy_kernel(s, t).unwrap();
            let (ps, pt) = (airy(s).unwrap(), airy(t).unwrap());
            let quotient = (ps.ai * pt.ai_prime - ps.ai_prime * pt.ai) / (s - t);
            assert!((taylor - quotient).abs() < 1e-10, "m = {m}: {taylor} {quotient}");
        }
        // reference from 40-digit arithmetic
        assert!((airy_kernel(-6.0 + 0.49e-4, -6.0 - 0.49e-4).unwrap() - 0.769_690_625_820_181_4).abs() < 1e-14);
    }

    #[test]
    fn sine_kernel_values() {
        assert_eq!(sine_kernel(0.3, 0.3), 1.0);
        assert!(sine_kernel(1.0, 0.0).abs() < 1e-16);
        assert!((sine_kernel(0.5, 0.0) - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn tail_identity_and_monotonicity() {
        let mut prev = f64::INFINITY;
        for k in 1..30 {
            let s = k as f64;
            let v = airy_kernel_tail(s, s).unwrap().ln_abs();
            assert!(v < prev);
            prev = v;
        }
        assert!(airy_kernel_tail(0.5, 2.0).is_err());
    }
}

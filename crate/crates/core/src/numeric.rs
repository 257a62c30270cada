//! Quadrature, special functions and asymptotic fits shared by the analytic modules.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GlRule {
    pairs: Vec<(f64, f64)>,
}

impl GlRule {
    pub fn new(n: usize) -> Self {
        let rule = GaussLegendre::new(NonZeroUsize::new(n.max(1)).expect("nonzero"));
        Self { pairs: rule.as_node_weight_pairs().to_vec() }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        h * self.pairs.iter().map(|&(x, w)| w * f(c + h * x)).sum::<f64>()
    }

    pub fn integrate_c<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, w) in &self.pairs {
            acc += w * f(c + h * x);
        }
        acc * h
    }

    /// Nodes mapped to `[a, b]` with scaled weights.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.pairs.iter().map(move |&(x, w)| (c + h * x, h * w))
    }

    /// Composite rule over `n` equal panels.
    pub fn composite<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels).map(|i| self.integrate(a + i as f64 * h, a + (i + 1) as f64 * h, &mut f)).sum()
    }
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Gamma function (Lanczos, with reflection for `Re z < 1/2`).
pub fn gamma_c(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * z).sin() * gamma_c(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// Real Gamma function.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

const BERNOULLI_2K: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k+a)^{-s}` by Euler–Maclaurin, valid for all `s ≠ 1`, `a > 0`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-300 {
        return Err(Error::Pole);
    }
    if a <= 0.0 {
        return Err(Error::InvalidArgument("Hurwitz parameter must be positive".into()));
    }
    let n = (20.0 + 2.0 * s.norm()).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += cpow_real(k as f64 + a, -s);
    }
    Ok(acc + hurwitz_tail(s, n as f64 + a))
}

/// `Σ_{k≥0} (x+k)^{-s}` for large `x` by the Euler–Maclaurin remainder expansion.
pub(crate) fn hurwitz_tail(s: Complex64, x: f64) -> Complex64 {
    let mut acc = cpow_real(x, 1.0 - s) / (s - 1.0) + 0.5 * cpow_real(x, -s);
    // (s)_{2j-1} x^{-s-2j+1} B_{2j}/(2j)!
    let mut rising = s;
    let mut fact = 2.0;
    let mut xp = cpow_real(x, -s - 1.0);
    for (j, &b) in BERNOULLI_2K.iter().enumerate() {
        let term = b / fact * rising * xp;
        acc += term;
        if term.norm() < 1e-18 * acc.norm() {
            break;
        }
        let k = 2.0 * (j as f64 + 1.0);
        rising *= (s + k - 1.0) * (s + k);
        fact *= (k + 1.0) * (k + 2.0);
        xp /= x * x;
    }
    acc
}

/// `x^z` for real `x > 0`.
pub fn cpow_real(x: f64, z: Complex64) -> Complex64 {
    (z * x.ln()).exp()
}

/// Riemann zeta for complex `s ≠ 1`.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// Riemann zeta through the alternating (Dirichlet eta) series with Borwein acceleration; `Re s > 0`.
pub fn riemann_zeta_eta(s: Complex64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(Error::OutOfRange("eta route needs Re(s) > 0".into()));
    }
    let denom = Complex64::new(1.0, 0.0) - cpow_real(2.0, 1.0 - s);
    if denom.norm() < 1e-300 {
        return Err(Error::Pole);
    }
    let n = 60usize;
    // Borwein's algorithm 2: d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut acc = term;
    d[0] = acc;
    for i in 1..=n {
        term *= 4.0 * (n + i - 1) as f64 * (n - i + 1) as f64 / ((2 * i - 1) as f64 * (2 * i) as f64);
        acc += term;
        d[i] = acc;
    }
    let d: Vec<f64> = d.iter().map(|v| v * n as f64).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - d[n]) * cpow_real(k as f64 + 1.0, -s);
    }
    let eta = -sum / d[n];
    Ok(eta / denom)
}

/// Real-argument convenience wrapper.
pub fn zeta_real(s: f64) -> Result<f64> {
    riemann_zeta(Complex64::new(s, 0.0)).map(|z| z.re)
}

/// Ordinary least squares `y ≈ slope·x + intercept`; returns `(slope, intercept, r²)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, my - slope * mx, r2)
}

/// Intercept of `y ≈ slope·x + c` with the slope held fixed.
pub fn fixed_slope_intercept(xs: &[f64], ys: &[f64], slope: f64) -> f64 {
    xs.iter().zip(ys).map(|(x, y)| y - slope * x).sum::<f64>() / xs.len() as f64
}

/// Relative least squares for `y ≈ A t^{e1} + B t^{e2}`; returns `(A, B)`.
pub fn two_term_fit(ts: &[f64], ys: &[f64], e1: f64, e2: f64) -> (f64, f64) {
    let (mut s11, mut s12, mut s22, mut r1, mut r2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&t, &y) in ts.iter().zip(ys) {
        let f1 = t.powf(e1) / y;
        let f2 = t.powf(e2) / y;
        s11 += f1 * f1;
        s12 += f1 * f2;
        s22 += f2 * f2;
        r1 += f1;
        r2 += f2;
    }
    let det = s11 * s22 - s12 * s12;
    ((r1 * s22 - r2 * s12) / det, (s11 * r2 - s12 * r1) / det)
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp()).collect()
}

/// Monotone bisection for an increasing function, then one Newton step when `df` is given.
pub fn solve_increasing<F: Fn(f64) -> f64>(f: F, df: Option<&dyn Fn(f64) -> f64>, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    if let Some(df) = df {
        let d = df(x);
        if d.is_finite() && d > 0.0 {
            let nx = x - (f(x) - target) / d;
            if nx >= lo - (hi - lo) && nx <= hi + (hi - lo) {
                x = nx;
            }
        }
    }
    x
}

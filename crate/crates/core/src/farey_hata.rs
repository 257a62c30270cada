//! Hata's Farey expansion of a convex weight, the Farey zeta `Z_f`, its
//! endpoint model, the kernel `H_s`, the reduced-residue sums `Σ_b`, Fejér
//! means and the Legendre dual of a chart.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::domain_model::GraphForm;
use crate::error::{Error, Result};
use crate::lattice_arith::{arithmetic_functions, coprime_pairs_by_max, farey_from_denominators, mod_inverse, FareyInterval};
use crate::numeric::{adaptive_simpson, cpow_real, gamma, gamma_c, hurwitz_tail, solve_increasing, GlRule};
use crate::scalar::{parse_rational, q_int, Scalar, Q};
use crate::zeta_engine::{counting_fit, CountingFit, SeriesEstimate};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A weight `f ∈ C³([0,1])` with derivatives; polynomial weights keep exact coefficients.
#[derive(Clone)]
pub struct SmoothWeight {
    pub f: RealFn,
    pub f1: RealFn,
    pub f2: RealFn,
    pub f3: RealFn,
    pub poly: Option<Vec<Q>>,
}

impl std::fmt::Debug for SmoothWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmoothWeight {{ poly: {:?} }}", self.poly)
    }
}

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn poly_deriv(c: &[Q]) -> Vec<Q> {
    c.iter().enumerate().skip(1).map(|(i, a)| a.clone() * q_int(i as i64)).collect()
}

impl SmoothWeight {
    /// `Σ c_i x^i`.
    pub fn polynomial(coeffs: Vec<Q>) -> Self {
        let d1 = poly_deriv(&coeffs);
        let d2 = poly_deriv(&d1);
        let d3 = poly_deriv(&d2);
        let mk = |c: &[Q]| -> RealFn {
            let v: Vec<f64> = c.iter().map(|a| a.to_f64()).collect();
            Arc::new(move |x| poly_eval(&v, x))
        };
        Self { f: mk(&coeffs), f1: mk(&d1), f2: mk(&d2), f3: mk(&d3), poly: Some(coeffs) }
    }

    /// `x²/2`.
    pub fn quadratic() -> Self {
        Self::polynomial(vec![q_int(0), q_int(0), Q::new(1.into(), 2.into())])
    }

    pub fn from_fns(f: RealFn, f1: RealFn, f2: RealFn, f3: RealFn) -> Self {
        Self { f, f1, f2, f3, poly: None }
    }

    /// `f(x)` exactly at a rational point (polynomial weights only).
    pub fn eval_exact(&self, x: &Q) -> Option<Q> {
        let c = self.poly.as_ref()?;
        Some(c.iter().rev().fold(Q::zero(), |acc, a| acc * x.clone() + a.clone()))
    }

    /// `(min |f''|, max |f''|)` on a `10⁴`-point grid; errors if `f''` vanishes or changes sign.
    pub fn check_assumption(&self) -> Result<(f64, f64)> {
        let n = 10_000;
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        let mut sign = 0.0;
        for i in 0..=n {
            let v = (self.f2)(i as f64 / n as f64);
            if v == 0.0 || !v.is_finite() || (sign != 0.0 && v.signum() != sign) {
                return Err(Error::ConstraintViolated("f'' must keep a strict sign on [0,1]".into()));
            }
            sign = v.signum();
            lo = lo.min(v.abs());
            hi = hi.max(v.abs());
        }
        Ok((lo, hi))
    }
}

/// JSON weight description: `{"polynomial": ["0", "0", "1/2"]}` or `{"builtin": "quadratic"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSpec {
    Polynomial(Vec<String>),
    Builtin(String),
}

impl WeightSpec {
    pub fn build(&self) -> Result<SmoothWeight> {
        match self {
            WeightSpec::Polynomial(c) => {
                let coeffs = c.iter().map(|t| parse_rational(t).ok_or_else(|| Error::InvalidSpec(format!("bad coefficient {t}")))).collect::<Result<Vec<_>>>()?;
                Ok(SmoothWeight::polynomial(coeffs))
            }
            WeightSpec::Builtin(name) => match name.as_str() {
                "quadratic" => Ok(SmoothWeight::quadratic()),
                "cubic" => Ok(SmoothWeight::polynomial(vec![q_int(0), q_int(0), Q::new(1.into(), 2.into()), Q::new(1.into(), 10.into())])),
                other => Err(Error::InvalidSpec(format!("unknown weight {other}"))),
            },
        }
    }
}

/// `S_I(x) = ((b+d)/2)(|a−bx| + |c−dx| − |a+c−(b+d)x|)`.
pub fn hata_basis(i: &FareyInterval, x: f64) -> f64 {
    let (a, b, c, d) = (i.a as f64, i.b as f64, i.c as f64, i.d as f64);
    0.5 * (b + d) * ((a - b * x).abs() + (c - d * x).abs() - (a + c - (b + d) * x).abs())
}

/// `(c_I, T_I)` with `c_I = f(m) − (b/(b+d)) f(a/b) − (d/(b+d)) f(c/d)` and `T_I = (b+d) c_I`.
pub fn hata_coefficient(w: &SmoothWeight, i: &FareyInterval) -> (f64, f64) {
    let (b, d) = (i.b as f64, i.d as f64);
    let c_i = (w.f)(i.mediant()) - b / (b + d) * (w.f)(i.right()) - d / (b + d) * (w.f)(i.left());
    (c_i, (b + d) * c_i)
}

/// Exact `(c_I, T_I)` for polynomial weights.
pub fn hata_coefficient_exact(w: &SmoothWeight, i: &FareyInterval) -> Option<(Q, Q)> {
    let r = |n: u64, d: u64| Q::new((n as i64).into(), (d as i64).into());
    let bd = q_int((i.b + i.d) as i64);
    let c_i = w.eval_exact(&r(i.a + i.c, i.b + i.d))? - r(i.b, i.b + i.d) * w.eval_exact(&r(i.a, i.b))? - r(i.d, i.b + i.d) * w.eval_exact(&r(i.c, i.d))?;
    Some((c_i.clone(), bd * c_i))
}

/// Partial Hata expansion over Farey intervals with `b + d ≤ B`.
///
/// Only the chain of intervals containing `x` contributes, so the Stern–Brocot
/// descent towards `x` visits every nonzero term.
pub fn hata_reconstruct(w: &SmoothWeight, bound: u64, x: f64) -> f64 {
    let (f0, f1) = ((w.f)(0.0), (w.f)(1.0));
    let mut acc = f0 + (f1 - f0) * x;
    let mut i = FareyInterval { c: 0, d: 1, a: 1, b: 1 };
    while i.b + i.d <= bound {
        let (ci, _) = hata_coefficient(w, &i);
        acc += ci * hata_basis(&i, x);
        let (mn, md) = (i.a + i.c, i.b + i.d);
        i = if x * md as f64 <= mn as f64 { FareyInterval { c: i.c, d: i.d, a: mn, b: md } } else { FareyInterval { c: mn, d: md, a: i.a, b: i.b } };
    }
    acc
}

/// `max |f − hata_reconstruct|` over an `n`-point grid.
pub fn hata_sup_error(w: &SmoothWeight, bound: u64, n: usize) -> f64 {
    (0..=n).map(|k| k as f64 / n as f64).map(|x| ((w.f)(x) - hata_reconstruct(w, bound, x)).abs()).fold(0.0, f64::max)
}

fn intervals_by_max(bound: u64) -> impl Iterator<Item = FareyInterval> {
    coprime_pairs_by_max(bound).into_iter().map(|(b, d)| farey_from_denominators(b, d).expect("coprime"))
}

/// `Z_f(s) = Σ_I |T_I(f)|^s` over intervals with `max(b, d) ≤ B`.
pub fn farey_zeta(w: &SmoothWeight, s: Complex64, bound: u64) -> Result<SeriesEstimate> {
    if s.re <= 2.0 / 3.0 {
        return Err(Error::OutOfRange("Z_f needs Re(s) > 2/3".into()));
    }
    let mut acc = Complex64::zero();
    let mut n = 0;
    for i in intervals_by_max(bound) {
        let t = hata_coefficient(w, &i).1.abs();
        if t > 0.0 {
            acc += cpow_real(t, s);
        }
        n += 1;
    }
    Ok(SeriesEstimate { value: acc, cutoff: bound as f64, terms_used: n, tail_hint: None })
}

fn endpoint_term(w: &SmoothWeight, i: &FareyInterval) -> f64 {
    let (b, d) = (i.b as f64, i.d as f64);
    0.5 * (w.f2)(i.right()).abs() / (b * d * (b + d))
}

/// `Z_f^end(s) = 2^{−s} Σ |f''(a/b)|^s / (bd(b+d))^s` over `max(b, d) ≤ B`.
pub fn endpoint_model(w: &SmoothWeight, s: Complex64, bound: u64) -> Result<SeriesEstimate> {
    if s.re <= 2.0 / 3.0 {
        return Err(Error::OutOfRange("Z_f needs Re(s) > 2/3".into()));
    }
    let mut acc = Complex64::zero();
    let mut n = 0;
    for i in intervals_by_max(bound) {
        let t = endpoint_term(w, &i);
        if t > 0.0 {
            acc += cpow_real(t, s);
        }
        n += 1;
    }
    Ok(SeriesEstimate { value: acc, cutoff: bound as f64, terms_used: n, tail_hint: None })
}

/// Coprime `(b, d)` with `bd(b+d) ≤ x`.
fn pairs_below(x: f64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut b = 1u64;
    while (b * (b + 1)) as f64 <= x {
        let mut d = 1u64;
        while ((b * d) as f64) * ((b + d) as f64) <= x {
            if b.gcd(&d) == 1 {
                out.push((b, d));
            }
            d += 1;
        }
        b += 1;
    }
    out
}

/// All `|T_I(f)| ≥ ε`, sorted descending (exact terms or the endpoint model).
pub fn farey_terms_above(w: &SmoothWeight, eps: f64, endpoint: bool) -> Result<Vec<f64>> {
    let (_, hi) = w.check_assumption()?;
    // |T_I| ≤ max|f''|/(2bd(b+d)) on both models
    let mut v: Vec<f64> = pairs_below(hi / (2.0 * eps) * 1.01)
        .into_iter()
        .map(|(b, d)| {
            let i = farey_from_denominators(b, d).expect("coprime");
            if endpoint {
                endpoint_term(w, &i)
            } else {
                hata_coefficient(w, &i).1.abs()
            }
        })
        .filter(|&t| t >= eps)
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// `Res_{s=2/3} Z_f` from the counting law of `{|T_I|}`: `N(t) ≈ A t^{−2/3}` gives `Res = (2/3) A`.
pub fn farey_residue_fit(w: &SmoothWeight, eps: f64, endpoint: bool) -> Result<(f64, CountingFit)> {
    let terms = farey_terms_above(w, eps, endpoint)?;
    let fit = counting_fit(&terms, eps, 10_000)?;
    Ok((2.0 / 3.0 * fit.coefficient, fit))
}

/// `H_s(u) = Σ_{k≥0} (k+u)^{−s}(k+1+u)^{−s}`.
///
/// Direct terms up to `K = max(64, 8⌈|s|⌉)`; the tail is expanded in
/// `x = k + u + 1/2` as `(x² − 1/4)^{−s} = Σ_j (s)_j/j! 4^{−j} x^{−2s−2j}` and each
/// power sum is an Euler–Maclaurin Hurwitz tail.
pub fn h_kernel(s: Complex64, u: f64) -> Result<Complex64> {
    if s.re <= 0.5 {
        return Err(Error::OutOfRange("H_s needs Re(s) > 1/2".into()));
    }
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::OutOfRange(format!("u = {u} not in (0, 1]")));
    }
    let k_max = 64usize.max(8 * s.norm().ceil() as usize);
    let mut acc = Complex64::zero();
    for k in 0..k_max {
        let x = k as f64 + u;
        acc += cpow_real(x * (x + 1.0), -s);
    }
    Ok(acc + shifted_tail(s, 0.0, k_max as f64 + u + 0.5))
}

/// `Σ_j (s+shift)_j/j! 4^{−j} Σ_{k≥0} (x0+k)^{−2s−2shift+1−1−2j}` with the exponent offset by `2·shift − …`;
/// for `shift = 0` this is the `H_s` tail, for `shift = 1` (times `x`) the derivative tail.
fn shifted_tail(s: Complex64, shift: f64, x0: f64) -> Complex64 {
    let a = s + shift;
    let mut coef = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::zero();
    for j in 0..12 {
        let e = 2.0 * s + 2.0 * j as f64 + shift;
        let term = coef * hurwitz_tail(e, x0);
        acc += term;
        if term.norm() < 1e-18 * acc.norm() {
            break;
        }
        coef *= (a + j as f64) / ((j as f64 + 1.0) * 4.0);
    }
    acc
}

/// `∂_u H_s(u) = −2s Σ_k x (x² − 1/4)^{−s−1}` with `x = k + u + 1/2`.
pub fn h_kernel_derivative(s: Complex64, u: f64) -> Result<Complex64> {
    if s.re <= 0.5 {
        return Err(Error::OutOfRange("H_s needs Re(s) > 1/2".into()));
    }
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::OutOfRange(format!("u = {u} not in (0, 1]")));
    }
    let k_max = 64usize.max(8 * s.norm().ceil() as usize);
    let mut acc = Complex64::zero();
    for k in 0..k_max {
        let x = k as f64 + u + 0.5;
        acc += x * cpow_real(x * x - 0.25, -s - 1.0);
    }
    acc += shifted_tail(s, 1.0, k_max as f64 + u + 0.5);
    Ok(-2.0 * s * acc)
}

/// `C_s = 1 + ζ(2σ)`: `|H_s(u)| ≤ C_s u^{−σ}` for `u ∈ (0, 1]`.
pub fn h_kernel_bound_constant(s: Complex64) -> Result<f64> {
    Ok(1.0 + crate::numeric::zeta_real(2.0 * s.re)?)
}

/// `C = 2|s|(1 + ζ(2σ+1))`: `|∂_u H_s(u)| ≤ C u^{−σ−1}`.
pub fn h_kernel_derivative_bound_constant(s: Complex64) -> Result<f64> {
    Ok(2.0 * s.norm() * (1.0 + crate::numeric::zeta_real(2.0 * s.re + 1.0)?))
}

/// `∫₀¹ H_s = Γ(1−s)Γ(2s−1)/Γ(s)` for `1/2 < Re s < 1`.
pub fn h_kernel_integral(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.5 && s.re < 1.0) {
        return Err(Error::OutOfRange("closed form needs 1/2 < Re(s) < 1".into()));
    }
    Ok(gamma_c(1.0 - s) * gamma_c(2.0 * s - 1.0) / gamma_c(s))
}

/// `∫₀¹ H_s(u) du` by quadrature after `u = v^{1/(1−σ)}`, on dyadic panels in `v`.
pub fn h_kernel_integral_quadrature(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.5 && s.re < 1.0) {
        return Err(Error::OutOfRange("quadrature needs 1/2 < Re(s) < 1".into()));
    }
    let sig = s.re;
    let p = 1.0 / (1.0 - sig);
    let gl = GlRule::new(30);
    let mut acc = Complex64::zero();
    let mut hi = 1.0f64;
    for _ in 0..60 {
        let lo = hi / 2.0;
        for (v, w) in gl.mapped(lo, hi) {
            let u = v.powf(p);
            acc += w * p * v.powf(p - 1.0) * h_kernel(s, u)?;
        }
        hi = lo;
    }
    Ok(acc)
}

/// `Σ_b(s) = Σ_{(r,b)=1} H_s(r/b) |f''(r̄/b)|^s`, with the main term `φ(b)∫H_s∫|f''|^s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaB {
    pub value: Complex64,
    pub main_term: Complex64,
    pub deviation: f64,
}

/// `∫₀¹ |f''|^s` by adaptive Simpson on the real and imaginary parts.
pub fn curvature_moment(w: &SmoothWeight, s: Complex64) -> Complex64 {
    let g = |x: f64| cpow_real((w.f2)(x).abs(), s);
    let re = adaptive_simpson(&|x| g(x).re, 0.0, 1.0, 1e-12);
    let im = adaptive_simpson(&|x| g(x).im, 0.0, 1.0, 1e-12);
    Complex64::new(re, im)
}

pub fn sigma_b(w: &SmoothWeight, s: Complex64, b: u64) -> Result<SigmaB> {
    sigma_b_with(w, s, b, h_kernel_integral(s)?, curvature_moment(w, s))
}

/// `Σ_b` with precomputed `∫H_s` and `∫|f''|^s`, for scans over many `b`.
pub fn sigma_b_with(w: &SmoothWeight, s: Complex64, b: u64, h_int: Complex64, moment: Complex64) -> Result<SigmaB> {
    if b == 0 {
        return Err(Error::InvalidArgument("b must be positive".into()));
    }
    let mut value = Complex64::zero();
    for r in 1..=b {
        if r.gcd(&b) != 1 {
            continue;
        }
        let rbar = mod_inverse(r as i64, b)?;
        value += h_kernel(s, r as f64 / b as f64)? * cpow_real((w.f2)(rbar as f64 / b as f64).abs(), s);
    }
    let main_term = arithmetic_functions(b).phi as f64 * h_int * moment;
    Ok(SigmaB { value, main_term, deviation: (value - main_term).norm() })
}

/// Log-log slope of `|Σ_b − main term|` against `b` over the given moduli.
pub fn sigma_b_exponent(w: &SmoothWeight, s: Complex64, moduli: &[u64]) -> Result<(f64, f64)> {
    let h_int = h_kernel_integral(s)?;
    let moment = curvature_moment(w, s);
    let devs: Vec<(u64, f64)> = std::thread::scope(|sc| {
        let handles: Vec<_> = moduli.iter().map(|&b| sc.spawn(move || sigma_b_with(w, s, b, h_int, moment).map(|r| (b, r.deviation)))).collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect::<Result<Vec<_>>>()
    })?;
    let xs: Vec<f64> = devs.iter().map(|(b, _)| (*b as f64).ln()).collect();
    let ys: Vec<f64> = devs.iter().map(|(_, d)| d.max(1e-300).ln()).collect();
    let (slope, _, r2) = crate::numeric::linear_fit(&xs, &ys);
    Ok((slope, r2))
}

/// `sup_x |G(x) − (G ∗ F_N)(x)|` on a `10⁴` grid, with Fourier coefficients from the DFT on that grid.
pub fn fejer_defect<G: Fn(f64) -> f64>(g: G, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("N must be at least 2".into()));
    }
    let m = 10_000usize;
    let samples: Vec<f64> = (0..m).map(|j| g(j as f64 / m as f64)).collect();
    let coeffs: Vec<Complex64> = (0..n)
        .map(|k| {
            let mut acc = Complex64::zero();
            for (j, &v) in samples.iter().enumerate() {
                let ang = -TAU * ((k * j) % m) as f64 / m as f64;
                acc += v * Complex64::new(ang.cos(), ang.sin());
            }
            acc / m as f64
        })
        .collect();
    let mut sup = 0.0f64;
    for (j, &v) in samples.iter().enumerate() {
        // real G: ĝ_{−k} = conj ĝ_k
        let mut mean = coeffs[0].re;
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            let ang = TAU * ((k * j) % m) as f64 / m as f64;
            mean += 2.0 * (1.0 - k as f64 / n as f64) * (c * Complex64::new(ang.cos(), ang.sin())).re;
        }
        sup = sup.max((v - mean).abs());
    }
    Ok(sup)
}

/// `(√3 Γ(1/3)³/(2^{2/3} π³)) ∫₀¹ |f''|^{2/3}`.
pub fn residue_main_term(w: &SmoothWeight) -> f64 {
    let c = 3f64.sqrt() * gamma(1.0 / 3.0).powi(3) / (4f64.cbrt() * PI.powi(3));
    c * curvature_moment(w, Complex64::new(2.0 / 3.0, 0.0)).re
}

/// Legendre dual `g̃(u) = g*(−u)` of a convex graph chart on a `u`-range.
#[derive(Clone)]
pub struct LegendreDual {
    pub graph: GraphForm,
    pub u_range: (f64, f64),
    /// `x(u)` at the ends of the `u`-range.
    pub x_range: (f64, f64),
}

impl LegendreDual {
    /// `x(u)` solving `g'(x) = −u`.
    pub fn x_of(&self, u: f64) -> f64 {
        let g1 = self.graph.g1.clone();
        let g2 = self.graph.g2.clone();
        let (lo, hi) = (self.x_range.0.min(self.x_range.1), self.x_range.0.max(self.x_range.1));
        solve_increasing(|x| g1(x), Some(&|x| g2(x)), lo, hi, -u)
    }

    pub fn value(&self, u: f64) -> f64 {
        let x = self.x_of(u);
        -u * x - (self.graph.g)(x)
    }

    pub fn second(&self, u: f64) -> f64 {
        1.0 / (self.graph.g2)(self.x_of(u))
    }

    /// The dual as a weight on `[0, 1]`, rescaled from the `u`-range.
    pub fn as_weight(&self) -> SmoothWeight {
        let (u0, u1) = self.u_range;
        let len = u1 - u0;
        let me = Arc::new(self.clone());
        let (m0, m1, m2, m3) = (me.clone(), me.clone(), me.clone(), me);
        SmoothWeight::from_fns(
            Arc::new(move |t| m0.value(u0 + len * t)),
            Arc::new(move |t| -m1.x_of(u0 + len * t) * len),
            Arc::new(move |t| m2.second(u0 + len * t) * len * len),
            Arc::new(move |t| {
                let x = m3.x_of(u0 + len * t);
                (m3.graph.g3)(x) / (m3.graph.g2)(x).powi(3) * len.powi(3)
            }),
        )
    }
}

/// The Legendre dual over `u ∈ [u0, u1]`; the slopes `−u` must lie in `g'([0, A])`.
pub fn legendre_dual(graph: &GraphForm, u_range: (f64, f64)) -> Result<LegendreDual> {
    let (u0, u1) = u_range;
    if !(u0 < u1) {
        return Err(Error::InvalidArgument("empty u-range".into()));
    }
    let a = graph.a;
    let tiny = 1e-15 * a;
    let (s_lo, s_hi) = ((graph.g1)(0.0), (graph.g1)(a));
    if !(s_lo <= -u1 && -u0 <= s_hi) {
        return Err(Error::SlopeRange(format!("slopes [{}, {}] not inside g'([0, A]) = [{s_lo}, {s_hi}]", -u1, -u0)));
    }
    let g1 = graph.g1.clone();
    let g2 = graph.g2.clone();
    let x_at = |u: f64| solve_increasing(|x| g1(x), Some(&|x| g2(x)), tiny, a, -u);
    let x_range = (x_at(u0), x_at(u1));
    Ok(LegendreDual { graph: graph.clone(), u_range, x_range })
}

/// `Σ_{b ≤ B} φ(b) b^{−w}`.
pub fn phi_dirichlet_partial(w: f64, bound: u64) -> f64 {
    (1..=bound).rev().map(|b| arithmetic_functions(b).phi as f64 * (b as f64).powf(-w)).sum()
}

/// `Σ 1/(2bd(b+d))` over intervals with `b ≤ B`, `d ≤ D`, summed interval by interval.
pub fn quadratic_zeta_one_exact(b_max: u64, d_max: u64) -> Q {
    let w = SmoothWeight::quadratic();
    let mut acc = Q::zero();
    for b in 1..=b_max {
        for d in 1..=d_max {
            if b.gcd(&d) == 1 {
                let i = farey_from_denominators(b, d).expect("coprime");
                let t = hata_coefficient_exact(&w, &i).expect("polynomial").1;
                acc -= t;
            }
        }
    }
    acc
}

/// The same sum regrouped by `b`: `2^{−1} Σ_b b^{−3} Σ_{(r,b)=1} H_1^{(K_r)}(r/b)` with the kernel
/// truncated to the `d ≡ r` terms `d ≤ D`; at `s = 1` each `H_1` partial sum telescopes.
pub fn quadratic_zeta_one_regrouped(b_max: u64, d_max: u64) -> Q {
    let mut acc = Q::zero();
    for b in 1..=b_max {
        let b3 = q_int((b * b * b) as i64);
        for r in 1..=b {
            if r.gcd(&b) != 1 {
                continue;
            }
            // d = r + k b ≤ D, k ≥ 0; (k+u)^{-1}(k+1+u)^{-1} telescopes to 1/u − 1/(K+1+u)
            let r0 = if r == b { b } else { r };
            if r0 > d_max {
                continue;
            }
            let kmax = (d_max - r0) / b;
            let u = Q::new((r0 as i64).into(), (b as i64).into());
            let h = q_int(1) / u.clone() - q_int(1) / (u + q_int(kmax as i64 + 1));
            acc += h / b3.clone();
        }
    }
    acc / q_int(2)
}

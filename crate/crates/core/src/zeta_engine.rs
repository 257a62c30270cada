//! Boundary series `F_∂Ω`, the tropical zeta function `Z_Ω` by the correction
//! identity and by Mellin quadrature, polygon residues at `s = 1, 0` and the
//! counting estimate of the residue at `s = 2/3`.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::corner_cutting::{enumerate_cuts, CutTree};
use crate::domain_model::{ConvexDomain, RationalPolygon};
use crate::error::{Error, Result};
use crate::halfplane::{clip_convex, shoelace, GenHalfPlane};
use crate::minimal_model::{compute_minimal_model, correction_h, correction_h_exact, MinimalModel};
use crate::numeric::{linear_fit, log_grid, two_term_fit, GlRule};
use crate::scalar::{format_rational, q_int, q_pow, Scalar, Q};

/// A truncated series value with its truncation data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesEstimate {
    pub value: Complex64,
    pub cutoff: f64,
    pub terms_used: usize,
    /// Rough size of the omitted tail, from the `t^{-2/3}` counting law.
    pub tail_hint: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueMethod {
    ExactPolygon,
    CountingFit,
    PerimeterFit,
    AreaDeficitFit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    /// Free-slope exponent on the log-log scale.
    pub exponent: f64,
    pub r2: f64,
    pub window: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueEstimate {
    pub location: f64,
    pub value: f64,
    /// Exact value as `"p/q"` for polygon residues.
    pub exact: Option<String>,
    pub method: ResidueMethod,
    pub fit_diagnostics: Option<FitDiagnostics>,
    /// Secondary estimators of the same residue.
    pub alternatives: Vec<(ResidueMethod, f64)>,
    /// `r_Ω`, the counting constant, for the `2/3` residue.
    pub r: Option<f64>,
}

/// `t^z` with `0^z = 0` (used only where `Re z > 0`).
fn tpow(t: f64, z: Complex64) -> Complex64 {
    if t == 0.0 {
        Complex64::zero()
    } else {
        (z * t.ln()).exp()
    }
}

fn check_not_pole(s: Complex64) -> Result<()> {
    if s.norm() == 0.0 || (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole);
    }
    Ok(())
}

/// Critical times of a polygon's wave front before `m`, with multiplicities: the cut sizes of `∂Ω`.
pub fn polygon_cut_terms(poly: &RationalPolygon) -> Result<Vec<(Q, i64)>> {
    let ev = poly.facet_polygon().with_corner_chains().evolve()?;
    Ok(ev.events.into_iter().filter(|e| e.multiplicity != 0).map(|e| (e.time, e.multiplicity)).collect())
}

/// `F_∂Ω(n) = Σ size^n`, exact.
pub fn boundary_series_exact(poly: &RationalPolygon, n: i32) -> Result<Q> {
    Ok(polygon_cut_terms(poly)?.into_iter().map(|(t, k)| q_int(k) * q_pow(&t, n)).fold(Q::zero(), |a, b| a + b))
}

pub fn boundary_series_tree(tree: &CutTree, s: Complex64) -> SeriesEstimate {
    // smallest terms first
    let mut acc = Complex64::zero();
    for &x in tree.sizes().iter().rev() {
        acc += tpow(x, s);
    }
    let n = tree.sizes().len();
    let tail_hint = (tree.threshold > 0.0 && s.re > 2.0 / 3.0).then(|| (2.0 / 3.0) / (s.re - 2.0 / 3.0) * n as f64 * tree.threshold.powf(s.re));
    SeriesEstimate { value: acc, cutoff: tree.threshold, terms_used: n, tail_hint }
}

/// `F_∂Ω(s)` summed over all cuts of size `≥ ε` (all cuts for polygons).
pub fn boundary_series(domain: &ConvexDomain, s: Complex64, eps: f64) -> Result<SeriesEstimate> {
    match domain {
        ConvexDomain::Polygon(p) => {
            let terms = polygon_cut_terms(p)?;
            let value = terms.iter().map(|(t, k)| *k as f64 * tpow(t.to_f64(), s)).sum();
            Ok(SeriesEstimate { value, cutoff: 0.0, terms_used: terms.iter().map(|(_, k)| *k as usize).sum(), tail_hint: None })
        }
        ConvexDomain::Smooth(_) => Ok(boundary_series_tree(&enumerate_cuts(domain, eps)?, s)),
    }
}

/// `Z_Ω(s) = (H_Ω̂(s) − F_∂Ω(s)) / (s(s − 1))`.
pub fn zeta_via_identity(domain: &ConvexDomain, s: Complex64, eps: f64) -> Result<SeriesEstimate> {
    check_not_pole(s)?;
    let mm = compute_minimal_model(domain)?;
    let f = match domain {
        ConvexDomain::Polygon(_) => boundary_series(domain, s, eps)?,
        ConvexDomain::Smooth(_) => boundary_series_tree(&crate::corner_cutting::enumerate_cuts_with(domain, mm.clone(), eps, 1)?, s),
    };
    Ok(identity_from(&mm, f, s))
}

pub fn zeta_via_identity_tree(tree: &CutTree, s: Complex64) -> Result<SeriesEstimate> {
    check_not_pole(s)?;
    Ok(identity_from(&tree.model, boundary_series_tree(tree, s), s))
}

fn identity_from(mm: &MinimalModel, f: SeriesEstimate, s: Complex64) -> SeriesEstimate {
    let den = s * (s - 1.0);
    SeriesEstimate {
        value: (correction_h(mm, s) - f.value) / den,
        tail_hint: f.tail_hint.map(|t| t / den.norm()),
        ..f
    }
}

/// Exact `Z_Ω(n)` of a polygon by the correction identity.
pub fn zeta_identity_exact(poly: &RationalPolygon, n: i32) -> Result<Q> {
    if n == 0 || n == 1 {
        return Err(Error::Pole);
    }
    let mm = compute_minimal_model(&ConvexDomain::Polygon(poly.clone()))?;
    let h = correction_h_exact(&mm, n).expect("polygon models are exact");
    Ok((h - boundary_series_exact(poly, n)?) / q_int(n as i64 * (n as i64 - 1)))
}

/// `∫_T L^k` over a triangle for an affine `L` with vertex values `l1, l2, l3`:
/// `2·Area·k!/(k+2)!·h_k(l1, l2, l3)` with `h_k` the complete homogeneous polynomial.
fn triangle_power_integral(area: &Q, l: [&Q; 3], k: u32) -> Q {
    let mut h = Q::zero();
    for i in 0..=k {
        for j in 0..=(k - i) {
            let r = k - i - j;
            h += q_pow(l[0], i as i32) * q_pow(l[1], j as i32) * q_pow(l[2], r as i32);
        }
    }
    q_int(2) * area.clone() * h / q_int(((k + 1) * (k + 2)) as i64)
}

/// Exact `Z_Ω(n) = ∫_Ω ρ^{n−2}` for integer `n ≥ 2`, integrating over the linearity cells of `ρ`.
pub fn zeta_polygon_exact(poly: &RationalPolygon, n: u32) -> Result<Q> {
    if n < 2 {
        return Err(Error::InvalidArgument("exact cell integration needs n ≥ 2".into()));
    }
    let facets = poly.active_facets();
    let mut total = Q::zero();
    for (i, fi) in facets.iter().enumerate() {
        let mut cell: Vec<[Q; 2]> = poly.vertices().to_vec();
        for (j, fj) in facets.iter().enumerate() {
            if i == j || cell.len() < 3 {
                continue;
            }
            // L_j ≥ L_i
            let hp = GenHalfPlane {
                a: q_int(fj.normal.x - fi.normal.x),
                b: q_int(fj.normal.y - fi.normal.y),
                c: fj.offset.clone() - fi.offset.clone(),
            };
            cell = clip_convex(&cell, &hp);
        }
        if cell.len() < 3 {
            continue;
        }
        let vals: Vec<Q> = cell.iter().map(|p| fi.eval(p)).collect();
        for t in 1..cell.len() - 1 {
            let area = shoelace(&[cell[0].clone(), cell[t].clone(), cell[t + 1].clone()]);
            total += triangle_power_integral(&area, [&vals[0], &vals[t], &vals[t + 1]], n - 2);
        }
    }
    Ok(total)
}

/// `Z_Ω(s) = ∫₀^m t^{s−2} P(t) dt`, valid for `Re s > 2`.
pub fn zeta_via_mellin(domain: &ConvexDomain, s: Complex64, eps: f64) -> Result<SeriesEstimate> {
    if s.re <= 2.0 {
        return Err(Error::MellinDivergent);
    }
    match domain {
        ConvexDomain::Polygon(p) => {
            let ev = p.facet_polygon().with_corner_chains().evolve()?;
            let mut acc = Complex64::zero();
            for pc in &ev.pieces {
                let (t0, t1, p0, sl) = (pc.t0.to_f64(), pc.t1.to_f64(), pc.p0.to_f64(), pc.slope.to_f64());
                let a = p0 - sl * t0;
                acc += a * (tpow(t1, s - 1.0) - tpow(t0, s - 1.0)) / (s - 1.0) + sl * (tpow(t1, s) - tpow(t0, s)) / s;
            }
            Ok(SeriesEstimate { value: acc, cutoff: 0.0, terms_used: ev.pieces.len(), tail_hint: None })
        }
        ConvexDomain::Smooth(_) => zeta_via_mellin_tree(&enumerate_cuts(domain, eps)?, s),
    }
}

/// Mellin quadrature on a materialized tree: exact panels between the large cut
/// sizes (where `P` is linear), then geometric cells `[c/2, c]` with 8-point
/// Gauss–Legendre down to the tree threshold.
pub fn zeta_via_mellin_tree(tree: &CutTree, s: Complex64) -> Result<SeriesEstimate> {
    if s.re <= 2.0 {
        return Err(Error::MellinDivergent);
    }
    let m = tree.model.m;
    let eps = tree.threshold.max(1e-300);
    let gl = GlRule::new(8);
    let p_at = |t: f64| -> Result<f64> { Ok(tree.wave_front(t)?.perimeter) };
    let integrate = |a: f64, b: f64| -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for (t, w) in gl.mapped(a, b) {
            acc += w * tpow(t, s - 2.0) * p_at(t)?;
        }
        Ok(acc)
    };
    // breakpoints: distinct sizes in the upper range
    let split = (m / 64.0).max(eps);
    let mut bps: Vec<f64> = vec![m];
    for &x in tree.sizes() {
        if x < split {
            break;
        }
        if bps.last().is_some_and(|&l| l - x > 1e-12 * m) && x < m {
            bps.push(x);
        }
        if bps.len() > 400 {
            break;
        }
    }
    let lower = *bps.last().expect("nonempty");
    let mut acc = Complex64::zero();
    let mut evals = 0usize;
    for w in bps.windows(2) {
        acc += integrate(w[1], w[0])?;
        evals += 8;
    }
    let mut hi = lower;
    let tail_hint;
    loop {
        let lo = (hi / 2.0).max(eps);
        let c = integrate(lo, hi)?;
        evals += 8;
        acc += c;
        if lo <= eps || c.norm() < 1e-10 * acc.norm() {
            // remaining [0, lo]: P ∝ t^{1/3} near the boundary of a curved arc
            let tail = p_at(lo)? * tpow(lo, s - 1.0) / (s - 2.0 / 3.0);
            tail_hint = Some(tail.norm());
            acc += tail;
            break;
        }
        hi = lo;
    }
    Ok(SeriesEstimate { value: acc, cutoff: eps, terms_used: evals, tail_hint })
}

/// `s(s−1)·Z_R(s) = 8(Q/2)^s + 2s(P−Q)(Q/2)^{s−1}` for the rectangle `P × Q`.
pub fn rectangle_closed_form(p: f64, q: f64, s: Complex64) -> Complex64 {
    let (p, q) = if p < q { (q, p) } else { (p, q) };
    let h = q / 2.0;
    8.0 * tpow(h, s) + 2.0 * s * (p - q) * tpow(h, s - 1.0)
}

/// Integral of `f` over a triangle by the collapsed (Duffy) square with an `n × n` Gauss rule.
fn triangle_quadrature<F: Fn(f64, f64) -> Complex64>(tri: [[f64; 2]; 3], n: usize, f: F) -> Complex64 {
    let gl = GlRule::new(n);
    let [a, b, c] = tri;
    let area2 = ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).abs();
    let mut acc = Complex64::zero();
    for (u, wu) in gl.mapped(0.0, 1.0) {
        for (v, wv) in gl.mapped(0.0, 1.0) {
            let x = a[0] + u * (b[0] - a[0]) + u * v * (c[0] - b[0]);
            let y = a[1] + u * (b[1] - a[1]) + u * v * (c[1] - b[1]);
            acc += wu * wv * u * f(x, y);
        }
    }
    acc * area2
}

/// The contribution of one unimodular corner cut of size `λ`: the 2D integral of
/// `ρ_{Ω̂}^{s−2} − ρ_Ω^{s−2}` over the affected square, against `λ^s/(s(s−1))`.
pub fn one_cut_check(lambda: f64, s: Complex64) -> Result<(Complex64, Complex64)> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidArgument("λ must be positive".into()));
    }
    if s.re <= 2.0 {
        return Err(Error::MellinDivergent);
    }
    let rhs = tpow(lambda, s) / (s * (s - 1.0));
    let e = s - 2.0;
    let f = |x: f64, y: f64| {
        let cut = x + y - lambda;
        let hat = tpow(x.min(y).max(0.0), e);
        if cut > 0.0 {
            hat - tpow(cut, e)
        } else {
            hat
        }
    };
    let l = lambda;
    let c = [l / 2.0, l / 2.0];
    // four triangles on which both branches are smooth
    let tris = [[[0.0, 0.0], [l, 0.0], c], [[l, 0.0], [l, l], c], [[l, l], [0.0, l], c], [[0.0, l], [0.0, 0.0], c]];
    let lhs = tris.iter().map(|&t| triangle_quadrature(t, 40, f)).sum();
    Ok((lhs, rhs))
}

/// `Res_{s=1} Z_Ω = H(1) − F(1)`, which equals the lattice perimeter.
pub fn polygon_residue_one(poly: &RationalPolygon) -> Result<Q> {
    let mm = compute_minimal_model(&ConvexDomain::Polygon(poly.clone()))?;
    Ok(correction_h_exact(&mm, 1).expect("exact") - boundary_series_exact(poly, 1)?)
}

/// `Res_{s=0} Z_Ω = F(0) − H(0) = −K²`; refused for polygons with non-`A_n` corners.
pub fn polygon_residue_zero(poly: &RationalPolygon) -> Result<Q> {
    if let Some(&i) = poly.non_an_corners().first() {
        return Err(Error::NonAnCorner(i));
    }
    let mm = compute_minimal_model(&ConvexDomain::Polygon(poly.clone()))?;
    let k = mm.k_exact.clone().expect("exact");
    let n: i64 = polygon_cut_terms(poly)?.iter().map(|(_, c)| c).sum();
    Ok(q_int(n) - k)
}

pub fn polygon_residue(poly: &RationalPolygon, location: i32) -> Result<ResidueEstimate> {
    let v = match location {
        1 => polygon_residue_one(poly)?,
        0 => polygon_residue_zero(poly)?,
        _ => return Err(Error::InvalidArgument("polygon residues are at s = 1 and s = 0".into())),
    };
    Ok(ResidueEstimate {
        location: location as f64,
        value: v.to_f64(),
        exact: Some(format_rational(&v)),
        method: ResidueMethod::ExactPolygon,
        fit_diagnostics: None,
        alternatives: vec![],
        r: None,
    })
}

/// Free-exponent and fixed-exponent fits of the perimeter and area-deficit profiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileFits {
    pub window: (f64, f64),
    pub perimeter_exponent: f64,
    pub perimeter_r2: f64,
    /// Coefficient of `t^{1/3}` in `P(t) ≈ c t^{1/3} + c' t^{1/2}`; equals `(9/2) r_Ω`.
    pub perimeter_prefactor: f64,
    pub area_exponent: f64,
    pub area_r2: f64,
    /// Coefficient of `t^{4/3}` in the area deficit; equals `(3/4)·Res`.
    pub area_prefactor: f64,
    pub domain_area: f64,
}

/// `Area(Ω)` from the tree: frame area minus the materialized cuts minus the
/// unmaterialized subtrees. A subtree hanging below a cut of size `σ` in a
/// parabolic arc removes `(2/3)σ²` in total; small arc pieces are affinely
/// parabolic, so this is used for the frontier.
pub fn domain_area_from_tree(tree: &CutTree) -> f64 {
    let frontier: f64 = tree.frontier.iter().map(|s| s * s).sum::<f64>() * (2.0 / 3.0);
    tree.domain_area_estimate() - frontier
}

pub fn fit_profiles(tree: &CutTree, lo: f64, hi: f64, n: usize) -> Result<ProfileFits> {
    if lo < tree.threshold {
        return Err(Error::TreeTooShallow { requested: lo, threshold: tree.threshold });
    }
    let ts = log_grid(lo, hi, n.max(10));
    let prof = tree.profiles(&ts)?;
    let area = domain_area_from_tree(tree);
    let lt: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let per: Vec<f64> = prof.iter().map(|p| p.perimeter).collect();
    let def: Vec<f64> = prof.iter().map(|p| area - p.area).collect();
    if per.iter().chain(&def).any(|v| !(*v > 0.0)) {
        return Err(Error::RegimeNotReached("nonpositive perimeter or area deficit in the window".into()));
    }
    let (pe, _, pr2) = linear_fit(&lt, &per.iter().map(|v| v.ln()).collect::<Vec<_>>());
    let (ae, _, ar2) = linear_fit(&lt, &def.iter().map(|v| v.ln()).collect::<Vec<_>>());
    let (pc, _) = two_term_fit(&ts, &per, 1.0 / 3.0, 0.5);
    let (ac, _) = two_term_fit(&ts, &def, 4.0 / 3.0, 1.5);
    Ok(ProfileFits {
        window: (lo, hi),
        perimeter_exponent: pe,
        perimeter_r2: pr2,
        perimeter_prefactor: pc,
        area_exponent: ae,
        area_r2: ar2,
        area_prefactor: ac,
        domain_area: area,
    })
}

/// `Res_{s=2/3} Z_Ω` from the counting law `N^cut(t) ∼ (3/2) r_Ω t^{−2/3}` and `Res = (9/2) r_Ω`.
pub fn residue_two_thirds(domain: &ConvexDomain, eps_min: f64) -> Result<ResidueEstimate> {
    if let ConvexDomain::Polygon(_) = domain {
        return Err(Error::RegimeNotReached("polygon boundaries have finitely many cuts".into()));
    }
    residue_two_thirds_tree(&enumerate_cuts(domain, eps_min)?)
}

/// Counting-law fit `N(t) ≈ A t^{−2/3} + B t^{−1/2}` over `[ε, ε^{0.6}]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingFit {
    pub coefficient: f64,
    /// Free-slope exponent of `log N` against `log t`.
    pub exponent: f64,
    pub r2: f64,
    pub window: (f64, f64),
    pub total: usize,
}

/// Fit the counting function of `sizes` (sorted descending) down to `eps`.
pub fn counting_fit(sizes: &[f64], eps: f64, min_count: usize) -> Result<CountingFit> {
    let count = |t: f64| sizes.partition_point(|&x| x >= t);
    let total = count(eps);
    if total < min_count {
        return Err(Error::RegimeNotReached(format!("only {total} terms above ε = {eps:e}; need {min_count}")));
    }
    let hi = eps.powf(0.6);
    let ts = log_grid(eps, hi, 40);
    let counts: Vec<f64> = ts.iter().map(|&t| count(t) as f64).collect();
    if counts.iter().any(|&c| c < 1.0) {
        return Err(Error::RegimeNotReached("empty counts in the window".into()));
    }
    let lt: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let lc: Vec<f64> = counts.iter().map(|c| c.ln()).collect();
    let (exponent, _, r2) = linear_fit(&lt, &lc);
    if (exponent + 2.0 / 3.0).abs() > 0.05 {
        return Err(Error::RegimeNotReached(format!("fitted exponent {exponent:.4} is not −2/3")));
    }
    let (coefficient, _) = two_term_fit(&ts, &counts, -2.0 / 3.0, -0.5);
    Ok(CountingFit { coefficient, exponent, r2, window: (eps, hi), total })
}

pub fn residue_two_thirds_tree(tree: &CutTree) -> Result<ResidueEstimate> {
    let eps = tree.threshold;
    if !(eps > 0.0) {
        return Err(Error::RegimeNotReached("finite tree".into()));
    }
    let fit = counting_fit(tree.sizes(), eps, 10_000)?;
    let (slope, r2, hi, a) = (fit.exponent, fit.r2, fit.window.1, fit.coefficient);
    let r = 2.0 / 3.0 * a;
    let value = 4.5 * r;
    let mut alternatives = Vec::new();
    if let Ok(fits) = fit_profiles(tree, eps, hi, 30) {
        alternatives.push((ResidueMethod::PerimeterFit, fits.perimeter_prefactor));
        alternatives.push((ResidueMethod::AreaDeficitFit, fits.area_prefactor * 4.0 / 3.0));
    }
    Ok(ResidueEstimate {
        location: 2.0 / 3.0,
        value,
        exact: None,
        method: ResidueMethod::CountingFit,
        fit_diagnostics: Some(FitDiagnostics { exponent: slope, r2, window: (eps, hi) }),
        alternatives,
        r: Some(r),
    })
}

/// `F(s)` summed by `n` equal powers: the multiset `{c : multiplicity}` for a polygon as `(size, count)` in `f64`.
pub fn term_multiset(poly: &RationalPolygon) -> Result<Vec<(Q, i64)>> {
    let mut t = polygon_cut_terms(poly)?;
    t.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Q, i64)> = Vec::new();
    for (x, k) in t {
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 += k,
            _ => out.push((x, k)),
        }
    }
    Ok(out)
}

/// True when `q` is a positive integer (used for integer `s` shortcuts).
pub fn is_integer_point(s: Complex64) -> Option<i32> {
    (s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 1e6).then_some(s.re as i32)
}

/// `Q` one, exported for callers building exact sums.
pub fn q_one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corner_cutting::enumerate_cuts;
    use crate::domain_model::domain_l;
    use crate::scalar::q;
    use approx::assert_relative_eq;

    fn rect() -> RationalPolygon {
        RationalPolygon::from_ints(&[(0, 0), (3, 0), (3, 2), (0, 2)]).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn rectangle_routes() {
        let r = rect();
        assert_eq!(zeta_polygon_exact(&r, 2).unwrap(), q_int(6));
        assert_eq!(zeta_polygon_exact(&r, 3).unwrap(), q(7, 3));
        assert_eq!(zeta_identity_exact(&r, 3).unwrap(), q(7, 3));
        let m = zeta_via_mellin(&ConvexDomain::Polygon(r.clone()), c(3.0), 0.0).unwrap();
        assert_relative_eq!(m.value.re, 7.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(rectangle_closed_form(3.0, 2.0, c(2.0)).re, 12.0);
        assert_relative_eq!(rectangle_closed_form(2.0, 3.0, c(1.0)).re, 10.0);
        assert_relative_eq!(rectangle_closed_form(2.0, 2.0, c(4.5)).re, 8.0);
        assert!(matches!(zeta_via_mellin(&ConvexDomain::Polygon(r), c(2.0), 0.0), Err(Error::MellinDivergent)));
    }

    #[test]
    fn triangle_area_and_poles() {
        let t = RationalPolygon::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(zeta_identity_exact(&t, 2).unwrap(), q(1, 2));
        assert!(matches!(zeta_via_identity(&ConvexDomain::Polygon(t), c(1.0), 0.0), Err(Error::Pole)));
    }

    #[test]
    fn residues_of_simple_polygons() {
        assert_eq!(polygon_residue_one(&rect()).unwrap(), q_int(10));
        let sq = RationalPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(polygon_residue_one(&sq).unwrap(), q_int(4));
        assert_eq!(polygon_residue_zero(&sq).unwrap(), q_int(-8));
    }

    #[test]
    fn one_cut_examples() {
        let (l, r) = one_cut_check(1.0, c(3.0)).unwrap();
        assert_relative_eq!(r.re, 1.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(l.re, r.re, epsilon = 1e-9);
        let (l, r) = one_cut_check(2.0, c(4.0)).unwrap();
        assert_relative_eq!(r.re, 4.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(l.re, r.re, epsilon = 1e-9);
        let (l, r) = one_cut_check(1.0, Complex64::new(3.5, 2.0)).unwrap();
        assert!((l - r).norm() < 1e-6 * r.norm());
    }

    #[test]
    fn l_identity_gives_area() {
        let tree = enumerate_cuts(&domain_l(), 1e-6).unwrap();
        let z = zeta_via_identity_tree(&tree, c(2.0)).unwrap();
        assert!((z.value.re - 10.0 / 3.0).abs() < 1e-6, "{}", z.value.re);
    }

    #[test]
    fn l_routes_agree_at_three() {
        let tree = enumerate_cuts(&domain_l(), 1e-6).unwrap();
        let a = zeta_via_identity_tree(&tree, c(3.0)).unwrap().value;
        let b = zeta_via_mellin_tree(&tree, c(3.0)).unwrap().value;
        assert!((a - b).norm() < 1e-5, "{a} vs {b}");
    }
}

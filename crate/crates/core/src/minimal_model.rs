//! Minimal models: `m_Ω`, the maximum locus `M_Ω`, the frame polygon `Ω̂`, its
//! combinatorial type and the holomorphic correction `H_Ω̂(s)`.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::domain_model::{lattice_length_f64, primitive_direction, ConvexDomain, RationalPolygon};
use crate::error::{Error, Result};
use crate::halfplane::{Facet, FacetPolygon};
use crate::lattice_arith::PrimitiveVector;
use crate::scalar::{q_int, Scalar, Q};

/// Combinatorial type of a minimal model together with its complete invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TypeTag {
    /// `Ω̂ = m·P + c` for a reflexive polygon `P`.
    ReflexivePoint { vertices: usize, perimeter: i64 },
    SegmentDegenerate { k_diff: i64 },
    SegmentBranching { n3_plus_n4: i64, n1_plus_n2: i64, n1_minus_n4: i64 },
    SegmentMixed { n1_minus_k: i64, n1_plus_n2: i64 },
    /// The frame could not be put into one of the normal forms (float frames with non-integral data).
    Unclassified { reason: String },
}

/// Integer parameters of a segment-type normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SegmentParams {
    Degenerate { k1: i64, k2: i64 },
    Branching { n1: i64, n2: i64, n3: i64, n4: i64 },
    Mixed { k: i64, n1: i64, n2: i64 },
}

impl SegmentParams {
    /// `k = (Length_Z(∂Ω̂) − 2l)/m` of the normal form.
    pub fn k(&self) -> i64 {
        match *self {
            SegmentParams::Degenerate { .. } => 4,
            SegmentParams::Branching { n1, n2, n3, n4 } => 4 + n1 + n2 - n3 - n4,
            SegmentParams::Mixed { n1, n2, .. } => 4 + n1 + n2,
        }
    }

    pub fn type_tag(&self) -> TypeTag {
        match *self {
            SegmentParams::Degenerate { k1, k2 } => TypeTag::SegmentDegenerate { k_diff: (k1 - k2).abs() },
            SegmentParams::Branching { n1, n2, n3, n4 } => TypeTag::SegmentBranching { n3_plus_n4: n3 + n4, n1_plus_n2: n1 + n2, n1_minus_n4: n1 - n4 },
            SegmentParams::Mixed { k, n1, n2 } => TypeTag::SegmentMixed { n1_minus_k: n1 - k, n1_plus_n2: n1 + n2 },
        }
    }

    /// Nonnegativity of every side of the normal form.
    pub fn check(&self, l: f64, m: f64) -> Result<()> {
        let tol = 1e-12 * (l.abs() + m.abs());
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::ConstraintViolated(what.to_string())) };
        need(l > 0.0 && m > 0.0, "l > 0 and m > 0")?;
        match *self {
            SegmentParams::Degenerate { k1, k2 } => need(l + tol >= m * ((k1 - k2).abs() - 1) as f64, "l ≥ m(|k1 − k2| − 1)"),
            SegmentParams::Branching { n1, n2, n3, n4 } => {
                need(n3 + n4 >= -2, "n3 + n4 ≥ −2")?;
                need(n1 + n2 <= 2, "n1 + n2 ≤ 2")?;
                need(l + tol >= m * (n4 - n1) as f64, "l ≥ m(n4 − n1)")?;
                need(l + tol >= m * (n3 - n2) as f64, "l ≥ m(n3 − n2)")
            }
            SegmentParams::Mixed { k, n1, n2 } => {
                need(n1 + n2 <= 2, "n1 + n2 ≤ 2")?;
                need(l + tol >= m * (k - n1) as f64, "l ≥ m(k − n1)")?;
                need(l + tol >= -m * (n2 + k + 1) as f64, "l ≥ −m(n2 + k + 1)")
            }
        }
    }

    /// Vertices of the normal form (possibly with repeats when a side has zero length).
    pub fn vertices(&self, l: &Q, m: &Q) -> Vec<[Q; 2]> {
        let h = l.clone() / q_int(2);
        let x = |base: &Q, j: i64| base.clone() + m.clone() * q_int(j);
        let (lo, hi) = (-h.clone(), h);
        let (top, zero, bot) = (m.clone(), Q::zero(), -m.clone());
        match *self {
            SegmentParams::Degenerate { k1, k2 } => vec![
                [x(&lo, -(k2 + 1)), bot.clone()],
                [x(&hi, -k1), bot],
                [x(&hi, k1 + 1), top.clone()],
                [x(&lo, k2), top],
            ],
            SegmentParams::Branching { n1, n2, n3, n4 } => vec![
                [x(&lo, n3), bot.clone()],
                [x(&hi, n2), bot],
                [x(&hi, 1), zero.clone()],
                [x(&hi, n1), top.clone()],
                [x(&lo, n4), top],
                [x(&lo, -1), zero],
            ],
            SegmentParams::Mixed { k, n1, n2 } => vec![
                [x(&lo, -(k + 1)), bot.clone()],
                [x(&hi, n2), bot],
                [x(&hi, 1), zero],
                [x(&hi, n1), top.clone()],
                [x(&lo, k), top],
            ],
        }
    }

    pub fn polygon(&self, l: &Q, m: &Q) -> Result<RationalPolygon> {
        self.check(l.to_f64(), m.to_f64())?;
        RationalPolygon::new(self.vertices(l, m))
    }
}

/// Closed form `Z_Ω̂(s) = (s − 1)^{-1}(2l + k·m/s)·m^{s−1}` of a segment-type model.
pub fn segment_model_zeta(params: &SegmentParams, l: f64, m: f64, s: Complex64) -> Result<Complex64> {
    params.check(l, m)?;
    if s.norm() == 0.0 || (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole);
    }
    let k = params.k() as f64;
    Ok((2.0 * l + k * m / s) * Complex64::new(m, 0.0).powc(s - 1.0) / (s - 1.0))
}

/// The minimal model of a domain.
#[derive(Debug, Clone)]
pub struct MinimalModel {
    pub hat: FacetPolygon<f64>,
    pub hat_exact: Option<FacetPolygon<Q>>,
    /// `Ω̂` with exact vertices, when the frame is rational.
    pub polygon: Option<RationalPolygon>,
    pub m: f64,
    pub m_exact: Option<Q>,
    /// One point, or the two endpoints of `M_Ω`.
    pub locus: Vec<[f64; 2]>,
    pub locus_exact: Option<Vec<[Q; 2]>>,
    pub l: f64,
    pub l_exact: Option<Q>,
    pub k: f64,
    pub k_exact: Option<Q>,
    pub type_tag: TypeTag,
    pub segment_params: Option<SegmentParams>,
    /// `E_Ω`: the facet normals of `Ω̂`.
    pub support_directions: Vec<PrimitiveVector>,
}

impl MinimalModel {
    pub fn is_point(&self) -> bool {
        self.locus.len() == 1
    }

    pub fn lattice_perimeter(&self) -> f64 {
        self.hat.lattice_perimeter()
    }

    /// Residue of `Z_Ω̂` at `s = 1`, i.e. `H(1) = 2l + k·m`.
    pub fn residue_at_one(&self) -> f64 {
        2.0 * self.l + self.k * self.m
    }
}

/// `H_Ω̂(s) = m^{s−1}(2ls + km)`.
pub fn correction_h(mm: &MinimalModel, s: Complex64) -> Complex64 {
    Complex64::new(mm.m, 0.0).powc(s - 1.0) * (2.0 * mm.l * s + mm.k * mm.m)
}

/// Exact `H_Ω̂(n)` at an integer point for rational frames.
pub fn correction_h_exact(mm: &MinimalModel, n: i32) -> Option<Q> {
    let (m, l, k) = (mm.m_exact.as_ref()?, mm.l_exact.as_ref()?, mm.k_exact.as_ref()?);
    Some(crate::scalar::q_pow(m, n - 1) * (q_int(2) * l.clone() * q_int(n as i64) + k.clone() * m.clone()))
}

pub fn compute_minimal_model(domain: &ConvexDomain) -> Result<MinimalModel> {
    match domain {
        ConvexDomain::Polygon(p) => polygon_minimal_model(p),
        ConvexDomain::Smooth(s) => {
            let frame = s.hat.with_corner_chains();
            let scale = 1.0 + s.m.abs();
            let touching = |f: &Facet<f64>| s.locus.iter().any(|x| (f.eval(x) - s.m).abs() <= 1e-9 * scale);
            for f in s.hat.facets() {
                if !touching(f) {
                    return Err(Error::InconsistentFrame(format!(
                        "facet ({},{}) ≥ {} does not support the maximum locus (m = {})",
                        f.normal.x, f.normal.y, f.offset, s.m
                    )));
                }
            }
            let support_directions = frame.facets().iter().filter(|f| touching(f)).map(|f| f.normal).collect();
            let k = (s.hat.lattice_perimeter() - 2.0 * s.l) / s.m;
            let exact = match &s.hat_exact {
                Some(h) => Some(exact_frame_data(h)?),
                None => None,
            };
            let (polygon, m_exact, locus_exact, l_exact, k_exact) = match exact {
                Some((p, m, loc, l, k)) => (Some(p), Some(m), Some(loc), Some(l), Some(k)),
                None => (None, None, None, None, None),
            };
            let mut mm = MinimalModel {
                hat: s.hat.clone(),
                hat_exact: s.hat_exact.clone(),
                polygon,
                m: s.m,
                m_exact,
                locus: s.locus.clone(),
                locus_exact,
                l: s.l,
                l_exact,
                k,
                k_exact,
                type_tag: TypeTag::Unclassified { reason: String::new() },
                segment_params: None,
                support_directions,
            };
            classify(&mut mm)?;
            Ok(mm)
        }
    }
}

fn exact_frame_data(hat: &FacetPolygon<Q>) -> Result<(RationalPolygon, Q, Vec<[Q; 2]>, Q, Q)> {
    let ev = hat.with_corner_chains().evolve()?;
    let k = (hat.lattice_perimeter() - q_int(2) * ev.l.clone()) / ev.m.clone();
    Ok((RationalPolygon::new(hat.vertices())?, ev.m, ev.locus, ev.l, k))
}

fn polygon_minimal_model(p: &RationalPolygon) -> Result<MinimalModel> {
    let all = p.facet_polygon().with_corner_chains();
    let ev = all.evolve()?;
    let e: Vec<Facet<Q>> = all.facets().iter().filter(|f| ev.locus.iter().any(|x| f.eval(x) == ev.m)).cloned().collect();
    let hat_exact = FacetPolygon::from_halfplanes(e, false)?;
    let hat = FacetPolygon::from_halfplanes(hat_exact.facets().iter().map(|f| Facet::new(f.normal, f.offset.to_f64())).collect(), false)?;
    let support_directions = hat_exact.facets().iter().map(|f| f.normal).collect();
    let k_exact = (hat_exact.lattice_perimeter() - q_int(2) * ev.l.clone()) / ev.m.clone();
    let mut mm = MinimalModel {
        hat,
        polygon: Some(RationalPolygon::new(hat_exact.vertices())?),
        hat_exact: Some(hat_exact),
        m: ev.m.to_f64(),
        locus: ev.locus.iter().map(|x| [x[0].to_f64(), x[1].to_f64()]).collect(),
        l: ev.l.to_f64(),
        k: k_exact.to_f64(),
        m_exact: Some(ev.m),
        locus_exact: Some(ev.locus),
        l_exact: Some(ev.l),
        k_exact: Some(k_exact),
        type_tag: TypeTag::Unclassified { reason: String::new() },
        segment_params: None,
        support_directions,
    };
    classify(&mut mm)?;
    Ok(mm)
}

fn near_int(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= 1e-7 * (1.0 + x.abs())).then_some(r as i64)
}

fn classify(mm: &mut MinimalModel) -> Result<()> {
    if mm.is_point() {
        mm.type_tag = classify_point(mm);
        return Ok(());
    }
    match segment_params(mm) {
        Ok(p) => {
            mm.type_tag = p.type_tag();
            mm.segment_params = Some(p);
        }
        Err(reason) => mm.type_tag = TypeTag::Unclassified { reason },
    }
    Ok(())
}

fn classify_point(mm: &MinimalModel) -> TypeTag {
    // P = (Ω̂ − M)/m must be a lattice polygon with exactly one interior lattice point
    let (verts, area, perimeter): (Vec<[f64; 2]>, f64, f64) = match (&mm.polygon, &mm.locus_exact, &mm.m_exact) {
        (Some(poly), Some(loc), Some(m)) => {
            let c = &loc[0];
            let Ok(p) = poly.transform([[1, 0], [0, 1]], [-c[0].clone(), -c[1].clone()]).and_then(|t| t.scale(&(Q::from_integer(1.into()) / m.clone()))) else {
                return TypeTag::Unclassified { reason: "rescale failed".into() };
            };
            if p.vertices().iter().any(|v| !v[0].is_integer() || !v[1].is_integer()) {
                return TypeTag::Unclassified { reason: "rescaled frame is not a lattice polygon".into() };
            }
            (p.vertices_f64(), p.area().to_f64(), p.lattice_perimeter().to_f64())
        }
        _ => {
            let c = mm.locus[0];
            let v: Vec<[f64; 2]> = mm.hat.vertices().iter().map(|x| [(x[0] - c[0]) / mm.m, (x[1] - c[1]) / mm.m]).collect();
            if v.iter().any(|x| near_int(x[0]).is_none() || near_int(x[1]).is_none()) {
                return TypeTag::Unclassified { reason: "rescaled frame is not a lattice polygon".into() };
            }
            let v: Vec<[f64; 2]> = v.iter().map(|x| [x[0].round(), x[1].round()]).collect();
            let n = v.len();
            let per = (0..n).map(|i| lattice_length_f64(v[i], v[(i + 1) % n]).unwrap_or(f64::NAN)).sum();
            (v.clone(), crate::halfplane::shoelace(&v), per)
        }
    };
    // Pick: A = I + B/2 − 1
    let interior = area - perimeter / 2.0 + 1.0;
    match (near_int(interior), near_int(perimeter)) {
        (Some(1), Some(b)) => TypeTag::ReflexivePoint { vertices: verts.len(), perimeter: b },
        _ => TypeTag::Unclassified { reason: format!("{interior} interior lattice points after rescale") },
    }
}

/// Reads the Figure-4 style parameters off the frame after moving `M` to the
/// horizontal segment `[−l/2, l/2] × {0}` by an `SL(2,Z)` map.
fn segment_params(mm: &MinimalModel) -> std::result::Result<SegmentParams, String> {
    let (a, b) = (mm.locus[0], mm.locus[1]);
    let dir = match &mm.locus_exact {
        Some(loc) => primitive_direction(&(loc[1][0].clone() - loc[0][0].clone()), &(loc[1][1].clone() - loc[0][1].clone())).map_err(|e| e.to_string())?,
        None => {
            let l = lattice_length_f64(a, b).map_err(|e| e.to_string())?;
            let (px, py) = ((b[0] - a[0]) / l, (b[1] - a[1]) / l);
            match (near_int(px), near_int(py)) {
                (Some(x), Some(y)) => PrimitiveVector::new(x, y).map_err(|e| e.to_string())?,
                _ => return Err("segment direction not integral".into()),
            }
        }
    };
    let e = dir.x.extended_gcd(&dir.y);
    // det(d, (r, s)) = p·s − q·r = 1
    let (r, s) = (-e.y * e.gcd, e.x * e.gcd);
    let mat = [[s, -r], [-dir.y, dir.x]];
    let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let verts: Vec<[f64; 2]> = mm
        .hat
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = (v[0] - mid[0], v[1] - mid[1]);
            [mat[0][0] as f64 * x + mat[0][1] as f64 * y, mat[1][0] as f64 * x + mat[1][1] as f64 * y]
        })
        .collect();
    let (m, l) = (mm.m, mm.l);
    let tol = 1e-9 * (1.0 + m + l);
    let at = |y: f64| -> Vec<f64> {
        let mut xs: Vec<f64> = verts.iter().filter(|v| (v[1] - y).abs() <= tol).map(|v| v[0]).collect();
        xs.sort_by(f64::total_cmp);
        xs
    };
    let (top, bottom, middle) = (at(m), at(-m), at(0.0));
    if top.is_empty() || bottom.is_empty() || verts.iter().any(|v| v[1].abs() > m + tol) {
        return Err("frame is not between the lines y = ±m".into());
    }
    let (xt1, xt2) = (top[0], *top.last().expect("nonempty"));
    let (xb1, xb2) = (bottom[0], *bottom.last().expect("nonempty"));
    #[derive(PartialEq)]
    enum Side {
        Branch,
        Degenerate,
    }
    let side = |sign: f64, xt: f64, xb: f64| -> std::result::Result<Side, String> {
        if middle.iter().any(|&x| (x * sign - (l / 2.0 + m)).abs() <= tol) {
            return Ok(Side::Branch);
        }
        let mx = sign * (xt + xb) / 2.0;
        if (mx - (l / 2.0 + m)).abs() <= tol {
            Ok(Side::Branch)
        } else if (mx - (l / 2.0 + m / 2.0)).abs() <= tol {
            Ok(Side::Degenerate)
        } else {
            Err(format!("unrecognised side with midpoint {mx}"))
        }
    };
    let right = side(1.0, xt2, xb2)?;
    let left = side(-1.0, xt1, xb1)?;
    let int = |x: f64| near_int(x).ok_or_else(|| format!("non-integral parameter {x}"));
    let p = match (left, right) {
        (Side::Degenerate, Side::Degenerate) => SegmentParams::Degenerate { k2: int((xt1 + l / 2.0) / m)?, k1: int((xt2 - l / 2.0) / m - 1.0)? },
        (Side::Branch, Side::Branch) => SegmentParams::Branching {
            n4: int((xt1 + l / 2.0) / m)?,
            n1: int((xt2 - l / 2.0) / m)?,
            n3: int((xb1 + l / 2.0) / m)?,
            n2: int((xb2 - l / 2.0) / m)?,
        },
        (Side::Degenerate, Side::Branch) => SegmentParams::Mixed { k: int((xt1 + l / 2.0) / m)?, n1: int((xt2 - l / 2.0) / m)?, n2: int((xb2 - l / 2.0) / m)? },
        (Side::Branch, Side::Degenerate) => {
            // reflect x → −x so the branch side is on the right
            SegmentParams::Mixed { k: int((-xt2 + l / 2.0) / m)?, n1: int((-xt1 - l / 2.0) / m)?, n2: int((-xb1 - l / 2.0) / m)? }
        }
    };
    if p.k() as f64 - mm.k > 1e-7 * (1.0 + mm.k.abs()) || mm.k - p.k() as f64 > 1e-7 * (1.0 + mm.k.abs()) {
        return Err(format!("normal form has k = {} but the frame has k = {}", p.k(), mm.k));
    }
    Ok(p)
}

/// `true` when `x ↦ ρ` of the domain and of its frame agree on the segment
/// `M_Ω` and on a small ring around it (spot check of the minimal-model property).
pub fn spot_check_near_locus(domain: &ConvexDomain, mm: &MinimalModel, radius: f64) -> Result<f64> {
    let frame: Vec<Facet<f64>> = mm.hat.with_corner_chains().facets().to_vec();
    let rho_hat = |x: [f64; 2]| frame.iter().map(|f| f.normal.dot_f(x) - f.offset).fold(f64::INFINITY, f64::min);
    let mut worst: f64 = 0.0;
    for c in &mm.locus {
        for j in 0..12 {
            let th = j as f64 * std::f64::consts::PI / 6.0;
            let x = [c[0] + radius * th.cos(), c[1] + radius * th.sin()];
            worst = worst.max((domain.tropical_distance(x)? - rho_hat(x)).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain_model::{disk, domain_l, parabolic_triangle};
    use crate::scalar::q;
    use approx::assert_relative_eq;

    fn poly(v: &[(i64, i64)]) -> ConvexDomain {
        ConvexDomain::Polygon(RationalPolygon::from_ints(v).unwrap())
    }

    #[test]
    fn l_and_disk_frames() {
        let mm = compute_minimal_model(&domain_l()).unwrap();
        assert_eq!(mm.m, 1.0);
        assert!(mm.is_point());
        assert_eq!(mm.k_exact, Some(q_int(8)));
        assert_eq!(mm.type_tag, TypeTag::ReflexivePoint { vertices: 4, perimeter: 8 });
        assert_relative_eq!(correction_h(&mm, Complex64::new(3.7, 1.0)).re, 8.0, epsilon = 1e-12);
        let d = compute_minimal_model(&disk(1.0).unwrap()).unwrap();
        assert_relative_eq!(d.m, 1.0);
        assert_relative_eq!(d.k, 8.0);
    }

    #[test]
    fn triangle_is_its_own_model() {
        let mm = compute_minimal_model(&poly(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert_eq!(mm.m_exact, Some(q(1, 3)));
        assert_eq!(mm.k_exact, Some(q_int(9)));
        assert_eq!(mm.type_tag, TypeTag::ReflexivePoint { vertices: 3, perimeter: 9 });
        assert_eq!(correction_h_exact(&mm, 2), Some(q_int(3) * q(1, 3)));
    }

    #[test]
    fn rectangle_is_branching() {
        let mm = compute_minimal_model(&poly(&[(0, 0), (3, 0), (3, 2), (0, 2)])).unwrap();
        assert_eq!(mm.m_exact, Some(q_int(1)));
        assert_eq!(mm.l_exact, Some(q_int(1)));
        assert_eq!(mm.k_exact, Some(q_int(8)));
        assert_eq!(mm.type_tag, TypeTag::SegmentBranching { n3_plus_n4: -2, n1_plus_n2: 2, n1_minus_n4: 2 });
        let h = correction_h(&mm, Complex64::new(2.5, 0.0));
        assert_relative_eq!(h.re, 8.0 + 5.0, epsilon = 1e-12);
    }

    #[test]
    fn cut_polygons_reduce_to_frame() {
        // a square with one corner cut: the cut facet does not touch the centre, so Ω̂ is the square
        let mm = compute_minimal_model(&poly(&[(1, 0), (4, 0), (4, 4), (0, 4), (0, 1)])).unwrap();
        assert_eq!(mm.polygon.as_ref().unwrap().vertices().len(), 4);
        assert_eq!(mm.m_exact, Some(q_int(2)));
        let t = compute_minimal_model(&parabolic_triangle()).unwrap();
        assert_eq!(t.k_exact, Some(q_int(7)));
        assert_eq!(t.type_tag, TypeTag::ReflexivePoint { vertices: 5, perimeter: 7 });
    }

    #[test]
    fn normal_forms_roundtrip() {
        let (l, m) = (q(5, 2), q_int(1));
        for p in [
            SegmentParams::Degenerate { k1: 0, k2: 0 },
            SegmentParams::Degenerate { k1: 2, k2: 0 },
            SegmentParams::Branching { n1: 0, n2: 0, n3: 0, n4: 0 },
            SegmentParams::Branching { n1: 1, n2: 0, n3: -1, n4: 1 },
            SegmentParams::Mixed { k: 0, n1: 1, n2: 0 },
            SegmentParams::Mixed { k: 1, n1: 0, n2: -1 },
        ] {
            let polygon = p.polygon(&l, &m).unwrap();
            let area = polygon.area().to_f64();
            let z2 = segment_model_zeta(&p, l.to_f64(), 1.0, Complex64::new(2.0, 0.0)).unwrap();
            assert_relative_eq!(z2.re, area, epsilon = 1e-12);
            let mm = compute_minimal_model(&ConvexDomain::Polygon(polygon)).unwrap();
            assert_eq!(mm.type_tag, p.type_tag(), "{p:?}");
            assert_eq!(mm.k_exact, Some(q_int(p.k())));
        }
    }

    #[test]
    fn constraint_violation_is_named() {
        let p = SegmentParams::Degenerate { k1: 5, k2: 0 };
        match segment_model_zeta(&p, 1.0, 1.0, Complex64::new(2.0, 0.0)) {
            Err(Error::ConstraintViolated(s)) => assert!(s.contains("k1")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn frame_agrees_near_locus() {
        let l = domain_l();
        let mm = compute_minimal_model(&l).unwrap();
        assert!(spot_check_near_locus(&l, &mm, 0.1).unwrap() < 1e-12);
    }
}

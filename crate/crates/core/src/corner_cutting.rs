//! The Stern–Brocot cutting engine: support triangles of the arcs, the partial
//! cuts `Ω^t`, tropical wave fronts `Ω_t`, the counting function `N^cut(t)`,
//! perimeter/area profiles and the caustic.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::domain_model::{ArcChart, ConvexDomain, PolygonOracle, RationalPolygon, SupportOracle};
use crate::error::{Error, Result};
use crate::halfplane::{dot, line_intersection, Facet, FacetPolygon};
use crate::lattice_arith::{PrimitiveVector, UnimodularQuadruple};
use crate::minimal_model::{compute_minimal_model, MinimalModel};
use crate::scalar::{Scalar, Q};

/// One unimodular corner cut.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportTriangle {
    pub quad: UnimodularQuadruple,
    /// `γ_{a+c,b+d} − γ_{a,b} − γ_{c,d}`, the lattice size of the cut.
    pub size: f64,
    pub size_exact: Option<Q>,
    pub chart: usize,
    pub depth: u32,
    pub parent: Option<usize>,
    /// Ambient normal of the cutting line and its offset.
    pub normal: PrimitiveVector,
    pub offset: f64,
    pub offset_exact: Option<Q>,
    /// The two supporting lines whose corner is cut.
    pub u: PrimitiveVector,
    pub hu: f64,
    pub v: PrimitiveVector,
    pub hv: f64,
}

impl SupportTriangle {
    /// Point where the cut corner's vertex trajectory reaches the cutting line: the caustic vertex.
    pub fn event(&self) -> [f64; 2] {
        line_intersection(self.u, &(self.hu + self.size), self.v, &(self.hv + self.size))
    }

    pub fn area(&self) -> f64 {
        self.size * self.size / 2.0
    }
}

#[derive(Debug, Clone)]
pub struct CutTree {
    /// Nodes in depth-first order per chart.
    pub nodes: Vec<SupportTriangle>,
    /// Sizes of the first unmaterialized nodes (`0 < size < threshold`).
    pub frontier: Vec<f64>,
    pub threshold: f64,
    /// `K²` of the resolved frame.
    pub k_squared_start: i64,
    /// Resolved frame: facets of `Ω̂` (tightened at cut non-unimodular corners) plus chain directions.
    pub frame: FacetPolygon<f64>,
    pub frame_exact: Option<FacetPolygon<Q>>,
    pub charts: Vec<ArcChart>,
    pub model: MinimalModel,
    /// Sizes sorted in decreasing order.
    sorted: Vec<f64>,
}

/// Depth-first descent in one chart. Returns nodes and the frontier sizes.
fn descend(chart: &ArcChart, chart_id: usize, eps: f64, exact: bool) -> Result<(Vec<SupportTriangle>, Vec<f64>)> {
    struct Job {
        quad: UnimodularQuadruple,
        depth: u32,
        parent: Option<usize>,
        gu: f64,
        gv: f64,
        gu_x: Option<Q>,
        gv_x: Option<Q>,
        parent_size: f64,
    }
    let oracle = &chart.oracle;
    let (g10, g01) = if exact {
        (oracle.gamma_exact(1, 0), oracle.gamma_exact(0, 1))
    } else {
        (None, None)
    };
    let mut stack = vec![Job {
        quad: UnimodularQuadruple::root(),
        depth: 0,
        parent: None,
        gu: oracle.gamma(1, 0),
        gv: oracle.gamma(0, 1),
        gu_x: g10,
        gv_x: g01,
        parent_size: f64::INFINITY,
    }];
    let mut nodes = Vec::new();
    let mut frontier = Vec::new();
    while let Some(job) = stack.pop() {
        let qd = job.quad;
        let (size, size_exact) = if exact {
            let s = oracle.defect_exact(&qd).ok_or_else(|| Error::Oracle { chart: chart_id, reason: "no exact defect".into() })?;
            (s.to_f64(), Some(s))
        } else {
            (oracle.defect(&qd), None)
        };
        if !size.is_finite() || size_exact.as_ref().is_some_and(|s| s.is_negative()) || size < -1e-12 {
            return Err(Error::Oracle { chart: chart_id, reason: format!("negative or invalid defect {size} at {qd:?}") });
        }
        if size > job.parent_size * (1.0 + 1e-9) + 1e-15 {
            return Err(Error::Oracle { chart: chart_id, reason: format!("nesting violated at {qd:?}: {size} > {}", job.parent_size) });
        }
        if size <= 0.0 {
            continue;
        }
        if size < eps {
            frontier.push(size);
            continue;
        }
        let (ma, mb) = qd.mediant();
        let normal = chart.ambient(ma, mb);
        let u = chart.ambient(qd.a, qd.b);
        let v = chart.ambient(qd.c, qd.d);
        let gw = job.gu + job.gv + size;
        let gw_x = match (&job.gu_x, &job.gv_x, &size_exact) {
            (Some(a), Some(b), Some(c)) => Some(a.clone() + b.clone() + c.clone()),
            _ => None,
        };
        let offset_exact = match (&gw_x, &chart.corner_exact) {
            (Some(g), Some(c)) => Some(dot(normal, c) + g.clone()),
            _ => None,
        };
        let id = nodes.len();
        nodes.push(SupportTriangle {
            quad: qd,
            size,
            size_exact,
            chart: chart_id,
            depth: job.depth,
            parent: job.parent,
            normal,
            offset: normal.dot_f(chart.corner) + gw,
            offset_exact,
            u,
            hu: u.dot_f(chart.corner) + job.gu,
            v,
            hv: v.dot_f(chart.corner) + job.gv,
        });
        let [left, right] = qd.children();
        // push right first so the left subtree is visited first
        stack.push(Job { quad: right, depth: job.depth + 1, parent: Some(id), gu: gw, gv: job.gv, gu_x: gw_x.clone(), gv_x: job.gv_x.clone(), parent_size: size });
        stack.push(Job { quad: left, depth: job.depth + 1, parent: Some(id), gu: job.gu, gv: gw, gu_x: job.gu_x, gv_x: gw_x, parent_size: size });
    }
    Ok((nodes, frontier))
}

/// Charts of a polygon: one exact polygonal chart per corner of the resolved frame.
fn polygon_frame(p: &RationalPolygon, mm: &MinimalModel) -> Result<(FacetPolygon<Q>, Vec<ArcChart>)> {
    let hat = mm.hat_exact.as_ref().expect("polygon models are exact");
    // tighten chain directions at non-unimodular corners of Ω̂ to the support of Ω
    let mut facets: Vec<Facet<Q>> = hat.facets().to_vec();
    for f in hat.with_corner_chains().facets() {
        if !hat.facets().iter().any(|g| g.normal == f.normal) {
            facets.push(Facet::new(f.normal, p.support(f.normal)));
        }
    }
    let frame = FacetPolygon::from_halfplanes(facets, false)?.with_corner_chains();
    let n = frame.len();
    let mut charts = Vec::with_capacity(n);
    for i in 0..n {
        let (u, v) = (frame.facets()[i].normal, frame.facets()[(i + 1) % n].normal);
        let c = frame.vertex(i);
        let points = p
            .vertices()
            .iter()
            .map(|x| {
                let d = [x[0].clone() - c[0].clone(), x[1].clone() - c[1].clone()];
                [dot(u, &d), dot(v, &d)]
            })
            .collect();
        let oracle = PolygonOracle { points };
        let (g10, g01) = (oracle.gamma_exact(1, 0).expect("exact"), oracle.gamma_exact(0, 1).expect("exact"));
        if !g10.is_zero() || !g01.is_zero() {
            return Err(Error::InconsistentFrame(format!("frame corner {i} is not supported by the polygon")));
        }
        let corner = [c[0].to_f64(), c[1].to_f64()];
        charts.push(ArcChart::new(corner, u, v, Arc::new(oracle))?.with_exact_corner(c));
    }
    Ok((frame, charts))
}

/// Materializes every support triangle of size `≥ ε`. For polygons `ε = 0` gives the whole (finite) tree.
pub fn enumerate_cuts(domain: &ConvexDomain, eps: f64) -> Result<CutTree> {
    let mm = compute_minimal_model(domain)?;
    enumerate_cuts_with(domain, mm, eps, 1)
}

pub fn enumerate_cuts_with(domain: &ConvexDomain, mm: MinimalModel, eps: f64, threads: usize) -> Result<CutTree> {
    if !(eps >= 0.0) {
        return Err(Error::InvalidArgument("ε must be nonnegative".into()));
    }
    let (frame, frame_exact, charts, exact) = match domain {
        ConvexDomain::Polygon(p) => {
            let (fx, charts) = polygon_frame(p, &mm)?;
            (fx.map_offsets(|x| x.to_f64()), Some(fx), charts, true)
        }
        ConvexDomain::Smooth(s) => {
            if eps == 0.0 && s.charts.iter().any(|c| c.oracle.is_smooth()) {
                return Err(Error::InvalidArgument("ε = 0 needs a finite tree".into()));
            }
            (s.hat.with_corner_chains(), None, s.charts.clone(), false)
        }
    };
    let k_squared_start = frame.k_squared_smooth().ok_or_else(|| Error::NotUnimodular("resolved frame".into()))?;
    let threads = threads.max(1).min(charts.len().max(1));
    let results: Vec<Result<(Vec<SupportTriangle>, Vec<f64>)>> = if threads == 1 {
        charts.iter().enumerate().map(|(i, c)| descend(c, i, eps, exact)).collect()
    } else {
        let mut out: Vec<Option<Result<(Vec<SupportTriangle>, Vec<f64>)>>> = (0..charts.len()).map(|_| None).collect();
        std::thread::scope(|sc| {
            let chunks: Vec<Vec<usize>> = (0..threads).map(|t| (t..charts.len()).step_by(threads).collect()).collect();
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|ids| {
                    let charts = &charts;
                    sc.spawn(move || ids.into_iter().map(|i| (i, descend(&charts[i], i, eps, exact))).collect::<Vec<_>>())
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("worker panicked") {
                    out[i] = Some(r);
                }
            }
        });
        out.into_iter().map(|r| r.expect("all charts processed")).collect()
    };
    let mut nodes = Vec::new();
    let mut frontier = Vec::new();
    for r in results {
        let (mut ns, fr) = r?;
        let base = nodes.len();
        for n in &mut ns {
            n.parent = n.parent.map(|p| p + base);
        }
        nodes.extend(ns);
        frontier.extend(fr);
    }
    let mut sorted: Vec<f64> = nodes.iter().map(|n| n.size).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(CutTree { nodes, frontier, threshold: eps, k_squared_start, frame, frame_exact, charts, model: mm, sorted })
}

impl CutTree {
    fn check_level(&self, t: f64) -> Result<()> {
        if t < self.threshold {
            return Err(Error::TreeTooShallow { requested: t, threshold: self.threshold });
        }
        Ok(())
    }

    /// `N^cut(t) = #{Δ : size(Δ) ≥ t}`.
    pub fn cut_count(&self, t: f64) -> Result<usize> {
        self.check_level(t)?;
        Ok(self.sorted.partition_point(|&s| s >= t))
    }

    /// Sizes in decreasing order.
    pub fn sizes(&self) -> &[f64] {
        &self.sorted
    }

    /// `K²_t = K²_start − N^cut(t)`, minus the slope of the perimeter profile.
    pub fn k_squared_at(&self, t: f64) -> Result<i64> {
        Ok(self.k_squared_start - self.cut_count(t)? as i64)
    }

    /// `Σ_{size ≥ t} size²/2`.
    pub fn removed_area(&self, t: f64) -> Result<f64> {
        self.check_level(t)?;
        Ok(self.sorted.iter().take_while(|&&s| s >= t).map(|s| s * s / 2.0).sum())
    }

    pub fn removed_area_exact(&self, t: &Q) -> Option<Q> {
        self.nodes.iter().filter(|n| n.size_exact.as_ref().is_some_and(|s| s >= t)).map(|n| n.size_exact.clone().map(|s| s.clone() * s / Q::from_integer(2.into()))).sum()
    }

    fn facets_at(&self, t: f64) -> Vec<Facet<f64>> {
        let mut f = self.frame.facets().to_vec();
        f.extend(self.nodes.iter().filter(|n| n.size >= t).map(|n| Facet::new(n.normal, n.offset)));
        f
    }

    /// `Ω^t`: the frame with every cut of size `≥ t` applied.
    pub fn partial_cut_polygon(&self, t: f64) -> Result<FacetPolygon<f64>> {
        self.check_level(t)?;
        FacetPolygon::from_halfplanes(self.facets_at(t), false)
    }

    pub fn partial_cut_polygon_exact(&self, t: &Q) -> Result<FacetPolygon<Q>> {
        let frame = self.frame_exact.as_ref().ok_or_else(|| Error::InvalidArgument("tree is not exact".into()))?;
        self.check_level(t.to_f64())?;
        let mut f = frame.facets().to_vec();
        for n in &self.nodes {
            if let (Some(s), Some(h)) = (&n.size_exact, &n.offset_exact) {
                if s >= t {
                    f.push(Facet::new(n.normal, h.clone()));
                }
            }
        }
        FacetPolygon::from_halfplanes(f, false)
    }

    /// `Ω_t = (Ω^t)_t`.
    pub fn wave_front(&self, t: f64) -> Result<WaveFrontPolygon> {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument("t must be positive".into()));
        }
        self.check_level(t)?;
        let m = self.model.m;
        if t >= m * (1.0 - 1e-12) {
            if t > m * (1.0 + 1e-12) {
                return Err(Error::OutOfRange(format!("t = {t} exceeds m = {m}")));
            }
            return Ok(WaveFrontPolygon {
                t,
                vertices: self.model.locus.clone(),
                active_normals: vec![],
                perimeter: 2.0 * self.model.l,
                area: 0.0,
                degenerate: true,
            });
        }
        let f: Vec<Facet<f64>> = self.facets_at(t).into_iter().map(|f| Facet::new(f.normal, f.offset + t)).collect();
        let poly = FacetPolygon::from_halfplanes(f, false)?;
        Ok(WaveFrontPolygon {
            t,
            vertices: poly.vertices(),
            active_normals: poly.facets().iter().map(|f| f.normal).collect(),
            perimeter: poly.lattice_perimeter(),
            area: poly.area(),
            degenerate: false,
        })
    }

    pub fn profiles(&self, grid: &[f64]) -> Result<Vec<Profile>> {
        grid.iter()
            .map(|&t| {
                let w = self.wave_front(t)?;
                Ok(Profile { t, perimeter: w.perimeter, area: w.area })
            })
            .collect()
    }

    /// `Area(Ω) ≈ Area(frame) − Σ size²/2` over the materialized cuts.
    pub fn domain_area_estimate(&self) -> f64 {
        self.frame.area() - self.sorted.iter().map(|s| s * s / 2.0).sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveFrontPolygon {
    pub t: f64,
    pub vertices: Vec<[f64; 2]>,
    pub active_normals: Vec<PrimitiveVector>,
    pub perimeter: f64,
    pub area: f64,
    /// `t = m`: the front has collapsed to `M_Ω`.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub t: f64,
    pub perimeter: f64,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausticEdge {
    pub from: [f64; 2],
    pub to: [f64; 2],
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Caustic {
    pub edges: Vec<CausticEdge>,
}

impl Caustic {
    pub fn total_weighted_length(&self) -> f64 {
        self.edges.iter().map(|e| e.weight as f64 * (e.to[0] - e.from[0]).hypot(e.to[1] - e.from[1])).sum()
    }
}

/// The corner locus of `ρ_Ω`, traced by wave-front vertices, down to cuts of size `ε`.
pub fn caustic(domain: &ConvexDomain, eps: f64) -> Result<Caustic> {
    match domain {
        ConvexDomain::Polygon(p) => polygon_caustic(p),
        ConvexDomain::Smooth(_) => {
            let tree = enumerate_cuts(domain, eps)?;
            smooth_caustic(&tree)
        }
    }
}

fn polygon_caustic(p: &RationalPolygon) -> Result<Caustic> {
    if let Some(&i) = p.non_an_corners().first() {
        return Err(Error::NonAnCorner(i));
    }
    let ev = p.facet_polygon().evolve()?;
    let pt = |x: &[Q; 2]| [x[0].to_f64(), x[1].to_f64()];
    let mut edges: Vec<CausticEdge> = ev
        .trajectories
        .iter()
        .filter(|tr| tr.t1 > tr.t0 && tr.from != tr.to)
        .map(|tr| CausticEdge { from: pt(&tr.from), to: pt(&tr.to), weight: tr.weight })
        .collect();
    if ev.locus.len() == 2 {
        edges.push(CausticEdge { from: pt(&ev.locus[0]), to: pt(&ev.locus[1]), weight: 2 });
    }
    Ok(Caustic { edges })
}

fn smooth_caustic(tree: &CutTree) -> Result<Caustic> {
    let mut edges = Vec::new();
    for n in &tree.nodes {
        if let Some(p) = n.parent {
            edges.push(CausticEdge { from: n.event(), to: tree.nodes[p].event(), weight: 1 });
        }
    }
    let root_size = |u: PrimitiveVector, v: PrimitiveVector| tree.nodes.iter().find(|n| n.parent.is_none() && n.u == u && n.v == v).map(|n| n.size);
    let ev = tree.model.hat.with_corner_chains().evolve()?;
    for tr in &ev.trajectories {
        if tr.t1 <= tr.t0 {
            continue;
        }
        let mut from = tr.from;
        if tr.t0 == 0.0 {
            if let Some(s) = root_size(tr.normals.0, tr.normals.1) {
                if s >= tr.t1 {
                    continue;
                }
                let f = s / tr.t1;
                from = [tr.from[0] + f * (tr.to[0] - tr.from[0]), tr.from[1] + f * (tr.to[1] - tr.from[1])];
            }
        }
        if from != tr.to {
            edges.push(CausticEdge { from, to: tr.to, weight: tr.weight });
        }
    }
    if tree.model.locus.len() == 2 {
        edges.push(CausticEdge { from: tree.model.locus[0], to: tree.model.locus[1], weight: 2 });
    }
    Ok(Caustic { edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain_model::{domain_l, ParabolaOracle};
    use crate::scalar::{q, q_int};
    use approx::assert_relative_eq;

    fn parabola_chart() -> ArcChart {
        ArcChart::new([0.0, 0.0], PrimitiveVector::new(1, 0).unwrap(), PrimitiveVector::new(0, 1).unwrap(), Arc::new(ParabolaOracle::standard())).unwrap()
    }

    #[test]
    fn parabolic_chart_counts() {
        let (n, _) = descend(&parabola_chart(), 0, 0.3, false).unwrap();
        assert_eq!(n.len(), 1);
        assert_relative_eq!(n[0].size, 0.5);
        let (n, fr) = descend(&parabola_chart(), 0, 0.1, false).unwrap();
        let mut s: Vec<f64> = n.iter().map(|x| x.size).collect();
        s.sort_by(f64::total_cmp);
        assert_eq!(s.len(), 3);
        assert_relative_eq!(s[0], 1.0 / 6.0);
        assert_relative_eq!(s[2], 0.5);
        // frontier: the four grandchildren of sizes 1/12, 1/30, 1/30, 1/12
        assert_eq!(fr.len(), 4);
    }

    #[test]
    fn l_cut_counts_and_octagon() {
        let tree = enumerate_cuts(&domain_l(), 0.05).unwrap();
        assert_eq!(tree.cut_count(0.3).unwrap(), 4);
        assert_eq!(tree.cut_count(0.1).unwrap(), 12);
        assert_eq!(tree.cut_count(1.5).unwrap(), 0);
        assert!(matches!(tree.cut_count(0.01), Err(Error::TreeTooShallow { .. })));
        assert_eq!(tree.partial_cut_polygon(0.3).unwrap().len(), 8);
        assert_eq!(tree.partial_cut_polygon(2.0).unwrap().len(), 4);
        assert_eq!(tree.k_squared_start, 8);
    }

    #[test]
    fn square_and_rectangle_fronts() {
        let sq = ConvexDomain::Polygon(RationalPolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap());
        let tree = enumerate_cuts(&sq, 0.0).unwrap();
        let w = tree.wave_front(0.5).unwrap();
        assert_relative_eq!(w.area, 1.0, epsilon = 1e-12);
        assert_relative_eq!(w.perimeter, 4.0, epsilon = 1e-12);
        let r = ConvexDomain::Polygon(RationalPolygon::from_ints(&[(0, 0), (3, 0), (3, 2), (0, 2)]).unwrap());
        let tree = enumerate_cuts(&r, 0.0).unwrap();
        let w = tree.wave_front(1.0).unwrap();
        assert!(w.degenerate);
        assert_eq!(w.vertices, vec![[1.0, 1.0], [2.0, 1.0]]);
        for p in tree.profiles(&[0.1, 0.25, 0.5, 0.9]).unwrap() {
            assert_relative_eq!(p.area, (3.0 - 2.0 * p.t) * (2.0 - 2.0 * p.t), epsilon = 1e-12);
            assert_relative_eq!(p.perimeter, 10.0 - 8.0 * p.t, epsilon = 1e-12);
        }
    }

    /// Perimeter-5 reflexive pentagon scaled by 6 with its unimodular corner cut three times.
    pub(crate) fn cut_pentagon() -> RationalPolygon {
        let pv = |x, y| PrimitiveVector::new(x, y).unwrap();
        let f = vec![
            Facet::new(pv(1, 1), q_int(-6)),
            Facet::new(pv(-1, 1), q_int(-6)),
            Facet::new(pv(-1, 0), q_int(-6)),
            Facet::new(pv(0, -1), q_int(-6)),
            Facet::new(pv(1, -1), q_int(-6)),
            Facet::new(pv(-1, -1), q_int(-10)),
            Facet::new(pv(-2, -1), q(-31, 2)),
            Facet::new(pv(-1, -2), q(-31, 2)),
        ];
        RationalPolygon::new(FacetPolygon::from_halfplanes(f, false).unwrap().vertices()).unwrap()
    }

    #[test]
    fn pentagon_tree_telescopes_exactly() {
        let p = cut_pentagon();
        let d = ConvexDomain::Polygon(p.clone());
        let tree = enumerate_cuts(&d, 0.0).unwrap();
        let frame = tree.frame_exact.as_ref().unwrap();
        assert_eq!(tree.model.polygon.as_ref().unwrap().vertices().len(), 5);
        let removed = tree.removed_area_exact(&Q::zero()).unwrap();
        assert_eq!(frame.area() - removed, p.area());
        assert_eq!(tree.nodes.len(), 3);
        // lattice perimeter drops by each size
        let sizes: Q = tree.nodes.iter().map(|n| n.size_exact.clone().unwrap()).sum();
        assert_eq!(frame.lattice_perimeter() - sizes, p.lattice_perimeter());
        assert_eq!(tree.partial_cut_polygon_exact(&Q::zero()).unwrap().area(), p.area());
    }

    #[test]
    fn polygon_caustics() {
        let sq = ConvexDomain::Polygon(RationalPolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap());
        let c = caustic(&sq, 0.0).unwrap();
        assert_eq!(c.edges.len(), 4);
        assert!(c.edges.iter().all(|e| e.weight == 1 && e.to == [1.0, 1.0]));
        let r = ConvexDomain::Polygon(RationalPolygon::from_ints(&[(0, 0), (3, 0), (3, 2), (0, 2)]).unwrap());
        let c = caustic(&r, 0.0).unwrap();
        assert_eq!(c.edges.len(), 5);
        assert_eq!(c.edges.iter().filter(|e| e.weight == 2).count(), 1);
        // corner (0,0) is A_2; corner (3,−1) has normals (1,3),(−1,0) with det 3 not dividing (−2,−3)
        let bad = ConvexDomain::Polygon(RationalPolygon::from_ints(&[(0, 0), (3, -1), (3, 3), (0, 3)]).unwrap());
        assert!(matches!(caustic(&bad, 0.0), Err(Error::NonAnCorner(_))));
    }

    #[test]
    fn l_caustic_is_symmetric_tree() {
        let c = caustic(&domain_l(), 0.05).unwrap();
        let tree = enumerate_cuts(&domain_l(), 0.05).unwrap();
        // one edge per non-root node plus four truncated corner trajectories
        assert_eq!(c.edges.len(), tree.nodes.len() - 4 + 4);
        let key = |p: [f64; 2]| ((p[0] * 1e9).round() as i64, (p[1] * 1e9).round() as i64);
        let mut a: Vec<_> = c.edges.iter().map(|e| (key(e.from), key(e.to))).collect();
        let mut b: Vec<_> = c.edges.iter().map(|e| (key([-e.from[1], e.from[0]]), key([-e.to[1], e.to[0]]))).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn l_wave_front_matches_grid_quadrature() {
        let l = domain_l();
        let tree = enumerate_cuts(&l, 1e-4).unwrap();
        // at t = 1/2 the root cuts just touch the square [−1/2, 1/2]²
        assert_relative_eq!(tree.wave_front(0.5).unwrap().area, 1.0, epsilon = 1e-12);
        let w = tree.wave_front(0.4).unwrap();
        // [−0.6, 0.6]² minus four corner triangles with legs 0.1
        assert_relative_eq!(w.area, 1.42, epsilon = 1e-12);
        let n = 600;
        let h = 1.2 / n as f64;
        let mut area = 0.0;
        for i in 0..n {
            for j in 0..n {
                let x = [-0.6 + (i as f64 + 0.5) * h, -0.6 + (j as f64 + 0.5) * h];
                if l.tropical_distance(x).unwrap() >= 0.4 {
                    area += h * h;
                }
            }
        }
        assert!((w.area - area).abs() < 5e-3, "{} vs {area}", w.area);
    }
}

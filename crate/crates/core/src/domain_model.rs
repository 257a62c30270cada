//! Compact convex planar domains and the primitive support-function calculus:
//! `h_Ω`, `ρ_Ω`, lattice lengths and lattice perimeters.
//!
//! A domain is either an exact rational polygon or a smooth domain given by a
//! polygonal frame `Ω̂` plus arc charts. Each chart sits at a unimodular corner
//! `V` of the frame with adjacent normals `u, v` (`det(u, v) = 1`); a frame
//! normal `(a, b)` corresponds to the ambient normal `a·u + b·v`, and the chart
//! oracle returns `γ(a, b) = h_Ω(a·u + b·v) − ⟨a·u + b·v, V⟩`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfplane::{cone_chain, dot, Facet, FacetPolygon};
use crate::lattice_arith::{PrimitiveVector, UnimodularQuadruple};
use crate::numeric::{solve_increasing, zeta_real};
use crate::scalar::{parse_rational, q, q_int, Scalar, Q};

/// A strictly convex polygon with exact rational vertices in counterclockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPolygon {
    vertices: Vec<[Q; 2]>,
}

fn cross(o: &[Q; 2], a: &[Q; 2], b: &[Q; 2]) -> Q {
    (a[0].clone() - o[0].clone()) * (b[1].clone() - o[1].clone()) - (a[1].clone() - o[1].clone()) * (b[0].clone() - o[0].clone())
}

/// Primitive integer vector parallel to a nonzero rational vector.
pub fn primitive_direction(dx: &Q, dy: &Q) -> Result<PrimitiveVector> {
    let l = dx.denom().lcm(dy.denom());
    let x = dx.numer() * (&l / dx.denom());
    let y = dy.numer() * (&l / dy.denom());
    let g = x.gcd(&y);
    if g.is_zero() {
        return Err(Error::InvalidArgument("zero direction".into()));
    }
    let (x, y) = (x / &g, y / &g);
    match (num_traits::ToPrimitive::to_i64(&x), num_traits::ToPrimitive::to_i64(&y)) {
        (Some(x), Some(y)) => Ok(PrimitiveVector::raw(x, y)),
        _ => Err(Error::OutOfRange("direction exceeds i64".into())),
    }
}

impl RationalPolygon {
    /// Accepts either orientation; collinear and repeated vertices are dropped,
    /// a nonconvex loop is rejected.
    pub fn new(mut vertices: Vec<[Q; 2]>) -> Result<Self> {
        vertices.dedup();
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three vertices".into()));
        }
        if crate::halfplane::shoelace(&vertices) < Q::zero() {
            vertices.reverse();
        }
        let mut changed = true;
        while changed && vertices.len() >= 3 {
            changed = false;
            let n = vertices.len();
            for i in 0..n {
                let c = cross(&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n]);
                if c.is_zero() {
                    vertices.remove(i);
                    changed = true;
                    break;
                }
                if c.is_negative() {
                    return Err(Error::InvalidPolygon("not convex".into()));
                }
            }
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon("empty interior".into()));
        }
        Ok(Self { vertices })
    }

    pub fn from_ints(v: &[(i64, i64)]) -> Result<Self> {
        Self::new(v.iter().map(|&(x, y)| [q_int(x), q_int(y)]).collect())
    }

    pub fn rectangle(p: Q, qq: Q) -> Result<Self> {
        let z = Q::zero();
        Self::new(vec![[z.clone(), z.clone()], [p.clone(), z.clone()], [p, qq.clone()], [z, qq]])
    }

    pub fn vertices(&self) -> &[[Q; 2]] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|v| [v[0].to_f64(), v[1].to_f64()]).collect()
    }

    /// Edge `i` runs from vertex `i` to vertex `i+1`; its facet has the inward primitive normal.
    pub fn edge_facets(&self) -> Vec<Facet<Q>> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (p, r) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
                let d = [r[0].clone() - p[0].clone(), r[1].clone() - p[1].clone()];
                let dir = primitive_direction(&d[0], &d[1]).expect("distinct vertices");
                let normal = PrimitiveVector::raw(-dir.y, dir.x);
                Facet::new(normal, dot(normal, p))
            })
            .collect()
    }

    pub fn facet_polygon(&self) -> FacetPolygon<Q> {
        FacetPolygon::from_halfplanes(self.edge_facets(), false).expect("valid polygon")
    }

    /// `N*`: edge normals plus the Hirzebruch–Jung chains at every corner.
    pub fn active_facets(&self) -> Vec<Facet<Q>> {
        self.facet_polygon().with_corner_chains().facets().to_vec()
    }

    pub fn area(&self) -> Q {
        crate::halfplane::shoelace(&self.vertices)
    }

    pub fn lattice_perimeter(&self) -> Q {
        let n = self.vertices.len();
        (0..n)
            .map(|i| LatticeSegment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()).lattice_length())
            .fold(Q::zero(), |a, b| a + b)
    }

    /// `h_Ω(u) = min_x ⟨u, x⟩`.
    pub fn support(&self, u: PrimitiveVector) -> Q {
        self.vertices.iter().map(|v| dot(u, v)).min().expect("nonempty")
    }

    pub fn contains(&self, x: &[Q; 2]) -> bool {
        self.edge_facets().iter().all(|f| !f.eval(x).is_negative())
    }

    /// Exact tropical distance.
    pub fn tropical_distance(&self, x: &[Q; 2]) -> Result<Q> {
        if !self.contains(x) {
            return Err(Error::ExteriorPoint);
        }
        Ok(self.active_facets().iter().map(|f| f.eval(x)).min().expect("nonempty"))
    }

    /// `x ↦ A x + shift` for an integer matrix `A` (rows).
    pub fn transform(&self, a: [[i64; 2]; 2], shift: [Q; 2]) -> Result<Self> {
        let v = self
            .vertices
            .iter()
            .map(|p| {
                [
                    q_int(a[0][0]) * p[0].clone() + q_int(a[0][1]) * p[1].clone() + shift[0].clone(),
                    q_int(a[1][0]) * p[0].clone() + q_int(a[1][1]) * p[1].clone() + shift[1].clone(),
                ]
            })
            .collect();
        Self::new(v)
    }

    pub fn scale(&self, r: &Q) -> Result<Self> {
        Self::new(self.vertices.iter().map(|p| [p[0].clone() * r.clone(), p[1].clone() * r.clone()]).collect())
    }

    /// Vertex indices whose corner is not an `A_n` singularity.
    pub fn non_an_corners(&self) -> Vec<usize> {
        let f = self.edge_facets();
        let n = f.len();
        (0..n).filter(|&i| !crate::halfplane::is_an_corner(f[(i + n - 1) % n].normal, f[i].normal)).collect()
    }
}

/// A segment with rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSegment {
    pub a: [Q; 2],
    pub b: [Q; 2],
}

impl LatticeSegment {
    pub fn new(a: [Q; 2], b: [Q; 2]) -> Self {
        Self { a, b }
    }

    /// Euclidean length over the length of the parallel primitive vector.
    pub fn lattice_length(&self) -> Q {
        let dx = self.b[0].clone() - self.a[0].clone();
        let dy = self.b[1].clone() - self.a[1].clone();
        if dx.is_zero() && dy.is_zero() {
            return Q::zero();
        }
        let p = primitive_direction(&dx, &dy).expect("nonzero");
        if p.x != 0 {
            (dx / q_int(p.x)).abs()
        } else {
            (dy / q_int(p.y)).abs()
        }
    }
}

/// Lattice length of a floating-point segment whose direction must be close to a
/// rational slope with small denominator.
pub fn lattice_length_f64(a: [f64; 2], b: [f64; 2]) -> Result<f64> {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let norm = dx.hypot(dy);
    if norm == 0.0 {
        return Ok(0.0);
    }
    // search primitive directions by continued fractions of the slope
    let (ux, uy) = (dx / norm, dy / norm);
    let swap = ux.abs() < uy.abs();
    let ratio = if swap { ux / uy } else { uy / ux };
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut x = ratio.abs();
    for _ in 0..40 {
        let a_i = x.floor() as i64;
        let (h2, k2) = (a_i * h1 + h0, a_i * k1 + k0);
        if k2 > 10_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - ratio.abs()).abs() < 1e-13 * (1.0 + approx) {
            let prim = (h1 as f64).hypot(k1 as f64);
            return Ok(norm / prim);
        }
        let frac = x - a_i as f64;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    Err(Error::IrrationalDirection)
}

/// Graph form `Y = g(X)`, `X ∈ [0, A]`, of an arc in its chart frame; `g` is convex and decreasing to `g(A) = 0`.
#[derive(Clone)]
pub struct GraphForm {
    pub a: f64,
    pub g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub g1: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub g2: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub g3: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for GraphForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphForm {{ a: {} }}", self.a)
    }
}

impl GraphForm {
    /// The arc `√X + √Y = 1`.
    pub fn parabola() -> Self {
        Self {
            a: 1.0,
            g: Arc::new(|x: f64| (1.0 - x.sqrt()).powi(2)),
            g1: Arc::new(|x: f64| 1.0 - 1.0 / x.sqrt()),
            g2: Arc::new(|x: f64| 0.5 * x.powf(-1.5)),
            g3: Arc::new(|x: f64| -0.75 * x.powf(-2.5)),
        }
    }

    /// `min_X a·X + b·g(X)` by bisection on `g'` plus a Newton polish.
    pub fn support(&self, a: f64, b: f64) -> f64 {
        if b == 0.0 {
            return 0.0;
        }
        if a == 0.0 {
            return 0.0;
        }
        let target = -a / b;
        let lo = 1e-300_f64.max(0.0);
        let g1 = self.g1.clone();
        let g2 = self.g2.clone();
        let x = if (self.g1)(self.a) <= target {
            self.a
        } else {
            solve_increasing(|x| g1(x), Some(&|x| g2(x)), lo, self.a, target)
        };
        a * x + b * (self.g)(x)
    }
}

/// Support values of one arc in its chart frame.
pub trait SupportOracle: Send + Sync + fmt::Debug {
    /// `γ(a, b)` for nonnegative coprime `(a, b)`.
    fn gamma(&self, a: u64, b: u64) -> f64;

    fn gamma_exact(&self, _a: u64, _b: u64) -> Option<Q> {
        None
    }

    /// Support defect `γ(a+c, b+d) − γ(a, b) − γ(c, d) ≥ 0` of a unimodular pair.
    fn defect(&self, qd: &UnimodularQuadruple) -> f64 {
        let (ma, mb) = qd.mediant();
        (self.gamma(ma, mb) - self.gamma(qd.a, qd.b) - self.gamma(qd.c, qd.d)).max(0.0)
    }

    fn defect_exact(&self, qd: &UnimodularQuadruple) -> Option<Q> {
        let (ma, mb) = qd.mediant();
        Some(self.gamma_exact(ma, mb)? - self.gamma_exact(qd.a, qd.b)? - self.gamma_exact(qd.c, qd.d)?)
    }

    fn graph(&self) -> Option<&GraphForm> {
        None
    }

    fn curvature_bounds(&self) -> Option<(f64, f64)> {
        None
    }

    /// True when the arc has nonvanishing curvature (a genuine `Γ`-arc rather than a broken line).
    fn is_smooth(&self) -> bool {
        true
    }
}

/// `γ(a,b) = λ·γ_par(M(a,b)) + ⟨c, (a,b)⟩` with `γ_par(p,q) = pq/(p+q)` and `M ∈ SL(2, Z≥0)`.
#[derive(Debug, Clone)]
pub struct ParabolaOracle {
    pub matrix: [[u64; 2]; 2],
    pub scale: Q,
    pub linear: [Q; 2],
    graph: Option<GraphForm>,
}

impl ParabolaOracle {
    pub fn standard() -> Self {
        Self { matrix: [[1, 0], [0, 1]], scale: q_int(1), linear: [Q::zero(), Q::zero()], graph: Some(GraphForm::parabola()) }
    }

    pub fn new(matrix: [[u64; 2]; 2], scale: Q, linear: [Q; 2]) -> Result<Self> {
        let det = matrix[0][0] as i128 * matrix[1][1] as i128 - matrix[0][1] as i128 * matrix[1][0] as i128;
        if det != 1 {
            return Err(Error::NotUnimodular("parabola chart matrix".into()));
        }
        if !scale.is_positive() {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        Ok(Self { matrix, scale, linear, graph: None })
    }

    fn map(&self, a: u64, b: u64) -> (u64, u64) {
        (self.matrix[0][0] * a + self.matrix[0][1] * b, self.matrix[1][0] * a + self.matrix[1][1] * b)
    }
}

impl SupportOracle for ParabolaOracle {
    fn gamma(&self, a: u64, b: u64) -> f64 {
        self.gamma_exact(a, b).expect("exact").to_f64()
    }

    fn gamma_exact(&self, a: u64, b: u64) -> Option<Q> {
        let (p, r) = self.map(a, b);
        let par = if p == 0 && r == 0 { Q::zero() } else { q((p * r) as i64, (p + r) as i64) };
        Some(self.scale.clone() * par + self.linear[0].clone() * q_int(a as i64) + self.linear[1].clone() * q_int(b as i64))
    }

    fn defect(&self, qd: &UnimodularQuadruple) -> f64 {
        let (p1, p2) = self.map(qd.a, qd.b);
        let (q1, q2) = self.map(qd.c, qd.d);
        let (x, y) = ((p1 + p2) as f64, (q1 + q2) as f64);
        self.scale.to_f64() / (x * y * (x + y))
    }

    fn defect_exact(&self, qd: &UnimodularQuadruple) -> Option<Q> {
        let (p1, p2) = self.map(qd.a, qd.b);
        let (q1, q2) = self.map(qd.c, qd.d);
        let (x, y) = ((p1 + p2) as i64, (q1 + q2) as i64);
        Some(self.scale.clone() * Q::new(BigInt::one(), BigInt::from(x) * BigInt::from(y) * BigInt::from(x + y)))
    }

    fn graph(&self) -> Option<&GraphForm> {
        self.graph.as_ref()
    }
}

/// Quarter of a circle of radius `R` inscribed in the frame corner: `γ(a,b) = R(a + b − |(a,b)|)`.
#[derive(Debug, Clone)]
pub struct CircleOracle {
    pub radius: f64,
    graph: GraphForm,
}

impl CircleOracle {
    /// The frame-coordinate graph is `Y = R − √(2RX − X²)` on `[0, R]`.
    pub fn new(radius: f64) -> Self {
        let r = radius;
        let dd = move |x: f64| (2.0 * r * x - x * x).max(0.0);
        let graph = GraphForm {
            a: r,
            g: Arc::new(move |x| r - dd(x).sqrt()),
            g1: Arc::new(move |x| -(r - x) / dd(x).sqrt()),
            g2: Arc::new(move |x| r * r / dd(x).powf(1.5)),
            g3: Arc::new(move |x| -3.0 * r * r * (r - x) / dd(x).powf(2.5)),
        };
        Self { radius, graph }
    }
}

impl SupportOracle for CircleOracle {
    fn gamma(&self, a: u64, b: u64) -> f64 {
        let (a, b) = (a as f64, b as f64);
        self.radius * (a + b - a.hypot(b))
    }

    fn defect(&self, qd: &UnimodularQuadruple) -> f64 {
        let p = (qd.a as f64, qd.b as f64);
        let r = (qd.c as f64, qd.d as f64);
        let (np, nr) = (p.0.hypot(p.1), r.0.hypot(r.1));
        let ns = (p.0 + r.0).hypot(p.1 + r.1);
        let pr = p.0 * r.0 + p.1 * r.1;
        2.0 * self.radius / ((np * nr + pr) * (np + nr + ns))
    }

    fn curvature_bounds(&self) -> Option<(f64, f64)> {
        Some((1.0 / self.radius, 1.0 / self.radius))
    }

    fn graph(&self) -> Option<&GraphForm> {
        Some(&self.graph)
    }
}

/// The broken line `X + nY ≥ S_n`, `S_n = Σ_{k≤n} k^{-1/α}`, for `n = 1..=n_max`.
#[derive(Debug, Clone)]
pub struct DAlphaOracle {
    pub alpha: f64,
    pub n_max: u64,
    partial: Vec<f64>,
}

impl DAlphaOracle {
    pub fn new(alpha: f64, n_max: u64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) || n_max == 0 {
            return Err(Error::InvalidArgument("need 0 < α < 1 and n_max ≥ 1".into()));
        }
        let mut partial = Vec::with_capacity(n_max as usize + 1);
        partial.push(0.0);
        let mut acc = 0.0;
        for k in 1..=n_max {
            acc += (k as f64).powf(-1.0 / alpha);
            partial.push(acc);
        }
        Ok(Self { alpha, n_max, partial })
    }

    pub fn cut_size(&self, n: u64) -> f64 {
        (n as f64).powf(-1.0 / self.alpha)
    }

    /// Vertex `n` lies between the lines of index `n` and `n+1` (index 0 is `X = 0`).
    fn vertex(&self, n: u64) -> (f64, f64) {
        if n >= self.n_max {
            (self.partial[self.n_max as usize], 0.0)
        } else {
            let y = self.cut_size(n + 1);
            (self.partial[n as usize] - n as f64 * y, y)
        }
    }
}

impl SupportOracle for DAlphaOracle {
    fn gamma(&self, a: u64, b: u64) -> f64 {
        if a == 0 {
            return 0.0;
        }
        let k = (b / a).min(self.n_max);
        let (x, y) = self.vertex(k);
        a as f64 * x + b as f64 * y
    }

    fn defect(&self, qd: &UnimodularQuadruple) -> f64 {
        // only the spine pairs ((1, n), (0, 1)) have support points on different vertices
        if qd.a == 1 && qd.c == 0 && qd.d == 1 && qd.b < self.n_max {
            self.cut_size(qd.b + 1)
        } else {
            0.0
        }
    }

    fn is_smooth(&self) -> bool {
        false
    }
}

/// A chart defined by its graph `Y = g(X)`.
#[derive(Debug, Clone)]
pub struct GraphOracle {
    pub graph: GraphForm,
    pub bounds: Option<(f64, f64)>,
}

impl SupportOracle for GraphOracle {
    fn gamma(&self, a: u64, b: u64) -> f64 {
        self.graph.support(a as f64, b as f64)
    }

    fn graph(&self) -> Option<&GraphForm> {
        Some(&self.graph)
    }

    fn curvature_bounds(&self) -> Option<(f64, f64)> {
        self.bounds
    }
}

/// A polygonal arc, exact: `γ(a,b) = min over frame vertices of a·X + b·Y`.
#[derive(Debug, Clone)]
pub struct PolygonOracle {
    pub points: Vec<[Q; 2]>,
}

impl SupportOracle for PolygonOracle {
    fn gamma(&self, a: u64, b: u64) -> f64 {
        self.gamma_exact(a, b).expect("exact").to_f64()
    }

    fn gamma_exact(&self, a: u64, b: u64) -> Option<Q> {
        let (a, b) = (q_int(a as i64), q_int(b as i64));
        self.points.iter().map(|p| a.clone() * p[0].clone() + b.clone() * p[1].clone()).min()
    }

    fn defect(&self, qd: &UnimodularQuadruple) -> f64 {
        self.defect_exact(qd).expect("exact").to_f64()
    }

    fn is_smooth(&self) -> bool {
        false
    }
}

/// An arc chart placed at a unimodular corner of the frame polygon.
#[derive(Debug, Clone)]
pub struct ArcChart {
    pub corner: [f64; 2],
    pub corner_exact: Option<[Q; 2]>,
    pub u: PrimitiveVector,
    pub v: PrimitiveVector,
    pub oracle: Arc<dyn SupportOracle>,
}

impl ArcChart {
    pub fn new(corner: [f64; 2], u: PrimitiveVector, v: PrimitiveVector, oracle: Arc<dyn SupportOracle>) -> Result<Self> {
        if u.det(v) != 1 {
            return Err(Error::NotUnimodular(format!("chart normals ({},{}) ({},{})", u.x, u.y, v.x, v.y)));
        }
        Ok(Self { corner, corner_exact: None, u, v, oracle })
    }

    pub fn with_exact_corner(mut self, c: [Q; 2]) -> Self {
        self.corner_exact = Some(c);
        self
    }

    /// Ambient normal of the frame normal `(a, b)`.
    pub fn ambient(&self, a: u64, b: u64) -> PrimitiveVector {
        let (x, y) = self.u.scaled_sum(a as i64, self.v, b as i64);
        PrimitiveVector::raw(x, y)
    }

    /// Frame coordinates of an ambient direction in the chart cone, if it lies there.
    pub fn frame_of(&self, w: PrimitiveVector) -> Option<(u64, u64)> {
        let a = w.det(self.v);
        let b = self.u.det(w);
        (a >= 0 && b >= 0).then_some((a as u64, b as u64))
    }

    /// Ambient support value `h_Ω(a·u + b·v)`.
    pub fn support(&self, a: u64, b: u64) -> f64 {
        let n = self.ambient(a, b);
        n.dot_f(self.corner) + self.oracle.gamma(a, b)
    }

    pub fn support_exact(&self, a: u64, b: u64) -> Option<Q> {
        let c = self.corner_exact.as_ref()?;
        Some(dot(self.ambient(a, b), c) + self.oracle.gamma_exact(a, b)?)
    }
}

/// A smooth (or generally non-polygonal) domain: frame polygon `Ω̂` plus arc charts.
#[derive(Debug, Clone)]
pub struct SmoothDomain {
    pub name: String,
    pub hat: FacetPolygon<f64>,
    pub hat_exact: Option<FacetPolygon<Q>>,
    pub charts: Vec<ArcChart>,
    pub m: f64,
    pub locus: Vec<[f64; 2]>,
    pub l: f64,
}

impl SmoothDomain {
    /// Validates the chart placement against the frame and runs the frame's wave front to get `m, M, l`.
    pub fn new(name: &str, hat: FacetPolygon<f64>, hat_exact: Option<FacetPolygon<Q>>, charts: Vec<ArcChart>) -> Result<Self> {
        let n = hat.len();
        for (ci, ch) in charts.iter().enumerate() {
            let pos = (0..n).find(|&i| hat.facets()[i].normal == ch.u && hat.facets()[(i + 1) % n].normal == ch.v);
            let Some(i) = pos else {
                return Err(Error::InconsistentFrame(format!("chart {ci}: normals are not adjacent facets of the frame")));
            };
            let vtx = hat.vertex(i);
            if (vtx[0] - ch.corner[0]).abs() + (vtx[1] - ch.corner[1]).abs() > 1e-9 * (1.0 + vtx[0].abs() + vtx[1].abs()) {
                return Err(Error::InconsistentFrame(format!("chart {ci}: corner is not the frame vertex")));
            }
            let (g10, g01) = (ch.oracle.gamma(1, 0), ch.oracle.gamma(0, 1));
            if g10.abs() > 1e-12 || g01.abs() > 1e-12 {
                return Err(Error::InconsistentFrame(format!("chart {ci}: axis supports γ(1,0)={g10}, γ(0,1)={g01} must vanish")));
            }
        }
        let ev = hat.with_corner_chains().evolve()?;
        for (ci, ch) in charts.iter().enumerate() {
            let root = ch.oracle.defect(&UnimodularQuadruple::root());
            if root >= ev.m {
                return Err(Error::InconsistentFrame(format!("chart {ci}: root cut {root} reaches the maximum locus (m = {})", ev.m)));
            }
        }
        Ok(Self { name: name.to_string(), hat, hat_exact, charts, m: ev.m, locus: ev.locus, l: ev.l })
    }

    /// `h_Ω(u)` for any primitive direction.
    pub fn support(&self, w: PrimitiveVector) -> Result<f64> {
        for ch in &self.charts {
            if let Some((a, b)) = ch.frame_of(w) {
                return Ok(ch.support(a, b));
            }
        }
        let f = self.hat.facets();
        let n = f.len();
        for i in 0..n {
            let (p, r) = (f[i].normal, f[(i + 1) % n].normal);
            if p.det(w) >= 0 && w.det(r) >= 0 {
                return Ok(w.dot_f(self.hat.vertex(i)));
            }
        }
        Err(Error::UnsupportedDirection(w.x, w.y))
    }

    /// Frame facets plus chain directions at non-unimodular frame corners.
    pub fn frame_facets(&self) -> Vec<Facet<f64>> {
        self.hat.with_corner_chains().facets().to_vec()
    }

    /// `ρ_Ω(x)` by best-first Stern–Brocot refinement: nodes are processed in
    /// decreasing size and the search stops once the running minimum exceeds
    /// every unprocessed size (so all cuts that matter at that level are in).
    pub fn tropical_distance(&self, x: [f64; 2]) -> Result<f64> {
        const FLOOR: f64 = 1e-8;
        let mut g = self.frame_facets().iter().map(|f| f.normal.dot_f(x) - f.offset).fold(f64::INFINITY, f64::min);
        if g < -1e-12 {
            return Err(Error::ExteriorPoint);
        }
        #[derive(PartialEq)]
        struct Item(f64, usize, UnimodularQuadruple);
        impl Eq for Item {}
        impl PartialOrd for Item {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Item {
            fn cmp(&self, o: &Self) -> Ordering {
                self.0.total_cmp(&o.0)
            }
        }
        let mut heap = BinaryHeap::new();
        for (ci, ch) in self.charts.iter().enumerate() {
            let r = UnimodularQuadruple::root();
            let s = ch.oracle.defect(&r);
            if s > 0.0 {
                heap.push(Item(s, ci, r));
            }
        }
        while let Some(Item(size, ci, qd)) = heap.pop() {
            if size < g || size < FLOOR {
                break;
            }
            let ch = &self.charts[ci];
            let (ma, mb) = qd.mediant();
            let w = ch.ambient(ma, mb);
            let val = w.dot_f(x) - ch.support(ma, mb);
            g = g.min(val);
            if g < -1e-12 {
                return Err(Error::ExteriorPoint);
            }
            for c in qd.children() {
                let s = ch.oracle.defect(&c);
                if s > 0.0 {
                    heap.push(Item(s, ci, c));
                }
            }
        }
        Ok(g.max(0.0))
    }
}

/// A compact convex planar domain.
#[derive(Debug, Clone)]
pub enum ConvexDomain {
    Polygon(RationalPolygon),
    Smooth(SmoothDomain),
}

impl ConvexDomain {
    pub fn name(&self) -> String {
        match self {
            ConvexDomain::Polygon(_) => "polygon".into(),
            ConvexDomain::Smooth(s) => s.name.clone(),
        }
    }

    pub fn as_polygon(&self) -> Option<&RationalPolygon> {
        match self {
            ConvexDomain::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn support_value(&self, u: PrimitiveVector) -> Result<f64> {
        match self {
            ConvexDomain::Polygon(p) => Ok(p.support(u).to_f64()),
            ConvexDomain::Smooth(s) => s.support(u),
        }
    }

    pub fn tropical_distance(&self, x: [f64; 2]) -> Result<f64> {
        match self {
            ConvexDomain::Polygon(p) => {
                let xq = [f64_to_q(x[0])?, f64_to_q(x[1])?];
                p.tropical_distance(&xq).map(|v| v.to_f64())
            }
            ConvexDomain::Smooth(s) => s.tropical_distance(x),
        }
    }
}

/// Exact conversion of a finite binary64 value.
pub fn f64_to_q(x: f64) -> Result<Q> {
    Q::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("non-finite coordinate {x}")))
}

fn pv(x: i64, y: i64) -> PrimitiveVector {
    PrimitiveVector::raw(x, y)
}

fn square_facets(half: f64) -> Vec<Facet<f64>> {
    vec![Facet::new(pv(1, 0), -half), Facet::new(pv(0, 1), -half), Facet::new(pv(-1, 0), -half), Facet::new(pv(0, -1), -half)]
}

/// Charts at all four corners of the square `[−R, R]²`.
fn square_charts(half: f64, oracle: Arc<dyn SupportOracle>, exact: Option<Q>) -> Result<Vec<ArcChart>> {
    let corners = [([half, half], pv(-1, 0), pv(0, -1)), ([-half, half], pv(0, -1), pv(1, 0)), ([-half, -half], pv(1, 0), pv(0, 1)), ([half, -half], pv(0, 1), pv(-1, 0))];
    corners
        .iter()
        .map(|&(c, u, v)| {
            let ch = ArcChart::new(c, u, v, oracle.clone())?;
            Ok(match &exact {
                Some(h) => {
                    let s = |z: f64| if z > 0.0 { h.clone() } else { -h.clone() };
                    ch.with_exact_corner([s(c[0]), s(c[1])])
                }
                None => ch,
            })
        })
        .collect()
}

/// `L = {√(1−|x|) + √(1−|y|) ≥ 1}`: frame `[−1,1]²`, four parabolic charts.
pub fn domain_l() -> ConvexDomain {
    let hat = FacetPolygon::from_halfplanes(square_facets(1.0), false).expect("square");
    let hat_exact = FacetPolygon::from_halfplanes(square_facets(1.0).into_iter().map(|f| Facet::new(f.normal, q_int(-1))).collect(), false).ok();
    let charts = square_charts(1.0, Arc::new(ParabolaOracle::standard()), Some(q_int(1))).expect("charts");
    ConvexDomain::Smooth(SmoothDomain::new("domain_L", hat, hat_exact, charts).expect("domain_L"))
}

/// Disk of radius `R` centred at the origin; frame `[−R,R]²`.
pub fn disk(radius: f64) -> Result<ConvexDomain> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let hat = FacetPolygon::from_halfplanes(square_facets(radius), false)?;
    let charts = square_charts(radius, Arc::new(CircleOracle::new(radius)), None)?;
    Ok(ConvexDomain::Smooth(SmoothDomain::new("disk", hat, None, charts)?))
}

/// `{(x,y) ∈ [0,1]² : √x + √y ≥ 1}`; the frame is the pentagon obtained by cutting `x + y ≥ 1/2`.
pub fn parabolic_triangle() -> ConvexDomain {
    let facets: Vec<Facet<Q>> = vec![
        Facet::new(pv(1, 0), q_int(0)),
        Facet::new(pv(1, 1), q(1, 2)),
        Facet::new(pv(0, 1), q_int(0)),
        Facet::new(pv(-1, 0), q_int(-1)),
        Facet::new(pv(0, -1), q_int(-1)),
    ];
    let hat_exact = FacetPolygon::from_halfplanes(facets.clone(), false).expect("pentagon");
    let hat = FacetPolygon::from_halfplanes(facets.iter().map(|f| Facet::new(f.normal, f.offset.to_f64())).collect(), false).expect("pentagon");
    let half = [q(-1, 2), Q::zero()];
    // corner (1/2, 0): normals (1,1),(0,1); ambient (a, a+b) of the full parabola
    let o1 = ParabolaOracle::new([[1, 0], [1, 1]], q_int(1), half.clone()).expect("unimodular");
    // corner (0, 1/2): normals (1,0),(1,1); ambient (a+b, b)
    let o2 = ParabolaOracle::new([[1, 1], [0, 1]], q_int(1), [Q::zero(), q(-1, 2)]).expect("unimodular");
    let charts = vec![
        ArcChart::new([0.5, 0.0], pv(1, 1), pv(0, 1), Arc::new(o1)).expect("chart").with_exact_corner([q(1, 2), Q::zero()]),
        ArcChart::new([0.0, 0.5], pv(1, 0), pv(1, 1), Arc::new(o2)).expect("chart").with_exact_corner([Q::zero(), q(1, 2)]),
    ];
    ConvexDomain::Smooth(SmoothDomain::new("parabolic_triangle", hat, Some(hat_exact), charts).expect("parabolic triangle"))
}

/// Square `[−2ζ(1/α), 2ζ(1/α)]²` with `n_max` successive cuts of sizes `n^{-1/α}` at the lower-left corner.
pub fn d_alpha(alpha: f64, n_max: u64) -> Result<ConvexDomain> {
    let oracle = DAlphaOracle::new(alpha, n_max)?;
    let half = 2.0 * zeta_real(1.0 / alpha)?;
    // the cuts must stay inside the corner: S_{n_max} < 2·half
    if oracle.partial[n_max as usize] >= 2.0 * half {
        return Err(Error::ConstraintViolated("cuts exceed the square".into()));
    }
    let hat = FacetPolygon::from_halfplanes(square_facets(half), false)?;
    let chart = ArcChart::new([-half, -half], pv(1, 0), pv(0, 1), Arc::new(oracle))?;
    Ok(ConvexDomain::Smooth(SmoothDomain::new("d_alpha", hat, None, vec![chart])?))
}

pub fn rectangle(p: Q, qq: Q) -> Result<ConvexDomain> {
    if !p.is_positive() || !qq.is_positive() {
        return Err(Error::InvalidArgument("rectangle sides must be positive".into()));
    }
    Ok(ConvexDomain::Polygon(RationalPolygon::rectangle(p, qq)?))
}

/// JSON domain description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    Polygon {
        vertices: Vec<[String; 2]>,
    },
    Builtin {
        tag: String,
        #[serde(default)]
        radius: Option<f64>,
        #[serde(default)]
        alpha: Option<f64>,
        #[serde(default)]
        n_max: Option<u64>,
        #[serde(default)]
        p: Option<String>,
        #[serde(default)]
        q: Option<String>,
    },
}

impl DomainSpec {
    pub fn build(&self) -> Result<ConvexDomain> {
        let rat = |s: &str| parse_rational(s).ok_or_else(|| Error::InvalidSpec(format!("bad rational {s:?}")));
        match self {
            DomainSpec::Polygon { vertices } => {
                let v = vertices.iter().map(|[a, b]| Ok([rat(a)?, rat(b)?])).collect::<Result<Vec<_>>>()?;
                Ok(ConvexDomain::Polygon(RationalPolygon::new(v)?))
            }
            DomainSpec::Builtin { tag, radius, alpha, n_max, p, q: qq } => match tag.as_str() {
                "domain_L" | "L" => Ok(domain_l()),
                "disk" => disk(radius.unwrap_or(1.0)),
                "parabolic_triangle" => Ok(parabolic_triangle()),
                "d_alpha" => d_alpha(alpha.ok_or_else(|| Error::InvalidSpec("d_alpha needs alpha".into()))?, n_max.unwrap_or(100_000)),
                "rectangle" => rectangle(rat(p.as_deref().unwrap_or("3"))?, rat(qq.as_deref().unwrap_or("2"))?),
                other => Err(Error::InvalidSpec(format!("unknown builtin {other:?}"))),
            },
        }
    }
}

/// All primitive directions in the closed cone spanned by `u, v` listed by the chain of `cone_chain`.
pub fn corner_chain(u: PrimitiveVector, v: PrimitiveVector) -> Vec<PrimitiveVector> {
    cone_chain(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> RationalPolygon {
        RationalPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn support_examples() {
        let s = unit_square();
        assert_eq!(s.support(pv(1, 0)), q_int(0));
        assert_eq!(s.support(pv(-1, -1)), q_int(-2));
        assert_eq!(ParabolaOracle::standard().gamma_exact(2, 1).unwrap(), q(2, 3));
    }

    #[test]
    fn tropical_distance_examples() {
        let s = unit_square();
        assert_eq!(s.tropical_distance(&[q(1, 2), q(1, 2)]).unwrap(), q(1, 2));
        assert_eq!(s.tropical_distance(&[q(1, 2), q_int(0)]).unwrap(), q_int(0));
        let r = RationalPolygon::from_ints(&[(0, 0), (3, 0), (3, 2), (0, 2)]).unwrap();
        assert_eq!(r.tropical_distance(&[q(3, 2), q_int(1)]).unwrap(), q_int(1));
        assert_eq!(s.tropical_distance(&[q_int(2), q_int(0)]), Err(Error::ExteriorPoint));
    }

    #[test]
    fn lattice_length_examples() {
        let seg = |a: (i64, i64), b: (i64, i64)| LatticeSegment::new([q_int(a.0), q_int(a.1)], [q_int(b.0), q_int(b.1)]).lattice_length();
        assert_eq!(seg((0, 0), (2, 0)), q_int(2));
        assert_eq!(seg((0, 0), (1, 1)), q_int(1));
        assert_eq!(seg((0, 0), (2, 4)), q_int(2));
        assert!((lattice_length_f64([0.0, 0.0], [2.0, 4.0]).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(lattice_length_f64([0.0, 0.0], [1.0, std::f64::consts::SQRT_2]), Err(Error::IrrationalDirection));
    }

    #[test]
    fn perimeter_examples() {
        assert_eq!(unit_square().lattice_perimeter(), q_int(4));
        assert_eq!(RationalPolygon::from_ints(&[(0, 0), (3, 0), (3, 2), (0, 2)]).unwrap().lattice_perimeter(), q_int(10));
        assert_eq!(RationalPolygon::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap().lattice_perimeter(), q_int(3));
    }

    #[test]
    fn polygon_validation() {
        assert!(RationalPolygon::from_ints(&[(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)]).is_err());
        let p = RationalPolygon::from_ints(&[(0, 1), (1, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!(p.area(), q_int(1));
        let p = RationalPolygon::from_ints(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn builtins_have_expected_frames() {
        let ConvexDomain::Smooth(l) = domain_l() else { panic!() };
        assert!((l.m - 1.0).abs() < 1e-12);
        assert_eq!(l.locus.len(), 1);
        let ConvexDomain::Smooth(t) = parabolic_triangle() else { panic!() };
        assert!((t.m - 0.5).abs() < 1e-12);
        let ConvexDomain::Smooth(d) = disk(1.0).unwrap() else { panic!() };
        assert!((d.m - 1.0).abs() < 1e-12);
        assert!(d_alpha(0.5, 1000).is_ok());
    }

    #[test]
    fn parabolic_triangle_chart_matches_brute_force() {
        let ConvexDomain::Smooth(t) = parabolic_triangle() else { panic!() };
        // h(w) = min over the arc √x + √y = 1 for directions inside the arc's normal range
        for &(a, b) in &[(1i64, 2i64), (2, 1), (3, 2), (2, 3), (1, 3), (5, 2)] {
            let w = pv(a, b);
            let n = 20000;
            let brute = (0..=n)
                .map(|i| {
                    let s = i as f64 / n as f64;
                    a as f64 * s * s + b as f64 * (1.0 - s) * (1.0 - s)
                })
                .fold(f64::INFINITY, f64::min);
            assert!((t.support(w).unwrap() - brute).abs() < 1e-7, "{a},{b}");
        }
    }

    #[test]
    fn smooth_distance_of_l() {
        let l = domain_l();
        assert!((l.tropical_distance([0.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
        // on the boundary arc
        let (x, y) = (1.0 - 0.25, 1.0 - 0.25);
        assert!(l.tropical_distance([x, y]).unwrap() < 1e-7);
        assert_eq!(l.tropical_distance([0.9, 0.9]), Err(Error::ExteriorPoint));
        // a point on the diagonal: ρ = min(1 − x, 2(1 − x) − 1/2 …) computed by brute force over directions
        let p = [0.5, 0.5];
        let mut brute = f64::INFINITY;
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                if (a, b) != (0, 0) && a.gcd(&b) == 1 {
                    let w = pv(a, b);
                    brute = brute.min(w.dot_f(p) - l.support_value(w).unwrap());
                }
            }
        }
        assert!((l.tropical_distance(p).unwrap() - brute).abs() < 1e-12);
    }

    #[test]
    fn graph_oracle_matches_parabola() {
        let g = GraphOracle { graph: GraphForm::parabola(), bounds: None };
        let p = ParabolaOracle::standard();
        for a in 0..12u64 {
            for b in 0..12u64 {
                if a.gcd(&b) == 1 {
                    assert!((g.gamma(a, b) - p.gamma(a, b)).abs() < 1e-10, "{a} {b}");
                }
            }
        }
    }
}

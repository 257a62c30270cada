//! Convex polygons given as intersections of half-planes `⟨n, x⟩ ≥ h` with
//! primitive integer normals, generic over exact rationals and binary64.
//!
//! Besides static operations (cleaning, vertices, lattice lengths, insets) this
//! module runs the kinetic wave-front simulation: every facet moves inward at
//! unit lattice speed, facets collapse at critical times, and the process ends
//! when the polygon degenerates to a point or a segment.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice_arith::PrimitiveVector;
use crate::scalar::Scalar;

/// One supporting half-plane `{x : ⟨normal, x⟩ ≥ offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet<T> {
    pub normal: PrimitiveVector,
    pub offset: T,
}

impl<T: Scalar> Facet<T> {
    pub fn new(normal: PrimitiveVector, offset: T) -> Self {
        Self { normal, offset }
    }

    pub fn eval(&self, p: &[T; 2]) -> T {
        dot(self.normal, p) - self.offset.clone()
    }
}

pub fn dot<T: Scalar>(n: PrimitiveVector, p: &[T; 2]) -> T {
    T::from_i64(n.x) * p[0].clone() + T::from_i64(n.y) * p[1].clone()
}

/// A vector `w` with `⟨n, w⟩ = 1`.
fn dual_point(n: PrimitiveVector) -> (i64, i64) {
    let e = n.x.extended_gcd(&n.y);
    // e.x·n.x + e.y·n.y = gcd = ±1
    (e.x * e.gcd, e.y * e.gcd)
}

/// The primitive vector `e` with `det(w, e) = 1`.
fn det_one_partner(w: PrimitiveVector) -> PrimitiveVector {
    // det(w,e) = w.x e.y − w.y e.x = 1  ⇔  ⟨(−w.y, w.x), e⟩ = 1
    let (a, b) = dual_point(PrimitiveVector::raw(-w.y, w.x));
    PrimitiveVector::raw(a, b)
}

/// Boundary lattice points of `conv(cone(u, v) ∩ Z² ∖ 0)` from `u` to `v`, both included.
///
/// Requires `0 < det(u, v)`.
pub fn cone_chain(u: PrimitiveVector, v: PrimitiveVector) -> Vec<PrimitiveVector> {
    let mut out = vec![u];
    let mut w = u;
    loop {
        let d = w.det(v);
        debug_assert!(d > 0);
        if d == 1 {
            out.push(v);
            return out;
        }
        let e = det_one_partner(w);
        let k = Integer::div_ceil(&(-e.det(v)), &d);
        w = PrimitiveVector::raw(e.x + k * w.x, e.y + k * w.y);
        if w == v {
            out.push(v);
            return out;
        }
        out.push(w);
    }
}

/// True when the corner between `u` and `v` is an `A_n` singularity
/// (`det(u, v)` divides `v − u`), the unimodular case `det = 1` included.
pub fn is_an_corner(u: PrimitiveVector, v: PrimitiveVector) -> bool {
    let d = u.det(v);
    d > 0 && (v.x - u.x) % d == 0 && (v.y - u.y) % d == 0
}

/// Intersection point of the lines `⟨a, x⟩ = ha` and `⟨b, x⟩ = hb`.
pub fn line_intersection<T: Scalar>(a: PrimitiveVector, ha: &T, b: PrimitiveVector, hb: &T) -> [T; 2] {
    let d = T::from_i64(a.det(b));
    let x = (ha.clone() * T::from_i64(b.y) - hb.clone() * T::from_i64(a.y)) / d.clone();
    let y = (hb.clone() * T::from_i64(a.x) - ha.clone() * T::from_i64(b.x)) / d;
    [x, y]
}

/// A cleaned, counterclockwise list of nonredundant facets of a bounded polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetPolygon<T> {
    facets: Vec<Facet<T>>,
}

/// Outcome of a facet in the cleaning pass.
fn facet_length<T: Scalar>(p: &Facet<T>, f: &Facet<T>, n: &Facet<T>) -> (T, f64) {
    let (wx, wy) = dual_point(f.normal);
    let w = PrimitiveVector::raw(wx, wy);
    let hn = n.offset.clone() - f.offset.clone() * T::from_i64(n.normal.dot_i(w));
    let tau_next = hn / T::from_i64(-f.normal.det(n.normal));
    let hp = p.offset.clone() - f.offset.clone() * T::from_i64(p.normal.dot_i(w));
    let tau_prev = hp / T::from_i64(p.normal.det(f.normal));
    let scale = tau_next.to_f64().abs() + tau_prev.to_f64().abs() + f.offset.to_f64().abs();
    (tau_next - tau_prev, scale)
}

/// Rate of change of a facet's lattice length when all offsets grow at unit speed.
fn facet_rate(p: PrimitiveVector, f: PrimitiveVector, n: PrimitiveVector) -> Q64 {
    let (wx, wy) = dual_point(f);
    let w = PrimitiveVector::raw(wx, wy);
    // τ_next − τ_prev with all offsets equal to 1, as an exact fraction
    let (a1, b1) = (1 - n.dot_i(w), -f.det(n));
    let (a2, b2) = (1 - p.dot_i(w), p.det(f));
    Q64::new(a1 * b2 - a2 * b1, b1 * b2)
}

/// Small exact fraction with `i64` parts; enough for rates of facet lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Q64 {
    pub num: i64,
    pub den: i64,
}

impl Q64 {
    fn new(num: i64, den: i64) -> Self {
        let g = num.gcd(&den).max(1) * den.signum();
        Self { num: num / g, den: den / g }
    }

    pub fn sign(self) -> Ordering {
        self.num.cmp(&0)
    }

    pub fn to_scalar<T: Scalar>(self) -> T {
        T::from_i64(self.num) / T::from_i64(self.den)
    }
}

impl<T: Scalar> FacetPolygon<T> {
    /// Intersects the given half-planes. Duplicated normals keep the tightest offset.
    /// With `keep_growing`, zero-length facets whose length would grow under
    /// inward motion are retained (the tropical wave front needs them at corners).
    pub fn from_halfplanes(mut facets: Vec<Facet<T>>, keep_growing: bool) -> Result<Self> {
        facets.sort_by(|a, b| a.normal.angle_cmp(b.normal).then_with(|| b.offset.total_cmp(&a.offset)));
        facets.dedup_by(|later, earlier| later.normal == earlier.normal);
        let n = facets.len();
        if n < 3 {
            return Err(Error::InvalidPolygon("fewer than three half-planes".into()));
        }
        for i in 0..n {
            if facets[i].normal.det(facets[(i + 1) % n].normal) <= 0 {
                return Err(Error::InvalidPolygon("unbounded intersection".into()));
            }
        }
        let mut prev: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
        let mut next: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut alive = vec![true; n];
        let mut count = n;
        let mut work: Vec<usize> = (0..n).rev().collect();
        while let Some(i) = work.pop() {
            if !alive[i] {
                continue;
            }
            let (p, q) = (prev[i], next[i]);
            let (len, scale) = facet_length(&facets[p], &facets[i], &facets[q]);
            let remove = match len.sign_tol(scale) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    !(keep_growing && facet_rate(facets[p].normal, facets[i].normal, facets[q].normal).sign() == Ordering::Greater)
                }
            };
            if !remove {
                continue;
            }
            if count <= 3 || facets[p].normal.det(facets[q].normal) <= 0 {
                return Err(Error::EmptyIntersection);
            }
            alive[i] = false;
            count -= 1;
            next[p] = q;
            prev[q] = p;
            work.push(p);
            work.push(q);
        }
        let facets = facets.into_iter().zip(alive).filter(|(_, a)| *a).map(|(f, _)| f).collect();
        Ok(Self { facets })
    }

    pub fn facets(&self) -> &[Facet<T>] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    fn nb(&self, i: usize) -> (&Facet<T>, &Facet<T>, &Facet<T>) {
        let n = self.facets.len();
        (&self.facets[(i + n - 1) % n], &self.facets[i], &self.facets[(i + 1) % n])
    }

    /// Lattice length of facet `i`.
    pub fn lattice_length(&self, i: usize) -> T {
        let (p, f, q) = self.nb(i);
        facet_length(p, f, q).0
    }

    /// `d/dt` of facet `i`'s lattice length under unit inward motion.
    pub fn length_rate(&self, i: usize) -> Q64 {
        let (p, f, q) = self.nb(i);
        facet_rate(p.normal, f.normal, q.normal)
    }

    pub fn lattice_lengths(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.lattice_length(i)).collect()
    }

    pub fn lattice_perimeter(&self) -> T {
        self.lattice_lengths().into_iter().fold(T::zero(), |a, b| a + b)
    }

    /// Vertex `i` lies between facets `i` and `i+1`.
    pub fn vertex(&self, i: usize) -> [T; 2] {
        let n = self.facets.len();
        let (a, b) = (&self.facets[i], &self.facets[(i + 1) % n]);
        line_intersection(a.normal, &a.offset, b.normal, &b.offset)
    }

    pub fn vertices(&self) -> Vec<[T; 2]> {
        (0..self.len()).map(|i| self.vertex(i)).collect()
    }

    pub fn area(&self) -> T {
        shoelace(&self.vertices())
    }

    /// Sum of `det²`-weighted corner data: `K² = Σ D_j² + 2n` with
    /// `D_j² = −det(v_{j−1}, v_{j+1})`, valid when every corner is unimodular.
    pub fn k_squared_smooth(&self) -> Option<i64> {
        let n = self.len();
        let normals: Vec<PrimitiveVector> = self.facets.iter().map(|f| f.normal).collect();
        if (0..n).any(|i| normals[i].det(normals[(i + 1) % n]) != 1) {
            return None;
        }
        let s: i64 = (0..n).map(|j| -normals[(j + n - 1) % n].det(normals[(j + 1) % n])).sum();
        Some(s + 2 * n as i64)
    }

    /// Moves every facet inward by `t` and re-cleans.
    pub fn inset(&self, t: &T, keep_growing: bool) -> Result<Self> {
        Self::from_halfplanes(shift(&self.facets, t), keep_growing)
    }

    /// Adds the Hirzebruch–Jung chain directions at every non-unimodular corner,
    /// with offsets attained at that corner (zero-length facets).
    pub fn with_corner_chains(&self) -> Self {
        let n = self.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = &self.facets[i];
            let b = &self.facets[(i + 1) % n];
            out.push(a.clone());
            if a.normal.det(b.normal) > 1 {
                let v = self.vertex(i);
                let chain = cone_chain(a.normal, b.normal);
                for w in &chain[1..chain.len() - 1] {
                    out.push(Facet::new(*w, dot(*w, &v)));
                }
            }
        }
        Self { facets: out }
    }

    /// Converts every offset without re-cleaning (zero-length facets are kept).
    pub fn map_offsets<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FacetPolygon<U> {
        FacetPolygon { facets: self.facets.iter().map(|g| Facet::new(g.normal, f(&g.offset))).collect() }
    }

    /// Runs the wave-front evolution to its terminal time.
    pub fn evolve(&self) -> Result<Evolution<T>> {
        evolve(self)
    }
}

pub fn shift<T: Scalar>(facets: &[Facet<T>], t: &T) -> Vec<Facet<T>> {
    facets.iter().map(|f| Facet::new(f.normal, f.offset.clone() + t.clone())).collect()
}

/// Signed area of a closed vertex loop.
pub fn shoelace<T: Scalar>(v: &[[T; 2]]) -> T {
    let n = v.len();
    let mut acc = T::zero();
    for i in 0..n {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        acc = acc + a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
    }
    acc.half()
}

/// A critical time of the evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalEvent<T> {
    pub time: T,
    /// Jump `P'(t−) − P'(t+)` of the perimeter slope; the number of unimodular cuts of this size.
    pub multiplicity: i64,
    pub removed: Vec<PrimitiveVector>,
}

/// `P(t) = p0 + slope·(t − t0)` on `[t0, t1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerimeterPiece<T> {
    pub t0: T,
    pub t1: T,
    pub p0: T,
    pub slope: T,
}

/// A straight piece of a wave-front vertex trajectory; `weight = det` of the two facet normals.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub from: [T; 2],
    pub to: [T; 2],
    pub t0: T,
    pub t1: T,
    pub weight: i64,
    pub normals: (PrimitiveVector, PrimitiveVector),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution<T> {
    /// Terminal time `m = max ρ`.
    pub m: T,
    /// One point, or the two endpoints of the terminal segment.
    pub locus: Vec<[T; 2]>,
    /// Lattice length of the terminal segment (zero for a point).
    pub l: T,
    /// Facets alive just before the terminal time.
    pub final_normals: Vec<PrimitiveVector>,
    pub initial_area: T,
    pub events: Vec<CriticalEvent<T>>,
    pub pieces: Vec<PerimeterPiece<T>>,
    pub trajectories: Vec<Trajectory<T>>,
}

impl<T: Scalar> Evolution<T> {
    /// Lattice perimeter of the wave front at time `t`.
    pub fn perimeter_at(&self, t: &T) -> T {
        for p in &self.pieces {
            if *t <= p.t1 {
                return p.p0.clone() + p.slope.clone() * (t.clone() - p.t0.clone());
            }
        }
        T::zero()
    }

    /// Area of the wave front at time `t`, integrating the perimeter pieces.
    pub fn area_at(&self, t: &T) -> T {
        let mut a = self.initial_area.clone();
        for p in &self.pieces {
            let hi = if *t < p.t1 { t.clone() } else { p.t1.clone() };
            if hi <= p.t0 {
                break;
            }
            let d = hi - p.t0.clone();
            a = a - (p.p0.clone() * d.clone() + p.slope.clone() * d.clone() * d.half());
        }
        a
    }
}

fn total_rate<T: Scalar>(poly: &FacetPolygon<T>) -> T {
    (0..poly.len()).map(|i| poly.length_rate(i).to_scalar::<T>()).fold(T::zero(), |a, b| a + b)
}

fn evolve<T: Scalar>(start: &FacetPolygon<T>) -> Result<Evolution<T>> {
    let mut t = T::zero();
    let mut poly = start.clone();
    let initial_area = poly.area();
    let area_scale = initial_area.to_f64().abs();
    let mut area = initial_area.clone();
    let mut events = Vec::new();
    let mut pieces = Vec::new();
    let mut trajectories = Vec::new();
    loop {
        let cur = FacetPolygon { facets: shift(&poly.facets, &t) };
        let lengths = cur.lattice_lengths();
        let rates: Vec<Q64> = (0..cur.len()).map(|i| cur.length_rate(i)).collect();
        let perimeter = lengths.iter().cloned().fold(T::zero(), |a, b| a + b);
        let slope = total_rate(&cur);
        let mut dt: Option<T> = None;
        for (l, r) in lengths.iter().zip(&rates) {
            if r.sign() == Ordering::Less {
                let cand = -(l.clone()) / r.to_scalar::<T>();
                let cand = if cand < T::zero() { T::zero() } else { cand };
                if dt.as_ref().is_none_or(|d| cand < *d) {
                    dt = Some(cand);
                }
            }
        }
        let dt = dt.ok_or_else(|| Error::InvalidPolygon("wave front does not shrink".into()))?;
        let t1 = t.clone() + dt.clone();
        let area1 = area.clone() - (perimeter.clone() * dt.clone() + slope.clone() * dt.clone() * dt.half());
        pieces.push(PerimeterPiece { t0: t.clone(), t1: t1.clone(), p0: perimeter.clone(), slope: slope.clone() });
        let end = FacetPolygon { facets: shift(&poly.facets, &t1) };
        for i in 0..cur.len() {
            let j = (i + 1) % cur.len();
            trajectories.push(Trajectory {
                from: cur.vertex(i),
                to: end.vertex(i),
                t0: t.clone(),
                t1: t1.clone(),
                weight: cur.facets[i].normal.det(cur.facets[j].normal),
                normals: (cur.facets[i].normal, cur.facets[j].normal),
            });
        }
        if area1.sign_tol(area_scale) != Ordering::Greater {
            let pts = end.vertices();
            let locus = extreme_points(&pts);
            let l = end.lattice_lengths().into_iter().fold(T::zero(), |a, b| if b > a { b } else { a });
            let l = if locus.len() == 1 { T::zero() } else { l };
            return Ok(Evolution {
                m: t1,
                locus,
                l,
                final_normals: poly.facets.iter().map(|f| f.normal).collect(),
                initial_area,
                events,
                pieces,
                trajectories,
            });
        }
        let next = FacetPolygon::from_halfplanes(end.facets.clone(), true)?;
        let new_slope = total_rate(&next);
        let removed: Vec<PrimitiveVector> = cur
            .facets
            .iter()
            .filter(|f| !next.facets.iter().any(|g| g.normal == f.normal))
            .map(|f| f.normal)
            .collect();
        let jump = (slope - new_slope).to_f64().round() as i64;
        events.push(CriticalEvent { time: t1.clone(), multiplicity: jump, removed });
        poly = FacetPolygon { facets: shift(&next.facets, &-(t1.clone())) };
        t = t1;
        area = area1;
    }
}

/// The extreme points of a collinear (or coincident) point set.
fn extreme_points<T: Scalar>(pts: &[[T; 2]]) -> Vec<[T; 2]> {
    let key = |a: &[T; 2], b: &[T; 2]| a[0].total_cmp(&b[0]).then_with(|| a[1].total_cmp(&b[1]));
    let lo = pts.iter().min_by(|a, b| key(a, b)).cloned().expect("nonempty");
    let hi = pts.iter().max_by(|a, b| key(a, b)).cloned().expect("nonempty");
    let scale = 1.0 + lo[0].to_f64().abs() + lo[1].to_f64().abs();
    let dx = (hi[0].clone() - lo[0].clone()).abs_val();
    let dy = (hi[1].clone() - lo[1].clone()).abs_val();
    if dx.sign_tol(scale) == Ordering::Equal && dy.sign_tol(scale) == Ordering::Equal {
        vec![lo]
    } else {
        vec![lo, hi]
    }
}

/// A general half-plane `a·x + b·y ≥ c` with scalar coefficients.
#[derive(Debug, Clone)]
pub struct GenHalfPlane<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// Clips a convex vertex loop by a half-plane (Sutherland–Hodgman, one plane).
pub fn clip_convex<T: Scalar>(poly: &[[T; 2]], hp: &GenHalfPlane<T>) -> Vec<[T; 2]> {
    let val = |p: &[T; 2]| hp.a.clone() * p[0].clone() + hp.b.clone() * p[1].clone() - hp.c.clone();
    let n = poly.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        let (vp, vq) = (val(p), val(q));
        let pin = vp >= T::zero();
        let qin = vq >= T::zero();
        if pin {
            out.push(p.clone());
        }
        if pin != qin {
            let r = vp.clone() / (vp - vq);
            out.push([
                p[0].clone() + r.clone() * (q[0].clone() - p[0].clone()),
                p[1].clone() + r * (q[1].clone() - p[1].clone()),
            ]);
        }
    }
    // drop consecutive duplicates created by touching vertices
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

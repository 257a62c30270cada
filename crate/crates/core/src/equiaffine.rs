//! Equiaffine arc length: parametric and graph integrals of the cube-root
//! curvature density, and the support-triangle sum `Σ 2·Area^{1/3}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::domain_model::{ArcChart, ConvexDomain, GraphForm};
use crate::error::{Error, Result};
use crate::lattice_arith::UnimodularQuadruple;
use crate::numeric::solve_increasing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthMethod {
    Parametric,
    Graph,
    Triangles,
}

impl std::str::FromStr for LengthMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parametric" => Ok(Self::Parametric),
            "graph" => Ok(Self::Graph),
            "triangles" => Ok(Self::Triangles),
            o => Err(Error::InvalidArgument(format!("unknown method {o}"))),
        }
    }
}

/// Tanh–sinh quadrature on `[a, b]`; `f` receives `(x, x − a, b − x)` so endpoint singularities
/// can be evaluated without cancellation.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let (da, db) = ((b - a) / (1.0 + (2.0 * u).exp()), (b - a) / (1.0 + (-2.0 * u).exp()));
        if da <= 0.0 || db <= 0.0 {
            return 0.0;
        }
        let w = half * 0.5 * PI * t.cosh() / u.cosh().powi(2);
        if w == 0.0 || !w.is_finite() {
            return 0.0;
        }
        w * f(a + da, da, db)
    };
    let t_max = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        sum += eval(k as f64 * h) + eval(-(k as f64) * h);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            sum += eval(k as f64 * h) + eval(-(k as f64) * h);
            k += 2;
        }
        let cur = sum * h;
        if (cur - prev).abs() <= tol * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// `∫ |det(Γ', Γ'')|^{1/3} dt` over `[t0, t1]`.
pub fn length_parametric<D1, D2>(d1: D1, d2: D2, t0: f64, t1: f64) -> Result<f64>
where
    D1: Fn(f64) -> [f64; 2],
    D2: Fn(f64) -> [f64; 2],
{
    if !(t0 < t1) {
        return Err(Error::InvalidArgument("empty parameter interval".into()));
    }
    for i in 0..=1000 {
        let t = t0 + (t1 - t0) * i as f64 / 1000.0;
        let v = d1(t);
        if v[0].hypot(v[1]) < 1e-14 {
            return Err(Error::ConstraintViolated(format!("vanishing velocity at t = {t}")));
        }
    }
    let density = |t: f64| {
        let (p, q) = (d1(t), d2(t));
        let det = (p[0] * q[1] - p[1] * q[0]).abs();
        if det < 1e-30 {
            0.0
        } else {
            det.cbrt()
        }
    };
    Ok(tanh_sinh(|t, _, _| density(t), t0, t1, 1e-13))
}

/// `∫ (g'')^{1/3} dx` over `[a, b]`.
pub fn length_graph<G: Fn(f64) -> f64>(g2: G, a: f64, b: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidArgument("empty interval".into()));
    }
    for i in 1..1000 {
        let x = a + (b - a) * i as f64 / 1000.0;
        if !(g2(x) > 0.0) {
            return Err(Error::ConstraintViolated(format!("g'' ≤ 0 at x = {x}")));
        }
    }
    Ok(tanh_sinh(|x, _, _| g2(x).max(0.0).cbrt(), a, b, 1e-13))
}

/// Point of the graph `Y = g(X)` where the tangent has normal `(a, b)`.
fn tangent_point(g: &GraphForm, a: u64, b: u64) -> [f64; 2] {
    let x = if b == 0 {
        0.0
    } else if a == 0 {
        g.a
    } else {
        let g1 = g.g1.clone();
        let g2 = g.g2.clone();
        solve_increasing(|x| g1(x), Some(&|x| g2(x)), 0.0, g.a, -(a as f64) / b as f64)
    };
    [x, (g.g)(x)]
}

/// Area of the triangle cut off by the tangents at the ends of the arc with end normals `u`, `v`
/// and the chord between the tangency points.
fn tangent_chord_area(g: &GraphForm, qd: &UnimodularQuadruple) -> f64 {
    let p = tangent_point(g, qd.a, qd.b);
    let r = tangent_point(g, qd.c, qd.d);
    let (a, b, c, d) = (qd.a as f64, qd.b as f64, qd.c as f64, qd.d as f64);
    // tangent lines a X + b Y = a p.x + b p.y and c X + d Y = c r.x + d r.y; ad − bc = 1
    let (h1, h2) = (a * p[0] + b * p[1], c * r[0] + d * r[1]);
    let i = [d * h1 - b * h2, a * h2 - c * h1];
    0.5 * ((r[0] - p[0]) * (i[1] - p[1]) - (r[1] - p[1]) * (i[0] - p[0])).abs()
}

/// `Σ 2·Area(Δ)^{1/3}` over the arcs cut out by the leaves of the chart's cut tree (the first
/// support triangles of size `< ε` along every branch), with `Δ` the triangle between the two end
/// tangents and the chord of each arc. Flat pieces contribute nothing.
pub fn length_via_triangles(chart: &ArcChart, eps: f64) -> Result<f64> {
    if !chart.oracle.is_smooth() {
        return Ok(0.0);
    }
    let g = chart.oracle.graph().ok_or_else(|| Error::InvalidArgument("chart has no graph form".into()))?;
    let mut acc = 0.0;
    let mut stack = vec![UnimodularQuadruple::root()];
    while let Some(qd) = stack.pop() {
        let f = chart.oracle.defect(&qd);
        if f <= 0.0 {
            continue;
        }
        if f < eps {
            acc += 2.0 * tangent_chord_area(g, &qd).cbrt();
        } else {
            stack.extend(qd.children());
        }
    }
    Ok(acc)
}

/// Equiaffine length of one chart's arc.
pub fn chart_length(chart: &ArcChart, method: LengthMethod, eps: f64) -> Result<f64> {
    match method {
        LengthMethod::Triangles => length_via_triangles(chart, eps),
        _ if !chart.oracle.is_smooth() => Ok(0.0),
        LengthMethod::Graph => {
            let g = chart.oracle.graph().ok_or_else(|| Error::InvalidArgument("chart has no graph form".into()))?;
            length_graph(|x| (g.g2)(x), 0.0, g.a)
        }
        LengthMethod::Parametric => {
            // Γ(x) = (x, g(x))
            let g = chart.oracle.graph().ok_or_else(|| Error::InvalidArgument("chart has no graph form".into()))?;
            length_parametric(|x| [1.0, (g.g1)(x)], |x| [0.0, (g.g2)(x)], 0.0, g.a)
        }
    }
}

/// Total equiaffine length of `∂Ω`; zero for polygons.
pub fn domain_length(domain: &ConvexDomain, method: LengthMethod, eps: f64) -> Result<f64> {
    match domain {
        ConvexDomain::Polygon(_) => Ok(0.0),
        ConvexDomain::Smooth(d) => d.charts.iter().map(|c| chart_length(c, method, eps)).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain_model::{disk, domain_l, GraphOracle};
    use crate::lattice_arith::PrimitiveVector;
    use std::sync::Arc;

    fn pv(x: i64, y: i64) -> PrimitiveVector {
        PrimitiveVector::new(x, y).unwrap()
    }
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn parabola_arc(m: [[f64; 2]; 2]) -> (impl Fn(f64) -> [f64; 2], impl Fn(f64) -> [f64; 2]) {
        let ap = move |v: [f64; 2]| [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
        (move |t: f64| ap([-2.0 * t, 2.0 - 2.0 * t]), move |_t: f64| ap([-2.0, -2.0]))
    }

    #[test]
    fn parametric_examples() {
        let (d1, d2) = parabola_arc([[1.0, 0.0], [0.0, 1.0]]);
        assert_relative_eq!(length_parametric(d1, d2, 0.0, 1.0).unwrap(), 4f64.cbrt(), max_relative = 1e-12);
        let circ = length_parametric(|t: f64| [-t.sin(), t.cos()], |t: f64| [-t.cos(), -t.sin()], 0.0, 2.0 * PI).unwrap();
        assert_relative_eq!(circ, 2.0 * PI, max_relative = 1e-12);
        assert_eq!(length_parametric(|_| [1.0, 2.0], |_| [0.0, 0.0], 0.0, 1.0).unwrap(), 0.0);
        assert!(length_parametric(|_| [0.0, 0.0], |_| [0.0, 0.0], 0.0, 1.0).is_err());
    }

    #[test]
    fn graph_examples() {
        assert_relative_eq!(length_graph(|_| 1.0, 0.0, 1.0).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(length_graph(|_| 4.0, 0.0, 1.0).unwrap(), 4f64.cbrt(), max_relative = 1e-13);
        assert!(length_graph(|x| x - 0.5, 0.0, 1.0).is_err());
        let l = domain_l();
        assert_relative_eq!(domain_length(&l, LengthMethod::Graph, 0.0).unwrap(), 4f64.powf(4.0 / 3.0), max_relative = 1e-10);
        assert_relative_eq!(domain_length(&l, LengthMethod::Parametric, 0.0).unwrap(), 4f64.powf(4.0 / 3.0), max_relative = 1e-10);
        let d = disk(1.0).unwrap();
        assert_relative_eq!(domain_length(&d, LengthMethod::Graph, 0.0).unwrap(), 2.0 * PI, max_relative = 1e-9);
    }

    #[test]
    fn triangles() {
        let ConvexDomain::Smooth(l) = domain_l() else { unreachable!() };
        let ch = &l.charts[0];
        // the parabolic arc is its own osculating parabola: exact at every depth
        assert_relative_eq!(length_via_triangles(ch, 1.0).unwrap(), 4f64.cbrt(), max_relative = 1e-12);
        let deep = length_via_triangles(ch, 1e-5).unwrap();
        assert!((deep - 4f64.cbrt()).abs() < 1e-6, "{deep}");
        let ConvexDomain::Smooth(d) = disk(1.0).unwrap() else { unreachable!() };
        let quarter = PI / 2.0;
        assert!((length_via_triangles(&d.charts[0], 1e-5).unwrap() - quarter).abs() < 0.02 * quarter);
        // Y = (1 − X)³ is not a conic, so the sums converge with visible steps
        let g = GraphForm {
            a: 1.0,
            g: Arc::new(|x| (1.0 - x).powi(3)),
            g1: Arc::new(|x| -3.0 * (1.0 - x).powi(2)),
            g2: Arc::new(|x| 6.0 * (1.0 - x)),
            g3: Arc::new(|_| -6.0),
        };
        let exact = length_graph(|x| (g.g2)(x), 0.0, 1.0).unwrap();
        let ch = ArcChart::new([0.0, 0.0], pv(1, 0), pv(0, 1), Arc::new(GraphOracle { graph: g, bounds: None })).unwrap();
        let v: Vec<f64> = [1e-3, 2.5e-4, 6.25e-5].iter().map(|&e| length_via_triangles(&ch, e).unwrap()).collect();
        assert!(((v[1] - v[0]) / (v[2] - v[1])).abs() >= 1.5, "{v:?}");
        assert!((v[2] - exact).abs() < (v[0] - exact).abs(), "{v:?} vs {exact}");
        let poly = crate::domain_model::d_alpha(0.5, 50).unwrap();
        let ConvexDomain::Smooth(p) = poly else { unreachable!() };
        assert_eq!(chart_length(&p.charts[0], LengthMethod::Graph, 0.0).unwrap(), 0.0);
        assert_eq!(length_via_triangles(&p.charts[0], 1e-4).unwrap(), 0.0);
    }

    #[test]
    fn subdivision_additivity() {
        let (d1, d2) = parabola_arc([[1.0, 0.0], [0.0, 1.0]]);
        let whole = length_parametric(&d1, &d2, 0.0, 1.0).unwrap();
        let parts = length_parametric(&d1, &d2, 0.0, 0.3).unwrap() + length_parametric(&d1, &d2, 0.3, 1.0).unwrap();
        assert!((whole - parts).abs() < 1e-10);
    }

    proptest! {
        #[test]
        fn unimodular_invariance(a in -3i64..4, b in -3i64..4, k in -3i64..4) {
            // [[a, b], [c, d]] with det 1: take a lower-triangular shear composed with a rotation-like swap
            let m1 = [[1.0, k as f64], [0.0, 1.0]];
            let m2 = [[1.0, 0.0], [a as f64, 1.0]];
            let m3 = [[0.0, -1.0], [1.0, b as f64]];
            let mul = |x: [[f64; 2]; 2], y: [[f64; 2]; 2]| {
                [[x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
                 [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]]]
            };
            let m = mul(mul(m1, m2), m3);
            let (d1, d2) = parabola_arc(m);
            let v = length_parametric(d1, d2, 0.0, 1.0).unwrap();
            prop_assert!((v - 4f64.cbrt()).abs() < 1e-9 * 4f64.cbrt());
        }
    }
}

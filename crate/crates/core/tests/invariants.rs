use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use tropzeta_core::corner_cutting::enumerate_cuts;
use tropzeta_core::domain_model::{disk, domain_l, ConvexDomain, RationalPolygon};
use tropzeta_core::minimal_model::{compute_minimal_model, correction_h, correction_h_exact, segment_model_zeta, SegmentParams};
use tropzeta_core::scalar::{q, q_int, Scalar, Q};
use tropzeta_core::zeta_engine::{
    boundary_series, term_multiset, zeta_identity_exact, zeta_polygon_exact, zeta_via_identity, zeta_via_mellin,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Convex hull (counter-clockwise, no collinear points) of lattice points.
fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn lattice_polygon() -> impl Strategy<Value = RationalPolygon> {
    prop::collection::vec((0i64..9, 0i64..9), 4..9)
        .prop_map(hull)
        .prop_filter("needs a 2-dimensional hull", |h| h.len() >= 3)
        .prop_map(|h| RationalPolygon::from_ints(&h).expect("convex hull"))
}

/// Products of the elementary unimodular matrices.
fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::collection::vec(0usize..4, 1..5).prop_map(|steps| {
        let mut m = [[1i64, 0], [0, 1]];
        for s in steps {
            let e = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[1, -1], [0, 1]], [[0, -1], [1, 0]]][s];
            m = [
                [e[0][0] * m[0][0] + e[0][1] * m[1][0], e[0][0] * m[0][1] + e[0][1] * m[1][1]],
                [e[1][0] * m[0][0] + e[1][1] * m[1][0], e[1][0] * m[0][1] + e[1][1] * m[1][1]],
            ];
        }
        m
    })
}

/// A rational point of the polygon from barycentric weights.
fn interior_point(p: &RationalPolygon, w: &[u32]) -> [Q; 2] {
    let v = p.vertices();
    let total: u32 = w.iter().take(v.len()).sum::<u32>().max(1);
    let mut x = [q_int(0), q_int(0)];
    for (i, pt) in v.iter().enumerate() {
        let wi = q(*w.get(i).unwrap_or(&0) as i64, total as i64);
        x[0] += wi.clone() * pt[0].clone();
        x[1] += wi * pt[1].clone();
    }
    if w.iter().take(v.len()).all(|&k| k == 0) {
        return v[0].clone();
    }
    x
}

fn pentagon() -> RationalPolygon {
    RationalPolygon::from_ints(&[(6, 0), (0, 6), (-6, 6), (-6, -6), (6, -6)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_is_concave_on_polygons(p in lattice_polygon(), w1 in prop::collection::vec(0u32..5, 8), w2 in prop::collection::vec(0u32..5, 8)) {
        let (a, b) = (interior_point(&p, &w1), interior_point(&p, &w2));
        let mid = [(a[0].clone() + b[0].clone()) / q_int(2), (a[1].clone() + b[1].clone()) / q_int(2)];
        let (ra, rb, rm) = (p.tropical_distance(&a).unwrap(), p.tropical_distance(&b).unwrap(), p.tropical_distance(&mid).unwrap());
        prop_assert!(rm * q_int(2) >= ra + rb);
    }

    #[test]
    fn distance_scales(p in lattice_polygon(), w in prop::collection::vec(0u32..5, 8), k in 0usize..3) {
        let r = [q(1, 2), q_int(2), q_int(3)][k].clone();
        let x = interior_point(&p, &w);
        let rx = [x[0].clone() * r.clone(), x[1].clone() * r.clone()];
        prop_assert_eq!(p.scale(&r).unwrap().tropical_distance(&rx).unwrap(), r * p.tropical_distance(&x).unwrap());
    }

    #[test]
    fn distance_is_unimodular_invariant(p in lattice_polygon(), w in prop::collection::vec(0u32..5, 8), a in unimodular(), sx in -5i64..5, sy in 0i64..3) {
        let shift = [q(sx, 3), q_int(sy)];
        let x = interior_point(&p, &w);
        let ax = [
            q_int(a[0][0]) * x[0].clone() + q_int(a[0][1]) * x[1].clone() + shift[0].clone(),
            q_int(a[1][0]) * x[0].clone() + q_int(a[1][1]) * x[1].clone() + shift[1].clone(),
        ];
        let image = p.transform(a, shift).unwrap();
        prop_assert_eq!(image.tropical_distance(&ax).unwrap(), p.tropical_distance(&x).unwrap());
    }

    #[test]
    fn boundary_terms_are_unimodular_invariant(p in lattice_polygon(), a in unimodular()) {
        let image = p.transform(a, [q(1, 2), q_int(-3)]).unwrap();
        prop_assert_eq!(term_multiset(&image).unwrap(), term_multiset(&p).unwrap());
    }

    #[test]
    fn zeta_is_homogeneous(p in lattice_polygon()) {
        let big = p.scale(&q_int(2)).unwrap();
        prop_assert_eq!(zeta_polygon_exact(&big, 3).unwrap(), q_int(8) * zeta_polygon_exact(&p, 3).unwrap());
        prop_assert_eq!(zeta_identity_exact(&big, 3).unwrap(), q_int(8) * zeta_identity_exact(&p, 3).unwrap());
    }

    #[test]
    fn model_area_and_perimeter(p in lattice_polygon()) {
        let mm = compute_minimal_model(&ConvexDomain::Polygon(p)).unwrap();
        let hat = mm.polygon.clone().unwrap();
        prop_assert_eq!(zeta_identity_exact(&hat, 2).unwrap(), hat.area());
        prop_assert_eq!(correction_h_exact(&mm, 1).unwrap(), hat.lattice_perimeter());
    }

    #[test]
    fn polygon_tree_telescopes(p in lattice_polygon()) {
        let tree = enumerate_cuts(&ConvexDomain::Polygon(p.clone()), 0.0).unwrap();
        let frame = tree.frame_exact.clone().unwrap();
        let mut levels: Vec<Q> = tree.nodes.iter().filter_map(|n| n.size_exact.clone()).collect();
        levels.sort();
        levels.dedup();
        for t in levels {
            let cut = tree.partial_cut_polygon_exact(&t).unwrap();
            prop_assert_eq!(frame.area() - cut.area(), tree.removed_area_exact(&t).unwrap());
            let removed_len: Q = tree.nodes.iter().filter_map(|n| n.size_exact.clone()).filter(|s| *s >= t).sum();
            prop_assert_eq!(frame.lattice_perimeter() - removed_len, cut.lattice_perimeter());
        }
        // all cuts applied recover Ω
        let total: Q = tree.nodes.iter().filter_map(|n| n.size_exact.clone()).map(|s| s.clone() * s / q_int(2)).sum();
        prop_assert_eq!(frame.area() - total, p.area());
    }

    #[test]
    fn identity_and_mellin_agree_on_polygons(p in lattice_polygon(), k in 0usize..3) {
        let s = c([2.5, 3.0, 4.0][k]);
        let d = ConvexDomain::Polygon(p);
        let a = zeta_via_identity(&d, s, 0.0).unwrap().value;
        let b = zeta_via_mellin(&d, s, 0.0).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-5, "{} vs {}", a, b);
    }

    #[test]
    fn correction_matches_segment_models(re in 1.1f64..5.0, im in -10.0f64..10.0, k in 0usize..6) {
        let params = [
            SegmentParams::Degenerate { k1: 0, k2: 0 },
            SegmentParams::Degenerate { k1: 2, k2: 0 },
            SegmentParams::Branching { n1: 0, n2: 0, n3: 0, n4: 0 },
            SegmentParams::Branching { n1: 1, n2: 0, n3: -1, n4: 1 },
            SegmentParams::Mixed { k: 0, n1: 1, n2: 0 },
            SegmentParams::Mixed { k: 1, n1: 0, n2: -1 },
        ][k];
        let (l, m) = (q(5, 2), q_int(1));
        let mm = compute_minimal_model(&ConvexDomain::Polygon(params.polygon(&l, &m).unwrap())).unwrap();
        let s = Complex64::new(re, im);
        let want = s * (s - 1.0) * segment_model_zeta(&params, l.to_f64(), m.to_f64(), s).unwrap();
        let got = correction_h(&mm, s);
        prop_assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0), "{} vs {}", got, want);
    }
}

#[test]
fn reflexive_models_have_one_interior_point() {
    for p in [pentagon(), RationalPolygon::from_ints(&[(0, 0), (3, 0), (0, 3)]).unwrap(), RationalPolygon::from_ints(&[(0, 0), (4, 0), (4, 4), (0, 4)]).unwrap()] {
        let mm = compute_minimal_model(&ConvexDomain::Polygon(p)).unwrap();
        assert_eq!(mm.locus.len(), 1);
        let hat = mm.polygon.unwrap();
        let (m, centre) = (mm.m_exact.unwrap(), mm.locus_exact.unwrap()[0].clone());
        let unit: Vec<[Q; 2]> = hat.vertices().iter().map(|v| [(v[0].clone() - centre[0].clone()) / m.clone(), (v[1].clone() - centre[1].clone()) / m.clone()]).collect();
        let unit = RationalPolygon::new(unit).unwrap();
        let mut interior = 0;
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let pt = [q_int(x), q_int(y)];
                if unit.contains(&pt) && unit.tropical_distance(&pt).unwrap() > q_int(0) {
                    interior += 1;
                }
            }
        }
        assert_eq!(interior, 1);
    }
}

#[test]
fn smooth_distance_is_concave() {
    let l = domain_l();
    // points of the diamond |x| + |y| ≤ 1, which lies inside L
    let pts: Vec<[f64; 2]> = (0..40)
        .map(|i| {
            let a = i as f64 * 0.7;
            let r = 0.95 * ((i * 7 % 11) as f64 / 11.0);
            let (x, y) = (a.cos(), a.sin());
            let n = x.abs() + y.abs();
            [r * x / n, r * y / n]
        })
        .collect();
    for (i, a) in pts.iter().enumerate() {
        let b = pts[(i * 13 + 5) % pts.len()];
        let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let (ra, rb, rm) = (l.tropical_distance(*a).unwrap(), l.tropical_distance(b).unwrap(), l.tropical_distance(m).unwrap());
        assert!(rm >= (ra + rb) / 2.0 - 1e-10, "{a:?} {b:?}");
    }
}

#[test]
fn chart_oracles_match_graph_minimum() {
    for d in [domain_l(), disk(1.0).unwrap()] {
        let ConvexDomain::Smooth(sd) = d else { unreachable!() };
        let chart = &sd.charts[0];
        let g = chart.oracle.graph().expect("graph form").clone();
        for a in 0..=50u64 {
            for b in 0..=(50 - a) {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                // bisection on g'(x) = −a/b
                let want = if b == 0 || a == 0 {
                    0.0
                } else {
                    let target = -(a as f64) / b as f64;
                    let (mut lo, mut hi) = (0.0f64, g.a);
                    if (g.g1)(hi) <= target {
                        lo = hi;
                    }
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if (g.g1)(mid) < target {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    a as f64 * lo + b as f64 * (g.g)(lo)
                };
                let got = chart.oracle.gamma(a, b);
                assert!((got - want).abs() <= 1e-10, "{} γ({a},{b}) = {got} vs {want}", sd.name);
            }
        }
    }
}

#[test]
fn smooth_trees_nest_and_telescope() {
    for d in [domain_l(), disk(1.0).unwrap()] {
        let tree = enumerate_cuts(&d, 1e-4).unwrap();
        for n in &tree.nodes {
            if let Some(p) = n.parent {
                assert!(n.size <= tree.nodes[p].size);
            }
        }
        for t in [1e-1, 1e-2, 1e-3, 1e-4] {
            let cut = tree.partial_cut_polygon(t).unwrap();
            assert_relative_eq!(tree.frame.area() - cut.area(), tree.removed_area(t).unwrap(), epsilon = 1e-9);
            let removed: f64 = tree.sizes().iter().take_while(|&&s| s >= t).sum();
            assert_relative_eq!(tree.frame.lattice_perimeter() - removed, cut.lattice_perimeter(), epsilon = 1e-9);
        }
    }
}

/// Distinct sizes above the threshold, descending, with their midpoints' neighbourhoods.
fn gaps(sizes: &[f64], floor: f64) -> Vec<(f64, f64)> {
    let mut d: Vec<f64> = sizes.iter().copied().filter(|&s| s > floor).collect();
    d.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    d.windows(2).map(|w| (w[0], w[1])).collect()
}

#[test]
fn normals_constant_between_cut_sizes() {
    let tree = enumerate_cuts(&domain_l(), 1e-3).unwrap();
    for (t1, t2) in gaps(tree.sizes(), 2e-3) {
        let at = |f: f64| tree.wave_front(t2 + f * (t1 - t2)).unwrap().active_normals;
        let n = at(0.25);
        assert_eq!(n, at(0.5), "between {t2} and {t1}");
        assert_eq!(n, at(0.75), "between {t2} and {t1}");
    }
}

#[test]
fn area_derivative_is_minus_perimeter() {
    let tree = enumerate_cuts(&domain_l(), 1e-4).unwrap();
    let mut worst = 0.0f64;
    for (t1, t2) in gaps(tree.sizes(), 1e-3).into_iter().step_by(7) {
        let t = 0.5 * (t1 + t2);
        let h = 0.25 * (t1 - t2);
        let da = (tree.wave_front(t + h).unwrap().area - tree.wave_front(t - h).unwrap().area) / (2.0 * h);
        worst = worst.max((da + tree.wave_front(t).unwrap().perimeter).abs());
    }
    assert!(worst <= 1e-6, "{worst}");
}

#[test]
fn smooth_routes_agree() {
    for d in [domain_l(), disk(1.0).unwrap()] {
        for s in [2.5, 3.0, 4.0] {
            let a = zeta_via_identity(&d, c(s), 1e-6).unwrap().value;
            let b = zeta_via_mellin(&d, c(s), 1e-6).unwrap().value;
            assert!((a - b).norm() <= 1e-5, "{} s = {s}: {a} vs {b}", d.name());
        }
    }
}

#[test]
fn truncation_is_monotone() {
    let l = domain_l();
    for s in [0.8, 1.5, 3.0] {
        let vals: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5].iter().map(|&e| boundary_series(&l, c(s), e).unwrap().value.re).collect();
        assert!(vals.windows(2).all(|w| w[1] >= w[0]), "s = {s}: {vals:?}");
    }
}

#[test]
fn l_charts_pair_term_by_term() {
    let tree = enumerate_cuts(&domain_l(), 1e-5).unwrap();
    let chart = |k: usize| {
        let mut v: Vec<f64> = tree.nodes.iter().filter(|n| n.chart == k).map(|n| n.size).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let first = chart(0);
    for k in 1..4 {
        assert_eq!(chart(k), first);
    }
    let s = c(1.5);
    let one: Complex64 = first.iter().map(|&x| Complex64::new(x, 0.0).powc(s)).sum();
    assert_relative_eq!(boundary_series(&domain_l(), s, 1e-5).unwrap().value.re, 4.0 * one.re, max_relative = 1e-12);
}

#[test]
fn endpoint_model_matches_exact_coefficients() {
    use tropzeta_core::farey_hata::{farey_residue_fit, WeightSpec};
    let w = WeightSpec::Builtin("cubic".into()).build().unwrap();
    let (exact, _) = farey_residue_fit(&w, 1e-7, false).unwrap();
    let (model, _) = farey_residue_fit(&w, 1e-7, true).unwrap();
    assert!((exact - model).abs() <= 0.03 * exact.abs(), "{exact} vs {model}");
}

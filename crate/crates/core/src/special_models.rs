//! Closed-form models: the parabola, the Mordell–Tornheim and Witten `SU(3)`
//! double series, `Z_L(s)` and the `D_α` family.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::corner_cutting::enumerate_cuts;
use crate::domain_model::{d_alpha, ConvexDomain};
use crate::error::{Error, Result};
use crate::lattice_arith::UnimodularQuadruple;
use crate::numeric::{cpow_real, gamma};
use crate::scalar::{q, q_int, Q};
use crate::zeta_engine::SeriesEstimate;

pub use crate::numeric::{riemann_zeta, riemann_zeta_eta};

/// `γ_{a,b} = ab/(a+b)`.
pub fn parabola_support(a: u64, b: u64) -> Result<Q> {
    if a == 0 && b == 0 {
        return Err(Error::InvalidArgument("(0, 0) has no support value".into()));
    }
    Ok(q((a * b) as i64, (a + b) as i64))
}

/// `1/((a+b)(c+d)(a+b+c+d))`.
pub fn parabola_defect(qd: &UnimodularQuadruple) -> Q {
    let (p, r) = ((qd.a + qd.b) as i64, (qd.c + qd.d) as i64);
    q(1, p * r * (p + r))
}

/// The same defect through the support values.
pub fn parabola_defect_from_support(qd: &UnimodularQuadruple) -> Result<Q> {
    let (ma, mb) = qd.mediant();
    let v = parabola_support(qd.a, qd.b)? + parabola_support(qd.c, qd.d)? - parabola_support(ma, mb)?;
    Ok(if v < Q::zero() { -v } else { v })
}

/// `Γ(1/3)³/(2π√3)`: residue at `2/3` of `Σ_{p,q≥1} (pq(p+q))^{-s}`.
pub fn double_series_residue() -> f64 {
    gamma(1.0 / 3.0).powi(3) / (2.0 * PI * 3f64.sqrt())
}

/// `Res_{s=2/3} ζ_SU(3)(s) = 4^{1/3}/(2π√3)·Γ(1/3)³`.
pub fn witten_residue_two_thirds() -> f64 {
    4f64.cbrt() / (2.0 * PI * 3f64.sqrt()) * gamma(1.0 / 3.0).powi(3)
}

/// `ζ_SU(3)(0) = 1/3`.
pub const WITTEN_AT_ZERO: f64 = 1.0 / 3.0;

/// `Σ_{(p,q)=1, p,q ≤ P_max} (pq(p+q))^{-s}`.
pub fn mordell_tornheim_primitive(s: Complex64, p_max: u64) -> Result<SeriesEstimate> {
    if s.re <= 2.0 / 3.0 {
        return Err(Error::OutOfRange("series needs Re(s) > 2/3".into()));
    }
    if p_max < 2 {
        return Err(Error::InvalidArgument("P_max must be at least 2".into()));
    }
    let mut acc = Complex64::zero();
    let mut n = 0;
    for p in 1..=p_max {
        for qq in 1..=p_max {
            if p.gcd(&qq) == 1 {
                acc += cpow_real((p * qq * (p + qq)) as f64, -s);
                n += 1;
            }
        }
    }
    Ok(SeriesEstimate { value: acc, cutoff: 1.0 / (p_max as f64).powi(3), terms_used: n, tail_hint: None })
}

/// `Σ (pq(p+q))^{-s}` over pairs with `pq(p+q) ≤ x`; primitive pairs only when `primitive`.
fn double_sum_by_value(s: Complex64, x: f64, primitive: bool) -> (Complex64, usize) {
    let mut acc = Complex64::zero();
    let mut n = 0;
    let mut p = 1u64;
    while (p * (p + 1)) as f64 <= x {
        let mut qq = 1u64;
        loop {
            let v = (p * qq * (p + qq)) as f64;
            if v > x {
                break;
            }
            if !primitive || p.gcd(&qq) == 1 {
                acc += cpow_real(v, -s);
                n += 1;
            }
            qq += 1;
        }
        p += 1;
    }
    (acc, n)
}

/// `Σ_{(p,q)=1} (pq(p+q))^{-s}` truncated to terms `≥ ε^s`, i.e. sizes `1/(pq(p+q)) ≥ ε`.
pub fn parabola_series_truncated(s: Complex64, eps: f64) -> SeriesEstimate {
    let (v, n) = double_sum_by_value(s, 1.0 / eps, true);
    SeriesEstimate { value: v, cutoff: eps, terms_used: n, tail_hint: None }
}

/// `ζ_SU(3)(s) = 2^s Σ_{p,q≥1} (pq(p+q))^{-s}`, terms with `pq(p+q) ≤ X` summed and the rest
/// replaced by the counting tail `R X^{2/3−s}/(s−2/3)`.
pub fn witten_su3(s: Complex64, cutoff: f64) -> Result<SeriesEstimate> {
    if s.re <= 2.0 / 3.0 {
        return Err(Error::OutOfRange("series needs Re(s) > 2/3".into()));
    }
    let (v, n) = double_sum_by_value(s, cutoff, false);
    let tail = double_series_residue() * cpow_real(cutoff, 2.0 / 3.0 - s) / (s - 2.0 / 3.0);
    let two_s = cpow_real(2.0, s);
    Ok(SeriesEstimate { value: two_s * (v + tail), cutoff, terms_used: n, tail_hint: Some((two_s * tail).norm()) })
}

/// `Z_L(s) = (8 − 2^{2−s} ζ_SU(3)(s)/ζ(3s)) / (s(s−1))` with the double sum cut at `pq(p+q) ≤ X`.
pub fn zeta_l(s: Complex64, cutoff: f64) -> Result<Complex64> {
    if s.norm() == 0.0 || (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole);
    }
    let w = witten_su3(s, cutoff)?.value;
    let z3 = riemann_zeta(3.0 * s)?;
    Ok((8.0 - cpow_real(2.0, 2.0 - s) * w / z3) / (s * (s - 1.0)))
}

/// `Z_L(s)` with the boundary series truncated at sizes `≥ ε`, to compare with a cut tree of threshold `ε`.
pub fn zeta_l_truncated(s: Complex64, eps: f64) -> Result<Complex64> {
    if s.norm() == 0.0 || (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole);
    }
    let f = 4.0 * parabola_series_truncated(s, eps).value;
    Ok((8.0 - f) / (s * (s - 1.0)))
}

/// `Res_{s=0} Z_L = −(8 − 4 ζ_SU(3)(0)/ζ(0))`.
pub fn zeta_l_residue_zero() -> Result<f64> {
    let z0 = riemann_zeta(Complex64::new(0.0, 0.0))?.re;
    Ok(-(8.0 - 4.0 * WITTEN_AT_ZERO / z0))
}

/// `Res_{s=2/3} Z_L = (18√3/π³)Γ(1/3)³`.
pub fn zeta_l_residue_two_thirds() -> f64 {
    18.0 * 3f64.sqrt() / PI.powi(3) * gamma(1.0 / 3.0).powi(3)
}

/// `Res_{s=2/3} Z_Ω = (9√3/(2·4^{1/3}π³))Γ(1/3)³·Length_eq(∂Ω)`.
pub fn residue_per_equiaffine_length() -> f64 {
    9.0 * 3f64.sqrt() / (2.0 * 4f64.cbrt() * PI.powi(3)) * gamma(1.0 / 3.0).powi(3)
}

#[derive(Debug, Clone, Serialize)]
pub struct DAlphaModel {
    pub alpha: f64,
    pub n_max: u64,
    #[serde(skip)]
    pub domain: ConvexDomain,
    /// Cut sizes read off the corner-cutting tree, descending.
    pub sizes: Vec<f64>,
    /// `n^{−1/α}` for `n = 1..=n_max`.
    pub expected: Vec<f64>,
}

impl DAlphaModel {
    /// `Σ_{n ≤ n_max} n^{−s/α}`.
    pub fn expected_series(&self, s: Complex64) -> Complex64 {
        self.expected.iter().rev().map(|&x| cpow_real(x, s)).sum()
    }

    pub fn boundary_series(&self, s: Complex64) -> Complex64 {
        self.sizes.iter().rev().map(|&x| cpow_real(x, s)).sum()
    }
}

pub fn construct_d_alpha(alpha: f64, n_max: u64) -> Result<DAlphaModel> {
    let domain = d_alpha(alpha, n_max)?;
    let expected: Vec<f64> = (1..=n_max).map(|n| (n as f64).powf(-1.0 / alpha)).collect();
    let eps = expected.last().copied().unwrap_or(1.0) * 0.5;
    let tree = enumerate_cuts(&domain, eps)?;
    let sizes = tree.sizes().to_vec();
    Ok(DAlphaModel { alpha, n_max, domain, sizes, expected })
}

/// Exact `ζ_SU(3)`-free check value: `Σ_{(p,q)=1} (pq(p+q))^{-2} = 1/3`.
pub fn mordell_tornheim_at_two() -> Q {
    q_int(1) / q_int(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain_model::domain_l;
    use crate::numeric::zeta_real;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn parabola_examples() {
        assert_eq!(parabola_support(1, 0).unwrap(), q_int(0));
        assert_eq!(parabola_support(1, 1).unwrap(), q(1, 2));
        assert_eq!(parabola_support(2, 3).unwrap(), q(6, 5));
        assert!(parabola_support(0, 0).is_err());
        let d = |a, b, cc, dd| parabola_defect(&UnimodularQuadruple::new(a, b, cc, dd).unwrap());
        assert_eq!(d(1, 0, 0, 1), q(1, 2));
        assert_eq!(d(1, 1, 0, 1), q(1, 6));
        assert_eq!(d(2, 1, 1, 1), q(1, 30));
    }

    #[test]
    fn mordell_tornheim_small() {
        let v = mordell_tornheim_primitive(c(1.0), 3).unwrap().value.re;
        assert_relative_eq!(v, 16.0 / 15.0, epsilon = 1e-14);
        let v = mordell_tornheim_primitive(c(2.0), 2000).unwrap().value.re;
        assert!((v - 1.0 / 3.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn witten_values() {
        let z6 = PI.powi(6) / 945.0;
        let w = witten_su3(c(2.0), 1e9).unwrap().value.re;
        assert!((w - 4.0 * z6 / 3.0).abs() < 1e-9, "{w}");
        let prim = mordell_tornheim_primitive(c(2.0), 2000).unwrap().value.re;
        assert!((w / 4.0 - prim * zeta_real(6.0).unwrap()).abs() < 1e-9);
        assert_relative_eq!(witten_residue_two_thirds(), 2f64.powf(2.0 / 3.0) * double_series_residue(), max_relative = 1e-14);
    }

    #[test]
    fn zeta_l_values() {
        assert!((zeta_l(c(2.0), 1e9).unwrap().re - 10.0 / 3.0).abs() < 1e-9);
        assert!((zeta_l_residue_zero().unwrap() + 32.0 / 3.0).abs() < 1e-12);
        assert!(matches!(zeta_l(c(1.0), 1e6), Err(Error::Pole)));
        // 4·4^{1/3} = 4^{4/3} equiaffine length of ∂L
        assert_relative_eq!(zeta_l_residue_two_thirds(), residue_per_equiaffine_length() * 4f64.powf(4.0 / 3.0), max_relative = 1e-13);
    }

    #[test]
    fn riemann_zeta_two_routes() {
        let a = riemann_zeta(c(2.4)).unwrap();
        let b = riemann_zeta_eta(c(2.4)).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
        assert_relative_eq!(zeta_real(2.0).unwrap(), PI * PI / 6.0, max_relative = 1e-13);
    }

    #[test]
    fn parabola_tree_matches_coprime_sizes() {
        let eps = 1e-4;
        let tree = enumerate_cuts(&domain_l(), eps).unwrap();
        let mut got: Vec<f64> = tree.nodes.iter().filter(|n| n.chart == 0).map(|n| n.size).collect();
        let mut want = Vec::new();
        for p in 1..200u64 {
            for qq in 1..200u64 {
                let v = 1.0 / (p * qq * (p + qq)) as f64;
                if p.gcd(&qq) == 1 && v >= eps {
                    want.push(v);
                }
            }
        }
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-15);
        }
    }

    #[test]
    fn l_routes_at_matched_truncation() {
        let eps = 1e-6;
        let tree = enumerate_cuts(&domain_l(), eps).unwrap();
        for s in [1.5, 2.0, 3.0] {
            let a = crate::zeta_engine::zeta_via_identity_tree(&tree, c(s)).unwrap().value;
            let b = zeta_l_truncated(c(s), eps).unwrap();
            assert!((a - b).norm() < 1e-9, "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn d_alpha_series() {
        let m = construct_d_alpha(0.5, 200).unwrap();
        assert_eq!(m.sizes.len(), 200);
        for (a, b) in m.sizes.iter().zip(&m.expected) {
            assert!((a - b).abs() <= 1e-15 * b);
        }
        let s = c(1.0);
        assert!((m.boundary_series(s) - m.expected_series(s)).norm() < 1e-13);
    }

    proptest! {
        #[test]
        fn defect_identity(a in 0u64..30, b in 0u64..30, k in 1u64..20) {
            // build a unimodular quadruple from (a,b) via the extended gcd
            prop_assume!(a > 0 && a.gcd(&b) == 1);
            let e = (a as i64).extended_gcd(&(b as i64));
            // a·x + b·y = 1 ⇒ (c,d) = (−y, x) + t(a,b) with nonnegative entries
            let (mut cc, mut dd) = (-e.y, e.x);
            while cc < 0 || dd < 0 {
                cc += a as i64;
                dd += b as i64;
            }
            let (cc, dd) = ((cc + (k as i64 - 1) * a as i64) as u64, (dd + (k as i64 - 1) * b as i64) as u64);
            let qd = UnimodularQuadruple::new(a, b, cc, dd).unwrap();
            prop_assert_eq!(parabola_defect(&qd), parabola_defect_from_support(&qd).unwrap());
        }
    }
}

//! Exact integer and modular arithmetic: primitive vectors, modular inverses,
//! multiplicative functions, the Farey and coprime-pair bijections, and
//! Kloosterman sums.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A primitive integer vector, `gcd(|x|,|y|) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimitiveVector {
    pub x: i64,
    pub y: i64,
}

impl PrimitiveVector {
    pub fn new(x: i64, y: i64) -> Result<Self> {
        if (x, y) == (0, 0) || x.gcd(&y) != 1 {
            return Err(Error::NotCoprime(x, y));
        }
        Ok(Self { x, y })
    }

    /// Divides out the content of a nonzero integer vector.
    pub fn normalize(x: i64, y: i64) -> Result<Self> {
        let g = x.gcd(&y);
        if g == 0 {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        Ok(Self { x: x / g, y: y / g })
    }

    pub(crate) const fn raw(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn det(self, o: Self) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot_i(self, o: Self) -> i64 {
        self.x * o.x + self.y * o.y
    }

    pub fn dot_f(self, p: [f64; 2]) -> f64 {
        self.x as f64 * p[0] + self.y as f64 * p[1]
    }

    /// Sum of two vectors; primitive whenever the pair is unimodular.
    pub fn plus(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y }
    }

    pub fn scaled_sum(self, a: i64, o: Self, b: i64) -> (i64, i64) {
        (a * self.x + b * o.x, a * self.y + b * o.y)
    }

    pub fn neg(self) -> Self {
        Self { x: -self.x, y: -self.y }
    }

    pub fn norm(self) -> f64 {
        ((self.x * self.x + self.y * self.y) as f64).sqrt()
    }

    /// Half-plane index used for exact angular ordering: 0 for angles in `[0, π)`, 1 otherwise.
    fn half(self) -> u8 {
        if self.y > 0 || (self.y == 0 && self.x > 0) {
            0
        } else {
            1
        }
    }

    /// Exact comparison of polar angles in `[0, 2π)`.
    pub fn angle_cmp(self, o: Self) -> std::cmp::Ordering {
        self.half().cmp(&o.half()).then_with(|| 0.cmp(&self.det(o)))
    }
}

/// `a·d − b·c = 1` with nonnegative entries; the normals `(a,b)` and `(c,d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnimodularQuadruple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl UnimodularQuadruple {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        if (a as i128) * (d as i128) - (b as i128) * (c as i128) != 1 {
            return Err(Error::NotUnimodular(format!("({a},{b},{c},{d})")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn root() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    /// Children `(u, u+v)` and `(u+v, v)` in the Stern–Brocot monoid.
    pub fn children(self) -> [Self; 2] {
        let (ma, mb) = (self.a + self.c, self.b + self.d);
        [
            Self { a: self.a, b: self.b, c: ma, d: mb },
            Self { a: ma, b: mb, c: self.c, d: self.d },
        ]
    }

    pub fn mediant(self) -> (u64, u64) {
        (self.a + self.c, self.b + self.d)
    }

    /// The forward map of the coprime-pair bijection: `(a+b, c+d)`.
    pub fn to_coprime(self) -> CoprimePair {
        CoprimePair { p: self.a + self.b, q: self.c + self.d }
    }
}

/// A coprime pair of positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoprimePair {
    pub p: u64,
    pub q: u64,
}

impl CoprimePair {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 || p.gcd(&q) != 1 {
            return Err(Error::NotCoprime(p as i64, q as i64));
        }
        Ok(Self { p, q })
    }
}

/// A Farey interval `[c/d, a/b] ⊂ [0,1]` with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FareyInterval {
    pub c: u64,
    pub d: u64,
    pub a: u64,
    pub b: u64,
}

impl FareyInterval {
    pub fn new(c: u64, d: u64, a: u64, b: u64) -> Result<Self> {
        if c > d || a > b || (a as i128) * (d as i128) - (b as i128) * (c as i128) != 1 {
            return Err(Error::NotUnimodular(format!("[{c}/{d}, {a}/{b}]")));
        }
        Ok(Self { c, d, a, b })
    }

    pub fn left(&self) -> f64 {
        self.c as f64 / self.d as f64
    }

    pub fn right(&self) -> f64 {
        self.a as f64 / self.b as f64
    }

    pub fn mediant(&self) -> f64 {
        (self.a + self.c) as f64 / (self.b + self.d) as f64
    }
}

/// Modular inverse of `r` mod `b`, normalised to `{1, …, b}`.
pub fn mod_inverse(r: i64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let bi = b as i128;
    let rr = (r as i128).rem_euclid(bi);
    let e = rr.extended_gcd(&bi);
    if e.gcd != 1 {
        return Err(Error::NotInvertible(r, b));
    }
    let inv = e.x.rem_euclid(bi);
    Ok(if inv == 0 { b } else { inv as u64 })
}

/// Prime factorisation by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `(φ(b), τ(b), μ(b))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArithmeticFunctions {
    pub phi: u64,
    pub tau: u64,
    pub mu: i64,
}

pub fn arithmetic_functions(b: u64) -> ArithmeticFunctions {
    let f = factorize(b);
    let mut phi = 1u64;
    let mut tau = 1u64;
    let mut mu = 1i64;
    for &(p, e) in &f {
        phi *= (p - 1) * p.pow(e - 1);
        tau *= e as u64 + 1;
        mu = if e > 1 { 0 } else { -mu };
    }
    if b == 1 {
        return ArithmeticFunctions { phi: 1, tau: 1, mu: 1 };
    }
    ArithmeticFunctions { phi, tau, mu }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// `e(x) = exp(2πi x)` for the exact rational `num/den`, range-reduced before evaluation.
fn e_rational(num: i128, den: u64) -> Complex64 {
    let r = num.rem_euclid(den as i128) as f64 / den as f64;
    let ang = TAU * r;
    Complex64::new(ang.cos(), ang.sin())
}

/// Reduced residues `r ∈ {1..b}` with their inverses.
fn reduced_residues(b: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=b).filter_map(move |r| mod_inverse(r as i64, b).ok().map(|inv| (r, inv)))
}

/// Complete Kloosterman sum `S(n, h; b) = Σ_{r mod b, (r,b)=1} e((n r̄ + h r)/b)`.
pub fn kloosterman_complete(n: i64, h: i64, b: u64) -> Result<Complex64> {
    if b == 0 {
        return Err(Error::InvalidArgument("b must be positive".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (r, inv) in reduced_residues(b) {
        acc += e_rational(n as i128 * inv as i128 + h as i128 * r as i128, b);
    }
    Ok(acc)
}

/// Incomplete Kloosterman sum `K_b(n; R) = Σ_{1≤r≤R, (r,b)=1} e(n r̄ / b)`.
pub fn kloosterman_incomplete(n: i64, b: u64, big_r: u64) -> Result<Complex64> {
    if b == 0 || big_r == 0 || big_r > b {
        return Err(Error::OutOfRange(format!("R = {big_r} not in [1, {b}]")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (_, inv) in reduced_residues(b).take_while(|&(r, _)| r <= big_r) {
        acc += e_rational(n as i128 * inv as i128, b);
    }
    Ok(acc)
}

/// The Farey interval attached to coprime denominators `(b, d)`:
/// `a = d⁻¹ mod b ∈ {1..b}`, `c = (ad − 1)/b`.
pub fn farey_from_denominators(b: u64, d: u64) -> Result<FareyInterval> {
    if b == 0 || d == 0 || b.gcd(&d) != 1 {
        return Err(Error::NotCoprime(b as i64, d as i64));
    }
    let a = mod_inverse(d as i64, b)?;
    let c = (a as u128 * d as u128 - 1) / b as u128;
    FareyInterval::new(c as u64, d, a, b)
}

/// Inverse of `(a,b,c,d) ↦ (a+b, c+d)`: the unique `b ∈ [0,p)` with `qb ≡ −1 (mod p)`.
pub fn quadruple_from_coprime(pair: CoprimePair) -> Result<UnimodularQuadruple> {
    let CoprimePair { p, q } = CoprimePair::new(pair.p, pair.q)?;
    let b = if p == 1 {
        0
    } else {
        let inv = mod_inverse(q as i64, p)? % p;
        (p - inv) % p
    };
    let d = (q as u128 * b as u128 + 1) / p as u128;
    let d = d as u64;
    UnimodularQuadruple::new(p - b, b, q - d, d)
}

/// All coprime `(b, d)` with `max(b, d) ≤ n`, ordered by `max(b,d)` then lexicographically.
pub fn coprime_pairs_by_max(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for k in 1..=n {
        let mut row: Vec<(u64, u64)> = Vec::new();
        for j in 1..=k {
            if j.gcd(&k) == 1 {
                row.push((j, k));
                if j != k {
                    row.push((k, j));
                }
            }
        }
        row.sort_unstable();
        out.extend(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 5).unwrap(), 1);
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(2, 4), Err(Error::NotInvertible(2, 4)));
        assert_eq!(mod_inverse(-1, 7).unwrap(), 6);
    }

    #[test]
    fn arithmetic_function_examples() {
        assert_eq!(arithmetic_functions(1), ArithmeticFunctions { phi: 1, tau: 1, mu: 1 });
        assert_eq!(arithmetic_functions(12), ArithmeticFunctions { phi: 4, tau: 6, mu: 0 });
        assert_eq!(arithmetic_functions(7), ArithmeticFunctions { phi: 6, tau: 2, mu: -1 });
    }

    #[test]
    fn kloosterman_examples() {
        for b in 1..30u64 {
            let s = kloosterman_complete(0, 0, b).unwrap();
            assert!((s.re - arithmetic_functions(b).phi as f64).abs() < 1e-9);
            let c = kloosterman_complete(1, 0, b).unwrap();
            assert!((c.re - arithmetic_functions(b).mu as f64).abs() < 1e-9, "b={b}");
            assert!(c.im.abs() < 1e-12);
        }
        let s = kloosterman_complete(1, 1, 2).unwrap();
        assert!((s.re - 1.0).abs() < 1e-12 && s.im.abs() < 1e-12);
    }

    #[test]
    fn incomplete_examples() {
        let k = kloosterman_incomplete(0, 9, 9).unwrap();
        assert!((k.re - 6.0).abs() < 1e-12);
        let k = kloosterman_incomplete(1, 5, 5).unwrap();
        assert!((k.re + 1.0).abs() < 1e-12 && k.im.abs() < 1e-12);
        assert!(kloosterman_incomplete(1, 5, 6).is_err());
        assert!(kloosterman_incomplete(1, 5, 0).is_err());
    }

    #[test]
    fn farey_examples() {
        assert_eq!(farey_from_denominators(1, 1).unwrap(), FareyInterval { c: 0, d: 1, a: 1, b: 1 });
        assert_eq!(farey_from_denominators(2, 3).unwrap(), FareyInterval { c: 1, d: 3, a: 1, b: 2 });
        assert!(farey_from_denominators(2, 4).is_err());
    }

    #[test]
    fn quadruple_examples() {
        let f = |p, q| quadruple_from_coprime(CoprimePair { p, q }).unwrap();
        assert_eq!(f(1, 1), UnimodularQuadruple { a: 1, b: 0, c: 0, d: 1 });
        assert_eq!(f(2, 3), UnimodularQuadruple { a: 1, b: 1, c: 1, d: 2 });
        assert_eq!(f(3, 2), UnimodularQuadruple { a: 2, b: 1, c: 1, d: 1 });
        assert!(quadruple_from_coprime(CoprimePair { p: 2, q: 4 }).is_err());
    }

    #[test]
    fn angle_order() {
        let v = |x, y| PrimitiveVector::raw(x, y);
        let mut xs = vec![v(0, -1), v(-1, 0), v(1, 1), v(1, 0), v(0, 1), v(1, -1)];
        xs.sort_by(|a, b| a.angle_cmp(*b));
        assert_eq!(xs, vec![v(1, 0), v(1, 1), v(0, 1), v(-1, 0), v(0, -1), v(1, -1)]);
    }
}

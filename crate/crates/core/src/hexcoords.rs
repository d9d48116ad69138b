//! Homogeneous coordinates on the plane `t1 + t2 + t3 = 0`.
//!
//! A point of the plane is stored as `(t1, t2)`; `t3 = -t1 - t2` is produced
//! on read so the plane constraint can never drift. The hexagon `Ω` is the
//! slice of `[-1, 1)^3` by the plane, and `Δ` is the closed triangle
//! `0 <= t1, t2, -t3 <= 1`.
//!
//! Periodicity is with respect to the hexagonal lattice, which in cell
//! coordinates `s = ((2 t1 + t2) / 3, (t1 + 2 t2) / 3)` is exactly `Z^2`.
//! Every exponential then reads `φ_j(t) = exp(2πi (j1 s1 + j2 s2))`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{HexError, Result};

/// Absolute tolerance for the plane constraint when building a point from
/// three coordinates.
pub const PLANE_TOL: f64 = 1e-12;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// A point in homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HexPoint {
    t1: f64,
    t2: f64,
}

impl HexPoint {
    pub const ORIGIN: HexPoint = HexPoint { t1: 0.0, t2: 0.0 };

    pub fn new(t1: f64, t2: f64) -> Self {
        HexPoint { t1, t2 }
    }

    /// Builds a point from all three coordinates, rejecting triples that are
    /// not on the plane.
    pub fn from_triple(t1: f64, t2: f64, t3: f64) -> Result<Self> {
        if (t1 + t2 + t3).abs() > PLANE_TOL {
            return Err(HexError::OffPlane(t1, t2, t3));
        }
        Ok(HexPoint { t1, t2 })
    }

    /// Inverse of [`HexPoint::cell`].
    pub fn from_cell(s1: f64, s2: f64) -> Self {
        HexPoint {
            t1: 2.0 * s1 - s2,
            t2: 2.0 * s2 - s1,
        }
    }

    #[inline]
    pub fn t1(&self) -> f64 {
        self.t1
    }

    #[inline]
    pub fn t2(&self) -> f64 {
        self.t2
    }

    #[inline]
    pub fn t3(&self) -> f64 {
        -self.t1 - self.t2
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3()]
    }

    /// Cell coordinates `(s1, s2)`; the lattice becomes `Z^2` there.
    #[inline]
    pub fn cell(&self) -> (f64, f64) {
        t_to_s(*self)
    }

    /// `(t1^2 + t2^2)^{1/2}`, the step length used by the modulus of smoothness.
    pub fn planar_norm(&self) -> f64 {
        self.t1.hypot(self.t2)
    }

    /// `max(|t1|, |t2|, |t3|)`.
    pub fn hex_norm(&self) -> f64 {
        self.t1.abs().max(self.t2.abs()).max(self.t3().abs())
    }

    /// Euclidean length of `(t1, t2, t3)` in `R^3`; invariant under the
    /// reflection group.
    pub fn euclid_norm(&self) -> f64 {
        let t3 = self.t3();
        (self.t1 * self.t1 + self.t2 * self.t2 + t3 * t3).sqrt()
    }

    /// Dot product with an integer frequency, `j1 t1 + j2 t2 + j3 t3`.
    pub fn dot(&self, j: HexIndex) -> f64 {
        j.j1 as f64 * self.t1 + j.j2 as f64 * self.t2 + j.j3() as f64 * self.t3()
    }
}

impl Add for HexPoint {
    type Output = HexPoint;
    fn add(self, o: HexPoint) -> HexPoint {
        HexPoint::new(self.t1 + o.t1, self.t2 + o.t2)
    }
}

impl Sub for HexPoint {
    type Output = HexPoint;
    fn sub(self, o: HexPoint) -> HexPoint {
        HexPoint::new(self.t1 - o.t1, self.t2 - o.t2)
    }
}

impl Neg for HexPoint {
    type Output = HexPoint;
    fn neg(self) -> HexPoint {
        HexPoint::new(-self.t1, -self.t2)
    }
}

impl Mul<f64> for HexPoint {
    type Output = HexPoint;
    fn mul(self, k: f64) -> HexPoint {
        HexPoint::new(self.t1 * k, self.t2 * k)
    }
}

impl fmt::Display for HexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.t1, self.t2, self.t3())
    }
}

/// Cartesian `(x1, x2)` to homogeneous coordinates.
pub fn to_homogeneous(x1: f64, x2: f64) -> HexPoint {
    HexPoint::new(-x2 / 2.0 + SQRT3 * x1 / 2.0, x2)
}

/// Homogeneous to Cartesian, `x = H (2 t1 + t2, t1 + 2 t2) / 3`.
pub fn from_homogeneous(t: HexPoint) -> (f64, f64) {
    let a = 2.0 * t.t1 + t.t2;
    let b = t.t1 + 2.0 * t.t2;
    (SQRT3 * a / 3.0, (2.0 * b - a) / 3.0)
}

pub fn t_to_s(t: HexPoint) -> (f64, f64) {
    ((2.0 * t.t1 + t.t2) / 3.0, (t.t1 + 2.0 * t.t2) / 3.0)
}

pub fn s_to_t(s1: f64, s2: f64) -> HexPoint {
    HexPoint::from_cell(s1, s2)
}

/// Fractional part in `[0, 1)`.
#[inline]
pub(crate) fn frac01(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Lattice representative whose cell coordinates lie in `[0, 1)^2`.
pub fn reduce_mod3(t: HexPoint) -> HexPoint {
    let (s1, s2) = t_to_s(t);
    HexPoint::from_cell(frac01(s1), frac01(s2))
}

/// Lattice representative inside the half-open hexagon `Ω`.
pub fn reduce_to_omega(t: HexPoint) -> HexPoint {
    let (s1, s2) = t_to_s(t);
    let (f1, f2) = (frac01(s1), frac01(s2));
    let mut best = HexPoint::from_cell(f1, f2);
    let mut best_violation = f64::INFINITY;
    for (d1, d2) in [
        (0.0, 0.0),
        (-1.0, 0.0),
        (0.0, -1.0),
        (-1.0, -1.0),
        (1.0, 0.0),
        (0.0, 1.0),
        (1.0, 1.0),
        (-1.0, 1.0),
        (1.0, -1.0),
    ] {
        let p = HexPoint::from_cell(f1 + d1, f2 + d2);
        if contains_omega(p, 0.0) {
            return p;
        }
        let v = omega_violation(p);
        if v < best_violation {
            best_violation = v;
            best = p;
        }
    }
    best
}

fn omega_violation(t: HexPoint) -> f64 {
    let c = [t.t1, t.t2, -t.t3()];
    c.iter()
        .map(|&x| (-1.0 - x).max(x - 1.0).max(0.0))
        .fold(0.0, f64::max)
}

/// Membership in `Ω = {-1 <= t1, t2, -t3 < 1}`.
///
/// `tol >= 0` widens the closed sides and shrinks the open sides, so that a
/// point within `tol` of the boundary goes to the same tile as the exact
/// boundary point would.
pub fn contains_omega(t: HexPoint, tol: f64) -> bool {
    [t.t1, t.t2, -t.t3()]
        .iter()
        .all(|&x| x >= -1.0 - tol && x < 1.0 - tol)
}

/// Membership in the closed triangle `Δ = {0 <= t1, t2, -t3 <= 1}`.
pub fn contains_delta(t: HexPoint, tol: f64) -> bool {
    let m = -t.t3();
    t.t1 >= -tol && t.t2 >= -tol && m >= -tol && m <= 1.0 + tol
}

/// An integer frequency `j` with `j1 + j2 + j3 = 0`.
///
/// Ordering is lexicographic on `(j1, j2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HexIndex {
    pub j1: i64,
    pub j2: i64,
}

impl HexIndex {
    pub const ZERO: HexIndex = HexIndex { j1: 0, j2: 0 };

    pub fn new(j1: i64, j2: i64) -> Self {
        HexIndex { j1, j2 }
    }

    pub fn from_triple(j1: i64, j2: i64, j3: i64) -> Result<Self> {
        if j1 + j2 + j3 != 0 {
            return Err(HexError::Parse(format!(
                "index ({j1}, {j2}, {j3}) does not sum to zero"
            )));
        }
        Ok(HexIndex { j1, j2 })
    }

    #[inline]
    pub fn j3(&self) -> i64 {
        -self.j1 - self.j2
    }

    pub fn triple(&self) -> [i64; 3] {
        [self.j1, self.j2, self.j3()]
    }

    /// `|j|_H = max(|j1|, |j2|, |j3|)`.
    #[inline]
    pub fn hex_degree(&self) -> i64 {
        self.j1.abs().max(self.j2.abs()).max(self.j3().abs())
    }

    pub fn neg(&self) -> HexIndex {
        HexIndex::new(-self.j1, -self.j2)
    }

    pub fn scale(&self, k: i64) -> HexIndex {
        HexIndex::new(self.j1 * k, self.j2 * k)
    }
}

impl Add for HexIndex {
    type Output = HexIndex;
    fn add(self, o: HexIndex) -> HexIndex {
        HexIndex::new(self.j1 + o.j1, self.j2 + o.j2)
    }
}

impl Sub for HexIndex {
    type Output = HexIndex;
    fn sub(self, o: HexIndex) -> HexIndex {
        HexIndex::new(self.j1 - o.j1, self.j2 - o.j2)
    }
}

impl fmt::Display for HexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.j1, self.j2, self.j3())
    }
}

/// `exp(2πi j·t / 3)`.
#[inline]
pub fn phi(j: HexIndex, t: HexPoint) -> Complex64 {
    let (s1, s2) = t_to_s(t);
    let phase = j.j1 as f64 * s1 + j.j2 as f64 * s2;
    cis_turns(phase)
}

/// `exp(2πi x)` with `x` reduced to `[-1/2, 1/2]` first.
#[inline]
pub(crate) fn cis_turns(x: f64) -> Complex64 {
    let r = x - x.round();
    let (s, c) = (2.0 * PI * r).sin_cos();
    Complex64::new(c, s)
}

fn check_degree(n: i64) -> Result<()> {
    if n < 0 {
        Err(HexError::NegativeDegree(n))
    } else {
        Ok(())
    }
}

/// `ℍ_n`: all indices with `|j|_H <= n`, lexicographic in `(j1, j2)`.
/// It has `3n^2 + 3n + 1` elements.
pub fn index_ball(n: i64) -> Result<Vec<HexIndex>> {
    check_degree(n)?;
    let mut out = Vec::with_capacity((3 * n * n + 3 * n + 1) as usize);
    for j1 in -n..=n {
        let lo = (-n).max(-n - j1);
        let hi = n.min(n - j1);
        for j2 in lo..=hi {
            out.push(HexIndex::new(j1, j2));
        }
    }
    Ok(out)
}

/// `𝕁_n = ℍ_n \ ℍ_{n-1}`, lexicographic; `6n` elements for `n >= 1`.
pub fn index_shell(n: i64) -> Result<Vec<HexIndex>> {
    check_degree(n)?;
    Ok(index_ball(n)?
        .into_iter()
        .filter(|j| j.hex_degree() == n)
        .collect())
}

/// Elements of the reflection group `A₂`, acting on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    Identity,
    S1,
    S2,
    S3,
    /// `t σ₁σ₂ = (t σ₁) σ₂`
    S1S2,
    /// `t σ₂σ₁ = (t σ₂) σ₁`
    S2S1,
}

impl Reflection {
    /// Fixed enumeration order, also used for tie-breaking on triangle edges.
    pub const ALL: [Reflection; 6] = [
        Reflection::Identity,
        Reflection::S1,
        Reflection::S2,
        Reflection::S3,
        Reflection::S1S2,
        Reflection::S2S1,
    ];

    /// `+1` for rotations, `-1` for reflections.
    pub fn sign(&self) -> i32 {
        match self {
            Reflection::Identity | Reflection::S1S2 | Reflection::S2S1 => 1,
            _ => -1,
        }
    }

    fn permute<T: Copy + Neg<Output = T>>(&self, [a, b, c]: [T; 3]) -> [T; 3] {
        match self {
            Reflection::Identity => [a, b, c],
            Reflection::S1 => [-a, -c, -b],
            Reflection::S2 => [-b, -a, -c],
            Reflection::S3 => [-c, -b, -a],
            Reflection::S1S2 => [c, a, b],
            Reflection::S2S1 => [b, c, a],
        }
    }

    pub fn apply(&self, t: HexPoint) -> HexPoint {
        let [a, b, _] = self.permute(t.coords());
        HexPoint::new(a, b)
    }

    pub fn apply_index(&self, j: HexIndex) -> HexIndex {
        let [a, b, _] = self.permute(j.triple());
        HexIndex::new(a, b)
    }

    /// The element acting as `self` followed by `other`.
    pub fn then(&self, other: Reflection) -> Reflection {
        let probe = HexIndex::new(1, 2);
        let target = other.apply_index(self.apply_index(probe));
        *Reflection::ALL
            .iter()
            .find(|g| g.apply_index(probe) == target)
            .expect("A2 is closed under composition")
    }

    pub fn inverse(&self) -> Reflection {
        match self {
            Reflection::S1S2 => Reflection::S2S1,
            Reflection::S2S1 => Reflection::S1S2,
            g => *g,
        }
    }
}

pub fn apply_reflection(t: HexPoint, g: Reflection) -> HexPoint {
    g.apply(t)
}

//! Symmetric functions on the hexagon and cosine series on the triangle `Δ`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, HexError, Result};
use crate::hexcoords::{contains_delta, phi, reduce_to_omega, HexIndex, HexPoint, Reflection};
use crate::quadrature::{delta_nodes, HexFn};

/// Sign of a symmetrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// `𝓟^± f = (1/6) Σ_σ (±1)^{σ} f(tσ)`, where the sign is `-1` on the three
/// reflections for `𝓟^-`.
pub fn project_sym<F: HexFn + ?Sized>(f: &F, parity: Parity) -> impl Fn(HexPoint) -> Complex64 + Sync + '_ {
    move |t| symmetrize(|s| f.eval(s), parity, t)
}

#[inline]
fn symmetrize(f: impl Fn(HexPoint) -> Complex64, parity: Parity, t: HexPoint) -> Complex64 {
    Reflection::ALL
        .iter()
        .map(|g| {
            let v = f(g.apply(t));
            if parity == Parity::Odd && g.sign() < 0 {
                -v
            } else {
                v
            }
        })
        .sum::<Complex64>()
        / 6.0
}

/// An index of `Λ = {k1 >= 0, k2 >= 0, k3 <= 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriIndex(HexIndex);

impl TriIndex {
    pub fn new(k1: i64, k2: i64) -> Result<Self> {
        if k1 < 0 || k2 < 0 {
            return Err(invalid(
                "k",
                format!("({k1}, {k2})"),
                "triangle indices need k1, k2 >= 0",
            ));
        }
        Ok(TriIndex(HexIndex::new(k1, k2)))
    }

    pub fn from_index(k: HexIndex) -> Result<Self> {
        Self::new(k.j1, k.j2)
    }

    pub const ZERO: TriIndex = TriIndex(HexIndex::ZERO);

    pub fn index(&self) -> HexIndex {
        self.0
    }

    /// `-k3 = k1 + k2`, which equals `|k|_H` on `Λ`.
    pub fn degree(&self) -> usize {
        (-self.0.j3()) as usize
    }
}

/// `{k ∈ Λ : -k3 <= n}`, lexicographic in `(k1, k2)`.
pub fn lambda_set(n: usize) -> Vec<TriIndex> {
    let n = n as i64;
    (0..=n)
        .flat_map(|k1| (0..=n - k1).map(move |k2| TriIndex(HexIndex::new(k1, k2))))
        .collect()
}

/// Generalized cosine `TC_k = 𝓟^+ φ_k`.
///
/// The group has no element mapping `t` to `-t`, so `TC_k` is complex in
/// general; `conj(TC_k(t)) = TC_k(-t)`, and it is real when `k1 = k2`.
pub fn tc(k: TriIndex, t: HexPoint) -> Complex64 {
    symmetrize(|s| phi(k.0, s), Parity::Even, t)
}

/// Generalized sine `TS_k = -i 𝓟^- φ_k`.
pub fn ts(k: TriIndex, t: HexPoint) -> Complex64 {
    symmetrize(|s| phi(k.0, s), Parity::Odd, t) * Complex64::new(0.0, -1.0)
}

/// Coefficients of a cosine series `Σ c_k TC_k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CosineCoeffTable {
    entries: BTreeMap<TriIndex, Complex64>,
    quad_m: Option<usize>,
}

impl CosineCoeffTable {
    pub fn from_entries(entries: impl IntoIterator<Item = (TriIndex, Complex64)>) -> Self {
        CosineCoeffTable {
            entries: entries.into_iter().collect(),
            quad_m: None,
        }
    }

    pub fn get(&self, k: TriIndex) -> Complex64 {
        self.entries.get(&k).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (TriIndex, Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Quadrature level the coefficients came from.
    pub fn quad_m(&self) -> Option<usize> {
        self.quad_m
    }

    pub fn evaluate(&self, t: HexPoint) -> Complex64 {
        self.entries.iter().map(|(&k, &c)| c * tc(k, t)).sum()
    }

    /// Multiplies coefficient `k` by `w(-k3)`.
    pub fn degree_multiplier(&self, w: impl Fn(usize) -> f64) -> CosineCoeffTable {
        CosineCoeffTable {
            entries: self
                .entries
                .iter()
                .map(|(&k, &c)| (k, c * w(k.degree())))
                .collect(),
            quad_m: self.quad_m,
        }
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string_sig17(&self.doc())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.doc()).expect("plain data serializes")
    }

    fn doc(&self) -> CosineDoc {
        CosineDoc {
            tri_entries: self
                .iter()
                .map(|(k, v)| TriEntryDoc {
                    k: k.0.triple(),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
            quad_m: self.quad_m,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CosineDoc = serde_json::from_str(text)?;
        let mut entries = BTreeMap::new();
        for e in doc.tri_entries {
            let k = HexIndex::from_triple(e.k[0], e.k[1], e.k[2])?;
            entries.insert(TriIndex::from_index(k)?, Complex64::new(e.re, e.im));
        }
        Ok(CosineCoeffTable {
            entries,
            quad_m: doc.quad_m,
        })
    }
}

impl HexFn for CosineCoeffTable {
    fn eval(&self, t: HexPoint) -> Complex64 {
        self.evaluate(t)
    }
}

#[derive(Serialize, Deserialize)]
struct TriEntryDoc {
    k: [i64; 3],
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct CosineDoc {
    tri_entries: Vec<TriEntryDoc>,
    #[serde(rename = "M")]
    quad_m: Option<usize>,
}

/// Gram entries `⟨TC_k, TC_l⟩_Δ` over `{k ∈ Λ, -k3 <= n}` by the centroid rule.
pub fn tc_gram(n: usize, m: usize) -> Result<Vec<Vec<Complex64>>> {
    if m == 0 {
        return Err(invalid("M", m, "subdivision level must be at least 1"));
    }
    let ks = lambda_set(n);
    let nodes = delta_nodes(m);
    let values: Vec<Vec<Complex64>> = ks
        .par_iter()
        .map(|&k| nodes.iter().map(|&t| tc(k, t)).collect())
        .collect();
    let w = 1.0 / nodes.len() as f64;
    Ok((0..ks.len())
        .map(|a| {
            (0..ks.len())
                .map(|b| {
                    values[a]
                        .iter()
                        .zip(&values[b])
                        .map(|(x, y)| x * y.conj())
                        .sum::<Complex64>()
                        * w
                })
                .collect()
        })
        .collect())
}

/// `f̂_k = ⟨f, TC_k⟩_Δ / ⟨TC_k, TC_k⟩_Δ` for `k ∈ Λ`, `-k3 <= n`, both inner
/// products by the centroid rule on `M^2` sub-triangles.
pub fn cosine_coeffs<F: HexFn + ?Sized>(f: &F, n: usize, m: usize) -> Result<CosineCoeffTable> {
    if m == 0 {
        return Err(invalid("M", m, "subdivision level must be at least 1"));
    }
    let nodes = delta_nodes(m);
    let samples: Vec<Complex64> = nodes.par_iter().map(|&t| f.eval(t)).collect();
    let entries: Vec<(TriIndex, Complex64)> = lambda_set(n)
        .into_par_iter()
        .map(|k| {
            let (mut num, mut den) = (Complex64::default(), 0.0);
            for (&t, &v) in nodes.iter().zip(&samples) {
                let c = tc(k, t);
                num += v * c.conj();
                den += c.norm_sqr();
            }
            (k, num / den)
        })
        .collect();
    Ok(CosineCoeffTable {
        entries: entries.into_iter().collect(),
        quad_m: Some(m),
    })
}

/// `(C,1)` means of the cosine series: weights `(n + 1 + k3) / (n + 1)`.
pub fn cosine_cesaro1<F: HexFn + ?Sized>(f: &F, n: usize, m: usize) -> Result<CosineCoeffTable> {
    let c = cosine_coeffs(f, n, m)?;
    let np1 = (n + 1) as f64;
    Ok(c.degree_multiplier(|d| (np1 - d as f64) / np1))
}

/// Residuals of the three boundary identities a continuous symmetric
/// extension requires.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompatibilityReport {
    pub max_violation: f64,
    pub per_identity: [f64; 3],
    pub samples: usize,
}

/// Samples `t1 = i / (M - 1)`, `t2 = 1 - t1` and evaluates
/// `f(t1,t2,-1) - f(-t2,-t1,1)`, `f(t2,-1,t1) - f(-t1,1,-t2)` and
/// `f(-1,t1,t2) - f(1,-t2,-t1)`.
pub fn check_compatibility<F: HexFn + ?Sized>(f: &F, m: usize) -> Result<CompatibilityReport> {
    if m < 2 {
        return Err(invalid("M", m, "need at least 2 boundary samples"));
    }
    let p = |a: f64, b: f64, c: f64| -> Result<HexPoint> {
        HexPoint::from_triple(a, b, c).map_err(|_| HexError::OffPlane(a, b, c))
    };
    let mut per = [0.0f64; 3];
    for i in 0..m {
        let t1 = i as f64 / (m - 1) as f64;
        let t2 = 1.0 - t1;
        let pairs = [
            (p(t1, t2, -1.0)?, p(-t2, -t1, 1.0)?),
            (p(t2, -1.0, t1)?, p(-t1, 1.0, -t2)?),
            (p(-1.0, t1, t2)?, p(1.0, -t2, -t1)?),
        ];
        for (slot, (a, b)) in per.iter_mut().zip(pairs) {
            *slot = slot.max((f.eval(a) - f.eval(b)).norm());
        }
    }
    Ok(CompatibilityReport {
        max_violation: per.iter().cloned().fold(0.0, f64::max),
        per_identity: per,
        samples: m,
    })
}

/// Tolerance for deciding that a reflected point lies in `Δ`.
pub const DELTA_TOL: f64 = 1e-12;

/// The image of `t` in `Δ` under a lattice translation and a group element,
/// with the first match in [`Reflection::ALL`] order.
pub fn reduce_to_delta(t: HexPoint) -> HexPoint {
    let t0 = reduce_to_omega(t);
    let mut best = t0;
    let mut best_violation = f64::INFINITY;
    for g in Reflection::ALL {
        let s = g.apply(t0);
        if contains_delta(s, DELTA_TOL) {
            return s;
        }
        let m = -s.t3();
        let v = (-s.t1()).max(-s.t2()).max(-m).max(m - 1.0);
        if v < best_violation {
            best_violation = v;
            best = s;
        }
    }
    best
}

/// `F(t) = f(reduce_to_delta(t))`: invariant and periodic by construction,
/// continuous when `f` passes [`check_compatibility`].
pub fn extend_symmetric<F: HexFn + ?Sized>(f: &F) -> impl Fn(HexPoint) -> Complex64 + Sync + '_ {
    move |t| f.eval(reduce_to_delta(t))
}

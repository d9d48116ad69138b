//! Finite Fourier series and the summability operators acting on them.
//!
//! Every shift-invariant operator is a multiplier on coefficients. Transforms
//! between grids and coefficients use separable direct sums over the cell
//! grid: `O(N^2 (2n+1) + N (2n+1)^2)` operations for degree `n`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, HexError, Result};
use crate::hexcoords::{index_ball, phi, HexIndex, HexPoint};
use crate::kernels::{cesaro_weights, eta_weights, jackson_lambda, theta};
use crate::quadrature::{required_grid, GridFunction, HexFn, OMEGA_AREA};

/// A finite Fourier series `Σ c_j φ_j`, ordered lexicographically in `j`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoeffTable {
    entries: BTreeMap<HexIndex, Complex64>,
    grid_n: Option<usize>,
}

/// `exp(-2πi k / N)` for `k = 0..N`.
fn twiddles(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / n as f64))
        .collect()
}

#[inline]
fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

impl CoeffTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (HexIndex, Complex64)>) -> Self {
        CoeffTable {
            entries: entries.into_iter().collect(),
            grid_n: None,
        }
    }

    pub fn single(j: HexIndex, value: Complex64) -> Self {
        Self::from_entries([(j, value)])
    }

    pub fn with_grid(mut self, grid: Option<usize>) -> Self {
        self.grid_n = grid;
        self
    }

    /// Grid size the coefficients were extracted on, if any.
    pub fn grid_n(&self) -> Option<usize> {
        self.grid_n
    }

    pub fn get(&self, j: HexIndex) -> Complex64 {
        self.entries.get(&j).copied().unwrap_or_default()
    }

    pub fn insert(&mut self, j: HexIndex, value: Complex64) {
        self.entries.insert(j, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (HexIndex, Complex64)> + '_ {
        self.entries.iter().map(|(&j, &c)| (j, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `|j|_H` among stored entries (0 when empty).
    pub fn max_degree(&self) -> usize {
        self.entries
            .keys()
            .map(|j| j.hex_degree() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Drops entries with modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> CoeffTable {
        CoeffTable {
            entries: self
                .entries
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(&j, &c)| (j, c))
                .collect(),
            grid_n: self.grid_n,
        }
    }

    /// Largest `|c_{-j} - conj(c_j)|`; zero exactly when the series is real.
    pub fn real_symmetry_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&j, &c)| (self.get(j.neg()) - c.conj()).norm())
            .fold(0.0, f64::max)
    }

    /// `‖f‖_2 = (|Ω| Σ |c_j|^2)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (OMEGA_AREA * self.entries.values().map(|c| c.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn add(&self, other: &CoeffTable) -> CoeffTable {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CoeffTable) -> CoeffTable {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &CoeffTable, op: impl Fn(Complex64, Complex64) -> Complex64) -> CoeffTable {
        let mut entries = self.entries.clone();
        for (&j, &c) in &other.entries {
            let e = entries.entry(j).or_default();
            *e = op(*e, c);
        }
        for (j, e) in entries.iter_mut() {
            if !other.entries.contains_key(j) {
                *e = op(*e, Complex64::default());
            }
        }
        CoeffTable {
            entries,
            grid_n: self.grid_n.or(other.grid_n),
        }
    }

    pub fn scale(&self, s: Complex64) -> CoeffTable {
        self.map_entries(|_, c| Some(c * s))
    }

    /// Applies `f` entrywise; entries mapped to `None` are removed.
    pub fn map_entries(&self, f: impl Fn(HexIndex, Complex64) -> Option<Complex64>) -> CoeffTable {
        CoeffTable {
            entries: self
                .entries
                .iter()
                .filter_map(|(&j, &c)| f(j, c).map(|v| (j, v)))
                .collect(),
            grid_n: self.grid_n,
        }
    }

    /// Multiplies entry `j` by `m(|j|_H)`; degrees where `m` is `None` are
    /// truncated.
    pub fn radial_multiplier(&self, m: impl Fn(usize) -> Option<f64>) -> CoeffTable {
        self.map_entries(|j, c| m(j.hex_degree() as usize).map(|w| c * w))
    }

    /// Coefficients over `ℍ_n` of the trigonometric interpolant of `g`.
    /// Exact for `g` sampled from an element of `𝓗_m` whenever `N > m + n`.
    pub fn from_grid(g: &GridFunction, n: usize) -> CoeffTable {
        let size = g.size();
        let ni = n as i64;
        let w = twiddles(size, -1.0);
        let width = 2 * n + 1;
        // rows[a][j2 + n] = Σ_b g(a, b) e^{-2πi j2 b / N}
        let rows: Vec<Vec<Complex64>> = (0..size)
            .into_par_iter()
            .map(|a| {
                (-ni..=ni)
                    .map(|j2| {
                        (0..size)
                            .map(|b| g.get(a, b) * w[wrap(j2 * b as i64, size)])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let norm = 1.0 / (size * size) as f64;
        let idx = index_ball(ni).expect("non-negative degree");
        let values: Vec<Complex64> = idx
            .par_iter()
            .map(|j| {
                let col = (j.j2 + ni) as usize;
                let s: Complex64 = (0..size)
                    .map(|a| rows[a][col] * w[wrap(j.j1 * a as i64, size)])
                    .sum();
                s * norm
            })
            .collect();
        debug_assert_eq!(rows.first().map_or(width, |r| r.len()), width);
        CoeffTable {
            entries: idx.into_iter().zip(values).collect(),
            grid_n: Some(size),
        }
    }

    /// `f̂_j = ⟨f, φ_j⟩_H` for `j ∈ ℍ_n`, on the smallest exact grid `2n+1`.
    pub fn coefficients<F: HexFn + ?Sized>(f: &F, n: usize) -> Result<CoeffTable> {
        Self::coefficients_on_grid(f, n, required_grid(n as i64))
    }

    /// As [`CoeffTable::coefficients`] on a caller-chosen grid `N >= 2n+1`.
    pub fn coefficients_on_grid<F: HexFn + ?Sized>(f: &F, n: usize, grid: usize) -> Result<CoeffTable> {
        let required = required_grid(n as i64);
        if grid < required {
            return Err(HexError::GridTooSmall {
                required,
                given: grid,
            });
        }
        Ok(Self::from_grid(&GridFunction::sample(f, grid)?, n))
    }

    pub fn evaluate(&self, t: HexPoint) -> Complex64 {
        self.entries.iter().map(|(&j, &c)| c * phi(j, t)).sum()
    }

    /// Samples the series on the `N x N` cell grid.
    pub fn evaluate_grid(&self, size: usize) -> Result<GridFunction> {
        if size == 0 {
            return Err(invalid("N", size, "grid size must be at least 1"));
        }
        let w = twiddles(size, 1.0);
        // by_j1[j1] = (j1, u) with u[b] = Σ_{j2} c_{j1,j2} e^{2πi j2 b / N}
        let mut groups: BTreeMap<i64, Vec<(i64, Complex64)>> = BTreeMap::new();
        for (&j, &c) in &self.entries {
            groups.entry(j.j1).or_default().push((j.j2, c));
        }
        let by_j1: Vec<(i64, Vec<Complex64>)> = groups
            .into_par_iter()
            .map(|(j1, list)| {
                let u = (0..size)
                    .map(|b| list.iter().map(|&(j2, c)| c * w[wrap(j2 * b as i64, size)]).sum())
                    .collect();
                (j1, u)
            })
            .collect();
        let values: Vec<Complex64> = (0..size * size)
            .into_par_iter()
            .map(|idx| {
                let (a, b) = (idx / size, idx % size);
                by_j1
                    .iter()
                    .map(|(j1, u)| u[b] * w[wrap(j1 * a as i64, size)])
                    .sum()
            })
            .collect();
        GridFunction::from_values(size, values)
    }

    /// `S_n`: restriction to `ℍ_n`.
    pub fn partial_sum(&self, n: usize) -> CoeffTable {
        self.radial_multiplier(|k| (k <= n).then_some(1.0))
    }

    /// Cesàro means `S_n^δ`.
    pub fn cesaro_means(&self, n: usize, delta: f64) -> Result<CoeffTable> {
        let w = cesaro_weights(n, delta)?;
        Ok(self.radial_multiplier(|k| w.get(k).copied()))
    }

    /// Abel means `P_r`.
    pub fn abel_means(&self, r: f64) -> Result<CoeffTable> {
        if !(0.0..1.0).contains(&r) {
            return Err(invalid("r", r, "must lie in [0, 1)"));
        }
        Ok(self.radial_multiplier(|k| Some(r.powi(k as i32))))
    }

    /// The smoothed cutoff `η_n`: weight `η(|j|_H / n)`, zero beyond `2n`.
    pub fn smoothed_cutoff(&self, n: usize) -> Result<CoeffTable> {
        let w = eta_weights(n)?;
        Ok(self.radial_multiplier(|k| w.get(k).copied().filter(|&x| x != 0.0)))
    }

    /// `∂^α`, each homogeneous coordinate treated as an independent variable.
    pub fn derivative(&self, alpha: [u32; 3]) -> CoeffTable {
        let order: u32 = alpha.iter().sum();
        let factor = Complex64::new(0.0, 2.0 * PI / 3.0).powu(order);
        self.map_entries(|j, c| {
            let jt = j.triple();
            let mono: f64 = (0..3).map(|i| (jt[i] as f64).powi(alpha[i] as i32)).product();
            Some(c * factor * mono)
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CoeffTableDoc::from(self)).expect("plain data serializes")
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string_sig17(&CoeffTableDoc::from(self))
    }

    pub fn from_json(text: &str) -> Result<CoeffTable> {
        let doc: CoeffTableDoc = serde_json::from_str(text)?;
        let mut entries = BTreeMap::new();
        for e in doc.entries {
            let j = HexIndex::from_triple(e.j[0], e.j[1], e.j[2])?;
            entries.insert(j, Complex64::new(e.re, e.im));
        }
        Ok(CoeffTable {
            entries,
            grid_n: doc.grid_n,
        })
    }
}

impl HexFn for CoeffTable {
    fn eval(&self, t: HexPoint) -> Complex64 {
        self.evaluate(t)
    }

    fn as_table(&self) -> Option<&CoeffTable> {
        Some(self)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    j: [i64; 3],
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct CoeffTableDoc {
    entries: Vec<EntryDoc>,
    #[serde(rename = "grid_N")]
    grid_n: Option<usize>,
}

impl From<&CoeffTable> for CoeffTableDoc {
    fn from(c: &CoeffTable) -> Self {
        CoeffTableDoc {
            entries: c
                .iter()
                .map(|(j, v)| EntryDoc {
                    j: j.triple(),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
            grid_n: c.grid_n,
        }
    }
}

/// Parameters of the Jackson-type operator `F_n^{ρ,r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacksonParams {
    pub n: usize,
    pub r: usize,
    pub rho: usize,
}

impl JacksonParams {
    /// Smallest admissible `ρ`, namely `ceil((r + 2) / 2)`.
    pub fn default_rho(r: usize) -> usize {
        (r + 3) / 2
    }

    pub fn new(n: usize, r: usize, rho: Option<usize>) -> Result<Self> {
        let p = JacksonParams {
            n,
            r,
            rho: rho.unwrap_or_else(|| Self::default_rho(r)),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(invalid("r", self.r, "difference order must be at least 1"));
        }
        if 2 * self.rho < self.r + 2 {
            return Err(invalid("rho", self.rho, "need rho >= (r + 2) / 2"));
        }
        if self.n < self.rho {
            return Err(invalid("n", self.n, "need n >= rho"));
        }
        Ok(())
    }

    /// Degree of the inner kernel, `⌊n / (2ρ)⌋`, chosen so that the kernel
    /// `K_{n*,ρ}` and hence the output lie in `𝓗_n`.
    pub fn inner_degree(&self) -> usize {
        self.n / (2 * self.rho)
    }

    /// Degree of `K_{n*,ρ}`.
    pub fn kernel_degree(&self) -> usize {
        2 * self.rho * self.inner_degree()
    }

    /// Multiplier `w_m = |Ω| Σ_{k=1}^r (-1)^{k-1} C(r,k) Ĵ(k m)` for every
    /// `|m|_H <= n`, where `J = K_{n*,ρ}`.
    pub fn multipliers(&self) -> Result<CoeffTable> {
        self.validate()?;
        let ns = self.inner_degree();
        let rho = self.rho;
        let lambda = jackson_lambda(ns, rho)?;
        let reach = self.r * self.n;
        let grid = 2 * self.kernel_degree().max(reach) + 1;
        let p = (2 * rho) as i32;
        let g = GridFunction::sample_real(|t| lambda * theta(ns, t).powi(p), grid)?;
        let jhat = CoeffTable::from_grid(&g, reach);
        let binom = binomials(self.r);
        let entries = index_ball(self.n as i64)?
            .into_iter()
            .map(|m| {
                let w: Complex64 = (1..=self.r)
                    .map(|k| {
                        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                        jhat.get(m.scale(k as i64)) * (sign * binom[k] * OMEGA_AREA)
                    })
                    .sum();
                (m, w)
            })
            .collect();
        Ok(CoeffTable {
            entries,
            grid_n: Some(grid),
        })
    }

    /// `F_n^{ρ,r}` applied to a coefficient table.
    pub fn apply(&self, c: &CoeffTable) -> Result<CoeffTable> {
        let w = self.multipliers()?;
        Ok(c.map_entries(|j, v| ((j.hex_degree() as usize) <= self.n).then(|| v * w.get(j))))
    }
}

fn binomials(r: usize) -> Vec<f64> {
    let mut b = vec![1.0; r + 1];
    for k in 1..=r {
        b[k] = b[k - 1] * (r + 1 - k) as f64 / k as f64;
    }
    b
}

/// `F_n^{ρ,r} f`, with the coefficients of `f` extracted on a grid of size
/// `grid` (default `max(4n + 1, 2 * (kernel degree) + 1)`).
pub fn jackson_op<F: HexFn + ?Sized>(
    f: &F,
    params: JacksonParams,
    grid: Option<usize>,
) -> Result<CoeffTable> {
    params.validate()?;
    let size = grid.unwrap_or(4 * params.n + 1);
    let c = CoeffTable::coefficients_on_grid(f, params.n, size)?;
    Ok(params.apply(&c)?.with_grid(Some(size)))
}

/// Tagged choice of summability operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SummabilityMethod {
    Dirichlet { n: usize },
    Cesaro { n: usize, delta: f64 },
    Abel { r: f64 },
    Jackson(JacksonParams),
    SmoothedCutoff { n: usize },
}

impl SummabilityMethod {
    pub fn apply(&self, c: &CoeffTable) -> Result<CoeffTable> {
        match *self {
            SummabilityMethod::Dirichlet { n } => Ok(c.partial_sum(n)),
            SummabilityMethod::Cesaro { n, delta } => c.cesaro_means(n, delta),
            SummabilityMethod::Abel { r } => c.abel_means(r),
            SummabilityMethod::Jackson(p) => p.apply(c),
            SummabilityMethod::SmoothedCutoff { n } => c.smoothed_cutoff(n),
        }
    }

    /// Largest degree the method reads from its input, `None` if unbounded.
    pub fn input_degree(&self) -> Option<usize> {
        match *self {
            SummabilityMethod::Dirichlet { n } | SummabilityMethod::Cesaro { n, .. } => Some(n),
            SummabilityMethod::Jackson(p) => Some(p.n),
            SummabilityMethod::SmoothedCutoff { n } => Some(2 * n),
            SummabilityMethod::Abel { .. } => None,
        }
    }
}

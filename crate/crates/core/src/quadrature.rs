//! Exact integration of trigonometric polynomials over `Ω`, and a low-order
//! rule over the triangle `Δ`.
//!
//! The map `t -> s` sends lattice translates to integer translates, so
//! `(1/|Ω|) ∫_Ω f dt = ∫_{[0,1)^2} f(t(s)) ds`. An `N x N` equal-weight rule on
//! the unit cell integrates every `φ_j` exactly unless `j1 ≡ j2 ≡ 0 (mod N)`,
//! which makes it exact for products of elements of `𝓗_m` once `N >= 2m + 1`.

use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, HexError, Result};
use crate::hexcoords::HexPoint;

/// Area of `Ω` in `(t1, t2)` measure. All averages are normalized by it, so it
/// only shows up in unnormalized quantities such as `‖f‖_p`.
pub const OMEGA_AREA: f64 = 3.0;

/// A function of a point of the plane. Blanket-implemented for closures.
pub trait HexFn: Sync {
    fn eval(&self, t: HexPoint) -> Complex64;

    /// The coefficient table when the function is a finite series; lets grid
    /// sampling and differences run in coefficient space.
    fn as_table(&self) -> Option<&crate::operators::CoeffTable> {
        None
    }
}

impl<F> HexFn for F
where
    F: Fn(HexPoint) -> Complex64 + Sync,
{
    #[inline]
    fn eval(&self, t: HexPoint) -> Complex64 {
        self(t)
    }
}

/// Exponent of an `L^p` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lp {
    Finite(f64),
    Infinity,
}

impl Lp {
    pub fn validate(self) -> Result<Self> {
        match self {
            Lp::Finite(p) if p.is_nan() || p < 1.0 || p.is_infinite() => {
                Err(invalid("p", p, "L^p exponent must satisfy 1 <= p"))
            }
            other => Ok(other),
        }
    }
}

impl std::str::FromStr for Lp {
    type Err = HexError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Lp::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|_| HexError::Parse(format!("bad exponent `{other}`")))
                .and_then(|p| Lp::Finite(p).validate()),
        }
    }
}

impl std::fmt::Display for Lp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lp::Finite(p) => write!(f, "{p}"),
            Lp::Infinity => write!(f, "inf"),
        }
    }
}

/// Smallest grid that integrates products of two elements of `𝓗_m` exactly.
pub fn required_grid(max_degree: i64) -> usize {
    (2 * max_degree.max(0) + 1) as usize
}

/// Samples on the `N x N` grid of the unit cell; entry `(a, b)` is the value
/// at the point whose cell coordinates are `(a/N, b/N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_values(n: usize, values: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("N", n, "grid size must be at least 1"));
        }
        if values.len() != n * n {
            return Err(HexError::Parse(format!(
                "expected {} samples, got {}",
                n * n,
                values.len()
            )));
        }
        Ok(GridFunction { n, values })
    }

    /// Node `(a, b)` of an `N x N` grid.
    #[inline]
    pub fn node(n: usize, a: usize, b: usize) -> HexPoint {
        HexPoint::from_cell(a as f64 / n as f64, b as f64 / n as f64)
    }

    pub fn sample<F: HexFn + ?Sized>(f: &F, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("N", n, "grid size must be at least 1"));
        }
        if let Some(c) = f.as_table() {
            return c.evaluate_grid(n);
        }
        let values = (0..n * n)
            .into_par_iter()
            .map(|idx| f.eval(Self::node(n, idx / n, idx % n)))
            .collect();
        Ok(GridFunction { n, values })
    }

    pub fn sample_real<F>(f: F, n: usize) -> Result<Self>
    where
        F: Fn(HexPoint) -> f64 + Sync,
    {
        Self::sample(&|t| Complex64::new(f(t), 0.0), n)
    }

    /// Like [`GridFunction::sample`] for fallible functions; the first error
    /// in grid order is returned.
    pub fn try_sample<F>(f: F, n: usize) -> Result<Self>
    where
        F: Fn(HexPoint) -> Result<Complex64> + Sync,
    {
        if n == 0 {
            return Err(invalid("N", n, "grid size must be at least 1"));
        }
        let values = (0..n * n)
            .into_par_iter()
            .map(|idx| f(Self::node(n, idx / n, idx % n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GridFunction { n, values })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.values[a * self.n + b]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> GridFunction {
        GridFunction {
            n: self.n,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<GridFunction> {
        self.check_same(other)?;
        Ok(GridFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn check_same(&self, other: &GridFunction) -> Result<()> {
        if self.n != other.n {
            Err(HexError::GridMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// `(1/|Ω|) ∫_Ω f`.
    pub fn mean_integral(&self) -> Complex64 {
        let total: Complex64 = self.values.iter().sum();
        total / (self.n * self.n) as f64
    }

    /// `‖f‖_p = (∫_Ω |f|^p dt)^{1/p}`; the sup norm is the grid maximum.
    pub fn lp_norm(&self, p: Lp) -> Result<f64> {
        match p.validate()? {
            Lp::Infinity => Ok(self.max_abs()),
            Lp::Finite(p) => {
                let mean: f64 =
                    self.values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / (self.n * self.n) as f64;
                Ok((OMEGA_AREA * mean).powf(1.0 / p))
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn min_re(&self) -> f64 {
        self.values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_im_abs(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// `⟨f, g⟩_H = (1/|Ω|) ∫_Ω f conj(g)`.
    pub fn inner_product_h(&self, other: &GridFunction) -> Result<Complex64> {
        self.check_same(other)?;
        let total: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(total / (self.n * self.n) as f64)
    }

    /// Writes `N,<n>`, a column header, then `a,b,re,im` per node.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new().flexible(true).from_writer(w);
        out.write_record(["N", &self.n.to_string()])?;
        out.write_record(["a", "b", "re", "im"])?;
        for a in 0..self.n {
            for b in 0..self.n {
                let v = self.get(a, b);
                out.write_record([a.to_string(), b.to_string(), v.re.to_string(), v.im.to_string()])?;
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .flexible(true)
            .has_headers(false)
            .comment(Some(b'#'))
            .from_reader(r);
        let mut records = rdr.records();
        let head = records
            .next()
            .ok_or_else(|| HexError::Parse("empty grid file".into()))??;
        if head.get(0) != Some("N") {
            return Err(HexError::Parse("first record must be `N,<size>`".into()));
        }
        let n: usize = head
            .get(1)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| HexError::Parse("bad grid size".into()))?;
        // column header
        records.next();
        let mut values = vec![Complex64::new(f64::NAN, f64::NAN); n * n];
        let mut seen = 0usize;
        for rec in records {
            let rec = rec?;
            let field = |i: usize| -> Result<&str> {
                rec.get(i)
                    .ok_or_else(|| HexError::Parse(format!("short record {rec:?}")))
            };
            let parse_ix = |s: &str| -> Result<usize> {
                s.trim()
                    .parse()
                    .map_err(|_| HexError::Parse(format!("bad index `{s}`")))
            };
            let parse_f = |s: &str| -> Result<f64> {
                s.trim()
                    .parse()
                    .map_err(|_| HexError::Parse(format!("bad number `{s}`")))
            };
            let a = parse_ix(field(0)?)?;
            let b = parse_ix(field(1)?)?;
            if a >= n || b >= n {
                return Err(HexError::Parse(format!("node ({a}, {b}) outside grid")));
            }
            values[a * n + b] = Complex64::new(parse_f(field(2)?)?, parse_f(field(3)?)?);
            seen += 1;
        }
        if seen != n * n {
            return Err(HexError::Parse(format!("expected {} rows, got {seen}", n * n)));
        }
        GridFunction::from_values(n, values)
    }
}

/// Centroids of the `M^2` congruent sub-triangles of `Δ`, in `(t1, t2)`.
pub fn delta_nodes(m: usize) -> Vec<HexPoint> {
    let mf = m as f64;
    let mut nodes = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m - i {
            nodes.push(HexPoint::new(
                (3 * i + 1) as f64 / (3.0 * mf),
                (3 * j + 1) as f64 / (3.0 * mf),
            ));
            if i + j + 1 < m {
                nodes.push(HexPoint::new(
                    (3 * i + 2) as f64 / (3.0 * mf),
                    (3 * j + 2) as f64 / (3.0 * mf),
                ));
            }
        }
    }
    nodes
}

/// `⟨f, g⟩_Δ = (1/|Δ|) ∫_Δ f conj(g)` by the centroid rule on `M^2`
/// sub-triangles. Second order; `⟨1, 1⟩_Δ = 1` exactly.
pub fn inner_product_delta<F, G>(f: &F, g: &G, m: usize) -> Result<Complex64>
where
    F: HexFn + ?Sized,
    G: HexFn + ?Sized,
{
    if m == 0 {
        return Err(invalid("M", m, "subdivision level must be at least 1"));
    }
    let terms: Vec<Complex64> = delta_nodes(m)
        .into_par_iter()
        .map(|t| f.eval(t) * g.eval(t).conj())
        .collect();
    let total: Complex64 = terms.iter().sum();
    Ok(total / (m * m) as f64)
}

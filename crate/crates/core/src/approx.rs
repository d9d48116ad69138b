//! Moduli of smoothness, best-approximation estimates and the experiments
//! that compare them.
//!
//! Suprema over a continuum of steps are sampled; every inequality that
//! consumes a sampled modulus allows [`SAMPLING_SLACK`] on top of it.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, HexError, Result};
use crate::hexcoords::{index_ball, phi, reduce_to_omega, HexIndex, HexPoint};
use crate::kernels::{dirichlet, jackson_kernel};
use crate::operators::{CoeffTable, SummabilityMethod};
use crate::quadrature::{GridFunction, HexFn, Lp, OMEGA_AREA};

/// Relative allowance for the sampled supremum in a modulus.
pub const SAMPLING_SLACK: f64 = 0.05;

pub(crate) fn binomial(r: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (r - i) as f64 / (i + 1) as f64)
}

/// `r`-th forward difference with step `t`:
/// `x ↦ Σ_{k=0}^r (-1)^{r-k} C(r,k) f(x + k t)`.
pub fn finite_difference<F: HexFn + ?Sized>(
    f: &F,
    step: HexPoint,
    r: usize,
) -> Result<impl Fn(HexPoint) -> Complex64 + Sync + '_> {
    if r == 0 {
        return Err(invalid("r", r, "difference order must be at least 1"));
    }
    let weights: Vec<f64> = (0..=r)
        .map(|k| {
            let sign = if (r - k).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * binomial(r, k)
        })
        .collect();
    Ok(move |x: HexPoint| {
        weights
            .iter()
            .enumerate()
            .map(|(k, &w)| f.eval(x + step * k as f64) * w)
            .sum()
    })
}

/// Length used to bound the step in a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepNorm {
    /// `(t1^2 + t2^2)^{1/2}`.
    #[default]
    Planar,
    /// `max |t_i|`.
    Hex,
}

impl StepNorm {
    pub fn of(self, t: HexPoint) -> f64 {
        match self {
            StepNorm::Planar => t.planar_norm(),
            StepNorm::Hex => t.hex_norm(),
        }
    }
}

/// Discretization of `ω_r(f; h)_p = sup_{‖t‖ <= h} ‖Δ_t^r f‖_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusSpec {
    pub r: usize,
    pub h: f64,
    pub p: Lp,
    pub direction_count: usize,
    pub radius_count: usize,
    pub grid: usize,
    pub norm: StepNorm,
}

impl ModulusSpec {
    pub fn new(r: usize, h: f64, p: Lp) -> Self {
        ModulusSpec {
            r,
            h,
            p,
            direction_count: 16,
            radius_count: 4,
            grid: 128,
            norm: StepNorm::Planar,
        }
    }

    pub fn with_grid(self, grid: usize) -> Self {
        ModulusSpec { grid, ..self }
    }

    pub fn with_norm(self, norm: StepNorm) -> Self {
        ModulusSpec { norm, ..self }
    }

    pub fn with_h(self, h: f64) -> Self {
        ModulusSpec { h, ..self }
    }

    pub fn with_sampling(self, direction_count: usize, radius_count: usize) -> Self {
        ModulusSpec {
            direction_count,
            radius_count,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(invalid("r", self.r, "order must be at least 1"));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(invalid("h", self.h, "step bound must be positive"));
        }
        if self.direction_count < 8 {
            return Err(invalid(
                "direction_count",
                self.direction_count,
                "need at least 8",
            ));
        }
        if self.radius_count < 4 {
            return Err(invalid("radius_count", self.radius_count, "need at least 4"));
        }
        if self.grid == 0 {
            return Err(invalid("grid", self.grid, "grid size must be at least 1"));
        }
        self.p.validate().map(|_| ())
    }

    /// Sampled steps: `direction_count` angles in `[0, π)` (the norm of
    /// `Δ_t^r f` is even in `t`) times radii `h k / radius_count`.
    pub fn steps(&self) -> Vec<HexPoint> {
        let e1 = HexPoint::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
        let e2 = HexPoint::new(1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt());
        let mut out = Vec::with_capacity(self.direction_count * self.radius_count);
        for i in 0..self.direction_count {
            let theta = PI * i as f64 / self.direction_count as f64;
            let d = e1 * theta.cos() + e2 * theta.sin();
            let unit = d * (1.0 / self.norm.of(d));
            for k in 1..=self.radius_count {
                out.push(unit * (self.h * k as f64 / self.radius_count as f64));
            }
        }
        out
    }
}

fn difference_norm<F: HexFn + ?Sized>(f: &F, step: HexPoint, r: usize, p: Lp, grid: usize) -> Result<f64> {
    let g = match f.as_table() {
        Some(c) => {
            let diff = c.map_entries(|j, v| Some(v * (phi(j, step) - 1.0).powu(r as u32)));
            diff.evaluate_grid(grid)?
        }
        None => GridFunction::sample(&finite_difference(f, step, r)?, grid)?,
    };
    g.lp_norm(p)
}

/// Sampled `ω_r(f; h)_p`; a lower bound for the true supremum.
pub fn modulus<F: HexFn + ?Sized>(f: &F, spec: &ModulusSpec) -> Result<f64> {
    spec.validate()?;
    let norms = spec
        .steps()
        .into_par_iter()
        .map(|t| difference_norm(f, t, spec.r, spec.p, spec.grid))
        .collect::<Result<Vec<f64>>>()?;
    Ok(norms.into_iter().fold(0.0, f64::max))
}

/// `h^r Σ_{|k| = r} r!/k! ‖∂^k f‖_p` for a finite series.
pub fn derivative_bound(c: &CoeffTable, r: usize, h: f64, p: Lp, grid: usize) -> Result<f64> {
    let mut total = 0.0;
    for k1 in 0..=r as u32 {
        for k2 in 0..=(r as u32 - k1) {
            let k3 = r as u32 - k1 - k2;
            let multinomial = binomial(r, k1 as usize) * binomial(r - k1 as usize, k2 as usize);
            let d = c.derivative([k1, k2, k3]).evaluate_grid(grid)?.lp_norm(p)?;
            total += multinomial * d;
        }
    }
    Ok(h.powi(r as i32) * total)
}

/// `E_n(f)_2 = (|Ω| Σ_{|j|_H > n} |c_j|^2)^{1/2}` for `f = Σ c_j φ_j`.
pub fn best_approx_l2(c: &CoeffTable, n: usize) -> f64 {
    let tail: f64 = c
        .iter()
        .filter(|(j, _)| j.hex_degree() as usize > n)
        .map(|(_, v)| v.norm_sqr())
        .sum();
    (OMEGA_AREA * tail).sqrt()
}

/// `E_n(f)_2` for the grid interpolant of `f`, by discrete Parseval.
pub fn best_approx_l2_grid<F: HexFn + ?Sized>(f: &F, n: usize, grid: usize) -> Result<f64> {
    check_grid(2 * n + 1, grid)?;
    let g = GridFunction::sample(f, grid)?;
    let total = g.inner_product_h(&g)?.re;
    let head: f64 = CoeffTable::from_grid(&g, n)
        .iter()
        .map(|(_, v)| v.norm_sqr())
        .sum();
    Ok((OMEGA_AREA * (total - head).max(0.0)).sqrt())
}

fn check_grid(required: usize, given: usize) -> Result<()> {
    if given < required {
        Err(HexError::GridTooSmall { required, given })
    } else {
        Ok(())
    }
}

/// `‖η_n f - f‖_p` at the nodes of a grid of size `grid >= 4n + 1`; within a
/// constant factor of `E_n(f)_p`.
pub fn near_best<F: HexFn + ?Sized>(f: &F, n: usize, p: Lp, grid: usize) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n", n, "smoothed cutoff needs n >= 1"));
    }
    check_grid(4 * n + 1, grid)?;
    let g = GridFunction::sample(f, grid)?;
    let approx = CoeffTable::from_grid(&g, 2 * n)
        .smoothed_cutoff(n)?
        .evaluate_grid(grid)?;
    approx.zip_with(&g, |a, b| a - b)?.lp_norm(p)
}

/// Estimate of `E_n(f)_p`: exact projection for `p = 2`, the smoothed
/// cutoff otherwise, and `‖f - mean‖_p` at `n = 0`.
pub fn approx_error<F: HexFn + ?Sized>(f: &F, n: usize, p: Lp, grid: usize) -> Result<f64> {
    match p {
        Lp::Finite(2.0) => best_approx_l2_grid(f, n, grid),
        _ if n == 0 => {
            let g = GridFunction::sample(f, grid)?;
            let m = g.mean_integral();
            g.map(|v| v - m).lp_norm(p)
        }
        _ => near_best(f, n, p, grid),
    }
}

/// `‖M f - f‖_p` for a summability method, with coefficients and errors on
/// the same grid.
pub fn summability_error<F: HexFn + ?Sized>(
    f: &F,
    method: SummabilityMethod,
    p: Lp,
    grid: usize,
) -> Result<f64> {
    let g = GridFunction::sample(f, grid)?;
    let degree = method.input_degree().unwrap_or((grid - 1) / 2);
    check_grid(2 * degree + 1, grid)?;
    let c = CoeffTable::from_grid(&g, degree);
    let approx = method.apply(&c)?.evaluate_grid(grid)?;
    approx.zip_with(&g, |a, b| a - b)?.lp_norm(p)
}

/// Grid used by [`lebesgue_constant`].
pub fn lebesgue_grid(n: usize) -> usize {
    (8 * n + 1).max(513)
}

/// `(1/|Ω|) ∫_Ω |D_n|`.
pub fn lebesgue_constant(n: usize) -> f64 {
    let g =
        GridFunction::sample_real(|t| dirichlet(n, t).abs(), lebesgue_grid(n)).expect("grid is non-empty");
    g.mean_integral().re
}

/// `‖∂^α S‖_p / (n^{|α|} ‖S‖_p)` for `S ∈ 𝓗_n`.
pub fn bernstein_ratio(c: &CoeffTable, n: usize, alpha: [u32; 3], p: Lp, grid: usize) -> Result<f64> {
    if c.max_degree() > n {
        return Err(invalid("n", n, "series has terms above the stated degree"));
    }
    if c.iter().all(|(_, v)| v == Complex64::default()) {
        return Err(HexError::ZeroInput);
    }
    let base = c.evaluate_grid(grid)?.lp_norm(p)?;
    if base == 0.0 {
        return Err(HexError::ZeroInput);
    }
    let top = c.derivative(alpha).evaluate_grid(grid)?.lp_norm(p)?;
    if top == 0.0 {
        return Ok(0.0);
    }
    let order: u32 = alpha.iter().sum();
    Ok(top / ((n as f64).powi(order as i32) * base))
}

/// Random element of `𝓗_n` with independent complex normal coefficients.
pub fn random_series(n: usize, rng: &mut impl Rng) -> CoeffTable {
    CoeffTable::from_entries(
        index_ball(n as i64)
            .expect("non-negative degree")
            .into_iter()
            .map(|j| {
                (
                    j,
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
                )
            }),
    )
}

/// Least-squares line `y = a + b x` and its coefficient of determination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
}

pub fn fit_line(x: &[f64], y: &[f64]) -> LinearFit {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(u, v)| (v - a - b * u).powi(2)).sum();
    LinearFit {
        a,
        b,
        r2: if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy },
    }
}

/// Ratio of largest to smallest entry.
pub fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

/// One measurement in an experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub method: String,
    pub n: Option<usize>,
    pub h: Option<f64>,
    pub value: f64,
    pub reference: Option<f64>,
    pub ratio: Option<f64>,
    #[serde(rename = "grid_N")]
    pub grid_n: usize,
    pub tol: f64,
}

impl ReportRow {
    pub fn new(method: impl Into<String>, value: f64, grid_n: usize, tol: f64) -> Self {
        ReportRow {
            method: method.into(),
            n: None,
            h: None,
            value,
            reference: None,
            ratio: None,
            grid_n,
            tol,
        }
    }

    pub fn at_n(self, n: usize) -> Self {
        ReportRow { n: Some(n), ..self }
    }

    pub fn at_h(self, h: f64) -> Self {
        ReportRow { h: Some(h), ..self }
    }

    pub fn against(self, reference: f64) -> Self {
        ReportRow {
            reference: Some(reference),
            ratio: Some(self.value / reference),
            ..self
        }
    }
}

/// Rows of an experiment plus derived constants and fits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<ReportRow>,
    pub summary: BTreeMap<String, f64>,
    pub flags: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            params: BTreeMap::new(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
            flags: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.get(key).copied()
    }

    pub fn rows_for<'a>(&'a self, method: &'a str) -> impl Iterator<Item = &'a ReportRow> + 'a {
        self.rows.iter().filter(move |r| r.method == method)
    }

    /// CSV with header `method,n,h,value,reference,ratio,grid_N,tol`;
    /// parameters and summary follow as `#` comment lines.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let opt = |x: Option<String>| x.unwrap_or_default();
        {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["method", "n", "h", "value", "reference", "ratio", "grid_N", "tol"])?;
            for r in &self.rows {
                out.write_record([
                    r.method.clone(),
                    opt(r.n.map(|v| v.to_string())),
                    opt(r.h.map(|v| v.to_string())),
                    r.value.to_string(),
                    opt(r.reference.map(|v| v.to_string())),
                    opt(r.ratio.map(|v| v.to_string())),
                    r.grid_n.to_string(),
                    r.tol.to_string(),
                ])?;
            }
            out.flush()?;
        }
        writeln!(w, "# experiment {}", self.experiment)?;
        for (k, v) in &self.params {
            writeln!(w, "# param {k}={v}")?;
        }
        for (k, v) in &self.summary {
            writeln!(w, "# summary {k}={v}")?;
        }
        for f in &self.flags {
            writeln!(w, "# flag {f}")?;
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

/// Lebesgue constants and the fit `L_n ≈ a + b (log n)^2`.
pub fn lebesgue_report(ns: &[usize]) -> ExperimentReport {
    let values: Vec<f64> = ns.par_iter().map(|&n| lebesgue_constant(n)).collect();
    let mut rep = ExperimentReport::new("lebesgue").param("ns", join(ns));
    for (&n, &v) in ns.iter().zip(&values) {
        rep.rows
            .push(ReportRow::new("lebesgue", v, lebesgue_grid(n), 0.0).at_n(n));
    }
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln().powi(2)).collect();
    if ns.len() >= 2 {
        let fit = fit_line(&x, &values);
        rep.summary.insert("fit_a".into(), fit.a);
        rep.summary.insert("fit_b".into(), fit.b);
        rep.summary.insert("fit_r2".into(), fit.r2);
    }
    rep
}

/// Grid used for Jackson-kernel moments.
pub fn moment_grid(n: usize, r: usize) -> usize {
    (8 * r * n + 1).max(129)
}

/// `∫_Ω ‖t‖^ν K_{n,r}(t) dt` with `‖t‖ = (t1^2 + t2^2)^{1/2}`.
pub fn jackson_moment(n: usize, r: usize, nu: f64) -> Result<f64> {
    let grid = moment_grid(n, r);
    let g = GridFunction::try_sample(
        |t| {
            let t0 = reduce_to_omega(t);
            Ok(Complex64::new(
                t0.planar_norm().powf(nu) * jackson_kernel(n, r, t0)?,
                0.0,
            ))
        },
        grid,
    )?;
    Ok(OMEGA_AREA * g.mean_integral().re)
}

/// `n^ν ∫ ‖t‖^ν K_{n,r}` per `(ν, n)`; summary holds the spread over `n`.
pub fn moments_report(r: usize, nus: &[f64], ns: &[usize]) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("moments")
        .param("r", r)
        .param("nus", join(nus))
        .param("ns", join(ns));
    for &nu in nus {
        let label = format!("moment_nu={nu}");
        let mut scaled = Vec::new();
        for &n in ns {
            let m = jackson_moment(n, r, nu)?;
            let s = (n as f64).powf(nu) * m;
            scaled.push(s);
            let mut row = ReportRow::new(label.clone(), s, moment_grid(n, r), 0.0).at_n(n);
            row.reference = Some(m);
            rep.rows.push(row);
        }
        rep.summary.insert(format!("spread_nu={nu}"), spread(&scaled));
    }
    Ok(rep)
}

/// Largest Bernstein ratio over random elements of `𝓗_n`.
pub fn bernstein_report(
    alphas: &[[u32; 3]],
    p: Lp,
    ns: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("bernstein")
        .param("p", p)
        .param("ns", join(ns))
        .param("trials", trials)
        .param("seed", seed);
    for (ai, &alpha) in alphas.iter().enumerate() {
        let label = format!("alpha={},{},{}", alpha[0], alpha[1], alpha[2]);
        let mut maxima = Vec::new();
        for (ni, &n) in ns.iter().enumerate() {
            let grid = 4 * n + 1;
            // one independent stream per (alpha, n, trial)
            let ratios = (0..trials)
                .into_par_iter()
                .map(|k| {
                    let stream = ((ai * ns.len() + ni) * trials + k) as u64;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(stream);
                    bernstein_ratio(&random_series(n, &mut rng), n, alpha, p, grid)
                })
                .collect::<Result<Vec<f64>>>()?;
            let m = ratios.into_iter().fold(0.0, f64::max);
            maxima.push(m);
            rep.rows.push(ReportRow::new(label.clone(), m, grid, 0.0).at_n(n));
        }
        if let (Some(first), Some(last)) = (maxima.first(), maxima.last()) {
            rep.summary.insert(format!("growth_{label}"), last / first);
            rep.summary
                .insert(format!("max_{label}"), maxima.iter().cloned().fold(0.0, f64::max));
        }
    }
    Ok(rep)
}

/// Direct theorem: `E_n(f)_p` against `ω_r(f; 1/n)_p` over an `n` sweep.
pub fn jackson_report<F: HexFn + ?Sized>(
    f: &F,
    label: &str,
    rs: &[usize],
    ns: &[usize],
    p: Lp,
    grid: usize,
) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("jackson")
        .param("f", label)
        .param("p", p)
        .param("ns", join(ns))
        .param("rs", join(rs));
    let errors = ns
        .iter()
        .map(|&n| near_best(f, n, p, grid.max(4 * n + 1)))
        .collect::<Result<Vec<f64>>>()?;
    for &r in rs {
        let label = format!("r={r}");
        let mut ratios = Vec::new();
        for (&n, &e) in ns.iter().zip(&errors) {
            let spec = ModulusSpec::new(r, 1.0 / n as f64, p).with_grid(grid);
            let w = modulus(f, &spec)?;
            let row = ReportRow::new(label.clone(), e, grid.max(4 * n + 1), SAMPLING_SLACK)
                .at_n(n)
                .at_h(1.0 / n as f64)
                .against(w);
            ratios.push(row.ratio.unwrap_or(f64::NAN));
            rep.rows.push(row);
        }
        let c = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        rep.summary.insert(format!("C_{label}"), c);
        rep.summary.insert(format!("stability_{label}"), spread(&ratios));
    }
    Ok(rep)
}

/// Inverse theorem: `ω_r(f; h)_p` against `h^r Σ_{n <= 1/h} (n+1)^{r-1} E_n(f)_p`.
pub fn inverse_check<F: HexFn + ?Sized>(
    f: &F,
    label: &str,
    r: usize,
    p: Lp,
    hs: &[f64],
    grid: usize,
) -> Result<ExperimentReport> {
    if r == 0 {
        return Err(invalid("r", r, "order must be at least 1"));
    }
    let mut rep = ExperimentReport::new("inverse")
        .param("f", label)
        .param("r", r)
        .param("p", p)
        .param("hs", join(hs));
    let top = hs.iter().map(|h| (1.0 / h).floor() as usize).max().unwrap_or(0);
    let errors = (0..=top)
        .into_par_iter()
        .map(|n| approx_error(f, n, p, grid.max(4 * n + 1)))
        .collect::<Result<Vec<f64>>>()?;
    let mut ratios = Vec::new();
    for &h in hs {
        let lhs = modulus(f, &ModulusSpec::new(r, h, p).with_grid(grid))?;
        let m = (1.0 / h).floor() as usize;
        let sum: f64 = (0..=m)
            .map(|n| ((n + 1) as f64).powi(r as i32 - 1) * errors[n])
            .sum();
        let rhs = h.powi(r as i32) * sum;
        let mut row = ReportRow::new("inverse", lhs, grid, SAMPLING_SLACK).at_h(h);
        if rhs.abs() < 1e-12 && lhs.abs() < 1e-12 {
            rep.flags.push(format!("vacuous 0/0 at h={h}"));
            row.reference = Some(rhs);
        } else {
            row = row.against(rhs);
            ratios.push(row.ratio.unwrap_or(f64::NAN));
        }
        rep.rows.push(row);
    }
    if !ratios.is_empty() {
        rep.summary
            .insert("max_ratio".into(), ratios.iter().cloned().fold(0.0, f64::max));
        rep.summary.insert("spread".into(), spread(&ratios));
    }
    Ok(rep)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Indices appearing in `ℍ_n` with `|j|_H = n` and `j1 != 0`, handy for
/// exact Bernstein checks.
pub fn extremal_indices(n: usize) -> Vec<HexIndex> {
    crate::hexcoords::index_shell(n as i64)
        .expect("non-negative degree")
        .into_iter()
        .filter(|j| j.j1 != 0)
        .collect()
}

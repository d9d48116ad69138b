//! Summability kernels in closed form.
//!
//! Everything is built from the Dirichlet-type ratio
//! `R_n(u) = sin((n+1)uπ/3) / sin(uπ/3)` evaluated at the three differences
//! `t1 - t2`, `t2 - t3`, `t3 - t1`. Their product is `Θ_n`, the running sum
//! of the Dirichlet kernels, and every other kernel is a finite combination
//! of `Θ_k` or a rational function of `cos((t_i - t_j)2π/3)`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use crate::error::{invalid, Result};
use crate::hexcoords::HexPoint;
use crate::quadrature::GridFunction;

/// Below this `|sin(uπ/3)|` a ratio factor is replaced by its limit.
pub const RATIO_SINGULAR_TOL: f64 = 1e-7;

/// Below this `min |sin((t_i - t_j)π/3)|` the `(C,2)` closed form defers to
/// the running sum of `Θ_k`.
pub const CESARO2_SINGULAR_TOL: f64 = 1e-6;

#[inline]
fn differences(t: HexPoint) -> [f64; 3] {
    let [a, b, c] = t.coords();
    [a - b, b - c, c - a]
}

/// `sin((n+1)uπ/3) / sin(uπ/3)`, continuous across its removable zeros.
#[inline]
pub fn dirichlet_ratio(n: usize, u: f64) -> f64 {
    let m = (u / 3.0).round();
    let x = (u - 3.0 * m) * (PI / 3.0);
    let s = x.sin();
    let np1 = (n + 1) as f64;
    let v = if s.abs() < RATIO_SINGULAR_TOL {
        np1
    } else {
        (np1 * x).sin() / s
    };
    // shifting u by 3m multiplies the ratio by (-1)^{nm}
    if n % 2 == 1 && (m as i64).rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

/// `Θ_n(t) = Σ_{k<=n} D_k(t)`.
#[inline]
pub fn theta(n: usize, t: HexPoint) -> f64 {
    let [u1, u2, u3] = differences(t);
    dirichlet_ratio(n, u1) * dirichlet_ratio(n, u2) * dirichlet_ratio(n, u3)
}

/// `D_n(t) = Σ_{j∈ℍ_n} φ_j(t) = Θ_n(t) - Θ_{n-1}(t)`.
#[inline]
pub fn dirichlet(n: usize, t: HexPoint) -> f64 {
    if n == 0 {
        1.0
    } else {
        theta(n, t) - theta(n - 1, t)
    }
}

fn check_r(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(invalid("r", r, "must lie in [0, 1)"))
    }
}

/// `q(r, u) = 1 - 2r cos u + r^2`, evaluated as `(1-r)^2 + 4r sin^2(u/2)`.
pub fn poisson_q(r: f64, u: f64) -> Result<f64> {
    check_r(r)?;
    Ok(q_unchecked(r, u))
}

#[inline]
fn q_unchecked(r: f64, u: f64) -> f64 {
    let s = (0.5 * u).sin();
    (1.0 - r) * (1.0 - r) + 4.0 * r * s * s
}

/// Poisson kernel `P(r; t) = Σ_n r^n Σ_{j∈𝕁_n} φ_j(t)`.
pub fn poisson_kernel(r: f64, t: HexPoint) -> Result<f64> {
    check_r(r)?;
    Ok(poisson_unchecked(r, t))
}

#[inline]
pub(crate) fn poisson_unchecked(r: f64, t: HexPoint) -> f64 {
    let [u1, u2, u3] = differences(t);
    let w = 2.0 * PI / 3.0;
    let (q1, q2, q3) = (
        q_unchecked(r, w * u1),
        q_unchecked(r, w * u2),
        q_unchecked(r, w * u3),
    );
    let om = 1.0 - r;
    om.powi(3) * (1.0 - r * r * r) / (q1 * q2 * q3)
        + r * om * om * (1.0 / (q1 * q2) + 1.0 / (q2 * q3) + 1.0 / (q3 * q1))
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > -1.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(invalid("delta", delta, "Cesàro order must exceed -1"))
    }
}

/// `A_m^δ = binom(m + δ, m)` for `m = 0..=n`.
pub fn cesaro_binomials(n: usize, delta: f64) -> Result<Vec<f64>> {
    check_delta(delta)?;
    let mut a = Vec::with_capacity(n + 1);
    let mut cur = 1.0;
    a.push(cur);
    for i in 1..=n {
        cur *= 1.0 + delta / i as f64;
        a.push(cur);
    }
    Ok(a)
}

/// Shell weights `A^δ_{n-k} / A^δ_n` for `k = 0..=n`.
pub fn cesaro_weights(n: usize, delta: f64) -> Result<Vec<f64>> {
    let a = cesaro_binomials(n, delta)?;
    Ok((0..=n).map(|k| a[n - k] / a[n]).collect())
}

/// Evaluates `Σ_k w_k J_k(t)`, with `J_k` the `k`-th shell sum, through
/// `Θ_k`: `Σ_k w_k J_k = Σ_k (w_k - 2w_{k+1} + w_{k+2}) Θ_k`.
pub(crate) fn shell_series(weights: &[f64], t: HexPoint) -> f64 {
    let w = |k: usize| weights.get(k).copied().unwrap_or(0.0);
    (0..weights.len())
        .map(|k| (w(k) - 2.0 * w(k + 1) + w(k + 2)) * theta(k, t))
        .sum()
}

/// Cesàro kernel `K_n^{(δ)}`.
pub fn cesaro_kernel(n: usize, delta: f64, t: HexPoint) -> Result<f64> {
    if delta == 1.0 {
        return Ok(theta(n, t) / (n + 1) as f64);
    }
    if delta == 0.0 {
        return Ok(dirichlet(n, t));
    }
    Ok(shell_series(&cesaro_weights(n, delta)?, t))
}

/// `K_n^{(2)}` from the sum-of-squares closed form.
pub fn cesaro2_closed(n: usize, t: HexPoint) -> f64 {
    let [u1, u2, u3] = differences(t);
    let p = PI / 3.0;
    let (d1, d2, d3) = ((u1 * p).sin(), (u2 * p).sin(), (u3 * p).sin());
    let norm = ((n + 1) * (n + 2)) as f64 / 2.0;
    if d1.abs().min(d2.abs()).min(d3.abs()) < CESARO2_SINGULAR_TOL {
        return (0..=n).map(|k| theta(k, t)).sum::<f64>() / norm;
    }
    let [t1, t2, t3] = t.coords();
    let nf = n as f64;
    let m = (n + 2) as f64;
    let (e1, e2, e3) = ((m * u2 * p).sin(), (m * u3 * p).sin(), (m * u1 * p).sin());
    let (sn1, cs1) = (nf * t1 * p).sin_cos();
    let (sn2, cs2) = (nf * t2 * p).sin_cos();
    let (sn3, cs3) = (nf * t3 * p).sin_cos();
    let a = cs1 * e1 + cs2 * e2 + cs3 * e3;
    let b = sn1 * e1 + sn2 * e2 + sn3 * e3;
    let den = d1 * d2 * d3;
    (a * a + b * b) / (16.0 * den * den) / norm
}

fn check_jackson(r: usize) -> Result<()> {
    if r == 0 {
        Err(invalid("r", r, "Jackson power must be at least 1"))
    } else {
        Ok(())
    }
}

fn lambda_cache() -> &'static RwLock<HashMap<(usize, usize), f64>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `λ_{n,r} = 1 / ∫_Ω Θ_n^{2r}`, integrated exactly and memoized.
pub fn jackson_lambda(n: usize, r: usize) -> Result<f64> {
    check_jackson(r)?;
    if let Some(&v) = lambda_cache().read().expect("lambda cache poisoned").get(&(n, r)) {
        return Ok(v);
    }
    let p = (2 * r) as i32;
    let grid = 2 * (2 * r * n) + 1;
    let g = GridFunction::sample_real(|t| theta(n, t).powi(p), grid)?;
    let lambda = 1.0 / (crate::quadrature::OMEGA_AREA * g.mean_integral().re);
    Ok(*lambda_cache()
        .write()
        .expect("lambda cache poisoned")
        .entry((n, r))
        .or_insert(lambda))
}

/// Jackson kernel `K_{n,r} = λ_{n,r} Θ_n^{2r}`, with `∫_Ω K_{n,r} = 1`.
pub fn jackson_kernel(n: usize, r: usize, t: HexPoint) -> Result<f64> {
    let lambda = jackson_lambda(n, r)?;
    Ok(lambda * theta(n, t).powi((2 * r) as i32))
}

#[inline]
fn glue(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth cutoff: `1` on `(-∞, 1]`, `0` on `[2, ∞)`, decreasing in between.
pub fn eta_cutoff(u: f64) -> f64 {
    let a = glue(2.0 - u);
    let b = glue(u - 1.0);
    if b == 0.0 {
        1.0
    } else {
        a / (a + b)
    }
}

/// Multiplier of the smoothed cutoff operator on shell `k`: `η(k/n)`.
pub fn eta_weights(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(invalid("n", n, "smoothed cutoff needs n >= 1"));
    }
    Ok((0..=2 * n).map(|k| eta_cutoff(k as f64 / n as f64)).collect())
}

/// `η_n(t) = Σ_j η(|j|_H / n) φ_j(t)`, the kernel of the operator that fixes
/// `𝓗_n` and maps into `𝓗_{2n}`.
pub fn eta_kernel(n: usize, t: HexPoint) -> Result<f64> {
    Ok(shell_series(&eta_weights(n)?, t))
}

/// `Σ_{k=0}^{2n} η(k/n) D_k(t)`: the Dirichlet kernels weighted directly by
/// the cutoff. Its mean is `Σ_k η(k/n)` rather than 1.
pub fn eta_kernel_dirichlet_sum(n: usize, t: HexPoint) -> Result<f64> {
    Ok(eta_weights(n)?
        .iter()
        .enumerate()
        .map(|(k, w)| w * dirichlet(k, t))
        .sum())
}

/// A kernel with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    Dirichlet { n: usize },
    Theta { n: usize },
    Poisson { r: f64 },
    Cesaro { n: usize, delta: f64 },
    Cesaro2Closed { n: usize },
    Jackson { n: usize, r: usize },
    SmoothedCutoff { n: usize },
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Poisson { r } => check_r(r),
            KernelSpec::Cesaro { delta, .. } => check_delta(delta),
            KernelSpec::Jackson { r, .. } => check_jackson(r),
            KernelSpec::SmoothedCutoff { n } if n == 0 => {
                Err(invalid("n", n, "smoothed cutoff needs n >= 1"))
            }
            _ => Ok(()),
        }
    }

    /// Largest hexagonal degree present, or `None` for the Poisson kernel.
    pub fn degree(&self) -> Option<usize> {
        match *self {
            KernelSpec::Dirichlet { n }
            | KernelSpec::Theta { n }
            | KernelSpec::Cesaro { n, .. }
            | KernelSpec::Cesaro2Closed { n } => Some(n),
            KernelSpec::Jackson { n, r } => Some(2 * r * n),
            KernelSpec::SmoothedCutoff { n } => Some(2 * n),
            KernelSpec::Poisson { .. } => None,
        }
    }

    pub fn eval(&self, t: HexPoint) -> Result<f64> {
        match *self {
            KernelSpec::Dirichlet { n } => Ok(dirichlet(n, t)),
            KernelSpec::Theta { n } => Ok(theta(n, t)),
            KernelSpec::Poisson { r } => poisson_kernel(r, t),
            KernelSpec::Cesaro { n, delta } => cesaro_kernel(n, delta, t),
            KernelSpec::Cesaro2Closed { n } => Ok(cesaro2_closed(n, t)),
            KernelSpec::Jackson { n, r } => jackson_kernel(n, r, t),
            KernelSpec::SmoothedCutoff { n } => eta_kernel(n, t),
        }
    }

    /// A validated evaluator with per-call setup hoisted out.
    pub fn evaluator(&self) -> Result<Box<dyn Fn(HexPoint) -> f64 + Send + Sync>> {
        self.validate()?;
        Ok(match *self {
            KernelSpec::Dirichlet { n } => Box::new(move |t| dirichlet(n, t)),
            KernelSpec::Theta { n } => Box::new(move |t| theta(n, t)),
            KernelSpec::Poisson { r } => Box::new(move |t| poisson_unchecked(r, t)),
            KernelSpec::Cesaro { n, delta } => {
                if delta == 0.0 {
                    Box::new(move |t| dirichlet(n, t))
                } else if delta == 1.0 {
                    Box::new(move |t| theta(n, t) / (n + 1) as f64)
                } else {
                    let w = cesaro_weights(n, delta)?;
                    Box::new(move |t| shell_series(&w, t))
                }
            }
            KernelSpec::Cesaro2Closed { n } => Box::new(move |t| cesaro2_closed(n, t)),
            KernelSpec::Jackson { n, r } => {
                let lambda = jackson_lambda(n, r)?;
                let p = (2 * r) as i32;
                Box::new(move |t| lambda * theta(n, t).powi(p))
            }
            KernelSpec::SmoothedCutoff { n } => {
                let w = eta_weights(n)?;
                Box::new(move |t| shell_series(&w, t))
            }
        })
    }
}

impl std::fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelSpec::Dirichlet { n } => write!(f, "dirichlet(n={n})"),
            KernelSpec::Theta { n } => write!(f, "theta(n={n})"),
            KernelSpec::Poisson { r } => write!(f, "poisson(r={r})"),
            KernelSpec::Cesaro { n, delta } => write!(f, "cesaro(n={n}, delta={delta})"),
            KernelSpec::Cesaro2Closed { n } => write!(f, "cesaro2(n={n})"),
            KernelSpec::Jackson { n, r } => write!(f, "jackson(n={n}, r={r})"),
            KernelSpec::SmoothedCutoff { n } => write!(f, "eta(n={n})"),
        }
    }
}

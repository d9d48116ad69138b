//! Acceptance criteria: one PASS/FAIL line per criterion with its measured
//! quantities, tolerance and runtime. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hexfourier::approx::{
    bernstein_report, derivative_bound, fit_line, jackson_report, lebesgue_constant, lebesgue_grid, modulus,
    moments_report, near_best, SAMPLING_SLACK,
};
use hexfourier::hexcoords::{index_ball, index_shell, phi};
use hexfourier::kernels::{cesaro2_closed, dirichlet, eta_kernel, poisson_kernel};
use hexfourier::triangle::{check_compatibility, cosine_cesaro1, lambda_set, tc, tc_gram};
use hexfourier::{
    CoeffTable, GridFunction, HexError, HexFn, HexPoint, KernelSpec, Lp, ModulusSpec, StepNorm, TestFunction,
    OMEGA_AREA,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<(bool, String), HexError>;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    check: fn() -> Outcome,
}

fn random_points(count: usize, seed: u64) -> Vec<HexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| HexPoint::from_cell(rng.random(), rng.random()))
        .collect()
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(",")
}

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

fn orthonormality() -> Outcome {
    let ball = index_ball(6)?;
    let grids = ball
        .iter()
        .map(|&j| GridFunction::sample(&move |t: HexPoint| phi(j, t), 13))
        .collect::<Result<Vec<_>, _>>()?;
    let mut worst: f64 = 0.0;
    for (a, ga) in grids.iter().enumerate() {
        for (b, gb) in grids.iter().enumerate() {
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((ga.inner_product_h(gb)? - want).norm());
        }
    }
    Ok((
        worst <= 1e-12,
        format!("|H_6|={} max_dev={worst:.3e} tol=1e-12", ball.len()),
    ))
}

/// 20 points within 1e-9 of the lines `t_i - t_j ∈ 3Z`, five of them near
/// lattice points where two lines cross.
fn near_singular_points(seed: u64) -> Vec<HexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20)
        .map(|k| {
            let eps = rng.random_range(-1e-9..1e-9);
            let m = rng.random_range(-1i32..=1) as f64;
            let (a, b): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            match k % 4 {
                0 => HexPoint::new(b + 3.0 * m + eps, b),
                1 => HexPoint::new(3.0 * m + eps - 2.0 * b, b),
                2 => HexPoint::new(a, -2.0 * a - 3.0 * m - eps),
                _ => HexPoint::new(3.0 * m + eps, rng.random_range(-1e-9..1e-9)),
            }
        })
        .collect()
}

fn dirichlet_closed_form() -> Outcome {
    let mut pts = random_points(180, 2);
    pts.extend(near_singular_points(3));
    let mut worst: f64 = 0.0;
    for n in 1..=12usize {
        let ball = index_ball(n as i64)?;
        let w = pts
            .par_iter()
            .map(|&t| {
                let brute: f64 = ball.iter().map(|&j| phi(j, t).re).sum();
                (dirichlet(n, t) - brute).abs()
            })
            .reduce(|| 0.0, f64::max);
        worst = worst.max(w);
    }
    let origin_exact =
        (0..=40usize).all(|n| dirichlet(n, HexPoint::ORIGIN) == (3 * n * n + 3 * n + 1) as f64);
    Ok((
        worst <= 1e-9 && origin_exact,
        format!(
            "points={} max_diff={worst:.3e} tol=1e-9 D_n(0)=3n^2+3n+1:{origin_exact}",
            pts.len()
        ),
    ))
}

fn poisson() -> Outcome {
    let rs = [0.3f64, 0.6, 0.9];
    let pts = random_points(500, 4);
    let m = 200i64;
    let shells = (0..=m).map(index_shell).collect::<Result<Vec<_>, _>>()?;
    // truncated series Σ_{n<=200} r^n Σ_{j∈𝕁_n} φ_j(t) at each point
    let diffs = pts
        .par_iter()
        .map(|&t| -> Result<[f64; 3], HexError> {
            let sums: Vec<f64> = shells
                .iter()
                .map(|s| s.iter().map(|&j| phi(j, t).re).sum())
                .collect();
            let mut out = [0.0; 3];
            for (slot, &r) in out.iter_mut().zip(&rs) {
                let series: f64 = sums.iter().enumerate().map(|(n, s)| r.powi(n as i32) * s).sum();
                *slot = (poisson_kernel(r, t)? - series).abs();
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let series_diff: Vec<f64> = (0..3)
        .map(|i| diffs.iter().map(|d| d[i]).fold(0.0, f64::max))
        .collect();
    let mut means = Vec::new();
    let mut mins = Vec::new();
    let mut origin = Vec::new();
    for &r in &rs {
        let spec = KernelSpec::Poisson { r };
        means.push(
            GridFunction::sample_real(spec.evaluator()?, 128)?
                .mean_integral()
                .re,
        );
        mins.push(GridFunction::sample_real(spec.evaluator()?, 512)?.min_re());
        let want = (1.0 + 4.0 * r + r * r) / (1.0 - r).powi(2);
        origin.push((poisson_kernel(r, HexPoint::ORIGIN)? - want).abs());
    }
    // same comparison with a longer series, to separate truncation from the closed form
    let long: Vec<Vec<_>> = (0..=400).map(index_shell).collect::<Result<_, _>>()?;
    let long_diff = pts[..100]
        .par_iter()
        .map(|&t| -> Result<f64, HexError> {
            let series: f64 = long
                .iter()
                .enumerate()
                .map(|(n, s)| 0.9f64.powi(n as i32) * s.iter().map(|&j| phi(j, t).re).sum::<f64>())
                .sum();
            Ok((poisson_kernel(0.9, t)? - series).abs())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let fine_mean = GridFunction::sample_real(KernelSpec::Poisson { r: 0.9 }.evaluator()?, 512)?
        .mean_integral()
        .re;
    let ok_series = series_diff.iter().all(|&d| d <= 1e-7);
    let ok_mean = means.iter().all(|&v| (v - 1.0).abs() <= 1e-8);
    let ok_min = mins.iter().all(|&v| v >= -1e-12);
    let ok_origin = origin.iter().all(|&v| v <= 1e-10);
    let mean_dev: Vec<f64> = means.iter().map(|v| (v - 1.0).abs()).collect();
    Ok((
        ok_series && ok_mean && ok_min && ok_origin,
        format!(
            "r=0.3,0.6,0.9 series_diff(M=200)=[{}] tol=1e-7 {}; |mean-1|(N=128)=[{}] tol=1e-8 {}; \
             min(512^2)=[{}] {}; |P(r;0)-oracle|=[{}] {}; info |mean-1|(r=0.9,N=512)={:.3e} series_diff(r=0.9,M=400,100 points)={:.3e}",
            fmt_list(&series_diff),
            ok_series,
            fmt_list(&mean_dev),
            ok_mean,
            fmt_list(&mins),
            ok_min,
            fmt_list(&origin),
            ok_origin,
            (fine_mean - 1.0).abs(),
            long_diff
        ),
    ))
}

fn cesaro2() -> Outcome {
    let mut min = f64::INFINITY;
    for n in 0..=20usize {
        let g = GridFunction::sample_real(move |t| cesaro2_closed(n, t), 512)?;
        min = min.min(g.min_re());
    }
    let pts = random_points(500, 5);
    let mut worst: f64 = 0.0;
    for n in 0..=20usize {
        let binom2 = |m: usize| ((m + 1) * (m + 2)) as f64 / 2.0;
        let shells = (0..=n as i64).map(index_shell).collect::<Result<Vec<_>, _>>()?;
        let w = pts
            .par_iter()
            .map(|&t| {
                let sum: f64 = shells
                    .iter()
                    .enumerate()
                    .map(|(k, s)| binom2(n - k) / binom2(n) * s.iter().map(|&j| phi(j, t).re).sum::<f64>())
                    .sum();
                (cesaro2_closed(n, t) - sum).abs()
            })
            .reduce(|| 0.0, f64::max);
        worst = worst.max(w);
    }
    Ok((
        min >= -1e-10 && worst <= 1e-9,
        format!("n<=20 min(512^2)={min:.3e} tol=-1e-10; max|closed-coefficient sum|={worst:.3e} tol=1e-9"),
    ))
}

fn cesaro1_l1() -> Outcome {
    let ns = [8usize, 16, 32, 64];
    let ratios = ns
        .iter()
        .map(|&n| -> Result<f64, HexError> {
            // I_n = ∫_Ω |Θ_n|, where Θ_n = (n+1) times the (C,1) kernel
            let k = KernelSpec::Theta { n }.evaluator()?;
            let g = GridFunction::sample_real(move |t| k(t).abs(), 1025)?;
            Ok(OMEGA_AREA * g.mean_integral().re / n as f64)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let s = spread(&ratios);
    Ok((
        s < 4.0,
        format!(
            "I_n/n (n=8,16,32,64; N=1025)=[{}] max/min={s:.3} tol<4",
            fmt_list(&ratios)
        ),
    ))
}

fn lebesgue() -> Outcome {
    let ns = [8usize, 16, 32, 64, 128];
    let values: Vec<f64> = ns.par_iter().map(|&n| lebesgue_constant(n)).collect();
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln().powi(2)).collect();
    let fit = fit_line(&x, &values);
    let grids: Vec<usize> = ns.iter().map(|&n| lebesgue_grid(n)).collect();
    Ok((
        fit.r2 > 0.99 && fit.b > 0.0,
        format!(
            "L_n=[{}] grids={grids:?} fit a={:.4} b={:.4} R^2={:.5} tol R^2>0.99,b>0",
            fmt_list(&values),
            fit.a,
            fit.b,
            fit.r2
        ),
    ))
}

fn jackson_moments() -> Outcome {
    let rep = moments_report(2, &[1.0, 2.0], &[4, 8, 16, 32])?;
    let s1 = rep.summary_value("spread_nu=1").unwrap_or(f64::NAN);
    let s2 = rep.summary_value("spread_nu=2").unwrap_or(f64::NAN);
    let scaled = |nu: &str| fmt_list(&rep.rows_for(nu).map(|r| r.value).collect::<Vec<_>>());
    Ok((
        s1 < 4.0 && s2 < 4.0,
        format!(
            "r=2 n^nu M_nu nu=1:[{}] spread={s1:.3}; nu=2:[{}] spread={s2:.3}; tol<4",
            scaled("moment_nu=1"),
            scaled("moment_nu=2")
        ),
    ))
}

fn direct_theorem() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for label in ["gauss:0.3", "cone"] {
        let f = TestFunction::parse(label, 0)?;
        let rep = jackson_report(&f, label, &[1, 2], &[8, 16, 32], Lp::Infinity, 128)?;
        for r in ["r=1", "r=2"] {
            let ratios: Vec<f64> = rep.rows_for(r).filter_map(|row| row.ratio).collect();
            let c = rep.summary_value(&format!("C_{r}")).unwrap_or(f64::NAN);
            let s = rep.summary_value(&format!("stability_{r}")).unwrap_or(f64::NAN);
            let pass = c.is_finite() && s < 5.0;
            ok &= pass;
            parts.push(format!(
                "{label} {r}: ratios=[{}] C={c:.4e} max/min={s:.3e} {}",
                fmt_list(&ratios),
                if pass { "ok" } else { "FAIL" }
            ));
        }
    }
    Ok((ok, format!("{}; tol max/min<5", parts.join("; "))))
}

fn bernstein() -> Outcome {
    let rep = bernstein_report(&[[1, 0, 0], [1, 1, 0]], Lp::Infinity, &[8, 16, 32], 200, 2024)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for label in ["alpha=1,0,0", "alpha=1,1,0"] {
        let maxima: Vec<f64> = rep.rows_for(label).map(|r| r.value).collect();
        let growth = maxima[2] / maxima[0];
        ok &= growth <= 1.5;
        parts.push(format!(
            "{label} max(n=8,16,32)=[{}] n32/n8={growth:.3}",
            fmt_list(&maxima)
        ));
    }
    Ok((
        ok,
        format!("200 trials p=inf seed=2024 {}; tol<=1.5", parts.join("; ")),
    ))
}

fn smoothed_cutoff() -> Outcome {
    let ns = [1usize, 2, 4, 8, 16, 32];
    let mut reproduce: f64 = 0.0;
    let mut leak: f64 = 0.0;
    let mut op_const: f64 = 0.0;
    let mut kernel_l1: f64 = 0.0;
    let registry = [
        "const",
        "phi:1,0,-1",
        "phi:3,-1,-2",
        "gauss:0.3",
        "cone",
        "poly:8",
    ];
    for &n in &ns {
        let p = TestFunction::poly(n, 31 + n as u64);
        reproduce = reproduce.max(near_best(&p, n, Lp::Infinity, 4 * n + 1)?);

        let g = TestFunction::gauss(0.3)?;
        let c = CoeffTable::coefficients_on_grid(&g, 3 * n, 6 * n + 1)?;
        let eta = c.smoothed_cutoff(n)?;
        let grid = 6 * n + 1;
        let resampled = CoeffTable::coefficients_on_grid(&eta, 3 * n, grid)?;
        leak = leak.max(
            resampled
                .iter()
                .filter(|(j, _)| j.hex_degree() as usize > 2 * n)
                .map(|(_, v)| v.norm())
                .fold(0.0, f64::max),
        );
        for name in registry {
            let f = TestFunction::parse(name, 5)?;
            let grid = (8 * n + 1).max(129);
            let sampled = GridFunction::sample(&f, grid)?;
            let approx = CoeffTable::from_grid(&sampled, 2 * n)
                .smoothed_cutoff(n)?
                .evaluate_grid(grid)?;
            op_const = op_const.max(approx.max_abs() / sampled.max_abs());
        }
        let k = GridFunction::try_sample(
            |t| Ok(Complex64::new(eta_kernel(n, t)?.abs(), 0.0)),
            (32 * n + 1).max(257),
        )?;
        kernel_l1 = kernel_l1.max(k.mean_integral().re);
    }
    Ok((
        reproduce <= 1e-10 && leak <= 1e-12 && op_const < 10.0 && kernel_l1 < 10.0,
        format!(
            "n<=32 max|eta_n f - f| (f in H_n)={reproduce:.3e} tol=1e-10; max coefficient beyond 2n={leak:.3e}; \
             registry sup ratio={op_const:.4} kernel L1={kernel_l1:.4} tol<10"
        ),
    ))
}

fn triangle() -> Outcome {
    let gram = tc_gram(4, 256)?;
    let mut off: f64 = 0.0;
    for (a, row) in gram.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            if a != b {
                off = off.max(v.norm());
            }
        }
    }
    let f = TestFunction::gauss(0.3)?;
    let probe = hexfourier::quadrature::delta_nodes(40);
    let truth: Vec<Complex64> = probe.iter().map(|&t| f.eval(t)).collect();
    let errors = [4usize, 8, 16, 32]
        .iter()
        .map(|&n| -> Result<f64, HexError> {
            let s = cosine_cesaro1(&f, n, 256)?;
            Ok(probe
                .par_iter()
                .zip(&truth)
                .map(|(&t, &v)| (s.evaluate(t) - v).norm())
                .reduce(|| 0.0, f64::max))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let mut compat: f64 = 0.0;
    for k in lambda_set(8) {
        let g = move |t: HexPoint| tc(k, t);
        compat = compat.max(check_compatibility(&g, 257)?.max_violation);
    }
    Ok((
        off <= 5e-6 && decreasing && compat <= 1e-10,
        format!(
            "gram(deg<=4,M=256) max off-diagonal={off:.3e} tol=5e-6; (C,1) sup error n=4,8,16,32=[{}] \
             decreasing={decreasing}; compatibility(deg<=8)={compat:.3e} tol=1e-10",
            fmt_list(&errors)
        ),
    ))
}

fn modulus_properties() -> Outcome {
    let slack = 1.0 + SAMPLING_SLACK;
    let hs = [0.05, 0.1, 0.2];
    let gauss_table = CoeffTable::coefficients(&TestFunction::gauss(0.3)?, 24)?.pruned(1e-18);
    let poly = TestFunction::poly(6, 3);
    let TestFunction::Poly {
        table: poly_table, ..
    } = &poly
    else {
        unreachable!("poly builds a table")
    };
    let phi_table = CoeffTable::coefficients(&TestFunction::parse("phi:1,0,-1", 0)?, 1)?.pruned(1e-14);
    let const_table = CoeffTable::coefficients(&TestFunction::Const, 0)?;
    let tables: [(&str, &CoeffTable); 4] = [
        ("const", &const_table),
        ("phi:1,0,-1", &phi_table),
        ("gauss:0.3", &gauss_table),
        ("poly:6", poly_table),
    ];
    let cone = TestFunction::Cone;
    let mut scaling_worst: f64 = 0.0;
    let mut deriv_worst: f64 = 0.0;
    let mut planar_worst: f64 = 0.0;
    for r in [1usize, 2] {
        for p in [Lp::Finite(2.0), Lp::Infinity] {
            let mut funcs: Vec<(&str, &dyn HexFn)> =
                tables.iter().map(|&(n, t)| (n, t as &dyn HexFn)).collect();
            funcs.push(("cone", &cone));
            for (name, f) in funcs {
                let w = hs
                    .iter()
                    .map(|&h| modulus(f, &ModulusSpec::new(r, h, p).with_norm(StepNorm::Hex)))
                    .collect::<Result<Vec<_>, _>>()?;
                for i in 0..2 {
                    let bound = 3f64.powi(r as i32) * w[i];
                    if w[i + 1] > 0.0 {
                        scaling_worst = scaling_worst.max(w[i + 1] / (bound * slack));
                    }
                }
                if let Some(&(_, table)) = tables.iter().find(|(n, _)| *n == name) {
                    for (i, &h) in hs.iter().enumerate() {
                        let rhs = derivative_bound(table, r, h, p, 128)?;
                        if w[i] > 1e-14 {
                            deriv_worst = deriv_worst.max(w[i] / (rhs * slack));
                        }
                        let planar = modulus(table, &ModulusSpec::new(r, h, p))?;
                        if planar > 1e-14 {
                            planar_worst = planar_worst.max(planar / (rhs * slack));
                        }
                    }
                }
            }
        }
    }
    Ok((
        scaling_worst <= 1.0 && deriv_worst <= 1.0,
        format!(
            "hex step norm, r=1,2 p=2,inf h=0.05,0.1,0.2: max omega(2h)/(3^r omega(h) (1+slack))={scaling_worst:.4}; \
             max omega/(derivative bound (1+slack))={deriv_worst:.4}; tol<=1; info planar step norm ratio={planar_worst:.4}"
        ),
    ))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "orthonormality",
            budget: secs(5),
            check: orthonormality,
        },
        Criterion {
            id: 2,
            name: "dirichlet closed form",
            budget: secs(10),
            check: dirichlet_closed_form,
        },
        Criterion {
            id: 3,
            name: "poisson kernel",
            budget: secs(30),
            check: poisson,
        },
        Criterion {
            id: 4,
            name: "(C,2) positivity and closed form",
            budget: secs(60),
            check: cesaro2,
        },
        Criterion {
            id: 5,
            name: "(C,1) L1 growth",
            budget: secs(60),
            check: cesaro1_l1,
        },
        Criterion {
            id: 6,
            name: "lebesgue growth",
            budget: secs(120),
            check: lebesgue,
        },
        Criterion {
            id: 7,
            name: "jackson kernel moments",
            budget: secs(60),
            check: jackson_moments,
        },
        Criterion {
            id: 8,
            name: "direct theorem",
            budget: secs(120),
            check: direct_theorem,
        },
        Criterion {
            id: 9,
            name: "bernstein inequality",
            budget: secs(60),
            check: bernstein,
        },
        Criterion {
            id: 10,
            name: "smoothed cutoff",
            budget: secs(30),
            check: smoothed_cutoff,
        },
        Criterion {
            id: 11,
            name: "triangle cosines",
            budget: secs(120),
            check: triangle,
        },
        Criterion {
            id: 12,
            name: "modulus properties",
            budget: secs(60),
            check: modulus_properties,
        },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let in_time = elapsed < c.budget;
        let (pass, detail) = match result {
            Ok((pass, detail)) => (pass && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "criterion {:>2} {} {}: {detail} [{:.2}s, budget {}s{}]",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if in_time { "" } else { ", over budget" }
        );
        if !pass {
            failed.push(c.id);
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {failed:?}");
        ExitCode::FAILURE
    }
}

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use hexfourier::approx::{
    self, bernstein_report, inverse_check, jackson_report, lebesgue_report, moments_report,
};
use hexfourier::json::to_string_sig17;
use hexfourier::{
    CoeffTable, ExperimentReport, GridFunction, HexError, JacksonParams, KernelSpec, Lp, SummabilityMethod,
    TestFunction,
};
use rayon::prelude::*;
use serde_json::Value;

use crate::args::{
    Cli, Command, ExpandArgs, Experiment, Format, KernelArgs, KernelType, Output, ReportArgs, SummabArgs,
};

/// Largest tolerated imaginary part in the coefficients of a real function.
const REAL_RESIDUE_LIMIT: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<HexError> for CliError {
    fn from(e: HexError) -> Self {
        match e {
            HexError::ImaginaryResidue { .. } | HexError::ZeroInput | HexError::OffPlane(..) => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<()> {
    let header = invocation();
    match &cli.command {
        Command::Kernel(a) => kernel(a, &header),
        Command::Expand(a) => expand(a, &header),
        Command::Summab(a) => summab(a, &header),
        Command::Report(a) => report(a, &header),
    }
}

/// `hexf <version> <args>`, independent of how the binary was reached.
fn invocation() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("hexf {} {}", hexfourier::VERSION, args.join(" "))
}

fn emit(output: &Output, text: &str) -> Result<()> {
    let res = match &output.out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

fn parse_p(raw: &str) -> Result<Lp> {
    raw.parse::<Lp>()
        .map_err(|e| CliError::Usage(e.to_string()))?
        .validate()
        .map_err(CliError::from)
}

fn kernel_spec(a: &KernelArgs) -> Result<KernelSpec> {
    let n = a.n;
    let integer_r = || -> Result<usize> {
        let r = a.r.unwrap_or(1.0);
        if r.fract() != 0.0 || r < 1.0 {
            return Err(CliError::Usage(format!(
                "jackson power must be a positive integer, got {r}"
            )));
        }
        Ok(r as usize)
    };
    Ok(match a.kind {
        KernelType::Dirichlet => KernelSpec::Dirichlet { n },
        KernelType::Theta => KernelSpec::Theta { n },
        KernelType::Poisson => KernelSpec::Poisson {
            r: a.r.ok_or_else(|| CliError::Usage("poisson needs --r".into()))?,
        },
        KernelType::Cesaro => KernelSpec::Cesaro { n, delta: a.delta },
        KernelType::Cesaro2 => KernelSpec::Cesaro2Closed { n },
        KernelType::Jackson => KernelSpec::Jackson { n, r: integer_r()? },
        KernelType::Eta => KernelSpec::SmoothedCutoff { n },
    })
}

fn kernel(a: &KernelArgs, header: &str) -> Result<()> {
    if a.grid == 0 {
        return Err(CliError::Usage("--grid must be at least 1".into()));
    }
    let spec = kernel_spec(a)?;
    let eval = spec.evaluator()?;
    let n = a.grid;
    let rows: Vec<(f64, f64, [f64; 3], f64)> = (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (ia, ib) = (i / n, i % n);
            let t = GridFunction::node(n, ia, ib);
            // adding 0.0 turns -0 into 0
            (
                ia as f64 / n as f64,
                ib as f64 / n as f64,
                t.coords().map(|x| x + 0.0),
                eval(t),
            )
        })
        .collect();
    let mut text = format!("# {header}\ns1,s2,t1,t2,t3,value\n");
    let mut bad = 0usize;
    for (s1, s2, [t1, t2, t3], v) in rows {
        bad += usize::from(!v.is_finite());
        writeln!(text, "{s1},{s2},{t1},{t2},{t3},{v}").expect("writing to a string");
    }
    emit(&a.output, &text)?;
    if bad > 0 {
        return Err(CliError::Numeric(format!(
            "{bad} non-finite kernel values for {spec}"
        )));
    }
    Ok(())
}

fn with_generator(mut doc: Value, header: &str) -> String {
    if let Value::Object(map) = &mut doc {
        map.insert("generator".into(), Value::String(header.to_string()));
    }
    let mut text = to_string_sig17(&doc);
    text.push('\n');
    text
}

fn expand(a: &ExpandArgs, header: &str) -> Result<()> {
    let f = TestFunction::parse(&a.function, a.seed)?;
    let grid = a.grid.unwrap_or(2 * a.n + 1);
    let c = CoeffTable::coefficients_on_grid(&f, a.n, grid)?;
    if !matches!(f, TestFunction::Phi(_)) {
        let residue = c.real_symmetry_defect();
        if residue > REAL_RESIDUE_LIMIT {
            return Err(HexError::ImaginaryResidue {
                residue,
                limit: REAL_RESIDUE_LIMIT,
            }
            .into());
        }
    }
    let c = c.pruned(a.prune);
    emit(&a.output, &with_generator(c.to_json_value(), header))
}

/// Builds the method at degree `n`.
fn parse_method(raw: &str) -> Result<impl Fn(usize) -> Result<SummabilityMethod>> {
    let bad = || CliError::Usage(format!("invalid method `{raw}`"));
    let (name, arg) = match raw.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (raw, None),
    };
    enum Kind {
        Dirichlet,
        Cesaro(f64),
        Abel(Option<f64>),
        Jackson(usize, Option<usize>),
        Eta,
    }
    let kind = match (name, arg) {
        ("dirichlet", None) => Kind::Dirichlet,
        ("eta", None) => Kind::Eta,
        ("cesaro", Some(d)) => Kind::Cesaro(d.trim().parse().map_err(|_| bad())?),
        ("abel", None) => Kind::Abel(None),
        ("abel", Some(r)) => Kind::Abel(Some(r.trim().parse().map_err(|_| bad())?)),
        ("jackson", Some(p)) => {
            let v: Vec<usize> = p
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            match v[..] {
                [r] => Kind::Jackson(r, None),
                [r, rho] => Kind::Jackson(r, Some(rho)),
                _ => return Err(bad()),
            }
        }
        _ => return Err(bad()),
    };
    Ok(move |n: usize| -> Result<SummabilityMethod> {
        Ok(match kind {
            Kind::Dirichlet => SummabilityMethod::Dirichlet { n },
            Kind::Cesaro(delta) => SummabilityMethod::Cesaro { n, delta },
            // without a radius the sweep takes r = 1 - 1/n
            Kind::Abel(r) => SummabilityMethod::Abel {
                r: r.unwrap_or(1.0 - 1.0 / n.max(1) as f64),
            },
            Kind::Jackson(r, rho) => SummabilityMethod::Jackson(JacksonParams::new(n, r, rho)?),
            Kind::Eta => SummabilityMethod::SmoothedCutoff { n },
        })
    })
}

fn summab(a: &SummabArgs, header: &str) -> Result<()> {
    let f = TestFunction::parse(&a.function, a.seed)?;
    let method = parse_method(&a.method)?;
    let p = parse_p(&a.p)?;
    let mut text = format!("# {header}\nn,error_p\n");
    let mut bad = Vec::new();
    for &n in &a.ns {
        let m = method(n)?;
        let degree = m.input_degree().unwrap_or(n);
        let grid = a.grid.unwrap_or((4 * degree + 1).max(129));
        let e = approx::summability_error(&f, m, p, grid)?;
        if !e.is_finite() {
            bad.push(n);
        }
        writeln!(text, "{n},{e}").expect("writing to a string");
    }
    emit(&a.output, &text)?;
    if !bad.is_empty() {
        return Err(CliError::Numeric(format!("non-finite errors at n = {bad:?}")));
    }
    Ok(())
}

fn parse_alpha(raw: &str) -> Result<[u32; 3]> {
    let v: Vec<u32> = raw
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("invalid multi-index `{raw}`")))?;
    v.try_into()
        .map_err(|_| CliError::Usage(format!("multi-index `{raw}` needs three entries")))
}

fn build_report(a: &ReportArgs) -> Result<ExperimentReport> {
    let ns = |default: &[usize]| a.ns.clone().unwrap_or_else(|| default.to_vec());
    let rs = |default: &[usize]| a.r.clone().unwrap_or_else(|| default.to_vec());
    let single_r = |default: usize| -> Result<usize> {
        match rs(&[default])[..] {
            [r] => Ok(r),
            _ => Err(CliError::Usage("this experiment takes a single --r".into())),
        }
    };
    let p = parse_p(&a.p)?;
    Ok(match a.experiment {
        Experiment::Lebesgue => lebesgue_report(&ns(&[8, 16, 32, 64])),
        Experiment::Moments => {
            let nus = a.nu.clone().unwrap_or_else(|| vec![1.0, 2.0]);
            moments_report(single_r(2)?, &nus, &ns(&[4, 8, 16, 32]))?
        }
        Experiment::Bernstein => {
            let alphas = if a.alpha.is_empty() {
                vec![[1, 0, 0]]
            } else {
                a.alpha.iter().map(|s| parse_alpha(s)).collect::<Result<_>>()?
            };
            bernstein_report(&alphas, p, &ns(&[8, 16, 32]), a.trials, a.seed)?
        }
        Experiment::Jackson => {
            let f = TestFunction::parse(&a.function, a.seed)?;
            jackson_report(&f, &a.function, &rs(&[1, 2]), &ns(&[8, 16, 32]), p, a.grid)?
        }
        Experiment::Inverse => {
            let f = TestFunction::parse(&a.function, a.seed)?;
            let hs = a.hs.clone().unwrap_or_else(|| vec![0.5, 0.25, 0.125]);
            inverse_check(&f, &a.function, single_r(1)?, p, &hs, a.grid)?
        }
    })
}

fn report(a: &ReportArgs, header: &str) -> Result<()> {
    let rep = build_report(a)?;
    let text = match a.format {
        Format::Csv => {
            let mut buf = format!("# {header}\n").into_bytes();
            rep.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
        Format::Json => with_generator(rep.to_json_value(), header),
    };
    emit(&a.output, &text)?;
    let bad: Vec<&str> = rep
        .rows
        .iter()
        .filter(|r| !r.value.is_finite())
        .map(|r| r.method.as_str())
        .collect();
    if !bad.is_empty() {
        return Err(CliError::Numeric(format!("non-finite values in rows {bad:?}")));
    }
    Ok(())
}

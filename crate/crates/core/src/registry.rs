//! Named test functions used by the experiments and the command line.
//!
//! Syntax: `const`, `phi:j1,j2,j3`, `gauss:sigma`, `cone`, `poly:n`.
//! `gauss` and `cone` are periodized over the hexagonal lattice and use the
//! reflection-invariant length `|t|_E = (t1^2 + t2^2 + t3^2)^{1/2}`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, HexError, Result};
use crate::hexcoords::{index_ball, phi, reduce_to_omega, HexIndex, HexPoint};
use crate::operators::CoeffTable;
use crate::quadrature::HexFn;

/// Support radius of `cone`.
pub const CONE_RADIUS: f64 = 0.4;

#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    Const,
    Phi(HexIndex),
    Gauss { sigma: f64, reach: i64 },
    Cone,
    Poly { n: usize, seed: u64, table: CoeffTable },
}

/// Lattice translate with cell coordinates `(a, b)`.
#[inline]
fn lattice(a: i64, b: i64) -> HexPoint {
    HexPoint::new((2 * a - b) as f64, (2 * b - a) as f64)
}

impl TestFunction {
    pub fn gauss(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid("sigma", sigma, "width must be positive"));
        }
        // translates have |v|_E^2 = 6(a^2 - ab + b^2) >= 4.5 max(|a|,|b|)^2 and
        // |t|_E <= √2 on Ω, so farther terms are below exp(-42)
        let reach = ((2f64.sqrt() + 6.5 * sigma) / 4.5f64.sqrt()).ceil() as i64;
        Ok(TestFunction::Gauss { sigma, reach })
    }

    /// Random real element of `𝓗_n` with independent normal coefficients,
    /// scaled to unit mean square.
    pub fn poly(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ball = index_ball(n as i64).expect("non-negative degree");
        let scale = 1.0 / (ball.len() as f64).sqrt();
        let mut table = CoeffTable::new();
        for j in ball {
            if j < j.neg() {
                continue;
            }
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            if j == HexIndex::ZERO {
                table.insert(j, Complex64::new(re * scale, 0.0));
            } else {
                let v = Complex64::new(re, im) * (scale / 2f64.sqrt());
                table.insert(j, v);
                table.insert(j.neg(), v.conj());
            }
        }
        TestFunction::Poly { n, seed, table }
    }

    /// Parses the registry syntax; `seed` is used by `poly`.
    pub fn parse(spec: &str, seed: u64) -> Result<Self> {
        let spec = spec.trim();
        let (name, arg) = match spec.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (spec, None),
        };
        let bad = |what: &str| HexError::Parse(format!("bad {what} in `{spec}`"));
        match (name, arg) {
            ("const", None) => Ok(TestFunction::Const),
            ("cone", None) => Ok(TestFunction::Cone),
            ("phi", Some(a)) => {
                let v: Vec<i64> = a
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| bad("index")))
                    .collect::<Result<_>>()?;
                match v[..] {
                    [j1, j2, j3] => Ok(TestFunction::Phi(HexIndex::from_triple(j1, j2, j3)?)),
                    [j1, j2] => Ok(TestFunction::Phi(HexIndex::new(j1, j2))),
                    _ => Err(bad("index")),
                }
            }
            ("gauss", Some(a)) => Self::gauss(a.trim().parse().map_err(|_| bad("width"))?),
            ("poly", Some(a)) => Ok(Self::poly(a.trim().parse().map_err(|_| bad("degree"))?, seed)),
            _ => Err(HexError::Unknown {
                kind: "function",
                name: spec.to_string(),
            }),
        }
    }

    /// Degree when the function lies in some `𝓗_n`.
    pub fn degree(&self) -> Option<usize> {
        match self {
            TestFunction::Const => Some(0),
            TestFunction::Phi(j) => Some(j.hex_degree() as usize),
            TestFunction::Poly { n, .. } => Some(*n),
            _ => None,
        }
    }

    /// Whether the function is invariant under the reflection group.
    pub fn is_invariant(&self) -> bool {
        matches!(
            self,
            TestFunction::Const | TestFunction::Gauss { .. } | TestFunction::Cone
        )
    }

    /// Exact Fourier coefficient where a closed form is available.
    pub fn exact_coefficient(&self, j: HexIndex) -> Option<Complex64> {
        match self {
            TestFunction::Const => Some(if j == HexIndex::ZERO { 1.0 } else { 0.0 }.into()),
            TestFunction::Phi(k) => Some(if j == *k { 1.0 } else { 0.0 }.into()),
            TestFunction::Poly { table, .. } => Some(table.get(j)),
            TestFunction::Gauss { sigma, .. } => {
                // (1/|Ω|) times the transform of exp(-|t|_E^2 / σ^2)
                let [a, b, c] = j.triple();
                let e2 = (a * a + b * b + c * c) as f64;
                let s2 = sigma * sigma;
                let ft = PI * s2 / 3f64.sqrt() * (-PI * PI * s2 * e2 / 9.0).exp();
                Some((ft / 3.0).into())
            }
            TestFunction::Cone => None,
        }
    }

    pub fn eval_real(&self, t: HexPoint) -> f64 {
        self.eval(t).re
    }
}

fn euclid(t: HexPoint) -> f64 {
    t.euclid_norm()
}

impl HexFn for TestFunction {
    fn eval(&self, t: HexPoint) -> Complex64 {
        match self {
            TestFunction::Const => Complex64::new(1.0, 0.0),
            TestFunction::Phi(j) => phi(*j, t),
            TestFunction::Poly { table, .. } => Complex64::new(table.evaluate(t).re, 0.0),
            TestFunction::Gauss { sigma, reach } => {
                let t0 = reduce_to_omega(t);
                let inv = 1.0 / (sigma * sigma);
                let mut acc = 0.0;
                for a in -reach..=*reach {
                    for b in -reach..=*reach {
                        let p = t0 + lattice(a, b);
                        let [x, y, z] = p.coords();
                        acc += (-(x * x + y * y + z * z) * inv).exp();
                    }
                }
                Complex64::new(acc, 0.0)
            }
            TestFunction::Cone => {
                let t0 = reduce_to_omega(t);
                let mut acc = 0.0;
                for a in -1..=1 {
                    for b in -1..=1 {
                        acc += (1.0 - euclid(t0 + lattice(a, b)) / CONE_RADIUS).max(0.0);
                    }
                }
                Complex64::new(acc, 0.0)
            }
        }
    }

    fn as_table(&self) -> Option<&CoeffTable> {
        match self {
            TestFunction::Poly { table, .. } => Some(table),
            _ => None,
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Const => write!(f, "const"),
            TestFunction::Phi(j) => {
                let [a, b, c] = j.triple();
                write!(f, "phi:{a},{b},{c}")
            }
            TestFunction::Gauss { sigma, .. } => write!(f, "gauss:{sigma}"),
            TestFunction::Cone => write!(f, "cone"),
            TestFunction::Poly { n, .. } => write!(f, "poly:{n}"),
        }
    }
}

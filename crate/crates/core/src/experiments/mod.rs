//! Seeded instance generation, box-count sweeps with exponent fitting, curve
//! runs under a top-form hypothesis, specialization sweeps, and their JSON
//! and CSV serialization.
//!
//! All randomness comes from one `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)`. Coefficients are drawn monomial by monomial in
//! ascending graded-lex order with `gen_range(-c..=c)`.

mod output;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::auxiliary::monomial_basis;
use crate::count::{count_points, count_points_parallel, schwartz_zippel_bound, CountRecord};
use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible, is_r_irreducible};
use crate::geom::is_ncc;
use crate::hilbert::{s_t_count_with, HilbertBound, SpecializationReport};
use crate::poly::{Polynomial, Q};

pub use output::{hilbert_to_csv, hilbert_to_json, sweep_to_csv, sweep_to_json, SCHEMA};

/// Run parameters shared by the sweeps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "B_list")]
    pub b_list: Vec<u64>,
    pub seed: u64,
    /// Named constants: `hilbert_c` and `hilbert_e` for specialization
    /// sweeps, `aux_c` for auxiliary-degree bounds. Missing names fall back
    /// to 1.
    pub calibration: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub workers: usize,
    /// Store wall-clock times in records; off by default so that reruns are
    /// byte-identical.
    pub record_timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            b_list: vec![10, 20, 40],
            seed: 0,
            calibration: BTreeMap::new(),
            tolerance: 1e-9,
            workers: 1,
            record_timing: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.b_list.is_empty() || self.b_list[0] == 0 {
            return Err(Error::InvalidInput("B_list must be nonempty and positive".into()));
        }
        if self.b_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("B_list must be strictly increasing".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidInput("workers must be positive".into()));
        }
        Ok(())
    }

    pub fn calibration(&self, name: &str) -> f64 {
        self.calibration.get(name).copied().unwrap_or(1.0)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }
}

/// Checks [`random_instance`] can impose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    Ncc,
    Irreducible,
    TopForm1Irreducible,
    TopForm2Irreducible,
}

impl std::str::FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ncc" | "NCC" => Ok(Constraint::Ncc),
            "irreducible" => Ok(Constraint::Irreducible),
            "top-form-1-irreducible" => Ok(Constraint::TopForm1Irreducible),
            "top-form-2-irreducible" => Ok(Constraint::TopForm2Irreducible),
            _ => Err(Error::InvalidInput(format!("unknown constraint {s:?}"))),
        }
    }
}

fn satisfies(f: &Polynomial, c: Constraint) -> Result<bool> {
    Ok(match c {
        Constraint::Ncc => is_ncc(f)?,
        Constraint::Irreducible => is_irreducible(f)?,
        Constraint::TopForm1Irreducible => is_r_irreducible(&f.top_form()?, 1)?,
        Constraint::TopForm2Irreducible => is_r_irreducible(&f.top_form()?, 2)?,
    })
}

/// Default number of draws before [`random_instance`] gives up.
pub const DEFAULT_BUDGET: u64 = 1000;

/// A uniformly random polynomial of degree exactly `d` in `n` variables with
/// coefficients in `[-coeff_bound, coeff_bound]` passing every constraint,
/// by rejection sampling.
pub fn random_instance(
    n: usize,
    d: u32,
    coeff_bound: i64,
    constraints: &[Constraint],
    seed: u64,
    budget: u64,
) -> Result<Polynomial> {
    if n < 2 || d < 1 || coeff_bound < 1 {
        return Err(Error::InvalidInput(
            "need n >= 2, d >= 1, coeff_bound >= 1".into(),
        ));
    }
    if n < 3 && constraints.contains(&Constraint::Ncc) {
        return Err(Error::TooFewVariables { needed: 3, got: n });
    }
    let basis = monomial_basis(n, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let f = Polynomial::from_terms(
            n,
            basis.iter().map(|m| {
                let c: i64 = rng.gen_range(-coeff_bound..=coeff_bound);
                (m.exponents().to_vec(), Q::from_integer(c.into()))
            }),
        );
        if f.degree() != Some(d) {
            continue;
        }
        let mut ok = true;
        for &c in constraints {
            if !satisfies(&f, c)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(f);
        }
    }
    Err(Error::BudgetExhausted { attempts: budget })
}

/// Least-squares slope of `ln count` against `ln B` over the points with
/// positive count.
pub fn fit_exponent(points: &[(u64, u64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(b, c)| *c > 0 && *b > 0)
        .map(|&(b, c)| ((b as f64).ln(), (c as f64).ln()))
        .collect();
    let distinct = {
        let mut bs: Vec<u64> = points.iter().filter(|(_, c)| *c > 0).map(|p| p.0).collect();
        bs.sort_unstable();
        bs.dedup();
        bs.len()
    };
    if distinct < 2 {
        return Err(Error::InsufficientData(
            "need at least 2 distinct B with positive count".into(),
        ));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

/// Which harness produced a [`SweepResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunKind {
    Sweep,
    /// Curve run under the hypothesis that the top form has no linear
    /// factor; reported as evidence, never as a verdict.
    CurveSweep,
}

/// Structural facts about a swept polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceMeta {
    pub d: u32,
    pub n: usize,
    /// `None` below three variables, where the notion does not apply.
    pub ncc: Option<bool>,
    pub irreducible: bool,
    pub top_form_1_irreducible: bool,
}

impl InstanceMeta {
    fn of(f: &Polynomial) -> Result<Self> {
        let top = f.top_form()?;
        Ok(InstanceMeta {
            d: f.degree_or_err()?,
            n: f.nvars(),
            ncc: if f.nvars() >= 3 { Some(is_ncc(f)?) } else { None },
            irreducible: is_irreducible(f)?,
            top_form_1_irreducible: is_r_irreducible(&top, 1)?,
        })
    }
}

/// Outcome of [`sweep`] or [`curve_sweep`].
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub kind: RunKind,
    pub instance: String,
    pub meta: InstanceMeta,
    pub records: Vec<CountRecord>,
    pub fitted_exponent: Option<f64>,
}

/// Counts integral points of `V(f)` for each `B` in the config and fits the
/// growth exponent.
pub fn sweep(f: &Polynomial, config: &ExperimentConfig) -> Result<SweepResult> {
    config.validate()?;
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let meta = InstanceMeta::of(f)?;
    let m = (f.nvars() - 1) as u32;
    let mut records = Vec::with_capacity(config.b_list.len());
    for &b in &config.b_list {
        let start = Instant::now();
        let count = if config.workers > 1 {
            count_points_parallel(f, b, config.workers)?
        } else {
            count_points(f, b)?
        };
        let elapsed = start.elapsed().as_millis() as u64;
        records.push(CountRecord {
            b,
            count,
            sz_bound: schwartz_zippel_bound(meta.d as u64, m, b),
            elapsed_ms: if config.record_timing { elapsed } else { 0 },
        });
    }
    let pts: Vec<(u64, u64)> = records.iter().map(|r| (r.b, r.count)).collect();
    Ok(SweepResult {
        kind: RunKind::Sweep,
        instance: f.to_string(),
        meta,
        records,
        fitted_exponent: fit_exponent(&pts).ok(),
    })
}

/// [`sweep`] for a plane curve whose top form has no linear factor over `Q`.
pub fn curve_sweep(f: &Polynomial, config: &ExperimentConfig) -> Result<SweepResult> {
    if f.nvars() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected a plane curve in 2 variables, got {}",
            f.nvars()
        )));
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let top = f.top_form()?;
    if let Some((g, _)) = factor(&top)?.factors.iter().find(|(g, _)| g.degree() == Some(1)) {
        return Err(Error::Hypothesis(format!("top form has the linear factor {g}")));
    }
    let mut r = sweep(f, config)?;
    r.kind = RunKind::CurveSweep;
    Ok(r)
}

/// Specialization counts for each `B'` and their fitted exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertSweep {
    pub instance: String,
    pub reports: Vec<SpecializationReport>,
    pub elapsed_ms: Vec<u64>,
    pub fitted_exponent: Option<f64>,
}

/// Runs [`s_t_count_with`] over `b_primes`; the comparator uses the
/// calibration entries `hilbert_c` and `hilbert_e`.
pub fn hilbert_sweep(
    f: &Polynomial,
    b_primes: &[u64],
    config: &ExperimentConfig,
) -> Result<HilbertSweep> {
    let bound = HilbertBound {
        constant: config.calibration("hilbert_c"),
        exponent: config.calibration("hilbert_e"),
    };
    let mut reports = Vec::with_capacity(b_primes.len());
    let mut elapsed_ms = Vec::with_capacity(b_primes.len());
    for &bp in b_primes {
        let start = Instant::now();
        reports.push(s_t_count_with(f, bp, false, bound, config.workers)?);
        let e = start.elapsed().as_millis() as u64;
        elapsed_ms.push(if config.record_timing { e } else { 0 });
    }
    let pts: Vec<(u64, u64)> = reports.iter().map(|r| (r.b_prime, r.s_t)).collect();
    Ok(HilbertSweep {
        instance: f.to_string(),
        reports,
        elapsed_ms,
        fitted_exponent: fit_exponent(&pts).ok(),
    })
}

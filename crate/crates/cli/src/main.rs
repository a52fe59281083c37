//! `dgl`: batch driver for point counts, structure checks and sweeps.
//!
//! Exit codes: 0 on success, 2 for invalid input or a violated hypothesis,
//! 3 when a search or rejection budget runs out.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dgl_core::count::{
    count_on_line, count_projective, find_lines_on_surface, schwartz_zippel_bound, CountRecord,
};
use dgl_core::experiments::{
    curve_sweep, hilbert_sweep, hilbert_to_csv, hilbert_to_json, sweep, sweep_to_csv,
    sweep_to_json, random_instance, Constraint, ExperimentConfig, SweepResult, DEFAULT_BUDGET,
    SCHEMA,
};
use dgl_core::{auxiliary, factor, geom, Error, Polynomial};

#[derive(Parser)]
#[command(name = "dgl", version, about = "Exact point counting on hypersurfaces over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integral points in boxes (or projective points with --projective).
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        projective: bool,
    },
    /// Partial-derivative span and cylinder certificate; with --slice-r,
    /// also search for a hyperplane slice keeping the top form
    /// r-irreducible.
    Ncc {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        slice_r: Option<u32>,
        /// Height bound for the slice search.
        #[arg(long, default_value_t = 10)]
        height: u64,
    },
    /// Factorization over Q.
    Factor {
        #[command(flatten)]
        common: Common,
        /// Also test absolute irreducibility (two variables only).
        #[arg(long)]
        absolute: bool,
    },
    /// Lines on a surface in three variables.
    Lines {
        #[command(flatten)]
        common: Common,
        /// Height bound for directions.
        #[arg(long, default_value_t = 10)]
        height: u64,
    },
    /// Least-degree auxiliary polynomial for the first B, with the degree
    /// bound scaled by the calibration entry `aux_c`.
    Aux {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        k_max: u32,
    },
    /// Reducible specialization counts; B-list holds the B' values and the
    /// first variable plays T.
    Hilbert {
        #[command(flatten)]
        common: Common,
    },
    /// Count sweep over B-list with exponent fit. With --random the
    /// instance is drawn from the seed instead of --poly.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// `n,d,coeff_bound` of a seeded random instance.
        #[arg(long, value_delimiter = ',')]
        random: Vec<i64>,
        /// Constraints on the random instance: ncc, irreducible,
        /// top-form-1-irreducible, top-form-2-irreducible.
        #[arg(long, value_delimiter = ',')]
        constraints: Vec<String>,
    },
    /// Curve sweep under the no-linear-factor top form hypothesis.
    CurveSweep {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Polynomial text, e.g. "x1^2 - 2*x2^2 - 1".
    #[arg(long, conflicts_with = "poly_file")]
    poly: Option<String>,
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Number of variables; defaults to the largest index in the text.
    #[arg(long)]
    nvars: Option<usize>,
    /// Box radii, comma separated.
    #[arg(short = 'B', long = "B-list", value_delimiter = ',')]
    b_list: Vec<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn poly(&self) -> anyhow::Result<Polynomial> {
        let text = match (&self.poly, &self.poly_file) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => fs::read_to_string(p)
                .with_context(|| format!("reading {}", p.display()))?,
            (None, None) => bail!(Error::InvalidInput("one of --poly or --poly-file is required".into())),
        };
        let n = self.nvars.unwrap_or_else(|| infer_nvars(&text));
        Ok(Polynomial::parse(text.trim(), n)?)
    }

    fn config(&self) -> anyhow::Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?;
                ExperimentConfig::from_json(&text)?
            }
            None => ExperimentConfig::default(),
        };
        if !self.b_list.is_empty() {
            c.b_list = self.b_list.clone();
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(w) = self.workers {
            c.workers = w;
        }
        c.validate()?;
        Ok(c)
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn json_only(&self, v: Value) -> anyhow::Result<()> {
        if self.format == Format::Csv {
            bail!(Error::InvalidInput("this subcommand only writes JSON".into()));
        }
        self.emit(&(serde_json::to_string_pretty(&v)? + "\n"))
    }
}

/// Largest `k` among the variables `xk` in the text, at least 1.
fn infer_nvars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 1;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                best = best.max(k);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

fn emit_sweep(common: &Common, r: &SweepResult) -> anyhow::Result<()> {
    common.emit(&match common.format {
        Format::Json => sweep_to_json(r),
        Format::Csv => sweep_to_csv(r),
    })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Count { common, projective } => {
            let f = common.poly()?;
            let cfg = common.config()?;
            let mut r = sweep(&f, &cfg)?;
            if projective {
                let d = f.degree_or_err()? as u64;
                r.records = cfg
                    .b_list
                    .iter()
                    .map(|&b| {
                        Ok(CountRecord {
                            b,
                            count: count_projective(&f, b)?,
                            sz_bound: schwartz_zippel_bound(d, (f.nvars() - 1) as u32, b),
                            elapsed_ms: 0,
                        })
                    })
                    .collect::<Result<_, Error>>()?;
                r.fitted_exponent = None;
            }
            emit_sweep(&common, &r)
        }
        Command::Ncc {
            common,
            slice_r,
            height,
        } => {
            let f = common.poly()?;
            let cert = geom::extract_cylinder(&f)?;
            let slice = match slice_r {
                Some(r) => {
                    let d = f.degree_or_err()?;
                    let s = geom::find_good_slice(&f, r, height, geom::default_b_samples(d))?;
                    json!({
                        "ell": s.ell.to_string(),
                        "ell_prime": s.ell_prime.to_string(),
                        "t": s.t,
                        "sampled_b": s.sampled_b,
                        "bad_b": s.bad_b,
                    })
                }
                None => Value::Null,
            };
            common.json_only(json!({
                "slice": slice,
                "schema": SCHEMA,
                "instance": f.to_string(),
                "span_dim": geom::partials_span_dim(&f)?,
                "ncc": geom::is_ncc(&f)?,
                "certificate": cert.map(|c| json!({
                    "ell1": c.ell1.to_string(),
                    "ell2": c.ell2.to_string(),
                    "g": c.g.to_string(),
                })),
            }))
        }
        Command::Factor { common, absolute } => {
            let f = common.poly()?;
            let fac = factor::factor(&f)?;
            let mut v = json!({
                "schema": SCHEMA,
                "instance": f.to_string(),
                "unit": fac.unit.to_string(),
                "factors": fac.factors.iter().map(|(g, e)| json!({
                    "factor": g.to_string(),
                    "multiplicity": e,
                })).collect::<Vec<_>>(),
                "irreducible": fac.is_irreducible(),
            });
            if absolute {
                v["absolutely_irreducible"] = json!(factor::is_absolutely_irreducible_bivariate(&f)?);
            }
            common.json_only(v)
        }
        Command::Lines { common, height } => {
            let f = common.poly()?;
            let found = find_lines_on_surface(&f, height)?;
            let lines: Vec<Value> = found
                .lines
                .iter()
                .map(|l| {
                    json!({
                        "base": l.base().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                        "direction": l.direction(),
                        "counts": common.b_list.iter().map(|&b| json!({"B": b, "count": count_on_line(l, b)})).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let families: Vec<Value> = found
                .families
                .iter()
                .map(|fam| {
                    json!({
                        "direction": fam.direction,
                        "fixed_index": fam.fixed_index,
                        "free_indices": fam.free_indices(),
                        "curve": fam.curve.to_string(),
                    })
                })
                .collect();
            common.json_only(json!({
                "schema": SCHEMA,
                "instance": f.to_string(),
                "height_bound": height,
                "lines": lines,
                "families": families,
            }))
        }
        Command::Aux { common, k_max } => {
            let f = common.poly()?;
            let cfg = common.config()?;
            let b = cfg.b_list[0];
            let r = auxiliary::min_aux(&f, b, k_max)?;
            common.json_only(json!({
                "schema": SCHEMA,
                "instance": f.to_string(),
                "B": b,
                "k_max": k_max,
                "min_degree": r.as_ref().map(|r| r.degree),
                "g": r.as_ref().map(|r| r.g.to_string()),
                "points_used": r.as_ref().map(|r| r.points_used),
                "bound_value": auxiliary::aux_degree_bound(
                    f.degree_or_err()?,
                    (f.nvars() - 1) as u32,
                    b as f64,
                    cfg.calibration("aux_c"),
                ),
            }))
        }
        Command::Hilbert { common } => {
            let f = common.poly()?;
            let cfg = common.config()?;
            let h = hilbert_sweep(&f, &cfg.b_list, &cfg)?;
            common.emit(&match common.format {
                Format::Json => hilbert_to_json(&h),
                Format::Csv => hilbert_to_csv(&h),
            })
        }
        Command::Sweep {
            common,
            random,
            constraints,
        } => {
            let cfg = common.config()?;
            let f = if random.is_empty() {
                common.poly()?
            } else {
                if random.len() != 3 {
                    bail!(Error::InvalidInput("--random takes n,d,coeff_bound".into()));
                }
                let cs = constraints
                    .iter()
                    .map(|c| c.parse::<Constraint>())
                    .collect::<Result<Vec<_>, _>>()?;
                let n = usize::try_from(random[0]).map_err(|_| Error::InvalidInput("n".into()))?;
                let d = u32::try_from(random[1]).map_err(|_| Error::InvalidInput("d".into()))?;
                random_instance(n, d, random[2], &cs, cfg.seed, DEFAULT_BUDGET)?
            };
            emit_sweep(&common, &sweep(&f, &cfg)?)
        }
        Command::CurveSweep { common } => {
            let f = common.poly()?;
            let cfg = common.config()?;
            emit_sweep(&common, &curve_sweep(&f, &cfg)?)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::SearchExhausted { .. } | Error::BudgetExhausted { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dgl: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

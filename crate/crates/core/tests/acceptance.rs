//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use dgl_core::auxiliary::{aux_poly, min_aux_degree, aux_degree_bound};
use dgl_core::count::{count_on_line, count_points, count_projective, find_lines_on_surface, Line};
use dgl_core::experiments::{
    hilbert_sweep, hilbert_to_csv, hilbert_to_json, random_instance, sweep, sweep_to_csv, sweep_to_json,
    ExperimentConfig,
};
use dgl_core::factor::{factor, is_absolutely_irreducible_bivariate, is_r_irreducible};
use dgl_core::geom::{
    default_b_samples, extract_cylinder, find_good_slice, is_ncc, slice, top_form_slice_ok,
};
use dgl_core::hilbert::s_t_count;
use dgl_core::poly::Q;
use dgl_core::{LinearForm, Polynomial};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const HILBERT_EXPONENT: (f64, f64) = (0.48, 0.52);
const HILBERT_TIME_LIMIT: Duration = Duration::from_secs(60);
const SZ_TIME_LIMIT: Duration = Duration::from_secs(120);
const AUX_TIME_LIMIT: Duration = Duration::from_secs(300);
const GROWTH_EXPONENT: (f64, f64) = (0.9, 1.15);
const GROWTH_TIME_LIMIT: Duration = Duration::from_secs(600);
/// Required fraction of the ideal speedup `min(workers, cores)`.
const SPEEDUP_EFFICIENCY: f64 = 0.75;
const SWEEP_WORKERS: usize = 4;

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn config(b_list: Vec<u64>, workers: usize) -> ExperimentConfig {
    ExperimentConfig {
        b_list,
        workers,
        ..ExperimentConfig::default()
    }
}

fn hilbert_sharpness() -> Outcome {
    let f = p("x2^2 - x1", 2);
    let b_primes = [100u64, 10_000, 1_000_000];
    let mut counts = Vec::new();
    for &b in &b_primes {
        let start = Instant::now();
        let r = s_t_count(&f, b, false).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure!(r.s_t == b.sqrt() + 1, "s_t({b}) = {}, expected {}", r.s_t, b.sqrt() + 1);
        if b == 1_000_000 {
            ensure!(took < HILBERT_TIME_LIMIT, "B' = 10^6 took {}", secs(took));
        }
        counts.push((r.s_t, took));
    }
    let h = hilbert_sweep(&f, &b_primes, &config(vec![1], 1)).map_err(|e| e.to_string())?;
    let e = h.fitted_exponent.ok_or("no fitted exponent")?;
    ensure!((HILBERT_EXPONENT.0..=HILBERT_EXPONENT.1).contains(&e), "exponent {e:.4}");
    Ok(format!(
        "s_t = {}/{}/{}, exponent {e:.4}, {} at B' = 10^6",
        counts[0].0,
        counts[1].0,
        counts[2].0,
        secs(counts[2].1)
    ))
}

/// Projective points of height at most `b` by direct search over primitive
/// representatives with positive first nonzero coordinate.
fn brute_projective(f: &Polynomial, b: i64) -> u64 {
    brute_points(f, b)
        .into_iter()
        .filter(|x| {
            let g = x.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
            g == 1 && x.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
        })
        .count() as u64
}

/// Solutions of `x^2 - 2 y^2 = 1` in the box, one `y` at a time.
fn brute_pell(b: i64) -> u64 {
    let mut n = 0;
    for y in -b..=b {
        let s = 1 + 2 * y * y;
        let x = s.sqrt();
        if x * x == s && x <= b {
            n += if x == 0 { 1 } else { 2 };
        }
    }
    n
}

fn exact_counts() -> Outcome {
    let sphere = p("x1^2 + x2^2 + x3^2 - 3", 3);
    let plane = p("x1 + x2 + x3", 3);
    let conic = p("x1^2 + x2^2 - 2*x3^2", 3);
    let pell = p("x1^2 - 2*x2^2 - 1", 2);
    let err = |e: dgl_core::Error| e.to_string();
    let got = [
        count_points(&sphere, 1).map_err(err)?,
        count_points(&plane, 1).map_err(err)?,
        count_projective(&conic, 1).map_err(err)?,
        count_points(&pell, 10_000).map_err(err)?,
    ];
    let oracle = [
        brute_points(&sphere, 1).len() as u64,
        brute_points(&plane, 1).len() as u64,
        brute_projective(&conic, 1),
        brute_pell(10_000),
    ];
    let expected = [8u64, 7, 4, 22];
    ensure!(got == expected, "counts {got:?}, expected {expected:?}");
    ensure!(oracle == expected, "oracles {oracle:?}, expected {expected:?}");
    Ok(format!("counts {got:?} match brute force"))
}

fn schwartz_zippel() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
        let d = 1 + (i % 5) as u32;
        let b = 1 + i % 10;
        let f = random_poly(&mut rng, 3, d, 9);
        let count = count_points(&f, b).map_err(|e| e.to_string())?;
        let bound = u64::from(d) * (2 * b + 1).pow(2);
        ensure!(count <= bound, "instance {i}: {count} > {bound} for {f}");
        worst = worst.max(count as f64 / bound as f64);
    }
    let took = start.elapsed();
    ensure!(took < SZ_TIME_LIMIT, "took {}", secs(took));
    Ok(format!("200 instances, 0 violations, max count/bound {worst:.3}, {}", secs(took)))
}

/// Box points of `line` by stepping the coordinate where its base is zero.
fn interval_count(line: &Line, b: i64) -> u64 {
    let k = line.direction().iter().position(|&v| v != 0).unwrap();
    let vk = line.direction()[k];
    let mut n = 0;
    for xk in -b..=b {
        let t = Q::new(xk.into(), vk.into());
        let pt = line.point_at(&t);
        if pt.iter().all(|c| c.is_integer() && c.to_integer().abs() <= BigInt::from(b)) {
            n += 1;
        }
    }
    n
}

fn fermat_lines() -> Outcome {
    let f = p("x1^3 + x2^3 + x3^3 - 1", 3);
    let found = find_lines_on_surface(&f, 10).map_err(|e| e.to_string())?;
    ensure!(found.families.is_empty(), "unexpected families");
    ensure!(found.lines.len() == 3, "{} lines", found.lines.len());
    let t = Polynomial::var(1, 0);
    for line in &found.lines {
        let images: Vec<Polynomial> = line
            .base()
            .iter()
            .zip(line.direction())
            .map(|(a, &v)| &Polynomial::constant(1, a.clone()) + &t.scale(&q(v)))
            .collect();
        ensure!(f.substitute(&images).unwrap().is_zero(), "{line:?} is not on the surface");
        for b in [1u64, 10, 1000] {
            let (got, want) = (count_on_line(line, b), interval_count(line, b as i64));
            ensure!(got == want, "{line:?} at B = {b}: {got} vs {want}");
        }
    }
    Ok("3 lines, identities verified, line counts match at B = 1, 10, 1000".into())
}

fn auxiliary() -> Outcome {
    let start = Instant::now();
    let f = p("x1 - x2^2", 2);
    ensure!(aux_poly(&f, 2, 1).map_err(|e| e.to_string())?.is_none(), "k = 1 was not refused");
    let m = min_aux_degree(&f, 2, 12).map_err(|e| e.to_string())?;
    ensure!(m == Some(2), "min degree {m:?}");
    // calibrate on the two smallest boxes, then check the whole grid
    let grid: Vec<(u32, u64)> = (2..=4).flat_map(|d| (2..=7).map(move |k| (d, 1u64 << k))).collect();
    let mut degrees = Vec::new();
    for &(d, b) in &grid {
        let g = &Polynomial::var(2, 0).pow(d) - &Polynomial::var(2, 1);
        let m = min_aux_degree(&g, b, 40).map_err(|e| e.to_string())?.ok_or(format!("none for d = {d}, B = {b}"))?;
        degrees.push(m);
    }
    let ratio = |i: usize| {
        let (d, b) = grid[i];
        f64::from(degrees[i]) / aux_degree_bound(d, 1, b as f64, 1.0)
    };
    let c_star = (0..grid.len()).filter(|&i| grid[i].1 <= 8).map(ratio).fold(0.0, f64::max);
    for (i, &(d, b)) in grid.iter().enumerate() {
        let bound = aux_degree_bound(d, 1, b as f64, c_star);
        ensure!(f64::from(degrees[i]) <= bound, "d = {d}, B = {b}: degree {} > {bound:.3}", degrees[i]);
    }
    let took = start.elapsed();
    ensure!(took < AUX_TIME_LIMIT, "took {}", secs(took));
    Ok(format!(
        "min degree 2 with k = 1 refused; C* = {c_star:.4} from B <= 8 holds on {} grid points, {}",
        grid.len(),
        secs(took)
    ))
}

fn ncc_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..500 {
        let n = 3 + i % 3;
        let (f, _) = cylinder_constructed(&mut rng, n);
        ensure!(!is_ncc(&f).unwrap(), "cylinder {i} reported NCC: {f}");
        let cert = extract_cylinder(&f).unwrap().ok_or(format!("no certificate for {f}"))?;
        ensure!(cert.verifies(&f), "certificate for {f} does not verify");
    }
    for i in 0..500 {
        let f = ncc_constructed(&mut rng, 3 + i % 3);
        ensure!(is_ncc(&f).unwrap(), "constructed NCC {i} not detected: {f}");
    }
    for i in 0..100 {
        let n = 3 + i % 2;
        let f = if i % 2 == 0 {
            cylinder_constructed(&mut rng, n).0
        } else {
            ncc_constructed(&mut rng, n)
        };
        let m = unimodular(&mut rng, n, 8);
        ensure!(is_ncc(&f).unwrap() == is_ncc(&change(&f, &m)).unwrap(), "invariance fails for {f}");
    }
    Ok("500 cylinders certified, 500 NCC detected, 100 unimodular changes invariant".into())
}

fn slicing() -> Outcome {
    let mut detail = Vec::new();
    for d in [3u32, 5] {
        let f = (0..4).fold(Polynomial::zero(4), |acc, i| &acc + &Polynomial::var(4, i).pow(d));
        let s = find_good_slice(&f, 2, 10, default_b_samples(d)).map_err(|e| e.to_string())?;
        let h = s.ell.height().max(s.ell_prime.height()).max(s.t.unsigned_abs());
        ensure!(h <= 10, "height {h}");
        let sliced = slice(&f.top_form().unwrap(), &s.spec(0)).map_err(|e| e.to_string())?;
        ensure!(is_r_irreducible(&sliced, 2).unwrap(), "sliced top form {sliced} is not 2-irreducible");
        detail.push(format!("d = {d}: t = {}, bad b {:?}", s.t, s.bad_b));
    }
    let cubic = p("x1^3 + x2^3 + x3^3 + x4^3", 4);
    let (ell, ell_prime) = (LinearForm::coordinate(4, 3), LinearForm::coordinate(4, 2));
    ensure!(!top_form_slice_ok(&cubic, &ell, &ell_prime, -1, 2).unwrap(), "t = -1 accepted");
    let spec = dgl_core::geom::SliceSpec { ell, ell_prime, t: -1, b: Q::zero() };
    let sliced = slice(&cubic, &spec).unwrap();
    ensure!(sliced.div_exact(&p("x1 + x2", 3)).is_some(), "x1 + x2 does not divide {sliced}");
    Ok(format!("{}; t = -1 rejected (x1 + x2 divides the sliced top form)", detail.join("; ")))
}

fn growth() -> Outcome {
    let f = p("x1^5 + x2^5 + x3^5 - 1", 3);
    let b_list = vec![25, 50, 100, 200, 400];
    let start = Instant::now();
    let seq = sweep(&f, &config(b_list.clone(), 1)).map_err(|e| e.to_string())?;
    let t_seq = start.elapsed();
    ensure!(t_seq < GROWTH_TIME_LIMIT, "single-threaded sweep took {}", secs(t_seq));
    let start = Instant::now();
    let par = sweep(&f, &config(b_list, SWEEP_WORKERS)).map_err(|e| e.to_string())?;
    let t_par = start.elapsed();
    ensure!(sweep_to_json(&seq) == sweep_to_json(&par), "parallel output differs");
    let e = seq.fitted_exponent.ok_or("no fitted exponent")?;
    ensure!((GROWTH_EXPONENT.0..=GROWTH_EXPONENT.1).contains(&e), "exponent {e:.4}");
    let brute = brute_points(&f, 25).len() as u64;
    ensure!(seq.records[0].count == brute, "B = 25: {} vs brute force {brute}", seq.records[0].count);
    let cores = std::thread::available_parallelism().map_or(1, |c| c.get());
    let ideal = SWEEP_WORKERS.min(cores) as f64;
    let speedup = t_seq.as_secs_f64() / t_par.as_secs_f64();
    ensure!(
        speedup >= SPEEDUP_EFFICIENCY * ideal,
        "speedup {speedup:.2} with {SWEEP_WORKERS} workers on {cores} cores (ideal {ideal})"
    );
    let counts: Vec<u64> = seq.records.iter().map(|r| r.count).collect();
    Ok(format!(
        "counts {counts:?}, exponent {e:.4}, brute force {brute} at B = 25, 1 worker {} / {SWEEP_WORKERS} workers {} \
         (speedup {speedup:.2}, cores available: {cores}), outputs identical",
        secs(t_seq),
        secs(t_par)
    ))
}

fn factorization() -> Outcome {
    for seed in 0..500 {
        check_round_trip(seed)?;
    }
    ensure!(factor(&p("x1^4 + 1", 1)).unwrap().is_irreducible(), "x1^4 + 1 split");
    let cases = [("x1^2 - 2*x2^2", false), ("x1^2 + x2 - 1", true), ("x2^2 - x1^3 + x1", true)];
    for (s, want) in cases {
        let got = is_absolutely_irreducible_bivariate(&p(s, 2)).unwrap();
        ensure!(got == want, "{s}: {got}");
    }
    Ok("500 round trips, x1^4 + 1 irreducible, 3 absolute-irreducibility examples".into())
}

fn reproducibility() -> Outcome {
    let cfg = ExperimentConfig::from_json(r#"{"B_list":[3,6,12],"seed":17,"workers":2}"#).map_err(|e| e.to_string())?;
    let run = || -> Result<[String; 4], String> {
        let f = random_instance(3, 3, 5, &[], cfg.seed, 100).map_err(|e| e.to_string())?;
        let s = sweep(&f, &cfg).map_err(|e| e.to_string())?;
        let h = hilbert_sweep(&p("x2^3 - x1", 2), &[10, 100, 1000], &cfg).map_err(|e| e.to_string())?;
        Ok([sweep_to_json(&s), sweep_to_csv(&s), hilbert_to_json(&h), hilbert_to_csv(&h)])
    };
    let (a, b) = (run()?, run()?);
    ensure!(a == b, "outputs differ between runs");
    let bytes: usize = a.iter().map(String::len).sum();
    Ok(format!("two runs byte-identical across 4 outputs ({bytes} bytes)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("hilbert sharpness", hilbert_sharpness),
        ("exact counts", exact_counts),
        ("schwartz-zippel", schwartz_zippel),
        ("fermat cubic lines", fermat_lines),
        ("auxiliary polynomial", auxiliary),
        ("ncc suite", ncc_suite),
        ("slicing", slicing),
        ("dimension growth", growth),
        ("factorization", factorization),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

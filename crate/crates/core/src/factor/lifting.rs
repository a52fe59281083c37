//! Factorization over `Q` by lifting: specialize every variable but the
//! first, factor the univariate image, lift the factors over the power
//! series ring in the remaining variables (truncated by total degree), and
//! recombine by trial division. The factor module uses it for two variables;
//! the lifting itself works for any number.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::QPoly;
use super::zassenhaus::{factor_squarefree, is_squarefree_z, subsets};
use crate::poly::{content_in, Polynomial, Q};

/// Homogeneous part of a series: exponent vector of the series variables
/// to a coefficient in `Q[x]`.
type Part = BTreeMap<Vec<u32>, QPoly>;

/// Series indexed by total degree, truncated at `len()`.
type Series = Vec<Part>;

/// How many admissible evaluation points to compare before lifting.
const EVAL_TRIALS: usize = 3;

/// Irreducible factors of `p` where variable 0 is the main variable.
/// Requires `p` squarefree, primitive in variable 0, of positive degree in
/// it, and with at least two variables.
pub(crate) fn factor_squarefree_lifting(p: &Polynomial) -> Vec<Polynomial> {
    debug_assert!(p.nvars() >= 2);
    let n = p.deg_in(0) as usize;
    let (c, images) = choose_evaluation(p, n);
    if images.len() == 1 {
        return vec![p.normalized()];
    }
    let shifted = shift(p, &c, 1);
    let k = (series_degree(&shifted) + series_degree(&shifted.lc_in(0)) + 1) as usize;
    let lifted = hensel_lift(&shifted, &images, k);
    recombine(&shifted, lifted, k)
        .iter()
        .map(|g| shift(g, &c, -1).normalized())
        .collect()
}

/// Total degree in the series variables.
fn series_degree(p: &Polynomial) -> u32 {
    p.terms()
        .map(|(m, _)| m.exponents()[1..].iter().sum::<u32>())
        .max()
        .unwrap_or(0)
}

/// `p(x, y + sign * c)`.
fn shift(p: &Polynomial, c: &[i64], sign: i64) -> Polynomial {
    if c.iter().all(|&v| v == 0) {
        return p.clone();
    }
    let nv = p.nvars();
    let mut images = vec![Polynomial::var(nv, 0)];
    for (i, &v) in c.iter().enumerate() {
        images.push(&Polynomial::var(nv, i + 1) + &Polynomial::from_int(nv, sign * v));
    }
    p.substitute(&images).expect("one image per variable")
}

/// Candidate points: the origin, then `1, -1, 2, -2, ...` with one series
/// variable, or pseudo-random points of slowly growing radius with more.
fn evaluation_point(m: usize, step: u64, rng: &mut ChaCha8Rng) -> Vec<i64> {
    if m == 1 {
        let c = if step % 2 == 1 { step.div_ceil(2) as i64 } else { -(step as i64 / 2) };
        return vec![c];
    }
    if step == 0 {
        return vec![0; m];
    }
    let r = 1 + (step / (2 * m as u64)) as i64;
    (0..m).map(|_| rng.gen_range(-r..=r)).collect()
}

/// First few points with `lc(c) != 0` and `p(x, c)` squarefree; keeps the
/// one whose image has the fewest factors.
fn choose_evaluation(p: &Polynomial, n: usize) -> (Vec<i64>, Vec<QPoly>) {
    let m = p.nvars() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut best: Option<(Vec<i64>, Vec<QPoly>)> = None;
    let mut found = 0;
    for step in 0u64.. {
        let c = evaluation_point(m, step, &mut rng);
        let mut img = p.clone();
        for (i, &v) in c.iter().enumerate() {
            img = img.partial_eval(i + 1, &Q::from_integer(v.into()));
        }
        let image = QPoly::from_poly(&img, 0);
        if image.degree() != Some(n) {
            continue;
        }
        let z = image.to_primitive_z();
        if !is_squarefree_z(&z) {
            continue;
        }
        found += 1;
        let factors: Vec<QPoly> = factor_squarefree(&z)
            .iter()
            .map(|f| QPoly::from_z(f).monic())
            .collect();
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            let done = factors.len() == 1;
            best = Some((c, factors));
            if done {
                break;
            }
        }
        if found >= EVAL_TRIALS {
            break;
        }
    }
    best.expect("some evaluation point is admissible")
}

fn to_series(p: &Polynomial, k: usize) -> Series {
    let mut dense: Vec<BTreeMap<Vec<u32>, Vec<Q>>> = vec![BTreeMap::new(); k];
    for (m, c) in p.terms() {
        let e = m.exponents();
        let j = e[1..].iter().sum::<u32>() as usize;
        if j >= k {
            continue;
        }
        let v = dense[j].entry(e[1..].to_vec()).or_default();
        let i = e[0] as usize;
        if v.len() <= i {
            v.resize(i + 1, Q::zero());
        }
        v[i] = c.clone();
    }
    dense
        .into_iter()
        .map(|d| d.into_iter().map(|(e, v)| (e, QPoly(v).trimmed())).collect())
        .collect()
}

fn from_series(s: &Series, nvars: usize) -> Polynomial {
    let mut terms = Vec::new();
    for part in s {
        for (e, q) in part {
            for (i, c) in q.0.iter().enumerate() {
                if !c.is_zero() {
                    let mut m = vec![i as u32];
                    m.extend_from_slice(e);
                    terms.push((m, c.clone()));
                }
            }
        }
    }
    Polynomial::from_terms(nvars, terms)
}

fn add_into(part: &mut Part, e: Vec<u32>, q: QPoly) {
    let slot = part.entry(e).or_insert_with(QPoly::zero);
    *slot = slot.add(&q);
}

/// Degree-`j` part of `a * b`.
fn product_part(a: &Series, b: &Series, j: usize) -> Part {
    let mut out = Part::new();
    for i in 0..=j {
        let (Some(pa), Some(pb)) = (a.get(i), b.get(j - i)) else {
            continue;
        };
        for (ea, qa) in pa {
            for (eb, qb) in pb {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                add_into(&mut out, e, qa.mul(qb));
            }
        }
    }
    out.retain(|_, q| !q.is_zero());
    out
}

fn series_mul(a: &Series, b: &Series, k: usize) -> Series {
    (0..k).map(|j| product_part(a, b, j)).collect()
}

/// Inverse of a series whose coefficients are constants in `x`, with
/// nonzero constant term.
fn series_inverse(l: &Series, k: usize) -> Series {
    let l0 = l[0].values().next().expect("nonzero constant term").coeff(0);
    let m = l[0].keys().next().expect("constant term").len();
    let mut inv: Series = vec![Part::new(); k];
    inv[0].insert(vec![0; m], QPoly::constant(l0.recip()));
    let neg_inv = -l0.recip();
    for j in 1..k {
        // inv[j] is still empty, so this sums l[i] * inv[j - i] over i >= 1
        let s = product_part(l, &inv, j);
        inv[j] = s.into_iter().map(|(e, q)| (e, q.scale(&neg_inv))).collect();
    }
    inv
}

/// Lifts the monic univariate factors of `p(x, 0)` to monic factors of
/// `p / lc_x(p)` modulo terms of total degree `k`.
fn hensel_lift(p: &Polynomial, images: &[QPoly], k: usize) -> Vec<Series> {
    let ps = to_series(p, k);
    let monic = series_mul(&ps, &series_inverse(&to_series(&p.lc_in(0), k), k), k);
    let m = p.nvars() - 1;
    let r = images.len();
    let cofactor_inv: Vec<QPoly> = (0..r)
        .map(|i| {
            let mut prod = QPoly::one();
            for (l, u) in images.iter().enumerate() {
                if l != i {
                    prod = prod.mul(u);
                }
            }
            let (g, s, _) = prod.rem(&images[i]).ext_gcd(&images[i]);
            debug_assert_eq!(g, QPoly::one());
            s
        })
        .collect();
    let mut us: Vec<Series> = images
        .iter()
        .map(|u| vec![Part::from([(vec![0; m], u.clone())])])
        .collect();
    // prefix[i]: us[0] * ... * us[i], filled one degree at a time
    let mut prefix: Vec<Series> = vec![Vec::new(); r];
    let column = |us: &[Series], prefix: &mut [Series], j: usize| {
        for i in 0..r {
            let v = if i == 0 {
                us[0][j].clone()
            } else {
                product_part(&prefix[i - 1], &us[i], j)
            };
            if prefix[i].len() == j {
                prefix[i].push(v);
            } else {
                prefix[i][j] = v;
            }
        }
    };
    column(&us, &mut prefix, 0);
    for j in 1..k {
        for u in us.iter_mut() {
            u.push(Part::new());
        }
        column(&us, &mut prefix, j);
        let mut err = monic[j].clone();
        for (e, q) in &prefix[r - 1][j] {
            add_into(&mut err, e.clone(), q.scale(&-Q::from_integer(1.into())));
        }
        err.retain(|_, q| !q.is_zero());
        if err.is_empty() {
            continue;
        }
        for i in 0..r {
            for (e, q) in &err {
                let v = q.mul(&cofactor_inv[i]).rem(&images[i]);
                if !v.is_zero() {
                    us[i][j].insert(e.clone(), v);
                }
            }
        }
        column(&us, &mut prefix, j);
    }
    us
}

fn recombine(p: &Polynomial, mut lifted: Vec<Series>, k: usize) -> Vec<Polynomial> {
    let nv = p.nvars();
    let mut out = Vec::new();
    let mut rem = p.normalized();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let lc_series = to_series(&rem.lc_in(0), k);
        for subset in subsets(lifted.len(), size) {
            let mut cand = lc_series.clone();
            for &i in &subset {
                cand = series_mul(&cand, &lifted[i], k);
            }
            let cand = from_series(&cand, nv);
            let c = content_in(&cand, 0);
            let g = cand.div_exact(&c).expect("content divides").normalized();
            if let Some(q) = rem.div_exact(&g) {
                out.push(g);
                rem = q.normalized();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(rem);
    out
}

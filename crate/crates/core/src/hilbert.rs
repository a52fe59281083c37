//! Specializations `F(t, Y)` of a polynomial in `(T, Y_1..Y_n)` and counts of
//! the parameters `t` for which they become reducible.
//!
//! Convention: a specialization counts as reducible when it is zero, a
//! constant, drops in total `Y`-degree, or factors nontrivially over `Q`.
//! For a single `Y` variable the check runs on dense integer coefficient
//! lists, with a perfect-square test on the discriminant in degree two.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::{exact_sqrt, factor_z, is_irreducible};
use crate::poly::{Polynomial, Q};

/// Outcome of [`s_t_count`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializationReport {
    pub b_prime: u64,
    pub s_t: u64,
    /// The reducible parameters in increasing order, when requested.
    pub bad_t: Option<Vec<i64>>,
    pub bound_value: f64,
}

/// Constants of the comparator `C * (ln H(F) + 1)^e * sqrt(B')`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HilbertBound {
    pub constant: f64,
    pub exponent: f64,
}

impl Default for HilbertBound {
    fn default() -> Self {
        HilbertBound {
            constant: 1.0,
            exponent: 1.0,
        }
    }
}

impl HilbertBound {
    pub fn evaluate(&self, f: &Polynomial, b_prime: u64) -> f64 {
        let h = f.height().ok().and_then(|h| h.to_f64()).unwrap_or(1.0);
        self.constant * (h.ln() + 1.0).powf(self.exponent) * (b_prime as f64).sqrt()
    }
}

/// `F(t, Y_1..Y_n)` as a polynomial in the `n` variables `Y`.
pub fn specialize_t(f: &Polynomial, t: i64) -> Polynomial {
    let keep: Vec<usize> = (1..f.nvars()).collect();
    f.partial_eval(0, &Q::from_integer(t.into())).restrict_vars(&keep)
}

fn y_degree(f: &Polynomial) -> u32 {
    f.terms()
        .map(|(m, _)| m.exponents()[1..].iter().sum::<u32>())
        .max()
        .unwrap_or(0)
}

/// Reusable reducibility test for the specializations of one `F`.
struct Specializer {
    f: Polynomial,
    deg_y: u32,
    /// For one `Y` variable: coefficient of `Y^j` as an integer polynomial
    /// in `T`, constant term first.
    dense: Option<Vec<Vec<BigInt>>>,
}

impl Specializer {
    fn new(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.nvars() < 2 {
            return Err(Error::TooFewVariables {
                needed: 2,
                got: f.nvars(),
            });
        }
        let deg_y = y_degree(f);
        if deg_y == 0 {
            return Err(Error::InvalidInput("F does not involve Y".into()));
        }
        let dense = (f.nvars() == 2).then(|| {
            let mut d = vec![vec![BigInt::zero(); f.deg_in(0) as usize + 1]; deg_y as usize + 1];
            for (m, c) in f.integer_terms() {
                let e = m.exponents();
                d[e[1] as usize][e[0] as usize] = c;
            }
            d
        });
        Ok(Specializer {
            f: f.clone(),
            deg_y,
            dense,
        })
    }

    fn reducible(&self, t: i64) -> bool {
        match &self.dense {
            Some(d) => self.reducible_dense(d, t),
            None => {
                let g = specialize_t(&self.f, t);
                g.is_constant() || g.degree() < Some(self.deg_y) || !is_irreducible(&g).unwrap_or(false)
            }
        }
    }

    fn reducible_dense(&self, d: &[Vec<BigInt>], t: i64) -> bool {
        if self.deg_y == 2 {
            if let Some(r) = quadratic_small(d, t) {
                return r;
            }
        }
        let tb = BigInt::from(t);
        let coeffs: Vec<BigInt> = d
            .iter()
            .map(|c| c.iter().rev().fold(BigInt::zero(), |acc, x| acc * &tb + x))
            .collect();
        if coeffs.last().is_none_or(|c| c.is_zero()) {
            return true;
        }
        match self.deg_y {
            1 => false,
            2 => {
                let disc = &coeffs[1] * &coeffs[1] - BigInt::from(4) * &coeffs[2] * &coeffs[0];
                exact_sqrt(&disc).is_some()
            }
            _ => {
                let (_, fs) = factor_z(&coeffs);
                !(fs.len() == 1 && fs[0].1 == 1)
            }
        }
    }
}

/// Quadratic case in checked `i128`; `None` on overflow.
fn quadratic_small(d: &[Vec<BigInt>], t: i64) -> Option<bool> {
    let t = t as i128;
    let mut c = [0i128; 3];
    for (j, poly) in d.iter().enumerate() {
        let mut acc = 0i128;
        for x in poly.iter().rev() {
            acc = acc.checked_mul(t)?.checked_add(x.to_i128()?)?;
        }
        c[j] = acc;
    }
    if c[2] == 0 {
        return Some(true);
    }
    let disc = c[1].checked_mul(c[1])?.checked_sub(c[2].checked_mul(c[0])?.checked_mul(4)?)?;
    if disc < 0 {
        return Some(false);
    }
    let r = Roots::sqrt(&disc);
    Some(r * r == disc)
}

/// Whether `F(t, Y)` is reducible under the module convention.
pub fn is_reducible_specialization(f: &Polynomial, t: i64) -> Result<bool> {
    Ok(Specializer::new(f)?.reducible(t))
}

/// Counts `t` with `|t| <= B'` giving reducible specializations.
pub fn s_t_count(f: &Polynomial, b_prime: u64, collect: bool) -> Result<SpecializationReport> {
    s_t_count_with(f, b_prime, collect, HilbertBound::default(), 1)
}

/// [`s_t_count`] with explicit comparator constants, the `t`-range split
/// across `workers` threads.
pub fn s_t_count_with(
    f: &Polynomial,
    b_prime: u64,
    collect: bool,
    bound: HilbertBound,
    workers: usize,
) -> Result<SpecializationReport> {
    let spec = Specializer::new(f)?;
    let r = i64::try_from(b_prime)
        .ok()
        .filter(|&v| v < i64::MAX)
        .ok_or_else(|| Error::InvalidInput(format!("B' = {b_prime} too large")))?;
    let bad: Vec<i64> = if workers <= 1 {
        (-r..=r).filter(|&t| spec.reducible(t)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| {
            (-r..=r)
                .into_par_iter()
                .filter(|&t| spec.reducible(t))
                .collect()
        })
    };
    Ok(SpecializationReport {
        b_prime,
        s_t: bad.len() as u64,
        bad_t: collect.then_some(bad),
        bound_value: bound.evaluate(f, b_prime),
    })
}

/// The parameters `0, 1, -1, 2, -2, …` up to `|t| <= t_bound`.
pub fn search_order(t_bound: u64) -> impl Iterator<Item = i64> {
    let r = t_bound.min(i64::MAX as u64) as i64;
    std::iter::once(0).chain((1..=r).flat_map(|k| [k, -k]))
}

/// First `t` in the order `0, 1, -1, 2, …` with `|t| <= t_bound` for which
/// every specialization is irreducible.
pub fn find_good_t(fs: &[Polynomial], t_bound: u64) -> Result<Option<i64>> {
    let specs: Vec<Specializer> = fs.iter().map(Specializer::new).collect::<Result<_>>()?;
    Ok(search_order(t_bound).find(|&t| specs.iter().all(|s| !s.reducible(t))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn specialization() {
        assert_eq!(specialize_t(&p("x2^2 - x1", 2), 9), p("x1^2 - 9", 1));
        assert!(specialize_t(&p("x1*x2", 2), 0).is_zero());
        assert_eq!(specialize_t(&p("x2^2 - x1*x3^2", 3), -1), p("x1^2 + x2^2", 2));
    }

    #[test]
    fn reducibility() {
        let f = p("x2^2 - x1", 2);
        assert!(is_reducible_specialization(&f, 4).unwrap());
        assert!(!is_reducible_specialization(&f, 3).unwrap());
        assert!(is_reducible_specialization(&f, 0).unwrap());
        // degree drop counts as reducible
        assert!(is_reducible_specialization(&p("x1*x2^2 + x2 + 1", 2), 0).unwrap());
        let cubic = p("x2^3 - x1", 2);
        assert!(is_reducible_specialization(&cubic, 8).unwrap());
        assert!(!is_reducible_specialization(&cubic, 2).unwrap());
        // two Y variables: the degree check must see every Y
        let two = p("x2^2 - x3^2 - x1", 3);
        assert!(!is_reducible_specialization(&two, 1).unwrap());
        assert!(is_reducible_specialization(&two, 0).unwrap());
        assert!(is_reducible_specialization(&p("x1*x2^2 + x3", 3), 0).unwrap());
    }

    #[test]
    fn counts() {
        let f = p("x2^2 - x1", 2);
        let r = s_t_count(&f, 100, true).unwrap();
        assert_eq!(r.s_t, 11);
        assert_eq!(r.bad_t.unwrap(), (0..=10).map(|k| k * k).collect::<Vec<_>>());
        assert_eq!(s_t_count(&f, 0, false).unwrap().s_t, 1);
        assert_eq!(s_t_count(&p("x2^2 + x1^2 + 1", 2), 1000, false).unwrap().s_t, 0);
        let par = s_t_count_with(&f, 1000, true, HilbertBound::default(), 3).unwrap();
        assert_eq!(par.s_t, 32);
        assert_eq!(par.bad_t, s_t_count(&f, 1000, true).unwrap().bad_t);
    }

    #[test]
    fn good_t() {
        assert_eq!(find_good_t(&[p("x2^2 - x1*x3^2", 3)], 10).unwrap(), Some(-1));
        // t = -1 gives Y^2 + 1, already irreducible over Q
        assert_eq!(find_good_t(&[p("x2^2 - x1", 2)], 10).unwrap(), Some(-1));
        assert_eq!(find_good_t(&[p("x2^2 - x1", 2), p("x2^2 + x1", 2)], 10).unwrap(), Some(2));
        assert_eq!(find_good_t(&[p("x2 - x1", 2)], 0).unwrap(), Some(0));
        assert_eq!(find_good_t(&[p("x2^2 - x1^2", 2)], 5).unwrap(), None);
        assert_eq!(search_order(2).collect::<Vec<_>>(), vec![0, 1, -1, 2, -2]);
    }
}

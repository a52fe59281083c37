//! Cylinders over plane curves, hyperplane slicing, and the search for
//! slices that keep the top form free of low-degree factors.
//!
//! Over a field of characteristic zero, `f` is a polynomial in two linear
//! forms exactly when its partial derivatives span a space of dimension at
//! most two. The forms themselves span the column space of the matrix of
//! partial-derivative coefficients, which gives a constructive certificate.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::is_r_irreducible;
use crate::linalg::Matrix;
use crate::poly::{LinearForm, Monomial, Polynomial, Q};

/// Witness that `f = g(ell1(x), ell2(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderCertificate {
    pub ell1: LinearForm,
    /// Independent of `ell1`; may not occur in `g`.
    pub ell2: LinearForm,
    /// Polynomial in two variables.
    pub g: Polynomial,
}

impl CylinderCertificate {
    /// `g(ell1(x), ell2(x))`.
    pub fn reconstruct(&self) -> Polynomial {
        self.g
            .substitute(&[self.ell1.to_polynomial(), self.ell2.to_polynomial()])
            .expect("two images of equal arity")
    }

    pub fn verifies(&self, f: &Polynomial) -> bool {
        self.reconstruct() == *f
    }
}

/// The hyperplane `ell = t * ell_prime + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceSpec {
    pub ell: LinearForm,
    pub ell_prime: LinearForm,
    pub t: i64,
    pub b: Q,
}

/// Result of [`find_good_slice`]: the accepted `(ell, ell', t)` and the
/// sampled offsets `b` whose slice of `f` is a cylinder.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodSlice {
    pub ell: LinearForm,
    pub ell_prime: LinearForm,
    pub t: i64,
    pub bad_b: Vec<i64>,
    /// Offsets examined, in search order.
    pub sampled_b: Vec<i64>,
}

impl GoodSlice {
    pub fn spec(&self, b: i64) -> SliceSpec {
        SliceSpec {
            ell: self.ell.clone(),
            ell_prime: self.ell_prime.clone(),
            t: self.t,
            b: Q::from_integer(b.into()),
        }
    }
}

fn check_nonconstant(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(())
}

/// Row `i` holds the coefficients of `df/dx_i` over the monomials that occur
/// in any partial derivative.
fn partials_matrix(f: &Polynomial) -> Matrix {
    let partials: Vec<Polynomial> = (0..f.nvars()).map(|i| f.derivative(i)).collect();
    let mut monos: Vec<Monomial> = partials
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    Matrix::from_rows(
        partials
            .iter()
            .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
            .collect(),
    )
}

/// Dimension of the span of the partial derivatives.
pub fn partials_span_dim(f: &Polynomial) -> Result<usize> {
    check_nonconstant(f)?;
    Ok(partials_matrix(f).rank())
}

/// True iff `f` is not a polynomial in two linear forms.
pub fn is_ncc(f: &Polynomial) -> Result<bool> {
    if f.nvars() < 3 {
        return Err(Error::TooFewVariables {
            needed: 3,
            got: f.nvars(),
        });
    }
    Ok(partials_span_dim(f)? >= 3)
}

/// Primitive integer vector proportional to a rational one.
fn primitive_integer(v: &[Q]) -> Vec<i64> {
    let den = v.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    ints.iter()
        .map(|c| i64::try_from(c / &g).expect("linear form coefficient fits in i64"))
        .collect()
}

/// A certificate `f = g(ell1, ell2)` when `f` is cylindrical, `None` otherwise.
pub fn extract_cylinder(f: &Polynomial) -> Result<Option<CylinderCertificate>> {
    if !is_ncc(f)? {
        let n = f.nvars();
        let mut at = partials_matrix(f).transpose();
        let pivots = at.rref();
        let s = pivots.len();
        let forms: Vec<LinearForm> = (0..s)
            .map(|i| LinearForm::new(primitive_integer(at.row(i))).expect("nonzero pivot row"))
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        // rows of L: the forms, then unit vectors on the free columns
        let mut rows: Vec<Vec<Q>> = forms
            .iter()
            .map(|l| l.coeffs().iter().map(|&c| Q::from_integer(c.into())).collect())
            .collect();
        for &j in &free {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            rows.push(e);
        }
        let inv = Matrix::from_rows(rows).inverse().expect("completion is invertible");
        let change: Vec<Vec<Q>> = (0..n).map(|i| inv.row(i).to_vec()).collect();
        let in_y = f.linear_change(&change);
        // in_y only involves y_1..y_s; embed into two variables
        let images: Vec<Polynomial> = (0..n)
            .map(|i| match i {
                0 => Polynomial::var(2, 0),
                1 if s == 2 => Polynomial::var(2, 1),
                _ => Polynomial::zero(2),
            })
            .collect();
        let g = in_y.substitute(&images).expect("n images");
        let ell2 = if s == 2 {
            forms[1].clone()
        } else {
            LinearForm::coordinate(n, free[0])
        };
        let cert = CylinderCertificate {
            ell1: forms[0].clone(),
            ell2,
            g,
        };
        debug_assert!(cert.verifies(f));
        return Ok(Some(cert));
    }
    Ok(None)
}

/// Integer `(g, a, b)` with `a*x + b*y = g = gcd(x, y) >= 0`.
fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let e = x.extended_gcd(&y);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Restricts `f` to the hyperplane `ell = t * ell_prime + b`, returning a
/// polynomial in `n - 1` variables.
///
/// With `m = ell - t * ell_prime` made primitive, a variable whose
/// coefficient is `±1` (the last such) is solved for and the remaining
/// variables keep their order. Otherwise `m` is completed to a unimodular
/// matrix `U` with `m U = e_1` and `x = U (c, y)` is substituted.
pub fn slice(f: &Polynomial, spec: &SliceSpec) -> Result<Polynomial> {
    let n = f.nvars();
    if spec.ell.nvars() != n || spec.ell_prime.nvars() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: spec.ell.nvars().min(spec.ell_prime.nvars()),
        });
    }
    if !spec.ell.independent_of(&spec.ell_prime) {
        return Err(Error::DegenerateSlice);
    }
    let m: Vec<i64> = spec
        .ell
        .coeffs()
        .iter()
        .zip(spec.ell_prime.coeffs())
        .map(|(&a, &b)| a - spec.t * b)
        .collect();
    let g = m.iter().fold(0i64, |acc, c| acc.gcd(c));
    let m0: Vec<i64> = m.iter().map(|c| c / g).collect();
    let c = &spec.b / Q::from_integer(g.into());
    let q = |v: i64| Q::from_integer(v.into());
    let images: Vec<Polynomial> = if let Some(k) = m0.iter().rposition(|v| v.abs() == 1) {
        let pos = |i: usize| if i < k { i } else { i - 1 };
        let sign = m0[k];
        (0..n)
            .map(|i| {
                if i != k {
                    return Polynomial::var(n - 1, pos(i));
                }
                let mut p = Polynomial::constant(n - 1, &c * q(sign));
                for (j, &mj) in m0.iter().enumerate() {
                    if j != k && mj != 0 {
                        p = &p - &Polynomial::var(n - 1, pos(j)).scale(&q(mj * sign));
                    }
                }
                p
            })
            .collect()
    } else {
        let u = unimodular_completion(&m0);
        (0..n)
            .map(|i| {
                let mut p = Polynomial::constant(n - 1, &c * q(u[i][0]));
                for j in 1..n {
                    if u[i][j] != 0 {
                        p = &p + &Polynomial::var(n - 1, j - 1).scale(&q(u[i][j]));
                    }
                }
                p
            })
            .collect()
    };
    f.substitute(&images)
}

/// Unimodular `U` with `m U = (1, 0, ..., 0)` for a primitive `m`.
fn unimodular_completion(m: &[i64]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut v = m.to_vec();
    // bring a nonzero entry to the front
    if v[0] == 0 {
        let j = v.iter().position(|&x| x != 0).expect("nonzero form");
        v.swap(0, j);
        for row in u.iter_mut() {
            row.swap(0, j);
        }
    }
    for j in 1..n {
        if v[j] == 0 {
            continue;
        }
        let (g, a, b) = ext_gcd(v[0], v[j]);
        let (p, r) = (v[0] / g, v[j] / g);
        for row in u.iter_mut() {
            let (c0, cj) = (row[0], row[j]);
            row[0] = a * c0 + b * cj;
            row[j] = -r * c0 + p * cj;
        }
        v[0] = g;
        v[j] = 0;
    }
    if v[0] < 0 {
        for row in u.iter_mut() {
            row[0] = -row[0];
        }
    }
    debug_assert_eq!(v[0].abs(), 1);
    u
}

/// All normalized primitive forms in `n` variables of height exactly `h`, in
/// search order: fewer nonzero coefficients first, then the coefficient
/// vector read from the last variable backwards, largest first.
pub fn forms_of_height(n: usize, h: i64) -> Vec<LinearForm> {
    let mut out = Vec::new();
    let mut v = vec![-h; n];
    loop {
        let max = v.iter().map(|x| x.abs()).max().unwrap_or(0);
        let first_pos = v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        let g = v.iter().fold(0i64, |acc, c| acc.gcd(c));
        if max == h && first_pos && g == 1 {
            out.push(LinearForm::new(v.clone()).expect("nonzero"));
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|a, b| {
                    let ka = a.support_size();
                    let kb = b.support_size();
                    ka.cmp(&kb).then_with(|| {
                        let ra: Vec<i64> = a.coeffs().iter().rev().copied().collect();
                        let rb: Vec<i64> = b.coeffs().iter().rev().copied().collect();
                        rb.cmp(&ra)
                    })
                });
                return out;
            }
            if v[i] < h {
                v[i] += 1;
                break;
            }
            v[i] = -h;
            i += 1;
        }
    }
}

/// Integers in the order `0, 1, -1, 2, -2, ...`.
pub fn alternating(i: u64) -> i64 {
    if i % 2 == 1 {
        i.div_ceil(2) as i64
    } else {
        -((i / 2) as i64)
    }
}

/// Default number of sampled offsets `b` for degree `d`.
pub fn default_b_samples(d: u32) -> usize {
    4 * d as usize + 1
}

/// True when the top form of `f` restricted to `ell = t * ell'` is nonzero
/// and has no factor of degree at most `r`.
pub fn top_form_slice_ok(
    f: &Polynomial,
    ell: &LinearForm,
    ell_prime: &LinearForm,
    t: i64,
    r: u32,
) -> Result<bool> {
    let top = f.top_form()?;
    let spec = SliceSpec {
        ell: ell.clone(),
        ell_prime: ell_prime.clone(),
        t,
        b: Q::zero(),
    };
    let s = slice(&top, &spec)?;
    if s.is_zero() || s.is_constant() {
        return Ok(false);
    }
    is_r_irreducible(&s, r)
}

/// Searches `(ell, ell', t)` by increasing height `max(H(ell), H(ell'), |t|)`
/// until the sliced top form is `r`-irreducible, then samples `b` in the
/// order `0, 1, -1, ...` and records the offsets whose slice of `f` is a
/// cylinder.
pub fn find_good_slice(
    f: &Polynomial,
    r: u32,
    height_bound: u64,
    b_samples: usize,
) -> Result<GoodSlice> {
    let n = f.nvars();
    if n < 4 {
        return Err(Error::TooFewVariables { needed: 4, got: n });
    }
    if !is_ncc(f)? {
        return Err(Error::Hypothesis("input is cylindrical over a curve".into()));
    }
    let top = f.top_form()?;
    if !is_r_irreducible(&top, r)? {
        return Err(Error::Hypothesis(format!("top form has a factor of degree <= {r}")));
    }
    let hb = height_bound as i64;
    let mut forms: Vec<(i64, LinearForm)> = Vec::new();
    for h in 1..=hb {
        let level = forms_of_height(n, h);
        forms.extend(level.into_iter().map(|l| (h, l)));
        for (hl, ell) in &forms {
            for (hp, ell_prime) in &forms {
                if !ell.independent_of(ell_prime) {
                    continue;
                }
                for i in 0..=(2 * h as u64) {
                    let t = alternating(i);
                    // visit each triple once, at the level of its height
                    if (*hl).max(*hp).max(t.abs()) != h {
                        continue;
                    }
                    if top_form_slice_ok(f, ell, ell_prime, t, r)? {
                        return Ok(sample_offsets(f, ell, ell_prime, t, b_samples)?);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted {
        bound: height_bound,
    })
}

fn sample_offsets(
    f: &Polynomial,
    ell: &LinearForm,
    ell_prime: &LinearForm,
    t: i64,
    b_samples: usize,
) -> Result<GoodSlice> {
    let mut out = GoodSlice {
        ell: ell.clone(),
        ell_prime: ell_prime.clone(),
        t,
        bad_b: Vec::new(),
        sampled_b: Vec::new(),
    };
    for i in 0..b_samples as u64 {
        let b = alternating(i);
        let s = slice(f, &out.spec(b))?;
        out.sampled_b.push(b);
        if !is_ncc(&s)? {
            out.bad_b.push(b);
        }
    }
    Ok(out)
}

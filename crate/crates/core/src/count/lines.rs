//! Affine lines: canonical representation, box counts and the search for
//! lines lying on a surface in three variables.
//!
//! A line `a + t v` on `V(f)` with primitive direction `v` needs `f_d(v) = 0`.
//! Fixing the coordinate of `a` at the first nonzero index of `v` to zero
//! leaves two unknowns `(u, w)`, and the coefficients `c_i(u, w)` of
//! `f(a + t v)` in `t` must all vanish. A common factor `G` of the `c_i`
//! describes a one-parameter family of lines; the remaining system has
//! finitely many solutions, found by resultants and univariate gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{dense::QPoly, factor};
use crate::linalg::Matrix;
use crate::poly::{gcd_many, Polynomial, Q};

/// Affine line `base + t * direction`.
///
/// The direction is primitive with first nonzero entry positive, and the
/// base has coordinate zero at that entry, so equal point sets give equal
/// values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    direction: Vec<i64>,
    base: Vec<Q>,
}

impl Line {
    /// Canonical line through `base` with the given direction.
    pub fn new(base: Vec<Q>, direction: Vec<i64>) -> Result<Self> {
        if base.len() != direction.len() {
            return Err(Error::LengthMismatch {
                expected: direction.len(),
                got: base.len(),
            });
        }
        let g = direction.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return Err(Error::InvalidInput("zero direction".into()));
        }
        let k = direction.iter().position(|&x| x != 0).expect("nonzero");
        let sign = if direction[k] < 0 { -1 } else { 1 };
        let direction: Vec<i64> = direction.iter().map(|&x| sign * x / g).collect();
        let shift = -&base[k] / Q::from_integer(direction[k].into());
        let base = base
            .iter()
            .zip(&direction)
            .map(|(a, &v)| a + &shift * Q::from_integer(v.into()))
            .collect();
        Ok(Line { direction, base })
    }

    pub fn base(&self) -> &[Q] {
        &self.base
    }

    pub fn direction(&self) -> &[i64] {
        &self.direction
    }

    pub fn nvars(&self) -> usize {
        self.base.len()
    }

    /// Max-norm of the direction.
    pub fn height(&self) -> u64 {
        self.direction.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn point_at(&self, t: &Q) -> Vec<Q> {
        self.base
            .iter()
            .zip(&self.direction)
            .map(|(a, &v)| a + t * Q::from_integer(v.into()))
            .collect()
    }

    /// `f(base + t * direction)` as a polynomial in one variable `t`.
    pub fn restrict(&self, f: &Polynomial) -> Result<Polynomial> {
        let t = Polynomial::var(1, 0);
        let images: Vec<Polynomial> = self
            .base
            .iter()
            .zip(&self.direction)
            .map(|(a, &v)| &Polynomial::constant(1, a.clone()) + &t.scale(&Q::from_integer(v.into())))
            .collect();
        f.substitute(&images)
    }

    /// True iff the whole line lies on `V(f)`.
    pub fn lies_on(&self, f: &Polynomial) -> bool {
        self.restrict(f).is_ok_and(|p| p.is_zero())
    }
}

/// Integer points of `line` in `[-B, B]^n`.
///
/// Integral points have parameters `t0 + s` with `s` integral, where `t0`
/// comes from an integer vector `lambda` with `lambda . v = 1`; the box then
/// cuts out an interval of `s`.
pub fn count_on_line(line: &Line, b: u64) -> u64 {
    let v: Vec<BigInt> = line.direction.iter().map(|&x| BigInt::from(x)).collect();
    let lambda = unit_combination(&v);
    let t0: Q = -lambda
        .iter()
        .zip(&line.base)
        .map(|(l, a)| a * Q::from_integer(l.clone()))
        .fold(Q::zero(), |s, x| s + x);
    let p0: Vec<Q> = line.point_at(&t0);
    if p0.iter().any(|x| !x.is_integer()) {
        return 0;
    }
    let bb = BigInt::from(b);
    let (mut lo, mut hi): (Option<BigInt>, Option<BigInt>) = (None, None);
    for (p, vi) in p0.iter().map(|x| x.to_integer()).zip(&v) {
        if vi.is_zero() {
            if p.abs() > bb {
                return 0;
            }
            continue;
        }
        // -B <= p + s v <= B
        let (a, c) = (-&bb - &p, &bb - &p);
        let (l, h) = if vi.is_positive() {
            (ceil_div(&a, vi), c.div_floor(vi))
        } else {
            (ceil_div(&c, vi), a.div_floor(vi))
        };
        lo = Some(lo.map_or(l.clone(), |x| x.max(l)));
        hi = Some(hi.map_or(h.clone(), |x| x.min(h)));
    }
    match (lo, hi) {
        (Some(l), Some(h)) if h >= l => (h - l + 1u32).to_u64().unwrap_or(u64::MAX),
        _ => 0,
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Integer `lambda` with `lambda . v = 1` for primitive `v`.
fn unit_combination(v: &[BigInt]) -> Vec<BigInt> {
    let mut lambda = vec![BigInt::zero(); v.len()];
    let mut g = BigInt::zero();
    for (i, vi) in v.iter().enumerate() {
        let e = g.extended_gcd(vi);
        for l in lambda.iter_mut().take(i) {
            *l *= &e.x;
        }
        lambda[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        lambda.iter_mut().for_each(|l| *l = -&*l);
    }
    lambda
}

/// A one-parameter family of lines with a common direction: the bases are
/// the points with coordinate zero at `fixed_index` and the two remaining
/// coordinates `(u, w)` (in index order) on the plane curve `curve(u, w) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineFamily {
    pub direction: Vec<i64>,
    pub fixed_index: usize,
    pub curve: Polynomial,
}

impl LineFamily {
    /// Indices carrying the curve coordinates `(u, w)`.
    pub fn free_indices(&self) -> [usize; 2] {
        let mut it = (0..3).filter(|&i| i != self.fixed_index);
        [it.next().expect("three variables"), it.next().expect("three variables")]
    }

    /// The member line with base coordinates `(u, w)`; only on the surface
    /// when `curve(u, w) = 0`.
    pub fn line_at(&self, u: Q, w: Q) -> Line {
        let [i, j] = self.free_indices();
        let mut base = vec![Q::zero(); 3];
        base[i] = u;
        base[j] = w;
        Line::new(base, self.direction.clone()).expect("valid direction")
    }
}

/// Result of [`find_lines_on_surface`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LineSearch {
    /// Isolated lines, sorted and duplicate-free.
    pub lines: Vec<Line>,
    /// Families of parallel lines, sorted by direction.
    pub families: Vec<LineFamily>,
}

/// All lines on `V(f)` (three variables) with primitive direction of height
/// at most `dir_height_bound`.
pub fn find_lines_on_surface(f: &Polynomial, dir_height_bound: u64) -> Result<LineSearch> {
    if f.nvars() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected 3 variables, got {}",
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let top = f.top_form()?;
    let h = i64::try_from(dir_height_bound)
        .map_err(|_| Error::InvalidInput("height bound too large".into()))?;
    let mut out = LineSearch::default();
    for v1 in -h..=h {
        for v2 in -h..=h {
            for v3 in -h..=h {
                let v = [v1, v2, v3];
                let k = match v.iter().position(|&x| x != 0) {
                    Some(k) if v[k] > 0 => k,
                    _ => continue,
                };
                if v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
                    continue;
                }
                let vq: Vec<Q> = v.iter().map(|&x| Q::from_integer(x.into())).collect();
                if !top.eval(&vq).is_zero() {
                    continue;
                }
                lines_with_direction(f, &v, k, &mut out);
            }
        }
    }
    out.lines.sort();
    out.lines.dedup();
    Ok(out)
}

fn lines_with_direction(f: &Polynomial, v: &[i64; 3], k: usize, out: &mut LineSearch) {
    // variables of the parametrization: 0 = u, 1 = w, 2 = t
    let t = Polynomial::var(3, 2);
    let mut images = Vec::with_capacity(3);
    let mut free = 0;
    for (i, &vi) in v.iter().enumerate() {
        let tv = t.scale(&Q::from_integer(vi.into()));
        if i == k {
            images.push(tv);
        } else {
            images.push(&Polynomial::var(3, free) + &tv);
            free += 1;
        }
    }
    let restricted = f.substitute(&images).expect("three images");
    let cs: Vec<Polynomial> = restricted
        .coeffs_in(2)
        .into_iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.restrict_vars(&[0, 1]))
        .collect();
    if cs.is_empty() {
        return;
    }
    let g = gcd_many(2, cs.iter());
    if !g.is_constant() {
        out.families.push(LineFamily {
            direction: v.to_vec(),
            fixed_index: k,
            curve: g.clone(),
        });
    }
    let hs: Vec<Polynomial> = cs.iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect();
    let family = LineFamily {
        direction: v.to_vec(),
        fixed_index: k,
        curve: g.clone(),
    };
    for (u, w) in common_zeros(&hs) {
        let pt = [u.clone(), w.clone()];
        if !g.eval(&pt).is_zero() && cs.iter().all(|c| c.eval(&pt).is_zero()) {
            out.lines.push(family.line_at(u, w));
        }
    }
}

/// Rational common zeros of bivariate polynomials without a common factor.
fn common_zeros(hs: &[Polynomial]) -> Vec<(Q, Q)> {
    if hs.iter().any(|h| h.is_constant()) {
        return Vec::new();
    }
    let pivot = hs
        .iter()
        .min_by_key(|h| (h.degree(), h.num_terms()))
        .expect("nonempty");
    let mut out = Vec::new();
    let Ok(fact) = factor(pivot) else {
        return out;
    };
    for (q, _) in &fact.factors {
        if q.deg_in(1) == 0 {
            let us = rational_roots(&QPoly::from_poly(q, 0));
            out.extend(complete(hs, 0, &us));
        } else if q.deg_in(0) == 0 {
            let ws = rational_roots(&QPoly::from_poly(q, 1));
            out.extend(complete(hs, 1, &ws));
        } else {
            let Some(other) = hs.iter().find(|h| !q.divides(h)) else {
                continue;
            };
            let res = resultant_in_w(q, other);
            out.extend(complete(hs, 0, &rational_roots(&res)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Given values of variable `fixed`, solves for the other variable through
/// the gcd of all specializations.
fn complete(hs: &[Polynomial], fixed: usize, values: &[Q]) -> Vec<(Q, Q)> {
    let other = 1 - fixed;
    let mut out = Vec::new();
    for x in values {
        let mut g = QPoly::zero();
        for h in hs {
            g = g.gcd(&QPoly::from_poly(&h.partial_eval(fixed, x), other));
        }
        if g.is_zero() {
            continue;
        }
        for y in rational_roots(&g) {
            out.push(if fixed == 0 { (x.clone(), y) } else { (y, x.clone()) });
        }
    }
    out
}

fn rational_roots(p: &QPoly) -> Vec<Q> {
    match p.degree() {
        None | Some(0) => return Vec::new(),
        _ => {}
    }
    let Ok(fact) = factor(&p.to_poly(1, 0)) else {
        return Vec::new();
    };
    let mut roots: Vec<Q> = fact
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| {
            let d = QPoly::from_poly(g, 0);
            -d.coeff(0) / d.coeff(1)
        })
        .collect();
    roots.sort();
    roots
}

/// `Res_w(a, b)` as a polynomial in `u`, by evaluating the Sylvester
/// determinant at enough points and interpolating.
fn resultant_in_w(a: &Polynomial, b: &Polynomial) -> QPoly {
    let ca = a.coeffs_in(1);
    let cb = b.coeffs_in(1);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    let bound = a.degree().unwrap_or(0) as usize * b.degree().unwrap_or(0) as usize;
    let xs: Vec<Q> = (0..=bound as i64).map(|x| Q::from_integer(x.into())).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|x| {
            let pa: Vec<Q> = ca.iter().map(|c| c.eval(&[x.clone(), Q::zero()])).collect();
            let pb: Vec<Q> = cb.iter().map(|c| c.eval(&[x.clone(), Q::zero()])).collect();
            sylvester(&pa, &pb, m, n).determinant()
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Sylvester matrix of coefficient lists (constant term first) with formal
/// degrees `m` and `n`.
fn sylvester(a: &[Q], b: &[Q], m: usize, n: usize) -> Matrix {
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for r in 0..n {
        for (j, c) in a.iter().enumerate() {
            s[(r, r + m - j)] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in b.iter().enumerate() {
            s[(n + r, r + n - j)] = c.clone();
        }
    }
    s
}

fn interpolate(xs: &[Q], ys: &[Q]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = QPoly::one();
        let mut denom = Q::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly(vec![-xj, Q::one()]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc.trimmed()
}

//! Absolute irreducibility of bivariate polynomials through the closedness
//! of rational differential forms.
//!
//! For `f` of bidegree `(m, n)` in `(x, y)` we solve the linear system
//!
//! ```text
//! f * g_y - g * f_y - f * h_x + h * f_x = 0
//! ```
//!
//! in unknowns `g` of bidegree at most `(m - 1, n)` and `h` of bidegree at
//! most `(m, n - 1)`. The solution space has dimension equal to the number of
//! absolutely irreducible factors of `f` (for squarefree `f` with
//! `gcd(f, f_x) = 1`), so `f` is absolutely irreducible iff it is one.
//!
//! Matrix layout: one column per unknown coefficient, first the `g`
//! coefficients `x^i y^j` with `i` outer and `j` inner, then the `h`
//! coefficients in the same order; one row per monomial `x^a y^b` of the
//! result with `a < 2m`, `b < 2n`, again `a` outer.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::poly::{Polynomial, Q};

/// Number of absolutely irreducible factors of a squarefree `f(x, y)` with
/// `deg_x f >= 1` and `gcd(f, f_x) = 1`.
pub(crate) fn absolute_factor_count(f: &Polynomial) -> usize {
    let m = f.deg_in(0);
    let n = f.deg_in(1);
    if n == 0 {
        // f is univariate in x: squarefree, so it splits into m linear factors
        return m as usize;
    }
    let fx = f.derivative(0);
    let fy = f.derivative(1);
    let mono = |i: u32, j: u32| Polynomial::from_terms(2, [(vec![i, j], Q::from_integer(1.into()))]);
    let mut columns: Vec<Polynomial> = Vec::new();
    for i in 0..m {
        for j in 0..=n {
            let g = mono(i, j);
            columns.push(&(f * &g.derivative(1)) - &(&g * &fy));
        }
    }
    for i in 0..=m {
        for j in 0..n {
            let h = mono(i, j);
            columns.push(&(&h * &fx) - &(f * &h.derivative(0)));
        }
    }
    let mut rows: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for a in 0..2 * m {
        for b in 0..2 * n {
            let idx = rows.len();
            rows.insert((a, b), idx);
        }
    }
    let mut mat = Matrix::zeros(rows.len(), columns.len());
    for (col, p) in columns.iter().enumerate() {
        for (mon, c) in p.terms() {
            let e = mon.exponents();
            let row = rows[&(e[0], e[1])];
            mat[(row, col)] = c.clone();
        }
    }
    columns.len() - mat.rank()
}

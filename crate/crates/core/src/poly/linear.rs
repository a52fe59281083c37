use std::fmt;

use num_integer::Integer;

use super::{q_int, Monomial, Polynomial};
use crate::error::{Error, Result};

/// Integer linear form normalized to coprime coefficients with a positive
/// first nonzero entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let g = coeffs.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if g == 0 {
            return Err(Error::InvalidInput("zero linear form".into()));
        }
        let sign = coeffs.iter().find(|&&c| c != 0).map(|c| c.signum()).unwrap_or(1);
        Ok(LinearForm {
            coeffs: coeffs.iter().map(|c| c / g * sign).collect(),
        })
    }

    /// The coordinate form `x_{i+1}`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut c = vec![0; nvars];
        c[i] = 1;
        LinearForm { coeffs: c }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// Max-norm of the coefficient vector.
    pub fn height(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), q_int(c));
        }
        p
    }

    /// True when `self` and `other` are linearly independent.
    pub fn independent_of(&self, other: &LinearForm) -> bool {
        let a = &self.coeffs;
        let b = &other.coeffs;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if (a[i] as i128) * (b[j] as i128) != (a[j] as i128) * (b[i] as i128) {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let l = LinearForm::new(vec![0, -4, 6]).unwrap();
        assert_eq!(l.coeffs(), &[0, 2, -3]);
        assert_eq!(l.height(), 3);
        assert!(LinearForm::new(vec![0, 0]).is_err());
        assert!(!l.independent_of(&LinearForm::new(vec![0, 2, -3]).unwrap()));
        assert!(l.independent_of(&LinearForm::coordinate(3, 0)));
        assert_eq!(l.to_string(), "2*x2 - 3*x3");
    }
}

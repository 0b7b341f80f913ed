//! Truncated formal power series with exact coefficients.

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// `Σ_{i ≤ N} a_i t^i`; all arithmetic drops terms above `t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series(Vec<Coefficient>);

impl Series {
    /// Coefficients `a_0, …, a_N`.
    pub fn new(coeffs: Vec<Coefficient>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSequence("a series needs at least a constant term".into()));
        }
        Ok(Series(coeffs))
    }

    pub fn constant(c: Coefficient, order: usize) -> Self {
        let mut v = vec![Coefficient::zero(); order + 1];
        v[0] = c;
        Series(v)
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Coefficient {
        self.0.get(i).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut out = vec![Coefficient::zero(); n + 1];
        for (i, a) in self.0.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(n + 1 - i) {
                out[i + j] += &(a * b);
            }
        }
        Series(out)
    }

    /// `t·self`, keeping the order.
    pub fn shift(&self) -> Series {
        let mut out = vec![Coefficient::zero()];
        out.extend(self.0[..self.order()].iter().cloned());
        Series(out)
    }

    /// `self(g)`; `g` must have zero constant term.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        if !g.coeff(0).is_zero() {
            return Err(Error::InvalidSequence("inner series must vanish at 0".into()));
        }
        let n = self.order().min(g.order());
        let mut out = Series::constant(Coefficient::zero(), n);
        let mut power = Series::constant(Coefficient::one(), n);
        for a in self.0.iter().take(n + 1) {
            for (i, p) in power.0.iter().enumerate() {
                out.0[i] += &(a * p);
            }
            power = power.mul(g);
        }
        Ok(out)
    }
}

/// Solves `F = K(tF)` by repeated substitution, starting from `F = 1`; each
/// round fixes one more coefficient.
pub fn solve_functional_equation(k: &Series) -> Result<Series> {
    if !k.coeff(0).is_one() {
        return Err(Error::InvalidSequence("K must have constant term 1".into()));
    }
    let n = k.order();
    let mut f = Series::constant(Coefficient::one(), n);
    for _ in 0..n {
        f = k.compose(&f.shift())?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Series {
        Series::new(v.iter().map(|&x| Coefficient::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn products_truncate() {
        let a = ints(&[1, 1, 0]);
        assert_eq!(a.mul(&a), ints(&[1, 2, 1]));
        let b = ints(&[1, 1, 1, 1]);
        assert_eq!(b.mul(&b), ints(&[1, 2, 3, 4]));
    }

    #[test]
    fn composition() {
        // (1 + x)∘(t + t^2) = 1 + t + t^2
        let outer = ints(&[1, 1, 0, 0]);
        let inner = ints(&[0, 1, 1, 0]);
        assert_eq!(outer.compose(&inner).unwrap(), ints(&[1, 1, 1, 0]));
        assert!(outer.compose(&ints(&[1, 1, 0, 0])).is_err());
    }

    #[test]
    fn catalan_generating_function() {
        // K = 1 + t^2 gives F = 1 + t^2 F^2, the Catalan series in t^2.
        let k = ints(&[1, 0, 1, 0, 0, 0, 0, 0, 0]);
        let f = solve_functional_equation(&k).unwrap();
        assert_eq!(f, ints(&[1, 0, 1, 0, 2, 0, 5, 0, 14]));
    }
}

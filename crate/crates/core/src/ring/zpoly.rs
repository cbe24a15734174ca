use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `t` with integer coefficients, little-endian and stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `t ↦ t^k`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k > 0, "inflate by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Self::new(v)
    }

    /// Exact quotient over `ℤ[t]`; fails with `NotDivisible` when `den ∤ self`.
    pub fn exact_divide(&self, den: &ZPoly) -> Result<ZPoly> {
        let (quot, rem) = self.div_rem_exact_lead(den)?;
        if !rem.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(quot)
    }

    fn div_rem_exact_lead(&self, den: &ZPoly) -> Result<(ZPoly, ZPoly)> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let lead = &den.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((ZPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let (qk, r) = c.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * d;
            }
            quot[k] = qk;
        }
        Ok((ZPoly::new(quot), ZPoly::new(rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &ZPoly) -> ZPoly {
        let dm = m.degree().expect("modulus is nonzero");
        debug_assert!(m.coeffs[dm].is_one());
        if self.coeffs.len() <= dm {
            return self.clone();
        }
        let mut rem = self.coeffs.clone();
        for k in (dm..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dm {
                rem[k - dm + j] -= &c * &m.coeffs[j];
            }
        }
        rem.truncate(dm);
        ZPoly::new(rem)
    }

    /// Folds exponents modulo `n`, i.e. reduces modulo `t^n - 1`.
    pub fn fold(&self, n: usize) -> ZPoly {
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i % n] += c;
        }
        ZPoly::new(v)
    }

    pub fn eval_i64(&self, at: i64) -> BigInt {
        let at = BigInt::from(at);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &at + c)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        ZPoly::new(v)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = self.coeffs.clone();
        v.resize(n, BigInt::zero());
        for (a, b) in v.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        ZPoly::new(v)
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ZPoly::new(v)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

crate::forward_binops!(ZPoly);

pub(crate) fn write_poly<C: fmt::Display + Signed + Zero + One>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let show_coeff = i == 0 || !abs.is_one();
        if show_coeff {
            write!(f, "{abs}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "{}{var}", if show_coeff { "*" } else { "" })?,
            _ => write!(f, "{}{var}^{i}", if show_coeff { "*" } else { "" })?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stripped_on_construction() {
        assert_eq!(ZPoly::from_i64s(&[1, 0, 0]).coeffs().len(), 1);
        assert!(ZPoly::from_i64s(&[0, 0]).is_zero());
    }

    #[test]
    fn exact_division() {
        let num = ZPoly::from_i64s(&[1, 0, -1]);
        let den = ZPoly::from_i64s(&[1, -1]);
        assert_eq!(num.exact_divide(&den).unwrap(), ZPoly::from_i64s(&[1, 1]));
        let bad = ZPoly::from_i64s(&[1, 1]).exact_divide(&ZPoly::from_i64s(&[1, 0, 1]));
        assert!(matches!(bad, Err(Error::NotDivisible)));
        let frac = ZPoly::from_i64s(&[1]).exact_divide(&ZPoly::from_i64s(&[2]));
        assert!(matches!(frac, Err(Error::NotDivisible)));
    }

    #[test]
    fn rem_and_fold() {
        let phi3 = ZPoly::from_i64s(&[1, 1, 1]);
        let t3 = ZPoly::monomial(BigInt::one(), 3);
        assert_eq!(t3.rem_monic(&phi3), ZPoly::one());
        assert_eq!(t3.fold(3), ZPoly::one());
    }

    #[test]
    fn display() {
        assert_eq!(ZPoly::from_i64s(&[1, -2, 0, 1]).to_string(), "1 - 2*t + t^3");
        assert_eq!(ZPoly::zero().to_string(), "0");
        assert_eq!(ZPoly::from_i64s(&[0, -1]).to_string(), "-t");
    }
}

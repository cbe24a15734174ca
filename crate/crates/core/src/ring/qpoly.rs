use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::zpoly::{write_poly, ZPoly};

/// Polynomial in `t` with rational coefficients, little-endian and stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, den: &QPoly) -> (QPoly, QPoly) {
        let dd = den.degree().expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let inv = den.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, den: &QPoly) -> QPoly {
        self.div_rem(den).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    /// The integer polynomial with these coefficients, if all are integral.
    pub fn to_zpoly(&self) -> Option<ZPoly> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            v.push(c.to_integer());
        }
        Some(ZPoly::new(v))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl From<&ZPoly> for QPoly {
    fn from(p: &ZPoly) -> Self {
        QPoly::new(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        QPoly::new(v)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = self.coeffs.clone();
        v.resize(n, BigRational::zero());
        for (a, b) in v.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        QPoly::new(v)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

crate::forward_binops!(QPoly);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "t")
    }
}

/// A reduced fraction `num/den` in `ℚ(t)` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFraction {
    pub num: QPoly,
    pub den: QPoly,
}

impl QFraction {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QFraction { num, den: QPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = den.leading().cloned().expect("nonzero").recip();
        QFraction { num: num.scale(&l), den: den.scale(&l) }
    }

    /// The polynomial value, when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<QPoly> {
        (self.den.degree() == Some(0)).then(|| self.num.scale(&self.den.coeffs[0].recip()))
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_polynomial() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[(i64, i64)]) -> QPoly {
        QPoly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = qp(&[(1, 1), (1, 1)]);
        let b = qp(&[(1, 1), (0, 1), (1, 1)]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(&(&u * &a) + &(&v * &b), g);
    }

    #[test]
    fn fraction_reduces() {
        let num = qp(&[(-1, 1), (0, 1), (1, 1)]);
        let den = qp(&[(2, 1), (2, 1)]);
        let f = QFraction::new(num, den);
        assert_eq!(f.as_polynomial(), Some(qp(&[(-1, 2), (1, 2)])));
    }
}

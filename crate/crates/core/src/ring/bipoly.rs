use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::zpoly::ZPoly;

/// Element of `ℤ[t,s]`, stored as a polynomial in `s` with `ℤ[t]` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    by_s: Vec<ZPoly>,
}

impl BiPoly {
    pub fn new(mut by_s: Vec<ZPoly>) -> Self {
        while by_s.last().is_some_and(ZPoly::is_zero) {
            by_s.pop();
        }
        BiPoly { by_s }
    }

    pub fn zero() -> Self {
        BiPoly { by_s: Vec::new() }
    }

    pub fn from_t(p: ZPoly) -> Self {
        Self::new(vec![p])
    }

    pub fn s() -> Self {
        Self::new(vec![ZPoly::zero(), ZPoly::one()])
    }

    pub fn by_s(&self) -> &[ZPoly] {
        &self.by_s
    }

    pub fn is_zero(&self) -> bool {
        self.by_s.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.by_s.len() == 1 && self.by_s[0].is_one()
    }

    /// The constant term in `t` and `s`, if the element is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.by_s.as_slice() {
            [] => Some(BigInt::zero()),
            [p] if p.degree() == Some(0) => Some(p.coeff(0)),
            _ => None,
        }
    }

    pub fn map_t(&self, f: impl Fn(&ZPoly) -> ZPoly) -> Self {
        Self::new(self.by_s.iter().map(f).collect())
    }

    /// Substitutes `t ↦ t^k`, `s ↦ s^k`.
    pub fn inflate(&self, k: usize) -> Self {
        let mut v = vec![ZPoly::zero(); self.by_s.len().saturating_sub(1) * k + 1];
        for (i, c) in self.by_s.iter().enumerate() {
            v[i * k] = c.inflate(k);
        }
        Self::new(v)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.by_s.len().max(rhs.by_s.len());
        BiPoly::new(
            (0..n)
                .map(|i| match (self.by_s.get(i), rhs.by_s.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => ZPoly::zero(),
                })
                .collect(),
        )
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![ZPoly::zero(); self.by_s.len() + rhs.by_s.len() - 1];
        for (i, a) in self.by_s.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.by_s.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::new(v)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { by_s: self.by_s.iter().map(|c| -c).collect() }
    }
}

crate::forward_binops!(BiPoly);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.by_s.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let simple = c.coeffs().len() == 1;
            match (i, simple && c.coeffs()[0].is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => {}
                (_, false) if simple => write!(f, "{c}*")?,
                _ => write!(f, "({c})*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_binomials() {
        let a = &BiPoly::from_t(ZPoly::t()) + &BiPoly::s();
        let b = &BiPoly::from_t(ZPoly::t()) - &BiPoly::s();
        let t2 = BiPoly::from_t(ZPoly::from_i64s(&[0, 0, 1]));
        let s2 = &BiPoly::s() * &BiPoly::s();
        assert_eq!(&a * &b, &t2 - &s2);
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{precondition, Result};
use crate::ring::{RingDescriptor, RingElem};

/// A Laurent polynomial in `x` over a coefficient ring.
///
/// Polynomial-only algebras simply never produce negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AElem {
    ring: RingDescriptor,
    low: i64,
    coeffs: Vec<RingElem>,
}

impl AElem {
    fn normalize(ring: RingDescriptor, mut low: i64, mut coeffs: Vec<RingElem>) -> Self {
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return AElem { ring, low: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead);
        low += lead as i64;
        AElem { ring, low, coeffs }
    }

    /// Dense coefficients starting at exponent `low`.
    pub fn from_coeffs(ring: RingDescriptor, low: i64, coeffs: Vec<RingElem>) -> Self {
        assert!(coeffs.iter().all(|c| c.ring() == ring), "coefficient ring mismatch");
        Self::normalize(ring, low, coeffs)
    }

    pub fn from_i64s(ring: RingDescriptor, cs: &[i64]) -> Self {
        Self::normalize(ring, 0, cs.iter().map(|&c| RingElem::from_i64(ring, c)).collect())
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        AElem { ring, low: 0, coeffs: Vec::new() }
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::constant(RingElem::one(ring))
    }

    pub fn constant(c: RingElem) -> Self {
        Self::normalize(c.ring(), 0, vec![c])
    }

    pub fn x(ring: RingDescriptor) -> Self {
        Self::monomial(RingElem::one(ring), 1)
    }

    pub fn x_pow(ring: RingDescriptor, e: i64) -> Self {
        Self::monomial(RingElem::one(ring), e)
    }

    pub fn monomial(c: RingElem, e: i64) -> Self {
        Self::normalize(c.ring(), e, vec![c])
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeff(&self, e: i64) -> RingElem {
        let i = e - self.low;
        if i < 0 {
            return RingElem::zero(self.ring);
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(|| RingElem::zero(self.ring))
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RingElem)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Degree in `x` for polynomials (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.max_exp().map(|e| e.max(0) as usize)
    }

    pub fn is_polynomial(&self) -> bool {
        self.low >= 0 || self.is_zero()
    }

    pub fn as_constant(&self) -> Option<RingElem> {
        match (self.is_zero(), self.low, self.coeffs.len()) {
            (true, _, _) => Some(RingElem::zero(self.ring)),
            (false, 0, 1) => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Self::normalize(self.ring, self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        AElem { ring: self.ring, low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RingElem) -> RingElem) -> Self {
        Self::normalize(self.ring, self.low, self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring);
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

    /// Substitutes `x ↦ image`; negative exponents need `image` to be an invertible monomial.
    pub fn compose(&self, image: &AElem) -> Result<AElem> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let ring = self.ring;
        let hi = self.max_exp().expect("nonzero");
        let mut acc = AElem::zero(ring);
        for e in (0..=hi).rev() {
            acc = &(&acc * image) + &AElem::constant(self.coeff(e));
        }
        if self.low < 0 {
            let inv = match image.monomial_inverse() {
                Some(inv) => inv,
                None => return precondition("negative powers need an invertible monomial image"),
            };
            let mut p = AElem::one(ring);
            for e in (self.low..0).rev() {
                p = &p * &inv;
                acc = &acc + &p.scale(&self.coeff(e));
            }
        }
        Ok(acc)
    }

    fn monomial_inverse(&self) -> Option<AElem> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let inv = self.coeffs[0].try_invert()?;
        Some(AElem::monomial(inv, -self.low))
    }

    /// Exact division by a nonzero constant, or `None` if a coefficient is not divisible.
    pub fn div_constant(&self, c: &RingElem) -> Option<AElem> {
        let inv = c.try_invert()?;
        Some(self.scale(&inv))
    }
}

impl Add for &AElem {
    type Output = AElem;
    fn add(self, rhs: &AElem) -> AElem {
        assert_eq!(self.ring, rhs.ring, "AElem ring mismatch");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut v = vec![RingElem::zero(self.ring); (high - low + 1) as usize];
        for (src, lo) in [(&self.coeffs, self.low), (&rhs.coeffs, rhs.low)] {
            for (i, c) in src.iter().enumerate() {
                let slot = &mut v[(lo - low) as usize + i];
                *slot = &*slot + c;
            }
        }
        AElem::normalize(self.ring, low, v)
    }
}

impl Sub for &AElem {
    type Output = AElem;
    fn sub(self, rhs: &AElem) -> AElem {
        self + &(-rhs)
    }
}

impl Mul for &AElem {
    type Output = AElem;
    fn mul(self, rhs: &AElem) -> AElem {
        assert_eq!(self.ring, rhs.ring, "AElem ring mismatch");
        if self.is_zero() || rhs.is_zero() {
            return AElem::zero(self.ring);
        }
        let mut v = vec![RingElem::zero(self.ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        AElem::normalize(self.ring, self.low + rhs.low, v)
    }
}

impl Neg for &AElem {
    type Output = AElem;
    fn neg(self) -> AElem {
        AElem { ring: self.ring, low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

crate::forward_binops!(AElem);

impl fmt::Display for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let atomic = !cs.contains([' ', '+']) && !cs[1..].contains('-');
            match (e, c.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (_, true) => {}
                _ if atomic => write!(f, "{cs}*")?,
                _ => write!(f, "({cs})*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

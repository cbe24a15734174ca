use std::fmt;
use std::sync::{Arc, RwLock};

use super::aelem::AElem;
use crate::error::{precondition, Result};
use crate::qcomb::QContext;
use crate::ring::{RingDescriptor, RingElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Polynomial,
    Laurent,
}

/// The base algebra `A = R[x]` or `R[x, x⁻¹]` with `σ(x) = qx + h`.
#[derive(Clone)]
pub struct TwistedAlgebra {
    inner: Arc<Inner>,
}

struct Inner {
    ring: RingDescriptor,
    variant: Variant,
    q: RingElem,
    h: RingElem,
    qc: QContext,
    /// `∂(x^k)` for `k = 0, 1, …`, filled on demand when `h ≠ 0`.
    dx: RwLock<Vec<AElem>>,
}

impl TwistedAlgebra {
    pub fn new(ring: RingDescriptor, variant: Variant, q: RingElem, h: RingElem) -> Result<Self> {
        if q.ring() != ring || h.ring() != ring {
            return precondition("q and h must lie in the coefficient ring");
        }
        if variant == Variant::Laurent {
            if q.try_invert().is_none() {
                return precondition(format!("Laurent variant needs q invertible in {ring}"));
            }
            if !h.is_zero() {
                return precondition("Laurent variant needs h = 0");
            }
        }
        let qc = QContext::with_q(q.clone());
        Ok(TwistedAlgebra {
            inner: Arc::new(Inner { ring, variant, q, h, qc, dx: RwLock::new(vec![AElem::zero(ring)]) }),
        })
    }

    /// `R[x]` with the descriptor's `q` and `h = 0`.
    pub fn polynomial(ring: RingDescriptor) -> Self {
        Self::new(ring, Variant::Polynomial, RingElem::q(ring), RingElem::zero(ring)).expect("valid")
    }

    /// `R[x]` with the descriptor's `q` and the given `h`.
    pub fn with_h(ring: RingDescriptor, h: RingElem) -> Result<Self> {
        Self::new(ring, Variant::Polynomial, RingElem::q(ring), h)
    }

    /// `ℤ[t,s][x]` with `σ(x) = tx + s`.
    pub fn generic_with_s() -> Self {
        let ring = RingDescriptor::GenericZts;
        Self::with_h(ring, RingElem::s(ring).expect("Zts has s")).expect("valid")
    }

    pub fn laurent(ring: RingDescriptor) -> Result<Self> {
        Self::new(ring, Variant::Laurent, RingElem::q(ring), RingElem::zero(ring))
    }

    pub fn ring(&self) -> RingDescriptor {
        self.inner.ring
    }

    pub fn variant(&self) -> Variant {
        self.inner.variant
    }

    pub fn q(&self) -> &RingElem {
        &self.inner.q
    }

    pub fn h(&self) -> &RingElem {
        &self.inner.h
    }

    pub fn qc(&self) -> &QContext {
        &self.inner.qc
    }

    /// True when `q` is the descriptor's distinguished element.
    pub fn has_standard_q(&self) -> bool {
        self.inner.q == RingElem::q(self.inner.ring)
    }

    pub fn zero(&self) -> AElem {
        AElem::zero(self.ring())
    }

    pub fn one(&self) -> AElem {
        AElem::one(self.ring())
    }

    pub fn x(&self) -> AElem {
        AElem::x(self.ring())
    }

    pub fn constant(&self, c: RingElem) -> AElem {
        AElem::constant(c)
    }

    pub fn int(&self, n: i64) -> AElem {
        AElem::constant(RingElem::from_i64(self.ring(), n))
    }

    /// `y = x − σ(x) = (1 − q)x − h`.
    pub fn y(&self) -> AElem {
        &self.x() - &self.sigma_x(1).expect("σ(x) exists")
    }

    pub fn contains(&self, z: &AElem) -> bool {
        z.ring() == self.ring() && (self.variant() == Variant::Laurent || z.is_polynomial())
    }

    fn check(&self, z: &AElem) -> Result<()> {
        if z.ring() != self.ring() {
            return precondition(format!("element over {} used in algebra over {}", z.ring(), self.ring()));
        }
        if !self.contains(z) {
            return precondition("negative powers of x in the polynomial variant");
        }
        Ok(())
    }

    /// `σⁿ(x) = qⁿx + (n)_q h`.
    pub fn sigma_x(&self, n: i64) -> Result<AElem> {
        let qn = self.qc().q_pow_i64(n)?;
        let hn = if self.h().is_zero() { RingElem::zero(self.ring()) } else { &self.qc().q_int(n)? * self.h() };
        Ok(&AElem::monomial(qn, 1) + &AElem::constant(hn))
    }

    /// `σⁿ(z)` for any integer `n`; negative `n` needs `q` invertible.
    pub fn sigma(&self, z: &AElem, n: i64) -> Result<AElem> {
        self.check(z)?;
        if n == 0 || z.is_zero() {
            return Ok(z.clone());
        }
        if self.h().is_zero() {
            let mut out = AElem::zero(self.ring());
            for (e, c) in z.terms() {
                out = &out + &AElem::monomial(c * &self.qc().q_pow_i64(n * e)?, e);
            }
            return Ok(out);
        }
        z.compose(&self.sigma_x(n)?)
    }

    /// `σ(z)`, which always exists.
    pub fn sigma1(&self, z: &AElem) -> AElem {
        self.sigma(z, 1).expect("σ is defined on A")
    }

    /// The σ-derivation with `∂(x) = 1`.
    pub fn derive(&self, z: &AElem) -> AElem {
        self.check(z).expect("element of the algebra");
        let ring = self.ring();
        let mut out = AElem::zero(ring);
        if self.h().is_zero() {
            for (e, c) in z.terms() {
                let k = self.qc().q_int(e).expect("Laurent variant has q invertible");
                out = &out + &AElem::monomial(c * &k, e - 1);
            }
            return out;
        }
        let deg = z.degree().unwrap_or(0);
        self.fill_dx(deg);
        let dx = self.inner.dx.read().expect("poisoned");
        for (e, c) in z.terms() {
            out = &out + &dx[e as usize].scale(c);
        }
        out
    }

    fn fill_dx(&self, deg: usize) {
        if self.inner.dx.read().expect("poisoned").len() > deg {
            return;
        }
        let mut dx = self.inner.dx.write().expect("poisoned");
        let sx = self.sigma_x(1).expect("σ(x)");
        let x = self.x();
        while dx.len() <= deg {
            let k = dx.len();
            // ∂(x^k) = x ∂(x^{k-1}) + σ(x)^{k-1}
            let next = &(&x * &dx[k - 1]) + &sx.pow(k as u64 - 1);
            dx.push(next);
        }
    }

    pub fn derive_n(&self, z: &AElem, k: usize) -> AElem {
        (0..k).fold(z.clone(), |acc, _| self.derive(&acc))
    }
}

impl PartialEq for TwistedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.ring() == other.ring()
                && self.variant() == other.variant()
                && self.q() == other.q()
                && self.h() == other.h())
    }
}

impl fmt::Debug for TwistedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistedAlgebra")
            .field("ring", &self.ring())
            .field("variant", &self.variant())
            .field("q", &self.q().to_string())
            .field("h", &self.h().to_string())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_and_y() {
        let a = TwistedAlgebra::generic_with_s();
        let r = a.ring();
        let t = RingElem::q(r);
        let s = RingElem::s(r).unwrap();
        let expected_y = &AElem::monomial(&RingElem::one(r) - &t, 1) - &AElem::constant(s);
        assert_eq!(a.y(), expected_y);
        assert_eq!(a.sigma1(&a.y()), a.y().scale(&t));
    }

    #[test]
    fn derivation_rules() {
        let a = TwistedAlgebra::polynomial(RingDescriptor::GenericZt);
        assert!(a.derive(&a.one()).is_zero());
        assert!(a.derive(&a.x()).is_one());
        let x3 = a.x().pow(3);
        assert_eq!(a.derive(&x3), AElem::monomial(a.qc().int(3), 2));
    }

    #[test]
    fn leibniz_with_h() {
        let a = TwistedAlgebra::generic_with_s();
        let z1 = &a.x().pow(3) + &a.int(2);
        let z2 = &a.x().pow(2) - &a.x();
        let lhs = a.derive(&(&z1 * &z2));
        let rhs = &(&z1 * &a.derive(&z2)) + &(&a.sigma1(&z2) * &a.derive(&z1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_requires_unit_q() {
        assert!(TwistedAlgebra::laurent(RingDescriptor::GenericZt).is_err());
        assert!(TwistedAlgebra::laurent(RingDescriptor::CyclotomicField(5)).is_ok());
    }
}

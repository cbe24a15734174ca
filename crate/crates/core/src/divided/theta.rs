use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{DpElem, DpRing};
use crate::error::{precondition, Result};
use crate::ring::RingDescriptor;
use crate::twisted::{strip, write_series, AElem};

/// A polynomial in `θ` over `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPoly {
    ring: RingDescriptor,
    coeffs: Vec<AElem>,
}

impl ThetaPoly {
    pub fn new(ring: RingDescriptor, mut coeffs: Vec<AElem>) -> Self {
        assert!(coeffs.iter().all(|c| c.ring() == ring), "coefficient ring mismatch");
        strip(&mut coeffs);
        ThetaPoly { ring, coeffs }
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::monomial(AElem::one(ring), 0)
    }

    pub fn theta(ring: RingDescriptor) -> Self {
        Self::monomial(AElem::one(ring), 1)
    }

    pub fn monomial(c: AElem, k: usize) -> Self {
        let ring = c.ring();
        let mut v = vec![AElem::zero(ring); k + 1];
        v[k] = c;
        Self::new(ring, v)
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn coeffs(&self) -> &[AElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> AElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| AElem::zero(self.ring))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &AElem) -> Self {
        Self::new(self.ring, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::one(self.ring), |acc, _| &acc * self)
    }
}

impl Add for &ThetaPoly {
    type Output = ThetaPoly;
    fn add(self, rhs: &ThetaPoly) -> ThetaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ThetaPoly::new(self.ring, (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &ThetaPoly {
    type Output = ThetaPoly;
    fn sub(self, rhs: &ThetaPoly) -> ThetaPoly {
        self + &(-rhs)
    }
}

impl Mul for &ThetaPoly {
    type Output = ThetaPoly;
    fn mul(self, rhs: &ThetaPoly) -> ThetaPoly {
        if self.is_zero() || rhs.is_zero() {
            return ThetaPoly::zero(self.ring);
        }
        let mut v = vec![AElem::zero(self.ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        ThetaPoly::new(self.ring, v)
    }
}

impl Neg for &ThetaPoly {
    type Output = ThetaPoly;
    fn neg(self) -> ThetaPoly {
        ThetaPoly::new(self.ring, self.coeffs.iter().map(|c| -c).collect())
    }
}

crate::forward_binops!(ThetaPoly);

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, &self.coeffs, |k| format!("θ^{k}"))
    }
}

/// `⟨f, g⟩ = Σ f_m g_m`; terms of `f` beyond the precision of `g` pair to zero.
pub fn pairing(f: &ThetaPoly, g: &DpElem) -> Result<AElem> {
    if f.ring() != g.ring().ring() {
        return precondition("pairing across different rings");
    }
    let mut acc = AElem::zero(f.ring());
    for (m, c) in f.coeffs().iter().enumerate().take(g.trunc() + 1) {
        acc = &acc + &(c * &g.coeff(m));
    }
    Ok(acc)
}

/// Image of `f` under `θ ↦ 1⊗θ + θ⊗1 − yθ⊗θ`, as a table indexed by `(θ-power left, θ-power right)`.
pub fn theta_comul(f: &ThetaPoly, ring: &DpRing) -> Result<Vec<Vec<AElem>>> {
    if !ring.q().is_one() {
        return precondition("the θ comultiplication needs q = 1");
    }
    if f.ring() != ring.ring() {
        return precondition("polynomial over a different ring");
    }
    let r = f.ring();
    let y = ring.y();
    let deg = f.degree().unwrap_or(0);
    let zero = || vec![vec![AElem::zero(r); deg + 1]; deg + 1];
    let mul = |a: &Vec<Vec<AElem>>, b: &Vec<Vec<AElem>>| {
        let mut out = zero();
        for (i, row) in a.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, brow) in b.iter().enumerate() {
                    for (l, d) in brow.iter().enumerate() {
                        if !d.is_zero() && i + k <= deg && j + l <= deg {
                            out[i + k][j + l] = &out[i + k][j + l] + &(c * d);
                        }
                    }
                }
            }
        }
        out
    };
    let mut image = zero();
    if deg >= 1 {
        image[0][1] = AElem::one(r);
        image[1][0] = AElem::one(r);
        image[1][1] = -y;
    }
    let mut power = zero();
    power[0][0] = AElem::one(r);
    let mut out = zero();
    for (k, c) in f.coeffs().iter().enumerate() {
        if k > 0 {
            power = mul(&power, &image);
        }
        for (i, row) in power.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[i][j] = &out[i][j] + &(v * c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twisted::TwistedAlgebra;

    #[test]
    fn pairing_is_diagonal() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::PrimeField(3));
        let r = DpRing::standard(&alg);
        let ring = alg.ring();
        let t2 = ThetaPoly::theta(ring).pow(2);
        assert!(pairing(&t2, &r.basis(2, 3)).unwrap().is_one());
        assert!(pairing(&ThetaPoly::theta(ring), &r.basis(2, 3)).unwrap().is_zero());
    }

    #[test]
    fn comultiplication_of_theta() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::PrimeField(3));
        let r = DpRing::standard(&alg);
        let t = theta_comul(&ThetaPoly::theta(alg.ring()), &r).unwrap();
        assert!(t[0][1].is_one() && t[1][0].is_one());
        assert_eq!(t[1][1], -alg.y());
        let generic = DpRing::standard(&TwistedAlgebra::polynomial(RingDescriptor::GenericZt));
        assert!(theta_comul(&ThetaPoly::one(RingDescriptor::GenericZt), &generic).is_err());
    }
}

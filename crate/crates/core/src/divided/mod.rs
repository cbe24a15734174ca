//! Twisted divided power rings `A⟨ξ⟩_{q,y}` truncated at a working precision.

mod maps;
mod taylor;
mod tensor;
mod theta;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

pub use maps::{
    divided_p_power, dp_from_poly, dp_twisted_mul, general_divided_power, general_divided_power_map, mod_xi_reduce,
    xi_ideal_witness,
};
pub use taylor::{horizontal_sections, taylor0};
pub use tensor::{dp_comul, dp_comul_twice, DpTensor, TensorAction};
pub use theta::{pairing, theta_comul, ThetaPoly};

use crate::error::{precondition, Error, Result};
use crate::ring::{RingDescriptor, RingElem};
use crate::twisted::{strip, write_series, AElem, TwistedAlgebra, Twist};

/// The ring `A⟨ξ⟩_{q,y}` over a twisted algebra `A`.
#[derive(Clone)]
pub struct DpRing {
    inner: Arc<DpInner>,
}

struct DpInner {
    alg: TwistedAlgebra,
    twist: Twist,
}

impl DpRing {
    /// Uses the algebra's own `q` and `y = x − σ(x)`.
    pub fn standard(alg: &TwistedAlgebra) -> Self {
        DpRing { inner: Arc::new(DpInner { alg: alg.clone(), twist: Twist::of(alg) }) }
    }

    pub fn with_params(alg: &TwistedAlgebra, q: RingElem, y: AElem) -> Result<Self> {
        if q.ring() != alg.ring() || y.ring() != alg.ring() {
            return precondition("divided power parameters over a different ring");
        }
        Ok(DpRing { inner: Arc::new(DpInner { alg: alg.clone(), twist: Twist::new(q, y)? }) })
    }

    /// The ring `A⟨ω⟩_{q^p, y^p}`.
    pub fn frobenius_params(&self, p: usize) -> Self {
        Self::with_params(self.alg(), self.q().pow(p as u64), self.twist().y_pow(p)).expect("same ring")
    }

    pub fn alg(&self) -> &TwistedAlgebra {
        &self.inner.alg
    }

    pub fn twist(&self) -> &Twist {
        &self.inner.twist
    }

    pub fn q(&self) -> &RingElem {
        self.inner.twist.q()
    }

    pub fn y(&self) -> &AElem {
        self.inner.twist.y()
    }

    pub fn ring(&self) -> RingDescriptor {
        self.inner.alg.ring()
    }

    /// True when the parameters are those of the algebra itself.
    pub fn is_standard(&self) -> bool {
        self.q() == self.alg().q() && *self.y() == self.alg().y()
    }

    /// Whether `σ_A(y) = q y`, which makes `σ` act on this ring.
    pub fn sigma_compatible(&self) -> bool {
        self.alg().sigma1(self.y()) == self.y().scale(self.q())
    }

    pub fn zero(&self, trunc: usize) -> DpElem {
        DpElem { ring: self.clone(), trunc, coeffs: Vec::new() }
    }

    pub fn one(&self, trunc: usize) -> DpElem {
        self.basis(0, trunc)
    }

    /// `ξ^{[n]}` at precision `trunc` (zero when `n > trunc`).
    pub fn basis(&self, n: usize, trunc: usize) -> DpElem {
        self.monomial(AElem::one(self.ring()), n, trunc)
    }

    pub fn monomial(&self, c: AElem, n: usize, trunc: usize) -> DpElem {
        let mut coeffs = vec![AElem::zero(self.ring()); n + 1];
        coeffs[n] = c;
        self.elem(trunc, coeffs)
    }

    pub fn constant(&self, c: AElem, trunc: usize) -> DpElem {
        self.monomial(c, 0, trunc)
    }

    /// Builds an element, dropping coefficients beyond `trunc`.
    pub fn elem(&self, trunc: usize, mut coeffs: Vec<AElem>) -> DpElem {
        assert!(coeffs.iter().all(|c| c.ring() == self.ring()), "coefficient ring mismatch");
        coeffs.truncate(trunc + 1);
        strip(&mut coeffs);
        DpElem { ring: self.clone(), trunc, coeffs }
    }

    /// The `sqform` coefficient of `y^i ξ^{[m+n−i]}` in `ξ^{[m]} ξ^{[n]}`.
    pub fn sq_coeff(&self, m: usize, n: usize, i: usize) -> RingElem {
        let qc = self.twist().qc();
        let c = &(&qc.q_pow(i * i.saturating_sub(1) / 2) * &qc.binom(m + n - i, m)) * &qc.binom(m, i);
        if i % 2 == 1 {
            -c
        } else {
            c
        }
    }

    /// `ξ^{[m]} ξ^{[n]}` as coefficients, truncated at `trunc`.
    pub fn basis_product(&self, m: usize, n: usize, trunc: usize) -> Vec<AElem> {
        let ring = self.ring();
        if m.max(n) > trunc {
            return Vec::new();
        }
        let mut out = vec![AElem::zero(ring); (m + n).min(trunc) + 1];
        for i in 0..=m.min(n) {
            let k = m + n - i;
            if k > trunc {
                continue;
            }
            let c = self.sq_coeff(m, n, i);
            if !c.is_zero() {
                out[k] = &out[k] + &self.twist().y_pow(i).scale(&c);
            }
        }
        strip(&mut out);
        out
    }
}

impl PartialEq for DpRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.alg() == other.alg() && self.twist().same_params(other.twist()))
    }
}

impl fmt::Debug for DpRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DpRing")
            .field("alg", self.alg())
            .field("q", &self.q().to_string())
            .field("y", &self.y().to_string())
            .finish()
    }
}

/// An element `Σ z_i ξ^{[i]}` of `A⟨ξ⟩/I^{[N+1]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DpElem {
    ring: DpRing,
    trunc: usize,
    coeffs: Vec<AElem>,
}

impl DpElem {
    pub fn ring(&self) -> &DpRing {
        &self.ring
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[AElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> AElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| AElem::zero(self.ring.ring()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest index with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &AElem) -> DpElem {
        self.ring.elem(self.trunc, self.coeffs.iter().map(|z| z * c).collect())
    }

    /// Reduces to a lower precision.
    pub fn truncate(&self, trunc: usize) -> DpElem {
        self.ring.elem(trunc, self.coeffs.clone())
    }

    fn check(&self, other: &DpElem) -> Result<()> {
        if self.ring != other.ring {
            return precondition("divided power elements over different rings");
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DpElem) -> Result<DpElem> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(self.ring.elem(self.trunc, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect()))
    }

    pub fn checked_sub(&self, other: &DpElem) -> Result<DpElem> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &DpElem) -> Result<DpElem> {
        dp_mul(self, other)
    }
}

impl Add for &DpElem {
    type Output = DpElem;
    fn add(self, rhs: &DpElem) -> DpElem {
        self.checked_add(rhs).expect("compatible operands")
    }
}

impl Sub for &DpElem {
    type Output = DpElem;
    fn sub(self, rhs: &DpElem) -> DpElem {
        self.checked_sub(rhs).expect("compatible operands")
    }
}

impl std::ops::Mul for &DpElem {
    type Output = DpElem;
    fn mul(self, rhs: &DpElem) -> DpElem {
        dp_mul(self, rhs).expect("compatible operands")
    }
}

impl Neg for &DpElem {
    type Output = DpElem;
    fn neg(self) -> DpElem {
        DpElem { ring: self.ring.clone(), trunc: self.trunc, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

crate::forward_binops!(DpElem);

impl fmt::Display for DpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, &self.coeffs, |k| format!("ξ^[{k}]"))?;
        write!(f, " (mod I^[{}])", self.trunc + 1)
    }
}

/// Product via the `sqform` rule; operands must share ring and precision.
pub fn dp_mul(a: &DpElem, b: &DpElem) -> Result<DpElem> {
    a.check(b)?;
    let ring = &a.ring;
    let n = a.trunc;
    let mut out = vec![AElem::zero(ring.ring()); n + 1];
    for (m, am) in a.coeffs.iter().enumerate() {
        if am.is_zero() {
            continue;
        }
        for (k, bk) in b.coeffs.iter().enumerate() {
            if bk.is_zero() || m.max(k) > n {
                continue;
            }
            let ab = am * bk;
            for (j, c) in ring.basis_product(m, k, n).iter().enumerate() {
                if !c.is_zero() {
                    out[j] = &out[j] + &(c * &ab);
                }
            }
        }
    }
    Ok(ring.elem(n, out))
}

/// `σⁿ` via `σⁿ(ξ^{[k]}) = Σ C(n+i−1, i)_q y^i ξ^{[k−i]}` on the basis and `σⁿ` on coefficients.
pub fn dp_sigma(a: &DpElem, n: usize) -> Result<DpElem> {
    let out = dp_sigma_closed(a, n)?;
    debug_assert_eq!(out, dp_sigma_iterated(a, n)?, "closed form of σⁿ disagrees with iteration");
    Ok(out)
}

fn dp_sigma_closed(a: &DpElem, n: usize) -> Result<DpElem> {
    let ring = &a.ring;
    if !ring.sigma_compatible() {
        return precondition("σ acts on A⟨ξ⟩_{q,y} only when σ(y) = qy");
    }
    if n == 0 {
        return Ok(a.clone());
    }
    let alg = ring.alg();
    let qc = ring.twist().qc();
    let mut out = vec![AElem::zero(ring.ring()); a.coeffs.len()];
    for (k, z) in a.coeffs.iter().enumerate() {
        if z.is_zero() {
            continue;
        }
        let sz = alg.sigma(z, n as i64)?;
        for i in 0..=k {
            let c = qc.binom(n + i - 1, i);
            if !c.is_zero() {
                out[k - i] = &out[k - i] + &(&sz * &ring.twist().y_pow(i)).scale(&c);
            }
        }
    }
    Ok(ring.elem(a.trunc, out))
}

/// `σⁿ` as the `n`-fold iterate of `σ(ξ^{[k]}) = Σ y^i ξ^{[k−i]}`.
pub fn dp_sigma_iterated(a: &DpElem, n: usize) -> Result<DpElem> {
    let ring = &a.ring;
    if !ring.sigma_compatible() {
        return precondition("σ acts on A⟨ξ⟩_{q,y} only when σ(y) = qy");
    }
    let alg = ring.alg();
    let mut cur = a.clone();
    for _ in 0..n {
        let mut out = vec![AElem::zero(ring.ring()); cur.coeffs.len()];
        for (k, z) in cur.coeffs.iter().enumerate() {
            let sz = alg.sigma1(z);
            for i in 0..=k {
                out[k - i] = &out[k - i] + &(&sz * &ring.twist().y_pow(i));
            }
        }
        cur = ring.elem(a.trunc, out);
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zt() -> DpRing {
        DpRing::standard(&TwistedAlgebra::polynomial(RingDescriptor::GenericZt))
    }

    #[test]
    fn product_with_xi() {
        let r = zt();
        let qc = r.twist().qc();
        for k in 0..5 {
            let got = dp_mul(&r.basis(k, 8), &r.basis(1, 8)).unwrap();
            let expected = &r.constant(AElem::constant(qc.int(k + 1)), 8) * &r.basis(k + 1, 8);
            let corr = r.monomial(r.y().scale(&qc.int(k)), k, 8);
            assert_eq!(got, &expected - &corr);
        }
    }

    #[test]
    fn truncation_mismatch() {
        let r = zt();
        assert!(matches!(dp_mul(&r.one(2), &r.one(3)), Err(Error::TruncMismatch(2, 3))));
    }

    #[test]
    fn sigma_square_at_minus_one() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(2));
        let r = DpRing::standard(&alg);
        let got = dp_sigma(&r.basis(2, 4), 2).unwrap();
        let expected = &r.basis(2, 4) + &r.constant(r.y().pow(2), 4);
        assert_eq!(got, expected);
    }
}

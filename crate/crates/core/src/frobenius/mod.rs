//! The p-Frobenius `F*: A′ → A`, its divided refinement `[F*]`, and the
//! isomorphism `(A[ξ]/ξ^{(p)}) ⊗ A⟨ω⟩ ≃ A⟨ξ⟩` at roots of unity.
//!
//! `A′ = R ⊗_{F*_R} A` is again a polynomial (or Laurent) ring over `R`; its
//! elements are stored as [`AElem`]s whose variable is read as `x′`.

mod coeffs;
mod frobis;

pub use coeffs::{
    b_top_closed_form, coeff_a, coeff_b, coeff_b_from, coeff_c, t_factorial, t_int, techf2_holds, techf_holds,
};
pub use frobis::{frobis_forward, frobis_inverse, mixed_mul, MixedElem};

use crate::divided::{dp_from_poly, DpElem, DpRing};
use crate::error::{precondition, Error, Result};
use crate::ring::RingElem;
use crate::twisted::{AElem, TwistedAlgebra, Twist, XiPoly};

/// `F*` together with the divided-power rings it connects.
#[derive(Clone, Debug)]
pub struct FrobeniusContext {
    alg: TwistedAlgebra,
    p: usize,
    target: DpRing,
    source: DpRing,
    linear: DpRing,
    source_twist: Twist,
}

impl FrobeniusContext {
    pub fn new(alg: &TwistedAlgebra, p: usize) -> Result<Self> {
        if p == 0 {
            return precondition("p must be positive");
        }
        if !alg.h().is_zero() {
            return precondition("the p-Frobenius is set up for σ(x) = qx");
        }
        if !alg.has_standard_q() {
            return precondition("the p-Frobenius uses the descriptor's own q");
        }
        let ring = alg.ring();
        let q = alg.q().clone();
        let qp = q.pow(p as u64);
        let y = alg.y();
        let one_minus_q = &RingElem::one(ring) - &q;
        let y_lin = AElem::monomial(one_minus_q, p as i64);
        let y_src_twist = AElem::monomial(&RingElem::one(ring) - &qp, 1);
        Ok(FrobeniusContext {
            alg: alg.clone(),
            p,
            target: DpRing::standard(alg),
            source: DpRing::with_params(alg, qp.clone(), y)?,
            linear: DpRing::with_params(alg, qp.clone(), y_lin)?,
            source_twist: Twist::new(qp, y_src_twist)?,
        })
    }

    pub fn alg(&self) -> &TwistedAlgebra {
        &self.alg
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `A⟨ξ⟩_{q,y}`.
    pub fn target(&self) -> &DpRing {
        &self.target
    }

    /// `A′⟨ω⟩_{q^p,y}`, written in the variable `x′`.
    pub fn source(&self) -> &DpRing {
        &self.source
    }

    /// `A⟨ω⟩_{q^p,(1−q)x^p}`, the domain of the linearized map.
    pub fn linear(&self) -> &DpRing {
        &self.linear
    }

    /// The twist `(q′, y′) = (q^p, (p)_q y)` on `A′[ξ]`.
    pub fn source_twist(&self) -> &Twist {
        &self.source_twist
    }

    /// `A → A′`, `z ↦ 1 ⊗ z`: applies `F*_R` to the coefficients.
    pub fn base_change(&self, z: &AElem) -> AElem {
        z.map_coeffs(|c| c.frobenius_endo(self.p))
    }

    /// The `R`-linear map `A′ → A`, `x′ ↦ x^p`.
    pub fn relative(&self, z: &AElem) -> AElem {
        z.compose(&AElem::x_pow(z.ring(), self.p as i64)).expect("x^p is an invertible monomial")
    }

    /// The composite `A → A′ → A`.
    pub fn frobenius_on_a(&self, z: &AElem) -> AElem {
        self.relative(&self.base_change(z))
    }

    /// `F*`-linear extension to `A′[ξ] → A[ξ]` with `ξ ↦ (x+ξ)^p − x^p`.
    pub fn frobenius_on_xi(&self, f: &XiPoly) -> XiPoly {
        let ring = f.ring();
        let xp = AElem::x_pow(ring, self.p as i64);
        let image = &XiPoly::substitute_x_plus_xi(&xp).expect("polynomial") - &XiPoly::constant(xp);
        let pulled = XiPoly::new(ring, f.coeffs().iter().map(|c| self.relative(c)).collect());
        pulled.compose(&image)
    }

    /// `ξ^{(n)_{q′,y′}}` in `A′[ξ]`.
    pub fn source_twisted_power(&self, n: usize) -> XiPoly {
        self.source_twist.power(n)
    }

    fn eval(&self, f: &crate::ring::ZPoly) -> RingElem {
        RingElem::from_zpoly(self.alg.ring(), f)
    }

    /// `F*(ξ^{(n)_{q′,y′}}) = Σ_i A_{n,i}(q) x^{pn−i} ξ^{(i)}`, as a polynomial and in `A⟨ξ⟩`.
    pub fn frobenius_twisted_power(&self, n: usize, trunc: usize) -> Result<(XiPoly, DpElem)> {
        let p = self.p;
        let coeffs: Vec<AElem> =
            (0..=p * n).map(|i| AElem::monomial(self.eval(&coeff_a(n, i, p)), (p * n - i) as i64)).collect();
        let f = self.target.twist().from_twisted(&coeffs);
        let d = dp_from_poly(&self.target, &f, trunc)?;
        Ok((f, d))
    }

    /// Coefficients of `[F*](ω^{[n]}) = Σ_{i=n}^{pn} B_{n,i}(q) x^{pn−i} ξ^{[i]}` up to `trunc`.
    pub fn divided_basis_image(&self, n: usize, trunc: usize) -> Result<Vec<AElem>> {
        let p = self.p;
        let ring = self.alg.ring();
        let mut out = vec![AElem::zero(ring); trunc.min(p * n) + 1];
        for (i, slot) in out.iter_mut().enumerate().skip(n) {
            *slot = AElem::monomial(self.eval(&coeff_b(n, i, p)?), (p * n - i) as i64);
        }
        Ok(out)
    }

    fn check_trunc(&self, w: &DpElem, trunc: usize) -> Result<()> {
        if trunc > self.p * w.trunc() {
            return Err(Error::TruncOverflow(format!(
                "an element known up to ω^[{}] determines its image only up to ξ^[{}]",
                w.trunc(),
                self.p * w.trunc()
            )));
        }
        Ok(())
    }

    fn apply(&self, w: &DpElem, trunc: usize, coeff: impl Fn(&AElem) -> AElem) -> Result<DpElem> {
        self.check_trunc(w, trunc)?;
        let ring = self.alg.ring();
        let mut out = vec![AElem::zero(ring); trunc + 1];
        for (n, c) in w.coeffs().iter().enumerate() {
            if c.is_zero() || n > trunc {
                continue;
            }
            let c = coeff(c);
            for (i, b) in self.divided_basis_image(n, trunc)?.iter().enumerate() {
                if !b.is_zero() {
                    out[i] = &out[i] + &(b * &c);
                }
            }
        }
        Ok(self.target.elem(trunc, out))
    }

    /// The divided p-Frobenius `A′⟨ω⟩_{q^p,y} → A⟨ξ⟩_{q,y}`.
    ///
    /// `w` is read as the polynomial `Σ_{n ≤ N} w_n ω^{[n]}`, so the image is exact up to `ξ^{[pN]}`.
    pub fn divided_frobenius(&self, w: &DpElem, trunc: usize) -> Result<DpElem> {
        if w.ring() != &self.source {
            return precondition("the divided p-Frobenius takes elements of A′⟨ω⟩_{q^p,y}");
        }
        self.apply(w, trunc, |c| self.relative(c))
    }

    /// The `A`-linear version `A⟨ω⟩_{q^p,(1−q)x^p} → A⟨ξ⟩_{q,y}` given by the same formula.
    pub fn divided_frobenius_linear(&self, w: &DpElem, trunc: usize) -> Result<DpElem> {
        if w.ring() != &self.linear {
            return precondition("the linearized map takes elements of A⟨ω⟩_{q^p,(1−q)x^p}");
        }
        self.apply(w, trunc, Clone::clone)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divided::dp_mul;
    use crate::ring::RingDescriptor;

    fn ctx(r: RingDescriptor, p: usize) -> FrobeniusContext {
        FrobeniusContext::new(&TwistedAlgebra::polynomial(r), p).unwrap()
    }

    #[test]
    fn frobenius_on_a_twists_coefficients() {
        let c = ctx(RingDescriptor::GenericZt, 3);
        let r = RingDescriptor::GenericZt;
        let z = AElem::monomial(RingElem::q(r), 2);
        assert_eq!(c.frobenius_on_a(&z), AElem::monomial(RingElem::q(r).pow(3), 6));
    }

    #[test]
    fn image_of_xi_is_twisted_p_power_at_root_of_unity() {
        for p in 2..=4 {
            let c = ctx(RingDescriptor::CyclotomicField(p as u32), p);
            let img = c.frobenius_on_xi(&XiPoly::xi(c.alg().ring()));
            assert_eq!(img, c.target().twist().power(p));
        }
    }

    #[test]
    fn twisted_power_formula_matches_product() {
        for p in 2..=3 {
            let c = ctx(RingDescriptor::GenericZt, p);
            for n in 0..=3 {
                let direct = c.frobenius_on_xi(&c.source_twisted_power(n));
                let (f, _) = c.frobenius_twisted_power(n, p * n).unwrap();
                assert_eq!(f, direct, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn divided_frobenius_is_multiplicative() {
        let c = ctx(RingDescriptor::GenericZt, 2);
        let s = c.source();
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            let prod = dp_mul(&s.basis(m, m + n), &s.basis(n, m + n)).unwrap();
            let t = 2 * (m + n);
            let lhs = c.divided_frobenius(&prod, t).unwrap();
            let a = c.divided_frobenius(&s.basis(m, m + n), t).unwrap();
            let b = c.divided_frobenius(&s.basis(n, m + n), t).unwrap();
            assert_eq!(lhs, dp_mul(&a, &b).unwrap(), "m={m} n={n}");
        }
        assert!(matches!(c.divided_frobenius(&s.basis(1, 1), 3), Err(Error::TruncOverflow(_))));
    }
}

use std::collections::BTreeMap;
use std::fmt;

use super::FrobeniusContext;
use crate::divided::{DpElem, DpRing};
use crate::error::{precondition, Error, Result};
use crate::twisted::AElem;

/// An element `Σ c_{k,n} ξ̄^{[k]} ω^{[n]}` of `(A[ξ]/ξ^{(p)}) ⟨ω⟩_{1,(1−q)x^p}`, `k < p`.
///
/// `ξ̄^{[k]}` is the class of `ξ^{(k)}/(k)_q!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedElem {
    p: usize,
    terms: BTreeMap<(usize, usize), AElem>,
}

impl MixedElem {
    pub fn zero(p: usize) -> Self {
        MixedElem { p, terms: BTreeMap::new() }
    }

    pub fn basis(ctx: &FrobeniusContext, k: usize, n: usize) -> Self {
        Self::monomial(ctx.p(), AElem::one(ctx.alg().ring()), k, n)
    }

    pub fn monomial(p: usize, c: AElem, k: usize, n: usize) -> Self {
        let mut m = Self::zero(p);
        m.add_term(k, n, c);
        m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), AElem> {
        &self.terms
    }

    pub fn coeff(&self, k: usize, n: usize) -> Option<&AElem> {
        self.terms.get(&(k, n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `k + pn` for the leading basis element.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(k, n)| k + self.p * n).max()
    }

    fn add_term(&mut self, k: usize, n: usize, c: AElem) {
        assert!(k < self.p, "ξ̄-index must stay below p");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((k, n)).or_insert_with(|| AElem::zero(c.ring()));
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(k, n));
        }
    }

    pub fn add(&self, other: &MixedElem) -> MixedElem {
        let mut out = self.clone();
        for (&(k, n), c) in &other.terms {
            out.add_term(k, n, c.clone());
        }
        out
    }
}

impl fmt::Display for MixedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((k, n), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*ξ̄^[{k}]ω^[{n}]")?;
        }
        Ok(())
    }
}

fn check_root_of_unity(ctx: &FrobeniusContext) -> Result<()> {
    let ch = ctx.alg().qc().characteristic() as usize;
    if ch != ctx.p() {
        return precondition(format!("needs q-characteristic {} (found {ch})", ctx.p()));
    }
    Ok(())
}

/// `A⟨ω⟩_{1,(1−q)x^p}`, which equals [`FrobeniusContext::linear`] when `q^p = 1`.
fn omega_ring(ctx: &FrobeniusContext) -> &DpRing {
    ctx.linear()
}

/// Product in `(A[ξ]/ξ^{(p)}) ⊗ A⟨ω⟩`.
pub fn mixed_mul(ctx: &FrobeniusContext, a: &MixedElem, b: &MixedElem) -> Result<MixedElem> {
    check_root_of_unity(ctx)?;
    let p = ctx.p();
    let xi = ctx.target();
    let om = omega_ring(ctx);
    let mut out = MixedElem::zero(p);
    for (&(k, n), c) in &a.terms {
        for (&(l, m), d) in &b.terms {
            let cd = c * d;
            let xs = xi.basis_product(k, l, p - 1);
            let os = om.basis_product(n, m, n + m);
            for (i, u) in xs.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let ucd = u * &cd;
                for (j, v) in os.iter().enumerate() {
                    if !v.is_zero() {
                        out.add_term(i, j, &ucd * v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `ξ̄^{[k]} ω^{[n]} ↦ ξ^{[k]} · [F*](ω^{[n]})`, truncated at `trunc`.
pub fn frobis_forward(ctx: &FrobeniusContext, m: &MixedElem, trunc: usize) -> Result<DpElem> {
    check_root_of_unity(ctx)?;
    let ring = ctx.target();
    let r = ring.ring();
    let mut out = vec![AElem::zero(r); trunc + 1];
    for (&(k, n), c) in &m.terms {
        if k > trunc {
            continue;
        }
        for (i, b) in ctx.divided_basis_image(n, trunc)?.iter().enumerate() {
            if b.is_zero() || k + i > trunc {
                continue;
            }
            let bc = b * c;
            for (j, s) in ring.basis_product(k, i, trunc).iter().enumerate() {
                if !s.is_zero() {
                    out[j] = &out[j] + &(s * &bc);
                }
            }
        }
    }
    Ok(ring.elem(trunc, out))
}

/// Inverse of [`frobis_forward`] by a top-down triangular solve.
pub fn frobis_inverse(ctx: &FrobeniusContext, a: &DpElem) -> Result<MixedElem> {
    check_root_of_unity(ctx)?;
    if !ctx.alg().ring().is_q_divisible() {
        return precondition("the inverse needs a q-divisible ring");
    }
    if a.ring() != ctx.target() {
        return precondition("element of a different divided power ring");
    }
    let p = ctx.p();
    let trunc = a.trunc();
    let mut rest = a.clone();
    let mut out = MixedElem::zero(p);
    for d in (0..=trunc).rev() {
        let c = rest.coeff(d);
        if c.is_zero() {
            continue;
        }
        let (k, n) = (d % p, d / p);
        let image = frobis_forward(ctx, &MixedElem::basis(ctx, k, n), trunc)?;
        let lead = image.coeff(d).as_constant().and_then(|l| l.try_invert()).ok_or_else(|| {
            Error::Internal(format!("leading coefficient of ξ̄^[{k}]ω^[{n}] is not a unit"))
        })?;
        let coeff = c.scale(&lead);
        rest = &rest - &image.scale(&coeff);
        out.add_term(k, n, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;
    use crate::twisted::TwistedAlgebra;

    #[test]
    fn roundtrip_on_basis() {
        for p in 2..=3 {
            let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(p as u32));
            let ctx = FrobeniusContext::new(&alg, p).unwrap();
            let trunc = 8;
            for n in 0..=trunc / p {
                for k in 0..p.min(trunc - p * n + 1) {
                    let m = MixedElem::basis(&ctx, k, n);
                    let img = frobis_forward(&ctx, &m, trunc).unwrap();
                    assert_eq!(frobis_inverse(&ctx, &img).unwrap(), m, "p={p} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn forward_is_multiplicative() {
        let p = 3;
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(3));
        let ctx = FrobeniusContext::new(&alg, p).unwrap();
        let t = 9;
        for (a, b) in [((1, 0), (1, 1)), ((2, 1), (1, 1)), ((0, 1), (0, 1)), ((2, 0), (2, 0))] {
            let x = MixedElem::basis(&ctx, a.0, a.1);
            let y = MixedElem::basis(&ctx, b.0, b.1);
            let lhs = frobis_forward(&ctx, &mixed_mul(&ctx, &x, &y).unwrap(), t).unwrap();
            let rhs = &frobis_forward(&ctx, &x, t).unwrap() * &frobis_forward(&ctx, &y, t).unwrap();
            assert_eq!(lhs, rhs, "{a:?} {b:?}");
        }
    }
}

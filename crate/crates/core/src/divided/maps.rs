use super::{dp_mul, dp_sigma, DpElem, DpRing};
use crate::error::{precondition, Result};
use crate::ring::RingElem;
use crate::twisted::{AElem, XiPoly};

/// `A[ξ] → A⟨ξ⟩`, `ξ^{(n)} ↦ (n)_q! ξ^{[n]}`.
pub fn dp_from_poly(ring: &DpRing, f: &XiPoly, trunc: usize) -> Result<DpElem> {
    if f.ring() != ring.ring() {
        return precondition("polynomial over a different ring");
    }
    let tw = ring.twist();
    let coeffs = tw.to_twisted(f).into_iter().enumerate().map(|(n, c)| c.scale(&tw.qc().q_factorial(n))).collect();
    Ok(ring.elem(trunc, coeffs))
}

/// `ξ^{[n]} σⁿ(ξ^{[m]})`, which equals `C(m+n, n)_q ξ^{[n+m]}`.
pub fn dp_twisted_mul(ring: &DpRing, n: usize, m: usize, trunc: usize) -> Result<DpElem> {
    let s = dp_sigma(&ring.basis(m, trunc), n)?;
    dp_mul(&ring.basis(n, trunc), &s)
}

fn q_char_of(ring: &DpRing) -> Result<usize> {
    match ring.twist().qc().characteristic() {
        0 => precondition("the twisted divided p-power map needs positive q-characteristic"),
        p => Ok(p as usize),
    }
}

/// The twisted divided `p`-power map `A⟨ω⟩_{1,y^p} → A⟨ξ⟩_{q,y}`, `ω^{[k]} ↦ ξ^{[kp]}`.
pub fn divided_p_power(w: &DpElem, target: &DpRing) -> Result<DpElem> {
    let p = q_char_of(target)?;
    let source = target.frobenius_params(p);
    if *w.ring() != source {
        return precondition("source must be A⟨ω⟩ with parameters (1, y^p)");
    }
    let mut coeffs = vec![AElem::zero(target.ring()); w.coeffs().len().saturating_sub(1) * p + 1];
    for (k, c) in w.coeffs().iter().enumerate() {
        coeffs[k * p] = c.clone();
    }
    Ok(target.elem(w.trunc() * p, coeffs))
}

/// `∏_{i=2}^{k} C(ip−1, p−1)_q`.
fn general_factor(target: &DpRing, k: usize, p: usize) -> RingElem {
    let qc = target.twist().qc();
    (2..=k).fold(RingElem::one(target.ring()), |acc, i| &acc * &qc.binom(i * p - 1, p - 1))
}

/// Image of `ω^{[k]}` under `A⟨ω⟩_{q^p,y^p} → A⟨ξ⟩_{q,y}`, which needs no hypothesis on `q`.
pub fn general_divided_power(target: &DpRing, k: usize, p: usize, trunc: usize) -> Result<DpElem> {
    if p == 0 {
        return precondition("p must be positive");
    }
    let c = general_factor(target, k, p);
    Ok(target.monomial(AElem::constant(c), k * p, trunc))
}

/// The linear extension of [`general_divided_power`] to elements of `A⟨ω⟩_{q^p,y^p}`.
pub fn general_divided_power_map(w: &DpElem, target: &DpRing, p: usize) -> Result<DpElem> {
    if p == 0 {
        return precondition("p must be positive");
    }
    if *w.ring() != target.frobenius_params(p) {
        return precondition("source must be A⟨ω⟩ with parameters (q^p, y^p)");
    }
    let mut coeffs = vec![AElem::zero(target.ring()); w.coeffs().len().saturating_sub(1) * p + 1];
    for (k, c) in w.coeffs().iter().enumerate() {
        coeffs[k * p] = c.scale(&general_factor(target, k, p));
    }
    Ok(target.elem(w.trunc() * p, coeffs))
}

/// Reduction `A⟨ξ⟩_{q,y} → A⟨ξ⟩/(ξ) ≅ A⟨ω⟩_{1,y^p}`.
pub fn mod_xi_reduce(a: &DpElem) -> Result<DpElem> {
    let ring = a.ring();
    let p = q_char_of(ring)?;
    if !ring.ring().is_q_divisible() {
        return precondition(format!("{} is not q-divisible", ring.ring()));
    }
    let target = ring.frobenius_params(p);
    let coeffs = a.coeffs().iter().step_by(p).cloned().collect();
    Ok(target.elem(a.trunc() / p, coeffs))
}

/// An element `g` with `g·ξ = ξ^{[k]}` modulo `I^{[trunc+1]}`, for `p ∤ k`.
///
/// Built from `ξ^{[j]}ξ = (j+1)_q ξ^{[j+1]} − (j)_q y ξ^{[j]}` starting at `j = ⌊k/p⌋p`.
pub fn xi_ideal_witness(ring: &DpRing, k: usize, trunc: usize) -> Result<DpElem> {
    let p = q_char_of(ring)?;
    if k % p == 0 {
        return precondition(format!("ξ^[{k}] is not in the ideal generated by ξ"));
    }
    let qc = ring.twist().qc();
    let base = k - k % p;
    let mut g = ring.basis(base, trunc);
    for j in base + 1..k {
        // ξ^{[j+1]} = (j+1)_q^{-1} (ξ^{[j]} + (j)_q y g_j) ξ
        let inv = match qc.int(j + 1).try_invert() {
            Some(v) => v,
            None => return precondition(format!("({})_q is not invertible", j + 1)),
        };
        let next = &ring.basis(j, trunc) + &g.scale(&ring.y().scale(&qc.int(j)));
        g = next.scale(&AElem::constant(inv));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;
    use crate::twisted::TwistedAlgebra;

    #[test]
    fn xi_squared_in_divided_basis() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::GenericZt);
        let r = DpRing::standard(&alg);
        let xi2 = XiPoly::xi(alg.ring()).pow(2);
        let got = dp_from_poly(&r, &xi2, 4).unwrap();
        let expected = &r.monomial(AElem::constant(r.twist().qc().int(2)), 2, 4) - &r.monomial(alg.y(), 1, 4);
        assert_eq!(got, expected);
    }

    #[test]
    fn p_th_twisted_power_vanishes() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(3));
        let r = DpRing::standard(&alg);
        let f = r.twist().power(3);
        assert!(dp_from_poly(&r, &f, 6).unwrap().is_zero());
    }

    #[test]
    fn witnesses_generate() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(3));
        let r = DpRing::standard(&alg);
        for k in [1, 2, 4, 5, 7, 8] {
            let g = xi_ideal_witness(&r, k, 9).unwrap();
            assert_eq!(dp_mul(&g, &r.basis(1, 9)).unwrap(), r.basis(k, 9));
        }
        assert!(xi_ideal_witness(&r, 3, 9).is_err());
    }

    #[test]
    fn general_map_factor() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::GenericZt);
        let r = DpRing::standard(&alg);
        let got = general_divided_power(&r, 2, 2, 4).unwrap();
        assert_eq!(got, r.monomial(AElem::constant(r.twist().qc().int(3)), 4, 4));
    }
}

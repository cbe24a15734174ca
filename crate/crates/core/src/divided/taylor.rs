use super::{DpElem, DpRing};
use crate::error::{precondition, Result};
use crate::linalg;
use crate::ring::RingElem;
use crate::twisted::{AElem, TwistedAlgebra};

/// The level-zero Taylor map `Θ(z) = Σ ∂^k(z) ξ^{[k]}` truncated at `trunc`.
pub fn taylor0(alg: &TwistedAlgebra, z: &AElem, trunc: usize) -> Result<DpElem> {
    if !alg.contains(z) {
        return precondition("element outside the algebra");
    }
    let ring = DpRing::standard(alg);
    let mut coeffs = Vec::with_capacity(trunc + 1);
    let mut cur = z.clone();
    for _ in 0..=trunc {
        coeffs.push(cur.clone());
        if cur.is_zero() {
            break;
        }
        cur = alg.derive(&cur);
    }
    Ok(ring.elem(trunc, coeffs))
}

/// A basis of the polynomials of degree at most `bound` killed by `∂`.
pub fn horizontal_sections(alg: &TwistedAlgebra, bound: usize) -> Vec<AElem> {
    let ring = alg.ring();
    let cols: Vec<AElem> = (0..=bound).map(|e| alg.derive(&AElem::x_pow(ring, e as i64))).collect();
    let rows: Vec<Vec<RingElem>> =
        (0..bound.max(1)).map(|e| cols.iter().map(|c| c.coeff(e as i64)).collect()).collect();
    linalg::kernel(ring, &rows, bound + 1)
        .into_iter()
        .map(|v| AElem::from_coeffs(ring, 0, v))
        .map(|z| normalize(&z))
        .collect()
}

/// Makes the leading coefficient 1 when it is a unit.
fn normalize(z: &AElem) -> AElem {
    match z.max_exp().and_then(|e| z.coeff(e).try_invert()) {
        Some(inv) => z.scale(&inv),
        None => z.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    #[test]
    fn taylor_of_x() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::GenericZt);
        let t = taylor0(&alg, &alg.x(), 3).unwrap();
        assert_eq!(t.coeffs(), &[alg.x(), alg.one()]);
    }

    #[test]
    fn sections_at_root_of_unity() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(3));
        let got = horizontal_sections(&alg, 6);
        let r = alg.ring();
        assert_eq!(got, vec![AElem::one(r), AElem::x_pow(r, 3), AElem::x_pow(r, 6)]);
        let generic = TwistedAlgebra::polynomial(RingDescriptor::GenericZt);
        assert_eq!(horizontal_sections(&generic, 3), vec![generic.one()]);
    }
}

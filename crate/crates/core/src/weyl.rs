//! The twisted Weyl algebra `D = A⟨∂⟩` with `∂ ∘ z = σ(z)∂ + ∂(z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::divided::{dp_comul, dp_mul, pairing, taylor0, DpElem, DpRing, TensorAction, ThetaPoly};
use crate::error::{precondition, Error, Result};
use crate::linalg;
use crate::ring::RingElem;
use crate::twisted::{strip, AElem, TwistedAlgebra};

/// Polynomials in `θ`, mapped to `D` by the p-curvature.
pub type CurvaturePoly = ThetaPoly;

/// `Σ z_k ∂^k` with coefficients written on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylElem {
    alg: TwistedAlgebra,
    coeffs: Vec<AElem>,
}

impl WeylElem {
    pub fn new(alg: &TwistedAlgebra, mut coeffs: Vec<AElem>) -> Self {
        assert!(coeffs.iter().all(|c| alg.contains(c)), "coefficient outside the algebra");
        strip(&mut coeffs);
        WeylElem { alg: alg.clone(), coeffs }
    }

    pub fn zero(alg: &TwistedAlgebra) -> Self {
        Self::new(alg, Vec::new())
    }

    pub fn one(alg: &TwistedAlgebra) -> Self {
        Self::from_a(alg, alg.one())
    }

    pub fn from_a(alg: &TwistedAlgebra, z: AElem) -> Self {
        Self::new(alg, vec![z])
    }

    pub fn x(alg: &TwistedAlgebra) -> Self {
        Self::from_a(alg, alg.x())
    }

    pub fn partial(alg: &TwistedAlgebra) -> Self {
        Self::monomial(alg, alg.one(), 1)
    }

    /// `z ∂^k`.
    pub fn monomial(alg: &TwistedAlgebra, z: AElem, k: usize) -> Self {
        let mut v = vec![alg.zero(); k + 1];
        v[k] = z;
        Self::new(alg, v)
    }

    /// `x^a ∂^b`.
    pub fn xd(alg: &TwistedAlgebra, a: usize, b: usize) -> Self {
        Self::monomial(alg, AElem::x_pow(alg.ring(), a as i64), b)
    }

    pub fn alg(&self) -> &TwistedAlgebra {
        &self.alg
    }

    pub fn coeffs(&self) -> &[AElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> AElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.alg.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients keyed by `(x-exponent, ∂-degree)`.
    pub fn monomials(&self) -> BTreeMap<(i64, usize), RingElem> {
        let mut out = BTreeMap::new();
        for (k, z) in self.coeffs.iter().enumerate() {
            for (e, c) in z.terms() {
                out.insert((e, k), c.clone());
            }
        }
        out
    }

    pub fn scale_left(&self, z: &AElem) -> Self {
        Self::new(&self.alg, self.coeffs.iter().map(|c| z * c).collect())
    }
}

/// `∂ ∘ Σ u_j ∂^j = Σ (σ(u_j) ∂^{j+1} + ∂(u_j) ∂^j)`.
fn partial_times(alg: &TwistedAlgebra, ops: &[AElem]) -> Vec<AElem> {
    let mut out = vec![alg.zero(); ops.len() + 1];
    for (j, u) in ops.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        out[j + 1] = &out[j + 1] + &alg.sigma1(u);
        out[j] = &out[j] + &alg.derive(u);
    }
    out
}

/// The Ore product.
pub fn weyl_mul(a: &WeylElem, b: &WeylElem) -> Result<WeylElem> {
    if a.alg != b.alg {
        return precondition("operators over different algebras");
    }
    let alg = &a.alg;
    let mut out = vec![alg.zero(); (a.coeffs.len() + b.coeffs.len()).saturating_sub(1)];
    let mut cur = b.coeffs.clone();
    for (k, z) in a.coeffs.iter().enumerate() {
        if k > 0 {
            cur = partial_times(alg, &cur);
        }
        if z.is_zero() {
            continue;
        }
        for (j, u) in cur.iter().enumerate() {
            if !u.is_zero() {
                out[j] = &out[j] + &(z * u);
            }
        }
    }
    Ok(WeylElem::new(alg, out))
}

/// `Σ z_k ∂^k(z)`.
pub fn weyl_apply(op: &WeylElem, z: &AElem) -> Result<AElem> {
    if !op.alg.contains(z) {
        return precondition("function outside the algebra");
    }
    let mut acc = op.alg.zero();
    let mut cur = z.clone();
    for (k, c) in op.coeffs.iter().enumerate() {
        if k > 0 {
            cur = op.alg.derive(&cur);
        }
        acc = &acc + &(c * &cur);
    }
    Ok(acc)
}

/// Composition through principal parts: `(a∘b)(ξ^{[k]}) = a((1 ⊗ b)(δ ξ^{[k]}))`.
pub fn weyl_mul_via_duality(a: &WeylElem, b: &WeylElem, trunc: usize) -> Result<WeylElem> {
    if a.alg != b.alg {
        return precondition("operators over different algebras");
    }
    let need = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
    if need > trunc {
        return Err(Error::TruncOverflow(format!("composition of degree {need} needs truncation at least {need}")));
    }
    let alg = &a.alg;
    let ring = DpRing::standard(alg);
    let functional = CurvaturePoly::new(alg.ring(), a.coeffs.clone());
    let thetas: Vec<DpElem> = b.coeffs.iter().map(|c| taylor0(alg, c, trunc)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(trunc + 1);
    for k in 0..=trunc {
        let split = dp_comul(&ring.basis(k, 2 * trunc), TensorAction::Taylor, (trunc, trunc))?;
        let mut acc = ring.zero(trunc);
        for ((i, j), z) in split.terms() {
            if let Some(th) = thetas.get(j) {
                let term = dp_mul(&ring.monomial(z.clone(), i, trunc), th)?;
                acc = acc.checked_add(&term)?;
            }
        }
        out.push(pairing(&functional, &acc)?);
    }
    Ok(WeylElem::new(alg, out))
}

fn q_char_divisible(alg: &TwistedAlgebra) -> Result<usize> {
    let p = alg.qc().characteristic() as usize;
    if p == 0 {
        return precondition("positive q-characteristic required");
    }
    if !alg.ring().is_q_divisible() {
        return precondition(format!("{} is not q-divisible", alg.ring()));
    }
    Ok(p)
}

/// The p-curvature map `θ ↦ ∂^p`, extended `A`-linearly and multiplicatively.
pub fn p_curvature(alg: &TwistedAlgebra, f: &CurvaturePoly) -> Result<WeylElem> {
    let p = q_char_divisible(alg)?;
    if f.ring() != alg.ring() {
        return precondition("polynomial over a different ring");
    }
    let mut v = vec![alg.zero(); f.coeffs().len().saturating_sub(1) * p + 1];
    for (k, c) in f.coeffs().iter().enumerate() {
        v[k * p] = c.clone();
    }
    Ok(WeylElem::new(alg, v))
}

/// Monomials `x^a ∂^b` with `a + b ≤ bound`.
pub fn monomial_box(bound: usize) -> Vec<(usize, usize)> {
    (0..=bound).flat_map(|a| (0..=bound - a).map(move |b| (a, b))).collect()
}

/// Kernel of `φ ↦ ([φ, g] for g in gens)` on the span of the monomial box.
fn commutant(alg: &TwistedAlgebra, gens: &[WeylElem], bound: usize) -> Result<Vec<WeylElem>> {
    let cols = monomial_box(bound);
    let mut images: Vec<Vec<BTreeMap<(i64, usize), RingElem>>> = Vec::new();
    for &(a, b) in &cols {
        let phi = WeylElem::xd(alg, a, b);
        let mut per_gen = Vec::new();
        for g in gens {
            let c = &weyl_mul(&phi, g)? - &weyl_mul(g, &phi)?;
            per_gen.push(c.monomials());
        }
        images.push(per_gen);
    }
    let mut rows: Vec<Vec<RingElem>> = Vec::new();
    for gi in 0..gens.len() {
        let keys: std::collections::BTreeSet<(i64, usize)> =
            images.iter().flat_map(|im| im[gi].keys().copied()).collect();
        for key in keys {
            rows.push(
                images.iter().map(|im| im[gi].get(&key).cloned().unwrap_or_else(|| RingElem::zero(alg.ring()))).collect(),
            );
        }
    }
    let basis = linalg::kernel(alg.ring(), &rows, cols.len());
    Ok(basis
        .into_iter()
        .map(|v| {
            v.iter().zip(&cols).fold(WeylElem::zero(alg), |acc, (c, &(a, b))| {
                &acc + &WeylElem::monomial(alg, AElem::monomial(c.clone(), a as i64), b)
            })
        })
        .collect())
}

/// Operators in the box `a + b ≤ bound` commuting with `x`.
pub fn centralizer_basis(alg: &TwistedAlgebra, bound: usize) -> Result<Vec<WeylElem>> {
    commutant(alg, &[WeylElem::x(alg)], bound)
}

/// Operators in the box `a + b ≤ bound` commuting with `x` and `∂`.
pub fn center_basis(alg: &TwistedAlgebra, bound: usize) -> Result<Vec<WeylElem>> {
    q_char_divisible(alg)?;
    if !alg.h().is_zero() {
        return precondition("the center computation assumes h = 0");
    }
    commutant(alg, &[WeylElem::x(alg), WeylElem::partial(alg)], bound)
}

/// Coordinates of operators in the monomial box, for span comparisons.
pub fn box_coordinates(ops: &[WeylElem], bound: usize) -> Vec<Vec<RingElem>> {
    let cols = monomial_box(bound);
    ops.iter()
        .map(|op| {
            let m = op.monomials();
            cols.iter()
                .map(|&(a, b)| m.get(&(a as i64, b)).cloned().unwrap_or_else(|| RingElem::zero(op.alg.ring())))
                .collect()
        })
        .collect()
}

impl Add for &WeylElem {
    type Output = WeylElem;
    fn add(self, rhs: &WeylElem) -> WeylElem {
        assert_eq!(self.alg, rhs.alg, "operators over different algebras");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylElem::new(&self.alg, (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &WeylElem {
    type Output = WeylElem;
    fn sub(self, rhs: &WeylElem) -> WeylElem {
        self + &(-rhs)
    }
}

impl Mul for &WeylElem {
    type Output = WeylElem;
    fn mul(self, rhs: &WeylElem) -> WeylElem {
        weyl_mul(self, rhs).expect("operators over the same algebra")
    }
}

impl Neg for &WeylElem {
    type Output = WeylElem;
    fn neg(self) -> WeylElem {
        WeylElem::new(&self.alg, self.coeffs.iter().map(|c| -c).collect())
    }
}

crate::forward_binops!(WeylElem);

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, z) in self.coeffs.iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = match k {
                0 => String::new(),
                1 => "∂".to_string(),
                _ => format!("∂^{k}"),
            };
            match (k, z.is_one()) {
                (0, _) => write!(f, "{z}")?,
                (_, true) => write!(f, "{d}")?,
                _ => write!(f, "({z})*{d}")?,
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
    use crate::ring::RingDescriptor;

    #[test]
    fn commutation_rule() {
        let alg = TwistedAlgebra::generic_with_s();
        let d = WeylElem::partial(&alg);
        let x = WeylElem::x(&alg);
        let expected = &WeylElem::monomial(&alg, alg.sigma_x(1).unwrap(), 1) + &WeylElem::one(&alg);
        assert_eq!(&d * &x, expected);
        let d2x = &(&d * &d) * &x;
        let expected = &WeylElem::monomial(&alg, alg.sigma_x(2).unwrap(), 2)
            + &WeylElem::monomial(&alg, AElem::constant(alg.qc().int(2)), 1);
        assert_eq!(d2x, expected);
    }

    #[test]
    fn duality_on_generators() {
        let alg = TwistedAlgebra::generic_with_s();
        let d = WeylElem::partial(&alg);
        let x = WeylElem::x(&alg);
        for (a, b) in [(&d, &x), (&x, &d), (&d, &d)] {
            assert_eq!(weyl_mul_via_duality(a, b, 2).unwrap(), weyl_mul(a, b).unwrap());
        }
        assert!(weyl_mul_via_duality(&d, &d, 1).is_err());
    }

    #[test]
    fn center_at_cube_root() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(3));
        let got = center_basis(&alg, 6).unwrap();
        let expected: Vec<WeylElem> =
            [(0, 0), (3, 0), (0, 3), (3, 3), (6, 0), (0, 6)].iter().map(|&(a, b)| WeylElem::xd(&alg, a, b)).collect();
        let r = alg.ring();
        assert!(linalg::same_span(r, &box_coordinates(&got, 6), &box_coordinates(&expected, 6), 28));
    }

    #[test]
    fn generic_centralizer_is_a() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::GenericZt);
        let got = centralizer_basis(&alg, 3).unwrap();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|op| op.degree() == Some(0)));
    }
}

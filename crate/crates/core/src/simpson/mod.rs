//! The map `Φ: D → ZA` dual to the divided p-Frobenius, the Azumaya splitting
//! action and the twisted Simpson correspondence.
//!
//! Elements of the centralizer `ZA = A[∂^p]` are stored as [`CurvaturePoly`]s
//! with `θ` standing for `∂^p`.

mod matrix;
mod modules;
mod suite;

pub use matrix::{adjugate, det, euclid_echelon, identity, is_zero_matrix, mat_map, mat_mul, mat_sub, poly_divrem, AMatrix};
pub use modules::{find_similarity, higgs_to_qdiff, qdiff_to_higgs, HiggsModule, QDiffModule};
pub use suite::{default_suite, roundtrip, run_default_suite, RoundtripReport};

use crate::divided::{dp_comul, DpTensor, TensorAction};
use crate::error::{precondition, Result};
use crate::frobenius::{coeff_b, FrobeniusContext};
use crate::ring::RingElem;
use crate::twisted::{AElem, TwistedAlgebra, XiPoly};
use crate::weyl::{weyl_mul, CurvaturePoly, WeylElem};

/// `Φ` and the Azumaya action, for `R` q-divisible of q-characteristic `p` and `h = 0`.
#[derive(Clone, Debug)]
pub struct PhiContext {
    frob: FrobeniusContext,
}

impl PhiContext {
    pub fn new(alg: &TwistedAlgebra) -> Result<Self> {
        let p = alg.qc().characteristic() as usize;
        if p == 0 {
            return precondition(format!("{} has q-characteristic 0", alg.ring()));
        }
        if !alg.ring().is_q_divisible() {
            return precondition(format!("{} is not q-divisible", alg.ring()));
        }
        Ok(PhiContext { frob: FrobeniusContext::new(alg, p)? })
    }

    pub fn p(&self) -> usize {
        self.frob.p()
    }

    pub fn alg(&self) -> &TwistedAlgebra {
        self.frob.alg()
    }

    pub fn frobenius(&self) -> &FrobeniusContext {
        &self.frob
    }

    fn b(&self, k: usize, n: usize) -> Result<RingElem> {
        Ok(RingElem::from_zpoly(self.alg().ring(), &coeff_b(k, n, self.p())?))
    }

    /// `Φ(op)` in `A[θ]`, from `Φ(∂^n) = Σ_k B_{k,n}(q) x^{pk−n} θ^k`.
    pub fn phi_curvature(&self, op: &WeylElem) -> Result<CurvaturePoly> {
        if op.alg() != self.alg() {
            return precondition("operator over a different algebra");
        }
        let p = self.p();
        let ring = self.alg().ring();
        let mut out = vec![AElem::zero(ring); op.coeffs().len()];
        for (n, z) in op.coeffs().iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate().take(n + 1).skip(n.div_ceil(p)) {
                let b = self.b(k, n)?;
                if !b.is_zero() {
                    *slot = &*slot + &(z * &AElem::monomial(b, (p * k - n) as i64));
                }
            }
        }
        Ok(CurvaturePoly::new(ring, out))
    }

    /// `Φ(op)` as an operator.
    pub fn phi(&self, op: &WeylElem) -> Result<WeylElem> {
        let f = self.phi_curvature(op)?;
        crate::weyl::p_curvature(self.alg(), &f)
    }

    /// The matrix of `op` acting on `ZA` over `Z`, in the basis `1, x, …, x^{p−1}`,
    /// with `θ`-degrees above `trunc` dropped.
    ///
    /// Entry `(i, j)` is the coefficient of `x^i` in `op · x^j = Φ(op ∘ x^j)`;
    /// its own coefficients lie in `R[x^p]`.
    pub fn azumaya_matrix(&self, op: &WeylElem, trunc: usize) -> Result<Vec<Vec<CurvaturePoly>>> {
        let p = self.p();
        let alg = self.alg();
        let ring = alg.ring();
        let mut m = vec![vec![vec![AElem::zero(ring); trunc + 1]; p]; p];
        for j in 0..p {
            let image = self.phi_curvature(&weyl_mul(op, &WeylElem::from_a(alg, AElem::x_pow(ring, j as i64)))?)?;
            for (k, c) in image.coeffs().iter().enumerate().take(trunc + 1) {
                for (e, v) in c.terms() {
                    let i = e.rem_euclid(p as i64);
                    let cell = &mut m[i as usize][j][k];
                    *cell = &*cell + &AElem::monomial(v.clone(), e - i);
                }
            }
        }
        Ok(m.into_iter().map(|row| row.into_iter().map(|v| CurvaturePoly::new(ring, v)).collect()).collect())
    }

    /// `F*(A′) ⊂ A^{∂=0}` on the monomials `x′^k`, `k ≤ bound`.
    pub fn is_adapted(&self, bound: usize) -> bool {
        let alg = self.alg();
        (0..=bound).all(|k| alg.derive(&self.frob.relative(&AElem::x_pow(alg.ring(), k as i64))).is_zero())
    }

    /// `δ[F*](ω^{[n]}) = ([F*] ⊗ [F*]) δ(ω^{[n]})` in `P ⊗′ P`.
    pub fn comultiplication_commutes(&self, n: usize) -> Result<bool> {
        let p = self.p();
        let t = p * n;
        let target = self.frob.target();
        let image = target.elem(2 * t, self.frob.divided_basis_image(n, 2 * t)?);
        let lhs = dp_comul(&image, TensorAction::Taylor, (t, t))?;
        let mut rhs = DpTensor::zero(target, TensorAction::Taylor, (t, t))?;
        for i in 0..=n {
            let u = target.elem(t, self.frob.divided_basis_image(n - i, t)?);
            let v = target.elem(t, self.frob.divided_basis_image(i, t)?);
            rhs.add_pure(&u, &v)?;
        }
        Ok(lhs == rhs)
    }

    /// `A ⊗_{A′} A → A[ξ]/ξ^{(p)}`, `1 ⊗ x^i ↦ (x+ξ)^i`: well defined on `x^p` and
    /// unitriangular on `1, x, …, x^{p−1}` against the twisted powers.
    pub fn tensor_square_is_free(&self) -> Result<bool> {
        let p = self.p();
        let alg = self.alg();
        let ring = alg.ring();
        let tw = self.frob.target().twist();
        let xp = AElem::x_pow(ring, p as i64);
        let shifted = tw.to_twisted(&XiPoly::substitute_x_plus_xi(&xp)?);
        let reduced: Vec<AElem> = shifted.into_iter().take(p).collect();
        if reduced.first() != Some(&xp) || reduced.iter().skip(1).any(|c| !c.is_zero()) {
            return Ok(false);
        }
        for i in 0..p {
            let v = tw.to_twisted(&XiPoly::substitute_x_plus_xi(&AElem::x_pow(ring, i as i64))?);
            if v.len() != i + 1 || !v[i].is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Product of matrices over `Z = R[x^p][θ]`, truncated in `θ`.
pub fn curvature_matmul(a: &[Vec<CurvaturePoly>], b: &[Vec<CurvaturePoly>], trunc: usize) -> Vec<Vec<CurvaturePoly>> {
    let n = a.len();
    let ring = a[0][0].ring();
    let cut = |f: CurvaturePoly| CurvaturePoly::new(ring, f.coeffs().iter().take(trunc + 1).cloned().collect());
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| cut((0..n).fold(CurvaturePoly::zero(ring), |acc, k| &acc + &(&a[i][k] * &b[k][j]))))
                .collect()
        })
        .collect()
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{adjugate, det, euclid_echelon, is_zero_matrix, mat_mul, mat_sub, AMatrix};
use super::PhiContext;
use crate::error::{precondition, Error, Result};
use crate::linalg;
use crate::ring::{RingDescriptor, RingElem};
use crate::twisted::{AElem, TwistedAlgebra};

/// A free `A′`-module with a Higgs field `u_H` (entries in the variable `x′`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsModule {
    pub theta: AMatrix,
}

impl HiggsModule {
    pub fn new(theta: AMatrix) -> Result<Self> {
        let r = theta.len();
        if r == 0 || theta.iter().any(|row| row.len() != r) {
            return precondition("the Higgs field must be a nonempty square matrix");
        }
        Ok(HiggsModule { theta })
    }

    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    pub fn ring(&self) -> RingDescriptor {
        self.theta[0][0].ring()
    }

    /// `u^K = 0`.
    pub fn is_quasi_nilpotent(&self, bound: usize) -> bool {
        let mut pw = super::identity(self.ring(), self.rank());
        for _ in 0..bound {
            pw = mat_mul(&pw, &self.theta);
            if is_zero_matrix(&pw) {
                return true;
            }
        }
        is_zero_matrix(&pw)
    }
}

/// A free `A`-module with `∂(e_j) = Σ_i D_{ij} e_i`, extended by the twisted Leibniz rule.
#[derive(Clone, Debug, PartialEq)]
pub struct QDiffModule {
    alg: TwistedAlgebra,
    pub derivation: AMatrix,
}

impl QDiffModule {
    pub fn new(alg: &TwistedAlgebra, derivation: AMatrix) -> Result<Self> {
        let r = derivation.len();
        if r == 0 || derivation.iter().any(|row| row.len() != r) {
            return precondition("the derivation matrix must be a nonempty square matrix");
        }
        if derivation.iter().flatten().any(|c| !alg.contains(c)) {
            return precondition("matrix entry outside the algebra");
        }
        Ok(QDiffModule { alg: alg.clone(), derivation })
    }

    pub fn rank(&self) -> usize {
        self.derivation.len()
    }

    pub fn alg(&self) -> &TwistedAlgebra {
        &self.alg
    }

    /// `∂(Σ s_j e_j) = Σ ∂(s_j) e_j + σ(s_j) ∂(e_j)`.
    pub fn derive(&self, s: &[AElem]) -> Vec<AElem> {
        let sig: Vec<AElem> = s.iter().map(|c| self.alg.sigma1(c)).collect();
        (0..self.rank())
            .map(|i| {
                let mut acc = self.alg.derive(&s[i]);
                for (j, c) in sig.iter().enumerate() {
                    if !c.is_zero() && !self.derivation[i][j].is_zero() {
                        acc = &acc + &(&self.derivation[i][j] * c);
                    }
                }
                acc
            })
            .collect()
    }

    /// `∂^0(s), ∂^1(s), …` until the first zero (excluded) or `cap` steps.
    fn orbit(&self, s: &[AElem], cap: usize) -> Vec<Vec<AElem>> {
        let mut out = Vec::new();
        let mut cur = s.to_vec();
        while out.len() < cap && cur.iter().any(|c| !c.is_zero()) {
            let next = self.derive(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    fn generator(&self, j: usize) -> Vec<AElem> {
        let ring = self.alg.ring();
        (0..self.rank()).map(|i| if i == j { AElem::one(ring) } else { AElem::zero(ring) }).collect()
    }

    /// Smallest `N ≤ bound` with `∂^N(e_j) = 0` for every generator.
    pub fn nilpotency_index(&self, bound: usize) -> Option<usize> {
        let mut worst = 0;
        for j in 0..self.rank() {
            let o = self.orbit(&self.generator(j), bound + 1);
            if o.len() > bound {
                return None;
            }
            worst = worst.max(o.len());
        }
        Some(worst)
    }

    pub fn is_quasi_nilpotent(&self, bound: usize) -> bool {
        self.nilpotency_index(bound).is_some()
    }
}

/// `H ↦ A ⊗_{A′} H` with `∂(1 ⊗ s) = x^{p−1} ⊗ θ(s)`.
pub fn higgs_to_qdiff(ctx: &PhiContext, h: &HiggsModule) -> Result<QDiffModule> {
    let alg = ctx.alg();
    if h.ring() != alg.ring() {
        return precondition("Higgs module over a different ring");
    }
    let xp1 = AElem::x_pow(alg.ring(), ctx.p() as i64 - 1);
    let d = h.theta.iter().map(|row| row.iter().map(|c| &xp1 * &ctx.frobenius().relative(c)).collect()).collect();
    QDiffModule::new(alg, d)
}

fn nilpotency_scan_bound(m: &QDiffModule, p: usize) -> usize {
    let deg = m.derivation.iter().flatten().filter_map(AElem::max_exp).max().unwrap_or(0).max(0) as usize;
    4 * p * (m.rank() + 1) * (deg + 1)
}

/// `M ↦ M^{Φ=1}` with `u_H = ∂^p`, searching sections of `x`-degree at most `bound`.
pub fn qdiff_to_higgs(ctx: &PhiContext, m: &QDiffModule, bound: usize) -> Result<HiggsModule> {
    let alg = ctx.alg();
    let ring = alg.ring();
    if m.alg() != alg {
        return precondition("module over a different algebra");
    }
    if !ring.is_field() {
        return precondition("the Φ-invariants are computed over a field of coefficients");
    }
    if alg.variant() != crate::twisted::Variant::Polynomial {
        return precondition("the Φ-invariants are computed on R[x]");
    }
    let p = ctx.p();
    let r = m.rank();
    let cap = nilpotency_scan_bound(m, p);
    let n = m
        .nilpotency_index(cap)
        .ok_or_else(|| Error::Precondition(format!("∂ is not nilpotent on the generators within {cap} steps")))?;
    // ∂^{a+N} kills x^a e_j, so conditions past D + N are empty
    let k_max = (p * n + p).max(bound + n);
    let phis: Vec<Vec<(usize, AElem)>> = (0..=k_max)
        .map(|k| {
            (k.div_ceil(p)..=k)
                .map(|j| Ok((p * j, AElem::monomial(ctx.b(j, k)?, (p * j - k) as i64))))
                .filter(|t: &Result<(usize, AElem)>| t.as_ref().map_or(true, |(_, c)| !c.is_zero()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // columns: x^a e_j; rows: (k, component, exponent) of Φ(∂^k)(b) − ∂^k(b)
    let mut rows: std::collections::BTreeMap<(usize, usize, i64), Vec<RingElem>> = Default::default();
    let ncols = r * (bound + 1);
    for j in 0..r {
        for a in 0..=bound {
            let col = j * (bound + 1) + a;
            let mut b = vec![AElem::zero(ring); r];
            b[j] = AElem::x_pow(ring, a as i64);
            let orbit = m.orbit(&b, usize::MAX);
            let at = |e: usize| orbit.get(e);
            for (k, phi) in phis.iter().enumerate().skip(1) {
                let mut v = match at(k) {
                    Some(d) => d.iter().map(|c| -c).collect(),
                    None => vec![AElem::zero(ring); r],
                };
                for (e, z) in phi {
                    if let Some(d) = at(*e) {
                        for (slot, c) in v.iter_mut().zip(d) {
                            *slot = &*slot + &(z * c);
                        }
                    }
                }
                for (i, c) in v.iter().enumerate() {
                    for (e, val) in c.terms() {
                        let row = rows.entry((k, i, e)).or_insert_with(|| vec![RingElem::zero(ring); ncols]);
                        row[col] = &row[col] + val;
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<RingElem>> = rows.into_values().collect();
    let kernel = linalg::kernel(ring, &rows, ncols);

    // A′-coordinates: component j, residue i ↦ polynomial in x′
    let to_prime = |v: &[RingElem]| -> Vec<AElem> {
        let mut out = vec![vec![RingElem::zero(ring); bound / p + 1]; r * p];
        for j in 0..r {
            for a in 0..=bound {
                out[j * p + a % p][a / p] = v[j * (bound + 1) + a].clone();
            }
        }
        out.into_iter().map(|c| AElem::from_coeffs(ring, 0, c)).collect()
    };
    let gens: Vec<Vec<AElem>> = kernel.iter().map(|v| to_prime(v)).collect();
    let basis = euclid_echelon(&gens)?;
    if basis.len() < r {
        return Err(Error::UnderSaturated { bound, found: basis.len(), expected: r });
    }
    if basis.len() > r {
        return Err(Error::Internal(format!("Φ-invariants have A′-rank {} above the module rank {r}", basis.len())));
    }
    let frob = ctx.frobenius();
    let sections: Vec<Vec<AElem>> = basis
        .iter()
        .map(|row| {
            (0..r)
                .map(|j| {
                    (0..p).fold(AElem::zero(ring), |acc, i| {
                        &acc + &frob.relative(&row[j * p + i]).shift(i as i64)
                    })
                })
                .collect()
        })
        .collect();
    // columns of g are the sections
    let g: AMatrix = (0..r).map(|i| sections.iter().map(|s| s[i].clone()).collect()).collect();
    let d = det(&g);
    let Some(dinv) = d.as_constant().and_then(|c| c.try_invert()) else {
        return Err(Error::UnderSaturated { bound, found: r, expected: r });
    };
    let adj = adjugate(&g);
    let mut u = super::matrix::zero_matrix(ring, r);
    for (jcol, s) in sections.iter().enumerate() {
        let mut dp = s.clone();
        for _ in 0..p {
            dp = m.derive(&dp);
        }
        for (i, row) in adj.iter().enumerate() {
            let c = row.iter().zip(&dp).fold(AElem::zero(ring), |acc, (a, b)| &acc + &(a * b)).scale(&dinv);
            u[i][jcol] = descend(&c, p).ok_or_else(|| {
                Error::Internal(format!("∂^p of a Φ-invariant section has a coefficient {c} outside R[x^p]"))
            })?;
        }
    }
    HiggsModule::new(u)
}

/// `z(x) = w(x^p)` ↦ `w(x′)`.
fn descend(z: &AElem, p: usize) -> Option<AElem> {
    let ring = z.ring();
    let mut out = AElem::zero(ring);
    for (e, c) in z.terms() {
        if e % p as i64 != 0 {
            return None;
        }
        out = &out + &AElem::monomial(c.clone(), e / p as i64);
    }
    Some(out)
}

/// Searches `P ∈ GL_r(A′)` with entries of degree at most `degree` and `v P = P u`.
///
/// The solution space is computed exactly; a unit determinant is sought among
/// seeded random combinations of its basis.
pub fn find_similarity(u: &AMatrix, v: &AMatrix, degree: usize, seed: u64, tries: usize) -> Result<Option<AMatrix>> {
    let r = u.len();
    if v.len() != r {
        return Ok(None);
    }
    let ring = u[0][0].ring();
    if !ring.is_field() {
        return precondition("similarity search needs a field of coefficients");
    }
    if u == v {
        return Ok(Some(super::identity(ring, r)));
    }
    let unknowns: Vec<(usize, usize, usize)> =
        (0..r).flat_map(|a| (0..r).flat_map(move |b| (0..=degree).map(move |e| (a, b, e)))).collect();
    let mut rows: std::collections::BTreeMap<(usize, usize, i64), Vec<RingElem>> = Default::default();
    for (col, &(a, b, e)) in unknowns.iter().enumerate() {
        let mut p = super::matrix::zero_matrix(ring, r);
        p[a][b] = AElem::x_pow(ring, e as i64);
        let diff = mat_sub(&mat_mul(v, &p), &mat_mul(&p, u));
        for (i, row) in diff.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                for (k, val) in c.terms() {
                    let entry = rows.entry((i, j, k)).or_insert_with(|| vec![RingElem::zero(ring); unknowns.len()]);
                    entry[col] = val.clone();
                }
            }
        }
    }
    let rows: Vec<Vec<RingElem>> = rows.into_values().collect();
    let kernel = linalg::kernel(ring, &rows, unknowns.len());
    if kernel.is_empty() {
        return Ok(None);
    }
    let build = |w: &[RingElem]| -> AMatrix {
        let mut p = super::matrix::zero_matrix(ring, r);
        for (c, &(a, b, e)) in w.iter().zip(&unknowns) {
            p[a][b] = &p[a][b] + &AElem::monomial(c.clone(), e as i64);
        }
        p
    };
    let is_unit = |p: &AMatrix| det(p).as_constant().is_some_and(|c| !c.is_zero());
    let combine = |coeffs: &[i64]| -> Vec<RingElem> {
        let mut w = vec![RingElem::zero(ring); unknowns.len()];
        for (vec, &c) in kernel.iter().zip(coeffs) {
            let c = RingElem::from_i64(ring, c);
            for (slot, x) in w.iter_mut().zip(vec) {
                *slot = &*slot + &(&c * x);
            }
        }
        w
    };
    for vec in &kernel {
        let p = build(vec);
        if is_unit(&p) {
            return Ok(Some(p));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let coeffs: Vec<i64> = (0..kernel.len()).map(|_| rng.gen_range(-3..=3)).collect();
        let p = build(&combine(&coeffs));
        if is_unit(&p) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

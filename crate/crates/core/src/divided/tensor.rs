use std::collections::BTreeMap;
use std::fmt;

use super::{dp_mul, taylor0, DpElem, DpRing};
use crate::error::{precondition, Error, Result};
use crate::twisted::AElem;

/// How `A` acts on the right tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorAction {
    /// `u ⊗′ zv = uΘ(z) ⊗′ v`.
    Taylor,
    /// `u ⊗ zv = zu ⊗ v`.
    Canonical,
}

/// An element `Σ z_{ij} ξ^{[i]} ⊗ ξ^{[j]}` with all coefficients on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct DpTensor {
    ring: DpRing,
    action: TensorAction,
    trunc: (usize, usize),
    table: Vec<Vec<AElem>>,
}

impl DpTensor {
    pub fn zero(ring: &DpRing, action: TensorAction, trunc: (usize, usize)) -> Result<Self> {
        if action == TensorAction::Taylor && !ring.is_standard() {
            return precondition("the Taylor action needs the algebra's own parameters");
        }
        let z = AElem::zero(ring.ring());
        Ok(DpTensor { ring: ring.clone(), action, trunc, table: vec![vec![z; trunc.1 + 1]; trunc.0 + 1] })
    }

    pub fn basis(ring: &DpRing, action: TensorAction, trunc: (usize, usize), i: usize, j: usize) -> Result<Self> {
        let mut t = Self::zero(ring, action, trunc)?;
        if i <= trunc.0 && j <= trunc.1 {
            t.table[i][j] = AElem::one(ring.ring());
        }
        Ok(t)
    }

    pub fn ring(&self) -> &DpRing {
        &self.ring
    }

    pub fn action(&self) -> TensorAction {
        self.action
    }

    pub fn trunc(&self) -> (usize, usize) {
        self.trunc
    }

    pub fn coeff(&self, i: usize, j: usize) -> AElem {
        self.table.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(|| AElem::zero(self.ring.ring()))
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(AElem::is_zero)
    }

    /// Nonzero entries `((i, j), z_{ij})`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &AElem)> {
        self.table
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, c)| ((i, j), c)))
            .filter(|(_, c)| !c.is_zero())
    }

    fn check(&self, other: &DpTensor) -> Result<()> {
        if self.ring != other.ring || self.action != other.action {
            return precondition("tensors of different kinds");
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncMismatch(self.trunc.0, other.trunc.0));
        }
        Ok(())
    }

    pub fn add(&self, other: &DpTensor) -> Result<DpTensor> {
        self.check(other)?;
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.table[i][j] = &out.table[i][j] + c;
        }
        Ok(out)
    }

    /// Adds `u ⊗ (c ξ^{[m]})`, moving `c` to the left factor through the action.
    fn add_pushed(&mut self, u: &DpElem, c: &AElem, m: usize) -> Result<()> {
        if c.is_zero() || m > self.trunc.1 {
            return Ok(());
        }
        let left = match self.action {
            TensorAction::Canonical => u.scale(c),
            TensorAction::Taylor => dp_mul(u, &taylor0(self.ring.alg(), c, self.trunc.0)?)?,
        };
        for (i, z) in left.coeffs().iter().enumerate() {
            self.table[i][m] = &self.table[i][m] + z;
        }
        Ok(())
    }

    /// Adds the pure tensor `u ⊗ v`.
    pub fn add_pure(&mut self, u: &DpElem, v: &DpElem) -> Result<()> {
        if u.ring() != &self.ring || v.ring() != &self.ring {
            return precondition("factor from a different ring");
        }
        let u = u.truncate(self.trunc.0);
        for (m, c) in v.coeffs().iter().enumerate() {
            self.add_pushed(&u, c, m)?;
        }
        Ok(())
    }

    pub fn mul(&self, other: &DpTensor) -> Result<DpTensor> {
        self.check(other)?;
        let (n, m) = self.trunc;
        let mut out = Self::zero(&self.ring, self.action, self.trunc)?;
        for ((i, j), a) in self.terms() {
            for ((k, l), b) in other.terms() {
                let left = self.ring.elem(n, self.ring.basis_product(i, k, n)).scale(&(a * b));
                for (r, c) in self.ring.basis_product(j, l, m).iter().enumerate() {
                    out.add_pushed(&left, c, r)?;
                }
            }
        }
        Ok(out)
    }

    /// Applies `f ⊗ g` factorwise to basis tensors; coefficients stay on the left.
    pub fn map_basis(
        &self,
        ring: &DpRing,
        action: TensorAction,
        trunc: (usize, usize),
        f: impl Fn(usize) -> Option<usize>,
        g: impl Fn(usize) -> Option<usize>,
    ) -> Result<DpTensor> {
        let mut out = Self::zero(ring, action, trunc)?;
        for ((i, j), c) in self.terms() {
            if let (Some(a), Some(b)) = (f(i), g(j)) {
                if a <= trunc.0 && b <= trunc.1 {
                    out.table[a][b] = &out.table[a][b] + c;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for DpTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "ξ^[{i}]⊗ξ^[{j}]")?;
            } else {
                write!(f, "({c})*ξ^[{i}]⊗ξ^[{j}]")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `δ(ξ^{[k]}) = Σ ξ^{[k−i]} ⊗ ξ^{[i]}`, extended `A`-linearly from the left.
///
/// This is the partial comultiplication `P_{(n+m)} → P_{(n)} ⊗ P_{(m)}` for `trunc = (n, m)`,
/// so `a` must be known at least up to `n + m`.
pub fn dp_comul(a: &DpElem, action: TensorAction, trunc: (usize, usize)) -> Result<DpTensor> {
    if a.trunc() < trunc.0 + trunc.1 {
        return Err(Error::TruncOverflow(format!(
            "δ into precision {trunc:?} needs an element known modulo I^[{}]",
            trunc.0 + trunc.1 + 1
        )));
    }
    let mut out = DpTensor::zero(a.ring(), action, trunc)?;
    for (k, z) in a.coeffs().iter().enumerate() {
        if z.is_zero() {
            continue;
        }
        for i in k.saturating_sub(trunc.0)..=k.min(trunc.1) {
            out.table[k - i][i] = &out.table[k - i][i] + z;
        }
    }
    Ok(out)
}

/// `(δ⊗1)δ(a)` when `left_first`, else `(1⊗δ)δ(a)`, as a table over triples.
pub fn dp_comul_twice(a: &DpElem, left_first: bool) -> BTreeMap<(usize, usize, usize), AElem> {
    let mut out: BTreeMap<(usize, usize, usize), AElem> = BTreeMap::new();
    for (n, z) in a.coeffs().iter().enumerate() {
        if z.is_zero() {
            continue;
        }
        for i in 0..=n {
            // first split ξ^{[n]} into ξ^{[n−i]} ⊗ ξ^{[i]}, then split one side again
            let (split, kept) = if left_first { (n - i, i) } else { (i, n - i) };
            for j in 0..=split {
                let key = if left_first { (split - j, j, kept) } else { (kept, split - j, j) };
                let e = out.entry(key).or_insert_with(|| AElem::zero(z.ring()));
                *e = &*e + z;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;
    use crate::twisted::TwistedAlgebra;

    #[test]
    fn comultiplication_of_small_basis() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::GenericZt);
        let r = DpRing::standard(&alg);
        let d = dp_comul(&r.basis(2, 4), TensorAction::Taylor, (2, 2)).unwrap();
        let keys: Vec<(usize, usize)> = d.terms().map(|(k, _)| k).collect();
        assert_eq!(keys, vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(dp_comul_twice(&r.basis(3, 3), true), dp_comul_twice(&r.basis(3, 3), false));
    }

    #[test]
    fn comultiplication_is_multiplicative() {
        let alg = TwistedAlgebra::generic_with_s();
        let r = DpRing::standard(&alg);
        let (n, t) = (6, (3, 3));
        for (a, b) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
            let prod = dp_comul(&dp_mul(&r.basis(a, n), &r.basis(b, n)).unwrap(), TensorAction::Taylor, t).unwrap();
            let da = dp_comul(&r.basis(a, n), TensorAction::Taylor, t).unwrap();
            let db = dp_comul(&r.basis(b, n), TensorAction::Taylor, t).unwrap();
            assert_eq!(da.mul(&db).unwrap(), prod, "δ(ξ^[{a}] ξ^[{b}])");
        }
    }
}

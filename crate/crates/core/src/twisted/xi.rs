use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use super::aelem::AElem;
use super::algebra::TwistedAlgebra;
use crate::error::{precondition, Result};
use crate::qcomb::{binomial, QContext};
use crate::ring::{RingDescriptor, RingElem};

/// A polynomial in `ξ` with coefficients in `A`, in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XiPoly {
    ring: RingDescriptor,
    coeffs: Vec<AElem>,
}

impl XiPoly {
    pub fn new(ring: RingDescriptor, mut coeffs: Vec<AElem>) -> Self {
        assert!(coeffs.iter().all(|c| c.ring() == ring), "coefficient ring mismatch");
        while coeffs.last().is_some_and(AElem::is_zero) {
            coeffs.pop();
        }
        XiPoly { ring, coeffs }
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        XiPoly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::constant(AElem::one(ring))
    }

    pub fn constant(c: AElem) -> Self {
        Self::new(c.ring(), vec![c])
    }

    pub fn xi(ring: RingDescriptor) -> Self {
        Self::new(ring, vec![AElem::zero(ring), AElem::one(ring)])
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

    /// Substitutes `ξ ↦ image`.
    pub fn compose(&self, image: &XiPoly) -> XiPoly {
        let mut acc = XiPoly::zero(self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * image) + &XiPoly::constant(c.clone());
        }
        acc
    }

    /// `z(x + ξ)` for a polynomial `z`.
    pub fn substitute_x_plus_xi(z: &AElem) -> Result<XiPoly> {
        if !z.is_polynomial() {
            return precondition("x + ξ substitution needs a polynomial");
        }
        let ring = z.ring();
        let x_plus_xi = XiPoly::new(ring, vec![AElem::x(ring), AElem::one(ring)]);
        let mut acc = XiPoly::zero(ring);
        for e in (0..=z.degree().unwrap_or(0) as i64).rev() {
            acc = &(&acc * &x_plus_xi) + &XiPoly::constant(AElem::constant(z.coeff(e)));
        }
        Ok(acc)
    }
}

impl Add for &XiPoly {
    type Output = XiPoly;
    fn add(self, rhs: &XiPoly) -> XiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XiPoly::new(self.ring, (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &XiPoly {
    type Output = XiPoly;
    fn sub(self, rhs: &XiPoly) -> XiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XiPoly::new(self.ring, (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &XiPoly {
    type Output = XiPoly;
    fn mul(self, rhs: &XiPoly) -> XiPoly {
        if self.is_zero() || rhs.is_zero() {
            return XiPoly::zero(self.ring);
        }
        let mut v = vec![AElem::zero(self.ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        XiPoly::new(self.ring, v)
    }
}

impl Neg for &XiPoly {
    type Output = XiPoly;
    fn neg(self) -> XiPoly {
        XiPoly::new(self.ring, self.coeffs.iter().map(|c| -c).collect())
    }
}

crate::forward_binops!(XiPoly);

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, &self.coeffs, |k| format!("ξ^{k}"))
    }
}

pub(crate) fn write_series(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[AElem],
    basis: impl Fn(usize) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match (k, c.is_one()) {
            (0, _) => write!(f, "{c}")?,
            (_, true) => write!(f, "{}", basis(k))?,
            _ => write!(f, "({c})*{}", basis(k))?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// The pair `(q, y)` governing twisted powers `ξ^{(n)} = ∏_{i<n} (ξ + (i)_q y)`.
#[derive(Clone)]
pub struct Twist {
    inner: Arc<TwistInner>,
}

struct TwistInner {
    qc: QContext,
    y: AElem,
    ypows: RwLock<Vec<AElem>>,
}

impl std::fmt::Debug for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Twist(q = {}, y = {})", self.q(), self.y())
    }
}

impl Twist {
    pub fn new(q: RingElem, y: AElem) -> Result<Self> {
        if q.ring() != y.ring() {
            return precondition("q and y over different rings");
        }
        Ok(Self::from_parts(QContext::with_q(q), y))
    }

    fn from_parts(qc: QContext, y: AElem) -> Self {
        let one = AElem::one(y.ring());
        Twist { inner: Arc::new(TwistInner { qc, y, ypows: RwLock::new(vec![one]) }) }
    }

    /// The algebra's own pair `(q, x − σ(x))`.
    pub fn of(alg: &TwistedAlgebra) -> Self {
        Self::from_parts(alg.qc().clone(), alg.y())
    }

    pub fn ring(&self) -> RingDescriptor {
        self.inner.y.ring()
    }

    pub fn q(&self) -> &RingElem {
        self.inner.qc.q()
    }

    pub fn y(&self) -> &AElem {
        &self.inner.y
    }

    pub fn qc(&self) -> &QContext {
        &self.inner.qc
    }

    pub fn y_pow(&self, i: usize) -> AElem {
        if let Some(v) = self.inner.ypows.read().expect("poisoned").get(i) {
            return v.clone();
        }
        let mut pows = self.inner.ypows.write().expect("poisoned");
        while pows.len() <= i {
            let next = pows.last().expect("nonempty") * &self.inner.y;
            pows.push(next);
        }
        pows[i].clone()
    }

    pub fn same_params(&self, other: &Twist) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || (self.q() == other.q() && self.y() == other.y())
    }

    fn factor(&self, i: usize) -> XiPoly {
        let ring = self.ring();
        XiPoly::new(ring, vec![self.y().scale(&self.qc().int(i)), AElem::one(ring)])
    }

    /// `ξ^{(n)}` expanded in the monomial basis.
    pub fn power(&self, n: usize) -> XiPoly {
        (0..n).fold(XiPoly::one(self.ring()), |acc, i| &acc * &self.factor(i))
    }

    /// Coefficients of `f` in the basis `ξ^{(0)}, ξ^{(1)}, …`.
    pub fn to_twisted(&self, f: &XiPoly) -> Vec<AElem> {
        let ring = self.ring();
        let mut acc: Vec<AElem> = Vec::new();
        for c in f.coeffs().iter().rev() {
            // acc ← acc·ξ + c, using ξ·ξ^{(k)} = ξ^{(k+1)} − (k)_q y ξ^{(k)}
            let mut next = vec![AElem::zero(ring); acc.len() + 1];
            for (k, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                next[k + 1] = &next[k + 1] + a;
                let corr = &(a * self.y()).scale(&self.qc().int(k));
                next[k] = &next[k] - corr;
            }
            next[0] = &next[0] + c;
            acc = next;
        }
        strip(&mut acc);
        acc
    }

    /// Inverse of [`Twist::to_twisted`].
    pub fn from_twisted(&self, b: &[AElem]) -> XiPoly {
        let ring = self.ring();
        let mut out = XiPoly::zero(ring);
        let mut pw = XiPoly::one(ring);
        for (k, c) in b.iter().enumerate() {
            if k > 0 {
                pw = &pw * &self.factor(k - 1);
            }
            if !c.is_zero() {
                out = &out + &pw.scale(c);
            }
        }
        out
    }

    /// Coefficients of `ξ^{(m)} ξ^{(n)}` in the twisted basis:
    /// `Σ_i (−1)^i (i)_q! q^{i(i−1)/2} C(m,i)_q C(n,i)_q y^i ξ^{(m+n−i)}`.
    pub fn funmul(&self, m: usize, n: usize) -> Vec<AElem> {
        let ring = self.ring();
        let qc = self.qc();
        let mut out = vec![AElem::zero(ring); m + n + 1];
        for i in 0..=m.min(n) {
            let mut c = &(&qc.q_factorial(i) * &qc.q_pow(i * i.saturating_sub(1) / 2)) * &(&qc.binom(m, i) * &qc.binom(n, i));
            if i % 2 == 1 {
                c = -c;
            }
            out[m + n - i] = self.y_pow(i).scale(&c);
        }
        strip(&mut out);
        out
    }

    /// Product of two twisted-basis coefficient vectors.
    pub fn mul_twisted(&self, a: &[AElem], b: &[AElem]) -> Vec<AElem> {
        let ring = self.ring();
        let mut out = vec![AElem::zero(ring); (a.len() + b.len()).saturating_sub(1)];
        for (m, am) in a.iter().enumerate() {
            if am.is_zero() {
                continue;
            }
            for (n, bn) in b.iter().enumerate() {
                if bn.is_zero() {
                    continue;
                }
                let ab = am * bn;
                for (k, c) in self.funmul(m, n).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(c * &ab);
                    }
                }
            }
        }
        strip(&mut out);
        out
    }
}

pub(crate) fn strip(v: &mut Vec<AElem>) {
    while v.last().is_some_and(AElem::is_zero) {
        v.pop();
    }
}

/// `σⁿ` on `A[ξ]`: `σⁿ` on coefficients and `ξ ↦ ξ + (n)_q y`.
pub fn sigma_xi(alg: &TwistedAlgebra, f: &XiPoly, n: i64) -> Result<XiPoly> {
    let ring = alg.ring();
    let shift = alg.y().scale(&alg.qc().q_int(n)?);
    let image = XiPoly::new(ring, vec![shift, AElem::one(ring)]);
    let mut acc = XiPoly::zero(ring);
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * &image) + &XiPoly::constant(alg.sigma(c, n)?);
    }
    Ok(acc)
}

/// Arithmetic in `A[ξ]/ξ^{(n+1)}` with elements kept in the twisted basis.
#[derive(Clone)]
pub struct PInfQuotient {
    alg: TwistedAlgebra,
    twist: Twist,
    n: usize,
}

impl PInfQuotient {
    pub fn new(alg: &TwistedAlgebra, n: usize) -> Self {
        PInfQuotient { alg: alg.clone(), twist: Twist::of(alg), n }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn reduce(&self, mut v: Vec<AElem>) -> Vec<AElem> {
        v.truncate(self.n + 1);
        strip(&mut v);
        v
    }

    pub fn mul(&self, a: &[AElem], b: &[AElem]) -> Vec<AElem> {
        self.reduce(self.twist.mul_twisted(a, b))
    }

    /// The Taylor map `z ↦ z(x + ξ)` reduced modulo `ξ^{(n+1)}`.
    pub fn taylor(&self, z: &AElem) -> Result<Vec<AElem>> {
        if z.ring() != self.alg.ring() {
            return precondition("element over a different ring");
        }
        let f = XiPoly::substitute_x_plus_xi(z)?;
        Ok(self.reduce(self.twist.to_twisted(&f)))
    }
}

/// Checks `δ(ω^{(n)}) = Σ C(n,i) ω^{(n−i)} ⊗ ω^{(i)}` for `q = 1` and the given `y`,
/// expanding `δ(ω) = ω⊗1 + 1⊗ω` in `A[ω₁, ω₂]`.
pub fn q1_comul_check(n: usize, y: &AElem) -> Result<bool> {
    let ring = y.ring();
    let twist = Twist::new(RingElem::one(ring), y.clone())?;
    // bivariate polynomials as rows indexed by the power of ω₁
    type Bi = Vec<XiPoly>;
    let mul = |a: &Bi, b: &Bi| -> Bi {
        let mut out = vec![XiPoly::zero(ring); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(ai * bj);
            }
        }
        out
    };
    let mut acc: Bi = vec![XiPoly::one(ring)];
    for i in 0..n {
        let shift = XiPoly::constant(y.scale(&RingElem::from_i64(ring, i as i64)));
        let factor: Bi = vec![&XiPoly::xi(ring) + &shift, XiPoly::one(ring)];
        acc = mul(&acc, &factor);
    }
    // convert the ω₂ direction, then the ω₁ direction
    let inner: Vec<Vec<AElem>> = acc.iter().map(|row| twist.to_twisted(row)).collect();
    let width = inner.iter().map(Vec::len).max().unwrap_or(0);
    let mut table = vec![vec![AElem::zero(ring); width]; inner.len()];
    for j in 0..width {
        let col = XiPoly::new(ring, inner.iter().map(|r| r.get(j).cloned().unwrap_or_else(|| AElem::zero(ring))).collect());
        for (i, c) in twist.to_twisted(&col).into_iter().enumerate() {
            table[i][j] = c;
        }
    }
    for (i, row) in table.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let expected = if i + j == n {
                AElem::constant(RingElem::from_bigint(ring, &binomial(n as u64, j as u64)))
            } else {
                AElem::zero(ring)
            };
            if *c != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

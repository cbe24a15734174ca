//! q-integers, q-factorials, Gaussian binomials and the q-characteristic.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use crate::error::{precondition, Error, Result};
use crate::ring::{RingDescriptor, RingElem};

/// Scan bound for the q-characteristic of rings whose declared value is 0.
pub const Q_CHAR_SCAN_BOUND: u32 = 64;

/// q-analogs for a fixed element `q` of a coefficient ring.
///
/// Binomials follow the Pascal recurrence
/// `C(n,k) = C(n-1,k-1) + q^k C(n-1,k)` and are memoized, so they are
/// available in rings where `(n)_q!` is a zero divisor.
#[derive(Clone)]
pub struct QContext {
    inner: Arc<Inner>,
}

struct Inner {
    q: RingElem,
    pows: RwLock<Vec<RingElem>>,
    rows: RwLock<Vec<Vec<RingElem>>>,
}

impl QContext {
    /// Uses the descriptor's distinguished `q`.
    pub fn new(ring: RingDescriptor) -> Self {
        Self::with_q(RingElem::q(ring))
    }

    pub fn with_q(q: RingElem) -> Self {
        let one = RingElem::one(q.ring());
        QContext {
            inner: Arc::new(Inner { q, pows: RwLock::new(vec![one.clone()]), rows: RwLock::new(vec![vec![one]]) }),
        }
    }

    pub fn q(&self) -> &RingElem {
        &self.inner.q
    }

    pub fn ring(&self) -> RingDescriptor {
        self.inner.q.ring()
    }

    fn one(&self) -> RingElem {
        RingElem::one(self.ring())
    }

    pub fn q_pow(&self, n: usize) -> RingElem {
        if let Some(v) = self.inner.pows.read().expect("poisoned").get(n) {
            return v.clone();
        }
        let mut pows = self.inner.pows.write().expect("poisoned");
        while pows.len() <= n {
            let next = pows.last().expect("nonempty") * &self.inner.q;
            pows.push(next);
        }
        pows[n].clone()
    }

    /// `q^e` for any integer `e`; negative exponents need `q` invertible.
    pub fn q_pow_i64(&self, e: i64) -> Result<RingElem> {
        if e >= 0 {
            Ok(self.q_pow(e as usize))
        } else {
            self.inner.q.pow_i64(e)
        }
    }

    /// `(m)_q`; for `m < 0` this is `-q^{-1} - … - q^{m}`.
    pub fn q_int(&self, m: i64) -> Result<RingElem> {
        if m >= 0 {
            Ok(self.q_binomial(m as usize, 1))
        } else {
            let inv = match self.inner.q.try_invert() {
                Some(v) => v,
                None => return precondition(format!("(−{})_q needs q invertible in {}", -m, self.ring())),
            };
            let mut acc = RingElem::zero(self.ring());
            let mut p = self.one();
            for _ in 0..(-m) {
                p = &p * &inv;
                acc = &acc - &p;
            }
            Ok(acc)
        }
    }

    /// `(m)_q` for `m ≥ 0`.
    pub fn int(&self, m: usize) -> RingElem {
        self.q_int(m as i64).expect("nonnegative q-integer")
    }

    pub fn q_factorial(&self, m: usize) -> RingElem {
        (1..=m).fold(self.one(), |acc, i| &acc * &self.int(i))
    }

    /// Gaussian binomial; zero outside `0 ≤ k ≤ n`.
    pub fn q_binomial(&self, n: usize, k: i64) -> RingElem {
        if k < 0 || k as usize > n {
            return RingElem::zero(self.ring());
        }
        let k = k as usize;
        if let Some(row) = self.inner.rows.read().expect("poisoned").get(n) {
            return row[k].clone();
        }
        let mut rows = self.inner.rows.write().expect("poisoned");
        while rows.len() <= n {
            let prev = rows.last().expect("nonempty");
            let m = prev.len();
            let mut row = Vec::with_capacity(m + 1);
            row.push(self.one());
            for j in 1..m {
                row.push(&prev[j - 1] + &(&self.q_pow(j) * &prev[j]));
            }
            row.push(self.one());
            rows.push(row);
        }
        rows[n][k].clone()
    }

    pub fn binom(&self, n: usize, k: usize) -> RingElem {
        self.q_binomial(n, k as i64)
    }

    /// Smallest `m ≤ bound` with `(m)_q = 0`, or 0 if none.
    pub fn scan_char(&self, bound: u32) -> u32 {
        let mut acc = RingElem::zero(self.ring());
        for m in 1..=bound {
            acc = &acc + &self.q_pow(m as usize - 1);
            if acc.is_zero() {
                return m;
            }
        }
        0
    }

    /// The q-characteristic of this `q`, scanning up to a bound adapted to the ring.
    pub fn characteristic(&self) -> u32 {
        let declared = self.ring().q_characteristic();
        let bound = if declared > 0 { declared.max(Q_CHAR_SCAN_BOUND) } else { Q_CHAR_SCAN_BOUND };
        self.scan_char(bound)
    }

    /// Twisted Lucas value `C(n1,k1)·C(n0,k0)_q` for `n = n1 p + n0`, `k = k1 p + k0`.
    pub fn q_lucas(&self, n: usize, k: usize) -> Result<RingElem> {
        let p = self.characteristic() as usize;
        if p == 0 {
            return precondition("q-Lucas needs positive q-characteristic");
        }
        let (n1, n0) = (n / p, n % p);
        let (k1, k0) = (k / p, k % p);
        let ordinary = RingElem::from_bigint(self.ring(), &binomial(n1 as u64, k1 as u64));
        Ok(&ordinary * &self.binom(n0, k0))
    }
}

/// Ordinary binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(m)_q` for the descriptor's `q`.
pub fn q_int(ring: RingDescriptor, m: i64) -> Result<RingElem> {
    QContext::new(ring).q_int(m)
}

pub fn q_factorial(ring: RingDescriptor, m: usize) -> RingElem {
    QContext::new(ring).q_factorial(m)
}

pub fn q_binomial(ring: RingDescriptor, n: usize, k: i64) -> RingElem {
    QContext::new(ring).q_binomial(n, k)
}

/// The q-characteristic, cross-checked against the descriptor.
pub fn q_char(ring: RingDescriptor) -> Result<u32> {
    let found = QContext::new(ring).characteristic();
    let declared = ring.q_characteristic();
    if found != declared {
        return Err(Error::Internal(format!("{ring}: scanned q-characteristic {found}, declared {declared}")));
    }
    Ok(found)
}

pub fn q_lucas(ring: RingDescriptor, n: usize, k: usize) -> Result<RingElem> {
    QContext::new(ring).q_lucas(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ZPoly;

    const ZT: RingDescriptor = RingDescriptor::GenericZt;

    fn zt(cs: &[i64]) -> RingElem {
        RingElem::from_zpoly(ZT, &ZPoly::from_i64s(cs))
    }

    #[test]
    fn small_values() {
        assert!(q_int(ZT, 0).unwrap().is_zero());
        assert_eq!(q_int(ZT, 3).unwrap(), zt(&[1, 1, 1]));
        assert!(q_int(RingDescriptor::CyclotomicField(3), 3).unwrap().is_zero());
        assert!(q_factorial(ZT, 0).is_one());
        assert!(q_factorial(RingDescriptor::CyclotomicField(2), 2).is_zero());
        assert_eq!(q_binomial(ZT, 2, 1), zt(&[1, 1]));
        assert!(q_binomial(ZT, 3, 4).is_zero());
        assert!(q_binomial(ZT, 3, -1).is_zero());
    }

    #[test]
    fn negative_q_integer() {
        assert!(q_int(ZT, -1).is_err());
        let r = RingDescriptor::CyclotomicField(5);
        let q = RingElem::q(r);
        let v = q_int(r, -2).unwrap();
        // (−2)_q · q² = −(q + 1)
        assert_eq!(&v * &q.pow(2), -(&q + &RingElem::one(r)));
    }

    #[test]
    fn characteristics() {
        assert_eq!(q_char(ZT).unwrap(), 0);
        assert_eq!(q_char(RingDescriptor::CyclotomicField(6)).unwrap(), 6);
        assert_eq!(q_char(RingDescriptor::PrimeField(7)).unwrap(), 7);
        assert_eq!(q_char(RingDescriptor::CyclotomicRing(5)).unwrap(), 5);
        let minus_one = QContext::with_q(RingElem::from_i64(ZT, -1));
        assert_eq!(minus_one.characteristic(), 2);
    }

    #[test]
    fn lucas_examples() {
        assert!(q_lucas(RingDescriptor::CyclotomicField(2), 2, 1).unwrap().is_zero());
        let r3 = RingDescriptor::CyclotomicField(3);
        assert!(q_lucas(r3, 4, 2).unwrap().is_zero());
        assert!(q_binomial(r3, 4, 2).is_zero());
        assert!(q_lucas(RingDescriptor::PrimeField(5), 7, 3).unwrap().is_zero());
        assert!(q_lucas(ZT, 3, 1).is_err());
    }

    #[test]
    fn ordinary_binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}

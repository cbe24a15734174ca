//! The p-Frobenius coefficients `A_{n,i}`, `B_{n,i}` and `C_{n,i}` in `ℤ[t]`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::qcomb::QContext;
use crate::ring::{QFraction, QPoly, RingDescriptor, RingElem, ZPoly};

type Table = RwLock<HashMap<(usize, usize, usize), ZPoly>>;

fn contexts(p: usize) -> (QContext, QContext) {
    static CACHE: OnceLock<RwLock<HashMap<usize, (QContext, QContext)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().expect("poisoned").get(&p) {
        return c.clone();
    }
    let t = RingElem::q(RingDescriptor::GenericZt);
    let c = (QContext::with_q(t.clone()), QContext::with_q(t.pow(p as u64)));
    cache.write().expect("poisoned").entry(p).or_insert(c).clone()
}

fn poly(e: &RingElem) -> ZPoly {
    e.as_zpoly().expect("element of ℤ[t]").clone()
}

fn cached(table: &'static OnceLock<Table>, key: (usize, usize, usize), f: impl FnOnce() -> Result<ZPoly>) -> Result<ZPoly> {
    let table = table.get_or_init(Default::default);
    if let Some(v) = table.read().expect("poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    table.write().expect("poisoned").insert(key, v.clone());
    Ok(v)
}

/// `(m)_t` as a polynomial.
pub fn t_int(m: usize) -> ZPoly {
    poly(&contexts(1).0.int(m))
}

/// `(m)_t!` as a polynomial.
pub fn t_factorial(m: usize) -> ZPoly {
    poly(&contexts(1).0.q_factorial(m))
}

/// `A_{n,i} = Σ_j (−1)^{n−j} t^{p(n−j)(n−j−1)/2} C(n,j)_{t^p} C(pj,i)_t`.
pub fn coeff_a(n: usize, i: usize, p: usize) -> ZPoly {
    static TABLE: OnceLock<Table> = OnceLock::new();
    assert!(p > 0, "p must be positive");
    cached(&TABLE, (p, n, i), || {
        let (qt, qtp) = contexts(p);
        let mut acc = ZPoly::zero();
        for j in 0..=n {
            let m = n - j;
            let b = poly(&qt.binom(p * j, i));
            if b.is_zero() {
                continue;
            }
            let term = &(&poly(&qt.q_pow(p * m * m.saturating_sub(1) / 2)) * &poly(&qtp.binom(n, j))) * &b;
            acc = if m % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        Ok(acc)
    })
    .expect("infallible")
}

/// `B_{n,i}` computed from a given value of `A_{n,i}` by the exact division
/// `(i)_t! A_{n,i} / ((n)_{t^p}! (p)_t^n)`.
pub fn coeff_b_from(a: &ZPoly, n: usize, i: usize, p: usize) -> Result<ZPoly> {
    let (qt, qtp) = contexts(p);
    let num = &poly(&qt.q_factorial(i)) * a;
    let den = &poly(&qtp.q_factorial(n)) * &poly(&qt.int(p).pow(n as u64));
    num.exact_divide(&den).map_err(|_| {
        Error::Falsified(format!("(n)_{{t^p}}!(p)_t^n does not divide (i)_t! A_{{n,i}} for p={p}, n={n}, i={i}"))
    })
}

/// The divided p-Frobenius coefficient `B_{n,i}`.
pub fn coeff_b(n: usize, i: usize, p: usize) -> Result<ZPoly> {
    static TABLE: OnceLock<Table> = OnceLock::new();
    cached(&TABLE, (p, n, i), || coeff_b_from(&coeff_a(n, i, p), n, i, p))
}

/// `C_{n,i} = B_{n,i} / B_{n,pn}` in `ℚ(t)`, checked against `(i)_t! A_{n,i} = (pn)_t! C_{n,i}`.
pub fn coeff_c(n: usize, i: usize, p: usize) -> Result<QFraction> {
    let b = coeff_b(n, i, p)?;
    let top = coeff_b(n, p * n, p)?;
    let c = QFraction::new(QPoly::from(&b), QPoly::from(&top));
    let lhs = &t_factorial(i) * &coeff_a(n, i, p);
    let lhs = &QPoly::from(&lhs) * &c.den;
    let rhs = &QPoly::from(&t_factorial(p * n)) * &c.num;
    if lhs != rhs {
        return Err(Error::Falsified(format!("(i)!A_{{n,i}} ≠ (pn)!C_{{n,i}} for p={p}, n={n}, i={i}")));
    }
    Ok(c)
}

/// `∏_{k=1}^n ∏_{i=1}^{p−1} (kp−i)_t`.
pub fn b_top_closed_form(n: usize, p: usize) -> ZPoly {
    let mut acc = ZPoly::one();
    for k in 1..=n {
        for i in 1..p {
            acc = &acc * &t_int(k * p - i);
        }
    }
    acc
}

/// Checks `t^{n(n−1)/2}(1−t)^n (n)_t! C(m,n)_t = Σ_k (−1)^{n−k} t^{k(k−1)/2} C(n,k)_t t^{m(n−k)}`.
pub fn techf_holds(m: usize, n: usize) -> bool {
    let qt = contexts(1).0;
    let one_minus_t = ZPoly::from_i64s(&[1, -1]);
    let lhs = &(&poly(&qt.q_pow(n * n.saturating_sub(1) / 2)) * &one_minus_t.pow(n as u64))
        * &(&t_factorial(n) * &poly(&qt.binom(m, n)));
    let mut rhs = ZPoly::zero();
    for k in 0..=n {
        let term = &(&poly(&qt.q_pow(k * k.saturating_sub(1) / 2)) * &poly(&qt.binom(n, k)))
            * &poly(&qt.q_pow(m * (n - k)));
        rhs = if (n - k) % 2 == 0 { &rhs + &term } else { &rhs - &term };
    }
    lhs == rhs
}

/// Checks the closed form of `A_{n,i}` for `n ≤ i`:
///
/// `t^{i(i−1)/2}(1−t)^{i−n} (i)_t! A_{n,i}
///   = (p)_t^n (n)_{t^p}! t^{pn(n−1)/2} Σ_{l=0}^{i−n} (−1)^{i−n+l} t^{l(l−1)/2} C(i,l)_t C(i−l,n)_{t^p}`.
pub fn techf2_holds(n: usize, i: usize, p: usize) -> bool {
    if i < n {
        return coeff_a(n, i, p).is_zero();
    }
    let (qt, qtp) = contexts(p);
    let one_minus_t = ZPoly::from_i64s(&[1, -1]);
    let lhs = &(&poly(&qt.q_pow(i * i.saturating_sub(1) / 2)) * &one_minus_t.pow((i - n) as u64))
        * &(&t_factorial(i) * &coeff_a(n, i, p));
    let mut sum = ZPoly::zero();
    for l in 0..=i - n {
        let term = &(&poly(&qt.q_pow(l * l.saturating_sub(1) / 2)) * &poly(&qt.binom(i, l)))
            * &poly(&qtp.binom(i - l, n));
        sum = if (i - n + l) % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    let pre = &(&poly(&qt.int(p).pow(n as u64)) * &poly(&qtp.q_factorial(n)))
        * &poly(&qt.q_pow(p * n * n.saturating_sub(1) / 2));
    lhs == &pre * &sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_b_values() {
        for p in 2..=5 {
            assert!(coeff_b(1, 1, p).unwrap().is_one());
            assert_eq!(coeff_b(1, 2, p).unwrap(), t_int(p - 1));
            assert_eq!(coeff_b(2, 2, p).unwrap(), ZPoly::monomial(1.into(), p - 1));
            assert_eq!(coeff_b(3, 3, p).unwrap(), ZPoly::monomial(1.into(), 3 * (p - 1)));
        }
    }

    #[test]
    fn a_support() {
        for p in 2..=4 {
            for n in 0..=3 {
                assert!(coeff_a(n, p * n, p).is_one());
                assert!(coeff_a(n, p * n + 1, p).is_zero());
                for i in 0..n {
                    assert!(coeff_a(n, i, p).is_zero());
                }
            }
        }
    }

    #[test]
    fn corrupted_a_is_caught() {
        let bad = &coeff_a(2, 3, 2) + &ZPoly::one();
        assert!(matches!(coeff_b_from(&bad, 2, 3, 2), Err(Error::Falsified(_))));
    }

    #[test]
    fn c_values() {
        assert!(coeff_c(1, 2, 2).unwrap().as_polynomial().unwrap() == QPoly::one());
        assert!(coeff_c(1, 1, 2).unwrap().as_polynomial().unwrap() == QPoly::one());
        assert!(coeff_c(1, 1, 3).unwrap().as_polynomial().is_none());
    }

    #[test]
    fn exchange_lemmas() {
        for m in 0..=4 {
            for n in 0..=4 {
                assert!(techf_holds(m, n), "techf m={m} n={n}");
            }
        }
        for p in 2..=3 {
            for n in 0..=3 {
                for i in 0..=p * n {
                    assert!(techf2_holds(n, i, p), "techf2 p={p} n={n} i={i}");
                }
            }
        }
    }
}

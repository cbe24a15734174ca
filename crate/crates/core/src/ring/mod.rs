//! Exact coefficient rings with a distinguished element `q`.
//!
//! Five families are supported, each named by a short descriptor string:
//!
//! | descriptor | ring            | `q`         |
//! |------------|-----------------|-------------|
//! | `Zt`       | `ℤ[t]`          | `t`         |
//! | `Zts`      | `ℤ[t,s]`        | `t`         |
//! | `CycF:n`   | `ℚ[t]/Φ_n(t)`   | class of `t`|
//! | `CycR:n`   | `ℤ[t]/Φ_n(t)`   | class of `t`, `n` prime |
//! | `Fp:p`     | `𝔽_p`           | `1`         |
//!
//! Elements are kept in a canonical reduced form so that equality is
//! structural.

mod bipoly;
mod qpoly;
mod zpoly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use bipoly::BiPoly;
pub use qpoly::{QFraction, QPoly};
pub use zpoly::ZPoly;

use crate::error::{precondition, Error, Result};

/// Largest cyclotomic order accepted by the descriptor parser.
pub const MAX_CYCLOTOMIC_ORDER: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    GenericZt,
    GenericZts,
    CyclotomicField(u32),
    CyclotomicRing(u32),
    PrimeField(u32),
}

impl RingDescriptor {
    /// The declared q-characteristic.
    pub fn q_characteristic(self) -> u32 {
        match self {
            Self::GenericZt | Self::GenericZts => 0,
            Self::CyclotomicField(p) | Self::CyclotomicRing(p) | Self::PrimeField(p) => p,
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Self::CyclotomicField(_) | Self::PrimeField(_))
    }

    /// Every nonzero q-integer is invertible.
    ///
    /// `ℤ[t]/Φ_p` with `p` prime qualifies: `(m)_q` is a cyclotomic unit for `p ∤ m`.
    pub fn is_q_divisible(self) -> bool {
        !matches!(self, Self::GenericZt | Self::GenericZts)
    }

    /// Every nonzero q-integer is a non-zero-divisor. All supported rings are domains.
    pub fn is_q_flat(self) -> bool {
        true
    }

    pub fn is_integral_domain(self) -> bool {
        true
    }

    pub fn has_s(self) -> bool {
        self == Self::GenericZts
    }

    pub fn validate(self) -> Result<Self> {
        let bad = |why: &str| Err(Error::BadDescriptor(self.to_string(), why.to_string()));
        match self {
            Self::GenericZt | Self::GenericZts => Ok(self),
            Self::CyclotomicField(n) => {
                if n < 2 {
                    bad("order must be at least 2")
                } else if n > MAX_CYCLOTOMIC_ORDER {
                    bad("order too large")
                } else {
                    Ok(self)
                }
            }
            Self::CyclotomicRing(n) => {
                if n > MAX_CYCLOTOMIC_ORDER {
                    bad("order too large")
                } else if !is_prime(n as u64) {
                    bad("order must be prime")
                } else {
                    Ok(self)
                }
            }
            Self::PrimeField(p) => {
                if is_prime(p as u64) {
                    Ok(self)
                } else {
                    bad("characteristic must be prime")
                }
            }
        }
    }

    fn cyclotomic(self) -> Option<(u32, Arc<Cyclo>)> {
        match self {
            Self::CyclotomicField(n) | Self::CyclotomicRing(n) => Some((n, cyclo(n))),
            _ => None,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GenericZt => write!(f, "Zt"),
            Self::GenericZts => write!(f, "Zts"),
            Self::CyclotomicField(n) => write!(f, "CycF:{n}"),
            Self::CyclotomicRing(n) => write!(f, "CycR:{n}"),
            Self::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::BadDescriptor(s.to_string(), why.to_string());
        let d = match s.split_once(':') {
            None => match s {
                "Zt" => Self::GenericZt,
                "Zts" => Self::GenericZts,
                _ => return Err(bad("unknown ring family")),
            },
            Some((family, n)) => {
                if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("expected a decimal order after ':'"));
                }
                let n: u32 = n.parse().map_err(|_| bad("order out of range"))?;
                match family {
                    "CycF" => Self::CyclotomicField(n),
                    "CycR" => Self::CyclotomicRing(n),
                    "Fp" => Self::PrimeField(n),
                    _ => return Err(bad("unknown ring family")),
                }
            }
        };
        d.validate()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

struct Cyclo {
    order: usize,
    int: ZPoly,
    rat: QPoly,
}

fn cyclo(n: u32) -> Arc<Cyclo> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Cyclo>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return c.clone();
    }
    let int = cyclotomic_poly(n);
    let c = Arc::new(Cyclo { order: n as usize, rat: QPoly::from(&int), int });
    cache.write().expect("cyclotomic cache poisoned").entry(n).or_insert(c).clone()
}

/// The `n`-th cyclotomic polynomial `Φ_n(t)`.
pub fn cyclotomic_poly(n: u32) -> ZPoly {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut p = ZPoly::new(num);
    for d in 1..n {
        if n % d == 0 {
            p = p.exact_divide(&cyclo(d).int).expect("Φ_d divides t^n - 1");
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Int(ZPoly),
    Bi(BiPoly),
    Rat(QPoly),
    Mod(u64),
}

/// An element of one of the supported coefficient rings, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: RingDescriptor,
    repr: Repr,
}

impl RingElem {
    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        Self::from_bigint(ring, &BigInt::zero())
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::from_bigint(ring, &BigInt::one())
    }

    pub fn from_i64(ring: RingDescriptor, n: i64) -> Self {
        Self::from_bigint(ring, &BigInt::from(n))
    }

    /// Image of an integer under the canonical map `ℤ → R`.
    pub fn from_bigint(ring: RingDescriptor, n: &BigInt) -> Self {
        let repr = match ring {
            RingDescriptor::GenericZt | RingDescriptor::CyclotomicRing(_) => Repr::Int(ZPoly::constant(n.clone())),
            RingDescriptor::GenericZts => Repr::Bi(BiPoly::from_t(ZPoly::constant(n.clone()))),
            RingDescriptor::CyclotomicField(_) => Repr::Rat(QPoly::constant(BigRational::from_integer(n.clone()))),
            RingDescriptor::PrimeField(p) => Repr::Mod(mod_big(n, p)),
        };
        RingElem { ring, repr }
    }

    /// The distinguished element `q`.
    pub fn q(ring: RingDescriptor) -> Self {
        match ring {
            RingDescriptor::PrimeField(_) => Self::one(ring),
            _ => Self::from_zpoly(ring, &ZPoly::t()),
        }
    }

    /// The second generator `s` of `ℤ[t,s]`.
    pub fn s(ring: RingDescriptor) -> Result<Self> {
        match ring {
            RingDescriptor::GenericZts => Ok(RingElem { ring, repr: Repr::Bi(BiPoly::s()) }),
            _ => precondition(format!("{ring} has no generator s")),
        }
    }

    /// Specializes `f ∈ ℤ[t]` at `t = q`.
    pub fn from_zpoly(ring: RingDescriptor, f: &ZPoly) -> Self {
        let repr = match ring {
            RingDescriptor::GenericZt => Repr::Int(f.clone()),
            RingDescriptor::GenericZts => Repr::Bi(BiPoly::from_t(f.clone())),
            RingDescriptor::CyclotomicRing(_) => {
                let (n, c) = ring.cyclotomic().expect("cyclotomic");
                Repr::Int(f.fold(n as usize).rem_monic(&c.int))
            }
            RingDescriptor::CyclotomicField(_) => {
                let (n, c) = ring.cyclotomic().expect("cyclotomic");
                Repr::Rat(QPoly::from(&f.fold(n as usize).rem_monic(&c.int)))
            }
            RingDescriptor::PrimeField(p) => {
                let s = f.coeffs().iter().fold(BigInt::zero(), |a, c| a + c);
                Repr::Mod(mod_big(&s, p))
            }
        };
        RingElem { ring, repr }
    }

    /// Builds an element of `ℚ[t]/Φ_n` from a rational polynomial.
    pub fn from_qpoly(ring: RingDescriptor, f: &QPoly) -> Result<Self> {
        match ring {
            RingDescriptor::CyclotomicField(_) => {
                let (_, c) = ring.cyclotomic().expect("cyclotomic");
                Ok(RingElem { ring, repr: Repr::Rat(fold_q(f, c.order).rem(&c.rat)) })
            }
            _ => match f.to_zpoly() {
                Some(z) => Ok(Self::from_zpoly(ring, &z)),
                None => precondition(format!("{ring} has no rational elements")),
            },
        }
    }

    pub fn from_bipoly(ring: RingDescriptor, f: &BiPoly) -> Result<Self> {
        match ring {
            RingDescriptor::GenericZts => Ok(RingElem { ring, repr: Repr::Bi(f.clone()) }),
            _ => precondition(format!("{ring} is not ℤ[t,s]")),
        }
    }

    pub fn as_zpoly(&self) -> Option<&ZPoly> {
        match &self.repr {
            Repr::Int(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_qpoly(&self) -> Option<&QPoly> {
        match &self.repr {
            Repr::Rat(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_bipoly(&self) -> Option<&BiPoly> {
        match &self.repr {
            Repr::Bi(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(m) => Some(*m),
            _ => None,
        }
    }

    /// The representative as a rational polynomial in `t` (not available for `ℤ[t,s]`).
    pub fn to_qpoly(&self) -> Option<QPoly> {
        match &self.repr {
            Repr::Int(p) => Some(QPoly::from(p)),
            Repr::Rat(p) => Some(p.clone()),
            Repr::Mod(m) => Some(QPoly::constant(BigRational::from_integer(BigInt::from(*m)))),
            Repr::Bi(b) => match b.by_s() {
                [] => Some(QPoly::zero()),
                [p] => Some(QPoly::from(p)),
                _ => None,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(p) => p.is_zero(),
            Repr::Bi(p) => p.is_zero(),
            Repr::Rat(p) => p.is_zero(),
            Repr::Mod(m) => *m == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.ring)
    }

    fn check(&self, rhs: &RingElem) -> Result<()> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(self.ring.to_string(), rhs.ring.to_string()))
        }
    }

    fn reduce(ring: RingDescriptor, repr: Repr) -> Self {
        let repr = match (ring, repr) {
            (RingDescriptor::CyclotomicRing(_), Repr::Int(p)) => {
                let (n, c) = ring.cyclotomic().expect("cyclotomic");
                Repr::Int(p.fold(n as usize).rem_monic(&c.int))
            }
            (RingDescriptor::CyclotomicField(_), Repr::Rat(p)) => {
                let (n, c) = ring.cyclotomic().expect("cyclotomic");
                Repr::Rat(fold_q(&p, n as usize).rem(&c.rat))
            }
            (_, r) => r,
        };
        RingElem { ring, repr }
    }

    pub fn checked_add(&self, rhs: &RingElem) -> Result<RingElem> {
        self.check(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (Repr::Bi(a), Repr::Bi(b)) => Repr::Bi(a + b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod(add_mod(*a, *b, self.modulus())),
            _ => unreachable!("same descriptor implies same representation"),
        };
        Ok(RingElem { ring: self.ring, repr })
    }

    pub fn checked_sub(&self, rhs: &RingElem) -> Result<RingElem> {
        self.check(rhs)?;
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &RingElem) -> Result<RingElem> {
        self.check(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (Repr::Bi(a), Repr::Bi(b)) => Repr::Bi(a * b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let m = self.modulus();
                Repr::Mod(((*a as u128 * *b as u128) % m as u128) as u64)
            }
            _ => unreachable!("same descriptor implies same representation"),
        };
        Ok(Self::reduce(self.ring, repr))
    }

    fn modulus(&self) -> u64 {
        match self.ring {
            RingDescriptor::PrimeField(p) => p as u64,
            _ => unreachable!("only prime fields carry a modulus"),
        }
    }

    pub fn pow(&self, mut e: u64) -> RingElem {
        let mut base = self.clone();
        let mut acc = RingElem::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow_i64(&self, e: i64) -> Result<RingElem> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            match self.try_invert() {
                Some(inv) => Ok(inv.pow(e.unsigned_abs())),
                None => precondition(format!("{self} is not a unit in {}", self.ring)),
            }
        }
    }

    /// Returns the inverse, or `None` when the element is not a unit.
    pub fn try_invert(&self) -> Option<RingElem> {
        let ring = self.ring;
        match &self.repr {
            Repr::Int(p) if ring == RingDescriptor::GenericZt => {
                (p.degree() == Some(0) && p.coeff(0).abs().is_one()).then(|| self.clone())
            }
            Repr::Bi(b) => match b.as_integer() {
                Some(c) if c.abs().is_one() => Some(self.clone()),
                _ => None,
            },
            Repr::Int(p) => {
                let (_, c) = ring.cyclotomic().expect("cyclotomic ring");
                let inv = invert_mod(&QPoly::from(p), &c.rat)?;
                inv.to_zpoly().map(|z| RingElem { ring, repr: Repr::Int(z) })
            }
            Repr::Rat(p) => {
                let (_, c) = ring.cyclotomic().expect("cyclotomic field");
                invert_mod(p, &c.rat).map(|inv| RingElem { ring, repr: Repr::Rat(inv) })
            }
            Repr::Mod(a) => {
                if *a == 0 {
                    return None;
                }
                let m = self.modulus();
                Some(RingElem { ring, repr: Repr::Mod(pow_mod(*a, m - 2, m)) })
            }
        }
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &RingElem) -> Result<RingElem> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ring = self.ring;
        match (&self.repr, &d.repr) {
            (Repr::Int(a), Repr::Int(b)) if ring == RingDescriptor::GenericZt => {
                Ok(RingElem { ring, repr: Repr::Int(a.exact_divide(b)?) })
            }
            (Repr::Bi(a), Repr::Bi(b)) => match b.by_s() {
                [only] => {
                    let v = a.by_s().iter().map(|c| c.exact_divide(only)).collect::<Result<Vec<_>>>()?;
                    Ok(RingElem { ring, repr: Repr::Bi(BiPoly::new(v)) })
                }
                _ => precondition("division in Z[t,s] only by elements of Z[t]"),
            },
            (Repr::Int(a), Repr::Int(b)) => {
                let (_, c) = ring.cyclotomic().expect("cyclotomic ring");
                let inv = invert_mod(&QPoly::from(b), &c.rat).ok_or(Error::NotDivisible)?;
                let quo = (&QPoly::from(a) * &inv).rem(&c.rat);
                quo.to_zpoly().map(|z| RingElem { ring, repr: Repr::Int(z) }).ok_or(Error::NotDivisible)
            }
            _ => match d.try_invert() {
                Some(inv) => Ok(self * &inv),
                None => Err(Error::NotDivisible),
            },
        }
    }

    /// The fixed endomorphism `F*_R`: `t ↦ t^p` (and `s ↦ s^p`) on the generic
    /// rings, the identity on cyclotomic rings and prime fields.
    pub fn frobenius_endo(&self, p: usize) -> RingElem {
        match &self.repr {
            Repr::Int(z) if self.ring == RingDescriptor::GenericZt => {
                RingElem { ring: self.ring, repr: Repr::Int(z.inflate(p)) }
            }
            Repr::Bi(b) => RingElem { ring: self.ring, repr: Repr::Bi(b.inflate(p)) },
            _ => self.clone(),
        }
    }

    /// A sample element derived from a small integer seed, used by randomized tests.
    pub fn sample(ring: RingDescriptor, coeffs: &[i64]) -> RingElem {
        match ring {
            RingDescriptor::GenericZts => {
                let half = coeffs.len().div_ceil(2);
                let (a, b) = coeffs.split_at(half);
                let p = BiPoly::new(vec![ZPoly::from_i64s(a), ZPoly::from_i64s(b)]);
                RingElem { ring, repr: Repr::Bi(p) }
            }
            RingDescriptor::CyclotomicField(_) => {
                let v: Vec<BigRational> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| BigRational::new(c.into(), BigInt::from(1 + (i as i64 % 2))))
                    .collect();
                RingElem::from_qpoly(ring, &QPoly::new(v)).expect("field accepts rationals")
            }
            RingDescriptor::PrimeField(_) => {
                let s: i64 = coeffs.iter().enumerate().map(|(i, c)| c * (i as i64 + 1)).sum();
                RingElem::from_i64(ring, s)
            }
            _ => RingElem::from_zpoly(ring, &ZPoly::from_i64s(coeffs)),
        }
    }

    /// Maps an element of `ℤ[t]`-with-`ℚ`-coefficients at `t = q`.
    pub fn from_rational(ring: RingDescriptor, r: &BigRational) -> Result<RingElem> {
        let num = Self::from_bigint(ring, r.numer());
        let den = Self::from_bigint(ring, r.denom());
        match den.try_invert() {
            Some(inv) => Ok(&num * &inv),
            None => precondition(format!("{} is not invertible in {ring}", r.denom())),
        }
    }

    /// Small integer value, if the element is the image of one.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.repr {
            Repr::Int(p) if p.degree().unwrap_or(0) == 0 => p.coeff(0).to_i64(),
            Repr::Bi(b) => b.as_integer().and_then(|c| c.to_i64()),
            Repr::Rat(p) if p.degree().unwrap_or(0) == 0 => {
                let c = p.coeff(0);
                c.is_integer().then(|| c.to_integer().to_i64()).flatten()
            }
            Repr::Mod(m) => i64::try_from(*m).ok(),
            _ => None,
        }
    }
}

fn fold_q(p: &QPoly, n: usize) -> QPoly {
    if p.coeffs().len() <= n {
        return p.clone();
    }
    let mut v = vec![BigRational::zero(); n];
    for (i, c) in p.coeffs().iter().enumerate() {
        v[i % n] += c;
    }
    QPoly::new(v)
}

fn invert_mod(a: &QPoly, m: &QPoly) -> Option<QPoly> {
    if a.is_zero() {
        return None;
    }
    let (g, u, _) = a.ext_gcd(m);
    (g.degree() == Some(0)).then(|| u.rem(m))
}

fn mod_big(n: &BigInt, p: u32) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % m as u128) as u64;
        }
        a = ((a as u128 * a as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn expect_ok(r: Result<RingElem>) -> RingElem {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        expect_ok(self.checked_add(rhs))
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        expect_ok(self.checked_sub(rhs))
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        expect_ok(self.checked_mul(rhs))
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        let repr = match &self.repr {
            Repr::Int(a) => Repr::Int(-a),
            Repr::Bi(a) => Repr::Bi(-a),
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => {
                let m = self.modulus();
                Repr::Mod((m - a) % m)
            }
        };
        RingElem { ring: self.ring, repr }
    }
}

crate::forward_binops!(RingElem);

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Int(p) => write!(f, "{p}"),
            Repr::Bi(p) => write!(f, "{p}"),
            Repr::Rat(p) => write!(f, "{p}"),
            Repr::Mod(m) => write!(f, "{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zt(cs: &[i64]) -> RingElem {
        RingElem::from_zpoly(RingDescriptor::GenericZt, &ZPoly::from_i64s(cs))
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&zt(&[1, 1]) * &zt(&[1, -1]), zt(&[1, 0, -1]));
    }

    #[test]
    fn cube_root_of_unity() {
        let r = RingDescriptor::CyclotomicField(3);
        let q = RingElem::q(r);
        assert!((&q * &q.pow(2)).is_one());
        assert!((&(&RingElem::one(r) + &q) + &q.pow(2)).is_zero());
    }

    #[test]
    fn prime_field_addition() {
        let r = RingDescriptor::PrimeField(5);
        assert_eq!(&RingElem::from_i64(r, 3) + &RingElem::from_i64(r, 4), RingElem::from_i64(r, 2));
    }

    #[test]
    fn invert_one_plus_i() {
        let r = RingDescriptor::CyclotomicField(4);
        let a = &RingElem::one(r) + &RingElem::q(r);
        let inv = a.try_invert().unwrap();
        let expected = RingElem::from_qpoly(r, &QPoly::new(vec![qpoly::rat(1, 2), qpoly::rat(-1, 2)])).unwrap();
        assert_eq!(inv, expected);
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn generic_units() {
        assert!(zt(&[1, 1]).try_invert().is_none());
        assert_eq!(zt(&[-1]).try_invert(), Some(zt(&[-1])));
    }

    #[test]
    fn cyclotomic_ring_unit_and_non_unit() {
        let r = RingDescriptor::CyclotomicRing(5);
        let q = RingElem::q(r);
        let two_q = &RingElem::one(r) + &q;
        assert!(two_q.try_invert().is_some());
        let one_minus_q = &RingElem::one(r) - &q;
        assert!(one_minus_q.try_invert().is_none());
    }

    #[test]
    fn mismatch_is_reported() {
        let a = RingElem::one(RingDescriptor::GenericZt);
        let b = RingElem::one(RingDescriptor::PrimeField(3));
        assert!(matches!(a.checked_add(&b), Err(Error::DescriptorMismatch(..))));
    }

    #[test]
    fn descriptors_round_trip() {
        for s in ["Zt", "Zts", "CycF:6", "CycR:7", "Fp:5"] {
            assert_eq!(s.parse::<RingDescriptor>().unwrap().to_string(), s);
        }
        for s in ["", "Zq", "CycF:1", "CycR:6", "Fp:4", "Fp:", "Fp:+3", "CycF:99999"] {
            assert!(s.parse::<RingDescriptor>().is_err(), "{s}");
        }
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), ZPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), ZPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ZPoly::from_i64s(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn frobenius_endo_generic() {
        let r = RingDescriptor::GenericZt;
        assert_eq!(RingElem::q(r).frobenius_endo(3), zt(&[0, 0, 0, 1]));
    }
}

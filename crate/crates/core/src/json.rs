//! JSON encodings used by the command line tool.
//!
//! Coefficients of `t` are dense little-endian lists. Integers are JSON numbers
//! of arbitrary size; non-integral rationals are strings `"n/d"`. Elements of
//! `A` are sparse `[exponent, coefficients]` pairs.
//!
//! ```text
//! ring element   {"ring": "CycF:3", "coeffs": [0, 1]}
//! A element      {"ring": "Zt", "terms": [[0, [1]], [2, [0, 1]]]}
//! DP element     {"ring": "Zt", "laurent": false, "trunc": 3, "coeffs": [[[0, [1]]], [], [[1, [1]]]]}
//! Higgs field    {"ring": "Fp:2", "rank": 2, "theta": [[[], [[0, [1]]]], [[], []]]}
//! ```
//!
//! Decoders reject oversized input before allocating for it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::divided::{DpElem, DpRing};
use crate::error::{Error, Result};
use crate::ring::{BiPoly, QFraction, QPoly, RingDescriptor, RingElem, ZPoly};
use crate::simpson::HiggsModule;
use crate::twisted::{AElem, TwistedAlgebra, Variant};

pub const MAX_DIGITS: usize = 2048;
pub const MAX_COEFFS: usize = 1024;
pub const MAX_TERMS: usize = 1024;
pub const MAX_EXPONENT: i64 = 1 << 16;
pub const MAX_EXPONENT_SPAN: i64 = 4096;
pub const MAX_TRUNC: usize = 256;
pub const MAX_RANK: usize = 16;
pub const MAX_INPUT_BYTES: usize = 1 << 20;

fn decode_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Decode(msg.into()))
}

fn int_value(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

fn rational_value(r: &BigRational) -> Value {
    if r.is_integer() {
        int_value(r.numer())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    if s.len() > MAX_DIGITS {
        return decode_err("integer has too many digits");
    }
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return decode_err(format!("not an integer: {s}"));
    }
    s.parse().map_err(|_| Error::Decode(format!("not an integer: {s}")))
}

fn read_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => parse_int(&n.to_string()),
        Value::String(s) => parse_int(s.trim()),
        _ => decode_err("expected an integer"),
    }
}

fn read_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let (n, d) = s.split_once('/').unwrap_or((s, "1"));
            let d = parse_int(d.trim())?;
            if d.is_zero() {
                return decode_err("zero denominator");
            }
            Ok(BigRational::new(parse_int(n.trim())?, d))
        }
        other => read_int(other).map(BigRational::from_integer),
    }
}

fn read_list<'a>(v: &'a Value, what: &str, max: usize) -> Result<&'a Vec<Value>> {
    match v {
        Value::Array(a) if a.len() <= max => Ok(a),
        Value::Array(_) => decode_err(format!("{what}: too many entries")),
        _ => decode_err(format!("{what}: expected an array")),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| Error::Decode("expected an object".into()))?
        .get(key)
        .ok_or_else(|| Error::Decode(format!("missing field `{key}`")))
}

fn read_usize(v: &Value, what: &str, max: usize) -> Result<usize> {
    match v.as_u64() {
        Some(n) if n as usize <= max => Ok(n as usize),
        Some(_) => decode_err(format!("{what} exceeds {max}")),
        None => decode_err(format!("{what}: expected a nonnegative integer")),
    }
}

fn read_ring(obj: &Value) -> Result<RingDescriptor> {
    match field(obj, "ring")? {
        Value::String(s) if s.len() <= 16 => s.parse(),
        _ => decode_err("`ring` must be a short descriptor string"),
    }
}

pub fn encode_zpoly(p: &ZPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int_value).collect())
}

pub fn encode_qpoly(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_value).collect())
}

pub fn encode_qfraction(f: &QFraction) -> Value {
    json!({"num": encode_qpoly(&f.num), "den": encode_qpoly(&f.den)})
}

pub fn decode_zpoly(v: &Value) -> Result<ZPoly> {
    let cs = read_list(v, "polynomial", MAX_COEFFS)?;
    Ok(ZPoly::new(cs.iter().map(read_int).collect::<Result<_>>()?))
}

fn decode_qpoly(v: &Value) -> Result<QPoly> {
    let cs = read_list(v, "polynomial", MAX_COEFFS)?;
    Ok(QPoly::new(cs.iter().map(read_rational).collect::<Result<_>>()?))
}

/// The coefficient list of `c` without the descriptor.
pub fn encode_coeffs(c: &RingElem) -> Value {
    if let Some(m) = c.as_residue() {
        return json!([m]);
    }
    if let Some(b) = c.as_bipoly() {
        return Value::Array(b.by_s().iter().map(encode_zpoly).collect());
    }
    if let Some(z) = c.as_zpoly() {
        return encode_zpoly(z);
    }
    encode_qpoly(c.as_qpoly().expect("rational representative"))
}

fn coeffs_from_value(ring: RingDescriptor, v: &Value) -> Result<RingElem> {
    match ring {
        RingDescriptor::GenericZt | RingDescriptor::CyclotomicRing(_) => {
            Ok(RingElem::from_zpoly(ring, &decode_zpoly(v)?))
        }
        RingDescriptor::GenericZts => {
            let rows = read_list(v, "ℤ[t,s] element", 64)?;
            let by_s = rows.iter().map(decode_zpoly).collect::<Result<Vec<_>>>()?;
            RingElem::from_bipoly(ring, &BiPoly::new(by_s))
        }
        RingDescriptor::CyclotomicField(_) => RingElem::from_qpoly(ring, &decode_qpoly(v)?),
        RingDescriptor::PrimeField(_) => {
            let p = decode_zpoly(v)?;
            if p.degree().unwrap_or(0) > 0 {
                return decode_err("prime field elements are constants");
            }
            Ok(RingElem::from_bigint(ring, &p.coeff(0)))
        }
    }
}

pub fn encode_ring_elem(c: &RingElem) -> Value {
    json!({"ring": c.ring().to_string(), "coeffs": encode_coeffs(c)})
}

pub fn decode_ring_elem(v: &Value) -> Result<RingElem> {
    let ring = read_ring(v)?;
    coeffs_from_value(ring, field(v, "coeffs")?)
}

fn terms_value(a: &AElem) -> Value {
    Value::Array(a.terms().map(|(e, c)| json!([e, encode_coeffs(c)])).collect())
}

fn terms_from_value(ring: RingDescriptor, v: &Value) -> Result<AElem> {
    let terms = read_list(v, "terms", MAX_TERMS)?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let pair = read_list(t, "term", 2)?;
        if pair.len() != 2 {
            return decode_err("a term is [exponent, coefficients]");
        }
        let e = match pair[0].as_i64() {
            Some(e) if e.abs() <= MAX_EXPONENT => e,
            _ => return decode_err(format!("exponent must be an integer of size at most {MAX_EXPONENT}")),
        };
        parsed.push((e, coeffs_from_value(ring, &pair[1])?));
    }
    let (Some(low), Some(high)) = (parsed.iter().map(|t| t.0).min(), parsed.iter().map(|t| t.0).max()) else {
        return Ok(AElem::zero(ring));
    };
    if high - low > MAX_EXPONENT_SPAN {
        return decode_err("exponent span too large");
    }
    let mut dense = vec![RingElem::zero(ring); (high - low + 1) as usize];
    for (e, c) in parsed {
        let slot = &mut dense[(e - low) as usize];
        *slot = &*slot + &c;
    }
    Ok(AElem::from_coeffs(ring, low, dense))
}

pub fn encode_aelem(a: &AElem) -> Value {
    json!({"ring": a.ring().to_string(), "terms": terms_value(a)})
}

pub fn decode_aelem(v: &Value) -> Result<AElem> {
    let ring = read_ring(v)?;
    terms_from_value(ring, field(v, "terms")?)
}

/// Encodes an element of the standard ring `A⟨ξ⟩` over `R[x]` or `R[x^{±1}]`.
pub fn encode_dp_elem(a: &DpElem) -> Value {
    let alg = a.ring().alg();
    json!({
        "ring": alg.ring().to_string(),
        "laurent": alg.variant() == Variant::Laurent,
        "trunc": a.trunc(),
        "coeffs": a.coeffs().iter().map(terms_value).collect::<Vec<_>>(),
    })
}

pub fn decode_dp_elem(v: &Value) -> Result<DpElem> {
    let ring = read_ring(v)?;
    let laurent = match v.get("laurent") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return decode_err("`laurent` must be a boolean"),
    };
    let alg = if laurent { TwistedAlgebra::laurent(ring)? } else { TwistedAlgebra::polynomial(ring) };
    let trunc = read_usize(field(v, "trunc")?, "trunc", MAX_TRUNC)?;
    let rows = read_list(field(v, "coeffs")?, "coeffs", trunc + 1)?;
    let coeffs = rows.iter().map(|r| terms_from_value(ring, r)).collect::<Result<Vec<_>>>()?;
    if let Some(bad) = coeffs.iter().find(|c| !alg.contains(c)) {
        return decode_err(format!("coefficient {bad} is not in the polynomial algebra"));
    }
    Ok(DpRing::standard(&alg).elem(trunc, coeffs))
}

/// Higgs field entries are polynomials in `x′`.
pub fn encode_higgs(h: &HiggsModule) -> Value {
    json!({
        "ring": h.ring().to_string(),
        "rank": h.rank(),
        "theta": encode_matrix(&h.theta),
    })
}

pub fn decode_higgs(v: &Value) -> Result<HiggsModule> {
    let ring = read_ring(v)?;
    let rank = read_usize(field(v, "rank")?, "rank", MAX_RANK)?;
    let rows = read_list(field(v, "theta")?, "theta", MAX_RANK)?;
    if rank == 0 || rows.len() != rank {
        return decode_err("theta must have `rank` rows");
    }
    let mut theta = Vec::with_capacity(rank);
    for row in rows {
        let row = read_list(row, "theta row", MAX_RANK)?;
        if row.len() != rank {
            return decode_err("theta must be square");
        }
        let row = row.iter().map(|e| terms_from_value(ring, e)).collect::<Result<Vec<_>>>()?;
        if row.iter().any(|e| !e.is_polynomial()) {
            return decode_err("Higgs field entries must be polynomials in x′");
        }
        theta.push(row);
    }
    HiggsModule::new(theta)
}

/// Parses text as JSON with a size cap.
pub fn parse(text: &str) -> Result<Value> {
    if text.len() > MAX_INPUT_BYTES {
        return decode_err("input too large");
    }
    serde_json::from_str(text).map_err(|e| Error::Decode(e.to_string()))
}

/// A matrix over `A` as nested term lists, without the descriptor.
pub fn encode_matrix(m: &[Vec<AElem>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(terms_value).collect())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip_ring(c: RingElem) {
        let v = encode_ring_elem(&c);
        let text = v.to_string();
        assert_eq!(decode_ring_elem(&parse(&text).unwrap()).unwrap(), c, "{text}");
    }

    #[test]
    fn ring_elements() {
        let big = BigInt::from(7).pow(60u32);
        roundtrip_ring(RingElem::from_bigint(RingDescriptor::GenericZt, &big));
        roundtrip_ring(RingElem::sample(RingDescriptor::GenericZt, &[1, -2, 3]));
        roundtrip_ring(RingElem::sample(RingDescriptor::CyclotomicRing(5), &[1, -2, 3]));
        roundtrip_ring(RingElem::from_i64(RingDescriptor::PrimeField(7), 12));
        let half = RingElem::from_i64(RingDescriptor::CyclotomicField(3), 2).try_invert().unwrap();
        roundtrip_ring(&half * &RingElem::q(RingDescriptor::CyclotomicField(3)));
        let zts = RingDescriptor::GenericZts;
        roundtrip_ring(&RingElem::s(zts).unwrap() * &RingElem::sample(zts, &[0, 3]));
    }

    #[test]
    fn canonical_cyclotomic_form() {
        let v = parse(r#"{"ring": "CycF:3", "coeffs": [0, 0, 1]}"#).unwrap();
        let c = decode_ring_elem(&v).unwrap();
        assert_eq!(encode_ring_elem(&c), parse(r#"{"ring": "CycF:3", "coeffs": [-1, -1]}"#).unwrap());
    }

    #[test]
    fn dp_and_higgs() {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(3));
        let r = DpRing::standard(&alg);
        let a = r.elem(3, vec![alg.x(), AElem::zero(alg.ring()), alg.y().pow(2)]);
        assert_eq!(decode_dp_elem(&encode_dp_elem(&a)).unwrap(), a);
        let z = AElem::zero(alg.ring());
        let h = HiggsModule::new(vec![vec![z.clone(), alg.x()], vec![z.clone(), z]]).unwrap();
        assert_eq!(decode_higgs(&encode_higgs(&h)).unwrap(), h);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            r#"{"ring": "Zt", "coeffs": [1.5]}"#,
            r#"{"ring": "CycF:3", "coeffs": ["1/0"]}"#,
            r#"{"ring": "Fp:4", "coeffs": [1]}"#,
            r#"{"ring": "Fp:5", "coeffs": [1, 1]}"#,
            r#"{"ring": "Zt"}"#,
        ] {
            assert!(decode_ring_elem(&parse(text).unwrap()).is_err(), "{text}");
        }
        let far = r#"{"ring": "Zt", "trunc": 1, "coeffs": [[[0, [1]], [60000, [1]]]]}"#;
        assert!(decode_dp_elem(&parse(far).unwrap()).is_err());
        let neg = r#"{"ring": "Zt", "trunc": 1, "coeffs": [[[-1, [1]]]]}"#;
        assert!(decode_dp_elem(&parse(neg).unwrap()).is_err());
        let huge = r#"{"ring": "Zt", "trunc": 100000, "coeffs": []}"#;
        assert!(decode_dp_elem(&parse(huge).unwrap()).is_err());
        let ragged = r#"{"ring": "Fp:2", "rank": 2, "theta": [[[]], [[], []]]}"#;
        assert!(decode_higgs(&parse(ragged).unwrap()).is_err());
    }
}

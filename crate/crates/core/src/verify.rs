//! Named identity suites with machine-readable reports.

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::divided::{divided_p_power, dp_from_poly, dp_mul, mod_xi_reduce, xi_ideal_witness, DpRing};
use crate::error::{precondition, Error, Result};
use crate::frobenius::{
    b_top_closed_form, coeff_a, coeff_b, frobis_forward, frobis_inverse, techf2_holds, techf_holds,
    FrobeniusContext, MixedElem,
};
use crate::linalg;
use crate::qcomb::QContext;
use crate::ring::{RingDescriptor, RingElem, ZPoly};
use crate::simpson::{curvature_matmul, PhiContext};
use crate::twisted::{AElem, TwistedAlgebra, XiPoly};
use crate::weyl::{box_coordinates, center_basis, centralizer_basis, monomial_box, weyl_mul, weyl_mul_via_duality, WeylElem};

pub const SUITES: &[&str] = &[
    "sqform-assoc",
    "dp-poly",
    "lucas",
    "divided-power",
    "duality",
    "center",
    "coeffs",
    "gooddf",
    "frobis",
    "comdlef",
    "azumaya",
];

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Value,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Some case raised a theorem-falsifier error.
    pub falsified: bool,
}

impl SuiteReport {
    fn new(suite: &str, params: Value) -> Self {
        SuiteReport { suite: suite.to_string(), params, cases: 0, failures: Vec::new(), falsified: false }
    }

    fn check(&mut self, case: impl Display, outcome: Result<bool>) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(case.to_string()),
            Err(e) => {
                self.falsified |= matches!(e, Error::Falsified(_));
                self.failures.push(format!("{case}: {e}"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.falsified |= other.falsified;
        self.failures.extend(other.failures);
    }

    pub fn to_json(&self) -> Value {
        let mut failures = self.failures.clone();
        failures.sort();
        json!({"suite": self.suite, "params": self.params, "cases": self.cases, "failures": failures})
    }
}

/// Parameters shared by the suites; each suite reads what it needs.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub ring: Option<RingDescriptor>,
    pub nmax: Option<usize>,
    pub degree: Option<usize>,
    pub p: Option<usize>,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { ring: None, nmax: None, degree: None, p: None, seed: 0 }
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let ring = |default: RingDescriptor| params.ring.unwrap_or(default);
    let cyc = |p: usize| RingDescriptor::CyclotomicField(p as u32);
    let p_of = |r: RingDescriptor| params.p.unwrap_or(r.q_characteristic() as usize);
    match name {
        "sqform-assoc" => sqform_assoc(ring(RingDescriptor::GenericZt), params.nmax.unwrap_or(5)),
        "dp-poly" => dp_poly(ring(RingDescriptor::GenericZt), params.nmax.unwrap_or(50), 4, params.seed),
        "lucas" => {
            let r = ring(cyc(3));
            lucas(r, params.nmax.unwrap_or(3 * r.q_characteristic() as usize))
        }
        "divided-power" => divided_power(ring(cyc(3)), params.nmax.unwrap_or(4)),
        "duality" => {
            let r = ring(RingDescriptor::GenericZts);
            let alg = if r.has_s() { TwistedAlgebra::generic_with_s() } else { TwistedAlgebra::polynomial(r) };
            duality(&alg, params.nmax.unwrap_or(3))
        }
        "center" => {
            let r = ring(cyc(3));
            center(r, params.degree.unwrap_or(2 * r.q_characteristic() as usize))
        }
        "coeffs" => coefficients(params.p.unwrap_or(3), params.nmax.unwrap_or(5)),
        "gooddf" => {
            let r = ring(RingDescriptor::GenericZt);
            let p = params.p.unwrap_or(if r.q_characteristic() == 0 { 2 } else { r.q_characteristic() as usize });
            gooddf(r, p, params.degree.unwrap_or(10))
        }
        "frobis" => {
            let r = ring(cyc(3));
            frobis(r, p_of(r), params.degree.unwrap_or(8))
        }
        "comdlef" => comdlef(ring(cyc(2)), params.nmax.unwrap_or(3)),
        "azumaya" => azumaya(ring(cyc(2)), params.degree.unwrap_or(3)),
        _ => precondition(format!("unknown suite `{name}`")),
    }
}

/// Commutativity and associativity of the `sqform` product on `ξ^{[m]}`, with `y` a free variable.
pub fn sqform_assoc(ring: RingDescriptor, nmax: usize) -> Result<SuiteReport> {
    let alg = TwistedAlgebra::polynomial(ring);
    let dp = DpRing::with_params(&alg, RingElem::q(ring), alg.x())?;
    let mut rep = SuiteReport::new("sqform-assoc", json!({"ring": ring.to_string(), "nmax": nmax, "y": "x"}));
    let t = 3 * nmax;
    let b = |n: usize| dp.basis(n, t);
    for m in 0..=nmax {
        for n in 0..=nmax {
            rep.check(format!("ξ[{m}]ξ[{n}] commutes"), Ok(dp_mul(&b(m), &b(n))? == dp_mul(&b(n), &b(m))?));
            for k in 0..=nmax {
                let lhs = dp_mul(&dp_mul(&b(m), &b(n))?, &b(k))?;
                let rhs = dp_mul(&b(m), &dp_mul(&b(n), &b(k))?)?;
                rep.check(format!("(ξ[{m}]ξ[{n}])ξ[{k}] associates"), Ok(lhs == rhs));
            }
        }
    }
    Ok(rep)
}

fn random_a(rng: &mut ChaCha8Rng, ring: RingDescriptor, deg: usize) -> AElem {
    let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
    AElem::from_coeffs(ring, 0, cs.iter().map(|&c| RingElem::from_i64(ring, c)).collect())
}

fn random_xi(rng: &mut ChaCha8Rng, ring: RingDescriptor, deg: usize) -> XiPoly {
    XiPoly::new(ring, (0..=deg).map(|_| random_a(rng, ring, 2)).collect())
}

/// `dp_from_poly` is multiplicative on random pairs of degree ≤ `deg`.
pub fn dp_poly(ring: RingDescriptor, samples: usize, deg: usize, seed: u64) -> Result<SuiteReport> {
    let alg = TwistedAlgebra::polynomial(ring);
    let dp = DpRing::standard(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep =
        SuiteReport::new("dp-poly", json!({"ring": ring.to_string(), "samples": samples, "degree": deg, "seed": seed}));
    let t = 2 * deg;
    for s in 0..samples {
        let df = rng.gen_range(0..=deg);
        let f = random_xi(&mut rng, ring, df);
        let dg = rng.gen_range(0..=deg);
        let g = random_xi(&mut rng, ring, dg);
        let lhs = dp_from_poly(&dp, &(&f * &g), t)?;
        let rhs = dp_mul(&dp_from_poly(&dp, &f, t)?, &dp_from_poly(&dp, &g, t)?)?;
        rep.check(format!("sample {s}"), Ok(lhs == rhs));
    }
    Ok(rep)
}

/// `C(n,k)_q = C(n₁,k₁)·C(n₀,k₀)_q` for `n, k ≤ nmax`.
pub fn lucas(ring: RingDescriptor, nmax: usize) -> Result<SuiteReport> {
    let qc = QContext::new(ring);
    let mut rep = SuiteReport::new("lucas", json!({"ring": ring.to_string(), "nmax": nmax}));
    for n in 0..=nmax {
        for k in 0..=nmax {
            rep.check(format!("n={n} k={k}"), qc.q_lucas(n, k).map(|v| v == qc.binom(n, k)));
        }
    }
    Ok(rep)
}

/// The divided `p`-power map is multiplicative on `ω^{[k]}ω^{[l]}`, and reduction mod `ξ`
/// matches the basis `ξ^{[kp]} ↔ ω^{[k]}` up to index `3p`.
pub fn divided_power(ring: RingDescriptor, kmax: usize) -> Result<SuiteReport> {
    let alg = TwistedAlgebra::polynomial(ring);
    let target = DpRing::standard(&alg);
    let p = ring.q_characteristic() as usize;
    if p == 0 {
        return precondition("the divided p-power suite needs positive q-characteristic");
    }
    let source = target.frobenius_params(p);
    let mut rep = SuiteReport::new("divided-power", json!({"ring": ring.to_string(), "kmax": kmax}));
    let t = 2 * kmax;
    for k in 0..=kmax {
        for l in 0..=kmax {
            let lhs = divided_p_power(&dp_mul(&source.basis(k, t), &source.basis(l, t))?, &target)?;
            let rhs = dp_mul(&divided_p_power(&source.basis(k, t), &target)?, &divided_p_power(&source.basis(l, t), &target)?)?;
            rep.check(format!("u(ω[{k}]ω[{l}])"), Ok(lhs == rhs));
        }
    }
    if ring.is_q_divisible() {
        let top = 3 * p;
        for j in 0..=top {
            let image = mod_xi_reduce(&target.basis(j, top))?;
            let expected = if j % p == 0 { source.basis(j / p, 3) } else { source.zero(3) };
            rep.check(format!("ξ[{j}] mod ξ"), Ok(image == expected));
            if j % p != 0 {
                let g = xi_ideal_witness(&target, j, top)?;
                rep.check(format!("ξ[{j}] ∈ (ξ)"), Ok(dp_mul(&g, &target.basis(1, top))? == target.basis(j, top)));
            }
        }
        for k in 0..=3 {
            let back = mod_xi_reduce(&divided_p_power(&source.basis(k, 3), &target)?)?;
            rep.check(format!("section at ω[{k}]"), Ok(back == source.basis(k, 3)));
        }
        for a in 0..=top {
            for b in 0..=top - a {
                let lhs = mod_xi_reduce(&dp_mul(&target.basis(a, top), &target.basis(b, top))?)?;
                let rhs = dp_mul(&mod_xi_reduce(&target.basis(a, top))?, &mod_xi_reduce(&target.basis(b, top))?)?;
                rep.check(format!("reduction of ξ[{a}]ξ[{b}]"), Ok(lhs == rhs));
            }
        }
    }
    Ok(rep)
}

/// Composition through the comultiplication agrees with the Ore product on `x^a∂^b`, `a, b ≤ max`.
pub fn duality(alg: &TwistedAlgebra, max: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("duality", json!({"ring": alg.ring().to_string(), "h": alg.h().to_string(), "max": max}));
    let mono: Vec<(usize, usize)> = (0..=max).flat_map(|a| (0..=max).map(move |b| (a, b))).collect();
    for &(a1, b1) in &mono {
        for &(a2, b2) in &mono {
            let u = WeylElem::xd(alg, a1, b1);
            let v = WeylElem::xd(alg, a2, b2);
            let ok = weyl_mul_via_duality(&u, &v, b1 + b2)? == weyl_mul(&u, &v)?;
            rep.check(format!("x^{a1}∂^{b1} ∘ x^{a2}∂^{b2}"), Ok(ok));
        }
    }
    Ok(rep)
}

/// Brute-force centralizer and center against `span{x^a∂^{pb}}` and `span{x^{pa}∂^{pb}}`.
pub fn center(ring: RingDescriptor, degree: usize) -> Result<SuiteReport> {
    let alg = TwistedAlgebra::polynomial(ring);
    let p = ring.q_characteristic() as usize;
    if p == 0 || !ring.is_field() {
        return precondition("the center suite compares spans over a field of positive q-characteristic");
    }
    let mut rep = SuiteReport::new("center", json!({"ring": ring.to_string(), "degree": degree}));
    let cols = monomial_box(degree).len();
    let expected = |step_a: usize| -> Vec<WeylElem> {
        monomial_box(degree)
            .into_iter()
            .filter(|&(a, b)| a % step_a == 0 && b % p == 0)
            .map(|(a, b)| WeylElem::xd(&alg, a, b))
            .collect()
    };
    let cent = centralizer_basis(&alg, degree)?;
    rep.check(
        "centralizer = span{x^a ∂^(pb)}",
        Ok(linalg::same_span(ring, &box_coordinates(&cent, degree), &box_coordinates(&expected(1), degree), cols)),
    );
    let z = center_basis(&alg, degree)?;
    rep.check(
        "center = span{x^(pa) ∂^(pb)}",
        Ok(linalg::same_span(ring, &box_coordinates(&z, degree), &box_coordinates(&expected(p), degree), cols)),
    );
    Ok(rep)
}

/// Support and normalization of `A_{n,i}`, exact divisibility defining `B_{n,i}`, the closed
/// forms of `B_{n,n}` and `B_{n,pn}`, and the two exchange identities.
pub fn coefficients(p: usize, nmax: usize) -> Result<SuiteReport> {
    if p < 2 {
        return precondition("p must be at least 2");
    }
    let mut rep = SuiteReport::new("coeffs", json!({"p": p, "nmax": nmax}));
    for n in 0..=nmax {
        for i in 0..=p * n + 1 {
            let a = coeff_a(n, i, p);
            if i < n || i > p * n {
                rep.check(format!("A[{n},{i}] = 0"), Ok(a.is_zero()));
            }
            if i == p * n {
                rep.check(format!("A[{n},{i}] = 1"), Ok(a.is_one()));
            }
            if i <= p * n {
                rep.check(format!("B[{n},{i}] exists"), coeff_b(n, i, p).map(|_| true));
            }
        }
        let closed = ZPoly::monomial(1.into(), (p - 1) * n * n.saturating_sub(1) / 2);
        rep.check(format!("B[{n},{n}] closed form"), coeff_b(n, n, p).map(|b| b == closed));
        rep.check(format!("B[{n},{}] closed form", p * n), coeff_b(n, p * n, p).map(|b| b == b_top_closed_form(n, p)));
        for i in 0..=p * n {
            rep.check(format!("exchange identity n={n} i={i}"), Ok(techf2_holds(n, i, p)));
        }
    }
    for m in 0..=nmax.max(6) {
        for n in 0..=nmax.max(6) {
            rep.check(format!("exchange lemma m={m} n={n}"), Ok(techf_holds(m, n)));
        }
    }
    Ok(rep)
}

/// `[F*](ω^{[m]}ω^{[n]}) = [F*](ω^{[m]})[F*](ω^{[n]})` for `p(m+n) ≤ bound`.
pub fn gooddf(ring: RingDescriptor, p: usize, bound: usize) -> Result<SuiteReport> {
    let ctx = FrobeniusContext::new(&TwistedAlgebra::polynomial(ring), p)?;
    let s = ctx.source();
    let mut rep = SuiteReport::new("gooddf", json!({"ring": ring.to_string(), "p": p, "bound": bound}));
    for m in 0..=bound / p {
        for n in 0..=bound / p - m {
            let w = m + n;
            let t = p * w;
            let lhs = ctx.divided_frobenius(&dp_mul(&s.basis(m, w), &s.basis(n, w))?, t)?;
            let rhs = dp_mul(&ctx.divided_frobenius(&s.basis(m, w), t)?, &ctx.divided_frobenius(&s.basis(n, w), t)?)?;
            rep.check(format!("ω[{m}]ω[{n}]"), Ok(lhs == rhs));
        }
    }
    Ok(rep)
}

/// Inverse after forward is the identity on `ξ̄^k ω^{[n]}` with `pn + k ≤ degree`.
pub fn frobis(ring: RingDescriptor, p: usize, degree: usize) -> Result<SuiteReport> {
    let ctx = FrobeniusContext::new(&TwistedAlgebra::polynomial(ring), p)?;
    let mut rep = SuiteReport::new("frobis", json!({"ring": ring.to_string(), "p": p, "degree": degree}));
    for n in 0..=degree / p {
        for k in 0..p.min(degree - p * n + 1) {
            let m = MixedElem::basis(&ctx, k, n);
            let outcome = frobis_forward(&ctx, &m, degree).and_then(|img| frobis_inverse(&ctx, &img)).map(|b| b == m);
            rep.check(format!("ξ̄^{k} ω[{n}]"), outcome);
        }
    }
    Ok(rep)
}

/// `δ∘[F*] = ([F*]⊗[F*])∘δ` on `ω^{[n]}`, `n ≤ nmax`.
pub fn comdlef(ring: RingDescriptor, nmax: usize) -> Result<SuiteReport> {
    let ctx = PhiContext::new(&TwistedAlgebra::polynomial(ring))?;
    let mut rep = SuiteReport::new("comdlef", json!({"ring": ring.to_string(), "nmax": nmax}));
    for n in 0..=nmax {
        rep.check(format!("ω[{n}]"), ctx.comultiplication_commutes(n));
    }
    rep.check("adapted", Ok(ctx.is_adapted(4)));
    rep.check("A ⊗_A′ A is free of rank p", ctx.tensor_square_is_free());
    Ok(rep)
}

/// The Azumaya action is multiplicative on `{1, x, ∂, x∂}`.
pub fn azumaya(ring: RingDescriptor, trunc: usize) -> Result<SuiteReport> {
    let alg = TwistedAlgebra::polynomial(ring);
    let ctx = PhiContext::new(&alg)?;
    let mut rep = SuiteReport::new("azumaya", json!({"ring": ring.to_string(), "trunc": trunc}));
    let gens = [("1", WeylElem::one(&alg)), ("x", WeylElem::x(&alg)), ("∂", WeylElem::partial(&alg)), ("x∂", WeylElem::xd(&alg, 1, 1))];
    let t = trunc;
    for (na, a) in &gens {
        for (nb, b) in &gens {
            let outcome = (|| {
                let ab = ctx.azumaya_matrix(&weyl_mul(a, b)?, t)?;
                let prod = curvature_matmul(&ctx.azumaya_matrix(a, t)?, &ctx.azumaya_matrix(b, t)?, t);
                Ok(ab == prod)
            })();
            rep.check(format!("{na}∘{nb}"), outcome);
        }
    }
    Ok(rep)
}

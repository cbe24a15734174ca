use proptest::prelude::*;
use proptest::sample::select;

use twisted_dp::divided::{
    dp_comul, dp_comul_twice, dp_from_poly, dp_mul, dp_sigma, dp_sigma_iterated, pairing, taylor0, DpElem, DpRing,
    TensorAction, ThetaPoly,
};
use twisted_dp::json::{decode_aelem, decode_dp_elem, decode_ring_elem, encode_aelem, encode_dp_elem, encode_ring_elem};
use twisted_dp::qcomb::QContext;
use twisted_dp::ring::{RingDescriptor, RingElem};
use twisted_dp::twisted::{sigma_xi, AElem, Twist, TwistedAlgebra, XiPoly};
use twisted_dp::weyl::{p_curvature, weyl_apply, weyl_mul, WeylElem};

fn d(s: &str) -> RingDescriptor {
    s.parse().unwrap()
}

fn all_rings() -> Vec<RingDescriptor> {
    ["Zt", "Zts", "CycF:2", "CycF:3", "CycF:4", "CycF:5", "CycR:3", "CycR:5", "Fp:2", "Fp:3", "Fp:5"]
        .iter()
        .map(|s| d(s))
        .collect()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 0..5)
}

fn aelem(ring: RingDescriptor, deg: usize) -> impl Strategy<Value = AElem> {
    prop::collection::vec(-5i64..=5, 0..=deg + 1).prop_map(move |cs| AElem::from_i64s(ring, &cs))
}

fn xipoly(ring: RingDescriptor, deg: usize, adeg: usize) -> impl Strategy<Value = XiPoly> {
    prop::collection::vec(aelem(ring, adeg), 0..=deg + 1).prop_map(move |cs| XiPoly::new(ring, cs))
}

fn dp_elem(ring: DpRing, len: usize, trunc: usize) -> impl Strategy<Value = DpElem> {
    let r = ring.ring();
    prop::collection::vec(aelem(r, 2), 0..=len).prop_map(move |cs| ring.elem(trunc, cs))
}

fn zt_alg() -> TwistedAlgebra {
    TwistedAlgebra::polynomial(RingDescriptor::GenericZt)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(ring in select(all_rings()), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (RingElem::sample(ring, &a), RingElem::sample(ring, &b), RingElem::sample(ring, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn base_frobenius_is_multiplicative(ring in select(all_rings()), p in 2usize..=5, a in coeffs(), b in coeffs()) {
        let (a, b) = (RingElem::sample(ring, &a), RingElem::sample(ring, &b));
        prop_assert_eq!((&a * &b).frobenius_endo(p), &a.frobenius_endo(p) * &b.frobenius_endo(p));
        prop_assert_eq!((&a + &b).frobenius_endo(p), &a.frobenius_endo(p) + &b.frobenius_endo(p));
    }
}

#[test]
fn cyclotomic_q_integers() {
    for p in [2u32, 3, 4, 5, 6, 7] {
        let qc = QContext::new(RingDescriptor::CyclotomicField(p));
        for m in 1..=4 * p as i64 {
            let v = qc.q_int(m).unwrap();
            if m % p as i64 == 0 {
                assert!(v.is_zero(), "({m})_q at p={p}");
            } else {
                assert!(v.try_invert().is_some(), "({m})_q at p={p}");
            }
        }
    }
    let qc = QContext::new(RingDescriptor::GenericZt);
    for m in 2..=20 {
        let v = qc.q_int(m).unwrap();
        assert!(!v.is_zero() && v.try_invert().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_binomial_symmetry(ring in select(all_rings()), n in 0usize..=12, k in 0usize..=12) {
        prop_assume!(k <= n);
        let qc = QContext::new(ring);
        prop_assert_eq!(qc.binom(n, k), qc.binom(n, n - k));
    }

    #[test]
    fn q_integer_is_first_binomial(ring in select(all_rings()), m in 0usize..=20) {
        let qc = QContext::new(ring);
        prop_assert_eq!(qc.q_int(m as i64).unwrap(), qc.binom(m, 1));
    }

    #[test]
    fn factorial_product(m in 0usize..=8, n in 0usize..=8) {
        let qc = QContext::new(RingDescriptor::GenericZt);
        let lhs = &(&qc.q_factorial(n) * &qc.binom(m + n, n)) * &qc.q_factorial(m);
        prop_assert_eq!(&lhs, &qc.q_factorial(m + n));
        let quot = qc.q_factorial(m + n).exact_div(&(&qc.q_factorial(m) * &qc.q_factorial(n))).unwrap();
        prop_assert_eq!(quot, qc.binom(m + n, n));
    }

    #[test]
    fn lucas_agrees(p in 2u32..=6, n in 0usize..=18, k in 0usize..=18) {
        prop_assume!(n <= 3 * p as usize && k <= 3 * p as usize);
        let qc = QContext::new(RingDescriptor::CyclotomicField(p));
        prop_assert_eq!(qc.q_lucas(n, k).unwrap(), qc.binom(n, k));
    }

    #[test]
    fn minus_one_power(ring in select(vec![d("CycF:3"), d("CycF:5"), d("CycR:3"), d("CycR:5"), d("Fp:3"), d("Fp:5")]), i in 0u64..=6) {
        prop_assert!(ring.is_q_flat());
        let qc = QContext::new(ring);
        let p = qc.characteristic() as u64;
        let minus = RingElem::from_i64(ring, -1);
        let ip = i * p;
        let rhs = &minus.pow(i) * &qc.q().pow(ip * ip.saturating_sub(1) / 2);
        prop_assert_eq!(minus.pow(ip), rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn twisted_basis_roundtrip(f in xipoly(RingDescriptor::GenericZt, 8, 2)) {
        let tw = Twist::of(&zt_alg());
        let b = tw.to_twisted(&f);
        prop_assert_eq!(tw.from_twisted(&b), f);
    }

    #[test]
    fn twisted_basis_roundtrip_with_h(f in xipoly(RingDescriptor::GenericZts, 6, 2)) {
        let tw = Twist::of(&TwistedAlgebra::generic_with_s());
        prop_assert_eq!(tw.from_twisted(&tw.to_twisted(&f)), f);
    }

    #[test]
    fn sigma_is_multiplicative_on_xi_polys(f in xipoly(RingDescriptor::GenericZt, 3, 2), g in xipoly(RingDescriptor::GenericZt, 3, 2)) {
        let alg = zt_alg();
        let lhs = sigma_xi(&alg, &(&f * &g), 1).unwrap();
        let rhs = &sigma_xi(&alg, &f, 1).unwrap() * &sigma_xi(&alg, &g, 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_leibniz(
        alg in select(vec![zt_alg(), TwistedAlgebra::generic_with_s(), TwistedAlgebra::polynomial(d("CycF:3"))]),
        a in prop::collection::vec(-5i64..=5, 0..6),
        b in prop::collection::vec(-5i64..=5, 0..6),
    ) {
        let (z1, z2) = (AElem::from_i64s(alg.ring(), &a), AElem::from_i64s(alg.ring(), &b));
        let lhs = alg.derive(&(&z1 * &z2));
        let rhs = &(&z1 * &alg.derive(&z2)) + &(&alg.sigma1(&z2) * &alg.derive(&z1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_leibniz(a in -4i64..=4, b in -4i64..=4, c in 1i64..=5) {
        let alg = TwistedAlgebra::laurent(d("CycF:3")).unwrap();
        let ring = alg.ring();
        let z1 = &AElem::x_pow(ring, a) + &AElem::x_pow(ring, b).scale(&RingElem::from_i64(ring, c));
        let z2 = AElem::x_pow(ring, b - a);
        let lhs = alg.derive(&(&z1 * &z2));
        let rhs = &(&z1 * &alg.derive(&z2)) + &(&alg.sigma1(&z2) * &alg.derive(&z1));
        prop_assert_eq!(lhs, rhs);
    }
}

fn xi_plus(tw: &Twist, n: usize) -> XiPoly {
    let ring = tw.ring();
    XiPoly::new(ring, vec![tw.y().scale(&tw.qc().int(n)), AElem::one(ring)])
}

#[test]
fn induction_formula() {
    for alg in [zt_alg(), TwistedAlgebra::generic_with_s()] {
        let tw = Twist::of(&alg);
        for n in 0..=10 {
            assert_eq!(tw.power(n + 1), &tw.power(n) * &xi_plus(&tw, n), "n = {n}");
        }
    }
}

#[test]
fn twisted_powers_are_iterated_sigma_products() {
    let alg = zt_alg();
    let tw = Twist::of(&alg);
    let ring = alg.ring();
    let xi = XiPoly::xi(ring);
    for n in 0..=6usize {
        let mut y_n = AElem::one(ring);
        let mut xi_n = XiPoly::one(ring);
        for i in 0..n {
            y_n = &y_n * &alg.sigma(&alg.y(), i as i64).unwrap();
            xi_n = &xi_n * &sigma_xi(&alg, &xi, i as i64).unwrap();
        }
        let e = (n * n.saturating_sub(1) / 2) as u64;
        assert_eq!(y_n, alg.y().pow(n as u64).scale(&alg.q().pow(e)), "y^({n})");
        assert_eq!(xi_n, tw.power(n), "ξ^({n})");
    }
}

#[test]
fn sigma_of_twisted_power() {
    let alg = zt_alg();
    let tw = Twist::of(&alg);
    let qc = alg.qc();
    for n in 0..=8usize {
        let lhs = sigma_xi(&alg, &tw.power(n), 1).unwrap();
        let mut rhs = XiPoly::zero(alg.ring());
        for i in 0..=n {
            let c = &qc.q_factorial(i) * &qc.binom(n, i);
            let term = tw.power(n - i).scale(&tw.y_pow(i).scale(&c));
            rhs = &rhs + &term;
        }
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn sigma_has_order_p_on_xi() {
    for p in [2u32, 3, 4, 5] {
        let alg = TwistedAlgebra::polynomial(RingDescriptor::CyclotomicField(p));
        let xi = XiPoly::xi(alg.ring());
        assert_eq!(sigma_xi(&alg, &xi, p as i64).unwrap(), xi, "p = {p}");
        assert_ne!(sigma_xi(&alg, &xi, 1).unwrap(), xi);
    }
}

fn zt_dp() -> DpRing {
    DpRing::standard(&zt_alg())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dp_ring_axioms(a in dp_elem(zt_dp(), 4, 6), b in dp_elem(zt_dp(), 4, 6), c in dp_elem(zt_dp(), 4, 6)) {
        prop_assert_eq!(dp_mul(&a, &b).unwrap(), dp_mul(&b, &a).unwrap());
        let l = dp_mul(&dp_mul(&a, &b).unwrap(), &c).unwrap();
        let r = dp_mul(&a, &dp_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let s = dp_mul(&a, &(&b + &c)).unwrap();
        prop_assert_eq!(s, &dp_mul(&a, &b).unwrap() + &dp_mul(&a, &c).unwrap());
    }

    #[test]
    fn sqform_symmetric(m in 0usize..=6, n in 0usize..=6, i in 0usize..=6) {
        let r = zt_dp();
        prop_assume!(i <= m.min(n));
        prop_assert_eq!(r.sq_coeff(m, n, i), r.sq_coeff(n, m, i));
    }

    #[test]
    fn dp_from_poly_multiplicative(f in xipoly(RingDescriptor::GenericZt, 4, 2), g in xipoly(RingDescriptor::GenericZt, 4, 2)) {
        let r = zt_dp();
        let lhs = dp_from_poly(&r, &(&f * &g), 8).unwrap();
        let rhs = dp_mul(&dp_from_poly(&r, &f, 8).unwrap(), &dp_from_poly(&r, &g, 8).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dp_sigma_endomorphism(a in dp_elem(zt_dp(), 4, 6), b in dp_elem(zt_dp(), 4, 6), n in 0usize..=4) {
        let lhs = dp_sigma(&dp_mul(&a, &b).unwrap(), 1).unwrap();
        let rhs = dp_mul(&dp_sigma(&a, 1).unwrap(), &dp_sigma(&b, 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(dp_sigma(&a, n).unwrap(), dp_sigma_iterated(&a, n).unwrap());
    }

    #[test]
    fn comultiplication_coassociative(a in dp_elem(zt_dp(), 7, 6)) {
        prop_assert_eq!(dp_comul_twice(&a, true), dp_comul_twice(&a, false));
    }

    #[test]
    fn pairing_duality(
        f in prop::collection::vec(aelem(RingDescriptor::GenericZt, 2), 0..=4),
        g in prop::collection::vec(aelem(RingDescriptor::GenericZt, 2), 0..=4),
        w in dp_elem(zt_dp(), 7, 6),
    ) {
        let ring = RingDescriptor::GenericZt;
        let (f, g) = (ThetaPoly::new(ring, f), ThetaPoly::new(ring, g));
        let lhs = pairing(&(&f * &g), &w).unwrap();
        let split = dp_comul(&w, TensorAction::Canonical, (3, 3)).unwrap();
        let mut rhs = AElem::zero(ring);
        for ((i, j), z) in split.terms() {
            rhs = &rhs + &(&(z * &f.coeff(i)) * &g.coeff(j));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn taylor_equalizer(p in 2u32..=5, exps in prop::collection::vec(0usize..=10, 0..4), cs in prop::collection::vec(1i64..=4, 4)) {
        let ring = RingDescriptor::CyclotomicField(p);
        let alg = TwistedAlgebra::polynomial(ring);
        let mut z = AElem::zero(ring);
        for (e, c) in exps.iter().zip(&cs) {
            z = &z + &AElem::x_pow(ring, *e as i64).scale(&RingElem::from_i64(ring, *c));
        }
        let t = taylor0(&alg, &z, 6).unwrap();
        let constant = DpRing::standard(&alg).constant(z.clone(), 6);
        prop_assert_eq!(t == constant, alg.derive(&z).is_zero());
    }
}

#[test]
fn comultiplication_multiplicative_on_indices() {
    let r = DpRing::standard(&TwistedAlgebra::generic_with_s());
    let (n, t) = (6, (3, 3));
    for a in 0..=3 {
        for b in 0..=3 - a {
            let prod = dp_comul(&dp_mul(&r.basis(a, n), &r.basis(b, n)).unwrap(), TensorAction::Taylor, t).unwrap();
            let da = dp_comul(&r.basis(a, n), TensorAction::Taylor, t).unwrap();
            let db = dp_comul(&r.basis(b, n), TensorAction::Taylor, t).unwrap();
            assert_eq!(da.mul(&db).unwrap(), prod, "δ(ξ^[{a}] ξ^[{b}])");
        }
    }
}

fn weyl_elem(alg: TwistedAlgebra, ops: usize) -> impl Strategy<Value = WeylElem> {
    let ring = alg.ring();
    prop::collection::vec(aelem(ring, 2), 0..=ops).prop_map(move |cs| WeylElem::new(&alg, cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weyl_associative(a in weyl_elem(zt_alg(), 2), b in weyl_elem(zt_alg(), 2), c in weyl_elem(zt_alg(), 2)) {
        let l = weyl_mul(&weyl_mul(&a, &b).unwrap(), &c).unwrap();
        let r = weyl_mul(&a, &weyl_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn weyl_action_is_a_module(a in weyl_elem(zt_alg(), 2), b in weyl_elem(zt_alg(), 2), z in aelem(RingDescriptor::GenericZt, 4)) {
        let lhs = weyl_apply(&weyl_mul(&a, &b).unwrap(), &z).unwrap();
        let rhs = weyl_apply(&a, &weyl_apply(&b, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn p_curvature_multiplicative(p in 2u32..=5, a in 0i64..=3, i in 0usize..=2, b in 0i64..=3, j in 0usize..=2) {
        let ring = RingDescriptor::CyclotomicField(p);
        let alg = TwistedAlgebra::polynomial(ring);
        let f = ThetaPoly::monomial(AElem::x_pow(ring, a), i);
        let g = ThetaPoly::monomial(AElem::x_pow(ring, b), j);
        let lhs = p_curvature(&alg, &(&f * &g)).unwrap();
        let rhs = weyl_mul(&p_curvature(&alg, &f).unwrap(), &p_curvature(&alg, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_roundtrip(ring in select(all_rings()), c in coeffs(), z in prop::collection::vec(-5i64..=5, 0..5)) {
        let c = RingElem::sample(ring, &c);
        prop_assert_eq!(decode_ring_elem(&encode_ring_elem(&c)).unwrap(), c);
        let z = AElem::from_i64s(ring, &z);
        prop_assert_eq!(decode_aelem(&encode_aelem(&z)).unwrap(), z.clone());
        let r = DpRing::standard(&TwistedAlgebra::polynomial(ring));
        let w = r.elem(4, vec![z.clone(), AElem::zero(ring), z]);
        prop_assert_eq!(decode_dp_elem(&encode_dp_elem(&w)).unwrap(), w);
    }
}

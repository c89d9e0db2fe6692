//! Property tests for finite fields, `A = F_q[t]`, counting functions and twisted polynomials.

use drinfeld::arith::{gaussian_binomial, zeta_partial};
use drinfeld::field::embed::embed;
use drinfeld::field::{FiniteField, Gf, GfExt};
use drinfeld::poly_a::monic_irreducibles;
use drinfeld::skew::{kernel_basis, splitting_degree, SkewPoly};
use drinfeld::{PolyA, PrimeP};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn field_cfg() -> impl Strategy<Value = (u32, usize)> {
    prop_oneof![Just((2u32, 1usize)), Just((2, 3)), Just((2, 6)), Just((3, 1)), Just((3, 2)), Just((3, 4)), Just((5, 2))]
}

fn poly_a(q: u32, max_deg: usize) -> impl Strategy<Value = PolyA> {
    proptest::collection::vec(0..q, 0..=max_deg + 1).prop_map(move |c| PolyA::new(q, c))
}

/// Additive polynomial `sum c_i x^{p^i}` evaluated by repeated Frobenius.
fn additive_eval(f: &Gf, g: &SkewPoly<u32>, x: u32) -> u32 {
    let mut acc = 0;
    let mut pw = x;
    for c in &g.c {
        acc = f.add(&acc, &f.mul(c, &pw));
        pw = f.frobenius(&pw);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((p, n) in field_cfg(), seed in any::<u64>()) {
        let f = Gf::new(p, n);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for _ in 0..50 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            if !f.is_zero(&a) {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                prop_assert_eq!(f.pow(&a, f.size() as u64 - 1), f.one());
            }
            prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        }
    }

    #[test]
    fn extension_axioms(seed in any::<u64>(), m in 1usize..4) {
        let base = Gf::new(2, 2);
        let e = GfExt::new(&base, m);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for _ in 0..30 {
            let (a, b, c) = (e.random(&mut rng), e.random(&mut rng), e.random(&mut rng));
            prop_assert_eq!(e.mul(&a, &e.add(&b, &c)), e.add(&e.mul(&a, &b), &e.mul(&a, &c)));
            if !e.is_zero(&a) {
                prop_assert_eq!(e.mul(&a, &e.inv(&a).unwrap()), e.one());
            }
            let x = base.random(&mut rng);
            prop_assert_eq!(e.project(&e.lift(&x)), Some(x));
        }
    }

    #[test]
    fn embeddings_commute_with_frobenius(seed in any::<u64>(), (p, small, k) in prop_oneof![Just((2u32, 2usize, 3usize)), Just((2, 3, 2)), Just((3, 2, 2)), Just((2, 1, 5))]) {
        let (s, b) = (Gf::new(p, small), Gf::new(p, small * k));
        let e = embed(&s, &b);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for _ in 0..20 {
            let (x, y) = (s.random(&mut rng), s.random(&mut rng));
            prop_assert_eq!(e.apply(s.frobenius(&x)), b.frobenius(&e.apply(x)));
            prop_assert_eq!(e.apply(s.mul(&x, &y)), b.mul(&e.apply(x), &e.apply(y)));
            prop_assert_eq!(e.apply(s.add(&x, &y)), b.add(&e.apply(x), &e.apply(y)));
        }
    }

    #[test]
    fn degree_and_reduction_are_multiplicative(q in prop_oneof![Just(2u32), Just(3)], a in 0u64..1_000_000, b in 0u64..1_000_000, pi in 0usize..4) {
        let digits = |mut x: u64| { let mut c = vec![]; while x > 0 { c.push((x % q as u64) as u32); x /= q as u64; } PolyA::new(q, c) };
        let (a, b) = (digits(a), digits(b));
        let ab = a.mul(&b);
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(ab.deg(), a.deg() + b.deg());
        }
        let ps: Vec<PolyA> = (1..=3).flat_map(|d| monic_irreducibles(q, d)).collect();
        let p = PrimeP::new(ps[pi % ps.len()].clone()).unwrap();
        let f = p.residue_field();
        prop_assert_eq!(p.reduce(&ab), f.mul(&p.reduce(&a), &p.reduce(&b)));
        prop_assert_eq!(p.reduce(&a.add(&b)), f.add(&p.reduce(&a), &p.reduce(&b)));
    }

    #[test]
    fn division_roundtrip(q in prop_oneof![Just(2u32), Just(3), Just(5)], a in poly_a(5, 8), b in poly_a(5, 4)) {
        let a = PolyA::new(q, a.coeffs().iter().map(|c| c % q).collect());
        let b = PolyA::new(q, b.coeffs().iter().map(|c| c % q).collect());
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divrem(&b);
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.is_zero() || rem.deg() < b.deg());
    }

    #[test]
    fn gaussian_binomial_symmetry(r in 0u32..7, j in 0u32..7, qq in 2u64..10) {
        prop_assume!(j <= r);
        prop_assert_eq!(gaussian_binomial(r, j, qq), gaussian_binomial(r, r - j, qq));
    }
}

/// `|zeta(-i)|` with the Euler factor at `v` removed, from the generating series of monic
/// polynomials coprime to `v` counted by degree, continued to `u = q^i`.
fn zeta_by_counting(q: u32, v: &PolyA, i: u32) -> BigRational {
    let dv = v.deg();
    let top = dv + 2;
    let mut counts = vec![0i64; top + 1];
    for d in 0..=top {
        let total = (q as u64).pow(d as u32);
        for code in 0..total {
            let mut c: Vec<u32> = (0..d).map(|k| ((code / (q as u64).pow(k as u32)) % q as u64) as u32).collect();
            c.push(1);
            let a = PolyA::new(q, c);
            if !a.rem(v).is_zero() {
                counts[d] += 1;
            }
        }
    }
    // counts[d] = q counts[d-1] once d > dv, so the series is N(u)/(1 - q u) with deg N <= dv
    for d in dv + 1..=top {
        assert_eq!(counts[d], q as i64 * counts[d - 1]);
    }
    let u = BigInt::from(q).pow(i);
    let mut num = BigInt::from(0);
    for d in 0..=dv {
        let n_d = counts[d] - if d > 0 { q as i64 * counts[d - 1] } else { 0 };
        num += BigInt::from(n_d) * u.pow(d as u32);
    }
    let den = BigInt::from(1) - BigInt::from(q) * u;
    let z = BigRational::new(num, den);
    if z < BigRational::from_integer(0.into()) { -z } else { z }
}

#[test]
fn zeta_matches_counting_series() {
    for q in [2u32, 3] {
        for dv in 1..=3usize {
            let v = monic_irreducibles(q, dv).into_iter().next().unwrap();
            for i in 1..=6 {
                assert_eq!(zeta_partial(q as u64, dv as u32, i), zeta_by_counting(q, &v, i), "q={q} deg v={dv} i={i}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn skew_ring_laws(
        (p, n) in prop_oneof![Just((2u32, 4usize)), Just((3, 2)), Just((2, 3))],
        a in proptest::collection::vec(any::<u32>(), 0..6),
        b in proptest::collection::vec(any::<u32>(), 0..6),
        c in proptest::collection::vec(any::<u32>(), 0..6),
    ) {
        let f = Gf::new(p, n);
        let mk = |v: &[u32]| SkewPoly::new(&f, v.iter().map(|x| x % f.size()).collect());
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(a.mul(&f, &b).mul(&f, &c), a.mul(&f, &b.mul(&f, &c)));
        prop_assert_eq!(a.mul(&f, &b.add(&f, &c)), a.mul(&f, &b).add(&f, &a.mul(&f, &c)));
        prop_assert_eq!(b.add(&f, &c).mul(&f, &a), b.mul(&f, &a).add(&f, &c.mul(&f, &a)));
        prop_assert_eq!(a.mul(&f, &b).partial(&f), f.mul(&a.partial(&f), &b.partial(&f)));
        for x in [1u32, f.generator(), f.size() - 1] {
            prop_assert_eq!(additive_eval(&f, &a.mul(&f, &b), x), additive_eval(&f, &a, additive_eval(&f, &b, x)));
            prop_assert_eq!(a.mul(&f, &b).eval(&f, &x), a.eval(&f, &b.eval(&f, &x)));
        }
        if !b.is_zero() {
            let (quo, rem) = a.right_divmod(&f, &b).unwrap();
            prop_assert_eq!(quo.mul(&f, &b).add(&f, &rem), a.clone());
            prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        }
    }

    #[test]
    fn kernel_fills_splitting_field(c in proptest::collection::vec(0u32..4, 1..4), c0 in 1u32..4) {
        let base = Gf::new(2, 2);
        let mut coeffs = vec![c0];
        coeffs.extend(c);
        let g = SkewPoly::new(&base, coeffs);
        let d = g.degree().unwrap();
        let m = splitting_degree(&base, &g, 24).unwrap();
        let ext = GfExt::new(&base, m);
        let lifted = g.map(|x| ext.lift(x));
        let ker = kernel_basis(&ext, &lifted);
        // F_2-dimension d gives 2^d = q^{deg g} roots for q = 2
        prop_assert_eq!(ker.len(), d);
        for x in &ker {
            prop_assert!(ext.is_zero(&lifted.eval(&ext, x)));
        }
    }
}

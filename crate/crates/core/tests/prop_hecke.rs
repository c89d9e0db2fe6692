//! Property tests for the local spherical Hecke algebra and Hecke operators on forms.

use drinfeld::field::FiniteField;
use drinfeld::linalg;
use drinfeld::moduli::forms::{form_space_basis, hasse_invariant, GradedForm};
use drinfeld::moduli::hecke::{hecke_matrix, hecke_on_form, point_budget, HeckeData};
use drinfeld::moduli::ModuliSpace;
use drinfeld::spherical::oracle::lattice_count;
use drinfeld::spherical::{DoubleCoset, HeckeElement, SphericalAlgebra};
use drinfeld::PrimeP;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn algebra(q_w: u32, r: usize) -> &'static SphericalAlgebra {
    static ALGS: OnceLock<Vec<((u32, usize), SphericalAlgebra)>> = OnceLock::new();
    let algs = ALGS.get_or_init(|| {
        [(2u32, 2usize), (3, 2), (2, 3), (3, 3)].into_iter().map(|k| (k, SphericalAlgebra::new(k.0, k.1).unwrap())).collect()
    });
    &algs.iter().find(|(k, _)| *k == (q_w, r)).unwrap().1
}

fn combination(alg: &SphericalAlgebra, coeffs: &[i8]) -> HeckeElement {
    let basis = alg.span_basis(2);
    let mut h = HeckeElement::default();
    for (mu, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            h.add_term(DoubleCoset::new(mu.clone()).unwrap(), c as i128);
        }
    }
    h
}

fn shifted(h: &HeckeElement, s: i64) -> HeckeElement {
    let mut out = HeckeElement::default();
    for (d, c) in &h.terms {
        out.add_term(DoubleCoset::new(d.mu.iter().map(|m| m + s).collect()).unwrap(), *c);
    }
    out
}

#[test]
fn coset_counts_match_lattice_oracle() {
    for r in 1..=3usize {
        for q_w in [2u32, 3] {
            let alg = SphericalAlgebra::new(q_w, r).unwrap();
            for mu in alg.span_basis(3) {
                let reps = alg.coset_reps(&mu).unwrap().len() as u64;
                assert_eq!(reps, lattice_count(&mu, q_w).unwrap(), "r={r} q_w={q_w} mu={mu:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn convolution_is_associative_and_commutative(
        (q_w, r) in prop_oneof![Just((2u32, 2usize)), Just((3, 2)), Just((2, 3)), Just((3, 3))],
        a in proptest::collection::vec(-2i8..3, 4),
        b in proptest::collection::vec(-2i8..3, 4),
        c in proptest::collection::vec(-2i8..3, 4),
    ) {
        let alg = algebra(q_w, r);
        let (a, b, c) = (combination(alg, &a), combination(alg, &b), combination(alg, &c));
        let ab = alg.convolve(&a, &b).unwrap();
        prop_assert_eq!(&ab, &alg.convolve(&b, &a).unwrap());
        prop_assert_eq!(alg.convolve(&ab, &c).unwrap(), alg.convolve(&a, &alg.convolve(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(alg.mass(&ab).unwrap(), alg.mass(&a).unwrap() * alg.mass(&b).unwrap());
    }

    #[test]
    fn central_shifts_move_the_support(
        (q_w, r) in prop_oneof![Just((2u32, 2usize)), Just((3, 2)), Just((2, 3))],
        a in proptest::collection::vec(-2i8..3, 4),
        b in proptest::collection::vec(-2i8..3, 4),
        s in 0i64..3,
        t in 0i64..3,
    ) {
        let alg = algebra(q_w, r);
        let (a, b) = (combination(alg, &a), combination(alg, &b));
        let lhs = alg.convolve(&shifted(&a, s), &shifted(&b, t)).unwrap();
        prop_assert_eq!(lhs, shifted(&alg.convolve(&a, &b).unwrap(), s + t));
    }
}

fn space() -> ModuliSpace {
    ModuliSpace::at_place(2, 2, &PrimeP::parse(2, "t+1").unwrap(), 6).unwrap()
}

#[test]
fn hecke_operators_commute_on_forms() {
    let s = space();
    let f = s.field();
    let ws: Vec<PrimeP> = ["t^2+t+1", "t^3+t+1"].iter().map(|w| PrimeP::parse(2, w).unwrap()).collect();
    for k in 1..=3 {
        let basis = form_space_basis(&s, k, 3);
        let mats: Vec<_> = ws
            .iter()
            .flat_map(|w| (1..=2).map(move |j| (w, j)))
            .map(|(w, j)| {
                let data = HeckeData::new(&s, w, j, point_budget(basis.dim()), 7).unwrap();
                hecke_matrix(&s, &basis, &data).unwrap()
            })
            .collect();
        for a in &mats {
            for b in &mats {
                assert_eq!(linalg::mul(f, a, b), linalg::mul(f, b, a), "weight {k}");
            }
        }
    }
}

#[test]
fn hasse_multiplication_is_hecke_equivariant() {
    let s = space();
    let place = s.place().unwrap().clone();
    let h = hasse_invariant(&s, place.poly(), 1).unwrap();
    assert_eq!(h.weight, 1);
    let w = PrimeP::parse(2, "t^2+t+1").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let pts: Vec<_> = (0..12).map(|_| s.random_point(&mut rng)).collect();
    for k in 1..=2 {
        let basis = form_space_basis(&s, k, 3);
        let big = form_space_basis(&s, k + h.weight, 3);
        for mono in basis.monomials.iter().take(4) {
            let g = GradedForm::monomial(mono.clone());
            for j in 1..=2 {
                let t_g = hecke_on_form(&s, &g, &w, j, &basis, 11).unwrap();
                let t_hg = hecke_on_form(&s, &h.mul(&g), &w, j, &big, 11).unwrap();
                assert_eq!(t_hg.weight, k + h.weight);
                for x in &pts {
                    let lhs = t_hg.eval(&s, x).unwrap();
                    let rhs = s.field().mul(&h.eval(&s, x).unwrap(), &t_g.eval(&s, x).unwrap());
                    assert_eq!(lhs, rhs, "T_(w,{j}) at weight {k}");
                }
            }
        }
    }
}

//! Supersingular Drinfeld modules in characteristic `P`.
//!
//! Every supersingular module of rank `r` has a model over `F_{q_v^r}` whose Frobenius
//! `tau^{r deg P}` equals `phi_P`; these canonical models are found by an exhaustive scan
//! of coefficient tuples, and completeness is certified on every run by the mass formula.

pub mod leveled;

use crate::arith::{gl_order, mass_closed_form, rational_string};
use crate::drinfeld::{frobenius_charpoly_linear, frobenius_power_in_a, DrinfeldModule, ModuleRecord};
use crate::error::{Error, Result};
use crate::field::{embed::embed, FiniteField, Gf};
use crate::poly_a::{PolyA, PrimeP};
use crate::skew::SkewPoly;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use leveled::{leveled_ss_set, LeveledPoint, SSLeveledSet};

/// One `F-bar`-isomorphism class, represented by its normalized canonical model.
#[derive(Clone, Debug)]
pub struct SSClass {
    pub index: usize,
    pub module: DrinfeldModule<Gf>,
    pub aut_order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SSClassRecord {
    pub index: usize,
    pub module: ModuleRecord,
    pub aut_order: u64,
}

impl SSClass {
    pub fn record(&self) -> SSClassRecord {
        SSClassRecord { index: self.index, module: self.module.to_record(), aut_order: self.aut_order }
    }
}

/// The search field `F_{q_v^r}` and the image of `t` in it.
pub fn search_field(r: usize, place: &PrimeP) -> (Gf, u32) {
    let f = Gf::new(place.q(), place.degree() * r);
    let gamma = embed(place.residue_field(), &f).apply(place.gamma_t());
    (f, gamma)
}

/// `sum 1/#Aut` over the classes.
pub fn class_mass(classes: &[SSClass]) -> BigRational {
    classes.iter().fold(BigRational::zero(), |acc, c| acc + BigRational::new(BigInt::one(), BigInt::from(c.aut_order)))
}

pub fn mass(r: usize, place: &PrimeP) -> BigRational {
    mass_closed_form(place.q() as u64, r as u32, place.degree() as u32)
}

fn is_canonical(phi: &DrinfeldModule<Gf>, place: &PrimeP) -> bool {
    let f = phi.field();
    phi.phi_of(place.poly()) == SkewPoly::monomial(f, f.one(), place.degree() * phi.rank())
}

/// Deterministic representative among the `F^x`-scalings that stay canonical: smallest
/// discrete log of `g_r`, then smallest coefficient tuple.
fn normalize(phi: &DrinfeldModule<Gf>, place: &PrimeP) -> Option<DrinfeldModule<Gf>> {
    let f = phi.field();
    let r = phi.rank();
    f.nonzero_elements()
        .into_iter()
        .map(|c| phi.scale_by(c))
        .filter(|m| is_canonical(m, place))
        .min_by_key(|m| (f.log(*m.g(r)).unwrap(), m.coeffs().to_vec()))
}

/// A canonical model of a supersingular module over `F_{q_v^r}`: its Frobenius equals `phi_P`.
pub fn canonical_model(phi: &DrinfeldModule<Gf>, place: &PrimeP) -> Result<DrinfeldModule<Gf>> {
    if !phi.is_supersingular(place)? {
        return Err(Error::pre("module is not supersingular"));
    }
    if phi.field().degree() != place.degree() * phi.rank() {
        return Err(Error::pre("module must be given over F_{q_v^r}"));
    }
    normalize(phi, place).ok_or_else(|| Error::consistency("no canonical model among the F-scalings"))
}

/// All `F-bar`-isomorphism classes of supersingular rank-`r` modules in characteristic
/// `P`, certified by the mass formula. `cap` bounds the number of scanned tuples.
pub fn enumerate_ss(r: usize, place: &PrimeP, cap: u64) -> Result<Vec<SSClass>> {
    if r == 0 {
        return Err(Error::pre("rank must be positive"));
    }
    let (f, gamma) = search_field(r, place);
    let size = f.size() as u64;
    let total = size
        .checked_pow(r as u32 - 1)
        .and_then(|x| x.checked_mul(size - 1))
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::cap(format!("scan of {size}^{r} tuples exceeds the cap {cap}")))?;
    log::info!("scanning {total} coefficient tuples over F_{}^{}", f.p(), f.degree());
    let hits = crate::par::map_range(0..total, |mut code| {
        let mut coeffs = Vec::with_capacity(r);
        for _ in 1..r {
            coeffs.push((code % size) as u32);
            code /= size;
        }
        coeffs.push(f.exp(code));
        let phi = DrinfeldModule::new(&f, gamma, coeffs).expect("nonzero top coefficient");
        let ss = phi.is_supersingular(place).expect("characteristic P");
        ss.then(|| (is_canonical(&phi, place), phi))
    });
    let all: Vec<(bool, DrinfeldModule<Gf>)> = hits.into_iter().flatten().collect();
    let mut reps: Vec<DrinfeldModule<Gf>> = Vec::new();
    for (canon, phi) in &all {
        if *canon && !reps.iter().any(|m| m.is_isomorphic_over_closure(phi)) {
            reps.push(normalize(phi, place).expect("canonical module normalizes"));
        }
    }
    for (_, phi) in &all {
        if !reps.iter().any(|m| m.is_isomorphic_over_closure(phi)) {
            return Err(Error::consistency("supersingular module without a canonical model in the scan"));
        }
    }
    reps.sort_by_key(|m| (f.log(*m.g(r)).unwrap(), m.coeffs().to_vec()));
    let classes: Vec<SSClass> = reps
        .into_iter()
        .enumerate()
        .map(|(index, module)| {
            let aut_order = module.automorphism_order();
            SSClass { index, module, aut_order }
        })
        .collect();
    log::info!("{} supersingular classes", classes.len());
    let found = class_mass(&classes);
    let expected = mass(r, place);
    if found != expected {
        return Err(Error::consistency(format!(
            "enumerated mass {} differs from the closed form {}",
            rational_string(&found),
            rational_string(&expected)
        )));
    }
    Ok(classes)
}

/// The two supersingularity tests on a module in characteristic `P`: height `r` of `phi_P`,
/// and some power of the Frobenius lying in `A` (from the Frobenius characteristic
/// polynomial over the base field).
pub fn supersingularity_tests(phi: &DrinfeldModule<Gf>, place: &PrimeP) -> Result<(bool, bool)> {
    let by_height = phi.is_supersingular(place)?;
    let cp = frobenius_charpoly_linear(phi)?;
    let by_frobenius = frobenius_power_in_a(&cp, phi.field().degree(), place.poly()).holds();
    Ok((by_height, by_frobenius))
}

/// `#GL_r(A/n)`.
pub fn gl_order_mod(r: usize, n: &PolyA) -> BigUint {
    let q = n.q() as u64;
    let (_, factors) = n.factor();
    factors.iter().fold(BigUint::one(), |acc, (p, e)| {
        let qq = q.pow(p.deg() as u32);
        acc * gl_order(r as u32, qq) * BigUint::from(qq).pow((r * r) as u32 * (e - 1))
    })
}

/// `#GL_r(A/n) (q_v^r - 1)/(q - 1) prod_{i<r} |zeta(-i)|`, which must be an integer.
pub fn dim_formula(r: usize, place: &PrimeP, n: &PolyA) -> Result<BigUint> {
    check_level(place, n)?;
    let qv = BigInt::from(place.norm());
    let x = BigRational::from_integer(BigInt::from(gl_order_mod(r, n))) * mass(r, place) * BigRational::from_integer(qv.pow(r as u32) - 1);
    if !x.is_integer() {
        return Err(Error::consistency(format!("dimension formula gives the non-integer {}", rational_string(&x))));
    }
    Ok(x.to_integer().to_biguint().expect("positive"))
}

pub(crate) fn check_level(place: &PrimeP, n: &PolyA) -> Result<()> {
    if n.is_zero() || n.is_unit() {
        return Err(Error::pre("level must be a nonzero nonunit"));
    }
    if !n.gcd(place.poly()).is_unit() {
        return Err(Error::pre(format!("level {n} is not coprime to {}", place.poly())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn place(q: u32, s: &str) -> PrimeP {
        PrimeP::parse(q, s).unwrap()
    }

    #[test]
    fn rank_two_at_t() {
        let classes = enumerate_ss(2, &place(2, "t"), 1 << 20).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].module.coeffs(), &[0, 1]);
        assert_eq!(classes[0].aut_order, 3);
    }

    #[test]
    fn masses() {
        assert_eq!(rational_string(&mass(2, &place(2, "t"))), "1/3");
        assert_eq!(rational_string(&mass(2, &place(2, "t^2+t+1"))), "1/1");
        assert_eq!(rational_string(&mass(3, &place(2, "t"))), "1/7");
        assert_eq!(rational_string(&mass(2, &place(3, "t"))), "1/8");
        for (q, r, p) in [(2u32, 3usize, "t"), (3, 2, "t"), (2, 2, "t^2+t+1")] {
            let classes = enumerate_ss(r, &place(q, p), 1 << 22).unwrap();
            for c in &classes {
                assert!(c.module.is_supersingular(&place(q, p)).unwrap());
            }
        }
    }

    #[test]
    fn canonical_models() {
        let p = place(2, "t+1");
        let f = Gf::new(2, 1);
        let m = DrinfeldModule::new(&f, 1, vec![1]).unwrap();
        let c = canonical_model(&m, &p).unwrap();
        assert_eq!(c.phi_of(p.poly()), SkewPoly::monomial(&f, 1, 1));
    }

    #[test]
    fn criteria_agree_on_classes() {
        let p = place(2, "t^2+t+1");
        for c in enumerate_ss(2, &p, 1 << 20).unwrap() {
            assert_eq!(supersingularity_tests(&c.module, &p).unwrap(), (true, true));
        }
        let (f, gamma) = search_field(2, &p);
        let mut ordinary = 0;
        for g1 in f.nonzero_elements() {
            let phi = DrinfeldModule::new(&f, gamma, vec![g1, 1]).unwrap();
            let (h, fr) = supersingularity_tests(&phi, &p).unwrap();
            assert_eq!(h, fr);
            ordinary += usize::from(!h);
        }
        assert!(ordinary > 0);
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_formula(2, &place(2, "t"), &PolyA::parse(2, "t+1").unwrap()).unwrap(), BigUint::from(6u32));
        assert_eq!(dim_formula(1, &place(2, "t"), &PolyA::parse(2, "t+1").unwrap()).unwrap(), BigUint::from(1u32));
        assert!(dim_formula(2, &place(2, "t"), &PolyA::t(2)).is_err());
    }
}

//! Drinfeld modules over the valued field `F_{q^N}(pi)` and their stable models.

use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf};
use crate::ratfun::{RatFun, RatFunField};
use crate::skew::{SkewPoly, TwistRing};
use num_integer::Integer;
use rand::Rng;

/// `phi_t = gamma + a_1 tau + ... + a_r tau^r` with coefficients in `F_{q^N}(pi)`.
#[derive(Clone, Debug)]
pub struct ValuedModule {
    pub field: RatFunField,
    pub gamma: RatFun,
    pub coeffs: Vec<RatFun>,
}

impl ValuedModule {
    pub fn new(field: &RatFunField, gamma: RatFun, coeffs: Vec<RatFun>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if !field.is_zero(c) => Ok(ValuedModule { field: field.clone(), gamma, coeffs }),
            _ => Err(Error::pre("valued module needs rank >= 1 with nonzero top coefficient")),
        }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// `pi`-adic valuations of `a_1..a_r` (`None` for zero coefficients).
    pub fn valuations(&self) -> Vec<Option<i64>> {
        self.coeffs.iter().map(|a| self.field.valuation(a)).collect()
    }

    pub fn phi_t(&self) -> SkewPoly<RatFun> {
        let mut c = vec![self.gamma.clone()];
        c.extend(self.coeffs.iter().cloned());
        SkewPoly::new(&self.field, c)
    }

    /// A random module of rank `r` whose coefficients are `c pi^k u` with `|k| <= spread`,
    /// `u` a random unit of small degree.
    pub fn random<R: Rng + ?Sized>(base: &Gf, r: usize, spread: i64, rng: &mut R) -> Self {
        let field = RatFunField::new(base);
        let unit = |rng: &mut R| {
            let len = rng.gen_range(1..=3);
            let mut num: Vec<u32> = (0..len).map(|_| base.random(rng)).collect();
            num[0] = base.random_nonzero(rng);
            let mut den: Vec<u32> = (0..len).map(|_| base.random(rng)).collect();
            den[0] = base.random_nonzero(rng);
            field.make(num, den)
        };
        let coeffs: Vec<RatFun> = (1..=r)
            .map(|i| {
                if i < r && rng.gen_bool(0.25) {
                    return field.r_zero();
                }
                let k = rng.gen_range(-spread..=spread);
                let u = unit(rng);
                field.r_mul(&u, &field.monomial(1, k))
            })
            .collect();
        let gamma = unit(rng);
        ValuedModule { field, gamma, coeffs }
    }
}

/// Stable (integral, with a unit coefficient) model over `pi = pi'^e`.
#[derive(Clone, Debug)]
pub struct StableModel {
    /// Ramification index.
    pub e: usize,
    /// Index realizing the minimum.
    pub i0: usize,
    /// `nu = min v(a_i)/(q^i - 1)` as a reduced fraction.
    pub nu: (i64, i64),
    /// Conjugating scalar `c = pi'^{-e nu}`.
    pub c: RatFun,
    /// The model `c^{-1} phi c` over `F_{q^N}(pi')`.
    pub model: ValuedModule,
}

/// Computes the stable model and checks `c phi'_t = phi_t c` exactly.
pub fn stable_model(phi: &ValuedModule) -> Result<StableModel> {
    let k = &phi.field;
    let q = k.base().p() as i64;
    if phi.coeffs.is_empty() || phi.coeffs.iter().all(|a| k.is_zero(a)) {
        return Err(Error::pre("rank 0 module has no stable model"));
    }
    // minimize v(a_i)/(q^i-1) exactly
    let mut best: Option<(i64, i64, usize)> = None;
    for (idx, a) in phi.coeffs.iter().enumerate() {
        let Some(v) = k.valuation(a) else { continue };
        let i = idx + 1;
        let den = q.pow(i as u32) - 1;
        let better = match best {
            None => true,
            Some((bn, bd, _)) => (v as i128) * (bd as i128) < (bn as i128) * (den as i128),
        };
        if better {
            best = Some((v, den, i));
        }
    }
    let (vn, vd, i0) = best.expect("nonzero coefficient");
    let g = vn.gcd(&vd);
    let nu = (vn / g, vd / g);
    let e = nu.1 as usize;
    let shift = -nu.0; // c = pi'^{-e nu} = pi'^{-nu.0}
    let c = k.monomial(1, shift);
    let coeffs: Vec<RatFun> = phi
        .coeffs
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let i = idx + 1;
            let scale = k.pow_signed(&c, q.pow(i as u32) - 1).expect("nonzero");
            k.r_mul(&k.ramify(a, e), &scale)
        })
        .collect();
    let model = ValuedModule { field: k.clone(), gamma: k.ramify(&phi.gamma, e), coeffs };
    for (idx, a) in model.coeffs.iter().enumerate() {
        match k.valuation(a) {
            Some(v) if v < 0 => return Err(Error::consistency(format!("coefficient {} not integral", idx + 1))),
            Some(v) if idx + 1 == i0 && v != 0 => {
                return Err(Error::consistency("distinguished coefficient is not a unit"));
            }
            _ => {}
        }
    }
    let ramified = ValuedModule {
        field: k.clone(),
        gamma: k.ramify(&phi.gamma, e),
        coeffs: phi.coeffs.iter().map(|a| k.ramify(a, e)).collect(),
    };
    let lhs = SkewPoly::constant(k, c.clone()).mul(k, &model.phi_t());
    let rhs = ramified.phi_t().mul(k, &SkewPoly::constant(k, c.clone()));
    if lhs != rhs {
        return Err(Error::consistency("stable model is not conjugate to the input"));
    }
    Ok(StableModel { e, i0, nu, c, model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn unit_first_coefficient() {
        let k = RatFunField::new(&Gf::prime(2));
        let phi = ValuedModule::new(&k, k.r_one(), vec![k.monomial(1, -1), k.r_one()]).unwrap();
        let m = stable_model(&phi).unwrap();
        assert_eq!((m.e, m.i0, m.nu), (1, 1, (-1, 1)));
        assert_eq!(m.c, k.monomial(1, 1));
        assert_eq!(m.model.coeffs, vec![k.r_one(), k.monomial(1, 3)]);
    }

    #[test]
    fn already_stable() {
        let k = RatFunField::new(&Gf::prime(3));
        let a = k.r_add(&k.r_one(), &k.monomial(1, 1));
        let phi = ValuedModule::new(&k, k.r_one(), vec![k.monomial(2, 2), a.clone()]).unwrap();
        let m = stable_model(&phi).unwrap();
        assert_eq!((m.e, m.c.clone()), (1, k.r_one()));
        assert_eq!(m.model.coeffs, phi.coeffs);
    }

    #[test]
    fn ramified_by_three() {
        let k = RatFunField::new(&Gf::prime(2));
        let phi = ValuedModule::new(&k, k.r_one(), vec![k.monomial(1, 1), k.monomial(1, 1)]).unwrap();
        let m = stable_model(&phi).unwrap();
        assert_eq!((m.e, m.i0, m.nu), (3, 2, (1, 3)));
        assert_eq!(m.c, k.monomial(1, -1));
        assert_eq!(m.model.coeffs, vec![k.monomial(1, 2), k.r_one()]);
    }

    #[test]
    fn random_models_are_stable() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2u32, 3] {
            let base = Gf::new(p, 2);
            for r in 1..=3 {
                for _ in 0..5 {
                    let phi = ValuedModule::random(&base, r, 4, &mut rng);
                    let m = stable_model(&phi).unwrap();
                    assert_ne!(m.e as i64 % p as i64, 0);
                    assert_eq!(((p as i64).pow(m.i0 as u32) - 1) % m.e as i64, 0);
                }
            }
        }
    }
}

//! The moduli space of rank-`r` Drinfeld modules with level-`(t)` structure.
//!
//! A point is an injective `F_q`-linear map `lambda: F_q^r -> L`, recorded by the images of
//! the standard basis and taken up to `L^x`-scaling. The attached module has kernel
//! `lambda(F_q^r)` and derivative `gamma(t)`:
//! `phi_t(X) = gamma(t) X prod_{v != 0} (1 - X/lambda(v))`.
//! Weight-`k` forms are degree-`k` polynomials in the functions `u_v = 1/lambda(v)`.

pub mod boundary;
pub mod forms;
pub mod hecke;
pub mod strata;

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{embed::embed, FiniteField, Gf};
use crate::poly_a::{PolyA, PrimeP};
use crate::skew::from_kernel;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use boundary::{limit_module, DegenerationPath};
pub use forms::{coefficient_form, form_space_basis, hasse_invariant, FormBasis, GradedForm};
pub use hecke::{hecke_matrix, hecke_on_form, HeckeData};
pub use strata::{ss_points_level_t, stratum_of_point};

/// The coordinate field `L`, the value `gamma(t) in L^x`, and the indexing of `F_q^r`.
#[derive(Clone, Debug)]
pub struct ModuliSpace {
    q: u32,
    r: usize,
    field: Gf,
    gamma_t: u32,
    /// Nonzero vectors of `F_q^r` ordered by `sum c_i q^i`.
    vectors: Vec<Vec<u32>>,
    /// The place, for spaces in characteristic `P`.
    place: Option<PrimeP>,
}

/// A point `lambda(e_1), ..., lambda(e_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuliPoint {
    pub lambda: Vec<u32>,
}

impl ModuliSpace {
    /// Space over `field` with generic characteristic data `gamma(t) = gamma_t != 0`.
    pub fn new(q: u32, r: usize, field: &Gf, gamma_t: u32) -> Result<Self> {
        if field.p() != q {
            return Err(Error::pre("coordinate field must have characteristic q"));
        }
        if r == 0 {
            return Err(Error::pre("rank must be positive"));
        }
        if field.is_zero(&gamma_t) {
            return Err(Error::pre("gamma(t) = 0: level (t) needs t invertible"));
        }
        let n = (q as usize).pow(r as u32);
        let vectors = (1..n)
            .map(|mut c| {
                (0..r)
                    .map(|_| {
                        let d = (c % q as usize) as u32;
                        c /= q as usize;
                        d
                    })
                    .collect()
            })
            .collect();
        Ok(ModuliSpace { q, r, field: field.clone(), gamma_t, vectors, place: None })
    }

    /// Space in characteristic `P` over `F_{q^n}` (`deg P | n`): `gamma(t)` is the smallest
    /// root of `P` in `F_{q^{deg P}}`, embedded into `F_{q^n}`.
    pub fn at_place(q: u32, r: usize, place: &PrimeP, n: usize) -> Result<Self> {
        if place.q() != q {
            return Err(Error::pre("place over a different q"));
        }
        if n % place.degree() != 0 {
            return Err(Error::pre("coordinate field must contain the residue field"));
        }
        if place.poly().coeff(0) == 0 {
            return Err(Error::pre("the place must not divide the level t"));
        }
        let field = Gf::new(q, n);
        let gamma = embed(place.residue_field(), &field).apply(place.gamma_t());
        let mut s = Self::new(q, r, &field, gamma)?;
        s.place = Some(place.clone());
        Ok(s)
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn rank(&self) -> usize {
        self.r
    }
    pub fn field(&self) -> &Gf {
        &self.field
    }
    pub fn gamma_t(&self) -> u32 {
        self.gamma_t
    }
    pub fn place(&self) -> Option<&PrimeP> {
        self.place.as_ref()
    }
    /// `V_r^0` in the fixed order used for the variables `u_v`.
    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }
    pub fn num_vars(&self) -> usize {
        self.vectors.len()
    }

    /// `lambda(v)` for every nonzero `v`, over any field containing the point.
    pub fn lambda_values<F: FiniteField>(&self, f: &F, lambda: &[F::Elem]) -> Vec<F::Elem> {
        self.vectors
            .iter()
            .map(|v| {
                let mut acc = f.zero();
                for (c, l) in v.iter().zip(lambda) {
                    if *c != 0 {
                        acc = f.add(&acc, &f.mul(&f.from_int(*c as i64), l));
                    }
                }
                acc
            })
            .collect()
    }

    /// `u_v = 1/lambda(v)`; `None` if `lambda` is not injective.
    pub fn u_values<F: FiniteField>(&self, f: &F, lambda: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.lambda_values(f, lambda).iter().map(|x| f.inv(x)).collect()
    }

    pub fn point(&self, lambda: Vec<u32>) -> Result<ModuliPoint> {
        if lambda.len() != self.r {
            return Err(Error::pre(format!("expected {} coordinates", self.r)));
        }
        if self.u_values(&self.field, &lambda).is_none() {
            return Err(Error::pre("lambda is not injective on F_q^r"));
        }
        Ok(ModuliPoint { lambda })
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> ModuliPoint {
        loop {
            let lambda: Vec<u32> = (0..self.r).map(|_| self.field.random(rng)).collect();
            if let Ok(p) = self.point(lambda) {
                return p;
            }
        }
    }

    /// Representative with `lambda(e_1) = 1`.
    pub fn normalize(&self, x: &ModuliPoint) -> ModuliPoint {
        let f = &self.field;
        let c = f.inv(&x.lambda[0]).expect("injective");
        ModuliPoint { lambda: x.lambda.iter().map(|l| f.mul(l, &c)).collect() }
    }

    /// The module with kernel `lambda(F_q^r)` and `d phi_t = gamma(t)`.
    pub fn module_from_point(&self, x: &ModuliPoint) -> Result<DrinfeldModule<Gf>> {
        let f = &self.field;
        let lv = self.lambda_values(f, &x.lambda);
        if lv.iter().any(|l| f.is_zero(l)) {
            return Err(Error::pre("lambda is not injective on F_q^r"));
        }
        let u = from_kernel(f, &x.lambda);
        // gamma X prod (1 - X/l) = gamma prod(-1/l) prod (X - l)
        let mut c = self.gamma_t;
        for l in &lv {
            c = f.mul(&c, &f.neg(&f.inv(l).unwrap()));
        }
        let coeffs: Vec<u32> = u.c.iter().map(|a| f.mul(a, &c)).collect();
        if coeffs[0] != self.gamma_t {
            return Err(Error::consistency("constant term differs from gamma(t)"));
        }
        DrinfeldModule::new(f, self.gamma_t, coeffs[1..].to_vec())
    }
}

/// Elementary symmetric functions `e_0, ..., e_n` of the given values.
pub fn elementary_symmetric<F: FiniteField>(f: &F, xs: &[F::Elem]) -> Vec<F::Elem> {
    let mut e = vec![f.zero(); xs.len() + 1];
    e[0] = f.one();
    for (k, x) in xs.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            e[j] = f.add(&e[j], &f.mul(&e[j - 1], x));
        }
    }
    e
}

/// Number of connected components at level `n`: `#(A/n)^x / (q-1)`.
pub fn component_count(n: &PolyA) -> Result<u64> {
    if n.is_zero() || n.is_unit() {
        return Err(Error::pre("level must be a nonzero nonunit"));
    }
    let q = n.q() as u64;
    let (_, factors) = n.factor();
    let mut units = 1u64;
    for (p, e) in factors {
        let norm = q.pow(p.deg() as u32);
        units *= norm.pow(e - 1) * (norm - 1);
    }
    Ok(units / (q - 1))
}

//! Drinfeld `F_q[t]`-modules over finite fields.
//!
//! A module is stored through `phi_t = gamma + g_1 tau + ... + g_r tau^r`; every other
//! `phi_a` is derived by Horner evaluation in the skew ring.

pub mod charpoly;
pub mod isogeny;
pub mod torsion;
pub mod valued;
pub mod weil;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf};
use crate::poly_a::{PolyA, PrimeP};
use crate::skew::SkewPoly;
use serde::{Deserialize, Serialize};

pub use charpoly::{frobenius_charpoly, frobenius_charpoly_linear, frobenius_power_in_a, FrobeniusPower};
pub use isogeny::{quotient_isogeny, Isogeny};
pub use torsion::{full_torsion, residue_subspaces, torsion_module, TorsionModule};
pub use valued::{stable_model, StableModel, ValuedModule};
pub use weil::{weil_number_check, CheckKind, CheckStatus, WeilReport};

/// A rank-`r` Drinfeld module over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DrinfeldModule<F: FiniteField> {
    field: F,
    gamma: F::Elem,
    coeffs: Vec<F::Elem>,
}

/// Wire format for a module over a table field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub q: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub gamma_t: Vec<u32>,
    pub rank: usize,
    pub coeffs: Vec<Vec<u32>>,
}

impl<F: FiniteField> DrinfeldModule<F> {
    /// `phi_t = gamma + sum_{i>=1} coeffs[i-1] tau^i`; the top coefficient must be nonzero.
    pub fn new(field: &F, gamma: F::Elem, coeffs: Vec<F::Elem>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if !field.is_zero(c) => Ok(DrinfeldModule { field: field.clone(), gamma, coeffs }),
            _ => Err(Error::pre("top coefficient of phi_t must be nonzero (rank >= 1)")),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn gamma(&self) -> &F::Elem {
        &self.gamma
    }
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
    /// `g_1, ..., g_r`.
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    /// `g_i` for `1 <= i <= r`.
    pub fn g(&self, i: usize) -> &F::Elem {
        &self.coeffs[i - 1]
    }

    pub fn phi_t(&self) -> SkewPoly<F::Elem> {
        let mut c = vec![self.gamma.clone()];
        c.extend(self.coeffs.iter().cloned());
        SkewPoly::new(&self.field, c)
    }

    /// `phi_a` for `a in F_q[t]`.
    pub fn phi_of(&self, a: &PolyA) -> SkewPoly<F::Elem> {
        let f = &self.field;
        let pt = self.phi_t();
        let mut acc = SkewPoly::zero();
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(f, &pt).add(f, &SkewPoly::constant(f, f.from_int(c as i64)));
        }
        acc
    }

    /// Image of `a` under the characteristic map `gamma: A -> L`.
    pub fn gamma_of(&self, a: &PolyA) -> F::Elem {
        a.eval(&self.field, &self.gamma)
    }

    /// Height at `P` from the lowest nonzero coefficient of `phi_P`.
    pub fn height_at_v(&self, p: &PrimeP) -> Result<usize> {
        if !self.field.is_zero(&self.gamma_of(p.poly())) {
            return Err(Error::pre(format!("base field is not of characteristic {}", p.poly())));
        }
        let phi_p = self.phi_of(p.poly());
        let low = phi_p.lowest_index(&self.field).expect("phi_P is nonzero");
        let d = p.degree();
        if low % d != 0 {
            return Err(Error::consistency(format!("lowest index {low} of phi_P not a multiple of deg P = {d}")));
        }
        Ok(low / d)
    }

    pub fn v_rank(&self, p: &PrimeP) -> Result<usize> {
        Ok(self.rank() - self.height_at_v(p)?)
    }

    pub fn is_supersingular(&self, p: &PrimeP) -> Result<bool> {
        Ok(self.height_at_v(p)? == self.rank())
    }

    /// `m = gcd { i : g_i != 0 }`; the automorphism group over the closure is `F_{q^m}^x`.
    pub fn automorphism_degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .fold(0usize, |acc, (i, _)| num_integer::gcd(acc, i + 1))
    }

    /// Order `q^m - 1` of the geometric automorphism group.
    pub fn automorphism_order(&self) -> u64 {
        (self.field.characteristic() as u64).pow(self.automorphism_degree() as u32) - 1
    }

    /// The conjugate `c phi c^{-1}`, with coefficients `c^{1 - q^i} g_i`.
    pub fn conjugate(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let ci = f.inv(c).expect("conjugation by zero");
        let mut ciq = ci;
        let coeffs = self
            .coeffs
            .iter()
            .map(|g| {
                ciq = f.frobenius(&ciq);
                f.mul(&f.mul(c, g), &ciq)
            })
            .collect();
        DrinfeldModule { field: f.clone(), gamma: self.gamma.clone(), coeffs }
    }

    /// Whether some `c` in an algebraic closure gives `g'_i = c^{q^i - 1} g_i` for all `i`
    /// (that is, `psi_t = c^{-1} phi_t c`).
    pub fn is_isomorphic_over_closure(&self, other: &Self) -> bool {
        let f = &self.field;
        if self.rank() != other.rank() || self.gamma != other.gamma {
            return false;
        }
        let p = f.characteristic() as i128;
        let mut idx = Vec::new();
        for i in 1..=self.rank() {
            match (f.is_zero(self.g(i)), f.is_zero(other.g(i))) {
                (true, true) => {}
                (false, false) => idx.push(i),
                _ => return false,
            }
        }
        let ratios: Vec<F::Elem> = idx.iter().map(|&i| f.div(other.g(i), self.g(i)).unwrap()).collect();
        let exps: Vec<i128> = idx.iter().map(|&i| p.pow(i as u32) - 1).collect();
        let (d, bez) = bezout(&exps);
        let mut sigma = f.one();
        for (rho, &x) in ratios.iter().zip(&bez) {
            sigma = f.mul(&sigma, &f.pow_signed(rho, x as i64).unwrap());
        }
        ratios.iter().zip(&exps).all(|(rho, &e)| f.pow(&sigma, (e / d) as u64) == *rho)
    }

    /// Evaluates `phi_a` at a point of the base field.
    pub fn act(&self, a: &PolyA, x: &F::Elem) -> F::Elem {
        self.phi_of(a).eval(&self.field, x)
    }
}

/// `gcd(e_1, ..., e_n)` together with Bezout coefficients.
pub fn bezout(es: &[i128]) -> (i128, Vec<i128>) {
    let mut g = 0i128;
    let mut coef: Vec<i128> = vec![0; es.len()];
    for (k, &e) in es.iter().enumerate() {
        // g_new = x g + y e
        let (g2, x, y) = ext_gcd(g, e);
        for c in coef.iter_mut().take(k) {
            *c *= x;
        }
        coef[k] = y;
        g = g2;
    }
    (g, coef)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - (a.div_euclid(b)) * y)
}

/// Result of an automorphism-group computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroup {
    /// The group is `F_{q^m}^x`.
    pub m: usize,
    pub order: u64,
    /// A generator, when `F_{q^m}` lies inside the base field.
    pub generator: Option<u32>,
}

impl DrinfeldModule<Gf> {
    /// A scalar `c` of the base field with `other_t = c^{-1} phi_t c`, i.e.
    /// `g'_i = c^{q^i - 1} g_i`, if one exists in this field.
    pub fn is_isomorphic(&self, other: &Self) -> Result<Option<u32>> {
        let f = &self.field;
        if self.rank() != other.rank() {
            return Err(Error::pre("rank mismatch"));
        }
        if self.gamma != other.gamma {
            return Ok(None);
        }
        let group = f.size() as u64 - 1;
        let p = f.characteristic() as u64;
        // constraints (q^i - 1) x = log(rho_i) mod group
        let mut sol: Option<(u64, u64)> = Some((0, 1)); // x = a mod m
        for i in 1..=self.rank() {
            match (f.is_zero(self.g(i)), f.is_zero(other.g(i))) {
                (true, true) => continue,
                (false, false) => {}
                _ => return Ok(None),
            }
            let rho = f.div(other.g(i), self.g(i)).unwrap();
            let l = f.log(rho).unwrap() as u64;
            let e = (p.pow(i as u32) - 1) % group.max(1);
            sol = sol.and_then(|(a, m)| combine_linear_congruence(a, m, e, l, group));
            if sol.is_none() {
                return Ok(None);
            }
        }
        let (a, _) = sol.unwrap();
        let c = f.exp(a);
        debug_assert_eq!(&self.scale_by(c), other);
        Ok(Some(c))
    }

    /// Module with coefficients `c^{q^i - 1} g_i` (isomorphic via `c`).
    pub fn scale_by(&self, c: u32) -> Self {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let coeffs = self.coeffs.iter().enumerate().map(|(i, g)| f.mul(g, &f.pow(&c, p.pow(i as u32 + 1) - 1))).collect();
        DrinfeldModule { field: f.clone(), gamma: self.gamma, coeffs }
    }

    /// The automorphism group over the closure and, if it is realized in the base field,
    /// a generator.
    pub fn automorphisms(&self) -> AutGroup {
        let f = &self.field;
        let m = self.automorphism_degree();
        let order = self.automorphism_order();
        let group = f.size() as u64 - 1;
        let generator = (group % order == 0).then(|| f.exp(group / order));
        AutGroup { m, order, generator }
    }

    /// All automorphisms realized in the base field, i.e. `F_{q^m}^x` when it is contained.
    pub fn automorphism_elements(&self) -> Vec<u32> {
        let aut = self.automorphisms();
        match aut.generator {
            Some(g) => {
                let mut v: Vec<u32> = (0..aut.order).map(|k| self.field.pow(&g, k)).collect();
                v.sort_unstable();
                v
            }
            None => vec![1],
        }
    }

    pub fn to_record(&self) -> ModuleRecord {
        let f = &self.field;
        ModuleRecord {
            q: f.characteristic(),
            n: f.degree(),
            gamma_t: f.fp_coords(&self.gamma),
            rank: self.rank(),
            coeffs: self.coeffs.iter().map(|c| f.fp_coords(c)).collect(),
        }
    }

    pub fn from_record(rec: &ModuleRecord) -> Result<Self> {
        let f = Gf::new(rec.q, rec.n);
        let coeffs = rec.coeffs.iter().map(|c| f.from_fp_coords(c)).collect();
        DrinfeldModule::new(&f, f.from_fp_coords(&rec.gamma_t), coeffs)
    }
}

/// Combines `x = a mod m` with `e x = l mod g` (where `m | g`); returns the joint class.
fn combine_linear_congruence(a: u64, m: u64, e: u64, l: u64, g: u64) -> Option<(u64, u64)> {
    // solutions of e x = l mod g: x = x0 mod g/d
    let d = num_integer::gcd(e, g);
    let d = if d == 0 { g } else { d };
    if l % d != 0 {
        return None;
    }
    let g1 = g / d;
    let x0 = if g1 == 1 { 0 } else { ((l / d) as u128 * crate::field::gf::mod_inverse((e / d) % g1, g1) as u128 % g1 as u128) as u64 };
    // CRT: x = a mod m, x = x0 mod g1
    let dd = num_integer::gcd(m, g1);
    if (a as i128 - x0 as i128).rem_euclid(dd as i128) != 0 {
        return None;
    }
    let lcm = m / dd * g1;
    // brute-force lift within lcm (both moduli divide the group order, so this is small in practice)
    let mut x = a % m;
    while x % g1 != x0 % g1 {
        x += m;
        if x >= lcm {
            return None;
        }
    }
    Some((x, lcm))
}

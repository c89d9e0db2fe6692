//! The spherical Hecke algebra of `GL_r` over a local field `F_{q_w}((z))`.
//!
//! Basis elements are the characteristic functions `1_mu` of the double cosets
//! `K z^mu K`, `mu` weakly decreasing. Products are computed from the structure constants
//! `c^nu_{lambda,mu} = #{x in K z^lambda K / K : x^{-1} z^nu in K z^mu K}`.

pub mod dvr;
pub mod oracle;

use crate::error::{Error, Result};
use crate::field::Gf;
use dvr::{adjugate, cartan_type, hnf_reps, mat_mul, Dvr, LocalDvr, Mat};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// `K z^mu K` with `mu` weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DoubleCoset {
    pub mu: Vec<i64>,
}

impl DoubleCoset {
    pub fn new(mu: Vec<i64>) -> Result<Self> {
        if mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::pre("cocharacter must be weakly decreasing"));
        }
        Ok(DoubleCoset { mu })
    }
    pub fn rank(&self) -> usize {
        self.mu.len()
    }
    /// Central shift `c = mu_r` and the reduced cocharacter `mu - c`.
    pub fn split_center(&self) -> (i64, Vec<i64>) {
        let c = self.mu.last().copied().unwrap_or(0);
        (c, self.mu.iter().map(|m| m - c).collect())
    }
    pub fn size(&self) -> i64 {
        self.mu.iter().sum()
    }
}

/// A finitely supported integer combination of double cosets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElement {
    pub terms: BTreeMap<DoubleCoset, i128>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    mu: Vec<i64>,
    coeff: String,
}

impl Serialize for HeckeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self.terms.iter().map(|(k, c)| TermJson { mu: k.mu.clone(), coeff: c.to_string() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(d)?;
        let mut h = HeckeElement::default();
        for t in v {
            let c: i128 = t.coeff.parse().map_err(serde::de::Error::custom)?;
            let dc = DoubleCoset::new(t.mu).map_err(serde::de::Error::custom)?;
            h.add_term(dc, c);
        }
        Ok(h)
    }
}

impl HeckeElement {
    pub fn basis(mu: Vec<i64>) -> Result<Self> {
        let mut h = HeckeElement::default();
        h.add_term(DoubleCoset::new(mu)?, 1);
        Ok(h)
    }
    pub fn unit(r: usize) -> Self {
        Self::basis(vec![0; r]).expect("zero cocharacter")
    }
    pub fn add_term(&mut self, d: DoubleCoset, c: i128) {
        let e = self.terms.entry(d.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&d);
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut h = self.clone();
        for (d, c) in &o.terms {
            h.add_term(d.clone(), *c);
        }
        h
    }
    pub fn scale(&self, c: i128) -> Self {
        let mut h = HeckeElement::default();
        for (d, x) in &self.terms {
            h.add_term(d.clone(), x * c);
        }
        h
    }
    pub fn coeff(&self, mu: &[i64]) -> i128 {
        self.terms.get(&DoubleCoset { mu: mu.to_vec() }).copied().unwrap_or(0)
    }
    fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(|d| d.rank())
    }
}

/// Dominant cocharacters `nu` with `nu_r >= 0`, `|nu| = total`, `nu_1 <= max`.
fn dominant(r: usize, total: i64, max: i64) -> Vec<Vec<i64>> {
    fn rec(r: usize, left: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == r {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (r - cur.len()) as i64;
        for a in (0..=cap.min(left)).rev() {
            if a * slots < left {
                break;
            }
            cur.push(a);
            rec(r, left - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, total, max, &mut Vec::new(), &mut out);
    out
}

/// The algebra for fixed `(q_w, r)`, caching representatives and structure constants.
pub struct SphericalAlgebra {
    pub r: usize,
    dvr: LocalDvr,
    reps: Mutex<HashMap<Vec<i64>, std::sync::Arc<Vec<Mat<Vec<u32>>>>>>,
    constants: Mutex<HashMap<(Vec<i64>, Vec<i64>), Vec<(Vec<i64>, i128)>>>,
}

/// Splits a prime power `q_w = p^n`.
pub fn prime_power(q_w: u32) -> Result<(u32, usize)> {
    let p = (2..=q_w).find(|d| q_w % d == 0).ok_or_else(|| Error::pre("q_w must be a prime power"))?;
    let mut n = 0;
    let mut x = q_w;
    while x % p == 0 {
        x /= p;
        n += 1;
    }
    if x != 1 {
        return Err(Error::pre(format!("{q_w} is not a prime power")));
    }
    Ok((p, n))
}

impl SphericalAlgebra {
    pub fn new(q_w: u32, r: usize) -> Result<Self> {
        let (p, n) = prime_power(q_w)?;
        Ok(SphericalAlgebra {
            r,
            dvr: LocalDvr { field: Gf::new(p, n) },
            reps: Mutex::new(HashMap::new()),
            constants: Mutex::new(HashMap::new()),
        })
    }

    pub fn q_w(&self) -> u64 {
        self.dvr.residue_size()
    }

    fn check(&self, mu: &[i64]) -> Result<()> {
        if mu.len() != self.r {
            return Err(Error::pre(format!("cocharacter of length {} for rank {}", mu.len(), self.r)));
        }
        DoubleCoset::new(mu.to_vec()).map(|_| ())
    }

    /// Hermite-form representatives of `K z^mu K / K` (requires `mu_r >= 0`).
    pub fn coset_reps(&self, mu: &[i64]) -> Result<std::sync::Arc<Vec<Mat<Vec<u32>>>>> {
        self.check(mu)?;
        if mu.last().is_some_and(|&m| m < 0) {
            return Err(Error::pre("representatives need mu_r >= 0"));
        }
        if let Some(v) = self.reps.lock().unwrap().get(mu) {
            return Ok(v.clone());
        }
        let v = std::sync::Arc::new(hnf_reps(&self.dvr, mu));
        self.reps.lock().unwrap().insert(mu.to_vec(), v.clone());
        Ok(v)
    }

    /// `#(K z^mu K / K)`; invariant under central shifts.
    pub fn coset_degree(&self, mu: &[i64]) -> Result<u64> {
        let (_, base) = DoubleCoset::new(mu.to_vec())?.split_center();
        Ok(self.coset_reps(&base)?.len() as u64)
    }

    /// Structure constants of `1_lambda * 1_mu` for reduced (`_r = 0`) cocharacters.
    fn structure(&self, lambda: &[i64], mu: &[i64]) -> Result<Vec<(Vec<i64>, i128)>> {
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(v) = self.constants.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let d = &self.dvr;
        let reps = self.coset_reps(lambda)?;
        let adj: Vec<Mat<Vec<u32>>> = reps.iter().map(|x| adjugate(d, x)).collect();
        let shift: i64 = lambda.iter().sum();
        let total = shift + mu.iter().sum::<i64>();
        let mut out = Vec::new();
        for nu in dominant(self.r, total, lambda[0] + mu[0]) {
            let znu: Mat<Vec<u32>> = (0..self.r)
                .map(|i| (0..self.r).map(|j| if i == j { d.pi_pow(nu[i] as usize) } else { d.zero() }).collect())
                .collect();
            // x^{-1} z^nu = z^{-|lambda|} adj(x) z^nu
            let hits = crate::par::map(&adj, |a| {
                let t = cartan_type(d, &mat_mul(d, a, &znu)).expect("nonsingular");
                t.iter().map(|x| x - shift).collect::<Vec<i64>>() == mu
            });
            let c = hits.into_iter().filter(|&h| h).count() as i128;
            if c != 0 {
                out.push((nu, c));
            }
        }
        self.constants.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn convolve(&self, h1: &HeckeElement, h2: &HeckeElement) -> Result<HeckeElement> {
        for h in [h1, h2] {
            if h.rank().is_some_and(|r| r != self.r) {
                return Err(Error::pre("Hecke element of a different rank"));
            }
        }
        let mut out = HeckeElement::default();
        for (a, ca) in &h1.terms {
            let (sa, la) = a.split_center();
            for (b, cb) in &h2.terms {
                let (sb, lb) = b.split_center();
                for (nu, c) in self.structure(&la, &lb)? {
                    let shifted: Vec<i64> = nu.iter().map(|x| x + sa + sb).collect();
                    out.add_term(DoubleCoset { mu: shifted }, ca * cb * c);
                }
            }
        }
        Ok(out)
    }

    pub fn commutativity_check(&self, h1: &HeckeElement, h2: &HeckeElement) -> Result<bool> {
        Ok(self.convolve(h1, h2)? == self.convolve(h2, h1)?)
    }

    /// Total number of cosets, weighted by coefficients.
    pub fn mass(&self, h: &HeckeElement) -> Result<i128> {
        let mut m = 0i128;
        for (d, c) in &h.terms {
            m += c * self.coset_degree(&d.mu)? as i128;
        }
        Ok(m)
    }

    /// Dominant cocharacters with `mu_r >= 0` and `|mu| <= bound`.
    pub fn span_basis(&self, bound: i64) -> Vec<Vec<i64>> {
        (0..=bound).flat_map(|s| dominant(self.r, s, s)).collect()
    }
}

/// One-shot helpers.
pub fn coset_reps(mu: &[i64], q_w: u32, r: usize) -> Result<Vec<Mat<Vec<u32>>>> {
    Ok(SphericalAlgebra::new(q_w, r)?.coset_reps(mu)?.as_ref().clone())
}

pub fn coset_degree(mu: &[i64], q_w: u32, r: usize) -> Result<u64> {
    SphericalAlgebra::new(q_w, r)?.coset_degree(mu)
}

pub fn convolve(h1: &HeckeElement, h2: &HeckeElement, q_w: u32, r: usize) -> Result<HeckeElement> {
    SphericalAlgebra::new(q_w, r)?.convolve(h1, h2)
}

pub fn commutativity_check(h1: &HeckeElement, h2: &HeckeElement, q_w: u32, r: usize) -> Result<bool> {
    SphericalAlgebra::new(q_w, r)?.commutativity_check(h1, h2)
}

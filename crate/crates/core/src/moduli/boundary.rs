//! Limits of the coefficient tuple along one-parameter families `B -> infinity`.

use super::ModuliSpace;
use crate::error::{Error, Result};
use crate::ratfun::{RatFun, RatFunField};
use crate::skew::TwistRing;
use serde::{Deserialize, Serialize};

/// `lambda(e_i) = num_i(B) / den_i(B)`, polynomials in `B` over the coordinate field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationPath {
    pub lambda: Vec<(Vec<u32>, Vec<u32>)>,
}

/// `p(1/pi)` as a fraction in `pi`: `pi^{-deg p} rev(p)(pi)`.
fn at_inverse(k: &RatFunField, num: &[u32], den: &[u32]) -> Result<RatFun> {
    let deg = |p: &[u32]| p.iter().rposition(|&c| c != 0);
    let dn = deg(num);
    let dd = deg(den).ok_or_else(|| Error::pre("zero denominator in path"))?;
    let Some(dn) = dn else { return Ok(k.r_zero()) };
    let rev = |p: &[u32], d: usize| p[..=d].iter().rev().copied().collect::<Vec<u32>>();
    let frac = k.make(rev(num, dn), rev(den, dd));
    Ok(k.r_mul(&frac, &k.monomial(1, dd as i64 - dn as i64)))
}

/// The limit `(c_1, ..., c_r)` of the coefficient forms along the path.
pub fn limit_module(space: &ModuliSpace, path: &DegenerationPath) -> Result<Vec<u32>> {
    if path.lambda.len() != space.rank() {
        return Err(Error::pre(format!("path needs {} coordinates", space.rank())));
    }
    let k = RatFunField::new(space.field());
    let lam: Vec<RatFun> = path.lambda.iter().map(|(n, d)| at_inverse(&k, n, d)).collect::<Result<_>>()?;
    let mut u = Vec::with_capacity(space.num_vars());
    for v in space.vectors() {
        let mut acc = k.r_zero();
        for (c, l) in v.iter().zip(&lam) {
            acc = k.r_add(&acc, &k.r_mul(&k.r_from_int(*c as i64), l));
        }
        u.push(k.r_inv(&acc).ok_or_else(|| Error::pre("path is not injective on F_q^r"))?);
    }
    let mut e = vec![k.r_zero(); u.len() + 1];
    e[0] = k.r_one();
    for (n, x) in u.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            e[j] = k.r_add(&e[j], &k.r_mul(&e[j - 1], x));
        }
    }
    let gamma = k.constant(space.gamma_t());
    let q = space.q() as usize;
    let mut out = Vec::with_capacity(space.rank());
    for i in 1..=space.rank() {
        let g = k.r_mul(&gamma, &e[q.pow(i as u32) - 1]);
        out.push(k.reduce(&g).ok_or_else(|| Error::pre(format!("coefficient {i} diverges along the path")))?);
    }
    if out.iter().all(|&c| c == 0) {
        return Err(Error::consistency("limit tuple vanishes identically"));
    }
    Ok(out)
}

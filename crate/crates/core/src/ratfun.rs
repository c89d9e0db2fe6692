//! The rational function field `F_{q^N}(pi)` with its `pi`-adic valuation.

use crate::field::{FiniteField, Gf};
use crate::skew::TwistRing;
use crate::upoly;
use serde::{Deserialize, Serialize};

/// A reduced fraction `num/den` with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFun {
    pub num: Vec<u32>,
    pub den: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct RatFunField {
    base: Gf,
}

impl RatFunField {
    pub fn new(base: &Gf) -> Self {
        RatFunField { base: base.clone() }
    }

    pub fn base(&self) -> &Gf {
        &self.base
    }

    pub fn make(&self, num: Vec<u32>, den: Vec<u32>) -> RatFun {
        let f = &self.base;
        let mut num = num;
        let mut den = den;
        upoly::trim(f, &mut num);
        upoly::trim(f, &mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFun { num, den: vec![1] };
        }
        let g = upoly::gcd(f, &num, &den);
        let num = upoly::divrem(f, &num, &g).0;
        let den = upoly::divrem(f, &den, &g).0;
        let lc = f.inv(den.last().unwrap()).unwrap();
        RatFun { num: upoly::scale(f, &num, &lc), den: upoly::scale(f, &den, &lc) }
    }

    pub fn constant(&self, c: u32) -> RatFun {
        self.make(vec![c], vec![1])
    }

    /// `c pi^k` for any integer `k`.
    pub fn monomial(&self, c: u32, k: i64) -> RatFun {
        let mut v = vec![0u32; k.unsigned_abs() as usize];
        v.push(1);
        if k >= 0 {
            let mut num = vec![0u32; k as usize];
            num.push(c);
            self.make(num, vec![1])
        } else {
            self.make(vec![c], v)
        }
    }

    pub fn is_zero(&self, a: &RatFun) -> bool {
        a.num.is_empty()
    }

    /// `pi`-adic valuation; `None` for zero.
    pub fn valuation(&self, a: &RatFun) -> Option<i64> {
        let ord = |v: &[u32]| v.iter().position(|&c| c != 0).map(|x| x as i64);
        Some(ord(&a.num)? - ord(&a.den).unwrap())
    }

    /// Substitutes `pi = pi'^e`.
    pub fn ramify(&self, a: &RatFun, e: usize) -> RatFun {
        let spread = |v: &[u32]| {
            let mut out = vec![0u32; (v.len().max(1) - 1) * e + 1];
            for (i, &c) in v.iter().enumerate() {
                out[i * e] = c;
            }
            out
        };
        self.make(spread(&a.num), spread(&a.den))
    }

    /// Residue at `pi = 0` of an integral element.
    pub fn reduce(&self, a: &RatFun) -> Option<u32> {
        match self.valuation(a) {
            None => Some(0),
            Some(v) if v > 0 => Some(0),
            Some(0) => {
                let n0 = a.num.iter().find(|&&c| c != 0).copied()?;
                let d0 = a.den.iter().find(|&&c| c != 0).copied()?;
                self.base.div(&n0, &d0)
            }
            _ => None,
        }
    }

    pub fn pow_signed(&self, a: &RatFun, e: i64) -> Option<RatFun> {
        let base = if e < 0 { self.r_inv(a)? } else { a.clone() };
        let mut out = self.r_one();
        for _ in 0..e.unsigned_abs() {
            out = self.r_mul(&out, &base);
        }
        Some(out)
    }
}

impl TwistRing for RatFunField {
    type Elem = RatFun;
    fn r_zero(&self) -> RatFun {
        RatFun { num: Vec::new(), den: vec![1] }
    }
    fn r_one(&self) -> RatFun {
        RatFun { num: vec![1], den: vec![1] }
    }
    fn r_is_zero(&self, a: &RatFun) -> bool {
        a.num.is_empty()
    }
    fn r_add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        let f = &self.base;
        let num = upoly::add(f, &upoly::mul(f, &a.num, &b.den), &upoly::mul(f, &b.num, &a.den));
        self.make(num, upoly::mul(f, &a.den, &b.den))
    }
    fn r_sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        let f = &self.base;
        let num = upoly::sub(f, &upoly::mul(f, &a.num, &b.den), &upoly::mul(f, &b.num, &a.den));
        self.make(num, upoly::mul(f, &a.den, &b.den))
    }
    fn r_mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        let f = &self.base;
        self.make(upoly::mul(f, &a.num, &b.num), upoly::mul(f, &a.den, &b.den))
    }
    fn twist(&self, a: &RatFun) -> RatFun {
        let f = &self.base;
        let p = f.p() as usize;
        let frob = |v: &[u32]| {
            let mut out = vec![0u32; (v.len().max(1) - 1) * p + 1];
            for (i, c) in v.iter().enumerate() {
                out[i * p] = f.frobenius(c);
            }
            out
        };
        self.make(frob(&a.num), frob(&a.den))
    }
    fn r_inv(&self, a: &RatFun) -> Option<RatFun> {
        (!a.num.is_empty()).then(|| self.make(a.den.clone(), a.num.clone()))
    }
    fn r_from_int(&self, c: i64) -> RatFun {
        self.constant(self.base.from_int(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_and_ramification() {
        let k = RatFunField::new(&Gf::new(2, 2));
        let a = k.monomial(1, -1);
        assert_eq!(k.valuation(&a), Some(-1));
        let b = k.r_add(&k.monomial(1, 2), &k.monomial(3, 1));
        assert_eq!(k.valuation(&b), Some(1));
        assert_eq!(k.valuation(&k.ramify(&b, 3)), Some(3));
        assert_eq!(k.valuation(&k.twist(&a)), Some(-2));
        assert_eq!(k.r_mul(&a, &k.r_inv(&a).unwrap()), k.r_one());
    }
}

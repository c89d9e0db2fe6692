//! The coefficient ring `A = F_q[t]` (q prime), its primes and residue fields.

use crate::error::{Error, Result};
use crate::field::{fp_poly, FiniteField, Gf};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// An element of `F_q[t]`, little-endian coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyA {
    q: u32,
    coeffs: Vec<u32>,
}

impl PolyA {
    pub fn new(q: u32, coeffs: Vec<u32>) -> Self {
        assert!(is_prime(q), "q = {q} must be prime");
        let mut c: Vec<u32> = coeffs.into_iter().map(|x| x % q).collect();
        fp_poly::trim(&mut c);
        PolyA { q, coeffs: c }
    }

    fn raw(q: u32, mut coeffs: Vec<u32>) -> Self {
        fp_poly::trim(&mut coeffs);
        PolyA { q, coeffs }
    }

    pub fn zero(q: u32) -> Self {
        Self::raw(q, Vec::new())
    }
    pub fn one(q: u32) -> Self {
        Self::raw(q, vec![1])
    }
    pub fn t(q: u32) -> Self {
        Self::raw(q, vec![0, 1])
    }
    pub fn constant(q: u32, c: i64) -> Self {
        Self::raw(q, vec![c.rem_euclid(q as i64) as u32])
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero")
    }
    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::raw(self.q, fp_poly::add(&self.coeffs, &o.coeffs, self.q))
    }
    pub fn sub(&self, o: &Self) -> Self {
        Self::raw(self.q, fp_poly::sub(&self.coeffs, &o.coeffs, self.q))
    }
    pub fn neg(&self) -> Self {
        Self::raw(self.q, fp_poly::neg(&self.coeffs, self.q))
    }
    pub fn mul(&self, o: &Self) -> Self {
        Self::raw(self.q, fp_poly::mul(&self.coeffs, &o.coeffs, self.q))
    }
    pub fn scale(&self, c: u32) -> Self {
        Self::raw(self.q, fp_poly::scale(&self.coeffs, c % self.q, self.q))
    }
    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.q), |acc, _| acc.mul(self))
    }
    pub fn divrem(&self, o: &Self) -> (Self, Self) {
        let (a, b) = fp_poly::divrem(&self.coeffs, &o.coeffs, self.q);
        (Self::raw(self.q, a), Self::raw(self.q, b))
    }
    pub fn rem(&self, o: &Self) -> Self {
        self.divrem(o).1
    }
    /// Exact quotient, if `o` divides `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let (a, b) = self.divrem(o);
        b.is_zero().then_some(a)
    }
    pub fn monic(&self) -> Self {
        Self::raw(self.q, fp_poly::monic(&self.coeffs, self.q))
    }
    pub fn gcd(&self, o: &Self) -> Self {
        Self::raw(self.q, fp_poly::gcd(&self.coeffs, &o.coeffs, self.q))
    }
    /// Returns `(g, s, t)` with `s self + t o = g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (g, s, t) = fp_poly::xgcd(&self.coeffs, &o.coeffs, self.q);
        (Self::raw(self.q, g), Self::raw(self.q, s), Self::raw(self.q, t))
    }
    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.xgcd(m);
        (g.coeffs == vec![1]).then(|| s.rem(m))
    }
    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }
    pub fn powmod(&self, e: u128, m: &Self) -> Self {
        Self::raw(self.q, fp_poly::powmod(&self.coeffs, e, &m.coeffs, self.q))
    }

    pub fn is_irreducible(&self) -> bool {
        fp_poly::is_irreducible(&self.coeffs, self.q)
    }

    /// The `P`-adic valuation; `None` for zero.
    pub fn valuation(&self, p: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut x = self.clone();
        let mut v = 0;
        while let Some(y) = x.div_exact(p) {
            x = y;
            v += 1;
        }
        Some(v)
    }

    /// Image under the `F_q`-algebra map `t -> x` into a field of characteristic `q`.
    pub fn eval<F: FiniteField>(&self, f: &F, x: &F::Elem) -> F::Elem {
        self.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(&f.mul(&acc, x), &f.from_int(c as i64)))
    }

    /// Factorization into monic irreducibles with multiplicities (plus the unit).
    pub fn factor(&self) -> (u32, Vec<(PolyA, u32)>) {
        assert!(!self.is_zero(), "factor of zero");
        let unit = self.leading();
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg() > 0 {
            if 2 * d > rest.deg() {
                out.push((rest.clone(), 1));
                break;
            }
            for p in monic_irreducibles(self.q, d) {
                let mut e = 0;
                while let Some(y) = rest.div_exact(&p) {
                    rest = y;
                    e += 1;
                }
                if e > 0 {
                    out.push((p, e));
                }
            }
            d += 1;
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        (unit, out)
    }

    /// Parses ASCII syntax such as `t^2+t+1`, `2t+1`, `t^3 + 2*t`.
    pub fn parse(q: u32, s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::pre("empty polynomial"));
        }
        let mut coeffs: Vec<u32> = Vec::new();
        let normalized = cleaned.replace('-', "+-");
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (neg, term) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let (coef, exp) = if let Some(pos) = term.find('t') {
                let cpart = term[..pos].trim_end_matches('*');
                let c: i64 = if cpart.is_empty() { 1 } else { parse_int(cpart)? };
                let rest = &term[pos + 1..];
                let e: usize = if rest.is_empty() {
                    1
                } else if let Some(es) = rest.strip_prefix('^') {
                    es.parse().map_err(|_| Error::pre(format!("bad exponent in {s:?}")))?
                } else {
                    return Err(Error::pre(format!("malformed term {term:?}")));
                };
                (c, e)
            } else {
                (parse_int(term)?, 0)
            };
            let c = if neg { -coef } else { coef };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = ((coeffs[exp] as i64 + c).rem_euclid(q as i64)) as u32;
        }
        Ok(Self::raw(q, coeffs))
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|_| Error::pre(format!("bad coefficient {s:?}")))
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical order: by degree, then by coefficients from the top.
impl Ord for PolyA {
    fn cmp(&self, o: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}
impl PartialOrd for PolyA {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All monic irreducibles of exact degree `d`, in canonical order.
pub fn monic_irreducibles(q: u32, d: usize) -> Vec<PolyA> {
    let mut out: Vec<PolyA> = (0..(q as u128).pow(d as u32))
        .map(|c| {
            let mut v = fp_poly::from_code(c, q, d);
            v.push(1);
            v
        })
        .filter(|v| fp_poly::is_irreducible(v, q))
        .map(|v| PolyA::raw(q, v))
        .collect();
    out.sort();
    out
}

/// A monic irreducible `P` together with its residue field and the image of `t`.
#[derive(Clone, Debug)]
pub struct PrimeP {
    poly: PolyA,
    field: Gf,
    gamma_t: u32,
}

impl PartialEq for PrimeP {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly
    }
}
impl Eq for PrimeP {}

impl PrimeP {
    pub fn new(poly: PolyA) -> Result<Self> {
        if poly.is_zero() || poly.deg() == 0 || !poly.is_monic() || !poly.is_irreducible() {
            return Err(Error::pre(format!("{poly} is not a monic irreducible")));
        }
        let (field, gamma_t) = residue_field(&poly)?;
        Ok(PrimeP { poly, field, gamma_t })
    }

    pub fn parse(q: u32, s: &str) -> Result<Self> {
        Self::new(PolyA::parse(q, s)?)
    }

    pub fn poly(&self) -> &PolyA {
        &self.poly
    }
    pub fn q(&self) -> u32 {
        self.poly.q
    }
    pub fn degree(&self) -> usize {
        self.poly.deg()
    }
    /// `q_v = q^deg P`.
    pub fn norm(&self) -> u64 {
        (self.q() as u64).pow(self.degree() as u32)
    }
    pub fn residue_field(&self) -> &Gf {
        &self.field
    }
    pub fn gamma_t(&self) -> u32 {
        self.gamma_t
    }
    /// The reduction map `A -> F_v`.
    pub fn reduce(&self, a: &PolyA) -> u32 {
        a.eval(&self.field, &self.gamma_t)
    }
}

/// All monic irreducibles of degree at most `d_max`, sorted canonically.
pub fn primes_up_to(q: u32, d_max: usize) -> Vec<PrimeP> {
    (1..=d_max)
        .flat_map(|d| monic_irreducibles(q, d))
        .map(|p| PrimeP::new(p).expect("irreducible"))
        .collect()
}

/// `F_{q^deg P}` with `gamma(t)` the smallest root of `P`.
pub fn residue_field(p: &PolyA) -> Result<(Gf, u32)> {
    if p.is_zero() || p.deg() == 0 || !p.is_irreducible() {
        return Err(Error::pre(format!("{p} is not irreducible")));
    }
    let f = Gf::new(p.q(), p.deg());
    let root = f
        .elements()
        .find(|x| p.eval(&f, x) == 0)
        .ok_or_else(|| Error::consistency("irreducible has no root in its residue field"))?;
    Ok((f, root))
}

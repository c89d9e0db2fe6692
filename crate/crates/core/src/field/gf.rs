//! Table-driven finite fields `F_{p^n}` with log/exp and Zech logarithm tables.

use super::fp_poly;
use super::{FieldDescriptor, FiniteField};
use std::fmt;
use std::sync::Arc;

/// Largest field order built as a table field.
pub const MAX_TABLE_ORDER: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

struct GfInner {
    p: u32,
    n: usize,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    pow_p: Vec<u32>,
}

/// The field `F_{p^n} = F_p[x]/(f)` with `f` the irreducible of smallest code.
#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.n)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Gf {}

impl Gf {
    pub fn new(p: u32, n: usize) -> Self {
        let modulus = fp_poly::smallest_irreducible(p, n);
        Self::with_modulus(p, modulus)
    }

    pub fn prime(p: u32) -> Self {
        Self::new(p, 1)
    }

    /// Builds `F_p[x]/(modulus)`; `modulus` must be monic irreducible.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let n = modulus.len() - 1;
        assert!(n >= 1 && modulus[n] == 1, "modulus must be monic of positive degree");
        let order64 = (p as u64).pow(n as u32);
        assert!(order64 <= MAX_TABLE_ORDER, "table field too large: {p}^{n}");
        assert!(fp_poly::is_irreducible(&modulus, p), "modulus is reducible");
        let order = order64 as u32;
        let pow_p: Vec<u32> = (0..=n).map(|i| p.pow(i as u32)).collect();
        let to_vec = |c: u32| -> Vec<u32> {
            let mut v = fp_poly::from_code(c as u128, p, n);
            fp_poly::trim(&mut v);
            v
        };
        let to_code = |v: &[u32]| -> u32 { fp_poly::code(v, p) as u32 };
        // find a primitive element of smallest code
        let group = order as u64 - 1;
        let factors = fp_poly::prime_factors(group);
        let mut gen = 0u32;
        for c in 1..order {
            let g = to_vec(c);
            if group == 1
                || factors.iter().all(|&l| {
                    let h = fp_poly::powmod(&g, (group / l) as u128, &modulus, p);
                    h != vec![1]
                })
            {
                gen = c;
                break;
            }
        }
        let gvec = to_vec(gen.max(1));
        let mut exp = vec![0u32; 2 * group as usize + 1];
        let mut log = vec![NONE; order as usize];
        let mut cur = vec![1u32];
        for i in 0..group as usize {
            let c = to_code(&cur);
            exp[i] = c;
            log[c as usize] = i as u32;
            cur = fp_poly::mulmod(&cur, &gvec, &modulus, p);
        }
        for i in group as usize..exp.len() {
            exp[i] = exp[i - group as usize];
        }
        let mut zech = vec![NONE; group as usize];
        for i in 0..group as usize {
            let s = fp_poly::add(&to_vec(exp[i]), &[1], p);
            let c = to_code(&s);
            zech[i] = if c == 0 { NONE } else { log[c as usize] };
        }
        Gf(Arc::new(GfInner { p, n, order, modulus, exp, log, zech, pow_p }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn size(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The fixed primitive element.
    pub fn generator(&self) -> u32 {
        self.0.exp[if self.0.order == 2 { 0 } else { 1 }]
    }

    /// Discrete logarithm with respect to [`Gf::generator`].
    pub fn log(&self, a: u32) -> Option<u32> {
        let l = self.0.log[a as usize];
        (l != NONE).then_some(l)
    }

    pub fn exp(&self, e: u64) -> u32 {
        self.0.exp[(e % (self.0.order as u64 - 1)) as usize]
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.order
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = u32> {
        1..self.0.order
    }

    fn digit_add(&self, a: u32, b: u32, sign: u32) -> u32 {
        let p = self.0.p;
        let (mut a, mut b) = (a, b);
        let mut r = 0u32;
        for i in 0..self.0.n {
            let da = a % p;
            let db = b % p;
            a /= p;
            b /= p;
            r += ((da + sign * db) % p) * self.0.pow_p[i];
        }
        r
    }

    #[inline]
    fn group(&self) -> u32 {
        self.0.order - 1
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> u64 {
        let l = self.log(a).expect("order of zero") as u64;
        let g = self.group() as u64;
        g / num_integer::gcd(l, g)
    }

    /// Roots of unity test for `a^e = 1`, and `e`-th roots in this field.
    pub fn nth_roots(&self, a: u32, e: u64) -> Vec<u32> {
        let g = self.group() as u64;
        if a == 0 {
            return vec![0];
        }
        let l = self.log(a).unwrap() as u64;
        let d = num_integer::gcd(e % g, g);
        let d = if d == 0 { g } else { d };
        if l % d != 0 {
            return Vec::new();
        }
        // solve e*x = l mod g
        let (e1, l1, g1) = ((e / d) % (g / d), l / d, g / d);
        let x0 = if g1 == 1 { 0 } else { (l1 as u128 * mod_inverse(e1, g1) as u128 % g1 as u128) as u64 };
        let mut out: Vec<u32> = (0..d).map(|k| self.exp(x0 + k * g1)).collect();
        out.sort_unstable();
        out
    }
}

pub fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (m as i128, (a % m) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert!(r == 1, "not invertible");
    (t.rem_euclid(m as i128)) as u64
}

impl FiniteField for Gf {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.0.p
    }
    fn degree(&self) -> usize {
        self.0.n
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let (a, b) = (*a, *b);
        if self.0.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = self.0.log[a as usize];
        let lb = self.0.log[b as usize];
        let g = self.group();
        let d = if lb >= la { lb - la } else { lb + g - la };
        let z = self.0.zech[d as usize];
        if z == NONE {
            0
        } else {
            self.0.exp[(la + z) as usize]
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if self.0.p == 2 || *a == 0 {
            return *a;
        }
        let g = self.group();
        self.0.exp[(self.0.log[*a as usize] + g / 2) as usize]
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        self.0.exp[(self.0.log[*a as usize] + self.0.log[*b as usize]) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let g = self.group();
        let l = self.0.log[*a as usize];
        Some(self.0.exp[((g - l) % g) as usize])
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if *a == 0 {
            return 0;
        }
        let g = self.group() as u64;
        self.0.exp[((self.0.log[*a as usize] as u64 * (e % g)) % g) as usize]
    }
    fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.0.p as i64) as u32
    }
    fn frobenius(&self, a: &u32) -> u32 {
        self.pow(a, self.0.p as u64)
    }
    fn fp_coords(&self, a: &u32) -> Vec<u32> {
        fp_poly::from_code(*a as u128, self.0.p, self.0.n)
    }
    fn from_fp_coords(&self, c: &[u32]) -> u32 {
        debug_assert!(c.len() <= self.0.n);
        fp_poly::code(c, self.0.p) as u32
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.0.p, degree: self.0.n, modulus: vec![self.0.modulus.clone()], base: None }
    }
}

impl Gf {
    /// Slow reference addition on digit vectors (used by tests as an oracle).
    pub fn add_by_digits(&self, a: u32, b: u32) -> u32 {
        self.digit_add(a, b, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = Gf::new(2, 2);
        // omega = x has code 2; omega^2 = omega + 1 = code 3
        assert_eq!(f.mul(&2, &2), 3);
        assert_eq!(f.add(&2, &3), 1);
        assert_eq!(f.inv(&2), Some(3));
    }

    #[test]
    fn zech_addition_matches_digits() {
        for (p, n) in [(3u32, 3usize), (5, 2), (7, 1), (3, 1)] {
            let f = Gf::new(p, n);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(&a, &b), f.add_by_digits(a, b));
                }
                assert_eq!(f.add(&a, &f.neg(&a)), 0);
            }
        }
    }

    #[test]
    fn nth_roots_are_roots() {
        let f = Gf::new(2, 4);
        for a in f.nonzero_elements() {
            for e in [1u64, 3, 5, 15] {
                for r in f.nth_roots(a, e) {
                    assert_eq!(f.pow(&r, e), a);
                }
            }
        }
        assert_eq!(f.nth_roots(1, 3).len(), 3);
    }
}

//! Extensions `B[y]/(g)` of a table field `B`.

use super::{FieldDescriptor, FiniteField, Gf};
use crate::upoly;
use std::fmt;
use std::sync::Arc;

struct ExtInner {
    base: Gf,
    m: usize,
    /// Monic modulus over the base, length `m + 1`.
    modulus: Vec<u32>,
}

/// `F_{Q^m}` realized over the table field `B = F_Q`.
#[derive(Clone)]
pub struct GfExt(Arc<ExtInner>);

impl fmt::Debug for GfExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[y]/deg {}", self.0.base, self.0.m)
    }
}

impl GfExt {
    /// Extension of degree `m` using the monic irreducible of smallest code over `base`.
    pub fn new(base: &Gf, m: usize) -> Self {
        assert!(m >= 1);
        let modulus = if m == 1 { vec![0, 1] } else { smallest_irreducible_over(base, m) };
        GfExt(Arc::new(ExtInner { base: base.clone(), m, modulus }))
    }

    pub fn with_modulus(base: &Gf, modulus: Vec<u32>) -> Self {
        let m = modulus.len() - 1;
        assert_eq!(modulus[m], 1);
        GfExt(Arc::new(ExtInner { base: base.clone(), m, modulus }))
    }

    pub fn base(&self) -> &Gf {
        &self.0.base
    }

    /// Degree over the base field.
    pub fn rel_degree(&self) -> usize {
        self.0.m
    }

    pub fn lift(&self, b: &u32) -> Vec<u32> {
        let mut v = vec![0u32; self.0.m];
        v[0] = *b;
        v
    }

    /// The base-field element `a` equals, if it lies in the base.
    pub fn project(&self, a: &[u32]) -> Option<u32> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }

    /// The generator `y` of the extension.
    pub fn gen(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.0.m];
        if self.0.m == 1 {
            v[0] = 0;
            return v;
        }
        v[1] = 1;
        v
    }

    fn reduce(&self, mut prod: Vec<u32>) -> Vec<u32> {
        let b = &self.0.base;
        let m = self.0.m;
        let g = &self.0.modulus;
        if m == 1 {
            return vec![prod.first().copied().unwrap_or(0)];
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                if g[j] != 0 {
                    let s = b.mul(&c, &g[j]);
                    prod[i - m + j] = b.sub(&prod[i - m + j], &s);
                }
            }
        }
        prod.truncate(m);
        prod.resize(m, 0);
        prod
    }
}

/// Monic irreducible of degree `m` over `base` with smallest code (coefficients read as
/// base-`|B|` digits, constant term least significant).
pub fn smallest_irreducible_over(base: &Gf, m: usize) -> Vec<u32> {
    let q = base.size() as u128;
    let mut counter: u128 = 0;
    loop {
        let mut c = counter;
        let mut f: Vec<u32> = (0..m)
            .map(|_| {
                let d = (c % q) as u32;
                c /= q;
                d
            })
            .collect();
        f.push(1);
        if f[0] != 0 && upoly::is_irreducible(base, &f) {
            return f;
        }
        counter += 1;
    }
}

impl FiniteField for GfExt {
    type Elem = Vec<u32>;

    fn characteristic(&self) -> u32 {
        self.0.base.p()
    }
    fn degree(&self) -> usize {
        self.0.m * self.0.base.degree()
    }
    fn zero(&self) -> Vec<u32> {
        vec![0; self.0.m]
    }
    fn one(&self) -> Vec<u32> {
        self.lift(&1)
    }
    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let f = &self.0.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let f = &self.0.base;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        let f = &self.0.base;
        a.iter().map(|x| f.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let f = &self.0.base;
        let m = self.0.m;
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y != 0 {
                    prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
                }
            }
        }
        self.reduce(prod)
    }
    fn inv(&self, a: &Vec<u32>) -> Option<Vec<u32>> {
        if self.is_zero(a) {
            return None;
        }
        let f = &self.0.base;
        let (g, s, _) = upoly::xgcd(f, a, &self.0.modulus);
        debug_assert_eq!(g, vec![1]);
        let mut s = s;
        s.resize(self.0.m, 0);
        Some(s)
    }
    fn from_int(&self, c: i64) -> Vec<u32> {
        self.lift(&self.0.base.from_int(c))
    }
    fn fp_coords(&self, a: &Vec<u32>) -> Vec<u32> {
        let f = &self.0.base;
        a.iter().flat_map(|c| f.fp_coords(c)).collect()
    }
    fn from_fp_coords(&self, c: &[u32]) -> Vec<u32> {
        let f = &self.0.base;
        let n = f.degree();
        let mut out: Vec<u32> = c.chunks(n).map(|ch| f.from_fp_coords(ch)).collect();
        out.resize(self.0.m, 0);
        out
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.characteristic(),
            degree: self.degree(),
            modulus: self.0.modulus.iter().map(|c| self.0.base.fp_coords(c)).collect(),
            base: Some(Box::new(self.0.base.descriptor())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_axioms_on_random_elements() {
        let b = Gf::new(2, 4);
        let e = GfExt::new(&b, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = e.random(&mut rng);
            let y = e.random(&mut rng);
            let z = e.random(&mut rng);
            assert_eq!(e.mul(&x, &e.add(&y, &z)), e.add(&e.mul(&x, &y), &e.mul(&x, &z)));
            assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
            if !e.is_zero(&x) {
                assert_eq!(e.mul(&x, &e.inv(&x).unwrap()), e.one());
            }
        }
    }

    #[test]
    fn frobenius_has_full_order() {
        let b = Gf::new(3, 2);
        let e = GfExt::new(&b, 3);
        let y = e.gen();
        let mut x = y.clone();
        for k in 1..=6 {
            x = e.frobenius(&x);
            assert_eq!(x == y, k == 6);
        }
    }
}

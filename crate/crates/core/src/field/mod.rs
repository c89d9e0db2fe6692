//! Finite fields.
//!
//! Two concrete fields implement [`FiniteField`]:
//! - [`Gf`], a table-driven field `F_{p^n}` (up to about a million elements) whose
//!   elements are `u32` codes `sum c_i p^i` of their coordinate vectors;
//! - [`GfExt`], an extension `B[y]/(g)` of a table field, for the large splitting
//!   fields that torsion points live in.
//!
//! All arithmetic goes through a shared, immutable field context, so elements are plain
//! data that can be sent between threads freely.

pub mod embed;
pub mod ext;
pub mod fp_poly;
pub mod gf;

pub use embed::Embedding;
pub use ext::GfExt;
pub use gf::Gf;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::hash::Hash;

/// Serializable description of a field (enough to rebuild it deterministically).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    /// Degree over the prime field.
    pub degree: usize,
    /// Modulus over the prime field (table fields) or over the base field (extensions).
    pub modulus: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<FieldDescriptor>>,
}

pub trait FiniteField: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, c: i64) -> Self::Elem;
    /// Coordinates over `F_p` (length [`FiniteField::degree`]).
    fn fp_coords(&self, a: &Self::Elem) -> Vec<u32>;
    fn from_fp_coords(&self, c: &[u32]) -> Self::Elem;
    fn descriptor(&self) -> FieldDescriptor;
    /// `a^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u64)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// Signed power; `None` for a negative power of zero.
    fn pow_signed(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }

    /// `a^(p^k)`.
    fn frobenius_pow(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..k % self.degree().max(1) {
            x = self.frobenius(&x);
        }
        x
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree() as u32)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let p = self.characteristic();
        let c: Vec<u32> = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        self.from_fp_coords(&c)
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// An `F_p`-basis of the field.
    fn fp_basis(&self) -> Vec<Self::Elem> {
        let n = self.degree();
        (0..n)
            .map(|i| {
                let mut c = vec![0u32; n];
                c[i] = 1;
                self.from_fp_coords(&c)
            })
            .collect()
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

//! The twisted polynomial ring `L{tau}` with `tau a = a^q tau`.
//!
//! Coefficients live in any [`TwistRing`]: a commutative ring with a distinguished
//! `q`-power endomorphism. Every [`FiniteField`] is one (with `q = p`), and so are the
//! rational-function and symbolic coefficient rings used elsewhere in the crate.

use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf, GfExt};
use crate::linalg::{self, Matrix};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;

pub trait TwistRing: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    fn r_zero(&self) -> Self::Elem;
    fn r_one(&self) -> Self::Elem;
    fn r_is_zero(&self, a: &Self::Elem) -> bool;
    fn r_add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn r_sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn r_mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a -> a^q`.
    fn twist(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a unit, `None` otherwise.
    fn r_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn r_from_int(&self, c: i64) -> Self::Elem;
}

impl<F: FiniteField> TwistRing for F {
    type Elem = F::Elem;
    fn r_zero(&self) -> F::Elem {
        self.zero()
    }
    fn r_one(&self) -> F::Elem {
        self.one()
    }
    fn r_is_zero(&self, a: &F::Elem) -> bool {
        self.is_zero(a)
    }
    fn r_add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.add(a, b)
    }
    fn r_sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.sub(a, b)
    }
    fn r_mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.mul(a, b)
    }
    fn twist(&self, a: &F::Elem) -> F::Elem {
        self.frobenius(a)
    }
    fn r_inv(&self, a: &F::Elem) -> Option<F::Elem> {
        self.inv(a)
    }
    fn r_from_int(&self, c: i64) -> F::Elem {
        self.from_int(c)
    }
}

/// `sum c_i tau^i`, with `c[i]` the `tau^i` coefficient; canonical form has no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewPoly<E> {
    pub c: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> SkewPoly<E> {
    pub fn new<R: TwistRing<Elem = E>>(r: &R, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| r.r_is_zero(x)) {
            c.pop();
        }
        SkewPoly { c }
    }

    pub fn zero() -> Self {
        SkewPoly { c: Vec::new() }
    }

    pub fn constant<R: TwistRing<Elem = E>>(r: &R, a: E) -> Self {
        Self::new(r, vec![a])
    }

    pub fn one<R: TwistRing<Elem = E>>(r: &R) -> Self {
        Self::constant(r, r.r_one())
    }

    /// `a tau^k`.
    pub fn monomial<R: TwistRing<Elem = E>>(r: &R, a: E, k: usize) -> Self {
        let mut c = vec![r.r_zero(); k];
        c.push(a);
        Self::new(r, c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `tau`-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff<R: TwistRing<Elem = E>>(&self, r: &R, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| r.r_zero())
    }

    pub fn leading(&self) -> Option<&E> {
        self.c.last()
    }

    /// The derivative `partial f = c_0`.
    pub fn partial<R: TwistRing<Elem = E>>(&self, r: &R) -> E {
        self.coeff(r, 0)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn lowest_index<R: TwistRing<Elem = E>>(&self, r: &R) -> Option<usize> {
        self.c.iter().position(|x| !r.r_is_zero(x))
    }

    pub fn add<R: TwistRing<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(r, (0..n).map(|i| r.r_add(&self.coeff(r, i), &o.coeff(r, i))).collect())
    }

    pub fn sub<R: TwistRing<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(r, (0..n).map(|i| r.r_sub(&self.coeff(r, i), &o.coeff(r, i))).collect())
    }

    /// `a * self` (left scalar multiplication).
    pub fn scale_left<R: TwistRing<Elem = E>>(&self, r: &R, a: &E) -> Self {
        Self::new(r, self.c.iter().map(|x| r.r_mul(a, x)).collect())
    }

    /// `self * a` (right scalar multiplication): `c_i tau^i a = c_i a^{q^i} tau^i`.
    pub fn scale_right<R: TwistRing<Elem = E>>(&self, r: &R, a: &E) -> Self {
        let mut ai = a.clone();
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(r.r_mul(x, &ai));
            ai = r.twist(&ai);
        }
        Self::new(r, out)
    }

    /// Product under `tau a = a^q tau`.
    pub fn mul<R: TwistRing<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![r.r_zero(); self.c.len() + o.c.len() - 1];
        // twisted[j] holds o.c[j]^{q^i} for the current i
        let mut twisted: Vec<E> = o.c.clone();
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                for t in twisted.iter_mut() {
                    *t = r.twist(t);
                }
            }
            if r.r_is_zero(a) {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                if !r.r_is_zero(b) {
                    out[i + j] = r.r_add(&out[i + j], &r.r_mul(a, b));
                }
            }
        }
        Self::new(r, out)
    }

    /// Right division `self = quot * g + rem` with `deg rem < deg g`.
    pub fn right_divmod<R: TwistRing<Elem = E>>(&self, r: &R, g: &Self) -> Result<(Self, Self)> {
        let dg = g.degree().ok_or_else(|| Error::pre("division by the zero skew polynomial"))?;
        let lead_inv0 = r.r_inv(g.leading().unwrap()).ok_or_else(|| Error::pre("leading coefficient not invertible"))?;
        let mut rem = self.clone();
        let mut quot = vec![r.r_zero(); self.c.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let k = dr - dg;
            // c tau^k g has leading coefficient c * lead^{q^k}
            let mut li = lead_inv0.clone();
            for _ in 0..k {
                li = r.twist(&li);
            }
            let c = r.r_mul(rem.leading().unwrap(), &li);
            let term = Self::monomial(r, c.clone(), k).mul(r, g);
            let mut next = rem.sub(r, &term);
            // force exact cancellation of the leading term
            if next.c.len() > dr {
                next.c.truncate(dr);
                next = Self::new(r, next.c);
            }
            rem = next;
            quot[k] = c;
        }
        Ok((Self::new(r, quot), rem))
    }

    /// Exact right quotient `self = quot * g`, erroring on a nonzero remainder.
    pub fn right_div_exact<R: TwistRing<Elem = E>>(&self, r: &R, g: &Self) -> Result<Self> {
        let (q, rem) = self.right_divmod(r, g)?;
        if !rem.is_zero() {
            return Err(Error::pre("skew polynomial is not right divisible"));
        }
        Ok(q)
    }

    pub fn map<T: Clone + PartialEq + Debug, G: Fn(&E) -> T>(&self, g: G) -> SkewPoly<T> {
        SkewPoly { c: self.c.iter().map(g).collect() }
    }

    /// The `F_q`-linear polynomial `sum c_i X^{q^i}` as `(exponent, coefficient)` terms.
    pub fn to_additive_poly<R: TwistRing<Elem = E>>(&self, r: &R, q: u64) -> Vec<(u64, E)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !r.r_is_zero(x))
            .map(|(i, x)| (q.pow(i as u32), x.clone()))
            .collect()
    }
}

impl<E: Clone + PartialEq + Debug> SkewPoly<E> {
    /// Evaluates the additive polynomial at `x`.
    pub fn eval<F: FiniteField<Elem = E>>(&self, f: &F, x: &E) -> E {
        let mut acc = f.zero();
        let mut xi = x.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                xi = f.frobenius(&xi);
            }
            if !f.is_zero(c) {
                acc = f.add(&acc, &f.mul(c, &xi));
            }
        }
        acc
    }
}

/// Evaluates a skew polynomial with base-field coefficients at a point of an extension.
pub fn eval_lifted(ext: &GfExt, f: &SkewPoly<u32>, x: &[u32]) -> Vec<u32> {
    let lifted = f.map(|c| ext.lift(c));
    lifted.eval(ext, &x.to_vec())
}

/// Matrix of the `F_p`-linear map `x -> f(x)` on a field, in its `F_p`-coordinates.
fn fp_matrix<F: FiniteField>(f: &F, g: &SkewPoly<F::Elem>) -> Matrix<u32> {
    let n = f.degree();
    let basis = f.fp_basis();
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| f.fp_coords(&g.eval(f, b))).collect();
    let mut m = Matrix { rows: n, cols: n, data: vec![0u32; n * n] };
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

/// `F_p`-basis of `{x in F : g(x) = 0}` (for `q = p`).
pub fn kernel_basis<F: FiniteField>(f: &F, g: &SkewPoly<F::Elem>) -> Vec<F::Elem> {
    if g.is_zero() {
        return f.fp_basis();
    }
    let fp = Gf::prime(f.characteristic());
    let m = fp_matrix(f, g);
    linalg::kernel(&fp, &m).into_iter().map(|v| f.from_fp_coords(&v)).collect()
}

/// Smallest extension degree `m` of the base table field in which `g` (with `c_0 != 0`)
/// has its full `q^{deg g}` roots. Returns `m`; the absolute degree is `m * deg B`.
pub fn splitting_degree(base: &Gf, g: &SkewPoly<u32>, cap: usize) -> Result<usize> {
    let d = g.degree().ok_or_else(|| Error::pre("zero polynomial"))?;
    if base.is_zero(&g.c[0]) {
        return Err(Error::pre("inseparable input: the separable part must be extracted first"));
    }
    for m in 1..=cap.max(1) {
        if m * base.degree() > cap {
            break;
        }
        let ext = GfExt::new(base, m);
        let lifted = g.map(|c| ext.lift(c));
        if kernel_basis(&ext, &lifted).len() == d {
            return Ok(m);
        }
    }
    Err(Error::cap(format!("no splitting field within absolute degree {cap}")))
}

/// Monic additive polynomial whose roots are exactly the `F_p`-span of `gens`.
pub fn from_kernel<F: FiniteField>(f: &F, gens: &[F::Elem]) -> SkewPoly<F::Elem> {
    let p = f.characteristic() as u64;
    let mut u = SkewPoly::one(f);
    for y in gens {
        let c = u.eval(f, y);
        if f.is_zero(&c) {
            continue;
        }
        let factor = SkewPoly::new(f, vec![f.neg(&f.pow(&c, p - 1)), f.one()]);
        u = factor.mul(f, &u);
    }
    u
}

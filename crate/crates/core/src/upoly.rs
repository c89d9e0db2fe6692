//! Dense univariate polynomials over a [`FiniteField`], little-endian coefficient vectors.
//!
//! Includes Rabin irreducibility, distinct-degree factorization and Cantor–Zassenhaus
//! root finding.

use crate::field::{fp_poly, FiniteField};
use num_bigint::BigUint;
use rand::Rng;

pub type Poly<F> = Vec<<F as FiniteField>::Elem>;

pub fn trim<F: FiniteField>(f: &F, a: &mut Poly<F>) {
    while let Some(c) = a.last() {
        if f.is_zero(c) {
            a.pop();
        } else {
            break;
        }
    }
}

pub fn degree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn add<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut r: Poly<F> = (0..n).map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, &mut r);
    r
}

pub fn sub<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut r: Poly<F> = (0..n).map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, &mut r);
    r
}

pub fn scale<F: FiniteField>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F> {
    let mut r: Poly<F> = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut r);
    r
}

pub fn mul<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = f.add(&r[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut r);
    r
}

pub fn divrem<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let mut r: Poly<F> = a.to_vec();
    trim(f, &mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lc_inv = f.inv(&b[db]).unwrap();
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(&r[dr], &lc_inv);
        for j in 0..=db {
            let s = f.mul(&c, &b[j]);
            r[dr - db + j] = f.sub(&r[dr - db + j], &s);
        }
        q[dr - db] = c;
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

pub fn rem<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    divrem(f, a, b).1
}

pub fn monic<F: FiniteField>(f: &F, a: &[F::Elem]) -> Poly<F> {
    match degree(f, a) {
        None => Vec::new(),
        Some(d) => scale(f, &a[..=d], &f.inv(&a[d]).unwrap()),
    }
}

pub fn gcd<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    monic(f, &x)
}

/// Returns `(g, s, t)` with `s a + t b = g` and `g` monic.
pub fn xgcd<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(f, &mut r0);
    trim(f, &mut r1);
    let (mut s0, mut s1): (Poly<F>, Poly<F>) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1): (Poly<F>, Poly<F>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match degree(f, &r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let c = f.inv(&r0[d]).unwrap();
            (scale(f, &r0, &c), scale(f, &s0, &c), scale(f, &t0, &c))
        }
    }
}

pub fn mulmod<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Poly<F> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod_big<F: FiniteField>(f: &F, a: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Poly<F> {
    let mut result = rem(f, &[f.one()], m);
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        result = mulmod(f, &result, &result, m);
        if e.bit(i) {
            result = mulmod(f, &result, &base, m);
        }
    }
    result
}

pub fn powmod<F: FiniteField>(f: &F, a: &[F::Elem], e: u64, m: &[F::Elem]) -> Poly<F> {
    powmod_big(f, a, &BigUint::from(e), m)
}

pub fn eval<F: FiniteField>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: FiniteField>(f: &F, a: &[F::Elem]) -> Poly<F> {
    let mut r: Poly<F> = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_int(i as i64))).collect();
    trim(f, &mut r);
    r
}

/// `x^(|F|^k) mod m` for `k = 0..=kmax`.
fn frobenius_powers_of_x<F: FiniteField>(f: &F, m: &[F::Elem], kmax: usize) -> Vec<Poly<F>> {
    let q = f.order();
    let x = rem(f, &[f.zero(), f.one()], m);
    let mut out = vec![x.clone()];
    for _ in 0..kmax {
        let next = powmod_big(f, out.last().unwrap(), &q, m);
        out.push(next);
    }
    out
}

/// Rabin's test over `F`.
pub fn is_irreducible<F: FiniteField>(f: &F, a: &[F::Elem]) -> bool {
    let n = match degree(f, a) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let xs = frobenius_powers_of_x(f, a, n);
    let x: Poly<F> = vec![f.zero(), f.one()];
    if !sub(f, &xs[n], &x).is_empty() {
        return false;
    }
    fp_poly::prime_factors(n as u64).into_iter().all(|l| {
        let g = gcd(f, a, &sub(f, &xs[n / l as usize], &x));
        g.len() == 1
    })
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// pairs `(d, product of all irreducible factors of degree d)`.
pub fn distinct_degree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(usize, Poly<F>)> {
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    let x: Poly<F> = vec![f.zero(), f.one()];
    let q = f.order();
    let mut h = rem(f, &x, &rest);
    let mut d = 0;
    while degree(f, &rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod_big(f, &h, &q, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if g.len() > 1 {
            out.push((d, g.clone()));
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
    }
    if let Some(dr) = degree(f, &rest) {
        if dr > 0 {
            out.push((dr, rest));
        }
    }
    out
}

/// Squarefree decomposition support: the radical-free part `a / gcd(a, a')` with
/// multiplicities handled by repeated division. Returns (irreducible-degree multiset data)
/// as the list of distinct irreducible factor degrees of `a`.
pub fn factor_degrees<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<usize> {
    let mut degs = Vec::new();
    for part in squarefree_parts(f, a) {
        for (d, g) in distinct_degree(f, &part) {
            let k = degree(f, &g).unwrap() / d;
            degs.extend(std::iter::repeat(d).take(k));
        }
    }
    degs.sort_unstable();
    degs
}

/// Squarefree factors (without multiplicities) whose product is the radical of `a`.
pub fn squarefree_parts<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<Poly<F>> {
    let a = monic(f, a);
    if degree(f, &a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let da = derivative(f, &a);
    if da.is_empty() {
        // a = b^p: take p-th roots of coefficients
        let p = f.characteristic() as usize;
        let b: Poly<F> = a
            .iter()
            .step_by(p)
            .map(|c| f.frobenius_pow(c, f.degree() - 1))
            .collect();
        return squarefree_parts(f, &b);
    }
    let g = gcd(f, &a, &da);
    let radical_part = divrem(f, &a, &g).0;
    let mut parts = vec![radical_part.clone()];
    if g.len() > 1 {
        for extra in squarefree_parts(f, &g) {
            // keep only factors not already present
            let common = gcd(f, &extra, &radical_part);
            let new = divrem(f, &extra, &common).0;
            if new.len() > 1 {
                parts.push(new);
            }
        }
    }
    parts
}

/// Distinct roots in `F` of a nonzero polynomial, sorted.
pub fn roots<F: FiniteField, R: Rng + ?Sized>(f: &F, a: &[F::Elem], rng: &mut R) -> Vec<F::Elem> {
    let a = monic(f, a);
    let d = match degree(f, &a) {
        None => panic!("roots of zero polynomial"),
        Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let x: Poly<F> = vec![f.zero(), f.one()];
    // split off the product of linear factors: gcd(a, x^Q - x)
    let xq = if d == 1 { x.clone() } else { powmod_big(f, &x, &f.order(), &a) };
    let lin = if d == 1 { a.clone() } else { gcd(f, &a, &sub(f, &xq, &x)) };
    let mut out = Vec::new();
    split_linear(f, &lin, rng, &mut out);
    out.sort();
    out
}

fn split_linear<F: FiniteField, R: Rng + ?Sized>(f: &F, a: &[F::Elem], rng: &mut R, out: &mut Vec<F::Elem>) {
    let d = degree(f, a).unwrap_or(0);
    if d == 0 {
        return;
    }
    if d == 1 {
        out.push(f.neg(&f.mul(&a[0], &f.inv(&a[1]).unwrap())));
        return;
    }
    let p = f.characteristic();
    loop {
        let delta = f.random(rng);
        let h = if p == 2 {
            // Tr(delta x) separates roots for suitable delta
            let base: Poly<F> = vec![f.zero(), delta];
            // absolute trace map
            let n = f.degree();
            let mut acc = rem(f, &base, a);
            let mut cur = acc.clone();
            for _ in 1..n {
                cur = mulmod(f, &cur, &cur, a);
                acc = add(f, &acc, &cur);
            }
            acc
        } else {
            let base: Poly<F> = vec![delta, f.one()];
            let e = (f.order() - 1u32) / 2u32;
            sub(f, &powmod_big(f, &base, &e, a), &[f.one()])
        };
        let g = gcd(f, a, &h);
        let dg = degree(f, &g).unwrap_or(0);
        if dg > 0 && dg < d {
            let other = divrem(f, a, &g).0;
            split_linear(f, &g, rng, out);
            split_linear(f, &other, rng, out);
            return;
        }
    }
}

/// Monic polynomial with the given roots.
pub fn from_roots<F: FiniteField>(f: &F, roots: &[F::Elem]) -> Poly<F> {
    roots.iter().fold(vec![f.one()], |acc, r| mul(f, &acc, &[f.neg(r), f.one()]))
}

//! Hermite normal forms of sublattices over a discrete valuation ring, and Cartan types.
//!
//! The same enumeration serves the local ring `F_{q_w}[[z]]` (polynomials in `z` suffice,
//! every representative divides `z^{max mu}`) and the global ring `A` localized at a prime
//! `w`, with `w` as uniformizer.

use crate::field::{FiniteField, Gf};
use crate::poly_a::PolyA;
use crate::upoly;

/// A discrete valuation ring with explicit residues modulo powers of the uniformizer.
pub trait Dvr: Sync {
    type E: Clone + PartialEq + std::fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Valuation, `None` for zero.
    fn valuation(&self, a: &Self::E) -> Option<usize>;
    /// `pi^k`.
    fn pi_pow(&self, k: usize) -> Self::E;
    /// Canonical representatives of `O / pi^k`.
    fn residues(&self, k: usize) -> Vec<Self::E>;
    /// Size of the residue field.
    fn residue_size(&self) -> u64;
}

/// `F_{q_w}[z]` with uniformizer `z`.
#[derive(Clone, Debug)]
pub struct LocalDvr {
    pub field: Gf,
}

impl Dvr for LocalDvr {
    type E = Vec<u32>;
    fn zero(&self) -> Vec<u32> {
        Vec::new()
    }
    fn one(&self) -> Vec<u32> {
        vec![1]
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        upoly::add(&self.field, a, b)
    }
    fn sub(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        upoly::sub(&self.field, a, b)
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        upoly::mul(&self.field, a, b)
    }
    fn valuation(&self, a: &Vec<u32>) -> Option<usize> {
        a.iter().position(|c| !self.field.is_zero(c))
    }
    fn pi_pow(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0; k];
        v.push(1);
        v
    }
    fn residues(&self, k: usize) -> Vec<Vec<u32>> {
        let size = self.field.size() as u64;
        (0..size.pow(k as u32))
            .map(|mut code| {
                let mut v: Vec<u32> = (0..k)
                    .map(|_| {
                        let c = (code % size) as u32;
                        code /= size;
                        c
                    })
                    .collect();
                upoly::trim(&self.field, &mut v);
                v
            })
            .collect()
    }
    fn residue_size(&self) -> u64 {
        self.field.size() as u64
    }
}

/// `A` at the prime `w`.
#[derive(Clone, Debug)]
pub struct GlobalDvr {
    pub w: PolyA,
}

impl Dvr for GlobalDvr {
    type E = PolyA;
    fn zero(&self) -> PolyA {
        PolyA::zero(self.w.q())
    }
    fn one(&self) -> PolyA {
        PolyA::one(self.w.q())
    }
    fn add(&self, a: &PolyA, b: &PolyA) -> PolyA {
        a.add(b)
    }
    fn sub(&self, a: &PolyA, b: &PolyA) -> PolyA {
        a.sub(b)
    }
    fn mul(&self, a: &PolyA, b: &PolyA) -> PolyA {
        a.mul(b)
    }
    fn valuation(&self, a: &PolyA) -> Option<usize> {
        a.valuation(&self.w).map(|v| v as usize)
    }
    fn pi_pow(&self, k: usize) -> PolyA {
        self.w.pow(k as u32)
    }
    fn residues(&self, k: usize) -> Vec<PolyA> {
        let q = self.w.q() as u64;
        let d = self.w.deg() * k;
        (0..q.pow(d as u32))
            .map(|mut code| {
                let c: Vec<u32> = (0..d)
                    .map(|_| {
                        let x = (code % q) as u32;
                        code /= q;
                        x
                    })
                    .collect();
                PolyA::new(self.w.q(), c)
            })
            .collect()
    }
    fn residue_size(&self) -> u64 {
        (self.w.q() as u64).pow(self.w.deg() as u32)
    }
}

/// Square matrix as rows.
pub type Mat<E> = Vec<Vec<E>>;

pub fn mat_mul<D: Dvr>(d: &D, a: &Mat<D::E>, b: &Mat<D::E>) -> Mat<D::E> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(d.zero(), |acc, k| d.add(&acc, &d.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn det<D: Dvr>(d: &D, m: &Mat<D::E>, rows: &[usize], cols: &[usize]) -> D::E {
    if rows.is_empty() {
        return d.one();
    }
    let mut acc = d.zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = &m[rows[0]][c];
        if d.valuation(e).is_none() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = d.mul(e, &det(d, m, &rows[1..], &rest));
        acc = if k % 2 == 0 { d.add(&acc, &term) } else { d.sub(&acc, &term) };
    }
    acc
}

/// Adjugate, so that `m adj(m) = det(m) I`.
pub fn adjugate<D: Dvr>(d: &D, m: &Mat<D::E>) -> Mat<D::E> {
    let n = m.len();
    let all: Vec<usize> = (0..n).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // cofactor of (j, i)
                    let rows: Vec<usize> = all.iter().copied().filter(|&x| x != j).collect();
                    let cols: Vec<usize> = all.iter().copied().filter(|&x| x != i).collect();
                    let c = det(d, m, &rows, &cols);
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        d.sub(&d.zero(), &c)
                    }
                })
                .collect()
        })
        .collect()
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Elementary divisor exponents, weakly decreasing; `None` for singular matrices.
pub fn cartan_type<D: Dvr>(d: &D, m: &Mat<D::E>) -> Option<Vec<i64>> {
    let n = m.len();
    let mut dk = vec![0usize; n + 1];
    for k in 1..=n {
        let sets = subsets(n, k);
        let mut best: Option<usize> = None;
        for rows in &sets {
            for cols in &sets {
                if let Some(v) = d.valuation(&det(d, m, rows, cols)) {
                    best = Some(best.map_or(v, |b: usize| b.min(v)));
                }
            }
        }
        dk[k] = best?;
    }
    // d_k = sum of the k smallest exponents
    let mut asc: Vec<i64> = (1..=n).map(|k| (dk[k] - dk[k - 1]) as i64).collect();
    asc.reverse();
    Some(asc)
}

/// Compositions of `total` into `r` parts each at most `max`.
pub(crate) fn compositions(total: usize, r: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, r: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == r {
            if left <= max {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for a in 0..=left.min(max) {
            cur.push(a);
            rec(left - a, r, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(total, r, max, &mut Vec::new(), &mut out);
    out
}

/// Upper triangular Hermite forms (columns span the lattice) with diagonal `pi^{a_i}` and
/// entry `(i, j)`, `j > i`, reduced modulo `pi^{a_i}`, whose Cartan type is `mu`
/// (`mu` weakly decreasing with nonnegative entries).
pub fn hnf_reps<D: Dvr>(d: &D, mu: &[i64]) -> Vec<Mat<D::E>> {
    let r = mu.len();
    let total: i64 = mu.iter().sum();
    let max = mu.first().copied().unwrap_or(0) as usize;
    let mut out = Vec::new();
    for diag in compositions(total as usize, r, max) {
        let slots: Vec<(usize, usize)> = (0..r).flat_map(|i| ((i + 1)..r).map(move |j| (i, j))).collect();
        let choices: Vec<Vec<D::E>> = slots.iter().map(|&(i, _)| d.residues(diag[i])).collect();
        let count: u64 = choices.iter().map(|c| c.len() as u64).product();
        let found = crate::par::map_range(0..count, |mut code| {
            let mut m: Mat<D::E> = (0..r).map(|i| (0..r).map(|j| if i == j { d.pi_pow(diag[i]) } else { d.zero() }).collect()).collect();
            for (s, &(i, j)) in slots.iter().enumerate() {
                let n = choices[s].len() as u64;
                m[i][j] = choices[s][(code % n) as usize].clone();
                code /= n;
            }
            (cartan_type(d, &m).as_deref() == Some(mu)).then_some(m)
        });
        out.extend(found.into_iter().flatten());
    }
    out
}

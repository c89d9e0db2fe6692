//! Torsion submodules `phi[a]` inside explicit extension fields.

use super::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf, GfExt};
use crate::linalg::{self, Matrix};
use crate::poly_a::PolyA;
use crate::skew::{self, SkewPoly};
use rand::Rng;

/// `phi[a]` as an `F_p`-space with its `t`-action, realized inside `ext`.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    pub level: PolyA,
    pub ext: GfExt,
    /// `F_p`-basis of the torsion points.
    pub basis: Vec<Vec<u32>>,
    /// Matrix of `x -> phi_t(x)` in [`TorsionModule::basis`] (columns are images).
    pub t_action: Matrix<u32>,
    fp: Gf,
    pivot_rows: Vec<usize>,
    pivot_inv: Matrix<u32>,
}

impl TorsionModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn prime_field(&self) -> &Gf {
        &self.fp
    }

    /// Coordinates of a torsion point in the basis; `None` if `x` is not in `phi[a]`.
    pub fn coords(&self, x: &[u32]) -> Option<Vec<u32>> {
        let full = self.ext.fp_coords(&x.to_vec());
        let sub: Vec<u32> = self.pivot_rows.iter().map(|&r| full[r]).collect();
        let c = linalg::mat_vec(&self.fp, &self.pivot_inv, &sub);
        (self.element(&c) == x).then_some(c)
    }

    pub fn element(&self, c: &[u32]) -> Vec<u32> {
        let e = &self.ext;
        let mut acc = e.zero();
        for (ci, b) in c.iter().zip(&self.basis) {
            if *ci != 0 {
                acc = e.add(&acc, &e.mul(&e.from_int(*ci as i64), b));
            }
        }
        acc
    }

    /// Action of `b in A` on coordinate vectors.
    pub fn act_coords(&self, b: &PolyA, c: &[u32]) -> Vec<u32> {
        let m = linalg::poly_at(&self.fp, b.coeffs(), &self.t_action);
        linalg::mat_vec(&self.fp, &m, c)
    }

    /// Whether the tuple generates `phi[a]` as an `A`-module (a basis when free of rank `r`).
    pub fn generates(&self, tuple: &[Vec<u32>]) -> bool {
        let d = self.level.deg();
        let mut rows = Vec::new();
        for c in tuple {
            let mut v = c.clone();
            for _ in 0..d {
                rows.push(v.clone());
                v = linalg::mat_vec(&self.fp, &self.t_action, &v);
            }
        }
        if rows.is_empty() {
            return self.dim() == 0;
        }
        linalg::rank(&self.fp, &Matrix::from_rows(rows)) == self.dim()
    }

    /// An `A/a`-basis found by seeded random search (for `phi[a]` free of rank `r`).
    pub fn module_basis<R: Rng + ?Sized>(&self, r: usize, rng: &mut R) -> Vec<Vec<u32>> {
        let p = self.fp.p();
        loop {
            let tuple: Vec<Vec<u32>> =
                (0..r).map(|_| (0..self.dim()).map(|_| rng.gen_range(0..p)).collect()).collect();
            if self.generates(&tuple) {
                return tuple;
            }
        }
    }

    /// Matrix of an `F_p`-linear field map restricted to the torsion (columns are images).
    pub fn matrix_of<G: Fn(&Vec<u32>) -> Vec<u32>>(&self, map: G) -> Result<Matrix<u32>> {
        let n = self.dim();
        let mut m = Matrix { rows: n, cols: n, data: vec![0u32; n * n] };
        for (j, b) in self.basis.iter().enumerate() {
            let img = map(b);
            let c = self.coords(&img).ok_or_else(|| Error::consistency("map does not preserve the torsion"))?;
            for (i, v) in c.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// `F_p`-basis (coordinates) of the `A/w`-span of `rows`, each row given by its
    /// `A/w`-coordinates in `basis`.
    pub fn span_from_residues(&self, basis: &[Vec<u32>], rows: &[Vec<PolyA>]) -> Vec<Vec<u32>> {
        let d = self.level.deg();
        let mut out = Vec::with_capacity(rows.len() * d);
        for row in rows {
            let mut v = vec![0u32; self.dim()];
            for (c, b) in row.iter().zip(basis) {
                if !c.is_zero() {
                    let img = self.act_coords(c, b);
                    for (x, y) in v.iter_mut().zip(img) {
                        *x = (*x + y) % self.fp.p();
                    }
                }
            }
            for _ in 0..d {
                out.push(v.clone());
                v = linalg::mat_vec(&self.fp, &self.t_action, &v);
            }
        }
        out
    }

    /// All torsion points (for small modules), in coordinate order.
    pub fn all_coords(&self) -> Vec<Vec<u32>> {
        let p = self.fp.p() as u64;
        let n = self.dim();
        let total = p.pow(n as u32);
        (0..total)
            .map(|mut k| {
                (0..n)
                    .map(|_| {
                        let d = (k % p) as u32;
                        k /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    }
}

/// All `j`-dimensional subspaces of `(A/w)^r` for a prime `w`, as reduced row echelon
/// matrices with entries reduced mod `w`, in a fixed order.
pub fn residue_subspaces(w: &PolyA, r: usize, j: usize) -> Vec<Vec<Vec<PolyA>>> {
    let q = w.q();
    let d = w.deg();
    let residues: Vec<PolyA> = (0..(q as u64).pow(d as u32))
        .map(|mut k| {
            let c: Vec<u32> = (0..d)
                .map(|_| {
                    let x = (k % q as u64) as u32;
                    k /= q as u64;
                    x
                })
                .collect();
            PolyA::new(q, c)
        })
        .collect();
    let mut out = Vec::new();
    for pivots in combinations(r, j) {
        // free positions: (row l, column c) with c > pivots[l], c not a pivot
        let free: Vec<(usize, usize)> = (0..j)
            .flat_map(|l| ((pivots[l] + 1)..r).filter(|c| !pivots.contains(c)).map(move |c| (l, c)))
            .collect();
        let total = (residues.len() as u64).pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = vec![vec![PolyA::zero(q); r]; j];
            for (l, &p) in pivots.iter().enumerate() {
                m[l][p] = PolyA::one(q);
            }
            for &(l, c) in &free {
                m[l][c] = residues[(code % residues.len() as u64) as usize].clone();
                code /= residues.len() as u64;
            }
            out.push(m);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Torsion `phi[a]` in the given extension of the module's base field.
pub fn torsion_module(phi: &DrinfeldModule<Gf>, a: &PolyA, ext: &GfExt) -> Result<TorsionModule> {
    if a.is_zero() {
        return Err(Error::pre("torsion of the zero element"));
    }
    if ext.base() != phi.field() {
        return Err(Error::pre("extension is not over the module's base field"));
    }
    let fp = Gf::prime(ext.characteristic());
    let phi_a: SkewPoly<Vec<u32>> = phi.phi_of(a).map(|c| ext.lift(c));
    let basis = skew::kernel_basis(ext, &phi_a);
    let phi_t = phi.phi_t().map(|c| ext.lift(c));
    build(a.clone(), ext.clone(), fp, basis, |x| phi_t.eval(ext, x))
}

fn build<G: Fn(&Vec<u32>) -> Vec<u32>>(
    level: PolyA,
    ext: GfExt,
    fp: Gf,
    basis: Vec<Vec<u32>>,
    t_map: G,
) -> Result<TorsionModule> {
    let k = basis.len();
    let n = ext.degree();
    // rows of the (n x k) coordinate matrix that are independent
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| ext.fp_coords(b)).collect();
    let mt = Matrix::from_rows(if k == 0 { vec![] } else { cols.clone() });
    let pivot_rows = if k == 0 {
        Vec::new()
    } else {
        let mut m = mt.clone();
        linalg::rref(&fp, &mut m)
    };
    let pivot_inv = if k == 0 {
        Matrix { rows: 0, cols: 0, data: vec![] }
    } else {
        let s = Matrix::from_rows(pivot_rows.iter().map(|&r| (0..k).map(|j| cols[j][r]).collect()).collect());
        linalg::inverse(&fp, &s).ok_or_else(|| Error::consistency("torsion basis not independent"))?
    };
    debug_assert!(pivot_rows.iter().all(|&r| r < n));
    let mut tm = TorsionModule {
        level,
        ext,
        basis,
        t_action: Matrix { rows: k, cols: k, data: vec![0; k * k] },
        fp,
        pivot_rows,
        pivot_inv,
    };
    tm.t_action = tm.matrix_of(t_map)?;
    Ok(tm)
}

/// Torsion `phi[a]` in the smallest extension (starting from `hint`, trying multiples of
/// the base degree) where it has full size `q^{r deg a}`; requires `a` prime to the
/// characteristic.
pub fn full_torsion(phi: &DrinfeldModule<Gf>, a: &PolyA, hint: Option<usize>, cap: usize) -> Result<TorsionModule> {
    let base = phi.field();
    let want = phi.rank() * a.deg();
    if base.is_zero(&phi.gamma_of(a)) {
        return Err(Error::pre("level not prime to the characteristic"));
    }
    let candidates: Vec<usize> = match hint {
        Some(h) => std::iter::once(h).chain((1..).map(|k| k)).take_while(|m| m * base.degree() <= cap).collect(),
        None => (1..).take_while(|m| m * base.degree() <= cap).collect(),
    };
    for m in candidates {
        let ext = GfExt::new(base, m);
        let tm = torsion_module(phi, a, &ext)?;
        if tm.dim() == want {
            return Ok(tm);
        }
    }
    Err(Error::cap(format!("phi[{a}] not split within absolute degree {cap}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        let w = PolyA::parse(2, "t^2+t+1").unwrap();
        assert_eq!(residue_subspaces(&w, 2, 1).len(), 5);
        assert_eq!(residue_subspaces(&w, 3, 1).len(), 21);
        assert_eq!(residue_subspaces(&w, 3, 2).len(), 21);
        assert_eq!(residue_subspaces(&PolyA::t(3), 2, 2).len(), 1);
    }

    #[test]
    fn carlitz_t_torsion() {
        let f = Gf::prime(2);
        let c = DrinfeldModule::new(&f, 1, vec![1]).unwrap();
        let tm = full_torsion(&c, &PolyA::t(2), None, 64).unwrap();
        assert_eq!(tm.dim(), 1);
        assert_eq!(tm.basis, vec![vec![1]]);
    }

    #[test]
    fn rank_two_t_torsion() {
        let f = Gf::prime(2);
        let m = DrinfeldModule::new(&f, 1, vec![1, 1]).unwrap();
        let tm = full_torsion(&m, &PolyA::t(2), None, 64).unwrap();
        assert_eq!(tm.dim(), 2);
        assert_eq!(tm.ext.degree(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = tm.module_basis(2, &mut rng);
        assert!(tm.generates(&b));
        // t acts as zero on phi[t]
        assert!(tm.t_action.data.iter().all(|&x| x == 0));
    }

    #[test]
    fn unit_level_is_zero() {
        let f = Gf::prime(2);
        let m = DrinfeldModule::new(&f, 1, vec![1, 1]).unwrap();
        let ext = GfExt::new(&f, 1);
        assert_eq!(torsion_module(&m, &PolyA::one(2), &ext).unwrap().dim(), 0);
    }
}

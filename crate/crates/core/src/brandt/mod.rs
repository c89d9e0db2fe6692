//! Weight-`k` Hecke (Brandt) matrices on the leveled supersingular set.
//!
//! For the point `i` with module `phi_i` and level structure `lambda_i`, every `j`-dimensional
//! `A/w`-subspace `C` of `phi_i[w]` gives the monic isogeny `u_C : phi_i -> psi`. The pair
//! `(psi, u_C o lambda_i)` is carried by a unique scalar onto a point representative, and
//! the entry `B[i][p]` accumulates `(d of the composite isogeny)^k`. On functions,
//! `(B f)(i) = sum_C (d(c u_C))^k f(p)`.

pub mod eigen;
pub mod jl;

use crate::drinfeld::{torsion_module, residue_subspaces, DrinfeldModule};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FiniteField, Gf, GfExt};
use crate::linalg::{self, Matrix};
use crate::poly_a::PrimeP;
use crate::skew::{eval_lifted, from_kernel, SkewPoly};
use crate::supersingular::leveled::frobenius_order_mod;
use crate::supersingular::SSLeveledSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub use eigen::{Eigensystem, OpLabel};

/// Isogeny data of `T_{w,j}`: for each source point the list of `(target, d)` pairs, one per
/// subspace, where `d` is the derivative of the normalized isogeny. Weight-`k` matrices
/// are read off without recomputing isogenies.
#[derive(Clone, Debug)]
pub struct IsogenyTable {
    pub label: OpLabel,
    pub field: Gf,
    pub rows: Vec<Vec<(usize, u32)>>,
}

/// A weight-`k` Brandt matrix over the search field `F_{q_v^r}`.
#[derive(Clone, Debug)]
pub struct BrandtMatrix {
    pub label: OpLabel,
    pub weight: usize,
    pub field: Gf,
    pub matrix: Matrix<u32>,
    /// Normalization scalars of the point representatives.
    pub scalars: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BrandtRecord {
    pub w: String,
    pub j: usize,
    pub weight: usize,
    pub field: FieldDescriptor,
    pub scalars: Vec<u32>,
    pub rows: Vec<Vec<u32>>,
}

impl BrandtMatrix {
    pub fn record(&self) -> BrandtRecord {
        BrandtRecord {
            w: self.label.w.clone(),
            j: self.label.j,
            weight: self.weight,
            field: self.field.descriptor(),
            scalars: self.scalars.clone(),
            rows: self.matrix.to_rows(),
        }
    }
}

impl IsogenyTable {
    pub fn matrix(&self, k: usize, scalars: &[u32]) -> BrandtMatrix {
        let f = &self.field;
        let n = self.rows.len();
        let mut m = linalg::zeros(f, n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(p, d) in row {
                let v = f.add(m.get(i, p), &f.pow(&d, k as u64));
                m.set(i, p, v);
            }
        }
        BrandtMatrix { label: self.label.clone(), weight: k, field: f.clone(), matrix: m, scalars: scalars.to_vec() }
    }
}

/// Validates `w` against the set: same `q`, coprime to `P n`, `1 <= j <= r`.
pub fn check_operator(set: &SSLeveledSet, w: &PrimeP, j: usize) -> Result<()> {
    if j == 0 || j > set.r {
        return Err(Error::pre(format!("j = {j} outside 1..={}", set.r)));
    }
    if w.q() != set.place.q() {
        return Err(Error::pre("prime over a different q"));
    }
    if w == &set.place {
        return Err(Error::pre("w equals the characteristic place"));
    }
    if set.level.rem(w.poly()).is_zero() {
        return Err(Error::pre(format!("w = {} divides the level", w.poly())));
    }
    Ok(())
}

/// Lookup from `(class, coordinates of a level structure)` to `(point, automorphism a)`
/// with the structure equal to `a lambda_p`.
fn level_index(set: &SSLeveledSet) -> HashMap<(usize, Vec<Vec<u32>>), (usize, u32)> {
    let mut map = HashMap::new();
    for (p, pt) in set.points.iter().enumerate() {
        let tm = &set.torsion[pt.class];
        let pts: Vec<Vec<u32>> = pt.level.iter().map(|c| tm.element(c)).collect();
        for a in set.classes[pt.class].module.automorphism_elements() {
            let al = tm.ext.lift(&a);
            let key: Vec<Vec<u32>> = pts.iter().map(|x| tm.coords(&tm.ext.mul(&al, x)).unwrap()).collect();
            map.insert((pt.class, key), (p, a));
        }
    }
    map
}

/// The right quotient `u phi_t u^{-1}` as a module over the base field.
fn target_module(phi: &DrinfeldModule<Gf>, u: &SkewPoly<u32>) -> Result<DrinfeldModule<Gf>> {
    let f = phi.field();
    let lhs = u.mul(f, &phi.phi_t());
    let psi_t = lhs.right_div_exact(f, u).map_err(|_| Error::consistency("kernel is not phi_t-stable"))?;
    let coeffs: Vec<u32> = (1..=phi.rank()).map(|i| psi_t.coeff(f, i)).collect();
    DrinfeldModule::new(f, *phi.gamma(), coeffs)
}

/// Isogeny data of `T_{w,j}` on the set (rows computed in parallel).
pub fn isogeny_table(set: &SSLeveledSet, w: &PrimeP, j: usize) -> Result<IsogenyTable> {
    check_operator(set, w, j)?;
    let f = &set.field;
    let r = set.r;
    let m = frobenius_order_mod(&set.place, w.poly()) as usize;
    let ext_w = GfExt::new(f, m);
    let index = level_index(set);
    let subspaces = residue_subspaces(w.poly(), r, j);
    log::info!("T_({},{j}): {} subspaces per point, {} points", w.poly(), subspaces.len(), set.len());
    let ids: Vec<usize> = (0..set.len()).collect();
    let rows = crate::par::map(&ids, |&i| -> Result<Vec<(usize, u32)>> {
        let phi = set.module(i);
        let lam = set.lambda(i);
        let tm = torsion_module(&phi, w.poly(), &ext_w)?;
        if tm.dim() != r * w.degree() {
            return Err(Error::consistency(format!("phi[{}] is not rational over the expected field", w.poly())));
        }
        let basis = tm.module_basis(r, &mut ChaCha8Rng::seed_from_u64(i as u64));
        let mut row = Vec::with_capacity(subspaces.len());
        for rows in &subspaces {
            let gens: Vec<Vec<u32>> = tm.span_from_residues(&basis, rows).iter().map(|c| tm.element(c)).collect();
            let u_ext = from_kernel(&ext_w, &gens);
            let coeffs = u_ext
                .c
                .iter()
                .map(|c| ext_w.project(c))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::consistency("kernel isogeny not defined over the search field"))?;
            let u = SkewPoly::new(f, coeffs);
            let psi = target_module(&phi, &u)?;
            let (class, c) = set
                .classes
                .iter()
                .find_map(|cl| psi.is_isomorphic(&cl.module).ok().flatten().map(|c| (cl.index, c)))
                .ok_or_else(|| Error::consistency("isogenous module matches no class"))?;
            let tc = &set.torsion[class];
            let c_inv = f.inv(&c).unwrap();
            let c_inv_ext = tc.ext.lift(&c_inv);
            let key: Vec<Vec<u32>> = lam
                .iter()
                .map(|x| tc.coords(&tc.ext.mul(&c_inv_ext, &eval_lifted(&tc.ext, &u, x))))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::consistency("translated level structure left the torsion"))?;
            let &(p, a) = index.get(&(class, key)).ok_or_else(|| Error::consistency("translated level structure matches no point"))?;
            let s_inv = f.inv(&set.scalars[p]).unwrap();
            let d = f.mul(&f.mul(&s_inv, &f.inv(&a).unwrap()), &f.mul(&c_inv, &u.c[0]));
            row.push((p, d));
        }
        Ok(row)
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(IsogenyTable { label: OpLabel { w: w.poly().to_string(), j }, field: f.clone(), rows })
}

/// The weight-`k` matrix of `T_{w,j}`.
pub fn brandt_matrix(set: &SSLeveledSet, w: &PrimeP, j: usize, k: usize) -> Result<BrandtMatrix> {
    Ok(isogeny_table(set, w, j)?.matrix(k, &set.scalars))
}

/// `q_v^r - 1`, the period of the weight grading on the supersingular side.
pub fn weight_period(set: &SSLeveledSet) -> usize {
    set.field.size() as usize - 1
}

/// Operator labels `T_{w,j}` for the given primes and all `j = 1..=r`.
pub fn operator_tables(set: &SSLeveledSet, ws: &[PrimeP]) -> Result<Vec<IsogenyTable>> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for w in ws {
        if seen.contains(&w) {
            return Err(Error::pre(format!("prime {} listed twice", w.poly())));
        }
        seen.push(w);
        for j in 1..=set.r {
            out.push(isogeny_table(set, w, j)?);
        }
    }
    Ok(out)
}

/// Absolute degree of the smallest field containing `F` that splits every operator at
/// the given weights.
pub fn splitting_degree(set: &SSLeveledSet, tables: &[IsogenyTable], weights: &[usize]) -> usize {
    let f = &set.field;
    weights.iter().fold(f.degree(), |n, &k| {
        let ms: Vec<Matrix<u32>> = tables.iter().map(|t| t.matrix(k, &set.scalars).matrix).collect();
        num_integer::lcm(n, eigen::splitting_degree(f, &ms))
    })
}

/// Eigensystems at each weight with values in `big`, which must split every operator.
pub fn eigensystems_in(set: &SSLeveledSet, tables: &[IsogenyTable], weights: &[usize], big: &Gf) -> Result<Vec<Eigensystem>> {
    let f = &set.field;
    let mut out = Vec::new();
    for &k in weights {
        let ms: Vec<Matrix<u32>> = tables.iter().map(|t| eigen::embed_matrix(f, big, &t.matrix(k, &set.scalars).matrix)).collect();
        out.extend(eigen::simultaneous(big, set.len(), &ms, k)?);
    }
    Ok(out)
}

/// Eigensystems of the commuting family at each weight, over the smallest field
/// `F_{p^N}` (`N <= 20`) splitting all of them. Values are in that field.
pub fn eigensystems(set: &SSLeveledSet, tables: &[IsogenyTable], weights: &[usize]) -> Result<(Gf, Vec<Eigensystem>)> {
    let big = eigen::splitting_field(set.field.p(), splitting_degree(set, tables, weights))?;
    let es = eigensystems_in(set, tables, weights, &big)?;
    Ok((big, es))
}

/// Characteristic polynomials at weights `k` and `k + q_v^r - 1` agree for every operator.
pub fn verify_periodicity(set: &SSLeveledSet, tables: &[IsogenyTable], k: usize) -> bool {
    let f = &set.field;
    let period = weight_period(set);
    tables.iter().all(|t| {
        let a = t.matrix(k, &set.scalars).matrix;
        let b = t.matrix(k + period, &set.scalars).matrix;
        linalg::charpoly(f, &a) == linalg::charpoly(f, &b)
    })
}

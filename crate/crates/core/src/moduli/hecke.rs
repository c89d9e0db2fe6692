//! Hecke operators on forms by evaluation and interpolation.
//!
//! `(T_{w,j} f)(x) = sum_C (d u_C)^k f(x_C)` over the `j`-dimensional `A/w`-subspaces `C`
//! of `phi_x[w]`, where `u_C` is the monic kernel polynomial and `x_C = u_C o lambda`. The
//! values are computed at seeded points and solved for in a basis of `(R_r)_k`; a nonzero
//! residual means the translate is not in the modelled space.

use super::forms::{evaluation_matrix, FormBasis, GradedForm, PointValues};
use super::{ModuliPoint, ModuliSpace};
use crate::drinfeld::charpoly::{companion_order_mod, frobenius_charpoly_linear};
use crate::drinfeld::torsion::{full_torsion, residue_subspaces};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf, GfExt};
use crate::linalg::{self, Matrix};
use crate::poly_a::PrimeP;
use crate::skew::from_kernel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Translates `(d u_C, x_C)` of one point, inside the field generated by `phi_x[w]`.
#[derive(Clone, Debug)]
struct Translates {
    ext: GfExt,
    items: Vec<(Vec<u32>, PointValues<Vec<u32>>)>,
}

/// Cached translates for the operator `T_{w,j}` at a set of interpolation points.
#[derive(Clone, Debug)]
pub struct HeckeData {
    pub w: PrimeP,
    pub j: usize,
    pub points: Vec<ModuliPoint>,
    translates: Vec<Translates>,
}

/// Largest relative degree of a torsion field accepted for interpolation points.
const MAX_TORSION_DEGREE: usize = 24;

fn check_prime(space: &ModuliSpace, w: &PrimeP, j: usize) -> Result<()> {
    if j == 0 || j > space.rank() {
        return Err(Error::pre(format!("j = {j} outside 1..={}", space.rank())));
    }
    if w.q() != space.q() {
        return Err(Error::pre("prime over a different q"));
    }
    if w.poly().coeff(0) == 0 {
        return Err(Error::pre("w must be coprime to the level t"));
    }
    let f = space.field();
    if f.is_zero(&w.poly().eval(f, &space.gamma_t())) {
        return Err(Error::pre("w must be coprime to the characteristic"));
    }
    Ok(())
}

fn translates_at(space: &ModuliSpace, x: &ModuliPoint, w: &PrimeP, j: usize, m: usize, seed: u64) -> Result<Translates> {
    let f = space.field();
    let phi = space.module_from_point(x)?;
    let tm = full_torsion(&phi, w.poly(), Some(m), f.degree() * MAX_TORSION_DEGREE * 4)?;
    let ext = tm.ext.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = tm.module_basis(space.rank(), &mut rng);
    let lam: Vec<Vec<u32>> = x.lambda.iter().map(|l| ext.lift(l)).collect();
    let gamma = ext.lift(&space.gamma_t());
    let mut items = Vec::new();
    for rows in residue_subspaces(w.poly(), space.rank(), j) {
        let gens: Vec<Vec<u32>> = tm.span_from_residues(&basis, &rows).iter().map(|c| tm.element(c)).collect();
        let u = from_kernel(&ext, &gens);
        let lam_c: Vec<Vec<u32>> = lam.iter().map(|l| u.eval(&ext, l)).collect();
        let pv = space
            .point_values(&ext, &gamma, &lam_c)
            .ok_or_else(|| Error::consistency("translated level structure is not injective"))?;
        items.push((u.c[0].clone(), pv));
    }
    Ok(Translates { ext, items })
}

impl HeckeData {
    /// Chooses `count` seeded points whose `w`-torsion is small enough and caches the
    /// translates there.
    pub fn new(space: &ModuliSpace, w: &PrimeP, j: usize, count: usize, seed: u64) -> Result<Self> {
        check_prime(space, w, j)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chosen: Vec<(ModuliPoint, usize)> = Vec::new();
        let mut tries = 0usize;
        while chosen.len() < count {
            tries += 1;
            if tries > 200 * count + 1000 {
                return Err(Error::cap("no interpolation points with small torsion fields"));
            }
            let x = space.random_point(&mut rng);
            let phi = space.module_from_point(&x)?;
            let guide = frobenius_charpoly_linear(&phi)?;
            if let Some(m) = companion_order_mod(&guide, w.poly(), MAX_TORSION_DEGREE as u64) {
                if !chosen.iter().any(|(y, _)| space.normalize(y) == space.normalize(&x)) {
                    chosen.push((x, m as usize));
                }
            }
        }
        let translates = crate::par::map(&chosen, |(x, m)| translates_at(space, x, w, j, *m, seed ^ 0xa5a5));
        let translates = translates.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(HeckeData { w: w.clone(), j, points: chosen.into_iter().map(|(x, _)| x).collect(), translates })
    }

    /// Values of `T_{w,j} f` at the cached points (`f` of weight `k`).
    pub fn values(&self, f: &GradedForm) -> Result<Vec<u32>> {
        let k = f.weight as u64;
        self.translates
            .iter()
            .map(|tr| {
                let e = &tr.ext;
                let lift = |c: u32| e.lift(&c);
                let mut acc = e.zero();
                for (du, pv) in &tr.items {
                    acc = e.add(&acc, &e.mul(&e.pow(du, k), &f.eval_at(e, &lift, pv)));
                }
                e.project(&acc).ok_or_else(|| Error::consistency("Hecke translate sum is not rational"))
            })
            .collect()
    }
}

/// Coordinates in `basis` of the form with the given values at `points`; the residual at
/// the surplus points must vanish.
fn interpolate(space: &ModuliSpace, basis: &FormBasis, points: &[ModuliPoint], values: &[u32]) -> Result<Vec<u32>> {
    let f: &Gf = space.field();
    let m = evaluation_matrix(space, &basis.monomials, points);
    if linalg::rank(f, &m) < basis.dim() {
        return Err(Error::consistency("interpolation points do not separate the basis"));
    }
    linalg::solve(f, &m, values).ok_or_else(|| Error::InterpolationResidual {
        weight: basis.weight as u32,
        detail: "Hecke translate is not in the span of degree-k monomials".into(),
    })
}

/// Matrix of `T_{w,j}` on `(R_r)_k` in the given basis (column `i` is the image of `b_i`).
pub fn hecke_matrix(space: &ModuliSpace, basis: &FormBasis, data: &HeckeData) -> Result<Matrix<u32>> {
    let n = basis.dim();
    let mut cols = Vec::with_capacity(n);
    for mono in &basis.monomials {
        let vals = data.values(&GradedForm::monomial(mono.clone()))?;
        cols.push(interpolate(space, basis, &data.points, &vals)?);
    }
    let mut m = Matrix::from_rows(cols).transpose();
    if n == 0 {
        m = Matrix { rows: 0, cols: 0, data: vec![] };
    }
    Ok(m)
}

/// Number of interpolation points used for a basis of size `n`.
pub fn point_budget(n: usize) -> usize {
    n + 6
}

/// `T_{w,j} f`, re-expressed in the monomial basis of `(R_r)_k`.
pub fn hecke_on_form(space: &ModuliSpace, f: &GradedForm, w: &PrimeP, j: usize, basis: &FormBasis, seed: u64) -> Result<GradedForm> {
    if basis.weight != f.weight {
        return Err(Error::pre("basis weight differs from the form weight"));
    }
    let data = HeckeData::new(space, w, j, point_budget(basis.dim()), seed)?;
    let vals = data.values(f)?;
    let coeffs = interpolate(space, basis, &data.points, &vals)?;
    Ok(GradedForm::from_monomials(f.weight, space.field(), &basis.monomials, &coeffs))
}

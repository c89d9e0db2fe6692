//! Weight-graded forms: polynomials in the `u_v` or in the coefficient forms `g_i`.

use super::{elementary_symmetric, ModuliPoint, ModuliSpace};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf};
use crate::linalg::{self, Matrix};
use crate::poly_a::PolyA;
use crate::skew::{SkewPoly, TwistRing};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Sparse polynomial: exponent vector -> coefficient.
pub type Terms = BTreeMap<Vec<u32>, u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormExpr {
    /// `sum c prod_v u_v^{e_v}`, variables ordered as [`ModuliSpace::vectors`].
    U { terms: Vec<(Vec<u32>, u32)> },
    /// `sum c prod_i g_i^{e_i}` in the coefficient forms `g_1..g_r`.
    G { terms: Vec<(Vec<u32>, u32)> },
    Product { factors: Vec<GradedForm> },
}

/// A homogeneous form of weight `k` with coefficients in the coordinate field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedForm {
    pub weight: usize,
    pub expr: FormExpr,
}

/// The data a form needs at a point: the `u_v` and the coefficient values `g_i`.
#[derive(Clone, Debug)]
pub struct PointValues<E> {
    pub u: Vec<E>,
    pub g: Vec<E>,
}

impl ModuliSpace {
    /// Values of `u_v` and `g_i = gamma e_{q^i-1}(u)` at `lambda`, over any field `f`
    /// containing the point; `None` if `lambda` is not injective.
    pub fn point_values<F: FiniteField>(&self, f: &F, gamma: &F::Elem, lambda: &[F::Elem]) -> Option<PointValues<F::Elem>> {
        let u = self.u_values(f, lambda)?;
        let e = elementary_symmetric(f, &u);
        let q = self.q() as usize;
        let g = (1..=self.rank()).map(|i| f.mul(gamma, &e[q.pow(i as u32) - 1])).collect();
        Some(PointValues { u, g })
    }
}

fn eval_terms<F: FiniteField>(f: &F, lift: &dyn Fn(u32) -> F::Elem, terms: &[(Vec<u32>, u32)], vars: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (exps, c) in terms {
        let mut m = lift(*c);
        for (e, x) in exps.iter().zip(vars) {
            if *e > 0 {
                m = f.mul(&m, &f.pow(x, *e as u64));
            }
        }
        acc = f.add(&acc, &m);
    }
    acc
}

impl GradedForm {
    pub fn zero(weight: usize) -> Self {
        GradedForm { weight, expr: FormExpr::U { terms: Vec::new() } }
    }

    /// The constant `c` in `nvars` variables.
    pub fn constant(nvars: usize, c: u32) -> Self {
        GradedForm { weight: 0, expr: FormExpr::U { terms: if c == 0 { vec![] } else { vec![(vec![0; nvars], c)] } } }
    }

    /// The monomial `prod u_v^{e_v}`.
    pub fn monomial(exps: Vec<u32>) -> Self {
        let weight = exps.iter().sum::<u32>() as usize;
        GradedForm { weight, expr: FormExpr::U { terms: vec![(exps, 1)] } }
    }

    /// `sum c_i b_i` for monomials `b_i`.
    pub fn from_monomials(weight: usize, f: &Gf, monomials: &[Vec<u32>], coeffs: &[u32]) -> Self {
        let mut terms = Terms::new();
        for (m, c) in monomials.iter().zip(coeffs) {
            if !f.is_zero(c) {
                terms.insert(m.clone(), *c);
            }
        }
        GradedForm { weight, expr: FormExpr::U { terms: terms.into_iter().collect() } }
    }

    pub fn mul(&self, other: &GradedForm) -> GradedForm {
        GradedForm { weight: self.weight + other.weight, expr: FormExpr::Product { factors: vec![self.clone(), other.clone()] } }
    }

    pub fn is_zero_expr(&self) -> bool {
        matches!(&self.expr, FormExpr::U { terms } | FormExpr::G { terms } if terms.is_empty())
    }

    /// Evaluation at precomputed point values, coefficients mapped into `f` by `lift`.
    pub fn eval_at<F: FiniteField>(&self, f: &F, lift: &dyn Fn(u32) -> F::Elem, pv: &PointValues<F::Elem>) -> F::Elem {
        match &self.expr {
            FormExpr::U { terms } => eval_terms(f, lift, terms, &pv.u),
            FormExpr::G { terms } => eval_terms(f, lift, terms, &pv.g),
            FormExpr::Product { factors } => {
                factors.iter().fold(f.one(), |acc, x| f.mul(&acc, &x.eval_at(f, lift, pv)))
            }
        }
    }

    pub fn eval(&self, space: &ModuliSpace, x: &ModuliPoint) -> Result<u32> {
        let f = space.field();
        let pv = space
            .point_values(f, &space.gamma_t(), &x.lambda)
            .ok_or_else(|| Error::pre("lambda is not injective on F_q^r"))?;
        Ok(self.eval_at(f, &|c| c, &pv))
    }

    /// Rewrites the form as an explicit polynomial in the `u_v` (at most `cap` terms).
    pub fn expand(&self, space: &ModuliSpace, cap: usize) -> Result<GradedForm> {
        let f = space.field();
        let ring = MPolyRing::new(f, space.num_vars());
        let poly = self.expand_terms(space, &ring, cap)?;
        Ok(GradedForm { weight: self.weight, expr: FormExpr::U { terms: poly.into_iter().collect() } })
    }

    fn expand_terms(&self, space: &ModuliSpace, ring: &MPolyRing, cap: usize) -> Result<Terms> {
        let check = |t: Terms| if t.len() > cap { Err(Error::cap(format!("expansion exceeds {cap} terms"))) } else { Ok(t) };
        match &self.expr {
            FormExpr::U { terms } => Ok(terms.iter().cloned().collect()),
            FormExpr::G { terms } => {
                let q = space.q() as usize;
                let n = space.num_vars();
                let gs: Vec<Terms> = (1..=space.rank())
                    .map(|i| {
                        let mut e = elementary_symbolic(ring, n, q.pow(i as u32) - 1, cap)?;
                        e = ring.scale(&e, space.gamma_t());
                        check(e)
                    })
                    .collect::<Result<_>>()?;
                let mut acc = ring.r_zero();
                for (exps, c) in terms {
                    let mut m = ring.constant(*c);
                    for (e, g) in exps.iter().zip(&gs) {
                        for _ in 0..*e {
                            m = check(ring.r_mul(&m, g))?;
                        }
                    }
                    acc = check(ring.r_add(&acc, &m))?;
                }
                Ok(acc)
            }
            FormExpr::Product { factors } => {
                let mut acc = ring.r_one();
                for x in factors {
                    acc = check(ring.r_mul(&acc, &x.expand_terms(space, ring, cap)?))?;
                }
                Ok(acc)
            }
        }
    }
}

/// Squarefree degree-`j` monomials in `n` variables, as a symbolic polynomial.
fn elementary_symbolic(ring: &MPolyRing, n: usize, j: usize, cap: usize) -> Result<Terms> {
    // e_j(x_1..x_n) by the same recursion as the numeric version
    let mut e: Vec<Terms> = vec![ring.r_zero(); j + 1];
    e[0] = ring.r_one();
    for k in 0..n {
        let mut x = vec![0u32; n];
        x[k] = 1;
        let var: Terms = [(x, 1u32)].into_iter().collect();
        for d in (1..=j.min(k + 1)).rev() {
            let add = ring.r_mul(&e[d - 1], &var);
            e[d] = ring.r_add(&e[d], &add);
            if e[d].len() > cap {
                return Err(Error::cap(format!("elementary symmetric function exceeds {cap} terms")));
            }
        }
    }
    Ok(e.swap_remove(j))
}

/// Polynomials over a table field in `nvars` variables, with `a -> a^p` as twist.
#[derive(Clone, Debug)]
pub struct MPolyRing {
    field: Gf,
    nvars: usize,
}

impl MPolyRing {
    pub fn new(field: &Gf, nvars: usize) -> Self {
        MPolyRing { field: field.clone(), nvars }
    }
    pub fn constant(&self, c: u32) -> Terms {
        let mut t = Terms::new();
        if c != 0 {
            t.insert(vec![0; self.nvars], c);
        }
        t
    }
    pub fn var(&self, i: usize) -> Terms {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        [(e, 1u32)].into_iter().collect()
    }
    pub fn scale(&self, a: &Terms, c: u32) -> Terms {
        let f = &self.field;
        a.iter().map(|(k, v)| (k.clone(), f.mul(v, &c))).filter(|(_, v)| *v != 0).collect()
    }
}

impl TwistRing for MPolyRing {
    type Elem = Terms;
    fn r_zero(&self) -> Terms {
        Terms::new()
    }
    fn r_one(&self) -> Terms {
        self.constant(1)
    }
    fn r_is_zero(&self, a: &Terms) -> bool {
        a.is_empty()
    }
    fn r_add(&self, a: &Terms, b: &Terms) -> Terms {
        let f = &self.field;
        let mut out = a.clone();
        for (k, v) in b {
            let e = out.entry(k.clone()).or_insert(0);
            *e = f.add(e, v);
            if *e == 0 {
                out.remove(k);
            }
        }
        out
    }
    fn r_sub(&self, a: &Terms, b: &Terms) -> Terms {
        let f = &self.field;
        let nb: Terms = b.iter().map(|(k, v)| (k.clone(), f.neg(v))).collect();
        self.r_add(a, &nb)
    }
    fn r_mul(&self, a: &Terms, b: &Terms) -> Terms {
        let f = &self.field;
        let mut out = Terms::new();
        for (ka, va) in a {
            for (kb, vb) in b {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let e = out.entry(k).or_insert(0);
                *e = f.add(e, &f.mul(va, vb));
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
    fn twist(&self, a: &Terms) -> Terms {
        let f = &self.field;
        let p = f.p();
        a.iter().map(|(k, v)| (k.iter().map(|e| e * p).collect(), f.frobenius(v))).collect()
    }
    fn r_inv(&self, a: &Terms) -> Option<Terms> {
        let zero = vec![0u32; self.nvars];
        match a.iter().next() {
            Some((k, v)) if a.len() == 1 && *k == zero => Some(self.constant(self.field.inv(v)?)),
            _ => None,
        }
    }
    fn r_from_int(&self, c: i64) -> Terms {
        self.constant(self.field.from_int(c))
    }
}

/// The coefficient form `g_i` of weight `q^i - 1`.
pub fn coefficient_form(space: &ModuliSpace, i: usize) -> Result<GradedForm> {
    if i == 0 || i > space.rank() {
        return Err(Error::pre(format!("coefficient index {i} outside 1..={}", space.rank())));
    }
    let mut e = vec![0u32; space.rank()];
    e[i - 1] = 1;
    let weight = (space.q() as usize).pow(i as u32) - 1;
    Ok(GradedForm { weight, expr: FormExpr::G { terms: vec![(e, 1)] } })
}

/// The `i`-th `a`-Hasse invariant: the `tau^{i deg P}` coefficient of `phi_a` over `F_v`,
/// as a polynomial in the coefficient forms.
pub fn hasse_invariant(space: &ModuliSpace, a: &PolyA, i: usize) -> Result<GradedForm> {
    let place = space.place().ok_or_else(|| Error::pre("Hasse invariants need a space in characteristic P"))?;
    if a.valuation(place.poly()) != Some(1) {
        return Err(Error::pre(format!("v_P({a}) must be 1")));
    }
    let r = space.rank();
    if i >= r {
        return Err(Error::pre(format!("Hasse index {i} outside 0..{r}")));
    }
    let d = place.degree();
    let f = space.field();
    let ring = MPolyRing::new(f, r);
    let mut c = vec![ring.constant(space.gamma_t())];
    c.extend((0..r).map(|j| ring.var(j)));
    let phi_t = SkewPoly::new(&ring, c);
    // Horner, keeping only tau-degrees up to i d
    let top = i * d;
    let truncate = |s: SkewPoly<Terms>| SkewPoly::new(&ring, s.c.into_iter().take(top + 1).collect());
    let mut acc = SkewPoly::<Terms>::zero();
    for k in (0..=a.deg()).rev() {
        acc = truncate(acc.mul(&ring, &phi_t));
        let ck = ring.constant(f.from_int(a.coeff(k) as i64));
        acc = acc.add(&ring, &SkewPoly::constant(&ring, ck));
    }
    let coeff = acc.coeff(&ring, top);
    let weight = (space.q() as usize).pow(top as u32) - 1;
    Ok(GradedForm { weight, expr: FormExpr::G { terms: coeff.into_iter().collect() } })
}

/// A basis of `(R_r)_k`: monomials in the `u_v` independent as functions on the moduli space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormBasis {
    pub weight: usize,
    pub monomials: Vec<Vec<u32>>,
    /// Number of degree-`k` monomials (upper bound for the dimension).
    pub monomial_count: usize,
}

impl FormBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

/// All exponent vectors of total degree `k` in `n` variables, lexicographically.
pub fn monomials(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(k as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e as u32);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Rows: points, columns: monomials.
pub fn evaluation_matrix(space: &ModuliSpace, mons: &[Vec<u32>], points: &[ModuliPoint]) -> Matrix<u32> {
    let f = space.field();
    let rows = points
        .iter()
        .map(|x| {
            let u = space.u_values(f, &x.lambda).expect("injective point");
            mons.iter()
                .map(|m| m.iter().zip(&u).fold(1u32, |acc, (e, x)| if *e == 0 { acc } else { f.mul(&acc, &f.pow(x, *e as u64)) }))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

/// Maximal independent set of degree-`k` monomials, decided by evaluation ranks at seeded
/// random points; sampling is repeated until two independent samples agree on the rank.
pub fn form_space_basis(space: &ModuliSpace, k: usize, seed: u64) -> FormBasis {
    let f = space.field();
    let mons = monomials(space.num_vars(), k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9));
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let pts: Vec<ModuliPoint> = (0..mons.len() + 4).map(|_| space.random_point(&mut rng)).collect();
        let mut m = evaluation_matrix(space, &mons, &pts);
        let pivots = linalg::rref(f, &mut m);
        match &best {
            Some((rank, _)) if *rank == pivots.len() => break,
            Some((rank, _)) if *rank > pivots.len() => continue,
            _ => best = Some((pivots.len(), pivots)),
        }
    }
    let (_, pivots) = best.unwrap();
    FormBasis { weight: k, monomials: pivots.iter().map(|&i| mons[i].clone()).collect(), monomial_count: mons.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_a::PrimeP;
    use rand::SeedableRng;

    #[test]
    fn coefficient_forms_match_modules() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (q, r, n) in [(2u32, 2usize, 6usize), (2, 3, 5), (3, 2, 3)] {
            let f = Gf::new(q, n);
            let s = ModuliSpace::new(q, r, &f, f.generator()).unwrap();
            for _ in 0..10 {
                let x = s.random_point(&mut rng);
                let phi = s.module_from_point(&x).unwrap();
                for i in 1..=r {
                    assert_eq!(coefficient_form(&s, i).unwrap().eval(&s, &x).unwrap(), *phi.g(i));
                }
            }
        }
    }

    #[test]
    fn top_and_first_coefficient_expansions() {
        let f = Gf::new(2, 4);
        let s = ModuliSpace::new(2, 2, &f, 1).unwrap();
        let top = coefficient_form(&s, 2).unwrap().expand(&s, 100).unwrap();
        assert_eq!(top.expr, FormExpr::U { terms: vec![(vec![1, 1, 1], 1)] });
        let first = coefficient_form(&s, 1).unwrap().expand(&s, 100).unwrap();
        let FormExpr::U { terms } = first.expr else { panic!() };
        assert_eq!(terms.len(), 3);
    }

    #[test]
    fn hasse_example() {
        let place = PrimeP::parse(2, "t+1").unwrap();
        let s = ModuliSpace::at_place(2, 2, &place, 4).unwrap();
        let a = PolyA::parse(2, "t+1").unwrap();
        let h0 = hasse_invariant(&s, &a, 0).unwrap();
        assert!(h0.is_zero_expr());
        let h1 = hasse_invariant(&s, &a, 1).unwrap().expand(&s, 100).unwrap();
        let mut expect = vec![(vec![0, 0, 1], 1), (vec![0, 1, 0], 1), (vec![1, 0, 0], 1)];
        expect.sort();
        assert_eq!(h1.expr, FormExpr::U { terms: expect });
    }

    #[test]
    fn small_form_spaces() {
        let f = Gf::new(2, 8);
        let s = ModuliSpace::new(2, 2, &f, 1).unwrap();
        assert_eq!(form_space_basis(&s, 0, 1).dim(), 1);
        assert_eq!(form_space_basis(&s, 1, 1).dim(), 3);
        let b = form_space_basis(&s, 3, 1);
        assert!(b.dim() <= b.monomial_count);
        assert_eq!(b.dim(), 7);
    }
}

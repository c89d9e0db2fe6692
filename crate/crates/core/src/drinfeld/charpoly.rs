//! Characteristic polynomial of the Frobenius endomorphism.
//!
//! Two independent routes:
//! - [`frobenius_charpoly`] reads the Frobenius action off prime-to-characteristic torsion
//!   `phi[w] = (A/w)^r` and glues the results over `A` by the Chinese remainder theorem;
//! - [`frobenius_charpoly_linear`] solves `sum_i phi_{a_i} F^{n-i} = 0` for the minimal
//!   relation of `F = tau^s` directly by linear algebra over the prime field.

use super::torsion::full_torsion;
use super::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf};
use crate::linalg::{self, Matrix};
use crate::poly_a::PolyA;
use crate::skew::SkewPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A polynomial in `x` with coefficients in `A`, little-endian.
pub type APoly = Vec<PolyA>;

fn ap_trim(a: &mut APoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn ap_reduce(a: &mut APoly, modulus: Option<&PolyA>) {
    if let Some(m) = modulus {
        for c in a.iter_mut() {
            *c = c.rem(m);
        }
    }
    ap_trim(a);
}

pub fn ap_mul(a: &[PolyA], b: &[PolyA], modulus: Option<&PolyA>) -> APoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let q = a[0].q();
    let mut out = vec![PolyA::zero(q); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    ap_reduce(&mut out, modulus);
    out
}

pub fn ap_sub(a: &[PolyA], b: &[PolyA], modulus: Option<&PolyA>) -> APoly {
    let q = a.first().or(b.first()).map_or(2, |c| c.q());
    let n = a.len().max(b.len());
    let z = PolyA::zero(q);
    let mut out: APoly = (0..n).map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z))).collect();
    ap_reduce(&mut out, modulus);
    out
}

/// Remainder modulo a monic polynomial in `x`.
pub fn ap_rem_monic(a: &[PolyA], m: &[PolyA]) -> APoly {
    let dm = m.len() - 1;
    assert!(m[dm].coeffs() == [1], "modulus must be monic");
    let mut r = a.to_vec();
    ap_trim(&mut r);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k].clone();
        for j in 0..=dm {
            r[k - dm + j] = r[k - dm + j].sub(&c.mul(&m[j]));
        }
        ap_trim(&mut r);
    }
    r
}

/// `det(x I - M)` for a square matrix over `A` or `A/w` (Laplace expansion; small `r`).
pub fn charpoly_over_a(m: &[Vec<PolyA>], modulus: Option<&PolyA>) -> APoly {
    let n = m.len();
    let q = m[0][0].q();
    let entries: Vec<Vec<APoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = vec![m[i][j].neg()];
                    if i == j {
                        e.push(PolyA::one(q));
                    }
                    ap_reduce(&mut e, modulus);
                    e
                })
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    det_laplace(&entries, 0, &cols, modulus, q)
}

fn det_laplace(e: &[Vec<APoly>], row: usize, cols: &[usize], modulus: Option<&PolyA>, q: u32) -> APoly {
    if cols.is_empty() {
        return vec![PolyA::one(q)];
    }
    let mut acc: APoly = Vec::new();
    for (k, &c) in cols.iter().enumerate() {
        if e[row][c].is_empty() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_laplace(e, row + 1, &rest, modulus, q);
        let term = ap_mul(&e[row][c], &minor, modulus);
        acc = if k % 2 == 0 { ap_sub(&acc, &ap_sub(&[], &term, modulus), modulus) } else { ap_sub(&acc, &term, modulus) };
    }
    acc
}

/// `log_q |B|` for the base field of the module (`q = p`).
fn base_degree(phi: &DrinfeldModule<Gf>) -> usize {
    phi.field().degree()
}

/// Action matrix over `A/w` of the `|B|`-power Frobenius on `phi[w]`, in a seeded
/// `A/w`-basis, together with the torsion field degree used.
pub fn frobenius_on_torsion(phi: &DrinfeldModule<Gf>, w: &PolyA, hint: Option<usize>, cap: usize) -> Result<(Vec<Vec<PolyA>>, usize)> {
    let r = phi.rank();
    let s = base_degree(phi);
    let tm = full_torsion(phi, w, hint, cap)?;
    let ext = tm.ext.clone();
    let frob = tm.matrix_of(|x| ext.frobenius_pow(x, s))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ w.coeffs().iter().fold(0u64, |h, &c| h * 31 + c as u64));
    let basis = tm.module_basis(r, &mut rng);
    let d = w.deg();
    let fp = tm.prime_field().clone();
    // F_p-basis {t^k b_j}
    let mut fp_basis = Vec::with_capacity(r * d);
    for b in &basis {
        let mut v = b.clone();
        for _ in 0..d {
            fp_basis.push(v.clone());
            v = linalg::mat_vec(&fp, &tm.t_action, &v);
        }
    }
    let bm = Matrix::from_rows(fp_basis.clone()).transpose();
    let bm_inv = linalg::inverse(&fp, &bm).ok_or_else(|| Error::consistency("torsion basis is not an A/w-basis"))?;
    let q = w.q();
    let mut m = vec![vec![PolyA::zero(q); r]; r];
    for (i, b) in basis.iter().enumerate() {
        let img = linalg::mat_vec(&fp, &frob, b);
        let c = linalg::mat_vec(&fp, &bm_inv, &img);
        for j in 0..r {
            let coeffs: Vec<u32> = (0..d).map(|k| c[j * d + k]).collect();
            m[j][i] = PolyA::new(q, coeffs);
        }
    }
    Ok((m, tm.ext.rel_degree()))
}

/// Chinese remaindering of residues `a_k mod m_k` into `A / prod m_k`.
pub fn crt(residues: &[(PolyA, PolyA)]) -> PolyA {
    let q = residues[0].1.q();
    let mut x = PolyA::zero(q);
    let mut modulus = PolyA::one(q);
    for (a, m) in residues {
        // x' = x + modulus * ((a - x) * modulus^{-1} mod m)
        let inv = modulus.inv_mod(m).expect("moduli must be pairwise coprime");
        let k = a.sub(&x).mulmod(&inv, m);
        x = x.add(&modulus.mul(&k));
        modulus = modulus.mul(m);
        x = x.rem(&modulus);
    }
    x
}

/// Frobenius characteristic polynomial via torsion at the auxiliary moduli `ws`
/// (pairwise coprime, prime to the characteristic). Returns `[c_0, ..., c_r]`, `c_r = 1`.
///
/// The degree of the field generated by `phi[w]` is taken from the companion matrix of the
/// linear-route polynomial; the torsion computation itself checks that the field is large
/// enough, so a wrong guess fails instead of producing a wrong answer.
pub fn frobenius_charpoly(phi: &DrinfeldModule<Gf>, ws: &[PolyA], cap: usize) -> Result<APoly> {
    let guide = frobenius_charpoly_linear(phi)?;
    let hint = |w: &PolyA| companion_order_mod(&guide, w, cap as u64).map(|m| m as usize);
    frobenius_charpoly_with_hints(phi, ws, &hint, cap)
}

pub fn frobenius_charpoly_with_hints(
    phi: &DrinfeldModule<Gf>,
    ws: &[PolyA],
    hint: &(dyn Fn(&PolyA) -> Option<usize> + Sync),
    cap: usize,
) -> Result<APoly> {
    let r = phi.rank();
    let s = base_degree(phi);
    let bound = (1..=r).map(|i| (i * s).div_ceil(r)).max().unwrap_or(0);
    let total: usize = ws.iter().map(|w| w.deg()).sum();
    if total <= bound {
        return Err(Error::pre(format!(
            "auxiliary moduli of total degree {total} cannot determine coefficients of degree up to {bound}"
        )));
    }
    for (i, w) in ws.iter().enumerate() {
        if phi.field().is_zero(&phi.gamma_of(w)) || ws[..i].iter().any(|v| !v.gcd(w).is_unit()) {
            return Err(Error::pre(format!("auxiliary modulus {w} not coprime to the characteristic or the others")));
        }
    }
    let local: Vec<Result<APoly>> = crate::par::map(ws, |w| {
        let (m, _) = frobenius_on_torsion(phi, w, hint(w), cap)?;
        let mut cp = charpoly_over_a(&m, Some(w));
        cp.resize(r + 1, PolyA::zero(w.q()));
        Ok(cp)
    });
    let local: Vec<APoly> = local.into_iter().collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let res: Vec<(PolyA, PolyA)> = local.iter().zip(ws).map(|(cp, w)| (cp[i].clone(), w.clone())).collect();
        out.push(crt(&res));
    }
    for (i, c) in out.iter().enumerate() {
        let k = r - i;
        if !c.is_zero() && c.deg() > (k * s).div_ceil(r) {
            return Err(Error::consistency(format!("coefficient of x^{i} exceeds the Weil degree bound")));
        }
    }
    Ok(out)
}

/// Minimal relation of the Frobenius by linear algebra, raised to the power giving degree `r`.
pub fn frobenius_charpoly_linear(phi: &DrinfeldModule<Gf>) -> Result<APoly> {
    let r = phi.rank();
    for n in (1..=r).filter(|n| r % n == 0) {
        if let Some(minpoly) = frobenius_minimal_relation(phi, n)? {
            let mut cp = vec![PolyA::one(phi.field().characteristic())];
            for _ in 0..r / n {
                cp = ap_mul(&cp, &minpoly, None);
            }
            return Ok(cp);
        }
    }
    Err(Error::consistency("no Frobenius relation of degree r found"))
}

/// Monic relation of degree `n` in `F = tau^s` with `deg a_i <= i s / r`, if one exists.
pub fn frobenius_minimal_relation(phi: &DrinfeldModule<Gf>, n: usize) -> Result<Option<APoly>> {
    let f = phi.field();
    let q = f.characteristic();
    let r = phi.rank();
    let s = base_degree(phi);
    let top = s * n;
    let width = top + 1;
    let nb = f.degree();
    let flatten = |g: &SkewPoly<u32>, shift: usize| -> Vec<u32> {
        let mut v = vec![0u32; width * nb];
        for (k, c) in g.c.iter().enumerate() {
            let idx = k + shift;
            assert!(idx < width, "relation exceeds the expected tau-degree");
            for (l, x) in f.fp_coords(c).into_iter().enumerate() {
                v[idx * nb + l] = x;
            }
        }
        v
    };
    // unknown (i, k): coefficient of t^k in a_i, column phi_{t^k} F^{n-i}
    let mut labels = Vec::new();
    let mut columns = Vec::new();
    let pt = phi.phi_t();
    for i in 1..=n {
        let dmax = i * s / r;
        let mut pk = SkewPoly::one(f);
        for k in 0..=dmax {
            labels.push((i, k));
            columns.push(flatten(&pk, s * (n - i)));
            pk = pk.mul(f, &pt);
        }
    }
    let rhs: Vec<u32> = flatten(&SkewPoly::monomial(f, f.from_int(-1), top), 0);
    let fp = Gf::prime(q);
    let a = Matrix::from_rows(columns).transpose();
    let Some(sol) = linalg::solve(&fp, &a, &rhs) else { return Ok(None) };
    if !linalg::kernel(&fp, &a).is_empty() {
        return Err(Error::consistency("Frobenius relation is not unique"));
    }
    let mut coeffs = vec![vec![0u32; 0]; n + 1];
    for ((i, k), v) in labels.iter().zip(sol) {
        let c = &mut coeffs[*i];
        if c.len() <= *k {
            c.resize(k + 1, 0);
        }
        c[*k] = v;
    }
    // x^n + a_1 x^{n-1} + ... + a_n, little-endian
    let mut out: APoly = (0..=n).map(|j| PolyA::new(q, coeffs[n - j].clone())).collect();
    out[n] = PolyA::one(q);
    Ok(Some(out))
}

/// Monic `g` with `g^e = f` for monic `f`, if it exists.
pub fn ap_root(f: &[PolyA], e: usize) -> Option<APoly> {
    let q = f[0].q();
    let deg = f.len() - 1;
    if e == 1 {
        return Some(f.to_vec());
    }
    if deg % e != 0 {
        return None;
    }
    if e % q as usize == 0 {
        // g^p = sum g_i(t^p) x^{ip} since q = p
        let p = q as usize;
        let mut down = Vec::with_capacity(deg / p + 1);
        for (i, c) in f.iter().enumerate() {
            if i % p != 0 {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            let mut cs = Vec::new();
            for (k, &x) in c.coeffs().iter().enumerate() {
                if k % p != 0 {
                    if x != 0 {
                        return None;
                    }
                } else {
                    cs.push(x);
                }
            }
            down.push(PolyA::new(q, cs));
        }
        return ap_root(&down, e / p);
    }
    let n = deg / e;
    let inv_e = crate::field::gf::mod_inverse((e % q as usize) as u64, q as u64) as u32;
    let mut g = vec![PolyA::zero(q); n + 1];
    g[n] = PolyA::one(q);
    for k in 1..=n {
        let mut pw: APoly = vec![PolyA::one(q)];
        for _ in 0..e {
            pw = ap_mul(&pw, &g, None);
        }
        pw.resize(deg + 1, PolyA::zero(q));
        let diff = f[deg - k].sub(&pw[deg - k]);
        g[n - k] = diff.scale(inv_e);
    }
    let mut pw: APoly = vec![PolyA::one(q)];
    for _ in 0..e {
        pw = ap_mul(&pw, &g, None);
    }
    (pw == f).then_some(g)
}

/// The minimal polynomial of the Frobenius from its characteristic polynomial, which is
/// a power of it.
pub fn minimal_from_charpoly(charpoly: &[PolyA]) -> APoly {
    let r = charpoly.len() - 1;
    for e in (1..=r).rev().filter(|e| r % e == 0) {
        if let Some(g) = ap_root(charpoly, e) {
            return g;
        }
    }
    unreachable!("e = 1 always succeeds")
}

/// Outcome of the "some power of Frobenius lies in `A`" test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusPower {
    /// Exponent tested.
    pub n: u64,
    /// `pi^n` when it lies in `A`.
    pub power: Option<String>,
    /// `k` with `pi^n = c P^k`, when the power has that shape.
    pub p_exponent: Option<u32>,
}

impl FrobeniusPower {
    pub fn holds(&self) -> bool {
        self.p_exponent.is_some()
    }
}

/// Tests whether `pi^n` lies in `A` (and is a unit times a power of `P`) for the exponent
/// `n = lcm(s, d r)/s * (q^r - 1)` that works for every supersingular module over
/// `F_{q^s}` in characteristic `P` of degree `d`.
pub fn frobenius_power_in_a(charpoly: &[PolyA], s: usize, p: &PolyA) -> FrobeniusPower {
    let r = charpoly.len() - 1;
    let charpoly = &minimal_from_charpoly(charpoly)[..];
    let q = p.q();
    let d = p.deg();
    let l = num_integer::lcm(s, d * r);
    let n = (l / s) as u64 * ((q as u64).pow(r as u32) - 1);
    // x^n mod charpoly
    let mut result: APoly = vec![PolyA::one(q)];
    let mut base: APoly = ap_rem_monic(&[PolyA::zero(q), PolyA::one(q)], charpoly);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = ap_rem_monic(&ap_mul(&result, &base, None), charpoly);
        }
        e >>= 1;
        if e > 0 {
            base = ap_rem_monic(&ap_mul(&base, &base, None), charpoly);
        }
    }
    let power = (result.len() <= 1).then(|| result.first().cloned().unwrap_or(PolyA::zero(q)));
    let p_exponent = power.as_ref().and_then(|a| {
        let k = a.valuation(p)?;
        let rest = a.div_exact(&p.pow(k))?;
        rest.is_unit().then_some(k)
    });
    FrobeniusPower { n, power: power.map(|a| a.to_string()), p_exponent }
}

/// Multiplicative order of the companion matrix of `charpoly` modulo `w`, an upper bound
/// (in the divisibility sense) for the degree of the field generated by `phi[w]`.
pub fn companion_order_mod(charpoly: &[PolyA], w: &PolyA, limit: u64) -> Option<u64> {
    let q = w.q();
    let reduced: APoly = charpoly.iter().map(|c| c.rem(w)).collect();
    let x: APoly = ap_rem_monic(&[PolyA::zero(q), PolyA::one(q)], &reduced);
    let mut cur = x.clone();
    for k in 1..=limit {
        let mut probe = cur.clone();
        ap_reduce(&mut probe, Some(w));
        if probe.len() == 1 && probe[0] == PolyA::one(q) {
            return Some(k);
        }
        cur = ap_rem_monic(&ap_mul(&cur, &x, Some(w)), &reduced);
        ap_reduce(&mut cur, Some(w));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(q: u32, s: &str) -> PolyA {
        PolyA::parse(q, s).unwrap()
    }

    #[test]
    fn supersingular_tau_squared() {
        let f = Gf::new(2, 2);
        let phi = DrinfeldModule::new(&f, 0, vec![0, 1]).unwrap();
        let expect = vec![a(2, "t^2"), PolyA::zero(2), PolyA::one(2)];
        assert_eq!(frobenius_charpoly_linear(&phi).unwrap(), expect);
        let ws = [a(2, "t+1"), a(2, "t^2+t+1")];
        assert_eq!(frobenius_charpoly(&phi, &ws, 128).unwrap(), expect);
        let fp = frobenius_power_in_a(&expect, 2, &a(2, "t"));
        assert!(fp.holds());
    }

    #[test]
    fn roots_in_a_x() {
        let g = vec![a(3, "t"), a(3, "t+1"), PolyA::one(3)];
        for e in [1usize, 2, 3, 6] {
            let mut f = vec![PolyA::one(3)];
            for _ in 0..e {
                f = ap_mul(&f, &g, None);
            }
            assert_eq!(ap_root(&f, e), Some(g.clone()));
            assert_eq!(minimal_from_charpoly(&f), g);
        }
        assert_eq!(ap_root(&[a(3, "t"), PolyA::zero(3), PolyA::one(3)], 2), None);
    }

    #[test]
    fn carlitz_is_linear() {
        let f = Gf::prime(3);
        let phi = DrinfeldModule::new(&f, 1, vec![1]).unwrap();
        let cp = frobenius_charpoly_linear(&phi).unwrap();
        assert_eq!(cp.len(), 2);
        // pi = c (t - 1) for a constant c
        assert_eq!(cp[0].monic(), a(3, "t+2"));
    }

    #[test]
    fn routes_agree_on_ordinary_module() {
        let f = Gf::new(2, 3);
        let phi = DrinfeldModule::new(&f, 0, vec![1, f.generator()]).unwrap();
        let lin = frobenius_charpoly_linear(&phi).unwrap();
        let ws = [a(2, "t+1"), a(2, "t^3+t+1")];
        assert_eq!(frobenius_charpoly(&phi, &ws, 400).unwrap(), lin);
        let other = [a(2, "t^2+t+1"), a(2, "t^3+t^2+1")];
        assert_eq!(frobenius_charpoly(&phi, &other, 400).unwrap(), lin);
        assert!(!frobenius_power_in_a(&lin, 3, &a(2, "t")).holds());
    }
}

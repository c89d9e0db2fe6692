//! Independent brute-force checks for the spherical algebra.
//!
//! - [`lattice_count`] counts sublattices with quotient `T = sum O/z^{mu_i}` as
//!   `#Surj(O^r, T) / #Aut(T)`;
//! - [`pair_convolution`] classifies all products of coset representatives.

use super::dvr::{cartan_type, mat_mul, LocalDvr};
use super::{prime_power, HeckeElement, SphericalAlgebra};
use crate::error::Result;
use crate::field::Gf;
use crate::linalg::{self, Matrix};

/// Elements of `T` as coefficient vectors, block `i` holding `O/z^{mu_i}`.
struct Torsion {
    field: Gf,
    blocks: Vec<usize>,
}

impl Torsion {
    fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }
    fn shift(&self, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; x.len()];
        let mut start = 0;
        for &b in &self.blocks {
            for k in 1..b {
                out[start + k] = x[start + k - 1];
            }
            start += b;
        }
        out
    }
    fn elements(&self, filter: Option<&[usize]>) -> Vec<Vec<u32>> {
        // filter: per-block bound on the allowed z-adic length (annihilated by z^bound)
        let size = self.field.size() as u64;
        let free: Vec<usize> = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(i, &b)| {
                let start: usize = self.blocks[..i].iter().sum();
                let keep = filter.map_or(b, |f| f[i].min(b));
                (start + (b - keep)..start + b).collect::<Vec<_>>()
            })
            .collect();
        (0..size.pow(free.len() as u32))
            .map(|mut code| {
                let mut v = vec![0u32; self.dim()];
                for &pos in &free {
                    v[pos] = (code % size) as u32;
                    code /= size;
                }
                v
            })
            .collect()
    }
    fn generates(&self, gens: &[&Vec<u32>]) -> bool {
        let mut rows = Vec::new();
        for g in gens {
            let mut v = (*g).clone();
            for _ in 0..self.blocks.iter().copied().max().unwrap_or(0) {
                rows.push(v.clone());
                v = self.shift(&v);
            }
        }
        !rows.is_empty() && linalg::rank(&self.field, &Matrix::from_rows(rows)) == self.dim()
    }
}

fn count_generating(t: &Torsion, pools: &[Vec<Vec<u32>>]) -> u64 {
    fn rec(t: &Torsion, pools: &[Vec<Vec<u32>>], cur: &mut Vec<usize>, count: &mut u64) {
        if cur.len() == pools.len() {
            let gens: Vec<&Vec<u32>> = cur.iter().enumerate().map(|(i, &k)| &pools[i][k]).collect();
            if t.generates(&gens) {
                *count += 1;
            }
            return;
        }
        for k in 0..pools[cur.len()].len() {
            cur.push(k);
            rec(t, pools, cur, count);
            cur.pop();
        }
    }
    let mut count = 0;
    rec(t, pools, &mut Vec::new(), &mut count);
    count
}

/// Number of `O`-sublattices of `O^r` with quotient isomorphic to `sum O/z^{mu_i}`.
pub fn lattice_count(mu: &[i64], q_w: u32) -> Result<u64> {
    let (p, n) = prime_power(q_w)?;
    let blocks: Vec<usize> = mu.iter().filter(|&&m| m > 0).map(|&m| m as usize).collect();
    let t = Torsion { field: Gf::new(p, n), blocks: blocks.clone() };
    if t.dim() == 0 {
        return Ok(1);
    }
    let all = t.elements(None);
    let surj = count_generating(&t, &vec![all; mu.len()]);
    // automorphisms: images of the block generators, e_i annihilated by z^{mu_i}
    let pools: Vec<Vec<Vec<u32>>> = blocks
        .iter()
        .map(|&b| t.elements(Some(&t.blocks.iter().map(|_| b).collect::<Vec<_>>())))
        .collect();
    let aut = count_generating(&t, &pools);
    Ok(surj / aut)
}

/// `1_lambda * 1_mu` by classifying every product of representatives.
pub fn pair_convolution(alg: &SphericalAlgebra, lambda: &[i64], mu: &[i64]) -> Result<HeckeElement> {
    let d = LocalDvr { field: alg.dvr.field.clone() };
    let xs = alg.coset_reps(lambda)?;
    let ys = alg.coset_reps(mu)?;
    let mut counts = std::collections::BTreeMap::<Vec<i64>, i128>::new();
    for x in xs.iter() {
        for y in ys.iter() {
            let t = cartan_type(&d, &mat_mul(&d, x, y)).expect("nonsingular");
            *counts.entry(t).or_insert(0) += 1;
        }
    }
    let mut h = HeckeElement::default();
    for (nu, c) in counts {
        let deg = alg.coset_degree(&nu)? as i128;
        assert_eq!(c % deg, 0, "pair count not divisible by the coset degree");
        h.add_term(super::DoubleCoset { mu: nu }, c / deg);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts_small() {
        assert_eq!(lattice_count(&[1, 0], 2).unwrap(), 3);
        assert_eq!(lattice_count(&[1, 0, 0], 2).unwrap(), 7);
        assert_eq!(lattice_count(&[1, 1], 3).unwrap(), 1);
        assert_eq!(lattice_count(&[2, 0], 2).unwrap(), 6);
    }

    #[test]
    fn pair_products_match() {
        let alg = SphericalAlgebra::new(2, 2).unwrap();
        let via_constants = alg.convolve(&HeckeElement::basis(vec![1, 0]).unwrap(), &HeckeElement::basis(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(pair_convolution(&alg, &[1, 0], &[1, 0]).unwrap(), via_constants);
    }
}

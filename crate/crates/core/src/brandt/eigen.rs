//! Simultaneous eigensystems of commuting matrices over an explicit splitting field.

use crate::error::{Error, Result};
use crate::field::{embed::embed, FiniteField, Gf};
use crate::linalg::{self, Matrix};
use crate::upoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest splitting field (absolute degree) built for eigenvalue extraction.
pub const MAX_SPLIT_DEGREE: usize = 20;

/// Hecke operator label `T_{w,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpLabel {
    pub w: String,
    pub j: usize,
}

/// A simultaneous eigenvalue tuple (one value per label, in label order) with the dimension
/// of its joint generalized eigenspace at one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigensystem {
    pub weight: usize,
    pub values: Vec<u32>,
    pub multiplicity: usize,
}

/// Absolute degree of a field containing `base` and every eigenvalue of the matrices.
pub fn splitting_degree(base: &Gf, mats: &[Matrix<u32>]) -> usize {
    let mut n = base.degree();
    for m in mats {
        if m.rows == 0 {
            continue;
        }
        for d in upoly::factor_degrees(base, &linalg::charpoly(base, m)) {
            n = num_integer::lcm(n, d * base.degree());
        }
    }
    n
}

/// Splitting field of the given degree, or a resource-cap error.
pub fn splitting_field(p: u32, degree: usize) -> Result<Gf> {
    if degree > MAX_SPLIT_DEGREE {
        return Err(Error::cap(format!("splitting field of degree {degree} exceeds {MAX_SPLIT_DEGREE}")));
    }
    Ok(Gf::new(p, degree))
}

/// Maps a matrix over `small` into `big` along the canonical embedding.
pub fn embed_matrix(small: &Gf, big: &Gf, m: &Matrix<u32>) -> Matrix<u32> {
    let e = embed(small, big);
    m.map(|x| e.apply(*x))
}

pub fn commute(f: &Gf, a: &Matrix<u32>, b: &Matrix<u32>) -> bool {
    linalg::mul(f, a, b) == linalg::mul(f, b, a)
}

/// Joint generalized eigenspaces of a commuting family over `f`, which must split every
/// characteristic polynomial.
pub fn simultaneous(f: &Gf, n: usize, mats: &[Matrix<u32>], weight: usize) -> Result<Vec<Eigensystem>> {
    for (i, a) in mats.iter().enumerate() {
        if a.rows != n || a.cols != n {
            return Err(Error::pre("operators of different sizes"));
        }
        for b in &mats[i + 1..] {
            if !commute(f, a, b) {
                return Err(Error::consistency("Hecke operators do not commute"));
            }
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // (values so far, basis columns of the joint space)
    let mut spaces: Vec<(Vec<u32>, Matrix<u32>)> = vec![(Vec::new(), linalg::identity(f, n))];
    for b in mats {
        let mut next = Vec::new();
        for (vals, v) in spaces {
            let d = v.cols;
            let bv = linalg::mul(f, b, &v);
            let mut rows = Vec::with_capacity(d);
            for c in 0..d {
                let col: Vec<u32> = (0..n).map(|i| *bv.get(i, c)).collect();
                rows.push(linalg::solve(f, &v, &col).ok_or_else(|| Error::consistency("joint eigenspace not invariant"))?);
            }
            let m = Matrix::from_rows(rows).transpose();
            let cp = linalg::charpoly(f, &m);
            let roots = upoly::roots(f, &cp, &mut rng);
            let mut covered = 0;
            for alpha in roots {
                let shifted = linalg::sub(f, &m, &linalg::scale(f, &linalg::identity(f, d), &alpha));
                let ker = linalg::kernel(f, &linalg::pow(f, &shifted, d as u64));
                covered += ker.len();
                let w = linalg::mul(f, &v, &Matrix::from_rows(ker).transpose());
                let mut vals = vals.clone();
                vals.push(alpha);
                next.push((vals, w));
            }
            if covered != d {
                return Err(Error::pre("field does not split the characteristic polynomials"));
            }
        }
        spaces = next;
    }
    Ok(spaces.into_iter().map(|(values, v)| Eigensystem { weight, values, multiplicity: v.cols }).collect())
}

//! Compatible embeddings between table fields of the same characteristic.
//!
//! For `M | N` the embedding `F_{p^M} -> F_{p^N}` is built recursively through maximal
//! subfields: `N/l -> N` for each prime `l | N` maps the generator of the subfield to the
//! smallest root (by code) of its modulus that agrees with every previously fixed maximal
//! embedding on the common subfield. Composites are routed through the smallest prime, so
//! `emb(M -> N) = emb(K -> N) o emb(M -> K)` for every chain `M | K | N`.

use super::{fp_poly, FiniteField, Gf};

/// A field homomorphism given by its full value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub source_degree: usize,
    pub target_degree: usize,
    image: Vec<u32>,
}

impl Embedding {
    pub fn apply(&self, a: u32) -> u32 {
        self.image[a as usize]
    }

    pub fn identity(f: &Gf) -> Self {
        Embedding { source_degree: f.degree(), target_degree: f.degree(), image: f.elements().collect() }
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &Embedding) -> Embedding {
        assert_eq!(inner.target_degree, self.source_degree);
        Embedding {
            source_degree: inner.source_degree,
            target_degree: self.target_degree,
            image: inner.image.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Preimage of `b`, if `b` lies in the image.
    pub fn preimage(&self, b: u32) -> Option<u32> {
        self.image.iter().position(|&x| x == b).map(|i| i as u32)
    }

    fn from_generator_image(small: &Gf, big: &Gf, root: u32) -> Self {
        let n = small.degree();
        let mut powers = vec![1u32];
        for _ in 1..n {
            powers.push(big.mul(powers.last().unwrap(), &root));
        }
        let image = small
            .elements()
            .map(|a| {
                let c = small.fp_coords(&a);
                c.iter().zip(&powers).fold(0u32, |acc, (&ci, pw)| big.add(&acc, &big.mul(&big.from_int(ci as i64), pw)))
            })
            .collect();
        Embedding { source_degree: n, target_degree: big.degree(), image }
    }
}

fn eval_fp_poly_in(big: &Gf, f: &[u32], x: u32) -> u32 {
    f.iter().rev().fold(0u32, |acc, &c| big.add(&big.mul(&acc, &x), &big.from_int(c as i64)))
}

/// Canonical compatible embedding `F_{p^M} -> F_{p^N}`; panics unless `M | N` and both
/// fields use the canonical moduli.
pub fn embed(small: &Gf, big: &Gf) -> Embedding {
    assert_eq!(small.p(), big.p(), "characteristic mismatch");
    let (m, n) = (small.degree(), big.degree());
    assert!(n % m == 0, "F_p^{m} does not embed in F_p^{n}");
    if m == n {
        return Embedding::identity(big);
    }
    let l = fp_poly::prime_factors((n / m) as u64)[0] as usize;
    let mid = Gf::new(big.p(), n / l);
    let outer = maximal_embedding(&mid, big);
    let inner = embed(small, &mid);
    outer.compose(&inner)
}

fn maximal_embedding(sub: &Gf, big: &Gf) -> Embedding {
    let n = big.degree();
    let p = big.p();
    let target_l = n / sub.degree();
    let primes: Vec<usize> = fp_poly::prime_factors(n as u64).into_iter().map(|x| x as usize).collect();
    let mut fixed: Vec<(usize, Gf, Embedding)> = Vec::new();
    for &l in &primes {
        let s = if l == target_l { sub.clone() } else { Gf::new(p, n / l) };
        let mut roots: Vec<u32> = big.elements().filter(|&x| eval_fp_poly_in(big, s.modulus(), x) == 0).collect();
        roots.sort_unstable();
        let mut chosen = None;
        for r in roots {
            let cand = Embedding::from_generator_image(&s, big, r);
            let ok = fixed.iter().all(|(lj, sj, ej)| {
                let d = Gf::new(p, n / (l * lj));
                let via_new = cand.compose(&embed(&d, &s));
                let via_old = ej.compose(&embed(&d, sj));
                via_new == via_old
            });
            if ok {
                chosen = Some(cand);
                break;
            }
        }
        let e = chosen.expect("compatible embedding exists");
        if l == target_l {
            return e;
        }
        fixed.push((l, s, e));
    }
    unreachable!("target prime divides n")
}

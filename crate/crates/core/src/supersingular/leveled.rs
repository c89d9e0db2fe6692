//! Supersingular points with full level-`n` structure.

use super::{check_level, class_mass, enumerate_ss, gl_order_mod, SSClass, SSClassRecord};
use crate::drinfeld::{torsion_module, DrinfeldModule, TorsionModule};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Gf, GfExt};
use crate::poly_a::{PolyA, PrimeP};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A class together with an `A/n`-basis of its `n`-torsion, up to automorphisms. The basis
/// is stored as coordinates in the class's torsion module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeveledPoint {
    pub class: usize,
    pub level: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct SSLeveledSet {
    pub r: usize,
    pub place: PrimeP,
    pub level: PolyA,
    pub field: Gf,
    pub gamma: u32,
    pub classes: Vec<SSClass>,
    /// `phi_j[n]` for every class, all inside one extension of the search field.
    pub torsion: Vec<TorsionModule>,
    pub points: Vec<LeveledPoint>,
    /// Per-point normalization scalars `s_p`: point `p` is represented by the module
    /// `scale_by(s_p)` with level structure `s_p^{-1} lambda_p`. All ones by default.
    pub scalars: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeveledSetRecord {
    pub q: u32,
    pub r: usize,
    pub place: String,
    pub level: String,
    pub classes: Vec<SSClassRecord>,
    pub points: Vec<LeveledPoint>,
}

/// Smallest `m` with `P^m = 1 mod n`.
pub fn frobenius_order_mod(place: &PrimeP, n: &PolyA) -> u64 {
    let one = PolyA::one(n.q());
    let p = place.poly().rem(n);
    let mut x = p.clone();
    let mut m = 1;
    while x != one {
        x = x.mulmod(&p, n);
        m += 1;
    }
    m
}

/// All supersingular points with level-`n` structure. Their number is checked against
/// `#GL_r(A/n)` times the mass.
pub fn leveled_ss_set(r: usize, place: &PrimeP, n: &PolyA, cap: u64) -> Result<SSLeveledSet> {
    check_level(place, n)?;
    let classes = enumerate_ss(r, place, cap)?;
    let field = classes[0].module.field().clone();
    let gamma = *classes[0].module.gamma();
    let m = frobenius_order_mod(place, n) as usize;
    if (m * field.degree()) as u64 > 64 {
        return Err(Error::cap(format!("level torsion needs an extension of degree {m} over the search field")));
    }
    let ext = GfExt::new(&field, m);
    let mut torsion = Vec::with_capacity(classes.len());
    let mut points = Vec::new();
    let want = r * n.deg();
    for class in &classes {
        let tm = torsion_module(&class.module, n, &ext)?;
        if tm.dim() != want {
            return Err(Error::consistency(format!("phi[{n}] is not rational over the expected field")));
        }
        let size = (field.p() as u64).pow(tm.dim() as u32);
        let total = size
            .checked_pow(r as u32)
            .filter(|&t| t <= cap)
            .ok_or_else(|| Error::cap(format!("{size}^{r} level tuples exceed the cap {cap}")))?;
        log::info!("class {}: scanning {total} level tuples", class.index);
        let auts: Vec<Vec<u32>> = class.module.automorphism_elements().iter().map(|a| ext.lift(a)).collect();
        if auts.len() as u64 != class.aut_order {
            return Err(Error::consistency("automorphisms not defined over the search field"));
        }
        let found = crate::par::map_range(0..total, |code| {
            let tuple = decode(code, size, r, tm.dim(), field.p());
            if !tm.generates(&tuple) {
                return None;
            }
            let pts: Vec<Vec<u32>> = tuple.iter().map(|c| tm.element(c)).collect();
            let mut fixed = 0;
            for a in &auts {
                let image: Vec<Vec<u32>> = pts.iter().map(|x| tm.coords(&ext.mul(a, x)).expect("torsion point")).collect();
                match image.cmp(&tuple) {
                    std::cmp::Ordering::Less => return None,
                    std::cmp::Ordering::Equal => fixed += 1,
                    std::cmp::Ordering::Greater => {}
                }
            }
            Some((fixed, tuple))
        });
        for (fixed, tuple) in found.into_iter().flatten() {
            if fixed != 1 {
                return Err(Error::consistency("an automorphism fixes a level structure"));
            }
            points.push(LeveledPoint { class: class.index, level: tuple });
        }
        torsion.push(tm);
    }
    let expected = BigRational::from_integer(BigInt::from(gl_order_mod(r, n))) * class_mass(&classes);
    if BigRational::from_integer(BigInt::from(points.len())) != expected {
        return Err(Error::consistency(format!("{} level points, expected {expected}", points.len())));
    }
    let scalars = vec![1; points.len()];
    Ok(SSLeveledSet { r, place: place.clone(), level: n.clone(), field, gamma, classes, torsion, points, scalars })
}

fn decode(mut code: u64, size: u64, r: usize, dim: usize, p: u32) -> Vec<Vec<u32>> {
    (0..r)
        .map(|_| {
            let mut c = code % size;
            code /= size;
            (0..dim)
                .map(|_| {
                    let d = (c % p as u64) as u32;
                    c /= p as u64;
                    d
                })
                .collect()
        })
        .collect()
}

impl SSLeveledSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ext(&self) -> &GfExt {
        &self.torsion[0].ext
    }

    /// Draws fresh normalization scalars from `F^x`.
    pub fn randomize_normalization<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for s in &mut self.scalars {
            *s = self.field.random_nonzero(rng);
        }
    }

    /// The module representing point `i`.
    pub fn module(&self, i: usize) -> DrinfeldModule<Gf> {
        self.classes[self.points[i].class].module.scale_by(self.scalars[i])
    }

    /// The level structure of point `i` as elements of the common extension, matching
    /// [`SSLeveledSet::module`].
    pub fn lambda(&self, i: usize) -> Vec<Vec<u32>> {
        let p = &self.points[i];
        let tm = &self.torsion[p.class];
        let ext = &tm.ext;
        let s_inv = ext.lift(&self.field.inv(&self.scalars[i]).unwrap());
        p.level.iter().map(|c| ext.mul(&s_inv, &tm.element(c))).collect()
    }

    pub fn record(&self) -> LeveledSetRecord {
        LeveledSetRecord {
            q: self.place.q(),
            r: self.r,
            place: self.place.poly().to_string(),
            level: self.level.to_string(),
            classes: self.classes.iter().map(|c| c.record()).collect(),
            points: self.points.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_level_sets() {
        let cases = [(2u32, 2usize, "t", "t+1", 2usize), (2, 2, "t+1", "t", 2), (3, 2, "t", "t+1", 6), (2, 2, "t^2+t+1", "t", 6), (2, 3, "t", "t+1", 24)];
        for (q, r, p, n, count) in cases {
            let place = PrimeP::parse(q, p).unwrap();
            let n = PolyA::parse(q, n).unwrap();
            let set = leveled_ss_set(r, &place, &n, 1 << 20).unwrap();
            assert_eq!(set.len(), count, "{q} {r} {p}");
        }
    }

    #[test]
    fn level_order() {
        let p = PrimeP::parse(2, "t^2+t+1").unwrap();
        assert_eq!(frobenius_order_mod(&p, &PolyA::t(2)), 1);
        let p = PrimeP::parse(2, "t").unwrap();
        assert_eq!(frobenius_order_mod(&p, &PolyA::parse(2, "t^2+t+1").unwrap()), 3);
    }
}

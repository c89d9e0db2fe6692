//! Desk-scale comparison of Hecke eigensystems on the supersingular set with those on
//! forms on the level-`t` moduli space.

use super::eigen::{self, Eigensystem, OpLabel};
use super::{eigensystems_in, operator_tables, splitting_degree, weight_period};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FiniteField};
use crate::linalg::Matrix;
use crate::moduli::forms::{form_space_basis, FormBasis};
use crate::moduli::hecke::{hecke_matrix, point_budget, HeckeData};
use crate::moduli::ModuliSpace;
use crate::poly_a::{primes_up_to, PolyA, PrimeP};
use crate::supersingular::leveled_ss_set;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JlConfig {
    pub q: u32,
    pub r: usize,
    pub place: String,
    pub prime_degree_max: usize,
    /// Weights on the supersingular side (canonically `1..=q_v^r - 1`).
    pub brandt_weights: Vec<usize>,
    /// Weight window on the moduli side.
    pub moduli_weights: Vec<usize>,
    /// Degree of the coordinate field of the moduli side.
    pub moduli_field_degree: usize,
    pub seed: u64,
    pub cap: u64,
}

impl JlConfig {
    /// Supersingular weights `1..=q_v^r - 1`, moduli weights `1..=6`, primes of degree `<= 3`.
    pub fn desk(q: u32, r: usize, place: &PrimeP) -> Self {
        let period = (place.norm() as usize).pow(r as u32) - 1;
        JlConfig {
            q,
            r,
            place: place.poly().to_string(),
            prime_degree_max: 3,
            brandt_weights: (1..=period).collect(),
            moduli_weights: (1..=6).collect(),
            moduli_field_degree: num_integer::lcm(6, place.degree()),
            seed: 1,
            cap: 1 << 22,
        }
    }
}

/// A weight where a Hecke translate left the span of degree-`k` monomials, so `(R_r)_k`
/// was not Hecke-stable in the computation and the weight was skipped.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightGap {
    pub weight: usize,
    pub dim: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JlReport {
    pub labels: Vec<OpLabel>,
    pub field: FieldDescriptor,
    pub brandt: Vec<Eigensystem>,
    pub moduli: Vec<Eigensystem>,
    /// Supersingular eigensystems missing on the moduli side (first occurrence).
    pub brandt_only: Vec<Eigensystem>,
    /// Moduli eigensystems missing on the supersingular side (first occurrence).
    pub moduli_only: Vec<Eigensystem>,
    pub moduli_dims: Vec<(usize, usize)>,
    pub gaps: Vec<WeightGap>,
}

impl JlReport {
    pub fn brandt_in_moduli(&self) -> bool {
        self.brandt_only.is_empty()
    }

    pub fn moduli_in_brandt(&self) -> bool {
        self.moduli_only.is_empty()
    }

    /// Both inclusions hold.
    pub fn coincide(&self) -> bool {
        self.brandt_in_moduli() && self.moduli_in_brandt()
    }

    pub fn distinct(list: &[Eigensystem]) -> usize {
        list.iter().map(|e| &e.values).collect::<BTreeSet<_>>().len()
    }
}

/// Two-sided comparison of eigenvalue tuples, ignoring weights. Each side lists its
/// eigensystems absent from the other (first occurrence of each tuple).
pub fn compare(a_labels: &[OpLabel], a: &[Eigensystem], b_labels: &[OpLabel], b: &[Eigensystem]) -> Result<(Vec<Eigensystem>, Vec<Eigensystem>)> {
    if a_labels != b_labels {
        return Err(Error::pre("the two sides use different operator lists"));
    }
    let missing = |x: &[Eigensystem], y: &[Eigensystem]| {
        let have: BTreeSet<&Vec<u32>> = y.iter().map(|e| &e.values).collect();
        let mut seen = BTreeSet::new();
        x.iter().filter(|e| !have.contains(&e.values) && seen.insert(e.values.clone())).cloned().collect::<Vec<_>>()
    };
    Ok((missing(a, b), missing(b, a)))
}

/// Operators `T_{w,j}` for primes of degree `<= d` other than `t` and `P`.
pub fn default_primes(place: &PrimeP, d: usize) -> Vec<PrimeP> {
    let t = PolyA::t(place.q());
    primes_up_to(place.q(), d).into_iter().filter(|w| w.poly() != &t && w != place).collect()
}

struct ModuliSide {
    dims: Vec<(usize, usize)>,
    mats: Vec<(usize, usize, Vec<Matrix<u32>>)>,
    gaps: Vec<WeightGap>,
}

fn moduli_side(space: &ModuliSpace, primes: &[PrimeP], weights: &[usize], seed: u64) -> Result<ModuliSide> {
    let r = space.rank();
    let bases: Vec<FormBasis> = weights.iter().map(|&k| form_space_basis(space, k, seed)).collect();
    let count = point_budget(bases.iter().map(|b| b.dim()).max().unwrap_or(0));
    let mut data = Vec::new();
    for w in primes {
        for j in 1..=r {
            data.push(HeckeData::new(space, w, j, count, seed ^ (j as u64) << 32)?);
        }
    }
    let mut out = ModuliSide { dims: Vec::new(), mats: Vec::new(), gaps: Vec::new() };
    for basis in &bases {
        log::info!("moduli side: weight {} with {} basis forms", basis.weight, basis.dim());
        out.dims.push((basis.weight, basis.dim()));
        let mut ms = Vec::new();
        let mut gap = None;
        for d in &data {
            match hecke_matrix(space, basis, d) {
                Ok(m) => ms.push(m),
                Err(Error::InterpolationResidual { detail, .. }) => {
                    gap = Some(WeightGap { weight: basis.weight, dim: basis.dim(), detail: format!("T_{{{},{}}}: {detail}", d.w.poly(), d.j) });
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        match gap {
            Some(g) => out.gaps.push(g),
            None => out.mats.push((basis.weight, basis.dim(), ms)),
        }
    }
    Ok(out)
}

/// Runs both sides at level `(t)` and compares their eigensystems.
pub fn jl_verify(cfg: &JlConfig) -> Result<JlReport> {
    let place = PrimeP::parse(cfg.q, &cfg.place)?;
    let t = PolyA::t(cfg.q);
    if place.poly() == &t {
        return Err(Error::pre("the place must differ from t"));
    }
    let set = leveled_ss_set(cfg.r, &place, &t, cfg.cap)?;
    let period = weight_period(&set);
    if cfg.brandt_weights.iter().any(|&k| k == 0 || k > period) {
        return Err(Error::pre(format!("supersingular weights must lie in 1..={period}")));
    }
    let primes = default_primes(&place, cfg.prime_degree_max);
    let tables = operator_tables(&set, &primes)?;
    let labels: Vec<OpLabel> = tables.iter().map(|t| t.label.clone()).collect();
    let space = ModuliSpace::at_place(cfg.q, cfg.r, &place, cfg.moduli_field_degree)?;
    let side = moduli_side(&space, &primes, &cfg.moduli_weights, cfg.seed)?;
    let mut degree = num_integer::lcm(splitting_degree(&set, &tables, &cfg.brandt_weights), space.field().degree());
    for (_, _, ms) in &side.mats {
        degree = num_integer::lcm(degree, eigen::splitting_degree(space.field(), ms));
    }
    let big = eigen::splitting_field(cfg.q, degree)?;
    let brandt = eigensystems_in(&set, &tables, &cfg.brandt_weights, &big)?;
    let mut moduli = Vec::new();
    for (k, dim, ms) in &side.mats {
        let ms: Vec<Matrix<u32>> = ms.iter().map(|m| eigen::embed_matrix(space.field(), &big, m)).collect();
        moduli.extend(eigen::simultaneous(&big, *dim, &ms, *k)?);
    }
    let (brandt_only, moduli_only) = compare(&labels, &brandt, &labels, &moduli)?;
    Ok(JlReport {
        labels,
        field: big.descriptor(),
        brandt,
        moduli,
        brandt_only,
        moduli_only,
        moduli_dims: side.dims,
        gaps: side.gaps,
    })
}

//! The height stratification at points and the supersingular points at level `(t)`.

use super::forms::{hasse_invariant, GradedForm};
use super::{ModuliPoint, ModuliSpace};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::poly_a::PolyA;

/// The Hasse invariants `H^a_1, ..., H^a_{r-1}` for a fixed uniformizer `a`.
#[derive(Clone, Debug)]
pub struct HasseSet {
    pub a: PolyA,
    pub forms: Vec<GradedForm>,
}

impl HasseSet {
    pub fn new(space: &ModuliSpace, a: &PolyA) -> Result<Self> {
        let forms = (1..space.rank()).map(|i| hasse_invariant(space, a, i)).collect::<Result<_>>()?;
        Ok(HasseSet { a: a.clone(), forms })
    }

    /// Smallest `h >= 1` with `H^a_h(x) != 0`, where `H^a_r` counts as nonzero.
    pub fn stratum(&self, space: &ModuliSpace, x: &ModuliPoint) -> Result<usize> {
        let f = space.field();
        let pv = space
            .point_values(f, &space.gamma_t(), &x.lambda)
            .ok_or_else(|| Error::pre("lambda is not injective on F_q^r"))?;
        for (i, h) in self.forms.iter().enumerate() {
            if !f.is_zero(&h.eval_at(f, &|c| c, &pv)) {
                return Ok(i + 1);
            }
        }
        Ok(space.rank())
    }
}

pub fn stratum_of_point(space: &ModuliSpace, x: &ModuliPoint, a: &PolyA) -> Result<usize> {
    HasseSet::new(space, a)?.stratum(space, x)
}

/// All supersingular points with coordinates in the space's field, normalized to
/// `lambda(e_1) = 1`, in increasing order. The scan covers `|L|^{r-1}` tuples.
pub fn ss_points_level_t(space: &ModuliSpace, cap: u64) -> Result<Vec<ModuliPoint>> {
    let place = space.place().ok_or_else(|| Error::pre("supersingular points need a space in characteristic P"))?;
    let hasse = HasseSet::new(space, place.poly())?;
    let f = space.field();
    let size = f.size() as u64;
    let r = space.rank();
    let total = size.checked_pow(r as u32 - 1).filter(|&t| t <= cap).ok_or_else(|| {
        Error::cap(format!("scan of {}^{} tuples exceeds the cap {cap}", size, r - 1))
    })?;
    let found = crate::par::map_range(0..total, |mut code| {
        let mut lambda = vec![f.one()];
        for _ in 1..r {
            lambda.push((code % size) as u32);
            code /= size;
        }
        let x = space.point(lambda).ok()?;
        (hasse.stratum(space, &x).ok()? == r).then_some(x)
    });
    let mut pts: Vec<ModuliPoint> = found.into_iter().flatten().collect();
    pts.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;
    use crate::poly_a::PrimeP;
    use rand::SeedableRng;

    #[test]
    fn rank_two_strata() {
        let place = PrimeP::parse(2, "t+1").unwrap();
        let s = ModuliSpace::at_place(2, 2, &place, 4).unwrap();
        let f = Gf::new(2, 4);
        let a = place.poly().clone();
        // omega: element of order 3 in F_16
        let omega = f.pow(&f.generator(), 5);
        let alpha = f.generator();
        let ss = s.point(vec![alpha, f.mul(&alpha, &omega)]).unwrap();
        assert_eq!(stratum_of_point(&s, &ss, &a).unwrap(), 2);
        let generic = s.point(vec![1, alpha]).unwrap();
        assert_eq!(stratum_of_point(&s, &generic, &a).unwrap(), 1);
        let pts = ss_points_level_t(&s, 1 << 20).unwrap();
        assert_eq!(pts.len(), 2);
        for x in &pts {
            assert_eq!(f.pow(&x.lambda[1], 3), 1);
        }
    }

    #[test]
    fn strata_match_heights() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (q, r, p) in [(2u32, 3usize, "t^2+t+1"), (3, 2, "t+1")] {
            let place = PrimeP::parse(q, p).unwrap();
            let s = ModuliSpace::at_place(q, r, &place, 2 * place.degree()).unwrap();
            let hs = HasseSet::new(&s, place.poly()).unwrap();
            for _ in 0..30 {
                let x = s.random_point(&mut rng);
                let phi = s.module_from_point(&x).unwrap();
                assert_eq!(hs.stratum(&s, &x).unwrap(), phi.height_at_v(&place).unwrap());
            }
        }
    }
}

//! `moduli` subcommands.

use crate::args::{ModuliArgs, ModuliCmd, RunConfig};
use crate::util::{need, parse_ints, to_value};
use drinfeld::field::{FiniteField, Gf};
use drinfeld::moduli::boundary::{limit_module, DegenerationPath};
use drinfeld::moduli::forms::{coefficient_form, form_space_basis};
use drinfeld::moduli::hecke::{hecke_matrix, point_budget, HeckeData};
use drinfeld::moduli::strata::{ss_points_level_t, HasseSet};
use drinfeld::moduli::{component_count, ModuliPoint, ModuliSpace};
use drinfeld::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// In characteristic `P` with `--place`, otherwise with `gamma(t)` the field generator.
fn space(a: &ModuliArgs) -> Result<ModuliSpace> {
    let cfg = &a.cfg;
    let (q, r) = (cfg.q()?, cfg.rank()?);
    if cfg.place.is_some() {
        return ModuliSpace::at_place(q, r, &cfg.place()?, a.field_degree);
    }
    if a.field_degree == 0 {
        return Err(Error::pre("field degree must be positive"));
    }
    let f = Gf::new(q, a.field_degree);
    ModuliSpace::new(q, r, &f, f.generator())
}

fn point(a: &ModuliArgs, s: &ModuliSpace) -> Result<ModuliPoint> {
    match &a.lambda {
        Some(l) => {
            let lambda: Vec<u32> = parse_ints(l, "lambda")?;
            if lambda.iter().any(|&x| x >= s.field().size()) {
                return Err(Error::pre("lambda entries must be element codes of the coordinate field"));
            }
            s.point(lambda)
        }
        None => Ok(s.random_point(&mut ChaCha8Rng::seed_from_u64(a.cfg.seed))),
    }
}

pub fn moduli(cmd: &ModuliCmd) -> Result<(Value, &RunConfig)> {
    match cmd {
        ModuliCmd::Point(a) => {
            let s = space(a)?;
            let x = point(a, &s)?;
            let f = s.field();
            let phi = s.module_from_point(&x)?;
            let forms: Vec<u32> = (1..=s.rank()).map(|i| coefficient_form(&s, i)?.eval(&s, &x)).collect::<Result<_>>()?;
            if forms != phi.coeffs() {
                return Err(Error::consistency("coefficient forms disagree with the reconstructed module"));
            }
            Ok((
                json!({
                    "field": to_value(&f.descriptor()),
                    "gamma": s.gamma_t(),
                    "lambda": x.lambda,
                    "normalized": s.normalize(&x).lambda,
                    "u": s.u_values(f, &x.lambda),
                    "coeffs": phi.coeffs(),
                }),
                &a.cfg,
            ))
        }
        ModuliCmd::FormBasis(a) => {
            let s = space(a)?;
            let k = need(&a.cfg.weight, "weight")?;
            let b = form_space_basis(&s, k, a.cfg.seed);
            Ok((json!({ "weight": k, "dim": b.dim(), "monomial_count": b.monomial_count, "monomials": b.monomials }), &a.cfg))
        }
        ModuliCmd::Hecke(a) => {
            let s = space(a)?;
            let k = need(&a.cfg.weight, "weight")?;
            let j = a.j.unwrap_or(1);
            let ws = a.cfg.primes(s.place(), None)?;
            let basis = form_space_basis(&s, k, a.cfg.seed);
            let mut out = Vec::new();
            for w in &ws {
                let data = HeckeData::new(&s, w, j, point_budget(basis.dim()), a.cfg.seed)?;
                let m = hecke_matrix(&s, &basis, &data)?;
                out.push(json!({ "w": w.poly().to_string(), "j": j, "rows": m.to_rows() }));
            }
            Ok((
                json!({ "field": to_value(&s.field().descriptor()), "weight": k, "basis": basis.monomials, "operators": out }),
                &a.cfg,
            ))
        }
        ModuliCmd::Strata(a) => {
            let s = space(a)?;
            let place = s.place().cloned().ok_or_else(|| Error::pre("strata need --place"))?;
            let hasse = HasseSet::new(&s, place.poly())?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.cfg.seed);
            let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
            for _ in 0..a.count {
                let x = s.random_point(&mut rng);
                let h = hasse.stratum(&s, &x)?;
                let height = s.module_from_point(&x)?.height_at_v(&place)?;
                if h != height {
                    return Err(Error::consistency(format!("stratum {h} differs from height {height} at {:?}", x.lambda)));
                }
                *hist.entry(h).or_insert(0) += 1;
            }
            let ss = match ss_points_level_t(&s, a.cfg.cap) {
                Ok(pts) => Value::from(pts.into_iter().map(|p| p.lambda).collect::<Vec<_>>()),
                Err(Error::ResourceCap(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            Ok((json!({ "count": a.count, "histogram": hist, "supersingular_points": ss }), &a.cfg))
        }
        ModuliCmd::Components(cfg) => Ok((json!({ "components": component_count(&cfg.level()?)? }), cfg)),
        ModuliCmd::Limit(a) => {
            let s = space(a)?;
            let raw = need(&a.path, "path")?;
            let lambda: Vec<(Vec<u32>, Vec<u32>)> =
                serde_json::from_str(&raw).map_err(|e| Error::pre(format!("malformed --path: {e}")))?;
            let c = limit_module(&s, &DegenerationPath { lambda })?;
            Ok((json!({ "limit": c, "rank": c.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1) }), &a.cfg))
        }
    }
}

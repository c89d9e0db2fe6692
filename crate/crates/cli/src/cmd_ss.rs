//! `ss`, `brandt` and `jl` subcommands.

use crate::args::{BrandtArgs, BrandtCmd, JlCmd, RunConfig, SsCmd};
use crate::util::{cached, parse_range, to_value};
use drinfeld::arith::rational_string;
use drinfeld::brandt::jl::{jl_verify, JlConfig, JlReport};
use drinfeld::brandt::{self, Eigensystem, IsogenyTable, OpLabel};
use drinfeld::supersingular::{self, SSLeveledSet};
use drinfeld::{Error, Result};
use rand::SeedableRng;
use serde_json::{json, Value};

fn number(s: String) -> Value {
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

pub fn ss(cmd: &SsCmd) -> Result<(Value, &RunConfig)> {
    match cmd {
        SsCmd::Enumerate(cfg) => {
            let (q, r, place) = (cfg.q()?, cfg.rank()?, cfg.place()?);
            let key = format!("ss-enumerate-q{q}-r{r}-{}", place.poly().to_string().replace('^', ""));
            let v = cached(cfg, &key, || {
                let classes = supersingular::enumerate_ss(r, &place, cfg.cap)?;
                Ok(json!({
                    "q": q,
                    "rank": r,
                    "place": place.poly().to_string(),
                    "mass": rational_string(&supersingular::class_mass(&classes)),
                    "classes": classes.iter().map(|c| to_value(&c.record())).collect::<Vec<_>>(),
                }))
            })?;
            Ok((v, cfg))
        }
        SsCmd::Mass { cfg, verify } => {
            let (r, place) = (cfg.rank()?, cfg.place()?);
            let mass = rational_string(&supersingular::mass(r, &place));
            if !verify {
                return Ok((json!({ "mass": mass }), cfg));
            }
            let classes = supersingular::enumerate_ss(r, &place, cfg.cap)?;
            let found = rational_string(&supersingular::class_mass(&classes));
            Ok((json!({ "mass": mass, "enumerated": found, "classes": classes.len() }), cfg))
        }
        SsCmd::Leveled(cfg) => {
            let set = leveled(cfg)?;
            let rec = set.record();
            Ok((json!({ "count": set.len(), "set": to_value(&rec) }), cfg))
        }
        SsCmd::Dim(cfg) => {
            let (r, place, n) = (cfg.rank()?, cfg.place()?, cfg.level()?);
            let dim = supersingular::dim_formula(r, &place, &n)?;
            Ok((json!({ "dim": number(dim.to_string()) }), cfg))
        }
    }
}

fn leveled(cfg: &RunConfig) -> Result<SSLeveledSet> {
    supersingular::leveled_ss_set(cfg.rank()?, &cfg.place()?, &cfg.level()?, cfg.cap)
}

fn tables(a: &BrandtArgs) -> Result<(SSLeveledSet, Vec<IsogenyTable>)> {
    let cfg = &a.cfg;
    let mut set = leveled(cfg)?;
    if let Some(seed) = a.normalization_seed {
        set.randomize_normalization(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    }
    let ws = cfg.primes(Some(&set.place), Some(&set.level))?;
    let tables = match a.j {
        Some(j) => ws.iter().map(|w| brandt::isogeny_table(&set, w, j)).collect::<Result<Vec<_>>>()?,
        None => brandt::operator_tables(&set, &ws)?,
    };
    Ok((set, tables))
}

pub fn eigensystem_json(labels: &[OpLabel], e: &Eigensystem) -> Value {
    json!({
        "weight": e.weight,
        "multiplicity": e.multiplicity,
        "entries": labels.iter().zip(&e.values).map(|(l, v)| json!({"w": l.w, "j": l.j, "eigenvalue": v})).collect::<Vec<_>>(),
    })
}

pub fn brandt(cmd: &BrandtCmd) -> Result<(Value, &RunConfig)> {
    match cmd {
        BrandtCmd::Matrix(a) => {
            let (set, tables) = tables(a)?;
            let weights = a.cfg.weights()?;
            let mats: Vec<Value> = tables
                .iter()
                .flat_map(|t| weights.iter().map(|&k| to_value(&t.matrix(k, &set.scalars).record())).collect::<Vec<_>>())
                .collect();
            Ok((json!({ "points": set.len(), "matrices": mats }), &a.cfg))
        }
        BrandtCmd::Eigensystems(a) => {
            let (set, tables) = tables(a)?;
            let weights = match (&a.cfg.weights, a.cfg.weight) {
                (None, None) => (1..=brandt::weight_period(&set)).collect(),
                _ => a.cfg.weights()?,
            };
            let (big, es) = brandt::eigensystems(&set, &tables, &weights)?;
            let labels: Vec<OpLabel> = tables.iter().map(|t| t.label.clone()).collect();
            let dim = supersingular::dim_formula(set.r, &set.place, &set.level)?;
            Ok((
                json!({
                    "field": to_value(&drinfeld::field::FiniteField::descriptor(&big)),
                    "labels": to_value(&labels),
                    "eigensystems": es.iter().map(|e| eigensystem_json(&labels, e)).collect::<Vec<_>>(),
                    "distinct": JlReport::distinct(&es),
                    "dim_formula": number(dim.to_string()),
                }),
                &a.cfg,
            ))
        }
        BrandtCmd::Periodicity(a) => {
            let (set, tables) = tables(a)?;
            let period = brandt::weight_period(&set);
            let ks = match (a.cfg.weight, &a.cfg.weights) {
                (Some(k), _) => vec![k],
                (None, Some(_)) => a.cfg.weights()?,
                (None, None) => (0..period).collect(),
            };
            for &k in &ks {
                if !brandt::verify_periodicity(&set, &tables, k) {
                    return Err(Error::consistency(format!("weights {k} and {k} + period have different characteristic polynomials")));
                }
            }
            Ok((json!({ "weights": ks, "period": period, "holds": true }), &a.cfg))
        }
    }
}

pub fn jl(cmd: &JlCmd) -> Result<(Value, &RunConfig)> {
    let JlCmd::Verify { cfg, moduli_weights, field_degree } = cmd;
    let (q, r, place) = (cfg.q()?, cfg.rank()?, cfg.place()?);
    if let Some(level) = &cfg.level {
        if crate::util::monic(q, level)? != drinfeld::PolyA::t(q) {
            return Err(Error::pre("the comparison runs at level t only"));
        }
    }
    let mut jc = JlConfig::desk(q, r, &place);
    jc.seed = cfg.seed;
    jc.cap = cfg.cap;
    jc.moduli_weights = parse_range(moduli_weights)?;
    if let Some(d) = cfg.prime_degree_max {
        jc.prime_degree_max = d;
    }
    if cfg.weights.is_some() || cfg.weight.is_some() {
        jc.brandt_weights = cfg.weights()?;
    }
    if let Some(n) = field_degree {
        jc.moduli_field_degree = *n;
    }
    let rep = jl_verify(&jc)?;
    let labels = &rep.labels;
    let list = |es: &[Eigensystem]| es.iter().map(|e| eigensystem_json(labels, e)).collect::<Vec<_>>();
    Ok((
        json!({
            "field": to_value(&rep.field),
            "labels": to_value(labels),
            "brandt": list(&rep.brandt),
            "moduli": list(&rep.moduli),
            "brandt_only": list(&rep.brandt_only),
            "moduli_only": list(&rep.moduli_only),
            "moduli_dims": to_value(&rep.moduli_dims),
            "gaps": to_value(&rep.gaps),
            "brandt_in_moduli": rep.brandt_in_moduli(),
            "moduli_in_brandt": rep.moduli_in_brandt(),
            "coincide": rep.coincide(),
        }),
        cfg,
    ))
}

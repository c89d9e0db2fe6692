//! `hecke-local` and `drinfeld` subcommands.

use crate::args::{DrinfeldCmd, LocalArgs, LocalCmd, ModuleArgs, RunConfig};
use crate::util::{need, parse_ints, to_value};
use drinfeld::drinfeld::{frobenius_charpoly, frobenius_charpoly_linear, stable_model, weil_number_check, DrinfeldModule, ValuedModule};
use drinfeld::field::{embed::embed, FiniteField, Gf};
use drinfeld::ratfun::{RatFun, RatFunField};
use drinfeld::skew::TwistRing;
use drinfeld::spherical::{HeckeElement, SphericalAlgebra};
use drinfeld::{Error, PolyA, Result};
use serde_json::{json, Value};

fn mu(s: &Option<String>, flag: &str) -> Result<Vec<i64>> {
    parse_ints(&need(s, flag)?, flag)
}

pub fn local(cmd: &LocalCmd) -> Result<(Value, &RunConfig)> {
    let a: &LocalArgs = match cmd {
        LocalCmd::Reps(a) | LocalCmd::Convolve(a) | LocalCmd::Commute(a) => a,
    };
    let r = a.cfg.rank()?;
    let alg = SphericalAlgebra::new(a.q_w, r)?;
    let v = match cmd {
        LocalCmd::Reps(_) => {
            let m = mu(&a.mu, "mu")?;
            let reps = alg.coset_reps(&m)?;
            json!({ "mu": m, "count": reps.len(), "reps": reps.as_ref() })
        }
        LocalCmd::Convolve(_) => {
            let (m1, m2) = (mu(&a.mu, "mu")?, mu(&a.mu2, "mu2")?);
            let h = alg.convolve(&HeckeElement::basis(m1)?, &HeckeElement::basis(m2)?)?;
            json!({ "product": to_value(&h), "mass": alg.mass(&h)?.to_string() })
        }
        LocalCmd::Commute(_) => {
            let basis = alg.span_basis(a.bound);
            let mut pairs = 0usize;
            for (i, x) in basis.iter().enumerate() {
                for y in &basis[i..] {
                    let (hx, hy) = (HeckeElement::basis(x.clone())?, HeckeElement::basis(y.clone())?);
                    if !alg.commutativity_check(&hx, &hy)? {
                        return Err(Error::consistency(format!("T_{x:?} and T_{y:?} do not commute")));
                    }
                    pairs += 1;
                }
            }
            json!({ "basis": basis, "pairs": pairs, "commutative": true })
        }
    };
    Ok((v, &a.cfg))
}

fn module(a: &ModuleArgs) -> Result<DrinfeldModule<Gf>> {
    let q = a.cfg.q()?;
    let f = Gf::new(q, a.field_degree);
    let gamma = match &a.gamma {
        Some(g) => g.trim().parse::<u32>().map_err(|_| Error::pre("malformed --gamma"))?,
        None => {
            let p = a.cfg.place()?;
            if a.field_degree % p.degree() != 0 {
                return Err(Error::pre("the field must contain the residue field of --place"));
            }
            embed(p.residue_field(), &f).apply(p.gamma_t())
        }
    };
    let coeffs: Vec<u32> = parse_ints(&need(&a.coeffs, "coeffs")?, "coeffs")?;
    if gamma >= f.size() || coeffs.iter().any(|&c| c >= f.size()) {
        return Err(Error::pre("element codes exceed the field size"));
    }
    DrinfeldModule::new(&f, gamma, coeffs)
}

/// `"3*pi^-2 + pi + 1"`: terms `c`, `pi^k` or `c*pi^k` with element codes `c`.
fn laurent(k: &RatFunField, s: &str) -> Result<RatFun> {
    let bad = || Error::pre(format!("malformed Laurent sum {s:?}"));
    let mut acc = k.r_zero();
    for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (c, e) = match term.split_once("pi") {
            None => (term, "0"),
            Some((c, e)) => (c.trim_end_matches('*').trim(), e.trim().strip_prefix('^').unwrap_or(if e.trim().is_empty() { "1" } else { "?" })),
        };
        let c: u32 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
        let e: i64 = e.parse().map_err(|_| bad())?;
        if c >= k.base().size() {
            return Err(bad());
        }
        acc = k.r_add(&acc, &k.monomial(c, e));
    }
    Ok(acc)
}

fn charpoly_strings(cp: &[PolyA]) -> Vec<String> {
    cp.iter().map(|c| c.to_string()).collect()
}

pub fn drinfeld(cmd: &DrinfeldCmd) -> Result<(Value, &RunConfig)> {
    match cmd {
        DrinfeldCmd::Phi(a) => {
            let phi = module(a)?;
            let x = PolyA::parse(a.cfg.q()?, &need(&a.a, "a")?)?;
            Ok((json!({ "a": x.to_string(), "phi_a": phi.phi_of(&x).c, "field": to_value(&phi.field().descriptor()) }), &a.cfg))
        }
        DrinfeldCmd::Height(a) => {
            let phi = module(a)?;
            let p = a.cfg.place()?;
            let h = phi.height_at_v(&p)?;
            Ok((json!({ "height": h, "supersingular": h == phi.rank() }), &a.cfg))
        }
        DrinfeldCmd::Charpoly(a) => {
            let phi = module(a)?;
            let linear = frobenius_charpoly_linear(&phi)?;
            let mut v = json!({ "charpoly": charpoly_strings(&linear), "frobenius_degree": phi.field().degree() });
            if a.cfg.primes.is_some() {
                let ws: Vec<PolyA> = a.cfg.primes(None, None)?.into_iter().map(|p| p.poly().clone()).collect();
                let torsion = frobenius_charpoly(&phi, &ws, 4096)?;
                if torsion != linear {
                    return Err(Error::consistency("torsion and linear routes disagree"));
                }
                v["torsion_route"] = Value::from(true);
            }
            Ok((v, &a.cfg))
        }
        DrinfeldCmd::StableModel(a) => {
            let f = Gf::new(a.cfg.q()?, a.field_degree);
            let k = RatFunField::new(&f);
            let coeffs = need(&a.coeffs, "coeffs")?.split(',').map(|s| laurent(&k, s)).collect::<Result<Vec<_>>>()?;
            let gamma = laurent(&k, a.gamma.as_deref().unwrap_or("1"))?;
            let m = stable_model(&ValuedModule::new(&k, gamma, coeffs)?)?;
            Ok((
                json!({
                    "e": m.e,
                    "i0": m.i0,
                    "nu": [m.nu.0, m.nu.1],
                    "c": to_value(&m.c),
                    "valuations": m.model.valuations(),
                    "coeffs": to_value(&m.model.coeffs),
                }),
                &a.cfg,
            ))
        }
        DrinfeldCmd::WeilCheck(a) => {
            let q = a.cfg.q()?;
            let poly = need(&a.poly, "poly")?
                .split(';')
                .map(|s| PolyA::parse(q, s.trim()))
                .collect::<Result<Vec<_>>>()?;
            let rep = weil_number_check(&poly, need(&a.m, "m")?, a.cfg.rank()?, a.cfg.place()?.poly())?;
            Ok((json!({ "all_pass": rep.all_pass(), "report": to_value(&rep) }), &a.cfg))
        }
    }
}

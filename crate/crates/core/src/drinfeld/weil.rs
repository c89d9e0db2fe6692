//! Checks that a monic polynomial over `A` is the minimal polynomial of a Weil number.
//!
//! Integrality, the degree condition and the archimedean absolute value are decided exactly.
//! The two "single place" conditions are certified through Newton polygons: a totally
//! ramified single-slope polygon proves them, a multi-slope polygon refutes them, and the
//! remaining cases are reported as undecided.

use super::charpoly::frobenius_power_in_a;
use crate::error::{Error, Result};
use crate::poly_a::PolyA;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Exact,
    SufficientOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilReport {
    pub checks: Vec<Check>,
    /// Some power of the root lies in `A`.
    pub supersingular: bool,
}

impl WeilReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }
    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

/// Whether all roots share one valuation, given `val(a_i)` (`None` for zero) of
/// `x^n + a_1 x^{n-1} + ... + a_n`: `val(a_i) >= i val(a_n)/n`.
fn single_slope(vals: &[Option<i64>], n: usize) -> bool {
    let vn = vals[n].expect("nonzero constant term");
    (1..n).all(|i| vals[i].is_none_or(|v| v * n as i64 >= i as i64 * vn))
}

/// Checks `f` (monic, degree `n`) as a Weil number for the field `F_v^m` and rank `r`.
pub fn weil_number_check(f: &[PolyA], m: usize, r: usize, v: &PolyA) -> Result<WeilReport> {
    let n = f.len().checked_sub(1).ok_or_else(|| Error::pre("empty polynomial"))?;
    if n == 0 || f[n] != PolyA::one(v.q()) {
        return Err(Error::pre("polynomial must be monic of positive degree"));
    }
    // a_i = coefficient of x^{n-i}
    let a: Vec<PolyA> = (0..=n).map(|i| f[n - i].clone()).collect();
    let d = v.deg();
    let mut checks = Vec::new();
    checks.push(Check {
        name: "integrality".into(),
        kind: CheckKind::Exact,
        status: CheckStatus::Pass,
        detail: "coefficients lie in A".into(),
    });
    checks.push(Check {
        name: "degree_divides_rank".into(),
        kind: CheckKind::Exact,
        status: if r % n == 0 { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!("degree {n}, rank {r}"),
    });
    if a[n].is_zero() {
        let status = CheckStatus::Fail;
        for name in ["unique_finite_zero", "unique_place_at_infinity", "absolute_value"] {
            checks.push(Check { name: name.into(), kind: CheckKind::Exact, status, detail: "root 0".into() });
        }
        return Ok(WeilReport { checks, supersingular: false });
    }
    // absolute value at infinity: -deg is the infinite valuation
    let inf_vals: Vec<Option<i64>> = a.iter().map(|c| c.degree().map(|x| -(x as i64))).collect();
    let target = (n * m * d) as i64; // n * deg(root) * r ... scaled: deg a_n must be n m d / r
    let abs_ok = (n * m * d) % r == 0
        && a[n].deg() * r == n * m * d
        && single_slope(&inf_vals, n);
    checks.push(Check {
        name: "absolute_value".into(),
        kind: CheckKind::Exact,
        status: if abs_ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!("deg a_n = {}, expected {}/{}", a[n].deg(), target, r),
    });
    // unique finite zero above v
    let finite = {
        let k = a[n].valuation(v).unwrap_or(0);
        let rest = a[n].div_exact(&v.pow(k)).expect("valuation divides");
        if !rest.is_unit() || k == 0 {
            (CheckKind::Exact, CheckStatus::Fail, format!("norm {} is not a unit times a positive power of v", a[n]))
        } else {
            let vals: Vec<Option<i64>> = a.iter().map(|c| c.valuation(v).map(|x| x as i64)).collect();
            if !single_slope(&vals, n) {
                (CheckKind::Exact, CheckStatus::Fail, "several v-adic slopes".into())
            } else if (k as usize).gcd(&n) == 1 {
                (CheckKind::SufficientOnly, CheckStatus::Pass, format!("totally ramified, slope {k}/{n}"))
            } else {
                (CheckKind::SufficientOnly, CheckStatus::Undecided, format!("single slope {k}/{n}, not totally ramified"))
            }
        }
    };
    checks.push(Check { name: "unique_finite_zero".into(), kind: finite.0, status: finite.1, detail: finite.2 });
    let infinite = if !single_slope(&inf_vals, n) {
        (CheckKind::Exact, CheckStatus::Fail, "several slopes at infinity".to_string())
    } else if a[n].deg().gcd(&n) == 1 {
        (CheckKind::SufficientOnly, CheckStatus::Pass, format!("totally ramified, slope {}/{n}", a[n].deg()))
    } else {
        (CheckKind::SufficientOnly, CheckStatus::Undecided, format!("single slope {}/{n}, not totally ramified", a[n].deg()))
    };
    checks.push(Check { name: "unique_place_at_infinity".into(), kind: infinite.0, status: infinite.1, detail: infinite.2 });
    let supersingular = frobenius_power_in_a(f, m * d, v).holds();
    Ok(WeilReport { checks, supersingular })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> PolyA {
        PolyA::parse(2, s).unwrap()
    }

    #[test]
    fn carlitz_root() {
        let rep = weil_number_check(&[a("t"), a("1")], 1, 1, &a("t")).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert!(rep.supersingular);
    }

    #[test]
    fn square_root_of_t() {
        let rep = weil_number_check(&[a("t"), a("0"), a("1")], 1, 2, &a("t")).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert!(rep.supersingular);
    }

    #[test]
    fn wrong_prime() {
        let rep = weil_number_check(&[a("t+1"), a("1")], 1, 1, &a("t")).unwrap();
        assert_eq!(rep.status("unique_finite_zero"), Some(CheckStatus::Fail));
    }

    #[test]
    fn non_monic_rejected() {
        assert!(weil_number_check(&[a("t"), a("t")], 1, 1, &a("t")).is_err());
    }
}

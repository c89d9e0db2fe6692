//! Separable isogenies with a prescribed finite kernel.

use super::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{Gf, GfExt};
use crate::skew::{self, SkewPoly};

/// `u: phi -> psi` with `u phi_t = psi_t u`, realized over an extension field.
#[derive(Clone, Debug)]
pub struct Isogeny {
    pub ext: GfExt,
    pub u: SkewPoly<Vec<u32>>,
    pub target: DrinfeldModule<GfExt>,
    pub kernel: Vec<Vec<u32>>,
}

impl Isogeny {
    /// `partial u`, the constant coefficient.
    pub fn partial(&self) -> Vec<u32> {
        self.u.partial(&self.ext)
    }

    /// The target as a module over the base table field, if its coefficients lie there.
    pub fn target_in_base(&self) -> Option<DrinfeldModule<Gf>> {
        let e = &self.ext;
        let gamma = e.project(self.target.gamma())?;
        let coeffs = self.target.coeffs().iter().map(|c| e.project(c)).collect::<Option<Vec<u32>>>()?;
        DrinfeldModule::new(e.base(), gamma, coeffs).ok()
    }

    /// `u` with base-field coefficients, if they lie there.
    pub fn u_in_base(&self) -> Option<SkewPoly<u32>> {
        let c = self.u.c.iter().map(|x| self.ext.project(x)).collect::<Option<Vec<u32>>>()?;
        Some(SkewPoly { c })
    }
}

/// Quotient of `phi` by the `F_p`-span of `gens` (which must be `A`-stable).
pub fn quotient_isogeny(phi: &DrinfeldModule<Gf>, ext: &GfExt, gens: &[Vec<u32>]) -> Result<Isogeny> {
    let u = skew::from_kernel(ext, gens);
    let phi_t = phi.phi_t().map(|c| ext.lift(c));
    let lhs = u.mul(ext, &phi_t);
    let (psi_t, rem) = lhs.right_divmod(ext, &u)?;
    if !rem.is_zero() {
        return Err(Error::pre("kernel is not stable under phi_t"));
    }
    if psi_t.mul(ext, &u) != lhs {
        return Err(Error::consistency("isogeny relation fails after division"));
    }
    let r = phi.rank();
    let gamma = psi_t.coeff(ext, 0);
    let coeffs: Vec<Vec<u32>> = (1..=r).map(|i| psi_t.coeff(ext, i)).collect();
    if psi_t.degree() != Some(r) {
        return Err(Error::consistency("quotient has the wrong rank"));
    }
    let target = DrinfeldModule::new(ext, gamma, coeffs)?;
    Ok(Isogeny { ext: ext.clone(), u, target, kernel: gens.to_vec() })
}

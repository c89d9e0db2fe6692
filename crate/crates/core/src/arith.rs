//! Closed-form counting: partial zeta values of `F_q(t)`, Gaussian binomials, group orders.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `|zeta^{inf v}(-i)| = (q_v^i - 1)/(q^{1+i} - 1)` for `F = F_q(t)`, with `q_v = q^deg_v`.
pub fn zeta_partial(q: u64, deg_v: u32, i: u32) -> BigRational {
    assert!(i >= 1, "zeta_partial needs i >= 1");
    let qv = BigInt::from(q).pow(deg_v);
    let num = qv.pow(i) - 1;
    let den = BigInt::from(q).pow(1 + i) - 1;
    BigRational::new(num, den)
}

/// Number of `j`-dimensional subspaces of an `r`-dimensional space over a `Q`-element field.
pub fn gaussian_binomial(r: u32, j: u32, qq: u64) -> BigUint {
    assert!(j <= r && qq >= 2);
    let qq = BigUint::from(qq);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..j {
        num *= qq.pow(r - i) - 1u32;
        den *= qq.pow(i + 1) - 1u32;
    }
    num / den
}

/// `#GL_r(F_Q)`.
pub fn gl_order(r: u32, qq: u64) -> BigUint {
    let qq = BigUint::from(qq);
    (0..r).fold(BigUint::one(), |acc, i| acc * (qq.pow(r) - qq.pow(i)))
}

/// `Mass = 1/(q-1) * prod_{i=1}^{r-1} |zeta^{inf v}(-i)|`.
pub fn mass_closed_form(q: u64, r: u32, deg_v: u32) -> BigRational {
    let mut m = BigRational::new(BigInt::one(), BigInt::from(q - 1));
    for i in 1..r {
        m *= zeta_partial(q, deg_v, i);
    }
    m
}

/// Formats a rational as `"num/den"`.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rational_from_str(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n.trim().parse().ok()?, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mass_examples() {
        assert_eq!(mass_closed_form(2, 2, 1), ratio(1, 3));
        assert_eq!(mass_closed_form(2, 2, 2), ratio(1, 1));
        assert_eq!(mass_closed_form(2, 3, 1), ratio(1, 7));
        assert_eq!(mass_closed_form(3, 2, 1), ratio(1, 8));
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2), 3u32.into());
        assert_eq!(gaussian_binomial(3, 1, 2), 7u32.into());
        assert_eq!(gaussian_binomial(4, 2, 2), 35u32.into());
        assert_eq!(gl_order(2, 2), 6u32.into());
    }
}

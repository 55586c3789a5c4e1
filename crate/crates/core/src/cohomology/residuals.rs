use num_traits::{One, Zero};

use super::form::BilinearForm;
use crate::algebra::{bracket, mul, Element};
use crate::error::{Result, WeylError};
use crate::scalar::Scalar;

/// Defects of super-skew-symmetry and of the super-Jacobi cocycle identity:
///
/// * `psi(u,v) + (-1)^{|u||v|} psi(v,u)`
/// * `psi(u,[v,w]) - psi([u,v],w) - (-1)^{|u||v|} psi(v,[u,w])`
///
/// Arguments must be parity-homogeneous.
pub fn cocycle_residuals(
    psi: &dyn BilinearForm,
    u: &Element,
    v: &Element,
    w: &Element,
) -> Result<(Scalar, Scalar)> {
    let sig = psi.signature();
    let gu = u.homogeneous_parity(sig)?;
    let gv = v.homogeneous_parity(sig)?;
    w.homogeneous_parity(sig)?;
    let sign = if gu * gv == 1 { -Scalar::one() } else { Scalar::one() };
    let skew = psi.eval(u, v)? + &sign * psi.eval(v, u)?;
    let jacobi = psi.eval(u, &bracket(sig, v, w)?)?
        - psi.eval(&bracket(sig, u, v)?, w)?
        - &sign * psi.eval(v, &bracket(sig, u, w)?)?;
    Ok((skew, jacobi))
}

/// `phi(a, bc) + phi(b, ca) + phi(c, ab)` with the associative product.
pub fn cyclic_residual(phi: &dyn BilinearForm, a: &Element, b: &Element, c: &Element) -> Result<Scalar> {
    let sig = phi.signature();
    if sig.num_odd() != 0 {
        for e in [a, b, c] {
            if e.iter().any(|(m, _)| {
                let s = sig.odd_start();
                m.k[s..].iter().chain(&m.mu[s..]).any(|&x| x != 0)
            }) {
                return Err(WeylError::domain("cyclic identity takes even arguments"));
            }
        }
    }
    let mut total = Scalar::zero();
    total += phi.eval(a, &mul(sig, b, c)?)?;
    total += phi.eval(b, &mul(sig, c, a)?)?;
    total += phi.eval(c, &mul(sig, a, b)?)?;
    Ok(total)
}

//! The explicit cocycles on the even rank-one algebras: the Virasoro-type
//! `phi0` (graded coordinate) and the Heisenberg-type `phi_gamma` (Laurent coordinate).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::{to_falling_basis, Monomial};
use crate::error::{Result, WeylError};
use crate::scalar::{self, Scalar};
use crate::signature::Signature;

type Conversion = Arc<Vec<(usize, Scalar)>>;

/// `d^m` in the falling-factorial basis, memoized per power.
fn falling(m: usize) -> Conversion {
    static CACHE: OnceLock<Mutex<HashMap<usize, Conversion>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("falling cache poisoned").get(&m) {
        return c.clone();
    }
    let computed = Arc::new(to_falling_basis(m));
    cache
        .lock()
        .expect("falling cache poisoned")
        .entry(m)
        .or_insert(computed)
        .clone()
}

fn require_even(sig: &Signature, m: &Monomial) -> Result<()> {
    let start = sig.odd_start();
    if m.k[start..].iter().chain(&m.mu[start..]).any(|&x| x != 0) {
        return Err(WeylError::domain(
            "explicit cocycles take arguments without odd coordinates",
        ));
    }
    Ok(())
}

fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Value on falling-factorial basis elements `x^a [d]_m`, `x^b [d]_n`.
pub fn phi0_falling(a: &Scalar, m: usize, b: &Scalar, n: usize) -> Scalar {
    if !(a + b).is_zero() {
        return Scalar::zero();
    }
    sign(m as i64)
        * scalar::factorial(m as u64)
        * scalar::factorial(n as u64)
        * scalar::binom(&(a + scalar::int(m as i64)), (m + n + 1) as i64)
}

pub(crate) fn phi0_monomials(sig: &Signature, u: &Monomial, v: &Monomial) -> Result<Scalar> {
    u.validate(sig)?;
    v.validate(sig)?;
    require_even(sig, u)?;
    require_even(sig, v)?;
    let (a, b) = (&u.alpha[0], &v.alpha[0]);
    if !(a + b).is_zero() {
        return Ok(Scalar::zero());
    }
    let left = falling(u.mu[0] as usize);
    let right = falling(v.mu[0] as usize);
    let mut total = Scalar::zero();
    for (m, cm) in left.iter() {
        for (n, cn) in right.iter() {
            total += cm * cn * phi0_falling(a, *m, b, *n);
        }
    }
    Ok(total)
}

/// `base^exp / exp!` with `1/exp! = 0` for negative `exp`, checked before the power.
fn power_over_factorial(base: &Scalar, exp: i64) -> Scalar {
    if exp < 0 {
        return Scalar::zero();
    }
    scalar::pow(base, exp as u64) * scalar::inv_factorial(exp)
}

/// Value on `x^{a,i} d^mu`, `x^{b,j} d^nu` (standard powers of `d`).
pub fn phi_gamma_value(
    gamma: &Scalar,
    (a, i, mu): (&Scalar, i64, i64),
    (b, j, nu): (&Scalar, i64, i64),
) -> Scalar {
    if a + b != *gamma {
        return Scalar::zero();
    }
    let top = mu + nu + 1;
    let mut sum = Scalar::zero();
    for s in 0..=top {
        let g = power_over_factorial(gamma, s - i - j - 1);
        if g.is_zero() {
            continue;
        }
        sum += scalar::binom_int(i, s) * power_over_factorial(a, top - s) * g;
    }
    sign(mu) * scalar::factorial(mu as u64) * scalar::factorial(nu as u64) * sum
}

pub(crate) fn phi_gamma_monomials(
    sig: &Signature,
    gamma: &[Scalar],
    u: &Monomial,
    v: &Monomial,
) -> Result<Scalar> {
    u.validate(sig)?;
    v.validate(sig)?;
    require_even(sig, u)?;
    require_even(sig, v)?;
    Ok(phi_gamma_value(
        &gamma[0],
        (&u.alpha[0], u.k[0], u.mu[0]),
        (&v.alpha[0], v.k[0], v.mu[0]),
    ))
}

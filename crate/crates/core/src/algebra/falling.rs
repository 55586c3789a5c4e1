//! Change of basis between powers `d_1^m` and falling factorials
//! `[d_1]_m = d_1 (d_1 - 1) ... (d_1 - m + 1)`.

use num_bigint::BigInt;

use super::element::Element;
use super::monomial::Monomial;
use crate::error::{Result, WeylError};
use crate::scalar::Scalar;
use crate::signature::Signature;

/// Signed Stirling numbers of the first kind `s(n, 0..=n)`.
pub fn stirling_first_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for m in 0..n {
        // s(m+1, k) = s(m, k-1) - m s(m, k)
        let mut next = vec![BigInt::from(0); m + 2];
        for (k, s) in row.iter().enumerate() {
            next[k + 1] += s;
            next[k] -= s * BigInt::from(m);
        }
        row = next;
    }
    row
}

/// Stirling numbers of the second kind `S(n, 0..=n)`.
pub fn stirling_second_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        // S(m+1, k) = k S(m, k) + S(m, k-1)
        let mut next = vec![BigInt::from(0); row.len() + 1];
        for (k, s) in row.iter().enumerate() {
            next[k] += s * BigInt::from(k);
            next[k + 1] += s;
        }
        row = next;
    }
    row
}

fn require_single_even(sig: &Signature) -> Result<()> {
    if sig.odd_start() != 1 {
        return Err(WeylError::domain(
            "falling factorials in d_1 need l'_4 = 1",
        ));
    }
    Ok(())
}

/// `[d_1]_n` expanded in powers of `d_1`.
pub fn falling_factorial_element(sig: &Signature, n: i64) -> Result<Element> {
    require_single_even(sig)?;
    if n < 0 {
        return Err(WeylError::domain("falling factorial order must be non-negative"));
    }
    let len = sig.len();
    Ok(Element::from_terms(
        stirling_first_row(n as usize)
            .into_iter()
            .enumerate()
            .map(|(k, s)| {
                let mut mu = vec![0; len];
                mu[0] = k as i64;
                (Monomial::derivation(mu), Scalar::from_integer(s))
            }),
    ))
}

/// Coefficients `c_k` with `d_1^m = sum_k c_k [d_1]_k`, zero coefficients omitted.
pub fn to_falling_basis(m: usize) -> Vec<(usize, Scalar)> {
    stirling_second_row(m)
        .into_iter()
        .enumerate()
        .filter(|(_, s)| *s != BigInt::from(0))
        .map(|(k, s)| (k, Scalar::from_integer(s)))
        .collect()
}

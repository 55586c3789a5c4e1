use num_traits::Zero;

use crate::error::{Result, WeylError};
use crate::scalar::Scalar;
use crate::signature::Signature;

/// A basis element `x^{alpha,k} d^mu` of the superalgebra.
///
/// The triple of vectors is already the canonical form: the group part, the
/// exponent index (even `t` exponents and odd `s` flags) and the derivation index.
/// All Grassmann signs live in the product, never in the representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub alpha: Vec<Scalar>,
    pub k: Vec<i64>,
    pub mu: Vec<i64>,
}

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial {
            alpha: vec![Scalar::zero(); len],
            k: vec![0; len],
            mu: vec![0; len],
        }
    }

    pub fn new(alpha: Vec<Scalar>, k: Vec<i64>, mu: Vec<i64>) -> Self {
        Monomial { alpha, k, mu }
    }

    /// An element of the commutative-super part (no derivations).
    pub fn function(alpha: Vec<Scalar>, k: Vec<i64>) -> Self {
        let len = k.len();
        Monomial {
            alpha,
            k,
            mu: vec![0; len],
        }
    }

    /// `d^mu` alone.
    pub fn derivation(mu: Vec<i64>) -> Self {
        let len = mu.len();
        Monomial {
            alpha: vec![Scalar::zero(); len],
            k: vec![0; len],
            mu,
        }
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn has_derivation(&self) -> bool {
        self.mu.iter().any(|&m| m != 0)
    }

    /// Same group part and exponents, derivation index cleared.
    pub fn function_part(&self) -> Monomial {
        Monomial::function(self.alpha.clone(), self.k.clone())
    }

    pub fn alpha_is_zero(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero)
    }

    pub fn validate(&self, sig: &Signature) -> Result<()> {
        let len = sig.len();
        if self.alpha.len() != len || self.k.len() != len || self.mu.len() != len {
            return Err(WeylError::index(format!(
                "monomial coordinates must have length {len}"
            )));
        }
        sig.check_group_vector(&self.alpha)?;
        for p in 0..len {
            let zone = sig.zone(p);
            if !zone.exponent_ok(self.k[p]) {
                return Err(WeylError::index(format!(
                    "exponent {} not allowed at coordinate {} ({zone:?})",
                    self.k[p],
                    p + 1
                )));
            }
            if !zone.derivation_ok(self.mu[p]) {
                return Err(WeylError::index(format!(
                    "derivation power {} not allowed at coordinate {} ({zone:?})",
                    self.mu[p],
                    p + 1
                )));
            }
        }
        Ok(())
    }
}

/// Sum of the odd exponents plus the odd derivation flags, mod 2.
pub fn monomial_parity(sig: &Signature, m: &Monomial) -> u8 {
    let start = sig.odd_start();
    let total: i64 = m.k[start..].iter().sum::<i64>() + m.mu[start..].iter().sum::<i64>();
    total.rem_euclid(2) as u8
}

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::monomial::{monomial_parity, Monomial};
use crate::error::{Result, WeylError};
use crate::scalar::Scalar;
use crate::signature::Signature;

/// A finite rational combination of monomials in canonical form.
///
/// Zero coefficients are never stored, so structural equality is algebraic
/// equality. Iteration order is lexicographic by `(alpha, k, mu)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one(len: usize) -> Self {
        Element::from(Monomial::one(len))
    }

    pub fn scalar(len: usize, c: Scalar) -> Self {
        Element::term(c, Monomial::one(len))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The single monomial of a one-term element with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn validate(&self, sig: &Signature) -> Result<()> {
        for m in self.terms.keys() {
            m.validate(sig)?;
        }
        Ok(())
    }

    /// Parity shared by every term, or `None` for inhomogeneous elements.
    /// The zero element counts as even.
    pub fn parity(&self, sig: &Signature) -> Option<u8> {
        let mut parities = self.terms.keys().map(|m| monomial_parity(sig, m));
        match parities.next() {
            None => Some(0),
            Some(first) => parities.all(|p| p == first).then_some(first),
        }
    }

    pub fn homogeneous_parity(&self, sig: &Signature) -> Result<u8> {
        self.parity(sig)
            .ok_or_else(|| WeylError::domain("argument is not parity-homogeneous"))
    }

    /// Splits into even and odd parts.
    pub fn split_parity(&self, sig: &Signature) -> (Element, Element) {
        let mut even = Element::zero();
        let mut odd = Element::zero();
        for (m, c) in &self.terms {
            let target = if monomial_parity(sig, m) == 0 {
                &mut even
            } else {
                &mut odd
            };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Self {
        Element::term(Scalar::one(), m)
    }
}

impl<'a> IntoIterator for &'a Element {
    type Item = (&'a Monomial, &'a Scalar);
    type IntoIter = std::collections::btree_map::Iter<'a, Monomial, Scalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul<&Scalar> for &Element {
    type Output = Element;

    fn mul(self, rhs: &Scalar) -> Element {
        self.scale(rhs)
    }
}

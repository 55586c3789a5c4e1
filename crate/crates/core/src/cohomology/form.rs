use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::explicit;
use super::lift::{self, PTable};
use crate::algebra::{bracket, Element, Monomial};
use crate::error::{Result, WeylError};
use crate::scalar::Scalar;
use crate::signature::{gamma_membership, Signature};

/// A scalar-valued bilinear form on the superalgebra of some signature.
///
/// Implementors supply the value on a pair of basis monomials; evaluation on
/// elements is the bilinear extension.
pub trait BilinearForm {
    fn signature(&self) -> &Signature;

    fn eval_monomials(&self, u: &Monomial, v: &Monomial) -> Result<Scalar>;

    fn eval(&self, u: &Element, v: &Element) -> Result<Scalar> {
        let sig = self.signature();
        u.validate(sig)?;
        v.validate(sig)?;
        let mut total = Scalar::zero();
        for (mu, cu) in u {
            for (mv, cv) in v {
                let value = self.eval_monomials(mu, mv)?;
                if !value.is_zero() {
                    total += cu * cv * value;
                }
            }
        }
        Ok(total)
    }
}

/// A finitely supported linear function on the superalgebra.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctionTable {
    entries: BTreeMap<Monomial, Scalar>,
}

impl FunctionTable {
    pub fn new() -> Self {
        FunctionTable::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut table = FunctionTable::new();
        for (m, c) in entries {
            table.insert(m, c);
        }
        table
    }

    /// Sets `f(m) = value`; zero values are not stored.
    pub fn insert(&mut self, m: Monomial, value: Scalar) {
        if value.is_zero() {
            self.entries.remove(&m);
        } else {
            self.entries.insert(m, value);
        }
    }

    pub fn get(&self, m: &Monomial) -> Scalar {
        self.entries.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn validate(&self, sig: &Signature) -> Result<()> {
        self.entries.keys().try_for_each(|m| m.validate(sig))
    }

    /// `f(e)` by linearity.
    pub fn apply(&self, e: &Element) -> Scalar {
        e.iter()
            .filter_map(|(m, c)| self.entries.get(m).map(|v| c * v))
            .fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// `psi_f(u, v) = f([u, v])`.
pub fn coboundary_eval(
    sig: &Signature,
    table: &FunctionTable,
    u: &Element,
    v: &Element,
) -> Result<Scalar> {
    Ok(table.apply(&bracket(sig, u, v)?))
}

#[derive(Clone)]
pub enum CocycleKind {
    Phi0,
    PhiGamma(Vec<Scalar>),
    Lifted(Box<CocycleHandle>, Arc<PTable>),
    Coboundary(FunctionTable),
    UserTable(BTreeMap<(Monomial, Monomial), Scalar>),
}

impl fmt::Debug for CocycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleKind::Phi0 => write!(f, "Phi0"),
            CocycleKind::PhiGamma(g) => f.debug_tuple("PhiGamma").field(g).finish(),
            CocycleKind::Lifted(base, _) => f.debug_tuple("Lifted").field(base).finish(),
            CocycleKind::Coboundary(t) => f.debug_tuple("Coboundary").field(&t.len()).finish(),
            CocycleKind::UserTable(t) => f.debug_tuple("UserTable").field(&t.len()).finish(),
        }
    }
}

/// An immutable bilinear-form evaluator bound to a signature.
#[derive(Debug, Clone)]
pub struct CocycleHandle {
    sig: Signature,
    kind: CocycleKind,
}

fn phi0_shape(sig: &Signature) -> Result<()> {
    let ell = sig.ell();
    if ell[..4] != [0, 0, 0, 1] {
        return Err(WeylError::domain(format!(
            "phi0 needs l1 = l2 = l3 = 0 and l4 = 1, got {ell:?}"
        )));
    }
    Ok(())
}

fn phi_gamma_shape(sig: &Signature) -> Result<()> {
    let ell = sig.ell();
    if ell[..4] != [0, 0, 1, 0] {
        return Err(WeylError::domain(format!(
            "phi_gamma needs l1 = l2 = l4 = 0 and l3 = 1, got {ell:?}"
        )));
    }
    Ok(())
}

impl CocycleHandle {
    pub fn phi0(sig: &Signature) -> Result<Self> {
        phi0_shape(sig)?;
        Ok(CocycleHandle {
            sig: sig.clone(),
            kind: CocycleKind::Phi0,
        })
    }

    pub fn phi_gamma(sig: &Signature, gamma: Vec<Scalar>) -> Result<Self> {
        phi_gamma_shape(sig)?;
        if !gamma_membership(sig, &gamma)? {
            return Err(WeylError::domain("gamma is not in Gamma"));
        }
        Ok(CocycleHandle {
            sig: sig.clone(),
            kind: CocycleKind::PhiGamma(gamma),
        })
    }

    pub fn coboundary(sig: &Signature, table: FunctionTable) -> Result<Self> {
        table.validate(sig)?;
        Ok(CocycleHandle {
            sig: sig.clone(),
            kind: CocycleKind::Coboundary(table),
        })
    }

    pub fn user_table(
        sig: &Signature,
        table: BTreeMap<(Monomial, Monomial), Scalar>,
    ) -> Result<Self> {
        for (u, v) in table.keys() {
            u.validate(sig)?;
            v.validate(sig)?;
        }
        Ok(CocycleHandle {
            sig: sig.clone(),
            kind: CocycleKind::UserTable(table),
        })
    }

    /// The identically zero form.
    pub fn zero(sig: &Signature) -> Self {
        CocycleHandle {
            sig: sig.clone(),
            kind: CocycleKind::UserTable(BTreeMap::new()),
        }
    }

    pub(crate) fn lifted(sig: &Signature, base: CocycleHandle, p: Arc<PTable>) -> Self {
        CocycleHandle {
            sig: sig.clone(),
            kind: CocycleKind::Lifted(Box::new(base), p),
        }
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    /// Whether this is `phi0` or `phi_gamma` (unlifted).
    pub fn is_explicit(&self) -> bool {
        matches!(self.kind, CocycleKind::Phi0 | CocycleKind::PhiGamma(_))
    }

    /// The same kind of form rebuilt over another signature with the same even part.
    pub(crate) fn rebind(&self, sig: &Signature) -> Result<Self> {
        match &self.kind {
            CocycleKind::Phi0 => CocycleHandle::phi0(sig),
            CocycleKind::PhiGamma(g) => {
                if g.len() > sig.len() || g[sig.odd_start().min(g.len())..].iter().any(|c| !c.is_zero()) {
                    return Err(WeylError::domain("gamma does not fit the signature"));
                }
                let mut gamma = g.clone();
                gamma.resize(sig.len(), Scalar::zero());
                CocycleHandle::phi_gamma(sig, gamma)
            }
            _ => Err(WeylError::domain("only phi0 and phi_gamma can be lifted")),
        }
    }
}

impl BilinearForm for CocycleHandle {
    fn signature(&self) -> &Signature {
        &self.sig
    }

    fn eval_monomials(&self, u: &Monomial, v: &Monomial) -> Result<Scalar> {
        match &self.kind {
            CocycleKind::Phi0 => explicit::phi0_monomials(&self.sig, u, v),
            CocycleKind::PhiGamma(g) => explicit::phi_gamma_monomials(&self.sig, g, u, v),
            CocycleKind::Lifted(base, p) => lift::lifted_monomials(&self.sig, base, p, u, v),
            CocycleKind::Coboundary(table) => Ok(table.apply(&crate::algebra::bracket_monomials(
                &self.sig, u, v,
            ))),
            CocycleKind::UserTable(table) => Ok(table
                .get(&(u.clone(), v.clone()))
                .cloned()
                .unwrap_or_else(Scalar::zero)),
        }
    }
}

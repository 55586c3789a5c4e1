//! Finite linear probes: is `psi` a coboundary on a truncation?
//!
//! Every generated pair `(u, v)` contributes the equation `f([u, v]) = psi(u, v)`
//! in the unknowns `f(m)`. An inconsistent system proves `psi` is not a
//! coboundary on the whole algebra, since any global `f` would solve it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::form::{BilinearForm, FunctionTable};
use super::linsolve::{solve_exact_linear, LinearSolution, SparseRow};
use crate::algebra::{bracket_monomials, Element, Monomial};
use crate::error::{Result, WeylError};
use crate::scalar::{self, Scalar};
use crate::signature::{Signature, Zone};

pub const DEFAULT_UNKNOWN_CAP: usize = 5000;

/// Which monomials a probe generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    /// Inclusive range for the coefficient of each generator in `alpha`.
    pub alpha_range: (i64, i64),
    /// Inclusive range for even exponents, clipped to what each zone allows.
    pub k_range: (i64, i64),
    /// Largest even derivation power.
    pub mu_max: i64,
    /// Whether Grassmann coordinates vary over `{0, 1}` or stay at zero.
    pub include_odd: bool,
    pub cap: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            alpha_range: (-2, 2),
            k_range: (-2, 2),
            mu_max: 1,
            include_odd: true,
            cap: DEFAULT_UNKNOWN_CAP,
        }
    }
}

fn cartesian(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.iter()
            .flat_map(|prefix| {
                r.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

impl Truncation {
    /// All monomials of the truncation, sorted and deduplicated.
    pub fn monomials(&self, sig: &Signature) -> Result<Vec<Monomial>> {
        let len = sig.len();
        let (alo, ahi) = self.alpha_range;
        let coeff_ranges = vec![(alo..=ahi).collect::<Vec<_>>(); sig.generators().len()];
        let alphas: BTreeSet<Vec<Scalar>> = cartesian(&coeff_ranges)
            .into_iter()
            .map(|cs| {
                let mut alpha = vec![Scalar::zero(); len];
                for (g, c) in sig.generators().iter().zip(cs) {
                    for (a, x) in alpha.iter_mut().zip(g) {
                        *a += x * scalar::int(c);
                    }
                }
                alpha
            })
            .collect();
        let (klo, khi) = self.k_range;
        let odd: Vec<i64> = if self.include_odd { vec![0, 1] } else { vec![0] };
        let mut k_ranges = Vec::new();
        let mut mu_ranges = Vec::new();
        for p in 0..len {
            let zone = sig.zone(p);
            k_ranges.push(match zone {
                Zone::Polynomial | Zone::PolynomialGraded => (klo.max(0)..=khi).collect(),
                Zone::Laurent => (klo..=khi).collect(),
                Zone::Graded => vec![0],
                Zone::Odd => odd.clone(),
            });
            mu_ranges.push(if zone.is_odd() {
                odd.clone()
            } else {
                (0..=self.mu_max).collect()
            });
        }
        let ks = cartesian(&k_ranges);
        let mus = cartesian(&mu_ranges);
        let count = alphas.len() * ks.len() * mus.len();
        if count > self.cap {
            return Err(WeylError::TooLarge {
                unknowns: count,
                cap: self.cap,
            });
        }
        let mut out = Vec::with_capacity(count);
        for alpha in &alphas {
            for k in &ks {
                for mu in &mus {
                    out.push(Monomial::new(alpha.clone(), k.clone(), mu.clone()));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// The equation `f([u, v]) = psi(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub u: Monomial,
    pub v: Monomial,
    pub bracket: Element,
    pub rhs: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// One solution, free unknowns at zero.
    Consistent(FunctionTable),
    /// Row indices of an irreducible infeasible subsystem.
    Inconsistent(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct LinearProbe {
    pub unknowns: Vec<Monomial>,
    pub rows: Vec<ProbeRow>,
    pub verdict: ProbeVerdict,
}

impl LinearProbe {
    pub fn is_consistent(&self) -> bool {
        matches!(self.verdict, ProbeVerdict::Consistent(_))
    }

    pub fn witness(&self) -> Vec<&ProbeRow> {
        match &self.verdict {
            ProbeVerdict::Inconsistent(w) => w.iter().map(|&i| &self.rows[i]).collect(),
            ProbeVerdict::Consistent(_) => Vec::new(),
        }
    }

    pub fn solution(&self) -> Option<&FunctionTable> {
        match &self.verdict {
            ProbeVerdict::Consistent(t) => Some(t),
            ProbeVerdict::Inconsistent(_) => None,
        }
    }

    /// Index of the row generated by `(u, v)`, if any.
    pub fn row_index(&self, u: &Monomial, v: &Monomial) -> Option<usize> {
        self.rows.iter().position(|r| &r.u == u && &r.v == v)
    }

    /// Whether the given rows alone already have no solution.
    pub fn subsystem_infeasible(&self, rows: &[usize]) -> bool {
        let picked: Vec<ProbeRow> = rows.iter().map(|&i| self.rows[i].clone()).collect();
        let (_, sparse) = sparse_system(&picked);
        !solve_exact_linear(self.unknowns.len(), &sparse).is_consistent()
    }
}

fn sparse_system(rows: &[ProbeRow]) -> (Vec<Monomial>, Vec<SparseRow>) {
    let unknowns: Vec<Monomial> = rows
        .iter()
        .flat_map(|r| r.bracket.monomials().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&Monomial, usize> =
        unknowns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let sparse = rows
        .iter()
        .map(|r| {
            SparseRow::new(
                r.bracket.iter().map(|(m, c)| (index[m], c.clone())).collect(),
                r.rhs.clone(),
            )
        })
        .collect();
    (unknowns, sparse)
}

/// Builds and solves the coboundary system for `psi` on `truncation`.
pub fn triviality_probe(psi: &dyn BilinearForm, truncation: &Truncation) -> Result<LinearProbe> {
    let sig = psi.signature();
    let monomials = truncation.monomials(sig)?;
    let mut rows = Vec::new();
    for u in &monomials {
        for v in &monomials {
            let bracket = bracket_monomials(sig, u, v);
            let rhs = psi.eval_monomials(u, v)?;
            if bracket.is_zero() && rhs.is_zero() {
                continue;
            }
            rows.push(ProbeRow {
                u: u.clone(),
                v: v.clone(),
                bracket,
                rhs,
            });
        }
    }
    let (unknowns, sparse) = sparse_system(&rows);
    if unknowns.len() > truncation.cap {
        return Err(WeylError::TooLarge {
            unknowns: unknowns.len(),
            cap: truncation.cap,
        });
    }
    let verdict = match solve_exact_linear(unknowns.len(), &sparse) {
        LinearSolution::Solution { values, .. } => ProbeVerdict::Consistent(
            FunctionTable::from_entries(unknowns.iter().cloned().zip(values)),
        ),
        LinearSolution::Inconsistent { witness } => ProbeVerdict::Inconsistent(witness),
    };
    Ok(LinearProbe {
        unknowns,
        rows,
        verdict,
    })
}

//! The odd factor `W1` spanned by `s^j d^mu` on the Grassmann coordinates, the
//! functional `P` on it, and the lift of even cocycles to the superalgebra.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::form::{BilinearForm, CocycleHandle};
use super::linsolve::{self, LinearSolution, SparseRow};
use crate::algebra::{bracket_monomials, mul_monomials, Element, Monomial};
use crate::error::{Result, WeylError};
use crate::scalar::Scalar;
use crate::signature::Signature;

/// Splits `m` into its even factor (group part and even coordinates) and its
/// odd factor (Grassmann coordinates only); `m = m0 * m1` with no sign.
pub fn split_monomial(sig: &Signature, m: &Monomial) -> (Monomial, Monomial) {
    let start = sig.odd_start();
    let len = m.len();
    let mut m0 = m.clone();
    let mut m1 = Monomial::one(len);
    for p in start..len {
        m1.k[p] = m0.k[p];
        m1.mu[p] = m0.mu[p];
        m0.k[p] = 0;
        m0.mu[p] = 0;
    }
    (m0, m1)
}

/// Values of `P` on the `4^n` basis monomials of `W1` with `n` odd coordinates.
#[derive(Debug)]
pub struct PTable {
    num_odd: usize,
    values: Vec<Scalar>,
}

fn basis_index(start: usize, m: &Monomial) -> usize {
    m.k[start..]
        .iter()
        .zip(&m.mu[start..])
        .enumerate()
        .map(|(p, (k, mu))| ((k + 2 * mu) as usize) << (2 * p))
        .sum()
}

fn basis_monomial(sig: &Signature, index: usize) -> Monomial {
    let start = sig.odd_start();
    let mut m = Monomial::one(sig.len());
    for p in 0..sig.num_odd() {
        let digit = (index >> (2 * p)) & 3;
        m.k[start + p] = (digit & 1) as i64;
        m.mu[start + p] = (digit >> 1) as i64;
    }
    m
}

impl PTable {
    fn compute(num_odd: usize) -> Result<PTable> {
        let sig = Signature::standard([0, 0, 0, 1, num_odd as i64])?;
        let start = sig.odd_start();
        let n = 1usize << (2 * num_odd);
        let basis: Vec<Monomial> = (0..n).map(|i| basis_monomial(&sig, i)).collect();
        let mut rows = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for u in &basis {
            for v in &basis {
                let b = bracket_monomials(&sig, u, v);
                if b.is_zero() {
                    continue;
                }
                let coeffs: Vec<(usize, Scalar)> = b
                    .iter()
                    .map(|(m, c)| (basis_index(start, m), c.clone()))
                    .collect();
                if seen.insert(coeffs.clone()) {
                    rows.push(SparseRow::new(coeffs, Scalar::zero()));
                }
            }
        }
        let span_rank = linsolve::rank(&rows);
        if span_rank + 1 != n {
            return Err(WeylError::internal(format!(
                "[W1, W1] has dimension {span_rank}, expected {}",
                n - 1
            )));
        }
        let top = n - 1; // s_1 .. s_n d_1 .. d_n: every digit is 3
        rows.push(SparseRow::new(vec![(top, Scalar::one())], Scalar::one()));
        match linsolve::solve_exact_linear(n, &rows) {
            LinearSolution::Solution { values, rank } if rank == n => {
                Ok(PTable { num_odd, values })
            }
            _ => Err(WeylError::internal("u1 lies in [W1, W1]")),
        }
    }

    /// The cached table for `n` odd coordinates.
    pub fn get(num_odd: usize) -> Result<Arc<PTable>> {
        if num_odd == 0 {
            return Err(WeylError::domain("P needs l5 >= 1"));
        }
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        // hold the lock while computing so each table is built once
        let mut guard = cache.lock().expect("P cache poisoned");
        if let Some(t) = guard.get(&num_odd) {
            return Ok(t.clone());
        }
        let table = Arc::new(PTable::compute(num_odd)?);
        guard.insert(num_odd, table.clone());
        Ok(table)
    }

    pub fn num_odd(&self) -> usize {
        self.num_odd
    }

    /// `P(m)` for a monomial of `W1` laid out in a signature with odd part starting at `start`.
    fn value(&self, start: usize, m: &Monomial) -> Scalar {
        self.values[basis_index(start, m)].clone()
    }
}

fn in_w1(sig: &Signature, m: &Monomial) -> bool {
    let start = sig.odd_start();
    m.alpha_is_zero() && m.k[..start].iter().chain(&m.mu[..start]).all(|&x| x == 0)
}

/// `P(e)` for `e` supported on `W1`.
pub fn p_functional(sig: &Signature, e: &Element) -> Result<Scalar> {
    let table = PTable::get(sig.num_odd())?;
    e.validate(sig)?;
    let start = sig.odd_start();
    let mut total = Scalar::zero();
    for (m, c) in e {
        if !in_w1(sig, m) {
            return Err(WeylError::domain(
                "P is defined on monomials in the odd coordinates only",
            ));
        }
        total += c * table.value(start, m);
    }
    Ok(total)
}

/// Lifts `phi0` or `phi_gamma` to the full superalgebra:
/// `(m, m') -> phi(m0, m0') * P(m1 m1')`.
pub fn lift_cocycle(sig: &Signature, base: &CocycleHandle) -> Result<CocycleHandle> {
    let p = PTable::get(sig.num_odd())?;
    let base = base.rebind(sig)?;
    Ok(CocycleHandle::lifted(sig, base, p))
}

pub(crate) fn lifted_monomials(
    sig: &Signature,
    base: &CocycleHandle,
    p: &PTable,
    u: &Monomial,
    v: &Monomial,
) -> Result<Scalar> {
    let (u0, u1) = split_monomial(sig, u);
    let (v0, v1) = split_monomial(sig, v);
    let even = base.eval_monomials(&u0, &v0)?;
    if even.is_zero() {
        return Ok(even);
    }
    let start = sig.odd_start();
    let odd = mul_monomials(sig, &u1, &v1)
        .iter()
        .fold(Scalar::zero(), |acc, (m, c)| acc + c * p.value(start, m));
    Ok(even * odd)
}

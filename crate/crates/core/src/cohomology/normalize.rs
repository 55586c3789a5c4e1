//! Normalization of a cocycle `psi` to an equivalent `phi = psi - psi_f` that
//! vanishes against `t_p d_p`, `d_p` and `s_p d^_p` in the first slot.
//!
//! `f` is defined monomial by monomial through a case split on the shape of
//! `x^{alpha,k} d^mu`; each case reads off `f(m)` from a bracket identity
//! `[e, m'] = c m + (terms already determined)` with a distinguished `e`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Zero};

use super::form::{BilinearForm, FunctionTable};
use crate::algebra::{bracket_monomials, compare_deriv_order, for_each_below, Monomial};
use crate::error::{Result, WeylError};
use crate::scalar::{self, Scalar};
use crate::signature::{self, Signature};

pub const DEFAULT_DEPTH_LIMIT: usize = 10_000;

/// Memoized computation of the normalizing function `f` for one source form.
pub struct NormalizationSession<'a> {
    source: &'a dyn BilinearForm,
    tau: Vec<Scalar>,
    memo: HashMap<Monomial, Scalar>,
    depth: usize,
    depth_limit: usize,
}

fn unit(len: usize, p: usize) -> Vec<i64> {
    let mut v = vec![0; len];
    v[p] = 1;
    v
}

/// `t_p d_p` (or `s_p d^_p` on an odd coordinate).
fn t_d(len: usize, p: usize) -> Monomial {
    Monomial::new(vec![Scalar::zero(); len], unit(len, p), unit(len, p))
}

fn d(len: usize, p: usize) -> Monomial {
    Monomial::derivation(unit(len, p))
}

impl<'a> NormalizationSession<'a> {
    /// Uses the signature's own `tau` unless one is given.
    pub fn new(source: &'a dyn BilinearForm, tau: Option<Vec<Scalar>>) -> Result<Self> {
        let sig = source.signature();
        let tau = match tau {
            Some(t) => {
                signature::check_tau(sig, &t).map_err(|e| match e {
                    WeylError::Signature(msg) => WeylError::Domain(msg),
                    other => other,
                })?;
                t
            }
            None => sig.tau().to_vec(),
        };
        Ok(NormalizationSession {
            source,
            tau,
            memo: HashMap::new(),
            depth: 0,
            depth_limit: DEFAULT_DEPTH_LIMIT,
        })
    }

    pub fn with_depth_limit(mut self, limit: usize) -> Self {
        self.depth_limit = limit;
        self
    }

    pub fn tau(&self) -> &[Scalar] {
        &self.tau
    }

    fn sig(&self) -> &'a Signature {
        self.source.signature()
    }

    /// Every value computed so far.
    pub fn table(&self) -> FunctionTable {
        FunctionTable::from_entries(self.memo.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn normalize_f(&mut self, m: &Monomial) -> Result<Scalar> {
        if let Some(v) = self.memo.get(m) {
            return Ok(v.clone());
        }
        m.validate(self.sig())?;
        if self.depth >= self.depth_limit {
            return Err(WeylError::internal(format!(
                "normalization recursion exceeded depth {}",
                self.depth_limit
            )));
        }
        self.depth += 1;
        let value = self.compute(m);
        self.depth -= 1;
        let value = value?;
        self.memo.insert(m.clone(), value.clone());
        Ok(value)
    }

    /// `f` extended linearly.
    pub fn apply(&mut self, e: &crate::algebra::Element) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in e {
            total += c * self.normalize_f(m)?;
        }
        Ok(total)
    }

    fn psi(&self, u: &Monomial, v: &Monomial) -> Result<Scalar> {
        self.source.eval_monomials(u, v)
    }

    fn compute(&mut self, m: &Monomial) -> Result<Scalar> {
        let sig = self.sig();
        let len = sig.len();
        let l3 = sig.partial(3);
        let start = sig.odd_start();

        // (a) nonzero group part: induct on |k_q|
        if let Some(q) = (0..len).find(|&p| !m.alpha[p].is_zero()) {
            let a = m.alpha[q].clone();
            let kq = m.k[q];
            let shifted = |delta: i64| {
                let mut n = m.clone();
                n.k[q] += delta;
                n
            };
            return if kq >= 0 {
                let mut rhs = self.psi(&d(len, q), m)?;
                if kq > 0 {
                    rhs -= scalar::int(kq) * self.descend_k(m, &shifted(-1), q)?;
                }
                Ok(rhs / a)
            } else if kq == -1 {
                let up = shifted(1);
                let rhs = self.psi(&t_d(len, q), m)? - &a * self.descend_k(m, &up, q)?;
                Ok(-rhs / scalar::int(1 + m.mu[q]))
            } else {
                let up = shifted(1);
                let rhs = self.psi(&d(len, q), &up)? - &a * self.descend_k(m, &up, q)?;
                Ok(rhs / scalar::int(kq + 1))
            };
        }

        // (b) nonzero even exponent
        if let Some(r) = (0..start).find(|&p| m.k[p] != 0) {
            debug_assert!(r < l3);
            let (i, mu) = (m.k[r], m.mu[r]);
            return if i != mu {
                Ok(self.psi(&t_d(len, r), m)? / scalar::int(i - mu))
            } else {
                let mut up = m.clone();
                up.k[r] += 1;
                Ok(self.psi(&d(len, r), &up)? / scalar::int(i + 1))
            };
        }

        // (c) Grassmann exponents only
        if let Some(r) = (start..len).find(|&p| m.k[p] != 0) {
            if m.mu[r] == 0 {
                return self.psi(&t_d(len, r), m);
            }
        }

        // (c) with j_r = mu_r = 1, and (d) pure d^mu
        if l3 != 0 {
            let mut up = m.clone();
            up.k[0] = 1;
            return self.psi(&d(len, 0), &up);
        }
        self.tau_recursion(m)
    }

    fn descend_k(&mut self, from: &Monomial, to: &Monomial, q: usize) -> Result<Scalar> {
        if to.k[q].abs() >= from.k[q].abs() {
            return Err(WeylError::internal(format!(
                "no descent in |k_{}|: {} -> {}",
                q + 1,
                from.k[q],
                to.k[q]
            )));
        }
        self.normalize_f(to)
    }

    /// The `x^tau` identity, for `l'_3 = 0`: with `nu = mu + 1_L`, `L = l'_4`,
    /// `[x^tau, x^-tau m_nu] = -tau_L (mu_L + 1) m - sum_lambda binom(nu, lambda) [tau]^lambda m_{nu - lambda}`.
    fn tau_recursion(&mut self, m: &Monomial) -> Result<Scalar> {
        let sig = self.sig();
        let len = sig.len();
        let start = sig.odd_start();
        let last = start - 1;
        let tau = self.tau.clone();
        let mut nu = m.mu.clone();
        nu[last] += 1;
        let x_tau = Monomial::function(tau.clone(), vec![0; len]);
        let mut partner = m.clone();
        partner.alpha = tau.iter().map(|c| -c).collect();
        partner.mu = nu.clone();
        let mut rhs = self.psi(&x_tau, &partner)?;

        let mut lambdas = Vec::new();
        for_each_below(&nu[..start], |lam| {
            let nonzero = lam.iter().any(|&x| x != 0);
            let is_last_unit = lam[last] == 1 && lam.iter().sum::<i64>() == 1;
            if nonzero && !is_last_unit {
                lambdas.push(lam.to_vec());
            }
        });
        for lam in lambdas {
            let mut coeff = Scalar::one();
            for p in 0..start {
                coeff *= scalar::binom_int(nu[p], lam[p]) * scalar::pow(&tau[p], lam[p] as u64);
            }
            let mut lower = m.clone();
            for p in 0..start {
                lower.mu[p] = nu[p] - lam[p];
            }
            if compare_deriv_order(&lower.mu, &m.mu) != Ordering::Less {
                return Err(WeylError::internal(format!(
                    "no descent in derivation order: {:?} -> {:?}",
                    m.mu, lower.mu
                )));
            }
            rhs += coeff * self.normalize_f(&lower)?;
        }
        let denom = &tau[last] * scalar::int(m.mu[last] + 1);
        Ok(-rhs / denom)
    }
}

/// `phi = psi - psi_f` where `f` is computed on demand by a session.
pub struct NormalizedForm<'a> {
    sig: &'a Signature,
    session: RefCell<NormalizationSession<'a>>,
}

impl<'a> NormalizedForm<'a> {
    pub fn new(session: NormalizationSession<'a>) -> Self {
        NormalizedForm {
            sig: session.sig(),
            session: RefCell::new(session),
        }
    }

    pub fn into_session(self) -> NormalizationSession<'a> {
        self.session.into_inner()
    }
}

impl BilinearForm for NormalizedForm<'_> {
    fn signature(&self) -> &Signature {
        self.sig
    }

    fn eval_monomials(&self, u: &Monomial, v: &Monomial) -> Result<Scalar> {
        let mut session = self.session.borrow_mut();
        let psi = session.psi(u, v)?;
        let b = bracket_monomials(self.sig, u, v);
        Ok(psi - session.apply(&b)?)
    }
}

/// One failed normalization condition `phi(e, m) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The distinguished element `t_p d_p`, `d_p` or `s_p d^_p`.
    pub probe: Monomial,
    pub sample: Monomial,
    pub value: Scalar,
}

/// The distinguished first arguments: `t_p d_p` for even `p` in the `t` zones,
/// `d_p` for every `p`, and `s_p d^_p` for odd `p`.
pub fn normalization_probes(sig: &Signature) -> Vec<Monomial> {
    let len = sig.len();
    let mut probes: Vec<Monomial> = (0..sig.partial(3)).map(|p| t_d(len, p)).collect();
    probes.extend((0..len).map(|p| d(len, p)));
    probes.extend((sig.odd_start()..len).map(|p| t_d(len, p)));
    probes
}

/// Checks every normalization condition against every sample.
pub fn normalized_check(phi: &dyn BilinearForm, samples: &[Monomial]) -> Result<Vec<Violation>> {
    let probes = normalization_probes(phi.signature());
    let mut out = Vec::new();
    for m in samples {
        for e in &probes {
            let value = phi.eval_monomials(e, m)?;
            if !value.is_zero() {
                out.push(Violation {
                    probe: e.clone(),
                    sample: m.clone(),
                    value,
                });
            }
        }
    }
    Ok(out)
}

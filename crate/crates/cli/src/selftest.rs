//! Seeded verification suites over the signature families.
//!
//! Each suite draws its inputs from a sampler seeded by the run seed and the
//! suite's position, so a run is reproducible line for line.

use std::fmt;

use num_traits::{One, Zero};
use weyl_core::algebra::{
    bracket, falling_factorial_element, mul, stirling_second_row, Element,
    Monomial,
};
use weyl_core::cohomology::{
    cocycle_residuals, cyclic_residual, lift_cocycle, normalized_check, p_functional,
    triviality_probe, BilinearForm, CocycleHandle, CocycleKind, FunctionTable, NormalizationSession,
    NormalizedForm, PTable, Truncation,
};
use weyl_core::sample::{Sampler, FAMILIES};
use weyl_core::scalar::{self, int, Scalar};
use weyl_core::{Result, Signature};

use crate::expr::{format_element, parse_expression};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Random cases per sampled suite.
    pub samples: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 7,
            samples: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub family: String,
    pub name: String,
    pub checked: usize,
    /// Cases in which the checked quantity was not trivially zero.
    pub nontrivial: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(family: &str, name: &str) -> Self {
        SuiteResult {
            family: family.to_string(),
            name: name.to_string(),
            checked: 0,
            nontrivial: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn absorb_error(&mut self, r: Result<()>) {
        if let Err(e) = r {
            self.checked += 1;
            self.failures.push(format!("error: {e}"));
        }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] {} {}: {} checks, {} nontrivial",
            self.family, self.name, self.checked, self.nontrivial
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, "; {} failures, first: {first}", self.failures.len())?;
        }
        Ok(())
    }
}

pub fn family_label(sig: &Signature) -> String {
    let ell = sig.ell();
    format!("({},{},{},{},{})", ell[0], ell[1], ell[2], ell[3], ell[4])
}

/// The families a full run covers.
pub fn all_families() -> Vec<[i64; 5]> {
    let mut out = FAMILIES.to_vec();
    out.push([0, 0, 1, 0, 0]);
    out.push([0, 0, 1, 0, 2]);
    out
}

fn sampler(seed: u64, salt: u64, exp_bound: i64, alpha_bound: i64) -> Sampler {
    Sampler::with_bounds(
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt),
        exp_bound,
        alpha_bound,
    )
}

fn salt(sig: &Signature, suite: u64) -> u64 {
    let ell = sig.ell();
    ell.iter().fold(suite, |acc, &l| acc * 31 + l as u64)
}

fn el(m: Monomial) -> Element {
    Element::from(m)
}

pub fn associativity(sig: &Signature, n: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "associativity");
    let mut s = sampler(seed, salt(sig, 1), 3, 3);
    for _ in 0..n {
        let (u, v, w) = (el(s.monomial(sig)), el(s.monomial(sig)), el(s.monomial(sig)));
        let res = (|| {
            let left = mul(sig, &mul(sig, &u, &v)?, &w)?;
            let right = mul(sig, &u, &mul(sig, &v, &w)?)?;
            if !left.is_zero() {
                r.nontrivial += 1;
            }
            r.check(left == right, || {
                format!("(uv)w != u(vw) for {}, {}, {}", format_element(sig, &u), format_element(sig, &v), format_element(sig, &w))
            });
            Ok(())
        })();
        r.absorb_error(res);
    }
    r
}

fn sign_of(gu: u8, gv: u8) -> Scalar {
    if gu * gv == 1 {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

fn homogeneous_triple(s: &mut Sampler, sig: &Signature, terms: usize) -> [Element; 3] {
    std::array::from_fn(|_| {
        let parity = s.parity(sig);
        s.homogeneous(sig, parity, terms)
    })
}

pub fn bracket_axioms(sig: &Signature, n: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "bracket skew/Jacobi");
    let mut s = sampler(seed, salt(sig, 2), 2, 2);
    for _ in 0..n {
        let [u, v, w] = homogeneous_triple(&mut s, sig, 2);
        let res = (|| {
            let gu = u.homogeneous_parity(sig)?;
            let gv = v.homogeneous_parity(sig)?;
            let sign = sign_of(gu, gv);
            let uv = bracket(sig, &u, &v)?;
            let skew = &uv + &bracket(sig, &v, &u)?.scale(&sign);
            let jacobi = &(&bracket(sig, &u, &bracket(sig, &v, &w)?)? - &bracket(sig, &uv, &w)?)
                - &bracket(sig, &v, &bracket(sig, &u, &w)?)?.scale(&sign);
            if !uv.is_zero() {
                r.nontrivial += 1;
            }
            r.check(skew.is_zero(), || format!("skew residual {}", format_element(sig, &skew)));
            r.check(jacobi.is_zero(), || format!("Jacobi residual {}", format_element(sig, &jacobi)));
            Ok(())
        })();
        r.absorb_error(res);
    }
    r
}

fn xd(sig: &Signature, a: i64, k: i64, m: i64) -> Monomial {
    let mut mono = Monomial::one(sig.len());
    mono.alpha[0] = int(a);
    mono.k[0] = k;
    mono.mu[0] = m;
    mono
}

/// Golden values of `phi0` on `(0,0,0,1,l5)`.
pub fn phi0_golden(sig: &Signature) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "phi0 golden values");
    let res = (|| {
        let phi = CocycleHandle::phi0(sig)?;
        for a in -5..=5 {
            let v = phi.eval_monomials(&xd(sig, a, 0, 0), &xd(sig, -a, 0, 0))?;
            r.check(v == int(a), || format!("phi0(x^{a}, x^{}) = {v}", -a));
            let v = phi.eval_monomials(&xd(sig, a, 0, 1), &xd(sig, -a, 0, 1))?;
            let expected = -scalar::ratio(a * a * a - a, 6);
            r.check(v == expected, || format!("phi0(x^{a} d, x^{} d) = {v}, expected {expected}", -a));
            r.nontrivial += 2;
        }
        Ok(())
    })();
    r.absorb_error(res);
    r
}

/// Golden values of `phi_0` (gamma = 0) on `(0,0,1,0,l5)`.
pub fn phi_gamma_golden(sig: &Signature) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "phi_gamma golden values");
    let res = (|| {
        let phi = CocycleHandle::phi_gamma(sig, vec![Scalar::zero(); sig.len()])?;
        for i in -5..=5 {
            for j in -5..=5 {
                let v = phi.eval_monomials(&xd(sig, 0, i, 0), &xd(sig, 0, j, 0))?;
                let expected = if i + j == 0 { int(i) } else { int(0) };
                r.check(v == expected, || format!("phi(t^{i}, t^{j}) = {v}"));
            }
        }
        for a in -3..=3 {
            let v = phi.eval_monomials(&xd(sig, a, 1, 0), &xd(sig, -a, -1, 0))?;
            r.check(v.is_one(), || format!("phi(x^(a,1), x^(-a,-1)) = {v} at a = {a}"));
            let w = phi.eval_monomials(&xd(sig, -a, -1, 0), &xd(sig, a, 1, 0))?;
            r.check(w == -Scalar::one(), || format!("phi(x^(-a,-1), x^(a,1)) = {w} at a = {a}"));
        }
        r.nontrivial = r.checked;
        Ok(())
    })();
    r.absorb_error(res);
    r
}

fn even_triple(s: &mut Sampler, sig: &Signature, terms: usize) -> [Element; 3] {
    std::array::from_fn(|_| s.homogeneous_with(sig, 0, terms, |s| s.even_monomial(sig)))
}

/// Skew and Jacobi residuals of `psi` on random homogeneous triples; `even_only`
/// restricts the arguments to the even subalgebra.
pub fn cocycle_axioms(psi: &CocycleHandle, label: &str, n: usize, seed: u64, even_only: bool) -> SuiteResult {
    let sig = psi.signature();
    let mut r = SuiteResult::new(&family_label(sig), &format!("{label} cocycle axioms"));
    let alpha_bound = if even_only { 2 } else { 1 };
    let mut s = sampler(seed, salt(sig, 3) ^ label.len() as u64, 2, alpha_bound);
    for _ in 0..n {
        let [u, v, w] = if even_only {
            even_triple(&mut s, sig, 3)
        } else {
            homogeneous_triple(&mut s, sig, 3)
        };
        let res = (|| {
            let (skew, jacobi) = cocycle_residuals(psi, &u, &v, &w)?;
            if !psi.eval(&u, &v)?.is_zero() || !psi.eval(&u, &bracket(sig, &v, &w)?)?.is_zero() {
                r.nontrivial += 1;
            }
            r.check(skew.is_zero(), || format!("skew residual {skew}"));
            r.check(jacobi.is_zero(), || format!("Jacobi residual {jacobi}"));
            Ok(())
        })();
        r.absorb_error(res);
    }
    r
}

pub fn cyclic(phi: &CocycleHandle, label: &str, n: usize, seed: u64) -> SuiteResult {
    let sig = phi.signature();
    let mut r = SuiteResult::new(&family_label(sig), &format!("{label} cyclic identity"));
    let mut s = sampler(seed, salt(sig, 4) ^ label.len() as u64, 2, 2);
    for _ in 0..n {
        let [a, b, c] = even_triple(&mut s, sig, 3);
        let res = (|| {
            let total = cyclic_residual(phi, &a, &b, &c)?;
            if !phi.eval(&a, &mul(sig, &b, &c)?)?.is_zero() {
                r.nontrivial += 1;
            }
            r.check(total.is_zero(), || format!("cyclic residual {total}"));
            Ok(())
        })();
        r.absorb_error(res);
    }
    r
}

fn w1_basis(sig: &Signature) -> Vec<Monomial> {
    let start = sig.odd_start();
    let n = sig.num_odd();
    (0..1usize << (2 * n))
        .map(|i| {
            let mut m = Monomial::one(sig.len());
            for p in 0..n {
                m.k[start + p] = ((i >> (2 * p)) & 1) as i64;
                m.mu[start + p] = ((i >> (2 * p + 1)) & 1) as i64;
            }
            m
        })
        .collect()
}

/// The functional `P` on the odd factor of `sig`: table values for one odd
/// coordinate, vanishing on brackets, and twisted symmetry.
pub fn p_suite(sig: &Signature, n: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "P functional");
    let mut s = sampler(seed, salt(sig, 5), 1, 1);
    let res = (|| {
        PTable::get(sig.num_odd())?;
        let basis = w1_basis(sig);
        let p = |e: &Element| p_functional(sig, e);
        if sig.num_odd() == 1 {
            let start = sig.odd_start();
            let mut one = Monomial::one(sig.len());
            let expected = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)];
            for (k, mu, value) in expected {
                one.k[start] = k;
                one.mu[start] = mu;
                let v = p(&el(one.clone()))?;
                r.check(v == int(value), || format!("P(s^{k} q^{mu}) = {v}"));
            }
        }
        let symmetric = |u: &Element, v: &Element| -> Result<bool> {
            let g = sign_of(u.homogeneous_parity(sig)?, v.homogeneous_parity(sig)?);
            Ok(p(&mul(sig, u, v)?)? == g * p(&mul(sig, v, u)?)?)
        };
        if sig.num_odd() <= 2 {
            for u in &basis {
                for v in &basis {
                    let (eu, ev) = (el(u.clone()), el(v.clone()));
                    let b = p(&bracket(sig, &eu, &ev)?)?;
                    r.check(b.is_zero(), || format!("P([u,v]) = {b}"));
                    if sig.num_odd() == 1 {
                        r.check(symmetric(&eu, &ev)?, || "P(uv) twisted symmetry".into());
                    }
                    if !p(&mul(sig, &eu, &ev)?)?.is_zero() {
                        r.nontrivial += 1;
                    }
                }
            }
        }
        for _ in 0..n {
            let pu = s.parity(sig);
            let pv = s.parity(sig);
            let u = s.homogeneous_with(sig, pu, 2, |s| s.odd_factor_monomial(sig));
            let v = s.homogeneous_with(sig, pv, 2, |s| s.odd_factor_monomial(sig));
            r.check(symmetric(&u, &v)?, || "P(uv) twisted symmetry on samples".into());
        }
        Ok(())
    })();
    r.absorb_error(res);
    r
}

/// The codimension-one property of `[W1, W1]` for 1..=3 odd coordinates.
pub fn p_codimension() -> SuiteResult {
    let mut r = SuiteResult::new("(0,0,0,1,1..3)", "P codimension");
    for n in 1..=3 {
        let ok = PTable::get(n);
        r.check(ok.is_ok(), || format!("l5 = {n}: {}", ok.as_ref().err().map(ToString::to_string).unwrap_or_default()));
        r.nontrivial += 1;
    }
    r
}

fn odd_unit(sig: &Signature, p: usize, k: i64, mu: i64) -> Element {
    let mut m = Monomial::one(sig.len());
    m.k[sig.odd_start() + p] = k;
    m.mu[sig.odd_start() + p] = mu;
    el(m)
}

/// The group element on which a lifted explicit cocycle can be nonzero.
fn pairing_target(phi: &CocycleHandle) -> Vec<Scalar> {
    let zero = vec![Scalar::zero(); phi.signature().len()];
    match phi.kind() {
        CocycleKind::Lifted(base, _) => match base.kind() {
            CocycleKind::PhiGamma(g) => g.clone(),
            _ => zero,
        },
        _ => zero,
    }
}

/// The relations of a lifted cocycle against `s_p`, `q_p` and `s_p q_p`, on
/// `y, z` free of coordinate `p`.
pub fn lifted_relations(phi: &CocycleHandle, label: &str, n: usize, seed: u64) -> SuiteResult {
    let sig = phi.signature();
    let mut r = SuiteResult::new(&family_label(sig), &format!("{label} lifted relation table"));
    let mut s = sampler(seed, salt(sig, 6) ^ label.len() as u64, 2, 2);
    let target = pairing_target(phi);
    let mut done = 0;
    while done < n {
        let p = s.range(0, sig.num_odd() as i64 - 1) as usize;
        let col = sig.odd_start() + p;
        let mut draw = |s: &mut Sampler| {
            let mut m = s.monomial(sig);
            m.k[col] = 0;
            m.mu[col] = 0;
            m
        };
        let py = s.parity(sig);
        let pz = s.parity(sig);
        let y = s.homogeneous_with(sig, py, 2, &mut draw);
        // pair z's group parts with y's so the even factor can be nonzero
        let alphas: Vec<Vec<Scalar>> = y.monomials().map(|m| m.alpha.clone()).collect();
        let z = s.homogeneous_with(sig, pz, 2, |s| {
            let mut m = draw(s);
            if let Some(a) = alphas.get(s.range(0, alphas.len() as i64) as usize) {
                m.alpha = target.iter().zip(a).map(|(t, x)| t - x).collect();
            }
            m
        });
        let touches = |e: &Element| e.iter().any(|(m, _)| m.k[col] != 0 || m.mu[col] != 0);
        if y.is_zero() || z.is_zero() || touches(&y) || touches(&z) {
            // parity flipping may land on the excluded coordinate
            continue;
        }
        done += 1;
        let res = (|| {
            let sp = odd_unit(sig, p, 1, 0);
            let qp = odd_unit(sig, p, 0, 1);
            let spq = odd_unit(sig, p, 1, 1);
            let times = |a: &Element, b: &Element| mul(sig, a, b);
            let (ys, yq, ysq) = (times(&y, &sp)?, times(&y, &qp)?, times(&y, &spq)?);
            let (zs, zq, zsq) = (times(&z, &sp)?, times(&z, &qp)?, times(&z, &spq)?);
            let zeros = [
                ("phi(y,z)", &y, &z),
                ("phi(ys,z)", &ys, &z),
                ("phi(ys,zs)", &ys, &zs),
                ("phi(yq,z)", &yq, &z),
                ("phi(yq,zq)", &yq, &zq),
                ("phi(ysq,zs)", &ysq, &zs),
                ("phi(ysq,zq)", &ysq, &zq),
            ];
            for (name, a, b) in zeros {
                let v = phi.eval(a, b)?;
                r.check(v.is_zero(), || format!("{name} = {v}"));
            }
            let gz = z.homogeneous_parity(sig)?;
            let first = phi.eval(&ys, &zq)? * if gz == 1 { -Scalar::one() } else { Scalar::one() };
            let second = phi.eval(&y, &zsq)?;
            let third = phi.eval(&ysq, &zsq)?;
            if !second.is_zero() {
                r.nontrivial += 1;
            }
            r.check(first == second && second == third, || {
                format!("(-1)^g(z) phi(ys,zq) = {first}, phi(y,zsq) = {second}, phi(ysq,zsq) = {third}")
            });
            Ok(())
        })();
        r.absorb_error(res);
    }
    r
}

fn random_table(s: &mut Sampler, sig: &Signature, pool: &[Monomial], size: usize) -> FunctionTable {
    let mut t = FunctionTable::new();
    for _ in 0..size {
        let m = if pool.is_empty() { s.monomial(sig) } else { s.choose(pool).clone() };
        let c = s.coefficient();
        t.insert(m, c);
    }
    t
}

/// Truncation used for coboundary probes in a family.
pub fn family_truncation(sig: &Signature) -> Truncation {
    Truncation {
        alpha_range: if sig.generators().len() > 1 { (-1, 1) } else { (-2, 2) },
        k_range: (-1, 1),
        mu_max: 1,
        include_odd: sig.num_odd() <= 1,
        ..Truncation::default()
    }
}

/// The truncation on which `phi0` is shown nontrivial.
pub fn phi0_truncation() -> Truncation {
    Truncation {
        alpha_range: (-2, 2),
        mu_max: 1,
        ..Truncation::default()
    }
}

/// The truncation on which `phi_0` of the Laurent family is shown nontrivial.
pub fn heisenberg_truncation() -> Truncation {
    Truncation {
        alpha_range: (-1, 1),
        k_range: (-2, 2),
        mu_max: 1,
        ..Truncation::default()
    }
}

/// Coboundaries are consistent (solutions checked by substitution).
pub fn coboundary_probes(sig: &Signature, trunc: &Truncation, trials: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "coboundary probes");
    let mut s = sampler(seed, salt(sig, 7), 2, 2);
    let res = (|| {
        let pool: Vec<Monomial> = trunc.monomials(sig)?;
        for _ in 0..trials {
            // bracket components of truncation pairs make good support
            let mut support = Vec::new();
            for _ in 0..6 {
                let u = s.choose(&pool).clone();
                let v = s.choose(&pool).clone();
                support.extend(bracket(sig, &el(u), &el(v))?.monomials().cloned());
            }
            let g = random_table(&mut s, sig, &support, 6);
            let psi = CocycleHandle::coboundary(sig, g)?;
            let probe = triviality_probe(&psi, trunc)?;
            match probe.solution() {
                None => r.check(false, || "coboundary probe inconsistent".into()),
                Some(f) => {
                    if probe.rows.iter().any(|row| !row.rhs.is_zero()) {
                        r.nontrivial += 1;
                    }
                    let bad = probe.rows.iter().find(|row| f.apply(&row.bracket) != row.rhs);
                    r.check(bad.is_none(), || "solution fails substitution".into());
                }
            }
        }
        Ok(())
    })();
    r.absorb_error(res);
    r
}

/// `psi` is inconsistent on `trunc`, with an irreducible witness.
pub fn nontriviality_probe(psi: &CocycleHandle, label: &str, trunc: &Truncation) -> SuiteResult {
    let sig = psi.signature();
    let mut r = SuiteResult::new(&family_label(sig), &format!("{label} nontriviality probe"));
    let res = (|| {
        let probe = triviality_probe(psi, trunc)?;
        let witness = probe.witness();
        r.check(!witness.is_empty(), || "probe is consistent".into());
        r.nontrivial = witness.len();
        Ok(())
    })();
    r.absorb_error(res);
    r
}

/// Normalization of random coboundaries passes every normalization condition.
pub fn normalization(sig: &Signature, trials: usize, samples: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "normalization");
    let mut s = sampler(seed, salt(sig, 8), 2, 1);
    for _ in 0..trials {
        let res = (|| {
            let pool: Vec<Monomial> = (0..12).map(|_| s.monomial(sig)).collect();
            let g = random_table(&mut s, sig, &pool, 10);
            let psi = CocycleHandle::coboundary(sig, g)?;
            let phi = NormalizedForm::new(NormalizationSession::new(&psi, None)?);
            let mut checks: Vec<Monomial> = (0..samples / 2).map(|_| s.choose(&pool).clone()).collect();
            checks.extend((checks.len()..samples).map(|_| s.monomial(sig)));
            let violations = normalized_check(&phi, &checks)?;
            let session = phi.into_session();
            if session.table().iter().next().is_some() {
                r.nontrivial += 1;
            }
            r.checked += checks.len() - 1;
            r.check(violations.is_empty(), || {
                let v = &violations[0];
                format!(
                    "{} violations, first: phi({}, {}) = {}",
                    violations.len(),
                    format_element(sig, &el(v.probe.clone())),
                    format_element(sig, &el(v.sample.clone())),
                    v.value
                )
            });
            Ok(())
        })();
        r.absorb_error(res);
    }
    r
}

/// Falling factorials: golden values and the Stirling round trip.
pub fn falling(sig: &Signature) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "falling factorials");
    let res = (|| {
        let golden = [(2, "d1^2 - d1"), (3, "d1^3 - 3*d1^2 + 2*d1")];
        for (n, text) in golden {
            let e = falling_factorial_element(sig, n)?;
            let expected = parse_expression(sig, text)?;
            r.check(e == expected, || format!("[d1]_{n} = {}", format_element(sig, &e)));
        }
        for m in 0..=8usize {
            let mut total = Element::zero();
            for (k, c) in stirling_second_row(m).into_iter().enumerate() {
                total += &falling_factorial_element(sig, k as i64)?.scale(&Scalar::from_integer(c));
            }
            let mut power = Monomial::one(sig.len());
            power.mu[0] = m as i64;
            r.check(total == el(power), || format!("round trip fails at m = {m}"));
        }
        r.nontrivial = r.checked;
        Ok(())
    })();
    r.absorb_error(res);
    r
}

/// `parse(format(e)) == e` on random elements.
pub fn round_trip(sig: &Signature, n: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new(&family_label(sig), "format/parse round trip");
    let mut s = sampler(seed, salt(sig, 9), 3, 3);
    for _ in 0..n {
        let terms = s.range(0, 4) as usize;
        let e = Element::from_terms((0..terms).map(|_| (s.monomial(sig), s.coefficient())));
        let text = format_element(sig, &e);
        let back = parse_expression(sig, &text);
        r.check(back.as_ref() == Ok(&e), || format!("{text:?} -> {back:?}"));
        if !e.is_zero() {
            r.nontrivial += 1;
        }
    }
    r
}

fn is_shape(sig: &Signature, head: [usize; 4]) -> bool {
    sig.ell()[..4] == head
}

/// Every suite that applies to `sig`.
pub fn run_family(sig: &Signature, cfg: &SelftestConfig) -> Vec<SuiteResult> {
    let n = cfg.samples;
    let seed = cfg.seed;
    let mut out = vec![
        associativity(sig, n, seed),
        bracket_axioms(sig, n, seed),
        round_trip(sig, n, seed),
    ];
    if sig.odd_start() == 1 {
        out.push(falling(sig));
    }
    let mut explicit: Vec<(String, CocycleHandle)> = Vec::new();
    if is_shape(sig, [0, 0, 0, 1]) {
        out.push(phi0_golden(sig));
        if let Ok(h) = CocycleHandle::phi0(sig) {
            explicit.push(("phi0".into(), h));
        }
    }
    if is_shape(sig, [0, 0, 1, 0]) {
        out.push(phi_gamma_golden(sig));
        for g in [0, 1] {
            let mut gamma = vec![Scalar::zero(); sig.len()];
            gamma[0] = int(g);
            if let Ok(h) = CocycleHandle::phi_gamma(sig, gamma) {
                explicit.push((format!("phi_gamma[{g}]"), h));
            }
        }
    }
    for (label, h) in &explicit {
        out.push(cocycle_axioms(h, label, n, seed, true));
        out.push(cyclic(h, label, n, seed));
    }
    if sig.num_odd() == 0 {
        if is_shape(sig, [0, 0, 0, 1]) {
            if let Ok(h) = CocycleHandle::phi0(sig) {
                out.push(nontriviality_probe(&h, "phi0", &phi0_truncation()));
            }
        }
        if is_shape(sig, [0, 0, 1, 0]) {
            if let Ok(h) = CocycleHandle::phi_gamma(sig, vec![Scalar::zero()]) {
                out.push(nontriviality_probe(&h, "phi_gamma[0]", &heisenberg_truncation()));
            }
        }
    }
    if sig.num_odd() >= 1 {
        out.push(p_suite(sig, n, seed));
        for (label, h) in &explicit {
            match lift_cocycle(sig, h) {
                Ok(lifted) => {
                    let name = format!("lifted {label}");
                    out.push(cocycle_axioms(&lifted, &name, n, seed, false));
                    out.push(lifted_relations(&lifted, label, n / 2, seed));
                }
                Err(e) => {
                    let mut r = SuiteResult::new(&family_label(sig), &format!("lift {label}"));
                    r.check(false, || e.to_string());
                    out.push(r);
                }
            }
        }
    }
    out.push(coboundary_probes(sig, &family_truncation(sig), 3, seed));
    out.push(normalization(sig, 5, n.min(100), seed));
    out
}

/// All families plus the global checks.
pub fn run_all(cfg: &SelftestConfig) -> Result<Vec<SuiteResult>> {
    let mut out = vec![p_codimension()];
    for ell in all_families() {
        let sig = Signature::standard(ell)?;
        out.extend(run_family(&sig, cfg));
    }
    Ok(out)
}

//! The super-product on `A`, the derivation actions, and the product and
//! superbracket of the full algebra.

use num_traits::{One, Zero};

use super::element::Element;
use super::monomial::{monomial_parity, Monomial};
use crate::error::{Result, WeylError};
use crate::scalar::{self, Scalar};
use crate::signature::{Signature, Zone};

fn check_len(sig: &Signature, m: &Monomial) -> Result<()> {
    if m.len() != sig.len() || m.alpha.len() != sig.len() || m.mu.len() != sig.len() {
        return Err(WeylError::index(format!(
            "coordinate length {} does not match signature length {}",
            m.len(),
            sig.len()
        )));
    }
    Ok(())
}

fn check_function(sig: &Signature, m: &Monomial) -> Result<()> {
    check_len(sig, m)?;
    if m.has_derivation() {
        return Err(WeylError::domain(
            "expected an element of A (zero derivation index)",
        ));
    }
    Ok(())
}

/// Sign and exponent of `x^{alpha,k} x^{alpha',k'}`, ignoring derivation indices.
/// `None` when an odd exponent reaches 2.
pub(crate) fn amul_raw(
    sig: &Signature,
    a: &Monomial,
    b: &Monomial,
) -> Option<(bool, Vec<Scalar>, Vec<i64>)> {
    let start = sig.odd_start();
    let len = sig.len();
    let mut k = Vec::with_capacity(len);
    for p in 0..len {
        let s = a.k[p] + b.k[p];
        if p >= start && s > 1 {
            return None;
        }
        k.push(s);
    }
    // sum over odd p < q of j_q j'_p: each s_p of b passes the s_q of a with q > p
    let mut flips = 0i64;
    let mut a_suffix = 0i64;
    for p in (start..len).rev() {
        flips += b.k[p] * a_suffix;
        a_suffix += a.k[p];
    }
    let alpha = a.alpha.iter().zip(&b.alpha).map(|(x, y)| x + y).collect();
    Some((flips % 2 == 1, alpha, k))
}

/// Product in the supercommutative algebra `A`.
pub fn amul(sig: &Signature, a: &Monomial, b: &Monomial) -> Result<Element> {
    check_function(sig, a)?;
    check_function(sig, b)?;
    Ok(match amul_raw(sig, a, b) {
        None => Element::zero(),
        Some((neg, alpha, k)) => {
            let c = if neg { -Scalar::one() } else { Scalar::one() };
            Element::term(c, Monomial::function(alpha, k))
        }
    })
}

fn partial_on(sig: &Signature, p: usize, a: &Monomial, out: &mut Element, coeff: &Scalar) {
    let lowered = |a: &Monomial| {
        let mut k = a.k.clone();
        k[p] -= 1;
        Monomial::function(a.alpha.clone(), k)
    };
    let zone = sig.zone(p);
    if zone.has_grading() && !a.alpha[p].is_zero() {
        out.add_term(a.function_part(), coeff * &a.alpha[p]);
    }
    match zone {
        Zone::Graded => {}
        Zone::Odd => {
            if a.k[p] == 1 {
                let before: i64 = a.k[sig.odd_start()..p].iter().sum();
                let c = if before % 2 == 0 {
                    coeff.clone()
                } else {
                    -coeff.clone()
                };
                out.add_term(lowered(a), c);
            }
        }
        _ => {
            // the lowered exponent is outside J exactly when k_p = 0, where the factor vanishes
            if a.k[p] != 0 {
                out.add_term(lowered(a), coeff * scalar::int(a.k[p]));
            }
        }
    }
}

/// Action of `d_p` (0-based `p`) on a function monomial.
pub fn apply_partial(sig: &Signature, p: usize, a: &Monomial) -> Result<Element> {
    if p >= sig.len() {
        return Err(WeylError::index(format!(
            "derivation index {} out of range 1..{}",
            p + 1,
            sig.len()
        )));
    }
    check_function(sig, a)?;
    let mut out = Element::zero();
    partial_on(sig, p, a, &mut out, &Scalar::one());
    Ok(out)
}

fn partial_elem(sig: &Signature, p: usize, e: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in e {
        partial_on(sig, p, m, &mut out, c);
    }
    out
}

/// `d^lambda(a) = d_1^{l_1}( d_2^{l_2}( ... d_l^{l_l}(a)))`: innermost index applied first.
pub fn apply_multi_derivation(sig: &Signature, lam: &[i64], a: &Monomial) -> Result<Element> {
    check_function(sig, a)?;
    if lam.len() != sig.len() || lam.iter().any(|&x| x < 0) {
        return Err(WeylError::index("invalid derivation index"));
    }
    Ok(multi_derivation(sig, lam, a))
}

pub(crate) fn multi_derivation(sig: &Signature, lam: &[i64], a: &Monomial) -> Element {
    let mut cur = Element::from(a.function_part());
    for p in (0..sig.len()).rev() {
        for _ in 0..lam[p] {
            if cur.is_zero() {
                return cur;
            }
            cur = partial_elem(sig, p, &cur);
        }
    }
    cur
}

/// Enumerates every `lambda` with `0 <= lambda <= bound` coordinatewise.
pub(crate) fn for_each_below(bound: &[i64], mut f: impl FnMut(&[i64])) {
    let mut lam = vec![0i64; bound.len()];
    loop {
        f(&lam);
        let mut p = 0;
        loop {
            if p == lam.len() {
                return;
            }
            if lam[p] < bound[p] {
                lam[p] += 1;
                break;
            }
            lam[p] = 0;
            p += 1;
        }
    }
}

/// Product of two monomials, accumulated into `out` with weight `coeff`.
///
/// Expands `u d^mu . v d^nu = sum_lambda binom(mu, lambda) (+-) (u d^lambda(v)) d^{mu+nu-lambda}`.
/// The sign collects three odd reorderings: the leftover odd derivations
/// `d^{mu-lambda}` passing `v`, passing the odd factors of `d^lambda` that acted
/// on `v` from their right, and passing the odd part of `d^nu`.
fn mul_monomials_into(
    sig: &Signature,
    u: &Monomial,
    v: &Monomial,
    coeff: &Scalar,
    out: &mut Element,
) {
    let len = sig.len();
    let start = sig.odd_start();
    let gv = {
        let s: i64 = v.k[start..].iter().sum();
        s % 2
    };
    let v_fn = v.function_part();
    let u_fn = u.function_part();
    for_each_below(&u.mu, |lam| {
        let mut rest = vec![0i64; len];
        for p in 0..len {
            rest[p] = u.mu[p] - lam[p];
        }
        let mut new_mu = vec![0i64; len];
        for p in 0..len {
            new_mu[p] = rest[p] + v.mu[p];
            if p >= start && new_mu[p] > 1 {
                return;
            }
        }
        let mut exp = 0i64;
        let g_rest: i64 = rest[start..].iter().sum();
        exp += gv * g_rest;
        // pairs p < q among odd coordinates
        let mut rest_suffix = 0i64;
        let mut lam_suffix = 0i64;
        for p in (start..len).rev() {
            exp += v.mu[p] * rest_suffix;
            exp += rest[p] * lam_suffix;
            rest_suffix += rest[p];
            lam_suffix += lam[p];
        }
        let mut c = coeff.clone();
        for p in 0..start {
            if lam[p] != 0 {
                c *= scalar::binom_int(u.mu[p], lam[p]);
            }
        }
        if exp % 2 == 1 {
            c = -c;
        }
        let dv = multi_derivation(sig, lam, &v_fn);
        for (a, ca) in &dv {
            if let Some((neg, alpha, k)) = amul_raw(sig, &u_fn, a) {
                let mut term_c = &c * ca;
                if neg {
                    term_c = -term_c;
                }
                out.add_term(Monomial::new(alpha, k, new_mu.clone()), term_c);
            }
        }
    });
}

fn check_element(sig: &Signature, e: &Element) -> Result<()> {
    for m in e.monomials() {
        check_len(sig, m)?;
    }
    Ok(())
}

pub fn mul_monomials(sig: &Signature, u: &Monomial, v: &Monomial) -> Element {
    let mut out = Element::zero();
    mul_monomials_into(sig, u, v, &Scalar::one(), &mut out);
    out
}

/// Associative product of the superalgebra, extended bilinearly.
pub fn mul(sig: &Signature, e1: &Element, e2: &Element) -> Result<Element> {
    check_element(sig, e1)?;
    check_element(sig, e2)?;
    let mut out = Element::zero();
    for (u, cu) in e1 {
        for (v, cv) in e2 {
            mul_monomials_into(sig, u, v, &(cu * cv), &mut out);
        }
    }
    Ok(out)
}

/// Superbracket `[u, v] = uv - (-1)^{g(u)g(v)} vu`, extended bilinearly over
/// parity-homogeneous (here: monomial) parts.
pub fn bracket(sig: &Signature, e1: &Element, e2: &Element) -> Result<Element> {
    check_element(sig, e1)?;
    check_element(sig, e2)?;
    let mut out = Element::zero();
    for (u, cu) in e1 {
        let gu = monomial_parity(sig, u);
        for (v, cv) in e2 {
            let c = cu * cv;
            mul_monomials_into(sig, u, v, &c, &mut out);
            let back = if gu * monomial_parity(sig, v) == 1 {
                c
            } else {
                -c
            };
            mul_monomials_into(sig, v, u, &back, &mut out);
        }
    }
    Ok(out)
}

pub fn bracket_monomials(sig: &Signature, u: &Monomial, v: &Monomial) -> Element {
    let mut out = Element::zero();
    let c = Scalar::one();
    mul_monomials_into(sig, u, v, &c, &mut out);
    let back = if monomial_parity(sig, u) * monomial_parity(sig, v) == 1 {
        c
    } else {
        -c
    };
    mul_monomials_into(sig, v, u, &back, &mut out);
    out
}

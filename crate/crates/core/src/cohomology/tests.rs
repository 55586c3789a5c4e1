use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::*;
use crate::algebra::{bracket, mul, Element, Monomial};
use crate::scalar::{int, ratio, Scalar};
use crate::signature::Signature;

fn vir() -> Signature {
    Signature::standard([0, 0, 0, 1, 0]).unwrap()
}

fn heis() -> Signature {
    Signature::standard([0, 0, 1, 0, 0]).unwrap()
}

fn super_vir() -> Signature {
    Signature::standard([0, 0, 0, 1, 1]).unwrap()
}

/// `x^{a} d^m` in a one-coordinate signature (padded with odd zeros).
fn xd(len: usize, a: i64, k: i64, m: i64) -> Monomial {
    let mut alpha = vec![Scalar::zero(); len];
    alpha[0] = int(a);
    let mut kk = vec![0; len];
    kk[0] = k;
    let mut mu = vec![0; len];
    mu[0] = m;
    Monomial::new(alpha, kk, mu)
}

fn el(m: Monomial) -> Element {
    Element::from(m)
}

#[test]
fn phi0_on_functions_is_alpha() {
    let sig = vir();
    let phi = CocycleHandle::phi0(&sig).unwrap();
    assert_eq!(phi.eval_monomials(&xd(1, 2, 0, 0), &xd(1, -2, 0, 0)).unwrap(), int(2));
    for a in -4..=4 {
        assert_eq!(phi.eval_monomials(&xd(1, a, 0, 0), &xd(1, -a, 0, 0)).unwrap(), int(a));
    }
    assert_eq!(phi.eval_monomials(&xd(1, 1, 0, 0), &xd(1, 1, 0, 0)).unwrap(), int(0));
}

#[test]
fn phi0_virasoro_values() {
    let sig = vir();
    let phi = CocycleHandle::phi0(&sig).unwrap();
    for a in -5..=5 {
        let expected = -(ratio(a * a * a - a, 6));
        assert_eq!(phi.eval_monomials(&xd(1, a, 0, 1), &xd(1, -a, 0, 1)).unwrap(), expected);
    }
    assert_eq!(phi.eval_monomials(&xd(1, 2, 0, 1), &xd(1, -2, 0, 1)).unwrap(), int(-1));
}

#[test]
fn phi0_rejects_odd_arguments_and_wrong_shape() {
    let sig = super_vir();
    let phi = CocycleHandle::phi0(&sig).unwrap();
    let mut m = xd(2, 1, 0, 0);
    m.k[1] = 1;
    assert!(phi.eval_monomials(&m, &xd(2, -1, 0, 0)).is_err());
    assert!(CocycleHandle::phi0(&heis()).is_err());
    assert!(CocycleHandle::phi_gamma(&vir(), vec![int(0)]).is_err());
}

#[test]
fn phi_gamma_heisenberg_values() {
    let sig = heis();
    let phi = CocycleHandle::phi_gamma(&sig, vec![int(0)]).unwrap();
    for i in -4..=4 {
        for j in -4..=4 {
            let expected = if i + j == 0 { int(i) } else { int(0) };
            assert_eq!(phi.eval_monomials(&xd(1, 0, i, 0), &xd(1, 0, j, 0)).unwrap(), expected);
        }
    }
    assert_eq!(phi.eval_monomials(&xd(1, 0, 3, 0), &xd(1, 0, -3, 0)).unwrap(), int(3));
    for a in [-2, 1, 3] {
        assert_eq!(phi.eval_monomials(&xd(1, a, 1, 0), &xd(1, -a, -1, 0)).unwrap(), int(1));
        assert_eq!(phi.eval_monomials(&xd(1, -a, -1, 0), &xd(1, a, 1, 0)).unwrap(), int(-1));
    }
    // group parts must sum to gamma
    assert!(phi.eval_monomials(&xd(1, 1, 2, 1), &xd(1, 1, 0, 0)).unwrap().is_zero());
    let shifted = CocycleHandle::phi_gamma(&sig, vec![int(3)]).unwrap();
    assert!(shifted.eval_monomials(&xd(1, 1, 0, 0), &xd(1, 1, 0, 0)).unwrap().is_zero());
}

#[test]
fn phi_gamma_requires_membership() {
    let raw = crate::signature::RawSignature::new([0, 0, 1, 0, 0], vec![vec![int(2)]]);
    let sig = crate::signature::validate_signature(&raw, 3).unwrap();
    assert!(CocycleHandle::phi_gamma(&sig, vec![int(1)]).is_err());
    assert!(CocycleHandle::phi_gamma(&sig, vec![int(4)]).is_ok());
}

#[test]
fn split_examples() {
    let sig = super_vir();
    let m = Monomial::new(vec![int(3), int(0)], vec![0, 1], vec![1, 1]);
    let (m0, m1) = split_monomial(&sig, &m);
    assert_eq!(m0, Monomial::new(vec![int(3), int(0)], vec![0, 0], vec![1, 0]));
    assert_eq!(m1, Monomial::new(vec![int(0), int(0)], vec![0, 1], vec![0, 1]));
    let f = Monomial::function(vec![int(3), int(0)], vec![0, 0]);
    assert_eq!(split_monomial(&sig, &f), (f.clone(), Monomial::one(2)));
}

fn odd(sig: &Signature, k: &[i64], mu: &[i64]) -> Monomial {
    let mut m = Monomial::one(sig.len());
    let s = sig.odd_start();
    m.k[s..].copy_from_slice(k);
    m.mu[s..].copy_from_slice(mu);
    m
}

#[test]
fn p_table_single_odd() {
    let sig = super_vir();
    let p = |m: Monomial| p_functional(&sig, &el(m)).unwrap();
    assert_eq!(p(odd(&sig, &[1], &[1])), int(1));
    assert_eq!(p(odd(&sig, &[0], &[0])), int(0));
    assert_eq!(p(odd(&sig, &[1], &[0])), int(0));
    assert_eq!(p(odd(&sig, &[0], &[1])), int(0));
    let ds = mul(&sig, &el(odd(&sig, &[0], &[1])), &el(odd(&sig, &[1], &[0]))).unwrap();
    assert_eq!(p_functional(&sig, &ds).unwrap(), int(-1));
}

#[test]
fn p_errors() {
    assert!(p_functional(&vir(), &Element::one(1)).is_err());
    let sig = super_vir();
    assert!(p_functional(&sig, &el(xd(2, 1, 0, 0))).is_err());
}

#[test]
fn p_vanishes_on_brackets_and_is_supersymmetric() {
    for n in 1..=2 {
        let sig = Signature::standard([0, 0, 0, 1, n]).unwrap();
        let basis: Vec<Monomial> = (0..1usize << (2 * n))
            .map(|i| {
                let mut m = Monomial::one(sig.len());
                for p in 0..n as usize {
                    m.k[1 + p] = ((i >> (2 * p)) & 1) as i64;
                    m.mu[1 + p] = ((i >> (2 * p + 1)) & 1) as i64;
                }
                m
            })
            .collect();
        for u in &basis {
            for v in &basis {
                let b = bracket(&sig, &el(u.clone()), &el(v.clone())).unwrap();
                assert!(p_functional(&sig, &b).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn u1_squares_to_signed_u1() {
    // s_1..s_n d^_1..d^_n squared: reordering the derivations past the
    // Grassmann variables costs (-1)^{n(n-1)/2}
    for n in 1..=3i64 {
        let sig = Signature::standard([0, 0, 0, 1, n]).unwrap();
        let u1 = odd(&sig, &vec![1; n as usize], &vec![1; n as usize]);
        let sign = if (n * (n - 1) / 2) % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(mul(&sig, &el(u1.clone()), &el(u1.clone())).unwrap(), el(u1.clone()).scale(&sign));
        assert_eq!(p_functional(&sig, &el(u1)).unwrap(), int(1));
    }
}

#[test]
fn lifted_phi0_examples() {
    let sig = super_vir();
    let lifted = lift_cocycle(&sig, &CocycleHandle::phi0(&sig).unwrap()).unwrap();
    let with_odd = |a: i64, k: i64, mu: i64| Monomial::new(vec![int(a), int(0)], vec![0, k], vec![0, mu]);
    for a in [-3, 1, 2] {
        assert_eq!(lifted.eval_monomials(&with_odd(a, 1, 1), &with_odd(-a, 1, 1)).unwrap(), int(a));
        assert!(lifted.eval_monomials(&with_odd(a, 1, 0), &with_odd(-a, 1, 0)).unwrap().is_zero());
        assert_eq!(lifted.eval_monomials(&with_odd(a, 1, 0), &with_odd(-a, 0, 1)).unwrap(), int(a));
    }
    // lifting from the purely even signature works too
    let from_even = lift_cocycle(&sig, &CocycleHandle::phi0(&vir()).unwrap()).unwrap();
    assert_eq!(from_even.eval_monomials(&with_odd(2, 1, 1), &with_odd(-2, 1, 1)).unwrap(), int(2));
    assert!(lift_cocycle(&vir(), &CocycleHandle::phi0(&vir()).unwrap()).is_err());
    assert!(lift_cocycle(&sig, &CocycleHandle::zero(&sig)).is_err());
}

#[test]
fn coboundary_examples() {
    let sig = vir();
    let d1 = xd(1, 0, 0, 1);
    let table = FunctionTable::from_entries([(d1.clone(), int(1))]);
    for a in -3..=3 {
        let v = coboundary_eval(&sig, &table, &el(xd(1, a, 0, 1)), &el(xd(1, -a, 0, 1))).unwrap();
        assert_eq!(v, int(-2 * a));
    }
    let u = el(xd(1, 2, 0, 1));
    assert!(coboundary_eval(&sig, &table, &u, &u).unwrap().is_zero());
    let empty = FunctionTable::new();
    assert!(coboundary_eval(&sig, &empty, &u, &el(d1)).unwrap().is_zero());
}

#[test]
fn residual_examples() {
    let sig = vir();
    let phi = CocycleHandle::phi0(&sig).unwrap();
    let (u, v, w) = (el(xd(1, 1, 0, 1)), el(xd(1, -1, 0, 1)), el(xd(1, 0, 0, 1)));
    assert_eq!(cocycle_residuals(&phi, &u, &v, &w).unwrap(), (int(0), int(0)));

    let table = FunctionTable::from_entries([(xd(1, 0, 0, 1), int(3)), (xd(1, 1, 0, 2), int(-1))]);
    let cob = CocycleHandle::coboundary(&sig, table).unwrap();
    let w2 = el(xd(1, 1, 0, 2));
    assert_eq!(cocycle_residuals(&cob, &u, &v, &w2).unwrap(), (int(0), int(0)));

    let x1 = xd(1, 1, 0, 0);
    let user = CocycleHandle::user_table(&sig, BTreeMap::from([((x1.clone(), x1.clone()), int(1))])).unwrap();
    let (skew, _) = cocycle_residuals(&user, &el(x1.clone()), &el(x1.clone()), &el(x1)).unwrap();
    assert_eq!(skew, int(2));

    let mixed = &el(Monomial::one(2)) + &el(Monomial::new(vec![int(0); 2], vec![0, 1], vec![0, 0]));
    let sphi = CocycleHandle::phi0(&super_vir()).unwrap();
    assert!(cocycle_residuals(&sphi, &mixed, &mixed, &mixed).is_err());
}

#[test]
fn cyclic_examples() {
    let sig = vir();
    let phi = CocycleHandle::phi0(&sig).unwrap();
    let (a, b, c) = (el(xd(1, 1, 0, 0)), el(xd(1, -1, 0, 0)), el(xd(1, 0, 0, 0)));
    assert!(cyclic_residual(&phi, &a, &b, &c).unwrap().is_zero());

    let h = heis();
    let phg = CocycleHandle::phi_gamma(&h, vec![int(0)]).unwrap();
    let (a, b, c) = (el(xd(1, 0, 1, 0)), el(xd(1, 0, -1, 0)), el(xd(1, 0, 0, 0)));
    assert!(cyclic_residual(&phg, &a, &b, &c).unwrap().is_zero());

    let (a, b, c) = (el(xd(1, 5, 0, 1)), el(xd(1, 7, 0, 0)), el(xd(1, 9, 0, 2)));
    assert!(cyclic_residual(&phi, &a, &b, &c).unwrap().is_zero());
}

#[test]
fn normalization_recovers_table_on_graded_monomials() {
    let sig = vir();
    let g = FunctionTable::from_entries([
        (xd(1, 2, 0, 3), int(5)),
        (xd(1, -1, 0, 0), ratio(1, 2)),
        (xd(1, 0, 0, 1), int(7)),
        (xd(1, 0, 0, 2), int(-2)),
    ]);
    let psi = CocycleHandle::coboundary(&sig, g.clone()).unwrap();
    let mut session = NormalizationSession::new(&psi, None).unwrap();
    for a in -3..=3 {
        if a == 0 {
            continue;
        }
        for m in 0..=4 {
            let mono = xd(1, a, 0, m);
            assert_eq!(session.normalize_f(&mono).unwrap(), g.get(&mono));
        }
    }
}

#[test]
fn normalization_of_zero_is_zero() {
    let sig = vir();
    let zero = CocycleHandle::zero(&sig);
    let mut session = NormalizationSession::new(&zero, None).unwrap();
    for m in 0..=6 {
        assert!(session.normalize_f(&xd(1, 0, 0, m)).unwrap().is_zero());
    }
}

#[test]
fn normalization_laurent_first_branch() {
    let sig = heis();
    let g = FunctionTable::from_entries([(xd(1, 0, 2, 0), int(3)), (xd(1, 0, 2, 1), int(1))]);
    let psi = CocycleHandle::coboundary(&sig, g).unwrap();
    let mut session = NormalizationSession::new(&psi, None).unwrap();
    let m = xd(1, 0, 2, 0);
    let direct = psi.eval_monomials(&xd(1, 0, 1, 1), &m).unwrap() / int(2);
    assert_eq!(session.normalize_f(&m).unwrap(), direct);
}

#[test]
fn normalized_check_examples() {
    let sig = vir();
    let zero = CocycleHandle::zero(&sig);
    let samples: Vec<Monomial> = (-2..=2).flat_map(|a| (0..=2).map(move |m| xd(1, a, 0, m))).collect();
    assert!(normalized_check(&zero, &samples).unwrap().is_empty());

    let raw = CocycleHandle::coboundary(&sig, FunctionTable::from_entries([(xd(1, 1, 0, 1), int(1))])).unwrap();
    assert!(!normalized_check(&raw, &samples).unwrap().is_empty());

    let g = FunctionTable::from_entries([(xd(1, 1, 0, 1), int(1)), (xd(1, 0, 0, 2), int(4))]);
    let psi = CocycleHandle::coboundary(&sig, g).unwrap();
    let phi = NormalizedForm::new(NormalizationSession::new(&psi, None).unwrap());
    assert!(normalized_check(&phi, &samples).unwrap().is_empty());
}

#[test]
fn phi0_probe_is_inconsistent() {
    let sig = vir();
    let phi = CocycleHandle::phi0(&sig).unwrap();
    let trunc = Truncation {
        alpha_range: (-2, 2),
        mu_max: 1,
        ..Truncation::default()
    };
    let probe = triviality_probe(&phi, &trunc).unwrap();
    assert!(!probe.is_consistent());
    assert!(probe.subsystem_infeasible(match &probe.verdict {
        ProbeVerdict::Inconsistent(w) => w,
        _ => unreachable!(),
    }));
    let r1 = probe.row_index(&xd(1, 1, 0, 1), &xd(1, -1, 0, 1)).unwrap();
    let r2 = probe.row_index(&xd(1, 2, 0, 1), &xd(1, -2, 0, 1)).unwrap();
    assert!(probe.subsystem_infeasible(&[r1, r2]));
}

#[test]
fn zero_probe_is_consistent_with_zero_table() {
    let sig = vir();
    let probe = triviality_probe(&CocycleHandle::zero(&sig), &Truncation::default()).unwrap();
    assert_eq!(probe.solution(), Some(&FunctionTable::new()));
}

#[test]
fn probe_respects_cap() {
    let sig = vir();
    let trunc = Truncation {
        alpha_range: (-20, 20),
        mu_max: 5,
        cap: 100,
        ..Truncation::default()
    };
    assert!(matches!(
        triviality_probe(&CocycleHandle::zero(&sig), &trunc),
        Err(crate::WeylError::TooLarge { .. })
    ));
}

#[test]
fn function_table_ignores_zero() {
    let mut t = FunctionTable::new();
    t.insert(Monomial::one(1), Scalar::zero());
    assert!(t.is_empty());
    t.insert(Monomial::one(1), Scalar::one());
    assert_eq!(t.apply(&Element::scalar(1, int(3))), int(3));
}

//! The signature `(l1, ..., l5, Gamma, tau)` that fixes the shape of the algebra.
//!
//! Coordinates are 0-based throughout the crate. With `l'_i` the partial sums
//! of the `l` tuple, coordinate `p` falls into one of five zones:
//!
//! | zone              | range               | exponents `k_p` | derivation `d_p`      |
//! |-------------------|---------------------|-----------------|-----------------------|
//! | `Polynomial`      | `p < l'_1`          | `k_p >= 0`      | down-grading only     |
//! | `PolynomialGraded`| `l'_1 <= p < l'_2`  | `k_p >= 0`      | down-grading + grading|
//! | `Laurent`         | `l'_2 <= p < l'_3`  | any integer     | down-grading + grading|
//! | `Graded`          | `l'_3 <= p < l'_4`  | `k_p = 0`       | grading only          |
//! | `Odd`             | `l'_4 <= p < l`     | `k_p in {0,1}`  | odd (Grassmann)       |

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, WeylError};
use crate::scalar::{self, Scalar};

/// Default coefficient bound for the tau search.
pub const DEFAULT_TAU_BOUND: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Polynomial,
    PolynomialGraded,
    Laurent,
    Graded,
    Odd,
}

impl Zone {
    pub fn is_odd(self) -> bool {
        self == Zone::Odd
    }

    /// Whether `d_p` has a grading part `alpha_p` on this coordinate.
    pub fn has_grading(self) -> bool {
        matches!(self, Zone::PolynomialGraded | Zone::Laurent | Zone::Graded)
    }

    /// Whether a polynomial/Laurent variable `t_p` lives on this coordinate.
    pub fn has_t(self) -> bool {
        matches!(self, Zone::Polynomial | Zone::PolynomialGraded | Zone::Laurent)
    }

    pub fn exponent_ok(self, k: i64) -> bool {
        match self {
            Zone::Polynomial | Zone::PolynomialGraded => k >= 0,
            Zone::Laurent => true,
            Zone::Graded => k == 0,
            Zone::Odd => k == 0 || k == 1,
        }
    }

    pub fn derivation_ok(self, mu: i64) -> bool {
        match self {
            Zone::Odd => mu == 0 || mu == 1,
            _ => mu >= 0,
        }
    }
}

/// Unvalidated signature data, as read from a signature file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSignature {
    pub ell: Vec<i64>,
    pub generators: Vec<Vec<Scalar>>,
    pub tau: Option<Vec<Scalar>>,
}

/// A validated signature. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ell: [usize; 5],
    partial: [usize; 5],
    generators: Vec<Vec<Scalar>>,
    tau: Vec<Scalar>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SignatureFile {
    ell: Vec<i64>,
    #[serde(default)]
    generators: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<Vec<String>>,
}

impl RawSignature {
    pub fn new(ell: [i64; 5], generators: Vec<Vec<Scalar>>) -> Self {
        RawSignature {
            ell: ell.to_vec(),
            generators,
            tau: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SignatureFile = serde_json::from_str(text)
            .map_err(|e| WeylError::Signature(format!("malformed signature file: {e}")))?;
        let parse_vec = |v: &[String]| -> Result<Vec<Scalar>> {
            v.iter()
                .map(|s| {
                    scalar::parse_scalar(s)
                        .map_err(|_| WeylError::Signature(format!("bad rational {s:?}")))
                })
                .collect()
        };
        Ok(RawSignature {
            ell: file.ell,
            generators: file
                .generators
                .iter()
                .map(|g| parse_vec(g))
                .collect::<Result<_>>()?,
            tau: file.tau.as_deref().map(parse_vec).transpose()?,
        })
    }
}

impl Signature {
    pub fn ell(&self) -> [usize; 5] {
        self.ell
    }

    /// Partial sum `l'_i` for `i` in `1..=5`.
    pub fn partial(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.partial[i - 1]
        }
    }

    /// Total number of coordinates `l`.
    pub fn len(&self) -> usize {
        self.partial[4]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// First odd coordinate, `l'_4` (0-based).
    pub fn odd_start(&self) -> usize {
        self.partial[3]
    }

    pub fn num_odd(&self) -> usize {
        self.ell[4]
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn tau(&self) -> &[Scalar] {
        &self.tau
    }

    pub fn zone(&self, p: usize) -> Zone {
        if p < self.partial[0] {
            Zone::Polynomial
        } else if p < self.partial[1] {
            Zone::PolynomialGraded
        } else if p < self.partial[2] {
            Zone::Laurent
        } else if p < self.partial[3] {
            Zone::Graded
        } else {
            Zone::Odd
        }
    }

    /// Range of coordinates on which group elements may be nonzero.
    pub fn group_range(&self) -> std::ops::Range<usize> {
        self.partial[0]..self.partial[3]
    }

    pub fn raw(&self) -> RawSignature {
        RawSignature {
            ell: self.ell.iter().map(|&l| l as i64).collect(),
            generators: self.generators.clone(),
            tau: Some(self.tau.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        let file = SignatureFile {
            ell: self.ell.iter().map(|&l| l as i64).collect(),
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(scalar::format_scalar).collect())
                .collect(),
            tau: Some(self.tau.iter().map(scalar::format_scalar).collect()),
        };
        serde_json::to_string(&file).expect("signature serializes")
    }

    /// Checks the support pattern of a group vector.
    pub fn check_group_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.len() {
            return Err(WeylError::index(format!(
                "group vector has length {}, expected {}",
                v.len(),
                self.len()
            )));
        }
        let range = self.group_range();
        for (p, c) in v.iter().enumerate() {
            if !range.contains(&p) && !c.is_zero() {
                return Err(WeylError::index(format!(
                    "group vector coordinate {} must vanish",
                    p + 1
                )));
            }
        }
        Ok(())
    }

    /// Convenience constructor for the common single-generator signatures.
    pub fn standard(ell: [i64; 5]) -> Result<Self> {
        let raw = RawSignature::new(ell, unit_generators(ell));
        validate_signature(&raw, DEFAULT_TAU_BOUND)
    }
}

/// The unit vectors on the group coordinates, i.e. `Gamma = Z^{l2+l3+l4}`.
pub fn unit_generators(ell: [i64; 5]) -> Vec<Vec<Scalar>> {
    let len: i64 = ell.iter().sum();
    let lo = ell[0].max(0) as usize;
    let hi = (ell[0] + ell[1] + ell[2] + ell[3]).max(0) as usize;
    (lo..hi)
        .map(|p| {
            (0..len.max(0) as usize)
                .map(|q| scalar::int((p == q) as i64))
                .collect()
        })
        .collect()
}

pub fn validate_signature(raw: &RawSignature, tau_bound: i64) -> Result<Signature> {
    let bad = |msg: String| Err(WeylError::Signature(msg));
    if raw.ell.len() != 5 {
        return bad(format!("expected 5 entries in ell, got {}", raw.ell.len()));
    }
    if let Some(l) = raw.ell.iter().find(|&&l| l < 0) {
        return bad(format!("ell entries must be non-negative, got {l}"));
    }
    let mut ell = [0usize; 5];
    let mut partial = [0usize; 5];
    let mut acc = 0;
    for i in 0..5 {
        ell[i] = raw.ell[i] as usize;
        acc += ell[i];
        partial[i] = acc;
    }
    if partial[3] == 0 {
        return bad("l'_4 = l1+l2+l3+l4 must be at least 1".into());
    }
    let mut sig = Signature {
        ell,
        partial,
        generators: raw.generators.clone(),
        tau: vec![Scalar::zero(); acc],
    };
    for (i, g) in raw.generators.iter().enumerate() {
        sig.check_group_vector(g)
            .map_err(|e| WeylError::Signature(format!("generator {}: {e}", i + 1)))?;
    }
    let range = sig.group_range();
    let needed = range.len();
    let restricted: Vec<Vec<Scalar>> = raw
        .generators
        .iter()
        .map(|g| g[range.clone()].to_vec())
        .collect();
    let rank = rational_rank(&restricted);
    if rank < needed {
        return bad(format!(
            "generators are degenerate: rank {rank} < {needed} = l2+l3+l4"
        ));
    }
    sig.tau = match &raw.tau {
        Some(tau) => {
            check_tau(&sig, tau)?;
            tau.clone()
        }
        None if needed == 0 => vec![Scalar::zero(); acc],
        None => synthesize_tau(&sig, tau_bound)?,
    };
    Ok(sig)
}

fn tau_support_ok(sig: &Signature, tau: &[Scalar]) -> bool {
    let range = sig.group_range();
    tau.len() == sig.len()
        && tau
            .iter()
            .enumerate()
            .all(|(p, c)| range.contains(&p) != c.is_zero())
}

pub(crate) fn check_tau(sig: &Signature, tau: &[Scalar]) -> Result<()> {
    if !tau_support_ok(sig, tau) {
        return Err(WeylError::Signature(
            "tau must be nonzero exactly on coordinates l1+1..l'_4".into(),
        ));
    }
    if !gamma_membership(sig, tau)? {
        return Err(WeylError::Signature("tau is not in Gamma".into()));
    }
    Ok(())
}

/// Orders coefficient values as 0, 1, -1, 2, -2, ...
fn coefficient_key(c: i64) -> (i64, bool) {
    (c.abs(), c < 0)
}

// Searches shells of increasing sup-norm; inside a shell, coefficient vectors are
// visited lexicographically under the value order 0, 1, -1, 2, -2, ...
fn synthesize_tau(sig: &Signature, bound: i64) -> Result<Vec<Scalar>> {
    let gens = sig.generators();
    let mut values: Vec<i64> = (-bound..=bound).collect();
    values.sort_by_key(|&c| coefficient_key(c));
    for shell in 1..=bound {
        let shell_values: Vec<i64> = values.iter().copied().filter(|c| c.abs() <= shell).collect();
        let n = shell_values.len();
        let total = n.pow(gens.len() as u32);
        for code in 0..total {
            // most significant digit first gives lexicographic order
            let mut rest = code;
            let mut coeffs = vec![0i64; gens.len()];
            for slot in coeffs.iter_mut().rev() {
                *slot = shell_values[rest % n];
                rest /= n;
            }
            if coeffs.iter().all(|c| c.abs() < shell) {
                continue;
            }
            let mut tau = vec![Scalar::zero(); sig.len()];
            for (g, &c) in gens.iter().zip(&coeffs) {
                for (t, x) in tau.iter_mut().zip(g) {
                    *t += x * scalar::int(c);
                }
            }
            if tau_support_ok(sig, &tau) {
                return Ok(tau);
            }
        }
    }
    Err(WeylError::Signature(format!(
        "no tau found with generator coefficients bounded by {bound}"
    )))
}

/// Integer membership in the lattice spanned by the generators.
pub fn gamma_membership(sig: &Signature, v: &[Scalar]) -> Result<bool> {
    sig.check_group_vector(v)?;
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    // cheap rational-span rejection first
    let gens = sig.generators();
    let base = rational_rank(gens);
    let mut with_v = gens.to_vec();
    with_v.push(v.to_vec());
    if rational_rank(&with_v) > base {
        return Ok(false);
    }
    let denom = scalar::common_denominator(gens.iter().flatten().chain(v.iter()));
    let to_int = |row: &[Scalar]| -> Vec<BigInt> {
        row.iter()
            .map(|c| (c * Scalar::from_integer(denom.clone())).to_integer())
            .collect()
    };
    let lattice = hermite_rows(gens.iter().map(|g| to_int(g)).collect());
    Ok(reduce_by_lattice(&lattice, to_int(v)))
}

pub(crate) fn rational_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot_row = m[rank].clone();
        for r in (rank + 1)..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot_row[col];
            for c in col..ncols {
                let delta = &factor * &pivot_row[c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Integer row echelon form (pivots positive) via gcd row operations.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for col in 0..ncols {
        loop {
            // smallest nonzero |entry| in this column becomes the pivot candidate
            let Some(piv) = (0..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            let pivot_row = rows[piv].clone();
            let mut done = true;
            for (r, row) in rows.iter_mut().enumerate() {
                if r == piv || row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&pivot_row[col]);
                for c in col..ncols {
                    let delta = &q * &pivot_row[c];
                    row[c] -= delta;
                }
                if !row[col].is_zero() {
                    done = false;
                }
            }
            if done {
                let mut p = rows.remove(piv);
                if p[col].is_negative() {
                    p.iter_mut().for_each(|c| *c = -c.clone());
                }
                out.push(p);
                break;
            }
        }
    }
    out
}

fn reduce_by_lattice(lattice: &[Vec<BigInt>], mut v: Vec<BigInt>) -> bool {
    for row in lattice {
        let Some(col) = row.iter().position(|c| !c.is_zero()) else {
            continue;
        };
        let (q, rem) = v[col].div_rem(&row[col]);
        if !rem.is_zero() {
            return false;
        }
        for c in col..v.len() {
            let delta = &q * &row[c];
            v[c] -= delta;
        }
    }
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn raw(ell: [i64; 5], gens: &[&[i64]]) -> RawSignature {
        RawSignature::new(ell, gens.iter().map(|g| v(g)).collect())
    }

    #[test]
    fn single_generator_is_its_own_tau() {
        let sig = validate_signature(&raw([0, 0, 0, 1, 1], &[&[1, 0]]), 3).unwrap();
        assert_eq!(sig.tau(), v(&[1, 0]).as_slice());
        assert_eq!(sig.len(), 2);
        assert_eq!(sig.odd_start(), 1);
    }

    #[test]
    fn tau_found_as_generator_sum() {
        // brute force over {0, +-1}^2: the first combination with both coordinates
        // nonzero in the 0, 1, -1 order is 1*(1,0) + 1*(0,1)
        let sig = validate_signature(&raw([0, 0, 0, 2, 0], &[&[1, 0], &[0, 1]]), 3).unwrap();
        assert_eq!(sig.tau(), v(&[1, 1]).as_slice());
    }

    #[test]
    fn degenerate_generators_rejected() {
        let err = validate_signature(&raw([0, 0, 0, 2, 0], &[&[1, 0]]), 3).unwrap_err();
        assert!(err.to_string().contains("rank 1 < 2"), "{err}");
    }

    #[test]
    fn shape_errors() {
        assert!(validate_signature(&raw([0, 0, 0, 0, 1], &[]), 3).is_err());
        assert!(validate_signature(&raw([0, 0, 0, 1, 1], &[&[1, 1]]), 3).is_err());
        assert!(validate_signature(&raw([-1, 0, 0, 1, 1], &[&[1, 1]]), 3).is_err());
        let mut r = raw([0, 0, 0, 1, 0], &[&[1]]);
        r.ell.pop();
        assert!(validate_signature(&r, 3).is_err());
    }

    #[test]
    fn tau_search_bound_is_reported() {
        // both coordinates nonzero needs a combination of (1,1) and (1,-1) that
        // avoids cancellation; with bound 0 nothing is tried at all
        let r = raw([0, 0, 0, 2, 0], &[&[1, 1], &[1, -1]]);
        let err = validate_signature(&r, 0).unwrap_err();
        assert!(err.to_string().contains("bounded by 0"));
        let sig = validate_signature(&r, 1).unwrap();
        assert_eq!(sig.tau(), v(&[1, -1]).as_slice());
    }

    #[test]
    fn polynomial_only_signature_has_zero_tau() {
        let sig = validate_signature(&raw([1, 0, 0, 0, 0], &[]), 3).unwrap();
        assert_eq!(sig.tau(), v(&[0]).as_slice());
    }

    #[test]
    fn explicit_tau_is_checked() {
        let mut r = raw([0, 0, 0, 1, 0], &[&[2]]);
        r.tau = Some(v(&[1]));
        assert!(validate_signature(&r, 3).is_err());
        r.tau = Some(v(&[-4]));
        assert_eq!(validate_signature(&r, 3).unwrap().tau(), v(&[-4]).as_slice());
    }

    #[test]
    fn validation_is_idempotent() {
        for gens in [&[&[1i64, 0][..], &[0, 1]][..], &[&[2, 1], &[1, 3]]] {
            let sig = validate_signature(&raw([0, 0, 0, 2, 0], gens), 3).unwrap();
            let again = validate_signature(&sig.raw(), 3).unwrap();
            assert_eq!(sig, again);
        }
    }

    #[test]
    fn membership_examples() {
        let sig = validate_signature(&raw([0, 0, 0, 1, 0], &[&[1]]), 3).unwrap();
        assert!(gamma_membership(&sig, &v(&[3])).unwrap());
        assert!(gamma_membership(&sig, &v(&[0])).unwrap());
        assert!(!gamma_membership(&sig, &[crate::scalar::ratio(1, 2)]).unwrap());

        let sig = validate_signature(&raw([0, 0, 0, 1, 0], &[&[2]]), 3).unwrap();
        assert!(!gamma_membership(&sig, &v(&[1])).unwrap());
        assert!(gamma_membership(&sig, &v(&[-6])).unwrap());
    }

    #[test]
    fn membership_with_dependent_generators() {
        // lattice generated by 4 and 6 is 2Z
        let sig = validate_signature(&raw([0, 0, 0, 1, 0], &[&[4], &[6]]), 3).unwrap();
        assert!(gamma_membership(&sig, &v(&[2])).unwrap());
        assert!(!gamma_membership(&sig, &v(&[3])).unwrap());
        // rational generators
        let g = vec![vec![crate::scalar::ratio(1, 2), int(0)], vec![int(0), crate::scalar::ratio(1, 3)]];
        let sig = validate_signature(&RawSignature::new([0, 0, 0, 2, 0], g), 3).unwrap();
        assert!(gamma_membership(&sig, &[crate::scalar::ratio(3, 2), crate::scalar::ratio(2, 3)]).unwrap());
        assert!(!gamma_membership(&sig, &[crate::scalar::ratio(1, 4), int(0)]).unwrap());
    }

    #[test]
    fn membership_rejects_bad_support() {
        let sig = validate_signature(&raw([0, 0, 0, 1, 1], &[&[1, 0]]), 3).unwrap();
        assert!(gamma_membership(&sig, &v(&[1, 1])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"ell":[0,0,0,2,0],"generators":[["1","0"],["1/2","3"]]}"#;
        let sig = validate_signature(&RawSignature::from_json(text).unwrap(), 3).unwrap();
        let back = validate_signature(&RawSignature::from_json(&sig.to_json()).unwrap(), 3).unwrap();
        assert_eq!(sig, back);
        assert!(RawSignature::from_json(r#"{"ell":[0,0,0,1,0],"generators":[["a"]]}"#).is_err());
    }
}

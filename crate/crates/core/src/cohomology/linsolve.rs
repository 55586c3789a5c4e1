//! Exact sparse linear solving over the rationals by fraction-free elimination.
//!
//! Rows are cleared to integer form, then eliminated with cross-multiplication
//! and content reduction. Every working row remembers which input rows it was
//! built from, so an inconsistency comes with the input rows that prove it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

/// One equation `sum coeffs[c] * x_c = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRow {
    pub coeffs: Vec<(usize, Scalar)>,
    pub rhs: Scalar,
}

impl SparseRow {
    pub fn new(coeffs: Vec<(usize, Scalar)>, rhs: Scalar) -> Self {
        SparseRow { coeffs, rhs }
    }

    /// Left-hand side evaluated at `x`.
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .fold(Scalar::zero(), |acc, (c, a)| acc + a * &x[*c])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// A solution with every free variable set to zero, and the rank of the system.
    Solution { values: Vec<Scalar>, rank: usize },
    /// Indices of an irreducible infeasible subset of the input rows.
    Inconsistent { witness: Vec<usize> },
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, LinearSolution::Solution { .. })
    }
}

#[derive(Debug, Clone)]
struct IntRow {
    coeffs: BTreeMap<usize, BigInt>,
    rhs: BigInt,
    origin: BTreeSet<usize>,
}

impl IntRow {
    fn from_row(index: usize, row: &SparseRow) -> Self {
        let denom = scalar::common_denominator(
            row.coeffs.iter().map(|(_, a)| a).chain(std::iter::once(&row.rhs)),
        );
        let scale = Scalar::from_integer(denom);
        let mut coeffs = BTreeMap::new();
        for (c, a) in &row.coeffs {
            let v = (a * &scale).to_integer();
            let entry = coeffs.entry(*c).or_insert_with(BigInt::zero);
            *entry += v;
        }
        coeffs.retain(|_, v: &mut BigInt| !v.is_zero());
        let mut r = IntRow {
            coeffs,
            rhs: (&row.rhs * &scale).to_integer(),
            origin: BTreeSet::from([index]),
        };
        r.reduce_content();
        r
    }

    fn reduce_content(&mut self) {
        let g = self
            .coeffs
            .values()
            .chain(std::iter::once(&self.rhs))
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g > BigInt::one() {
            for v in self.coeffs.values_mut() {
                *v /= &g;
            }
            self.rhs /= &g;
        }
    }

    fn lead(&self) -> Option<(usize, &BigInt)> {
        self.coeffs.iter().next().map(|(c, v)| (*c, v))
    }

    /// `self <- p * self - a * pivot` with `p` the pivot's lead and `a` our entry at that column.
    fn eliminate(&mut self, col: usize, pivot: &IntRow) {
        let a = self.coeffs[&col].clone();
        let p = pivot.coeffs[&col].clone();
        let g = a.gcd(&p);
        let (a, p) = (&a / &g, &p / &g);
        for v in self.coeffs.values_mut() {
            *v *= &p;
        }
        self.rhs *= &p;
        for (c, v) in &pivot.coeffs {
            let entry = self.coeffs.entry(*c).or_insert_with(BigInt::zero);
            *entry -= &a * v;
        }
        self.rhs -= &a * &pivot.rhs;
        self.coeffs.retain(|_, v| !v.is_zero());
        self.origin.extend(pivot.origin.iter().copied());
        self.reduce_content();
    }
}

enum Elimination {
    Pivots(Vec<IntRow>),
    Infeasible(BTreeSet<usize>),
}

fn eliminate(rows: &[(usize, &SparseRow)]) -> Elimination {
    let mut pivots: Vec<IntRow> = Vec::new();
    let mut by_col: HashMap<usize, usize> = HashMap::new();
    for (index, row) in rows {
        let mut r = IntRow::from_row(*index, row);
        // clear every column that already has a pivot, smallest first; pivot rows
        // only touch columns at or after their lead, so this terminates
        let mut floor = 0usize;
        loop {
            let next = r
                .coeffs
                .range(floor..)
                .map(|(c, _)| *c)
                .find(|c| by_col.contains_key(c));
            match next {
                Some(c) => {
                    r.eliminate(c, &pivots[by_col[&c]]);
                    floor = c + 1;
                }
                None => break,
            }
        }
        match r.lead() {
            Some((c, _)) => {
                by_col.insert(c, pivots.len());
                pivots.push(r);
            }
            None if !r.rhs.is_zero() => return Elimination::Infeasible(r.origin),
            None => {}
        }
    }
    Elimination::Pivots(pivots)
}

fn is_infeasible(rows: &[SparseRow], subset: &[usize]) -> bool {
    let picked: Vec<(usize, &SparseRow)> = subset.iter().map(|&i| (i, &rows[i])).collect();
    matches!(eliminate(&picked), Elimination::Infeasible(_))
}

/// Solves `rows` over `ncols` unknowns exactly.
///
/// A consistent system yields the solution with free variables at zero. An
/// inconsistent one yields an irreducible infeasible subsystem: dropping any
/// single witness row makes the rest solvable, so it has at most `rank + 1` rows.
pub fn solve_exact_linear(ncols: usize, rows: &[SparseRow]) -> LinearSolution {
    let indexed: Vec<(usize, &SparseRow)> = rows.iter().enumerate().collect();
    match eliminate(&indexed) {
        Elimination::Infeasible(origin) => {
            // deletion filter
            let mut witness: Vec<usize> = origin.into_iter().collect();
            let mut i = 0;
            while i < witness.len() {
                let mut trial = witness.clone();
                trial.remove(i);
                if is_infeasible(rows, &trial) {
                    witness = trial;
                } else {
                    i += 1;
                }
            }
            LinearSolution::Inconsistent { witness }
        }
        Elimination::Pivots(mut pivots) => {
            let rank = pivots.len();
            let mut values = vec![Scalar::zero(); ncols];
            pivots.sort_by_key(|r| std::cmp::Reverse(r.lead().map(|(c, _)| c)));
            for r in &pivots {
                let (lead, a) = r.lead().expect("pivot rows are nonempty");
                let mut acc = Scalar::from_integer(r.rhs.clone());
                for (c, v) in r.coeffs.range(lead + 1..) {
                    acc -= Scalar::from_integer(v.clone()) * &values[*c];
                }
                values[lead] = acc / Scalar::from_integer(a.clone());
            }
            LinearSolution::Solution { values, rank }
        }
    }
}

/// Rank of the coefficient matrix (right-hand sides ignored).
pub fn rank(rows: &[SparseRow]) -> usize {
    let homogeneous: Vec<SparseRow> = rows
        .iter()
        .map(|r| SparseRow::new(r.coeffs.clone(), Scalar::zero()))
        .collect();
    let ncols = rows
        .iter()
        .flat_map(|r| r.coeffs.iter().map(|(c, _)| c + 1))
        .max()
        .unwrap_or(0);
    match solve_exact_linear(ncols, &homogeneous) {
        LinearSolution::Solution { rank, .. } => rank,
        LinearSolution::Inconsistent { .. } => unreachable!("homogeneous systems are consistent"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use rand::{Rng, SeedableRng};

    fn row(coeffs: &[(usize, i64)], rhs: i64) -> SparseRow {
        SparseRow::new(coeffs.iter().map(|&(c, a)| (c, int(a))).collect(), int(rhs))
    }

    #[test]
    fn single_equation() {
        assert_eq!(
            solve_exact_linear(1, &[row(&[(0, 1)], 2)]),
            LinearSolution::Solution { values: vec![int(2)], rank: 1 }
        );
    }

    #[test]
    fn contradictory_pair() {
        let sol = solve_exact_linear(1, &[row(&[(0, 1)], 0), row(&[(0, 1)], 1)]);
        assert_eq!(sol, LinearSolution::Inconsistent { witness: vec![0, 1] });
    }

    #[test]
    fn empty_row_with_nonzero_rhs() {
        let sol = solve_exact_linear(2, &[row(&[(0, 1)], 3), row(&[], 1)]);
        assert_eq!(sol, LinearSolution::Inconsistent { witness: vec![1] });
    }

    #[test]
    fn free_variables_are_zero() {
        let sol = solve_exact_linear(3, &[row(&[(0, 1), (1, 1)], 4), row(&[(2, 2)], 1)]);
        match sol {
            LinearSolution::Solution { values, rank } => {
                assert_eq!(rank, 2);
                assert_eq!(values, vec![int(4), int(0), ratio(1, 2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn witness_is_irreducible() {
        // rows 0,1,2 are consistent and independent; row 4 contradicts 0+1; row 3 is noise
        let rows = vec![
            row(&[(0, 1)], 1),
            row(&[(1, 1)], 1),
            row(&[(2, 1)], 5),
            row(&[(2, 1), (3, 1)], 0),
            row(&[(0, 2), (1, 2)], 3),
        ];
        match solve_exact_linear(4, &rows) {
            LinearSolution::Inconsistent { witness } => {
                assert_eq!(witness, vec![0, 1, 4]);
                for skip in 0..witness.len() {
                    let mut sub = witness.clone();
                    sub.remove(skip);
                    assert!(!is_infeasible(&rows, &sub));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_invertible_systems_solve_by_substitution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let n = 20;
            // unit lower triangular times unit upper triangular is invertible
            let mut lower = vec![vec![Scalar::zero(); n]; n];
            let mut upper = vec![vec![Scalar::zero(); n]; n];
            for i in 0..n {
                lower[i][i] = int(1);
                upper[i][i] = int(1);
                for j in 0..i {
                    lower[i][j] = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                    upper[j][i] = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                }
            }
            let rows: Vec<SparseRow> = (0..n)
                .map(|i| {
                    let coeffs = (0..n)
                        .map(|j| {
                            let v = (0..n).fold(Scalar::zero(), |acc, t| acc + &lower[i][t] * &upper[t][j]);
                            (j, v)
                        })
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    SparseRow::new(coeffs, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
                })
                .collect();
            match solve_exact_linear(n, &rows) {
                LinearSolution::Solution { values, rank } => {
                    assert_eq!(rank, n);
                    for r in &rows {
                        assert_eq!(r.eval(&values), r.rhs);
                    }
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn rank_ignores_rhs() {
        assert_eq!(rank(&[row(&[(0, 1)], 0), row(&[(0, 2)], 1), row(&[(1, 1)], 0)]), 2);
    }
}

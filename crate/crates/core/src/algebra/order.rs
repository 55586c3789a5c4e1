use std::cmp::Ordering;

/// Total order on derivation indices: by level `|mu|`, then by the first
/// coordinate where the two differ.
pub fn compare_deriv_order(mu: &[i64], nu: &[i64]) -> Ordering {
    let level = |v: &[i64]| v.iter().sum::<i64>();
    level(mu)
        .cmp(&level(nu))
        .then_with(|| mu.iter().cmp(nu.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert_eq!(compare_deriv_order(&[2, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(compare_deriv_order(&[0, 1], &[1, 0]), Ordering::Less);
        assert_eq!(compare_deriv_order(&[1, 1], &[1, 1]), Ordering::Equal);
    }
}

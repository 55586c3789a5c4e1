//! Exact rational scalars and the handful of combinatorial helpers built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, WeylError};

/// The ground field: arbitrary-precision rationals.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"-p/q"` or a plain integer.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || WeylError::Parse {
        pos: 0,
        msg: format!("not a rational number: {text:?}"),
    };
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text form: integers print bare, everything else as `p/q`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn factorial(n: u64) -> Scalar {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Scalar::from_integer(acc)
}

/// `1/k!`, read as zero for negative `k`.
pub fn inv_factorial(k: i64) -> Scalar {
    if k < 0 {
        Scalar::zero()
    } else {
        factorial(k as u64).recip()
    }
}

/// Non-negative integer power with `0^0 = 1`.
pub fn pow(base: &Scalar, exp: u64) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Generalized binomial `top (top-1) ... (top-i+1) / i!`, zero for negative `i`.
pub fn binom(top: &Scalar, i: i64) -> Scalar {
    if i < 0 {
        return Scalar::zero();
    }
    let mut acc = Scalar::one();
    for r in 0..i {
        acc *= top - int(r);
    }
    acc / factorial(i as u64)
}

/// Binomial coefficient on integers through the generalized definition.
pub fn binom_int(top: i64, i: i64) -> Scalar {
    binom(&int(top), i)
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    use num_integer::Integer;
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

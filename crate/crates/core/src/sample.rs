//! Seeded random generators for monomials and elements, shared by the
//! self-test suites and the test code.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{monomial_parity, Element, Monomial};
use crate::scalar::{self, Scalar};
use crate::signature::{Signature, Zone};

/// The signature families exercised by the verification suites.
pub const FAMILIES: [[i64; 5]; 5] = [
    [0, 0, 0, 1, 0],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 1, 2],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 2, 0],
];

pub struct Sampler {
    rng: ChaCha8Rng,
    /// Bound on `|k_p|` and `mu_p`.
    pub exp_bound: i64,
    /// Generator multiples for group parts are drawn from `-alpha_bound..=alpha_bound`.
    pub alpha_bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            exp_bound: 3,
            alpha_bound: 3,
        }
    }

    pub fn with_bounds(seed: u64, exp_bound: i64, alpha_bound: i64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            exp_bound,
            alpha_bound,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A group element drawn as an integer combination of the generators.
    pub fn group_element(&mut self, sig: &Signature) -> Vec<Scalar> {
        let mut alpha = vec![Scalar::zero(); sig.len()];
        for g in sig.generators() {
            let c = scalar::int(self.range(-self.alpha_bound, self.alpha_bound));
            for (a, x) in alpha.iter_mut().zip(g) {
                *a += x * &c;
            }
        }
        alpha
    }

    fn exponent(&mut self, zone: Zone) -> i64 {
        let b = self.exp_bound;
        match zone {
            Zone::Polynomial | Zone::PolynomialGraded => self.range(0, b),
            Zone::Laurent => self.range(-b, b),
            Zone::Graded => 0,
            Zone::Odd => self.range(0, 1),
        }
    }

    fn derivation_power(&mut self, zone: Zone) -> i64 {
        match zone {
            Zone::Odd => self.range(0, 1),
            _ => self.range(0, self.exp_bound),
        }
    }

    pub fn monomial(&mut self, sig: &Signature) -> Monomial {
        let alpha = self.group_element(sig);
        let k = (0..sig.len()).map(|p| self.exponent(sig.zone(p))).collect();
        let mu = (0..sig.len())
            .map(|p| self.derivation_power(sig.zone(p)))
            .collect();
        Monomial::new(alpha, k, mu)
    }

    /// A monomial with zero derivation index.
    pub fn function(&mut self, sig: &Signature) -> Monomial {
        self.monomial(sig).function_part()
    }

    /// A monomial of the even subalgebra `W_0` (no odd coordinates).
    pub fn even_monomial(&mut self, sig: &Signature) -> Monomial {
        let mut m = self.monomial(sig);
        for p in sig.odd_start()..sig.len() {
            m.k[p] = 0;
            m.mu[p] = 0;
        }
        m
    }

    /// A monomial of the odd factor `W_1` (only odd coordinates).
    pub fn odd_factor_monomial(&mut self, sig: &Signature) -> Monomial {
        let mut m = Monomial::one(sig.len());
        for p in sig.odd_start()..sig.len() {
            m.k[p] = self.range(0, 1);
            m.mu[p] = self.range(0, 1);
        }
        m
    }

    pub fn coefficient(&mut self) -> Scalar {
        let mut c = 0;
        while c == 0 {
            c = self.range(-4, 4);
        }
        scalar::ratio(c, self.range(1, 3))
    }

    /// A combination of up to `terms` monomials of the requested parity, built
    /// from monomials drawn by `draw`.
    pub fn homogeneous_with(
        &mut self,
        sig: &Signature,
        parity: u8,
        terms: usize,
        mut draw: impl FnMut(&mut Self) -> Monomial,
    ) -> Element {
        let mut e = Element::zero();
        let mut attempts = 0;
        while e.len() < terms && attempts < 64 * terms {
            attempts += 1;
            let mut m = draw(self);
            if monomial_parity(sig, &m) != parity {
                if !flip_parity(sig, &mut m) {
                    continue;
                }
            }
            let c = self.coefficient();
            e.add_term(m, c);
        }
        e
    }

    pub fn homogeneous(&mut self, sig: &Signature, parity: u8, terms: usize) -> Element {
        self.homogeneous_with(sig, parity, terms, |s| s.monomial(sig))
    }

    pub fn parity(&mut self, sig: &Signature) -> u8 {
        if sig.num_odd() == 0 {
            0
        } else {
            self.range(0, 1) as u8
        }
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty choice")
    }
}

/// Toggles one odd coordinate to change parity. Returns false when there is none.
fn flip_parity(sig: &Signature, m: &mut Monomial) -> bool {
    let start = sig.odd_start();
    if start == sig.len() {
        return false;
    }
    m.k[start] = 1 - m.k[start];
    true
}

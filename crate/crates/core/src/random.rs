//! Seeded random distributions with small rational free cumulants.
//!
//! Each word up to the truncation order independently receives a nonzero
//! free cumulant with probability 1/2, drawn as `a / b` with `a` uniform in
//! `-2..=2` and `b` uniform in `{1, 2, 3}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::Distribution;
use crate::error::{domain, Result};
use crate::ncseries::words_up_to;
use crate::Rational;

/// The generator used throughout the test suites.
pub type TestRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random rational, possibly zero.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-2..=2);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(num.into(), den.into())
}

/// A distribution on `k` variables truncated at `order`, given by sparse
/// random free cumulants.
pub fn random_distribution<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    order: usize,
) -> Result<Distribution> {
    if k == 0 || order == 0 {
        return domain(format!("need k >= 1 and order >= 1, got k={k}, order={order}"));
    }
    let mut terms = Vec::new();
    for w in words_up_to(k, order) {
        if rng.gen_bool(0.5) {
            terms.push((w, random_rational(rng)));
        }
    }
    Distribution::from_free_cumulants(k, order, terms)
}

//! Brute-force oracles and proptest strategies shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;
use subord_core::ncseries::words_up_to;
use subord_core::{Distribution, NcSeries, Rational};

/// Every set partition of `{1..n}` as a list of blocks, via restricted
/// growth strings.
pub fn all_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if pos == rgs.len() {
            let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
            let mut parts = vec![Vec::new(); blocks];
            for (i, &b) in rgs.iter().enumerate() {
                parts[b].push(i + 1);
            }
            out.push(parts);
            return;
        }
        for b in 0..=max {
            rgs[pos] = b;
            go(pos + 1, max.max(b + 1), rgs, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    go(1, 1, &mut rgs, &mut out);
    out
}

/// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn is_non_crossing(blocks: &[Vec<usize>]) -> bool {
    for (i, v) in blocks.iter().enumerate() {
        for (j, w) in blocks.iter().enumerate() {
            if i == j {
                continue;
            }
            for &a in v {
                for &c in v {
                    if a >= c {
                        continue;
                    }
                    for &b in w {
                        for &d in w {
                            if a < b && b < c && c < d {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

pub fn brute_force_nc_count(n: usize) -> usize {
    all_set_partitions(n)
        .iter()
        .filter(|p| is_non_crossing(p))
        .count()
}

pub fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

/// Random series over `k` letters truncated at `order`, with small
/// rational coefficients on every word (many of them zero).
pub fn series(k: usize, order: usize) -> impl Strategy<Value = NcSeries> {
    let words = words_up_to(k, order);
    prop::collection::vec(small_rational(), words.len()).prop_map(move |coeffs| {
        NcSeries::from_terms(k, order, words.iter().cloned().zip(coeffs)).unwrap()
    })
}

/// A distribution given by random free cumulants.
pub fn distribution(k: usize, order: usize) -> impl Strategy<Value = Distribution> {
    series(k, order).prop_map(Distribution::from_r_series)
}

/// `(k, order)` within desk scale: `k <= 3`, `order <= 5`, and up to 6
/// for one variable.
pub fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![(1usize..=3, 1usize..=4), Just((1usize, 6usize))]
}

pub fn power() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![q(0, 1), q(1, 3), q(1, 2), q(1, 1), q(2, 1)])
}

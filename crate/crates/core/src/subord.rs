//! The subordination distribution `mu ⊳ nu`.
//!
//! [`boxright`] is the production path: pure series algebra on
//! `R_mu(z_1 (1+M_nu), ..., z_k (1+M_nu)) (1+M_nu)^{-1}`. Every other routine
//! here computes a single coefficient of the same object by an explicit
//! combinatorial sum, and exists to cross-check the production path.
//! Those sums cost Catalan-many terms, so words are capped at
//! [`ORACLE_MAX_LEN`].

use num_traits::{One, Zero};

use crate::dist::{sandwich_series, Distribution};
use crate::error::{domain, Error, Result};
use crate::ncpart::{shared_irreducible, shared_nc, Colouring, NcPartition};
use crate::ncseries::{cf_mixed, words_up_to, NcSeries, Word};
use crate::Rational;

/// Longest word accepted by the partition-sum routes.
pub const ORACLE_MAX_LEN: usize = 8;

/// `mu ⊳ nu` via its R-transform.
pub fn boxright(mu: &Distribution, nu: &Distribution) -> Result<Distribution> {
    mu.check_compatible(nu)?;
    let m_nu = nu.moments();
    let dilated = mu.r_series().dilate_substitute(m_nu)?;
    let inv = m_nu.inv_one_plus();
    let r = dilated.add(&dilated.mul(&inv)?)?;
    Ok(Distribution::from_r_series(r))
}

fn check_oracle_word(mu: &Distribution, nu: &Distribution, word: &Word) -> Result<()> {
    mu.check_compatible(nu)?;
    if word.max_letter() > mu.k() {
        return domain(format!("word {word} has a letter outside 1..={}", mu.k()));
    }
    if word.len() > mu.order() {
        return Err(Error::BeyondTruncation {
            word: word.to_string(),
            order: mu.order(),
        });
    }
    if word.len() > ORACLE_MAX_LEN {
        return domain(format!(
            "partition sums are capped at length {ORACLE_MAX_LEN}, got {word}"
        ));
    }
    Ok(())
}

/// Free cumulant of `mu ⊳ nu` at `word` as a sum over position sets `S`
/// containing both endpoints: `alpha_{w|S}` times the `nu`-moments of the
/// gaps of `S` (an empty gap contributes 1).
pub fn boxright_r_subsets(mu: &Distribution, nu: &Distribution, word: &Word) -> Result<Rational> {
    check_oracle_word(mu, nu, word)?;
    let n = word.len();
    let alpha = mu.r_series();
    if n == 1 {
        return Ok(alpha.get(word));
    }
    let mut total = Rational::zero();
    // Interior positions 2..n-1 are free.
    for mask in 0u32..1u32 << (n - 2) {
        let mut members = vec![1];
        members.extend((0..n - 2).filter(|i| mask >> i & 1 == 1).map(|i| i + 2));
        members.push(n);
        let a = alpha.get(&word.restrict(&members));
        if a.is_zero() {
            continue;
        }
        let mut term = a;
        for pair in members.windows(2) {
            if pair[1] > pair[0] + 1 {
                term *= nu.moments().get(&word.slice(pair[0] + 1, pair[1] - 1));
            }
        }
        total += term;
    }
    Ok(total)
}

/// Free cumulant of `mu ⊳ nu` at `word` as a sum over `pi << 1_n` with the
/// outer block reading `R_mu` and inner blocks reading `R_nu`.
pub fn boxright_r_partitions(
    mu: &Distribution,
    nu: &Distribution,
    word: &Word,
) -> Result<Rational> {
    check_oracle_word(mu, nu, word)?;
    sum_coloured(
        word,
        &shared_irreducible(word.len())?,
        mu.r_series(),
        nu.r_series(),
        |p| Ok(p.outer_colouring()),
    )
}

/// `Cf_{w; rho}(R_{mu ⊳ nu})` as a sum over `pi << rho` where the
/// `rho`-special blocks read `R_mu` and the others read `R_nu`.
pub fn boxright_r_generalized(
    mu: &Distribution,
    nu: &Distribution,
    word: &Word,
    rho: &NcPartition,
) -> Result<Rational> {
    check_oracle_word(mu, nu, word)?;
    if rho.n() != word.len() {
        return Err(Error::Mismatch(format!(
            "partition of {} elements against word {word}",
            rho.n()
        )));
    }
    let below: Vec<NcPartition> = shared_nc(word.len())?
        .iter()
        .filter(|p| p.ll(rho).unwrap_or(false))
        .cloned()
        .collect();
    sum_coloured(word, &below, mu.r_series(), nu.r_series(), |p| {
        p.special_colouring(rho)
    })
}

/// Boolean cumulant of `mu ⊳ nu` at `word`: sum over `pi << 1_n` with the
/// outer block reading `R_mu` and inner blocks reading `R_mu + R_nu`.
pub fn boxright_eta(mu: &Distribution, nu: &Distribution, word: &Word) -> Result<Rational> {
    check_oracle_word(mu, nu, word)?;
    let both = mu.r_series().add(nu.r_series())?;
    sum_coloured(
        word,
        &shared_irreducible(word.len())?,
        mu.r_series(),
        &both,
        |p| Ok(p.outer_colouring()),
    )
}

/// The same Boolean cumulant with the inner factors expanded: every
/// colouring of `pi << 1_n` that puts colour 1 on the outer block.
pub fn boxright_eta_expanded(
    mu: &Distribution,
    nu: &Distribution,
    word: &Word,
) -> Result<Rational> {
    check_oracle_word(mu, nu, word)?;
    let mut total = Rational::zero();
    for p in shared_irreducible(word.len())?.iter() {
        let outer = p.outer_blocks();
        for c in Colouring::all(p.len()) {
            if outer.iter().all(|&b| c.colour(b) == 1) {
                total += cf_mixed(word, p, &c, mu.r_series(), nu.r_series())?;
            }
        }
    }
    Ok(total)
}

/// Moment of `mu ⊳ nu` at `word`: sum over all of `NC(n)`, outer blocks
/// reading `R_mu`, inner blocks `R_mu + R_nu`.
pub fn boxright_moments(mu: &Distribution, nu: &Distribution, word: &Word) -> Result<Rational> {
    check_oracle_word(mu, nu, word)?;
    let both = mu.r_series().add(nu.r_series())?;
    sum_coloured(
        word,
        &shared_nc(word.len())?,
        mu.r_series(),
        &both,
        |p| Ok(p.outer_colouring()),
    )
}

/// Moment of `mu ⊳ nu` as a sum over pairs `(pi, c)` with every outer
/// block coloured 1.
pub fn boxright_moments_expanded(
    mu: &Distribution,
    nu: &Distribution,
    word: &Word,
) -> Result<Rational> {
    check_oracle_word(mu, nu, word)?;
    let mut total = Rational::zero();
    for p in shared_nc(word.len())?.iter() {
        let outer = p.outer_blocks();
        for c in Colouring::all(p.len()) {
            if outer.iter().all(|&b| c.colour(b) == 1) {
                total += cf_mixed(word, p, &c, mu.r_series(), nu.r_series())?;
            }
        }
    }
    Ok(total)
}

fn sum_coloured(
    word: &Word,
    parts: &[NcPartition],
    f1: &NcSeries,
    f2: &NcSeries,
    colouring: impl Fn(&NcPartition) -> Result<Colouring>,
) -> Result<Rational> {
    let mut total = Rational::zero();
    for p in parts {
        total += cf_mixed(word, p, &colouring(p)?, f1, f2)?;
    }
    Ok(total)
}

/// Evaluates a per-word route on every word up to the common order.
pub fn series_by_route<F>(mu: &Distribution, nu: &Distribution, route: F) -> Result<NcSeries>
where
    F: Fn(&Distribution, &Distribution, &Word) -> Result<Rational>,
{
    mu.check_compatible(nu)?;
    let mut terms = Vec::new();
    for w in words_up_to(mu.k(), mu.order()) {
        let v = route(mu, nu, &w)?;
        terms.push((w, v));
    }
    NcSeries::from_terms(mu.k(), mu.order(), terms)
}

/// Subordination distribution of `nu^{⊞p}` with respect to `nu`, i.e.
/// `nu^{⊞(p-1)} ⊳ nu`, for rational `p >= 1`.
pub fn subordination_of_power(nu: &Distribution, p: &Rational) -> Result<Distribution> {
    if *p < Rational::one() {
        return domain(format!("subordination of powers needs p >= 1, got {p}"));
    }
    let mu = nu.boxplus_power(&(p - Rational::one()))?;
    boxright(&mu, nu)
}

/// `γ ⊳ nu` read off directly: `R = sum_i z_i (1 + M_nu) z_i`.
pub fn gamma_boxright(nu: &Distribution) -> Distribution {
    Distribution::from_r_series(sandwich_series(nu.moments()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{delta, point_mass, semicircular};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ones(n: usize) -> Word {
        Word::new(&vec![1; n], 1).unwrap()
    }

    #[test]
    fn neutral_elements() {
        let mu = Distribution::from_free_cumulants(
            2,
            4,
            [
                (Word::new(&[1], 2).unwrap(), q(1, 1)),
                (Word::new(&[1, 2], 2).unwrap(), q(-1, 2)),
                (Word::new(&[2, 2, 1], 2).unwrap(), q(2, 3)),
            ],
        )
        .unwrap();
        let d = delta(2, 4).unwrap();
        assert_eq!(boxright(&mu, &d).unwrap(), mu);
        assert_eq!(boxright(&d, &mu).unwrap(), d);
        assert_eq!(boxright(&mu, &mu).unwrap(), mu.bb());
    }

    #[test]
    fn point_mass_is_fixed() {
        let one = point_mass(1, 6, &q(1, 1)).unwrap();
        assert_eq!(boxright(&one, &one).unwrap(), one);
        for n in 1..=6 {
            assert_eq!(boxright_moments(&one, &one, &ones(n)).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn semicircle_with_itself() {
        let g = semicircular(1, 6, &q(1, 1)).unwrap();
        let w4 = ones(4);
        assert_eq!(boxright_r_subsets(&g, &g, &w4).unwrap(), q(1, 1));
        assert_eq!(boxright_r_partitions(&g, &g, &w4).unwrap(), q(1, 1));
        assert_eq!(boxright_moments(&g, &g, &ones(2)).unwrap(), q(1, 1));
        assert_eq!(boxright_moments(&g, &g, &w4).unwrap(), q(3, 1));
        assert_eq!(boxright_moments_expanded(&g, &g, &w4).unwrap(), q(3, 1));
        let gg = boxright(&g, &g).unwrap();
        assert_eq!(gg.moment(&w4).unwrap(), q(3, 1));
    }

    #[test]
    fn length_one_reads_alpha() {
        let mu = point_mass(1, 3, &q(5, 2)).unwrap();
        let nu = semicircular(1, 3, &q(1, 1)).unwrap();
        assert_eq!(boxright_r_subsets(&mu, &nu, &ones(1)).unwrap(), q(5, 2));
        assert_eq!(boxright_r_partitions(&mu, &nu, &ones(1)).unwrap(), q(5, 2));
    }

    #[test]
    fn delta_kills_everything() {
        let d = delta(1, 5).unwrap();
        let g = semicircular(1, 5, &q(1, 1)).unwrap();
        for n in 1..=5 {
            assert!(boxright_eta(&d, &g, &ones(n)).unwrap().is_zero());
            assert!(boxright_moments(&d, &g, &ones(n)).unwrap().is_zero());
        }
        // nu = δ leaves only S = {1..n}.
        for n in 1..=5 {
            assert_eq!(
                boxright_r_subsets(&g, &d, &ones(n)).unwrap(),
                g.r_series().get(&ones(n))
            );
        }
    }

    #[test]
    fn generalized_at_extremes() {
        let mu = point_mass(1, 4, &q(2, 1)).unwrap();
        let nu = semicircular(1, 4, &q(1, 3)).unwrap();
        let w = ones(4);
        assert_eq!(
            boxright_r_generalized(&mu, &nu, &w, &NcPartition::one(4)).unwrap(),
            boxright_r_partitions(&mu, &nu, &w).unwrap()
        );
        assert_eq!(
            boxright_r_generalized(&mu, &nu, &w, &NcPartition::zero(4)).unwrap(),
            q(16, 1)
        );
    }

    #[test]
    fn powers_and_gamma() {
        let g = semicircular(1, 6, &q(1, 1)).unwrap();
        assert_eq!(subordination_of_power(&g, &q(1, 1)).unwrap(), delta(1, 6).unwrap());
        assert_eq!(subordination_of_power(&g, &q(2, 1)).unwrap(), g.bb());
        let three = subordination_of_power(&g, &q(3, 1)).unwrap();
        assert_eq!(three.r_series(), &g.eta_series().scale(&q(2, 1)));
        assert!(subordination_of_power(&g, &q(1, 2)).is_err());

        let gd = gamma_boxright(&delta(1, 6).unwrap());
        assert_eq!(gd, g);
        assert_eq!(gamma_boxright(&g).r_series(), g.eta_series());
    }

    #[test]
    fn oracle_word_checks() {
        let g = semicircular(1, 4, &q(1, 1)).unwrap();
        assert!(boxright_moments(&g, &g, &ones(5)).is_err());
        let g2 = semicircular(2, 4, &q(1, 1)).unwrap();
        assert!(boxright_moments(&g, &g2, &ones(2)).is_err());
        assert!(boxright_r_subsets(&g, &g, &Word::new(&[2], 2).unwrap()).is_err());
    }
}

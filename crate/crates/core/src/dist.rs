//! Distributions on polynomials in `k` noncommuting variables, truncated at
//! order `N`, together with the moment / free cumulant / Boolean cumulant
//! dictionary and the convolution-type transformations built on it.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::ncpart::{shared_intervals, shared_irreducible, shared_nc, NcPartition};
use crate::ncseries::{cf_partition, words_of_len, NcSeries, Word};
use crate::subord;
use crate::Rational;

/// A distribution in `D_alg(k)` known through its moments of order `1..=N`.
///
/// Moments are the ground truth; the R-transform (free cumulants) and the
/// eta-series (Boolean cumulants) are derived when the value is built and
/// never change afterwards.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Distribution {
    moments: NcSeries,
    rseries: NcSeries,
    eseries: NcSeries,
}

impl Distribution {
    pub fn from_moment_series(moments: NcSeries) -> Self {
        let rseries = r_from_moments(&moments);
        let eseries = eta_from_moments(&moments);
        Distribution {
            moments,
            rseries,
            eseries,
        }
    }

    /// Moments come from iterating `M <- R(z_1 (1+M), ..., z_k (1+M))`;
    /// [`moments_via_nc_sum`] is the independent check.
    pub fn from_r_series(rseries: NcSeries) -> Self {
        let moments = moments_from_r_by_recursion(&rseries);
        let eseries = eta_from_moments(&moments);
        Distribution {
            moments,
            rseries,
            eseries,
        }
    }

    /// Moments are summed over interval partitions of the Boolean cumulants.
    pub fn from_eta_series(eseries: NcSeries) -> Self {
        let moments = moments_via_interval_sum(&eseries);
        let rseries = r_from_moments(&moments);
        Distribution {
            moments,
            rseries,
            eseries,
        }
    }

    pub fn from_moments<I>(k: usize, order: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        Ok(Distribution::from_moment_series(NcSeries::from_terms(
            k, order, coeffs,
        )?))
    }

    pub fn from_free_cumulants<I>(k: usize, order: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        Ok(Distribution::from_r_series(NcSeries::from_terms(
            k, order, coeffs,
        )?))
    }

    pub fn from_boolean_cumulants<I>(k: usize, order: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        Ok(Distribution::from_eta_series(NcSeries::from_terms(
            k, order, coeffs,
        )?))
    }

    pub fn k(&self) -> usize {
        self.moments.k()
    }

    pub fn order(&self) -> usize {
        self.moments.order()
    }

    pub fn moments(&self) -> &NcSeries {
        &self.moments
    }

    pub fn r_series(&self) -> &NcSeries {
        &self.rseries
    }

    pub fn eta_series(&self) -> &NcSeries {
        &self.eseries
    }

    pub fn moment(&self, w: &Word) -> Result<Rational> {
        self.moments.coeff(w)
    }

    pub(crate) fn check_compatible(&self, other: &Distribution) -> Result<()> {
        if self.k() != other.k() || self.order() != other.order() {
            return Err(Error::Mismatch(format!(
                "distributions over (k={}, N={}) and (k={}, N={})",
                self.k(),
                self.order(),
                other.k(),
                other.order()
            )));
        }
        Ok(())
    }

    /// Boolean cumulants recomputed from the free cumulants by summing over
    /// `pi << 1_n`. Independent of the series division used at construction.
    pub fn eta_from_r(&self) -> NcSeries {
        let r = &self.rseries;
        let mut out = BTreeMap::new();
        for n in 1..=self.order() {
            let parts = shared_irreducible(n).expect("order within ceiling");
            for w in words_of_len(self.k(), n) {
                let v = sum_partitions(&w, &parts, r);
                out.insert(w, v);
            }
        }
        NcSeries::from_raw(self.k(), self.order(), out)
    }

    /// `mu ⊞ nu`: free cumulants add.
    pub fn boxplus(&self, other: &Distribution) -> Result<Distribution> {
        self.check_compatible(other)?;
        Ok(Distribution::from_r_series(self.rseries.add(&other.rseries)?))
    }

    /// `mu^{⊞t}` for rational `t >= 0`.
    pub fn boxplus_power(&self, t: &Rational) -> Result<Distribution> {
        check_power(t)?;
        Ok(Distribution::from_r_series(self.rseries.scale(t)))
    }

    /// `mu ⊎ nu`: Boolean cumulants add.
    pub fn uplus(&self, other: &Distribution) -> Result<Distribution> {
        self.check_compatible(other)?;
        Ok(Distribution::from_eta_series(
            self.eseries.add(&other.eseries)?,
        ))
    }

    pub fn uplus_power(&self, t: &Rational) -> Result<Distribution> {
        check_power(t)?;
        Ok(Distribution::from_eta_series(self.eseries.scale(t)))
    }

    /// Boolean Bercovici-Pata bijection: the result has `R = eta_mu`.
    pub fn bb(&self) -> Distribution {
        Distribution::from_r_series(self.eseries.clone())
    }

    /// `B_t(mu) = (mu^{⊞(1+t)})^{⊎ 1/(1+t)}`.
    pub fn bb_t(&self, t: &Rational) -> Result<Distribution> {
        check_power(t)?;
        let s = Rational::one() + t;
        self.boxplus_power(&s)?.uplus_power(&s.recip())
    }

    /// The distribution whose eta-series is `R_mu`.
    pub fn bb_inverse(&self) -> Distribution {
        Distribution::from_eta_series(self.rseries.clone())
    }

    pub fn bb_t_inverse(&self, t: &Rational) -> Result<Distribution> {
        check_power(t)?;
        let s = Rational::one() + t;
        self.uplus_power(&s)?.boxplus_power(&s.recip())
    }

    /// `Phi(nu)`: eta-series `sum_i z_i (1 + M_nu) z_i`.
    pub fn phi(&self) -> Distribution {
        Distribution::from_eta_series(sandwich_series(&self.moments))
    }

    /// `Phi[rho, psi] = B^{-1}(rho ⊳ psi)`.
    pub fn phi2(&self, psi: &Distribution) -> Result<Distribution> {
        Ok(subord::boxright(self, psi)?.bb_inverse())
    }

    /// First word (in word order) where the moments differ.
    pub fn first_difference(&self, other: &Distribution) -> Option<Word> {
        self.moments.first_difference(&other.moments)
    }
}

/// `δ`: every moment is zero.
pub fn delta(k: usize, order: usize) -> Result<Distribution> {
    let zero = NcSeries::zero(k, order)?;
    Ok(Distribution {
        moments: zero.clone(),
        rseries: zero.clone(),
        eseries: zero,
    })
}

/// One-variable point mass at `c`: `R = c z`.
pub fn point_mass(k: usize, order: usize, c: &Rational) -> Result<Distribution> {
    if k != 1 {
        return domain(format!("point masses are one-variable, got k = {k}"));
    }
    let r = NcSeries::from_terms(1, order, [(Word::new(&[1], 1)?, c.clone())])?;
    Ok(Distribution::from_r_series(r))
}

/// Free family of `k` centred semicircular elements of variance `t`:
/// `R = t (z_1^2 + ... + z_k^2)`.
pub fn semicircular(k: usize, order: usize, t: &Rational) -> Result<Distribution> {
    if !t.is_positive() {
        return domain(format!("semicircular variance must be positive, got {t}"));
    }
    let mut r = NcSeries::zero(k, order)?;
    if order >= 2 {
        for i in 1..=k {
            r.set(Word::new(&[i, i], k)?, t.clone())?;
        }
    }
    Ok(Distribution::from_r_series(r))
}

fn check_power(t: &Rational) -> Result<()> {
    if t.is_negative() {
        return domain(format!("convolution powers need t >= 0, got {t}"));
    }
    Ok(())
}

/// `sum_i z_i (1 + f) z_i`, truncated at the order of `f`.
pub(crate) fn sandwich_series(f: &NcSeries) -> NcSeries {
    let (k, order) = (f.k(), f.order());
    let mut out = BTreeMap::new();
    if order >= 2 {
        for i in 1..=k as u8 {
            out.insert(Word::from_raw(&[i, i]), Rational::one());
            for (w, v) in f.terms() {
                if w.len() + 2 > order {
                    break;
                }
                let mut letters = vec![i];
                letters.extend_from_slice(w.letters());
                letters.push(i);
                out.insert(Word::from_raw(&letters), v.clone());
            }
        }
    }
    NcSeries::from_raw(k, order, out)
}

fn sum_partitions(w: &Word, parts: &[NcPartition], f: &NcSeries) -> Rational {
    parts.iter().fold(Rational::zero(), |acc, p| {
        acc + cf_partition(w, p, f).expect("word and partition sizes agree")
    })
}

/// Moment-cumulant formula: moments as sums over `NC(n)` of products of
/// free cumulants.
pub fn moments_via_nc_sum(r: &NcSeries) -> NcSeries {
    let mut out = BTreeMap::new();
    for n in 1..=r.order() {
        let parts = shared_nc(n).expect("order within ceiling");
        for w in words_of_len(r.k(), n) {
            let v = sum_partitions(&w, &parts, r);
            out.insert(w, v);
        }
    }
    NcSeries::from_raw(r.k(), r.order(), out)
}

/// Boolean moment-cumulant formula: sums over interval partitions.
pub fn moments_via_interval_sum(eta: &NcSeries) -> NcSeries {
    let mut out = BTreeMap::new();
    for n in 1..=eta.order() {
        let parts = shared_intervals(n).expect("order within ceiling");
        for w in words_of_len(eta.k(), n) {
            let v = sum_partitions(&w, &parts, eta);
            out.insert(w, v);
        }
    }
    NcSeries::from_raw(eta.k(), eta.order(), out)
}

/// Solves `R(z_1 (1+M), ..., z_k (1+M)) = M` for `R` degree by degree: the
/// degree-n part of `R` is the degree-n part of `M` minus what the
/// lower-degree part of `R` already produces.
pub fn r_from_moments(m: &NcSeries) -> NcSeries {
    let mut r = NcSeries::zero(m.k(), m.order()).expect("valid shape");
    for n in 1..=m.order() {
        let produced = r.dilate_substitute(m).expect("same shape");
        let mut next: BTreeMap<Word, Rational> = r.raw().clone();
        for (w, v) in m.raw().range(first_word(n)..) {
            if w.len() > n {
                break;
            }
            next.insert(w.clone(), v.clone());
        }
        for (w, v) in produced.raw().range(first_word(n)..) {
            if w.len() > n {
                break;
            }
            *next.entry(w.clone()).or_insert_with(Rational::zero) -= v;
        }
        r = NcSeries::from_raw(m.k(), m.order(), next);
    }
    r
}

/// Iterates `M <- R(z_1 (1+M), ..., z_k (1+M))`; pass `n` fixes degree `n`.
pub fn moments_from_r_by_recursion(r: &NcSeries) -> NcSeries {
    let mut m = NcSeries::zero(r.k(), r.order()).expect("valid shape");
    for _ in 0..r.order() {
        m = r.dilate_substitute(&m).expect("same shape");
    }
    m
}

/// `eta = M (1 + M)^{-1}`.
pub fn eta_from_moments(m: &NcSeries) -> NcSeries {
    let inv = m.inv_one_plus();
    m.add(&m.mul(&inv).expect("same shape")).expect("same shape")
}

/// `M = eta (1 - eta)^{-1}`.
pub fn moments_from_eta(eta: &NcSeries) -> NcSeries {
    let inv = eta.neg().inv_one_plus();
    eta.add(&eta.mul(&inv).expect("same shape"))
        .expect("same shape")
}

fn first_word(n: usize) -> Word {
    Word::from_raw(&vec![0u8; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn z(k: usize, order: usize, terms: &[(&[usize], Rational)]) -> NcSeries {
        NcSeries::from_terms(
            k,
            order,
            terms
                .iter()
                .map(|(l, v)| (Word::new(l, k).unwrap(), v.clone())),
        )
        .unwrap()
    }

    fn powers(order: usize, f: impl Fn(usize) -> Rational) -> NcSeries {
        let terms: Vec<(Vec<usize>, Rational)> =
            (1..=order).map(|n| (vec![1; n], f(n))).collect();
        NcSeries::from_terms(
            1,
            order,
            terms.into_iter().map(|(l, v)| (Word::new(&l, 1).unwrap(), v)),
        )
        .unwrap()
    }

    #[test]
    fn semicircle_moments_are_catalan() {
        let g = semicircular(1, 6, &q(1, 1)).unwrap();
        let catalan = [0, 1, 0, 2, 0, 5];
        assert_eq!(g.moments(), &powers(6, |n| q(catalan[n - 1], 1)));
        assert_eq!(
            g.eta_series(),
            &z(1, 6, &[(&[1, 1], q(1, 1)), (&[1, 1, 1, 1], q(1, 1)), (&[1; 6], q(2, 1))])
        );
        assert_eq!(&g.eta_from_r(), g.eta_series());
    }

    #[test]
    fn point_masses() {
        let one = point_mass(1, 6, &q(1, 1)).unwrap();
        assert_eq!(one.moments(), &powers(6, |_| q(1, 1)));
        let two = one.boxplus(&one).unwrap();
        assert_eq!(two.moments(), &powers(6, |n| q(1 << n, 1)));
        assert!(point_mass(2, 4, &q(1, 1)).is_err());
    }

    #[test]
    fn delta_is_all_zero() {
        let d = Distribution::from_moments(2, 4, []).unwrap();
        assert!(d.r_series().is_zero() && d.eta_series().is_zero());
        assert_eq!(d, delta(2, 4).unwrap());
        assert!(d.eta_from_r().is_zero());
    }

    #[test]
    fn boolean_bernoulli_sum() {
        let b = Distribution::from_boolean_cumulants(1, 4, [(Word::new(&[1, 1], 1).unwrap(), q(1, 1))])
            .unwrap();
        let sum = b.uplus(&b).unwrap();
        assert_eq!(sum.eta_series(), &z(1, 4, &[(&[1, 1], q(2, 1))]));
        assert_eq!(sum.moment(&Word::new(&[1, 1], 1).unwrap()).unwrap(), q(2, 1));
        assert_eq!(sum.moment(&Word::new(&[1; 4], 1).unwrap()).unwrap(), q(4, 1));
        let d = delta(1, 4).unwrap();
        assert_eq!(d.uplus(&b).unwrap(), b);
        assert_eq!(b.uplus_power(&q(1, 1)).unwrap(), b);
    }

    #[test]
    fn powers_reject_negative_exponents() {
        let g = semicircular(2, 4, &q(1, 1)).unwrap();
        assert!(g.boxplus_power(&q(-1, 2)).is_err());
        assert!(g.uplus_power(&q(-1, 1)).is_err());
        assert!(g.bb_t(&q(-1, 3)).is_err());
        assert_eq!(g.boxplus_power(&q(0, 1)).unwrap(), delta(2, 4).unwrap());
        assert_eq!(g.uplus_power(&q(0, 1)).unwrap(), delta(2, 4).unwrap());
        assert!(semicircular(2, 4, &q(0, 1)).is_err());
    }

    #[test]
    fn semicircular_family_is_a_power() {
        let g = semicircular(2, 5, &q(1, 1)).unwrap();
        for t in [q(1, 2), q(2, 1), q(7, 3)] {
            assert_eq!(g.boxplus_power(&t).unwrap(), semicircular(2, 5, &t).unwrap());
        }
    }

    #[test]
    fn bernoulli_bijection_of_semicircle() {
        let g = semicircular(1, 6, &q(1, 1)).unwrap();
        let b = g.bb();
        assert_eq!(b.r_series(), g.eta_series());
        let m = b.moments();
        assert_eq!(m.coeff(&Word::new(&[1, 1], 1).unwrap()).unwrap(), q(1, 1));
        assert_eq!(m.coeff(&Word::new(&[1; 4], 1).unwrap()).unwrap(), q(3, 1));
        assert_eq!(m.coeff(&Word::new(&[1; 6], 1).unwrap()).unwrap(), q(13, 1));
        assert_eq!(g.bb_t(&q(1, 1)).unwrap(), b);
        assert_eq!(b.bb_inverse(), g);
    }

    #[test]
    fn phi_examples() {
        let d = delta(1, 6).unwrap();
        let p = d.phi();
        assert_eq!(p.eta_series(), &z(1, 6, &[(&[1, 1], q(1, 1))]));
        assert_eq!(p.moments(), &powers(6, |n| q((n % 2 == 0) as i64, 1)));

        let nu = Distribution::from_free_cumulants(
            2,
            4,
            [
                (Word::new(&[1], 2).unwrap(), q(1, 2)),
                (Word::new(&[2, 1], 2).unwrap(), q(-1, 3)),
            ],
        )
        .unwrap();
        let eta = nu.phi();
        let eta = eta.eta_series();
        for i in 1..=2 {
            for j in 1..=2 {
                let wij = Word::new(&[i, j], 2).unwrap();
                assert_eq!(eta.coeff(&wij).unwrap(), q((i == j) as i64, 1));
                let wiji = Word::new(&[i, j, i], 2).unwrap();
                assert_eq!(
                    eta.coeff(&wiji).unwrap(),
                    nu.moment(&Word::new(&[j], 2).unwrap()).unwrap()
                );
            }
            assert!(eta.coeff(&Word::new(&[i], 2).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn recursion_and_partition_sums_agree() {
        let r = z(
            2,
            5,
            &[
                (&[1], q(1, 2)),
                (&[1, 2], q(-2, 1)),
                (&[2, 2, 1], q(1, 3)),
                (&[1, 2, 1, 2], q(3, 1)),
                (&[2, 1, 1, 1, 2], q(-1, 2)),
            ],
        );
        let m = moments_via_nc_sum(&r);
        assert_eq!(moments_from_r_by_recursion(&r), m);
        assert_eq!(r_from_moments(&m), r);
        let eta = eta_from_moments(&m);
        assert_eq!(moments_from_eta(&eta), m);
        assert_eq!(moments_via_interval_sum(&eta), m);
    }
}

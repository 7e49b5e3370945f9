//! One-variable Cauchy transforms at infinity, as truncated Laurent series.
//!
//! Everything is expanded in `w = 1/z`:
//!
//! * `G(z) = sum_{j>=1} g_j z^{-j}` is a [`LaurentTail`] storing `g_1..g_{N+1}`;
//! * `F(z) = 1/G(z) = z (f_0 + f_1 w + ... + f_N w^N)` is a [`Reciprocal`];
//! * `K(z) = 1/z + a_0 + a_1 z + ... + a_{N-1} z^{N-1}` is a [`KTransform`],
//!   the compositional inverse of `G`.
//!
//! These routines share no code with the multi-variable moment-cumulant
//! machinery, so agreement between the two is a genuine cross-check.

use num_traits::{One, Zero};

use crate::dist::Distribution;
use crate::error::{domain, Result};
use crate::ncseries::{NcSeries, Word};
use crate::subord::{boxright, subordination_of_power};
use crate::Rational;

/// `G(z) = sum_{j=1}^{N+1} g_j z^{-j} + O(z^{-N-2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail {
    coeffs: Vec<Rational>,
}

impl LaurentTail {
    /// Builds from `g_1..g_{N+1}`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return domain("a Laurent tail needs g_1 and at least one further coefficient");
        }
        Ok(LaurentTail { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `g_j` for `1 <= j <= N+1`.
    pub fn g(&self, j: usize) -> &Rational {
        &self.coeffs[j - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Smallest `j` with `g_j` differing from `other`.
    pub fn first_difference(&self, other: &LaurentTail) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
            .or_else(|| (self.coeffs.len() != other.coeffs.len()).then_some(1))
    }

    fn check_normalized(&self) -> Result<()> {
        if !self.coeffs[0].is_one() {
            return domain(format!("expected g_1 = 1, got {}", self.coeffs[0]));
        }
        Ok(())
    }
}

/// `F(z) = z (f_0 + f_1 z^{-1} + ... + f_N z^{-N})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reciprocal {
    coeffs: Vec<Rational>,
}

impl Reciprocal {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs[0].is_one() {
            return domain("a reciprocal transform must start with f_0 = 1");
        }
        Ok(Reciprocal { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f_j`, the coefficient of `z^{1-j}`.
    pub fn f(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The identity map `F(z) = z`.
    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        Reciprocal { coeffs }
    }
}

/// `K(z) = 1/z + a_0 + a_1 z + ... + a_{N-1} z^{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTransform {
    coeffs: Vec<Rational>,
}

impl KTransform {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_j`, the coefficient of `z^j`.
    pub fn a(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }
}

fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a^{-1}` for a power series with `a_0 = 1`.
fn inv_trunc(a: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    out[0] = Rational::one();
    for n in 1..len {
        let mut acc = Rational::zero();
        for i in 1..=n.min(a.len() - 1) {
            acc -= &a[i] * &out[n - i];
        }
        out[n] = acc;
    }
    out
}

/// `sum_{j>=1} g_j w^j s^{-j}` truncated to `w^1..w^len`, with `s_0 = 1`.
/// Index 0 of the result holds the `w^1` coefficient.
fn compose_tail(g: &[Rational], s: &[Rational], len: usize) -> Vec<Rational> {
    let s_inv = inv_trunc(s, len);
    let mut power = vec![Rational::one()];
    let mut out = vec![Rational::zero(); len];
    for (j, gj) in g.iter().enumerate().take(len) {
        power = mul_trunc(&power, &s_inv, len - j);
        if gj.is_zero() {
            continue;
        }
        for (i, c) in power.iter().enumerate() {
            out[i + j] += gj * c;
        }
    }
    out
}

fn require_one_variable(d: &Distribution) -> Result<()> {
    if d.k() != 1 {
        return domain(format!("one-variable routine called with k = {}", d.k()));
    }
    Ok(())
}

/// `G(z) = (1 + M(1/z)) / z`.
pub fn cauchy_from_moments(d: &Distribution) -> Result<LaurentTail> {
    require_one_variable(d)?;
    let n = d.order();
    let mut coeffs = vec![Rational::one()];
    for j in 1..=n {
        coeffs.push(d.moments().coeff(&Word::new(&vec![1; j], 1)?)?);
    }
    LaurentTail::new(coeffs)
}

/// `F = 1/G`.
pub fn reciprocal(g: &LaurentTail) -> Result<Reciprocal> {
    g.check_normalized()?;
    Reciprocal::new(inv_trunc(&g.coeffs, g.coeffs.len()))
}

/// `F(z) = z (1 - eta(1/z))`.
pub fn reciprocal_from_eta(d: &Distribution) -> Result<Reciprocal> {
    require_one_variable(d)?;
    let mut coeffs = vec![Rational::one()];
    for j in 1..=d.order() {
        coeffs.push(-d.eta_series().coeff(&Word::new(&vec![1; j], 1)?)?);
    }
    Reciprocal::new(coeffs)
}

/// The compositional inverse of `G`, found degree by degree.
///
/// With `R(z) = a_0 z + a_1 z^2 + ...`, `G(K(z)) = sum_j g_j z^j (1+R)^{-j}`
/// and the coefficient of `z^m` there is `-a_{m-2}` plus terms in
/// `a_0..a_{m-3}`.
pub fn k_transform(g: &LaurentTail) -> Result<KTransform> {
    g.check_normalized()?;
    let n = g.order();
    // s = 1 + R, indexed by powers of z.
    let mut s = vec![Rational::zero(); n + 1];
    s[0] = Rational::one();
    // Each step reads the entries written before it.
    #[allow(clippy::manual_memcpy)]
    for m in 2..=n + 1 {
        let current = compose_tail(&g.coeffs, &s, m);
        s[m - 1] = current[m - 1].clone();
    }
    Ok(KTransform {
        coeffs: s[1..].to_vec(),
    })
}

/// The free cumulants `r_n = a_{n-1}` as a one-variable R-series.
pub fn r_from_k(k: &KTransform) -> Result<NcSeries> {
    let n = k.order();
    let terms = (1..=n)
        .map(|j| Ok((Word::new(&vec![1; j], 1)?, k.coeffs[j - 1].clone())))
        .collect::<Result<Vec<_>>>()?;
    NcSeries::from_terms(1, n, terms)
}

/// `G ∘ F` as a Laurent tail of the same order.
pub fn compose(g: &LaurentTail, f: &Reciprocal) -> Result<LaurentTail> {
    if g.order() != f.order() {
        return domain(format!(
            "composing tails of orders {} and {}",
            g.order(),
            f.order()
        ));
    }
    LaurentTail::new(compose_tail(&g.coeffs, &f.coeffs, g.coeffs.len()))
}

/// Solves `G_target = G ∘ ω` for the reciprocal-type map `ω`, degree by
/// degree: `f_m` enters the `w^{m+1}` coefficient of `G ∘ ω` as `-g_1 f_m`
/// plus lower terms.
pub fn solve_subordination(target: &LaurentTail, g: &LaurentTail) -> Result<Reciprocal> {
    g.check_normalized()?;
    target.check_normalized()?;
    if target.order() != g.order() {
        return domain("subordination tails of different orders");
    }
    let len = g.coeffs.len();
    let mut f = Reciprocal::identity(g.order()).coeffs;
    for m in 1..len {
        let current = compose_tail(&g.coeffs, &f, m + 1);
        f[m] = &current[m] - &target.coeffs[m];
    }
    Reciprocal::new(f)
}

/// Whether `G_{mu ⊞ nu} = G_nu ∘ F_{mu ⊳ nu}` to the truncation order.
pub fn check_subordination(mu: &Distribution, nu: &Distribution) -> Result<bool> {
    require_one_variable(mu)?;
    let sigma = boxright(mu, nu)?;
    let lhs = cauchy_from_moments(&mu.boxplus(nu)?)?;
    let rhs = compose(&cauchy_from_moments(nu)?, &reciprocal(&cauchy_from_moments(&sigma)?)?)?;
    Ok(lhs == rhs)
}

/// Outcome of the three power-subordination relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSubordinationReport {
    /// `F_sigma = z/p + (1 - 1/p) F_{nu^{⊞p}}`.
    pub reciprocal_relation: bool,
    /// `eta_sigma = ((p-1)/p) eta_{nu^{⊞p}}`.
    pub eta_relation: bool,
    /// `G_{nu^{⊞p}} = G_nu ∘ F_sigma`.
    pub composition: bool,
}

impl PowerSubordinationReport {
    pub fn all(&self) -> bool {
        self.reciprocal_relation && self.eta_relation && self.composition
    }
}

/// Checks the subordination of `nu^{⊞p}` with respect to `nu`, where
/// `sigma = nu^{⊞(p-1)} ⊳ nu`.
pub fn check_power_subordination(
    nu: &Distribution,
    p: &Rational,
) -> Result<PowerSubordinationReport> {
    require_one_variable(nu)?;
    let sigma = subordination_of_power(nu, p)?;
    let lambda = nu.boxplus_power(p)?;
    let f_sigma = reciprocal(&cauchy_from_moments(&sigma)?)?;
    let f_lambda = reciprocal(&cauchy_from_moments(&lambda)?)?;

    let inv_p = p.recip();
    let rest = Rational::one() - &inv_p;
    let mut expected: Vec<Rational> = f_lambda.coeffs.iter().map(|c| c * &rest).collect();
    expected[0] += &inv_p;

    let eta_expected = lambda.eta_series().scale(&((p - Rational::one()) / p));
    let composition =
        compose(&cauchy_from_moments(nu)?, &f_sigma)? == cauchy_from_moments(&lambda)?;

    Ok(PowerSubordinationReport {
        reciprocal_relation: f_sigma.coeffs == expected,
        eta_relation: *sigma.eta_series() == eta_expected,
        composition,
    })
}

/// Whether `F_{mu ⊳ nu} + F_{nu ⊳ mu} = z + F_{mu ⊞ nu}`.
pub fn check_reciprocal_splitting(mu: &Distribution, nu: &Distribution) -> Result<bool> {
    require_one_variable(mu)?;
    let f = |d: &Distribution| -> Result<Reciprocal> { reciprocal(&cauchy_from_moments(d)?) };
    let f1 = f(&boxright(mu, nu)?)?;
    let f2 = f(&boxright(nu, mu)?)?;
    let f12 = f(&mu.boxplus(nu)?)?;
    let mut rhs = f12.coeffs;
    rhs[0] += Rational::one();
    let lhs: Vec<Rational> = f1.coeffs.iter().zip(&f2.coeffs).map(|(a, b)| a + b).collect();
    Ok(lhs == rhs)
}

/// Whether `1/G_d` equals `z (1 - eta_d(1/z))`.
pub fn check_reciprocal_eta(d: &Distribution) -> Result<bool> {
    Ok(reciprocal(&cauchy_from_moments(d)?)? == reciprocal_from_eta(d)?)
}

/// Whether series reversion reproduces the R-series of `d`.
pub fn check_reversion(d: &Distribution) -> Result<bool> {
    let r = r_from_k(&k_transform(&cauchy_from_moments(d)?)?)?;
    Ok(r == *d.r_series())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{delta, point_mass, semicircular};
    use crate::random::{random_distribution, rng_from_seed};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn cauchy_transforms_of_basic_laws() {
        let g = cauchy_from_moments(&delta(1, 4).unwrap()).unwrap();
        assert_eq!(g.coeffs(), ints(&[1, 0, 0, 0, 0]).as_slice());
        let g = cauchy_from_moments(&point_mass(1, 4, &q(1, 1)).unwrap()).unwrap();
        assert_eq!(g.coeffs(), ints(&[1, 1, 1, 1, 1]).as_slice());
        let g = cauchy_from_moments(&semicircular(1, 6, &q(1, 1)).unwrap()).unwrap();
        assert_eq!(g.coeffs(), ints(&[1, 0, 1, 0, 2, 0, 5]).as_slice());
        assert!(cauchy_from_moments(&delta(2, 3).unwrap()).is_err());
    }

    #[test]
    fn reversion_of_basic_laws() {
        let k = k_transform(&cauchy_from_moments(&delta(1, 4).unwrap()).unwrap()).unwrap();
        assert!(k.coeffs.iter().all(Zero::is_zero));

        let k = k_transform(&cauchy_from_moments(&point_mass(1, 5, &q(1, 1)).unwrap()).unwrap())
            .unwrap();
        assert_eq!(k.coeffs, ints(&[1, 0, 0, 0, 0]));
        let r = r_from_k(&k).unwrap();
        assert_eq!(r, NcSeries::variable(1, 5, 1).unwrap());

        let k = k_transform(&cauchy_from_moments(&semicircular(1, 6, &q(1, 1)).unwrap()).unwrap())
            .unwrap();
        assert_eq!(k.coeffs, ints(&[0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn unnormalized_tail_is_rejected() {
        let g = LaurentTail::new(ints(&[2, 0, 0])).unwrap();
        assert!(reciprocal(&g).is_err());
        assert!(k_transform(&g).is_err());
    }

    #[test]
    fn reciprocal_of_point_mass() {
        let f = reciprocal(&cauchy_from_moments(&point_mass(1, 4, &q(1, 1)).unwrap()).unwrap())
            .unwrap();
        assert_eq!(f.coeffs(), ints(&[1, -1, 0, 0, 0]).as_slice());
    }

    #[test]
    fn point_mass_subordination_function() {
        // G_{δ_2}(z) = G_{δ_1}(z - 1).
        let one = point_mass(1, 6, &q(1, 1)).unwrap();
        let two = point_mass(1, 6, &q(2, 1)).unwrap();
        let omega = solve_subordination(
            &cauchy_from_moments(&two).unwrap(),
            &cauchy_from_moments(&one).unwrap(),
        )
        .unwrap();
        assert_eq!(omega.coeffs(), ints(&[1, -1, 0, 0, 0, 0, 0]).as_slice());
        let sigma = boxright(&one, &one).unwrap();
        assert_eq!(reciprocal(&cauchy_from_moments(&sigma).unwrap()).unwrap(), omega);
        assert!(check_subordination(&one, &one).unwrap());
    }

    #[test]
    fn random_one_variable_checks() {
        let mut rng = rng_from_seed(11);
        for _ in 0..5 {
            let mu = random_distribution(&mut rng, 1, 8).unwrap();
            let nu = random_distribution(&mut rng, 1, 8).unwrap();
            assert!(check_reversion(&mu).unwrap());
            assert!(check_reciprocal_eta(&mu).unwrap());
            assert!(check_subordination(&mu, &nu).unwrap());
            assert!(check_reciprocal_splitting(&mu, &nu).unwrap());
            for p in [q(1, 1), q(3, 2), q(2, 1), q(3, 1)] {
                assert!(check_power_subordination(&nu, &p).unwrap().all());
            }
        }
    }

    #[test]
    fn power_subordination_of_semicircle() {
        let g = semicircular(1, 6, &q(1, 1)).unwrap();
        let report = check_power_subordination(&g, &q(3, 1)).unwrap();
        assert!(report.all());
        assert!(check_power_subordination(&g, &q(1, 2)).is_err());
    }
}

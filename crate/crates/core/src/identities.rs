//! Named identity checks and the seeded suites that drive them.
//!
//! Every check compares two exactly computed objects and returns
//! `Ok(None)` on agreement or `Ok(Some(witness))` carrying the first word
//! (in word order) where the two sides differ.

use std::fmt;

use num_traits::{One, Zero};

use crate::cauchy1d;
use crate::dist::{delta, moments_via_nc_sum, point_mass, semicircular, Distribution};
use crate::error::{domain, Result};
use crate::fock;
use crate::ncpart::enumerate_nc;
use crate::ncseries::{cf_partition, words_up_to, NcSeries, Word};
use crate::random::{random_distribution, rng_from_seed};
use crate::subord::{
    boxright, boxright_eta, boxright_eta_expanded, boxright_moments, boxright_moments_expanded,
    boxright_r_generalized, boxright_r_partitions, boxright_r_subsets, gamma_boxright,
    subordination_of_power,
};
use crate::Rational;

/// First point of disagreement between two sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub series: String,
    pub left: Rational,
    pub right: Rational,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: {} != {}",
            self.series, self.word, self.left, self.right
        )
    }
}

pub type Check = Result<Option<Witness>>;

fn compare_series(name: &str, lhs: &NcSeries, rhs: &NcSeries) -> Option<Witness> {
    lhs.first_difference(rhs).map(|w| Witness {
        left: lhs.get(&w),
        right: rhs.get(&w),
        series: name.to_string(),
        word: w,
    })
}

fn compare(name: &str, lhs: &Distribution, rhs: &Distribution) -> Option<Witness> {
    compare_series(&format!("{name} (moments)"), lhs.moments(), rhs.moments())
}

fn first_failure(checks: impl IntoIterator<Item = Option<Witness>>) -> Option<Witness> {
    checks.into_iter().flatten().next()
}

/// `(mu1 ⊞ mu2) ⊳ nu = (mu1 ⊳ nu) ⊞ (mu2 ⊳ nu)`.
pub fn boxplus_linearity(mu1: &Distribution, mu2: &Distribution, nu: &Distribution) -> Check {
    let lhs = boxright(&mu1.boxplus(mu2)?, nu)?;
    let rhs = boxright(mu1, nu)?.boxplus(&boxright(mu2, nu)?)?;
    Ok(compare("boxplus linearity", &lhs, &rhs))
}

/// `mu^{⊞t} ⊳ nu = (mu ⊳ nu)^{⊞t}`.
pub fn power_linearity(mu: &Distribution, nu: &Distribution, t: &Rational) -> Check {
    let lhs = boxright(&mu.boxplus_power(t)?, nu)?;
    let rhs = boxright(mu, nu)?.boxplus_power(t)?;
    Ok(compare("power linearity", &lhs, &rhs))
}

/// `mu ⊳ mu = B(mu)`.
pub fn self_subordination(mu: &Distribution) -> Check {
    Ok(compare("self subordination", &boxright(mu, mu)?, &mu.bb()))
}

/// `eta_{mu ⊳ nu} = R_{mu ⊳ (mu ⊞ nu)}`.
pub fn eta_as_r_transform(mu: &Distribution, nu: &Distribution) -> Check {
    let lhs = boxright(mu, nu)?;
    let rhs = boxright(mu, &mu.boxplus(nu)?)?;
    Ok(compare_series(
        "eta of mu ⊳ nu vs R of mu ⊳ (mu ⊞ nu)",
        lhs.eta_series(),
        rhs.r_series(),
    ))
}

/// `B(mu ⊳ nu) = mu ⊳ (mu ⊞ nu)`.
pub fn bb_shift(mu: &Distribution, nu: &Distribution) -> Check {
    let lhs = boxright(mu, nu)?.bb();
    let rhs = boxright(mu, &mu.boxplus(nu)?)?;
    Ok(compare("B shift", &lhs, &rhs))
}

/// `B_t(mu ⊳ nu) = mu ⊳ (mu^{⊞t} ⊞ nu)`.
pub fn bb_t_evolution(mu: &Distribution, nu: &Distribution, t: &Rational) -> Check {
    let lhs = boxright(mu, nu)?.bb_t(t)?;
    let rhs = boxright(mu, &mu.boxplus_power(t)?.boxplus(nu)?)?;
    Ok(compare("B_t evolution", &lhs, &rhs))
}

/// `eta_{mu ⊳ nu} + eta_{nu ⊳ mu} = eta_{mu ⊞ nu}`.
pub fn eta_splitting(mu: &Distribution, nu: &Distribution) -> Check {
    let lhs = boxright(mu, nu)?
        .eta_series()
        .add(boxright(nu, mu)?.eta_series())?;
    let sum = mu.boxplus(nu)?;
    Ok(compare_series("eta splitting", &lhs, sum.eta_series()))
}

/// `nu^{⊞(p-1)} ⊳ nu = B(nu)^{⊞(p-1)} = (nu^{⊞p})^{⊎(p-1)/p}`.
pub fn power_subordination(nu: &Distribution, p: &Rational) -> Check {
    let sigma = subordination_of_power(nu, p)?;
    let q = p - Rational::one();
    let via_bb = nu.bb().boxplus_power(&q)?;
    let via_uplus = nu.boxplus_power(p)?.uplus_power(&(&q / p))?;
    Ok(first_failure([
        compare("subordination of powers vs B power", &sigma, &via_bb),
        compare("subordination of powers vs Boolean power", &sigma, &via_uplus),
    ]))
}

/// `mu^{⊞s} ⊳ mu^{⊞t} = B_t(mu)^{⊞s}`.
pub fn power_formula(mu: &Distribution, s: &Rational, t: &Rational) -> Check {
    let lhs = boxright(&mu.boxplus_power(s)?, &mu.boxplus_power(t)?)?;
    let rhs = mu.bb_t(t)?.boxplus_power(s)?;
    Ok(compare("power formula", &lhs, &rhs))
}

/// `γ ⊳ nu` has `R = sum_i z_i (1 + M_nu) z_i`.
pub fn gamma_sandwich(nu: &Distribution) -> Check {
    let gamma = semicircular(nu.k(), nu.order(), &Rational::one())?;
    Ok(compare(
        "γ ⊳ nu by sandwich",
        &boxright(&gamma, nu)?,
        &gamma_boxright(nu),
    ))
}

/// `γ ⊳ nu = B(Phi(nu))`.
pub fn gamma_phi(nu: &Distribution) -> Check {
    Ok(compare("γ ⊳ nu vs B(Phi(nu))", &gamma_boxright(nu), &nu.phi().bb()))
}

/// `Phi(nu ⊞ γ_t) = B_t(Phi(nu))`.
pub fn brownian_intertwining(nu: &Distribution, t: &Rational) -> Check {
    let gamma = semicircular(nu.k(), nu.order(), &Rational::one())?;
    let lhs = nu.boxplus(&gamma.boxplus_power(t)?)?.phi();
    let rhs = nu.phi().bb_t(t)?;
    Ok(compare("Brownian intertwining", &lhs, &rhs))
}

/// `mu^{⊞0} = mu^{⊎0} = δ`, `mu ⊳ δ = mu`, `δ ⊳ mu = δ`.
pub fn delta_laws(mu: &Distribution) -> Check {
    let d = delta(mu.k(), mu.order())?;
    let zero = Rational::zero();
    Ok(first_failure([
        compare("zeroth free power", &mu.boxplus_power(&zero)?, &d),
        compare("zeroth Boolean power", &mu.uplus_power(&zero)?, &d),
        compare("mu ⊳ δ", &boxright(mu, &d)?, mu),
        compare("δ ⊳ mu", &boxright(&d, mu)?, &d),
    ]))
}

/// `Phi[γ, psi] = Phi(psi)`.
pub fn phi2_gamma(psi: &Distribution) -> Check {
    let gamma = semicircular(psi.k(), psi.order(), &Rational::one())?;
    Ok(compare("Phi[γ, psi]", &gamma.phi2(psi)?, &psi.phi()))
}

/// `B_t(B_s(mu)) = B_{s+t}(mu)`, `B_1 = B` and both inverses.
pub fn bb_semigroup(mu: &Distribution, s: &Rational, t: &Rational) -> Check {
    let lhs = mu.bb_t(s)?.bb_t(t)?;
    let rhs = mu.bb_t(&(s + t))?;
    Ok(first_failure([
        compare("B semigroup", &lhs, &rhs),
        compare("B_1 vs B", &mu.bb_t(&Rational::one())?, &mu.bb()),
        compare("B inverse", &mu.bb().bb_inverse(), mu),
        compare("B_t inverse", &mu.bb_t(t)?.bb_t_inverse(t)?, mu),
    ]))
}

/// Every coefficient of `mu ⊳ nu` agrees across the production path and
/// all partition-sum routes: free cumulants by subsets and by `pi << 1_n`,
/// Boolean cumulants by the coloured and expanded sums, moments by the
/// coloured and expanded sums over `NC(n)`.
pub fn four_way_agreement(mu: &Distribution, nu: &Distribution) -> Check {
    let sigma = boxright(mu, nu)?;
    type Route = fn(&Distribution, &Distribution, &Word) -> Result<Rational>;
    let routes: [(&str, &NcSeries, Route); 6] = [
        ("free cumulants by subsets", sigma.r_series(), boxright_r_subsets),
        ("free cumulants by partitions", sigma.r_series(), boxright_r_partitions),
        ("Boolean cumulants by partitions", sigma.eta_series(), boxright_eta),
        ("Boolean cumulants expanded", sigma.eta_series(), boxright_eta_expanded),
        ("moments by partitions", sigma.moments(), boxright_moments),
        ("moments expanded", sigma.moments(), boxright_moments_expanded),
    ];
    for w in words_up_to(mu.k(), mu.order()) {
        for (name, series, route) in &routes {
            let expected = series.get(&w);
            let got = route(mu, nu, &w)?;
            if got != expected {
                return Ok(Some(Witness {
                    word: w,
                    series: name.to_string(),
                    left: expected,
                    right: got,
                }));
            }
        }
    }
    Ok(None)
}

/// `Cf_{w; rho}(R_{mu ⊳ nu})` by the sum over `pi << rho` for every `rho`.
pub fn generalized_coefficients(mu: &Distribution, nu: &Distribution) -> Check {
    let sigma = boxright(mu, nu)?;
    for w in words_up_to(mu.k(), mu.order()) {
        for rho in enumerate_nc(w.len())? {
            let expected = cf_partition(&w, &rho, sigma.r_series())?;
            let got = boxright_r_generalized(mu, nu, &w, &rho)?;
            if got != expected {
                return Ok(Some(Witness {
                    word: w,
                    series: format!("generalized coefficient at {rho}"),
                    left: expected,
                    right: got,
                }));
            }
        }
    }
    Ok(None)
}

/// Round trips of the moment / R / eta dictionary and the independent
/// eta-from-R sum.
pub fn transform_round_trips(mu: &Distribution) -> Check {
    let from_m = Distribution::from_moment_series(mu.moments().clone());
    let from_e = Distribution::from_eta_series(mu.eta_series().clone());
    Ok(first_failure([
        compare("moments round trip", &from_m, mu),
        compare("eta round trip", &from_e, mu),
        compare_series("eta from R by partitions", &mu.eta_from_r(), mu.eta_series()),
        compare_series(
            "moments by non-crossing sum",
            &moments_via_nc_sum(mu.r_series()),
            mu.moments(),
        ),
    ]))
}

/// Agreement of the Fock-space model with `mu ⊳ nu` and with the
/// marginals on all words up to `max_len`, at the given depth.
pub fn fock_agreement(
    mu: &Distribution,
    nu: &Distribution,
    max_len: usize,
    depth: usize,
) -> Result<FockOutcome> {
    if max_len > mu.order() {
        return domain(format!(
            "words up to length {max_len} exceed the truncation order {}",
            mu.order()
        ));
    }
    let model = fock::build_model(mu, nu, depth)?;
    let sigma = boxright(mu, nu)?;
    let mut outcome = FockOutcome::default();
    for (slot, ops, target) in [
        (&mut outcome.c, &model.c, &sigma),
        (&mut outcome.a, &model.a, mu),
        (&mut outcome.b, &model.b, nu),
    ] {
        let values = fock::vacuum_moments(ops, max_len);
        *slot = values.into_iter().find_map(|(w, v)| {
            let expected = target.moments().get(&w);
            (v != expected).then(|| Witness {
                word: w,
                series: "vacuum moments".into(),
                left: expected,
                right: v,
            })
        });
    }
    outcome.moments = fock::vacuum_moments(&model.c, max_len);
    Ok(outcome)
}

/// Results of [`fock_agreement`]: a witness per tuple, plus the raw vacuum
/// moments of the `C` tuple for depth-stability comparisons.
#[derive(Clone, Debug, Default)]
pub struct FockOutcome {
    pub c: Option<Witness>,
    pub a: Option<Witness>,
    pub b: Option<Witness>,
    pub moments: std::collections::BTreeMap<Word, Rational>,
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteRow {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

impl SuiteRow {
    fn new(name: &str) -> Self {
        SuiteRow {
            name: name.to_string(),
            passed: 0,
            failed: 0,
            witness: None,
        }
    }

    fn record(&mut self, outcome: Option<String>) {
        match outcome {
            None => self.passed += 1,
            Some(w) => {
                self.failed += 1;
                self.witness.get_or_insert(w);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} passed, {} failed)",
            self.name, self.passed, self.failed
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

/// Rows in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(SuiteRow::ok)
    }

    fn row(&mut self, name: &str) -> &mut SuiteRow {
        if let Some(i) = self.rows.iter().position(|r| r.name == name) {
            return &mut self.rows[i];
        }
        self.rows.push(SuiteRow::new(name));
        self.rows.last_mut().expect("just pushed")
    }

    fn record(&mut self, name: &str, check: Check) -> Result<()> {
        let outcome = check?.map(|w| w.to_string());
        self.row(name).record(outcome);
        Ok(())
    }

    fn record_bool(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.row(name).record((!ok).then(detail));
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.rows.extend(other.rows);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Exponents used for `s` and `t`.
pub fn power_grid() -> Vec<Rational> {
    vec![rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1)]
}

/// Exponents used for `p`.
pub fn p_grid() -> Vec<Rational> {
    vec![rat(1, 1), rat(3, 2), rat(2, 1), rat(3, 1)]
}

/// Runs every multi-variable identity on `trials` seeded random triples
/// `(mu, mu', nu)`; `k` cycles through `1..=k` across trials.
pub fn run_identity_suite(seed: u64, trials: usize, k: usize, order: usize) -> Result<SuiteReport> {
    let mut rng = rng_from_seed(seed);
    let mut report = SuiteReport::default();
    let grid = power_grid();
    for trial in 0..trials {
        let kk = 1 + trial % k;
        let mu = random_distribution(&mut rng, kk, order)?;
        let mu2 = random_distribution(&mut rng, kk, order)?;
        let nu = random_distribution(&mut rng, kk, order)?;

        report.record("four-way agreement", four_way_agreement(&mu, &nu))?;
        report.record("generalized coefficients", generalized_coefficients(&mu, &nu))?;
        report.record("transform round trips", transform_round_trips(&mu))?;
        report.record("boxplus linearity", boxplus_linearity(&mu, &mu2, &nu))?;
        for t in &grid {
            report.record("power linearity", power_linearity(&mu, &nu, t))?;
        }
        report.record("self subordination", self_subordination(&mu))?;
        report.record("eta as R-transform", eta_as_r_transform(&mu, &nu))?;
        report.record("B shift", bb_shift(&mu, &nu))?;
        for t in &grid {
            report.record("B_t evolution", bb_t_evolution(&mu, &nu, t))?;
        }
        report.record("eta splitting", eta_splitting(&mu, &nu))?;
        for p in p_grid() {
            report.record("subordination of powers", power_subordination(&nu, &p))?;
        }
        for s in &grid {
            for t in &grid {
                report.record("power formula", power_formula(&mu, s, t))?;
            }
        }
        report.record("γ ⊳ nu sandwich", gamma_sandwich(&nu))?;
        report.record("γ ⊳ nu = B(Phi(nu))", gamma_phi(&nu))?;
        for t in &grid {
            report.record("Brownian intertwining", brownian_intertwining(&nu, t))?;
        }
        report.record("δ laws", delta_laws(&mu))?;
        report.record("Phi[γ, psi] = Phi(psi)", phi2_gamma(&nu))?;
        for s in &grid {
            for t in &grid {
                report.record("B semigroup", bb_semigroup(&mu, s, t))?;
            }
        }
    }
    Ok(report)
}

/// The same free cumulants read at another truncation order; cumulants of
/// words longer than the new order are dropped, missing ones are zero.
pub fn with_order(d: &Distribution, order: usize) -> Result<Distribution> {
    let terms = d
        .r_series()
        .terms()
        .filter(|(w, _)| w.len() <= order)
        .map(|(w, c)| (w.clone(), c.clone()));
    Distribution::from_free_cumulants(d.k(), order, terms)
}

/// Fock-space agreement on `trials` seeded pairs whose free cumulants have
/// degree at most `order`; `k` cycles through `1..=k`. Words run up to
/// `max_len` at depth `depth`, and again at `depth + 1` for stability.
pub fn run_fock_suite(
    seed: u64,
    trials: usize,
    k: usize,
    order: usize,
    max_len: usize,
    depth: usize,
) -> Result<SuiteReport> {
    let mut rng = rng_from_seed(seed);
    let mut report = SuiteReport::default();
    for trial in 0..trials {
        let kk = 1 + trial % k;
        let top = order.max(max_len);
        let mu = with_order(&random_distribution(&mut rng, kk, order)?, top)?;
        let nu = with_order(&random_distribution(&mut rng, kk, order)?, top)?;
        let base = fock_agreement(&mu, &nu, max_len, depth)?;
        let deeper = fock_agreement(&mu, &nu, max_len, depth + 1)?;
        report.row("C moments = mu ⊳ nu").record(base.c.map(|w| w.to_string()));
        report.row("A moments = mu").record(base.a.map(|w| w.to_string()));
        report.row("B moments = nu").record(base.b.map(|w| w.to_string()));
        report.record_bool("depth stability", base.moments == deeper.moments, || {
            format!("depth {depth} and {} disagree", depth + 1)
        });

        let model = fock::build_model(&mu, &nu, depth)?;
        let mut probes = vec![model.t.clone()];
        probes.extend(model.a.iter().cloned());
        probes.extend(model.c.iter().cloned());
        let projection = fock::check_vacuum_projection(&model.p_omega, &probes)?;
        report.record_bool("vacuum projection", projection.is_ok(), || {
            format!("{projection:?}")
        });
        let freeness = fock::check_freeness(&model, 4)?;
        report.record_bool("A free from B", freeness.is_none(), || {
            format!("{freeness:?}")
        });
    }
    Ok(report)
}

/// One-variable oracle checks on `trials` seeded pairs, plus the point
/// mass example.
pub fn run_onevar_suite(seed: u64, trials: usize, order: usize) -> Result<SuiteReport> {
    let mut rng = rng_from_seed(seed);
    let mut report = SuiteReport::default();
    for _ in 0..trials {
        let mu = random_distribution(&mut rng, 1, order)?;
        let nu = random_distribution(&mut rng, 1, order)?;
        report.record_bool("reversion R = recursion R", cauchy1d::check_reversion(&mu)?, || {
            "series reversion disagrees".into()
        });
        report.record_bool("F = z (1 - eta)", cauchy1d::check_reciprocal_eta(&mu)?, || {
            "reciprocal disagrees with eta".into()
        });
        report.record_bool(
            "G_{mu ⊞ nu} = G_nu ∘ F_{mu ⊳ nu}",
            cauchy1d::check_subordination(&mu, &nu)?,
            || "composition disagrees".into(),
        );
        report.record_bool(
            "F_{mu ⊳ nu} + F_{nu ⊳ mu} = z + F_{mu ⊞ nu}",
            cauchy1d::check_reciprocal_splitting(&mu, &nu)?,
            || "reciprocal splitting disagrees".into(),
        );
        for p in p_grid() {
            let r = cauchy1d::check_power_subordination(&nu, &p)?;
            report.record_bool("power subordination", r.all(), || format!("p = {p}: {r:?}"));
        }
    }
    let one = point_mass(1, order, &Rational::one())?;
    let two = point_mass(1, order, &rat(2, 1))?;
    let omega = cauchy1d::solve_subordination(
        &cauchy1d::cauchy_from_moments(&two)?,
        &cauchy1d::cauchy_from_moments(&one)?,
    )?;
    let mut expected = vec![Rational::zero(); order + 1];
    expected[0] = Rational::one();
    expected[1] = -Rational::one();
    report.record_bool("point mass: omega(z) = z - 1", omega.coeffs() == expected, || {
        format!("omega coefficients {:?}", omega.coeffs())
    });
    Ok(report)
}

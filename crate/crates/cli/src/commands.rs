//! Subcommand bodies. Each returns the text to print and whether every
//! check passed; the binary maps that to an exit code.

use std::fs;
use std::path::Path;

use subord_core::cauchy1d;
use subord_core::fock;
use subord_core::identities::{
    fock_agreement, p_grid, run_fock_suite, run_identity_suite, run_onevar_suite, SuiteReport,
};
use subord_core::Distribution;

use crate::error::CliError;
use crate::format::{load_distribution, DistributionFile};
use crate::pipeline;

pub const MAX_K: usize = 3;
pub const MAX_ORDER: usize = 6;
pub const MAX_ORDER_ONEVAR: usize = 8;
pub const MAX_DEPTH: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Fock,
    Onevar,
    All,
}

/// Text produced by a command and whether all of its checks passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

pub fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Evaluates a pipeline and renders the result as a moments file.
pub fn compute<S: AsRef<str>>(expr: &[S]) -> Result<Outcome, CliError> {
    let parsed = pipeline::parse(expr)?;
    let result = pipeline::evaluate(&parsed, &mut |p| load_distribution(p))?;
    Ok(Outcome {
        text: DistributionFile::from_distribution(&result).to_json(),
        passed: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyParams {
    pub seed: u64,
    pub trials: usize,
    pub k: usize,
    pub order: usize,
    pub depth: usize,
}

fn check_range(name: &str, value: usize, lo: usize, hi: usize) -> Result<(), CliError> {
    if value < lo || value > hi {
        return Err(CliError::Usage(format!(
            "--{name} must lie in {lo}..={hi}, got {value}"
        )));
    }
    Ok(())
}

pub fn verify(suite: Suite, p: VerifyParams) -> Result<Outcome, CliError> {
    check_range("trials", p.trials, 1, usize::MAX)?;
    check_range("k", p.k, 1, MAX_K)?;
    let max_order = if suite == Suite::Onevar {
        MAX_ORDER_ONEVAR
    } else {
        MAX_ORDER
    };
    check_range("order", p.order, 1, max_order)?;
    if matches!(suite, Suite::Fock | Suite::All) {
        check_range("depth", p.depth, 1, MAX_DEPTH)?;
    }

    let mut sections: Vec<(&str, SuiteReport)> = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        sections.push((
            "identities",
            run_identity_suite(p.seed, p.trials, p.k, p.order)?,
        ));
    }
    if matches!(suite, Suite::Fock | Suite::All) {
        sections.push((
            "fock",
            run_fock_suite(p.seed, p.trials, p.k, p.order, p.depth, p.depth)?,
        ));
    }
    if matches!(suite, Suite::Onevar | Suite::All) {
        sections.push(("onevar", run_onevar_suite(p.seed, p.trials, p.order)?));
    }

    let mut text = String::new();
    let mut passed = true;
    for (name, report) in &sections {
        text.push_str(&format!(
            "# {name}: seed {}, trials {}, k {}, order {}\n",
            p.seed, p.trials, p.k, p.order
        ));
        text.push_str(&report.to_string());
        passed &= report.all_passed();
    }
    text.push_str(if passed { "ALL PASS\n" } else { "FAILED\n" });
    Ok(Outcome { text, passed })
}

fn row(text: &mut String, passed: &mut bool, name: &str, failure: Option<String>) {
    match failure {
        None => text.push_str(&format!("PASS {name}\n")),
        Some(w) => {
            *passed = false;
            text.push_str(&format!("FAIL {name} witness: {w}\n"));
        }
    }
}

fn finish(mut text: String, passed: bool) -> Outcome {
    text.push_str(if passed { "ALL PASS\n" } else { "FAILED\n" });
    Outcome { text, passed }
}

/// Builds the Fock model for two distribution files and compares vacuum
/// moments on all words up to `min(depth, order)`.
pub fn fock_check(mu: &Path, nu: &Path, depth: usize) -> Result<Outcome, CliError> {
    check_range("depth", depth, 1, MAX_DEPTH)?;
    let mu = load_distribution(mu)?;
    let nu = load_distribution(nu)?;
    let len = depth.min(mu.order());
    let outcome = fock_agreement(&mu, &nu, len, depth)?;
    let model = fock::build_model(&mu, &nu, depth)?;
    let mut probes = vec![model.t.clone()];
    probes.extend(model.a.iter().cloned());
    probes.extend(model.c.iter().cloned());
    let projection = fock::check_vacuum_projection(&model.p_omega, &probes)?;

    let mut text = format!(
        "# fock: k {}, depth {depth}, words up to length {len}, basis dimension {}\n",
        mu.k(),
        model.basis.dim()
    );
    let mut passed = true;
    let show = |w: Option<subord_core::identities::Witness>| w.map(|w| w.to_string());
    row(&mut text, &mut passed, "C moments = mu ⊳ nu", show(outcome.c));
    row(&mut text, &mut passed, "A moments = mu", show(outcome.a));
    row(&mut text, &mut passed, "B moments = nu", show(outcome.b));
    row(
        &mut text,
        &mut passed,
        "vacuum projection",
        projection.err().map(|e| format!("{e:?}")),
    );
    Ok(finish(text, passed))
}

/// One-variable checks on two `k = 1` distribution files.
pub fn verify_1d(mu: &Path, nu: &Path) -> Result<Outcome, CliError> {
    let mu = load_distribution(mu)?;
    let nu = load_distribution(nu)?;
    for d in [&mu, &nu] {
        if d.k() != 1 {
            return Err(CliError::Data(format!(
                "verify-1d needs one-variable files, got k = {}",
                d.k()
            )));
        }
    }
    let mut text = format!("# onevar: order {}\n", mu.order());
    let mut passed = true;
    let flag = |ok: bool, what: &str| (!ok).then(|| what.to_string());
    let both = |f: fn(&Distribution) -> subord_core::Result<bool>| -> Result<bool, CliError> {
        Ok(f(&mu)? && f(&nu)?)
    };
    row(
        &mut text,
        &mut passed,
        "reversion R = recursion R",
        flag(both(cauchy1d::check_reversion)?, "series reversion disagrees"),
    );
    row(
        &mut text,
        &mut passed,
        "F = z (1 - eta)",
        flag(both(cauchy1d::check_reciprocal_eta)?, "reciprocal disagrees"),
    );
    row(
        &mut text,
        &mut passed,
        "G_{mu ⊞ nu} = G_nu ∘ F_{mu ⊳ nu}",
        flag(cauchy1d::check_subordination(&mu, &nu)?, "composition disagrees"),
    );
    row(
        &mut text,
        &mut passed,
        "F_{mu ⊳ nu} + F_{nu ⊳ mu} = z + F_{mu ⊞ nu}",
        flag(
            cauchy1d::check_reciprocal_splitting(&mu, &nu)?,
            "reciprocal splitting disagrees",
        ),
    );
    for p in p_grid() {
        let report = cauchy1d::check_power_subordination(&nu, &p)?;
        row(
            &mut text,
            &mut passed,
            &format!("power subordination p = {p}"),
            (!report.all()).then(|| format!("{report:?}")),
        );
    }
    Ok(finish(text, passed))
}

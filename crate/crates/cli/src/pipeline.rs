//! Prefix expressions over distribution files.
//!
//! `bb boxright a.json b.json` is `B(a ⊳ b)`; parameters come right after
//! their operation: `bb_t 1/2 a.json`. Any token that is not an operation
//! name is a file path.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use subord_core::{subordination_of_power, Distribution, Rational};

use crate::error::CliError;
use crate::format::parse_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Boxplus,
    BoxplusPow,
    Uplus,
    UplusPow,
    Boxright,
    Bb,
    BbT,
    BbInv,
    Phi,
    Phi2,
    Subpow,
}

impl Op {
    fn from_name(name: &str) -> Option<Op> {
        Some(match name {
            "boxplus" => Op::Boxplus,
            "boxplus_pow" => Op::BoxplusPow,
            "uplus" => Op::Uplus,
            "uplus_pow" => Op::UplusPow,
            "boxright" => Op::Boxright,
            "bb" => Op::Bb,
            "bb_t" => Op::BbT,
            "bb_inv" => Op::BbInv,
            "phi" => Op::Phi,
            "phi2" => Op::Phi2,
            "subpow" => Op::Subpow,
            _ => return None,
        })
    }

    fn takes_parameter(self) -> bool {
        matches!(self, Op::BoxplusPow | Op::UplusPow | Op::BbT | Op::Subpow)
    }

    fn arity(self) -> usize {
        match self {
            Op::Boxplus | Op::Uplus | Op::Boxright | Op::Phi2 => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    File(PathBuf),
    Apply {
        op: Op,
        param: Option<Rational>,
        args: Vec<Expr>,
    },
}

/// Parses whitespace-separated tokens; each element of `parts` may itself
/// hold several tokens.
pub fn parse<S: AsRef<str>>(parts: &[S]) -> Result<Expr, CliError> {
    let tokens: Vec<&str> = parts
        .iter()
        .flat_map(|p| p.as_ref().split_whitespace())
        .collect();
    if tokens.is_empty() {
        return Err(CliError::Usage("empty expression".into()));
    }
    let mut pos = 0;
    let expr = parse_at(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(CliError::Usage(format!(
            "unexpected trailing tokens starting at {:?}",
            tokens[pos]
        )));
    }
    Ok(expr)
}

fn parse_at(tokens: &[&str], pos: &mut usize) -> Result<Expr, CliError> {
    let Some(&tok) = tokens.get(*pos) else {
        return Err(CliError::Usage("expression ends early".into()));
    };
    *pos += 1;
    let Some(op) = Op::from_name(tok) else {
        return Ok(Expr::File(PathBuf::from(tok)));
    };
    let param = if op.takes_parameter() {
        let Some(&raw) = tokens.get(*pos) else {
            return Err(CliError::Usage(format!("{tok} needs a rational parameter")));
        };
        *pos += 1;
        Some(parse_rational(raw).map_err(|_| {
            CliError::Usage(format!("{tok} needs a rational parameter, got {raw:?}"))
        })?)
    } else {
        None
    };
    let args = (0..op.arity())
        .map(|_| parse_at(tokens, pos))
        .collect::<Result<_, _>>()?;
    Ok(Expr::Apply { op, param, args })
}

/// Evaluates `expr`, loading each distinct file once.
pub fn evaluate(
    expr: &Expr,
    load: &mut dyn FnMut(&Path) -> Result<Distribution, CliError>,
) -> Result<Distribution, CliError> {
    let mut cache = BTreeMap::new();
    eval_cached(expr, load, &mut cache)
}

fn eval_cached(
    expr: &Expr,
    load: &mut dyn FnMut(&Path) -> Result<Distribution, CliError>,
    cache: &mut BTreeMap<PathBuf, Distribution>,
) -> Result<Distribution, CliError> {
    let (op, param, args) = match expr {
        Expr::File(path) => {
            if let Some(d) = cache.get(path) {
                return Ok(d.clone());
            }
            let d = load(path)?;
            cache.insert(path.clone(), d.clone());
            return Ok(d);
        }
        Expr::Apply { op, param, args } => (op, param, args),
    };
    let vals = args
        .iter()
        .map(|a| eval_cached(a, load, cache))
        .collect::<Result<Vec<_>, _>>()?;
    let x = &vals[0];
    let t = || param.as_ref().expect("parameter parsed for this operation");
    Ok(match op {
        Op::Boxplus => x.boxplus(&vals[1])?,
        Op::BoxplusPow => x.boxplus_power(t())?,
        Op::Uplus => x.uplus(&vals[1])?,
        Op::UplusPow => x.uplus_power(t())?,
        Op::Boxright => subord_core::boxright(x, &vals[1])?,
        Op::Bb => x.bb(),
        Op::BbT => x.bb_t(t())?,
        Op::BbInv => x.bb_inverse(),
        Op::Phi => x.phi(),
        Op::Phi2 => x.phi2(&vals[1])?,
        Op::Subpow => subordination_of_power(x, t())?,
    })
}

//! The JSON distribution file.
//!
//! ```json
//! {"k": 1, "order": 4, "kind": "free_cumulants",
//!  "coeffs": [{"word": [1, 1], "value": "1"}]}
//! ```
//!
//! Values are exact rationals written as `"p/q"` or integer strings.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use subord_core::{Distribution, Rational, Word};

use crate::error::CliError;

/// Which coefficients a file lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Moments,
    FreeCumulants,
    BooleanCumulants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub word: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionFile {
    pub k: usize,
    pub order: usize,
    pub kind: Kind,
    pub coeffs: Vec<CoeffEntry>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| CliError::Data(format!("bad rational {s:?}: {e}")))
}

impl DistributionFile {
    pub fn to_distribution(&self) -> Result<Distribution, CliError> {
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for entry in &self.coeffs {
            let word = Word::new(&entry.word, self.k)?;
            if !seen.insert(word.clone()) {
                return Err(CliError::Data(format!("duplicate word {word}")));
            }
            terms.push((word, parse_rational(&entry.value)?));
        }
        let (k, n) = (self.k, self.order);
        Ok(match self.kind {
            Kind::Moments => Distribution::from_moments(k, n, terms)?,
            Kind::FreeCumulants => Distribution::from_free_cumulants(k, n, terms)?,
            Kind::BooleanCumulants => Distribution::from_boolean_cumulants(k, n, terms)?,
        })
    }

    /// Nonzero moments in word order.
    pub fn from_distribution(d: &Distribution) -> Self {
        DistributionFile {
            k: d.k(),
            order: d.order(),
            kind: Kind::Moments,
            coeffs: d
                .moments()
                .terms()
                .map(|(w, v)| CoeffEntry {
                    word: w.to_vec(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Data(format!("invalid file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
    }
}

pub fn load_distribution(path: &Path) -> Result<Distribution, CliError> {
    DistributionFile::load(path)?.to_distribution()
}

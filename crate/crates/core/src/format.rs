//! JSON algebra files and newline-delimited corpus files.
//!
//! An algebra file names its elements by label everywhere:
//!
//! ```json
//! {"labels": ["0","a","1"], "covers": [["0","a"],["a","1"]],
//!  "arrow": [["1","1","1"],["0","1","1"],["0","a","1"]],
//!  "neg": ["1","a","0"], "bottom": "0", "top": "1"}
//! ```
//!
//! The lattice is given either by `covers` or by full `meet` and `join`
//! tables. `arrow[x][y]` is `x -> y`. Unknown keys are rejected.

use std::collections::HashMap;
use std::io::BufRead;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, CoverRelation, Element, FiniteAlgebra, Lattice};
use crate::classify::ClassificationReport;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<FormatError>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<String>>>,
    pub arrow: Vec<Vec<String>>,
    pub neg: Vec<String>,
    pub bottom: String,
    pub top: String,
}

impl AlgebraFile {
    /// Cover-based description of an algebra.
    pub fn from_algebra(a: &FiniteAlgebra) -> Self {
        let n = a.size();
        let l = |x: Element| a.label(x).to_string();
        let covers = a
            .lattice()
            .covers()
            .covers
            .into_iter()
            .map(|(lo, hi)| (l(lo), l(hi)))
            .collect();
        AlgebraFile {
            labels: a.labels().to_vec(),
            covers: Some(covers),
            meet: None,
            join: None,
            arrow: (0..n)
                .map(|x| (0..n).map(|y| l(a.arrow(x, y))).collect())
                .collect(),
            neg: (0..n).map(|x| l(a.neg(x))).collect(),
            bottom: l(a.bottom()),
            top: l(a.top()),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra, FormatError> {
        let n = self.labels.len();
        let mut index: HashMap<&str, Element> = HashMap::with_capacity(n);
        for (i, l) in self.labels.iter().enumerate() {
            if index.insert(l, i).is_some() {
                return Err(AlgebraError::DuplicateLabel(l.clone()).into());
            }
        }
        let idx = |s: &str| -> Result<Element, FormatError> {
            index
                .get(s)
                .copied()
                .ok_or_else(|| AlgebraError::UnknownLabel(s.to_string()).into())
        };
        let square = |t: &[Vec<String>], name: &str| -> Result<Vec<Vec<Element>>, FormatError> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(FormatError::Schema(format!(
                    "{name} must be a {n}x{n} table"
                )));
            }
            t.iter()
                .map(|r| r.iter().map(|s| idx(s)).collect())
                .collect()
        };
        let lattice = match (&self.covers, &self.meet, &self.join) {
            (Some(covers), None, None) => {
                let covers = covers
                    .iter()
                    .map(|(lo, hi)| Ok((idx(lo)?, idx(hi)?)))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                let lattice = Lattice::from_covers(&CoverRelation {
                    labels: self.labels.clone(),
                    covers,
                })?;
                if lattice.bottom() != idx(&self.bottom)? || lattice.top() != idx(&self.top)? {
                    return Err(FormatError::Schema(
                        "declared bottom/top disagree with the cover relation".into(),
                    ));
                }
                lattice
            }
            (None, Some(meet), Some(join)) => Lattice::from_tables(
                self.labels.clone(),
                &square(meet, "meet")?,
                &square(join, "join")?,
                idx(&self.bottom)?,
                idx(&self.top)?,
            )?,
            _ => {
                return Err(FormatError::Schema(
                    "give either \"covers\" or both \"meet\" and \"join\"".into(),
                ))
            }
        };
        let arrow = square(&self.arrow, "arrow")?;
        if self.neg.len() != n {
            return Err(FormatError::Schema(format!("neg must have {n} entries")));
        }
        let neg = self
            .neg
            .iter()
            .map(|s| idx(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteAlgebra::new(Arc::new(lattice), &arrow, &neg)?)
    }
}

pub fn parse_algebra(json: &str) -> Result<FiniteAlgebra, FormatError> {
    let file: AlgebraFile = serde_json::from_str(json)?;
    file.to_algebra()
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> String {
    serde_json::to_string(&AlgebraFile::from_algebra(a)).expect("algebra file serializes")
}

pub fn algebra_to_json_pretty(a: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("algebra file serializes")
}

/// One line of a corpus export.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusRecord {
    pub algebra: AlgebraFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
}

/// Accepts either bare algebra files or `{"algebra": ..., "classification": ...}`
/// records, one per line. Blank lines are skipped.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<FiniteAlgebra>, FormatError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = parse_corpus_line(&line).map_err(|e| FormatError::Line {
            line: i + 1,
            source: Box::new(e),
        })?;
        out.push(parsed);
    }
    Ok(out)
}

fn parse_corpus_line(line: &str) -> Result<FiniteAlgebra, FormatError> {
    let value: serde_json::Value = serde_json::from_str(line)?;
    if value.get("algebra").is_some() {
        let rec: CorpusRecord = serde_json::from_value(value)?;
        rec.algebra.to_algebra()
    } else {
        let file: AlgebraFile = serde_json::from_value(value)?;
        file.to_algebra()
    }
}

pub fn corpus_line(a: &FiniteAlgebra, classification: Option<ClassificationReport>) -> String {
    serde_json::to_string(&CorpusRecord {
        algebra: AlgebraFile::from_algebra(a),
        classification,
    })
    .expect("corpus record serializes")
}

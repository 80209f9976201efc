//! JSON file formats for representations and quivers.
//!
//! Matrix entries are JSON integers or `"p/q"` strings; floats are rejected
//! so exactness survives the round trip. Serialization is canonical: object
//! keys are sorted, integral entries that fit in `i64` are numbers, all
//! others are reduced `"p/q"` strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};
use crate::quiver::{Arrow, DimVector, Quiver, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub arrows: Vec<ArrowFile>,
    pub vertex_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub dims: Vec<usize>,
    /// Row-major matrices keyed by arrow id.
    pub matrices: BTreeMap<String, Vec<Vec<Value>>>,
    pub quiver: QuiverFile,
}

impl QuiverFile {
    pub fn to_quiver(&self) -> Result<Quiver> {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.id.clone(), a.source, a.target))
            .collect();
        Quiver::new(self.vertex_count, arrows)
    }

    pub fn from_quiver(q: &Quiver) -> Self {
        Self {
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowFile {
                    id: a.id.clone(),
                    source: a.source,
                    target: a.target,
                })
                .collect(),
            vertex_count: q.vertex_count(),
        }
    }
}

/// Parses an integer or `"p/q"` entry; `field` names it in errors.
pub fn parse_entry(value: &Value, field: &str) -> Result<Rational> {
    match value {
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = x.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(Error::Parse(format!(
                    "{field}: {x} is not an integer; write fractions as \"p/q\""
                )))
            }
        }
        Value::String(s) => parse_rational(s).map_err(|_| Error::Parse(format!("{field}: bad rational {s:?}"))),
        other => Err(Error::Parse(format!(
            "{field}: expected integer or \"p/q\", got {other}"
        ))),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn entry_value(x: &Rational) -> Value {
    if x.is_integer() {
        if let Some(i) = x.numer().to_i64() {
            return Value::from(i);
        }
        return Value::String(x.numer().to_string());
    }
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

impl RepFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_representation(&self) -> Result<Representation> {
        let quiver = self.quiver.to_quiver()?;
        if self.dims.len() != quiver.vertex_count() {
            return Err(Error::Parse(format!(
                "dims: expected {} entries, got {}",
                quiver.vertex_count(),
                self.dims.len()
            )));
        }
        if let Some(extra) = self.matrices.keys().find(|k| quiver.arrow_index(k).is_none()) {
            return Err(Error::Parse(format!("matrices.{extra}: no such arrow")));
        }
        let dims = DimVector(self.dims.clone());
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for a in quiver.arrows() {
            let (rows, cols) = (dims.at(a.target), dims.at(a.source));
            let field = format!("matrices.{}", a.id);
            let raw = self
                .matrices
                .get(&a.id)
                .ok_or_else(|| Error::Parse(format!("{field}: missing")))?;
            if raw.len() != rows {
                return Err(Error::Parse(format!(
                    "{field}: expected {rows} rows, got {}",
                    raw.len()
                )));
            }
            let mut entries = Vec::with_capacity(rows * cols);
            for (r, row) in raw.iter().enumerate() {
                if row.len() != cols {
                    return Err(Error::Parse(format!(
                        "{field}[{r}]: expected {cols} entries, got {}",
                        row.len()
                    )));
                }
                for (c, v) in row.iter().enumerate() {
                    entries.push(parse_entry(v, &format!("{field}[{r}][{c}]"))?);
                }
            }
            mats.push(RatMatrix::new(rows, cols, entries)?);
        }
        Representation::new(quiver, dims, mats)
    }

    pub fn from_representation(v: &Representation) -> Self {
        let matrices = v
            .quiver()
            .arrows()
            .iter()
            .zip(v.matrices())
            .map(|(a, m)| {
                let rows = (0..m.rows())
                    .map(|r| (0..m.cols()).map(|c| entry_value(m.get(r, c))).collect())
                    .collect();
                (a.id.clone(), rows)
            })
            .collect();
        Self {
            dims: v.dims().0.clone(),
            matrices,
            quiver: QuiverFile::from_quiver(v.quiver()),
        }
    }

    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rep file serializes")
    }
}

pub fn read_representation(text: &str) -> Result<Representation> {
    RepFile::parse(text)?.to_representation()
}

pub fn write_representation(v: &Representation) -> String {
    RepFile::from_representation(v).to_json()
}

pub fn read_quiver(text: &str) -> Result<Quiver> {
    let file: QuiverFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_quiver()
}

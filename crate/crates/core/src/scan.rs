//! Exhaustive classification of codimension-two degenerations between
//! nilpotent classes of small cyclic quivers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::WindowMultiset;
use crate::degeneration::{dim_vectors, enumerate_nilpotent, poset_data, TestSet};
use crate::error::Result;
use crate::quiver::DimVector;
use crate::singularity::{classify_seeded, SingularityType, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StuckPair {
    pub m: WindowMultiset,
    pub nn: WindowMultiset,
    pub diagnostic: String,
}

/// Tally for one rank `n` and one total dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub dim: usize,
    pub classes: usize,
    pub degenerations: usize,
    pub codim2: usize,
    pub reg: usize,
    /// Count per `r` of pairs of type `A_r`.
    pub a: BTreeMap<u32, usize>,
    pub cone: usize,
    pub unresolved: Vec<StuckPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

fn scan_dim_vector(n: usize, d: &DimVector, seed: u64) -> Result<ScanRow> {
    let mut row = ScanRow {
        n,
        dim: d.total(),
        ..ScanRow::default()
    };
    let nodes = enumerate_nilpotent(n, d);
    row.classes = nodes.len();
    let data = poset_data(&nodes, &TestSet::new(n, d.total().max(1)))?;
    let mut pairs = Vec::new();
    for a in 0..nodes.len() {
        for b in 0..nodes.len() {
            if a != b && data.profiles[a].le(&data.profiles[b]) {
                row.degenerations += 1;
                if data.endo[b] == data.endo[a] + 2 {
                    pairs.push((a, b));
                }
            }
        }
    }
    row.codim2 = pairs.len();
    let kinds = pairs
        .par_iter()
        .map(|&(a, b)| classify_seeded(&nodes[a], &nodes[b], seed).map(|(t, _)| (a, b, t)))
        .collect::<Result<Vec<_>>>()?;
    for (a, b, t) in kinds {
        match t {
            SingularityType::Reg => row.reg += 1,
            SingularityType::A(r) => *row.a.entry(r).or_default() += 1,
            SingularityType::C(_) => row.cone += 1,
            SingularityType::Unresolved(diagnostic) => row.unresolved.push(StuckPair {
                m: nodes[a].clone(),
                nn: nodes[b].clone(),
                diagnostic,
            }),
        }
    }
    Ok(row)
}

fn merge(into: &mut ScanRow, part: ScanRow) {
    into.classes += part.classes;
    into.degenerations += part.degenerations;
    into.codim2 += part.codim2;
    into.reg += part.reg;
    for (r, k) in part.a {
        *into.a.entry(r).or_default() += k;
    }
    into.cone += part.cone;
    into.unresolved.extend(part.unresolved);
}

/// Classifies every codimension-2 degeneration for ranks `1..=max_n` and
/// total dimensions `1..=max_dim`, one row per `(n, dim)`.
pub fn scan(max_n: usize, max_dim: usize) -> Result<ScanReport> {
    scan_seeded(max_n, max_dim, DEFAULT_SEED)
}

/// [`scan`] with an explicit seed for the classifier's sequence search.
pub fn scan_seeded(max_n: usize, max_dim: usize, seed: u64) -> Result<ScanReport> {
    let jobs: Vec<(usize, DimVector)> = (1..=max_n)
        .flat_map(|n| (1..=max_dim).flat_map(move |t| dim_vectors(n, t).into_iter().map(move |d| (n, d))))
        .collect();
    let parts = jobs
        .par_iter()
        .map(|(n, d)| scan_dim_vector(*n, d, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<ScanRow> = Vec::new();
    for part in parts {
        match rows.last_mut() {
            Some(last) if last.n == part.n && last.dim == part.dim => merge(last, part),
            _ => rows.push(part),
        }
    }
    Ok(ScanReport { rows })
}

impl ScanReport {
    pub fn unresolved(&self) -> impl Iterator<Item = &StuckPair> {
        self.rows.iter().flat_map(|r| r.unresolved.iter())
    }

    pub fn total_codim2(&self) -> usize {
        self.rows.iter().map(|r| r.codim2).sum()
    }

    pub fn cone_count(&self) -> usize {
        self.rows.iter().map(|r| r.cone).sum()
    }

    /// Plain-text table, one line per row, followed by any stuck pairs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:>2} {:>3} {:>7} {:>7} {:>6} {:>5}  {:<24} {:>2} {:>10}",
            "n", "dim", "classes", "degens", "codim2", "Reg", "A_r", "C", "Unresolved"
        )
        .unwrap();
        for r in &self.rows {
            let a: Vec<String> = r.a.iter().map(|(k, v)| format!("A{k}:{v}")).collect();
            let a = if a.is_empty() { "-".to_string() } else { a.join(" ") };
            writeln!(
                out,
                "{:>2} {:>3} {:>7} {:>7} {:>6} {:>5}  {:<24} {:>2} {:>10}",
                r.n,
                r.dim,
                r.classes,
                r.degenerations,
                r.codim2,
                r.reg,
                a,
                r.cone,
                r.unresolved.len()
            )
            .unwrap();
        }
        let total_unresolved = self.unresolved().count();
        writeln!(
            out,
            "total: {} codim-2 pairs, {} C, {} unresolved",
            self.total_codim2(),
            self.cone_count(),
            total_unresolved
        )
        .unwrap();
        for s in self.unresolved() {
            writeln!(out, "unresolved: M={} N={} ({})", s.m, s.nn, s.diagnostic).unwrap();
        }
        out
    }
}

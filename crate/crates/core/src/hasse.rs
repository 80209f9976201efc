//! Hasse diagrams of the degeneration order, with DOT and JSON export.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic::WindowMultiset;
use crate::degeneration::{enumerate_nilpotent, poset_data, TestSet};
use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::singularity::{classify, SingularityType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseEdge {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<SingularityType>,
    pub codim: usize,
    /// Index of the smaller orbit.
    pub lower: usize,
    /// Index of the larger orbit.
    pub upper: usize,
}

/// Covering relations of the degeneration order on all nilpotent classes of
/// one dimension vector. Nodes are sorted; edges are sorted by
/// `(upper, lower)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseDiagram {
    pub dims: DimVector,
    pub edges: Vec<HasseEdge>,
    pub n: usize,
    pub nodes: Vec<WindowMultiset>,
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// Builds the Hasse diagram for dimension vector `d` of the rank-`n` cyclic
/// quiver. With `annotate`, codimension-1 edges are labeled `Reg` and
/// codimension-2 edges by [`classify`].
pub fn hasse(n: usize, d: &DimVector, annotate: bool) -> Result<HasseDiagram> {
    if n == 0 || d.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: d.len(),
        });
    }
    let nodes = enumerate_nilpotent(n, d);
    let ts = TestSet::new(n, d.total().max(1));
    let data = poset_data(&nodes, &ts)?;
    let count = nodes.len();

    // above[b]: classes degenerating to b; below[a]: degenerations of a
    let rel: Vec<Vec<bool>> = (0..count)
        .into_par_iter()
        .map(|a| {
            (0..count)
                .map(|b| a != b && data.profiles[a].le(&data.profiles[b]))
                .collect()
        })
        .collect();
    let mut above: Vec<BitSet> = (0..count).map(|_| BitSet::new(count)).collect();
    let mut below: Vec<BitSet> = (0..count).map(|_| BitSet::new(count)).collect();
    for a in 0..count {
        for b in 0..count {
            if rel[a][b] {
                below[a].insert(b);
                above[b].insert(a);
            }
        }
    }

    let mut edges: Vec<HasseEdge> = Vec::new();
    for a in 0..count {
        for b in 0..count {
            if rel[a][b] && !below[a].intersects(&above[b]) {
                edges.push(HasseEdge {
                    annotation: None,
                    codim: data.endo[b] - data.endo[a],
                    lower: b,
                    upper: a,
                });
            }
        }
    }

    if annotate {
        let labels = edges
            .par_iter()
            .map(|e| match e.codim {
                1 => Ok(Some(SingularityType::Reg)),
                2 => classify(&nodes[e.upper], &nodes[e.lower]).map(|(t, _)| Some(t)),
                _ => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        for (e, label) in edges.iter_mut().zip(labels) {
            e.annotation = label;
        }
    }

    Ok(HasseDiagram {
        dims: d.clone(),
        edges,
        n,
        nodes,
    })
}

impl HasseDiagram {
    /// Graphviz rendering, edges pointing from the larger orbit down.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let dims: Vec<String> = self.dims.as_slice().iter().map(ToString::to_string).collect();
        writeln!(out, "digraph hasse {{").unwrap();
        writeln!(out, "  // n={} dims=({})", self.n, dims.join(",")).unwrap();
        writeln!(out, "  rankdir=TB;").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for (k, node) in self.nodes.iter().enumerate() {
            writeln!(out, "  n{k} [label=\"{node}\"];").unwrap();
        }
        for e in &self.edges {
            let label = match &e.annotation {
                Some(t) => format!("c={}, {}", e.codim, t),
                None => format!("c={}", e.codim),
            };
            writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.upper, e.lower, label).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }
}

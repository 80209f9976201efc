//! Quivers, their representations over the rationals, and the homological
//! invariants `[V,W] = dim Hom(V,W)` and `¹[V,W] = dim Ext¹(V,W)`.
//!
//! Both dimensions come from one linear map, the two-term Hom complex of the
//! path algebra
//!
//! ```text
//! ⊕_i Hom(V(i), W(i))  --δ-->  ⊕_α Hom(V(s α), W(e α))
//! δ(f)_α = f(e α)·V(α) − W(α)·f(s α)
//! ```
//!
//! whose kernel is `Hom(V,W)` and whose cokernel is `Ext¹(V,W)`. Path
//! algebras are hereditary, so this is exact for every finite quiver,
//! including ones with oriented cycles.

use std::collections::HashSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, rat, QuotientFrame, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(id: impl Into<String>, source: usize, target: usize) -> Self {
        Self {
            id: id.into(),
            source,
            target,
        }
    }
}

/// Finite quiver with vertices `1..=vertex_count`. Loops and multiple arrows
/// are allowed; arrow ids must be unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashSet::new();
        for a in &arrows {
            if !(1..=vertex_count).contains(&a.source) || !(1..=vertex_count).contains(&a.target) {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} joins {} -> {} outside 1..={}",
                    a.id, a.source, a.target, vertex_count
                )));
            }
            if !seen.insert(a.id.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {}", a.id)));
            }
        }
        Ok(Self { vertex_count, arrows })
    }

    /// The cyclic quiver of rank `n`: arrow `a{l}` runs from `l` to `l-1`,
    /// with `a1: 1 -> n`. For `n = 1` this is the loop quiver.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic quiver needs at least one vertex");
        let arrows = (1..=n)
            .map(|l| Arrow::new(format!("a{l}"), l, if l == 1 { n } else { l - 1 }))
            .collect();
        Self {
            vertex_count: n,
            arrows,
        }
    }

    /// Two vertices joined by two parallel arrows `1 -> 2`.
    pub fn kronecker() -> Self {
        Self {
            vertex_count: 2,
            arrows: vec![Arrow::new("a", 1, 2), Arrow::new("b", 1, 2)],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Same vertices and arrow ids with every arrow reversed.
    pub fn opposite(&self) -> Self {
        Self {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow::new(a.id.clone(), a.target, a.source))
                .collect(),
        }
    }
}

/// Per-vertex dimensions, indexed from vertex 1 at position 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Dimension at a 1-based vertex.
    pub fn at(&self, vertex: usize) -> usize {
        self.0[vertex - 1]
    }
}

impl From<Vec<usize>> for DimVector {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// A representation: one rational matrix per arrow, in the quiver's arrow
/// order, with `matrix(α)` of shape `dims[target] x dims[source]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    dims: DimVector,
    matrices: Vec<RatMatrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, dims: DimVector, matrices: Vec<RatMatrix>) -> Result<Self> {
        let rep = Self { quiver, dims, matrices };
        rep.validate()?;
        Ok(rep)
    }

    pub fn zero(quiver: Quiver, dims: DimVector) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: quiver.vertex_count(),
                actual: dims.len(),
            });
        }
        let matrices = quiver
            .arrows()
            .iter()
            .map(|a| RatMatrix::zeros(dims.at(a.target), dims.at(a.source)))
            .collect();
        Ok(Self { quiver, dims, matrices })
    }

    /// The one-dimensional simple at `vertex` with all maps zero.
    pub fn simple(quiver: Quiver, vertex: usize) -> Self {
        let mut dims = DimVector::zeros(quiver.vertex_count());
        dims.0[vertex - 1] = 1;
        Self::zero(quiver, dims).expect("dims match quiver")
    }

    /// Checks that every arrow matrix has shape `dims[target] x dims[source]`.
    pub fn validate(&self) -> Result<()> {
        let q = &self.quiver;
        if self.dims.len() != q.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: q.vertex_count(),
                actual: self.dims.len(),
            });
        }
        if self.matrices.len() != q.arrows().len() {
            return Err(Error::InvalidQuiver(format!(
                "{} matrices for {} arrows",
                self.matrices.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&self.matrices) {
            let rows = self.dims.at(a.target);
            let cols = self.dims.at(a.source);
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch {
                    arrow: a.id.clone(),
                    rows,
                    cols,
                    actual_rows: m.rows(),
                    actual_cols: m.cols(),
                });
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, arrow: usize) -> &RatMatrix {
        &self.matrices[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }
}

/// A morphism given by one block `f(i): V(i) -> W(i)` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomElement {
    pub blocks: Vec<RatMatrix>,
}

impl HomElement {
    pub fn zero(v: &Representation, w: &Representation) -> Self {
        let blocks = (1..=v.quiver().vertex_count())
            .map(|i| RatMatrix::zeros(w.dims().at(i), v.dims().at(i)))
            .collect();
        Self { blocks }
    }

    /// Checks block shapes and `f(e α)·V(α) = W(α)·f(s α)` for every arrow.
    pub fn check_morphism(&self, v: &Representation, w: &Representation) -> Result<()> {
        same_quiver(v, w)?;
        if self.blocks.len() != v.quiver().vertex_count() {
            return Err(Error::NotAMorphism {
                vertex: self.blocks.len(),
                reason: "wrong number of blocks".into(),
            });
        }
        for (idx, b) in self.blocks.iter().enumerate() {
            let i = idx + 1;
            if b.rows() != w.dims().at(i) || b.cols() != v.dims().at(i) {
                return Err(Error::NotAMorphism {
                    vertex: i,
                    reason: format!("block is {}x{}", b.rows(), b.cols()),
                });
            }
        }
        for (k, a) in v.quiver().arrows().iter().enumerate() {
            let left = self.blocks[a.target - 1].mul(v.matrix(k));
            let right = w.matrix(k).mul(&self.blocks[a.source - 1]);
            if left != right {
                return Err(Error::NotAMorphism {
                    vertex: a.target,
                    reason: format!("fails to commute with arrow {}", a.id),
                });
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| rank(b) == b.cols())
    }
}

fn same_quiver(v: &Representation, w: &Representation) -> Result<()> {
    if v.quiver() == w.quiver() {
        Ok(())
    } else {
        Err(Error::QuiverMismatch)
    }
}

/// Offsets of each vertex block `f(i)` (row-major, `dw[i] x dv[i]`) among
/// the unknowns of the Hom system.
fn block_offsets(v: &Representation, w: &Representation) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(v.dims().len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for (dv, dw) in v.dims().as_slice().iter().zip(w.dims().as_slice()) {
        acc += dv * dw;
        offsets.push(acc);
    }
    offsets
}

/// Matrix of `δ` above: one row per entry of each `Hom(V(s α), W(e α))`,
/// one column per entry of each block `f(i)`.
fn hom_system(v: &Representation, w: &Representation) -> RatMatrix {
    let offsets = block_offsets(v, w);
    let unknowns = offsets[offsets.len() - 1];
    let dv = v.dims();
    let dw = w.dims();
    let equations: usize = v
        .quiver()
        .arrows()
        .iter()
        .map(|a| dv.at(a.source) * dw.at(a.target))
        .sum();

    let mut sys = RatMatrix::zeros(equations, unknowns);
    let mut row = 0;
    for (k, a) in v.quiver().arrows().iter().enumerate() {
        let (s, e) = (a.source, a.target);
        let va = v.matrix(k);
        let wa = w.matrix(k);
        let fe = |r: usize, c: usize| offsets[e - 1] + r * dv.at(e) + c;
        let fs = |r: usize, c: usize| offsets[s - 1] + r * dv.at(s) + c;
        for r in 0..dw.at(e) {
            for c in 0..dv.at(s) {
                for kk in 0..dv.at(e) {
                    let x = va.get(kk, c);
                    if !x.is_zero() {
                        let col = fe(r, kk);
                        let cur = sys.get(row, col) + x;
                        sys.set(row, col, cur);
                    }
                }
                for kk in 0..dw.at(s) {
                    let x = wa.get(r, kk);
                    if !x.is_zero() {
                        let col = fs(kk, c);
                        let cur = sys.get(row, col) - x;
                        sys.set(row, col, cur);
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

/// `[V,W]`, the dimension of the space of morphisms `V -> W`.
pub fn hom_dim(v: &Representation, w: &Representation) -> Result<usize> {
    same_quiver(v, w)?;
    let sys = hom_system(v, w);
    Ok(sys.cols() - rank(&sys))
}

/// A basis of `Hom(V,W)`.
pub fn hom_basis(v: &Representation, w: &Representation) -> Result<Vec<HomElement>> {
    same_quiver(v, w)?;
    let sys = hom_system(v, w);
    let offsets = block_offsets(v, w);
    let n = v.quiver().vertex_count();
    Ok(kernel_basis(&sys)
        .into_iter()
        .map(|x| {
            let blocks = (0..n)
                .map(|i| {
                    let entries = x[offsets[i]..offsets[i + 1]].to_vec();
                    RatMatrix::new(w.dims().0[i], v.dims().0[i], entries).expect("block size matches offsets")
                })
                .collect();
            HomElement { blocks }
        })
        .collect())
}

/// `¹[V,W]`, the cokernel dimension of the Hom complex.
pub fn ext1_dim(v: &Representation, w: &Representation) -> Result<usize> {
    same_quiver(v, w)?;
    let sys = hom_system(v, w);
    Ok(sys.rows() - rank(&sys))
}

/// `⟨d,e⟩ = Σ_i d_i e_i − Σ_α d_{s α} e_{e α}`.
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    for len in [d.len(), e.len()] {
        if len != q.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: q.vertex_count(),
                actual: len,
            });
        }
    }
    let diag: i64 = d
        .as_slice()
        .iter()
        .zip(e.as_slice())
        .map(|(&a, &b)| (a * b) as i64)
        .sum();
    let arrows: i64 = q
        .arrows()
        .iter()
        .map(|a| (d.at(a.source) * e.at(a.target)) as i64)
        .sum();
    Ok(diag - arrows)
}

/// `dim O_V = dim GL(d) − [V,V]`.
pub fn orbit_dim(v: &Representation) -> usize {
    let gl: usize = v.dims().as_slice().iter().map(|d| d * d).sum();
    gl - hom_dim(v, v).expect("same quiver")
}

pub fn direct_sum(v: &Representation, w: &Representation) -> Result<Representation> {
    same_quiver(v, w)?;
    let dims = DimVector(
        v.dims()
            .as_slice()
            .iter()
            .zip(w.dims().as_slice())
            .map(|(a, b)| a + b)
            .collect(),
    );
    let matrices = v
        .matrices()
        .iter()
        .zip(w.matrices())
        .map(|(a, b)| a.block_diag(b))
        .collect();
    Ok(Representation {
        quiver: v.quiver().clone(),
        dims,
        matrices,
    })
}

/// Vector-space dual: a representation of the opposite quiver with every
/// matrix transposed.
pub fn dual(v: &Representation) -> Representation {
    Representation {
        quiver: v.quiver().opposite(),
        dims: v.dims().clone(),
        matrices: v.matrices().iter().map(RatMatrix::transpose).collect(),
    }
}

/// The quotient `m / f(u)` for an injective morphism `f: u -> m`.
pub fn cokernel_rep(f: &HomElement, u: &Representation, m: &Representation) -> Result<Representation> {
    f.check_morphism(u, m)?;
    for (idx, b) in f.blocks.iter().enumerate() {
        if rank(b) != b.cols() {
            return Err(Error::NotInjective { vertex: idx + 1 });
        }
    }
    let frames = f
        .blocks
        .iter()
        .enumerate()
        .map(|(idx, b)| {
            let cols: Vec<Vec<Rational>> = (0..b.cols()).map(|c| b.column(c)).collect();
            QuotientFrame::new(&cols, m.dims().0[idx])
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = DimVector(frames.iter().map(QuotientFrame::quotient_dim).collect());
    let matrices = m
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            QuotientFrame::induced(&frames[a.source - 1], &frames[a.target - 1], m.matrix(k))
                .ok_or(Error::NotInvariant { map: k })
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(m.quiver().clone(), dims, matrices)
}

/// Best-effort generic quotient of `m` by `u`.
///
/// Draws `attempts` seeded random integer combinations of a basis of
/// `Hom(u, m)`, keeps the injective ones and returns the cokernel with the
/// smallest endomorphism space, i.e. the largest orbit among the samples.
/// Over the rationals this stands in for genericity; it is not a proof of it.
pub fn generic_quotient(u: &Representation, m: &Representation, seed: u64, attempts: usize) -> Result<Representation> {
    let basis = hom_basis(u, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Representation)> = None;
    for _ in 0..attempts {
        let f = random_combination(u, m, &basis, &mut rng);
        if !f.is_injective() {
            continue;
        }
        let q = cokernel_rep(&f, u, m)?;
        let end = hom_dim(&q, &q)?;
        if best.as_ref().is_none_or(|(e, _)| end < *e) {
            best = Some((end, q));
        }
    }
    best.map(|(_, q)| q).ok_or(Error::NoEmbedding { attempts })
}

pub(crate) fn random_combination(
    u: &Representation,
    m: &Representation,
    basis: &[HomElement],
    rng: &mut ChaCha8Rng,
) -> HomElement {
    let mut f = HomElement::zero(u, m);
    for b in basis {
        let c = rat(rng.random_range(-4..=4));
        if c.is_zero() {
            continue;
        }
        for (acc, blk) in f.blocks.iter_mut().zip(&b.blocks) {
            *acc = acc.add(&blk.scale(&c));
        }
    }
    f
}

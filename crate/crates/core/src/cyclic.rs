//! Nilpotent representations of the cyclic quiver of rank `n`.
//!
//! Vertices are the residues `1..=n` and arrow `a{l}` runs from `l` to
//! `l-1`. The indecomposable nilpotent representations are the windows
//! `V(i,j)`, `i <= j`: basis `b_i, ..., b_j` with `b_l` at vertex `l mod n`,
//! the arrow leaving `b_l`'s vertex sends `b_l` to `b_{l-1}` and kills `b_i`.
//! So `soc V(i,j) = S_i`, `top V(i,j) = S_j`, and `V(i,j) ≅ V(i+cn, j+cn)`.
//! By Krull–Schmidt an isomorphism class is a finite multiset of windows.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, rat, RatMatrix};
use crate::quiver::{Arrow, DimVector, Quiver, Representation};

/// Residue of an integer vertex label in `1..=n`.
pub fn residue(n: usize, x: i64) -> usize {
    ((x - 1).rem_euclid(n as i64) + 1) as usize
}

fn prev_vertex(n: usize, v: usize) -> usize {
    if v == 1 {
        n
    } else {
        v - 1
    }
}

fn next_vertex(n: usize, v: usize) -> usize {
    if v == n {
        1
    } else {
        v + 1
    }
}

/// An indecomposable nilpotent class `V(i,j)`, stored in canonical form
/// `1 <= i <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    n: usize,
    i: i64,
    j: i64,
}

impl Window {
    /// Canonicalizes `(i,j)` by the unique shift by a multiple of `n` that
    /// puts `i` into `1..=n`.
    pub fn new(n: usize, i: i64, j: i64) -> Result<Self> {
        if n == 0 || i > j {
            return Err(Error::BadWindow { i, j });
        }
        let shift = residue(n, i) as i64 - i;
        Ok(Self {
            n,
            i: i + shift,
            j: j + shift,
        })
    }

    /// The loop-quiver Jordan block `U_f`.
    pub fn jordan(f: usize) -> Self {
        assert!(f >= 1);
        Self {
            n: 1,
            i: 1,
            j: f as i64,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn length(&self) -> usize {
        (self.j - self.i + 1) as usize
    }

    pub fn socle_residue(&self) -> usize {
        residue(self.n, self.i)
    }

    pub fn top_residue(&self) -> usize {
        residue(self.n, self.j)
    }

    /// Relabels vertices `v -> v + shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        Self::new(self.n, self.i + shift, self.j + shift).expect("shift keeps i <= j")
    }

    /// The window of the dual representation after relabeling `v -> -v`.
    pub fn dual(&self) -> Self {
        Self::new(self.n, -self.j, -self.i).expect("i <= j")
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `canonicalize` as a free function, for symmetry with the other operations.
pub fn canonicalize(n: usize, i: i64, j: i64) -> Result<Window> {
    Window::new(n, i, j)
}

/// Isomorphism class of a nilpotent representation: a sorted multiset of
/// canonical windows sharing one rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WindowsFile", into = "WindowsFile")]
pub struct WindowMultiset {
    n: usize,
    windows: Vec<Window>,
}

impl WindowMultiset {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1);
        Self { n, windows: Vec::new() }
    }

    pub fn new(n: usize, windows: impl IntoIterator<Item = Window>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadWindow { i: 0, j: 0 });
        }
        let mut windows: Vec<Window> = windows.into_iter().collect();
        if let Some(w) = windows.iter().find(|w| w.n != n) {
            return Err(Error::RankMismatch(n, w.n));
        }
        windows.sort();
        Ok(Self { n, windows })
    }

    /// Windows given as raw `(i,j)` pairs in any shift.
    pub fn from_pairs(n: usize, pairs: &[(i64, i64)]) -> Result<Self> {
        let windows = pairs
            .iter()
            .map(|&(i, j)| Window::new(n, i, j))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, windows)
    }

    /// Loop-quiver class `U_{f1} ⊕ U_{f2} ⊕ ...`.
    pub fn jordan(parts: &[usize]) -> Self {
        Self::new(1, parts.iter().map(|&f| Window::jordan(f))).expect("rank 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn nu(&self) -> usize {
        self.windows.len()
    }

    pub fn total_dim(&self) -> usize {
        self.windows.iter().map(Window::length).sum()
    }

    pub fn dim_vector(&self) -> DimVector {
        let n = self.n as i64;
        let mut d = vec![0usize; self.n];
        for w in &self.windows {
            let len = w.length() as i64;
            // full turns around the cycle, then the leftover residues
            for slot in d.iter_mut() {
                *slot += (len / n) as usize;
            }
            for l in 0..len % n {
                d[residue(self.n, w.i + l) - 1] += 1;
            }
        }
        DimVector(d)
    }

    /// Relabels every vertex `v -> v + shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        Self::new(self.n, self.windows.iter().map(|w| w.shifted(shift))).expect("same rank")
    }

    /// Window-wise dual `(i,j) -> (-j,-i)`.
    pub fn dual(&self) -> Self {
        Self::new(self.n, self.windows.iter().map(Window::dual)).expect("same rank")
    }

    /// Multiset intersection.
    pub fn common(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut a, mut b) = (0, 0);
        while a < self.windows.len() && b < other.windows.len() {
            match self.windows[a].cmp(&other.windows[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.windows[a]);
                    a += 1;
                    b += 1;
                }
            }
        }
        Self {
            n: self.n,
            windows: out,
        }
    }

    /// Multiset difference `self − other`, ignoring entries of `other` that
    /// are absent.
    pub fn minus(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let mut b = 0;
        for w in &self.windows {
            while b < other.windows.len() && other.windows[b] < *w {
                b += 1;
            }
            if b < other.windows.len() && other.windows[b] == *w {
                b += 1;
            } else {
                out.push(*w);
            }
        }
        Self {
            n: self.n,
            windows: out,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.n, self.windows.iter().chain(&other.windows).copied()).expect("same rank")
    }
}

impl fmt::Display for WindowMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.windows.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.windows.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// On-disk form of a window multiset: `{"n": 2, "windows": [[1,4],[2,3]]}`.
/// Repeats encode multiplicity. Windows are accepted in any shift and
/// written canonical and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowsFile {
    pub n: usize,
    pub windows: Vec<[i64; 2]>,
}

impl TryFrom<WindowsFile> for WindowMultiset {
    type Error = Error;

    fn try_from(file: WindowsFile) -> Result<Self> {
        let pairs: Vec<(i64, i64)> = file.windows.iter().map(|w| (w[0], w[1])).collect();
        Self::from_pairs(file.n, &pairs)
    }
}

impl From<WindowMultiset> for WindowsFile {
    fn from(ms: WindowMultiset) -> Self {
        Self {
            n: ms.n,
            windows: ms.windows.iter().map(|w| [w.i, w.j]).collect(),
        }
    }
}

/// Semisimple nilpotent class: multiplicity of each simple `S_r`,
/// `r = 1..=n`, at index `r-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleMultiset {
    counts: Vec<usize>,
}

impl SimpleMultiset {
    pub fn new(counts: Vec<usize>) -> Self {
        assert!(!counts.is_empty());
        Self { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, residue: usize) -> usize {
        self.counts[residue - 1]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Residues with nonzero multiplicity.
    pub fn support(&self) -> BTreeSet<usize> {
        (1..=self.n()).filter(|&r| self.count(r) > 0).collect()
    }

    pub fn as_windows(&self) -> WindowMultiset {
        let n = self.n();
        let ws = (1..=n)
            .flat_map(|r| std::iter::repeat_n(Window::new(n, r as i64, r as i64).expect("simple"), self.count(r)));
        WindowMultiset::new(n, ws).expect("same rank")
    }
}

pub fn dim_vector_of(ms: &WindowMultiset) -> DimVector {
    ms.dim_vector()
}

pub fn nu(ms: &WindowMultiset) -> usize {
    ms.nu()
}

/// Block-diagonal 0/1 realization in the window bases `b_i, ..., b_j`,
/// over `Quiver::cyclic(n)`.
pub fn realize(ms: &WindowMultiset) -> Representation {
    let n = ms.n();
    let dims = ms.dim_vector();
    // local index of each basis vector b_l inside its vertex space
    let mut fill = vec![0usize; n];
    let mut local: Vec<Vec<usize>> = Vec::with_capacity(ms.nu());
    for w in ms.windows() {
        let idx = (w.i..=w.j)
            .map(|l| {
                let v = residue(n, l) - 1;
                fill[v] += 1;
                fill[v] - 1
            })
            .collect();
        local.push(idx);
    }
    let quiver = Quiver::cyclic(n);
    let mut matrices: Vec<RatMatrix> = quiver
        .arrows()
        .iter()
        .map(|a| RatMatrix::zeros(dims.at(a.target), dims.at(a.source)))
        .collect();
    for (w, idx) in ms.windows().iter().zip(&local) {
        for l in w.i + 1..=w.j {
            let pos = (l - w.i) as usize;
            // arrow a{v} has index v-1 in Quiver::cyclic
            let arrow = residue(n, l) - 1;
            matrices[arrow].set(idx[pos - 1], idx[pos], rat(1));
        }
    }
    Representation::new(quiver, dims, matrices).expect("realization has consistent shapes")
}

/// If `q` is a cyclic quiver in the `l -> l-1` orientation, its rank and the
/// arrow index leaving each vertex.
pub fn cyclic_structure(q: &Quiver) -> Option<(usize, Vec<usize>)> {
    let n = q.vertex_count();
    if n == 0 || q.arrows().len() != n {
        return None;
    }
    let mut leaving = vec![usize::MAX; n];
    for (k, a) in q.arrows().iter().enumerate() {
        if a.target != prev_vertex(n, a.source) || leaving[a.source - 1] != usize::MAX {
            return None;
        }
        leaving[a.source - 1] = k;
    }
    Some((n, leaving))
}

/// Relabels a representation of a cyclic quiver oriented `l -> l+1` (such as
/// the dual of a standard one) by `v -> -v mod n`, giving the standard
/// orientation. Standard input is returned unchanged.
pub fn to_standard_orientation(v: &Representation) -> Result<Representation> {
    if cyclic_structure(v.quiver()).is_some() {
        return Ok(v.clone());
    }
    let n = v.quiver().vertex_count();
    let flip = |x: usize| residue(n, -(x as i64));
    let arrows = v
        .quiver()
        .arrows()
        .iter()
        .map(|a| Arrow::new(a.id.clone(), flip(a.source), flip(a.target)))
        .collect();
    let q = Quiver::new(n, arrows)?;
    if cyclic_structure(&q).is_none() {
        return Err(Error::NotCyclic);
    }
    let mut dims = vec![0; n];
    for x in 1..=n {
        dims[flip(x) - 1] = v.dims().at(x);
    }
    Representation::new(q, DimVector(dims), v.matrices().to_vec())
}

/// `rank` of the composite of `t` consecutive arrows starting at each vertex,
/// for `t = 0..=max_t`: `ranks[l-1][t]`.
fn path_ranks(v: &Representation, leaving: &[usize], max_t: usize) -> Vec<Vec<usize>> {
    let n = leaving.len();
    (1..=n)
        .map(|l| {
            let mut out = Vec::with_capacity(max_t + 1);
            let mut p = RatMatrix::identity(v.dims().at(l));
            let mut cur = l;
            out.push(v.dims().at(l));
            for _ in 1..=max_t {
                p = v.matrix(leaving[cur - 1]).mul(&p);
                cur = prev_vertex(n, cur);
                out.push(if p.rows() == 0 || p.cols() == 0 { 0 } else { rank(&p) });
            }
            out
        })
        .collect()
}

/// True iff every path composite of length `dim V` vanishes.
pub fn is_nilpotent(v: &Representation) -> Result<bool> {
    let (_, leaving) = cyclic_structure(v.quiver()).ok_or(Error::NotCyclic)?;
    let d = v.total_dim();
    if d == 0 {
        return Ok(true);
    }
    let ranks = path_ranks(v, &leaving, d);
    Ok(ranks.iter().all(|r| r[d] == 0))
}

/// Krull–Schmidt decomposition of a nilpotent representation.
///
/// With `r(l,t)` the rank of the length-`t` path leaving vertex `l`, the
/// number of windows with top at residue `j` and length exactly `L` is
/// `r(j,L-1) − r(j,L) − r(j+1,L) + r(j+1,L+1)`: `r(l,t) − r(l+1,t+1)` counts
/// the windows with top `≡ l` and length `> t`.
pub fn decompose_nilpotent(v: &Representation) -> Result<WindowMultiset> {
    let (n, leaving) = cyclic_structure(v.quiver()).ok_or(Error::NotCyclic)?;
    let d = v.total_dim();
    if d == 0 {
        return Ok(WindowMultiset::empty(n));
    }
    let r = path_ranks(v, &leaving, d + 1);
    if r.iter().any(|row| row[d] != 0) {
        return Err(Error::NotNilpotent);
    }
    let mut windows = Vec::new();
    for top in 1..=n {
        let next = next_vertex(n, top);
        for len in 1..=d {
            let mult = r[top - 1][len - 1] as i64 - r[top - 1][len] as i64 - r[next - 1][len] as i64
                + r[next - 1][len + 1] as i64;
            if mult < 0 {
                return Err(Error::Inconsistent(format!(
                    "negative multiplicity for top {top}, length {len}"
                )));
            }
            let top_label = top as i64;
            let w = Window::new(n, top_label - len as i64 + 1, top_label)?;
            windows.extend(std::iter::repeat_n(w, mult as usize));
        }
    }
    let ms = WindowMultiset::new(n, windows)?;
    if ms.dim_vector() != *v.dims() {
        return Err(Error::Inconsistent("decomposition does not match dims".into()));
    }
    Ok(ms)
}

/// `[V(a), V(b)]`: the number of `m` with `i_b <= m <= min(j_b, i_b + len(a) − 1)`
/// and `m ≡ j_a (mod n)`. A morphism is fixed by where `b_{j_a}` goes, and
/// its image is a quotient of `V(a)`, hence no longer than `a`.
pub fn window_hom_dim(a: &Window, b: &Window) -> Result<usize> {
    if a.n != b.n {
        return Err(Error::RankMismatch(a.n, b.n));
    }
    let n = a.n as i64;
    let hi = b.j.min(b.i + a.j - a.i);
    let first = b.i + (a.j - b.i).rem_euclid(n);
    Ok(if first > hi { 0 } else { ((hi - first) / n + 1) as usize })
}

/// `[M, N]` summed over all pairs of windows.
pub fn multiset_hom_dim(m: &WindowMultiset, nn: &WindowMultiset) -> Result<usize> {
    if m.n != nn.n {
        return Err(Error::RankMismatch(m.n, nn.n));
    }
    let mut total = 0;
    for a in m.windows() {
        for b in nn.windows() {
            total += window_hom_dim(a, b)?;
        }
    }
    Ok(total)
}

pub fn socle(ms: &WindowMultiset) -> SimpleMultiset {
    let mut counts = vec![0; ms.n()];
    for w in ms.windows() {
        counts[w.socle_residue() - 1] += 1;
    }
    SimpleMultiset::new(counts)
}

pub fn top(ms: &WindowMultiset) -> SimpleMultiset {
    let mut counts = vec![0; ms.n()];
    for w in ms.windows() {
        counts[w.top_residue() - 1] += 1;
    }
    SimpleMultiset::new(counts)
}

fn check_residues(present: &SimpleMultiset, selected: &BTreeSet<usize>) -> Result<()> {
    for &r in selected {
        if r == 0 || r > present.n() || present.count(r) == 0 {
            return Err(Error::BadResidue(r));
        }
    }
    Ok(())
}

/// Quotient by the socle summands at the selected residues:
/// `V(i,j) -> V(i+1,j)`, dropped when `i = j`.
pub fn quotient_by_socle(ms: &WindowMultiset, selected: &BTreeSet<usize>) -> Result<WindowMultiset> {
    check_residues(&socle(ms), selected)?;
    let n = ms.n();
    let windows = ms
        .windows()
        .iter()
        .filter_map(|w| {
            if !selected.contains(&w.socle_residue()) {
                Some(*w)
            } else if w.i == w.j {
                None
            } else {
                Some(Window::new(n, w.i + 1, w.j).expect("i < j"))
            }
        })
        .collect::<Vec<_>>();
    WindowMultiset::new(n, windows)
}

/// Passage to the radical at the selected top residues:
/// `V(i,j) -> V(i,j-1)`, dropped when `i = j`.
pub fn quotient_to_radical(ms: &WindowMultiset, selected: &BTreeSet<usize>) -> Result<WindowMultiset> {
    check_residues(&top(ms), selected)?;
    let n = ms.n();
    let windows = ms
        .windows()
        .iter()
        .filter_map(|w| {
            if !selected.contains(&w.top_residue()) {
                Some(*w)
            } else if w.i == w.j {
                None
            } else {
                Some(Window::new(n, w.i, w.j - 1).expect("i < j"))
            }
        })
        .collect::<Vec<_>>();
    WindowMultiset::new(n, windows)
}

/// The unique class `V` with `soc V ≅ u` and `V / soc V ≅ t`.
///
/// Each window `V(i+1,j)` of `t` lifts to `V(i,j)`; the simples `S_i` left
/// over number `u_i − #{windows of t with socle at i+1}`.
pub fn reconstruct_from_socle_quotient(u: &SimpleMultiset, t: &WindowMultiset) -> Result<WindowMultiset> {
    let n = t.n();
    if u.n() != n {
        return Err(Error::RankMismatch(u.n(), n));
    }
    let lifted = socle(t);
    let mut windows: Vec<Window> = t
        .windows()
        .iter()
        .map(|w| Window::new(n, w.i - 1, w.j).expect("i-1 < j"))
        .collect();
    for r in 1..=n {
        let above = lifted.count(next_vertex(n, r));
        let simples = u.count(r) as i64 - above as i64;
        if simples < 0 {
            return Err(Error::Inconsistent(format!(
                "socle multiplicity {} at residue {r} is below the {above} windows lifting onto it",
                u.count(r)
            )));
        }
        let s = Window::new(n, r as i64, r as i64)?;
        windows.extend(std::iter::repeat_n(s, simples as usize));
    }
    WindowMultiset::new(n, windows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inverse, Rational};
    use crate::quiver::hom_dim;
    use proptest::prelude::*;

    fn ms(n: usize, pairs: &[(i64, i64)]) -> WindowMultiset {
        WindowMultiset::from_pairs(n, pairs).unwrap()
    }

    fn set(rs: &[usize]) -> BTreeSet<usize> {
        rs.iter().copied().collect()
    }

    #[test]
    fn canonical_forms() {
        let w = canonicalize(2, 0, 3).unwrap();
        assert_eq!((w.i(), w.j()), (2, 5));
        let w = canonicalize(2, 1, 4).unwrap();
        assert_eq!((w.i(), w.j()), (1, 4));
        let w = canonicalize(3, -2, 0).unwrap();
        assert_eq!((w.i(), w.j()), (1, 3));
        assert_eq!(canonicalize(2, 3, 1), Err(Error::BadWindow { i: 3, j: 1 }));
        assert_eq!(Window::new(2, 4, 7).unwrap(), Window::new(2, 0, 3).unwrap());
    }

    #[test]
    fn dim_vectors() {
        assert_eq!(dim_vector_of(&ms(2, &[(1, 4)])), DimVector(vec![2, 2]));
        assert_eq!(dim_vector_of(&ms(2, &[(1, 2), (2, 3)])), DimVector(vec![2, 2]));
        assert_eq!(dim_vector_of(&WindowMultiset::jordan(&[5])), DimVector(vec![5]));
        assert_eq!(dim_vector_of(&ms(3, &[(2, 6)])), DimVector(vec![1, 2, 2]));
    }

    #[test]
    fn realize_examples() {
        let z = realize(&WindowMultiset::empty(3));
        assert_eq!(z.total_dim(), 0);

        let u2 = realize(&WindowMultiset::jordan(&[2]));
        assert_eq!(u2.matrix(0), &RatMatrix::from_i64(2, 2, &[0, 1, 0, 0]).unwrap());

        // V(1,2) on n = 2: b_2 at vertex 2 maps to b_1 at vertex 1 along a2
        let v = realize(&ms(2, &[(1, 2)]));
        assert_eq!(v.matrix(1), &RatMatrix::from_i64(1, 1, &[1]).unwrap());
        assert_eq!(v.matrix(0), &RatMatrix::from_i64(1, 1, &[0]).unwrap());
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&realize(&ms(3, &[(1, 7), (2, 2)]))).unwrap());
        let q = Quiver::cyclic(1);
        let one = Representation::new(q.clone(), DimVector(vec![1]), vec![RatMatrix::identity(1)]).unwrap();
        assert!(!is_nilpotent(&one).unwrap());
        assert_eq!(decompose_nilpotent(&one), Err(Error::NotNilpotent));
        let zero = Representation::zero(Quiver::cyclic(2), DimVector(vec![0, 0])).unwrap();
        assert!(is_nilpotent(&zero).unwrap());
        let k = Representation::zero(Quiver::kronecker(), DimVector(vec![1, 1])).unwrap();
        assert_eq!(is_nilpotent(&k), Err(Error::NotCyclic));
    }

    #[test]
    fn decompose_jordan_2_plus_1() {
        let m = RatMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let v = Representation::new(Quiver::cyclic(1), DimVector(vec![3]), vec![m]).unwrap();
        assert_eq!(decompose_nilpotent(&v).unwrap(), WindowMultiset::jordan(&[2, 1]));
    }

    #[test]
    fn decompose_semisimple() {
        let v = Representation::zero(Quiver::cyclic(2), DimVector(vec![1, 1])).unwrap();
        assert_eq!(decompose_nilpotent(&v).unwrap(), ms(2, &[(1, 1), (2, 2)]));
    }

    #[test]
    fn window_hom_examples() {
        assert_eq!(window_hom_dim(&Window::jordan(2), &Window::jordan(3)).unwrap(), 2);
        let a = Window::new(2, 2, 3).unwrap();
        let b = Window::new(2, 2, 2).unwrap();
        assert_eq!(window_hom_dim(&a, &b).unwrap(), 0);
        let c = Window::new(2, 1, 4).unwrap();
        assert_eq!(window_hom_dim(&c, &c).unwrap(), 2);
        assert_eq!(window_hom_dim(&Window::jordan(1), &c), Err(Error::RankMismatch(1, 2)));
    }

    #[test]
    fn window_hom_matches_linear_algebra_small() {
        for n in 1..=3usize {
            let all: Vec<Window> = (1..=n as i64)
                .flat_map(|i| (1..=6).map(move |len| Window::new(n, i, i + len - 1).unwrap()))
                .collect();
            for a in &all {
                let ra = realize(&WindowMultiset::new(n, [*a]).unwrap());
                for b in &all {
                    let rb = realize(&WindowMultiset::new(n, [*b]).unwrap());
                    assert_eq!(
                        window_hom_dim(a, b).unwrap(),
                        hom_dim(&ra, &rb).unwrap(),
                        "n={n} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn socle_and_top() {
        let v = ms(2, &[(1, 4)]);
        assert_eq!(socle(&v).counts(), &[1, 0]);
        assert_eq!(top(&v).counts(), &[0, 1]);
        let s = ms(3, &[(1, 1), (3, 3), (3, 3)]);
        assert_eq!(socle(&s), top(&s));
        assert_eq!(socle(&s).as_windows(), s);
        assert_eq!(socle(&WindowMultiset::empty(2)).total(), 0);
    }

    #[test]
    fn socle_quotients() {
        assert_eq!(
            quotient_by_socle(&ms(2, &[(1, 4)]), &set(&[1])).unwrap(),
            ms(2, &[(2, 4)])
        );
        assert_eq!(
            quotient_by_socle(&ms(2, &[(1, 2), (2, 3)]), &set(&[1])).unwrap(),
            ms(2, &[(2, 2), (2, 3)])
        );
        let v = ms(2, &[(1, 2), (2, 3)]);
        assert_eq!(quotient_by_socle(&v, &set(&[])).unwrap(), v);
        assert_eq!(
            quotient_by_socle(&ms(2, &[(1, 4)]), &set(&[2])),
            Err(Error::BadResidue(2))
        );
    }

    #[test]
    fn radical_quotients() {
        let top8 = residue(2, 8);
        assert_eq!(
            quotient_to_radical(&ms(2, &[(4, 8)]), &set(&[top8])).unwrap(),
            ms(2, &[(4, 7)])
        );
        assert_eq!(
            quotient_to_radical(&ms(2, &[(2, 3), (4, 6)]), &set(&[2])).unwrap(),
            ms(2, &[(2, 3), (4, 5)])
        );
        let v = ms(2, &[(2, 3)]);
        assert_eq!(quotient_to_radical(&v, &set(&[])).unwrap(), v);
        assert_eq!(quotient_to_radical(&v, &set(&[3])), Err(Error::BadResidue(3)));
    }

    #[test]
    fn reconstruction_examples() {
        let u = SimpleMultiset::new(vec![0, 2]);
        let t = ms(2, &[(3, 3)]);
        assert_eq!(
            reconstruct_from_socle_quotient(&u, &t).unwrap(),
            ms(2, &[(2, 3), (2, 2)])
        );
        let empty = WindowMultiset::empty(2);
        assert_eq!(
            reconstruct_from_socle_quotient(&SimpleMultiset::new(vec![0, 0]), &empty).unwrap(),
            empty
        );
        let bad = reconstruct_from_socle_quotient(&SimpleMultiset::new(vec![0, 0]), &t);
        assert!(matches!(bad, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn nu_counts_summands() {
        assert_eq!(nu(&WindowMultiset::empty(1)), 0);
        assert_eq!(nu(&ms(2, &[(1, 4)])), 1);
        assert_eq!(nu(&ms(2, &[(1, 2), (2, 3)])), 2);
    }

    #[test]
    fn dual_of_window_is_a_window_on_the_opposite_cycle() {
        for n in 1..=3usize {
            for i in 1..=n as i64 {
                for len in 1..=5 {
                    let w = Window::new(n, i, i + len - 1).unwrap();
                    let d = crate::quiver::dual(&realize(&WindowMultiset::new(n, [w]).unwrap()));
                    let back = decompose_nilpotent(&to_standard_orientation(&d).unwrap()).unwrap();
                    assert_eq!(back, WindowMultiset::new(n, [w.dual()]).unwrap());
                    assert_eq!(back.windows()[0].length(), w.length());
                }
            }
        }
    }

    #[test]
    fn serde_form_is_canonical() {
        let v: WindowMultiset = serde_json::from_str(r#"{"n":2,"windows":[[2,3],[0,3],[4,5]]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"n":2,"windows":[[2,3],[2,3],[2,5]]}"#
        );
        assert!(serde_json::from_str::<WindowMultiset>(r#"{"n":2,"windows":[[3,2]]}"#).is_err());
    }

    // Conjugates a realization by a random invertible change of basis at each
    // vertex, so decomposition sees matrices that are not in window form.
    fn scrambled(v: &Representation, seed: u64) -> Representation {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let bases: Vec<(RatMatrix, RatMatrix)> = v
            .dims()
            .as_slice()
            .iter()
            .map(|&d| loop {
                let e: Vec<Rational> = (0..d * d).map(|_| rat(rng.random_range(-2..=2))).collect();
                let g = RatMatrix::new(d, d, e).unwrap();
                if let Some(gi) = inverse(&g) {
                    break (g, gi);
                }
            })
            .collect();
        let mats = v
            .quiver()
            .arrows()
            .iter()
            .zip(v.matrices())
            .map(|(a, m)| bases[a.target - 1].0.mul(m).mul(&bases[a.source - 1].1))
            .collect();
        Representation::new(v.quiver().clone(), v.dims().clone(), mats).unwrap()
    }

    fn multiset_strategy() -> impl Strategy<Value = WindowMultiset> {
        (1usize..=3).prop_flat_map(|n| {
            proptest::collection::vec((1i64..=n as i64, 1i64..=4), 0..=3).prop_map(move |ws| {
                let pairs: Vec<(i64, i64)> = ws.iter().map(|&(i, len)| (i, i + len - 1)).collect();
                WindowMultiset::from_pairs(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn decompose_survives_change_of_basis(v in multiset_strategy(), seed in any::<u64>()) {
            let rep = scrambled(&realize(&v), seed);
            prop_assert_eq!(decompose_nilpotent(&rep).unwrap(), v);
        }

        #[test]
        fn hom_is_additive_over_windows(a in multiset_strategy(), b in multiset_strategy()) {
            prop_assume!(a.n() == b.n());
            let direct = hom_dim(&realize(&a), &realize(&b)).unwrap();
            prop_assert_eq!(multiset_hom_dim(&a, &b).unwrap(), direct);
        }

        #[test]
        fn reconstruct_round_trip(v in multiset_strategy()) {
            let all = socle(&v).support();
            let t = quotient_by_socle(&v, &all).unwrap();
            prop_assert_eq!(reconstruct_from_socle_quotient(&socle(&v), &t).unwrap(), v);
        }

        #[test]
        fn rotation_commutes_with_dim_vector(v in multiset_strategy(), s in -5i64..5) {
            let rotated = v.shifted(s).dim_vector();
            let d = v.dim_vector();
            let n = v.n();
            for x in 1..=n {
                prop_assert_eq!(rotated.at(residue(n, x as i64 + s)), d.at(x));
            }
        }
    }
}

//! Degeneration order on nilpotent classes of a cyclic quiver.
//!
//! `M` degenerates to `N` iff `dimv M = dimv N` and `[M,Y] <= [N,Y]` for all
//! `Y`. Homs from nilpotent classes into the other tubes vanish, and
//! `[V(a), V(i,j)]` stops changing once `V(i,j)` is at least as long as
//! `V(a)`, so it suffices to test every window of length up to `dim M`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclic::{decompose_nilpotent, multiset_hom_dim, realize, window_hom_dim, Window, WindowMultiset};
use crate::error::{Error, Result};
use crate::quiver::{cokernel_rep, hom_basis, random_combination, DimVector};

/// Every canonical window of lengths `1..=max_length`, residues in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSet {
    n: usize,
    max_length: usize,
    windows: Vec<Window>,
}

impl TestSet {
    pub fn new(n: usize, max_length: usize) -> Self {
        let windows = (1..=n as i64)
            .flat_map(|i| (1..=max_length as i64).map(move |len| (i, len)))
            .map(|(i, len)| Window::new(n, i, i + len - 1).expect("valid window"))
            .collect();
        Self { n, max_length, windows }
    }

    /// The test set that decides degenerations between classes of `m`'s size.
    pub fn for_class(m: &WindowMultiset) -> Self {
        Self::new(m.n(), m.total_dim().max(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }
}

/// `[V, Y]` for each test window `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomProfile(pub Vec<usize>);

impl HomProfile {
    /// Componentwise `<=`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

fn check_rank(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RankMismatch(a, b))
    }
}

pub fn hom_profile(ms: &WindowMultiset, ts: &TestSet) -> Result<HomProfile> {
    check_rank(ms.n(), ts.n())?;
    let mut out = Vec::with_capacity(ts.windows().len());
    for y in ts.windows() {
        let mut total = 0;
        for w in ms.windows() {
            total += window_hom_dim(w, y)?;
        }
        out.push(total);
    }
    Ok(HomProfile(out))
}

/// `[Y, V]` for each test window `Y`.
pub fn right_hom_profile(ms: &WindowMultiset, ts: &TestSet) -> Result<HomProfile> {
    check_rank(ms.n(), ts.n())?;
    let mut out = Vec::with_capacity(ts.windows().len());
    for y in ts.windows() {
        let mut total = 0;
        for w in ms.windows() {
            total += window_hom_dim(y, w)?;
        }
        out.push(total);
    }
    Ok(HomProfile(out))
}

pub fn degenerates(m: &WindowMultiset, nn: &WindowMultiset) -> Result<bool> {
    degenerates_with(m, nn, &TestSet::for_class(m))
}

/// `degenerates` against an explicit test set.
pub fn degenerates_with(m: &WindowMultiset, nn: &WindowMultiset, ts: &TestSet) -> Result<bool> {
    check_rank(m.n(), nn.n())?;
    if m.dim_vector() != nn.dim_vector() {
        return Ok(false);
    }
    Ok(hom_profile(m, ts)?.le(&hom_profile(nn, ts)?))
}

/// `[N,N] − [M,M]` without checking that `M` degenerates to `N`.
pub(crate) fn endo_gap(m: &WindowMultiset, nn: &WindowMultiset) -> Result<i64> {
    Ok(multiset_hom_dim(nn, nn)? as i64 - multiset_hom_dim(m, m)? as i64)
}

/// `codim(M,N) = [N,N] − [M,M]` for a degeneration `M -> N`.
pub fn codim(m: &WindowMultiset, nn: &WindowMultiset) -> Result<usize> {
    if !degenerates(m, nn)? {
        return Err(Error::NotADegeneration);
    }
    Ok(endo_gap(m, nn)? as usize)
}

/// All dimension vectors of length `n` with the given total, in
/// lexicographic order.
pub fn dim_vectors(n: usize, total: usize) -> Vec<DimVector> {
    fn go(n: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<DimVector>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(DimVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            go(n, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, total, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Every nilpotent class with dimension vector `d`, sorted.
pub fn enumerate_nilpotent(n: usize, d: &DimVector) -> Vec<WindowMultiset> {
    assert_eq!(d.len(), n, "dimension vector length must equal n");
    let total = d.total();
    let candidates: Vec<(Window, Vec<usize>)> = TestSet::new(n, total)
        .windows()
        .iter()
        .map(|w| (*w, WindowMultiset::new(n, [*w]).expect("rank n").dim_vector().0))
        .collect();

    fn go(
        start: usize,
        left: &mut Vec<usize>,
        chosen: &mut Vec<Window>,
        candidates: &[(Window, Vec<usize>)],
        out: &mut Vec<Vec<Window>>,
    ) {
        if left.iter().all(|&x| x == 0) {
            out.push(chosen.clone());
            return;
        }
        for (k, (w, dv)) in candidates.iter().enumerate().skip(start) {
            if dv.iter().zip(left.iter()).any(|(a, b)| a > b) {
                continue;
            }
            for (l, a) in left.iter_mut().zip(dv) {
                *l -= a;
            }
            chosen.push(*w);
            go(k, left, chosen, candidates, out);
            chosen.pop();
            for (l, a) in left.iter_mut().zip(dv) {
                *l += a;
            }
        }
    }

    let mut raw = Vec::new();
    go(0, &mut d.0.clone(), &mut Vec::new(), &candidates, &mut raw);
    let mut classes: Vec<WindowMultiset> = raw
        .into_iter()
        .map(|ws| WindowMultiset::new(n, ws).expect("rank n"))
        .collect();
    classes.sort();
    classes.dedup();
    classes
}

/// Comparability data for one poset of classes.
pub(crate) struct PosetData {
    pub profiles: Vec<HomProfile>,
    pub endo: Vec<usize>,
}

pub(crate) fn poset_data(nodes: &[WindowMultiset], ts: &TestSet) -> Result<PosetData> {
    use rayon::prelude::*;
    let profiles = nodes
        .par_iter()
        .map(|m| hom_profile(m, ts))
        .collect::<Result<Vec<_>>>()?;
    let endo = nodes
        .par_iter()
        .map(|m| multiset_hom_dim(m, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(PosetData { profiles, endo })
}

/// Every split of `nn` into a nonzero proper sub-multiset `U` and its
/// complement `V`, as `(U, V)` pairs without repeats.
pub(crate) fn splits(nn: &WindowMultiset) -> Vec<(WindowMultiset, WindowMultiset)> {
    let mut counts: BTreeMap<Window, usize> = BTreeMap::new();
    for w in nn.windows() {
        *counts.entry(*w).or_default() += 1;
    }
    let distinct: Vec<(Window, usize)> = counts.into_iter().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; distinct.len()];
    loop {
        // advance the mixed-radix counter over sub-multisets
        let mut pos = 0;
        while pos < choice.len() && choice[pos] == distinct[pos].1 {
            choice[pos] = 0;
            pos += 1;
        }
        if pos == choice.len() {
            return out;
        }
        choice[pos] += 1;
        if choice.iter().sum::<usize>() == nn.nu() {
            continue;
        }
        let sub = WindowMultiset::new(
            nn.n(),
            distinct
                .iter()
                .zip(&choice)
                .flat_map(|((w, _), &c)| std::iter::repeat_n(*w, c)),
        )
        .expect("same rank");
        let rest = nn.minus(&sub);
        out.push((sub, rest));
    }
}

/// Looks for a monomorphism `U -> M` with cokernel `V` among the basis
/// elements of `Hom(U,M)` and `attempts` random combinations of them.
pub(crate) fn find_sequence(
    u: &WindowMultiset,
    m: &WindowMultiset,
    v: &WindowMultiset,
    rng: &mut ChaCha8Rng,
    attempts: usize,
) -> Result<bool> {
    let source = realize(u);
    let target = realize(m);
    let basis = hom_basis(&source, &target)?;
    let sampled: Vec<_> = (0..attempts)
        .map(|_| random_combination(&source, &target, &basis, rng))
        .collect();
    for f in basis.iter().chain(&sampled) {
        if !f.is_injective() {
            continue;
        }
        let quotient = cokernel_rep(f, &source, &target)?;
        if decompose_nilpotent(&quotient)? == *v {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Searches for a short exact sequence `0 -> U -> M -> V -> 0` with
/// `U ⊕ V ≅ N`, trying every split of `N` into a nonzero proper `U` and its
/// complement `V`.
///
/// Morphisms `U -> M` are sampled as the basis elements of `Hom(U,M)` and as
/// seeded random combinations of them. Returns `Ok(None)` when no witness
/// turned up; that does not refute its existence.
pub fn extension_witness(
    m: &WindowMultiset,
    nn: &WindowMultiset,
    seed: u64,
    attempts: usize,
) -> Result<Option<(WindowMultiset, WindowMultiset)>> {
    check_rank(m.n(), nn.n())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (u, v) in splits(nn) {
        if find_sequence(&u, m, &v, &mut rng, attempts)? {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

//! Types of singularities of codimension-two degenerations between nilpotent
//! classes, computed by socle and top reductions.
//!
//! For a degeneration `M -> N` the classifier repeats:
//!
//! 1. cancel common direct summands;
//! 2. stop with `Reg` once the pair is empty or has codimension at most 1;
//! 3. if `soc M` and the complement of `soc M` in `soc N` share no simple,
//!    pass to `(M / soc M, N / soc M)`, which keeps the singularity type
//!    and does not raise the codimension; otherwise try the dual step with
//!    tops and radicals;
//! 4. if neither applies and `N` has at most two summands, the pair is
//!    `(V(i, i-1+an), V(i, i-1+bn) ⊕ V(i, i-1+cn))` with `a = b + c`, which
//!    has the type of the loop-quiver pair `(U_a, U_b ⊕ U_c)`; codimension
//!    two forces `min(b,c) = 1` and the type is `A_max(b,c)`.
//!
//! A pair stuck with three or more summands in `N` is regular if there is an
//! exact sequence `0 -> U -> M -> V -> 0` with `N ≅ U ⊕ V` and
//! `[U ⊕ M, M] = [U ⊕ M, N]`; the classifier searches for one, on the pair
//! and on its dual, and reports `Unresolved` when the search fails.
//!
//! The classifier stops at codimension 1 instead of reducing all the way to
//! `(0,0)`, so its traces can be shorter than a full reduction chain.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Pow};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclic::{
    multiset_hom_dim, quotient_by_socle, quotient_to_radical, socle, top, SimpleMultiset, Window, WindowMultiset,
};
use crate::degeneration::{degenerates, endo_gap, find_sequence, splits};
use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SingularityType {
    Reg,
    A(u32),
    C(u32),
    Unresolved(String),
}

impl SingularityType {
    /// The cone type `C_r`, normalized: `C_1 = Reg`, `C_2 = A_1`.
    pub fn cone(r: u32) -> Self {
        match r {
            0 | 1 => Self::Reg,
            2 => Self::A(1),
            r => Self::C(r),
        }
    }

    /// Short label: `Reg`, `A3`, `C4` or `Unresolved`.
    pub fn label(&self) -> String {
        match self {
            Self::Reg => "Reg".into(),
            Self::A(r) => format!("A{r}"),
            Self::C(r) => format!("C{r}"),
            Self::Unresolved(_) => "Unresolved".into(),
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for SingularityType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Reg" {
            return Ok(Self::Reg);
        }
        if let Some(diag) = s.strip_prefix("Unresolved") {
            let diag = diag.strip_prefix(": ").unwrap_or(diag);
            return Ok(Self::Unresolved(diag.to_string()));
        }
        let parse = |rest: &str| {
            rest.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad singularity type {s:?}")))
        };
        if let Some(r) = s.strip_prefix('A') {
            return Ok(Self::A(parse(r)?));
        }
        if let Some(r) = s.strip_prefix('C') {
            return Ok(Self::cone(parse(r)?));
        }
        Err(Error::Parse(format!("bad singularity type {s:?}")))
    }
}

// Serialized as the label, with the diagnostic kept for Unresolved.
impl Serialize for SingularityType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Unresolved(diag) => serializer.serialize_str(&format!("Unresolved: {diag}")),
            other => serializer.serialize_str(&other.label()),
        }
    }
}

impl<'de> Deserialize<'de> for SingularityType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One classifier step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    CancelCommon,
    SocleReduce {
        residues: Vec<usize>,
    },
    TopReduce {
        residues: Vec<usize>,
    },
    /// Vertex relabeling `v -> v + shift` putting the common socle at `n`.
    Relabel {
        shift: i64,
    },
    /// The loop-quiver pair `(U_a, U_b ⊕ U_c)` the last pair reduces to.
    Terminal {
        a: usize,
        b: usize,
        c: usize,
    },
    /// An exact sequence `0 -> u -> M -> v -> 0` certifying regularity, found
    /// on the dual pair when `dual` is set.
    RegularSequence {
        u: WindowMultiset,
        v: WindowMultiset,
        dual: bool,
    },
}

/// A step with the pair it produced and that pair's codimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub step: Step,
    pub m: WindowMultiset,
    pub nn: WindowMultiset,
    pub codim: usize,
}

/// Ordered classifier steps; serializes as a JSON list of step records.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    /// `(M', N')` of every step, in order.
    pub fn pairs(&self) -> impl Iterator<Item = (&WindowMultiset, &WindowMultiset)> {
        self.steps.iter().map(|s| (&s.m, &s.nn))
    }
}

fn check_rank(m: &WindowMultiset, nn: &WindowMultiset) -> Result<()> {
    if m.n() == nn.n() {
        Ok(())
    } else {
        Err(Error::RankMismatch(m.n(), nn.n()))
    }
}

/// Removes the largest common direct summand.
pub fn cancel_common(m: &WindowMultiset, nn: &WindowMultiset) -> Result<(WindowMultiset, WindowMultiset)> {
    check_rank(m, nn)?;
    let common = m.common(nn);
    Ok((m.minus(&common), nn.minus(&common)))
}

enum Side {
    Socle,
    Top,
}

/// Shared body of the socle and top reductions. Returns the residues the
/// reduction acts on with the reduced pair, or `None` when `u = soc M` (or
/// `top M`) and its complement `w` in `soc N` share a simple.
fn reduce(
    m: &WindowMultiset,
    nn: &WindowMultiset,
    side: Side,
) -> Result<Option<(Vec<usize>, WindowMultiset, WindowMultiset)>> {
    check_rank(m, nn)?;
    if m.is_empty() {
        return Ok(None);
    }
    let (u, s): (SimpleMultiset, SimpleMultiset) = match side {
        Side::Socle => (socle(m), socle(nn)),
        Side::Top => (top(m), top(nn)),
    };
    let mut residues = Vec::new();
    for r in 1..=m.n() {
        let (mine, theirs) = (u.count(r), s.count(r));
        if mine > theirs {
            return Err(match side {
                Side::Socle => Error::SocleNotEmbeddable(r),
                Side::Top => Error::TopNotLiftable(r),
            });
        }
        if mine > 0 {
            if theirs > mine {
                return Ok(None);
            }
            residues.push(r);
        }
    }
    let selected: BTreeSet<usize> = residues.iter().copied().collect();
    let (m2, n2) = match side {
        Side::Socle => (quotient_by_socle(m, &selected)?, quotient_by_socle(nn, &selected)?),
        Side::Top => (quotient_to_radical(m, &selected)?, quotient_to_radical(nn, &selected)?),
    };
    Ok(Some((residues, m2, n2)))
}

/// `(M / soc M, N / soc M)` when `soc M` and its complement in `soc N` are
/// disjoint.
pub fn socle_reduce(m: &WindowMultiset, nn: &WindowMultiset) -> Result<Option<(WindowMultiset, WindowMultiset)>> {
    Ok(reduce(m, nn, Side::Socle)?.map(|(_, a, b)| (a, b)))
}

/// `(rad M, N')` where `N'` drops the top summands matching `top M`; the
/// dual of [`socle_reduce`].
pub fn top_reduce(m: &WindowMultiset, nn: &WindowMultiset) -> Result<Option<(WindowMultiset, WindowMultiset)>> {
    Ok(reduce(m, nn, Side::Top)?.map(|(_, a, b)| (a, b)))
}

fn inconsistent(msg: String) -> Error {
    Error::Inconsistent(msg)
}

/// Reads off `(a, b, c)` for a pair `(V(i, i-1+an), V(i, i-1+bn) ⊕ V(i, i-1+cn))`.
fn terminal_shape(m: &WindowMultiset, nn: &WindowMultiset) -> Result<(usize, usize, usize)> {
    check_rank(m, nn)?;
    let n = m.n();
    if m.nu() != 1 || nn.nu() != 2 {
        return Err(inconsistent(format!(
            "terminal pair needs one summand in M and two in N, got {} and {}",
            m.nu(),
            nn.nu()
        )));
    }
    let w = m.windows()[0];
    let soc = w.socle_residue();
    let tp = w.top_residue();
    if tp % n != (soc + n - 1) % n {
        return Err(inconsistent(format!("top of {w} is not just below its socle")));
    }
    for x in nn.windows() {
        if x.socle_residue() != soc || x.top_residue() != tp {
            return Err(inconsistent(format!("{x} does not share socle and top with {w}")));
        }
    }
    let turns = |x: &Window| x.length() / n;
    let (a, b, c) = (turns(&w), turns(&nn.windows()[0]), turns(&nn.windows()[1]));
    if a != b + c {
        return Err(inconsistent(format!("lengths do not add up: {a} != {b} + {c}")));
    }
    Ok((a, b, c))
}

/// Type of a terminal pair `(V(i, i-1+an), V(i, i-1+bn) ⊕ V(i, i-1+cn))`
/// with `a = b + c`: equal to that of `(U_a, U_b ⊕ U_c)`, whose codimension
/// is `2 min(b,c)`. Only codimension 2 is in range, giving `A_max(b,c)`.
pub fn terminal_classify(m: &WindowMultiset, nn: &WindowMultiset) -> Result<SingularityType> {
    let (_, b, c) = terminal_shape(m, nn)?;
    if b.min(c) != 1 {
        return Err(inconsistent(format!(
            "codimension would be 2*min({b},{c}) = {}",
            2 * b.min(c)
        )));
    }
    Ok(SingularityType::A(b.max(c) as u32))
}

fn gap(m: &WindowMultiset, nn: &WindowMultiset) -> Result<usize> {
    let g = endo_gap(m, nn)?;
    usize::try_from(g).map_err(|_| inconsistent(format!("[N,N] < [M,M] for M={m}, N={nn}")))
}

/// Random morphisms tried per split when searching for exact sequences.
const SEQUENCE_ATTEMPTS: usize = 16;

/// Seed used by [`classify`].
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Looks for `0 -> U -> M -> V -> 0` with `N ≅ U ⊕ V` and
/// `[U ⊕ M, M] = [U ⊕ M, N]`, which makes `N` a regular point of the orbit
/// closure of `M`. `Ok(None)` only means the seeded search found nothing.
pub fn regular_sequence(
    m: &WindowMultiset,
    nn: &WindowMultiset,
    seed: u64,
) -> Result<Option<(WindowMultiset, WindowMultiset)>> {
    check_rank(m, nn)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (u, v) in splits(nn) {
        let um = u.union(m);
        if multiset_hom_dim(&um, m)? != multiset_hom_dim(&um, nn)? {
            continue;
        }
        if find_sequence(&u, m, &v, &mut rng, SEQUENCE_ATTEMPTS)? {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// Classifies a degeneration of codimension at most 2.
pub fn classify(m: &WindowMultiset, nn: &WindowMultiset) -> Result<(SingularityType, ReductionTrace)> {
    classify_seeded(m, nn, DEFAULT_SEED)
}

/// [`classify`] with an explicit seed for the exact-sequence search.
pub fn classify_seeded(
    m: &WindowMultiset,
    nn: &WindowMultiset,
    seed: u64,
) -> Result<(SingularityType, ReductionTrace)> {
    check_rank(m, nn)?;
    if !degenerates(m, nn)? {
        return Err(Error::NotADegeneration);
    }
    let start = gap(m, nn)?;
    if start > 2 {
        return Err(Error::OutOfScope(start));
    }

    let mut trace = ReductionTrace::default();
    let (mut m, mut nn) = (m.clone(), nn.clone());
    loop {
        let (m2, n2) = cancel_common(&m, &nn)?;
        if m2 != m {
            m = m2;
            nn = n2;
            trace.steps.push(TraceStep {
                step: Step::CancelCommon,
                codim: gap(&m, &nn)?,
                m: m.clone(),
                nn: nn.clone(),
            });
        }
        let c = gap(&m, &nn)?;
        if m.is_empty() || c <= 1 {
            return Ok((SingularityType::Reg, trace));
        }

        let reduced = match reduce(&m, &nn, Side::Socle)? {
            Some((residues, a, b)) => Some((Step::SocleReduce { residues }, a, b)),
            None => reduce(&m, &nn, Side::Top)?.map(|(residues, a, b)| (Step::TopReduce { residues }, a, b)),
        };
        if let Some((step, a, b)) = reduced {
            m = a;
            nn = b;
            trace.steps.push(TraceStep {
                step,
                codim: gap(&m, &nn)?,
                m: m.clone(),
                nn: nn.clone(),
            });
            continue;
        }

        if nn.nu() > 2 {
            let found = match regular_sequence(&m, &nn, seed)? {
                Some((u, v)) => Some((u, v, false)),
                None => regular_sequence(&m.dual(), &nn.dual(), seed)?.map(|(u, v)| (u, v, true)),
            };
            if let Some((u, v, dual)) = found {
                trace.steps.push(TraceStep {
                    step: Step::RegularSequence { u, v, dual },
                    codim: c,
                    m: m.clone(),
                    nn: nn.clone(),
                });
                return Ok((SingularityType::Reg, trace));
            }
            return Ok((
                SingularityType::Unresolved(format!("no reduction applies to M={m}, N={nn} (codim {c})")),
                trace,
            ));
        }

        let n = m.n();
        let shift = (n - m.windows()[0].socle_residue()) as i64;
        let (m, nn) = (m.shifted(shift), nn.shifted(shift));
        trace.steps.push(TraceStep {
            step: Step::Relabel { shift },
            codim: c,
            m: m.clone(),
            nn: nn.clone(),
        });
        let (a, b, cc) = terminal_shape(&m, &nn)?;
        let kind = terminal_classify(&m, &nn)?;
        let loop_m = WindowMultiset::jordan(&[a]);
        let loop_n = WindowMultiset::jordan(&[b, cc]);
        trace.steps.push(TraceStep {
            step: Step::Terminal { a, b, c: cc },
            codim: gap(&loop_m, &loop_n)?,
            m: loop_m,
            nn: loop_n,
        });
        return Ok((kind, trace));
    }
}

/// The model varieties `A_r = {x^r = yz}` and `C_r = {x_i x_j = x_l x_m
/// whenever i + j = l + m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelVariety {
    A(u32),
    C(u32),
}

impl ModelVariety {
    pub fn arity(&self) -> usize {
        match self {
            Self::A(_) => 3,
            Self::C(r) => *r as usize + 1,
        }
    }

    /// `(uv, u^r, v^r)` for `A_r`, `(u^r, u^{r-1}v, ..., v^r)` for `C_r`.
    pub fn parametrize(&self, u: &Rational, v: &Rational) -> Vec<Rational> {
        match *self {
            Self::A(r) => vec![u * v, Pow::pow(u, r), Pow::pow(v, r)],
            Self::C(r) => (0..=r).map(|k| Pow::pow(u, r - k) * Pow::pow(v, k)).collect(),
        }
    }
}

pub fn model_variety_membership(kind: ModelVariety, point: &[Rational]) -> Result<bool> {
    if point.len() != kind.arity() {
        return Err(Error::BadArity {
            expected: kind.arity(),
            actual: point.len(),
        });
    }
    Ok(match kind {
        ModelVariety::A(r) => {
            let lhs = if r == 0 {
                Rational::one()
            } else {
                Pow::pow(&point[0], r)
            };
            lhs == &point[1] * &point[2]
        }
        ModelVariety::C(_) => {
            let len = point.len();
            let mut ok = true;
            for i in 0..len {
                for j in i..len {
                    for l in 0..len {
                        let Some(mm) = (i + j).checked_sub(l) else { continue };
                        if mm < len && &point[i] * &point[j] != &point[l] * &point[mm] {
                            ok = false;
                        }
                    }
                }
            }
            ok
        }
    })
}

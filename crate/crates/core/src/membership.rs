//! The partial order on blocks, the rank condition, merge operations, and an
//! intrinsic test for membership in `NC(a,b)`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::paths::{CoprimePair, DyckPath};
use crate::partitions::{noncrossing_partitions, Block, LabeledPair, SetPartition, Side};

/// Names a block of a labeled pair: a `P` block by its minimum, a `Q` block
/// by its contents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockRef {
    P(u32),
    Q(Vec<u32>),
}

impl BlockRef {
    pub fn of(side: Side, block: &Block) -> Self {
        match side {
            Side::P => BlockRef::P(block.first()),
            Side::Q => BlockRef::Q(block.elems().to_vec()),
        }
    }

    pub fn side(&self) -> Side {
        match self {
            BlockRef::P(_) => Side::P,
            BlockRef::Q(_) => Side::Q,
        }
    }

    pub fn resolve<'a>(&self, pq: &'a LabeledPair) -> Result<&'a Block> {
        match self {
            BlockRef::P(m) => pq.p().iter().find(|b| b.first() == *m).ok_or(Error::UnresolvedBlock(*m)),
            BlockRef::Q(e) => {
                let mut sorted = e.clone();
                sorted.sort_unstable();
                pq.q()
                    .iter()
                    .find(|b| b.elems() == sorted.as_slice())
                    .ok_or(Error::UnresolvedBlock(e.first().copied().unwrap_or(0)))
            }
        }
    }
}

impl fmt::Display for BlockRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockRef::P(m) => write!(f, "P-block starting at {m}"),
            BlockRef::Q(e) => write!(f, "Q-block {{{}}}", crate::paths::join_runs(e)),
        }
    }
}

fn leq(lo: (Side, &Block), hi: (Side, &Block)) -> bool {
    match (lo.0, hi.0) {
        (Side::P, Side::P) => hi.1.first() <= lo.1.first() && lo.1.last() <= hi.1.last(),
        (Side::Q, Side::P) => hi.1.first() <= lo.1.last() && lo.1.last() <= hi.1.last(),
        (Side::Q, Side::Q) => lo.1 == hi.1,
        (Side::P, Side::Q) => false,
    }
}

/// `lo ⪯ hi`: interval containment between `P` blocks, a `Q` block whose
/// maximum lies in the interval of a `P` block, or equality of `Q` blocks.
pub fn block_leq(lo: &BlockRef, hi: &BlockRef, pq: &LabeledPair) -> Result<bool> {
    let (x, y) = (lo.resolve(pq)?, hi.resolve(pq)?);
    Ok(leq((lo.side(), x), (hi.side(), y)))
}

/// Exact bounds and achieved value of the rank condition for one `P` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankConditionReport {
    pub block: BlockRef,
    pub lower: Ratio<u64>,
    pub upper: Ratio<u64>,
    pub achieved: u64,
    pub holds: bool,
}

fn report_for(pq: &LabeledPair, block: &Block) -> RankConditionReport {
    let pair = pq.pair();
    let slope = Ratio::new(pair.a() as u64, pair.b() as u64);
    let width = (block.last() - block.first() + 1) as u64;
    let lower = slope * width;
    let upper = lower + slope;
    let achieved: u64 = pq
        .p()
        .iter()
        .map(|c| (Side::P, c))
        .chain(pq.q().iter().map(|c| (Side::Q, c)))
        .filter(|&c| leq(c, (Side::P, block)))
        .map(|(_, c)| c.rank() as u64)
        .sum();
    let value = Ratio::from_integer(achieved);
    RankConditionReport {
        block: BlockRef::P(block.first()),
        lower,
        upper,
        achieved,
        holds: lower <= value && value <= upper,
    }
}

/// `(max-min+1)·a/b <= Σ_{B'⪯B} rank(B') <= (max-min+2)·a/b`.
pub fn rank_condition(block: &BlockRef, pq: &LabeledPair) -> Result<RankConditionReport> {
    if block.side() != Side::P {
        return Err(Error::UnresolvedBlock(0));
    }
    Ok(report_for(pq, block.resolve(pq)?))
}

/// The four conditions of the intrinsic membership test, in testing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// All ranks sum to `a`.
    RankSum = 1,
    /// Every `Q` rank is below `a/b`.
    QRank = 2,
    /// `Q` is the Kreweras complement of a noncrossing `P`.
    Kreweras = 3,
    /// Every `P` block of every rotation satisfies the rank condition.
    RankCondition = 4,
}

/// The first failed condition, with the rotation and (rotated) block at
/// fault when applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub rotation: Option<u32>,
    pub block: Option<BlockRef>,
    pub report: Option<RankConditionReport>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}", self.condition as u8)?;
        if let Some(m) = self.rotation {
            write!(f, " at rotation {m}")?;
        }
        if let Some(b) = &self.block {
            write!(f, ", {b}")?;
        }
        if let Some(r) = &self.report {
            write!(f, " (needs {} <= {} <= {})", r.lower, r.achieved, r.upper)?;
        }
        Ok(())
    }
}

/// Outcome of [`is_member`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Member(DyckPath),
    NonMember(Violation),
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member(_))
    }
}

/// Checks the four conditions without consulting any Dyck path. A member
/// comes back with its path `N^{p_1} E N^{max(p_2,q_1)} E ...` as witness.
pub fn is_member(pq: &LabeledPair) -> Verdict {
    match first_violation(pq) {
        Some(v) => Verdict::NonMember(v),
        None => {
            let witness = pq
                .to_path()
                .and_then(|p| p.to_dyck())
                .expect("a pair passing all four conditions has a Dyck witness");
            Verdict::Member(witness)
        }
    }
}

fn first_violation(pq: &LabeledPair) -> Option<Violation> {
    let pair = pq.pair();
    let plain = |condition, block| Violation {
        condition,
        rotation: None,
        block,
        report: None,
    };
    if pq.total_rank() != pair.a() as u64 {
        return Some(plain(Condition::RankSum, None));
    }
    if let Some(b) = pq.q().iter().find(|b| !pair.is_q_rise(b.rank())) {
        return Some(plain(Condition::QRank, Some(BlockRef::of(Side::Q, b))));
    }
    if pq.p_partition().kreweras().ok() != Some(pq.q_partition()) {
        return Some(plain(Condition::Kreweras, None));
    }
    for m in 1..=pair.labels() {
        let rotated = pq.rotated(m as i64);
        for b in rotated.p() {
            let report = report_for(&rotated, b);
            if !report.holds {
                return Some(Violation {
                    condition: Condition::RankCondition,
                    rotation: Some(m),
                    block: Some(report.block.clone()),
                    report: Some(report),
                });
            }
        }
    }
    None
}

/// Independent test: build the only candidate path and check that the laser
/// map sends it back to `pq`.
pub fn path_oracle(pq: &LabeledPair) -> Option<DyckPath> {
    let d = pq.to_path().ok()?.to_dyck().ok()?;
    (LabeledPair::from_path(&d) == *pq).then_some(d)
}

/// Replaces `P` blocks `x` and `y` by their union of summed rank; `Q` becomes
/// the new Kreweras complement, a block keeping its old rank when its
/// maximum was the maximum of an old `Q` block.
pub fn merge_p_blocks(pq: &LabeledPair, x: &BlockRef, y: &BlockRef) -> Result<LabeledPair> {
    if x.side() != Side::P || y.side() != Side::P {
        return Err(Error::BadPartition("both merged blocks must lie in P".into()));
    }
    let (bx, by) = (x.resolve(pq)?, y.resolve(pq)?);
    if bx == by {
        return Err(Error::BadPartition("a block cannot be merged with itself".into()));
    }
    pq.require_member()?;
    let pair = pq.pair();
    let mut blocks: Vec<(Vec<u32>, u32)> = pq
        .p()
        .iter()
        .filter(|b| *b != bx && *b != by)
        .map(|b| (b.elems().to_vec(), b.rank()))
        .collect();
    let mut union = bx.elems().to_vec();
    union.extend_from_slice(by.elems());
    blocks.push((union, bx.rank() + by.rank()));
    let p_part = SetPartition::new(pair.labels(), blocks.iter().map(|(b, _)| b.clone()).collect())?;
    if !p_part.is_noncrossing() {
        return Err(Error::WouldCross);
    }
    let q_part = p_part.kreweras()?;
    let q = q_part
        .blocks()
        .iter()
        .map(|c| {
            let m = *c.last().unwrap();
            let rank = pq.q().iter().find(|old| old.last() == m).map_or(0, Block::rank);
            (c.clone(), rank)
        })
        .collect();
    LabeledPair::new(pair, blocks, q)
}

/// Adds the rank of `Q` block `qb` to `P` block `pb`, which must cover it,
/// and sets the rank of `qb` to zero.
pub fn absorb_q_block(pq: &LabeledPair, pb: &BlockRef, qb: &BlockRef) -> Result<LabeledPair> {
    if pb.side() != Side::P || qb.side() != Side::Q {
        return Err(Error::NotCover);
    }
    let (b, c) = (pb.resolve(pq)?, qb.resolve(pq)?);
    if !covers(pq, b, c) {
        return Err(Error::NotCover);
    }
    pq.require_member()?;
    let lift = |side: &[Block], f: &dyn Fn(&Block) -> u32| -> Vec<(Vec<u32>, u32)> {
        side.iter().map(|x| (x.elems().to_vec(), f(x))).collect()
    };
    let p = lift(pq.p(), &|x| if x == b { x.rank() + c.rank() } else { x.rank() });
    let q = lift(pq.q(), &|x| if x == c { 0 } else { x.rank() });
    LabeledPair::new(pq.pair(), p, q)
}

/// `b` covers the `Q` block `c`: `c ⪯ b` with no other `P` block between.
fn covers(pq: &LabeledPair, b: &Block, c: &Block) -> bool {
    leq((Side::Q, c), (Side::P, b))
        && !pq
            .p()
            .iter()
            .any(|m| m != b && leq((Side::Q, c), (Side::P, m)) && leq((Side::P, m), (Side::P, b)))
}

/// Every block pair `(B, B')` of `P` whose union stays noncrossing.
pub fn mergeable_pairs(pq: &LabeledPair) -> Vec<(BlockRef, BlockRef)> {
    let p_part = pq.p_partition();
    let mut out = Vec::new();
    for (i, x) in pq.p().iter().enumerate() {
        for y in &pq.p()[i + 1..] {
            let blocks = p_part
                .blocks()
                .iter()
                .filter(|b| b.as_slice() != x.elems() && b.as_slice() != y.elems())
                .cloned()
                .chain(std::iter::once([x.elems(), y.elems()].concat()))
                .collect();
            let merged = SetPartition::new(p_part.n(), blocks).expect("union of two blocks");
            if merged.is_noncrossing() {
                out.push((BlockRef::P(x.first()), BlockRef::P(y.first())));
            }
        }
    }
    out
}

/// Every `(P block, Q block)` pair in the cover relation.
pub fn cover_pairs(pq: &LabeledPair) -> Vec<(BlockRef, BlockRef)> {
    let mut out = Vec::new();
    for b in pq.p() {
        for c in pq.q() {
            if covers(pq, b, c) {
                out.push((BlockRef::of(Side::P, b), BlockRef::of(Side::Q, c)));
            }
        }
    }
    out
}

/// Candidates one step from `pq`: one unit of rank moved between two blocks
/// (on either side), or two `P` blocks merged or one split, with `Q`
/// recomputed as the Kreweras complement. Only pairs with total rank `a`
/// are kept.
pub fn perturbations(pq: &LabeledPair) -> Vec<LabeledPair> {
    let pair = pq.pair();
    let sides = || {
        pq.p()
            .iter()
            .map(|b| (Side::P, b))
            .chain(pq.q().iter().map(|b| (Side::Q, b)))
    };
    let all: Vec<(Side, &Block)> = sides().collect();
    let as_raw = |side: Side| -> Vec<(Vec<u32>, u32)> {
        all.iter()
            .filter(|(s, _)| *s == side)
            .map(|(_, b)| (b.elems().to_vec(), b.rank()))
            .collect()
    };
    let mut out = Vec::new();

    for (i, (si, bi)) in all.iter().enumerate() {
        if bi.rank() == 0 {
            continue;
        }
        for (j, (sj, _)) in all.iter().enumerate() {
            if i == j {
                continue;
            }
            let (mut p, mut q) = (as_raw(Side::P), as_raw(Side::Q));
            let index = |k: usize, s: Side| all[..k].iter().filter(|(t, _)| *t == s).count();
            let from = index(i, *si);
            let to = index(j, *sj);
            match si {
                Side::P => p[from].1 -= 1,
                Side::Q => q[from].1 -= 1,
            }
            match sj {
                Side::P => p[to].1 += 1,
                Side::Q => q[to].1 += 1,
            }
            out.push(LabeledPair::new(pair, p, q).expect("same blocks"));
        }
    }

    let rebuild = |p: Vec<(Vec<u32>, u32)>| -> Option<LabeledPair> {
        let part = SetPartition::new(pair.labels(), p.iter().map(|(b, _)| b.clone()).collect()).ok()?;
        let krew = part.kreweras().ok()?;
        let q: Vec<(Vec<u32>, u32)> = krew
            .blocks()
            .iter()
            .map(|c| {
                let m = *c.last().unwrap();
                (c.clone(), pq.q().iter().find(|o| o.last() == m).map_or(0, Block::rank))
            })
            .collect();
        let cand = LabeledPair::new(pair, p, q).ok()?;
        (cand.total_rank() == pair.a() as u64).then_some(cand)
    };

    let p = as_raw(Side::P);
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let mut merged: Vec<_> = p.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, x)| x.clone()).collect();
            merged.push(([p[i].0.clone(), p[j].0.clone()].concat(), p[i].1 + p[j].1));
            out.extend(rebuild(merged));
        }
        let (elems, rank) = &p[i];
        for cut in 1..elems.len() {
            for share in 0..=*rank {
                let mut split: Vec<_> = p.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, x)| x.clone()).collect();
                split.push((elems[..cut].to_vec(), rank - share));
                split.push((elems[cut..].to_vec(), share));
                out.extend(rebuild(split));
            }
        }
    }
    out
}

/// Every labeled pair with `Q = krew(P)`, `P` noncrossing and ranks summing
/// to `a`, up to `cap` of them.
pub fn kreweras_candidates(pair: CoprimePair, cap: u128) -> Result<Vec<LabeledPair>> {
    let a = pair.a();
    let mut out = Vec::new();
    for p in noncrossing_partitions(pair.labels()) {
        let q = p.kreweras()?;
        let parts = p.len() + q.len();
        let mut ranks = vec![0u32; parts];
        let mut emit = |ranks: &[u32]| -> Result<()> {
            if out.len() as u128 >= cap {
                return Err(Error::ResourceLimit {
                    needed: out.len() as u128 + 1,
                    cap,
                });
            }
            let (rp, rq) = ranks.split_at(p.len());
            out.push(LabeledPair::from_partitions(pair, &p, rp, &q, rq)?);
            Ok(())
        };
        compositions(a, 0, &mut ranks, &mut emit)?;
    }
    Ok(out)
}

fn compositions(left: u32, k: usize, ranks: &mut [u32], emit: &mut dyn FnMut(&[u32]) -> Result<()>) -> Result<()> {
    if k + 1 == ranks.len() {
        ranks[k] = left;
        return emit(ranks);
    }
    for r in 0..=left {
        ranks[k] = r;
        compositions(left - r, k + 1, ranks, emit)?;
    }
    Ok(())
}

/// Distinct non-members near the given members (see [`perturbations`]),
/// repeated outward until `target` are found or nothing new appears, never
/// holding more than `cap`. Sorted for reproducibility.
pub fn non_member_pool(members: &[LabeledPair], target: usize, cap: usize) -> Vec<LabeledPair> {
    let known: BTreeSet<&LabeledPair> = members.iter().collect();
    let mut pool: BTreeSet<LabeledPair> = BTreeSet::new();
    let mut frontier: Vec<LabeledPair> = members.to_vec();
    while pool.len() < target && !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for cand in perturbations(m) {
                if pool.len() >= cap {
                    break;
                }
                if !known.contains(&cand) && path_oracle(&cand).is_none() && pool.insert(cand.clone()) {
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    pool.into_iter().collect()
}

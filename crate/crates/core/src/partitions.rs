//! Set partitions of `[n]`, the Kreweras complement, and rank-labeled pairs
//! `(P, Q)` of partitions of `[b-1]` produced from Dyck paths by laser fire.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{enumerate_capped, CoprimePair, DyckPath, LatticePath};

/// Image of label `i` under `k` steps of `i -> i+1 (mod n)` on `[n]`.
pub fn rotate_label(i: u32, k: i64, n: u32) -> u32 {
    ((i as i64 - 1 + k).rem_euclid(n as i64) + 1) as u32
}

/// A partition of `[n] = {1, ..., n}`, kept in canonical form: blocks sorted
/// by their minimum, elements ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    pub fn new(n: u32, mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; n as usize + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > n {
                    return Err(Error::BadPartition(format!("{x} is outside [1,{n}]")));
                }
                if seen[x as usize] {
                    return Err(Error::BadPartition(format!("{x} appears twice")));
                }
                seen[x as usize] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x as usize]) {
            return Err(Error::BadPartition(format!("{x} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    pub fn singletons(n: u32) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn one_block(n: u32) -> Self {
        SetPartition {
            n,
            blocks: if n == 0 { vec![] } else { vec![(1..=n).collect()] },
        }
    }

    /// Builds the partition in which `i` and `j` share a block iff
    /// `ids[i-1] == ids[j-1]`.
    pub fn from_block_ids<T: Ord + Clone>(ids: &[T]) -> Self {
        let mut groups: BTreeMap<T, Vec<u32>> = BTreeMap::new();
        for (i, id) in ids.iter().enumerate() {
            groups.entry(id.clone()).or_default().push(i as u32 + 1);
        }
        let mut blocks: Vec<Vec<u32>> = groups.into_values().collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition {
            n: ids.len() as u32,
            blocks,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `ids[i-1]` is the index of the block containing `i`.
    pub fn block_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.n as usize];
        for (k, block) in self.blocks.iter().enumerate() {
            for &x in block {
                ids[x as usize - 1] = k;
            }
        }
        ids
    }

    pub fn block_of(&self, x: u32) -> Option<&[u32]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&x).is_ok())
            .map(Vec::as_slice)
    }

    /// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
    pub fn is_noncrossing(&self) -> bool {
        let ids = self.block_ids();
        let lo: Vec<u32> = self.blocks.iter().map(|b| b[0]).collect();
        let hi: Vec<u32> = self.blocks.iter().map(|b| *b.last().unwrap()).collect();
        // every element strictly between two consecutive elements of a block
        // must belong to a block nested inside that gap
        for block in &self.blocks {
            for w in block.windows(2) {
                for k in w[0] + 1..w[1] {
                    let other = ids[k as usize - 1];
                    if lo[other] < w[0] || hi[other] > w[1] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Kreweras complement, read on the points `1', ..., n'` where `i'` sits
    /// between `i` and `i+1` on the circle.
    pub fn kreweras(&self) -> Result<SetPartition> {
        if !self.is_noncrossing() {
            return Err(Error::NotNoncrossing);
        }
        let n = self.n as usize;
        // previous element of the same block, cyclically
        let mut prev = vec![0u32; n + 1];
        for block in &self.blocks {
            for (k, &x) in block.iter().enumerate() {
                prev[x as usize] = block[(k + block.len() - 1) % block.len()];
            }
        }
        let mut ids = vec![usize::MAX; n];
        let mut next_id = 0;
        for start in 1..=n {
            if ids[start - 1] != usize::MAX {
                continue;
            }
            let mut x = start;
            while ids[x - 1] == usize::MAX {
                ids[x - 1] = next_id;
                x = prev[x % n + 1] as usize;
            }
            next_id += 1;
        }
        Ok(SetPartition::from_block_ids(&ids))
    }

    /// Relabels every element through `f`, which must be a bijection of `[n]`.
    pub fn map(&self, f: impl Fn(u32) -> u32) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| f(x)).collect())
            .collect();
        SetPartition::new(self.n, blocks).expect("relabeling by a bijection")
    }

    /// `k` steps of `i -> i+1 (mod n)`.
    pub fn rotate(&self, k: i64) -> SetPartition {
        let n = self.n;
        self.map(|x| rotate_label(x, k, n))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{{{}}}", crate::paths::join_runs(b))?;
        }
        f.write_str("}")
    }
}

/// True when no block hull of one partition crosses a block hull of the other.
pub fn mutually_noncrossing(p1: &SetPartition, p2: &SetPartition) -> bool {
    if p1.n() != p2.n() {
        return false;
    }
    let (x, y) = (p1.block_ids(), p2.block_ids());
    crossing_free(&x, &y) && crossing_free(&y, &x)
}

/// No `a < b < c < d` with `a ~ c` under `first` and `b ~ d` under `second`.
fn crossing_free(first: &[usize], second: &[usize]) -> bool {
    let n = first.len();
    for a in 0..n {
        for c in a + 2..n {
            if first[a] != first[c] {
                continue;
            }
            for b in a + 1..c {
                if (c + 1..n).any(|d| second[b] == second[d]) {
                    return false;
                }
            }
        }
    }
    true
}

/// All noncrossing partitions of `[n]`, generated block-assignment by
/// block-assignment with a crossing check at each step.
pub fn noncrossing_partitions(n: u32) -> Vec<SetPartition> {
    fn go(k: usize, n: usize, ids: &mut Vec<usize>, used: usize, out: &mut Vec<SetPartition>) {
        if k == n {
            out.push(SetPartition::from_block_ids(ids));
            return;
        }
        for id in 0..=used {
            if id < used {
                // the last element l of the block must not sit under a chord
                // that ends between l and k
                let l = (0..k).rev().find(|&j| ids[j] == id).unwrap();
                let crosses = (l + 1..k).any(|c| ids[c] != id && (0..l).any(|a| ids[a] == ids[c]));
                if crosses {
                    continue;
                }
            }
            ids.push(id);
            go(k + 1, n, ids, used.max(id + 1), out);
            ids.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n as usize, &mut Vec::with_capacity(n as usize), 0, &mut out);
    out
}

/// A block with its rank label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    elems: Vec<u32>,
    rank: u32,
}

impl Block {
    pub fn new(mut elems: Vec<u32>, rank: u32) -> Self {
        elems.sort_unstable();
        Block { elems, rank }
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn first(&self) -> u32 {
        self.elems[0]
    }

    pub fn last(&self) -> u32 {
        *self.elems.last().unwrap()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }
}

/// Which partition of a labeled pair a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    P,
    Q,
}

/// A pair `(P, Q)` of rank-labeled set partitions of `[b-1]`.
///
/// Values built by [`LabeledPair::new`] are only structurally valid; those
/// built by [`LabeledPair::from_path`] are members of `NC(a,b)`. `Q` always
/// carries its rank-0 blocks, so equality compares the full structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPair {
    pair: CoprimePair,
    p: Vec<Block>,
    q: Vec<Block>,
}

/// The rank sequences `S_P`, `S_Q` and the combined run sequence `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSequence {
    pub sp: Vec<u32>,
    pub sq: Vec<u32>,
    pub r: Vec<u32>,
}

fn canonical(mut blocks: Vec<Block>) -> Vec<Block> {
    blocks.sort_unstable_by_key(Block::first);
    blocks
}

impl LabeledPair {
    /// Builds a candidate pair; both sides must partition `[b-1]`.
    pub fn new(pair: CoprimePair, p: Vec<(Vec<u32>, u32)>, q: Vec<(Vec<u32>, u32)>) -> Result<Self> {
        let n = pair.labels();
        let check = |side: &[(Vec<u32>, u32)]| {
            SetPartition::new(n, side.iter().map(|(b, _)| b.clone()).collect()).map(|_| ())
        };
        check(&p)?;
        check(&q)?;
        let lift = |side: Vec<(Vec<u32>, u32)>| {
            canonical(side.into_iter().map(|(e, r)| Block::new(e, r)).collect())
        };
        Ok(LabeledPair {
            pair,
            p: lift(p),
            q: lift(q),
        })
    }

    /// Pairs a partition with rank labels given per block in canonical order.
    pub fn from_partitions(
        pair: CoprimePair,
        p: &SetPartition,
        p_ranks: &[u32],
        q: &SetPartition,
        q_ranks: &[u32],
    ) -> Result<Self> {
        if p.n() != pair.labels() || q.n() != pair.labels() {
            return Err(Error::BadPartition("ground set is not [b-1]".into()));
        }
        if p_ranks.len() != p.len() || q_ranks.len() != q.len() {
            return Err(Error::BadPartition("one rank per block is required".into()));
        }
        let zip = |s: &SetPartition, r: &[u32]| {
            s.blocks()
                .iter()
                .zip(r)
                .map(|(b, &r)| Block::new(b.clone(), r))
                .collect()
        };
        Ok(LabeledPair {
            pair,
            p: zip(p, p_ranks),
            q: zip(q, q_ranks),
        })
    }

    /// The laser map `pi`: `P` records which labels see each other past the
    /// lasers, `Q` records which lasers land on a common east step.
    pub fn from_path(d: &DyckPath) -> Self {
        let pair = d.pair();
        let n = pair.labels() as usize;
        let lasers = d.laser_set();

        // P: labels are equivalent when every laser interval (s, t] contains
        // both or neither
        let signatures: Vec<Vec<bool>> = (1..=n as u32)
            .map(|k| lasers.iter().map(|l| l.source < k && k <= l.target).collect())
            .collect();
        let p_part = SetPartition::from_block_ids(&signatures);

        // Q: a laser (s, t) joins s and t; lasers landing on one east step then
        // share t, which covers the common-step rule as well
        let mut uf = UnionFind::new(n + 1);
        for l in &lasers {
            uf.union(l.source as usize, l.target as usize);
        }
        let q_ids: Vec<usize> = (1..=n).map(|k| uf.find(k)).collect();
        let q_part = SetPartition::from_block_ids(&q_ids);

        let p = p_part
            .blocks()
            .iter()
            .map(|b| Block::new(b.clone(), d.run_above(b[0] - 1)))
            .collect();
        let q = q_part
            .blocks()
            .iter()
            .map(|b| Block::new(b.clone(), d.run_above(*b.last().unwrap())))
            .collect();
        LabeledPair { pair, p, q }
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn p(&self) -> &[Block] {
        &self.p
    }

    pub fn q(&self) -> &[Block] {
        &self.q
    }

    pub fn blocks(&self, side: Side) -> &[Block] {
        match side {
            Side::P => &self.p,
            Side::Q => &self.q,
        }
    }

    pub fn p_partition(&self) -> SetPartition {
        SetPartition {
            n: self.pair.labels(),
            blocks: self.p.iter().map(|b| b.elems.clone()).collect(),
        }
    }

    pub fn q_partition(&self) -> SetPartition {
        SetPartition {
            n: self.pair.labels(),
            blocks: self.q.iter().map(|b| b.elems.clone()).collect(),
        }
    }

    pub fn total_rank(&self) -> u64 {
        self.p.iter().chain(&self.q).map(|b| b.rank as u64).sum()
    }

    /// Blocks of positive rank, from either side.
    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = (Side, &Block)> {
        self.p
            .iter()
            .map(|b| (Side::P, b))
            .chain(self.q.iter().map(|b| (Side::Q, b)))
            .filter(|(_, b)| b.rank > 0)
    }

    pub fn rank_sequences(&self) -> RankSequence {
        let n = self.pair.labels() as usize;
        let mut sp = vec![0; n];
        let mut sq = vec![0; n];
        for b in &self.p {
            sp[b.first() as usize - 1] = b.rank;
        }
        for b in &self.q {
            sq[b.last() as usize - 1] = b.rank;
        }
        let mut r = Vec::with_capacity(n + 1);
        r.push(sp[0]);
        for i in 1..n {
            r.push(sp[i].max(sq[i - 1]));
        }
        r.push(sq[n - 1]);
        RankSequence { sp, sq, r }
    }

    /// The lattice path `N^{p_1} E N^{max(p_2,q_1)} E ... N^{q_{b-1}} E`.
    ///
    /// Works for arbitrary candidates, which is what the membership oracle
    /// needs; the result need not be a Dyck path.
    pub fn to_path(&self) -> Result<LatticePath> {
        let a = self.pair.a() as u64;
        let total = self.total_rank();
        if total != a {
            return Err(Error::HeightMismatch { expected: a, found: total });
        }
        let r = self.rank_sequences().r;
        let height: u64 = r.iter().map(|&x| x as u64).sum();
        if height != a {
            return Err(Error::HeightMismatch { expected: a, found: height });
        }
        LatticePath::new(self.pair, r)
    }

    /// Relabels both sides through `fp` and `fq`, keeping ranks.
    fn relabel(&self, fp: impl Fn(u32) -> u32, fq: impl Fn(u32) -> u32) -> LabeledPair {
        let move_side = |side: &[Block], f: &dyn Fn(u32) -> u32| {
            canonical(
                side.iter()
                    .map(|b| Block::new(b.elems.iter().map(|&x| f(x)).collect(), b.rank))
                    .collect(),
            )
        };
        LabeledPair {
            pair: self.pair,
            p: move_side(&self.p, &fp),
            q: move_side(&self.q, &fq),
        }
    }

    /// `k` steps of `i -> i+1 (mod b-1)` on both sides, ranks carried along.
    pub fn rotated(&self, k: i64) -> LabeledPair {
        let n = self.pair.labels();
        self.relabel(|x| rotate_label(x, k, n), |x| rotate_label(x, k, n))
    }

    /// `i -> b-i` on `P` and `i -> b-1-i` (fixing `b-1`) on `Q`.
    pub fn reflected(&self) -> LabeledPair {
        let b = self.pair.b();
        self.relabel(|x| b - x, |x| if x == b - 1 { x } else { b - 1 - x })
    }

    /// Rotation by one step, defined on members of `NC(a,b)`.
    pub fn rotate_pair(&self) -> Result<LabeledPair> {
        self.require_member()?;
        Ok(self.rotated(1))
    }

    /// Reflection, defined on members of `NC(a,b)`.
    pub fn reflect_pair(&self) -> Result<LabeledPair> {
        self.require_member()?;
        Ok(self.reflected())
    }

    pub(crate) fn require_member(&self) -> Result<DyckPath> {
        crate::membership::path_oracle(self).ok_or(Error::NotMember {
            a: self.pair.a(),
            b: self.pair.b(),
        })
    }

    /// Lists every violated structural property of a member of `NC(a,b)`;
    /// empty for outputs of [`from_path`](Self::from_path).
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let (p, q) = (self.p_partition(), self.q_partition());
        if !p.is_noncrossing() {
            bad.push("P crosses".to_string());
        }
        if !q.is_noncrossing() {
            bad.push("Q crosses".to_string());
        }
        if !mutually_noncrossing(&p, &q) {
            bad.push("P and Q cross each other".to_string());
        }
        if p.kreweras().ok().as_ref() != Some(&q) {
            bad.push("Q is not the Kreweras complement of P".to_string());
        }
        if self.total_rank() != self.pair.a() as u64 {
            bad.push(format!("ranks sum to {}", self.total_rank()));
        }
        for b in &self.p {
            if !self.pair.is_p_rise(b.rank) {
                bad.push(format!("P block {:?} has rank {} <= a/b", b.elems, b.rank));
            }
        }
        for b in &self.q {
            if !self.pair.is_q_rise(b.rank) {
                bad.push(format!("Q block {:?} has rank {} >= a/b", b.elems, b.rank));
            }
        }
        for qb in self.q.iter().filter(|b| b.rank > 0) {
            let i = qb.last();
            if self.p.iter().any(|pb| pb.first() == i + 1) {
                bad.push(format!("{i} ends a nontrivial Q block and {} starts a P block", i + 1));
            }
        }
        let p_ids = p.block_ids();
        for qb in &self.q {
            let mut ids: Vec<usize> = qb.elems.iter().map(|&x| p_ids[x as usize - 1]).collect();
            ids.sort_unstable();
            ids.dedup();
            if ids.len() != qb.elems.len() {
                bad.push(format!("Q block {:?} meets a P block twice", qb.elems));
            }
        }
        bad
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for LabeledPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |blocks: &[Block]| {
            blocks
                .iter()
                .map(|b| format!("{{{}}}:{}", crate::paths::join_runs(&b.elems), b.rank))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "P=[{}] Q=[{}]", side(&self.p), side(&self.q))
    }
}

/// `NC(a,b)`: the laser-map image of every Dyck path, in path order.
pub fn enumerate_pairs(pair: CoprimePair, cap: u128) -> Result<Vec<LabeledPair>> {
    Ok(enumerate_capped(pair, cap)?.iter().map(LabeledPair::from_path).collect())
}

#[derive(Serialize, Deserialize)]
struct WireBlock {
    block: Vec<u32>,
    rank: u32,
}

#[derive(Serialize, Deserialize)]
struct WirePair {
    a: u32,
    b: u32,
    #[serde(rename = "P")]
    p: Vec<WireBlock>,
    #[serde(rename = "Q")]
    q: Vec<WireBlock>,
}

impl Serialize for LabeledPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let side = |blocks: &[Block]| {
            blocks
                .iter()
                .map(|b| WireBlock {
                    block: b.elems.clone(),
                    rank: b.rank,
                })
                .collect()
        };
        WirePair {
            a: self.pair.a(),
            b: self.pair.b(),
            p: side(&self.p),
            q: side(&self.q),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = WirePair::deserialize(d)?;
        let pair = CoprimePair::new(w.a, w.b).map_err(D::Error::custom)?;
        let side = |v: Vec<WireBlock>| v.into_iter().map(|b| (b.block, b.rank)).collect();
        LabeledPair::new(pair, side(w.p), side(w.q)).map_err(D::Error::custom)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate;

    fn part(n: u32, blocks: &[&[u32]]) -> SetPartition {
        SetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn pair(a: u32, b: u32) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    /// Four nested loops over the definition.
    fn brute_noncrossing(s: &SetPartition) -> bool {
        let ids = s.block_ids();
        let n = ids.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if ids[a] == ids[c] && ids[b] == ids[d] && ids[a] != ids[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Kreweras complement from the disk picture: `i'` and `j'` are joined
    /// iff the chord between them crosses no block, i.e. every block lies
    /// inside `{i+1..j}` or outside it.
    fn brute_kreweras(s: &SetPartition) -> SetPartition {
        let n = s.n();
        let mut uf = UnionFind::new(n as usize + 1);
        for i in 1..=n {
            for j in i + 1..=n {
                let ok = s.blocks().iter().all(|b| {
                    let inside = b.iter().filter(|&&x| i < x && x <= j).count();
                    inside == 0 || inside == b.len()
                });
                if ok {
                    uf.union(i as usize, j as usize);
                }
            }
        }
        let ids: Vec<usize> = (1..=n as usize).map(|k| uf.find(k)).collect();
        SetPartition::from_block_ids(&ids)
    }

    fn all_partitions(n: usize) -> Vec<SetPartition> {
        fn go(k: usize, n: usize, ids: &mut Vec<usize>, used: usize, out: &mut Vec<SetPartition>) {
            if k == n {
                out.push(SetPartition::from_block_ids(ids));
                return;
            }
            for id in 0..=used {
                ids.push(id);
                go(k + 1, n, ids, used.max(id + 1), out);
                ids.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, &mut Vec::new(), 0, &mut out);
        out
    }

    #[test]
    fn noncrossing_examples() {
        assert!(part(6, &[&[1, 3], &[2], &[4], &[5, 6]]).is_noncrossing());
        assert!(!part(4, &[&[1, 3], &[2, 4]]).is_noncrossing());
        assert!(SetPartition::singletons(7).is_noncrossing());
    }

    #[test]
    fn noncrossing_test_matches_definition() {
        for n in 0..=7 {
            for s in all_partitions(n) {
                assert_eq!(s.is_noncrossing(), brute_noncrossing(&s), "{s}");
            }
        }
    }

    #[test]
    fn noncrossing_enumeration_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| noncrossing_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        for n in 0..=7 {
            let expected: Vec<SetPartition> = {
                let mut v: Vec<_> = all_partitions(n).into_iter().filter(brute_noncrossing).collect();
                v.sort();
                v
            };
            let mut got = noncrossing_partitions(n as u32);
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn kreweras_examples() {
        let p = part(6, &[&[1, 3], &[2], &[4], &[5, 6]]);
        assert_eq!(p.kreweras().unwrap(), part(6, &[&[1, 2], &[3, 4, 6], &[5]]));
        assert_eq!(SetPartition::one_block(5).kreweras().unwrap(), SetPartition::singletons(5));
        assert_eq!(
            part(4, &[&[1, 3], &[2, 4]]).kreweras(),
            Err(Error::NotNoncrossing)
        );
    }

    #[test]
    fn kreweras_matches_disk_picture_and_squares_to_inverse_rotation() {
        for n in 1..=7 {
            for s in noncrossing_partitions(n) {
                let k = s.kreweras().unwrap();
                assert_eq!(k, brute_kreweras(&s));
                assert!(k.is_noncrossing());
                assert_eq!(s.len() + k.len(), n as usize + 1);
                // with i' placed after i, applying the complement twice turns
                // the disk one notch backwards
                assert_eq!(k.kreweras().unwrap(), s.rotate(-1));
            }
        }
    }

    #[test]
    fn mutual_noncrossing_examples() {
        // dashed {1,4} against solid {2,6}, {3,5}
        let solid = part(6, &[&[1], &[2, 6], &[3, 5], &[4]]);
        let dashed = part(6, &[&[1, 4], &[2], &[3], &[5], &[6]]);
        assert!(!mutually_noncrossing(&solid, &dashed));
        for s in noncrossing_partitions(6) {
            assert!(mutually_noncrossing(&s, &s.kreweras().unwrap()));
            assert!(mutually_noncrossing(&s, &SetPartition::singletons(6)));
        }
    }

    #[test]
    fn pi_of_the_ten_seven_example() {
        let d = DyckPath::new(pair(10, 7), vec![2, 1, 2, 2, 2, 0, 1]).unwrap();
        let pq = LabeledPair::from_path(&d);
        let expected = LabeledPair::new(
            pair(10, 7),
            vec![(vec![1, 2], 2), (vec![3, 6], 2), (vec![4], 2), (vec![5], 2)],
            vec![(vec![1], 1), (vec![2, 6], 1), (vec![3, 4, 5], 0)],
        )
        .unwrap();
        assert_eq!(pq, expected);
        assert!(pq.invariant_violations().is_empty());
    }

    #[test]
    fn rank_sequences_of_the_second_ten_seven_example() {
        let d = DyckPath::new(pair(10, 7), vec![3, 0, 2, 3, 0, 1, 1]).unwrap();
        let pq = LabeledPair::from_path(&d);
        let rs = pq.rank_sequences();
        assert_eq!(rs.sp, vec![3, 0, 2, 3, 0, 0]);
        assert_eq!(rs.sq, vec![0, 0, 0, 0, 1, 1]);
        assert_eq!(rs.r, vec![3, 0, 2, 3, 0, 1, 1]);
        assert_eq!(pq.to_path().unwrap().runs(), d.runs());
    }

    #[test]
    fn ranks_distinguish_five_three_paths() {
        let x = LabeledPair::from_path(&DyckPath::from_ne("NNNENNEE").unwrap());
        let y = LabeledPair::from_path(&DyckPath::from_ne("NNENNNEE").unwrap());
        assert_eq!(x.p_partition(), part(2, &[&[1], &[2]]));
        assert_eq!(y.p_partition(), x.p_partition());
        assert!(x.q().iter().chain(y.q()).all(|b| b.rank() == 0));
        let ranks = |pq: &LabeledPair| pq.p().iter().map(Block::rank).collect::<Vec<_>>();
        assert_eq!(ranks(&x), vec![3, 2]);
        assert_eq!(ranks(&y), vec![2, 3]);
        assert_ne!(x, y);
    }

    #[test]
    fn candidate_path_of_a_non_member() {
        let pq = LabeledPair::new(
            pair(7, 4),
            vec![(vec![1, 3], 5), (vec![2], 1)],
            vec![(vec![1, 2], 1), (vec![3], 0)],
        )
        .unwrap();
        let path = pq.to_path().unwrap();
        assert_eq!(path.to_dyck().unwrap().to_ne_string(), "NNNNNENENEE");
        assert_ne!(LabeledPair::from_path(&path.to_dyck().unwrap()), pq);
    }

    #[test]
    fn maximal_path_pair() {
        for (a, b) in [(5, 3), (3, 5), (10, 7)] {
            let p = pair(a, b);
            let pq = LabeledPair::from_path(&DyckPath::maximal(p));
            assert_eq!(pq.p().len(), 1);
            assert_eq!(pq.p()[0].rank(), a);
            assert_eq!(pq.q_partition(), SetPartition::singletons(b - 1));
            assert_eq!(pq.to_path().unwrap().runs(), DyckPath::maximal(p).runs());
            assert_eq!(pq.rotate_pair().unwrap(), pq);
            assert_eq!(pq.reflect_pair().unwrap(), pq);
            let rs = pq.rank_sequences();
            assert_eq!(rs.sp[0], a);
            assert!(rs.sp[1..].iter().chain(&rs.sq).all(|&x| x == 0));
        }
    }

    #[test]
    fn height_mismatch_is_reported() {
        let pq = LabeledPair::new(pair(7, 4), vec![(vec![1, 2, 3], 5)], vec![(vec![1], 0), (vec![2], 0), (vec![3], 0)])
            .unwrap();
        assert_eq!(pq.to_path(), Err(Error::HeightMismatch { expected: 7, found: 5 }));
    }

    #[test]
    fn every_pi_image_satisfies_the_structural_invariants() {
        for (a, b) in [(3, 5), (5, 3), (7, 4), (4, 7), (10, 7), (11, 4), (2, 9)] {
            let mut seen = std::collections::HashSet::new();
            for d in enumerate(pair(a, b)).unwrap() {
                let pq = LabeledPair::from_path(&d);
                assert!(pq.invariant_violations().is_empty(), "{d}: {:?}", pq.invariant_violations());
                assert_eq!(pq.to_path().unwrap().runs(), d.runs());
                // the lasers are recovered from the Kreweras complement
                let krew = pq.p_partition().kreweras().unwrap();
                let mut expected: Vec<(u32, u32)> = krew
                    .blocks()
                    .iter()
                    .flat_map(|blk| {
                        let m = *blk.last().unwrap();
                        blk.iter().filter(move |&&i| i != m).map(move |&i| (i, m))
                    })
                    .chain(pq.q().iter().filter(|q| q.rank() > 0).map(|q| (q.last(), q.last())))
                    .collect();
                expected.sort();
                let got: Vec<(u32, u32)> = d.laser_set().iter().map(|l| (l.source, l.target)).collect();
                assert_eq!(got, expected, "{d}");
                assert!(seen.insert(pq));
            }
        }
    }

    #[test]
    fn rotation_and_reflection_on_members() {
        for (a, b) in [(5, 3), (7, 3), (10, 7), (3, 5)] {
            let p = pair(a, b);
            let members: std::collections::HashSet<LabeledPair> =
                enumerate(p).unwrap().iter().map(LabeledPair::from_path).collect();
            let mut reflected = std::collections::HashSet::new();
            for pq in &members {
                let mut r = pq.clone();
                for _ in 0..b - 1 {
                    r = r.rotate_pair().unwrap();
                    assert!(members.contains(&r));
                }
                assert_eq!(&r, pq);
                let f = pq.reflect_pair().unwrap();
                assert!(members.contains(&f));
                assert_eq!(&f.reflect_pair().unwrap(), pq);
                reflected.insert(f);
            }
            assert_eq!(reflected, members);
        }
    }

    #[test]
    fn pi_intertwines_rot_prime_with_inverse_rotation() {
        for (a, b) in [(7, 3), (7, 4), (10, 7), (4, 7)] {
            for d in enumerate(pair(a, b)).unwrap() {
                let pq = LabeledPair::from_path(&d);
                assert_eq!(LabeledPair::from_path(&d.rot_prime()), pq.rotated(-1), "{d}");
            }
        }
    }

    #[test]
    fn rotation_of_a_non_member_is_refused() {
        let pq = LabeledPair::new(
            pair(7, 4),
            vec![(vec![1, 3], 5), (vec![2], 1)],
            vec![(vec![1, 2], 1), (vec![3], 0)],
        )
        .unwrap();
        assert_eq!(pq.rotate_pair(), Err(Error::NotMember { a: 7, b: 4 }));
    }

    #[test]
    fn json_round_trip_and_shape() {
        let d = DyckPath::new(pair(10, 7), vec![3, 0, 2, 3, 0, 1, 1]).unwrap();
        let pq = LabeledPair::from_path(&d);
        let s = pq.to_json();
        assert!(s.starts_with(r#"{"a":10,"b":7,"P":[{"block":[1,2],"rank":3}"#), "{s}");
        assert_eq!(LabeledPair::from_json(&s).unwrap(), pq);
        assert!(LabeledPair::from_json(r#"{"a":4,"b":6,"P":[],"Q":[]}"#).is_err());
        assert!(LabeledPair::from_json(r#"{"a":3,"b":4,"P":[{"block":[1],"rank":3}],"Q":[]}"#).is_err());
    }

    #[test]
    fn degenerate_two_label_ground_set() {
        let p = pair(5, 2);
        let members: Vec<LabeledPair> = enumerate(p).unwrap().iter().map(LabeledPair::from_path).collect();
        assert_eq!(members.len(), 3);
        for pq in &members {
            assert_eq!(pq.rotated(1), *pq);
            assert_eq!(pq.reflected(), *pq);
            assert!(pq.invariant_violations().is_empty());
        }
    }
}

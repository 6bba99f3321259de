//! Rational noncrossing parking functions and the `S_a x Z_{b-1}` action.
//!
//! A parking function is a pair `(P,Q)` with a labeling `f` of its blocks by
//! disjoint subsets of `[a]`, `|f(B)| = rank(B)`. Equivalently, the north
//! steps of the underlying path carry the labels `1..=a`, increasing up each
//! run.

use std::fmt;

use rayon::prelude::*;

use crate::arith::{checked_pow, gcd};
use crate::error::{Error, Result};
use crate::membership::path_oracle;
use crate::partitions::{rotate_label, Block, LabeledPair, SetPartition, Side};
use crate::paths::{enumerate_capped, CoprimePair, DyckPath};

/// Refusal threshold for brute-force parking function sweeps.
pub const DEFAULT_PARK_CAP: u128 = 1_000_000;

/// A permutation of `[a]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::BadPermutation(format!("{images:?} is not a bijection of [{n}]")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(a: u32) -> Self {
        Permutation {
            images: (1..=a).collect(),
        }
    }

    /// Builds a permutation of `[a]` from cycles; unlisted points are fixed.
    pub fn from_cycles(a: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=a).collect();
        let mut used = vec![false; a as usize + 1];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > a || std::mem::replace(&mut used[x as usize], true) {
                    return Err(Error::BadPermutation(format!("bad or repeated point {x}")));
                }
                images[x as usize - 1] = c[(k + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses one-line notation (`2,1,3` or `2 1 3`) or cycle notation
    /// (`(1,2)(3,4,5)`, fixed points optional) as a permutation of `[a]`.
    pub fn parse(s: &str, a: u32) -> Result<Self> {
        let s = s.trim();
        let nums = |t: &str| -> Result<Vec<u32>> {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad entry {x:?} in {s:?}"))))
                .collect()
        };
        let w = if s.starts_with('(') {
            let cycles = s
                .split(')')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(|c| {
                    c.strip_prefix('(')
                        .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))
                        .and_then(nums)
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::from_cycles(a, &cycles)?
        } else {
            Permutation::new(nums(s)?)?
        };
        if w.len() != a {
            return Err(Error::BadPermutation(format!("{s:?} has {} entries, expected {a}", w.len())));
        }
        Ok(w)
    }

    pub fn len(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// Cycles, each starting at its least element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len() + 1];
        let mut out = Vec::new();
        for start in 1..=self.len() {
            if seen[start as usize] {
                continue;
            }
            let mut c = vec![start];
            seen[start as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// All of `S_a` in lexicographic order of one-line notation.
    pub fn all(a: u32) -> Vec<Permutation> {
        let mut cur: Vec<u32> = (1..=a).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        loop {
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation { images: cur.clone() });
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A sequence whose sorted rearrangement satisfies `p'_i <= (b/a)(i-1) + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalSlopePF {
    pair: CoprimePair,
    p: Vec<u32>,
}

impl RationalSlopePF {
    pub fn new(pair: CoprimePair, p: Vec<u32>) -> Result<Self> {
        if p.len() != pair.a() as usize {
            return Err(Error::NotParkingFunction(format!("length {} instead of {}", p.len(), pair.a())));
        }
        let mut sorted = p.clone();
        sorted.sort_unstable();
        for (i, &x) in sorted.iter().enumerate() {
            // p'_i - 1 <= (b/a)(i-1), cross-multiplied
            if x == 0 || (x as u64 - 1) * pair.a() as u64 > pair.b() as u64 * i as u64 {
                return Err(Error::NotParkingFunction(format!("{p:?} fails at sorted position {}", i + 1)));
            }
        }
        Ok(RationalSlopePF { pair, p })
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn values(&self) -> &[u32] {
        &self.p
    }

    /// Moves entry `i` to position `w(i)`.
    pub fn act(&self, w: &Permutation) -> RationalSlopePF {
        let mut p = vec![0; self.p.len()];
        for (i, &x) in self.p.iter().enumerate() {
            p[w.apply(i as u32 + 1) as usize - 1] = x;
        }
        RationalSlopePF { pair: self.pair, p }
    }

    /// Number of entries equal to `x+1`, for `x = 0..b`: the run vector of
    /// the underlying path.
    pub fn runs(&self) -> Vec<u32> {
        let mut runs = vec![0; self.pair.b() as usize];
        for &x in &self.p {
            runs[x as usize - 1] += 1;
        }
        runs
    }
}

/// A pair in `NC(a,b)` with a block labeling.
///
/// `f_p[k]` labels `base.p()[k]` and `f_q[k]` labels `base.q()[k]`; each set
/// is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NCParkingFunction {
    base: LabeledPair,
    f_p: Vec<Vec<u32>>,
    f_q: Vec<Vec<u32>>,
}

impl NCParkingFunction {
    pub fn new(base: LabeledPair, mut f_p: Vec<Vec<u32>>, mut f_q: Vec<Vec<u32>>) -> Result<Self> {
        let bad = |m: String| Err(Error::NotParkingFunction(m));
        if f_p.len() != base.p().len() || f_q.len() != base.q().len() {
            return bad("one label set per block is required".into());
        }
        let a = base.pair().a();
        let mut seen = vec![false; a as usize + 1];
        for (blocks, labels) in [(base.p(), &mut f_p), (base.q(), &mut f_q)] {
            for (b, f) in blocks.iter().zip(labels.iter_mut()) {
                if f.len() != b.rank() as usize {
                    return bad(format!("block {:?} has rank {} but {} labels", b.elems(), b.rank(), f.len()));
                }
                f.sort_unstable();
                for &x in f.iter() {
                    if x == 0 || x > a || std::mem::replace(&mut seen[x as usize], true) {
                        return bad(format!("label {x} is out of range or repeated"));
                    }
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return bad("labels do not cover [a]".into());
        }
        if path_oracle(&base).is_none() {
            return Err(Error::NotMember { a, b: base.pair().b() });
        }
        Ok(NCParkingFunction { base, f_p, f_q })
    }

    pub fn base(&self) -> &LabeledPair {
        &self.base
    }

    pub fn labels(&self, side: Side) -> &[Vec<u32>] {
        match side {
            Side::P => &self.f_p,
            Side::Q => &self.f_q,
        }
    }

    /// `(block, f(block))` over P then Q.
    pub fn labeled_blocks(&self) -> impl Iterator<Item = (Side, &Block, &[u32])> {
        let p = self.base.p().iter().zip(&self.f_p).map(|(b, f)| (Side::P, b, f.as_slice()));
        let q = self.base.q().iter().zip(&self.f_q).map(|(b, f)| (Side::Q, b, f.as_slice()));
        p.chain(q)
    }

    /// The action of `(w, g^t)`: labels go through `w`, blocks rotate by
    /// `i -> i+t`.
    pub fn act(&self, w: &Permutation, t: i64) -> NCParkingFunction {
        let m = self.base.pair().labels();
        let base = self.base.rotated(t);
        let mut f_p = vec![Vec::new(); base.p().len()];
        let mut f_q = vec![Vec::new(); base.q().len()];
        for (side, block, f) in self.labeled_blocks() {
            let mut moved: Vec<u32> = block.elems().iter().map(|&x| rotate_label(x, t, m)).collect();
            moved.sort_unstable();
            let (targets, slots) = match side {
                Side::P => (base.p(), &mut f_p),
                Side::Q => (base.q(), &mut f_q),
            };
            let k = targets.iter().position(|b| b.elems() == moved).expect("rotation permutes blocks");
            let mut image: Vec<u32> = f.iter().map(|&x| w.apply(x)).collect();
            image.sort_unstable();
            slots[k] = image;
        }
        NCParkingFunction { base, f_p, f_q }
    }

    /// `τ`: the partition of `[a]` into the nonempty label sets.
    pub fn fibers(&self) -> SetPartition {
        let blocks = self.f_p.iter().chain(&self.f_q).filter(|f| !f.is_empty()).cloned().collect();
        SetPartition::new(self.base.pair().a(), blocks).expect("labels partition [a]")
    }

    /// `p_i = min(B)` for `i ∈ f(B)`, `B ∈ P`, and `max(B)+1` for `B ∈ Q`.
    pub fn phi(&self) -> RationalSlopePF {
        let mut p = vec![0; self.base.pair().a() as usize];
        for (side, block, f) in self.labeled_blocks() {
            let v = match side {
                Side::P => block.first(),
                Side::Q => block.last() + 1,
            };
            for &i in f {
                p[i as usize - 1] = v;
            }
        }
        RationalSlopePF::new(self.base.pair(), p).expect("phi lands in rational slope parking functions")
    }

    /// Inverse of [`phi`](Self::phi).
    pub fn from_phi(p: &RationalSlopePF) -> Result<Self> {
        let path = DyckPath::new(p.pair(), p.runs())
            .map_err(|e| Error::NotParkingFunction(format!("run vector is not a Dyck path: {e}")))?;
        let base = LabeledPair::from_path(&path);
        Ok(label(base, p.values()))
    }
}

/// Hands the labels at x-coordinate `x` (those `i` with `p_i = x+1`) to the
/// block whose rank is read at `x`.
fn label(base: LabeledPair, p: &[u32]) -> NCParkingFunction {
    let b = base.pair().b() as usize;
    let mut owner: Vec<Option<(Side, usize)>> = vec![None; b];
    for (k, block) in base.p().iter().enumerate().filter(|(_, bl)| bl.rank() > 0) {
        owner[block.first() as usize - 1] = Some((Side::P, k));
    }
    for (k, block) in base.q().iter().enumerate().filter(|(_, bl)| bl.rank() > 0) {
        owner[block.last() as usize] = Some((Side::Q, k));
    }
    let mut f_p = vec![Vec::new(); base.p().len()];
    let mut f_q = vec![Vec::new(); base.q().len()];
    for (i, &x) in p.iter().enumerate() {
        match owner[x as usize - 1].expect("a nonempty run belongs to a block") {
            (Side::P, k) => f_p[k].push(i as u32 + 1),
            (Side::Q, k) => f_q[k].push(i as u32 + 1),
        }
    }
    NCParkingFunction { base, f_p, f_q }
}

/// `Park^NC(a,b)`, ordered by path and then lexicographically by `phi`.
pub fn enumerate_park(pair: CoprimePair, cap: u128) -> Result<Vec<NCParkingFunction>> {
    let total = checked_pow(pair.b() as u128, pair.a() - 1)?;
    if total > cap {
        return Err(Error::ResourceLimit { needed: total, cap });
    }
    let paths = enumerate_capped(pair, cap)?;
    let mut out = Vec::with_capacity(total as usize);
    for d in &paths {
        let base = LabeledPair::from_path(d);
        let mut word: Vec<u32> = Vec::with_capacity(pair.a() as usize);
        for (x, &n) in d.runs().iter().enumerate() {
            word.extend(std::iter::repeat_n(x as u32 + 1, n as usize));
        }
        loop {
            out.push(label(base.clone(), &word));
            let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
                break;
            };
            let j = (i..word.len()).rev().find(|&j| word[j] > word[i - 1]).expect("pivot has a successor");
            word.swap(i - 1, j);
            word[i..].reverse();
        }
    }
    Ok(out)
}

/// Order of `ζ^d` for `ζ` a primitive `(b-1)`-th root of unity.
pub fn root_order(pair: CoprimePair, d: u64) -> u64 {
    let m = pair.labels() as u64;
    m / gcd(d % m, m)
}

/// `r_q(w)`: cycles of `w` whose length is divisible by `q`.
pub fn cycles_divisible_by(w: &Permutation, q: u64) -> u32 {
    w.cycles().iter().filter(|c| (c.len() as u64).is_multiple_of(q)).count() as u32
}

/// Multiplicity of `ζ^d` as an eigenvalue of `w` on the reflection
/// representation `C^a / <(1,...,1)>`.
pub fn mult_root(w: &Permutation, d: u64, pair: CoprimePair) -> u32 {
    match root_order(pair, d) {
        1 => w.cycles().len() as u32 - 1,
        q => cycles_divisible_by(w, q),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Formula,
    Brute,
}

/// `χ(w, g^d)`, either `b^{mult_w(ζ^d)}` or a direct count of fixed points.
pub fn character(w: &Permutation, d: u64, pair: CoprimePair, mode: Mode) -> Result<u128> {
    match mode {
        Mode::Formula => checked_pow(pair.b() as u128, mult_root(w, d, pair)),
        Mode::Brute => Ok(count_fixed_park(&enumerate_park(pair, DEFAULT_PARK_CAP)?, w, d)),
    }
}

/// Fixed points of `(w, g^d)` in a precomputed `Park^NC(a,b)`.
pub fn count_fixed_park(all: &[NCParkingFunction], w: &Permutation, d: u64) -> u128 {
    all.par_iter().filter(|pf| pf.act(w, d as i64) == **pf).count() as u128
}

/// One row per `(w, d)`: both character values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterRow {
    pub w: Permutation,
    pub d: u32,
    pub formula: u128,
    pub brute: u128,
}

impl CharacterRow {
    pub fn matches(&self) -> bool {
        self.formula == self.brute
    }
}

/// The full sweep over `S_a x Z_{b-1}`.
pub fn verify_characters(pair: CoprimePair, cap: u128) -> Result<Vec<CharacterRow>> {
    let all = enumerate_park(pair, cap)?;
    let mut rows = Vec::new();
    for w in Permutation::all(pair.a()) {
        for d in 0..pair.labels() {
            rows.push(CharacterRow {
                formula: character(&w, d as u64, pair, Mode::Formula)?,
                brute: count_fixed_park(&all, &w, d as u64),
                w: w.clone(),
                d,
            });
        }
    }
    Ok(rows)
}

/// TSV with header `w\td\tformula\tbrute\tmatch`.
pub fn characters_tsv(rows: &[CharacterRow]) -> String {
    let mut s = String::from("w\td\tformula\tbrute\tmatch\n");
    for r in rows {
        s += &format!("{}\t{}\t{}\t{}\t{}\n", r.w, r.d, r.formula, r.brute, r.matches());
    }
    s
}

/// Applies `g^d` to a value in `{0} ∪ [b-1]`; 0 is fixed.
fn shift(v: u32, d: u64, m: u32) -> u32 {
    if v == 0 {
        0
    } else {
        rotate_label(v, d as i64, m)
    }
}

/// Whether `e(w(j)) = g^d e(j)` for all `j`.
pub fn is_equivariant(e: &[u32], w: &Permutation, d: u64, pair: CoprimePair) -> bool {
    let m = pair.labels();
    e.len() == w.len() as usize
        && e.iter().all(|&v| v < pair.b())
        && (1..=w.len()).all(|j| e[w.apply(j) as usize - 1] == shift(e[j as usize - 1], d, m))
}

/// Every `(w, g^d)`-equivariant `e: [a] -> {0} ∪ [b-1]`, as value vectors.
pub fn equivariant_functions(w: &Permutation, d: u64, pair: CoprimePair, cap: u128) -> Result<Vec<Vec<u32>>> {
    let q = root_order(pair, d);
    let m = pair.labels();
    let cycles = w.cycles();
    let free: Vec<&Vec<u32>> = cycles.iter().filter(|c| (c.len() as u64).is_multiple_of(q)).collect();
    let total = checked_pow(pair.b() as u128, free.len() as u32)?;
    if total > cap {
        return Err(Error::ResourceLimit { needed: total, cap });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut choice = vec![0u32; free.len()];
    loop {
        let mut e = vec![0u32; w.len() as usize];
        for (c, &v) in free.iter().zip(&choice) {
            let mut x = c[0];
            let mut val = v;
            for _ in 0..c.len() {
                e[x as usize - 1] = val;
                val = shift(val, d, m);
                x = w.apply(x);
            }
        }
        out.push(e);
        let Some(k) = (0..choice.len()).rev().find(|&k| choice[k] < m) else {
            return Ok(out);
        };
        choice[k] += 1;
        choice[k + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

/// The fibers of a function on `[a]`.
pub fn fibers_of(e: &[u32]) -> SetPartition {
    SetPartition::from_block_ids(e)
}

/// A `(w,q)`-admissible set partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissiblePartition {
    pub sigma: SetPartition,
    pub w: Permutation,
    pub q: u32,
}

impl AdmissiblePartition {
    /// `t_σ`: the number of `w`-orbits of blocks of size `q`.
    pub fn orbits(&self) -> u32 {
        let fixed = self.sigma.blocks().iter().filter(|b| image(&self.w, b) == **b).count();
        (self.sigma.len() - fixed) as u32 / self.q
    }

    /// `(b-1)(b-1-q)...(b-1-(t_σ-1)q)`.
    pub fn weight(&self, b: u32) -> i128 {
        (0..self.orbits() as i128).map(|k| b as i128 - 1 - k * self.q as i128).product()
    }
}

fn image(w: &Permutation, block: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = block.iter().map(|&x| w.apply(x)).collect();
    v.sort_unstable();
    v
}

/// Whether `sigma` is `w`-stable with at most one fixed block and every other
/// block on an orbit of exactly `q` distinct blocks.
pub fn is_admissible(sigma: &SetPartition, w: &Permutation, q: u32) -> bool {
    let mut fixed = 0;
    for b in sigma.blocks() {
        let mut cur = image(w, b);
        if !sigma.blocks().contains(&cur) {
            return false;
        }
        let mut len = 1;
        while cur != *b {
            cur = image(w, &cur);
            len += 1;
        }
        match len {
            1 => fixed += 1,
            l if l == q => {}
            _ => return false,
        }
    }
    fixed <= 1
}

/// All set partitions of `[n]` (restricted growth strings in lex order).
pub fn set_partitions(n: u32) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut rgs = vec![0u32; n as usize];
    fn go(i: usize, top: u32, rgs: &mut Vec<u32>, out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            out.push(SetPartition::from_block_ids(rgs));
            return;
        }
        for v in 0..=top {
            rgs[i] = v;
            go(i + 1, top.max(v + 1), rgs, out);
        }
    }
    if n == 0 {
        return vec![SetPartition::one_block(0)];
    }
    go(1, 1, &mut rgs, &mut out);
    out
}

pub fn admissible_partitions(w: &Permutation, q: u32) -> Vec<AdmissiblePartition> {
    set_partitions(w.len())
        .into_iter()
        .filter(|s| is_admissible(s, w, q))
        .map(|sigma| AdmissiblePartition {
            sigma,
            w: w.clone(),
            q,
        })
        .collect()
}

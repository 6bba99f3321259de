//! Pairs fixed by a power of rotation, their `d`-modified rank sequences,
//! the q-analog counting polynomials, and cyclic sieving checks.

use std::fmt;

use rayon::prelude::*;

use crate::arith::{binomial, multinomial, rational_catalan};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_pairs, rotate_label, Block, LabeledPair};
use crate::paths::{CoprimePair, LatticePath, WeightedPath, DEFAULT_PATH_CAP};
use crate::qpoly::QPoly;

/// `d` must divide `b-1` with `1 <= d < b-1`.
pub fn check_divisor(pair: CoprimePair, d: u32) -> Result<()> {
    let n = pair.labels();
    if d == 0 || d >= n || !n.is_multiple_of(d) {
        return Err(Error::BadDivisor { d, modulus: n });
    }
    Ok(())
}

/// How a block sits relative to rotation by `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Fixed by the rotation.
    Central,
    /// Not central, but its interval `[min, max]` contains its whole orbit.
    Wrapping,
    Plain,
}

fn kind_of(block: &Block, n: u32, d: u32) -> BlockKind {
    let shift = |k: u32| -> Vec<u32> {
        let mut v: Vec<u32> = block.elems().iter().map(|&x| rotate_label(x, (k * d) as i64, n)).collect();
        v.sort_unstable();
        v
    };
    if shift(1) == block.elems() {
        return BlockKind::Central;
    }
    let (lo, hi) = (block.first(), block.last());
    let orbit_len = n / d;
    let inside = (1..orbit_len).all(|k| shift(k).iter().all(|&x| lo <= x && x <= hi));
    if inside {
        BlockKind::Wrapping
    } else {
        BlockKind::Plain
    }
}

fn require_invariant(pq: &LabeledPair, d: u32) -> Result<()> {
    if pq.rotated(d as i64) != *pq {
        return Err(Error::NotDInvariant(d));
    }
    Ok(())
}

/// Classifies a block of a `rot^d`-invariant pair.
pub fn classify_block(block: &Block, pq: &LabeledPair, d: u32) -> Result<BlockKind> {
    check_divisor(pq.pair(), d)?;
    require_invariant(pq, d)?;
    Ok(kind_of(block, pq.pair().labels(), d))
}

/// The `d`-modified rank sequences `(S_P^d, S_Q^d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DModSequences {
    pub sp: Vec<u32>,
    pub sq: Vec<u32>,
}

impl DModSequences {
    pub fn new(sp: Vec<u32>, sq: Vec<u32>) -> Result<Self> {
        if sp.len() != sq.len() || sp.is_empty() {
            return Err(Error::BadLength {
                expected: sp.len().max(1),
                found: sq.len(),
            });
        }
        Ok(DModSequences { sp, sq })
    }

    pub fn d(&self) -> usize {
        self.sp.len()
    }

    /// Combined sequence `s_i = max(p_i, q_{i-1})`, with `q_0 = q_d`.
    pub fn combined(&self) -> Vec<u32> {
        let d = self.d();
        (0..d).map(|i| self.sp[i].max(self.sq[(i + d - 1) % d])).collect()
    }

    /// Inverse of [`combined`](Self::combined): entries above `a/b` go to
    /// `S_P` in place, entries below it go to `S_Q` one slot to the left.
    pub fn from_combined(s: &[u32], pair: CoprimePair) -> Self {
        let d = s.len();
        let sp = s.iter().map(|&x| if pair.is_p_rise(x) { x } else { 0 }).collect();
        let sq = (0..d)
            .map(|i| {
                let x = s[(i + 1) % d];
                if pair.is_q_rise(x) {
                    x
                } else {
                    0
                }
            })
            .collect();
        DModSequences { sp, sq }
    }

    pub fn total(&self) -> u64 {
        self.sp.iter().chain(&self.sq).map(|&x| x as u64).sum()
    }

    /// `c = a - s(b-1)/d`, negative when the total is too large.
    pub fn c(&self, pair: CoprimePair) -> i64 {
        pair.a() as i64 - self.total() as i64 * (pair.labels() as i64 / self.d() as i64)
    }

    /// `k` steps of `x_i -> x_{i+1}` (indices mod `d`) on both sequences.
    pub fn rotated(&self, k: i64) -> Self {
        let d = self.d() as i64;
        let turn = |v: &[u32]| -> Vec<u32> { (0..d).map(|i| v[(i - k).rem_euclid(d) as usize]).collect() };
        DModSequences {
            sp: turn(&self.sp),
            sq: turn(&self.sq),
        }
    }

    pub fn is_good(&self, pair: CoprimePair) -> bool {
        let d = self.d();
        let ratio = pair.labels() as u64 / d as u64;
        self.sp.iter().all(|&p| p == 0 || pair.is_p_rise(p))
            && self.sq.iter().all(|&q| pair.is_q_rise(q))
            && self.total() * ratio <= pair.a() as u64
            && (0..d).all(|i| self.sp[(i + 1) % d] == 0 || self.sq[i] == 0)
    }

    pub fn is_very_good(&self, pair: CoprimePair) -> bool {
        if !self.is_good(pair) {
            return false;
        }
        let c = self.c(pair);
        let (a, b) = (pair.a() as i64, pair.b() as i64);
        let d = self.d();
        c == 0 || (self.sp[0] == 0 && c * b > a) || (self.sq[d - 1] == 0 && c > 0 && c * b < a)
    }

    /// Very good and sent to a Dyck path by [`l_map`].
    pub fn is_noble(&self, pair: CoprimePair) -> bool {
        self.is_very_good(pair) && l_map(self, pair).is_ok_and(|p| p.is_dyck())
    }
}

impl fmt::Display for DModSequences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = crate::paths::join_runs;
        write!(f, "({}) ({})", j(&self.sp), j(&self.sq))
    }
}

/// `(S_P^d, S_Q^d)` of a `rot^d`-invariant pair.
pub fn d_mod_sequences(pq: &LabeledPair, d: u32) -> Result<DModSequences> {
    check_divisor(pq.pair(), d)?;
    require_invariant(pq, d)?;
    Ok(d_mod_unchecked(pq, d))
}

fn d_mod_unchecked(pq: &LabeledPair, d: u32) -> DModSequences {
    let n = pq.pair().labels();
    let mut sp = vec![0; d as usize];
    let mut sq = vec![0; d as usize];
    for b in pq.p() {
        if b.first() <= d && kind_of(b, n, d) == BlockKind::Plain {
            sp[b.first() as usize - 1] = b.rank();
        }
    }
    for b in pq.q() {
        if b.last() > n - d && kind_of(b, n, d) == BlockKind::Plain {
            sq[(b.last() + d - n) as usize - 1] = b.rank();
        }
    }
    DModSequences { sp, sq }
}

/// Assembles the lattice path of a very good sequence pair.
pub fn l_map(seq: &DModSequences, pair: CoprimePair) -> Result<LatticePath> {
    if !seq.is_very_good(pair) {
        return Err(Error::NotVeryGood);
    }
    let d = seq.d();
    let reps = pair.labels() as usize / d;
    let c = seq.c(pair) as u32;
    let s = seq.combined();
    // N^{s_2} E ... N^{s_d} E N^{q_d} E, and N^{p_1} E N^{s_2} E ... N^{s_d} E
    let tail_first: Vec<u32> = s[1..].iter().copied().chain([seq.sq[d - 1]]).collect();
    let head_first: Vec<u32> = [seq.sp[0]].into_iter().chain(s[1..].iter().copied()).collect();
    let repeat = |block: &[u32]| -> Vec<u32> { block.iter().copied().cycle().take(block.len() * reps).collect() };
    let runs: Vec<u32> = if c == 0 {
        let block = if seq.sp[0] == 0 { &tail_first } else { &head_first };
        repeat(block).into_iter().chain([0]).collect()
    } else if pair.is_p_rise(c) {
        [c].into_iter().chain(repeat(&tail_first)).collect()
    } else {
        repeat(&head_first).into_iter().chain([c]).collect()
    };
    LatticePath::new(pair, runs)
}

/// A noble rotation of a good sequence pair, located through the unique
/// point of minimal weight on the doubled path `N^{s_1} E ... N^{s_d} E`
/// traversed twice.
pub fn noble_conjugate(seq: &DModSequences, pair: CoprimePair) -> DModSequences {
    let s = seq.combined();
    let d = s.len();
    if s.iter().all(|&x| x == 0) {
        return seq.clone();
    }
    let doubled: Vec<u32> = s.iter().chain(&s).copied().collect();
    let low = WeightedPath::from_runs(&doubled, pair).min_point();
    // the minimum sits at the bottom of the run s_i with i = x mod d (0-based)
    let i = low.x as usize % d;
    let start = if pair.is_p_rise(seq.c(pair) as u32) && seq.c(pair) > 0 {
        (i + d - 1) % d
    } else {
        i
    };
    let rotated: Vec<u32> = (0..d).map(|j| s[(start + j) % d]).collect();
    DModSequences::from_combined(&rotated, pair)
}

/// All good sequence pairs of length `d`, via the combined sequences with
/// sum at most `ad/(b-1)`.
pub fn good_sequences(pair: CoprimePair, d: u32) -> Result<Vec<DModSequences>> {
    check_divisor(pair, d)?;
    let budget = (pair.a() as u64 * d as u64 / pair.labels() as u64) as u32;
    let mut out = Vec::new();
    let mut s = vec![0u32; d as usize];
    fn go(k: usize, left: u32, s: &mut Vec<u32>, pair: CoprimePair, out: &mut Vec<DModSequences>) {
        if k == s.len() {
            out.push(DModSequences::from_combined(s, pair));
            return;
        }
        for x in 0..=left {
            s[k] = x;
            go(k + 1, left - x, s, pair, out);
        }
    }
    go(0, budget, &mut s, pair, &mut out);
    Ok(out)
}

/// The pair in `NC_d(a,b)` with the given good sequences: take a noble
/// rotation, build its path, apply the laser map, and rotate back.
pub fn sd_inverse(seq: &DModSequences, pair: CoprimePair, d: u32) -> Result<LabeledPair> {
    check_divisor(pair, d)?;
    if seq.d() != d as usize || !seq.is_good(pair) {
        return Err(Error::BadProfile(format!("{seq} is not a good sequence pair")));
    }
    let noble = noble_conjugate(seq, pair);
    let path = l_map(&noble, pair)?.to_dyck()?;
    let base = LabeledPair::from_path(&path);
    (0..d as i64)
        .map(|k| base.rotated(k))
        .find(|cand| d_mod_unchecked(cand, d) == *seq)
        .ok_or(Error::NotVeryGood)
}

/// Brute-force `rot^d` fixed points among all members.
pub fn fixed_pairs(pair: CoprimePair, d: u32, cap: u128) -> Result<Vec<LabeledPair>> {
    Ok(enumerate_pairs(pair, cap)?
        .into_iter()
        .filter(|pq| pq.rotated(d as i64) == *pq)
        .collect())
}

/// A closed-form count beside the brute-force count it should equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedCount {
    pub formula: u128,
    pub brute: u128,
}

impl FixedCount {
    pub fn matches(&self) -> bool {
        self.formula == self.brute
    }
}

/// `|NC_d(a,b)|` as `C(⌊ad/(b-1)⌋ + d, d)` and by brute force; `d = b-1`
/// gives the full Catalan count.
pub fn count_fixed(pair: CoprimePair, d: u32) -> Result<FixedCount> {
    let n = pair.labels();
    if d != n {
        check_divisor(pair, d)?;
    }
    let formula = if d == n {
        rational_catalan(pair.a(), pair.b())?
    } else {
        let budget = pair.a() as u64 * d as u64 / n as u64;
        binomial(budget + d as u64, d as u64)?
    };
    let brute = fixed_pairs(pair, d, DEFAULT_PATH_CAP)?.len() as u128;
    Ok(FixedCount { formula, brute })
}

/// Orbit data of a `rot^d`-invariant pair, counting only blocks of positive
/// rank: whether one is central, and the number of orbits of noncentral
/// ones of each rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitProfile {
    pub central: bool,
    /// `m[i-1]` orbits of noncentral blocks of rank `i`, for `i = 1..=a`.
    pub m: Vec<u32>,
}

impl OrbitProfile {
    pub fn orbits(&self) -> u32 {
        self.m.iter().sum()
    }
}

pub fn orbit_profile(pq: &LabeledPair, d: u32) -> Result<OrbitProfile> {
    check_divisor(pq.pair(), d)?;
    require_invariant(pq, d)?;
    let n = pq.pair().labels();
    let per_orbit = n / d;
    let mut central = false;
    let mut m = vec![0u32; pq.pair().a() as usize];
    for b in pq.p().iter().chain(pq.q()) {
        match kind_of(b, n, d) {
            _ if b.rank() == 0 => {}
            BlockKind::Central => central = true,
            _ => m[b.rank() as usize - 1] += 1,
        }
    }
    for slot in &mut m {
        *slot /= per_orbit;
    }
    Ok(OrbitProfile { central, m })
}

/// Fixed points with `p` orbits of noncentral blocks, with or without a
/// central block, against the closed forms
/// `C(d,p) C(⌊ad/(b-1)⌋-1, p)` and `C(d,p) C(⌊ad/(b-1)⌋-1, p-1)` (the
/// latter `0` unless `(b-1)/d` divides `a`).
pub fn count_fixed_orbits(pair: CoprimePair, d: u32, p: u32, central: bool) -> Result<FixedCount> {
    check_divisor(pair, d)?;
    let ratio = pair.labels() / d;
    if ratio as u64 * p as u64 > pair.a() as u64 {
        return Err(Error::BadProfile(format!("{p} orbits of size {ratio} exceed a = {}", pair.a())));
    }
    let budget = pair.a() as i64 * d as i64 / pair.labels() as i64;
    let choose = |n: i64, k: i64| -> Result<u128> {
        match (n, k) {
            (_, 0) => Ok(1),
            (n, k) if n < 0 || k < 0 => Ok(0),
            (n, k) => binomial(n as u64, k as u64),
        }
    };
    let lead = binomial(d as u64, p as u64)?;
    let formula = if central {
        lead * choose(budget - 1, p as i64)?
    } else if pair.a().is_multiple_of(ratio) {
        lead * choose(budget - 1, p as i64 - 1)?
    } else {
        0
    };
    let mut brute = 0;
    for pq in fixed_pairs(pair, d, DEFAULT_PATH_CAP)? {
        let prof = orbit_profile(&pq, d)?;
        if prof.central == central && prof.orbits() == p {
            brute += 1;
        }
    }
    Ok(FixedCount { formula, brute })
}

/// The same orbit count read off the good sequences: `p` nonzero entries
/// with sum `σ <= ⌊ad/(b-1)⌋`, a central block exactly when
/// `σ (b-1)/d < a`. This gives `C(d,p) C(⌊ad/(b-1)⌋, p)` with a central
/// block when `(b-1)/d` does not divide `a`.
pub fn orbit_count_from_sequences(pair: CoprimePair, d: u32, p: u32, central: bool) -> Result<u128> {
    check_divisor(pair, d)?;
    let ratio = pair.labels() / d;
    let budget = pair.a() as u64 * d as u64 / pair.labels() as u64;
    let exact = pair.a().is_multiple_of(ratio);
    // positive p-tuples with sum at most n, and with sum exactly n
    let at_most = |n: u64| if p == 0 { Ok(1) } else { binomial(n, p as u64) };
    let exactly = |n: u64| match (p, n) {
        (0, 0) => Ok(1),
        (0, _) => Ok(0),
        _ if n == 0 => Ok(0),
        _ => binomial(n - 1, p as u64 - 1),
    };
    let tuples = match (central, exact) {
        (true, true) if budget == 0 => 0,
        (true, true) => at_most(budget - 1)?,
        (true, false) => at_most(budget)?,
        (false, true) => exactly(budget)?,
        (false, false) => 0,
    };
    Ok(binomial(d as u64, p as u64)? * tuples)
}

/// Fixed points with `m[i-1]` orbits of noncentral blocks of rank `i`,
/// against `C(d; m_1, ..., m_a, d - m)`.
pub fn count_fixed_profile(pair: CoprimePair, d: u32, m: &[u32]) -> Result<FixedCount> {
    check_divisor(pair, d)?;
    let a = pair.a();
    if m.len() != a as usize {
        return Err(Error::BadProfile(format!("profile has {} entries, expected {a}", m.len())));
    }
    let ratio = (pair.labels() / d) as u64;
    let weight: u64 = m.iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x as u64).sum();
    let orbits: u64 = m.iter().map(|&x| x as u64).sum();
    if ratio * weight > a as u64 || orbits > d as u64 {
        return Err(Error::BadProfile("profile exceeds the available rank".into()));
    }
    let mut parts: Vec<u64> = m.iter().map(|&x| x as u64).collect();
    parts.push(d as u64 - orbits);
    let formula = multinomial(&parts)?;
    let mut brute = 0;
    for pq in fixed_pairs(pair, d, DEFAULT_PATH_CAP)? {
        if orbit_profile(&pq, d)?.m == m {
            brute += 1;
        }
    }
    Ok(FixedCount { formula, brute })
}

/// Number of blocks of each positive rank, `r[i-1]` for rank `i`.
pub fn rank_profile(pq: &LabeledPair) -> Vec<u32> {
    let mut r = vec![0; pq.pair().a() as usize];
    for (_, b) in pq.nontrivial_blocks() {
        r[b.rank() as usize - 1] += 1;
    }
    r
}

/// Number of blocks of positive rank.
pub fn block_count(pq: &LabeledPair) -> u32 {
    pq.nontrivial_blocks().count() as u32
}

/// `Cat_q(a,b) = [a+b choose a]_q / [a+b]_q`.
pub fn q_catalan(pair: CoprimePair) -> Result<QPoly> {
    let n = pair.a() + pair.b();
    QPoly::q_binomial(n, pair.a())?.div_exact(&QPoly::q_int(n))
}

/// `Nar_q(a,b,k) = [a choose k]_q [b-1 choose k-1]_q / [a]_q`.
pub fn q_narayana(pair: CoprimePair, k: u32) -> Result<QPoly> {
    if k == 0 || k > pair.a() {
        return Err(Error::BadProfile(format!("block count {k} is outside 1..={}", pair.a())));
    }
    QPoly::q_binomial(pair.a(), k)?
        .mul(&QPoly::q_binomial(pair.labels(), k - 1)?)?
        .div_exact(&QPoly::q_int(pair.a()))
}

/// `Krew_q(a,b,r) = [b-1]!_q / ([r_1]!_q ... [r_a]!_q [b-k]!_q)` with
/// `k = r_1 + ... + r_a`; zero when `k > b`.
pub fn q_kreweras(pair: CoprimePair, r: &[u32]) -> Result<QPoly> {
    check_profile(pair, r)?;
    let k: u32 = r.iter().sum();
    if k > pair.b() {
        return Ok(QPoly::zero());
    }
    let mut x = QPoly::q_factorial(pair.labels())?;
    for &ri in r.iter().chain([&(pair.b() - k)]) {
        x = x.div_exact(&QPoly::q_factorial(ri)?)?;
    }
    Ok(x)
}

fn check_profile(pair: CoprimePair, r: &[u32]) -> Result<()> {
    if r.len() != pair.a() as usize {
        return Err(Error::BadProfile(format!("profile has {} entries, expected {}", r.len(), pair.a())));
    }
    let weight: u64 = r.iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x as u64).sum();
    if weight != pair.a() as u64 {
        return Err(Error::BadProfile(format!("weighted sum is {weight}, expected {}", pair.a())));
    }
    Ok(())
}

/// Every rank profile `(r_1, ..., r_a)` with `Σ i r_i = a`, i.e. the
/// partitions of `a` in multiplicity form.
pub fn rank_profiles(a: u32) -> Vec<Vec<u32>> {
    fn go(part: u32, left: u32, r: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if part == 0 {
            if left == 0 {
                out.push(r.clone());
            }
            return;
        }
        for mult in 0..=left / part {
            r[part as usize - 1] = mult;
            go(part - 1, left - mult * part, r, out);
        }
        r[part as usize - 1] = 0;
    }
    let mut out = Vec::new();
    go(a, a, &mut vec![0; a as usize], &mut out);
    out.sort();
    out
}

/// Which subset of `NC(a,b)` and which polynomial a sieving check uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    Catalan,
    /// Pairs with `k` blocks of positive rank.
    Narayana(u32),
    /// Pairs with `r_i` blocks of rank `i`.
    Kreweras(Vec<u32>),
}

impl Flavor {
    pub fn polynomial(&self, pair: CoprimePair) -> Result<QPoly> {
        match self {
            Flavor::Catalan => q_catalan(pair),
            Flavor::Narayana(k) => q_narayana(pair, *k),
            Flavor::Kreweras(r) => q_kreweras(pair, r),
        }
    }

    pub fn contains(&self, pq: &LabeledPair) -> bool {
        match self {
            Flavor::Catalan => true,
            Flavor::Narayana(k) => block_count(pq) == *k,
            Flavor::Kreweras(r) => rank_profile(pq) == *r,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Catalan => f.write_str("catalan"),
            Flavor::Narayana(k) => write!(f, "narayana k={k}"),
            Flavor::Kreweras(r) => write!(f, "kreweras r={}", crate::paths::join_runs(r)),
        }
    }
}

/// One line of a sieving report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspRow {
    pub d: u32,
    /// `X(ζ^d)`, or `None` when it is not an integer.
    pub formula: Option<i128>,
    pub brute: u128,
}

impl CspRow {
    pub fn matches(&self) -> bool {
        self.formula == Some(self.brute as i128)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspReport {
    pub pair: CoprimePair,
    pub flavor: Flavor,
    pub rows: Vec<CspRow>,
}

impl CspReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CspRow::matches)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("d\tformula_value\tbrute_count\tmatch\n");
        for r in &self.rows {
            let f = r.formula.map_or("non-integer".to_string(), |v| v.to_string());
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.d, f, r.brute, r.matches()));
        }
        out
    }
}

/// Compares `X(ζ^d)` with the number of pairs in the flavor's subset fixed
/// by `rot^d`, for every `d = 0..b-2`, with `ζ` of order `b-1`.
pub fn verify_csp(pair: CoprimePair, flavor: &Flavor, cap: u128) -> Result<CspReport> {
    let x = flavor.polynomial(pair)?;
    let members: Vec<LabeledPair> = enumerate_pairs(pair, cap)?
        .into_iter()
        .filter(|pq| flavor.contains(pq))
        .collect();
    let n = pair.labels();
    let rows = (0..n)
        .into_par_iter()
        .map(|d| {
            let brute = members.iter().filter(|pq| pq.rotated(d as i64) == **pq).count() as u128;
            let formula = match x.eval_at_root(n, d as u64) {
                Ok(v) => Some(v),
                Err(Error::NotInteger) => None,
                Err(e) => return Err(e),
            };
            Ok(CspRow { d, formula, brute })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CspReport {
        pair,
        flavor: flavor.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::DyckPath;
    use std::collections::{BTreeSet, HashSet};

    fn pair(a: u32, b: u32) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    fn second_example() -> LabeledPair {
        LabeledPair::from_path(&DyckPath::new(pair(10, 7), vec![3, 0, 2, 3, 0, 1, 1]).unwrap())
    }

    fn seq(sp: &[u32], sq: &[u32]) -> DModSequences {
        DModSequences::new(sp.to_vec(), sq.to_vec()).unwrap()
    }

    #[test]
    fn classification_of_the_ten_seven_example() {
        let pq = second_example();
        let p3 = pq.p().iter().find(|b| b.contains(3)).unwrap();
        let q6 = pq.q().iter().find(|b| b.contains(6)).unwrap();
        assert_eq!(classify_block(p3, &pq, 3), Ok(BlockKind::Central));
        assert_eq!(classify_block(q6, &pq, 3), Ok(BlockKind::Wrapping));
        assert_eq!(d_mod_sequences(&pq, 3), Ok(seq(&[3, 0, 0], &[0, 1, 0])));
        assert_eq!(d_mod_sequences(&pq, 2), Err(Error::NotDInvariant(2)));
        assert_eq!(d_mod_sequences(&pq, 6), Err(Error::BadDivisor { d: 6, modulus: 6 }));
        assert_eq!(d_mod_sequences(&pq, 4), Err(Error::BadDivisor { d: 4, modulus: 6 }));
    }

    #[test]
    fn single_block_pair_has_zero_sequences() {
        for (a, b, d) in [(10, 7, 3), (10, 7, 1), (3, 5, 2), (7, 5, 1)] {
            let pq = LabeledPair::from_path(&DyckPath::maximal(pair(a, b)));
            let s = d_mod_sequences(&pq, d).unwrap();
            assert!(s.sp.iter().chain(&s.sq).all(|&x| x == 0));
        }
    }

    #[test]
    fn at_most_one_central_block() {
        let fixed = fixed_pairs(pair(10, 7), 3, 1 << 20).unwrap();
        assert_eq!(fixed.len(), 56);
        for pq in &fixed {
            let central = pq
                .p()
                .iter()
                .chain(pq.q())
                .filter(|b| classify_block(b, pq, 3).unwrap() == BlockKind::Central)
                .count();
            assert!(central <= 1);
        }
    }

    #[test]
    fn combined_sequence_of_the_eleven_seven_example() {
        let p = pair(11, 7);
        let s = seq(&[0, 3, 0], &[0, 1, 1]);
        assert!(s.is_good(p));
        assert_eq!(s.combined(), vec![1, 3, 1]);
        assert_eq!(DModSequences::from_combined(&[1, 3, 1], p), s);
        let doubled = WeightedPath::from_runs(&[1, 3, 1, 1, 3, 1], p);
        let low = doubled.min_point();
        assert_eq!((low.x, low.y, low.weight), (1, 1, -4));
        assert!(doubled.has_unique_min());
        assert_eq!(s.c(p), 1);
        let noble = noble_conjugate(&s, p);
        assert_eq!(noble.combined(), vec![3, 1, 1]);
        assert_eq!(noble, seq(&[3, 0, 0], &[1, 1, 0]));
        assert!(noble.is_noble(p));
        let path = l_map(&noble, p).unwrap();
        assert_eq!(path.runs(), &[3, 1, 1, 3, 1, 1, 1]);
        assert!(path.is_dyck());
    }

    #[test]
    fn zero_sequences() {
        for (a, b, d) in [(10, 7, 3), (3, 5, 2), (11, 7, 2)] {
            let p = pair(a, b);
            let z = seq(&vec![0; d], &vec![0; d]);
            assert!(z.is_good(p) && z.is_very_good(p) && z.is_noble(p));
            assert_eq!(z.c(p), a as i64);
            assert_eq!(l_map(&z, p).unwrap().runs(), DyckPath::maximal(p).runs());
            assert_eq!(noble_conjugate(&z, p), z);
        }
    }

    #[test]
    fn not_very_good_is_rejected() {
        let p = pair(11, 7);
        assert_eq!(l_map(&seq(&[0, 3, 0], &[0, 1, 1]), p), Err(Error::NotVeryGood));
    }

    /// All pairs of sequences with entries up to `a`, filtered by the four
    /// defining conditions of goodness written out directly.
    fn brute_good(p: CoprimePair, d: usize) -> BTreeSet<DModSequences> {
        let a = p.a();
        let mut out = BTreeSet::new();
        let total = (a as usize + 1).pow(2 * d as u32);
        for code in 0..total {
            let mut c = code;
            let mut digits = Vec::with_capacity(2 * d);
            for _ in 0..2 * d {
                digits.push((c % (a as usize + 1)) as u32);
                c /= a as usize + 1;
            }
            let (sp, sq) = digits.split_at(d);
            let ok = sp.iter().all(|&x| x == 0 || x * p.b() > a)
                && sq.iter().all(|&x| x * p.b() < a)
                && (sp.iter().chain(sq).sum::<u32>() as u64) * (p.labels() as u64) <= (a as u64) * d as u64
                && (0..d).all(|i| sp[(i + 1) % d] == 0 || sq[i] == 0);
            if ok {
                out.insert(seq(sp, sq));
            }
        }
        out
    }

    #[test]
    fn good_sequences_match_the_definition() {
        for (a, b, d) in [(10, 7, 3), (10, 7, 2), (3, 5, 2), (5, 7, 2), (7, 5, 2), (4, 7, 3)] {
            let p = pair(a, b);
            let listed: BTreeSet<DModSequences> = good_sequences(p, d).unwrap().into_iter().collect();
            assert_eq!(listed, brute_good(p, d as usize), "{a},{b},{d}");
            for s in &listed {
                assert_eq!(&DModSequences::from_combined(&s.combined(), p), s);
            }
        }
    }

    fn small_cases() -> Vec<(u32, u32, u32)> {
        let mut v = Vec::new();
        for a in 1..14u32 {
            for b in 2..=14 - a {
                if crate::arith::gcd(a as u64, b as u64) != 1 {
                    continue;
                }
                for d in 1..b - 1 {
                    if (b - 1) % d == 0 {
                        v.push((a, b, d));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn sd_is_an_equivariant_bijection() {
        for (a, b, d) in small_cases() {
            let p = pair(a, b);
            let fixed = fixed_pairs(p, d, 1 << 20).unwrap();
            let goods = good_sequences(p, d).unwrap();
            assert_eq!(fixed.len(), goods.len(), "{a},{b},{d}");
            let mut images = HashSet::new();
            for pq in &fixed {
                let s = d_mod_sequences(pq, d).unwrap();
                assert!(s.is_good(p), "{a},{b},{d}: {pq} -> {s}");
                assert_eq!(&sd_inverse(&s, p, d).unwrap(), pq);
                assert_eq!(d_mod_sequences(&pq.rotated(1), d).unwrap(), s.rotated(1));
                assert!(images.insert(s));
            }
            for s in &goods {
                let noble = noble_conjugate(s, p);
                assert!(noble.is_noble(p), "{a},{b},{d}: {s} -> {noble}");
                assert!((0..d as i64).any(|k| s.rotated(k) == noble));
                assert_eq!(noble_conjugate(&noble, p), noble_conjugate(&noble, p));
                assert!(noble_conjugate(&noble, p).is_noble(p));
                let back = sd_inverse(s, p, d).unwrap();
                assert_eq!(d_mod_sequences(&back, d).unwrap(), *s);
            }
        }
    }

    #[test]
    fn noble_pairs_have_noble_sequences_and_orbits_contain_one() {
        let mut quirks = 0;
        for (a, b, d) in small_cases() {
            let p = pair(a, b);
            let n = p.labels();
            let fixed = fixed_pairs(p, d, 1 << 20).unwrap();
            let noble_pair = |pq: &LabeledPair| {
                let kinds = |side: &[Block]| side.iter().map(|blk| (kind_of(blk, n, d), blk.clone())).collect::<Vec<_>>();
                let (kp, kq) = (kinds(pq.p()), kinds(pq.q()));
                kp.iter().chain(&kq).all(|(k, _)| *k != BlockKind::Wrapping)
                    && kp.iter().all(|(k, blk)| *k != BlockKind::Central || blk.contains(1))
                    && kq.iter().all(|(k, blk)| *k != BlockKind::Central || blk.contains(n))
            };
            for pq in &fixed {
                let s = d_mod_sequences(pq, d).unwrap();
                if s.c(p) == 0 && s.sp[0] == 0 && s.is_noble(p) {
                    // the c = 0 form led by N^{s_2} builds the pair one rotation back
                    let built = LabeledPair::from_path(&l_map(&s, p).unwrap().to_dyck().unwrap());
                    assert_eq!(d_mod_sequences(&built, d).unwrap(), s.rotated(-1), "{a},{b},{d}: {s}");
                    assert!(!noble_pair(pq));
                    quirks += 1;
                    continue;
                }
                assert_eq!(noble_pair(pq), s.is_noble(p), "{a},{b},{d}: {pq}");
                if s.is_noble(p) {
                    assert_eq!(l_map(&s, p).unwrap().runs(), pq.rank_sequences().r);
                }
                assert!((0..d as i64).any(|k| noble_pair(&pq.rotated(k))));
                // central Q block: either it holds b-1 or P wraps, never both
                let q_central = pq.q().iter().find(|blk| kind_of(blk, n, d) == BlockKind::Central);
                if let Some(blk) = q_central {
                    let p_wraps = pq.p().iter().any(|x| kind_of(x, n, d) == BlockKind::Wrapping);
                    assert!(blk.contains(n) != p_wraps, "{a},{b},{d}: {pq}");
                }
                let p_central_with_1 = pq.p().iter().any(|x| x.contains(1) && kind_of(x, n, d) == BlockKind::Central);
                if p_central_with_1 {
                    assert!(pq.q().iter().all(|x| kind_of(x, n, d) != BlockKind::Wrapping));
                }
            }
        }
        println!("sequences built one rotation back: {quirks}");
        assert!(quirks > 0);
    }

    #[test]
    fn fixed_point_counts() {
        assert_eq!(count_fixed(pair(10, 7), 3).unwrap(), FixedCount { formula: 56, brute: 56 });
        assert_eq!(count_fixed(pair(10, 7), 1).unwrap(), FixedCount { formula: 2, brute: 2 });
        assert_eq!(count_fixed(pair(3, 5), 2).unwrap(), FixedCount { formula: 3, brute: 3 });
        assert_eq!(count_fixed(pair(10, 7), 6).unwrap(), FixedCount { formula: 1144, brute: 1144 });
        assert!(count_fixed(pair(10, 7), 4).is_err());
        for (a, b, d) in small_cases() {
            assert!(count_fixed(pair(a, b), d).unwrap().matches(), "{a},{b},{d}");
        }
    }

    #[test]
    fn orbit_counts() {
        let (mut printed_misses, mut checked) = (0, 0);
        for (a, b, d) in small_cases() {
            let p = pair(a, b);
            let ratio = (b - 1) / d;
            let mut total = 0;
            for orbits in (0..=d).filter(|&o| ratio * o <= a) {
                for central in [true, false] {
                    let c = count_fixed_orbits(p, d, orbits, central).unwrap();
                    assert_eq!(c.brute, orbit_count_from_sequences(p, d, orbits, central).unwrap());
                    if a % ratio == 0 {
                        assert!(c.matches(), "{a},{b},{d},{orbits},{central}: {c:?}");
                    } else if !c.matches() {
                        // the printed central count drops one from the budget
                        assert!(central);
                        printed_misses += 1;
                    }
                    total += c.brute;
                    checked += 1;
                }
            }
            assert_eq!(total, count_fixed(p, d).unwrap().brute);
        }
        assert_eq!(printed_misses, 23);
        assert!(checked > 250);
        let mut sum = 0;
        for m in [[0u32; 10]; 1].iter().copied().chain((1..=3).map(|k| {
            let mut v = [0u32; 10];
            v[k - 1] = 1;
            v
        })) {
            let c = count_fixed_profile(pair(10, 7), 3, &m).unwrap();
            assert!(c.matches());
            sum += c.brute;
        }
        assert!(sum <= 56);
    }

    #[test]
    fn rank_profile_orbit_counts_sum_to_the_fixed_count() {
        for (a, b, d) in small_cases() {
            let p = pair(a, b);
            let ratio = (b - 1) / d;
            let mut total = 0;
            let mut m = vec![0u32; a as usize];
            fn go(i: usize, left: u32, ratio: u32, m: &mut Vec<u32>, p: CoprimePair, d: u32, total: &mut u128) {
                if i == m.len() {
                    if m.iter().sum::<u32>() <= d {
                        let c = count_fixed_profile(p, d, m).unwrap();
                        assert!(c.matches(), "{p:?} {d} {m:?}: {c:?}");
                        *total += c.brute;
                    }
                    return;
                }
                let w = (i as u32 + 1) * ratio;
                for x in 0..=left / w {
                    m[i] = x;
                    go(i + 1, left - x * w, ratio, m, p, d, total);
                }
                m[i] = 0;
            }
            go(0, a, ratio, &mut m, p, d, &mut total);
            assert_eq!(total, count_fixed(p, d).unwrap().brute, "{a},{b},{d}");
        }
    }

    #[test]
    fn q_polynomials_specialize_to_counts() {
        assert_eq!(q_catalan(pair(3, 5)).unwrap().at_one().unwrap(), 7);
        for (a, b) in [(5, 3), (3, 5), (7, 4), (4, 7), (10, 7), (2, 9)] {
            let p = pair(a, b);
            let members = enumerate_pairs(p, 1 << 20).unwrap();
            let cat = q_catalan(p).unwrap();
            assert!(cat.has_nonnegative_coeffs());
            assert_eq!(cat.degree(), Some(((a - 1) * (b - 1)) as usize));
            assert_eq!(cat.at_one().unwrap() as usize, members.len());
            let mut nar_total = 0;
            for k in 1..=a {
                let x = q_narayana(p, k).unwrap();
                assert!(x.has_nonnegative_coeffs());
                let count = members.iter().filter(|pq| block_count(pq) == k).count();
                assert_eq!(x.at_one().unwrap() as usize, count, "{a},{b} k={k}");
                nar_total += count;
            }
            assert_eq!(nar_total, members.len());
            let mut krew_total = 0;
            for r in rank_profiles(a) {
                let x = q_kreweras(p, &r).unwrap();
                assert!(x.has_nonnegative_coeffs());
                let count = members.iter().filter(|pq| rank_profile(pq) == r).count();
                assert_eq!(x.at_one().unwrap() as usize, count, "{a},{b} r={r:?}");
                krew_total += count;
            }
            assert_eq!(krew_total, members.len());
        }
    }

    #[test]
    fn rank_profiles_are_partitions() {
        assert_eq!(rank_profiles(4).len(), 5);
        assert_eq!(rank_profiles(10).len(), 42);
        assert!(rank_profiles(5).iter().all(|r| r.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum::<u32>() == 5));
        assert_eq!(q_kreweras(pair(5, 3), &[1, 1, 0, 0, 0]), Err(Error::BadProfile("weighted sum is 3, expected 5".into())));
    }

    #[test]
    fn csp_small_instances() {
        let report = verify_csp(pair(3, 5), &Flavor::Catalan, 1 << 20).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.passed(), "{}", report.to_tsv());
        for k in 1..=4 {
            assert!(verify_csp(pair(7, 4), &Flavor::Narayana(k), 1 << 20).unwrap().passed());
        }
        for r in rank_profiles(10) {
            let rep = verify_csp(pair(10, 7), &Flavor::Kreweras(r.clone()), 1 << 20).unwrap();
            assert!(rep.passed(), "{r:?}\n{}", rep.to_tsv());
        }
        assert_eq!(q_catalan(pair(10, 7)).unwrap().eval_at_root(2, 1).unwrap(), 56);
        assert_eq!(
            q_catalan(pair(3, 5)).unwrap().eval_at_root(4, 1).unwrap() as u128,
            fixed_pairs(pair(3, 5), 1, 1 << 20).unwrap().len() as u128
        );
    }

    #[test]
    fn tsv_layout() {
        let report = verify_csp(pair(5, 3), &Flavor::Catalan, 1 << 20).unwrap();
        assert_eq!(report.to_tsv(), "d\tformula_value\tbrute_count\tmatch\n0\t7\t7\ttrue\n1\t3\t3\ttrue\n");
    }
}

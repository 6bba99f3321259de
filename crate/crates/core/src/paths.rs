//! Rational Dyck paths stored as vertical-run vectors, together with their
//! lasers, transpose, the path rotation `rot'`, and weight labels.
//!
//! A path from `(0,0)` to `(b,a)` is stored as `(n_1, ..., n_b)` where `n_k`
//! is the number of north steps immediately before the `k`-th east step.
//! Label `i` (for `1 <= i <= b-1`) is the lattice point `(i, n_1 + ... + n_i)`
//! at the east end of the `i`-th east step.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, rational_catalan};
use crate::error::{Error, Result};

/// Default refusal threshold for exhaustive path enumeration.
pub const DEFAULT_PATH_CAP: u128 = 10_000_000;

/// A coprime pair `(a, b)`: `a` is the height of the paths, `b` the width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct CoprimePair {
    a: u32,
    b: u32,
}

impl CoprimePair {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || b < 2 {
            return Err(Error::Degenerate { a, b });
        }
        if gcd(a as u64, b as u64) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        Ok(CoprimePair { a, b })
    }

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn b(self) -> u32 {
        self.b
    }

    /// Size of the label set `[b-1]`, which is also the rotation order.
    pub fn labels(self) -> u32 {
        self.b - 1
    }

    /// `len > a/b`, compared exactly.
    pub fn is_p_rise(self, len: u32) -> bool {
        len as u64 * self.b as u64 > self.a as u64
    }

    /// `len < a/b`, compared exactly (zero counts).
    pub fn is_q_rise(self, len: u32) -> bool {
        (len as u64 * (self.b as u64)) < self.a as u64
    }

    pub fn transposed(self) -> Result<Self> {
        CoprimePair::new(self.b, self.a)
    }

    /// Number of `(a,b)`-Dyck paths.
    pub fn catalan(self) -> u128 {
        rational_catalan(self.a, self.b).unwrap_or(u128::MAX)
    }
}

impl TryFrom<(u32, u32)> for CoprimePair {
    type Error = Error;

    fn try_from((a, b): (u32, u32)) -> Result<Self> {
        CoprimePair::new(a, b)
    }
}

impl From<CoprimePair> for (u32, u32) {
    fn from(p: CoprimePair) -> Self {
        (p.a, p.b)
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    North,
    East,
}

/// A lattice path from `(0,0)` to `(b,a)` with no diagonal requirement.
///
/// This is what rank sequences and the sequence-pair constructions produce
/// before anyone has checked that the result is a Dyck path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pair: CoprimePair,
    runs: Vec<u32>,
}

impl LatticePath {
    pub fn new(pair: CoprimePair, runs: Vec<u32>) -> Result<Self> {
        check_shape(pair, &runs)?;
        Ok(LatticePath { pair, runs })
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    /// The path as a Dyck path, or the first place it meets the diagonal.
    pub fn to_dyck(&self) -> Result<DyckPath> {
        DyckPath::new(self.pair, self.runs.clone())
    }

    pub fn is_dyck(&self) -> bool {
        first_violation(self.pair, &self.runs).is_none()
    }
}

fn check_shape(pair: CoprimePair, runs: &[u32]) -> Result<()> {
    if runs.len() != pair.b() as usize {
        return Err(Error::BadLength {
            expected: pair.b() as usize,
            found: runs.len(),
        });
    }
    let sum: u64 = runs.iter().map(|&r| r as u64).sum();
    if sum != pair.a() as u64 {
        return Err(Error::BadSum {
            expected: pair.a() as u64,
            found: sum,
        });
    }
    Ok(())
}

/// First `k` in `1..b` whose prefix height is not strictly above `a k / b`.
fn first_violation(pair: CoprimePair, runs: &[u32]) -> Option<u32> {
    let (a, b) = (pair.a() as u64, pair.b() as u64);
    let mut h = 0u64;
    for k in 1..b {
        h += runs[k as usize - 1] as u64;
        if h * b <= a * k {
            return Some(k as u32);
        }
    }
    None
}

/// An `(a,b)`-Dyck path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    pair: CoprimePair,
    runs: Vec<u32>,
}

/// The laser fired from label `source`; it stops inside the east step whose
/// west endpoint has x-coordinate `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laser {
    pub source: u32,
    pub target: u32,
}

impl DyckPath {
    /// Validates a run vector.
    pub fn new(pair: CoprimePair, runs: Vec<u32>) -> Result<Self> {
        check_shape(pair, &runs)?;
        if let Some(k) = first_violation(pair, &runs) {
            return Err(Error::BelowDiagonal(k));
        }
        Ok(DyckPath { pair, runs })
    }

    /// The maximal path `N^a E^b`.
    pub fn maximal(pair: CoprimePair) -> Self {
        let mut runs = vec![0; pair.b() as usize];
        runs[0] = pair.a();
        DyckPath { pair, runs }
    }

    /// Parses an NE-string such as `NNNENENNENE`; the pair is read off the
    /// step counts.
    pub fn from_ne(s: &str) -> Result<Self> {
        let mut runs = Vec::new();
        let mut pending = 0u32;
        for c in s.trim().chars() {
            match c {
                'N' | 'n' => pending += 1,
                'E' | 'e' => {
                    runs.push(pending);
                    pending = 0;
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(format!("unexpected character {c:?} in path"))),
            }
        }
        if pending != 0 {
            return Err(Error::Parse("path must end with an east step".into()));
        }
        let a: u32 = runs.iter().sum();
        let pair = CoprimePair::new(a, runs.len() as u32)?;
        DyckPath::new(pair, runs)
    }

    /// Accepts either a run vector (`3,1,2,1`) or an NE-string for `pair`.
    pub fn parse(s: &str, pair: CoprimePair) -> Result<Self> {
        let s = s.trim();
        if s.chars().any(|c| matches!(c, 'N' | 'E' | 'n' | 'e')) {
            let path = DyckPath::from_ne(s)?;
            if path.pair != pair {
                return Err(Error::Parse(format!(
                    "NE-string describes a {} path, expected {}",
                    path.pair, pair
                )));
            }
            return Ok(path);
        }
        let runs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad run {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(pair, runs)
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    pub fn into_runs(self) -> Vec<u32> {
        self.runs
    }

    /// Height of label `i`, i.e. `n_1 + ... + n_i` (`i = 0` is the origin).
    pub fn height(&self, i: u32) -> u32 {
        self.runs[..i as usize].iter().sum()
    }

    /// Length of the vertical run sitting on label `i` (`i = 0` is the origin).
    pub fn run_above(&self, i: u32) -> u32 {
        self.runs[i as usize]
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        self.runs.iter().flat_map(|&n| {
            std::iter::repeat_n(Step::North, n as usize).chain(std::iter::once(Step::East))
        })
    }

    pub fn to_ne_string(&self) -> String {
        self.steps()
            .map(|s| match s {
                Step::North => 'N',
                Step::East => 'E',
            })
            .collect()
    }

    /// Fires the laser of slope `a/b` from label `i`.
    pub fn fire_laser(&self, i: u32) -> Result<Laser> {
        let b = self.pair.b();
        if i == 0 || i >= b || self.runs[i as usize] == 0 {
            return Err(Error::NoNorthStep(i));
        }
        let (a64, b64) = (self.pair.a() as u64, b as u64);
        let base = self.height(i) as u64 * b64;
        let mut top = self.height(i) as u64;
        for j in i..b {
            // east step j+1 sits at height h_{j+1}; the laser passes above its
            // east end exactly when it has crossed the step
            top += self.runs[j as usize] as u64;
            if base + a64 * (j - i + 1) as u64 > top * b64 {
                return Ok(Laser { source: i, target: j });
            }
        }
        unreachable!("a laser from a Dyck path always lands before the last east step ends")
    }

    /// All lasers, ordered by source label.
    pub fn laser_set(&self) -> Vec<Laser> {
        (1..self.pair.b())
            .filter(|&i| self.runs[i as usize] > 0)
            .map(|i| self.fire_laser(i).expect("label fires"))
            .collect()
    }

    /// Reflects the path through `y = -x`, giving a `(b,a)`-Dyck path.
    ///
    /// Fails only when `a = 1`, whose transpose has a single east step.
    pub fn transpose(&self) -> Result<DyckPath> {
        let pair = self.pair.transposed()?;
        let steps: Vec<Step> = self.steps().collect();
        let mut runs = Vec::with_capacity(pair.b() as usize);
        let mut pending = 0;
        for s in steps.iter().rev() {
            match s {
                Step::East => pending += 1,
                Step::North => {
                    runs.push(pending);
                    pending = 0;
                }
            }
        }
        debug_assert_eq!(pending, 0);
        DyckPath::new(pair, runs)
    }

    /// Decomposition `N^{i_1} E^{j_1} ... N^{i_m} E^{j_m}` into nonempty runs.
    fn segments(&self) -> Vec<(u32, u32)> {
        let mut segs: Vec<(u32, u32)> = Vec::new();
        for &n in &self.runs {
            match segs.last_mut() {
                Some(last) if n == 0 => last.1 += 1,
                _ => segs.push((n, 1)),
            }
        }
        segs
    }

    fn from_segments(pair: CoprimePair, segs: &[(u32, u32)]) -> Vec<u32> {
        let mut runs = Vec::with_capacity(pair.b() as usize);
        for &(n, e) in segs {
            debug_assert!(e >= 1);
            runs.push(n);
            runs.extend(std::iter::repeat_n(0, e as usize - 1));
        }
        runs
    }

    /// The path rotation `rot'`, which realises inverse rotation of the
    /// labeled partition pair.
    pub fn rot_prime(&self) -> DyckPath {
        let segs = self.segments();
        let m = segs.len();
        if m == 1 {
            return self.clone();
        }
        let new_segs: Vec<(u32, u32)> = if segs[0].1 > 1 {
            let mut s = segs.clone();
            s[0].1 -= 1;
            s[m - 1].1 += 1;
            s
        } else {
            // westernmost valley is label 1
            let hit = self.fire_laser(1).expect("valley fires").target;
            let step = hit + 1;
            let mut start = 0;
            let mut k = 0;
            while start + segs[k].1 < step {
                start += segs[k].1;
                k += 1;
            }
            let r = step - start;
            let (i1, _) = segs[0];
            let (ik, jk) = segs[k];
            let mut s: Vec<(u32, u32)> = segs[1..k].to_vec();
            if r == 1 {
                s.push((i1, jk));
                s.extend_from_slice(&segs[k + 1..]);
                s.push((ik, 1));
            } else {
                s.push((ik, r - 1));
                s.push((i1, jk - r + 1));
                s.extend_from_slice(&segs[k + 1..]);
                s.last_mut().unwrap().1 += 1;
            }
            s
        };
        let runs = Self::from_segments(self.pair, &new_segs);
        DyckPath::new(self.pair, runs).expect("rot' preserves Dyck paths")
    }

    /// Forward rotation, the inverse of [`rot_prime`](Self::rot_prime).
    pub fn rot(&self) -> DyckPath {
        let mut d = self.clone();
        for _ in 0..self.pair.b().saturating_sub(2) {
            d = d.rot_prime();
        }
        d
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_runs(&self.runs))
    }
}

pub(crate) fn join_runs(runs: &[u32]) -> String {
    runs.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Every `(a,b)`-Dyck path in lexicographic order of run vectors.
pub fn enumerate(pair: CoprimePair) -> Result<Vec<DyckPath>> {
    enumerate_capped(pair, DEFAULT_PATH_CAP)
}

pub fn enumerate_capped(pair: CoprimePair, cap: u128) -> Result<Vec<DyckPath>> {
    let needed = rational_catalan(pair.a(), pair.b()).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::ResourceLimit { needed, cap });
    }
    let mut out = Vec::with_capacity(needed as usize);
    let mut runs = Vec::with_capacity(pair.b() as usize);
    extend_paths(pair, &mut runs, 0, &mut out);
    debug_assert_eq!(out.len() as u128, needed);
    Ok(out)
}

fn extend_paths(pair: CoprimePair, runs: &mut Vec<u32>, height: u32, out: &mut Vec<DyckPath>) {
    let (a, b) = (pair.a(), pair.b());
    let k = runs.len() as u32 + 1;
    if k == b {
        runs.push(a - height);
        out.push(DyckPath {
            pair,
            runs: runs.clone(),
        });
        runs.pop();
        return;
    }
    // smallest prefix strictly above a k / b
    let floor = (a as u64 * k as u64 / b as u64) as u32 + 1;
    let low = floor.saturating_sub(height);
    for n in low..=(a - height) {
        runs.push(n);
        extend_paths(pair, runs, height + n, out);
        runs.pop();
    }
}

/// A lattice point of a weighted path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedPoint {
    pub x: u32,
    pub y: u32,
    pub weight: i64,
}

/// A north-east path whose points carry weights: the origin has weight `0`,
/// each north step adds `b` and each east step subtracts `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPath {
    points: Vec<WeightedPoint>,
}

impl WeightedPath {
    /// Weights for `N^{r_1} E N^{r_2} E ... N^{r_k} E`.
    pub fn from_runs(runs: &[u32], pair: CoprimePair) -> Self {
        let (a, b) = (pair.a() as i64, pair.b() as i64);
        let mut points = vec![WeightedPoint { x: 0, y: 0, weight: 0 }];
        let (mut x, mut y, mut w) = (0u32, 0u32, 0i64);
        for &r in runs {
            for _ in 0..r {
                y += 1;
                w += b;
                points.push(WeightedPoint { x, y, weight: w });
            }
            x += 1;
            w -= a;
            points.push(WeightedPoint { x, y, weight: w });
        }
        WeightedPath { points }
    }

    pub fn points(&self) -> &[WeightedPoint] {
        &self.points
    }

    /// Index of the first point of minimal weight.
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.points.iter().enumerate() {
            if p.weight < self.points[best].weight {
                best = i;
            }
        }
        best
    }

    pub fn min_point(&self) -> WeightedPoint {
        self.points[self.argmin()]
    }

    /// Whether the minimal weight is attained exactly once.
    pub fn has_unique_min(&self) -> bool {
        let m = self.min_point().weight;
        self.points.iter().filter(|p| p.weight == m).count() == 1
    }
}

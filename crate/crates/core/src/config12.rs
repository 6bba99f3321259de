//! Noncrossing (1,2)-configurations and their bijection with
//! `(n+1,n)`-Dyck paths.
//!
//! A configuration on `[n-1]` is a set of pairwise disjoint balls
//! (singletons) and arcs (2-subsets) with no two arcs crossing.

use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::{rotate_label, LabeledPair};
use crate::paths::{CoprimePair, DyckPath};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config12 {
    n: u32,
    balls: Vec<u32>,
    arcs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    Free,
    Ball,
    Opens(u32),
    Closes(u32),
}

impl Config12 {
    /// Validates disjointness, range and the noncrossing condition. Arcs may
    /// be given in either orientation.
    pub fn new(n: u32, mut balls: Vec<u32>, arcs: Vec<(u32, u32)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadConfiguration(format!("n = {n} is too small")));
        }
        let mut arcs: Vec<(u32, u32)> = arcs.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        balls.sort_unstable();
        arcs.sort_unstable();
        let mut seen = vec![false; n as usize];
        for x in balls.iter().copied().chain(arcs.iter().flat_map(|&(i, j)| [i, j])) {
            if x == 0 || x >= n {
                return Err(Error::BadConfiguration(format!("{x} is outside [{}]", n - 1)));
            }
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::BadConfiguration(format!("{x} is used twice")));
            }
        }
        if let Some(&(i, _)) = arcs.iter().find(|(i, j)| i == j) {
            return Err(Error::BadConfiguration(format!("arc at {i} has equal ends")));
        }
        for (k, &(i1, i2)) in arcs.iter().enumerate() {
            for &(j1, j2) in &arcs[k + 1..] {
                if (i1 < j1 && j1 < i2 && i2 < j2) || (j1 < i1 && i1 < j2 && j2 < i2) {
                    return Err(Error::BadConfiguration(format!(
                        "arcs {{{i1},{i2}}} and {{{j1},{j2}}} cross"
                    )));
                }
            }
        }
        Ok(Config12 { n, balls, arcs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn balls(&self) -> &[u32] {
        &self.balls
    }

    /// Arcs as `(i, j)` with `i < j`, sorted.
    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    fn marks(&self) -> Vec<Mark> {
        let mut marks = vec![Mark::Free; self.n as usize];
        for &x in &self.balls {
            marks[x as usize] = Mark::Ball;
        }
        for &(i, j) in &self.arcs {
            marks[i as usize] = Mark::Opens(j);
            marks[j as usize] = Mark::Closes(i);
        }
        marks
    }

    /// Rotation `i -> i+k` on `[n-1]` (cyclically).
    pub fn rotated(&self, k: i64) -> Config12 {
        let m = self.n - 1;
        let r = |x| rotate_label(x, k, m);
        let balls = self.balls.iter().map(|&x| r(x)).collect();
        let arcs = self.arcs.iter().map(|&(i, j)| (r(i), r(j))).collect();
        Config12::new(self.n, balls, arcs).expect("rotation keeps a configuration valid")
    }
}

impl fmt::Display for Config12 {
    /// One character per label: `.` unmarked, `o` ball, `(` and `)` arc ends.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.marks()[1..] {
            let c = match m {
                Mark::Free => '.',
                Mark::Ball => 'o',
                Mark::Opens(_) => '(',
                Mark::Closes(_) => ')',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn check_shape(pair: CoprimePair) -> Result<u32> {
    if pair.a() != pair.b() + 1 {
        return Err(Error::WrongShape { a: pair.a(), b: pair.b() });
    }
    Ok(pair.b())
}

/// Reads the configuration off the lasers: `(i,i)` is a ball, `(i,j)` an arc.
pub fn to_config12(d: &DyckPath) -> Result<Config12> {
    let n = check_shape(d.pair())?;
    let mut balls = Vec::new();
    let mut arcs = Vec::new();
    for l in d.laser_set() {
        if l.source == l.target {
            balls.push(l.source);
        } else {
            arcs.push((l.source, l.target));
        }
    }
    Config12::new(n, balls, arcs)
}

/// The path with the given configuration.
///
/// A ball sits under a run of length 1, an arc's right end and an unmarked
/// label under an empty run, and an arc's left end under a run of
/// `2 + (unmarked labels directly inside the arc)`.
pub fn from_config12(c: &Config12) -> Result<DyckPath> {
    let n = c.n;
    let pair = CoprimePair::new(n + 1, n)?;
    let marks = c.marks();
    let mut runs = vec![0u32; n as usize];
    let mut stack: Vec<u32> = Vec::new();
    let mut outer = 0;
    for (i, m) in marks.iter().enumerate().skip(1) {
        match *m {
            Mark::Free => match stack.last() {
                Some(&s) => runs[s as usize] += 1,
                None => outer += 1,
            },
            Mark::Ball => runs[i] = 1,
            Mark::Opens(_) => {
                runs[i] = 2;
                stack.push(i as u32);
            }
            Mark::Closes(_) => {
                stack.pop();
            }
        }
    }
    runs[0] = 2 + outer;
    DyckPath::new(pair, runs)
}

/// The configuration read off `(P,Q)`: an arc `min(B)-1 -> max(B)` for each
/// P-block with `min(B) > 1`, and a ball at each rank-1 Q-block.
///
/// The block containing 1 is the one cut out by the laser from the origin,
/// which is not a label, so it contributes nothing.
pub fn config12_of_pair(pq: &LabeledPair) -> Result<Config12> {
    let n = check_shape(pq.pair())?;
    let arcs = pq.p().iter().filter(|b| b.first() > 1).map(|b| (b.first() - 1, b.last())).collect();
    let balls = pq.q().iter().filter(|b| b.rank() == 1).map(|b| b.first()).collect();
    Config12::new(n, balls, arcs)
}

/// All of `X_n`, in lexicographic order of the mark string (`.` < `o` < `(` < `)`).
pub fn enumerate_x(n: u32) -> Result<Vec<Config12>> {
    if n < 2 {
        return Err(Error::BadConfiguration(format!("n = {n} is too small")));
    }
    let mut out = Vec::new();
    let mut balls = Vec::new();
    let mut arcs = Vec::new();
    let mut open = Vec::new();
    fill(1, n, &mut balls, &mut arcs, &mut open, &mut out);
    Ok(out)
}

fn fill(
    i: u32,
    n: u32,
    balls: &mut Vec<u32>,
    arcs: &mut Vec<(u32, u32)>,
    open: &mut Vec<u32>,
    out: &mut Vec<Config12>,
) {
    let left = n - i;
    if open.len() as u32 > left {
        return;
    }
    if i == n {
        out.push(Config12::new(n, balls.clone(), arcs.clone()).expect("generated configurations are valid"));
        return;
    }
    fill(i + 1, n, balls, arcs, open, out);
    balls.push(i);
    fill(i + 1, n, balls, arcs, open, out);
    balls.pop();
    open.push(i);
    fill(i + 1, n, balls, arcs, open, out);
    open.pop();
    if let Some(s) = open.pop() {
        arcs.push((s, i));
        fill(i + 1, n, balls, arcs, open, out);
        arcs.pop();
        open.push(s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate;
    use std::collections::HashSet;

    fn pair(n: u32) -> CoprimePair {
        CoprimePair::new(n + 1, n).unwrap()
    }

    #[test]
    fn sizes_match_catalan() {
        for n in 2..=8 {
            let xs = enumerate_x(n).unwrap();
            assert_eq!(xs.len() as u128, pair(n).catalan(), "n = {n}");
            assert_eq!(xs.iter().collect::<HashSet<_>>().len(), xs.len());
        }
    }

    #[test]
    fn bijection_and_inverse() {
        for n in 2..=8 {
            let mut image = HashSet::new();
            for d in enumerate(pair(n)).unwrap() {
                let c = to_config12(&d).unwrap();
                assert_eq!(from_config12(&c).unwrap(), d);
                assert!(image.insert(c));
            }
            for c in enumerate_x(n).unwrap() {
                assert!(image.contains(&c));
                assert_eq!(to_config12(&from_config12(&c).unwrap()).unwrap(), c);
            }
        }
    }

    #[test]
    fn agrees_with_partition_description() {
        for n in 2..=8 {
            for d in enumerate(pair(n)).unwrap() {
                let pq = LabeledPair::from_path(&d);
                assert_eq!(config12_of_pair(&pq).unwrap(), to_config12(&d).unwrap(), "{d:?}");
            }
        }
    }

    #[test]
    fn block_of_one_has_no_arc() {
        // an arc n-1 -> max(B) for the block containing 1 is either a loop
        // or collides with the arc already ending at n-1
        for n in 3..=8 {
            let mut collisions = 0;
            for d in enumerate(pair(n)).unwrap() {
                let pq = LabeledPair::from_path(&d);
                let outer = pq.p().iter().find(|b| b.first() == 1).unwrap();
                let c = config12_of_pair(&pq).unwrap();
                if outer.last() != n - 1 {
                    assert!(c.arcs().iter().any(|&(_, j)| j == n - 1));
                    collisions += 1;
                }
            }
            assert!(n == 3 || collisions > 0);
        }
    }

    #[test]
    fn rotation_equivariant() {
        for n in 3..=8 {
            for d in enumerate(pair(n)).unwrap() {
                let pq = LabeledPair::from_path(&d);
                let c = to_config12(&d).unwrap();
                for k in 0..n as i64 - 1 {
                    let moved = pq.rotated(k).to_path().unwrap().to_dyck().unwrap();
                    assert_eq!(to_config12(&moved).unwrap(), c.rotated(k));
                }
                assert_eq!(to_config12(&d.rot_prime()).unwrap(), c.rotated(-1));
            }
        }
    }

    #[test]
    fn maximal_path_single_block() {
        for n in 3..=7 {
            let d = DyckPath::maximal(pair(n));
            let pq = LabeledPair::from_path(&d);
            assert_eq!(pq.p().len(), 1);
            // min - 1 wraps to n-1, which is the block's own maximum
            assert_eq!(to_config12(&d).unwrap(), Config12::new(n, vec![], vec![]).unwrap());
        }
    }

    #[test]
    fn hand_worked_seven_six() {
        // N^3 E N^2 E E N E E N E: heights 3,5,5,6,6,7
        let d = DyckPath::new(pair(6), vec![3, 2, 0, 1, 0, 1]).unwrap();
        let c = to_config12(&d).unwrap();
        assert_eq!(c.balls(), &[3, 5]);
        assert_eq!(c.arcs(), &[(1, 2)]);
        assert_eq!(c.to_string(), "()o.o");
        assert_eq!(from_config12(&c).unwrap(), d);
    }

    #[test]
    fn wrong_shape_rejected() {
        let d = DyckPath::maximal(CoprimePair::new(3, 5).unwrap());
        assert_eq!(to_config12(&d), Err(Error::WrongShape { a: 3, b: 5 }));
    }

    #[test]
    fn invalid_configurations() {
        assert!(Config12::new(6, vec![], vec![(1, 3), (2, 4)]).is_err());
        assert!(Config12::new(6, vec![2], vec![(1, 2)]).is_err());
        assert!(Config12::new(6, vec![6], vec![]).is_err());
        assert!(Config12::new(6, vec![], vec![(1, 4), (2, 3)]).is_ok());
    }
}

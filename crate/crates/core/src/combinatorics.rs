//! Cyclic patterns, over-rotation pairs, the Sharkovsky order and the
//! forcing order on over-rotation pairs.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{gcd, Rational};

/// A cyclic permutation of `{1..q}` in spatial labelling: the point with
/// spatial index `j` maps to the point with spatial index `image[j-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPattern", into = "RawPattern")]
pub struct CyclicPattern {
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPattern {
    q: usize,
    image: Vec<usize>,
}

impl TryFrom<RawPattern> for CyclicPattern {
    type Error = Error;

    fn try_from(raw: RawPattern) -> Result<Self> {
        if raw.q != raw.image.len() {
            return Err(Error::InvalidPattern(format!(
                "q = {} but image has {} entries",
                raw.q,
                raw.image.len()
            )));
        }
        CyclicPattern::new(raw.image)
    }
}

impl From<CyclicPattern> for RawPattern {
    fn from(p: CyclicPattern) -> Self {
        RawPattern {
            q: p.image.len(),
            image: p.image,
        }
    }
}

impl CyclicPattern {
    /// Validates that `image` (1-based) is a single cycle through all of `{1..q}`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let q = image.len();
        if q == 0 {
            return Err(Error::InvalidPattern("empty permutation".into()));
        }
        let mut seen = vec![false; q];
        for &v in &image {
            if v == 0 || v > q {
                return Err(Error::InvalidPattern(format!("entry {v} outside 1..={q}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPattern(format!("entry {v} repeated")));
            }
        }
        let mut j = 1;
        for step in 1..=q {
            j = image[j - 1];
            if j == 1 && step < q {
                return Err(Error::InvalidPattern(format!(
                    "not a single cycle: 1 returns after {step} steps"
                )));
            }
        }
        Ok(CyclicPattern { image })
    }

    pub fn fixed_point() -> Self {
        CyclicPattern { image: vec![1] }
    }

    pub fn period(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Image of spatial index `j` (1-based).
    pub fn apply(&self, j: usize) -> usize {
        self.image[j - 1]
    }

    /// Conjugate by the orientation reversal `j -> q+1-j`.
    pub fn reversed(&self) -> Self {
        let q = self.period();
        let mut image = vec![0; q];
        for j in 1..=q {
            image[q - j] = q + 1 - self.apply(j);
        }
        CyclicPattern { image }
    }

    /// Spatial pattern of a finite orbit given in dynamical order
    /// (`orbit[i+1]` is the image of `orbit[i]`, the last maps to the first).
    /// Points must be distinct.
    pub fn from_orbit<T: Ord>(orbit: &[T]) -> Result<Self> {
        let q = orbit.len();
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by(|&a, &b| orbit[a].cmp(&orbit[b]));
        let mut rank = vec![0; q];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r + 1;
        }
        for w in order.windows(2) {
            if orbit[w[0]] == orbit[w[1]] {
                return Err(Error::InvalidPattern("orbit points are not distinct".into()));
            }
        }
        let mut image = vec![0; q];
        for i in 0..q {
            image[rank[i] - 1] = rank[(i + 1) % q];
        }
        CyclicPattern::new(image)
    }
}

/// `(p, q)`: `p` is half the number of displacement sign changes along one
/// period, `q` the period. Kept unreduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OverRotationPair {
    pub p: u64,
    pub q: u64,
}

impl OverRotationPair {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 || 2 * p > q {
            return Err(Error::InvalidPattern(format!(
                "({p},{q}) is not an over-rotation pair: need 0 < p/q <= 1/2"
            )));
        }
        Ok(OverRotationPair { p, q })
    }

    pub fn is_coprime(&self) -> bool {
        gcd(self.p, self.q) == 1
    }

    pub fn reduced(&self) -> OverRotationPair {
        let g = gcd(self.p, self.q);
        OverRotationPair {
            p: self.p / g,
            q: self.q / g,
        }
    }

    pub fn number(&self) -> Rational {
        Rational::new(self.p as i64, self.q as i64)
    }
}

fn displacement_sign(from: usize, to: usize) -> Ordering {
    to.cmp(&from)
}

pub fn over_rotation_pair(pattern: &CyclicPattern) -> Result<OverRotationPair> {
    let q = pattern.period();
    if q < 2 {
        return Err(Error::TrivialCycle);
    }
    // sign of f(x)-x against sign of f^2(x)-f(x)
    let switches = (1..=q)
        .filter(|&j| {
            let fj = pattern.apply(j);
            displacement_sign(j, fj) != displacement_sign(fj, pattern.apply(fj))
        })
        .count() as u64;
    debug_assert!(switches.is_multiple_of(2));
    OverRotationPair::new(switches / 2, q as u64)
}

pub fn over_rotation_number(pattern: &CyclicPattern) -> Result<Rational> {
    over_rotation_pair(pattern).map(|pair| pair.number())
}

/// Position of `n` in the Sharkovsky order as a sortable key; smaller keys
/// come first (`3` has the smallest key, `1` the largest).
fn sharkovsky_key(n: u64) -> (u8, i64, u64) {
    assert!(n >= 1, "Sharkovsky order is on positive integers");
    let twos = n.trailing_zeros();
    let odd = n >> twos;
    if odd > 1 {
        (0, twos as i64, odd)
    } else {
        (1, -(twos as i64), 0)
    }
}

/// `m ⪰ n` in the Sharkovsky order (`m` precedes `n` or equals it).
pub fn sharkovsky_ge(m: u64, n: u64) -> bool {
    sharkovsky_key(m) <= sharkovsky_key(n)
}

/// Whether every interval map with a cycle of pair `a` must have a cycle of
/// pair `b`.
pub fn orp_forces(a: OverRotationPair, b: OverRotationPair) -> bool {
    let lhs = a.p as u128 * b.q as u128;
    let rhs = b.p as u128 * a.q as u128;
    match lhs.cmp(&rhs) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            let k = a.reduced().p;
            sharkovsky_ge(a.p / k, b.p / k)
        }
    }
}

/// All cyclic permutations of `{1..q}`, in lexicographic order of the cycle
/// word `1 -> c_1 -> c_2 -> ...`. There are `(q-1)!` of them.
pub fn all_cyclic_patterns(q: usize) -> Vec<CyclicPattern> {
    if q == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (2..=q).collect();
    let mut word = vec![1usize];
    fn rec(word: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<CyclicPattern>, q: usize) {
        if rest.is_empty() {
            let mut image = vec![0; q];
            for i in 0..q {
                image[word[i] - 1] = word[(i + 1) % q];
            }
            out.push(CyclicPattern { image });
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            word.push(v);
            rec(word, rest, out, q);
            word.pop();
            rest.insert(i, v);
        }
    }
    rec(&mut word, &mut rest, &mut out, q);
    out
}

/// Coprime `(p, q)` with `0 < p/q < 1/2` and `q <= max_q`, sorted by `p/q`.
pub fn coprime_fractions_below_half(max_q: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (3..=max_q)
        .flat_map(|q| (1..q).filter(move |&p| 2 * p < q && gcd(p, q) == 1).map(move |p| (p, q)))
        .collect();
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out
}

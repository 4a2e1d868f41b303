use std::collections::BTreeMap;

use serde::Serialize;

use super::{h_trunc, TruncationParams};
use crate::combinatorics::{over_rotation_number, CyclicPattern};
use crate::error::Result;
use crate::piecewise::Affine;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    /// Avoids both plateaus.
    Regular,
    /// Passes through a plateau, hence through its value.
    Plateau,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicOrbit {
    /// Dynamical order, starting at the smallest point.
    pub points: Vec<Rational>,
    #[serde(skip)]
    pub pattern: CyclicPattern,
    pub kind: OrbitKind,
}

impl PeriodicOrbit {
    fn new(mut points: Vec<Rational>, kind: OrbitKind) -> Result<Self> {
        let start = (0..points.len()).min_by(|&a, &b| points[a].cmp(&points[b])).unwrap_or(0);
        points.rotate_left(start);
        let pattern = CyclicPattern::from_orbit(&points)?;
        Ok(PeriodicOrbit { points, pattern, kind })
    }

    pub fn period(&self) -> usize {
        self.points.len()
    }

    /// `None` for fixed points.
    pub fn over_rotation_number(&self) -> Option<Rational> {
        over_rotation_number(&self.pattern).ok()
    }
}

/// The monotone pieces of `H_{α,β}` off the plateaus: `J₀ = [0, α/3)`,
/// `J₁ = (2/3-α/3, 2/3-β/3)`, `J₂ = (2/3+β/3, 1]`, as (closure, branch).
fn pieces(params: &TruncationParams) -> Vec<(Rational, Rational, Affine)> {
    let (a0, a1) = params.max_plateau();
    let (b0, b1) = params.min_plateau();
    let r = Rational::integer;
    vec![
        (Rational::zero(), a0, Affine::new(r(3), r(0))),
        (a1, b0, Affine::new(r(-3), r(2))),
        (b1, Rational::one(), Affine::new(r(3), r(-2))),
    ]
}

fn in_piece(params: &TruncationParams, k: usize, x: &Rational) -> bool {
    let (a0, a1) = params.max_plateau();
    let (b0, b1) = params.min_plateau();
    match k {
        0 => !x.is_negative() && x < &a0,
        1 => &a1 < x && x < &b0,
        _ => &b1 < x && x <= &Rational::one(),
    }
}

fn is_lyndon(word: &[usize]) -> bool {
    (1..word.len()).all(|s| word < &[&word[s..], &word[..s]].concat()[..])
}

/// All periodic orbits of `H_{α,β}` with period at most `cap`, sorted by
/// period and then by points.
///
/// Orbits off the plateaus are found by growing symbol words over the three
/// monotone pieces, keeping only words whose cylinder is nonempty, and
/// solving the affine return map of each aperiodic (Lyndon) word. Orbits
/// through a plateau are the orbits of `α` and `β` that come back.
pub fn enumerate_cycles_trunc(params: &TruncationParams, cap: usize) -> Result<Vec<PeriodicOrbit>> {
    let pieces = pieces(params);
    let mut found: BTreeMap<(usize, Vec<Rational>), PeriodicOrbit> = BTreeMap::new();
    let mut word = Vec::new();
    for k in 0..3 {
        let (lo, hi, _) = pieces[k].clone();
        if lo > hi {
            continue;
        }
        word.push(k);
        grow(params, &pieces, cap, &mut word, Affine::identity(), lo, hi, &mut found)?;
        word.pop();
    }
    for start in [params.alpha(), params.beta()] {
        let mut orbit = vec![start.clone()];
        let mut y = h_trunc(params, start)?;
        while &y != start && orbit.len() < cap {
            orbit.push(y.clone());
            y = h_trunc(params, &y)?;
        }
        if &y == start {
            let o = PeriodicOrbit::new(orbit, OrbitKind::Plateau)?;
            let mut key = o.points.clone();
            key.sort();
            found.entry((o.period(), key)).or_insert(o);
        }
    }
    Ok(found.into_values().collect())
}

/// `branch` is `f^{len-1}` restricted to the cylinder `[lo, hi]` of `word`;
/// it carries the cylinder into the last piece of the word.
#[allow(clippy::too_many_arguments)]
fn grow(
    params: &TruncationParams,
    pieces: &[(Rational, Rational, Affine)],
    cap: usize,
    word: &mut Vec<usize>,
    branch: Affine,
    lo: Rational,
    hi: Rational,
    found: &mut BTreeMap<(usize, Vec<Rational>), PeriodicOrbit>,
) -> Result<()> {
    let last = *word.last().unwrap();
    let full = pieces[last].2.after(&branch);
    if is_lyndon(word) {
        if let Some(x) = full.fixed_point() {
            if lo <= x && x <= hi {
                record(params, word, x, found)?;
            }
        }
    }
    if word.len() == cap {
        return Ok(());
    }
    for k in 0..3 {
        let (plo, phi, _) = &pieces[k];
        if plo > phi {
            continue;
        }
        let (a, b) = (full.solve(plo).unwrap(), full.solve(phi).unwrap());
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let (clo, chi) = (Rational::max_of(&lo, &a), Rational::min_of(&hi, &b));
        if clo > chi {
            continue;
        }
        word.push(k);
        grow(params, pieces, cap, word, full.clone(), clo, chi, found)?;
        word.pop();
    }
    Ok(())
}

fn record(
    params: &TruncationParams,
    word: &[usize],
    x: Rational,
    found: &mut BTreeMap<(usize, Vec<Rational>), PeriodicOrbit>,
) -> Result<()> {
    let mut orbit = Vec::with_capacity(word.len());
    let mut y = x.clone();
    for &k in word {
        if !in_piece(params, k, &y) {
            return Ok(());
        }
        orbit.push(y.clone());
        y = h_trunc(params, &y)?;
    }
    if y != x {
        return Ok(());
    }
    let o = PeriodicOrbit::new(orbit, OrbitKind::Regular)?;
    let mut key = o.points.clone();
    key.sort();
    found.entry((o.period(), key)).or_insert(o);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horseshoe::realize_cycle_in_h2;
    use crate::overtwist::{overtwist_permutation, OvertwistSpec};
    use crate::rational::q;

    fn tp(a: Rational, b: Rational) -> TruncationParams {
        TruncationParams::new(a, b).unwrap()
    }

    #[test]
    fn full_horseshoe_contains_one_third_orbits() {
        let orbits = enumerate_cycles_trunc(&tp(q(1, 1), q(0, 1)), 3).unwrap();
        for r in 0..=1 {
            let pat = overtwist_permutation(&OvertwistSpec::new(1, 3, r).unwrap());
            let mut xs = realize_cycle_in_h2(&pat).unwrap();
            xs.sort();
            assert!(orbits.iter().any(|o| {
                let mut s = o.points.clone();
                s.sort();
                s == xs
            }));
        }
        // 3 fixed points, 3 two-cycles, 8 three-cycles of the full 3-shift
        let count = |n| orbits.iter().filter(|o| o.period() == n).count();
        assert_eq!((count(1), count(2), count(3)), (3, 3, 8));
    }

    #[test]
    fn base_corner_has_only_fixed_points() {
        let orbits = enumerate_cycles_trunc(&tp(q(1, 2), q(1, 2)), 8).unwrap();
        assert!(orbits.iter().all(|o| o.period() == 1));
    }

    #[test]
    fn plateau_orbit_on_the_staircase_corner() {
        let orbits = enumerate_cycles_trunc(&tp(q(11, 13), q(5, 13)), 3).unwrap();
        let o = orbits.iter().find(|o| o.kind == OrbitKind::Plateau).unwrap();
        assert_eq!(o.points, vec![q(5, 13), q(11, 13), q(7, 13)]);
        assert_eq!(o.over_rotation_number(), Some(q(1, 3)));
    }

    #[test]
    fn orbits_verify_pointwise() {
        let p = tp(q(9, 10), q(1, 7));
        for o in enumerate_cycles_trunc(&p, 7).unwrap() {
            let n = o.period();
            for i in 0..n {
                assert_eq!(h_trunc(&p, &o.points[i]).unwrap(), o.points[(i + 1) % n]);
            }
        }
    }

    #[test]
    fn lyndon_words() {
        assert!(is_lyndon(&[0, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(is_lyndon(&[2]));
    }
}

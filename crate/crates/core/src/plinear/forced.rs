use std::collections::{BTreeSet, VecDeque};

use num_traits::ToPrimitive;

use super::{build_plinear, markov_graph, pattern_points, MarkovGraph};
use crate::combinatorics::CyclicPattern;
use crate::error::Result;
use crate::piecewise::{Affine, PiecewiseMap};
use crate::rational::Rational;

/// Patterns of all cycles of the P-linear map of `pattern` with period at
/// most `cap`, sorted by period and then by image.
///
/// Every periodic orbit follows a closed walk in the covering graph. The
/// graph is Markov, so the composed branch of a closed walk maps its
/// cylinder onto the first vertex and has a fixed point there. Walks are
/// enumerated once per rotation class, as necklaces over the vertex labels.
pub fn forced_cycles(pattern: &CyclicPattern, cap: usize) -> Result<Vec<CyclicPattern>> {
    let mut found = BTreeSet::new();
    if cap >= 1 {
        found.insert(CyclicPattern::fixed_point());
    }
    if pattern.period() == 1 {
        return Ok(found.into_iter().collect());
    }
    if pattern.period() <= cap {
        found.insert(pattern.clone());
    }
    let map = build_plinear(pattern)?;
    let graph = markov_graph(&map, &pattern_points(pattern)?)?;
    let mut search = Search::new(pattern, &map, &graph, cap, &mut found);
    for start in 0..graph.vertex_count() {
        search.from(start)?;
    }
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort_by(|a, b| (a.period(), a.image()).cmp(&(b.period(), b.image())));
    Ok(out)
}

/// `u -> s u + c` in the scaled coordinate `u = (q-1) x`, where every
/// P-linear branch has integer coefficients.
type IntAffine = (i128, i128);

fn int_after(outer: IntAffine, inner: Option<IntAffine>) -> Option<IntAffine> {
    let (s, c) = inner?;
    Some((outer.0.checked_mul(s)?, outer.0.checked_mul(c)?.checked_add(outer.1)?))
}

fn to_i128(r: &Rational) -> Option<(i128, i128)> {
    Some((r.numer().to_i128()?, r.denom().to_i128()?))
}

struct Search<'a> {
    map: &'a PiecewiseMap,
    graph: &'a MarkovGraph,
    cap: usize,
    found: &'a mut BTreeSet<CyclicPattern>,
    scale: i128,
    /// Branch of each basic piece `[j, j+1]` in scaled coordinates.
    pieces: Vec<IntAffine>,
    /// Branch of each vertex in scaled coordinates.
    branch: Vec<IntAffine>,
}

impl<'a> Search<'a> {
    fn new(
        pattern: &CyclicPattern,
        map: &'a PiecewiseMap,
        graph: &'a MarkovGraph,
        cap: usize,
        found: &'a mut BTreeSet<CyclicPattern>,
    ) -> Self {
        let m = pattern.period() as i128 - 1;
        let img = |j: usize| pattern.apply(j) as i128;
        let pieces = (1..pattern.period())
            .map(|j| {
                let s = img(j + 1) - img(j);
                (s, img(j) - 1 - s * (j as i128 - 1))
            })
            .collect();
        let branch = graph
            .vertices()
            .iter()
            .map(|v| {
                let (s, _) = to_i128(&v.branch.slope).expect("integer slope");
                let (n, d) = to_i128(&(&v.branch.intercept * Rational::integer(m as i64))).expect("small intercept");
                debug_assert_eq!(d, 1);
                (s, n)
            })
            .collect();
        Search { map, graph, cap, found, scale: m, pieces, branch }
    }

    /// Edges from each vertex back to `start` through vertices `>= start`;
    /// for `start` itself, the length of the shortest loop.
    fn return_distance(&self, start: usize) -> Vec<usize> {
        let n = self.graph.vertex_count();
        let mut rev = vec![Vec::new(); n];
        for v in start..n {
            for e in self.graph.edges(v) {
                if e.to >= start {
                    rev[e.to].push(v);
                }
            }
        }
        let mut d = vec![usize::MAX; n];
        d[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &rev[v] {
                if d[u] == usize::MAX {
                    d[u] = d[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        d[start] = self
            .graph
            .edges(start)
            .iter()
            .filter(|e| e.to >= start && d[e.to] != usize::MAX)
            .map(|e| d[e.to] + 1)
            .min()
            .unwrap_or(usize::MAX);
        d
    }

    fn from(&mut self, start: usize) -> Result<()> {
        let dist = self.return_distance(start);
        if dist[start] > self.cap {
            return Ok(());
        }
        let mut word = vec![start];
        let mut comp = vec![Some(self.branch[start])];
        self.extend(start, &dist, &mut word, &mut comp, 1)
    }

    /// Depth-first over prenecklaces: `period` is the length of the longest
    /// prefix that is a Lyndon word, and the word closes into a necklace
    /// when its length is a multiple of it.
    fn extend(
        &mut self,
        start: usize,
        dist: &[usize],
        word: &mut Vec<usize>,
        comp: &mut Vec<Option<IntAffine>>,
        period: usize,
    ) -> Result<()> {
        let len = word.len();
        let last = word[len - 1];
        let edges = self.graph.edges(last);
        if len.is_multiple_of(period) && edges.iter().any(|e| e.to == start) {
            self.close(word, comp[len - 1])?;
        }
        for e in edges {
            let to = e.to;
            if to < start || dist[to] == usize::MAX || len + dist[to] > self.cap {
                continue;
            }
            let prev = word[len - period];
            let next_period = match to.cmp(&prev) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => period,
                std::cmp::Ordering::Greater => len + 1,
            };
            let c = int_after(self.branch[to], comp[len - 1]);
            word.push(to);
            comp.push(c);
            self.extend(start, dist, word, comp, next_period)?;
            word.pop();
            comp.pop();
        }
        Ok(())
    }

    fn close(&mut self, word: &[usize], comp: Option<IntAffine>) -> Result<()> {
        let v = &self.graph.vertices()[word[0]];
        // a point of the cylinder, as num / den in scaled coordinates
        let point = match comp {
            Some((1, _)) => self.identity_point(word),
            Some((s, c)) => {
                let (n, d) = (c, 1 - s);
                Some(if d < 0 { (-n, -d) } else { (n, d) })
            }
            None => None,
        };
        if let Some((n, d)) = point {
            if let Some(orbit) = self.int_orbit(n, d) {
                if let Some(orbit) = orbit {
                    self.found.insert(CyclicPattern::from_orbit(&orbit)?);
                }
                return Ok(());
            }
        }
        let g = word
            .iter()
            .fold(Affine::identity(), |acc, &w| self.graph.vertices()[w].branch.after(&acc));
        let x = match g.fixed_point() {
            Some(x) => x,
            None if g.intercept.is_zero() => &v.lo + (&v.hi - &v.lo) / 3,
            None => return Ok(()),
        };
        let mut orbit = vec![x.clone()];
        let mut y = self.map.eval(&x)?;
        while y != x {
            if orbit.len() >= self.cap {
                return Ok(());
            }
            orbit.push(y.clone());
            y = self.map.eval(&y)?;
        }
        self.found.insert(CyclicPattern::from_orbit(&orbit)?);
        Ok(())
    }

    /// The composed branch is the identity on the whole first vertex. A
    /// third of the way in avoids the centre, which a reversing half of
    /// the walk would fix.
    fn identity_point(&self, word: &[usize]) -> Option<(i128, i128)> {
        let v = &self.graph.vertices()[word[0]];
        let m = Rational::integer(self.scale as i64);
        let lo = &v.lo * &m;
        to_i128(&((&lo + &lo + &v.hi * &m) / 3))
    }

    /// `Some(None)` when the orbit is longer than the cap, `None` on overflow.
    fn int_orbit(&self, n0: i128, d: i128) -> Option<Option<Vec<i128>>> {
        let last = self.pieces.len() as i128 - 1;
        let mut orbit = vec![n0];
        let mut n = n0;
        loop {
            let j = n.div_euclid(d).clamp(0, last) as usize;
            let (s, c) = self.pieces[j];
            n = s.checked_mul(n)?.checked_add(c.checked_mul(d)?)?;
            if n == n0 {
                return Some(Some(orbit));
            }
            if orbit.len() >= self.cap {
                return Some(None);
            }
            orbit.push(n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::over_rotation_pair;
    use crate::overtwist::{overtwist_permutation, OvertwistSpec};

    fn gamma(p: usize, q: usize, r: usize) -> CyclicPattern {
        overtwist_permutation(&OvertwistSpec::new(p, q, r).unwrap())
    }

    #[test]
    fn two_cycle_forces_only_itself() {
        let two = CyclicPattern::new(vec![2, 1]).unwrap();
        let got = forced_cycles(&two, 3).unwrap();
        assert_eq!(got, vec![CyclicPattern::fixed_point(), two]);
    }

    #[test]
    fn one_third_forces_the_two_cycle() {
        let got = forced_cycles(&gamma(1, 3, 1), 2).unwrap();
        assert!(got.contains(&CyclicPattern::new(vec![2, 1]).unwrap()));
    }

    #[test]
    fn overtwist_forces_no_sibling() {
        for r in 0..=1 {
            let g = gamma(1, 3, r);
            let same: Vec<_> = forced_cycles(&g, 3)
                .unwrap()
                .into_iter()
                .filter(|p| p.period() == 3 && over_rotation_pair(p).unwrap().p == 1)
                .collect();
            assert_eq!(same, vec![g]);
        }
    }

    #[test]
    fn every_forced_orbit_is_a_true_orbit_pattern() {
        let g = gamma(2, 7, 1);
        for p in forced_cycles(&g, 8).unwrap() {
            assert!(p.period() <= 8);
            assert!(CyclicPattern::new(p.image().to_vec()).is_ok());
        }
    }
}

//! P-linear maps of cyclic patterns, their covering graphs, the left
//! endpoint of the over-rotation interval, and bounded enumeration of
//! forced patterns.

mod forced;
mod karp;
mod markov;

pub use forced::forced_cycles;
pub use karp::min_mean_cycle;
pub use markov::{markov_graph, Drift, Edge, MarkovGraph, Vertex};

use crate::combinatorics::{over_rotation_number, over_rotation_pair, CyclicPattern};
use crate::error::{Error, Result};
use crate::piecewise::PiecewiseMap;
use crate::rational::Rational;

/// Spatial positions `x_j = (j-1)/(q-1)` of the pattern's points in `[0,1]`.
pub fn pattern_points(pattern: &CyclicPattern) -> Result<Vec<Rational>> {
    let q = pattern.period();
    if q < 2 {
        return Err(Error::TrivialCycle);
    }
    let d = (q - 1) as i64;
    Ok((0..q as i64).map(|j| Rational::new(j, d)).collect())
}

/// The map that is affine between consecutive points of the pattern,
/// normalised to `[0,1]`.
pub fn build_plinear(pattern: &CyclicPattern) -> Result<PiecewiseMap> {
    let xs = pattern_points(pattern)?;
    let vertices: Vec<_> = (1..=pattern.period())
        .map(|j| (xs[j - 1].clone(), xs[pattern.apply(j) - 1].clone()))
        .collect();
    PiecewiseMap::from_points(&vertices)
}

/// Covering graph of the P-linear map of `pattern`.
pub fn pattern_graph(pattern: &CyclicPattern) -> Result<MarkovGraph> {
    let map = build_plinear(pattern)?;
    markov_graph(&map, &pattern_points(pattern)?)
}

/// Minimum mean edge weight over the cycles of the graph, i.e. the least
/// over-rotation number among loops.
pub fn min_over_rotation(graph: &MarkovGraph) -> Result<Rational> {
    min_mean_cycle(&graph.weighted_adjacency()).ok_or(Error::NoCycle)
}

/// `[r, 1/2]`, the over-rotation interval of the pattern.
pub fn rotation_interval_of_pattern(pattern: &CyclicPattern) -> Result<(Rational, Rational)> {
    let left = min_over_rotation(&pattern_graph(pattern)?)?;
    Ok((left, Rational::half()))
}

pub fn is_overtwist(pattern: &CyclicPattern) -> Result<bool> {
    let pair = over_rotation_pair(pattern)?;
    if !pair.is_coprime() {
        return Ok(false);
    }
    let (left, _) = rotation_interval_of_pattern(pattern)?;
    Ok(left == over_rotation_number(pattern)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overtwist::{overtwist_permutation, OvertwistSpec};
    use crate::rational::q;

    fn pat(image: &[usize]) -> CyclicPattern {
        CyclicPattern::new(image.to_vec()).unwrap()
    }

    #[test]
    fn two_cycle_graph() {
        let g = pattern_graph(&pat(&[2, 1])).unwrap();
        assert_eq!(g.vertex_count(), 2);
        // f(x) = 1 - x: each half covers exactly the other
        assert_eq!(g.edge_count(), 2);
        assert_eq!(min_over_rotation(&g).unwrap(), q(1, 2));
        assert!(is_overtwist(&pat(&[2, 1])).unwrap());
    }

    #[test]
    fn laps_of_plinear_maps() {
        let g1 = overtwist_permutation(&OvertwistSpec::new(1, 3, 1).unwrap());
        let laps = build_plinear(&g1).unwrap().laps();
        assert_eq!(laps.len(), 2);
        let g = overtwist_permutation(&OvertwistSpec::new(3, 11, 3).unwrap());
        assert_eq!(build_plinear(&g).unwrap().laps().len(), 3);
    }

    #[test]
    fn basic_interval_count() {
        let g = overtwist_permutation(&OvertwistSpec::new(3, 11, 3).unwrap());
        let map = build_plinear(&g).unwrap();
        let graph = pattern_graph(&g).unwrap();
        // one extra vertex per interior fixed point strictly inside a basic interval
        let pts = pattern_points(&g).unwrap();
        let interior = map
            .fixed_points()
            .into_iter()
            .filter(|x| pts.binary_search(x).is_err())
            .count();
        assert_eq!(graph.vertex_count(), 10 + interior);
        for v in 0..graph.vertex_count() {
            assert!(!graph.edges(v).is_empty());
        }
    }

    #[test]
    fn non_overtwist_four_cycle() {
        let p = pat(&[3, 1, 4, 2]);
        let (left, right) = rotation_interval_of_pattern(&p).unwrap();
        assert_eq!(over_rotation_number(&p).unwrap(), q(1, 4));
        assert_eq!(left, q(0, 1));
        assert_eq!(right, q(1, 2));
        assert!(!is_overtwist(&p).unwrap());
        // pair (2,4): interval [1/2, 1/2], rejected for the non-coprime pair
        let p = pat(&[3, 4, 2, 1]);
        assert_eq!(rotation_interval_of_pattern(&p).unwrap().0, q(1, 2));
        assert!(!is_overtwist(&p).unwrap());
    }

    #[test]
    fn non_coprime_pair_is_not_overtwist() {
        let six = crate::combinatorics::all_cyclic_patterns(6)
            .into_iter()
            .find(|p| over_rotation_pair(p).unwrap().p == 2)
            .unwrap();
        assert!(!is_overtwist(&six).unwrap());
    }

    #[test]
    fn trivial_pattern_rejected() {
        assert_eq!(build_plinear(&CyclicPattern::fixed_point()), Err(Error::TrivialCycle));
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::piecewise::{Affine, PiecewiseMap};
use crate::rational::Rational;

/// Which side of the diagonal a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Drift {
    /// `f(x) > x`: the point moves right.
    Right,
    /// `f(x) < x`: the point moves left.
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub lo: Rational,
    pub hi: Rational,
    pub drift: Drift,
    #[serde(skip)]
    pub branch: Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub to: usize,
    /// 1 when a left-drifting vertex covers a right-drifting one.
    pub weight: u8,
}

/// Covering graph on P-basic intervals, each split at the fixed points it
/// contains so every vertex has a constant drift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkovGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Vec<Edge>>,
}

impl MarkovGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self, v: usize) -> &[Edge] {
        &self.edges[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn weighted_adjacency(&self) -> Vec<Vec<(usize, i64)>> {
        self.edges
            .iter()
            .map(|es| es.iter().map(|e| (e.to, e.weight as i64)).collect())
            .collect()
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn relabelled(&self, perm: &[usize]) -> MarkovGraph {
        let n = self.vertices.len();
        let mut vertices = vec![None; n];
        let mut edges = vec![Vec::new(); n];
        for v in 0..n {
            vertices[perm[v]] = Some(self.vertices[v].clone());
            edges[perm[v]] = self.edges[v]
                .iter()
                .map(|e| Edge { to: perm[e.to], weight: e.weight })
                .collect();
        }
        MarkovGraph {
            vertices: vertices.into_iter().map(Option::unwrap).collect(),
            edges,
        }
    }
}

/// Build the covering graph of `map` on the basic intervals cut out by the
/// invariant set `points` (sorted or not).
pub fn markov_graph(map: &PiecewiseMap, points: &[Rational]) -> Result<MarkovGraph> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 2 {
        return Err(Error::InvalidPattern("need at least two points".into()));
    }
    for x in &pts {
        let y = map.eval(x)?;
        if pts.binary_search(&y).is_err() {
            return Err(Error::InvalidPattern(format!("point set not invariant: {x} -> {y}")));
        }
    }
    let fixed = map.fixed_points();
    let mut vertices = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mut cuts = vec![a.clone()];
        cuts.extend(fixed.iter().filter(|x| *x > a && *x < b).cloned());
        cuts.push(b.clone());
        for c in cuts.windows(2) {
            let (lo, hi) = (c[0].clone(), c[1].clone());
            let mid = (&lo + &hi) / 2;
            let branch = {
                let i = map.piece_index(&mid)?;
                map.pieces()[i].clone()
            };
            let drift = match (branch.eval(&mid) - &mid).signum() {
                1 => Drift::Right,
                -1 => Drift::Left,
                _ => {
                    return Err(Error::InvalidMap(format!(
                        "interval [{lo}, {hi}] is pointwise fixed"
                    )))
                }
            };
            vertices.push(Vertex { lo, hi, drift, branch });
        }
    }
    let edges = vertices
        .iter()
        .map(|from| {
            let (ya, yb) = (from.branch.eval(&from.lo), from.branch.eval(&from.hi));
            let (lo, hi) = if ya <= yb { (ya, yb) } else { (yb, ya) };
            vertices
                .iter()
                .enumerate()
                .filter(|(_, to)| lo <= to.lo && to.hi <= hi)
                .map(|(j, to)| Edge {
                    to: j,
                    weight: u8::from(from.drift == Drift::Left && to.drift == Drift::Right),
                })
                .collect()
        })
        .collect();
    Ok(MarkovGraph { vertices, edges })
}

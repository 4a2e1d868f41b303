//! Continuous piecewise-affine self-maps of `[0,1]` with rational data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Affine { slope, intercept }
    }

    pub fn through(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational) -> Self {
        let slope = (y1 - y0) / (x1 - x0);
        let intercept = y0 - &slope * x0;
        Affine { slope, intercept }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Affine) -> Affine {
        Affine {
            slope: &self.slope * &inner.slope,
            intercept: &self.slope * &inner.intercept + &self.intercept,
        }
    }

    /// Unique fixed point, if the slope differs from one.
    pub fn fixed_point(&self) -> Option<Rational> {
        let one = Rational::one();
        if self.slope == one {
            None
        } else {
            Some(&self.intercept / (one - &self.slope))
        }
    }

    /// Preimage of `y`; `None` for flat pieces.
    pub fn solve(&self, y: &Rational) -> Option<Rational> {
        if self.slope.is_zero() {
            None
        } else {
            Some((y - &self.intercept) / &self.slope)
        }
    }

    pub fn identity() -> Affine {
        Affine {
            slope: Rational::one(),
            intercept: Rational::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
}

impl Direction {
    fn of(slope: &Rational) -> Direction {
        match slope.signum() {
            1 => Direction::Increasing,
            -1 => Direction::Decreasing,
            _ => Direction::Constant,
        }
    }
}

/// A maximal run of pieces with the same direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lap {
    pub start: Rational,
    pub end: Rational,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseMap {
    breakpoints: Vec<Rational>,
    pieces: Vec<Affine>,
}

impl PiecewiseMap {
    /// Build from graph vertices `(x_i, y_i)` with `x_0 = 0 < ... < x_k = 1`.
    pub fn from_points(points: &[(Rational, Rational)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("need at least two vertices".into()));
        }
        let breakpoints: Vec<Rational> = points.iter().map(|(x, _)| x.clone()).collect();
        let pieces = points
            .windows(2)
            .map(|w| {
                if w[0].0 >= w[1].0 {
                    Err(Error::InvalidMap("breakpoints must increase strictly".into()))
                } else {
                    Ok(Affine::through(&w[0].0, &w[0].1, &w[1].0, &w[1].1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewiseMap::new(breakpoints, pieces)
    }

    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Affine>) -> Result<Self> {
        if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::InvalidMap("need k+1 breakpoints for k pieces".into()));
        }
        if breakpoints[0] != Rational::zero() || *breakpoints.last().unwrap() != Rational::one() {
            return Err(Error::InvalidMap("domain must be [0,1]".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMap("breakpoints must increase strictly".into()));
        }
        for i in 1..pieces.len() {
            let x = &breakpoints[i];
            if pieces[i - 1].eval(x) != pieces[i].eval(x) {
                return Err(Error::InvalidMap(format!("discontinuous at {x}")));
            }
        }
        for (i, piece) in pieces.iter().enumerate() {
            for x in [&breakpoints[i], &breakpoints[i + 1]] {
                let y = piece.eval(x);
                if y.is_negative() || y > Rational::one() {
                    return Err(Error::InvalidMap(format!("value {y} at {x} leaves [0,1]")));
                }
            }
        }
        Ok(PiecewiseMap { breakpoints, pieces })
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }

    /// Index of the piece whose closed interval contains `x` (leftmost on ties).
    pub fn piece_index(&self, x: &Rational) -> Result<usize> {
        if x.is_negative() || *x > Rational::one() {
            return Err(Error::OutsideDomain(x.to_string()));
        }
        let idx = self.breakpoints[1..].partition_point(|b| b < x);
        Ok(idx.min(self.pieces.len() - 1))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let i = self.piece_index(x)?;
        Ok(self.pieces[i].eval(x))
    }

    pub fn laps(&self) -> Vec<Lap> {
        let mut laps: Vec<Lap> = Vec::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            let dir = Direction::of(&piece.slope);
            match laps.last_mut() {
                Some(lap) if lap.direction == dir => lap.end = self.breakpoints[i + 1].clone(),
                _ => laps.push(Lap {
                    start: self.breakpoints[i].clone(),
                    end: self.breakpoints[i + 1].clone(),
                    direction: dir,
                }),
            }
        }
        laps
    }

    /// Points where a strictly monotone lap meets one of the opposite
    /// direction. `None` if the map has flat pieces.
    pub fn turning_points(&self) -> Option<Vec<Rational>> {
        let laps = self.laps();
        if laps.iter().any(|l| l.direction == Direction::Constant) {
            return None;
        }
        Some(laps[1..].iter().map(|l| l.start.clone()).collect())
    }

    /// Image of the closed interval `[lo, hi]`.
    pub fn image_of(&self, lo: &Rational, hi: &Rational) -> Result<(Rational, Rational)> {
        let mut candidates = vec![self.eval(lo)?, self.eval(hi)?];
        for b in &self.breakpoints {
            if b > lo && b < hi {
                candidates.push(self.eval(b)?);
            }
        }
        let min = candidates.iter().min().cloned().unwrap();
        let max = candidates.iter().max().cloned().unwrap();
        Ok((min, max))
    }

    pub fn fixed_points(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            let (a, b) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
            if let Some(x) = piece.fixed_point() {
                if &x >= a && &x <= b && out.last() != Some(&x) {
                    out.push(x);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn tent() -> PiecewiseMap {
        PiecewiseMap::from_points(&[(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 1), q(0, 1))]).unwrap()
    }

    #[test]
    fn evaluation_and_laps() {
        let t = tent();
        assert_eq!(t.eval(&q(1, 4)).unwrap(), q(1, 2));
        assert_eq!(t.eval(&q(3, 4)).unwrap(), q(1, 2));
        assert!(t.eval(&q(5, 4)).is_err());
        assert_eq!(t.laps().len(), 2);
        assert_eq!(t.turning_points().unwrap(), vec![q(1, 2)]);
        assert_eq!(t.fixed_points(), vec![q(0, 1), q(2, 3)]);
        assert_eq!(t.image_of(&q(1, 4), &q(3, 4)).unwrap(), (q(1, 2), q(1, 1)));
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(PiecewiseMap::from_points(&[(q(0, 1), q(0, 1)), (q(1, 1), q(2, 1))]).is_err());
        assert!(PiecewiseMap::from_points(&[(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1))]).is_err());
        let pieces = vec![Affine::new(q(1, 1), q(0, 1)), Affine::new(q(0, 1), q(0, 1))];
        assert!(PiecewiseMap::new(vec![q(0, 1), q(1, 2), q(1, 1)], pieces).is_err());
    }

    #[test]
    fn affine_algebra() {
        let f = Affine::new(q(-3, 1), q(2, 1));
        assert_eq!(f.fixed_point(), Some(q(1, 2)));
        assert_eq!(f.after(&f).eval(&q(1, 5)), f.eval(&f.eval(&q(1, 5))));
        assert_eq!(f.solve(&q(1, 1)), Some(q(1, 3)));
        assert_eq!(Affine::new(q(0, 1), q(1, 2)).solve(&q(1, 2)), None);
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::piecewise::{Direction, PiecewiseMap};
use crate::rational::Rational;

/// Location of a point relative to the two critical regions of a bimodal
/// map, ordered `I₀ < C₁ < I₁ < C₂ < I₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    I0,
    C1,
    I1,
    C2,
    I2,
}

impl Symbol {
    /// `Θ`: `+1` on increasing laps, `-1` on the decreasing lap, `0` at
    /// critical points.
    pub fn theta(self) -> i32 {
        match self {
            Symbol::I0 | Symbol::I2 => 1,
            Symbol::I1 => -1,
            Symbol::C1 | Symbol::C2 => 0,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Symbol::I0 => "I0",
            Symbol::C1 => "C1",
            Symbol::I1 => "I1",
            Symbol::C2 => "C2",
            Symbol::I2 => "I2",
        };
        f.write_str(s)
    }
}

/// A finite prefix followed by an optional repeating tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Itinerary {
    pub prefix: Vec<Symbol>,
    pub tail: Vec<Symbol>,
}

impl Itinerary {
    pub fn finite(symbols: Vec<Symbol>) -> Self {
        Itinerary { prefix: symbols, tail: Vec::new() }
    }

    pub fn eventually_periodic(prefix: Vec<Symbol>, tail: Vec<Symbol>) -> Self {
        Itinerary { prefix, tail }
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_empty()
    }

    /// Length of the sequence, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.tail.is_empty() {
            None
        } else {
            Some(self.tail[(i - self.prefix.len()) % self.tail.len()])
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneadingVector {
    pub k1: Itinerary,
    pub k2: Itinerary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Stronger,
    Weaker,
    Equal,
    Undefined,
}

/// The two critical regions `[c1_lo, c1_hi]`, `[c2_lo, c2_hi]` of a map whose
/// monotone laps read increasing, decreasing, increasing once flat laps are
/// set aside. A turning point gives a degenerate region.
fn critical_regions(map: &PiecewiseMap) -> Result<[(Rational, Rational); 2]> {
    let mut regions = Vec::new();
    let mut monotone = Vec::new();
    let mut after_flat = false;
    for lap in map.laps() {
        if lap.direction == Direction::Constant {
            regions.push((lap.start, lap.end));
            after_flat = true;
            continue;
        }
        if !after_flat && monotone.last().is_some_and(|d| *d != lap.direction) {
            regions.push((lap.start.clone(), lap.start.clone()));
        }
        monotone.push(lap.direction);
        after_flat = false;
    }
    let shape_ok = monotone
        == [Direction::Increasing, Direction::Decreasing, Direction::Increasing]
        && regions.len() == 2;
    if !shape_ok {
        return Err(Error::InvalidMap("itineraries need a bimodal map (+, -, +)".into()));
    }
    Ok([regions[0].clone(), regions[1].clone()])
}

fn locate(x: &Rational, c: &[(Rational, Rational); 2]) -> Symbol {
    if x < &c[0].0 {
        Symbol::I0
    } else if x <= &c[0].1 {
        Symbol::C1
    } else if x < &c[1].0 {
        Symbol::I1
    } else if x <= &c[1].1 {
        Symbol::C2
    } else {
        Symbol::I2
    }
}

/// First `n` symbols of the itinerary of `x`.
pub fn itinerary(map: &PiecewiseMap, x: &Rational, n: usize) -> Result<Itinerary> {
    let c = critical_regions(map)?;
    let mut y = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(locate(&y, &c));
        y = map.eval(&y)?;
    }
    Ok(Itinerary::finite(out))
}

/// Itineraries of the two critical values. For a flat region, the value on
/// the plateau is used.
pub fn kneading_vector(map: &PiecewiseMap, n: usize) -> Result<KneadingVector> {
    let c = critical_regions(map)?;
    let k1 = itinerary(map, &map.eval(&c[0].0)?, n)?;
    let k2 = itinerary(map, &map.eval(&c[1].0)?, n)?;
    Ok(KneadingVector { k1, k2 })
}

fn lcm(a: usize, b: usize) -> usize {
    a / num_integer::gcd(a, b) * b
}

/// Sign-weighted lexicographic comparison: at the first discrepancy `κ`,
/// the order of the symbols is kept when the product of `Θ` over the
/// preceding symbols is `+1`, reversed when it is `-1`, and undefined when
/// it is `0`.
pub fn compare_itineraries(a: &Itinerary, b: &Itinerary) -> Result<Comparison> {
    let length = match (a.len(), b.len()) {
        (Some(la), Some(lb)) => la.min(lb),
        (Some(l), None) | (None, Some(l)) => l,
        (None, None) => a.prefix.len().max(b.prefix.len()) + lcm(a.tail.len(), b.tail.len()),
    };
    let mut theta = 1;
    for i in 0..length {
        let (x, y) = (a.get(i).unwrap(), b.get(i).unwrap());
        if x != y {
            return Ok(match theta {
                0 => Comparison::Undefined,
                t if (t > 0) == (x > y) => Comparison::Stronger,
                _ => Comparison::Weaker,
            });
        }
        theta *= x.theta();
    }
    if a.len() != b.len() {
        return Err(Error::InsufficientLength);
    }
    Ok(Comparison::Equal)
}

#[cfg(test)]
mod tests {
    use super::Symbol::*;
    use super::*;
    use crate::horseshoe::{truncated_map, TruncationParams};
    use crate::rational::q;

    fn h2map() -> PiecewiseMap {
        truncated_map(&TruncationParams::new(q(1, 1), q(0, 1)).unwrap())
    }

    #[test]
    fn itineraries_of_extremal_images() {
        let h = h2map();
        assert_eq!(itinerary(&h, &q(5, 13), 2).unwrap().prefix, vec![I1, I2]);
        assert_eq!(itinerary(&h, &q(2, 13), 2).unwrap().prefix, vec![I0, I1]);
        assert_eq!(itinerary(&h, &q(1, 2), 5).unwrap().prefix, vec![I1; 5]);
        assert_eq!(itinerary(&h, &q(1, 3), 2).unwrap().prefix, vec![C1, I2]);
    }

    #[test]
    fn comparisons() {
        let a = Itinerary::finite(vec![I1, I2]);
        let b = Itinerary::finite(vec![I0, I1]);
        assert_eq!(compare_itineraries(&a, &b).unwrap(), Comparison::Stronger);
        assert_eq!(compare_itineraries(&b, &a).unwrap(), Comparison::Weaker);
        assert_eq!(compare_itineraries(&a, &a).unwrap(), Comparison::Equal);
        let c = Itinerary::finite(vec![C1, I0]);
        let d = Itinerary::finite(vec![C1, I2]);
        assert_eq!(compare_itineraries(&c, &d).unwrap(), Comparison::Undefined);
        // a decreasing first symbol reverses the order
        let e = Itinerary::finite(vec![I1, I0]);
        let f = Itinerary::finite(vec![I1, I2]);
        assert_eq!(compare_itineraries(&e, &f).unwrap(), Comparison::Stronger);
        let short = Itinerary::finite(vec![I1]);
        assert_eq!(compare_itineraries(&short, &a), Err(Error::InsufficientLength));
    }

    #[test]
    fn periodic_tails() {
        let a = Itinerary::eventually_periodic(vec![I0], vec![I1, I2]);
        let b = Itinerary::eventually_periodic(vec![I0, I1], vec![I2, I1]);
        assert_eq!(compare_itineraries(&a, &b).unwrap(), Comparison::Equal);
        let c = Itinerary::finite(vec![I0, I1, I2, I0]);
        assert_eq!(compare_itineraries(&a, &c).unwrap(), Comparison::Weaker);
    }

    #[test]
    fn kneading_of_truncation() {
        let p = TruncationParams::new(q(11, 13), q(5, 13)).unwrap();
        let k = kneading_vector(&truncated_map(&p), 3).unwrap();
        assert_eq!(k.k1.prefix, vec![I2, C2, C1]);
        assert_eq!(k.k2.prefix, vec![C1, I2, C2]);
        let k = kneading_vector(&h2map(), 3).unwrap();
        assert_eq!(k.k1.prefix, vec![I2, I2, I2]);
        assert_eq!(k.k2.prefix, vec![I0, I0, I0]);
    }
}

use serde::{Deserialize, Serialize};

use crate::combinatorics::CyclicPattern;
use crate::error::{Error, Result};
use crate::overtwist::{color_of, identify, Color};
use crate::piecewise::Affine;
use crate::rational::Rational;

/// The three laps of `H₂`: `3x` on `[0,1/3]`, `2-3x` on `[1/3,2/3]`,
/// `3x-2` on `[2/3,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum H2Lap {
    I0,
    I1,
    I2,
}

impl H2Lap {
    pub fn branch(self) -> Affine {
        let (s, c) = match self {
            H2Lap::I0 => (3, 0),
            H2Lap::I1 => (-3, 2),
            H2Lap::I2 => (3, -2),
        };
        Affine::new(Rational::integer(s), Rational::integer(c))
    }

    /// Open interior of the lap (closed at 0 and 1).
    pub fn contains(self, x: &Rational) -> bool {
        let (third, two_thirds) = (Rational::new(1, 3), Rational::new(2, 3));
        match self {
            H2Lap::I0 => !x.is_negative() && *x < third,
            H2Lap::I1 => third < *x && *x < two_thirds,
            H2Lap::I2 => two_thirds < *x && *x <= Rational::one(),
        }
    }
}

/// Lap of each spatial index of an over-twist pattern: red on `I₀`,
/// green and pink on `I₁`, blue on `I₂`.
pub fn lap_word(pattern: &CyclicPattern) -> Option<Vec<H2Lap>> {
    let spec = identify(pattern)?;
    Some(
        (1..=pattern.period())
            .map(|j| match color_of(&spec, j).expect("index in range") {
                Color::Red => H2Lap::I0,
                Color::Green | Color::Pink => H2Lap::I1,
                Color::Blue => H2Lap::I2,
            })
            .collect(),
    )
}

/// Solve for the orbit with the given pattern whose `j`-th point lies on
/// lap `laps[j-1]`, and check that the solution is consistent.
pub fn realize_with_laps(pattern: &CyclicPattern, laps: &[H2Lap]) -> Result<Vec<Rational>> {
    let q = pattern.period();
    if laps.len() != q {
        return Err(Error::ItineraryInfeasible(format!("{} laps for period {q}", laps.len())));
    }
    let mut composed = Affine::identity();
    let mut j = 1;
    for _ in 0..q {
        composed = laps[j - 1].branch().after(&composed);
        j = pattern.apply(j);
    }
    let x1 = composed
        .fixed_point()
        .ok_or_else(|| Error::ItineraryInfeasible("return map has slope one".into()))?;
    let mut xs = vec![Rational::zero(); q];
    xs[0] = x1;
    let mut j = 1;
    for _ in 0..q - 1 {
        let next = laps[j - 1].branch().eval(&xs[j - 1]);
        j = pattern.apply(j);
        xs[j - 1] = next;
    }
    for (k, x) in xs.iter().enumerate() {
        if !laps[k].contains(x) {
            return Err(Error::ItineraryInfeasible(format!("x_{} = {x} not on {:?}", k + 1, laps[k])));
        }
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ItineraryInfeasible("solution violates the spatial order".into()));
    }
    Ok(xs)
}

/// Exact points `x_1 < ... < x_q` of the orbit of `H₂` with this pattern.
///
/// Over-twist patterns use their colour classes; any other pattern takes
/// the first lap cut `(a, b)` in lexicographic order (indices `<= a` on
/// `I₀`, `<= b` on `I₁`, the rest on `I₂`) that yields a consistent orbit.
pub fn realize_cycle_in_h2(pattern: &CyclicPattern) -> Result<Vec<Rational>> {
    if let Some(laps) = lap_word(pattern) {
        return realize_with_laps(pattern, &laps);
    }
    let q = pattern.period();
    if q == 1 {
        return Ok(vec![Rational::half()]);
    }
    for a in 0..=q {
        for b in a..=q {
            let laps: Vec<H2Lap> = (1..=q)
                .map(|j| {
                    if j <= a {
                        H2Lap::I0
                    } else if j <= b {
                        H2Lap::I1
                    } else {
                        H2Lap::I2
                    }
                })
                .collect();
            if let Ok(xs) = realize_with_laps(pattern, &laps) {
                return Ok(xs);
            }
        }
    }
    Err(Error::ItineraryInfeasible("no lap assignment realises the pattern".into()))
}

/// `(H₂(M), H₂(m))`: the largest and smallest orbit points, which are the
/// images of the orbit's points of absolute maximum and minimum.
pub fn extrema_images(pattern: &CyclicPattern) -> Result<(Rational, Rational)> {
    let xs = realize_cycle_in_h2(pattern)?;
    Ok((xs[xs.len() - 1].clone(), xs[0].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horseshoe::h2;
    use crate::overtwist::{overtwist_permutation, OvertwistSpec};
    use crate::rational::q;

    fn gamma(p: usize, qq: usize, r: usize) -> CyclicPattern {
        overtwist_permutation(&OvertwistSpec::new(p, qq, r).unwrap())
    }

    #[test]
    fn one_third_orbits() {
        assert_eq!(realize_cycle_in_h2(&gamma(1, 3, 0)).unwrap(), vec![q(5, 13), q(7, 13), q(11, 13)]);
        assert_eq!(realize_cycle_in_h2(&gamma(1, 3, 1)).unwrap(), vec![q(2, 13), q(6, 13), q(8, 13)]);
        assert_eq!(extrema_images(&gamma(1, 3, 0)).unwrap(), (q(11, 13), q(5, 13)));
        assert_eq!(extrema_images(&gamma(1, 3, 1)).unwrap(), (q(8, 13), q(2, 13)));
    }

    #[test]
    fn two_cycle() {
        let two = CyclicPattern::new(vec![2, 1]).unwrap();
        assert_eq!(realize_cycle_in_h2(&two).unwrap(), vec![q(2, 5), q(4, 5)]);
    }

    #[test]
    fn orbits_are_true_orbits() {
        for spec in OvertwistSpec::family(3, 11).unwrap() {
            let pat = overtwist_permutation(&spec);
            let xs = realize_cycle_in_h2(&pat).unwrap();
            for j in 1..=11 {
                assert_eq!(h2(&xs[j - 1]).unwrap(), xs[pat.apply(j) - 1]);
            }
        }
    }

    #[test]
    fn wrong_laps_rejected() {
        let g = gamma(1, 3, 0);
        let bad = [H2Lap::I0, H2Lap::I0, H2Lap::I0];
        assert!(matches!(realize_with_laps(&g, &bad), Err(Error::ItineraryInfeasible(_))));
    }

    #[test]
    fn every_small_bimodal_pattern_is_realised() {
        use crate::piecewise::Direction::{Decreasing, Increasing};
        let shape = [Increasing, Decreasing, Increasing];
        for qq in 2..=6 {
            for pat in crate::combinatorics::all_cyclic_patterns(qq) {
                let dirs: Vec<_> = crate::plinear::build_plinear(&pat)
                    .unwrap()
                    .laps()
                    .into_iter()
                    .map(|l| l.direction)
                    .collect();
                let fits = shape.windows(dirs.len()).any(|w| w == dirs.as_slice());
                if !fits {
                    assert!(realize_cycle_in_h2(&pat).is_err());
                    continue;
                }
                let xs = realize_cycle_in_h2(&pat).unwrap();
                for j in 1..=qq {
                    assert_eq!(h2(&xs[j - 1]).unwrap(), xs[pat.apply(j) - 1]);
                }
            }
        }
    }
}

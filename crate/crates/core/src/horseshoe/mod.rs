//! The bimodal horseshoe `H₂`, its truncations `H_{α,β}`, itineraries and
//! the left endpoint `ψ(α,β)` of the over-rotation interval.

mod cycles;
mod itinerary;
mod psi;
mod realize;

pub use cycles::{enumerate_cycles_trunc, OrbitKind, PeriodicOrbit};
pub use itinerary::{
    compare_itineraries, itinerary, kneading_vector, Comparison, Itinerary, KneadingVector, Symbol,
};
pub use psi::{
    on_leading_set, psi, psi_enumerated, survives, survivor_quadrants, Atlas, AtlasEntry, Convergence, PsiValue,
    DEFAULT_CAP,
};
pub use realize::{extrema_images, lap_word, realize_cycle_in_h2, realize_with_laps, H2Lap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::piecewise::PiecewiseMap;
use crate::rational::Rational;

fn check_unit(x: &Rational) -> Result<()> {
    if x.is_negative() || *x > Rational::one() {
        Err(Error::OutsideDomain(x.to_string()))
    } else {
        Ok(())
    }
}

pub fn h2(x: &Rational) -> Result<Rational> {
    check_unit(x)?;
    let three = Rational::integer(3);
    Ok(if *x <= Rational::new(1, 3) {
        &three * x
    } else if *x <= Rational::new(2, 3) {
        Rational::integer(2) - &three * x
    } else {
        &three * x - Rational::integer(2)
    })
}

/// A point of the parameter rectangle `1/2 <= α <= 1`, `0 <= β <= 1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationParams {
    alpha: Rational,
    beta: Rational,
}

impl TruncationParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        let half = Rational::half();
        if alpha < half || alpha > Rational::one() || beta.is_negative() || beta > half {
            return Err(Error::OutsideParameterSpace {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
            });
        }
        Ok(TruncationParams { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// `ξ^max_α = [α/3, 2/3 - α/3]`, mapped to `α`.
    pub fn max_plateau(&self) -> (Rational, Rational) {
        let a3 = &self.alpha / 3;
        (a3.clone(), Rational::new(2, 3) - a3)
    }

    /// `ξ^min_β = [2/3 - β/3, 2/3 + β/3]`, mapped to `β`.
    pub fn min_plateau(&self) -> (Rational, Rational) {
        let b3 = &self.beta / 3;
        (Rational::new(2, 3) - &b3, Rational::new(2, 3) + b3)
    }

    /// On the base: `α = 1/2` or `β = 1/2`.
    pub fn is_base(&self) -> bool {
        self.alpha == Rational::half() || self.beta == Rational::half()
    }
}

pub fn h_trunc(params: &TruncationParams, x: &Rational) -> Result<Rational> {
    check_unit(x)?;
    let (a0, a1) = params.max_plateau();
    if &a0 <= x && x <= &a1 {
        return Ok(params.alpha.clone());
    }
    let (b0, b1) = params.min_plateau();
    if &b0 <= x && x <= &b1 {
        return Ok(params.beta.clone());
    }
    h2(x)
}

/// `H_{α,β}` as a piecewise map (zero-length plateaus dropped).
pub fn truncated_map(params: &TruncationParams) -> PiecewiseMap {
    let (a0, a1) = params.max_plateau();
    let (b0, b1) = params.min_plateau();
    let mut xs = vec![Rational::zero(), a0, a1, b0, b1, Rational::one()];
    xs.dedup();
    let points: Vec<_> = xs
        .into_iter()
        .map(|x| {
            let y = h_trunc(params, &x).expect("breakpoints lie in [0,1]");
            (x, y)
        })
        .collect();
    PiecewiseMap::from_points(&points).expect("truncations are continuous self-maps")
}

/// Closed form for `ψ = 0`: the truncation keeps a horseshoe around the
/// fixed point `1/2` exactly when `α = 1, β <= 1/3` or `β = 0, α >= 2/3`.
pub fn has_horseshoe(params: &TruncationParams) -> bool {
    (params.alpha == Rational::one() && params.beta <= Rational::new(1, 3))
        || (params.beta.is_zero() && params.alpha >= Rational::new(2, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn tp(a: Rational, b: Rational) -> TruncationParams {
        TruncationParams::new(a, b).unwrap()
    }

    #[test]
    fn h2_values() {
        assert_eq!(h2(&q(1, 3)).unwrap(), q(1, 1));
        assert_eq!(h2(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(h2(&q(5, 13)).unwrap(), q(11, 13));
        assert_eq!(h2(&q(2, 3)).unwrap(), q(0, 1));
        assert!(h2(&q(-1, 5)).is_err());
    }

    #[test]
    fn truncation_values() {
        let full = tp(q(1, 1), q(0, 1));
        for k in 0..=12 {
            let x = q(k, 12);
            assert_eq!(h_trunc(&full, &x).unwrap(), h2(&x).unwrap());
        }
        let p = tp(q(11, 13), q(5, 13));
        assert_eq!(p.min_plateau(), (q(21, 39), q(31, 39)));
        assert_eq!(h_trunc(&p, &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(h_trunc(&p, &q(21, 39)).unwrap(), q(5, 13));
        assert_eq!(h_trunc(&p, &q(15, 39)).unwrap(), q(11, 13));
        assert!(TruncationParams::new(q(1, 3), q(0, 1)).is_err());
        assert!(TruncationParams::new(q(1, 1), q(2, 3)).is_err());
    }

    #[test]
    fn piecewise_form_agrees() {
        for (a, b) in [(q(1, 1), q(0, 1)), (q(3, 4), q(1, 5)), (q(1, 2), q(1, 2)), (q(1, 1), q(1, 2))] {
            let p = tp(a, b);
            let map = truncated_map(&p);
            for k in 0..=60 {
                let x = q(k, 60);
                assert_eq!(map.eval(&x).unwrap(), h_trunc(&p, &x).unwrap());
            }
        }
    }

    #[test]
    fn horseshoe_region() {
        assert!(has_horseshoe(&tp(q(1, 1), q(0, 1))));
        assert!(has_horseshoe(&tp(q(1, 1), q(1, 3))));
        assert!(!has_horseshoe(&tp(q(1, 1), q(2, 5))));
        assert!(has_horseshoe(&tp(q(2, 3), q(0, 1))));
        assert!(!has_horseshoe(&tp(q(3, 5), q(0, 1))));
        assert!(!has_horseshoe(&tp(q(9, 10), q(1, 10))));
    }
}

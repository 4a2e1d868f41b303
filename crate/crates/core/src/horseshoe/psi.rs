//! `ψ(α,β)`, the left endpoint of the over-rotation interval of `H_{α,β}`.
//!
//! `H_{α,β}` keeps the orbit of `Γ_{r,p/q}` in `H₂` exactly when neither
//! plateau swallows a point of it, i.e. when the orbit's largest point is at
//! most `α` and its smallest point is at least `β`. Every over-rotation
//! number in the interval of a map is realised by an over-twist orbit, so
//! the least surviving `p/q` with `q <= N` equals the least over-rotation
//! number among all cycles of period at most `N`. That least value is
//! `ψ̂_N`, an upper bound for `ψ`. [`psi_enumerated`] computes the same
//! quantity from the literal list of cycles.

use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::cycles::enumerate_cycles_trunc;
use super::realize::{realize_with_laps, H2Lap};
use super::{has_horseshoe, TruncationParams};
use crate::combinatorics::coprime_fractions_below_half;
use crate::error::Result;
use crate::overtwist::{color_of, overtwist_permutation, Color, OvertwistSpec};
use crate::rational::Rational;

pub const DEFAULT_CAP: usize = 16;

/// Extremal orbit points of every `Γ_{r,p/q}` with `q` up to a bound.
#[derive(Debug)]
pub struct Atlas {
    max_q: usize,
    /// Sorted by `p/q`; `tops[r]`, `bots[r]` are `(x_q, x_1)` of `Γ_{r,p/q}`.
    entries: Vec<AtlasEntry>,
}

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub p: u64,
    pub q: u64,
    pub tops: Vec<Rational>,
    pub bots: Vec<Rational>,
}

fn overtwist_orbit(spec: &OvertwistSpec) -> Vec<Rational> {
    let laps: Vec<H2Lap> = (1..=spec.q())
        .map(|j| match color_of(spec, j).expect("index in range") {
            Color::Red => H2Lap::I0,
            Color::Green | Color::Pink => H2Lap::I1,
            Color::Blue => H2Lap::I2,
        })
        .collect();
    realize_with_laps(&overtwist_permutation(spec), &laps)
        .expect("over-twist orbits are realised on their colour laps")
}

impl Atlas {
    pub fn build(max_q: usize) -> Atlas {
        let entries = coprime_fractions_below_half(max_q as u64)
            .into_iter()
            .map(|(p, q)| {
                let (tops, bots) = OvertwistSpec::family(p as usize, q as usize)
                    .expect("coprime fraction below one half")
                    .iter()
                    .map(|spec| {
                        let xs = overtwist_orbit(spec);
                        (xs[xs.len() - 1].clone(), xs[0].clone())
                    })
                    .unzip();
                AtlasEntry { p, q, tops, bots }
            })
            .collect();
        Atlas { max_q, entries }
    }

    /// Shared atlas covering at least `max_q`, built once per process and
    /// rebuilt only when a larger bound is requested.
    pub fn global(max_q: usize) -> Arc<Atlas> {
        static CACHE: Mutex<Option<Arc<Atlas>>> = Mutex::new(None);
        let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
        match guard.as_ref() {
            Some(a) if a.max_q >= max_q => a.clone(),
            _ => {
                let a = Arc::new(Atlas::build(max_q.max(32)));
                *guard = Some(a.clone());
                a
            }
        }
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn entries(&self) -> &[AtlasEntry] {
        &self.entries
    }

    pub fn entry(&self, p: u64, q: u64) -> Option<&AtlasEntry> {
        self.entries.iter().find(|e| e.p == p && e.q == q)
    }

    /// Family of the least `p/q` with `q <= cap` whose over-twist orbit survives.
    pub fn least_surviving_entry(&self, alpha: &Rational, beta: &Rational, cap: usize) -> Option<&AtlasEntry> {
        self.entries
            .iter()
            .filter(|e| e.q as usize <= cap)
            .find(|e| e.survives(alpha, beta))
    }

    /// Least surviving `p/q` with `q <= cap`, or `1/2`.
    pub fn least_survivor(&self, alpha: &Rational, beta: &Rational, cap: usize) -> Rational {
        self.least_surviving_entry(alpha, beta, cap)
            .map_or_else(Rational::half, AtlasEntry::number)
    }
}

impl AtlasEntry {
    pub fn number(&self) -> Rational {
        Rational::new(self.p as i64, self.q as i64)
    }

    pub fn survives(&self, alpha: &Rational, beta: &Rational) -> bool {
        self.tops.iter().zip(&self.bots).any(|(t, b)| t <= alpha && b >= beta)
    }

    /// Survives, and no member survives with room on both sides.
    pub fn on_boundary(&self, alpha: &Rational, beta: &Rational) -> bool {
        self.survives(alpha, beta) && !self.tops.iter().zip(&self.bots).any(|(t, b)| t < alpha && b > beta)
    }
}

fn entry_for(p: u64, q: u64) -> Option<AtlasEntry> {
    Atlas::global(q as usize).entry(p, q).cloned()
}

/// Whether some `Γ_{r,p/q}` survives in `H_{α,β}`.
pub fn survives(p: u64, q: u64, params: &TruncationParams) -> bool {
    entry_for(p, q).is_some_and(|e| e.survives(params.alpha(), params.beta()))
}

/// The `r` whose orbit survives.
pub fn survivor_quadrants(p: u64, q: u64, params: &TruncationParams) -> Vec<usize> {
    entry_for(p, q).map_or_else(Vec::new, |e| {
        (0..e.tops.len())
            .filter(|&r| &e.tops[r] <= params.alpha() && &e.bots[r] >= params.beta())
            .collect()
    })
}

/// Membership in the leading set `Z_{p/q}`: a `Γ_{r,p/q}` orbit survives
/// and a plateau touches it.
pub fn on_leading_set(p: u64, q: u64, params: &TruncationParams) -> bool {
    entry_for(p, q).is_some_and(|e| e.on_boundary(params.alpha(), params.beta()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convergence {
    /// On the base, where `ψ = 1/2` by convention.
    Base,
    /// `ψ = 0` from the horseshoe closed form.
    Horseshoe,
    /// The point lies on the leading set of the value found.
    Witness,
    /// Doubling the cap leaves the value unchanged.
    Stable,
    Unconverged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiValue {
    pub value: Rational,
    pub convergence: Convergence,
    /// `ψ̂` at twice the cap, when it was computed.
    pub doubled: Option<Rational>,
}

impl PsiValue {
    pub fn converged(&self) -> bool {
        self.convergence != Convergence::Unconverged
    }
}

/// `ψ̂_N` with a convergence flag.
pub fn psi(params: &TruncationParams, cap: usize) -> PsiValue {
    if params.is_base() {
        return PsiValue { value: Rational::half(), convergence: Convergence::Base, doubled: None };
    }
    if has_horseshoe(params) {
        return PsiValue { value: Rational::zero(), convergence: Convergence::Horseshoe, doubled: None };
    }
    let atlas = Atlas::global(2 * cap);
    let (a, b) = (params.alpha(), params.beta());
    let survivor = atlas.least_surviving_entry(a, b, cap);
    if let Some(e) = survivor.filter(|e| e.on_boundary(a, b)) {
        return PsiValue { value: e.number(), convergence: Convergence::Witness, doubled: None };
    }
    let value = survivor.map_or_else(Rational::half, AtlasEntry::number);
    let doubled = atlas.least_survivor(a, b, 2 * cap);
    let convergence = if doubled == value { Convergence::Stable } else { Convergence::Unconverged };
    PsiValue { value, convergence, doubled: Some(doubled) }
}

/// `ψ̂_N` from the literal list of cycles of period at most `cap`: the least
/// over-rotation number among them, `1/2` if there is none. The base
/// convention applies.
pub fn psi_enumerated(params: &TruncationParams, cap: usize) -> Result<Rational> {
    if params.is_base() {
        return Ok(Rational::half());
    }
    Ok(enumerate_cycles_trunc(params, cap)?
        .iter()
        .filter_map(|o| o.over_rotation_number())
        .min()
        .map_or_else(Rational::half, |r| Rational::min_of(&r, &Rational::half())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn tp(a: Rational, b: Rational) -> TruncationParams {
        TruncationParams::new(a, b).unwrap()
    }

    #[test]
    fn anchor_values() {
        let v = psi(&tp(q(1, 1), q(0, 1)), 8);
        assert_eq!((v.value, v.convergence), (q(0, 1), Convergence::Horseshoe));
        let v = psi(&tp(q(11, 13), q(5, 13)), 16);
        assert_eq!((v.value, v.convergence), (q(1, 3), Convergence::Witness));
        assert_eq!(psi(&tp(q(1, 2), q(1, 5)), 16).value, q(1, 2));
        assert_eq!(psi(&tp(q(3, 4), q(1, 2)), 16).value, q(1, 2));
    }

    #[test]
    fn atlas_extrema_for_one_third() {
        let e = Atlas::build(5).entry(1, 3).cloned().unwrap();
        assert_eq!(e.tops, vec![q(11, 13), q(8, 13)]);
        assert_eq!(e.bots, vec![q(5, 13), q(2, 13)]);
    }

    #[test]
    fn survival_agrees_with_enumeration() {
        for (a, b) in [(q(9, 10), q(1, 10)), (q(4, 5), q(3, 10)), (q(7, 10), q(1, 5)), (q(19, 20), q(2, 5))] {
            let p = tp(a, b);
            let atlas = Atlas::global(7);
            assert_eq!(
                atlas.least_survivor(p.alpha(), p.beta(), 7),
                psi_enumerated(&p, 7).unwrap(),
                "at {:?}",
                p
            );
        }
    }

    #[test]
    fn cap_monotonicity() {
        let p = tp(q(17, 20), q(7, 20));
        let a = psi(&p, 8);
        let b = psi(&p, 16);
        assert!(b.value <= a.value);
    }
}

//! The bimodal over-twist family `Γ_{r,p/q}` and its colour classes.
//!
//! For coprime `p/q < 1/2` there are `q-2p+1` patterns, indexed by
//! `r = 0..=q-2p`. Spatial indices split into four consecutive blocks:
//! red `1..=r` shift right by `p`, green `r+1..=r+p` flip onto the top `p`
//! slots, pink `r+p+1..=r+2p` flip onto the bottom `p` slots, and blue
//! `r+2p+1..=q` shift left by `p`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::combinatorics::CyclicPattern;
use crate::error::{Error, Result};
use crate::rational::gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OvertwistSpec {
    p: usize,
    q: usize,
    r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
    Pink,
    Blue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorClass {
    pub color: Color,
    pub indices: RangeInclusive<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    Unimodal,
    Bimodal,
}

impl OvertwistSpec {
    pub fn new(p: usize, q: usize, r: usize) -> Result<Self> {
        if p == 0 || 2 * p >= q {
            return Err(Error::InvalidOvertwist(format!("need 0 < p/q < 1/2, got {p}/{q}")));
        }
        if gcd(p as u64, q as u64) != 1 {
            return Err(Error::InvalidOvertwist(format!("gcd({p},{q}) != 1")));
        }
        if r > q - 2 * p {
            return Err(Error::InvalidOvertwist(format!("r = {r} exceeds q-2p = {}", q - 2 * p)));
        }
        Ok(OvertwistSpec { p, q, r })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The largest admissible `r`, i.e. `q - 2p`.
    pub fn max_r(&self) -> usize {
        self.q - 2 * self.p
    }

    /// All `q-2p+1` members of the family for `p/q`.
    pub fn family(p: usize, q: usize) -> Result<Vec<OvertwistSpec>> {
        let first = OvertwistSpec::new(p, q, 0)?;
        Ok((0..=first.max_r()).map(|r| OvertwistSpec { p, q, r }).collect())
    }

    /// The mirror member `r -> q-2p-r`.
    pub fn mirrored(&self) -> OvertwistSpec {
        OvertwistSpec {
            r: self.max_r() - self.r,
            ..*self
        }
    }

    pub fn color_classes(&self) -> [ColorClass; 4] {
        let (p, q, r) = (self.p, self.q, self.r);
        [
            ColorClass { color: Color::Red, indices: 1..=r },
            ColorClass { color: Color::Green, indices: r + 1..=r + p },
            ColorClass { color: Color::Pink, indices: r + p + 1..=r + 2 * p },
            ColorClass { color: Color::Blue, indices: r + 2 * p + 1..=q },
        ]
    }
}

pub fn overtwist_permutation(spec: &OvertwistSpec) -> CyclicPattern {
    let (p, q, r) = (spec.p, spec.q, spec.r);
    let classes = spec.color_classes();
    debug_assert_eq!(
        classes.iter().map(|c| c.indices.clone().count()).sum::<usize>(),
        q,
        "colour blocks tile 1..=q"
    );
    let image = (1..=q)
        .map(|j| {
            if j <= r {
                j + p
            } else if j <= r + p {
                q - j + r + 1
            } else if j <= r + 2 * p {
                2 * p + r + 1 - j
            } else {
                j - p
            }
        })
        .collect();
    CyclicPattern::new(image).expect("over-twist permutation is a single cycle")
}

pub fn color_of(spec: &OvertwistSpec, j: usize) -> Result<Color> {
    if j == 0 || j > spec.q {
        return Err(Error::IndexOutOfRange { index: j, period: spec.q });
    }
    Ok(spec
        .color_classes()
        .into_iter()
        .find(|c| c.indices.contains(&j))
        .map(|c| c.color)
        .expect("colour blocks tile 1..=q"))
}

pub fn modality_of(spec: &OvertwistSpec) -> Modality {
    if spec.r == 0 || spec.r == spec.max_r() {
        Modality::Unimodal
    } else {
        Modality::Bimodal
    }
}

/// Recognise a pattern as a member of the over-twist family, if it is one.
pub fn identify(pattern: &CyclicPattern) -> Option<OvertwistSpec> {
    let q = pattern.period();
    let pair = crate::combinatorics::over_rotation_pair(pattern).ok()?;
    let p = pair.p as usize;
    if 2 * p >= q || gcd(p as u64, q as u64) != 1 {
        return None;
    }
    OvertwistSpec::family(p, q)
        .ok()?
        .into_iter()
        .find(|spec| &overtwist_permutation(spec) == pattern)
}

//! Parameter-plane geometry: the leading-set staircases `Z_{p/q}`, which
//! side of a staircase a parameter lies on, the retraction ray towards the
//! focal point `ℱ = (1,0)`, and level sets of `ψ̂` on grids.
//!
//! The staircase of `p/q` bounds the region `R_{p/q}` where some
//! `Γ_{r,p/q}` survives, a union of quadrants `{α >= t_r, β <= b_r}` with
//! `(t_r, b_r)` the extremal orbit points. `R_{p/q}` contains `ℱ`.

mod svg;
mod sweep;

pub use svg::{render_svg, staircase_json};
pub use sweep::{continuity_modulus, grid_point, level_set_connected, read_csv, sweep, write_csv, SweepRow, SweepTable};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::horseshoe::{psi, Atlas, AtlasEntry, PsiValue, TruncationParams, DEFAULT_CAP};
use crate::rational::{gcd, Rational};

pub type ParamPoint = TruncationParams;

pub fn focal_point() -> ParamPoint {
    TruncationParams::new(Rational::one(), Rational::zero()).expect("corner of the rectangle")
}

fn family(p: u64, q: u64) -> Result<AtlasEntry> {
    if p == 0 || 2 * p >= q || gcd(p, q) != 1 {
        return Err(Error::InvalidFraction { p, q });
    }
    Ok(Atlas::global(q as usize).entry(p, q).cloned().expect("atlas covers q"))
}

pub type Corner = (Rational, Rational);

/// Alternating tread/rise polyline from the side arm `α = 1` down to the
/// side arm `β = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub p: u64,
    pub q: u64,
    pub corners: Vec<Corner>,
}

impl Staircase {
    /// Number of segments.
    pub fn steps(&self) -> usize {
        self.corners.len() - 1
    }

    /// Horizontal segment lengths `Δx_0, Δx_1, ...`, first tread first.
    pub fn treads(&self) -> Vec<Rational> {
        self.corners.windows(2).step_by(2).map(|w| &w[0].0 - &w[1].0).collect()
    }

    /// Vertical segment lengths `Δy_1, Δy_2, ...`, first rise first.
    pub fn rises(&self) -> Vec<Rational> {
        self.corners.windows(2).skip(1).step_by(2).map(|w| &w[0].1 - &w[1].1).collect()
    }

    /// `Δx_{i-1} = Δy_{n+1-i}`: treads read forwards equal rises read
    /// backwards.
    pub fn is_symmetric(&self) -> bool {
        let mut rises = self.rises();
        rises.reverse();
        self.treads() == rises
    }

    /// Exact membership in the polyline.
    pub fn contains(&self, pt: &ParamPoint) -> bool {
        let (x, y) = (pt.alpha(), pt.beta());
        self.corners.windows(2).any(|w| {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            let (xl, xh) = if x0 <= x1 { (x0, x1) } else { (x1, x0) };
            let (yl, yh) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
            xl <= x && x <= xh && yl <= y && y <= yh
        })
    }

    /// Squared Euclidean distance from a point to the polyline.
    pub fn distance_squared(&self, x: &Rational, y: &Rational) -> Rational {
        self.corners
            .windows(2)
            .map(|w| {
                let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
                let cx = clamp(x, Rational::min_of(x0, x1), Rational::max_of(x0, x1));
                let cy = clamp(y, Rational::min_of(y0, y1), Rational::max_of(y0, y1));
                let (dx, dy) = (x - cx, y - cy);
                &dx * &dx + &dy * &dy
            })
            .min()
            .expect("a staircase has segments")
    }

    /// Squared distance to the focal point `(1,0)`.
    pub fn focal_distance_squared(&self) -> Rational {
        self.distance_squared(&Rational::one(), &Rational::zero())
    }

    /// Whether two staircases share a point.
    pub fn intersects(&self, other: &Staircase) -> bool {
        self.corners.windows(2).any(|a| {
            other.corners.windows(2).any(|b| {
                let box_of = |s: &[Corner]| {
                    (
                        Rational::min_of(&s[0].0, &s[1].0),
                        Rational::max_of(&s[0].0, &s[1].0),
                        Rational::min_of(&s[0].1, &s[1].1),
                        Rational::max_of(&s[0].1, &s[1].1),
                    )
                };
                let (ax0, ax1, ay0, ay1) = box_of(a);
                let (bx0, bx1, by0, by1) = box_of(b);
                ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1
            })
        })
    }
}

fn clamp(v: &Rational, lo: Rational, hi: Rational) -> Rational {
    if v < &lo {
        lo
    } else if v > &hi {
        hi
    } else {
        v.clone()
    }
}

/// `Z_{p/q}` from the exact extremal points `(t_r, b_r)` of `Γ_{r,p/q}`:
/// `(1, b_0)`, then `(t_r, b_r)`, `(t_r, b_{r+1})` for each `r`, with
/// `b_{n+1} = 0`. That is `2(q-2p+1)` segments.
pub fn leading_set(p: u64, q: u64) -> Result<Staircase> {
    let e = family(p, q)?;
    let n = e.tops.len();
    let mut corners = vec![(Rational::one(), e.bots[0].clone())];
    for r in 0..n {
        corners.push((e.tops[r].clone(), e.bots[r].clone()));
        let next = if r + 1 < n { e.bots[r + 1].clone() } else { Rational::zero() };
        corners.push((e.tops[r].clone(), next));
    }
    Ok(Staircase { p, q, corners })
}

/// Rebuild `Z_{p/q}` by the sweep: from the side arm `α = 1`, lower `β`
/// until a `Γ_{r,p/q}` orbit survives, then alternately lower `α` as far
/// as survival allows and lower `β` until `α` can move again, ending on
/// `β = 0`. Each stop is the first candidate value at which the survival
/// test changes.
pub fn staircase_by_sweep(p: u64, q: u64) -> Result<Staircase> {
    let e = family(p, q)?;
    let mut candidates_b: Vec<Rational> = e.bots.clone();
    candidates_b.push(Rational::zero());
    candidates_b.sort();
    candidates_b.dedup();
    let mut candidates_t = e.tops.clone();
    candidates_t.sort();
    let survives = |a: &Rational, b: &Rational| e.survives(a, b);

    let one = Rational::one();
    let mut beta = candidates_b
        .iter()
        .rev()
        .find(|b| survives(&one, b))
        .cloned()
        .expect("beta = 0 survives on the side arm");
    let mut alpha = one;
    let mut corners = vec![(alpha.clone(), beta.clone())];
    loop {
        alpha = candidates_t
            .iter()
            .find(|t| survives(t, &beta))
            .cloned()
            .expect("the current point survives");
        corners.push((alpha.clone(), beta.clone()));
        let blocked_below = |b: &Rational| candidates_t.iter().any(|t| t < &alpha && survives(t, b));
        match candidates_b.iter().rev().find(|b| *b < &beta && blocked_below(b)) {
            Some(b) => beta = b.clone(),
            None => {
                corners.push((alpha.clone(), Rational::zero()));
                break;
            }
        }
        corners.push((alpha.clone(), beta.clone()));
    }
    Ok(Staircase { p, q, corners })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// On the staircase `Z_{p/q}`.
    OnZ,
    /// Away from the focal point: no `Γ_{r,p/q}` orbit survives.
    InG,
    /// On the focal side, off the staircase.
    InU,
}

/// How the geometric side compares with `ψ̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCheck {
    Agrees,
    /// Focal side of the staircase, yet `ψ̂ = p/q`: the flat part of the
    /// tract that a horizontal or vertical move carries onto `Z_{p/q}`.
    PlateauTract,
    /// `ψ̂` disagrees but is not converged.
    Unconverged,
    /// Converged `ψ̂` disagrees with the geometric side.
    Contradicts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub side: Side,
    pub psi: PsiValue,
    pub check: CrossCheck,
}

fn side_of(e: &AtlasEntry, pt: &ParamPoint) -> Side {
    let (a, b) = (pt.alpha(), pt.beta());
    if e.on_boundary(a, b) {
        Side::OnZ
    } else if e.survives(a, b) {
        Side::InU
    } else {
        Side::InG
    }
}

pub fn classify_point(p: u64, q: u64, pt: &ParamPoint, cap: usize) -> Result<Classification> {
    let e = family(p, q)?;
    let side = side_of(&e, pt);
    let value = psi(pt, cap);
    let target = Rational::new(p as i64, q as i64);
    let consistent = match side {
        Side::OnZ => value.value == target,
        Side::InU => value.value < target,
        Side::InG => value.value >= target,
    };
    let check = if consistent {
        CrossCheck::Agrees
    } else if side == Side::InU && value.value == target && value.converged() {
        CrossCheck::PlateauTract
    } else if value.converged() {
        CrossCheck::Contradicts
    } else {
        CrossCheck::Unconverged
    };
    Ok(Classification { side, psi: value, check })
}

/// `Φ(t) = (x(1-t) + t, y(1-t))`, the segment from `(x, y)` to `ℱ`.
pub fn ray_point(pt: &ParamPoint, t: &Rational) -> ParamPoint {
    let s = Rational::one() - t;
    TruncationParams::new(pt.alpha() * &s + t, pt.beta() * &s).expect("segment stays in the rectangle")
}

/// The first point of the ray towards `ℱ` with `ψ = p/q`, to within `tol`
/// in the sup norm. Bisects on the geometric side test, which is monotone
/// along the ray.
pub fn retract(p: u64, q: u64, pt: &ParamPoint, tol: &Rational) -> Result<ParamPoint> {
    let e = family(p, q)?;
    match side_of(&e, pt) {
        Side::OnZ => return Ok(pt.clone()),
        Side::InU => {
            let v = psi(pt, DEFAULT_CAP);
            if v.value < Rational::new(p as i64, q as i64) {
                return Err(Error::BelowTract { p, q });
            }
            return Ok(pt.clone());
        }
        Side::InG => {}
    }
    let reach = Rational::max_of(&(Rational::one() - pt.alpha()), pt.beta());
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    while &reach * (&hi - &lo) > *tol {
        let mid = (&lo + &hi) / 2;
        if side_of(&e, &ray_point(pt, &mid)) == Side::InG {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ray_point(pt, &hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaDirection {
    /// Already on the staircase.
    None,
    /// Decrease `α` by `κ₁`.
    Left,
    /// Increase `β` by `κ₂`.
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaWitness {
    pub kappa1: Rational,
    pub kappa2: Rational,
    pub direction: KappaDirection,
}

/// Shifts with `(α - κ₁, β + κ₂) ∈ Z_{p/q}` for a point with `ψ = p/q`:
/// the shorter of the horizontal move left and the vertical move up onto
/// the staircase, the other shift being zero. Ties go left.
pub fn kappa_witness(p: u64, q: u64, pt: &ParamPoint) -> Result<KappaWitness> {
    let e = family(p, q)?;
    let zero = Rational::zero();
    let side = side_of(&e, pt);
    if side == Side::OnZ {
        return Ok(KappaWitness { kappa1: zero.clone(), kappa2: zero, direction: KappaDirection::None });
    }
    let value = psi(pt, DEFAULT_CAP).value;
    if side != Side::InU || value != Rational::new(p as i64, q as i64) {
        return Err(Error::NotOnTract { p, q, found: value.to_string() });
    }
    let (a, b) = (pt.alpha(), pt.beta());
    let tread_alpha = (0..e.tops.len())
        .filter(|&r| &e.bots[r] >= b)
        .map(|r| e.tops[r].clone())
        .min()
        .expect("point survives");
    let rise_beta = (0..e.tops.len())
        .filter(|&r| &e.tops[r] <= a)
        .map(|r| e.bots[r].clone())
        .max()
        .expect("point survives");
    let (k1, k2) = (a - tread_alpha, rise_beta - b);
    Ok(if k1 <= k2 {
        KappaWitness { kappa1: k1, kappa2: zero, direction: KappaDirection::Left }
    } else {
        KappaWitness { kappa1: zero, kappa2: k2, direction: KappaDirection::Up }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pt(a: Rational, b: Rational) -> ParamPoint {
        TruncationParams::new(a, b).unwrap()
    }

    #[test]
    fn one_third_staircase() {
        let z = leading_set(1, 3).unwrap();
        assert_eq!(
            z.corners,
            vec![
                (q(1, 1), q(5, 13)),
                (q(11, 13), q(5, 13)),
                (q(11, 13), q(2, 13)),
                (q(8, 13), q(2, 13)),
                (q(8, 13), q(0, 1)),
            ]
        );
        assert_eq!(z.steps(), 4);
        assert_eq!(z.treads(), vec![q(2, 13), q(3, 13)]);
        assert_eq!(z.rises(), vec![q(3, 13), q(2, 13)]);
        assert!(z.is_symmetric());
        assert!(z.contains(&pt(q(11, 13), q(5, 13))));
        assert!(z.contains(&pt(q(12, 13), q(5, 13))));
        assert!(!z.contains(&pt(q(12, 13), q(4, 13))));
    }

    #[test]
    fn sweep_replays_the_corners() {
        for (p, qq) in crate::combinatorics::coprime_fractions_below_half(13) {
            assert_eq!(staircase_by_sweep(p, qq).unwrap(), leading_set(p, qq).unwrap());
        }
    }

    #[test]
    fn invalid_fractions() {
        assert_eq!(leading_set(2, 6), Err(Error::InvalidFraction { p: 2, q: 6 }));
        assert!(leading_set(1, 2).is_err());
    }

    #[test]
    fn classification_anchors() {
        let c = classify_point(1, 3, &focal_point(), 16).unwrap();
        assert_eq!((c.side, c.check), (Side::InU, CrossCheck::Agrees));
        let c = classify_point(1, 3, &pt(q(11, 13), q(5, 13)), 16).unwrap();
        assert_eq!((c.side, c.check), (Side::OnZ, CrossCheck::Agrees));
        let c = classify_point(1, 3, &pt(q(1, 2), q(1, 5)), 16).unwrap();
        assert_eq!((c.side, c.check), (Side::InG, CrossCheck::Agrees));
    }

    #[test]
    fn plateau_tract_is_flagged() {
        // just inside the first tread, away from the 2/7 region
        let c = classify_point(1, 3, &pt(q(12, 13), q(19, 52)), 16).unwrap();
        assert_eq!(c.side, Side::InU);
        assert_eq!(c.psi.value, q(1, 3));
        assert_eq!(c.check, CrossCheck::PlateauTract);
    }

    #[test]
    fn retraction_hits_the_corner() {
        // (4/5, 1/2) lies on the base, on the line through F and (11/13, 5/13)
        let start = pt(q(4, 5), q(1, 2));
        let tol = q(1, 1_000_000);
        let r = retract(1, 3, &start, &tol).unwrap();
        let corner = (q(11, 13), q(5, 13));
        assert!((r.alpha() - &corner.0).abs() <= tol);
        assert!((r.beta() - &corner.1).abs() <= tol);
        let again = retract(1, 3, &r, &tol).unwrap();
        assert_eq!(again, r);
        assert_eq!(retract(1, 3, &focal_point(), &tol), Err(Error::BelowTract { p: 1, q: 3 }));
    }

    #[test]
    fn kappa_moves() {
        let on = pt(q(11, 13), q(5, 13));
        assert_eq!(kappa_witness(1, 3, &on).unwrap().direction, KappaDirection::None);
        // below the first tread, near it: move up
        let k = kappa_witness(1, 3, &pt(q(12, 13), q(19, 52))).unwrap();
        assert_eq!(k.direction, KappaDirection::Up);
        assert_eq!(k.kappa2, q(1, 52));
        // right of the first rise, near it: move left
        let k = kappa_witness(1, 3, &pt(q(45, 52), q(4, 13))).unwrap();
        assert_eq!(k.direction, KappaDirection::Left);
        assert_eq!(k.kappa1, q(1, 52));
        assert!(kappa_witness(1, 3, &focal_point()).is_err());
    }
}

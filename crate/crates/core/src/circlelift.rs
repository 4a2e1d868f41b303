//! Degree-one lifts of circle maps: the monotone hulls `F_l`, `F_u`,
//! rotation numbers of nondecreasing lifts and rotation intervals.
//!
//! A lift is piecewise affine on `[0,1]` and extended by
//! `F(x + n) = F(x) + n·d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default bound on the period searched for an exact rotation number.
pub const DEFAULT_PERIOD_CAP: usize = 64;
const DYADIC_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLift", into = "RawLift")]
pub struct Lift {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct RawLift {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    #[serde(default = "one")]
    degree: i64,
}

fn one() -> i64 {
    1
}

impl TryFrom<RawLift> for Lift {
    type Error = Error;

    fn try_from(raw: RawLift) -> Result<Self> {
        Lift::new(raw.breakpoints, raw.values, raw.degree)
    }
}

impl From<Lift> for RawLift {
    fn from(l: Lift) -> Self {
        RawLift { breakpoints: l.breakpoints, values: l.values, degree: l.degree }
    }
}

impl Lift {
    /// Graph vertices `(x_i, F(x_i))` with `0 = x_0 < ... < x_k = 1` and
    /// `F(1) = F(0) + degree`.
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>, degree: i64) -> Result<Self> {
        if breakpoints.len() < 2 || breakpoints.len() != values.len() {
            return Err(Error::InvalidLift("need matching breakpoints and values, at least two".into()));
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != Rational::one() {
            return Err(Error::InvalidLift("breakpoints must run from 0 to 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidLift("breakpoints must increase strictly".into()));
        }
        if values[values.len() - 1] != &values[0] + degree {
            return Err(Error::InvalidLift(format!("F(1) must equal F(0) + {degree}")));
        }
        Ok(Lift { breakpoints, values, degree })
    }

    /// `x ↦ x + c`.
    pub fn rotation(c: Rational) -> Lift {
        Lift {
            breakpoints: vec![Rational::zero(), Rational::one()],
            values: vec![c.clone(), c + 1],
            degree: 1,
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let n = Rational::from_big_integer(x.floor());
        let t = x - &n;
        let i = self.breakpoints[1..].partition_point(|b| b < &t).min(self.breakpoints.len() - 2);
        let (x0, x1) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
        let (y0, y1) = (&self.values[i], &self.values[i + 1]);
        let y = y0 + (y1 - y0) * (&t - x0) / (x1 - x0);
        y + n * self.degree
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// `F + c`.
    pub fn shift(&self, c: &Rational) -> Lift {
        Lift {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v + c).collect(),
            degree: self.degree,
        }
    }

    /// Vertices of the graph over `[a, a + n]` for integers `a`, `n`.
    fn vertices_over(&self, a: i64, n: i64) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        for k in a..a + n {
            for (x, y) in self.breakpoints.iter().zip(&self.values) {
                if k > a && x.is_zero() {
                    continue;
                }
                out.push((x + k, y + k * self.degree));
            }
        }
        out
    }

    fn from_vertices(points: Vec<(Rational, Rational)>, degree: i64) -> Lift {
        let mut breakpoints: Vec<Rational> = Vec::with_capacity(points.len());
        let mut values: Vec<Rational> = Vec::with_capacity(points.len());
        for (x, y) in points {
            if breakpoints.last() == Some(&x) {
                continue;
            }
            // drop collinear middle vertices
            if breakpoints.len() >= 2 {
                let k = breakpoints.len();
                let (x0, y0, x1, y1) = (&breakpoints[k - 2], &values[k - 2], &breakpoints[k - 1], &values[k - 1]);
                if (y1 - y0) * (&x - x1) == (&y - y1) * (x1 - x0) {
                    breakpoints.pop();
                    values.pop();
                }
            }
            breakpoints.push(x);
            values.push(y);
        }
        Lift { breakpoints, values, degree }
    }

    /// Sup-norm distance over a period.
    pub fn sup_distance(&self, other: &Lift) -> Rational {
        let mut xs: Vec<Rational> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        xs.sort();
        xs.dedup();
        xs.iter().map(|x| (self.eval(x) - other.eval(x)).abs()).max().expect("nonempty")
    }
}

/// Restrict a function given by vertices on a longer interval to `[0,1]`.
fn restrict_to_unit(points: &[(Rational, Rational)], degree: i64) -> Lift {
    let eval = |x: &Rational| -> Rational {
        let i = points.partition_point(|(px, _)| px < x);
        if i < points.len() && &points[i].0 == x {
            return points[i].1.clone();
        }
        let ((x0, y0), (x1, y1)) = (&points[i - 1], &points[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    };
    let (zero, one) = (Rational::zero(), Rational::one());
    let mut v = vec![(zero.clone(), eval(&zero))];
    v.extend(points.iter().filter(|(x, _)| x > &zero && x < &one).cloned());
    v.push((one.clone(), eval(&one)));
    Lift::from_vertices(v, degree)
}

/// `F_l(x) = inf { F(y) : y >= x }`, the suffix minimum; for degree one the
/// infimum is attained on `[x, x+1]`, so a sweep over `[0,2]` suffices.
pub fn lower_map(f: &Lift) -> Lift {
    let pts = f.vertices_over(0, 2);
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut running = pts[pts.len() - 1].1.clone();
    out.push(pts[pts.len() - 1].clone());
    for w in pts.windows(2).rev() {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        if y0 < &running {
            if y1 > &running {
                // the piece dips below the running minimum at the crossing
                let xc = x0 + (x1 - x0) * (&running - y0) / (y1 - y0);
                out.push((xc, running.clone()));
            }
            running = y0.clone();
        }
        out.push((x0.clone(), running.clone()));
    }
    out.reverse();
    restrict_to_unit(&dedup_x(out), f.degree)
}

/// `F_u(x) = sup { F(y) : y <= x }`, the prefix maximum over `[-1, 1]`.
pub fn upper_map(f: &Lift) -> Lift {
    let pts = f.vertices_over(-1, 2);
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut running = pts[0].1.clone();
    out.push(pts[0].clone());
    for w in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        if y1 > &running {
            if y0 < &running {
                let xc = x0 + (x1 - x0) * (&running - y0) / (y1 - y0);
                out.push((xc, running.clone()));
            }
            running = y1.clone();
        }
        out.push((x1.clone(), running.clone()));
    }
    restrict_to_unit(&dedup_x(out), f.degree)
}

fn dedup_x(points: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
    for p in points {
        if out.last().map(|l| &l.0) != Some(&p.0) {
            out.push(p);
        }
    }
    out
}

/// `G ∘ F` for degree-one lifts with exact breakpoints.
pub fn compose(g: &Lift, f: &Lift) -> Lift {
    let mut points: Vec<(Rational, Rational)> = Vec::new();
    for i in 0..f.breakpoints.len() - 1 {
        let (x0, x1) = (&f.breakpoints[i], &f.breakpoints[i + 1]);
        let (y0, y1) = (&f.values[i], &f.values[i + 1]);
        points.push((x0.clone(), g.eval(y0)));
        if y0 != y1 {
            let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
            let mut inner: Vec<Rational> = Vec::new();
            let (k0, k1) = (lo.floor(), hi.ceil());
            let mut k = k0;
            while k <= k1 {
                let base = Rational::from_big_integer(k.clone());
                for b in &g.breakpoints {
                    let y = &base + b;
                    if &y > lo && &y < hi {
                        inner.push(x0 + (x1 - x0) * (&y - y0) / (y1 - y0));
                    }
                }
                k += 1;
            }
            inner.sort();
            inner.dedup();
            points.extend(inner.into_iter().map(|x| {
                let v = g.eval(&f.eval(&x));
                (x, v)
            }));
        }
    }
    let last = f.breakpoints.len() - 1;
    points.push((f.breakpoints[last].clone(), g.eval(&f.values[last])));
    Lift::from_vertices(points, g.degree * f.degree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum RotationNumber {
    /// A periodic orbit with `G^q(x) = x + p` was found.
    Exact { value: Rational },
    /// `lo < ρ < hi`.
    Enclosure { lo: Rational, hi: Rational },
}

impl RotationNumber {
    pub fn lo(&self) -> &Rational {
        match self {
            RotationNumber::Exact { value } => value,
            RotationNumber::Enclosure { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            RotationNumber::Exact { value } => value,
            RotationNumber::Enclosure { hi, .. } => hi,
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo().to_f64() + self.hi().to_f64()) / 2.0
    }
}

/// Rotation number of a nondecreasing degree-one lift.
///
/// For `q <= cap`, `D_q(x) = G^q(x) - x` is continuous and 1-periodic; an
/// integer `p` between its extremes gives a point with `G^q(x) = x + p`,
/// hence `ρ = p/q`. Otherwise the orbits of `0` under the lifts rounded
/// down and up to a dyadic grid bound `ρ`: each rounded lift is again
/// nondecreasing of degree one, and `|G^n(0) - nρ(G)| < 1`.
pub fn rotation_number(g: &Lift, cap: usize, precision: u64) -> Result<RotationNumber> {
    if g.degree != 1 {
        return Err(Error::InvalidLift(format!("degree {} is not one", g.degree)));
    }
    if !g.is_monotone() {
        return Err(Error::NotMonotone);
    }
    let mut power = g.clone();
    for q in 1..=cap {
        if q > 1 {
            power = compose(g, &power);
        }
        let diffs = power.breakpoints.iter().zip(&power.values).map(|(x, y)| y - x);
        let (mut lo, mut hi) = (None::<Rational>, None::<Rational>);
        for d in diffs {
            lo = Some(lo.map_or(d.clone(), |l| Rational::min_of(&l, &d)));
            hi = Some(hi.map_or(d.clone(), |h| Rational::max_of(&h, &d)));
        }
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        let p = lo.ceil();
        if Rational::from_big_integer(p.clone()) <= hi {
            let value = Rational::from_big_integer(p) / q as i64;
            return Ok(RotationNumber::Exact { value });
        }
    }
    let target = Rational::new(1, precision.max(1) as i64);
    let (mut lo_x, mut hi_x) = (Rational::zero(), Rational::zero());
    let mut n: i64 = 0;
    let mut block = 256;
    loop {
        for _ in 0..block {
            lo_x = g.eval(&lo_x).floor_dyadic(DYADIC_BITS);
            hi_x = g.eval(&hi_x).ceil_dyadic(DYADIC_BITS);
        }
        n += block;
        let lo = (&lo_x - 1) / n;
        let hi = (&hi_x + 1) / n;
        if &hi - &lo <= target || n >= 1 << 22 {
            return Ok(RotationNumber::Enclosure { lo, hi });
        }
        block = n;
    }
}

/// `[ρ(F_l), ρ(F_u)]`.
pub fn rotation_interval(f: &Lift) -> Result<(RotationNumber, RotationNumber)> {
    if f.degree != 1 {
        return Err(Error::InvalidLift(format!("degree {} is not one", f.degree)));
    }
    Ok((
        rotation_number(&lower_map(f), DEFAULT_PERIOD_CAP, 10_000)?,
        rotation_number(&upper_map(f), DEFAULT_PERIOD_CAP, 10_000)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn lift(points: &[(i64, i64, i64, i64)]) -> Lift {
        let (xs, ys) = points.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d))).unzip();
        Lift::new(xs, ys, 1).unwrap()
    }

    fn tent() -> Lift {
        // up to 1 at 1/4, down to -1/4 at 3/4, up to 1 at 1
        lift(&[(0, 1, 0, 1), (1, 4, 1, 1), (3, 4, -1, 4), (1, 1, 1, 1)])
    }

    #[test]
    fn validation() {
        assert!(Lift::new(vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(2, 1)], 1).is_err());
        assert!(Lift::new(vec![q(0, 1), q(1, 2)], vec![q(0, 1), q(1, 1)], 1).is_err());
        let l = Lift::rotation(q(2, 5));
        assert_eq!(l.eval(&q(7, 2)), q(7, 2) + q(2, 5));
        assert_eq!(l.eval(&q(-1, 3)), q(-1, 3) + q(2, 5));
    }

    #[test]
    fn hulls_of_a_tent() {
        let f = tent();
        let lo = lower_map(&f);
        let up = upper_map(&f);
        assert!(lo.is_monotone() && up.is_monotone());
        for k in -20..=40 {
            let x = q(k, 20);
            assert!(lo.eval(&x) <= f.eval(&x));
            assert!(f.eval(&x) <= up.eval(&x));
        }
        assert_eq!(lo.eval(&q(0, 1)), q(-1, 4));
        assert_eq!(up.eval(&q(1, 2)), q(1, 1));
        assert_eq!(lo.eval(&q(1, 2)), q(-1, 4));
    }

    #[test]
    fn monotone_lifts_are_their_own_hulls() {
        let f = lift(&[(0, 1, 0, 1), (1, 3, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(lower_map(&f), f);
        assert_eq!(upper_map(&f), f);
        let r = Lift::rotation(q(1, 7));
        assert_eq!(lower_map(&r), r);
    }

    #[test]
    fn rotation_numbers() {
        let r = rotation_number(&Lift::rotation(q(2, 5)), 64, 10_000).unwrap();
        assert_eq!(r, RotationNumber::Exact { value: q(2, 5) });
        // plateau at height 1/3 on [0, 1/6], then x + 1/3 from 1/3 on
        let g = lift(&[(0, 1, 1, 3), (1, 6, 1, 3), (1, 3, 2, 3), (1, 1, 4, 3)]);
        let g3 = compose(&g, &compose(&g, &g));
        assert_eq!(g3.eval(&q(0, 1)), q(1, 1));
        assert_eq!(rotation_number(&g, 64, 10_000).unwrap(), RotationNumber::Exact { value: q(1, 3) });
        assert!(rotation_number(&tent(), 64, 10_000).is_err());
    }

    #[test]
    fn irrational_rotation_is_enclosed() {
        // close to the golden rotation, no period up to 64
        let c = Rational::from_f64_floor(0.618_033_988_749_895, 1 << 40);
        let r = rotation_number(&Lift::rotation(c.clone()), 64, 10_000).unwrap();
        match r {
            RotationNumber::Enclosure { lo, hi } => {
                assert!(lo < c && c < hi);
                assert!(&hi - &lo <= q(1, 10_000));
            }
            other => panic!("expected an enclosure, got {other:?}"),
        }
    }

    #[test]
    fn composition_is_pointwise() {
        let f = tent();
        let g = lift(&[(0, 1, 1, 5), (1, 2, 2, 5), (1, 1, 6, 5)]);
        let h = compose(&g, &f);
        for k in 0..=24 {
            let x = q(k, 24);
            assert_eq!(h.eval(&x), g.eval(&f.eval(&x)));
        }
    }

    #[test]
    fn interval_of_rotation_is_degenerate() {
        let (lo, hi) = rotation_interval(&Lift::rotation(q(1, 4))).unwrap();
        assert_eq!(lo, RotationNumber::Exact { value: q(1, 4) });
        assert_eq!(hi, lo);
    }

    #[test]
    fn json_round_trip() {
        let f = tent();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Lift>(&s).unwrap(), f);
    }
}

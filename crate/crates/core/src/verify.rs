//! Invariant suite behind `rotorlab verify`. Each check is deterministic
//! (seeded) and reports a one-line detail.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circlelift::{lower_map, rotation_number, upper_map, Lift, DEFAULT_PERIOD_CAP};
use crate::combinatorics::{
    all_cyclic_patterns, coprime_fractions_below_half, orp_forces, over_rotation_number, over_rotation_pair,
    sharkovsky_ge, OverRotationPair,
};
use crate::horseshoe::{
    compare_itineraries, enumerate_cycles_trunc, extrema_images, h_trunc, itinerary, psi, truncated_map, Atlas,
    Comparison, TruncationParams,
};
use crate::overtwist::{overtwist_permutation, OvertwistSpec};
use crate::plinear::{forced_cycles, is_overtwist, min_over_rotation, pattern_graph};
use crate::rational::Rational;
use crate::tracts::{leading_set, retract, staircase_by_sweep, sweep, continuity_modulus, ParamPoint};

type Outcome = std::result::Result<String, String>;

pub struct Check {
    pub name: &'static str,
    /// Part of the quick subset.
    pub quick: bool,
    run: fn() -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

pub fn checks() -> Vec<Check> {
    macro_rules! c {
        ($name:literal, $quick:expr, $f:ident) => {
            Check { name: $name, quick: $quick, run: $f }
        };
    }
    vec![
        c!("switch-count", true, switch_count),
        c!("sharkovsky-order", true, sharkovsky_order),
        c!("forcing-order", true, forcing_order),
        c!("reversal-invariance", true, reversal_invariance),
        c!("overtwist-blocks", true, overtwist_blocks),
        c!("overtwist-criterion", false, overtwist_criterion),
        c!("karp-vs-forced", false, karp_vs_forced),
        c!("forcing-consistency", false, forcing_consistency),
        c!("karp-relabelling", true, karp_relabelling),
        c!("itinerary-order", true, itinerary_order),
        c!("floats-above", true, floats_above),
        c!("psi-cap-monotone", true, psi_cap_monotone),
        c!("ray-monotone", false, ray_monotone),
        c!("orbits-pointwise", true, orbits_pointwise),
        c!("staircase-shape", true, staircase_shape),
        c!("staircase-distance", true, staircase_distance),
        c!("retract", true, retract_check),
        c!("lift-hulls", true, lift_hulls),
        c!("lift-translation", true, lift_translation),
        c!("continuity-modulus", false, continuity_report),
    ]
}

/// Runs the checks whose name contains `filter` (all when `None`).
pub fn run(quick_only: bool, filter: Option<&str>) -> Vec<CheckReport> {
    checks()
        .into_iter()
        .filter(|c| !quick_only || c.quick)
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .map(|c| {
            let t = Instant::now();
            let out = (c.run)();
            let millis = t.elapsed().as_millis();
            match out {
                Ok(detail) => CheckReport { name: c.name, passed: true, detail, millis },
                Err(detail) => CheckReport { name: c.name, passed: false, detail, millis },
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_params(rng: &mut ChaCha8Rng, den: i64) -> ParamPoint {
    let a = Rational::new(den + rng.gen_range(0..=den), 2 * den);
    let b = Rational::new(rng.gen_range(0..=den), 2 * den);
    TruncationParams::new(a, b).expect("inside the rectangle")
}

fn switch_count() -> Outcome {
    let mut n = 0;
    for q in 2..=8 {
        for pat in all_cyclic_patterns(q) {
            let pair = over_rotation_pair(&pat).map_err(|e| e.to_string())?;
            ensure(pair.p >= 1 && 2 * pair.p <= pair.q, || format!("{:?} gives {pair:?}", pat.image()))?;
            n += 1;
        }
    }
    Ok(format!("{n} patterns with q <= 8"))
}

fn sharkovsky_order() -> Outcome {
    const N: u64 = 200;
    for a in 1..=N {
        ensure(sharkovsky_ge(a, a), || format!("{a} not reflexive"))?;
        for b in 1..=N {
            let (ab, ba) = (sharkovsky_ge(a, b), sharkovsky_ge(b, a));
            ensure(ab || ba, || format!("{a}, {b} incomparable"))?;
            ensure(!(ab && ba) || a == b, || format!("{a}, {b} not antisymmetric"))?;
        }
    }
    let mut sorted: Vec<u64> = (1..=N).collect();
    sorted.sort_by(|&a, &b| if a == b { std::cmp::Ordering::Equal } else if sharkovsky_ge(a, b) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
    for i in 0..sorted.len() {
        for j in i..sorted.len() {
            ensure(sharkovsky_ge(sorted[i], sorted[j]), || format!("not transitive at {} {}", sorted[i], sorted[j]))?;
        }
    }
    Ok(format!("total order on 1..={N}"))
}

fn pairs_up_to(s: u64) -> Vec<OverRotationPair> {
    (2..=s).flat_map(|q| (1..=q / 2).map(move |p| OverRotationPair { p, q })).collect()
}

fn forcing_order() -> Outcome {
    let pairs = pairs_up_to(12);
    for &a in &pairs {
        ensure(orp_forces(a, a), || format!("{a:?} not reflexive"))?;
        for &b in &pairs {
            let ab = orp_forces(a, b);
            ensure(!(ab && orp_forces(b, a)) || a == b, || format!("{a:?} {b:?} not antisymmetric"))?;
            if !ab {
                continue;
            }
            for &c in &pairs {
                ensure(!orp_forces(b, c) || orp_forces(a, c), || format!("{a:?} {b:?} {c:?} not transitive"))?;
            }
        }
    }
    Ok(format!("partial order on {} pairs", pairs.len()))
}

fn reversal_invariance() -> Outcome {
    let mut n = 0;
    for q in 2..=8 {
        for pat in all_cyclic_patterns(q) {
            let (a, b) = (over_rotation_number(&pat), over_rotation_number(&pat.reversed()));
            ensure(a == b, || format!("{:?}: {a:?} vs {b:?}", pat.image()))?;
            n += 1;
        }
    }
    Ok(format!("{n} patterns"))
}

fn overtwist_blocks() -> Outcome {
    let mut n = 0;
    for (p, q) in coprime_fractions_below_half(30) {
        for spec in OvertwistSpec::family(p as usize, q as usize).map_err(|e| e.to_string())? {
            let pat = overtwist_permutation(&spec);
            let pair = over_rotation_pair(&pat).map_err(|e| e.to_string())?;
            ensure(pair == OverRotationPair { p, q }, || format!("{spec:?} has pair {pair:?}"))?;
            if q <= 20 {
                let mirror = overtwist_permutation(&spec.mirrored());
                ensure(pat.reversed() == mirror, || format!("{spec:?} mirror mismatch"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} over-twist patterns with q <= 30"))
}

fn overtwist_criterion() -> Outcome {
    let mut n = 0;
    for (p, q) in coprime_fractions_below_half(15) {
        for spec in OvertwistSpec::family(p as usize, q as usize).map_err(|e| e.to_string())? {
            let ok = is_overtwist(&overtwist_permutation(&spec)).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{spec:?} fails the criterion"))?;
            n += 1;
        }
    }
    Ok(format!("{n} patterns with q <= 15"))
}

/// Cycle enumeration grows like the number of closed walks, so longer
/// periods are out of reach for the high-entropy members of the family.
const FORCED_CAP: usize = 12;

fn karp_vs_forced() -> Outcome {
    let mut n = 0;
    for (p, q) in coprime_fractions_below_half(12) {
        for spec in OvertwistSpec::family(p as usize, q as usize).map_err(|e| e.to_string())? {
            let pat = overtwist_permutation(&spec);
            let karp = min_over_rotation(&pattern_graph(&pat).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let least = forced_cycles(&pat, (2 * q as usize).min(FORCED_CAP))
                .map_err(|e| e.to_string())?
                .iter()
                .filter_map(|c| over_rotation_number(c).ok())
                .min()
                .ok_or("no cycles")?;
            ensure(karp == least, || format!("{spec:?}: Karp {karp}, forced {least}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} patterns with q <= 12, cycles up to period min(2q, {FORCED_CAP})"))
}

fn forcing_consistency() -> Outcome {
    const CAP: usize = 12;
    let mut r = rng(11);
    let mut patterns: Vec<_> = coprime_fractions_below_half(9)
        .into_iter()
        .flat_map(|(p, q)| OvertwistSpec::family(p as usize, q as usize).unwrap())
        .map(|s| overtwist_permutation(&s))
        .collect();
    for q in 3..=9 {
        let all = all_cyclic_patterns(q);
        for _ in 0..6 {
            patterns.push(all[r.gen_range(0..all.len())].clone());
        }
    }
    let targets = pairs_up_to(CAP as u64);
    for pat in &patterns {
        let pair = over_rotation_pair(pat).map_err(|e| e.to_string())?;
        let found: Vec<OverRotationPair> = forced_cycles(pat, CAP)
            .map_err(|e| e.to_string())?
            .iter()
            .filter_map(|c| over_rotation_pair(c).ok())
            .collect();
        for t in targets.iter().filter(|t| orp_forces(pair, **t)) {
            ensure(found.contains(t), || format!("{:?} forces {t:?} but it is missing", pat.image()))?;
        }
    }
    Ok(format!("{} patterns, cap {CAP}", patterns.len()))
}

fn karp_relabelling() -> Outcome {
    let mut r = rng(7);
    let mut n = 0;
    for q in 3..=7 {
        for pat in all_cyclic_patterns(q).into_iter().step_by(3) {
            let g = pattern_graph(&pat).map_err(|e| e.to_string())?;
            let base = min_over_rotation(&g).map_err(|e| e.to_string())?;
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            for i in (1..perm.len()).rev() {
                perm.swap(i, r.gen_range(0..=i));
            }
            let other = min_over_rotation(&g.relabelled(&perm)).map_err(|e| e.to_string())?;
            ensure(base == other, || format!("{:?}: {base} vs {other}", pat.image()))?;
            n += 1;
        }
    }
    Ok(format!("{n} graphs"))
}

fn itinerary_order() -> Outcome {
    let mut r = rng(3);
    let maps = [
        truncated_map(&TruncationParams::new(Rational::one(), Rational::zero()).unwrap()),
        truncated_map(&TruncationParams::new(Rational::new(9, 10), Rational::new(1, 7)).unwrap()),
    ];
    let (mut stronger, mut undefined) = (0, 0);
    for k in 0..500 {
        let map = &maps[k % 2];
        let den = 1_000_003i64;
        let (a, b) = (r.gen_range(0..=den), r.gen_range(0..=den));
        if a == b {
            continue;
        }
        let (x, y) = (Rational::new(a.max(b), den), Rational::new(a.min(b), den));
        let ix = itinerary(map, &x, 30).map_err(|e| e.to_string())?;
        let iy = itinerary(map, &y, 30).map_err(|e| e.to_string())?;
        let fwd = compare_itineraries(&ix, &iy).map_err(|e| e.to_string())?;
        let back = compare_itineraries(&iy, &ix).map_err(|e| e.to_string())?;
        ensure(fwd != Comparison::Weaker, || format!("{x} > {y} but its itinerary is weaker"))?;
        ensure(back != Comparison::Stronger, || format!("{y} < {x} but its itinerary is stronger"))?;
        match fwd {
            Comparison::Stronger => stronger += 1,
            Comparison::Undefined => undefined += 1,
            _ => {}
        }
    }
    Ok(format!("500 pairs: {stronger} stronger, {undefined} undefined"))
}

fn floats_above() -> Outcome {
    let mut n = 0;
    for (p, q) in coprime_fractions_below_half(11) {
        let specs = OvertwistSpec::family(p as usize, q as usize).map_err(|e| e.to_string())?;
        let ext: Vec<_> = specs
            .iter()
            .map(|s| extrema_images(&overtwist_permutation(s)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for w in ext.windows(2) {
            ensure(w[0].0 > w[1].0 && w[0].1 > w[1].1, || format!("{p}/{q}: {:?} then {:?}", w[0], w[1]))?;
            n += 1;
        }
    }
    Ok(format!("{n} consecutive pairs with q <= 11"))
}

fn psi_cap_monotone() -> Outcome {
    let mut r = rng(5);
    for _ in 0..300 {
        let pt = random_params(&mut r, 997);
        let (a, b) = (psi(&pt, 8).value, psi(&pt, 16).value);
        ensure(b <= a, || format!("({}, {}): cap 8 gives {a}, cap 16 gives {b}", pt.alpha(), pt.beta()))?;
    }
    Ok("300 points, caps 8 and 16".into())
}

/// `(x(1-t)+t, y(1-t))` from a random point of the base set.
fn ray_monotone() -> Outcome {
    let mut r = rng(13);
    let mut bad = 0;
    for _ in 0..200 {
        let u = Rational::new(r.gen_range(0..=1000), 2000);
        let start = if r.gen_bool(0.5) {
            TruncationParams::new(Rational::half(), u)
        } else {
            TruncationParams::new(Rational::half() + u, Rational::half())
        }
        .unwrap();
        let mut prev: Option<Rational> = None;
        for k in 0..20 {
            let pt = crate::tracts::ray_point(&start, &Rational::new(k, 20));
            let v = psi(&pt, 16).value;
            if prev.as_ref().is_some_and(|p| &v > p) {
                bad += 1;
            }
            prev = Some(v);
        }
    }
    ensure(bad == 0, || format!("{bad} increases towards the focal point"))?;
    Ok("200 rays x 20 points".into())
}

fn orbits_pointwise() -> Outcome {
    let mut r = rng(17);
    let mut n = 0;
    for _ in 0..12 {
        let pt = random_params(&mut r, 61);
        for orbit in enumerate_cycles_trunc(&pt, 7).map_err(|e| e.to_string())? {
            let k = orbit.points.len();
            for i in 0..k {
                let img = h_trunc(&pt, &orbit.points[i]).map_err(|e| e.to_string())?;
                ensure(img == orbit.points[(i + 1) % k], || format!("orbit {:?} broken", orbit.points))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} orbits"))
}

fn staircase_shape() -> Outcome {
    let atlas = Atlas::global(13);
    let mut n = 0;
    for (p, q) in coprime_fractions_below_half(13) {
        let z = leading_set(p, q).map_err(|e| e.to_string())?;
        let e = atlas.entry(p, q).ok_or("missing atlas entry")?;
        ensure(z.steps() == 2 * (q - 2 * p + 1) as usize, || format!("{p}/{q}: {} steps", z.steps()))?;
        for (r, (t, b)) in e.tops.iter().zip(&e.bots).enumerate() {
            ensure(z.corners[2 * r + 1] == (t.clone(), b.clone()), || format!("{p}/{q}: corner {r}"))?;
        }
        ensure(z.is_symmetric(), || format!("{p}/{q} not symmetric"))?;
        let s = staircase_by_sweep(p, q).map_err(|e| e.to_string())?;
        ensure(s == z, || format!("{p}/{q}: sweep visits different corners"))?;
        n += 1;
    }
    Ok(format!("{n} staircases with q <= 13"))
}

fn staircase_distance() -> Outcome {
    let fr = coprime_fractions_below_half(9);
    let stairs: Vec<_> = fr.iter().map(|&(p, q)| leading_set(p, q)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for i in 0..stairs.len() {
        for j in i + 1..stairs.len() {
            let (a, b) = (&stairs[i], &stairs[j]);
            ensure(a.focal_distance_squared() < b.focal_distance_squared(), || {
                format!("d(F, Z_{}/{}) >= d(F, Z_{}/{})", a.p, a.q, b.p, b.q)
            })?;
            ensure(!a.intersects(b), || format!("Z_{}/{} meets Z_{}/{}", a.p, a.q, b.p, b.q))?;
        }
    }
    Ok(format!("{} staircases with q <= 9", stairs.len()))
}

fn retract_check() -> Outcome {
    let mut r = rng(19);
    let tol = Rational::new(1, 4096);
    let mut n = 0;
    for (p, q) in [(1u64, 3u64), (2, 5), (1, 4), (3, 7)] {
        let z = leading_set(p, q).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let u = Rational::new(r.gen_range(0..=500), 1000);
            let start = TruncationParams::new(Rational::half() + u, Rational::half()).unwrap();
            let hit = retract(p, q, &start, &tol).map_err(|e| e.to_string())?;
            let d2 = z.distance_squared(hit.alpha(), hit.beta());
            ensure(z.contains(&hit) || d2 <= &tol * &tol * 2, || {
                format!("{p}/{q}: ({}, {}) is off the staircase", hit.alpha(), hit.beta())
            })?;
            let again = retract(p, q, &hit, &tol).map_err(|e| e.to_string())?;
            let moved = Rational::max_of(&(again.alpha() - hit.alpha()).abs(), &(again.beta() - hit.beta()).abs());
            ensure(moved <= tol, || format!("{p}/{q}: second retraction moved by {moved}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} retractions"))
}

/// Random degree-one lift with `k` interior breakpoints.
pub fn random_lift(r: &mut impl Rng, k: usize, den: i64) -> Lift {
    let mut xs: Vec<i64> = (0..k).map(|_| r.gen_range(1..den)).collect();
    xs.sort_unstable();
    xs.dedup();
    let mut breakpoints = vec![Rational::zero()];
    breakpoints.extend(xs.iter().map(|&x| Rational::new(x, den)));
    breakpoints.push(Rational::one());
    let y0 = Rational::new(r.gen_range(-den..=den), den);
    let mut values = vec![y0.clone()];
    values.extend(xs.iter().map(|_| Rational::new(r.gen_range(-den..=2 * den), den)));
    values.push(y0 + 1);
    Lift::new(breakpoints, values, 1).expect("valid construction")
}

fn sample_points() -> Vec<Rational> {
    (0..=240).map(|k| Rational::new(k, 240)).collect()
}

fn lift_hulls() -> Outcome {
    let mut r = rng(23);
    for case in 0..60 {
        let f = random_lift(&mut r, 5, 60);
        let (lo, up) = (lower_map(&f), upper_map(&f));
        ensure(lo.is_monotone() && up.is_monotone(), || format!("case {case}: hull not monotone"))?;
        for x in sample_points() {
            let (l, v, u) = (lo.eval(&x), f.eval(&x), up.eval(&x));
            ensure(l <= v && v <= u, || format!("case {case}: order fails at {x}"))?;
            if l < v {
                let eps = Rational::new(1, 1_000_000);
                let flat = lo.eval(&(&x - &eps)) == l && lo.eval(&(&x + &eps)) == l;
                ensure(flat, || format!("case {case}: F_l not locally constant at {x}"))?;
            }
        }
        // a pointwise larger lift on the same breakpoints
        let bumps: Vec<Rational> = f.values().iter().map(|_| Rational::new(r.gen_range(0..30), 60)).collect();
        let mut gv: Vec<Rational> = f.values().iter().zip(&bumps).map(|(v, b)| v + b).collect();
        let last = gv.len() - 1;
        gv[last] = &gv[0] + 1;
        let g = Lift::new(f.breakpoints().to_vec(), gv, 1).expect("same shape");
        let (glo, gup) = (lower_map(&g), upper_map(&g));
        for x in sample_points() {
            ensure(lo.eval(&x) <= glo.eval(&x) && up.eval(&x) <= gup.eval(&x), || {
                format!("case {case}: hulls out of order at {x}")
            })?;
        }
        let delta = Rational::new(r.gen_range(1..40), 40);
        let shifted = f.shift(&delta);
        ensure(lower_map(&shifted).sup_distance(&lo) <= delta, || format!("case {case}: F_l not 1-Lipschitz"))?;
        ensure(upper_map(&shifted).sup_distance(&up) <= delta, || format!("case {case}: F_u not 1-Lipschitz"))?;
        if f.is_monotone() {
            ensure(lo.sup_distance(&f).is_zero() && up.sup_distance(&f).is_zero(), || format!("case {case}: monotone lift differs from its hulls"))?;
        }
    }
    Ok("60 random lifts".into())
}

fn lift_translation() -> Outcome {
    let mut r = rng(29);
    for case in 0..20 {
        let f = lower_map(&random_lift(&mut r, 4, 24));
        let a = rotation_number(&f, DEFAULT_PERIOD_CAP, 1000).map_err(|e| e.to_string())?;
        let b = rotation_number(&f.shift(&Rational::one()), DEFAULT_PERIOD_CAP, 1000).map_err(|e| e.to_string())?;
        ensure(&(a.lo() + 1) == b.lo() && &(a.hi() + 1) == b.hi(), || {
            format!("case {case}: {a:?} then {b:?}")
        })?;
    }
    Ok("20 lifts".into())
}

fn continuity_report() -> Outcome {
    let mods: Vec<String> = [10usize, 20, 40]
        .iter()
        .map(|&m| sweep(m, m, 12).map(|t| format!("{m}x{m}: {}", continuity_modulus(&t))))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(format!("modulus {}", mods.join(", ")))
}

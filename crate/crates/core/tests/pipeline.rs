use rotorlab::combinatorics::over_rotation_pair;
use rotorlab::horseshoe::{h2, psi, psi_enumerated, realize_cycle_in_h2, TruncationParams};
use rotorlab::overtwist::{overtwist_permutation, OvertwistSpec};
use rotorlab::plinear::forced_cycles;
use rotorlab::tracts::{
    classify_point, leading_set, read_csv, retract, staircase_by_sweep, sweep, write_csv, Side,
};
use rotorlab::Rational;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn tp(a: Rational, b: Rational) -> TruncationParams {
    TruncationParams::new(a, b).unwrap()
}

#[test]
fn sweep_survives_a_csv_round_trip() {
    let table = sweep(6, 5, 8).unwrap();
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).unwrap();
    let back = read_csv(&buf[..]).unwrap();
    assert_eq!(back.m, 6);
    assert_eq!(back.n, 5);
    for (a, b) in table.rows.iter().zip(&back.rows) {
        assert_eq!((&a.alpha, &a.beta, &a.psi, a.converged), (&b.alpha, &b.beta, &b.psi, b.converged));
    }
    let mut again = Vec::new();
    write_csv(&back, &mut again).unwrap();
    assert_eq!(buf, again);
}

#[test]
fn forced_cycles_live_in_the_horseshoe() {
    let g = overtwist_permutation(&OvertwistSpec::new(1, 4, 1).unwrap());
    let forced = forced_cycles(&g, 6).unwrap();
    assert!(forced.contains(&g));
    for c in forced.iter().filter(|c| c.period() > 1) {
        let xs = realize_cycle_in_h2(c).unwrap();
        for j in 1..=c.period() {
            assert_eq!(h2(&xs[j - 1]).unwrap(), xs[c.apply(j) - 1], "{:?}", c.image());
        }
        assert!(over_rotation_pair(c).unwrap().number() >= r(1, 4));
    }
}

#[test]
fn sweep_replay_visits_the_same_corners() {
    for (p, q) in rotorlab::combinatorics::coprime_fractions_below_half(9) {
        assert_eq!(staircase_by_sweep(p, q).unwrap(), leading_set(p, q).unwrap(), "{p}/{q}");
    }
}

#[test]
fn atlas_and_enumeration_agree() {
    for (a, b) in [(r(1, 1), r(1, 2)), (r(11, 13), r(5, 13)), (r(9, 10), r(1, 5)), (r(7, 10), r(1, 10)), (r(3, 5), r(1, 20))] {
        let p = tp(a, b);
        assert_eq!(psi(&p, 8).value, psi_enumerated(&p, 8).unwrap(), "{p:?}");
    }
}

#[test]
fn retraction_lands_in_the_thin_tract() {
    let on = tp(r(834, 1000), r(3, 10));
    assert_eq!(psi(&on, 16).value, r(3, 7));
    assert_eq!(retract(3, 7, &on, &r(1, 4096)).unwrap(), on);

    let off = tp(r(833, 1000), r(3, 10));
    assert_eq!(classify_point(3, 7, &off, 16).unwrap().side, Side::InG);
    let back = retract(3, 7, &off, &r(1, 4096)).unwrap();
    assert!(back.alpha() - off.alpha() < r(1, 1000));
    assert_eq!(psi(&back, 16).value, r(3, 7));
    assert!(matches!(retract(4, 9, &on, &r(1, 4096)), Err(rotorlab::Error::BelowTract { p: 4, q: 9 })));
}

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::horseshoe::{psi, TruncationParams};
use crate::rational::Rational;

pub const CSV_HEADER: &str = "alpha_num,alpha_den,beta_num,beta_den,psi_num,psi_den,converged";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    /// Column index `i` (along `α`).
    pub i: usize,
    /// Row index `j` (along `β`).
    pub j: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub psi: Rational,
    pub converged: bool,
}

/// `ψ̂` on the grid `α_i = 1/2 + i/(2(m-1))`, `β_j = j/(2(n-1))`, stored
/// row by row (`β` outer, `α` inner).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepTable {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn get(&self, i: usize, j: usize) -> &SweepRow {
        &self.rows[j * self.m + i]
    }
}

pub fn grid_point(i: usize, j: usize, m: usize, n: usize) -> (Rational, Rational) {
    (
        Rational::half() + Rational::new(i as i64, 2 * (m as i64 - 1)),
        Rational::new(j as i64, 2 * (n as i64 - 1)),
    )
}

/// Evaluates in parallel on the current rayon pool; the table order does
/// not depend on scheduling.
pub fn sweep(m: usize, n: usize, cap: usize) -> Result<SweepTable> {
    if m < 2 || n < 2 {
        return Err(Error::Config(format!("grid must be at least 2x2, got {m}x{n}")));
    }
    let rows = (0..m * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % m, k / m);
            let (alpha, beta) = grid_point(i, j, m, n);
            let params = TruncationParams::new(alpha.clone(), beta.clone()).expect("grid inside the rectangle");
            let v = psi(&params, cap);
            SweepRow { i, j, alpha, beta, converged: v.converged(), psi: v.value }
        })
        .collect();
    Ok(SweepTable { m, n, rows })
}

pub fn write_csv<W: Write>(table: &SweepTable, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.alpha.numer(),
            r.alpha.denom(),
            r.beta.numer(),
            r.beta.denom(),
            r.psi.numer(),
            r.psi.denom(),
            r.converged
        )?;
    }
    Ok(())
}

fn parse_frac(num: &str, den: &str) -> Result<Rational> {
    let n: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad integer {den:?}")))?;
    Rational::from_bigints(n, d)
}

/// Reads a table written by [`write_csv`]; grid indices are recovered from
/// the distinct coordinates.
pub fn read_csv<R: BufRead>(input: R) -> Result<SweepTable> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty sweep file".into()))?
        .map_err(|e| Error::Parse(e.to_string()))?;
    if header.trim() != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut raw = Vec::new();
    for line in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(Error::Parse(format!("expected 7 fields in {line:?}")));
        }
        let converged = match f[6].trim() {
            "true" => true,
            "false" => false,
            other => return Err(Error::Parse(format!("bad flag {other:?}"))),
        };
        raw.push((parse_frac(f[0], f[1])?, parse_frac(f[2], f[3])?, parse_frac(f[4], f[5])?, converged));
    }
    let alphas: BTreeSet<_> = raw.iter().map(|r| r.0.clone()).collect();
    let betas: BTreeSet<_> = raw.iter().map(|r| r.1.clone()).collect();
    let (m, n) = (alphas.len(), betas.len());
    if m * n != raw.len() || m < 2 || n < 2 {
        return Err(Error::Parse(format!("{} rows do not form a grid", raw.len())));
    }
    let alphas: Vec<_> = alphas.into_iter().collect();
    let betas: Vec<_> = betas.into_iter().collect();
    let mut rows: Vec<SweepRow> = raw
        .into_iter()
        .map(|(alpha, beta, psi, converged)| SweepRow {
            i: alphas.binary_search(&alpha).unwrap(),
            j: betas.binary_search(&beta).unwrap(),
            alpha,
            beta,
            psi,
            converged,
        })
        .collect();
    rows.sort_by_key(|r| (r.j, r.i));
    Ok(SweepTable { m, n, rows })
}

/// Whether the cells with `|ψ̂ - value| <= tol` form one 8-connected set.
pub fn level_set_connected(table: &SweepTable, value: &Rational, tol: &Rational) -> Result<bool> {
    let inside = |r: &SweepRow| (&r.psi - value).abs() <= *tol;
    let cells: BTreeSet<(usize, usize)> = table.rows.iter().filter(|r| inside(r)).map(|r| (r.i, r.j)).collect();
    let Some(&start) = cells.iter().next() else {
        return Err(Error::EmptyLevelSet);
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some((i, j)) = stack.pop() {
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (ni, nj) = (i as i64 + di, j as i64 + dj);
                if ni < 0 || nj < 0 {
                    continue;
                }
                let nb = (ni as usize, nj as usize);
                if cells.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
    }
    Ok(seen.len() == cells.len())
}

/// Largest `|ψ̂|` jump between 4-adjacent cells that are both converged.
pub fn continuity_modulus(table: &SweepTable) -> Rational {
    let mut worst = Rational::zero();
    for r in &table.rows {
        for (di, dj) in [(1, 0), (0, 1)] {
            let (ni, nj) = (r.i + di, r.j + dj);
            if ni >= table.m || nj >= table.n {
                continue;
            }
            let s = table.get(ni, nj);
            if r.converged && s.converged {
                worst = Rational::max_of(&worst, &(&r.psi - &s.psi).abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn corner_grid() {
        let t = sweep(2, 2, 16).unwrap();
        let vals: Vec<_> = t.rows.iter().map(|r| (r.alpha.clone(), r.beta.clone(), r.psi.clone())).collect();
        assert_eq!(
            vals,
            vec![
                (q(1, 2), q(0, 1), q(1, 2)),
                (q(1, 1), q(0, 1), q(0, 1)),
                (q(1, 2), q(1, 2), q(1, 2)),
                (q(1, 1), q(1, 2), q(1, 2)),
            ]
        );
        assert!(sweep(1, 5, 16).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let t = sweep(5, 4, 8).unwrap();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(text.lines().count(), 21);
        assert_eq!(read_csv(&buf[..]).unwrap(), t);
    }

    #[test]
    fn level_sets() {
        let t = sweep(12, 12, 8).unwrap();
        assert!(level_set_connected(&t, &q(0, 1), &q(1, 50)).unwrap());
        assert_eq!(level_set_connected(&t, &q(9, 10), &q(1, 50)), Err(Error::EmptyLevelSet));
    }

    #[test]
    fn disconnected_level_set_detected() {
        let mk = |i, j, v| SweepRow { i, j, alpha: q(0, 1), beta: q(0, 1), psi: v, converged: true };
        let t = SweepTable {
            m: 3,
            n: 1,
            rows: vec![mk(0, 0, q(1, 3)), mk(1, 0, q(1, 2)), mk(2, 0, q(1, 3))],
        };
        assert!(!level_set_connected(&t, &q(1, 3), &q(0, 1)).unwrap());
    }
}

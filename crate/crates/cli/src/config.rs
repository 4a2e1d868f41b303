use std::path::{Path, PathBuf};

use rotorlab::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub period_cap: usize,
    pub grid: (usize, usize),
    pub tolerance: Rational,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            period_cap: rotorlab::horseshoe::DEFAULT_CAP,
            grid: (50, 50),
            tolerance: Rational::new(1, 50),
            format: None,
            out: None,
        }
    }
}

/// Values given on the command line; each one overrides the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub period_cap: Option<usize>,
    pub grid: Option<(usize, usize)>,
    pub tolerance: Option<Rational>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

pub fn parse_grid(v: &str) -> Result<(usize, usize), String> {
    let (m, n) = v
        .split_once(['x', ','])
        .ok_or_else(|| format!("grid must look like 100x100, got {v:?}"))?;
    let m = m.trim().parse().map_err(|_| format!("bad grid width {m:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad grid height {n:?}"))?;
    Ok((m, n))
}

impl RunConfig {
    /// `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<RunConfig, String> {
        let mut c = RunConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", no + 1))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "cap" | "period_cap" => c.period_cap = v.parse().map_err(|_| format!("line {}: bad cap {v:?}", no + 1))?,
                "grid" => c.grid = parse_grid(v)?,
                "tol" | "tolerance" => c.tolerance = v.parse().map_err(|e| format!("line {}: {e}", no + 1))?,
                "format" => {
                    c.format = Some(match v {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        "svg" => Format::Svg,
                        _ => return Err(format!("line {}: unknown format {v:?}", no + 1)),
                    })
                }
                "out" | "output" => c.out = Some(PathBuf::from(v)),
                _ => return Err(format!("line {}: unknown key {k:?}", no + 1)),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        RunConfig::parse(&text)
    }

    pub fn merge(mut self, o: Overrides) -> Result<RunConfig, String> {
        if let Some(v) = o.period_cap {
            self.period_cap = v;
        }
        if let Some(v) = o.grid {
            self.grid = v;
        }
        if let Some(v) = o.tolerance {
            self.tolerance = v;
        }
        if o.format.is_some() {
            self.format = o.format;
        }
        if o.out.is_some() {
            self.out = o.out;
        }
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), String> {
        if self.period_cap < 2 {
            return Err(format!("cap must be at least 2, got {}", self.period_cap));
        }
        if self.grid.0 < 2 || self.grid.1 < 2 {
            return Err(format!("grid must be at least 2x2, got {}x{}", self.grid.0, self.grid.1));
        }
        if !self.tolerance.is_positive() {
            return Err(format!("tolerance must be positive, got {}", self.tolerance));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file = RunConfig::parse("cap = 8\n# comment\ngrid = 10x12\ntol = 1/100\n").unwrap();
        assert_eq!(file.period_cap, 8);
        assert_eq!(file.grid, (10, 12));
        let merged = file
            .merge(Overrides { period_cap: Some(20), ..Default::default() })
            .unwrap();
        assert_eq!(merged.period_cap, 20);
        assert_eq!(merged.grid, (10, 12));
        assert_eq!(merged.tolerance, Rational::new(1, 100));
    }

    #[test]
    fn bad_files_are_rejected() {
        assert!(RunConfig::parse("cap 8").is_err());
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("grid = 10").is_err());
        assert!(RunConfig::default().merge(Overrides { period_cap: Some(1), ..Default::default() }).is_err());
        assert!(RunConfig::default()
            .merge(Overrides { tolerance: Some(Rational::zero()), ..Default::default() })
            .is_err());
    }
}

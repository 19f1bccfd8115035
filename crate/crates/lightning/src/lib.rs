//! File formats, parallel sweeps and command-line plumbing around
//! [`lightning_core`].

pub mod approx_json;
pub mod records;

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use lightning_core::bench::{run_cell, ConvergenceRecord, SweepSetup};
use lightning_core::domain::{make_sector, PrototypeSpec};
use lightning_core::laplace::{make_polygon, CornerDomain};
use lightning_core::{Complex64, Error};
use rayon::prelude::*;

/// Environment variable capping the worker count of parallel sweeps.
pub const THREADS_ENV: &str = "LP_THREADS";

/// Anything that fails while reading, parsing or writing files.
#[derive(Debug)]
pub enum FormatError {
    Io(std::io::Error),
    Parse(String),
    Numeric(Error),
}

impl FormatError {
    pub fn new(msg: impl Into<String>) -> Self {
        FormatError::Parse(msg.into())
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "io error: {e}"),
            FormatError::Parse(m) => write!(f, "format error: {m}"),
            FormatError::Numeric(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError::Io(e)
    }
}

impl From<csv::Error> for FormatError {
    fn from(e: csv::Error) -> Self {
        FormatError::Parse(e.to_string())
    }
}

impl From<Error> for FormatError {
    fn from(e: Error) -> Self {
        FormatError::Numeric(e)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// `re,im` with 17 significant digits each.
pub fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", fmt17(z.re), fmt17(z.im))
}

/// Parses `re,im`, `re` or `re+imi`-free forms: a bare number or a comma pair.
pub fn parse_complex(s: &str) -> Result<Complex64, FormatError> {
    let bad = || FormatError::new(format!("cannot parse complex number {s:?}; use re,im"));
    let mut it = s.split(',').map(str::trim);
    let re: f64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match it.next() {
        Some(t) => t.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Reads a polygon given as a JSON array of `[re, im]` pairs.
pub fn read_polygon(path: &Path) -> Result<CornerDomain, FormatError> {
    let text = std::fs::read_to_string(path)?;
    parse_polygon(&text)
}

pub fn parse_polygon(text: &str) -> Result<CornerDomain, FormatError> {
    let pts: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| FormatError::new(format!("polygon: {e}")))?;
    let verts: Vec<Complex64> = pts.iter().map(|p| Complex64::new(p[0], p[1])).collect();
    Ok(make_polygon(&verts)?)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| FormatError::Io(e.error))?;
    Ok(())
}

/// Worker count from `LP_THREADS`, or `None` for the machine default.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

fn pool() -> Result<rayon::ThreadPool, FormatError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| FormatError::new(e.to_string()))
}

/// One sweep cell to be run by [`sweep_parallel`].
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub spec: PrototypeSpec,
    pub beta: f64,
    pub sigma: f64,
    pub n1: usize,
}

/// Runs independent cells in parallel and returns their records sorted by
/// `(sigma, N1)`, with wall-clock times filled in.
pub fn sweep_parallel(
    cells: &[Cell],
    setup: SweepSetup,
) -> Result<Vec<ConvergenceRecord>, (Cell, Error)> {
    let run = || {
        cells
            .par_iter()
            .map(|cell| {
                let domain = make_sector(cell.beta, 1.0).map_err(|e| (*cell, e))?;
                let t = Instant::now();
                let mut r = run_cell(&cell.spec, &domain, cell.sigma, cell.n1, setup)
                    .map_err(|e| (*cell, e))?;
                r.wall_time = t.elapsed();
                Ok(r)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let mut out = match pool() {
        Ok(p) => p.install(run)?,
        Err(_) => run()?,
    };
    out.sort_by(|a, b| a.sigma.total_cmp(&b.sigma).then(a.n1.cmp(&b.n1)));
    Ok(out)
}

/// `N1` list from `a,b,c` or an inclusive range `a..b`.
pub fn parse_n1_list(s: &str) -> Result<Vec<usize>, FormatError> {
    let bad = || FormatError::new(format!("cannot parse N1 list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b < a {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if v.is_empty() || v.windows(2).any(|w| w[1] <= w[0]) || v[0] == 0 {
        return Err(FormatError::new("N1 list must be positive and increasing"));
    }
    Ok(v)
}

/// Comma-separated reals.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, FormatError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| FormatError::new(format!("cannot parse number {t:?}")))
        })
        .collect()
}

/// `opt`, `<k>opt` (a multiple of `σ_opt`) or a plain positive number.
pub fn parse_sigma(s: &str, sigma_opt: f64) -> Result<f64, FormatError> {
    let t = s.trim();
    let bad = || FormatError::new(format!("cannot parse sigma {s:?}"));
    let v = if let Some(k) = t.strip_suffix("opt") {
        let k = k.trim_end_matches('*');
        let f: f64 = if k.is_empty() {
            1.0
        } else {
            k.parse().map_err(|_| bad())?
        };
        f * sigma_opt
    } else {
        t.parse().map_err(|_| bad())?
    };
    if v <= 0.0 || !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

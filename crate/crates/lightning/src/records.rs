//! CSV tables of convergence records.

use std::io::{Read, Write};
use std::time::Duration;

use lightning_core::bench::ConvergenceRecord;
use lightning_core::Complex64;

use crate::{fmt17, FormatError};

pub const HEADER: [&str; 10] = [
    "alpha",
    "beta",
    "sigma",
    "N1",
    "N2",
    "N",
    "sup_err",
    "argmax_re",
    "argmax_im",
    "wall_ms",
];

/// Writes the records with 17 significant digits; `wall_ms` is the only
/// column that varies between identical runs.
pub fn write_records<W: Write>(out: W, records: &[ConvergenceRecord]) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.write_record([
            fmt17(r.alpha),
            fmt17(r.beta),
            fmt17(r.sigma),
            r.n1.to_string(),
            r.n2.to_string(),
            r.n.to_string(),
            fmt17(r.sup_err),
            fmt17(r.argmax.re),
            fmt17(r.argmax.im),
            format!("{:.3}", r.wall_time.as_secs_f64() * 1e3),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<ConvergenceRecord>, FormatError> {
    let mut rd = csv::Reader::from_reader(input);
    if rd.headers()?.iter().ne(HEADER) {
        return Err(FormatError::new("unexpected CSV header"));
    }
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let f = |i: usize| -> Result<f64, FormatError> {
            row[i].parse().map_err(|_| {
                FormatError::new(format!("bad number {:?} in column {}", &row[i], HEADER[i]))
            })
        };
        let u = |i: usize| -> Result<usize, FormatError> {
            row[i].parse().map_err(|_| {
                FormatError::new(format!("bad integer {:?} in column {}", &row[i], HEADER[i]))
            })
        };
        out.push(ConvergenceRecord {
            alpha: f(0)?,
            beta: f(1)?,
            sigma: f(2)?,
            n1: u(3)?,
            n2: u(4)?,
            n: u(5)?,
            sup_err: f(6)?,
            argmax: Complex64::new(f(7)?, f(8)?),
            wall_time: Duration::from_secs_f64(f(9)?.max(0.0) / 1e3),
        });
    }
    Ok(out)
}

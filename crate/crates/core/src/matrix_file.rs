//! Plain-text complex matrices.
//!
//! ```text
//! # comments and blank lines are skipped
//! 2
//! 1,0   0,0
//! 0,0   0.5,-0.25
//! ```
//!
//! The first content line is `N`; then `N` rows of `N` whitespace-separated
//! `re,im` pairs, row-major.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::seqspace::C64;

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty matrix file".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: header_line,
        msg: format!("expected dimension, got {header:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: header_line,
            msg: "dimension must be at least 1".into(),
        });
    }

    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, content) in lines {
        if rows == n {
            return Err(Error::Parse {
                line,
                msg: format!("more than {n} rows"),
            });
        }
        let row: Vec<C64> = content
            .split_whitespace()
            .map(|tok| parse_entry(tok, line))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
        entries.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {n} rows, found {rows}"),
        });
    }
    Ok(CMatrix::from_row_slice(n, n, &entries))
}

fn parse_entry(tok: &str, line: usize) -> Result<C64> {
    let bad = || Error::Parse {
        line,
        msg: format!("bad entry {tok:?}, expected re,im"),
    };
    let (re, im) = tok.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(Error::Parse {
            line,
            msg: format!("non-finite entry {tok:?}"),
        });
    }
    Ok(C64::new(re, im))
}

/// Round-trips exactly through [`parse_matrix`].
pub fn write_matrix(m: &CMatrix) -> String {
    let mut out = format!("{}\n", m.nrows());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:?},{:?}", m[(i, j)].re, m[(i, j)].im))
            .collect();
        writeln!(out, "{}", row.join(" ")).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let m = parse_matrix("# diag\n2\n1,0 0,0 # first row\n\n0,0 0.5,-0.25\n").unwrap();
        assert_eq!(m[(1, 1)], C64::new(0.5, -0.25));
        assert_eq!(m[(0, 0)], C64::new(1.0, 0.0));
    }

    #[test]
    fn round_trip() {
        let m = CMatrix::from_fn(3, 3, |i, j| C64::new(i as f64 / 3.0, -(j as f64) * 0.1));
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_matrix("2\n1,0 0,0\n0,0 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_matrix("2\n1,0 0,0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("1\n1,0 2,0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix(""), Err(Error::Parse { .. })));
    }
}

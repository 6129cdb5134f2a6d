//! Plain-text matrix files (`DMAT1`).
//!
//! Layout: a header line `DMAT1 <rows> <cols>`, then `rows` lines each
//! holding `cols` whitespace-separated complex entries written as
//! `(<re>,<im>)`. Floats use Rust's shortest round-trip decimal form, so
//! `parse(render(m)) == m` bit-for-bit for all finite doubles.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::linalg::{C64, CMatrix};
use crate::{Error, Result};

/// Renders a matrix to the text format.
pub fn render(m: &CMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "DMAT1 {} {}", m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if c > 0 {
                out.push(' ');
            }
            let z = m[(r, c)];
            let _ = write!(out, "({},{})", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

/// Parses the text format; errors carry 1-based line numbers.
pub fn parse(text: &str) -> Result<CMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("DMAT1") {
        return Err(Error::Parse {
            line: 1,
            message: "expected header \"DMAT1 <rows> <cols>\"".into(),
        });
    }
    let mut dim = |name: &str| -> Result<usize> {
        fields
            .next()
            .and_then(|t| t.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("bad {name} in header"),
            })
    };
    let rows = dim("row count")?;
    let cols = dim("column count")?;
    let mut entries: Vec<C64> = Vec::with_capacity(rows * cols);
    let mut body_lines = 0usize;
    let mut last_lineno = 1usize;
    for (lineno, line) in lines {
        last_lineno = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        body_lines += 1;
        if body_lines > rows {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("more than {rows} data rows"),
            });
        }
        let mut row_entries = 0usize;
        for token in line.split_whitespace() {
            entries.push(parse_entry(token, lineno + 1)?);
            row_entries += 1;
        }
        if row_entries != cols {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected {cols} entries, found {row_entries}"),
            });
        }
    }
    if body_lines != rows {
        return Err(Error::Parse {
            line: last_lineno + 1,
            message: format!("expected {rows} data rows, found {body_lines}"),
        });
    }
    CMatrix::new(rows, cols, entries).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })
}

fn parse_entry(token: &str, line: usize) -> Result<C64> {
    let fail = |message: String| Error::Parse { line, message };
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| fail(format!("entry \"{token}\" is not of the form (re,im)")))?;
    let (re, im) = inner
        .split_once(',')
        .ok_or_else(|| fail(format!("entry \"{token}\" is missing a comma")))?;
    let re: f64 = re
        .parse()
        .map_err(|_| fail(format!("bad real part \"{re}\"")))?;
    let im: f64 = im
        .parse()
        .map_err(|_| fail(format!("bad imaginary part \"{im}\"")))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(fail(format!("non-finite entry \"{token}\"")));
    }
    Ok(C64::new(re, im))
}

/// Writes a matrix to a file.
pub fn write_file(path: &Path, m: &CMatrix) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(render(m).as_bytes())?;
    f.flush()?;
    Ok(())
}

/// Reads a matrix from a file.
pub fn read_file(path: &Path) -> Result<CMatrix> {
    let f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut text = String::new();
    for line in f.lines() {
        text.push_str(&line?);
        text.push('\n');
    }
    parse(&text)
}

//! Matrix Market readers and writers.
//!
//! Matrices are written in coordinate format (`%%MatrixMarket matrix
//! coordinate real general`), vectors in array format (`%%MatrixMarket matrix
//! array real general`, one column). The reader accepts both formats plus the
//! `symmetric` qualifier. Values are printed with Rust's shortest
//! round-trip formatting, so write/read round trips are bitwise exact.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{DenseMatrix, Vector};
use crate::error::{Error, Result};

const HEADER_PREFIX: &str = "%%MatrixMarket";

/// Write `m` in coordinate format.
pub fn write_matrix<W: Write>(w: &mut W, m: &DenseMatrix) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    let nnz = (0..m.rows())
        .map(|i| m.row(i).iter().filter(|&&v| v != 0.0).count())
        .sum::<usize>();
    writeln!(w, "{} {} {}", m.rows(), m.cols(), nnz)?;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v != 0.0 {
                writeln!(w, "{} {} {}", i + 1, j + 1, v)?;
            }
        }
    }
    Ok(())
}

/// Write `v` as an n-by-1 array.
pub fn write_vector<W: Write>(w: &mut W, v: &Vector) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} 1", v.len())?;
    for i in 0..v.len() {
        writeln!(w, "{}", v.get(i))?;
    }
    Ok(())
}

pub fn write_matrix_file<P: AsRef<Path>>(path: P, m: &DenseMatrix) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix(&mut w, m)
}

pub fn write_vector_file<P: AsRef<Path>>(path: P, v: &Vector) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_vector(&mut w, v)
}

struct Header {
    coordinate: bool,
    symmetric: bool,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<Header> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(HEADER_PREFIX) {
        return Err(parse_error(lineno, "missing %%MatrixMarket header"));
    }
    if tokens.next() != Some("matrix") {
        return Err(parse_error(lineno, "object must be `matrix`"));
    }
    let coordinate = match tokens.next() {
        Some("coordinate") => true,
        Some("array") => false,
        other => {
            return Err(parse_error(
                lineno,
                format!("format must be coordinate or array, got {other:?}"),
            ))
        }
    };
    match tokens.next() {
        Some("real") | Some("integer") => {}
        other => {
            return Err(parse_error(
                lineno,
                format!("field must be real or integer, got {other:?}"),
            ))
        }
    }
    let symmetric = match tokens.next() {
        Some("general") | None => false,
        Some("symmetric") => true,
        other => {
            return Err(parse_error(
                lineno,
                format!("qualifier must be general or symmetric, got {other:?}"),
            ))
        }
    };
    Ok(Header {
        coordinate,
        symmetric,
    })
}

/// Read a matrix in coordinate or array format.
pub fn read_matrix<R: BufRead>(r: R) -> Result<DenseMatrix> {
    let mut lines = r.lines().enumerate();
    let (lineno, first) = loop {
        match lines.next() {
            Some((no, line)) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break (no + 1, line);
                }
            }
            None => return Err(parse_error(0, "empty file")),
        }
    };
    let header = parse_header(&first, lineno)?;

    let mut data_lines = lines.filter_map(|(no, line)| match line {
        Ok(l) => {
            let t = l.trim().to_string();
            if t.is_empty() || t.starts_with('%') {
                None
            } else {
                Some(Ok((no + 1, t)))
            }
        }
        Err(e) => Some(Err(Error::Io(e))),
    });

    let (size_lineno, size_line) = data_lines
        .next()
        .ok_or_else(|| parse_error(lineno, "missing size line"))??;
    let dims: Vec<&str> = size_line.split_whitespace().collect();

    if header.coordinate {
        if dims.len() != 3 {
            return Err(parse_error(size_lineno, "coordinate size line needs `rows cols nnz`"));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| parse_error(size_lineno, "cannot parse row count"))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| parse_error(size_lineno, "cannot parse column count"))?;
        let nnz: usize = dims[2]
            .parse()
            .map_err(|_| parse_error(size_lineno, "cannot parse nonzero count"))?;
        if rows == 0 || cols == 0 {
            return Err(parse_error(size_lineno, "dimensions must be positive"));
        }
        let mut m = DenseMatrix::zeros(rows, cols);
        let mut seen = 0usize;
        for entry in data_lines {
            let (no, line) = entry?;
            if seen == nnz {
                return Err(parse_error(no, "more entries than declared"));
            }
            let mut t = line.split_whitespace();
            let i: usize = t
                .next()
                .ok_or_else(|| parse_error(no, "missing row index"))?
                .parse()
                .map_err(|_| parse_error(no, "cannot parse row index"))?;
            let j: usize = t
                .next()
                .ok_or_else(|| parse_error(no, "missing column index"))?
                .parse()
                .map_err(|_| parse_error(no, "cannot parse column index"))?;
            let v: f64 = t
                .next()
                .ok_or_else(|| parse_error(no, "missing value"))?
                .parse()
                .map_err(|_| parse_error(no, "cannot parse value"))?;
            if i < 1 || i > rows || j < 1 || j > cols {
                return Err(parse_error(no, "index out of range"));
            }
            m.set(i - 1, j - 1, v);
            if header.symmetric && i != j {
                m.set(j - 1, i - 1, v);
            }
            seen += 1;
        }
        if seen != nnz {
            return Err(parse_error(
                size_lineno,
                format!("declared {nnz} entries, found {seen}"),
            ));
        }
        Ok(m)
    } else {
        if dims.len() != 2 {
            return Err(parse_error(size_lineno, "array size line needs `rows cols`"));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| parse_error(size_lineno, "cannot parse row count"))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| parse_error(size_lineno, "cannot parse column count"))?;
        if rows == 0 || cols == 0 {
            return Err(parse_error(size_lineno, "dimensions must be positive"));
        }
        // array format is column-major
        let mut values = Vec::with_capacity(rows * cols);
        for entry in data_lines {
            let (no, line) = entry?;
            for tok in line.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| parse_error(no, "cannot parse value"))?;
                values.push(v);
            }
        }
        if header.symmetric {
            // lower triangle stored column by column
            let expect = rows * (rows + 1) / 2;
            if rows != cols || values.len() != expect {
                return Err(parse_error(
                    size_lineno,
                    format!("symmetric array needs {expect} values, found {}", values.len()),
                ));
            }
            let mut m = DenseMatrix::zeros(rows, cols);
            let mut it = values.into_iter();
            for j in 0..cols {
                for i in j..rows {
                    let v = it.next().unwrap();
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            Ok(m)
        } else {
            if values.len() != rows * cols {
                return Err(parse_error(
                    size_lineno,
                    format!(
                        "array needs {} values, found {}",
                        rows * cols,
                        values.len()
                    ),
                ));
            }
            let mut m = DenseMatrix::zeros(rows, cols);
            let mut it = values.into_iter();
            for j in 0..cols {
                for i in 0..rows {
                    let v = it.next().unwrap();
                    if v != 0.0 {
                        m.set(i, j, v);
                    }
                }
            }
            Ok(m)
        }
    }
}

/// Read a vector: any matrix file with a single column (or single row).
pub fn read_vector<R: BufRead>(r: R) -> Result<Vector> {
    let m = read_matrix(r)?;
    if m.cols() == 1 {
        Ok(Vector::from_vec((0..m.rows()).map(|i| m.get(i, 0)).collect()))
    } else if m.rows() == 1 {
        Ok(Vector::from_vec(m.row(0).to_vec()))
    } else {
        Err(Error::DimensionMismatch {
            expected: 1,
            got: m.cols(),
        })
    }
}

pub fn read_matrix_file<P: AsRef<Path>>(path: P) -> Result<DenseMatrix> {
    read_matrix(BufReader::new(File::open(path)?))
}

pub fn read_vector_file<P: AsRef<Path>>(path: P) -> Result<Vector> {
    read_vector(BufReader::new(File::open(path)?))
}

//! Matrix Market I/O.
//!
//! Matrices use the coordinate format (`real`, `general` or `symmetric`;
//! symmetric input is expanded to full storage on read). Vectors use the
//! array format on write; on read either the array format or plain
//! one-value-per-line text is accepted. Values are written with 17
//! significant digits so a write/read round trip reproduces every `f64`
//! bit for bit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Banner {
    coordinate: bool,
    symmetric: bool,
}

fn parse_banner(line: &str, lineno: usize) -> Result<Banner> {
    let mut words = line.split_whitespace();
    if words.next() != Some("%%MatrixMarket") {
        return Err(parse_err(lineno, "missing %%MatrixMarket banner"));
    }
    if words.next() != Some("matrix") {
        return Err(parse_err(lineno, "banner object must be 'matrix'"));
    }
    let coordinate = match words.next() {
        Some("coordinate") => true,
        Some("array") => false,
        _ => return Err(parse_err(lineno, "format must be 'coordinate' or 'array'")),
    };
    match words.next() {
        Some("real") | Some("integer") => {}
        _ => return Err(parse_err(lineno, "field must be 'real' or 'integer'")),
    }
    let symmetric = match words.next() {
        Some("general") => false,
        Some("symmetric") => true,
        _ => {
            return Err(parse_err(
                lineno,
                "symmetry must be 'general' or 'symmetric'",
            ))
        }
    };
    Ok(Banner {
        coordinate,
        symmetric,
    })
}

/// Read a square sparse matrix from a Matrix Market coordinate file.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<SparseMatrix> {
    let file = File::open(path.as_ref())?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    let (lineno, banner_line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file"))
        .and_then(|(i, r)| Ok((i + 1, r?)))?;
    let banner = parse_banner(&banner_line, lineno)?;
    if !banner.coordinate {
        return Err(parse_err(
            lineno,
            "expected coordinate format for a sparse matrix",
        ));
    }

    let mut dims: Option<(usize, usize, usize)> = None;
    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
    let mut entries_read = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        match dims {
            None => {
                let mut w = text.split_whitespace();
                let rows: usize = w
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing row count"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "cannot parse row count"))?;
                let cols: usize = w
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing column count"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "cannot parse column count"))?;
                let nnz: usize = w
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing entry count"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "cannot parse entry count"))?;
                if rows != cols {
                    return Err(Error::NotSquare { rows, cols });
                }
                if rows == 0 {
                    return Err(parse_err(lineno, "dimension must be >= 1"));
                }
                triplets.reserve(nnz);
                dims = Some((rows, cols, nnz));
            }
            Some((n, _, nnz)) => {
                if entries_read >= nnz {
                    return Err(parse_err(lineno, "more entries than declared"));
                }
                entries_read += 1;
                let mut w = text.split_whitespace();
                let i: usize = w
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing row index"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "cannot parse row index"))?;
                let j: usize = w
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing column index"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "cannot parse column index"))?;
                let v: f64 = w
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing value"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "cannot parse value"))?;
                if i < 1 || i > n || j < 1 || j > n {
                    return Err(parse_err(lineno, format!("index ({i}, {j}) out of range")));
                }
                triplets.push((i - 1, j - 1, v));
                if banner.symmetric && i != j {
                    triplets.push((j - 1, i - 1, v));
                }
            }
        }
    }
    let (n, _, nnz) = dims.ok_or_else(|| parse_err(0, "missing dimension line"))?;
    if entries_read != nnz {
        return Err(parse_err(
            0,
            format!("declared {nnz} entries, found {entries_read}"),
        ));
    }
    SparseMatrix::from_triplets(n, &triplets)
}

/// Write a square sparse matrix as Matrix Market coordinate / real / general.
pub fn write_matrix_market(a: &SparseMatrix, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.n(), a.n(), a.nnz())?;
    for (i, j, v) in a.iter() {
        writeln!(w, "{} {} {:.16e}", i + 1, j + 1, v)?;
    }
    w.flush()?;
    Ok(())
}

/// Write a dense vector as Matrix Market array / real / general (n x 1).
pub fn write_vector_market(v: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} 1", v.len())?;
    for x in v {
        writeln!(w, "{x:.16e}")?;
    }
    w.flush()?;
    Ok(())
}

/// Read a dense vector from either a Matrix Market array file or plain text
/// with one value per line.
pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let file = File::open(path.as_ref())?;
    let reader = BufReader::new(file);
    let mut banner: Option<Banner> = None;
    let mut expected: Option<usize> = None;
    let mut values = Vec::new();
    let mut first_content = true;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let text = line.trim();
        if first_content && text.starts_with("%%MatrixMarket") {
            let b = parse_banner(text, lineno)?;
            if b.coordinate {
                return Err(parse_err(lineno, "expected array format for a vector"));
            }
            banner = Some(b);
            first_content = false;
            continue;
        }
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        first_content = false;
        if banner.is_some() && expected.is_none() {
            let mut w = text.split_whitespace();
            let rows: usize = w
                .next()
                .ok_or_else(|| parse_err(lineno, "missing row count"))?
                .parse()
                .map_err(|_| parse_err(lineno, "cannot parse row count"))?;
            let cols: usize = w
                .next()
                .ok_or_else(|| parse_err(lineno, "missing column count"))?
                .parse()
                .map_err(|_| parse_err(lineno, "cannot parse column count"))?;
            if cols != 1 {
                return Err(parse_err(lineno, "vector file must have one column"));
            }
            expected = Some(rows);
            values.reserve(rows);
            continue;
        }
        let v: f64 = text
            .parse()
            .map_err(|_| parse_err(lineno, format!("cannot parse value '{text}'")))?;
        values.push(v);
    }
    if let Some(nrows) = expected {
        if values.len() != nrows {
            return Err(parse_err(
                0,
                format!("declared {} values, found {}", nrows, values.len()),
            ));
        }
    }
    if values.is_empty() {
        return Err(parse_err(0, "no values found"));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn read_identity() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("eye.mtx");
        std::fs::write(
            &path,
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n2 2 1.0\n",
        )
        .unwrap();
        let a = read_matrix_market(&path).unwrap();
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.get(0, 0), 1.0);
        assert_eq!(a.get(1, 1), 1.0);
    }

    #[test]
    fn missing_banner_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.mtx");
        std::fs::write(&path, "2 2 1\n1 1 1.0\n").unwrap();
        assert!(matches!(
            read_matrix_market(&path),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn non_square_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rect.mtx");
        std::fs::write(
            &path,
            "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n",
        )
        .unwrap();
        assert!(matches!(
            read_matrix_market(&path),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn symmetric_expanded() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sym.mtx");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "%%MatrixMarket matrix coordinate real symmetric").unwrap();
        writeln!(f, "2 2 2").unwrap();
        writeln!(f, "1 1 4.0").unwrap();
        writeln!(f, "2 1 -1.0").unwrap();
        drop(f);
        let a = read_matrix_market(&path).unwrap();
        assert_eq!(a.get(0, 1), -1.0);
        assert_eq!(a.get(1, 0), -1.0);
        assert_eq!(a.get(0, 0), 4.0);
    }

    #[test]
    fn entry_count_mismatch_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("short.mtx");
        std::fs::write(
            &path,
            "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1.0\n2 2 1.0\n",
        )
        .unwrap();
        assert!(matches!(
            read_matrix_market(&path),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn benchmark_matrix_roundtrip_entrywise_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.mtx");
        let p = crate::problem::gen_example1(10, 4.0).unwrap();
        write_matrix_market(p.a(), &path).unwrap();
        let back = read_matrix_market(&path).unwrap();
        assert_eq!(back.n(), 100);
        assert_eq!(back.max_abs_diff(p.a()), 0.0);
    }

    #[test]
    fn vector_roundtrip_and_plain_text() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.mtx");
        let v = vec![1.5, -2.25, 1e-17, 3.0];
        write_vector_market(&v, &path).unwrap();
        assert_eq!(read_vector(&path).unwrap(), v);

        let plain = dir.path().join("q.txt");
        std::fs::write(&plain, "1.5\n-2.25\n").unwrap();
        assert_eq!(read_vector(&plain).unwrap(), vec![1.5, -2.25]);
    }
}

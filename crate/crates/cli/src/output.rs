//! Serialization helpers and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::CliResult;

pub fn to_json<S: Serialize>(value: &S) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Writes a header and rows as CSV.
pub fn to_csv<R, I>(header: &[String], rows: I) -> CliResult<String>
where
    R: IntoIterator<Item = String>,
    I: IntoIterator<Item = R>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

/// Writes `body` to `path` through a temporary file in the same directory,
/// or to stdout when no path is given.
pub fn emit(path: Option<&Path>, body: &str) -> CliResult<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_atomic_write() {
        let body = to_csv(
            &["a".to_string(), "b".to_string()],
            vec![vec!["1".to_string(), "x,y".to_string()]],
        )
        .unwrap();
        assert_eq!(body, "a,b\n1,\"x,y\"\n");
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit(Some(&path), "first").unwrap();
        emit(Some(&path), &body).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), body);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(emit(Some(&dir.path().join("missing/out.csv")), "x").is_err());
    }
}

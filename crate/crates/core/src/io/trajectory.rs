use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::io::{fmt_real, write_text};
use crate::trajectory::Trajectory;

fn sniff_delimiter(text: &str) -> u8 {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    b",\t;"
        .iter()
        .copied()
        .find(|d| first.as_bytes().contains(d))
        .unwrap_or(b',')
}

/// Parses delimiter-separated samples: one row per time sample, `#` comment
/// lines, an optional non-numeric header row. The delimiter (`,`, tab or
/// `;`) is taken from the first data line. `origin` only labels errors.
pub fn parse_trajectory(text: &str, origin: &Path) -> Result<Trajectory> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(sniff_delimiter(text))
        .comment(Some(b'#'))
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    let mut seen_header = false;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(origin, line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if rows.is_empty() && !seen_header && width.is_none() => {
                seen_header = true;
                width = Some(record.len());
                continue;
            }
            Err(_) => {
                let bad = record.iter().find(|c| c.parse::<f64>().is_err()).unwrap_or("");
                return Err(Error::parse(origin, line, format!("non-numeric value '{bad}'")));
            }
        };
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::parse(origin, line, format!("non-finite value {v}")));
        }
        match width {
            Some(w) if w != values.len() => {
                return Err(Error::parse(
                    origin,
                    line,
                    format!("expected {w} columns, found {}", values.len()),
                ));
            }
            _ => width = Some(values.len()),
        }
        rows.push(values);
    }
    if rows.len() < 2 {
        return Err(Error::parse(
            origin,
            0,
            format!("need at least 2 samples, found {}", rows.len()),
        ));
    }
    let n = width.unwrap_or(0);
    Trajectory::new(DMatrix::from_fn(rows.len(), n, |r, c| rows[r][c]))
        .map_err(|e| Error::parse(origin, 0, e.to_string()))
}

pub fn read_trajectory(path: impl AsRef<Path>) -> Result<Trajectory> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trajectory(&text, path)
}

/// Comma-separated, shortest round-trip representation of every value.
pub fn format_trajectory(traj: &Trajectory, header: Option<&[&str]>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        out.push_str(&h.join(","));
        out.push('\n');
    }
    for t in 0..traj.len() {
        let row: Vec<String> = traj.row(t).into_iter().map(fmt_real).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_trajectory(traj: &Trajectory, path: impl AsRef<Path>, header: Option<&[&str]>) -> Result<()> {
    write_text(path.as_ref(), &format_trajectory(traj, header))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Trajectory> {
        parse_trajectory(s, Path::new("mem.csv"))
    }

    #[test]
    fn plain_rows() {
        let t = parse("0,0\n1,1\n").unwrap();
        assert_eq!(t, Trajectory::from_rows(&[[0.0, 0.0], [1.0, 1.0]]).unwrap());
    }

    #[test]
    fn header_comments_and_delimiters() {
        let mut text = String::from("# recorded end effector\nx,y,z\n");
        for i in 0..100 {
            text.push_str(&format!("{i},{},{}\n", i * 2, -i));
        }
        let t = parse(&text).unwrap();
        assert_eq!((t.len(), t.dim()), (100, 3));
        let tabbed = parse("a\tb\n1\t2\n3\t4.5\n").unwrap();
        assert_eq!(tabbed.row(1), vec![3.0, 4.5]);
        let semi = parse("1;2\n3;4\n").unwrap();
        assert_eq!(semi.row(0), vec![1.0, 2.0]);
    }

    #[test]
    fn ragged_names_line() {
        let err = parse("0,0\n1,1\n2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_numeric_and_short() {
        match parse("0,0\n1,abc\n").unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("abc"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("x,y\n1,2\n").is_err());
        assert!(parse("1,nan\n2,3\n").is_err());
    }

    #[test]
    fn format_round_trips() {
        let t = Trajectory::from_rows(&[[0.1, -1e-20], [1.0 / 3.0, 12345.678]]).unwrap();
        let text = format_trajectory(&t, Some(&["x", "y"]));
        assert!(text.starts_with("x,y\n"));
        assert_eq!(parse(&text).unwrap(), t);
    }
}

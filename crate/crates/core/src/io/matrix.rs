use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{fmt_real, write_text, DataFormat};
use crate::metrics::{DistanceMatrix, MetricKind};

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    metric: MetricKind,
    labels: Vec<String>,
    /// Row-major.
    values: Vec<f64>,
}

/// CSV: the top-left cell holds the metric name, the rest of the first row
/// and column hold the labels.
pub fn format_distance_matrix_csv(d: &DistanceMatrix) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![d.metric().name().to_string()];
    header.extend(d.labels().iter().cloned());
    w.write_record(&header).map_err(|e| Error::Format(e.to_string()))?;
    for (i, label) in d.labels().iter().enumerate() {
        let mut row = vec![label.clone()];
        row.extend((0..d.len()).map(|j| fmt_real(d.get(i, j))));
        w.write_record(&row).map_err(|e| Error::Format(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn format_distance_matrix_json(d: &DistanceMatrix) -> Result<String> {
    let m = d.len();
    let doc = MatrixDoc {
        metric: d.metric(),
        labels: d.labels().to_vec(),
        values: (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| d.get(i, j)).collect(),
    };
    serde_json::to_string_pretty(&doc)
        .map(|s| s + "\n")
        .map_err(|e| Error::Format(e.to_string()))
}

pub fn write_distance_matrix(d: &DistanceMatrix, path: impl AsRef<Path>, format: DataFormat) -> Result<()> {
    let text = match format {
        DataFormat::Csv => format_distance_matrix_csv(d)?,
        DataFormat::Json => format_distance_matrix_json(d)?,
        DataFormat::Newick => {
            return Err(Error::InvalidArgument("distance matrices are written as csv or json".into()))
        }
    };
    write_text(path.as_ref(), &text)
}

pub fn parse_distance_matrix(text: &str, format: DataFormat, origin: &Path) -> Result<DistanceMatrix> {
    match format {
        DataFormat::Json => {
            let doc: MatrixDoc = serde_json::from_str(text)
                .map_err(|e| Error::parse(origin, e.line(), e.to_string()))?;
            let m = doc.labels.len();
            if doc.values.len() != m * m {
                return Err(Error::parse(
                    origin,
                    0,
                    format!("{} values for {m} labels", doc.values.len()),
                ));
            }
            DistanceMatrix::new(DMatrix::from_row_slice(m, m, &doc.values), doc.metric, doc.labels)
        }
        DataFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(text.as_bytes());
            let mut records = reader.records();
            let header = records
                .next()
                .ok_or_else(|| Error::parse(origin, 1, "empty matrix file"))?
                .map_err(|e| Error::parse(origin, 1, e.to_string()))?;
            let metric: MetricKind = header
                .get(0)
                .unwrap_or("")
                .parse()
                .map_err(|e: Error| Error::parse(origin, 1, e.to_string()))?;
            let labels: Vec<String> = header.iter().skip(1).map(String::from).collect();
            let m = labels.len();
            let mut values = DMatrix::zeros(m, m);
            let mut count = 0;
            for (i, rec) in records.enumerate() {
                let line = i + 2;
                let rec = rec.map_err(|e| Error::parse(origin, line, e.to_string()))?;
                if i >= m {
                    return Err(Error::parse(origin, line, "more rows than labels"));
                }
                if rec.get(0) != Some(labels[i].as_str()) {
                    return Err(Error::parse(origin, line, "row label does not match column label"));
                }
                for j in 0..m {
                    let cell = rec.get(j + 1).unwrap_or("");
                    values[(i, j)] = cell
                        .parse()
                        .map_err(|_| Error::parse(origin, line, format!("bad value '{cell}'")))?;
                }
                count += 1;
            }
            if count != m {
                return Err(Error::parse(origin, count + 1, format!("expected {m} rows, found {count}")));
            }
            DistanceMatrix::new(values, metric, labels)
        }
        DataFormat::Newick => Err(Error::InvalidArgument("distance matrices are read from csv or json".into())),
    }
}

pub fn read_distance_matrix(path: impl AsRef<Path>, format: DataFormat) -> Result<DistanceMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_distance_matrix(&text, format, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DistanceMatrix {
        let v = DMatrix::from_row_slice(
            3,
            3,
            &[0.0, 0.1, 1.0 / 3.0, 0.1, 0.0, 0.7000000000000001, 1.0 / 3.0, 0.7000000000000001, 0.0],
        );
        DistanceMatrix::new(v, MetricKind::Dcor, vec!["a".into(), "b,c".into(), "d".into()]).unwrap()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let d = sample();
        let text = format_distance_matrix_csv(&d).unwrap();
        assert!(text.starts_with("dcor,a,\"b,c\",d\n"));
        assert_eq!(parse_distance_matrix(&text, DataFormat::Csv, Path::new("m.csv")).unwrap(), d);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let d = sample();
        let text = format_distance_matrix_json(&d).unwrap();
        assert!(text.contains("\"metric\": \"dcor\""));
        assert_eq!(parse_distance_matrix(&text, DataFormat::Json, Path::new("m.json")).unwrap(), d);
    }

    #[test]
    fn malformed_inputs() {
        let p = Path::new("m.csv");
        assert!(parse_distance_matrix("gmcc,a,b\na,0,0.5\n", DataFormat::Csv, p).is_err());
        assert!(parse_distance_matrix("hamming,a\na,0\n", DataFormat::Csv, p).is_err());
        assert!(parse_distance_matrix("gmcc,a,b\na,0,x\nb,0,0\n", DataFormat::Csv, p).is_err());
        assert!(parse_distance_matrix("{\"metric\":\"rv\",\"labels\":[\"a\"],\"values\":[]}", DataFormat::Json, p).is_err());
    }
}

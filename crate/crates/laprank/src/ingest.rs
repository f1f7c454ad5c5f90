//! Airline on-time performance CSV ingestion: parses origin/destination
//! city columns out of a BTS-style extract and aggregates flights into a
//! weighted, undirected airport graph.

use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to open {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to read CSV")]
    Csv(#[from] csv::Error),
    #[error("missing required column {column:?} in CSV header")]
    MissingColumn { column: String },
    #[error("no valid flight rows found")]
    NoValidRows,
    #[error("cannot aggregate an empty record sequence")]
    EmptyInput,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One flight leg, reduced to its endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightRecord {
    pub origin_city: String,
    pub dest_city: String,
}

/// Parse result plus bookkeeping so row counts reconcile exactly:
/// `total_data_rows == records.len() + dropped_malformed + dropped_self_loops`.
#[derive(Debug)]
pub struct ParseOutcome {
    pub records: Vec<FlightRecord>,
    pub total_data_rows: usize,
    /// Rows with a missing or empty endpoint field, or unreadable rows.
    pub dropped_malformed: usize,
    /// Rows whose origin equals their destination after trimming.
    pub dropped_self_loops: usize,
}

/// Reads flight records from an RFC-4180 CSV with a header row. City labels
/// commonly contain commas ("Dallas/Fort Worth, TX"), so quoted fields are
/// required and handled. Malformed rows are skipped and counted, in order.
pub fn parse_flight_csv(
    path: &Path,
    origin_column: &str,
    dest_column: &str,
) -> Result<ParseOutcome, IngestError> {
    let file = std::fs::File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(file);
    let headers = reader.headers()?.clone();
    let column = |name: &str| -> Result<usize, IngestError> {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| IngestError::MissingColumn {
                column: name.to_owned(),
            })
    };
    let origin_at = column(origin_column)?;
    let dest_at = column(dest_column)?;

    let mut outcome = ParseOutcome {
        records: Vec::new(),
        total_data_rows: 0,
        dropped_malformed: 0,
        dropped_self_loops: 0,
    };
    for row in reader.records() {
        outcome.total_data_rows += 1;
        let row = match row {
            Ok(row) => row,
            Err(_) => {
                outcome.dropped_malformed += 1;
                continue;
            }
        };
        let origin = row.get(origin_at).map(str::trim).unwrap_or("");
        let dest = row.get(dest_at).map(str::trim).unwrap_or("");
        if origin.is_empty() || dest.is_empty() {
            outcome.dropped_malformed += 1;
        } else if origin == dest {
            outcome.dropped_self_loops += 1;
        } else {
            outcome.records.push(FlightRecord {
                origin_city: origin.to_owned(),
                dest_city: dest.to_owned(),
            });
        }
    }
    if outcome.records.is_empty() {
        return Err(IngestError::NoValidRows);
    }
    Ok(outcome)
}

/// Aggregates flight records into the airport graph: one node per distinct
/// city, one undirected edge per city pair with at least one flight. When
/// `weighted`, the edge weight is the total flight count over both
/// directions; otherwise every edge weighs 1.
///
/// Nodes are interned in sorted label order, so the result is identical for
/// any permutation of the input records.
pub fn aggregate_to_graph(records: &[FlightRecord], weighted: bool) -> Result<Graph, IngestError> {
    use std::collections::BTreeMap;

    if records.is_empty() {
        return Err(IngestError::EmptyInput);
    }
    let mut flights: BTreeMap<(&str, &str), f64> = BTreeMap::new();
    for record in records {
        let (a, b) = (record.origin_city.as_str(), record.dest_city.as_str());
        let key = if a <= b { (a, b) } else { (b, a) };
        *flights.entry(key).or_insert(0.0) += 1.0;
    }
    let labels: Vec<String> = {
        let mut cities: Vec<&str> = flights.keys().flat_map(|&(a, b)| [a, b]).collect();
        cities.sort_unstable();
        cities.dedup();
        cities.into_iter().map(str::to_owned).collect()
    };
    let index: std::collections::HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let edges: Vec<(usize, usize, f64)> = flights
        .iter()
        .map(|(&(a, b), &count)| {
            let w = if weighted { count } else { 1.0 };
            (index[a], index[b], w)
        })
        .collect();
    Ok(Graph::from_indexed_edges(labels, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_csv(content: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file.flush().unwrap();
        file
    }

    const HEADER: &str = "YEAR,ORIGIN_CITY_NAME,DEST_CITY_NAME,CANCELLED\n";

    #[test]
    fn parses_quoted_city_names() {
        let csv = write_csv(&format!(
            "{HEADER}2023,\"Dallas/Fort Worth, TX\",\"Denver, CO\",0\n"
        ));
        let out = parse_flight_csv(csv.path(), "ORIGIN_CITY_NAME", "DEST_CITY_NAME").unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].origin_city, "Dallas/Fort Worth, TX");
        assert_eq!(out.records[0].dest_city, "Denver, CO");
    }

    #[test]
    fn drops_self_loops_and_counts_them() {
        let csv = write_csv(&format!(
            "{HEADER}2023,\"Denver, CO\",\"Denver, CO\",0\n2023,\"Denver, CO\",\"Chicago, IL\",0\n"
        ));
        let out = parse_flight_csv(csv.path(), "ORIGIN_CITY_NAME", "DEST_CITY_NAME").unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.dropped_self_loops, 1);
        assert_eq!(out.dropped_malformed, 0);
        assert_eq!(out.total_data_rows, 2);
    }

    #[test]
    fn counts_reconcile_with_malformed_rows() {
        let csv = write_csv(&format!(
            "{HEADER}2023,\"A, AA\",\"B, BB\",0\n2023,,\"B, BB\",0\n2023,\"A, AA\",\"A, AA\",0\n2023,\"B, BB\",\"C, CC\",0\n"
        ));
        let out = parse_flight_csv(csv.path(), "ORIGIN_CITY_NAME", "DEST_CITY_NAME").unwrap();
        assert_eq!(out.total_data_rows, 4);
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.dropped_malformed, 1);
        assert_eq!(out.dropped_self_loops, 1);
        assert_eq!(
            out.total_data_rows,
            out.records.len() + out.dropped_malformed + out.dropped_self_loops
        );
    }

    #[test]
    fn missing_column_is_named() {
        let csv = write_csv(&format!("{HEADER}2023,\"A, AA\",\"B, BB\",0\n"));
        let err = parse_flight_csv(csv.path(), "ORIGIN_X", "DEST_CITY_NAME").unwrap_err();
        match err {
            IngestError::MissingColumn { column } => assert_eq!(column, "ORIGIN_X"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn all_rows_invalid_is_an_error() {
        let csv = write_csv(&format!("{HEADER}2023,\"A, AA\",\"A, AA\",0\n"));
        assert!(matches!(
            parse_flight_csv(csv.path(), "ORIGIN_CITY_NAME", "DEST_CITY_NAME"),
            Err(IngestError::NoValidRows)
        ));
    }

    fn record(a: &str, b: &str) -> FlightRecord {
        FlightRecord {
            origin_city: a.to_owned(),
            dest_city: b.to_owned(),
        }
    }

    #[test]
    fn aggregation_counts_both_directions() {
        let records = vec![record("A", "B"), record("B", "A"), record("A", "B")];
        let g = aggregate_to_graph(&records, true).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edges(), &[(0, 1, 3.0)]);
    }

    #[test]
    fn unweighted_aggregation_uses_unit_weights() {
        let records = vec![record("A", "B"), record("B", "A"), record("A", "B")];
        let g = aggregate_to_graph(&records, false).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 1.0)]);
    }

    #[test]
    fn aggregation_is_order_independent() {
        let forward = vec![
            record("Denver, CO", "Chicago, IL"),
            record("Atlanta, GA", "Denver, CO"),
            record("Chicago, IL", "Atlanta, GA"),
            record("Denver, CO", "Chicago, IL"),
        ];
        let mut shuffled = forward.clone();
        shuffled.reverse();
        shuffled.swap(0, 2);
        let a = aggregate_to_graph(&forward, true).unwrap();
        let b = aggregate_to_graph(&shuffled, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            aggregate_to_graph(&[], true),
            Err(IngestError::EmptyInput)
        ));
    }
}

//! Row serialization and per-group summaries.

use std::collections::BTreeMap;
use std::io::Write;

use crate::experiment::{Format, SweepRow};

/// CSV column order, matching the field order of [`SweepRow`].
pub const CSV_HEADER: [&str; 12] = [
    "seed",
    "n",
    "operation",
    "status",
    "value",
    "lower",
    "upper",
    "witness_size",
    "nodes",
    "params_hash",
    "params",
    "wall_ms",
];

/// Writes rows as CSV (header always present) or as a JSON array.
pub fn emit_report(rows: &[SweepRow], format: Format, out: impl Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Reads rows written by [`emit_report`] in either format.
pub fn read_rows(text: &str, format: Format) -> anyhow::Result<Vec<SweepRow>> {
    Ok(match format {
        Format::Json => serde_json::from_str(text)?,
        Format::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<Result<_, _>>()?,
    })
}

/// Median value and status counts per `(operation, n)`; `None` values sort high.
pub fn summarize(rows: &[SweepRow]) -> String {
    let mut groups: BTreeMap<(&str, usize), Vec<&SweepRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((&r.operation, r.n)).or_default().push(r);
    }
    let mut out = String::from("operation,n,rows,median,statuses\n");
    for ((op, n), rs) in groups {
        let mut vals: Vec<usize> = rs.iter().map(|r| r.value.unwrap_or(usize::MAX)).collect();
        vals.sort_unstable();
        let (a, b) = (vals[(vals.len() - 1) / 2], vals[vals.len() / 2]);
        let median = if a == usize::MAX || b == usize::MAX {
            "none".to_string()
        } else {
            format!("{}", (a + b) as f64 / 2.0)
        };
        let mut statuses: BTreeMap<&str, usize> = BTreeMap::new();
        for r in &rs {
            *statuses.entry(&r.status).or_default() += 1;
        }
        let statuses: Vec<String> = statuses.iter().map(|(s, c)| format!("{s}:{c}")).collect();
        out.push_str(&format!("{op},{n},{},{median},{}\n", rs.len(), statuses.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(seed: u64, value: Option<usize>) -> SweepRow {
        SweepRow {
            seed,
            n: 10,
            operation: "dm".into(),
            status: if value.is_some() { "exact" } else { "interval" }.into(),
            value,
            lower: Some(1),
            upper: value,
            witness_size: value.unwrap_or(0),
            nodes: 7,
            params_hash: "abc".into(),
            params: "{\"x\":1.5}".into(),
            wall_ms: None,
        }
    }

    fn render(rows: &[SweepRow], format: Format) -> String {
        let mut buf = Vec::new();
        emit_report(rows, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(render(&[], Format::Csv), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn three_rows_give_four_lines() {
        let rows = [row(0, Some(2)), row(1, None), row(2, Some(3))];
        assert_eq!(render(&rows, Format::Csv).lines().count(), 4);
    }

    #[test]
    fn both_formats_round_trip() {
        let rows = vec![row(0, Some(2)), row(1, None)];
        for format in [Format::Csv, Format::Json] {
            assert_eq!(read_rows(&render(&rows, format), format).unwrap(), rows);
        }
    }

    #[test]
    fn summary_reports_medians() {
        let rows = [row(0, Some(2)), row(1, Some(2)), row(2, Some(3))];
        assert!(summarize(&rows).contains("dm,10,3,2,exact:3"));
    }
}

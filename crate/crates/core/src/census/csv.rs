use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{xi, CensusRecord};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 5] = ["d", "h", "sqrt_d_over_h2", "Y", "c_hat"];

/// A census row as stored on disk. `X` is not part of the file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub d: u64,
    pub h: u64,
    pub sqrt_d_over_h2: f64,
    #[serde(rename = "Y")]
    pub y: u64,
    pub c_hat: f64,
}

/// Writes the header and one line per record, reals to six decimals.
pub fn write_csv<W: Write>(records: &[CensusRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.d.to_string(),
            r.h.to_string(),
            format!("{:.6}", r.xi),
            r.y.to_string(),
            format!("{:.6}", r.c_hat),
        ])?;
    }
    w.flush()
}

/// Parses a file produced by [`write_csv`]. The header must match exactly,
/// `d` must be `3 (mod 8)`, and `sqrt_d_over_h2` must agree with `d` and `h`
/// to the printed precision.
pub fn parse_csv(input: &str) -> Result<Vec<CsvRow>> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(input.as_bytes());
    let mut records = rd.records();
    let header = match records.next() {
        Some(h) => h.map_err(|e| parse_error(1, e))?,
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty input".into(),
            })
        }
    };
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected header {}", CSV_HEADER.join(",")),
        });
    }
    let header = csv::StringRecord::from(CSV_HEADER.to_vec());
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| parse_error(0, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        let row: CsvRow = rec
            .deserialize(Some(&header))
            .map_err(|e| parse_error(line, e))?;
        check_row(&row).map_err(|msg| Error::Parse { line, msg })?;
        rows.push(row);
    }
    Ok(rows)
}

fn check_row(row: &CsvRow) -> std::result::Result<(), String> {
    if row.d % 8 != 3 {
        return Err(format!("d = {} is not 3 mod 8", row.d));
    }
    if row.h == 0 || row.h > u32::MAX as u64 {
        return Err(format!("class number {} out of range", row.h));
    }
    if !row.c_hat.is_finite() || row.c_hat < 0.0 {
        return Err(format!("c_hat = {} is not a nonnegative real", row.c_hat));
    }
    if (row.sqrt_d_over_h2 - xi(row.d, row.h)).abs() > 1e-6 {
        return Err(format!(
            "sqrt_d_over_h2 disagrees with d = {}, h = {}",
            row.d, row.h
        ));
    }
    Ok(())
}

fn parse_error(line: u64, e: csv::Error) -> Error {
    let line = e.position().map_or(line, |p| p.line());
    Error::Parse {
        line,
        msg: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<CensusRecord> {
        vec![
            CensusRecord::new(3, 1, 67619, 10_000_000),
            CensusRecord::new(11, 1, 10125, 10_000_000),
            CensusRecord::new(35, 2, 0, 10_000_000),
        ]
    }

    #[test]
    fn header_and_precision() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("d,h,sqrt_d_over_h2,Y,c_hat"));
        assert_eq!(lines.next(), Some("3,1,1.732051,67619,1.756694"));
        assert_eq!(lines.next(), Some("11,1,3.316625,10125,0.263040"));
        assert_eq!(lines.next(), Some("35,2,1.479020,0,0.000000"));
    }

    #[test]
    fn round_trip() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let rows = parse_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        for (row, rec) in rows.iter().zip(sample()) {
            assert_eq!((row.d, row.h, row.y), (rec.d, rec.h, rec.y));
            assert!((row.c_hat - rec.c_hat).abs() <= 5e-7);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_csv(""), Err(Error::Parse { line: 1, .. })));
        assert!(parse_csv("d,h,xi,Y,c_hat\n").is_err());
        let head = "d,h,sqrt_d_over_h2,Y,c_hat\n";
        assert_eq!(parse_csv(head).unwrap(), vec![]);
        for bad in [
            "5,1,2.236068,1,0.1\n",
            "3,1,1.732051,-1,0.1\n",
            "3,1,1.732051,1\n",
            "3,1,9.0,1,0.1\n",
            "3,0,1.732051,1,0.1\n",
            "3,1,1.732051,1,NaN\n",
        ] {
            let r = parse_csv(&format!("{head}{bad}"));
            assert!(
                matches!(r, Err(Error::Parse { line: 2, .. })),
                "{bad:?} gave {r:?}"
            );
        }
    }
}

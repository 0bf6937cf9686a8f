//! Distance tables in CSV: one row per m, one column per n, blank cells
//! where no formula applies.

use crate::distance::{hk_distance, park_distance};
use crate::error::Result;

/// Inclusive range; `lo > hi` means empty.
pub type Span = (i64, i64);

fn grid(rows: Span, cols: Span, mut cell: impl FnMut(i64, i64) -> Result<Option<i64>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["m".to_string()];
    header.extend((cols.0..=cols.1).map(|n| n.to_string()));
    w.write_record(&header).expect("in-memory write");
    for m in rows.0..=rows.1 {
        let mut line = vec![m.to_string()];
        for n in cols.0..=cols.1 {
            line.push(cell(m, n)?.map(|d| d.to_string()).unwrap_or_default());
        }
        w.write_record(&line).expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory write");
    Ok(String::from_utf8(bytes).expect("ascii"))
}

/// d(C(m, n)^⊥) from the closed forms, for G = m·P∞ + n·P0.
pub fn park_grid_csv(q: u32, rows: Span, cols: Span) -> Result<String> {
    grid(rows, cols, |m, n| Ok(park_distance(q as i64, m, n).d))
}

/// d(C(m, n)) from the primal formulas; n must lie in [0, q].
pub fn hk_grid_csv(q: u32, rows: Span, cols: Span) -> Result<String> {
    grid(rows, cols, |m, n| hk_distance(q as i64, m, n))
}

//! Batch enumeration of staircases in a box with one verdict row per rank.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{audit_prop51, classify, Verdict};
use crate::staircase::{enumerate_primary, is_complete, is_simple, MonomialIdeal};

/// Largest admissible box side.
pub const MAX_BOX: u32 = 12;

/// Frozen CSV header; generator lists are written as `a:b` pairs joined by `;`.
pub const CSV_HEADER: &str =
    "ideal_gens,r,order,complete,simple,e,fitting_gens,integrally_closed,verdict,prop51_diff";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AtlasFilter {
    /// Keep non-complete staircases too.
    pub include_incomplete: bool,
    /// Drop simple ideals.
    pub nonsimple_only: bool,
    /// Restrict to one rank.
    pub e: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub ideal_gens: Vec<(u32, u32)>,
    pub r: usize,
    pub order: u32,
    pub complete: bool,
    pub simple: bool,
    pub e: usize,
    pub fitting_gens: Vec<(u32, u32)>,
    pub integrally_closed: bool,
    pub verdict: String,
    pub prop51_diff: Option<i64>,
    #[serde(skip)]
    pub full: Option<Box<Verdict>>,
}

fn pairs(i: &MonomialIdeal) -> Vec<(u32, u32)> {
    i.gens().iter().map(|&m| m.into()).collect()
}

fn join(gens: &[(u32, u32)]) -> String {
    gens.iter()
        .map(|(a, b)| format!("{a}:{b}"))
        .collect::<Vec<_>>()
        .join(";")
}

impl AtlasRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            join(&self.ideal_gens),
            self.r,
            self.order,
            self.complete,
            self.simple,
            self.e,
            join(&self.fitting_gens),
            self.integrally_closed,
            self.verdict,
            self.prop51_diff.map(|d| d.to_string()).unwrap_or_default()
        )
    }
}

/// Normalized staircases with `r >= 2`, `a_0 <= max_a`, `b_r <= max_b`, in
/// lexicographic generator order.
pub fn atlas_ideals(max_a: u32, max_b: u32, filter: AtlasFilter) -> Vec<MonomialIdeal> {
    enumerate_primary(max_a, max_b)
        .into_iter()
        .filter(|i| i.r() >= 2 && i.is_normalized())
        .filter(|i| filter.include_incomplete || is_complete(i))
        .filter(|i| !filter.nonsimple_only || !is_simple(i))
        .collect()
}

fn rows_for(i: &MonomialIdeal, filter: AtlasFilter) -> Vec<AtlasRow> {
    let complete = is_complete(i);
    let simple = is_simple(i);
    (2..=i.r())
        .filter(|e| filter.e.is_none_or(|f| f == *e))
        .map(|e| {
            let v = classify(i, e);
            let prop51_diff = if v.integrally_closed {
                audit_prop51(i, e).ok().map(|a| a.lhs)
            } else {
                None
            };
            AtlasRow {
                ideal_gens: pairs(i),
                r: i.r(),
                order: i.order(),
                complete,
                simple,
                e,
                fitting_gens: v.fitting.as_ref().map(pairs).unwrap_or_default(),
                integrally_closed: v.integrally_closed,
                verdict: v.indecomposable.label().to_string(),
                prop51_diff,
                full: Some(Box::new(v)),
            }
        })
        .collect()
}

/// All rows, ordered by ideal then rank regardless of scheduling.
pub fn atlas_rows(max_a: u32, max_b: u32, filter: AtlasFilter) -> Vec<AtlasRow> {
    atlas_ideals(max_a, max_b, filter)
        .par_iter()
        .map(|i| rows_for(i, filter))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn write_csv(rows: &[AtlasRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    Ok(())
}

/// One verdict JSON object per line.
pub fn write_jsonl(rows: &[AtlasRow], out: &mut dyn Write) -> std::io::Result<()> {
    for row in rows {
        let v = row.full.as_deref().expect("rows carry their verdicts");
        writeln!(out, "{}", serde_json::to_string(v).expect("serializable"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_box_counts() {
        let ideals = atlas_ideals(4, 4, AtlasFilter::default());
        let rows = atlas_rows(4, 4, AtlasFilter::default());
        let expected: usize = ideals.iter().map(|i| i.r() - 1).sum();
        assert_eq!(rows.len(), expected);
        assert!(rows
            .iter()
            .filter(|r| r.integrally_closed)
            .all(|r| r.prop51_diff == Some((r.e * (r.e - 1) / 2) as i64)));
    }

    #[test]
    fn nonsimple_filter_keeps_products() {
        let f = AtlasFilter {
            nonsimple_only: true,
            ..AtlasFilter::default()
        };
        let ideals = atlas_ideals(3, 3, f);
        assert!(ideals
            .iter()
            .any(|i| pairs(i) == vec![(2, 0), (1, 1), (0, 3)]));
        assert!(ideals.iter().all(|i| !is_simple(i)));
    }

    #[test]
    fn csv_lines_follow_header() {
        let rows = atlas_rows(3, 3, AtlasFilter::default());
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let ncols = CSV_HEADER.split(',').count();
        assert!(lines.all(|l| l.split(',').count() == ncols));
    }
}

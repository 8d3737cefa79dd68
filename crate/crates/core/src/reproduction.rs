//! Regenerates the published relative-error tables and diffs them against
//! the reference values shipped in `data/`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{evaluate_bound, Side};
use crate::error::{domain, Result};
use crate::eval::{EvalContext, OrderPair};
use crate::series::EvalOptions;

const REFERENCE: [&str; 5] = [
    include_str!("../data/table1.csv"),
    include_str!("../data/table2.csv"),
    include_str!("../data/table3.csv"),
    include_str!("../data/table4.csv"),
    include_str!("../data/table5.csv"),
];

/// Cells pass when |computed − reference| is within one printed unit plus rounding slack.
pub const CELL_TOL: f64 = 1e-4 + 5e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RowLabel {
    Pair { mu: f64, nu: f64 },
    Nu(f64),
}

impl RowLabel {
    pub fn order_pair(&self) -> OrderPair {
        match *self {
            RowLabel::Pair { mu, nu } => OrderPair { mu, nu },
            RowLabel::Nu(nu) => OrderPair { mu: nu, nu },
        }
    }
}

impl std::fmt::Display for RowLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowLabel::Pair { mu, nu } => write!(f, "({mu},{nu})"),
            RowLabel::Nu(nu) => write!(f, "{nu}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableSpec {
    pub table_id: u8,
    /// Catalog entry and side whose relative error fills the cells.
    pub bound_id: &'static str,
    pub side: Side,
    pub rows: Vec<RowLabel>,
    pub x_grid: Vec<f64>,
    /// Reference values, row-major.
    pub reference: Vec<Vec<f64>>,
}

/// Row labels, x grid and row-major values.
type Parsed = (Vec<RowLabel>, Vec<f64>, Vec<Vec<f64>>);

fn parse_reference(table_id: u8, text: &str) -> Result<Parsed> {
    let bad = |what: &str| domain(format!("reference table {table_id}: {what}"));
    let mut lines = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| bad("missing header"))?
        .split(',')
        .collect();
    let labels = if header.starts_with(&["mu", "nu"]) {
        2
    } else {
        1
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad(&format!("bad number {s:?}")))
    };
    let x_grid = header[labels..]
        .iter()
        .map(|s| num(s))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != labels + x_grid.len() {
            return Err(bad(&format!("row {line:?} has {} cells", cells.len())));
        }
        rows.push(if labels == 2 {
            RowLabel::Pair {
                mu: num(cells[0])?,
                nu: num(cells[1])?,
            }
        } else {
            RowLabel::Nu(num(cells[0])?)
        });
        values.push(
            cells[labels..]
                .iter()
                .map(|s| num(s))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((rows, x_grid, values))
}

/// Grid, rows and reference values of table 1–5.
pub fn table_spec(table_id: u8) -> Result<TableSpec> {
    let (bound_id, side) = match table_id {
        1 => ("RATIO_BRACKET", Side::Lower),
        2 => ("RATIO_BRACKET", Side::Upper),
        3 => ("RATIO_SQRT", Side::Lower),
        4 => ("RATIO_SQRT", Side::Upper),
        5 => ("LLOWERR", Side::Lower),
        _ => return Err(domain(format!("table id must be 1..=5, got {table_id}"))),
    };
    let (rows, x_grid, reference) = parse_reference(table_id, REFERENCE[table_id as usize - 1])?;
    Ok(TableSpec {
        table_id,
        bound_id,
        side,
        rows,
        x_grid,
        reference,
    })
}

/// Rounds to 4 decimals, ties to even.
pub fn round4(v: f64) -> f64 {
    (v * 1e4).round_ties_even() / 1e4
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub spec: TableSpec,
    /// Rounded relative errors; `None` where evaluation failed.
    pub computed: Vec<Vec<Option<f64>>>,
    /// Unrounded relative errors.
    pub raw: Vec<Vec<Option<f64>>>,
    pub cell_errors: Vec<String>,
}

/// |approx/exact − 1| for one cell, using oracle-mode evaluation.
pub fn table_cell(spec: &TableSpec, row: RowLabel, x: f64) -> Result<f64> {
    let ctx = EvalContext::new(EvalOptions::default().oracle());
    let ev = evaluate_bound(&ctx, spec.bound_id, row.order_pair(), x, None)?;
    let rel = match spec.side {
        Side::Lower => ev.rel_margin_lower,
        Side::Upper => ev.rel_margin_upper,
    };
    rel.map(f64::abs).ok_or_else(|| {
        domain(format!(
            "{} has no {} side at {row}",
            spec.bound_id,
            spec.side.name()
        ))
    })
}

/// Computes every cell of `spec` (in parallel) and rounds as printed.
pub fn run_table(spec: &TableSpec) -> TableReport {
    let cells: Vec<(usize, usize)> = (0..spec.rows.len())
        .flat_map(|i| (0..spec.x_grid.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<f64>> = cells
        .par_iter()
        .map(|&(i, j)| table_cell(spec, spec.rows[i], spec.x_grid[j]))
        .collect();
    let mut raw = vec![vec![None; spec.x_grid.len()]; spec.rows.len()];
    let mut cell_errors = Vec::new();
    for (&(i, j), r) in cells.iter().zip(results) {
        match r {
            Ok(v) => raw[i][j] = Some(v),
            Err(e) => cell_errors.push(format!("{} x={}: {e}", spec.rows[i], spec.x_grid[j])),
        }
    }
    let computed = raw
        .iter()
        .map(|row| row.iter().map(|v| v.map(round4)).collect())
        .collect();
    TableReport {
        spec: spec.clone(),
        computed,
        raw,
        cell_errors,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellDiff {
    pub param: String,
    pub x: f64,
    pub computed: Option<f64>,
    pub reference: f64,
    pub diff: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    pub table_id: u8,
    pub cells: Vec<CellDiff>,
    pub max_abs_diff: f64,
}

impl DiffReport {
    pub fn failures(&self) -> impl Iterator<Item = &CellDiff> {
        self.cells.iter().filter(|c| !c.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    /// CSV with header `param,x,relerr_computed,relerr_reference,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,x,relerr_computed,relerr_reference,pass\n");
        for c in &self.cells {
            let computed = c.computed.map_or("NaN".to_string(), |v| format!("{v:.4}"));
            // params of the form (mu,nu) contain a comma and are quoted
            let _ = writeln!(
                out,
                "\"{}\",{},{},{:.4},{}",
                c.param, c.x, computed, c.reference, c.pass
            );
        }
        out
    }
}

/// Cell-by-cell comparison of a report against its reference values.
pub fn compare_reference(report: &TableReport) -> DiffReport {
    let spec = &report.spec;
    let mut cells = Vec::new();
    let mut max_abs_diff: f64 = 0.0;
    for (i, row) in spec.rows.iter().enumerate() {
        for (j, &x) in spec.x_grid.iter().enumerate() {
            let reference = spec.reference[i][j];
            let computed = report.computed[i][j];
            let diff = computed.map_or(f64::INFINITY, |v| (v - reference).abs());
            max_abs_diff = max_abs_diff.max(diff);
            cells.push(CellDiff {
                param: row.to_string(),
                x,
                computed,
                reference,
                diff,
                pass: diff <= CELL_TOL + 1e-12,
            });
        }
    }
    DiffReport {
        table_id: spec.table_id,
        cells,
        max_abs_diff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_have_published_shapes() {
        let shapes = [(1, 15, 8), (2, 15, 8), (3, 15, 9), (4, 12, 9), (5, 5, 10)];
        for (id, rows, cols) in shapes {
            let s = table_spec(id).unwrap();
            assert_eq!((s.rows.len(), s.x_grid.len()), (rows, cols), "table {id}");
            assert!(s.reference.iter().all(|r| r.len() == cols));
        }
        assert!(table_spec(0).is_err() && table_spec(6).is_err());
        let t4 = table_spec(4).unwrap();
        assert!(t4.rows.iter().all(|r| r.order_pair().nu >= 0.5));
    }

    #[test]
    fn rounding_is_half_even() {
        assert_eq!(round4(0.00125), 0.0012);
        assert_eq!(round4(23.90734), 23.9073);
        assert_eq!(round4(-0.0), 0.0);
    }

    #[test]
    fn spot_cells() {
        let s = table_spec(2).unwrap();
        let v = table_cell(&s, RowLabel::Pair { mu: 2.0, nu: 0.0 }, 0.5).unwrap();
        assert_eq!(round4(v), 23.9073);
        let s = table_spec(3).unwrap();
        let v = table_cell(&s, RowLabel::Pair { mu: -0.5, nu: 0.0 }, 1.0).unwrap();
        assert_eq!(round4(v), 0.2333);
        let s = table_spec(5).unwrap();
        let v = table_cell(&s, RowLabel::Nu(0.0), 5.0).unwrap();
        assert_eq!(round4(v), 0.1830);
    }

    #[test]
    fn perturbed_reference_fails_one_cell() {
        let mut spec = table_spec(1).unwrap();
        spec.rows.truncate(2);
        spec.reference.truncate(2);
        let mut report = run_table(&spec);
        assert!(compare_reference(&report).all_pass());
        report.spec.reference[1][3] += 0.01;
        let d = compare_reference(&report);
        assert_eq!(d.failures().count(), 1);
        let csv = d.to_csv();
        assert!(csv.starts_with("param,x,relerr_computed,relerr_reference,pass\n"));
        assert!(csv.contains("\"(0.5,1)\",5,0.0073,0.0173,false"), "{csv}");
    }
}

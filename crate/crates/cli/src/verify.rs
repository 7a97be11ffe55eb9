//! Built-in reproductions: the `s` table, the period-2 fourfold of index 8,
//! and the indecomposable period-2 threefold.

use brauer_core::driver::{self, BoundOptions, IndecomposabilityVerdict, Method};
use brauer_core::{djp, refined, AlgebraContext, BrauerClassSpec};

use crate::form::parse_form;

/// Published values of `s`, dimensions 3..=12, columns as in
/// [`driver::TABLE_COLUMNS`].
pub const REFERENCE_TABLE: [[&str; 10]; 10] = [
    ["-", "-", "-", "-", "-", "-", "-", "-", "-", "-"],
    ["3", "-", "7/2", "-", "-", "11/3", "-", "-", "-", "15/4"],
    ["4", "-", "9/2", "-", "-", "14/3", "-", "-", "-", "19/4"],
    ["4", "-", "5", "-", "-", "16/3", "-", "-", "-", "11/2"],
    ["4", "6", "11/2", "-", "-", "6", "13/2", "-", "-", "25/4"],
    ["4", "7", "6", "-", "-", "20/3", "15/2", "-", "-", "7"],
    ["5", "7", "7", "-", "-", "23/3", "8", "-", "-", "8"],
    ["5", "9", "15/2", "-", "-", "25/3", "19/2", "-", "-", "35/4"],
    ["5", "9", "8", "-", "-", "9", "10", "-", "-", "19/2"],
    ["5", "10", "17/2", "-", "-", "29/3", "11", "-", "-", "41/4"],
];

pub const FOURFOLD_FORM: &str = "x1^y1 + x1^y3 + x2^y2 + x3^y1";
pub const THREEFOLD_FORM: &str = "x1^y1 + x1^y2 + x2^y1 + x2^y3 + x3^y1 + x3^y2 + x3^y3";

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

pub fn spec_from(form: &str, g: usize, n: u64) -> anyhow::Result<BrauerClassSpec> {
    let ctx = AlgebraContext::new(g)?;
    let b = parse_form(form, g)?.to_multivector(&ctx);
    Ok(BrauerClassSpec::new(&b, n)?)
}

/// Cells of the computed table that differ from [`REFERENCE_TABLE`].
pub fn table_mismatches() -> anyhow::Result<Vec<String>> {
    let mut bad = Vec::new();
    for ((g, cells), expected) in driver::table_s(12)?.into_iter().zip(REFERENCE_TABLE) {
        for ((cell, want), &(p, r)) in cells.iter().zip(expected).zip(&driver::TABLE_COLUMNS) {
            let got = cell.as_deref().unwrap_or("-");
            if got != want {
                bad.push(format!("dim {g}, {p}^{r}: got {got}, expected {want}"));
            }
        }
    }
    Ok(bad)
}

pub fn run_all(threads: Option<usize>) -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();

    let bad = table_mismatches()?;
    out.push(check("table", bad.is_empty(), bad.join("; ")));

    let four = spec_from(FOURFOLD_FORM, 4, 2)?;
    let djp4 = djp::djp_obstructed(&four, 4)?;
    out.push(check("fourfold djp d=4 unobstructed", !djp4, format!("obstructed = {djp4}")));
    let refined4 = refined::refined_obstructed(&four, 4, &[2], 1)?.obstructed;
    out.push(check(
        "fourfold refined d=4 obstructed",
        refined4,
        format!("obstructed = {refined4}"),
    ));
    let rep = driver::index_lower_bound(&four, &BoundOptions::with_methods(&[Method::Djp, Method::Refined]))?;
    out.push(check(
        "fourfold index 8",
        rep.lower_bound == 8 && rep.cap == 8 && rep.determined,
        format!("lower bound {}, cap {}", rep.lower_bound, rep.cap),
    ));

    let three = spec_from(THREEFOLD_FORM, 3, 2)?;
    let ell = three.checked_symbol_length()?;
    out.push(check("threefold symbol length 3", ell == 3, format!("got {ell}")));
    let rep = driver::index_lower_bound(&three, &BoundOptions::default())?;
    out.push(check(
        "threefold index bound 4",
        rep.lower_bound == 4,
        format!("got {}", rep.lower_bound),
    ));
    let ind = driver::indecomposability_test(&three, 4, &BoundOptions::default(), threads)?;
    out.push(check(
        "threefold indecomposable",
        ind.verdict == IndecomposabilityVerdict::Indecomposable
            && ind.stats.candidates == 32_768
            && ind.stats.categorized() == 32_768,
        format!("{:?} after {} candidates", ind.verdict, ind.stats.candidates),
    ));
    Ok(out)
}

//! Regenerates the reference tables from the diagrams alone.

use std::collections::BTreeSet;

use homlines_core::diagram::{DynkinDiagram, Family};
use homlines_core::marked::MarkedDiagram;
use homlines_core::tangent::{tag, weights};
use homlines_core::thresholds::{classify_vmrt, varsigma, vmrt_breakdown};
use serde_json::{json, Map, Value};

use crate::report::Report;
use crate::spec::format_factor;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    T1,
    T2,
    E6,
    E7,
    E8,
    Fg,
}

pub const APPENDIX_COLUMNS: [&str; 6] = ["diagram", "node", "vmrt", "tag", "weights", "coords"];

/// `rank` instantiates the classical columns of t1 and t2; the others ignore it.
pub fn emit_tables(which: Which, rank: usize) -> Result<Report, CliError> {
    match which {
        Which::T1 => table_one(rank),
        Which::T2 => table_two(rank),
        Which::E6 => appendix(&[(Family::E, 6)]),
        Which::E7 => appendix(&[(Family::E, 7)]),
        Which::E8 => appendix(&[(Family::E, 8)]),
        Which::Fg => appendix(&[(Family::F, 4), (Family::G, 2)]),
    }
}

fn diagram(f: Family, n: usize) -> Result<DynkinDiagram, CliError> {
    DynkinDiagram::build(f, n).map_err(CliError::from)
}

fn classical_rank(rank: usize) -> Result<usize, CliError> {
    if rank < 4 {
        return Err(CliError::Usage(format!(
            "--rank must be at least 4 for the classical columns, got {rank}"
        )));
    }
    Ok(rank)
}

/// Extremal nodes with the VMRT of the corresponding Grassmannian.
fn table_one(rank: usize) -> Result<Report, CliError> {
    let n = classical_rank(rank)?;
    let mut entries = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D] {
        entries.push((f, n, 1));
        entries.push((f, n, n));
    }
    for e in 6..=8 {
        entries.extend([(Family::E, e, 1), (Family::E, e, e), (Family::E, e, 2)]);
    }
    entries.extend([(Family::F, 4, 1), (Family::F, 4, 4), (Family::G, 2, 1), (Family::G, 2, 2)]);
    let mut rows = Vec::new();
    for (f, r, k) in entries {
        let parts = vmrt_breakdown(&diagram(f, r)?, k)?;
        let vmrt: Vec<String> = parts.iter().map(|(m, _, _)| format_factor(m)).collect();
        let mx: Vec<String> = parts.iter().map(|(_, fam, _)| fam.to_string()).collect();
        let mut row = Map::new();
        row.insert("diagram".into(), json!(format!("{f}{r}")));
        row.insert("node".into(), json!(k));
        row.insert("vmrt".into(), json!(vmrt.join(" x ")));
        row.insert("mx".into(), json!(mx.join(" x ")));
        rows.push(row);
    }
    Ok(Report::table(&["diagram", "node", "vmrt", "mx"], rows))
}

/// The threshold of every entry of the threshold table.
fn table_two(rank: usize) -> Result<Report, CliError> {
    let n = classical_rank(rank)?;
    let mut entries = vec![
        (Family::A, n, 1),
        (Family::A, n, n),
        (Family::B, n, 1),
        (Family::B, n, n),
        (Family::C, n, 1),
        (Family::C, n, n),
        (Family::D, n, 1),
        (Family::D, n, n - 1),
        (Family::D, n, n),
    ];
    for e in 6..=8 {
        entries.extend([(Family::E, e, 1), (Family::E, e, 2), (Family::E, e, e)]);
    }
    entries.extend([(Family::F, 4, 1), (Family::F, 4, 4), (Family::G, 2, 1), (Family::G, 2, 2)]);
    let mut rows = Vec::new();
    for (f, r, k) in entries {
        let t = varsigma(&diagram(f, r)?, k)?;
        let mut row = Map::new();
        row.insert("diagram".into(), json!(format!("{f}{r}")));
        row.insert("node".into(), json!(k));
        row.insert("varsigma".into(), json!(t.value));
        row.insert("p1Fallback".into(), json!(t.p1_fallback));
        rows.push(row);
    }
    Ok(Report::table(&["diagram", "node", "varsigma", "p1Fallback"], rows))
}

/// One row per node: VMRT factors, tag and weights in each component's own
/// labelling, and the original node behind each position (`coords`).
fn appendix(types: &[(Family, usize)]) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    for &(f, r) in types {
        let d = diagram(f, r)?;
        for k in d.nodes() {
            rows.push(appendix_row(&d, k)?);
        }
    }
    Ok(Report::table(&APPENDIX_COLUMNS, rows))
}

fn appendix_row(d: &DynkinDiagram, k: usize) -> Result<Map<String, Value>, CliError> {
    let t = tag(d, k)?;
    let w = weights(d, k)?;
    let mut vmrt = Vec::new();
    let mut tags = Vec::new();
    let mut sets = Vec::new();
    let mut coords = Vec::new();
    for (tc, wc) in t.per_component.iter().zip(&w.per_component) {
        let c = &tc.component;
        let factor = MarkedDiagram::new(c.diagram.clone(), BTreeSet::from([wc.adjacent]))?;
        // classification doubles as a check that every factor is recognised
        classify_vmrt(&factor)?;
        vmrt.push(format_factor(&factor));
        tags.push(tc.values.iter().map(u32::to_string).collect::<String>());
        let roots: BTreeSet<String> = wc.roots.iter().map(|r| r.to_string()).collect();
        sets.push(format!("{{{}}}", roots.into_iter().collect::<Vec<_>>().join(",")));
        let olds: Vec<String> = (1..=c.diagram.rank())
            .map(|new| c.old_of(new).expect("relabelling is a bijection").to_string())
            .collect();
        coords.push(olds.join("."));
    }
    let mut row = Map::new();
    row.insert("diagram".into(), json!(d.to_string()));
    row.insert("node".into(), json!(k));
    row.insert("vmrt".into(), json!(vmrt.join(" x ")));
    row.insert("tag".into(), json!(tags.join(",")));
    row.insert("weights".into(), json!(sets.join(" x ")));
    row.insert("coords".into(), json!(coords.join(" x ")));
    Ok(row)
}

//! Reading the checked-in reference tables and comparing regenerated output
//! against them. Nothing here feeds the engine; it only judges its output.

use std::collections::{BTreeMap, BTreeSet};

use crate::spec::parse_space;

pub const E6: &str = include_str!("../fixtures/e6.tsv");
pub const E7: &str = include_str!("../fixtures/e7.tsv");
pub const E8: &str = include_str!("../fixtures/e8.tsv");
pub const FG: &str = include_str!("../fixtures/fg.tsv");
pub const T1: &str = include_str!("../fixtures/t1.tsv");
pub const T2: &str = include_str!("../fixtures/t2.tsv");
pub const ERRATA: &str = include_str!("../fixtures/errata.tsv");

/// Rows of a TSV body keyed by header, header line skipped.
pub fn tsv_records(text: &str) -> Result<Vec<BTreeMap<String, String>>, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or("empty table")?.split('\t').collect();
    lines
        .map(|l| {
            let cells: Vec<&str> = l.split('\t').collect();
            if cells.len() != header.len() {
                return Err(format!("row has {} cells, header has {}: {l}", cells.len(), header.len()));
            }
            Ok(header.iter().map(|h| h.to_string()).zip(cells.into_iter().map(String::from)).collect())
        })
        .collect()
}

/// One component of an appendix row in the ambient diagram's own labels:
/// the VMRT factor's type and marked node, the tag, and the weights.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AmbientComponent {
    pub cartan: String,
    pub marked: usize,
    pub tag: BTreeMap<usize, u32>,
    pub weights: BTreeSet<BTreeMap<usize, u32>>,
}

/// `(diagram, node)` -> components keyed by their node set.
pub type AmbientTable = BTreeMap<(String, usize), BTreeMap<BTreeSet<usize>, AmbientComponent>>;

fn digits(s: &str) -> Result<Vec<u32>, String> {
    s.chars()
        .map(|c| c.to_digit(10).ok_or_else(|| format!("bad digit '{c}' in {s}")))
        .collect()
}

fn split_factors(s: &str) -> Vec<&str> {
    s.split(" x ").map(str::trim).collect()
}

/// Parses an appendix-style table and rewrites every component into the
/// ambient labels using the `coords` column.
pub fn ambient(text: &str) -> Result<AmbientTable, String> {
    let mut out = AmbientTable::new();
    for rec in tsv_records(text)? {
        let get = |k: &str| rec.get(k).map(String::as_str).ok_or(format!("missing column {k}"));
        let diagram = get("diagram")?.to_string();
        let node: usize = get("node")?.parse().map_err(|e| format!("node: {e}"))?;
        let vmrt = split_factors(get("vmrt")?);
        let tags: Vec<&str> = get("tag")?.split(',').collect();
        let sets = split_factors(get("weights")?);
        let coords = split_factors(get("coords")?);
        let n = vmrt.len();
        if [tags.len(), sets.len(), coords.len()] != [n; 3] {
            return Err(format!("{diagram}/{node}: column lengths disagree"));
        }
        let mut comps = BTreeMap::new();
        for c in 0..n {
            let olds: Vec<usize> = coords[c]
                .split('.')
                .map(|s| s.parse().map_err(|e| format!("coords {}: {e}", coords[c])))
                .collect::<Result<_, _>>()?;
            let factor = parse_space(vmrt[c]).map_err(|e| format!("{diagram}/{node} vmrt: {e}"))?;
            let f = &factor.space.factors()[0];
            if f.diagram().rank() != olds.len() {
                return Err(format!("{diagram}/{node}: {} has rank {}, coords list {}", vmrt[c], f.diagram().rank(), olds.len()));
            }
            let mark = *f.marked().iter().next().ok_or("unmarked factor")?;
            let to_ambient = |vals: Vec<u32>| -> Result<BTreeMap<usize, u32>, String> {
                if vals.len() != olds.len() {
                    return Err(format!("{diagram}/{node}: vector of length {} on {} nodes", vals.len(), olds.len()));
                }
                Ok(olds.iter().copied().zip(vals).collect())
            };
            let tag = to_ambient(digits(tags[c])?)?;
            let body = sets[c].trim_start_matches('{').trim_end_matches('}');
            let mut weights = BTreeSet::new();
            for w in body.split(',') {
                if !weights.insert(to_ambient(digits(w.trim())?)?) {
                    return Err(format!("{diagram}/{node}: weight {w} repeated"));
                }
            }
            comps.insert(
                olds.iter().copied().collect(),
                AmbientComponent {
                    cartan: f.diagram().to_string(),
                    marked: olds[mark - 1],
                    tag,
                    weights,
                },
            );
        }
        out.insert((diagram, node), comps);
    }
    Ok(out)
}

/// Exact comparison of two appendix tables; returns the number of rows.
pub fn compare_ambient(expected: &str, got: &str) -> Result<usize, String> {
    let want = ambient(expected)?;
    let have = ambient(got)?;
    let mut problems = Vec::new();
    for (key, comps) in &want {
        match have.get(key) {
            None => problems.push(format!("{}/{} missing", key.0, key.1)),
            Some(h) if h != comps => problems.push(format!("{}/{} differs: want {comps:?}, got {h:?}", key.0, key.1)),
            Some(_) => {}
        }
    }
    for key in have.keys().filter(|k| !want.contains_key(*k)) {
        problems.push(format!("{}/{} unexpected", key.0, key.1));
    }
    if problems.is_empty() {
        Ok(want.len())
    } else {
        Err(problems.join("; "))
    }
}

/// `2n-3`, `n`, `n-1`, `7` evaluated at `n`.
pub fn eval_affine(expr: &str, n: i64) -> Result<i64, String> {
    let e = expr.trim();
    let bad = || format!("bad expression {expr}");
    let Some(pos) = e.find('n') else {
        return e.parse().map_err(|_| bad());
    };
    let coef = match &e[..pos] {
        "" => 1,
        c => c.parse().map_err(|_| bad())?,
    };
    let rest = &e[pos + 1..];
    let shift = match rest.chars().next() {
        None => 0,
        Some('+') => rest[1..].parse().map_err(|_| bad())?,
        Some('-') => -rest[1..].parse::<i64>().map_err(|_| bad())?,
        _ => return Err(bad()),
    };
    Ok(coef * n + shift)
}

/// Instantiates `{...}` groups and bare `n` in a symbolic label.
pub fn instantiate(template: &str, n: i64) -> Result<String, String> {
    let mut out = String::new();
    let mut chars = template.chars();
    while let Some(c) = chars.next() {
        match c {
            '{' => {
                let inner: String = chars.by_ref().take_while(|&c| c != '}').collect();
                out.push_str(&eval_affine(&inner, n)?.to_string());
            }
            'n' => out.push_str(&n.to_string()),
            c => out.push(c),
        }
    }
    Ok(out)
}

fn rank_range(s: &str) -> Result<Vec<i64>, String> {
    let bad = |_| format!("bad rank range {s}");
    match s.split_once('-') {
        Some((a, b)) => Ok((a.parse().map_err(bad)?..=b.parse().map_err(bad)?).collect()),
        None => Ok(vec![s.parse().map_err(bad)?]),
    }
}

/// A symbolic reference row instantiated at one rank:
/// `(diagram, node, expected value)`.
pub fn symbolic_rows(text: &str, value_column: &str) -> Result<Vec<(String, usize, i64, String)>, String> {
    let mut out = Vec::new();
    for rec in tsv_records(text)? {
        let family = &rec["family"];
        for n in rank_range(&rec["ranks"])? {
            let node = eval_affine(&rec["node"], n)?;
            let raw = &rec[value_column];
            // plain affine entries are numbers; anything else is a label
            let value = match eval_affine(raw, n) {
                Ok(v) => v.to_string(),
                Err(_) => instantiate(raw, n)?,
            };
            out.push((format!("{family}{n}"), node as usize, n, value));
        }
    }
    Ok(out)
}

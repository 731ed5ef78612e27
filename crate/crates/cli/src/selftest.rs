//! Internal consistency and oracle checks, run concurrently and reported in
//! a fixed order.

use std::collections::{BTreeMap, BTreeSet};
use std::thread;

use homlines_core::chow::{self, Partition, Preset, VanishingCase};
use homlines_core::diagram::{CartanType, DynkinDiagram, Family};
use homlines_core::marked::{self, MarkedDiagram, ProductSpace};
use homlines_core::tangent::{classical_closed_form, splitting_type, tag, weights};
use homlines_core::thresholds::{classify_vmrt, gm_bound};
use homlines_core::{positive_roots, SplittingType};
use serde_json::{json, Map};

use crate::report::{Format, Report};
use crate::spec::{format_space, parse_space};
use crate::tables::{emit_tables, Which};
use crate::{fixtures, oracles};

pub type Check = (&'static str, fn() -> Result<String, String>);

pub const CHECKS: &[Check] = &[
    ("root-counts", root_counts),
    ("closed-forms", closed_forms),
    ("long-root-law", long_root_law),
    ("table-1", table_one),
    ("table-2", table_two),
    ("appendix-e6", || appendix(Which::E6, fixtures::E6)),
    ("appendix-e7", || appendix(Which::E7, fixtures::E7)),
    ("appendix-e8", || appendix(Which::E8, fixtures::E8)),
    ("appendix-fg", || appendix(Which::Fg, fixtures::FG)),
    ("errata", errata),
    ("gap-bounds", gap_bounds),
    ("worked-examples", worked_examples),
    ("parse-round-trip", parse_round_trip),
    ("chow-exceptional", chow_exceptional),
    ("chow-grassmannian", chow_grassmannian),
    ("chow-spinor", chow_spinor),
    ("vanishing", vanishing),
    ("lemma31", lemma31),
    ("pieri-vs-lr", pieri_vs_lr),
];

/// Runs every check; returns the report and the number of failures.
pub fn run() -> (Report, usize) {
    let results: Vec<Result<String, String>> = thread::scope(|s| {
        let handles: Vec<_> = CHECKS.iter().map(|&(_, f)| s.spawn(f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    let mut failed = 0;
    let rows = CHECKS
        .iter()
        .zip(results)
        .map(|(&(name, _), r)| {
            let (ok, detail) = match r {
                Ok(d) => (true, d),
                Err(d) => {
                    failed += 1;
                    (false, d)
                }
            };
            let mut row = Map::new();
            row.insert("check".into(), json!(name));
            row.insert("ok".into(), json!(ok));
            row.insert("detail".into(), json!(detail));
            row
        })
        .collect();
    (Report::table(&["check", "ok", "detail"], rows), failed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn build(f: Family, n: usize) -> Result<DynkinDiagram, String> {
    DynkinDiagram::build(f, n).map_err(err)
}

fn grass(f: Family, n: usize, k: usize) -> Result<ProductSpace, String> {
    Ok(MarkedDiagram::grassmannian(build(f, n)?, k).map_err(err)?.into())
}

fn root_counts() -> Result<String, String> {
    let types = CartanType::all_up_to(8);
    for &ty in &types {
        let n = ty.rank();
        let want = match ty.family() {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        };
        let got = positive_roots(&DynkinDiagram::from_type(ty)).len();
        ensure(got == want, || format!("{ty}: {got} roots, expected {want}"))?;
    }
    Ok(format!("{} types", types.len()))
}

fn closed_forms() -> Result<String, String> {
    let mut cases = 0;
    for n in 2..=12 {
        for k in 1..=n {
            let got = splitting_type(&build(Family::A, n)?, k).map_err(err)?;
            let want = SplittingType::from_blocks(&[(-1, n - 1)]);
            ensure(got == want, || format!("A{n}/{k}: {got} vs {want}"))?;
            cases += 1;
        }
    }
    for f in [Family::B, Family::C, Family::D] {
        for n in 4..=12 {
            for k in 1..=n {
                let got = splitting_type(&build(f, n)?, k).map_err(err)?;
                let want = classical_closed_form(f, n, k).map_err(err)?;
                ensure(got == want, || format!("{f}{n}/{k}: {got} vs {want}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn long_root_law() -> Result<String, String> {
    let mut nodes = 0;
    for ty in CartanType::all_up_to(8) {
        let d = DynkinDiagram::from_type(ty);
        for k in d.nodes().filter(|&k| !d.is_short(k)) {
            let s = splitting_type(&d, k).map_err(err)?;
            ensure(s.degrees().iter().all(|&a| a == -1), || format!("{ty}/{k}: {s}"))?;
            nodes += 1;
        }
    }
    Ok(format!("{nodes} long nodes"))
}

fn emitted(which: Which, rank: usize) -> Result<Vec<BTreeMap<String, String>>, String> {
    let tsv = emit_tables(which, rank).map_err(err)?.render(Format::Tsv);
    fixtures::tsv_records(&tsv)
}

/// Every instantiated reference row must appear in the regenerated table.
fn symbolic(which: Which, fixture: &str, column: &str, emitted_column: &str) -> Result<String, String> {
    let expected = fixtures::symbolic_rows(fixture, column)?;
    let mut by_rank: BTreeMap<usize, Vec<BTreeMap<String, String>>> = BTreeMap::new();
    for (_, _, n, _) in &expected {
        let rank = (*n as usize).clamp(4, 10);
        if let std::collections::btree_map::Entry::Vacant(slot) = by_rank.entry(rank) {
            slot.insert(emitted(which, rank)?);
        }
    }
    for (diagram, node, n, want) in &expected {
        let rows = &by_rank[&(*n as usize).clamp(4, 10)];
        let row = rows
            .iter()
            .find(|r| &r["diagram"] == diagram && r["node"] == node.to_string())
            .ok_or_else(|| format!("{diagram}/{node} not emitted"))?;
        let got = &row[emitted_column];
        ensure(got == want, || format!("{diagram}/{node}: got {got}, expected {want}"))?;
    }
    Ok(format!("{} entries", expected.len()))
}

fn table_one() -> Result<String, String> {
    symbolic(Which::T1, fixtures::T1, "mx", "mx")
}

fn table_two() -> Result<String, String> {
    symbolic(Which::T2, fixtures::T2, "varsigma", "varsigma")
}

fn appendix(which: Which, fixture: &str) -> Result<String, String> {
    let tsv = emit_tables(which, 5).map_err(err)?.render(Format::Tsv);
    fixtures::compare_ambient(fixture, &tsv).map(|n| format!("{n} rows"))
}

/// Each correction must be what the regenerated table actually contains.
fn errata() -> Result<String, String> {
    let recs = fixtures::tsv_records(fixtures::ERRATA)?;
    for r in &recs {
        let which = match r["diagram"].as_str() {
            "E6" => Which::E6,
            "E7" => Which::E7,
            "E8" => Which::E8,
            _ => Which::Fg,
        };
        let rows = emitted(which, 5)?;
        let row = rows
            .iter()
            .find(|x| x["diagram"] == r["diagram"] && x["node"] == r["node"])
            .ok_or("errata row not in table")?;
        let weights = &row["weights"];
        let has = |w: &str| weights.split(['{', '}', ',']).any(|x| x.trim() == w);
        ensure(has(&r["corrected"]), || format!("{}/{}: {} missing", r["diagram"], r["node"], r["corrected"]))?;
    }
    Ok(format!("{} corrections", recs.len()))
}

fn gap_bounds() -> Result<String, String> {
    let mut checked = 0;
    for ty in CartanType::all_up_to(8).into_iter().filter(|t| t.rank() >= 2) {
        let d = DynkinDiagram::from_type(ty);
        let n = ty.rank();
        for k in d.nodes() {
            let b = gm_bound(&grass(ty.family(), n, k)?, 1, k).map_err(err)?;
            let want = if !d.is_short(k) {
                2
            } else {
                match ty.family() {
                    Family::G => 4,
                    Family::B | Family::C | Family::F => 3,
                    _ => unreachable!("simply laced types have no short nodes"),
                }
            };
            let paper = if d.is_short(k) { 4 } else { 2 };
            ensure(b.computed_threshold == want, || format!("{ty}/{k}: computed {}", b.computed_threshold))?;
            ensure(b.paper_threshold == paper, || format!("{ty}/{k}: paper {}", b.paper_threshold))?;
            checked += 1;
        }
        let full: ProductSpace = MarkedDiagram::borel(d.clone()).into();
        for (i, k) in full.marked_pairs() {
            let b = gm_bound(&full, i, k).map_err(err)?;
            let t = (b.paper_threshold, b.computed_threshold, b.max_semistable_gap);
            ensure(t == (1, 1, 0), || format!("{ty}/B at {k}: {t:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} families"))
}

fn factor_names(fs: &[MarkedDiagram]) -> Result<Vec<String>, String> {
    fs.iter().map(|f| classify_vmrt(f).map(|c| c.to_string()).map_err(err)).collect()
}

fn worked_examples() -> Result<String, String> {
    let mut flags = 0;
    for n in 4..=9usize {
        for d1 in 2..n {
            for d2 in d1 + 2..=n - 1 {
                let x = parse_space(&format!("A{n}/P{{{d1},{d2}}}")).map_err(err)?.space;
                let m1 = format_space(&marked::special_family(&x, 1, d1).map_err(err)?);
                let m2 = format_space(&marked::special_family(&x, 1, d2).map_err(err)?);
                ensure(m1 == format!("A{n}/P{{{},{},{d2}}}", d1 - 1, d1 + 1), || m1.clone())?;
                ensure(m2 == format!("A{n}/P{{{d1},{},{}}}", d2 - 1, d2 + 1), || m2.clone())?;
                let c1 = factor_names(&marked::vmrt(&x, 1, d1).map_err(err)?)?;
                let c2 = factor_names(&marked::vmrt(&x, 1, d2).map_err(err)?)?;
                let p = |m: usize| format!("P^{m}");
                ensure(c1 == [p(d1 - 1), p(d2 - d1 - 1)], || format!("{c1:?}"))?;
                ensure(c2 == [p(d2 - d1 - 1), p(n - d2)], || format!("{c2:?}"))?;
                flags += 1;
            }
        }
    }
    let x = parse_space("E7/P{7}").map_err(err)?.space;
    let u = format_space(&marked::universal_family(&x, 1, 7).map_err(err)?);
    ensure(u == "E7/P{6,7}", || u.clone())?;
    let d = build(Family::E, 7)?;
    let t = tag(&d, 7).map_err(err)?;
    ensure(t.per_component.len() == 1 && t.per_component[0].values == [0, 0, 0, 0, 0, 1], || format!("{t:?}"))?;
    let w = weights(&d, 7).map_err(err)?;
    ensure(w.len() == 16, || format!("{} weights", w.len()))?;
    let s = splitting_type(&d, 7).map_err(err)?;
    ensure(s == SplittingType::from_blocks(&[(-1, 16)]), || s.to_string())?;
    Ok(format!("{flags} flag manifolds and E7/P7"))
}

/// Every single factor of rank at most 8 with one or two marks, plus full
/// flags, and pairs of them; also checks alternate spellings.
fn parse_round_trip() -> Result<String, String> {
    let mut singles = Vec::new();
    for ty in CartanType::all_up_to(8) {
        let d = DynkinDiagram::from_type(ty);
        let n = ty.rank();
        for a in 1..=n {
            for b in a..=n {
                let marks = BTreeSet::from([a, b]);
                singles.push(MarkedDiagram::new(d.clone(), marks).map_err(err)?);
            }
        }
        singles.push(MarkedDiagram::borel(d));
    }
    let mut corpus: Vec<ProductSpace> = singles.iter().cloned().map(ProductSpace::from).collect();
    for (i, a) in singles.iter().enumerate().step_by(7) {
        let b = &singles[(i * 31 + 5) % singles.len()];
        corpus.push(ProductSpace::new(vec![a.clone(), b.clone()]));
    }
    for x in &corpus {
        let text = format_space(x);
        let back = parse_space(&text).map_err(err)?;
        ensure(&back.space == x, || format!("{text} parsed to {}", back))?;
        let messy = text.replace(" x ", "×").replace(',', " , ").replace('{', " { ");
        let again = parse_space(&messy).map_err(err)?;
        ensure(again.to_string() == text, || format!("{messy} -> {again}"))?;
    }
    Ok(format!("{} specs", corpus.len()))
}

fn dims(p: Preset) -> Result<Vec<usize>, String> {
    let ring = chow::build_ring(p).map_err(err)?;
    (0..=p.dimension()).map(|t| ring.graded_dim(t).map_err(err)).collect()
}

fn basis(p: Preset, t: u32) -> Result<Vec<String>, String> {
    let ring = chow::GradedQuotientRing::from_preset(p, t).map_err(err)?;
    Ok(ring.basis(t).map_err(err)?.iter().map(|m| ring.render_monomial(m)).collect())
}

fn palindromic(d: &[usize]) -> bool {
    d.iter().eq(d.iter().rev())
}

fn chow_exceptional() -> Result<String, String> {
    let e6 = dims(Preset::E6P6)?;
    ensure(e6[..4] == [1, 1, 1, 1] && e6[8] == 3 && palindromic(&e6), || format!("E6P6 {e6:?}"))?;
    ensure(e6.iter().sum::<usize>() == 27, || format!("E6P6 total {e6:?}"))?;
    let b4: BTreeSet<String> = basis(Preset::E6P6, 4)?.into_iter().collect();
    ensure(b4 == BTreeSet::from(["y1^4".to_string(), "y4".to_string()]), || format!("{b4:?}"))?;
    let e7 = dims(Preset::E7P7)?;
    ensure(e7[..5] == [1; 5] && e7[10] == 3 && e7[12] == 3 && palindromic(&e7), || format!("E7P7 {e7:?}"))?;
    ensure(e7.iter().sum::<usize>() == 56, || format!("E7P7 total {e7:?}"))?;
    let c3 = dims(Preset::C3P3)?;
    ensure(c3[1] == 1 && c3[2] == 1 && palindromic(&c3), || format!("C3P3 {c3:?}"))?;
    ensure(c3.iter().sum::<usize>() == 8, || format!("C3P3 total {c3:?}"))?;
    Ok(format!("E6P6 {e6:?}, E7P7 {e7:?}, C3P3 {c3:?}"))
}

fn chow_grassmannian() -> Result<String, String> {
    let mut rings = 0;
    for n in 2..=7u32 {
        for d in 1..=3u32.min(n - 1) {
            let got = dims(Preset::Grassmannian { d, n })?;
            let mut want = vec![0usize; (d * (n - d)) as usize + 1];
            for p in oracles::box_partitions(d, n - d) {
                want[p.iter().sum::<u32>() as usize] += 1;
            }
            ensure(got == want, || format!("G({d},{n}): {got:?} vs {want:?}"))?;
            rings += 1;
        }
    }
    Ok(format!("{rings} rings"))
}

fn chow_spinor() -> Result<String, String> {
    for n in 1..=5u32 {
        // coefficients of prod (1 + t^i), i = 1..n
        let mut want = vec![1usize];
        for i in 1..=n as usize {
            let mut next = vec![0; want.len() + i];
            for (j, &c) in want.iter().enumerate() {
                next[j] += c;
                next[j + i] += c;
            }
            want = next;
        }
        let got = dims(Preset::Spinor(n))?;
        ensure(got == want, || format!("Spinor({n}): {got:?} vs {want:?}"))?;
    }
    let q = dims(Preset::QuadricEven(3))?;
    ensure(q == [1, 1, 1, 2, 1, 1, 1], || format!("Q^6 {q:?}"))?;
    Ok("Spinor(1..=5), Q^6".into())
}

fn vanishing() -> Result<String, String> {
    let mut out = Vec::new();
    for case in VanishingCase::ALL {
        let r = chow::verify_vanishing(case).map_err(err)?;
        out.push(format!("{}: {}", case.name(), r.forced_zero.join(",")));
    }
    Ok(out.join("; "))
}

pub const LEMMA31_CASES: [(u32, u32, u32); 6] = [(2, 4, 1), (2, 5, 1), (2, 5, 2), (3, 6, 1), (3, 6, 2), (3, 7, 2)];

fn lemma31() -> Result<String, String> {
    for (d, n, t) in LEMMA31_CASES {
        let r = chow::verify_lemma31(d, n, t).map_err(err)?;
        ensure(r.verified(), || format!("({d},{n},{t}) fails: {r:?}"))?;
    }
    Ok(format!("{} cases", LEMMA31_CASES.len()))
}

/// Every product of two classes in small Grassmannians, against the tableau count.
pub fn pieri_vs_lr() -> Result<String, String> {
    let mut products = 0;
    for (d, n) in [(2u32, 4u32), (2, 5), (3, 6)] {
        let classes = oracles::box_partitions(d, n - d);
        for a in &classes {
            for b in &classes {
                let got = chow::schubert_mult(d, n, &Partition::new(a.clone()), &Partition::new(b.clone())).map_err(err)?;
                let got: BTreeMap<Vec<u32>, i64> = got.terms().map(|(p, c)| (p.parts().to_vec(), c)).collect();
                let want: BTreeMap<Vec<u32>, i64> = oracles::lr_product(d, n, a, b).into_iter().map(|(p, c)| (p, c as i64)).collect();
                ensure(got == want, || format!("G({d},{n}) {a:?}*{b:?}: {got:?} vs {want:?}"))?;
                if b.len() == 1 {
                    let p = chow::pieri(d, n, &Partition::new(a.clone()), b[0]).map_err(err)?;
                    let p: BTreeMap<Vec<u32>, i64> = p.terms().map(|(q, c)| (q.parts().to_vec(), c)).collect();
                    ensure(p == want, || format!("pieri G({d},{n}) {a:?}*{b:?}"))?;
                }
                products += 1;
            }
        }
    }
    Ok(format!("{products} products"))
}

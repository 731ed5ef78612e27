use std::collections::{BTreeMap, BTreeSet};

use homlines_core::diagram::{CartanType, DynkinDiagram, Family};
use homlines_core::marked::{MarkedDiagram, ProductSpace};
use homlines_core::roots::positive_roots;
use homlines_core::tangent::{classical_closed_form, splitting_type, tag, weights};
use homlines_core::thresholds::{
    gm_bound, nu, slope, uniform_verdict, varsigma, vmrt_breakdown, SplittingProfile, Verdict,
};
use homlines_core::SplittingType;
use num_rational::Ratio;
use proptest::prelude::*;

fn d(f: Family, n: usize) -> DynkinDiagram {
    DynkinDiagram::build(f, n).unwrap()
}

fn grass(f: Family, n: usize, k: usize) -> ProductSpace {
    MarkedDiagram::grassmannian(d(f, n), k).unwrap().into()
}

/// Tangent degrees recomputed in the original coordinates from the roots of
/// the whole diagram, with no component relabelling involved.
fn splitting_oracle(diagram: &DynkinDiagram, k: usize) -> SplittingType {
    let nbrs = diagram.neighbors(k).unwrap();
    let mut degrees = Vec::new();
    for r in positive_roots(diagram) {
        if r.coeff(k) != 0 {
            continue;
        }
        // a root avoiding k lives in one component; it is a weight iff it
        // has positive coefficient at that component's neighbour of k
        if !nbrs.iter().any(|&u| r.coeff(u) > 0) {
            continue;
        }
        let pairing: i32 = diagram
            .nodes()
            .map(|j| r.coeff(j) * -diagram.cartan_entry(k, j))
            .sum();
        degrees.push(-pairing);
    }
    SplittingType::new(degrees)
}

#[test]
fn closed_forms_agree_with_tags_and_weights() {
    let mut cases = 0;
    for n in 2..=12 {
        for k in 1..=n {
            let got = splitting_type(&d(Family::A, n), k).unwrap();
            assert_eq!(got, SplittingType::from_blocks(&[(-1, n - 1)]), "A{n}/{k}");
            cases += 1;
        }
    }
    for f in [Family::B, Family::C, Family::D] {
        for n in 4..=12 {
            for k in 1..=n {
                let got = splitting_type(&d(f, n), k).unwrap();
                assert_eq!(got, classical_closed_form(f, n, k).unwrap(), "{f}{n}/{k}");
                cases += 1;
            }
        }
    }
    // sum of n over 2..=12, plus three times the sum over 4..=12
    assert_eq!(cases, 77 + 3 * 72);
}

#[test]
fn full_system_oracle() {
    for ty in CartanType::all_up_to(9) {
        let dg = DynkinDiagram::from_type(ty);
        for k in dg.nodes() {
            assert_eq!(splitting_type(&dg, k).unwrap(), splitting_oracle(&dg, k), "{ty}/{k}");
        }
    }
}

#[test]
fn long_root_law_and_entry_range() {
    for ty in CartanType::all_up_to(8) {
        let dg = DynkinDiagram::from_type(ty);
        for k in dg.nodes() {
            let s = splitting_type(&dg, k).unwrap();
            if !dg.is_short(k) {
                assert!(s.degrees().iter().all(|&a| a == -1), "{ty}/{k}: {s}");
            }
            assert!(s.degrees().iter().all(|a| (-3..=-1).contains(a)), "{ty}/{k}");
            let g2_one = ty.family() == Family::G && k == 1;
            assert_eq!(s.degrees().contains(&-3), g2_one, "{ty}/{k}");
        }
    }
}

#[test]
fn size_law() {
    for ty in CartanType::all_up_to(8) {
        let dg = DynkinDiagram::from_type(ty);
        for k in dg.nodes() {
            let g = MarkedDiagram::grassmannian(dg.clone(), k).unwrap();
            let expected: usize = homlines_core::marked::vmrt(&g.into(), 1, k)
                .unwrap()
                .iter()
                .map(|f| {
                    let m = f.single_mark().unwrap();
                    positive_roots(f.diagram()).iter().filter(|r| r.coeff(m) > 0).count()
                })
                .sum();
            assert_eq!(splitting_type(&dg, k).unwrap().len(), expected, "{ty}/{k}");
            assert_eq!(weights(&dg, k).unwrap().len(), expected);
        }
    }
}

#[test]
fn tags_are_positive_exactly_at_neighbours() {
    for ty in CartanType::all_up_to(8) {
        let dg = DynkinDiagram::from_type(ty);
        for k in dg.nodes() {
            let nbrs = dg.neighbors(k).unwrap();
            for tc in tag(&dg, k).unwrap().per_component {
                for (new, &v) in tc.values.iter().enumerate() {
                    let old = tc.component.old_of(new + 1).unwrap();
                    assert_eq!(v > 0, nbrs.contains(&old));
                    assert!(v <= 3);
                }
            }
        }
    }
}

/// Entries of the threshold table, written out at rank `n`.
fn table_two(n: usize) -> Vec<(Family, usize, usize, u32)> {
    let n32 = n as u32;
    vec![
        (Family::A, n, 1, n32 - 1),
        (Family::A, n, n, n32 - 1),
        (Family::B, n, 1, 2 * n32 - 3),
        (Family::B, n, n, n32 - 1),
        (Family::C, n, 1, 2 * n32 - 2),
        (Family::C, n, n, n32 - 1),
        (Family::D, n, 1, 2 * n32 - 5),
        (Family::D, n, n - 1, n32 - 1),
        (Family::D, n, n, n32 - 1),
    ]
}

#[test]
fn threshold_table() {
    for n in 4..=10 {
        for (f, r, k, v) in table_two(n) {
            assert_eq!(varsigma(&d(f, r), k).unwrap().value, Some(v), "{f}{r}/{k}");
        }
    }
    let fixed = [
        (Family::E, 6, 1, 6),
        (Family::E, 7, 1, 7),
        (Family::E, 8, 1, 9),
        (Family::E, 6, 2, 5),
        (Family::E, 7, 2, 6),
        (Family::E, 8, 2, 7),
        (Family::E, 6, 6, 6),
        (Family::E, 7, 7, 10),
        (Family::E, 8, 8, 13),
        (Family::F, 4, 1, 5),
        (Family::F, 4, 4, 5),
        (Family::G, 2, 1, 3),
        (Family::G, 2, 2, 1),
    ];
    for (f, r, k, v) in fixed {
        assert_eq!(varsigma(&d(f, r), k).unwrap().value, Some(v), "{f}{r}/{k}");
    }
}

#[test]
fn threshold_symmetries() {
    for n in 2..=10 {
        for k in 1..=n {
            let a = varsigma(&d(Family::A, n), k).unwrap();
            let b = varsigma(&d(Family::A, n), n + 1 - k).unwrap();
            assert_eq!(a, b, "A{n}/{k}");
        }
    }
    for n in 4..=10 {
        assert_eq!(
            varsigma(&d(Family::D, n), n - 1).unwrap(),
            varsigma(&d(Family::D, n), n).unwrap()
        );
    }
}

#[test]
fn thresholds_are_minima_over_factors() {
    for ty in CartanType::all_up_to(8) {
        let dg = DynkinDiagram::from_type(ty);
        for k in dg.nodes() {
            let Ok(parts) = vmrt_breakdown(&dg, k) else { continue };
            let min = parts.iter().filter_map(|(_, _, t)| t.value).min();
            let top = matches!((ty.family(), k), (Family::C, 1) | (Family::G, 1));
            if !top {
                assert_eq!(varsigma(&dg, k).unwrap().value, min, "{ty}/{k}");
            }
        }
    }
}

#[test]
fn gap_bounds_against_lowest_entry() {
    for ty in CartanType::all_up_to(8) {
        let dg = DynkinDiagram::from_type(ty);
        for k in dg.nodes() {
            let x: ProductSpace = MarkedDiagram::grassmannian(dg.clone(), k).unwrap().into();
            let b = gm_bound(&x, 1, k).unwrap();
            assert!(b.computed_threshold <= b.paper_threshold, "{ty}/{k}");
            assert_eq!(b.max_semistable_gap + 1, b.computed_threshold);
            if ty.rank() == 1 {
                continue;
            }
            let low = splitting_type(&dg, k).unwrap().lowest().unwrap();
            assert_eq!(
                b.computed_threshold == b.paper_threshold,
                low == -1 || low == -3,
                "{ty}/{k}"
            );
        }
    }
}

#[test]
fn borel_gap_is_zero() {
    for ty in CartanType::all_up_to(6) {
        let x: ProductSpace = MarkedDiagram::borel(DynkinDiagram::from_type(ty)).into();
        for (i, k) in x.marked_pairs() {
            let b = gm_bound(&x, i, k).unwrap();
            assert_eq!((b.paper_threshold, b.computed_threshold, b.max_semistable_gap), (1, 1, 0));
        }
    }
}

#[test]
fn nu_of_products() {
    let x = ProductSpace::new(vec![
        MarkedDiagram::grassmannian(d(Family::A, 3), 2).unwrap(),
        MarkedDiagram::grassmannian(d(Family::A, 3), 2).unwrap(),
    ]);
    assert_eq!(nu(&x).unwrap().value, Some(1));
    assert_eq!(nu(&grass(Family::E, 7, 7)).unwrap().value, Some(10));
}

fn arb_profile() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..=8)
}

proptest! {
    #[test]
    fn slope_is_symmetric_and_shifts(mut p in arb_profile(), c in -10i64..=10, seed in any::<u64>()) {
        let a = SplittingProfile::new(p.clone()).unwrap();
        let n = p.len();
        p.rotate_left((seed as usize) % n);
        let b = SplittingProfile::new(p).unwrap();
        prop_assert_eq!(slope(&a), slope(&b));
        prop_assert_eq!(slope(&a.twist(c)), slope(&a) + Ratio::from_integer(c));
    }

    #[test]
    fn verdict_ignores_twists(p in arb_profile(), c in -10i64..=10) {
        let x = grass(Family::E, 7, 7);
        let prof = SplittingProfile::new(p.clone()).unwrap();
        let r = prof.rank();
        let one = BTreeMap::from([((1, 7), prof.clone())]);
        let twisted = BTreeMap::from([((1, 7), prof.twist(c))]);
        let v = uniform_verdict(r, &x, &one).unwrap();
        prop_assert_eq!(&v, &uniform_verdict(r, &x, &twisted).unwrap());
        prop_assert_eq!(v == Verdict::SplitsAsLineBundles, prof.is_constant());
    }
}

#[test]
fn verdict_needs_all_profiles() {
    let x: ProductSpace = MarkedDiagram::new(d(Family::A, 4), BTreeSet::from([1, 3])).unwrap().into();
    let only = BTreeMap::from([((1, 1), SplittingProfile::new(vec![0, 0]).unwrap())]);
    assert!(uniform_verdict(2, &x, &only).is_err());
}

use std::collections::BTreeSet;

use homlines_core::diagram::{CartanType, DynkinDiagram, Family};
use homlines_core::marked::{self, MarkedDiagram, ProductSpace};
use homlines_core::roots::positive_roots;
use proptest::prelude::*;

fn all_types(max_rank: usize) -> Vec<CartanType> {
    CartanType::all_up_to(max_rank)
}

fn arb_type() -> impl Strategy<Value = CartanType> {
    prop::sample::select(all_types(8))
}

fn arb_marked() -> impl Strategy<Value = MarkedDiagram> {
    arb_type().prop_flat_map(|ty| {
        let n = ty.rank();
        prop::collection::btree_set(1..=n, 1..=n).prop_map(move |marks| {
            MarkedDiagram::new(DynkinDiagram::from_type(ty), marks).unwrap()
        })
    })
}

fn arb_space() -> impl Strategy<Value = ProductSpace> {
    prop::collection::vec(arb_marked(), 1..=3).prop_map(ProductSpace::new)
}

/// Independent count: size of the root system in the orthonormal model,
/// halved, for the classical series; the exceptional values are fixed.
fn root_count_oracle(f: Family, n: usize) -> usize {
    match f {
        Family::A => (n + 1) * n / 2,
        // {±e_i ± e_j} plus {±e_i} (B) or {±2e_i} (C)
        Family::B | Family::C => (2 * n * (n - 1) + n * 2) / 2,
        Family::D => 2 * n * (n - 1) / 2,
        Family::E => [36, 63, 120][n - 6],
        Family::F => 24,
        Family::G => 6,
    }
}

#[test]
fn positive_root_counts() {
    for ty in all_types(8) {
        let d = DynkinDiagram::from_type(ty);
        assert_eq!(
            positive_roots(&d).len(),
            root_count_oracle(ty.family(), ty.rank()),
            "{ty}"
        );
    }
}

#[test]
fn b2_roots_by_hand() {
    let d = DynkinDiagram::build(Family::B, 2).unwrap();
    let got: Vec<String> = positive_roots(&d).iter().map(|r| r.to_string()).collect();
    assert_eq!(got, ["01", "10", "11", "12"]);
}

#[test]
fn arrows_point_at_short_nodes() {
    for ty in all_types(8) {
        let d = DynkinDiagram::from_type(ty);
        let mut multiple = 0;
        for e in d.edges() {
            if e.multiplicity > 1 {
                multiple += 1;
                let target = e.arrow.expect("multiple edge has an arrow");
                assert!(d.is_short(target), "{ty}");
            } else {
                assert!(e.arrow.is_none());
            }
        }
        assert_eq!(d.edges().len(), ty.rank() - 1, "{ty} is a tree");
        if ty.is_simply_laced() {
            assert_eq!(multiple, 0);
            assert!(d.nodes().all(|k| !d.is_short(k)));
        } else {
            assert_eq!(multiple, 1, "{ty}");
        }
    }
}

#[test]
fn e_type_branch_node() {
    for n in 6..=8 {
        let d = DynkinDiagram::build(Family::E, n).unwrap();
        assert_eq!(d.neighbors(2).unwrap(), BTreeSet::from([4]));
        assert_eq!(d.neighbors(4).unwrap(), BTreeSet::from([2, 3, 5]));
    }
}

proptest! {
    #[test]
    fn cartan_round_trip(ty in arb_type()) {
        let d = DynkinDiagram::from_type(ty);
        let a = d.cartan_matrix();
        for i in d.nodes() {
            prop_assert_eq!(a.get(i, i), 2);
            for j in d.nodes().filter(|&j| j != i) {
                let m = a.get(i, j) * a.get(j, i);
                prop_assert_eq!(m, i32::from(d.multiplicity(i, j)));
                if m > 1 {
                    // the short end carries the large entry
                    prop_assert_eq!(a.get(i, j) < -1, d.is_short(i));
                }
            }
        }
    }

    #[test]
    fn components_partition_the_rest(ty in arb_type(), seed in any::<u64>()) {
        let d = DynkinDiagram::from_type(ty);
        let removed: BTreeSet<usize> = d.nodes().filter(|k| seed >> (k % 64) & 1 == 1).collect();
        let comps = d.components_without(&removed);
        let total: usize = comps.iter().map(|c| c.diagram.rank()).sum();
        prop_assert_eq!(total, d.rank() - removed.len());
        let mut seen = BTreeSet::new();
        for c in &comps {
            for (&old, &new) in c.relabel() {
                prop_assert!(!removed.contains(&old));
                prop_assert!(seen.insert(old));
                prop_assert_eq!(c.old_of(new), Some(old));
                // a component with only simple edges is simply laced, all long
                if !c.diagram.cartan_type().is_simply_laced() {
                    prop_assert_eq!(c.diagram.is_short(new), d.is_short(old));
                }
            }
            for (&a, &na) in c.relabel() {
                for (&b, &nb) in c.relabel() {
                    prop_assert_eq!(c.diagram.cartan_entry(na, nb), d.cartan_entry(a, b));
                }
            }
        }
    }

    #[test]
    fn reflections_stay_in_the_system(ty in arb_type()) {
        let d = DynkinDiagram::from_type(ty);
        let a = d.cartan_matrix();
        let roots: BTreeSet<_> = positive_roots(&d).into_iter().collect();
        for r in &roots {
            let support = r.support();
            let first = *support.iter().next().unwrap();
            let mut reach = BTreeSet::from([first]);
            let mut stack = vec![first];
            while let Some(u) = stack.pop() {
                for v in d.neighbors(u).unwrap() {
                    if support.contains(&v) && reach.insert(v) {
                        stack.push(v);
                    }
                }
            }
            prop_assert_eq!(&reach, &support);
            for i in d.nodes() {
                let s = r.reflect(&a, i);
                prop_assert!(roots.contains(&s) || roots.contains(&s.negate()));
            }
        }
    }

    #[test]
    fn one_neighbor_per_component(ty in arb_type(), k in 1usize..=8) {
        let d = DynkinDiagram::from_type(ty);
        prop_assume!(d.contains(k));
        let nbrs = d.neighbors(k).unwrap();
        let comps = d.components_without(&BTreeSet::from([k]));
        prop_assert_eq!(comps.len(), nbrs.len());
        for c in &comps {
            prop_assert_eq!(nbrs.iter().filter(|&&u| c.contains_old(u)).count(), 1);
        }
    }

    #[test]
    fn family_operations_touch_one_factor(x in arb_space(), pick in any::<prop::sample::Index>()) {
        let pairs = x.marked_pairs();
        let (i, delta) = pairs[pick.index(pairs.len())];
        let m = marked::special_family(&x, i, delta).unwrap();
        let u = marked::universal_family(&x, i, delta).unwrap();
        prop_assert_eq!(m.factors().len(), x.factors().len());
        prop_assert_eq!(u.factors().len(), x.factors().len());
        for j in 1..=x.factors().len() {
            if j != i {
                prop_assert_eq!(m.factor(j).unwrap(), x.factor(j).unwrap());
                prop_assert_eq!(u.factor(j).unwrap(), x.factor(j).unwrap());
            }
        }
        let f = x.factor(i).unwrap();
        let nbrs = f.diagram().neighbors(delta).unwrap();
        let case = marked::case_of(&x, i, delta).unwrap();
        prop_assert_eq!(case == homlines_core::CaseTag::I, nbrs.is_subset(f.marked()));
    }

    #[test]
    fn grassmannianization_is_idempotent(x in arb_space(), pick in any::<prop::sample::Index>()) {
        let pairs = x.marked_pairs();
        let (i, delta) = pairs[pick.index(pairs.len())];
        let g = marked::grassmannianization(&x, i, delta).unwrap();
        let k = g.single_mark().unwrap();
        let again = marked::grassmannianization(&g.clone().into(), 1, k).unwrap();
        prop_assert_eq!(again, g);
        for v in marked::vmrt(&x, i, delta).unwrap() {
            prop_assert_eq!(v.marked().len(), 1);
        }
    }

    #[test]
    fn long_nodes_are_never_exposed(m in arb_marked()) {
        for &j in m.marked() {
            if !m.diagram().is_short(j) {
                prop_assert!(!m.is_exposed_short(j).unwrap());
            }
        }
    }
}

#[test]
fn flag_manifold_families() {
    // F(2,5;8) = A7/P{2,5}
    let x: ProductSpace = MarkedDiagram::new(
        DynkinDiagram::build(Family::A, 7).unwrap(),
        BTreeSet::from([2, 5]),
    )
    .unwrap()
    .into();
    let m = marked::special_family(&x, 1, 2).unwrap();
    assert_eq!(m.to_string(), "A7/P{1,3,5}");
    let m = marked::special_family(&x, 1, 5).unwrap();
    assert_eq!(m.to_string(), "A7/P{2,4,6}");
    let v: Vec<String> = marked::vmrt(&x, 1, 2).unwrap().iter().map(|f| f.to_string()).collect();
    assert_eq!(v, ["A1/P{1}", "A2/P{1}"]);
}

use std::collections::BTreeMap;
use std::time::Instant;

use homlines_core::chow::{
    build_ring, pieri, schubert_mult, verify_lemma31, verify_vanishing, Element, GradedQuotientRing,
    Grassmannian, Partition, Preset, VanishingCase,
};
use proptest::prelude::*;

/// Coefficients of the Gaussian binomial `[n choose d]_q`.
fn q_binomial(n: usize, d: usize) -> Vec<usize> {
    // [n, d] = [n-1, d-1] + q^d [n-1, d]
    let mut table: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for m in 0..=n {
        for e in 0..=m.min(d) {
            let v = if e == 0 || e == m {
                vec![1]
            } else {
                let a = &table[&(m - 1, e - 1)];
                let b = &table[&(m - 1, e)];
                let mut v = vec![0; a.len().max(b.len() + e)];
                for (i, x) in a.iter().enumerate() {
                    v[i] += x;
                }
                for (i, x) in b.iter().enumerate() {
                    v[i + e] += x;
                }
                v
            };
            table.insert((m, e), v);
        }
    }
    table.remove(&(n, d)).unwrap()
}

fn poly_product(factors: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut p = vec![1usize];
    for i in factors {
        let mut q = vec![0; p.len() + i];
        for (j, &c) in p.iter().enumerate() {
            q[j] += c;
            q[j + i] += c;
        }
        p = q;
    }
    p
}

fn dims(ring: &GradedQuotientRing) -> Vec<usize> {
    (0..=ring.cap()).map(|t| ring.graded_dim(t).unwrap()).collect()
}

#[test]
fn grassmannian_dimensions() {
    for n in 2..=8u32 {
        for d in 1..=3u32.min(n - 1) {
            let expect = q_binomial(n as usize, d as usize);
            let g = Grassmannian::new(d, n).unwrap();
            let boxed: Vec<usize> = (0..=g.dimension()).map(|t| g.partitions(t).len()).collect();
            assert_eq!(boxed, expect, "box G({d},{n})");
            let ring = build_ring(Preset::Grassmannian { d, n }).unwrap();
            assert_eq!(dims(&ring), expect, "ring G({d},{n})");
            for t in 0..=ring.cap() {
                assert!(ring.torsion(t).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn spinor_dimensions() {
    for n in 1..=6u32 {
        let start = Instant::now();
        let ring = build_ring(Preset::Spinor(n)).unwrap();
        let expect = poly_product(1..=n as usize);
        assert_eq!(dims(&ring), expect, "S_{n}");
        assert!(start.elapsed().as_secs() < 10, "S_{n} took {:?}", start.elapsed());
    }
}

#[test]
fn quadric_dimensions() {
    for m in 1..=5u32 {
        let ring = build_ring(Preset::QuadricEven(m)).unwrap();
        let mut expect = vec![1; 2 * m as usize + 1];
        expect[m as usize] = 2;
        assert_eq!(dims(&ring), expect, "Q^{}", 2 * m);
    }
}

#[test]
fn poincare_symmetry() {
    for (preset, top) in [(Preset::E6P6, 16), (Preset::E7P7, 27), (Preset::C3P3, 6)] {
        let ring = build_ring(preset).unwrap();
        let d = dims(&ring);
        assert_eq!(d.len(), top + 1);
        for t in 0..=top {
            assert_eq!(d[t], d[top - t], "{preset} at {t}");
        }
        assert_eq!(d[top], 1);
    }
}

#[test]
fn exceptional_total_ranks() {
    // Euler characteristics: 27, 56 and 8 fixed points
    for (preset, total) in [(Preset::E6P6, 27), (Preset::E7P7, 56), (Preset::C3P3, 8)] {
        let ring = build_ring(preset).unwrap();
        assert_eq!(dims(&ring).iter().sum::<usize>(), total, "{preset}");
    }
}

/// Littlewood-Richardson coefficients by brute force over fillings of
/// `nu / lambda` with content `mu` whose reverse reading word is a lattice word.
fn lr_coefficient(lambda: &[u32], mu: &[u32], nu: &[u32]) -> i64 {
    let rows = nu.len();
    let lam = |i: usize| lambda.get(i).copied().unwrap_or(0) as usize;
    if (0..lambda.len()).any(|i| lam(i) > nu.get(i).copied().unwrap_or(0) as usize) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (lam(i)..nu[i] as usize).map(move |j| (i, j)))
        .collect();
    let content: Vec<usize> = mu.iter().map(|&m| m as usize).collect();
    if cells.len() != content.iter().sum::<usize>() {
        return 0;
    }
    let mut grid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        content: &[usize],
        used: &mut Vec<usize>,
        grid: &mut BTreeMap<(usize, usize), usize>,
    ) -> i64 {
        if idx == cells.len() {
            // reading word: rows top to bottom, each right to left
            let mut by_row: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
            for (&(i, j), &v) in grid.iter() {
                by_row.entry(i).or_default().push((j, v));
            }
            let mut count = vec![0usize; content.len()];
            for (_, mut row) in by_row {
                row.sort_by_key(|b| std::cmp::Reverse(b.0));
                for (_, v) in row {
                    count[v] += 1;
                    if v > 0 && count[v] > count[v - 1] {
                        return 0;
                    }
                }
            }
            return 1;
        }
        let (i, j) = cells[idx];
        let mut total = 0;
        for v in 0..content.len() {
            if used[v] == content[v] {
                continue;
            }
            if j > 0 {
                if let Some(&left) = grid.get(&(i, j - 1)) {
                    if left > v {
                        continue;
                    }
                }
            }
            if i > 0 {
                if let Some(&up) = grid.get(&(i - 1, j)) {
                    if up >= v {
                        continue;
                    }
                }
            }
            used[v] += 1;
            grid.insert((i, j), v);
            total += go(idx + 1, cells, content, used, grid);
            grid.remove(&(i, j));
            used[v] -= 1;
        }
        total
    }
    go(0, &cells, &content, &mut vec![0; content.len()], &mut grid)
}

fn lr_product(g: Grassmannian, a: &Partition, b: &Partition) -> BTreeMap<Partition, i64> {
    let mut out = BTreeMap::new();
    let t = a.size() + b.size();
    if t > g.dimension() {
        return out;
    }
    for nu in g.partitions(t) {
        let c = lr_coefficient(a.parts(), b.parts(), nu.parts());
        if c != 0 {
            out.insert(nu, c);
        }
    }
    out
}

fn as_map(e: &homlines_core::chow::SchubertElement) -> BTreeMap<Partition, i64> {
    e.terms().map(|(p, c)| (p.clone(), c)).collect()
}

#[test]
fn pieri_and_products_match_lr_oracle() {
    for (d, n) in [(2, 4), (2, 5), (3, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let all: Vec<Partition> = (0..=g.dimension()).flat_map(|t| g.partitions(t)).collect();
        for lam in &all {
            for b in 0..=g.cols() {
                let got = pieri(d, n, lam, b).unwrap();
                assert_eq!(as_map(&got), lr_product(g, lam, &Partition::row(b)), "G({d},{n}) {lam}*{b}");
            }
            for mu in &all {
                let got = schubert_mult(d, n, lam, mu).unwrap();
                assert!(got.is_zero() || got.is_nonnegative());
                assert_eq!(as_map(&got), lr_product(g, lam, mu), "G({d},{n}) {lam}*{mu}");
            }
        }
    }
}

#[test]
fn pieri_against_full_rows() {
    // sigma_b times sigma_{(n-d)^(d-1)} is the single class ((n-d)^(d-1), b)
    for (d, n) in [(2, 5), (3, 6), (3, 7), (2, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let top = Partition::new(vec![g.cols(); d as usize - 1]);
        for b in 0..=g.cols() {
            let mut parts = vec![g.cols(); d as usize - 1];
            parts.push(b);
            let expect = BTreeMap::from([(Partition::new(parts), 1)]);
            assert_eq!(as_map(&pieri(d, n, &top, b).unwrap()), expect);
        }
    }
}

#[test]
fn lemma_cases() {
    for (d, n, t) in [(2, 4, 1), (2, 5, 1), (2, 5, 2), (3, 6, 1), (3, 6, 2), (3, 7, 2)] {
        assert!(verify_lemma31(d, n, t).unwrap().verified(), "({d},{n},{t})");
    }
}

#[test]
fn vanishing_cases() {
    for case in VanishingCase::ALL {
        let report = verify_vanishing(case).unwrap();
        // the top-rank unknowns on both sides are among those forced to zero
        let (top, _) = case.ranks();
        for side in ["a", "b"] {
            let name = format!("{side}\u{303}{top}");
            assert!(report.forced_zero.contains(&name), "{case}: {:?}", report.forced_zero);
        }
    }
}

fn arb_element(ring: &GradedQuotientRing, t: u32) -> impl Strategy<Value = Element> {
    let monos = ring.monomials_of_degree(t);
    prop::collection::vec(-4i128..=4, monos.len()).prop_map(move |cs| {
        let mut e = Element::zero();
        for (m, c) in monos.iter().zip(cs) {
            e.add_term(m.clone(), c);
        }
        e
    })
}

fn preset_strategy() -> impl Strategy<Value = Preset> {
    prop::sample::select(vec![
        Preset::E6P6,
        Preset::C3P3,
        Preset::QuadricEven(3),
        Preset::Spinor(4),
        Preset::Grassmannian { d: 2, n: 5 },
    ])
}

thread_local! {
    static RINGS: BTreeMap<Preset, GradedQuotientRing> = [
        Preset::E6P6,
        Preset::C3P3,
        Preset::QuadricEven(3),
        Preset::Spinor(4),
        Preset::Grassmannian { d: 2, n: 5 },
    ]
    .into_iter()
    .map(|p| (p, build_ring(p).unwrap()))
    .collect();
}

fn ring(p: Preset) -> GradedQuotientRing {
    RINGS.with(|r| r[&p].clone())
}

/// `scale * x == value`, compared as rationals.
fn same_class(a: &homlines_core::chow::Reduced, b: &homlines_core::chow::Reduced) -> bool {
    a.value.scale(b.scale) == b.value.scale(a.scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_idempotent_and_linear(
        (p, x, y) in preset_strategy().prop_flat_map(|p| {
            let r = ring(p);
            (0..=r.cap()).prop_flat_map(move |t| {
                let r = ring(p);
                (Just(p), arb_element(&r, t), arb_element(&r, t))
            })
        }),
        c in -3i128..=3,
    ) {
        let r = ring(p);
        let nx = r.normal_form(&x).unwrap();
        let again = r.normal_form(&nx.value).unwrap();
        prop_assert_eq!(again.scale, 1);
        prop_assert_eq!(&again.value, &nx.value);
        let ny = r.normal_form(&y).unwrap();
        let sum = r.normal_form(&(&x + &y.scale(c))).unwrap();
        // nx/sx + c ny/sy == sum/ss
        let lhs = &nx.value.scale(ny.scale * sum.scale) + &ny.value.scale(c * nx.scale * sum.scale);
        prop_assert_eq!(lhs, sum.value.scale(nx.scale * ny.scale));
    }

    #[test]
    fn products_respect_reduction(
        (p, x, y, z) in preset_strategy().prop_flat_map(|p| {
            let r = ring(p);
            let cap = r.cap();
            (0..=cap / 3, 0..=cap / 3, 0..=cap / 3).prop_flat_map(move |(a, b, c)| {
                let r = ring(p);
                (Just(p), arb_element(&r, a), arb_element(&r, b), arb_element(&r, c))
            })
        }),
    ) {
        let r = ring(p);
        let xy = r.normal_form(&(&x * &y)).unwrap();
        let yx = r.normal_form(&(&y * &x)).unwrap();
        prop_assert!(same_class(&xy, &yx));
        let left = r.normal_form(&(&(&x * &y) * &z)).unwrap();
        let right = r.normal_form(&(&x * &(&y * &z))).unwrap();
        prop_assert!(same_class(&left, &right));
        // reducing a factor first does not change the class of the product
        let nx = r.normal_form(&x).unwrap();
        let via = r.normal_form(&(&nx.value * &y)).unwrap();
        let direct = r.normal_form(&(&x * &y)).unwrap().value.scale(nx.scale * via.scale);
        prop_assert_eq!(direct, via.value.scale(xy.scale));
    }
}

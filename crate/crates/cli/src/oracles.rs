//! Slow, independent reference computations used by the self-test.

use std::collections::BTreeMap;

/// Littlewood-Richardson coefficient by counting tableaux of shape `nu/lambda`
/// and content `mu` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let part = |p: &[u32], i: usize| p.get(i).copied().unwrap_or(0) as usize;
    let size = |p: &[u32]| p.iter().map(|&x| x as usize).sum::<usize>();
    if size(nu) != size(lambda) + size(mu) || (0..lambda.len().max(nu.len())).any(|i| part(lambda, i) > part(nu, i)) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..nu.len())
        .flat_map(|r| (part(lambda, r)..part(nu, r)).map(move |c| (r, c)))
        .collect();
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut used = vec![0u32; mu.len()];
    let mut count = 0;
    search(&cells, 0, mu, &mut used, &mut fill, &mut count);
    count
}

fn search(
    cells: &[(usize, usize)],
    at: usize,
    mu: &[u32],
    used: &mut Vec<u32>,
    fill: &mut BTreeMap<(usize, usize), usize>,
    count: &mut u64,
) {
    if at == cells.len() {
        if is_lattice(cells, fill, mu.len()) {
            *count += 1;
        }
        return;
    }
    let (r, c) = cells[at];
    for v in 0..mu.len() {
        if used[v] == mu[v] {
            continue;
        }
        // rows weakly increase, columns strictly increase
        if c > 0 && fill.get(&(r, c - 1)).is_some_and(|&w| w > v) {
            continue;
        }
        if r > 0 && fill.get(&(r - 1, c)).is_some_and(|&w| w >= v) {
            continue;
        }
        fill.insert((r, c), v);
        used[v] += 1;
        search(cells, at + 1, mu, used, fill, count);
        used[v] -= 1;
        fill.remove(&(r, c));
    }
}

/// Reading right to left, top to bottom, every prefix has at least as many
/// `i`s as `i+1`s.
fn is_lattice(cells: &[(usize, usize)], fill: &BTreeMap<(usize, usize), usize>, letters: usize) -> bool {
    let mut order = cells.to_vec();
    order.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut seen = vec![0u32; letters];
    for cell in order {
        let v = fill[&cell];
        seen[v] += 1;
        if v > 0 && seen[v] > seen[v - 1] {
            return false;
        }
    }
    true
}

/// Partitions inside the `rows x cols` box, all sizes.
pub fn box_partitions(rows: u32, cols: u32) -> Vec<Vec<u32>> {
    fn go(rows: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        if prefix.len() as u32 == rows {
            return;
        }
        for p in 1..=max {
            prefix.push(p);
            go(rows, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// The product `s_lambda * s_mu` in `G(d, n)` as `nu -> coefficient`.
pub fn lr_product(d: u32, n: u32, lambda: &[u32], mu: &[u32]) -> BTreeMap<Vec<u32>, u64> {
    box_partitions(d, n - d)
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_coefficients() {
        assert_eq!(lr_coefficient(&[1], &[1], &[2]), 1);
        assert_eq!(lr_coefficient(&[1], &[1], &[1, 1]), 1);
        assert_eq!(lr_coefficient(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
        assert_eq!(lr_coefficient(&[2, 1], &[1], &[2, 1]), 0);
    }

    #[test]
    fn box_counts_are_binomial() {
        assert_eq!(box_partitions(2, 2).len(), 6);
        assert_eq!(box_partitions(3, 3).len(), 20);
    }
}

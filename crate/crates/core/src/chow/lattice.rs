//! Integer row reduction: Hermite normal form of a row lattice and the
//! Smith invariants of the quotient. All arithmetic is checked.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ChowError;

type R<T> = core::result::Result<T, ChowError>;

fn mul(a: i128, b: i128) -> R<i128> {
    a.checked_mul(b).ok_or(ChowError::Overflow)
}

fn add(a: i128, b: i128) -> R<i128> {
    a.checked_add(b).ok_or(ChowError::Overflow)
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `x a + y b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `u -= q v` on the columns from `from` on; earlier columns of `v` are zero.
fn axpy(u: &mut [i128], q: i128, v: &[i128], from: usize) -> R<()> {
    for (a, &b) in u[from..].iter_mut().zip(&v[from..]) {
        if b != 0 {
            *a = add(*a, mul(-q, b)?)?;
        }
    }
    Ok(())
}

/// `x u + y v`
fn combine(x: i128, u: &[i128], y: i128, v: &[i128]) -> R<Vec<i128>> {
    u.iter()
        .zip(v)
        .map(|(&a, &b)| add(mul(x, a)?, mul(y, b)?))
        .collect()
}

/// Rows of the Hermite normal form keyed by pivot column. Pivots are
/// positive and every entry above a pivot lies in `0..pivot`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Hermite {
    pub rows: BTreeMap<usize, Vec<i128>>,
}

impl Hermite {
    /// Adds `v` to the lattice. Rows stay reduced at the pivot columns to
    /// their right, which keeps entries from growing across insertions.
    pub fn insert(&mut self, mut v: Vec<i128>) -> R<()> {
        while let Some(c) = v.iter().position(|&x| x != 0) {
            let Some(r) = self.rows.get(&c) else {
                if v[c] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.place(c, v)?;
                return Ok(());
            };
            let a = r[c];
            let q = v[c].div_euclid(a);
            if q != 0 {
                axpy(&mut v, q, r, c)?;
            }
            let b = v[c];
            if b == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a, b);
            let pivot = combine(x, r, y, &v)?;
            v = combine(b / g, r, -(a / g), &v)?;
            self.place(c, pivot)?;
        }
        Ok(())
    }

    /// Stores `row` with pivot `c`, reducing it by the pivots to its right
    /// and the rows above it by the new pivot.
    fn place(&mut self, c: usize, mut row: Vec<i128>) -> R<()> {
        for (&c2, r2) in self.rows.range(c + 1..) {
            let q = row[c2].div_euclid(r2[c2]);
            if q != 0 {
                axpy(&mut row, q, r2, c2)?;
            }
        }
        let p = row[c];
        for (_, above) in self.rows.range_mut(..c) {
            let q = above[c].div_euclid(p);
            if q != 0 {
                axpy(above, q, &row, c)?;
            }
        }
        self.rows.insert(c, row);
        Ok(())
    }

    /// Reduce entries above each pivot modulo that pivot.
    pub fn finish(&mut self) -> R<()> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (idx, &c) in pivots.iter().enumerate().rev() {
            let row = self.rows[&c].clone();
            let p = row[c];
            for &above in &pivots[..idx] {
                let target = self.rows.get_mut(&above).unwrap();
                let q = target[c].div_euclid(p);
                if q != 0 {
                    *target = combine(1, target, -q, &row)?;
                }
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `(s, w)` with `s v - w` in the row lattice, `s > 0` and `w`
    /// zero on every pivot column.
    pub fn reduce(&self, v: &[i128]) -> R<(i128, Vec<i128>)> {
        let mut w = v.to_vec();
        let mut scale = 1i128;
        for (&c, row) in &self.rows {
            if w[c] == 0 {
                continue;
            }
            let g = gcd(w[c], row[c]);
            let up = row[c] / g;
            let take = w[c] / g;
            w = combine(up, &w, -take, row)?;
            scale = mul(scale, up)?;
        }
        let content = w.iter().fold(scale, |acc, &x| gcd(acc, x));
        if content > 1 {
            scale /= content;
            w.iter_mut().for_each(|x| *x /= content);
        }
        Ok((scale, w))
    }
}

/// Nontrivial invariant factors of `Z^ncols / rowspan(rows)` (the torsion).
pub(crate) fn smith_torsion(rows: &[Vec<i128>], ncols: usize) -> R<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut invariants = Vec::new();
    let mut t = 0;
    while t < m.len() && t < ncols {
        // smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in (t + 1)..m.len() {
                let q = m[i][t] / p;
                if q != 0 {
                    let pivot_row = m[t].clone();
                    m[i] = combine(1, &m[i], -q, &pivot_row)?;
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in (t + 1)..ncols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] = add(row[j], mul(-q, row[t])?)?;
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must also divide the rest of the block
                let bad = (t + 1..m.len())
                    .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let row = m[i].clone();
                        m[t] = combine(1, &m[t], 1, &row)?;
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t onto the pivot
            let mut best = (t, t);
            for i in t..m.len() {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        let d = m[t][t].abs();
        if d > 1 {
            invariants.push(d);
        }
        t += 1;
    }
    invariants.sort_unstable();
    Ok(invariants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn hermite(rows: &[Vec<i128>]) -> Hermite {
        let mut h = Hermite::default();
        for r in rows {
            h.insert(r.clone()).unwrap();
        }
        h.finish().unwrap();
        h
    }

    #[test]
    fn hermite_small() {
        let h = hermite(&[vec![2, -6, 3], vec![4, 0, 1]]);
        assert_eq!(h.rank(), 2);
        assert!(h.rows.iter().all(|(&c, r)| r[c] > 0));
        let h = hermite(&[vec![2, -6, 3]]);
        assert_eq!(h.reduce(&[1, 0, 0]).unwrap(), (2, vec![0, 6, -3]));
        assert_eq!(h.reduce(&[0, 1, 0]).unwrap(), (1, vec![0, 1, 0]));
    }

    #[test]
    fn dependent_rows_collapse() {
        let h = hermite(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 5]]);
        assert_eq!(h.rank(), 2);
    }

    #[test]
    fn torsion() {
        assert_eq!(smith_torsion(&[vec![2, 0], vec![0, 3]], 2).unwrap(), vec![6]);
        assert_eq!(smith_torsion(&[vec![2, 4], vec![6, 8]], 2).unwrap(), vec![2, 4]);
        assert!(smith_torsion(&[vec![1, 0, -6, 1], vec![0, -6, 15, -2]], 4)
            .unwrap()
            .is_empty());
        assert_eq!(smith_torsion(&[vec![0, 4, 6]], 3).unwrap(), vec![2]);
    }
}

//! Schubert calculus on `G(d, n)`: Pieri's rule, products through the
//! Giambelli determinant, and the check behind the non-existence of
//! nonconstant maps from a Grassmannian to a smaller one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::ChowError;

type R<T> = core::result::Result<T, ChowError>;

/// Nonincreasing positive parts; trailing zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&p| p > 0);
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// The special class `sigma_b`.
    pub fn row(b: u32) -> Partition {
        Partition::new(vec![b])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, rows: u32, cols: u32) -> bool {
        self.0.len() <= rows as usize && self.part(0) <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// The Grassmannian of `d`-planes in `n`-space; Schubert classes live in the
/// `d x (n-d)` box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grassmannian {
    pub d: u32,
    pub n: u32,
}

impl Grassmannian {
    pub fn new(d: u32, n: u32) -> R<Grassmannian> {
        if d == 0 || d >= n {
            return Err(ChowError::PreconditionViolated(format!(
                "G({d},{n}) needs 0 < d < n"
            )));
        }
        Ok(Grassmannian { d, n })
    }

    pub fn cols(self) -> u32 {
        self.n - self.d
    }

    pub fn dimension(self) -> u32 {
        self.d * self.cols()
    }

    pub fn contains(self, p: &Partition) -> bool {
        p.fits(self.d, self.cols())
    }

    fn check(self, p: &Partition) -> R<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(ChowError::OutOfBox {
                partition: format!("{p}"),
                rows: self.d,
                cols: self.cols(),
            })
        }
    }

    /// Partitions of `t` in the box, in decreasing lexicographic order.
    pub fn partitions(self, t: u32) -> Vec<Partition> {
        fn go(left: u32, max: u32, rows: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows == 0 {
                return;
            }
            for p in (1..=max.min(left)).rev() {
                cur.push(p);
                go(left - p, p, rows - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(t, self.cols(), self.d, &mut Vec::new(), &mut out);
        out
    }
}

/// Integer combination of Schubert classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SchubertElement {
    terms: BTreeMap<Partition, i64>,
}

impl SchubertElement {
    pub fn zero() -> SchubertElement {
        SchubertElement::default()
    }

    pub fn class(p: Partition) -> SchubertElement {
        let mut e = SchubertElement::zero();
        e.add(p, 1);
        e
    }

    pub fn add(&mut self, p: Partition, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(p.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn add_scaled(&mut self, other: &SchubertElement, c: i64) {
        for (p, &v) in &other.terms {
            self.add(p.clone(), v * c);
        }
    }

    pub fn coeff(&self, p: &Partition) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }
}

impl fmt::Display for SchubertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "s{p}")?;
        }
        Ok(())
    }
}

fn pieri_unchecked(g: Grassmannian, lambda: &Partition, b: u32) -> SchubertElement {
    // mu_1 in [l_1, cols], mu_i in [l_i, l_{i-1}], sum of increments = b
    fn go(
        g: Grassmannian,
        lambda: &Partition,
        i: usize,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut SchubertElement,
    ) {
        if i == g.d as usize {
            if left == 0 {
                out.add(Partition::new(cur.clone()), 1);
            }
            return;
        }
        let lo = lambda.part(i);
        let hi = if i == 0 { g.cols() } else { lambda.part(i - 1) };
        for m in lo..=hi.min(lo + left) {
            cur.push(m);
            go(g, lambda, i + 1, left - (m - lo), cur, out);
            cur.pop();
        }
    }
    let mut out = SchubertElement::zero();
    if b > g.cols() {
        return out;
    }
    go(g, lambda, 0, b, &mut Vec::new(), &mut out);
    out
}

/// `sigma_b * sigma_lambda` by horizontal strips.
pub fn pieri(d: u32, n: u32, lambda: &Partition, b: u32) -> R<SchubertElement> {
    let g = Grassmannian::new(d, n)?;
    g.check(lambda)?;
    if b > g.cols() {
        return Err(ChowError::OutOfBox {
            partition: format!("{}", Partition::row(b)),
            rows: d,
            cols: g.cols(),
        });
    }
    Ok(pieri_unchecked(g, lambda, b))
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == k {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| cur[i] > cur[j])
                .count();
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// `sigma_lambda * sigma_mu`, expanding `sigma_mu` as the Giambelli
/// determinant `det(sigma_{mu_i + j - i})` and applying Pieri repeatedly.
pub fn schubert_mult(d: u32, n: u32, lambda: &Partition, mu: &Partition) -> R<SchubertElement> {
    let g = Grassmannian::new(d, n)?;
    g.check(lambda)?;
    g.check(mu)?;
    let l = mu.len();
    let mut out = SchubertElement::zero();
    'perm: for (perm, sign) in permutations(l) {
        let mut specials = Vec::with_capacity(l);
        for (i, &j) in perm.iter().enumerate() {
            let idx = mu.part(i) as i64 + j as i64 - i as i64;
            if idx < 0 || idx > g.cols() as i64 {
                continue 'perm;
            }
            specials.push(idx as u32);
        }
        let mut acc = SchubertElement::class(lambda.clone());
        for b in specials {
            let mut next = SchubertElement::zero();
            for (p, c) in acc.terms() {
                next.add_scaled(&pieri_unchecked(g, p, b), c);
            }
            acc = next;
            if acc.is_zero() {
                continue 'perm;
            }
        }
        out.add_scaled(&acc, sign);
    }
    Ok(out)
}

/// The Schubert-calculus facts used to rule out nonconstant maps from
/// `G(d, n)` to `G(t, n - d + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma31Report {
    pub d: u32,
    pub n: u32,
    pub t: u32,
    /// `sigma_t * sigma_{n-d+1-t}`
    pub product: SchubertElement,
    /// `sigma_t * sigma_{(n-d)^{d-1}}` and the same for `n-d+1-t`.
    pub restrictions: [SchubertElement; 2],
    /// Number of classes checked against `sigma_{(n-d)^{d-1}}`.
    pub classes_checked: usize,
    pub product_nonzero: bool,
    pub restrictions_hold: bool,
    pub coefficients_nonnegative: bool,
}

impl Lemma31Report {
    pub fn verified(&self) -> bool {
        self.product_nonzero && self.restrictions_hold && self.coefficients_nonnegative
    }
}

pub fn verify_lemma31(d: u32, n: u32, t: u32) -> R<Lemma31Report> {
    if !(2 <= d && d <= n.saturating_sub(d) && 1 <= t && t <= (n - d).div_ceil(2)) {
        return Err(ChowError::PreconditionViolated(format!(
            "need 2 <= d <= n-d and 1 <= t <= (n-d+1)/2, got d={d} n={n} t={t}"
        )));
    }
    let g = Grassmannian::new(d, n)?;
    let k = g.cols();
    let s = k + 1 - t;
    let product = pieri(d, n, &Partition::row(t), s)?;
    let top = Partition::new(vec![k; d as usize - 1]);

    let mut classes_checked = 0;
    let mut restrictions_hold = true;
    let mut nonnegative = product.is_nonnegative();
    let mut restrictions = [SchubertElement::zero(), SchubertElement::zero()];
    for (slot, a) in [t, s].into_iter().enumerate() {
        for alpha in g.partitions(a) {
            let prod = schubert_mult(d, n, &alpha, &top)?;
            nonnegative &= prod.is_nonnegative();
            let expected = if alpha.len() == 1 {
                let mut parts = top.parts().to_vec();
                parts.push(a);
                SchubertElement::class(Partition::new(parts))
            } else {
                SchubertElement::zero()
            };
            restrictions_hold &= prod == expected;
            if alpha.len() == 1 {
                restrictions[slot] = prod;
            }
            classes_checked += 1;
        }
    }
    Ok(Lemma31Report {
        d,
        n,
        t,
        product_nonzero: !product.is_zero(),
        product,
        restrictions,
        classes_checked,
        restrictions_hold,
        coefficients_nonnegative: nonnegative,
    })
}

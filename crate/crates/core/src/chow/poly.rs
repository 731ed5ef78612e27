//! Sparse integer polynomials in named unknowns.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

/// Exponent vector as sorted `(variable, power)` pairs.
pub type VarMonomial = Vec<(usize, u32)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<VarMonomial, i128>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: i128) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: usize) -> Poly {
        let mut p = Poly::zero();
        p.add_term(alloc::vec![(v, 1)], 1);
        p
    }

    fn add_term(&mut self, m: VarMonomial, c: i128) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VarMonomial, i128)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn scale(&self, c: i128) -> Poly {
        let mut out = Poly::zero();
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|&(v, _)| v))
            .collect()
    }

    /// Sets every variable in `vars` to zero.
    pub fn kill(&self, vars: &BTreeSet<usize>) -> Poly {
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            if m.iter().all(|(v, _)| !vars.contains(v)) {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// Replaces variable `v` by `p`.
    pub fn substitute(&self, v: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let mut term = Poly::constant(c);
            for &(w, e) in m {
                for _ in 0..e {
                    term = &term * &(if w == v { p.clone() } else { Poly::var(w) });
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Divides out the content and fixes the sign of the leading term.
    pub fn primitive(&self) -> Poly {
        let g = self
            .terms
            .values()
            .fold(0i128, |acc, &c| super::lattice::gcd(acc, c));
        if g == 0 {
            return Poly::zero();
        }
        let sign = if self.terms.values().next().is_some_and(|&c| c < 0) {
            -1
        } else {
            1
        };
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), sign * c / g);
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        // higher total degree first, then the map order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| core::cmp::Reverse(m.iter().map(|&(_, e)| e).sum::<u32>()));
        for (idx, (m, &c)) in terms.into_iter().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if idx == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            let show_coeff = abs != 1 || m.is_empty();
            if show_coeff {
                let _ = write!(s, "{abs}");
            }
            for (j, &(v, e)) in m.iter().enumerate() {
                if j > 0 || show_coeff {
                    s.push('*');
                }
                s.push_str(&names[v]);
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.variables().last().copied().unwrap_or(0))
            .map(|i| alloc::format!("u{i}"))
            .collect();
        f.write_str(&self.render(&names))
    }
}

fn mul_monomials(a: &VarMonomial, b: &VarMonomial) -> VarMonomial {
    let mut m: BTreeMap<usize, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *m.entry(v).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                out.add_term(mul_monomials(a, b), x * y);
            }
        }
        out
    }
}

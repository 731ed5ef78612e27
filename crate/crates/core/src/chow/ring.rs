//! Graded quotients of integer polynomial rings, one degree at a time.
//!
//! In each degree the monomials are ordered lexicographically with the first
//! generator largest, relation multiples are put in Hermite form, and the
//! non-pivot monomials form the basis of the free part.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use super::lattice::{smith_torsion, Hermite};
use super::ChowError;

type R<T> = core::result::Result<T, ChowError>;

/// Exponents, one per generator. `Ord` is lexicographic on exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(ngens: usize) -> Monomial {
        Monomial(vec![0; ngens])
    }

    /// The `i`-th generator, 0-based.
    pub fn generator(ngens: usize, i: usize) -> Monomial {
        let mut e = vec![0; ngens];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Integer combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, i128>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn term(m: Monomial, c: i128) -> Element {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn one(ngens: usize) -> Element {
        Element::term(Monomial::one(ngens), 1)
    }

    pub fn generator(ngens: usize, i: usize) -> Element {
        Element::term(Monomial::generator(ngens, i), 1)
    }

    /// Builds `sum c * prod x_i^{e_i}` from `(c, exponents)` pairs.
    pub fn from_terms(terms: &[(i128, &[u32])]) -> Element {
        let mut e = Element::zero();
        for &(c, exps) in terms {
            e.add_term(Monomial(exps.to_vec()), c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: i128) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(m.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i128)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> i128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i128) -> Element {
        let mut out = Element::zero();
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32, ngens: usize) -> Element {
        let mut out = Element::one(ngens);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1)
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

/// The rings the library knows how to present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preset {
    /// The even quadric `Q^{2m}` as `Z[H,U]/(H^{2m+1}, 2HU - H^{m+1}, H^m U - U^2)`.
    QuadricEven(u32),
    /// The spinor variety `S_n`, `n <= 6`.
    Spinor(u32),
    E6P6,
    E7P7,
    C3P3,
    /// `G(d, n)` as `Z[e_1..e_d]/(h_{n-d+1}, ..., h_n)`.
    Grassmannian { d: u32, n: u32 },
}

impl Preset {
    pub fn dimension(self) -> u32 {
        match self {
            Preset::QuadricEven(m) => 2 * m,
            Preset::Spinor(n) => n * (n + 1) / 2,
            Preset::E6P6 => 16,
            Preset::E7P7 => 27,
            Preset::C3P3 => 6,
            Preset::Grassmannian { d, n } => d * (n - d),
        }
    }

    fn validate(self) -> R<()> {
        let ok = match self {
            Preset::QuadricEven(m) => m >= 1,
            Preset::Spinor(n) => (1..=6).contains(&n),
            Preset::Grassmannian { d, n } => d >= 1 && d < n,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(ChowError::UnknownPreset(format!("{self}")))
        }
    }

    pub fn generators(self) -> Vec<(String, u32)> {
        let named = |xs: &[(&str, u32)]| xs.iter().map(|&(s, d)| (String::from(s), d)).collect();
        match self {
            Preset::QuadricEven(m) => named(&[("H", 1), ("U", m)]),
            Preset::Spinor(n) => (1..=n).map(|j| (format!("X{j}"), j)).collect(),
            Preset::E6P6 => named(&[("y1", 1), ("y4", 4)]),
            Preset::E7P7 => named(&[("y1", 1), ("y5", 5), ("y9", 9)]),
            Preset::C3P3 => named(&[("y1", 1), ("y3", 3)]),
            Preset::Grassmannian { d, .. } => (1..=d).map(|j| (format!("e{j}"), j)).collect(),
        }
    }

    pub fn relations(self) -> Vec<Element> {
        let from = Element::from_terms;
        match self {
            Preset::QuadricEven(m) => {
                let h = Element::generator(2, 0);
                let u = Element::generator(2, 1);
                vec![
                    h.pow(2 * m + 1, 2),
                    &(&h * &u).scale(2) - &h.pow(m + 1, 2),
                    &(&h.pow(m, 2) * &u) - &(&u * &u),
                ]
            }
            Preset::Spinor(n) => spinor_relations(n as usize),
            Preset::E6P6 => vec![
                from(&[(2, &[9, 0]), (3, &[1, 2]), (-6, &[5, 1])]),
                from(&[(1, &[0, 3]), (-6, &[4, 2]), (1, &[12, 0])]),
            ],
            Preset::E7P7 => vec![
                from(&[(1, &[0, 2, 0]), (-2, &[1, 0, 1])]),
                from(&[(2, &[0, 1, 1]), (-9, &[4, 2, 0]), (6, &[9, 1, 0]), (-1, &[14, 0, 0])]),
                from(&[(1, &[0, 0, 2]), (10, &[3, 3, 0]), (-9, &[8, 2, 0]), (2, &[13, 1, 0])]),
            ],
            Preset::C3P3 => vec![from(&[(1, &[4, 0]), (-8, &[1, 1])]), from(&[(1, &[0, 2])])],
            Preset::Grassmannian { d, n } => {
                let d = d as usize;
                let n = n as usize;
                let mut h = vec![Element::one(d)];
                for k in 1..=n {
                    let mut hk = Element::zero();
                    for i in 1..=k.min(d) {
                        let sign = if i % 2 == 1 { 1 } else { -1 };
                        hk = &hk + &(&Element::generator(d, i - 1) * &h[k - i]).scale(sign);
                    }
                    h.push(hk);
                }
                h.drain(n - d + 1..).collect()
            }
        }
    }
}

fn spinor_relations(n: usize) -> Vec<Element> {
    let x = |j: usize| -> Element {
        if j == 0 {
            Element::one(n)
        } else if j > n {
            Element::zero()
        } else {
            Element::generator(n, j - 1)
        }
    };
    (1..=n)
        .map(|s| {
            let mut r = &x(s) * &x(s);
            for i in 1..s {
                let sign = if i % 2 == 0 { 2 } else { -2 };
                r = &r + &(&x(s + i) * &x(s - i)).scale(sign);
            }
            let sign = if s % 2 == 0 { 1 } else { -1 };
            &r + &x(2 * s).scale(sign)
        })
        .collect()
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::QuadricEven(m) => write!(f, "QuadricEven({m})"),
            Preset::Spinor(n) => write!(f, "Spinor({n})"),
            Preset::E6P6 => f.write_str("E6P6"),
            Preset::E7P7 => f.write_str("E7P7"),
            Preset::C3P3 => f.write_str("C3P3"),
            Preset::Grassmannian { d, n } => write!(f, "Grassmannian({d},{n})"),
        }
    }
}

#[derive(Clone, Debug)]
struct Piece {
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    hermite: Hermite,
    basis: Vec<usize>,
    torsion: Vec<i128>,
}

/// `scale * x == value` in the ring, with `value` supported on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub scale: i128,
    pub value: Element,
}

#[derive(Clone, Debug)]
pub struct GradedQuotientRing {
    names: Vec<String>,
    degrees: Vec<u32>,
    relations: Vec<Element>,
    cap: u32,
    pieces: Vec<Piece>,
}

pub fn build_ring(preset: Preset) -> R<GradedQuotientRing> {
    GradedQuotientRing::from_preset(preset, preset.dimension())
}

pub fn normal_form(ring: &GradedQuotientRing, x: &Element) -> R<Reduced> {
    ring.normal_form(x)
}

pub fn graded_dim(ring: &GradedQuotientRing, t: u32) -> R<usize> {
    ring.graded_dim(t)
}

impl GradedQuotientRing {
    pub fn from_preset(preset: Preset, cap: u32) -> R<GradedQuotientRing> {
        preset.validate()?;
        if cap > preset.dimension() {
            return Err(ChowError::CapTooLarge {
                cap,
                dimension: preset.dimension(),
            });
        }
        GradedQuotientRing::new(preset.generators(), preset.relations(), cap)
    }

    pub fn new(generators: Vec<(String, u32)>, relations: Vec<Element>, cap: u32) -> R<GradedQuotientRing> {
        let (names, degrees): (Vec<String>, Vec<u32>) = generators.into_iter().unzip();
        let mut ring = GradedQuotientRing {
            names,
            degrees,
            relations: Vec::new(),
            cap,
            pieces: Vec::new(),
        };
        let mut graded = Vec::new();
        for r in relations {
            match ring.degree_of(&r)? {
                Some(d) => graded.push((d, r)),
                None => continue,
            }
        }
        for t in 0..=cap {
            let monomials = ring.monomials_of_degree(t);
            let index: BTreeMap<Monomial, usize> =
                monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut hermite = Hermite::default();
            for (d, r) in &graded {
                if *d > t {
                    continue;
                }
                for mu in ring.monomials_of_degree(t - d) {
                    let mut row = vec![0i128; monomials.len()];
                    for (m, c) in r.terms() {
                        row[index[&mu.mul(m)]] += c;
                    }
                    hermite.insert(row)?;
                }
            }
            hermite.finish()?;
            let basis = (0..monomials.len())
                .filter(|c| !hermite.rows.contains_key(c))
                .collect();
            // unit pivots leave a free quotient
            let torsion = if hermite.rows.iter().all(|(&c, r)| r[c] == 1) {
                Vec::new()
            } else {
                let rows: Vec<Vec<i128>> = hermite.rows.values().cloned().collect();
                smith_torsion(&rows, monomials.len())?
            };
            ring.pieces.push(Piece {
                monomials,
                index,
                hermite,
                basis,
                torsion,
            });
        }
        ring.relations = graded.into_iter().map(|(_, r)| r).collect();
        Ok(ring)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.ngens(), i)
    }

    /// Looks a generator up by name.
    pub fn named(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name).map(|i| self.generator(i))
    }

    /// Monomials of degree `t`, largest first.
    pub fn monomials_of_degree(&self, t: u32) -> Vec<Monomial> {
        fn go(degrees: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == degrees.len() {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let mut e = left / degrees[i];
            loop {
                cur.push(e);
                go(degrees, i + 1, left - e * degrees[i], cur, out);
                cur.pop();
                if e == 0 {
                    break;
                }
                e -= 1;
            }
        }
        let mut out = Vec::new();
        go(&self.degrees, 0, t, &mut Vec::new(), &mut out);
        out
    }

    /// `None` for zero; errors unless every term has the same degree.
    pub fn degree_of(&self, x: &Element) -> R<Option<u32>> {
        let mut deg = None;
        for (m, _) in x.terms() {
            let d = m.degree(&self.degrees);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(ChowError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    fn piece(&self, t: u32) -> R<&Piece> {
        self.pieces
            .get(t as usize)
            .ok_or(ChowError::DegreeOverCap { degree: t, cap: self.cap })
    }

    pub fn basis(&self, t: u32) -> R<Vec<Monomial>> {
        let p = self.piece(t)?;
        Ok(p.basis.iter().map(|&c| p.monomials[c].clone()).collect())
    }

    pub fn graded_dim(&self, t: u32) -> R<usize> {
        Ok(self.piece(t)?.basis.len())
    }

    /// Invariant factors greater than one of the degree-`t` piece.
    pub fn torsion(&self, t: u32) -> R<&[i128]> {
        Ok(&self.piece(t)?.torsion)
    }

    /// Coordinates on `basis(t)`: `scale * x == sum coords[i] basis[i]`.
    pub fn coordinates(&self, x: &Element, t: u32) -> R<(i128, Vec<i128>)> {
        let p = self.piece(t)?;
        if let Some(d) = self.degree_of(x)? {
            if d != t {
                return Err(ChowError::NotHomogeneous);
            }
        }
        let mut v = vec![0i128; p.monomials.len()];
        for (m, c) in x.terms() {
            v[p.index[m]] = c;
        }
        let (scale, w) = p.hermite.reduce(&v)?;
        Ok((scale, p.basis.iter().map(|&c| w[c]).collect()))
    }

    pub fn normal_form(&self, x: &Element) -> R<Reduced> {
        let Some(t) = self.degree_of(x)? else {
            return Ok(Reduced {
                scale: 1,
                value: Element::zero(),
            });
        };
        let (scale, coords) = self.coordinates(x, t)?;
        let basis = self.basis(t)?;
        let mut value = Element::zero();
        for (m, c) in basis.into_iter().zip(coords) {
            value.add_term(m, c);
        }
        Ok(Reduced { scale, value })
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (name, &e) in self.names.iter().zip(m.exps()) {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn render(&self, x: &Element) -> String {
        if x.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (m, c)) in x.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
            let abs = c.abs();
            if idx == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let mono = self.render_monomial(m);
            if abs != 1 {
                let _ = write!(s, "{abs}");
                if mono != "1" {
                    s.push('*');
                    s.push_str(&mono);
                }
            } else {
                s.push_str(&mono);
            }
        }
        s
    }
}

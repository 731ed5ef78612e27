//! Dynkin diagrams of the simple types, their Cartan matrices, and the
//! canonical classification of connected sub-diagrams.
//!
//! Nodes are labelled `1..=rank`. The numbering follows the usual Bourbaki
//! pictures: in type E node 2 hangs off node 4, in B_n node n is short, in
//! C_n nodes 1..n-1 are short, in F4 nodes 3 and 4 are short and in G2
//! node 1 is short.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.letter() == c)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A supported (family, rank) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<CartanType> {
        if Self::is_supported(family, rank) {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::UnsupportedType { family, rank })
        }
    }

    pub fn is_supported(family: Family, rank: usize) -> bool {
        match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Every supported type of rank at most `max_rank`, ordered by family then rank.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootLength {
    Short,
    Long,
}

/// An edge `a < b`. `arrow` names the short end of a multiple edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub multiplicity: u8,
    pub arrow: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    ty: CartanType,
    edges: Vec<Edge>,
    lengths: Vec<RootLength>,
}

pub fn build_diagram(family: Family, rank: usize) -> Result<DynkinDiagram> {
    DynkinDiagram::build(family, rank)
}

pub fn cartan_matrix(diagram: &DynkinDiagram) -> CartanMatrix {
    diagram.cartan_matrix()
}

impl DynkinDiagram {
    pub fn build(family: Family, rank: usize) -> Result<DynkinDiagram> {
        Ok(Self::from_type(CartanType::new(family, rank)?))
    }

    pub fn from_type(ty: CartanType) -> DynkinDiagram {
        let n = ty.rank;
        let mut simple: Vec<(usize, usize)> = Vec::new();
        let mut double: Option<(usize, usize, u8, usize)> = None;
        let mut short: Vec<usize> = Vec::new();
        match ty.family {
            Family::A => simple.extend((1..n).map(|i| (i, i + 1))),
            Family::B => {
                simple.extend((1..n - 1).map(|i| (i, i + 1)));
                double = Some((n - 1, n, 2, n));
                short.push(n);
            }
            Family::C => {
                simple.extend((1..n - 1).map(|i| (i, i + 1)));
                double = Some((n - 1, n, 2, n - 1));
                short.extend(1..n);
            }
            Family::D => {
                simple.extend((1..n - 1).map(|i| (i, i + 1)));
                simple.push((n - 2, n));
            }
            Family::E => {
                simple.extend([(1, 3), (2, 4), (3, 4)]);
                simple.extend((4..n).map(|i| (i, i + 1)));
            }
            Family::F => {
                simple.extend([(1, 2), (3, 4)]);
                double = Some((2, 3, 2, 3));
                short.extend([3, 4]);
            }
            Family::G => {
                double = Some((1, 2, 3, 1));
                short.push(1);
            }
        }
        let mut edges: Vec<Edge> = simple
            .into_iter()
            .map(|(a, b)| Edge {
                a,
                b,
                multiplicity: 1,
                arrow: None,
            })
            .collect();
        if let Some((a, b, m, target)) = double {
            edges.push(Edge {
                a,
                b,
                multiplicity: m,
                arrow: Some(target),
            });
        }
        edges.sort();
        let mut lengths = vec![RootLength::Long; n];
        for s in short {
            lengths[s - 1] = RootLength::Short;
        }
        DynkinDiagram { ty, edges, lengths }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn family(&self) -> Family {
        self.ty.family
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn nodes(&self) -> core::ops::RangeInclusive<usize> {
        1..=self.rank()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, node: usize) -> bool {
        (1..=self.rank()).contains(&node)
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if self.contains(node) {
            Ok(())
        } else {
            Err(Error::UnknownNode {
                diagram: self.ty.to_string(),
                node,
            })
        }
    }

    /// Panics if `node` is out of range.
    pub fn length(&self, node: usize) -> RootLength {
        self.lengths[node - 1]
    }

    pub fn is_short(&self, node: usize) -> bool {
        self.length(node) == RootLength::Short
    }

    /// Edge multiplicity between two nodes, zero when not adjacent.
    pub fn multiplicity(&self, i: usize, j: usize) -> u8 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .iter()
            .find(|e| e.a == a && e.b == b)
            .map_or(0, |e| e.multiplicity)
    }

    pub fn neighbors(&self, k: usize) -> Result<BTreeSet<usize>> {
        self.check_node(k)?;
        Ok(self.adjacent(k).collect())
    }

    fn adjacent(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |e| {
            if e.a == k {
                Some(e.b)
            } else if e.b == k {
                Some(e.a)
            } else {
                None
            }
        })
    }

    /// `A[i][j] = 2<a_i,a_j>/<a_i,a_i>`, 1-based.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i32 {
        if i == j {
            return 2;
        }
        let m = self.multiplicity(i, j);
        if m == 0 {
            0
        } else if m > 1 && self.is_short(i) && !self.is_short(j) {
            -i32::from(m)
        } else {
            -1
        }
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.rank();
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(self.cartan_entry(i, j));
            }
        }
        CartanMatrix { n, entries }
    }

    /// Connected components of the diagram with `removed` deleted, ordered by
    /// their smallest node, each relabelled onto a reference diagram.
    pub fn components_without(&self, removed: &BTreeSet<usize>) -> Vec<Component> {
        let mut seen: BTreeSet<usize> = removed.clone();
        let mut out = Vec::new();
        for start in self.nodes() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for v in self.adjacent(u) {
                    if seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
            out.push(self.classify(&comp.into_iter().collect::<Vec<_>>()));
        }
        out
    }

    /// The component of `removed`'s complement that contains `node`.
    pub fn component_containing(&self, removed: &BTreeSet<usize>, node: usize) -> Option<Component> {
        self.components_without(removed)
            .into_iter()
            .find(|c| c.contains_old(node))
    }

    fn classify(&self, nodes: &[usize]) -> Component {
        let r = nodes.len();
        let has_multiple = nodes
            .iter()
            .any(|&u| nodes.iter().any(|&v| self.multiplicity(u, v) > 1));
        // Without a multiple edge the lengths inside the component are all equal.
        let short_in = |u: usize| has_multiple && self.is_short(u);
        let degree = |u: usize| nodes.iter().filter(|&&v| self.multiplicity(u, v) > 0).count();
        let mut sig_degrees: Vec<usize> = nodes.iter().map(|&u| degree(u)).collect();
        sig_degrees.sort_unstable();
        let short_count = nodes.iter().filter(|&&u| short_in(u)).count();
        let max_mult = nodes
            .iter()
            .flat_map(|&u| nodes.iter().map(move |&v| (u, v)))
            .map(|(u, v)| self.multiplicity(u, v))
            .max()
            .unwrap_or(0);

        for ty in candidate_types(r) {
            let reference = DynkinDiagram::from_type(ty);
            let mut ref_degrees: Vec<usize> = reference
                .nodes()
                .map(|v| reference.adjacent(v).count())
                .collect();
            ref_degrees.sort_unstable();
            let ref_short = reference.nodes().filter(|&v| reference.is_short(v)).count();
            let ref_max = reference.edges.iter().map(|e| e.multiplicity).max().unwrap_or(0);
            if ref_degrees != sig_degrees || ref_short != short_count || ref_max != max_mult {
                continue;
            }
            let mut image = Vec::with_capacity(r);
            let mut used = vec![false; r + 1];
            if self.extend_iso(nodes, &reference, &short_in, &mut image, &mut used) {
                let map = nodes.iter().copied().zip(image).collect();
                return Component {
                    diagram: reference,
                    map,
                };
            }
        }
        unreachable!("connected sub-diagram of a finite-type diagram is of finite type")
    }

    // Depth-first search assigning targets in ascending order, so the first
    // complete assignment is the lexicographically smallest image sequence.
    fn extend_iso(
        &self,
        nodes: &[usize],
        reference: &DynkinDiagram,
        short_in: &dyn Fn(usize) -> bool,
        image: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let pos = image.len();
        if pos == nodes.len() {
            return true;
        }
        let u = nodes[pos];
        for v in reference.nodes() {
            if used[v] || reference.is_short(v) != short_in(u) {
                continue;
            }
            let consistent = (0..pos)
                .all(|p| self.multiplicity(u, nodes[p]) == reference.multiplicity(v, image[p]));
            if !consistent {
                continue;
            }
            used[v] = true;
            image.push(v);
            if self.extend_iso(nodes, reference, short_in, image, used) {
                return true;
            }
            image.pop();
            used[v] = false;
        }
        false
    }
}

fn candidate_types(r: usize) -> Vec<CartanType> {
    let mut out = vec![CartanType {
        family: Family::A,
        rank: r,
    }];
    let mut push = |family, ok: bool| {
        if ok {
            out.push(CartanType { family, rank: r });
        }
    };
    // C2 = B2, D3 = A3: the earlier family wins.
    push(Family::B, r >= 2);
    push(Family::C, r >= 3);
    push(Family::D, r >= 4);
    push(Family::E, (6..=8).contains(&r));
    push(Family::F, r == 4);
    push(Family::G, r == 2);
    out
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ty)
    }
}

/// Row-major Cartan matrix with 1-based accessors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i32]> {
        self.entries.chunks(self.n.max(1))
    }
}

/// A connected piece of a diagram together with its relabelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub diagram: DynkinDiagram,
    map: BTreeMap<usize, usize>,
}

impl Component {
    /// old label -> new label
    pub fn relabel(&self) -> &BTreeMap<usize, usize> {
        &self.map
    }

    pub fn old_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn contains_old(&self, old: usize) -> bool {
        self.map.contains_key(&old)
    }

    pub fn new_of(&self, old: usize) -> Option<usize> {
        self.map.get(&old).copied()
    }

    pub fn old_of(&self, new: usize) -> Option<usize> {
        self.map.iter().find(|(_, &n)| n == new).map(|(&o, _)| o)
    }

    pub fn min_old(&self) -> usize {
        *self.map.keys().next().expect("components are nonempty")
    }
}

//! Degrees of the relative tangent bundle of the universal family on a line,
//! by pairing the negated Cartan row ("tag") with the roots meeting the
//! neighbours of the marked node ("weights").

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{Component, DynkinDiagram, Family};
use crate::marked::{case_of, grassmannianization, CaseTag, ProductSpace};
use crate::roots::{positive_roots, Root};
use crate::{Error, Result};

/// One component of `D \ {k}` with values in its own (relabelled) coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagComponent {
    pub component: Component,
    pub values: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tag {
    pub per_component: Vec<TagComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightComponent {
    pub component: Component,
    /// Relabelled node adjacent to `k`.
    pub adjacent: usize,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    pub per_component: Vec<WeightComponent>,
}

impl WeightSet {
    pub fn len(&self) -> usize {
        self.per_component.iter().map(|c| c.roots.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Ascending multiset of degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplittingType(Vec<i32>);

impl SplittingType {
    pub fn new(mut degrees: Vec<i32>) -> SplittingType {
        degrees.sort_unstable();
        SplittingType(degrees)
    }

    /// `(value)^count` blocks.
    pub fn from_blocks(blocks: &[(i32, usize)]) -> SplittingType {
        SplittingType::new(
            blocks
                .iter()
                .flat_map(|&(v, c)| core::iter::repeat_n(v, c))
                .collect(),
        )
    }

    pub fn degrees(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lowest(&self) -> Option<i32> {
        self.0.first().copied()
    }

    /// `(value, multiplicity)` pairs, most negative first.
    pub fn blocks(&self) -> Vec<(i32, usize)> {
        let mut out: Vec<(i32, usize)> = Vec::new();
        for &d in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}

/// `(-2)^3 (-1)^3`, or `0` for the empty type.
impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (idx, (v, c)) in self.blocks().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({v})^{c}")?;
        }
        Ok(())
    }
}

fn without(diagram: &DynkinDiagram, k: usize) -> Result<Vec<Component>> {
    diagram.check_node(k)?;
    Ok(diagram.components_without(&BTreeSet::from([k])))
}

/// `tag_j = -A[k][j]` on every component of `D \ {k}`.
pub fn tag(diagram: &DynkinDiagram, k: usize) -> Result<Tag> {
    let per_component = without(diagram, k)?
        .into_iter()
        .map(|c| {
            let mut values = vec![0u32; c.diagram.rank()];
            for (&old, &new) in c.relabel() {
                values[new - 1] = (-diagram.cartan_entry(k, old)) as u32;
            }
            TagComponent {
                component: c,
                values,
            }
        })
        .collect();
    Ok(Tag { per_component })
}

/// Positive roots of each component of `D \ {k}` with positive coefficient
/// at the node adjacent to `k`.
pub fn weights(diagram: &DynkinDiagram, k: usize) -> Result<WeightSet> {
    let per_component = without(diagram, k)?
        .into_iter()
        .map(|c| {
            let old = c
                .old_nodes()
                .find(|&u| diagram.multiplicity(u, k) > 0)
                .expect("tree component touches k");
            let adjacent = c.new_of(old).unwrap();
            let roots = positive_roots(&c.diagram)
                .into_iter()
                .filter(|r| r.coeff(adjacent) > 0)
                .collect();
            WeightComponent {
                component: c,
                adjacent,
                roots,
            }
        })
        .collect();
    Ok(WeightSet { per_component })
}

pub fn splitting_type(diagram: &DynkinDiagram, k: usize) -> Result<SplittingType> {
    let t = tag(diagram, k)?;
    let w = weights(diagram, k)?;
    let mut degrees = Vec::with_capacity(w.len());
    for (tc, wc) in t.per_component.iter().zip(&w.per_component) {
        for r in &wc.roots {
            let pairing: i32 = r
                .coeffs()
                .iter()
                .zip(&tc.values)
                .map(|(&m, &v)| m * v as i32)
                .sum();
            degrees.push(-pairing);
        }
    }
    Ok(SplittingType::new(degrees))
}

/// Closed forms for the classical families.
pub fn classical_closed_form(family: Family, n: usize, k: usize) -> Result<SplittingType> {
    let bad = Err(Error::UnsupportedCase { family, n, k });
    if k == 0 || k > n {
        return bad;
    }
    let ones = |c: usize| SplittingType::from_blocks(&[(-1, c)]);
    let with_two = |c: usize| SplittingType::from_blocks(&[(-1, c), (-2, 1)]);
    Ok(match family {
        Family::A => ones(n - 1),
        Family::B if n >= 2 => match k {
            1 => ones(2 * n - 3),
            _ if k == n => SplittingType::from_blocks(&[(-2, n - 1)]),
            _ => ones(2 * n - k - 2),
        },
        Family::C if n >= 2 => match k {
            1 => with_two(2 * n - 4),
            _ if k == n => ones(n - 1),
            _ => with_two(2 * n - k - 3),
        },
        Family::D if n >= 4 => {
            if k <= n - 3 {
                ones(2 * n - k - 3)
            } else if k == n - 2 {
                ones(n - 1)
            } else {
                ones(2 * (n - 2))
            }
        }
        _ => return bad,
    })
}

/// Splitting type for `(X, i, delta)`, computed on `G^delta`.
pub fn splitting_type_general(x: &ProductSpace, i: usize, delta: usize) -> Result<SplittingType> {
    if case_of(x, i, delta)? == CaseTag::I {
        return Err(Error::CaseIHasNoRelativeTangent {
            factor: i,
            node: delta,
        });
    }
    let g = grassmannianization(x, i, delta)?;
    splitting_type(g.diagram(), g.single_mark()?)
}

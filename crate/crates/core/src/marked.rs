//! Marked diagrams, products of flag manifolds, and the families of lines
//! attached to a marked node.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::DynkinDiagram;
use crate::{Error, Result};

/// A diagram with a marked subset `I`, standing for `G/P_I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedDiagram {
    diagram: DynkinDiagram,
    marked: BTreeSet<usize>,
}

impl MarkedDiagram {
    pub fn new(diagram: DynkinDiagram, marked: BTreeSet<usize>) -> Result<MarkedDiagram> {
        if marked.is_empty() || marked.iter().any(|&k| !diagram.contains(k)) {
            return Err(Error::BadMarking {
                diagram: diagram.to_string(),
                marked: marked.into_iter().collect(),
            });
        }
        Ok(MarkedDiagram { diagram, marked })
    }

    /// The special family of a rank-one factor has nothing left to mark.
    pub(crate) fn new_allow_empty(diagram: DynkinDiagram, marked: BTreeSet<usize>) -> MarkedDiagram {
        debug_assert!(marked.iter().all(|&k| diagram.contains(k)));
        MarkedDiagram { diagram, marked }
    }

    pub fn borel(diagram: DynkinDiagram) -> MarkedDiagram {
        let marked = diagram.nodes().collect();
        MarkedDiagram { diagram, marked }
    }

    pub fn grassmannian(diagram: DynkinDiagram, k: usize) -> Result<MarkedDiagram> {
        diagram.check_node(k)?;
        Ok(MarkedDiagram {
            diagram,
            marked: BTreeSet::from([k]),
        })
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub fn is_marked(&self, k: usize) -> bool {
        self.marked.contains(&k)
    }

    pub fn is_borel(&self) -> bool {
        self.marked.len() == self.diagram.rank()
    }

    /// The unique marked node of a generalized Grassmannian.
    pub fn single_mark(&self) -> Result<usize> {
        match self.marked.len() {
            1 => Ok(*self.marked.iter().next().unwrap()),
            count => Err(Error::MultipleMarks { count }),
        }
    }

    fn require_marked(&self, j: usize) -> Result<()> {
        if self.is_marked(j) {
            Ok(())
        } else {
            Err(Error::NodeNotMarked {
                space: self.to_string(),
                node: j,
            })
        }
    }

    /// True when `j` is short and its component in `D \ (I \ {j})` has a long node.
    pub fn is_exposed_short(&self, j: usize) -> Result<bool> {
        self.require_marked(j)?;
        if !self.diagram.is_short(j) {
            return Ok(false);
        }
        let mut removed = self.marked.clone();
        removed.remove(&j);
        let comp = self
            .diagram
            .component_containing(&removed, j)
            .expect("j is not removed");
        let has_long = comp.old_nodes().any(|u| !self.diagram.is_short(u));
        Ok(has_long)
    }
}

impl fmt::Display for MarkedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/P{{", self.diagram)?;
        for (idx, k) in self.marked.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "}}")
    }
}

/// `G_1/P_{I_1} x ... x G_m/P_{I_m}`. Factor indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    factors: Vec<MarkedDiagram>,
}

impl ProductSpace {
    /// Panics on an empty factor list.
    pub fn new(factors: Vec<MarkedDiagram>) -> ProductSpace {
        assert!(!factors.is_empty(), "a product space needs at least one factor");
        ProductSpace { factors }
    }

    pub fn factors(&self) -> &[MarkedDiagram] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> Result<&MarkedDiagram> {
        if i == 0 || i > self.factors.len() {
            return Err(Error::NoSuchFactor {
                index: i,
                count: self.factors.len(),
            });
        }
        Ok(&self.factors[i - 1])
    }

    /// Every `(i, delta)` with `delta` marked in factor `i`.
    pub fn marked_pairs(&self) -> Vec<(usize, usize)> {
        self.factors
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.marked.iter().map(move |&d| (i + 1, d)))
            .collect()
    }

    fn marked_factor(&self, i: usize, delta: usize) -> Result<&MarkedDiagram> {
        let f = self.factor(i)?;
        f.require_marked(delta)?;
        Ok(f)
    }

    fn replace(&self, i: usize, factor: MarkedDiagram) -> ProductSpace {
        let mut factors = self.factors.clone();
        factors[i - 1] = factor;
        ProductSpace { factors }
    }
}

impl From<MarkedDiagram> for ProductSpace {
    fn from(m: MarkedDiagram) -> ProductSpace {
        ProductSpace { factors: alloc::vec![m] }
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, factor) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    I,
    II,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
        })
    }
}

pub fn neighbors(diagram: &DynkinDiagram, k: usize) -> Result<BTreeSet<usize>> {
    diagram.neighbors(k)
}

pub fn is_exposed_short(marked: &MarkedDiagram, j: usize) -> Result<bool> {
    marked.is_exposed_short(j)
}

/// Factor `i` re-marked as `I \ {delta} + N(delta)`.
pub fn special_family(x: &ProductSpace, i: usize, delta: usize) -> Result<ProductSpace> {
    let f = x.marked_factor(i, delta)?;
    let mut marked = f.marked.clone();
    marked.remove(&delta);
    marked.extend(f.diagram.neighbors(delta)?);
    Ok(x.replace(i, MarkedDiagram::new_allow_empty(f.diagram.clone(), marked)))
}

/// Factor `i` re-marked as `I + N(delta)`.
pub fn universal_family(x: &ProductSpace, i: usize, delta: usize) -> Result<ProductSpace> {
    let f = x.marked_factor(i, delta)?;
    let mut marked = f.marked.clone();
    marked.extend(f.diagram.neighbors(delta)?);
    Ok(x.replace(i, MarkedDiagram::new_allow_empty(f.diagram.clone(), marked)))
}

pub fn case_of(x: &ProductSpace, i: usize, delta: usize) -> Result<CaseTag> {
    let f = x.marked_factor(i, delta)?;
    let n = f.diagram.neighbors(delta)?;
    Ok(if n.is_subset(&f.marked) {
        CaseTag::I
    } else {
        CaseTag::II
    })
}

/// The generalized Grassmannian `G^delta`: the component of `delta` in
/// `D \ (I \ {delta})`, relabelled and marked only at `delta`.
pub fn grassmannianization(x: &ProductSpace, i: usize, delta: usize) -> Result<MarkedDiagram> {
    let f = x.marked_factor(i, delta)?;
    let mut removed = f.marked.clone();
    removed.remove(&delta);
    let comp = f
        .diagram
        .component_containing(&removed, delta)
        .expect("delta is not removed");
    let k = comp.new_of(delta).unwrap();
    MarkedDiagram::grassmannian(comp.diagram, k)
}

/// Closed-orbit VMRT factors: components of `G^delta` minus its mark, each
/// marked at the node adjacent to the mark.
pub fn vmrt(x: &ProductSpace, i: usize, delta: usize) -> Result<Vec<MarkedDiagram>> {
    let g = grassmannianization(x, i, delta)?;
    Ok(vmrt_of_grassmannian(&g))
}

pub(crate) fn vmrt_of_grassmannian(g: &MarkedDiagram) -> Vec<MarkedDiagram> {
    let k = g.single_mark().expect("generalized Grassmannian");
    let d = g.diagram();
    d.components_without(&BTreeSet::from([k]))
        .into_iter()
        .map(|c| {
            let adj = c
                .old_nodes()
                .find(|&u| d.multiplicity(u, k) > 0)
                .expect("a tree component touches the removed node");
            let new = c.new_of(adj).unwrap();
            MarkedDiagram::grassmannian(c.diagram, new).unwrap()
        })
        .collect()
}

/// Everything derived from one marked node of one factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFamilyReport {
    pub factor: usize,
    pub delta: usize,
    pub case: CaseTag,
    pub m: ProductSpace,
    pub u: ProductSpace,
    pub vmrt: Vec<MarkedDiagram>,
    pub gdelta: MarkedDiagram,
    pub exposed_short: bool,
}

pub fn line_family_report(x: &ProductSpace, i: usize, delta: usize) -> Result<LineFamilyReport> {
    let f = x.marked_factor(i, delta)?;
    Ok(LineFamilyReport {
        factor: i,
        delta,
        case: case_of(x, i, delta)?,
        m: special_family(x, i, delta)?,
        u: universal_family(x, i, delta)?,
        vmrt: vmrt(x, i, delta)?,
        gdelta: grassmannianization(x, i, delta)?,
        exposed_short: f.is_exposed_short(delta)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Family;
    use alloc::string::String;
    use alloc::vec;

    fn md(f: Family, n: usize, marks: &[usize]) -> MarkedDiagram {
        MarkedDiagram::new(
            DynkinDiagram::build(f, n).unwrap(),
            marks.iter().copied().collect(),
        )
        .unwrap()
    }

    fn one(f: Family, n: usize, marks: &[usize]) -> ProductSpace {
        md(f, n, marks).into()
    }

    fn names(v: &[MarkedDiagram]) -> Vec<String> {
        v.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn exposed_short_examples() {
        assert!(md(Family::B, 5, &[5]).is_exposed_short(5).unwrap());
        assert!(!md(Family::C, 5, &[5]).is_exposed_short(5).unwrap());
        assert!(!md(Family::B, 2, &[1, 2]).is_exposed_short(2).unwrap());
        assert!(md(Family::G, 2, &[1]).is_exposed_short(1).unwrap());
        assert!(matches!(
            md(Family::B, 3, &[1]).is_exposed_short(2),
            Err(Error::NodeNotMarked { .. })
        ));
    }

    #[test]
    fn families_in_type_a() {
        let x = one(Family::A, 6, &[2, 4]);
        assert_eq!(special_family(&x, 1, 2).unwrap().to_string(), "A6/P{1,3,4}");
        assert_eq!(special_family(&x, 1, 4).unwrap().to_string(), "A6/P{2,3,5}");
        let y = one(Family::A, 5, &[3]);
        assert_eq!(special_family(&y, 1, 3).unwrap().to_string(), "A5/P{2,4}");
        assert_eq!(universal_family(&y, 1, 3).unwrap().to_string(), "A5/P{2,3,4}");
        assert_eq!(
            universal_family(&one(Family::B, 5, &[1]), 1, 1).unwrap().to_string(),
            "B5/P{1,2}"
        );
    }

    #[test]
    fn borel_space() {
        let x = one(Family::E, 6, &[1, 2, 3, 4, 5, 6]);
        for d in 1..=6 {
            assert_eq!(case_of(&x, 1, d).unwrap(), CaseTag::I);
            assert_eq!(universal_family(&x, 1, d).unwrap(), x);
            let mut rest: BTreeSet<usize> = (1..=6).collect();
            rest.remove(&d);
            assert_eq!(special_family(&x, 1, d).unwrap().factors()[0].marked(), &rest);
            assert_eq!(grassmannianization(&x, 1, d).unwrap().to_string(), "A1/P{1}");
        }
    }

    #[test]
    fn grassmannianization_examples() {
        let x = one(Family::A, 5, &[1, 3]);
        assert_eq!(case_of(&x, 1, 3).unwrap(), CaseTag::II);
        assert_eq!(grassmannianization(&x, 1, 3).unwrap().to_string(), "A4/P{2}");
        assert_eq!(grassmannianization(&x, 1, 1).unwrap().to_string(), "A2/P{1}");
        let y = one(Family::A, 5, &[2, 3]);
        assert_eq!(case_of(&y, 1, 3).unwrap(), CaseTag::II);
    }

    #[test]
    fn vmrt_examples() {
        assert_eq!(
            names(&vmrt(&one(Family::A, 6, &[3]), 1, 3).unwrap()),
            ["A2/P{2}", "A3/P{1}"]
        );
        assert_eq!(names(&vmrt(&one(Family::E, 7, &[7]), 1, 7).unwrap()), ["E6/P{6}"]);
        assert_eq!(names(&vmrt(&one(Family::F, 4, &[1]), 1, 1).unwrap()), ["C3/P{3}"]);
        assert_eq!(names(&vmrt(&one(Family::B, 5, &[1]), 1, 1).unwrap()), ["B4/P{1}"]);
        assert_eq!(names(&vmrt(&one(Family::D, 6, &[6]), 1, 6).unwrap()), ["A5/P{4}"]);
        // flag manifold F(2,4;7): lines of class 2 see P^1 x P^1
        assert_eq!(
            names(&vmrt(&one(Family::A, 6, &[2, 4]), 1, 2).unwrap()),
            ["A1/P{1}", "A1/P{1}"]
        );
    }

    #[test]
    fn products_touch_one_factor() {
        let x = ProductSpace::new(vec![md(Family::B, 5, &[2, 4]), md(Family::A, 3, &[1])]);
        assert_eq!(x.to_string(), "B5/P{2,4} x A3/P{1}");
        let m = special_family(&x, 2, 1).unwrap();
        assert_eq!(m.factors()[0], x.factors()[0]);
        assert_eq!(m.to_string(), "B5/P{2,4} x A3/P{2}");
        assert_eq!(x.marked_pairs(), [(1, 2), (1, 4), (2, 1)]);
        assert!(matches!(special_family(&x, 3, 1), Err(Error::NoSuchFactor { .. })));
    }

    #[test]
    fn rank_one_special_family_is_a_point() {
        let x = one(Family::A, 1, &[1]);
        let m = special_family(&x, 1, 1).unwrap();
        assert!(m.factors()[0].marked().is_empty());
        assert_eq!(m.to_string(), "A1/P{}");
    }
}

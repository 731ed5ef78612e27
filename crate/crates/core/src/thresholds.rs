//! Splitting thresholds for uniform bundles, verdicts on splitting
//! profiles, slopes, and bounds on consecutive gaps of splitting types.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::diagram::{DynkinDiagram, Family};
use crate::marked::{
    case_of, grassmannianization, vmrt_of_grassmannian, CaseTag, MarkedDiagram, ProductSpace,
};
use crate::tangent::splitting_type_general;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VmrtFamily {
    ProjSpace(u32),
    QuadricOdd(u32),
    QuadricEven(u32),
    Grass { d: u32, n: u32 },
    Spinor(u32),
    E6P6,
    E7P7,
    C3P3,
    P1,
    Other,
}

impl fmt::Display for VmrtFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VmrtFamily::ProjSpace(n) => write!(f, "P^{n}"),
            VmrtFamily::QuadricOdd(n) | VmrtFamily::QuadricEven(n) => write!(f, "Q^{n}"),
            VmrtFamily::Grass { d, n } => write!(f, "G({d},{n})"),
            VmrtFamily::Spinor(n) => write!(f, "S_{n}"),
            VmrtFamily::E6P6 => f.write_str("E6/P6"),
            VmrtFamily::E7P7 => f.write_str("E7/P7"),
            VmrtFamily::C3P3 => f.write_str("C3/P3"),
            VmrtFamily::P1 => f.write_str("P^1"),
            VmrtFamily::Other => f.write_str("other"),
        }
    }
}

/// A splitting threshold. `value == None` means no bound at all (the
/// Grassmannian has no lines through a point moving in a positive-dimensional
/// family, i.e. rank one). `p1_fallback` records that some VMRT factor was a
/// projective line, where nothing is known and 1 is used instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Threshold {
    pub value: Option<u32>,
    pub p1_fallback: bool,
}

impl Threshold {
    pub const UNBOUNDED: Threshold = Threshold {
        value: None,
        p1_fallback: false,
    };

    pub fn finite(value: u32) -> Threshold {
        Threshold {
            value: Some(value),
            p1_fallback: false,
        }
    }

    fn p1() -> Threshold {
        Threshold {
            value: Some(1),
            p1_fallback: true,
        }
    }

    pub fn min(self, other: Threshold) -> Threshold {
        let value = match (self.value, other.value) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        Threshold {
            value,
            p1_fallback: self.p1_fallback || other.p1_fallback,
        }
    }

    /// `r <= value - 2`, always true when unbounded.
    pub fn admits_rank_gap(self, r: usize) -> bool {
        match self.value {
            None => true,
            Some(v) => r as u64 + 2 <= u64::from(v),
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            None => f.write_str("inf"),
            Some(v) if self.p1_fallback => write!(f, "{v}*"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

pub fn classify_vmrt(factor: &MarkedDiagram) -> Result<VmrtFamily> {
    use Family::*;
    let k = factor.single_mark()?;
    let m = factor.diagram().rank() as u32;
    let k = k as u32;
    Ok(match (factor.diagram().family(), m, k) {
        (A, 1, _) => VmrtFamily::P1,
        (A, m, k) if k == 1 || k == m => VmrtFamily::ProjSpace(m),
        (A, m, k) => VmrtFamily::Grass {
            d: k.min(m + 1 - k),
            n: m + 1,
        },
        (B, m, 1) => VmrtFamily::QuadricOdd(2 * m - 1),
        (B, 2, 2) => VmrtFamily::ProjSpace(3),
        (B, m, k) if k == m => VmrtFamily::Spinor(m),
        (C, m, 1) => VmrtFamily::ProjSpace(2 * m - 1),
        (C, 2, 2) => VmrtFamily::QuadricOdd(3),
        (C, 3, 3) => VmrtFamily::C3P3,
        (D, m, 1) => VmrtFamily::QuadricEven(2 * m - 2),
        (D, 3, _) => VmrtFamily::ProjSpace(3),
        (D, m, k) if k + 1 >= m => VmrtFamily::Spinor(m - 1),
        (E, 6, 1 | 6) => VmrtFamily::E6P6,
        (E, 7, 7) => VmrtFamily::E7P7,
        _ => VmrtFamily::Other,
    })
}

/// Largest rank for which uniform bundles on the VMRT-type space are known
/// to be trivial on lines.
pub fn factor_value(family: VmrtFamily) -> Result<Threshold> {
    let v = match family {
        VmrtFamily::P1 => return Ok(Threshold::p1()),
        VmrtFamily::ProjSpace(n) | VmrtFamily::QuadricOdd(n) => n,
        VmrtFamily::QuadricEven(n) => n - 1,
        VmrtFamily::Grass { d: 3, n: 6 } => 5,
        VmrtFamily::Grass { d: 3, n: 7 } => 6,
        VmrtFamily::Grass { d: 3, n: 8 } => 7,
        VmrtFamily::Grass { d, n } if 2 <= d && d <= n - d => n - d + 1,
        VmrtFamily::Spinor(3) => 5,
        VmrtFamily::Spinor(4) => 6,
        VmrtFamily::Spinor(5) => 7,
        VmrtFamily::Spinor(6) => 9,
        VmrtFamily::E6P6 => 10,
        VmrtFamily::E7P7 => 13,
        VmrtFamily::C3P3 => 5,
        other => {
            return Err(Error::Unclassified {
                space: other.to_string(),
            })
        }
    };
    Ok(Threshold::finite(v))
}

/// VMRT factors of `(D, k)` with their classification and value.
pub fn vmrt_breakdown(
    diagram: &DynkinDiagram,
    k: usize,
) -> Result<Vec<(MarkedDiagram, VmrtFamily, Threshold)>> {
    let g = MarkedDiagram::grassmannian(diagram.clone(), k)?;
    vmrt_of_grassmannian(&g)
        .into_iter()
        .map(|f| {
            let fam = classify_vmrt(&f)?;
            let value = factor_value(fam).map_err(|_| Error::Unclassified {
                space: f.to_string(),
            })?;
            Ok((f, fam, value))
        })
        .collect()
}

/// The threshold of the generalized Grassmannian `D/P_k`.
pub fn varsigma(diagram: &DynkinDiagram, k: usize) -> Result<Threshold> {
    let mut t = Threshold::UNBOUNDED;
    for (_, _, value) in vmrt_breakdown(diagram, k)? {
        t = t.min(value);
    }
    let n = diagram.rank();
    match (diagram.family(), k) {
        (Family::C, 1) => Ok(Threshold::finite(2 * n as u32 - 2)),
        (Family::G, 1) => Ok(Threshold::finite(3)),
        _ => Ok(t),
    }
}

pub fn varsigma_of(g: &MarkedDiagram) -> Result<Threshold> {
    varsigma(g.diagram(), g.single_mark()?)
}

/// `nu(X, delta)` for one marked node.
pub fn nu_at(x: &ProductSpace, i: usize, delta: usize) -> Result<Threshold> {
    varsigma_of(&grassmannianization(x, i, delta)?)
}

pub fn nu(x: &ProductSpace) -> Result<Threshold> {
    let mut t = Threshold::UNBOUNDED;
    for (i, delta) in x.marked_pairs() {
        t = t.min(nu_at(x, i, delta)?);
    }
    Ok(t)
}

/// Degrees `a_1 >= ... >= a_r` of a bundle on the lines of one family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingProfile(Vec<i64>);

impl SplittingProfile {
    pub fn new(mut degrees: Vec<i64>) -> Result<SplittingProfile> {
        if degrees.is_empty() {
            return Err(Error::EmptyProfile);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SplittingProfile(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn gaps(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.windows(2).map(|w| w[0] - w[1])
    }

    pub fn twist(&self, c: i64) -> SplittingProfile {
        SplittingProfile(self.0.iter().map(|a| a + c).collect())
    }
}

pub fn slope(profile: &SplittingProfile) -> Ratio<i64> {
    Ratio::new(profile.0.iter().sum(), profile.rank() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    SplitsAsLineBundles,
    /// Each `(factor, node)` whose profile is not constant.
    UnstableForSome(Vec<(usize, usize)>),
    Inconclusive,
}

pub fn uniform_verdict(
    r: usize,
    x: &ProductSpace,
    profiles: &BTreeMap<(usize, usize), SplittingProfile>,
) -> Result<Verdict> {
    let mut nonconstant = Vec::new();
    for (i, delta) in x.marked_pairs() {
        let p = profiles
            .get(&(i, delta))
            .ok_or(Error::MissingProfile {
                factor: i,
                node: delta,
            })?;
        if p.rank() != r {
            return Err(Error::ProfileRankMismatch {
                expected: r,
                found: p.rank(),
            });
        }
        if !p.is_constant() {
            nonconstant.push((i, delta));
        }
    }
    if nonconstant.is_empty() {
        return Ok(Verdict::SplitsAsLineBundles);
    }
    if nu(x)?.admits_rank_gap(r) {
        Ok(Verdict::UnstableForSome(nonconstant))
    } else {
        Ok(Verdict::Inconclusive)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapBound {
    pub paper_threshold: u32,
    pub computed_threshold: u32,
    pub max_semistable_gap: u32,
}

pub fn gm_bound(x: &ProductSpace, i: usize, delta: usize) -> Result<GapBound> {
    if case_of(x, i, delta)? == CaseTag::I {
        return Ok(GapBound {
            paper_threshold: 1,
            computed_threshold: 1,
            max_semistable_gap: 0,
        });
    }
    let paper_threshold = if x.factor(i)?.is_exposed_short(delta)? {
        4
    } else {
        2
    };
    let split = splitting_type_general(x, i, delta)?;
    let computed_threshold = (1 - split.lowest().expect("case II has lines")) as u32;
    Ok(GapBound {
        paper_threshold,
        computed_threshold,
        max_semistable_gap: computed_threshold - 1,
    })
}

pub fn semistability_necessary(profile: &SplittingProfile, bound: &GapBound) -> bool {
    profile
        .gaps()
        .all(|g| g <= i64::from(bound.max_semistable_gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn d(f: Family, n: usize) -> DynkinDiagram {
        DynkinDiagram::build(f, n).unwrap()
    }

    fn g(f: Family, n: usize, k: usize) -> MarkedDiagram {
        MarkedDiagram::grassmannian(d(f, n), k).unwrap()
    }

    fn sp(marks: &[(Family, usize, &[usize])]) -> ProductSpace {
        ProductSpace::new(
            marks
                .iter()
                .map(|&(f, n, m)| MarkedDiagram::new(d(f, n), m.iter().copied().collect()).unwrap())
                .collect(),
        )
    }

    fn prof(v: &[i64]) -> SplittingProfile {
        SplittingProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_vmrt(&g(Family::B, 4, 1)).unwrap(), VmrtFamily::QuadricOdd(7));
        assert_eq!(
            classify_vmrt(&g(Family::D, 6, 6)).unwrap(),
            VmrtFamily::Spinor(5)
        );
        assert_eq!(
            classify_vmrt(&g(Family::A, 5, 4)).unwrap(),
            VmrtFamily::Grass { d: 2, n: 6 }
        );
        assert_eq!(
            classify_vmrt(&g(Family::D, 6, 1)).unwrap(),
            VmrtFamily::QuadricEven(10)
        );
        assert_eq!(classify_vmrt(&g(Family::B, 3, 3)).unwrap(), VmrtFamily::Spinor(3));
        assert_eq!(classify_vmrt(&g(Family::E, 8, 4)).unwrap(), VmrtFamily::Other);
        let two = MarkedDiagram::new(d(Family::A, 3), [1, 2].into()).unwrap();
        assert_eq!(classify_vmrt(&two), Err(Error::MultipleMarks { count: 2 }));
    }

    #[test]
    fn factor_values() {
        assert_eq!(factor_value(VmrtFamily::Spinor(6)).unwrap().value, Some(9));
        assert_eq!(
            factor_value(VmrtFamily::Grass { d: 3, n: 8 }).unwrap().value,
            Some(7)
        );
        assert_eq!(factor_value(VmrtFamily::E7P7).unwrap().value, Some(13));
        assert!(factor_value(VmrtFamily::P1).unwrap().p1_fallback);
        assert!(matches!(
            factor_value(VmrtFamily::Other),
            Err(Error::Unclassified { .. })
        ));
    }

    #[test]
    fn varsigma_examples() {
        assert_eq!(varsigma(&d(Family::E, 8), 8).unwrap().value, Some(13));
        assert_eq!(varsigma(&d(Family::D, 7), 1).unwrap().value, Some(9));
        assert_eq!(varsigma(&d(Family::A, 5), 3).unwrap().value, Some(2));
        assert_eq!(varsigma(&d(Family::C, 6), 1).unwrap(), Threshold::finite(10));
        assert_eq!(varsigma(&d(Family::G, 2), 1).unwrap(), Threshold::finite(3));
        let g2p2 = varsigma(&d(Family::G, 2), 2).unwrap();
        assert_eq!(g2p2.value, Some(1));
        assert!(g2p2.p1_fallback);
        assert_eq!(varsigma(&d(Family::A, 1), 1).unwrap(), Threshold::UNBOUNDED);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&sp(&[(Family::A, 5, &[1, 3])])).unwrap().value, Some(1));
        assert_eq!(nu(&sp(&[(Family::E, 7, &[7])])).unwrap().value, Some(10));
        assert_eq!(
            nu(&sp(&[(Family::A, 3, &[2]), (Family::A, 3, &[2])])).unwrap().value,
            Some(1)
        );
    }

    #[test]
    fn verdicts() {
        let x = sp(&[(Family::E, 7, &[7])]);
        let one = |p: SplittingProfile| BTreeMap::from([((1, 7), p)]);
        assert_eq!(
            uniform_verdict(2, &x, &one(prof(&[0, 0]))).unwrap(),
            Verdict::SplitsAsLineBundles
        );
        assert_eq!(
            uniform_verdict(3, &x, &one(prof(&[1, 0, 0]))).unwrap(),
            Verdict::UnstableForSome(vec![(1, 7)])
        );
        assert_eq!(
            uniform_verdict(2, &x, &one(prof(&[1, 0, 0]))),
            Err(Error::ProfileRankMismatch {
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            uniform_verdict(2, &x, &BTreeMap::new()),
            Err(Error::MissingProfile { factor: 1, node: 7 })
        );
        let y = sp(&[(Family::G, 2, &[2])]);
        let mut p = vec![0i64; 9];
        p[0] = 1;
        let m = BTreeMap::from([((1, 2), prof(&p))]);
        assert_eq!(uniform_verdict(9, &y, &m).unwrap(), Verdict::Inconclusive);
    }

    #[test]
    fn slopes() {
        assert_eq!(slope(&prof(&[1, 0])), Ratio::new(1, 2));
        assert_eq!(slope(&prof(&[0, 0, 0])), Ratio::from_integer(0));
        assert_eq!(slope(&prof(&[3, 1, -1])), Ratio::from_integer(1));
    }

    #[test]
    fn gap_bounds() {
        let b = gm_bound(&sp(&[(Family::C, 5, &[2])]), 1, 2).unwrap();
        assert_eq!((b.paper_threshold, b.computed_threshold, b.max_semistable_gap), (4, 3, 2));
        let b = gm_bound(&sp(&[(Family::G, 2, &[1])]), 1, 1).unwrap();
        assert_eq!((b.paper_threshold, b.computed_threshold, b.max_semistable_gap), (4, 4, 3));
        let x: ProductSpace = MarkedDiagram::borel(d(Family::F, 4)).into();
        for k in 1..=4 {
            let b = gm_bound(&x, 1, k).unwrap();
            assert_eq!((b.paper_threshold, b.computed_threshold, b.max_semistable_gap), (1, 1, 0));
        }
    }

    #[test]
    fn semistability() {
        let gap = |g: u32| GapBound {
            paper_threshold: g + 1,
            computed_threshold: g + 1,
            max_semistable_gap: g,
        };
        assert!(semistability_necessary(&prof(&[1, 0, 0]), &gap(1)));
        assert!(!semistability_necessary(&prof(&[2, 0]), &gap(1)));
        assert!(semistability_necessary(&prof(&[4, 1]), &gap(3)));
    }
}

//! Forced vanishing of Chern-class coefficients for maps from E6/P6 and
//! E7/P7 into Grassmannians.
//!
//! A map to `G(t, N)` pulls back the tautological sequence, so
//! `c(H) c(Q) = 1` in the Chow ring. Writing both total Chern classes in
//! the degree bases with unknown integer coefficients and reducing the
//! product gives polynomial constraints, from which the coefficients on the
//! extra generator are shown to vanish.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::lattice::gcd;
use super::poly::Poly;
use super::ring::{build_ring, Element, GradedQuotientRing, Monomial, Preset};
use super::ChowError;

type R<T> = core::result::Result<T, ChowError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VanishingCase {
    E6P6T4,
    E6P6T5,
    E7P7T5,
    E7P7T6,
}

impl VanishingCase {
    pub const ALL: [VanishingCase; 4] = [
        VanishingCase::E6P6T4,
        VanishingCase::E6P6T5,
        VanishingCase::E7P7T5,
        VanishingCase::E7P7T6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VanishingCase::E6P6T4 => "E6P6-t4",
            VanishingCase::E6P6T5 => "E6P6-t5",
            VanishingCase::E7P7T5 => "E7P7-t5",
            VanishingCase::E7P7T6 => "E7P7-t6",
        }
    }

    pub fn parse(s: &str) -> Option<VanishingCase> {
        VanishingCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
    }

    pub fn preset(self) -> Preset {
        match self {
            VanishingCase::E6P6T4 | VanishingCase::E6P6T5 => Preset::E6P6,
            _ => Preset::E7P7,
        }
    }

    /// Ranks of the pulled-back subbundle and quotient.
    pub fn ranks(self) -> (u32, u32) {
        match self {
            VanishingCase::E6P6T4 => (4, 6),
            VanishingCase::E6P6T5 => (5, 5),
            VanishingCase::E7P7T5 => (5, 8),
            VanishingCase::E7P7T6 => (6, 7),
        }
    }

    /// `(degree of the target unknowns, degrees searched, uses a_1 = -b_1)` per stage.
    fn stages(self) -> Vec<(u32, Vec<u32>, bool)> {
        match self {
            VanishingCase::E6P6T4 => vec![(4, vec![4, 8], false)],
            VanishingCase::E6P6T5 => vec![(4, vec![4, 8], false), (5, vec![1, 5, 6], true)],
            VanishingCase::E7P7T5 => vec![(5, vec![5, 10], false)],
            VanishingCase::E7P7T6 => vec![(5, vec![5, 10], false), (6, vec![6, 12], false)],
        }
    }
}

impl fmt::Display for VanishingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One polynomial that must vanish: the coefficient of `monomial` in degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub degree: u32,
    pub monomial: String,
    pub poly: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `u + v = 0` and `u v = 0`.
    SumAndProduct,
    /// `u + v = 0`, `a1 + b1 = 0`, `a1 v + b1 u = 0` with `a1 != 0`.
    SumAndCross,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub targets: [String; 2],
    pub assumed_zero: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub pattern: Pattern,
    pub hypothesis: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionReport {
    pub case: VanishingCase,
    pub ranks: (u32, u32),
    pub stages: Vec<Stage>,
    pub forced_zero: Vec<String>,
}

struct Unknowns {
    names: Vec<String>,
    // (side, degree, is_extra) -> variable
    index: BTreeMap<(usize, u32, bool), usize>,
}

const TILDE: char = '\u{303}';

fn unknown_name(side: usize, j: u32, extra: bool) -> String {
    let letter = if side == 0 { 'a' } else { 'b' };
    if extra {
        format!("{letter}{TILDE}{j}")
    } else {
        format!("{letter}{j}")
    }
}

fn is_power_of_first(m: &Monomial) -> bool {
    m.exps()[1..].iter().all(|&e| e == 0)
}

/// `1 + sum_j sum_{b in basis(j)} x_{j,b} b` for `j <= rank`.
fn total_class(
    ring: &GradedQuotientRing,
    side: usize,
    rank: u32,
    unknowns: &mut Unknowns,
) -> R<Vec<(Monomial, Poly)>> {
    let mut out = vec![(Monomial::one(ring.ngens()), Poly::constant(1))];
    for j in 1..=rank {
        let basis = ring.basis(j)?;
        let extras = basis.iter().filter(|m| !is_power_of_first(m)).count();
        if extras > 1 {
            return Err(ChowError::PreconditionViolated(format!(
                "degree {j} has {extras} basis elements beyond the first generator"
            )));
        }
        for m in basis {
            let extra = !is_power_of_first(&m);
            let v = unknowns.names.len();
            unknowns.names.push(unknown_name(side, j, extra));
            unknowns.index.insert((side, j, extra), v);
            out.push((m, Poly::var(v)));
        }
    }
    Ok(out)
}

/// Per degree, the coefficient polynomials on the degree basis of the
/// reduced product.
fn constraints(
    ring: &GradedQuotientRing,
    a: &[(Monomial, Poly)],
    b: &[(Monomial, Poly)],
) -> R<BTreeMap<u32, Vec<(Monomial, Poly)>>> {
    let mut by_degree: BTreeMap<u32, BTreeMap<Monomial, Poly>> = BTreeMap::new();
    let weights = ring.generator_degrees();
    for (ma, pa) in a {
        for (mb, pb) in b {
            let m = ma.mul(mb);
            let t = m.degree(weights);
            if t == 0 || t > ring.cap() {
                continue;
            }
            let slot = by_degree.entry(t).or_default().entry(m).or_default();
            *slot = &*slot + &(pa * pb);
        }
    }
    let mut out = BTreeMap::new();
    for (t, terms) in by_degree {
        let basis = ring.basis(t)?;
        let reduced: Vec<(i128, Vec<i128>, Poly)> = terms
            .into_iter()
            .map(|(m, p)| {
                let (s, coords) = ring.coordinates(&Element::term(m, 1), t)?;
                Ok((s, coords, p))
            })
            .collect::<R<_>>()?;
        let lcm = reduced
            .iter()
            .fold(1i128, |acc, (s, _, _)| acc / gcd(acc, *s) * s);
        let mut coeffs = vec![Poly::zero(); basis.len()];
        for (s, coords, p) in &reduced {
            for (slot, &c) in coeffs.iter_mut().zip(coords) {
                if c != 0 {
                    *slot = &*slot + &p.scale(c * (lcm / s));
                }
            }
        }
        out.insert(t, basis.into_iter().zip(coeffs).collect());
    }
    Ok(out)
}

fn same_up_to_sign(p: &Poly, q: &Poly) -> bool {
    !p.is_zero() && p.primitive() == q.primitive()
}

pub fn verify_vanishing(case: VanishingCase) -> R<DeductionReport> {
    let ring = build_ring(case.preset())?;
    let (ra, rb) = case.ranks();
    let mut unknowns = Unknowns {
        names: Vec::new(),
        index: BTreeMap::new(),
    };
    let a = total_class(&ring, 0, ra, &mut unknowns)?;
    let b = total_class(&ring, 1, rb, &mut unknowns)?;
    let all = constraints(&ring, &a, &b)?;
    let names = unknowns.names.clone();
    let var = |side: usize, j: u32, extra: bool| unknowns.index[&(side, j, extra)];

    let mut killed: BTreeSet<usize> = BTreeSet::new();
    let mut stages = Vec::new();
    for (j, degrees, cross) in case.stages() {
        let (u, v) = (var(0, j, true), var(1, j, true));
        let (pu, pv) = (Poly::var(u), Poly::var(v));
        let mut live: Vec<(u32, &Monomial, Poly)> = Vec::new();
        for t in &degrees {
            for (m, p) in all.get(t).into_iter().flatten() {
                let q = p.kill(&killed);
                if !q.is_zero() {
                    live.push((*t, m, q.primitive()));
                }
            }
        }
        let find = |target: &Poly| live.iter().find(|(_, _, p)| same_up_to_sign(p, target));
        let sum = &pu + &pv;
        let mut used = Vec::new();
        let ok = if !cross {
            let product = &pu * &pv;
            match (find(&sum), find(&product)) {
                (Some(x), Some(y)) => {
                    used.extend([x, y]);
                    true
                }
                _ => false,
            }
        } else {
            let (a1, b1) = (var(0, 1, false), var(1, 1, false));
            let first = &Poly::var(a1) + &Poly::var(b1);
            // after b1 = -a1 the cross term must be a1 (v - u) up to sign
            let cross_target = &Poly::var(a1) * &(&pv - &pu);
            let cross_hit = live.iter().find(|(_, _, p)| {
                (p.variables().contains(&u) || p.variables().contains(&v))
                    && same_up_to_sign(&p.substitute(b1, &(-&Poly::var(a1))), &cross_target)
            });
            match (find(&sum), find(&first), cross_hit) {
                (Some(x), Some(y), Some(z)) => {
                    used.extend([x, y, z]);
                    true
                }
                _ => false,
            }
        };
        if !ok {
            return Err(ChowError::DeductionFailed {
                case: String::from(case.name()),
                surviving: live
                    .iter()
                    .map(|(t, m, p)| format!("deg {t} [{}]: {} = 0", ring.render_monomial(m), p.render(&names)))
                    .collect(),
            });
        }
        stages.push(Stage {
            targets: [names[u].clone(), names[v].clone()],
            assumed_zero: killed.iter().map(|&k| names[k].clone()).collect(),
            constraints: used
                .into_iter()
                .map(|(t, m, p)| Constraint {
                    degree: *t,
                    monomial: ring.render_monomial(m),
                    poly: p.render(&names),
                })
                .collect(),
            pattern: if cross {
                Pattern::SumAndCross
            } else {
                Pattern::SumAndProduct
            },
            hypothesis: cross.then(|| format!("{} != 0", names[var(0, 1, false)])),
        });
        killed.extend([u, v]);
    }
    Ok(DeductionReport {
        case,
        ranks: (ra, rb),
        stages,
        forced_zero: killed.iter().map(|&k| names[k].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cases_deduce() {
        for case in VanishingCase::ALL {
            let r = verify_vanishing(case).unwrap_or_else(|e| panic!("{case}: {e}"));
            assert_eq!(r.forced_zero.len(), 2 * r.stages.len());
        }
    }

    #[test]
    fn e6_t4_constraints() {
        let r = verify_vanishing(VanishingCase::E6P6T4).unwrap();
        let c = &r.stages[0].constraints;
        assert_eq!((c[0].degree, c[0].monomial.as_str()), (4, "y4"));
        assert_eq!((c[1].degree, c[1].monomial.as_str()), (8, "y4^2"));
        assert_eq!(c[1].poly, "a\u{303}4*b\u{303}4");
    }

    #[test]
    fn e6_t5_uses_hypothesis() {
        let r = verify_vanishing(VanishingCase::E6P6T5).unwrap();
        assert_eq!(r.stages[1].pattern, Pattern::SumAndCross);
        assert_eq!(r.stages[1].hypothesis.as_deref(), Some("a1 != 0"));
        assert_eq!(r.stages[1].constraints[1].poly, "a1 + b1");
    }

    #[test]
    fn parse_names() {
        assert_eq!(VanishingCase::parse("e7p7-T6"), Some(VanishingCase::E7P7T6));
        assert_eq!(VanishingCase::parse("E8"), None);
    }
}

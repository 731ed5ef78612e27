//! Positive roots as coefficient vectors over the simple roots.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{CartanMatrix, DynkinDiagram};

/// Coefficients `m_j` of `sum m_j a_j`, indexed by node - 1. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Root {
        Root { coeffs }
    }

    pub fn simple(rank: usize, node: usize) -> Root {
        let mut coeffs = vec![0; rank];
        coeffs[node - 1] = 1;
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    /// Coefficient at a 1-based node.
    pub fn coeff(&self, node: usize) -> i32 {
        self.coeffs[node - 1]
    }

    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `s_i(b) = b - (sum_j b_j A[i][j]) e_i`
    pub fn reflect(&self, cartan: &CartanMatrix, i: usize) -> Root {
        let pairing: i32 = self
            .coeffs
            .iter()
            .zip(cartan.row(i))
            .map(|(b, a)| b * a)
            .sum();
        let mut coeffs = self.coeffs.clone();
        coeffs[i - 1] -= pairing;
        Root { coeffs }
    }

    pub fn negate(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Concatenated digits, e.g. `0112`. Coefficients never exceed 6.
impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coeffs {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All positive roots by closing the simple roots under simple reflections,
/// sorted lexicographically.
pub fn positive_roots(diagram: &DynkinDiagram) -> Vec<Root> {
    let n = diagram.rank();
    let cartan = diagram.cartan_matrix();
    let mut found: BTreeSet<Root> = BTreeSet::new();
    let mut queue: VecDeque<Root> = VecDeque::new();
    for k in 1..=n {
        let r = Root::simple(n, k);
        found.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 1..=n {
            let image = beta.reflect(&cartan, i);
            if image.is_positive() && found.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    found.into_iter().collect()
}

/// Textbook size of the positive system.
pub fn classical_root_count(diagram: &DynkinDiagram) -> usize {
    use crate::diagram::Family::*;
    let n = diagram.rank();
    match diagram.family() {
        A => n * (n + 1) / 2,
        B | C => n * n,
        D => n * (n - 1),
        E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        F => 24,
        G => 6,
    }
}

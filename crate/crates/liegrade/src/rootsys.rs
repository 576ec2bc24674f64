//! Root systems of the classical types A, B, C, D.
//!
//! Roots are kept in two coordinate systems at once: λ-coordinates (integer
//! vectors over the diagonal functionals λ_i of the matrix realization) and
//! the expansion over simple roots. Simple root conventions follow the
//! matrix realizations: α_i = λ_i − λ_{i+1} throughout, closed off by
//! α_l = 2λ_l (C), α_l = λ_l (B), α_l = λ_{l−1} + λ_l (D).

use crate::exactlin::{qi, solve, QMatrix};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
        };
        write!(f, "{s}")
    }
}

impl FromStr for LieType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim() {
            "A" | "a" => Ok(LieType::A),
            "B" | "b" => Ok(LieType::B),
            "C" | "c" => Ok(LieType::C),
            "D" | "d" => Ok(LieType::D),
            other => Err(RootError::BadType(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootError {
    BadType(String),
    RankTooSmall {
        lie_type: LieType,
        rank: usize,
        min: usize,
    },
    BadMarkedSet(String),
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::BadType(s) => write!(f, "unknown Lie type `{s}` (expected A, B, C or D)"),
            RootError::RankTooSmall {
                lie_type,
                rank,
                min,
            } => {
                write!(f, "rank {rank} below minimum {min} for type {lie_type}")
            }
            RootError::BadMarkedSet(s) => write!(f, "invalid marked set: {s}"),
        }
    }
}

impl std::error::Error for RootError {}

/// Smallest rank the artifact realizes: A ≥ 1, B/C ≥ 2, D ≥ 3
/// (D_3 is kept available for cross-checks against A_3).
pub fn min_rank(lie_type: LieType) -> usize {
    match lie_type {
        LieType::A => 1,
        LieType::B | LieType::C => 2,
        LieType::D => 3,
    }
}

/// A positive root, carried in both coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Integer coefficients over λ_1..λ_m (m = l+1 for A, l otherwise).
    pub lambda: Vec<i64>,
    /// Expansion over the simple roots; all entries ≥ 0.
    pub simple_coeffs: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    /// λ-coordinates of the simple roots.
    pub simple_roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
}

fn lambda_dim(lie_type: LieType, rank: usize) -> usize {
    match lie_type {
        LieType::A => rank + 1,
        _ => rank,
    }
}

fn simple_root_lambdas(lie_type: LieType, l: usize) -> Vec<Vec<i64>> {
    let m = lambda_dim(lie_type, l);
    let mut out = Vec::with_capacity(l);
    for i in 0..l {
        let mut v = vec![0i64; m];
        match lie_type {
            LieType::A => {
                v[i] = 1;
                v[i + 1] = -1;
            }
            LieType::B => {
                if i + 1 < l {
                    v[i] = 1;
                    v[i + 1] = -1;
                } else {
                    v[l - 1] = 1;
                }
            }
            LieType::C => {
                if i + 1 < l {
                    v[i] = 1;
                    v[i + 1] = -1;
                } else {
                    v[l - 1] = 2;
                }
            }
            LieType::D => {
                if i + 1 < l {
                    v[i] = 1;
                    v[i + 1] = -1;
                } else {
                    v[l - 2] = 1;
                    v[l - 1] = 1;
                }
            }
        }
        out.push(v);
    }
    out
}

fn positive_root_lambdas(lie_type: LieType, l: usize) -> Vec<Vec<i64>> {
    let m = lambda_dim(lie_type, l);
    let mut out = Vec::new();
    let mut push = |entries: &[(usize, i64)]| {
        let mut v = vec![0i64; m];
        for &(i, c) in entries {
            v[i] += c;
        }
        out.push(v);
    };
    match lie_type {
        LieType::A => {
            for i in 0..m {
                for j in (i + 1)..m {
                    push(&[(i, 1), (j, -1)]);
                }
            }
        }
        LieType::B => {
            for i in 0..l {
                for j in (i + 1)..l {
                    push(&[(i, 1), (j, -1)]);
                }
            }
            for i in 0..l {
                push(&[(i, 1)]);
            }
            for i in 0..l {
                for j in (i + 1)..l {
                    push(&[(i, 1), (j, 1)]);
                }
            }
        }
        LieType::C => {
            for i in 0..l {
                for j in (i + 1)..l {
                    push(&[(i, 1), (j, -1)]);
                }
            }
            for i in 0..l {
                for j in i..l {
                    push(&[(i, 1), (j, 1)]);
                }
            }
        }
        LieType::D => {
            for i in 0..l {
                for j in (i + 1)..l {
                    push(&[(i, 1), (j, -1)]);
                }
            }
            for i in 0..l {
                for j in (i + 1)..l {
                    push(&[(i, 1), (j, 1)]);
                }
            }
        }
    }
    out
}

/// Enumerate the root system of `(lie_type, l)`.
///
/// Every positive root is solved against the simple-root basis and the
/// integrality and nonnegativity of the expansion is verified on the spot.
pub fn build_root_system(lie_type: LieType, l: usize) -> Result<RootSystem, RootError> {
    let min = min_rank(lie_type);
    if l < min {
        return Err(RootError::RankTooSmall {
            lie_type,
            rank: l,
            min,
        });
    }
    let simple = simple_root_lambdas(lie_type, l);
    let m = lambda_dim(lie_type, l);
    // Columns are the simple roots in λ-coordinates.
    let mut s = QMatrix::zero(m, l);
    for (j, sr) in simple.iter().enumerate() {
        for (i, &v) in sr.iter().enumerate() {
            s.set(i, j, qi(v));
        }
    }
    let mut positive_roots = Vec::new();
    for lam in positive_root_lambdas(lie_type, l) {
        let b: Vec<_> = lam.iter().map(|&v| qi(v)).collect();
        let n = solve(&s, &b).expect("positive root outside simple-root span");
        let coeffs: Vec<i64> = n
            .iter()
            .map(|c| {
                assert!(c.denom().is_one(), "non-integral simple coefficient");
                let v: i64 = c.numer().try_into().expect("coefficient overflow");
                assert!(v >= 0, "negative coefficient on a positive root");
                v
            })
            .collect();
        positive_roots.push(Root {
            lambda: lam,
            simple_coeffs: coeffs,
        });
    }
    Ok(RootSystem {
        lie_type,
        rank: l,
        simple_roots: simple,
        positive_roots,
    })
}

impl RootSystem {
    /// Total number of roots (positive and negative).
    pub fn root_count(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn lambda_dim(&self) -> usize {
        lambda_dim(self.lie_type, self.rank)
    }

    /// The unique root whose simple expansion dominates all others.
    pub fn highest_root(&self) -> &Root {
        let best = self
            .positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty root system");
        for r in &self.positive_roots {
            for (a, b) in r.simple_coeffs.iter().zip(&best.simple_coeffs) {
                assert!(a <= b, "highest root is not dominant");
            }
        }
        best
    }

    /// Locate a positive root by λ-coordinates.
    pub fn find_by_lambda(&self, lambda: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.lambda == lambda)
    }
}

/// A nonempty set of marked simple roots Δ₁ ⊆ {α_1, …, α_l}, 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MarkedSet {
    indices: BTreeSet<usize>,
}

impl MarkedSet {
    pub fn new(rank: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self, RootError> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.is_empty() {
            return Err(RootError::BadMarkedSet("empty Δ₁".into()));
        }
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > rank) {
            return Err(RootError::BadMarkedSet(format!(
                "index {bad} outside 1..={rank}"
            )));
        }
        Ok(MarkedSet { indices: set })
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }
}

impl fmt::Display for MarkedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Degree of a positive root with respect to Δ₁: Σ_{i ∈ Δ₁} n_i(α).
/// The degree of −α is −degree(α).
pub fn degree_of_root(root: &Root, delta1: &MarkedSet) -> i64 {
    delta1.indices().map(|i| root.simple_coeffs[i - 1]).sum()
}

/// Canonical representative of Δ₁ under the Dynkin diagram automorphisms:
/// the reversal i ↦ l+1−i for A_l, the swap of α_{l−1}, α_l for D_l, and
/// the identity for B_l, C_l. Returns the lexicographically smallest image.
pub fn diagram_automorphism_orbit(lie_type: LieType, rank: usize, delta1: &MarkedSet) -> MarkedSet {
    let images: Vec<Vec<usize>> = match lie_type {
        LieType::A => {
            let rev: Vec<usize> = delta1.indices().map(|i| rank + 1 - i).collect();
            vec![delta1.to_vec(), rev]
        }
        LieType::D => {
            let swapped: Vec<usize> = delta1
                .indices()
                .map(|i| {
                    if i == rank - 1 {
                        rank
                    } else if i == rank {
                        rank - 1
                    } else {
                        i
                    }
                })
                .collect();
            vec![delta1.to_vec(), swapped]
        }
        LieType::B | LieType::C => vec![delta1.to_vec()],
    };
    let best = images
        .into_iter()
        .map(|v| {
            let mut v = v;
            v.sort_unstable();
            v
        })
        .min()
        .expect("nonempty orbit");
    MarkedSet::new(rank, best).expect("orbit image stays valid")
}

/// All nonempty marked sets for a given rank, in canonical order.
pub fn all_marked_sets(rank: usize) -> Vec<MarkedSet> {
    assert!(rank >= 1 && rank < 32, "sweep rank out of range");
    let mut out = Vec::new();
    for mask in 1u32..(1 << rank) {
        let indices = (1..=rank).filter(|i| mask & (1 << (i - 1)) != 0);
        out.push(MarkedSet::new(rank, indices).expect("valid by construction"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(rank: usize, idx: &[usize]) -> MarkedSet {
        MarkedSet::new(rank, idx.iter().copied()).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(build_root_system(LieType::A, 2).unwrap().root_count(), 6);
        assert_eq!(build_root_system(LieType::C, 2).unwrap().root_count(), 8);
        assert_eq!(build_root_system(LieType::B, 3).unwrap().root_count(), 18);
        assert_eq!(build_root_system(LieType::D, 4).unwrap().root_count(), 24);
    }

    #[test]
    fn rank_minimums() {
        assert!(build_root_system(LieType::A, 0).is_err());
        assert!(build_root_system(LieType::B, 1).is_err());
        assert!(build_root_system(LieType::D, 2).is_err());
        assert!(build_root_system(LieType::D, 3).is_ok());
    }

    #[test]
    fn degree_examples() {
        let a2 = build_root_system(LieType::A, 2).unwrap();
        // α₁+α₂ in A₂
        let i = a2.find_by_lambda(&[1, 0, -1]).unwrap();
        assert_eq!(degree_of_root(&a2.positive_roots[i], &ms(2, &[1])), 1);

        let c2 = build_root_system(LieType::C, 2).unwrap();
        // 2α₁+α₂ = 2λ₁ in C₂
        let i = c2.find_by_lambda(&[2, 0]).unwrap();
        assert_eq!(degree_of_root(&c2.positive_roots[i], &ms(2, &[1, 2])), 3);

        let a3 = build_root_system(LieType::A, 3).unwrap();
        // α₂ in A₃
        let i = a3.find_by_lambda(&[0, 1, -1, 0]).unwrap();
        assert_eq!(degree_of_root(&a3.positive_roots[i], &ms(3, &[1, 3])), 0);
    }

    #[test]
    fn degree_is_additive_on_root_sums() {
        for (t, l) in [
            (LieType::A, 3),
            (LieType::B, 3),
            (LieType::C, 3),
            (LieType::D, 4),
        ] {
            let rs = build_root_system(t, l).unwrap();
            for d in all_marked_sets(l) {
                for a in &rs.positive_roots {
                    for b in &rs.positive_roots {
                        let sum: Vec<i64> =
                            a.lambda.iter().zip(&b.lambda).map(|(x, y)| x + y).collect();
                        if let Some(k) = rs.find_by_lambda(&sum) {
                            let c = &rs.positive_roots[k];
                            assert_eq!(
                                degree_of_root(c, &d),
                                degree_of_root(a, &d) + degree_of_root(b, &d)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn diagram_orbit_examples() {
        assert_eq!(
            diagram_automorphism_orbit(LieType::A, 4, &ms(4, &[3, 4])),
            ms(4, &[1, 2])
        );
        assert_eq!(
            diagram_automorphism_orbit(LieType::A, 4, &ms(4, &[2, 3])),
            ms(4, &[2, 3])
        );
        assert_eq!(
            diagram_automorphism_orbit(LieType::C, 3, &ms(3, &[2])),
            ms(3, &[2])
        );
        assert_eq!(
            diagram_automorphism_orbit(LieType::D, 4, &ms(4, &[4])),
            ms(4, &[3])
        );
    }

    #[test]
    fn highest_roots() {
        let c3 = build_root_system(LieType::C, 3).unwrap();
        assert_eq!(c3.highest_root().simple_coeffs, vec![2, 2, 1]);
        let b3 = build_root_system(LieType::B, 3).unwrap();
        assert_eq!(b3.highest_root().simple_coeffs, vec![1, 2, 2]);
        let d4 = build_root_system(LieType::D, 4).unwrap();
        assert_eq!(d4.highest_root().simple_coeffs, vec![1, 2, 1, 1]);
    }
}

//! Classification of gradations (X_l, Δ₁) into excluded / type I / II / III,
//! contact detection, the exceptional automorphism-group correspondences,
//! and VMRT model bookkeeping. Everything here is decided from root data
//! alone; the prolongation cross-validation lives in `verify`.

use crate::rootsys::{
    all_marked_sets, build_root_system, degree_of_root, diagram_automorphism_orbit, min_rank,
    LieType, MarkedSet, RootError,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The trichotomy, with the two families the theory sets aside up front.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Excluded,
    TypeI,
    TypeII,
    TypeIII,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Excluded => "excluded",
            Verdict::TypeI => "I",
            Verdict::TypeII => "II",
            Verdict::TypeIII => "III",
        };
        write!(f, "{s}")
    }
}

/// The Aut⁰-exceptional target of a gradation, when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutTarget {
    pub lie_type: LieType,
    pub rank: usize,
    pub delta1: Vec<usize>,
}

/// VMRT model attached to a gradation, when a standard model is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VmrtModel {
    pub model: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub lie_type: LieType,
    pub rank: usize,
    pub delta1: Vec<usize>,
    pub canonical_delta1: Vec<usize>,
    pub depth: i64,
    /// dim g_k keyed by degree k (−μ..μ).
    pub dims: BTreeMap<i64, usize>,
    pub contact: bool,
    pub verdict: Verdict,
    pub exceptional_aut: Option<AutTarget>,
    pub vmrt: Option<VmrtModel>,
}

/// Graded dimensions from root data alone.
fn graded_dims(
    lie_type: LieType,
    l: usize,
    delta1: &MarkedSet,
) -> Result<BTreeMap<i64, usize>, RootError> {
    let rs = build_root_system(lie_type, l)?;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    *dims.entry(0).or_insert(0) += l; // Cartan
    for root in &rs.positive_roots {
        let d = degree_of_root(root, delta1);
        *dims.entry(d).or_insert(0) += 1;
        *dims.entry(-d).or_insert(0) += 1;
    }
    Ok(dims)
}

/// Image of a gradation under the exceptional low-rank isomorphisms
/// B₂ ≅ C₂ (swap α₁ ↔ α₂) and D₃ ≅ A₃ (the D₃ center node α₁ maps to the
/// A₃ center node α₂). The verdict rules quantify over isomorphism classes,
/// so these identifications participate in classification.
pub fn iso_class(lie_type: LieType, l: usize, delta1: &MarkedSet) -> (LieType, usize, MarkedSet) {
    match (lie_type, l) {
        (LieType::B, 2) => {
            let mapped = delta1.indices().map(|i| 3 - i);
            (
                LieType::C,
                2,
                MarkedSet::new(2, mapped).expect("valid image"),
            )
        }
        (LieType::D, 3) => {
            let mapped = delta1.indices().map(|i| match i {
                1 => 2,
                2 => 1,
                other => other,
            });
            (
                LieType::A,
                3,
                MarkedSet::new(3, mapped).expect("valid image"),
            )
        }
        _ => (lie_type, l, delta1.clone()),
    }
}

/// Classify one gradation.
pub fn classify(
    lie_type: LieType,
    l: usize,
    delta1: &MarkedSet,
) -> Result<ClassificationRecord, RootError> {
    let dims = graded_dims(lie_type, l, delta1)?;
    let depth = *dims.keys().max().expect("nonempty");
    let contact = depth == 2 && dims.get(&-2) == Some(&1);
    let canonical = diagram_automorphism_orbit(lie_type, l, delta1);
    let cvec = canonical.to_vec();

    // Verdict rules run on the isomorphism class.
    let (it, il, idelta) = iso_class(lie_type, l, delta1);
    let ivec = diagram_automorphism_orbit(it, il, &idelta).to_vec();
    let excluded = match it {
        LieType::A | LieType::C => ivec == vec![1],
        _ => false,
    };
    let type_iii = match it {
        // (A_l, {α₁, α_k}) for 2 ≤ k ≤ l, up to diagram reversal.
        LieType::A => ivec.len() == 2 && ivec[0] == 1,
        // (C_l, {α₁, α_l}).
        LieType::C => ivec == vec![1, il],
        _ => false,
    };
    let verdict = if excluded {
        Verdict::Excluded
    } else if type_iii {
        Verdict::TypeIII
    } else if depth == 1 || contact {
        Verdict::TypeII
    } else {
        Verdict::TypeI
    };

    let dim_g_minus1 = dims.get(&-1).copied().unwrap_or(0);
    let vmrt = vmrt_model(lie_type, l, delta1);
    if let Some(v) = &vmrt {
        assert!(v.dim + 1 <= dim_g_minus1, "VMRT dimension exceeds P(g_-1)");
    }

    Ok(ClassificationRecord {
        lie_type,
        rank: l,
        delta1: delta1.to_vec(),
        canonical_delta1: cvec,
        depth,
        dims,
        contact,
        verdict,
        exceptional_aut: exceptional_aut(lie_type, l, delta1),
        vmrt,
    })
}

/// The Aut⁰(G/P) exceptions among the realized types:
/// (C_l,{α₁}) ↦ (A_{2l−1},{α₁}) and (B_l,{α_l}) (l ≥ 3) ↦ (D_{l+1},{α_{l+1}}).
pub fn exceptional_aut(lie_type: LieType, l: usize, delta1: &MarkedSet) -> Option<AutTarget> {
    let v = delta1.to_vec();
    match lie_type {
        LieType::C if v == vec![1] => Some(AutTarget {
            lie_type: LieType::A,
            rank: 2 * l - 1,
            delta1: vec![1],
        }),
        LieType::B if l >= 3 && v == vec![l] => Some(AutTarget {
            lie_type: LieType::D,
            rank: l + 1,
            delta1: vec![l + 1],
        }),
        _ => None,
    }
}

/// One row of the exceptional-Aut correspondence table. The (G₂,{α₁}) row
/// is emitted from static data and marked as not computed: there is no
/// matrix model for G₂ here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutTableRow {
    pub source: String,
    pub target: String,
    pub computed: bool,
}

/// The full correspondence table up to `max_rank`.
pub fn exceptional_aut_table(max_rank: usize) -> Vec<AutTableRow> {
    let mut rows = Vec::new();
    for l in 2..=max_rank {
        rows.push(AutTableRow {
            source: format!("(C{l}, {{a1}})"),
            target: format!("(A{}, {{a1}})", 2 * l - 1),
            computed: true,
        });
    }
    for l in 3..=max_rank {
        rows.push(AutTableRow {
            source: format!("(B{l}, {{a{l}}})"),
            target: format!("(D{}, {{a{}}})", l + 1, l + 1),
            computed: true,
        });
    }
    rows.push(AutTableRow {
        source: "(G2, {a1})".into(),
        target: "(B3, {a1})".into(),
        computed: false,
    });
    rows
}

/// The standard VMRT models: the projectivized tangent space for
/// projective space, the Segre for Grassmannians, P¹ × quadric for the
/// contact gradations (B_l,{α₂}) (l ≥ 3) and (D_l,{α₂}) (l ≥ 4).
pub fn vmrt_model(lie_type: LieType, l: usize, delta1: &MarkedSet) -> Option<VmrtModel> {
    let v = delta1.to_vec();
    match lie_type {
        LieType::A if v.len() == 1 => {
            let m = v[0];
            let n_amb = l + 1; // G(m, N) with N = l+1
            if m == 1 || m == l {
                Some(VmrtModel {
                    model: format!("P(T_x P^{l})"),
                    dim: l - 1,
                })
            } else {
                Some(VmrtModel {
                    model: format!("P^{} x P^{}", m - 1, n_amb - m - 1),
                    dim: n_amb - 2,
                })
            }
        }
        LieType::B if l >= 3 && v == vec![2] => Some(VmrtModel {
            model: format!("P^1 x Q^{}", 2 * l - 5),
            dim: 2 * l - 4,
        }),
        LieType::D if l >= 4 && v == vec![2] => Some(VmrtModel {
            model: format!("P^1 x Q^{}", 2 * l - 6),
            dim: 2 * l - 5,
        }),
        _ => None,
    }
}

/// All gradations with rank ≤ max_rank, in canonical order.
pub fn sweep(max_rank: usize) -> Vec<ClassificationRecord> {
    let mut out = Vec::new();
    for t in [LieType::A, LieType::B, LieType::C, LieType::D] {
        for l in min_rank(t)..=max_rank {
            if l < min_rank(t) {
                continue;
            }
            for d in all_marked_sets(l) {
                out.push(classify(t, l, &d).expect("valid sweep input"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(rank: usize, idx: &[usize]) -> MarkedSet {
        MarkedSet::new(rank, idx.iter().copied()).unwrap()
    }

    fn verdict(t: LieType, l: usize, idx: &[usize]) -> Verdict {
        classify(t, l, &ms(l, idx)).unwrap().verdict
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(verdict(LieType::A, 3, &[2]), Verdict::TypeII); // depth one
        assert_eq!(verdict(LieType::A, 4, &[1, 3]), Verdict::TypeIII);
        assert_eq!(verdict(LieType::C, 3, &[2]), Verdict::TypeI);
        assert_eq!(verdict(LieType::A, 2, &[1]), Verdict::Excluded);
        assert_eq!(verdict(LieType::C, 4, &[1]), Verdict::Excluded);
        // Contact (A_l, {α₁, α_l}) goes to III, not II.
        assert_eq!(verdict(LieType::A, 3, &[1, 3]), Verdict::TypeIII);
        // Reversal-isomorphic images classify identically.
        assert_eq!(verdict(LieType::A, 4, &[3, 4]), Verdict::TypeIII);
        assert_eq!(verdict(LieType::A, 4, &[4]), Verdict::Excluded);
        // Contact but not (A, {α₁, α_k}): type II.
        assert_eq!(verdict(LieType::B, 3, &[2]), Verdict::TypeII);
        assert_eq!(verdict(LieType::C, 2, &[2]), Verdict::TypeII); // depth one
    }

    #[test]
    fn exceptional_isomorphisms_reach_the_special_families() {
        // B₂ ≅ C₂ swaps the nodes: {α₂} is the excluded projective line
        // family, the full flag is (C₂,{α₁,α₂}) of type III.
        assert_eq!(verdict(LieType::B, 2, &[2]), Verdict::Excluded);
        assert_eq!(verdict(LieType::B, 2, &[1]), Verdict::TypeII);
        assert_eq!(verdict(LieType::B, 2, &[1, 2]), Verdict::TypeIII);
        // D₃ ≅ A₃ with the center nodes matched: {α₂} ↦ (A₃,{α₁}).
        assert_eq!(verdict(LieType::D, 3, &[2]), Verdict::Excluded);
        assert_eq!(verdict(LieType::D, 3, &[3]), Verdict::Excluded);
        assert_eq!(verdict(LieType::D, 3, &[1]), Verdict::TypeII);
        assert_eq!(verdict(LieType::D, 3, &[1, 2]), Verdict::TypeIII);
        assert_eq!(verdict(LieType::D, 3, &[2, 3]), Verdict::TypeIII);
        assert_eq!(verdict(LieType::D, 3, &[1, 2, 3]), Verdict::TypeI);
    }

    #[test]
    fn classification_invariant_under_diagram_automorphism() {
        for t in [LieType::A, LieType::B, LieType::C, LieType::D] {
            for l in min_rank(t)..=5 {
                for d in all_marked_sets(l) {
                    let r1 = classify(t, l, &d).unwrap();
                    let canon = diagram_automorphism_orbit(t, l, &d);
                    let r2 = classify(t, l, &canon).unwrap();
                    assert_eq!(r1.verdict, r2.verdict);
                    assert_eq!(r1.depth, r2.depth);
                    assert_eq!(r1.dims, r2.dims);
                    assert_eq!(r1.contact, r2.contact);
                }
            }
        }
    }

    #[test]
    fn contact_flags() {
        assert!(classify(LieType::A, 3, &ms(3, &[1, 3])).unwrap().contact);
        assert!(classify(LieType::C, 2, &ms(2, &[1])).unwrap().contact);
        assert!(classify(LieType::B, 4, &ms(4, &[2])).unwrap().contact);
        assert!(!classify(LieType::C, 3, &ms(3, &[2])).unwrap().contact);
    }

    #[test]
    fn exceptional_aut_examples() {
        assert_eq!(
            exceptional_aut(LieType::C, 2, &ms(2, &[1])),
            Some(AutTarget {
                lie_type: LieType::A,
                rank: 3,
                delta1: vec![1]
            })
        );
        assert_eq!(
            exceptional_aut(LieType::B, 3, &ms(3, &[3])),
            Some(AutTarget {
                lie_type: LieType::D,
                rank: 4,
                delta1: vec![4]
            })
        );
        assert_eq!(exceptional_aut(LieType::A, 3, &ms(3, &[2])), None);
        assert_eq!(exceptional_aut(LieType::B, 2, &ms(2, &[2])), None);
        let table = exceptional_aut_table(6);
        assert!(table.iter().any(|r| r.source.contains("G2") && !r.computed));
    }

    #[test]
    fn vmrt_examples() {
        // (A,3,{α₂}): Segre P¹×P¹ in P(g₋₁) = P³
        let r = classify(LieType::A, 3, &ms(3, &[2])).unwrap();
        let v = r.vmrt.unwrap();
        assert_eq!(v.model, "P^1 x P^1");
        assert_eq!(v.dim, 2);
        assert_eq!(r.dims[&-1], 4);

        let v = vmrt_model(LieType::A, 4, &ms(4, &[1])).unwrap();
        assert_eq!(v.model, "P(T_x P^4)");
        assert_eq!(v.dim, 3);

        let r = classify(LieType::B, 3, &ms(3, &[2])).unwrap();
        let v = r.vmrt.unwrap();
        assert_eq!(v.model, "P^1 x Q^1");
        assert_eq!(v.dim, 2);
        assert_eq!(r.dims[&-1], 6);

        assert_eq!(vmrt_model(LieType::B, 2, &ms(2, &[2])), None);
        assert_eq!(vmrt_model(LieType::D, 4, &ms(4, &[2])).unwrap().dim, 3);
        assert_eq!(vmrt_model(LieType::C, 3, &ms(3, &[1])), None);
    }

    #[test]
    fn sweep_covers_expected_counts() {
        let records = sweep(2);
        // A1, A2, B2, C2: 1 + 3 + 3 + 3
        assert_eq!(records.len(), 10);
        assert!(records
            .iter()
            .any(|r| r.lie_type == LieType::A && r.rank == 2 && r.verdict == Verdict::Excluded));
        let c2a1 = records
            .iter()
            .find(|r| r.lie_type == LieType::C && r.rank == 2 && r.delta1 == vec![1])
            .unwrap();
        assert_eq!(c2a1.verdict, Verdict::Excluded);
        assert_eq!(
            c2a1.exceptional_aut,
            Some(AutTarget {
                lie_type: LieType::A,
                rank: 3,
                delta1: vec![1]
            })
        );
    }
}

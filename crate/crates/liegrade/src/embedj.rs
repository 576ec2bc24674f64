//! The two explicit embeddings behind the exceptional automorphism-group
//! cases: J: so(2l+1) ↪ so(2l+2) by duplicating the center column and row,
//! and the inclusion sp(2l) ⊆ sl(2l).
//!
//! The duplicated column/row carries weights (½, 1) and (1, ½): the
//! equal-weight duplication lands in so(2l+2) but fails
//! `J([X,Y]) = [J(X),J(Y)]` (the center contributions double), and the split
//! weights are the unique rational scaling compatible with the
//! anti-transpose constraint that restores the homomorphism. Concretely,
//! J(X) is conjugate to the stabilizer of the anisotropic vector
//! e_{l+1} − e_{l+2} acting on its orthogonal complement.
//!
//! For the nilradical comparison: J preserves the (B_l,{α₁})/(D_{l+1},{α₁})
//! degrees, so J(p) = p̃ ∩ J(g) holds on the nose, and likewise
//! J(n) = ñ ∩ J(g). The inclusion J(n) ⊆ ñ is strict: dim n = 2l−1 while
//! dim ñ = 2l (the image of the short-root line spans one line inside the
//! two-dimensional λ̃₁ ∓ λ̃_{l+1} pair).

use crate::exactlin::{qfrac, qi, QMatrix, Subspace, Q};
use crate::grading::{basis_degrees, grade, GradedLieAlgebra};
use crate::liealg::{bracket, realize, MatrixLieAlgebra};
use crate::rootsys::{LieType, MarkedSet};
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum EmbedJError {
    RankTooSmall(usize),
    /// J(X) fell outside the target algebra (construction bug).
    NotInTarget,
    /// `J([X,Y]) != [J(X), J(Y)]` on some basis pair (construction bug).
    Homomorphism,
}

impl fmt::Display for EmbedJError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedJError::RankTooSmall(l) => write!(f, "need l ≥ 2, got {l}"),
            EmbedJError::NotInTarget => write!(f, "image escaped the target algebra"),
            EmbedJError::Homomorphism => write!(f, "embedding is not a homomorphism"),
        }
    }
}

impl std::error::Error for EmbedJError {}

/// Verification results for one embedding.
#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub homomorphism: bool,
    pub injective: bool,
    /// J(p) = p̃ ∩ J(g) as canonical subspaces.
    pub parabolic_compat: bool,
    /// J(n) ⊆ ñ and J(n) = ñ ∩ J(g). Literal equality J(n) = ñ is
    /// dimensionally impossible for the so-embedding; the true dims are
    /// reported alongside.
    pub nilradical_match: bool,
    pub dim_j_n: usize,
    pub dim_n_tilde: usize,
    /// For the sp-embedding: the first-column projection m → m̃ is a
    /// linear isomorphism. Unused (true) for the so-embedding.
    pub m_projection_bijective: bool,
}

impl EmbeddingReport {
    pub fn all_checks(&self) -> bool {
        self.homomorphism
            && self.injective
            && self.parabolic_compat
            && self.nilradical_match
            && self.m_projection_bijective
    }
}

/// The weighted center duplication so(2l+1) → gl(2l+2).
pub fn so_duplicate(l: usize, x: &QMatrix) -> QMatrix {
    let n = 2 * l + 1;
    assert_eq!(x.rows(), n);
    let center = l; // 0-based
    let tpos = |u: usize| if u < center { u } else { u + 1 };
    let mut out = QMatrix::zero(n + 1, n + 1);
    let half = qfrac(1, 2);
    for r in 0..n {
        for c in 0..n {
            let v = x.at(r, c);
            if v.is_zero() {
                continue;
            }
            match (r == center, c == center) {
                (false, false) => {
                    let cur = out.at(tpos(r), tpos(c)) + v;
                    out.set(tpos(r), tpos(c), cur);
                }
                (false, true) => {
                    // center column → columns l (×½) and l+1 (×1)
                    let cur = out.at(tpos(r), l) + v * &half;
                    out.set(tpos(r), l, cur);
                    let cur = out.at(tpos(r), l + 1) + v;
                    out.set(tpos(r), l + 1, cur);
                }
                (true, false) => {
                    // center row → rows l (×1) and l+1 (×½)
                    let cur = out.at(l, tpos(c)) + v;
                    out.set(l, tpos(c), cur);
                    let cur = out.at(l + 1, tpos(c)) + v * &half;
                    out.set(l + 1, tpos(c), cur);
                }
                (true, true) => unreachable!("so(2l+1) has no center-center entry"),
            }
        }
    }
    out
}

/// Coordinates of a family of images in the target algebra, as a subspace.
fn span_in_target(target: &MatrixLieAlgebra, mats: &[QMatrix]) -> Result<Subspace, EmbedJError> {
    let mut rows = Vec::with_capacity(mats.len());
    for m in mats {
        let coords = target
            .coordinates(m)
            .map_err(|_| EmbedJError::NotInTarget)?;
        rows.push(coords);
    }
    Ok(Subspace::new(target.dim(), rows))
}

/// Coordinate subspace of the target spanned by basis indices with a
/// degree predicate.
fn graded_subspace(g: &GradedLieAlgebra, pred: impl Fn(i64) -> bool) -> Subspace {
    let dim = g.dim();
    let rows: Vec<Vec<Q>> = (0..dim)
        .filter(|&i| pred(g.degrees[i]))
        .map(|i| {
            let mut v = vec![Q::zero(); dim];
            v[i] = qi(1);
            v
        })
        .collect();
    Subspace::new(dim, rows)
}

/// J: so(2l+1) ↪ so(2l+2), verified against the gradations (B_l,{α₁}) on
/// the source and (D_{l+1},{α₁}) on the target.
pub fn embed_so(l: usize) -> Result<EmbeddingReport, EmbedJError> {
    if l < 2 {
        return Err(EmbedJError::RankTooSmall(l));
    }
    let source = Arc::new(realize(LieType::B, l).expect("valid rank"));
    let target = Arc::new(realize(LieType::D, l + 1).expect("valid rank"));
    let images: Vec<QMatrix> = source
        .basis
        .iter()
        .map(|b| so_duplicate(l, &b.matrix))
        .collect();

    // Linearity anchors and injectivity.
    assert!(so_duplicate(l, &QMatrix::zero(2 * l + 1, 2 * l + 1)).is_zero());
    let jg = span_in_target(&target, &images)?;
    let injective = jg.dim() == source.dim();

    // Homomorphism on all basis pairs.
    let mut homomorphism = true;
    'pairs: for i in 0..source.dim() {
        for j in (i + 1)..source.dim() {
            let lhs = so_duplicate(
                l,
                &bracket(&source.basis[i].matrix, &source.basis[j].matrix),
            );
            let rhs = bracket(&images[i], &images[j]);
            if lhs != rhs {
                homomorphism = false;
                break 'pairs;
            }
        }
    }

    // Gradations.
    let gs = grade(source.clone(), MarkedSet::new(l, [1]).unwrap()).expect("valid gradation");
    let gt = grade(target.clone(), MarkedSet::new(l + 1, [1]).unwrap()).expect("valid gradation");
    let j_of = |indices: &[usize]| -> Result<Subspace, EmbedJError> {
        let mats: Vec<QMatrix> = indices.iter().map(|&i| images[i].clone()).collect();
        span_in_target(&target, &mats)
    };
    let jp = j_of(&gs.p_indices())?;
    let jn = j_of(&gs.n_indices())?;
    let p_tilde = graded_subspace(&gt, |d| d >= 0);
    let n_tilde = graded_subspace(&gt, |d| d > 0);
    let parabolic_compat = jp == p_tilde.intersect(&jg);
    let nilradical_match = jn.is_subspace_of(&n_tilde) && jn == n_tilde.intersect(&jg);

    Ok(EmbeddingReport {
        source_dim: source.dim(),
        target_dim: target.dim(),
        homomorphism,
        injective,
        parabolic_compat,
        nilradical_match,
        dim_j_n: jn.dim(),
        dim_n_tilde: n_tilde.dim(),
        m_projection_bijective: true,
    })
}

/// The inclusion sp(2l) ⊆ sl(2l), verified against (C_l,{α₁}) on the
/// source and (A_{2l−1},{α₁}) on the target, with the first-column
/// projection m → m̃.
pub fn embed_sp(l: usize) -> Result<EmbeddingReport, EmbedJError> {
    if l < 2 {
        return Err(EmbedJError::RankTooSmall(l));
    }
    let source = Arc::new(realize(LieType::C, l).expect("valid rank"));
    let target = Arc::new(realize(LieType::A, 2 * l - 1).expect("valid rank"));
    let images: Vec<QMatrix> = source.basis.iter().map(|b| b.matrix.clone()).collect();
    let jg = span_in_target(&target, &images)?;
    let injective = jg.dim() == source.dim();

    // The inclusion is literally the identity on matrices, so the
    // homomorphism check is the statement that brackets agree; verify on
    // basis pairs anyway.
    let mut homomorphism = true;
    'pairs: for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            let lhs = bracket(&source.basis[i].matrix, &source.basis[j].matrix);
            let rhs = bracket(&images[i], &images[j]);
            if lhs != rhs {
                homomorphism = false;
                break 'pairs;
            }
        }
    }

    let gs = grade(source.clone(), MarkedSet::new(l, [1]).unwrap()).expect("valid gradation");
    let gt =
        grade(target.clone(), MarkedSet::new(2 * l - 1, [1]).unwrap()).expect("valid gradation");
    let jp = {
        let mats: Vec<QMatrix> = gs.p_indices().iter().map(|&i| images[i].clone()).collect();
        span_in_target(&target, &mats)?
    };
    let p_tilde = graded_subspace(&gt, |d| d >= 0);
    // Containment J(p) ⊆ p̃ plus the intersection equality.
    let parabolic_compat = jp.is_subspace_of(&p_tilde) && jp == p_tilde.intersect(&jg);

    // m → m̃: restriction to the first-column block. The m̃ of
    // (A_{2l−1},{α₁}) is the first column below the diagonal; extract those
    // entries from each m-basis element of sp(2l).
    let m_src = gs.m_indices();
    let n = 2 * l;
    let mut proj = QMatrix::zero(m_src.len(), n - 1);
    for (r, &bi) in m_src.iter().enumerate() {
        let mat = &source.basis[bi].matrix;
        for row in 1..n {
            proj.set(r, row - 1, mat.at(row, 0).clone());
        }
    }
    let m_dim_equal = m_src.len() == gt.m_indices().len();
    let m_projection_bijective = m_dim_equal && crate::exactlin::rref(&proj).rank == m_src.len();

    Ok(EmbeddingReport {
        source_dim: source.dim(),
        target_dim: target.dim(),
        homomorphism,
        injective,
        parabolic_compat,
        nilradical_match: true,
        dim_j_n: gs.n_indices().len(),
        dim_n_tilde: gt.n_indices().len(),
        m_projection_bijective,
    })
}

/// Degrees of one sp-basis element under the two gradations: the source
/// degree wrt (C_l,{α₁}) and the target degree(s) wrt (A_{2l−1},{α₁}).
/// Illustrates that J does not preserve the gradation.
pub fn sp_degree_pair(l: usize, lambda: &[i64]) -> (i64, i64) {
    let source = realize(LieType::C, l).expect("valid rank");
    let target = realize(LieType::A, 2 * l - 1).expect("valid rank");
    let x = crate::liealg::root_vector(LieType::C, l, lambda);
    let d1 = MarkedSet::new(l, [1]).unwrap();
    let d2 = MarkedSet::new(2 * l - 1, [1]).unwrap();
    let src_deg = {
        let pos = source
            .root_system
            .find_by_lambda(lambda)
            .map(|i| (i, false))
            .or_else(|| {
                let neg: Vec<i64> = lambda.iter().map(|v| -v).collect();
                source.root_system.find_by_lambda(&neg).map(|i| (i, true))
            })
            .expect("a root of sp(2l)");
        let d = crate::rootsys::degree_of_root(&source.root_system.positive_roots[pos.0], &d1);
        if pos.1 {
            -d
        } else {
            d
        }
    };
    // The image decomposes into target root vectors; all nonzero entries of
    // a single sp root vector share their sl-degree only when the vector
    // stays homogeneous; report the degree of the support entries' maximum.
    let degrees = basis_degrees(&target, &d2);
    let coords = target.coordinates(&x).expect("sp inside sl");
    let tgt_deg = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| degrees[i])
        .max()
        .expect("nonzero image");
    (src_deg, tgt_deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_so_l2_l3() {
        let r = embed_so(2).unwrap();
        assert_eq!((r.source_dim, r.target_dim), (10, 15));
        assert!(r.all_checks(), "{r:?}");
        let r = embed_so(3).unwrap();
        assert_eq!((r.source_dim, r.target_dim), (21, 28));
        assert!(r.all_checks(), "{r:?}");
        // dim n = 2l−1 on the source; dim ñ = 2l on the target: the literal
        // equality J(n) = ñ cannot hold, the trace is the corrected check.
        assert_eq!(r.dim_j_n, 5);
        assert_eq!(r.dim_n_tilde, 6);
    }

    #[test]
    fn embed_so_rejects_rank_1() {
        assert!(matches!(embed_so(1), Err(EmbedJError::RankTooSmall(1))));
    }

    #[test]
    fn equal_weight_duplication_is_not_a_homomorphism() {
        // The displayed equal-weight duplication fails the bracket identity;
        // this is why the ½ weights exist.
        let l = 2;
        let n = 2 * l + 1;
        let dup = |x: &QMatrix| -> QMatrix {
            let tpos = |u: usize| if u < l { u } else { u + 1 };
            let mut out = QMatrix::zero(n + 1, n + 1);
            for r in 0..n {
                for c in 0..n {
                    let v = x.at(r, c);
                    if v.is_zero() {
                        continue;
                    }
                    match (r == l, c == l) {
                        (false, false) => out.set(tpos(r), tpos(c), v.clone()),
                        (false, true) => {
                            out.set(tpos(r), l, v.clone());
                            out.set(tpos(r), l + 1, v.clone());
                        }
                        (true, false) => {
                            out.set(l, tpos(c), v.clone());
                            out.set(l + 1, tpos(c), v.clone());
                        }
                        (true, true) => unreachable!(),
                    }
                }
            }
            out
        };
        let source = realize(LieType::B, l).unwrap();
        let mut violated = false;
        for i in 0..source.dim() {
            for j in (i + 1)..source.dim() {
                let x = &source.basis[i].matrix;
                let y = &source.basis[j].matrix;
                if dup(&bracket(x, y)) != bracket(&dup(x), &dup(y)) {
                    violated = true;
                }
            }
        }
        assert!(violated);
    }

    #[test]
    fn embed_sp_l2_l3() {
        let r = embed_sp(2).unwrap();
        assert!(r.all_checks(), "{r:?}");
        assert_eq!((r.dim_j_n, r.dim_n_tilde), (3, 3));
        let r = embed_sp(3).unwrap();
        assert!(r.all_checks(), "{r:?}");
        // dim m = 2l−1 = dim m̃ on both sides.
        assert_eq!((r.dim_j_n, r.dim_n_tilde), (5, 5));
    }

    #[test]
    fn sp_corner_degree_drops() {
        // The long-root corner vector has sp-degree 2 but sl-degree 1.
        for l in [2usize, 3] {
            let mut lambda = vec![0i64; l];
            lambda[0] = 2;
            assert_eq!(sp_degree_pair(l, &lambda), (2, 1));
        }
    }
}

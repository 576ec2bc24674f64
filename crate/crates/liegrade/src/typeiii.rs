//! The type-III decomposition g₋₁ = g₋₁⁽¹⁾ ⊕ g₋₁⁽²⁾, the algebra g₀′ of
//! degree-0 derivations preserving it, and the explicit equation-counting
//! derivation of dim g₀′ for the contact family (A_l, {α₁, α_l}).
//!
//! Root membership follows the explicit lists: for (A_l,{α₁,α_k}) the first
//! part collects the root spaces of λ_i − λ_j with k+1 ≤ i ≤ l+1 and
//! 2 ≤ j ≤ k, the second those of λ_i − λ₁ with 2 ≤ i ≤ k; for
//! (C_l,{α₁,α_l}) the first part is −λ_i − λ_j over 2 ≤ i ≤ j ≤ l and the
//! second λ_i − λ₁ over 2 ≤ i ≤ l. Every listed root is checked to have
//! degree −1, and a degree −1 root landing in neither list is an error
//! rather than a guess.

use crate::classify::{classify, Verdict};
use crate::exactlin::{kernel_basis, qi, rref, QMatrix, Subspace, Q};
use crate::grading::{GradedLieAlgebra, SymbolAlgebra};
use crate::liealg::BasisTag;
use crate::prolong::{iota_g0, level0_coords_of_endo, ProlongationLevel, ProlongationTower};
use crate::rootsys::LieType;
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Debug)]
pub enum TypeIIIError {
    NotTypeIII,
    /// Decompose currently requires the literal marking {α₁, α_k}; apply
    /// the diagram automorphism first.
    NotLiteralForm,
    /// A degree −1 root fell in neither part.
    UnassignedRoot(Vec<i64>),
    RankTooSmall(usize),
}

impl fmt::Display for TypeIIIError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeIIIError::NotTypeIII => write!(f, "gradation is not of type III"),
            TypeIIIError::NotLiteralForm => {
                write!(f, "decomposition needs the literal marking {{α1, αk}}")
            }
            TypeIIIError::UnassignedRoot(v) => {
                write!(f, "degree −1 root {v:?} belongs to neither part")
            }
            TypeIIIError::RankTooSmall(l) => {
                write!(f, "no equations exist at rank {l}; need l ≥ 3")
            }
        }
    }
}

impl std::error::Error for TypeIIIError {}

/// The two summands of g₋₁, as positions in the symbol-algebra basis.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// m-basis positions of g₋₁⁽¹⁾.
    pub part1: Vec<usize>,
    /// m-basis positions of g₋₁⁽²⁾.
    pub part2: Vec<usize>,
}

impl Decomposition {
    pub fn dims(&self) -> (usize, usize) {
        (self.part1.len(), self.part2.len())
    }
}

/// Split g₋₁ by the explicit root lists. Requires a literal type-III
/// marking ({1, k} for A, {1, l} for C).
pub fn decompose(g: &GradedLieAlgebra) -> Result<Decomposition, TypeIIIError> {
    let l = g.alg.rank;
    let record = classify(g.alg.lie_type, l, &g.delta1).expect("classifiable input");
    if record.verdict != Verdict::TypeIII {
        return Err(TypeIIIError::NotTypeIII);
    }
    let marks = g.delta1.to_vec();
    if marks.len() != 2 || marks[0] != 1 {
        return Err(TypeIIIError::NotLiteralForm);
    }
    let k = marks[1];
    // λ-coordinate vectors of the two root lists (as signed roots in g₋₁).
    let lam_dim = g.alg.root_system.lambda_dim();
    let mk = |entries: &[(usize, i64)]| -> Vec<i64> {
        let mut v = vec![0i64; lam_dim];
        for &(i, c) in entries {
            v[i - 1] += c; // 1-based λ indices
        }
        v
    };
    let (list1, list2): (Vec<Vec<i64>>, Vec<Vec<i64>>) = match g.alg.lie_type {
        LieType::A => {
            let mut a = Vec::new();
            for i in (k + 1)..=(l + 1) {
                for j in 2..=k {
                    a.push(mk(&[(i, 1), (j, -1)]));
                }
            }
            let mut b = Vec::new();
            for i in 2..=k {
                b.push(mk(&[(i, 1), (1, -1)]));
            }
            (a, b)
        }
        LieType::C => {
            let mut a = Vec::new();
            for i in 2..=l {
                for j in i..=l {
                    a.push(mk(&[(i, -1), (j, -1)]));
                }
            }
            let mut b = Vec::new();
            for i in 2..=l {
                b.push(mk(&[(i, 1), (1, -1)]));
            }
            (a, b)
        }
        _ => return Err(TypeIIIError::NotTypeIII),
    };

    // Locate each signed root among the m-basis positions of degree −1.
    let m_idx = g.m_indices();
    let position_of_lambda = |lam: &[i64]| -> Option<usize> {
        for (pos, &b) in m_idx.iter().enumerate() {
            if g.degrees[b] != -1 {
                continue;
            }
            if let BasisTag::Root {
                pos_index,
                negative,
            } = g.alg.basis[b].tag
            {
                let root = &g.alg.root_system.positive_roots[pos_index];
                let signed: Vec<i64> = if negative {
                    root.lambda.iter().map(|x| -x).collect()
                } else {
                    root.lambda.clone()
                };
                if signed == lam {
                    return Some(pos);
                }
            }
        }
        None
    };
    let mut part1 = Vec::new();
    for lam in &list1 {
        match position_of_lambda(lam) {
            Some(p) => part1.push(p),
            None => return Err(TypeIIIError::UnassignedRoot(lam.clone())),
        }
    }
    let mut part2 = Vec::new();
    for lam in &list2 {
        match position_of_lambda(lam) {
            Some(p) => part2.push(p),
            None => return Err(TypeIIIError::UnassignedRoot(lam.clone())),
        }
    }
    // Exhaustiveness: every degree −1 position is claimed exactly once.
    let sym_dim_g1 = g.dim_part(-1);
    let mut seen = vec![false; sym_dim_g1];
    for &p in part1.iter().chain(&part2) {
        assert!(p < sym_dim_g1, "part position outside the g_-1 block");
        assert!(!seen[p], "root assigned to both parts");
        seen[p] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        let b = m_idx[missing];
        if let BasisTag::Root {
            pos_index,
            negative,
        } = g.alg.basis[b].tag
        {
            let root = &g.alg.root_system.positive_roots[pos_index];
            let signed: Vec<i64> = if negative {
                root.lambda.iter().map(|x| -x).collect()
            } else {
                root.lambda.clone()
            };
            return Err(TypeIIIError::UnassignedRoot(signed));
        }
    }
    // Direct-sum invariant, through the subspace machinery.
    let ambient = sym_dim_g1;
    let unit = |p: usize| {
        let mut v = vec![Q::zero(); ambient];
        v[p] = qi(1);
        v
    };
    let s1 = Subspace::new(ambient, part1.iter().map(|&p| unit(p)).collect());
    let s2 = Subspace::new(ambient, part2.iter().map(|&p| unit(p)).collect());
    assert_eq!(s1.dim() + s2.dim(), ambient, "parts do not fill g_-1");
    assert_eq!(s1.intersect(&s2).dim(), 0, "parts overlap");

    Ok(Decomposition { part1, part2 })
}

/// Degree-0 derivations preserving both parts, as a subspace in level-0
/// coordinates (directly consumable by `restricted_prolong`).
pub fn g0_preserving(
    sym: &SymbolAlgebra,
    level0: &ProlongationLevel,
    d: &Decomposition,
) -> Subspace {
    let dim0 = level0.dim();
    let in1 = |p: usize| d.part1.contains(&p);
    let in2 = |p: usize| d.part2.contains(&p);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    // For each level-0 basis derivation, its endomorphism matrix entries
    // from part i into the other part must vanish.
    let endos: Vec<QMatrix> = (0..dim0)
        .map(|i| {
            let mut coords = vec![Q::zero(); dim0];
            coords[i] = qi(1);
            crate::prolong::level0_endo(sym, level0, &coords)
        })
        .collect();
    let g1 = sym.block(-1);
    for col in g1.clone() {
        for row in g1.clone() {
            let cross = (in1(col) && in2(row)) || (in2(col) && in1(row));
            if !cross {
                continue;
            }
            let mut eq = vec![Q::zero(); dim0];
            for (i, endo) in endos.iter().enumerate() {
                eq[i] = endo.at(row, col).clone();
            }
            if eq.iter().any(|v| !v.is_zero()) {
                rows.push(eq);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(dim0);
    }
    kernel_basis(&QMatrix::from_rows(rows))
}

/// The explicit equation count for (A_l, {α₁, α_l}), l ≥ 3.
#[derive(Clone, Debug)]
pub struct EquationCountReport {
    pub rank: usize,
    /// dim End(g₋₁⁽¹⁾) ⊕ End(g₋₁⁽²⁾) = 2(l−1)².
    pub ambient_dim: usize,
    /// Number of emitted linear equations: (l−1)(l−2) + (l−2).
    pub equation_count: usize,
    /// Rank of the equation system; the count l(l−2) when independent.
    pub equation_rank: usize,
    /// dim of the equation kernel = dim g₀′.
    pub g0_prime_dim: usize,
    /// dim g₀ of the gradation, for comparison.
    pub g0_dim: usize,
    /// Equation kernel as a level-0 subspace.
    pub kernel_as_level0: Subspace,
    /// The constraint-computed g₀′ (must equal the kernel).
    pub constraint_g0_prime: Subspace,
    /// ι(g₀) (must equal both).
    pub iota_g0: Subspace,
}

impl EquationCountReport {
    pub fn all_equal(&self) -> bool {
        self.kernel_as_level0 == self.constraint_g0_prime
            && self.constraint_g0_prime == self.iota_g0
            && self.g0_prime_dim == self.g0_dim
    }
}

/// Count the equations cutting g₀′ out of End(g₋₁⁽¹⁾) ⊕ End(g₋₁⁽²⁾) for
/// the contact Heisenberg symbol of (A_l, {α₁, α_l}), on the basis
/// e_i = E_{l+1,i+1}, f_i = E_{i+1,1}, h = E_{l+1,1}: the (l−1)(l−2)
/// equations a_{i,j} + b_{j,i} = 0 and the (l−2) equations
/// a_{i,i} + b_{i,i} = a_{1,1} + b_{1,1}. Verifies the rank, the kernel
/// dimension, and agreement with both the constraint computation and
/// ι(g₀).
pub fn g0_prime_equation_count(
    g: &GradedLieAlgebra,
    tower: &ProlongationTower,
) -> Result<EquationCountReport, TypeIIIError> {
    let l = g.alg.rank;
    if l < 3 {
        return Err(TypeIIIError::RankTooSmall(l));
    }
    assert_eq!(g.alg.lie_type, LieType::A);
    assert_eq!(
        g.delta1.to_vec(),
        vec![1, l],
        "the contact type-III marking"
    );
    let sym = &tower.symbol;
    let level0 = &tower.levels[0];
    let d = decompose(g)?;
    let n1 = l - 1;

    // m-basis positions of e_i = E_{l+1,i+1} and f_i = E_{i+1,1}, i = 1..l−1,
    // and of h = E_{l+1,1}.
    let m_idx = g.m_indices();
    let find_entry = |r: usize, c: usize| -> usize {
        // 1-based matrix entry (r, c); all three families are single-entry
        // matrices with coefficient 1.
        m_idx
            .iter()
            .position(|&b| {
                let sp = &g.alg.basis[b];
                sp.matrix.at(r - 1, c - 1) == &qi(1)
                    && sp.matrix.flatten().iter().filter(|v| !v.is_zero()).count() == 1
            })
            .expect("single-entry basis matrix present")
    };
    let e_pos: Vec<usize> = (1..=n1).map(|i| find_entry(l + 1, i + 1)).collect();
    let f_pos: Vec<usize> = (1..=n1).map(|i| find_entry(i + 1, 1)).collect();
    let h_pos = find_entry(l + 1, 1);
    assert_eq!(sym.degrees[h_pos], -2);

    // The e's span part 1 and the f's part 2 under this marking.
    for p in &e_pos {
        assert!(d.part1.contains(p), "e_i not in part 1");
    }
    for p in &f_pos {
        assert!(d.part2.contains(p), "f_i not in part 2");
    }

    // Coefficient of h in [f_m, e_m]; the relations force these all equal.
    let coef_h = |p: usize, q: usize| -> Q { sym.bracket[p][q][h_pos].clone() };
    let c0 = coef_h(f_pos[0], e_pos[0]);
    assert!(!c0.is_zero());
    for i in 0..n1 {
        assert_eq!(coef_h(f_pos[i], e_pos[i]), c0, "pairing not uniform");
        for j in 0..n1 {
            if i != j {
                assert!(
                    coef_h(f_pos[i], e_pos[j]).is_zero(),
                    "cross pairing nonzero"
                );
            }
            assert!(sym.bracket[e_pos[i]][e_pos[j]].iter().all(|v| v.is_zero()));
            assert!(sym.bracket[f_pos[i]][f_pos[j]].iter().all(|v| v.is_zero()));
        }
    }

    // Unknowns: a_{k,i} (φ(e_i) = Σ_k a_{k,i} e_k) then b_{k,i}.
    let ambient = 2 * n1 * n1;
    let a_idx = |k: usize, i: usize| k * n1 + i;
    let b_idx = |k: usize, i: usize| n1 * n1 + k * n1 + i;
    let mut equations: Vec<Vec<Q>> = Vec::new();
    // Derivation condition on [f_i, e_j] = 0 (i ≠ j):
    // 0 = [φ(f_i), e_j] + [f_i, φ(e_j)] = (b_{j,i} + a_{i,j})·c₀·h
    for i in 0..n1 {
        for j in 0..n1 {
            if i == j {
                continue;
            }
            let mut eq = vec![Q::zero(); ambient];
            eq[a_idx(i, j)] = c0.clone();
            eq[b_idx(j, i)] = c0.clone();
            equations.push(eq);
        }
    }
    // Derivation condition on [f_1, e_1] = [f_i, e_i] (i ≥ 2):
    // (a_{1,1} + b_{1,1})·c₀ = (a_{i,i} + b_{i,i})·c₀
    for i in 1..n1 {
        let mut eq = vec![Q::zero(); ambient];
        eq[a_idx(0, 0)] = c0.clone();
        eq[b_idx(0, 0)] = c0.clone();
        eq[a_idx(i, i)] = -c0.clone();
        eq[b_idx(i, i)] = -c0.clone();
        equations.push(eq);
    }
    let equation_count = equations.len();
    let eq_matrix = QMatrix::from_rows(equations);
    let equation_rank = rref(&eq_matrix).rank;
    let kernel = kernel_basis(&eq_matrix);
    let g0_prime_dim = kernel.dim();

    // Map each kernel vector (a, b) to the derivation it determines:
    // φ(e_i), φ(f_i) block-diagonal, φ(h) = (a_{1,1} + b_{1,1}) h.
    let mdim = sym.dim();
    let mut level0_rows = Vec::new();
    for v in kernel.basis_rows() {
        let mut endo = QMatrix::zero(mdim, mdim);
        for i in 0..n1 {
            for k in 0..n1 {
                endo.set(e_pos[k], e_pos[i], v[a_idx(k, i)].clone());
                endo.set(f_pos[k], f_pos[i], v[b_idx(k, i)].clone());
            }
        }
        let hh = &v[a_idx(0, 0)] + &v[b_idx(0, 0)];
        endo.set(h_pos, h_pos, hh);
        let coords = level0_coords_of_endo(sym, level0, &endo)
            .expect("lemma kernel element is a derivation");
        level0_rows.push(coords);
    }
    let kernel_as_level0 = Subspace::new(level0.dim(), level0_rows);
    let constraint_g0_prime = g0_preserving(sym, level0, &d);
    let iota = iota_g0(g, tower);
    let g0_dim = g.dim_part(0);

    Ok(EquationCountReport {
        rank: l,
        ambient_dim: ambient,
        equation_count,
        equation_rank,
        g0_prime_dim,
        g0_dim,
        kernel_as_level0,
        constraint_g0_prime,
        iota_g0: iota,
    })
}

/// Adjoint-action check: `[g₀, part_i] ⊆ part_i` inside g₋₁.
pub fn g0_adjoint_preserves_parts(g: &GradedLieAlgebra, d: &Decomposition) -> bool {
    let m_idx = g.m_indices();
    let table = g.alg.structure_table();
    let part_of = |p: usize| -> u8 {
        if d.part1.contains(&p) {
            1
        } else if d.part2.contains(&p) {
            2
        } else {
            0
        }
    };
    for &a in g.part(0) {
        for (p, &b) in m_idx.iter().enumerate() {
            if g.degrees[b] != -1 {
                continue;
            }
            let side = part_of(p);
            for (k, c) in &table[a][b] {
                if c.is_zero() {
                    continue;
                }
                let kp = m_idx.iter().position(|&x| x == *k).expect("stays in g_-1");
                if part_of(kp) != side {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{grade, symbol};
    use crate::liealg::realize;
    use crate::prolong::restricted_prolong;
    use crate::rootsys::MarkedSet;
    use std::sync::Arc;

    fn graded(t: LieType, l: usize, idx: &[usize]) -> GradedLieAlgebra {
        let alg = Arc::new(realize(t, l).unwrap());
        grade(alg, MarkedSet::new(l, idx.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn decompose_dims() {
        let d = decompose(&graded(LieType::A, 3, &[1, 3])).unwrap();
        assert_eq!(d.dims(), (2, 2));
        let d = decompose(&graded(LieType::A, 4, &[1, 2])).unwrap();
        assert_eq!(d.dims(), (3, 1));
        let d = decompose(&graded(LieType::C, 2, &[1, 2])).unwrap();
        assert_eq!(d.dims(), (1, 1));
        let d = decompose(&graded(LieType::C, 3, &[1, 3])).unwrap();
        assert_eq!(d.dims(), (3, 2));
    }

    #[test]
    fn decompose_rejects_non_type_iii() {
        assert!(matches!(
            decompose(&graded(LieType::C, 3, &[2])),
            Err(TypeIIIError::NotTypeIII)
        ));
        assert!(matches!(
            decompose(&graded(LieType::A, 4, &[3, 4])),
            Err(TypeIIIError::NotLiteralForm)
        ));
    }

    #[test]
    fn g0_preserving_dims() {
        // (A,3,{α₁,α₃}): (l−1)²+1 = 5; (A,4,{α₁,α₄}): 10.
        for (l, expect) in [(3usize, 5usize), (4, 10)] {
            let g = graded(LieType::A, l, &[1, l]);
            let sym = symbol(&g);
            let tower = ProlongationTower::compute(&sym, 0);
            let d = decompose(&g).unwrap();
            let s = g0_preserving(&sym, &tower.levels[0], &d);
            assert_eq!(s.dim(), expect);
            assert_eq!(s.dim(), g.dim_part(0));
            assert!(g0_adjoint_preserves_parts(&g, &d));
        }
        // (C,2,{α₁,α₂}): equality with dim g₀ established computationally.
        let g = graded(LieType::C, 2, &[1, 2]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 0);
        let d = decompose(&g).unwrap();
        let s = g0_preserving(&sym, &tower.levels[0], &d);
        assert_eq!(s.dim(), g.dim_part(0));
        assert!(g0_adjoint_preserves_parts(&g, &d));
    }

    #[test]
    fn equation_counts_l3() {
        let g = graded(LieType::A, 3, &[1, 3]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 0);
        let rep = g0_prime_equation_count(&g, &tower).unwrap();
        assert_eq!(rep.ambient_dim, 8);
        assert_eq!(rep.equation_count, 3);
        assert_eq!(rep.equation_rank, 3);
        assert_eq!(rep.g0_prime_dim, 5);
        assert_eq!(rep.g0_dim, 5);
        assert!(rep.all_equal());
    }

    #[test]
    fn equation_counts_l4_l5() {
        for (l, ambient, eqs, kernel) in [(4usize, 18, 8, 10), (5, 32, 15, 17)] {
            let g = graded(LieType::A, l, &[1, l]);
            let sym = symbol(&g);
            let tower = ProlongationTower::compute(&sym, 0);
            let rep = g0_prime_equation_count(&g, &tower).unwrap();
            assert_eq!(rep.ambient_dim, ambient);
            assert_eq!(rep.equation_rank, eqs);
            assert_eq!(rep.equation_rank, l * (l - 2));
            assert_eq!(rep.g0_prime_dim, kernel);
            assert_eq!(rep.g0_prime_dim, (l - 1) * (l - 1) + 1);
            assert!(rep.all_equal());
        }
    }

    #[test]
    fn equation_count_rejects_small_rank() {
        let g = graded(LieType::A, 2, &[1, 2]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 0);
        assert!(matches!(
            g0_prime_equation_count(&g, &tower),
            Err(TypeIIIError::RankTooSmall(2))
        ));
    }

    #[test]
    fn restricted_with_g0_prime_reproduces_g() {
        // g(m, g₀′) = g(m, g₀) = g at the symbol level.
        for (t, l, idx) in [
            (LieType::A, 3, vec![1usize, 3]),
            (LieType::A, 3, vec![1, 2]),
            (LieType::C, 2, vec![1, 2]),
        ] {
            let g = graded(t, l, &idx);
            let sym = symbol(&g);
            let mu = g.depth;
            let tower = ProlongationTower::compute(&sym, mu + 1);
            let d = decompose(&g).unwrap();
            let g0p = g0_preserving(&sym, &tower.levels[0], &d);
            let restricted = restricted_prolong(&tower, &g0p, mu + 1).unwrap();
            let mut expect: Vec<usize> = (0..=mu).map(|k| g.dim_part(k)).collect();
            expect.push(0);
            let dims = restricted.dims();
            assert_eq!(&dims[..expect.len()], &expect[..], "{t}{l} {idx:?}");
        }
    }

    #[test]
    fn direct_sum_sweep_rank_le_6() {
        // Every literal type-III gradation at rank ≤ 6.
        for l in 2..=6usize {
            for k in 2..=l {
                let g = graded(LieType::A, l, &[1, k]);
                let d = decompose(&g).unwrap();
                let (d1, d2) = d.dims();
                assert_eq!(d1, (l + 1 - k) * (k - 1));
                assert_eq!(d2, k - 1);
                assert_eq!(d1 + d2, g.dim_part(-1));
                assert!(g0_adjoint_preserves_parts(&g, &d));
            }
            let g = graded(LieType::C, l, &[1, l]);
            let d = decompose(&g).unwrap();
            let (d1, d2) = d.dims();
            assert_eq!(d1, l * (l - 1) / 2);
            assert_eq!(d2, l - 1);
            assert_eq!(d1 + d2, g.dim_part(-1));
            assert!(g0_adjoint_preserves_parts(&g, &d));
        }
    }
}

//! Tanaka prolongation of a fundamental graded nilpotent Lie algebra m:
//! the degree-0 derivation algebra, the inductive degree-k levels, the
//! restricted prolongation with prescribed g₀, and the canonical embedding
//! of the nonnegative part of a graded algebra into the tower.
//!
//! A level-k element is stored as its value table: for every m-basis vector
//! X of degree −j, the coordinates of u(X) in the previously computed level
//! of degree k−j (coordinates inside m itself when k−j < 0). The table *is*
//! the element, which makes the faithfulness property "u(X) = 0 for all X
//! implies u = 0" hold by construction and keeps every operation a plain
//! exact-linear-algebra call.
//!
//! Constraints are generated on pairs (X, Y) with X in the degree −1 block
//! only; m is generated in degree −1, so these determine the rest. Every
//! computed level is re-checked against the full derivation identity on all
//! pairs.

use crate::exactlin::{kernel_basis, solve, QMatrix, Subspace, Q};
use crate::grading::{symbol, GradedLieAlgebra, SymbolAlgebra};
use num_traits::Zero;
use std::fmt;

/// One basis element of a prolongation level: `values[b]` holds the
/// coordinates of u(X_b) in the target space of degree `k − j_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelElement {
    pub values: Vec<Vec<Q>>,
}

/// Basis of g_k(m) for one k ≥ 0.
#[derive(Clone, Debug)]
pub struct ProlongationLevel {
    pub degree: i64,
    pub elements: Vec<LevelElement>,
}

impl ProlongationLevel {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Dimension of the space a value of degree `t` lives in: a full level for
/// t ≥ 0, a block of m for −μ ≤ t < 0, nothing below the depth.
fn target_dim(sym: &SymbolAlgebra, levels: &[ProlongationLevel], t: i64) -> usize {
    if t >= 0 {
        levels
            .get(t as usize)
            .map(|l| l.dim())
            .expect("target level not yet computed")
    } else {
        sym.dim_part(t)
    }
}

/// Expand compact block coordinates (over the degree-t block of m) to a
/// full m-coordinate vector.
fn expand_block(sym: &SymbolAlgebra, t: i64, compact: &[Q]) -> Vec<Q> {
    let mut full = vec![Q::zero(); sym.dim()];
    if sym.dim_part(t) == 0 {
        return full;
    }
    for (w, idx) in sym.block(t).enumerate() {
        full[idx] = compact[w].clone();
    }
    full
}

/// Restrict a full m-coordinate vector to the degree-t block, asserting
/// that nothing lives outside it.
fn restrict_block(sym: &SymbolAlgebra, t: i64, full: &[Q]) -> Vec<Q> {
    let mut out = Vec::new();
    if t >= -sym.mu && t < 0 {
        let block = sym.block(t);
        for (idx, v) in full.iter().enumerate() {
            if block.contains(&idx) {
                out.push(v.clone());
            } else {
                assert!(v.is_zero(), "vector escapes the degree-{t} block");
            }
        }
    } else {
        assert!(full.iter().all(|v| v.is_zero()), "vector should vanish");
    }
    out
}

/// Bracket of a degree-t value (coordinates `val`) with the m-basis vector
/// `b`: evaluation when t ≥ 0, the m-bracket when t < 0. The result lives
/// in degree t − j_b.
fn value_bracket_basis(
    sym: &SymbolAlgebra,
    levels: &[ProlongationLevel],
    t: i64,
    val: &[Q],
    b: usize,
) -> Vec<Q> {
    let s = -sym.degrees[b];
    let out_dim = if t - s >= -sym.mu {
        target_dim(sym, levels, t - s)
    } else {
        0
    };
    let mut out = vec![Q::zero(); out_dim];
    if out_dim == 0 {
        return out;
    }
    if t >= 0 {
        let level = &levels[t as usize];
        for (i, c) in val.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, v) in level.elements[i].values[b].iter().enumerate() {
                if !v.is_zero() {
                    out[r] += c * v;
                }
            }
        }
    } else {
        let full = expand_block(sym, t, val);
        let mut acc = vec![Q::zero(); sym.dim()];
        for (i, c) in full.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in sym.bracket[i][b].iter().enumerate() {
                if !v.is_zero() {
                    acc[k] += c * v;
                }
            }
        }
        out = restrict_block(sym, t - s, &acc);
    }
    out
}

/// Compute the next level g_k(m) given levels 0..k (k = `levels.len()`).
pub fn prolong_level(sym: &SymbolAlgebra, levels: &[ProlongationLevel]) -> ProlongationLevel {
    let k = levels.len() as i64;
    let m_dim = sym.dim();
    // Unknown layout: one block of target coordinates per m-basis vector.
    let mut offsets = Vec::with_capacity(m_dim);
    let mut total = 0usize;
    for b in 0..m_dim {
        let t = k + sym.degrees[b];
        offsets.push(total);
        total += if t >= -sym.mu {
            target_dim(sym, levels, t)
        } else {
            0
        };
    }

    let mut rows: Vec<Vec<Q>> = Vec::new();
    let g1 = sym.block(-1);
    for a in g1.clone() {
        for b in 0..m_dim {
            let s = -sym.degrees[b];
            if s == 1 && b <= a {
                continue; // unordered pairs within g_{−1}; (a,a) is trivial
            }
            let t = k - 1 - s;
            let eq_dim = if t >= -sym.mu {
                target_dim(sym, levels, t)
            } else {
                0
            };
            if eq_dim == 0 {
                continue;
            }
            let mut eq = vec![vec![Q::zero(); total]; eq_dim];

            // u([x_a, y_b]): unknown blocks over the bracket support.
            for (c, coeff) in sym.bracket[a][b].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                debug_assert_eq!(sym.degrees[c], -(1 + s));
                for (r, row) in eq.iter_mut().enumerate() {
                    row[offsets[c] + r] += coeff;
                }
            }

            // −[u(x_a), y_b]
            let t_a = k - 1;
            if t_a >= 0 {
                let level = &levels[t_a as usize];
                for (i, el) in level.elements.iter().enumerate() {
                    for (r, v) in el.values[b].iter().enumerate() {
                        if !v.is_zero() {
                            eq[r][offsets[a] + i] -= v;
                        }
                    }
                }
            } else {
                // k = 0: u(x_a) lies in the g_{−1} block of m.
                for (w, xw) in sym.block(-1).enumerate() {
                    let compact = restrict_block(sym, t, &sym.bracket[xw][b]);
                    for (r, v) in compact.iter().enumerate() {
                        if !v.is_zero() {
                            eq[r][offsets[a] + w] -= v;
                        }
                    }
                }
            }

            // −[x_a, u(y_b)]: +u(y_b)(x_a) when u(y_b) sits in a level,
            // otherwise the m-bracket −[x_a, u(y_b)].
            let t_b = k - s;
            if t_b >= 0 {
                let level = &levels[t_b as usize];
                for (i, el) in level.elements.iter().enumerate() {
                    for (r, v) in el.values[a].iter().enumerate() {
                        if !v.is_zero() {
                            eq[r][offsets[b] + i] += v;
                        }
                    }
                }
            } else if sym.dim_part(t_b) > 0 {
                for (w, yw) in sym.block(t_b).enumerate() {
                    let compact = restrict_block(sym, t, &sym.bracket[a][yw]);
                    for (r, v) in compact.iter().enumerate() {
                        if !v.is_zero() {
                            eq[r][offsets[b] + w] -= v;
                        }
                    }
                }
            }

            rows.extend(eq);
        }
    }

    let constraint = if rows.is_empty() {
        QMatrix::zero(0, total)
    } else {
        QMatrix::from_rows(rows)
    };
    let kernel = kernel_basis(&constraint);
    let elements: Vec<LevelElement> = kernel
        .basis_rows()
        .into_iter()
        .map(|vec| {
            let mut values = Vec::with_capacity(m_dim);
            for b in 0..m_dim {
                let t = k + sym.degrees[b];
                let d = if t >= -sym.mu {
                    target_dim(sym, levels, t)
                } else {
                    0
                };
                values.push(vec[offsets[b]..offsets[b] + d].to_vec());
            }
            LevelElement { values }
        })
        .collect();
    let level = ProlongationLevel {
        degree: k,
        elements,
    };
    verify_level(sym, levels, &level);
    level
}

/// The degree-0 level: gradation-preserving derivations of m.
pub fn prolong_level0(sym: &SymbolAlgebra) -> ProlongationLevel {
    prolong_level(sym, &[])
}

/// The next level after the ones a tower already holds.
pub fn prolong_next(tower: &ProlongationTower) -> ProlongationLevel {
    prolong_level(&tower.symbol, &tower.levels)
}

/// Full derivation-identity re-check on all pairs; also asserts that no
/// element has an all-zero value table (faithfulness).
fn verify_level(sym: &SymbolAlgebra, levels: &[ProlongationLevel], level: &ProlongationLevel) {
    let k = level.degree;
    let m_dim = sym.dim();
    for el in &level.elements {
        assert!(
            el.values.iter().any(|v| v.iter().any(|c| !c.is_zero())),
            "level element with zero value table"
        );
        for p in 0..m_dim {
            for q in (p + 1)..m_dim {
                let r = -sym.degrees[p];
                let s = -sym.degrees[q];
                let t = k - r - s;
                let dim_t = if t >= -sym.mu {
                    target_dim(sym, levels, t)
                } else {
                    0
                };
                if dim_t == 0 {
                    continue;
                }
                // u([x_p, x_q])
                let mut lhs = vec![Q::zero(); dim_t];
                for (c, coeff) in sym.bracket[p][q].iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (i, v) in el.values[c].iter().enumerate() {
                        if !v.is_zero() {
                            lhs[i] += coeff * v;
                        }
                    }
                }
                // [u(x_p), x_q] + [x_p, u(x_q)] = (value bracket) − (swap)
                let a = value_bracket_basis(sym, levels, k - r, &el.values[p], q);
                let b = value_bracket_basis(sym, levels, k - s, &el.values[q], p);
                let rhs: Vec<Q> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                assert_eq!(lhs, rhs, "derivation identity failed on pair ({p},{q})");
            }
        }
    }
}

/// The prolongation tower g(m) computed degree by degree up to `cap`,
/// stopping one level after the first zero (monotone vanishing is verified
/// by computing that extra level).
pub struct ProlongationTower {
    pub symbol: SymbolAlgebra,
    pub levels: Vec<ProlongationLevel>,
    pub stabilized: bool,
}

impl ProlongationTower {
    pub fn compute(sym: &SymbolAlgebra, cap: i64) -> Self {
        let mut levels: Vec<ProlongationLevel> = Vec::new();
        let mut stabilized = false;
        while (levels.len() as i64) <= cap {
            let level = prolong_level(sym, &levels);
            let dim = level.dim();
            levels.push(level);
            if dim == 0 {
                let next = prolong_level(sym, &levels);
                assert_eq!(next.dim(), 0, "zero level followed by a nonzero one");
                levels.push(next);
                stabilized = true;
                break;
            }
        }
        ProlongationTower {
            symbol: sym.clone(),
            levels,
            stabilized,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim()).collect()
    }

    pub fn level(&self, k: i64) -> Option<&ProlongationLevel> {
        if k < 0 {
            None
        } else {
            self.levels.get(k as usize)
        }
    }

    /// Dimension of g_k(m); levels beyond a stabilized tower are 0.
    pub fn dim_at(&self, k: i64) -> Option<usize> {
        match self.level(k) {
            Some(l) => Some(l.dim()),
            None if self.stabilized => Some(0),
            None => None,
        }
    }

    /// Level-0 element (by coordinates) as an endomorphism matrix of m.
    pub fn level0_endo(&self, coords: &[Q]) -> QMatrix {
        level0_endo(&self.symbol, &self.levels[0], coords)
    }

    /// Bracket of two level-0 elements, in level-0 coordinates.
    pub fn level0_bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let ex = self.level0_endo(x);
        let ey = self.level0_endo(y);
        let comm = ex.mul(&ey).sub(&ey.mul(&ex));
        level0_coords_of_endo(&self.symbol, &self.levels[0], &comm)
            .expect("Der_0 is closed under commutators")
    }
}

/// Assemble the m-endomorphism matrix of a level-0 element.
pub fn level0_endo(sym: &SymbolAlgebra, level0: &ProlongationLevel, coords: &[Q]) -> QMatrix {
    let n = sym.dim();
    let mut endo = QMatrix::zero(n, n);
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for b in 0..n {
            let full = expand_block(sym, sym.degrees[b], &level0.elements[i].values[b]);
            for (r, v) in full.iter().enumerate() {
                if !v.is_zero() {
                    let cur = endo.at(r, b) + c * v;
                    endo.set(r, b, cur);
                }
            }
        }
    }
    endo
}

/// Coordinates of a degree-0 endomorphism of m over the level-0 basis;
/// `None` when it is not in the span.
pub fn level0_coords_of_endo(
    sym: &SymbolAlgebra,
    level0: &ProlongationLevel,
    endo: &QMatrix,
) -> Option<Vec<Q>> {
    let n = sym.dim();
    let dim0 = level0.dim();
    let mut mat = QMatrix::zero(n * n, dim0);
    for (i, el) in level0.elements.iter().enumerate() {
        for b in 0..n {
            let full = expand_block(sym, sym.degrees[b], &el.values[b]);
            for (r, v) in full.iter().enumerate() {
                mat.set(r * n + b, i, v.clone());
            }
        }
    }
    solve(&mat, &endo.flatten())
}

#[derive(Clone, Debug)]
pub enum RestrictedError {
    AmbientMismatch,
    NotSubalgebra,
}

impl fmt::Display for RestrictedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictedError::AmbientMismatch => write!(f, "g0 not in level-0 coordinates"),
            RestrictedError::NotSubalgebra => write!(f, "g0 is not a subalgebra of Der_0(m)"),
        }
    }
}

impl std::error::Error for RestrictedError {}

/// The restricted prolongation g(m, g₀): level k is the subspace of the
/// full level with u(g_{−1}) inside level k−1 of the restricted tower.
pub struct RestrictedTower {
    /// `levels[k]` in full-level-k coordinates; index 0 is g₀ itself.
    pub levels: Vec<Subspace>,
    pub stabilized: bool,
}

impl RestrictedTower {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|s| s.dim()).collect()
    }

    pub fn dim_at(&self, k: i64) -> Option<usize> {
        if k < 0 {
            return None;
        }
        match self.levels.get(k as usize) {
            Some(s) => Some(s.dim()),
            None if self.stabilized => Some(0),
            None => None,
        }
    }
}

/// Compute g(m, g₀) up to `cap`, filtering the full tower. Verifies that
/// g₀ is a bracket-closed subspace of Der₀(m) first.
pub fn restricted_prolong(
    tower: &ProlongationTower,
    g0: &Subspace,
    cap: i64,
) -> Result<RestrictedTower, RestrictedError> {
    let sym = &tower.symbol;
    let level0 = &tower.levels[0];
    if g0.ambient_dim() != level0.dim() {
        return Err(RestrictedError::AmbientMismatch);
    }
    let basis = g0.basis_rows();
    for x in &basis {
        for y in &basis {
            let br = tower.level0_bracket(x, y);
            if !g0.contains(&br) {
                return Err(RestrictedError::NotSubalgebra);
            }
        }
    }
    let mut levels = vec![g0.clone()];
    let mut stabilized = false;
    for k in 1..=cap {
        let full = match tower.level(k) {
            Some(l) => l,
            None => {
                stabilized = tower.stabilized;
                break;
            }
        };
        if full.dim() == 0 {
            levels.push(Subspace::zero(0));
            stabilized = true;
            break;
        }
        let prev = &levels[(k - 1) as usize];
        let ann = prev.annihilator_rows();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for a in sym.block(-1) {
            for r in 0..ann.rows() {
                let mut row = vec![Q::zero(); full.dim()];
                for (i, el) in full.elements.iter().enumerate() {
                    let mut dot = Q::zero();
                    for (c, v) in el.values[a].iter().enumerate() {
                        if !v.is_zero() {
                            dot += ann.at(r, c) * v;
                        }
                    }
                    row[i] = dot;
                }
                rows.push(row);
            }
        }
        let restricted = if rows.is_empty() {
            Subspace::full(full.dim())
        } else {
            kernel_basis(&QMatrix::from_rows(rows))
        };
        let dim = restricted.dim();
        levels.push(restricted);
        if dim == 0 {
            stabilized = true;
            break;
        }
    }
    Ok(RestrictedTower { levels, stabilized })
}

#[derive(Clone, Debug)]
pub enum EmbedError {
    /// ad(a) restricted to m is not inside the computed level.
    NotInLevel { degree: i64 },
    /// The embedding failed injectivity.
    NotInjective { degree: i64 },
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::NotInLevel { degree } => {
                write!(f, "image of g_{degree} not contained in level {degree}")
            }
            EmbedError::NotInjective { degree } => {
                write!(f, "embedding of g_{degree} is not injective")
            }
        }
    }
}

impl std::error::Error for EmbedError {}

/// The canonical maps ι: g_k → g_k(m) for 0 ≤ k ≤ kmax, defined by
/// ι(a)(X) = `[a, X]`, with values reinterpreted through lower ι's.
pub struct PositiveEmbedding {
    /// Row r of `images[k]`: level-k coordinates of ι applied to the r-th
    /// basis vector of g_k.
    pub images: Vec<QMatrix>,
}

pub fn embed_positive(
    g: &GradedLieAlgebra,
    tower: &ProlongationTower,
    kmax: i64,
) -> Result<PositiveEmbedding, EmbedError> {
    let sym = &tower.symbol;
    let m_idx = g.m_indices();
    let table = g.alg.structure_table();
    let mut images: Vec<QMatrix> = Vec::new();
    for k in 0..=kmax {
        let level = tower.level(k).expect("tower computed past kmax");
        let part = g.part(k);
        let flat_len: usize = (0..sym.dim())
            .map(|b| {
                let t = k + sym.degrees[b];
                if t >= -sym.mu {
                    target_dim(sym, &tower.levels, t)
                } else {
                    0
                }
            })
            .sum();
        let mut level_mat = QMatrix::zero(flat_len, level.dim());
        for (i, el) in level.elements.iter().enumerate() {
            let mut r = 0;
            for b in 0..sym.dim() {
                for v in &el.values[b] {
                    level_mat.set(r, i, v.clone());
                    r += 1;
                }
            }
        }
        let mut rows = Vec::with_capacity(part.len());
        for &a in part {
            let mut flat = Vec::with_capacity(flat_len);
            for (mb, &b) in m_idx.iter().enumerate() {
                let t = k + sym.degrees[mb];
                let d = if t >= -sym.mu {
                    target_dim(sym, &tower.levels, t)
                } else {
                    0
                };
                let mut bracket_g = vec![Q::zero(); g.dim()];
                for (tk, c) in &table[a][b] {
                    bracket_g[*tk] += c;
                }
                if d == 0 {
                    assert!(bracket_g.iter().all(|v| v.is_zero()));
                    continue;
                }
                let val: Vec<Q> = if t < 0 {
                    g.part(t).iter().map(|&bb| bracket_g[bb].clone()).collect()
                } else {
                    let mut acc = vec![Q::zero(); d];
                    for (pos, &bb) in g.part(t).iter().enumerate() {
                        let c = &bracket_g[bb];
                        if c.is_zero() {
                            continue;
                        }
                        for (col, dst) in acc.iter_mut().enumerate() {
                            let v = images[t as usize].at(pos, col);
                            if !v.is_zero() {
                                *dst += c * v;
                            }
                        }
                    }
                    acc
                };
                flat.extend(val);
            }
            let coords = solve(&level_mat, &flat).ok_or(EmbedError::NotInLevel { degree: k })?;
            rows.push(coords);
        }
        let img = if rows.is_empty() {
            QMatrix::zero(0, level.dim())
        } else {
            QMatrix::from_rows(rows)
        };
        if crate::exactlin::rref(&img).rank != part.len() {
            return Err(EmbedError::NotInjective { degree: k });
        }
        images.push(img);
    }
    Ok(PositiveEmbedding { images })
}

/// ι(g₀) as a subspace in level-0 coordinates.
pub fn iota_g0(g: &GradedLieAlgebra, tower: &ProlongationTower) -> Subspace {
    let emb = embed_positive(g, tower, 0).expect("g_0 embeds in Der_0(m)");
    Subspace::new(
        tower.levels[0].dim(),
        (0..emb.images[0].rows())
            .map(|r| emb.images[0].row_vec(r))
            .collect(),
    )
}

/// Outcome of comparing the full tower against the gradation it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerVsGrading {
    /// dim g_k(m) = dim g_k for 0 ≤ k ≤ μ and g_{μ+1}(m) = 0.
    Matches { dims: Vec<usize> },
    /// First disagreement: the tower strictly exceeds the gradation.
    Excess {
        degree: i64,
        tower_dim: usize,
        grading_dim: usize,
    },
}

/// Compute levels until they either reproduce the graded dimensions of g
/// through μ and vanish at μ+1, or exceed them at some degree ≤ μ+1.
/// A deficit is impossible (g embeds into g(m)) and panics.
pub fn compare_tower_with_grading(g: &GradedLieAlgebra) -> TowerVsGrading {
    let sym = symbol(g);
    let mu = g.depth;
    let mut levels: Vec<ProlongationLevel> = Vec::new();
    let mut dims = Vec::new();
    for k in 0..=(mu + 1) {
        let level = prolong_level(&sym, &levels);
        let expected = if k <= mu { g.dim_part(k) } else { 0 };
        let got = level.dim();
        levels.push(level);
        dims.push(got);
        if got != expected {
            assert!(
                got > expected,
                "tower dimension fell below the graded algebra at degree {k}"
            );
            return TowerVsGrading::Excess {
                degree: k,
                tower_dim: got,
                grading_dim: expected,
            };
        }
    }
    // Monotone vanishing: one more level past the zero.
    let next = prolong_level(&sym, &levels);
    assert_eq!(next.dim(), 0, "zero level followed by a nonzero one");
    TowerVsGrading::Matches { dims }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{grade, symbol};
    use crate::liealg::realize;
    use crate::rootsys::{LieType, MarkedSet};
    use std::sync::Arc;

    fn graded(t: LieType, l: usize, idx: &[usize]) -> GradedLieAlgebra {
        let alg = Arc::new(realize(t, l).unwrap());
        grade(alg, MarkedSet::new(l, idx.iter().copied()).unwrap()).unwrap()
    }

    /// Independent oracle: the degree-0 derivation system assembled from
    /// the definition on ALL pairs, with unknowns a full endomorphism
    /// constrained to preserve degrees. Shares nothing with
    /// `prolong_level` except the kernel routine.
    fn naive_der0_dim(sym: &SymbolAlgebra) -> usize {
        let n = sym.dim();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if sym.degrees[r] != sym.degrees[c] {
                    let mut row = vec![Q::zero(); n * n];
                    row[r * n + c] = crate::exactlin::qi(1);
                    rows.push(row);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // u[k][c] uses row-major unknown u_{k,c} = coefficient
                    // of x_k in u(x_c).
                    let mut row = vec![Q::zero(); n * n];
                    for c in 0..n {
                        let b = &sym.bracket[i][j][c];
                        if !b.is_zero() {
                            row[k * n + c] += b;
                        }
                    }
                    for w in 0..n {
                        let b1 = &sym.bracket[w][j][k];
                        if !b1.is_zero() {
                            row[w * n + i] -= b1;
                        }
                        let b2 = &sym.bracket[i][w][k];
                        if !b2.is_zero() {
                            row[w * n + j] -= b2;
                        }
                    }
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return n * n;
        }
        kernel_basis(&QMatrix::from_rows(rows)).dim()
    }

    #[test]
    fn der0_of_abelian_plane_is_gl2() {
        let sym = symbol(&graded(LieType::A, 2, &[1]));
        assert_eq!(prolong_level0(&sym).dim(), 4);
        assert_eq!(naive_der0_dim(&sym), 4);
    }

    #[test]
    fn der0_of_heisenberg3() {
        let sym = symbol(&graded(LieType::C, 2, &[1]));
        assert_eq!(prolong_level0(&sym).dim(), 4);
        assert_eq!(naive_der0_dim(&sym), 4);
    }

    #[test]
    fn der0_of_heisenberg5() {
        // Der₀ of the 5-dim Heisenberg algebra is csp(4): n(2n+1)+1 = 11
        // at n = 2, cross-checked by the all-pairs oracle.
        let sym = symbol(&graded(LieType::A, 3, &[1, 3]));
        assert_eq!(prolong_level0(&sym).dim(), 11);
        assert_eq!(naive_der0_dim(&sym), 11);
    }

    #[test]
    fn der0_of_c3_alpha2() {
        let sym = symbol(&graded(LieType::C, 3, &[2]));
        assert_eq!(prolong_level0(&sym).dim(), 7);
        assert_eq!(naive_der0_dim(&sym), 7);
    }

    #[test]
    fn full_tower_abelian_plane() {
        // m = C²: level k is S^{k+1}(m*) ⊗ m, of dimension (k+2)·2.
        let sym = symbol(&graded(LieType::A, 2, &[1]));
        let tower = ProlongationTower::compute(&sym, 2);
        assert_eq!(tower.dims(), vec![4, 6, 8]);
        assert!(!tower.stabilized);
    }

    #[test]
    fn full_tower_contact_line() {
        // m = Heisenberg: level k of the contact prolongation counts
        // monomials of weight k+2 in x₁..x_d (weight 1) and z (weight 2).
        let weight_monomials = |w: usize, d: usize| -> usize {
            let x_monomials = |deg: usize| -> usize {
                // multiset coefficient C(deg + d − 1, d − 1)
                let mut num = 1usize;
                let mut den = 1usize;
                for i in 0..(d - 1) {
                    num *= deg + 1 + i;
                    den *= i + 1;
                }
                num / den
            };
            (0..=(w / 2)).map(|zdeg| x_monomials(w - 2 * zdeg)).sum()
        };
        let sym = symbol(&graded(LieType::C, 2, &[1]));
        let tower = ProlongationTower::compute(&sym, 3);
        let dims = tower.dims();
        for (k, d) in dims.iter().enumerate() {
            assert_eq!(*d, weight_monomials(k + 2, 2), "level {k}");
        }
        // Same picture one rank up: the 5-dimensional Heisenberg symbol.
        let sym = symbol(&graded(LieType::C, 3, &[1]));
        let tower = ProlongationTower::compute(&sym, 1);
        assert_eq!(tower.dims()[0], weight_monomials(2, 4)); // csp(4) = 11
        assert_eq!(tower.dims()[1], weight_monomials(3, 4)); // 24
    }

    #[test]
    fn type_i_tower_c3_alpha2() {
        let g = graded(LieType::C, 3, &[2]);
        match compare_tower_with_grading(&g) {
            TowerVsGrading::Matches { dims } => assert_eq!(dims, vec![7, 4, 3, 0]),
            other => panic!("expected match, got {other:?}"),
        }
    }

    #[test]
    fn type_iii_tower_exceeds() {
        let g = graded(LieType::A, 3, &[1, 2]);
        match compare_tower_with_grading(&g) {
            TowerVsGrading::Excess {
                degree,
                tower_dim,
                grading_dim,
            } => {
                assert!(tower_dim > grading_dim);
                assert!(degree <= g.depth + 1);
            }
            other => panic!("expected excess, got {other:?}"),
        }
    }

    #[test]
    fn restricted_a3_alpha2_reproduces_sl4() {
        let g = graded(LieType::A, 3, &[2]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 2);
        let g0 = iota_g0(&g, &tower);
        assert_eq!(g0.dim(), 7);
        let restricted = restricted_prolong(&tower, &g0, 2).unwrap();
        assert_eq!(restricted.dims()[..3], [7, 4, 0]);
        assert!(restricted.stabilized);
    }

    #[test]
    fn restricted_a2_alpha1_does_not_stabilize() {
        // The (A_l, {α₁}) exception: g(m, ι(g₀)) keeps growing past μ+1.
        let g = graded(LieType::A, 2, &[1]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 3);
        let g0 = iota_g0(&g, &tower);
        assert_eq!(g0.dim(), 4); // all of gl(2)
        let restricted = restricted_prolong(&tower, &g0, 3).unwrap();
        assert_eq!(restricted.dims(), vec![4, 6, 8, 10]);
        assert!(!restricted.stabilized);
    }

    #[test]
    fn restricted_rejects_non_subalgebra() {
        // A line spanned by a single root-vector action plus a non-closed
        // partner must be rejected.
        let g = graded(LieType::A, 3, &[2]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 1);
        let l0dim = tower.levels[0].dim();
        // Find two coordinate derivations whose bracket escapes their span.
        'outer: for i in 0..l0dim {
            for j in (i + 1)..l0dim {
                let mut x = vec![Q::zero(); l0dim];
                x[i] = crate::exactlin::qi(1);
                let mut y = vec![Q::zero(); l0dim];
                y[j] = crate::exactlin::qi(1);
                let span = Subspace::new(l0dim, vec![x.clone(), y.clone()]);
                let br = tower.level0_bracket(&x, &y);
                if !span.contains(&br) {
                    assert!(matches!(
                        restricted_prolong(&tower, &span, 1),
                        Err(RestrictedError::NotSubalgebra)
                    ));
                    break 'outer;
                }
            }
        }
    }

    #[test]
    fn iota_bijective_for_type_i_level1() {
        let g = graded(LieType::C, 3, &[2]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 1);
        let emb = embed_positive(&g, &tower, 1).unwrap();
        assert_eq!(emb.images[1].rows(), 4);
        assert_eq!(tower.levels[1].dim(), 4);
    }

    #[test]
    fn iota_injective_not_surjective_for_a2_alpha1() {
        let g = graded(LieType::A, 2, &[1]);
        let sym = symbol(&g);
        let tower = ProlongationTower::compute(&sym, 1);
        let emb = embed_positive(&g, &tower, 1).unwrap();
        assert_eq!(emb.images[1].rows(), 2);
        assert_eq!(tower.levels[1].dim(), 6);
    }

    #[test]
    fn iota_is_a_homomorphism_on_g0() {
        for (t, l, idx) in [
            (LieType::A, 3, vec![1usize, 3]),
            (LieType::C, 2, vec![1]),
            (LieType::C, 3, vec![2]),
            (LieType::B, 3, vec![3]),
            (LieType::C, 4, vec![2]),
            (LieType::D, 4, vec![4]),
        ] {
            let g = graded(t, l, &idx);
            let sym = symbol(&g);
            let tower = ProlongationTower::compute(&sym, 0);
            let emb = embed_positive(&g, &tower, 0).unwrap();
            let part0 = g.part(0).to_vec();
            let table = g.alg.structure_table();
            let img = &emb.images[0];
            for (pa, &a) in part0.iter().enumerate() {
                for (pb, &b) in part0.iter().enumerate() {
                    let mut lhs = vec![Q::zero(); tower.levels[0].dim()];
                    for (k, c) in &table[a][b] {
                        let pk = part0.iter().position(|x| x == k).expect("g0 closed");
                        for (col, dst) in lhs.iter_mut().enumerate() {
                            *dst += c * img.at(pk, col);
                        }
                    }
                    let rhs = tower.level0_bracket(&img.row_vec(pa), &img.row_vec(pb));
                    assert_eq!(lhs, rhs, "iota not a homomorphism at ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn iota_g0_lands_in_der0_rank_le_4() {
        for t in [LieType::A, LieType::B, LieType::C, LieType::D] {
            for l in crate::rootsys::min_rank(t)..=4 {
                let alg = Arc::new(realize(t, l).unwrap());
                for d in crate::rootsys::all_marked_sets(l) {
                    let g = grade(alg.clone(), d).unwrap();
                    let sym = symbol(&g);
                    let tower = ProlongationTower::compute(&sym, 0);
                    let g0 = iota_g0(&g, &tower);
                    assert_eq!(g0.dim(), g.dim_part(0));
                }
            }
        }
    }

    #[test]
    fn prolong_next_extends_a_tower() {
        let sym = symbol(&graded(LieType::A, 2, &[1]));
        let tower = ProlongationTower::compute(&sym, 1);
        let next = prolong_next(&tower);
        assert_eq!(next.degree, 2);
        assert_eq!(next.dim(), 8);
    }
}

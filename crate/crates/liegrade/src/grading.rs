//! Gradations of a realized simple Lie algebra by a marked set Δ₁: degree
//! assignment, depth, the parabolic filtration, the negative part m with its
//! bracket table, block degree diagrams for types A and C, and the Bruhat
//! open-orbit witness m ⊕ p = g.
//!
//! `grade` validates every gradation axiom on construction and refuses to
//! return a `GradedLieAlgebra` that fails one; a failure indicates a broken
//! realization (or a deliberately mutated structure table, which the
//! verification suite exploits).

use crate::exactlin::{QMatrix, Subspace, Q};
use crate::liealg::{check_structure_table, BasisTag, MatrixLieAlgebra, StructureTable};
use crate::rootsys::{degree_of_root, LieType, MarkedSet};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum GradingError {
    /// Structure table failed antisymmetry, Jacobi, or the root-vector
    /// eigenvalue property.
    Table(String),
    /// [g_r, g_s] escaped g_{r+s}.
    NotGraded { i: usize, j: usize },
    /// dim g_k != dim g_{−k}, or a hole below the depth.
    AsymmetricDims { degree: i64 },
    /// g_k != [g_{k+1}, g_{−1}] for some k < −1.
    NotFundamental { degree: i64 },
    /// Depth from root data disagrees with the computed one.
    DepthMismatch { expected: i64, got: i64 },
    /// m ⊕ p = g failed.
    BruhatWitness,
    /// Diagram requested for a type without a block diagram.
    UnsupportedDiagram(LieType),
}

impl fmt::Display for GradingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingError::Table(s) => write!(f, "structure table invalid: {s}"),
            GradingError::NotGraded { i, j } => {
                write!(f, "bracket of basis {i},{j} escaped its graded component")
            }
            GradingError::AsymmetricDims { degree } => {
                write!(f, "dim g_{degree} != dim g_{}", -degree)
            }
            GradingError::NotFundamental { degree } => {
                write!(f, "g_{degree} != [g_{}, g_-1]", degree + 1)
            }
            GradingError::DepthMismatch { expected, got } => {
                write!(f, "depth {got} != highest-root prediction {expected}")
            }
            GradingError::BruhatWitness => write!(f, "m + p does not decompose g"),
            GradingError::UnsupportedDiagram(t) => {
                write!(f, "no block diagram for type {t}")
            }
        }
    }
}

impl std::error::Error for GradingError {}

/// A matrix-realized simple Lie algebra together with a gradation.
pub struct GradedLieAlgebra {
    pub alg: Arc<MatrixLieAlgebra>,
    pub delta1: MarkedSet,
    /// Degree of each basis element (Cartan elements have degree 0).
    pub degrees: Vec<i64>,
    /// Depth μ: g_k ≠ 0 exactly for |k| ≤ μ.
    pub depth: i64,
    /// Basis indices per degree, ascending degrees.
    parts: BTreeMap<i64, Vec<usize>>,
}

impl GradedLieAlgebra {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Basis indices of g_k.
    pub fn part(&self, k: i64) -> &[usize] {
        self.parts.get(&k).map_or(&[], |v| v.as_slice())
    }

    pub fn dim_part(&self, k: i64) -> usize {
        self.part(k).len()
    }

    /// dims keyed by degree, −μ..μ.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.parts.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    /// Basis indices of the negative part m, ascending |degree|:
    /// the g_{−1} block first, then g_{−2}, ….
    pub fn m_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for k in 1..=self.depth {
            out.extend_from_slice(self.part(-k));
        }
        out
    }

    /// Basis indices of the parabolic p = g⁰.
    pub fn p_indices(&self) -> Vec<usize> {
        self.parts
            .iter()
            .filter(|(k, _)| **k >= 0)
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }

    /// Basis indices of the nilradical n = g¹.
    pub fn n_indices(&self) -> Vec<usize> {
        self.parts
            .iter()
            .filter(|(k, _)| **k > 0)
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }

    /// The filtration piece gⁱ = ⊕_{k ≥ i} g_k as a coordinate subspace.
    pub fn filtration(&self, i: i64) -> Subspace {
        let dim = self.dim();
        let rows: Vec<Vec<Q>> = self
            .parts
            .iter()
            .filter(|(k, _)| **k >= i)
            .flat_map(|(_, v)| v.iter().map(|&b| unit_vec(dim, b)))
            .collect();
        Subspace::new(dim, rows)
    }

    /// Coordinate subspace spanned by g_k.
    pub fn part_subspace(&self, k: i64) -> Subspace {
        let dim = self.dim();
        Subspace::new(
            dim,
            self.part(k).iter().map(|&b| unit_vec(dim, b)).collect(),
        )
    }

    pub fn m_subspace(&self) -> Subspace {
        let dim = self.dim();
        Subspace::new(
            dim,
            self.m_indices().iter().map(|&b| unit_vec(dim, b)).collect(),
        )
    }
}

fn unit_vec(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = crate::exactlin::qi(1);
    v
}

/// Degree of each basis element under Δ₁.
pub fn basis_degrees(alg: &MatrixLieAlgebra, delta1: &MarkedSet) -> Vec<i64> {
    alg.basis
        .iter()
        .map(|b| match b.tag {
            BasisTag::Cartan(_) => 0,
            BasisTag::Root {
                pos_index,
                negative,
            } => {
                let d = degree_of_root(&alg.root_system.positive_roots[pos_index], delta1);
                if negative {
                    -d
                } else {
                    d
                }
            }
        })
        .collect()
}

/// Grade `alg` by Δ₁ and verify every gradation axiom. The realization-level
/// table checks (antisymmetry, Jacobi, root-vector property) run once per
/// algebra and are cached.
pub fn grade(
    alg: Arc<MatrixLieAlgebra>,
    delta1: MarkedSet,
) -> Result<GradedLieAlgebra, GradingError> {
    alg.validated_structure_table()
        .map_err(GradingError::Table)?;
    let degrees = basis_degrees(&alg, &delta1);
    let table = alg.structure_table().clone();
    grade_prechecked(alg, delta1, degrees, &table)
}

/// Grading against an explicit structure table, revalidating the table from
/// scratch. Mutation tests pass corrupted copies through here.
pub fn grade_with_table(
    alg: Arc<MatrixLieAlgebra>,
    delta1: MarkedSet,
    table: &StructureTable,
) -> Result<GradedLieAlgebra, GradingError> {
    check_structure_table(&alg, table).map_err(GradingError::Table)?;
    let degrees = basis_degrees(&alg, &delta1);
    grade_prechecked(alg, delta1, degrees, table)
}

fn grade_prechecked(
    alg: Arc<MatrixLieAlgebra>,
    delta1: MarkedSet,
    degrees: Vec<i64>,
    table: &StructureTable,
) -> Result<GradedLieAlgebra, GradingError> {
    let dim = alg.dim();
    let mut parts: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &d) in degrees.iter().enumerate() {
        parts.entry(d).or_default().push(i);
    }
    let depth = *parts.keys().max().unwrap_or(&0);

    // [g_r, g_s] ⊆ g_{r+s}: every structure constant lands in the right
    // graded component.
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in &table[i][j] {
                if !c.is_zero() && degrees[*k] != degrees[i] + degrees[j] {
                    return Err(GradingError::NotGraded { i, j });
                }
            }
        }
    }

    // dim g_k = dim g_{−k}, with no holes up to the depth.
    for k in 1..=depth {
        let pos = parts.get(&k).map_or(0, |v| v.len());
        let neg = parts.get(&-k).map_or(0, |v| v.len());
        if pos != neg {
            return Err(GradingError::AsymmetricDims { degree: k });
        }
        if pos == 0 {
            return Err(GradingError::AsymmetricDims { degree: k });
        }
    }

    // g_k = [g_{k+1}, g_{−1}] for k < −1 (fundamentality), as subspaces of
    // the graded component.
    for k in (-depth)..-1 {
        let upper = parts.get(&(k + 1)).cloned().unwrap_or_default();
        let gen = parts.get(&-1).cloned().unwrap_or_default();
        let target = parts.get(&k).cloned().unwrap_or_default();
        let col_of: BTreeMap<usize, usize> =
            target.iter().enumerate().map(|(c, &b)| (b, c)).collect();
        let mut rows = Vec::new();
        for &i in &upper {
            for &j in &gen {
                let mut row = vec![Q::zero(); target.len()];
                for (t, c) in &table[i][j] {
                    match col_of.get(t) {
                        Some(&col) => row[col] += c,
                        None => {
                            if !c.is_zero() {
                                return Err(GradingError::NotGraded { i, j });
                            }
                        }
                    }
                }
                rows.push(row);
            }
        }
        let span = Subspace::new(target.len(), rows);
        if span.dim() != target.len() {
            return Err(GradingError::NotFundamental { degree: k });
        }
    }

    // Depth equals Σ_{Δ₁} n_i(highest root).
    let highest = alg.root_system.highest_root();
    let expected_depth = degree_of_root(highest, &delta1);
    if expected_depth != depth {
        return Err(GradingError::DepthMismatch {
            expected: expected_depth,
            got: depth,
        });
    }

    let graded = GradedLieAlgebra {
        alg,
        delta1,
        degrees,
        depth,
        parts,
    };

    if !bruhat_open_orbit_witness(&graded) {
        return Err(GradingError::BruhatWitness);
    }
    Ok(graded)
}

/// Lie-algebra witness that the N⁻-orbit of the base point is open:
/// m ⊕ p = g as vector spaces (dims add up and the intersection vanishes).
pub fn bruhat_open_orbit_witness(g: &GradedLieAlgebra) -> bool {
    let m = g.m_subspace();
    let p = g.filtration(0);
    m.dim() + p.dim() == g.dim() && m.intersect(&p).dim() == 0
}

/// The symbol algebra: the negative part m with its full bracket table,
/// basis grouped by degree with the g_{−1} block first.
#[derive(Clone)]
pub struct SymbolAlgebra {
    /// Depth μ ≥ 1.
    pub mu: i64,
    /// Degree of each m-basis vector (−1, …, −μ), grouped descending.
    pub degrees: Vec<i64>,
    /// dim g_{−j} at index j−1.
    pub dims_by_depth: Vec<usize>,
    /// `bracket[i][j]` = coordinates of `[x_i, x_j]` over the m basis.
    pub bracket: Vec<Vec<Vec<Q>>>,
}

impl SymbolAlgebra {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Index range of the degree-k block (k negative).
    pub fn block(&self, k: i64) -> std::ops::Range<usize> {
        assert!(k < 0 && -k <= self.mu);
        let mut start = 0usize;
        for j in 1..(-k) {
            start += self.dims_by_depth[(j - 1) as usize];
        }
        let len = self.dims_by_depth[((-k) - 1) as usize];
        start..start + len
    }

    pub fn dim_part(&self, k: i64) -> usize {
        if k >= 0 || -k > self.mu {
            0
        } else {
            self.dims_by_depth[((-k) - 1) as usize]
        }
    }

    /// Bracket of m-coordinate vectors.
    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += xi * yj * c;
                    }
                }
            }
        }
        out
    }

    /// Nilpotency, gradedness and fundamentality (g_{−1} generates) at the
    /// symbol level. Panics on violation: symbols are built from validated
    /// gradations, so a failure is a construction bug.
    pub fn validate(&self) {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let target = self.degrees[i] + self.degrees[j];
                for (k, c) in self.bracket[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        assert!(target >= -self.mu, "nilpotency violated");
                        assert_eq!(self.degrees[k], target, "symbol table not graded");
                    }
                }
                if target < -self.mu {
                    assert!(
                        self.bracket[i][j].iter().all(|c| c.is_zero()),
                        "nilpotency violated"
                    );
                }
            }
        }
        for k in (-self.mu)..-1 {
            let gen = self.block(-1);
            let upper = self.block(k + 1);
            let target = self.block(k);
            let mut rows = Vec::new();
            for i in upper.clone() {
                for j in gen.clone() {
                    rows.push(self.bracket[i][j][target.clone()].to_vec());
                }
            }
            let span = Subspace::new(target.len(), rows);
            assert_eq!(span.dim(), target.len(), "symbol not fundamental at {k}");
        }
    }
}

/// Extract the symbol algebra m from a graded algebra.
pub fn symbol(g: &GradedLieAlgebra) -> SymbolAlgebra {
    let m_idx = g.m_indices();
    let pos_of: BTreeMap<usize, usize> = m_idx.iter().enumerate().map(|(p, &b)| (b, p)).collect();
    let n = m_idx.len();
    let table = g.alg.structure_table();
    let mut bracket = vec![vec![vec![Q::zero(); n]; n]; n];
    for (pi, &bi) in m_idx.iter().enumerate() {
        for (pj, &bj) in m_idx.iter().enumerate() {
            for (k, c) in &table[bi][bj] {
                if c.is_zero() {
                    continue;
                }
                match pos_of.get(k) {
                    Some(&pk) => bracket[pi][pj][pk] = c.clone(),
                    None => {
                        // Only brackets below the depth may leave m, and
                        // those vanish in a graded algebra.
                        unreachable!("negative bracket escaped m");
                    }
                }
            }
        }
    }
    let degrees: Vec<i64> = m_idx.iter().map(|&b| g.degrees[b]).collect();
    let dims_by_depth: Vec<usize> = (1..=g.depth).map(|k| g.dim_part(-k)).collect();
    let sym = SymbolAlgebra {
        mu: g.depth,
        degrees,
        dims_by_depth,
        bracket,
    };
    sym.validate();
    sym
}

/// Build a symbol algebra from explicit nilpotent matrices with assigned
/// degrees. Basis order is preserved within each degree block; blocks are
/// sorted by descending degree.
pub fn symbol_from_matrices(mats: Vec<(QMatrix, i64)>) -> SymbolAlgebra {
    use crate::exactlin::solve;
    assert!(!mats.is_empty());
    let mut mats = mats;
    mats.sort_by_key(|(_, d)| -d);
    let n = mats.len();
    let sz = mats[0].0.rows();
    let mu = -mats.iter().map(|(_, d)| *d).min().unwrap();
    let mut flat = QMatrix::zero(sz * sz, n);
    for (k, (m, _)) in mats.iter().enumerate() {
        for (p, v) in m.flatten().into_iter().enumerate() {
            flat.set(p, k, v);
        }
    }
    let mut bracket = vec![vec![vec![Q::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = crate::liealg::bracket(&mats[i].0, &mats[j].0);
            bracket[i][j] = solve(&flat, &br.flatten()).expect("bracket escaped the symbol span");
        }
    }
    let degrees: Vec<i64> = mats.iter().map(|(_, d)| *d).collect();
    let dims_by_depth: Vec<usize> = (1..=mu)
        .map(|k| degrees.iter().filter(|&&d| d == -k).count())
        .collect();
    let sym = SymbolAlgebra {
        mu,
        degrees,
        dims_by_depth,
        bracket,
    };
    sym.validate();
    sym
}

/// Degree grid underlying the block diagram: entry (u,v) is the degree of
/// the graded component that the matrix entry E_{u,v} belongs to.
pub fn diagram_degrees(g: &GradedLieAlgebra) -> Vec<Vec<i64>> {
    let t = g.alg.lie_type;
    let l = g.alg.rank;
    let n = g.alg.matrix_size;
    let mut grid = vec![vec![0i64; n]; n];
    for (u, row) in grid.iter_mut().enumerate() {
        for (v, cell) in row.iter_mut().enumerate() {
            let wu = crate::liealg::position_weight(t, l, u);
            let wv = crate::liealg::position_weight(t, l, v);
            let w: Vec<i64> = wu.iter().zip(&wv).map(|(a, b)| a - b).collect();
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            let (idx, sign) = match g.alg.root_system.find_by_lambda(&w) {
                Some(i) => (i, 1),
                None => {
                    let neg: Vec<i64> = w.iter().map(|x| -x).collect();
                    let i = g
                        .alg
                        .root_system
                        .find_by_lambda(&neg)
                        .expect("entry weight is a root");
                    (i, -1)
                }
            };
            let d = degree_of_root(&g.alg.root_system.positive_roots[idx], &g.delta1);
            *cell = sign * d;
        }
    }
    grid
}

/// Render the block degree diagram as a text grid, one cell per matrix
/// entry, digits with a leading '-' for negative degrees. Only types A and
/// C have block diagrams.
pub fn render_block_diagram(g: &GradedLieAlgebra) -> Result<String, GradingError> {
    match g.alg.lie_type {
        LieType::A | LieType::C => {}
        t => return Err(GradingError::UnsupportedDiagram(t)),
    }
    let grid = diagram_degrees(g);
    let width = grid
        .iter()
        .flatten()
        .map(|d| d.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in &grid {
        let cells: Vec<String> = row.iter().map(|d| format!("{d:>width$}")).collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
    Ok(out)
}

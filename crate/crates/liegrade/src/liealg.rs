//! Matrix realizations of the classical simple Lie algebras: sl(l+1),
//! sp(2l), so(2l+1) and so(2l), with a basis of Cartan elements and root
//! vectors, a bracket, and exact coordinate extraction.
//!
//! Conventions for sp and so use the anti-diagonal bilinear form, so the
//! transpose appearing in block constraints is the anti-transpose
//! `(X′)_{i,j} = X_{n+1−j,n+1−i}`. Cartan elements are the simple coroots:
//! evaluation of α_i on H_j reproduces the Cartan matrix.

use crate::exactlin::{qi, rref, QMatrix, Q};
use crate::rootsys::{build_root_system, LieType, RootError, RootSystem};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::OnceLock;

/// How a basis element sits in the root decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTag {
    /// Simple coroot H_j (0-based j).
    Cartan(usize),
    /// Root vector for ± the positive root at `pos_index`.
    Root { pos_index: usize, negative: bool },
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub matrix: QMatrix,
    pub tag: BasisTag,
    /// Flattened nonzero entries (flat position, integer value).
    sparse: Vec<(usize, i64)>,
}

/// Matrix commutator `xy − yx`.
pub fn bracket(x: &QMatrix, y: &QMatrix) -> QMatrix {
    assert_eq!(x.rows(), x.cols(), "square matrices only");
    assert_eq!(x.rows(), y.rows(), "size mismatch");
    assert_eq!(y.rows(), y.cols(), "square matrices only");
    x.mul(y).sub(&y.mul(x))
}

/// Anti-transpose: transpose with respect to the anti-diagonal line.
pub fn antitranspose(x: &QMatrix) -> QMatrix {
    let n = x.rows();
    assert_eq!(n, x.cols(), "square matrices only");
    let mut out = QMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, x.at(n - 1 - j, n - 1 - i).clone());
        }
    }
    out
}

/// λ-coordinates carried by matrix position `u` (0-based) in the realization
/// of `(lie_type, l)`: the weight of the `u`-th standard basis vector.
pub fn position_weight(lie_type: LieType, l: usize, u: usize) -> Vec<i64> {
    let m = match lie_type {
        LieType::A => l + 1,
        _ => l,
    };
    let mut w = vec![0i64; m];
    match lie_type {
        LieType::A => w[u] = 1,
        LieType::C | LieType::D => {
            if u < l {
                w[u] = 1;
            } else {
                w[2 * l - 1 - u] = -1;
            }
        }
        LieType::B => {
            if u < l {
                w[u] = 1;
            } else if u > l {
                w[2 * l - u] = -1;
            }
        }
    }
    w
}

fn sparse_from_entries(n: usize, entries: &[(usize, usize, i64)]) -> Vec<(usize, i64)> {
    let mut map: HashMap<usize, i64> = HashMap::new();
    for &(i, j, v) in entries {
        *map.entry(i * n + j).or_insert(0) += v;
    }
    let mut out: Vec<(usize, i64)> = map.into_iter().filter(|(_, v)| *v != 0).collect();
    out.sort_unstable();
    out
}

fn matrix_from_entries(n: usize, entries: &[(usize, usize, i64)]) -> QMatrix {
    let mut m = QMatrix::zero(n, n);
    for &(i, j, v) in entries {
        let cur = m.at(i, j) + qi(v);
        m.set(i, j, cur);
    }
    m
}

/// Entries (1-based positions converted by caller) of the root vector for a
/// signed root given in λ-coordinates. Panics when the λ-vector is not a
/// root shape of the type.
fn root_vector_entries(lie_type: LieType, l: usize, lambda: &[i64]) -> Vec<(usize, usize, i64)> {
    let nz: Vec<(usize, i64)> = lambda
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (i, v))
        .collect();
    // 1-based λ indices below mirror the block formulas.
    match lie_type {
        LieType::A => {
            assert_eq!(nz.len(), 2, "A root shape");
            let (i, vi) = nz[0];
            let (j, vj) = nz[1];
            assert!(vi + vj == 0 && vi.abs() == 1, "A root shape");
            if vi == 1 {
                vec![(i, j, 1)]
            } else {
                vec![(j, i, 1)]
            }
        }
        LieType::C => {
            let n1 = 2 * l + 1; // matrix size + 1, for mirror indices
            match nz.as_slice() {
                // λ_i − λ_j : X(E_{i,j},0,0)
                [(i, 1), (j, -1)] | [(j, -1), (i, 1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(i - 1, j - 1, 1), (n1 - j - 1, n1 - i - 1, -1)]
                }
                // λ_i + λ_j (i ≤ j): B-block F_{i,l+1−j}
                [(i, 1), (j, 1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(i - 1, n1 - j - 1, 1), (j - 1, n1 - i - 1, 1)]
                }
                [(i, 2)] => {
                    let i = i + 1;
                    vec![(i - 1, n1 - i - 1, 2)]
                }
                // −λ_i − λ_j: C-block F_{l+1−i,j}
                [(i, -1), (j, -1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(n1 - i - 1, j - 1, 1), (n1 - j - 1, i - 1, 1)]
                }
                [(i, -2)] => {
                    let i = i + 1;
                    vec![(n1 - i - 1, i - 1, 2)]
                }
                _ => panic!("not a C_{l} root: {lambda:?}"),
            }
        }
        LieType::B => {
            let mirror = |u: usize| 2 * l + 2 - u; // 1-based mirror across the center
            match nz.as_slice() {
                [(i, 1), (j, -1)] | [(j, -1), (i, 1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(i - 1, j - 1, 1), (mirror(j) - 1, mirror(i) - 1, -1)]
                }
                [(i, 1), (j, 1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(i - 1, mirror(j) - 1, 1), (j - 1, mirror(i) - 1, -1)]
                }
                [(i, -1), (j, -1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(mirror(i) - 1, j - 1, 1), (mirror(j) - 1, i - 1, -1)]
                }
                [(i, 1)] => {
                    let i = i + 1;
                    let c = l + 1; // center position, 1-based
                    vec![(i - 1, c - 1, 1), (c - 1, mirror(i) - 1, -1)]
                }
                [(i, -1)] => {
                    let i = i + 1;
                    let c = l + 1;
                    vec![(c - 1, i - 1, 1), (mirror(i) - 1, c - 1, -1)]
                }
                _ => panic!("not a B_{l} root: {lambda:?}"),
            }
        }
        LieType::D => {
            let mirror = |u: usize| 2 * l + 1 - u; // 1-based mirror
            match nz.as_slice() {
                [(i, 1), (j, -1)] | [(j, -1), (i, 1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(i - 1, j - 1, 1), (mirror(j) - 1, mirror(i) - 1, -1)]
                }
                [(i, 1), (j, 1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(i - 1, mirror(j) - 1, 1), (j - 1, mirror(i) - 1, -1)]
                }
                [(i, -1), (j, -1)] => {
                    let (i, j) = (i + 1, j + 1);
                    vec![(mirror(i) - 1, j - 1, 1), (mirror(j) - 1, i - 1, -1)]
                }
                _ => panic!("not a D_{l} root: {lambda:?}"),
            }
        }
    }
}

/// Root vector matrix for a signed root in λ-coordinates.
pub fn root_vector(lie_type: LieType, l: usize, lambda: &[i64]) -> QMatrix {
    let n = matrix_size(lie_type, l);
    matrix_from_entries(n, &root_vector_entries(lie_type, l, lambda))
}

pub fn matrix_size(lie_type: LieType, l: usize) -> usize {
    match lie_type {
        LieType::A => l + 1,
        LieType::C | LieType::D => 2 * l,
        LieType::B => 2 * l + 1,
    }
}

fn cartan_entries(lie_type: LieType, l: usize, j: usize) -> Vec<(usize, usize, i64)> {
    // λ-coefficients of the coroot H_{j+1}.
    let mut a = vec![0i64; l + 1]; // one spare slot for type A
    match lie_type {
        LieType::A => {
            a[j] = 1;
            a[j + 1] = -1;
        }
        LieType::B => {
            if j + 1 < l {
                a[j] = 1;
                a[j + 1] = -1;
            } else {
                a[l - 1] = 2;
            }
        }
        LieType::C => {
            if j + 1 < l {
                a[j] = 1;
                a[j + 1] = -1;
            } else {
                a[l - 1] = 1;
            }
        }
        LieType::D => {
            if j + 1 < l {
                a[j] = 1;
                a[j + 1] = -1;
            } else {
                a[l - 2] = 1;
                a[l - 1] = 1;
            }
        }
    }
    let n = matrix_size(lie_type, l);
    let mut entries = Vec::new();
    for u in 0..n {
        let w = position_weight(lie_type, l, u);
        let v: i64 = w.iter().zip(&a).map(|(x, y)| x * y).sum();
        if v != 0 {
            entries.push((u, u, v));
        }
    }
    entries
}

#[derive(Clone, Debug)]
pub enum AlgebraError {
    Root(RootError),
    NotInSpan,
}

impl std::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraError::Root(e) => write!(f, "{e}"),
            AlgebraError::NotInSpan => write!(f, "matrix not in the span of the basis"),
        }
    }
}

impl std::error::Error for AlgebraError {}

impl From<RootError> for AlgebraError {
    fn from(e: RootError) -> Self {
        AlgebraError::Root(e)
    }
}

/// Sparse structure constants: `table[i][j]` lists `(k, c)` with
/// `[b_i, b_j] = Σ c · b_k`.
pub type StructureTable = Vec<Vec<Vec<(usize, Q)>>>;

pub struct MatrixLieAlgebra {
    pub lie_type: LieType,
    pub rank: usize,
    pub matrix_size: usize,
    pub basis: Vec<BasisElement>,
    pub root_system: RootSystem,
    /// Flat positions selected as coordinates (one per basis dimension).
    probe_positions: Vec<usize>,
    /// Inverse of the probe submatrix; column k corresponds to probe k.
    probe_inverse: QMatrix,
    structure: OnceLock<StructureTable>,
    table_check: OnceLock<Result<(), String>>,
}

impl MatrixLieAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of the Cartan element H_{j+1}.
    pub fn cartan_index(&self, j: usize) -> usize {
        j
    }

    /// Basis index of the root vector for ± `positive_roots[pos_index]`.
    pub fn root_index(&self, pos_index: usize, negative: bool) -> usize {
        let l = self.rank;
        let npos = self.root_system.positive_roots.len();
        if negative {
            l + npos + pos_index
        } else {
            l + pos_index
        }
    }

    /// λ_k evaluated on a diagonal Cartan matrix.
    fn lambda_value(&self, h: &QMatrix, k: usize) -> Q {
        h.at(k, k).clone()
    }

    /// α(H) from λ-coordinates, for diagonal H in this realization.
    pub fn eval_root_on(&self, lambda: &[i64], h: &QMatrix) -> Q {
        let mut s = Q::zero();
        for (k, &c) in lambda.iter().enumerate() {
            if c != 0 {
                s += qi(c) * self.lambda_value(h, k);
            }
        }
        s
    }

    /// Exact coordinates of `x` over the basis; `Err(NotInSpan)` signals a
    /// closure bug upstream.
    pub fn coordinates(&self, x: &QMatrix) -> Result<Vec<Q>, AlgebraError> {
        let flat = x.flatten();
        let probe: Vec<Q> = self
            .probe_positions
            .iter()
            .map(|&p| flat[p].clone())
            .collect();
        let coords = self.probe_inverse.mul_vec(&probe);
        // Verify: the probe positions determine membership only together
        // with a full reconstruction check.
        let mut recon = vec![Q::zero(); flat.len()];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(p, v) in &self.basis[k].sparse {
                recon[p] += c * qi(v);
            }
        }
        if recon != flat {
            return Err(AlgebraError::NotInSpan);
        }
        Ok(coords)
    }

    /// Sparse bracket of two basis elements (integer matrix arithmetic).
    fn bracket_basis_sparse(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let n = self.matrix_size;
        let a = &self.basis[i].sparse;
        let b = &self.basis[j].sparse;
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(pa, va) in a {
            let (ra, ca) = (pa / n, pa % n);
            for &(pb, vb) in b {
                let (rb, cb) = (pb / n, pb % n);
                if ca == rb {
                    *acc.entry(ra * n + cb).or_insert(0) += va * vb;
                }
                if cb == ra {
                    *acc.entry(rb * n + ca).or_insert(0) -= va * vb;
                }
            }
        }
        let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|(_, v)| *v != 0).collect();
        out.sort_unstable();
        out
    }

    /// Structure constants over the basis, computed once and cached.
    pub fn structure_table(&self) -> &StructureTable {
        self.structure.get_or_init(|| {
            let dim = self.dim();
            let mut table = vec![vec![Vec::new(); dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    if i == j {
                        continue;
                    }
                    let br = self.bracket_basis_sparse(i, j);
                    if br.is_empty() {
                        continue;
                    }
                    // Solve over the probe positions, then verify the sparse
                    // reconstruction exactly (closure check).
                    let mut probe = vec![Q::zero(); dim];
                    let pos_index: HashMap<usize, usize> = self
                        .probe_positions
                        .iter()
                        .enumerate()
                        .map(|(k, &p)| (p, k))
                        .collect();
                    for &(p, v) in &br {
                        if let Some(&k) = pos_index.get(&p) {
                            probe[k] = qi(v);
                        }
                    }
                    let mut coords = vec![Q::zero(); dim];
                    for (k, pv) in probe.iter().enumerate() {
                        if pv.is_zero() {
                            continue;
                        }
                        for r in 0..dim {
                            let m = self.probe_inverse.at(r, k);
                            if !m.is_zero() {
                                coords[r] += pv * m;
                            }
                        }
                    }
                    let mut recon: HashMap<usize, Q> = HashMap::new();
                    let mut entry = Vec::new();
                    for (k, c) in coords.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        entry.push((k, c.clone()));
                        for &(p, v) in &self.basis[k].sparse {
                            *recon.entry(p).or_insert_with(Q::zero) += c * qi(v);
                        }
                    }
                    let mut recon: Vec<(usize, i64)> = recon
                        .into_iter()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(p, v)| {
                            assert!(v.denom().is_one(), "non-integer structure constant");
                            (
                                p,
                                i64::try_from(v.numer()).expect("structure constant overflow"),
                            )
                        })
                        .collect();
                    recon.sort_unstable();
                    assert_eq!(recon, br, "bracket escaped the basis span");
                    table[i][j] = entry;
                }
            }
            table
        })
    }

    /// Bracket of coordinate vectors through the structure table.
    pub fn bracket_coords(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let table = self.structure_table();
        let dim = self.dim();
        let mut out = vec![Q::zero(); dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &table[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// The structure table after a one-time validation pass (antisymmetry,
    /// Jacobi, root-vector property); the result is cached per algebra.
    pub fn validated_structure_table(&self) -> Result<&StructureTable, String> {
        let table = self.structure_table();
        self.table_check
            .get_or_init(|| check_structure_table(self, table))
            .clone()?;
        Ok(table)
    }

    /// Reassemble a matrix from coordinates.
    pub fn matrix_from_coords(&self, coords: &[Q]) -> QMatrix {
        let mut m = QMatrix::zero(self.matrix_size, self.matrix_size);
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(p, v) in &self.basis[k].sparse {
                let (i, j) = (p / self.matrix_size, p % self.matrix_size);
                let cur = m.at(i, j) + c * qi(v);
                m.set(i, j, cur);
            }
        }
        m
    }
}

/// Construct the matrix realization of `(lie_type, l)`.
///
/// Validates on the way out: basis independence (rank check on flattened
/// matrices) and the root-vector property `[H, E_α] = α(H) E_α` for every
/// Cartan element and every root.
pub fn realize(lie_type: LieType, l: usize) -> Result<MatrixLieAlgebra, AlgebraError> {
    let rs = build_root_system(lie_type, l)?;
    let n = matrix_size(lie_type, l);
    let mut basis = Vec::new();
    for j in 0..l {
        let entries = cartan_entries(lie_type, l, j);
        basis.push(BasisElement {
            matrix: matrix_from_entries(n, &entries),
            tag: BasisTag::Cartan(j),
            sparse: sparse_from_entries(n, &entries),
        });
    }
    for negative in [false, true] {
        for (pi, root) in rs.positive_roots.iter().enumerate() {
            let lambda: Vec<i64> = if negative {
                root.lambda.iter().map(|v| -v).collect()
            } else {
                root.lambda.clone()
            };
            let entries = root_vector_entries(lie_type, l, &lambda);
            basis.push(BasisElement {
                matrix: matrix_from_entries(n, &entries),
                tag: BasisTag::Root {
                    pos_index: pi,
                    negative,
                },
                sparse: sparse_from_entries(n, &entries),
            });
        }
    }
    // Reorder: Cartan first, then positive root vectors, then negative —
    // already in that order; find probe positions by eliminating the
    // (dim × n²) flattened basis matrix.
    let dim = basis.len();
    let mut flat = QMatrix::zero(dim, n * n);
    for (k, b) in basis.iter().enumerate() {
        for &(p, v) in &b.sparse {
            flat.set(k, p, qi(v));
        }
    }
    let r = rref(&flat);
    assert_eq!(r.rank, dim, "basis is linearly dependent");
    let probe_positions = r.pivot_cols.clone();
    // Invert the dim×dim probe submatrix.
    let mut aug = QMatrix::zero(dim, 2 * dim);
    for i in 0..dim {
        for (jj, &p) in probe_positions.iter().enumerate() {
            aug.set(i, jj, flat.at(i, p).clone());
        }
        aug.set(i, dim + i, Q::one());
    }
    // We need the inverse of S^T where S[k][j] = basis_k at probe_j, because
    // coordinates satisfy S^T c = probe values; build it directly.
    let mut augt = QMatrix::zero(dim, 2 * dim);
    for i in 0..dim {
        for j in 0..dim {
            augt.set(i, j, aug.at(j, i).clone());
        }
        augt.set(i, dim + i, Q::one());
    }
    let rt = rref(&augt);
    assert_eq!(rt.rank, dim, "probe submatrix is singular");
    let mut probe_inverse = QMatrix::zero(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            probe_inverse.set(i, j, rt.reduced.at(i, dim + j).clone());
        }
    }
    let alg = MatrixLieAlgebra {
        lie_type,
        rank: l,
        matrix_size: n,
        basis,
        root_system: rs,
        probe_positions,
        probe_inverse,
        structure: OnceLock::new(),
        table_check: OnceLock::new(),
    };
    validate_realization(&alg);
    Ok(alg)
}

fn validate_realization(alg: &MatrixLieAlgebra) {
    let expected_dim = alg.root_system.root_count() + alg.rank;
    assert_eq!(alg.dim(), expected_dim, "dimension mismatch");
    for j in 0..alg.rank {
        let h = &alg.basis[alg.cartan_index(j)].matrix;
        for (pi, root) in alg.root_system.positive_roots.iter().enumerate() {
            for negative in [false, true] {
                let e = &alg.basis[alg.root_index(pi, negative)].matrix;
                let lhs = bracket(h, e);
                let mut alpha_h = alg.eval_root_on(&root.lambda, h);
                if negative {
                    alpha_h = -alpha_h;
                }
                assert_eq!(lhs, e.scale(&alpha_h), "root-vector property failed");
            }
        }
    }
}

/// Validate a structure table against the realization: bracket
/// antisymmetry, the Jacobi identity on all basis triples, and the
/// root-vector eigenvalue property `[H, E_α] = α(H) E_α`.
///
/// Runs on arbitrary tables so that corrupted copies can be checked by the
/// verification suite.
pub fn check_structure_table(alg: &MatrixLieAlgebra, table: &StructureTable) -> Result<(), String> {
    let dim = alg.dim();
    if table.len() != dim || table.iter().any(|r| r.len() != dim) {
        return Err("table shape mismatch".into());
    }
    let add_into = |acc: &mut HashMap<usize, Q>, entry: &[(usize, Q)], scale: &Q| {
        for (k, c) in entry {
            let v = acc.entry(*k).or_insert_with(Q::zero);
            *v += c * scale;
        }
    };
    let one = Q::one();
    for i in 0..dim {
        for j in 0..dim {
            let mut acc: HashMap<usize, Q> = HashMap::new();
            add_into(&mut acc, &table[i][j], &one);
            add_into(&mut acc, &table[j][i], &one);
            if acc.values().any(|v| !v.is_zero()) {
                return Err(format!("antisymmetry fails at ({i},{j})"));
            }
        }
    }
    // Root-vector property: [H_j, E] must be the exact eigenvalue action.
    for j in 0..alg.rank {
        let hj = alg.cartan_index(j);
        let h = &alg.basis[hj].matrix;
        for (v, b) in alg.basis.iter().enumerate() {
            if let BasisTag::Root {
                pos_index,
                negative,
            } = b.tag
            {
                let mut eig =
                    alg.eval_root_on(&alg.root_system.positive_roots[pos_index].lambda, h);
                if negative {
                    eig = -eig;
                }
                let entry: Vec<&(usize, Q)> =
                    table[hj][v].iter().filter(|(_, c)| !c.is_zero()).collect();
                let ok = if eig.is_zero() {
                    entry.is_empty()
                } else {
                    entry.len() == 1 && entry[0].0 == v && entry[0].1 == eig
                };
                if !ok {
                    return Err(format!("root-vector property fails at H_{j}, basis {v}"));
                }
            }
        }
    }
    // Jacobi on all basis triples.
    let bracket_entry = |x: &HashMap<usize, Q>, j: usize| -> HashMap<usize, Q> {
        let mut acc = HashMap::new();
        for (i, c) in x {
            for (k, s) in &table[*i][j] {
                let v = acc.entry(*k).or_insert_with(Q::zero);
                *v += c * s;
            }
        }
        acc
    };
    for i in 0..dim {
        for j in (i + 1)..dim {
            let ij: HashMap<usize, Q> = table[i][j].iter().cloned().collect();
            for k in (j + 1)..dim {
                let jk: HashMap<usize, Q> = table[j][k].iter().cloned().collect();
                let ki: HashMap<usize, Q> = table[k][i].iter().cloned().collect();
                let mut acc: HashMap<usize, Q> = HashMap::new();
                for m in [
                    bracket_entry(&ij, k),
                    bracket_entry(&jk, i),
                    bracket_entry(&ki, j),
                ] {
                    for (t, v) in m {
                        *acc.entry(t).or_insert_with(Q::zero) += v;
                    }
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return Err(format!("Jacobi fails on triple ({i},{j},{k})"));
                }
            }
        }
    }
    Ok(())
}

/// Expected dimension of the realized algebra.
pub fn expected_dim(lie_type: LieType, l: usize) -> usize {
    match lie_type {
        LieType::A => l * l + 2 * l,
        LieType::B | LieType::C => l * (2 * l + 1),
        LieType::D => l * (2 * l - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qfrac;

    #[test]
    fn dims_match_formulas() {
        for (t, l, d) in [
            (LieType::A, 2, 8),
            (LieType::C, 3, 21),
            (LieType::B, 2, 10),
            (LieType::D, 3, 15),
            (LieType::D, 4, 28),
        ] {
            let alg = realize(t, l).unwrap();
            assert_eq!(alg.dim(), d);
            assert_eq!(expected_dim(t, l), d);
        }
    }

    #[test]
    fn sl2_triple() {
        // [E12, E21] = E11 − E22 in sl(2)
        let alg = realize(LieType::A, 1).unwrap();
        let e = root_vector(LieType::A, 1, &[1, -1]);
        let f = root_vector(LieType::A, 1, &[-1, 1]);
        let h = bracket(&e, &f);
        let mut expect = QMatrix::zero(2, 2);
        expect.set(0, 0, qi(1));
        expect.set(1, 1, qi(-1));
        assert_eq!(h, expect);
        let coords = alg.coordinates(&h).unwrap();
        assert_eq!(coords[0], qi(1)); // H₁ itself
    }

    #[test]
    fn bracket_alternating_and_cartan_action() {
        let x = root_vector(LieType::A, 2, &[1, 0, -1]);
        assert!(bracket(&x, &x).is_zero());
        // [H, E12] = 2 E12 with H = diag(1,−1,0)
        let mut h = QMatrix::zero(3, 3);
        h.set(0, 0, qi(1));
        h.set(1, 1, qi(-1));
        let e12 = root_vector(LieType::A, 2, &[1, -1, 0]);
        assert_eq!(bracket(&h, &e12), e12.scale(&qi(2)));
    }

    #[test]
    fn coordinates_unit_and_zero() {
        let alg = realize(LieType::C, 2).unwrap();
        for (k, b) in alg.basis.iter().enumerate() {
            let coords = alg.coordinates(&b.matrix).unwrap();
            for (i, c) in coords.iter().enumerate() {
                assert_eq!(*c == qi(1), i == k);
                assert!(c.is_zero() || i == k);
            }
        }
        let z = QMatrix::zero(4, 4);
        assert!(alg.coordinates(&z).unwrap().iter().all(|c| c.is_zero()));
        assert!(alg.coordinates(&QMatrix::identity(4)).is_err());
    }

    #[test]
    fn cartan_matrix_normalization() {
        // α_i(H_j) must be the Cartan matrix entry.
        let expect_c3 = [[2, -1, 0], [-1, 2, -1], [0, -2, 2]];
        let alg = realize(LieType::C, 3).unwrap();
        for i in 0..3 {
            let alpha = &alg.root_system.simple_roots[i];
            for j in 0..3 {
                let h = &alg.basis[j].matrix;
                assert_eq!(
                    alg.eval_root_on(alpha, h),
                    qi(expect_c3[i][j]),
                    "C3 ({i},{j})"
                );
            }
        }
        let expect_b3 = [[2, -1, 0], [-1, 2, -2], [0, -1, 2]];
        let alg = realize(LieType::B, 3).unwrap();
        for i in 0..3 {
            let alpha = &alg.root_system.simple_roots[i];
            for j in 0..3 {
                let h = &alg.basis[j].matrix;
                assert_eq!(
                    alg.eval_root_on(alpha, h),
                    qi(expect_b3[i][j]),
                    "B3 ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn block_shape_constraints() {
        // C: B = B′, C = C′ and lower-right = −A′; B/D: B = −B′, C = −C′.
        for (t, l) in [(LieType::C, 3), (LieType::B, 2), (LieType::D, 3)] {
            let alg = realize(t, l).unwrap();
            let n = alg.matrix_size;
            for b in &alg.basis {
                let x = &b.matrix;
                match t {
                    LieType::C => {
                        for i in 0..l {
                            for j in 0..l {
                                // B and C blocks symmetric under the
                                // anti-diagonal reflection of the block.
                                assert_eq!(x.at(i, l + j), x.at(l - 1 - j, n - 1 - i), "B=B'");
                                assert_eq!(x.at(l + i, j), x.at(n - 1 - j, l - 1 - i), "C=C'");
                                // lower-right block = −A′
                                let lr = x.at(l + i, l + j).clone();
                                let a_at = x.at(l - 1 - j, l - 1 - i).clone();
                                assert_eq!(lr, -a_at, "lower-right != -A'");
                            }
                        }
                    }
                    LieType::B | LieType::D => {
                        let off = if t == LieType::B { l + 1 } else { l };
                        for i in 0..l {
                            for j in 0..l {
                                let b_ij = x.at(i, off + j).clone();
                                let b_refl = x.at(l - 1 - j, n - 1 - i).clone();
                                assert_eq!(b_ij, -b_refl, "B=-B'");
                            }
                        }
                    }
                    LieType::A => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn jacobi_identity_via_structure_table() {
        for (t, l) in [
            (LieType::A, 2),
            (LieType::C, 2),
            (LieType::B, 2),
            (LieType::D, 3),
        ] {
            let alg = realize(t, l).unwrap();
            let dim = alg.dim();
            let table = alg.structure_table();
            let sparse_bracket = |x: &Vec<(usize, Q)>, j: usize| -> Vec<(usize, Q)> {
                let mut acc: std::collections::HashMap<usize, Q> = Default::default();
                for (i, c) in x {
                    for (k, s) in &table[*i][j] {
                        *acc.entry(*k).or_insert_with(Q::zero) += c * s;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            };
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
                        let mut acc: std::collections::HashMap<usize, Q> = Default::default();
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            let ab = table[a][b].clone();
                            for (m, v) in sparse_bracket(&ab, c) {
                                *acc.entry(m).or_insert_with(Q::zero) += v;
                            }
                        }
                        assert!(acc.values().all(|v| v.is_zero()), "Jacobi failed");
                    }
                }
            }
        }
    }

    #[test]
    fn structure_constants_are_integers_up_to_the_short_coroot() {
        // A, C, D: fully integral. B: brackets [e_{λ_i}, f_{λ_i}] of short
        // root pairs give diag(e_i) = Σ_{j≥i} H_j + ½ H_l over the coroot
        // basis, so a denominator 2 on the last Cartan coordinate is forced
        // by the coroot normalization; nothing else may be fractional.
        for (t, l) in [
            (LieType::A, 3),
            (LieType::C, 3),
            (LieType::B, 3),
            (LieType::D, 4),
        ] {
            let alg = realize(t, l).unwrap();
            for row in alg.structure_table() {
                for entry in row {
                    for (k, c) in entry {
                        if c.denom().is_one() {
                            continue;
                        }
                        assert_eq!(t, LieType::B, "non-integer constant outside type B");
                        assert_eq!(*k, l - 1, "fraction off the short coroot coordinate");
                        assert_eq!(c.denom(), &num_bigint::BigInt::from(2));
                    }
                }
            }
        }
    }

    #[test]
    fn defining_bilinear_form_identity() {
        // X^T S + S X = 0 with S the anti-diagonal form: all ones for the
        // orthogonal types, sign-split halves for the symplectic one.
        for (t, l) in [
            (LieType::A, 2),
            (LieType::B, 2),
            (LieType::B, 3),
            (LieType::C, 2),
            (LieType::C, 3),
            (LieType::D, 3),
            (LieType::D, 4),
        ] {
            if t == LieType::A {
                // sl: trace zero instead.
                let alg = realize(t, l).unwrap();
                for b in &alg.basis {
                    let tr: Q = (0..alg.matrix_size)
                        .map(|i| b.matrix.at(i, i).clone())
                        .sum();
                    assert!(tr.is_zero(), "nonzero trace in sl");
                }
                continue;
            }
            let alg = realize(t, l).unwrap();
            let n = alg.matrix_size;
            let mut s = QMatrix::zero(n, n);
            for i in 0..n {
                let v = if t == LieType::C && i >= l {
                    qi(-1)
                } else {
                    qi(1)
                };
                s.set(i, n - 1 - i, v);
            }
            for b in &alg.basis {
                let lhs = b.matrix.transpose().mul(&s).add(&s.mul(&b.matrix));
                assert!(lhs.is_zero(), "form identity fails for {t}{l}");
            }
        }
    }

    #[test]
    fn antitranspose_definition() {
        let mut x = QMatrix::zero(2, 2);
        x.set(0, 0, qi(1));
        x.set(0, 1, qfrac(1, 2));
        let xp = antitranspose(&x);
        assert_eq!(xp.at(1, 1), &qi(1));
        assert_eq!(xp.at(0, 1), &qfrac(1, 2));
    }
}

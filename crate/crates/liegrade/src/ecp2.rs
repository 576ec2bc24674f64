//! The two additive-group structures on P²: the polynomial matrix families
//! M₁, M₂: G_a² → SL(3), their homomorphism identities checked symbolically,
//! the open-orbit rank witness, and the unipotent-index invariant that
//! separates the two up to conjugacy.
//!
//! Action convention: the transpose action v ↦ M(a)ᵀ v with base point
//! e₁ = `[1:0:0]`. The literal left action on columns moves only the first
//! coordinate and has no open orbit for these families (demonstrated
//! symbolically by `untransposed_orbit_degenerate`), so the open-orbit
//! requirement forces this reading.

use crate::exactlin::{qfrac, qi, QMatrix, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse multivariate polynomial over Q with a fixed variable arity.
/// Keys are exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Vec<u8>, Q>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Q) -> Self {
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(arity, Q::one())
    }

    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity);
        let mut exp = vec![0u8; arity];
        exp[i] = 1;
        let mut p = Poly::zero(arity);
        p.terms.insert(exp, Q::one());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exp: Vec<u8>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.arity);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity);
        let mut out = Poly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(exp, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero(self.arity);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    /// Substitute each variable by a polynomial (all of the same arity).
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.arity);
        let out_arity = subs.first().map_or(self.arity, |p| p.arity);
        let mut out = Poly::zero(out_arity);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(out_arity, c.clone());
            for (i, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    term = term.mul(&subs[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.arity);
        let mut out = Q::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    term *= &point[i];
                }
            }
            out += term;
        }
        out
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[var] -= 1;
            out.insert(exp, c * qi(e[var] as i64));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["a1", "a2", "b1", "b2", "x", "y", "z", "w"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| {
                        let n = names.get(i).copied().unwrap_or("v");
                        if p == 1 {
                            n.to_string()
                        } else {
                            format!("{n}^{p}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c} {}", vars.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A 3×3 matrix of polynomials in the group parameters (a₁, a₂).
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialMatrixFamily {
    pub entries: Vec<Vec<Poly>>,
    pub arity: usize,
}

impl PolynomialMatrixFamily {
    fn from_entries(entries: Vec<Vec<Poly>>) -> Self {
        let arity = entries[0][0].arity();
        PolynomialMatrixFamily { entries, arity }
    }

    pub fn eval(&self, point: &[Q]) -> QMatrix {
        let mut m = QMatrix::zero(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, self.entries[i][j].eval(point));
            }
        }
        m
    }

    /// Symbolic matrix product after substituting `subs_self` into this
    /// family's variables and `subs_other` into the other's.
    fn mul_substituted(
        &self,
        other: &PolynomialMatrixFamily,
        subs_self: &[Poly],
        subs_other: &[Poly],
    ) -> Vec<Vec<Poly>> {
        let arity = subs_self[0].arity();
        let mut out = vec![vec![Poly::zero(arity); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Poly::zero(arity);
                for k in 0..3 {
                    let a = self.entries[i][k].substitute(subs_self);
                    let b = other.entries[k][j].substitute(subs_other);
                    acc = acc.add(&a.mul(&b));
                }
                out[i][j] = acc;
            }
        }
        out
    }

    /// 3×3 determinant, symbolically.
    pub fn det(&self) -> Poly {
        let e = &self.entries;
        let term = |i: usize, j: usize, k: usize| e[0][i].mul(&e[1][j]).mul(&e[2][k]);
        term(0, 1, 2)
            .add(&term(1, 2, 0))
            .add(&term(2, 0, 1))
            .sub(&term(2, 1, 0))
            .sub(&term(0, 2, 1))
            .sub(&term(1, 0, 2))
    }
}

/// The displayed family M₁ (first-row unipotent) or M₂ (with the ½a₁² jet).
pub fn build_m(variant: u8) -> PolynomialMatrixFamily {
    build_m_with_coeff(variant, qfrac(1, 2))
}

/// Same, with the (1,3)-entry coefficient of a₁² exposed so the mutation
/// test can perturb ½ → 1.
pub fn build_m_with_coeff(variant: u8, half: Q) -> PolynomialMatrixFamily {
    let ar = 2usize;
    let a1 = || Poly::var(ar, 0);
    let a2 = || Poly::var(ar, 1);
    let zero = || Poly::zero(ar);
    let one = || Poly::one(ar);
    let entries = match variant {
        1 => vec![
            vec![one(), a1(), a2()],
            vec![zero(), one(), zero()],
            vec![zero(), zero(), one()],
        ],
        2 => vec![
            vec![one(), a1(), a2().add(&a1().mul(&a1()).scale(&half))],
            vec![zero(), one(), a1()],
            vec![zero(), zero(), one()],
        ],
        _ => panic!("variant must be 1 or 2"),
    };
    let fam = PolynomialMatrixFamily::from_entries(entries);
    // Construction invariants: identity at the origin, unit determinant.
    let at0 = fam.eval(&[Q::zero(), Q::zero()]);
    assert_eq!(at0, QMatrix::identity(3));
    assert_eq!(fam.det(), Poly::one(ar));
    fam
}

/// M(a)·M(b) = M(a+b) as a polynomial identity in four variables.
pub fn verify_homomorphism(m: &PolynomialMatrixFamily) -> bool {
    let ar = 4usize;
    let a = [Poly::var(ar, 0), Poly::var(ar, 1)];
    let b = [Poly::var(ar, 2), Poly::var(ar, 3)];
    let sum = [a[0].add(&b[0]), a[1].add(&b[1])];
    let prod = m.mul_substituted(m, &a, &b);
    for i in 0..3 {
        for j in 0..3 {
            let rhs = m.entries[i][j].substitute(&sum);
            if prod[i][j] != rhs {
                return false;
            }
        }
    }
    true
}

/// Rank at the base point e₁ of the Jacobian of the affine orbit map
/// (a₁,a₂) ↦ (coordinates 2,3 of M(a)ᵀ e₁) at a = 0. Rank 2 certifies an
/// open orbit. M(a)ᵀ e₁ is the first row of M(a).
pub fn open_orbit_rank(m: &PolynomialMatrixFamily) -> usize {
    let origin = [Q::zero(), Q::zero()];
    let mut jac = QMatrix::zero(2, 2);
    for (r, col) in [1usize, 2].into_iter().enumerate() {
        let entry = &m.entries[0][col];
        for v in 0..2 {
            jac.set(r, v, entry.partial(v).eval(&origin));
        }
    }
    crate::exactlin::rref(&jac).rank
}

/// The untransposed (left-column) action v ↦ M(a) v has projective rank
/// < 2 at every base point: the 3×3 determinant det(v, ∂₁, ∂₂) vanishes
/// identically in the base-point coordinates (x, y, z).
pub fn untransposed_orbit_degenerate(m: &PolynomialMatrixFamily) -> bool {
    // Variables: a1, a2, x, y, z (arity 5).
    let ar = 5usize;
    let subs_a: Vec<Poly> = vec![Poly::var(ar, 0), Poly::var(ar, 1)];
    let v = [Poly::var(ar, 2), Poly::var(ar, 3), Poly::var(ar, 4)];
    // orbit(a) = M(a)·v, entries as arity-5 polynomials
    let mut orbit = Vec::new();
    for i in 0..3 {
        let mut acc = Poly::zero(ar);
        for k in 0..3 {
            acc = acc.add(&m.entries[i][k].substitute(&subs_a).mul(&v[k]));
        }
        orbit.push(acc);
    }
    // Tangents at a = 0: substitute a = 0 after differentiating.
    let zero_a = |p: &Poly| -> Poly {
        let subs: Vec<Poly> = vec![
            Poly::zero(ar),
            Poly::zero(ar),
            Poly::var(ar, 2),
            Poly::var(ar, 3),
            Poly::var(ar, 4),
        ];
        p.substitute(&subs)
    };
    let rows: Vec<Vec<Poly>> = vec![
        v.to_vec(),
        orbit.iter().map(|p| zero_a(&p.partial(0))).collect(),
        orbit.iter().map(|p| zero_a(&p.partial(1))).collect(),
    ];
    // det of the 3×3 polynomial matrix
    let term = |i: usize, j: usize, k: usize| rows[0][i].mul(&rows[1][j]).mul(&rows[2][k]);
    let det = term(0, 1, 2)
        .add(&term(1, 2, 0))
        .add(&term(2, 0, 1))
        .sub(&term(2, 1, 0))
        .sub(&term(0, 2, 1))
        .sub(&term(1, 0, 2));
    det.is_zero()
}

/// Smallest m ≥ 1 with (g − I)^m = 0; panics if g is not unipotent within
/// the matrix size.
pub fn unipotent_index(g: &QMatrix) -> usize {
    let n = g.rows();
    let nilp = g.sub(&QMatrix::identity(n));
    let mut power = QMatrix::identity(n);
    for m in 0..=n {
        if m > 0 {
            power = power.mul(&nilp);
        }
        if m >= 1 && power.is_zero() {
            return m;
        }
    }
    panic!("matrix is not unipotent");
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishReport {
    pub index1: usize,
    pub index2: usize,
    /// (M(a) − I)² ≡ 0 symbolically, per family.
    pub square_vanishes: (bool, bool),
    pub distinct: bool,
}

/// Maximal unipotent index over the sample {−1,0,1}², plus the symbolic
/// (M(a)−I)² check. Distinct indices certify the images are not conjugate
/// in GL(3), hence the two structures are non-isomorphic.
pub fn distinguish(m1: &PolynomialMatrixFamily, m2: &PolynomialMatrixFamily) -> DistinguishReport {
    assert!(verify_homomorphism(m1) && verify_homomorphism(m2));
    let sample_index = |m: &PolynomialMatrixFamily| -> usize {
        let mut best = 0;
        for x in [-1i64, 0, 1] {
            for y in [-1i64, 0, 1] {
                best = best.max(unipotent_index(&m.eval(&[qi(x), qi(y)])));
            }
        }
        best
    };
    let square_zero = |m: &PolynomialMatrixFamily| -> bool {
        let ar = m.arity;
        let ident: Vec<Vec<Poly>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        if i == j {
                            Poly::one(ar)
                        } else {
                            Poly::zero(ar)
                        }
                    })
                    .collect()
            })
            .collect();
        let diff: Vec<Vec<Poly>> = (0..3)
            .map(|i| (0..3).map(|j| m.entries[i][j].sub(&ident[i][j])).collect())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Poly::zero(ar);
                for k in 0..3 {
                    acc = acc.add(&diff[i][k].mul(&diff[k][j]));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    };
    let index1 = sample_index(m1);
    let index2 = sample_index(m2);
    DistinguishReport {
        index1,
        index2,
        square_vanishes: (square_zero(m1), square_zero(m2)),
        distinct: index1 != index2,
    }
}

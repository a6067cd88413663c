//! The structure-constant algebra kernel.
//!
//! An algebra is a rational tensor `c[i][j][k]` with `e_i * e_j = Σ_k c[i][j][k] e_k`
//! and no identity assumed until checked. Left/right Leibniz, Lie and symmetric
//! Leibniz checks run over all basis triples — bilinearity makes that
//! sufficient — and report the first failing tuple as a witness.

use crate::error::{Error, Result};
use crate::exactlin::{basis_vec, is_vzero, rint, vadd, vsub, vzero, RMatrix, Rat, Subspace};
use num::Zero;

/// Finite-dimensional algebra given by structure constants.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    basis_names: Vec<String>,
    /// `sc[i][j]` is the coordinate vector of `e_i * e_j`.
    sc: Vec<Vec<Vec<Rat>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {})", self.dim)
    }
}

/// Which multiplication identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    LeftLeibniz,
    RightLeibniz,
    Lie,
    SymmetricLeibniz,
}

/// Outcome of an exhaustive basis check, with the lexicographically first
/// failing tuple when the check fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Zero-based basis indices of the failing tuple (a pair or a triple).
    pub indices: Vec<usize>,
    pub defect: Vec<Rat>,
}

impl CheckResult {
    pub fn pass() -> Self {
        CheckResult {
            passed: true,
            witness: None,
        }
    }

    pub fn fail(indices: Vec<usize>, defect: Vec<Rat>) -> Self {
        CheckResult {
            passed: false,
            witness: Some(Witness { indices, defect }),
        }
    }
}

/// Subspace families attached to an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuralKind {
    /// `{u : L_u = 0}`
    Zl,
    /// `{u : R_u = 0}`
    Zr,
    /// `Zl ∩ Zr`
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub terms: Vec<Subspace>,
    /// `true` when the terminal term is `{0}` (solvable/nilpotent resp.).
    pub flag: bool,
}

impl Algebra {
    pub fn new(dim: usize, basis_names: Vec<String>, sc: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        if basis_names.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "{} basis names for dimension {dim}",
                basis_names.len()
            )));
        }
        if sc.len() != dim
            || sc.iter().any(|p| p.len() != dim)
            || sc.iter().flatten().any(|v| v.len() != dim)
        {
            return Err(Error::ShapeMismatch(format!(
                "structure tensor is not {dim}x{dim}x{dim}"
            )));
        }
        Ok(Algebra {
            dim,
            basis_names,
            sc,
        })
    }

    /// Zero tensor with default basis names `e1..en`.
    pub fn zero_algebra(dim: usize) -> Self {
        Algebra {
            dim,
            basis_names: default_names(dim),
            sc: vec![vec![vzero(dim); dim]; dim],
        }
    }

    /// Abelian algebra (all products vanish).
    pub fn abelian(dim: usize) -> Self {
        Self::zero_algebra(dim)
    }

    /// Builds an algebra from a sparse product list: `(i, j, k, c)` means
    /// `e_i * e_j += c e_k`, all indices zero-based.
    pub fn from_products(dim: usize, products: &[(usize, usize, usize, Rat)]) -> Self {
        let mut alg = Self::zero_algebra(dim);
        for (i, j, k, c) in products {
            alg.sc[*i][*j][*k] += c;
        }
        alg
    }

    /// Same with integer coefficients, for table entries.
    pub fn from_products_i64(dim: usize, products: &[(usize, usize, usize, i64)]) -> Self {
        let list: Vec<(usize, usize, usize, Rat)> = products
            .iter()
            .map(|&(i, j, k, c)| (i, j, k, rint(c)))
            .collect();
        Self::from_products(dim, &list)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn set_basis_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.dim);
        self.basis_names = names;
    }

    pub fn sc(&self) -> &Vec<Vec<Vec<Rat>>> {
        &self.sc
    }

    /// `e_i * e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rat] {
        &self.sc[i][j]
    }

    /// Bilinear extension of the structure constants.
    pub fn product(&self, u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {}/{} in algebra of dimension {}",
                u.len(),
                v.len(),
                self.dim
            )));
        }
        let mut out = vzero(self.dim);
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for k in 0..self.dim {
                    if !self.sc[i][j][k].is_zero() {
                        out[k] += &c * &self.sc[i][j][k];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `L_u : v -> u * v` (columns are images of basis vectors).
    pub fn left_op(&self, u: &[Rat]) -> Result<RMatrix> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in algebra of dimension {}",
                u.len(),
                self.dim
            )));
        }
        let mut m = RMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for i in 0..self.dim {
                if u[i].is_zero() {
                    continue;
                }
                for k in 0..self.dim {
                    if !self.sc[i][j][k].is_zero() {
                        m[(k, j)] += &u[i] * &self.sc[i][j][k];
                    }
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `R_u : v -> v * u`.
    pub fn right_op(&self, u: &[Rat]) -> Result<RMatrix> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in algebra of dimension {}",
                u.len(),
                self.dim
            )));
        }
        let mut m = RMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for i in 0..self.dim {
                if u[i].is_zero() {
                    continue;
                }
                for k in 0..self.dim {
                    if !self.sc[j][i][k].is_zero() {
                        m[(k, j)] += &u[i] * &self.sc[j][i][k];
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn left_op_basis(&self, i: usize) -> RMatrix {
        self.left_op(&basis_vec(self.dim, i)).expect("basis vector")
    }

    pub fn right_op_basis(&self, i: usize) -> RMatrix {
        self.right_op(&basis_vec(self.dim, i))
            .expect("basis vector")
    }

    /// Left Leibniz defect `Q(u,v,w) = u(vw) - (uv)w - v(uw)`, exact.
    pub fn leibniz_defect(&self, u: &[Rat], v: &[Rat], w: &[Rat]) -> Result<Vec<Rat>> {
        let vw = self.product(v, w)?;
        let uv = self.product(u, v)?;
        let uw = self.product(u, w)?;
        let t1 = self.product(u, &vw)?;
        let t2 = self.product(&uv, w)?;
        let t3 = self.product(v, &uw)?;
        Ok(vsub(&vsub(&t1, &t2), &t3))
    }

    fn leibniz_defect_basis(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        // u(vw) - (uv)w - v(uw) on basis vectors, contracting the tensor
        let vw = &self.sc[j][k];
        let uw = &self.sc[i][k];
        let uv = &self.sc[i][j];
        let mut out = self.apply_left_basis(i, vw);
        let t2 = self.apply_product_vec_basis(uv, k);
        let t3 = self.apply_left_basis(j, uw);
        out = vsub(&out, &t2);
        vsub(&out, &t3)
    }

    /// Right Leibniz defect `(v w) u - (v u) w - v (w u)` on basis vectors.
    fn right_defect_basis(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        // u = e_i, v = e_j, w = e_k
        let vw = &self.sc[j][k];
        let vu = &self.sc[j][i];
        let wu = &self.sc[k][i];
        let t1 = self.apply_product_vec_basis(vw, i);
        let t2 = self.apply_product_vec_basis(vu, k);
        let t3 = self.apply_left_basis(j, wu);
        vsub(&vsub(&t1, &t2), &t3)
    }

    /// `e_i * v` for a coordinate vector v.
    fn apply_left_basis(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        let mut out = vzero(self.dim);
        for (l, c) in v.iter().enumerate() {
            if !c.is_zero() {
                for k in 0..self.dim {
                    if !self.sc[i][l][k].is_zero() {
                        out[k] += c * &self.sc[i][l][k];
                    }
                }
            }
        }
        out
    }

    /// `v * e_k` for a coordinate vector v.
    fn apply_product_vec_basis(&self, v: &[Rat], k: usize) -> Vec<Rat> {
        let mut out = vzero(self.dim);
        for (l, c) in v.iter().enumerate() {
            if !c.is_zero() {
                for m in 0..self.dim {
                    if !self.sc[l][k][m].is_zero() {
                        out[m] += c * &self.sc[l][k][m];
                    }
                }
            }
        }
        out
    }

    /// Exhaustive identity check over basis tuples. The witness is the first
    /// failing tuple in the documented scan order.
    pub fn check_identity(&self, kind: IdentityKind) -> CheckResult {
        match kind {
            IdentityKind::LeftLeibniz => self.check_left_leibniz(),
            IdentityKind::RightLeibniz => self.check_right_leibniz(),
            IdentityKind::Lie => {
                // antisymmetry first: squares e_i * e_i, then cross pairs
                for i in 0..self.dim {
                    if !is_vzero(&self.sc[i][i]) {
                        return CheckResult::fail(vec![i, i], self.sc[i][i].clone());
                    }
                }
                for i in 0..self.dim {
                    for j in (i + 1)..self.dim {
                        let d = vadd(&self.sc[i][j], &self.sc[j][i]);
                        if !is_vzero(&d) {
                            return CheckResult::fail(vec![i, j], d);
                        }
                    }
                }
                self.check_left_leibniz()
            }
            IdentityKind::SymmetricLeibniz => {
                let left = self.check_left_leibniz();
                if !left.passed {
                    return left;
                }
                self.check_right_leibniz()
            }
        }
    }

    fn check_left_leibniz(&self) -> CheckResult {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let d = self.leibniz_defect_basis(i, j, k);
                    if !is_vzero(&d) {
                        return CheckResult::fail(vec![i, j, k], d);
                    }
                }
            }
        }
        CheckResult::pass()
    }

    fn check_right_leibniz(&self) -> CheckResult {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let d = self.right_defect_basis(i, j, k);
                    if !is_vzero(&d) {
                        return CheckResult::fail(vec![i, j, k], d);
                    }
                }
            }
        }
        CheckResult::pass()
    }

    pub fn is_left_leibniz(&self) -> bool {
        self.check_identity(IdentityKind::LeftLeibniz).passed
    }

    pub fn is_lie(&self) -> bool {
        self.check_identity(IdentityKind::Lie).passed
    }

    /// `Leib(g) = span{ u*v + v*u }` over all basis pairs.
    pub fn leib_ideal(&self) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                rows.push(vadd(&self.sc[i][j], &self.sc[j][i]));
            }
        }
        Subspace::from_rows(self.dim, rows)
    }

    pub fn structural_subspace(&self, kind: StructuralKind) -> Subspace {
        match kind {
            StructuralKind::Zl => self.joint_kernel(true),
            StructuralKind::Zr => self.joint_kernel(false),
            StructuralKind::Z => self.joint_kernel(true).intersect(&self.joint_kernel(false)),
        }
    }

    /// Kernel of the linear map `u -> L_u` (or `u -> R_u`).
    fn joint_kernel(&self, left: bool) -> Subspace {
        let n = self.dim;
        // rows: n^2 entries of the operator, cols: n coordinates of u
        let mut m = RMatrix::zeros(n * n, n);
        for i in 0..n {
            let op = if left {
                self.left_op_basis(i)
            } else {
                self.right_op_basis(i)
            };
            for r in 0..n {
                for c in 0..n {
                    m[(r * n + c, i)] = op[(r, c)].clone();
                }
            }
        }
        crate::exactlin::rref_solve(&m, None)
            .expect("kernel computation")
            .kernel
    }

    /// `F * G`: span of pairwise products of basis vectors.
    pub fn subspace_product(&self, f: &Subspace, g: &Subspace) -> Result<Subspace> {
        if f.ambient_dim() != self.dim || g.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(
                "subspace ambient does not match algebra".to_string(),
            ));
        }
        let mut rows = Vec::new();
        for u in f.basis_vectors() {
            for v in g.basis_vectors() {
                rows.push(self.product(&u, &v)?);
            }
        }
        Ok(Subspace::from_rows(self.dim, rows))
    }

    /// Checks that `I` is a two-sided ideal; returns the first escaping
    /// product as a witness otherwise.
    pub fn check_ideal(&self, ideal: &Subspace) -> Result<()> {
        for (bi, b) in ideal.basis_vectors().iter().enumerate() {
            for i in 0..self.dim {
                let left = self.apply_left_basis(i, b);
                if !ideal.contains_vec(&left) {
                    return Err(Error::NotAnIdeal {
                        i,
                        j: bi,
                        defect: ideal.reduce_vec(&left),
                    });
                }
                let right = self.apply_product_vec_basis(b, i);
                if !ideal.contains_vec(&right) {
                    return Err(Error::NotAnIdeal {
                        i: bi,
                        j: i,
                        defect: ideal.reduce_vec(&right),
                    });
                }
            }
        }
        Ok(())
    }

    /// Quotient by a two-sided ideal (checked). The complement is the set of
    /// non-pivot coordinates of the ideal's RREF basis, so the projection is
    /// canonical. Returns the quotient algebra and the projection matrix.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(Algebra, RMatrix)> {
        if ideal.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(
                "ideal ambient does not match algebra".to_string(),
            ));
        }
        self.check_ideal(ideal)?;
        let comp = ideal.complement_coords();
        let q = comp.len();
        // projection: reduce modulo the ideal, then read complement coords
        let mut proj = RMatrix::zeros(q, self.dim);
        for (r, &c) in comp.iter().enumerate() {
            let reduced = ideal.reduce_vec(&basis_vec(self.dim, c));
            debug_assert!(reduced == basis_vec(self.dim, c));
            proj[(r, c)] = rint(1);
        }
        let pivots = ideal.pivot_cols();
        for (r, &nc) in comp.iter().enumerate() {
            for (s, &p) in pivots.iter().enumerate() {
                proj[(r, p)] = -ideal.basis()[(s, nc)].clone();
            }
        }
        let mut sc = vec![vec![vzero(q); q]; q];
        for (ri, &ci) in comp.iter().enumerate() {
            for (rj, &cj) in comp.iter().enumerate() {
                let prod = &self.sc[ci][cj];
                let projected = proj.mul_vec(prod);
                sc[ri][rj] = projected;
            }
        }
        let names = comp.iter().map(|&c| self.basis_names[c].clone()).collect();
        Ok((Algebra::new(q, names, sc)?, proj))
    }

    /// Derived or lower central series with the terminal stability flag.
    pub fn series(&self, kind: SeriesKind) -> SeriesResult {
        let full = Subspace::full(self.dim);
        let mut terms = vec![full.clone()];
        loop {
            let prev = terms.last().unwrap();
            let next = match kind {
                SeriesKind::Derived => self.subspace_product(prev, prev).expect("dims agree"),
                SeriesKind::LowerCentral => {
                    let l = self.subspace_product(&full, prev).expect("dims agree");
                    let r = self.subspace_product(prev, &full).expect("dims agree");
                    l.sum(&r)
                }
            };
            if next.equals(prev) {
                break;
            }
            terms.push(next.clone());
            if next.is_zero() {
                break;
            }
        }
        let flag = terms.last().unwrap().is_zero();
        SeriesResult { terms, flag }
    }

    pub fn is_solvable(&self) -> bool {
        self.series(SeriesKind::Derived).flag
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series(SeriesKind::LowerCentral).flag
    }

    /// Block-diagonal direct sum; cross products vanish.
    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let n = self.dim + other.dim;
        let mut sc = vec![vec![vzero(n); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    sc[i][j][k] = self.sc[i][j][k].clone();
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    sc[self.dim + i][self.dim + j][self.dim + k] = other.sc[i][j][k].clone();
                }
            }
        }
        let mut names = self.basis_names.clone();
        names.extend(other.basis_names.iter().cloned());
        // de-duplicate names from the two summands
        let names = if has_duplicates(&names) {
            default_names(n)
        } else {
            names
        };
        Algebra {
            dim: n,
            basis_names: names,
            sc,
        }
    }

    /// Pushforward along an invertible change of basis `phi` (as a matrix
    /// `P`): `u ∘ v = P^{-1}(P u * P v)`.
    pub fn transport(&self, p: &RMatrix) -> Result<Algebra> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch(
                "transport matrix does not match algebra dimension".to_string(),
            ));
        }
        let p_inv = p.inverse().ok_or(Error::Singular)?;
        let mut sc = vec![vec![vzero(self.dim); self.dim]; self.dim];
        for i in 0..self.dim {
            let pi = p.col_vec(i);
            for j in 0..self.dim {
                let pj = p.col_vec(j);
                let prod = self.product(&pi, &pj)?;
                sc[i][j] = p_inv.mul_vec(&prod);
            }
        }
        Ok(Algebra {
            dim: self.dim,
            basis_names: default_names(self.dim),
            sc,
        })
    }
}

pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn has_duplicates(names: &[String]) -> bool {
    let mut seen = std::collections::HashSet::new();
    names.iter().any(|n| !seen.insert(n))
}

/// The 2-dimensional left Leibniz algebra with `e2*e1 = e1`, `e2*e2 = e1`.
pub fn exem1() -> Algebra {
    Algebra::from_products_i64(2, &[(1, 0, 0, 1), (1, 1, 0, 1)])
}

/// `sl(2)` with basis `(h, e, f)`: `[h,e]=2e, [h,f]=-2f, [e,f]=h`.
pub fn sl2() -> Algebra {
    let mut alg = Algebra::from_products_i64(
        3,
        &[
            (0, 1, 1, 2),
            (1, 0, 1, -2),
            (0, 2, 2, -2),
            (2, 0, 2, 2),
            (1, 2, 0, 1),
            (2, 1, 0, -1),
        ],
    );
    alg.set_basis_names(vec!["h".into(), "e".into(), "f".into()]);
    alg
}

/// Heisenberg algebra `h_3`: `[e1,e2]=e3`.
pub fn heisenberg3() -> Algebra {
    Algebra::from_products_i64(3, &[(0, 1, 2, 1), (1, 0, 2, -1)])
}

/// The 2-dimensional nonabelian Lie algebra `aff(1)`: `[e1,e2]=e2`.
pub fn aff1() -> Algebra {
    Algebra::from_products_i64(2, &[(0, 1, 1, 1), (1, 0, 1, -1)])
}

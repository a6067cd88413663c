//! Exact dense linear algebra over arbitrary-precision rationals.
//!
//! Everything here is exact: no floating point anywhere. Matrices are dense
//! and row-major, subspaces are kept in reduced row-echelon form so that two
//! equal subspaces have identical representations, and symmetric forms are
//! classified by congruence diagonalization (Sylvester inertia) rather than
//! eigenvalues.

use num::{BigInt, BigRational, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational scalar. `BigRational` keeps values reduced
/// with a positive denominator, so equality is structural.
pub type Rat = BigRational;

/// Shorthand for a small rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` (denominator must be nonzero).
pub fn rat_from_string(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator: {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator: {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in rational: {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Dense matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| rat_to_string(&self[(i, j)]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for RMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rint(1);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rint(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rat> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Self {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product (vector as coordinates, i.e. a column).
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self[(i, j)].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// In-place reduction to reduced row-echelon form.
    /// Returns the pivot columns in order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find a pivot row
            let mut pr = None;
            for i in r..self.rows {
                if !self[(i, c)].is_zero() {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.swap_rows(r, pr);
            let inv = {
                let p = self[(r, c)].clone();
                p.recip()
            };
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Exact inverse via Gauss-Jordan on `[self | I]`; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Adjoint of an operator with respect to a nondegenerate symmetric form:
    /// `m^{-1} self^T m`.
    pub fn metric_adjoint(&self, m: &RMatrix, m_inv: &RMatrix) -> Self {
        m_inv.mul(&self.transpose()).mul(m)
    }

    /// Flattens the matrix into one row-major coordinate vector.
    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(rows * cols, data.len());
        RMatrix { rows, cols, data }
    }
}

/// Result of a reduced-row-echelon solve.
#[derive(Debug, Clone)]
pub struct RrefResult {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub rref: RMatrix,
    pub kernel: Subspace,
    /// A particular solution of `M x = b`, when `b` was supplied and the
    /// system is consistent.
    pub particular: Option<Vec<Rat>>,
}

/// Gauss-Jordan reduction with optional right-hand side.
///
/// The kernel spans the null space of `M`; `particular` solves `M x = b`
/// with free variables set to zero, absent when the system is inconsistent.
pub fn rref_solve(m: &RMatrix, b: Option<&[Rat]>) -> Result<RrefResult, String> {
    let (rows, cols) = (m.rows(), m.cols());
    if let Some(b) = b {
        if b.len() != rows {
            return Err(format!(
                "right-hand side has height {} but matrix has {} rows",
                b.len(),
                rows
            ));
        }
    }
    let mut work = match b {
        Some(b) => {
            let bm = RMatrix::from_flat(rows, 1, b.to_vec());
            m.hstack(&bm)
        }
        None => m.clone(),
    };
    let all_pivots = work.rref_in_place();
    // pivots within the coefficient block
    let pivots: Vec<usize> = all_pivots.iter().copied().filter(|&c| c < cols).collect();
    let rank = pivots.len();
    let inconsistent = b.is_some() && all_pivots.contains(&cols);

    // kernel basis: one vector per free column
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; cols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut kernel_rows = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = rint(1);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -work[(r, free)].clone();
        }
        kernel_rows.push(v);
    }
    let kernel = Subspace::from_rows(cols, kernel_rows);

    let particular = if b.is_some() && !inconsistent {
        let mut x = vec![Rat::zero(); cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = work[(r, cols)].clone();
        }
        Some(x)
    } else {
        None
    };

    let rref = if b.is_some() {
        // strip the augmented column back off
        let mut mm = RMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                mm[(i, j)] = work[(i, j)].clone();
            }
        }
        mm
    } else {
        work
    };

    Ok(RrefResult {
        rank,
        pivots,
        rref,
        kernel,
        particular,
    })
}

/// A linear subspace of a fixed ambient coordinate space, stored as an RREF
/// basis so set equality is matrix equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: RMatrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}, basis {:?})",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

impl Subspace {
    /// Canonicalizes the row span of the given vectors.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "row length does not match ambient dim");
        }
        let mut m = RMatrix::from_rows(rows);
        if m.rows() == 0 {
            return Subspace {
                ambient,
                basis: RMatrix::zeros(0, ambient),
            };
        }
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let mut basis_rows = Vec::with_capacity(rank);
        for i in 0..rank {
            basis_rows.push(m.row_vec(i));
        }
        Subspace {
            ambient,
            basis: if rank == 0 {
                RMatrix::zeros(0, ambient)
            } else {
                RMatrix::from_rows(basis_rows)
            },
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RMatrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RMatrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Pivot columns of the RREF basis.
    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut pivots = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.ambient {
                if !self.basis[(i, j)].is_zero() {
                    pivots.push(j);
                    break;
                }
            }
        }
        pivots
    }

    /// Reduces `v` modulo this subspace: subtracts basis multiples so that
    /// every pivot coordinate of the result is zero.
    pub fn reduce_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        let pivots = self.pivot_cols();
        for (r, &p) in pivots.iter().enumerate() {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for j in 0..self.ambient {
                    let nv = &out[j] - &f * &self.basis[(r, j)];
                    out[j] = nv;
                }
            }
        }
        out
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        self.reduce_vec(v).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        (0..other.dim()).all(|i| self.contains_vec(other.basis.row(i)))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        self.basis == other.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::from_rows(self.ambient, rows)
    }

    /// Intersection: coefficient vectors `(α, β)` with `α·B₁ = β·B₂` come
    /// from the kernel of `[B₁ᵀ | -B₂ᵀ]`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let bt1 = self.basis.transpose();
        let bt2 = other.basis.transpose().neg();
        let m = bt1.hstack(&bt2);
        let res = rref_solve(&m, None).expect("kernel computation");
        let d1 = self.dim();
        let mut rows = Vec::new();
        for k in 0..res.kernel.dim() {
            let coeff = res.kernel.basis.row(k);
            let mut v = vec![Rat::zero(); self.ambient];
            for (i, c) in coeff.iter().take(d1).enumerate() {
                if !c.is_zero() {
                    for j in 0..self.ambient {
                        let nv = &v[j] + c * &self.basis[(i, j)];
                        v[j] = nv;
                    }
                }
            }
            rows.push(v);
        }
        Subspace::from_rows(self.ambient, rows)
    }

    /// Extends the basis of this subspace to a basis of the ambient space;
    /// returns the complementary vectors (standard basis vectors at the
    /// non-pivot coordinates).
    pub fn complement_coords(&self) -> Vec<usize> {
        let pivots = self.pivot_cols();
        (0..self.ambient).filter(|c| !pivots.contains(c)).collect()
    }
}

/// Sylvester inertia `(p, q, z)` of a symmetric matrix by exact congruence
/// diagonalization. Zero diagonal entries with a nonzero row are repaired by
/// the standard hyperbolic-pair row/column addition, which stays rational.
pub fn inertia(s: &RMatrix) -> Result<(usize, usize, usize), String> {
    if !s.is_symmetric() {
        return Err("inertia requires a symmetric matrix".to_string());
    }
    let n = s.rows();
    let mut a = s.clone();
    let mut p = 0;
    let mut q = 0;
    let mut z = 0;
    let mut k = 0;
    while k < n {
        if a[(k, k)].is_zero() {
            // try to find a later nonzero diagonal entry to swap in
            let mut swapped = false;
            for j in (k + 1)..n {
                if !a[(j, j)].is_zero() {
                    sym_swap(&mut a, k, j);
                    swapped = true;
                    break;
                }
            }
            if !swapped {
                // all remaining diagonal entries vanish; look for an
                // off-diagonal hyperbolic partner
                let mut partner = None;
                for j in (k + 1)..n {
                    if !a[(k, j)].is_zero() {
                        partner = Some(j);
                        break;
                    }
                }
                match partner {
                    Some(j) => {
                        // row/col k += row/col j turns a(k,k) into 2 a(k,j)
                        sym_add(&mut a, k, j);
                    }
                    None => {
                        z += 1;
                        k += 1;
                        continue;
                    }
                }
            }
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        for i in (k + 1)..n {
            if !a[(i, k)].is_zero() {
                let f = &a[(i, k)] / &pivot;
                // row_i -= f*row_k; col_i -= f*col_k
                for j in 0..n {
                    let nv = &a[(i, j)] - &f * &a[(k, j)];
                    a[(i, j)] = nv;
                }
                for j in 0..n {
                    let nv = &a[(j, i)] - &f * &a[(j, k)];
                    a[(j, i)] = nv;
                }
            }
        }
        k += 1;
    }
    Ok((p, q, z))
}

fn sym_swap(a: &mut RMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let x = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = x;
    }
    for r in 0..n {
        let x = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = x;
    }
}

fn sym_add(a: &mut RMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = &a[(i, c)] + &a[(j, c)];
        a[(i, c)] = v;
    }
    for r in 0..n {
        let v = &a[(r, i)] + &a[(r, j)];
        a[(r, i)] = v;
    }
}

/// Dot product of coordinate vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `a + b` componentwise.
pub fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b` componentwise.
pub fn vsub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `c * a` componentwise.
pub fn vscale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn vzero(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn is_vzero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Standard basis vector `e_i` in dimension `n`.
pub fn basis_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vzero(n);
    v[i] = rint(1);
    v
}

//! Derivation-space linear algebra: `Der(A)`, skew derivations, inner
//! derivations, the second-cohomology dimension of a quadratic Lie algebra
//! (skew derivations modulo inner ones), and recovery of inner-derivation
//! preimages.

use crate::algebra::{Algebra, StructuralKind};
use crate::bilinear::Metric;
use crate::error::{Error, Result};
use crate::exactlin::{rref_solve, vzero, RMatrix, Subspace};
use num::Zero;

/// Derivation-related subspaces of `End(A)`, flattened row-major into
/// coordinates of dimension `n²`.
#[derive(Clone, Debug)]
pub struct DerivationSpaces {
    pub der: Subspace,
    pub skew_der: Option<Subspace>,
    pub inner: Option<Subspace>,
    /// `dim skewDer - dim(skewDer ∩ Inner)`, when the algebra is Lie and a
    /// metric was supplied.
    pub h2_dim: Option<usize>,
}

/// Solves the derivation condition `D(ab) = D(a)b + aD(b)` as a linear
/// system on matrix space; optionally intersects with `so(m)` and the span
/// of the `ad` operators.
pub fn derivation_spaces(a: &Algebra, m: Option<&Metric>) -> Result<DerivationSpaces> {
    let n = a.dim();
    if let Some(m) = m {
        if m.dim() != n {
            return Err(Error::DimensionMismatch(
                "metric does not match algebra".to_string(),
            ));
        }
    }
    let idx = |r: usize, c: usize| r * n + c;
    // rows: one equation per (i, j, k); unknowns: D[r][c]
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vzero(n * n);
                // D(e_i e_j)_k = sum_l sc[i][j][l] D[k][l]
                for l in 0..n {
                    if !a.sc()[i][j][l].is_zero() {
                        row[idx(k, l)] += &a.sc()[i][j][l];
                    }
                }
                // -(D e_i . e_j)_k = -sum_l D[l][i] sc[l][j][k]
                for l in 0..n {
                    if !a.sc()[l][j][k].is_zero() {
                        row[idx(l, i)] -= &a.sc()[l][j][k];
                    }
                }
                // -(e_i . D e_j)_k = -sum_l D[l][j] sc[i][l][k]
                for l in 0..n {
                    if !a.sc()[i][l][k].is_zero() {
                        row[idx(l, j)] -= &a.sc()[i][l][k];
                    }
                }
                rows.push(row);
            }
        }
    }
    let der = if rows.is_empty() {
        Subspace::full(n * n)
    } else {
        rref_solve(&RMatrix::from_rows(rows), None)
            .map_err(Error::Parse)?
            .kernel
    };

    let skew_der = match m {
        Some(m) => {
            // so(m): (mD)^T = -mD, i.e. per (r, c): sum_l m[r][l]D[l][c] + m[c][l]D[l][r] = 0
            let mut rows = Vec::new();
            for r in 0..n {
                for c in r..n {
                    let mut row = vzero(n * n);
                    for l in 0..n {
                        if !m.matrix()[(r, l)].is_zero() {
                            row[idx(l, c)] += &m.matrix()[(r, l)];
                        }
                        if !m.matrix()[(c, l)].is_zero() {
                            row[idx(l, r)] += &m.matrix()[(c, l)];
                        }
                    }
                    rows.push(row);
                }
            }
            let so = rref_solve(&RMatrix::from_rows(rows), None)
                .map_err(Error::Parse)?
                .kernel;
            Some(der.intersect(&so))
        }
        None => None,
    };

    let is_lie = a.is_lie();
    let inner = if is_lie {
        let rows = (0..n).map(|i| a.left_op_basis(i).flatten()).collect();
        Some(Subspace::from_rows(n * n, rows))
    } else {
        None
    };

    let h2_dim = match (&skew_der, &inner) {
        (Some(sd), Some(inn)) => Some(sd.dim() - sd.intersect(inn).dim()),
        _ => None,
    };

    Ok(DerivationSpaces {
        der,
        skew_der,
        inner,
        h2_dim,
    })
}

/// Solves `ad_{U(X_i)} = F(X_i)` columnwise for a Lie algebra with trivial
/// center; the solution is unique. Returns `U` as a matrix from the index
/// space of `f` into `A`.
pub fn find_u(a: &Algebra, f: &[RMatrix]) -> Result<RMatrix> {
    let n = a.dim();
    if !a.is_lie() {
        return Err(Error::NotLie("find_u needs a Lie algebra".to_string()));
    }
    if !a.structural_subspace(StructuralKind::Zl).is_zero() {
        return Err(Error::ConstraintViolated(
            "find_u needs a trivial center".to_string(),
        ));
    }
    for m in f {
        if m.rows() != n || m.cols() != n {
            return Err(Error::ShapeMismatch(
                "F operators must act on A".to_string(),
            ));
        }
    }
    // column i of the big matrix = flatten(ad_{e_i})
    let mut big = RMatrix::zeros(n * n, n);
    for i in 0..n {
        let ad = a.left_op_basis(i);
        let flat = ad.flatten();
        for (r, v) in flat.into_iter().enumerate() {
            big[(r, i)] = v;
        }
    }
    let mut out = RMatrix::zeros(n, f.len());
    for (j, m) in f.iter().enumerate() {
        let rhs = m.flatten();
        let res = rref_solve(&big, Some(&rhs)).map_err(Error::Parse)?;
        match res.particular {
            Some(x) => {
                for (r, v) in x.into_iter().enumerate() {
                    out[(r, j)] = v;
                }
            }
            None => {
                return Err(Error::NoSolution(format!(
                    "operator {} is not an inner derivation",
                    j + 1
                )))
            }
        }
    }
    Ok(out)
}

//! Symmetric bilinear forms, metrics, invariance notions and Killing forms.
//!
//! Three invariance notions live here: L-invariance `S(u*v,w) + S(v,u*w) = 0`,
//! R-invariance `S(u*v,w) + S(u,w*v) = 0`, and associativity
//! `S(u*v,w) = S(u,v*w)`. The two trace forms are
//! `B(u,v) = tr(L_u L_v)` and `K(u,v) = -1/2 (tr(L_u R_v) + tr(L_v R_u))`;
//! `K` pulls back from the Killing form of the quotient Lie algebra, which is
//! what makes the Cartan-style criteria work on left Leibniz algebras.

use crate::algebra::{Algebra, CheckResult, IdentityKind};
use crate::error::{Error, Result};
use crate::exactlin::{basis_vec, inertia, rat, rref_solve, RMatrix, Rat, Subspace};
use num::Zero;

/// Symmetric bilinear form; degeneracy allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    dim: usize,
    mat: RMatrix,
}

impl BilForm {
    pub fn new(mat: RMatrix) -> Result<Self> {
        if !mat.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilForm {
            dim: mat.rows(),
            mat,
        })
    }

    pub fn zero(dim: usize) -> Self {
        BilForm {
            dim,
            mat: RMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.mat
    }

    pub fn apply(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mv = self.mat.mul_vec(v);
        crate::exactlin::dot(u, &mv)
    }

    /// Radical `ker S = {u : S(u, .) = 0}`.
    pub fn kernel(&self) -> Subspace {
        rref_solve(&self.mat, None).expect("kernel").kernel
    }

    pub fn inertia(&self) -> (usize, usize, usize) {
        inertia(&self.mat).expect("symmetric by construction")
    }

    /// `{u : S(u,v) = 0 for all v in V}`; with `V` the full space this is
    /// the kernel of `S`.
    pub fn orthogonal(&self, v: &Subspace) -> Result<Subspace> {
        if v.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(
                "subspace ambient does not match form".to_string(),
            ));
        }
        if v.is_zero() {
            return Ok(Subspace::full(self.dim));
        }
        let m = v.basis().mul(&self.mat);
        Ok(rref_solve(&m, None).expect("kernel").kernel)
    }
}

/// Nondegenerate symmetric form with its inertia cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    form: BilForm,
    inertia: (usize, usize),
    inverse: RMatrix,
}

impl Metric {
    pub fn new(mat: RMatrix) -> Result<Self> {
        let form = BilForm::new(mat)?;
        let kernel = form.kernel();
        if !kernel.is_zero() {
            return Err(Error::Degenerate {
                kernel_dim: kernel.dim(),
                kernel_basis: kernel.basis_vectors(),
            });
        }
        let inverse = form.matrix().inverse().expect("nondegenerate");
        let (p, q, z) = form.inertia();
        debug_assert_eq!(z, 0);
        Ok(Metric {
            form,
            inertia: (p, q),
            inverse,
        })
    }

    pub fn euclidean(dim: usize) -> Self {
        Metric::new(RMatrix::identity(dim)).expect("identity is nondegenerate")
    }

    /// Diagonal metric from nonzero entries.
    pub fn diagonal(entries: &[Rat]) -> Result<Self> {
        let n = entries.len();
        let mut m = RMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        Metric::new(m)
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn form(&self) -> &BilForm {
        &self.form
    }

    pub fn matrix(&self) -> &RMatrix {
        self.form.matrix()
    }

    pub fn inverse(&self) -> &RMatrix {
        &self.inverse
    }

    pub fn inertia(&self) -> (usize, usize) {
        self.inertia
    }

    pub fn apply(&self, u: &[Rat], v: &[Rat]) -> Rat {
        self.form.apply(u, v)
    }

    pub fn orthogonal(&self, v: &Subspace) -> Subspace {
        self.form.orthogonal(v).expect("dims agree")
    }

    /// Metric adjoint `M* = m^{-1} M^T m`.
    pub fn adjoint(&self, op: &RMatrix) -> RMatrix {
        op.metric_adjoint(self.matrix(), &self.inverse)
    }

    pub fn is_skew(&self, op: &RMatrix) -> bool {
        self.adjoint(op).add(op).is_zero()
    }

    /// Direct orthogonal sum of two metrics.
    pub fn direct_sum(&self, other: &Metric) -> Metric {
        let n = self.dim() + other.dim();
        let mut m = RMatrix::zeros(n, n);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                m[(i, j)] = self.matrix()[(i, j)].clone();
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                m[(self.dim() + i, self.dim() + j)] = other.matrix()[(i, j)].clone();
            }
        }
        Metric::new(m).expect("block sum of nondegenerate metrics")
    }
}

/// An algebra carrying a metric.
#[derive(Clone, Debug)]
pub struct MetricAlgebra {
    pub algebra: Algebra,
    pub metric: Metric,
}

impl MetricAlgebra {
    pub fn new(algebra: Algebra, metric: Metric) -> Result<Self> {
        if algebra.dim() != metric.dim() {
            return Err(Error::DimensionMismatch(format!(
                "algebra dimension {} vs metric dimension {}",
                algebra.dim(),
                metric.dim()
            )));
        }
        Ok(MetricAlgebra { algebra, metric })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariance {
    L,
    R,
    Assoc,
}

impl std::fmt::Display for Invariance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Invariance::L => write!(f, "L"),
            Invariance::R => write!(f, "R"),
            Invariance::Assoc => write!(f, "assoc"),
        }
    }
}

/// Exhaustive invariance check over basis triples; the witness carries the
/// first failing triple and the scalar defect.
pub fn check_invariance(alg: &Algebra, s: &BilForm, kind: Invariance) -> Result<CheckResult> {
    if alg.dim() != s.dim() {
        return Err(Error::DimensionMismatch(format!(
            "algebra dimension {} vs form dimension {}",
            alg.dim(),
            s.dim()
        )));
    }
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ek = basis_vec(n, k);
                let ej = basis_vec(n, j);
                let ei = basis_vec(n, i);
                let defect = match kind {
                    Invariance::L => {
                        // S(ei*ej, ek) + S(ej, ei*ek)
                        s.apply(alg.basis_product(i, j), &ek)
                            + s.apply(&ej, alg.basis_product(i, k))
                    }
                    Invariance::R => {
                        // S(ei*ej, ek) + S(ei, ek*ej)
                        s.apply(alg.basis_product(i, j), &ek)
                            + s.apply(&ei, alg.basis_product(k, j))
                    }
                    Invariance::Assoc => {
                        // S(ei*ej, ek) - S(ei, ej*ek)
                        s.apply(alg.basis_product(i, j), &ek)
                            - s.apply(&ei, alg.basis_product(j, k))
                    }
                };
                if !defect.is_zero() {
                    return Ok(CheckResult::fail(vec![i, j, k], vec![defect]));
                }
            }
        }
    }
    Ok(CheckResult::pass())
}

pub fn is_invariant(alg: &Algebra, m: &Metric, kind: Invariance) -> bool {
    check_invariance(alg, m.form(), kind)
        .map(|r| r.passed)
        .unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KillingKind {
    B,
    K,
}

/// The trace forms `B` and `K` as exact contractions of the structure tensor.
pub fn killing(alg: &Algebra, kind: KillingKind) -> BilForm {
    let n = alg.dim();
    let left: Vec<RMatrix> = (0..n).map(|i| alg.left_op_basis(i)).collect();
    let mut m = RMatrix::zeros(n, n);
    match kind {
        KillingKind::B => {
            for i in 0..n {
                for j in i..n {
                    let t = trace_product(&left[i], &left[j]);
                    m[(i, j)] = t.clone();
                    m[(j, i)] = t;
                }
            }
        }
        KillingKind::K => {
            let right: Vec<RMatrix> = (0..n).map(|i| alg.right_op_basis(i)).collect();
            let half = rat(-1, 2);
            for i in 0..n {
                for j in i..n {
                    let t = (trace_product(&left[i], &right[j])
                        + trace_product(&left[j], &right[i]))
                        * &half;
                    m[(i, j)] = t.clone();
                    m[(j, i)] = t;
                }
            }
        }
    }
    BilForm::new(m).expect("trace forms are symmetric")
}

fn trace_product(a: &RMatrix, b: &RMatrix) -> Rat {
    // tr(A B) without forming the product
    let n = a.rows();
    let mut acc = Rat::zero();
    for i in 0..n {
        for k in 0..n {
            if !a[(i, k)].is_zero() && !b[(k, i)].is_zero() {
                acc += &a[(i, k)] * &b[(k, i)];
            }
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanVerdict {
    pub semisimple: bool,
    pub solvable: bool,
}

/// Cartan-style criteria through the form `K`: semisimple iff `ker K` equals
/// the Leibniz ideal, solvable iff `g*g` is contained in `ker K`.
/// Requires a left Leibniz algebra.
pub fn cartan(alg: &Algebra) -> Result<CartanVerdict> {
    if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
        return Err(Error::NotLeftLeibniz);
    }
    let k = killing(alg, KillingKind::K);
    let ker = k.kernel();
    let leib = alg.leib_ideal();
    let full = Subspace::full(alg.dim());
    let gg = alg.subspace_product(&full, &full)?;
    Ok(CartanVerdict {
        semisimple: ker.equals(&leib),
        solvable: ker.contains(&gg),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureClass {
    pub inertia: (usize, usize),
    pub euclidean: bool,
    pub lorentzian: bool,
}

pub fn signature_class(m: &Metric) -> SignatureClass {
    let (p, q) = m.inertia();
    SignatureClass {
        inertia: (p, q),
        euclidean: q == 0,
        lorentzian: q == 1 && p == m.dim() - 1,
    }
}

/// Quotient by the Leibniz ideal; the result is the underlying Lie algebra.
pub fn lie_quotient(alg: &Algebra) -> Result<(Algebra, RMatrix)> {
    if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
        return Err(Error::NotLeftLeibniz);
    }
    alg.quotient(&alg.leib_ideal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{exem1, sl2, Algebra};
    use crate::exactlin::rint;

    #[test]
    fn exem1_b_and_k() {
        let alg = exem1();
        let b = killing(&alg, KillingKind::B);
        assert_eq!(b.matrix(), &RMatrix::from_i64(&[&[0, 0], &[0, 1]]));
        let k = killing(&alg, KillingKind::K);
        assert!(k.matrix().is_zero());
    }

    #[test]
    fn abelian_b_k_zero() {
        let alg = Algebra::abelian(3);
        assert!(killing(&alg, KillingKind::B).matrix().is_zero());
        assert!(killing(&alg, KillingKind::K).matrix().is_zero());
    }

    #[test]
    fn exem1_kernel_of_b() {
        let b = killing(&exem1(), KillingKind::B);
        let ker = b.kernel();
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains_vec(&basis_vec(2, 0)));
    }

    #[test]
    fn orthogonal_euclidean_axis() {
        let m = Metric::euclidean(2);
        let x = Subspace::from_rows(2, vec![basis_vec(2, 0)]);
        let perp = m.orthogonal(&x);
        assert_eq!(perp.dim(), 1);
        assert!(perp.contains_vec(&basis_vec(2, 1)));
    }

    #[test]
    fn orthogonal_isotropic_line() {
        // exem1 with the neutral form <e1,e2>=1: span{e1} is its own orthogonal
        let m = Metric::new(RMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let l = Subspace::from_rows(2, vec![basis_vec(2, 0)]);
        let perp = m.orthogonal(&l);
        assert!(perp.equals(&l));
    }

    #[test]
    fn cartan_verdicts() {
        let c = cartan(&exem1()).unwrap();
        assert!(c.solvable);
        assert!(!c.semisimple);
        let ab = cartan(&Algebra::abelian(2)).unwrap();
        assert!(ab.solvable);
        assert!(!ab.semisimple);
        let s = cartan(&sl2()).unwrap();
        assert!(s.semisimple);
        assert!(!s.solvable);
    }

    #[test]
    fn cartan_requires_left_leibniz() {
        // e1*e1 = e1 is not left Leibniz
        let alg = Algebra::from_products_i64(1, &[(0, 0, 0, 1)]);
        assert!(matches!(cartan(&alg), Err(Error::NotLeftLeibniz)));
    }

    #[test]
    fn signature_classes() {
        let e = Metric::euclidean(3);
        let sc = signature_class(&e);
        assert!(sc.euclidean && !sc.lorentzian);
        let mut lm = RMatrix::identity(4);
        lm[(3, 3)] = rint(-1);
        let l = signature_class(&Metric::new(lm).unwrap());
        assert!(l.lorentzian && !l.euclidean);
        // two hyperbolic planes: (2,2), neither
        let mut h = RMatrix::zeros(4, 4);
        h[(0, 2)] = rint(1);
        h[(2, 0)] = rint(1);
        h[(1, 3)] = rint(1);
        h[(3, 1)] = rint(1);
        let n = signature_class(&Metric::new(h).unwrap());
        assert_eq!(n.inertia, (2, 2));
        assert!(!n.euclidean && !n.lorentzian);
    }

    #[test]
    fn metric_rejects_degenerate() {
        let m = RMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        match Metric::new(m) {
            Err(Error::Degenerate { kernel_dim, .. }) => assert_eq!(kernel_dim, 1),
            other => panic!("expected degenerate error, got {other:?}"),
        }
    }

    #[test]
    fn lie_quotient_of_exem1() {
        let (q, _) = lie_quotient(&exem1()).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.is_lie());
    }

    #[test]
    fn invariance_zero_form_passes_all() {
        let alg = exem1();
        let z = BilForm::zero(2);
        for kind in [Invariance::L, Invariance::R, Invariance::Assoc] {
            assert!(check_invariance(&alg, &z, kind).unwrap().passed);
        }
    }
}

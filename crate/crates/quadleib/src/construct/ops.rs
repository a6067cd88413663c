//! The remaining constructors: double extension, cotangent-style
//! constructions, metrised symmetric Leibniz algebras, the rank-one
//! Lorentz-type construction, the nondegenerate-Leibniz construction, and
//! basis transport.

use crate::algebra::Algebra;
use crate::bilinear::{check_invariance, Invariance, Metric, MetricAlgebra};
use crate::construct::{natural_metric, Tensor3};
use crate::error::{Error, Result};
use crate::exactlin::{basis_vec, is_vzero, rint, rref_solve, vzero, RMatrix, Rat, Subspace};
use num::Zero;

fn require_lie(alg: &Algebra) -> Result<()> {
    let check = alg.check_identity(crate::algebra::IdentityKind::Lie);
    match check.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotLie(format!(
            "defect at basis tuple {:?}",
            w.indices.iter().map(|i| i + 1).collect::<Vec<_>>()
        ))),
    }
}

fn require_quadratic_lie(alg: &Algebra, m: &Metric) -> Result<()> {
    require_lie(alg).map_err(|e| Error::NotQuadraticLie(e.to_string()))?;
    let inv = check_invariance(alg, m.form(), Invariance::L)?;
    if !inv.passed {
        return Err(Error::NotQuadraticLie(
            "metric is not invariant".to_string(),
        ));
    }
    Ok(())
}

/// `Δ(Ω)(X_i, X_j)(X_k, X_l)` on all basis 4-tuples, with the coadjoint
/// action on 2-forms given by `ad*_X ω(Y,Z) = -ω([X,Y],Z) - ω(Y,[X,Z])`.
/// Requires a Lie algebra and an `Ω` tensor skew in its last two slots.
pub fn delta_omega(h: &Algebra, big_omega: &Tensor3) -> Result<Vec<Vec<Vec<Vec<Rat>>>>> {
    require_lie(h)?;
    let k = h.dim();
    if big_omega.len() != k
        || big_omega
            .iter()
            .any(|m| m.len() != k || m.iter().any(|v| v.len() != k))
    {
        return Err(Error::ShapeMismatch(format!(
            "Omega must have shape {k}x{k}x{k}"
        )));
    }
    let omega_of = |v: &[Rat], z: usize, t: usize| -> Rat {
        let mut acc = Rat::zero();
        for (u, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &big_omega[u][z][t];
            }
        }
        acc
    };
    let ad_star = |x: usize, y: usize, z: usize, t: usize| -> Rat {
        // ad*_{X_x} Omega(X_y) evaluated at (X_z, X_t)
        let mut acc = Rat::zero();
        for (u, c) in h.basis_product(x, z).iter().enumerate() {
            if !c.is_zero() {
                acc -= c * &big_omega[y][u][t];
            }
        }
        for (u, c) in h.basis_product(x, t).iter().enumerate() {
            if !c.is_zero() {
                acc -= c * &big_omega[y][z][u];
            }
        }
        acc
    };
    let mut out = vec![vec![vec![vzero(k); k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            for z in 0..k {
                for t in 0..k {
                    out[i][j][z][t] = ad_star(i, j, z, t)
                        - ad_star(j, i, z, t)
                        - omega_of(h.basis_product(i, j), z, t);
                }
            }
        }
    }
    Ok(out)
}

pub fn delta_is_zero(delta: &[Vec<Vec<Vec<Rat>>>]) -> bool {
    delta
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .all(|x| x.is_zero())
}

/// Double extension `ℝe ⊕ h ⊕ ℝē` of a quadratic Lie algebra by a skew
/// derivation: `[ē,u] = Au`, `[u,v] = <Au,v> e + [u,v]_h`, metric
/// `2xx̄ + <u,u>_h`. Basis order is `e, h-basis, ē`.
pub fn double_extension(h: &Algebra, mh: &Metric, amap: &RMatrix) -> Result<(Algebra, Metric)> {
    if mh.dim() != h.dim() {
        return Err(Error::DimensionMismatch(
            "metric does not match algebra".to_string(),
        ));
    }
    require_quadratic_lie(h, mh)?;
    let n = h.dim();
    if amap.rows() != n || amap.cols() != n {
        return Err(Error::ShapeMismatch("Amap must act on h".to_string()));
    }
    if !mh.is_skew(amap) {
        return Err(Error::NotSkew("Amap is not in so(h)".to_string()));
    }
    // A must also derive the bracket for the extension to close up as Lie
    for i in 0..n {
        for j in 0..n {
            let lhs = amap.mul_vec(h.basis_product(i, j));
            let t1 = h.product(&amap.col_vec(i), &basis_vec(n, j))?;
            let t2 = h.product(&basis_vec(n, i), &amap.col_vec(j))?;
            let d = crate::exactlin::vsub(&crate::exactlin::vsub(&lhs, &t1), &t2);
            if !is_vzero(&d) {
                return Err(Error::NotDerivation(format!(
                    "Amap fails the derivation rule on (e{}, e{})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let dim = n + 2;
    // index 0 = e, 1..=n = h, n+1 = ebar
    let mut sc = vec![vec![vzero(dim); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            let mut prod = vzero(dim);
            prod[0] = mh.apply(&amap.col_vec(i), &basis_vec(n, j));
            for (t, c) in h.basis_product(i, j).iter().enumerate() {
                prod[1 + t] = c.clone();
            }
            sc[1 + i][1 + j] = prod;
        }
    }
    for i in 0..n {
        let au = amap.col_vec(i);
        let mut prod = vzero(dim);
        for (t, c) in au.iter().enumerate() {
            prod[1 + t] = c.clone();
        }
        sc[dim - 1][1 + i] = prod.clone();
        sc[1 + i][dim - 1] = prod.iter().map(|c| -c).collect();
    }
    let mut names = vec!["e".to_string()];
    names.extend(h.basis_names().iter().cloned());
    names.push("ebar".to_string());
    let alg = Algebra::new(dim, names, sc)?;
    let mut m = RMatrix::zeros(dim, dim);
    m[(0, dim - 1)] = rint(1);
    m[(dim - 1, 0)] = rint(1);
    for i in 0..n {
        for j in 0..n {
            m[(1 + i, 1 + j)] = mh.matrix()[(i, j)].clone();
        }
    }
    Ok((alg, Metric::new(m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotangentKind {
    /// `(X+α)(Y+β) = [X,Y] + ad*_X β + Ω(X)♭(Y)` with `Δ(Ω) = 0`.
    CorZero,
    /// `(X+α)(Y+β) = [X,Y] + ad*_X β`.
    CoadjointL,
    /// `(X+α)(Y+β) = ad*_X β`; requires a 2-step nilpotent Lie algebra.
    TwoStepR,
}

/// Algebra on `g ⊕ g*` with the canonical neutral metric.
pub fn construct_cotangent(
    kind: CotangentKind,
    g: &Algebra,
    big_omega: Option<&Tensor3>,
) -> Result<(Algebra, Metric)> {
    require_lie(g)?;
    let n = g.dim();
    let omega = match (kind, big_omega) {
        (CotangentKind::CorZero, Some(o)) => {
            let delta = delta_omega(g, o)?;
            if !delta_is_zero(&delta) {
                return Err(Error::NotCocycle);
            }
            Some(o)
        }
        (CotangentKind::CorZero, None) => None,
        _ => None,
    };
    if kind == CotangentKind::TwoStepR {
        // ad_{[X,Y]} = 0 for all pairs
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let br = g.basis_product(i, j);
                    let mut d = vzero(n);
                    for (t, c) in br.iter().enumerate() {
                        if !c.is_zero() {
                            for (s, e) in g.basis_product(t, l).iter().enumerate() {
                                d[s] += c * e;
                            }
                        }
                    }
                    if !is_vzero(&d) {
                        return Err(Error::NotTwoStepNilpotent);
                    }
                }
            }
        }
    }
    let dim = 2 * n;
    let mut sc = vec![vec![vzero(dim); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            let mut prod = vzero(dim);
            if kind != CotangentKind::TwoStepR {
                for (t, c) in g.basis_product(i, j).iter().enumerate() {
                    prod[t] = c.clone();
                }
            }
            if let Some(o) = omega {
                prod[n..2 * n].clone_from_slice(&o[i][j]);
            }
            sc[i][j] = prod;
            // X_i * beta_j = ad*_{X_i} beta_j
            let mut prod = vzero(dim);
            for t in 0..n {
                prod[n + t] = -g.basis_product(i, t)[j].clone();
            }
            sc[i][n + j] = prod;
        }
    }
    let mut names: Vec<String> = g.basis_names().to_vec();
    names.extend(g.basis_names().iter().map(|s| format!("{s}*")));
    let alg = Algebra::new(dim, names, sc)?;
    Ok((alg, natural_metric(n, None)))
}

/// Cocycle/coboundary test for a pair of maps `h -> Λ²h*`: reports whether
/// each is a 1-cocycle, and solves `Ω₂ - Ω₁ = ad* ω` for a 2-form witness.
#[derive(Clone, Debug)]
pub struct CoboundaryReport {
    pub first_is_cocycle: bool,
    pub second_is_cocycle: bool,
    /// Skew matrix of the 2-form `ω` when the difference is a coboundary.
    pub witness: Option<RMatrix>,
}

pub fn cocycle_coboundary(
    h: &Algebra,
    omega1: &Tensor3,
    omega2: &Tensor3,
) -> Result<CoboundaryReport> {
    let d1 = delta_omega(h, omega1)?;
    let d2 = delta_omega(h, omega2)?;
    let k = h.dim();
    // unknowns: w[p][q] for p < q
    let unknowns: Vec<(usize, usize)> = (0..k)
        .flat_map(|p| ((p + 1)..k).map(move |q| (p, q)))
        .collect();
    let coeff_of = |p: usize, q: usize, w: &mut Vec<Rat>, c: &Rat| {
        // omega(X_p, X_q) with p, q arbitrary maps onto the p<q unknowns
        use std::cmp::Ordering;
        match p.cmp(&q) {
            Ordering::Less => {
                let idx = unknowns.iter().position(|&u| u == (p, q)).unwrap();
                w[idx] += c;
            }
            Ordering::Greater => {
                let idx = unknowns.iter().position(|&u| u == (q, p)).unwrap();
                w[idx] -= c;
            }
            Ordering::Equal => {}
        }
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in (j + 1)..k {
                // (ad*_{X_i} w)(X_j, X_l) = -w([X_i,X_j], X_l) - w(X_j, [X_i,X_l])
                let mut row = vzero(unknowns.len());
                for (t, c) in h.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        let neg = -c.clone();
                        coeff_of(t, l, &mut row, &neg);
                    }
                }
                for (t, c) in h.basis_product(i, l).iter().enumerate() {
                    if !c.is_zero() {
                        let neg = -c.clone();
                        coeff_of(j, t, &mut row, &neg);
                    }
                }
                rows.push(row);
                rhs.push(&omega2[i][j][l] - &omega1[i][j][l]);
            }
        }
    }
    let witness = if unknowns.is_empty() {
        if rhs.iter().all(|x| x.is_zero()) {
            Some(RMatrix::zeros(k, k))
        } else {
            None
        }
    } else {
        let m = RMatrix::from_rows(rows);
        let res = rref_solve(&m, Some(&rhs)).map_err(Error::Parse)?;
        res.particular.map(|x| {
            let mut w = RMatrix::zeros(k, k);
            for (idx, &(p, q)) in unknowns.iter().enumerate() {
                w[(p, q)] = x[idx].clone();
                w[(q, p)] = -x[idx].clone();
            }
            w
        })
    };
    Ok(CoboundaryReport {
        first_is_cocycle: delta_is_zero(&d1),
        second_is_cocycle: delta_is_zero(&d2),
        witness,
    })
}

/// Metrised commutative symmetric Leibniz algebra on `h ⊕ A ⊕ h*`:
/// `h ∘ h ⊆ h*` via a symmetric 3-form `T`, all other products zero.
pub fn construct_metrised_commutative(
    dim_h: usize,
    ma: Option<&Metric>,
    t: &Tensor3,
) -> Result<(Algebra, Metric)> {
    let k = dim_h;
    if t.len() != k
        || t.iter()
            .any(|m| m.len() != k || m.iter().any(|v| v.len() != k))
    {
        return Err(Error::ShapeMismatch(format!("T must be {k}x{k}x{k}")));
    }
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if t[i][j][l] != t[j][i][l] || t[i][j][l] != t[i][l][j] {
                    return Err(Error::ConstraintViolated(
                        "T is not a symmetric 3-form".to_string(),
                    ));
                }
            }
        }
    }
    let n = ma.map_or(0, |m| m.dim());
    let dim = 2 * k + n;
    let mut sc = vec![vec![vzero(dim); dim]; dim];
    for i in 0..k {
        for j in 0..k {
            let mut prod = vzero(dim);
            for l in 0..k {
                prod[k + n + l] = t[i][j][l].clone();
            }
            sc[i][j] = prod;
        }
    }
    let mut names = Vec::new();
    for i in 0..k {
        names.push(format!("x{}", i + 1));
    }
    for i in 0..n {
        names.push(format!("a{}", i + 1));
    }
    for i in 0..k {
        names.push(format!("x{}*", i + 1));
    }
    Ok((Algebra::new(dim, names, sc)?, natural_metric(k, ma)))
}

/// Metrised symmetric Leibniz algebra from a quadratic Lie algebra: the
/// product is `x∘y = [x,y] + ω(x,y)` with `ω` the metric dual of a symmetric
/// 3-form `T` supported away from `I^⊥`, for a totally isotropic central `I`.
pub fn construct_metrised_from_quadratic(
    g: &Algebra,
    m: &Metric,
    isotropic: &Subspace,
    t: &Tensor3,
) -> Result<(Algebra, Metric)> {
    require_quadratic_lie(g, m)?;
    let n = g.dim();
    if isotropic.ambient_dim() != n {
        return Err(Error::DimensionMismatch("I has wrong ambient".to_string()));
    }
    if t.len() != n
        || t.iter()
            .any(|p| p.len() != n || p.iter().any(|v| v.len() != n))
    {
        return Err(Error::ShapeMismatch(format!("T must be {n}x{n}x{n}")));
    }
    let center = g.structural_subspace(crate::algebra::StructuralKind::Z);
    if !center.contains(isotropic) {
        return Err(Error::ConstraintViolated(
            "I is not contained in the center".to_string(),
        ));
    }
    let perp = m.orthogonal(isotropic);
    if !perp.contains(isotropic) {
        return Err(Error::ConstraintViolated(
            "I is not totally isotropic".to_string(),
        ));
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if t[i][j][l] != t[j][i][l] || t[i][j][l] != t[i][l][j] {
                    return Err(Error::ConstraintViolated(
                        "T is not a symmetric 3-form".to_string(),
                    ));
                }
            }
        }
    }
    // T(I^perp, ., .) = 0: by symmetry it is enough to test the first slot
    for v in perp.basis_vectors() {
        for j in 0..n {
            for l in 0..n {
                let mut acc = Rat::zero();
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * &t[i][j][l];
                    }
                }
                if !acc.is_zero() {
                    return Err(Error::ConstraintViolated(
                        "T does not vanish on I^perp".to_string(),
                    ));
                }
            }
        }
    }
    // omega(e_i, e_j) = m^{-1} T(e_i, e_j, .)
    let minv = m.inverse();
    let mut sc = g.sc().clone();
    for i in 0..n {
        for j in 0..n {
            let tij: Vec<Rat> = (0..n).map(|l| t[i][j][l].clone()).collect();
            let w = minv.mul_vec(&tij);
            if !isotropic.contains_vec(&w) {
                return Err(Error::ConstraintViolated(
                    "omega image escapes I".to_string(),
                ));
            }
            for l in 0..n {
                sc[i][j][l] += &w[l];
            }
        }
    }
    Ok((
        Algebra::new(n, g.basis_names().to_vec(), sc)?,
        Metric::new(m.matrix().clone())?,
    ))
}

/// Rank-one construction `ℝe ⊕ A ⊕ ℝē` over an L-quadratic left Leibniz
/// algebra: `ē∙ē = δ`, `a∙b = a∙_A b - <Ga,b> e`, `ē∙a = Fa - <δ,a> e`,
/// `a∙ē = Ga`. All compatibility conditions are checked by name.
pub fn construct_lorentz_l(
    a: &MetricAlgebra,
    f: &RMatrix,
    g: &RMatrix,
    delta: &[Rat],
) -> Result<(Algebra, Metric)> {
    let n = a.dim();
    if f.rows() != n || f.cols() != n || g.rows() != n || g.cols() != n || delta.len() != n {
        return Err(Error::ShapeMismatch(
            "F, G and delta must live on A".to_string(),
        ));
    }
    let fail = |name: &str, defect: Vec<Rat>| -> Error {
        Error::ConditionFailed {
            name: name.to_string(),
            defect,
        }
    };
    if !a.algebra.is_left_leibniz() {
        return Err(fail("A_left_leibniz", vec![]));
    }
    if !check_invariance(&a.algebra, a.metric.form(), Invariance::L)?.passed {
        return Err(fail("A_metric_L_invariant", vec![]));
    }
    if !a.metric.is_skew(f) {
        return Err(fail("F_skew", a.metric.adjoint(f).add(f).flatten()));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = f.mul_vec(a.algebra.basis_product(i, j));
            let t1 = a.algebra.product(&f.col_vec(i), &basis_vec(n, j))?;
            let t2 = a.algebra.product(&basis_vec(n, i), &f.col_vec(j))?;
            let d = crate::exactlin::vsub(&crate::exactlin::vsub(&lhs, &t1), &t2);
            if !is_vzero(&d) {
                return Err(fail("F_derivation", d));
            }
        }
    }
    let gd = g.mul_vec(delta);
    if !is_vzero(&gd) {
        return Err(fail("G_delta", gd));
    }
    let ld = a.algebra.left_op(delta)?;
    if !ld.is_zero() {
        return Err(fail("L_delta", ld.flatten()));
    }
    // Im(F+G) inside Z^l(A)
    let zl = a
        .algebra
        .structural_subspace(crate::algebra::StructuralKind::Zl);
    let fg = f.add(g);
    for i in 0..n {
        let col = fg.col_vec(i);
        if !zl.contains_vec(&col) {
            return Err(fail("im_F_plus_G_in_Zl", col));
        }
    }
    // [L_a, G] = R_{Ga} for all basis a
    for i in 0..n {
        let la = a.algebra.left_op_basis(i);
        let rga = a.algebra.right_op(&g.col_vec(i))?;
        let d = la.commutator(g).sub(&rga);
        if !d.is_zero() {
            return Err(fail("bracket_LaG", d.flatten()));
        }
    }
    let rdelta = a.algebra.right_op(delta)?;
    let d = f.commutator(g).sub(&rdelta);
    if !d.is_zero() {
        return Err(fail("FG_commutator_Rdelta", d.flatten()));
    }
    let d = f.mul(g).add(&g.mul(g)).sub(&rdelta);
    if !d.is_zero() {
        return Err(fail("FG_plus_G2_Rdelta", d.flatten()));
    }

    let dim = n + 2; // e, A, ebar
    let mut sc = vec![vec![vzero(dim); dim]; dim];
    // ebar * ebar = delta
    {
        let mut prod = vzero(dim);
        for (s, c) in delta.iter().enumerate() {
            prod[1 + s] = c.clone();
        }
        sc[dim - 1][dim - 1] = prod;
    }
    for i in 0..n {
        // ebar * a = Fa - <delta, a> e
        let mut prod = vzero(dim);
        for (s, c) in f.col_vec(i).iter().enumerate() {
            prod[1 + s] = c.clone();
        }
        prod[0] = -a.metric.apply(delta, &basis_vec(n, i));
        sc[dim - 1][1 + i] = prod;
        // a * ebar = Ga
        let mut prod = vzero(dim);
        for (s, c) in g.col_vec(i).iter().enumerate() {
            prod[1 + s] = c.clone();
        }
        sc[1 + i][dim - 1] = prod;
        for j in 0..n {
            // a * b = a *_A b - <Ga, b> e
            let mut prod = vzero(dim);
            for (s, c) in a.algebra.basis_product(i, j).iter().enumerate() {
                prod[1 + s] = c.clone();
            }
            prod[0] = -a.metric.apply(&g.col_vec(i), &basis_vec(n, j));
            sc[1 + i][1 + j] = prod;
        }
    }
    let mut names = vec!["e".to_string()];
    names.extend((1..=n).map(|i| format!("a{i}")));
    names.push("ebar".to_string());
    let alg = Algebra::new(dim, names, sc)?;
    let mut m = RMatrix::zeros(dim, dim);
    m[(0, dim - 1)] = rint(1);
    m[(dim - 1, 0)] = rint(1);
    for i in 0..n {
        for j in 0..n {
            m[(1 + i, 1 + j)] = a.metric.matrix()[(i, j)].clone();
        }
    }
    Ok((alg, Metric::new(m)?))
}

/// Nondegenerate-Leibniz construction `h ⊕ N`: a quadratic Lie algebra acts
/// on a pseudo-Euclidean space by skew operators, `N` multiplies to zero.
pub fn construct_nondeg_l(
    h: &MetricAlgebra,
    mn: &Metric,
    rho: &[RMatrix],
) -> Result<(Algebra, Metric)> {
    require_quadratic_lie(&h.algebra, &h.metric)?;
    let k = h.dim();
    let n = mn.dim();
    if rho.len() != k || rho.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::ShapeMismatch(format!(
            "rho must be {k} operators on N"
        )));
    }
    for (i, r) in rho.iter().enumerate() {
        if !mn.is_skew(r) {
            return Err(Error::NotSkew(format!("rho(e{}) is not in so(N)", i + 1)));
        }
    }
    // rho([X,Y]) = [rho(X), rho(Y)]
    for i in 0..k {
        for j in 0..k {
            let mut br = RMatrix::zeros(n, n);
            for (t, c) in h.algebra.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    br = br.add(&rho[t].scale(c));
                }
            }
            let d = rho[i].commutator(&rho[j]).sub(&br);
            if !d.is_zero() {
                return Err(Error::NotRepresentation(format!(
                    "rho fails on the bracket of (e{}, e{})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let dim = k + n;
    let mut sc = vec![vec![vzero(dim); dim]; dim];
    for i in 0..k {
        for j in 0..k {
            let mut prod = vzero(dim);
            for (t, c) in h.algebra.basis_product(i, j).iter().enumerate() {
                prod[t] = c.clone();
            }
            sc[i][j] = prod;
        }
        for j in 0..n {
            let mut prod = vzero(dim);
            for (t, c) in rho[i].col_vec(j).iter().enumerate() {
                prod[k + t] = c.clone();
            }
            sc[i][k + j] = prod;
        }
    }
    let mut names: Vec<String> = h.algebra.basis_names().to_vec();
    names.extend((1..=n).map(|i| format!("n{i}")));
    let alg = Algebra::new(dim, names, sc)?;
    Ok((alg, h.metric.direct_sum(mn)))
}

/// Pushforward of an algebra and metric along an invertible change of
/// basis: `u∘v = P^{-1}(Pu * Pv)`, `<u,v>' = <Pu, Pv>`.
pub fn transport(alg: &Algebra, m: &Metric, p: &RMatrix) -> Result<(Algebra, Metric)> {
    let new_alg = alg.transport(p)?;
    let new_m = p.transpose().mul(m.matrix()).mul(p);
    Ok((new_alg, Metric::new(new_m)?))
}

//! Core extraction and structural classification.
//!
//! For an L-quadratic left Leibniz algebra the core is built from
//! `I = Leib(g) ∩ Leib(g)^⊥`: the middle layer `A = I^⊥/I` inherits an
//! L-quadratic structure with nondegenerate Leibniz ideal, and `h = g/I^⊥`
//! is a Lie algebra. For an R-quadratic algebra `I = Leib(g)` (totally
//! isotropic), `A` is a quadratic Lie algebra and the `h` bracket is
//! `[π(u), π(v)] = -π(L_v^* u)`, which is 2-step nilpotent.
//!
//! Complements are chosen deterministically by pivot selection on RREF
//! bases, so reports are reproducible.

use crate::algebra::{Algebra, IdentityKind, SeriesKind, StructuralKind};
use crate::bilinear::{
    check_invariance, killing, lie_quotient, Invariance, KillingKind, Metric, MetricAlgebra,
};
use crate::error::{Error, Result};
use crate::exactlin::{basis_vec, is_vzero, vadd, vscale, vzero, RMatrix, Rat, Subspace};
use num::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::L => write!(f, "L"),
            Side::R => write!(f, "R"),
        }
    }
}

/// Structural facts recomputed (never assumed) during core extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreChecks {
    /// Left Leibniz for the L side, Lie for the R side.
    pub a_identity: bool,
    pub a_invariance: bool,
    /// L side only: `Leib(A)` nondegenerate.
    pub leib_a_nondegenerate: Option<bool>,
    /// L side only: `A = Leib(A) ⊥⊕ P` with `P` a quadratic Lie subalgebra.
    pub a_splits: Option<bool>,
    pub h_lie: bool,
    /// R side only: `[h,[h,h]] = 0`.
    pub h_two_step: Option<bool>,
    /// R side only: the bracket formula is independent of representatives.
    pub well_defined: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CoreResult {
    pub i: Subspace,
    pub a: MetricAlgebra,
    pub h: Algebra,
    /// Maps ambient coordinates to A coordinates (along the chosen
    /// complement decomposition `g = H ⊕ B ⊕ I`).
    pub proj_a: RMatrix,
    /// Maps ambient coordinates to h coordinates.
    pub proj_h: RMatrix,
    pub checks: CoreChecks,
}

fn invariance_for(side: Side) -> Invariance {
    match side {
        Side::L => Invariance::L,
        Side::R => Invariance::R,
    }
}

/// Extends `inner`'s basis to `outer` by greedily keeping the rows of
/// `outer`'s RREF basis that are independent of `inner`.
fn complement_rows(inner: &Subspace, outer: &Subspace) -> Vec<Vec<Rat>> {
    let mut acc = inner.clone();
    let mut rows = Vec::new();
    for r in outer.basis_vectors() {
        if !acc.contains_vec(&r) {
            acc = acc.sum(&Subspace::from_rows(outer.ambient_dim(), vec![r.clone()]));
            rows.push(r);
        }
    }
    rows
}

pub fn core_extract(alg: &Algebra, m: &Metric, side: Side) -> Result<CoreResult> {
    let n = alg.dim();
    if m.dim() != n {
        return Err(Error::DimensionMismatch(
            "metric does not match algebra".to_string(),
        ));
    }
    if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
        return Err(Error::NotLeftLeibniz);
    }
    if !check_invariance(alg, m.form(), invariance_for(side))?.passed {
        return Err(Error::InvarianceMismatch(format!(
            "metric is not {side}-invariant"
        )));
    }
    let leib = alg.leib_ideal();
    let leib_perp = m.orthogonal(&leib);
    let i = match side {
        Side::L => leib.intersect(&leib_perp),
        Side::R => leib.clone(),
    };
    let i_perp = m.orthogonal(&i);

    // g = H ⊕ B ⊕ I with H the standard vectors at non-pivot coordinates of
    // I^⊥ and B a pivot-greedy complement of I inside I^⊥.
    let h_coords = i_perp.complement_coords();
    let b_rows = complement_rows(&i, &i_perp);
    let dim_h = h_coords.len();
    let dim_a = b_rows.len();
    let dim_i = i.dim();
    debug_assert_eq!(dim_h + dim_a + dim_i, n);

    let mut s_rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for &c in &h_coords {
        s_rows.push(basis_vec(n, c));
    }
    s_rows.extend(b_rows.iter().cloned());
    s_rows.extend(i.basis_vectors());
    let s = RMatrix::from_rows(s_rows);
    let coords = s
        .transpose()
        .inverse()
        .expect("H, B, I form a basis of the ambient space");
    let mut proj_h = RMatrix::zeros(dim_h, n);
    let mut proj_a = RMatrix::zeros(dim_a, n);
    for r in 0..dim_h {
        for c in 0..n {
            proj_h[(r, c)] = coords[(r, c)].clone();
        }
    }
    for r in 0..dim_a {
        for c in 0..n {
            proj_a[(r, c)] = coords[(dim_h + r, c)].clone();
        }
    }

    // A: products of B representatives, projected to B along I
    let mut a_sc = vec![vec![vzero(dim_a); dim_a]; dim_a];
    for (ia, u) in b_rows.iter().enumerate() {
        for (ja, v) in b_rows.iter().enumerate() {
            let prod = alg.product(u, v)?;
            a_sc[ia][ja] = proj_a.mul_vec(&prod);
        }
    }
    let a_alg = Algebra::new(dim_a, crate::algebra::default_names(dim_a), a_sc)?;
    let mut ma = RMatrix::zeros(dim_a, dim_a);
    for (ia, u) in b_rows.iter().enumerate() {
        for (ja, v) in b_rows.iter().enumerate() {
            ma[(ia, ja)] = m.apply(u, v);
        }
    }
    let a_metric = Metric::new(ma)?;

    // h: quotient product on the L side, adjoint bracket on the R side
    let h_reps: Vec<Vec<Rat>> = h_coords.iter().map(|&c| basis_vec(n, c)).collect();
    let mut h_sc = vec![vec![vzero(dim_h); dim_h]; dim_h];
    let mut well_defined = None;
    match side {
        Side::L => {
            for (ih, u) in h_reps.iter().enumerate() {
                for (jh, v) in h_reps.iter().enumerate() {
                    h_sc[ih][jh] = proj_h.mul_vec(&alg.product(u, v)?);
                }
            }
        }
        Side::R => {
            let l_star = |v: &[Rat]| -> Result<RMatrix> { Ok(m.adjoint(&alg.left_op(v)?)) };
            for (ih, u) in h_reps.iter().enumerate() {
                for (jh, v) in h_reps.iter().enumerate() {
                    let w = l_star(v)?.mul_vec(u);
                    h_sc[ih][jh] = proj_h.mul_vec(&w).iter().map(|x| -x).collect();
                }
            }
            // representative independence: L_v^* u must fall into I^⊥
            // whenever u or v does
            let mut ok = true;
            'outer: for b in i_perp.basis_vectors() {
                for t in 0..n {
                    let et = basis_vec(n, t);
                    if !is_vzero(&proj_h.mul_vec(&l_star(&et)?.mul_vec(&b)))
                        || !is_vzero(&proj_h.mul_vec(&l_star(&b)?.mul_vec(&et)))
                    {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            well_defined = Some(ok);
        }
    }
    let h_alg = Algebra::new(dim_h, crate::algebra::default_names(dim_h), h_sc)?;

    // recompute the structural facts instead of assuming them
    let (a_identity, leib_a_nondegenerate, a_splits) = match side {
        Side::L => {
            let ident = a_alg.check_identity(IdentityKind::LeftLeibniz).passed;
            let leib_a = a_alg.leib_ideal();
            let rad = leib_a.intersect(&a_metric.orthogonal(&leib_a));
            let nondeg = rad.is_zero();
            let splits = {
                let perp = a_metric.orthogonal(&leib_a);
                match a_alg.subspace_product(&perp, &perp) {
                    Ok(pp) => {
                        perp.contains(&pp) && restricted_is_quadratic_lie(&a_alg, &a_metric, &perp)
                    }
                    Err(_) => false,
                }
            };
            (ident, Some(nondeg), Some(splits))
        }
        Side::R => (a_alg.check_identity(IdentityKind::Lie).passed, None, None),
    };
    let a_invariance = check_invariance(&a_alg, a_metric.form(), invariance_for(side))?.passed;
    let h_lie = h_alg.check_identity(IdentityKind::Lie).passed;
    let h_two_step = match side {
        Side::L => None,
        Side::R => Some(is_two_step(&h_alg)),
    };

    Ok(CoreResult {
        i,
        a: MetricAlgebra {
            algebra: a_alg,
            metric: a_metric,
        },
        h: h_alg,
        proj_a,
        proj_h,
        checks: CoreChecks {
            a_identity,
            a_invariance,
            leib_a_nondegenerate,
            a_splits,
            h_lie,
            h_two_step,
            well_defined,
        },
    })
}

fn is_two_step(alg: &Algebra) -> bool {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let br = alg.basis_product(i, j);
                let mut d = vzero(n);
                for (t, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        d = vadd(&d, &vscale(c, alg.basis_product(t, l)));
                    }
                }
                if !is_vzero(&d) {
                    return false;
                }
            }
        }
    }
    true
}

/// Restriction of the algebra and metric to a product-closed subspace, then
/// a quadratic-Lie check on the restriction.
fn restricted_is_quadratic_lie(alg: &Algebra, m: &Metric, sub: &Subspace) -> bool {
    let d = sub.dim();
    let basis = sub.basis_vectors();
    // coordinates inside the subspace via a solve against its basis
    let bt = sub.basis().transpose();
    let coords_of = |v: &[Rat]| -> Option<Vec<Rat>> {
        crate::exactlin::rref_solve(&bt, Some(v)).ok()?.particular
    };
    let mut sc = vec![vec![vzero(d); d]; d];
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let p = match alg.product(u, v) {
                Ok(p) => p,
                Err(_) => return false,
            };
            match coords_of(&p) {
                Some(c) => sc[i][j] = c,
                None => return false,
            }
        }
    }
    let restricted = match Algebra::new(d, crate::algebra::default_names(d), sc) {
        Ok(a) => a,
        Err(_) => return false,
    };
    let mut gram = RMatrix::zeros(d, d);
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            gram[(i, j)] = m.apply(u, v);
        }
    }
    let rm = match Metric::new(gram) {
        Ok(m) => m,
        Err(_) => return false,
    };
    restricted.check_identity(IdentityKind::Lie).passed
        && check_invariance(&restricted, rm.form(), Invariance::L)
            .map(|c| c.passed)
            .unwrap_or(false)
}

/// Isomorphism-invariant fingerprint. Equal fingerprints are necessary but
/// not sufficient for isometric isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub leib_dim: usize,
    pub leib_cap_perp_dim: Option<usize>,
    pub zl_dim: usize,
    pub zr_dim: usize,
    pub z_dim: usize,
    pub gg_dim: usize,
    /// Steps of the derived series down to zero; `None` when not solvable.
    pub derived_length: Option<usize>,
    /// Steps of the lower central series down to zero; `None` when not
    /// nilpotent.
    pub nilpotency_class: Option<usize>,
    pub k_rank: usize,
    pub k_inertia: (usize, usize, usize),
    pub metric_inertia: Option<(usize, usize)>,
}

pub fn fingerprint(alg: &Algebra, m: Option<&Metric>) -> Fingerprint {
    let leib = alg.leib_ideal();
    let full = Subspace::full(alg.dim());
    let gg = alg.subspace_product(&full, &full).expect("dims agree");
    let derived = alg.series(SeriesKind::Derived);
    let central = alg.series(SeriesKind::LowerCentral);
    let k = killing(alg, KillingKind::K);
    let k_inertia = k.inertia();
    Fingerprint {
        dim: alg.dim(),
        leib_dim: leib.dim(),
        leib_cap_perp_dim: m.map(|m| leib.intersect(&m.orthogonal(&leib)).dim()),
        zl_dim: alg.structural_subspace(StructuralKind::Zl).dim(),
        zr_dim: alg.structural_subspace(StructuralKind::Zr).dim(),
        z_dim: alg.structural_subspace(StructuralKind::Z).dim(),
        gg_dim: gg.dim(),
        derived_length: derived.flag.then(|| derived.terms.len() - 1),
        nilpotency_class: central.flag.then(|| central.terms.len() - 1),
        k_rank: k_inertia.0 + k_inertia.1,
        k_inertia,
        metric_inertia: m.map(|m| m.inertia()),
    }
}

/// Structural branch of the classification report.
#[derive(Clone, Debug)]
pub enum Branch {
    /// The algebra is Lie; all invariance notions coincide.
    Lie,
    /// Nondegenerate Leibniz ideal: `g = Leib ⊥⊕ Leib^⊥` with `Leib^⊥` a
    /// quadratic Lie algebra acting on `Leib` by skew operators.
    NondegLeib {
        leib: Subspace,
        perp: Subspace,
        perp_is_quadratic_lie: bool,
        /// Action of the `Leib^⊥` basis on the `Leib` basis.
        rho: Vec<RMatrix>,
    },
    /// Degenerate Leibniz ideal: full core extraction.
    Degenerate {
        core: Box<CoreResult>,
        leib_equals_perp: bool,
        a_is_zero: bool,
    },
    /// The metric carries no L- or R-invariance but is associative on a
    /// symmetric Leibniz algebra: only the metrised structure applies.
    Metrised,
}

/// Extra report for symmetric Leibniz algebras with an associative metric:
/// the split into skew and symmetric parts, the defining constraints of the
/// symmetric part, and the center-degeneracy branch.
#[derive(Clone, Debug)]
pub struct MetrisedReport {
    pub symmetric_leibniz: bool,
    pub assoc_invariant: bool,
    pub lie_part_is_lie: bool,
    pub omega_into_center: bool,
    /// `ω([x,y], z) = 0` over all basis tuples.
    pub eq_bracket_kills_omega: bool,
    /// `ω(ω(x,y), z) = 0` over all basis tuples.
    pub eq_omega_kills_omega: bool,
    pub center_nondegenerate: bool,
    /// 1-based basis indices `i` with `ω(e_i, ·) ≠ 0`.
    pub omega_support: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub side: Side,
    pub branch: Branch,
    pub metrised: Option<MetrisedReport>,
    pub fingerprint: Fingerprint,
}

pub fn classify(alg: &Algebra, m: &Metric, side: Side) -> Result<ClassifyReport> {
    if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
        return Err(Error::NotLeftLeibniz);
    }
    if !check_invariance(alg, m.form(), invariance_for(side))?.passed {
        // associative-only metrics on symmetric Leibniz algebras still get
        // the metrised structure report
        let sym = alg.check_identity(IdentityKind::SymmetricLeibniz).passed;
        let assoc = check_invariance(alg, m.form(), Invariance::Assoc)?.passed;
        if sym && assoc {
            return Ok(ClassifyReport {
                side,
                branch: Branch::Metrised,
                metrised: Some(metrised_report(alg, m)?),
                fingerprint: fingerprint(alg, Some(m)),
            });
        }
        return Err(Error::InvarianceMismatch(format!(
            "metric is not {side}-invariant"
        )));
    }
    let fp = fingerprint(alg, Some(m));
    let branch = if alg.check_identity(IdentityKind::Lie).passed {
        Branch::Lie
    } else {
        let leib = alg.leib_ideal();
        let perp = m.orthogonal(&leib);
        let rad = leib.intersect(&perp);
        if rad.is_zero() {
            // g = Leib ⊥⊕ Leib^⊥; rho is the action on Leib
            let leib_basis = leib.basis_vectors();
            let bt = leib.basis().transpose();
            let coords_of = |v: &[Rat]| -> Vec<Rat> {
                crate::exactlin::rref_solve(&bt, Some(v))
                    .ok()
                    .and_then(|r| r.particular)
                    .unwrap_or_else(|| vzero(leib.dim()))
            };
            let mut rho = Vec::new();
            for u in perp.basis_vectors() {
                let mut mat = RMatrix::zeros(leib.dim(), leib.dim());
                for (j, v) in leib_basis.iter().enumerate() {
                    let p = alg.product(&u, v)?;
                    for (r, c) in coords_of(&p).into_iter().enumerate() {
                        mat[(r, j)] = c;
                    }
                }
                rho.push(mat);
            }
            let perp_ok = {
                let pp = alg.subspace_product(&perp, &perp)?;
                perp.contains(&pp) && restricted_is_quadratic_lie(alg, m, &perp)
            };
            Branch::NondegLeib {
                leib,
                perp,
                perp_is_quadratic_lie: perp_ok,
                rho,
            }
        } else {
            let core = core_extract(alg, m, side)?;
            let leib_equals_perp = leib.equals(&perp);
            let a_is_zero = core.a.dim() == 0;
            Branch::Degenerate {
                core: Box::new(core),
                leib_equals_perp,
                a_is_zero,
            }
        }
    };

    // metrised branch when the algebra is symmetric Leibniz and the metric
    // associative
    let metrised = {
        let sym = alg.check_identity(IdentityKind::SymmetricLeibniz).passed;
        let assoc = check_invariance(alg, m.form(), Invariance::Assoc)?.passed;
        if sym && assoc {
            Some(metrised_report(alg, m)?)
        } else {
            None
        }
    };

    Ok(ClassifyReport {
        side,
        branch,
        metrised,
        fingerprint: fp,
    })
}

/// Standalone metrised-structure report for symmetric Leibniz algebras with
/// an associative metric (which need not carry any L- or R-invariance).
pub fn metrised_structure(alg: &Algebra, m: &Metric) -> Result<MetrisedReport> {
    if !alg.check_identity(IdentityKind::SymmetricLeibniz).passed {
        return Err(Error::NotLeftLeibniz);
    }
    if !check_invariance(alg, m.form(), Invariance::Assoc)?.passed {
        return Err(Error::InvarianceMismatch(
            "metric is not associative".to_string(),
        ));
    }
    metrised_report(alg, m)
}

fn metrised_report(alg: &Algebra, m: &Metric) -> Result<MetrisedReport> {
    let n = alg.dim();
    let half = crate::exactlin::rat(1, 2);
    // skew and symmetric parts of the product
    let mut lie_sc = vec![vec![vzero(n); n]; n];
    let mut omega = vec![vec![vzero(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = alg.basis_product(i, j);
            let q = alg.basis_product(j, i);
            for t in 0..n {
                lie_sc[i][j][t] = (&p[t] - &q[t]) * &half;
                omega[i][j][t] = (&p[t] + &q[t]) * &half;
            }
        }
    }
    let lie_part = Algebra::new(n, alg.basis_names().to_vec(), lie_sc)?;
    let lie_ok = lie_part.check_identity(IdentityKind::Lie).passed;
    let center = lie_part.structural_subspace(StructuralKind::Z);
    let omega_vec = |u: &[Rat], v: &[Rat]| -> Vec<Rat> {
        let mut out = vzero(n);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    let c = a * b;
                    for t in 0..n {
                        if !omega[i][j][t].is_zero() {
                            out[t] += &c * &omega[i][j][t];
                        }
                    }
                }
            }
        }
        out
    };
    let mut omega_into_center = true;
    let mut eq_bracket = true;
    let mut eq_omega = true;
    let mut support = Vec::new();
    for i in 0..n {
        let mut touches = false;
        for j in 0..n {
            if !is_vzero(&omega[i][j]) {
                touches = true;
            }
            if !center.contains_vec(&omega[i][j]) {
                omega_into_center = false;
            }
            let br = lie_part.basis_product(i, j).to_vec();
            for l in 0..n {
                let el = basis_vec(n, l);
                if !is_vzero(&omega_vec(&br, &el)) {
                    eq_bracket = false;
                }
                if !is_vzero(&omega_vec(&omega[i][j], &el)) {
                    eq_omega = false;
                }
            }
        }
        if touches {
            support.push(i + 1);
        }
    }
    let center_nondeg = center.intersect(&m.orthogonal(&center)).is_zero();
    Ok(MetrisedReport {
        symmetric_leibniz: true,
        assoc_invariant: true,
        lie_part_is_lie: lie_ok,
        omega_into_center,
        eq_bracket_kills_omega: eq_bracket,
        eq_omega_kills_omega: eq_omega,
        center_nondegenerate: center_nondeg,
        omega_support: support,
    })
}

#[derive(Clone, Debug)]
pub struct SplittingReport {
    /// Matrix of `κ: A -> Lie(g)` in the chosen bases.
    pub kappa: RMatrix,
    pub morphism_ok: bool,
    pub image_ideal_ok: bool,
    /// R side: `κ(A)` contains the derived algebra of `Lie(g)`.
    pub contains_derived: Option<bool>,
}

/// Realizes `κ: A -> Lie(g)` by lifting `A`-basis vectors to `I^⊥`
/// representatives and projecting to `g/Leib(g)`; checks the morphism and
/// ideal properties.
pub fn splitting_report(alg: &Algebra, m: &Metric, side: Side) -> Result<SplittingReport> {
    let core = core_extract(alg, m, side)?;
    let (lie_g, proj_lie) = lie_quotient(alg)?;
    let n = alg.dim();
    // lift A basis: rows of the B block are representatives in g
    // (recover them by pseudo-inverting proj_a on the chosen complement)
    let b_reps = lift_reps(&core.proj_a, n);
    let q = lie_g.dim();
    let da = core.a.dim();
    let mut kappa = RMatrix::zeros(q, da);
    for (j, rep) in b_reps.iter().enumerate() {
        let img = proj_lie.mul_vec(rep);
        for (r, c) in img.into_iter().enumerate() {
            kappa[(r, j)] = c;
        }
    }
    let mut morphism_ok = true;
    for ia in 0..da {
        for ja in 0..da {
            let lhs = kappa.mul_vec(core.a.algebra.basis_product(ia, ja));
            let rhs = lie_g.product(&kappa.col_vec(ia), &kappa.col_vec(ja))?;
            if lhs != rhs {
                morphism_ok = false;
            }
        }
    }
    let image = Subspace::from_rows(q, (0..da).map(|j| kappa.col_vec(j)).collect());
    let image_ideal_ok = lie_g.check_ideal(&image).is_ok();
    let contains_derived = match side {
        Side::L => None,
        Side::R => {
            let full = Subspace::full(q);
            let derived = lie_g.subspace_product(&full, &full)?;
            Some(image.contains(&derived))
        }
    };
    Ok(SplittingReport {
        kappa,
        morphism_ok,
        image_ideal_ok,
        contains_derived,
    })
}

/// Representatives in the ambient space for the rows of a projection built
/// from a basis-extension: solve `proj · x = e_r` with the particular
/// solution of the underlying decomposition.
fn lift_reps(proj: &RMatrix, n: usize) -> Vec<Vec<Rat>> {
    let rows = proj.rows();
    let mut reps = Vec::with_capacity(rows);
    for r in 0..rows {
        let rhs = basis_vec(rows, r);
        let res = crate::exactlin::rref_solve(proj, Some(&rhs)).expect("projection is onto");
        reps.push(res.particular.expect("projection is onto"));
    }
    let _ = n;
    reps
}

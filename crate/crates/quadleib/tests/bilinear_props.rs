//! Cross-cutting properties of the trace forms and invariance notions, run
//! over the whole catalog: bi-invariance of `B` and `K`, the pullback
//! identity for `K`, the orthogonal characterizations of the Leibniz ideal,
//! and the two-invariances-imply-the-third dichotomy.

use quadleib::algebra::{IdentityKind, StructuralKind};
use quadleib::bilinear::{
    cartan, check_invariance, killing, lie_quotient, Invariance, KillingKind,
};
use quadleib::catalog;
use quadleib::exactlin::{rref_solve, RMatrix, Subspace};
use quadleib::sample;

#[test]
fn b_and_k_are_bi_invariant_on_catalog() {
    for entry in catalog::all_sampled_entries() {
        let alg = &entry.algebra;
        if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
            continue;
        }
        for kind in [KillingKind::B, KillingKind::K] {
            let form = killing(alg, kind);
            for inv in [Invariance::L, Invariance::R, Invariance::Assoc] {
                let res = check_invariance(alg, &form, inv).unwrap();
                assert!(res.passed, "{}: {kind:?} not {inv}-invariant", entry.name);
            }
        }
    }
}

#[test]
fn leib_sits_inside_trace_form_kernels() {
    for entry in catalog::all_sampled_entries() {
        let alg = &entry.algebra;
        if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
            continue;
        }
        let leib = alg.leib_ideal();
        for kind in [KillingKind::B, KillingKind::K] {
            let ker = killing(alg, kind).kernel();
            assert!(
                ker.contains(&leib),
                "{}: Leib not inside ker {kind:?}",
                entry.name
            );
        }
    }
}

#[test]
fn k_pullback_identity_on_catalog() {
    // K(g) = proj^T B(Lie(g)) proj, exactly, for every left Leibniz entry
    for entry in catalog::all_sampled_entries() {
        let alg = &entry.algebra;
        if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
            continue;
        }
        let k = killing(alg, KillingKind::K);
        let (quot, proj) = lie_quotient(alg).unwrap();
        let b_hat = killing(&quot, KillingKind::B);
        let pulled = proj.transpose().mul(b_hat.matrix()).mul(&proj);
        assert_eq!(
            k.matrix(),
            &pulled,
            "{}: K is not the pullback of the quotient Killing form",
            entry.name
        );
    }
}

#[test]
fn cartan_agrees_with_series_on_catalog() {
    let mut count = 0;
    for entry in catalog::all_sampled_entries() {
        let alg = &entry.algebra;
        if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
            continue;
        }
        let verdict = cartan(alg).unwrap();
        assert_eq!(
            verdict.solvable,
            alg.is_solvable(),
            "{}: K-criterion and derived series disagree",
            entry.name
        );
        if verdict.solvable && alg.dim() > 0 {
            assert!(
                !verdict.semisimple,
                "{}: solvable but semisimple",
                entry.name
            );
        }
        count += 1;
    }
    assert!(count >= 25, "only {count} catalog samples checked");
    let sl2 = catalog::get("sl2", &Default::default()).unwrap();
    assert!(cartan(&sl2.algebra).unwrap().semisimple);
}

#[test]
fn prop_pr_orthogonals_on_catalog() {
    // L-invariant: Z^r = (g*g)^perp; R-invariant: Z^l = (g*g)^perp
    for entry in catalog::all_sampled_entries() {
        let alg = &entry.algebra;
        if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
            continue;
        }
        let m = &entry.metric;
        let full = Subspace::full(alg.dim());
        let gg = alg.subspace_product(&full, &full).unwrap();
        let gg_perp = m.orthogonal(&gg);
        if check_invariance(alg, m.form(), Invariance::L)
            .unwrap()
            .passed
        {
            let zr = alg.structural_subspace(StructuralKind::Zr);
            assert!(zr.equals(&gg_perp), "{}: Zr != (gg)^perp", entry.name);
        }
        if check_invariance(alg, m.form(), Invariance::R)
            .unwrap()
            .passed
        {
            let zl = alg.structural_subspace(StructuralKind::Zl);
            assert!(zl.equals(&gg_perp), "{}: Zl != (gg)^perp", entry.name);
        }
    }
}

#[test]
fn prop_leib_characterizations_on_catalog() {
    for entry in catalog::all_sampled_entries() {
        let alg = &entry.algebra;
        if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
            continue;
        }
        let m = &entry.metric;
        let n = alg.dim();
        let leib = alg.leib_ideal();
        let perp = m.orthogonal(&leib);
        if check_invariance(alg, m.form(), Invariance::L)
            .unwrap()
            .passed
        {
            // Leib^perp = { u : R_u + R_u* = 0 }, as a kernel computation
            let mut big = RMatrix::zeros(n * n, n);
            for i in 0..n {
                let r = alg.right_op_basis(i);
                let sym = r.add(&m.adjoint(&r));
                for (row, v) in sym.flatten().into_iter().enumerate() {
                    big[(row, i)] = v;
                }
            }
            let kernel = rref_solve(&big, None).unwrap().kernel;
            assert!(
                kernel.equals(&perp),
                "{}: Leib^perp != skew-right-multiplication locus",
                entry.name
            );
        }
        if check_invariance(alg, m.form(), Invariance::R)
            .unwrap()
            .passed
        {
            // Leib ⊆ g*g ⊆ Leib^perp
            let full = Subspace::full(n);
            let gg = alg.subspace_product(&full, &full).unwrap();
            assert!(gg.contains(&leib), "{}: Leib outside g*g", entry.name);
            assert!(perp.contains(&gg), "{}: g*g outside Leib^perp", entry.name);
            // and Leib^perp = { u : L_u + L_u* = 0 }
            let mut big = RMatrix::zeros(n * n, n);
            for i in 0..n {
                let l = alg.left_op_basis(i);
                let sym = l.add(&m.adjoint(&l));
                for (row, v) in sym.flatten().into_iter().enumerate() {
                    big[(row, i)] = v;
                }
            }
            let kernel = rref_solve(&big, None).unwrap().kernel;
            assert!(
                kernel.equals(&perp),
                "{}: Leib^perp != skew-left-multiplication locus",
                entry.name
            );
        }
    }
}

#[test]
fn rigidity_corollaries_on_catalog() {
    for entry in catalog::all_sampled_entries() {
        let alg = &entry.algebra;
        if !alg.check_identity(IdentityKind::LeftLeibniz).passed {
            continue;
        }
        let m = &entry.metric;
        let is_lie = alg.check_identity(IdentityKind::Lie).passed;
        let l_inv = check_invariance(alg, m.form(), Invariance::L)
            .unwrap()
            .passed;
        let r_inv = check_invariance(alg, m.form(), Invariance::R)
            .unwrap()
            .passed;
        if !is_lie && (l_inv || r_inv) {
            assert!(
                alg.leib_ideal().dim() >= 2,
                "{}: non-Lie invariant entry with dim Leib < 2",
                entry.name
            );
        }
        if r_inv {
            let (p, q) = m.inertia();
            let lorentzian = q == 1 && p + 1 == alg.dim();
            let euclidean = q == 0 && alg.dim() > 0;
            if !is_lie {
                assert!(
                    !euclidean && !lorentzian,
                    "{}: non-Lie R-invariant entry with a definite or Lorentzian metric",
                    entry.name
                );
            }
            // g*g = g forces Lie
            let full = Subspace::full(alg.dim());
            let gg = alg.subspace_product(&full, &full).unwrap();
            if gg.is_full() && alg.dim() > 0 {
                assert!(
                    is_lie,
                    "{}: perfect R-invariant entry that is not Lie",
                    entry.name
                );
            }
        }
    }
}

#[test]
fn two_invariances_imply_the_third() {
    let mut rng = sample::rng_from(sample::MASTER_SEED + 8);
    let mut detected = 0;
    for case in 0..140 {
        let c = sample::sample_invariance_case(&mut rng);
        let l = check_invariance(&c.algebra, &c.form, Invariance::L)
            .unwrap()
            .passed;
        let r = check_invariance(&c.algebra, &c.form, Invariance::R)
            .unwrap()
            .passed;
        let a = check_invariance(&c.algebra, &c.form, Invariance::Assoc)
            .unwrap()
            .passed;
        if c.planted {
            assert!(l && r, "case {case}: planting failed");
        }
        let hold = [l, r, a].iter().filter(|x| **x).count();
        if hold >= 2 {
            detected += 1;
            assert_eq!(hold, 3, "case {case}: two invariances without the third");
            // symmetrized products fall into ker S
            let ker = c.form.kernel();
            let n = c.algebra.dim();
            for i in 0..n {
                for j in 0..n {
                    let sym = quadleib::exactlin::vadd(
                        c.algebra.basis_product(i, j),
                        c.algebra.basis_product(j, i),
                    );
                    assert!(
                        ker.contains_vec(&sym),
                        "case {case}: symmetrized product escapes ker S"
                    );
                }
            }
        }
    }
    assert!(
        detected >= 100,
        "only {detected} two-invariance cases detected"
    );
}

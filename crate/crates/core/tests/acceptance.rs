//! The twelve acceptance criteria, one PASS/FAIL line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use nilg2::connection::{
    covariant_derivative, curvature, curvature_forms, holonomy_algebra, nabla_lambda, Tensor,
};
use nilg2::exterior::{blades, KForm};
use nilg2::g2::{characteristic_torsion, metric_from_phi, phi0, G2Structure, TorsionForms};
use nilg2::instanton::{
    builtin_family, cbrt4_minus_one, check_caracg2, classify, diagonal_residual, default_grid,
    instanton_at, lambda_sweep, s_matrix, Case, CaseParams, GROUP_14, GROUP_57,
};
use nilg2::liealg::{sigma_plus, LieAlgebra};
use nilg2::linalg::Mat;
use nilg2::scalar::{q, qi};
use nilg2::{Field, Scalar};
use rand::Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fam(name: &str, p: &[R]) -> (LieAlgebra<R>, G2Structure<R>) {
    builtin_family(name, p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every component `(R)^α_β` with `α < β` equals the listed value, or zero
/// when unlisted.
fn match_components(
    r: &nilg2::connection::CurvatureTensor<R>,
    expected: &[((usize, usize), KForm<R>)],
    what: &str,
) -> Result<(), String> {
    for a in 1..=7 {
        for b in a + 1..=7 {
            let want = expected
                .iter()
                .find(|(k, _)| *k == (a, b))
                .map(|(_, f)| f.clone())
                .unwrap_or_else(|| KForm::zero(7, 2));
            let got = r.component(a, b);
            ensure(got == want, || {
                format!(
                    "{what}: (R)^{a}_{b} = {} but expected {}",
                    show(&got),
                    show(&want)
                )
            })?;
        }
    }
    Ok(())
}

fn all_wedge_psi_zero(r: &nilg2::connection::CurvatureTensor<R>, s: &G2Structure<R>) -> bool {
    r.components()
        .iter()
        .flatten()
        .all(|c| c.wedge(&s.psi).unwrap().is_zero())
}

// ---------------------------------------------------------------------------

fn c1_model_identities() -> Check {
    let phi = phi0::<R>();
    ensure(metric_from_phi(&phi).unwrap().is_identity(), || {
        "metric of φ0 is not the identity".into()
    })?;
    let s = G2Structure::standard();
    let e = |ix: &[usize]| KForm::<R>::basis(7, ix);
    let psi = e(&[1, 2, 3, 4])
        + sigma_plus::<R>(1).wedge(&e(&[6, 7])).unwrap()
        + sigma_plus::<R>(2)
            .wedge(&e(&[5, 7]))
            .unwrap()
            .scale(&qi(-1))
        + sigma_plus::<R>(3).wedge(&e(&[5, 6])).unwrap();
    let star = s.star(&phi);
    ensure(star == psi, || {
        format!("⋆φ0 = {} differs from e1234 + Σ σ∧e", show(&star))
    })?;
    let b2 = blades(7, 2);
    let coeffs = |f: &KForm<R>, deg: usize| {
        blades(7, deg)
            .into_iter()
            .map(|b| f.blade_coeff(b))
            .collect::<Vec<R>>()
    };
    let basis2: Vec<KForm<R>> = b2.iter().map(|b| KForm::basis(7, &b.indices())).collect();
    let wedge_psi = Mat::from_cols(
        &basis2
            .iter()
            .map(|w| coeffs(&w.wedge(&psi).unwrap(), 6))
            .collect::<Vec<_>>(),
    );
    let dim14 = 21 - wedge_psi.rank();
    let seven = Mat::from_cols(
        &basis2
            .iter()
            .map(|w| coeffs(&(s.star(&phi.wedge(w).unwrap()) - w.scale(&qi(2))), 2))
            .collect::<Vec<_>>(),
    );
    let dim7 = 21 - seven.rank();
    ensure(dim14 == 14 && dim7 == 7, || {
        format!("dim Λ²14 = {dim14}, dim Λ²7 = {dim7}")
    })?;
    Ok("g(φ0) = Id, ⋆φ0 termwise, dims 14 and 7".into())
}

fn c2_heis() -> Check {
    for (a, b) in [(qi(1), qi(0)), (qi(2), qi(3))] {
        let (l, s) = fam("heis", &[a.clone(), b.clone()]);
        let tf = TorsionForms::compute(&l, &s).unwrap();
        let t = characteristic_torsion(&s, &tf, 0.0).unwrap();
        let de7 = l.d_generator(7).clone();
        ensure(t == de7.wedge(&KForm::basis(7, &[7])).unwrap(), || {
            format!("T = {}", show(&t))
        })?;
        let c = nabla_lambda(&l, &s, &qi(1)).unwrap();
        // the display lists the entry below the diagonal: (Ψ)^β_α in our index order
        for ((al, be), want) in [
            ((1, 2), a.clone()),
            ((3, 4), b.clone()),
            ((5, 6), -(a.clone() + &b)),
        ] {
            let got = c.form(be, al);
            ensure(got == f1(7, want.clone()), || {
                format!("(Ψ1)^{be}_{al} = {}", show(&got))
            })?;
            ensure(c.form(al, be) == f1(7, -want), || {
                format!("(Ψ1)^{al}_{be} sign")
            })?;
        }
        let r = curvature(&c, &l);
        let shown: Vec<_> = heis_display(&a, &b)
            .into_iter()
            .map(|(k, f)| (k, -f))
            .collect();
        match_components(&r, &shown, "heis")?;
        let closed = dim1_closed(&a, &b, &-(a.clone() + &b), &qi(1));
        for ((al, be), f) in &closed {
            ensure(&r.component(*al, *be) == f, || {
                format!("closed form ({al},{be}) disagrees")
            })?;
        }
        ensure(all_wedge_psi_zero(&r, &s), || "R¹ ∧ ψ ≠ 0".into())?;
        let h = holonomy_algebra(&c, &l);
        ensure(h.dim() == 1, || format!("holonomy dim {}", h.dim()))?;
    }
    Ok("(a,b) = (1,0), (2,3): T, Ψ1, R1, R1∧ψ = 0, dim hol = 1".into())
}

fn c3_qheis() -> Check {
    for nu in [qi(1), qi(-2)] {
        let (l, s) = fam("qheis", &[nu.clone()]);
        let sm = s_matrix(&l, &s, 0.0).unwrap();
        ensure(
            sm.s == Mat::identity(3).scale(&nu) && sm.mu == qi(3) * &nu,
            || format!("S = {:?}, μ = {}", sm.s, sm.mu),
        )?;
        let c = nabla_lambda(&l, &s, &qi(1)).unwrap();
        let r = curvature(&c, &l);
        match_components(&r, &qheis_display(&nu), "qheis")?;
        ensure(
            instanton_at(&l, &s, &qi(1), 0.0).unwrap().is_instanton,
            || "not an instanton".into(),
        )?;
        let h = holonomy_algebra(&c, &l);
        ensure(h.dim() == 3 && h.killing_negative_definite(), || {
            format!(
                "holonomy dim {} signature {:?}",
                h.dim(),
                h.killing_signature
            )
        })?;
    }
    Ok("ν = 1, -2: S = ν Id, μ = 3ν, curvature rows, hol = su(2)".into())
}

fn c4_n32() -> Check {
    let nu = qi(1);
    let (l, s) = fam("n32", &[nu.clone()]);
    let c = nabla_lambda(&l, &s, &qi(1)).unwrap();
    let r = curvature(&c, &l);
    match_components(&r, &n32_display(&nu), "n32")?;
    ensure(
        instanton_at(&l, &s, &qi(1), 0.0).unwrap().is_instanton,
        || "not an instanton".into(),
    )?;
    let h = holonomy_algebra(&c, &l);
    ensure(h.dim() == 3, || format!("holonomy dim {}", h.dim()))?;
    Ok("ν = 1: curvature identities, instanton, dim hol = 3".into())
}

fn c5_dim1_sweep() -> Check {
    let vals = [qi(-1), qi(0), qi(1), qi(2)];
    let lams = [qi(-1), qi(0), q(1, 3), qi(1), qi(2)];
    let (mut n, mut zeros, mut mu0) = (0, 0, 0);
    for a in &vals {
        for b in &vals {
            for c in &vals {
                if a.is_zero() && b.is_zero() && c.is_zero() {
                    continue;
                }
                let (l, s) = fam("dim1", &[a.clone(), b.clone(), c.clone()]);
                let mu = a.clone() + b + c;
                mu0 += usize::from(mu.is_zero());
                for lam in &lams {
                    let conn = nabla_lambda(&l, &s, lam).unwrap();
                    let r = curvature(&conn, &l);
                    for ((al, be), f) in dim1_closed(a, b, c, lam) {
                        ensure(r.component(al, be) == f, || {
                            format!("closed form ({al},{be}) at ({a},{b},{c},λ={lam})")
                        })?;
                    }
                    let inst = all_wedge_psi_zero(&r, &s);
                    let predicted = *lam == qi(1) && mu.is_zero();
                    ensure(inst == predicted, || {
                        format!("({a},{b},{c}, λ = {lam}): instanton {inst}, predicted {predicted}")
                    })?;
                    ensure(!dim1_conditions(a, b, c, lam) || predicted, || {
                        format!("block conditions hold off the line at ({a},{b},{c},{lam})")
                    })?;
                    zeros += usize::from(inst);
                    n += 1;
                }
            }
        }
    }
    ensure(n >= 200, || format!("only {n} tuples"))?;
    Ok(format!(
        "{n} tuples, {zeros} instantons, all at λ = 1 with μ = 0 ({mu0} triples with μ = 0)"
    ))
}

fn c6_n37a() -> Check {
    let (l, s) = fam("n37a", &[qi(1), qi(1), qi(1), qi(1), qi(0)]);
    let mut grid = default_grid::<R>();
    grid.extend([qi(1), qi(-1)]);
    let rows = lambda_sweep(&l, &s, &grid, 0.0).unwrap();
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.is_instanton || r.max_residual.is_zero())
        .map(|r| r.lambda.to_string())
        .collect();
    ensure(bad.is_empty(), || format!("zero residual at λ ∈ {bad:?}"))?;
    ensure(
        rows.iter().any(|r| r.lambda == qi(-1)) && rows.iter().any(|r| r.lambda == qi(1)),
        || "±1 missing".into(),
    )?;
    let least = rows.iter().map(|r| r.max_residual.clone()).min().unwrap();
    Ok(format!(
        "{} values of λ, smallest max residual {least}",
        rows.len()
    ))
}

fn c7_cbrt4() -> Check {
    let x = 4f64.cbrt();
    let d = [1.0, 1.0, (x - 2.0) / 2.0];
    let lam = cbrt4_minus_one();
    let res = diagonal_residual(&d, &lam);
    let worst = res.iter().fold(0f64, |m, v| m.max(v.abs()));
    ensure(worst < 1e-10, || format!("diagonal system residual {worst:e}"))?;
    let (l, s) = builtin_family::<f64>("sdiag", &d).unwrap();
    let rep = instanton_at(&l, &s, &lam, 1e-9).unwrap();
    let g14 = rep.group(GROUP_14).unwrap();
    ensure(!g14.vanishes && !rep.is_instanton, || {
        "group 14 vanishes".into()
    })?;
    let g57 = rep.group(GROUP_57).unwrap();
    Ok(format!(
        "diagonal system residual {worst:.1e}; group 57 max {:.2e}, group 14 max {:.3}",
        g57.max_norm, g14.max_norm
    ))
}

fn c8_caracg2() -> Check {
    let mut r = rng(8);
    let (mut agree, mut pos_holds, mut neg_fail) = (0, 0, 0);
    for trial in 0..50 {
        let nu = rand_nonzero_q(&mut r, 3, 2);
        let base = if r.gen_bool(0.5) { "qheis" } else { "n32" };
        let (l, s) = fam(base, &[nu]);
        let positive = trial % 2 == 0;
        let l = if positive {
            l
        } else {
            // S stays symmetric, so the input stays coclosed
            let mut de = l.differentials().to_vec();
            let k = r.gen_range(0..3);
            let eps = rand_nonzero_q(&mut r, 2, 3);
            let extra = if r.gen_bool(0.5) {
                sigma_plus::<R>(k + 1)
            } else {
                nilg2::liealg::sigma_minus::<R>(r.gen_range(1..=3))
            };
            de[4 + k] = &de[4 + k] + &extra.scale(&eps);
            LieAlgebra::from_differentials(&de).unwrap()
        };
        let l = l.change_basis(&rand_disguise(&mut r)).unwrap();
        let direct = instanton_at(&l, &s, &qi(1), 0.0).unwrap().is_instanton;
        let crit = check_caracg2(&l, &s, 0.0).unwrap().holds;
        ensure(direct == crit, || {
            format!(
                "trial {trial} ({base}, positive {positive}): direct {direct}, criterion {crit}"
            )
        })?;
        agree += 1;
        pos_holds += usize::from(positive && crit);
        neg_fail += usize::from(!positive && !crit);
    }
    ensure(pos_holds == 25, || {
        format!("only {pos_holds} of 25 constructed inputs satisfy the criterion")
    })?;
    Ok(format!(
        "{agree}/50 agree; 25 constructed hold, {neg_fail}/25 perturbed fail"
    ))
}

fn random_family(r: &mut rand_chacha::ChaCha8Rng) -> (String, LieAlgebra<R>, G2Structure<R>) {
    let nz = |r: &mut rand_chacha::ChaCha8Rng| rand_nonzero_q(r, 3, 3);
    let (name, p): (&str, Vec<R>) = match r.gen_range(0..8) {
        0 => ("heis", vec![nz(r), rand_q(r, 3, 3)]),
        1 => ("dim1", vec![nz(r), rand_q(r, 3, 3), rand_q(r, 3, 3)]),
        2 => ("qheis", vec![nz(r)]),
        3 => ("n32", vec![nz(r)]),
        4 => {
            let t = rand_q(r, 4, 3);
            let den = qi(1) + t.clone() * &t;
            let rr = (qi(1) - t.clone() * &t) / &den;
            let ss = qi(2) * &t / &den;
            ("n37a", vec![nz(r), nz(r), nz(r), rr, ss])
        }
        5 => ("heisenberg", vec![qi(r.gen_range(1..=3))]),
        6 => (
            "sdiag",
            vec![rand_q(r, 3, 3), rand_q(r, 3, 3), rand_q(r, 3, 3)],
        ),
        _ => ("abelian", vec![]),
    };
    let (l, s) = fam(name, &p);
    (format!("{name}{p:?}"), l, s)
}

/// A unipotent change of basis with a few small entries.
fn rand_unipotent(r: &mut rand_chacha::ChaCha8Rng) -> Mat<R> {
    let mut w = Mat::identity(7);
    for _ in 0..3 {
        let (i, j) = (r.gen_range(0..7), r.gen_range(0..7));
        if i != j {
            w[(i, j)] = q(r.gen_range(-1..=1), 2);
        }
    }
    w
}

fn c9_torsion() -> Check {
    let mut r = rng(9);
    let mut generic = 0;
    for trial in 0..100 {
        let (name, l, s) = random_family(&mut r);
        // odd trials move φ off the model form on the same algebra
        let s = if trial % 2 == 1 {
            let w = rand_unipotent(&mut r);
            match G2Structure::new(s.phi.pullback(&w)) {
                Ok(s2) => s2,
                Err(_) => s,
            }
        } else {
            s
        };
        let tf = TorsionForms::compute(&l, &s).unwrap();
        let lhs1 =
            s.psi.scale(&tf.tau0) + tf.tau1.wedge(&s.phi).unwrap().scale(&qi(3)) + s.star(&tf.tau3);
        ensure(lhs1 == tf.dphi, || {
            format!("trial {trial} {name}: dφ reconstruction")
        })?;
        let lhs2 = tf.tau1.wedge(&s.psi).unwrap().scale(&qi(4)) + tf.tau2.wedge(&s.phi).unwrap();
        ensure(lhs2 == tf.dpsi, || {
            format!("trial {trial} {name}: dψ reconstruction")
        })?;
        generic += usize::from(!tf.tau1.is_zero() || !tf.tau2.is_zero());
    }
    Ok(format!("100 trials, {generic} with τ1 or τ2 nonzero"))
}

fn c10_parallel() -> Check {
    let mut r = rng(10);
    let mut count = 0;
    let inputs: Vec<(&str, Vec<R>)> = vec![
        ("heis", vec![qi(1), qi(0)]),
        ("heis", vec![qi(2), qi(3)]),
        (
            "heis",
            vec![rand_nonzero_q(&mut r, 3, 2), rand_nonzero_q(&mut r, 3, 2)],
        ),
        ("qheis", vec![qi(1)]),
        ("qheis", vec![rand_nonzero_q(&mut r, 3, 2)]),
        ("n32", vec![qi(1)]),
        ("n32", vec![rand_nonzero_q(&mut r, 3, 2)]),
    ];
    for (name, p) in inputs {
        let (l, s) = fam(name, &p);
        let l = l.change_basis(&rand_disguise(&mut r)).unwrap();
        let c = nabla_lambda(&l, &s, &qi(1)).unwrap();
        let t = characteristic_torsion(&s, &TorsionForms::compute(&l, &s).unwrap(), 0.0).unwrap();
        ensure(
            covariant_derivative(&c, &Tensor::from_form(&t)).near_zero(0.0),
            || format!("{name}{p:?}: ∇¹T ≠ 0"),
        )?;
        let rt = curvature(&c, &l).as_tensor();
        ensure(covariant_derivative(&c, &rt).near_zero(0.0), || {
            format!("{name}{p:?}: ∇¹R¹ ≠ 0")
        })?;
        ensure(
            covariant_derivative(&c, &Tensor::from_form(&s.phi)).near_zero(0.0),
            || format!("{name}{p:?}: ∇¹φ ≠ 0"),
        )?;
        count += 1;
    }
    let (l, s) = fam("heis", &[qi(1), qi(0)]);
    let c0 = nabla_lambda(&l, &s, &qi(0)).unwrap();
    let d = covariant_derivative(&c0, &Tensor::from_form(&s.phi));
    ensure(!d.near_zero(0.0), || "∇⁰φ = 0 on heis".into())?;
    Ok(format!(
        "{count} disguised instanton inputs parallel; |∇⁰φ| max {} on heis",
        d.max_abs()
    ))
}

fn sorted_triple(a: &Scalar, b: &Scalar) -> Vec<R> {
    let a = R::from_scalar(a).unwrap();
    let b = R::from_scalar(b).unwrap();
    let mut v = vec![a.clone(), b.clone(), -(a + &b)];
    v.sort();
    v
}

fn c11_classifier() -> Check {
    let mut r = rng(11);
    let mut downgraded = 0;
    let mut total = 0;
    for family in ["heis", "qheis", "n32"] {
        let params: Vec<R> = match family {
            "heis" => vec![rand_nonzero_q(&mut r, 4, 2), rand_nonzero_q(&mut r, 4, 2)],
            _ => vec![rand_nonzero_q(&mut r, 4, 2)],
        };
        let (l0, s) = fam(family, &params);
        for k in 0..21 {
            let l = if k == 0 {
                l0.clone()
            } else {
                l0.change_basis(&rand_disguise(&mut r)).unwrap()
            };
            let res = classify(&l, &s, 0.0).map_err(|e| format!("{family} #{k}: {e}"))?;
            total += 1;
            downgraded += usize::from(res.downgraded);
            let ok = match (&res.case, &res.params) {
                (Case::Case1, Some(CaseParams::Heis { a, b })) if family == "heis" => {
                    sorted_triple(a, b)
                        == sorted_triple(&params[0].to_scalar(), &params[1].to_scalar())
                }
                (Case::Case2, Some(CaseParams::Quaternionic { nu })) if family == "qheis" => {
                    *nu == params[0].to_scalar()
                }
                (Case::Case3, Some(CaseParams::N32 { nu })) if family == "n32" => {
                    *nu == params[0].to_scalar()
                }
                _ => false,
            };
            ensure(ok, || {
                format!(
                    "{family}{params:?} disguise #{k}: {:?} {:?}",
                    res.case, res.params
                )
            })?;
            if !res.downgraded {
                let w = res.witness.as_ref().unwrap().to_mat::<R>().unwrap();
                let normal = match res.params.as_ref().unwrap() {
                    CaseParams::Heis { a, b } => {
                        fam(
                            "heis",
                            &[R::from_scalar(a).unwrap(), R::from_scalar(b).unwrap()],
                        )
                        .0
                    }
                    CaseParams::Quaternionic { nu } => {
                        fam("qheis", &[R::from_scalar(nu).unwrap()]).0
                    }
                    CaseParams::N32 { nu } => fam("n32", &[R::from_scalar(nu).unwrap()]).0,
                };
                ensure(l.change_basis(&w).unwrap() == normal, || {
                    format!("{family} #{k}: witness does not reach the normal form")
                })?;
            }
        }
    }
    for (name, p) in [
        ("heisenberg", vec![qi(1)]),
        ("n37a", vec![qi(1), qi(1), qi(1), qi(1), qi(0)]),
        ("dim1", vec![qi(1), qi(2), qi(3)]),
    ] {
        let (l, s) = fam(name, &p);
        let res = classify(&l, &s, 0.0).map_err(|e| format!("{name}: {e}"))?;
        ensure(res.case == Case::NotInstanton, || {
            format!("{name}: {:?}", res.case)
        })?;
    }
    Ok(format!("{total} inputs classified ({downgraded} witnesses in floating point); 3 non-instantons rejected"))
}

fn c12_oracles() -> Check {
    let mut r = rng(12);
    let mut inputs: Vec<(String, LieAlgebra<R>, G2Structure<R>)> =
        (0..10).map(|_| random_family(&mut r)).collect();
    for (name, p) in [
        ("heis", vec![qi(2), qi(3)]),
        ("qheis", vec![qi(-2)]),
        ("n32", vec![qi(1)]),
    ] {
        let (l, s) = fam(name, &p);
        inputs.push((name.to_string(), l, s));
    }
    let mut routes = 0;
    for (name, l, s) in &inputs {
        let lam = rand_q(&mut r, 3, 3);
        let Ok(c) = nabla_lambda(l, s, &lam) else {
            continue;
        };
        ensure(
            curvature(&c, l).components() == curvature_forms(&c, l),
            || format!("{name}: the two curvature routes differ"),
        )?;
        routes += 1;
    }
    let mut closed = 0;
    for trial in 0..12 {
        let inp = As0Input::random(&mut r);
        let lam = if trial == 0 {
            qi(1)
        } else {
            rand_q(&mut r, 3, 2)
        };
        let l = inp.algebra();
        let s = G2Structure::standard();
        let c = nabla_lambda(&l, &s, &lam).unwrap();
        for k in 0..7 {
            ensure(c.endo(k + 1) == &inp.nabla(k, &lam), || {
                format!("as0 #{trial}: ∇_e{} differs from the decomposition", k + 1)
            })?;
        }
        let rt = curvature(&c, &l);
        ensure(rt.components() == curvature_forms(&c, &l), || {
            format!("as0 #{trial}: curvature routes differ")
        })?;
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            let got = rt.component(a + 5, b + 5);
            let want = inp.r_c(a, b, &lam);
            ensure(got == want, || {
                format!(
                    "as0 #{trial}: (R)^{}_{}: {} vs {}",
                    a + 5,
                    b + 5,
                    show(&got),
                    show(&want)
                )
            })?;
        }
        for al in 0..4 {
            for be in 0..4 {
                if al == be {
                    continue;
                }
                let (qq, qc, cc) = split_qc(&rt.component(al + 1, be + 1));
                ensure(qc.is_zero(), || {
                    format!("as0 #{trial}: mixed part of (R)^{}_{}", al + 1, be + 1)
                })?;
                let z = inp.zeta(al, be, &lam);
                ensure(cc == z, || {
                    format!(
                        "as0 #{trial}: ζ^{}_{}: {} vs {}",
                        al + 1,
                        be + 1,
                        show(&cc),
                        show(&z)
                    )
                })?;
                let e = inp.eta(al, be, &lam);
                ensure(qq == e, || {
                    format!(
                        "as0 #{trial}: η^{}_{}: {} vs {}",
                        al + 1,
                        be + 1,
                        show(&qq),
                        show(&e)
                    )
                })?;
                let ep = inp.eta_plus(al, be, &lam);
                let sd = self_dual_part(&qq);
                ensure(sd == ep, || {
                    format!(
                        "as0 #{trial}: (η^{}_{})^+: {} vs {}",
                        al + 1,
                        be + 1,
                        show(&sd),
                        show(&ep)
                    )
                })?;
            }
        }
        closed += 1;
    }
    Ok(format!("{routes} inputs agree on both curvature routes; {closed} as0 inputs match ∇, (R)^α_β, ζ, η and η^+"))
}

// ---------------------------------------------------------------------------

fn run(n: usize, name: &str, f: fn() -> Check) -> bool {
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f));
    let took = start.elapsed();
    let (pass, detail) = match out {
        Ok(Ok(d)) => (took < Duration::from_secs(10), d),
        Ok(Err(e)) => (false, e),
        Err(p) => (
            false,
            p.downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default(),
        ),
    };
    let tag = if pass { "PASS" } else { "FAIL" };
    println!(
        "{tag} criterion {n:>2}: {name}: {detail} [{:.2}s]",
        took.as_secs_f64()
    );
    pass
}

fn main() {
    if std::env::var_os("RUST_BACKTRACE").is_none() {
        std::panic::set_hook(Box::new(|_| {}));
    }
    let criteria: [(&str, fn() -> Check); 12] = [
        ("model identities", c1_model_identities),
        ("Heisenberg example", c2_heis),
        ("quaternionic Heisenberg example", c3_qheis),
        ("n32 example", c4_n32),
        ("dim g' = 1 sweep", c5_dim1_sweep),
        ("n37A has no instanton", c6_n37a),
        ("off-diagonal groups rule out the cube-root solution", c7_cbrt4),
        ("basis-free criterion agrees", c8_caracg2),
        ("torsion reconstruction", c9_torsion),
        ("parallel torsion, curvature and φ", c10_parallel),
        ("classifier", c11_classifier),
        ("oracle equivalence", c12_oracles),
    ];
    let only: Option<usize> = std::env::var("NILG2_CRITERION")
        .ok()
        .and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        if !run(i + 1, name, f) {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

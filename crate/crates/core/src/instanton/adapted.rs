//! Orthonormal bases in which `φ = φ0` and the structure equations take
//! their normal forms.
//!
//! Every construction is attempted in the scalar type of the input. In exact
//! mode a step that would need an irrational number returns `Ok(None)` and
//! the caller repeats the run in floating point.

use crate::error::{Error, Result};
use crate::exterior::{KForm, Metric};
use crate::g2::{g2_conjugation, phi0, G2Structure, Quaternion};
use crate::liealg::{sigma_plus, As0Split, LieAlgebra, Subspace};
use crate::linalg::{
    bilinear, gram_schmidt_f64, symmetric_eigen, vec_add, vec_scale, vec_sub, Mat,
};
use crate::scalar::{rationalize, Field, Scalar, ScalarKind};

pub(crate) fn lift<F: Field>(x: f64) -> Option<F> {
    match F::KIND {
        ScalarKind::Exact => rationalize(x, 1_000_000, 1e-9).map(|q| F::from_rational(&q)),
        ScalarKind::Float => F::from_scalar(&Scalar::Float(x)).ok(),
    }
}

fn nonzero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

/// `v` minus its `g`-orthogonal projection onto the mutually orthogonal `us`.
fn project_out<F: Field>(v: &[F], us: &[Vec<F>], m: &Metric<F>) -> Vec<F> {
    let mut w = v.to_vec();
    for u in us {
        let nu = m.inner(u, u);
        if let Some(inv) = nu.inv() {
            let c = m.inner(&w, u) * &inv;
            w = vec_sub(&w, &vec_scale(u, &c));
        }
    }
    w
}

/// Gram–Schmidt without normalization.
fn orthogonal_basis<F: Field>(basis: &[Vec<F>], m: &Metric<F>) -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = Vec::new();
    for v in basis {
        let w = project_out(v, &out, m);
        let keep = match F::KIND {
            ScalarKind::Exact => nonzero_vec(&w),
            ScalarKind::Float => m.inner(&w, &w).to_f64() > 1e-18,
        };
        if keep {
            out.push(w);
        }
    }
    out
}

fn normalized<F: Field>(w: &[F], m: &Metric<F>) -> Option<Vec<F>> {
    let r = m.inner(w, w).sqrt()?;
    Some(vec_scale(w, &r.inv()?))
}

/// A unit vector in the span of `basis`, found without square roots of
/// non-squares when possible. `None` when no candidate is found.
pub fn unit_vector_in<F: Field>(basis: &[Vec<F>], m: &Metric<F>) -> Option<Vec<F>> {
    let ortho = orthogonal_basis(basis, m);
    if ortho.is_empty() {
        return None;
    }
    for w in &ortho {
        if let Some(u) = normalized(w, m) {
            return Some(u);
        }
    }
    let norms: Vec<F> = ortho.iter().map(|w| m.inner(w, w)).collect();
    let ratio_root = |i: usize, j: usize| (norms[j].clone() * &norms[i].inv()?).sqrt()?.inv();
    for i in 0..ortho.len() {
        for j in i + 1..ortho.len() {
            if let Some(t) = ratio_root(i, j) {
                if let Some((x, y)) = F::circle_point(&norms[i]) {
                    return Some(vec_add(
                        &vec_scale(&ortho[i], &x),
                        &vec_scale(&ortho[j], &(y * &t)),
                    ));
                }
            }
        }
    }
    if ortho.len() >= 4 {
        let mut scaled = vec![ortho[0].clone()];
        for k in 1..4 {
            match ratio_root(0, k) {
                Some(t) => scaled.push(vec_scale(&ortho[k], &t)),
                None => break,
            }
        }
        if scaled.len() == 4 {
            if let Some(c) = F::sphere_point4(&norms[0]) {
                let mut u = vec![F::zero(); basis[0].len()];
                for (w, x) in scaled.iter().zip(c.iter()) {
                    u = vec_add(&u, &vec_scale(w, x));
                }
                return Some(u);
            }
        }
    }
    None
}

/// Distinct eigenvalues of a `g`-self-adjoint `h` on the span of `basis`
/// together with their eigenspaces.
fn eigenspaces<F: Field>(
    h: &Mat<F>,
    basis: &[Vec<F>],
    m: &Metric<F>,
) -> Option<Vec<(F, Subspace<F>)>> {
    let n = h.rows();
    let gf = m.matrix().to_f64();
    let hf = h.to_f64();
    let bf: Vec<Vec<f64>> = basis
        .iter()
        .map(|v| v.iter().map(|x| x.to_f64()).collect())
        .collect();
    let on = gram_schmidt_f64(&bf, &gf);
    let k = on.len();
    let sym = Mat::from_fn(k, k, |i, j| {
        0.5 * (bilinear(&gf, &hf.mul_vec(&on[i]), &on[j])
            + bilinear(&gf, &on[i], &hf.mul_vec(&on[j])))
    });
    let (mut vals, _) = symmetric_eigen(&sym);
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for v in vals {
        match clusters.last_mut() {
            Some(c) if (v - c[c.len() - 1]).abs() <= 1e-7 * (1.0 + v.abs()) => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    let sub = Subspace::span(n, basis);
    let mut out = Vec::new();
    let mut total = 0;
    for c in clusters {
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        let lam: F = lift(mean)?;
        let shifted = h.sub(&Mat::identity(n).scale(&lam));
        let ker = Subspace::span(n, &shifted.kernel()).intersection(&sub);
        if ker.dim() != c.len() {
            return None;
        }
        total += ker.dim();
        out.push((lam, ker));
    }
    (total == sub.dim()).then_some(out)
}

fn near_form<F: Field>(a: &KForm<F>, b: &KForm<F>, tol: f64) -> bool {
    (a - b).near_zero(tol)
}

pub(crate) fn same_algebra<F: Field>(a: &LieAlgebra<F>, b: &LieAlgebra<F>, tol: f64) -> bool {
    a.dim() == b.dim() && (1..=a.dim()).all(|k| near_form(a.d_generator(k), b.d_generator(k), tol))
}

fn is_phi0<F: Field>(phi: &KForm<F>, tol: f64) -> bool {
    near_form(phi, &phi0(), tol)
}

/// Output of [`dim1_adapted_basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct Dim1Adapted<F> {
    /// Columns are the new basis vectors in old coordinates.
    pub basis: Mat<F>,
    /// `d e^7 = a e^{12} + b e^{34} + c e^{56}` in the new basis.
    pub abc: [F; 3],
    /// The input already had the normal form; `basis` is the identity.
    pub already_adapted: bool,
}

fn dim1_normal_form<F: Field>(l: &LieAlgebra<F>, tol: f64) -> Option<[F; 3]> {
    if (1..=6).any(|k| !l.d_generator(k).near_zero(tol)) {
        return None;
    }
    let d7 = l.d_generator(7);
    let abc = [d7.coeff(&[1, 2]), d7.coeff(&[3, 4]), d7.coeff(&[5, 6])];
    let rebuilt = KForm::monomial(7, &[1, 2], abc[0].clone()).ok()?
        + KForm::monomial(7, &[3, 4], abc[1].clone()).ok()?
        + KForm::monomial(7, &[5, 6], abc[2].clone()).ok()?;
    near_form(d7, &rebuilt, tol).then_some(abc)
}

/// Orders by `|x|` descending, positive first on ties.
fn triple_order<F: Field>(a: &F, b: &F) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    let d = b.abs() - a.abs();
    if d.is_positive() && !d.is_zero() {
        return Greater;
    }
    if (-d.clone()).is_positive() && !d.is_zero() {
        return Less;
    }
    match (
        a.is_positive() && !a.is_zero(),
        b.is_positive() && !b.is_zero(),
    ) {
        (true, false) => Less,
        (false, true) => Greater,
        _ => Equal,
    }
}

/// Candidate vectors for a complex line inside `rest`: the basis itself
/// followed by pairwise sums and differences.
fn line_candidates<F: Field>(rest: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = rest.to_vec();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            out.push(vec_add(&rest[i], &rest[j]));
            out.push(vec_sub(&rest[i], &rest[j]));
        }
    }
    out
}

/// An orthonormal basis with `φ = φ0`, `e7` spanning `g'` and
/// `d e^7 = a e^{12} + b e^{34} + c e^{56}`.
///
/// The pairs are ordered by `|a| ≥ |b| ≥ |c|`, positive values first on
/// ties. Inputs already in normal form keep their basis.
pub fn dim1_adapted_basis<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<Option<Dim1Adapted<F>>> {
    let gp = l.commutator();
    if gp.dim() != 1 {
        return Err(Error::InvalidAlgebra(format!(
            "dim g' = {}, expected 1",
            gp.dim()
        )));
    }
    if !l.differential(&s.psi).near_zero(tol) {
        return Err(Error::NotCoclosed("d psi is not zero".into()));
    }
    if is_phi0(&s.phi, tol) {
        if let Some(abc) = dim1_normal_form(l, tol) {
            return Ok(Some(Dim1Adapted {
                basis: Mat::identity(7),
                abc,
                already_adapted: true,
            }));
        }
    }
    let m = &s.metric;
    let Some(e7) = unit_vector_in(gp.basis(), m) else {
        return Ok(None);
    };
    let omega = s.phi.contract(&e7)?.two_form_matrix()?;
    let j = m.inverse().mul(&omega).neg();
    let a = l.j_unchecked(m, &e7).into_matrix().neg();
    let h = j.mul(&a).neg();
    let perp = Subspace::span(7, &[e7.clone()]).orthogonal_complement(m);
    let Some(spaces) = eigenspaces(&h, perp.basis(), m) else {
        return Ok(None);
    };
    let mut pairs: Vec<(F, Vec<F>)> = Vec::new();
    for (lam, space) in spaces {
        let mut chosen: Vec<Vec<F>> = Vec::new();
        for _ in 0..space.dim() / 2 {
            let rest = orthogonal_basis(
                &space
                    .basis()
                    .iter()
                    .map(|v| project_out(v, &chosen, m))
                    .collect::<Vec<_>>(),
                m,
            );
            let found = line_candidates(&rest).into_iter().find_map(|w| {
                let jw = j.mul_vec(&w);
                unit_vector_in(&[w, jw], m)
            });
            let Some(u) = found else { return Ok(None) };
            let ju = j.mul_vec(&u);
            chosen.push(u.clone());
            chosen.push(ju);
            pairs.push((lam.clone(), u));
        }
    }
    if pairs.len() != 3 {
        return Err(Error::Inconsistent(format!(
            "found {} complex lines instead of 3",
            pairs.len()
        )));
    }
    pairs.sort_by(|x, y| triple_order(&x.0, &y.0));
    let build = |u1: &[F]| {
        let us = [u1.to_vec(), pairs[1].1.clone(), pairs[2].1.clone()];
        let mut cols = Vec::new();
        for u in &us {
            cols.push(u.clone());
            cols.push(j.mul_vec(u));
        }
        cols.push(e7.clone());
        Mat::from_cols(&cols)
    };
    let mut w = build(&pairs[0].1);
    if !is_phi0(&s.phi.pullback(&w), tol) {
        // rotate the first line so that Re Ω takes the standard form
        let pulled = s.phi.pullback(&w);
        let (c, sn) = (pulled.coeff(&[1, 3, 5]), pulled.coeff(&[1, 3, 6]));
        let u1 = &pairs[0].1;
        let ju1 = j.mul_vec(u1);
        let found = [F::one(), -F::one()].into_iter().find_map(|sign| {
            let cand = build(&vec_add(
                &vec_scale(u1, &c),
                &vec_scale(&ju1, &(sn.clone() * &sign)),
            ));
            is_phi0(&s.phi.pullback(&cand), tol).then_some(cand)
        });
        w = found.ok_or_else(|| {
            Error::Inconsistent("no SU(3) phase brings φ to the model form".into())
        })?;
    }
    let abc = [pairs[0].0.clone(), pairs[1].0.clone(), pairs[2].0.clone()];
    let moved = l.change_basis(&w)?;
    match dim1_normal_form(&moved, tol) {
        Some(got) if got.iter().zip(abc.iter()).all(|(x, y)| x.approx_eq(y, tol)) => {}
        _ => {
            return Err(Error::Inconsistent(
                "adapted basis does not give the dim-1 normal form".into(),
            ))
        }
    }
    Ok(Some(Dim1Adapted {
        basis: w,
        abc,
        already_adapted: false,
    }))
}

/// Output of [`as0_adapted_basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct As0Basis<F> {
    pub basis: Mat<F>,
    /// `dim g' = 2` and `c` was completed by the cross product.
    pub extended: bool,
    pub already_adapted: bool,
}

fn in_as0_form<F: Field>(l: &LieAlgebra<F>, s: &G2Structure<F>, c: &Subspace<F>, tol: f64) -> bool {
    is_phi0(&s.phi, tol)
        && c.equals(&Subspace::coordinate(7, &[5, 6, 7]))
        && As0Split::new(l).is_ok()
}

/// An orthonormal basis with `φ = φ0` and `c = ⟨e5, e6, e7⟩` a calibrated
/// central subspace containing `g'`. For `dim g' = 2`, `c` is spanned by
/// `g'` and the cross product of an orthonormal basis of `g'`.
pub fn as0_adapted_basis<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<Option<As0Basis<F>>> {
    let m = &s.metric;
    let gp = l.commutator();
    let (c, extended) = match gp.dim() {
        3 => (gp.clone(), false),
        2 => {
            let Some(z6) = unit_vector_in(gp.basis(), m) else {
                return Ok(None);
            };
            let rest = Subspace::span(7, &[z6.clone()])
                .orthogonal_complement(m)
                .intersection(&gp);
            let Some(z7) = unit_vector_in(rest.basis(), m) else {
                return Ok(None);
            };
            let z5 = s.cross(&z6, &z7);
            if !l.center().contains(&z5) {
                return Err(Error::Inconsistent(
                    "the cross product of g' is not central".into(),
                ));
            }
            (Subspace::span(7, &[z5, z6, z7]), true)
        }
        d => {
            return Err(Error::InvalidAlgebra(format!(
                "dim g' = {d}, expected 2 or 3"
            )))
        }
    };
    let cb = c.basis();
    if !s.calibrates(&[cb[0].clone(), cb[1].clone(), cb[2].clone()]) {
        return Err(Error::NotCalibrated("φ does not calibrate g'".into()));
    }
    if in_as0_form(l, s, &c, tol) {
        return Ok(Some(As0Basis {
            basis: Mat::identity(7),
            extended,
            already_adapted: true,
        }));
    }
    let Some(z5) = unit_vector_in(cb, m) else {
        return Ok(None);
    };
    let rest = Subspace::span(7, &[z5.clone()])
        .orthogonal_complement(m)
        .intersection(&c);
    let Some(z6) = unit_vector_in(rest.basis(), m) else {
        return Ok(None);
    };
    let z7 = s.cross(&z5, &z6);
    let q = c.orthogonal_complement(m);
    let Some(e1) = unit_vector_in(q.basis(), m) else {
        return Ok(None);
    };
    let e2 = s.cross(&z7, &e1);
    let e3 = s.cross(&z5, &e1);
    let e4 = s.cross(&e1, &z6);
    let w = Mat::from_cols(&[e1, e2, e3, e4, z5, z6, z7]);
    if !is_phi0(&s.phi.pullback(&w), tol) {
        return Err(Error::Inconsistent(
            "cross-product frame does not give the model form".into(),
        ));
    }
    Ok(Some(As0Basis {
        basis: w,
        extended,
        already_adapted: false,
    }))
}

/// `s_{ij} = ½ g(σ_i^+, α_{j+4}^+)` for an input in as0 form.
#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix<F> {
    pub s: Mat<F>,
    pub mu: F,
}

impl<F: Field> SMatrix<F> {
    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.s[(i, j)].near_zero(tol)))
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..3)
            .map(|i| (0..3).map(|j| self.s[(i, j)].to_scalar()).collect())
            .collect()
    }
}

pub fn s_matrix<F: Field>(l: &LieAlgebra<F>, s: &G2Structure<F>, tol: f64) -> Result<SMatrix<F>> {
    if !is_phi0(&s.phi, tol) {
        return Err(Error::NotAdapted("φ is not in the model form".into()));
    }
    let split = As0Split::new(l)?;
    let id = Metric::identity(7);
    let half = F::from_ratio(1, 2);
    let mut sm = Mat::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            sm[(i, j)] = sigma_plus::<F>(i + 1).inner(&split.plus[j], &id)? * &half;
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if !sm[(i, j)].approx_eq(&sm[(j, i)], tol) {
                return Err(Error::NotCoclosed("d psi is not zero".into()));
            }
        }
    }
    let mu = sm.trace();
    Ok(SMatrix { s: sm, mu })
}

/// Output of [`diagonalize_s`].
#[derive(Clone, Debug, PartialEq)]
pub struct SDiagonal<F> {
    /// A G2 map preserving `⟨e1..e4⟩` and `⟨e5, e6, e7⟩`.
    pub basis: Mat<F>,
    pub d: [F; 3],
}

/// A quaternion `q`, up to a real factor, with `x ↦ q x q̄` equal to the
/// rotation `r` of `Im H`.
fn rotation_quaternion<F: Field>(r: &Mat<F>) -> Quaternion<F> {
    let one = F::one();
    let (r11, r22, r33) = (r[(0, 0)].clone(), r[(1, 1)].clone(), r[(2, 2)].clone());
    let rows = [
        [
            one.clone() + &r11 + &r22 + &r33,
            r[(2, 1)].clone() - &r[(1, 2)],
            r[(0, 2)].clone() - &r[(2, 0)],
            r[(1, 0)].clone() - &r[(0, 1)],
        ],
        [
            r[(2, 1)].clone() - &r[(1, 2)],
            one.clone() + &r11 - &r22 - &r33,
            r[(0, 1)].clone() + &r[(1, 0)],
            r[(0, 2)].clone() + &r[(2, 0)],
        ],
        [
            r[(0, 2)].clone() - &r[(2, 0)],
            r[(0, 1)].clone() + &r[(1, 0)],
            one.clone() - &r11 + &r22 - &r33,
            r[(1, 2)].clone() + &r[(2, 1)],
        ],
        [
            r[(1, 0)].clone() - &r[(0, 1)],
            r[(0, 2)].clone() + &r[(2, 0)],
            r[(1, 2)].clone() + &r[(2, 1)],
            one - &r11 - &r22 + &r33,
        ],
    ];
    let best = (0..4)
        .max_by(|&a, &b| {
            rows[a][a]
                .to_f64()
                .partial_cmp(&rows[b][b].to_f64())
                .unwrap()
        })
        .unwrap();
    Quaternion(rows[best].clone())
}

/// A G2 map `x ↦ h̄ x h` that makes `S` diagonal.
pub fn diagonalize_s<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<Option<SDiagonal<F>>> {
    let sm = s_matrix(l, s, tol)?;
    if sm.is_diagonal(tol) {
        let d = [
            sm.s[(0, 0)].clone(),
            sm.s[(1, 1)].clone(),
            sm.s[(2, 2)].clone(),
        ];
        return Ok(Some(SDiagonal {
            basis: Mat::identity(7),
            d,
        }));
    }
    let id3 = Metric::identity(3);
    let std3: Vec<Vec<F>> = (0..3).map(|i| crate::linalg::unit_vector(3, i)).collect();
    let Some(spaces) = eigenspaces(&sm.s, &std3, &id3) else {
        return Ok(None);
    };
    let mut cols: Vec<Vec<F>> = Vec::new();
    for (_, space) in &spaces {
        let mut local: Vec<Vec<F>> = Vec::new();
        for _ in 0..space.dim() {
            let rest: Vec<Vec<F>> = space
                .basis()
                .iter()
                .map(|v| project_out(v, &local, &id3))
                .collect();
            let Some(u) = unit_vector_in(&rest, &id3) else {
                return Ok(None);
            };
            local.push(u);
        }
        cols.extend(local);
    }
    let mut p = Mat::from_cols(&cols);
    if !p.det().is_positive() {
        for r in 0..3 {
            p[(r, 2)] = -p[(r, 2)].clone();
        }
    }
    let qt = rotation_quaternion(&p);
    for h in [qt.clone(), qt.conj()] {
        let phi_map = g2_conjugation(&h)?;
        let moved = l.change_basis(&phi_map)?;
        let sm2 = s_matrix(&moved, s, tol)?;
        if sm2.is_diagonal(tol) {
            let d = [
                sm2.s[(0, 0)].clone(),
                sm2.s[(1, 1)].clone(),
                sm2.s[(2, 2)].clone(),
            ];
            return Ok(Some(SDiagonal { basis: phi_map, d }));
        }
    }
    Err(Error::Inconsistent(
        "the Sp(1) lift of the eigenbasis does not diagonalize S".into(),
    ))
}

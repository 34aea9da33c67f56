//! Basis-free instanton criterion for `dim g' ≥ 2`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::g2::G2Structure;
use crate::liealg::{tau, LieAlgebra, Subspace};
use crate::linalg::Mat;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caracg2Verdict {
    /// `λ` values for which `∇^λ` is an instanton according to the criterion.
    pub admissible_lambda: Vec<Scalar>,
    pub applicable: bool,
    pub dim_commutator: usize,
    pub calibrated: bool,
    /// `B(z, z') = ½ g(σ(z), α(z'))` on the chosen basis of `c`.
    pub s_matrix: Option<Vec<Vec<Scalar>>>,
    pub mu: Option<Scalar>,
    pub sigma_mu: bool,
    pub jcond: bool,
    pub holds: bool,
    pub failures: Vec<String>,
}

impl Caracg2Verdict {
    fn empty(dim: usize) -> Self {
        Caracg2Verdict {
            admissible_lambda: Vec::new(),
            applicable: dim >= 2,
            dim_commutator: dim,
            calibrated: false,
            s_matrix: None,
            mu: None,
            sigma_mu: false,
            jcond: false,
            holds: false,
            failures: Vec::new(),
        }
    }
}

/// The central subspace `c ⊇ g'` of dimension 3, or a reason it does not exist.
fn central_c<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
) -> std::result::Result<Subspace<F>, String> {
    let gp = l.commutator();
    match gp.dim() {
        3 => Ok(gp),
        2 => {
            let b = gp.basis();
            let z = s.cross(&b[0], &b[1]);
            if l.center().contains(&z) {
                Ok(Subspace::span(7, &[b[0].clone(), b[1].clone(), z]))
            } else {
                Err("the cross product of g' is not central".into())
            }
        }
        d => Err(format!("dim g' = {d}")),
    }
}

/// Checks `dim g' = 3`, `S = (μ/3) Id` with `μ ≠ 0` and
/// `[j(z), j(z')] = (2/3) μ j(τ(z) z')` without choosing an adapted basis.
pub fn check_caracg2<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<Caracg2Verdict> {
    let dim = l.commutator().dim();
    let mut v = Caracg2Verdict::empty(dim);
    if !v.applicable {
        v.failures.push(format!("not applicable: dim g' = {dim}"));
        return Ok(v);
    }
    if dim != 3 {
        v.failures
            .push(format!("dim g' = {dim}, the criterion needs 3"));
    }
    let c = match central_c(l, s) {
        Ok(c) => c,
        Err(e) => {
            v.failures.push(e);
            return Ok(v);
        }
    };
    let m = &s.metric;
    let zs = c.basis().to_vec();
    v.calibrated = s.calibrates(&[zs[0].clone(), zs[1].clone(), zs[2].clone()]);
    if !v.calibrated {
        v.failures.push("c is not calibrated by φ".into());
        return Ok(v);
    }
    let pq = c.orthogonal_complement(m).projector(m);
    let sigma = |z: &[F]| s.phi.contract(z).map(|f| f.pullback(&pq));
    let alpha = |z: &[F]| l.differential(&m.flat(z));
    let half = F::from_ratio(1, 2);
    let mut b = Mat::zeros(3, 3);
    for i in 0..3 {
        let si = sigma(&zs[i])?;
        for j in 0..3 {
            b[(i, j)] = si.inner(&alpha(&zs[j]), m)? * &half;
        }
    }
    let g = c.gram(m);
    let ginv = g.inverse().expect("basis of c");
    let mu = ginv.mul(&b).trace();
    v.s_matrix = Some(
        (0..3)
            .map(|i| b.row(i).iter().map(|x| x.to_scalar()).collect())
            .collect(),
    );
    v.mu = Some(mu.to_scalar());
    let third = mu.clone() * &F::from_ratio(1, 3);
    v.sigma_mu = !mu.near_zero(tol) && b.sub(&g.scale(&third)).near_zero(tol);
    if !v.sigma_mu {
        v.failures.push(if mu.near_zero(tol) {
            "μ = 0".into()
        } else {
            "S is not (μ/3) Id".into()
        });
    }
    let k = mu.clone() * &F::from_ratio(2, 3);
    let mut jcond = true;
    for a in 0..3 {
        let ja = l.j_unchecked(m, &zs[a]).into_matrix();
        let ta = tau(&zs[a], &s.phi, &c, m)?;
        for bb in a + 1..3 {
            let jb = l.j_unchecked(m, &zs[bb]).into_matrix();
            let lhs = ja.commutator(&jb);
            let w = ta.apply(&zs[bb]);
            let rhs = l.j_unchecked(m, &w).into_matrix().scale(&k);
            if !lhs.sub(&rhs).near_zero(tol) {
                jcond = false;
                v.failures.push(format!(
                    "[j(z{}), j(z{})] ≠ (2/3)μ j(τ(z{})z{})",
                    a + 1,
                    bb + 1,
                    a + 1,
                    bb + 1
                ));
            }
        }
    }
    v.jcond = jcond;
    v.holds = dim == 3 && v.sigma_mu && v.jcond;
    if v.holds {
        v.admissible_lambda.push(Scalar::exact(1, 1));
    }
    Ok(v)
}

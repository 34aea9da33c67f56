//! Recognition of the three instanton normal forms.

use serde::{Deserialize, Serialize};

use super::adapted::{
    as0_adapted_basis, diagonalize_s, dim1_adapted_basis, same_algebra, unit_vector_in,
};
use super::families::builtin_family;
use super::instanton_at;
use crate::error::{Error, Result};
use crate::g2::{g2_left_mult, q_to_quaternion, G2Structure, TorsionForms};
use crate::liealg::{As0Split, LieAlgebra, Subspace};
use crate::linalg::Mat;
use crate::scalar::{Field, Scalar, ScalarKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    NotInstanton,
    /// `d e^7 = a(e^{12} - e^{56}) + b(e^{34} - e^{56})`.
    Case1,
    /// Quaternionic Heisenberg.
    Case2,
    /// `d e^5 = -2ν e^{24}`, `d e^6 = -2ν e^{23}`, `d e^7 = 2ν e^{34}`.
    Case3,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::NotInstanton => "not an instanton",
            Case::Case1 => "case 1",
            Case::Case2 => "case 2",
            Case::Case3 => "case 3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum CaseParams {
    Heis { a: Scalar, b: Scalar },
    Quaternionic { nu: Scalar },
    N32 { nu: Scalar },
}

impl std::fmt::Display for CaseParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseParams::Heis { a, b } => write!(f, "a = {a}, b = {b}"),
            CaseParams::Quaternionic { nu } | CaseParams::N32 { nu } => write!(f, "nu = {nu}"),
        }
    }
}

/// The G2 change of basis bringing the input to its normal form. Columns
/// are the new basis vectors in the input coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub mode: ScalarKind,
    pub matrix: Vec<Vec<Scalar>>,
}

impl Witness {
    fn from_mat<F: Field>(w: &Mat<F>) -> Self {
        Witness {
            mode: F::KIND,
            matrix: (0..w.rows())
                .map(|i| w.row(i).iter().map(|x| x.to_scalar()).collect())
                .collect(),
        }
    }

    pub fn to_mat<F: Field>(&self) -> Result<Mat<F>> {
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(F::from_scalar).collect::<Result<Vec<F>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_rows(rows))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationResult {
    pub case: Case,
    pub params: Option<CaseParams>,
    pub witness: Option<Witness>,
    pub dim_commutator: usize,
    /// `tr S`, or `a + b + c` when `dim g' = 1`.
    pub mu: Scalar,
    pub instanton_at_one: bool,
    pub max_residual_at_one: Scalar,
    /// The witness needed irrational entries and was computed in floating point.
    pub downgraded: bool,
    pub notes: Vec<String>,
}

struct Found<F> {
    case: Case,
    params: CaseParams,
    witness: Mat<F>,
}

fn check_normal_form<F: Field>(
    l: &LieAlgebra<F>,
    w: &Mat<F>,
    family: &str,
    params: &[F],
    tol: f64,
) -> Result<()> {
    let (target, _) = builtin_family(family, params)?;
    if same_algebra(&l.change_basis(w)?, &target, tol) {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!(
            "witness does not produce the {family} normal form"
        )))
    }
}

fn find_dim1<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<Option<Found<F>>> {
    let Some(ad) = dim1_adapted_basis(l, s, tol)? else {
        return Ok(None);
    };
    let [a, b, c] = ad.abc.clone();
    if !(a.clone() + &b + &c).near_zero(tol) {
        return Err(Error::Inconsistent("instanton with a + b + c ≠ 0".into()));
    }
    check_normal_form(l, &ad.basis, "heis", &[a.clone(), b.clone()], tol)?;
    Ok(Some(Found {
        case: Case::Case1,
        params: CaseParams::Heis {
            a: a.to_scalar(),
            b: b.to_scalar(),
        },
        witness: ad.basis,
    }))
}

/// Common kernel of `j(e5), j(e6), j(e7)` inside `⟨e1..e4⟩` for an algebra in
/// as0 form with the standard metric.
fn common_kernel<F: Field>(l: &LieAlgebra<F>, s: &G2Structure<F>) -> Subspace<F> {
    let mut rows: Vec<Vec<F>> = Vec::new();
    for k in 5..=7 {
        let j = l
            .j_unchecked(&s.metric, &crate::linalg::unit_vector(7, k - 1))
            .into_matrix();
        for r in 0..7 {
            rows.push(j.row(r));
        }
    }
    let ker = Mat::from_rows(rows).kernel();
    Subspace::span(7, &ker).intersection(&Subspace::coordinate(7, &[1, 2, 3, 4]))
}

fn find_dim3<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<Option<Found<F>>> {
    let Some(b) = as0_adapted_basis(l, s, tol)? else {
        return Ok(None);
    };
    let std = G2Structure::standard();
    let l1 = l.change_basis(&b.basis)?;
    let Some(dg) = diagonalize_s(&l1, &std, tol)? else {
        return Ok(None);
    };
    let nu = dg.d[0].clone();
    if !dg.d.iter().all(|x| x.approx_eq(&nu, tol)) || nu.near_zero(tol) {
        return Err(Error::Inconsistent(
            "instanton with S not a nonzero multiple of the identity".into(),
        ));
    }
    let w2 = b.basis.mul(&dg.basis);
    let l2 = l.change_basis(&w2)?;
    let split = As0Split::new(&l2)?;
    if split.minus.iter().all(|f| f.near_zero(tol)) {
        check_normal_form(l, &w2, "qheis", &[nu.clone()], tol)?;
        return Ok(Some(Found {
            case: Case::Case2,
            params: CaseParams::Quaternionic { nu: nu.to_scalar() },
            witness: w2,
        }));
    }
    let ker = common_kernel(&l2, &std);
    if ker.dim() != 1 {
        return Err(Error::Inconsistent(format!(
            "common kernel of j has dimension {}",
            ker.dim()
        )));
    }
    let Some(x) = unit_vector_in(ker.basis(), &std.metric) else {
        return Ok(None);
    };
    let w3 = w2.mul(&g2_left_mult(&q_to_quaternion(&x[..4]))?);
    check_normal_form(l, &w3, "n32", &[nu.clone()], tol)?;
    Ok(Some(Found {
        case: Case::Case3,
        params: CaseParams::N32 { nu: nu.to_scalar() },
        witness: w3,
    }))
}

fn find<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    dim: usize,
    tol: f64,
) -> Result<Option<Found<F>>> {
    match dim {
        1 => find_dim1(l, s, tol),
        3 => find_dim3(l, s, tol),
        d => Err(Error::Inconsistent(format!("instanton with dim g' = {d}"))),
    }
}

fn into_result<F: Field>(f: Found<F>) -> (Case, CaseParams, Witness) {
    (f.case, f.params, Witness::from_mat(&f.witness))
}

/// Decides whether `∇¹` is an instanton and, if so, which normal form the
/// input is G2-equivalent to. The instanton test always runs in the input
/// scalar type; only the witness may fall back to floating point.
pub fn classify<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<ClassificationResult> {
    let v = l.validate();
    if !v.valid {
        return Err(Error::InvalidAlgebra(v.messages.join("; ")));
    }
    if v.dim_commutator == 0 {
        return Err(Error::InvalidAlgebra(
            "abelian algebra, nothing to classify".into(),
        ));
    }
    if !v.two_step {
        return Err(Error::InvalidAlgebra("not 2-step nilpotent".into()));
    }
    let tf = TorsionForms::compute(l, s)?;
    if !tf.class(tol).coclosed {
        return Err(Error::NotCoclosed("d psi is not zero".into()));
    }
    let mu = super::mu_from_tau0(&tf.tau0, v.dim_commutator);
    let rep = instanton_at(l, s, &F::one(), tol)?;
    let mut out = ClassificationResult {
        case: Case::NotInstanton,
        params: None,
        witness: None,
        dim_commutator: v.dim_commutator,
        mu: mu.to_scalar(),
        instanton_at_one: rep.is_instanton,
        max_residual_at_one: rep.max_residual_norm.to_scalar(),
        downgraded: false,
        notes: Vec::new(),
    };
    if !rep.is_instanton {
        for g in &rep.groups {
            if !g.vanishes {
                out.notes.push(format!(
                    "group {} fails with residual {}",
                    g.name, g.max_norm
                ));
            }
        }
        return Ok(out);
    }
    let found = match find(l, s, v.dim_commutator, tol)? {
        Some(f) => into_result(f),
        None if F::KIND == ScalarKind::Exact => {
            let ftol = tol.max(1e-9);
            let f = find(&l.to_f64(), &s.to_f64(), v.dim_commutator, ftol)?.ok_or_else(|| {
                Error::Inconsistent("no adapted basis found in floating point".into())
            })?;
            out.downgraded = true;
            out.notes
                .push("witness needs irrational entries, computed in floating point".into());
            into_result(f)
        }
        None => return Err(Error::Inconsistent("no adapted basis found".into())),
    };
    out.case = found.0;
    out.params = Some(found.1);
    out.witness = Some(found.2);
    Ok(out)
}

//! Built-in Lie algebras with coclosed G2-structures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::g2::G2Structure;
use crate::liealg::{sigma_plus, LieAlgebra};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub name: String,
    pub params: Vec<String>,
    pub about: String,
}

const FAMILIES: &[(&str, &[&str], &str)] = &[
    ("heis", &["a", "b"], "de7 = a(e12 - e56) + b(e34 - e56)"),
    ("dim1", &["a", "b", "c"], "de7 = a e12 + b e34 + c e56"),
    (
        "qheis",
        &["nu"],
        "quaternionic Heisenberg, de^(i+4) = nu sigma_i^+",
    ),
    (
        "n32",
        &["nu"],
        "de5 = -2nu e24, de6 = -2nu e23, de7 = 2nu e34",
    ),
    (
        "n37a",
        &["d2", "d3", "d4", "r", "s"],
        "de5 = d3 e13, de6 = -d4 e14, de7 = d2 e12 with the (r, s) structure, r^2 + s^2 = 1",
    ),
    (
        "heisenberg",
        &["m"],
        "h_(2m+1) + R^(6-2m), de7 = e12 + ... + e(2m-1)(2m)",
    ),
    ("abelian", &[], "R^7"),
    ("sdiag", &["d5", "d6", "d7"], "de^(i+4) = d_(i+4) sigma_i^+"),
];

pub fn family_names() -> Vec<FamilySpec> {
    FAMILIES
        .iter()
        .map(|(n, p, a)| FamilySpec {
            name: n.to_string(),
            params: p.iter().map(|s| s.to_string()).collect(),
            about: a.to_string(),
        })
        .collect()
}

fn with_de<F: Field>(pairs: Vec<(usize, KForm<F>)>) -> Result<LieAlgebra<F>> {
    let mut de: Vec<KForm<F>> = (0..7).map(|_| KForm::zero(7, 2)).collect();
    for (k, f) in pairs {
        de[k - 1] = f;
    }
    LieAlgebra::from_differentials(&de)
}

fn mono<F: Field>(i: usize, j: usize, c: F) -> KForm<F> {
    KForm::monomial(7, &[i, j], c).expect("valid indices")
}

fn nonzero<F: Field>(x: &F, what: &str) -> Result<()> {
    if x.is_zero() {
        Err(Error::InvalidParams(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

fn heis<F: Field>(a: &F, b: &F) -> Result<LieAlgebra<F>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidParams(
            "heis needs (a, b) not both zero".into(),
        ));
    }
    let c = -(a.clone() + b);
    with_de(vec![(
        7,
        mono(1, 2, a.clone()) + mono(3, 4, b.clone()) + mono(5, 6, c),
    )])
}

fn dim1<F: Field>(a: &F, b: &F, c: &F) -> Result<LieAlgebra<F>> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::InvalidParams(
            "dim1 needs (a, b, c) not all zero".into(),
        ));
    }
    with_de(vec![(
        7,
        mono(1, 2, a.clone()) + mono(3, 4, b.clone()) + mono(5, 6, c.clone()),
    )])
}

fn sdiag<F: Field>(d: [&F; 3]) -> Result<LieAlgebra<F>> {
    with_de(
        (0..3)
            .map(|i| (i + 5, sigma_plus::<F>(i + 1).scale(d[i])))
            .collect(),
    )
}

fn n32<F: Field>(nu: &F) -> Result<LieAlgebra<F>> {
    nonzero(nu, "nu")?;
    let two = F::from_i64(2) * nu;
    with_de(vec![
        (5, mono(2, 4, -two.clone())),
        (6, mono(2, 3, -two.clone())),
        (7, mono(3, 4, two)),
    ])
}

/// `φ = e127 + e135 - e146 - r(e234 + e256 + e367 + e457) - s(e236 + e245 - e347 - e567)`.
pub fn n37a_phi<F: Field>(r: &F, s: &F) -> KForm<F> {
    let t = |idx: &[usize], c: F| KForm::monomial(7, idx, c).expect("valid");
    let one = F::one();
    let mut phi = t(&[1, 2, 7], one.clone()) + t(&[1, 3, 5], one.clone()) + t(&[1, 4, 6], -one);
    for idx in [[2, 3, 4], [2, 5, 6], [3, 6, 7], [4, 5, 7]] {
        phi = phi + t(&idx, -r.clone());
    }
    for (idx, sign) in [
        ([2, 3, 6], -1),
        ([2, 4, 5], -1),
        ([3, 4, 7], 1),
        ([5, 6, 7], 1),
    ] {
        phi = phi + t(&idx, s.clone() * &F::from_i64(sign));
    }
    phi
}

/// Builds a named family. Parameter counts follow [`family_names`].
pub fn builtin_family<F: Field>(
    name: &str,
    params: &[F],
) -> Result<(LieAlgebra<F>, G2Structure<F>)> {
    let spec = FAMILIES
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    if params.len() != spec.1.len() {
        return Err(Error::InvalidParams(format!(
            "{name} takes {} parameters ({}), got {}",
            spec.1.len(),
            spec.1.join(", "),
            params.len()
        )));
    }
    let std = G2Structure::standard;
    let p = params;
    match name {
        "heis" => Ok((heis(&p[0], &p[1])?, std())),
        "dim1" => Ok((dim1(&p[0], &p[1], &p[2])?, std())),
        "qheis" => {
            nonzero(&p[0], "nu")?;
            Ok((sdiag([&p[0], &p[0], &p[0]])?, std()))
        }
        "n32" => Ok((n32(&p[0])?, std())),
        "sdiag" => Ok((sdiag([&p[0], &p[1], &p[2]])?, std())),
        "abelian" => Ok((LieAlgebra::abelian(7), std())),
        "heisenberg" => {
            let m = p[0]
                .to_rational_approx()
                .filter(|q| q.is_integer())
                .map(|q| q.to_integer());
            let m: i64 = m
                .and_then(|m| i64::try_from(m).ok())
                .filter(|m| (1..=3).contains(m))
                .ok_or_else(|| Error::InvalidParams("heisenberg needs m in {1, 2, 3}".into()))?;
            let mut f = KForm::zero(7, 2);
            for k in 0..m as usize {
                f = f + mono(2 * k + 1, 2 * k + 2, F::one());
            }
            Ok((with_de(vec![(7, f)])?, std()))
        }
        "n37a" => {
            let (d2, d3, d4, r, s) = (&p[0], &p[1], &p[2], &p[3], &p[4]);
            for (x, w) in [(d2, "d2"), (d3, "d3"), (d4, "d4")] {
                nonzero(x, w)?;
            }
            if !(r.square() + &s.square() - F::one()).near_zero(1e-12) {
                return Err(Error::InvalidParams("n37a needs r^2 + s^2 = 1".into()));
            }
            let l = with_de(vec![
                (5, mono(1, 3, d3.clone())),
                (6, mono(1, 4, -d4.clone())),
                (7, mono(1, 2, d2.clone())),
            ])?;
            Ok((l, G2Structure::new(n37a_phi(r, s))?))
        }
        _ => unreachable!("listed family"),
    }
}

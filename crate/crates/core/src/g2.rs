//! G2-structures on a 7-dimensional Lie algebra: the model forms, the
//! metric induced by a positive 3-form, intrinsic torsion and the
//! characteristic torsion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Metric, SkewEndo};
use crate::liealg::LieAlgebra;
use crate::linalg::Mat;
use crate::scalar::Field;

/// `φ0 = e^{127} + e^{347} + e^{567} + e^{135} - e^{146} - e^{236} - e^{245}`.
pub fn phi0<F: Field>() -> KForm<F> {
    KForm::from_int_terms(
        7,
        3,
        &[
            (&[1, 2, 7], 1),
            (&[3, 4, 7], 1),
            (&[5, 6, 7], 1),
            (&[1, 3, 5], 1),
            (&[1, 4, 6], -1),
            (&[2, 3, 6], -1),
            (&[2, 4, 5], -1),
        ],
    )
}

/// `ψ0 = ⋆φ0` for the identity metric and orientation `e^{1..7}`.
pub fn psi0<F: Field>() -> KForm<F> {
    KForm::from_int_terms(
        7,
        4,
        &[
            (&[1, 2, 3, 4], 1),
            (&[1, 2, 5, 6], 1),
            (&[1, 3, 6, 7], 1),
            (&[1, 4, 5, 7], 1),
            (&[2, 3, 5, 7], 1),
            (&[2, 4, 6, 7], -1),
            (&[3, 4, 5, 6], 1),
        ],
    )
}

/// `B_ij` with `(e_i ⌟ φ) ∧ (e_j ⌟ φ) ∧ φ = B_ij e^{1..7}`; `6 I` for `φ0`.
pub fn phi_bilinear<F: Field>(phi: &KForm<F>) -> Result<Mat<F>> {
    if phi.dim() != 7 || phi.degree() != 3 {
        return Err(Error::NotPositive(
            "expected a 3-form in dimension 7".into(),
        ));
    }
    let contr: Vec<KForm<F>> = (1..=7)
        .map(|i| phi.contract_basis(i))
        .collect::<Result<_>>()?;
    let mut b = Mat::zeros(7, 7);
    for i in 0..7 {
        let wi = contr[i].wedge(phi)?;
        for j in i..7 {
            let v = contr[j].wedge(&wi)?.top_coeff();
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    Ok(b)
}

/// The metric `g_φ = B (36 det B)^{-1/9}` for the orientation `e^{1..7}`.
///
/// Fails with `NotPositive` when `B` is not positive definite and, over the
/// rationals, with `NeedsFloat` when the ninth root is irrational.
pub fn metric_from_phi<F: Field>(phi: &KForm<F>) -> Result<Metric<F>> {
    let b = phi_bilinear(phi)?;
    let det = b.det();
    for k in 1..=7 {
        let idx: Vec<usize> = (0..k).collect();
        let minor = b.submatrix(&idx, &idx).det();
        let ok = if F::KIND == crate::scalar::ScalarKind::Exact {
            minor.is_positive()
        } else {
            minor.to_f64() > crate::scalar::DEFAULT_TOL
        };
        if !ok {
            return Err(Error::NotPositive(format!(
                "B_phi is not positive definite (leading minor {k})"
            )));
        }
    }
    let root = (F::from_i64(36) * &det)
        .nth_root(9)
        .ok_or_else(|| Error::NeedsFloat("(36 det B)^(1/9) is irrational".into()))?;
    let inv = root.inv().ok_or(Error::DivisionByZero)?;
    Metric::new(b.scale(&inv), 1)
}

/// A G2-structure on a Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Structure<F> {
    pub phi: KForm<F>,
    pub psi: KForm<F>,
    pub metric: Metric<F>,
}

impl<F: Field> G2Structure<F> {
    pub fn new(phi: KForm<F>) -> Result<Self> {
        let metric = metric_from_phi(&phi)?;
        let psi = phi.hodge_star(&metric).map_err(|e| match e {
            Error::ExactMetricNotIdentity => {
                Error::NeedsFloat("sqrt(det g_phi) is irrational".into())
            }
            e => e,
        })?;
        Ok(G2Structure { phi, psi, metric })
    }

    pub fn standard() -> Self {
        G2Structure {
            phi: phi0(),
            psi: psi0(),
            metric: Metric::identity(7),
        }
    }

    pub fn star(&self, a: &KForm<F>) -> KForm<F> {
        a.hodge_star(&self.metric)
            .expect("metric admits a Hodge star")
    }

    /// `x × y` with `g(x × y, z) = φ(x, y, z)`.
    pub fn cross(&self, x: &[F], y: &[F]) -> Vec<F> {
        let f = self
            .phi
            .contract(x)
            .and_then(|f| f.contract(y))
            .expect("dimension 7");
        self.metric.sharp(&f)
    }

    /// Whether the span of `b` is calibrated, i.e. `φ(b)^2 = det Gram(b)`.
    pub fn calibrates(&self, b: &[Vec<F>; 3]) -> bool {
        let v = self
            .phi
            .evaluate(&[&b[0], &b[1], &b[2]])
            .expect("3 vectors");
        let gram = Mat::from_fn(3, 3, |i, j| self.metric.inner(&b[i], &b[j]));
        !v.is_zero() && v.square() == gram.det()
    }

    pub fn to_f64(&self) -> G2Structure<f64> {
        G2Structure {
            phi: self.phi.to_f64(),
            psi: self.psi.to_f64(),
            metric: self.metric.to_f64(),
        }
    }

    /// Splits a 2-form into `Λ²_7` and `Λ²_14` parts, using the eigenvalues
    /// 2 and -1 of `a ↦ ⋆(a ∧ φ)`.
    pub fn lambda2_split(&self, a: &KForm<F>) -> Result<(KForm<F>, KForm<F>)> {
        if a.degree() != 2 {
            return Err(Error::DegreeMismatch(format!(
                "expected a 2-form, got degree {}",
                a.degree()
            )));
        }
        let t = self.star(&a.wedge(&self.phi)?);
        let third = F::from_ratio(1, 3);
        Ok(((a + &t).scale(&third), (a.scale_i(2) - t).scale(&third)))
    }

    pub fn in_lambda2_14(&self, a: &KForm<F>) -> Result<bool> {
        Ok(a.wedge(&self.psi)?.is_zero())
    }

    pub fn in_lambda2_7(&self, a: &KForm<F>) -> Result<bool> {
        Ok(self.star(&a.wedge(&self.phi)?) == a.scale_i(2))
    }

    /// Action of an endomorphism on forms as a derivation;
    /// `E ∈ g2` iff it annihilates `φ`.
    pub fn endo_action(e: &Mat<F>, a: &KForm<F>) -> KForm<F> {
        derivation_action(e, a)
    }

    pub fn is_in_g2(&self, e: &Mat<F>) -> bool {
        derivation_action(e, &self.phi).is_zero()
    }
}

/// `E · α` for `E ∈ gl(V)`, with `E · e^i = -e^i ∘ E` extended as a
/// derivation.
pub fn derivation_action<F: Field>(e: &Mat<F>, a: &KForm<F>) -> KForm<F> {
    let n = a.dim();
    let mut out = KForm::zero(n, a.degree());
    for (idx, c) in a.terms() {
        for m in 0..idx.len() {
            let i = idx[m] - 1;
            for j in 0..n {
                let eij = &e[(i, j)];
                if eij.is_zero() {
                    continue;
                }
                let mut new_idx = idx.clone();
                new_idx[m] = j + 1;
                let t = KForm::monomial(n, &new_idx, -(c.clone() * eij)).expect("valid");
                out = &out + &t;
            }
        }
    }
    out
}

/// Intrinsic torsion forms, defined by
/// `dφ = τ0 ψ + 3 τ1 ∧ φ + ⋆τ3` and `dψ = 4 τ1 ∧ ψ + τ2 ∧ φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionForms<F> {
    pub tau0: F,
    pub tau1: KForm<F>,
    pub tau2: KForm<F>,
    pub tau3: KForm<F>,
    pub dphi: KForm<F>,
    pub dpsi: KForm<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionClass {
    pub tau0_zero: bool,
    pub tau1_zero: bool,
    pub tau2_zero: bool,
    pub tau3_zero: bool,
    pub closed: bool,
    pub coclosed: bool,
    /// Nonzero components, e.g. `"W1+W3"`, or `"torsion-free"`.
    pub label: String,
}

impl<F: Field> TorsionForms<F> {
    pub fn compute(l: &LieAlgebra<F>, s: &G2Structure<F>) -> Result<Self> {
        let dphi = l.differential(&s.phi);
        let dpsi = l.differential(&s.psi);
        let tau0 = s
            .star(&s.phi.wedge(&dphi)?)
            .blade_coeff(crate::exterior::Blade::from_bits(0))
            * &F::from_ratio(1, 7);
        let star_dphi = s.star(&dphi);
        let tau1 = s
            .star(&s.phi.wedge(&star_dphi)?)
            .scale(&F::from_ratio(1, 12));
        let tau2 = s.star(&tau1.wedge(&s.psi)?).scale_i(4) - s.star(&dpsi);
        let tau3 = &(&star_dphi - &s.phi.scale(&tau0)) - &s.star(&tau1.wedge(&s.phi)?).scale_i(3);
        Ok(TorsionForms {
            tau0,
            tau1,
            tau2,
            tau3,
            dphi,
            dpsi,
        })
    }

    fn zero_test(&self, f: &KForm<F>, tol: f64) -> bool {
        if F::KIND == crate::scalar::ScalarKind::Exact {
            f.is_zero()
        } else {
            f.near_zero(tol)
        }
    }

    pub fn class(&self, tol: f64) -> TorsionClass {
        let t0 = if F::KIND == crate::scalar::ScalarKind::Exact {
            self.tau0.is_zero()
        } else {
            self.tau0.near_zero(tol)
        };
        let t1 = self.zero_test(&self.tau1, tol);
        let t2 = self.zero_test(&self.tau2, tol);
        let t3 = self.zero_test(&self.tau3, tol);
        let mut parts = Vec::new();
        for (z, name) in [(t0, "W1"), (t2, "W2"), (t3, "W3"), (t1, "W4")] {
            if !z {
                parts.push(name);
            }
        }
        TorsionClass {
            tau0_zero: t0,
            tau1_zero: t1,
            tau2_zero: t2,
            tau3_zero: t3,
            closed: self.zero_test(&self.dphi, tol),
            coclosed: self.zero_test(&self.dpsi, tol),
            label: if parts.is_empty() {
                "torsion-free".into()
            } else {
                parts.join("+")
            },
        }
    }
}

/// Torsion 3-form of the characteristic connection,
/// `T = (1/6)⟨dφ, ψ⟩ φ - ⋆dφ + 4 ⋆(τ1 ∧ φ)`; exists iff `τ2 = 0`.
pub fn characteristic_torsion<F: Field>(
    s: &G2Structure<F>,
    tf: &TorsionForms<F>,
    tol: f64,
) -> Result<KForm<F>> {
    let tau2_zero = if F::KIND == crate::scalar::ScalarKind::Exact {
        tf.tau2.is_zero()
    } else {
        tf.tau2.near_zero(tol)
    };
    if !tau2_zero {
        return Err(Error::NoCharacteristicConnection);
    }
    let c = s
        .star(&tf.dphi.wedge(&s.phi)?)
        .blade_coeff(crate::exterior::Blade::from_bits(0))
        * &F::from_ratio(1, 6);
    let t = &(&s.phi.scale(&c) - &s.star(&tf.dphi)) + &s.star(&tf.tau1.wedge(&s.phi)?).scale_i(4);
    Ok(t)
}

/// Quaternions `w + x i + y j + z k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<F>(pub [F; 4]);

impl<F: Field> Quaternion<F> {
    pub fn from_i64(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion([
            F::from_i64(w),
            F::from_i64(x),
            F::from_i64(y),
            F::from_i64(z),
        ])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a1, b1, c1, d1] = &self.0;
        let [a2, b2, c2, d2] = &o.0;
        let m = |x: &F, y: &F| x.clone() * y;
        Quaternion([
            m(a1, a2) - m(b1, b2) - m(c1, c2) - m(d1, d2),
            m(a1, b2) + m(b1, a2) + m(c1, d2) - m(d1, c2),
            m(a1, c2) - m(b1, d2) + m(c1, a2) + m(d1, b2),
            m(a1, d2) + m(b1, c2) - m(c1, b2) + m(d1, a2),
        ])
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Quaternion([a.clone(), -b.clone(), -c.clone(), -d.clone()])
    }

    pub fn norm_sq(&self) -> F {
        self.0.iter().fold(F::zero(), |acc, x| acc + x.square())
    }

    pub fn scale(&self, s: &F) -> Self {
        Quaternion(self.0.clone().map(|x| x * s))
    }
}

/// `(v1, v2, v3, v4) ↦ v1 + v3 i - v4 j + v2 k` on `⟨e1..e4⟩`.
pub fn q_to_quaternion<F: Field>(v: &[F]) -> Quaternion<F> {
    Quaternion([v[0].clone(), v[2].clone(), -v[3].clone(), v[1].clone()])
}

pub fn quaternion_to_q<F: Field>(h: &Quaternion<F>) -> [F; 4] {
    let [w, x, y, z] = h.0.clone();
    [w, z, x, -y]
}

/// `(v5, v6, v7) ↦ v5 i + v6 j + v7 k` on `⟨e5, e6, e7⟩`.
pub fn c_to_quaternion<F: Field>(v: &[F]) -> Quaternion<F> {
    Quaternion([F::zero(), v[0].clone(), v[1].clone(), v[2].clone()])
}

/// The element of G2 acting by `x ↦ h̄ x h / |h|^2` on both `⟨e1..e4⟩ ≅ H`
/// and `⟨e5, e6, e7⟩ ≅ Im H`. Rational whenever `h` is.
pub fn g2_conjugation<F: Field>(h: &Quaternion<F>) -> Result<Mat<F>> {
    let n = h.norm_sq().inv().ok_or(Error::DivisionByZero)?;
    let hb = h.conj();
    let act = |x: &Quaternion<F>| hb.mul(x).mul(h).scale(&n);
    let mut m = Mat::zeros(7, 7);
    for col in 0..4 {
        let mut v = vec![F::zero(); 4];
        v[col] = F::one();
        let img = quaternion_to_q(&act(&q_to_quaternion(&v)));
        for (r, x) in img.into_iter().enumerate() {
            m[(r, col)] = x;
        }
    }
    for col in 0..3 {
        let mut v = vec![F::zero(); 3];
        v[col] = F::one();
        let img = act(&c_to_quaternion(&v));
        for r in 0..3 {
            m[(4 + r, 4 + col)] = img.0[r + 1].clone();
        }
    }
    Ok(m)
}

/// Left multiplication by a unit quaternion on `⟨e1..e4⟩`, identity on
/// `⟨e5, e6, e7⟩`.
pub fn g2_left_mult<F: Field>(p: &Quaternion<F>) -> Result<Mat<F>> {
    if p.norm_sq() != F::one() {
        return Err(Error::InvalidParams(
            "left multiplication needs a unit quaternion".into(),
        ));
    }
    let mut m = Mat::identity(7);
    for col in 0..4 {
        let mut v = vec![F::zero(); 4];
        v[col] = F::one();
        let img = quaternion_to_q(&p.mul(&q_to_quaternion(&v)));
        for (r, x) in img.into_iter().enumerate() {
            m[(r, col)] = x;
        }
    }
    Ok(m)
}

/// A signed permutation `e_a ↦ signs[a] e_{perm[a]}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: [usize; 7],
    pub signs: [i8; 7],
}

impl SignedPermutation {
    pub fn matrix<F: Field>(&self) -> Mat<F> {
        let mut m = Mat::zeros(7, 7);
        for a in 0..7 {
            m[(self.perm[a], a)] = F::from_i64(self.signs[a] as i64);
        }
        m
    }
}

/// All signed permutations fixing `φ0` (a group of order 1344).
pub fn phi0_signed_permutations() -> Vec<SignedPermutation> {
    let terms: Vec<([usize; 3], i64)> = phi0::<crate::scalar::Rational>()
        .terms()
        .into_iter()
        .map(|(i, c)| {
            (
                [i[0] - 1, i[1] - 1, i[2] - 1],
                if c > crate::scalar::qi(0) { 1 } else { -1 },
            )
        })
        .collect();
    let lookup = |t: [usize; 3]| -> i64 {
        let mut s = t;
        let mut sign = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                if s[j] > s[j + 1] {
                    s.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        terms
            .iter()
            .find(|(u, _)| *u == s)
            .map_or(0, |(_, c)| sign * c)
    };
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..7).collect();
    permute(&mut perm, 0, &mut |p| {
        for mask in 0u8..128 {
            let sg = |a: usize| if mask & (1 << a) != 0 { -1 } else { 1 };
            let ok = terms.iter().all(|(t, c)| {
                let v = lookup([p[t[0]], p[t[1]], p[t[2]]]);
                v * sg(t[0]) * sg(t[1]) * sg(t[2]) == *c
            });
            if ok {
                let mut perm = [0; 7];
                perm.copy_from_slice(p);
                let signs = std::array::from_fn(|a| sg(a) as i8);
                out.push(SignedPermutation { perm, signs });
            }
        }
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Whether `W^* φ = φ` for the change of basis `W` (columns are images).
pub fn preserves<F: Field>(w: &Mat<F>, phi: &KForm<F>) -> bool {
    phi.pullback(w) == *phi
}

/// `E ∈ so(7)` from a 2-form under the standard metric, re-exported for
/// convenience in G2 computations.
pub fn two_form_endo<F: Field>(a: &KForm<F>, s: &G2Structure<F>) -> SkewEndo<F> {
    crate::exterior::two_form_to_endo(a, &s.metric).expect("2-form")
}

//! Closed-form oracles and input generators shared by the integration tests.
#![allow(dead_code)]

use nilg2::exterior::KForm;
use nilg2::g2::{g2_conjugation, g2_left_mult, phi0, preserves, Quaternion};
use nilg2::liealg::LieAlgebra;
use nilg2::linalg::Mat;
use nilg2::scalar::{q, qi};
use nilg2::{Field, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type R = Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `n/d` with `|n| ≤ num` and `1 ≤ d ≤ den`.
pub fn rand_q(r: &mut ChaCha8Rng, num: i64, den: i64) -> R {
    q(r.gen_range(-num..=num), r.gen_range(1..=den))
}

pub fn rand_nonzero_q(r: &mut ChaCha8Rng, num: i64, den: i64) -> R {
    loop {
        let x = rand_q(r, num, den);
        if !x.is_zero() {
            return x;
        }
    }
}

/// `Σ c e^{ij}` from `(i, j, c)` triples, 1-based.
pub fn f2(terms: &[(usize, usize, R)]) -> KForm<R> {
    let mut out = KForm::zero(7, 2);
    for (i, j, c) in terms {
        out = out + KForm::monomial(7, &[*i, *j], c.clone()).unwrap();
    }
    out
}

pub fn f2i(terms: &[(usize, usize, i64)]) -> KForm<R> {
    f2(&terms
        .iter()
        .map(|&(i, j, c)| (i, j, qi(c)))
        .collect::<Vec<_>>())
}

pub fn f1(i: usize, c: R) -> KForm<R> {
    KForm::monomial(7, &[i], c).unwrap()
}

// ---------------------------------------------------------------------------
// disguises

pub fn rand_quaternion(r: &mut ChaCha8Rng) -> Quaternion<R> {
    loop {
        let h = Quaternion([0; 4].map(|_| qi(r.gen_range(-3..=3))));
        if !h.norm_sq().is_zero() {
            return h;
        }
    }
}

/// `h² / |h|²` is a unit quaternion with rational entries.
pub fn rand_unit_quaternion(r: &mut ChaCha8Rng) -> Quaternion<R> {
    let h = rand_quaternion(r);
    let n = h.norm_sq().inv().unwrap();
    h.mul(&h).scale(&n)
}

/// A rational element of G2 from one conjugation and one left multiplication,
/// checked to preserve `φ0`.
pub fn rand_disguise(r: &mut ChaCha8Rng) -> Mat<R> {
    let w = g2_conjugation(&rand_quaternion(r))
        .unwrap()
        .mul(&g2_left_mult(&rand_unit_quaternion(r)).unwrap());
    assert!(preserves(&w, &phi0::<R>()), "disguise must lie in G2");
    assert!(
        w.transpose().mul(&w) == Mat::identity(7),
        "disguise must be orthogonal"
    );
    w
}

// ---------------------------------------------------------------------------
// dim g' = 1

/// `(R^λ)^α_β` for `de^7 = a e12 + b e34 + c e56`, `μ = a + b + c`, on the
/// pairs (1,7), (3,7), (5,7), (1,2), (3,4), (5,6).
pub fn dim1_closed(a: &R, b: &R, c: &R, lam: &R) -> Vec<((usize, usize), KForm<R>)> {
    let mu = a.clone() + b + c;
    let ml = mu.clone() * lam;
    let l1 = lam.clone() - qi(1);
    let l2 = lam.clone() + qi(1);
    let three = qi(3);
    let p = |x: &R| three.clone() * x * &l1 - qi(2) * &ml;
    let pp = |x: &R| three.clone() * x * &l2 - qi(2) * &ml;
    let cross =
        |x: &R| ml.clone() * &(mu.clone() * &(lam.clone() + qi(3)) + three.clone() * x * &l1);
    let k36 = q(-1, 36);
    let r17 = f2(&[(1, 7, p(a) * &pp(a))]) + f2(&[(3, 6, cross(a)), (4, 5, cross(a))]);
    let r37 = f2(&[(3, 7, p(b) * &pp(b))]) - f2(&[(1, 6, cross(b)), (2, 5, cross(b))]);
    let r57 = f2(&[(5, 7, p(c) * &pp(c))]) + f2(&[(1, 4, cross(c)), (2, 3, cross(c))]);
    let omega = f2(&[(1, 2, a.clone()), (3, 4, b.clone()), (5, 6, c.clone())]);
    let m2 = ml.clone() * &ml * &q(1, 18);
    let diag = |x: &R, own: (usize, usize), others: [(usize, usize); 2]| {
        omega.scale(&(pp(x) * &q(-1, 6)))
            + f2(&[
                (others[0].0, others[0].1, m2.clone()),
                (others[1].0, others[1].1, m2.clone()),
            ])
            + f2(&[(own.0, own.1, p(x) * &p(x) * &q(-1, 36))])
    };
    vec![
        ((1, 7), r17.scale(&k36)),
        ((3, 7), r37.scale(&k36)),
        ((5, 7), r57.scale(&k36)),
        ((1, 2), diag(a, (1, 2), [(3, 4), (5, 6)])),
        ((3, 4), diag(b, (3, 4), [(1, 2), (5, 6)])),
        ((5, 6), diag(c, (5, 6), [(1, 2), (3, 4)])),
    ]
}

/// The residual conditions of the `(R^λ)^k_7` and `(R^λ)^k_{k+1}` blocks.
pub fn dim1_conditions(a: &R, b: &R, c: &R, lam: &R) -> bool {
    let mu = a.clone() + b + c;
    let l = lam.clone();
    let first = |x: &R| {
        qi(2) * &mu * &mu * &l - qi(2) * &mu * x * &l + qi(3) * x * x * &(l.clone() - qi(1))
    };
    let second = |x: &R| {
        qi(-3) * &(l.clone() - qi(1)) * &(l.clone() - qi(1)) * x * x
            + qi(4) * &mu * &mu * &l
            + qi(2) * &(qi(2) * &l * &l - qi(5) * &l - qi(3)) * x * &mu
    };
    let k7 = l == qi(-1) || [a, b, c].iter().all(|x| first(x).is_zero());
    k7 && [a, b, c].iter().all(|x| second(x).is_zero())
}

// ---------------------------------------------------------------------------
// worked examples, as displayed

pub fn heis_omega(a: &R, b: &R) -> KForm<R> {
    f2(&[
        (1, 2, a.clone()),
        (3, 4, b.clone()),
        (5, 6, -(a.clone() + b)),
    ])
}

/// `(R^1)^1_2, (R^1)^3_4, (R^1)^5_6` as displayed for the Heisenberg example.
pub fn heis_display(a: &R, b: &R) -> Vec<((usize, usize), KForm<R>)> {
    let w = heis_omega(a, b);
    vec![
        ((1, 2), w.scale(a)),
        ((3, 4), w.scale(b)),
        ((5, 6), w.scale(&-(a.clone() + b))),
    ]
}

/// Every nonzero `(R^1)^α_β` with `α < β` for the quaternionic Heisenberg example.
pub fn qheis_display(nu: &R) -> Vec<((usize, usize), KForm<R>)> {
    let n2 = nu.clone() * nu;
    let r1 = f2i(&[(1, 2, -1), (3, 4, -1), (5, 6, 2)]).scale(&n2);
    let r2 = f2i(&[(1, 3, 1), (2, 4, -1), (6, 7, -2)]).scale(&n2);
    let r3 = f2i(&[(1, 4, -1), (2, 3, -1), (5, 7, 2)]).scale(&n2);
    let h = q(-2, 1);
    vec![
        ((1, 2), r1.clone()),
        ((3, 4), r1.clone()),
        ((5, 6), r1.scale(&h)),
        ((1, 3), -r2.clone()),
        ((2, 4), r2.clone()),
        ((6, 7), r2.scale(&qi(2))),
        ((1, 4), r3.clone()),
        ((2, 3), r3.clone()),
        ((5, 7), r3.scale(&h)),
    ]
}

pub fn n32_display(nu: &R) -> Vec<((usize, usize), KForm<R>)> {
    let k = qi(4) * nu * nu;
    let a = f2i(&[(2, 3, -1), (5, 7, 1)]).scale(&k);
    let b = f2i(&[(2, 4, -1), (6, 7, -1)]).scale(&k);
    let c = f2i(&[(3, 4, -1), (5, 6, 1)]).scale(&k);
    vec![
        ((2, 3), a.clone()),
        ((5, 7), -a),
        ((2, 4), b.clone()),
        ((6, 7), b),
        ((3, 4), c.clone()),
        ((5, 6), -c),
    ]
}

// ---------------------------------------------------------------------------
// adapted inputs with diagonal S

/// `de^{i+4} = d_i σ_i^+ + Σ_k m_ik σ_k^-` on `q = ⟨e1..e4⟩`, `c = ⟨e5, e6, e7⟩`.
#[derive(Clone, Debug)]
pub struct As0Input {
    pub d: [R; 3],
    pub m: [[R; 3]; 3],
}

type M4 = [[R; 4]; 4];

fn z4() -> M4 {
    std::array::from_fn(|_| std::array::from_fn(|_| qi(0)))
}

/// `W[x][y] = ω(e_x, e_y)` for the self-dual and anti-self-dual bases.
fn sigma4(plus: bool, k: usize) -> M4 {
    let mut w = z4();
    let mut set = |x: usize, y: usize, c: i64| {
        w[x][y] = qi(c);
        w[y][x] = qi(-c);
    };
    match (plus, k) {
        (true, 0) => {
            set(0, 2, 1);
            set(1, 3, -1)
        }
        (true, 1) => {
            set(0, 3, -1);
            set(1, 2, -1)
        }
        (true, 2) => {
            set(0, 1, 1);
            set(2, 3, 1)
        }
        (false, 0) => {
            set(0, 2, 1);
            set(1, 3, 1)
        }
        (false, 1) => {
            set(0, 3, 1);
            set(1, 2, -1)
        }
        (false, 2) => {
            set(0, 1, 1);
            set(2, 3, -1)
        }
        _ => unreachable!(),
    }
    w
}

fn m4_lin(terms: &[(R, M4)]) -> M4 {
    let mut w = z4();
    for (c, m) in terms {
        for x in 0..4 {
            for y in 0..4 {
                w[x][y] = w[x][y].clone() + c.clone() * &m[x][y];
            }
        }
    }
    w
}

fn embed_q(w: &M4) -> Mat<R> {
    Mat::from_fn(7, 7, |i, j| {
        if i < 4 && j < 4 {
            w[i][j].clone()
        } else {
            qi(0)
        }
    })
}

/// `g(A e_x, e_y)` on `x < y`.
pub fn endo_form(a: &Mat<R>) -> KForm<R> {
    let mut out = KForm::zero(7, 2);
    for x in 0..7 {
        for y in x + 1..7 {
            let c = a[(y, x)].clone();
            if !c.is_zero() {
                out = out + KForm::monomial(7, &[x + 1, y + 1], c).unwrap();
            }
        }
    }
    out
}

/// `v ∧ w` for vectors read as 1-forms through the standard metric.
pub fn vec_wedge(v: &[R], w: &[R]) -> KForm<R> {
    let mut out = KForm::zero(7, 2);
    for x in 0..7 {
        for y in x + 1..7 {
            let c = v[x].clone() * &w[y] - v[y].clone() * &w[x];
            if !c.is_zero() {
                out = out + KForm::monomial(7, &[x + 1, y + 1], c).unwrap();
            }
        }
    }
    out
}

/// Splits a 2-form into its `Λ²q*`, `q* ∧ c*` and `Λ²c*` parts.
pub fn split_qc(f: &KForm<R>) -> (KForm<R>, KForm<R>, KForm<R>) {
    let (mut qq, mut qc, mut cc) = (KForm::zero(7, 2), KForm::zero(7, 2), KForm::zero(7, 2));
    for (ix, c) in f.terms() {
        let m = KForm::monomial(7, &ix, c).unwrap();
        match (ix[0] <= 4, ix[1] <= 4) {
            (true, true) => qq = qq + m,
            (true, false) => qc = qc + m,
            _ => cc = cc + m,
        }
    }
    (qq, qc, cc)
}

/// Self-dual part on `q`: `Σ_k ½ ⟨ω, σ_k^+⟩ σ_k^+`.
pub fn self_dual_part(f: &KForm<R>) -> KForm<R> {
    let mut out = KForm::zero(7, 2);
    for k in 0..3 {
        let s = sigma4(true, k);
        let mut ip = qi(0);
        for x in 0..4 {
            for y in x + 1..4 {
                ip = ip + f.coeff(&[x + 1, y + 1]) * &s[x][y];
            }
        }
        out = out + endo_form(&embed_q(&s)).scale(&(ip * &q(-1, 2)));
    }
    out
}

impl As0Input {
    pub fn random(r: &mut ChaCha8Rng) -> Self {
        As0Input {
            d: std::array::from_fn(|_| rand_q(r, 4, 3)),
            m: std::array::from_fn(|_| {
                std::array::from_fn(|_| {
                    if r.gen_bool(0.6) {
                        rand_q(r, 3, 2)
                    } else {
                        qi(0)
                    }
                })
            }),
        }
    }

    pub fn mu(&self) -> R {
        self.d.iter().fold(qi(0), |a, x| a + x)
    }

    fn alpha_plus(&self, i: usize) -> M4 {
        m4_lin(&[(self.d[i].clone(), sigma4(true, i))])
    }

    fn alpha_minus(&self, i: usize) -> M4 {
        m4_lin(
            &(0..3)
                .map(|k| (self.m[i][k].clone(), sigma4(false, k)))
                .collect::<Vec<_>>(),
        )
    }

    pub fn algebra(&self) -> LieAlgebra<R> {
        let mut de: Vec<KForm<R>> = (0..7).map(|_| KForm::zero(7, 2)).collect();
        for i in 0..3 {
            let w = m4_lin(&[(qi(1), self.alpha_plus(i)), (qi(1), self.alpha_minus(i))]);
            de[4 + i] = endo_form(&embed_q(&w)).scale(&qi(-1));
        }
        LieAlgebra::from_differentials(&de).unwrap()
    }

    /// `j(e_{i+5})^+`, `j(e_{i+5})^-`, `j(e_{i+5})^0` for 0-based `i`.
    pub fn jp(&self, i: usize) -> Mat<R> {
        embed_q(&self.alpha_plus(i))
    }

    pub fn jm(&self, i: usize) -> Mat<R> {
        embed_q(&self.alpha_minus(i))
    }

    pub fn j0(&self, i: usize) -> Mat<R> {
        embed_q(&sigma4(true, i)).scale(&qi(-1))
    }

    pub fn j(&self, i: usize) -> Mat<R> {
        self.jp(i).add(&self.jm(i))
    }

    /// `τ(e_{i+5})`: `g(τ(z) z', z'') = e^{567}(z, z', z'')`.
    pub fn tau(&self, i: usize) -> Mat<R> {
        let mut t = Mat::zeros(7, 7);
        let (b, c) = ((i + 1) % 3, (i + 2) % 3);
        t[(4 + c, 4 + b)] = qi(1);
        t[(4 + b, 4 + c)] = qi(-1);
        t
    }

    /// `ad_{e_x}^{+,-,0}` on `q`, values in `c`.
    fn ad(&self, x: usize) -> [Mat<R>; 3] {
        let mut out = [Mat::zeros(7, 7), Mat::zeros(7, 7), Mat::zeros(7, 7)];
        for i in 0..3 {
            let (ap, am, s) = (self.alpha_plus(i), self.alpha_minus(i), sigma4(true, i));
            for y in 0..4 {
                out[0][(4 + i, y)] = -ap[x][y].clone();
                out[1][(4 + i, y)] = -am[x][y].clone();
                out[2][(4 + i, y)] = s[x][y].clone();
            }
        }
        out
    }

    /// `∇^λ_{e_k}` from the `ad^{±,0}`, `j^{±,0}`, `τ` decomposition (0-based `k`).
    pub fn nabla(&self, k: usize, lam: &R) -> Mat<R> {
        let mu = self.mu();
        let half = q(1, 2);
        let lp = (lam.clone() + qi(1)) * &half;
        let lm = (lam.clone() - qi(1)) * &half;
        let t = lam.clone() * &mu * &q(1, 3);
        if k < 4 {
            let [ap, am, a0] = self.ad(k);
            let skew = |a: &Mat<R>| a.sub(&a.transpose());
            skew(&ap)
                .scale(&lp)
                .sub(&skew(&am).scale(&lm))
                .add(&skew(&a0).scale(&t))
        } else {
            let i = k - 4;
            self.jp(i)
                .scale(&lm)
                .sub(&self.jm(i).scale(&lp))
                .add(&self.j0(i).scale(&t))
                .sub(&self.tau(i).scale(&(t.clone() * &qi(2))))
        }
    }

    /// `(R^λ)^α_β` for `(α, β, γ)` an even permutation of `(5, 6, 7)`;
    /// arguments are 0-based offsets into `c`.
    pub fn r_c(&self, a: usize, b: usize, lam: &R) -> KForm<R> {
        let g = 3 - a - b;
        let mu = self.mu();
        let ml = mu.clone() * lam;
        let l2 = lam.clone() + qi(1);
        let (da, db) = (&self.d[a], &self.d[b]);
        let c1 = l2.clone() * &l2 * &q(1, 2) * da * db
            - l2.clone() * &q(1, 3) * &ml * &(da.clone() + db)
            + q(2, 9) * &ml * &ml;
        let l1 = lam.clone() - qi(1);
        let k = ml.clone() * &q(2, 3);
        let e = self
            .j0(g)
            .scale(&c1)
            .sub(&self.j(g).scale(&k))
            .sub(
                &self
                    .jm(a)
                    .commutator(&self.jm(b))
                    .scale(&(l1.clone() * &l1 * &q(1, 4))),
            )
            .sub(&self.tau(g).scale(&(k.clone() * &k)));
        endo_form(&e)
    }

    fn coeffs(&self, l: usize, lam: &R) -> (R, R, R) {
        let ml3 = self.mu() * lam * &q(1, 3);
        let h = (lam.clone() + qi(1)) * &q(1, 2) * &self.d[l];
        let base = ml3.clone() - &h;
        let a = -(base.clone() * &base);
        let b = (lam.clone() - qi(1)) * &q(1, 2) * &base;
        let c = (lam.clone() - qi(1)) * &q(1, 2) * &self.d[l] - &ml3;
        (a, b, c)
    }

    /// `ζ^α_β ∈ Λ²c*` for `α, β ∈ 1..4` (0-based).
    pub fn zeta(&self, al: usize, be: usize, lam: &R) -> KForm<R> {
        let mu = self.mu();
        let ml = mu.clone() * lam;
        let l1 = lam.clone() - qi(1);
        let l2 = lam.clone() + qi(1);
        let mut out = KForm::zero(7, 2);
        for j in 0..3 {
            for k in j + 1..3 {
                let (dj, dk) = (&self.d[j], &self.d[k]);
                let c0 = l1.clone() * &l1 * &q(1, 4) * dj * dk
                    - l1.clone() * &q(1, 6) * &ml * &(dj.clone() + dk)
                    + ml.clone() * &ml * &q(1, 9);
                let e = self.j0(j).commutator(&self.j0(k)).scale(&c0).add(
                    &self
                        .jm(j)
                        .commutator(&self.jm(k))
                        .scale(&(l2.clone() * &l2 * &q(1, 4))),
                );
                let v = e[(al, be)].clone();
                if !v.is_zero() {
                    out = out + KForm::monomial(7, &[j + 5, k + 5], v).unwrap();
                }
            }
        }
        out
    }

    /// `η^α_β ∈ Λ²q*` for `α, β ∈ 1..4` (0-based).
    pub fn eta(&self, al: usize, be: usize, lam: &R) -> KForm<R> {
        let l1 = lam.clone() - qi(1);
        let l2 = lam.clone() + qi(1);
        let ea = nilg2::linalg::unit_vector::<R>(7, al);
        let eb = nilg2::linalg::unit_vector::<R>(7, be);
        let mut out = KForm::zero(7, 2);
        for l in 0..3 {
            let (a, b, c) = self.coeffs(l, lam);
            let (j0, jm) = (self.j0(l), self.jm(l));
            let (j0a, j0b, jma, jmb) = (
                j0.mul_vec(&ea),
                j0.mul_vec(&eb),
                jm.mul_vec(&ea),
                jm.mul_vec(&eb),
            );
            out = out + vec_wedge(&j0a, &j0b).scale(&a);
            out = out + (vec_wedge(&j0a, &jmb) + vec_wedge(&jma, &j0b)).scale(&b);
            let k = c * &j0[(be, al)] + l2.clone() * &q(1, 2) * &jm[(be, al)];
            out = out - endo_form(&self.j(l)).scale(&k);
            out = out - vec_wedge(&jma, &jmb).scale(&(l1.clone() * &l1 * &q(1, 4)));
        }
        out
    }

    /// `Σ_l m_l^2` with `(j(e_l)^-)^2 = -m_l^2 Id`.
    pub fn m_sq(&self) -> R {
        (0..3).fold(qi(0), |acc, l| {
            let s = self.jm(l).mul(&self.jm(l));
            acc - s.trace() * &q(1, 4)
        })
    }

    /// The self-dual part of `η^α_β` in closed form.
    pub fn eta_plus(&self, al: usize, be: usize, lam: &R) -> KForm<R> {
        let l1 = lam.clone() - qi(1);
        let l2 = lam.clone() + qi(1);
        let abc: Vec<(R, R, R)> = (0..3).map(|l| self.coeffs(l, lam)).collect();
        let m2 = self.m_sq();
        let mut out = KForm::zero(7, 2);
        for l in 0..3 {
            let others = (0..3)
                .filter(|&s| s != l)
                .fold(qi(0), |acc, s| acc + &abc[s].0);
            let k0 = (abc[l].0.clone() - &others) * &q(1, 2) - l1.clone() * &l1 * &q(1, 8) * &m2
                + abc[l].2.clone() * &self.d[l];
            let km = abc[l].1.clone() + self.d[l].clone() * &l2 * &q(1, 2);
            let coef = k0 * &self.j0(l)[(be, al)] + km * &self.jm(l)[(be, al)];
            out = out + endo_form(&embed_q(&sigma4(true, l))).scale(&-coef);
        }
        out
    }
}

/// `Σ c e^{ij}` rendered for failure messages.
pub fn show(f: &KForm<R>) -> String {
    let t: Vec<String> = f
        .terms()
        .into_iter()
        .map(|(ix, c)| format!("{c}·e{ix:?}"))
        .collect();
    if t.is_empty() {
        "0".into()
    } else {
        t.join(" + ")
    }
}

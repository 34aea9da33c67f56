mod common;

use common::*;
use nilg2::connection::{curvature, curvature_forms, nabla_lambda};
use nilg2::exterior::KForm;
use nilg2::g2::G2Structure;
use nilg2::instanton::{check_caracg2, classify, instanton_at, Case};
use nilg2::liealg::LieAlgebra;
use nilg2::linalg::Mat;
use nilg2::scalar::{format_rational, parse_rational, q, qi};
use nilg2::Field;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = R> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn form(degree: usize) -> impl Strategy<Value = KForm<R>> {
    let n = nilg2::exterior::blades(7, degree).len();
    prop::collection::vec(prop_oneof![3 => Just(qi(0)), 1 => rat()], n).prop_map(move |cs| {
        let mut f = KForm::zero(7, degree);
        for (b, c) in nilg2::exterior::blades(7, degree).into_iter().zip(cs) {
            f = f + KForm::monomial(7, &b.indices(), c).unwrap();
        }
        f
    })
}

/// Any `de^5, de^6, de^7 ∈ Λ²⟨e1..e4⟩*` gives a 2-step nilpotent algebra.
fn two_step() -> impl Strategy<Value = LieAlgebra<R>> {
    prop::collection::vec(prop_oneof![2 => Just(qi(0)), 1 => rat()], 18).prop_map(|cs| {
        let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let mut de: Vec<KForm<R>> = (0..7).map(|_| KForm::zero(7, 2)).collect();
        for k in 0..3 {
            for (p, &(i, j)) in pairs.iter().enumerate() {
                de[4 + k] =
                    &de[4 + k] + &KForm::monomial(7, &[i, j], cs[6 * k + p].clone()).unwrap();
            }
        }
        LieAlgebra::from_differentials(&de).unwrap()
    })
}

fn as0_input() -> impl Strategy<Value = As0Input> {
    (
        prop::array::uniform3(rat()),
        prop::array::uniform3(prop::array::uniform3(prop_oneof![Just(qi(0)), rat()])),
    )
        .prop_map(|(d, m)| As0Input { d, m })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn differential_is_a_graded_derivation(l in two_step(), a in form(1), b in form(2)) {
        let lhs = l.differential(&a.wedge(&b).unwrap());
        let rhs = l.differential(&a).wedge(&b).unwrap() - a.wedge(&l.differential(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_squares_to_zero(l in two_step(), a in form(2)) {
        prop_assert!(l.differential(&l.differential(&a)).is_zero());
    }

    #[test]
    fn star_is_an_involution(a in form(3)) {
        let s = G2Structure::<R>::standard();
        prop_assert_eq!(s.star(&s.star(&a)), a);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(1), b in form(2), c in form(1)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert_eq!(a.wedge(&c).unwrap(), -c.wedge(&a).unwrap());
    }

    #[test]
    fn curvature_routes_agree(l in two_step(), lam in rat()) {
        let s = G2Structure::standard();
        if let Ok(c) = nabla_lambda(&l, &s, &lam) {
            prop_assert_eq!(curvature(&c, &l).components(), curvature_forms(&c, &l));
        }
    }

    #[test]
    fn j_squares_are_scalar(inp in as0_input()) {
        let id = Mat::<R>::from_fn(7, 7, |i, j| if i == j && i < 4 { qi(1) } else { qi(0) });
        for l in 0..3 {
            prop_assert_eq!(inp.j0(l).mul(&inp.j0(l)), id.scale(&qi(-1)));
            let m = inp.jm(l).mul(&inp.jm(l));
            let ml2 = -(m.trace() * &q(1, 4));
            prop_assert_eq!(m, id.scale(&-ml2));
            for k in 0..3 {
                prop_assert!(inp.j0(k).commutator(&inp.jm(l)).is_zero());
            }
        }
    }

    #[test]
    fn instanton_verdict_is_g2_invariant(inp in as0_input(), seed in any::<u64>()) {
        let s = G2Structure::standard();
        let l = inp.algebra();
        let w = rand_disguise(&mut rng(seed));
        let before = instanton_at(&l, &s, &qi(1), 0.0).unwrap().is_instanton;
        let after = instanton_at(&l.change_basis(&w).unwrap(), &s, &qi(1), 0.0).unwrap().is_instanton;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn instantons_at_one_have_commutator_dim_one_or_three(inp in as0_input()) {
        let s = G2Structure::standard();
        let l = inp.algebra();
        let rep = instanton_at(&l, &s, &qi(1), 0.0).unwrap();
        let dim = l.commutator().dim();
        if rep.is_instanton && dim > 0 {
            prop_assert!(dim == 1 || dim == 3, "dim g' = {}", dim);
            if dim == 3 {
                prop_assert!(!inp.mu().is_zero());
                prop_assert!(check_caracg2(&l, &s, 0.0).unwrap().holds);
            }
        }
    }

    #[test]
    fn quaternionic_parameter_survives_disguise(n in 1i64..=5, d in 1i64..=3, neg in any::<bool>(), seed in any::<u64>()) {
        let nu = q(if neg { -n } else { n }, d);
        let (l, s) = nilg2::instanton::builtin_family::<R>("qheis", &[nu.clone()]).unwrap();
        let l = l.change_basis(&rand_disguise(&mut rng(seed))).unwrap();
        let r = classify(&l, &s, 0.0).unwrap();
        prop_assert_eq!(r.case, Case::Case2);
        prop_assert_eq!(r.mu, (qi(3) * &nu).to_scalar());
    }

    #[test]
    fn rationals_round_trip_through_text(n in -1000i64..=1000, d in 1i64..=1000) {
        let x = q(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}

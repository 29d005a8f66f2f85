use nakayama::algebra::{Element, LinearMap};
use nakayama::calculus::{divergence, jacobian, jacobian_by_solve, jacobian_cocycle};
use nakayama::field::{Field, FieldSpec, Gf, Q};
use nakayama::frobenius::make_frobenius;
use nakayama::gallery::{cyclic, exterior, qci, standard_gallery, GalleryStructure};
use nakayama::hochschild::{coboundary_matrix, DEFAULT_BUDGET};
use nakayama::io::{algebra_to_json, parse_algebra, AnyAlgebra};
use nakayama::linalg::Matrix;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_int(&FieldSpec::Rationals, n)
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-1, 1i64..=5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qci_jacobian_closed_form(qn in nonzero(), a in nonzero(), b in nonzero(), c in -4i64..=4, d in -4i64..=4) {
        let s = qci(&FieldSpec::Rationals, q(qn)).unwrap();
        let fr = make_frobenius(&s.algebra, &s.gram).unwrap();
        let (a, b, c, d) = (q(a), q(b), q(c), q(d));
        let u = s.alpha(&a, &b, &c, &d).unwrap();
        let j = jacobian(&fr, &u).unwrap();
        prop_assert_eq!(&j, &s.expected_jacobian(&a, &b, &c, &d));
        prop_assert_eq!(jacobian_by_solve(&fr, &u).unwrap(), Some(j));
    }

    #[test]
    fn qci_divergence_closed_form(qn in nonzero(), a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4) {
        let s = qci(&FieldSpec::Rationals, q(qn)).unwrap();
        let fr = make_frobenius(&s.algebra, &s.gram).unwrap();
        let (a, b, c, d) = (q(a), q(b), q(c), q(d));
        let delta = s.delta(&a, &b, &c, &d).unwrap();
        prop_assert_eq!(divergence(&fr, &delta).unwrap(), s.expected_divergence(&a, &b, &c, &d));
    }

    #[test]
    fn qci_chain_rule(qn in nonzero(), p in proptest::collection::vec(-3i64..=3, 8)) {
        let s = qci(&FieldSpec::Rationals, q(qn)).unwrap();
        let fr = make_frobenius(&s.algebra, &s.gram).unwrap();
        let nz = |x: i64| if x == 0 { q(1) } else { q(x) };
        let u = s.alpha(&nz(p[0]), &nz(p[1]), &q(p[2]), &q(p[3])).unwrap();
        let v = s.alpha(&nz(p[4]), &nz(p[5]), &q(p[6]), &q(p[7])).unwrap();
        // jac(uv) = jac v·v⁻¹(jac u)
        let ju = jacobian(&fr, &u).unwrap();
        let jv = jacobian(&fr, &v).unwrap();
        let juv = jacobian(&fr, &u.compose(&v)).unwrap();
        let vinv = v.inverse().unwrap();
        let chained = s.algebra.mul(&jv, &vinv.apply(&ju));
        prop_assert_eq!(juv, chained);
    }

    #[test]
    fn exterior_phi_determinant(entries in proptest::collection::vec(-3i64..=3, 9)) {
        let e = exterior::<Q>(&FieldSpec::Rationals, 3).unwrap();
        let fr = make_frobenius(&e.algebra, &e.gram).unwrap();
        let f = Matrix::from_fn(3, 3, |i, j| q(entries[3 * i + j]));
        let det = f.determinant().unwrap();
        prop_assume!(!det.is_zero());
        let u = e.phi(&f).unwrap();
        let j = jacobian_cocycle(&fr, &u).unwrap();
        prop_assert_eq!(j, e.algebra.from_scalar(&det.inverse().unwrap()));
    }

    #[test]
    fn cyclic_five_closed_form(f1 in 1i64..5, rest in proptest::collection::vec(0i64..5, 3)) {
        let spec = FieldSpec::prime(5).unwrap();
        let c = cyclic::<Gf>(&spec).unwrap();
        let fr = make_frobenius(&c.algebra, &c.gram).unwrap();
        let mut coeffs = vec![0, f1];
        coeffs.extend(rest);
        let f = c.algebra.element_from_ints(&coeffs);
        let u = c.u_f(&f).unwrap();
        let j = jacobian(&fr, &u).unwrap();
        prop_assert_eq!(&j, &c.expected_jacobian(&f));
        prop_assert!(c.mu(&j).is_one());
    }

    #[test]
    fn inner_automorphisms_of_exterior_two(coeffs in proptest::collection::vec(-3i64..=3, 4)) {
        let e = exterior::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let fr = make_frobenius(&e.algebra, &e.gram).unwrap();
        let s = e.algebra.element_from_ints(&coeffs);
        prop_assume!(e.algebra.is_unit(&s));
        let u = e.algebra.inner_automorphism(&s).unwrap();
        // jac(ι_s) = s·σ⁻¹(s)⁻¹
        let sigma_s = fr.sigma_inverse().apply(&s);
        let expected = e.algebra.mul(&s, &e.algebra.inverse_of(&sigma_s).unwrap());
        prop_assert_eq!(jacobian(&fr, &u).unwrap(), expected);
    }
}

#[test]
fn gallery_round_trips_through_json() {
    for g in standard_gallery().unwrap() {
        match g {
            GalleryStructure::Rational(s) => {
                let text = algebra_to_json(&s.algebra, Some(&s.gram));
                let AnyAlgebra::Rational(a, gram) = parse_algebra(&text, None).unwrap() else { panic!("{}", s.name) };
                assert_eq!(a, s.algebra, "{}", s.name);
                assert_eq!(gram.as_ref(), Some(&s.gram), "{}", s.name);
            }
            GalleryStructure::Finite(s) => {
                let text = algebra_to_json(&s.algebra, Some(&s.gram));
                let AnyAlgebra::Finite(a, gram) = parse_algebra(&text, None).unwrap() else { panic!("{}", s.name) };
                assert_eq!(a, s.algebra, "{}", s.name);
                assert_eq!(gram.as_ref(), Some(&s.gram), "{}", s.name);
            }
        }
    }
}

#[test]
fn hochschild_complex_of_gallery_squares_to_zero() {
    for g in standard_gallery().unwrap() {
        if let GalleryStructure::Rational(s) = g {
            if s.algebra.dim() > 6 {
                continue;
            }
            let d0 = coboundary_matrix(&s.algebra, 0, DEFAULT_BUDGET).unwrap();
            let d1 = coboundary_matrix(&s.algebra, 1, DEFAULT_BUDGET).unwrap();
            assert!(d1.composes_to_zero(&d0), "{}", s.name);
        }
    }
}

#[test]
fn identity_has_unit_jacobian_everywhere() {
    for g in standard_gallery().unwrap() {
        match g {
            GalleryStructure::Rational(s) => {
                let fr = make_frobenius(&s.algebra, &s.gram).unwrap();
                let j = jacobian(&fr, &LinearMap::identity(s.algebra.dim())).unwrap();
                assert_eq!(j, s.algebra.unit(), "{}", s.name);
            }
            GalleryStructure::Finite(s) => {
                let fr = make_frobenius(&s.algebra, &s.gram).unwrap();
                let j: Element<Gf> = jacobian(&fr, &LinearMap::identity(s.algebra.dim())).unwrap();
                assert_eq!(j, s.algebra.unit(), "{}", s.name);
            }
        }
    }
}

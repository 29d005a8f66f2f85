//! Closed forms and identities tied to particular families: quantum complete
//! intersections, exterior algebras, cyclic group algebras, trivial
//! extensions, crossed products, product and scalar-change reductions,
//! strongly separable algebras and the Liouville polynomial.

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::json;

use super::sample;
use super::{setup_failure, show, show_map, show_scalars, CheckRecord, Law};
use crate::algebra::{Element, LinearMap};
use crate::calculus::{
    bavula_jacobian, divergence, divergence_coboundary, exp_derivation, jacobian, jacobian_by_solve,
    jacobian_cocycle, liouville_polynomial, phi_sequence,
};
use crate::crossed::{build_crossed_product, sample_cocycle, FactorOrder, GroupAction, TwoCocycle};
use crate::field::{Field, FieldSpec, Gf, Q};
use crate::frobenius::{make_frobenius, Frobenius};
use crate::gallery::{
    block_diagonal, build_gallery, cyclic, exterior, group_algebra, matrix_algebra, qci, trace_form,
    trivial_extension, truncated_gram, truncated_polynomial, Exterior, GalleryParams, GalleryStructure, Qci,
};
use crate::group::Group;
use crate::hochschild::{connes_image_test, connes_realization, DEFAULT_BUDGET};
use crate::linalg::Matrix;
use crate::scalars::{extend_element, extend_matrix, extend_scalars, restrict_scalars};

fn rational(n: i64) -> Q {
    Q::from_int(&FieldSpec::Rationals, n)
}

fn rational_frac(n: i64, d: i64) -> Q {
    rational(n) / rational(d)
}

fn frobenius<F: Field>(scope: &str, law: &'static str, alg: &crate::algebra::Algebra<F>, gram: &Matrix<F>) -> Result<Frobenius<F>, CheckRecord> {
    make_frobenius(alg, gram).map_err(|e| setup_failure(scope, law, e))
}

// ---------------------------------------------------------------------------
// Quantum complete intersections

/// Closed-form Jacobians and divergences of `α(a,b,c,d)` and `δ_{a,b,c,d}`,
/// the worked examples, and the (twisted) commutator spaces.
pub fn qci_suite<R: Rng + ?Sized>(qs: &[Q], samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for q in qs {
        let scope = format!("qci(q={q})");
        let s = match qci(&FieldSpec::Rationals, q.clone()) {
            Ok(s) => s,
            Err(e) => {
                out.push(setup_failure(&scope, "qci-jacobian", e));
                continue;
            }
        };
        let fr = match frobenius(&scope, "qci-jacobian", &s.algebra, &s.gram) {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        out.extend(qci_closed_forms(&scope, &s, &fr, samples, rng));
        out.extend(qci_examples(&scope, &s, &fr));
    }
    out
}

fn qci_closed_forms<R: Rng + ?Sized>(scope: &str, s: &Qci<Q>, fr: &Frobenius<Q>, samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let alg = &s.algebra;
    let mut jac = Law::new(scope, "qci-jacobian");
    let mut div = Law::new(scope, "qci-divergence");
    for _ in 0..samples {
        let (a, b) = (sample::nonzero(alg, rng), sample::nonzero(alg, rng));
        let (c, d) = (sample::scalar(alg, rng), sample::scalar(alg, rng));
        let tuple = || show_scalars(&[a.clone(), b.clone(), c.clone(), d.clone()]);
        if let Some(u) = jac.check_result(s.alpha(&a, &b, &c, &d)) {
            if let Some(j) = jac.check_result(jacobian(fr, &u)) {
                let expected = s.expected_jacobian(&a, &b, &c, &d);
                jac.check(j == expected, || json!({ "abcd": tuple(), "got": show(alg, &j), "expected": show(alg, &expected) }));
            }
        }
        // the derivation family allows a, b = 0 as well
        let (a, b) = (sample::scalar(alg, rng), sample::scalar(alg, rng));
        let tuple = || show_scalars(&[a.clone(), b.clone(), c.clone(), d.clone()]);
        if let Some(delta) = div.check_result(s.delta(&a, &b, &c, &d)) {
            if let Some(v) = div.check_result(divergence(fr, &delta)) {
                let expected = s.expected_divergence(&a, &b, &c, &d);
                div.check(v == expected, || json!({ "abcd": tuple(), "got": show(alg, &v), "expected": show(alg, &expected) }));
            }
        }
    }
    vec![jac.finish(), div.finish()]
}

fn qci_examples(scope: &str, s: &Qci<Q>, fr: &Frobenius<Q>) -> Vec<CheckRecord> {
    let alg = &s.algebra;
    let q = s.q().clone();
    let qi = q.inverse().expect("q nonzero");
    let r = rational;
    let mut law = Law::new(scope, "qci-worked-examples");
    let sigma = fr.sigma();
    law.check(sigma.apply(&s.x()) == s.x().scale(&qi) && sigma.apply(&s.y()) == s.y().scale(&q), || {
        json!({ "sigma": show_map(sigma) })
    });
    let expect_jac = |law: &mut Law, u: Result<LinearMap<Q>, String>, expected: Element<Q>, label: &str| {
        if let Some(u) = law.check_result(u) {
            if let Some(j) = law.check_result(jacobian(fr, &u)) {
                law.check(j == expected, || json!({ "case": label, "got": show(alg, &j), "expected": show(alg, &expected) }));
            }
        }
    };
    expect_jac(&mut law, s.alpha(&r(2), &r(3), &r(0), &r(0)).map_err(|e| e.to_string()), alg.from_scalar(&r(6)), "alpha(2,3,0,0)");
    expect_jac(&mut law, s.alpha(&r(1), &r(1), &r(1), &r(0)).map_err(|e| e.to_string()), &alg.unit() + &s.y().scale(&qi), "alpha(1,1,1,0)");
    let one_plus_x = &alg.unit() + &s.x();
    expect_jac(
        &mut law,
        alg.inner_automorphism(&one_plus_x).map_err(|e| e.to_string()),
        &alg.unit() + &s.x().scale(&(r(1) - q.clone())),
        "inner(1+x)",
    );
    // a non-invertible endomorphism has a non-unit Jacobian
    if let Some(u) = law.check_result(s.alpha(&r(0), &r(1), &r(0), &r(0))) {
        if let Some(j) = law.check_result(jacobian(fr, &u)) {
            law.check(!alg.is_unit(&j), || json!({ "case": "alpha(0,1,0,0)", "got": show(alg, &j) }));
        }
    }
    if let Some(d) = law.check_result(s.delta(&r(0), &r(0), &r(1), &r(0))) {
        if let Some(phis) = law.check_result(phi_sequence(fr, &d, 3)) {
            let expected = vec![alg.unit(), s.y(), alg.zero(), alg.zero()];
            law.check(phis == expected, || json!({ "case": "phi(delta_0010)" }));
        }
    }
    let generic = q != r(1) && q != r(-1);
    if generic {
        law.check(alg.center_basis().len() == 2, || json!({ "center_dim": alg.center_basis().len() }));
        let untwisted = alg.commutator_subspace(None).map(|v| v.len());
        law.check(untwisted == Ok(1), || json!({ "commutator_dim": format!("{untwisted:?}") }));
        match alg.commutator_subspace(Some(sigma)) {
            Ok(tw) => law.check(crate::algebra::same_span(&tw, &[s.x(), s.y()], 4), || {
                json!({ "twisted_commutators": tw.iter().map(|e| show(alg, e)).collect::<Vec<_>>() })
            }),
            Err(e) => law.check(false, || json!({ "error": e.to_string() })),
        }
    }
    vec![law.finish()]
}

// ---------------------------------------------------------------------------
// Exterior algebras

/// `jac~(γ_{i,λ,α})`; the `i = α₃` row reads `1 − λ x_{α1}x_{α2}`.
fn gamma_table(e: &Exterior<Q>, i: usize, lambda: &Q, alpha: [usize; 3]) -> Element<Q> {
    let alg = &e.algebra;
    let one = alg.unit();
    let wedge = |a: usize, b: usize| e.monomial_of(&[a, b]);
    if i == alpha[0] {
        &one - &wedge(alpha[1], alpha[2]).scale(lambda)
    } else if i == alpha[1] {
        &one + &wedge(alpha[0], alpha[2]).scale(lambda)
    } else if i == alpha[2] {
        &one - &wedge(alpha[0], alpha[1]).scale(lambda)
    } else {
        one
    }
}

pub fn grassmann_suite<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let field = FieldSpec::Rationals;
    for n in 1..=4 {
        let scope = format!("exterior(n={n})");
        let e = match exterior::<Q>(&field, n) {
            Ok(e) => e,
            Err(err) => {
                out.push(setup_failure(&scope, "phi-determinant", err));
                continue;
            }
        };
        let fr = match frobenius(&scope, "phi-determinant", &e.algebra, &e.gram) {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let alg = &e.algebra;
        if n >= 2 {
            let mut law = Law::new(&scope, "phi-determinant");
            for _ in 0..samples {
                let f = sample::invertible_matrix(alg, n, rng);
                let det = f.determinant().expect("square");
                let Some(u) = law.check_result(e.phi(&f)) else { continue };
                if let Some(j) = law.check_result(jacobian_cocycle(&fr, &u)) {
                    let expected = alg.from_scalar(&det.inverse().expect("invertible"));
                    law.check(j == expected, || json!({ "f": super::show_matrix(&f), "got": show(alg, &j) }));
                }
                if let Some(b) = law.check_result(bavula_jacobian(&e, &u)) {
                    law.check(b == alg.from_scalar(&det), || json!({ "f": super::show_matrix(&f), "bavula": show(alg, &b) }));
                }
            }
            out.push(law.finish());
        }

        if n == 4 {
            let mut law = Law::new(&scope, "gamma-table");
            let mut literal_row = true;
            for lambda in [rational(1), rational(-2)] {
                for alpha in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
                    for i in 0..n {
                        let Some(u) = law.check_result(e.gamma(i, &lambda, alpha)) else { continue };
                        let Some(j) = law.check_result(jacobian_cocycle(&fr, &u)) else { continue };
                        let expected = gamma_table(&e, i, &lambda, alpha);
                        law.check(j == expected, || {
                            json!({ "i": i, "lambda": lambda.to_string(), "alpha": alpha, "got": show(alg, &j), "expected": show(alg, &expected) })
                        });
                        if i == alpha[2] {
                            let literal = &alg.unit() - &e.monomial_of(&[alpha[0], alpha[2]]).scale(&lambda);
                            literal_row &= j == literal;
                        }
                    }
                }
            }
            law.note(json!({ "row_alpha3_with_x_alpha1_x_alpha3_holds": literal_row }));
            out.push(law.finish());
        }

        let mut law = Law::new(&scope, "bavula-inverse");
        for _ in 0..samples {
            let u = sample::odd_automorphism(&e, rng);
            let v = sample::odd_automorphism(&e, rng);
            let w = u.compose(&v);
            for map in [&u, &w] {
                if let (Some(b), Some(j)) = (law.check_result(bavula_jacobian(&e, map)), law.check_result(jacobian_cocycle(&fr, map))) {
                    let prod = alg.mul(&b, &j);
                    law.check(prod == alg.unit(), || json!({ "u": show_map(map), "product": show(alg, &prod) }));
                }
            }
        }
        out.push(law.finish());

        let mut law = Law::new(&scope, "inner-one-plus-odd");
        for _ in 0..samples {
            let a = sample::odd_element(&e, rng);
            let Some(u) = law.check_result(e.inner_one_plus(&a)) else { continue };
            if let Some(j) = law.check_result(jacobian_cocycle(&fr, &u)) {
                let expected = if n % 2 == 0 { &alg.unit() - &a.scale(&rational(2)) } else { alg.unit() };
                law.check(j == expected, || json!({ "a": show(alg, &a), "got": show(alg, &j), "expected": show(alg, &expected) }));
            }
        }
        out.push(law.finish());

        let mut law = Law::new(&scope, "odd-derivation-divergence");
        for _ in 0..samples {
            let coeffs: Vec<Element<Q>> = (0..n).map(|_| sample::odd_element(&e, rng)).collect();
            let Some(d) = law.check_result(e.odd_derivation(&coeffs)) else { continue };
            if let Some(v) = law.check_result(divergence(&fr, &d)) {
                let expected = coeffs
                    .iter()
                    .enumerate()
                    .fold(alg.zero(), |acc, (i, a)| &acc + &LinearMap::general(e.skew_partial(i)).apply(a));
                law.check(v == expected, || json!({ "got": show(alg, &v), "expected": show(alg, &expected) }));
            }
        }
        out.push(law.finish());

        let mut law = Law::new(&scope, "exterior-nakayama");
        let sign = if n % 2 == 0 { rational(-1) } else { rational(1) };
        for i in 0..n {
            let x = e.generator(i);
            law.check(fr.sigma().apply(&x) == x.scale(&sign), || json!({ "generator": i, "sigma": show_map(fr.sigma()) }));
        }
        out.push(law.finish());
    }
    out
}

/// No central `z` has `div(δ) = δ(z)` for all derivations (exterior(3) and
/// the trivial extension of the dual numbers).
pub fn divergence_obstruction_suite() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let field = FieldSpec::Rationals;
    type Built = Result<(crate::algebra::Algebra<Q>, Matrix<Q>), String>;
    let cases: Vec<(String, Built)> = vec![
        ("exterior(n=3)".into(), exterior::<Q>(&field, 3).map(|e| (e.algebra, e.gram)).map_err(|e| e.to_string())),
        (
            "trivial-extension(dual-numbers)".into(),
            truncated_polynomial::<Q>(&field, 2)
                .and_then(|b| trivial_extension(&b, None))
                .map(|t| (t.algebra, t.gram))
                .map_err(|e| e.to_string()),
        ),
    ];
    for (scope, built) in cases {
        let (alg, gram) = match built {
            Ok(x) => x,
            Err(e) => {
                out.push(setup_failure(&scope, "divergence-not-inner", e));
                continue;
            }
        };
        let fr = match frobenius(&scope, "divergence-not-inner", &alg, &gram) {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let mut law = Law::new(&scope, "divergence-not-inner");
        let basis = alg.derivation_basis();
        if let Some(z) = law.check_result(divergence_coboundary(&fr, &basis)) {
            law.check(z.is_none(), || json!({ "z": z.as_ref().map(|z| show(&alg, z)) }));
        }
        law.note(json!({ "derivations": basis.len(), "certificate": "linear system for central z is inconsistent" }));
        out.push(law.finish());
    }
    out
}

// ---------------------------------------------------------------------------
// Cyclic p-group algebras

pub fn cyclic_suite<R: Rng + ?Sized>(sampled: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        let scope = format!("cyclic(p={p})");
        let spec = match FieldSpec::prime(p) {
            Ok(s) => s,
            Err(e) => {
                out.push(setup_failure(&scope, "cyclic-jacobian", e));
                continue;
            }
        };
        let c = match cyclic::<Gf>(&spec) {
            Ok(c) => c,
            Err(e) => {
                out.push(setup_failure(&scope, "cyclic-jacobian", e));
                continue;
            }
        };
        let fr = match frobenius(&scope, "cyclic-jacobian", &c.algebra, &c.gram) {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let alg = &c.algebra;
        let pu = p as usize;
        let candidates: Vec<Element<Gf>> = if p == 3 {
            let elems = Gf::enumerate(&spec, 3).expect("F_3");
            let mut all = Vec::new();
            for a in &elems {
                for b in &elems {
                    for d in &elems {
                        all.push(Element::new(vec![*a, *b, *d]));
                    }
                }
            }
            all
        } else {
            (0..sampled)
                .map(|_| {
                    let mut f = vec![alg.scalar(0); pu];
                    f[1] = sample::nonzero(alg, rng);
                    for x in f.iter_mut().skip(2) {
                        *x = sample::scalar(alg, rng);
                    }
                    Element::new(f)
                })
                .collect()
        };
        let mut law = Law::new(&scope, "cyclic-jacobian");
        let mut constant = Law::new(&scope, "cyclic-jacobian-constant-term");
        let mut alternating = Law::new(&scope, "cyclic-jacobian-alternating-sum");
        let mut with_linear_term = 0;
        let mut automorphisms = 0;
        let mut image: Vec<String> = Vec::new();
        for f in &candidates {
            if f[1].is_zero() {
                continue;
            }
            with_linear_term += 1;
            let Ok(u) = c.u_f(f) else {
                // x ↦ f with f(0) ≠ 0 does not respect x^p = 0
                law.check(!f[0].is_zero(), || json!({ "f": show(alg, f), "error": "u_f rejected" }));
                continue;
            };
            automorphisms += 1;
            let expected = c.expected_jacobian(f);
            let Some(solved) = law.check_result(jacobian_by_solve(&fr, &u)) else { continue };
            law.check(solved.as_ref() == Some(&expected), || {
                json!({ "f": show(alg, f), "solved": solved.as_ref().map(|j| show(alg, j)), "expected": show(alg, &expected) })
            });
            constant.check(expected[0] == f[1].pow(p - 1), || json!({ "f": show(alg, f), "jacobian": show(alg, &expected) }));
            alternating.check(c.mu(&expected).is_one(), || json!({ "f": show(alg, f), "jacobian": show(alg, &expected) }));
            let name = alg.format_element(&expected);
            if !image.contains(&name) {
                image.push(name);
            }
        }
        image.sort();
        law.note(json!({ "with_nonzero_linear_term": with_linear_term, "automorphisms": automorphisms }));
        if p == 3 {
            constant.note(json!({ "jacobian_image": image }));
        }
        out.extend([law.finish(), constant.finish(), alternating.finish()]);
    }
    out
}

// ---------------------------------------------------------------------------
// Trivial extensions

pub fn trivial_extension_suite<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for base in ["dual-numbers", "m2"] {
        let params = GalleryParams { base: Some(base.into()), ..Default::default() };
        let scope = format!("trivial-extension({base})");
        let structure = match build_gallery("trivial-extension", &params) {
            Ok(GalleryStructure::Rational(s)) => s,
            Ok(_) => unreachable!("trivial extensions are built over the rationals"),
            Err(e) => {
                out.push(setup_failure(&scope, "trivial-extension-jacobian", e));
                continue;
            }
        };
        let crate::gallery::Family::TrivialExtension(te) = &structure.family else {
            unreachable!("built as a trivial extension")
        };
        let fr = match frobenius(&scope, "trivial-extension-jacobian", &te.algebra, &te.gram) {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let b = te.base();
        let mut law = Law::new(&scope, "trivial-extension-jacobian");
        let mut connes = Law::new(&scope, "connes-image");
        let mut realize = Law::new(&scope, "connes-realization");
        for _ in 0..samples {
            let u = sample::automorphism(&structure, &fr, rng);
            let Some(j) = law.check_result(jacobian(&fr, &u)) else { continue };
            let (t, tau) = te.jacobian_from_blocks(u.matrix());
            let expected = te.pair(&t, &tau);
            law.check(j == expected, || json!({ "u": show_map(&u), "jacobian": show(&te.algebra, &j), "t_plus_tau": show(&te.algebra, &expected) }));
            if let Some(v) = connes.check_result(connes_image_test(b, &tau, DEFAULT_BUDGET)) {
                connes.check(v.in_image, || json!({ "tau": show_scalars(&tau), "witness": v.witness.as_ref().map(|w| show(b, w)) }));
                if v.in_image {
                    if let Some(real) = realize.check_result(connes_realization(te, &tau, &t)) {
                        match real {
                            Some(w) => {
                                if let Some(jw) = realize.check_result(jacobian(&fr, &w)) {
                                    realize.check(jw == expected, || json!({ "tau": show_scalars(&tau) }));
                                }
                            }
                            None => realize.check(false, || json!({ "tau": show_scalars(&tau), "error": "no derivation with this trace" })),
                        }
                    }
                }
            }
        }
        // u_z has twisted Jacobian z⁻¹
        for _ in 0..samples.min(5) {
            let z = sample::central_unit(b, rng);
            let Some(u) = law.check_result(te.u_z(&z)) else { continue };
            if let Some(j) = law.check_result(jacobian_cocycle(&fr, &u)) {
                let zi = b.inverse_of(&z).expect("unit");
                let expected = te.pair(&zi, &vec![b.scalar(0); b.dim()]);
                law.check(j == expected, || json!({ "z": show(b, &z), "got": show(&te.algebra, &j) }));
            }
        }
        out.extend([law.finish(), connes.finish(), realize.finish()]);
    }

    // the functional with τ(1) = 1 on the dual numbers
    let scope = "trivial-extension(dual-numbers)";
    let mut law = Law::new(scope, "connes-counterexample");
    match truncated_polynomial::<Q>(&FieldSpec::Rationals, 2) {
        Ok(b) => {
            let bad = [rational(1), rational(0)];
            if let Some(v) = law.check_result(connes_image_test(&b, &bad, DEFAULT_BUDGET)) {
                law.check(!v.in_image, || json!({ "tau": show_scalars(&bad) }));
                law.note(json!({ "kernel_witness": v.witness.as_ref().map(|w| show(&b, w)) }));
            }
            if let Ok(te) = trivial_extension(&b, None) {
                if let Some(r) = law.check_result(connes_realization(&te, &bad, &b.unit())) {
                    law.check(r.is_none(), || json!({ "error": "realized a functional outside the image" }));
                }
            }
            let good = [rational(0), rational(1)];
            if let Some(v) = law.check_result(connes_image_test(&b, &good, DEFAULT_BUDGET)) {
                law.check(v.in_image, || json!({ "tau": show_scalars(&good) }));
            }
        }
        Err(e) => law.check(false, || json!({ "error": e.to_string() })),
    }
    out.push(law.finish());
    out
}

// ---------------------------------------------------------------------------
// Liouville polynomial

pub fn liouville_suite<R: Rng + ?Sized>(qs: &[Q], samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let times = [rational(0), rational(1), rational(2), rational_frac(1, 2)];
    for q in qs {
        let scope = format!("qci(q={q})");
        let Ok(s) = qci(&FieldSpec::Rationals, q.clone()) else {
            out.push(setup_failure(&scope, "liouville", "invalid q"));
            continue;
        };
        let fr = match frobenius(&scope, "liouville", &s.algebra, &s.gram) {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let alg = &s.algebra;
        let sigma_inv = fr.sigma_inverse();
        let mut ode = Law::new(&scope, "liouville-ode");
        let mut exp_law = Law::new(&scope, "liouville-jacobian");
        let mut slope = Law::new(&scope, "liouville-first-derivative");
        let mut group = Law::new(&scope, "exp-one-parameter-group");
        let mut cases: Vec<(Q, Q)> = vec![(rational(1), rational(0))];
        cases.extend((1..samples).map(|_| (sample::scalar(alg, rng), sample::scalar(alg, rng))));
        for (c, d) in cases {
            let zero = rational(0);
            let Some(delta) = ode.check_result(s.delta(&zero, &zero, &c, &d)) else { continue };
            let Some(div) = ode.check_result(divergence(&fr, &delta)) else { continue };
            let Some(phi) = ode.check_result(liouville_polynomial(&fr, &delta)) else { continue };
            let Some(seq) = ode.check_result(phi_sequence(&fr, &delta, alg.dim())) else { continue };
            let witness = || json!({ "c": c.to_string(), "d": d.to_string() });
            // recurrence φ_{k+1} = φ_k·div − δ(φ_k)
            for k in 0..seq.len() - 1 {
                let next = &alg.mul(&seq[k], &div) - &delta.apply(&seq[k]);
                ode.check(next == seq[k + 1], witness);
            }
            // Φ' + δ(Φ) = Φ·div, coefficient by coefficient
            let deriv = phi.derivative(alg);
            let top = phi.coeffs().len() + 1;
            let coeff = |p: &crate::calculus::AlgebraPolynomial<Q>, k: usize| p.coeffs().get(k).cloned().unwrap_or_else(|| alg.zero());
            for k in 0..top {
                let lhs = &coeff(&deriv, k) + &delta.apply(&coeff(&phi, k));
                let rhs = alg.mul(&coeff(&phi, k), &div);
                ode.check(lhs == rhs, witness);
            }
            ode.check(phi.evaluate(&zero) == alg.unit(), witness);
            if c == rational(1) && d == rational(0) {
                let expected = vec![alg.unit(), s.y()];
                ode.check(phi.coeffs() == expected.as_slice(), witness);
            }
            for t in &times {
                let Some(u) = exp_law.check_result(exp_derivation(alg, &delta, t)) else { continue };
                if let Some(j) = exp_law.check_result(jacobian(&fr, &u)) {
                    let expected = sigma_inv.apply(&phi.evaluate(t));
                    exp_law.check(j == expected, || json!({ "c": c.to_string(), "d": d.to_string(), "t": t.to_string(), "got": show(alg, &j) }));
                }
                if c == rational(1) && d == rational(0) {
                    if let Ok(a) = s.alpha(&rational(1), &rational(1), t, &rational(0)) {
                        exp_law.check(a.matrix() == u.matrix(), witness);
                    }
                }
                for t2 in &times {
                    if let (Ok(a), Ok(b), Ok(ab)) = (
                        exp_derivation(alg, &delta, t),
                        exp_derivation(alg, &delta, t2),
                        exp_derivation(alg, &delta, &(t.clone() + t2.clone())),
                    ) {
                        group.check(a.compose(&b).matrix() == ab.matrix(), witness);
                    }
                }
            }
            // t ↦ β⁻¹(exp(tδ)ᵀβ(1)) has k-th Taylor coefficient
            // β⁻¹((δ^k)ᵀβ(1))/k!; compare with σ⁻¹(φ_k)/k!
            let beta_one = fr.beta(&alg.unit());
            let mut power = LinearMap::identity(alg.dim());
            for (k, phik) in seq.iter().enumerate() {
                let coeff_k = fr.beta_inverse(&power.matrix().transpose().mul_vec(&beta_one));
                let expected = sigma_inv.apply(phik);
                slope.check(coeff_k == expected, || json!({ "c": c.to_string(), "d": d.to_string(), "k": k }));
                if k == 1 {
                    slope.check(coeff_k == sigma_inv.apply(&div), witness);
                }
                power = power.compose(&delta);
            }
        }
        out.extend([ode.finish(), exp_law.finish(), slope.finish(), group.finish()]);
    }
    out
}

// ---------------------------------------------------------------------------
// Crossed products

fn crossed_case<F: Field, R: Rng + ?Sized>(
    scope: &str,
    fr: &Frobenius<F>,
    group: &Group,
    action: &GroupAction<F>,
    rng: &mut R,
) -> Vec<CheckRecord> {
    let alg = fr.algebra();
    let mut law = Law::new(scope, "crossed-nakayama");
    let mut ratio = Law::new(scope, "normalized-cocycle-ratio");
    let mut other_order = true;
    let sampled = match sample_cocycle(alg, group, rng) {
        Ok(a) => a,
        Err(e) => return vec![setup_failure(scope, "crossed-nakayama", e)],
    };
    for (label, alpha) in [("trivial", TwoCocycle::trivial(alg, group)), ("sampled", sampled)] {
        let Some(cp) = law.check_result(build_crossed_product(alg, group, action, &alpha)) else { continue };
        let gram = cp.crossed_form(fr);
        let Some(direct) = law.check_result(make_frobenius(&cp.algebra, &gram)) else { continue };
        let Some(predicted) = law.check_result(cp.predicted_nakayama(fr)) else { continue };
        law.check(predicted.matrix() == direct.sigma().matrix(), || {
            json!({ "cocycle": label, "predicted": show_map(&predicted), "direct": show_map(direct.sigma()) })
        });
        if let Ok(alt) = cp.nakayama_candidate(fr, FactorOrder::TwistAfterAction) {
            other_order &= alt.matrix() == direct.sigma().matrix();
        }
        if alpha.is_normalized(group) {
            for g in 0..group.order() {
                ratio.check(alpha.ratio(group, g).is_one(), || json!({ "cocycle": label, "g": g }));
            }
        }
        if label == "sampled" {
            law.note(json!({
                "sampled_cocycle": alpha.values().iter().map(|r| show_scalars(r)).collect::<Vec<_>>(),
                "reading": "g applied to sigma(jac)",
                "sigma_applied_to_g(jac)_also_matches": other_order,
            }));
        }
    }
    // a normalized representative of the sampled class: the carry cocycle
    if group.order() == 2 {
        let lambda = sample::nonzero(alg, rng);
        if let Some(alpha) = ratio.check_result(TwoCocycle::cyclic_carry(group, &lambda)) {
            for g in 0..group.order() {
                ratio.check(alpha.ratio(group, g).is_one(), || json!({ "lambda": lambda.to_string(), "g": g }));
            }
        }
    }
    vec![law.finish(), ratio.finish()]
}

pub fn crossed_suite<R: Rng + ?Sized>(rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let field = FieldSpec::Rationals;
    for n in 1..=2 {
        let scope = format!("exterior(n={n})⋊Z/2");
        let Ok(e) = exterior::<Q>(&field, n) else { continue };
        let built = make_frobenius(&e.algebra, &e.gram)
            .map_err(|e| e.to_string())
            .and_then(|fr| {
                let minus = Matrix::identity(n).scale(&rational(-1));
                let u = e.phi(&minus).map_err(|e| e.to_string())?;
                let (g, action) = GroupAction::involution(&e.algebra, &u).map_err(|e| e.to_string())?;
                Ok((fr, g, action))
            });
        match built {
            Ok((fr, g, action)) => out.extend(crossed_case(&scope, &fr, &g, &action, rng)),
            Err(err) => out.push(setup_failure(&scope, "crossed-nakayama", err)),
        }
    }
    let scope = "qci(q=2)⋊Z/2";
    let built = qci(&field, rational(2)).map_err(|e| e.to_string()).and_then(|s| {
        let fr = make_frobenius(&s.algebra, &s.gram).map_err(|e| e.to_string())?;
        let u = s.alpha(&rational(-1), &rational(1), &rational(0), &rational(1)).map_err(|e| e.to_string())?;
        let (g, action) = GroupAction::involution(&s.algebra, &u).map_err(|e| e.to_string())?;
        Ok((fr, g, action))
    });
    match built {
        Ok((fr, g, action)) => out.extend(crossed_case(scope, &fr, &g, &action, rng)),
        Err(err) => out.push(setup_failure(scope, "crossed-nakayama", err)),
    }
    let scope = "cyclic(p=3)⋊Z/2";
    let built = FieldSpec::prime(3)
        .map_err(|e| e.to_string())
        .and_then(|f3| cyclic::<Gf>(&f3).map_err(|e| e.to_string()))
        .and_then(|c| {
            let fr = make_frobenius(&c.algebra, &c.gram).map_err(|e| e.to_string())?;
            // c ↦ c⁻¹ reads x ↦ (1+x)⁻¹ − 1 = 2x + x²
            let u = c.u_f(&c.algebra.element_from_ints(&[0, 2, 1])).map_err(|e| e.to_string())?;
            let (g, action) = GroupAction::involution(&c.algebra, &u).map_err(|e| e.to_string())?;
            Ok((fr, g, action))
        });
    match built {
        Ok((fr, g, action)) => out.extend(crossed_case(scope, &fr, &g, &action, rng)),
        Err(err) => out.push(setup_failure(scope, "crossed-nakayama", err)),
    }
    out
}

// ---------------------------------------------------------------------------
// Reductions

pub fn reduction_suite<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = vec![product_reduction(samples, rng)];
    out.extend(scalar_reductions(samples, rng));
    out
}

fn product_reduction<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> CheckRecord {
    let scope = "qci(q=2)×matrix(n=2)";
    let field = FieldSpec::Rationals;
    let mut law = Law::new(scope, "product-jacobian");
    let (Ok(s), Ok(m2)) = (qci(&field, rational(2)), matrix_algebra::<Q>(&field, 2)) else {
        return setup_failure(scope, "product-jacobian", "builders failed");
    };
    let m2_gram = trace_form(&m2);
    let (Some(f1), Some(f2)) = (law.check_result(make_frobenius(&s.algebra, &s.gram)), law.check_result(make_frobenius(&m2, &m2_gram)))
    else {
        return law.finish();
    };
    let Some(prod) = law.check_result(s.algebra.direct_product(&m2)) else { return law.finish() };
    let gram = block_diagonal(&s.gram, &m2_gram);
    let Some(fp) = law.check_result(make_frobenius(&prod, &gram)) else { return law.finish() };
    let center = prod.center_basis().len();
    law.check(center == 3, || json!({ "center_dim": center }));
    for _ in 0..samples {
        let (a, b) = (sample::nonzero(&s.algebra, rng), sample::nonzero(&s.algebra, rng));
        let (c, d) = (sample::scalar(&s.algebra, rng), sample::scalar(&s.algebra, rng));
        let Some(u1) = law.check_result(s.alpha(&a, &b, &c, &d)) else { continue };
        let u1 = if rng.gen_bool(0.5) { u1.compose(&sample::inner(&s.algebra, rng)) } else { u1 };
        let u2 = sample::inner(&m2, rng);
        let Some(u) = law.check_result(LinearMap::endomorphism(&prod, block_diagonal(u1.matrix(), u2.matrix()))) else {
            continue;
        };
        let (Some(j1), Some(j2), Some(j)) =
            (law.check_result(jacobian(&f1, &u1)), law.check_result(jacobian(&f2, &u2)), law.check_result(jacobian(&fp, &u)))
        else {
            continue;
        };
        let mut expected = j1.into_coeffs();
        expected.extend(j2.into_coeffs());
        law.check(j.coeffs() == expected.as_slice(), || json!({ "u": show_map(&u), "got": show(&prod, &j) }));
    }
    law.finish()
}

fn scalar_reductions<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let (Ok(f2), Ok(f4)) = (FieldSpec::prime(2), FieldSpec::extension(2, vec![1, 1, 1])) else {
        return vec![setup_failure("F_2", "extension-of-scalars", "field construction failed")];
    };

    // F_2-algebras moved to F_4
    let mut ext = Law::new("F_2→F_4", "extension-of-scalars");
    let one = Gf::from_int(&f2, 1);
    let mut sources: Vec<(crate::algebra::Algebra<Gf>, Matrix<Gf>, &str)> = Vec::new();
    if let Ok(s) = qci::<Gf>(&f2, one) {
        sources.push((s.algebra, s.gram, "qci(q=1)"));
    }
    if let Ok(c) = cyclic::<Gf>(&f2) {
        sources.push((c.algebra, c.gram, "cyclic(p=2)"));
    }
    if let Ok(g) = Group::cyclic(3) {
        if let Ok((a, gram)) = group_algebra::<Gf>(&f2, &g) {
            sources.push((a, gram, "group-algebra(Z/3)"));
        }
    }
    for (alg, gram, name) in &sources {
        let (Some(fr), Some(big), Some(big_gram)) = (
            ext.check_result(make_frobenius(alg, gram)),
            ext.check_result(extend_scalars(alg, &f4)),
            ext.check_result(extend_matrix(gram, &f4)),
        ) else {
            continue;
        };
        let Some(fb) = ext.check_result(make_frobenius(&big, &big_gram)) else { continue };
        if let Some(sig) = ext.check_result(extend_matrix(fr.sigma().matrix(), &f4)) {
            ext.check(&sig == fb.sigma().matrix(), || json!({ "algebra": name, "case": "nakayama" }));
        }
        for _ in 0..samples {
            let u = sample::inner(alg, rng);
            let u = if rng.gen_bool(0.5) { u.compose(fr.sigma()) } else { u };
            let Some(m) = ext.check_result(extend_matrix(u.matrix(), &f4)) else { continue };
            let Some(ub) = ext.check_result(LinearMap::endomorphism(&big, m)) else { continue };
            let (Some(j), Some(jb)) = (ext.check_result(jacobian(&fr, &u)), ext.check_result(jacobian(&fb, &ub))) else {
                continue;
            };
            if let Some(je) = ext.check_result(extend_element(&j, &f4)) {
                ext.check(je == jb, || json!({ "algebra": name, "u": show_map(&u) }));
            }
        }
    }
    out.push(ext.finish());

    // F_4-algebras read over F_2
    let mut change = Law::new("F_4→F_2", "restriction-of-scalars");
    let a = Gf::generator(&f4).expect("F_4 generator");
    let mut sources: Vec<(crate::algebra::Algebra<Gf>, Matrix<Gf>, &str)> = Vec::new();
    if let Ok(s) = qci::<Gf>(&f4, a) {
        sources.push((s.algebra, s.gram, "qci(q=a)"));
    }
    if let Ok(t) = truncated_polynomial::<Gf>(&f4, 2) {
        let g = truncated_gram(&t);
        sources.push((t, g, "truncated(m=2)"));
    }
    let eps_choices = [[0i64, 1], [1, 0], [1, 1]];
    for (alg, gram, name) in &sources {
        let Some(fr) = change.check_result(make_frobenius(alg, gram)) else { continue };
        let Some(r) = change.check_result(restrict_scalars(alg)) else { continue };
        for eps in eps_choices {
            let eps: Vec<Gf> = eps.iter().map(|&x| Gf::from_int(&f2, x)).collect();
            let Some(g2) = change.check_result(r.gram(gram, &eps)) else { continue };
            let Some(fr2) = change.check_result(make_frobenius(&r.algebra, &g2)) else { continue };
            if let Some(sig) = change.check_result(r.map(fr.sigma())) {
                change.check(sig.matrix() == fr2.sigma().matrix(), || json!({ "algebra": name, "eps": show_scalars(&eps) }));
            }
            for _ in 0..samples.min(5) {
                let u = sample::inner(alg, rng);
                let u = if rng.gen_bool(0.5) { u.compose(fr.sigma()) } else { u };
                let (Some(j), Some(ur)) = (change.check_result(jacobian(&fr, &u)), change.check_result(r.map(&u))) else {
                    continue;
                };
                let (Some(jr), Some(expected)) = (change.check_result(jacobian(&fr2, &ur)), change.check_result(r.element(&j)))
                else {
                    continue;
                };
                change.check(jr == expected, || json!({ "algebra": name, "u": show_map(&u) }));
            }
        }
    }
    out.push(change.finish());
    out
}

// ---------------------------------------------------------------------------
// Strongly separable algebras

pub fn separable_suite<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let field = FieldSpec::Rationals;
    let mut cases: Vec<(String, Result<crate::algebra::Algebra<Q>, String>)> = Vec::new();
    for n in [2, 3] {
        cases.push((format!("matrix(n={n}, trace form)"), matrix_algebra::<Q>(&field, n).map_err(|e| e.to_string())));
    }
    cases.push((
        "group-algebra(S3, trace form)".into(),
        Group::symmetric(3)
            .map_err(|e| e.to_string())
            .and_then(|g| group_algebra::<Q>(&field, &g).map(|(a, _)| a).map_err(|e| e.to_string())),
    ));
    for (scope, alg) in cases {
        let alg = match alg {
            Ok(a) => a,
            Err(e) => {
                out.push(setup_failure(&scope, "separable-inner-jacobian", e));
                continue;
            }
        };
        let gram = trace_form(&alg);
        let fr = match frobenius(&scope, "separable-inner-jacobian", &alg, &gram) {
            Ok(f) => f,
            Err(r) => {
                out.push(r);
                continue;
            }
        };
        let mut law = Law::new(&scope, "separable-inner-jacobian");
        for _ in 0..samples {
            let u = sample::inner(&alg, rng);
            if let Some(j) = law.check_result(jacobian(&fr, &u)) {
                law.check(j == alg.unit(), || json!({ "u": show_map(&u), "got": show(&alg, &j) }));
            }
        }
        law.note(json!({ "trace_form_symmetric": fr.is_symmetric_form() }));
        out.push(law.finish());
    }
    out
}


// ---------------------------------------------------------------------------
// Checks on caller-supplied data

/// Recurrence, termwise ODE and `jac(exp tδ) = σ⁻¹(Φ(t))` for one locally
/// nilpotent derivation.
pub fn liouville_checks<F: Field>(scope: &str, fr: &Frobenius<F>, delta: &LinearMap<F>) -> Vec<CheckRecord> {
    let alg = fr.algebra();
    let mut ode = Law::new(scope, "liouville-ode");
    let mut exp_law = Law::new(scope, "liouville-jacobian");
    let (Some(div), Some(phi), Some(seq)) = (
        ode.check_result(divergence(fr, delta)),
        ode.check_result(liouville_polynomial(fr, delta)),
        ode.check_result(phi_sequence(fr, delta, alg.dim())),
    ) else {
        return vec![ode.finish()];
    };
    for k in 0..seq.len() - 1 {
        let next = &alg.mul(&seq[k], &div) - &delta.apply(&seq[k]);
        ode.check(next == seq[k + 1], || json!({ "k": k + 1, "expected": show(alg, &next), "got": show(alg, &seq[k + 1]) }));
    }
    let deriv = phi.derivative(alg);
    let coeff = |p: &crate::calculus::AlgebraPolynomial<F>, k: usize| p.coeffs().get(k).cloned().unwrap_or_else(|| alg.zero());
    for k in 0..phi.coeffs().len() + 1 {
        let lhs = &coeff(&deriv, k) + &delta.apply(&coeff(&phi, k));
        let rhs = alg.mul(&coeff(&phi, k), &div);
        ode.check(lhs == rhs, || json!({ "coefficient": k, "lhs": show(alg, &lhs), "rhs": show(alg, &rhs) }));
    }
    let mut times: Vec<F> = [0, 1, 2].iter().map(|&n| alg.scalar(n)).collect();
    if let Some(half) = alg.scalar(2).inverse() {
        times.push(alg.tag(half));
    }
    for t in &times {
        let Some(u) = exp_law.check_result(exp_derivation(alg, delta, t)) else { continue };
        if let Some(j) = exp_law.check_result(jacobian(fr, &u)) {
            let expected = fr.sigma_inverse().apply(&phi.evaluate(t));
            exp_law.check(j == expected, || json!({ "t": t.to_string(), "got": show(alg, &j), "expected": show(alg, &expected) }));
        }
    }
    ode.note(json!({ "phi": phi.coeffs().iter().map(|c| show(alg, c)).collect::<Vec<_>>(), "divergence": show(alg, &div) }));
    vec![ode.finish(), exp_law.finish()]
}

/// The predicted Nakayama automorphism of `A ⋊_α G` against the one read
/// off the crossed form directly.
pub fn crossed_product_checks<F: Field>(
    scope: &str,
    fr: &Frobenius<F>,
    group: &Group,
    action: &GroupAction<F>,
    alpha: &TwoCocycle<F>,
) -> Vec<CheckRecord> {
    let alg = fr.algebra();
    let mut law = Law::new(scope, "crossed-nakayama");
    let Some(cp) = law.check_result(build_crossed_product(alg, group, action, alpha)) else { return vec![law.finish()] };
    let gram = cp.crossed_form(fr);
    let (Some(direct), Some(predicted)) =
        (law.check_result(make_frobenius(&cp.algebra, &gram)), law.check_result(cp.predicted_nakayama(fr)))
    else {
        return vec![law.finish()];
    };
    law.check(predicted.matrix() == direct.sigma().matrix(), || {
        json!({ "predicted": show_map(&predicted), "direct": show_map(direct.sigma()) })
    });
    let other = cp.nakayama_candidate(fr, FactorOrder::TwistAfterAction).map(|m| m.matrix() == direct.sigma().matrix());
    law.note(json!({
        "dim": cp.algebra.dim(),
        "nakayama": show_map(direct.sigma()),
        "reading": "g applied to sigma(jac)",
        "sigma_applied_to_g(jac)_also_matches": other.ok(),
    }));
    vec![law.finish()]
}

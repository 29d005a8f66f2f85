//! Laws that hold for every Frobenius structure: the Nakayama automorphism,
//! Jacobians, divergences and Hochschild (co)homology.

use rand::Rng;
use serde_json::{json, Value};

use super::sample;
use super::{setup_failure, show, show_map, CheckRecord, Law};
use crate::algebra::{same_span, span_dim, Algebra, Element, LinearMap};
use crate::calculus::{delta_star, divergence, jacobian, jacobian_cocycle};
use crate::field::Field;
use crate::frobenius::{make_frobenius, Frobenius, UnitVerdict};
use crate::gallery::{Family, Structure};
use crate::hochschild::{
    boundary_matrix, coboundary_matrix, duality_dims, hh_dimension, sigma_action_on_homology, triviality_certificate,
    Coefficients, Cochain,
};

/// Sample counts and limits for the structure suites.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Derivations (or derivation pairs) per divergence law.
    pub samples: usize,
    /// Automorphism pairs per Jacobian law.
    pub pairs: usize,
    /// Highest Hochschild degree to examine.
    pub max_degree: usize,
    pub budget: u128,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { samples: 30, pairs: 50, max_degree: 2, budget: crate::hochschild::DEFAULT_BUDGET }
    }
}

/// Whether the complex in degree `p` (both adjacent maps) fits the budget.
pub fn degree_fits(dim: usize, p: usize, budget: u128) -> bool {
    (dim as u128).checked_pow(2 * p as u32 + 3).is_some_and(|e| e <= budget)
}

/// Whether the family is known to be a symmetric algebra.
pub fn expected_symmetric<F: Field>(family: &Family<F>) -> Option<bool> {
    match family {
        Family::Exterior(e) => Some(e.generators() % 2 == 1),
        Family::Qci(q) => Some(q.q().is_one()),
        Family::Custom => None,
        _ => Some(true),
    }
}

fn frobenius_of<F: Field>(s: &Structure<F>, law: &'static str) -> Result<Frobenius<F>, CheckRecord> {
    make_frobenius(&s.algebra, &s.gram).map_err(|e| setup_failure(&s.name, law, e))
}

/// Everything applicable to one structure.
pub fn structure_suite<F: Field, R: Rng + ?Sized>(s: &Structure<F>, opts: &SuiteOptions, rng: &mut R) -> Vec<CheckRecord> {
    let mut out = frobenius_suite(s, rng);
    out.extend(jacobian_suite(s, opts.pairs, rng));
    out.extend(divergence_suite(s, opts.samples, rng));
    out.extend(hochschild_suite(s, opts));
    out.extend(main_theorem_suite(s, opts));
    out.extend(homology_suite(s, opts));
    out
}

pub fn frobenius_suite<F: Field, R: Rng + ?Sized>(s: &Structure<F>, rng: &mut R) -> Vec<CheckRecord> {
    let fr = match frobenius_of(s, "frobenius-form") {
        Ok(f) => f,
        Err(r) => return vec![r],
    };
    let alg = &s.algebra;
    let n = alg.dim();
    let mut out = Vec::new();

    let mut law = Law::new(&s.name, "center-fixed");
    let moved = fr.center_not_fixed();
    law.check(moved.is_empty(), || json!({ "moved": moved.iter().map(|z| show(alg, z)).collect::<Vec<_>>() }));
    law.note(json!({ "center_dim": alg.center_basis().len() }));
    out.push(law.finish());

    let mut law = Law::new(&s.name, "nakayama-defining");
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (alg.basis(i), alg.basis(j));
            law.check(fr.form(&a, &b) == fr.form(&b, &fr.sigma().apply(&a)), || json!({ "pair": [i, j] }));
        }
    }
    out.push(law.finish());

    let mut law = Law::new(&s.name, "beta-bimodule");
    let violation = fr.beta_law_violation();
    law.check(violation.is_none(), || json!({ "triple": violation }));
    out.push(law.finish());

    let mut law = Law::new(&s.name, "beta-transport");
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (alg.basis(i), alg.basis(j));
            // (a·λ)(y) = λ(y a)
            let lambda = fr.beta(&b);
            let moved: Vec<F> = (0..n)
                .map(|k| {
                    let y = alg.mul(&alg.basis(k), &a);
                    y.coeffs().iter().zip(&lambda).fold(alg.scalar(0), |acc, (c, l)| acc.add_ref(&c.mul_ref(l)))
                })
                .collect();
            let lhs = fr.beta_inverse(&moved);
            let rhs = alg.mul(&fr.sigma_inverse().apply(&a), &b);
            law.check(lhs == rhs, || json!({ "pair": [i, j], "lhs": show(alg, &lhs), "rhs": show(alg, &rhs) }));
        }
    }
    out.push(law.finish());

    let mut law = Law::new(&s.name, "symmetric-form-identity");
    law.check(!fr.is_symmetric_form() || fr.sigma().matrix().is_identity(), || json!({ "sigma": show_map(fr.sigma()) }));
    out.push(law.finish());

    let mut law = Law::new(&s.name, "symmetric-algebra");
    let verdict = fr.is_symmetric_algebra(rng);
    match (&verdict, expected_symmetric(&s.family)) {
        (UnitVerdict::Inconclusive { tried }, _) => law.inconclusive(json!({ "tried": tried })),
        (v, Some(expected)) => law.check(v.is_found() == expected, || json!({ "expected": expected, "found": v.is_found() })),
        _ => {}
    }
    law.note(match &verdict {
        UnitVerdict::Found(t) => json!({ "symmetric": true, "sigma_is_inner_by": show(alg, t) }),
        UnitVerdict::NoUnit(cert) => json!({ "symmetric": false, "certificate": cert }),
        UnitVerdict::Inconclusive { .. } => Value::Null,
    });
    out.push(law.finish());

    let mut law = Law::new(&s.name, "form-change");
    for _ in 0..3 {
        let t = sample::unit(alg, rng);
        let gram2 = fr.gram_twisted_by(&t);
        let Some(change) = law.check_result(fr.relate_forms(&gram2)) else { continue };
        law.check(change.t == t, || json!({ "t": show(alg, &t), "recovered": show(alg, &change.t) }));
        let ratio = change.other.sigma().compose(fr.sigma_inverse());
        match law.check_result(fr.is_inner(&ratio, rng)) {
            Some(UnitVerdict::Found(_)) => law.check(true, || Value::Null),
            Some(UnitVerdict::Inconclusive { tried }) => law.inconclusive(json!({ "tried": tried })),
            Some(UnitVerdict::NoUnit(c)) => law.check(false, || json!({ "t": show(alg, &t), "certificate": c })),
            None => {}
        }
        // jac_{σ'}(u) = ξ⁻¹·jac_σ(u)·u⁻¹(ξ), ξ = σ'⁻¹(t)
        let u = sample::automorphism(s, &fr, rng);
        let (Some(j), Some(j2)) = (law.check_result(jacobian(&fr, &u)), law.check_result(jacobian(&change.other, &u)))
        else {
            continue;
        };
        let xi = change.other.sigma_inverse().apply(&t);
        let Some(xi_inv) = alg.inverse_of(&xi) else {
            law.check(false, || json!({ "xi_not_unit": show(alg, &xi) }));
            continue;
        };
        let uinv = u.inverse().expect("automorphism");
        let predicted = alg.product(&[&xi_inv, &j, &uinv.apply(&xi)]);
        law.check(predicted == j2, || {
            json!({ "t": show(alg, &t), "u": show_map(&u), "jacobian": show(alg, &j2), "predicted": show(alg, &predicted) })
        });
    }
    out.push(law.finish());
    out
}

fn witness_pair<F: Field>(u: &LinearMap<F>, v: &LinearMap<F>) -> Value {
    json!({ "u": show_map(u), "v": show_map(v) })
}

pub fn jacobian_suite<F: Field, R: Rng + ?Sized>(s: &Structure<F>, pairs: usize, rng: &mut R) -> Vec<CheckRecord> {
    let fr = match frobenius_of(s, "jacobian") {
        Ok(f) => f,
        Err(r) => return vec![r],
    };
    let alg = &s.algebra;
    let one = alg.unit();
    let sigma = fr.sigma();
    let sigma_inv = fr.sigma_inverse();
    let mut identity = Law::new(&s.name, "jacobian-of-identity");
    let id_jac = jacobian(&fr, &LinearMap::identity(alg.dim()));
    identity.check(matches!(&id_jac, Ok(j) if *j == one), || json!({ "got": format!("{id_jac:?}") }));

    let mut chain = Law::new(&s.name, "chain-rule");
    let mut cocycle = Law::new(&s.name, "twisted-cocycle");
    let mut unit_law = Law::new(&s.name, "jacobian-unit");
    let mut inverse = Law::new(&s.name, "inverse-jacobian");
    let mut powers = Law::new(&s.name, "nakayama-powers");
    let mut conj = Law::new(&s.name, "conjugation");
    let mut commute = Law::new(&s.name, "commutation");
    let mut readings = Law::new(&s.name, "commutator-fixed-point");
    let mut literal_conj = true;
    let mut inverse_reading = true;

    for k in -3i64..=3 {
        let p = sigma.power(k).expect("σ invertible");
        match jacobian(&fr, &p) {
            Ok(j) => powers.check(j == one, || json!({ "power": k, "jacobian": show(alg, &j) })),
            Err(e) => powers.check(false, || json!({ "power": k, "error": e.to_string() })),
        }
    }

    for _ in 0..pairs {
        let (u, v) = sample::automorphism_pair(s, &fr, rng);
        let (Some(ju), Some(jv), Some(juv)) = (
            chain.check_result(jacobian(&fr, &u)),
            chain.check_result(jacobian(&fr, &v)),
            chain.check_result(jacobian(&fr, &u.compose(&v))),
        ) else {
            continue;
        };
        let uinv = u.inverse().expect("automorphism");
        let vinv = v.inverse().expect("automorphism");
        let predicted = alg.mul(&jv, &vinv.apply(&ju));
        chain.check(predicted == juv, || witness_pair(&u, &v));

        if let (Some(tu), Some(tv), Some(tuv)) = (
            cocycle.check_result(jacobian_cocycle(&fr, &u)),
            cocycle.check_result(jacobian_cocycle(&fr, &v)),
            cocycle.check_result(jacobian_cocycle(&fr, &u.compose(&v))),
        ) {
            cocycle.check(tuv == alg.mul(&tu, &u.apply(&tv)), || witness_pair(&u, &v));
            let ju_inv = alg.inverse_of(&ju);
            unit_law.check(ju_inv.is_some(), || json!({ "u": show_map(&u), "jacobian": show(alg, &ju) }));
            if let Some(ji) = ju_inv {
                inverse.check(tu == u.apply(&ji), || json!({ "u": show_map(&u) }));
                // u⁻¹∘σ∘u = σ∘ι_J
                let lhs = uinv.compose(sigma).compose(&u);
                let iota = alg.inner_automorphism(&ju).expect("unit");
                let rhs = sigma.compose(&iota);
                conj.check(lhs.matrix() == rhs.matrix(), || json!({ "u": show_map(&u), "jacobian": show(alg, &ju) }));
                let literal = u.compose(sigma).compose(&uinv);
                literal_conj &= literal.matrix() == rhs.matrix();
                let commutator = sigma_inv.compose(&uinv).compose(sigma).compose(&u);
                let image = commutator.apply(&ju);
                readings.check(image == ju, || json!({ "u": show_map(&u), "jacobian": show(alg, &ju), "image": show(alg, &image) }));
                inverse_reading &= image == ji;
            }
        }

        for (label, w, expected) in [
            ("sigma-then-u", sigma.compose(&u), ju.clone()),
            ("u-then-sigma", u.compose(sigma), sigma_inv.apply(&ju)),
        ] {
            match jacobian(&fr, &w) {
                Ok(j) => powers.check(j == expected, || json!({ "case": label, "u": show_map(&u) })),
                Err(e) => powers.check(false, || json!({ "case": label, "error": e.to_string() })),
            }
        }

        let commutes = sigma.compose(&u).matrix() == u.compose(sigma).matrix();
        commute.check(commutes == alg.is_central(&ju), || {
            json!({ "u": show_map(&u), "commutes": commutes, "jacobian": show(alg, &ju) })
        });
    }
    conj.note(json!({ "reading": "u^-1 sigma u = sigma iota_J", "u sigma u^-1 also matches": literal_conj }));
    readings.note(json!({ "fixed_point_holds": true, "inverse_reading_holds": inverse_reading }));
    vec![
        identity.finish(),
        chain.finish(),
        cocycle.finish(),
        unit_law.finish(),
        inverse.finish(),
        powers.finish(),
        conj.finish(),
        commute.finish(),
        readings.finish(),
    ]
}

/// Left multiplication by `z` after `d`.
fn scaled<F: Field>(alg: &Algebra<F>, z: &Element<F>, d: &LinearMap<F>) -> LinearMap<F> {
    LinearMap::general(alg.left_mult_matrix(z).mul(d.matrix()))
}

pub fn divergence_suite<F: Field, R: Rng + ?Sized>(s: &Structure<F>, samples: usize, rng: &mut R) -> Vec<CheckRecord> {
    let fr = match frobenius_of(s, "divergence") {
        Ok(f) => f,
        Err(r) => return vec![r],
    };
    let alg = &s.algebra;
    let n = alg.dim();
    let basis = alg.derivation_basis();
    let sigma = fr.sigma();
    let sigma_inv = fr.sigma_inverse();
    let two_invertible = alg.field().characteristic() != 2;
    let symmetric = fr.is_symmetric_form();

    let mut defining = Law::new(&s.name, "divergence-defining");
    let mut adjoint = Law::new(&s.name, "adjoint-formula");
    let mut inner = Law::new(&s.name, "divergence-of-inner");
    let mut connection = Law::new(&s.name, "divergence-connection");
    let mut bracket = Law::new(&s.name, "divergence-bracket");
    let mut twist = Law::new(&s.name, "twist-relation");
    let mut mc = Law::new(&s.name, "maurer-cartan");
    let mut central = Law::new(&s.name, "symmetric-divergence-central");

    for _ in 0..samples {
        let d = sample::derivation(alg, &basis, rng);
        let e = sample::derivation(alg, &basis, rng);
        let x = sample::element(alg, rng);
        let (Some(dd), Some(de)) = (defining.check_result(divergence(&fr, &d)), defining.check_result(divergence(&fr, &e)))
        else {
            continue;
        };
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (alg.basis(i), alg.basis(j));
                let lhs = fr.form(&d.apply(&a), &b).add_ref(&fr.form(&a, &d.apply(&b)));
                let rhs = fr.form(&a, &alg.mul(&b, &dd));
                defining.check(lhs == rhs, || json!({ "d": show_map(&d), "pair": [i, j] }));
            }
        }
        if let Some(star) = adjoint.check_result(delta_star(&fr, &d)) {
            for i in 0..n {
                let a = alg.basis(i);
                let expected = &alg.mul(&a, &dd) - &d.apply(&a);
                adjoint.check(star.apply(&a) == expected, || json!({ "d": show_map(&d), "basis": i }));
            }
        }

        let ad = alg.ad(&x);
        if let Some(div_ad) = inner.check_result(divergence(&fr, &ad)) {
            let expected = &sigma.apply(&x) - &x;
            inner.check(div_ad == expected, || json!({ "x": show(alg, &x), "divergence": show(alg, &div_ad) }));
            if symmetric {
                central.check(div_ad.is_zero(), || json!({ "inner_of": show(alg, &x), "divergence": show(alg, &div_ad) }));
            }
        }

        let z = sample::central_unit(alg, rng);
        let zd = scaled(alg, &z, &d);
        if let Some(zd) = connection.check_result(LinearMap::derivation(alg, zd.matrix().clone())) {
            if let Some(div_zd) = connection.check_result(divergence(&fr, &zd)) {
                let expected = &alg.mul(&z, &dd) - &d.apply(&z);
                connection.check(div_zd == expected, || json!({ "z": show(alg, &z), "d": show_map(&d) }));
            }
        }

        let br = d.bracket(&e);
        if let Some(br) = bracket.check_result(LinearMap::derivation(alg, br.matrix().clone())) {
            if let Some(div_br) = bracket.check_result(divergence(&fr, &br)) {
                let expected = &(&d.apply(&de) - &e.apply(&dd)) + &alg.commutator(&dd, &de);
                bracket.check(div_br == expected, || json!({ "d": show_map(&d), "e": show_map(&e) }));
                if two_invertible {
                    // dΘ(d,e) + ½[Θ,Θ](d,e) with dΘ(d,e) = d(Θe) − e(Θd) − Θ[d,e]
                    let half = alg.scalar(2).inverse().expect("2 invertible");
                    let d_theta = &(&d.apply(&de) - &e.apply(&dd)) - &div_br;
                    let sq = (&alg.commutator(&dd, &de) - &alg.commutator(&de, &dd)).scale(&half);
                    mc.check((&d_theta + &sq).is_zero(), || json!({ "d": show_map(&d), "e": show_map(&e) }));
                }
            }
        }

        let conj = sigma.compose(&d).compose(sigma_inv);
        let lhs = conj.matrix().sub(d.matrix());
        twist.check(&lhs == alg.ad(&dd).matrix(), || json!({ "d": show_map(&d), "divergence": show(alg, &dd) }));

        if symmetric {
            central.check(alg.is_central(&dd), || json!({ "d": show_map(&d), "divergence": show(alg, &dd) }));
        }
    }
    twist.note(json!({ "reading": "sigma d sigma^-1 - d = ad(div d)" }));
    let mut out = vec![
        defining.finish(),
        adjoint.finish(),
        inner.finish(),
        connection.finish(),
        bracket.finish(),
        twist.finish(),
    ];
    if two_invertible {
        out.push(mc.finish());
    }
    if symmetric {
        out.push(central.finish());
    }
    out
}

/// Complex axioms and agreement of low-degree cohomology with the center and
/// the derivations.
pub fn hochschild_suite<F: Field>(s: &Structure<F>, opts: &SuiteOptions) -> Vec<CheckRecord> {
    let fr = match frobenius_of(s, "hochschild") {
        Ok(f) => f,
        Err(r) => return vec![r],
    };
    let alg = &s.algebra;
    let n = alg.dim();
    let mut out = Vec::new();

    let mut axiom = Law::new(&s.name, "complex-squares-to-zero");
    let mut degrees = Vec::new();
    for p in 0..=opts.max_degree {
        if !degree_fits(n, p + 1, opts.budget) {
            break;
        }
        degrees.push(p);
        let (Some(d0), Some(d1)) = (
            axiom.check_result(coboundary_matrix(alg, p, opts.budget)),
            axiom.check_result(coboundary_matrix(alg, p + 1, opts.budget)),
        ) else {
            continue;
        };
        axiom.check(d1.composes_to_zero(&d0), || json!({ "cochain_degree": p }));
        if p >= 1 {
            for coeffs in [Coefficients::Untwisted, Coefficients::Twisted(fr.sigma())] {
                let (Some(b0), Some(b1)) = (
                    axiom.check_result(boundary_matrix(alg, p, coeffs, opts.budget)),
                    axiom.check_result(boundary_matrix(alg, p + 1, coeffs, opts.budget)),
                ) else {
                    continue;
                };
                axiom.check(b0.composes_to_zero(&b1), || json!({ "chain_degree": p, "twisted": matches!(coeffs, Coefficients::Twisted(_)) }));
            }
        }
    }
    axiom.note(json!({ "degrees": degrees }));
    out.push(axiom.finish());

    let mut center = Law::new(&s.name, "degree-zero-is-center");
    if let Some(h0) = center.check_result(hh_dimension(alg, 0, opts.budget)) {
        let reps: Vec<Element<F>> = h0.representatives.iter().map(|r| Element::new(r.clone())).collect();
        center.check(same_span(&reps, &alg.center_basis(), n), || json!({ "hh0_dim": h0.dim }));
    }
    out.push(center.finish());

    let mut ders = Law::new(&s.name, "degree-one-is-derivations");
    if degree_fits(n, 1, opts.budget) {
        if let (Some(h1), Some(d1)) =
            (ders.check_result(hh_dimension(alg, 1, opts.budget)), ders.check_result(coboundary_matrix(alg, 1, opts.budget)))
        {
            let basis = alg.derivation_basis();
            ders.check(h1.cycles == basis.len(), || json!({ "cocycles": h1.cycles, "derivations": basis.len() }));
            for d in &basis {
                let image = d1.mul_vec(Cochain::from_map(d).values());
                ders.check(image.iter().all(|x| x.is_zero()), || json!({ "derivation": show_map(d) }));
            }
            let inner: Vec<Element<F>> =
                (0..n).map(|i| Element::new(alg.ad(&alg.basis(i)).matrix().entries().to_vec())).collect();
            let inner_dim = span_dim(&inner, n * n);
            ders.check(h1.boundaries == inner_dim, || json!({ "coboundaries": h1.boundaries, "inner": inner_dim }));
            ders.note(json!({ "outer_dim": h1.dim }));
        }
    }
    out.push(ders.finish());
    out
}

/// `σ` acts trivially on `HH^p`: every basis class has a certificate `g`
/// with `f^σ − f = dg`.
pub fn main_theorem_suite<F: Field>(s: &Structure<F>, opts: &SuiteOptions) -> Vec<CheckRecord> {
    let fr = match frobenius_of(s, "sigma-trivial-on-cohomology") {
        Ok(f) => f,
        Err(r) => return vec![r],
    };
    let alg = &s.algebra;
    let n = alg.dim();
    let mut law = Law::new(&s.name, "sigma-trivial-on-cohomology");
    let mut per_degree = Vec::new();
    let mut skipped = Vec::new();
    for p in 1..=opts.max_degree {
        if !degree_fits(n, p, opts.budget) {
            skipped.push(p);
            continue;
        }
        let Some(report) = law.check_result(hh_dimension(alg, p, opts.budget)) else { continue };
        for (k, rep) in report.representatives.iter().enumerate() {
            let Some(f) = law.check_result(Cochain::new(n, p, rep.clone())) else { continue };
            match triviality_certificate(&fr, &f, opts.budget) {
                Ok(Some(_)) => law.check(true, || Value::Null),
                Ok(None) => law.check(false, || json!({ "refutation": { "degree": p, "class": k, "cocycle": super::show_scalars(rep) } })),
                Err(e) => law.check(false, || json!({ "degree": p, "class": k, "error": e.to_string() })),
            }
        }
        per_degree.push(json!({ "degree": p, "classes": report.dim }));
    }
    law.note(json!({ "degrees": per_degree, "skipped_for_budget": skipped }));
    vec![law.finish()]
}

/// Twisted homology: `σ_♯` trivial on `H_p(A, A_σ)` and
/// `dim HH^p = dim H_p(A, A_σ)`.
pub fn homology_suite<F: Field>(s: &Structure<F>, opts: &SuiteOptions) -> Vec<CheckRecord> {
    let fr = match frobenius_of(s, "twisted-homology") {
        Ok(f) => f,
        Err(r) => return vec![r],
    };
    let n = s.algebra.dim();
    let top = (0..=opts.max_degree).take_while(|&p| degree_fits(n, p, opts.budget)).last();
    let mut out = Vec::new();

    let mut twisted = Law::new(&s.name, "twisted-action-trivial");
    let mut untwisted_data = Vec::new();
    if let Some(top) = top {
        for p in 0..=top {
            if let Some((_, m)) =
                twisted.check_result(sigma_action_on_homology(&fr, p, Coefficients::Twisted(fr.sigma()), opts.budget))
            {
                twisted.check(m.is_identity(), || json!({ "degree": p, "action": super::show_matrix(&m) }));
            }
            if let Ok((rep, m)) = sigma_action_on_homology(&fr, p, Coefficients::Untwisted, opts.budget) {
                untwisted_data.push(json!({ "degree": p, "dim": rep.dim, "identity": m.is_identity() }));
            }
        }
    }
    twisted.note(json!({ "untwisted": untwisted_data }));
    out.push(twisted.finish());

    let mut duality = Law::new(&s.name, "duality-dimensions");
    if let Some(top) = top {
        if let Some(dims) = duality.check_result(duality_dims(&fr, top, opts.budget)) {
            for (p, coh, hom) in &dims {
                duality.check(coh == hom, || json!({ "degree": p, "cohomology": coh, "twisted_homology": hom }));
            }
            duality.note(json!({ "dims": dims.iter().map(|(p, c, _)| json!([p, c])).collect::<Vec<_>>() }));
        }
    }
    out.push(duality.finish());
    out
}

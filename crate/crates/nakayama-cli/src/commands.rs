//! Subcommand bodies. File commands load the algebra once and dispatch to a
//! function generic over the scalar type.

use std::path::Path;

use nakayama::algebra::{Algebra, LinearMap};
use nakayama::calculus::{divergence as divergence_of, jacobian as jacobian_of, jacobian_by_solve, jacobian_cocycle};
use nakayama::field::{Field, FieldSpec};
use nakayama::frobenius::{make_frobenius, Frobenius};
use nakayama::gallery::{build_gallery, Family, GalleryParams, GalleryStructure, Structure};
use nakayama::hochschild::{duality_dims, hh_dimension};
use nakayama::io::{algebra_to_file, parse_algebra, parse_crossed_product, parse_map, AnyAlgebra, MapRole};
use nakayama::linalg::Matrix;
use nakayama::verify::{
    self, degree_fits, rng_for, run_criterion, CheckRecord, Law, Status, SuiteOptions, CRITERIA,
};
use serde_json::{json, Value};

use crate::expectations::expectations;

pub struct Context {
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub budget: u128,
    pub field: Option<FieldSpec>,
}

impl Context {
    fn options(&self, default_degree: usize) -> SuiteOptions {
        SuiteOptions { max_degree: self.max_degree.unwrap_or(default_degree), budget: self.budget, ..SuiteOptions::default() }
    }
}

/// Input files as `(path, contents)`, algebra first.
pub struct Inputs {
    pub files: Vec<(String, String)>,
}

impl Inputs {
    fn scope(&self) -> String {
        Path::new(&self.files[0].0).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
    }

    fn second(&self) -> &str {
        &self.files[1].1
    }
}

#[derive(Default)]
pub struct Outcome {
    pub checks: Vec<CheckRecord>,
    pub result: Value,
}

impl Outcome {
    fn failure(scope: &str, law: &'static str, witness: Value) -> Self {
        Outcome { checks: vec![CheckRecord { id: format!("{scope}/{law}"), law: law.into(), status: Status::Fail, witness }], result: Value::Null }
    }
}

fn show<F: Field>(alg: &Algebra<F>, a: &nakayama::algebra::Element<F>) -> Value {
    Value::String(alg.format_element(a))
}

fn show_matrix<F: Field>(m: &Matrix<F>) -> Value {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>().into()
}

fn load(inputs: &Inputs, ctx: &Context) -> Result<AnyAlgebra, Outcome> {
    parse_algebra(&inputs.files[0].1, ctx.field.as_ref()).map_err(|e| Outcome::failure(&inputs.scope(), "parse-algebra", e.witness()))
}

fn structure<F: Field>(scope: &str, alg: Algebra<F>, gram: Option<Matrix<F>>) -> Result<Structure<F>, Outcome> {
    match gram {
        Some(gram) => Ok(Structure { name: scope.to_string(), algebra: alg, gram, family: Family::Custom }),
        None => Err(Outcome::failure(scope, "gram-present", json!({ "error": "the algebra file has no gram matrix" }))),
    }
}

fn frobenius_or_fail<F: Field>(s: &Structure<F>) -> Result<Frobenius<F>, Outcome> {
    make_frobenius(&s.algebra, &s.gram).map_err(|e| Outcome::failure(&s.name, "frobenius-form", json!({ "error": e.to_string() })))
}

/// Run `$body` with `$s: Structure<F>` for whichever field the file names.
macro_rules! on_structure {
    ($inputs:expr, $ctx:expr, |$s:ident| $body:expr) => {{
        let scope = $inputs.scope();
        match load($inputs, $ctx) {
            Err(o) => o,
            Ok(AnyAlgebra::Rational(alg, gram)) => match structure(&scope, alg, gram) {
                Ok($s) => $body,
                Err(o) => o,
            },
            Ok(AnyAlgebra::Finite(alg, gram)) => match structure(&scope, alg, gram) {
                Ok($s) => $body,
                Err(o) => o,
            },
        }
    }};
}

// ---------------------------------------------------------------------------

pub fn check_algebra(inputs: &Inputs, ctx: &Context) -> Outcome {
    let scope = inputs.scope();
    match load(inputs, ctx) {
        Err(o) => o,
        Ok(AnyAlgebra::Rational(a, g)) => check_algebra_on(&scope, &a, g.as_ref()),
        Ok(AnyAlgebra::Finite(a, g)) => check_algebra_on(&scope, &a, g.as_ref()),
    }
}

fn check_algebra_on<F: Field>(scope: &str, alg: &Algebra<F>, gram: Option<&Matrix<F>>) -> Outcome {
    let mut checks = Vec::new();
    let mut law = Law::new(scope, "associative-unital");
    law.check(true, || Value::Null);
    checks.push(law.finish());
    let mut symmetric = Value::Null;
    if let Some(g) = gram {
        let mut law = Law::new(scope, "frobenius-form");
        if let Some(fr) = law.check_result(make_frobenius(alg, g)) {
            symmetric = fr.is_symmetric_form().into();
        }
        checks.push(law.finish());
    }
    Outcome {
        checks,
        result: json!({
            "field": alg.field(),
            "dim": alg.dim(),
            "basis_names": alg.basis_names(),
            "center_dim": alg.center_basis().len(),
            "has_gram": gram.is_some(),
            "symmetric_form": symmetric,
        }),
    }
}

pub fn frobenius(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| frobenius_on(&s, ctx))
}

fn frobenius_on<F: Field>(s: &Structure<F>, ctx: &Context) -> Outcome {
    let fr = match frobenius_or_fail(s) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let checks = verify::frobenius_suite(s, &mut rng_for(ctx.seed));
    Outcome {
        checks,
        result: json!({
            "sigma": show_matrix(fr.sigma().matrix()),
            "sigma_is_identity": fr.sigma().matrix().is_identity(),
            "symmetric_form": fr.is_symmetric_form(),
        }),
    }
}

pub fn nakayama(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| nakayama_on(&s, ctx))
}

fn nakayama_on<F: Field>(s: &Structure<F>, ctx: &Context) -> Outcome {
    let fr = match frobenius_or_fail(s) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let checks = verify::frobenius_suite(s, &mut rng_for(ctx.seed))
        .into_iter()
        .filter(|r| ["nakayama-defining", "center-fixed", "symmetric-algebra"].contains(&r.law.as_str()))
        .collect();
    let order = (1..=24).find(|&k| fr.sigma().power(k).is_some_and(|p| p.matrix().is_identity()));
    Outcome {
        checks,
        result: json!({
            "sigma": show_matrix(fr.sigma().matrix()),
            "sigma_inverse": show_matrix(fr.sigma_inverse().matrix()),
            "sigma_is_identity": fr.sigma().matrix().is_identity(),
            "order": order,
        }),
    }
}

fn map_or_fail<F: Field>(s: &Structure<F>, inputs: &Inputs) -> Result<(LinearMap<F>, MapRole), Outcome> {
    parse_map(&s.algebra, inputs.second()).map_err(|e| Outcome::failure(&s.name, "parse-map", e.witness()))
}

pub fn jacobian(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| jacobian_on(&s, inputs))
}

fn jacobian_on<F: Field>(s: &Structure<F>, inputs: &Inputs) -> Outcome {
    let (fr, (u, role)) = match frobenius_or_fail(s).and_then(|fr| map_or_fail(s, inputs).map(|m| (fr, m))) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let alg = &s.algebra;
    let n = alg.dim();
    let mut checks = Vec::new();
    let mut defining = Law::new(&s.name, "jacobian-defining");
    let Some(j) = defining.check_result(jacobian_of(&fr, &u)) else { return Outcome { checks: vec![defining.finish()], result: Value::Null } };
    let endo = role != MapRole::General || alg.is_endomorphism(u.matrix());
    if endo {
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (alg.basis(a), alg.basis(b));
                let lhs = fr.form(&u.apply(&ea), &u.apply(&eb));
                let rhs = fr.form(&alg.mul(&j, &ea), &eb);
                defining.check(lhs == rhs, || json!({ "pair": [a, b] }));
            }
        }
        if let Some(solved) = defining.check_result(jacobian_by_solve(&fr, &u)) {
            defining.check(solved.as_ref() == Some(&j), || json!({ "solved": solved.as_ref().map(|x| show(alg, x)) }));
        }
    }
    checks.push(defining.finish());
    let is_unit = alg.is_unit(&j);
    if u.is_invertible() && endo {
        let mut law = Law::new(&s.name, "jacobian-unit");
        law.check(is_unit, || json!({ "jacobian": show(alg, &j) }));
        checks.push(law.finish());
    }
    let twisted = jacobian_cocycle(&fr, &u).ok().map(|t| show(alg, &t));
    Outcome {
        checks,
        result: json!({ "role": role, "jacobian": show(alg, &j), "twisted_jacobian": twisted, "is_unit": is_unit }),
    }
}

fn derivation_or_fail<F: Field>(s: &Structure<F>, inputs: &Inputs) -> Result<(Frobenius<F>, LinearMap<F>), Outcome> {
    let fr = frobenius_or_fail(s)?;
    let (d, role) = map_or_fail(s, inputs)?;
    if role != MapRole::Derivation {
        return Err(Outcome::failure(&s.name, "map-role", json!({ "error": format!("expected a derivation, got role {role}") })));
    }
    Ok((fr, d))
}

pub fn divergence(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| divergence_on(&s, inputs))
}

fn divergence_on<F: Field>(s: &Structure<F>, inputs: &Inputs) -> Outcome {
    let (fr, d) = match derivation_or_fail(s, inputs) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let alg = &s.algebra;
    let n = alg.dim();
    let mut law = Law::new(&s.name, "divergence-defining");
    let Some(div) = law.check_result(divergence_of(&fr, &d)) else { return Outcome { checks: vec![law.finish()], result: Value::Null } };
    for a in 0..n {
        for b in 0..n {
            let (ea, eb) = (alg.basis(a), alg.basis(b));
            let lhs = fr.form(&d.apply(&ea), &eb).add_ref(&fr.form(&ea, &d.apply(&eb)));
            let rhs = fr.form(&ea, &alg.mul(&eb, &div));
            law.check(lhs == rhs, || json!({ "pair": [a, b] }));
        }
    }
    Outcome {
        checks: vec![law.finish()],
        result: json!({ "divergence": show(alg, &div), "central": alg.is_central(&div) }),
    }
}

pub fn derivations(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| derivations_on(&s, ctx))
}

fn derivations_on<F: Field>(s: &Structure<F>, ctx: &Context) -> Outcome {
    let alg = &s.algebra;
    let basis = alg.derivation_basis();
    let inner: Vec<_> = (0..alg.dim()).map(|i| nakayama::algebra::Element::new(alg.ad(&alg.basis(i)).matrix().entries().to_vec())).collect();
    let inner_dim = nakayama::algebra::span_dim(&inner, alg.dim() * alg.dim());
    let mut checks = verify::divergence_suite(s, SuiteOptions::default().samples, &mut rng_for(ctx.seed));
    checks.extend(verify::hochschild_suite(s, &ctx.options(1)).into_iter().filter(|r| r.law == "degree-one-is-derivations"));
    Outcome {
        checks,
        result: json!({
            "dim": basis.len(),
            "inner_dim": inner_dim,
            "basis": basis.iter().map(|d| show_matrix(d.matrix())).collect::<Vec<_>>(),
        }),
    }
}

fn degree_table<F: Field>(alg: &Algebra<F>, opts: &SuiteOptions) -> Value {
    let rows: Vec<Value> = (0..=opts.max_degree)
        .map(|p| {
            if !degree_fits(alg.dim(), p, opts.budget) {
                return json!({ "degree": p, "skipped_for_budget": true });
            }
            match hh_dimension(alg, p, opts.budget) {
                Ok(r) => json!({ "degree": p, "dim": r.dim, "cocycles": r.cycles, "coboundaries": r.boundaries }),
                Err(e) => json!({ "degree": p, "error": e.to_string() }),
            }
        })
        .collect();
    Value::Array(rows)
}

pub fn hochschild(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| {
        let opts = ctx.options(2);
        Outcome { checks: verify::hochschild_suite(&s, &opts), result: json!({ "cohomology": degree_table(&s.algebra, &opts) }) }
    })
}

pub fn main_theorem(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| Outcome { checks: verify::main_theorem_suite(&s, &ctx.options(2)), result: Value::Null })
}

pub fn homology(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| homology_on(&s, ctx))
}

fn homology_on<F: Field>(s: &Structure<F>, ctx: &Context) -> Outcome {
    let opts = ctx.options(2);
    let checks = verify::homology_suite(s, &opts);
    let top = (0..=opts.max_degree).take_while(|&p| degree_fits(s.algebra.dim(), p, opts.budget)).last();
    let dims = match (top, make_frobenius(&s.algebra, &s.gram)) {
        (Some(top), Ok(fr)) => duality_dims(&fr, top, opts.budget)
            .map(|d| d.iter().map(|(p, c, h)| json!({ "degree": p, "cohomology": c, "twisted_homology": h })).collect::<Vec<_>>())
            .ok(),
        _ => None,
    };
    Outcome { checks, result: json!({ "dimensions": dims }) }
}

pub fn crossed_product(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| crossed_on(&s, inputs))
}

fn crossed_on<F: Field>(s: &Structure<F>, inputs: &Inputs) -> Outcome {
    let fr = match frobenius_or_fail(s) {
        Ok(f) => f,
        Err(o) => return o,
    };
    match parse_crossed_product(&s.algebra, inputs.second()) {
        Ok((group, action, alpha)) => Outcome {
            checks: verify::crossed_product_checks(&s.name, &fr, &group, &action, &alpha),
            result: json!({ "group_order": group.order(), "dim": s.algebra.dim() * group.order() }),
        },
        Err(e) => Outcome::failure(&s.name, "parse-crossed-product", e.witness()),
    }
}

pub fn liouville(inputs: &Inputs, ctx: &Context) -> Outcome {
    on_structure!(inputs, ctx, |s| match derivation_or_fail(&s, inputs) {
        Ok((fr, d)) => Outcome { checks: verify::liouville_checks(&s.name, &fr, &d), result: Value::Null },
        Err(o) => o,
    })
}

// ---------------------------------------------------------------------------

pub fn gallery(name: &str, params: &GalleryParams, verify_all: bool, ctx: &Context) -> Result<Outcome, String> {
    let built = build_gallery(name, params).map_err(|e| e.to_string())?;
    let expected = expectations(&built);
    Ok(match &built {
        GalleryStructure::Rational(s) => gallery_on(s, expected, verify_all, ctx),
        GalleryStructure::Finite(s) => gallery_on(s, expected, verify_all, ctx),
    })
}

fn gallery_on<F: Field>(s: &Structure<F>, expected: Vec<Value>, verify_all: bool, ctx: &Context) -> Outcome {
    let mut checks = Vec::new();
    if verify_all {
        let mut rng = rng_for(ctx.seed);
        let opts = ctx.options(2);
        checks.extend(verify::structure_suite(s, &opts, &mut rng));
        let prefix = format!("{}/", s.name);
        let mut family = match &s.family {
            Family::Qci(q) => {
                let q = q.q().to_string();
                match nakayama::field::Q::parse(&FieldSpec::Rationals, &q) {
                    Ok(q) => {
                        let mut v = verify::qci_suite(std::slice::from_ref(&q), 20, &mut rng);
                        v.extend(verify::liouville_suite(&[q], 10, &mut rng));
                        v
                    }
                    Err(_) => Vec::new(),
                }
            }
            Family::Exterior(_) => verify::grassmann_suite(10, &mut rng),
            Family::Cyclic(_) => verify::cyclic_suite(30, &mut rng),
            Family::TrivialExtension(_) => verify::trivial_extension_suite(20, &mut rng),
            _ => Vec::new(),
        };
        family.retain(|r| r.id.starts_with(&prefix));
        checks.extend(family);
    }
    Outcome {
        checks,
        result: json!({
            "name": s.name,
            "algebra": algebra_to_file(&s.algebra, Some(&s.gram)),
            "expectations": expected,
        }),
    }
}

pub fn verify_all(criterion: Option<usize>, ctx: &Context) -> Outcome {
    let numbers: Vec<usize> = match criterion {
        Some(n) => vec![n],
        None => CRITERIA.iter().map(|c| c.number).collect(),
    };
    let mut checks = Vec::new();
    let mut summary = Vec::new();
    for n in numbers {
        let o = run_criterion(n, ctx.seed);
        if !o.within_limit {
            checks.push(CheckRecord {
                id: format!("criterion-{n}/time-limit"),
                law: "time-limit".into(),
                status: Status::Fail,
                witness: json!({ "elapsed_ms": o.elapsed_ms, "limit_ms": o.limit_ms }),
            });
        }
        summary.push(json!({ "criterion": n, "title": o.title, "status": o.status, "records": o.records.len() }));
        checks.extend(o.records);
    }
    Outcome { checks, result: json!({ "criteria": summary }) }
}

//! The thirteen acceptance criteria, each a fixed selection of suites with a
//! wall-clock limit.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::families::{self, divergence_obstruction_suite};
use super::laws::{self, SuiteOptions};
use super::{overall, setup_failure, CheckRecord, Law, Status};
use crate::field::{Field, FieldSpec, Q};
use crate::frobenius::make_frobenius;
use crate::gallery::{build_gallery, standard_gallery, GalleryParams, GalleryStructure, Structure};
use crate::hochschild::{sigma_action_on_homology, Coefficients, DEFAULT_BUDGET};

pub struct Criterion {
    pub number: usize,
    pub title: &'static str,
    pub limit: Duration,
}

const fn criterion(number: usize, title: &'static str, secs: u64) -> Criterion {
    Criterion { number, title, limit: Duration::from_secs(secs) }
}

pub const CRITERIA: [Criterion; 13] = [
    criterion(1, "Nakayama automorphism fixes the center on the gallery", 5),
    criterion(2, "quantum complete intersection closed forms", 1),
    criterion(3, "exterior algebra Jacobians", 10),
    criterion(4, "Jacobian cocycle laws", 10),
    criterion(5, "sigma acts trivially on Hochschild cohomology", 120),
    criterion(6, "twisted Hochschild homology and duality", 30),
    criterion(7, "cyclic p-group Jacobians", 5),
    criterion(8, "trivial extension Jacobians", 10),
    criterion(9, "divergence laws", 15),
    criterion(10, "Liouville polynomial", 5),
    criterion(11, "crossed product Nakayama automorphism", 10),
    criterion(12, "product and scalar-change reductions", 5),
    criterion(13, "strongly separable Jacobians", 5),
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub number: usize,
    pub title: String,
    pub records: Vec<CheckRecord>,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
    /// Worst record status.
    pub status: Status,
    pub within_limit: bool,
    pub passed: bool,
}

fn qcis() -> Vec<Q> {
    let r = |n: i64| Q::from_int(&FieldSpec::Rationals, n);
    vec![r(2), r(3), r(1) / r(2)]
}

fn each_structure(
    gallery: &[GalleryStructure],
    mut rational: impl FnMut(&Structure<Q>) -> Vec<CheckRecord>,
    mut finite: impl FnMut(&Structure<crate::field::Gf>) -> Vec<CheckRecord>,
) -> Vec<CheckRecord> {
    gallery
        .iter()
        .flat_map(|g| match g {
            GalleryStructure::Rational(s) => rational(s),
            GalleryStructure::Finite(s) => finite(s),
        })
        .collect()
}

fn gallery_or_failure(out: &mut Vec<CheckRecord>) -> Vec<GalleryStructure> {
    match standard_gallery() {
        Ok(g) => g,
        Err(e) => {
            out.push(setup_failure("gallery", "build", e));
            Vec::new()
        }
    }
}

/// Seeded RNG shared by the criteria (and the command-line tool).
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn records_for(number: usize, seed: u64) -> Vec<CheckRecord> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    match number {
        1 => {
            let gallery = gallery_or_failure(&mut out);
            let recs = each_structure(
                &gallery,
                |s| laws::frobenius_suite(s, &mut rng.clone()),
                |s| laws::frobenius_suite(s, &mut rng.clone()),
            );
            out.extend(recs.into_iter().filter(|r| r.law == "center-fixed"));
        }
        2 => out.extend(families::qci_suite(&qcis(), 20, &mut rng)),
        3 => out.extend(families::grassmann_suite(10, &mut rng)),
        4 => {
            let gallery = gallery_or_failure(&mut out);
            let mut r2 = rng.clone();
            out.extend(each_structure(
                &gallery,
                |s| laws::jacobian_suite(s, 50, &mut rng),
                |s| laws::jacobian_suite(s, 50, &mut r2),
            ));
        }
        5 => {
            let gallery = gallery_or_failure(&mut out);
            let opts = |dim: usize| SuiteOptions { max_degree: if dim <= 4 { 3 } else { 2 }, ..SuiteOptions::default() };
            out.extend(each_structure(
                &gallery,
                |s| if s.algebra.dim() <= 8 { laws::main_theorem_suite(s, &opts(s.algebra.dim())) } else { Vec::new() },
                |s| if s.algebra.dim() <= 8 { laws::main_theorem_suite(s, &opts(s.algebra.dim())) } else { Vec::new() },
            ));
        }
        6 => {
            out.extend(untwisted_h0_probe());
            let opts = SuiteOptions { max_degree: 2, ..SuiteOptions::default() };
            let mut targets: Vec<(&str, GalleryParams)> =
                vec![("exterior", GalleryParams { n: Some(2), ..Default::default() })];
            for q in ["2", "3", "1/2"] {
                targets.push(("qci", GalleryParams { q: Some(q.into()), ..Default::default() }));
            }
            for (family, params) in targets {
                match build_gallery(family, &params) {
                    Ok(GalleryStructure::Rational(s)) => out.extend(laws::homology_suite(&s, &opts)),
                    Ok(GalleryStructure::Finite(s)) => out.extend(laws::homology_suite(&s, &opts)),
                    Err(e) => out.push(setup_failure(family, "twisted-homology", e)),
                }
            }
        }
        7 => out.extend(families::cyclic_suite(30, &mut rng)),
        8 => out.extend(families::trivial_extension_suite(20, &mut rng)),
        9 => {
            let gallery = gallery_or_failure(&mut out);
            let mut r2 = rng.clone();
            out.extend(each_structure(
                &gallery,
                |s| laws::divergence_suite(s, 30, &mut rng),
                |s| laws::divergence_suite(s, 30, &mut r2),
            ));
            out.extend(divergence_obstruction_suite());
        }
        10 => out.extend(families::liouville_suite(&qcis(), 10, &mut rng)),
        11 => out.extend(families::crossed_suite(&mut rng)),
        12 => out.extend(families::reduction_suite(10, &mut rng)),
        13 => out.extend(families::separable_suite(20, &mut rng)),
        _ => out.push(setup_failure("criteria", "unknown-criterion", format!("no criterion {number}"))),
    }
    out
}

/// `σ_♯` on `H₀(A, A)` of each QCI is not the identity.
fn untwisted_h0_probe() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for q in qcis() {
        let scope = format!("qci(q={q})");
        let mut law = Law::new(&scope, "untwisted-action-nontrivial");
        let built = crate::gallery::qci(&FieldSpec::Rationals, q.clone());
        let Some(s) = law.check_result(built) else {
            out.push(law.finish());
            continue;
        };
        if let Some(fr) = law.check_result(make_frobenius(&s.algebra, &s.gram)) {
            if let Some((rep, m)) = law.check_result(sigma_action_on_homology(&fr, 0, Coefficients::Untwisted, DEFAULT_BUDGET)) {
                law.check(!m.is_identity(), || json!({ "dim": rep.dim, "action": super::show_matrix(&m) }));
                law.note(json!({ "h0_dim": rep.dim, "action": super::show_matrix(&m) }));
            }
        }
        out.push(law.finish());
    }
    out
}

/// Run criterion `number` (1-based) with the given seed.
pub fn run_criterion(number: usize, seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let records = records_for(number, seed);
    let elapsed = start.elapsed();
    let (title, limit) = CRITERIA
        .iter()
        .find(|c| c.number == number)
        .map(|c| (c.title, c.limit))
        .unwrap_or(("unknown", Duration::ZERO));
    let status = if records.is_empty() { Status::Fail } else { overall(&records) };
    let within_limit = elapsed <= limit;
    CriterionOutcome {
        number,
        title: title.to_string(),
        records,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
        status,
        within_limit,
        passed: status == Status::Pass && within_limit,
    }
}

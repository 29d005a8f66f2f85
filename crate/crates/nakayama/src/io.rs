//! JSON file formats for algebras, maps, groups and crossed-product data.
//!
//! Every file carries `"schema": 1`. Scalars are strings (`"-3/7"`, `"2"`)
//! or integers; finite-field scalars are residues (reduced on parsing) or,
//! for extension fields, coefficient lists `[c0, c1, ...]` in the generator.
//! Errors name the offending location as a JSON pointer.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, LinearMap, MapViolation, Role};
use crate::crossed::{CrossedError, GroupAction, TwoCocycle};
use crate::field::{Field, FieldError, FieldSpec, Gf, Q};
use crate::frobenius::form_associativity_violation;
use crate::group::{Group, GroupError};
use crate::linalg::Matrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error("at {pointer}: {source}")]
    Scalar { pointer: String, source: FieldError },
    #[error("at {pointer}: {message}")]
    Shape { pointer: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("gram matrix is not associative on basis triple ({0}, {1}, {2})")]
    FormNotAssociative(usize, usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error("map role {role} rejected: {reason}")]
    Role { role: MapRole, reason: String, violation: Option<MapViolation> },
    #[error("field mismatch: file is over {file}, expected {expected}")]
    FieldMismatch { file: FieldSpec, expected: FieldSpec },
}

impl IoError {
    /// Concrete witness data for reports.
    pub fn witness(&self) -> Value {
        match self {
            IoError::Algebra(AlgebraError::NotAssociative(i, j, k)) | IoError::FormNotAssociative(i, j, k) => {
                json!({ "triple": [i, j, k], "error": self.to_string() })
            }
            IoError::Algebra(AlgebraError::UnitLaw(i)) => json!({ "basis": i, "error": self.to_string() }),
            IoError::Role { violation: Some(v), .. } => json!({ "violation": v, "error": self.to_string() }),
            IoError::Schema { pointer, .. } | IoError::Scalar { pointer, .. } | IoError::Shape { pointer, .. } => {
                json!({ "pointer": pointer, "error": self.to_string() })
            }
            _ => json!({ "error": self.to_string() }),
        }
    }
}

/// A scalar as written in a file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
    Coefficients(Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema: u32,
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub unit: Vec<ScalarText>,
    pub structure: Vec<(usize, usize, usize, ScalarText)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<ScalarText>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapRole {
    Automorphism,
    Endomorphism,
    Derivation,
    General,
}

impl fmt::Display for MapRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapRole::Automorphism => "automorphism",
            MapRole::Endomorphism => "endomorphism",
            MapRole::Derivation => "derivation",
            MapRole::General => "general",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub schema: u32,
    pub role: MapRole,
    /// Column `j` is the image of basis element `j`.
    pub columns: Vec<Vec<ScalarText>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub schema: u32,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupData {
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// Group, action and cocycle; the base algebra comes from its own file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedProductFile {
    pub schema: u32,
    pub group: GroupData,
    /// One column-matrix per group element.
    pub action: Vec<Vec<Vec<ScalarText>>>,
    /// `α(g, h)` table; all ones when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<Vec<ScalarText>>>,
}

/// An algebra (with optional Gram matrix) over whichever field the file names.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Rational(Algebra<Q>, Option<Matrix<Q>>),
    Finite(Algebra<Gf>, Option<Matrix<Gf>>),
}

impl AnyAlgebra {
    pub fn field(&self) -> &FieldSpec {
        match self {
            AnyAlgebra::Rational(a, _) => a.field(),
            AnyAlgebra::Finite(a, _) => a.field(),
        }
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

fn decode<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| IoError::Schema { pointer: pointer_of(e.path()), message: e.inner().to_string() })
}

fn check_version(v: u32) -> Result<(), IoError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(IoError::Version(v))
    }
}

pub fn parse_scalar<F: Field>(spec: &FieldSpec, s: &ScalarText, pointer: &str) -> Result<F, IoError> {
    let err = |source| IoError::Scalar { pointer: pointer.to_string(), source };
    match s {
        ScalarText::Int(n) => Ok(F::from_int(spec, *n)),
        ScalarText::Text(t) => F::parse(spec, t).map_err(err),
        ScalarText::Coefficients(cs) => {
            if !F::supports(spec) {
                return Err(err(FieldError::Unsupported(spec.clone())));
            }
            // c0 + c1*a + c2*a^2 + ...
            let text = cs.iter().enumerate().map(|(d, c)| format!("+{c}*a^{d}")).collect::<String>();
            let text = text.replace("*a^0", "");
            F::parse(spec, text.replace("+-", "-").trim_start_matches('+')).map_err(err)
        }
    }
}

fn parse_square<F: Field>(spec: &FieldSpec, rows: &[Vec<ScalarText>], n: usize, pointer: &str) -> Result<Matrix<F>, IoError> {
    if rows.len() != n {
        return Err(IoError::Shape { pointer: pointer.into(), message: format!("{} rows for dimension {n}", rows.len()) });
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(IoError::Shape { pointer: format!("{pointer}/{i}"), message: format!("{} entries for dimension {n}", row.len()) });
        }
        for (j, s) in row.iter().enumerate() {
            data.push(parse_scalar(spec, s, &format!("{pointer}/{i}/{j}"))?);
        }
    }
    Ok(Matrix::new(n, n, data).expect("square shape checked"))
}

/// Build an algebra over `F` from a decoded file (the field must be one `F`
/// supports).
pub fn algebra_from_file<F: Field>(file: &AlgebraFile) -> Result<(Algebra<F>, Option<Matrix<F>>), IoError> {
    check_version(file.schema)?;
    let spec = &file.field;
    let n = file.dim;
    let names = match &file.basis_names {
        Some(names) => {
            if names.len() != n {
                return Err(IoError::Shape { pointer: "/basis_names".into(), message: format!("{} names for dimension {n}", names.len()) });
            }
            names.clone()
        }
        None => (0..n).map(|i| format!("e{i}")).collect(),
    };
    if file.unit.len() != n {
        return Err(IoError::Shape { pointer: "/unit".into(), message: format!("{} coefficients for dimension {n}", file.unit.len()) });
    }
    let unit = file
        .unit
        .iter()
        .enumerate()
        .map(|(i, s)| parse_scalar(spec, s, &format!("/unit/{i}")))
        .collect::<Result<Vec<F>, _>>()?;
    let mut structure = Vec::with_capacity(file.structure.len());
    for (idx, (i, j, k, s)) in file.structure.iter().enumerate() {
        for (slot, v) in [*i, *j, *k].into_iter().enumerate() {
            if v >= n {
                return Err(IoError::Shape { pointer: format!("/structure/{idx}/{slot}"), message: format!("index {v} out of range for dimension {n}") });
            }
        }
        structure.push((*i, *j, *k, parse_scalar(spec, s, &format!("/structure/{idx}/3"))?));
    }
    let alg = Algebra::new(spec.clone(), names, structure, unit)?;
    let gram = match &file.gram {
        Some(rows) => {
            let g = parse_square(spec, rows, n, "/gram")?;
            if let Some((i, j, k)) = form_associativity_violation(&alg, &g) {
                return Err(IoError::FormNotAssociative(i, j, k));
            }
            Some(g)
        }
        None => None,
    };
    Ok((alg, gram))
}

/// Parse an algebra file; `field` overrides the field named in the file.
pub fn parse_algebra(text: &str, field: Option<&FieldSpec>) -> Result<AnyAlgebra, IoError> {
    let mut file: AlgebraFile = decode(text)?;
    check_version(file.schema)?;
    if let Some(spec) = field {
        file.field = spec.clone();
    }
    file.field.validate().map_err(|source| IoError::Scalar { pointer: "/field".into(), source })?;
    match file.field {
        FieldSpec::Rationals => algebra_from_file::<Q>(&file).map(|(a, g)| AnyAlgebra::Rational(a, g)),
        _ => algebra_from_file::<Gf>(&file).map(|(a, g)| AnyAlgebra::Finite(a, g)),
    }
}

fn scalar_text<F: Field>(c: &F) -> ScalarText {
    ScalarText::Text(c.to_string())
}

pub fn algebra_to_file<F: Field>(alg: &Algebra<F>, gram: Option<&Matrix<F>>) -> AlgebraFile {
    AlgebraFile {
        schema: SCHEMA_VERSION,
        field: alg.field().clone(),
        dim: alg.dim(),
        basis_names: Some(alg.basis_names().to_vec()),
        unit: alg.unit().coeffs().iter().map(scalar_text).collect(),
        structure: alg.structure().into_iter().map(|(i, j, k, c)| (i, j, k, scalar_text(&c))).collect(),
        gram: gram.map(|g| g.to_rows().iter().map(|r| r.iter().map(scalar_text).collect()).collect()),
    }
}

pub fn algebra_to_json<F: Field>(alg: &Algebra<F>, gram: Option<&Matrix<F>>) -> String {
    serde_json::to_string_pretty(&algebra_to_file(alg, gram)).expect("algebra files serialize")
}

pub fn map_to_file<F: Field>(u: &LinearMap<F>, role: MapRole) -> MapFile {
    let m = u.matrix();
    MapFile {
        schema: SCHEMA_VERSION,
        role,
        columns: (0..m.cols()).map(|j| m.column(j).iter().map(scalar_text).collect()).collect(),
    }
}

fn columns_matrix<F: Field>(spec: &FieldSpec, columns: &[Vec<ScalarText>], n: usize, pointer: &str) -> Result<Matrix<F>, IoError> {
    parse_square::<F>(spec, columns, n, pointer).map(|m| m.transpose())
}

/// Parse a map file against `alg`, validating the declared role.
pub fn parse_map<F: Field>(alg: &Algebra<F>, text: &str) -> Result<(LinearMap<F>, MapRole), IoError> {
    let file: MapFile = decode(text)?;
    check_version(file.schema)?;
    let m = columns_matrix::<F>(alg.field(), &file.columns, alg.dim(), "/columns")?;
    let reject = |e: AlgebraError| {
        let violation = match &e {
            AlgebraError::NotEndomorphism(v) | AlgebraError::NotDerivation(v) => Some(*v),
            _ => None,
        };
        IoError::Role { role: file.role, reason: e.to_string(), violation }
    };
    let map = match file.role {
        MapRole::General => LinearMap::general(m),
        MapRole::Derivation => LinearMap::with_role(alg, m, Role::Derivation).map_err(reject)?,
        MapRole::Endomorphism => LinearMap::with_role(alg, m, Role::Endomorphism).map_err(reject)?,
        MapRole::Automorphism => {
            let u = LinearMap::with_role(alg, m, Role::Endomorphism).map_err(reject)?;
            if !u.is_invertible() {
                return Err(reject(AlgebraError::NotInvertible));
            }
            u
        }
    };
    Ok((map, file.role))
}

fn group_from(table: &[Vec<usize>], names: Option<&Vec<String>>) -> Result<Group, IoError> {
    Ok(Group::from_table(table.to_vec(), names.cloned())?)
}

pub fn parse_group(text: &str) -> Result<Group, IoError> {
    let file: GroupFile = decode(text)?;
    check_version(file.schema)?;
    group_from(&file.table, file.names.as_ref())
}

pub fn group_to_file(g: &Group) -> GroupFile {
    GroupFile { schema: SCHEMA_VERSION, table: g.table().to_vec(), names: Some(g.names().to_vec()) }
}

/// Group, validated action and validated cocycle for a crossed product over `alg`.
pub fn parse_crossed_product<F: Field>(alg: &Algebra<F>, text: &str) -> Result<(Group, GroupAction<F>, TwoCocycle<F>), IoError> {
    let file: CrossedProductFile = decode(text)?;
    check_version(file.schema)?;
    let group = group_from(&file.group.table, file.group.names.as_ref())?;
    let spec = alg.field();
    let matrices = file
        .action
        .iter()
        .enumerate()
        .map(|(g, cols)| columns_matrix::<F>(spec, cols, alg.dim(), &format!("/action/{g}")))
        .collect::<Result<Vec<_>, _>>()?;
    let action = GroupAction::new(alg, &group, matrices)?;
    let cocycle = match &file.cocycle {
        Some(rows) => {
            let m = group.order();
            if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                return Err(IoError::Shape { pointer: "/cocycle".into(), message: format!("expected a {m}x{m} table") });
            }
            let values = rows
                .iter()
                .enumerate()
                .map(|(g, r)| r.iter().enumerate().map(|(h, s)| parse_scalar(spec, s, &format!("/cocycle/{g}/{h}"))).collect())
                .collect::<Result<Vec<Vec<F>>, _>>()?;
            TwoCocycle::new(&group, values)?
        }
        None => TwoCocycle::trivial(alg, &group),
    };
    Ok((group, action, cocycle))
}

pub fn crossed_product_to_file<F: Field>(group: &Group, action: &GroupAction<F>, cocycle: &TwoCocycle<F>) -> CrossedProductFile {
    CrossedProductFile {
        schema: SCHEMA_VERSION,
        group: GroupData { table: group.table().to_vec(), names: Some(group.names().to_vec()) },
        action: action.maps().iter().map(|u| map_to_file(u, MapRole::General).columns).collect(),
        cocycle: Some(cocycle.values().iter().map(|r| r.iter().map(scalar_text).collect()).collect()),
    }
}

/// `Q`, `F<p>` or `F<p>[c0,c1,...]` (minimal polynomial, lowest degree first);
/// a JSON field object is accepted too.
pub fn parse_field(text: &str) -> Result<FieldSpec, IoError> {
    let bad = |reason: &str| IoError::Scalar { pointer: "--field".into(), source: FieldError::Parse { text: text.into(), reason: reason.into() } };
    let t = text.trim();
    if t.starts_with('{') {
        let spec: FieldSpec = decode(t)?;
        spec.validate().map_err(|source| IoError::Scalar { pointer: "--field".into(), source })?;
        return Ok(spec);
    }
    if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
        return Ok(FieldSpec::Rationals);
    }
    let rest = t.strip_prefix('F').or_else(|| t.strip_prefix('f')).ok_or_else(|| bad("expected Q, F<p> or F<p>[min_poly]"))?;
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    let (p, poly) = match rest.split_once('[') {
        Some((p, poly)) => (p, Some(poly.strip_suffix(']').ok_or_else(|| bad("unterminated polynomial"))?)),
        None => (rest, None),
    };
    let p: u64 = p.parse().map_err(|_| bad("characteristic is not an integer"))?;
    let to_io = |source| IoError::Scalar { pointer: "--field".into(), source };
    match poly {
        None => FieldSpec::prime(p).map_err(to_io),
        Some(poly) => {
            let coeffs = poly
                .split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| bad("polynomial coefficient is not an integer")))
                .collect::<Result<Vec<_>, _>>()?;
            FieldSpec::extension(p, coeffs).map_err(to_io)
        }
    }
}

/// Check the file's field against an expected one.
pub fn expect_field(got: &FieldSpec, expected: &FieldSpec) -> Result<(), IoError> {
    if got == expected {
        Ok(())
    } else {
        Err(IoError::FieldMismatch { file: got.clone(), expected: expected.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::qci;
    use num_traits::One;

    #[test]
    fn qci_round_trips() {
        let s = qci(&FieldSpec::Rationals, Q::from_int(&FieldSpec::Rationals, 2)).unwrap();
        let text = algebra_to_json(&s.algebra, Some(&s.gram));
        let AnyAlgebra::Rational(a, g) = parse_algebra(&text, None).unwrap() else { panic!("rational") };
        assert_eq!(a, s.algebra);
        assert_eq!(g.as_ref(), Some(&s.gram));
    }

    #[test]
    fn residues_are_reduced() {
        let text = r#"{"schema":1,"field":{"kind":"prime","p":3},"dim":1,"unit":["4"],"structure":[[0,0,0,"1"]]}"#;
        let AnyAlgebra::Finite(a, _) = parse_algebra(text, None).unwrap() else { panic!("finite") };
        assert!(a.unit()[0].is_one());
    }

    #[test]
    fn inconsistent_unit_is_rejected() {
        // e0 e0 = e0 with e0 the unit, but e1 e0 = 0
        let text = r#"{"schema":1,"field":{"kind":"rationals"},"dim":2,"unit":["1","0"],
            "structure":[[0,0,0,"1"],[0,1,1,"1"]]}"#;
        let err = parse_algebra(text, None).unwrap_err();
        assert!(matches!(err, IoError::Algebra(AlgebraError::UnitLaw(1))), "{err}");
    }

    #[test]
    fn errors_carry_pointers() {
        let text = r#"{"schema":1,"field":{"kind":"rationals"},"dim":1,"unit":["1"],"structure":[[0,0,0,"x/2"]]}"#;
        match parse_algebra(text, None).unwrap_err() {
            IoError::Scalar { pointer, .. } => assert_eq!(pointer, "/structure/0/3"),
            e => panic!("{e}"),
        }
        let text = r#"{"schema":1,"field":{"kind":"rationals"},"dim":"one","unit":[],"structure":[]}"#;
        match parse_algebra(text, None).unwrap_err() {
            IoError::Schema { pointer, .. } => assert_eq!(pointer, "/dim"),
            e => panic!("{e}"),
        }
        let text = r#"{"schema":2,"field":{"kind":"rationals"},"dim":1,"unit":["1"],"structure":[[0,0,0,"1"]]}"#;
        assert!(matches!(parse_algebra(text, None).unwrap_err(), IoError::Version(2)));
    }

    #[test]
    fn map_roles_are_validated() {
        let s = qci(&FieldSpec::Rationals, Q::from_int(&FieldSpec::Rationals, 2)).unwrap();
        // x ↦ 1 is not multiplicative
        let mut cols = vec![vec!["0"; 4]; 4];
        cols[0][0] = "1";
        cols[1][0] = "1";
        let text = json!({ "schema": 1, "role": "endomorphism", "columns": cols }).to_string();
        assert!(matches!(parse_map(&s.algebra, &text), Err(IoError::Role { .. })));
        let text = serde_json::to_string(&map_to_file(&LinearMap::<Q>::identity(4), MapRole::Automorphism)).unwrap();
        let (u, role) = parse_map(&s.algebra, &text).unwrap();
        assert!(u.matrix().is_identity());
        assert_eq!(role, MapRole::Automorphism);
    }

    #[test]
    fn field_flags_parse() {
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("F5").unwrap(), FieldSpec::Prime { p: 5 });
        assert_eq!(parse_field("F2[1,1,1]").unwrap(), FieldSpec::Extension { p: 2, min_poly: vec![1, 1, 1] });
        assert!(parse_field("F4").is_err());
        assert!(parse_field("F2[1,0,1]").is_err());
    }
}

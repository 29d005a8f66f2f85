//! Finite-dimensional associative algebras given by structure constants.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldError, FieldSpec};
use crate::linalg::{LinalgError, Matrix};
use crate::sparse::{Echelon, SparseVec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("algebra must have positive dimension")]
    ZeroDimension,
    #[error("{names} basis names for dimension {dim}")]
    BasisNames { names: usize, dim: usize },
    #[error("structure index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("vector of length {got} for dimension {dim}")]
    Length { got: usize, dim: usize },
    #[error("scalar {0} does not belong to field {1}")]
    ForeignScalar(String, FieldSpec),
    #[error("not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    UnitLaw(usize),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("not an endomorphism: {0}")]
    NotEndomorphism(MapViolation),
    #[error("not a derivation: {0}")]
    NotDerivation(MapViolation),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0}")]
    Invalid(String),
}

/// Where a candidate map fails to be multiplicative (or Leibniz).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapViolation {
    /// The unit is not sent to the unit (endomorphisms only).
    Unit,
    /// The identity fails on basis elements `(i, j)`.
    Pair(usize, usize),
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::Unit => write!(f, "unit is not preserved"),
            MapViolation::Pair(i, j) => write!(f, "fails on basis pair ({i}, {j})"),
        }
    }
}

/// Coefficient vector of an algebra element in the algebra's basis.
#[derive(Clone, PartialEq)]
pub struct Element<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Element<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        Element { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Element { coeffs: vec![F::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Element::zero(dim);
        e.coeffs[i] = F::one();
        e
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        Element { coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect() }
    }
}

impl<F: Field> Index<usize> for Element<F> {
    type Output = F;
    fn index(&self, i: usize) -> &F {
        &self.coeffs[i]
    }
}

impl<F: Field> Add for &Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: &Element<F>) -> Element<F> {
        self.zip_with(rhs, F::add_ref)
    }
}

impl<F: Field> Sub for &Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: &Element<F>) -> Element<F> {
        self.zip_with(rhs, F::sub_ref)
    }
}

impl<F: Field> Add for Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: Element<F>) -> Element<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: Element<F>) -> Element<F> {
        &self - &rhs
    }
}

impl<F: Field> Neg for Element<F> {
    type Output = Element<F>;
    fn neg(self) -> Element<F> {
        Element { coeffs: self.coeffs.into_iter().map(|x| -x).collect() }
    }
}

impl<F: fmt::Debug> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|x| format!("{x:?}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Intended use of a [`LinearMap`]; validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    General,
    Endomorphism,
    Derivation,
}

/// Linear endomorphism of an algebra's underlying space. Column `j` of the
/// matrix holds the image of basis element `j`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearMap<F> {
    matrix: Matrix<F>,
    role: Role,
}

impl<F: Field> LinearMap<F> {
    pub fn general(matrix: Matrix<F>) -> Self {
        LinearMap { matrix, role: Role::General }
    }

    pub fn endomorphism(alg: &Algebra<F>, matrix: Matrix<F>) -> Result<Self, AlgebraError> {
        alg.check_square(&matrix)?;
        if let Some(v) = alg.endomorphism_violation(&matrix) {
            return Err(AlgebraError::NotEndomorphism(v));
        }
        Ok(LinearMap { matrix, role: Role::Endomorphism })
    }

    pub fn derivation(alg: &Algebra<F>, matrix: Matrix<F>) -> Result<Self, AlgebraError> {
        alg.check_square(&matrix)?;
        if let Some(v) = alg.derivation_violation(&matrix) {
            return Err(AlgebraError::NotDerivation(v));
        }
        Ok(LinearMap { matrix, role: Role::Derivation })
    }

    /// Validate against a requested role.
    pub fn with_role(alg: &Algebra<F>, matrix: Matrix<F>, role: Role) -> Result<Self, AlgebraError> {
        match role {
            Role::General => {
                alg.check_square(&matrix)?;
                Ok(LinearMap::general(matrix))
            }
            Role::Endomorphism => LinearMap::endomorphism(alg, matrix),
            Role::Derivation => LinearMap::derivation(alg, matrix),
        }
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap { matrix: Matrix::identity(dim), role: Role::Endomorphism }
    }

    pub fn zero_derivation(dim: usize) -> Self {
        LinearMap { matrix: Matrix::zeros(dim, dim), role: Role::Derivation }
    }

    pub(crate) fn trusted(matrix: Matrix<F>, role: Role) -> Self {
        LinearMap { matrix, role }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, a: &Element<F>) -> Element<F> {
        Element::new(self.matrix.mul_vec(a.coeffs()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap<F>) -> LinearMap<F> {
        let role = if self.role == Role::Endomorphism && other.role == Role::Endomorphism {
            Role::Endomorphism
        } else {
            Role::General
        };
        LinearMap { matrix: self.matrix.mul(&other.matrix), role }
    }

    pub fn inverse(&self) -> Option<LinearMap<F>> {
        let inv = self.matrix.inverse().ok()??;
        Some(LinearMap { matrix: inv, role: self.role })
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    /// Commutator `self∘other − other∘self`; derivations stay derivations.
    pub fn bracket(&self, other: &LinearMap<F>) -> LinearMap<F> {
        let m = self.matrix.mul(&other.matrix).sub(&other.matrix.mul(&self.matrix));
        let role = if self.role == Role::Derivation && other.role == Role::Derivation {
            Role::Derivation
        } else {
            Role::General
        };
        LinearMap { matrix: m, role }
    }

    /// `n`-th power under composition (`n` may be negative for invertible maps).
    pub fn power(&self, n: i64) -> Option<LinearMap<F>> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = LinearMap { matrix: Matrix::identity(self.dim()), role: self.role };
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc.role = if self.role == Role::Endomorphism { Role::Endomorphism } else { Role::General };
        Some(acc)
    }

    pub fn add(&self, other: &LinearMap<F>) -> LinearMap<F> {
        let role = if self.role == Role::Derivation && other.role == Role::Derivation {
            Role::Derivation
        } else {
            Role::General
        };
        LinearMap { matrix: self.matrix.add(&other.matrix), role }
    }

    pub fn scale(&self, c: &F) -> LinearMap<F> {
        let role = if self.role == Role::Derivation { Role::Derivation } else { Role::General };
        LinearMap { matrix: self.matrix.scale(c), role }
    }
}

/// Associative unital algebra with basis `e_0..e_{n-1}` and
/// `e_i e_j = sum_k c_ijk e_k`.
#[derive(Clone, Debug)]
pub struct Algebra<F> {
    field: FieldSpec,
    names: Vec<String>,
    /// Products of basis elements, indexed by `i * dim + j`.
    table: Vec<SparseVec<F>>,
    unit: Vec<F>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.names == other.names
            && self.unit == other.unit
            && self.table == other.table
    }
}

/// Attach an untagged constant to `spec`.
pub(crate) fn tag<F: Field>(spec: &FieldSpec, c: F) -> F {
    F::from_int(spec, 0) + c
}

impl<F: Field> Algebra<F> {
    /// Build and validate an algebra from `(i, j, k, c)` triples (repeated
    /// triples add up).
    pub fn new(
        field: FieldSpec,
        names: Vec<String>,
        structure: impl IntoIterator<Item = (usize, usize, usize, F)>,
        unit: Vec<F>,
    ) -> Result<Self, AlgebraError> {
        let alg = Algebra::new_unchecked(field, names, structure, unit)?;
        alg.validate()?;
        Ok(alg)
    }

    fn new_unchecked(
        field: FieldSpec,
        names: Vec<String>,
        structure: impl IntoIterator<Item = (usize, usize, usize, F)>,
        unit: Vec<F>,
    ) -> Result<Self, AlgebraError> {
        if !F::supports(&field) {
            return Err(FieldError::Unsupported(field).into());
        }
        field.validate()?;
        let n = names.len();
        if n == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        if unit.len() != n {
            return Err(AlgebraError::Length { got: unit.len(), dim: n });
        }
        let check = |c: &F| -> Result<(), AlgebraError> {
            match c.field_of() {
                Some(spec) if spec != field => Err(AlgebraError::ForeignScalar(c.to_string(), field.clone())),
                _ => Ok(()),
            }
        };
        let mut dense: Vec<Vec<F>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in structure {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            check(&c)?;
            let slot = &mut dense[i * n + j];
            if slot.is_empty() {
                *slot = vec![F::zero(); n];
            }
            slot[k] = slot[k].add_ref(&c);
        }
        let table = dense
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, tag(&field, c)))
                    .collect()
            })
            .collect();
        for c in &unit {
            check(c)?;
        }
        let unit = unit.into_iter().map(|c| tag(&field, c)).collect();
        Ok(Algebra { field, names, table, unit })
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let u = self.unit();
        for i in 0..n {
            let e = Element::basis(n, i);
            if self.mul(&u, &e) != e || self.mul(&e, &u) != e {
                return Err(AlgebraError::UnitLaw(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_vec(i, j);
                for k in 0..n {
                    let left = self.mul(&ij, &Element::basis(n, k));
                    let jk = self.product_vec(j, k);
                    let right = self.mul(&Element::basis(n, i), &jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    /// Field constant `n`.
    pub fn scalar(&self, n: i64) -> F {
        F::from_int(&self.field, n)
    }

    /// Attach a possibly untagged scalar to this algebra's field.
    pub fn tag(&self, c: F) -> F {
        tag(&self.field, c)
    }

    pub fn unit(&self) -> Element<F> {
        Element::new(self.unit.clone())
    }

    pub fn zero(&self) -> Element<F> {
        Element::new(vec![self.scalar(0); self.dim()])
    }

    pub fn basis(&self, i: usize) -> Element<F> {
        let mut e = self.zero();
        e.coeffs[i] = self.scalar(1);
        e
    }

    /// `c · 1`.
    pub fn from_scalar(&self, c: &F) -> Element<F> {
        self.unit().scale(c)
    }

    /// Element from integer coefficients.
    pub fn element_from_ints(&self, coeffs: &[i64]) -> Element<F> {
        assert_eq!(coeffs.len(), self.dim());
        Element::new(coeffs.iter().map(|&c| self.scalar(c)).collect())
    }

    /// Sparse product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i * self.dim() + j]
    }

    fn product_vec(&self, i: usize, j: usize) -> Element<F> {
        let mut e = self.zero();
        for (k, c) in self.basis_product(i, j) {
            e.coeffs[*k] = c.clone();
        }
        e
    }

    /// Structure constants as `(i, j, k, c)` triples, sorted.
    pub fn structure(&self) -> Vec<(usize, usize, usize, F)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let n = self.dim();
        let mut out = self.zero();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.mul_ref(bj);
                for (k, c) in &self.table[i * n + j] {
                    out.coeffs[*k].add_mul_assign(&ab, c);
                }
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn product(&self, factors: &[&Element<F>]) -> Element<F> {
        factors.iter().fold(self.unit(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, a: &Element<F>, e: usize) -> Element<F> {
        (0..e).fold(self.unit(), |acc, _| self.mul(&acc, a))
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        &self.mul(a, b) - &self.mul(b, a)
    }

    /// Matrix of `b ↦ a·b`.
    pub fn left_mult_matrix(&self, a: &Element<F>) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.mul(a, &self.basis(j)).coeffs).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Matrix of `b ↦ b·a`.
    pub fn right_mult_matrix(&self, a: &Element<F>) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.mul(&self.basis(j), a).coeffs).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn inverse_of(&self, a: &Element<F>) -> Option<Element<F>> {
        let x = self.left_mult_matrix(a).solve(&self.unit).ok()??;
        let x = Element::new(x);
        if self.mul(&x, a) == self.unit() {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_unit(&self, a: &Element<F>) -> bool {
        self.left_mult_matrix(a).rank() == self.dim()
    }

    pub fn is_central(&self, z: &Element<F>) -> bool {
        (0..self.dim()).all(|i| self.commutator(z, &self.basis(i)).is_zero())
    }

    /// Basis of `Z(A)`: kernel of `z ↦ (z e_i − e_i z)_i`.
    pub fn center_basis(&self) -> Vec<Element<F>> {
        let n = self.dim();
        let columns: Vec<Vec<F>> = (0..n)
            .map(|k| {
                let ek = self.basis(k);
                (0..n).flat_map(|i| self.commutator(&ek, &self.basis(i)).coeffs).collect()
            })
            .collect();
        Matrix::from_columns(n * n, &columns).kernel_basis().into_iter().map(Element::new).collect()
    }

    /// Canonical (reduced echelon) basis of `span{ b·τ(a) − a·b }`, with
    /// `τ` the identity when `twist` is `None`. This is `[A, A]`, or
    /// `[A_τ, A]` for the bimodule whose right action is twisted by `τ`.
    pub fn commutator_subspace(&self, twist: Option<&LinearMap<F>>) -> Result<Vec<Element<F>>, AlgebraError> {
        let n = self.dim();
        if let Some(t) = twist {
            self.check_square(t.matrix())?;
            if let Some(v) = self.endomorphism_violation(t.matrix()) {
                return Err(AlgebraError::NotEndomorphism(v));
            }
        }
        let mut rows = Vec::new();
        for a in 0..n {
            let ea = self.basis(a);
            let ta = match twist {
                Some(t) => t.apply(&ea),
                None => ea.clone(),
            };
            for b in 0..n {
                let eb = self.basis(b);
                rows.push((&self.mul(&eb, &ta) - &self.mul(&ea, &eb)).coeffs);
            }
        }
        Ok(row_space_basis(&rows))
    }

    pub(crate) fn check_square(&self, m: &Matrix<F>) -> Result<(), AlgebraError> {
        let n = self.dim();
        if m.rows() != n || m.cols() != n {
            return Err(AlgebraError::Invalid(format!(
                "expected a {n}x{n} matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    /// First failure of multiplicativity, or `None` for an endomorphism.
    pub fn endomorphism_violation(&self, m: &Matrix<F>) -> Option<MapViolation> {
        let n = self.dim();
        if m.mul_vec(&self.unit) != self.unit {
            return Some(MapViolation::Unit);
        }
        let images: Vec<Element<F>> = (0..n).map(|j| Element::new(m.column(j))).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = Element::new(m.mul_vec(self.product_vec(i, j).coeffs()));
                if lhs != self.mul(&images[i], &images[j]) {
                    return Some(MapViolation::Pair(i, j));
                }
            }
        }
        None
    }

    pub fn is_endomorphism(&self, m: &Matrix<F>) -> bool {
        m.rows() == self.dim() && m.cols() == self.dim() && self.endomorphism_violation(m).is_none()
    }

    /// First failure of the Leibniz rule, or `None` for a derivation.
    pub fn derivation_violation(&self, m: &Matrix<F>) -> Option<MapViolation> {
        let n = self.dim();
        let images: Vec<Element<F>> = (0..n).map(|j| Element::new(m.column(j))).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = Element::new(m.mul_vec(self.product_vec(i, j).coeffs()));
                let rhs = &self.mul(&images[i], &self.basis(j)) + &self.mul(&self.basis(i), &images[j]);
                if lhs != rhs {
                    return Some(MapViolation::Pair(i, j));
                }
            }
        }
        None
    }

    pub fn is_derivation(&self, m: &Matrix<F>) -> bool {
        m.rows() == self.dim() && m.cols() == self.dim() && self.derivation_violation(m).is_none()
    }

    /// Inner derivation `a ↦ xa − ax`.
    pub fn ad(&self, x: &Element<F>) -> LinearMap<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.commutator(x, &self.basis(j)).coeffs).collect();
        LinearMap::trusted(Matrix::from_columns(n, &cols), Role::Derivation)
    }

    /// Inner automorphism `a ↦ s a s⁻¹`.
    pub fn inner_automorphism(&self, s: &Element<F>) -> Result<LinearMap<F>, AlgebraError> {
        let inv = self.inverse_of(s).ok_or(AlgebraError::NotAUnit)?;
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.product(&[s, &self.basis(j), &inv]).coeffs).collect();
        Ok(LinearMap::trusted(Matrix::from_columns(n, &cols), Role::Endomorphism))
    }

    /// Left multiplication by a central element as a linear map.
    pub fn mult_map(&self, z: &Element<F>) -> LinearMap<F> {
        LinearMap::general(self.left_mult_matrix(z))
    }

    /// Basis of `Der(A)` as matrices, from the linear Leibniz conditions.
    pub fn derivation_basis(&self) -> Vec<LinearMap<F>> {
        let n = self.dim();
        let var = |r: usize, s: usize| r * n + s;
        let mut e = Echelon::new(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut rows: Vec<Vec<F>> = vec![vec![F::zero(); n * n]; n];
                // D(e_i e_j)
                for (l, c) in self.basis_product(i, j) {
                    for (k, row) in rows.iter_mut().enumerate() {
                        row[var(k, *l)] = row[var(k, *l)].add_ref(c);
                    }
                }
                // − D(e_i) e_j − e_i D(e_j)
                for m in 0..n {
                    for (k, c) in self.basis_product(m, j) {
                        let slot = &mut rows[*k][var(m, i)];
                        *slot = slot.sub_ref(c);
                    }
                    for (k, c) in self.basis_product(i, m) {
                        let slot = &mut rows[*k][var(m, j)];
                        *slot = slot.sub_ref(c);
                    }
                }
                for row in rows {
                    e.insert(crate::sparse::sparse_from_dense(&row));
                }
            }
        }
        e.kernel()
            .into_iter()
            .map(|v| {
                let dense = crate::sparse::dense_from_sparse(&v, n * n);
                let m = Matrix::from_fn(n, n, |r, s| self.tag(dense[var(r, s)].clone()));
                LinearMap::trusted(m, Role::Derivation)
            })
            .collect()
    }

    /// `A × B` with block-diagonal structure constants.
    pub fn direct_product(&self, other: &Algebra<F>) -> Result<Algebra<F>, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field.clone(), other.field.clone()));
        }
        let n1 = self.dim();
        let names = self
            .names
            .iter()
            .map(|s| format!("({s},0)"))
            .chain(other.names.iter().map(|s| format!("(0,{s})")))
            .collect();
        let structure = self
            .structure()
            .into_iter()
            .chain(other.structure().into_iter().map(|(i, j, k, c)| (i + n1, j + n1, k + n1, c)));
        let unit = self.unit.iter().chain(&other.unit).cloned().collect();
        Algebra::new(self.field.clone(), names, structure, unit)
    }

    /// Validate the length and attach the coefficients to this field.
    pub fn element(&self, coeffs: Vec<F>) -> Result<Element<F>, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::Length { got: coeffs.len(), dim: self.dim() });
        }
        Ok(Element::new(coeffs.into_iter().map(|c| self.tag(c)).collect()))
    }

    /// Render an element using basis names, e.g. `1 + 2*x - 1/3*xy`.
    pub fn format_element(&self, a: &Element<F>) -> String {
        let mut terms = Vec::new();
        for (c, name) in a.coeffs.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            terms.push(if *c == F::one() {
                name.clone()
            } else {
                format!("{cs}*{name}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Nonzero rows of the reduced echelon form of `rows` (each of length `len`).
pub(crate) fn row_space_basis<F: Field>(rows: &[Vec<F>]) -> Vec<Element<F>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(rows.to_vec()).expect("uniform rows");
    let r = m.rref();
    (0..r.rank).map(|i| Element::new(r.matrix.row(i).to_vec())).collect()
}

/// Dimension of `span(vectors)`.
pub fn span_dim<F: Field>(vectors: &[Element<F>], dim: usize) -> usize {
    let v: Vec<Vec<F>> = vectors.iter().map(|e| e.coeffs().to_vec()).collect();
    crate::linalg::span_rank(&v, dim)
}

/// Whether two lists span the same subspace.
pub fn same_span<F: Field>(a: &[Element<F>], b: &[Element<F>], dim: usize) -> bool {
    let ra = span_dim(a, dim);
    let rb = span_dim(b, dim);
    let both: Vec<Element<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_dim(&both, dim) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn split(n: usize) -> Algebra<Q> {
        // k^n with orthogonal idempotents
        let spec = FieldSpec::Rationals;
        let one = Q::from_int(&spec, 1);
        Algebra::new(
            spec,
            (0..n).map(|i| format!("e{i}")).collect(),
            (0..n).map(|i| (i, i, i, one.clone())),
            vec![one.clone(); n],
        )
        .unwrap()
    }

    #[test]
    fn split_algebra_basics() {
        let a = split(2);
        assert_eq!(a.center_basis().len(), 2);
        assert!(a.commutator_subspace(None).unwrap().is_empty());
        let e0 = a.basis(0);
        assert_eq!(a.mul(&e0, &e0), e0);
        assert_eq!(a.inverse_of(&e0), None);
        assert_eq!(a.inverse_of(&a.unit()), Some(a.unit()));
    }

    #[test]
    fn rejects_non_associative_and_bad_unit() {
        let spec = FieldSpec::Rationals;
        let one = Q::from_int(&spec, 1);
        // e0 declared unit but e0*e1 = 0
        let bad_unit = Algebra::new(
            spec.clone(),
            vec!["e0".into(), "e1".into()],
            vec![(0, 0, 0, one.clone()), (1, 1, 1, one.clone())],
            vec![one.clone(), Q::from_int(&spec, 0)],
        );
        assert_eq!(bad_unit.unwrap_err(), AlgebraError::UnitLaw(1));
        let oob = Algebra::new(spec, vec!["e0".into()], vec![(0, 0, 3, one.clone())], vec![one]);
        assert!(matches!(oob, Err(AlgebraError::IndexOutOfRange { .. })));
    }

    #[test]
    fn product_center_dims_add() {
        let p = split(2).direct_product(&split(1)).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.center_basis().len(), 3);
    }
}

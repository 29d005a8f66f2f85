//! Hochschild cochains and chains on the (unnormalized) bar complex,
//! (co)homology with representatives, the action of automorphisms,
//! triviality certificates, twisted homology and the Connes boundary test.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinearMap};
use crate::field::Field;
use crate::frobenius::{Frobenius, FrobeniusError};
use crate::gallery::{GalleryError, TrivialExtension};
use crate::linalg::{LinalgError, Matrix};
use crate::sparse::{dense_from_sparse, solve_sparse, sparse_from_dense, Echelon, SparseMatrix, SparseVec};

/// Default cap on `rows · cols` of any assembled (co)boundary matrix.
pub const DEFAULT_BUDGET: u128 = 1 << 21;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HochschildError {
    #[error("matrix of {needed} entries exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error("cochain of degree {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("cochain has degree {got}, expected {expected}")]
    Degree { got: usize, expected: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn power(n: usize, p: usize) -> usize {
    n.pow(p as u32)
}

fn check_budget(rows: usize, cols: usize, budget: u128) -> Result<(), HochschildError> {
    let needed = rows as u128 * cols as u128;
    if needed > budget {
        return Err(HochschildError::Budget { needed, budget });
    }
    Ok(())
}

/// Digits of a tensor index, most significant first.
pub fn tensor_digits(mut idx: usize, p: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

pub fn tensor_index(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

fn merge_entries<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.add_ref(&x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// A degree-`p` cochain `A^{⊗p} → A`; coordinate `k·n^p + idx(I)` is the
/// `e_k` coefficient of `f(e_I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<F> {
    degree: usize,
    dim: usize,
    values: Vec<F>,
}

impl<F: Field> Cochain<F> {
    pub fn new(dim: usize, degree: usize, values: Vec<F>) -> Result<Self, HochschildError> {
        if values.len() != dim * power(dim, degree) {
            return Err(HochschildError::Precondition(format!(
                "degree-{degree} cochain on a {dim}-dimensional algebra needs {} values",
                dim * power(dim, degree)
            )));
        }
        Ok(Cochain { degree, dim, values })
    }

    pub fn zero(alg: &Algebra<F>, degree: usize) -> Self {
        let n = alg.dim();
        Cochain { degree, dim: n, values: vec![alg.scalar(0); n * power(n, degree)] }
    }

    /// `n × n^p` matrix with column `idx(I)` holding `f(e_I)`.
    pub fn from_matrix(m: &Matrix<F>, degree: usize) -> Result<Self, HochschildError> {
        let n = m.rows();
        if m.cols() != power(n, degree) {
            return Err(HochschildError::Degree { got: degree, expected: degree });
        }
        Ok(Cochain { degree, dim: n, values: m.entries().to_vec() })
    }

    pub fn from_element(a: &Element<F>) -> Self {
        Cochain { degree: 0, dim: a.dim(), values: a.coeffs().to_vec() }
    }

    pub fn from_map(u: &LinearMap<F>) -> Self {
        Cochain { degree: 1, dim: u.dim(), values: u.matrix().entries().to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn as_matrix(&self) -> Matrix<F> {
        let cols = power(self.dim, self.degree);
        Matrix::from_fn(self.dim, cols, |k, c| self.values[k * cols + c].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    pub fn sub(&self, other: &Cochain<F>) -> Cochain<F> {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.sub_ref(b)).collect();
        Cochain { degree: self.degree, dim: self.dim, values }
    }
}

/// Matrix of `d: C^p → C^{p+1}`,
/// `df = a₁f(…) + Σ_j (−1)^j f(…, a_j a_{j+1}, …) + (−1)^{p+1} f(…)a_{p+1}`.
pub fn coboundary_matrix<F: Field>(alg: &Algebra<F>, p: usize, budget: u128) -> Result<SparseMatrix<F>, HochschildError> {
    let n = alg.dim();
    let in_args = power(n, p);
    let out_args = power(n, p + 1);
    let cols = n * in_args;
    let rows = n * out_args;
    check_budget(rows, cols, budget)?;
    let field = alg.field().clone();
    let sign = |k: usize| crate::field::sign::<F>(&field, k);
    let mut data: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
    for idx in 0..out_args {
        let args = tensor_digits(idx, p + 1, n);
        let row = |k: usize| k * out_args + idx;
        // a₁ f(a₂, …)
        let tail = tensor_index(&args[1..], n);
        for m in 0..n {
            for (k, c) in alg.basis_product(args[0], m) {
                data[row(*k)].push((m * in_args + tail, c.clone()));
            }
        }
        // (−1)^j f(…, a_j a_{j+1}, …)
        for j in 1..=p {
            let s = sign(j);
            for (l, c) in alg.basis_product(args[j - 1], args[j]) {
                let mut merged = Vec::with_capacity(p);
                merged.extend_from_slice(&args[..j - 1]);
                merged.push(*l);
                merged.extend_from_slice(&args[j + 1..]);
                let col = tensor_index(&merged, n);
                let coeff = s.mul_ref(c);
                for k in 0..n {
                    data[row(k)].push((k * in_args + col, coeff.clone()));
                }
            }
        }
        // (−1)^{p+1} f(a₁, …, a_p) a_{p+1}
        let head = tensor_index(&args[..p], n);
        let s = sign(p + 1);
        for m in 0..n {
            for (k, c) in alg.basis_product(m, args[p]) {
                data[row(*k)].push((m * in_args + head, s.mul_ref(c)));
            }
        }
    }
    Ok(SparseMatrix::from_rows(cols, data.into_iter().map(merge_entries).collect()))
}

/// Coefficient bimodule for chains: `A` itself or `A_σ`, whose right
/// action is `m·a = m σ(a)`.
#[derive(Debug)]
pub enum Coefficients<'a, F> {
    Untwisted,
    Twisted(&'a LinearMap<F>),
}

impl<F> Clone for Coefficients<'_, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<F> Copy for Coefficients<'_, F> {}

/// Matrix of `b: M ⊗ A^{⊗p} → M ⊗ A^{⊗(p−1)}` (chain coordinate
/// `idx(m, a₁, …, a_p)`, `m` most significant).
pub fn boundary_matrix<F: Field>(
    alg: &Algebra<F>,
    p: usize,
    coeffs: Coefficients<'_, F>,
    budget: u128,
) -> Result<SparseMatrix<F>, HochschildError> {
    let n = alg.dim();
    let cols = power(n, p + 1);
    if p == 0 {
        return Ok(SparseMatrix::from_rows(cols, Vec::new()));
    }
    let rows = power(n, p);
    check_budget(rows, cols, budget)?;
    let field = alg.field().clone();
    let sign = |k: usize| crate::field::sign::<F>(&field, k);
    let twisted: Vec<Element<F>> = (0..n)
        .map(|a| match coeffs {
            Coefficients::Untwisted => alg.basis(a),
            Coefficients::Twisted(s) => s.apply(&alg.basis(a)),
        })
        .collect();
    let mut columns: Vec<SparseVec<F>> = Vec::with_capacity(cols);
    for idx in 0..cols {
        let t = tensor_digits(idx, p + 1, n);
        let mut entries: Vec<(usize, F)> = Vec::new();
        // (m·a₁) ⊗ a₂ ⊗ … ⊗ a_p
        let prod = alg.mul(&alg.basis(t[0]), &twisted[t[1]]);
        let rest = tensor_index(&t[2..], n);
        let stride = power(n, p - 1);
        for (k, c) in prod.coeffs().iter().enumerate() {
            if !c.is_zero() {
                entries.push((k * stride + rest, c.clone()));
            }
        }
        // (−1)^i m ⊗ … ⊗ a_i a_{i+1} ⊗ …
        for i in 1..p {
            let s = sign(i);
            for (l, c) in alg.basis_product(t[i], t[i + 1]) {
                let mut merged = Vec::with_capacity(p);
                merged.extend_from_slice(&t[..i]);
                merged.push(*l);
                merged.extend_from_slice(&t[i + 2..]);
                entries.push((tensor_index(&merged, n), s.mul_ref(c)));
            }
        }
        // (−1)^p (a_p·m) ⊗ a₁ ⊗ … ⊗ a_{p−1}
        let s = sign(p);
        let mid = tensor_index(&t[1..p], n);
        for (k, c) in alg.basis_product(t[p], t[0]) {
            entries.push((k * stride + mid, s.mul_ref(c)));
        }
        columns.push(merge_entries(entries));
    }
    Ok(SparseMatrix::from_columns(rows, &columns))
}

/// Dimensions and representatives of one (co)homology group.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyReport<F> {
    pub degree: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub dim: usize,
    /// Cycles whose classes form a basis, in the (co)chain coordinates.
    pub representatives: Vec<Vec<F>>,
    /// Reduced echelon basis of the boundaries.
    boundary_basis: Vec<SparseVec<F>>,
    space_dim: usize,
}

impl<F: Field> HomologyReport<F> {
    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    /// Coordinates of the class of the cycle `v` in the representative basis.
    pub fn classify(&self, v: &[F]) -> Option<Vec<F>> {
        let mut columns: Vec<SparseVec<F>> = self.representatives.iter().map(|r| sparse_from_dense(r)).collect();
        columns.extend(self.boundary_basis.iter().cloned());
        let m = SparseMatrix::from_columns(self.space_dim, &columns);
        let sol = solve_sparse(m.row_data(), columns.len(), v)?;
        Some(sol[..self.representatives.len()].to_vec())
    }
}

/// `ker(outgoing) / im(incoming)` on a space of dimension `dim`.
fn homology_between<F: Field>(
    degree: usize,
    dim: usize,
    incoming: Option<&SparseMatrix<F>>,
    outgoing: Option<&SparseMatrix<F>>,
) -> Result<HomologyReport<F>, HochschildError> {
    let mut image = Echelon::new(dim);
    if let Some(m) = incoming {
        for c in m.columns() {
            image.insert(c);
        }
    }
    image.make_reduced();
    let kernel: Vec<SparseVec<F>> = match outgoing {
        Some(m) if m.rows() > 0 => m.kernel(),
        _ => (0..dim).map(|i| vec![(i, F::one())]).collect(),
    };
    let boundaries = image.rank();
    let mut quotient = image.clone();
    let mut representatives = Vec::new();
    for v in &kernel {
        if quotient.insert(v.clone()).is_some() {
            representatives.push(dense_from_sparse(v, dim));
        }
    }
    if representatives.len() + boundaries != kernel.len() {
        return Err(HochschildError::Internal("boundaries are not contained in the cycles".into()));
    }
    let boundary_basis = echelon_rows(&image);
    Ok(HomologyReport {
        degree,
        cycles: kernel.len(),
        boundaries,
        dim: representatives.len(),
        representatives,
        boundary_basis,
        space_dim: dim,
    })
}

fn echelon_rows<F: Field>(e: &Echelon<F>) -> Vec<SparseVec<F>> {
    let dim = e.ncols();
    let mut basis = Vec::new();
    let mut probe = Echelon::new(dim);
    for c in e.pivots() {
        // pivot rows are recovered by reducing unit vectors
        let unit: SparseVec<F> = vec![(c, F::one())];
        let reduced = e.reduce(&unit);
        let row: Vec<(usize, F)> = {
            let mut v = dense_from_sparse(&unit, dim);
            for (j, x) in reduced {
                v[j] = v[j].sub_ref(&x);
            }
            sparse_from_dense(&v)
        };
        if probe.insert(row.clone()).is_some() {
            basis.push(row);
        }
    }
    basis
}

/// `HH^p(A)` from the bar complex.
pub fn hh_dimension<F: Field>(alg: &Algebra<F>, p: usize, budget: u128) -> Result<HomologyReport<F>, HochschildError> {
    let n = alg.dim();
    let outgoing = coboundary_matrix(alg, p, budget)?;
    let incoming = if p == 0 { None } else { Some(coboundary_matrix(alg, p - 1, budget)?) };
    homology_between(p, n * power(n, p), incoming.as_ref(), Some(&outgoing))
}

/// `H_p(A, M)` from the bar complex.
pub fn hochschild_homology<F: Field>(
    alg: &Algebra<F>,
    p: usize,
    coeffs: Coefficients<'_, F>,
    budget: u128,
) -> Result<HomologyReport<F>, HochschildError> {
    let n = alg.dim();
    let outgoing = if p == 0 { None } else { Some(boundary_matrix(alg, p, coeffs, budget)?) };
    let incoming = boundary_matrix(alg, p + 1, coeffs, budget)?;
    homology_between(p, power(n, p + 1), Some(&incoming), outgoing.as_ref())
}

/// Replace tensor factor `pos` (of `factors`, each of dimension `n`) of a
/// coordinate vector by its image under `m` (`new_j = Σ_i m[j][i] old_i`).
fn act_on_factor<F: Field>(v: &[F], factors: usize, n: usize, pos: usize, m: &Matrix<F>) -> Vec<F> {
    let stride = power(n, factors - 1 - pos);
    let mut out = vec![F::zero(); v.len()];
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let digit = (idx / stride) % n;
        let base = idx - digit * stride;
        for j in 0..n {
            let c = m.get(j, digit);
            if !c.is_zero() {
                out[base + j * stride].add_mul_assign(c, x);
            }
        }
    }
    out
}

/// `f^u = u ∘ f ∘ (u⁻¹)^{⊗p}`.
pub fn cochain_action<F: Field>(u: &LinearMap<F>, f: &Cochain<F>) -> Result<Cochain<F>, HochschildError> {
    let inv = u.inverse().ok_or(AlgebraError::NotInvertible)?;
    let n = f.dim;
    let p = f.degree;
    // input factors take the transpose action: F·V^{⊗p}
    let vt = inv.matrix().transpose();
    let mut values = f.values.clone();
    for pos in 1..=p {
        values = act_on_factor(&values, p + 1, n, pos, &vt);
    }
    values = act_on_factor(&values, p + 1, n, 0, u.matrix());
    Ok(Cochain { degree: p, dim: n, values })
}

/// Chain-level `α ⊗ α^{⊗p}`.
pub fn chain_action<F: Field>(u: &LinearMap<F>, chain: &[F], p: usize) -> Vec<F> {
    let n = u.dim();
    let mut v = chain.to_vec();
    for pos in 0..=p {
        v = act_on_factor(&v, p + 1, n, pos, u.matrix());
    }
    v
}

/// A `(p−1)`-cochain `g` with `f^σ − f = dg`, or `None` when the solver
/// finds no such `g` (a refutation).
pub fn triviality_certificate<F: Field>(
    fr: &Frobenius<F>,
    f: &Cochain<F>,
    budget: u128,
) -> Result<Option<Cochain<F>>, HochschildError> {
    let alg = fr.algebra();
    let p = f.degree;
    if p == 0 {
        return Err(HochschildError::Degree { got: 0, expected: 1 });
    }
    let d = coboundary_matrix(alg, p, budget)?;
    if d.mul_vec(&f.values).iter().any(|x| !x.is_zero()) {
        return Err(HochschildError::NotCocycle(p));
    }
    let target = cochain_action(fr.sigma(), f)?.sub(f);
    let n = alg.dim();
    if target.is_zero() {
        return Ok(Some(Cochain::zero(alg, p - 1)));
    }
    let prev = coboundary_matrix(alg, p - 1, budget)?;
    let Some(g) = solve_sparse(prev.row_data(), prev.cols(), &target.values) else {
        return Ok(None);
    };
    let g: Vec<F> = g.into_iter().map(|x| alg.tag(x)).collect();
    if prev.mul_vec(&g) != target.values {
        return Err(HochschildError::Internal("certificate does not reproduce f^σ − f".into()));
    }
    Ok(Some(Cochain { degree: p - 1, dim: n, values: g }))
}

/// Matrix of `σ_♯` on `H_p(A, M)` in the representative basis of the
/// returned report.
pub fn sigma_action_on_homology<F: Field>(
    fr: &Frobenius<F>,
    p: usize,
    coeffs: Coefficients<'_, F>,
    budget: u128,
) -> Result<(HomologyReport<F>, Matrix<F>), HochschildError> {
    let alg = fr.algebra();
    let report = hochschild_homology(alg, p, coeffs, budget)?;
    let h = report.dim;
    let mut cols = Vec::with_capacity(h);
    for r in &report.representatives {
        let image = chain_action(fr.sigma(), r, p);
        let c = report
            .classify(&image)
            .ok_or_else(|| HochschildError::Internal("σ-image of a cycle is not a cycle".into()))?;
        cols.push(c.into_iter().map(|x| alg.tag(x)).collect());
    }
    Ok((report, Matrix::from_columns(h, &cols)))
}

/// `(p, dim HH^p(A), dim H_p(A, A_σ))` for `p ≤ pmax`.
pub fn duality_dims<F: Field>(
    fr: &Frobenius<F>,
    pmax: usize,
    budget: u128,
) -> Result<Vec<(usize, usize, usize)>, HochschildError> {
    let alg = fr.algebra();
    (0..=pmax)
        .map(|p| {
            let coh = hh_dimension(alg, p, budget)?.dim;
            let hom = hochschild_homology(alg, p, Coefficients::Twisted(fr.sigma()), budget)?.dim;
            Ok((p, coh, hom))
        })
        .collect()
}

/// Outcome of [`connes_image_test`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConnesVerdict<F> {
    pub in_image: bool,
    /// Basis of `{x : 1⊗x + x⊗1 is a boundary}`.
    pub kernel: Vec<Element<F>>,
    /// A kernel element with `τ(x) ≠ 0` when not in the image.
    pub witness: Option<Element<F>>,
}

/// Decide whether `τ` (vanishing on `[B, B]`) lies in the image of the
/// transposed Connes boundary `HH₁(B)* → HH₀(B)*`, i.e. whether it kills
/// every `x` with `1⊗x + x⊗1 ∈ im b₂`.
pub fn connes_image_test<F: Field>(b: &Algebra<F>, tau: &[F], budget: u128) -> Result<ConnesVerdict<F>, HochschildError> {
    let m = b.dim();
    if tau.len() != m {
        return Err(HochschildError::Precondition("functional has the wrong length".into()));
    }
    let eval = |x: &Element<F>| {
        x.coeffs().iter().zip(tau).fold(b.scalar(0), |mut acc, (c, t)| {
            acc.add_mul_assign(c, t);
            acc
        })
    };
    for c in b.commutator_subspace(None)? {
        if !eval(&c).is_zero() {
            return Err(HochschildError::Precondition("functional does not vanish on commutators".into()));
        }
    }
    let b2 = boundary_matrix(b, 2, Coefficients::Untwisted, budget)?;
    // unknowns: x (m coordinates) then w ∈ B^{⊗3}
    let unit = b.unit();
    let mut rows: Vec<Vec<(usize, F)>> = b2
        .row_data()
        .iter()
        .map(|r| r.iter().map(|(j, c)| (m + j, c.clone())).collect())
        .collect();
    for (s, us) in unit.coeffs().iter().enumerate() {
        if us.is_zero() {
            continue;
        }
        for j in 0..m {
            rows[s * m + j].push((j, -us.clone()));
            rows[j * m + s].push((j, -us.clone()));
        }
    }
    let rows: Vec<SparseVec<F>> = rows.into_iter().map(merge_entries).collect();
    let kernel = SparseMatrix::from_rows(m + b2.cols(), rows).kernel();
    let projected: Vec<Vec<F>> = kernel
        .iter()
        .map(|v| dense_from_sparse(v, m + b2.cols())[..m].to_vec())
        .filter(|x| x.iter().any(|c| !c.is_zero()))
        .collect();
    let mut ech = Echelon::new(m);
    let mut basis = Vec::new();
    for x in projected {
        if ech.insert(sparse_from_dense(&x)).is_some() {
            basis.push(Element::new(x.into_iter().map(|c| b.tag(c)).collect()));
        }
    }
    let witness = basis.iter().find(|x| !eval(x).is_zero()).cloned();
    Ok(ConnesVerdict { in_image: witness.is_none(), kernel: basis, witness })
}

/// The automorphism `[[id, 0], [δ, m_tᵀ]]` of the trivial extension with
/// `δ(x)(1) = τ(x)`, or `None` when no derivation `B → DB` has that trace.
pub fn connes_realization<F: Field>(
    te: &TrivialExtension<F>,
    tau: &[F],
    t: &Element<F>,
) -> Result<Option<LinearMap<F>>, HochschildError> {
    let b = te.base();
    let m = b.dim();
    let ders = te.dual_derivations();
    let one = b.unit();
    // column s: the values δ_s(b_i)(1)
    let columns: Vec<Vec<F>> = ders
        .iter()
        .map(|d| {
            (0..m)
                .map(|i| (0..m).fold(b.scalar(0), |acc, k| acc.add_ref(&d.get(k, i).mul_ref(&one[k]))))
                .collect()
        })
        .collect();
    if columns.is_empty() {
        return Ok(if tau.iter().all(|x| x.is_zero()) {
            Some(te.from_dual_derivation(&Matrix::zeros(m, m), t)?)
        } else {
            None
        });
    }
    let sys = Matrix::from_columns(m, &columns);
    let Some(c) = sys.solve(tau)? else {
        return Ok(None);
    };
    let delta = ders.iter().zip(&c).fold(Matrix::zeros(m, m), |acc, (d, x)| acc.add(&d.scale(x)));
    let delta = Matrix::from_fn(m, m, |i, j| b.tag(delta.get(i, j).clone()));
    Ok(Some(te.from_dual_derivation(&delta, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Q};
    use crate::frobenius::make_frobenius;
    use crate::gallery::{exterior, matrix_algebra, qci, trivial_extension, truncated_polynomial};

    fn q(n: i64) -> Q {
        Q::from_int(&FieldSpec::Rationals, n)
    }

    #[test]
    fn digits_round_trip() {
        for idx in 0..27 {
            assert_eq!(tensor_index(&tensor_digits(idx, 3, 3), 3), idx);
        }
        assert_eq!(tensor_digits(5, 2, 4), vec![1, 1]);
    }

    #[test]
    fn complexes_square_to_zero() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        for p in 0..2 {
            let d0 = coboundary_matrix(&s.algebra, p, DEFAULT_BUDGET).unwrap();
            let d1 = coboundary_matrix(&s.algebra, p + 1, DEFAULT_BUDGET).unwrap();
            assert!(d1.composes_to_zero(&d0));
        }
        for coeffs in [Coefficients::Untwisted, Coefficients::Twisted(f.sigma())] {
            for p in 1..3 {
                let b0 = boundary_matrix(&s.algebra, p, coeffs, DEFAULT_BUDGET).unwrap();
                let b1 = boundary_matrix(&s.algebra, p + 1, coeffs, DEFAULT_BUDGET).unwrap();
                assert!(b0.composes_to_zero(&b1));
            }
        }
    }

    #[test]
    fn qci_cohomology_dimensions() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let h0 = hh_dimension(&s.algebra, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(h0.dim, 2);
        let h1 = hh_dimension(&s.algebra, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(h1.cycles, 4);
        assert_eq!(h1.dim, 2);
        let m2 = matrix_algebra::<Q>(&FieldSpec::Rationals, 2).unwrap();
        assert_eq!(hh_dimension(&m2, 0, DEFAULT_BUDGET).unwrap().dim, 1);
    }

    #[test]
    fn budget_is_enforced() {
        let e = exterior::<Q>(&FieldSpec::Rationals, 3).unwrap();
        assert!(matches!(coboundary_matrix(&e.algebra, 3, DEFAULT_BUDGET), Err(HochschildError::Budget { .. })));
    }

    #[test]
    fn qci_degree_zero_homology_and_action() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let (plain, act) = sigma_action_on_homology(&f, 0, Coefficients::Untwisted, DEFAULT_BUDGET).unwrap();
        assert_eq!(plain.dim, 3);
        assert!(!act.is_identity());
        let (tw, act) = sigma_action_on_homology(&f, 0, Coefficients::Twisted(f.sigma()), DEFAULT_BUDGET).unwrap();
        assert_eq!(tw.dim, 2);
        assert!(act.is_identity());
    }

    #[test]
    fn dual_numbers_hh1() {
        let b = truncated_polynomial::<Q>(&FieldSpec::Rationals, 2).unwrap();
        assert_eq!(hochschild_homology(&b, 1, Coefficients::Untwisted, DEFAULT_BUDGET).unwrap().dim, 1);
    }

    #[test]
    fn cochain_action_on_derivation() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let d = s.delta(&q(0), &q(0), &q(1), &q(0)).unwrap();
        let c = Cochain::from_map(&d);
        assert_eq!(cochain_action(&LinearMap::identity(4), &c).unwrap(), c);
        let twisted = cochain_action(f.sigma(), &c).unwrap().as_matrix();
        let image_of_x = Element::new(twisted.column(1));
        assert_eq!(image_of_x, s.xy().scale(&q(2)));
        let g = triviality_certificate(&f, &c, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(g.degree(), 0);
    }

    #[test]
    fn connes_examples() {
        let b = truncated_polynomial::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let yes = connes_image_test(&b, &[q(0), q(1)], DEFAULT_BUDGET).unwrap();
        assert!(yes.in_image);
        let no = connes_image_test(&b, &[q(1), q(0)], DEFAULT_BUDGET).unwrap();
        assert!(!no.in_image);
        let te = trivial_extension(&b, None).unwrap();
        let t = b.unit().scale(&q(3));
        let u = connes_realization(&te, &[q(0), q(1)], &t).unwrap().unwrap();
        let (tt, tau) = te.jacobian_from_blocks(u.matrix());
        assert_eq!(tt, t);
        assert_eq!(tau, vec![q(0), q(1)]);
        assert!(connes_realization(&te, &[q(1), q(0)], &t).unwrap().is_none());
    }
}

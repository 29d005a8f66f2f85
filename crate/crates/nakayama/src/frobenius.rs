//! Non-degenerate associative forms, the Nakayama automorphism, changes of
//! form, and innerness/symmetry decisions.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinearMap, Role};
use crate::field::Field;
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrobeniusError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("gram matrix must be {dim}x{dim}, got {rows}x{cols}")]
    Shape { dim: usize, rows: usize, cols: usize },
    #[error("form is degenerate")]
    Degenerate,
    #[error("form is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// An algebra with a non-degenerate associative form and its Nakayama
/// automorphism `σ`, characterized by `⟨a, b⟩ = ⟨b, σ(a)⟩`.
#[derive(Clone, Debug)]
pub struct Frobenius<F> {
    algebra: Algebra<F>,
    gram: Matrix<F>,
    gram_t_inv: Matrix<F>,
    sigma: LinearMap<F>,
    sigma_inv: LinearMap<F>,
}

/// Validate `gram` against `alg` and compute `σ`.
pub fn make_frobenius<F: Field>(alg: &Algebra<F>, gram: &Matrix<F>) -> Result<Frobenius<F>, FrobeniusError> {
    let n = alg.dim();
    if gram.rows() != n || gram.cols() != n {
        return Err(FrobeniusError::Shape { dim: n, rows: gram.rows(), cols: gram.cols() });
    }
    let gram = Matrix::from_fn(n, n, |i, j| alg.tag(gram.get(i, j).clone()));
    let gram_inv = gram.inverse()?.ok_or(FrobeniusError::Degenerate)?;
    if let Some((i, j, k)) = form_associativity_violation(alg, &gram) {
        return Err(FrobeniusError::NotAssociative(i, j, k));
    }
    // G·S = Gᵀ
    let s = gram_inv.mul(&gram.transpose());
    if gram.mul(&s) != gram.transpose() {
        return Err(FrobeniusError::Internal("Nakayama solve failed to reproduce the Gram transpose".into()));
    }
    let sigma = LinearMap::endomorphism(alg, s)
        .map_err(|e| FrobeniusError::Internal(format!("Nakayama map is not an endomorphism: {e}")))?;
    let sigma_inv = sigma.inverse().ok_or_else(|| FrobeniusError::Internal("Nakayama map not invertible".into()))?;
    let f = Frobenius { algebra: alg.clone(), gram_t_inv: gram_inv.transpose(), gram, sigma, sigma_inv };
    if let Some((a, b, c)) = f.beta_law_violation() {
        return Err(FrobeniusError::Internal(format!("bimodule law fails on ({a}, {b}, {c})")));
    }
    Ok(f)
}

/// First basis triple with `⟨e_i e_j, e_k⟩ ≠ ⟨e_i, e_j e_k⟩`.
pub fn form_associativity_violation<F: Field>(alg: &Algebra<F>, gram: &Matrix<F>) -> Option<(usize, usize, usize)> {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = alg.scalar(0);
                for (l, c) in alg.basis_product(i, j) {
                    lhs.add_mul_assign(c, gram.get(*l, k));
                }
                let mut rhs = alg.scalar(0);
                for (l, c) in alg.basis_product(j, k) {
                    rhs.add_mul_assign(gram.get(i, *l), c);
                }
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

impl<F: Field> Frobenius<F> {
    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The Nakayama automorphism.
    pub fn sigma(&self) -> &LinearMap<F> {
        &self.sigma
    }

    pub fn sigma_inverse(&self) -> &LinearMap<F> {
        &self.sigma_inv
    }

    pub fn form(&self, a: &Element<F>, b: &Element<F>) -> F {
        let gb = self.gram.mul_vec(b.coeffs());
        a.coeffs().iter().zip(&gb).fold(self.algebra.scalar(0), |mut acc, (x, y)| {
            acc.add_mul_assign(x, y);
            acc
        })
    }

    /// `β(a) = ⟨a, ·⟩` in dual-basis coordinates.
    pub fn beta(&self, a: &Element<F>) -> Vec<F> {
        self.gram.transpose().mul_vec(a.coeffs())
    }

    /// Inverse of [`Frobenius::beta`].
    pub fn beta_inverse(&self, functional: &[F]) -> Element<F> {
        Element::new(self.gram_t_inv.mul_vec(functional))
    }

    /// Whether the form itself is symmetric (equivalently `σ = id`).
    pub fn is_symmetric_form(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    /// First basis triple violating `⟨c a, b⟩ = ⟨a, b σ(c)⟩`.
    pub fn beta_law_violation(&self) -> Option<(usize, usize, usize)> {
        let alg = &self.algebra;
        let n = alg.dim();
        for c in 0..n {
            let sc = self.sigma.apply(&alg.basis(c));
            for a in 0..n {
                let ca = alg.mul(&alg.basis(c), &alg.basis(a));
                for b in 0..n {
                    let bsc = alg.mul(&alg.basis(b), &sc);
                    if self.form(&ca, &alg.basis(b)) != self.form(&alg.basis(a), &bsc) {
                        return Some((c, a, b));
                    }
                }
            }
        }
        None
    }

    /// Center basis vectors not fixed by `σ`.
    pub fn center_not_fixed(&self) -> Vec<Element<F>> {
        self.algebra.center_basis().into_iter().filter(|z| self.sigma.apply(z) != *z).collect()
    }

    /// Gram matrix of `(a, b) ↦ ⟨a, b t⟩`.
    pub fn gram_twisted_by(&self, t: &Element<F>) -> Matrix<F> {
        self.gram.mul(&self.algebra.right_mult_matrix(t))
    }

    /// Relate another valid form to this one: the unit `t` with
    /// `⟨a, b⟩' = ⟨a, b t⟩`, checked against `σ' = ι_t ∘ σ`.
    pub fn relate_forms(&self, gram2: &Matrix<F>) -> Result<FormChange<F>, FrobeniusError> {
        let other = make_frobenius(&self.algebra, gram2)?;
        let alg = &self.algebra;
        let n = alg.dim();
        // G' = G R_t and R_t(1) = t
        let rt = self.gram.inverse()?.ok_or(FrobeniusError::Degenerate)?.mul(other.gram());
        let t = Element::new(rt.mul_vec(alg.unit().coeffs()));
        if alg.right_mult_matrix(&t) != rt {
            return Err(FrobeniusError::Internal("second form is not of the shape ⟨a, b t⟩".into()));
        }
        let iota = alg.inner_automorphism(&t).map_err(|_| FrobeniusError::Internal("relating element is not a unit".into()))?;
        let predicted = iota.compose(&self.sigma);
        if predicted.matrix() != other.sigma().matrix() {
            return Err(FrobeniusError::Internal("σ' differs from ι_t ∘ σ".into()));
        }
        debug_assert_eq!(t.dim(), n);
        Ok(FormChange { t, other })
    }

    /// Look for a unit `t` with `u = ι_t`.
    pub fn is_inner<R: Rng + ?Sized>(&self, u: &LinearMap<F>, rng: &mut R) -> Result<UnitVerdict<F>, FrobeniusError> {
        inner_witness(&self.algebra, u, rng)
    }

    /// Symmetric algebra iff `σ` is inner; `Found(t)` carries `σ = ι_t`.
    pub fn is_symmetric_algebra<R: Rng + ?Sized>(&self, rng: &mut R) -> UnitVerdict<F> {
        if self.is_symmetric_form() {
            return UnitVerdict::Found(self.algebra.unit());
        }
        inner_witness(&self.algebra, &self.sigma, rng).expect("σ is a square endomorphism")
    }
}

/// Output of [`Frobenius::relate_forms`].
#[derive(Clone, Debug)]
pub struct FormChange<F> {
    pub t: Element<F>,
    pub other: Frobenius<F>,
}

/// Look for a unit `t` with `u(a) t = t a` for all `a`.
pub fn inner_witness<F: Field, R: Rng + ?Sized>(
    alg: &Algebra<F>,
    u: &LinearMap<F>,
    rng: &mut R,
) -> Result<UnitVerdict<F>, FrobeniusError> {
    LinearMap::with_role(alg, u.matrix().clone(), Role::Endomorphism)?;
    if !u.is_invertible() {
        return Err(FrobeniusError::NotInvertible);
    }
    let n = alg.dim();
    let columns: Vec<Vec<F>> = (0..n)
        .map(|k| {
            let t = alg.basis(k);
            (0..n)
                .flat_map(|i| {
                    let ei = alg.basis(i);
                    (&alg.mul(&u.apply(&ei), &t) - &alg.mul(&t, &ei)).into_coeffs()
                })
                .collect()
        })
        .collect();
    let kernel: Vec<Element<F>> = Matrix::from_columns(n * n, &columns)
        .kernel_basis()
        .into_iter()
        .map(|v| Element::new(v.into_iter().map(|c| alg.tag(c)).collect()))
        .collect();
    Ok(unit_in_span(alg, &kernel, rng))
}

/// Why a subspace provably contains no unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoUnitCertificate {
    EmptySubspace,
    /// Every element of the (finite) subspace was checked.
    Exhaustive { checked: u128 },
    /// `det L_{Σ c_i k_i}`, a polynomial of degree at most `dim` in each
    /// `c_i`, vanishes on a grid `S^m` with `|S| = dim + 1`, hence
    /// identically.
    GridVanishing { points_per_axis: usize, grid_size: usize },
}

/// Three-way answer of the unit search.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitVerdict<F> {
    Found(Element<F>),
    NoUnit(NoUnitCertificate),
    Inconclusive { tried: usize },
}

impl<F: Field> UnitVerdict<F> {
    pub fn found(&self) -> Option<&Element<F>> {
        match self {
            UnitVerdict::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, UnitVerdict::Found(_))
    }

    pub fn is_no_unit(&self) -> bool {
        matches!(self, UnitVerdict::NoUnit(_))
    }
}

pub const RATIONAL_SAMPLES: usize = 64;
pub const FINITE_SAMPLES: usize = 256;
pub const EXHAUSTIVE_LIMIT: u128 = 4096;
pub const GRID_LIMIT: usize = 4096;

fn combination<F: Field>(alg: &Algebra<F>, span: &[Element<F>], coeffs: &[F]) -> Element<F> {
    span.iter().zip(coeffs).fold(alg.zero(), |acc, (k, c)| &acc + &k.scale(c))
}

/// Search `span` for a unit of `alg`: basis sum first, then exhaustion
/// (small finite subspaces) or seeded sampling, then a vanishing-grid proof
/// that none exists.
pub fn unit_in_span<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, span: &[Element<F>], rng: &mut R) -> UnitVerdict<F> {
    if span.is_empty() {
        return UnitVerdict::NoUnit(NoUnitCertificate::EmptySubspace);
    }
    let field = alg.field().clone();
    let m = span.len();
    let sum = span.iter().fold(alg.zero(), |acc, k| &acc + k);
    if alg.is_unit(&sum) {
        return UnitVerdict::Found(sum);
    }
    let exhaustive = field.order().and_then(|q| q.checked_pow(m as u32)).filter(|&total| total <= EXHAUSTIVE_LIMIT);
    if let Some(total) = exhaustive {
        let elems = F::enumerate(&field, EXHAUSTIVE_LIMIT).expect("small field");
        let q = elems.len() as u128;
        for idx in 0..total {
            let mut rest = idx;
            let coeffs: Vec<F> = (0..m)
                .map(|_| {
                    let c = elems[(rest % q) as usize].clone();
                    rest /= q;
                    c
                })
                .collect();
            let cand = combination(alg, span, &coeffs);
            if alg.is_unit(&cand) {
                return UnitVerdict::Found(cand);
            }
        }
        return UnitVerdict::NoUnit(NoUnitCertificate::Exhaustive { checked: total });
    }
    let samples = if field.characteristic() == 0 { RATIONAL_SAMPLES } else { FINITE_SAMPLES };
    for _ in 0..samples {
        let coeffs: Vec<F> = (0..m).map(|_| F::sample(&field, rng)).collect();
        let cand = combination(alg, span, &coeffs);
        if alg.is_unit(&cand) {
            return UnitVerdict::Found(cand);
        }
    }
    match grid_certificate(alg, span) {
        Some(cert) => UnitVerdict::NoUnit(cert),
        None => UnitVerdict::Inconclusive { tried: samples + 1 },
    }
}

fn grid_certificate<F: Field>(alg: &Algebra<F>, span: &[Element<F>]) -> Option<NoUnitCertificate> {
    let n = alg.dim();
    let field = alg.field();
    let axis = n + 1;
    let m = span.len();
    let grid = axis.checked_pow(m as u32).filter(|&g| g <= GRID_LIMIT)?;
    let p = field.characteristic();
    if p != 0 && (p as usize) < axis {
        return None;
    }
    let points: Vec<F> = (0..axis as i64).map(|i| F::from_int(field, i)).collect();
    for idx in 0..grid {
        let mut rest = idx;
        let coeffs: Vec<F> = (0..m)
            .map(|_| {
                let c = points[rest % axis].clone();
                rest /= axis;
                c
            })
            .collect();
        let cand = combination(alg, span, &coeffs);
        let det = alg.left_mult_matrix(&cand).determinant().expect("square");
        if !det.is_zero() {
            return None;
        }
    }
    Some(NoUnitCertificate::GridVanishing { points_per_axis: axis, grid_size: grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Gf, Q};
    use crate::gallery::{cyclic, exterior, matrix_algebra, qci, trace_form, trivial_extension, truncated_polynomial};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Q {
        Q::from_int(&FieldSpec::Rationals, n)
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    #[test]
    fn qci_nakayama() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let sig = f.sigma();
        assert_eq!(sig.apply(&s.x()), s.x().scale(&Q::new(1.into(), 2.into())));
        assert_eq!(sig.apply(&s.y()), s.y().scale(&q(2)));
        assert_eq!(sig.apply(&s.xy()), s.xy());
        assert_eq!(sig.apply(&s.algebra.unit()), s.algebra.unit());
        assert!(f.center_not_fixed().is_empty());
        assert!(f.is_symmetric_algebra(&mut rng()).is_no_unit());
    }

    #[test]
    fn exterior_nakayama_and_symmetry() {
        let e2 = exterior::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let f2 = make_frobenius(&e2.algebra, &e2.gram).unwrap();
        assert_eq!(f2.sigma().apply(&e2.generator(0)), -e2.generator(0));
        assert!(f2.is_symmetric_algebra(&mut rng()).is_no_unit());
        let e3 = exterior::<Q>(&FieldSpec::Rationals, 3).unwrap();
        let f3 = make_frobenius(&e3.algebra, &e3.gram).unwrap();
        assert!(f3.sigma().matrix().is_identity());
        assert!(f3.is_symmetric_algebra(&mut rng()).is_found());
    }

    #[test]
    fn symmetric_examples_have_trivial_sigma() {
        let f3 = FieldSpec::prime(3).unwrap();
        let c = cyclic::<Gf>(&f3).unwrap();
        assert!(make_frobenius(&c.algebra, &c.gram).unwrap().sigma().matrix().is_identity());
        let m2 = matrix_algebra::<Q>(&FieldSpec::Rationals, 2).unwrap();
        assert!(make_frobenius(&m2, &trace_form(&m2)).unwrap().sigma().matrix().is_identity());
        let b = truncated_polynomial::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let te = trivial_extension(&b, None).unwrap();
        let f = make_frobenius(&te.algebra, &te.gram).unwrap();
        assert!(f.sigma().matrix().is_identity());
        assert!(f.is_symmetric_algebra(&mut rng()).is_found());
    }

    #[test]
    fn degenerate_and_non_associative_forms_rejected() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        assert_eq!(make_frobenius(&s.algebra, &Matrix::zeros(4, 4)).unwrap_err(), FrobeniusError::Degenerate);
        let err = make_frobenius(&s.algebra, &Matrix::identity(4)).unwrap_err();
        assert!(matches!(err, FrobeniusError::NotAssociative(..)));
    }

    #[test]
    fn relate_forms_recovers_twist() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let same = f.relate_forms(&s.gram).unwrap();
        assert_eq!(same.t, s.algebra.unit());
        let t = &s.algebra.unit() + &s.x();
        let change = f.relate_forms(&f.gram_twisted_by(&t)).unwrap();
        assert_eq!(change.t, t);
        let central = s.algebra.unit().scale(&q(3));
        assert_eq!(f.relate_forms(&f.gram_twisted_by(&central)).unwrap().t, central);
    }

    #[test]
    fn inner_detection() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let id = LinearMap::identity(4);
        assert!(f.is_inner(&id, &mut rng()).unwrap().is_found());
        let u = &s.algebra.unit() + &s.y();
        let iota = s.algebra.inner_automorphism(&u).unwrap();
        let t = f.is_inner(&iota, &mut rng()).unwrap();
        let t = t.found().unwrap();
        let ratio = s.algebra.mul(t, &s.algebra.inverse_of(&u).unwrap());
        assert!(s.algebra.is_central(&ratio));
    }

    #[test]
    fn finite_field_unit_search_is_exhaustive() {
        let f3 = FieldSpec::prime(3).unwrap();
        let s = qci::<Gf>(&f3, Gf::from_int(&f3, 2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let verdict = f.is_symmetric_algebra(&mut rng());
        assert!(matches!(verdict, UnitVerdict::NoUnit(NoUnitCertificate::Exhaustive { .. })));
    }
}

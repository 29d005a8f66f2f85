//! Nakayama Jacobians of endomorphisms, divergences of derivations, the
//! form adjoint of a derivation, the Liouville polynomial and the
//! Grassmann (Bavula) Jacobian.

use rand::Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinearMap, Role};
use crate::field::Field;
use crate::frobenius::{unit_in_span, Frobenius, FrobeniusError, UnitVerdict};
use crate::gallery::Exterior;
use crate::group::{all_permutations, permutation_sign};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("operation needs characteristic zero")]
    PositiveCharacteristic,
    #[error("derivation is not nilpotent: d^{0} != 0")]
    NotNilpotent(usize),
    #[error("image of generator x{0} is not odd")]
    NotOddPreserving(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn check_role<F: Field>(alg: &Algebra<F>, u: &LinearMap<F>, role: Role) -> Result<(), CalculusError> {
    LinearMap::with_role(alg, u.matrix().clone(), role)?;
    Ok(())
}

/// The unique `j` with `⟨u(a), u(b)⟩ = ⟨j·a, b⟩`, computed as
/// `β⁻¹(uᵀ β(1))` and re-verified on all basis pairs.
pub fn jacobian<F: Field>(f: &Frobenius<F>, u: &LinearMap<F>) -> Result<Element<F>, CalculusError> {
    let alg = f.algebra();
    check_role(alg, u, Role::Endomorphism)?;
    let beta_one = f.beta(&alg.unit());
    let j = f.beta_inverse(&u.matrix().transpose().mul_vec(&beta_one));
    let g = f.gram();
    let lhs = u.matrix().transpose().mul(g).mul(u.matrix());
    let rhs = alg.left_mult_matrix(&j).transpose().mul(g);
    if lhs != rhs {
        return Err(CalculusError::Internal("Jacobian fails the defining identity".into()));
    }
    Ok(j)
}

/// Solve `⟨u(e_a), u(e_b)⟩ = ⟨j·e_a, e_b⟩` for `j` directly as an `n² × n`
/// linear system; `None` when the system is inconsistent. Accepts any
/// linear map.
pub fn jacobian_by_solve<F: Field>(f: &Frobenius<F>, u: &LinearMap<F>) -> Result<Option<Element<F>>, CalculusError> {
    let alg = f.algebra();
    let n = alg.dim();
    let g = f.gram();
    let target = u.matrix().transpose().mul(g).mul(u.matrix());
    // ⟨e_k e_a, e_b⟩ is linear in the unknown coefficient of e_k
    let columns: Vec<Vec<F>> = (0..n)
        .map(|k| alg.left_mult_matrix(&alg.basis(k)).transpose().mul(g).entries().to_vec())
        .collect();
    let system = Matrix::from_columns(n * n, &columns);
    let sol = system
        .solve(target.entries())
        .map_err(|e| CalculusError::Internal(e.to_string()))?;
    Ok(sol.map(|v| Element::new(v.into_iter().map(|c| alg.tag(c)).collect())))
}

/// `jac~(u) = jac(u⁻¹)`.
pub fn jacobian_cocycle<F: Field>(f: &Frobenius<F>, u: &LinearMap<F>) -> Result<Element<F>, CalculusError> {
    check_role(f.algebra(), u, Role::Endomorphism)?;
    let inv = u.inverse().ok_or(CalculusError::NotInvertible)?;
    jacobian(f, &inv)
}

/// `det(∂_j u(x_i))` over the even part, for `u` mapping generators to odd
/// elements.
pub fn bavula_jacobian<F: Field>(ext: &Exterior<F>, u: &LinearMap<F>) -> Result<Element<F>, CalculusError> {
    let alg = &ext.algebra;
    check_role(alg, u, Role::Endomorphism)?;
    let n = ext.generators();
    let images: Vec<Element<F>> = (0..n).map(|i| u.apply(&ext.generator(i))).collect();
    for (i, img) in images.iter().enumerate() {
        if !ext.is_odd(img) {
            return Err(CalculusError::NotOddPreserving(i + 1));
        }
    }
    let partials: Vec<Matrix<F>> = (0..n).map(|j| ext.skew_partial(j)).collect();
    let entry = |i: usize, j: usize| Element::new(partials[j].mul_vec(images[i].coeffs()));
    let m: Vec<Vec<Element<F>>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut det = alg.zero();
    for perm in all_permutations(n) {
        let mut term = alg.unit();
        for (i, &pi) in perm.iter().enumerate() {
            term = alg.mul(&term, &m[i][pi]);
        }
        det = if permutation_sign(&perm) == 1 { &det + &term } else { &det - &term };
    }
    Ok(det)
}

/// The adjoint `δ*` with `⟨d(a), b⟩ = ⟨a, δ*(b)⟩`.
pub fn delta_star<F: Field>(f: &Frobenius<F>, d: &LinearMap<F>) -> Result<LinearMap<F>, CalculusError> {
    check_role(f.algebra(), d, Role::Derivation)?;
    let g = f.gram();
    let ginv = g.inverse().map_err(FrobeniusError::from)?.ok_or(FrobeniusError::Degenerate)?;
    Ok(LinearMap::general(ginv.mul(&d.matrix().transpose()).mul(g)))
}

/// `div(d) = δ*(1)`, re-verified against
/// `⟨d(a), b⟩ + ⟨a, d(b)⟩ = ⟨a, b·div⟩` on basis pairs.
pub fn divergence<F: Field>(f: &Frobenius<F>, d: &LinearMap<F>) -> Result<Element<F>, CalculusError> {
    let alg = f.algebra();
    let v = delta_star(f, d)?.apply(&alg.unit());
    let n = alg.dim();
    for i in 0..n {
        let a = alg.basis(i);
        let da = d.apply(&a);
        for j in 0..n {
            let b = alg.basis(j);
            let lhs = f.form(&da, &b).add_ref(&f.form(&a, &d.apply(&b)));
            if lhs != f.form(&a, &alg.mul(&b, &v)) {
                return Err(CalculusError::Internal(format!("divergence identity fails at ({i}, {j})")));
            }
        }
    }
    Ok(v)
}

/// `φ_0 = 1`, `φ_{k+1} = φ_k·div − d(φ_k)`, for `k ≤ kmax`.
pub fn phi_sequence<F: Field>(f: &Frobenius<F>, d: &LinearMap<F>, kmax: usize) -> Result<Vec<Element<F>>, CalculusError> {
    let alg = f.algebra();
    let div = divergence(f, d)?;
    let mut out = vec![alg.unit()];
    for k in 0..kmax {
        let prev = &out[k];
        let next = &alg.mul(prev, &div) - &d.apply(prev);
        out.push(next);
    }
    Ok(out)
}

/// Polynomial in `t` with algebra coefficients; index `k` holds the
/// coefficient of `t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPolynomial<F> {
    coeffs: Vec<Element<F>>,
}

impl<F: Field> AlgebraPolynomial<F> {
    pub fn new(mut coeffs: Vec<Element<F>>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        AlgebraPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Element<F>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, t: &F) -> Element<F> {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc.scale(t) + c;
        }
        acc
    }

    pub fn derivative(&self, alg: &Algebra<F>) -> AlgebraPolynomial<F> {
        if self.coeffs.len() <= 1 {
            return AlgebraPolynomial::new(vec![alg.zero()]);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&alg.scalar(k as i64))).collect();
        AlgebraPolynomial::new(coeffs)
    }
}

fn require_char_zero<F: Field>(alg: &Algebra<F>) -> Result<(), CalculusError> {
    if alg.field().characteristic() != 0 {
        return Err(CalculusError::PositiveCharacteristic);
    }
    Ok(())
}

/// Check `d^dim = 0`.
pub fn check_nilpotent<F: Field>(alg: &Algebra<F>, d: &LinearMap<F>) -> Result<(), CalculusError> {
    let n = alg.dim();
    let mut p = Matrix::identity(n);
    for _ in 0..n {
        p = p.mul(d.matrix());
    }
    if p.is_zero() {
        Ok(())
    } else {
        Err(CalculusError::NotNilpotent(n))
    }
}

fn factorial<F: Field>(alg: &Algebra<F>, k: usize) -> F {
    (1..=k as i64).fold(alg.scalar(1), |acc, i| acc.mul_ref(&alg.scalar(i)))
}

/// `Φ = Σ φ_k t^k / k!` for a nilpotent derivation in characteristic zero.
pub fn liouville_polynomial<F: Field>(f: &Frobenius<F>, d: &LinearMap<F>) -> Result<AlgebraPolynomial<F>, CalculusError> {
    let alg = f.algebra();
    require_char_zero(alg)?;
    check_role(alg, d, Role::Derivation)?;
    check_nilpotent(alg, d)?;
    let n = alg.dim();
    let phis = phi_sequence(f, d, n)?;
    let coeffs = phis
        .into_iter()
        .enumerate()
        .map(|(k, phi)| phi.scale(&factorial(alg, k).inverse().expect("char 0")))
        .collect();
    Ok(AlgebraPolynomial::new(coeffs))
}

/// `exp(t d) = Σ t^k/k! d^k` for a nilpotent derivation in characteristic
/// zero; validated as an endomorphism.
pub fn exp_derivation<F: Field>(alg: &Algebra<F>, d: &LinearMap<F>, t: &F) -> Result<LinearMap<F>, CalculusError> {
    require_char_zero(alg)?;
    check_role(alg, d, Role::Derivation)?;
    check_nilpotent(alg, d)?;
    let n = alg.dim();
    let td = d.matrix().scale(t);
    let mut term = Matrix::identity(n);
    let mut acc = Matrix::identity(n);
    for k in 1..n {
        term = term.mul(&td).scale(&alg.scalar(k as i64).inverse().expect("char 0"));
        acc = acc.add(&term);
    }
    Ok(LinearMap::endomorphism(alg, acc)?)
}

/// `d^u = u ∘ d ∘ u⁻¹`.
pub fn conjugate_map<F: Field>(u: &LinearMap<F>, d: &LinearMap<F>) -> Result<LinearMap<F>, CalculusError> {
    let inv = u.inverse().ok_or(CalculusError::NotInvertible)?;
    Ok(LinearMap::general(u.matrix().mul(d.matrix()).mul(inv.matrix())))
}

/// Search for `ξ` with `c(u) = ξ⁻¹ u(ξ)` for every `(u, c(u))` pair: the
/// linear conditions `u(ξ) = ξ c(u)` cut out a subspace, which is then
/// searched for a unit.
pub fn coboundary_search<F: Field, R: Rng + ?Sized>(
    alg: &Algebra<F>,
    values: &[(LinearMap<F>, Element<F>)],
    rng: &mut R,
) -> UnitVerdict<F> {
    let n = alg.dim();
    let columns: Vec<Vec<F>> = (0..n)
        .map(|k| {
            let xi = alg.basis(k);
            values.iter().flat_map(|(u, c)| (&u.apply(&xi) - &alg.mul(&xi, c)).into_coeffs()).collect()
        })
        .collect();
    let span: Vec<Element<F>> = if values.is_empty() {
        (0..n).map(|k| alg.basis(k)).collect()
    } else {
        Matrix::from_columns(n * values.len(), &columns)
            .kernel_basis()
            .into_iter()
            .map(|v| Element::new(v.into_iter().map(|c| alg.tag(c)).collect()))
            .collect()
    };
    unit_in_span(alg, &span, rng)
}

/// Look for a central `z` with `div(δ) = δ(z)` for all given derivations;
/// `None` certifies that no such `z` exists.
pub fn divergence_coboundary<F: Field>(
    f: &Frobenius<F>,
    derivations: &[LinearMap<F>],
) -> Result<Option<Element<F>>, CalculusError> {
    let alg = f.algebra();
    let n = alg.dim();
    let center = alg.center_basis();
    if derivations.is_empty() {
        return Ok(Some(alg.zero()));
    }
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(n * derivations.len());
    let mut rhs = Vec::with_capacity(n * derivations.len());
    let images: Vec<Vec<Element<F>>> = derivations.iter().map(|d| center.iter().map(|z| d.apply(z)).collect()).collect();
    for (d, imgs) in derivations.iter().zip(&images) {
        let div = divergence(f, d)?;
        for r in 0..n {
            rows.push(imgs.iter().map(|img| img[r].clone()).collect());
            rhs.push(div[r].clone());
        }
    }
    if center.is_empty() {
        return Ok(if rhs.iter().all(|x| x.is_zero()) { Some(alg.zero()) } else { None });
    }
    let m = Matrix::from_rows(rows).map_err(FrobeniusError::from)?;
    let sol = m.solve(&rhs).map_err(FrobeniusError::from)?;
    Ok(sol.map(|c| center.iter().zip(&c).fold(alg.zero(), |acc, (z, x)| &acc + &z.scale(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Q};
    use crate::frobenius::make_frobenius;
    use crate::gallery::{exterior, qci};

    fn q(n: i64) -> Q {
        Q::from_int(&FieldSpec::Rationals, n)
    }

    fn half() -> Q {
        Q::new(1.into(), 2.into())
    }

    #[test]
    fn qci_jacobians() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let alg = &s.algebra;
        assert_eq!(jacobian(&f, &LinearMap::identity(4)).unwrap(), alg.unit());
        let u = s.alpha(&q(2), &q(3), &q(0), &q(0)).unwrap();
        assert_eq!(jacobian(&f, &u).unwrap(), alg.unit().scale(&q(6)));
        let u = s.alpha(&q(1), &q(1), &q(1), &q(0)).unwrap();
        assert_eq!(jacobian(&f, &u).unwrap(), &alg.unit() + &s.y().scale(&half()));
        let iota = alg.inner_automorphism(&(&alg.unit() + &s.x())).unwrap();
        assert_eq!(jacobian(&f, &iota).unwrap(), &alg.unit() - &s.x());
    }

    #[test]
    fn qci_divergence_and_liouville() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let alg = &s.algebra;
        let d = s.delta(&q(1), &q(0), &q(0), &q(0)).unwrap();
        assert_eq!(delta_star(&f, &d).unwrap().apply(&alg.unit()), alg.unit());
        let d = s.delta(&q(0), &q(0), &q(1), &q(0)).unwrap();
        assert_eq!(divergence(&f, &d).unwrap(), s.y());
        assert_eq!(phi_sequence(&f, &d, 2).unwrap(), vec![alg.unit(), s.y(), alg.zero()]);
        let phi = liouville_polynomial(&f, &d).unwrap();
        assert_eq!(phi.coeffs(), &[alg.unit(), s.y()]);
        let e = exp_derivation(alg, &d, &q(3)).unwrap();
        assert_eq!(e, s.alpha(&q(1), &q(1), &q(3), &q(0)).unwrap());
        assert!(exp_derivation(alg, &d, &q(0)).unwrap().matrix().is_identity());
        let zero = LinearMap::zero_derivation(4);
        assert!(divergence(&f, &zero).unwrap().is_zero());
        assert_eq!(liouville_polynomial(&f, &zero).unwrap().coeffs(), &[alg.unit()]);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let d = s.delta(&q(1), &q(0), &q(0), &q(0)).unwrap();
        assert_eq!(liouville_polynomial(&f, &d).unwrap_err(), CalculusError::NotNilpotent(4));
    }

    #[test]
    fn grassmann_phi_and_bavula() {
        let e = exterior::<Q>(&FieldSpec::Rationals, 3).unwrap();
        let f = make_frobenius(&e.algebra, &e.gram).unwrap();
        let m = Matrix::from_rows(vec![
            vec![q(1), q(2), q(0)],
            vec![q(0), q(1), q(1)],
            vec![q(3), q(0), q(1)],
        ])
        .unwrap();
        let det = m.determinant().unwrap();
        let phi = e.phi(&m).unwrap();
        assert_eq!(bavula_jacobian(&e, &phi).unwrap(), e.algebra.unit().scale(&det));
        assert_eq!(jacobian_cocycle(&f, &phi).unwrap(), e.algebra.unit().scale(&det.inverse().unwrap()));
        let g = e.gamma(0, &q(1), [0, 1, 2]).unwrap();
        let expected = &e.algebra.unit() + &e.monomial(0b110);
        assert_eq!(bavula_jacobian(&e, &g).unwrap(), expected);
    }
}

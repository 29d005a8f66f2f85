//! Twisted crossed products `A ⋊_α G` with `(a⋊g)(b⋊h) = α(g,h)·a g(b) ⋊ gh`,
//! their Frobenius form and the predicted Nakayama automorphism.

use rand::Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinearMap};
use crate::calculus::{jacobian, CalculusError};
use crate::field::Field;
use crate::frobenius::{Frobenius, FrobeniusError};
use crate::group::{Group, GroupError};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrossedError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("the identity of the group does not act trivially")]
    IdentityAction,
    #[error("group element {0} does not act by an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not multiplicative: ω({0})ω({1}) ≠ ω({0}{1})")]
    NotHomomorphism(usize, usize),
    #[error("cocycle value at ({0}, {1}) is zero")]
    ZeroCocycleValue(usize, usize),
    #[error("cocycle identity fails on ({0}, {1}, {2})")]
    NotCocycle(usize, usize, usize),
}

/// An action of a finite group on an algebra by automorphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction<F> {
    maps: Vec<LinearMap<F>>,
}

impl<F: Field> GroupAction<F> {
    pub fn new(alg: &Algebra<F>, group: &Group, matrices: Vec<Matrix<F>>) -> Result<Self, CrossedError> {
        if matrices.len() != group.order() {
            return Err(CrossedError::Shape { expected: group.order(), got: matrices.len() });
        }
        let mut maps = Vec::with_capacity(matrices.len());
        for (g, m) in matrices.into_iter().enumerate() {
            let u = LinearMap::endomorphism(alg, m).map_err(|_| CrossedError::NotAutomorphism(g))?;
            if !u.is_invertible() {
                return Err(CrossedError::NotAutomorphism(g));
            }
            maps.push(u);
        }
        if !maps[group.identity()].matrix().is_identity() {
            return Err(CrossedError::IdentityAction);
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if maps[g].compose(&maps[h]).matrix() != maps[group.mul(g, h)].matrix() {
                    return Err(CrossedError::NotHomomorphism(g, h));
                }
            }
        }
        Ok(GroupAction { maps })
    }

    pub fn trivial(alg: &Algebra<F>, group: &Group) -> Self {
        GroupAction { maps: vec![LinearMap::identity(alg.dim()); group.order()] }
    }

    /// `Z/2` acting through an involutive automorphism.
    pub fn involution(alg: &Algebra<F>, u: &LinearMap<F>) -> Result<(Group, Self), CrossedError> {
        let group = Group::cyclic(2)?;
        let action = GroupAction::new(alg, &group, vec![Matrix::identity(alg.dim()), u.matrix().clone()])?;
        Ok((group, action))
    }

    pub fn map(&self, g: usize) -> &LinearMap<F> {
        &self.maps[g]
    }

    pub fn maps(&self) -> &[LinearMap<F>] {
        &self.maps
    }
}

/// A 2-cocycle `G × G → k^×`: `α(h,k)α(g,hk) = α(gh,k)α(g,h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCocycle<F> {
    values: Vec<Vec<F>>,
}

impl<F: Field> TwoCocycle<F> {
    pub fn new(group: &Group, values: Vec<Vec<F>>) -> Result<Self, CrossedError> {
        let m = group.order();
        if values.len() != m {
            return Err(CrossedError::Shape { expected: m, got: values.len() });
        }
        for (g, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(CrossedError::Shape { expected: m, got: row.len() });
            }
            if let Some(h) = row.iter().position(|x| x.is_zero()) {
                return Err(CrossedError::ZeroCocycleValue(g, h));
            }
        }
        for g in 0..m {
            for h in 0..m {
                for k in 0..m {
                    let lhs = values[h][k].mul_ref(&values[g][group.mul(h, k)]);
                    let rhs = values[group.mul(g, h)][k].mul_ref(&values[g][h]);
                    if lhs != rhs {
                        return Err(CrossedError::NotCocycle(g, h, k));
                    }
                }
            }
        }
        Ok(TwoCocycle { values })
    }

    pub fn trivial(alg: &Algebra<F>, group: &Group) -> Self {
        let m = group.order();
        TwoCocycle { values: vec![vec![alg.scalar(1); m]; m] }
    }

    /// `(∂β)(g,h) = β(g)β(h)/β(gh)` for nonzero `β`.
    pub fn coboundary(group: &Group, beta: &[F]) -> Result<Self, CrossedError> {
        let m = group.order();
        if beta.len() != m {
            return Err(CrossedError::Shape { expected: m, got: beta.len() });
        }
        let mut values = vec![Vec::with_capacity(m); m];
        for (g, row) in values.iter_mut().enumerate() {
            for h in 0..m {
                let inv = beta[group.mul(g, h)].inverse().ok_or(CrossedError::ZeroCocycleValue(g, h))?;
                row.push(beta[g].mul_ref(&beta[h]).mul_ref(&inv));
            }
        }
        TwoCocycle::new(group, values)
    }

    /// On `Z/m` (elements `0..m` added mod `m`): `α(i,j) = λ` when
    /// `i + j ≥ m`, else 1.
    pub fn cyclic_carry(group: &Group, lambda: &F) -> Result<Self, CrossedError> {
        let m = group.order();
        let one = F::one();
        let values = (0..m)
            .map(|i| (0..m).map(|j| if i + j >= m { lambda.clone() } else { one.clone() }).collect())
            .collect();
        TwoCocycle::new(group, values)
    }

    /// Pointwise product of two cocycles.
    pub fn times(&self, other: &TwoCocycle<F>) -> TwoCocycle<F> {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.mul_ref(y)).collect())
            .collect();
        TwoCocycle { values }
    }

    pub fn value(&self, g: usize, h: usize) -> &F {
        &self.values[g][h]
    }

    pub fn values(&self) -> &[Vec<F>] {
        &self.values
    }

    /// Whether `α(e, g) = α(g, e) = 1` for all `g`.
    pub fn is_normalized(&self, group: &Group) -> bool {
        let e = group.identity();
        let one = F::one();
        (0..group.order()).all(|g| self.values[e][g] == one && self.values[g][e] == one)
    }

    /// `α(g,g⁻¹)/α(g⁻¹,g)`.
    pub fn ratio(&self, group: &Group, g: usize) -> F {
        let gi = group.inverse(g);
        let den = self.values[gi][g].inverse().expect("cocycle values are nonzero");
        self.values[g][gi].mul_ref(&den)
    }
}

/// Seeded cocycle: the coboundary of a random `β`, times the carry cocycle
/// with random `λ` when `G` is cyclic of order 2.
pub fn sample_cocycle<F: Field, R: Rng + ?Sized>(
    alg: &Algebra<F>,
    group: &Group,
    rng: &mut R,
) -> Result<TwoCocycle<F>, CrossedError> {
    let nonzero = |rng: &mut R| loop {
        let x = F::sample(alg.field(), rng);
        if !x.is_zero() {
            return alg.tag(x);
        }
    };
    let beta: Vec<F> = (0..group.order()).map(|_| nonzero(rng)).collect();
    let mut alpha = TwoCocycle::coboundary(group, &beta)?;
    if group.order() == 2 {
        let lambda = nonzero(rng);
        alpha = alpha.times(&TwoCocycle::cyclic_carry(group, &lambda)?);
    }
    Ok(alpha)
}

/// `A ⋊_α G` with the group-major basis `(g, e_i) ↦ g·n + i`.
#[derive(Clone, Debug)]
pub struct CrossedProduct<F> {
    pub algebra: Algebra<F>,
    pub group: Group,
    pub action: GroupAction<F>,
    pub cocycle: TwoCocycle<F>,
    base_dim: usize,
}

pub fn build_crossed_product<F: Field>(
    base: &Algebra<F>,
    group: &Group,
    action: &GroupAction<F>,
    alpha: &TwoCocycle<F>,
) -> Result<CrossedProduct<F>, CrossedError> {
    let n = base.dim();
    let m = group.order();
    if action.maps.len() != m {
        return Err(CrossedError::Shape { expected: m, got: action.maps.len() });
    }
    if alpha.values.len() != m {
        return Err(CrossedError::Shape { expected: m, got: alpha.values.len() });
    }
    let mut structure = Vec::new();
    for g in 0..m {
        for h in 0..m {
            let gh = group.mul(g, h);
            let a = alpha.value(g, h);
            for j in 0..n {
                let moved = action.map(g).apply(&base.basis(j));
                for i in 0..n {
                    let prod = base.mul(&base.basis(i), &moved);
                    for (k, c) in prod.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            structure.push((g * n + i, h * n + j, gh * n + k, a.mul_ref(c)));
                        }
                    }
                }
            }
        }
    }
    let e = group.identity();
    let scale = alpha.value(e, e).inverse().ok_or(CrossedError::ZeroCocycleValue(e, e))?;
    let mut unit = vec![base.scalar(0); n * m];
    for (i, c) in base.unit().coeffs().iter().enumerate() {
        unit[e * n + i] = c.mul_ref(&scale);
    }
    let names = group
        .names()
        .iter()
        .flat_map(|g| base.basis_names().iter().map(move |a| format!("{a}⋊{g}")))
        .collect();
    let algebra = Algebra::new(base.field().clone(), names, structure, unit)?;
    Ok(CrossedProduct { algebra, group: group.clone(), action: action.clone(), cocycle: alpha.clone(), base_dim: n })
}

impl<F: Field> CrossedProduct<F> {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// `a ⋊ g` as an element of the crossed product.
    pub fn embed(&self, a: &Element<F>, g: usize) -> Element<F> {
        let n = self.base_dim;
        let mut out = vec![self.algebra.scalar(0); self.algebra.dim()];
        out[g * n..(g + 1) * n].clone_from_slice(a.coeffs());
        Element::new(out)
    }

    /// `⟨⟨a⋊g, b⋊h⟩⟩ = α(g,h)·⟨a, g(b)⟩·[gh = e]`.
    pub fn crossed_form(&self, base: &Frobenius<F>) -> Matrix<F> {
        let n = self.base_dim;
        let m = self.group.order();
        let e = self.group.identity();
        let mut gram = Matrix::zeros(n * m, n * m);
        for g in 0..m {
            let h = self.group.inverse(g);
            let moved = base.gram().mul(self.action.map(g).matrix());
            let a = self.cocycle.value(g, h);
            debug_assert_eq!(self.group.mul(g, h), e);
            for i in 0..n {
                for j in 0..n {
                    gram.set(g * n + i, h * n + j, a.mul_ref(moved.get(i, j)));
                }
            }
        }
        gram
    }

    /// `Σ(a⋊g) = α(g,g⁻¹)/α(g⁻¹,g) · σ(a)·g(σ(jac_σ(g))) ⋊ g`.
    pub fn predicted_nakayama(&self, base: &Frobenius<F>) -> Result<LinearMap<F>, CrossedError> {
        self.nakayama_candidate(base, FactorOrder::ActionAfterTwist)
    }

    /// The formula under either order of `g` and `σ` in the factor.
    pub fn nakayama_candidate(&self, base: &Frobenius<F>, order: FactorOrder) -> Result<LinearMap<F>, CrossedError> {
        let alg = base.algebra();
        let n = self.base_dim;
        let m = self.group.order();
        let sigma = base.sigma();
        let mut columns = Vec::with_capacity(n * m);
        for g in 0..m {
            let u = self.action.map(g);
            let jac = jacobian(base, u)?;
            let factor = match order {
                FactorOrder::ActionAfterTwist => u.apply(&sigma.apply(&jac)),
                FactorOrder::TwistAfterAction => sigma.apply(&u.apply(&jac)),
            };
            let ratio = self.cocycle.ratio(&self.group, g);
            for i in 0..n {
                let img = alg.mul(&sigma.apply(&alg.basis(i)), &factor).scale(&ratio);
                columns.push(self.embed(&img, g).into_coeffs());
            }
        }
        let mat = Matrix::from_columns(n * m, &columns);
        Ok(LinearMap::endomorphism(&self.algebra, mat)?)
    }
}

/// Which way the factor `g σ(jac)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    /// `g(σ(jac))`.
    ActionAfterTwist,
    /// `σ(g(jac))`.
    TwistAfterAction,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Gf, Q};
    use crate::frobenius::make_frobenius;
    use crate::gallery::{exterior, qci};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Q {
        Q::from_int(&FieldSpec::Rationals, n)
    }

    #[test]
    fn trivial_group_gives_a_copy() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let g = Group::cyclic(1).unwrap();
        let cp = build_crossed_product(&s.algebra, &g, &GroupAction::trivial(&s.algebra, &g), &TwoCocycle::trivial(&s.algebra, &g))
            .unwrap();
        assert_eq!(cp.algebra.structure(), s.algebra.structure());
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        assert_eq!(&cp.crossed_form(&f), f.gram());
        assert_eq!(cp.predicted_nakayama(&f).unwrap().matrix(), f.sigma().matrix());
    }

    #[test]
    fn exterior_one_sign_action() {
        let e = exterior::<Q>(&FieldSpec::Rationals, 1).unwrap();
        let f = make_frobenius(&e.algebra, &e.gram).unwrap();
        let sign = e.phi(&Matrix::from_rows(vec![vec![q(-1)]]).unwrap()).unwrap();
        let (g, action) = GroupAction::involution(&e.algebra, &sign).unwrap();
        let cp = build_crossed_product(&e.algebra, &g, &action, &TwoCocycle::trivial(&e.algebra, &g)).unwrap();
        assert_eq!(cp.algebra.dim(), 4);
        let gram = cp.crossed_form(&f);
        assert_eq!(gram.get(2, 3), &q(-1));
        let direct = make_frobenius(&cp.algebra, &gram).unwrap();
        let predicted = cp.predicted_nakayama(&f).unwrap();
        assert_eq!(predicted.matrix(), direct.sigma().matrix());
        assert_eq!(predicted.apply(&cp.embed(&e.algebra.unit(), 1)), cp.embed(&e.algebra.unit(), 1).scale(&q(-1)));
    }

    #[test]
    fn qci_involution_with_sampled_cocycle() {
        let s = qci(&FieldSpec::Rationals, q(3)).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let u = s.alpha(&q(-1), &q(1), &q(0), &q(1)).unwrap();
        let (g, action) = GroupAction::involution(&s.algebra, &u).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let alpha = sample_cocycle(&s.algebra, &g, &mut rng).unwrap();
        let cp = build_crossed_product(&s.algebra, &g, &action, &alpha).unwrap();
        let direct = make_frobenius(&cp.algebra, &cp.crossed_form(&f)).unwrap();
        assert_eq!(cp.predicted_nakayama(&f).unwrap().matrix(), direct.sigma().matrix());
    }

    #[test]
    fn cyclic_three_inversion() {
        let f3 = FieldSpec::prime(3).unwrap();
        let c = crate::gallery::cyclic::<Gf>(&f3).unwrap();
        let f = make_frobenius(&c.algebra, &c.gram).unwrap();
        let inv = c.u_f(&c.algebra.element_from_ints(&[0, 2, 1])).unwrap();
        let (g, action) = GroupAction::involution(&c.algebra, &inv).unwrap();
        let cp = build_crossed_product(&c.algebra, &g, &action, &TwoCocycle::trivial(&c.algebra, &g)).unwrap();
        let direct = make_frobenius(&cp.algebra, &cp.crossed_form(&f)).unwrap();
        assert_eq!(cp.predicted_nakayama(&f).unwrap().matrix(), direct.sigma().matrix());
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let g = Group::cyclic(2).unwrap();
        let bad = vec![vec![q(1), q(1)], vec![q(1), q(2)]];
        assert!(TwoCocycle::new(&g, bad).is_ok());
        let g3 = Group::cyclic(3).unwrap();
        let mut v = vec![vec![q(1); 3]; 3];
        v[1][1] = q(2);
        assert!(matches!(TwoCocycle::new(&g3, v), Err(CrossedError::NotCocycle(..))));
        let u = s.alpha(&q(2), &q(1), &q(0), &q(0)).unwrap();
        assert!(matches!(GroupAction::involution(&s.algebra, &u), Err(CrossedError::NotHomomorphism(1, 1))));
    }
}

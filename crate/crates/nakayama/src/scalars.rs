//! Moving finite-field algebras between `F_p` and `F_{p^k}`.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinearMap};
use crate::field::{Field, FieldError, FieldSpec, Gf};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarsError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("characteristic mismatch: {0} vs {1}")]
    Characteristic(FieldSpec, FieldSpec),
    #[error("the functional must be nonzero")]
    ZeroFunctional,
    #[error("functional needs {expected} values, got {got}")]
    FunctionalLength { expected: usize, got: usize },
    #[error("expected an algebra over a prime field, got {0}")]
    NotPrimeField(FieldSpec),
}

fn embed_all(values: &[Gf], spec: &FieldSpec) -> Result<Vec<Gf>, ScalarsError> {
    values.iter().map(|c| c.embed(spec).map_err(ScalarsError::from)).collect()
}

/// The same structure constants read over `ext`.
pub fn extend_scalars(alg: &Algebra<Gf>, ext: &FieldSpec) -> Result<Algebra<Gf>, ScalarsError> {
    let base = alg.field();
    if base.degree() != 1 {
        return Err(ScalarsError::NotPrimeField(base.clone()));
    }
    if base.characteristic() != ext.characteristic() {
        return Err(ScalarsError::Characteristic(base.clone(), ext.clone()));
    }
    let structure = alg
        .structure()
        .into_iter()
        .map(|(i, j, k, c)| Ok((i, j, k, c.embed(ext)?)))
        .collect::<Result<Vec<_>, FieldError>>()?;
    let unit = embed_all(alg.unit().coeffs(), ext)?;
    Ok(Algebra::new(ext.clone(), alg.basis_names().to_vec(), structure, unit)?)
}

/// Matrix (Gram or map) over the prime field, read over `ext`.
pub fn extend_matrix(m: &Matrix<Gf>, ext: &FieldSpec) -> Result<Matrix<Gf>, ScalarsError> {
    let data = embed_all(m.entries(), ext)?;
    Ok(Matrix::from_fn(m.rows(), m.cols(), |i, j| data[i * m.cols() + j]))
}

pub fn extend_element(a: &Element<Gf>, ext: &FieldSpec) -> Result<Element<Gf>, ScalarsError> {
    Ok(Element::new(embed_all(a.coeffs(), ext)?))
}

/// An algebra over `F_{p^k}` viewed over `F_p`; basis index `i·k + s`
/// stands for `a^s e_i`.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub algebra: Algebra<Gf>,
    source: FieldSpec,
    base: FieldSpec,
    k: usize,
    dim: usize,
}

fn prime_coords(c: &Gf, spec: &FieldSpec, base: &FieldSpec) -> Result<Vec<Gf>, ScalarsError> {
    Ok(c.coeffs_in(spec)?.into_iter().map(|x| Gf::from_int(base, x as i64)).collect())
}

pub fn restrict_scalars(alg: &Algebra<Gf>) -> Result<Restricted, ScalarsError> {
    let source = alg.field().clone();
    let p = source.characteristic();
    let base = FieldSpec::prime(p)?;
    let k = source.degree();
    let n = alg.dim();
    let gen = Gf::generator(&source)?;
    let powers: Vec<Gf> = (0..2 * k).map(|s| if k == 1 { Gf::from_int(&source, 1) } else { gen.pow(s as u64) }).collect();
    let mut structure = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (l, c) in alg.basis_product(i, j) {
                for s in 0..k {
                    for t in 0..k {
                        let coeff = powers[s + t].mul_ref(c);
                        for (r, x) in prime_coords(&coeff, &source, &base)?.into_iter().enumerate() {
                            if !x.is_zero() {
                                structure.push((i * k + s, j * k + t, l * k + r, x));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut unit = Vec::with_capacity(n * k);
    for c in alg.unit().coeffs() {
        unit.extend(prime_coords(c, &source, &base)?);
    }
    let names = alg
        .basis_names()
        .iter()
        .flat_map(|name| {
            (0..k).map(move |s| match s {
                0 => name.clone(),
                1 => format!("a*{name}"),
                _ => format!("a^{s}*{name}"),
            })
        })
        .collect();
    let algebra = Algebra::new(base.clone(), names, structure, unit)?;
    Ok(Restricted { algebra, source, base, k, dim: n })
}

impl Restricted {
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn base_field(&self) -> &FieldSpec {
        &self.base
    }

    pub fn element(&self, a: &Element<Gf>) -> Result<Element<Gf>, ScalarsError> {
        let mut out = Vec::with_capacity(self.dim * self.k);
        for c in a.coeffs() {
            out.extend(prime_coords(c, &self.source, &self.base)?);
        }
        Ok(Element::new(out))
    }

    /// `F_{p^k}`-linear map read over `F_p`.
    pub fn map(&self, u: &LinearMap<Gf>) -> Result<LinearMap<Gf>, ScalarsError> {
        let k = self.k;
        let gen = Gf::generator(&self.source)?;
        let mut cols = Vec::with_capacity(self.dim * k);
        for j in 0..self.dim {
            let col = u.matrix().column(j);
            for s in 0..k {
                let scale = if k == 1 { Gf::from_int(&self.source, 1) } else { gen.pow(s as u64) };
                let img = Element::new(col.iter().map(|c| c.mul_ref(&scale)).collect());
                cols.push(self.element(&img)?.into_coeffs());
            }
        }
        let m = Matrix::from_columns(self.dim * k, &cols);
        Ok(LinearMap::with_role(&self.algebra, m, u.role())?)
    }

    /// Gram matrix of `ε ∘ ⟨·,·⟩`, with `ε` given by its values on
    /// `1, a, …, a^{k-1}`.
    pub fn gram(&self, gram: &Matrix<Gf>, eps: &[Gf]) -> Result<Matrix<Gf>, ScalarsError> {
        let k = self.k;
        if eps.len() != k {
            return Err(ScalarsError::FunctionalLength { expected: k, got: eps.len() });
        }
        let eps: Vec<Gf> = embed_all(eps, &self.base)?;
        if eps.iter().all(|x| x.is_zero()) {
            return Err(ScalarsError::ZeroFunctional);
        }
        let gen = Gf::generator(&self.source)?;
        let apply_eps = |c: &Gf| -> Result<Gf, ScalarsError> {
            let coords = prime_coords(c, &self.source, &self.base)?;
            Ok(coords.iter().zip(&eps).fold(Gf::from_int(&self.base, 0), |acc, (x, e)| acc + *x * *e))
        };
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n * k * k);
        for i in 0..n {
            for s in 0..k {
                for j in 0..n {
                    for t in 0..k {
                        let power = if k == 1 { Gf::from_int(&self.source, 1) } else { gen.pow((s + t) as u64) };
                        data.push(apply_eps(&power.mul_ref(gram.get(i, j)))?);
                    }
                }
            }
        }
        Ok(Matrix::from_fn(n * k, n * k, |r, c| data[r * n * k + c]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::jacobian;
    use crate::frobenius::make_frobenius;
    use crate::gallery::{qci, truncated_polynomial};

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn f4() -> FieldSpec {
        FieldSpec::extension(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn f4_over_f2_is_a_two_dimensional_field() {
        let k = truncated_polynomial::<Gf>(&f4(), 1).unwrap();
        let r = restrict_scalars(&k).unwrap();
        assert_eq!(r.algebra.dim(), 2);
        let nonzero: Vec<Element<Gf>> =
            vec![r.algebra.basis(0), r.algebra.basis(1), &r.algebra.basis(0) + &r.algebra.basis(1)];
        assert!(nonzero.iter().all(|e| r.algebra.is_unit(e)));
        let dual = truncated_polynomial::<Gf>(&f4(), 2).unwrap();
        assert_eq!(restrict_scalars(&dual).unwrap().algebra.dim(), 4);
    }

    #[test]
    fn extension_keeps_gram_and_jacobian() {
        let one = Gf::from_int(&f2(), 1);
        let s = qci::<Gf>(&f2(), one).unwrap();
        let big = extend_scalars(&s.algebra, &f4()).unwrap();
        assert_eq!(big.field(), &f4());
        let gram = extend_matrix(&s.gram, &f4()).unwrap();
        let f_small = make_frobenius(&s.algebra, &s.gram).unwrap();
        let f_big = make_frobenius(&big, &gram).unwrap();
        let u = s.alpha(&one, &one, &one, &Gf::from_int(&f2(), 0)).unwrap();
        let u_big = LinearMap::endomorphism(&big, extend_matrix(u.matrix(), &f4()).unwrap()).unwrap();
        let j_small = jacobian(&f_small, &u).unwrap();
        assert_eq!(jacobian(&f_big, &u_big).unwrap(), extend_element(&j_small, &f4()).unwrap());
    }

    #[test]
    fn restriction_keeps_nakayama() {
        let a = Gf::generator(&f4()).unwrap();
        let s = qci::<Gf>(&f4(), a).unwrap();
        let f = make_frobenius(&s.algebra, &s.gram).unwrap();
        let r = restrict_scalars(&s.algebra).unwrap();
        let eps = [Gf::from_int(&f2(), 0), Gf::from_int(&f2(), 1)];
        let g = r.gram(&s.gram, &eps).unwrap();
        let fr = make_frobenius(&r.algebra, &g).unwrap();
        assert_eq!(fr.sigma().matrix(), r.map(f.sigma()).unwrap().matrix());
        assert_eq!(r.gram(&s.gram, &[Gf::from_int(&f2(), 0); 2]).unwrap_err(), ScalarsError::ZeroFunctional);
    }
}

//! Builders for the example families: exterior algebras, quantum complete
//! intersections, (twisted) trivial extensions, truncated polynomial rings,
//! group algebras and matrix algebras, each with its standard form.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinearMap, Role};
use crate::field::{sign, Field, FieldError, FieldSpec, Gf, Q};
use crate::group::{Group, GroupError};
use crate::linalg::Matrix;
use crate::sparse::{dense_from_sparse, Echelon};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GalleryError {
    #[error("invalid parameters for {family}: {reason}")]
    Params { family: String, reason: String },
    #[error("unknown gallery family {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn params_err(family: &str, reason: impl Into<String>) -> GalleryError {
    GalleryError::Params { family: family.into(), reason: reason.into() }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Gram matrix `G[i][j] = λ(e_i e_j)` of the form `(a, b) ↦ λ(ab)`.
pub fn gram_from_functional<F: Field>(alg: &Algebra<F>, lambda: &[F]) -> Matrix<F> {
    let n = alg.dim();
    Matrix::from_fn(n, n, |i, j| {
        let mut acc = alg.scalar(0);
        for (k, c) in alg.basis_product(i, j) {
            acc.add_mul_assign(c, &lambda[*k]);
        }
        acc
    })
}

/// Left trace form `(a, b) ↦ tr L_{ab}`.
pub fn trace_form<F: Field>(alg: &Algebra<F>) -> Matrix<F> {
    let n = alg.dim();
    let traces: Vec<F> = (0..n)
        .map(|k| {
            let mut t = alg.scalar(0);
            for j in 0..n {
                for (l, c) in alg.basis_product(k, j) {
                    if *l == j {
                        t = t.add_ref(c);
                    }
                }
            }
            t
        })
        .collect();
    gram_from_functional(alg, &traces)
}

// ---------------------------------------------------------------------------
// Exterior algebras

/// Exterior algebra on `x_1..x_n` with the form `∫ a∧b`.
#[derive(Clone, Debug)]
pub struct Exterior<F> {
    pub algebra: Algebra<F>,
    pub gram: Matrix<F>,
    n: usize,
    masks: Vec<u32>,
    index: HashMap<u32, usize>,
}

pub const MAX_EXTERIOR_GENERATORS: usize = 6;

/// Sign of `e_S ∧ e_T` for disjoint subsets given as bit masks.
fn wedge_sign(s: u32, t: u32) -> usize {
    let mut count = 0;
    for a in 0..32 {
        if s & (1 << a) != 0 {
            count += (t & ((1u32 << a) - 1)).count_ones() as usize;
        }
    }
    count
}

fn mask_name(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| format!("x{}", i + 1)).collect()
}

pub fn exterior<F: Field>(field: &FieldSpec, n: usize) -> Result<Exterior<F>, GalleryError> {
    if n == 0 || n > MAX_EXTERIOR_GENERATORS {
        return Err(params_err("exterior", format!("need 1 <= n <= {MAX_EXTERIOR_GENERATORS}, got {n}")));
    }
    if field.characteristic() == 2 {
        return Err(params_err("exterior", "characteristic 2 is excluded"));
    }
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| {
        let bits: Vec<u32> = (0..n as u32).filter(|i| m & (1 << i) != 0).collect();
        (m.count_ones(), bits)
    });
    let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let one = F::from_int(field, 1);
    let mut structure = Vec::new();
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if s & t == 0 {
                structure.push((i, j, index[&(s | t)], sign::<F>(field, wedge_sign(s, t))));
            }
        }
    }
    let mut unit = vec![F::from_int(field, 0); masks.len()];
    unit[0] = one.clone();
    let algebra = Algebra::new(field.clone(), masks.iter().map(|&m| mask_name(m)).collect(), structure, unit)?;
    let mut top = vec![F::from_int(field, 0); masks.len()];
    top[masks.len() - 1] = one;
    let gram = gram_from_functional(&algebra, &top);
    Ok(Exterior { algebra, gram, n, masks, index })
}

impl<F: Field> Exterior<F> {
    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn monomial(&self, mask: u32) -> Element<F> {
        self.algebra.basis(self.index[&mask])
    }

    /// `x_{i+1}` (zero-based index).
    pub fn generator(&self, i: usize) -> Element<F> {
        self.monomial(1 << i)
    }

    pub fn basis_mask(&self, idx: usize) -> u32 {
        self.masks[idx]
    }

    fn has_parity(&self, a: &Element<F>, odd: bool) -> bool {
        a.coeffs()
            .iter()
            .zip(&self.masks)
            .all(|(c, m)| c.is_zero() || (m.count_ones() % 2 == 1) == odd)
    }

    pub fn is_odd(&self, a: &Element<F>) -> bool {
        self.has_parity(a, true)
    }

    pub fn is_even(&self, a: &Element<F>) -> bool {
        self.has_parity(a, false)
    }

    /// The endomorphism with `x_i ↦ images[i]`, extended multiplicatively.
    pub fn from_generator_images(&self, images: &[Element<F>]) -> Result<LinearMap<F>, GalleryError> {
        if images.len() != self.n {
            return Err(params_err("exterior", "one image per generator required"));
        }
        let alg = &self.algebra;
        let cols: Vec<Vec<F>> = self
            .masks
            .iter()
            .map(|&m| {
                let mut acc = alg.unit();
                for (i, img) in images.iter().enumerate() {
                    if m & (1 << i) != 0 {
                        acc = alg.mul(&acc, img);
                    }
                }
                acc.into_coeffs()
            })
            .collect();
        let m = Matrix::from_columns(alg.dim(), &cols);
        Ok(LinearMap::endomorphism(alg, m)?)
    }

    /// `φ_f`: `x_j ↦ Σ_i f_ij x_i`.
    pub fn phi(&self, f: &Matrix<F>) -> Result<LinearMap<F>, GalleryError> {
        if f.rows() != self.n || f.cols() != self.n {
            return Err(params_err("exterior", "phi needs an n x n matrix"));
        }
        let images: Vec<Element<F>> = (0..self.n)
            .map(|j| {
                (0..self.n).fold(self.algebra.zero(), |acc, i| &acc + &self.generator(i).scale(f.get(i, j)))
            })
            .collect();
        self.from_generator_images(&images)
    }

    /// `γ_{i,λ,α}`: `x_i ↦ x_i + λ x_{α1} x_{α2} x_{α3}`, other generators
    /// fixed. Indices are zero-based; `alpha` must be strictly increasing.
    pub fn gamma(&self, i: usize, lambda: &F, alpha: [usize; 3]) -> Result<LinearMap<F>, GalleryError> {
        if i >= self.n || alpha[2] >= self.n || !(alpha[0] < alpha[1] && alpha[1] < alpha[2]) {
            return Err(params_err("exterior", "gamma needs i < n and an increasing 3-subset"));
        }
        let mask = alpha.iter().fold(0u32, |m, &a| m | (1 << a));
        let images: Vec<Element<F>> = (0..self.n)
            .map(|j| {
                if j == i {
                    &self.generator(j) + &self.monomial(mask).scale(lambda)
                } else {
                    self.generator(j)
                }
            })
            .collect();
        self.from_generator_images(&images)
    }

    /// `ι_{1+a}` for an odd element `a`.
    pub fn inner_one_plus(&self, a: &Element<F>) -> Result<LinearMap<F>, GalleryError> {
        if !self.is_odd(a) {
            return Err(params_err("exterior", "inner_one_plus needs an odd element"));
        }
        Ok(self.algebra.inner_automorphism(&(&self.algebra.unit() + a))?)
    }

    /// Left skew derivation `∂_j` with `∂_j(x_i) = δ_ij` (zero-based `j`).
    pub fn skew_partial(&self, j: usize) -> Matrix<F> {
        let alg = &self.algebra;
        let field = alg.field().clone();
        let cols: Vec<Vec<F>> = self
            .masks
            .iter()
            .map(|&m| {
                let mut v = vec![alg.scalar(0); alg.dim()];
                if m & (1 << j) != 0 {
                    let before = (m & ((1u32 << j) - 1)).count_ones() as usize;
                    v[self.index[&(m & !(1 << j))]] = sign(&field, before);
                }
                v
            })
            .collect();
        Matrix::from_columns(alg.dim(), &cols)
    }

    /// The derivation `Σ a_i ∂_i` for odd coefficients `a_i`.
    pub fn odd_derivation(&self, coeffs: &[Element<F>]) -> Result<LinearMap<F>, GalleryError> {
        if coeffs.len() != self.n || coeffs.iter().any(|a| !self.is_odd(a)) {
            return Err(params_err("exterior", "odd_derivation needs n odd coefficients"));
        }
        let alg = &self.algebra;
        let mut m = Matrix::zeros(alg.dim(), alg.dim());
        for (i, a) in coeffs.iter().enumerate() {
            m = m.add(&alg.left_mult_matrix(a).mul(&self.skew_partial(i)));
        }
        Ok(LinearMap::derivation(alg, m)?)
    }

    /// `x^α` for a zero-based subset.
    pub fn monomial_of(&self, subset: &[usize]) -> Element<F> {
        let mut acc = self.algebra.unit();
        for &a in subset {
            acc = self.algebra.mul(&acc, &self.generator(a));
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Quantum complete intersection

/// `k⟨x,y⟩/(x², y², yx − q·xy)` in the basis `1, x, y, xy`, with the form
/// `λ(ab)`, `λ` reading the `xy` coefficient.
#[derive(Clone, Debug)]
pub struct Qci<F> {
    pub algebra: Algebra<F>,
    pub gram: Matrix<F>,
    q: F,
}

pub fn qci<F: Field>(field: &FieldSpec, q: F) -> Result<Qci<F>, GalleryError> {
    let q = F::from_int(field, 0) + q;
    if q.is_zero() {
        return Err(params_err("qci", "q must be nonzero"));
    }
    let one = F::from_int(field, 1);
    let mut structure: Vec<(usize, usize, usize, F)> = Vec::new();
    for i in 0..4 {
        structure.push((0, i, i, one.clone()));
        if i != 0 {
            structure.push((i, 0, i, one.clone()));
        }
    }
    structure.push((1, 2, 3, one.clone()));
    structure.push((2, 1, 3, q.clone()));
    let zero = F::from_int(field, 0);
    let unit = vec![one.clone(), zero.clone(), zero.clone(), zero.clone()];
    let algebra = Algebra::new(field.clone(), names(&["1", "x", "y", "xy"]), structure, unit)?;
    let gram = gram_from_functional(&algebra, &[zero.clone(), zero.clone(), zero, one]);
    Ok(Qci { algebra, gram, q })
}

impl<F: Field> Qci<F> {
    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn x(&self) -> Element<F> {
        self.algebra.basis(1)
    }

    pub fn y(&self) -> Element<F> {
        self.algebra.basis(2)
    }

    pub fn xy(&self) -> Element<F> {
        self.algebra.basis(3)
    }

    fn elem(&self, c: [F; 4]) -> Element<F> {
        self.algebra.element(c.to_vec()).expect("length 4")
    }

    /// The endomorphism `x ↦ ax + c·xy`, `y ↦ by + d·xy`.
    pub fn alpha(&self, a: &F, b: &F, c: &F, d: &F) -> Result<LinearMap<F>, GalleryError> {
        let z = self.algebra.scalar(0);
        let one = self.algebra.scalar(1);
        let cols = vec![
            vec![one, z.clone(), z.clone(), z.clone()],
            vec![z.clone(), a.clone(), z.clone(), c.clone()],
            vec![z.clone(), z.clone(), b.clone(), d.clone()],
            vec![z.clone(), z.clone(), z, a.mul_ref(b)],
        ];
        let m = Matrix::from_columns(4, &cols);
        Ok(LinearMap::endomorphism(&self.algebra, m)?)
    }

    /// The derivation `x ↦ ax + c·xy`, `y ↦ by + d·xy`.
    pub fn delta(&self, a: &F, b: &F, c: &F, d: &F) -> Result<LinearMap<F>, GalleryError> {
        let z = self.algebra.scalar(0);
        let cols = vec![
            vec![z.clone(); 4],
            vec![z.clone(), a.clone(), z.clone(), c.clone()],
            vec![z.clone(), z.clone(), b.clone(), d.clone()],
            vec![z.clone(), z.clone(), z, a.add_ref(b)],
        ];
        let m = Matrix::from_columns(4, &cols);
        Ok(LinearMap::derivation(&self.algebra, m)?)
    }

    /// Closed form `ab + d·x + q⁻¹c·y` of the Jacobian of `alpha(a,b,c,d)`.
    pub fn expected_jacobian(&self, a: &F, b: &F, c: &F, d: &F) -> Element<F> {
        let qi = self.q.inverse().expect("q nonzero");
        self.elem([a.mul_ref(b), d.clone(), qi.mul_ref(c), self.algebra.scalar(0)])
    }

    /// Closed form `(a+b) + q⁻¹d·x + c·y` of the divergence of `delta(a,b,c,d)`.
    pub fn expected_divergence(&self, a: &F, b: &F, c: &F, d: &F) -> Element<F> {
        let qi = self.q.inverse().expect("q nonzero");
        self.elem([a.add_ref(b), qi.mul_ref(d), c.clone(), self.algebra.scalar(0)])
    }
}

// ---------------------------------------------------------------------------
// Truncated polynomial rings and the cyclic p-group algebra

/// `k[t]/(t^m)` in the basis `1, t, …, t^{m-1}`.
pub fn truncated_polynomial<F: Field>(field: &FieldSpec, m: usize) -> Result<Algebra<F>, GalleryError> {
    if m == 0 {
        return Err(params_err("truncated", "m must be positive"));
    }
    let one = F::from_int(field, 1);
    let mut structure = Vec::new();
    for i in 0..m {
        for j in 0..m - i {
            structure.push((i, j, i + j, one.clone()));
        }
    }
    let basis = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    let mut unit = vec![F::from_int(field, 0); m];
    unit[0] = one;
    Ok(Algebra::new(field.clone(), basis, structure, unit)?)
}

/// The symmetric form `⟨t^i, t^j⟩ = [i + j = m − 1]` on `k[t]/(t^m)`.
pub fn truncated_gram<F: Field>(alg: &Algebra<F>) -> Matrix<F> {
    let m = alg.dim();
    let mut top = vec![alg.scalar(0); m];
    top[m - 1] = alg.scalar(1);
    gram_from_functional(alg, &top)
}

/// `k[x]/(x^p)` over a field of characteristic `p`, with
/// `⟨x^i, x^j⟩ = (−1)^{i+j}` when `i + j < p` and 0 otherwise. This is the
/// group algebra of `Z/p` in the basis of powers of `c − 1`.
#[derive(Clone, Debug)]
pub struct Cyclic<F> {
    pub algebra: Algebra<F>,
    pub gram: Matrix<F>,
    p: usize,
}

pub fn cyclic<F: Field>(field: &FieldSpec) -> Result<Cyclic<F>, GalleryError> {
    let p = field.characteristic() as usize;
    if p == 0 {
        return Err(params_err("cyclic", "needs a field of positive characteristic"));
    }
    if p > 64 {
        return Err(params_err("cyclic", "characteristic too large for a dense example"));
    }
    let mut algebra = truncated_polynomial::<F>(field, p)?;
    let basis = (0..p)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    algebra = Algebra::new(field.clone(), basis, algebra.structure(), algebra.unit().into_coeffs())?;
    let lambda: Vec<F> = (0..p).map(|k| sign(field, k)).collect();
    let gram = gram_from_functional(&algebra, &lambda);
    Ok(Cyclic { algebra, gram, p })
}

impl<F: Field> Cyclic<F> {
    pub fn p(&self) -> usize {
        self.p
    }

    /// Whether `f` lies in `rad A \ rad² A`.
    pub fn in_r(&self, f: &Element<F>) -> bool {
        f[0].is_zero() && !f[1].is_zero()
    }

    /// The automorphism `u_f` with `x ↦ f`, for `f` in `rad A \ rad² A`.
    pub fn u_f(&self, f: &Element<F>) -> Result<LinearMap<F>, GalleryError> {
        let alg = &self.algebra;
        let cols: Vec<Vec<F>> = (0..self.p).map(|j| alg.pow(f, j).into_coeffs()).collect();
        let m = Matrix::from_columns(self.p, &cols);
        Ok(LinearMap::endomorphism(alg, m)?)
    }

    /// `μ(a) = Σ (−1)^i a_i`, i.e. `⟨a, 1⟩`.
    pub fn mu(&self, a: &Element<F>) -> F {
        let field = self.algebra.field().clone();
        a.coeffs()
            .iter()
            .enumerate()
            .fold(self.algebra.scalar(0), |acc, (i, c)| acc.add_ref(&c.mul_ref(&sign(&field, i))))
    }

    /// Closed form of `jac(u_f)` in terms of `μ` of the powers of `f`.
    pub fn expected_jacobian(&self, f: &Element<F>) -> Element<F> {
        let alg = &self.algebra;
        let p = self.p;
        let mu_pow = |k: usize| self.mu(&alg.pow(f, k));
        let mut coeffs = vec![mu_pow(p - 1)];
        for i in 1..p {
            coeffs.push(mu_pow(p - 1 - i).add_ref(&mu_pow(p - i)));
        }
        Element::new(coeffs)
    }
}

// ---------------------------------------------------------------------------
// Trivial extensions

/// `A = B ⊕ DB` with `(x,x')(y,y') = (xy, x·y' + x'·y)`; basis: `B`'s basis
/// then the dual basis. With a twist `τ ∈ Aut(B)` the left action on `DB` is
/// `(x·λ)(y) = λ(y τ(x))` and the form is `x'(y) + y'(τ x)`.
#[derive(Clone, Debug)]
pub struct TrivialExtension<F> {
    pub algebra: Algebra<F>,
    pub gram: Matrix<F>,
    base: Algebra<F>,
    twist: Option<LinearMap<F>>,
}

pub fn trivial_extension<F: Field>(
    base: &Algebra<F>,
    twist: Option<&LinearMap<F>>,
) -> Result<TrivialExtension<F>, GalleryError> {
    let m = base.dim();
    let field = base.field().clone();
    let t = match twist {
        Some(t) => {
            let map = LinearMap::endomorphism(base, t.matrix().clone())?;
            if !map.is_invertible() {
                return Err(params_err("trivial-extension", "twist must be an automorphism"));
            }
            map.matrix().clone()
        }
        None => Matrix::identity(m),
    };
    let mut structure = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for (k, c) in base.basis_product(i, j) {
                structure.push((i, j, *k, c.clone()));
                // b^k · b_i has coefficient c_{ij}^k at b^j
                structure.push((m + *k, i, m + j, c.clone()));
            }
        }
    }
    // b_i · b^j = Σ_k (Σ_l T[l][i] c_{kl}^j) b^k
    for i in 0..m {
        for k in 0..m {
            for l in 0..m {
                let tli = t.get(l, i);
                if tli.is_zero() {
                    continue;
                }
                for (j, c) in base.basis_product(k, l) {
                    structure.push((i, m + *j, m + k, tli.mul_ref(c)));
                }
            }
        }
    }
    let basis: Vec<String> = base
        .basis_names()
        .iter()
        .cloned()
        .chain(base.basis_names().iter().map(|s| format!("{s}*")))
        .collect();
    let mut unit = base.unit().into_coeffs();
    unit.extend(vec![F::from_int(&field, 0); m]);
    let algebra = Algebra::new(field.clone(), basis, structure, unit)?;
    let gram = Matrix::from_fn(2 * m, 2 * m, |a, b| match (a < m, b < m) {
        (true, false) => t.get(b - m, a).clone(),
        (false, true) => {
            if a - m == b {
                F::from_int(&field, 1)
            } else {
                F::from_int(&field, 0)
            }
        }
        _ => F::from_int(&field, 0),
    });
    Ok(TrivialExtension { algebra, gram, base: base.clone(), twist: twist.cloned() })
}

impl<F: Field> TrivialExtension<F> {
    pub fn base(&self) -> &Algebra<F> {
        &self.base
    }

    pub fn twist(&self) -> Option<&LinearMap<F>> {
        self.twist.as_ref()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// `(x, λ)` as an element of `A`.
    pub fn pair(&self, x: &Element<F>, lambda: &[F]) -> Element<F> {
        let mut c = x.coeffs().to_vec();
        c.extend(lambda.iter().cloned());
        Element::new(c)
    }

    /// Split an element into its `B` part and its `DB` coordinates.
    pub fn split(&self, a: &Element<F>) -> (Element<F>, Vec<F>) {
        let m = self.base_dim();
        (Element::new(a.coeffs()[..m].to_vec()), a.coeffs()[m..].to_vec())
    }

    /// Assemble `[[a, b], [c, d]]` with `a: B→B`, `b: DB→B`, `c: B→DB`,
    /// `d: DB→DB` (all `m x m`).
    pub fn block_matrix(&self, a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>, d: &Matrix<F>) -> Matrix<F> {
        let m = self.base_dim();
        Matrix::from_fn(2 * m, 2 * m, |i, j| {
            let blk = match (i < m, j < m) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            blk.get(i % m, j % m).clone()
        })
    }

    pub fn blocks(&self, u: &Matrix<F>) -> [Matrix<F>; 4] {
        let m = self.base_dim();
        let blk = |ro: usize, co: usize| Matrix::from_fn(m, m, |i, j| u.get(ro + i, co + j).clone());
        [blk(0, 0), blk(0, m), blk(m, 0), blk(m, m)]
    }

    /// `u_z = diag(id, m_zᵀ)` for a central unit `z` of `B`, where
    /// `(m_zᵀ λ)(y) = λ(zy)`.
    pub fn u_z(&self, z: &Element<F>) -> Result<LinearMap<F>, GalleryError> {
        if !self.base.is_central(z) || !self.base.is_unit(z) {
            return Err(params_err("trivial-extension", "u_z needs a central unit of B"));
        }
        let m = self.base_dim();
        let mt = self.base.left_mult_matrix(z).transpose();
        let u = self.block_matrix(&Matrix::identity(m), &Matrix::zeros(m, m), &Matrix::zeros(m, m), &mt);
        Ok(LinearMap::endomorphism(&self.algebra, u)?)
    }

    /// `diag(a, a^{-T})` for an automorphism `a` of `B` (untwisted case).
    pub fn lift(&self, a: &LinearMap<F>) -> Result<LinearMap<F>, GalleryError> {
        if self.twist.is_some() {
            return Err(params_err("trivial-extension", "lift is only defined without a twist"));
        }
        let a = LinearMap::endomorphism(&self.base, a.matrix().clone())?;
        let inv = a.inverse().ok_or(AlgebraError::NotInvertible)?;
        let m = self.base_dim();
        let u = self.block_matrix(a.matrix(), &Matrix::zeros(m, m), &Matrix::zeros(m, m), &inv.matrix().transpose());
        Ok(LinearMap::endomorphism(&self.algebra, u)?)
    }

    /// `[[id, 0], [δ, m_tᵀ]]` for a derivation `δ: B → DB` and a central unit
    /// `t` of `B`.
    pub fn from_dual_derivation(&self, delta: &Matrix<F>, t: &Element<F>) -> Result<LinearMap<F>, GalleryError> {
        if !self.base.is_central(t) || !self.base.is_unit(t) {
            return Err(params_err("trivial-extension", "t must be a central unit of B"));
        }
        let m = self.base_dim();
        let mt = self.base.left_mult_matrix(t).transpose();
        let u = self.block_matrix(&Matrix::identity(m), &Matrix::zeros(m, m), delta, &mt);
        Ok(LinearMap::endomorphism(&self.algebra, u)?)
    }

    /// Basis of the derivations `B → DB` (untwisted bimodule), as `m x m`
    /// matrices with column `i` holding the dual coordinates of `δ(b_i)`.
    pub fn dual_derivations(&self) -> Vec<Matrix<F>> {
        let m = self.base_dim();
        let b = &self.base;
        // δ(b_i)(b_k) = D[k][i]; variables D[k][i] at k*m + i.
        let var = |k: usize, i: usize| k * m + i;
        let mut e = Echelon::new(m * m);
        for i in 0..m {
            for j in 0..m {
                // δ(b_i b_j)(b_k) − (b_i·δ(b_j))(b_k) − (δ(b_i)·b_j)(b_k) = 0
                // (b_i·λ)(y) = λ(y b_i);  (λ·b_j)(y) = λ(b_j y)
                for k in 0..m {
                    let mut row = vec![F::zero(); m * m];
                    for (l, c) in b.basis_product(i, j) {
                        row[var(k, *l)] = row[var(k, *l)].add_ref(c);
                    }
                    for (l, c) in b.basis_product(k, i) {
                        row[var(*l, j)] = row[var(*l, j)].sub_ref(c);
                    }
                    for (l, c) in b.basis_product(j, k) {
                        row[var(*l, i)] = row[var(*l, i)].sub_ref(c);
                    }
                    e.insert(crate::sparse::sparse_from_dense(&row));
                }
            }
        }
        e.kernel()
            .into_iter()
            .map(|v| {
                let d = dense_from_sparse(&v, m * m);
                Matrix::from_fn(m, m, |k, i| b.tag(d[var(k, i)].clone()))
            })
            .collect()
    }

    /// The decomposition `jac = t + τ` read off the blocks of `u`:
    /// `x'(t) = d(x')(1)` and `τ(x) = c(x)(1)`.
    pub fn jacobian_from_blocks(&self, u: &Matrix<F>) -> (Element<F>, Vec<F>) {
        let [_, _, c, d] = self.blocks(u);
        let one = self.base.unit();
        let m = self.base_dim();
        let eval_at_one = |blk: &Matrix<F>, i: usize| -> F {
            (0..m).fold(self.base.scalar(0), |acc, j| acc.add_ref(&blk.get(j, i).mul_ref(&one[j])))
        };
        let t = Element::new((0..m).map(|i| eval_at_one(&d, i)).collect());
        let tau = (0..m).map(|i| eval_at_one(&c, i)).collect();
        (t, tau)
    }
}

// ---------------------------------------------------------------------------
// Group algebras and matrix algebras

/// `kG` with the symmetric form `⟨g, h⟩ = [gh = e]`.
pub fn group_algebra<F: Field>(field: &FieldSpec, group: &Group) -> Result<(Algebra<F>, Matrix<F>), GalleryError> {
    let m = group.order();
    let one = F::from_int(field, 1);
    let mut structure = Vec::with_capacity(m * m);
    for g in 0..m {
        for h in 0..m {
            structure.push((g, h, group.mul(g, h), one.clone()));
        }
    }
    let mut unit = vec![F::from_int(field, 0); m];
    unit[group.identity()] = one;
    let alg = Algebra::new(field.clone(), group.names().to_vec(), structure, unit)?;
    let gram = Matrix::from_fn(m, m, |g, h| {
        if group.mul(g, h) == group.identity() {
            F::from_int(field, 1)
        } else {
            F::from_int(field, 0)
        }
    });
    Ok((alg, gram))
}

/// `M_n(k)` in the basis of matrix units `E_ij` (row-major).
pub fn matrix_algebra<F: Field>(field: &FieldSpec, n: usize) -> Result<Algebra<F>, GalleryError> {
    if n == 0 {
        return Err(params_err("matrix", "n must be positive"));
    }
    let one = F::from_int(field, 1);
    let idx = |i: usize, j: usize| i * n + j;
    let mut structure = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                structure.push((idx(i, j), idx(j, l), idx(i, l), one.clone()));
            }
        }
    }
    let mut unit = vec![F::from_int(field, 0); n * n];
    for i in 0..n {
        unit[idx(i, i)] = one.clone();
    }
    let basis = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
    Ok(Algebra::new(field.clone(), basis, structure, unit)?)
}

/// Direct sum of two square matrices.
pub fn block_diagonal<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let (n1, n2) = (a.rows(), b.rows());
    Matrix::from_fn(n1 + n2, n1 + n2, |i, j| match (i < n1, j < n1) {
        (true, true) => a.get(i, j).clone(),
        (false, false) => b.get(i - n1, j - n1).clone(),
        _ => F::zero(),
    })
}

// ---------------------------------------------------------------------------
// Registry

/// A named algebra with its Gram matrix.
/// The builder object a gallery structure came from, kept for
/// family-specific maps and closed forms.
#[derive(Clone, Debug)]
pub enum Family<F> {
    Exterior(Exterior<F>),
    Qci(Qci<F>),
    Cyclic(Cyclic<F>),
    TrivialExtension(TrivialExtension<F>),
    Matrix(usize),
    GroupAlgebra(Group),
    Truncated(usize),
    /// Read from a file; no family-specific generators or closed forms.
    Custom,
}

#[derive(Clone, Debug)]
pub struct Structure<F> {
    pub name: String,
    pub algebra: Algebra<F>,
    pub gram: Matrix<F>,
    pub family: Family<F>,
}

/// Gallery output over either ground field type.
#[derive(Clone, Debug)]
pub enum GalleryStructure {
    Rational(Structure<Q>),
    Finite(Structure<Gf>),
}

impl GalleryStructure {
    pub fn name(&self) -> &str {
        match self {
            GalleryStructure::Rational(s) => &s.name,
            GalleryStructure::Finite(s) => &s.name,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GalleryStructure::Rational(s) => s.algebra.dim(),
            GalleryStructure::Finite(s) => s.algebra.dim(),
        }
    }
}

/// Parameters understood by [`build_gallery`]; unused fields are ignored.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GalleryParams {
    /// Generators (exterior), matrix size (matrix), letters (symmetric-group),
    /// truncation degree (truncated).
    pub n: Option<usize>,
    /// QCI parameter as a scalar string.
    pub q: Option<String>,
    /// Characteristic for the cyclic family.
    pub p: Option<u64>,
    /// Trivial-extension base: `field`, `dual-numbers` or `m2`.
    pub base: Option<String>,
    /// Group-algebra form: `standard` (default) or `trace`.
    pub form: Option<String>,
}

pub const FAMILIES: &[&str] =
    &["exterior", "qci", "trivial-extension", "cyclic", "matrix", "symmetric-group", "truncated"];

pub fn build_gallery(name: &str, params: &GalleryParams) -> Result<GalleryStructure, GalleryError> {
    let rationals = FieldSpec::Rationals;
    let wrap = |label: String, algebra: Algebra<Q>, gram: Matrix<Q>, family: Family<Q>| {
        GalleryStructure::Rational(Structure { name: label, algebra, gram, family })
    };
    match name {
        "exterior" => {
            let n = params.n.unwrap_or(2);
            let e = exterior::<Q>(&rationals, n)?;
            Ok(wrap(format!("exterior(n={n})"), e.algebra.clone(), e.gram.clone(), Family::Exterior(e)))
        }
        "qci" => {
            let qtext = params.q.clone().unwrap_or_else(|| "2".into());
            let q = Q::parse(&rationals, &qtext)?;
            let s = qci(&rationals, q)?;
            Ok(wrap(format!("qci(q={qtext})"), s.algebra.clone(), s.gram.clone(), Family::Qci(s)))
        }
        "trivial-extension" => {
            let base_name = params.base.clone().unwrap_or_else(|| "dual-numbers".into());
            let base = match base_name.as_str() {
                "field" => truncated_polynomial::<Q>(&rationals, 1)?,
                "dual-numbers" => truncated_polynomial::<Q>(&rationals, 2)?,
                "m2" => matrix_algebra::<Q>(&rationals, 2)?,
                other => return Err(params_err("trivial-extension", format!("unknown base {other:?}"))),
            };
            let te = trivial_extension(&base, None)?;
            Ok(wrap(
                format!("trivial-extension({base_name})"),
                te.algebra.clone(),
                te.gram.clone(),
                Family::TrivialExtension(te),
            ))
        }
        "cyclic" => {
            let p = params.p.unwrap_or(3);
            let spec = FieldSpec::prime(p)?;
            let c = cyclic::<Gf>(&spec)?;
            Ok(GalleryStructure::Finite(Structure {
                name: format!("cyclic(p={p})"),
                algebra: c.algebra.clone(),
                gram: c.gram.clone(),
                family: Family::Cyclic(c),
            }))
        }
        "matrix" => {
            let n = params.n.unwrap_or(2);
            let alg = matrix_algebra::<Q>(&rationals, n)?;
            let gram = trace_form(&alg);
            Ok(wrap(format!("matrix(n={n}, trace form)"), alg, gram, Family::Matrix(n)))
        }
        "symmetric-group" => {
            let k = params.n.unwrap_or(3);
            let group = Group::symmetric(k)?;
            let (alg, gram) = group_algebra::<Q>(&rationals, &group)?;
            match params.form.as_deref().unwrap_or("standard") {
                "standard" => Ok(wrap(format!("group-algebra(S{k})"), alg, gram, Family::GroupAlgebra(group))),
                "trace" => {
                    let g = trace_form(&alg);
                    Ok(wrap(format!("group-algebra(S{k}, trace form)"), alg, g, Family::GroupAlgebra(group)))
                }
                other => Err(params_err("symmetric-group", format!("unknown form {other:?}"))),
            }
        }
        "truncated" => {
            let m = params.n.unwrap_or(2);
            let alg = truncated_polynomial::<Q>(&rationals, m)?;
            let gram = truncated_gram(&alg);
            Ok(wrap(format!("truncated(m={m})"), alg, gram, Family::Truncated(m)))
        }
        other => Err(GalleryError::Unknown(other.to_string())),
    }
}

/// The structures covered by the center-invariance sweep: exterior `n = 1..4`,
/// QCI with `q ∈ {2, 3, 1/2}`, trivial extensions of `Q`, `Q[t]/(t²)`,
/// `M₂(Q)`, cyclic `p ∈ {3, 5}`, `M₂`/`M₃` with the trace form and `Q S₃`.
pub fn standard_gallery() -> Result<Vec<GalleryStructure>, GalleryError> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(build_gallery("exterior", &GalleryParams { n: Some(n), ..Default::default() })?);
    }
    for q in ["2", "3", "1/2"] {
        out.push(build_gallery("qci", &GalleryParams { q: Some(q.into()), ..Default::default() })?);
    }
    for base in ["field", "dual-numbers", "m2"] {
        out.push(build_gallery("trivial-extension", &GalleryParams { base: Some(base.into()), ..Default::default() })?);
    }
    for p in [3, 5] {
        out.push(build_gallery("cyclic", &GalleryParams { p: Some(p), ..Default::default() })?);
    }
    for n in [2, 3] {
        out.push(build_gallery("matrix", &GalleryParams { n: Some(n), ..Default::default() })?);
    }
    out.push(build_gallery("symmetric-group", &GalleryParams::default())?);
    Ok(out)
}

/// Map a `General`-role matrix to an endomorphism of `alg` when valid.
pub fn as_endomorphism<F: Field>(alg: &Algebra<F>, m: Matrix<F>) -> Result<LinearMap<F>, AlgebraError> {
    LinearMap::with_role(alg, m, Role::Endomorphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64) -> Q {
        Q::from_int(&FieldSpec::Rationals, n)
    }

    #[test]
    fn exterior_two_products_and_gram() {
        let e = exterior::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let alg = &e.algebra;
        assert_eq!(alg.basis_names(), &["1", "x1", "x2", "x1x2"]);
        let (x1, x2) = (e.generator(0), e.generator(1));
        assert_eq!(alg.mul(&x1, &x2), alg.basis(3));
        assert_eq!(alg.mul(&x2, &x1), -alg.basis(3));
        assert!(alg.mul(&x1, &x1).is_zero());
        let g = &e.gram;
        assert_eq!(g.get(1, 2), &q(1));
        assert_eq!(g.get(2, 1), &q(-1));
        assert_eq!(g.get(0, 3), &q(1));
        assert_eq!(g.get(3, 0), &q(1));
        let nonzero = g.entries().iter().filter(|x| !x.is_zero()).count();
        assert_eq!(nonzero, 4);
        // ad(x1)(x2) = 2 x1x2
        assert_eq!(alg.ad(&x1).apply(&x2), alg.basis(3).scale(&q(2)));
    }

    #[test]
    fn exterior_rejects_char_two() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(exterior::<Gf>(&f2, 2).is_err());
    }

    #[test]
    fn skew_partial_signs() {
        let e = exterior::<Q>(&FieldSpec::Rationals, 3).unwrap();
        let d2 = LinearMap::general(e.skew_partial(1));
        // ∂_2(x1 x2 x3) = −x1 x3
        let x123 = e.monomial(0b111);
        assert_eq!(d2.apply(&x123), -e.monomial(0b101));
        assert_eq!(d2.apply(&e.generator(1)), e.algebra.unit());
    }

    #[test]
    fn qci_relations_and_gram() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let alg = &s.algebra;
        assert_eq!(alg.mul(&s.y(), &s.x()), s.xy().scale(&q(2)));
        assert!(alg.mul(&s.x(), &s.x()).is_zero());
        let expected = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 2, 0, 0], [1, 0, 0, 0]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s.gram.get(i, j), &q(expected[i][j]));
            }
        }
        assert_eq!(s.gram.rank(), 4);
        // (1+x)(1-x) = 1
        let u = &alg.unit() + &s.x();
        assert_eq!(alg.inverse_of(&u), Some(&alg.unit() - &s.x()));
        assert_eq!(alg.inverse_of(&s.x()), None);
        assert!(alg.left_mult_matrix(&s.x()).mul(&alg.left_mult_matrix(&s.x())).is_zero());
        // ad(y)(x) = (q-1) xy
        assert_eq!(alg.ad(&s.y()).apply(&s.x()), s.xy().scale(&q(1)));
        // ι_{1+x}(y) = y + (1-q) xy
        let iota = alg.inner_automorphism(&u).unwrap();
        assert_eq!(iota.apply(&s.y()), &s.y() + &s.xy().scale(&q(-1)));
    }

    #[test]
    fn qci_center_and_commutators() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let alg = &s.algebra;
        let center = alg.center_basis();
        assert_eq!(center, vec![alg.unit(), s.xy()]);
        assert_eq!(alg.commutator_subspace(None).unwrap(), vec![s.xy()]);
    }

    #[test]
    fn qci_alpha_and_delta_are_valid() {
        let s = qci(&FieldSpec::Rationals, q(3)).unwrap();
        assert!(s.alpha(&q(2), &q(-1), &q(5), &q(7)).is_ok());
        assert!(s.delta(&q(2), &q(-1), &q(5), &q(7)).is_ok());
        assert!(s.algebra.is_derivation(&Matrix::zeros(4, 4)));
        assert!(!s.algebra.is_derivation(&Matrix::identity(4)));
    }

    #[test]
    fn matrix_algebra_facts() {
        let m2 = matrix_algebra::<Q>(&FieldSpec::Rationals, 2).unwrap();
        assert_eq!(m2.center_basis().len(), 1);
        let e11 = m2.basis(0);
        let l = m2.left_mult_matrix(&e11);
        let trace = (0..4).fold(Q::zero(), |acc, i| acc + l.get(i, i).clone());
        assert_eq!(trace, q(2));
        assert_eq!(m2.left_mult_matrix(&m2.unit()), Matrix::identity(4));
        // transpose map E_ij -> E_ji is an anti-automorphism, not an endomorphism
        let transpose = Matrix::from_fn(4, 4, |i, j| {
            let (a, b) = (j / 2, j % 2);
            if i == b * 2 + a {
                Q::one()
            } else {
                Q::zero()
            }
        });
        assert!(matches!(
            m2.endomorphism_violation(&transpose),
            Some(crate::algebra::MapViolation::Pair(_, _))
        ));
    }

    #[test]
    fn trivial_extension_is_symmetric() {
        let b = truncated_polynomial::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let te = trivial_extension(&b, None).unwrap();
        assert_eq!(te.algebra.dim(), 4);
        assert_eq!(te.gram, te.gram.transpose());
        assert_eq!(te.gram.rank(), 4);
        let m2 = matrix_algebra::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let te2 = trivial_extension(&m2, None).unwrap();
        assert_eq!(te2.gram, te2.gram.transpose());
    }

    #[test]
    fn direct_product_qci_m2() {
        let s = qci(&FieldSpec::Rationals, q(2)).unwrap();
        let m2 = matrix_algebra::<Q>(&FieldSpec::Rationals, 2).unwrap();
        let p = s.algebra.direct_product(&m2).unwrap();
        assert_eq!(p.dim(), 8);
        assert_eq!(p.center_basis().len(), 3);
    }

    #[test]
    fn cyclic_gram_signs() {
        let f3 = FieldSpec::prime(3).unwrap();
        let c = cyclic::<Gf>(&f3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i + j < 3 { sign::<Gf>(&f3, i + j) } else { Gf::from_int(&f3, 0) };
                assert_eq!(c.gram.get(i, j), &expected);
            }
        }
    }

    #[test]
    fn standard_gallery_builds() {
        let all = standard_gallery().unwrap();
        assert_eq!(all.len(), 15);
    }
}

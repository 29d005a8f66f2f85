//! Seeded samplers for scalars, elements, units, automorphisms and
//! derivations of gallery structures.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::field::Field;
use crate::frobenius::Frobenius;
use crate::gallery::{Exterior, Family, Structure};
use crate::linalg::Matrix;

/// Attempts before a sampler gives up on finding a unit or invertible matrix.
const ATTEMPTS: usize = 256;

pub fn scalar<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> F {
    alg.tag(F::sample(alg.field(), rng))
}

pub fn nonzero<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> F {
    loop {
        let x = scalar(alg, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn element<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> Element<F> {
    Element::new((0..alg.dim()).map(|_| scalar(alg, rng)).collect())
}

/// A random unit; falls back to a nonzero scalar when sampling keeps
/// missing the unit group.
pub fn unit<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> Element<F> {
    for _ in 0..ATTEMPTS {
        let a = element(alg, rng);
        if alg.is_unit(&a) {
            return a;
        }
    }
    alg.from_scalar(&nonzero(alg, rng))
}

/// A random central unit.
pub fn central_unit<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> Element<F> {
    let center = alg.center_basis();
    for _ in 0..ATTEMPTS {
        let z = center.iter().fold(alg.zero(), |acc, c| &acc + &c.scale(&scalar(alg, rng)));
        if alg.is_unit(&z) {
            return z;
        }
    }
    alg.from_scalar(&nonzero(alg, rng))
}

pub fn invertible_matrix<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, n: usize, rng: &mut R) -> Matrix<F> {
    for _ in 0..ATTEMPTS {
        let m = Matrix::from_fn(n, n, |_, _| scalar(alg, rng));
        if matches!(m.inverse(), Ok(Some(_))) {
            return m;
        }
    }
    Matrix::identity(n)
}

pub fn inner<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, rng: &mut R) -> LinearMap<F> {
    let s = unit(alg, rng);
    alg.inner_automorphism(&s).expect("sampled a unit")
}

/// A random linear combination of a derivation basis.
pub fn derivation<F: Field, R: Rng + ?Sized>(alg: &Algebra<F>, basis: &[LinearMap<F>], rng: &mut R) -> LinearMap<F> {
    let m = basis
        .iter()
        .fold(Matrix::zeros(alg.dim(), alg.dim()), |acc, d| acc.add(&d.matrix().scale(&scalar(alg, rng))));
    LinearMap::derivation(alg, m).expect("combination of derivations")
}

/// A random odd element of an exterior algebra.
pub fn odd_element<F: Field, R: Rng + ?Sized>(ext: &Exterior<F>, rng: &mut R) -> Element<F> {
    let alg = &ext.algebra;
    let coeffs = (0..alg.dim())
        .map(|i| if ext.basis_mask(i).count_ones() % 2 == 1 { scalar(alg, rng) } else { alg.scalar(0) })
        .collect();
    Element::new(coeffs)
}

/// A random generator of the odd automorphisms: some `φ_f` or `γ_{i,λ,α}`.
pub fn odd_automorphism<F: Field, R: Rng + ?Sized>(ext: &Exterior<F>, rng: &mut R) -> LinearMap<F> {
    let n = ext.generators();
    if n >= 3 && rng.gen_bool(0.5) {
        let mut letters: Vec<usize> = (0..n).collect();
        letters.shuffle(rng);
        let mut alpha = [letters[0], letters[1], letters[2]];
        alpha.sort_unstable();
        let i = rng.gen_range(0..n);
        return ext.gamma(i, &nonzero(&ext.algebra, rng), alpha).expect("valid gamma");
    }
    ext.phi(&invertible_matrix(&ext.algebra, n, rng)).expect("invertible f")
}

/// One automorphism drawn from the generator set of the structure's family,
/// always including inner automorphisms and the Nakayama automorphism.
pub fn automorphism<F: Field, R: Rng + ?Sized>(s: &Structure<F>, fr: &Frobenius<F>, rng: &mut R) -> LinearMap<F> {
    let alg = &s.algebra;
    let pick = rng.gen_range(0..4);
    if pick == 0 {
        return fr.sigma().clone();
    }
    if pick == 1 {
        return inner(alg, rng);
    }
    match &s.family {
        Family::Exterior(e) => {
            if pick == 2 {
                odd_automorphism(e, rng)
            } else {
                e.inner_one_plus(&odd_element(e, rng)).expect("odd element")
            }
        }
        Family::Qci(q) => {
            let (a, b) = (nonzero(alg, rng), nonzero(alg, rng));
            q.alpha(&a, &b, &scalar(alg, rng), &scalar(alg, rng)).expect("valid alpha")
        }
        Family::Cyclic(c) => {
            let mut f = vec![alg.scalar(0); c.p()];
            f[1] = nonzero(alg, rng);
            for x in f.iter_mut().skip(2) {
                *x = scalar(alg, rng);
            }
            c.u_f(&Element::new(f)).expect("f in the radical")
        }
        Family::TrivialExtension(te) => {
            let base = te.base();
            let t = central_unit(base, rng);
            if pick == 2 && te.twist().is_none() {
                let lifted = te.lift(&inner(base, rng)).expect("inner automorphism lifts");
                lifted.compose(&te.u_z(&t).expect("central unit"))
            } else {
                let ders = te.dual_derivations();
                let m = base.dim();
                let delta = ders.iter().fold(Matrix::zeros(m, m), |acc, d| acc.add(&d.scale(&scalar(base, rng))));
                te.from_dual_derivation(&delta, &t).expect("dual derivation")
            }
        }
        Family::Matrix(_) | Family::GroupAlgebra(_) | Family::Truncated(_) | Family::Custom => inner(alg, rng),
    }
}

/// A random pair of automorphisms from the generator set.
pub fn automorphism_pair<F: Field, R: Rng + ?Sized>(
    s: &Structure<F>,
    fr: &Frobenius<F>,
    rng: &mut R,
) -> (LinearMap<F>, LinearMap<F>) {
    (automorphism(s, fr, rng), automorphism(s, fr, rng))
}

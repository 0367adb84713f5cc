//! Tensor squares and cubes of an algebra as modules under the diagonal
//! adjoint action `x . (a (x) b) = [x,a] (x) b + a (x) [x,b]` (and its
//! three-leg analogue), plus the twist and cyclic leg permutations.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, BasisVector, Degree, Element};
use crate::freevec::FreeVector;
use crate::scalar::Scalar;

pub type Pair = (BasisVector, BasisVector);
pub type Triple = (BasisVector, BasisVector, BasisVector);

pub type Tensor2 = FreeVector<Pair>;
pub type Tensor3 = FreeVector<Triple>;

/// A monomial key of some tensor power of the algebra, acted on diagonally.
///
/// Implemented for arity 1 ([`BasisVector`]), 2 ([`Pair`]) and 3
/// ([`Triple`]); everything windowed or Leibniz-shaped is generic over it.
pub trait TensorKey: Ord + Clone + Send + Sync {
    const ARITY: usize;

    /// Leibniz expansion of `x . key` at the basis level.
    fn act(alg: &Algebra, x: &BasisVector, key: &Self) -> Result<FreeVector<Self>, AlgebraError>;

    /// Sum of the leg degrees.
    fn degree(alg: &Algebra, key: &Self) -> Result<Degree, AlgebraError>;

    fn legs(&self) -> Vec<BasisVector>;
}

impl TensorKey for BasisVector {
    const ARITY: usize = 1;

    fn act(alg: &Algebra, x: &BasisVector, key: &Self) -> Result<Element, AlgebraError> {
        alg.bracket_basis(x, key)
    }

    fn degree(alg: &Algebra, key: &Self) -> Result<Degree, AlgebraError> {
        alg.degree(key)
    }

    fn legs(&self) -> Vec<BasisVector> {
        vec![*self]
    }
}

impl TensorKey for Pair {
    const ARITY: usize = 2;

    fn act(alg: &Algebra, x: &BasisVector, key: &Self) -> Result<Tensor2, AlgebraError> {
        let (a, b) = key;
        let mut out = Tensor2::zero();
        for (s, c) in alg.bracket_basis(x, a)?.iter() {
            out.add_term((*s, *b), c.clone());
        }
        for (s, c) in alg.bracket_basis(x, b)?.iter() {
            out.add_term((*a, *s), c.clone());
        }
        Ok(out)
    }

    fn degree(alg: &Algebra, key: &Self) -> Result<Degree, AlgebraError> {
        Ok(alg.degree(&key.0)? + alg.degree(&key.1)?)
    }

    fn legs(&self) -> Vec<BasisVector> {
        vec![self.0, self.1]
    }
}

impl TensorKey for Triple {
    const ARITY: usize = 3;

    fn act(alg: &Algebra, x: &BasisVector, key: &Self) -> Result<Tensor3, AlgebraError> {
        let (a, b, c) = key;
        let mut out = Tensor3::zero();
        for (s, k) in alg.bracket_basis(x, a)?.iter() {
            out.add_term((*s, *b, *c), k.clone());
        }
        for (s, k) in alg.bracket_basis(x, b)?.iter() {
            out.add_term((*a, *s, *c), k.clone());
        }
        for (s, k) in alg.bracket_basis(x, c)?.iter() {
            out.add_term((*a, *b, *s), k.clone());
        }
        Ok(out)
    }

    fn degree(alg: &Algebra, key: &Self) -> Result<Degree, AlgebraError> {
        Ok(alg.degree(&key.0)? + alg.degree(&key.1)? + alg.degree(&key.2)?)
    }

    fn legs(&self) -> Vec<BasisVector> {
        vec![self.0, self.1, self.2]
    }
}

/// Diagonal adjoint action of a single basis vector, extended linearly over
/// the tensor.
pub fn act_basis<K: TensorKey>(
    alg: &Algebra,
    x: &BasisVector,
    t: &FreeVector<K>,
) -> Result<FreeVector<K>, AlgebraError> {
    t.try_map_terms(|k, c| Ok(K::act(alg, x, k)?.scale(c)))
}

/// Diagonal adjoint action `x . T`, bilinear in both arguments.
pub fn diagonal_action<K: TensorKey>(
    alg: &Algebra,
    x: &Element,
    t: &FreeVector<K>,
) -> Result<FreeVector<K>, AlgebraError> {
    let mut out = FreeVector::zero();
    for (b, c) in x.iter() {
        out.add_scaled(c, &act_basis(alg, b, t)?);
    }
    Ok(out)
}

/// The outer product of two elements as an arity-2 tensor.
pub fn tensor2(a: &Element, b: &Element) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            out.add_term((*ka, *kb), ca * cb);
        }
    }
    out
}

/// `a (x) b - b (x) a`.
pub fn wedge(a: &Element, b: &Element) -> Tensor2 {
    &tensor2(a, b) - &tensor2(b, a)
}

/// The twist `tau(x (x) y) = y (x) x`.
pub fn twist(t: &Tensor2) -> Tensor2 {
    t.map_terms(|(a, b), c| Tensor2::term((*b, *a), c.clone()))
}

/// The cyclic map `xi(x1 (x) x2 (x) x3) = x2 (x) x3 (x) x1`.
pub fn cyclic(t: &Tensor3) -> Tensor3 {
    t.map_terms(|(a, b, c), k| Tensor3::term((*b, *c, *a), k.clone()))
}

/// `(1 + xi + xi^2) T`.
pub fn cyclic_sum(t: &Tensor3) -> Tensor3 {
    let xt = cyclic(t);
    let xxt = cyclic(&xt);
    &(t + &xt) + &xxt
}

/// Splits `T = A + S` with `tau(A) = -A` and `tau(S) = S`.
pub fn antisym_split(t: &Tensor2) -> (Tensor2, Tensor2) {
    let half = Scalar::new(1, 2);
    let tt = twist(t);
    let anti = (t - &tt).scale(&half);
    let sym = (t + &tt).scale(&half);
    (anti, sym)
}

/// Witness that a tensor's symmetric part leaves `center (x) center`.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("symmetric part has non-central support: {}", offending_list(.offending))]
pub struct NotReducible {
    /// The non-central symmetric monomials, in canonical order.
    pub offending: Vec<Pair>,
}

fn offending_list(pairs: &[Pair]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("{a} (x) {b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Constructive reduction of an arity-2 tensor modulo the center: writes
/// `v = u + c` with `u` antisymmetric (hence in the image of `1 - tau`) and
/// `c` symmetric supported on `center (x) center`, or reports the symmetric
/// monomials obstructing such a split.
pub fn reduce_mod_center(
    alg: &Algebra,
    v: &Tensor2,
) -> Result<(Tensor2, Tensor2), NotReducible> {
    let (anti, sym) = antisym_split(v);
    let offending: Vec<Pair> = sym
        .keys()
        .filter(|(a, b)| !(alg.is_central(a) && alg.is_central(b)))
        .cloned()
        .collect();
    if offending.is_empty() {
        Ok((anti, sym))
    } else {
        Err(NotReducible { offending })
    }
}

//! Sparse vectors of a free module over [`Scalar`], keyed by an ordered
//! basis alphabet.
//!
//! Canonical form: no stored coefficient is zero and iteration follows the
//! key order, so equal vectors compare equal structurally.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeVector<K: Ord + Clone> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> FreeVector<K> {
    pub fn zero() -> Self {
        FreeVector { terms: BTreeMap::new() }
    }

    /// The single-term vector `c * k`; zero coefficients collapse to zero.
    pub fn term(k: K, c: Scalar) -> Self {
        let mut v = FreeVector::zero();
        v.add_term(k, c);
        v
    }

    pub fn basis(k: K) -> Self {
        FreeVector::term(k, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut v = FreeVector::zero();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, d) in other.iter() {
            self.add_term(k.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return FreeVector::zero();
        }
        FreeVector {
            terms: self.terms.iter().map(|(k, d)| (k.clone(), c * d)).collect(),
        }
    }

    /// Applies a linear map given on keys, summing the images.
    pub fn map_terms<K2, F>(&self, mut f: F) -> FreeVector<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K, &Scalar) -> FreeVector<K2>,
    {
        let mut out = FreeVector::zero();
        for (k, c) in self.iter() {
            out.add_assign(&f(k, c));
        }
        out
    }

    /// Like [`map_terms`](Self::map_terms) but fallible.
    pub fn try_map_terms<K2, E, F>(&self, mut f: F) -> Result<FreeVector<K2>, E>
    where
        K2: Ord + Clone,
        F: FnMut(&K, &Scalar) -> Result<FreeVector<K2>, E>,
    {
        let mut out = FreeVector::zero();
        for (k, c) in self.iter() {
            out.add_assign(&f(k, c)?);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> Add for &FreeVector<K> {
    type Output = FreeVector<K>;
    fn add(self, rhs: &FreeVector<K>) -> FreeVector<K> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for &FreeVector<K> {
    type Output = FreeVector<K>;
    fn sub(self, rhs: &FreeVector<K>) -> FreeVector<K> {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl<K: Ord + Clone> Neg for &FreeVector<K> {
    type Output = FreeVector<K>;
    fn neg(self) -> FreeVector<K> {
        self.scale(&-Scalar::one())
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for FreeVector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        FreeVector::from_terms(iter)
    }
}

//! Noncommutative polynomials in the free associative algebra. This is the
//! independent oracle for the bracket layer: Lie elements embed via
//! `[u,v] -> uv - vu`, and the embedding is injective, so two Lie
//! polynomials are equal exactly when their images here are.

use crate::error::Result;
use crate::scalar::{Field, Scalar};
use std::collections::BTreeMap;

/// A finite combination of associative words (generator-index sequences),
/// graded by word length. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Vec<u8>, Scalar>,
    field: Field,
}

impl NcPoly {
    pub fn zero(field: Field) -> NcPoly {
        NcPoly { terms: BTreeMap::new(), field }
    }

    pub fn letter(gen: u8, field: Field) -> NcPoly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![gen], Scalar::one(field));
        NcPoly { terms, field }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, word: &[u8]) -> Option<&Scalar> {
        self.terms.get(word)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            match terms.get_mut(w) {
                Some(existing) => {
                    let sum = existing.checked_add(c)?;
                    if sum.is_zero() {
                        terms.remove(w);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(w.clone(), c.clone());
                }
            }
        }
        Ok(NcPoly { terms, field: self.field })
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> NcPoly {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.negate())).collect();
        NcPoly { terms, field: self.field }
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<NcPoly> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let p = c.checked_mul(lambda)?;
            if !p.is_zero() {
                terms.insert(w.clone(), p);
            }
        }
        Ok(NcPoly { terms, field: self.field })
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly> {
        let mut acc: BTreeMap<Vec<u8>, Scalar> = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let c = c1.checked_mul(c2)?;
                match acc.get_mut(&w) {
                    Some(existing) => {
                        let sum = existing.checked_add(&c)?;
                        if sum.is_zero() {
                            acc.remove(&w);
                        } else {
                            *existing = sum;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            acc.insert(w, c);
                        }
                    }
                }
            }
        }
        Ok(NcPoly { terms: acc, field: self.field })
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &NcPoly) -> Result<NcPoly> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(n, Field::Rational)
    }

    #[test]
    fn commutator_of_letters() {
        let x = NcPoly::letter(0, Field::Rational);
        let y = NcPoly::letter(1, Field::Rational);
        let c = x.commutator(&y).unwrap();
        assert_eq!(c.coeff(&[0, 1]), Some(&int(1)));
        assert_eq!(c.coeff(&[1, 0]), Some(&int(-1)));
        assert_eq!(c.terms().len(), 2);
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let x = NcPoly::letter(0, Field::Rational);
        assert!(x.commutator(&x).unwrap().is_zero());
    }

    #[test]
    fn product_is_associative_here() {
        let x = NcPoly::letter(0, Field::Rational);
        let y = NcPoly::letter(1, Field::Rational);
        let s = x.add(&y).unwrap();
        let lhs = s.mul(&s).unwrap().mul(&x).unwrap();
        let rhs = s.mul(&s.mul(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

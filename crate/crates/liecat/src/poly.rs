//! Lie-polynomial arithmetic over the fixed basis: linear structure, the
//! bilinear bracket, measures (degree, support, occurrences), the grading
//! rescale used by scalar conjugation, and substitution of generator images.

use crate::envelope::NcPoly;
use crate::error::{Error, Result};
use crate::hall::BasisTable;
use crate::scalar::Scalar;
use num::BigRational;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// A finite scalar combination of basis words, stored degree-graded by the
/// basis order. No zero coefficients are ever stored; the empty map is the
/// zero polynomial. Values are immutable and cheap to share.
#[derive(Clone, Debug)]
pub struct LiePoly {
    terms: BTreeMap<usize, Scalar>,
    ctx: Arc<BasisTable>,
}

impl PartialEq for LiePoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_context(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for LiePoly {}

/// Degree, support and per-monomial occurrence counts of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measures {
    /// Maximum term degree; 0 for the zero polynomial by convention.
    pub degree: usize,
    /// Generators appearing in some term.
    pub support: BTreeSet<usize>,
    /// Basis index -> occurrence count of each generator in that word.
    pub occurrences: BTreeMap<usize, Vec<usize>>,
}

impl LiePoly {
    pub fn zero(ctx: Arc<BasisTable>) -> LiePoly {
        LiePoly { terms: BTreeMap::new(), ctx }
    }

    pub fn generator(ctx: Arc<BasisTable>, gen: usize) -> Result<LiePoly> {
        if gen >= ctx.n_gens() {
            return Err(Error::UnknownGenerator(format!("#{gen}")));
        }
        let idx = ctx
            .index_of(&[gen as u8])
            .ok_or_else(|| Error::Internal("generator missing from table".into()))?;
        Ok(LiePoly::single(ctx.clone(), idx, Scalar::one(ctx.field())))
    }

    pub fn single(ctx: Arc<BasisTable>, index: usize, coeff: Scalar) -> LiePoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(index, coeff);
        }
        LiePoly { terms, ctx }
    }

    pub fn from_terms(ctx: Arc<BasisTable>, terms: BTreeMap<usize, Scalar>) -> LiePoly {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LiePoly { terms, ctx }
    }

    pub(crate) fn from_rational_terms(
        ctx: Arc<BasisTable>,
        terms: &BTreeMap<usize, BigRational>,
    ) -> LiePoly {
        let field = ctx.field();
        let terms = terms
            .iter()
            .map(|(i, c)| (*i, Scalar::from_rational(c.clone(), field)))
            .collect();
        LiePoly { terms, ctx }
    }

    pub fn ctx(&self) -> &Arc<BasisTable> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<usize, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Option<&Scalar> {
        self.terms.get(&index)
    }

    fn join_ctx(&self, other: &LiePoly) -> Result<()> {
        if self.ctx.same_context(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &LiePoly) -> Result<LiePoly> {
        self.join_ctx(other)?;
        let mut terms = self.terms.clone();
        for (i, c) in &other.terms {
            match terms.get_mut(i) {
                Some(existing) => {
                    let sum = existing.checked_add(c)?;
                    if sum.is_zero() {
                        terms.remove(i);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(*i, c.clone());
                }
            }
        }
        Ok(LiePoly { terms, ctx: self.ctx.clone() })
    }

    pub fn sub(&self, other: &LiePoly) -> Result<LiePoly> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> LiePoly {
        let terms = self.terms.iter().map(|(i, c)| (*i, c.negate())).collect();
        LiePoly { terms, ctx: self.ctx.clone() }
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<LiePoly> {
        if lambda.is_zero() {
            return Ok(LiePoly::zero(self.ctx.clone()));
        }
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            let p = c.checked_mul(lambda)?;
            if !p.is_zero() {
                terms.insert(*i, p);
            }
        }
        Ok(LiePoly { terms, ctx: self.ctx.clone() })
    }

    /// Applies a field automorphism to every coefficient, leaving the basis
    /// words untouched.
    pub fn map_coeffs(&self, sigma: &crate::scalar::FieldAut) -> Result<LiePoly> {
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            let m = sigma.apply(c)?;
            if !m.is_zero() {
                terms.insert(*i, m);
            }
        }
        Ok(LiePoly { terms, ctx: self.ctx.clone() })
    }

    /// The Lie bracket, extended bilinearly from normalized basis brackets.
    pub fn bracket(&self, other: &LiePoly) -> Result<LiePoly> {
        self.join_ctx(other)?;
        let cap = self.ctx.cap();
        let field = self.ctx.field();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, ci) in &self.terms {
            for (j, cj) in &other.terms {
                let du = self.ctx.word(*i).degree;
                let dv = self.ctx.word(*j).degree;
                if du + dv > cap {
                    return Err(Error::DegreeOverflow { needed: du + dv, cap });
                }
                let expansion = self.ctx.normalize_bracket(*i, *j)?;
                let cij = ci.checked_mul(cj)?;
                for (k, n) in expansion.iter() {
                    let contrib = cij.checked_mul(&Scalar::from_rational(n.clone(), field))?;
                    match acc.get_mut(k) {
                        Some(existing) => {
                            let sum = existing.checked_add(&contrib)?;
                            if sum.is_zero() {
                                acc.remove(k);
                            } else {
                                *existing = sum;
                            }
                        }
                        None => {
                            if !contrib.is_zero() {
                                acc.insert(*k, contrib);
                            }
                        }
                    }
                }
            }
        }
        Ok(LiePoly { terms: acc, ctx: self.ctx.clone() })
    }

    /// Maximum term degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|i| self.ctx.word(*i).degree).max().unwrap_or(0)
    }

    pub fn measures(&self) -> Measures {
        let n = self.ctx.n_gens();
        let mut support = BTreeSet::new();
        let mut occurrences = BTreeMap::new();
        for i in self.terms.keys() {
            let counts = crate::hall::multidegree(&self.ctx.word(*i).word, n);
            for (g, c) in counts.iter().enumerate() {
                if *c > 0 {
                    support.insert(g);
                }
            }
            occurrences.insert(*i, counts);
        }
        Measures { degree: self.degree(), support, occurrences }
    }

    /// Splits into homogeneous components, indexed by degree 1..=deg(p);
    /// missing degrees are zero polynomials. Empty for the zero polynomial.
    pub fn homogeneous_components(&self) -> Vec<LiePoly> {
        let top = self.degree();
        let mut parts: Vec<LiePoly> = (0..top).map(|_| LiePoly::zero(self.ctx.clone())).collect();
        for (i, c) in &self.terms {
            let d = self.ctx.word(*i).degree;
            parts[d - 1].terms.insert(*i, c.clone());
        }
        parts
    }

    /// Multiplies the degree-i component by a^(i-1). This is exactly how
    /// conjugation by the scalar map x -> a*x acts on generator images.
    pub fn scale_graded(&self, a: &Scalar) -> Result<LiePoly> {
        if a.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            let d = self.ctx.word(*i).degree;
            let factor = a.pow(d as i64 - 1)?;
            let scaled = c.checked_mul(&factor)?;
            if !scaled.is_zero() {
                terms.insert(*i, scaled);
            }
        }
        Ok(LiePoly { terms, ctx: self.ctx.clone() })
    }

    /// Image under the commutator embedding into the free associative
    /// algebra, expanding each basis word's standard bracketing as uv - vu.
    /// Injective, so equality of images decides equality of Lie polynomials;
    /// this is the independent oracle for the whole bracket layer.
    pub fn to_associative(&self) -> NcPoly {
        let field = self.ctx.field();
        let mut acc = NcPoly::zero(field);
        for (i, c) in &self.terms {
            let env = envelope_of_word(&self.ctx, *i);
            acc = acc.add(&env.scale(c).expect("scalar fields agree")).expect("fields agree");
        }
        acc
    }

    /// Re-expresses the polynomial in another table (same field and
    /// generators, possibly different capacity) by matching words.
    pub fn lift_to(&self, target: &Arc<BasisTable>) -> Result<LiePoly> {
        if target.field() != self.ctx.field() || target.gen_names() != self.ctx.gen_names() {
            return Err(Error::ContextMismatch);
        }
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            let word = &self.ctx.word(*i).word;
            let j = target.index_of(word).ok_or(Error::DegreeOverflow {
                needed: word.len(),
                cap: target.cap(),
            })?;
            terms.insert(j, c.clone());
        }
        Ok(LiePoly { terms, ctx: target.clone() })
    }

    /// Substitutes `images[i]` for generator i, evaluating each basis word's
    /// bracketing in the images' table. The unique homomorphism extension:
    /// linear in the polynomial, bracket-preserving by construction.
    pub fn substitute(&self, images: &[LiePoly], target: &Arc<BasisTable>) -> Result<LiePoly> {
        if images.len() != self.ctx.n_gens() {
            return Err(Error::ShapeMismatch { expected: self.ctx.n_gens(), got: images.len() });
        }
        for img in images {
            if !img.ctx.same_context(target) {
                return Err(Error::ContextMismatch);
            }
        }
        let mut acc = LiePoly::zero(target.clone());
        for (i, c) in &self.terms {
            // a term dies outright if any occurring generator maps to zero
            let counts = crate::hall::multidegree(&self.ctx.word(*i).word, images.len());
            let mut out_degree = 0usize;
            let mut dead = false;
            for (g, k) in counts.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                if images[g].is_zero() {
                    dead = true;
                    break;
                }
                out_degree += k * images[g].degree();
            }
            if dead {
                continue;
            }
            if out_degree > target.cap() {
                return Err(Error::DegreeOverflow { needed: out_degree, cap: target.cap() });
            }
            let value = eval_word(&self.ctx, *i, images)?;
            acc = acc.add(&value.scale(c)?)?;
        }
        Ok(acc)
    }

    /// Canonical text form; delegated to the shared formatter.
    pub fn canonical_text(&self) -> String {
        crate::text::format_poly(self)
    }

    /// Degree of the lowest nonzero component; None for the zero polynomial.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|i| self.ctx.word(*i).degree).min()
    }

    /// Truncation: drops every term of degree above `cutoff`.
    pub(crate) fn truncate(&self, cutoff: usize) -> LiePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(i, _)| self.ctx.word(**i).degree <= cutoff)
            .map(|(i, c)| (*i, c.clone()))
            .collect();
        LiePoly { terms, ctx: self.ctx.clone() }
    }

    /// Bracket in the nilpotent quotient modulo degrees above `cutoff`:
    /// overflowing term pairs are zero there, not an error. Only the
    /// inverse search uses this; ordinary arithmetic never truncates.
    pub(crate) fn bracket_mod(&self, other: &LiePoly, cutoff: usize) -> Result<LiePoly> {
        self.join_ctx(other)?;
        let field = self.ctx.field();
        let mut acc = LiePoly::zero(self.ctx.clone());
        for (i, ci) in &self.terms {
            for (j, cj) in &other.terms {
                let du = self.ctx.word(*i).degree;
                let dv = self.ctx.word(*j).degree;
                if du + dv > cutoff {
                    continue;
                }
                let expansion = self.ctx.normalize_bracket(*i, *j)?;
                let cij = ci.checked_mul(cj)?;
                for (k, n) in expansion.iter() {
                    let contrib = cij.checked_mul(&Scalar::from_rational(n.clone(), field))?;
                    acc = acc.add(&LiePoly::single(self.ctx.clone(), *k, contrib))?;
                }
            }
        }
        Ok(acc)
    }

    /// Substitution in the nilpotent quotient modulo degrees above `cutoff`.
    pub(crate) fn substitute_mod(
        &self,
        images: &[LiePoly],
        target: &Arc<BasisTable>,
        cutoff: usize,
    ) -> Result<LiePoly> {
        if images.len() != self.ctx.n_gens() {
            return Err(Error::ShapeMismatch { expected: self.ctx.n_gens(), got: images.len() });
        }
        let mut acc = LiePoly::zero(target.clone());
        for (i, c) in &self.terms {
            let value = eval_word_mod(&self.ctx, *i, images, cutoff)?;
            acc = acc.add(&value.scale(c)?)?;
        }
        Ok(acc.truncate(cutoff))
    }
}

fn eval_word_mod(
    ctx: &Arc<BasisTable>,
    index: usize,
    images: &[LiePoly],
    cutoff: usize,
) -> Result<LiePoly> {
    let w = ctx.word(index);
    match w.factors {
        None => Ok(images[w.word[0] as usize].truncate(cutoff)),
        Some((l, r)) => {
            let lv = eval_word_mod(ctx, l, images, cutoff)?;
            let rv = eval_word_mod(ctx, r, images, cutoff)?;
            lv.bracket_mod(&rv, cutoff)
        }
    }
}

fn eval_word(ctx: &Arc<BasisTable>, index: usize, images: &[LiePoly]) -> Result<LiePoly> {
    let w = ctx.word(index);
    match w.factors {
        None => Ok(images[w.word[0] as usize].clone()),
        Some((l, r)) => {
            let lv = eval_word(ctx, l, images)?;
            let rv = eval_word(ctx, r, images)?;
            lv.bracket(&rv)
        }
    }
}

fn envelope_of_word(ctx: &Arc<BasisTable>, index: usize) -> NcPoly {
    let w = ctx.word(index);
    match w.factors {
        None => NcPoly::letter(w.word[0], ctx.field()),
        Some((l, r)) => {
            let lv = envelope_of_word(ctx, l);
            let rv = envelope_of_word(ctx, r);
            lv.commutator(&rv).expect("fields agree")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn table(n: usize, cap: usize) -> Arc<BasisTable> {
        BasisTable::generate(n, cap, Field::Rational, None).unwrap()
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(n, Field::Rational)
    }

    #[test]
    fn linear_ops() {
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        assert!(x.add(&x.negate()).unwrap().is_zero());
        let xy = x.bracket(&y).unwrap();
        let p = x.add(&xy).unwrap();
        let doubled = p.scale(&int(2)).unwrap();
        assert_eq!(doubled.coeff(0), Some(&int(2)));
        assert_eq!(doubled.coeff(2), Some(&int(2)));
        assert_eq!(x.add(&y).unwrap().sub(&y).unwrap(), x);
    }

    #[test]
    fn bracket_is_alternating() {
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let s = x.add(&y).unwrap();
        assert!(s.bracket(&s).unwrap().is_zero());
    }

    #[test]
    fn bracket_with_ordering_flip() {
        // [[x,y], x] = -[x,[x,y]]
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let xy = x.bracket(&y).unwrap();
        let got = xy.bracket(&x).unwrap();
        let xxy = x.bracket(&xy).unwrap();
        assert_eq!(got, xxy.negate());
    }

    #[test]
    fn measures_of_nested_word() {
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let p = x.bracket(&x.bracket(&y).unwrap()).unwrap();
        let m = p.measures();
        assert_eq!(m.degree, 3);
        assert_eq!(m.support, BTreeSet::from([0, 1]));
        let idx = *p.terms().keys().next().unwrap();
        assert_eq!(m.occurrences[&idx], vec![2, 1]);
    }

    #[test]
    fn measures_of_zero() {
        let t = table(2, 3);
        let z = LiePoly::zero(t);
        let m = z.measures();
        assert_eq!(m.degree, 0);
        assert!(m.support.is_empty());
        assert!(z.homogeneous_components().is_empty());
    }

    #[test]
    fn measures_mixed_support() {
        let t = table(3, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let z = LiePoly::generator(t.clone(), 2).unwrap();
        let p = x.add(&y.bracket(&z).unwrap()).unwrap();
        let m = p.measures();
        assert_eq!(m.degree, 2);
        assert_eq!(m.support, BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn homogeneous_split() {
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let xy = x.bracket(&y).unwrap();
        let p = x.add(&xy).unwrap();
        let parts = p.homogeneous_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], x);
        assert_eq!(parts[1], xy);
        let parts = xy.homogeneous_components();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].is_zero());
        assert_eq!(parts[1], xy);
    }

    #[test]
    fn graded_rescale() {
        let t = table(3, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let z = LiePoly::generator(t.clone(), 2).unwrap();
        let a = int(5);
        // x + [y,z] -> x + a[y,z]
        let p = x.add(&y.bracket(&z).unwrap()).unwrap();
        let got = p.scale_graded(&a).unwrap();
        let want = x.add(&y.bracket(&z).unwrap().scale(&a).unwrap()).unwrap();
        assert_eq!(got, want);
        // [x,y] -> a[x,y]
        let xy = x.bracket(&y).unwrap();
        assert_eq!(xy.scale_graded(&a).unwrap(), xy.scale(&a).unwrap());
        // identity at a = 1
        assert_eq!(p.scale_graded(&int(1)).unwrap(), p);
        assert_eq!(p.scale_graded(&int(0)), Err(Error::ZeroScale));
    }

    #[test]
    fn envelope_of_nested_bracket() {
        // [x,[x,y]] -> xxy - 2 xyx + yxx
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let p = x.bracket(&x.bracket(&y).unwrap()).unwrap();
        let env = p.to_associative();
        assert_eq!(env.coeff(&[0, 0, 1]), Some(&int(1)));
        assert_eq!(env.coeff(&[0, 1, 0]), Some(&int(-2)));
        assert_eq!(env.coeff(&[1, 0, 0]), Some(&int(1)));
        assert_eq!(env.terms().len(), 3);
        // single letter maps to itself
        assert_eq!(x.to_associative().coeff(&[0]), Some(&int(1)));
    }

    #[test]
    fn substitution_acts_as_homomorphism() {
        let t = table(2, 4);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let xy = x.bracket(&y).unwrap();
        // x -> [x,y], y -> y applied to [x,y] gives [[x,y],y]
        let images = vec![xy.clone(), y.clone()];
        let got = xy.substitute(&images, &t).unwrap();
        assert_eq!(got, xy.bracket(&y).unwrap());
        // substitution is linear
        let p = x.add(&y).unwrap();
        let got = p.substitute(&images, &t).unwrap();
        assert_eq!(got, xy.add(&y).unwrap());
    }

    #[test]
    fn substitution_degree_overflow() {
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let xy = x.bracket(&y).unwrap();
        let images = vec![xy.clone(), xy.clone()];
        let p = x.bracket(&y).unwrap();
        assert!(matches!(p.substitute(&images, &t), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn antisymmetry_and_jacobi_exhaustive_at_small_caps() {
        // every basis pair and triple within the cap, not just samples
        for (n, cap) in [(2usize, 5usize), (3, 4)] {
            let t = table(n, cap);
            let one = Scalar::one(Field::Rational);
            let polys: Vec<LiePoly> = (0..t.words().len())
                .map(|i| LiePoly::single(t.clone(), i, one.clone()))
                .collect();
            let deg = |i: usize| t.word(i).degree;
            for a in 0..polys.len() {
                for b in 0..polys.len() {
                    if deg(a) + deg(b) <= cap {
                        let anti =
                            polys[a].bracket(&polys[b]).unwrap().add(&polys[b].bracket(&polys[a]).unwrap());
                        assert!(anti.unwrap().is_zero(), "antisymmetry at ({a},{b}) n={n}");
                    }
                    for c in 0..polys.len() {
                        if deg(a) + deg(b) + deg(c) > cap {
                            continue;
                        }
                        let (p, q, r) = (&polys[a], &polys[b], &polys[c]);
                        let jac = p
                            .bracket(&q.bracket(r).unwrap())
                            .unwrap()
                            .add(&q.bracket(&r.bracket(p).unwrap()).unwrap())
                            .unwrap()
                            .add(&r.bracket(&p.bracket(q).unwrap()).unwrap())
                            .unwrap();
                        assert!(jac.is_zero(), "jacobi at ({a},{b},{c}) n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn substitution_with_zero_image_kills_terms() {
        let t = table(2, 3);
        let x = LiePoly::generator(t.clone(), 0).unwrap();
        let y = LiePoly::generator(t.clone(), 1).unwrap();
        let xy = x.bracket(&y).unwrap();
        let images = vec![LiePoly::zero(t.clone()), y.clone()];
        assert!(xy.substitute(&images, &t).unwrap().is_zero());
        let p = x.add(&y).unwrap();
        assert_eq!(p.substitute(&images, &t).unwrap(), y);
    }
}

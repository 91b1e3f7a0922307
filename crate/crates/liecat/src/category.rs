//! Free-algebra objects and morphisms at bounded rank and degree, together
//! with the affine point-set view: morphisms pull points back, points are
//! coordinate tuples over a fixed algebra H, morphisms become polynomial
//! maps on tuples, and distinct morphisms are separated by explicit points.
//!
//! H defaults to the rank-2 algebra, which generates the whole variety; a
//! rank-1 H satisfies the identity `[a,b] = 0` and deliberately breaks the
//! separation property, which the search reports honestly as NotFound.

use crate::endo::{AutVerdict, Endo};
use crate::error::{Error, Result};
use crate::hall::BasisTable;
use crate::poly::LiePoly;
use crate::scalar::Field;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// A family of free-algebra objects sharing one field and degree cap, with
/// a distinguished algebra H receiving all points.
pub struct Category {
    field: Field,
    cap: usize,
    n_max: usize,
    h_rank: usize,
    tables: RwLock<HashMap<usize, Arc<BasisTable>>>,
}

pub const DEFAULT_MAX_RANK: usize = 4;

impl Category {
    pub fn new(field: Field, cap: usize, n_max: usize, h_rank: usize) -> Result<Category> {
        if n_max < 1 || h_rank < 1 || h_rank > n_max {
            return Err(Error::ConfigInvalid("bad rank bounds".into()));
        }
        Ok(Category { field, cap, n_max, h_rank, tables: RwLock::new(HashMap::new()) })
    }

    /// The standard setup: H = F(x,y), rank bound 4.
    pub fn standard(field: Field, cap: usize) -> Result<Category> {
        Category::new(field, cap, DEFAULT_MAX_RANK, 2)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn h_rank(&self) -> usize {
        self.h_rank
    }

    /// The free algebra on `rank` generators, built lazily and shared.
    pub fn object(&self, rank: usize) -> Result<Arc<BasisTable>> {
        if rank < 1 || rank > self.n_max {
            return Err(Error::ConfigInvalid(format!(
                "rank {rank} outside 1..={}",
                self.n_max
            )));
        }
        if let Some(t) = self.tables.read().unwrap().get(&rank) {
            return Ok(t.clone());
        }
        let t = BasisTable::generate(rank, self.cap, self.field, None)?;
        self.tables.write().unwrap().insert(rank, t.clone());
        Ok(t)
    }

    /// The distinguished algebra H.
    pub fn h_object(&self) -> Result<Arc<BasisTable>> {
        self.object(self.h_rank)
    }
}

/// A morphism s: F(Y) -> F(X), stored as the images of the Y-generators
/// inside the target algebra. A `Point` is the special case of a morphism
/// into H; its degree bound is the cap of H's table.
#[derive(Clone, Debug)]
pub struct Morphism {
    images: Vec<LiePoly>,
    tgt: Arc<BasisTable>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.tgt.same_context(&other.tgt) && self.images == other.images
    }
}

impl Eq for Morphism {}

pub type Point = Morphism;

impl Morphism {
    pub fn new(tgt: Arc<BasisTable>, images: Vec<LiePoly>) -> Result<Morphism> {
        if images.is_empty() {
            return Err(Error::ConfigInvalid("morphism needs a source generator".into()));
        }
        for img in &images {
            if !img.ctx().same_context(&tgt) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(Morphism { images, tgt })
    }

    pub fn identity(obj: Arc<BasisTable>) -> Morphism {
        let images =
            (0..obj.n_gens()).map(|g| LiePoly::generator(obj.clone(), g).unwrap()).collect();
        Morphism { images, tgt: obj }
    }

    /// The collapse F(X) -> F(x0) sending every source generator to x0.
    pub fn collapse(src_rank: usize, rank1: Arc<BasisTable>) -> Result<Morphism> {
        if rank1.n_gens() != 1 {
            return Err(Error::ShapeMismatch { expected: 1, got: rank1.n_gens() });
        }
        let x0 = LiePoly::generator(rank1.clone(), 0)?;
        Ok(Morphism { images: vec![x0; src_rank], tgt: rank1 })
    }

    /// The morphism F(x0) -> F(X) sending x0 to `w`.
    pub fn from_element(w: LiePoly) -> Morphism {
        let tgt = w.ctx().clone();
        Morphism { images: vec![w], tgt }
    }

    /// The constant morphism sending every one of `src_rank` generators to
    /// `w`: the composite of `from_element` after `collapse`.
    pub fn constant(src_rank: usize, w: LiePoly) -> Morphism {
        let tgt = w.ctx().clone();
        Morphism { images: vec![w; src_rank], tgt }
    }

    pub fn src_rank(&self) -> usize {
        self.images.len()
    }

    pub fn tgt(&self) -> &Arc<BasisTable> {
        &self.tgt
    }

    pub fn images(&self) -> &[LiePoly] {
        &self.images
    }

    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| w[0] == w[1])
    }

    /// Composition `self . other`: other: F(Z) -> F(Y), self: F(Y) -> F(X).
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if other.tgt.n_gens() != self.src_rank() {
            return Err(Error::ShapeMismatch {
                expected: self.src_rank(),
                got: other.tgt.n_gens(),
            });
        }
        let images = other
            .images
            .iter()
            .map(|img| img.substitute(&self.images, &self.tgt))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism { images, tgt: self.tgt.clone() })
    }

    /// Pulls a point back along this morphism: the point nu: F(X) -> H
    /// becomes nu . self: F(Y) -> H. Contravariant by construction.
    pub fn pullback(&self, point: &Point) -> Result<Point> {
        point.compose(self)
    }
}

/// Coordinates of a point: the tuple of its generator images in H.
pub fn coords(point: &Point) -> Vec<LiePoly> {
    point.images.clone()
}

/// Rebuilds the point with the given coordinate tuple; inverse to `coords`.
pub fn point_from_coords(tuple: Vec<LiePoly>, h: &Arc<BasisTable>) -> Result<Point> {
    Morphism::new(h.clone(), tuple)
}

/// The polynomial map of a morphism on coordinate tuples: evaluates each
/// component word at the tuple. Satisfies
/// `poly_map(s, a) = coords(s.pullback(point_from_coords(a)))`.
pub fn poly_map(s: &Morphism, tuple: &[LiePoly], h: &Arc<BasisTable>) -> Result<Vec<LiePoly>> {
    if tuple.len() != s.tgt.n_gens() {
        return Err(Error::ShapeMismatch { expected: s.tgt.n_gens(), got: tuple.len() });
    }
    s.images.iter().map(|w| w.substitute(tuple, h)).collect()
}

/// Splits a morphism into its constant components: component i is the
/// constant morphism F(X_H) -> F(X) sending every H-rank generator to w_i.
/// Component-wise, the polynomial map of s is recovered by projecting each
/// component map onto its first coordinate.
pub fn component_decompose(s: &Morphism, h_rank: usize) -> Vec<Morphism> {
    s.images.iter().map(|w| Morphism::constant(h_rank, w.clone())).collect()
}

/// Checks the projection identity of the decomposition at one tuple:
/// `poly_map(s, a)[i] = first coordinate of poly_map(s_i, a)`.
pub fn projection_identity_holds(
    s: &Morphism,
    parts: &[Morphism],
    tuple: &[LiePoly],
    h: &Arc<BasisTable>,
) -> Result<bool> {
    let lhs = poly_map(s, tuple, h)?;
    if lhs.len() != parts.len() {
        return Ok(false);
    }
    for (i, part) in parts.iter().enumerate() {
        let rhs = poly_map(part, tuple, h)?;
        let Some(first) = rhs.first() else { return Ok(false) };
        if lhs[i] != *first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for a point separating two distinct morphisms with the same
/// source and target: candidate generator images are the basis words of H
/// up to `budget` (which includes the ladder `[x,y]`, `[x,[x,y]]`, ... that
/// embeds small ranks freely), enumerated as tuples by total degree and
/// then index order, so the minimal witness is deterministic. `None` means
/// the whole budget was exhausted without separation; the search never
/// misreports.
pub fn find_separating_point(
    s1: &Morphism,
    s2: &Morphism,
    h: &Arc<BasisTable>,
    budget: usize,
) -> Result<Option<Point>> {
    if s1.src_rank() != s2.src_rank() || !s1.tgt.same_context(&s2.tgt) {
        return Err(Error::ShapeMismatch { expected: s1.src_rank(), got: s2.src_rank() });
    }
    if s1 == s2 {
        return Err(Error::BadSpec("morphisms are equal; nothing separates them".into()));
    }
    let budget = budget.min(h.cap());
    let comp_degree = s1
        .images
        .iter()
        .chain(s2.images.iter())
        .map(LiePoly::degree)
        .max()
        .unwrap_or(1)
        .max(1);
    if comp_degree * budget > h.cap() {
        return Err(Error::DegreeOverflow { needed: comp_degree * budget, cap: h.cap() });
    }

    let candidates: Vec<usize> = (1..=budget).flat_map(|d| h.degree_range(d)).collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let n = s1.tgt.n_gens();
    if candidates.len().pow(n as u32) > 2_000_000 {
        return Err(Error::ConfigInvalid("separation budget enumerates too many tuples".into()));
    }

    // all index vectors, ordered by total degree then componentwise
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                candidates.iter().map(move |c| {
                    let mut next = t.clone();
                    next.push(*c);
                    next
                })
            })
            .collect();
    }
    tuples.sort_by_key(|t| {
        (t.iter().map(|&i| h.word(i).degree).sum::<usize>(), t.clone())
    });

    for t in tuples {
        let tuple: Vec<LiePoly> = t
            .iter()
            .map(|&i| LiePoly::single(h.clone(), i, crate::scalar::Scalar::one(h.field())))
            .collect();
        let point = point_from_coords(tuple, h)?;
        let p1 = s1.pullback(&point)?;
        let p2 = s2.pullback(&point)?;
        if p1 != p2 {
            return Ok(Some(point));
        }
    }
    Ok(None)
}

/// Bounded free-basis test for a candidate generating set: delegates to the
/// automorphism check of the endomorphism sending x_i to S_i. `Yes` proves
/// the set generates freely; `No` carries the singular-linear-part
/// certificate; `Inconclusive` is honest within the budget.
pub fn check_free_basis(candidates: &[LiePoly], search_cap: usize) -> Result<AutVerdict> {
    let Some(first) = candidates.first() else {
        return Err(Error::ConfigInvalid("empty candidate set".into()));
    };
    let ctx = first.ctx().clone();
    if candidates.len() != ctx.n_gens() {
        return Err(Error::ShapeMismatch { expected: ctx.n_gens(), got: candidates.len() });
    }
    let endo = Endo::new(ctx, candidates.to_vec())?;
    endo.check_automorphism(None, search_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn cat() -> Category {
        Category::standard(Field::Rational, 8).unwrap()
    }

    fn gen(t: &Arc<BasisTable>, g: usize) -> LiePoly {
        LiePoly::generator(t.clone(), g).unwrap()
    }

    #[test]
    fn identity_pullback_is_identity() {
        let c = cat();
        let fx = c.object(2).unwrap();
        let h = c.h_object().unwrap();
        let s = Morphism::identity(fx.clone());
        let nu = point_from_coords(vec![gen(&h, 0), gen(&h, 1)], &h).unwrap();
        assert_eq!(s.pullback(&nu).unwrap(), nu);
    }

    #[test]
    fn pullback_substitutes() {
        let c = cat();
        let fx = c.object(2).unwrap();
        let h = c.h_object().unwrap();
        // s: F(y0) -> F(x1,x2), y0 -> [x1,x2]
        let s = Morphism::from_element(gen(&fx, 0).bracket(&gen(&fx, 1)).unwrap());
        let nu = point_from_coords(vec![gen(&h, 0), gen(&h, 1)], &h).unwrap();
        let pulled = s.pullback(&nu).unwrap();
        assert_eq!(pulled.images()[0], gen(&h, 0).bracket(&gen(&h, 1)).unwrap());
    }

    #[test]
    fn contravariance_on_a_concrete_pair() {
        let c = cat();
        let f2 = c.object(2).unwrap();
        let h = c.h_object().unwrap();
        let s1 = Morphism::new(
            f2.clone(),
            vec![gen(&f2, 0).bracket(&gen(&f2, 1)).unwrap(), gen(&f2, 1)],
        )
        .unwrap();
        let s2 = Morphism::new(f2.clone(), vec![gen(&f2, 1), gen(&f2, 0)]).unwrap();
        let nu = point_from_coords(
            vec![gen(&h, 0).bracket(&gen(&h, 1)).unwrap(), gen(&h, 0)],
            &h,
        )
        .unwrap();
        let lhs = s1.compose(&s2).unwrap().pullback(&nu).unwrap();
        let rhs = s2.pullback(&s1.pullback(&nu).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coords_round_trip() {
        let c = cat();
        let h = c.h_object().unwrap();
        let tuple = vec![gen(&h, 0).bracket(&gen(&h, 1)).unwrap(), gen(&h, 1)];
        let nu = point_from_coords(tuple.clone(), &h).unwrap();
        assert_eq!(coords(&nu), tuple);
    }

    #[test]
    fn poly_map_matches_pullback_route() {
        let c = cat();
        let f2 = c.object(2).unwrap();
        let h = c.h_object().unwrap();
        let s = Morphism::new(
            f2.clone(),
            vec![gen(&f2, 0).bracket(&gen(&f2, 1)).unwrap(), gen(&f2, 0)],
        )
        .unwrap();
        let tuple = vec![gen(&h, 1), gen(&h, 0).bracket(&gen(&h, 1)).unwrap()];
        let direct = poly_map(&s, &tuple, &h).unwrap();
        let via_points =
            coords(&s.pullback(&point_from_coords(tuple.clone(), &h).unwrap()).unwrap());
        assert_eq!(direct, via_points);
    }

    #[test]
    fn constants_and_collapse() {
        let c = cat();
        let f0 = c.object(1).unwrap();
        let f2 = c.object(2).unwrap();
        let h = c.h_object().unwrap();

        // collapse absorbs the swap automorphism of its source
        let nu0 = Morphism::collapse(2, f0.clone()).unwrap();
        let eta = Morphism::new(f2.clone(), vec![gen(&f2, 1), gen(&f2, 0)]).unwrap();
        assert_eq!(nu0.compose(&eta).unwrap(), nu0);

        // the composite constant sends every generator to w
        let w = gen(&f2, 0).bracket(&gen(&f2, 1)).unwrap();
        let composite = Morphism::from_element(w.clone()).compose(&nu0).unwrap();
        assert_eq!(composite, Morphism::constant(2, w.clone()));
        assert!(composite.is_constant());

        // x0 -> x0 is the identity on F(x0)
        assert_eq!(Morphism::from_element(gen(&f0, 0)), Morphism::identity(f0.clone()));

        let _ = h;
    }

    #[test]
    fn decomposition_projection() {
        let c = cat();
        let f2 = c.object(2).unwrap();
        let h = c.h_object().unwrap();
        let s = Morphism::new(
            f2.clone(),
            vec![gen(&f2, 0).bracket(&gen(&f2, 1)).unwrap(), gen(&f2, 0).add(&gen(&f2, 1)).unwrap()],
        )
        .unwrap();
        let parts = component_decompose(&s, c.h_rank());
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(Morphism::is_constant));
        let tuple = vec![gen(&h, 0).bracket(&gen(&h, 1)).unwrap(), gen(&h, 1)];
        assert!(projection_identity_holds(&s, &parts, &tuple, &h).unwrap());

        // identity decomposes into the coordinate constants
        let id = Morphism::identity(f2.clone());
        let parts = component_decompose(&id, c.h_rank());
        assert_eq!(parts[0], Morphism::constant(2, gen(&f2, 0)));
        assert_eq!(parts[1], Morphism::constant(2, gen(&f2, 1)));
    }

    #[test]
    fn separation_finds_witnesses() {
        let c = cat();
        let f2 = c.object(2).unwrap();
        let h = c.h_object().unwrap();

        // s1(y) = x1, s2(y) = x2: the coordinate point separates
        let s1 = Morphism::from_element(gen(&f2, 0));
        let s2 = Morphism::from_element(gen(&f2, 1));
        let witness = find_separating_point(&s1, &s2, &h, 2).unwrap().unwrap();
        assert_ne!(s1.pullback(&witness).unwrap(), s2.pullback(&witness).unwrap());

        // s1(y) = [x1,x2] vs twice it
        let w = gen(&f2, 0).bracket(&gen(&f2, 1)).unwrap();
        let s1 = Morphism::from_element(w.clone());
        let s2 = Morphism::from_element(w.scale(&Scalar::from_integer(2, Field::Rational)).unwrap());
        assert!(find_separating_point(&s1, &s2, &h, 2).unwrap().is_some());

        // equal morphisms are rejected up front
        assert!(find_separating_point(&s1, &s1, &h, 2).is_err());
    }

    #[test]
    fn rank_one_target_cannot_separate_brackets() {
        // with H = F(x0) every bracket collapses, so the bracket morphism
        // and the zero morphism become inseparable: the search exhausts
        let c = Category::new(Field::Rational, 8, 4, 1).unwrap();
        let f2 = c.object(2).unwrap();
        let h = c.h_object().unwrap();
        let s1 = Morphism::from_element(gen(&f2, 0).bracket(&gen(&f2, 1)).unwrap());
        let s2 = Morphism::from_element(LiePoly::zero(f2.clone()));
        assert_eq!(find_separating_point(&s1, &s2, &h, 4).unwrap(), None);
    }

    #[test]
    fn free_basis_checks() {
        let c = cat();
        let f2 = c.object(2).unwrap();
        let swap = vec![gen(&f2, 1), gen(&f2, 0)];
        assert!(matches!(check_free_basis(&swap, 4).unwrap(), AutVerdict::Yes(_)));

        let degenerate = vec![gen(&f2, 0), gen(&f2, 0)];
        assert_eq!(check_free_basis(&degenerate, 4).unwrap(), AutVerdict::No);

        let unipotent = vec![
            gen(&f2, 0).add(&gen(&f2, 0).bracket(&gen(&f2, 1)).unwrap()).unwrap(),
            gen(&f2, 1),
        ];
        assert!(!matches!(check_free_basis(&unipotent, 6).unwrap(), AutVerdict::Yes(_)));
    }
}

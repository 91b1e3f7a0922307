//! The fixed Hall-family basis: Lyndon words with standard-factorization
//! bracketing, generated up to a degree cap, plus normalization of brackets
//! of basis elements back into the basis (structure constants).
//!
//! Conventions, fixed once for the whole crate:
//! - generator order is x1 < x2 < ... by index; all orderings derive from it;
//! - a basis element is a Lyndon word together with its standard bracketing
//!   (right factor = longest proper Lyndon suffix, applied recursively);
//! - basis order is degree-major, then lexicographic on the word.

use crate::error::{Error, Result};
use num::{BigRational, One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Coefficient map of a normalized bracket: basis index -> rational constant.
/// Structure constants stay in the prime subfield, so plain rationals suffice
/// here; they are lifted into the ambient field at the polynomial layer.
pub type TermMap = std::collections::BTreeMap<usize, BigRational>;

/// One basis monomial: a Lyndon word with its standard factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallWord {
    /// Generator indices spelling the Lyndon word.
    pub word: Vec<u8>,
    /// Degree = word length.
    pub degree: usize,
    /// Position in the fixed graded order of the owning table.
    pub index: usize,
    /// Basis indices of the standard factorization (left, right);
    /// `None` for single letters.
    pub factors: Option<(usize, usize)>,
}

/// Upper bound on generated basis words, overridable via `LIECAT_MAX_TABLE`.
pub const DEFAULT_TABLE_BOUND: usize = 500_000;

fn table_bound() -> usize {
    std::env::var("LIECAT_MAX_TABLE")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_TABLE_BOUND)
}

thread_local! {
    /// Per-thread rewriting stack. A revisited pair at the same recursion
    /// depth would mean the Jacobi rewriting cycles; the classical
    /// factorization argument rules that out, and this guard turns any
    /// violation into an error instead of a hang.
    static REWRITE_STACK: std::cell::RefCell<std::collections::HashSet<(usize, usize)>> =
        std::cell::RefCell::new(std::collections::HashSet::new());
}

/// The frozen basis of F(X) up to a degree cap, with a memoized
/// structure-constant table. Built single-threaded, then safe to share;
/// after construction all queries are pure (the memo synchronizes
/// internally and only ever stores finished results).
pub struct BasisTable {
    field: crate::scalar::Field,
    gen_names: Vec<String>,
    cap: usize,
    words: Vec<HallWord>,
    /// Half-open index ranges per degree, `degree_ranges[d-1]` for degree d.
    degree_ranges: Vec<(usize, usize)>,
    index_by_word: HashMap<Vec<u8>, usize>,
    memo: RwLock<HashMap<(usize, usize), Arc<TermMap>>>,
}

/// Default generator names; ranks above four fall back to x1, x2, ...
/// (`w` is avoided: it denotes sqrt(d) in scalar syntax).
pub fn default_gen_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "u"];
    if n <= NAMES.len() {
        NAMES[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// True iff `w` is a Lyndon word: strictly smallest among its proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    for r in 1..n {
        let rotation = w[r..].iter().chain(w[..r].iter());
        if !w.iter().lt(rotation) {
            return false;
        }
    }
    true
}

/// Standard factorization split point: the right factor is the longest
/// proper suffix that is Lyndon.
fn standard_split(w: &[u8]) -> usize {
    debug_assert!(w.len() >= 2);
    for start in 1..w.len() {
        if is_lyndon(&w[start..]) {
            return start;
        }
    }
    unreachable!("every word of length >= 2 has a Lyndon final letter");
}

/// All Lyndon words over `n_gens` letters of length <= cap, in lexicographic
/// order (Duval's generation).
fn lyndon_words(n_gens: usize, cap: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let k = n_gens as u8;
    let mut w = vec![0u8];
    loop {
        if w.len() <= cap {
            out.push(w.clone());
        }
        // extend periodically to length cap, then increment the last
        // incrementable position
        let m = w.len();
        while w.len() < cap {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if w.is_empty() {
            return out;
        }
        *w.last_mut().unwrap() += 1;
    }
}

impl BasisTable {
    /// Generates the full basis up to `cap`. Errors with `CapacityExceeded`
    /// if the table would exceed the configured size bound
    /// (`LIECAT_MAX_TABLE`, default 500000 words).
    pub fn generate(
        n_gens: usize,
        cap: usize,
        field: crate::scalar::Field,
        gen_names: Option<Vec<String>>,
    ) -> Result<Arc<BasisTable>> {
        Self::generate_bounded(n_gens, cap, field, gen_names, table_bound())
    }

    /// Same as `generate` with an explicit word-count bound.
    pub fn generate_bounded(
        n_gens: usize,
        cap: usize,
        field: crate::scalar::Field,
        gen_names: Option<Vec<String>>,
        bound: usize,
    ) -> Result<Arc<BasisTable>> {
        if n_gens < 1 || cap < 1 {
            return Err(Error::ConfigInvalid("need at least one generator and degree 1".into()));
        }
        if n_gens > 255 {
            return Err(Error::ConfigInvalid("generator count above 255".into()));
        }
        let gen_names = match gen_names {
            Some(names) => {
                if names.len() != n_gens {
                    return Err(Error::ConfigInvalid("generator name count mismatch".into()));
                }
                names
            }
            None => default_gen_names(n_gens),
        };

        let mut raw = lyndon_words(n_gens, cap);
        if raw.len() > bound {
            return Err(Error::CapacityExceeded { words: raw.len(), bound });
        }
        // degree-major, then lexicographic
        raw.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));

        let mut index_by_word = HashMap::with_capacity(raw.len());
        for (i, w) in raw.iter().enumerate() {
            index_by_word.insert(w.clone(), i);
        }

        let mut words = Vec::with_capacity(raw.len());
        let mut degree_ranges = vec![(0usize, 0usize); cap];
        let mut deg_cursor = 0usize;
        for (i, w) in raw.iter().enumerate() {
            let degree = w.len();
            while deg_cursor < degree {
                let start = if deg_cursor == 0 { 0 } else { degree_ranges[deg_cursor - 1].1 };
                degree_ranges[deg_cursor] = (start, start);
                deg_cursor += 1;
            }
            degree_ranges[degree - 1].1 = i + 1;
            let factors = if degree == 1 {
                None
            } else {
                let split = standard_split(w);
                let li = index_by_word[&w[..split]];
                let ri = index_by_word[&w[split..]];
                Some((li, ri))
            };
            words.push(HallWord { word: w.clone(), degree, index: i, factors });
        }
        while deg_cursor < cap {
            let start = if deg_cursor == 0 { 0 } else { degree_ranges[deg_cursor - 1].1 };
            degree_ranges[deg_cursor] = (start, start);
            deg_cursor += 1;
        }

        Ok(Arc::new(BasisTable {
            field,
            gen_names,
            cap,
            words,
            degree_ranges,
            index_by_word,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    pub fn field(&self) -> crate::scalar::Field {
        self.field
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn n_gens(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|g| g == name)
    }

    pub fn words(&self) -> &[HallWord] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &HallWord {
        &self.words[index]
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        self.index_by_word.get(word).copied()
    }

    /// Basis indices of degree-d words, empty if d is out of range.
    pub fn degree_range(&self, degree: usize) -> std::ops::Range<usize> {
        if degree == 0 || degree > self.cap {
            return 0..0;
        }
        let (a, b) = self.degree_ranges[degree - 1];
        a..b
    }

    pub fn dimension(&self, degree: usize) -> usize {
        self.degree_range(degree).len()
    }

    /// Two tables are interchangeable iff they describe the same algebra and
    /// capacity; tables are deterministic functions of these parameters.
    pub fn same_context(&self, other: &BasisTable) -> bool {
        self.field == other.field && self.cap == other.cap && self.gen_names == other.gen_names
    }

    /// The bracket of two basis elements, expanded in the basis.
    ///
    /// Rewrites with antisymmetry and the Jacobi identity until every term
    /// is a basis word: for u = v the bracket vanishes; for u > v flip with
    /// sign; for u < v either (u, v) is the standard factorization of the
    /// Lyndon word uv (emit it), or u = (u1, u2) is split and
    /// [u, v] = [u1, [u2, v]] - [u2, [u1, v]] recursed. Results are memoized
    /// per ordered pair; an in-progress marker turns any rewriting cycle into
    /// a hard error instead of a hang.
    pub fn normalize_bracket(&self, u: usize, v: usize) -> Result<Arc<TermMap>> {
        let du = self.words[u].degree;
        let dv = self.words[v].degree;
        if du + dv > self.cap {
            return Err(Error::DegreeOverflow { needed: du + dv, cap: self.cap });
        }
        self.bracket_indices(u, v)
    }

    fn bracket_indices(&self, u: usize, v: usize) -> Result<Arc<TermMap>> {
        if u == v {
            return Ok(Arc::new(TermMap::new()));
        }
        if self.words[u].word > self.words[v].word {
            let flipped = self.bracket_indices(v, u)?;
            let negated: TermMap = flipped.iter().map(|(k, c)| (*k, -c)).collect();
            return Ok(Arc::new(negated));
        }

        if let Some(map) = self.memo.read().unwrap().get(&(u, v)) {
            return Ok(map.clone());
        }
        let fresh = REWRITE_STACK.with(|s| s.borrow_mut().insert((u, v)));
        if !fresh {
            return Err(Error::Internal(format!("bracket rewriting cycle at pair ({u}, {v})")));
        }
        let result = self.rewrite_pair(u, v);
        REWRITE_STACK.with(|s| s.borrow_mut().remove(&(u, v)));
        if let Ok(map) = &result {
            self.memo.write().unwrap().insert((u, v), map.clone());
        }
        result
    }

    /// Core rewrite for a lexicographically ordered pair u < v.
    fn rewrite_pair(&self, u: usize, v: usize) -> Result<Arc<TermMap>> {
        let uw = &self.words[u];
        let vw = &self.words[v];
        debug_assert!(uw.word < vw.word);

        if self.is_standard_pair(u, v) {
            let mut concat = uw.word.clone();
            concat.extend_from_slice(&vw.word);
            let idx = self.index_by_word.get(&concat).ok_or_else(|| {
                Error::Internal("standard pair concatenation missing from table".into())
            })?;
            let mut map = TermMap::new();
            map.insert(*idx, BigRational::one());
            return Ok(Arc::new(map));
        }

        // u is not a letter here: letters always form standard pairs.
        let (u1, u2) = uw.factors.expect("non-letter basis word has factors");

        // [u, v] = [[u1, u2], v] = [u1, [u2, v]] - [u2, [u1, v]]
        let inner_right = self.bracket_indices(u2, v)?;
        let inner_left = self.bracket_indices(u1, v)?;

        let mut acc = TermMap::new();
        for (m, c) in inner_right.iter() {
            let sub = self.bracket_indices(u1, *m)?;
            accumulate(&mut acc, &sub, c);
        }
        let minus_one = -BigRational::one();
        for (m, c) in inner_left.iter() {
            let sub = self.bracket_indices(u2, *m)?;
            accumulate(&mut acc, &sub, &(c * &minus_one));
        }
        Ok(Arc::new(acc))
    }

    /// (u, v) with u < v is standard iff u is a letter or the right factor
    /// of u is >= v; then uv is Lyndon with standard factorization (u, v).
    fn is_standard_pair(&self, u: usize, v: usize) -> bool {
        let uw = &self.words[u];
        match uw.factors {
            None => true,
            Some((_, u2)) => self.words[u2].word >= self.words[v].word,
        }
    }

    /// Renders the standard bracketing of a basis word, e.g. `[x,[x,y]]`.
    pub fn bracket_text(&self, index: usize) -> String {
        let w = &self.words[index];
        match w.factors {
            None => self.gen_names[w.word[0] as usize].clone(),
            Some((l, r)) => format!("[{},{}]", self.bracket_text(l), self.bracket_text(r)),
        }
    }
}

impl std::fmt::Debug for BasisTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasisTable")
            .field("field", &self.field)
            .field("gens", &self.gen_names)
            .field("cap", &self.cap)
            .field("words", &self.words.len())
            .finish()
    }
}

fn accumulate(acc: &mut TermMap, add: &TermMap, scale: &BigRational) {
    for (k, c) in add {
        let entry = acc.entry(*k).or_insert_with(BigRational::zero);
        *entry += c * scale;
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

/// Dimension of the degree-d homogeneous component of the free Lie algebra
/// on n generators: the necklace count (1/d) * sum over e | d of
/// mu(e) * n^(d/e). Independent of basis generation; used as its oracle.
pub fn witt_dimension(n: usize, d: usize) -> usize {
    assert!(n >= 1 && d >= 1);
    let mut total: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            let mu = moebius(e);
            if mu != 0 {
                total += (mu as i128) * (n as i128).pow((d / e) as u32);
            }
        }
    }
    debug_assert!(total >= 0 && total % (d as i128) == 0);
    (total / d as i128) as usize
}

fn moebius(mut n: usize) -> i64 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Occurrence counts of each generator in a word.
pub fn multidegree(word: &[u8], n_gens: usize) -> Vec<usize> {
    let mut counts = vec![0usize; n_gens];
    for &c in word {
        counts[c as usize] += 1;
    }
    counts
}

//! Named, seeded, reproducible verification suites. Each suite binds a
//! family of algebraic laws to executable checks over randomized or
//! exhaustive inputs and emits a machine-readable report. Identical
//! configurations produce byte-identical reports: per-case RNGs derive from
//! (seed, case index), cases run in parallel but reports assemble in case
//! order, and all checks are exact equalities over exact fields.

use crate::category::{
    self, component_decompose, coords, find_separating_point, point_from_coords, poly_map,
    projection_identity_holds, Category, Morphism,
};
use crate::endo::{AutVerdict, Endo, SemiMorphism};
use crate::error::{Error, Result};
use crate::hall::{witt_dimension, BasisTable};
use crate::poly::LiePoly;
use crate::scalar::{Field, FieldAut, Scalar};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

pub const SUITES: &[&str] = &[
    "basis_dims",
    "jacobi",
    "envelope",
    "constants",
    "tau_scaling",
    "fhat",
    "scalar_center",
    "semi",
    "diagonal",
    "rank2",
    "duality",
    "matrix_iso",
];

const SAMPLING_NOTE: &str =
    "coefficients from {-3..3} minus 0 (surd parts likewise over quadratic fields); \
     basis words uniform per degree";

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random-case count override; exhaustive sweeps ignore it.
    pub cases: Option<usize>,
    pub max_degree: Option<usize>,
    pub n_gens: Option<usize>,
    pub field: Field,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, cases: None, max_degree: None, n_gens: None, field: Field::Rational }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub cases: usize,
    pub max_degree: usize,
    pub n_gens: String,
    pub field: String,
    pub sampling: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: u64,
    /// The violated law, stated as the identity itself.
    pub law: String,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: ConfigEcho,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub verdict: String,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn is_pass(&self) -> bool {
        self.failed == 0
    }

    fn assemble(suite: &str, echo: ConfigEcho, cases: usize, failures: Vec<Failure>) -> Report {
        let failed = failures.len();
        Report {
            suite: suite.to_string(),
            config: echo,
            cases,
            passed: cases - failed.min(cases),
            failed,
            verdict: if failed == 0 { "PASS".into() } else { "FAIL".into() },
            failures,
        }
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    match name {
        "basis_dims" => basis_dims(cfg),
        "jacobi" => jacobi(cfg),
        "envelope" => envelope(cfg),
        "constants" => constants(cfg),
        "tau_scaling" => tau_scaling(cfg),
        "fhat" => fhat(cfg),
        "scalar_center" => scalar_center(cfg),
        "semi" => semi(cfg),
        "diagonal" => diagonal(cfg),
        "rank2" => rank2(cfg),
        "duality" => duality(cfg),
        "matrix_iso" => matrix_iso(cfg),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Runs every suite, in parallel; per-suite errors are reported without
/// aborting the siblings. Result order is fixed regardless of scheduling.
pub fn run_all(cfg: &SuiteConfig) -> Vec<(String, Result<Report>)> {
    SUITES
        .par_iter()
        .map(|name| (name.to_string(), run_suite(name, cfg)))
        .collect()
}

// ---------------------------------------------------------------- sampling

pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mixed = seed ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn small_coeff(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let a: i64 = rng.gen_range(-3..=3);
        if a != 0 {
            return Scalar::from_integer(a, field);
        }
    }
}

fn small_quad(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let a: i64 = rng.gen_range(-3..=3);
        let b: i64 = rng.gen_range(-3..=3);
        if a == 0 && b == 0 {
            continue;
        }
        let a = num::BigRational::from_integer(a.into());
        let b = num::BigRational::from_integer(b.into());
        return Scalar::quad(a, b, field).expect("quad field");
    }
}

fn random_word(rng: &mut ChaCha8Rng, table: &Arc<BasisTable>, max_deg: usize) -> usize {
    loop {
        let d = rng.gen_range(1..=max_deg.min(table.cap()));
        let range = table.degree_range(d);
        if !range.is_empty() {
            return rng.gen_range(range.start..range.end);
        }
    }
}

fn word_of_degree(rng: &mut ChaCha8Rng, table: &Arc<BasisTable>, d: usize) -> usize {
    let range = table.degree_range(d);
    assert!(!range.is_empty(), "no words of degree {d}");
    rng.gen_range(range.start..range.end)
}

fn random_poly(rng: &mut ChaCha8Rng, table: &Arc<BasisTable>, max_deg: usize) -> LiePoly {
    let terms = rng.gen_range(1..=2);
    let mut acc = LiePoly::zero(table.clone());
    for _ in 0..terms {
        let idx = random_word(rng, table, max_deg);
        let c = small_coeff(rng, table.field());
        acc = acc.add(&LiePoly::single(table.clone(), idx, c)).expect("same ctx");
    }
    acc
}

fn random_linear(rng: &mut ChaCha8Rng, table: &Arc<BasisTable>) -> Endo {
    let n = table.n_gens();
    let field = table.field();
    let m = crate::matrix::Matrix::from_fn(n, field, |_, _| {
        Scalar::from_integer(rng.gen_range(-3..=3), field)
    });
    Endo::from_matrix(table.clone(), &m).expect("shape fits")
}

fn random_invertible_linear(rng: &mut ChaCha8Rng, table: &Arc<BasisTable>) -> Endo {
    loop {
        let e = random_linear(rng, table);
        if !e.linear_part().det().expect("field ops").is_zero() {
            return e;
        }
    }
}

fn random_endo(rng: &mut ChaCha8Rng, table: &Arc<BasisTable>, img_deg: usize) -> Endo {
    let images = (0..table.n_gens()).map(|_| random_poly(rng, table, img_deg)).collect();
    Endo::new(table.clone(), images).expect("same ctx")
}

// ------------------------------------------------------------ case runner

fn run_parallel<F>(seed: u64, base: u64, count: usize, f: F) -> Result<Vec<Failure>>
where
    F: Fn(u64, &mut ChaCha8Rng) -> Result<Option<Failure>> + Sync,
{
    let outcomes: Result<Vec<Option<Failure>>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let case = base + i;
            let mut rng = case_rng(seed, case);
            f(case, &mut rng)
        })
        .collect();
    Ok(outcomes?.into_iter().flatten().collect())
}

fn fail(case: u64, law: &str, inputs: String, lhs: String, rhs: String) -> Option<Failure> {
    Some(Failure { case, law: law.to_string(), inputs, lhs, rhs })
}

fn check_eq(
    case: u64,
    law: &str,
    inputs: String,
    lhs: &LiePoly,
    rhs: &LiePoly,
) -> Option<Failure> {
    if lhs == rhs {
        None
    } else {
        fail(case, law, inputs, lhs.canonical_text(), rhs.canonical_text())
    }
}

fn check_endo_eq(case: u64, law: &str, inputs: String, lhs: &Endo, rhs: &Endo) -> Option<Failure> {
    if lhs == rhs {
        None
    } else {
        fail(
            case,
            law,
            inputs,
            crate::text::format_endo_map(lhs.images(), lhs.ctx()),
            crate::text::format_endo_map(rhs.images(), rhs.ctx()),
        )
    }
}

fn echo(cfg: &SuiteConfig, cases: usize, max_degree: usize, n_gens: &str, field: Field) -> ConfigEcho {
    ConfigEcho {
        seed: cfg.seed,
        cases,
        max_degree,
        n_gens: n_gens.to_string(),
        field: field.to_string(),
        sampling: SAMPLING_NOTE,
    }
}

/// Tables for the randomized suites: ranks 2 and 3 alternating by case, or
/// a single configured rank. Identities below use two distinct generators,
/// so rank 1 is rejected.
fn rank_tables(cfg: &SuiteConfig, cap: usize) -> Result<(Vec<Arc<BasisTable>>, String)> {
    match cfg.n_gens {
        Some(n) if n < 2 => {
            Err(Error::ConfigInvalid("randomized suites need at least 2 generators".into()))
        }
        Some(n) => Ok((vec![BasisTable::generate(n, cap, cfg.field, None)?], n.to_string())),
        None => Ok((
            vec![
                BasisTable::generate(2, cap, cfg.field, None)?,
                BasisTable::generate(3, cap, cfg.field, None)?,
            ],
            "2,3".to_string(),
        )),
    }
}

// ---------------------------------------------------------------- suites

/// Generated per-degree basis sizes against the necklace-count oracle and
/// the frozen dimension tables.
fn basis_dims(cfg: &SuiteConfig) -> Result<Report> {
    let expectations: &[(usize, &[usize])] = &[
        (1, &[1, 0, 0, 0, 0, 0]),
        (2, &[2, 1, 2, 3, 6, 9]),
        (3, &[3, 3, 8, 18]),
    ];
    let mut failures = Vec::new();
    let mut case = 0u64;
    for (n, dims) in expectations {
        let table = BasisTable::generate(*n, dims.len(), cfg.field, None)?;
        for (i, want) in dims.iter().enumerate() {
            let d = i + 1;
            let got = table.dimension(d);
            let oracle = witt_dimension(*n, d);
            if got != *want || got != oracle {
                failures.push(Failure {
                    case,
                    law: "per-degree basis count = necklace dimension".into(),
                    inputs: format!("n={n} degree={d}"),
                    lhs: got.to_string(),
                    rhs: format!("{want} (frozen), {oracle} (oracle)"),
                });
            }
            case += 1;
        }
    }
    let total = case as usize;
    Ok(Report::assemble("basis_dims", echo(cfg, total, 6, "1..=3", cfg.field), total, failures))
}

/// Antisymmetry and the Jacobi identity on seeded random triples.
fn jacobi(cfg: &SuiteConfig) -> Result<Report> {
    let total = cfg.cases.unwrap_or(1000);
    let max_degree = cfg.max_degree.unwrap_or(5);
    let (tables, ranks) = rank_tables(cfg, max_degree)?;
    let failures = run_parallel(cfg.seed, 0, total, |case, rng| {
        let table = &tables[case as usize % tables.len()];
        let cap = table.cap();
        let d1 = rng.gen_range(1..=cap.saturating_sub(2).max(1));
        let d2 = rng.gen_range(1..=(cap - d1).saturating_sub(1).max(1));
        let d3 = rng.gen_range(1..=(cap - d1 - d2).max(1));
        let mk = |rng: &mut ChaCha8Rng, d: usize| {
            let idx = word_of_degree(rng, table, d);
            LiePoly::single(table.clone(), idx, small_coeff(rng, table.field()))
        };
        let p = mk(rng, d1);
        let q = mk(rng, d2);
        let r = mk(rng, d3);
        let anti = p.bracket(&q)?.add(&q.bracket(&p)?)?;
        if !anti.is_zero() {
            return Ok(fail(
                case,
                "[p,q] + [q,p] = 0",
                format!("p={}, q={}", p.canonical_text(), q.canonical_text()),
                anti.canonical_text(),
                "0".into(),
            ));
        }
        let jac = p
            .bracket(&q.bracket(&r)?)?
            .add(&q.bracket(&r.bracket(&p)?)?)?
            .add(&r.bracket(&p.bracket(&q)?)?)?;
        if !jac.is_zero() {
            return Ok(fail(
                case,
                "[p,[q,r]] + [q,[r,p]] + [r,[p,q]] = 0",
                format!(
                    "p={}, q={}, r={}",
                    p.canonical_text(),
                    q.canonical_text(),
                    r.canonical_text()
                ),
                jac.canonical_text(),
                "0".into(),
            ));
        }
        Ok(None)
    })?;
    Ok(Report::assemble(
        "jacobi",
        echo(cfg, total, max_degree, &ranks, cfg.field),
        total,
        failures,
    ))
}

/// Exhaustive check that every normalized basis bracket matches the
/// associative commutator of the envelope images, and that every structure
/// constant lies in the prime subfield (integral over the rationals).
fn envelope(cfg: &SuiteConfig) -> Result<Report> {
    let sweeps: &[(usize, usize)] = &[(2, 6), (3, 5)];
    let mut failures = Vec::new();
    let mut case = 0u64;
    for (n, bound) in sweeps {
        let table = BasisTable::generate(*n, *bound, cfg.field, None)?;
        let words: Vec<usize> = (0..table.words().len()).collect();
        let pairs: Vec<(usize, usize)> = words
            .iter()
            .flat_map(|&u| words.iter().map(move |&v| (u, v)))
            .filter(|(u, v)| table.word(*u).degree + table.word(*v).degree <= *bound)
            .collect();
        let base = case;
        let chunk: Result<Vec<Option<Failure>>> = pairs
            .par_iter()
            .enumerate()
            .map(|(i, (u, v))| {
                let case = base + i as u64;
                let expansion = table.normalize_bracket(*u, *v)?;
                let normalized = LiePoly::from_rational_terms(table.clone(), &expansion);
                let lhs = normalized.to_associative();
                let pu = LiePoly::single(table.clone(), *u, Scalar::one(table.field()));
                let pv = LiePoly::single(table.clone(), *v, Scalar::one(table.field()));
                let rhs = pu.to_associative().commutator(&pv.to_associative())?;
                if lhs != rhs {
                    return Ok(fail(
                        case,
                        "envelope(normalize_bracket(u,v)) = [envelope(u), envelope(v)]",
                        format!("u={}, v={}", table.bracket_text(*u), table.bracket_text(*v)),
                        format!("{lhs:?}"),
                        format!("{rhs:?}"),
                    ));
                }
                for coeff in normalized.terms().values() {
                    let integral_ok = cfg.field != Field::Rational || coeff.is_integer();
                    if !coeff.in_prime_subfield() || !integral_ok {
                        return Ok(fail(
                            case,
                            "structure constants lie in the prime subfield",
                            format!("u={}, v={}", table.bracket_text(*u), table.bracket_text(*v)),
                            coeff.canonical_text(),
                            "a prime-subfield (integral) constant".into(),
                        ));
                    }
                }
                Ok(None)
            })
            .collect();
        failures.extend(chunk?.into_iter().flatten());
        case += pairs.len() as u64;
    }
    let total = case as usize;
    Ok(Report::assemble("envelope", echo(cfg, total, 6, "2,3", cfg.field), total, failures))
}

/// The constant-endomorphism calculus.
fn constants(cfg: &SuiteConfig) -> Result<Report> {
    let per_law = cfg.cases.unwrap_or(200);
    let (tables, ranks) = rank_tables(cfg, 6)?;
    let pick = |case: u64| &tables[case as usize % tables.len()];
    let mut failures = Vec::new();

    // c_u . g = c_u for permutations g
    failures.extend(run_parallel(cfg.seed, 0, per_law, |case, rng| {
        let table = pick(case);
        let u = random_poly(rng, table, 4);
        let mut perm: Vec<usize> = (0..table.n_gens()).collect();
        for i in (1..perm.len()).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let c_u = Endo::constant(u.clone());
        let g = Endo::permutation(table.clone(), &perm)?;
        Ok(check_endo_eq(
            case,
            "compose(c_u, g_perm) = c_u",
            format!("u={}, perm={perm:?}", u.canonical_text()),
            &c_u.compose(&g)?,
            &c_u,
        ))
    })?);

    // c_p . c_x = c_p
    failures.extend(run_parallel(cfg.seed, per_law as u64, per_law, |case, rng| {
        let table = pick(case);
        let p = random_poly(rng, table, 4);
        let x = rng.gen_range(0..table.n_gens());
        let c_p = Endo::constant(p.clone());
        let c_x = Endo::constant(LiePoly::generator(table.clone(), x)?);
        Ok(check_endo_eq(
            case,
            "compose(c_p, c_x) = c_p",
            format!("p={}, x=#{x}", p.canonical_text()),
            &c_p.compose(&c_x)?,
            &c_p,
        ))
    })?);

    // phi . c_x = c_{phi(x)}, and the general form phi . c_p = c_{phi(p)}
    failures.extend(run_parallel(cfg.seed, 2 * per_law as u64, per_law, |case, rng| {
        let table = pick(case);
        let phi = random_endo(rng, table, 2);
        let x = rng.gen_range(0..table.n_gens());
        let gen_x = LiePoly::generator(table.clone(), x)?;
        let lhs = phi.compose(&Endo::constant(gen_x.clone()))?;
        let rhs = Endo::constant(phi.apply(&gen_x)?);
        if let Some(f) = check_endo_eq(
            case,
            "compose(phi, c_x) = c_{phi(x)}",
            format!("phi={}, x=#{x}", crate::text::format_endo_map(phi.images(), table)),
            &lhs,
            &rhs,
        ) {
            return Ok(Some(f));
        }
        let p = random_poly(rng, table, 2);
        let lhs = phi.compose(&Endo::constant(p.clone()))?;
        let rhs = Endo::constant(phi.apply(&p)?);
        Ok(check_endo_eq(
            case,
            "compose(phi, c_p) = c_{phi(p)}",
            format!(
                "phi={}, p={}",
                crate::text::format_endo_map(phi.images(), table),
                p.canonical_text()
            ),
            &lhs,
            &rhs,
        ))
    })?);

    // c_{p1+p2} = phi . c_{x+y} with phi(x)=p1, phi(y)=p2
    failures.extend(run_parallel(cfg.seed, 3 * per_law as u64, per_law, |case, rng| {
        let table = pick(case);
        let p1 = random_poly(rng, table, 4);
        let p2 = random_poly(rng, table, 4);
        let mut images = vec![p1.clone(), p2.clone()];
        for g in 2..table.n_gens() {
            images.push(LiePoly::generator(table.clone(), g)?);
        }
        let phi = Endo::new(table.clone(), images)?;
        let x_plus_y = LiePoly::generator(table.clone(), 0)?
            .add(&LiePoly::generator(table.clone(), 1)?)?;
        let lhs = Endo::constant(p1.add(&p2)?);
        let rhs = phi.compose(&Endo::constant(x_plus_y))?;
        Ok(check_endo_eq(
            case,
            "c_{p1+p2} = compose(phi, c_{x+y})",
            format!("p1={}, p2={}", p1.canonical_text(), p2.canonical_text()),
            &lhs,
            &rhs,
        ))
    })?);

    let total = 4 * per_law;
    Ok(Report::assemble("constants", echo(cfg, total, 6, &ranks, cfg.field), total, failures))
}

/// Diagonal maps scale every basis word by its multidegree monomial, and
/// the eigenvalue condition at the sample points selects exactly the words
/// of multidegree (1,1,0,...).
fn tau_scaling(cfg: &SuiteConfig) -> Result<Report> {
    let max_degree = cfg.max_degree.unwrap_or(5);
    let mut failures = Vec::new();
    let mut case = 0u64;
    for n in [2usize, 3] {
        let table = BasisTable::generate(n, max_degree, cfg.field, None)?;
        let words: Vec<usize> = (0..table.words().len()).collect();
        let base = case;
        let chunk: Result<Vec<Option<Failure>>> = words
            .par_iter()
            .map(|&w| {
                let case = base + w as u64;
                let mut rng = case_rng(cfg.seed, case);
                let entries: Vec<Scalar> =
                    (0..n).map(|_| small_coeff(&mut rng, table.field())).collect();
                let tau = Endo::diagonal(table.clone(), &entries)?;
                let poly = LiePoly::single(table.clone(), w, Scalar::one(table.field()));
                let counts = crate::hall::multidegree(&table.word(w).word, n);
                let mut factor = Scalar::one(table.field());
                for (g, k) in counts.iter().enumerate() {
                    factor = factor.checked_mul(&entries[g].pow(*k as i64)?)?;
                }
                Ok(check_eq(
                    case,
                    "diag(a).u = (prod a_i^{l_i(u)}) u",
                    format!(
                        "u={}, a={:?}",
                        table.bracket_text(w),
                        entries.iter().map(Scalar::canonical_text).collect::<Vec<_>>()
                    ),
                    &tau.apply(&poly)?,
                    &poly.scale(&factor)?,
                ))
            })
            .collect();
        failures.extend(chunk?.into_iter().flatten());
        case += words.len() as u64;

        // the filter at the sample points a = (2,..,2) and a = (2,2,1,..,1)
        let two = Scalar::from_integer(2, table.field());
        let one = Scalar::one(table.field());
        let mut sample_points = vec![vec![two.clone(); n]];
        if n > 2 {
            let mut mixed = vec![two.clone(), two.clone()];
            mixed.extend(std::iter::repeat_n(one, n - 2));
            sample_points.push(mixed);
        }
        let mut selected = Vec::new();
        let mut expected = Vec::new();
        for &w in &words {
            let counts = crate::hall::multidegree(&table.word(w).word, n);
            let passes_all = sample_points.iter().all(|point| {
                let mut lhs = Scalar::one(table.field());
                for (g, k) in counts.iter().enumerate() {
                    lhs = lhs
                        .checked_mul(&point[g].pow(*k as i64).expect("nonzero"))
                        .expect("field ops");
                }
                let rhs = point[0].checked_mul(&point[1]).expect("field ops");
                lhs == rhs
            });
            if passes_all {
                selected.push(w);
            }
            let want = counts[0] == 1
                && counts[1] == 1
                && counts.iter().skip(2).all(|&k| k == 0);
            if want {
                expected.push(w);
            }
        }
        if selected != expected {
            failures.push(Failure {
                case,
                law: "eigenvalue filter selects exactly multidegree (1,1,0,..) words".into(),
                inputs: format!("n={n}, degrees <= {max_degree}"),
                lhs: format!("{selected:?}"),
                rhs: format!("{expected:?}"),
            });
        }
        case += 1;
    }
    let total = case as usize;
    Ok(Report::assemble(
        "tau_scaling",
        echo(cfg, total, max_degree, "2,3", cfg.field),
        total,
        failures,
    ))
}

/// Conjugation by the scalar map: the triple-composition route equals the
/// graded-rescale route, linear maps are fixed, and the two closed-form
/// witnesses come out exactly.
fn fhat(cfg: &SuiteConfig) -> Result<Report> {
    let count = cfg.cases.unwrap_or(100);
    let img_deg = cfg.max_degree.unwrap_or(4);
    let (tables, ranks) = rank_tables(cfg, img_deg)?;
    let a_values: Vec<Scalar> = vec![
        Scalar::from_integer(2, cfg.field),
        Scalar::from_integer(3, cfg.field),
        Scalar::from_integer(-1, cfg.field),
        Scalar::from_ratio(1, 2, cfg.field)?,
    ];
    let mut failures = Vec::new();

    failures.extend(run_parallel(cfg.seed, 0, count, |case, rng| {
        let table = &tables[case as usize % tables.len()];
        let phi = random_endo(rng, table, img_deg);
        for a in &a_values {
            let f_a = Endo::scalar_map(table.clone(), a)?;
            let f_inv = Endo::scalar_map(table.clone(), &a.inv()?)?;
            let composed = f_a.compose(&phi.compose(&f_inv)?)?;
            let rescaled = Endo::new(
                table.clone(),
                phi.images()
                    .iter()
                    .map(|img| img.scale_graded(a))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            if let Some(f) = check_endo_eq(
                case,
                "f_a . phi . f_a^-1 rescales the degree-i component by a^{i-1}",
                format!(
                    "phi={}, a={}",
                    crate::text::format_endo_map(phi.images(), table),
                    a.canonical_text()
                ),
                &composed,
                &rescaled,
            ) {
                return Ok(Some(f));
            }
        }
        Ok(None)
    })?);

    // linear maps are fixed points
    failures.extend(run_parallel(cfg.seed, count as u64, count, |case, rng| {
        let table = &tables[case as usize % tables.len()];
        let lin = random_linear(rng, table);
        let a = small_coeff(rng, table.field());
        Ok(check_endo_eq(
            case,
            "scalar conjugation fixes every linear endomorphism",
            format!(
                "phi={}, a={}",
                crate::text::format_endo_map(lin.images(), table),
                a.canonical_text()
            ),
            &lin.conjugate_by_scalar(&a)?,
            &lin,
        ))
    })?);

    // frozen witnesses: x + [y,z] -> x + a[y,z] and [x,y] -> a[x,y];
    // these live at their own fixed ranks regardless of any override
    let witness_base = 2 * count as u64;
    {
        let t2 = BasisTable::generate(2, img_deg.max(2), cfg.field, None)?;
        let t3 = BasisTable::generate(3, img_deg.max(2), cfg.field, None)?;
        let a = Scalar::from_integer(2, cfg.field);
        let x = LiePoly::generator(t3.clone(), 0)?;
        let y = LiePoly::generator(t3.clone(), 1)?;
        let z = LiePoly::generator(t3.clone(), 2)?;
        let phi = Endo::new(
            t3.clone(),
            vec![x.add(&y.bracket(&z)?)?, y.clone(), z.clone()],
        )?;
        let got = phi.conjugate_by_scalar(&a)?;
        let want = x.add(&y.bracket(&z)?.scale(&a)?)?;
        if got.image(0) != &want {
            failures.push(Failure {
                case: witness_base,
                law: "conjugate of x + [y,z] is x + a[y,z]".into(),
                inputs: format!("a={}", a.canonical_text()),
                lhs: got.image(0).canonical_text(),
                rhs: want.canonical_text(),
            });
        }
        let x2 = LiePoly::generator(t2.clone(), 0)?;
        let y2 = LiePoly::generator(t2.clone(), 1)?;
        let phi2 = Endo::new(t2.clone(), vec![x2.bracket(&y2)?, y2.clone()])?;
        let got2 = phi2.conjugate_by_scalar(&a)?;
        let want2 = x2.bracket(&y2)?.scale(&a)?;
        if got2.image(0) != &want2 {
            failures.push(Failure {
                case: witness_base + 1,
                law: "conjugate of [x,y] is a[x,y]".into(),
                inputs: format!("a={}", a.canonical_text()),
                lhs: got2.image(0).canonical_text(),
                rhs: want2.canonical_text(),
            });
        }
    }

    let total = 2 * count + 2;
    Ok(Report::assemble("fhat", echo(cfg, total, img_deg, &ranks, cfg.field), total, failures))
}

/// Scalar maps commute with every linear endomorphism but not with
/// arbitrary endomorphisms: a concrete non-commuting witness must exist.
fn scalar_center(cfg: &SuiteConfig) -> Result<Report> {
    let count = cfg.cases.unwrap_or(200);
    let (tables, ranks) = rank_tables(cfg, 4)?;
    let mut failures = run_parallel(cfg.seed, 0, count, |case, rng| {
        let table = &tables[case as usize % tables.len()];
        let phi = random_linear(rng, table);
        let a = small_coeff(rng, table.field());
        let f_a = Endo::scalar_map(table.clone(), &a)?;
        Ok(check_endo_eq(
            case,
            "compose(f_a, phi) = compose(phi, f_a) for linear phi",
            format!(
                "phi={}, a={}",
                crate::text::format_endo_map(phi.images(), table),
                a.canonical_text()
            ),
            &f_a.compose(&phi)?,
            &phi.compose(&f_a)?,
        ))
    })?;

    // witness: phi(x) = [x,y] does not commute with f_2
    let t2 = BasisTable::generate(2, 4, cfg.field, None)?;
    let x = LiePoly::generator(t2.clone(), 0)?;
    let y = LiePoly::generator(t2.clone(), 1)?;
    let phi = Endo::new(t2.clone(), vec![x.bracket(&y)?, y.clone()])?;
    let f_2 = Endo::scalar_map(t2.clone(), &Scalar::from_integer(2, cfg.field))?;
    if f_2.compose(&phi)? == phi.compose(&f_2)? {
        failures.push(Failure {
            case: count as u64,
            law: "a non-commuting witness exists outside the linear subsemigroup".into(),
            inputs: "phi(x)=[x,y], a=2".into(),
            lhs: "compose(f_a, phi) = compose(phi, f_a)".into(),
            rhs: "they must differ".into(),
        });
    }

    let total = count + 1;
    Ok(Report::assemble("scalar_center", echo(cfg, total, 4, &ranks, cfg.field), total, failures))
}

/// The coefficient map attached to conjugation over Q(sqrt 2): additive,
/// multiplicative on brackets, sigma-semilinear; conjugating a
/// rational-coefficient endomorphism is the identity. This suite pins its
/// own field: the laws only bite over a quadratic extension.
fn semi(cfg: &SuiteConfig) -> Result<Report> {
    let field = if cfg.field.is_quad() { cfg.field } else { Field::quad_ext(2)? };
    let count = cfg.cases.unwrap_or(500);
    let table = BasisTable::generate(2, 6, field, None)?;
    let sigma = SemiMorphism::from_field_aut(FieldAut::Conjugation, table.clone())?;
    let failures = run_parallel(cfg.seed, 0, count, |case, rng| {
        let w1 = random_quad_poly(rng, &table, 3);
        let w2 = random_quad_poly(rng, &table, 3);
        let lambda = small_quad(rng, field);

        let additive = sigma.apply(&w1.add(&w2)?)?;
        let additive_rhs = sigma.apply(&w1)?.add(&sigma.apply(&w2)?)?;
        if let Some(f) = check_eq(
            case,
            "sigma_F(w1 + w2) = sigma_F(w1) + sigma_F(w2)",
            format!("w1={}, w2={}", w1.canonical_text(), w2.canonical_text()),
            &additive,
            &additive_rhs,
        ) {
            return Ok(Some(f));
        }

        let mult = sigma.apply(&w1.bracket(&w2)?)?;
        let mult_rhs = sigma.apply(&w1)?.bracket(&sigma.apply(&w2)?)?;
        if let Some(f) = check_eq(
            case,
            "sigma_F[w1, w2] = [sigma_F(w1), sigma_F(w2)]",
            format!("w1={}, w2={}", w1.canonical_text(), w2.canonical_text()),
            &mult,
            &mult_rhs,
        ) {
            return Ok(Some(f));
        }

        let semilinear = sigma.apply(&w1.scale(&lambda)?)?;
        let semilinear_rhs =
            sigma.apply(&w1)?.scale(&FieldAut::Conjugation.apply(&lambda)?)?;
        if let Some(f) = check_eq(
            case,
            "sigma_F(lambda w) = sigma(lambda) sigma_F(w)",
            format!("w={}, lambda={}", w1.canonical_text(), lambda.canonical_text()),
            &semilinear,
            &semilinear_rhs,
        ) {
            return Ok(Some(f));
        }

        // rational-coefficient endomorphisms are fixed by conjugation
        let rational = random_endo(rng, &table, 3);
        Ok(check_endo_eq(
            case,
            "semi-conjugation fixes rational-coefficient endomorphisms",
            crate::text::format_endo_map(rational.images(), &table),
            &sigma.semi_conjugate(&rational)?,
            &rational,
        ))
    })?;
    Ok(Report::assemble("semi", echo(cfg, count, 6, "2", field), count, failures))
}

fn random_quad_poly(rng: &mut ChaCha8Rng, table: &Arc<BasisTable>, max_deg: usize) -> LiePoly {
    let terms = rng.gen_range(1..=2);
    let mut acc = LiePoly::zero(table.clone());
    for _ in 0..terms {
        let idx = random_word(rng, table, max_deg);
        let c = small_quad(rng, table.field());
        acc = acc.add(&LiePoly::single(table.clone(), idx, c)).expect("same ctx");
    }
    acc
}

/// Determinant twists: the defining action, multiplicativity, the swap
/// involution and the stretch-constant identity.
fn diagonal(cfg: &SuiteConfig) -> Result<Report> {
    let count = cfg.cases.unwrap_or(100);
    let (tables, ranks) = rank_tables(cfg, 3)?;
    let mut failures = run_parallel(cfg.seed, 0, count, |case, rng| {
        let table = &tables[case as usize % tables.len()];
        let k: i64 = [0, 1, 2, -1][rng.gen_range(0..4)];
        let g1 = random_invertible_linear(rng, table);
        let g2 = random_invertible_linear(rng, table);

        // defining action, computed independently of the operation
        let det = g1.to_matrix()?.det()?;
        let manual = Endo::new(
            table.clone(),
            g1.images()
                .iter()
                .map(|img| img.scale(&det.pow(k)?))
                .collect::<Result<Vec<_>>>()?,
        )?;
        if let Some(f) = check_endo_eq(
            case,
            "twist(g)(x) = det(g)^k g(x)",
            format!("k={k}, g={}", crate::text::format_endo_map(g1.images(), table)),
            &g1.determinant_twist(k)?,
            &manual,
        ) {
            return Ok(Some(f));
        }

        // multiplicativity
        let lhs = g1.compose(&g2)?.determinant_twist(k)?;
        let rhs = g1.determinant_twist(k)?.compose(&g2.determinant_twist(k)?)?;
        Ok(check_endo_eq(
            case,
            "twist(g1 g2) = twist(g1) twist(g2)",
            format!("k={k}"),
            &lhs,
            &rhs,
        ))
    })?;

    let base = count as u64;
    let t2 = BasisTable::generate(2, 3, cfg.field, None)?;
    let t3 = BasisTable::generate(3, 3, cfg.field, None)?;
    let g = Endo::swap(t2.clone(), 0, 1)?;
    if !g.compose(&g)?.is_identity() {
        failures.push(Failure {
            case: base,
            law: "the swap is an involution".into(),
            inputs: "g = swap(x,y)".into(),
            lhs: "swap^2".into(),
            rhs: "identity".into(),
        });
    }
    let c_x = Endo::constant(LiePoly::generator(t3.clone(), 0)?);
    let g_my = Endo::stretch(t3.clone(), 1, &Scalar::from_integer(5, cfg.field))?;
    if g_my.compose(&c_x)? != c_x {
        failures.push(Failure {
            case: base + 1,
            law: "compose(stretch(y,m), c_x) = c_x".into(),
            inputs: "m=5".into(),
            lhs: "compose(stretch, c_x)".into(),
            rhs: "c_x".into(),
        });
    }

    let total = count + 2;
    Ok(Report::assemble("diagonal", echo(cfg, total, 3, &ranks, cfg.field), total, failures))
}

/// Rank-specific facts: the one-generator algebra vanishes above degree 1,
/// and no bounded search certifies the unipotent rank-2 map.
fn rank2(cfg: &SuiteConfig) -> Result<Report> {
    let mut failures = Vec::new();
    let cap = cfg.max_degree.unwrap_or(8);

    let t1 = BasisTable::generate(1, cap, cfg.field, None)?;
    for d in 2..=cap {
        if t1.dimension(d) != 0 || witt_dimension(1, d) != 0 {
            failures.push(Failure {
                case: d as u64 - 2,
                law: "a one-variable Lie polynomial is linear".into(),
                inputs: format!("degree {d}"),
                lhs: t1.dimension(d).to_string(),
                rhs: "0".into(),
            });
        }
    }
    let mut case = (cap - 1) as u64;

    let t2 = BasisTable::generate(2, 4, cfg.field, None)?;
    let x = LiePoly::generator(t2.clone(), 0)?;
    let y = LiePoly::generator(t2.clone(), 1)?;
    let phi = Endo::new(t2.clone(), vec![x.add(&x.bracket(&y)?)?, y.clone()])?;
    let verdict = phi.check_automorphism(None, cap)?;
    if matches!(verdict, AutVerdict::Yes(_)) {
        failures.push(Failure {
            case,
            law: "rank-2 automorphisms are linear: x + [x,y] has no inverse".into(),
            inputs: format!("phi(x)=x+[x,y], phi(y)=y, cap {cap}"),
            lhs: "yes".into(),
            rhs: "no or inconclusive".into(),
        });
    }
    case += 1;

    let swap = Endo::swap(t2.clone(), 0, 1)?;
    if !matches!(swap.check_automorphism(None, 2)?, AutVerdict::Yes(_)) {
        failures.push(Failure {
            case,
            law: "the swap is its own inverse".into(),
            inputs: "swap(x,y)".into(),
            lhs: "not yes".into(),
            rhs: "yes".into(),
        });
    }
    case += 1;

    let c_p = Endo::constant(x.bracket(&y)?);
    if c_p.check_automorphism(None, 4)? != AutVerdict::No {
        failures.push(Failure {
            case,
            law: "constants have singular linear part".into(),
            inputs: "c_{[x,y]}".into(),
            lhs: "not no".into(),
            rhs: "no".into(),
        });
    }
    case += 1;

    let unipotent = vec![x.add(&x.bracket(&y)?)?, y.clone()];
    if matches!(category::check_free_basis(&unipotent, cap)?, AutVerdict::Yes(_)) {
        failures.push(Failure {
            case,
            law: "{x + [x,y], y} is not a free basis certificate".into(),
            inputs: format!("cap {cap}"),
            lhs: "yes".into(),
            rhs: "no or inconclusive".into(),
        });
    }
    case += 1;

    let total = case as usize;
    Ok(Report::assemble("rank2", echo(cfg, total, cap, "1,2", cfg.field), total, failures))
}

/// The duality layer: the coordinate square, contravariance, the projection
/// decomposition, exhaustive separation at small ranks, and the rank-1
/// counterexample where separation provably fails.
fn duality(cfg: &SuiteConfig) -> Result<Report> {
    let square_cases = cfg.cases.unwrap_or(200);
    let separation_cases = cfg.cases.map(|c| c.div_ceil(2)).unwrap_or(100);
    let cat = Category::new(cfg.field, 12, 4, 2)?;
    let h = cat.h_object()?;
    let objects: Vec<Arc<BasisTable>> =
        (1..=3).map(|r| cat.object(r)).collect::<Result<Vec<_>>>()?;

    let random_morphism = |rng: &mut ChaCha8Rng,
                           src_rank: usize,
                           tgt: &Arc<BasisTable>,
                           max_deg: usize|
     -> Morphism {
        let images = (0..src_rank).map(|_| random_poly(rng, tgt, max_deg)).collect();
        Morphism::new(tgt.clone(), images).expect("same ctx")
    };

    let mut failures = run_parallel(cfg.seed, 0, square_cases, |case, rng| {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let fx = &objects[n - 1];
        let s = random_morphism(rng, m, fx, 2);
        let tuple: Vec<LiePoly> = (0..n).map(|_| random_poly(rng, &h, 2)).collect();
        let nu = point_from_coords(tuple.clone(), &h)?;

        // coordinate square
        let direct = poly_map(&s, &tuple, &h)?;
        let via_points = coords(&s.pullback(&nu)?);
        if direct != via_points {
            return Ok(fail(
                case,
                "poly_map(s, coords(nu)) = coords(pullback(s, nu))",
                format!("n={n}, m={m}"),
                direct.iter().map(LiePoly::canonical_text).collect::<Vec<_>>().join(", ").to_string(),
                via_points.iter().map(LiePoly::canonical_text).collect::<Vec<_>>().join(", ").to_string(),
            ));
        }

        // coordinates are a bijection
        if point_from_coords(coords(&nu), &h)? != nu {
            return Ok(fail(
                case,
                "point_from_coords inverts coords",
                format!("n={n}"),
                "mismatch".into(),
                "identity".into(),
            ));
        }

        // contravariance on a composable pair
        let s2 = random_morphism(rng, k, &objects[m - 1], 2);
        let lhs = s.compose(&s2)?.pullback(&nu)?;
        let rhs = s2.pullback(&s.pullback(&nu)?)?;
        if lhs != rhs {
            return Ok(fail(
                case,
                "pullback(s1 . s2) = pullback(s2) . pullback(s1)",
                format!("ranks {k} -> {m} -> {n}"),
                format!("{:?}", lhs.images().iter().map(LiePoly::canonical_text).collect::<Vec<_>>()),
                format!("{:?}", rhs.images().iter().map(LiePoly::canonical_text).collect::<Vec<_>>()),
            ));
        }

        // projection decomposition at this tuple
        let parts = component_decompose(&s, cat.h_rank());
        if !projection_identity_holds(&s, &parts, &tuple, &h)? {
            return Ok(fail(
                case,
                "poly_map(s, a) = (pi poly_map(s_1, a), ..., pi poly_map(s_m, a))",
                format!("n={n}, m={m}"),
                "decomposition mismatch".into(),
                "componentwise equality".into(),
            ));
        }
        Ok(None)
    })?;

    // separation sweep
    failures.extend(run_parallel(
        cfg.seed,
        square_cases as u64,
        separation_cases,
        |case, rng| {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let fx = &objects[n - 1];
            let s1 = random_morphism(rng, m, fx, 3);
            let mut s2 = random_morphism(rng, m, fx, 3);
            while s1 == s2 {
                s2 = random_morphism(rng, m, fx, 3);
            }
            match find_separating_point(&s1, &s2, &h, 4)? {
                Some(point) => {
                    let p1 = s1.pullback(&point)?;
                    let p2 = s2.pullback(&point)?;
                    if p1 == p2 {
                        return Ok(fail(
                            case,
                            "a reported separating point genuinely separates",
                            format!("n={n}, m={m}"),
                            "equal pullbacks".into(),
                            "distinct pullbacks".into(),
                        ));
                    }
                    Ok(None)
                }
                None => Ok(fail(
                    case,
                    "distinct morphisms are separated by some point",
                    format!(
                        "n={n}, m={m}, s1={:?}, s2={:?}",
                        s1.images().iter().map(LiePoly::canonical_text).collect::<Vec<_>>(),
                        s2.images().iter().map(LiePoly::canonical_text).collect::<Vec<_>>()
                    ),
                    "NotFound".into(),
                    "a witness within budget 4".into(),
                )),
            }
        },
    )?);

    // rank-1 counterexample: brackets vanish, separation must exhaust
    let counterexample_case = (square_cases + separation_cases) as u64;
    {
        let cat1 = Category::new(cfg.field, 8, 4, 1)?;
        let f2 = cat1.object(2)?;
        let h1 = cat1.h_object()?;
        let w = LiePoly::generator(f2.clone(), 0)?.bracket(&LiePoly::generator(f2.clone(), 1)?)?;
        let s1 = Morphism::from_element(w);
        let s2 = Morphism::from_element(LiePoly::zero(f2.clone()));
        if find_separating_point(&s1, &s2, &h1, 4)?.is_some() {
            failures.push(Failure {
                case: counterexample_case,
                law: "over the rank-1 algebra no point separates a bracket from zero".into(),
                inputs: "s1(y)=[x1,x2], s2(y)=0, H=F(x0)".into(),
                lhs: "a witness".into(),
                rhs: "NotFound".into(),
            });
        }
    }

    let total = square_cases + separation_cases + 1;
    Ok(Report::assemble("duality", echo(cfg, total, 12, "1..=3", cfg.field), total, failures))
}

/// The linear subsemigroup is the matrix semigroup: composition is matrix
/// product, and the correspondence is bijective.
fn matrix_iso(cfg: &SuiteConfig) -> Result<Report> {
    let count = cfg.cases.unwrap_or(200);
    let tables: Vec<Arc<BasisTable>> = [2usize, 3, 4]
        .iter()
        .map(|&n| BasisTable::generate(n, 2, cfg.field, None))
        .collect::<Result<Vec<_>>>()?;
    let mut failures = run_parallel(cfg.seed, 0, count, |case, rng| {
        let table = &tables[(case % 3) as usize];
        let phi = random_linear(rng, table);
        let psi = random_linear(rng, table);
        let lhs = phi.compose(&psi)?.to_matrix()?;
        let rhs = phi.to_matrix()?.mul(&psi.to_matrix()?)?;
        if lhs != rhs {
            return Ok(fail(
                case,
                "to_matrix(compose(phi, psi)) = to_matrix(phi) * to_matrix(psi)",
                format!("n={}", table.n_gens()),
                format!("{lhs:?}"),
                format!("{rhs:?}"),
            ));
        }
        let round = Endo::from_matrix(table.clone(), &phi.to_matrix()?)?;
        Ok(check_endo_eq(
            case,
            "from_matrix inverts to_matrix on the linear subsemigroup",
            format!("n={}", table.n_gens()),
            &round,
            &phi,
        ))
    })?;

    // scalar matrices correspond to scalar maps
    let t2 = &tables[0];
    let a = Scalar::from_integer(3, cfg.field);
    let f_a = Endo::scalar_map(t2.clone(), &a)?;
    let want = crate::matrix::Matrix::identity(2, cfg.field).scale(&a)?;
    if f_a.to_matrix()? != want {
        failures.push(Failure {
            case: count as u64,
            law: "the scalar matrix corresponds to the scalar map".into(),
            inputs: "a=3, n=2".into(),
            lhs: format!("{:?}", f_a.to_matrix()?),
            rhs: format!("{want:?}"),
        });
    }

    let total = count + 1;
    Ok(Report::assemble("matrix_iso", echo(cfg, total, 1, "2,3,4", cfg.field), total, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        let cfg = SuiteConfig::default();
        assert!(matches!(run_suite("nope", &cfg), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SuiteConfig { seed: 11, cases: Some(20), ..SuiteConfig::default() };
        let a = run_suite("jacobi", &cfg).unwrap();
        let b = run_suite("jacobi", &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.is_pass());
    }

    #[test]
    fn zero_cases_pass_vacuously() {
        let cfg = SuiteConfig { cases: Some(0), ..SuiteConfig::default() };
        let r = run_suite("jacobi", &cfg).unwrap();
        assert_eq!(r.cases, 0);
        assert!(r.is_pass());
    }

    #[test]
    fn seed_changes_cases_not_verdicts() {
        let base = SuiteConfig { seed: 1, cases: Some(25), ..SuiteConfig::default() };
        let other = SuiteConfig { seed: 2, ..base.clone() };
        let a = run_suite("constants", &base).unwrap();
        let b = run_suite("constants", &other).unwrap();
        assert!(a.is_pass() && b.is_pass());
    }

    #[test]
    fn small_smoke_of_every_suite() {
        let cfg = SuiteConfig { seed: 3, cases: Some(4), ..SuiteConfig::default() };
        for (name, report) in run_all(&cfg) {
            let report = report.unwrap_or_else(|e| panic!("suite {name} errored: {e}"));
            assert!(report.is_pass(), "suite {name} failed: {:?}", report.failures);
        }
    }
}

//! The self-verification suite behind `quadembed verify-paper`.
//!
//! Nine checks, each exact. Runtime budgets are enforced: a check that
//! finishes late is reported as failed.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::Zero;
use quadembed::criterion::{witness_alphas, Engine};
use quadembed::exactnum::{rat, ratio};
use quadembed::geometry::{orbit_quad_scan, quads_with_params, DEFAULT_SCAN_CAP};
use quadembed::oracle::{cofactor_det, symbolic_pencil};
use quadembed::permgroup::catalog;
use quadembed::{
    convex_position, format_rational, is_concyclic, kite_params, orbit, quad_params, Degeneracy,
    PermGroup, Quadrilateral, RatVector, Rational, Triple, UniPoly,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::CliError;
use crate::report::{to_bytes, CertificateJson, CheckJson, VerifyJson, SCHEMA_VERSION};

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const SAMPLES_PER_GROUP: usize = 50;
const SEED: u64 = 0x005e_ed0f_9a4d;

/// The catalog groups exercised by the certificate checks, in report order.
pub fn catalog_suite() -> Vec<(&'static str, usize)> {
    let mut out = Vec::new();
    out.extend((2..=8).map(|n| ("cyclic", n)));
    out.extend((3..=8).map(|n| ("dihedral", n)));
    out.push(("symmetric", 3));
    out.push(("symmetric", 4));
    out.push(("alternating", 4));
    out.push(("regular_dihedral8", 8));
    out
}

pub fn suite_groups(max_degree: usize) -> Vec<Arc<PermGroup>> {
    catalog_suite()
        .into_iter()
        .filter(|&(_, n)| n <= max_degree)
        .map(|(name, n)| Arc::new(catalog(name, n).expect("catalog entries are valid")))
        .collect()
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub jobs: usize,
    pub extra_groups: Vec<Arc<PermGroup>>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: DEFAULT_MAX_DEGREE,
            jobs: 1,
            extra_groups: Vec::new(),
        }
    }
}

/// Outcome of a single check before it is wrapped into a report entry.
type CheckResult = Result<String, String>;

struct Check {
    id: u32,
    title: &'static str,
    claim: &'static str,
    budget: Duration,
}

const CHECKS: [Check; 9] = [
    Check {
        id: 1,
        title: "kite non-embedding",
        claim: "certify at alpha = -1 (kite parameters (-1, a + 1), a transcendental) succeeds for every suite group",
        budget: Duration::from_secs(60),
    },
    Check {
        id: 2,
        title: "witness beta nonsingularity",
        claim: "det L|U(alpha, witness_beta(alpha)) != 0 for alpha in {-1, 1/2, 2} and every unreduced triple",
        budget: Duration::from_secs(300),
    },
    Check {
        id: 3,
        title: "zero set versus orbit oracle",
        claim: "membership is nonempty exactly when some orbit realizes the parameters; scanned quadruples annihilate their slice polynomial",
        budget: Duration::from_secs(120),
    },
    Check {
        id: 4,
        title: "trapezium realization",
        claim: "regular_dihedral8 embeds a concyclic trapezium with parameters (1, beta) for beta in {2, 3, 5/2}",
        budget: Duration::from_secs(30),
    },
    Check {
        id: 5,
        title: "square",
        claim: "cyclic:4 embeds a square with parameters (1, 1)",
        budget: Duration::from_secs(5),
    },
    Check {
        id: 6,
        title: "concyclic witnesses",
        claim: "every quadrilateral with four distinct points found in an orbit is concyclic",
        budget: Duration::from_secs(30),
    },
    Check {
        id: 7,
        title: "polynomial engine",
        claim: "interpolated pencil polynomials equal cofactor expansion up to dimension 4 and obey the degree bounds",
        budget: Duration::from_secs(120),
    },
    Check {
        id: 8,
        title: "non-convexity at witness beta",
        claim: "convex_position(alpha, witness_beta(alpha)) is false for alpha in {-1, 1/2, 2}",
        budget: Duration::from_secs(1),
    },
    Check {
        id: 9,
        title: "determinism",
        claim: "kite certificates are byte-identical with 1 and 8 workers",
        budget: Duration::from_secs(120),
    },
];

/// Quadrilaterals with four distinct points collected by earlier checks.
#[derive(Default)]
struct Witnesses(Vec<(String, Quadrilateral)>);

impl Witnesses {
    fn push(&mut self, label: impl Into<String>, q: Quadrilateral) {
        if q.degeneracy() == Degeneracy::AllDistinct {
            self.0.push((label.into(), q));
        }
    }
}

pub fn run(cfg: &VerifyConfig) -> VerifyJson {
    let mut groups = suite_groups(cfg.max_degree);
    groups.extend(cfg.extra_groups.iter().cloned());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");
    let mut witnesses = Witnesses::default();
    let mut checks = Vec::new();
    for check in &CHECKS {
        let start = Instant::now();
        let result = pool.install(|| match check.id {
            1 => check_kite(&groups),
            2 => check_witness_beta(&groups),
            3 => check_oracle(cfg.max_degree, &mut witnesses),
            4 => check_trapezium(cfg.max_degree, &mut witnesses),
            5 => check_square(cfg.max_degree, &mut witnesses),
            6 => check_concyclic(&witnesses),
            7 => check_polynomials(&groups),
            8 => check_nonconvex(),
            9 => check_determinism(&groups),
            _ => unreachable!(),
        });
        let elapsed = start.elapsed();
        // The single-threaded budget of check 1 tightens with 8 workers.
        let budget = if check.id == 1 && cfg.jobs >= 8 {
            Duration::from_secs(15)
        } else {
            check.budget
        };
        let (passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let passed = passed && elapsed <= budget;
        if elapsed > budget {
            detail = format!("{detail}; exceeded budget of {} s", budget.as_secs());
        }
        checks.push(CheckJson {
            id: check.id,
            title: check.title.to_string(),
            claim: check.claim.to_string(),
            passed,
            detail,
            elapsed_ms: Some(elapsed.as_millis() as u64),
        });
    }
    VerifyJson {
        schema_version: SCHEMA_VERSION,
        max_degree: cfg.max_degree,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Certificates at the kite's alpha for every group, reduced by conjugacy.
pub fn kite_certificates(groups: &[Arc<PermGroup>]) -> Result<Vec<CertificateJson>, CliError> {
    let (alpha, _) = kite_params(&Rational::from_integer(0.into())).expect("0 lies in (-1, 1)");
    groups
        .iter()
        .map(|g| {
            let cert = Engine::from_arc(g.clone()).certify(&alpha, true)?;
            Ok(CertificateJson::new(&cert, None))
        })
        .collect()
}

fn check_kite(groups: &[Arc<PermGroup>]) -> CheckResult {
    let certs = kite_certificates(groups).map_err(|e| e.to_string())?;
    let classes: usize = certs.iter().map(|c| c.classes.len()).sum();
    Ok(format!(
        "{} groups certified, {classes} triple classes",
        certs.len()
    ))
}

fn check_witness_beta(groups: &[Arc<PermGroup>]) -> CheckResult {
    let mut evaluated = 0u64;
    for g in groups {
        let engine = Engine::from_arc(g.clone());
        for alpha in witness_alphas() {
            let cert = engine.certify(&alpha, false).map_err(|e| e.to_string())?;
            evaluated += cert.classes.len() as u64;
        }
    }
    Ok(format!("{evaluated} determinants nonzero"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_start(rng: &mut ChaCha8Rng, degree: usize) -> RatVector {
    loop {
        let raw: Vec<i64> = (0..degree).map(|_| rng.gen_range(-6..=6)).collect();
        let v = RatVector::from_ints(&raw);
        let mean = v.sum() / rat(degree as i64);
        let centred = RatVector(v.iter().map(|x| x - &mean).collect());
        if !centred.is_zero() {
            return centred;
        }
    }
}

/// Parameter samples for one group: pairs realized in random orbits,
/// fixed special points, then random rationals, 50 in total.
fn parameter_samples(g: &PermGroup, rng: &mut ChaCha8Rng) -> Vec<(Rational, Rational)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut add = |a: Rational, b: Rational, out: &mut Vec<(Rational, Rational)>| {
        if out.len() < SAMPLES_PER_GROUP && seen.insert((a.clone(), b.clone())) {
            out.push((a, b));
        }
    };
    for _ in 0..40 {
        if out.len() >= 15 {
            break;
        }
        let o = orbit(g, &random_start(rng, g.degree())).expect("nonzero sum-zero start");
        let idx: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..o.len()));
        let q = o.quad(idx);
        if let Ok(p) = quad_params(&q) {
            if !p.non_unique {
                add(p.alpha, p.beta, &mut out);
            }
        }
    }
    let special = [
        (0, 1, 0, 1),
        (0, 1, 3, 1),
        (1, 1, 1, 1),
        (-1, 1, 2, 1),
        (1, 2, 1, 2),
        (2, 1, -1, 1),
        (1, 3, 1, 3),
    ];
    for (an, ad, bn, bd) in special {
        add(ratio(an, ad), ratio(bn, bd), &mut out);
    }
    while out.len() < SAMPLES_PER_GROUP {
        add(random_rational(rng), random_rational(rng), &mut out);
    }
    out
}

fn check_oracle(max_degree: usize, witnesses: &mut Witnesses) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut positives = 0;
    let mut negatives = 0;
    let mut scanned = 0;
    for (name, n) in [
        ("cyclic", 2),
        ("cyclic", 3),
        ("cyclic", 4),
        ("symmetric", 3),
    ] {
        if n > max_degree {
            continue;
        }
        let g = Arc::new(catalog(name, n).expect("catalog group"));
        let engine = Engine::from_arc(g.clone());
        let label = g.name().to_string();
        let probes: Vec<_> = (0..3)
            .map(|_| orbit(&g, &random_start(&mut rng, n)).expect("nonzero start"))
            .collect();
        for (alpha, beta) in parameter_samples(&g, &mut rng) {
            let hits = engine
                .membership(&alpha, &beta, true)
                .map_err(|e| e.to_string())?;
            let at = || {
                format!(
                    "{label} at ({}, {})",
                    format_rational(&alpha),
                    format_rational(&beta)
                )
            };
            if hits.is_empty() {
                negatives += 1;
                if let Some(o) = probes
                    .iter()
                    .find(|o| !quads_with_params(o, &alpha, &beta).is_empty())
                {
                    return Err(format!(
                        "{}: empty membership but orbit of {} realizes it",
                        at(),
                        o.start
                    ));
                }
                continue;
            }
            positives += 1;
            let realized = hits.iter().any(|hit| {
                hit.ambient_kernel().iter().any(|w| {
                    let o = orbit(&g, w).expect("kernel vectors are nonzero");
                    let quads = quads_with_params(&o, &alpha, &beta);
                    for &q in quads.iter().take(4) {
                        witnesses.push(format!("{label} kernel orbit"), o.quad(q));
                    }
                    !quads.is_empty()
                })
            });
            if !realized {
                return Err(format!(
                    "{}: membership nonempty but no kernel orbit realizes it",
                    at()
                ));
            }
        }
        let mut slices: HashMap<(Triple, Rational), UniPoly> = HashMap::new();
        for _ in 0..5 {
            let o = orbit(&g, &random_start(&mut rng, n)).expect("nonzero start");
            let hits = orbit_quad_scan(&o, &g, DEFAULT_SCAN_CAP).map_err(|e| e.to_string())?;
            for hit in hits {
                scanned += 1;
                let slice = slices
                    .entry((hit.triple, hit.alpha.clone()))
                    .or_insert_with(|| engine.slice_poly(hit.triple, &hit.alpha));
                if !slice.eval(&hit.beta).is_zero() {
                    return Err(format!(
                        "{label}: scanned quadruple {:?} with ({}, {}) does not annihilate its slice",
                        hit.indices,
                        format_rational(&hit.alpha),
                        format_rational(&hit.beta)
                    ));
                }
                witnesses.push(format!("{label} scan"), o.quad(hit.indices));
            }
        }
    }
    Ok(format!("{positives} realizable and {negatives} empty samples agree; {scanned} scanned quadruples annihilate"))
}

/// Checks one embedding and records it; returns the quadrilateral.
fn embed_checked(
    name: &str,
    n: usize,
    alpha: &Rational,
    beta: &Rational,
    witnesses: &mut Witnesses,
) -> Result<Quadrilateral, String> {
    let g = catalog(name, n).map_err(|e| e.to_string())?;
    let label = format!(
        "{} at ({}, {})",
        g.name(),
        format_rational(alpha),
        format_rational(beta)
    );
    let w = Engine::new(g)
        .embed(alpha, beta, quadembed::criterion::DEFAULT_ATTEMPTS, true)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("{label}: no witness"))?;
    let q = w.quadrilateral();
    if q.degeneracy() != Degeneracy::AllDistinct {
        return Err(format!("{label}: witness points are not pairwise distinct"));
    }
    let p = quad_params(&q).map_err(|e| format!("{label}: {e}"))?;
    if p.non_unique || &p.alpha != alpha || &p.beta != beta {
        return Err(format!("{label}: parameters do not round-trip"));
    }
    witnesses.push(label, q.clone());
    Ok(q)
}

fn check_trapezium(max_degree: usize, witnesses: &mut Witnesses) -> CheckResult {
    if max_degree < 8 {
        return Ok("skipped: degree 8 above the configured maximum".into());
    }
    for beta in [rat(2), rat(3), ratio(5, 2)] {
        let q = embed_checked(
            "regular_dihedral8",
            8,
            &Rational::from_integer(1.into()),
            &beta,
            witnesses,
        )?;
        if !is_concyclic(&q).map_err(|e| e.to_string())? {
            return Err(format!(
                "trapezium at beta = {} is not concyclic",
                format_rational(&beta)
            ));
        }
    }
    Ok("three distinct concyclic trapezia".into())
}

fn check_square(max_degree: usize, witnesses: &mut Witnesses) -> CheckResult {
    if max_degree < 4 {
        return Ok("skipped: degree 4 above the configured maximum".into());
    }
    let one = Rational::from_integer(1.into());
    let q = embed_checked("cyclic", 4, &one, &one, witnesses)?;
    let sides = square_sides(&q);
    if sides.iter().any(|s| s != &sides[0]) {
        return Err(format!(
            "unequal sides {:?}",
            sides.map(|s| format_rational(&s))
        ));
    }
    Ok(format!(
        "side length squared {}",
        format_rational(&sides[0])
    ))
}

/// Squared sides of the parallelogram `z, x, w, y` (vertex order for alpha = beta = 1).
pub fn square_sides(q: &Quadrilateral) -> [Rational; 4] {
    let d = |a: &RatVector, b: &RatVector| a.sub(b).norm_sq();
    [d(&q.z, &q.x), d(&q.x, &q.w), d(&q.w, &q.y), d(&q.y, &q.z)]
}

fn check_concyclic(witnesses: &Witnesses) -> CheckResult {
    if witnesses.0.is_empty() {
        return Err("no witnesses were collected".into());
    }
    for (label, q) in &witnesses.0 {
        match is_concyclic(q) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{label}: not concyclic")),
            Err(e) => return Err(format!("{label}: {e}")),
        }
    }
    Ok(format!("{} quadrilaterals concyclic", witnesses.0.len()))
}

fn check_polynomials(groups: &[Arc<PermGroup>]) -> CheckResult {
    let mut compared = 0usize;
    let mut bounded = 0usize;
    for g in groups {
        let engine = Engine::from_arc(g.clone());
        let classes = engine.classes(true).map_err(|e| e.to_string())?;
        let results: Vec<Result<bool, String>> = classes
            .par_iter()
            .map(|class| {
                let pencil = engine.pencil(class.rep);
                let dim = pencil.dim() as u32;
                let poly = pencil.poly();
                let fail =
                    |what: &str| format!("{} triple {:?}: {what}", g.name(), class.rep.as_array());
                if poly.degree_alpha().unwrap_or(0) > dim || poly.degree_beta().unwrap_or(0) > dim {
                    return Err(fail("degree bound violated"));
                }
                if dim > 4 {
                    return Ok(false);
                }
                if cofactor_det(&symbolic_pencil(&pencil.context)) != poly {
                    return Err(fail("interpolation disagrees with cofactor expansion"));
                }
                Ok(true)
            })
            .collect();
        for r in results {
            compared += r? as usize;
            bounded += 1;
        }
    }
    Ok(format!(
        "{compared} polynomials match cofactor expansion; {bounded} obey degree bounds"
    ))
}

fn check_nonconvex() -> CheckResult {
    for alpha in witness_alphas() {
        let beta = quadembed::witness_beta(&alpha).map_err(|e| e.to_string())?;
        if convex_position(&alpha, &beta).map_err(|e| e.to_string())? {
            return Err(format!(
                "convex at ({}, {})",
                format_rational(&alpha),
                format_rational(&beta)
            ));
        }
    }
    Ok("all three witness quadrilaterals are non-convex".into())
}

fn certificates_with_workers(
    groups: &[Arc<PermGroup>],
    workers: usize,
) -> Result<Vec<Vec<u8>>, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| e.to_string())?;
    let certs = pool
        .install(|| kite_certificates(groups))
        .map_err(|e| e.to_string())?;
    Ok(certs.iter().map(to_bytes).collect())
}

fn check_determinism(groups: &[Arc<PermGroup>]) -> CheckResult {
    let one = certificates_with_workers(groups, 1)?;
    let eight = certificates_with_workers(groups, 8)?;
    if let Some((i, _)) = one
        .iter()
        .zip(&eight)
        .enumerate()
        .find(|(_, (a, b))| a != b)
    {
        return Err(format!(
            "{} certificate differs between worker counts",
            groups[i].name()
        ));
    }
    Ok(format!("{} certificates identical", one.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_deterministic_and_sized() {
        let g = catalog("cyclic", 4).unwrap();
        let a = parameter_samples(&g, &mut ChaCha8Rng::seed_from_u64(SEED));
        let b = parameter_samples(&g, &mut ChaCha8Rng::seed_from_u64(SEED));
        assert_eq!(a.len(), SAMPLES_PER_GROUP);
        assert_eq!(a, b);
    }

    #[test]
    fn suite_filters_by_degree() {
        assert_eq!(suite_groups(8).len(), 17);
        assert_eq!(
            suite_groups(3)
                .iter()
                .map(|g| g.name().to_string())
                .collect::<Vec<_>>(),
            ["cyclic:2", "cyclic:3", "dihedral:3", "symmetric:3"]
        );
    }

    #[test]
    fn small_suite_passes() {
        let report = run(&VerifyConfig {
            max_degree: 4,
            ..Default::default()
        });
        for c in &report.checks {
            assert!(c.passed, "check {} failed: {}", c.id, c.detail);
        }
    }
}

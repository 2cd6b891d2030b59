use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use quadembed::criterion::{Engine, DEFAULT_ATTEMPTS};
use quadembed::geometry::{orbit_quad_scan, DEFAULT_SCAN_CAP};
use quadembed::{
    class_representative, is_concyclic, kite_params, parse_rational, Degeneracy, PermGroup,
    Rational, Triple,
};
use rayon::prelude::*;

use crate::cache::PolyCache;
use crate::error::CliError;
use crate::report::{
    terms_json, to_bytes, CertificateJson, GroupInfo, PolyEntryJson, PolyJson, WitnessJson,
};
use crate::spec::GroupSpec;
use crate::verify::{self, VerifyConfig};

pub fn parse_alpha(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("invalid alpha {text:?}: {e}")))
}

pub fn parse_beta(text: &str) -> Result<Rational, CliError> {
    if text == "transcendental" {
        return Err(CliError::Usage(
            "beta \"transcendental\" is only accepted by certify".into(),
        ));
    }
    parse_rational(text).map_err(|e| CliError::Usage(format!("invalid beta {text:?}: {e}")))
}

pub fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let n = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if n == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))
}

/// Writes to `path`, or stdout when absent.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn elapsed(start: Instant, timing: bool) -> Option<u64> {
    timing.then(|| start.elapsed().as_millis() as u64)
}

pub struct CertifyArgs {
    pub group: GroupSpec,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub kite: bool,
    pub reduce: bool,
    pub cap: usize,
    pub output: Option<PathBuf>,
    pub timing: bool,
}

pub fn certify(args: &CertifyArgs) -> Result<Vec<u8>, CliError> {
    let start = Instant::now();
    if let Some(b) = &args.beta {
        if b != "transcendental" {
            return Err(CliError::Usage(format!(
                "certify covers symbolic beta only; got {b:?}, expected \"transcendental\""
            )));
        }
    }
    let alpha = match (&args.alpha, args.kite) {
        (Some(_), true) => {
            return Err(CliError::Usage(
                "--alpha and --kite are mutually exclusive".into(),
            ))
        }
        (None, false) => return Err(CliError::Usage("certify needs --alpha or --kite".into())),
        (Some(a), false) => parse_alpha(a)?,
        // alpha does not depend on the kite's shape parameter
        (None, true) => {
            kite_params(&Rational::from_integer(0.into()))
                .expect("0 lies in (-1, 1)")
                .0
        }
    };
    let group = args.group.load(args.cap)?;
    let cert = Engine::new(group).certify(&alpha, args.reduce)?;
    Ok(to_bytes(&CertificateJson::new(
        &cert,
        elapsed(start, args.timing),
    )))
}

pub struct EmbedArgs {
    pub group: GroupSpec,
    pub alpha: String,
    pub beta: String,
    pub attempts: usize,
    pub scan_cap: usize,
    pub reduce: bool,
    pub cap: usize,
    pub timing: bool,
}

pub fn embed(args: &EmbedArgs) -> Result<Vec<u8>, CliError> {
    let start = Instant::now();
    let alpha = parse_alpha(&args.alpha)?;
    let beta = parse_beta(&args.beta)?;
    let group = args.group.load(args.cap)?;
    let engine = Engine::new(group);
    let witness = engine
        .embed(&alpha, &beta, args.attempts, args.reduce)?
        .ok_or_else(|| {
            CliError::NotFound(format!(
                "no orbit of {} realizes ({}, {})",
                engine.group().name(),
                args.alpha,
                args.beta
            ))
        })?;
    let quad = witness.quadrilateral();
    let concyclic = match witness.degeneracy {
        Degeneracy::AllDistinct => {
            Some(is_concyclic(&quad).map_err(|e| CliError::CheckFailed(e.to_string()))?)
        }
        _ => None,
    };
    if concyclic == Some(false) {
        return Err(CliError::CheckFailed(
            "witness quadrilateral is not concyclic".into(),
        ));
    }
    // Small orbits are cross-checked by brute force.
    if witness.orbit.len() <= args.scan_cap && witness.degeneracy == Degeneracy::AllDistinct {
        let hits = orbit_quad_scan(&witness.orbit, engine.group(), args.scan_cap)
            .map_err(|e| CliError::CheckFailed(e.to_string()))?;
        if !hits
            .iter()
            .any(|h| h.indices == witness.quad && h.alpha == alpha && h.beta == beta)
        {
            return Err(CliError::CheckFailed(
                "orbit scan does not reproduce the witness".into(),
            ));
        }
    }
    Ok(to_bytes(&WitnessJson::new(
        engine.group(),
        &witness,
        concyclic,
        elapsed(start, args.timing),
    )))
}

pub enum PolyTarget {
    Triple([usize; 3]),
    AllClasses,
}

pub struct PolyArgs {
    pub group: GroupSpec,
    pub target: PolyTarget,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: bool,
    pub check_cache: bool,
    pub cap: usize,
}

fn parse_index(g: &PermGroup, i: usize) -> Result<usize, CliError> {
    if i >= g.order() {
        return Err(CliError::Usage(format!(
            "triple index {i} out of range for group of order {}",
            g.order()
        )));
    }
    Ok(i)
}

fn compute_entry(engine: &Engine, rep: Triple) -> PolyEntryJson {
    let pencil = engine.pencil(rep);
    PolyEntryJson {
        triple: rep.as_array(),
        class_rep: rep.as_array(),
        class_size: None,
        restricted_dim: pencil.dim(),
        terms: terms_json(&pencil.poly()),
    }
}

pub fn poly(args: &PolyArgs) -> Result<Vec<u8>, CliError> {
    let group = Arc::new(args.group.load(args.cap)?);
    let engine = Engine::from_arc(group.clone());
    let requests: Vec<(Triple, Triple, Option<u64>)> = match args.target {
        PolyTarget::Triple([a, b, c]) => {
            let t = Triple::new(
                parse_index(&group, a)?,
                parse_index(&group, b)?,
                parse_index(&group, c)?,
            );
            vec![(t, class_representative(&group, t), None)]
        }
        PolyTarget::AllClasses => engine
            .classes(true)?
            .into_iter()
            .map(|c| (c.rep, c.rep, Some(c.size)))
            .collect(),
    };
    let cache = if args.no_cache {
        None
    } else {
        args.cache_dir
            .clone()
            .or_else(PolyCache::default_root)
            .map(|root| PolyCache::new(&root, &group))
    };
    let entries: Vec<Result<PolyEntryJson, CliError>> = requests
        .par_iter()
        .map(|&(triple, rep, size)| {
            let cached = cache.as_ref().and_then(|c| c.get(rep));
            let entry = match cached {
                Some(hit) => {
                    if args.check_cache && hit != compute_entry(&engine, rep) {
                        return Err(CliError::CheckFailed(format!(
                            "cached polynomial for class {:?} differs from a fresh computation",
                            rep.as_array()
                        )));
                    }
                    hit
                }
                None => {
                    let fresh = compute_entry(&engine, rep);
                    if let Some(c) = &cache {
                        c.put(rep, &fresh)?;
                    }
                    fresh
                }
            };
            Ok(PolyEntryJson {
                triple: triple.as_array(),
                class_size: size,
                ..entry
            })
        })
        .collect();
    let polynomials = entries.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(to_bytes(&PolyJson {
        schema_version: crate::report::SCHEMA_VERSION,
        group: GroupInfo::of(&group),
        polynomials,
    }))
}

pub struct VerifyArgs {
    pub max_degree: usize,
    pub extra_groups: Vec<GroupSpec>,
    pub jobs: usize,
    pub cap: usize,
}

/// Returns the report and whether every check passed.
pub fn verify_paper(args: &VerifyArgs) -> Result<(Vec<u8>, bool), CliError> {
    let extra_groups = args
        .extra_groups
        .iter()
        .map(|s| s.load(args.cap).map(Arc::new))
        .collect::<Result<Vec<_>, _>>()?;
    let report = verify::run(&VerifyConfig {
        max_degree: args.max_degree,
        jobs: args.jobs,
        extra_groups,
    });
    let passed = report.passed;
    Ok((to_bytes(&report), passed))
}

pub fn default_attempts() -> usize {
    DEFAULT_ATTEMPTS
}

pub fn default_scan_cap() -> usize {
    DEFAULT_SCAN_CAP
}

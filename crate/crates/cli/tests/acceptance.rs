//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Criteria 1, 4, 5 and 9 drive the `quadembed` binary and re-check its
//! JSON from scratch; the others use the library's verification suite.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use quadembed::{
    format_rational, is_concyclic, parse_rational, quad_params, Degeneracy, Quadrilateral,
    RatVector, Rational,
};
use quadembed_cli::report::{CertificateJson, VerifyJson, WitnessJson};
use quadembed_cli::verify::{self, catalog_suite, VerifyConfig};

const BIN: &str = env!("CARGO_BIN_EXE_quadembed");

type Outcome = Result<String, String>;

fn run_bin(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(BIN)
        .args(args)
        .env_remove("QUADEMBED_CACHE_DIR")
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    let code = out.status.code().unwrap_or(-1);
    if code != 0 {
        return Err(format!(
            "`quadembed {}` exited {code}: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    Ok((code, out.stdout))
}

fn rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("bad rational {s:?}: {e}"))
}

fn vector(v: &[String]) -> Result<RatVector, String> {
    v.iter()
        .map(|s| rat(s))
        .collect::<Result<Vec<_>, _>>()
        .map(RatVector)
}

fn group_specs() -> Vec<String> {
    catalog_suite()
        .into_iter()
        .map(|(name, n)| {
            if name == "regular_dihedral8" {
                name.to_string()
            } else {
                format!("{name}:{n}")
            }
        })
        .collect()
}

/// Certifies every suite group through the binary, writing one file per
/// group into `dir`. Returns the elapsed time.
fn certify_all(dir: &Path, jobs: usize) -> Result<Duration, String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let start = Instant::now();
    for spec in group_specs() {
        let path = dir.join(format!("{}.json", spec.replace(':', "_")));
        let jobs = jobs.to_string();
        run_bin(&[
            "certify",
            "--group",
            &spec,
            "--kite",
            "--beta",
            "transcendental",
            "--jobs",
            &jobs,
            "--output",
            path.to_str().unwrap(),
        ])?;
    }
    Ok(start.elapsed())
}

fn read_certificate(path: &Path) -> Result<CertificateJson, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display()))
}

fn criterion_1(work: &Path) -> Outcome {
    let single = certify_all(&work.join("jobs1"), 1)?;
    let eight = certify_all(&work.join("jobs8"), 8)?;
    let mut classes = 0;
    for spec in group_specs() {
        let cert = read_certificate(
            &work
                .join("jobs1")
                .join(format!("{}.json", spec.replace(':', "_"))),
        )?;
        if cert.alpha != "-1" || cert.beta != "transcendental" || cert.witness_beta != "-1" {
            return Err(format!("{spec}: unexpected parameters in certificate"));
        }
        let order = cert.group.order as u64;
        let covered: u64 = cert.classes.iter().map(|c| c.class_size).sum();
        if covered != order.pow(3) {
            return Err(format!(
                "{spec}: classes cover {covered} of {} triples",
                order.pow(3)
            ));
        }
        for c in &cert.classes {
            if rat(&c.det)?.is_zero() {
                return Err(format!(
                    "{spec}: zero determinant for triple {:?}",
                    c.triple
                ));
            }
        }
        classes += cert.classes.len();
    }
    if single > Duration::from_secs(60) || eight > Duration::from_secs(15) {
        return Err(format!(
            "too slow: {single:?} with 1 worker, {eight:?} with 8"
        ));
    }
    Ok(format!(
        "{} groups, {classes} classes; {:.1} s with 1 worker, {:.1} s with 8",
        group_specs().len(),
        single.as_secs_f64(),
        eight.as_secs_f64()
    ))
}

fn witness(args: &[&str]) -> Result<(WitnessJson, Quadrilateral), String> {
    let (_, out) = run_bin(args)?;
    let w: WitnessJson = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let [x, y, z, wp] = &w.points;
    let q = Quadrilateral::new(vector(x)?, vector(y)?, vector(z)?, vector(wp)?);
    // the reported points must be the orbit entries the quad indexes
    let orbit: Vec<RatVector> = w
        .orbit
        .iter()
        .map(|p| vector(p))
        .collect::<Result<_, _>>()?;
    let idx = [w.quad.x, w.quad.y, w.quad.z, w.quad.w];
    if idx
        .iter()
        .zip(q.points())
        .any(|(&i, p)| orbit.get(i) != Some(p))
    {
        return Err("witness points do not match their orbit indices".into());
    }
    let norm = orbit[0].norm_sq();
    if orbit
        .iter()
        .any(|p| p.norm_sq() != norm || !p.sum().is_zero())
    {
        return Err("orbit is not on a sphere in the sum-zero hyperplane".into());
    }
    Ok((w, q))
}

fn check_witness(q: &Quadrilateral, alpha: &Rational, beta: &Rational) -> Result<(), String> {
    if q.degeneracy() != Degeneracy::AllDistinct {
        return Err("points are not pairwise distinct".into());
    }
    let p = quad_params(q).map_err(|e| e.to_string())?;
    if p.non_unique || &p.alpha != alpha || &p.beta != beta {
        return Err(format!(
            "parameters ({}, {}) do not round-trip",
            format_rational(&p.alpha),
            format_rational(&p.beta)
        ));
    }
    Ok(())
}

fn criterion_4(concyclic_seen: &mut Vec<Quadrilateral>) -> Outcome {
    let start = Instant::now();
    for beta in ["2", "3", "5/2"] {
        let (_, q) = witness(&[
            "embed",
            "--group",
            "regular_dihedral8",
            "--alpha",
            "1",
            "--beta",
            beta,
        ])?;
        check_witness(&q, &rat("1")?, &rat(beta)?).map_err(|e| format!("beta = {beta}: {e}"))?;
        if !is_concyclic(&q).map_err(|e| e.to_string())? {
            return Err(format!("beta = {beta}: not concyclic"));
        }
        concyclic_seen.push(q);
    }
    Ok(format!(
        "three trapezia in {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_5(concyclic_seen: &mut Vec<Quadrilateral>) -> Outcome {
    let start = Instant::now();
    let (_, q) = witness(&[
        "embed", "--group", "cyclic:4", "--alpha", "1", "--beta", "1",
    ])?;
    check_witness(&q, &rat("1")?, &rat("1")?)?;
    let d = |a: &RatVector, b: &RatVector| a.sub(b).norm_sq();
    let sides = [d(&q.z, &q.x), d(&q.x, &q.w), d(&q.w, &q.y), d(&q.y, &q.z)];
    if sides.iter().any(|s| s != &sides[0]) {
        return Err("sides differ".into());
    }
    // equal diagonals rule out a rhombus
    if d(&q.z, &q.w) != d(&q.x, &q.y) {
        return Err("diagonals differ".into());
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    concyclic_seen.push(q);
    Ok(format!("side squared {}", format_rational(&sides[0])))
}

fn criterion_9(work: &Path) -> Outcome {
    let mut compared = 0;
    for spec in group_specs() {
        let name = format!("{}.json", spec.replace(':', "_"));
        let a = std::fs::read(work.join("jobs1").join(&name)).map_err(|e| e.to_string())?;
        let b = std::fs::read(work.join("jobs8").join(&name)).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{spec}: certificates differ"));
        }
        compared += 1;
    }
    Ok(format!("{compared} certificate files byte-identical"))
}

fn from_report(report: &VerifyJson, id: u32) -> Outcome {
    let c = report
        .checks
        .iter()
        .find(|c| c.id == id)
        .ok_or("check missing")?;
    let detail = format!("{} ({} ms)", c.detail, c.elapsed_ms.unwrap_or(0));
    if c.passed {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let work = tempfile::tempdir().expect("temporary directory");
    let report = verify::run(&VerifyConfig {
        jobs: 1,
        ..Default::default()
    });
    let mut seen = Vec::new();

    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (
            1,
            "kite non-embedding via certify",
            criterion_1(work.path()),
        ),
        (
            2,
            "witness beta determinants nonzero on all triples",
            from_report(&report, 2),
        ),
        (
            3,
            "zero set agrees with orbit oracle",
            from_report(&report, 3),
        ),
        (4, "trapezia in regular_dihedral8", criterion_4(&mut seen)),
        (5, "square in cyclic:4", criterion_5(&mut seen)),
    ];
    let six = from_report(&report, 6).and_then(|d| {
        for q in &seen {
            if !is_concyclic(q).map_err(|e| e.to_string())? {
                return Err("a CLI witness is not concyclic".into());
            }
        }
        Ok(format!("{d}; {} CLI witnesses concyclic", seen.len()))
    });
    results.push((6, "all distinct witnesses are concyclic", six));
    results.push((
        7,
        "interpolation matches cofactor expansion",
        from_report(&report, 7),
    ));
    results.push((
        8,
        "witness quadrilaterals are not convex",
        from_report(&report, 8),
    ));
    results.push((
        9,
        "certificates identical across worker counts",
        criterion_9(work.path()),
    ));

    let mut failed = 0;
    for (id, title, outcome) in &results {
        match outcome {
            Ok(d) => println!("[PASS] {id} {title}: {d}"),
            Err(d) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {d}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

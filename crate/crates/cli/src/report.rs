//! JSON documents written by the CLI. Every rational is a canonical `p/q`
//! string; field order is fixed by the struct definitions.

use quadembed::criterion::{EmbeddingWitness, NonEmbeddingCertificate};
use quadembed::{format_rational, BivarPoly, PermGroup, RatVector};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub name: String,
    pub degree: usize,
    pub order: usize,
}

impl GroupInfo {
    pub fn of(g: &PermGroup) -> Self {
        GroupInfo {
            name: g.name().to_string(),
            degree: g.degree(),
            order: g.order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub triple: [usize; 3],
    pub class_size: u64,
    pub restricted_dim: usize,
    pub det: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema_version: u32,
    pub group: GroupInfo,
    pub alpha: String,
    pub beta: String,
    pub witness_beta: String,
    pub classes: Vec<ClassJson>,
    pub conclusion: String,
    pub toolchain_version: String,
    pub elapsed_ms: Option<u64>,
}

impl CertificateJson {
    pub fn new(cert: &NonEmbeddingCertificate, elapsed_ms: Option<u64>) -> Self {
        CertificateJson {
            schema_version: SCHEMA_VERSION,
            group: GroupInfo {
                name: cert.group_name.clone(),
                degree: cert.degree,
                order: cert.order,
            },
            alpha: format_rational(&cert.alpha),
            beta: "transcendental".to_string(),
            witness_beta: format_rational(&cert.witness_beta),
            classes: cert
                .classes
                .iter()
                .map(|c| ClassJson {
                    triple: c.triple.as_array(),
                    class_size: c.class_size,
                    restricted_dim: c.restricted_dim,
                    det: format_rational(&c.det),
                })
                .collect(),
            conclusion: cert.conclusion.clone(),
            toolchain_version: cert.toolchain_version.clone(),
            elapsed_ms,
        }
    }
}

fn vector_json(v: &RatVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadJson {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub schema_version: u32,
    pub group: GroupInfo,
    pub alpha: String,
    pub beta: String,
    pub triple: [usize; 3],
    pub w: Vec<String>,
    pub orbit: Vec<Vec<String>>,
    pub quad: QuadJson,
    pub points: [Vec<String>; 4],
    pub degeneracy: String,
    pub concyclic: Option<bool>,
    pub toolchain_version: String,
    pub elapsed_ms: Option<u64>,
}

impl WitnessJson {
    pub fn new(
        g: &PermGroup,
        w: &EmbeddingWitness,
        concyclic: Option<bool>,
        elapsed_ms: Option<u64>,
    ) -> Self {
        let q = w.quadrilateral();
        let [x, y, z, wi] = w.quad;
        WitnessJson {
            schema_version: SCHEMA_VERSION,
            group: GroupInfo::of(g),
            alpha: format_rational(&w.alpha),
            beta: format_rational(&w.beta),
            triple: w.triple.as_array(),
            w: vector_json(&w.w),
            orbit: w.orbit.points.iter().map(vector_json).collect(),
            quad: QuadJson { x, y, z, w: wi },
            points: q.points().map(vector_json),
            degeneracy: w.degeneracy.as_str().to_string(),
            concyclic,
            toolchain_version: quadembed::criterion::TOOLCHAIN_VERSION.to_string(),
            elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub da: u32,
    pub db: u32,
    pub coeff: String,
}

pub fn terms_json(p: &BivarPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(da, db, c)| TermJson {
            da,
            db,
            coeff: format_rational(c),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyEntryJson {
    pub triple: [usize; 3],
    /// Representative of the triple's simultaneous-conjugacy class.
    pub class_rep: [usize; 3],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class_size: Option<u64>,
    pub restricted_dim: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub schema_version: u32,
    pub group: GroupInfo,
    pub polynomials: Vec<PolyEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub id: u32,
    pub title: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub schema_version: u32,
    pub max_degree: usize,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

/// Pretty JSON with a trailing newline.
pub fn to_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize");
    out.push(b'\n');
    out
}

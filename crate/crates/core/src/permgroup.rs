//! Permutations, closure of generating sets, standard group families and
//! enumeration of element triples up to simultaneous conjugation.
//!
//! Points are 0-based in memory and 1-based in every text format.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::GroupError;

pub const DEFAULT_CAP: usize = 5040;

/// Largest order for which all triples are enumerated.
pub const MAX_TRIPLE_ORDER: usize = 512;

/// A permutation of `{0, .., n-1}`. Ordering is lexicographic on images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds from 0-based images, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(GroupError::PointOutOfRange {
                    point: i + 1,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(GroupError::RepeatedPoint(i + 1));
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// Disjoint cycles, each starting at its smallest point, fixed points
    /// omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cycles(self))
    }
}

/// Parses disjoint-cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
/// Commas and whitespace both separate points; `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, GroupError> {
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut current: Option<Vec<usize>> = None;
    let mut chars = text.char_indices().peekable();
    let malformed = |msg: String| GroupError::Malformed(msg);

    while let Some((pos, ch)) = chars.next() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(malformed(format!("nested '(' at column {}", pos + 1)));
                }
                current = Some(Vec::new());
            }
            ')' => {
                let cycle = current
                    .take()
                    .ok_or_else(|| malformed(format!("unmatched ')' at column {}", pos + 1)))?;
                for (k, &p) in cycle.iter().enumerate() {
                    images[p] = cycle[(k + 1) % cycle.len()];
                }
            }
            c if c.is_whitespace() || c == ',' => {}
            c if c.is_ascii_digit() => {
                let mut end = pos + c.len_utf8();
                while let Some(&(p, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = p + d.len_utf8();
                    chars.next();
                }
                let token = &text[pos..end];
                let cycle = current
                    .as_mut()
                    .ok_or_else(|| malformed(format!("point {token} outside parentheses")))?;
                let point: usize = token
                    .parse()
                    .map_err(|_| malformed(format!("bad point {token:?}")))?;
                if point == 0 || point > degree {
                    return Err(GroupError::PointOutOfRange { point, degree });
                }
                let p = point - 1;
                if std::mem::replace(&mut used[p], true) {
                    return Err(GroupError::RepeatedPoint(point));
                }
                cycle.push(p);
            }
            other => {
                return Err(malformed(format!(
                    "unexpected character {other:?} at column {}",
                    pos + 1
                )))
            }
        }
    }
    if current.is_some() {
        return Err(malformed("unclosed '('".to_string()));
    }
    if text.trim().is_empty() {
        return Err(malformed("empty permutation text".to_string()));
    }
    Ok(Perm { images })
}

/// 1-based cycle notation; the identity is `()`.
pub fn format_cycles(p: &Perm) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|&i| (i + 1).to_string()).collect();
            format!("({})", pts.join(" "))
        })
        .collect()
}

/// A finite permutation group with its elements enumerated.
///
/// `elements[0]` is the identity; the remaining elements are sorted
/// lexicographically by image sequence.
#[derive(Debug)]
pub struct PermGroup {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    cayley: OnceLock<Vec<u32>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            cayley: OnceLock::new(),
        }
    }
}

/// Orders up to this size get a precomputed multiplication table.
const CAYLEY_LIMIT: usize = 1024;

impl PermGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn cayley(&self) -> Option<&[u32]> {
        if self.order() > CAYLEY_LIMIT {
            return None;
        }
        let table = self.cayley.get_or_init(|| {
            let n = self.order();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.elements {
                for b in &self.elements {
                    t.push(self.index[&a.compose(b)] as u32);
                }
            }
            t
        });
        Some(table)
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.cayley() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut found = vec![0];
        let mut head = 0;
        while head < found.len() {
            let x = found[head];
            head += 1;
            for &g in gens {
                let y = self.mul(g, x);
                if !member[y] {
                    member[y] = true;
                    found.push(y);
                }
            }
        }
        found.sort_unstable();
        found
    }
}

/// Closes a generating set under composition.
///
/// Elements are discovered breadth-first; the result lists the identity
/// first and then every other element in lexicographic image order, so
/// closing the elements of a closed group reproduces the same sequence.
pub fn close(generators: &[Perm], cap: usize) -> Result<PermGroup, GroupError> {
    let degree = generators.first().map_or(0, Perm::degree);
    for g in generators {
        if g.degree() != degree {
            return Err(GroupError::MixedDegree(degree, g.degree()));
        }
    }
    let id = Perm::identity(degree);
    let mut seen: std::collections::HashSet<Perm> = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in generators {
                let y = g.compose(x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut rest: Vec<Perm> = seen.into_iter().filter(|p| !p.is_identity()).collect();
    rest.sort_unstable();
    let mut elements = Vec::with_capacity(rest.len() + 1);
    elements.push(id);
    elements.extend(rest);
    let index = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    Ok(PermGroup {
        name: String::from("group"),
        degree,
        generators: generators.to_vec(),
        elements,
        index,
        cayley: OnceLock::new(),
    })
}

/// Whether the orbit of point 0 is everything. The degree-0 group counts as
/// transitive.
pub fn is_transitive(g: &PermGroup) -> bool {
    if g.degree() == 0 {
        return true;
    }
    let mut hit = vec![false; g.degree()];
    for e in g.elements() {
        hit[e.apply(0)] = true;
    }
    hit.into_iter().all(|h| h)
}

fn cycle_perm(degree: usize, cycle: &[usize]) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    for (k, &p) in cycle.iter().enumerate() {
        images[p] = cycle[(k + 1) % cycle.len()];
    }
    Perm { images }
}

pub const CATALOG_NAMES: [&str; 5] = [
    "cyclic",
    "dihedral",
    "symmetric",
    "alternating",
    "regular_dihedral8",
];

/// A named standard group. `parameter` is the degree, except for
/// `regular_dihedral8` (the order-8 dihedral group acting on itself) where
/// it is ignored.
pub fn catalog(name: &str, parameter: usize) -> Result<PermGroup, GroupError> {
    let too_small = |min: usize| GroupError::DegreeTooSmall {
        name: name.to_string(),
        degree: parameter,
        min,
    };
    let n = parameter;
    let (gens, label) = match name {
        "cyclic" => {
            if n < 1 {
                return Err(too_small(1));
            }
            (
                vec![cycle_perm(n, &(0..n).collect::<Vec<_>>())],
                format!("cyclic:{n}"),
            )
        }
        "dihedral" => {
            if n < 3 {
                return Err(too_small(3));
            }
            let rotation = cycle_perm(n, &(0..n).collect::<Vec<_>>());
            let reflection = Perm {
                images: (0..n).map(|i| n - 1 - i).collect(),
            };
            (vec![rotation, reflection], format!("dihedral:{n}"))
        }
        "symmetric" => {
            if n < 1 {
                return Err(too_small(1));
            }
            let mut gens = vec![cycle_perm(n, &(0..n).collect::<Vec<_>>())];
            if n >= 2 {
                gens.push(cycle_perm(n, &[0, 1]));
            }
            (gens, format!("symmetric:{n}"))
        }
        "alternating" => {
            if n < 3 {
                return Err(too_small(3));
            }
            let gens = (2..n).map(|k| cycle_perm(n, &[0, 1, k])).collect();
            (gens, format!("alternating:{n}"))
        }
        "regular_dihedral8" => {
            // Element r^i s^j sits at point i + 4j. Left multiplication by r
            // sends it to r^(i+1) s^j, by s to r^(-i) s^(j+1).
            let point = |i: usize, j: usize| (i % 4) + 4 * (j % 2);
            let mut r = vec![0; 8];
            let mut s = vec![0; 8];
            for j in 0..2 {
                for i in 0..4 {
                    r[point(i, j)] = point(i + 1, j);
                    s[point(i, j)] = point(4 - i, j + 1);
                }
            }
            (
                vec![Perm { images: r }, Perm { images: s }],
                "regular_dihedral8".to_string(),
            )
        }
        other => return Err(GroupError::UnknownGroup(other.to_string())),
    };
    Ok(close(&gens, DEFAULT_CAP)?.with_name(label))
}

/// Parses a generator file: a `degree = n` line followed by one generator
/// per line in cycle notation. `#` starts a comment; blank lines are skipped.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Perm>), GroupError> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match degree {
            None => {
                let (key, value) =
                    content
                        .split_once('=')
                        .ok_or_else(|| GroupError::GeneratorFile {
                            line,
                            message: format!("expected `degree = n`, found {content:?}"),
                        })?;
                if key.trim() != "degree" {
                    return Err(GroupError::GeneratorFile {
                        line,
                        message: format!("expected `degree = n`, found {content:?}"),
                    });
                }
                let n = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| GroupError::GeneratorFile {
                        line,
                        message: format!("invalid degree {:?}", value.trim()),
                    })?;
                degree = Some(n);
            }
            Some(n) => {
                let p = parse_cycles(content, n).map_err(|e| GroupError::GeneratorFile {
                    line,
                    message: e.to_string(),
                })?;
                gens.push(p);
            }
        }
    }
    let degree = degree.ok_or(GroupError::GeneratorFile {
        line: 1,
        message: "missing `degree = n` line".into(),
    })?;
    if gens.is_empty() {
        gens.push(Perm::identity(degree));
    }
    Ok((degree, gens))
}

/// Three element indices into a group, read as the maps sending a point
/// `w` to `x`, `y` and `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Triple { a, b, c }
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }
}

/// A representative triple together with the size of its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleClass {
    pub rep: Triple,
    pub size: u64,
}

fn check_triple_order(g: &PermGroup) -> Result<(), GroupError> {
    if g.order() > MAX_TRIPLE_ORDER {
        return Err(GroupError::TooManyTriples { order: g.order() });
    }
    Ok(())
}

/// Every triple as its own class of size one, in lexicographic index order.
pub fn triples_all(g: &PermGroup) -> Result<Vec<TripleClass>, GroupError> {
    check_triple_order(g)?;
    let n = g.order();
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push(TripleClass {
                    rep: Triple::new(a, b, c),
                    size: 1,
                });
            }
        }
    }
    Ok(out)
}

/// One representative per orbit of simultaneous conjugation on `G^3`.
///
/// Triples are visited in lexicographic index order, so each representative
/// is the minimal member of its class.
pub fn triples_reduced(g: &PermGroup) -> Result<Vec<TripleClass>, GroupError> {
    check_triple_order(g)?;
    let n = g.order();
    // conj[u * n + x] = u x u^-1
    let mut conj = vec![0usize; n * n];
    for u in 0..n {
        let ui = g.inv(u);
        for x in 0..n {
            conj[u * n + x] = g.mul(g.mul(u, x), ui);
        }
    }
    let mut visited = vec![0u64; (n * n * n).div_ceil(64)];
    let key = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let k = key(a, b, c);
                if visited[k / 64] >> (k % 64) & 1 == 1 {
                    continue;
                }
                let mut size = 0u64;
                for u in 0..n {
                    let kk = key(conj[u * n + a], conj[u * n + b], conj[u * n + c]);
                    if visited[kk / 64] >> (kk % 64) & 1 == 0 {
                        visited[kk / 64] |= 1 << (kk % 64);
                        size += 1;
                    }
                }
                out.push(TripleClass {
                    rep: Triple::new(a, b, c),
                    size,
                });
            }
        }
    }
    Ok(out)
}

/// The lexicographically least triple simultaneously conjugate to `t`,
/// i.e. the representative [`triples_reduced`] reports for its class.
pub fn class_representative(g: &PermGroup, t: Triple) -> Triple {
    (0..g.order())
        .map(|u| {
            let ui = g.inv(u);
            let cj = |x| g.mul(g.mul(u, x), ui);
            Triple::new(cj(t.a), cj(t.b), cj(t.c))
        })
        .min()
        .unwrap_or(t)
}

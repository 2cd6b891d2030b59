//! Exact affine and metric geometry of quadrilaterals and orbits.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::GeometryError;
use crate::exactnum::{rat, solve, RatMatrix, RatVector, Rational, Solve};
use crate::permgroup::{PermGroup, Triple};
use crate::representation::permute_vector;

pub const DEFAULT_SCAN_CAP: usize = 12;

/// Four points `x, y, z, w` of a common dimension, read in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadrilateral {
    pub x: RatVector,
    pub y: RatVector,
    pub z: RatVector,
    pub w: RatVector,
}

impl Quadrilateral {
    pub fn new(x: RatVector, y: RatVector, z: RatVector, w: RatVector) -> Self {
        assert!(
            x.len() == y.len() && y.len() == z.len() && z.len() == w.len(),
            "quadrilateral points must share one dimension"
        );
        Quadrilateral { x, y, z, w }
    }

    pub fn from_ints(x: &[i64], y: &[i64], z: &[i64], w: &[i64]) -> Self {
        Self::new(
            RatVector::from_ints(x),
            RatVector::from_ints(y),
            RatVector::from_ints(z),
            RatVector::from_ints(w),
        )
    }

    pub fn points(&self) -> [&RatVector; 4] {
        [&self.x, &self.y, &self.z, &self.w]
    }

    pub fn degeneracy(&self) -> Degeneracy {
        let pts = self.points();
        let mut distinct: Vec<&RatVector> = Vec::with_capacity(4);
        for p in pts {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        match distinct.len() {
            1 => Degeneracy::Trivial,
            4 => Degeneracy::AllDistinct,
            _ => Degeneracy::PartiallyCoincident,
        }
    }

    /// Whether `w = z + alpha (x - z) + beta (y - z)` holds exactly.
    pub fn satisfies(&self, alpha: &Rational, beta: &Rational) -> bool {
        let rhs = self
            .z
            .add(&self.x.sub(&self.z).scale(alpha))
            .add(&self.y.sub(&self.z).scale(beta));
        rhs == self.w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degeneracy {
    AllDistinct,
    PartiallyCoincident,
    Trivial,
}

impl Degeneracy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Degeneracy::AllDistinct => "all-distinct",
            Degeneracy::PartiallyCoincident => "partially-coincident",
            Degeneracy::Trivial => "trivial",
        }
    }
}

/// Parameters of a quadrilateral. When `non_unique` is set, `x, y, z` are
/// affinely dependent and this is one solution among many.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub non_unique: bool,
}

/// Solves `w - z = alpha (x - z) + beta (y - z)` exactly.
pub fn quad_params(q: &Quadrilateral) -> Result<QuadParams, GeometryError> {
    let cols = [q.x.sub(&q.z), q.y.sub(&q.z)];
    let m = RatMatrix::from_columns(q.z.len(), &cols);
    match solve(&m, &q.w.sub(&q.z)).expect("shapes agree") {
        Solve::Solution { x, non_unique } => Ok(QuadParams {
            alpha: x[0].clone(),
            beta: x[1].clone(),
            non_unique,
        }),
        Solve::NoSolution => Err(GeometryError::NotCoplanar),
    }
}

fn kite_chart_check() -> bool {
    static CHECKED: OnceLock<bool> = OnceLock::new();
    *CHECKED.get_or_init(|| {
        let a = 0.5f64;
        let h = (1.0 - a * a).sqrt();
        let (z, y, x, w) = ((-1.0, 0.0), (1.0, 0.0), (a, h), (a, -h));
        let (c1, c2) = ((x.0 - z.0, x.1 - z.1), (y.0 - z.0, y.1 - z.1));
        let r = (w.0 - z.0, w.1 - z.1);
        let det = c1.0 * c2.1 - c2.0 * c1.1;
        let alpha = (r.0 * c2.1 - c2.0 * r.1) / det;
        let beta = (c1.0 * r.1 - r.0 * c1.1) / det;
        (alpha + 1.0).abs() < 1e-9 && (beta - (a + 1.0)).abs() < 1e-9
    })
}

/// Parameters `(-1, a + 1)` of the kite with vertices `z = (-1, 0)`,
/// `y = (1, 0)`, `x = (a, h)`, `w = (a, -h)`, `h = sqrt(1 - a^2)`.
///
/// The second coordinate forces `alpha = -1`; the first then reads
/// `a + 1 = -(a + 1) + 2 beta`.
pub fn kite_params(a: &Rational) -> Result<(Rational, Rational), GeometryError> {
    if a <= &rat(-1) || a >= &rat(1) {
        return Err(GeometryError::KiteOutOfRange(
            crate::exactnum::format_rational(a),
        ));
    }
    assert!(
        kite_chart_check(),
        "kite parameter derivation disagrees with its numeric check"
    );
    Ok((rat(-1), a + Rational::one()))
}

fn all_distinct(q: &Quadrilateral) -> Result<(), GeometryError> {
    if q.degeneracy() != Degeneracy::AllDistinct {
        return Err(GeometryError::DegenerateInput(
            "points are not pairwise distinct".into(),
        ));
    }
    Ok(())
}

/// Whether four distinct coplanar points lie on a common circle.
///
/// Looks for a centre `c` in the affine hull with `|p|^2 - 2<p, c>` equal
/// for all four points; three distinct collinear points make the system
/// inconsistent.
pub fn is_concyclic(q: &Quadrilateral) -> Result<bool, GeometryError> {
    all_distinct(q)?;
    let pts = q.points();
    let origin = pts[0];
    let dirs: Vec<RatVector> = pts[1..].iter().map(|p| p.sub(origin)).collect();
    let rank = RatMatrix::from_columns(origin.len(), &dirs).rank();
    if rank > 2 {
        return Err(GeometryError::DegenerateInput(
            "points are not coplanar".into(),
        ));
    }
    if rank < 2 {
        return Ok(false);
    }
    let (da, db) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| (&dirs[i], &dirs[j]))
        .find(|(u, v)| {
            RatMatrix::from_columns(origin.len(), &[(*u).clone(), (*v).clone()]).rank() == 2
        })
        .expect("rank two implies an independent pair");
    // Unknowns (s, t, K) with c = origin + s da + t db:
    // -2 s <p, da> - 2 t <p, db> - K = 2 <p, origin> - |p|^2
    let mut m = RatMatrix::zeros(4, 3);
    let mut rhs = RatVector::zeros(4);
    let two = rat(2);
    for (i, p) in pts.iter().enumerate() {
        m[(i, 0)] = -(&two * p.dot(da));
        m[(i, 1)] = -(&two * p.dot(db));
        m[(i, 2)] = -Rational::one();
        rhs.0[i] = &two * p.dot(origin) - p.norm_sq();
    }
    Ok(matches!(
        solve(&m, &rhs).expect("shapes agree"),
        Solve::Solution { .. }
    ))
}

type Point2 = (Rational, Rational);

fn orient(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

fn crosses(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let opposite = |u: Rational, v: Rational| (u * v).is_negative();
    opposite(orient(a, b, c), orient(a, b, d)) && opposite(orient(c, d, a), orient(c, d, b))
}

/// Convex position of the chart quadrilateral `z = (0,0)`, `x = (1,0)`,
/// `y = (0,1)`, `w = (alpha, beta)`. Three collinear points count as not
/// convex.
pub fn convex_position(alpha: &Rational, beta: &Rational) -> Result<bool, GeometryError> {
    let (zero, one) = (Rational::zero(), Rational::one());
    let z = (zero.clone(), zero.clone());
    let x = (one.clone(), zero.clone());
    let y = (zero, one);
    let w = (alpha.clone(), beta.clone());
    if w == z || w == x || w == y {
        return Err(GeometryError::DegenerateInput(
            "w coincides with a chart vertex".into(),
        ));
    }
    // Four points are in convex position iff some pairing into two segments
    // crosses properly.
    Ok(crosses(&x, &y, &z, &w) || crosses(&x, &z, &y, &w) || crosses(&x, &w, &y, &z))
}

/// A deduplicated orbit of a vector under coordinate permutation.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub group_name: String,
    pub start: RatVector,
    pub points: Vec<RatVector>,
    index: HashMap<RatVector, usize>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: &RatVector) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn quad(&self, [x, y, z, w]: [usize; 4]) -> Quadrilateral {
        Quadrilateral::new(
            self.points[x].clone(),
            self.points[y].clone(),
            self.points[z].clone(),
            self.points[w].clone(),
        )
    }
}

/// Orbit of a nonzero sum-zero vector, points listed in order of first
/// appearance along the group's element sequence.
pub fn orbit(group: &PermGroup, start: &RatVector) -> Result<Orbit, GeometryError> {
    if start.len() != group.degree() {
        return Err(GeometryError::InvalidStart(format!(
            "length {} for degree {}",
            start.len(),
            group.degree()
        )));
    }
    if start.is_zero() {
        return Err(GeometryError::InvalidStart("zero vector".into()));
    }
    if !start.sum().is_zero() {
        return Err(GeometryError::InvalidStart(
            "entries do not sum to zero".into(),
        ));
    }
    let mut points = Vec::new();
    let mut index = HashMap::new();
    for e in group.elements() {
        let p = permute_vector(e, start);
        if !index.contains_key(&p) {
            index.insert(p.clone(), points.len());
            points.push(p);
        }
    }
    let norm = start.norm_sq();
    assert!(
        points.iter().all(|p| p.norm_sq() == norm),
        "orbit points must share one norm"
    );
    assert_eq!(group.order() % points.len(), 0);
    Ok(Orbit {
        group_name: group.name().to_string(),
        start: start.clone(),
        points,
        index,
    })
}

/// For each orbit point, the least element index carrying `from` to it.
fn least_movers(o: &Orbit, group: &PermGroup, from: usize) -> Vec<usize> {
    let mut movers = vec![usize::MAX; o.len()];
    for (i, e) in group.elements().iter().enumerate() {
        let target = o
            .position(&permute_vector(e, &o.points[from]))
            .expect("orbit is closed");
        if movers[target] == usize::MAX {
            movers[target] = i;
        }
    }
    movers
}

/// A quadruple of orbit points with uniquely determined parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanHit {
    /// Orbit indices of `x, y, z, w`.
    pub indices: [usize; 4],
    pub alpha: Rational,
    pub beta: Rational,
    /// Least element indices sending `w` to `x`, `y`, `z`.
    pub triple: Triple,
}

/// Brute force over ordered quadruples of pairwise distinct orbit points,
/// in lexicographic index order.
pub fn orbit_quad_scan(
    o: &Orbit,
    group: &PermGroup,
    cap: usize,
) -> Result<Vec<ScanHit>, GeometryError> {
    if o.len() > cap {
        return Err(GeometryError::ScanCapExceeded { size: o.len(), cap });
    }
    let n = o.len();
    let movers: Vec<Vec<usize>> = (0..n).map(|w| least_movers(o, group, w)).collect();
    let mut hits = Vec::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            for z in (0..n).filter(|&z| z != x && z != y) {
                for w in (0..n).filter(|&w| w != x && w != y && w != z) {
                    let q = o.quad([x, y, z, w]);
                    let Ok(params) = quad_params(&q) else {
                        continue;
                    };
                    if params.non_unique {
                        continue;
                    }
                    let m = &movers[w];
                    hits.push(ScanHit {
                        indices: [x, y, z, w],
                        alpha: params.alpha,
                        beta: params.beta,
                        triple: Triple::new(m[x], m[y], m[z]),
                    });
                }
            }
        }
    }
    Ok(hits)
}

/// Ordered quadruples (repetition allowed) of orbit points that satisfy the
/// affine relation with the given parameters and are not trivial.
pub fn quads_with_params(o: &Orbit, alpha: &Rational, beta: &Rational) -> Vec<[usize; 4]> {
    let n = o.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // w is determined by x, y, z
                let q = o.quad([x, y, z, z]);
                let w =
                    q.z.add(&q.x.sub(&q.z).scale(alpha))
                        .add(&q.y.sub(&q.z).scale(beta));
                if let Some(wi) = o.position(&w) {
                    if !(x == y && y == z && z == wi) {
                        out.push([x, y, z, wi]);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::permgroup::{catalog, close, parse_cycles};
    use proptest::prelude::*;

    #[test]
    fn params_examples() {
        let sq = Quadrilateral::from_ints(&[1, 0], &[0, 1], &[0, 0], &[1, 1]);
        assert_eq!(
            quad_params(&sq).unwrap(),
            QuadParams {
                alpha: rat(1),
                beta: rat(1),
                non_unique: false
            }
        );

        // kite at a = 1/2; the height cancels, any nonzero value will do
        let h = rat(3);
        let q = Quadrilateral::new(
            RatVector(vec![ratio(1, 2), h.clone()]),
            RatVector::from_ints(&[1, 0]),
            RatVector::from_ints(&[-1, 0]),
            RatVector(vec![ratio(1, 2), -h]),
        );
        let p = quad_params(&q).unwrap();
        assert_eq!((p.alpha, p.beta), (rat(-1), ratio(3, 2)));

        let off = Quadrilateral::from_ints(&[1, 0, 0], &[0, 1, 0], &[0, 0, 0], &[0, 0, 1]);
        assert_eq!(quad_params(&off), Err(GeometryError::NotCoplanar));
    }

    #[test]
    fn params_non_unique_when_collinear() {
        let q = Quadrilateral::from_ints(&[1, 0], &[1, 0], &[0, 0], &[2, 0]);
        let p = quad_params(&q).unwrap();
        assert!(p.non_unique);
        assert!(q.satisfies(&p.alpha, &p.beta));
    }

    #[test]
    fn kite_examples() {
        assert_eq!(kite_params(&ratio(1, 2)).unwrap(), (rat(-1), ratio(3, 2)));
        assert_eq!(kite_params(&rat(0)).unwrap(), (rat(-1), rat(1)));
        assert!(kite_params(&rat(-1)).is_err());
        assert!(kite_params(&rat(1)).is_err());
        assert!(kite_chart_check());
    }

    #[test]
    fn concyclic_examples() {
        let sq = Quadrilateral::from_ints(&[1, 0], &[0, 1], &[0, 0], &[1, 1]);
        assert!(is_concyclic(&sq).unwrap());
        let bad = Quadrilateral::from_ints(&[0, 0], &[1, 0], &[2, 0], &[0, 1]);
        assert!(!is_concyclic(&bad).unwrap());
        let kite = Quadrilateral::from_ints(&[0, 1], &[1, 0], &[-1, 0], &[0, -1]);
        assert!(is_concyclic(&kite).unwrap());
        // generic quadrilateral, not on a circle
        let generic = Quadrilateral::from_ints(&[3, 0], &[0, 1], &[0, 0], &[1, 1]);
        assert!(!is_concyclic(&generic).unwrap());
    }

    #[test]
    fn concyclic_in_higher_dimension() {
        let sq = Quadrilateral::from_ints(&[1, 0, 5], &[0, 1, 5], &[0, 0, 5], &[1, 1, 5]);
        assert!(is_concyclic(&sq).unwrap());
        let tetra = Quadrilateral::from_ints(&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0]);
        assert!(matches!(
            is_concyclic(&tetra),
            Err(GeometryError::DegenerateInput(_))
        ));
        let dup = Quadrilateral::from_ints(&[1, 0], &[1, 0], &[0, 0], &[0, 1]);
        assert!(matches!(
            is_concyclic(&dup),
            Err(GeometryError::DegenerateInput(_))
        ));
    }

    #[test]
    fn convexity_examples() {
        assert!(convex_position(&rat(1), &rat(1)).unwrap());
        assert!(!convex_position(&rat(-1), &rat(-1)).unwrap());
        assert!(!convex_position(&ratio(1, 3), &ratio(1, 3)).unwrap());
        // three collinear points
        assert!(!convex_position(&rat(2), &rat(0)).unwrap());
        assert!(!convex_position(&ratio(1, 2), &ratio(1, 2)).unwrap());
        assert!(convex_position(&rat(2), &rat(2)).unwrap());
        assert!(matches!(
            convex_position(&rat(1), &rat(0)),
            Err(GeometryError::DegenerateInput(_))
        ));
    }

    #[test]
    fn orbit_examples() {
        let c4 = catalog("cyclic", 4).unwrap();
        assert_eq!(
            orbit(&c4, &RatVector::from_ints(&[3, -1, -1, -1]))
                .unwrap()
                .len(),
            4
        );
        let s3 = catalog("symmetric", 3).unwrap();
        assert_eq!(
            orbit(&s3, &RatVector::from_ints(&[1, 0, -1]))
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            orbit(&s3, &RatVector::from_ints(&[1, 1, -2]))
                .unwrap()
                .len(),
            3
        );
        assert!(orbit(&s3, &RatVector::from_ints(&[0, 0, 0])).is_err());
        assert!(orbit(&s3, &RatVector::from_ints(&[1, 0, 0])).is_err());
        assert!(orbit(&s3, &RatVector::from_ints(&[1, -1])).is_err());
    }

    #[test]
    fn scan_examples() {
        let c4 = catalog("cyclic", 4).unwrap();
        let o = orbit(&c4, &RatVector::from_ints(&[1, 0, -1, 0])).unwrap();
        let hits = orbit_quad_scan(&o, &c4, DEFAULT_SCAN_CAP).unwrap();
        assert!(hits.iter().any(|h| h.alpha == rat(1) && h.beta == rat(1)));
        for h in &hits {
            // the recorded triple really maps w onto x, y, z
            let w = &o.points[h.indices[3]];
            for (e, target) in h.triple.as_array().into_iter().zip(&h.indices[..3]) {
                assert_eq!(&permute_vector(c4.element(e), w), &o.points[*target]);
            }
        }

        let swap = close(&[parse_cycles("(1 2)", 3).unwrap()], 10).unwrap();
        let single = orbit(&swap, &RatVector::from_ints(&[1, 1, -2])).unwrap();
        assert_eq!(single.len(), 1);
        assert!(orbit_quad_scan(&single, &swap, DEFAULT_SCAN_CAP)
            .unwrap()
            .is_empty());
        let c2 = catalog("cyclic", 2).unwrap();
        let o = orbit(&c2, &RatVector::from_ints(&[1, -1])).unwrap();
        assert!(orbit_quad_scan(&o, &c2, DEFAULT_SCAN_CAP)
            .unwrap()
            .is_empty());

        let reg = catalog("regular_dihedral8", 0).unwrap();
        let o = orbit(&reg, &RatVector::from_ints(&[7, -3, 2, 5, -1, -4, 0, -6])).unwrap();
        assert_eq!(o.len(), 8);
        // eight affinely independent points: no four are coplanar
        assert!(orbit_quad_scan(&o, &reg, DEFAULT_SCAN_CAP)
            .unwrap()
            .is_empty());

        let s4 = catalog("symmetric", 4).unwrap();
        let big = orbit(&s4, &RatVector::from_ints(&[3, 1, -1, -3])).unwrap();
        assert!(matches!(
            orbit_quad_scan(&big, &s4, DEFAULT_SCAN_CAP),
            Err(GeometryError::ScanCapExceeded { .. })
        ));
    }

    #[test]
    fn degeneracy_classes() {
        let a = [1, 0];
        let b = [0, 1];
        assert_eq!(
            Quadrilateral::from_ints(&a, &a, &a, &a).degeneracy(),
            Degeneracy::Trivial
        );
        assert_eq!(
            Quadrilateral::from_ints(&a, &b, &a, &a).degeneracy(),
            Degeneracy::PartiallyCoincident
        );
        assert_eq!(
            Quadrilateral::from_ints(&a, &b, &[0, 0], &[1, 1]).degeneracy(),
            Degeneracy::AllDistinct
        );
    }

    #[test]
    fn witness_betas_are_not_convex() {
        for (a, b) in [
            (rat(-1), rat(-1)),
            (ratio(1, 2), ratio(1, 4)),
            (rat(2), ratio(-1, 2)),
        ] {
            assert!(!convex_position(&a, &b).unwrap());
        }
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn projection_preserves_params(
            coords in prop::collection::vec(small(), 15),
            alpha in small(),
            beta in small(),
            keep in prop::collection::vec(any::<bool>(), 5),
        ) {
            let x = RatVector(coords[0..5].to_vec());
            let y = RatVector(coords[5..10].to_vec());
            let z = RatVector(coords[10..15].to_vec());
            let w = z.add(&x.sub(&z).scale(&alpha)).add(&y.sub(&z).scale(&beta));
            let q = Quadrilateral::new(x, y, z, w);
            let full = quad_params(&q).unwrap();
            prop_assume!(!full.non_unique);
            let pick = |v: &RatVector| RatVector(v.iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| c.clone()).collect());
            let proj = Quadrilateral::new(pick(&q.x), pick(&q.y), pick(&q.z), pick(&q.w));
            let pp = quad_params(&proj).unwrap();
            prop_assume!(!pp.non_unique);
            prop_assert_eq!((pp.alpha, pp.beta), (full.alpha, full.beta));
        }

        #[test]
        fn orbits_are_spherical(v in prop::collection::vec(-5i64..=5, 4)) {
            let mut v = v;
            let s: i64 = v.iter().sum();
            v.push(-s);
            let start = RatVector::from_ints(&v);
            prop_assume!(!start.is_zero());
            let g = catalog("dihedral", 5).unwrap();
            let o = orbit(&g, &start).unwrap();
            let norm = start.norm_sq();
            prop_assert!(o.points.iter().all(|p| p.norm_sq() == norm));
            prop_assert_eq!(g.order() % o.len(), 0);
        }
    }
}

//! The pencil `L(alpha, beta) = alpha A + beta B + (1 - alpha - beta) C - I`
//! restricted to the fixed-point-free part of `<A, B, C>`, and the queries
//! built on its determinant: membership of a parameter pair, embedding
//! witnesses, and non-embedding certificates.
//!
//! A nonzero `w` with `L w = 0` is exactly a point whose images `A w`,
//! `B w`, `C w` (as `x`, `y`, `z`) satisfy `w = z + alpha (x - z) + beta (y - z)`.
//! Restricting to the complement of the fixed space loses nothing: `L`
//! vanishes on vectors fixed by all three maps, and those give only the
//! trivial quadrilateral.
//!
//! Per-triple work runs on the current rayon pool and is merged in class
//! order, so results do not depend on the worker count.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::CriterionError;
use crate::exactnum::{
    det, format_rational, kernel_basis, rat, ratio, RatMatrix, RatVector, Rational,
};
use crate::geometry::{orbit, Degeneracy, Orbit, Quadrilateral};
use crate::permgroup::{
    is_transitive, triples_all, triples_reduced, PermGroup, Triple, TripleClass,
};
use crate::poly::{integer_nodes, interpolate_bivar, interpolate_uni, BivarPoly, UniPoly};
use crate::representation::{permute_vector, DeletedRep, SubgroupContext};

pub const TOOLCHAIN_VERSION: &str = concat!("quadembed ", env!("CARGO_PKG_VERSION"));

/// Default number of kernel combinations tried per kernel space by [`Engine::embed`].
pub const DEFAULT_ATTEMPTS: usize = 8;

/// The second parameter of a query: a rational value, or an indeterminate
/// standing for any number transcendental over `Q(alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Beta {
    Value(Rational),
    Transcendental,
}

/// A parameter pair `(alpha, beta)` as posed to the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamQuery {
    pub alpha: Rational,
    pub beta: Beta,
}

/// A triple's restricted maps, ready for evaluation.
#[derive(Clone, Debug)]
pub struct Pencil {
    pub group_name: String,
    pub context: SubgroupContext,
}

impl Pencil {
    pub fn new(group_name: impl Into<String>, context: SubgroupContext) -> Self {
        Pencil {
            group_name: group_name.into(),
            context,
        }
    }

    pub fn triple(&self) -> Triple {
        self.context.triple
    }

    pub fn dim(&self) -> usize {
        self.context.restricted_dim()
    }

    /// `alpha A|U + beta B|U + (1 - alpha - beta) C|U - I`.
    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> RatMatrix {
        let [a, b, c] = &self.context.restricted;
        let gamma = Rational::one() - alpha - beta;
        let minus_one = -Rational::one();
        let id = RatMatrix::identity(self.dim());
        RatMatrix::linear_combination(&[(alpha, a), (beta, b), (&gamma, c), (&minus_one, &id)])
    }

    pub fn det_at(&self, alpha: &Rational, beta: &Rational) -> Rational {
        det(&self.eval(alpha, beta)).expect("pencil is square")
    }

    /// `det L|U` as a polynomial, interpolated from the integer grid
    /// `{0..d} x {0..d}`.
    pub fn poly(&self) -> BivarPoly {
        let d = self.dim();
        let nodes = integer_nodes(d);
        let mut grid = BTreeMap::new();
        for a in &nodes {
            for b in &nodes {
                grid.insert((a.clone(), b.clone()), self.det_at(a, b));
            }
        }
        interpolate_bivar(&grid, (d, d)).expect("determinant has degree at most d in each variable")
    }

    /// `R(beta) = det L|U (alpha, beta)` from `d + 1` evaluations.
    pub fn slice(&self, alpha: &Rational) -> UniPoly {
        let d = self.dim();
        let samples: Vec<(Rational, Rational)> = integer_nodes(d)
            .into_iter()
            .map(|b| {
                let v = self.det_at(alpha, &b);
                (b, v)
            })
            .collect();
        interpolate_uni(&samples, d).expect("slice has degree at most d")
    }
}

/// The value of beta at which the pencil is provably nonsingular for a
/// given alpha: `(1 - alpha)/2` for `alpha > 0`, `alpha` for `alpha < 0`.
///
/// With these choices the relation rewrites as a positive combination of
/// `w, A w, B w, C w` that forces `w = A w = B w = C w`.
pub fn witness_beta(alpha: &Rational) -> Result<Rational, CriterionError> {
    check_alpha(alpha)?;
    if alpha.is_negative() {
        Ok(alpha.clone())
    } else {
        Ok((Rational::one() - alpha) / rat(2))
    }
}

fn check_alpha(alpha: &Rational) -> Result<(), CriterionError> {
    if alpha.is_zero() {
        return Err(CriterionError::Domain(
            "alpha = 0 is excluded: then w, z and y are collinear, so two of them coincide".into(),
        ));
    }
    if alpha.is_one() {
        return Err(CriterionError::Domain(
            "alpha = 1 is excluded: trapezia with alpha = 1 do embed in transitive sets".into(),
        ));
    }
    Ok(())
}

/// A triple whose pencil is singular at the queried point.
#[derive(Clone, Debug)]
pub struct MembershipHit {
    pub class: TripleClass,
    pub pencil: Pencil,
    /// Kernel basis of `L|U` in complement coordinates.
    pub kernel: Vec<RatVector>,
}

impl MembershipHit {
    /// Kernel basis lifted to ambient sum-zero coordinates.
    pub fn ambient_kernel(&self) -> Vec<RatVector> {
        self.kernel
            .iter()
            .map(|k| self.pencil.context.lift(k))
            .collect()
    }
}

/// One line of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub triple: Triple,
    pub class_size: u64,
    pub restricted_dim: usize,
    pub det: Rational,
}

/// Evidence that no orbit of the group contains a non-trivial quadrilateral
/// with parameters `(alpha, beta)` for any beta transcendental over `Q(alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonEmbeddingCertificate {
    pub group_name: String,
    pub degree: usize,
    pub order: usize,
    pub alpha: Rational,
    pub witness_beta: Rational,
    pub classes: Vec<ClassRecord>,
    pub conclusion: String,
    pub toolchain_version: String,
}

impl NonEmbeddingCertificate {
    pub fn covered_triples(&self) -> u64 {
        self.classes.iter().map(|c| c.class_size).sum()
    }
}

/// An explicit quadrilateral `A w, B w, C w, w` inside an orbit.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    pub group_name: String,
    pub triple: Triple,
    /// Ambient sum-zero coordinates.
    pub w: RatVector,
    pub orbit: Orbit,
    /// Orbit indices of `x, y, z, w`.
    pub quad: [usize; 4],
    pub alpha: Rational,
    pub beta: Rational,
    pub degeneracy: Degeneracy,
}

impl EmbeddingWitness {
    pub fn quadrilateral(&self) -> Quadrilateral {
        self.orbit.quad(self.quad)
    }
}

/// Pencil machinery bound to one permutation group.
#[derive(Debug)]
pub struct Engine {
    rep: DeletedRep,
}

impl Engine {
    pub fn new(group: PermGroup) -> Self {
        Self::from_arc(Arc::new(group))
    }

    pub fn from_arc(group: Arc<PermGroup>) -> Self {
        Engine {
            rep: DeletedRep::new(group),
        }
    }

    pub fn group(&self) -> &PermGroup {
        self.rep.group()
    }

    pub fn rep(&self) -> &DeletedRep {
        &self.rep
    }

    pub fn pencil(&self, triple: Triple) -> Pencil {
        Pencil::new(self.group().name(), self.rep.build_context(triple))
    }

    pub fn classes(&self, reduce: bool) -> Result<Vec<TripleClass>, CriterionError> {
        Ok(if reduce {
            triples_reduced(self.group())?
        } else {
            triples_all(self.group())?
        })
    }

    fn require_transitive(&self) -> Result<(), CriterionError> {
        if !is_transitive(self.group()) {
            return Err(CriterionError::NotTransitive(
                self.group().name().to_string(),
            ));
        }
        Ok(())
    }

    pub fn pencil_poly(&self, triple: Triple) -> BivarPoly {
        self.pencil(triple).poly()
    }

    pub fn slice_poly(&self, triple: Triple, alpha: &Rational) -> UniPoly {
        self.pencil(triple).slice(alpha)
    }

    /// All classes whose restricted pencil is singular at `(alpha, beta)`,
    /// with kernel bases. Classes with restricted dimension 0 never appear.
    pub fn membership(
        &self,
        alpha: &Rational,
        beta: &Rational,
        reduce: bool,
    ) -> Result<Vec<MembershipHit>, CriterionError> {
        self.require_transitive()?;
        let classes = self.classes(reduce)?;
        let hits: Vec<Option<MembershipHit>> = classes
            .par_iter()
            .map(|&class| {
                let pencil = self.pencil(class.rep);
                if pencil.dim() == 0 {
                    return None;
                }
                let l = pencil.eval(alpha, beta);
                if !det(&l).expect("square").is_zero() {
                    return None;
                }
                let kernel = kernel_basis(&l);
                Some(MembershipHit {
                    class,
                    pencil,
                    kernel,
                })
            })
            .collect();
        Ok(hits.into_iter().flatten().collect())
    }

    /// Evaluates every class at `(alpha, witness_beta(alpha))`. Succeeds iff
    /// no determinant vanishes.
    pub fn certify(
        &self,
        alpha: &Rational,
        reduce: bool,
    ) -> Result<NonEmbeddingCertificate, CriterionError> {
        let wb = witness_beta(alpha)?;
        self.require_transitive()?;
        let classes = self.classes(reduce)?;
        let records: Vec<ClassRecord> = classes
            .par_iter()
            .map(|class| {
                let pencil = self.pencil(class.rep);
                ClassRecord {
                    triple: class.rep,
                    class_size: class.size,
                    restricted_dim: pencil.dim(),
                    det: pencil.det_at(alpha, &wb),
                }
            })
            .collect();
        if let Some(bad) = records.iter().find(|r| r.det.is_zero()) {
            return Err(CriterionError::CertificateFailure {
                triple: bad.triple.as_array(),
                alpha: format_rational(alpha),
                beta: format_rational(&wb),
            });
        }
        let g = self.group();
        Ok(NonEmbeddingCertificate {
            group_name: g.name().to_string(),
            degree: g.degree(),
            order: g.order(),
            alpha: alpha.clone(),
            witness_beta: wb.clone(),
            conclusion: conclusion_text(g, alpha, &wb),
            classes: records,
            toolchain_version: TOOLCHAIN_VERSION.to_string(),
        })
    }

    /// Searches the kernels of singular classes for a point whose
    /// quadrilateral `A w, B w, C w, w` has four distinct points.
    ///
    /// Attempt `t` in a kernel with basis `k_0..k_m` uses
    /// `w = sum_j (t + 1)^j k_j`. Returns the first all-distinct witness,
    /// otherwise the first partially coincident one.
    pub fn embed(
        &self,
        alpha: &Rational,
        beta: &Rational,
        attempts: usize,
        reduce: bool,
    ) -> Result<Option<EmbeddingWitness>, CriterionError> {
        let hits = self.membership(alpha, beta, reduce)?;
        let group = self.group();
        let mut fallback: Option<EmbeddingWitness> = None;
        for hit in &hits {
            let ctx = &hit.pencil.context;
            for t in 0..attempts.max(1) {
                let base = rat(t as i64 + 1);
                let mut coeff = Rational::one();
                let mut combo = RatVector::zeros(ctx.restricted_dim());
                for k in &hit.kernel {
                    combo = combo.add(&k.scale(&coeff));
                    coeff *= &base;
                }
                if combo.is_zero() {
                    continue;
                }
                let w = ctx.lift(&combo);
                let [x, y, z] = hit
                    .class
                    .rep
                    .as_array()
                    .map(|e| permute_vector(group.element(e), &w));
                let quad = Quadrilateral::new(x, y, z, w.clone());
                debug_assert!(quad.satisfies(alpha, beta));
                let degeneracy = quad.degeneracy();
                if degeneracy == Degeneracy::Trivial {
                    continue;
                }
                let orb = orbit(group, &w).expect("kernel vectors are nonzero and sum to zero");
                let idx = quad
                    .points()
                    .map(|p| orb.position(p).expect("images lie in the orbit"));
                let witness = EmbeddingWitness {
                    group_name: group.name().to_string(),
                    triple: hit.class.rep,
                    w,
                    orbit: orb,
                    quad: idx,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    degeneracy,
                };
                if degeneracy == Degeneracy::AllDistinct {
                    return Ok(Some(witness));
                }
                fallback.get_or_insert(witness);
            }
        }
        Ok(fallback)
    }
}

fn conclusion_text(g: &PermGroup, alpha: &Rational, wb: &Rational) -> String {
    format!(
        "For every triple class of {name} (order {order}, degree {degree}), det L|U is nonzero at \
         (alpha, beta) = ({a}, {b}). Hence each slice R(beta) = det L|U({a}, beta) is not identically \
         zero, so R(beta) != 0 for every beta transcendental over Q(alpha); L(alpha, beta) then has no \
         kernel vector outside the fixed space of <A, B, C>, and the only quadrilaterals with parameters \
         ({a}, beta) in any orbit of {name} acting on R^{degree} by coordinate permutation are trivial.",
        name = g.name(),
        order = g.order(),
        degree = g.degree(),
        a = format_rational(alpha),
        b = format_rational(wb),
    )
}

/// The values of alpha exercised by the witness checks: one per branch.
pub fn witness_alphas() -> [Rational; 3] {
    [rat(-1), ratio(1, 2), rat(2)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::geometry::{orbit_quad_scan, DEFAULT_SCAN_CAP};
    use crate::permgroup::{catalog, close, parse_cycles, DEFAULT_CAP};

    fn engine(name: &str, n: usize) -> Engine {
        Engine::new(catalog(name, n).unwrap())
    }

    #[test]
    fn witness_beta_cases() {
        assert_eq!(witness_beta(&ratio(1, 2)).unwrap(), ratio(1, 4));
        assert_eq!(witness_beta(&rat(-1)).unwrap(), rat(-1));
        assert_eq!(witness_beta(&rat(2)).unwrap(), ratio(-1, 2));
        assert!(
            matches!(witness_beta(&rat(0)), Err(CriterionError::Domain(m)) if m.contains("collinear"))
        );
        assert!(matches!(
            witness_beta(&rat(1)),
            Err(CriterionError::Domain(_))
        ));
    }

    #[test]
    fn pencil_eval_examples() {
        let c2 = engine("cyclic", 2);
        let p = c2.pencil(Triple::new(0, 0, 0));
        assert_eq!(p.dim(), 0);
        assert!(p.eval(&rat(3), &rat(5)).is_zero());

        let p = c2.pencil(Triple::new(1, 0, 0));
        let (a, b) = (ratio(2, 7), ratio(-3, 5));
        assert_eq!(
            p.eval(&a, &b),
            RatMatrix::from_entries(1, 1, vec![&a * rat(-2)]).unwrap()
        );
        let s3 = engine("symmetric", 3);
        let t = Triple::new(3, 1, 4);
        let p = s3.pencil(t);
        let c = &p.context.restricted[2];
        assert_eq!(
            p.eval(&rat(0), &rat(0)),
            c.sub(&RatMatrix::identity(p.dim()))
        );
    }

    #[test]
    fn identity_action_gives_zero_pencil() {
        // A trivial subgroup fixes everything, so U = 0 and det is the empty
        // product.
        let g = engine("symmetric", 4);
        let p = g.pencil(Triple::new(0, 0, 0));
        assert_eq!(p.dim(), 0);
        assert_eq!(p.poly(), BivarPoly::constant(rat(1)));
    }

    #[test]
    fn zero_polynomial_for_identity_maps() {
        // Build a pencil by hand whose three maps are the identity.
        let g = engine("cyclic", 3);
        let mut p = g.pencil(Triple::new(1, 1, 1));
        assert_eq!(p.dim(), 2);
        p.context.restricted = [
            RatMatrix::identity(2),
            RatMatrix::identity(2),
            RatMatrix::identity(2),
        ];
        assert!(p.poly().is_zero());
        assert!(p.slice(&rat(5)).is_zero());
    }

    #[test]
    fn c2_polynomials() {
        let c2 = engine("cyclic", 2);
        assert_eq!(
            c2.pencil_poly(Triple::new(1, 0, 0)),
            BivarPoly::from_terms([((1, 0), rat(-2))])
        );
        assert_eq!(
            c2.slice_poly(Triple::new(1, 0, 0), &rat(-1)),
            UniPoly::constant(rat(2))
        );
        assert_eq!(
            c2.slice_poly(Triple::new(0, 1, 0), &ratio(5, 3)),
            UniPoly::from_coeffs(vec![rat(0), rat(-2)])
        );
        assert_eq!(
            c2.slice_poly(Triple::new(0, 0, 0), &rat(9)),
            UniPoly::constant(rat(1))
        );
    }

    #[test]
    fn membership_examples() {
        let c2 = engine("cyclic", 2);
        let hits = c2.membership(&rat(0), &rat(7), true).unwrap();
        assert!(hits.iter().any(|h| h.class.rep == Triple::new(1, 0, 0)));

        // alpha = 1/3: only pencils independent of alpha can vanish, i.e.
        // those with A = C; here every such class with U != 0 has C = t.
        let hits = c2.membership(&ratio(1, 3), &ratio(2, 9), true).unwrap();
        assert!(hits.is_empty());
        let hits = c2.membership(&ratio(1, 3), &rat(1), true).unwrap();
        let reps: Vec<_> = hits.iter().map(|h| h.class.rep).collect();
        assert_eq!(reps, vec![Triple::new(1, 0, 1)]);
        for h in &hits {
            assert_eq!(h.class.rep.a, h.class.rep.c);
            for k in h.ambient_kernel() {
                assert!(!k.is_zero());
            }
        }

        let c4 = engine("cyclic", 4);
        assert!(!c4.membership(&rat(1), &rat(1), true).unwrap().is_empty());
    }

    #[test]
    fn non_transitive_groups_are_rejected() {
        let g = Engine::new(close(&[parse_cycles("(1 2)", 3).unwrap()], DEFAULT_CAP).unwrap());
        assert!(matches!(
            g.membership(&rat(2), &rat(3), true),
            Err(CriterionError::NotTransitive(_))
        ));
        assert!(matches!(
            g.certify(&rat(2), true),
            Err(CriterionError::NotTransitive(_))
        ));
        assert!(matches!(
            g.embed(&rat(2), &rat(3), 4, true),
            Err(CriterionError::NotTransitive(_))
        ));
    }

    #[test]
    fn certify_examples() {
        let c2 = engine("cyclic", 2);
        let cert = c2.certify(&rat(-1), true).unwrap();
        assert_eq!(cert.witness_beta, rat(-1));
        assert_eq!(cert.covered_triples(), 8);
        let rec = cert
            .classes
            .iter()
            .find(|r| r.triple == Triple::new(1, 0, 0))
            .unwrap();
        assert_eq!(rec.det, rat(2));
        assert!(cert.classes.iter().all(|r| !r.det.is_zero()));

        assert!(matches!(
            c2.certify(&rat(0), true),
            Err(CriterionError::Domain(_))
        ));

        let d4 = engine("dihedral", 4);
        let cert = d4.certify(&rat(-1), true).unwrap();
        assert_eq!(cert.covered_triples(), 512);
        assert_eq!(cert.classes.len(), 176);
    }

    #[test]
    fn certificate_without_reduction_agrees() {
        let s3 = engine("symmetric", 3);
        let reduced = s3.certify(&rat(2), true).unwrap();
        let full = s3.certify(&rat(2), false).unwrap();
        assert_eq!(full.classes.len(), 216);
        for r in &reduced.classes {
            let f = full.classes.iter().find(|f| f.triple == r.triple).unwrap();
            assert_eq!(f.det, r.det);
        }
    }

    #[test]
    fn embed_examples() {
        let c4 = engine("cyclic", 4);
        let w = c4
            .embed(&rat(1), &rat(1), DEFAULT_ATTEMPTS, true)
            .unwrap()
            .unwrap();
        assert_eq!(w.degeneracy, Degeneracy::AllDistinct);
        let q = w.quadrilateral();
        assert!(q.satisfies(&rat(1), &rat(1)));

        let c2 = engine("cyclic", 2);
        assert!(c2
            .embed(&ratio(1, 3), &ratio(1, 3), DEFAULT_ATTEMPTS, true)
            .unwrap()
            .is_none());
    }

    #[test]
    fn trapezium_orbit_scans_to_alpha_one() {
        let reg = engine("regular_dihedral8", 0);
        let w = reg
            .embed(&rat(1), &rat(3), DEFAULT_ATTEMPTS, true)
            .unwrap()
            .unwrap();
        assert_eq!(w.degeneracy, Degeneracy::AllDistinct);
        let hits = orbit_quad_scan(&w.orbit, reg.group(), DEFAULT_SCAN_CAP).unwrap();
        assert!(hits.iter().any(|h| h.alpha == rat(1) && h.beta == rat(3)));
        assert!(hits.iter().any(|h| h.indices == w.quad));
    }

    #[test]
    fn conjugate_triples_share_polynomials() {
        let g = engine("symmetric", 4);
        let grp = g.group();
        for (k, t) in [
            Triple::new(5, 9, 14),
            Triple::new(1, 2, 3),
            Triple::new(23, 7, 0),
        ]
        .into_iter()
        .enumerate()
        {
            let base = g.pencil_poly(t);
            for u in [3usize, 11, 17 + k] {
                let ui = grp.inv(u);
                let cj = |x| grp.mul(grp.mul(u, x), ui);
                assert_eq!(g.pencil_poly(Triple::new(cj(t.a), cj(t.b), cj(t.c))), base);
            }
        }
    }
}

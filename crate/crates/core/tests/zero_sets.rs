use num_traits::Zero;
use proptest::prelude::*;
use quadembed::criterion::witness_alphas;
use quadembed::exactnum::ratio;
use quadembed::geometry::quads_with_params;
use quadembed::{catalog, orbit, quad_params, witness_beta, Degeneracy, Engine, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Membership is the union of the class zero sets.
    #[test]
    fn membership_is_union_of_zero_sets(a in small_rational(), b in small_rational()) {
        for (name, n) in [("cyclic", 4), ("symmetric", 3), ("dihedral", 4)] {
            let engine = Engine::new(catalog(name, n).unwrap());
            let hits = engine.membership(&a, &b, true).unwrap();
            let vanishing: Vec<_> = engine
                .classes(true)
                .unwrap()
                .into_iter()
                .filter(|c| {
                    let p = engine.pencil(c.rep);
                    p.dim() > 0 && p.poly().eval(&a, &b).is_zero()
                })
                .map(|c| c.rep)
                .collect();
            let reps: Vec<_> = hits.iter().map(|h| h.class.rep).collect();
            prop_assert_eq!(reps, vanishing);
        }
    }

    /// The witness beta never lies on a zero set, for any admissible alpha.
    #[test]
    fn witness_beta_is_never_a_zero(a in small_rational()) {
        prop_assume!(a != ratio(0, 1) && a != ratio(1, 1));
        let beta = witness_beta(&a).unwrap();
        for (name, n) in [("cyclic", 5), ("alternating", 4), ("dihedral", 5)] {
            let engine = Engine::new(catalog(name, n).unwrap());
            prop_assert!(engine.membership(&a, &beta, true).unwrap().is_empty());
        }
    }
}

#[test]
fn kernel_vectors_realize_their_parameters() {
    let engine = Engine::new(catalog("symmetric", 3).unwrap());
    let (a, b) = (ratio(1, 2), ratio(1, 2));
    let hits = engine.membership(&a, &b, true).unwrap();
    assert!(!hits.is_empty());
    for hit in &hits {
        for w in hit.ambient_kernel() {
            let o = orbit(engine.group(), &w).unwrap();
            assert!(!quads_with_params(&o, &a, &b).is_empty());
        }
    }
}

#[test]
fn witness_alphas_cover_both_branches() {
    let [neg, half, two] = witness_alphas();
    assert_eq!(witness_beta(&neg).unwrap(), neg);
    assert_eq!(witness_beta(&half).unwrap(), ratio(1, 4));
    assert_eq!(witness_beta(&two).unwrap(), ratio(-1, 2));
}

/// The trapezia are also realized by the natural action of the dihedral
/// group of order 8 on the square's vertices, not only the regular one.
#[test]
fn natural_dihedral_action_realizes_trapezia() {
    let engine = Engine::new(catalog("dihedral", 4).unwrap());
    let one = Rational::from_integer(1.into());
    for beta in [ratio(2, 1), ratio(3, 1), ratio(5, 2)] {
        let w = engine
            .embed(&one, &beta, 8, true)
            .unwrap()
            .expect("witness");
        assert_eq!(w.degeneracy, Degeneracy::AllDistinct);
        let p = quad_params(&w.quadrilateral()).unwrap();
        assert_eq!((p.alpha, p.beta), (one.clone(), beta));
    }
}

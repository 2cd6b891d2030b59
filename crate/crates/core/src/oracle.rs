//! Independent cross-checks for the engine.
//!
//! These routines deliberately take different routes from the production
//! paths: symbolic cofactor expansion instead of evaluation plus
//! interpolation, and orbit enumeration instead of kernel computation.

use num_traits::Zero;

use crate::exactnum::{RatMatrix, Rational};
use crate::geometry::{orbit, quads_with_params};
use crate::permgroup::PermGroup;
use crate::poly::BivarPoly;
use crate::representation::SubgroupContext;

/// Entries of `L(alpha, beta)` as linear polynomials:
/// `alpha (A - C) + beta (B - C) + (C - I)`.
pub fn symbolic_pencil(ctx: &SubgroupContext) -> Vec<Vec<BivarPoly>> {
    let [a, b, c] = &ctx.restricted;
    let d = ctx.restricted_dim();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let cij = &c[(i, j)];
                    let diag = if i == j {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    };
                    BivarPoly::linear(&a[(i, j)] - cij, &b[(i, j)] - cij, cij - diag)
                })
                .collect()
        })
        .collect()
}

/// Determinant of a polynomial matrix by Laplace expansion along the first
/// row.
pub fn cofactor_det(m: &[Vec<BivarPoly>]) -> BivarPoly {
    let n = m.len();
    if n == 0 {
        return BivarPoly::constant(Rational::from_integer(1.into()));
    }
    let mut total = BivarPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BivarPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&cofactor_det(&minor));
        total = if j % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    total
}

/// Cofactor determinant of a numeric matrix.
pub fn cofactor_det_numeric(m: &RatMatrix) -> Rational {
    let rows: Vec<Vec<BivarPoly>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| BivarPoly::constant(m[(i, j)].clone()))
                .collect()
        })
        .collect();
    cofactor_det(&rows).coeff(0, 0)
}

/// Whether the orbit of `start` contains a non-trivial ordered quadruple
/// (repetition allowed) with parameters exactly `(alpha, beta)`.
pub fn orbit_realizes(
    group: &PermGroup,
    start: &crate::exactnum::RatVector,
    alpha: &Rational,
    beta: &Rational,
) -> bool {
    match orbit(group, start) {
        Ok(o) => !quads_with_params(&o, alpha, beta).is_empty(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::Engine;
    use crate::exactnum::det;
    use crate::permgroup::{catalog, Triple};

    #[test]
    fn numeric_cofactor_matches_bareiss() {
        let m = RatMatrix::from_int_rows(&[
            &[2, -1, 0, 3],
            &[1, 1, 4, -2],
            &[0, 5, -1, 1],
            &[3, 0, 2, 2],
        ]);
        assert_eq!(cofactor_det_numeric(&m), det(&m).unwrap());
    }

    #[test]
    fn symbolic_matches_interpolated_on_s3() {
        let e = Engine::new(catalog("symmetric", 3).unwrap());
        for a in 0..6 {
            for b in 0..6 {
                let t = Triple::new(a, b, (a + 2 * b) % 6);
                let p = e.pencil(t);
                assert_eq!(cofactor_det(&symbolic_pencil(&p.context)), p.poly());
            }
        }
    }
}

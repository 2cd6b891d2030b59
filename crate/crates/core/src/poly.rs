//! Univariate and bivariate polynomials over the rationals.
//!
//! Polynomials produced by the engine are materialized by evaluation and
//! interpolation rather than symbolic expansion; the arithmetic operators
//! exist for cross-checking and for callers composing polynomials by hand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::PolyError;
use crate::exactnum::{format_rational, rat, Rational};

/// Polynomial in one variable, coefficients in ascending degree with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{}*b", format_rational(c))?,
                _ => write!(f, "{}*b^{d}", format_rational(c))?,
            }
        }
        Ok(())
    }
}

pub fn eval_uni(p: &UniPoly, x: &Rational) -> Rational {
    p.eval(x)
}

/// Polynomial in (alpha, beta), stored sparsely by exponent pair
/// `(degree in alpha, degree in beta)`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    /// `ca * alpha + cb * beta + c0`.
    pub fn linear(ca: Rational, cb: Rational, c0: Rational) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(1, 0, ca);
        p.add_term(0, 1, cb);
        p.add_term(0, 0, c0);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = BivarPoly::zero();
        for ((da, db), c) in terms {
            p.add_term(da, db, c);
        }
        p
    }

    pub fn add_term(&mut self, da: u32, db: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((da, db)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(da, db));
        }
    }

    /// Terms sorted lexicographically by `(da, db)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(da, db), c)| (da, db, c))
    }

    pub fn coeff(&self, da: u32, db: u32) -> Rational {
        self.terms
            .get(&(da, db))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_alpha(&self) -> Option<u32> {
        self.terms.keys().map(|&(da, _)| da).max()
    }

    pub fn degree_beta(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, db)| db).max()
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        // Horner in alpha over Horner-in-beta row polynomials.
        let Some(max_a) = self.degree_alpha() else {
            return Rational::zero();
        };
        let mut rows: Vec<Vec<(u32, &Rational)>> = vec![Vec::new(); max_a as usize + 1];
        for (&(da, db), c) in &self.terms {
            rows[da as usize].push((db, c));
        }
        rows.iter().rev().fold(Rational::zero(), |acc, row| {
            let mut dense =
                vec![Rational::zero(); row.iter().map(|&(d, _)| d as usize + 1).max().unwrap_or(0)];
            for &(d, c) in row {
                dense[d as usize] = c.clone();
            }
            let rv = dense.iter().rev().fold(Rational::zero(), |r, c| r * b + c);
            acc * a + rv
        })
    }

    /// Specializes alpha, leaving a polynomial in beta.
    pub fn slice_alpha(&self, a: &Rational) -> UniPoly {
        let max_b = self.degree_beta().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rational::zero(); max_b];
        for (&(da, db), c) in &self.terms {
            coeffs[db as usize] += c * pow(a, da);
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(da, db), c) in &other.terms {
            out.add_term(da, db, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (da, db, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            match da {
                0 => {}
                1 => write!(f, "*a")?,
                _ => write!(f, "*a^{da}")?,
            }
            match db {
                0 => {}
                1 => write!(f, "*b")?,
                _ => write!(f, "*b^{db}")?,
            }
        }
        Ok(())
    }
}

pub fn eval_bivar(p: &BivarPoly, a: &Rational, b: &Rational) -> Rational {
    p.eval(a, b)
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// The interpolation abscissae `0, 1, ..., bound`.
pub fn integer_nodes(bound: usize) -> Vec<Rational> {
    (0..=bound as i64).map(rat).collect()
}

/// The unique polynomial of degree at most `degree_bound` through the samples.
///
/// The first `degree_bound + 1` samples determine the polynomial (Newton
/// divided differences); any further samples must agree with it.
pub fn interpolate_uni(
    samples: &[(Rational, Rational)],
    degree_bound: usize,
) -> Result<UniPoly, PolyError> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(PolyError::TooFewSamples {
            needed,
            got: samples.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for (x, _) in samples {
        if !seen.insert(x) {
            return Err(PolyError::DuplicateAbscissa(format_rational(x)));
        }
    }
    let (head, tail) = samples.split_at(needed);
    let xs: Vec<&Rational> = head.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = head.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..needed {
        for i in (level..needed).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Expand the Newton form into monomials from the innermost term outwards.
    let mut coeffs = vec![Rational::zero(); needed];
    for k in (0..needed).rev() {
        // coeffs <- coeffs * (X - xs[k]) + dd[k]
        let mut next = vec![Rational::zero(); needed];
        for d in 0..needed {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < needed {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    let p = UniPoly::from_coeffs(coeffs);
    for (x, y) in tail {
        if &p.eval(x) != y {
            return Err(PolyError::Inconsistent(degree_bound));
        }
    }
    Ok(p)
}

/// Interpolates a bivariate polynomial from values on a full tensor grid.
///
/// Each axis must carry at least `bound + 1` distinct abscissae and every
/// combination must be present.
pub fn interpolate_bivar(
    grid: &BTreeMap<(Rational, Rational), Rational>,
    bounds: (usize, usize),
) -> Result<BivarPoly, PolyError> {
    let alphas: BTreeSet<&Rational> = grid.keys().map(|(a, _)| a).collect();
    let betas: BTreeSet<&Rational> = grid.keys().map(|(_, b)| b).collect();
    if alphas.len() * betas.len() != grid.len() {
        return Err(PolyError::PartialGrid(format!(
            "{} values for {} x {} abscissae",
            grid.len(),
            alphas.len(),
            betas.len()
        )));
    }
    if alphas.len() < bounds.0 + 1 || betas.len() < bounds.1 + 1 {
        return Err(PolyError::PartialGrid(format!(
            "{} x {} abscissae for degree bounds {:?}",
            alphas.len(),
            betas.len(),
            bounds
        )));
    }
    // Interpolate each alpha-row in beta, then each beta-coefficient in alpha.
    let rows: Vec<(Rational, UniPoly)> = alphas
        .iter()
        .map(|&a| {
            let samples: Vec<(Rational, Rational)> = betas
                .iter()
                .map(|&b| (b.clone(), grid[&(a.clone(), b.clone())].clone()))
                .collect();
            interpolate_uni(&samples, bounds.1).map(|p| (a.clone(), p))
        })
        .collect::<Result<_, _>>()?;
    let mut out = BivarPoly::zero();
    for db in 0..=bounds.1 {
        let samples: Vec<(Rational, Rational)> = rows
            .iter()
            .map(|(a, p)| {
                (
                    a.clone(),
                    p.coeffs().get(db).cloned().unwrap_or_else(Rational::zero),
                )
            })
            .collect();
        let column = interpolate_uni(&samples, bounds.0)?;
        for (da, c) in column.coeffs().iter().enumerate() {
            out.add_term(da as u32, db as u32, c.clone());
        }
    }
    Ok(out)
}

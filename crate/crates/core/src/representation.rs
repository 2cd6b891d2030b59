//! The sum-zero (deleted) permutation representation, fixed subspaces of
//! subgroups and restriction to their invariant complements.
//!
//! Two coordinate systems are in play. Matrices of the representation use
//! the basis `e_i - e_n` (`i < n`), which keeps every entry in `{-1, 0, 1}`.
//! Geometry uses ambient length-`n` coordinates on the sum-zero hyperplane,
//! where the standard inner product is invariant under the action.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::exactnum::{inverse, kernel_basis, RatMatrix, RatVector, Rational};
use crate::permgroup::{Perm, PermGroup, Triple};

/// Permutes coordinates: `(p·v)[p(i)] = v[i]`.
pub fn permute_vector(p: &Perm, v: &RatVector) -> RatVector {
    let mut out = RatVector::zeros(v.len());
    for (i, x) in v.iter().enumerate() {
        out.0[p.apply(i)] = x.clone();
    }
    out
}

/// Matrix of `p` on the sum-zero subspace in the basis `e_i - e_n`.
pub fn deleted_matrix(p: &Perm) -> RatMatrix {
    let n = p.degree();
    let dim = n.saturating_sub(1);
    let mut m = RatMatrix::zeros(dim, dim);
    if n == 0 {
        return m;
    }
    let last = n - 1;
    let tail = p.apply(last);
    for j in 0..dim {
        // e_j - e_n  ->  e_p(j) - e_p(n)
        let head = p.apply(j);
        if head != last {
            m[(head, j)] += Rational::one();
        }
        if tail != last {
            m[(tail, j)] -= Rational::one();
        }
    }
    m
}

/// Converts coordinates in the `e_i - e_n` basis to ambient coordinates.
pub fn deleted_to_ambient(coords: &RatVector) -> RatVector {
    let mut v = coords.0.clone();
    v.push(-coords.sum());
    RatVector(v)
}

/// Basis (ambient coordinates) of the sum-zero vectors fixed by every
/// element of `elements`, hence by the subgroup they generate.
pub fn fixed_subspace(group: &PermGroup, elements: &[usize]) -> Vec<RatVector> {
    let dim = group.degree().saturating_sub(1);
    if dim == 0 {
        return Vec::new();
    }
    let id = RatMatrix::identity(dim);
    let mut stacked = RatMatrix::zeros(0, dim);
    for &e in elements {
        let m = deleted_matrix(group.element(e));
        if m == id {
            continue;
        }
        stacked = stacked.vstack(&m.sub(&id));
    }
    kernel_basis(&stacked)
        .iter()
        .map(deleted_to_ambient)
        .collect()
}

/// The fixed space of a subgroup and an orthogonal, invariant complement.
#[derive(Debug)]
pub struct Complement {
    pub fixed_basis: Vec<RatVector>,
    /// Ambient coordinates of the complement basis vectors.
    pub basis: Vec<RatVector>,
    /// `n x r` matrix with the basis vectors as columns.
    basis_matrix: RatMatrix,
    /// Left inverse `(U^T U)^-1 U^T`, mapping ambient vectors in the
    /// complement to basis coordinates.
    coords: RatMatrix,
    /// When nothing is fixed the complement basis is `e_i - e_n` and the
    /// restricted matrices are the deleted matrices themselves.
    whole_space: bool,
}

impl Complement {
    fn new(group: &PermGroup, subgroup_gens: &[usize]) -> Self {
        let n = group.degree();
        let fixed_basis = fixed_subspace(group, subgroup_gens);
        let dim = n.saturating_sub(1);
        let basis: Vec<RatVector> = if fixed_basis.is_empty() {
            (0..dim)
                .map(|i| {
                    let mut v = RatVector::zeros(n);
                    v.0[i] = Rational::one();
                    v.0[n - 1] = -Rational::one();
                    v
                })
                .collect()
        } else {
            let mut constraints =
                RatMatrix::from_entries(1, n, vec![Rational::one(); n]).expect("shape");
            for f in &fixed_basis {
                let row = RatMatrix::from_entries(1, n, f.0.clone()).expect("shape");
                constraints = constraints.vstack(&row);
            }
            kernel_basis(&constraints)
        };
        let basis_matrix = RatMatrix::from_columns(n, &basis);
        let ut = basis_matrix.transpose();
        let gram = ut.mul(&basis_matrix).expect("shape");
        let gram_inv = inverse(&gram)
            .expect("square")
            .expect("basis vectors are independent");
        let coords = gram_inv.mul(&ut).expect("shape");
        Complement {
            whole_space: fixed_basis.is_empty(),
            fixed_basis,
            basis,
            basis_matrix,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient vector with the given complement coordinates.
    pub fn lift(&self, coords: &RatVector) -> RatVector {
        self.basis_matrix
            .mul_vec(coords)
            .expect("coordinate length matches complement dimension")
    }

    /// Complement coordinates of an ambient vector lying in the complement.
    pub fn coordinates(&self, ambient: &RatVector) -> RatVector {
        self.coords
            .mul_vec(ambient)
            .expect("ambient length matches degree")
    }

    /// Gram matrix `U^T U` of the basis.
    pub fn gram(&self) -> RatMatrix {
        self.basis_matrix
            .transpose()
            .mul(&self.basis_matrix)
            .expect("shape")
    }

    fn restrict(&self, p: &Perm, deleted: &RatMatrix) -> RatMatrix {
        if self.whole_space {
            return deleted.clone();
        }
        let images: Vec<RatVector> = self.basis.iter().map(|u| permute_vector(p, u)).collect();
        let moved = RatMatrix::from_columns(self.basis_matrix.rows(), &images);
        self.coords.mul(&moved).expect("shape")
    }
}

/// The deleted representation of a group, with per-element matrices and a
/// cache of complements keyed by subgroup.
#[derive(Debug)]
pub struct DeletedRep {
    group: Arc<PermGroup>,
    matrices: Vec<RatMatrix>,
    complements: RwLock<HashMap<Vec<usize>, Arc<Complement>>>,
}

impl DeletedRep {
    pub fn new(group: Arc<PermGroup>) -> Self {
        let matrices = group.elements().iter().map(deleted_matrix).collect();
        DeletedRep {
            group,
            matrices,
            complements: RwLock::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.degree().saturating_sub(1)
    }

    pub fn matrix(&self, element: usize) -> &RatMatrix {
        &self.matrices[element]
    }

    fn complement(&self, subgroup: &[usize], gens: &[usize]) -> Arc<Complement> {
        if let Some(c) = self.complements.read().expect("cache lock").get(subgroup) {
            return Arc::clone(c);
        }
        let built = Arc::new(Complement::new(&self.group, gens));
        let mut cache = self.complements.write().expect("cache lock");
        Arc::clone(cache.entry(subgroup.to_vec()).or_insert(built))
    }

    /// Restricts the triple's matrices to the complement of the space fixed
    /// by `H = <A, B, C>`.
    pub fn build_context(&self, triple: Triple) -> SubgroupContext {
        let gens = [triple.a, triple.b, triple.c];
        let subgroup = self.group.subgroup(&gens);
        let complement = self.complement(&subgroup, &gens);
        let restricted =
            gens.map(|e| complement.restrict(self.group.element(e), &self.matrices[e]));
        SubgroupContext {
            triple,
            subgroup_elements: subgroup,
            complement,
            restricted,
        }
    }
}

/// A triple restricted to the fixed-point-free part `U` of the subgroup it
/// generates.
#[derive(Debug, Clone)]
pub struct SubgroupContext {
    pub triple: Triple,
    pub subgroup_elements: Vec<usize>,
    complement: Arc<Complement>,
    /// `A|U`, `B|U`, `C|U`.
    pub restricted: [RatMatrix; 3],
}

impl SubgroupContext {
    pub fn fixed_dim(&self) -> usize {
        self.complement.fixed_basis.len()
    }

    pub fn restricted_dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn fixed_basis(&self) -> &[RatVector] {
        &self.complement.fixed_basis
    }

    pub fn complement_basis(&self) -> &[RatVector] {
        &self.complement.basis
    }

    pub fn complement(&self) -> &Complement {
        &self.complement
    }

    pub fn lift(&self, coords: &RatVector) -> RatVector {
        self.complement.lift(coords)
    }

    /// Whether `H` acts trivially on all of `U`, i.e. `A|U = B|U = C|U = I`.
    pub fn is_trivial_action(&self) -> bool {
        let id = RatMatrix::identity(self.restricted_dim());
        self.restricted.iter().all(|m| *m == id)
    }
}

/// Convenience for callers holding only a vector: the sum of its entries
/// must vanish for it to live in the representation space.
pub fn is_sum_zero(v: &RatVector) -> bool {
    v.sum().is_zero()
}

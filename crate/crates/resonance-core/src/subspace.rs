//! Subspaces of Q^n and their lattice operations.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis_vectors, rank_exact, Mat};
use crate::rat::Rat;

/// A subspace given by an explicit independent basis of coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
}

impl SubspaceBasis {
    /// Builds a subspace from independent vectors; rejects dependent input.
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Rat>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::AmbientMismatch {
                left: ambient_dim,
                right: basis.iter().map(Vec::len).find(|&l| l != ambient_dim).unwrap_or(0),
            });
        }
        if rank_exact(&Mat::from_rows(basis.clone())) != basis.len() {
            return Err(Error::DependentVectors);
        }
        Ok(SubspaceBasis { ambient_dim, basis })
    }

    /// The zero subspace.
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// Reduces a spanning family to a basis first.
    pub fn from_spanning(ambient_dim: usize, spanning: &[Vec<Rat>]) -> Self {
        let red = crate::matrix::rref(&Mat::from_rows(spanning.to_vec()));
        SubspaceBasis {
            ambient_dim,
            basis: red.rows,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Rat>> {
        self.basis
    }

    /// Basis vectors as matrix columns.
    pub fn as_columns(&self) -> Mat {
        Mat::from_rows(self.basis.clone()).transpose()
    }

    pub fn contains_vector(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: v.len(),
            });
        }
        let q = crate::matrix::QuotientMap::new(self.ambient_dim, &self.basis);
        Ok(q.contains(v))
    }
}

/// Basis of `a ∩ b`. The kernel of the stacked column matrix `[A B]` maps
/// onto the intersection via `(u, v) ↦ A u`.
pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(SubspaceBasis::zero(a.ambient_dim));
    }
    let n = a.ambient_dim;
    let p = a.dim();
    let q = b.dim();
    let mut stacked = Mat::zeros(n, p + q);
    for (j, v) in a.basis.iter().enumerate() {
        for i in 0..n {
            stacked.set(i, j, v[i].clone());
        }
    }
    for (j, v) in b.basis.iter().enumerate() {
        for i in 0..n {
            stacked.set(i, p + j, v[i].clone());
        }
    }
    let ker = kernel_basis_vectors(&stacked);
    let mut vectors = Vec::with_capacity(ker.len());
    for k in &ker {
        let mut w = alloc::vec![Rat::zero(); n];
        for (j, v) in a.basis.iter().enumerate() {
            if !k[j].is_zero() {
                for i in 0..n {
                    if !v[i].is_zero() {
                        w[i] = &w[i] + &(&k[j] * &v[i]);
                    }
                }
            }
        }
        vectors.push(w);
    }
    // the map (u, v) ↦ A u is injective on the kernel, so this is a basis
    SubspaceBasis::new(a.ambient_dim, vectors)
}

/// True iff `span(a) ⊆ span(b)`.
pub fn is_contained(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    let q = crate::matrix::QuotientMap::new(b.ambient_dim, &b.basis);
    Ok(a.basis.iter().all(|v| q.contains(v)))
}

/// Basis of `a + b`.
pub fn sum(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    let mut rows = a.basis.clone();
    rows.extend(b.basis.iter().cloned());
    Ok(SubspaceBasis::from_spanning(a.ambient_dim, &rows))
}

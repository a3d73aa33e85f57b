//! Dense matrices over the rationals and exact elimination.
//!
//! Ranks go through fraction-free Bareiss elimination over the integers
//! after clearing denominators, which keeps coefficient growth bounded by
//! minors of the input. Kernels and reduced echelon forms use rational
//! Gauss-Jordan, which is what the quotient/membership machinery needs.
//! Pivots are always chosen with the smallest combined bit length, lowest
//! row index on ties, so every elimination is deterministic.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::{bit_size, Int, Rat};

/// Row-major dense matrix over [`Rat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, v: &Rat) {
        let e = &mut self.data[r * self.cols + c];
        *e = &*e + v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if !b.is_zero() {
                        out.add_assign_at(r, c, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                out.set(ri, ci, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }
}

/// Exact rank over the rationals, by Bareiss fraction-free elimination on
/// the integer matrix obtained by clearing denominators row by row.
pub fn rank_exact(m: &Mat) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a: Vec<Vec<Int>> = (0..rows).map(|r| clear_row(m.row(r))).collect();
    let mut prev = Int::one();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot_row = (rank..rows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| (a[i][col].bits(), i));
        let Some(p) = pivot_row else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..rows {
            let head = core::mem::replace(&mut a[i][col], Int::zero());
            if head.is_zero() {
                // one-step Bareiss still rescales the row
                for j in col + 1..cols {
                    if !a[i][j].is_zero() {
                        let t = &a[i][j] * &pivot;
                        a[i][j] = t / &prev;
                    }
                }
            } else {
                for j in col + 1..cols {
                    let t = &a[i][j] * &pivot - &head * &a[rank][j];
                    a[i][j] = t / &prev;
                }
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn clear_row(row: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for e in row {
        if !e.is_zero() {
            l = l.lcm(e.denom());
        }
    }
    row.iter()
        .map(|e| {
            if e.is_zero() {
                Int::zero()
            } else {
                e.numer() * (&l / e.denom())
            }
        })
        .collect()
}

/// True for a square matrix with nonzero determinant.
pub fn nonsingular_exact(m: &Mat) -> bool {
    m.rows() == m.cols() && rank_exact(m) == m.rows()
}

/// Reduced row echelon form: normalized pivot rows and their pivot columns.
/// Zero rows are dropped.
#[derive(Debug, Clone)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Mat) -> Rref {
    let cols = m.cols();
    let mut rows: Vec<Vec<Rat>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let pivot_row = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| (bit_size(&rows[i][c]), i));
        let Some(p) = pivot_row else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for e in rows[r].iter_mut() {
            if !e.is_zero() {
                *e = &*e / &inv;
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = core::mem::replace(&mut rows[i][c], Rat::zero());
            for j in c + 1..cols {
                if !rows[r][j].is_zero() {
                    let t = &rows[i][j] - &(&f * &rows[r][j]);
                    rows[i][j] = t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Rref { cols, rows, pivots }
}

/// Canonical basis of the right null space `{v : m v = 0}`. One vector per
/// free column, with a `1` in the free coordinate.
pub fn kernel_basis_vectors(m: &Mat) -> Vec<Vec<Rat>> {
    let red = rref(m);
    let cols = red.cols;
    let mut is_pivot = vec![usize::MAX; cols];
    for (ri, &pc) in red.pivots.iter().enumerate() {
        is_pivot[pc] = ri;
    }
    let mut out = Vec::new();
    for free in 0..cols {
        if is_pivot[free] != usize::MAX {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (ri, &pc) in red.pivots.iter().enumerate() {
            let e = &red.rows[ri][free];
            if !e.is_zero() {
                v[pc] = -e.clone();
            }
        }
        out.push(v);
    }
    out
}

/// Reduction modulo the row span of a family of vectors: coordinates of the
/// image in a canonical complement (the non-pivot coordinates).
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub ambient: usize,
    red: Rref,
    nonpivot: Vec<usize>,
}

impl QuotientMap {
    /// Spanning rows may be dependent; they are reduced internally.
    pub fn new(ambient: usize, spanning: &[Vec<Rat>]) -> Self {
        assert!(spanning.iter().all(|v| v.len() == ambient));
        let red = rref(&Mat::from_rows(spanning.to_vec()));
        let mut in_piv = vec![false; ambient];
        for &p in &red.pivots {
            in_piv[p] = true;
        }
        let nonpivot = (0..ambient).filter(|&c| !in_piv[c]).collect();
        QuotientMap {
            ambient,
            red,
            nonpivot,
        }
    }

    /// Dimension of the subspace being quotiented out.
    pub fn subspace_dim(&self) -> usize {
        self.red.pivots.len()
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.ambient - self.red.pivots.len()
    }

    /// Image of `v` in quotient coordinates.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient);
        self.nonpivot
            .iter()
            .map(|&np| {
                let mut acc = v[np].clone();
                for (ri, &pc) in self.red.pivots.iter().enumerate() {
                    if !v[pc].is_zero() && !self.red.rows[ri][np].is_zero() {
                        acc = acc - &v[pc] * &self.red.rows[ri][np];
                    }
                }
                acc
            })
            .collect()
    }

    /// Image of the `idx`-th standard basis vector in quotient coordinates.
    pub fn reduce_unit(&self, idx: usize) -> Vec<Rat> {
        match self.red.pivots.iter().position(|&p| p == idx) {
            Some(ri) => self
                .nonpivot
                .iter()
                .map(|&np| -self.red.rows[ri][np].clone())
                .collect(),
            None => self
                .nonpivot
                .iter()
                .map(|&np| {
                    if np == idx {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect(),
        }
    }

    /// True when `v` lies in the subspace.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Rat::is_zero)
    }
}

/// Coordinate-list matrix with additive semantics: repeated coordinates
/// accumulate. The Koszul differentials have a handful of nonzero entries
/// per column, so the graded pieces are built in this form and only
/// densified when exact elimination actually needs it.
#[derive(Debug, Clone)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(u32, u32, Rat)>,
}

impl SparseMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, r: usize, c: usize, v: Rat) {
        debug_assert!(r < self.rows && c < self.cols);
        if !v.is_zero() {
            self.entries.push((r as u32, c as u32, v));
        }
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for (r, c, v) in &self.entries {
            m.add_assign_at(*r as usize, *c as usize, v);
        }
        m
    }

    /// Dense column vectors, for feeding spanning-set machinery.
    pub fn columns(&self) -> Vec<Vec<Rat>> {
        let mut cols = vec![vec![Rat::zero(); self.rows]; self.cols];
        for (r, c, v) in &self.entries {
            let e = &mut cols[*c as usize][*r as usize];
            *e = &*e + v;
        }
        cols
    }
}

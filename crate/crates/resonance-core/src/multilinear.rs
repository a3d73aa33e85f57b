//! Bases and index arithmetic for Sym^q V, Λ²V, Λ³V, the Koszul
//! differentials, and the duality between K and K-perp.
//!
//! Fixed basis orderings, which every matrix in the crate is relative to:
//! monomials of Sym^q V in descending lexicographic order on exponent
//! vectors (so x1^q first, xn^q last), pairs (i,j) with i<j and triples
//! (i,j,k) with i<j<k in ascending lexicographic order. Indices are
//! 0-based internally.
//!
//! Sign conventions: δ2(v_i∧v_j ⊗ f) = v_j⊗x_i f − v_i⊗x_j f and
//! δ3(v_i∧v_j∧v_k ⊗ f) = v_j∧v_k⊗x_i f − v_i∧v_k⊗x_j f + v_i∧v_j⊗x_k f,
//! which makes both compositions vanish identically.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis_vectors, rank_exact, Mat, SparseMat};
use crate::rat::Rat;

/// Binomial coefficient as usize; callers stay well inside desk scale.
pub fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// dim Sym^q of an n-dimensional space: C(n-1+q, q).
pub fn sym_dim(n: usize, q: usize) -> usize {
    if n == 0 {
        return if q == 0 { 1 } else { 0 };
    }
    binom_usize(n - 1 + q, q)
}

/// Exponent vectors of the degree-q monomials in n variables, in
/// descending lexicographic order.
pub fn mono_list(n: usize, q: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(sym_dim(n, q));
    let mut cur = vec![0u32; n];
    fill_monos(&mut out, &mut cur, 0, q as u32, n);
    out
}

fn fill_monos(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32, n: usize) {
    if n == 0 {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill_monos(out, cur, pos + 1, left - e, n);
    }
    cur[pos] = 0;
}

/// Index of a degree-q exponent vector in the [`mono_list`] order.
pub fn mono_rank(exps: &[u32]) -> usize {
    let n = exps.len();
    let mut left: u32 = exps.iter().sum();
    let mut r = 0usize;
    for (pos, &e) in exps.iter().enumerate() {
        for larger in e + 1..=left {
            r += sym_dim(n - pos - 1, (left - larger) as usize);
        }
        left -= e;
    }
    r
}

/// Inverse of [`mono_rank`] at fixed (n, q).
pub fn mono_unrank(n: usize, q: usize, mut r: usize) -> Vec<u32> {
    let mut exps = vec![0u32; n];
    let mut left = q as u32;
    for pos in 0..n {
        if pos == n - 1 {
            exps[pos] = left;
            break;
        }
        for e in (0..=left).rev() {
            let c = sym_dim(n - pos - 1, (left - e) as usize);
            if r < c {
                exps[pos] = e;
                left -= e;
                break;
            }
            r -= c;
        }
    }
    exps
}

/// All pairs (i, j), 0 <= i < j < n, ascending lex.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(binom_usize(n, 2));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Index of (i, j) with i < j in the [`pair_list`] order.
pub fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All triples (i, j, k), 0 <= i < j < k < n, ascending lex.
pub fn triple_list(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(binom_usize(n, 3));
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// An element of Λ²V (or Λ²V-dual) in pair coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    pub n: usize,
    pub coords: Vec<Rat>,
}

impl Bivector {
    pub fn zero(n: usize) -> Self {
        Bivector {
            n,
            coords: vec![Rat::zero(); binom_usize(n, 2)],
        }
    }

    /// From (i, j, coefficient) terms with i < j, 0-based.
    pub fn from_terms(n: usize, terms: &[(usize, usize, Rat)]) -> Result<Self> {
        let mut b = Bivector::zero(n);
        for (i, j, c) in terms {
            if *i >= *j || *j >= n {
                return Err(Error::InvalidInput {
                    detail: alloc::format!("bad bivector term ({i}, {j}) for n = {n}"),
                });
            }
            let idx = pair_rank(n, *i, *j);
            b.coords[idx] = &b.coords[idx] + c;
        }
        Ok(b)
    }

    /// u ∧ v for coordinate vectors of length n.
    pub fn wedge(u: &[Rat], v: &[Rat]) -> Self {
        let n = u.len();
        debug_assert_eq!(v.len(), n);
        let mut b = Bivector::zero(n);
        for (idx, (i, j)) in pair_list(n).into_iter().enumerate() {
            b.coords[idx] = &u[i] * &v[j] - &u[j] * &v[i];
        }
        b
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }
}

/// An instance: the ambient dimension together with bases of K ⊆ Λ²V and
/// of K-perp ⊆ Λ²V-dual. The two pair to zero coordinatewise and their
/// dimensions add up to C(n,2); both facts are enforced on construction.
#[derive(Debug, Clone)]
pub struct PairSpec {
    n: usize,
    k_basis: Vec<Bivector>,
    kperp_basis: Vec<Bivector>,
}

impl PairSpec {
    /// Validates a fully-specified instance.
    pub fn new(n: usize, k_basis: Vec<Bivector>, kperp_basis: Vec<Bivector>) -> Result<Self> {
        let nn = binom_usize(n, 2);
        for b in k_basis.iter().chain(kperp_basis.iter()) {
            if b.n != n || b.coords.len() != nn {
                return Err(Error::AmbientMismatch {
                    left: nn,
                    right: b.coords.len(),
                });
            }
        }
        if k_basis.len() + kperp_basis.len() != nn {
            return Err(Error::InvalidInput {
                detail: alloc::format!(
                    "dim K ({}) + dim Kperp ({}) must be C(n,2) = {nn}",
                    k_basis.len(),
                    kperp_basis.len()
                ),
            });
        }
        let rows: Vec<Vec<Rat>> = k_basis.iter().map(|b| b.coords.clone()).collect();
        if !rows.is_empty() && rank_exact(&Mat::from_rows(rows.clone())) != k_basis.len() {
            return Err(Error::DependentVectors);
        }
        let prows: Vec<Vec<Rat>> = kperp_basis.iter().map(|b| b.coords.clone()).collect();
        if !prows.is_empty() && rank_exact(&Mat::from_rows(prows.clone())) != kperp_basis.len() {
            return Err(Error::DependentVectors);
        }
        for k in &rows {
            for p in &prows {
                let dot: Rat = k
                    .iter()
                    .zip(p)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum();
                if !dot.is_zero() {
                    return Err(Error::InvalidInput {
                        detail: "K and Kperp do not pair to zero".into(),
                    });
                }
            }
        }
        Ok(PairSpec {
            n,
            k_basis,
            kperp_basis,
        })
    }

    /// Completes K-perp as the null space of the pairing against K.
    pub fn from_k(n: usize, k_basis: Vec<Bivector>) -> Result<Self> {
        let kperp = complete_side(n, &k_basis)?;
        PairSpec::new(n, k_basis, kperp)
    }

    /// Completes K as the null space of the pairing against K-perp.
    pub fn from_kperp(n: usize, kperp_basis: Vec<Bivector>) -> Result<Self> {
        let k = complete_side(n, &kperp_basis)?;
        PairSpec::new(n, k, kperp_basis)
    }

    /// K = 0, so the Koszul module is the free-V case.
    pub fn free(n: usize) -> Self {
        PairSpec::from_k(n, Vec::new()).expect("empty basis is valid")
    }

    /// K = Λ²V, the zero Koszul module.
    pub fn full(n: usize) -> Self {
        let basis = pair_list(n)
            .into_iter()
            .map(|(i, j)| {
                Bivector::from_terms(n, &[(i, j, Rat::from_integer(1.into()))]).unwrap()
            })
            .collect();
        PairSpec::from_k(n, basis).expect("standard basis is valid")
    }

    /// Genus-g surface group data: n = 2g and K spanned by the dual
    /// symplectic bivector v_1∧v_{g+1} + ... + v_g∧v_{2g}.
    pub fn surface_group(g: usize) -> Result<Self> {
        if g < 1 {
            return Err(Error::InvalidInput {
                detail: "surface genus must be at least 1".into(),
            });
        }
        let n = 2 * g;
        let terms: Vec<(usize, usize, Rat)> = (0..g)
            .map(|i| (i, g + i, Rat::from_integer(1.into())))
            .collect();
        PairSpec::from_k(n, vec![Bivector::from_terms(n, &terms)?])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_k(&self) -> usize {
        self.k_basis.len()
    }

    pub fn dim_kperp(&self) -> usize {
        self.kperp_basis.len()
    }

    pub fn k_basis(&self) -> &[Bivector] {
        &self.k_basis
    }

    pub fn kperp_basis(&self) -> &[Bivector] {
        &self.kperp_basis
    }

    pub fn k_rows(&self) -> Vec<Vec<Rat>> {
        self.k_basis.iter().map(|b| b.coords.clone()).collect()
    }

    pub fn kperp_rows(&self) -> Vec<Vec<Rat>> {
        self.kperp_basis.iter().map(|b| b.coords.clone()).collect()
    }
}

fn complete_side(n: usize, given: &[Bivector]) -> Result<Vec<Bivector>> {
    let nn = binom_usize(n, 2);
    for b in given {
        if b.n != n || b.coords.len() != nn {
            return Err(Error::AmbientMismatch {
                left: nn,
                right: b.coords.len(),
            });
        }
    }
    if given.is_empty() {
        return Ok(pair_list(n)
            .into_iter()
            .map(|(i, j)| Bivector::from_terms(n, &[(i, j, Rat::from_integer(1.into()))]).unwrap())
            .collect());
    }
    let rows: Vec<Vec<Rat>> = given.iter().map(|b| b.coords.clone()).collect();
    let m = Mat::from_rows(rows);
    if rank_exact(&m) != given.len() {
        return Err(Error::DependentVectors);
    }
    Ok(kernel_basis_vectors(&m)
        .into_iter()
        .map(|coords| Bivector { n, coords })
        .collect())
}

/// Matrix of the multiplication map V ⊗ Sym^{q+1} → Sym^{q+2}, which is the
/// right-hand differential of the degree-q graded piece. Shape
/// sym_dim(n,q+2) × (n · sym_dim(n,q+1)); always surjective.
pub fn delta1_matrix(n: usize, q: usize) -> Mat {
    delta1_sparse(n, q).to_dense()
}

pub fn delta1_sparse(n: usize, q: usize) -> SparseMat {
    let sd1 = sym_dim(n, q + 1);
    let sd2 = sym_dim(n, q + 2);
    let mut m = SparseMat::new(sd2, n * sd1);
    for (mi, mono) in mono_list(n, q + 1).iter().enumerate() {
        let mut bumped = mono.clone();
        for i in 0..n {
            bumped[i] += 1;
            m.push(mono_rank(&bumped), i * sd1 + mi, Rat::from_integer(1.into()));
            bumped[i] -= 1;
        }
    }
    m
}

/// Matrix of the Koszul differential Λ²V ⊗ Sym^q → V ⊗ Sym^{q+1}.
pub fn delta2_matrix(n: usize, q: usize) -> Mat {
    delta2_sparse(n, q).to_dense()
}

pub fn delta2_sparse(n: usize, q: usize) -> SparseMat {
    let sd0 = sym_dim(n, q);
    let sd1 = sym_dim(n, q + 1);
    let pairs = pair_list(n);
    let mut m = SparseMat::new(n * sd1, pairs.len() * sd0);
    let one = Rat::from_integer(1.into());
    for (mi, mono) in mono_list(n, q).iter().enumerate() {
        for (pi, &(i, j)) in pairs.iter().enumerate() {
            let col = pi * sd0 + mi;
            let mut bumped = mono.clone();
            bumped[i] += 1;
            m.push(j * sd1 + mono_rank(&bumped), col, one.clone());
            bumped[i] -= 1;
            bumped[j] += 1;
            m.push(i * sd1 + mono_rank(&bumped), col, -one.clone());
            bumped[j] -= 1;
        }
    }
    m
}

/// Matrix of the Koszul differential Λ³V ⊗ Sym^{q−1} → Λ²V ⊗ Sym^q.
/// Empty for q = 0 or n < 3.
pub fn delta3_matrix(n: usize, q: usize) -> Mat {
    delta3_sparse(n, q).to_dense()
}

pub fn delta3_sparse(n: usize, q: usize) -> SparseMat {
    let pairs = binom_usize(n, 2);
    let triples = triple_list(n);
    let sd_tgt = sym_dim(n, q);
    if q == 0 || triples.is_empty() {
        return SparseMat::new(pairs * sd_tgt, 0);
    }
    let sd_src = sym_dim(n, q - 1);
    let mut m = SparseMat::new(pairs * sd_tgt, triples.len() * sd_src);
    let one = Rat::from_integer(1.into());
    for (mi, mono) in mono_list(n, q - 1).iter().enumerate() {
        for (ti, &(i, j, k)) in triples.iter().enumerate() {
            let col = ti * sd_src + mi;
            let mut bumped = mono.clone();
            bumped[i] += 1;
            m.push(
                pair_rank(n, j, k) * sd_tgt + mono_rank(&bumped),
                col,
                one.clone(),
            );
            bumped[i] -= 1;
            bumped[j] += 1;
            m.push(
                pair_rank(n, i, k) * sd_tgt + mono_rank(&bumped),
                col,
                -one.clone(),
            );
            bumped[j] -= 1;
            bumped[k] += 1;
            m.push(
                pair_rank(n, i, j) * sd_tgt + mono_rank(&bumped),
                col,
                one.clone(),
            );
            bumped[k] -= 1;
        }
    }
    m
}

/// Λ² of a linear map: rows index pairs in the target, columns pairs in the
/// source, entry ((s,t),(i,j)) = p[s,i]p[t,j] − p[s,j]p[t,i].
pub fn wedge_square_map(p: &Mat) -> Mat {
    let (m, n) = (p.rows(), p.cols());
    let rows = pair_list(m);
    let cols = pair_list(n);
    let mut out = Mat::zeros(rows.len(), cols.len());
    for (ri, &(s, t)) in rows.iter().enumerate() {
        for (ci, &(i, j)) in cols.iter().enumerate() {
            let v = p.at(s, i) * p.at(t, j) - p.at(s, j) * p.at(t, i);
            out.set(ri, ci, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rank_exact;
    use crate::rat::{rat_int, Rat};

    #[test]
    fn sym_dims() {
        assert_eq!(sym_dim(2, 3), 4);
        assert_eq!(sym_dim(4, 0), 1);
        assert_eq!(sym_dim(4, 2), 10);
        assert_eq!(sym_dim(0, 0), 1);
        assert_eq!(sym_dim(0, 3), 0);
    }

    #[test]
    fn mono_rank_unrank_round_trip() {
        for n in 1..=4 {
            for q in 0..=5 {
                let list = mono_list(n, q);
                assert_eq!(list.len(), sym_dim(n, q));
                for (r, m) in list.iter().enumerate() {
                    assert_eq!(mono_rank(m), r);
                    assert_eq!(&mono_unrank(n, q, r), m);
                }
            }
        }
    }

    #[test]
    fn mono_order_is_descending_lex() {
        assert_eq!(
            mono_list(2, 2),
            alloc::vec![
                alloc::vec![2, 0],
                alloc::vec![1, 1],
                alloc::vec![0, 2]
            ]
        );
    }

    #[test]
    fn delta1_small_cases() {
        // n=2, q=0: v_i ⊗ x_j ↦ x_i x_j against bases [x1², x1x2, x2²]
        let m = delta1_matrix(2, 0);
        assert_eq!((m.rows(), m.cols()), (3, 4));
        let expect = [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]];
        for r in 0..3 {
            for c in 0..4 {
                assert_eq!(m.at(r, c), &rat_int(expect[r][c]));
            }
        }
        assert_eq!(rank_exact(&m), 3);

        let m1 = delta1_matrix(1, 0);
        assert_eq!((m1.rows(), m1.cols()), (1, 1));
        assert_eq!(m1.at(0, 0), &rat_int(1));
    }

    #[test]
    fn delta1_is_surjective() {
        for n in 1..=4 {
            for q in 0..=3 {
                assert_eq!(rank_exact(&delta1_matrix(n, q)), sym_dim(n, q + 2));
            }
        }
    }

    #[test]
    fn delta2_single_column_signs() {
        // n=2, q=0: v1∧v2 ↦ v2⊗x1 − v1⊗x2
        let m = delta2_matrix(2, 0);
        assert_eq!((m.rows(), m.cols()), (4, 1));
        let col: Vec<i64> = (0..4)
            .map(|r| {
                if m.at(r, 0).is_zero() {
                    0
                } else if m.at(r, 0) == &rat_int(1) {
                    1
                } else {
                    -1
                }
            })
            .collect();
        assert_eq!(col, alloc::vec![0, -1, 1, 0]);
    }

    #[test]
    fn koszul_compositions_vanish() {
        for n in 1..=4 {
            for q in 0..=3 {
                let d1 = delta1_matrix(n, q);
                let d2 = delta2_matrix(n, q);
                assert!(d1.mul(&d2).is_zero(), "d1 d2 != 0 at n={n} q={q}");
                let d3 = delta3_matrix(n, q);
                if d3.cols() > 0 {
                    assert!(d2.mul(&d3).is_zero(), "d2 d3 != 0 at n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn delta3_shapes_and_rank() {
        // n=2: no triples at all
        assert_eq!(delta3_matrix(2, 2).cols(), 0);
        // n=3, q=1: C(3,2)·sym_dim(3,1) × C(3,3)·sym_dim(3,0) = 9×1, injective
        let d3 = delta3_matrix(3, 1);
        assert_eq!((d3.rows(), d3.cols()), (9, 1));
        assert_eq!(rank_exact(&d3), 1);
        // Koszul exactness then pins rank δ2 at (3,1): 9 − 1 = 8
        assert_eq!(rank_exact(&delta2_matrix(3, 1)), 8);
    }

    #[test]
    fn complete_perp_cases() {
        let one = Rat::from_integer(1.into());
        // n=4, Kperp = {e1∧e2}: dim K = 5
        let kp = Bivector::from_terms(4, &[(0, 1, one.clone())]).unwrap();
        let spec = PairSpec::from_kperp(4, alloc::vec![kp]).unwrap();
        assert_eq!(spec.dim_k(), 5);

        // K = Λ²V: Kperp = 0
        let full = PairSpec::full(4);
        assert_eq!(full.dim_kperp(), 0);

        // n=4, Kperp = {e1∧e2 + e3∧e4}: K is the 5-dim orthogonal space
        let kp2 =
            Bivector::from_terms(4, &[(0, 1, one.clone()), (2, 3, one.clone())]).unwrap();
        let spec2 = PairSpec::from_kperp(4, alloc::vec![kp2]).unwrap();
        assert_eq!(spec2.dim_k(), 5);
    }

    #[test]
    fn pair_spec_rejects_bad_input() {
        let one = Rat::from_integer(1.into());
        let b = Bivector::from_terms(3, &[(0, 1, one.clone())]).unwrap();
        let dep = alloc::vec![b.clone(), b.clone()];
        assert_eq!(PairSpec::from_k(3, dep).err(), Some(Error::DependentVectors));
        assert!(Bivector::from_terms(3, &[(1, 1, one)]).is_err());
    }

    #[test]
    fn wedge_square_cases() {
        assert_eq!(wedge_square_map(&Mat::identity(3)), Mat::identity(3));
        let row = Mat::from_rows(alloc::vec![alloc::vec![rat_int(1), rat_int(2)]]);
        assert_eq!(wedge_square_map(&row).rows(), 0);
        let diag = Mat::from_rows(alloc::vec![
            alloc::vec![rat_int(2), rat_int(0)],
            alloc::vec![rat_int(0), rat_int(3)],
        ]);
        let w = wedge_square_map(&diag);
        assert_eq!((w.rows(), w.cols()), (1, 1));
        assert_eq!(w.at(0, 0), &rat_int(6));
    }
}

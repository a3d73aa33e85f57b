//! Modular rank fast path with exact certification.
//!
//! Ranks over a random 62-bit prime give a certified lower bound on the
//! rational rank (a nonsingular minor mod p is nonsingular over the
//! rationals). The reverse inequality is what the pipeline certifies:
//!
//! * [`RankMode::Modular`]: two independent primes must agree, with full
//!   exact elimination as the fallback on disagreement;
//! * [`RankMode::Certified`] (the default): additionally verifies a maximal
//!   nonsingular minor found mod p by exact rational elimination;
//! * [`RankMode::Exact`]: fraction-free elimination only, no primes.
//!
//! Primes come from a fixed-seed generator, so identical inputs always see
//! identical primes and results are reproducible run to run.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{rank_exact, Mat, SparseMat};
use crate::rat::Int;

/// Rank computation policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    /// Fraction-free elimination over the integers, always.
    Exact,
    /// Two-prime agreement; exact elimination on disagreement.
    Modular,
    /// Two-prime agreement plus exact verification of a maximal
    /// nonsingular minor; exact elimination on any mismatch.
    Certified,
}

impl Default for RankMode {
    fn default() -> Self {
        RankMode::Certified
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin; the witness set covers all of u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &w in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Fixed-seed stream of 62-bit primes.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    state: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream {
            state: 0x5EED_1E55_0B5E_55ED,
        }
    }

    pub fn next_prime(&mut self) -> u64 {
        loop {
            let c = (splitmix64(&mut self.state) >> 2) | (1 << 61) | 1;
            if is_prime_u64(c) {
                return c;
            }
        }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        PrimeStream::new()
    }
}

fn int_mod(v: &Int, p: u64) -> u64 {
    if let Some(x) = v.to_i64() {
        (x as i128).rem_euclid(p as i128) as u64
    } else {
        v.mod_floor(&Int::from(p)).to_u64().expect("residue fits")
    }
}

/// Entries reduced mod `p`; fails when `p` divides some denominator.
fn reduce_entries(m: &Mat, p: u64) -> Result<Vec<u64>> {
    let mut out = vec![0u64; m.rows() * m.cols()];
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let e = m.at(r, c);
            if e.is_zero() {
                continue;
            }
            let den = int_mod(e.denom(), p);
            if den == 0 {
                return Err(Error::BadPrime(p));
            }
            let num = int_mod(e.numer(), p);
            out[r * m.cols() + c] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    Ok(out)
}

struct ModElim {
    rank: usize,
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
}

fn eliminate_mod(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> ModElim {
    let mut rank = 0usize;
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut original: Vec<usize> = (0..rows).collect();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != rank {
            for j in 0..cols {
                a.swap(pr * cols + j, rank * cols + j);
            }
            original.swap(pr, rank);
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for i in rank + 1..rows {
            let head = a[i * cols + c];
            if head == 0 {
                continue;
            }
            let f = mul_mod(head, inv, p);
            let (upper, lower) = a.split_at_mut(i * cols);
            let src = &upper[rank * cols..rank * cols + cols];
            let dst = &mut lower[..cols];
            for j in c..cols {
                let s = src[j];
                if s != 0 {
                    let sub = mul_mod(f, s, p);
                    dst[j] = if dst[j] >= sub {
                        dst[j] - sub
                    } else {
                        dst[j] + p - sub
                    };
                }
            }
        }
        pivot_rows.push(original[rank]);
        pivot_cols.push(c);
        rank += 1;
    }
    ModElim {
        rank,
        pivot_rows,
        pivot_cols,
    }
}

/// Rank of `m` reduced mod `prime`. Always a lower bound for the rational
/// rank; callers needing exactness go through [`RankOracle`].
pub fn rank_modular(m: &Mat, prime: u64) -> Result<usize> {
    if !is_prime_u64(prime) {
        return Err(Error::BadPrime(prime));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    let a = reduce_entries(m, prime)?;
    Ok(eliminate_mod(a, m.rows(), m.cols(), prime).rank)
}

/// Stateless rank dispatcher for a fixed [`RankMode`].
#[derive(Debug, Clone, Copy, Default)]
pub struct RankOracle {
    pub mode: RankMode,
}

impl RankOracle {
    pub fn new(mode: RankMode) -> Self {
        RankOracle { mode }
    }

    pub fn rank(&self, m: &Mat) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            return 0;
        }
        match self.mode {
            RankMode::Exact => rank_exact(m),
            RankMode::Modular | RankMode::Certified => {
                let mut stream = PrimeStream::new();
                let first = self.first_working(m, &mut stream);
                let second = loop {
                    let p = stream.next_prime();
                    if let Ok(a) = reduce_entries(m, p) {
                        break eliminate_mod(a, m.rows(), m.cols(), p);
                    }
                };
                if first.rank != second.rank {
                    return rank_exact(m);
                }
                if self.mode == RankMode::Certified && first.rank > 0 {
                    let minor = m.submatrix(&first.pivot_rows, &first.pivot_cols);
                    if rank_exact(&minor) != first.rank {
                        return rank_exact(m);
                    }
                }
                first.rank
            }
        }
    }

    fn first_working(&self, m: &Mat, stream: &mut PrimeStream) -> ModElim {
        loop {
            let p = stream.next_prime();
            if let Ok(a) = reduce_entries(m, p) {
                return eliminate_mod(a, m.rows(), m.cols(), p);
            }
        }
    }

    /// Rank of a sparse matrix without densifying in the modular modes.
    pub fn rank_sparse(&self, m: &SparseMat) -> usize {
        if m.rows == 0 || m.cols == 0 {
            return 0;
        }
        match self.mode {
            RankMode::Exact => rank_exact(&m.to_dense()),
            RankMode::Modular | RankMode::Certified => {
                let mut stream = PrimeStream::new();
                let first = loop {
                    let p = stream.next_prime();
                    if let Ok(a) = reduce_sparse(m, p) {
                        break (eliminate_mod(a, m.rows, m.cols, p), p);
                    }
                };
                let second = loop {
                    let p = stream.next_prime();
                    if let Ok(a) = reduce_sparse(m, p) {
                        break eliminate_mod(a, m.rows, m.cols, p);
                    }
                };
                let (first, _) = first;
                if first.rank != second.rank {
                    return rank_exact(&m.to_dense());
                }
                if self.mode == RankMode::Certified && first.rank > 0 {
                    let minor = sparse_minor(m, &first.pivot_rows, &first.pivot_cols);
                    if rank_exact(&minor) != first.rank {
                        return rank_exact(&m.to_dense());
                    }
                }
                first.rank
            }
        }
    }
}

fn reduce_sparse(m: &SparseMat, p: u64) -> Result<Vec<u64>> {
    let mut out = vec![0u64; m.rows * m.cols];
    for (r, c, v) in &m.entries {
        let den = int_mod(v.denom(), p);
        if den == 0 {
            return Err(Error::BadPrime(p));
        }
        let num = int_mod(v.numer(), p);
        let val = mul_mod(num, inv_mod(den, p), p);
        let slot = &mut out[*r as usize * m.cols + *c as usize];
        *slot = (*slot + val) % p;
    }
    Ok(out)
}

fn sparse_minor(m: &SparseMat, rows: &[usize], cols: &[usize]) -> Mat {
    let mut row_pos = alloc::collections::BTreeMap::new();
    for (i, &r) in rows.iter().enumerate() {
        row_pos.insert(r as u32, i);
    }
    let mut col_pos = alloc::collections::BTreeMap::new();
    for (i, &c) in cols.iter().enumerate() {
        col_pos.insert(c as u32, i);
    }
    let mut out = Mat::zeros(rows.len(), cols.len());
    for (r, c, v) in &m.entries {
        if let (Some(&ri), Some(&ci)) = (row_pos.get(r), col_pos.get(c)) {
            out.add_assign_at(ri, ci, v);
        }
    }
    out
}

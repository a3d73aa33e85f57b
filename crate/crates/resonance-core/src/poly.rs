//! Sparse multivariate polynomials with rational coefficients, plus the
//! symbolic matrices (linear-form entries) used for presentations and
//! Fitting minors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use core::fmt;

use num_traits::{One, Zero};

use crate::multilinear::{mono_rank, sym_dim};
use crate::rat::{fmt_rat, Rat};

/// Terms keyed by exponent vector; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        MultiPoly::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(alloc::vec![0; n], c);
        }
        p
    }

    /// The variable x_{i+1} (0-based index).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = alloc::vec![0u32; n];
        e[i] = 1;
        let mut p = MultiPoly::zero(n);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = MultiPoly::zero(n);
        for (e, c) in terms {
            p.add_term(&e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn add_term(&mut self, exps: &[u32], c: &Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.n);
        match self.terms.get_mut(exps) {
            Some(acc) => {
                *acc = &*acc + c;
                if acc.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c.clone());
            }
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, &-c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        let mut e = alloc::vec![0u32; self.n];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                for i in 0..self.n {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(&e, &(ca * cb));
            }
        }
        out
    }

    /// Coordinates in the degree-d monomial basis. The polynomial must be
    /// homogeneous of degree d (or zero).
    pub fn coeff_slice(&self, d: u32) -> Vec<Rat> {
        debug_assert!(self.is_homogeneous(d));
        let mut v = alloc::vec![Rat::zero(); sym_dim(self.n, d as usize)];
        for (e, c) in &self.terms {
            v[mono_rank(e)] = c.clone();
        }
        v
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // print in the same descending-lex order the monomial tables use
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = fmt_mono(e);
            let (sign, mag) = if c < &Rat::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", fmt_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rat(&mag))?;
            }
        }
        Ok(())
    }
}

fn fmt_mono(e: &[u32]) -> String {
    let mut s = String::new();
    for (i, &p) in e.iter().enumerate() {
        if p == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push('x');
        s.push_str(&alloc::format!("{}", i + 1));
        if p > 1 {
            s.push('^');
            s.push_str(&alloc::format!("{p}"));
        }
    }
    s
}

/// Row-major matrix of polynomials.
#[derive(Debug, Clone)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        PolyMat {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(n_vars: usize, rows: usize, cols: usize) -> Self {
        PolyMat {
            rows,
            cols,
            entries: alloc::vec![MultiPoly::zero(n_vars); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: MultiPoly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn col_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.at(r, c).is_zero())
    }

    /// Determinant of the square submatrix on the given rows/columns, by
    /// cofactor expansion along the sparsest row.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        assert_eq!(rows.len(), cols.len());
        let n_vars = self.entries.first().map_or(0, MultiPoly::nvars);
        match rows.len() {
            0 => MultiPoly::one(n_vars),
            1 => self.at(rows[0], cols[0]).clone(),
            _ => {
                let best = rows
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &r)| {
                        (
                            cols.iter().filter(|&&c| !self.at(r, c).is_zero()).count(),
                            r,
                        )
                    })
                    .map(|(i, _)| i)
                    .unwrap();
                let r = rows[best];
                let sub_rows: Vec<usize> = rows
                    .iter()
                    .copied()
                    .filter(|&x| x != r)
                    .collect();
                let mut acc = MultiPoly::zero(n_vars);
                for (ci, &c) in cols.iter().enumerate() {
                    let e = self.at(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols
                        .iter()
                        .copied()
                        .filter(|&x| x != c)
                        .collect();
                    let cofactor = self.minor_det(&sub_rows, &sub_cols);
                    let signed = if (best + ci) % 2 == 0 {
                        e.mul(&cofactor)
                    } else {
                        e.mul(&cofactor).neg()
                    };
                    acc = acc.add(&signed);
                }
                acc
            }
        }
    }

    pub fn det(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols);
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.minor_det(&rows, &cols)
    }
}

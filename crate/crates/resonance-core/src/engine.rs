//! The graded-module engine: dimensions of the graded pieces W_q by two
//! independent routes, Hilbert tables, annihilator degree slices, and
//! Fitting-ideal generators.
//!
//! Route one takes the middle homology of the degree-q complex
//! K⊗Sym^q → V⊗Sym^{q+1} → Sym^{q+2}. Route two takes the cokernel of
//! Λ³V⊗Sym^{q−1} → (Λ²V/K)⊗Sym^q coming from the standard presentation.
//! The two must agree on every input; [`KoszulEngine::hilbert_table`]
//! fails loudly if they ever do not.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis_vectors, Mat, QuotientMap, SparseMat};
use crate::modular::{RankMode, RankOracle};
use crate::multilinear::{
    binom_usize, delta1_sparse, mono_list, mono_rank, pair_list, sym_dim, triple_list, PairSpec,
};
use crate::poly::{MultiPoly, PolyMat};
use crate::rat::Rat;

/// Hard bound on matrix side length: n·sym_dim(n, q+1) entries per
/// dimension. Overridable via the force flag.
const DIM_GUARD: usize = 50_000;

/// Fitting presentations larger than this are refused without force.
const FITTING_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertRow {
    pub q: usize,
    pub dim_homology: usize,
    pub dim_cokernel: usize,
}

/// q ↦ dim W_q table carrying both routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub rows: Vec<HilbertRow>,
}

/// Basis of the degree-d piece of the annihilator ideal.
#[derive(Debug, Clone)]
pub struct IdealSlice {
    pub degree: usize,
    pub basis: Vec<MultiPoly>,
}

#[derive(Debug, Clone)]
pub struct KoszulEngine {
    oracle: RankOracle,
    force: bool,
    ker_delta1: BTreeMap<(usize, usize), usize>,
}

impl KoszulEngine {
    pub fn new(mode: RankMode) -> Self {
        KoszulEngine {
            oracle: RankOracle::new(mode),
            force: false,
            ker_delta1: BTreeMap::new(),
        }
    }

    pub fn with_force(mode: RankMode, force: bool) -> Self {
        KoszulEngine {
            oracle: RankOracle::new(mode),
            force,
            ker_delta1: BTreeMap::new(),
        }
    }

    pub fn mode(&self) -> RankMode {
        self.oracle.mode
    }

    pub fn oracle(&self) -> &RankOracle {
        &self.oracle
    }

    fn guard(&self, n: usize, q: usize) -> Result<()> {
        if self.force {
            return Ok(());
        }
        let side = n * sym_dim(n, q + 1);
        if side > DIM_GUARD {
            return Err(Error::GuardExceeded {
                detail: alloc::format!(
                    "n = {n}, degree = {q} gives matrix side {side} > {DIM_GUARD}"
                ),
            });
        }
        Ok(())
    }

    /// dim ker of the multiplication map V⊗Sym^{q+1} → Sym^{q+2}, cached
    /// because it does not depend on K.
    fn dim_ker_delta1(&mut self, n: usize, q: usize) -> usize {
        if let Some(&v) = self.ker_delta1.get(&(n, q)) {
            return v;
        }
        let d1 = delta1_sparse(n, q);
        let v = d1.cols - self.oracle.rank_sparse(&d1);
        self.ker_delta1.insert((n, q), v);
        v
    }

    /// dim W_q as middle homology: dim ker δ1 minus the rank of δ2
    /// restricted to K⊗Sym^q.
    pub fn wq_dim_homology(&mut self, spec: &PairSpec, q: usize) -> Result<usize> {
        self.guard(spec.n(), q)?;
        let ker1 = self.dim_ker_delta1(spec.n(), q);
        let r2 = self.oracle.rank_sparse(&delta2_restricted(spec, q));
        debug_assert!(r2 <= ker1);
        Ok(ker1 - r2)
    }

    /// dim W_q as the cokernel of the presentation in degree q.
    pub fn wq_dim_cokernel(&mut self, spec: &PairSpec, q: usize) -> Result<usize> {
        self.guard(spec.n(), q)?;
        let n = spec.n();
        let qmap = QuotientMap::new(binom_usize(n, 2), &spec.k_rows());
        let target = qmap.dim() * sym_dim(n, q);
        let m = presentation_piece(spec, &qmap, q);
        Ok(target - self.oracle.rank_sparse(&m))
    }

    /// Both routes for q = 0..q_max; errors out on any disagreement.
    pub fn hilbert_table(&mut self, spec: &PairSpec, q_max: usize) -> Result<HilbertTable> {
        let mut rows = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            let dim_homology = self.wq_dim_homology(spec, q)?;
            let dim_cokernel = self.wq_dim_cokernel(spec, q)?;
            if dim_homology != dim_cokernel {
                return Err(Error::RouteDisagreement {
                    q,
                    homology: dim_homology,
                    cokernel: dim_cokernel,
                });
            }
            rows.push(HilbertRow {
                q,
                dim_homology,
                dim_cokernel,
            });
        }
        Ok(HilbertTable { rows })
    }

    /// Degree-d slice of Ann W(V,K). Since W is generated in degree 0 by
    /// Λ²V/K, a form f annihilates W iff it kills each degree-0 generator,
    /// which is one joint kernel computation over the coefficients of f.
    pub fn annihilator_slice(&mut self, spec: &PairSpec, d: usize) -> Result<IdealSlice> {
        self.guard(spec.n(), d)?;
        let n = spec.n();
        let sd_d = sym_dim(n, d);
        let sd_d1 = sym_dim(n, d + 1);
        let big = n * sd_d1;

        // quotient of V⊗Sym^{d+1} by the image of δ2 on K⊗Sym^d
        let image_cols = delta2_restricted(spec, d).columns();
        let qmap = QuotientMap::new(big, &image_cols);
        let qd = qmap.dim();
        let units: Vec<Vec<Rat>> = (0..big).map(|u| qmap.reduce_unit(u)).collect();

        let pairs = pair_list(n);
        let monos = mono_list(n, d);
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for &(i, j) in &pairs {
            for t in 0..qd {
                let mut row = alloc::vec![Rat::zero(); sd_d];
                let mut nonzero = false;
                for (mi, mono) in monos.iter().enumerate() {
                    let mut bumped = mono.clone();
                    bumped[i] += 1;
                    let ui = j * sd_d1 + mono_rank(&bumped);
                    bumped[i] -= 1;
                    bumped[j] += 1;
                    let uj = i * sd_d1 + mono_rank(&bumped);
                    bumped[j] -= 1;
                    let v = &units[ui][t] - &units[uj][t];
                    if !v.is_zero() {
                        nonzero = true;
                    }
                    row[mi] = v;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let basis = if rows.is_empty() {
            // no conditions: the whole slice annihilates
            mono_list(n, d)
                .into_iter()
                .map(|e| MultiPoly::from_terms(n, [(e, Rat::from_integer(1.into()))]))
                .collect()
        } else {
            kernel_basis_vectors(&Mat::from_rows(rows))
                .into_iter()
                .map(|coeffs| {
                    MultiPoly::from_terms(
                        n,
                        monos
                            .iter()
                            .cloned()
                            .zip(coeffs)
                            .filter(|(_, c)| !c.is_zero()),
                    )
                })
                .collect()
        };
        Ok(IdealSlice { degree: d, basis })
    }

    /// All maximal minors of the linear-entry presentation matrix of W,
    /// omitting zero minors. A zero module has no generators and reports
    /// the unit ideal {1}.
    pub fn fitting_generators(&mut self, spec: &PairSpec) -> Result<Vec<MultiPoly>> {
        let n = spec.n();
        let nn = binom_usize(n, 2);
        let gens = nn - spec.dim_k();
        if gens == 0 {
            return Ok(alloc::vec![MultiPoly::one(n)]);
        }
        let pm = presentation_poly_matrix(spec);
        let relevant: Vec<usize> = (0..pm.cols()).filter(|&c| !pm.col_is_zero(c)).collect();
        if !self.force && (gens > FITTING_GUARD || relevant.len() > FITTING_GUARD) {
            return Err(Error::GuardExceeded {
                detail: alloc::format!(
                    "presentation is {gens} x {} (relevant columns); limit {FITTING_GUARD}",
                    relevant.len()
                ),
            });
        }
        if relevant.len() < gens {
            return Ok(Vec::new());
        }
        let all_rows: Vec<usize> = (0..gens).collect();
        let mut out = Vec::new();
        let mut choice: Vec<usize> = (0..gens).collect();
        loop {
            let cols: Vec<usize> = choice.iter().map(|&i| relevant[i]).collect();
            let det = pm.minor_det(&all_rows, &cols);
            if !det.is_zero() {
                out.push(det);
            }
            if !next_combination(&mut choice, relevant.len()) {
                break;
            }
        }
        Ok(out)
    }
}

/// Advances a sorted index combination in lexicographic order.
fn next_combination(idx: &mut [usize], limit: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < limit - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// δ2 restricted to K⊗Sym^q, in the standard bases.
fn delta2_restricted(spec: &PairSpec, q: usize) -> SparseMat {
    let n = spec.n();
    let sd0 = sym_dim(n, q);
    let sd1 = sym_dim(n, q + 1);
    let pairs = pair_list(n);
    let mut m = SparseMat::new(n * sd1, spec.dim_k() * sd0);
    let monos = mono_list(n, q);
    for (a, kb) in spec.k_basis().iter().enumerate() {
        for (mi, mono) in monos.iter().enumerate() {
            let col = a * sd0 + mi;
            for (pi, &(i, j)) in pairs.iter().enumerate() {
                let c = &kb.coords[pi];
                if c.is_zero() {
                    continue;
                }
                let mut bumped = mono.clone();
                bumped[i] += 1;
                m.push(j * sd1 + mono_rank(&bumped), col, c.clone());
                bumped[i] -= 1;
                bumped[j] += 1;
                m.push(i * sd1 + mono_rank(&bumped), col, -c.clone());
                bumped[j] -= 1;
            }
        }
    }
    m
}

/// Degree-q piece of Λ³V⊗Sym^{q−1} → (Λ²V/K)⊗Sym^q.
fn presentation_piece(spec: &PairSpec, qmap: &QuotientMap, q: usize) -> SparseMat {
    let n = spec.n();
    let qd = qmap.dim();
    let sdq = sym_dim(n, q);
    let triples = triple_list(n);
    if q == 0 || triples.is_empty() {
        return SparseMat::new(qd * sdq, 0);
    }
    let sd_src = sym_dim(n, q - 1);
    let units: Vec<Vec<Rat>> = (0..binom_usize(n, 2))
        .map(|u| qmap.reduce_unit(u))
        .collect();
    let mut m = SparseMat::new(qd * sdq, triples.len() * sd_src);
    let monos = mono_list(n, q - 1);
    for (ti, &(i, j, k)) in triples.iter().enumerate() {
        let terms = [
            (crate::multilinear::pair_rank(n, j, k), i, false),
            (crate::multilinear::pair_rank(n, i, k), j, true),
            (crate::multilinear::pair_rank(n, i, j), k, false),
        ];
        for (mi, mono) in monos.iter().enumerate() {
            let col = ti * sd_src + mi;
            for &(pair, var, negate) in &terms {
                let mut bumped = mono.clone();
                bumped[var] += 1;
                let mr = mono_rank(&bumped);
                for (pos, val) in units[pair].iter().enumerate() {
                    if val.is_zero() {
                        continue;
                    }
                    let v = if negate { -val.clone() } else { val.clone() };
                    m.push(pos * sdq + mr, col, v);
                }
            }
        }
    }
    m
}

/// Presentation matrix with linear-form entries: rows indexed by the
/// canonical basis of Λ²V/K, columns by triples.
fn presentation_poly_matrix(spec: &PairSpec) -> PolyMat {
    let n = spec.n();
    let nn = binom_usize(n, 2);
    let qmap = QuotientMap::new(nn, &spec.k_rows());
    let gens = qmap.dim();
    let units: Vec<Vec<Rat>> = (0..nn).map(|u| qmap.reduce_unit(u)).collect();
    let triples = triple_list(n);
    let mut pm = PolyMat::zeros(n, gens, triples.len());
    for (ti, &(i, j, k)) in triples.iter().enumerate() {
        let terms = [
            (crate::multilinear::pair_rank(n, j, k), i, false),
            (crate::multilinear::pair_rank(n, i, k), j, true),
            (crate::multilinear::pair_rank(n, i, j), k, false),
        ];
        for r in 0..gens {
            let mut entry = MultiPoly::zero(n);
            for &(pair, var, negate) in &terms {
                let c = &units[pair][r];
                if c.is_zero() {
                    continue;
                }
                let coeff = if negate { -c.clone() } else { c.clone() };
                let mut e = alloc::vec![0u32; n];
                e[var] = 1;
                entry.add_term(&e, &coeff);
            }
            pm.set(r, ti, entry);
        }
    }
    pm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::free_koszul_dim;
    use crate::multilinear::Bivector;
    use alloc::string::ToString;
    use alloc::vec;
    use num_traits::ToPrimitive;

    fn engine() -> KoszulEngine {
        KoszulEngine::new(RankMode::Certified)
    }

    fn p4_spec() -> PairSpec {
        crate::raag::graph_to_pairspec(&crate::raag::Graph::path(4))
    }

    #[test]
    fn full_k_kills_everything() {
        let spec = PairSpec::full(4);
        let mut e = engine();
        let t = e.hilbert_table(&spec, 3).unwrap();
        assert!(t.rows.iter().all(|r| r.dim_homology == 0));
    }

    #[test]
    fn free_module_dims() {
        let mut e = engine();
        // n=2, K=0: dim W_q = q+1
        let spec = PairSpec::free(2);
        for q in 0..=4 {
            assert_eq!(e.wq_dim_homology(&spec, q).unwrap(), q + 1);
            assert_eq!(e.wq_dim_cokernel(&spec, q).unwrap(), q + 1);
        }
        // matches (q+1)·C(q+n, q+2) for small n, q
        for n in 2..=4 {
            let spec = PairSpec::free(n);
            for q in 0..=3 {
                let expect = free_koszul_dim(n, q).to_usize().unwrap();
                assert_eq!(e.wq_dim_homology(&spec, q).unwrap(), expect);
            }
        }
    }

    #[test]
    fn cokernel_route_free_cases() {
        let mut e = engine();
        let spec = PairSpec::free(4);
        assert_eq!(e.wq_dim_cokernel(&spec, 0).unwrap(), 6);
        assert_eq!(e.wq_dim_cokernel(&spec, 1).unwrap(), 20);
    }

    #[test]
    fn surface_group_matches_genus_two_chen_values() {
        let spec = PairSpec::surface_group(2).unwrap();
        let mut e = engine();
        assert_eq!(e.wq_dim_homology(&spec, 0).unwrap(), 5);
        assert_eq!(e.wq_dim_homology(&spec, 1).unwrap(), 16);
        assert_eq!(e.wq_dim_homology(&spec, 2).unwrap(), 35);
    }

    #[test]
    fn p4_table_and_annihilator() {
        let spec = p4_spec();
        let mut e = engine();
        let t = e.hilbert_table(&spec, 2).unwrap();
        assert_eq!(t.rows[0].dim_homology, 3);

        let a1 = e.annihilator_slice(&spec, 1).unwrap();
        assert!(a1.basis.is_empty());
        let a2 = e.annihilator_slice(&spec, 2).unwrap();
        assert_eq!(a2.basis.len(), 1);
        assert_eq!(a2.basis[0].to_string(), "x2*x3");
    }

    #[test]
    fn annihilator_of_zero_module_is_unit() {
        let spec = PairSpec::full(4);
        let mut e = engine();
        let a0 = e.annihilator_slice(&spec, 0).unwrap();
        assert_eq!(a0.basis.len(), 1);
        assert_eq!(a0.basis[0].to_string(), "1");
        assert_eq!(e.fitting_generators(&spec).unwrap(), vec![MultiPoly::one(4)]);
    }

    #[test]
    fn p4_fitting_generators() {
        let spec = p4_spec();
        let mut e = engine();
        let gens = e.fitting_generators(&spec).unwrap();
        assert_eq!(gens.len(), 4);
        // up to order and sign: x2x3 · {x1, x2, x3, x4}
        let x: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(4, i)).collect();
        let base = x[1].mul(&x[2]);
        for want in x.iter().map(|v| base.mul(v)) {
            assert!(
                gens.iter().any(|g| g == &want || g == &want.neg()),
                "missing generator {want}"
            );
        }
    }

    #[test]
    fn guard_trips_without_force() {
        // side length 8·sym_dim(8, 8) = 51480 is just over the cap
        let spec = PairSpec::free(8);
        let mut e = engine();
        assert!(matches!(
            e.wq_dim_homology(&spec, 7),
            Err(Error::GuardExceeded { .. })
        ));
        // 15 generators and 20 triple columns exceed the fitting guard
        let spec6 = PairSpec::free(6);
        assert!(matches!(
            e.fitting_generators(&spec6),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn combination_walker_covers_all_subsets() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}

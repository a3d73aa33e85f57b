//! Pointwise resonance membership and the component-level checks:
//! isotropy, separability (by two independent routes), strong isotropy via
//! the multiplication map, projection to component data, decomposition
//! verification, and the degree-window reducedness comparison.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::engine::KoszulEngine;
use crate::error::{Error, Result};
use crate::matrix::{kernel_basis_vectors, rank_exact, Mat, QuotientMap};
use crate::multilinear::{
    binom_usize, mono_list, mono_rank, pair_list, sym_dim, wedge_square_map, Bivector, PairSpec,
};
use crate::rat::Rat;
use crate::subspace::{intersect, is_contained, SubspaceBasis};

/// A candidate linear component of the resonance: a subspace of the dual
/// space, given by an independent coordinate basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceSpec {
    n: usize,
    basis: Vec<Vec<Rat>>,
}

impl SubspaceSpec {
    pub fn new(n: usize, basis: Vec<Vec<Rat>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidInput {
                detail: "a component needs at least one basis vector".into(),
            });
        }
        if basis.iter().any(|v| v.len() != n) {
            return Err(Error::AmbientMismatch {
                left: n,
                right: basis.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0),
            });
        }
        if rank_exact(&Mat::from_rows(basis.clone())) != basis.len() {
            return Err(Error::DependentVectors);
        }
        Ok(SubspaceSpec { n, basis })
    }

    /// Coordinate subspace spanned by {e_i : i in support}, 0-based.
    pub fn coordinate(n: usize, support: &[usize]) -> Result<Self> {
        let basis = support
            .iter()
            .map(|&i| {
                let mut v = alloc::vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect();
        SubspaceSpec::new(n, basis)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// The projection matrix V → component dual's dual, rows = basis.
    fn projection(&self) -> Mat {
        Mat::from_rows(self.basis.clone())
    }
}

#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub subspace: SubspaceSpec,
    pub isotropic: bool,
    pub separable: bool,
    pub strongly_isotropic: bool,
    pub kbar_dim: usize,
    /// A pairwise wedge of basis vectors that escapes K-perp.
    pub non_isotropic_witness: Option<Bivector>,
    /// An element of K-perp ∩ ⟨component⟩ lying outside Λ² of the component.
    pub non_separable_witness: Option<Bivector>,
}

#[derive(Debug, Clone)]
pub struct DecompositionRow {
    pub q: usize,
    pub whole: usize,
    pub sum_of_parts: usize,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub rows: Vec<DecompositionRow>,
    /// Least tested q from which every later tested row agrees.
    pub first_agreement_q: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ReducednessRow {
    pub degree: usize,
    pub annihilator_dim: usize,
    pub intersection_dim: usize,
    pub equal: bool,
}

/// H_a = {b : a ∧ b ∈ K-perp}, the kernel of wedging with `a` followed by
/// projection modulo K-perp. Always contains the line through `a`.
pub fn h_a(spec: &PairSpec, a: &[Rat]) -> Result<SubspaceBasis> {
    let n = spec.n();
    if a.len() != n {
        return Err(Error::AmbientMismatch {
            left: n,
            right: a.len(),
        });
    }
    if a.iter().all(Rat::is_zero) {
        return Err(Error::ZeroVector);
    }
    let qmap = QuotientMap::new(binom_usize(n, 2), &spec.kperp_rows());
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = alloc::vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(qmap.reduce(&Bivector::wedge(a, &e).coords));
    }
    let m = Mat::from_rows(cols).transpose();
    let ker = kernel_basis_vectors(&m);
    SubspaceBasis::new(n, ker)
}

/// Resonance membership test; zero lies in the resonance by convention.
pub fn in_resonance(spec: &PairSpec, a: &[Rat]) -> bool {
    if a.iter().all(Rat::is_zero) {
        return true;
    }
    h_a(spec, a).map(|h| h.dim() > 1).unwrap_or(false)
}

/// Λ² of the component lands inside K-perp. Returns the first failing
/// pairwise wedge as witness.
pub fn check_isotropic_with_witness(
    spec: &PairSpec,
    comp: &SubspaceSpec,
) -> (bool, Option<Bivector>) {
    let n = spec.n();
    let qmap = QuotientMap::new(binom_usize(n, 2), &spec.kperp_rows());
    for (i, u) in comp.basis().iter().enumerate() {
        for v in comp.basis().iter().skip(i + 1) {
            let w = Bivector::wedge(u, v);
            if !qmap.contains(&w.coords) {
                return (false, Some(w));
            }
        }
    }
    (true, None)
}

pub fn check_isotropic(spec: &PairSpec, comp: &SubspaceSpec) -> bool {
    check_isotropic_with_witness(spec, comp).0
}

/// Separability via the exterior-ideal condition:
/// K-perp ∩ (component ∧ dual space) ⊆ Λ²(component).
pub fn check_separable_with_witness(
    spec: &PairSpec,
    comp: &SubspaceSpec,
) -> Result<(bool, Option<Bivector>)> {
    let n = spec.n();
    let nn = binom_usize(n, 2);
    let kperp = SubspaceBasis::from_spanning(nn, &spec.kperp_rows());
    let mut ideal_span: Vec<Vec<Rat>> = Vec::new();
    for c in comp.basis() {
        for j in 0..n {
            let mut e = alloc::vec![Rat::zero(); n];
            e[j] = Rat::one();
            let w = Bivector::wedge(c, &e);
            if !w.is_zero() {
                ideal_span.push(w.coords);
            }
        }
    }
    let ideal2 = SubspaceBasis::from_spanning(nn, &ideal_span);
    let mut lam2_span: Vec<Vec<Rat>> = Vec::new();
    for (i, u) in comp.basis().iter().enumerate() {
        for v in comp.basis().iter().skip(i + 1) {
            lam2_span.push(Bivector::wedge(u, v).coords);
        }
    }
    let lam2 = SubspaceBasis::from_spanning(nn, &lam2_span);
    let meet = intersect(&kperp, &ideal2)?;
    if is_contained(&meet, &lam2)? {
        return Ok((true, None));
    }
    let qmap = QuotientMap::new(nn, lam2.basis());
    let witness = meet
        .basis()
        .iter()
        .find(|v| !qmap.contains(v))
        .map(|v| Bivector {
            n,
            coords: v.clone(),
        });
    Ok((false, witness))
}

pub fn check_separable(spec: &PairSpec, comp: &SubspaceSpec) -> Result<bool> {
    Ok(check_separable_with_witness(spec, comp)?.0)
}

/// Separability through the local route: in a basis adapted to the
/// component, split Λ²V = L ⊕ M ⊕ H and test that the projection
/// p_M : K ∩ (M ⊕ H) → M is surjective. Must agree with
/// [`check_separable`] on every input.
pub fn check_separable_pm(spec: &PairSpec, comp: &SubspaceSpec) -> Result<bool> {
    let n = spec.n();
    let nn = binom_usize(n, 2);
    let m_dim = comp.dim();
    let p = adapted_basis(comp)?;
    let lam2p = wedge_square_map(&p);
    // K in adapted coordinates
    let k_rows: Vec<Vec<Rat>> = spec
        .k_basis()
        .iter()
        .map(|b| lam2p.mul_vec(&b.coords))
        .collect();
    let pairs = pair_list(n);
    let m_idx: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i < m_dim && j >= m_dim)
        .map(|(idx, _)| idx)
        .collect();
    let mh_idx: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(_, j))| j >= m_dim)
        .map(|(idx, _)| idx)
        .collect();
    if m_idx.is_empty() {
        // component is the whole space: M = 0, nothing to hit
        return Ok(true);
    }
    let k_sub = SubspaceBasis::from_spanning(nn, &k_rows);
    let mh_basis: Vec<Vec<Rat>> = mh_idx
        .iter()
        .map(|&idx| {
            let mut v = alloc::vec![Rat::zero(); nn];
            v[idx] = Rat::one();
            v
        })
        .collect();
    let mh = SubspaceBasis::from_spanning(nn, &mh_basis);
    let meet = intersect(&k_sub, &mh)?;
    // project the intersection onto the M coordinates and read off the rank
    let proj_rows: Vec<Vec<Rat>> = meet
        .basis()
        .iter()
        .map(|v| m_idx.iter().map(|&idx| v[idx].clone()).collect())
        .collect();
    if proj_rows.is_empty() {
        return Ok(false);
    }
    Ok(rank_exact(&Mat::from_rows(proj_rows)) == m_idx.len())
}

/// Strong isotropy via injectivity of the multiplication map
/// μ : component ⊗ (dual/component) → K-dual. Non-isotropic components
/// are strongly isotropic in no case, so those return false directly.
pub fn check_strongly_isotropic(spec: &PairSpec, comp: &SubspaceSpec) -> Result<bool> {
    if !check_isotropic(spec, comp) {
        return Ok(false);
    }
    let n = spec.n();
    let m_dim = comp.dim();
    if m_dim == n {
        // U = 0: the map has zero domain
        return Ok(true);
    }
    let p = adapted_basis(comp)?;
    // representatives of a complement of the component in the dual space
    let mut mu = Mat::zeros(spec.dim_k(), m_dim * (n - m_dim));
    for (ci, c) in comp.basis().iter().enumerate() {
        for uj in m_dim..n {
            let w = Bivector::wedge(c, p.row(uj));
            for (a, kb) in spec.k_basis().iter().enumerate() {
                let dot: Rat = w
                    .coords
                    .iter()
                    .zip(&kb.coords)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .map(|(x, y)| x * y)
                    .sum();
                mu.set(a, ci * (n - m_dim) + (uj - m_dim), dot);
            }
        }
    }
    Ok(rank_exact(&mu) == m_dim * (n - m_dim))
}

/// Extends the component basis to a basis of the dual space by standard
/// vectors; rows 0..dim are the component, the rest the completion.
fn adapted_basis(comp: &SubspaceSpec) -> Result<Mat> {
    let n = comp.n();
    let mut rows = comp.basis().to_vec();
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut e = alloc::vec![Rat::zero(); n];
        e[j] = Rat::one();
        rows.push(e);
        if rank_exact(&Mat::from_rows(rows.clone())) != rows.len() {
            rows.pop();
        }
    }
    if rows.len() != n {
        return Err(Error::DependentVectors);
    }
    Ok(Mat::from_rows(rows))
}

/// Projected instance over the component: dim = component dimension and
/// Kbar the image of K under Λ² of the projection dual to the inclusion.
pub fn project_component(spec: &PairSpec, comp: &SubspaceSpec) -> Result<PairSpec> {
    let proj = comp.projection();
    let lam2 = wedge_square_map(&proj);
    let m = comp.dim();
    let images: Vec<Vec<Rat>> = spec
        .k_basis()
        .iter()
        .map(|b| lam2.mul_vec(&b.coords))
        .filter(|v| !v.iter().all(Rat::is_zero))
        .collect();
    let reduced = SubspaceBasis::from_spanning(binom_usize(m, 2), &images);
    let kbar = reduced
        .into_basis()
        .into_iter()
        .map(|coords| Bivector { n: m, coords })
        .collect();
    PairSpec::from_k(m, kbar)
}

/// Per-degree comparison of dim W_q for the whole instance against the sum
/// over the projected components. Components must be separable.
pub fn verify_decomposition(
    engine: &mut KoszulEngine,
    spec: &PairSpec,
    components: &[SubspaceSpec],
    q_max: usize,
) -> Result<DecompositionReport> {
    for (index, comp) in components.iter().enumerate() {
        if !check_separable(spec, comp)? {
            return Err(Error::NonSeparableComponent { index });
        }
    }
    let parts: Vec<PairSpec> = components
        .iter()
        .map(|c| project_component(spec, c))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let whole = engine.wq_dim_homology(spec, q)?;
        let mut sum_of_parts = 0usize;
        for part in &parts {
            sum_of_parts += engine.wq_dim_homology(part, q)?;
        }
        rows.push(DecompositionRow {
            q,
            whole,
            sum_of_parts,
        });
    }
    let mut first_agreement_q = None;
    for row in rows.iter().rev() {
        if row.whole == row.sum_of_parts {
            first_agreement_q = Some(row.q);
        } else {
            break;
        }
    }
    Ok(DecompositionReport {
        rows,
        first_agreement_q,
    })
}

/// Degree-window reducedness check: compares Ann_d with the degree-d slice
/// of the intersection of the components' linear-subspace ideals. The
/// intersection over an empty family is the unit ideal, so the full slice.
pub fn reducedness_window(
    engine: &mut KoszulEngine,
    spec: &PairSpec,
    components: &[SubspaceSpec],
    degrees: core::ops::RangeInclusive<usize>,
) -> Result<Vec<ReducednessRow>> {
    let n = spec.n();
    // linear forms cutting out each component: the kernel of its projection
    let cutters: Vec<Vec<Vec<Rat>>> = components
        .iter()
        .map(|c| kernel_basis_vectors(&c.projection()))
        .collect();
    let mut out = Vec::new();
    for d in degrees {
        let slice = engine.annihilator_slice(spec, d)?;
        let sd = sym_dim(n, d);
        let ann = SubspaceBasis::from_spanning(
            sd,
            &slice
                .basis
                .iter()
                .map(|p| p.coeff_slice(d as u32))
                .collect::<Vec<_>>(),
        );
        let full: Vec<Vec<Rat>> = (0..sd)
            .map(|i| {
                let mut v = alloc::vec![Rat::zero(); sd];
                v[i] = Rat::one();
                v
            })
            .collect();
        let mut meet = SubspaceBasis::from_spanning(sd, &full);
        for cutter in &cutters {
            let ideal_slice = linear_ideal_slice(n, d, cutter);
            meet = intersect(&meet, &ideal_slice)?;
        }
        let equal = ann.dim() == meet.dim() && is_contained(&ann, &meet)?;
        out.push(ReducednessRow {
            degree: d,
            annihilator_dim: ann.dim(),
            intersection_dim: meet.dim(),
            equal,
        });
    }
    Ok(out)
}

/// Degree-d slice of the ideal generated by the given linear forms.
fn linear_ideal_slice(n: usize, d: usize, forms: &[Vec<Rat>]) -> SubspaceBasis {
    let sd = sym_dim(n, d);
    if d == 0 {
        return SubspaceBasis::zero(sd);
    }
    let mut span: Vec<Vec<Rat>> = Vec::new();
    for mono in mono_list(n, d - 1) {
        for form in forms {
            let mut v = alloc::vec![Rat::zero(); sd];
            let mut bumped = mono.clone();
            for (i, c) in form.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                bumped[i] += 1;
                v[mono_rank(&bumped)] = c.clone();
                bumped[i] -= 1;
            }
            span.push(v);
        }
    }
    SubspaceBasis::from_spanning(sd, &span)
}

/// Aggregated per-component report.
pub fn component_report(spec: &PairSpec, comp: &SubspaceSpec) -> Result<ComponentReport> {
    let (isotropic, non_isotropic_witness) = check_isotropic_with_witness(spec, comp);
    let (separable, non_separable_witness) = check_separable_with_witness(spec, comp)?;
    let strongly_isotropic = check_strongly_isotropic(spec, comp)?;
    let kbar_dim = project_component(spec, comp)?.dim_k();
    Ok(ComponentReport {
        subspace: comp.clone(),
        isotropic,
        separable,
        strongly_isotropic,
        kbar_dim,
        non_isotropic_witness,
        non_separable_witness,
    })
}

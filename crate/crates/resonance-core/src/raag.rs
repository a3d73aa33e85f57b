//! Graph layer for right-angled Artin groups: monomial K from a graph,
//! combinatorial resonance components, the join/discreteness criteria, the
//! Theta presentation matrix, and cross-checks against the generic engine.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::One;

use crate::engine::KoszulEngine;
use crate::error::{Error, Result};
use crate::matrix::SparseMat;
use crate::multilinear::{mono_list, mono_rank, sym_dim, Bivector, PairSpec};
use crate::poly::{MultiPoly, PolyMat};
use crate::rat::Rat;

/// Exhaustive component enumeration is capped at this many vertices.
const ENUM_GUARD: usize = 20;

/// Simple undirected graph on vertices 1..=n, edges stored as (i, j), i<j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == 0 || j == 0 || i >= j || j > n {
                return Err(Error::InvalidInput {
                    detail: alloc::format!("edge ({i}, {j}) invalid for n = {n}"),
                });
            }
            set.insert((i, j));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn discrete(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.insert((i, j));
            }
        }
        Graph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Graph {
            n,
            edges: (1..n).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: BTreeSet<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.insert((1, n));
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&(i, j))
    }

    /// Non-edges in ascending lex order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if !self.edges.contains(&(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Triples spanning at least one non-edge, ascending lex.
    pub fn non_triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                for k in j + 1..=self.n {
                    if !(self.has_edge(i, j) && self.has_edge(i, k) && self.has_edge(j, k)) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Connectivity of the induced subgraph on `verts` (1-based).
    /// Subgraphs on fewer than two vertices count as connected.
    pub fn induced_is_connected(&self, verts: &[usize]) -> bool {
        if verts.len() <= 1 {
            return true;
        }
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![verts[0]];
        seen.insert(verts[0]);
        while let Some(v) = stack.pop() {
            for &w in verts {
                if !seen.contains(&w) && self.has_edge(v, w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == verts.len()
    }

    /// True when every vertex of `inside` is adjacent to every vertex
    /// outside it, i.e. the graph is the join of `inside` and its
    /// complement.
    pub fn is_join_over(&self, inside: &[usize]) -> bool {
        let inside_set: BTreeSet<usize> = inside.iter().copied().collect();
        for v in 1..=self.n {
            if inside_set.contains(&v) {
                continue;
            }
            for &u in inside {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Maximal vertex subsets inducing a disconnected full subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaagComponents {
    pub components: Vec<Vec<usize>>,
}

/// Monomial instance of a graph: K spanned by the edge bivectors and
/// K-perp by the non-edge ones.
pub fn graph_to_pairspec(g: &Graph) -> PairSpec {
    let n = g.n();
    let one = Rat::one();
    let k = g
        .edges()
        .map(|(i, j)| Bivector::from_terms(n, &[(i - 1, j - 1, one.clone())]).unwrap())
        .collect();
    let kperp = g
        .non_edges()
        .into_iter()
        .map(|(i, j)| Bivector::from_terms(n, &[(i - 1, j - 1, one.clone())]).unwrap())
        .collect();
    PairSpec::new(n, k, kperp).expect("monomial bases are orthogonal by construction")
}

/// Exhaustive scan over vertex subsets, largest first; subsets contained
/// in an already-found component are skipped, so everything kept is
/// maximal.
pub fn resonance_components(g: &Graph) -> Result<RaagComponents> {
    let n = g.n();
    if n > ENUM_GUARD {
        return Err(Error::GuardExceeded {
            detail: alloc::format!("component enumeration needs n <= {ENUM_GUARD}, got {n}"),
        });
    }
    let mut masks_by_size: Vec<Vec<u32>> = alloc::vec![Vec::new(); n + 1];
    for mask in 1u32..(1u32 << n) {
        masks_by_size[mask.count_ones() as usize].push(mask);
    }
    let mut found_masks: Vec<u32> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for size in (2..=n).rev() {
        for &mask in &masks_by_size[size] {
            if found_masks.iter().any(|&f| f & mask == mask) {
                continue;
            }
            let verts: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            if !g.induced_is_connected(&verts) {
                found_masks.push(mask);
                components.push(verts);
            }
        }
    }
    components.sort();
    Ok(RaagComponents { components })
}

fn validate_component(g: &Graph, subset: &[usize]) -> Result<()> {
    let sorted: Vec<usize> = {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.into_iter().collect()
    };
    if sorted.len() != subset.len() || sorted.iter().any(|&v| v == 0 || v > g.n()) {
        return Err(Error::InvalidInput {
            detail: alloc::format!("bad vertex subset {subset:?}"),
        });
    }
    if g.induced_is_connected(&sorted) {
        return Err(Error::NotMaximallyDisconnected {
            subset: sorted.clone(),
        });
    }
    for v in 1..=g.n() {
        if sorted.contains(&v) {
            continue;
        }
        let mut extended = sorted.clone();
        extended.push(v);
        extended.sort_unstable();
        if !g.induced_is_connected(&extended) {
            return Err(Error::NotMaximallyDisconnected { subset: sorted });
        }
    }
    Ok(())
}

/// A component is isotropic iff its induced subgraph is discrete.
pub fn component_is_isotropic(g: &Graph, subset: &[usize]) -> Result<bool> {
    validate_component(g, subset)?;
    for (a, &i) in subset.iter().enumerate() {
        for &j in subset.iter().skip(a + 1) {
            if g.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A component is separable iff the graph is the join of the component
/// and its complement.
pub fn component_is_separable(g: &Graph, subset: &[usize]) -> Result<bool> {
    validate_component(g, subset)?;
    Ok(g.is_join_over(subset))
}

/// The presentation matrix of the graph Koszul module, printed the way the
/// graph literature does: rows indexed by triangles with a missing edge,
/// columns by non-edges, entry x_k / −x_j / x_i when the column pair is
/// (i,j) / (i,k) / (j,k) inside the row triple (i,j,k), else 0.
pub fn theta_matrix(g: &Graph) -> PolyMat {
    let n = g.n();
    let rows = g.non_triangles();
    let cols = g.non_edges();
    let mut pm = PolyMat::zeros(n, rows.len(), cols.len());
    for (ri, &(i, j, k)) in rows.iter().enumerate() {
        for (ci, &(l, m)) in cols.iter().enumerate() {
            let entry = if (l, m) == (i, j) {
                MultiPoly::var(n, k - 1)
            } else if (l, m) == (i, k) {
                MultiPoly::var(n, j - 1).neg()
            } else if (l, m) == (j, k) {
                MultiPoly::var(n, i - 1)
            } else {
                continue;
            };
            pm.set(ri, ci, entry);
        }
    }
    pm
}

/// Cokernel dimension of the degree-q graded piece of Theta, i.e. of
/// Span(non-triangles)⊗Sym^{q−1} → Span(non-edges)⊗Sym^q.
pub fn theta_coker_dim(engine: &KoszulEngine, g: &Graph, q: usize) -> usize {
    let n = g.n();
    let non_edges = g.non_edges();
    let non_triangles = g.non_triangles();
    let sdq = sym_dim(n, q);
    let target = non_edges.len() * sdq;
    if q == 0 || non_triangles.is_empty() {
        return target;
    }
    let sd_src = sym_dim(n, q - 1);
    let mut m = SparseMat::new(target, non_triangles.len() * sd_src);
    let one = Rat::one();
    let col_of = |l: usize, mm: usize| non_edges.iter().position(|&p| p == (l, mm));
    let monos = mono_list(n, q - 1);
    for (ti, &(i, j, k)) in non_triangles.iter().enumerate() {
        let terms = [
            ((i, j), k, false),
            ((i, k), j, true),
            ((j, k), i, false),
        ];
        for (mi, mono) in monos.iter().enumerate() {
            let col = ti * sd_src + mi;
            for &((l, mm), var, negate) in &terms {
                let Some(row_block) = col_of(l, mm) else { continue };
                let mut bumped = mono.clone();
                bumped[var - 1] += 1;
                let row = row_block * sdq + mono_rank(&bumped);
                m.push(row, col, if negate { -one.clone() } else { one.clone() });
            }
        }
    }
    target - engine.oracle().rank_sparse(&m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaagCrosscheckRow {
    pub q: usize,
    pub theta_coker: usize,
    pub engine_dim: usize,
}

/// Per-degree comparison of the Theta cokernel against the generic engine
/// on the translated instance; disagreement is an internal bug.
pub fn raag_crosscheck(
    engine: &mut KoszulEngine,
    g: &Graph,
    q_max: usize,
) -> Result<Vec<RaagCrosscheckRow>> {
    let spec = graph_to_pairspec(g);
    let mut out = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let theta_coker = theta_coker_dim(engine, g, q);
        let engine_dim = engine.wq_dim_homology(&spec, q)?;
        if theta_coker != engine_dim {
            return Err(Error::RouteDisagreement {
                q,
                homology: engine_dim,
                cokernel: theta_coker,
            });
        }
        out.push(RaagCrosscheckRow {
            q,
            theta_coker,
            engine_dim,
        });
    }
    Ok(out)
}

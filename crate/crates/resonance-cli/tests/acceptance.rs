//! Acceptance suite. Each test covers one criterion at its stated
//! tolerance (exact equality throughout) and prints one pass/fail line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resonance_core::closed_forms::{
    chen_rank_kodaira, chen_rank_surface, free_koszul_dim, grassmannian_degree_identity,
    porteous_coefficient, subpencil_count,
};
use resonance_core::engine::KoszulEngine;
use resonance_core::modular::RankMode;
use resonance_core::multilinear::{binom_usize, sym_dim, Bivector, PairSpec};
use resonance_core::poly::MultiPoly;
use resonance_core::raag::{
    component_is_isotropic, component_is_separable, graph_to_pairspec, resonance_components,
    theta_coker_dim, Graph,
};
use resonance_core::rat::{rat_int, Int, One, Rat, Zero};
use resonance_core::resonance::{
    check_isotropic, check_separable, check_separable_pm, check_strongly_isotropic, in_resonance,
    project_component, reducedness_window, verify_decomposition, SubspaceSpec,
};
use resonance_core::subspace::{intersect, is_contained, SubspaceBasis};

/// Prints the pass/fail line even when an assert unwinds.
struct Criterion {
    name: &'static str,
    passed: bool,
}

impl Criterion {
    fn start(name: &'static str) -> Self {
        Criterion {
            name,
            passed: false,
        }
    }

    fn pass(mut self) {
        self.passed = true;
        println!("criterion {}: PASS", self.name);
    }
}

impl Drop for Criterion {
    fn drop(&mut self) {
        if !self.passed {
            println!("criterion {}: FAIL", self.name);
        }
    }
}

fn slice_space(n: usize, d: usize, polys: &[MultiPoly]) -> SubspaceBasis {
    let rows: Vec<Vec<Rat>> = polys.iter().map(|p| p.coeff_slice(d as u32)).collect();
    SubspaceBasis::from_spanning(sym_dim(n, d), &rows)
}

fn spaces_equal(a: &SubspaceBasis, b: &SubspaceBasis) -> bool {
    a.dim() == b.dim() && is_contained(a, b).unwrap()
}

/// Degree-d slice of the ideal generated by the given polynomials.
fn generated_slice(n: usize, d: usize, gens: &[MultiPoly]) -> SubspaceBasis {
    let mut span = Vec::new();
    for g in gens {
        let gd = g.degree().unwrap_or(0) as usize;
        if gd > d {
            continue;
        }
        for mono in resonance_core::multilinear::mono_list(n, d - gd) {
            let m = MultiPoly::from_terms(n, [(mono, Rat::one())]);
            span.push(g.mul(&m));
        }
    }
    slice_space(n, d, &span)
}

#[test]
fn criterion_1_p4_golden() {
    let c = Criterion::start("1 (P4 golden test)");
    let started = Instant::now();

    let g = Graph::path(4);
    let comps = resonance_components(&g).unwrap();
    // {x3 = 0} is the coordinate space on vertices {1,2,4}, {x2 = 0} on {1,3,4}
    assert_eq!(comps.components, vec![vec![1, 2, 4], vec![1, 3, 4]]);
    let spec = graph_to_pairspec(&g);
    for comp in &comps.components {
        assert!(!component_is_isotropic(&g, comp).unwrap());
        assert!(!component_is_separable(&g, comp).unwrap());
        let zero_based: Vec<usize> = comp.iter().map(|v| v - 1).collect();
        let sub = SubspaceSpec::coordinate(4, &zero_based).unwrap();
        assert!(!check_isotropic(&spec, &sub));
        assert!(!check_separable(&spec, &sub).unwrap());
        assert!(!check_separable_pm(&spec, &sub).unwrap());
    }

    let mut engine = KoszulEngine::new(RankMode::Certified);
    let a1 = engine.annihilator_slice(&spec, 1).unwrap();
    assert!(a1.basis.is_empty());
    let a2 = engine.annihilator_slice(&spec, 2).unwrap();
    let x: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(4, i)).collect();
    assert_eq!(a2.basis, vec![x[1].mul(&x[2])]);

    // Fitting generators span the degree-3 slice of (x2) ∩ (x3) ∩ (x1, x2², x3², x4)
    let gens = engine.fitting_generators(&spec).unwrap();
    let fit3 = generated_slice(4, 3, &gens);
    let i_x2 = generated_slice(4, 3, &[x[1].clone()]);
    let i_x3 = generated_slice(4, 3, &[x[2].clone()]);
    let i_mix = generated_slice(
        4,
        3,
        &[
            x[0].clone(),
            x[1].mul(&x[1]),
            x[2].mul(&x[2]),
            x[3].clone(),
        ],
    );
    let expected = intersect(&intersect(&i_x2, &i_x3).unwrap(), &i_mix).unwrap();
    assert!(spaces_equal(&fit3, &expected));
    // which is also the degree-3 slice of x2x3·(x1,x2,x3,x4)
    let alt = generated_slice(4, 3, &[x[1].mul(&x[2])]);
    let lin3: Vec<MultiPoly> = x.iter().map(|v| x[1].mul(&x[2]).mul(v)).collect();
    assert!(spaces_equal(&slice_space(4, 3, &lin3), &alt));
    assert!(spaces_equal(&fit3, &alt));

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "P4 golden took {elapsed:?}, budget 1 s"
    );
    c.pass();
}

#[test]
fn criterion_2_surface_group_hilbert() {
    let c = Criterion::start("2 (surface-group Hilbert, g = 2, 3)");
    // g = 2 under the default certified mode
    let mut engine = KoszulEngine::new(RankMode::Certified);
    let g2 = PairSpec::surface_group(2).unwrap();
    for q in 0..=5usize {
        let want = chen_rank_surface(2, q as u64 + 2).unwrap();
        let got = Int::from(engine.wq_dim_homology(&g2, q).unwrap() as u64);
        assert_eq!(got, want, "g=2, q={q}");
    }
    // g = 3 in modular mode within the stated budget
    let started = Instant::now();
    let mut engine = KoszulEngine::new(RankMode::Modular);
    let g3 = PairSpec::surface_group(3).unwrap();
    for q in 0..=5usize {
        let want = chen_rank_surface(3, q as u64 + 2).unwrap();
        let got = Int::from(engine.wq_dim_homology(&g3, q).unwrap() as u64);
        assert_eq!(got, want, "g=3, q={q}");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "g=3 sweep took {elapsed:?}, budget 60 s"
    );
    c.pass();
}

#[test]
fn criterion_3_strong_isotropy_decomposition() {
    let c = Criterion::start("3 (strong-isotropy decomposition, C4 and join of discrete 3 and 2)");
    let mut engine = KoszulEngine::new(RankMode::Modular);

    // C4 = join of two discrete pairs: components {1,3} and {2,4}, q up to 8
    let c4 = graph_to_pairspec(&Graph::cycle(4));
    let comps = vec![
        SubspaceSpec::coordinate(4, &[0, 2]).unwrap(),
        SubspaceSpec::coordinate(4, &[1, 3]).unwrap(),
    ];
    let rep = verify_decomposition(&mut engine, &c4, &comps, 8).unwrap();
    assert!(rep.first_agreement_q.is_some_and(|q| q <= 3));
    for row in &rep.rows {
        if row.q >= rep.first_agreement_q.unwrap() {
            let expect: u64 = comps
                .iter()
                .map(|comp| u64::try_from(free_koszul_dim(comp.dim(), row.q)).unwrap())
                .sum();
            assert_eq!(row.whole as u64, expect, "C4 at q={}", row.q);
            assert_eq!(row.sum_of_parts as u64, expect);
        }
    }

    // the complete bipartite join of discrete graphs on 3 and 2 vertices
    let k32 = graph_to_pairspec(
        &Graph::new(5, [(1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)]).unwrap(),
    );
    let comps = vec![
        SubspaceSpec::coordinate(5, &[0, 1, 2]).unwrap(),
        SubspaceSpec::coordinate(5, &[3, 4]).unwrap(),
    ];
    let rep = verify_decomposition(&mut engine, &k32, &comps, 6).unwrap();
    assert!(rep.first_agreement_q.is_some_and(|q| q <= 3));
    for row in &rep.rows {
        if row.q >= rep.first_agreement_q.unwrap() {
            let expect: u64 = comps
                .iter()
                .map(|comp| {
                    u64::try_from(free_koszul_dim(comp.dim(), row.q)).unwrap()
                })
                .sum();
            assert_eq!(row.whole as u64, expect, "join at q={}", row.q);
        }
    }
    c.pass();
}

fn ccml_spec() -> PairSpec {
    // basis order e1, e1bar, e2, e2bar, e3, e3bar
    let one = Rat::one();
    let kperp = vec![
        Bivector::from_terms(6, &[(0, 2, one.clone())]).unwrap(),
        Bivector::from_terms(6, &[(1, 3, one.clone())]).unwrap(),
        Bivector::from_terms(6, &[(0, 3, one.clone())]).unwrap(),
        Bivector::from_terms(6, &[(1, 2, one.clone())]).unwrap(),
        Bivector::from_terms(6, &[(0, 1, one.clone()), (2, 3, -one.clone())]).unwrap(),
    ];
    PairSpec::from_kperp(6, kperp).unwrap()
}

#[test]
fn criterion_4_ccml() {
    let c = Criterion::start("4 (CCML surface)");
    let spec = ccml_spec();
    let comp = SubspaceSpec::coordinate(6, &[0, 1, 2, 3]).unwrap();
    assert!(!check_isotropic(&spec, &comp));
    assert!(check_separable(&spec, &comp).unwrap());
    let projected = project_component(&spec, &comp).unwrap();
    assert_eq!(projected.dim_k(), 1);

    let mut engine = KoszulEngine::new(RankMode::Modular);
    let rep = verify_decomposition(&mut engine, &spec, &[comp], 4).unwrap();
    let q0 = rep.first_agreement_q.expect("window must close");
    assert!(q0 <= 4);
    // the projected side carries the genus-2 surface values
    for row in &rep.rows {
        let want = chen_rank_surface(2, row.q as u64 + 2).unwrap();
        assert_eq!(Int::from(row.sum_of_parts as u64), want, "rhs at q={}", row.q);
        if row.q >= q0 {
            assert_eq!(row.whole, row.sum_of_parts, "agreement at q={}", row.q);
        }
    }
    c.pass();
}

fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> PairSpec {
    let nn = binom_usize(n, 2);
    let dim_k = rng.gen_range(0..=nn);
    loop {
        let rows: Vec<Bivector> = (0..dim_k)
            .map(|_| Bivector {
                n,
                coords: (0..nn).map(|_| rat_int(rng.gen_range(-3..=3))).collect(),
            })
            .collect();
        if let Ok(spec) = PairSpec::from_k(n, rows) {
            return spec;
        }
    }
}

fn random_component(rng: &mut ChaCha8Rng, n: usize) -> SubspaceSpec {
    loop {
        let dim = rng.gen_range(1..=n);
        let basis: Vec<Vec<Rat>> = (0..dim)
            .map(|_| (0..n).map(|_| rat_int(rng.gen_range(-2..=2))).collect())
            .collect();
        if let Ok(comp) = SubspaceSpec::new(n, basis) {
            return comp;
        }
    }
}

#[test]
fn criterion_5_two_route_agreement_suites() {
    let c = Criterion::start("5 (two-route agreement suites)");
    // (a) dim W_q by homology and by cokernel on 200 random instances
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE57);
    let mut engine = KoszulEngine::new(RankMode::Modular);
    for trial in 0..200 {
        let n = rng.gen_range(2..=5);
        let spec = random_spec(&mut rng, n);
        let q_max = if n >= 5 { 3 } else { 4 };
        for q in 0..=q_max {
            let h = engine.wq_dim_homology(&spec, q).unwrap();
            let k = engine.wq_dim_cokernel(&spec, q).unwrap();
            assert_eq!(h, k, "trial {trial}, n={n}, q={q}");
        }
    }
    // plus the golden instances
    for spec in [
        graph_to_pairspec(&Graph::path(4)),
        graph_to_pairspec(&Graph::cycle(4)),
        graph_to_pairspec(&Graph::complete(5)),
        PairSpec::surface_group(2).unwrap(),
        ccml_spec(),
        PairSpec::free(3),
        PairSpec::full(4),
    ] {
        engine.hilbert_table(&spec, 4).unwrap();
    }

    // (b), (c): separability by both routes, strong isotropy as conjunction
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E9A);
    for trial in 0..200 {
        let n = rng.gen_range(2..=6);
        let spec = random_spec(&mut rng, n);
        let comp = random_component(&mut rng, n);
        let sep = check_separable(&spec, &comp).unwrap();
        let sep_pm = check_separable_pm(&spec, &comp).unwrap();
        assert_eq!(sep, sep_pm, "separability split at trial {trial}");
        let iso = check_isotropic(&spec, &comp);
        let strong = check_strongly_isotropic(&spec, &comp).unwrap();
        assert_eq!(strong, iso && sep, "strong isotropy split at trial {trial}");
    }
    c.pass();
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn support_point(n: usize, verts: &[usize]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    for &i in verts {
        v[i - 1] = Rat::one();
    }
    v
}

fn components_via_resonance(g: &Graph, spec: &PairSpec) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut resonant: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        if in_resonance(spec, &support_point(n, &verts)) {
            resonant.push(mask);
        }
    }
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for &m in &resonant {
        if resonant.iter().any(|&o| o != m && o & m == m) {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect();
        if verts.len() >= 2 {
            maximal.push(verts);
        }
    }
    maximal.sort();
    maximal
}

#[test]
fn criterion_6_raag_exhaustive() {
    let c = Criterion::start("6 (RAAG exhaustive suite, n <= 5)");
    let started = Instant::now();
    let mut engine = KoszulEngine::new(RankMode::Modular);
    for n in 1..=5usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0u32..(1 << pairs) {
            let g = graph_from_mask(n, mask);
            let spec = graph_to_pairspec(&g);
            let comps = resonance_components(&g).unwrap();
            assert_eq!(
                comps.components,
                components_via_resonance(&g, &spec),
                "components split on n={n}, mask={mask}"
            );
            for comp in &comps.components {
                let zero_based: Vec<usize> = comp.iter().map(|v| v - 1).collect();
                let sub = SubspaceSpec::coordinate(n, &zero_based).unwrap();
                assert_eq!(
                    component_is_isotropic(&g, comp).unwrap(),
                    check_isotropic(&spec, &sub),
                    "isotropy split on n={n}, mask={mask}, comp={comp:?}"
                );
                assert_eq!(
                    component_is_separable(&g, comp).unwrap(),
                    check_separable(&spec, &sub).unwrap(),
                    "separability split on n={n}, mask={mask}, comp={comp:?}"
                );
            }
            for q in 0..=3usize {
                let theta = theta_coker_dim(&engine, &g, q);
                let via_engine = engine.wq_dim_homology(&spec, q).unwrap();
                assert_eq!(theta, via_engine, "theta split on n={n}, mask={mask}, q={q}");
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 600.0,
        "exhaustive suite took {elapsed:?}, budget 10 min"
    );
    c.pass();
}

#[test]
fn criterion_7_enumerative_identities() {
    let c = Criterion::start("7 (enumerative identities)");
    let started = Instant::now();
    for g in 1..=30u64 {
        let (lhs, rhs, equal) = grassmannian_degree_identity(g).unwrap();
        assert!(equal, "Grassmannian degree split at g={g}: {lhs} vs {rhs}");
        assert_eq!(
            subpencil_count(g, g + 1).unwrap(),
            Int::from(2u32).pow(g as u32),
            "maximal subpencil count at g={g}"
        );
    }
    for g in 1..=10u64 {
        let lo = (g + 3) / 2;
        for a in lo..=g + 1 {
            let class = porteous_coefficient(g, a, 3 * g + 1).unwrap();
            assert_eq!(
                class.point_count.unwrap(),
                subpencil_count(g, a).unwrap(),
                "Porteous split at g={g}, a={a}"
            );
        }
    }
    for b1 in 2..=6u64 {
        for b2 in 2..=6u64 {
            for q in 3..=10u64 {
                let lhs = chen_rank_kodaira(b1, b2, q).unwrap();
                let rhs = chen_rank_surface(b1, q).unwrap() + chen_rank_surface(b2, q).unwrap();
                assert_eq!(lhs, rhs, "Kodaira additivity split at ({b1}, {b2}, {q})");
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "identity sweep took {elapsed:?}, budget 5 s"
    );
    c.pass();
}

#[test]
fn criterion_8_reducedness_window() {
    let c = Criterion::start("8 (reducedness window, C4 and P4)");
    let mut engine = KoszulEngine::new(RankMode::Certified);

    let c4 = graph_to_pairspec(&Graph::cycle(4));
    let comps = vec![
        SubspaceSpec::coordinate(4, &[0, 2]).unwrap(),
        SubspaceSpec::coordinate(4, &[1, 3]).unwrap(),
    ];
    for row in reducedness_window(&mut engine, &c4, &comps, 1..=3).unwrap() {
        assert!(row.equal, "C4 window open at degree {}", row.degree);
    }

    let p4 = graph_to_pairspec(&Graph::path(4));
    let comps = vec![
        SubspaceSpec::coordinate(4, &[0, 2, 3]).unwrap(),
        SubspaceSpec::coordinate(4, &[0, 1, 3]).unwrap(),
    ];
    for row in reducedness_window(&mut engine, &p4, &comps, 1..=3).unwrap() {
        assert!(row.equal, "P4 window open at degree {}", row.degree);
    }
    c.pass();
}

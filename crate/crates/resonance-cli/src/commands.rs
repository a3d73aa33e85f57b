//! Subcommand implementations. Independent sub-computations (per degree,
//! per genus) fan out across the worker pool; rendering order is fixed by
//! input order, never completion order.

use rayon::prelude::*;

use resonance_core::closed_forms::{
    chen_rank_kodaira, chen_rank_surface, grassmannian_degree_identity, porteous_coefficient,
    subpencil_count,
};
use resonance_core::engine::KoszulEngine;
use resonance_core::modular::RankMode;
use resonance_core::raag::{
    component_is_isotropic, component_is_separable, graph_to_pairspec, resonance_components,
    theta_coker_dim,
};
use resonance_core::rat::{fmt_rat, Int, Zero};
use resonance_core::resonance::{
    check_isotropic, check_separable, component_report, in_resonance, reducedness_window,
    SubspaceSpec,
};
use resonance_core::Error;

use crate::failure::Failure;
use crate::instance::{load_graph, load_instance, parse_component_arg, Instance};
use crate::report::{Report, Section};

pub struct RunCtx<'a> {
    pub mode: RankMode,
    pub force: bool,
    pub validate: bool,
    pub pool: &'a rayon::ThreadPool,
}

impl RunCtx<'_> {
    fn engine(&self) -> KoszulEngine {
        KoszulEngine::with_force(self.mode, self.force)
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            RankMode::Exact => "exact",
            RankMode::Modular => "modular",
            RankMode::Certified => "certified",
        }
    }
}

/// Desk-scale degree caps: q <= 8 up to dimension 4, q <= 6 up to
/// dimension 6; beyond that only the engine-side entry bound applies.
fn cli_degree_guard(n: usize, deg: usize, force: bool) -> Result<(), Failure> {
    if force {
        return Ok(());
    }
    let cap = if n <= 4 {
        8
    } else if n <= 6 {
        6
    } else {
        usize::MAX
    };
    if deg > cap {
        return Err(Failure::Guard(format!(
            "degree {deg} exceeds the default cap {cap} for dimension {n}; rerun with --force"
        )));
    }
    Ok(())
}

fn instance_meta(report: &mut Report, path: &str, inst: &Instance, ctx: &RunCtx) {
    report.meta("input", path);
    report.meta("digest", &inst.digest);
    report.meta("given", inst.given_side);
    report.meta("dim", inst.spec.n());
    report.meta("dim K", inst.spec.dim_k());
    report.meta("dim Kperp", inst.spec.dim_kperp());
    report.meta("mode", ctx.mode_name());
}

fn validate_components(inst: &Instance) -> Result<(), Failure> {
    for (idx, comp) in inst.components.iter().enumerate() {
        for v in comp.basis() {
            if !in_resonance(&inst.spec, v) {
                return Err(Failure::parse(format!(
                    "component #{idx} has a basis vector outside the resonance"
                )));
            }
        }
    }
    Ok(())
}

pub fn cmd_hilbert(ctx: &RunCtx, input: &str, qmax: usize) -> Result<Report, Failure> {
    let inst = load_instance(input)?;
    if ctx.validate {
        validate_components(&inst)?;
    }
    cli_degree_guard(inst.spec.n(), qmax, ctx.force)?;
    let rows: Vec<Result<(usize, usize), Error>> = ctx.pool.install(|| {
        (0..=qmax)
            .into_par_iter()
            .map(|q| {
                let mut engine = ctx.engine();
                Ok((
                    engine.wq_dim_homology(&inst.spec, q)?,
                    engine.wq_dim_cokernel(&inst.spec, q)?,
                ))
            })
            .collect()
    });
    let mut section = Section {
        title: "hilbert".into(),
        headers: vec!["q".into(), "dim W_q (homology)".into(), "dim W_q (cokernel)".into()],
        ..Default::default()
    };
    for (q, row) in rows.into_iter().enumerate() {
        let (h, c) = row.map_err(Failure::from)?;
        if h != c {
            return Err(Failure::from(Error::RouteDisagreement {
                q,
                homology: h,
                cokernel: c,
            }));
        }
        section
            .rows
            .push(vec![q.to_string(), h.to_string(), c.to_string()]);
    }
    let mut report = Report::new("hilbert");
    instance_meta(&mut report, input, &inst, ctx);
    report.meta("qmax", qmax);
    report.section(section);
    Ok(report)
}

pub fn cmd_check(ctx: &RunCtx, input: &str, component: &str) -> Result<Report, Failure> {
    let inst = load_instance(input)?;
    let comp = parse_component_arg(inst.spec.n(), component)?;
    if ctx.validate {
        for v in comp.basis() {
            if !in_resonance(&inst.spec, v) {
                return Err(Failure::parse(
                    "component has a basis vector outside the resonance".into(),
                ));
            }
        }
    }
    let rep = component_report(&inst.spec, &comp).map_err(Failure::from)?;
    let mut report = Report::new("check");
    instance_meta(&mut report, input, &inst, ctx);
    report.meta("component dim", comp.dim());
    let mut section = Section {
        title: "component".into(),
        headers: vec!["property".into(), "value".into()],
        ..Default::default()
    };
    section.rows.push(vec!["isotropic".into(), rep.isotropic.to_string()]);
    section.rows.push(vec!["separable".into(), rep.separable.to_string()]);
    section.rows.push(vec![
        "strongly isotropic".into(),
        rep.strongly_isotropic.to_string(),
    ]);
    section.rows.push(vec!["dim Kbar".into(), rep.kbar_dim.to_string()]);
    if let Some(w) = &rep.non_isotropic_witness {
        section
            .notes
            .push(format!("non-isotropy witness: {}", fmt_bivector(w)));
    }
    if let Some(w) = &rep.non_separable_witness {
        section
            .notes
            .push(format!("non-separability witness: {}", fmt_bivector(w)));
    }
    report.section(section);
    Ok(report)
}

fn fmt_bivector(b: &resonance_core::multilinear::Bivector) -> String {
    use resonance_core::multilinear::pair_list;
    use resonance_core::rat::One;
    let mut parts = Vec::new();
    for ((i, j), c) in pair_list(b.n).into_iter().zip(&b.coords) {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(format!("e{}^e{}", i + 1, j + 1));
        } else {
            parts.push(format!("{}*e{}^e{}", fmt_rat(c), i + 1, j + 1));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn cmd_raag(ctx: &RunCtx, graph_path: &str, qmax: usize) -> Result<Report, Failure> {
    let (g, digest) = load_graph(graph_path)?;
    cli_degree_guard(g.n(), qmax, ctx.force)?;
    let comps = resonance_components(&g).map_err(Failure::from)?;
    let spec = graph_to_pairspec(&g);

    let mut report = Report::new("raag");
    report.meta("graph", graph_path);
    report.meta("digest", &digest);
    report.meta("vertices", g.n());
    report.meta("edges", g.edge_count());
    report.meta("mode", ctx.mode_name());

    let mut comp_section = Section {
        title: "components".into(),
        headers: vec![
            "vertices".into(),
            "isotropic".into(),
            "separable".into(),
            "isotropic (generic)".into(),
            "separable (generic)".into(),
        ],
        ..Default::default()
    };
    for comp in &comps.components {
        let iso = component_is_isotropic(&g, comp).map_err(Failure::from)?;
        let sep = component_is_separable(&g, comp).map_err(Failure::from)?;
        let zero_based: Vec<usize> = comp.iter().map(|v| v - 1).collect();
        let sub = SubspaceSpec::coordinate(g.n(), &zero_based).map_err(Failure::from)?;
        let iso_g = check_isotropic(&spec, &sub);
        let sep_g = check_separable(&spec, &sub).map_err(Failure::from)?;
        if iso != iso_g || sep != sep_g {
            return Err(Failure::math(format!(
                "graph and generic routes disagree on component {comp:?}"
            )));
        }
        comp_section.rows.push(vec![
            format!(
                "{{{}}}",
                comp.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            ),
            iso.to_string(),
            sep.to_string(),
            iso_g.to_string(),
            sep_g.to_string(),
        ]);
    }
    if comps.components.is_empty() {
        comp_section.notes.push("resonance is empty".into());
    }
    report.section(comp_section);

    let rows: Vec<Result<(usize, usize, usize), Error>> = ctx.pool.install(|| {
        (0..=qmax)
            .into_par_iter()
            .map(|q| {
                let mut engine = ctx.engine();
                let h = engine.wq_dim_homology(&spec, q)?;
                let c = engine.wq_dim_cokernel(&spec, q)?;
                let t = theta_coker_dim(&engine, &g, q);
                Ok((h, c, t))
            })
            .collect()
    });
    let mut hilbert = Section {
        title: "hilbert".into(),
        headers: vec![
            "q".into(),
            "dim W_q (homology)".into(),
            "dim W_q (cokernel)".into(),
            "theta cokernel".into(),
        ],
        ..Default::default()
    };
    for (q, row) in rows.into_iter().enumerate() {
        let (h, c, t) = row.map_err(Failure::from)?;
        if h != c || h != t {
            return Err(Failure::math(format!(
                "routes disagree at q={q}: homology {h}, cokernel {c}, theta {t}"
            )));
        }
        hilbert.rows.push(vec![
            q.to_string(),
            h.to_string(),
            c.to_string(),
            t.to_string(),
        ]);
    }
    report.section(hilbert);
    Ok(report)
}

pub fn cmd_ann(ctx: &RunCtx, input: &str, dmax: usize, fitting: bool) -> Result<Report, Failure> {
    let inst = load_instance(input)?;
    if ctx.validate {
        validate_components(&inst)?;
    }
    cli_degree_guard(inst.spec.n(), dmax, ctx.force)?;
    let mut report = Report::new("ann");
    instance_meta(&mut report, input, &inst, ctx);
    report.meta("dmax", dmax);

    let slices: Vec<Result<resonance_core::engine::IdealSlice, Error>> = ctx.pool.install(|| {
        (0..=dmax)
            .into_par_iter()
            .map(|d| ctx.engine().annihilator_slice(&inst.spec, d))
            .collect()
    });
    let mut ann = Section {
        title: "annihilator".into(),
        headers: vec!["d".into(), "dim Ann_d".into(), "basis".into()],
        ..Default::default()
    };
    for (d, slice) in slices.into_iter().enumerate() {
        let slice = slice.map_err(Failure::from)?;
        let basis = if slice.basis.is_empty() {
            "-".to_string()
        } else {
            slice
                .basis
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        };
        ann.rows
            .push(vec![d.to_string(), slice.basis.len().to_string(), basis]);
    }
    report.section(ann);

    if fitting {
        let gens = ctx
            .engine()
            .fitting_generators(&inst.spec)
            .map_err(Failure::from)?;
        let mut sec = Section {
            title: "fitting".into(),
            headers: vec!["generator".into()],
            ..Default::default()
        };
        for g in &gens {
            sec.rows.push(vec![g.to_string()]);
        }
        if gens.is_empty() {
            sec.notes.push("no nonzero maximal minors".into());
        }
        report.section(sec);
    }

    if !inst.components.is_empty() {
        let mut engine = ctx.engine();
        let rows = reducedness_window(&mut engine, &inst.spec, &inst.components, 1..=dmax)
            .map_err(Failure::from)?;
        let mut sec = Section {
            title: "reducedness window".into(),
            headers: vec![
                "d".into(),
                "dim Ann_d".into(),
                "dim intersection slice".into(),
                "equal".into(),
            ],
            ..Default::default()
        };
        for r in rows {
            sec.rows.push(vec![
                r.degree.to_string(),
                r.annihilator_dim.to_string(),
                r.intersection_dim.to_string(),
                r.equal.to_string(),
            ]);
        }
        report.section(sec);
    }
    Ok(report)
}

pub fn cmd_identities(ctx: &RunCtx, gmax: u64) -> Result<Report, Failure> {
    if gmax < 1 {
        return Err(Failure::parse("--gmax must be at least 1".into()));
    }
    let mut report = Report::new("identities");
    report.meta("gmax", gmax);
    let mut all_ok = true;

    let grass: Vec<(Int, Int, bool)> = ctx.pool.install(|| {
        (1..=gmax)
            .into_par_iter()
            .map(|g| grassmannian_degree_identity(g).expect("g >= 1"))
            .collect()
    });
    let mut sec = Section {
        title: "grassmannian degree".into(),
        headers: vec!["g".into(), "sum of counts".into(), "deg Gr_2(g+3)".into(), "equal".into()],
        ..Default::default()
    };
    for (g, (lhs, rhs, equal)) in (1..=gmax).zip(grass) {
        all_ok &= equal;
        sec.rows
            .push(vec![g.to_string(), lhs.to_string(), rhs.to_string(), equal.to_string()]);
    }
    report.section(sec);

    let mut vafa = Section {
        title: "maximal subpencils".into(),
        headers: vec!["g".into(), "count at a = g+1".into(), "2^g".into(), "equal".into()],
        ..Default::default()
    };
    for g in 1..=gmax {
        let count = subpencil_count(g, g + 1).map_err(Failure::from)?;
        let expect = Int::from(2u32).pow(g as u32);
        let equal = count == expect;
        all_ok &= equal;
        vafa.rows.push(vec![
            g.to_string(),
            count.to_string(),
            expect.to_string(),
            equal.to_string(),
        ]);
    }
    report.section(vafa);

    let mut porteous = Section {
        title: "porteous vs subpencil count".into(),
        headers: vec!["g".into(), "a".into(), "porteous".into(), "count".into(), "equal".into()],
        ..Default::default()
    };
    for g in 1..=gmax.min(10) {
        let lo = (g + 3) / 2;
        for a in lo..=g + 1 {
            let d = 3 * g + 1;
            let class = porteous_coefficient(g, a, d).map_err(Failure::from)?;
            let count = subpencil_count(g, a).map_err(Failure::from)?;
            let point = class.point_count.expect("top power at d = 3g+1");
            let equal = point == count;
            all_ok &= equal;
            porteous.rows.push(vec![
                g.to_string(),
                a.to_string(),
                point.to_string(),
                count.to_string(),
                equal.to_string(),
            ]);
        }
    }
    report.section(porteous);

    let mut kodaira = Section {
        title: "kodaira additivity".into(),
        headers: vec!["b1".into(), "b2".into(), "q range".into(), "additive".into()],
        ..Default::default()
    };
    for b1 in 2..=gmax.min(6) {
        for b2 in b1..=gmax.min(6) {
            let mut ok = true;
            for q in 3..=10 {
                let lhs = chen_rank_kodaira(b1, b2, q).map_err(Failure::from)?;
                let rhs = chen_rank_surface(b1, q).map_err(Failure::from)?
                    + chen_rank_surface(b2, q).map_err(Failure::from)?;
                ok &= lhs == rhs;
            }
            all_ok &= ok;
            kodaira.rows.push(vec![
                b1.to_string(),
                b2.to_string(),
                "3..10".into(),
                ok.to_string(),
            ]);
        }
    }
    report.section(kodaira);

    if !all_ok {
        return Err(Failure::math("an enumerative identity failed".into()));
    }
    Ok(report)
}

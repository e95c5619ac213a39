//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use a1hilb::cli::{
    check_canonical, check_chart_ideals, check_core_ideal, check_decompositions, check_transitions,
    run_enumerate, sample_points, verify_charts, Filter,
};
use a1hilb::exactlin::{rat, Rat, RatVec};
use a1hilb::exec::Execution;
use a1hilb::geom::{
    center, core_cell, dual_monoid_generators, enumerate_core_triangulations, euler_number,
    midpoint, standard_decomposition, u_point, unit, validate_decomposition, w_point, CoreFilter,
    Decomposition, DecompositionName, LatticeContext,
};
use a1hilb::ghilb::{
    chart_catalog, family_sizes, find_chart, ideal_at, transition, verify_generators_at,
    ChartPoint, PointKind,
};
use a1hilb::grobner::Poly;
use a1hilb::toricideal::CoreReading;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn lattice_layer() -> Outcome {
    let c4 = LatticeContext::new(4).unwrap();
    let c5 = LatticeContext::new(5).unwrap();
    let counts = (
        c4.integral_points_in_delta().len(),
        c5.integral_points_in_delta().len(),
    );
    let m = |ctx: &LatticeContext, v: &RatVec| ctx.primitive_multiple(v).unwrap();
    let mults = [
        m(&c4, &midpoint(4, 0, 1)),
        m(&c4, &center(4)),
        m(&c5, &midpoint(5, 2, 4)),
        m(&c5, &u_point(5, 0)),
        m(&c5, &w_point(5, 3)),
    ];
    let all_u = (0..5).all(|i| m(&c5, &u_point(5, i)) == 2);
    let all_w = (0..5).all(|i| m(&c5, &w_point(5, i)) == 3);
    outcome(
        counts == (10, 15) && mults == [1, 2, 1, 2, 3] && all_u && all_w,
        format!("points {counts:?}, multiples v/c/v/u/w = {mults:?}"),
    )
}

fn core_presentations() -> Outcome {
    let start = Instant::now();
    let four = check_core_ideal(4).unwrap();
    let five = check_core_ideal(5).unwrap();
    let elapsed = start.elapsed();
    let charts = check_chart_ideals(&chart_catalog(5).unwrap()).unwrap();
    let charts_ok = charts.len() == 11 && charts.iter().all(|c| c.matches);
    let literal4 = four
        .readings
        .iter()
        .find(|r| r.reading == CoreReading::Literal)
        .unwrap()
        .matches;
    outcome(
        four.resolved.is_some() && five.passed() && charts_ok && elapsed < Duration::from_secs(60),
        format!(
            "n=4 reading {:?} (literal reading matches: {literal4}), n=5 matches: {}, V_im/VI ideals match: {charts_ok}, {:.2?}",
            four.resolved,
            five.passed(),
            elapsed
        ),
    )
}

fn catalogs() -> Outcome {
    let c4 = chart_catalog(4).unwrap();
    let c5 = chart_catalog(5).unwrap();
    let sizes: Vec<usize> = family_sizes(&c5).into_iter().map(|(_, s)| s).collect();
    let coords_ok = c4.iter().chain(&c5).all(|c| {
        let ctx = LatticeContext::new(c.n).unwrap();
        let mut mine = c.coordinates.monos.clone();
        mine.sort();
        mine == dual_monoid_generators(&ctx, &c.cell).unwrap()
    });
    outcome(
        c4.len() == 12 && c5.len() == 81 && sizes == [5, 5, 20, 10, 30, 10, 1] && coords_ok,
        format!("{} + {} charts, n=5 families {sizes:?}, coordinates = dual monoid generators: {coords_ok}", c4.len(), c5.len()),
    )
}

fn certificates() -> Outcome {
    let start = Instant::now();
    let mut points = 0;
    let mut failed = Vec::new();
    for n in [4, 5] {
        let cat = chart_catalog(n).unwrap();
        for r in verify_charts(Execution::default(), &cat, 42, 5) {
            points += r.points.len();
            let sizes_ok = r.points.iter().all(|p| p.staircase_size == 1 << (n - 1));
            if !r.passed() || !sizes_ok || r.points.len() != 9 {
                failed.push(r.name.clone());
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failed.is_empty() && elapsed < Duration::from_secs(300),
        format!("93 charts, {points} points, failures {failed:?}, {elapsed:.2?}"),
    )
}

fn canonical_data() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [4, 5] {
        let ctx = LatticeContext::new(n).unwrap();
        let canon = check_canonical(&ctx).unwrap();
        let (decs, chains) = check_decompositions(&ctx).unwrap();
        ok &= canon.matches && decs.iter().all(|d| d.passed()) && chains.iter().all(|c| c.holds);
        let nonzero: Vec<String> = canon
            .coefficients
            .iter()
            .filter(|(_, c)| *c > 0)
            .map(|(p, c)| format!("{p}:{c}"))
            .collect();
        notes.push(format!("n={n} nonzero K coefficients {}", nonzero.len()));
        notes.push(format!("{} refinements", chains.len()));
    }
    outcome(ok, notes.join(", "))
}

fn flops_n4() -> Outcome {
    let r = run_enumerate(4, Filter::All, Execution::default()).unwrap();
    outcome(
        r.count == 3 && r.complete && r.flop_edges.len() == 3,
        format!(
            "{} triangulations, {} flop edges",
            r.count,
            r.flop_edges.len()
        ),
    )
}

fn flops_n5() -> Outcome {
    let start = Instant::now();
    let r = run_enumerate(5, Filter::Dominated, Execution::default()).unwrap();
    let elapsed = start.elapsed();
    let verdict = if r.count == 12 {
        "agrees with twelve".to_string()
    } else {
        format!("DIFFERS from twelve ({})", r.count)
    };
    outcome(
        r.orbit_contained == Some(true) && r.connected && elapsed < Duration::from_secs(600),
        format!(
            "dominated count {} ({verdict}), orbit of size {:?} contained, flop graph {} edges, connected {}, {elapsed:.2?}",
            r.count,
            r.orbit_size,
            r.flop_edges.len(),
            r.connected
        ),
    )
}

fn full_decomposition(n: usize, core: &Decomposition) -> Decomposition {
    let xi = standard_decomposition(DecompositionName::Xi, n).unwrap();
    let mut cells: Vec<Vec<RatVec>> = xi
        .all_cells()
        .into_iter()
        .filter(|c| *c != core_cell(n))
        .map(|c| c.vertices().to_vec())
        .collect();
    cells.extend(core.all_cells().into_iter().map(|c| c.vertices().to_vec()));
    Decomposition::from_cells(n, cells, None)
}

fn euler_counts() -> Outcome {
    let mut counts = Vec::new();
    let mut ok = true;
    for (n, filter, names) in [
        (
            4,
            CoreFilter::All,
            (1..=3).map(DecompositionName::XiJ).collect::<Vec<_>>(),
        ),
        (5, CoreFilter::Dominated, vec![DecompositionName::XiPrime]),
    ] {
        let ctx = LatticeContext::new(n).unwrap();
        let mut decs: Vec<Decomposition> = names
            .into_iter()
            .map(|d| standard_decomposition(d, n).unwrap())
            .collect();
        decs.extend(
            enumerate_core_triangulations(&ctx, filter)
                .unwrap()
                .iter()
                .map(|t| full_decomposition(n, t)),
        );
        for d in &decs {
            let e = euler_number(&ctx, d);
            ok &= e == Ok(1 << (n - 1));
        }
        counts.push(format!("n={n}: {} resolutions", decs.len()));
    }
    outcome(ok, format!("{} all with 2^(n-1) cells", counts.join(", ")))
}

fn transitions() -> Outcome {
    let c4 = chart_catalog(4).unwrap();
    let t = transition(
        find_chart(&c4, "Cp_4").unwrap(),
        find_chart(&c4, "C_1").unwrap(),
    )
    .unwrap();
    let eq = t.exponents
        == vec![
            vec![1, 1, 0, 0],
            vec![0, -1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ];
    let s = check_transitions(&c4).unwrap();
    outcome(
        eq && s.passed(),
        format!(
            "Cp_4 -> C_1: {}; {} adjacent pairs, {} paths composed",
            t.display("x", "y").join(", "),
            s.pairs.len(),
            s.triples
        ),
    )
}

fn negative_controls() -> Outcome {
    // corrupted generator: one sign flipped
    let c4 = chart_catalog(4).unwrap();
    let c = find_chart(&c4, "C_1").unwrap();
    let pts = sample_points(c, 42, 5);
    let (_, p) = &pts[1];
    let mut gens = ideal_at(c, p).unwrap();
    let clean = verify_generators_at(c, PointKind::Supplied, &gens).passed();
    let i = gens
        .iter()
        .position(|g| {
            g.len() == 2
                && g.terms().all(|(m, _)| m.iter().sum::<u32>() == 2)
                && !g
                    .coefficient(&[0, 1, 1, 0])
                    .eq(&Rat::from_integer(0.into()))
        })
        .unwrap();
    gens[i] = Poly::binomial(
        vec![1, 0, 0, 1],
        gens[i].coefficient(&[0, 1, 1, 0]),
        vec![0, 1, 1, 0],
    );
    let corrupted = verify_generators_at(c, PointKind::Supplied, &gens);
    let zero_point = ChartPoint::zero(c);
    let mut zero_gens = ideal_at(c, &zero_point).unwrap();
    zero_gens.pop();
    let truncated = verify_generators_at(c, PointKind::Supplied, &zero_gens);

    // T-junction: the top triangle is split at a point inside the trapezoid's top edge
    let ctx = LatticeContext::new(3).unwrap();
    let p = vec![rat(1, 4), rat(1, 4), rat(1, 2)];
    let (v13, v23) = (midpoint(3, 0, 2), midpoint(3, 1, 2));
    let bad = Decomposition::from_cells(
        3,
        vec![
            vec![unit(3, 0), unit(3, 1), v13.clone(), v23.clone()],
            vec![v13, p.clone(), unit(3, 2)],
            vec![p, v23, unit(3, 2)],
        ],
        None,
    );
    let report = validate_decomposition(&ctx, &bad);
    outcome(
        clean
            && !corrupted.passed()
            && !corrupted.reduced_basis
            && !truncated.passed()
            && report.covers
            && !report.is_valid(),
        format!(
            "corrupted generators rejected, T-junction improper pairs {:?}",
            report.improper_pairs
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("lattice layer", lattice_layer),
        ("core presentations", core_presentations),
        ("chart catalogs", catalogs),
        ("Groebner certificates", certificates),
        ("canonical data", canonical_data),
        ("flops n=4", flops_n4),
        ("flops n=5", flops_n5),
        ("Euler counts", euler_counts),
        ("transitions", transitions),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!(
            "{} criterion {:2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

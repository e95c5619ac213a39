//! Command-line driver: verification runs, triangulation enumeration, fan
//! files and single-chart dumps.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
//! usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactlin::{int, Rat};
use crate::exec::{self, Execution};
use crate::geom::{
    self, canonical_coefficients, core_orbit, core_part, enumerate_core_triangulations_with,
    euler_number, fmt_point, is_crepant, is_smooth, refines, standard_decomposition,
    validate_decomposition, BoundaryRule, CoreFilter, DecompositionName, FanFile, LatticeContext,
};
use crate::ghilb::{
    self, chart_catalog, degenerate_point, family_sizes, find_chart, ideal_at, torus_point,
    verify_chart, weight_order, Chart, ChartPoint, ChartReport, PointKind, PointReport,
};
use crate::grobner::{buchberger, format_mono, initial_ideal, minimalize, staircase, TieBreak};
use crate::toricideal::{core_generators, core_presentation, same_ideal, toric_ideal, CoreReading};

pub const REPORT_SCHEMA: &str = "a1hilb.report/1";

/// Largest numerator and denominator of sampled rationals.
pub const SAMPLE_BOUND: i64 = 97;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "a1hilb",
    version,
    about = "Exact fans, charts and Groebner certificates for A1(n)-Hilbert schemes"
)]
pub struct Cli {
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify every chart and the decomposition data for one n.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate unimodular triangulations of the core and their flop graph.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump one chart's ideal, reduced basis and staircase at a point.
    Chart {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        chart: String,
        /// Comma-separated rationals `p/q`; sampled from the seed if absent.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a named decomposition as a fan file.
    Fan {
        #[arg(long)]
        n: usize,
        /// xi, xi-star, xi-1..xi-3 (n = 4), xi-prime (n = 5)
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    All,
    Dominated,
}

fn random_rat(rng: &mut ChaCha8Rng, nonzero: bool) -> Rat {
    loop {
        let p: i64 = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let q: i64 = rng.gen_range(1..=SAMPLE_BOUND);
        if !nonzero || p != 0 {
            return Rat::new(int(p), int(q));
        }
    }
}

fn chart_seed(seed: u64, chart: &Chart) -> u64 {
    chart
        .name
        .bytes()
        .fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
        })
}

fn sampled_torus_point(chart: &Chart, rng: &mut ChaCha8Rng) -> ChartPoint {
    let b: Vec<Rat> = (0..chart.n).map(|_| random_rat(rng, true)).collect();
    torus_point(chart, &b).expect("nonzero parameters")
}

/// Test points for a chart: the origin, `generic` torus points and three
/// torus limits along random faces of the cell. Deterministic in `seed`.
pub fn sample_points(chart: &Chart, seed: u64, generic: usize) -> Vec<(PointKind, ChartPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(chart_seed(seed, chart));
    let mut out = vec![(PointKind::Zero, ChartPoint::zero(chart))];
    for _ in 0..generic {
        out.push((PointKind::Generic, sampled_torus_point(chart, &mut rng)));
    }
    let k = chart.cell.vertices().len();
    for _ in 0..3 {
        let p = sampled_torus_point(chart, &mut rng);
        let size = rng.gen_range(1..k);
        let face = rand::seq::index::sample(&mut rng, k, size).into_vec();
        out.push((PointKind::Degenerate, degenerate_point(chart, &p, &face)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub name: String,
    pub cells: usize,
    pub valid: bool,
    pub smooth: bool,
    pub crepant: bool,
    pub euler_number: Option<usize>,
    pub expected_smooth: bool,
    pub expected_crepant: bool,
}

impl DecompositionCheck {
    pub fn passed(&self) -> bool {
        let euler_ok = !(self.smooth && self.crepant) || self.euler_number == Some(self.cells);
        self.valid
            && self.smooth == self.expected_smooth
            && self.crepant == self.expected_crepant
            && euler_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementCheck {
    pub fine: String,
    pub coarse: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalCheck {
    pub coefficients: Vec<(String, u64)>,
    pub expected: Vec<(String, u64)>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReadingCheck {
    pub reading: CoreReading,
    pub equations: Vec<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreIdealCheck {
    pub generators: Vec<String>,
    pub computed: Vec<String>,
    pub readings: Vec<ReadingCheck>,
    pub resolved: Option<CoreReading>,
}

impl CoreIdealCheck {
    pub fn passed(&self) -> bool {
        self.resolved.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartIdealCheck {
    pub chart: String,
    pub computed: Vec<String>,
    pub tabulated: Vec<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitionCheck {
    pub from: String,
    pub to: String,
    pub map: Vec<String>,
    /// The map sends `to`'s coordinates back to `from`'s monomials.
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitionSummary {
    pub pairs: Vec<TransitionCheck>,
    pub triples: usize,
    pub failed_compositions: Vec<(String, String, String)>,
}

impl TransitionSummary {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.exact) && self.failed_compositions.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub n: usize,
    pub seed: u64,
    pub samples: u64,
    pub family_sizes: Vec<(String, usize)>,
    pub charts: Vec<ChartReport>,
    pub decompositions: Vec<DecompositionCheck>,
    pub refinements: Vec<RefinementCheck>,
    pub canonical: CanonicalCheck,
    pub core_ideal: CoreIdealCheck,
    pub chart_ideals: Vec<ChartIdealCheck>,
    pub transitions: Option<TransitionSummary>,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn decomposition_names(n: usize) -> Vec<(DecompositionName, bool, bool)> {
    // (name, expected smooth, expected crepant)
    let mut v = vec![(DecompositionName::Xi, false, true)];
    if n == 4 {
        v.extend((1..=3).map(|j| (DecompositionName::XiJ(j), true, true)));
    } else {
        v.push((DecompositionName::XiPrime, true, true));
    }
    // the V and VI charts are singular
    v.push((DecompositionName::XiStar, n == 4, false));
    v
}

pub fn check_decompositions(
    ctx: &LatticeContext,
) -> anyhow::Result<(Vec<DecompositionCheck>, Vec<RefinementCheck>)> {
    let n = ctx.n();
    let mut checks = Vec::new();
    for (name, es, ec) in decomposition_names(n) {
        let d = standard_decomposition(name, n)?;
        let valid = validate_decomposition(ctx, &d).is_valid();
        let (smooth, crepant) = if valid {
            (is_smooth(ctx, &d)?, is_crepant(ctx, &d)?)
        } else {
            (false, false)
        };
        let euler = if smooth && crepant {
            Some(euler_number(ctx, &d)?)
        } else {
            None
        };
        checks.push(DecompositionCheck {
            name: name.to_string(),
            cells: d.len(),
            valid,
            smooth,
            crepant,
            euler_number: euler,
            expected_smooth: es,
            expected_crepant: ec,
        });
    }
    let middles: Vec<DecompositionName> = if n == 4 {
        (1..=3).map(DecompositionName::XiJ).collect()
    } else {
        vec![DecompositionName::XiPrime]
    };
    let xi = standard_decomposition(DecompositionName::Xi, n)?;
    let star = standard_decomposition(DecompositionName::XiStar, n)?;
    let mut chains = Vec::new();
    for m in middles {
        let mid = standard_decomposition(m, n)?;
        chains.push(RefinementCheck {
            fine: m.to_string(),
            coarse: "xi".into(),
            holds: refines(ctx, &mid, &xi)?,
        });
        chains.push(RefinementCheck {
            fine: "xi-star".into(),
            coarse: m.to_string(),
            holds: refines(ctx, &star, &mid)?,
        });
    }
    Ok((checks, chains))
}

/// Expected canonical coefficients of the Hilbert scheme: 1 at the center
/// for `n = 4`; 2 at each `w^i` and 1 at each `u^i` for `n = 5`.
pub fn expected_canonical(n: usize, v: &[Rat]) -> u64 {
    if n == 4 {
        return u64::from(v == geom::center(4).as_slice());
    }
    if (0..n).any(|i| v == geom::w_point(n, i).as_slice()) {
        2
    } else if (0..n).any(|i| v == geom::u_point(n, i).as_slice()) {
        1
    } else {
        0
    }
}

pub fn check_canonical(ctx: &LatticeContext) -> anyhow::Result<CanonicalCheck> {
    let n = ctx.n();
    let star = standard_decomposition(DecompositionName::XiStar, n)?;
    let coeffs = canonical_coefficients(ctx, &star)?;
    let coefficients: Vec<(String, u64)> = coeffs.iter().map(|(v, c)| (fmt_point(v), *c)).collect();
    let expected: Vec<(String, u64)> = coeffs
        .keys()
        .map(|v| (fmt_point(v), expected_canonical(n, v)))
        .collect();
    let matches = coefficients == expected;
    Ok(CanonicalCheck {
        coefficients,
        expected,
        matches,
    })
}

pub fn check_core_ideal(n: usize) -> anyhow::Result<CoreIdealCheck> {
    let gens = core_generators(n);
    let ideal = toric_ideal(&gens)?;
    let readings: Vec<CoreReading> = if n == 4 {
        vec![CoreReading::Literal, CoreReading::Complementary]
    } else {
        vec![CoreReading::Literal]
    };
    let mut out = Vec::new();
    for r in readings {
        let claimed = core_presentation(n, r);
        let matches = same_ideal(&ideal.binomials, &claimed, gens.len())?;
        out.push(ReadingCheck {
            reading: r,
            equations: claimed.iter().map(|b| b.display(&gens.names)).collect(),
            matches,
        });
    }
    let resolved = out.iter().find(|r| r.matches).map(|r| r.reading);
    Ok(CoreIdealCheck {
        generators: gens
            .monos
            .iter()
            .zip(&gens.names)
            .map(|(m, s)| format!("{s} = {m}"))
            .collect(),
        computed: ideal.equations(),
        readings: out,
        resolved,
    })
}

/// Toric ideal of each non-simplicial chart against its tabulated relations.
pub fn check_chart_ideals(catalog: &[Chart]) -> anyhow::Result<Vec<ChartIdealCheck>> {
    let mut out = Vec::new();
    for c in catalog.iter().filter(|c| !c.relations.is_empty()) {
        let ideal = toric_ideal(&c.coordinates)?;
        let matches = same_ideal(&ideal.binomials, &c.relations, c.dimension())?;
        out.push(ChartIdealCheck {
            chart: c.name.clone(),
            computed: ideal.equations(),
            tabulated: c.relations.iter().map(|b| b.display(c.labels())).collect(),
            matches,
        });
    }
    Ok(out)
}

/// Transition maps between all adjacent charts, composed along every path
/// `a -> b -> c` of adjacent charts and compared with the torus map `a -> c`.
pub fn check_transitions(catalog: &[Chart]) -> anyhow::Result<TransitionSummary> {
    let k = catalog.len();
    let mut maps = vec![vec![None; k]; k];
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a != b && ghilb::adjacent(&catalog[a], &catalog[b]) {
                let t = ghilb::transition(&catalog[a], &catalog[b])?;
                let exact = t.images(&catalog[b]) == catalog[a].coordinates.monos;
                pairs.push(TransitionCheck {
                    from: t.from.clone(),
                    to: t.to.clone(),
                    map: t.display("x", "y"),
                    exact,
                });
                maps[a][b] = Some(t);
            }
        }
    }
    let mut triples = 0;
    let mut failed = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if let (Some(ab), Some(bc)) = (&maps[a][b], &maps[b][c]) {
                    triples += 1;
                    let ac = ghilb::torus_transition(&catalog[a], &catalog[c])?;
                    if ab.compose(bc).exponents != ac.exponents {
                        failed.push((ab.from.clone(), ab.to.clone(), bc.to.clone()));
                    }
                }
            }
        }
    }
    Ok(TransitionSummary {
        pairs,
        triples,
        failed_compositions: failed,
    })
}

pub fn verify_charts(
    mode: Execution,
    catalog: &[Chart],
    seed: u64,
    samples: usize,
) -> Vec<ChartReport> {
    exec::map_with(mode, catalog, |c| {
        verify_chart(c, &sample_points(c, seed, samples))
    })
}

pub fn run_verify(
    n: usize,
    seed: u64,
    samples: u64,
    mode: Execution,
) -> anyhow::Result<VerifyReport> {
    let ctx = LatticeContext::new(n)?;
    let catalog = chart_catalog(n)?;
    let charts = verify_charts(mode, &catalog, seed, samples as usize);
    let (decompositions, refinements) = check_decompositions(&ctx)?;
    let canonical = check_canonical(&ctx)?;
    let core_ideal = check_core_ideal(n)?;
    let chart_ideals = check_chart_ideals(&catalog)?;
    let transitions = if n == 4 {
        Some(check_transitions(&catalog)?)
    } else {
        None
    };

    let mut failures = Vec::new();
    failures.extend(
        charts
            .iter()
            .filter(|c| !c.passed())
            .map(|c| format!("chart {}", c.name)),
    );
    failures.extend(
        decompositions
            .iter()
            .filter(|d| !d.passed())
            .map(|d| format!("decomposition {}", d.name)),
    );
    failures.extend(
        refinements
            .iter()
            .filter(|r| !r.holds)
            .map(|r| format!("refinement {} < {}", r.fine, r.coarse)),
    );
    if !canonical.matches {
        failures.push("canonical coefficients".into());
    }
    if !core_ideal.passed() {
        failures.push("core presentation".into());
    }
    failures.extend(
        chart_ideals
            .iter()
            .filter(|c| !c.matches)
            .map(|c| format!("chart ideal {}", c.chart)),
    );
    if transitions.as_ref().is_some_and(|t| !t.passed()) {
        failures.push("transitions".into());
    }
    Ok(VerifyReport {
        schema: REPORT_SCHEMA,
        n,
        seed,
        samples,
        family_sizes: family_sizes(&catalog)
            .into_iter()
            .map(|(f, s)| (f.to_string(), s))
            .collect(),
        charts,
        decompositions,
        refinements,
        canonical,
        core_ideal,
        chart_ideals,
        transitions,
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerateReport {
    pub schema: &'static str,
    pub n: usize,
    pub filter: Filter,
    pub count: usize,
    pub expected_count: Option<usize>,
    pub triangulations: Vec<FanFile>,
    pub flop_edges: Vec<(usize, usize)>,
    pub flop_degrees: Vec<usize>,
    pub connected: bool,
    pub complete: bool,
    /// Edge count when flops must also fix the facets on coordinate hyperplanes.
    pub strict_edges: usize,
    /// Size of the symmetric-group orbit of the core part of `xi-prime`
    /// (`n = 5`) and whether it lies in the enumerated set.
    pub orbit_size: Option<usize>,
    pub orbit_contained: Option<bool>,
    pub passed: bool,
}

pub fn run_enumerate(n: usize, filter: Filter, mode: Execution) -> anyhow::Result<EnumerateReport> {
    let ctx = LatticeContext::new(n)?;
    let core_filter = match filter {
        Filter::All => CoreFilter::All,
        Filter::Dominated => CoreFilter::Dominated,
    };
    let tris = enumerate_core_triangulations_with(&ctx, core_filter, mode)?;
    let graph = geom::flop_graph(&ctx, &tris)?;
    let strict = geom::flop_graph_with(&ctx, &tris, BoundaryRule::Strict)?;
    let (orbit_size, orbit_contained) = if n == 5 {
        let prime = standard_decomposition(DecompositionName::XiPrime, 5)?;
        let orbit = core_orbit(&core_part(&prime));
        let contained = orbit.iter().all(|o| tris.iter().any(|t| t.same_as(o)));
        (Some(orbit.len()), Some(contained))
    } else {
        (None, None)
    };
    let expected_count = match (n, filter) {
        (3, _) => Some(1),
        (4, _) => Some(3),
        (5, Filter::Dominated) => Some(12),
        _ => None,
    };
    let passed = expected_count.is_none_or(|e| e == tris.len())
        && graph.is_connected()
        && orbit_contained.unwrap_or(true)
        && (n != 4 || graph.is_complete());
    Ok(EnumerateReport {
        schema: REPORT_SCHEMA,
        n,
        filter,
        count: tris.len(),
        expected_count,
        triangulations: tris.iter().map(FanFile::from).collect(),
        flop_degrees: graph.degrees(),
        connected: graph.is_connected(),
        complete: graph.is_complete(),
        flop_edges: graph.edges,
        strict_edges: strict.edges.len(),
        orbit_size,
        orbit_contained,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartDump {
    pub schema: &'static str,
    pub chart: String,
    pub n: usize,
    pub cell: Vec<String>,
    pub coordinates: Vec<String>,
    pub labels: Vec<String>,
    pub weight: Vec<i64>,
    pub point: Vec<String>,
    pub ideal: Vec<String>,
    pub reduced_basis: Vec<String>,
    pub initial_ideal: Vec<String>,
    pub staircase: Vec<String>,
    pub checks: PointReport,
}

#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error("{0}")]
    Message(String),
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError::Message(msg.into()).into()
}

pub fn run_chart(
    n: usize,
    name: &str,
    point: Option<&str>,
    seed: u64,
) -> anyhow::Result<ChartDump> {
    if !(4..=5).contains(&n) {
        return Err(usage(format!("charts exist for n = 4, 5 only (got {n})")));
    }
    let catalog = chart_catalog(n)?;
    let chart = find_chart(&catalog, name).map_err(|e| usage(e.to_string()))?;
    let p = match point {
        Some(s) => {
            let p = ChartPoint::parse(s).ok_or_else(|| usage(format!("malformed point {s}")))?;
            if p.values.len() != chart.dimension() {
                return Err(usage(format!(
                    "{name} has {} coordinates, point has {}",
                    chart.dimension(),
                    p.values.len()
                )));
            }
            p
        }
        None => sampled_torus_point(
            chart,
            &mut ChaCha8Rng::seed_from_u64(chart_seed(seed, chart)),
        ),
    };
    let kind = if point.is_some() {
        PointKind::Supplied
    } else {
        PointKind::Generic
    };
    let ideal = ideal_at(chart, &p).map_err(|e| usage(e.to_string()))?;
    let order = weight_order(chart, TieBreak::Lex);
    let gb = buchberger(&ideal, &order)?;
    let lt = minimalize(&initial_ideal(&gb));
    let st = staircase(&lt, n)?;
    let report = verify_chart(chart, &[(kind, p.clone())]);
    Ok(ChartDump {
        schema: REPORT_SCHEMA,
        chart: chart.name.clone(),
        n,
        cell: report.cell.clone(),
        coordinates: chart.symbols.clone(),
        labels: chart.labels().to_vec(),
        weight: report.weight.clone(),
        point: p.values.iter().map(crate::exactlin::format_rat).collect(),
        ideal: ideal.iter().map(|g| g.display(&order)).collect(),
        reduced_basis: gb.polys.iter().map(|g| g.display(&order)).collect(),
        initial_ideal: lt.iter().map(|m| format_mono(m)).collect(),
        staircase: st.iter().map(|m| format_mono(m)).collect(),
        checks: report.points.into_iter().next().expect("one point"),
    })
}

pub fn run_fan(n: usize, name: &str) -> anyhow::Result<String> {
    let d: DecompositionName = name
        .parse()
        .map_err(|_| usage(format!("unknown decomposition {name}")))?;
    let dec = standard_decomposition(d, n).map_err(|e| usage(e.to_string()))?;
    Ok(geom::to_json(&dec))
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing {}", path.display())),
        None => writeln!(stdout, "{text}").context("writing output"),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> anyhow::Result<i32> {
    let mode = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Verify {
            n,
            seed,
            samples,
            out,
        } => {
            if !(4..=5).contains(&n) {
                return Err(usage(format!("verify supports n = 4, 5 (got {n})")));
            }
            let r = run_verify(n, seed, samples, mode)?;
            let points: usize = r.charts.iter().map(|c| c.points.len()).sum();
            writeln!(
                stdout,
                "n = {n}: {} charts, {points} points",
                r.charts.len()
            )?;
            let sizes: Vec<String> = r
                .family_sizes
                .iter()
                .map(|(f, s)| format!("{f}:{s}"))
                .collect();
            writeln!(stdout, "families {}", sizes.join(" "))?;
            if let Some(reading) = r.core_ideal.resolved {
                writeln!(stdout, "core presentation matches reading {reading:?}")?;
            }
            for f in &r.failures {
                writeln!(stdout, "FAILED {f}")?;
            }
            writeln!(
                stdout,
                "{}",
                if r.passed {
                    "all checks passed"
                } else {
                    "verification failed"
                }
            )?;
            if out.is_some() {
                emit(&out, stdout, &json(&r))?;
            }
            Ok(if r.passed { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Enumerate { n, filter, out } => {
            if !(3..=5).contains(&n) {
                return Err(usage(format!("enumerate supports n = 3, 4, 5 (got {n})")));
            }
            if n == 3 && filter == Filter::Dominated {
                return Err(usage("the dominated filter needs n = 4 or 5"));
            }
            let r = run_enumerate(n, filter, mode)?;
            writeln!(stdout, "n = {n}: {} triangulations ({:?})", r.count, filter)?;
            if let Some(e) = r.expected_count {
                if e != r.count {
                    writeln!(stdout, "count differs from the expected {e}")?;
                }
            }
            writeln!(
                stdout,
                "flop graph: {} edges, connected = {}",
                r.flop_edges.len(),
                r.connected
            )?;
            if let (Some(size), Some(inside)) = (r.orbit_size, r.orbit_contained) {
                writeln!(
                    stdout,
                    "orbit of xi-prime core: {size} triangulations, contained = {inside}"
                )?;
            }
            if out.is_some() {
                emit(&out, stdout, &json(&r))?;
            }
            Ok(if r.passed { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Chart {
            n,
            chart,
            point,
            seed,
            out,
        } => {
            let d = run_chart(n, &chart, point.as_deref(), seed)?;
            let ok = d.checks.passed();
            emit(&out, stdout, &json(&d))?;
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Fan { n, name, out } => {
            emit(&out, stdout, &run_fan(n, &name)?)?;
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors go to stderr.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    }
}

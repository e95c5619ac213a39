use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use num_traits::Zero;

use super::cone::{dot, rank, Ray};
use super::decomp::{Cell, Decomposition};
use super::lattice::LatticeContext;
use super::GeomError;
use crate::exactlin::{Rat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlopGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl FlopGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.nodes * self.nodes.saturating_sub(1) / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }
}

type Simplex = Vec<RatVec>;

/// Which part of `∂P` the two triangulations must agree on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryRule {
    /// Every boundary facet of `P`.
    Strict,
    /// Only the walls of `P` that are interior to the positive orthant;
    /// facets on `x_i = 0` are not walls of the fan.
    InteriorWalls,
}

fn simplices(t: &Decomposition) -> BTreeSet<Simplex> {
    t.cells
        .iter()
        .map(|c| c.iter().map(|&i| t.vertices[i].clone()).collect())
        .collect()
}

/// Facets of the simplices in `d` that belong to exactly one simplex.
fn boundary<'a>(d: impl IntoIterator<Item = &'a Simplex>) -> BTreeSet<Simplex> {
    let mut count: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in d {
        for skip in 0..s.len() {
            let f: Simplex = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v.clone())
                .collect();
            *count.entry(f).or_insert(0) += 1;
        }
    }
    count
        .into_iter()
        .filter(|&(_, c)| c == 1)
        .map(|(f, _)| f)
        .collect()
}

fn on_coordinate_hyperplane(f: &Simplex) -> bool {
    (0..f[0].len()).any(|k| f.iter().all(|v| v[k].is_zero()))
}

/// Whether two triangulations differ by a flop: the differing simplices
/// cover the same convex polytope `P` in both, use only vertices of `P`,
/// and induce the same triangulation on the walls of `P` selected by `rule`.
fn is_flop(a: &BTreeSet<Simplex>, b: &BTreeSet<Simplex>, rule: BoundaryRule) -> bool {
    let da: Vec<&Simplex> = a.difference(b).collect();
    let db: Vec<&Simplex> = b.difference(a).collect();
    if da.is_empty() || db.is_empty() {
        return false;
    }
    let verts =
        |d: &[&Simplex]| -> BTreeSet<RatVec> { d.iter().flat_map(|s| s.iter().cloned()).collect() };
    let va = verts(&da);
    if va != verts(&db) {
        return false;
    }
    let vlist: Vec<RatVec> = va.into_iter().collect();
    let p = Cell::new(vlist.clone()).expect("points of the core");
    let vol = p.volume();
    let vol_of = |d: &[&Simplex]| -> Rat {
        d.iter()
            .map(|s| Cell::new(s.to_vec()).expect("simplex").volume())
            .sum()
    };
    if vol_of(&da) != vol || vol_of(&db) != vol {
        // the differing region is not convex
        return false;
    }
    let hull = p.cone();
    let rays = p.rays();
    let is_vertex = |r: &Ray| {
        let tight: Vec<&Ray> = hull
            .facets
            .iter()
            .filter(|f| dot(&f.normal, r) == 0)
            .map(|f| &f.normal)
            .collect();
        rank(&tight) + 1 == r.len()
    };
    if !rays.iter().all(is_vertex) {
        return false;
    }
    let keep = |f: &Simplex| rule == BoundaryRule::Strict || !on_coordinate_hyperplane(f);
    let ba: BTreeSet<Simplex> = boundary(da).into_iter().filter(|f| keep(f)).collect();
    let bb: BTreeSet<Simplex> = boundary(db).into_iter().filter(|f| keep(f)).collect();
    ba == bb
}

/// Flop adjacency between triangulations of the core under
/// [`BoundaryRule::InteriorWalls`].
pub fn flop_graph(
    ctx: &LatticeContext,
    triangulations: &[Decomposition],
) -> Result<FlopGraph, GeomError> {
    flop_graph_with(ctx, triangulations, BoundaryRule::InteriorWalls)
}

pub fn flop_graph_with(
    ctx: &LatticeContext,
    triangulations: &[Decomposition],
    rule: BoundaryRule,
) -> Result<FlopGraph, GeomError> {
    for t in triangulations {
        if t.n != ctx.n() {
            return Err(GeomError::Dimension {
                expected: ctx.n(),
                got: t.n,
            });
        }
        if t.cells.iter().any(|c| c.len() != ctx.n()) {
            return Err(GeomError::InvalidTriangulation(format!(
                "{:?} has a non-simplex cell",
                t.name
            )));
        }
    }
    let sets: Vec<BTreeSet<Simplex>> = triangulations.iter().map(simplices).collect();
    let pairs: Vec<(usize, usize)> = (0..sets.len()).tuple_combinations().collect();
    let edges = crate::exec::filter_map(&pairs, |&(i, j)| {
        is_flop(&sets[i], &sets[j], rule).then_some((i, j))
    });
    Ok(FlopGraph {
        nodes: triangulations.len(),
        edges,
    })
}

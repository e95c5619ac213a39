use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::cone::{dot, meet, normal, Cone, Meet, Ray};
use super::decomp::{cell_multiplicity, Cell, Decomposition, Multiplicity};
use super::lattice::LatticeContext;
use super::standard::{core_cell, core_volume, named_cells, DecompositionName};
use super::GeomError;
use crate::exactlin::{rat, Rat, RatVec};
use crate::exec::{self, Execution};

/// A triangulation of the core, stored as a decomposition whose cells cover
/// the core instead of `Delta`.
pub type Triangulation = Decomposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreFilter {
    All,
    /// Only triangulations refined by the core part of the Hilbert scheme
    /// decomposition (`n = 4, 5`).
    Dominated,
}

struct Search {
    n: usize,
    vertices: Vec<RatVec>,
    simplices: Vec<Vec<usize>>,
    compatible: Vec<Vec<bool>>,
    /// facet key -> (simplex, side of its apex)
    by_facet: BTreeMap<Vec<usize>, Vec<(usize, i8)>>,
    boundary: BTreeSet<Vec<usize>>,
    start: Vec<usize>,
}

/// Unimodular simplices on the midpoints `v^{ij}`, as sorted index lists
/// into the core's canonical vertex order.
pub fn unimodular_core_simplices(ctx: &LatticeContext) -> Vec<Vec<usize>> {
    let core = core_cell(ctx.n());
    let verts = core.vertices().to_vec();
    (0..verts.len())
        .combinations(ctx.n())
        .filter(|s| {
            let cell =
                Cell::new(s.iter().map(|&i| verts[i].clone()).collect()).expect("core points");
            cell.is_full() && cell_multiplicity(ctx, &cell) == Ok(Multiplicity::Simplex(1))
        })
        .collect()
}

/// Maximal cells of the Hilbert scheme decomposition that lie in the core.
fn star_core_cells(n: usize) -> Result<Vec<Cell>, GeomError> {
    let half = rat(1, 2);
    Ok(named_cells(DecompositionName::XiStar, n)?
        .into_iter()
        .map(|(_, c)| c)
        .filter(|c| c.iter().all(|v| v.iter().all(|x| x <= &half)))
        .map(|c| Cell::new(c).expect("cells lie in Delta"))
        .collect())
}

fn contains_cell(outer: &Cone, inner: &Cell) -> bool {
    inner.rays().iter().all(|r| outer.contains(r))
}

impl Search {
    fn new(ctx: &LatticeContext, filter: CoreFilter, mode: Execution) -> Result<Self, GeomError> {
        let n = ctx.n();
        let core = core_cell(n);
        let vertices = core.vertices().to_vec();
        let rays: Vec<Ray> = core.rays();
        let mut simplices = unimodular_core_simplices(ctx);
        if filter == CoreFilter::Dominated {
            let pieces = star_core_cells(n)?;
            let vols: Vec<Rat> = pieces.iter().map(Cell::volume).collect();
            simplices.retain(|s| {
                let cone = Cone::new(s.iter().map(|&i| rays[i].clone()).collect());
                let inside: Rat = pieces
                    .iter()
                    .zip(&vols)
                    .filter(|(p, _)| contains_cell(&cone, p))
                    .map(|(_, v)| v.clone())
                    .sum();
                // unimodular simplices have volume 1
                inside == Rat::from_integer(1.into())
            });
        }
        let cones: Vec<Cone> = simplices
            .iter()
            .map(|s| Cone::new(s.iter().map(|&i| rays[i].clone()).collect()))
            .collect();
        let pairs: Vec<(usize, usize)> = (0..cones.len()).tuple_combinations().collect();
        let ok = exec::map_with(mode, &pairs, |&(a, b)| {
            meet(&cones[a], &cones[b]) == Meet::Proper
        });
        let mut compatible = vec![vec![false; cones.len()]; cones.len()];
        for (&(a, b), ok) in pairs.iter().zip(ok) {
            compatible[a][b] = ok;
            compatible[b][a] = ok;
        }

        let core_cone = core.cone();
        let mut by_facet: BTreeMap<Vec<usize>, Vec<(usize, i8)>> = BTreeMap::new();
        let mut boundary = BTreeSet::new();
        let mut normals: Vec<Ray> = Vec::new();
        for (sid, s) in simplices.iter().enumerate() {
            for apex in s {
                let key: Vec<usize> = s.iter().copied().filter(|i| i != apex).collect();
                let vs: Vec<&Ray> = key.iter().map(|&i| &rays[i]).collect();
                let f = normal(&vs).expect("simplex facets are independent");
                let side = dot(&f, &rays[*apex]).signum() as i8;
                if core_cone
                    .facets
                    .iter()
                    .any(|cf| key.iter().all(|i| cf.rays.contains(i)))
                {
                    boundary.insert(key.clone());
                }
                by_facet.entry(key).or_default().push((sid, side));
                normals.push(f);
            }
        }

        // a point of the core off every facet hyperplane
        let point = (1i128..)
            .map(|s| -> Ray {
                let mut p = vec![0i128; n];
                for (k, r) in rays.iter().enumerate() {
                    let c = 1000 + ((k as i128 + 1) * (7919 * s)) % 997;
                    for (x, y) in p.iter_mut().zip(r) {
                        *x += c * y;
                    }
                }
                p
            })
            .find(|p| normals.iter().all(|f| dot(f, p) != 0))
            .expect("generic point exists");
        let start = (0..cones.len())
            .filter(|&i| cones[i].contains_strictly(&point))
            .collect();

        Ok(Self {
            n,
            vertices,
            simplices,
            compatible,
            by_facet,
            boundary,
            start,
        })
    }

    fn facets_of(&self, sid: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let s = &self.simplices[sid];
        s.iter()
            .map(move |apex| s.iter().copied().filter(|i| i != apex).collect())
    }

    fn run(&self, mode: Execution) -> Vec<Vec<usize>> {
        let found = exec::map_with(mode, &self.start, |&first| {
            let mut out = BTreeSet::new();
            let mut chosen = vec![first];
            let mut open: BTreeMap<Vec<usize>, u8> = BTreeMap::new();
            self.add(first, &mut open);
            self.dfs(&mut chosen, &mut open, &mut out);
            out
        });
        found
            .into_iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn add(&self, sid: usize, open: &mut BTreeMap<Vec<usize>, u8>) {
        for key in self.facets_of(sid) {
            *open.entry(key).or_insert(0) += 1;
        }
    }

    fn remove(&self, sid: usize, open: &mut BTreeMap<Vec<usize>, u8>) {
        for key in self.facets_of(sid) {
            let c = open.get_mut(&key).expect("present");
            *c -= 1;
            if *c == 0 {
                open.remove(&key);
            }
        }
    }

    fn dfs(
        &self,
        chosen: &mut Vec<usize>,
        open: &mut BTreeMap<Vec<usize>, u8>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let next = open
            .iter()
            .find(|(k, &c)| c == 1 && !self.boundary.contains(*k))
            .map(|(k, _)| k.clone());
        let Some(key) = next else {
            let mut t = chosen.clone();
            t.sort_unstable();
            out.insert(t);
            return;
        };
        let users = &self.by_facet[&key];
        let (_, side) = *users
            .iter()
            .find(|(s, _)| chosen.contains(s))
            .expect("open facet has an owner");
        for &(cand, cand_side) in users {
            if cand_side == side || chosen.iter().any(|&c| !self.compatible[c][cand]) {
                continue;
            }
            chosen.push(cand);
            self.add(cand, open);
            self.dfs(chosen, open, out);
            self.remove(cand, open);
            chosen.pop();
        }
    }

    fn to_decomposition(&self, t: &[usize], name: &str) -> Decomposition {
        Decomposition {
            n: self.n,
            vertices: self.vertices.clone(),
            cells: t.iter().map(|&s| self.simplices[s].clone()).collect(),
            name: Some(name.to_string()),
        }
        .canonical()
    }
}

/// All face-to-face triangulations of the core into unimodular simplices
/// on the midpoints, in canonical order.
pub fn enumerate_core_triangulations(
    ctx: &LatticeContext,
    filter: CoreFilter,
) -> Result<Vec<Triangulation>, GeomError> {
    enumerate_core_triangulations_with(ctx, filter, Execution::default())
}

pub fn enumerate_core_triangulations_with(
    ctx: &LatticeContext,
    filter: CoreFilter,
    mode: Execution,
) -> Result<Vec<Triangulation>, GeomError> {
    let search = Search::new(ctx, filter, mode)?;
    let target = core_volume(ctx.n());
    let mut out: Vec<Decomposition> = search
        .run(mode)
        .iter()
        .map(|t| search.to_decomposition(t, "core"))
        .filter(|d| {
            // a closed face-to-face complex through an interior point covers the core
            let vol: Rat = d.all_cells().iter().map(Cell::volume).sum();
            debug_assert_eq!(vol, target);
            vol == target
        })
        .collect();
    out.sort_by(|a, b| a.cells.cmp(&b.cells));
    for (i, d) in out.iter_mut().enumerate() {
        d.name = Some(format!("T{}", i + 1));
    }
    Ok(out)
}

/// True iff every core cell of the Hilbert scheme decomposition lies in a
/// simplex of `t`.
pub fn is_dominated(t: &Triangulation) -> Result<bool, GeomError> {
    let pieces = star_core_cells(t.n)?;
    let cones: Vec<Cone> = t.all_cells().iter().map(Cell::cone).collect();
    Ok(pieces
        .iter()
        .all(|p| cones.iter().any(|c| contains_cell(c, p))))
}

/// Distinct images of `t` under all coordinate permutations, canonical order.
pub fn core_orbit(t: &Triangulation) -> Vec<Triangulation> {
    let n = t.n;
    let mut seen: Vec<Decomposition> = Vec::new();
    for perm in (0..n).permutations(n) {
        let mut img = super::decomp::apply_permutation(t, &perm).expect("valid permutation");
        img.name = None;
        if !seen.iter().any(|s| s.same_as(&img)) {
            seen.push(img);
        }
    }
    seen.sort_by(|a, b| a.cells.cmp(&b.cells));
    seen
}

/// Core part of a decomposition of `Delta`: the cells inside the core.
pub fn core_part(d: &Decomposition) -> Triangulation {
    let half = rat(1, 2);
    let cells: Vec<Vec<RatVec>> = d
        .all_cells()
        .into_iter()
        .filter(|c| c.vertices().iter().all(|v| v.iter().all(|x| x <= &half)))
        .map(|c| c.vertices().to_vec())
        .collect();
    Decomposition::from_cells(d.n, cells, d.name.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_has_one_triangulation() {
        let ctx = LatticeContext::new(3).unwrap();
        let ts = enumerate_core_triangulations(&ctx, CoreFilter::All).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].len(), 1);
        assert!(enumerate_core_triangulations(&ctx, CoreFilter::Dominated).is_err());
    }

    #[test]
    fn n4_has_three_and_all_are_dominated() {
        let ctx = LatticeContext::new(4).unwrap();
        let all = enumerate_core_triangulations(&ctx, CoreFilter::All).unwrap();
        assert_eq!(all.len(), 3);
        for t in &all {
            assert_eq!(t.len(), 4);
            assert!(is_dominated(t).unwrap());
        }
        let dom = enumerate_core_triangulations(&ctx, CoreFilter::Dominated).unwrap();
        assert_eq!(dom, all);
    }
}

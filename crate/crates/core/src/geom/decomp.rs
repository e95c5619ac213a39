use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cone::{self, integer_ray, Cone, Meet, Ray};
use super::lattice::{in_delta, LatticeContext};
use super::GeomError;
use crate::exactlin::{
    format_rat, parse_rat, rat_int, smith_normal_form, IntMat, Rat, RatMat, RatVec,
};

/// A polytope in `Delta` given by its vertices, canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    vertices: Vec<RatVec>,
}

impl Cell {
    pub fn new(mut vertices: Vec<RatVec>) -> Result<Self, GeomError> {
        let n = vertices.first().map_or(0, Vec::len);
        for v in &vertices {
            if v.len() != n {
                return Err(GeomError::Dimension {
                    expected: n,
                    got: v.len(),
                });
            }
            if !in_delta(v) {
                return Err(GeomError::OutsideDelta(fmt_point(v)));
            }
        }
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeomError::RepeatedVertex);
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.first().map_or(0, Vec::len)
    }

    pub fn rays(&self) -> Vec<Ray> {
        self.vertices.iter().map(|v| integer_ray(v)).collect()
    }

    pub fn cone(&self) -> Cone {
        Cone::new(self.rays())
    }

    /// Affine dimension of the hull.
    pub fn dimension(&self) -> usize {
        let rays = self.rays();
        let refs: Vec<&Ray> = rays.iter().collect();
        cone::rank(&refs).saturating_sub(1)
    }

    pub fn is_full(&self) -> bool {
        self.dimension() + 1 == self.n()
    }

    pub fn is_simplex(&self) -> bool {
        self.is_full() && self.vertices.len() == self.n()
    }

    /// Volume normalized so that a unimodular simplex of `N` has volume 1.
    pub fn volume(&self) -> Rat {
        if !self.is_full() {
            return Rat::zero();
        }
        let n = self.n();
        let scale = rat_int(1 << (n - 1));
        cone::triangulate(&self.rays())
            .into_iter()
            .map(|s| {
                let rows: Vec<RatVec> = s.iter().map(|&i| self.vertices[i].clone()).collect();
                RatMat::from_rows(rows).expect("square").determinant().abs() * &scale
            })
            .sum()
    }

    pub fn contains_point(&self, p: &[Rat]) -> bool {
        self.cone().contains(&integer_ray(p))
    }

    /// Sum of the primitive `N`-generators of the vertex rays.
    pub fn interior_vector(&self, ctx: &LatticeContext) -> Result<RatVec, GeomError> {
        let mut acc = vec![Rat::zero(); self.n()];
        for v in &self.vertices {
            let m = rat_int(ctx.primitive_multiple(v)? as i64);
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x * &m;
            }
        }
        Ok(acc)
    }
}

pub fn fmt_point(v: &[Rat]) -> String {
    format!("({})", v.iter().map(format_rat).join(", "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Multiplicity {
    Simplex(u64),
    NonSimplicial,
}

/// Index in `N` of the sublattice spanned by the primitive generators of a
/// simplicial cell.
pub fn cell_multiplicity(ctx: &LatticeContext, cell: &Cell) -> Result<Multiplicity, GeomError> {
    if !cell.is_full() {
        return Err(GeomError::Degenerate);
    }
    if !cell.is_simplex() {
        return Ok(Multiplicity::NonSimplicial);
    }
    let mut rows = Vec::new();
    for v in cell.vertices() {
        let m = rat_int(ctx.primitive_multiple(v)? as i64);
        let p: RatVec = v.iter().map(|x| x * &m).collect();
        rows.push(ctx.coordinates(&p)?.expect("primitive generator lies in N"));
    }
    let snf = smith_normal_form(&IntMat::from_rows(rows).expect("square"));
    let index = snf
        .invariant_factors()
        .iter()
        .product::<crate::exactlin::Int>();
    Ok(Multiplicity::Simplex(
        u64::try_from(index).map_err(|_| GeomError::Overflow)?,
    ))
}

/// Maximal cells of a rational polytope decomposition, by vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub n: usize,
    pub vertices: Vec<RatVec>,
    pub cells: Vec<Vec<usize>>,
    pub name: Option<String>,
}

impl Decomposition {
    /// Builds a decomposition from cells given by explicit vertices and
    /// returns it in canonical form.
    pub fn from_cells(n: usize, cells: Vec<Vec<RatVec>>, name: Option<&str>) -> Self {
        let mut vertices: Vec<RatVec> = cells.iter().flatten().cloned().collect();
        vertices.sort();
        vertices.dedup();
        let cells = cells
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| vertices.binary_search(v).expect("collected"))
                    .collect()
            })
            .collect();
        Self {
            n,
            vertices,
            cells,
            name: name.map(str::to_string),
        }
        .canonical()
    }

    /// Sorted vertices, sorted cells, unused vertices dropped.
    pub fn canonical(&self) -> Self {
        let cells: Vec<Vec<RatVec>> = self
            .cells
            .iter()
            .map(|c| c.iter().map(|&i| self.vertices[i].clone()).collect())
            .collect();
        let mut vertices: Vec<RatVec> = cells.iter().flatten().cloned().collect();
        vertices.sort();
        vertices.dedup();
        let mut idx: Vec<Vec<usize>> = cells
            .iter()
            .map(|c| {
                let mut s: Vec<usize> = c
                    .iter()
                    .map(|v| vertices.binary_search(v).expect("collected"))
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        idx.sort();
        Self {
            n: self.n,
            vertices,
            cells: idx,
            name: self.name.clone(),
        }
    }

    /// Equality of canonical forms, ignoring names.
    pub fn same_as(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.n == b.n && a.vertices == b.vertices && a.cells == b.cells
    }

    pub fn cell(&self, i: usize) -> Cell {
        Cell::new(
            self.cells[i]
                .iter()
                .map(|&k| self.vertices[k].clone())
                .collect(),
        )
        .expect("vertices lie in Delta")
    }

    pub fn all_cells(&self) -> Vec<Cell> {
        (0..self.cells.len()).map(|i| self.cell(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_volume(&self) -> Rat {
        self.all_cells().iter().map(Cell::volume).sum()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }
}

/// Outcome of [`validate_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub cells: usize,
    pub degenerate_cells: Vec<usize>,
    pub volume: String,
    pub expected_volume: String,
    pub covers: bool,
    pub improper_pairs: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.degenerate_cells.is_empty() && self.covers && self.improper_pairs.is_empty()
    }
}

/// Checks full-dimensionality, total volume against `target_volume`, and
/// the face-to-face property for every pair of cells.
pub fn validate_cells(d: &Decomposition, target_volume: &Rat) -> ValidationReport {
    let cells = d.all_cells();
    let degenerate_cells: Vec<usize> = (0..cells.len()).filter(|&i| !cells[i].is_full()).collect();
    let volume: Rat = cells.iter().map(Cell::volume).sum();
    let cones: Vec<Cone> = cells.iter().map(Cell::cone).collect();
    let pairs: Vec<(usize, usize)> = (0..cells.len()).tuple_combinations().collect();
    let improper_pairs: Vec<(usize, usize)> = crate::exec::filter_map(&pairs, |&(i, j)| {
        if degenerate_cells.contains(&i) || degenerate_cells.contains(&j) {
            return None;
        }
        (cone::meet(&cones[i], &cones[j]) == Meet::Improper).then_some((i, j))
    });
    ValidationReport {
        cells: cells.len(),
        degenerate_cells,
        covers: &volume == target_volume,
        volume: format_rat(&volume),
        expected_volume: format_rat(target_volume),
        improper_pairs,
    }
}

/// Normalized volume of `Delta`, which is `|G| = 2^(n-1)`.
pub fn delta_volume(ctx: &LatticeContext) -> Rat {
    rat_int(ctx.group_order() as i64)
}

pub fn validate_decomposition(ctx: &LatticeContext, d: &Decomposition) -> ValidationReport {
    validate_cells(d, &delta_volume(ctx))
}

fn ensure_valid(ctx: &LatticeContext, d: &Decomposition) -> Result<(), GeomError> {
    if d.n != ctx.n() {
        return Err(GeomError::Dimension {
            expected: ctx.n(),
            got: d.n,
        });
    }
    let report = validate_decomposition(ctx, d);
    if report.is_valid() {
        Ok(())
    } else {
        Err(GeomError::InvalidDecomposition(format!("{report:?}")))
    }
}

/// True iff every cell of `fine` lies inside some cell of `coarse`.
pub fn refines(
    ctx: &LatticeContext,
    fine: &Decomposition,
    coarse: &Decomposition,
) -> Result<bool, GeomError> {
    ensure_valid(ctx, fine)?;
    ensure_valid(ctx, coarse)?;
    Ok(refines_unchecked(fine, coarse))
}

pub fn refines_unchecked(fine: &Decomposition, coarse: &Decomposition) -> bool {
    let coarse_cones: Vec<Cone> = coarse.all_cells().iter().map(Cell::cone).collect();
    fine.all_cells().iter().all(|c| {
        let rays = c.rays();
        coarse_cones
            .iter()
            .any(|k| rays.iter().all(|r| k.contains(r)))
    })
}

/// Sends `x` to `y` with `y[perm[i]] = x[i]`; `perm` is zero-based.
pub fn apply_permutation(d: &Decomposition, perm: &[usize]) -> Result<Decomposition, GeomError> {
    let n = d.n;
    if perm.len() != n || !(0..n).all(|i| perm.contains(&i)) {
        return Err(GeomError::BadPermutation(perm.to_vec()));
    }
    let vertices = d.vertices.iter().map(|x| permute_point(x, perm)).collect();
    Ok(Decomposition {
        n,
        vertices,
        cells: d.cells.clone(),
        name: d.name.clone(),
    }
    .canonical())
}

pub fn permute_point(x: &[Rat], perm: &[usize]) -> RatVec {
    let mut y = vec![Rat::zero(); x.len()];
    for (i, v) in x.iter().enumerate() {
        y[perm[i]] = v.clone();
    }
    y
}

/// `m_v - 1` for every vertex, keyed by the vertex formatted as `(p/q, ...)`.
pub fn canonical_coefficients(
    ctx: &LatticeContext,
    d: &Decomposition,
) -> Result<BTreeMap<RatVec, u64>, GeomError> {
    ensure_valid(ctx, d)?;
    d.vertices
        .iter()
        .map(|v| Ok((v.clone(), ctx.primitive_multiple(v)? - 1)))
        .collect()
}

pub fn is_crepant(ctx: &LatticeContext, d: &Decomposition) -> Result<bool, GeomError> {
    Ok(canonical_coefficients(ctx, d)?.values().all(|&c| c == 0))
}

pub fn is_smooth(ctx: &LatticeContext, d: &Decomposition) -> Result<bool, GeomError> {
    ensure_valid(ctx, d)?;
    for c in d.all_cells() {
        if cell_multiplicity(ctx, &c)? != Multiplicity::Simplex(1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of maximal cells of a smooth crepant decomposition.
pub fn euler_number(ctx: &LatticeContext, d: &Decomposition) -> Result<usize, GeomError> {
    if !is_smooth(ctx, d)? || !is_crepant(ctx, d)? {
        return Err(GeomError::NotSmoothCrepant);
    }
    Ok(d.cells.len())
}

/// On-disk representation of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub schema: String,
    pub name: Option<String>,
    pub n: usize,
    pub vertices: Vec<Vec<String>>,
    pub cells: Vec<Vec<usize>>,
}

pub const FAN_SCHEMA: &str = "a1hilb.fan/1";

impl From<&Decomposition> for FanFile {
    fn from(d: &Decomposition) -> Self {
        let d = d.canonical();
        Self {
            schema: FAN_SCHEMA.to_string(),
            name: d.name.clone(),
            n: d.n,
            vertices: d
                .vertices
                .iter()
                .map(|v| v.iter().map(format_rat).collect())
                .collect(),
            cells: d.cells.clone(),
        }
    }
}

impl TryFrom<&FanFile> for Decomposition {
    type Error = GeomError;

    fn try_from(f: &FanFile) -> Result<Self, GeomError> {
        if f.schema != FAN_SCHEMA {
            return Err(GeomError::Format(format!("unknown schema {:?}", f.schema)));
        }
        let vertices: Vec<RatVec> = f
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| parse_rat(s).map_err(|e| GeomError::Format(e.to_string())))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        for v in &vertices {
            if v.len() != f.n {
                return Err(GeomError::Dimension {
                    expected: f.n,
                    got: v.len(),
                });
            }
            if !in_delta(v) {
                return Err(GeomError::OutsideDelta(fmt_point(v)));
            }
        }
        if f.cells.iter().flatten().any(|&i| i >= vertices.len()) {
            return Err(GeomError::Format("cell index out of range".into()));
        }
        Ok(Decomposition {
            n: f.n,
            vertices,
            cells: f.cells.clone(),
            name: f.name.clone(),
        }
        .canonical())
    }
}

pub fn to_json(d: &Decomposition) -> String {
    serde_json::to_string_pretty(&FanFile::from(d)).expect("serializable")
}

pub fn from_json(s: &str) -> Result<Decomposition, GeomError> {
    let f: FanFile = serde_json::from_str(s).map_err(|e| GeomError::Format(e.to_string()))?;
    Decomposition::try_from(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::geom::lattice::{midpoint, unit};

    #[test]
    fn delta_itself_is_valid() {
        for n in 3..=5 {
            let ctx = LatticeContext::new(n).unwrap();
            let d = Decomposition::from_cells(n, vec![(0..n).map(|i| unit(n, i)).collect()], None);
            let report = validate_decomposition(&ctx, &d);
            assert!(report.is_valid(), "{report:?}");
            assert_eq!(
                cell_multiplicity(&ctx, &d.cell(0)).unwrap(),
                Multiplicity::Simplex(1 << (n - 1))
            );
        }
    }

    #[test]
    fn barycentric_split_of_a_triangle() {
        let ctx = LatticeContext::new(3).unwrap();
        let m01 = midpoint(3, 0, 1);
        let d = Decomposition::from_cells(
            3,
            vec![
                vec![unit(3, 0), m01.clone(), unit(3, 2)],
                vec![m01, unit(3, 1), unit(3, 2)],
            ],
            Some("split"),
        );
        assert!(validate_decomposition(&ctx, &d).is_valid());
        assert_eq!(d.cell(0).volume(), rat_int(2));
    }

    #[test]
    fn permutation_roundtrip() {
        let d = Decomposition::from_cells(
            3,
            vec![vec![unit(3, 0), midpoint(3, 0, 1), unit(3, 2)]],
            None,
        );
        let p = apply_permutation(&d, &[1, 2, 0]).unwrap();
        let back = apply_permutation(&p, &[2, 0, 1]).unwrap();
        assert!(back.same_as(&d));
        assert!(apply_permutation(&d, &[0, 0, 1]).is_err());
    }

    #[test]
    fn fan_file_roundtrip() {
        let d = Decomposition::from_cells(
            3,
            vec![vec![
                unit(3, 0),
                vec![rat(1, 3), rat(1, 3), rat(1, 3)],
                unit(3, 2),
            ]],
            Some("x"),
        );
        let back = from_json(&to_json(&d)).unwrap();
        assert_eq!(back, d);
        assert!(from_json(
            "{\"schema\":\"nope\",\"name\":null,\"n\":3,\"vertices\":[],\"cells\":[]}"
        )
        .is_err());
    }
}

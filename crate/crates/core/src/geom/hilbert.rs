use itertools::Itertools;

use super::cone::{det, dot, Cone, Ray};
use super::decomp::Cell;
use super::lattice::{LatticeContext, LaurentMono};
use super::GeomError;

/// Minimal generators of the monoid `M ∩ σ̌` for the cone over `cell`,
/// sorted by exponent vector.
///
/// Points are enumerated in the coordinates `y = P m` of a full-rank subset
/// `P` of the cell's rays, graded by `sum(y)`. Every Hilbert basis element
/// lies in the half-open parallelepiped of `n` extreme rays of `σ̌`, which
/// bounds the grade by the sum of the `n` largest ray grades.
pub fn dual_monoid_generators(
    ctx: &LatticeContext,
    cell: &Cell,
) -> Result<Vec<LaurentMono>, GeomError> {
    let n = ctx.n();
    if cell.n() != n {
        return Err(GeomError::Dimension {
            expected: n,
            got: cell.n(),
        });
    }
    if !cell.is_full() {
        return Err(GeomError::Degenerate);
    }
    let cone = cell.cone();
    let dual_rays: Vec<Ray> = cone.facets.iter().map(|f| to_m(&f.normal)).collect();

    let (basis, bound) = (0..cone.rays.len())
        .combinations(n)
        .filter_map(|s| {
            let p: Vec<Ray> = s.iter().map(|&i| cone.rays[i].clone()).collect();
            if det(&p) == 0 {
                return None;
            }
            let w: Ray = (0..n).map(|k| p.iter().map(|r| r[k]).sum()).collect();
            let mut grades: Vec<i128> = dual_rays.iter().map(|r| dot(r, &w)).collect();
            grades.sort_unstable_by(|a, b| b.cmp(a));
            let bound: i128 = grades.iter().take(n).sum();
            Some((p, bound))
        })
        .min_by_key(|(_, b)| *b)
        .expect("a full cell has n independent rays");

    let d = det(&basis);
    let adj = adjugate(&basis);
    let mut points: Vec<(i128, Ray)> = Vec::new();
    let mut y = vec![0i128; n];
    walk(&mut y, 0, bound, &mut |y| {
        let raw: Ray = (0..n)
            .map(|i| (0..n).map(|j| adj[i][j] * y[j]).sum())
            .collect();
        if raw.iter().any(|x| x % d != 0) {
            return;
        }
        let m: Ray = raw.iter().map(|x| x / d).collect();
        if m.iter().all(|&x| x == 0) || !in_m(&m) || !cone.rays.iter().all(|r| dot(&m, r) >= 0) {
            return;
        }
        points.push((y.iter().sum(), m));
    });
    points.sort();

    let mut gens: Vec<Ray> = Vec::new();
    for (_, m) in points {
        let reducible = gens.iter().any(|g| {
            let diff: Ray = m.iter().zip(g).map(|(a, b)| a - b).collect();
            in_dual(&cone, &diff)
        });
        if !reducible {
            gens.push(m);
        }
    }
    let mut out: Vec<LaurentMono> = gens
        .into_iter()
        .map(|g| LaurentMono(g.into_iter().map(|x| x as i64).collect()))
        .collect();
    out.sort();
    Ok(out)
}

fn in_dual(cone: &Cone, m: &[i128]) -> bool {
    cone.rays.iter().all(|r| dot(m, r) >= 0)
}

fn in_m(m: &[i128]) -> bool {
    m.windows(2).all(|w| (w[0] - w[1]).rem_euclid(2) == 0)
}

fn to_m(v: &[i128]) -> Ray {
    if in_m(v) {
        v.to_vec()
    } else {
        v.iter().map(|x| 2 * x).collect()
    }
}

fn adjugate(p: &[Ray]) -> Vec<Ray> {
    let n = p.len();
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Ray> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| p[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * det(&minor);
        }
    }
    adj
}

fn walk(y: &mut Ray, k: usize, left: i128, f: &mut impl FnMut(&[i128])) {
    if k == y.len() {
        f(y);
        return;
    }
    for v in 0..=left {
        y[k] = v;
        walk(y, k + 1, left - v, f);
    }
    y[k] = 0;
}

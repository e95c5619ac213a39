//! Small exact polyhedral cones with integer rays.
//!
//! Every cell of a decomposition of `Delta` is the slice of a cone over the
//! origin, so all incidence questions reduce to sign checks of integer
//! linear forms. Dimensions never exceed 5 and ray counts never exceed 16,
//! which keeps the brute-force hyperplane enumeration cheap.

use itertools::Itertools;
use num_integer::Integer;

use crate::exactlin::{common_denominator, Rat};

pub type Ray = Vec<i128>;

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive integer direction of a nonzero rational vector.
pub fn integer_ray(v: &[Rat]) -> Ray {
    let d = common_denominator(v);
    let raw: Vec<i128> = v
        .iter()
        .map(|x| {
            let s = (x * Rat::from_integer(d.clone())).to_integer();
            i128::try_from(s).expect("coordinate fits in i128")
        })
        .collect();
    primitive(raw)
}

pub fn primitive(mut v: Ray) -> Ray {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Fraction-free (Bareiss) determinant.
pub fn det(rows: &[Ray]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Ray> = rows.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

pub fn rank(rows: &[&Ray]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Ray> = rows.iter().map(|r| r.to_vec()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0i128, |acc, x| acc.gcd(x));
                if g > 1 {
                    for x in &mut m[i] {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Generalized cross product of `n - 1` vectors in `Z^n`, made primitive.
/// Returns `None` when the vectors are dependent.
pub fn normal(vs: &[&Ray]) -> Option<Ray> {
    let n = vs.len() + 1;
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Ray> = vs
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let d = det(&minor);
        out.push(if skip % 2 == 0 { d } else { -d });
    }
    if out.iter().all(|&x| x == 0) {
        None
    } else {
        Some(primitive(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Inward primitive normal: nonnegative on the cone.
    pub normal: Ray,
    /// Indices of the rays lying on the facet, ascending.
    pub rays: Vec<usize>,
}

/// Facets of a full-dimensional cone in `Z^d` spanned by `rays`.
pub fn facets(rays: &[Ray]) -> Vec<Facet> {
    let d = rays.first().map_or(0, Vec::len);
    let mut out: Vec<Facet> = Vec::new();
    if d < 2 {
        return out;
    }
    for subset in (0..rays.len()).combinations(d - 1) {
        let vs: Vec<&Ray> = subset.iter().map(|&i| &rays[i]).collect();
        let Some(mut f) = normal(&vs) else { continue };
        let vals: Vec<i128> = rays.iter().map(|r| dot(&f, r)).collect();
        let pos = vals.iter().any(|&x| x > 0);
        let neg = vals.iter().any(|&x| x < 0);
        if pos && neg || !pos && !neg {
            continue;
        }
        if neg {
            f.iter_mut().for_each(|x| *x = -*x);
        }
        let on: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] == 0).collect();
        if !out.iter().any(|g| g.rays == on) {
            out.push(Facet {
                normal: f,
                rays: on,
            });
        }
    }
    out.sort_by(|a, b| a.rays.cmp(&b.rays));
    out
}

/// A full-dimensional cone with its facet description.
#[derive(Clone, Debug)]
pub struct Cone {
    pub rays: Vec<Ray>,
    pub facets: Vec<Facet>,
}

impl Cone {
    pub fn new(rays: Vec<Ray>) -> Self {
        let facets = facets(&rays);
        Self { rays, facets }
    }

    pub fn dim(&self) -> usize {
        let refs: Vec<&Ray> = self.rays.iter().collect();
        rank(&refs)
    }

    pub fn ambient(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.ambient() && self.is_full()
    }

    pub fn contains(&self, p: &[i128]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, p) >= 0)
    }

    pub fn contains_strictly(&self, p: &[i128]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, p) > 0)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }
}

/// Triangulates the cone spanned by `rays` (all of which must be needed
/// to span a space of dimension `rays[0].len()` or less) by pulling the
/// first ray. Returns simplices as index lists.
pub fn triangulate(rays: &[Ray]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..rays.len()).collect();
    let refs: Vec<&Ray> = rays.iter().collect();
    let d = rank(&refs);
    pull(rays, &idx, d)
}

fn pull(all: &[Ray], idx: &[usize], d: usize) -> Vec<Vec<usize>> {
    if idx.len() == d {
        return vec![idx.to_vec()];
    }
    // project onto d coordinates where the span stays injective
    let ambient = all[0].len();
    let cols = (0..ambient)
        .combinations(d)
        .find(|cols| {
            let proj: Vec<Ray> = idx
                .iter()
                .map(|&i| cols.iter().map(|&c| all[i][c]).collect())
                .collect();
            let refs: Vec<&Ray> = proj.iter().collect();
            rank(&refs) == d
        })
        .expect("some coordinate projection is injective on the span");
    let proj: Vec<Ray> = idx
        .iter()
        .map(|&i| cols.iter().map(|&c| all[i][c]).collect())
        .collect();
    let mut out = Vec::new();
    for f in facets(&proj) {
        if f.rays.contains(&0) {
            continue;
        }
        let sub: Vec<usize> = f.rays.iter().map(|&k| idx[k]).collect();
        for mut s in pull(all, &sub, d - 1) {
            s.push(idx[0]);
            s.sort_unstable();
            out.push(s);
        }
    }
    out
}

/// Outcome of the face-to-face test for two full-dimensional cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meet {
    /// The cones meet in a common face (possibly just the origin).
    Proper,
    /// The cones overlap in a way that is not a common face.
    Improper,
}

/// Decides whether `a ∩ b` is a face of both.
///
/// The separating cone `C = {f : f <= 0 on a, f >= 0 on b}` is nonzero
/// exactly when the interiors are disjoint, and a point in its relative
/// interior cuts out the minimal separated faces. The intersection is a
/// common face iff both minimal faces carry the same rays.
pub fn meet(a: &Cone, b: &Cone) -> Meet {
    // a facet of one cone strictly separates the other
    if a.facets
        .iter()
        .any(|f| b.rays.iter().all(|r| dot(&f.normal, r) < 0))
        || b.facets
            .iter()
            .any(|f| a.rays.iter().all(|r| dot(&f.normal, r) < 0))
    {
        return Meet::Proper;
    }
    // common facet with the cones on opposite sides
    for f in &a.facets {
        let on_a: Vec<&Ray> = f.rays.iter().map(|&i| &a.rays[i]).collect();
        let on_b: Vec<&Ray> = b.rays.iter().filter(|r| dot(&f.normal, r) == 0).collect();
        if on_b.len() == on_a.len()
            && on_a.iter().all(|r| on_b.contains(r))
            && b.rays.iter().all(|r| dot(&f.normal, r) <= 0)
            && b.facets.iter().any(|g| {
                g.rays.len() == on_b.len() && g.rays.iter().all(|&i| on_b.contains(&&b.rays[i]))
            })
        {
            return Meet::Proper;
        }
    }

    let mut union: Vec<&Ray> = a.rays.iter().collect();
    for r in &b.rays {
        if !union.contains(&r) {
            union.push(r);
        }
    }
    let d = a.ambient();
    let mut sum: Option<Ray> = None;
    for subset in (0..union.len()).combinations(d - 1) {
        let vs: Vec<&Ray> = subset.iter().map(|&i| union[i]).collect();
        let Some(f) = normal(&vs) else { continue };
        for sign in [1i128, -1] {
            let g: Ray = f.iter().map(|x| x * sign).collect();
            if a.rays.iter().all(|r| dot(&g, r) <= 0) && b.rays.iter().all(|r| dot(&g, r) >= 0) {
                sum = Some(match sum {
                    None => g,
                    Some(s) => s.iter().zip(&g).map(|(x, y)| x + y).collect(),
                });
            }
        }
    }
    let Some(s) = sum else {
        return Meet::Improper;
    };
    let face_a: Vec<&Ray> = a.rays.iter().filter(|r| dot(&s, r) == 0).collect();
    let face_b: Vec<&Ray> = b.rays.iter().filter(|r| dot(&s, r) == 0).collect();
    if face_a.len() == face_b.len() && face_a.iter().all(|r| face_b.contains(r)) {
        Meet::Proper
    } else {
        Meet::Improper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i128]) -> Ray {
        v.to_vec()
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(det(&[r(&[2, 0]), r(&[0, 3])]), 6);
        assert_eq!(det(&[r(&[0, 1]), r(&[1, 0])]), -1);
        assert_eq!(det(&[r(&[1, 2, 3]), r(&[4, 5, 6]), r(&[7, 8, 10])]), -3);
        assert_eq!(det(&[r(&[1, 2]), r(&[2, 4])]), 0);
    }

    #[test]
    fn normal_is_orthogonal() {
        let a = r(&[1, 1, 0, 0]);
        let b = r(&[0, 1, 1, 0]);
        let c = r(&[0, 0, 1, 1]);
        let f = normal(&[&a, &b, &c]).unwrap();
        for v in [&a, &b, &c] {
            assert_eq!(dot(&f, v), 0);
        }
        assert!(normal(&[&a, &a, &c]).is_none());
    }

    #[test]
    fn square_cone_has_four_facets() {
        // cone over a square in the plane z = 1
        let cone = Cone::new(vec![
            r(&[0, 0, 1]),
            r(&[1, 0, 1]),
            r(&[1, 1, 1]),
            r(&[0, 1, 1]),
        ]);
        assert_eq!(cone.facets.len(), 4);
        assert!(cone.contains(&[1, 1, 2]));
        assert!(!cone.contains(&[2, 0, 1]));
        assert_eq!(triangulate(&cone.rays).len(), 2);
    }

    #[test]
    fn meet_detects_overlap_and_shared_faces() {
        let a = Cone::new(vec![r(&[1, 0, 0]), r(&[0, 1, 0]), r(&[0, 0, 1])]);
        let b = Cone::new(vec![r(&[1, 0, 0]), r(&[0, 1, 0]), r(&[1, 1, -1])]);
        assert_eq!(meet(&a, &b), Meet::Proper);
        assert_eq!(meet(&a, &a), Meet::Improper);
        let c = Cone::new(vec![r(&[1, 0, 0]), r(&[1, 1, 1]), r(&[0, 0, 1])]);
        assert_eq!(meet(&a, &c), Meet::Improper);
        // touching along a ray only
        let d = Cone::new(vec![r(&[1, 0, 0]), r(&[1, -1, 0]), r(&[1, 0, -1])]);
        assert_eq!(meet(&a, &d), Meet::Proper);
    }
}

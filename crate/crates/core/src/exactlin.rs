//! Exact rational and integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers and rationals;
//! there is no floating point anywhere in the crate. Matrices are small
//! (at most about 10x10), so the algorithms favor clarity over speed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<Int>;
pub type RatVec = Vec<Rat>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, LinError> {
    let s = s.trim();
    let err = || LinError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| err())?;
            let q: Int = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Formats a rational as `"p/q"`, or `"p"` for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rat]) -> Int {
    v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer_direction(v: &[Rat]) -> IntVec {
    let d = common_denominator(v);
    let scaled: IntVec = v
        .iter()
        .map(|x| (x * Rat::from_integer(d.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

macro_rules! dense_matrix {
    ($name:ident, $elem:ty) => {
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name {
            rows: usize,
            cols: usize,
            data: Vec<$elem>,
        }

        impl $name {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self {
                    rows,
                    cols,
                    data: vec![<$elem>::zero(); rows * cols],
                }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = <$elem>::one();
                }
                m
            }

            /// Builds a matrix from rows; all rows must have equal length.
            pub fn from_rows(rows: Vec<Vec<$elem>>) -> Result<Self, LinError> {
                let r = rows.len();
                let c = rows.first().map_or(0, |x| x.len());
                let mut data = Vec::with_capacity(r * c);
                for row in rows {
                    if row.len() != c {
                        return Err(LinError::Dimension {
                            expected: c,
                            got: row.len(),
                        });
                    }
                    data.extend(row);
                }
                Ok(Self {
                    rows: r,
                    cols: c,
                    data,
                })
            }

            pub fn rows(&self) -> usize {
                self.rows
            }

            pub fn cols(&self) -> usize {
                self.cols
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn column(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self[(i, j)].clone()).collect()
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[(j, i)] = self[(i, j)].clone();
                    }
                }
                t
            }

            pub fn mul(&self, other: &Self) -> Self {
                assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
                let mut out = Self::zeros(self.rows, other.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..other.cols {
                            let prod = a * &other[(k, j)];
                            out[(i, j)] += prod;
                        }
                    }
                }
                out
            }

            pub fn mul_vec(&self, v: &[$elem]) -> Vec<$elem> {
                assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
                (0..self.rows)
                    .map(|i| {
                        self.row(i)
                            .iter()
                            .zip(v)
                            .fold(<$elem>::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect()
            }

            fn swap_rows(&mut self, a: usize, b: usize) {
                if a != b {
                    for j in 0..self.cols {
                        self.data.swap(a * self.cols + j, b * self.cols + j);
                    }
                }
            }

            #[allow(dead_code)]
            fn swap_cols(&mut self, a: usize, b: usize) {
                if a != b {
                    for i in 0..self.rows {
                        self.data.swap(i * self.cols + a, i * self.cols + b);
                    }
                }
            }
        }

        impl std::ops::Index<(usize, usize)> for $name {
            type Output = $elem;
            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                &self.data[i * self.cols + j]
            }
        }

        impl std::ops::IndexMut<(usize, usize)> for $name {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                &mut self.data[i * self.cols + j]
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                writeln!(f, "{}x{} [", self.rows, self.cols)?;
                for i in 0..self.rows {
                    let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                    writeln!(f, "  [{}]", row.join(", "))?;
                }
                write!(f, "]")
            }
        }
    };
}

dense_matrix!(IntMat, Int);
dense_matrix!(RatMat, Rat);

impl IntMat {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    pub fn to_rat(&self) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect(),
        }
    }

    /// Determinant of a square integer matrix.
    pub fn determinant(&self) -> Int {
        self.to_rat().determinant().to_integer()
    }
}

impl RatMat {
    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                for k in c..n {
                    let d = &f * &m[(c, k)];
                    m[(r, k)] -= d;
                }
            }
        }
        det
    }

    /// Row echelon reduction; returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for k in 0..m.cols {
                let v = &m[(r, k)] * &inv;
                m[(r, k)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for k in 0..m.cols {
                    let d = &f * &m[(r, k)];
                    m[(i, k)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<RatMat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl Smith {
    /// Nonzero invariant factors d1 | d2 | ... in order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by elementary row and column operations, choosing the
/// pivot of least absolute value at each step.
pub fn smith_normal_form(a: &IntMat) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = &s[(i, t)] / &s[(t, t)];
                if !q.is_zero() {
                    row_axpy(&mut s, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = &s[(t, j)] / &s[(t, t)];
                if !q.is_zero() {
                    col_axpy(&mut s, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -Int::one();
                    row_axpy(&mut s, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            for j in 0..n {
                s[(t, j)] = -s[(t, j)].clone();
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    finish(s, u, v)
}

fn finish(s: IntMat, u: IntMat, v: IntMat) -> Smith {
    Smith { s, u, v }
}

// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMat, dst: usize, src: usize, q: &Int) {
    for j in 0..m.cols {
        let d = q * &m[(src, j)];
        m[(dst, j)] -= d;
    }
}

// col[dst] -= q * col[src]
fn col_axpy(m: &mut IntMat, dst: usize, src: usize, q: &Int) {
    for i in 0..m.rows {
        let d = q * &m[(i, src)];
        m[(i, dst)] -= d;
    }
}

/// Lattice basis of `{x in Z^n : a x = 0}`.
pub fn integer_kernel_basis(a: &IntMat) -> Vec<IntVec> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols).map(|j| snf.v.column(j)).collect()
}

/// Some integer solution of `a x = b`, if one exists.
pub fn solve_integer(a: &IntMat, b: &[Int]) -> Result<Option<IntVec>, LinError> {
    if b.len() != a.rows {
        return Err(LinError::Dimension {
            expected: a.rows,
            got: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let d = snf.invariant_factors();
    let mut y = vec![Int::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < d.len() {
            if !ubi.is_multiple_of(&d[i]) {
                return Ok(None);
            }
            y[i] = ubi / &d[i];
        } else if !ubi.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(snf.v.mul_vec(&y)))
}

/// Exact solution set of a rational linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: RatVec,
    /// Basis of the solution space of the homogeneous system.
    pub nullspace: Vec<RatVec>,
}

/// Solves `a x = b` exactly. `None` when the system is inconsistent.
pub fn solve_exact(a: &RatMat, b: &[Rat]) -> Result<Option<Solution>, LinError> {
    if b.len() != a.rows {
        return Err(LinError::Dimension {
            expected: a.rows,
            got: b.len(),
        });
    }
    let n = a.cols;
    let mut aug = RatMat::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = red[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); n];
            x[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -red[(r, f)].clone();
            }
            x
        })
        .collect();
    Ok(Some(Solution {
        particular,
        nullspace,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unimodular(m: &IntMat) -> bool {
        m.determinant().abs().is_one()
    }

    fn check_snf(a: &IntMat) {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.s);
        assert!(is_unimodular(&snf.u) && is_unimodular(&snf.v));
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity_and_diagonal() {
        let id = IntMat::identity(3);
        assert_eq!(smith_normal_form(&id).s, id);
        let d = IntMat::from_i64(&[vec![2, 0], vec![0, 4]]);
        assert_eq!(smith_normal_form(&d).s, d);
    }

    #[test]
    fn snf_fixes_divisibility() {
        let a = IntMat::from_i64(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), vec![int(1), int(6)]);
        check_snf(&a);
        check_snf(&IntMat::from_i64(&[
            vec![4, 6, 2],
            vec![6, 9, 3],
            vec![0, 0, 5],
        ]));
        check_snf(&IntMat::from_i64(&[vec![0, 0], vec![0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel_basis(&IntMat::from_i64(&[vec![1, -1]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec![int(1), int(1)] || k[0] == vec![int(-1), int(-1)]);
        assert!(integer_kernel_basis(&IntMat::identity(3)).is_empty());
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(1, 2), rat(3, 1)];
        let s = solve_exact(&RatMat::identity(2), &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.nullspace.is_empty());

        let inconsistent = RatMat::from_rows(vec![vec![rat_int(1)], vec![rat_int(1)]]).unwrap();
        assert!(solve_exact(&inconsistent, &[rat_int(1), rat_int(2)])
            .unwrap()
            .is_none());

        let under = RatMat::from_rows(vec![vec![rat_int(1), rat_int(1)]]).unwrap();
        let s = solve_exact(&under, &[rat_int(2)]).unwrap().unwrap();
        assert_eq!(s.nullspace.len(), 1);
        assert_eq!(under.mul_vec(&s.particular), vec![rat_int(2)]);
    }

    #[test]
    fn integer_solve() {
        let a = IntMat::from_i64(&[vec![2, 4]]);
        assert!(solve_integer(&a, &[int(3)]).unwrap().is_none());
        let x = solve_integer(&a, &[int(6)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(6)]);
    }

    #[test]
    fn rational_parse_roundtrip() {
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(format_rat(&rat(4, 2)), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}

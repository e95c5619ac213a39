use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::GeomError;
use crate::exactlin::{int, rat, rat_int, Int, Rat, RatMat, RatVec};

/// Smallest and largest supported ambient dimensions.
pub const MIN_N: usize = 3;
pub const MAX_N: usize = 5;

/// The lattice pair for `G = A1(n)`.
///
/// `N = {x in (1/2 Z)^n : sum x_i in Z}` holds the one-parameter subgroups of
/// the quotient torus; `M = {a in Z^n : all a_i congruent mod 2}` is its dual,
/// the exponents of the `G`-invariant Laurent monomials.
#[derive(Clone, Debug)]
pub struct LatticeContext {
    n: usize,
    basis: RatMat,
    basis_inv: RatMat,
}

impl LatticeContext {
    pub fn new(n: usize) -> Result<Self, GeomError> {
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(GeomError::UnsupportedDimension(n));
        }
        // rows v12, v23, ..., v(n-1)n, e_n
        let mut rows = Vec::with_capacity(n);
        for i in 0..n - 1 {
            rows.push(midpoint(n, i, i + 1));
        }
        rows.push(unit(n, n - 1));
        let basis = RatMat::from_rows(rows).expect("square basis");
        let basis_inv = basis.inverse().expect("N basis is invertible");
        Ok(Self {
            n,
            basis,
            basis_inv,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows generate `N` inside `Q^n`.
    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    /// `|G| = 2^(n-1)`, also the index `[N : Z^n]`.
    pub fn group_order(&self) -> u64 {
        1 << (self.n - 1)
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), GeomError> {
        if v.len() != self.n {
            return Err(GeomError::Dimension {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn lattice_member(&self, v: &[Rat]) -> Result<bool, GeomError> {
        self.check_len(v)?;
        let two = rat_int(2);
        let halves = v.iter().all(|x| (x * &two).is_integer());
        let sum: Rat = v.iter().sum();
        Ok(halves && sum.is_integer())
    }

    /// Least `m >= 1` with `m v in N`.
    pub fn primitive_multiple(&self, v: &[Rat]) -> Result<u64, GeomError> {
        self.check_len(v)?;
        if v.iter().all(Zero::is_zero) {
            return Err(GeomError::ZeroVector);
        }
        let two = rat_int(2);
        let sum: Rat = v.iter().sum();
        let m = v
            .iter()
            .map(|x| (x * &two).denom().clone())
            .fold(sum.denom().clone(), |acc, d| acc.lcm(&d));
        m.to_u64().ok_or(GeomError::Overflow)
    }

    /// Integer coordinates of `v` in the lattice basis, or `None` if `v` is not in `N`.
    pub fn coordinates(&self, v: &[Rat]) -> Result<Option<Vec<Int>>, GeomError> {
        self.check_len(v)?;
        // v = c * basis  =>  c = v * basis^{-1}
        let c = self.basis_inv.transpose().mul_vec(v);
        if c.iter().all(Rat::is_integer) {
            Ok(Some(c.into_iter().map(|x| x.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    /// Points of `Delta ∩ N`: the unit vectors and the midpoints `v^{ij}`.
    pub fn integral_points_in_delta(&self) -> Vec<RatVec> {
        // coordinates k_i / 2 with k_i >= 0 and sum k_i = 2
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            out.push(unit(n, i));
            for j in i + 1..n {
                out.push(midpoint(n, i, j));
            }
        }
        out.sort();
        out
    }
}

pub fn unit(n: usize, i: usize) -> RatVec {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// `v^{ij} = (e^i + e^j) / 2`.
pub fn midpoint(n: usize, i: usize, j: usize) -> RatVec {
    let mut v = vec![Rat::zero(); n];
    v[i] += rat(1, 2);
    v[j] += rat(1, 2);
    v
}

/// Barycenter of `Delta`.
pub fn center(n: usize) -> RatVec {
    vec![rat(1, n as i64); n]
}

/// `u^i = 1/4 * sum_{a != i} e^a` (n = 5).
pub fn u_point(n: usize, i: usize) -> RatVec {
    (0..n)
        .map(|a| if a == i { Rat::zero() } else { rat(1, 4) })
        .collect()
}

/// `w^i = 1/6 * (e^i + sum_a e^a)` (n = 5).
pub fn w_point(n: usize, i: usize) -> RatVec {
    (0..n)
        .map(|a| if a == i { rat(2, 6) } else { rat(1, 6) })
        .collect()
}

/// A Laurent monomial `Z^a`, `a` an integer vector with possibly negative entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentMono(pub Vec<i64>);

impl LaurentMono {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// `T_i = Z_i^2`
    pub fn t(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 2;
        Self(a)
    }

    /// `Z^S / Z^{complement of S}`; covers `U_i` (|S| = 1), `V_ij` (|S| = 2)
    /// and their inverses.
    pub fn split(n: usize, s: &[usize]) -> Self {
        Self(
            (0..n)
                .map(|a| if s.contains(&a) { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn u(n: usize, i: usize) -> Self {
        Self::split(n, &[i])
    }

    pub fn v(n: usize, i: usize, j: usize) -> Self {
        Self::split(n, &[i, j])
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, e: i64) -> Self {
        Self(self.0.iter().map(|a| a * e).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Membership in `M`: all exponents congruent mod 2.
    pub fn in_m(&self) -> bool {
        self.0.windows(2).all(|w| (w[0] - w[1]).rem_euclid(2) == 0)
    }

    pub fn pairing(&self, v: &[Rat]) -> Rat {
        self.0
            .iter()
            .zip(v)
            .map(|(&a, x)| x * Rat::from_integer(int(a)))
            .sum()
    }

    pub fn pairing_int(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Splits into the positive and negative parts `(a+, a-)`, `a = a+ - a-`.
    pub fn split_signs(&self) -> (Vec<u32>, Vec<u32>) {
        let plus = self.0.iter().map(|&a| a.max(0) as u32).collect();
        let minus = self.0.iter().map(|&a| (-a).max(0) as u32).collect();
        (plus, minus)
    }
}

impl fmt::Display for LaurentMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_side = |pos: bool| {
            let parts: Vec<String> = self
                .0
                .iter()
                .enumerate()
                .filter_map(|(i, &a)| {
                    let e = if pos { a } else { -a };
                    match e {
                        e if e <= 0 => None,
                        1 => Some(format!("Z{}", i + 1)),
                        e => Some(format!("Z{}^{}", i + 1, e)),
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        let num = fmt_side(true);
        let den = fmt_side(false);
        if den == "1" {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

/// Checks that `x` lies in `Delta`: nonnegative coordinates summing to 1.
pub fn in_delta(x: &[Rat]) -> bool {
    x.iter().all(|c| !c.is_negative()) && x.iter().sum::<Rat>() == Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let ctx = LatticeContext::new(4).unwrap();
        assert!(ctx.lattice_member(&unit(4, 0)).unwrap());
        let c = center(4);
        assert!(!ctx.lattice_member(&c).unwrap());
        let two_c: RatVec = c.iter().map(|x| x * rat_int(2)).collect();
        assert!(ctx.lattice_member(&two_c).unwrap());
        assert!(!ctx
            .lattice_member(&[rat(1, 2), rat_int(0), rat_int(0), rat_int(0)])
            .unwrap());
        assert!(ctx.lattice_member(&[rat_int(1)]).is_err());
    }

    #[test]
    fn primitive_multiples() {
        let ctx4 = LatticeContext::new(4).unwrap();
        assert_eq!(ctx4.primitive_multiple(&midpoint(4, 0, 1)).unwrap(), 1);
        assert_eq!(ctx4.primitive_multiple(&center(4)).unwrap(), 2);
        let ctx5 = LatticeContext::new(5).unwrap();
        for i in 0..5 {
            assert_eq!(ctx5.primitive_multiple(&w_point(5, i)).unwrap(), 3);
            assert_eq!(ctx5.primitive_multiple(&u_point(5, i)).unwrap(), 2);
        }
        assert_eq!(
            ctx5.primitive_multiple(&vec![Rat::zero(); 5]),
            Err(GeomError::ZeroVector)
        );
    }

    #[test]
    fn basis_has_index_group_order() {
        for n in MIN_N..=MAX_N {
            let ctx = LatticeContext::new(n).unwrap();
            let det = ctx.basis().determinant();
            assert_eq!(det.abs().recip(), rat_int(ctx.group_order() as i64));
            for row in 0..n {
                assert!(ctx.lattice_member(ctx.basis().row(row)).unwrap());
            }
        }
        assert!(LatticeContext::new(6).is_err());
    }

    #[test]
    fn coordinates_detect_non_members() {
        let ctx = LatticeContext::new(4).unwrap();
        assert!(ctx.coordinates(&center(4)).unwrap().is_none());
        let c = ctx.coordinates(&midpoint(4, 0, 2)).unwrap().unwrap();
        let back: RatVec = (0..4)
            .map(|j| {
                (0..4)
                    .map(|i| ctx.basis()[(i, j)].clone() * Rat::from_integer(c[i].clone()))
                    .sum()
            })
            .collect();
        assert_eq!(back, midpoint(4, 0, 2));
    }

    #[test]
    fn m_membership_and_display() {
        assert!(LaurentMono::t(4, 1).in_m());
        assert!(LaurentMono::u(4, 1).in_m());
        assert!(!LaurentMono(vec![1, 0, 0, 0]).in_m());
        assert_eq!(LaurentMono::v(4, 0, 1).to_string(), "Z1*Z2/(Z3*Z4)");
        assert_eq!(LaurentMono::t(4, 3).to_string(), "Z4^2");
    }
}

//! Binomial ideals of relations among Laurent monomials.
//!
//! A list of monomials `m_1, ..., m_k` in `M` presents the affine toric
//! chart `Spec C[m_1, ..., m_k]`. Its defining ideal lives in
//! `Q[x_1, ..., x_k]` and is the lattice ideal of the relation lattice
//! `{u : sum u_i m_i = 0}`. We start from binomials of a lattice basis and
//! saturate by the product of all variables.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{integer_kernel_basis, IntMat, Rat};
use crate::geom::LaurentMono;
use crate::grobner::{buchberger, GrobnerError, Mono, MonomialOrder, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("empty monomial list")]
    Empty,
    #[error("monomials of different lengths")]
    Ragged,
    #[error("binomial has {got} variables, expected {expected}")]
    IndexOutOfRange { expected: usize, got: usize },
    #[error("relation entry too large")]
    Overflow,
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
}

/// Ordered monomial generators of a chart, with display names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialList {
    pub n: usize,
    pub monos: Vec<LaurentMono>,
    pub names: Vec<String>,
}

impl MonomialList {
    pub fn new(monos: Vec<LaurentMono>, names: Vec<String>) -> Result<Self, ToricError> {
        let n = monos.first().ok_or(ToricError::Empty)?.n();
        if monos.iter().any(|m| m.n() != n) || names.len() != monos.len() {
            return Err(ToricError::Ragged);
        }
        Ok(Self { n, monos, names })
    }

    /// Names `x1, x2, ...`.
    pub fn unnamed(monos: Vec<LaurentMono>) -> Result<Self, ToricError> {
        let names = (1..=monos.len()).map(|i| format!("x{i}")).collect();
        Self::new(monos, names)
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    /// Laurent monomial `prod m_i^{u_i}`.
    pub fn evaluate(&self, u: &[i64]) -> LaurentMono {
        self.monos
            .iter()
            .zip(u)
            .fold(LaurentMono::one(self.n), |acc, (m, &e)| acc.mul(&m.pow(e)))
    }
}

/// `x^plus - x^minus`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Binomial {
    pub plus: Mono,
    pub minus: Mono,
}

impl Binomial {
    /// From a relation vector `u = plus - minus`.
    pub fn from_relation(u: &[i64]) -> Self {
        let plus = u.iter().map(|&a| a.max(0) as u32).collect();
        let minus = u.iter().map(|&a| (-a).max(0) as u32).collect();
        Self { plus, minus }
    }

    pub fn relation(&self) -> Vec<i64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::binomial(self.plus.clone(), Rat::one(), self.minus.clone())
    }

    /// Orients the binomial so that the relation's first nonzero entry is positive.
    fn oriented(self) -> Self {
        match self.relation().iter().find(|&&a| a != 0) {
            Some(&a) if a < 0 => Self {
                plus: self.minus,
                minus: self.plus,
            },
            _ => self,
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        let side = |m: &[u32]| {
            let parts: Vec<String> = m
                .iter()
                .zip(names)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, name)| {
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        format!("{} = {}", side(&self.plus), side(&self.minus))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialIdeal {
    pub names: Vec<String>,
    pub binomials: Vec<Binomial>,
}

impl BinomialIdeal {
    pub fn polys(&self) -> Vec<Poly> {
        self.binomials.iter().map(Binomial::to_poly).collect()
    }

    pub fn equations(&self) -> Vec<String> {
        self.binomials
            .iter()
            .map(|b| b.display(&self.names))
            .collect()
    }
}

impl fmt::Display for BinomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.equations().join(", "))
    }
}

/// Grevlex-like order on the chart variables used for comparisons.
pub fn standard_order(k: usize) -> MonomialOrder {
    MonomialOrder::weight(vec![1; k]).expect("positive weights")
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Greedy pairwise size reduction, then sign normalization and sorting.
fn reduce_basis(mut basis: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand: Vec<i64> = basis[i]
                        .iter()
                        .zip(&basis[j])
                        .map(|(a, b)| a - sign * b)
                        .collect();
                    if l1(&cand) < l1(&basis[i]) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    for v in basis.iter_mut() {
        if v.iter().find(|&&a| a != 0).is_some_and(|&a| a < 0) {
            v.iter_mut().for_each(|a| *a = -*a);
        }
    }
    basis.sort_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| b.cmp(a)));
    basis
}

/// Lattice basis of the integer relations among the generators.
pub fn relation_lattice(gens: &MonomialList) -> Result<Vec<Vec<i64>>, ToricError> {
    if gens.is_empty() {
        return Err(ToricError::Empty);
    }
    // rows: coordinates of Z^n, columns: generators
    let rows: Vec<Vec<i64>> = (0..gens.n)
        .map(|r| gens.monos.iter().map(|m| m.0[r]).collect())
        .collect();
    let a = IntMat::from_i64(&rows);
    let kernel = integer_kernel_basis(&a)
        .into_iter()
        .map(|v| {
            v.iter()
                .map(|x| x.to_i64().ok_or(ToricError::Overflow))
                .collect::<Result<Vec<i64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(reduce_basis(kernel))
}

/// Exact Laurent identity `prod m_i^{plus_i} = prod m_i^{minus_i}`.
pub fn check_relation(gens: &MonomialList, b: &Binomial) -> Result<bool, ToricError> {
    if b.plus.len() != gens.len() || b.minus.len() != gens.len() {
        return Err(ToricError::IndexOutOfRange {
            expected: gens.len(),
            got: b.plus.len().max(b.minus.len()),
        });
    }
    Ok(gens.evaluate(&b.relation()).is_one())
}

/// `<gens> : (prod of the variables in `vars`)^infinity`, via one
/// auxiliary variable `s` and the relation `s * prod x - 1`.
pub fn saturate(gens: &[Poly], vars: &[usize]) -> Result<Vec<Poly>, ToricError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let k = first.n();
    let lift = |m: &Mono| {
        let mut m = m.clone();
        m.push(0);
        m
    };
    let mut ext: Vec<Poly> = gens
        .iter()
        .map(|g| Poly::from_terms(k + 1, g.terms().map(|(m, c)| (c.clone(), lift(m)))))
        .collect();
    let mut sx = vec![0u32; k + 1];
    for &v in vars {
        sx[v] = 1;
    }
    sx[k] = 1;
    ext.push(Poly::binomial(sx, Rat::one(), vec![0; k + 1]));
    let gb = buchberger(&ext, &MonomialOrder::Elimination { var: k })?;
    Ok(gb
        .polys
        .into_iter()
        .filter(|p| p.terms().all(|(m, _)| m[k] == 0))
        .map(|p| Poly::from_terms(k, p.terms().map(|(m, c)| (c.clone(), m[..k].to_vec()))))
        .collect())
}

fn as_binomial(p: &Poly) -> Option<Binomial> {
    let terms: Vec<(&Mono, &Rat)> = p.terms().collect();
    match terms.as_slice() {
        [(a, ca), (b, cb)] if ca.abs().is_one() && *ca + *cb == Rat::zero() => {
            let (plus, minus) = if ca.is_positive() { (a, b) } else { (b, a) };
            Some(
                Binomial {
                    plus: (*plus).clone(),
                    minus: (*minus).clone(),
                }
                .oriented(),
            )
        }
        _ => None,
    }
}

/// Generators of the full lattice ideal of relations among `gens`: the
/// reduced Groebner basis under [`standard_order`], as binomials.
pub fn toric_ideal(gens: &MonomialList) -> Result<BinomialIdeal, ToricError> {
    let lattice = relation_lattice(gens)?;
    let k = gens.len();
    let start: Vec<Poly> = lattice
        .iter()
        .map(|u| Binomial::from_relation(u).to_poly())
        .collect();
    let sat = saturate(&start, &(0..k).collect::<Vec<_>>())?;
    let gb = buchberger(&sat, &standard_order(k))?;
    let binomials = gb
        .polys
        .iter()
        .map(|p| as_binomial(p).expect("lattice ideals have binomial reduced bases"))
        .collect();
    Ok(BinomialIdeal {
        names: gens.names.clone(),
        binomials,
    })
}

/// `<a> == <b>` for binomial systems over the same variables.
pub fn same_ideal(a: &[Binomial], b: &[Binomial], k: usize) -> Result<bool, ToricError> {
    let pa: Vec<Poly> = a.iter().map(Binomial::to_poly).collect();
    let pb: Vec<Poly> = b.iter().map(Binomial::to_poly).collect();
    Ok(crate::grobner::ideal_equal(&pa, &pb, &standard_order(k))?)
}

/// Parses equations `lhs = rhs` written in the list's variable names.
pub fn parse_binomial(s: &str, names: &[String]) -> Option<Binomial> {
    let (l, r) = s.split_once('=')?;
    let side = |t: &str| -> Option<Mono> {
        let mut m = vec![0u32; names.len()];
        let t = t.trim();
        if t == "1" {
            return Some(m);
        }
        for f in t.split('*') {
            let (name, e) = match f.trim().split_once('^') {
                Some((a, e)) => (a, e.parse().ok()?),
                None => (f.trim(), 1),
            };
            let i = names.iter().position(|x| x == name)?;
            m[i] += e;
        }
        Some(m)
    };
    Some(Binomial {
        plus: side(l)?,
        minus: side(r)?,
    })
}

/// Generators `t_1..t_n, ub_1..ub_n` of the dual monoid of the core cone,
/// with `t_i = Z_i^2` and `ub_i = U_i^{-1}`.
pub fn core_generators(n: usize) -> MonomialList {
    let mut monos: Vec<LaurentMono> = (0..n).map(|i| LaurentMono::t(n, i)).collect();
    monos.extend((0..n).map(|i| LaurentMono::u(n, i).inverse()));
    let mut names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    names.extend((1..=n).map(|i| format!("ub{i}")));
    MonomialList { n, monos, names }
}

/// How to read the `n = 4` quadrics pairing two `t`'s with two `ub`'s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoreReading {
    /// `t_i t_j = ub_i ub_j`
    Literal,
    /// `t_i t_j = ub_k ub_l` with `{k, l}` the complement of `{i, j}`
    Complementary,
}

/// Expected equations of the core chart. For `n = 5` the reading is ignored:
/// `t_i ub_i = t_j ub_j` and `ub_i ub_j = t_k t_l t_m`.
pub fn core_presentation(n: usize, reading: CoreReading) -> Vec<Binomial> {
    let var = |t: bool, i: usize| if t { i } else { n + i };
    let mono = |vars: &[usize]| -> Mono {
        let mut m = vec![0u32; 2 * n];
        for &v in vars {
            m[v] += 1;
        }
        m
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(Binomial {
                plus: mono(&[var(true, i), var(false, i)]),
                minus: mono(&[var(true, j), var(false, j)]),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&a| a != i && a != j).collect();
            let b = match (n, reading) {
                (4, CoreReading::Literal) => Binomial {
                    plus: mono(&[var(true, i), var(true, j)]),
                    minus: mono(&[var(false, i), var(false, j)]),
                },
                (4, CoreReading::Complementary) => Binomial {
                    plus: mono(&[var(true, i), var(true, j)]),
                    minus: mono(&[var(false, rest[0]), var(false, rest[1])]),
                },
                _ => Binomial {
                    plus: mono(&[var(false, i), var(false, j)]),
                    minus: mono(&rest.iter().map(|&a| var(true, a)).collect::<Vec<_>>()),
                },
            };
            out.push(b);
        }
    }
    out
}

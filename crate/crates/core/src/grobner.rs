//! Polynomials over the rationals and Buchberger's algorithm.
//!
//! Monomial orders are weight orders with a lexicographic tie-break, plus a
//! one-variable elimination order used for saturation. Ideals are small
//! (a dozen generators in at most eleven variables), so polynomials are
//! plain ordered maps and leading terms are found by scanning.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{format_rat, parse_rat, Rat};

/// Exponent vector of a monomial `Z^a`, all entries nonnegative.
pub type Mono = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrobnerError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("negative weight {0} in weight order")]
    NegativeWeight(i64),
    #[error("monomial ideal is not zero-dimensional: no pure power of Z{0}")]
    InfiniteStaircase(usize),
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn sub_mono(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_mono(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Formats `Z1^2*Z3`, or `1` for the unit monomial.
pub fn format_mono(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("Z{}", i + 1)
            } else {
                format!("Z{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TieBreak {
    /// `Z1 > Z2 > ... > Zn`
    Lex,
    /// `Zn > ... > Z1`
    ReverseLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightOrder {
    pub weights: Vec<i64>,
    pub tie: TieBreak,
}

impl WeightOrder {
    pub fn new(weights: Vec<i64>, tie: TieBreak) -> Result<Self, GrobnerError> {
        if let Some(&w) = weights.iter().find(|&&w| w < 0) {
            return Err(GrobnerError::NegativeWeight(w));
        }
        Ok(Self { weights, tie })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialOrder {
    Weight(WeightOrder),
    /// The degree in variable `var` decides first, then graded reverse lex.
    Elimination {
        var: usize,
    },
}

impl MonomialOrder {
    pub fn weight(weights: Vec<i64>) -> Result<Self, GrobnerError> {
        Ok(Self::Weight(WeightOrder::new(weights, TieBreak::Lex)?))
    }

    /// Total order on monomials of equal length.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            Self::Weight(w) => {
                let dot = |m: &[u32]| -> i64 {
                    m.iter().zip(&w.weights).map(|(&e, &x)| e as i64 * x).sum()
                };
                dot(a).cmp(&dot(b)).then_with(|| match w.tie {
                    TieBreak::Lex => a.cmp(b),
                    TieBreak::ReverseLex => a.iter().rev().cmp(b.iter().rev()),
                })
            }
            Self::Elimination { var } => a[*var].cmp(&b[*var]).then_with(|| grevlex(a, b)),
        }
    }

    fn check(&self, n: usize) -> Result<(), GrobnerError> {
        match self {
            Self::Weight(w) if w.weights.len() != n => Err(GrobnerError::Dimension {
                expected: w.weights.len(),
                got: n,
            }),
            Self::Elimination { var } if *var >= n => Err(GrobnerError::Dimension {
                expected: var + 1,
                got: n,
            }),
            _ => Ok(()),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(a)
        .cmp(&degree(b))
        .then_with(|| b.iter().rev().cmp(a.iter().rev()))
}

/// Compares two monomials under `order`.
pub fn compare(order: &MonomialOrder, a: &[u32], b: &[u32]) -> Result<Ordering, GrobnerError> {
    if a.len() != b.len() {
        return Err(GrobnerError::Dimension {
            expected: a.len(),
            got: b.len(),
        });
    }
    order.check(a.len())?;
    Ok(order.cmp(a, b))
}

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::term(c, vec![0; n])
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    pub fn term(c: Rat, m: Mono) -> Self {
        let mut p = Self::zero(m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Mono) -> Self {
        Self::term(Rat::one(), m)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Rat, Mono)>) -> Self {
        let mut p = Self::zero(n);
        for (c, m) in terms {
            assert_eq!(m.len(), n, "monomial length");
            p.add_term(c, m);
        }
        p
    }

    /// `x^plus - c * x^minus`
    pub fn binomial(plus: Mono, c: Rat, minus: Mono) -> Self {
        let n = plus.len();
        Self::from_terms(n, [(Rat::one(), plus), (-c, minus)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, c: Rat, m: Mono) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(c.clone(), m.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// `c * Z^m * self`
    pub fn mul_term(&self, c: &Rat, m: &[u32]) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (add_mono(k, m), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.n);
        for (m, c) in &other.terms {
            p = p.add(&self.mul_term(c, m));
        }
        p
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Mono, &Rat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Mono> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Terms in descending order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Mono, Rat)> {
        let mut t: Vec<(Mono, Rat)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    /// Substitutes rational values for the variables.
    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().zip(x).fold(c.clone(), |acc, (&e, v)| {
                    acc * num_traits::pow(v.clone(), e as usize)
                })
            })
            .sum()
    }

    /// Human-readable form with terms in descending order.
    pub fn display(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = format_mono(&m);
            let body = match (a.is_one(), mono.as_str()) {
                (true, _) => mono.clone(),
                (false, "1") => format_rat(&a),
                (false, _) => format!("{}*{}", format_rat(&a), mono),
            };
            match (k, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }

    /// Parses sums of terms like `Z1^2 - 3/2*Z2*Z3 + 1`.
    pub fn parse(s: &str, n: usize) -> Result<Self, GrobnerError> {
        let err = || GrobnerError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        pieces.push((neg, cur));
        let mut p = Self::zero(n);
        for (neg, t) in pieces {
            if t.is_empty() {
                return Err(err());
            }
            let mut c = Rat::one();
            let mut m = vec![0u32; n];
            for f in t.split('*') {
                if let Some(rest) = f.strip_prefix('Z') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err())?),
                        None => (rest, 1),
                    };
                    let i: usize = idx.parse().map_err(|_| err())?;
                    if i == 0 || i > n {
                        return Err(err());
                    }
                    m[i - 1] += e;
                } else {
                    c *= parse_rat(f).map_err(|_| err())?;
                }
            }
            p.add_term(if neg { -c } else { c }, m);
        }
        Ok(p)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lex = MonomialOrder::Weight(WeightOrder {
            weights: vec![0; self.n],
            tie: TieBreak::Lex,
        });
        write!(f, "{}", self.display(&lex))
    }
}

/// Serialized term: coefficient `"p/q"` and exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exponents: Mono,
}

pub fn serialize_poly(p: &Poly, order: &MonomialOrder) -> Vec<TermRecord> {
    p.sorted_terms(order)
        .into_iter()
        .map(|(m, c)| TermRecord {
            coeff: format_rat(&c),
            exponents: m,
        })
        .collect()
}

/// A reduced Groebner basis together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub n: usize,
    /// Monic elements sorted by descending leading monomial.
    pub polys: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial(&self.order).expect("nonzero").clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1
            && self.polys[0].len() == 1
            && self.polys[0].coefficient(&vec![0; self.n]).is_one()
    }
}

fn reduce_full(p: &Poly, basis: &[Poly], lts: &[(Mono, Rat)], order: &MonomialOrder) -> Poly {
    let mut p = p.clone();
    let mut r = Poly::zero(p.n);
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match lts.iter().position(|(lm, _)| divides(lm, &m)) {
            Some(k) => {
                let q = sub_mono(&m, &lts[k].0);
                let f = &c / &lts[k].1;
                p = p.sub(&basis[k].mul_term(&f, &q));
            }
            None => {
                p.terms.remove(&m);
                r.terms.insert(m, c);
            }
        }
    }
    r
}

fn leading_terms(basis: &[Poly], order: &MonomialOrder) -> Vec<(Mono, Rat)> {
    basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("nonzero");
            (m.clone(), c.clone())
        })
        .collect()
}

fn s_poly(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let l = lcm(mf, mg);
    f.mul_term(&cf.recip(), &sub_mono(&l, mf))
        .sub(&g.mul_term(&cg.recip(), &sub_mono(&l, mg)))
}

/// Remainder of `p` on full division by the basis.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    let lts = leading_terms(&gb.polys, &gb.order);
    reduce_full(p, &gb.polys, &lts, &gb.order)
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly], order: &MonomialOrder) -> Result<GroebnerBasis, GrobnerError> {
    let n = gens.first().map_or(0, Poly::n);
    if let Some(g) = gens.iter().find(|g| g.n != n) {
        return Err(GrobnerError::Dimension {
            expected: n,
            got: g.n,
        });
    }
    if !gens.is_empty() {
        order.check(n)?;
    }
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if !g.is_zero() && !basis.contains(&g.monic(order)) {
            basis.push(g.monic(order));
        }
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis {
            order: order.clone(),
            n,
            polys: Vec::new(),
        });
    }
    let mut lts = leading_terms(&basis, order);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    loop {
        // pick the pair with the smallest lcm degree
        let Some(pos) = (0..pairs.len()).min_by_key(|&k| {
            let (i, j) = pairs[k];
            (degree(&lcm(&lts[i].0, &lts[j].0)), i, j)
        }) else {
            break;
        };
        let (i, j) = pairs.swap_remove(pos);
        done.insert((i, j));
        let l = lcm(&lts[i].0, &lts[j].0);
        if coprime(&lts[i].0, &lts[j].0) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&lts[k].0, &l)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce_full(&s, &basis, &lts, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        let k = basis.len();
        lts.push({
            let (m, c) = r.leading_term(order).expect("nonzero");
            (m.clone(), c.clone())
        });
        basis.push(r);
        for a in 0..k {
            pairs.push((a, k));
        }
    }
    Ok(GroebnerBasis {
        order: order.clone(),
        n,
        polys: interreduce(basis, order),
    })
}

fn interreduce(basis: Vec<Poly>, order: &MonomialOrder) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let lts: Vec<Mono> = basis
        .iter()
        .map(|p| p.leading_monomial(order).expect("nonzero").clone())
        .collect();
    let mut keep: Vec<usize> = Vec::new();
    for (i, m) in lts.iter().enumerate() {
        let redundant = lts
            .iter()
            .enumerate()
            .any(|(j, o)| j != i && divides(o, m) && (o != m || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Poly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let olts = leading_terms(&others, order);
        let lt = minimal[i]
            .leading_term(order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero");
        let mut tail = minimal[i].clone();
        tail.terms.remove(&lt.0);
        let mut red = reduce_full(&tail, &others, &olts, order);
        red.terms.insert(lt.0, lt.1);
        out.push(red.monic(order));
    }
    out.sort_by(|a, b| {
        order.cmp(
            b.leading_monomial(order).unwrap(),
            a.leading_monomial(order).unwrap(),
        )
    });
    out
}

/// Leading monomials of a reduced basis, which generate the initial ideal.
pub fn initial_ideal(gb: &GroebnerBasis) -> Vec<Mono> {
    let mut l = gb.leading_monomials();
    l.sort();
    l
}

/// Canonical staircase order: ascending degree, then `Z1` before `Z2`.
pub fn staircase_order(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| b.cmp(a))
}

/// Removes generators divisible by others; canonical sort.
pub fn minimalize(gens: &[Mono]) -> Vec<Mono> {
    let mut out: Vec<Mono> = Vec::new();
    for (i, m) in gens.iter().enumerate() {
        let redundant = gens
            .iter()
            .enumerate()
            .any(|(j, o)| j != i && divides(o, m) && (o != m || j < i));
        if !redundant {
            out.push(m.clone());
        }
    }
    out.sort_by(|a, b| staircase_order(a, b));
    out
}

/// Monomials outside the monomial ideal generated by `gens`.
pub fn staircase(gens: &[Mono], n: usize) -> Result<Vec<Mono>, GrobnerError> {
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(GrobnerError::Dimension {
            expected: n,
            got: g.len(),
        });
    }
    let mut bound = vec![0u32; n];
    for (i, b) in bound.iter_mut().enumerate() {
        *b = gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(k, &e)| k == i || e == 0))
            .map(|g| g[i])
            .min()
            .ok_or(GrobnerError::InfiniteStaircase(i + 1))?;
    }
    let mut out = Vec::new();
    let mut m = vec![0u32; n];
    loop {
        if !gens.iter().any(|g| divides(g, &m)) {
            out.push(m.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| staircase_order(a, b));
                return Ok(out);
            }
            m[k] += 1;
            if m[k] < bound[k] {
                break;
            }
            m[k] = 0;
            k += 1;
        }
    }
}

/// `<a> == <b>`, decided by comparing reduced bases.
pub fn ideal_equal(a: &[Poly], b: &[Poly], order: &MonomialOrder) -> Result<bool, GrobnerError> {
    Ok(buchberger(a, order)?.polys == buchberger(b, order)?.polys)
}

/// True iff `gens`, made monic and sorted, already form the reduced basis.
pub fn is_reduced_basis(gens: &[Poly], order: &MonomialOrder) -> Result<bool, GrobnerError> {
    let gb = buchberger(gens, order)?;
    let mut mine: Vec<Poly> = gens.iter().map(|g| g.monic(order)).collect();
    mine.sort_by(|a, b| {
        order.cmp(
            b.leading_monomial(order).unwrap(),
            a.leading_monomial(order).unwrap(),
        )
    });
    Ok(mine == gb.polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_int;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn ones(n: usize) -> MonomialOrder {
        MonomialOrder::weight(vec![1; n]).unwrap()
    }

    #[test]
    fn compare_examples() {
        let o = ones(4);
        assert_eq!(
            compare(&o, &[1, 0, 0, 0], &[0, 1, 1, 0]).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare(&o, &[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare(&o, &[1, 1, 0, 0], &[1, 1, 0, 0]).unwrap(),
            Ordering::Equal
        );
        assert!(compare(&o, &[1, 1, 0], &[1, 1, 0, 0]).is_err());
        assert!(MonomialOrder::weight(vec![1, -1]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let f = p("Z1^2 - 3/2*Z2*Z3 + 1", 3);
        assert_eq!(f.len(), 3);
        assert_eq!(f.display(&ones(3)), "Z1^2 - 3/2*Z2*Z3 + 1");
        assert_eq!(p("-Z1 + Z1", 1), Poly::zero(1));
        assert!(Poly::parse("Z4", 3).is_err());
        assert!(Poly::parse("", 3).is_err());
    }

    #[test]
    fn duplicate_generator_collapses() {
        let gb = buchberger(&[p("Z1", 2), p("Z1", 2)], &ones(2)).unwrap();
        assert_eq!(gb.polys, vec![p("Z1", 2)]);
        assert!(buchberger(&[], &ones(2)).unwrap().polys.is_empty());
    }

    #[test]
    fn hand_computed_basis() {
        // Z1 > Z2 > Z3 with weights (3, 2, 1): Z1^2 - Z2 and Z1*Z2 - Z3
        let o = MonomialOrder::weight(vec![3, 2, 1]).unwrap();
        let gb = buchberger(&[p("Z1^2 - Z2", 3), p("Z1*Z2 - Z3", 3)], &o).unwrap();
        // S(f, g) = Z1*Z3 - Z2^2, weight tie broken by lex
        assert_eq!(gb.polys.len(), 4);
        assert!(gb.polys.contains(&p("Z1*Z3 - Z2^2", 3)), "{:?}", gb.polys);
        assert!(gb.polys.contains(&p("Z2^3 - Z3^2", 3)), "{:?}", gb.polys);
        for f in &gb.polys {
            for g in &gb.polys {
                if f != g {
                    assert!(normal_form(&s_poly(f, g, &o), &gb).is_zero());
                }
            }
        }
    }

    #[test]
    fn initial_ideal_and_staircase() {
        let o = ones(1);
        let gb = buchberger(&[p("Z1 - 1", 1)], &o).unwrap();
        assert_eq!(initial_ideal(&gb), vec![vec![1]]);
        assert_eq!(
            staircase(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3).unwrap(),
            vec![vec![0, 0, 0]]
        );
        assert_eq!(
            staircase(&[vec![1, 0]], 2),
            Err(GrobnerError::InfiniteStaircase(2))
        );
        let st = staircase(&[vec![2, 0], vec![0, 2]], 2).unwrap();
        assert_eq!(st, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn ideal_equality() {
        let o = ones(2);
        assert!(ideal_equal(&[p("Z1", 2)], &[p("2*Z1", 2)], &o).unwrap());
        assert!(!ideal_equal(&[p("Z1", 2)], &[p("Z2", 2)], &o).unwrap());
    }

    #[test]
    fn normal_form_of_constant_and_member() {
        let o = ones(2);
        let gb = buchberger(&[p("Z1^2 - Z2", 2), p("Z2^2", 2)], &o).unwrap();
        assert_eq!(normal_form(&Poly::one(2), &gb), Poly::one(2));
        assert!(normal_form(&p("Z1^2*Z2 - Z2^2", 2), &gb).is_zero());
    }

    #[test]
    fn elimination_order_puts_var_first() {
        let o = MonomialOrder::Elimination { var: 0 };
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 1, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn evaluate_polynomial() {
        let f = p("Z1^2 - 3*Z2 + 1", 2);
        assert_eq!(f.evaluate(&[rat_int(2), rat_int(1)]), rat_int(2));
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Mono> {
        proptest::collection::vec(0u32..4, n)
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-3i64..4, arb_mono(n)), 1..4)
            .prop_map(move |ts| Poly::from_terms(n, ts.into_iter().map(|(c, m)| (rat_int(c), m))))
    }

    proptest! {
        #[test]
        fn weight_order_is_a_multiplicative_total_order(
            w in proptest::collection::vec(0i64..4, 3),
            a in arb_mono(3), b in arb_mono(3), c in arb_mono(3),
            rev in any::<bool>(),
        ) {
            let tie = if rev { TieBreak::ReverseLex } else { TieBreak::Lex };
            let o = MonomialOrder::Weight(WeightOrder::new(w, tie).unwrap());
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&add_mono(&a, &c), &add_mono(&b, &c)), o.cmp(&a, &b));
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert!(o.cmp(&a, &c) != Ordering::Greater);
            }
            prop_assert!(o.cmp(&vec![0; 3], &a) != Ordering::Greater);
        }

        #[test]
        fn reduced_basis_is_independent_of_input_order(
            gens in proptest::collection::vec(arb_poly(3), 1..4),
        ) {
            let o = MonomialOrder::weight(vec![2, 1, 1]).unwrap();
            let gb = buchberger(&gens, &o).unwrap();
            let mut rev = gens.clone();
            rev.reverse();
            prop_assert_eq!(&buchberger(&rev, &o).unwrap().polys, &gb.polys);
            for g in &gens {
                prop_assert!(normal_form(g, &gb).is_zero());
            }
            let lts = gb.leading_monomials();
            for (i, f) in gb.polys.iter().enumerate() {
                for (m, _) in f.terms() {
                    for (j, l) in lts.iter().enumerate() {
                        prop_assert!(!(divides(l, m) && (i != j || m != l)));
                    }
                }
            }
        }

        #[test]
        fn normal_form_is_linear_and_idempotent(
            gens in proptest::collection::vec(arb_poly(3), 1..3),
            f in arb_poly(3), g in arb_poly(3), c in -3i64..4,
        ) {
            let o = ones(3);
            let gb = buchberger(&gens, &o).unwrap();
            let nf = |x: &Poly| normal_form(x, &gb);
            let lhs = nf(&f.add(&g.scale(&rat_int(c))));
            let rhs = nf(&f).add(&nf(&g).scale(&rat_int(c)));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(nf(&nf(&f)), nf(&f));
        }
    }
}

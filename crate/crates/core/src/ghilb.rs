//! Affine charts of the Hilbert schemes `Hilb^{A1(n)}(C^n)`, `n = 4, 5`,
//! and the ideals `I(y)` they parametrize.
//!
//! Each chart family is described once in role letters (`j k l m` for
//! `n = 4`, `i j k l m` for `n = 5`) and instantiated for every maximal cell
//! of the Hilbert scheme decomposition. Instantiation is checked against the
//! geometry: the cell must be the named cell of the decomposition and the
//! coordinates must be the minimal generators of its dual monoid.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{format_rat, int, parse_rat, solve_integer, Int, IntMat, Rat, RatVec};
use crate::geom::{
    center, dual_monoid_generators, fmt_point, midpoint, u_point, unit, w_point, Cell,
    DecompositionName, GeomError, LatticeContext, LaurentMono,
};
use crate::grobner::{
    buchberger, format_mono, initial_ideal, minimalize, staircase, GrobnerError, Mono,
    MonomialOrder, Poly, TieBreak, WeightOrder,
};
use crate::toricideal::{check_relation, Binomial, MonomialList};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GhilbError {
    #[error("charts are tabulated for n = 4, 5 only (got {0})")]
    UnsupportedDimension(usize),
    #[error("no chart named {0}")]
    UnknownChart(String),
    #[error("table entry for {chart} disagrees with the geometry: {detail}")]
    Transcription { chart: String, detail: String },
    #[error("point has {got} coordinates, chart has {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("point violates the chart relation {0}")]
    RelationViolated(String),
    #[error("derived parameter {0} has disagreeing expressions")]
    DerivedMismatch(String),
    #[error("charts {0} and {1} do not share a facet")]
    NotAdjacent(String, String),
    #[error("coordinate {coord} of {from} is not a Laurent monomial in the coordinates of {to}")]
    NotExpressible {
        from: String,
        to: String,
        coord: String,
    },
    #[error("torus parameters must be nonzero")]
    ZeroTorusValue,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Delta,
    C,
    Cp,
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Delta => "Delta",
            Self::C => "C",
            Self::Cp => "Cp",
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
            Self::IV => "IV",
            Self::V => "V",
            Self::VI => "VI",
        };
        write!(f, "{s}")
    }
}

struct Table {
    family: Family,
    n: usize,
    cell: &'static str,
    coords: &'static str,
    gens: &'static [&'static str],
    /// `(t_a, "expr = expr = ...")`
    derived: &'static [(&'static str, &'static str)],
    relations: &'static [&'static str],
    staircase: &'static str,
    /// `(transcribed, corrected)` staircase entries
    errata: &'static [(&'static str, &'static str)],
    /// Templates range over all permutations of the role letters.
    all_roles: bool,
}

// Template syntax.
//   cell:      e:i  v:ij  c  u:j  w:i
//   coords:    U:i  Ui:i  V:ij  Vi:ij  T:j       (Ui, Vi are inverses)
//   gens:      SQUARES | SQ jkl | F ij coef | H ij coef | lhs - coef : rhs
//   coef:      label*label^e, labels t_j u_j ub_j v_jk g_ijk
//   F ij c  =  Z_i Z_j - c Z^rest,   H ij c  =  Z^rest - c Z_i Z_j

const TABLES: &[Table] = &[
    Table {
        family: Family::Delta,
        n: 4,
        cell: "e:j v:jk v:jl v:jm",
        coords: "U:j T:k T:l T:m",
        gens: &["j - u_j : klm", "SQ klm"],
        derived: &[],
        relations: &[],
        staircase: "1 k l m lm km kl klm",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::C,
        n: 4,
        cell: "c v:jk v:jl v:jm",
        coords: "Ui:j V:jk V:jl V:jm",
        gens: &[
            "klm - ub_j : j",
            "F jk v_jk",
            "F jl v_jl",
            "F jm v_jm",
            "SQ jklm",
        ],
        derived: &[
            ("t_j", "ub_j*v_jk*v_jl*v_jm"),
            ("t_k", "ub_j*v_jk"),
            ("t_l", "ub_j*v_jl"),
            ("t_m", "ub_j*v_jm"),
        ],
        relations: &[],
        staircase: "1 j k l m lm km kl",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::Cp,
        n: 4,
        cell: "c v:kl v:lm v:km",
        coords: "T:j V:lm V:km V:kl",
        gens: &["F lm v_lm", "F km v_km", "F kl v_kl", "SQ jklm"],
        derived: &[
            ("t_k", "t_j*v_km*v_kl"),
            ("t_l", "t_j*v_lm*v_kl"),
            ("t_m", "t_j*v_km*v_lm"),
        ],
        relations: &[],
        staircase: "1 j k l m jk jl jm",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::Delta,
        n: 5,
        cell: "e:i v:ij v:ik v:il v:im",
        coords: "U:i T:j T:k T:l T:m",
        gens: &["SQ jklm", "i - g_i : jklm"],
        derived: &[],
        relations: &[],
        staircase: "1 j k l m jk jl kl km lm jm jkl jkm jlm klm jklm",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::I,
        n: 5,
        cell: "w:i v:ij v:ik v:il v:im",
        coords: "Ui:i V:ij V:ik V:il V:im",
        gens: &[
            "SQUARES",
            "F ij g_ij",
            "F ik g_ik",
            "F il g_il",
            "F im g_im",
            "jklm - g_jklm : i",
        ],
        derived: &[
            ("t_j", "g_ij*g_jklm"),
            ("t_k", "g_ik*g_jklm"),
            ("t_l", "g_il*g_jklm"),
            ("t_m", "g_im*g_jklm"),
            ("t_i", "g_ij*g_ik*g_il*g_im*g_jklm^2"),
        ],
        relations: &[],
        staircase: "1 i j k l m jk jl kl km lm jm jkl jkm jlm klm",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::II,
        n: 5,
        cell: "w:i u:j v:ik v:il v:im",
        coords: "Vi:ij T:j V:ik V:il V:im",
        gens: &[
            "SQUARES",
            "F ik g_ik",
            "F il g_il",
            "F im g_im",
            "H ij g_klm",
        ],
        derived: &[
            ("t_k", "g_ik*g_klm*t_j"),
            ("t_l", "g_il*g_klm*t_j"),
            ("t_m", "g_im*g_klm*t_j"),
            ("t_i", "g_ik*g_il*g_im*t_j^2*g_klm"),
        ],
        relations: &[],
        staircase: "1 i j k l m ij jk jl kl km lm jm jkl jkm jlm",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::III,
        n: 5,
        cell: "u:j u:k v:im v:lm v:il",
        coords: "V:im V:il V:lm T:k T:j",
        gens: &["SQUARES", "F im g_im", "F il g_il", "F lm g_lm"],
        derived: &[
            ("t_i", "g_im*g_il*t_k*t_j"),
            ("t_l", "g_il*g_lm*t_k*t_j"),
            ("t_m", "g_im*g_lm*t_k*t_j"),
        ],
        relations: &[],
        staircase: "1 i j k l m ij jk jl kl km ijk jm jkl jkm ik",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::IV,
        n: 5,
        cell: "w:i u:j u:k v:il v:im",
        coords: "V:il V:im Vi:ij Vi:ik Vi:lm",
        gens: &[
            "SQUARES",
            "F im g_im",
            "F il g_il",
            "H ij g_klm",
            "H ik g_jlm",
            "H lm g_ijk",
        ],
        derived: &[
            ("t_m", "g_im*g_jlm*g_klm*g_ijk"),
            ("t_l", "g_il*g_jlm*g_klm*g_ijk"),
            ("t_i", "g_im*g_il*g_jlm*g_klm*g_ijk^2"),
            ("t_j", "g_jlm*g_ijk"),
            ("t_k", "g_lmk*g_ijk"),
        ],
        relations: &[],
        staircase: "1 i j k l m ij jk jl kl km lm jm jkl jkm ik",
        errata: &[],
        all_roles: false,
    },
    Table {
        family: Family::V,
        n: 5,
        cell: "w:i w:m u:j u:k u:l v:im",
        coords: "V:im Vi:il Vi:lm Vi:ik Vi:ij Vi:jm Vi:km",
        gens: &[
            "SQUARES",
            "F im g_im",
            "H il g_jkm",
            "H ik g_jlm",
            "H ij g_klm",
            "H jm g_ikl",
            "H lm g_ijk",
            "H km g_ijl",
        ],
        derived: &[
            ("t_i", "g_im*g_ikl*g_jlm*g_ijk = g_im*g_ikl*g_jkm*g_ijl"),
            ("t_m", "g_im*g_klm*g_jlm*g_ijk = g_im*g_klm*g_jkm*g_ijl"),
            ("t_l", "g_ikl*g_jlm = g_ijl*g_klm"),
            ("t_j", "g_ijk*g_jlm = g_ijl*g_jkm"),
            ("t_k", "g_ijk*g_klm = g_ikl*g_jkm"),
        ],
        relations: &[
            "Vi:ij*Vi:km = Vi:ik*Vi:jm",
            "Vi:ik*Vi:lm = Vi:il*Vi:km",
            "Vi:il*Vi:jm = Vi:ij*Vi:lm",
        ],
        staircase: "1 i j k l m ij jk jl kl km ijk jm jkl il ik",
        // Z_i Z_j Z_k is the leading term of H_lm; the standard monomial of
        // the same character is Z_l Z_m.
        errata: &[("ijk", "lm")],
        all_roles: false,
    },
    Table {
        family: Family::VI,
        n: 5,
        cell: "u:i u:j u:k u:l u:m w:i w:j w:k w:l w:m",
        coords: "Vi:ij",
        gens: &["SQUARES", "H lm g_ijk"],
        derived: &[("t_i", "g_ijk*g_ilm")],
        relations: &[
            "Vi:ij*Vi:il*Vi:km = Vi:ik*Vi:im*Vi:jl",
            "Vi:ij*Vi:kl = Vi:ik*Vi:jl",
            "g_klm*g_jkm*g_ijl = g_jlm*g_jkl*g_ikm",
        ],
        staircase: "1 i j k l m ij ik il im jk jl jm kl km lm",
        errata: &[],
        all_roles: true,
    },
];

fn table(family: Family, n: usize) -> &'static Table {
    TABLES
        .iter()
        .find(|t| t.family == family && t.n == n)
        .expect("tabulated family")
}

fn letters(n: usize) -> &'static str {
    if n == 4 {
        "jklm"
    } else {
        "ijklm"
    }
}

/// Role letter -> actual index (0-based).
struct Roles<'a> {
    n: usize,
    map: &'a [usize],
}

impl Roles<'_> {
    fn idx(&self, c: char) -> usize {
        let pos = letters(self.n)
            .find(c)
            .unwrap_or_else(|| panic!("role letter {c}"));
        self.map[pos]
    }

    fn mono(&self, s: &str) -> Mono {
        let mut m = vec![0u32; self.n];
        for c in s.chars() {
            m[self.idx(c)] += 1;
        }
        m
    }

    fn rest(&self, s: &str) -> Mono {
        let taken: Vec<usize> = s.chars().map(|c| self.idx(c)).collect();
        (0..self.n)
            .map(|a| u32::from(!taken.contains(&a)))
            .collect()
    }

    fn set(&self, s: &str) -> Vec<usize> {
        let mut v: Vec<usize> = s.chars().map(|c| self.idx(c)).collect();
        v.sort_unstable();
        v
    }

    fn label(&self, tok: &str) -> String {
        let (prefix, rs) = tok.split_once('_').unwrap_or_else(|| panic!("label {tok}"));
        let digits: String = self.set(rs).iter().map(|a| (a + 1).to_string()).collect();
        format!("{prefix}{digits}")
    }

    fn coef(&self, s: &str) -> Vec<(String, u32)> {
        let mut out: Vec<(String, u32)> = s
            .split('*')
            .map(|f| match f.trim().split_once('^') {
                Some((l, e)) => (self.label(l), e.parse().expect("exponent")),
                None => (self.label(f.trim()), 1),
            })
            .collect();
        out.sort();
        out
    }

    fn coordinate(&self, tok: &str) -> LaurentMono {
        let (kind, rs) = tok
            .split_once(':')
            .unwrap_or_else(|| panic!("coordinate {tok}"));
        let s = self.set(rs);
        match kind {
            "U" => LaurentMono::u(self.n, s[0]),
            "Ui" => LaurentMono::u(self.n, s[0]).inverse(),
            "V" => LaurentMono::v(self.n, s[0], s[1]),
            "Vi" => LaurentMono::v(self.n, s[0], s[1]).inverse(),
            "T" => LaurentMono::t(self.n, s[0]),
            _ => panic!("coordinate kind {kind}"),
        }
    }

    fn point(&self, tok: &str) -> RatVec {
        let n = self.n;
        match tok.split_once(':') {
            Some(("e", r)) => unit(n, self.idx(r.chars().next().unwrap())),
            Some(("v", r)) => {
                let s = self.set(r);
                midpoint(n, s[0], s[1])
            }
            Some(("u", r)) => u_point(n, self.idx(r.chars().next().unwrap())),
            Some(("w", r)) => w_point(n, self.idx(r.chars().next().unwrap())),
            None if tok == "c" => center(n),
            _ => panic!("cell vertex {tok}"),
        }
    }
}

/// Coordinate label used for point values: `t2`, `u1`, `ub1`, `v12` for
/// `n = 4`; `t2`, `g1`, `g12`, `g345`, `g2345` (positive index set) for `n = 5`.
pub fn coordinate_label(m: &LaurentMono) -> String {
    let n = m.n();
    let pos: Vec<usize> = (0..n).filter(|&a| m.0[a] > 0).collect();
    let digits = |s: &[usize]| -> String { s.iter().map(|a| (a + 1).to_string()).collect() };
    if pos.len() == 1 && m.0[pos[0]] == 2 && m.0.iter().filter(|&&x| x != 0).count() == 1 {
        return format!("t{}", pos[0] + 1);
    }
    if n == 4 {
        match pos.len() {
            1 => format!("u{}", digits(&pos)),
            3 => format!(
                "ub{}",
                digits(&(0..n).filter(|a| !pos.contains(a)).collect::<Vec<_>>())
            ),
            _ => format!("v{}", digits(&pos)),
        }
    } else {
        format!("g{}", digits(&pos))
    }
}

/// Inverse of [`coordinate_label`].
pub fn label_monomial(n: usize, label: &str) -> Option<LaurentMono> {
    let split = |p: &str| -> Option<((), Vec<usize>)> {
        let digits = label.strip_prefix(p)?;
        let idx: Option<Vec<usize>> = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .filter(|&d| (1..=n).contains(&d))
            })
            .collect();
        let idx: Vec<usize> = idx?.into_iter().map(|d| d - 1).collect();
        (!idx.is_empty()).then_some(((), idx))
    };
    if let Some((_, s)) = split("t") {
        return (s.len() == 1).then(|| LaurentMono::t(n, s[0]));
    }
    if n == 4 {
        if let Some((_, s)) = split("ub") {
            return (s.len() == 1).then(|| LaurentMono::u(n, s[0]).inverse());
        }
        if let Some((_, s)) = split("u") {
            return (s.len() == 1).then(|| LaurentMono::u(n, s[0]));
        }
        if let Some((_, s)) = split("v") {
            return (s.len() == 2).then(|| LaurentMono::split(n, &s));
        }
        return None;
    }
    split("g").map(|(_, s)| LaurentMono::split(n, &s))
}

/// `U1`, `U1^-1`, `V12`, `V12^-1`, `T2`, or the monomial itself.
pub fn coordinate_symbol(m: &LaurentMono) -> String {
    let n = m.n();
    let pos: Vec<usize> = (0..n).filter(|&a| m.0[a] > 0).collect();
    let neg: Vec<usize> = (0..n).filter(|&a| m.0[a] < 0).collect();
    let digits = |s: &[usize]| -> String { s.iter().map(|a| (a + 1).to_string()).collect() };
    if m.0.iter().all(|&x| x.abs() <= 1) && pos.len() + neg.len() == n {
        match (pos.len(), neg.len()) {
            (1, _) => return format!("U{}", digits(&pos)),
            (_, 1) if n > 2 => return format!("U{}^-1", digits(&neg)),
            (2, _) => return format!("V{}", digits(&pos)),
            (_, 2) => return format!("V{}^-1", digits(&neg)),
            _ => {}
        }
    }
    if pos.len() == 1 && neg.is_empty() && m.0[pos[0]] == 2 {
        return format!("T{}", pos[0] + 1);
    }
    m.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Generator {
    lhs: Mono,
    coef: Vec<(String, u32)>,
    rhs: Mono,
}

/// Product of coordinate labels with exponents.
pub type Product = Vec<(String, u32)>;

/// A chart of the Hilbert scheme: a maximal cell with its coordinates,
/// relations, ideal family and expected staircase.
#[derive(Clone, Debug)]
pub struct Chart {
    pub n: usize,
    pub name: String,
    pub family: Family,
    /// Actual index (0-based) of each role letter.
    pub roles: Vec<usize>,
    pub cell: Cell,
    /// Coordinates in table order, named by [`coordinate_label`].
    pub coordinates: MonomialList,
    pub symbols: Vec<String>,
    /// Binomial relations among the coordinates (empty for smooth charts).
    pub relations: Vec<Binomial>,
    /// Expected standard monomials, errata applied, canonical order.
    pub staircase: Vec<Mono>,
    /// The table as transcribed, before errata.
    pub transcribed_staircase: Vec<Mono>,
    generators: Vec<Generator>,
    derived: Vec<(String, Vec<Product>)>,
}

impl Chart {
    pub fn dimension(&self) -> usize {
        self.coordinates.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.coordinates.names
    }

    pub fn is_simplicial(&self) -> bool {
        self.cell.is_simplex()
    }

    /// Transcribed formulas for the parameters `t_a`, each with every
    /// alternative expression, as products of coordinate labels.
    pub fn derived_parameters(&self) -> Vec<(String, Vec<Product>)> {
        self.derived.clone()
    }

    /// Generator shapes `Z^lhs - coef * Z^rhs` with `coef` a product of labels.
    pub fn generator_shapes(&self) -> Vec<(Mono, Product, Mono)> {
        self.generators
            .iter()
            .map(|g| (g.lhs.clone(), g.coef.clone(), g.rhs.clone()))
            .collect()
    }
}

fn roles_for(family: Family, n: usize, digits: &[usize]) -> Vec<usize> {
    let rest: Vec<usize> = (0..n).filter(|a| !digits.contains(a)).collect();
    let cat = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().chain(b).copied().collect() };
    match (family, n) {
        (Family::C, 4) => cat(digits, &rest.iter().rev().copied().collect::<Vec<_>>()),
        (Family::III, 5) => vec![rest[0], digits[0], digits[1], rest[1], rest[2]],
        (Family::V, 5) => vec![digits[0], rest[0], rest[1], rest[2], digits[1]],
        _ => cat(digits, &rest),
    }
}

fn parse_name(name: &str) -> Option<(Family, Vec<usize>)> {
    let (fam, digits) = name.split_once('_').unwrap_or((name, ""));
    let family = match fam {
        "Delta" => Family::Delta,
        "C" => Family::C,
        "Cp" => Family::Cp,
        "I" => Family::I,
        "II" => Family::II,
        "III" => Family::III,
        "IV" => Family::IV,
        "V" => Family::V,
        "VI" => Family::VI,
        _ => return None,
    };
    let digits: Option<Vec<usize>> = digits
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize - 1))
        .collect();
    Some((family, digits?))
}

fn role_maps(t: &Table, roles: &[usize]) -> Vec<Vec<usize>> {
    if t.all_roles {
        (0..t.n).permutations(t.n).collect()
    } else {
        vec![roles.to_vec()]
    }
}

fn generator_templates(t: &Table, r: &Roles) -> Vec<Generator> {
    let n = t.n;
    let square = |a: usize| {
        let mut m = vec![0u32; n];
        m[a] = 2;
        Generator {
            lhs: m,
            coef: vec![(format!("t{}", a + 1), 1)],
            rhs: vec![0; n],
        }
    };
    let mut out = Vec::new();
    for g in t.gens {
        let toks: Vec<&str> = g.split_whitespace().collect();
        match toks.as_slice() {
            ["SQUARES"] => out.extend((0..n).map(square)),
            ["SQ", s] => out.extend(s.chars().map(|c| square(r.idx(c)))),
            ["F", ab, c] => out.push(Generator {
                lhs: r.mono(ab),
                coef: r.coef(c),
                rhs: r.rest(ab),
            }),
            ["H", ab, c] => out.push(Generator {
                lhs: r.rest(ab),
                coef: r.coef(c),
                rhs: r.mono(ab),
            }),
            [lhs, "-", c, ":", rhs] => out.push(Generator {
                lhs: r.mono(lhs),
                coef: r.coef(c),
                rhs: r.mono(rhs),
            }),
            _ => panic!("generator template {g}"),
        }
    }
    out
}

fn parse_relation(
    t: &Table,
    r: &Roles,
    s: &str,
    coords: &[LaurentMono],
) -> Result<Binomial, String> {
    let (l, rhs) = s.split_once('=').ok_or_else(|| format!("relation {s}"))?;
    let side = |x: &str| -> Result<Mono, String> {
        let mut m = vec![0u32; coords.len()];
        for f in x.split('*') {
            let f = f.trim();
            let mono = if f.contains(':') {
                r.coordinate(f)
            } else {
                label_monomial(t.n, &r.label(f)).ok_or_else(|| format!("label {f}"))?
            };
            let k = coords
                .iter()
                .position(|c| *c == mono)
                .ok_or_else(|| format!("{f} is not a coordinate"))?;
            m[k] += 1;
        }
        Ok(m)
    };
    Ok(Binomial {
        plus: side(l)?,
        minus: side(rhs)?,
    })
}

fn orient(b: Binomial) -> Binomial {
    let (p, m) = if b.plus >= b.minus {
        (b.plus, b.minus)
    } else {
        (b.minus, b.plus)
    };
    Binomial { plus: p, minus: m }
}

fn staircase_set(t: &Table, r: &Roles, corrected: bool) -> Vec<Mono> {
    let mut out: Vec<Mono> = t
        .staircase
        .split_whitespace()
        .map(|s| {
            let s = if corrected {
                t.errata
                    .iter()
                    .find(|(p, _)| *p == s)
                    .map_or(s, |(_, c)| *c)
            } else {
                s
            };
            if s == "1" {
                vec![0; t.n]
            } else {
                r.mono(s)
            }
        })
        .collect();
    out.sort_by(|a, b| crate::grobner::staircase_order(a, b));
    out
}

fn build_chart(
    ctx: &LatticeContext,
    name: &str,
    cell_vertices: &[RatVec],
) -> Result<Chart, GhilbError> {
    let n = ctx.n();
    let bad = |detail: String| GhilbError::Transcription {
        chart: name.to_string(),
        detail,
    };
    let (family, digits) =
        parse_name(name).ok_or_else(|| GhilbError::UnknownChart(name.to_string()))?;
    let t = table(family, n);
    let roles = roles_for(family, n, &digits);
    let r = Roles { n, map: &roles };

    let cell = Cell::new(t.cell.split_whitespace().map(|v| r.point(v)).collect())?;
    let expected = Cell::new(cell_vertices.to_vec())?;
    if cell != expected {
        return Err(bad(format!(
            "cell {:?} vs {:?}",
            cell.vertices(),
            expected.vertices()
        )));
    }

    let maps = role_maps(t, &roles);
    let mut coords: Vec<LaurentMono> = Vec::new();
    let mut generators: Vec<Generator> = Vec::new();
    let mut derived: Vec<(String, Vec<Product>)> = Vec::new();
    for map in &maps {
        let rr = Roles { n, map };
        for tok in t.coords.split_whitespace() {
            let m = rr.coordinate(tok);
            if !coords.contains(&m) {
                coords.push(m);
            }
        }
        for g in generator_templates(t, &rr) {
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        for (lab, exprs) in t.derived {
            let lab = rr.label(lab);
            let alts: Vec<Product> = exprs.split('=').map(|e| rr.coef(e)).collect();
            match derived.iter_mut().find(|(l, _)| *l == lab) {
                Some((_, v)) => v.extend(alts),
                None => derived.push((lab, alts)),
            }
        }
    }
    for (_, alts) in derived.iter_mut() {
        alts.sort();
        alts.dedup();
    }
    if t.all_roles {
        // table order: V_ab^{-1} with a < b lexicographic, t_a and H_ab likewise
        let key = |m: &LaurentMono| -> Vec<usize> { (0..n).filter(|&a| m.0[a] < 0).collect() };
        coords.sort_by_key(key);
        let (squares, mut rest): (Vec<Generator>, Vec<Generator>) = generators
            .into_iter()
            .partition(|g| g.rhs.iter().all(|&e| e == 0));
        rest.sort_by(|a, b| b.rhs.cmp(&a.rhs));
        generators = squares.into_iter().chain(rest).collect();
        derived.sort();
    }

    let hilbert = dual_monoid_generators(ctx, &cell)?;
    let mut sorted = coords.clone();
    sorted.sort();
    if sorted != hilbert {
        return Err(bad(format!(
            "coordinates {:?} vs dual monoid generators {:?}",
            coords.iter().map(coordinate_symbol).collect::<Vec<_>>(),
            hilbert.iter().map(coordinate_symbol).collect::<Vec<_>>()
        )));
    }

    let mut relations: Vec<Binomial> = Vec::new();
    for map in &maps {
        let rr = Roles { n, map };
        for s in t.relations {
            let b = orient(parse_relation(t, &rr, s, &coords).map_err(bad)?);
            if !relations.contains(&b) {
                relations.push(b);
            }
        }
    }

    let labels: Vec<String> = coords.iter().map(coordinate_label).collect();
    let symbols: Vec<String> = coords.iter().map(coordinate_symbol).collect();
    let coordinates = MonomialList::new(coords, labels).expect("nonempty");
    for b in &relations {
        if !check_relation(&coordinates, b).unwrap_or(false) {
            return Err(bad(format!(
                "relation {} fails",
                b.display(&coordinates.names)
            )));
        }
    }

    Ok(Chart {
        n,
        name: name.to_string(),
        family,
        roles: roles.clone(),
        cell,
        coordinates,
        symbols,
        relations,
        staircase: staircase_set(t, &r, true),
        transcribed_staircase: staircase_set(t, &r, false),
        generators,
        derived,
    })
}

/// All charts of the Hilbert scheme: 12 for `n = 4`, 81 for `n = 5`, in
/// the order of the Hilbert scheme decomposition's named cells.
pub fn chart_catalog(n: usize) -> Result<Vec<Chart>, GhilbError> {
    if !(4..=5).contains(&n) {
        return Err(GhilbError::UnsupportedDimension(n));
    }
    let ctx = LatticeContext::new(n)?;
    let cells = crate::geom::named_cells(CHART_DECOMPOSITION, n)?;
    crate::exec::map(&cells, |(name, verts)| build_chart(&ctx, name, verts))
        .into_iter()
        .collect()
}

pub fn find_chart<'a>(catalog: &'a [Chart], name: &str) -> Result<&'a Chart, GhilbError> {
    catalog
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| GhilbError::UnknownChart(name.to_string()))
}

/// Number of charts per family, in table order.
pub fn family_sizes(catalog: &[Chart]) -> Vec<(Family, usize)> {
    let mut counts: BTreeMap<Family, usize> = BTreeMap::new();
    for c in catalog {
        *counts.entry(c.family).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

/// Values of the chart coordinates, in the chart's coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartPoint {
    pub values: Vec<Rat>,
}

impl ChartPoint {
    pub fn new(values: Vec<Rat>) -> Self {
        Self { values }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self {
            values: vec![Rat::zero(); chart.dimension()],
        }
    }

    /// Comma-separated rationals, `"1,-2/3,0,5"`.
    pub fn parse(s: &str) -> Option<Self> {
        s.split(',')
            .map(|x| parse_rat(x).ok())
            .collect::<Option<Vec<Rat>>>()
            .map(Self::new)
    }

    pub fn display(&self) -> String {
        self.values.iter().map(format_rat).join(",")
    }
}

fn pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn product(env: &BTreeMap<String, Rat>, p: &Product) -> Rat {
    p.iter()
        .map(|(l, e)| num_traits::pow(env[l].clone(), *e as usize))
        .product()
}

fn check_point(chart: &Chart, p: &ChartPoint) -> Result<(), GhilbError> {
    if p.values.len() != chart.dimension() {
        return Err(GhilbError::PointLength {
            expected: chart.dimension(),
            got: p.values.len(),
        });
    }
    for b in &chart.relations {
        let side = |m: &Mono| -> Rat {
            m.iter()
                .zip(&p.values)
                .map(|(&e, x)| pow(x, e as i64))
                .product()
        };
        if side(&b.plus) != side(&b.minus) {
            return Err(GhilbError::RelationViolated(b.display(chart.labels())));
        }
    }
    Ok(())
}

/// Coordinate values plus derived parameters, by label.
pub fn parameters(chart: &Chart, p: &ChartPoint) -> Result<BTreeMap<String, Rat>, GhilbError> {
    check_point(chart, p)?;
    let mut env: BTreeMap<String, Rat> = chart
        .labels()
        .iter()
        .cloned()
        .zip(p.values.iter().cloned())
        .collect();
    for (label, alts) in &chart.derived {
        let vals: Vec<Rat> = alts.iter().map(|a| product(&env, a)).collect();
        if vals.windows(2).any(|w| w[0] != w[1]) {
            return Err(GhilbError::DerivedMismatch(label.clone()));
        }
        env.insert(label.clone(), vals[0].clone());
    }
    Ok(env)
}

/// Generators of `I(y)` in table order.
pub fn ideal_at(chart: &Chart, p: &ChartPoint) -> Result<Vec<Poly>, GhilbError> {
    let env = parameters(chart, p)?;
    Ok(chart
        .generators
        .iter()
        .map(|g| Poly::binomial(g.lhs.clone(), product(&env, &g.coef), g.rhs.clone()))
        .collect())
}

/// Sum of the primitive generators of the cell's rays, scaled to a
/// primitive integer vector.
pub fn interior_weight(chart: &Chart) -> Vec<i64> {
    let ctx = LatticeContext::new(chart.n).expect("supported n");
    let v = chart.cell.interior_vector(&ctx).expect("cell in Delta");
    let den = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Int> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    scaled
        .iter()
        .map(|x| (x / &g).to_i64().expect("small weight"))
        .collect()
}

pub fn weight_order(chart: &Chart, tie: TieBreak) -> MonomialOrder {
    MonomialOrder::Weight(
        WeightOrder::new(interior_weight(chart), tie).expect("nonnegative weight"),
    )
}

/// The point `m(b)` of the dense torus, where `b` assigns nonzero values to
/// the basis `Z_1...Z_n, T_1, ..., T_{n-1}` of `M`.
pub fn torus_point(chart: &Chart, b: &[Rat]) -> Result<ChartPoint, GhilbError> {
    let n = chart.n;
    if b.len() != n {
        return Err(GhilbError::PointLength {
            expected: n,
            got: b.len(),
        });
    }
    if b.iter().any(Zero::is_zero) {
        return Err(GhilbError::ZeroTorusValue);
    }
    let values = chart
        .coordinates
        .monos
        .iter()
        .map(|m| {
            let c0 = m.0[n - 1];
            let mut v = pow(&b[0], c0);
            for i in 0..n - 1 {
                v *= pow(&b[i + 1], (m.0[i] - c0) / 2);
            }
            v
        })
        .collect();
    Ok(ChartPoint { values })
}

/// Limit of `p` along the ray through the vertices `face` of the cell:
/// coordinates pairing positively with it become zero.
pub fn degenerate_point(chart: &Chart, p: &ChartPoint, face: &[usize]) -> ChartPoint {
    let rays = chart.cell.rays();
    let nu: Vec<i64> = (0..chart.n)
        .map(|k| face.iter().map(|&f| rays[f][k] as i64).sum())
        .collect();
    let values = chart
        .coordinates
        .monos
        .iter()
        .zip(&p.values)
        .map(|(m, x)| {
            if m.pairing_int(&nu) > 0 {
                Rat::zero()
            } else {
                x.clone()
            }
        })
        .collect();
    ChartPoint { values }
}

/// True iff the monomials represent every character of `A1(n)` exactly
/// once: `2^{n-1}` of them with distinct parities modulo the all-ones vector.
pub fn g_regular(monos: &[Mono], n: usize) -> bool {
    if monos.len() != 1 << (n - 1) || monos.iter().any(|m| m.len() != n) {
        return false;
    }
    let mut classes: Vec<Vec<u32>> = monos
        .iter()
        .map(|m| {
            let p: Vec<u32> = m.iter().map(|e| e % 2).collect();
            if p[0] == 1 {
                p.iter().map(|x| 1 - x).collect()
            } else {
                p
            }
        })
        .collect();
    classes.sort();
    classes.dedup();
    classes.len() == monos.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Zero,
    Generic,
    Degenerate,
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub kind: PointKind,
    pub values: Vec<String>,
    pub generators: Vec<String>,
    /// (a) the generators are their own reduced basis
    pub reduced_basis: bool,
    /// (b) the initial ideal is the monomial ideal of the chart's center
    pub initial_ideal: bool,
    /// (c) the standard monomials are the tabulated ones
    pub staircase: bool,
    /// (d) the standard monomials form a G-regular basis
    pub g_regular: bool,
    pub staircase_size: usize,
    pub error: Option<String>,
}

impl PointReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.reduced_basis
            && self.initial_ideal
            && self.staircase
            && self.g_regular
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub name: String,
    pub family: Family,
    pub cell: Vec<String>,
    pub coordinates: Vec<String>,
    pub labels: Vec<String>,
    pub relations: Vec<String>,
    pub weight: Vec<i64>,
    pub staircase: Vec<String>,
    pub transcribed_staircase: Vec<String>,
    pub points: Vec<PointReport>,
}

impl ChartReport {
    pub fn passed(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(PointReport::passed)
    }
}

fn verify_point(
    chart: &Chart,
    order: &MonomialOrder,
    center: &[Mono],
    kind: PointKind,
    p: &ChartPoint,
) -> PointReport {
    let mut rep = PointReport {
        kind,
        values: p.values.iter().map(format_rat).collect(),
        generators: Vec::new(),
        reduced_basis: false,
        initial_ideal: false,
        staircase: false,
        g_regular: false,
        staircase_size: 0,
        error: None,
    };
    let gens = match ideal_at(chart, p) {
        Ok(g) => g,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    verify_generators(chart, order, center, &gens, &mut rep);
    rep
}

fn verify_generators(
    chart: &Chart,
    order: &MonomialOrder,
    center: &[Mono],
    gens: &[Poly],
    rep: &mut PointReport,
) {
    rep.generators = gens.iter().map(|g| g.display(order)).collect();
    let gb = match buchberger(gens, order) {
        Ok(gb) => gb,
        Err(e) => {
            rep.error = Some(e.to_string());
            return;
        }
    };
    let mut mine: Vec<Poly> = gens.iter().map(|g| g.monic(order)).collect();
    mine.sort_by(|a, b| {
        order.cmp(
            b.leading_monomial(order).unwrap(),
            a.leading_monomial(order).unwrap(),
        )
    });
    rep.reduced_basis = mine == gb.polys;
    let lt = minimalize(&initial_ideal(&gb));
    rep.initial_ideal = lt == center;
    match staircase(&lt, chart.n) {
        Ok(st) => {
            rep.staircase_size = st.len();
            rep.staircase = st == chart.staircase;
            rep.g_regular = g_regular(&st, chart.n);
        }
        Err(e) => rep.error = Some(e.to_string()),
    }
}

/// Monomial ideal of the chart's torus-fixed point.
pub fn center_ideal(chart: &Chart) -> Vec<Mono> {
    let gens =
        ideal_at(chart, &ChartPoint::zero(chart)).expect("the origin is a point of every chart");
    let order = weight_order(chart, TieBreak::Lex);
    let monos: Vec<Mono> = gens
        .iter()
        .filter_map(|g| g.leading_monomial(&order).cloned())
        .collect();
    minimalize(&monos)
}

fn base_report(chart: &Chart) -> ChartReport {
    let mono_strings = |v: &[Mono]| v.iter().map(|m| format_mono(m)).collect::<Vec<_>>();
    ChartReport {
        name: chart.name.clone(),
        family: chart.family,
        cell: chart.cell.vertices().iter().map(|v| fmt_point(v)).collect(),
        coordinates: chart.symbols.clone(),
        labels: chart.labels().to_vec(),
        relations: chart
            .relations
            .iter()
            .map(|b| b.display(chart.labels()))
            .collect(),
        weight: interior_weight(chart),
        staircase: mono_strings(&chart.staircase),
        transcribed_staircase: mono_strings(&chart.transcribed_staircase),
        points: Vec::new(),
    }
}

/// Checks the four chart claims at every point.
pub fn verify_chart(chart: &Chart, points: &[(PointKind, ChartPoint)]) -> ChartReport {
    let order = weight_order(chart, TieBreak::Lex);
    let center = center_ideal(chart);
    let mut rep = base_report(chart);
    rep.points = points
        .iter()
        .map(|(k, p)| verify_point(chart, &order, &center, *k, p))
        .collect();
    rep
}

/// Runs the same checks on an explicit generator list, for controls.
pub fn verify_generators_at(chart: &Chart, kind: PointKind, gens: &[Poly]) -> PointReport {
    let order = weight_order(chart, TieBreak::Lex);
    let center = center_ideal(chart);
    let mut rep = PointReport {
        kind,
        values: Vec::new(),
        generators: Vec::new(),
        reduced_basis: false,
        initial_ideal: false,
        staircase: false,
        g_regular: false,
        staircase_size: 0,
        error: None,
    };
    verify_generators(chart, &order, &center, gens, &mut rep);
    rep
}

/// Coordinates of chart `a` as Laurent monomials in those of chart `b`:
/// row `i` holds the exponents of `b`'s coordinates in `a`'s `i`-th one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub from: String,
    pub to: String,
    pub exponents: Vec<Vec<i64>>,
}

impl Transition {
    /// `xi1 = eta1*eta2, xi2 = eta2^-1, ...`
    pub fn display(&self, from: &str, to: &str) -> Vec<String> {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let rhs: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(j, &e)| {
                        if e == 1 {
                            format!("{to}{}", j + 1)
                        } else {
                            format!("{to}{}^{e}", j + 1)
                        }
                    })
                    .collect();
                let rhs = if rhs.is_empty() {
                    "1".to_string()
                } else {
                    rhs.join("*")
                };
                format!("{from}{} = {rhs}", i + 1)
            })
            .collect()
    }

    /// `self` followed by `next` (`a -> b` then `b -> c` gives `a -> c`).
    pub fn compose(&self, next: &Transition) -> Transition {
        let k = next.exponents.first().map_or(0, Vec::len);
        let exponents = self
            .exponents
            .iter()
            .map(|row| {
                (0..k)
                    .map(|c| {
                        row.iter()
                            .zip(&next.exponents)
                            .map(|(&x, nr)| x * nr[c])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Transition {
            from: self.from.clone(),
            to: next.to.clone(),
            exponents,
        }
    }

    /// The Laurent monomials in `Z` that the map assigns to `a`'s coordinates.
    pub fn images(&self, b: &Chart) -> Vec<LaurentMono> {
        self.exponents
            .iter()
            .map(|row| b.coordinates.evaluate(row))
            .collect()
    }
}

/// Whether the cells of two charts share a facet.
pub fn adjacent(a: &Chart, b: &Chart) -> bool {
    let common: Vec<&RatVec> = a
        .cell
        .vertices()
        .iter()
        .filter(|v| b.cell.vertices().contains(v))
        .collect();
    if common.len() < a.n - 1 {
        return false;
    }
    let rays: Vec<Vec<i128>> = common
        .iter()
        .map(|v| crate::geom::cones::integer_ray(v))
        .collect();
    let refs: Vec<&Vec<i128>> = rays.iter().collect();
    crate::geom::cones::rank(&refs) == a.n - 1
}

/// Coordinate change between charts whose cells share a facet.
pub fn transition(a: &Chart, b: &Chart) -> Result<Transition, GhilbError> {
    if a.name == b.name {
        let k = a.dimension();
        let exponents = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        return Ok(Transition {
            from: a.name.clone(),
            to: b.name.clone(),
            exponents,
        });
    }
    if !adjacent(a, b) {
        return Err(GhilbError::NotAdjacent(a.name.clone(), b.name.clone()));
    }
    torus_transition(a, b)
}

/// The coordinate change on the dense torus, defined for any two charts.
pub fn torus_transition(a: &Chart, b: &Chart) -> Result<Transition, GhilbError> {
    let n = a.n;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|r| b.coordinates.monos.iter().map(|m| m.0[r]).collect())
        .collect();
    let mat = IntMat::from_i64(&rows);
    let mut exponents = Vec::new();
    for (m, sym) in a.coordinates.monos.iter().zip(&a.symbols) {
        let target: Vec<Int> = m.0.iter().map(|&x| int(x)).collect();
        let not_expressible = || GhilbError::NotExpressible {
            from: a.name.clone(),
            to: b.name.clone(),
            coord: sym.clone(),
        };
        let sol = solve_integer(&mat, &target)
            .expect("dimensions agree")
            .ok_or_else(not_expressible)?;
        exponents.push(
            sol.iter()
                .map(|x| x.to_i64().expect("small exponent"))
                .collect(),
        );
    }
    Ok(Transition {
        from: a.name.clone(),
        to: b.name.clone(),
        exponents,
    })
}

/// Sampled injectivity: the reduced bases at `p` and `q` coincide exactly
/// when the points do.
pub fn separation_check(chart: &Chart, p: &ChartPoint, q: &ChartPoint) -> Result<bool, GhilbError> {
    let order = weight_order(chart, TieBreak::Lex);
    let gp = buchberger(&ideal_at(chart, p)?, &order)?;
    let gq = buchberger(&ideal_at(chart, q)?, &order)?;
    Ok((gp.polys == gq.polys) == (p == q))
}

/// Name of the decomposition the charts cover.
pub const CHART_DECOMPOSITION: DecompositionName = DecompositionName::XiStar;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, rat_int};

    fn mono(s: &[u32]) -> Mono {
        s.to_vec()
    }

    #[test]
    fn labels_round_trip() {
        for n in [4, 5] {
            let mut monos = vec![];
            for i in 0..n {
                monos.push(LaurentMono::t(n, i));
                monos.push(LaurentMono::u(n, i));
                monos.push(LaurentMono::u(n, i).inverse());
                for j in i + 1..n {
                    monos.push(LaurentMono::v(n, i, j));
                }
            }
            for m in monos {
                assert_eq!(
                    label_monomial(n, &coordinate_label(&m)),
                    Some(m.clone()),
                    "{m}"
                );
            }
        }
        assert_eq!(coordinate_label(&LaurentMono::v(5, 0, 1).inverse()), "g345");
        assert_eq!(
            coordinate_symbol(&LaurentMono::v(5, 0, 1).inverse()),
            "V12^-1"
        );
        assert_eq!(coordinate_symbol(&LaurentMono::u(4, 0).inverse()), "U1^-1");
        assert_eq!(label_monomial(4, "w1"), None);
    }

    #[test]
    fn catalog_sizes() {
        let c4 = chart_catalog(4).unwrap();
        assert_eq!(c4.len(), 12);
        let c5 = chart_catalog(5).unwrap();
        let sizes: Vec<usize> = family_sizes(&c5).into_iter().map(|(_, s)| s).collect();
        assert_eq!(sizes, vec![5, 5, 20, 10, 30, 10, 1]);
        assert_eq!(
            chart_catalog(6).unwrap_err(),
            GhilbError::UnsupportedDimension(6)
        );
        assert_eq!(find_chart(&c5, "V_12").unwrap().dimension(), 7);
        assert_eq!(find_chart(&c5, "VI").unwrap().dimension(), 10);
    }

    #[test]
    fn delta_one_at_ones() {
        let c4 = chart_catalog(4).unwrap();
        let d1 = find_chart(&c4, "Delta_1").unwrap();
        let p = ChartPoint::parse("1,1,1,1").unwrap();
        let gens = ideal_at(d1, &p).unwrap();
        let expected: Vec<Poly> = ["Z1 - Z2*Z3*Z4", "Z2^2 - 1", "Z3^2 - 1", "Z4^2 - 1"]
            .iter()
            .map(|s| Poly::parse(s, 4).unwrap())
            .collect();
        assert_eq!(gens, expected);
    }

    #[test]
    fn weights() {
        let c4 = chart_catalog(4).unwrap();
        assert_eq!(
            interior_weight(find_chart(&c4, "Delta_1").unwrap()),
            vec![5, 1, 1, 1]
        );
        assert_eq!(
            interior_weight(find_chart(&c4, "C_1").unwrap()),
            vec![2, 1, 1, 1]
        );
        assert_eq!(
            interior_weight(find_chart(&c4, "Cp_1").unwrap()),
            vec![1, 3, 3, 3]
        );
        let c5 = chart_catalog(5).unwrap();
        assert_eq!(interior_weight(find_chart(&c5, "VI").unwrap()), vec![1; 5]);
    }

    #[test]
    fn g_regular_examples() {
        let c4 = chart_catalog(4).unwrap();
        assert!(g_regular(&find_chart(&c4, "Delta_2").unwrap().staircase, 4));
        let bad = vec![mono(&[0, 0, 0, 0]), mono(&[2, 0, 0, 0])];
        assert!(!g_regular(&bad, 4));
        let mut dup = find_chart(&c4, "Delta_2").unwrap().staircase.clone();
        dup[1] = vec![2, 0, 0, 0];
        assert!(!g_regular(&dup, 4));
    }

    #[test]
    fn relations_reject_bad_points() {
        let c5 = chart_catalog(5).unwrap();
        let v = find_chart(&c5, "V_12").unwrap();
        let mut vals = vec![rat_int(1); 7];
        vals[1] = rat_int(2);
        assert!(matches!(
            ideal_at(v, &ChartPoint::new(vals)),
            Err(GhilbError::RelationViolated(_))
        ));
        assert!(matches!(
            ideal_at(v, &ChartPoint::new(vec![rat_int(1); 3])),
            Err(GhilbError::PointLength { .. })
        ));
    }

    #[test]
    fn torus_points_satisfy_relations() {
        let c5 = chart_catalog(5).unwrap();
        let b = vec![rat(2, 3), rat(-5, 7), rat(3, 1), rat(1, 4), rat(-7, 2)];
        for name in ["V_12", "V_35", "VI"] {
            let ch = find_chart(&c5, name).unwrap();
            let p = torus_point(ch, &b).unwrap();
            assert!(parameters(ch, &p).is_ok(), "{name}");
            let face: Vec<usize> = vec![0, 2];
            let d = degenerate_point(ch, &p, &face);
            assert!(parameters(ch, &d).is_ok(), "{name}");
            assert!(d.values.iter().any(Zero::is_zero));
        }
        assert_eq!(
            torus_point(&c5[0], &vec![rat_int(0); 5]),
            Err(GhilbError::ZeroTorusValue)
        );
    }

    #[test]
    fn transition_identity_and_non_adjacent() {
        let c4 = chart_catalog(4).unwrap();
        let a = find_chart(&c4, "Delta_1").unwrap();
        let t = transition(a, a).unwrap();
        assert_eq!(
            t.exponents,
            vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1]
            ]
        );
        let b = find_chart(&c4, "Delta_2").unwrap();
        assert!(matches!(transition(a, b), Err(GhilbError::NotAdjacent(..))));
    }
}

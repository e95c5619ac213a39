use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::decomp::{Cell, Decomposition};
use super::lattice::{center, midpoint, u_point, unit, w_point};
use super::GeomError;
use crate::exactlin::{rat_int, Rat, RatVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionName {
    /// The unique integral decomposition: the outer simplices plus the core.
    Xi,
    /// The decomposition of the Hilbert scheme.
    XiStar,
    /// `n = 4` only: the core cut along the diagonal `v^{j4} v^{kl}`, `j in 1..=3`.
    XiJ(usize),
    /// `n = 5` only: the core cut into `C`, `D_i`, `E_i`.
    XiPrime,
}

impl fmt::Display for DecompositionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Xi => write!(f, "xi"),
            Self::XiStar => write!(f, "xi-star"),
            Self::XiJ(j) => write!(f, "xi-{j}"),
            Self::XiPrime => write!(f, "xi-prime"),
        }
    }
}

impl FromStr for DecompositionName {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, GeomError> {
        let unknown = || GeomError::UnknownDecomposition {
            name: s.to_string(),
            n: 0,
        };
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "xi" => Ok(Self::Xi),
            "xi-star" | "xistar" => Ok(Self::XiStar),
            "xi-prime" | "xiprime" => Ok(Self::XiPrime),
            other => {
                let j: usize = other
                    .strip_prefix("xi-")
                    .and_then(|j| j.parse().ok())
                    .ok_or_else(unknown)?;
                Ok(Self::XiJ(j))
            }
        }
    }
}

fn others(n: usize, excl: &[usize]) -> Vec<usize> {
    (0..n).filter(|a| !excl.contains(a)).collect()
}

/// `Delta_j = <e^j, v^{ij} : i != j>`.
fn outer(n: usize, j: usize) -> Vec<RatVec> {
    let mut c = vec![unit(n, j)];
    c.extend(others(n, &[j]).into_iter().map(|i| midpoint(n, i, j)));
    c
}

fn core_vertices(n: usize) -> Vec<RatVec> {
    (0..n)
        .tuple_combinations()
        .map(|(i, j)| midpoint(n, i, j))
        .collect()
}

pub fn core_cell(n: usize) -> Cell {
    Cell::new(core_vertices(n)).expect("midpoints lie in Delta")
}

/// Normalized volume of the core: `|G| - n`.
pub fn core_volume(n: usize) -> Rat {
    rat_int((1i64 << (n - 1)) - n as i64)
}

/// Named maximal cells of the decomposition, in a fixed order; names use
/// one-based indices (`Delta_1`, `Cp_3`, `II_12`, `IV_123`, ...).
pub(crate) fn named_cells(
    name: DecompositionName,
    n: usize,
) -> Result<Vec<(String, Vec<RatVec>)>, GeomError> {
    let unsupported = || GeomError::UnknownDecomposition {
        name: name.to_string(),
        n,
    };
    if !(3..=5).contains(&n) {
        return Err(GeomError::UnsupportedDimension(n));
    }
    let mut cells: Vec<(String, Vec<RatVec>)> = (0..n)
        .map(|j| (format!("Delta_{}", j + 1), outer(n, j)))
        .collect();
    let v = |i: usize, j: usize| midpoint(n, i, j);
    match (name, n) {
        (DecompositionName::Xi, _) => cells.push(("Core".into(), core_vertices(n))),
        (DecompositionName::XiStar, 4) => {
            let c = center(4);
            for j in 0..4 {
                let mut cj = vec![c.clone()];
                cj.extend(others(4, &[j]).into_iter().map(|k| v(j, k)));
                cells.push((format!("C_{}", j + 1), cj));
            }
            for j in 0..4 {
                let mut cp = vec![c.clone()];
                cp.extend(
                    others(4, &[j])
                        .into_iter()
                        .tuple_combinations()
                        .map(|(k, l)| v(k, l)),
                );
                cells.push((format!("Cp_{}", j + 1), cp));
            }
        }
        (DecompositionName::XiStar, 5) => {
            let (u, w) = (|i| u_point(5, i), |i| w_point(5, i));
            for i in 0..5 {
                let mut c = vec![w(i)];
                c.extend(others(5, &[i]).into_iter().map(|k| v(i, k)));
                cells.push((format!("I_{}", i + 1), c));
            }
            for i in 0..5 {
                for j in others(5, &[i]) {
                    let mut c = vec![w(i), u(j)];
                    c.extend(others(5, &[i, j]).into_iter().map(|k| v(i, k)));
                    cells.push((format!("II_{}{}", i + 1, j + 1), c));
                }
            }
            for (j, k) in (0..5).tuple_combinations() {
                let mut c = vec![u(j), u(k)];
                c.extend(
                    others(5, &[j, k])
                        .into_iter()
                        .tuple_combinations()
                        .map(|(a, b)| v(a, b)),
                );
                cells.push((format!("III_{}{}", j + 1, k + 1), c));
            }
            for i in 0..5 {
                for (j, k) in others(5, &[i]).into_iter().tuple_combinations() {
                    let mut c = vec![w(i), u(j), u(k)];
                    c.extend(others(5, &[i, j, k]).into_iter().map(|l| v(i, l)));
                    cells.push((format!("IV_{}{}{}", i + 1, j + 1, k + 1), c));
                }
            }
            for (i, m) in (0..5).tuple_combinations() {
                let mut c = vec![w(i), w(m), v(i, m)];
                c.extend(others(5, &[i, m]).into_iter().map(u));
                cells.push((format!("V_{}{}", i + 1, m + 1), c));
            }
            let mut vi: Vec<RatVec> = (0..5).map(u).collect();
            vi.extend((0..5).map(w));
            cells.push(("VI".into(), vi));
        }
        (DecompositionName::XiJ(j), 4) if (1..=3).contains(&j) => {
            let j = j - 1;
            let kl = others(3, &[j]);
            let (k, l) = (kl[0], kl[1]);
            let square = [v(j, k), v(j, l), v(l, 3), v(k, 3)];
            for s in 0..4 {
                let t = (s + 1) % 4;
                cells.push((
                    format!("S_{}", s + 1),
                    vec![v(j, 3), v(k, l), square[s].clone(), square[t].clone()],
                ));
            }
        }
        (DecompositionName::XiPrime, 5) => {
            let tau = |x: &RatVec, p: usize| -> RatVec {
                (0..5).map(|a| x[(a + 5 - p) % 5].clone()).collect()
            };
            cells.push((
                "C".into(),
                vec![v(0, 1), v(1, 2), v(2, 3), v(3, 4), v(0, 4)],
            ));
            let d0 = [v(0, 1), v(1, 2), v(2, 3), v(0, 2), v(0, 4)];
            let e0 = [v(2, 4), v(1, 2), v(1, 4), v(3, 4), v(0, 4)];
            for p in 0..5 {
                cells.push((format!("D_{p}"), d0.iter().map(|x| tau(x, p)).collect()));
            }
            for p in 0..5 {
                cells.push((format!("E_{p}"), e0.iter().map(|x| tau(x, p)).collect()));
            }
        }
        _ => return Err(unsupported()),
    }
    Ok(cells)
}

/// The named decomposition in canonical form.
pub fn standard_decomposition(
    name: DecompositionName,
    n: usize,
) -> Result<Decomposition, GeomError> {
    let cells = named_cells(name, n)?;
    Ok(Decomposition::from_cells(
        n,
        cells.into_iter().map(|(_, c)| c).collect(),
        Some(&name.to_string()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(
            "xi-star".parse::<DecompositionName>().unwrap(),
            DecompositionName::XiStar
        );
        assert_eq!(
            "Xi_2".parse::<DecompositionName>().unwrap(),
            DecompositionName::XiJ(2)
        );
        assert!("nope".parse::<DecompositionName>().is_err());
    }

    #[test]
    fn cell_counts() {
        assert_eq!(
            standard_decomposition(DecompositionName::Xi, 4)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            standard_decomposition(DecompositionName::XiStar, 4)
                .unwrap()
                .len(),
            12
        );
        assert_eq!(
            standard_decomposition(DecompositionName::XiStar, 5)
                .unwrap()
                .len(),
            81
        );
        assert_eq!(
            standard_decomposition(DecompositionName::XiJ(1), 4)
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            standard_decomposition(DecompositionName::XiPrime, 5)
                .unwrap()
                .len(),
            16
        );
        assert!(standard_decomposition(DecompositionName::XiPrime, 4).is_err());
        assert!(standard_decomposition(DecompositionName::XiJ(4), 4).is_err());
        assert!(standard_decomposition(DecompositionName::XiStar, 3).is_err());
    }

    #[test]
    fn core_volumes() {
        assert_eq!(core_cell(3).volume(), core_volume(3));
        assert_eq!(core_cell(4).volume(), core_volume(4));
        assert_eq!(core_cell(5).volume(), core_volume(5));
    }
}

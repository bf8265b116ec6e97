//! Cell enumeration for central hyperplane arrangements restricted to the
//! standard simplex `{lambda >= 0, sum lambda = 1}`.
//!
//! A full-dimensional cell is a maximal region of the simplex on which
//! every hyperplane evaluates with a strict, constant sign. Cells are found
//! by inserting hyperplanes one at a time and splitting the surviving
//! partial sign patterns, with an exact LP feasibility test per split. Each
//! cell is reported once with a strictly interior rational representative.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lp::{lp_max, LpOutcome};
use crate::poly::{Halfspace, HPolyhedron};
use crate::rat::{QVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn of(r: &Rational) -> Option<Sign> {
        if r.is_positive() {
            Some(Sign::Plus)
        } else if r.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "-" => Ok(Sign::Minus),
            "+" => Ok(Sign::Plus),
            other => Err(serde::de::Error::custom(format!("bad sign {other:?}"))),
        }
    }
}

/// Strict sign of every (nonzero) hyperplane on one cell, in input order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector(pub Vec<Sign>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// A rational point strictly inside the cell: strictly positive
    /// coordinates and strictly nonzero against every hyperplane.
    pub rep: QVector,
    pub signs: SignVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellEnumeration {
    /// One entry per full-dimensional cell, sorted by sign vector.
    pub cells: Vec<Cell>,
    /// Zero normals are not hyperplanes; they are dropped and counted.
    pub dropped_zero_normals: usize,
}

/// One representative per full-dimensional cell of the arrangement of
/// `hyperplanes` (normals through the origin) restricted to the standard
/// simplex in `R^dim`.
pub fn enumerate_cells(
    hyperplanes: &[QVector],
    dim: usize,
    limits: &Limits,
) -> Result<CellEnumeration> {
    assert!(dim >= 1, "simplex needs at least one coordinate");
    for h in hyperplanes {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: h.dim(),
                right: dim,
            });
        }
    }
    let mut dropped = 0;
    // Deduplicate parallel normals, remembering orientation per input.
    let mut planes: Vec<QVector> = Vec::new();
    // (plane index, flipped) for every kept input hyperplane.
    let mut input_map: Vec<(usize, bool)> = Vec::new();
    for h in hyperplanes {
        if h.is_zero() {
            dropped += 1;
            continue;
        }
        let prim = h.primitive();
        let first = prim
            .iter()
            .find(|r| !r.is_zero())
            .expect("nonzero vector has a nonzero entry");
        let (canon, flipped) = if first.is_negative() {
            (prim.neg(), true)
        } else {
            (prim, false)
        };
        let pos = match planes.iter().position(|p| *p == canon) {
            Some(p) => p,
            None => {
                planes.push(canon);
                planes.len() - 1
            }
        };
        input_map.push((pos, flipped));
    }

    struct Partial {
        signs: Vec<Sign>,
        rep: QVector,
    }

    let root_rep = interior_point(&planes, &[], dim)?.expect("simplex has interior");
    let mut partials = vec![Partial {
        signs: vec![],
        rep: root_rep,
    }];
    for i in 0..planes.len() {
        let mut next: Vec<Partial> = Vec::new();
        for partial in &partials {
            let val = planes[i].dot(&partial.rep);
            let free_sign = Sign::of(&val);
            for sign in [Sign::Minus, Sign::Plus] {
                let mut signs = partial.signs.clone();
                signs.push(sign);
                if free_sign == Some(sign) {
                    next.push(Partial {
                        signs,
                        rep: partial.rep.clone(),
                    });
                } else if let Some(rep) = interior_point(&planes, &signs, dim)? {
                    next.push(Partial { signs, rep });
                }
            }
        }
        if next.len() as u64 > limits.cell_budget {
            return Err(Error::BudgetExceeded {
                what: "arrangement cells",
                need: next.len() as u128,
                budget: limits.cell_budget,
            });
        }
        partials = next;
    }

    let mut cells: Vec<Cell> = Vec::with_capacity(partials.len());
    for partial in &partials {
        // Re-solve over the full sign pattern so the representative is the
        // deepest interior point, independent of insertion history.
        let rep = interior_point(&planes, &partial.signs, dim)?
            .expect("pattern was certified feasible");
        let signs = SignVector(
            input_map
                .iter()
                .map(|&(pos, flipped)| {
                    let s = partial.signs[pos];
                    if flipped {
                        s.flip()
                    } else {
                        s
                    }
                })
                .collect(),
        );
        cells.push(Cell { rep, signs });
    }
    cells.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(CellEnumeration {
        cells,
        dropped_zero_normals: dropped,
    })
}

/// Deepest strictly interior point of the region of the simplex where the
/// first `signs.len()` planes carry the given strict signs: maximize `t`
/// subject to `lambda` in the simplex, `lambda_j >= t`, and
/// `sign * (plane . lambda) >= t`. Returns `None` when the region has no
/// interior (optimal `t = 0`).
fn interior_point(planes: &[QVector], signs: &[Sign], dim: usize) -> Result<Option<QVector>> {
    // Variables (lambda, t), all nonnegative.
    let mut halfspaces: Vec<Halfspace> = Vec::new();
    let ones = QVector::new(vec![Rational::one(); dim]).with_appended(Rational::zero());
    halfspaces.push(Halfspace::new(ones.clone(), Rational::one()));
    halfspaces.push(Halfspace::new(ones.neg(), -Rational::one()));
    for j in 0..dim {
        let mut n = QVector::zeros(dim + 1);
        n.set(j, -Rational::one());
        n.set(dim, Rational::one());
        halfspaces.push(Halfspace::new(n, Rational::zero()));
    }
    for (plane, sign) in planes.iter().zip(signs) {
        let oriented = match sign {
            Sign::Plus => plane.clone(),
            Sign::Minus => plane.neg(),
        };
        halfspaces.push(Halfspace::new(
            oriented.neg().with_appended(Rational::one()),
            Rational::zero(),
        ));
    }
    halfspaces.push(Halfspace::new(
        QVector::unit(dim + 1, dim),
        Rational::one(),
    ));
    let p = HPolyhedron::new(dim + 1, halfspaces, true)?;
    let objective = QVector::unit(dim + 1, dim);
    match lp_max(&objective, &p)? {
        LpOutcome::Optimal { value, point } => {
            if value.is_positive() {
                Ok(Some(point.without_last()))
            } else {
                Ok(None)
            }
        }
        // Even the weak pattern may be empty (a plane one-signed over the
        // whole simplex); that is just "no cell".
        LpOutcome::Infeasible { .. } => Ok(None),
        // lambda is confined to the simplex and t <= 1.
        LpOutcome::Unbounded { .. } => unreachable!("interior LP is bounded"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[i64]) -> QVector {
        QVector::from_ints(e)
    }

    #[test]
    fn empty_arrangement_has_one_cell() {
        let out = enumerate_cells(&[], 2, &Limits::default()).unwrap();
        assert_eq!(out.cells.len(), 1);
        assert_eq!(
            out.cells[0].rep,
            QVector::new(vec![Rational::new(1, 2), Rational::new(1, 2)])
        );
        assert_eq!(out.dropped_zero_normals, 0);
    }

    #[test]
    fn single_line_splits_the_simplex() {
        let out = enumerate_cells(&[v(&[1, -1])], 2, &Limits::default()).unwrap();
        assert_eq!(out.cells.len(), 2);
        assert_eq!(out.cells[0].signs, SignVector(vec![Sign::Minus]));
        assert_eq!(out.cells[1].signs, SignVector(vec![Sign::Plus]));
        for cell in &out.cells {
            let val = v(&[1, -1]).dot(&cell.rep);
            assert_eq!(Sign::of(&val), Some(cell.signs.0[0]));
            assert!(cell.rep.iter().all(Rational::is_positive));
        }
    }

    #[test]
    fn two_lines_make_three_cells() {
        let planes = vec![v(&[1, -1]), v(&[1, -3])];
        let out = enumerate_cells(&planes, 2, &Limits::default()).unwrap();
        assert_eq!(out.cells.len(), 3);
        let patterns: Vec<_> = out.cells.iter().map(|c| c.signs.clone()).collect();
        assert!(patterns.contains(&SignVector(vec![Sign::Minus, Sign::Minus])));
        assert!(patterns.contains(&SignVector(vec![Sign::Plus, Sign::Minus])));
        assert!(patterns.contains(&SignVector(vec![Sign::Plus, Sign::Plus])));
    }

    #[test]
    fn zero_normals_are_dropped() {
        let out = enumerate_cells(&[v(&[0, 0]), v(&[1, -1])], 2, &Limits::default()).unwrap();
        assert_eq!(out.dropped_zero_normals, 1);
        assert_eq!(out.cells.len(), 2);
        // Sign vectors cover only the surviving hyperplane.
        assert!(out.cells.iter().all(|c| c.signs.0.len() == 1));
    }

    #[test]
    fn parallel_and_flipped_normals_share_cells() {
        // -2(l1 - l2) is the same hyperplane with reversed orientation.
        let out =
            enumerate_cells(&[v(&[1, -1]), v(&[-2, 2])], 2, &Limits::default()).unwrap();
        assert_eq!(out.cells.len(), 2);
        for cell in &out.cells {
            assert_eq!(cell.signs.0[0], cell.signs.0[1].flip());
        }
    }

    #[test]
    fn one_dimensional_simplex() {
        // Simplex is the single point lambda = 1.
        let out = enumerate_cells(&[v(&[1])], 1, &Limits::default()).unwrap();
        assert_eq!(out.cells.len(), 1);
        assert_eq!(out.cells[0].signs, SignVector(vec![Sign::Plus]));
        assert_eq!(out.cells[0].rep, v(&[1]));
    }

    #[test]
    fn plane_missing_the_simplex_interior() {
        // l1 + l2 is strictly positive on the whole simplex.
        let out = enumerate_cells(&[v(&[1, 1])], 2, &Limits::default()).unwrap();
        assert_eq!(out.cells.len(), 1);
        assert_eq!(out.cells[0].signs, SignVector(vec![Sign::Plus]));
    }

    #[test]
    fn budget_is_enforced() {
        let planes = vec![v(&[1, -1]), v(&[1, -3]), v(&[3, -1])];
        let tight = Limits {
            cell_budget: 2,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_cells(&planes, 2, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}

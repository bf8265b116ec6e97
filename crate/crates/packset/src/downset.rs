//! Input models: packing polyhedra `{x >= 0 : Ax <= b}` with nonnegative
//! data, and finite unions of them as downsets of the nonnegative orthant,
//! together with normalization of general halfspace descriptions into
//! packing form, the exact sup oracle, and Farkas decompositions of valid
//! directions.

use serde::de;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DownsetWitness, Error, Result};
use crate::limits::Limits;
use crate::lp::{lp_max, LpOutcome};
use crate::packset::{KnapsackIneq, PackingSet};
use crate::poly::{downset_packing_rows, h_to_v, Halfspace, HPolyhedron, VPolyhedron};
use crate::rat::{QVector, Rational};

/// `{x >= 0 : Ax <= b}` with `A >= 0` and `b >= 0` componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingPolyhedron {
    dim: usize,
    rows: Vec<QVector>,
    rhs: Vec<Rational>,
}

impl PackingPolyhedron {
    pub fn new(dim: usize, rows: Vec<QVector>, rhs: Vec<Rational>) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                left: rows.len(),
                right: rhs.len(),
            });
        }
        for r in &rows {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: r.dim(),
                    right: dim,
                });
            }
            if !r.is_nonneg() {
                return Err(Error::NegativeCoefficient);
            }
        }
        if rhs.iter().any(Rational::is_negative) {
            return Err(Error::NegativeCoefficient);
        }
        Ok(PackingPolyhedron { dim, rows, rhs })
    }

    /// The whole nonnegative orthant (no rows).
    pub fn orthant(dim: usize) -> Self {
        PackingPolyhedron {
            dim,
            rows: vec![],
            rhs: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn to_hpolyhedron(&self) -> HPolyhedron {
        HPolyhedron {
            dim: self.dim,
            halfspaces: self
                .rows
                .iter()
                .zip(&self.rhs)
                .map(|(r, b)| Halfspace::new(r.clone(), b.clone()))
                .collect(),
            nonneg: true,
        }
    }

    pub fn contains_point(&self, x: &QVector) -> bool {
        self.to_hpolyhedron().contains_point(x)
    }

    /// Indices whose column of `A` is entirely zero: exactly the recession
    /// directions `e_j` of the polyhedron (0-based).
    pub fn free_coords(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&j| self.rows.iter().all(|r| r.get(j).is_zero()))
            .collect()
    }

    /// Bounded iff no free coordinate remains.
    pub fn is_bounded(&self) -> bool {
        self.free_coords().is_empty()
    }

    pub fn vertex_description(&self, limits: &Limits) -> Result<VPolyhedron> {
        h_to_v(&self.to_hpolyhedron(), limits)
    }

    /// Exact integer hull `conv(P ∩ N^n)` in packing form: the lattice
    /// points are the blockwise intersection of the per-row knapsack sets,
    /// and the hull of that packing set is already irredundant.
    pub fn integer_hull(&self, limits: &Limits) -> Result<PackingPolyhedron> {
        let mut points = PackingSet::all(self.dim);
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let knap = KnapsackIneq::new(row.clone(), b.clone())?;
            points = points.intersect(&PackingSet::from_knapsack(&knap, limits)?)?;
        }
        let hull = points.integer_hull(limits)?;
        PackingPolyhedron::from_packing_halfspaces(&hull)
    }

    /// Reinterpret a halfspace description already in packing shape
    /// (nonnegative normals and bounds, `nonneg` set).
    pub(crate) fn from_packing_halfspaces(h: &HPolyhedron) -> Result<PackingPolyhedron> {
        debug_assert!(h.nonneg);
        PackingPolyhedron::new(
            h.dim,
            h.halfspaces.iter().map(|hs| hs.normal.clone()).collect(),
            h.halfspaces.iter().map(|hs| hs.rhs.clone()).collect(),
        )
    }
}

impl Serialize for PackingPolyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PackingPolyhedron", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("A", &self.rows)?;
        st.serialize_field("b", &self.rhs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PackingPolyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: Option<usize>,
            #[serde(rename = "A")]
            a: Vec<QVector>,
            b: Vec<Rational>,
        }
        let raw = Raw::deserialize(d)?;
        let dim = match raw.dim {
            Some(d) => d,
            None => raw
                .a
                .first()
                .map(QVector::dim)
                .ok_or_else(|| de::Error::custom("empty system needs an explicit dim"))?,
        };
        PackingPolyhedron::new(dim, raw.a, raw.b).map_err(de::Error::custom)
    }
}

/// A finite union of packing polyhedra, as a (generally non-convex)
/// downset of the nonnegative orthant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DownsetModel {
    dim: usize,
    pieces: Vec<PackingPolyhedron>,
}

impl DownsetModel {
    pub fn new(dim: usize, pieces: Vec<PackingPolyhedron>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in &pieces {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: p.dim(),
                    right: dim,
                });
            }
        }
        Ok(DownsetModel { dim, pieces })
    }

    pub fn single(piece: PackingPolyhedron) -> Self {
        DownsetModel {
            dim: piece.dim(),
            pieces: vec![piece],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[PackingPolyhedron] {
        &self.pieces
    }

    pub fn contains_point(&self, x: &QVector) -> bool {
        self.pieces.iter().any(|p| p.contains_point(x))
    }

    /// Coordinates unbounded in at least one piece. Any direction with
    /// positive weight there has infinite supremum over the union.
    pub fn unbounded_coords(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .pieces
            .iter()
            .flat_map(PackingPolyhedron::free_coords)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl<'de> Deserialize<'de> for DownsetModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct RawPiece {
            #[serde(rename = "A")]
            a: Vec<QVector>,
            b: Vec<Rational>,
        }
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            pieces: Vec<RawPiece>,
        }
        let raw = Raw::deserialize(d)?;
        let pieces = raw
            .pieces
            .into_iter()
            .map(|p| PackingPolyhedron::new(raw.dim, p.a, p.b))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        DownsetModel::new(raw.dim, pieces).map_err(de::Error::custom)
    }
}

/// The exact value of `sup { f . x : x in D }`; finiteness decides
/// membership of `f` in the bounded-direction cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupValue {
    Finite(Rational),
    Infinite,
}

impl SupValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SupValue::Finite(v) => Some(v),
            SupValue::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedSupport {
    pub direction: QVector,
    pub sup: SupValue,
}

/// `sup { f . x : x in D }` for nonnegative `f`, exactly. Negative entries
/// are rejected; take the positive part first, which never increases the
/// supremum over a downset.
pub fn sup_oracle(model: &DownsetModel, f: &QVector) -> Result<BoundedSupport> {
    if f.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: model.dim(),
        });
    }
    if !f.is_nonneg() {
        return Err(Error::NegativeDirection);
    }
    let mut best: Option<Rational> = None;
    for piece in model.pieces() {
        match lp_max(f, &piece.to_hpolyhedron())? {
            LpOutcome::Optimal { value, .. } => {
                best = Some(match best {
                    None => value,
                    Some(b) => b.max(value),
                });
            }
            LpOutcome::Unbounded { .. } => {
                return Ok(BoundedSupport {
                    direction: f.clone(),
                    sup: SupValue::Infinite,
                });
            }
            // A packing polyhedron contains the origin.
            LpOutcome::Infeasible { .. } => unreachable!("packing polyhedra are nonempty"),
        }
    }
    Ok(BoundedSupport {
        direction: f.clone(),
        sup: SupValue::Finite(best.expect("models have at least one piece")),
    })
}

/// Exact multipliers expressing a valid direction through the rows:
/// `lambda^T A - gamma^T = f^T` with `lambda, gamma >= 0` and
/// `lambda^T b <= sup { f . x : x in P }`, minimizing `lambda^T b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasDecomposition {
    pub lambda: QVector,
    pub gamma: QVector,
}

pub fn farkas_decompose(f: &QVector, p: &PackingPolyhedron) -> Result<FarkasDecomposition> {
    if f.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: p.dim(),
        });
    }
    // Finiteness of the supremum: checked on the positive part, which
    // bounds the original direction from above on the orthant.
    match lp_max(&f.positive_part(), &p.to_hpolyhedron())? {
        LpOutcome::Unbounded { .. } => return Err(Error::NotValidDirection),
        LpOutcome::Infeasible { .. } => unreachable!("packing polyhedra are nonempty"),
        LpOutcome::Optimal { .. } => {}
    }
    // Minimize b^T lambda subject to A^T lambda >= f, lambda >= 0, as a
    // maximization of the negated objective.
    let m = p.row_count();
    let n = p.dim();
    let mut halfspaces = Vec::with_capacity(n);
    for j in 0..n {
        let col = QVector::new((0..m).map(|i| -p.rows()[i].get(j)).collect());
        halfspaces.push(Halfspace::new(col, -f.get(j)));
    }
    let lp = HPolyhedron::new(m, halfspaces, true)?;
    let objective = QVector::new(p.rhs().iter().map(|b| -b).collect());
    match lp_max(&objective, &lp)? {
        LpOutcome::Optimal { point: lambda, .. } => {
            let mut gamma = QVector::zeros(n);
            for j in 0..n {
                let mut acc = Rational::zero();
                for i in 0..m {
                    acc += &(lambda.get(i) * p.rows()[i].get(j));
                }
                gamma.set(j, &acc - f.get(j));
            }
            debug_assert!(gamma.is_nonneg());
            Ok(FarkasDecomposition { lambda, gamma })
        }
        // Feasibility is Farkas' lemma for the checked direction; the
        // objective b^T lambda is bounded below by zero.
        other => unreachable!("decomposition LP is feasible and bounded: {other:?}"),
    }
}

/// Check that a halfspace description is a downset of the orthant and
/// return it in canonical packing form. On failure the witness is a point
/// of the input together with a smaller point outside it.
pub fn normalize_downset(p: &HPolyhedron, limits: &Limits) -> Result<PackingPolyhedron> {
    if !p.nonneg {
        return Err(Error::MissingNonneg);
    }
    let gens = h_to_v(p, limits)?;
    if gens.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    for h in &p.halfspaces {
        let pos = h.positive_part();
        if pos.normal == h.normal {
            continue;
        }
        // The positive part tightens the halfspace on the orthant; the
        // description is a downset iff it stays valid.
        let inside = match lp_max(&pos.normal, p)? {
            LpOutcome::Optimal { value, point } => {
                if value <= pos.rhs {
                    continue;
                }
                point
            }
            LpOutcome::Unbounded { ray } => {
                // Walk from any vertex along the improving ray until the
                // positive part is violated.
                let base = &gens.vertices[0];
                let gain = pos.normal.dot(&ray);
                debug_assert!(gain.is_positive());
                let have = pos.normal.dot(base);
                let need = &(&(&pos.rhs - &have) + &Rational::one()) / &gain;
                let t = Rational::from_int(1).max(need);
                base.add(&ray.scale(&t))
            }
            LpOutcome::Infeasible { .. } => unreachable!("emptiness was ruled out"),
        };
        let below = QVector::new(
            inside
                .iter()
                .zip(h.normal.iter())
                .map(|(x, a)| {
                    if a.is_negative() {
                        Rational::zero()
                    } else {
                        x.clone()
                    }
                })
                .collect(),
        );
        debug_assert!(p.contains_point(&inside));
        debug_assert!(!p.contains_point(&below));
        return Err(Error::NotADownset {
            witness: DownsetWitness { inside, below },
        });
    }
    let rows = downset_packing_rows(p)?;
    PackingPolyhedron::new(
        p.dim,
        rows.iter().map(|h| h.normal.clone()).collect(),
        rows.iter().map(|h| h.rhs.clone()).collect(),
    )
}

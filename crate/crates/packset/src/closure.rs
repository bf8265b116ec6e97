//! The aggregation-closure engine.
//!
//! For a packing polyhedron `P = {x >= 0 : Ax <= b}` the k-aggregation
//! closure is the intersection, over all k-tuples of nonnegative row
//! multipliers, of the convex hulls of the lattice sets cut out by the
//! aggregated inequalities. The engine realizes that intersection finitely:
//!
//!  * multipliers live on the standard simplex (aggregations are invariant
//!    under positive scaling), and the lattice set `S_lambda` is constant
//!    on every full-dimensional cell of the hyperplane arrangement spanned
//!    by the candidate lattice points, so one representative per cell
//!    suffices;
//!  * on cell boundaries the lattice set only grows, so the minimal sets —
//!    the only ones that matter in an intersection of hulls — are attained
//!    on full-dimensional cells;
//!  * when every entry of `A` is strictly positive, a global coordinate
//!    box provably contains every `S_lambda`, the arrangement over its
//!    lattice points is complete, and the computed closure is exact;
//!  * otherwise the arrangement is truncated to a finite box and the
//!    result is a certified outer approximation, never claimed exact.
//!
//! The same machinery applies to finite unions of packing polyhedra
//! (downset models) with directions `f` in place of multipliers and the
//! sup oracle in place of `b`, and the infinite closure is computed
//! exactly through an independent route: the integer hull of the convex
//! hull of the union.

use itertools::Itertools;
use rand::Rng;
use serde::de;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cells::enumerate_cells;
use crate::downset::{
    normalize_downset, sup_oracle, DownsetModel, PackingPolyhedron, SupValue,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lp::{lp_max, LpOutcome};
use crate::packset::{lattice_box, ExtNat, ExtPoint, KnapsackIneq, PackingSet};
use crate::poly::{h_to_v, poly_contains, poly_equal, v_to_h, HPolyhedron, VPolyhedron};
use crate::rat::{QVector, Rational};
use crate::wqo::{BasisState, FnLeq};

/// `k` simplex-normalized multiplier vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregationTuple {
    lambdas: Vec<QVector>,
}

impl AggregationTuple {
    /// Normalizes each multiplier onto the simplex; rejects negative
    /// entries and zero vectors.
    pub fn new(lambdas: Vec<QVector>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::EmptySequence);
        }
        let lambdas = lambdas
            .into_iter()
            .map(|l| {
                if !l.is_nonneg() {
                    return Err(Error::NegativeDirection);
                }
                let total: Rational = l.iter().cloned().sum();
                if total.is_zero() {
                    return Err(Error::NegativeDirection);
                }
                Ok(l.scale(&total.recip()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AggregationTuple { lambdas })
    }

    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[QVector] {
        &self.lambdas
    }

    /// The aggregated knapsack of every slot.
    pub fn knapsacks(&self, p: &PackingPolyhedron) -> Result<Vec<KnapsackIneq>> {
        self.lambdas.iter().map(|l| aggregate(p, l)).collect()
    }
}

/// One enumerated multiplier together with its lattice set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub multiplier: QVector,
    pub set: PackingSet,
}

/// The sets that generate the closure. When `minimal` the sets form an
/// antichain under inclusion and every enumerated lattice set contains one
/// of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeFamily {
    pub reps: Vec<Representative>,
    pub minimal: bool,
}

impl Serialize for RepresentativeFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.reps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepresentativeFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let reps = Vec::<Representative>::deserialize(d)?;
        Ok(RepresentativeFamily {
            reps,
            minimal: true,
        })
    }
}

/// How the emitted hull relates to the true closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Every entry of `A` is positive (after projecting free coordinates),
    /// so the multiplier arrangement is complete and the hull is exact.
    AllPositiveA,
    /// The infinite closure computed as the integer hull of the convex
    /// hull of the union; exact.
    ConvUnionIntegerHull,
    /// Arrangement truncated to a finite box; the hull is a certified
    /// superset of the closure.
    TruncatedBox,
}

impl Certificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certificate::AllPositiveA => "all-positive-A",
            Certificate::ConvUnionIntegerHull => "conv-union-integer-hull",
            Certificate::TruncatedBox => "truncated-box",
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "all-positive-A" => Ok(Certificate::AllPositiveA),
            "conv-union-integer-hull" => Ok(Certificate::ConvUnionIntegerHull),
            "truncated-box" => Ok(Certificate::TruncatedBox),
            other => Err(de::Error::custom(format!("bad certificate {other:?}"))),
        }
    }
}

/// A computed closure: the hull in packing form (`None` when the closure
/// is empty), exactness, and the family that produced it. `truncation_box`
/// carries the box actually used in truncated mode, with `inf` on
/// projected free coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureResult {
    pub hull: Option<PackingPolyhedron>,
    pub exact: bool,
    pub certificate: Certificate,
    pub family: RepresentativeFamily,
    pub truncation_box: Option<Vec<ExtNat>>,
}

/// `(A^T lambda) . x <= (b^T lambda)` for `lambda >= 0`.
pub fn aggregate(p: &PackingPolyhedron, lambda: &QVector) -> Result<KnapsackIneq> {
    if lambda.dim() != p.row_count() {
        return Err(Error::DimensionMismatch {
            left: lambda.dim(),
            right: p.row_count(),
        });
    }
    if !lambda.is_nonneg() {
        return Err(Error::NegativeDirection);
    }
    let mut coeffs = QVector::zeros(p.dim());
    for j in 0..p.dim() {
        let mut acc = Rational::zero();
        for (i, row) in p.rows().iter().enumerate() {
            if !row.get(j).is_zero() && !lambda.get(i).is_zero() {
                acc += &(lambda.get(i) * row.get(j));
            }
        }
        coeffs.set(j, acc);
    }
    let bound: Rational = lambda.iter().zip(p.rhs()).map(|(l, b)| l * b).sum();
    KnapsackIneq::new(coeffs, bound)
}

/// When every entry of `A` is strictly positive, a box containing every
/// aggregated lattice set: simplex multipliers give aggregated
/// coefficients at least the column minima and bounds at most the maximum
/// of `b`.
pub fn global_box(p: &PackingPolyhedron) -> Option<Vec<u64>> {
    if p.row_count() == 0 {
        return None;
    }
    let mut bounds = Vec::with_capacity(p.dim());
    let bmax = p.rhs().iter().max().expect("nonempty rhs");
    for j in 0..p.dim() {
        let col_min = p
            .rows()
            .iter()
            .map(|r| r.get(j))
            .min()
            .expect("nonempty rows");
        if !col_min.is_positive() {
            return None;
        }
        bounds.push(
            (bmax / col_min)
                .floor_u64()
                .expect("nonnegative finite bound"),
        );
    }
    Some(bounds)
}

/// Enumerate the lattice sets realized by simplex multipliers, one per
/// full-dimensional cell of the arrangement `{lambda : lambda^T (Az - b) =
/// 0}` over lattice points `z` of the box, reduced to the minimal family.
///
/// On a full-dimensional cell the strict signs pin down membership of
/// every box point, and stepping onto a cell boundary only relaxes strict
/// exclusions, so boundary multipliers yield supersets: minimal sets occur
/// on full-dimensional cells.
pub fn lambda_cells(
    p: &PackingPolyhedron,
    bounds: &[u64],
    limits: &Limits,
) -> Result<RepresentativeFamily> {
    let m = p.row_count();
    assert!(m >= 1, "aggregation needs at least one row");
    check_box_budget(bounds, limits)?;
    let mut planes: Vec<QVector> = Vec::new();
    for z in lattice_box(bounds) {
        let zq = QVector::new(z.iter().map(|&v| Rational::from_u64(v)).collect());
        let mut w = QVector::zeros(m);
        for (i, row) in p.rows().iter().enumerate() {
            w.set(i, &row.dot(&zq) - &p.rhs()[i]);
        }
        let any_pos = w.iter().any(Rational::is_positive);
        let any_neg = w.iter().any(Rational::is_negative);
        if any_pos && any_neg {
            planes.push(w);
        }
    }
    let cells = enumerate_cells(&planes, m, limits)?;
    let mut reps: Vec<Representative> = Vec::new();
    for cell in &cells.cells {
        let knap = aggregate(p, &cell.rep)?;
        let set = PackingSet::from_knapsack(&knap, limits)?;
        reps.push(Representative {
            multiplier: cell.rep.clone(),
            set,
        });
    }
    Ok(minimal_family(reps))
}

/// Exact `A_k(P)` when the all-positive certificate applies, otherwise a
/// certified outer approximation over `box_override` (or the coordinate
/// bounds of `P` by default).
pub fn closure_k(
    p: &PackingPolyhedron,
    k: usize,
    box_override: Option<&[u64]>,
    limits: &Limits,
) -> Result<ClosureResult> {
    assert!(k >= 1, "closure order must be positive");
    let free = p.free_coords();
    let kept: Vec<usize> = (0..p.dim()).filter(|j| !free.contains(j)).collect();
    let reduced = project_columns(p, &kept);
    if kept.is_empty() {
        // Every aggregation is trivial; the closure is the whole orthant.
        return Ok(ClosureResult {
            hull: Some(PackingPolyhedron::orthant(p.dim())),
            exact: true,
            certificate: Certificate::AllPositiveA,
            family: RepresentativeFamily {
                reps: vec![],
                minimal: true,
            },
            truncation_box: None,
        });
    }
    let certified = global_box(&reduced);
    let (bounds, exact) = match &certified {
        Some(b) => (b.clone(), true),
        None => {
            let b = match box_override {
                Some(b) => validate_box(b, &kept, p.dim())?,
                None => coordinate_bounds_poly(&reduced)?,
            };
            (b, false)
        }
    };
    let family = lambda_cells(&reduced, &bounds, limits)?;
    let hull_rows = family_closure_hull(&family, k, reduced.dim(), limits)?;
    let hull = hull_rows
        .map(|h| embed_packing(&h, &kept, p.dim()))
        .transpose()?;
    Ok(ClosureResult {
        hull,
        exact,
        certificate: if exact {
            Certificate::AllPositiveA
        } else {
            Certificate::TruncatedBox
        },
        family: embed_family(family, &kept, p.dim(), false),
        truncation_box: if exact {
            None
        } else {
            Some(embed_bounds(&bounds, &kept, p.dim()))
        },
    })
}

/// The generalized closure of a downset model over directions in the
/// simplex: certified outer approximation via a truncated arrangement of
/// `{f : f^T (z - v) = 0}` planes (lattice point vs piece vertex), with
/// the axis supports always included. Exact in dimension one, where the
/// single direction makes all closure orders collapse.
pub fn closure_k_downset(
    model: &DownsetModel,
    k: usize,
    box_override: Option<&[u64]>,
    limits: &Limits,
) -> Result<ClosureResult> {
    assert!(k >= 1, "closure order must be positive");
    let unbounded = model.unbounded_coords();
    let kept: Vec<usize> = (0..model.dim()).filter(|j| !unbounded.contains(j)).collect();
    if kept.is_empty() {
        return Ok(orthant_closure(model.dim()));
    }
    let reduced = project_model(model, &kept)?;
    if kept.len() == 1 {
        // One bounded direction: every closure equals the infinite one.
        let inf = closure_inf_reduced(&reduced, limits)?;
        return finish_downset_result(inf, &kept, model.dim(), true, None);
    }
    let bounds = match box_override {
        Some(b) => validate_box(b, &kept, model.dim())?,
        None => coordinate_bounds_model(&reduced)?,
    };
    check_box_budget(&bounds, limits)?;
    let mut vertex_pool: Vec<QVector> = Vec::new();
    for piece in reduced.pieces() {
        let gens = piece.vertex_description(limits)?;
        debug_assert!(gens.rays.is_empty(), "pieces are bounded after projection");
        vertex_pool.extend(gens.vertices);
    }
    vertex_pool.sort();
    vertex_pool.dedup();
    let mut planes: Vec<QVector> = Vec::new();
    for z in lattice_box(&bounds) {
        let zq = QVector::new(z.iter().map(|&v| Rational::from_u64(v)).collect());
        for v in &vertex_pool {
            let w = zq.sub(v);
            let any_pos = w.iter().any(Rational::is_positive);
            let any_neg = w.iter().any(Rational::is_negative);
            if any_pos && any_neg {
                planes.push(w);
            }
        }
    }
    let cells = enumerate_cells(&planes, kept.len(), limits)?;
    let mut reps: Vec<Representative> = Vec::new();
    for cell in &cells.cells {
        reps.push(direction_rep(&reduced, &cell.rep, limits)?);
    }
    // Axis supports: always valid, and they bound the hull by the
    // coordinate box.
    for j in 0..kept.len() {
        reps.push(direction_rep(&reduced, &QVector::unit(kept.len(), j), limits)?);
    }
    let family = minimal_family(reps);
    let hull_rows = family_closure_hull(&family, k, kept.len(), limits)?;
    let hull = hull_rows
        .map(|h| embed_packing(&h, &kept, model.dim()))
        .transpose()?;
    Ok(ClosureResult {
        hull,
        exact: false,
        certificate: Certificate::TruncatedBox,
        family: embed_family(family, &kept, model.dim(), true),
        truncation_box: Some(embed_bounds(&bounds, &kept, model.dim())),
    })
}

/// Exact infinite closure of a downset model: the integer hull of the
/// convex hull of the union of the pieces.
pub fn closure_inf(model: &DownsetModel, limits: &Limits) -> Result<ClosureResult> {
    let unbounded = model.unbounded_coords();
    let kept: Vec<usize> = (0..model.dim()).filter(|j| !unbounded.contains(j)).collect();
    if kept.is_empty() {
        return Ok(orthant_closure(model.dim()));
    }
    let reduced = project_model(model, &kept)?;
    let inner = closure_inf_reduced(&reduced, limits)?;
    finish_downset_result(inner, &kept, model.dim(), true, None)
}

struct ReducedClosure {
    hull: PackingPolyhedron,
    family: RepresentativeFamily,
    certificate: Certificate,
}

/// Infinite closure on a model whose pieces are all bounded.
fn closure_inf_reduced(model: &DownsetModel, limits: &Limits) -> Result<ReducedClosure> {
    let dim = model.dim();
    let mut vertices: Vec<QVector> = Vec::new();
    for piece in model.pieces() {
        let gens = piece.vertex_description(limits)?;
        debug_assert!(gens.rays.is_empty(), "pieces are bounded after projection");
        vertices.extend(gens.vertices);
    }
    vertices.sort();
    vertices.dedup();
    let vrep = VPolyhedron::new(dim, vertices, vec![])?;
    let raw = v_to_h(&vrep, limits)?;
    // The hull of a union of downsets is a downset inside the orthant, so
    // the explicit nonnegativity facets are absorbed by the flag.
    let conv = HPolyhedron::new(dim, raw.halfspaces, true)?;
    let packing = normalize_downset(&conv, limits)?;
    let hull = packing.integer_hull(limits)?;
    // The rows of the hull of the union support the whole downset; their
    // lattice sets generate the closure.
    let mut reps: Vec<Representative> = Vec::new();
    for row in packing.rows() {
        reps.push(direction_rep(model, row, limits)?);
    }
    Ok(ReducedClosure {
        hull,
        family: minimal_family(reps),
        certificate: Certificate::ConvUnionIntegerHull,
    })
}

/// The lattice set supported by direction `f` with its exact supremum.
fn direction_rep(
    model: &DownsetModel,
    f: &QVector,
    limits: &Limits,
) -> Result<Representative> {
    let support = sup_oracle(model, f)?;
    let beta = match support.sup {
        SupValue::Finite(b) => b,
        SupValue::Infinite => return Err(Error::NotValidDirection),
    };
    let knap = KnapsackIneq::new(f.clone(), beta)?;
    let set = PackingSet::from_knapsack(&knap, limits)?;
    Ok(Representative {
        multiplier: f.clone(),
        set,
    })
}

fn orthant_closure(dim: usize) -> ClosureResult {
    ClosureResult {
        hull: Some(PackingPolyhedron::orthant(dim)),
        exact: true,
        certificate: Certificate::ConvUnionIntegerHull,
        family: RepresentativeFamily {
            reps: vec![],
            minimal: true,
        },
        truncation_box: None,
    }
}

fn finish_downset_result(
    reduced: ReducedClosure,
    kept: &[usize],
    dim: usize,
    exact: bool,
    truncation: Option<Vec<ExtNat>>,
) -> Result<ClosureResult> {
    Ok(ClosureResult {
        hull: Some(embed_packing(&reduced.hull, kept, dim)?),
        exact,
        certificate: reduced.certificate,
        family: embed_family(reduced.family, kept, dim, true),
        truncation_box: truncation,
    })
}

/// Reduce to the inclusion-minimal lattice sets; smaller sets give smaller
/// hulls, so only they matter in the intersection. First-seen multipliers
/// win ties, and input order is the canonical cell order.
fn minimal_family(reps: Vec<Representative>) -> RepresentativeFamily {
    let order = FnLeq(|a: &Representative, b: &Representative| a.set.is_subset_of(&b.set));
    let mut basis = BasisState::new(order);
    for rep in reps {
        basis.insert(rep);
    }
    let mut reps = basis.into_basis();
    reps.sort_by(|a, b| a.set.cmp(&b.set).then_with(|| a.multiplier.cmp(&b.multiplier)));
    RepresentativeFamily {
        reps,
        minimal: true,
    }
}

/// Intersect the integer hulls of all k-multisets of family sets. Returns
/// `None` when some multiset intersection is empty (the closure itself is
/// then empty, flagged explicitly rather than encoded as a degenerate
/// H-form). Multisets suffice because the hull term is symmetric in the
/// slots and shrinks with the sets.
pub fn family_closure_hull(
    family: &RepresentativeFamily,
    k: usize,
    dim: usize,
    limits: &Limits,
) -> Result<Option<PackingPolyhedron>> {
    let t = family.reps.len();
    if t == 0 {
        return Ok(Some(PackingPolyhedron::orthant(dim)));
    }
    let count = multiset_count(t as u128, k as u128);
    if count > limits.cell_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "multiset hulls",
            need: count,
            budget: limits.cell_budget,
        });
    }
    let mut halfspaces = Vec::new();
    for choice in (0..t).combinations_with_replacement(k) {
        let mut set = family.reps[choice[0]].set.clone();
        for &i in &choice[1..] {
            set = set.intersect(&family.reps[i].set)?;
        }
        if set.is_empty() {
            return Ok(None);
        }
        let hull = set.integer_hull(limits)?;
        halfspaces.extend(hull.halfspaces);
    }
    let merged = crate::poly::remove_redundant(&HPolyhedron::new(dim, halfspaces, true)?);
    Ok(Some(PackingPolyhedron::from_packing_halfspaces(&merged)?))
}

fn multiset_count(t: u128, k: u128) -> u128 {
    // C(t + k - 1, k), saturating.
    let n = t + k - 1;
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn check_box_budget(bounds: &[u64], limits: &Limits) -> Result<()> {
    let mut size: u128 = 1;
    for &b in bounds {
        size = size.saturating_mul(b as u128 + 1);
    }
    if size > limits.point_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "truncation box",
            need: size,
            budget: limits.point_budget,
        });
    }
    Ok(())
}

/// Per-coordinate integer bound of a bounded packing polyhedron.
fn coordinate_bounds_poly(p: &PackingPolyhedron) -> Result<Vec<u64>> {
    let h = p.to_hpolyhedron();
    (0..p.dim())
        .map(|j| match lp_max(&QVector::unit(p.dim(), j), &h)? {
            LpOutcome::Optimal { value, .. } => {
                Ok(value.floor_u64().expect("bounds are nonnegative"))
            }
            _ => unreachable!("free coordinates were projected out"),
        })
        .collect()
}

/// Default truncation box for direction-space enumeration: twice the
/// coordinate bounds of the model. Support sets of boundary-leaning
/// directions overshoot the model's own box, and the doubled box lets the
/// arrangement separate their lattice sets in the common small cases. Any
/// finite choice remains a truncation; the result stays an outer bound.
fn coordinate_bounds_model(model: &DownsetModel) -> Result<Vec<u64>> {
    (0..model.dim())
        .map(|j| {
            let s = sup_oracle(model, &QVector::unit(model.dim(), j))?;
            match s.sup {
                SupValue::Finite(v) => {
                    Ok(v.floor_u64().expect("bounds are nonnegative").saturating_mul(2))
                }
                SupValue::Infinite => unreachable!("free coordinates were projected out"),
            }
        })
        .collect()
}

/// A user-supplied box comes in full-dimensional coordinates; keep the
/// entries of the surviving ones.
fn validate_box(user: &[u64], kept: &[usize], dim: usize) -> Result<Vec<u64>> {
    if user.len() != dim {
        return Err(Error::DimensionMismatch {
            left: user.len(),
            right: dim,
        });
    }
    Ok(kept.iter().map(|&j| user[j]).collect())
}

/// Keep the listed columns of every row.
fn project_columns(p: &PackingPolyhedron, kept: &[usize]) -> PackingPolyhedron {
    let rows = p
        .rows()
        .iter()
        .map(|r| QVector::new(kept.iter().map(|&j| r.get(j).clone()).collect()))
        .collect();
    PackingPolyhedron::new(kept.len(), rows, p.rhs().to_vec())
        .expect("projection preserves nonnegativity")
}

/// Restrict every piece to the kept coordinates. Setting the dropped
/// coordinates to zero is exactly the downset shadow, so rows keep their
/// bounds.
fn project_model(model: &DownsetModel, kept: &[usize]) -> Result<DownsetModel> {
    DownsetModel::new(
        kept.len(),
        model
            .pieces()
            .iter()
            .map(|p| project_columns(p, kept))
            .collect(),
    )
}

fn embed_vector(v: &QVector, kept: &[usize], dim: usize) -> QVector {
    let mut out = QVector::zeros(dim);
    for (slot, &j) in kept.iter().enumerate() {
        out.set(j, v.get(slot).clone());
    }
    out
}

/// Re-embed reduced packing rows with zero coefficients on the projected
/// coordinates, which restores them as recession directions.
fn embed_packing(p: &PackingPolyhedron, kept: &[usize], dim: usize) -> Result<PackingPolyhedron> {
    if kept.len() == dim {
        return Ok(p.clone());
    }
    PackingPolyhedron::new(
        dim,
        p.rows().iter().map(|r| embed_vector(r, kept, dim)).collect(),
        p.rhs().to_vec(),
    )
}

/// Projected coordinates are unconstrained in every lattice set: infinity.
fn embed_set(s: &PackingSet, kept: &[usize], dim: usize) -> PackingSet {
    if kept.len() == dim {
        return s.clone();
    }
    let gens = s
        .generators()
        .iter()
        .map(|g| {
            let mut coords = vec![ExtNat::Inf; dim];
            for (slot, &j) in kept.iter().enumerate() {
                coords[j] = g.coords()[slot];
            }
            ExtPoint::new(coords)
        })
        .collect();
    PackingSet::new(dim, gens).expect("embedding preserves the antichain")
}

/// Re-embed family sets with infinity on projected coordinates. Downset
/// multipliers live in coordinate space and are zero-extended; polyhedron
/// multipliers live in row space (the row count never changes) and pass
/// through.
fn embed_family(
    family: RepresentativeFamily,
    kept: &[usize],
    dim: usize,
    coordinate_multipliers: bool,
) -> RepresentativeFamily {
    if kept.len() == dim {
        return family;
    }
    RepresentativeFamily {
        reps: family
            .reps
            .into_iter()
            .map(|r| Representative {
                multiplier: if coordinate_multipliers {
                    embed_vector(&r.multiplier, kept, dim)
                } else {
                    r.multiplier
                },
                set: embed_set(&r.set, kept, dim),
            })
            .collect(),
        minimal: family.minimal,
    }
}

fn embed_bounds(bounds: &[u64], kept: &[usize], dim: usize) -> Vec<ExtNat> {
    let mut out = vec![ExtNat::Inf; dim];
    for (slot, &j) in kept.iter().enumerate() {
        out[j] = ExtNat::Fin(bounds[slot]);
    }
    out
}

/// What a closure is verified against.
#[derive(Debug, Clone, Copy)]
pub enum ClosureSource<'a> {
    Polyhedron(&'a PackingPolyhedron),
    Downset(&'a DownsetModel),
}

impl<'a> ClosureSource<'a> {
    fn as_model(&self) -> DownsetModel {
        match self {
            ClosureSource::Polyhedron(p) => DownsetModel::single((*p).clone()),
            ClosureSource::Downset(d) => (*d).clone(),
        }
    }

    fn dim(&self) -> usize {
        match self {
            ClosureSource::Polyhedron(p) => p.dim(),
            ClosureSource::Downset(d) => d.dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// A witness or explanation when the check fails.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

impl VerifyReport {
    fn push(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(CheckReport {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Exact sanity checks on a closure result:
/// (a) the hull is inside the hull of every sampled support set,
/// (b) it contains the infinite closure,
/// (c) for polyhedra it sits between the integer hull and the polyhedron,
/// (d) it is in packing form.
/// Failures are reported with witnesses, not raised as errors.
pub fn verify_closure(
    result: &ClosureResult,
    source: ClosureSource<'_>,
    samples: usize,
    rng: &mut impl Rng,
    limits: &Limits,
) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        checks: vec![],
        passed: true,
    };
    let dim = source.dim();
    let empty = VPolyhedron::empty(dim);
    let hull_h;
    let hull_v = match &result.hull {
        Some(h) => {
            hull_h = h.to_hpolyhedron();
            h_to_v(&hull_h, limits)?
        }
        None => {
            hull_h = HPolyhedron::new(dim, vec![], true)?;
            empty
        }
    };
    let model = source.as_model();

    // (a) sampled support sets contain the hull.
    let mut sampled_ok = true;
    let mut sample_detail = None;
    let bounded: Vec<usize> = {
        let unbounded = model.unbounded_coords();
        (0..dim).filter(|j| !unbounded.contains(j)).collect()
    };
    for s in 0..samples {
        let rep = match source {
            ClosureSource::Polyhedron(p) => {
                let lambda = sample_simplex(rng, p.row_count());
                let knap = aggregate(p, &lambda)?;
                Representative {
                    multiplier: lambda,
                    set: PackingSet::from_knapsack(&knap, limits)?,
                }
            }
            ClosureSource::Downset(_) => {
                let f = sample_support(rng, dim, &bounded);
                direction_rep(&model, &f, limits)?
            }
        };
        if rep.set.is_empty() {
            continue;
        }
        let support_hull = rep.set.integer_hull(limits)?;
        if !poly_contains(&support_hull, &hull_v)? {
            sampled_ok = false;
            sample_detail = Some(format!(
                "sample {s}: hull escapes conv of support set for multiplier {}",
                rep.multiplier
            ));
            break;
        }
    }
    report.push("hull-inside-sampled-supports", sampled_ok, sample_detail);

    // (b) the infinite closure is a lower bound.
    let lower = closure_inf(&model, limits)?;
    let lower_hull = lower.hull.expect("infinite closure of a model is nonempty");
    let lower_v = h_to_v(&lower_hull.to_hpolyhedron(), limits)?;
    let lb_ok = result.hull.is_some() && poly_contains(&hull_h, &lower_v)?;
    report.push(
        "hull-contains-infinite-closure",
        lb_ok,
        (!lb_ok).then(|| "infinite closure escapes the hull".to_string()),
    );

    // (c) sandwich for polyhedral sources.
    if let ClosureSource::Polyhedron(p) = source {
        let pi = p.integer_hull(limits)?;
        let pi_v = h_to_v(&pi.to_hpolyhedron(), limits)?;
        let lower_ok = result.hull.is_some() && poly_contains(&hull_h, &pi_v)?;
        let mut witness = None;
        if !lower_ok {
            witness = pi_v
                .vertices
                .iter()
                .find(|v| !hull_h.contains_point(v))
                .map(|v| format!("integer-hull vertex {v} outside the closure"));
        }
        report.push("hull-contains-integer-hull", lower_ok, witness);

        let p_h = p.to_hpolyhedron();
        let upper_ok = poly_contains(&p_h, &hull_v)?;
        let witness = (!upper_ok)
            .then(|| {
                hull_v
                    .vertices
                    .iter()
                    .find(|v| !p_h.contains_point(v))
                    .map(|v| format!("closure vertex {v} outside the polyhedron"))
            })
            .flatten();
        report.push("hull-inside-polyhedron", upper_ok, witness);
    }

    // (d) packing form.
    let packing_ok = match &result.hull {
        Some(h) => {
            let hp = h.to_hpolyhedron();
            match normalize_downset(&hp, limits) {
                Ok(normalized) => poly_equal(&hp, &normalized.to_hpolyhedron(), limits)?,
                Err(_) => false,
            }
        }
        // The explicitly flagged empty closure carries no halfspaces.
        None => true,
    };
    report.push(
        "hull-is-packing-form",
        packing_ok,
        (!packing_ok).then(|| "hull is not a packing polyhedron".to_string()),
    );
    Ok(report)
}

/// A random rational point of the standard simplex with small entries.
fn sample_simplex(rng: &mut impl Rng, dim: usize) -> QVector {
    let mut weights = vec![0u64; dim];
    loop {
        for w in weights.iter_mut() {
            *w = rng.random_range(0..=20);
        }
        if weights.iter().any(|&w| w > 0) {
            break;
        }
    }
    let total: u64 = weights.iter().sum();
    QVector::new(
        weights
            .iter()
            .map(|&w| {
                Rational::from_big(w.into(), total.into()).expect("total is positive")
            })
            .collect(),
    )
}

/// A random bounded direction: support restricted to coordinates along
/// which the model is bounded.
fn sample_support(rng: &mut impl Rng, dim: usize, bounded: &[usize]) -> QVector {
    let mut f = QVector::zeros(dim);
    loop {
        let mut any = false;
        for &j in bounded {
            let w: u64 = rng.random_range(0..=20);
            if w > 0 {
                any = true;
            }
            f.set(j, Rational::from_u64(w));
        }
        if any || bounded.is_empty() {
            break;
        }
    }
    f
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityStep {
    pub k: usize,
    /// `A_k` is contained in `A_{k-1}`.
    pub contained_in_previous: bool,
    /// `A_k` equals `A_{k-1}`: the chain has stabilized at this order.
    pub equals_previous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub steps: Vec<MonotonicityStep>,
    pub holds: bool,
}

/// Verify `A_{k+1}(P) ⊆ A_k(P)` up to `kmax`, reusing one enumerated
/// family across all orders.
pub fn closure_monotonicity(
    p: &PackingPolyhedron,
    kmax: usize,
    box_override: Option<&[u64]>,
    limits: &Limits,
) -> Result<MonotonicityReport> {
    assert!(kmax >= 1);
    let mut report = MonotonicityReport {
        steps: vec![],
        holds: true,
    };
    let mut previous: Option<ClosureResult> = None;
    for k in 1..=kmax {
        let current = closure_k(p, k, box_override, limits)?;
        if let Some(prev) = &previous {
            let (contained, equal) = match (&prev.hull, &current.hull) {
                (Some(ph), Some(ch)) => {
                    let prev_h = ph.to_hpolyhedron();
                    let cur_h = ch.to_hpolyhedron();
                    let cur_v = h_to_v(&cur_h, limits)?;
                    (
                        poly_contains(&prev_h, &cur_v)?,
                        poly_equal(&prev_h, &cur_h, limits)?,
                    )
                }
                (Some(_), None) => (true, false),
                (None, None) => (true, true),
                (None, Some(_)) => (false, false),
            };
            report.holds &= contained;
            report.steps.push(MonotonicityStep {
                k,
                contained_in_previous: contained,
                equals_previous: equal,
            });
        }
        previous = Some(current);
    }
    Ok(report)
}

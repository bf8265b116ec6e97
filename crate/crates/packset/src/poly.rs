//! Dual descriptions of rational polyhedra and exact conversions between
//! them via the homogenization cone. Degenerate inputs (empty,
//! lower-dimensional, unbounded) are ordinary values here, not errors.

use std::fmt;

use crate::dd;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lp::{lp_max, LpOutcome};
use crate::rat::{primitive_scale, QVector, Rational};

/// `normal . x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: QVector,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: QVector, rhs: Rational) -> Self {
        Halfspace { normal, rhs }
    }

    /// Replace the normal by its componentwise positive part; the bound is
    /// unchanged. For downsets the result is still valid and dominates the
    /// original inequality on the nonnegative orthant.
    pub fn positive_part(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.positive_part(),
            rhs: self.rhs.clone(),
        }
    }

    /// Scale `(normal, rhs)` jointly by the positive factor that makes the
    /// entries coprime integers.
    pub fn canonical(&self) -> Halfspace {
        let mut all: Vec<Rational> = self.normal.entries().to_vec();
        all.push(self.rhs.clone());
        match primitive_scale(&all) {
            Some(s) => Halfspace {
                normal: self.normal.scale(&s),
                rhs: &self.rhs * &s,
            },
            None => self.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.is_zero() && !self.rhs.is_negative()
    }

    pub fn satisfied_by(&self, x: &QVector) -> bool {
        self.normal.dot(x) <= self.rhs
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c == &Rational::from_int(-1) {
                    write!(f, "-")?;
                } else if c != &Rational::one() {
                    write!(f, "{c}·")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
                let a = c.abs();
                if a != Rational::one() {
                    write!(f, "{a}·")?;
                }
            } else {
                write!(f, " + ")?;
                if c != &Rational::one() {
                    write!(f, "{c}·")?;
                }
            }
            write!(f, "x{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// Intersection of halfspaces, optionally with `x >= 0` imposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyhedron {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
    pub nonneg: bool,
}

impl HPolyhedron {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>, nonneg: bool) -> Result<Self> {
        for h in &halfspaces {
            if h.normal.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: h.normal.dim(),
                    right: dim,
                });
            }
        }
        Ok(HPolyhedron {
            dim,
            halfspaces,
            nonneg,
        })
    }

    /// The whole nonnegative orthant.
    pub fn orthant(dim: usize) -> Self {
        HPolyhedron {
            dim,
            halfspaces: vec![],
            nonneg: true,
        }
    }

    pub fn contains_point(&self, x: &QVector) -> bool {
        if x.dim() != self.dim {
            return false;
        }
        if self.nonneg && !x.is_nonneg() {
            return false;
        }
        self.halfspaces.iter().all(|h| h.satisfied_by(x))
    }

    /// A direction of recession: every halfspace evaluates nonpositively.
    pub fn admits_ray(&self, r: &QVector) -> bool {
        if r.dim() != self.dim {
            return false;
        }
        if self.nonneg && !r.is_nonneg() {
            return false;
        }
        self.halfspaces.iter().all(|h| !h.normal.dot(r).is_positive())
    }

    pub fn is_feasible(&self) -> bool {
        matches!(
            lp_max(&QVector::zeros(self.dim), self),
            Ok(LpOutcome::Optimal { .. })
        )
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        if self.nonneg {
            write!(f, "x >= 0")?;
            first = false;
        }
        for h in &self.halfspaces {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{h}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Generator description: convex hull of `vertices` plus cone of `rays`.
/// Both lists empty encodes the empty polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolyhedron {
    pub dim: usize,
    pub vertices: Vec<QVector>,
    pub rays: Vec<QVector>,
}

impl VPolyhedron {
    pub fn new(dim: usize, vertices: Vec<QVector>, rays: Vec<QVector>) -> Result<Self> {
        for v in vertices.iter().chain(rays.iter()) {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: v.dim(),
                    right: dim,
                });
            }
        }
        Ok(VPolyhedron {
            dim,
            vertices,
            rays,
        })
    }

    pub fn empty(dim: usize) -> Self {
        VPolyhedron {
            dim,
            vertices: vec![],
            rays: vec![],
        }
    }

    /// Explicit emptiness flag for conversion results.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Enumerate vertices and extreme rays of `p`.
///
/// Lifts to the homogenization cone `{(x, t) : Ax - bt <= 0, t >= 0}` and
/// reads generators with `t > 0` as vertices, `t = 0` as recession rays.
pub fn h_to_v(p: &HPolyhedron, limits: &Limits) -> Result<VPolyhedron> {
    if p.dim > limits.dim_cap {
        return Err(Error::DimensionCapExceeded {
            dim: p.dim,
            cap: limits.dim_cap,
        });
    }
    let d = p.dim;
    let mut rows: Vec<QVector> = Vec::new();
    for h in &p.halfspaces {
        rows.push(h.normal.with_appended(-&h.rhs));
    }
    if p.nonneg {
        for j in 0..d {
            rows.push(QVector::unit(d + 1, j).neg());
        }
    }
    rows.push(QVector::unit(d + 1, d).neg()); // t >= 0
    let gens = dd::cone_generators(&rows, d + 1);

    let mut vertices: Vec<QVector> = Vec::new();
    let mut rays: Vec<QVector> = Vec::new();
    for line in &gens.lines {
        debug_assert!(line.get(d).is_zero(), "lines cannot leave t = 0");
        rays.push(line.without_last().primitive());
        rays.push(line.without_last().neg().primitive());
    }
    for r in &gens.rays {
        let t = r.get(d);
        if t.is_positive() {
            let inv = t.recip();
            vertices.push(r.without_last().scale(&inv));
        } else {
            debug_assert!(t.is_zero());
            rays.push(r.without_last().primitive());
        }
    }
    if vertices.is_empty() {
        return Ok(VPolyhedron::empty(d));
    }
    vertices.sort();
    vertices.dedup();
    rays.sort();
    rays.dedup();
    VPolyhedron::new(d, vertices, rays)
}

/// Compute an irredundant halfspace description of the convex hull of
/// `p.vertices` plus the cone of `p.rays`.
///
/// Works in the polar: valid inequalities `(a, beta)` form the cone cut out
/// by `a . v - beta <= 0` and `a . r <= 0`; its extreme rays are the facets
/// and its lineality gives the affine-hull equality pairs.
pub fn v_to_h(p: &VPolyhedron, limits: &Limits) -> Result<HPolyhedron> {
    if p.dim > limits.dim_cap {
        return Err(Error::DimensionCapExceeded {
            dim: p.dim,
            cap: limits.dim_cap,
        });
    }
    if p.vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let d = p.dim;
    let mut rows: Vec<QVector> = Vec::new();
    for v in &p.vertices {
        rows.push(v.with_appended(-Rational::one()));
    }
    for r in &p.rays {
        rows.push(r.with_appended(Rational::zero()));
    }
    let gens = dd::cone_generators(&rows, d + 1);
    let mut halfspaces: Vec<Halfspace> = Vec::new();
    for ray in &gens.rays {
        let normal = ray.without_last();
        if normal.is_zero() {
            // 0 <= beta with beta > 0: trivially valid, not a facet worth
            // keeping. beta < 0 would certify emptiness, which cannot
            // happen with a nonempty vertex list.
            debug_assert!(ray.get(d).is_positive());
            continue;
        }
        halfspaces.push(Halfspace::new(normal, ray.get(d).clone()).canonical());
    }
    for line in &gens.lines {
        let normal = line.without_last();
        debug_assert!(!normal.is_zero(), "affine-hull lines have nonzero normals");
        let beta = line.get(d).clone();
        halfspaces.push(Halfspace::new(normal.clone(), beta.clone()).canonical());
        halfspaces.push(Halfspace::new(normal.neg(), -beta).canonical());
    }
    halfspaces.sort();
    halfspaces.dedup();
    HPolyhedron::new(d, halfspaces, false)
}

/// True iff every generator of `inner` lies in (respectively recedes
/// within) `outer`.
pub fn poly_contains(outer: &HPolyhedron, inner: &VPolyhedron) -> Result<bool> {
    if outer.dim != inner.dim {
        return Err(Error::DimensionMismatch {
            left: outer.dim,
            right: inner.dim,
        });
    }
    Ok(inner.vertices.iter().all(|v| outer.contains_point(v))
        && inner.rays.iter().all(|r| outer.admits_ray(r)))
}

/// Set equality of the described point sets, by mutual generator checking.
pub fn poly_equal(p: &HPolyhedron, q: &HPolyhedron, limits: &Limits) -> Result<bool> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            left: p.dim,
            right: q.dim,
        });
    }
    let pv = h_to_v(p, limits)?;
    let qv = h_to_v(q, limits)?;
    if pv.is_empty() || qv.is_empty() {
        return Ok(pv.is_empty() && qv.is_empty());
    }
    Ok(poly_contains(q, &pv)? && poly_contains(p, &qv)?)
}

/// Drop halfspaces implied by the rest (and by `x >= 0` when imposed).
/// Leaves infeasible inputs untouched apart from canonicalization.
pub fn remove_redundant(p: &HPolyhedron) -> HPolyhedron {
    let mut halfspaces: Vec<Halfspace> = p
        .halfspaces
        .iter()
        .map(Halfspace::canonical)
        .filter(|h| !h.is_trivial())
        .collect();
    halfspaces.sort();
    halfspaces.dedup();
    if !p.is_feasible() {
        return HPolyhedron {
            dim: p.dim,
            halfspaces,
            nonneg: p.nonneg,
        };
    }
    let mut keep = halfspaces;
    let mut i = 0;
    while i < keep.len() {
        let candidate = keep[i].clone();
        let rest = HPolyhedron {
            dim: p.dim,
            halfspaces: keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect(),
            nonneg: p.nonneg,
        };
        let redundant = match lp_max(&candidate.normal, &rest) {
            Ok(LpOutcome::Optimal { value, .. }) => value <= candidate.rhs,
            _ => false,
        };
        if redundant {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    HPolyhedron {
        dim: p.dim,
        halfspaces: keep,
        nonneg: p.nonneg,
    }
}

/// Turn a halfspace description that is known to describe a downset of the
/// nonnegative orthant into canonical packing rows: positive-part every
/// normal, drop explicit `-x_j <= 0` rows and trivia, then prune
/// redundancy against `x >= 0`.
pub(crate) fn downset_packing_rows(p: &HPolyhedron) -> Result<Vec<Halfspace>> {
    let mut rows: Vec<Halfspace> = Vec::new();
    for h in &p.halfspaces {
        let pos = h.positive_part().canonical();
        if pos.is_trivial() {
            continue;
        }
        if pos.rhs.is_negative() {
            return Err(Error::EmptyPolyhedron);
        }
        rows.push(pos);
    }
    let cleaned = remove_redundant(&HPolyhedron {
        dim: p.dim,
        halfspaces: rows,
        nonneg: true,
    });
    Ok(cleaned.halfspaces)
}

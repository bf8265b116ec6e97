//! Integer packing sets: downward-closed subsets of `N^n`, stored as the
//! canonical antichain of maximal generators with coordinates in
//! `N ∪ {infinity}`. Each generator describes one box (a "block"), possibly
//! unbounded along some axes, and the set is the union of those blocks.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::{v_to_h, HPolyhedron, VPolyhedron};
use crate::rat::{QVector, Rational};
use crate::wqo::QuasiOrder;

/// A natural number or infinity; infinity encodes an unbounded block axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtNat::Inf)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            ExtNat::Fin(v) => Some(*v),
            ExtNat::Inf => None,
        }
    }

    /// `n <= self` for a plain natural `n`.
    pub fn at_least(&self, n: u64) -> bool {
        match self {
            ExtNat::Fin(v) => *v >= n,
            ExtNat::Inf => true,
        }
    }

    pub fn min(self, other: ExtNat) -> ExtNat {
        std::cmp::min(self, other)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(v) => s.serialize_u64(*v),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

struct ExtNatVisitor;

impl<'de> Visitor<'de> for ExtNatVisitor {
    type Value = ExtNat;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a natural number or the string \"inf\"")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtNat, E> {
        Ok(ExtNat::Fin(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtNat, E> {
        u64::try_from(v)
            .map(ExtNat::Fin)
            .map_err(|_| E::custom("negative coordinate"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtNat, E> {
        if v == "inf" {
            Ok(ExtNat::Inf)
        } else {
            Err(E::custom(format!("expected \"inf\", got {v:?}")))
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ExtNat, D::Error> {
        d.deserialize_any(ExtNatVisitor)
    }
}

/// Generator of one block: the block is `{x in N^n : x <= coords}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtPoint {
    coords: Vec<ExtNat>,
}

impl ExtPoint {
    pub fn new(coords: Vec<ExtNat>) -> Self {
        ExtPoint { coords }
    }

    pub fn from_finite(coords: &[u64]) -> Self {
        ExtPoint {
            coords: coords.iter().map(|&c| ExtNat::Fin(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExtNat] {
        &self.coords
    }

    /// Componentwise comparison (the block inclusion order).
    pub fn dominated_by(&self, other: &ExtPoint) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    fn covers_point(&self, x: &[u64]) -> bool {
        self.coords.len() == x.len()
            && self.coords.iter().zip(x).all(|(c, &v)| c.at_least(v))
    }

    fn meet(&self, other: &ExtPoint) -> ExtPoint {
        ExtPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A downward-closed subset of `N^dim` as the antichain of its maximal
/// generators, canonically sorted. The empty generator list is the empty
/// set, distinct from `{0}` whose antichain is the all-zero generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackingSet {
    dim: usize,
    generators: Vec<ExtPoint>,
}

/// One block descriptor: each axis is either all of `N` or `[0..k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Block {
    pub bounds: Vec<ExtNat>,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.bounds.iter().enumerate() {
            if i > 0 {
                write!(f, " × ")?;
            }
            match b {
                ExtNat::Inf => write!(f, "N")?,
                ExtNat::Fin(k) => write!(f, "[0..{k}]")?,
            }
        }
        Ok(())
    }
}

impl PackingSet {
    /// Antichain reduction: drop dominated and duplicate generators, sort
    /// canonically. The represented set is unchanged.
    pub fn new(dim: usize, generators: Vec<ExtPoint>) -> Result<Self> {
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: g.dim(),
                    right: dim,
                });
            }
        }
        let mut kept: Vec<ExtPoint> = Vec::with_capacity(generators.len());
        'outer: for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate() {
                if i == j {
                    continue;
                }
                // Strict domination, or a duplicate that appears earlier.
                if g.dominated_by(h) && (!h.dominated_by(g) || j < i) {
                    continue 'outer;
                }
            }
            kept.push(g.clone());
        }
        kept.sort();
        Ok(PackingSet {
            dim,
            generators: kept,
        })
    }

    pub fn empty(dim: usize) -> Self {
        PackingSet {
            dim,
            generators: vec![],
        }
    }

    /// All of `N^dim`.
    pub fn all(dim: usize) -> Self {
        PackingSet {
            dim,
            generators: vec![ExtPoint::new(vec![ExtNat::Inf; dim])],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExtPoint] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains_point(&self, x: &[u64]) -> bool {
        x.len() == self.dim && self.generators.iter().any(|g| g.covers_point(x))
    }

    /// Inclusion test: every generator of `self` fits under a generator of
    /// `other`. Valid because generators are the maximal elements.
    pub fn is_subset_of(&self, other: &PackingSet) -> bool {
        self.dim == other.dim
            && self
                .generators
                .iter()
                .all(|g| other.generators.iter().any(|h| g.dominated_by(h)))
    }

    pub fn union(&self, other: &PackingSet) -> Result<PackingSet> {
        self.check_dim(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        PackingSet::new(self.dim, gens)
    }

    /// Blockwise meet: the intersection of two block unions is the union of
    /// pairwise componentwise minima.
    pub fn intersect(&self, other: &PackingSet) -> Result<PackingSet> {
        self.check_dim(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for g in &self.generators {
            for h in &other.generators {
                gens.push(g.meet(h));
            }
        }
        PackingSet::new(self.dim, gens)
    }

    /// The packing set `{x : (x, level) in self}` in one dimension less.
    /// Slices are decreasing in `level`.
    pub fn slice(&self, level: u64) -> Result<PackingSet> {
        if self.dim < 2 {
            return Err(Error::SliceTooSmall);
        }
        let gens = self
            .generators
            .iter()
            .filter(|g| g.coords[self.dim - 1].at_least(level))
            .map(|g| ExtPoint::new(g.coords[..self.dim - 1].to_vec()))
            .collect();
        PackingSet::new(self.dim - 1, gens)
    }

    /// One block per generator.
    pub fn blocks(&self) -> Vec<Block> {
        self.generators
            .iter()
            .map(|g| Block {
                bounds: g.coords.clone(),
            })
            .collect()
    }

    pub fn from_block(block: &Block) -> PackingSet {
        PackingSet {
            dim: block.bounds.len(),
            generators: vec![ExtPoint::new(block.bounds.clone())],
        }
    }

    /// Componentwise maximum of the finite generator coordinates; the box
    /// within which membership is decided by the finite data.
    pub fn finite_bounds(&self) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for g in &self.generators {
            for (j, c) in g.coords.iter().enumerate() {
                if let ExtNat::Fin(v) = c {
                    out[j] = out[j].max(*v);
                }
            }
        }
        out
    }

    /// Coordinates that are infinite in some generator; exactly the
    /// recession directions of the convex hull.
    pub fn infinite_coords(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&j| self.generators.iter().any(|g| g.coords[j].is_infinite()))
            .collect()
    }

    fn check_dim(&self, other: &PackingSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// The maximal lattice points of `{x in N^n : c . x <= d}`, with free
    /// coordinates (`c_j = 0`) rendered as infinity. Exhaustive search over
    /// the coordinate box, guarded by the point budget.
    pub fn from_knapsack(ineq: &KnapsackIneq, limits: &Limits) -> Result<PackingSet> {
        let n = ineq.coeffs.dim();
        let d = &ineq.bound;
        if d.is_negative() {
            return Ok(PackingSet::empty(n));
        }
        let positive: Vec<usize> = (0..n)
            .filter(|&j| ineq.coeffs.get(j).is_positive())
            .collect();
        if positive.is_empty() {
            return Ok(PackingSet::all(n));
        }
        let mut bounds: Vec<u64> = Vec::with_capacity(positive.len());
        let mut box_size: u128 = 1;
        for &j in &positive {
            let b = (d / ineq.coeffs.get(j)).floor_u64().ok_or(Error::BudgetExceeded {
                what: "knapsack box",
                need: u128::MAX,
                budget: limits.point_budget,
            })?;
            bounds.push(b);
            box_size = box_size.saturating_mul(b as u128 + 1);
        }
        if box_size > limits.point_budget as u128 {
            return Err(Error::BudgetExceeded {
                what: "knapsack box",
                need: box_size,
                budget: limits.point_budget,
            });
        }
        let coeffs: Vec<Rational> = positive
            .iter()
            .map(|&j| ineq.coeffs.get(j).clone())
            .collect();
        // A feasible point is maximal iff no single increment stays
        // feasible, since walking up one step at a time stays feasible
        // under nonnegative coefficients; equivalently its value exceeds
        // d - min coefficient.
        let cmin = coeffs.iter().min().expect("positive list nonempty");
        let threshold = d - cmin;
        let mut maximal: Vec<Vec<u64>> = Vec::new();
        let mut current = vec![0u64; positive.len()];
        enumerate_feasible(
            &coeffs,
            d,
            0,
            &mut current,
            &Rational::zero(),
            &threshold,
            &mut maximal,
        );
        let gens = maximal
            .into_iter()
            .map(|point| {
                let mut coords = vec![ExtNat::Inf; n];
                for (slot, &j) in positive.iter().enumerate() {
                    coords[j] = ExtNat::Fin(point[slot]);
                }
                ExtPoint::new(coords)
            })
            .collect();
        PackingSet::new(n, gens)
    }

    /// Closed convex hull of the set as an irredundant packing
    /// H-polyhedron: candidate vertices are the coordinate zeroings of the
    /// finite parts of the generators, recession rays are the unit vectors
    /// of infinite coordinates.
    pub fn integer_hull(&self, limits: &Limits) -> Result<HPolyhedron> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut vertices: Vec<QVector> = Vec::new();
        for g in &self.generators {
            let finite: Vec<(usize, u64)> = g
                .coords
                .iter()
                .enumerate()
                .filter_map(|(j, c)| c.finite().map(|v| (j, v)))
                .collect();
            let nonzero: Vec<(usize, u64)> =
                finite.iter().copied().filter(|&(_, v)| v > 0).collect();
            for mask in 0..(1u64 << nonzero.len()) {
                let mut v = QVector::zeros(self.dim);
                for (bit, &(j, val)) in nonzero.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        v.set(j, Rational::from_u64(val));
                    }
                }
                vertices.push(v);
            }
        }
        vertices.sort();
        vertices.dedup();
        let rays: Vec<QVector> = self
            .infinite_coords()
            .into_iter()
            .map(|j| QVector::unit(self.dim, j))
            .collect();
        let vrep = VPolyhedron::new(self.dim, vertices, rays)?;
        let raw = v_to_h(&vrep, limits)?;
        let halfspaces = crate::poly::downset_packing_rows(&raw)?;
        HPolyhedron::new(self.dim, halfspaces, true)
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate_feasible(
    coeffs: &[Rational],
    bound: &Rational,
    idx: usize,
    current: &mut Vec<u64>,
    used: &Rational,
    threshold: &Rational,
    maximal: &mut Vec<Vec<u64>>,
) {
    if idx == coeffs.len() {
        if used > threshold {
            maximal.push(current.clone());
        }
        return;
    }
    let mut value = used.clone();
    let mut x = 0u64;
    loop {
        if &value > bound {
            break;
        }
        current[idx] = x;
        enumerate_feasible(coeffs, bound, idx + 1, current, &value, threshold, maximal);
        value += &coeffs[idx];
        x += 1;
    }
    current[idx] = 0;
}

impl fmt::Display for PackingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PackingSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PackingSet", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PackingSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<PackingSet, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            generators: Vec<ExtPoint>,
        }
        let raw = Raw::deserialize(d)?;
        PackingSet::new(raw.dim, raw.generators).map_err(de::Error::custom)
    }
}

/// Inclusion of packing sets as a quasi-order (the one that is a wqo).
#[derive(Debug, Clone, Copy, Default)]
pub struct SetInclusion;

impl QuasiOrder<PackingSet> for SetInclusion {
    fn leq(&self, a: &PackingSet, b: &PackingSet) -> bool {
        a.is_subset_of(b)
    }
}

/// A nonnegative knapsack inequality `c . x <= d` over the naturals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnapsackIneq {
    #[serde(rename = "c")]
    coeffs: QVector,
    #[serde(rename = "d")]
    bound: Rational,
}

impl KnapsackIneq {
    pub fn new(coeffs: QVector, bound: Rational) -> Result<Self> {
        if !coeffs.is_nonneg() {
            return Err(Error::NegativeCoefficient);
        }
        Ok(KnapsackIneq { coeffs, bound })
    }

    pub fn coeffs(&self) -> &QVector {
        &self.coeffs
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }
}

impl<'de> Deserialize<'de> for KnapsackIneq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<KnapsackIneq, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            c: QVector,
            d: Rational,
        }
        let raw = Raw::deserialize(d)?;
        KnapsackIneq::new(raw.c, raw.d).map_err(de::Error::custom)
    }
}

/// Iterator over all lattice points of the box `[0, bounds]`, in
/// lexicographic order. Test and oracle helper.
pub fn lattice_box(bounds: &[u64]) -> LatticeBox {
    LatticeBox {
        bounds: bounds.to_vec(),
        next: Some(vec![0; bounds.len()]),
    }
}

pub struct LatticeBox {
    bounds: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for LatticeBox {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for j in (0..self.bounds.len()).rev() {
            if succ[j] < self.bounds[j] {
                succ[j] += 1;
                self.next = Some(succ);
                break;
            }
            succ[j] = 0;
        }
        // All coordinates rolled over: enumeration finished.
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::h_to_v;

    fn pt(coords: &[i64]) -> ExtPoint {
        ExtPoint::new(
            coords
                .iter()
                .map(|&c| {
                    if c < 0 {
                        ExtNat::Inf
                    } else {
                        ExtNat::Fin(c as u64)
                    }
                })
                .collect(),
        )
    }

    fn set(dim: usize, gens: &[&[i64]]) -> PackingSet {
        PackingSet::new(dim, gens.iter().map(|g| pt(g)).collect()).unwrap()
    }

    #[test]
    fn canonicalization_drops_dominated() {
        assert_eq!(set(2, &[&[2, 2], &[1, 1]]), set(2, &[&[2, 2]]));
        assert_eq!(set(2, &[&[-1, 1], &[2, 1]]), set(2, &[&[-1, 1]]));
        assert_eq!(
            set(2, &[&[2, 0], &[0, 2], &[1, 1], &[1, 0]]),
            set(2, &[&[2, 0], &[0, 2], &[1, 1]])
        );
        // Duplicates collapse.
        assert_eq!(set(1, &[&[3], &[3]]).generators().len(), 1);
    }

    #[test]
    fn membership() {
        let s = set(2, &[&[2, 0], &[0, 2], &[1, 1]]);
        assert!(s.contains_point(&[1, 1]));
        assert!(!s.contains_point(&[2, 1]));
        let inf = set(2, &[&[-1, 1]]);
        assert!(inf.contains_point(&[1_000_000, 1]));
        assert!(!inf.contains_point(&[0, 2]));
    }

    #[test]
    fn subset_examples() {
        let tri = set(2, &[&[2, 0], &[0, 2], &[1, 1]]);
        let boxy = set(2, &[&[2, 2]]);
        assert!(tri.is_subset_of(&boxy));
        assert!(!boxy.is_subset_of(&tri));
        assert!(PackingSet::empty(2).is_subset_of(&tri));
    }

    #[test]
    fn union_and_intersection() {
        let a = set(2, &[&[1, 0]]);
        let b = set(2, &[&[0, 1]]);
        assert_eq!(a.union(&b).unwrap(), set(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(
            set(2, &[&[2, 2]]).union(&set(2, &[&[1, 1]])).unwrap(),
            set(2, &[&[2, 2]])
        );

        let tri = set(2, &[&[2, 0], &[0, 2], &[1, 1]]);
        let strip = set(2, &[&[-1, 1]]);
        assert_eq!(tri.intersect(&strip).unwrap(), set(2, &[&[2, 0], &[1, 1]]));
        assert_eq!(tri.intersect(&tri).unwrap(), tri);
        assert!(tri.intersect(&PackingSet::empty(2)).unwrap().is_empty());
    }

    #[test]
    fn intersection_matches_pointwise_and() {
        let a = set(2, &[&[3, 1], &[1, 4]]);
        let b = set(2, &[&[2, 2], &[-1, 0]]);
        let c = a.intersect(&b).unwrap();
        for x in lattice_box(&[5, 5]) {
            assert_eq!(
                c.contains_point(&x),
                a.contains_point(&x) && b.contains_point(&x),
                "at {x:?}"
            );
        }
    }

    #[test]
    fn union_matches_pointwise_or() {
        let a = set(2, &[&[-1, 0]]);
        let b = set(2, &[&[0, -1]]);
        let u = a.union(&b).unwrap();
        assert_eq!(u, set(2, &[&[-1, 0], &[0, -1]]));
        for x in lattice_box(&[4, 4]) {
            assert_eq!(
                u.contains_point(&x),
                a.contains_point(&x) || b.contains_point(&x)
            );
        }
    }

    #[test]
    fn slices_are_decreasing() {
        let s = set(2, &[&[2, 3], &[-1, 1]]);
        assert_eq!(s.slice(0).unwrap(), set(1, &[&[-1]]));
        assert_eq!(s.slice(2).unwrap(), set(1, &[&[2]]));
        assert!(s.slice(4).unwrap().is_empty());
        for i in 0..5 {
            assert!(s.slice(i + 1).unwrap().is_subset_of(&s.slice(i).unwrap()));
        }
        assert!(matches!(set(1, &[&[1]]).slice(0), Err(Error::SliceTooSmall)));
    }

    #[test]
    fn blocks_round_trip() {
        let s = set(2, &[&[2, 0], &[0, 2], &[1, 1]]);
        let blocks = s.blocks();
        assert_eq!(blocks.len(), 3);
        let mut rebuilt = PackingSet::empty(2);
        for b in &blocks {
            rebuilt = rebuilt.union(&PackingSet::from_block(b)).unwrap();
        }
        assert_eq!(rebuilt, s);
        let strip = set(2, &[&[-1, 1]]);
        assert_eq!(strip.blocks()[0].to_string(), "N × [0..1]");
    }

    #[test]
    fn knapsack_examples() {
        let lim = Limits::default();
        let k = KnapsackIneq::new(QVector::from_ints(&[1, 1]), Rational::from_int(2)).unwrap();
        assert_eq!(
            PackingSet::from_knapsack(&k, &lim).unwrap(),
            set(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );

        let k = KnapsackIneq::new(QVector::from_ints(&[0, 1]), Rational::one()).unwrap();
        assert_eq!(PackingSet::from_knapsack(&k, &lim).unwrap(), set(2, &[&[-1, 1]]));

        let k = KnapsackIneq::new(QVector::from_ints(&[1, 2]), Rational::from_int(2)).unwrap();
        assert_eq!(
            PackingSet::from_knapsack(&k, &lim).unwrap(),
            set(2, &[&[2, 0], &[0, 1]])
        );

        let k = KnapsackIneq::new(QVector::from_ints(&[1, 1]), Rational::from_int(-1)).unwrap();
        assert!(PackingSet::from_knapsack(&k, &lim).unwrap().is_empty());

        assert!(KnapsackIneq::new(QVector::from_ints(&[-1, 1]), Rational::one()).is_err());
    }

    #[test]
    fn knapsack_budget_guard() {
        let k = KnapsackIneq::new(QVector::from_ints(&[1, 1]), Rational::from_int(1000)).unwrap();
        let tiny = Limits {
            point_budget: 100,
            ..Limits::default()
        };
        assert!(matches!(
            PackingSet::from_knapsack(&k, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn knapsack_agrees_with_exhaustive_enumeration() {
        let lim = Limits::default();
        let k = KnapsackIneq::new(
            QVector::new(vec![Rational::new(3, 2), Rational::one(), Rational::new(1, 3)]),
            Rational::from_int(3),
        )
        .unwrap();
        let s = PackingSet::from_knapsack(&k, &lim).unwrap();
        // Oracle: direct membership comparison over a covering box.
        for x in lattice_box(&[4, 5, 11]) {
            let lhs: Rational = (0..3)
                .map(|j| k.coeffs().get(j) * &Rational::from_u64(x[j]))
                .sum();
            assert_eq!(s.contains_point(&x), lhs <= *k.bound(), "at {x:?}");
        }
    }

    #[test]
    fn hull_examples() {
        let lim = Limits::default();
        let tri = set(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let h = tri.integer_hull(&lim).unwrap();
        assert_eq!(h.to_string(), "{x >= 0, x1 + x2 <= 2}");

        let strip = set(2, &[&[-1, 1]]);
        let h = strip.integer_hull(&lim).unwrap();
        assert_eq!(h.to_string(), "{x >= 0, x2 <= 1}");

        let corners = set(2, &[&[1, 0], &[0, 1]]);
        let h = corners.integer_hull(&lim).unwrap();
        assert_eq!(h.to_string(), "{x >= 0, x1 + x2 <= 1}");

        assert!(matches!(
            PackingSet::empty(2).integer_hull(&lim),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn hull_recession_matches_infinite_coords() {
        let lim = Limits::default();
        let s = set(3, &[&[-1, 2, 0], &[1, -1, 1]]);
        let h = s.integer_hull(&lim).unwrap();
        let g = h_to_v(&h, &lim).unwrap();
        let mut rays: Vec<QVector> = vec![QVector::unit(3, 0), QVector::unit(3, 1)];
        rays.sort();
        assert_eq!(g.rays, rays);
    }

    #[test]
    fn serde_round_trip_is_bit_exact() {
        let s = set(2, &[&[0, 2], &[-1, 1]]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"dim":2,"generators":[[0,2],["inf",1]]}"#);
        let back: PackingSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn deserialization_canonicalizes() {
        let raw = r#"{"dim":2,"generators":[[1,1],[2,2]]}"#;
        let s: PackingSet = serde_json::from_str(raw).unwrap();
        assert_eq!(s, set(2, &[&[2, 2]]));
    }

    #[test]
    fn downward_closure_property() {
        let s = set(3, &[&[2, 1, 0], &[0, 3, -1]]);
        for x in lattice_box(&[3, 4, 3]) {
            if s.contains_point(&x) {
                for (j, &v) in x.iter().enumerate() {
                    if v > 0 {
                        let mut y = x.clone();
                        y[j] = v - 1;
                        assert!(s.contains_point(&y), "closure fails below {x:?}");
                    }
                }
            }
        }
    }
}

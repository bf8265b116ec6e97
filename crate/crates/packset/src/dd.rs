//! Double description for polyhedral cones `{y : M y <= 0}` in exact
//! arithmetic: start from a simplicial subcone spanned by an invertible row
//! subset and insert the remaining halfspaces one at a time, combining
//! adjacent rays across each new hyperplane. Lineality is split off first so
//! the working cone is always pointed, which keeps the combinatorial
//! adjacency test exact.

use crate::linalg;
use crate::rat::{QVector, Rational};

/// Generators of a cone: `lines` span the lineality space, `rays` are the
/// extreme rays of the pointed part. All vectors are primitive integer and
/// sorted, so equal cones get equal generator lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lines: Vec<QVector>,
    pub rays: Vec<QVector>,
}

/// Set of constraint-row indices a ray satisfies with equality.
#[derive(Clone, PartialEq, Eq)]
struct RowSet(Vec<u64>);

impl RowSet {
    fn empty(rows: usize) -> Self {
        RowSet(vec![0; rows.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &RowSet) -> RowSet {
        RowSet(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a & b)
                .collect(),
        )
    }

    fn is_subset_of(&self, other: &RowSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    dir: QVector,
    zero: RowSet,
}

/// Compute the generators of `{y in R^dim : row . y <= 0 for every row}`.
pub fn cone_generators(rows: &[QVector], dim: usize) -> ConeGenerators {
    if dim == 0 {
        return ConeGenerators {
            lines: vec![],
            rays: vec![],
        };
    }
    let lines = linalg::kernel_basis(rows, dim);
    // Force the working cone into the orthogonal complement of the
    // lineality space; there it is pointed.
    let mut work: Vec<QVector> = rows.iter().map(|r| r.primitive()).collect();
    for line in &lines {
        work.push(line.clone());
        work.push(line.neg());
    }
    let rays = pointed_cone_rays(&work, dim);
    let mut lines: Vec<QVector> = lines;
    lines.sort();
    ConeGenerators { lines, rays }
}

/// Extreme rays of a pointed cone `{y : M y <= 0}` with `rank(M) = dim`.
fn pointed_cone_rays(rows: &[QVector], dim: usize) -> Vec<QVector> {
    let basis_idx = linalg::independent_rows(rows, dim);
    assert_eq!(basis_idx.len(), dim, "cone is not pointed");
    let basis_rows: Vec<QVector> = basis_idx.iter().map(|&i| rows[i].clone()).collect();
    let inv = linalg::invert(&basis_rows).expect("independent rows are invertible");
    let total = rows.len();

    // Initial rays: the negated columns of the inverse, so that
    // basis_row_i . ray_j = -delta_ij.
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let dir = QVector::new((0..dim).map(|i| -inv[i].get(j)).collect()).primitive();
            let mut zero = RowSet::empty(total);
            for (pos, &ri) in basis_idx.iter().enumerate() {
                if pos != j {
                    zero.insert(ri);
                }
            }
            Ray { dir, zero }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        rays = insert_halfspace(rays, row, i);
    }
    let mut out: Vec<QVector> = rays.into_iter().map(|r| r.dir).collect();
    out.sort();
    out.dedup();
    out
}

fn insert_halfspace(rays: Vec<Ray>, row: &QVector, row_idx: usize) -> Vec<Ray> {
    let vals: Vec<Rational> = rays.iter().map(|r| row.dot(&r.dir)).collect();
    let mut keep: Vec<Ray> = Vec::new();
    let mut inside: Vec<usize> = Vec::new();
    let mut outside: Vec<usize> = Vec::new();
    for (k, v) in vals.iter().enumerate() {
        if v.is_negative() {
            inside.push(k);
        } else if v.is_positive() {
            outside.push(k);
        }
    }
    if outside.is_empty() {
        // Hyperplane does not cut the cone; only the zero sets change.
        let mut rays = rays;
        for (k, r) in rays.iter_mut().enumerate() {
            if vals[k].is_zero() {
                r.zero.insert(row_idx);
            }
        }
        return rays;
    }
    let mut new_rays: Vec<Ray> = Vec::new();
    for &p in &inside {
        for &n in &outside {
            let common = rays[p].zero.intersect(&rays[n].zero);
            // Necessary rank condition first, then the exact combinatorial
            // adjacency test: no third extreme ray is tight on the whole
            // common face.
            if common.len() + 2 < rays[0].dir.dim() {
                continue;
            }
            let adjacent = rays.iter().enumerate().all(|(k, r)| {
                k == p || k == n || !common.is_subset_of(&r.zero)
            });
            if !adjacent {
                continue;
            }
            // alpha > 0 (outside value), beta < 0 (inside value):
            // alpha * inside - beta * outside lands on the hyperplane.
            let alpha = &vals[n];
            let beta = &vals[p];
            let dir = rays[p]
                .dir
                .scale(alpha)
                .sub(&rays[n].dir.scale(beta))
                .primitive();
            let mut zero = common;
            zero.insert(row_idx);
            new_rays.push(Ray { dir, zero });
        }
    }
    for (k, r) in rays.into_iter().enumerate() {
        if vals[k].is_negative() {
            keep.push(r);
        } else if vals[k].is_zero() {
            let mut r = r;
            r.zero.insert(row_idx);
            keep.push(r);
        }
    }
    keep.extend(new_rays);
    keep
}

//! Small exact Gaussian-elimination helpers used by the cone and LP code.
//! Everything here is dense and fraction-based; instances are tiny.

use crate::rat::{QVector, Rational};

/// Row-reduce a copy of `rows`, returning (reduced rows, pivot column per
/// reduced row). Zero rows are dropped.
fn row_echelon(rows: &[QVector], dim: usize) -> Vec<(QVector, usize)> {
    let mut work: Vec<QVector> = rows.to_vec();
    let mut out: Vec<(QVector, usize)> = Vec::new();
    for col in 0..dim {
        let Some(pos) = work.iter().position(|r| !r.get(col).is_zero()) else {
            continue;
        };
        let pivot_row = work.swap_remove(pos);
        let inv = pivot_row.get(col).recip();
        let pivot_row = pivot_row.scale(&inv);
        for r in work.iter_mut() {
            let factor = r.get(col).clone();
            if !factor.is_zero() {
                *r = r.sub(&pivot_row.scale(&factor));
            }
        }
        out.push((pivot_row, col));
    }
    out
}

pub fn rank(rows: &[QVector], dim: usize) -> usize {
    row_echelon(rows, dim).len()
}

/// Basis of `{x : R x = 0}` for the row system `rows`, each vector primitive.
pub fn kernel_basis(rows: &[QVector], dim: usize) -> Vec<QVector> {
    let echelon = row_echelon(rows, dim);
    // Back-substitute to reduced row echelon form.
    let mut rref = echelon.clone();
    for i in (0..rref.len()).rev() {
        let (row_i, col_i) = rref[i].clone();
        for entry in rref[..i].iter_mut() {
            let factor = entry.0.get(col_i).clone();
            if !factor.is_zero() {
                entry.0 = entry.0.sub(&row_i.scale(&factor));
            }
        }
    }
    let pivot_cols: Vec<usize> = rref.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = QVector::zeros(dim);
        v.set(free, Rational::one());
        for (row, col) in &rref {
            v.set(*col, -row.get(free));
        }
        basis.push(v.primitive());
    }
    basis
}

/// Indices of a maximal linearly independent subset of `rows`, chosen
/// greedily in order (deterministic).
pub fn independent_rows(rows: &[QVector], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<QVector> = Vec::new();
    let mut idx = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        chosen.push(r.clone());
        if rank(&chosen, dim) == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// Inverse of a square matrix given as rows; `None` if singular.
pub fn invert(rows: &[QVector]) -> Option<Vec<QVector>> {
    let n = rows.len();
    if rows.iter().any(|r| r.dim() != n) {
        return None;
    }
    // Augment with the identity and run Gauss-Jordan.
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.entries().to_vec();
            for j in 0..n {
                row.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = aug[col].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let delta = p * &factor;
                    *x = &*x - &delta;
                }
            }
        }
    }
    Some(
        aug.into_iter()
            .map(|row| QVector::new(row[n..].to_vec()))
            .collect(),
    )
}

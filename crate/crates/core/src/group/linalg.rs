//! Gaussian elimination over a cyclotomic field.

use crate::arith::CyclotomicNumber;

/// Determinant of an `n × n` row-major matrix.
pub fn determinant(n: usize, mut a: Vec<CyclotomicNumber>) -> CyclotomicNumber {
    let m = a[0].conductor();
    let mut det = CyclotomicNumber::one(m);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return CyclotomicNumber::zero(m);
        };
        if p != col {
            for j in 0..n {
                a.swap(p * n + j, col * n + j);
            }
            det = -det;
        }
        let pivot = a[col * n + col].clone();
        det = &det * &pivot;
        let inv = pivot.inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let f = &a[r * n + col] * &inv;
            for j in col..n {
                let t = &f * &a[col * n + j];
                a[r * n + j] = &a[r * n + j] - &t;
            }
        }
    }
    det
}

/// Basis of the right kernel of a `rows × cols` matrix.
pub fn nullspace(rows: usize, cols: usize, mut a: Vec<CyclotomicNumber>, conductor: u32) -> Vec<Vec<CyclotomicNumber>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(p * cols + j, row * cols + j);
        }
        let inv = a[row * cols + col].inverse().expect("nonzero pivot");
        for j in 0..cols {
            a[row * cols + j] = &a[row * cols + j] * &inv;
        }
        for r in 0..rows {
            if r == row || a[r * cols + col].is_zero() {
                continue;
            }
            let f = a[r * cols + col].clone();
            for j in 0..cols {
                let t = &f * &a[row * cols + j];
                a[r * cols + j] = &a[r * cols + j] - &t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CyclotomicNumber::zero(conductor); cols];
            v[f] = CyclotomicNumber::one(conductor);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[r * cols + f];
            }
            v
        })
        .collect()
}

#![allow(dead_code)]

use convdiff::TridiagonalSystem;

/// Dense Gaussian elimination with partial pivoting; O(m³), test use only.
#[allow(clippy::needless_range_loop)]
pub fn dense_solve(system: &TridiagonalSystem, rhs: &[f64]) -> Vec<f64> {
    let m = system.size();
    let mut a: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| system.entry(i, j)).collect()).collect();
    let mut b = rhs.to_vec();
    for col in 0..m {
        let pivot = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..m {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..m {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    max_abs(&diff) / max_abs(b).max(f64::MIN_POSITIVE)
}

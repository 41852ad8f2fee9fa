//! Small exact integer/rational matrix routines for Gram matrices.

use num_rational::Rational64;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Intermediate values are exact divisions in `i128`.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    assert!(
        m.iter().all(|row| row.len() == n),
        "determinant of a non-square matrix"
    );
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
}

fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect()
}

/// Row-reduces in place; returns the pivot columns.
fn row_reduce(a: &mut [Vec<Rational64>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..cols {
                    let v = a[r][j];
                    a[i][j] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank over the rationals of the row space.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a = to_rational(m);
    row_reduce(&mut a).len()
}

/// Exact inverse over the rationals, or `None` if singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = to_rational(m)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = row_reduce(&mut a);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `Bᵀ G B` for a basis given as rows of `vectors` and ambient Gram `g`.
pub fn gram_of(vectors: &[Vec<i64>], g: &[Vec<i64>]) -> IntMatrix {
    vectors
        .iter()
        .map(|u| vectors.iter().map(|v| bilinear(g, u, v)).collect())
        .collect()
}

pub fn bilinear(g: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, row) in g.iter().enumerate() {
        if u[i] == 0 {
            continue;
        }
        for (j, &gij) in row.iter().enumerate() {
            acc += u[i] * gij * v[j];
        }
    }
    acc
}

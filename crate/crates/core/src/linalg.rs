//! Small dense exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numberfield::Rational;

pub type QMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Rational>]) -> QMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> QMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `a · g · aᵀ`.
pub fn congruence(a: &[Vec<Rational>], g: &[Vec<Rational>]) -> QMatrix {
    mat_mul(&mat_mul(a, g), &transpose(a))
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Rational], m: &[Vec<Rational>]) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| {
            v.iter()
                .zip(m)
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, row)| x * &row[j])
                .fold(Rational::zero(), |a, b| a + b)
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rational::zero(), |s, t| s + t)
}

/// `uᵀ G v` for coefficient vectors.
pub fn bilinear(u: &[Rational], g: &[Vec<Rational>], v: &[Rational]) -> Rational {
    dot(&vec_mat(u, g), v)
}

pub fn is_square(m: &[Vec<Rational>]) -> bool {
    m.iter().all(|r| r.len() == m.len())
}

pub fn is_symmetric(m: &[Vec<Rational>]) -> bool {
    is_square(m) && (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Determinant by Gaussian elimination over ℚ.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    assert!(is_square(m), "determinant of non-square matrix");
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let pivot = a[col][col].clone();
        d *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<QMatrix> {
    assert!(is_square(m));
    let n = m.len();
    let mut a: QMatrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let pivot = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `c · rows = v` for the row vector `c` when `rows` is square and
/// invertible.
pub fn solve_left(rows: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let inv = inverse(rows)?;
    Some(vec_mat(v, &inv))
}

/// Basis of the right nullspace `{x : m·x = 0}`.
pub fn nullspace(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let pivot = a[row][col].clone();
        for v in a[row].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..cols {
                let t = &f * &a[row][c];
                a[r][c] -= t;
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

pub fn to_rational_rows(m: &[Vec<BigInt>]) -> QMatrix {
    m.iter()
        .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect()
}

pub fn is_integral(m: &[Vec<Rational>]) -> bool {
    m.iter().all(|r| r.iter().all(Rational::is_integer))
}

/// Row-style Hermite normal form of the integer row span; returns the nonzero
/// rows, which form a basis of the lattice spanned by the input rows.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut prow = 0;
    for col in 0..cols {
        loop {
            // smallest nonzero entry in this column moves to the pivot row
            let Some(best) = (prow..a.len())
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&r, &s| a[r][col].abs().cmp(&a[s][col].abs()))
            else {
                break;
            };
            a.swap(prow, best);
            let mut done = true;
            for r in prow + 1..a.len() {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[prow][col]);
                let pivot_row = a[prow].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if prow >= a.len() || a[prow][col].is_zero() {
            continue;
        }
        if a[prow][col].is_negative() {
            for x in a[prow].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[prow].clone();
        for r in 0..prow {
            let q = a[r][col].div_floor(&pivot_row[col]);
            if !q.is_zero() {
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        prow += 1;
        if prow == a.len() {
            break;
        }
    }
    a.truncate(prow);
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    a
}

//! Dense Gaussian elimination over any [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solves `a · x = b` with partial pivoting. `a` is row-major and square.
pub fn solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>, what: &'static str) -> Result<Vec<S>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r, &s| {
                a[r][col]
                    .abs()
                    .partial_cmp(&a[s][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or(Error::Singular(what))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (head, tail) = a.split_at_mut(col + 1);
        let prow = &head[col];
        for (k, row) in tail.iter_mut().enumerate() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone() / prow[col].clone();
            for j in col..n {
                let d = f.clone() * prow[j].clone();
                row[j] = row[j].clone() - d;
            }
            let d = f * b[col].clone();
            b[col + 1 + k] = b[col + 1 + k].clone() - d;
        }
    }
    let mut x = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            acc = acc - a[i][j].clone() * x[j].clone();
        }
        x[i] = acc / a[i][i].clone();
        if !x[i].is_finite_value() {
            return Err(Error::Singular(what));
        }
    }
    Ok(x)
}

/// `n × n` zero matrix.
pub fn zeros<S: Scalar>(n: usize) -> Vec<Vec<S>> {
    vec![vec![S::zero(); n]; n]
}

/// `n × n` identity matrix.
pub fn identity<S: Scalar>(n: usize) -> Vec<Vec<S>> {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = S::one();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    #[test]
    fn solves_with_pivoting() {
        let a = vec![vec![0.0, 2.0], vec![3.0, 1.0]];
        let x: Vec<f64> = solve(a, vec![4.0, 5.0], "test").unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_rational_solution() {
        let a: Vec<Vec<Rational>> = vec![
            vec![rational(2, 1), rational(1, 1)],
            vec![rational(1, 1), rational(3, 1)],
        ];
        let x = solve(a, vec![rational(1, 1), rational(0, 1)], "test").unwrap();
        assert_eq!(x, vec![rational(3, 5), rational(-1, 5)]);
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert_eq!(
            solve(a, vec![1.0, 2.0], "test"),
            Err(Error::Singular("test"))
        );
    }
}

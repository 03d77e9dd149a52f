//! Exact linear algebra over `Q` by fraction-free (Bareiss) elimination.
//!
//! Rows are cleared of denominators first, so elimination runs on integers and
//! every intermediate entry is a minor of the input. Pivot rows are chosen by
//! smallest bit length.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::Rational;

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Row echelon form of an integer matrix; returns the pivot columns.
fn echelon(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let n = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].bits()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_integer_matrix(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, usize) {
    let ncols = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
    (rows.iter().map(|r| integer_row(r)).collect(), ncols)
}

/// Rank over `Q`.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let (mut m, ncols) = to_integer_matrix(rows);
    echelon(&mut m, ncols).len()
}

/// Solves the echelon system for the pivot variables given values of the rest.
fn back_substitute(m: &[Vec<BigInt>], pivots: &[usize], x: &mut [Rational]) {
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let mut s = Rational::zero();
        for (j, xj) in x.iter().enumerate().skip(pc + 1) {
            if !m[r][j].is_zero() && !xj.is_zero() {
                s += Rational::from_integer(m[r][j].clone()) * xj;
            }
        }
        x[pc] = -s / Rational::from_integer(m[r][pc].clone());
    }
}

/// Scales a nonzero vector to coprime integers with a positive first nonzero entry.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Basis of `{x : A x = 0}`, each vector primitive.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (mut m, nc) = to_integer_matrix(rows);
    let ncols = if rows.is_empty() { ncols } else { nc };
    let pivots = echelon(&mut m, ncols);
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); ncols];
        x[f] = Rational::one();
        back_substitute(&m, &pivots, &mut x);
        basis.push(primitive(&x));
    }
    basis
}

/// Basis of `{y : y^T A = 0}`: the linear relations among the rows.
pub fn left_kernel(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    nullspace(&transpose(rows), rows.len())
}

pub fn transpose(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    if aug.is_empty() {
        return Some(Vec::new());
    }
    let (mut m, _) = to_integer_matrix(&aug);
    let pivots = echelon(&mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    // free variables are zero; the constant column enters with a minus sign
    let mut x = vec![Rational::zero(); ncols + 1];
    x[ncols] = -Rational::one();
    back_substitute(&m, &pivots, &mut x);
    x.truncate(ncols);
    Some(x)
}

//! Exact rank and nullspace over `Q` by fraction-free (Bareiss) elimination.
//!
//! Rational rows are scaled to primitive integer rows first; every
//! intermediate entry of the elimination is then an integer minor of the
//! input, so no fractions appear until back-substitution.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Integer row-echelon form with the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Scales a rational row by the lcm of its denominators and divides out the
/// content, giving a primitive integer row spanning the same line.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = Rational::common_denominator(row);
    let ints: Vec<BigInt> = row
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if content.is_zero() || content.is_one() {
        ints
    } else {
        ints.into_iter().map(|v| v / &content).collect()
    }
}

/// Bareiss forward elimination of an integer matrix given as rows.
pub fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            for j in c + 1..cols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                // Exact by Sylvester's identity.
                rows[i][j] = v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, cols }
}

pub fn rank_integer(rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    bareiss(rows, cols).rank()
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    rank_integer(rows.iter().map(|r| integer_row(r)).collect(), cols)
}

/// A basis of `{v : M v = 0}`, one vector per free column. Each vector has a
/// 1 in its free column, zeros in the other free columns, and is then scaled
/// to a primitive integer vector with a positive leading entry.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let ech = bareiss(rows.iter().map(|r| integer_row(r)).collect(), cols);
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (k, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[k];
            let mut s = Rational::zero();
            for j in pc + 1..cols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    s = s + Rational::from(row[j].clone()) * &v[j];
                }
            }
            v[pc] = -s / Rational::from(row[pc].clone());
        }
        basis.push(normalize(&v));
    }
    basis
}

/// Primitive integer multiple with a positive first nonzero entry.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    let mut ints = integer_row(v);
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -core::mem::take(x);
        }
    }
    ints.into_iter().map(Rational::from).collect()
}

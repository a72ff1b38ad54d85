//! Exact linear algebra over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A vector of exact rationals (always kept in lowest terms by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The positive rational multiple of `self` that is a primitive integer vector.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<BigInt> = self
            .0
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return scaled;
        }
        scaled.into_iter().map(|v| v / &g).collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..ncols {
                let delta = &f * &a[r][j];
                a[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(rows).1.len()
}

/// Some solution of `A·x = b` over the rationals (free variables set to zero).
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let ncols = a.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(&augmented);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Integer with the smallest absolute value in `[lo, hi]`, if there is one.
pub(crate) fn smallest_integer_in(
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
) -> Option<BigInt> {
    let lo_int = lo.map(|q| q.ceil().to_integer());
    let hi_int = hi.map(|q| q.floor().to_integer());
    match (lo_int, hi_int) {
        (Some(l), Some(h)) if l > h => None,
        (Some(l), Some(h)) => {
            if l.is_positive() {
                Some(l)
            } else if h.is_negative() {
                Some(h)
            } else {
                Some(BigInt::zero())
            }
        }
        (Some(l), None) => Some(if l.is_positive() { l } else { BigInt::zero() }),
        (None, Some(h)) => Some(if h.is_negative() { h } else { BigInt::zero() }),
        (None, None) => Some(BigInt::zero()),
    }
}

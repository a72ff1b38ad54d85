//! The grading of `k[Δ]` by the lattice of degrees making every variable
//! homogeneous.
//!
//! Degrees are the integer solutions of `β₀·deg T₀ = βᵢ·deg Tᵢ` for
//! `i = 1..r`; the grading matrix has the Hermite-canonical basis of that
//! saturated kernel as rows, so its rank is `n − r`. The constraint for
//! `i = 1` is imposed even when `r = 1` and there is no relation; this is a
//! convention that reproduces the degrees `β/βᵢ` of unit-partition data.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lattice::{integer_kernel_basis, smith_normal_form, solve_integer, IntMatrix};
use crate::monoid::{is_unmixed, MonoidSpec, UnmixedCertificate};
use crate::ring::Monomial;
use crate::trinomial::TrinomialData;

/// A `Z^rank` grading of `n` variables: one degree column per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingMatrix {
    degrees: IntMatrix,
}

impl GradingMatrix {
    /// Rows of `degrees` are the coordinates; columns are the variables.
    pub fn new(degrees: IntMatrix) -> Self {
        GradingMatrix { degrees }
    }

    pub fn from_columns(rank: usize, columns: &[Vec<BigInt>]) -> Result<Self, Error> {
        Ok(GradingMatrix::new(IntMatrix::from_columns(rank, columns)?))
    }

    pub fn rank(&self) -> usize {
        self.degrees.rows()
    }

    pub fn nvars(&self) -> usize {
        self.degrees.cols()
    }

    pub fn degrees(&self) -> &IntMatrix {
        &self.degrees
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.degrees.column(j)
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        self.degrees.columns()
    }

    pub fn degree_of(&self, m: &Monomial) -> Vec<BigInt> {
        m.degree(&self.columns())
    }

    /// The same grading in other coordinates: `g ↦ T·g`.
    pub fn transform(&self, t: &IntMatrix) -> Result<Self, Error> {
        Ok(GradingMatrix::new(t.mul(&self.degrees)?))
    }

    pub fn monoid(&self) -> MonoidSpec {
        MonoidSpec::new(self.rank(), self.columns()).expect("columns have the grading rank")
    }
}

/// The `r × n` homogeneity constraints: row `i` carries `+β₀ⱼ` on block 0 and
/// `−βᵢⱼ` on block `i`.
pub fn constraint_matrix(data: &TrinomialData) -> IntMatrix {
    let n = data.n();
    let rows: Vec<Vec<BigInt>> = (1..=data.r())
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            for (j, &b) in data.block(0).iter().enumerate() {
                row[data.var_index(0, j)] = BigInt::from(b);
            }
            for (j, &b) in data.block(i).iter().enumerate() {
                row[data.var_index(i, j)] = -BigInt::from(b);
            }
            row
        })
        .collect();
    IntMatrix::from_rows(n, rows).expect("rows of length n")
}

pub fn induced_grading(data: &TrinomialData) -> GradingMatrix {
    GradingMatrix::new(integer_kernel_basis(&constraint_matrix(data)))
}

/// The columns generate `Z^rank`: all Smith invariant factors are 1.
pub fn check_effective(gm: &GradingMatrix) -> bool {
    let factors = smith_normal_form(gm.degrees());
    gm.nvars() >= gm.rank() && factors.iter().take(gm.rank()).all(|f| f.is_one())
}

pub fn check_unmixed_grading(gm: &GradingMatrix) -> (bool, UnmixedCertificate) {
    is_unmixed(&gm.monoid())
}

/// Only the trivial nonnegative combination of columns vanishes.
pub fn check_b0_trivial(gm: &GradingMatrix) -> bool {
    gm.columns().iter().all(|c| c.iter().any(|x| !x.is_zero())) && check_unmixed_grading(gm).0
}

/// Monomials `a`, `b` with `deg a − deg b = target`.
pub fn effectiveness_witness(
    gm: &GradingMatrix,
    target: &[BigInt],
) -> Result<(Monomial, Monomial), Error> {
    if target.len() != gm.rank() {
        return Err(Error::InvalidTarget(format!(
            "target has {} coordinates, grading has rank {}",
            target.len(),
            gm.rank()
        )));
    }
    let x = small_solution(gm, target)
        .or_else(|| solve_integer(gm.degrees(), target))
        .ok_or_else(|| Error::InvalidTarget("target is not in the degree lattice".into()))?;
    let split = |positive: bool| {
        Monomial::new(
            x.iter()
                .map(|v| {
                    let part = if positive == v.is_positive() {
                        v.abs()
                    } else {
                        BigInt::zero()
                    };
                    u32::try_from(part).expect("exponent fits in u32")
                })
                .collect(),
        )
    };
    Ok((split(true), split(false)))
}

const WITNESS_MAX_NORM: u32 = 4;
const WITNESS_MAX_CANDIDATES: usize = 20_000;

/// Integer solution of least 1-norm among small candidates.
fn small_solution(gm: &GradingMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let cols = gm.columns();
    let n = cols.len();
    let mut visited = 0usize;
    for norm in 0..=WITNESS_MAX_NORM {
        let mut x = vec![0i64; n];
        if let Some(found) = search_norm(&cols, target, &mut x, 0, i64::from(norm), &mut visited) {
            return Some(found);
        }
        if visited > WITNESS_MAX_CANDIDATES {
            return None;
        }
    }
    None
}

fn search_norm(
    cols: &[Vec<BigInt>],
    target: &[BigInt],
    x: &mut [i64],
    pos: usize,
    remaining: i64,
    visited: &mut usize,
) -> Option<Vec<BigInt>> {
    if pos == x.len() {
        *visited += 1;
        if remaining != 0 {
            return None;
        }
        let hit = (0..target.len()).all(|k| {
            let s: BigInt = cols.iter().zip(x.iter()).map(|(c, &v)| &c[k] * v).sum();
            s == target[k]
        });
        return hit.then(|| x.iter().map(|&v| BigInt::from(v)).collect());
    }
    if *visited > WITNESS_MAX_CANDIDATES {
        return None;
    }
    // Larger positive entries first, then negatives.
    let mut values: Vec<i64> = (0..=remaining).rev().collect();
    values.extend((1..=remaining).map(|v| -v));
    for v in values {
        x[pos] = v;
        if let Some(found) = search_norm(cols, target, x, pos + 1, remaining - v.abs(), visited) {
            return Some(found);
        }
    }
    x[pos] = 0;
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use crate::trinomial::q;

    fn delta0() -> TrinomialData {
        TrinomialData::unit(&[5, 3, 2], &[1]).unwrap()
    }

    #[test]
    fn induced_grading_examples() {
        let g = induced_grading(&delta0());
        assert_eq!(g.rank(), 1);
        assert_eq!(g.degrees().row(0), int_vec(&[6, 10, 15]).as_slice());

        let d = TrinomialData::from_blocks(vec![vec![1, 1], vec![2], vec![3]], vec![q(1)]).unwrap();
        let g = induced_grading(&d);
        assert_eq!(g.rank(), 2);
        let a = constraint_matrix(&d);
        assert!(a.mul(&g.degrees().transpose()).unwrap().is_zero());
        // The example basis (6,1),(0,−1),(3,0),(2,0) spans the same lattice.
        let other = GradingMatrix::from_columns(
            2,
            &[
                int_vec(&[6, 1]),
                int_vec(&[0, -1]),
                int_vec(&[3, 0]),
                int_vec(&[2, 0]),
            ],
        )
        .unwrap();
        let (h1, _) = crate::lattice::hermite_normal_form(g.degrees());
        let (h2, _) = crate::lattice::hermite_normal_form(other.degrees());
        assert_eq!(h1, h2);

        let g = induced_grading(&TrinomialData::polynomial_ring());
        assert_eq!(g.degrees().row(0), int_vec(&[1, 1]).as_slice());
    }

    #[test]
    fn effectiveness_examples() {
        assert!(check_effective(&induced_grading(&delta0())));
        let g = GradingMatrix::new(IntMatrix::from_i64(1, 2, &[2, 4]));
        assert!(!check_effective(&g));
    }

    #[test]
    fn unmixed_examples() {
        let (ok, cert) = check_unmixed_grading(&induced_grading(&delta0()));
        assert!(ok);
        assert_eq!(cert, UnmixedCertificate::PositiveFunctional(int_vec(&[1])));

        let g = GradingMatrix::from_columns(
            2,
            &[
                int_vec(&[6, 1]),
                int_vec(&[0, -1]),
                int_vec(&[3, 0]),
                int_vec(&[2, 0]),
            ],
        )
        .unwrap();
        let (ok, cert) = check_unmixed_grading(&g);
        assert!(ok && cert.verify(&g.monoid()));
        assert!(check_b0_trivial(&g));

        let g = GradingMatrix::from_columns(2, &[int_vec(&[1, 0]), int_vec(&[-1, 0])]).unwrap();
        let (ok, cert) = check_unmixed_grading(&g);
        assert!(!ok);
        assert_eq!(cert, UnmixedCertificate::NullRelation(int_vec(&[1, 1])));
        assert!(!check_b0_trivial(&g));

        assert!(check_b0_trivial(&induced_grading(&delta0())));
    }

    #[test]
    fn witness_examples() {
        let g = induced_grading(&delta0());
        let (a, b) = effectiveness_witness(&g, &int_vec(&[1])).unwrap();
        assert_eq!(a, Monomial::new(vec![1, 1, 0]));
        assert_eq!(b, Monomial::new(vec![0, 0, 1]));
        let (a, b) = effectiveness_witness(&g, &int_vec(&[0])).unwrap();
        assert!(a.is_one() && b.is_one());
        let (a, b) = effectiveness_witness(&g, &int_vec(&[6])).unwrap();
        assert_eq!(a, Monomial::new(vec![1, 0, 0]));
        assert!(b.is_one());
        assert!(matches!(
            effectiveness_witness(&g, &int_vec(&[1, 2])),
            Err(Error::InvalidTarget(_))
        ));
    }

    #[test]
    fn witness_falls_back_to_lattice_solve() {
        let g = induced_grading(&delta0());
        let t = int_vec(&[1_000_001]);
        let (a, b) = effectiveness_witness(&g, &t).unwrap();
        let diff: Vec<BigInt> = g
            .degree_of(&a)
            .iter()
            .zip(g.degree_of(&b))
            .map(|(x, y)| x - y)
            .collect();
        assert_eq!(diff, t);
    }
}

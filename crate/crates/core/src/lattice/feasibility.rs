//! Exact rational feasibility by Fourier–Motzkin elimination.
//!
//! Systems here are tiny (a dozen variables at most), so plain elimination
//! with duplicate pruning is fast enough and every answer is an exact
//! rational certificate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{rat, rref, smallest_integer_in, RationalVector};
use super::IntMatrix;

/// `coeffs · x ≥ rhs` (or `= rhs` when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coeffs, rhs }
    }

    fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }
}

/// A conjunction of linear equalities and non-strict inequalities.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    nvars: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            nvars,
            ..Default::default()
        }
    }

    pub fn at_least(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars);
        self.inequalities.push(Constraint::new(coeffs, rhs));
        self
    }

    pub fn equal(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars);
        self.equalities.push(Constraint::new(coeffs, rhs));
        self
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        self.inequalities.iter().all(|c| c.lhs(x) >= c.rhs)
            && self.equalities.iter().all(|c| c.lhs(x) == c.rhs)
    }

    /// A feasible point, or `None` if the system is infeasible.
    ///
    /// Equalities are eliminated by Gaussian elimination first; the remaining
    /// free variables go through Fourier–Motzkin. Back substitution picks the
    /// integer of least absolute value in each variable's interval when one
    /// exists, which keeps certificates small.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        let n = self.nvars;
        let augmented: Vec<Vec<BigRational>> = self
            .equalities
            .iter()
            .map(|c| {
                let mut row = c.coeffs.clone();
                row.push(c.rhs.clone());
                row
            })
            .collect();
        let (reduced, pivots) = rref(&augmented);
        if pivots.last() == Some(&n) {
            return None;
        }
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();

        // x_p = rhs_p - Σ_f a_pf x_f for each pivot p.
        let substituted: Vec<Constraint> = self
            .inequalities
            .iter()
            .map(|c| {
                let mut coeffs: Vec<BigRational> =
                    free.iter().map(|&f| c.coeffs[f].clone()).collect();
                let mut rhs = c.rhs.clone();
                for (row, &p) in reduced.iter().zip(&pivots) {
                    let cp = &c.coeffs[p];
                    if cp.is_zero() {
                        continue;
                    }
                    for (k, &f) in free.iter().enumerate() {
                        coeffs[k] -= cp * &row[f];
                    }
                    rhs -= cp * &row[n];
                }
                Constraint::new(coeffs, rhs)
            })
            .collect();

        let free_values = fourier_motzkin(free.len(), substituted)?;
        let mut x = vec![BigRational::zero(); n];
        for (k, &f) in free.iter().enumerate() {
            x[f] = free_values[k].clone();
        }
        for (row, &p) in reduced.iter().zip(&pivots) {
            let mut v = row[n].clone();
            for &f in &free {
                v -= &row[f] * &x[f];
            }
            x[p] = v;
        }
        debug_assert!(self.is_satisfied_by(&x));
        Some(x)
    }
}

/// Scales a constraint by a positive factor so its coefficients are a
/// primitive integer vector. `None` for a constraint with zero coefficients.
fn normalize(c: Constraint) -> Option<Constraint> {
    if c.coeffs.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = c
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = c
        .coeffs
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let scale = BigRational::new(lcm, g.clone());
    Some(Constraint {
        coeffs: ints
            .into_iter()
            .map(|v| BigRational::from_integer(v / &g))
            .collect(),
        rhs: c.rhs * scale,
    })
}

/// Deduplicates by coefficient vector, keeping the tightest right-hand side.
/// Returns `None` if a trivially false row `0 ≥ positive` appears.
fn prune(rows: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut best: BTreeMap<Vec<BigRational>, BigRational> = BTreeMap::new();
    for row in rows {
        match normalize(row.clone()) {
            None => {
                if row.rhs.is_positive() {
                    return None;
                }
            }
            Some(c) => {
                best.entry(c.coeffs)
                    .and_modify(|r| {
                        if c.rhs > *r {
                            *r = c.rhs.clone();
                        }
                    })
                    .or_insert(c.rhs);
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(coeffs, rhs)| Constraint { coeffs, rhs })
            .collect(),
    )
}

fn eliminate(rows: &[Constraint], var: usize) -> Option<Vec<Constraint>> {
    let mut keep = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for r in rows {
        let c = &r.coeffs[var];
        if c.is_zero() {
            keep.push(r.clone());
        } else if c.is_positive() {
            lower.push(r);
        } else {
            upper.push(r);
        }
    }
    for lo in &lower {
        for up in &upper {
            let a = &lo.coeffs[var];
            let b = -&up.coeffs[var];
            let coeffs = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(x, y)| &b * x + a * y)
                .collect();
            keep.push(Constraint::new(coeffs, &b * &lo.rhs + a * &up.rhs));
        }
    }
    prune(keep)
}

fn fourier_motzkin(nvars: usize, rows: Vec<Constraint>) -> Option<Vec<BigRational>> {
    // stages[v] mentions only variables 0..v.
    let mut stages = vec![Vec::new(); nvars + 1];
    stages[nvars] = prune(rows)?;
    for v in (0..nvars).rev() {
        stages[v] = eliminate(&stages[v + 1], v)?;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for v in 0..nvars {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in &stages[v + 1] {
            let c = &r.coeffs[v];
            if c.is_zero() {
                continue;
            }
            let rest: BigRational = (0..v).map(|k| &r.coeffs[k] * &x[k]).sum();
            let bound = (&r.rhs - rest) / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        x[v] = match smallest_integer_in(lo.as_ref(), hi.as_ref()) {
            Some(i) => BigRational::from_integer(i),
            None => lo.or(hi).expect("empty interval needs a finite bound"),
        };
    }
    Some(x)
}

/// Strictly positive functional: `φ` with `φ·g ≥ 1` for each generator whose
/// flag in `strict` is set (the others are unconstrained).
pub fn positive_functional(gens: &[Vec<BigInt>], strict: &[bool]) -> Option<RationalVector> {
    let dim = gens.first().map_or(0, Vec::len);
    let mut system = LinearSystem::new(dim);
    for (g, &s) in gens.iter().zip(strict) {
        if s {
            system.at_least(
                g.iter().cloned().map(BigRational::from_integer).collect(),
                rat(1),
            );
        }
    }
    system.solve().map(RationalVector)
}

/// Nonnegative relation `c ≥ 0`, `Σ cⱼ gⱼ = 0`, supported on nonzero
/// generators. With `required = Some(j)` it additionally forces `c_j ≥ 1`;
/// otherwise it forces `Σ cⱼ ≥ 1` over the nonzero generators.
pub fn nonnegative_null_relation(
    gens: &[Vec<BigInt>],
    required: Option<usize>,
) -> Option<RationalVector> {
    let m = gens.len();
    let dim = gens.first().map_or(0, Vec::len);
    let nonzero: Vec<bool> = gens
        .iter()
        .map(|g| g.iter().any(|v| !v.is_zero()))
        .collect();
    if let Some(j) = required {
        if !nonzero[j] {
            return None;
        }
    }
    let mut system = LinearSystem::new(m);
    for j in 0..m {
        let mut e = vec![BigRational::zero(); m];
        e[j] = BigRational::one();
        if nonzero[j] {
            system.at_least(e, BigRational::zero());
        } else {
            system.equal(e, BigRational::zero());
        }
    }
    match required {
        Some(j) => {
            let mut e = vec![BigRational::zero(); m];
            e[j] = BigRational::one();
            system.at_least(e, BigRational::one());
        }
        None => {
            let total = nonzero
                .iter()
                .map(|&nz| {
                    if nz {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            system.at_least(total, BigRational::one());
        }
    }
    for i in 0..dim {
        let row = gens
            .iter()
            .map(|g| BigRational::from_integer(g[i].clone()))
            .collect();
        system.equal(row, BigRational::zero());
    }
    system.solve().map(RationalVector)
}

/// Which side of the cone dichotomy to search for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityMode {
    /// `c ≥ 0`, `c ≠ 0` on nonzero columns, `Σ cⱼ gⱼ = 0`; optionally with `c_j ≥ 1`.
    NullRelation { required: Option<usize> },
    /// `φ·gⱼ > 0` for every listed column.
    PositiveFunctional { strict: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Certificate(RationalVector),
    Infeasible,
}

impl Feasibility {
    pub fn certificate(&self) -> Option<&RationalVector> {
        match self {
            Feasibility::Certificate(c) => Some(c),
            Feasibility::Infeasible => None,
        }
    }
}

/// Feasibility on the columns of `gens`, which are the generators.
pub fn rational_feasible(gens: &IntMatrix, mode: &FeasibilityMode) -> Feasibility {
    let columns = gens.columns();
    let found = match mode {
        FeasibilityMode::NullRelation { required } => {
            nonnegative_null_relation(&columns, *required)
        }
        FeasibilityMode::PositiveFunctional { strict } => {
            let mut flags = vec![false; columns.len()];
            for &j in strict {
                flags[j] = true;
            }
            if columns.is_empty() {
                Some(RationalVector(vec![BigRational::zero(); gens.rows()]))
            } else {
                positive_functional(&columns, &flags)
            }
        }
    };
    match found {
        Some(c) => Feasibility::Certificate(c),
        None => Feasibility::Infeasible,
    }
}

/// Checks a functional certificate: `φ·g > 0` for every listed generator.
#[cfg(test)]
pub(crate) fn is_positive_on(phi: &RationalVector, gens: &[Vec<BigInt>]) -> bool {
    gens.iter()
        .all(|g| super::rational_dot(&phi.0, g).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use proptest::prelude::*;

    fn all_strict(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn functional_on_standard_basis() {
        let g = IntMatrix::from_i64(2, 2, &[1, 0, 0, 1]);
        let f = rational_feasible(
            &g,
            &FeasibilityMode::PositiveFunctional {
                strict: all_strict(2),
            },
        );
        assert_eq!(f.certificate().unwrap().0, vec![rat(1), rat(1)]);
    }

    #[test]
    fn null_relation_for_opposite_pair() {
        // columns (1,0) and (-1,0)
        let g = IntMatrix::from_i64(2, 2, &[1, -1, 0, 0]);
        let f = rational_feasible(&g, &FeasibilityMode::NullRelation { required: None });
        let c = f.certificate().unwrap().to_primitive_integer();
        assert_eq!(c, int_vec(&[1, 1]));
        let phi = rational_feasible(
            &g,
            &FeasibilityMode::PositiveFunctional {
                strict: all_strict(2),
            },
        );
        assert_eq!(phi, Feasibility::Infeasible);
    }

    #[test]
    fn functional_on_skew_pair() {
        // columns (2,-1) and (-1,2)
        let g = IntMatrix::from_i64(2, 2, &[2, -1, -1, 2]);
        let f = rational_feasible(
            &g,
            &FeasibilityMode::PositiveFunctional {
                strict: all_strict(2),
            },
        );
        let phi = f.certificate().unwrap();
        assert_eq!(phi.0, vec![rat(1), rat(1)]);
        assert!(is_positive_on(phi, &g.columns()));
    }

    #[test]
    fn equality_constrained_system() {
        // x + y = 2, x - y >= 1, y >= 0  ->  x in [3/2, 2]
        let mut s = LinearSystem::new(2);
        s.equal(vec![rat(1), rat(1)], rat(2))
            .at_least(vec![rat(1), rat(-1)], rat(1))
            .at_least(vec![rat(0), rat(1)], rat(0));
        let x = s.solve().unwrap();
        assert!(s.is_satisfied_by(&x));
        let mut bad = LinearSystem::new(1);
        bad.at_least(vec![rat(1)], rat(2))
            .at_least(vec![rat(-1)], rat(-1));
        assert!(bad.solve().is_none());
    }

    #[test]
    fn required_relation() {
        // (1,0), (-1,0), (0,1): only the first two are units.
        let gens = vec![int_vec(&[1, 0]), int_vec(&[-1, 0]), int_vec(&[0, 1])];
        assert!(nonnegative_null_relation(&gens, Some(0)).is_some());
        assert!(nonnegative_null_relation(&gens, Some(1)).is_some());
        assert!(nonnegative_null_relation(&gens, Some(2)).is_none());
    }

    proptest! {
        #[test]
        fn duality_dichotomy(
            gens in proptest::collection::vec(proptest::collection::vec(-4i64..5, 3), 1..6)
        ) {
            let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| int_vec(g)).collect();
            let nonzero: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|v| !v.is_zero())).cloned().collect();
            prop_assume!(!nonzero.is_empty());
            let phi = positive_functional(&nonzero, &vec![true; nonzero.len()]);
            let rel = nonnegative_null_relation(&nonzero, None);
            prop_assert!(phi.is_some() != rel.is_some());
            if let Some(phi) = phi {
                prop_assert!(is_positive_on(&phi, &nonzero));
            }
            if let Some(c) = rel {
                let c = c.to_primitive_integer();
                prop_assert!(c.iter().all(|v| !v.is_negative()));
                prop_assert!(c.iter().any(|v| v.is_positive()));
                for i in 0..3 {
                    let s: BigInt = c.iter().zip(&nonzero).map(|(a, g)| a * &g[i]).sum();
                    prop_assert!(s.is_zero());
                }
            }
        }
    }
}

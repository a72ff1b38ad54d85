//! Finitely generated submonoids of `Zⁿ`.
//!
//! A monoid is unmixed when its only invertible element is zero. For a
//! finitely generated monoid that is equivalent to: a strictly positive
//! functional exists on the nonzero generators; a basis of `Zⁿ` exists in
//! which every generator has nonnegative coordinates; a translation
//! invariant total order exists making every generator positive. Each
//! answer here comes with a certificate that re-verifies by exact
//! arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lattice::{
    dot, hermite_normal_form, nonnegative_null_relation, positive_functional, rref,
    smith_normal_form, solve_integer, IntMatrix, RationalVector,
};

/// The monoid generated by a finite list of vectors in `Zⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSpec {
    ambient_rank: usize,
    generators: Vec<Vec<BigInt>>,
}

impl MonoidSpec {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        if ambient_rank == 0 {
            return Err(Error::Shape("ambient rank must be at least 1".into()));
        }
        if let Some((i, g)) = generators
            .iter()
            .enumerate()
            .find(|(_, g)| g.len() != ambient_rank)
        {
            return Err(Error::Shape(format!(
                "generator {i} has length {}, ambient rank is {ambient_rank}",
                g.len()
            )));
        }
        Ok(MonoidSpec {
            ambient_rank,
            generators,
        })
    }

    pub fn from_i64(ambient_rank: usize, generators: &[&[i64]]) -> Result<Self, Error> {
        MonoidSpec::new(
            ambient_rank,
            generators
                .iter()
                .map(|g| g.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    fn is_nonzero(g: &[BigInt]) -> bool {
        g.iter().any(|v| !v.is_zero())
    }

    fn nonzero_generators(&self) -> Vec<Vec<BigInt>> {
        self.generators
            .iter()
            .filter(|g| Self::is_nonzero(g))
            .cloned()
            .collect()
    }
}

/// Witness for (or against) unmixedness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnmixedCertificate {
    /// `φ·g > 0` for every nonzero generator `g`.
    PositiveFunctional(Vec<BigInt>),
    /// `c ≥ 0` with `Σ cⱼ gⱼ = 0` and `cⱼ > 0` for some nonzero `gⱼ`.
    NullRelation(Vec<BigInt>),
}

impl UnmixedCertificate {
    pub fn verify(&self, monoid: &MonoidSpec) -> bool {
        match self {
            UnmixedCertificate::PositiveFunctional(phi) => {
                phi.len() == monoid.ambient_rank
                    && monoid
                        .generators
                        .iter()
                        .filter(|g| MonoidSpec::is_nonzero(g))
                        .all(|g| dot(phi, g).is_positive())
            }
            UnmixedCertificate::NullRelation(c) => {
                if c.len() != monoid.generators.len() || c.iter().any(Signed::is_negative) {
                    return false;
                }
                let supported = c
                    .iter()
                    .zip(&monoid.generators)
                    .any(|(cj, g)| cj.is_positive() && MonoidSpec::is_nonzero(g));
                let sum_is_zero = (0..monoid.ambient_rank).all(|i| {
                    c.iter()
                        .zip(&monoid.generators)
                        .map(|(cj, g)| cj * &g[i])
                        .sum::<BigInt>()
                        .is_zero()
                });
                supported && sum_is_zero
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, UnmixedCertificate::PositiveFunctional(_))
    }
}

/// Decides unmixedness; the certificate verifies in either case.
pub fn is_unmixed(monoid: &MonoidSpec) -> (bool, UnmixedCertificate) {
    let nonzero = monoid.nonzero_generators();
    if nonzero.is_empty() {
        let phi = vec![BigInt::one(); monoid.ambient_rank];
        return (true, UnmixedCertificate::PositiveFunctional(phi));
    }
    if let Some(phi) = positive_functional(&nonzero, &vec![true; nonzero.len()]) {
        return (
            true,
            UnmixedCertificate::PositiveFunctional(phi.to_primitive_integer()),
        );
    }
    let c = nonnegative_null_relation(&monoid.generators, None)
        .expect("no positive functional implies a nonnegative null relation");
    (
        false,
        UnmixedCertificate::NullRelation(c.to_primitive_integer()),
    )
}

fn require_unmixed(monoid: &MonoidSpec) -> Result<Vec<BigInt>, Error> {
    match is_unmixed(monoid) {
        (true, UnmixedCertificate::PositiveFunctional(phi)) => Ok(phi),
        (_, UnmixedCertificate::NullRelation(relation)) => Err(Error::NotUnmixed { relation }),
        (false, UnmixedCertificate::PositiveFunctional(_)) => unreachable!(),
    }
}

/// A basis of `Zⁿ` in which every generator has nonnegative coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveBasis {
    /// Basis vectors `u₁,…,uₙ`.
    pub basis: Vec<Vec<BigInt>>,
    /// Coordinates of each generator in that basis.
    pub coordinates: Vec<Vec<BigInt>>,
}

impl PositiveBasis {
    pub fn verify(&self, monoid: &MonoidSpec) -> bool {
        let n = monoid.ambient_rank;
        let Ok(basis) = IntMatrix::from_columns(n, &self.basis) else {
            return false;
        };
        basis.cols() == n
            && basis.is_unimodular()
            && self.coordinates.len() == monoid.generators.len()
            && self
                .coordinates
                .iter()
                .zip(&monoid.generators)
                .all(|(x, g)| {
                    x.iter().all(|v| !v.is_negative())
                        && basis.apply(x).is_ok_and(|image| image == *g)
                })
    }
}

/// Sizes of the boxes searched for small dual vectors before falling back.
const DUAL_SEARCH_RADII: [i64; 3] = [1, 2, 3];
const DUAL_SEARCH_LIMIT: usize = 60_000;

/// Integer vectors with max-norm at most `radius`, ordered by L1 norm then
/// lexicographically descending.
fn box_vectors(n: usize, radius: i64) -> Option<Vec<Vec<BigInt>>> {
    let side = (2 * radius + 1) as usize;
    let count = side.checked_pow(n as u32)?;
    if count > DUAL_SEARCH_LIMIT {
        return None;
    }
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(count);
    let mut current = vec![-radius; n];
    loop {
        out.push(current.clone());
        let mut k = n;
        loop {
            if k == 0 {
                out.sort_by(|a, b| {
                    let la: i64 = a.iter().map(|v| v.abs()).sum();
                    let lb: i64 = b.iter().map(|v| v.abs()).sum();
                    la.cmp(&lb).then_with(|| b.cmp(a))
                });
                return Some(
                    out.into_iter()
                        .map(|v| v.into_iter().map(BigInt::from).collect())
                        .collect(),
                );
            }
            k -= 1;
            if current[k] < radius {
                current[k] += 1;
                break;
            }
            current[k] = -radius;
        }
    }
}

fn extends_to_basis(rows: &[Vec<BigInt>], n: usize) -> bool {
    let m = IntMatrix::from_rows(n, rows.to_vec()).expect("rows have length n");
    smith_normal_form(&m).iter().all(One::is_one)
}

/// Unimodular matrix whose first row is the primitive vector `phi`.
fn complete_primitive(phi: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = phi.len();
    let column = IntMatrix::from_columns(n, &[phi.to_vec()]).expect("column of length n");
    // U·φᵀ = e₁ (φ primitive), so φᵀ is the first column of U⁻¹.
    let (_, u) = hermite_normal_form(&column);
    let inverse = integer_inverse(&u);
    inverse.transpose().to_rows()
}

fn integer_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let augmented: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = u
                .row(i)
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let (reduced, _) = rref(&augmented);
    let rows = reduced
        .into_iter()
        .map(|r| r[n..].iter().map(|q| q.to_integer()).collect())
        .collect();
    IntMatrix::from_rows(n, rows).expect("square inverse")
}

/// Rows of a unimodular matrix, each in the dual cone of `gens`.
///
/// Small dual-cone vectors are tried greedily (first on their own, then
/// seeded with `φ`) in growing boxes; if that fails an arbitrary completion
/// of `φ` is pushed into the cone.
fn dual_basis(phi: &[BigInt], gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = phi.len();
    let in_dual_cone = |v: &[BigInt]| gens.iter().all(|g| !dot(v, g).is_negative());
    for radius in DUAL_SEARCH_RADII {
        let Some(candidates) = box_vectors(n, radius) else {
            break;
        };
        let candidates: Vec<Vec<BigInt>> = candidates
            .into_iter()
            .filter(|c| !c.iter().all(Zero::is_zero) && in_dual_cone(c))
            .collect();
        for seed in [vec![], vec![phi.to_vec()]] {
            let mut chosen = seed;
            for cand in &candidates {
                if chosen.len() == n {
                    break;
                }
                chosen.push(cand.clone());
                if !extends_to_basis(&chosen, n) {
                    chosen.pop();
                }
            }
            if chosen.len() == n {
                return chosen;
            }
        }
    }
    // Shift an arbitrary completion of φ by multiples of φ until every row
    // lies in the dual cone; the determinant does not change.
    let mut rows = complete_primitive(phi);
    for row in rows.iter_mut().skip(1) {
        let mut shift = BigInt::zero();
        for g in gens {
            let need = (-dot(row, g)).div_ceil(&dot(phi, g));
            if need > shift {
                shift = need;
            }
        }
        for (r, p) in row.iter_mut().zip(phi) {
            *r += &shift * p;
        }
    }
    rows
}

/// A basis of `Zⁿ` putting every generator in the nonnegative orthant.
pub fn positive_basis(monoid: &MonoidSpec) -> Result<PositiveBasis, Error> {
    let phi = require_unmixed(monoid)?;
    let n = monoid.ambient_rank;
    let nonzero = monoid.nonzero_generators();
    let duals = dual_basis(&phi, &nonzero);
    let psi = IntMatrix::from_rows(n, duals).expect("n rows of length n");
    debug_assert!(psi.is_unimodular());
    let basis_matrix = integer_inverse(&psi);
    let basis = basis_matrix.columns();
    let coordinates = monoid
        .generators
        .iter()
        .map(|g| psi.apply(g).expect("generator has length n"))
        .collect();
    Ok(PositiveBasis { basis, coordinates })
}

/// Translation-invariant total order on `Zⁿ`: compare by a positive weight
/// functional, then lexicographically in the tiebreak coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOrder {
    weight: Vec<BigInt>,
    tiebreak: Vec<usize>,
}

impl GroupOrder {
    pub fn new(weight: Vec<BigInt>, tiebreak: Vec<usize>) -> Result<Self, Error> {
        let mut sorted = tiebreak.clone();
        sorted.sort_unstable();
        if sorted != (0..weight.len()).collect::<Vec<_>>() {
            return Err(Error::Shape(
                "tiebreak must be a permutation of the coordinates".into(),
            ));
        }
        Ok(GroupOrder { weight, tiebreak })
    }

    /// Weight with the identity coordinate order as tiebreak.
    pub fn with_weight(weight: Vec<BigInt>) -> Self {
        let n = weight.len();
        GroupOrder {
            weight,
            tiebreak: (0..n).collect(),
        }
    }

    pub fn weight(&self) -> &[BigInt] {
        &self.weight
    }

    pub fn tiebreak(&self) -> &[usize] {
        &self.tiebreak
    }

    pub fn rank(&self) -> usize {
        self.weight.len()
    }

    pub fn weight_of(&self, v: &[BigInt]) -> BigInt {
        dot(&self.weight, v)
    }

    pub fn compare(&self, a: &[BigInt], b: &[BigInt]) -> Ordering {
        self.weight_of(a).cmp(&self.weight_of(b)).then_with(|| {
            self.tiebreak
                .iter()
                .map(|&i| a[i].cmp(&b[i]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    pub fn is_positive(&self, v: &[BigInt]) -> bool {
        let zero = vec![BigInt::zero(); v.len()];
        self.compare(v, &zero) == Ordering::Greater
    }
}

/// The order of a monoid: its primitive positive functional with the
/// identity tiebreak.
pub fn build_order(monoid: &MonoidSpec) -> Result<GroupOrder, Error> {
    Ok(GroupOrder::with_weight(require_unmixed(monoid)?))
}

/// Exhibits a generator `g` as a unit: `-g = Σ coefficients[k]·g_k` with
/// nonnegative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitWitness {
    pub generator: usize,
    pub negation: Vec<BigInt>,
}

impl UnitWitness {
    pub fn verify(&self, monoid: &MonoidSpec) -> bool {
        let g = &monoid.generators[self.generator];
        self.negation.len() == monoid.generators.len()
            && self.negation.iter().all(|c| !c.is_negative())
            && (0..monoid.ambient_rank).all(|i| {
                let s: BigInt = self
                    .negation
                    .iter()
                    .zip(&monoid.generators)
                    .map(|(c, h)| c * &h[i])
                    .sum();
                s == -&g[i]
            })
    }
}

/// The maximal subgroup `H` of a monoid and whether `G′/H` is torsion free,
/// `G′` being the group generated by all generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSubgroup {
    /// Indices of the generators that are units.
    pub units: Vec<usize>,
    pub witnesses: Vec<UnitWitness>,
    /// HNF basis of `H` (rows).
    pub basis: IntMatrix,
    /// HNF basis of `G′` (rows).
    pub group_basis: IntMatrix,
    /// Invariant factors of `H` inside `G′`; all ones iff torsion free.
    pub invariant_factors: Vec<BigInt>,
    pub torsion_free: bool,
}

fn nonzero_hnf_rows(rows: Vec<Vec<BigInt>>, n: usize) -> IntMatrix {
    let m = IntMatrix::from_rows(n, rows).expect("rows have length n");
    let (h, _) = hermite_normal_form(&m);
    let kept: Vec<Vec<BigInt>> = h
        .to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    IntMatrix::from_rows(n, kept).expect("rows have length n")
}

pub fn maximal_subgroup(monoid: &MonoidSpec) -> MaximalSubgroup {
    let n = monoid.ambient_rank;
    let mut units = Vec::new();
    let mut witnesses = Vec::new();
    for (j, g) in monoid.generators.iter().enumerate() {
        if !MonoidSpec::is_nonzero(g) {
            continue;
        }
        if let Some(c) = nonnegative_null_relation(&monoid.generators, Some(j)) {
            let mut negation = scale_to_integers(&c);
            negation[j] -= 1;
            units.push(j);
            witnesses.push(UnitWitness {
                generator: j,
                negation,
            });
        }
    }
    let basis = nonzero_hnf_rows(
        units
            .iter()
            .map(|&j| monoid.generators[j].clone())
            .collect(),
        n,
    );
    let group_basis = nonzero_hnf_rows(monoid.generators.clone(), n);
    // Coordinates of H's basis in G′'s basis.
    let gt = group_basis.transpose();
    let coords: Vec<Vec<BigInt>> = basis
        .to_rows()
        .iter()
        .map(|h| solve_integer(&gt, h).expect("H lies in G′"))
        .collect();
    let invariant_factors = if coords.is_empty() {
        Vec::new()
    } else {
        let m = IntMatrix::from_rows(group_basis.rows(), coords).expect("coordinate rows");
        smith_normal_form(&m)
    };
    let torsion_free = invariant_factors.iter().all(One::is_one);
    MaximalSubgroup {
        units,
        witnesses,
        basis,
        group_basis,
        invariant_factors,
        torsion_free,
    }
}

/// Positive integer multiple of a nonnegative rational vector; unlike the
/// primitive scaling it keeps every coordinate that was at least 1 at least 1.
fn scale_to_integers(c: &RationalVector) -> Vec<BigInt> {
    let lcm = c.0.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    c.0.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

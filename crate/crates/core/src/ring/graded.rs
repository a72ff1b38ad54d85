//! Graded pieces of `k[Δ]` and homogeneous subalgebra membership.
//!
//! The standard monomials (those divisible by no pattern) form a basis of
//! `k[Δ]`. Under a pointed grading a positive functional `φ` gives every
//! variable a weight `≥ 1`, which bounds each graded piece.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Monomial, Polynomial, RewriteSystem};
use crate::error::Error;
use crate::grading::{check_b0_trivial, check_unmixed_grading, GradingMatrix};
use crate::lattice::{dot, rank};
use crate::monoid::{build_order, UnmixedCertificate};
use crate::trinomial::TrinomialData;

/// The primitive positive functional of a pointed grading and the weight
/// `φ·deg` of each variable.
pub fn positive_weights(gm: &GradingMatrix) -> Result<(Vec<BigInt>, Vec<u64>), Error> {
    if !check_b0_trivial(gm) {
        return Err(Error::NotPointed);
    }
    let UnmixedCertificate::PositiveFunctional(phi) = check_unmixed_grading(gm).1 else {
        return Err(Error::NotPointed);
    };
    let weights = gm
        .columns()
        .iter()
        .map(|c| {
            dot(&phi, c)
                .to_u64()
                .expect("positive weight of moderate size")
        })
        .collect();
    Ok((phi, weights))
}

fn weight_of(phi: &[BigInt], g: &[BigInt]) -> Option<u64> {
    let w = dot(phi, g);
    if w.is_negative() {
        None
    } else {
        w.to_u64()
    }
}

/// Calls `visit` on every exponent vector with `Σ eⱼwⱼ = total`.
pub(crate) fn for_each_of_weight(weights: &[u64], total: u64, visit: &mut impl FnMut(&[u32])) {
    fn walk(
        weights: &[u64],
        pos: usize,
        left: u64,
        e: &mut Vec<u32>,
        visit: &mut impl FnMut(&[u32]),
    ) {
        if pos == weights.len() {
            if left == 0 {
                visit(e);
            }
            return;
        }
        let w = weights[pos];
        if pos + 1 == weights.len() {
            if left % w == 0 {
                e[pos] = u32::try_from(left / w).expect("exponent fits in u32");
                visit(e);
            }
            return;
        }
        for k in (0..=left / w).rev() {
            e[pos] = u32::try_from(k).expect("exponent fits in u32");
            walk(weights, pos + 1, left - k * w, e, visit);
        }
        e[pos] = 0;
    }
    if weights.is_empty() {
        if total == 0 {
            visit(&[]);
        }
        return;
    }
    let mut e = vec![0; weights.len()];
    walk(weights, 0, total, &mut e, visit);
}

/// Standard monomials of degree `g`, in descending lexicographic order.
pub fn enumerate_graded_piece(
    g: &[BigInt],
    gm: &GradingMatrix,
    data: &TrinomialData,
) -> Result<Vec<Monomial>, Error> {
    check_shape(gm, data)?;
    if g.len() != gm.rank() {
        return Err(Error::InvalidTarget(format!(
            "degree has {} coordinates, grading has rank {}",
            g.len(),
            gm.rank()
        )));
    }
    let (phi, weights) = positive_weights(gm)?;
    let rs = RewriteSystem::new(data);
    let cols = gm.columns();
    let mut out = Vec::new();
    if let Some(total) = weight_of(&phi, g) {
        for_each_of_weight(&weights, total, &mut |e| {
            let m = Monomial::new(e.to_vec());
            if m.degree(&cols) == g && rs.is_standard(&m) {
                out.push(m);
            }
        });
    }
    Ok(out)
}

fn check_shape(gm: &GradingMatrix, data: &TrinomialData) -> Result<(), Error> {
    if gm.nvars() != data.n() {
        return Err(Error::VariableCountMismatch {
            expected: data.n(),
            found: gm.nvars(),
        });
    }
    Ok(())
}

/// Degree of a nonzero homogeneous polynomial.
fn homogeneous_degree(
    p: &Polynomial,
    gm: &GradingMatrix,
    index: Option<usize>,
) -> Result<Option<Vec<BigInt>>, Error> {
    p.homogeneous_degree(&gm.columns())
        .ok_or(Error::NotHomogeneous { index })
}

/// Whether `x` lies in `k[gens]`. Inputs must be homogeneous; the answer is
/// decided in the graded piece of `deg x`.
pub fn subalgebra_membership(
    x: &Polynomial,
    gens: &[Polynomial],
    gm: &GradingMatrix,
    data: &TrinomialData,
) -> Result<bool, Error> {
    check_shape(gm, data)?;
    let rs = RewriteSystem::new(data);
    let x = rs.normal_form(x)?;
    let normal_gens = gens
        .iter()
        .map(|g| rs.normal_form(g))
        .collect::<Result<Vec<_>, _>>()?;
    let Some(target) = homogeneous_degree(&x, gm, None)? else {
        return Ok(true);
    };
    let (phi, _) = positive_weights(gm)?;
    let mut usable = Vec::new();
    for (i, g) in normal_gens.iter().enumerate() {
        let Some(d) = homogeneous_degree(g, gm, Some(i))? else {
            continue;
        };
        let w = weight_of(&phi, &d).expect("degrees of a pointed grading are nonnegative");
        if w > 0 {
            usable.push((g.clone(), d, w));
        }
    }
    let Some(total) = weight_of(&phi, &target) else {
        return Ok(false);
    };
    if total == 0 {
        // B₀ = k: only constants have degree 0.
        return Ok(true);
    }

    let products = degree_products(&rs, data.n(), &usable, &target, total);
    Ok(in_span(&x, &products))
}

/// Normal forms of all products `Π gᵢ^eᵢ` of degree `target`; `total` is
/// the target's weight and every generator has positive weight.
pub(crate) fn degree_products(
    rs: &RewriteSystem,
    nvars: usize,
    gens: &[(Polynomial, Vec<BigInt>, u64)],
    target: &[BigInt],
    total: u64,
) -> Vec<Polynomial> {
    let weights: Vec<u64> = gens.iter().map(|(_, _, w)| *w).collect();
    let mut products = Vec::new();
    let mut powers: Vec<Vec<Polynomial>> =
        gens.iter().map(|_| vec![Polynomial::one(nvars)]).collect();
    for_each_of_weight(&weights, total, &mut |e| {
        let mut degree = vec![BigInt::zero(); target.len()];
        for ((_, d, _), &k) in gens.iter().zip(e) {
            for (acc, di) in degree.iter_mut().zip(d) {
                *acc += di * BigInt::from(k);
            }
        }
        if degree != target {
            return;
        }
        let mut p = Polynomial::one(nvars);
        for (i, &k) in e.iter().enumerate() {
            let k = k as usize;
            while powers[i].len() <= k {
                let next = rs
                    .mul(powers[i].last().unwrap(), &gens[i].0)
                    .expect("same ring");
                powers[i].push(next);
            }
            if k > 0 {
                p = rs.mul(&p, &powers[i][k]).expect("same ring");
            }
        }
        products.push(p);
    });
    products
}

/// Exact test of `x ∈ span(vectors)` on monomial coordinates.
pub(crate) fn in_span(x: &Polynomial, vectors: &[Polynomial]) -> bool {
    if x.is_zero() {
        return true;
    }
    let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in vectors.iter().chain(std::iter::once(x)) {
        for m in p.monomials() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let row = |p: &Polynomial| {
        let mut v = vec![BigRational::zero(); index.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(row).collect();
    let base = rank(&rows);
    rows.push(row(x));
    rank(&rows) == base
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceDimension {
    pub degree: Vec<BigInt>,
    pub weight: u64,
    pub dimension: usize,
}

/// Graded-piece dimensions of every degree of weight at most the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeReport {
    pub functional: Vec<BigInt>,
    pub budget: u64,
    pub pieces: Vec<PieceDimension>,
    pub degree_zero_dimension: usize,
    /// Degrees found that the group order ranks below zero.
    pub negative_degrees: Vec<Vec<BigInt>>,
}

impl FiniteTypeReport {
    pub fn is_clean(&self) -> bool {
        self.degree_zero_dimension == 1 && self.negative_degrees.is_empty()
    }

    pub fn dimension_at(&self, degree: &[BigInt]) -> usize {
        self.pieces
            .iter()
            .find(|p| p.degree == degree)
            .map_or(0, |p| p.dimension)
    }
}

/// Depth-first walk over the standard monomials of weight at most a budget,
/// carrying degrees in machine integers. A block `i ≥ 2` is pruned as soon
/// as its exponents dominate `βᵢ`.
struct StandardWalk {
    weights: Vec<u64>,
    cols: Vec<Vec<i64>>,
    pattern: Vec<u32>,
    /// For the last variable of a block `≥ 2`, the first variable of it.
    block_start: Vec<Option<usize>>,
}

impl StandardWalk {
    fn new(data: &TrinomialData, gm: &GradingMatrix, weights: Vec<u64>) -> Result<Self, Error> {
        let cols = gm
            .columns()
            .iter()
            .map(|c| c.iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Shape("degrees too large for enumeration".into()))?;
        let n = data.n();
        let mut pattern = vec![0u32; n];
        let mut block_start = vec![None; n];
        for i in 2..=data.r() {
            let start = data.var_index(i, 0);
            for (j, &b) in data.block(i).iter().enumerate() {
                pattern[start + j] = u32::try_from(b).expect("exponent fits in u32");
            }
            block_start[start + data.block(i).len() - 1] = Some(start);
        }
        Ok(StandardWalk {
            weights,
            cols,
            pattern,
            block_start,
        })
    }

    fn run(&self, budget: u64, visit: &mut impl FnMut(u64, &[i64])) {
        let rank = self.cols.first().map_or(0, Vec::len);
        let mut e = vec![0u32; self.weights.len()];
        let mut deg = vec![0i64; rank];
        self.step(0, 0, budget, &mut e, &mut deg, visit);
    }

    fn step(
        &self,
        pos: usize,
        used: u64,
        budget: u64,
        e: &mut [u32],
        deg: &mut [i64],
        visit: &mut impl FnMut(u64, &[i64]),
    ) {
        if pos == e.len() {
            visit(used, deg);
            return;
        }
        let w = self.weights[pos];
        let max = (budget - used) / w;
        let mut added = 0i64;
        for k in 0..=max {
            e[pos] = k as u32;
            if let Some(start) = self.block_start[pos] {
                if (start..=pos).all(|j| e[j] >= self.pattern[j]) {
                    break;
                }
            }
            self.step(pos + 1, used + k * w, budget, e, deg, visit);
            for (d, c) in deg.iter_mut().zip(&self.cols[pos]) {
                *d += c;
            }
            added += 1;
        }
        for (d, c) in deg.iter_mut().zip(&self.cols[pos]) {
            *d -= c * added;
        }
        e[pos] = 0;
    }
}

pub fn check_finite_type(
    gm: &GradingMatrix,
    data: &TrinomialData,
    degree_budget: u64,
) -> Result<FiniteTypeReport, Error> {
    check_shape(gm, data)?;
    let (phi, weights) = positive_weights(gm)?;
    let order = build_order(&gm.monoid())?;
    let mut counts: BTreeMap<(u64, Vec<BigInt>), usize> = BTreeMap::new();
    let walker = StandardWalk::new(data, gm, weights)?;
    let mut small: HashMap<(u64, Vec<i64>), usize> = HashMap::new();
    walker.run(degree_budget, &mut |w, d| {
        *small.entry((w, d.to_vec())).or_default() += 1
    });
    for ((w, d), c) in small {
        counts.insert((w, d.into_iter().map(BigInt::from).collect()), c);
    }
    let zero = vec![BigInt::zero(); gm.rank()];
    let negative_degrees = counts
        .keys()
        .filter(|(_, d)| order.compare(d, &zero).is_lt())
        .map(|(_, d)| d.clone())
        .collect();
    let pieces: Vec<PieceDimension> = counts
        .into_iter()
        .map(|((weight, degree), dimension)| PieceDimension {
            degree,
            weight,
            dimension,
        })
        .collect();
    let degree_zero_dimension = pieces
        .iter()
        .find(|p| p.degree == zero)
        .map_or(0, |p| p.dimension);
    Ok(FiniteTypeReport {
        functional: phi,
        budget: degree_budget,
        pieces,
        degree_zero_dimension,
        negative_degrees,
    })
}

//! Normal forms for unit-partition data (dimension two) and for data of
//! dimension three.
//!
//! Every block power is a linear form in `u = T₀^β₀` and `v = T₁^β₁`:
//! `L₀ = u`, `L₁ = v`, `Lᵢ = −u − λᵢv`. Reordering the blocks amounts to
//! choosing two of these forms as the new `u′, v′` (up to scalars) and
//! expressing the others in them; the new scalars are ratios of coordinates
//! and do not depend on the chosen scalars once `λ₂` is normalized to 1.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::reduce::rescale_block;
use super::{gcd_all, reduce, Move, SubstitutionWitness, TrinomialData};
use crate::error::Error;

type Form = (BigRational, BigRational);

fn forms(data: &TrinomialData) -> Vec<Form> {
    let zero = BigRational::zero;
    let one = BigRational::one;
    let mut out = vec![(one(), zero()), (zero(), one())];
    out.extend(data.lambda().iter().map(|l| (-one(), -l.clone())));
    out
}

/// Scalars applied to the new `u′` and `v′` in a pivot.
#[derive(Clone, Debug)]
pub enum PivotScaling {
    /// `u′` unscaled, `v′` chosen so that `λ′₂ = 1`.
    Normalize,
    /// Explicit nonzero scalars `(c₀, c₁)`.
    Scalars(BigRational, BigRational),
}

/// Re-presents the data with new block `k` equal to old block `order[k]`.
pub fn linear_forms_pivot(
    data: &TrinomialData,
    order: &[usize],
    scaling: &PivotScaling,
) -> Result<(TrinomialData, SubstitutionWitness), Error> {
    let r = data.r();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..=r).collect::<Vec<_>>() {
        return Err(Error::Shape(
            "block order must be a permutation of the blocks".into(),
        ));
    }
    let l = forms(data);
    let (p, q) = (&l[order[0]], &l[order[1]]);
    let det = &p.0 * &q.1 - &p.1 * &q.0;
    // L = x·P + y·Q
    let coords: Vec<Form> = order[2..]
        .iter()
        .map(|&k| {
            let f = &l[k];
            let x = (&f.0 * &q.1 - &f.1 * &q.0) / &det;
            let y = (&p.0 * &f.1 - &p.1 * &f.0) / &det;
            (x, y)
        })
        .collect();
    let (c0, c1) = match scaling {
        PivotScaling::Scalars(a, b) => {
            if a.is_zero() || b.is_zero() {
                return Err(Error::Shape("pivot scalars must be nonzero".into()));
            }
            (a.clone(), b.clone())
        }
        PivotScaling::Normalize => match coords.first() {
            Some((x, y)) => (BigRational::one(), y / x),
            None => (BigRational::one(), BigRational::one()),
        },
    };

    let beta: Vec<Vec<u64>> = order.iter().map(|&k| data.block(k).to_vec()).collect();
    let lambda: Vec<BigRational> = coords.iter().map(|(x, y)| &c0 * y / (&c1 * x)).collect();

    let mut witness = SubstitutionWitness::new();
    if order.iter().enumerate().any(|(k, &o)| k != o) {
        witness.push(Move::PermuteBlocks {
            order: order.to_vec(),
        });
    }
    witness.push(Move::Pivot {
        matrix: [[&c0 * &p.0, &c0 * &p.1], [&c1 * &q.0, &c1 * &q.1]],
    });
    let scalars = [c0.clone(), c1]
        .into_iter()
        .chain(coords.iter().map(|(x, _)| -&c0 / x));
    for (k, c) in scalars.enumerate() {
        if let Some(m) = rescale_block(k, &beta[k], &c) {
            witness.push(m);
        }
    }
    let out = TrinomialData::from_blocks(beta, lambda)
        .expect("distinct forms give distinct nonzero scalars");
    Ok((out, witness))
}

/// `λ₂ = 1` and `β₀ > β₁ > ⋯ > β_r ≥ 2`, or the relation-free `((1),(1))`.
pub fn is_mori_form(data: &TrinomialData) -> bool {
    if !data.is_unit_partition() {
        return false;
    }
    if data.r() == 1 {
        return data.beta() == [vec![1], vec![1]];
    }
    let b: Vec<u64> = data.beta().iter().map(|b| b[0]).collect();
    data.lambda()[0].is_one() && b.windows(2).all(|w| w[0] > w[1]) && b[data.r()] >= 2
}

/// Mori form of unit-partition data: reduce, sort the exponents descending
/// with a pivot, normalize `λ₂ = 1`.
pub fn mori_normal_form(
    data: &TrinomialData,
) -> Result<(TrinomialData, SubstitutionWitness), Error> {
    if !data.is_unit_partition() {
        return Err(Error::NotUnitPartition);
    }
    let (ring, mut witness) = reduce(data);
    let reduced = ring.data;
    if reduced.r() == 1 {
        return Ok((TrinomialData::polynomial_ring(), witness));
    }
    let mut order: Vec<usize> = (0..=reduced.r()).collect();
    order.sort_by(|&a, &b| reduced.block(b)[0].cmp(&reduced.block(a)[0]));
    let (out, w) = linear_forms_pivot(&reduced, &order, &PivotScaling::Normalize)?;
    witness.extend(w);
    Ok((out, witness))
}

fn position_of_max(b: &[u64], from: usize) -> usize {
    (from..b.len()).fold(from, |best, i| if b[i] > b[best] { i } else { best })
}

/// Mori form by elementary moves: bring the largest exponent to block 0, the
/// next largest to block 1, sort the rest, divide all scalars by `λ₂`.
pub fn mori_normal_form_by_moves(data: &TrinomialData) -> Result<TrinomialData, Error> {
    if !data.is_unit_partition() {
        return Err(Error::NotUnitPartition);
    }
    let reduced = reduce(data).0.data;
    if reduced.r() == 1 {
        return Ok(TrinomialData::polynomial_ring());
    }
    let mut b: Vec<u64> = reduced.beta().iter().map(|b| b[0]).collect();
    // lam[i] = λᵢ for i ≥ 2; entries 0 and 1 unused.
    let mut lam: Vec<BigRational> = vec![BigRational::zero(), BigRational::zero()];
    lam.extend(reduced.lambda().iter().cloned());

    let m = position_of_max(&b, 0);
    if m >= 2 {
        // u′ = −Lₘ: λ′ᵢ = λₘ − λᵢ, and old block 0 takes position m with λₘ.
        let lm = lam[m].clone();
        for i in 2..lam.len() {
            if i != m {
                lam[i] = &lm - &lam[i];
            }
        }
        lam[m] = lm;
        b.swap(0, m);
    } else if m == 1 {
        for l in lam.iter_mut().skip(2) {
            *l = l.recip();
        }
        b.swap(0, 1);
    }

    let nmax = position_of_max(&b, 1);
    if nmax >= 2 {
        let ln = lam[nmax].clone();
        for i in 2..lam.len() {
            if i != nmax {
                lam[i] = &lam[i] / (&lam[i] - &ln);
            }
        }
        lam[nmax] = BigRational::one();
        b.swap(1, nmax);
    }

    let mut rest: Vec<(u64, BigRational)> = b[2..].iter().cloned().zip(lam.drain(2..)).collect();
    rest.sort_by(|x, y| y.0.cmp(&x.0));
    let l2 = rest[0].1.clone();
    let beta: Vec<Vec<u64>> = b[..2]
        .iter()
        .chain(rest.iter().map(|(e, _)| e))
        .map(|&e| vec![e])
        .collect();
    let lambda: Vec<BigRational> = rest.iter().map(|(_, l)| l / &l2).collect();
    Ok(TrinomialData::from_blocks(beta, lambda).expect("moves preserve the data conditions"))
}

/// Isomorphism of dimension-two rings, decided by equality of Mori forms.
/// Meant over an algebraically closed field of characteristic zero.
pub fn is_isomorphic_dim2(a: &TrinomialData, b: &TrinomialData) -> Result<bool, Error> {
    Ok(mori_normal_form(a)?.0 == mori_normal_form(b)?.0)
}

/// A normalized presentation of dimension-three data. This is a choice of
/// presentation and not an isomorphism invariant: two outputs that differ
/// may still present isomorphic rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim3NormalForm {
    pub data: TrinomialData,
    pub witness: SubstitutionWitness,
}

impl Dim3NormalForm {
    pub const NOTE: &'static str =
        "presentation normal form only; not an isomorphism invariant in dimension three";

    /// `(c, d)`: the exponents of the two-variable block.
    pub fn last_block(&self) -> (u64, u64) {
        let b = self.data.block(self.data.r());
        (b[0], b[1])
    }

    /// `gcd(c, d, β₀⋯β_{r−1})` over the unit blocks.
    pub fn gcd_condition(&self) -> u64 {
        let (c, d) = self.last_block();
        let product: u64 = (0..self.data.r()).map(|i| self.data.block(i)[0]).product();
        gcd_all([c, d, product])
    }
}

/// Normal form for data with exactly one two-variable block: reduce, move the
/// two-variable block last with the unit blocks in decreasing order and
/// `λ₂ = 1`, and order that block's exponents so that `c ≥ d`.
pub fn dim3_normal_form(data: &TrinomialData) -> Result<Dim3NormalForm, Error> {
    let partition = data.partition();
    let doubles = partition.iter().filter(|&&s| s == 2).count();
    let singles = partition.iter().filter(|&&s| s == 1).count();
    if doubles != 1 || singles + 1 != partition.len() {
        return Err(Error::NotDimensionThree {
            dimension: super::dimension(data),
        });
    }
    let (ring, mut witness) = reduce(data);
    let reduced = ring.data;
    if reduced.r() == 1 && ring.poly_vars > 0 {
        witness.push(Move::Regroup {
            partition: vec![1, 2],
        });
        let out = TrinomialData::from_blocks(vec![vec![1], vec![1, 1]], vec![])
            .expect("polynomial ring data");
        return Ok(Dim3NormalForm { data: out, witness });
    }

    let r = reduced.r();
    let double = (0..=r)
        .find(|&i| reduced.block(i).len() == 2)
        .expect("reduction keeps the two-variable block");
    let mut order: Vec<usize> = (0..=r).filter(|&i| i != double).collect();
    order.sort_by(|&a, &b| reduced.block(b)[0].cmp(&reduced.block(a)[0]));
    order.push(double);
    let (pivoted, w) = linear_forms_pivot(&reduced, &order, &PivotScaling::Normalize)?;
    witness.extend(w);

    let mut beta = pivoted.beta().to_vec();
    if beta[r][0] < beta[r][1] {
        beta[r].swap(0, 1);
        witness.push(Move::ReorderBlock {
            block: r,
            order: vec![1, 0],
        });
    }
    let out = TrinomialData::from_blocks(beta, pivoted.lambda().to_vec())
        .expect("reordering a block preserves the data conditions");
    Ok(Dim3NormalForm { data: out, witness })
}

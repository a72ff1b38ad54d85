//! Elimination of linear blocks.

use num_rational::BigRational;
use num_traits::One;

use super::{ClassifiedRing, FormalRadical, Move, SubstitutionWitness, TrinomialData};
use crate::ring::{Monomial, Polynomial};

/// Rescale of one variable of a block by `base^(1/βₛ)`, on a slot where the
/// root is exact when there is one.
pub(super) fn rescale_block(block: usize, exps: &[u64], base: &BigRational) -> Option<Move> {
    if base.is_one() {
        return None;
    }
    let candidates: Vec<(usize, FormalRadical)> = exps
        .iter()
        .enumerate()
        .map(|(s, &e)| (s, FormalRadical::new(base.clone(), e)))
        .collect();
    let (slot, factor) = candidates
        .iter()
        .find(|(_, f)| f.is_exact())
        .unwrap_or(&candidates[0])
        .clone();
    Some(Move::Rescale {
        block,
        slot,
        factor,
    })
}

fn block_monomial(beta: &[Vec<u64>], i: usize) -> Monomial {
    let n: usize = beta.iter().map(Vec::len).sum();
    let off: usize = beta[..i].iter().map(Vec::len).sum();
    let mut e = vec![0u32; n];
    for (j, &b) in beta[i].iter().enumerate() {
        e[off + j] = u32::try_from(b).expect("exponent fits in u32");
    }
    Monomial::new(e)
}

/// Reduces data to reduced form, eliminating one linear block at a time:
/// a block `i ≥ 2` simply disappears with its relation; a linear `T₀` or
/// `T₁` is solved for and the remaining relations are re-pivoted with
/// rational updates of the scalars. When no relation is left the ring is a
/// polynomial ring and the result is `((1),(1))` with `n′ − 2` free
/// variables.
pub fn reduce(data: &TrinomialData) -> (ClassifiedRing, SubstitutionWitness) {
    let mut beta = data.beta().to_vec();
    let mut lambda = data.lambda().to_vec();
    let mut witness = SubstitutionWitness::new();
    let one = BigRational::one();

    while beta.len() > 2 {
        let r = beta.len() - 1;
        let n: usize = beta.iter().map(Vec::len).sum();
        let linear = |i: usize| beta[i] == [1];
        let u = Polynomial::from_monomial(block_monomial(&beta, 0));
        let v = Polynomial::from_monomial(block_monomial(&beta, 1));

        if let Some(i) = (2..=r).find(|&i| linear(i)) {
            // tᵢ = −T₀^β₀ − λᵢ T₁^β₁
            let sub = -(&u + &v.scale(&lambda[i - 2]));
            witness.push(Move::Eliminate {
                block: i,
                substitution: sub,
            });
            beta.remove(i);
            lambda.remove(i - 2);
        } else if linear(0) {
            // t₀ = −λ₂ T₁^β₁ − T₂^β₂; blocks become (2, 1, 3, …, r).
            let w2 = Polynomial::from_monomial(block_monomial(&beta, 2));
            let sub = -(&v.scale(&lambda[0]) + &w2);
            witness.push(Move::Eliminate {
                block: 0,
                substitution: sub,
            });
            let mut order: Vec<usize> = (0..r).collect();
            order.swap(0, 1);
            witness.push(Move::PermuteBlocks { order });
            let b2 = beta[2].clone();
            // With no relation left the sign change is not needed.
            if r > 2 {
                if let Some(m) = rescale_block(0, &b2, &-one.clone()) {
                    witness.push(m);
                }
            }
            let l2 = lambda[0].clone();
            let b1 = beta[1].clone();
            let rest: Vec<Vec<u64>> = beta.drain(3..).collect();
            beta = [vec![b2, b1], rest].concat();
            lambda = lambda[1..].iter().map(|l| l - &l2).collect();
        } else if linear(1) {
            // t₁ = −(T₀^β₀ + T₂^β₂)/λ₂; blocks become (0, 2, 3, …, r).
            let l2 = lambda[0].clone();
            let w2 = Polynomial::from_monomial(block_monomial(&beta, 2));
            let sub = (&u + &w2).scale(&-l2.recip());
            witness.push(Move::Eliminate {
                block: 1,
                substitution: sub,
            });
            beta.remove(1);
            let mut new_lambda = Vec::with_capacity(lambda.len() - 1);
            for (k, lj) in lambda.iter().enumerate().skip(1) {
                // old block k + 2 is now block k + 1
                let scale = &l2 / (&l2 - lj);
                if let Some(m) = rescale_block(k + 1, &beta[k + 1], &scale) {
                    witness.push(m);
                }
                new_lambda.push(lj / (lj - &l2));
            }
            lambda = new_lambda;
        } else {
            break;
        }
        debug_assert_eq!(beta.iter().map(Vec::len).sum::<usize>(), n - 1);
    }

    if beta.len() == 2 && beta != [vec![1], vec![1]] {
        let n: usize = beta.iter().map(Vec::len).sum();
        witness.push(Move::Regroup {
            partition: vec![1, 1],
        });
        return (
            ClassifiedRing::new(TrinomialData::polynomial_ring(), n - 2),
            witness,
        );
    }
    let reduced =
        TrinomialData::from_blocks(beta, lambda).expect("reduction preserves the data conditions");
    (ClassifiedRing::new(reduced, 0), witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trinomial::{dimension, is_reduced, q, WitnessStatus};

    fn delta0() -> TrinomialData {
        TrinomialData::unit(&[5, 3, 2], &[1]).unwrap()
    }

    #[test]
    fn reduced_data_is_fixed() {
        let (ring, w) = reduce(&delta0());
        assert_eq!(ring, ClassifiedRing::new(delta0(), 0));
        assert!(w.is_empty());
    }

    #[test]
    fn drops_linear_block_beyond_one() {
        let d = TrinomialData::unit(&[5, 3, 2, 1], &[1, 2]).unwrap();
        let (ring, w) = reduce(&d);
        assert_eq!(ring, ClassifiedRing::new(delta0(), 0));
        assert_eq!(w.verify(&d, &ring), WitnessStatus::Verified);
    }

    #[test]
    fn linear_first_block_collapses() {
        let d = TrinomialData::unit(&[1, 3, 2], &[1]).unwrap();
        let (ring, w) = reduce(&d);
        assert_eq!(
            ring,
            ClassifiedRing::new(TrinomialData::polynomial_ring(), 0)
        );
        assert_eq!(ring.dimension(), dimension(&d));
        assert!(matches!(w.verify(&d, &ring), WitnessStatus::Verified));
    }

    #[test]
    fn case_zero_updates_scalars() {
        // T₀ + λᵢ T₁³ + Tᵢ^βᵢ with β₂ = 5 (odd, so the sign root is exact).
        let d = TrinomialData::unit(&[1, 3, 5, 2, 7], &[2, 3, 5]).unwrap();
        let (ring, w) = reduce(&d);
        let expected = TrinomialData::unit(&[5, 3, 2, 7], &[1, 3]).unwrap();
        assert_eq!(ring.data, expected);
        assert_eq!(w.verify(&d, &ring), WitnessStatus::Verified);
    }

    #[test]
    fn case_one_updates_scalars() {
        let d = TrinomialData::unit(&[5, 1, 3, 2], &[2, 3]).unwrap();
        let (ring, w) = reduce(&d);
        // λ′ = λ₃/(λ₃ − λ₂) = 3, rescale (λ₂/(λ₂ − λ₃)) = −2 under a square root.
        let expected = TrinomialData::unit(&[5, 3, 2], &[3]).unwrap();
        assert_eq!(ring.data, expected);
        assert!(matches!(
            w.verify(&d, &ring),
            WitnessStatus::Unverified { .. }
        ));

        // With β₃ = 7 the root −2^(1/7) is still irrational; with exponent 1
        // in a larger block an exact slot is used instead.
        let d = TrinomialData::from_blocks(
            vec![vec![5], vec![1], vec![3], vec![2, 1]],
            vec![q(2), q(3)],
        )
        .unwrap();
        let (ring, w) = reduce(&d);
        assert!(is_reduced(&ring.data));
        assert_eq!(w.verify(&d, &ring), WitnessStatus::Verified);
    }

    #[test]
    fn relation_free_data_becomes_polynomial_ring() {
        let d = TrinomialData::from_blocks(vec![vec![4, 2], vec![3]], vec![]).unwrap();
        let (ring, w) = reduce(&d);
        assert_eq!(
            ring,
            ClassifiedRing::new(TrinomialData::polynomial_ring(), 1)
        );
        assert_eq!(w.verify(&d, &ring), WitnessStatus::Verified);
    }
}

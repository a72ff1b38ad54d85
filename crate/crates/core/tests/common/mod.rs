//! Random generators shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trinom::monoid::MonoidSpec;
use trinom::ring::{Monomial, Polynomial};
use trinom::trinomial::TrinomialData;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-9i64..=9);
    }
    BigRational::new(p.into(), rng.gen_range(1i64..=4).into())
}

pub fn distinct_lambdas(rng: &mut impl Rng, k: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(k);
    while out.len() < k {
        let l = random_rational(rng);
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// `count` values in `lo..=hi`, pairwise coprime (1 counts as coprime to
/// everything, including itself).
pub fn coprime_values(rng: &mut impl Rng, count: usize, lo: u64, hi: u64) -> Vec<u64> {
    loop {
        let mut out: Vec<u64> = Vec::with_capacity(count);
        for _ in 0..count {
            let pool: Vec<u64> = (lo..=hi)
                .filter(|v| out.iter().all(|o| o.gcd(v) == 1))
                .collect();
            match pool.choose(rng) {
                Some(&v) => out.push(v),
                None => break,
            }
        }
        if out.len() == count {
            return out;
        }
    }
}

/// Unit-partition data with `r` in `1..=max_r` and exponents up to
/// `max_beta`; exponent 1 (a linear block) only when `allow_linear`.
pub fn random_unit_data(
    rng: &mut impl Rng,
    max_r: usize,
    max_beta: u64,
    allow_linear: bool,
) -> TrinomialData {
    let r = rng.gen_range(1..=max_r);
    let lo = if allow_linear { 1 } else { 2 };
    let beta = coprime_values(rng, r + 1, lo, max_beta);
    let lambda = distinct_lambdas(rng, r - 1);
    TrinomialData::from_blocks(beta.into_iter().map(|b| vec![b]).collect(), lambda)
        .expect("generated data is valid")
}

/// Data with block sizes in `1..=max_block` and exponents in `1..=max_exp`.
pub fn random_data(
    rng: &mut impl Rng,
    max_r: usize,
    max_block: usize,
    max_exp: u64,
) -> TrinomialData {
    loop {
        let r = rng.gen_range(1..=max_r);
        let beta: Vec<Vec<u64>> = (0..=r)
            .map(|_| {
                let size = rng.gen_range(1..=max_block);
                (0..size).map(|_| rng.gen_range(1..=max_exp)).collect()
            })
            .collect();
        let lambda = distinct_lambdas(rng, r - 1);
        if let Ok(d) = TrinomialData::from_blocks(beta, lambda) {
            return d;
        }
    }
}

/// Data containing at least one linear block.
pub fn random_data_with_linear_block(rng: &mut impl Rng) -> TrinomialData {
    loop {
        let d = random_data(rng, 4, 2, 5);
        if (0..=d.r()).any(|i| d.is_linear_block(i)) {
            return d;
        }
    }
}

/// One block of size two, the others of size one.
pub fn random_dim3_data(rng: &mut impl Rng, max_r: usize, max_exp: u64) -> TrinomialData {
    loop {
        let r = rng.gen_range(1..=max_r);
        let double = rng.gen_range(0..=r);
        let beta: Vec<Vec<u64>> = (0..=r)
            .map(|i| {
                let size = if i == double { 2 } else { 1 };
                (0..size).map(|_| rng.gen_range(1..=max_exp)).collect()
            })
            .collect();
        let lambda = distinct_lambdas(rng, r - 1);
        if let Ok(d) = TrinomialData::from_blocks(beta, lambda) {
            return d;
        }
    }
}

pub fn random_monomial(rng: &mut impl Rng, n: usize, max_exp: u32) -> Monomial {
    Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect())
}

pub fn random_polynomial(rng: &mut impl Rng, n: usize, terms: usize, max_exp: u32) -> Polynomial {
    Polynomial::from_terms(
        n,
        (0..terms).map(|_| (random_monomial(rng, n, max_exp), random_rational(rng))),
    )
}

pub fn random_monoid(rng: &mut impl Rng) -> MonoidSpec {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=6);
    let gens: Vec<Vec<BigInt>> = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                .collect()
        })
        .collect();
    MonoidSpec::new(n, gens).expect("generators have the ambient rank")
}

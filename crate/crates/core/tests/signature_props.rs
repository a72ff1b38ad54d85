mod common;

use num_rational::BigRational;
use proptest::prelude::*;
use std::collections::BTreeSet;

use common::*;
use trinom::grading::induced_grading;
use trinom::lattice::rank;
use trinom::monoid::build_order;
use trinom::ring::{enumerate_graded_piece, subalgebra_membership, Monomial, Polynomial};
use trinom::signature::{
    canonical_generator_order, greedy_signature_sequence, verify_signature_criteria,
};
use trinom::trinomial::{reduce, TrinomialData};

fn reduced_data(seed: u64) -> TrinomialData {
    let mut g = rng(seed);
    reduce(&random_data(&mut g, 3, 2, 4)).0.data
}

fn independent(elements: &[Polynomial]) -> bool {
    let monomials: BTreeSet<&Monomial> = elements.iter().flat_map(|p| p.monomials()).collect();
    let rows: Vec<Vec<BigRational>> = elements
        .iter()
        .map(|p| monomials.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    rank(&rows) == elements.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_order_is_a_signature_sequence(seed in any::<u64>()) {
        let d = reduced_data(seed);
        let gm = induced_grading(&d);
        let order = build_order(&gm.monoid()).unwrap();
        let s = canonical_generator_order(&d, &gm, &order).unwrap();
        prop_assert!(s.complete);
        prop_assert_eq!(s.len(), d.n());
        for k in 0..=s.len() {
            prop_assert!(verify_signature_criteria(&s.generators()[..k], &d, &gm, &order).unwrap());
        }
        prop_assert!(independent(&s.elements));
    }

    #[test]
    fn greedy_matches_canonical(seed in any::<u64>()) {
        let d = reduced_data(seed);
        let gm = induced_grading(&d);
        let order = build_order(&gm.monoid()).unwrap();
        let budget: u64 = gm.columns().iter().map(|c| order.weight_of(c)).max().unwrap()
            .try_into().unwrap();
        let s = greedy_signature_sequence(&d, &gm, &order, 2 * d.n(), budget).unwrap();
        let c = canonical_generator_order(&d, &gm, &order).unwrap();
        prop_assert!(s.complete);
        prop_assert_eq!(s.elements.len(), d.n() + 1);
        prop_assert!(independent(&s.elements));
        prop_assert!(verify_signature_criteria(s.generators(), &d, &gm, &order).unwrap());
        // Same degrees, and each element spans the same line as the
        // variable it replaces.
        let mut a = s.degrees.clone();
        let mut b = c.degrees.clone();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        for h in s.generators() {
            prop_assert!(h.len() == 1);
            let m = h.monomials().next().unwrap();
            prop_assert_eq!(m.total_degree(), 1);
        }

        // Every piece of smaller degree than hₖ lies in k[h₁,…,hₖ₋₁].
        let cols = gm.columns();
        for k in 1..s.elements.len() {
            let prior = &s.elements[1..k];
            for total in 1..order.weight_of(&s.degrees[k]).try_into().unwrap() {
                let mut seen = BTreeSet::new();
                for m in monomials_of_weight(&cols, &order.weight().to_vec(), total, d.n()) {
                    let deg = m.degree(&cols);
                    if order.compare(&deg, &s.degrees[k]).is_lt() && seen.insert(deg.clone()) {
                        for std in enumerate_graded_piece(&deg, &gm, &d).unwrap() {
                            let x = Polynomial::from_monomial(std);
                            prop_assert!(subalgebra_membership(&x, prior, &gm, &d).unwrap());
                        }
                    }
                }
            }
        }
    }
}

fn monomials_of_weight(
    cols: &[Vec<num_bigint::BigInt>],
    weight: &[num_bigint::BigInt],
    total: u64,
    n: usize,
) -> Vec<Monomial> {
    let w: Vec<u64> = cols
        .iter()
        .map(|c| {
            let s: num_bigint::BigInt = c.iter().zip(weight).map(|(a, b)| a * b).sum();
            s.try_into().unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn walk(w: &[u64], pos: usize, left: u64, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == w.len() {
            if left == 0 {
                out.push(Monomial::new(e.clone()));
            }
            return;
        }
        for k in 0..=left / w[pos] {
            e[pos] = k as u32;
            walk(w, pos + 1, left - k * w[pos], e, out);
        }
        e[pos] = 0;
    }
    walk(&w, 0, total, &mut e, &mut out);
    out
}

//! Signature sequences of `k[Δ]`.
//!
//! A signature sequence starts with `h₀ = 1` and each further element has
//! least degree among homogeneous elements outside the subalgebra generated
//! by its predecessors. Since the subalgebras here are graded, the check is
//! made piece by piece.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::grading::{check_b0_trivial, GradingMatrix};
use crate::lattice::rref;
use crate::monoid::GroupOrder;
use crate::ring::{
    degree_products, for_each_of_weight, subalgebra_membership, Monomial, Polynomial, RewriteSystem,
};
use crate::trinomial::{is_reduced, TrinomialData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSequence {
    /// `h₀ = 1, h₁, …`
    pub elements: Vec<Polynomial>,
    /// `d₀ = 0, d₁, …`
    pub degrees: Vec<Vec<BigInt>>,
    pub complete: bool,
    pub order: GroupOrder,
}

impl SignatureSequence {
    fn start(nvars: usize, rank: usize, order: GroupOrder) -> Self {
        SignatureSequence {
            elements: vec![Polynomial::one(nvars)],
            degrees: vec![vec![BigInt::zero(); rank]],
            complete: false,
            order,
        }
    }

    /// Number of elements after `h₀`.
    pub fn len(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The elements after `h₀`.
    pub fn generators(&self) -> &[Polynomial] {
        &self.elements[1..]
    }
}

fn degree_of(p: &Polynomial, gm: &GradingMatrix, index: usize) -> Result<Vec<BigInt>, Error> {
    match p.homogeneous_degree(&gm.columns()) {
        Some(Some(d)) => Ok(d),
        Some(None) => Ok(vec![BigInt::zero(); gm.rank()]),
        None => Err(Error::NotHomogeneous { index: Some(index) }),
    }
}

/// Degrees nondecreasing under the order, and no element lies in the
/// subalgebra generated by the ones before it. `gens` excludes `h₀ = 1`.
pub fn verify_signature_criteria(
    gens: &[Polynomial],
    data: &TrinomialData,
    gm: &GradingMatrix,
    order: &GroupOrder,
) -> Result<bool, Error> {
    let degrees = gens
        .iter()
        .enumerate()
        .map(|(i, g)| degree_of(g, gm, i))
        .collect::<Result<Vec<_>, _>>()?;
    if degrees
        .windows(2)
        .any(|w| order.compare(&w[0], &w[1]).is_gt())
    {
        return Ok(false);
    }
    for i in 0..gens.len() {
        if subalgebra_membership(&gens[i], &gens[..i], gm, data)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The variables of reduced data sorted by degree, ties by index.
pub fn canonical_generator_order(
    data: &TrinomialData,
    gm: &GradingMatrix,
    order: &GroupOrder,
) -> Result<SignatureSequence, Error> {
    if !is_reduced(data) {
        return Err(Error::NotReduced);
    }
    let n = data.n();
    let cols = gm.columns();
    let mut vars: Vec<usize> = (0..n).collect();
    vars.sort_by(|&a, &b| order.compare(&cols[a], &cols[b]).then(a.cmp(&b)));
    let mut seq = SignatureSequence::start(n, gm.rank(), order.clone());
    for &v in &vars {
        seq.elements.push(Polynomial::variable(n, v));
        seq.degrees.push(cols[v].clone());
    }
    if !verify_signature_criteria(seq.generators(), data, gm, order)? {
        return Err(Error::Shape(
            "sorted variables fail the signature criteria".into(),
        ));
    }
    seq.complete = true;
    Ok(seq)
}

fn order_weights(gm: &GradingMatrix, order: &GroupOrder) -> Result<Vec<u64>, Error> {
    if order.rank() != gm.rank() {
        return Err(Error::Shape(format!(
            "order has rank {}, grading has rank {}",
            order.rank(),
            gm.rank()
        )));
    }
    gm.columns()
        .iter()
        .map(|c| {
            order
                .weight_of(c)
                .to_u64()
                .filter(|&w| w > 0)
                .ok_or_else(|| {
                    Error::Shape("order weight must be positive on every variable degree".into())
                })
        })
        .collect()
}

/// Builds a signature sequence by walking the degrees in increasing order
/// and adjoining, wherever the current subalgebra misses part of a graded
/// piece, the standard monomial at the first free column of the echelon
/// form, columns taken in lexicographic order with `t₀₁` first. Completeness means every variable lies in the
/// generated subalgebra; if that is not reached within the budgets the
/// partial sequence comes back inside [`Error::BudgetExhausted`].
pub fn greedy_signature_sequence(
    data: &TrinomialData,
    gm: &GradingMatrix,
    order: &GroupOrder,
    step_budget: usize,
    degree_budget: u64,
) -> Result<SignatureSequence, Error> {
    if gm.nvars() != data.n() {
        return Err(Error::VariableCountMismatch {
            expected: data.n(),
            found: gm.nvars(),
        });
    }
    if !check_b0_trivial(gm) {
        return Err(Error::NotPointed);
    }
    let weights = order_weights(gm, order)?;
    let n = data.n();
    let rs = RewriteSystem::new(data);
    let cols = gm.columns();

    // Standard monomials by degree, degrees in increasing order.
    let mut pieces: Vec<(u64, Vec<BigInt>, Vec<Monomial>)> = Vec::new();
    for total in 1..=degree_budget {
        for_each_of_weight(&weights, total, &mut |e| {
            let m = Monomial::new(e.to_vec());
            if !rs.is_standard(&m) {
                return;
            }
            let d = m.degree(&cols);
            match pieces.iter_mut().find(|(_, pd, _)| *pd == d) {
                Some(entry) => entry.2.push(m),
                None => pieces.push((total, d, vec![m])),
            }
        });
    }
    pieces.sort_by(|a, b| order.compare(&a.1, &b.1));

    let mut seq = SignatureSequence::start(n, gm.rank(), order.clone());
    let mut missing: Vec<usize> = (0..n).collect();
    let mut gens: Vec<(Polynomial, Vec<BigInt>, u64)> = Vec::new();

    for (total, degree, mut monomials) in pieces {
        // Lexicographic order with t₀₁ first.
        monomials.sort_by(|a, b| b.cmp(a));
        let mut span = degree_products(&rs, n, &gens, &degree, total);
        loop {
            let rows: Vec<Vec<BigRational>> = span
                .iter()
                .map(|p| monomials.iter().map(|m| p.coefficient(m)).collect())
                .collect();
            let (_, pivots) = rref(&rows);
            if pivots.len() == monomials.len() {
                break;
            }
            if seq.len() >= step_budget {
                return Err(Error::BudgetExhausted(Box::new(seq)));
            }
            let free = (0..monomials.len())
                .find(|c| !pivots.contains(c))
                .expect("rank deficit leaves a free column");
            let h = Polynomial::from_monomial(monomials[free].clone());
            seq.elements.push(h.clone());
            seq.degrees.push(degree.clone());
            gens.push((h.clone(), degree.clone(), total));
            span.push(h);

            let generators: Vec<Polynomial> = seq.generators().to_vec();
            let mut still = Vec::new();
            for &v in &missing {
                let x = Polynomial::variable(n, v);
                if !subalgebra_membership(&x, &generators, gm, data)? {
                    still.push(v);
                }
            }
            missing = still;
            if missing.is_empty() {
                seq.complete = true;
                return Ok(seq);
            }
        }
    }
    Err(Error::BudgetExhausted(Box::new(seq)))
}

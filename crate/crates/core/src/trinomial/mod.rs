//! Trinomial data and the transformations acting on it.
//!
//! Data `Δ` consists of a partition `n = n₀ + ⋯ + n_r` of the variables into
//! blocks, an exponent vector `βᵢ` for each block and scalars `λ₂,…,λ_r`.
//! The ring `k[Δ]` is the polynomial ring in the block variables modulo
//! `T₀^β₀ + λᵢ T₁^β₁ + Tᵢ^βᵢ` for `i = 2..r`. All data-level work is exact
//! over `Q`; scalars that need roots live in [`FormalRadical`] values inside a
//! [`SubstitutionWitness`], and isomorphism answers are meant over an
//! algebraically closed field of characteristic zero.

mod normal;
mod reduce;
mod witness;

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use normal::{
    dim3_normal_form, is_isomorphic_dim2, is_mori_form, linear_forms_pivot, mori_normal_form,
    mori_normal_form_by_moves, Dim3NormalForm, PivotScaling,
};
pub use reduce::reduce;
pub use witness::{FormalRadical, Move, Replay, SubstitutionWitness, VarImage, WitnessStatus};

use crate::lattice::rank;

/// The clause of the data definition a violation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    /// Block structure: at least two blocks, nonempty, sizes match `β`.
    Partition,
    /// Exponents positive and block gcds pairwise coprime.
    Gcd,
    /// Scalars: `r − 1` of them, nonzero, pairwise distinct.
    Lambda,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::Partition => "Δ.1",
            Clause::Gcd => "Δ.2",
            Clause::Lambda => "Δ.3",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Clause::Partition => "partition",
            Clause::Gcd => "gcd",
            Clause::Lambda => "lambda",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub indices: Vec<usize>,
    pub message: String,
}

/// Every violated clause of a candidate data set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl ValidationError {
    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid trinomial data:")?;
        for v in &self.violations {
            write!(
                f,
                " [{} {}] {};",
                v.clause.label(),
                v.clause.name(),
                v.message
            )?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationError {}

/// Checks a raw data set against all three clauses and reports every
/// violation found.
pub fn validate(
    partition: &[usize],
    beta: &[Vec<u64>],
    lambda: &[BigRational],
) -> Result<(), ValidationError> {
    let mut violations = Vec::new();
    let mut push = |clause, indices: Vec<usize>, message: String| {
        violations.push(Violation {
            clause,
            indices,
            message,
        })
    };

    if partition.len() < 2 {
        push(
            Clause::Partition,
            vec![],
            format!("need at least two blocks, got {}", partition.len()),
        );
    }
    if partition.len() != beta.len() {
        push(
            Clause::Partition,
            vec![],
            format!(
                "partition has {} blocks but beta has {}",
                partition.len(),
                beta.len()
            ),
        );
    }
    for (i, &ni) in partition.iter().enumerate() {
        if ni == 0 {
            push(Clause::Partition, vec![i], format!("block {i} is empty"));
        }
        if let Some(b) = beta.get(i) {
            if b.len() != ni {
                push(
                    Clause::Partition,
                    vec![i],
                    format!("block {i} has size {ni} but {} exponents", b.len()),
                );
            }
        }
    }

    for (i, b) in beta.iter().enumerate() {
        for (j, &e) in b.iter().enumerate() {
            if e == 0 {
                push(
                    Clause::Gcd,
                    vec![i, j],
                    format!("exponent β[{i}][{j}] is zero"),
                );
            }
        }
    }
    let gcds: Vec<u64> = beta
        .iter()
        .map(|b| b.iter().fold(0u64, |g, &e| g.gcd(&e)))
        .collect();
    for i in 0..gcds.len() {
        for j in i + 1..gcds.len() {
            if gcds[i] != 0 && gcds[j] != 0 && gcds[i].gcd(&gcds[j]) != 1 {
                push(
                    Clause::Gcd,
                    vec![i, j],
                    format!(
                        "block gcds d{i} = {} and d{j} = {} are not coprime",
                        gcds[i], gcds[j]
                    ),
                );
            }
        }
    }

    let expected = beta.len().saturating_sub(2);
    if lambda.len() != expected {
        push(
            Clause::Lambda,
            vec![],
            format!("expected {expected} scalars, got {}", lambda.len()),
        );
    }
    for (k, l) in lambda.iter().enumerate() {
        if l.is_zero() {
            push(Clause::Lambda, vec![k + 2], format!("λ{} is zero", k + 2));
        }
        for (m, other) in lambda.iter().enumerate().skip(k + 1) {
            if l == other {
                push(
                    Clause::Lambda,
                    vec![k + 2, m + 2],
                    format!("λ{} = λ{} = {l}", k + 2, m + 2),
                );
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(ValidationError { violations })
    }
}

/// Valid trinomial data. Construction validates, so every value of this type
/// satisfies the definition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrinomialData {
    beta: Vec<Vec<u64>>,
    lambda: Vec<BigRational>,
}

impl TrinomialData {
    pub fn new(
        partition: Vec<usize>,
        beta: Vec<Vec<u64>>,
        lambda: Vec<BigRational>,
    ) -> Result<Self, ValidationError> {
        validate(&partition, &beta, &lambda)?;
        Ok(TrinomialData { beta, lambda })
    }

    /// Data whose partition is read off the exponent vectors.
    pub fn from_blocks(
        beta: Vec<Vec<u64>>,
        lambda: Vec<BigRational>,
    ) -> Result<Self, ValidationError> {
        let partition = beta.iter().map(Vec::len).collect();
        TrinomialData::new(partition, beta, lambda)
    }

    /// Unit-partition data `((β₀),…,(β_r); λ)` with integer scalars.
    pub fn unit(beta: &[u64], lambda: &[i64]) -> Result<Self, ValidationError> {
        TrinomialData::from_blocks(
            beta.iter().map(|&b| vec![b]).collect(),
            lambda
                .iter()
                .map(|&l| BigRational::from_integer(l.into()))
                .collect(),
        )
    }

    /// The polynomial-ring data `((1),(1))`.
    pub fn polynomial_ring() -> Self {
        TrinomialData {
            beta: vec![vec![1], vec![1]],
            lambda: vec![],
        }
    }

    /// `r`: the number of blocks minus one.
    pub fn r(&self) -> usize {
        self.beta.len() - 1
    }

    /// `n`: the number of variables.
    pub fn n(&self) -> usize {
        self.beta.iter().map(Vec::len).sum()
    }

    pub fn partition(&self) -> Vec<usize> {
        self.beta.iter().map(Vec::len).collect()
    }

    pub fn beta(&self) -> &[Vec<u64>] {
        &self.beta
    }

    pub fn block(&self, i: usize) -> &[u64] {
        &self.beta[i]
    }

    /// `λ₂,…,λ_r`; `lambda()[k]` is `λ_{k+2}`.
    pub fn lambda(&self) -> &[BigRational] {
        &self.lambda
    }

    /// `λᵢ` for `i ≥ 2`.
    pub fn lambda_of(&self, i: usize) -> &BigRational {
        &self.lambda[i - 2]
    }

    /// `|βᵢ| = Σⱼ βᵢⱼ`.
    pub fn block_degree(&self, i: usize) -> u64 {
        self.beta[i].iter().sum()
    }

    /// `dᵢ = gcd(βᵢ₁,…)`.
    pub fn block_gcd(&self, i: usize) -> u64 {
        self.beta[i].iter().fold(0, |g, &e| g.gcd(&e))
    }

    /// Index of the first variable of each block in block-major order.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.beta.len());
        let mut acc = 0;
        for b in &self.beta {
            offsets.push(acc);
            acc += b.len();
        }
        offsets
    }

    /// Block-major index of `t_{ij}`.
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        self.beta[..i].iter().map(Vec::len).sum::<usize>() + j
    }

    /// Block of each variable.
    pub fn var_blocks(&self) -> Vec<usize> {
        self.beta
            .iter()
            .enumerate()
            .flat_map(|(i, b)| std::iter::repeat(i).take(b.len()))
            .collect()
    }

    pub fn is_unit_partition(&self) -> bool {
        self.beta.iter().all(|b| b.len() == 1)
    }

    /// A block is linear when it is a single variable with exponent one.
    pub fn is_linear_block(&self, i: usize) -> bool {
        self.beta[i] == [1]
    }

    /// Exponent vector of `Tᵢ^βᵢ` over all `n` variables.
    pub fn block_exponents(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.n()];
        let off = self.var_index(i, 0);
        for (j, &b) in self.beta[i].iter().enumerate() {
            e[off + j] = u32::try_from(b).expect("exponent fits in u32");
        }
        e
    }
}

impl fmt::Display for TrinomialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .beta
            .iter()
            .map(|b| {
                let parts: Vec<String> = b.iter().map(u64::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let lambdas: Vec<String> = self.lambda.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}; λ = ({})]", blocks.join(","), lambdas.join(","))
    }
}

/// `k[Δ]^[m]`: trinomial data together with `m` extra free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassifiedRing {
    pub data: TrinomialData,
    pub poly_vars: usize,
}

impl ClassifiedRing {
    pub fn new(data: TrinomialData, poly_vars: usize) -> Self {
        ClassifiedRing { data, poly_vars }
    }

    /// Krull dimension `dim Δ + m`.
    pub fn dimension(&self) -> usize {
        dimension(&self.data) + self.poly_vars
    }
}

/// `n − r + 1`.
pub fn dimension(data: &TrinomialData) -> usize {
    data.n() - data.r() + 1
}

pub fn is_reduced(data: &TrinomialData) -> bool {
    if data.r() == 1 {
        data.beta == [vec![1], vec![1]]
    } else {
        (0..=data.r()).all(|i| data.block_degree(i) >= 2)
    }
}

/// Rank of the Jacobian of the relations at the origin. A partial derivative
/// survives there only for a variable that appears linearly, i.e. the single
/// variable of a linear block.
pub fn jacobian_rank_at_origin(data: &TrinomialData) -> usize {
    let r = data.r();
    if r < 2 {
        return 0;
    }
    let n = data.n();
    let one = BigRational::one();
    let rows: Vec<Vec<BigRational>> = (2..=r)
        .map(|i| {
            let mut row = vec![BigRational::zero(); n];
            if data.is_linear_block(0) {
                row[data.var_index(0, 0)] = one.clone();
            }
            if data.is_linear_block(1) {
                row[data.var_index(1, 0)] = data.lambda_of(i).clone();
            }
            if data.is_linear_block(i) {
                row[data.var_index(i, 0)] = one.clone();
            }
            row
        })
        .collect();
    rank(&rows)
}

/// Dimension of the Zariski tangent space at the origin.
pub fn tangent_dimension(data: &TrinomialData) -> usize {
    data.n() - jacobian_rank_at_origin(data)
}

/// Smooth exactly when the reduced form has no relations left.
pub fn is_smooth(data: &TrinomialData) -> bool {
    reduce(data).0.data.r() == 1
}

pub(crate) fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, |g, v| g.gcd(&v))
}

#[cfg(test)]
pub(crate) fn q(v: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(v))
}

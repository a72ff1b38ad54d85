//! Substitution witnesses: the moves that turn one presentation into another.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ClassifiedRing, TrinomialData};
use crate::ring::{Polynomial, RewriteSystem};

/// `base^(1/root_index)` on a fixed branch. Stored simplified: when the root
/// is an exact rational the value has `root_index = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalRadical {
    base: BigRational,
    root_index: u64,
}

impl FormalRadical {
    /// Panics on a zero base or a zero root index.
    pub fn new(base: BigRational, root_index: u64) -> Self {
        assert!(!base.is_zero(), "radical of zero");
        assert!(root_index >= 1, "root index must be positive");
        match exact_root(&base, root_index) {
            Some(root) => FormalRadical {
                base: root,
                root_index: 1,
            },
            None => FormalRadical { base, root_index },
        }
    }

    pub fn exact(value: BigRational) -> Self {
        FormalRadical::new(value, 1)
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn root_index(&self) -> u64 {
        self.root_index
    }

    pub fn is_exact(&self) -> bool {
        self.root_index == 1
    }

    pub fn is_one(&self) -> bool {
        self.is_exact() && self.base.is_one()
    }

    pub fn value(&self) -> Option<&BigRational> {
        self.is_exact().then_some(&self.base)
    }
}

impl fmt::Display for FormalRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({})^(1/{})", self.base, self.root_index)
        }
    }
}

fn exact_int_root(x: &BigInt, k: u32) -> Option<BigInt> {
    if x.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_int_root(&-x, k).map(|r| -r);
    }
    let r = x.nth_root(k);
    (r.pow(k) == *x).then_some(r)
}

fn exact_root(q: &BigRational, k: u64) -> Option<BigRational> {
    if k == 1 {
        return Some(q.clone());
    }
    let k = u32::try_from(k).ok()?;
    let n = exact_int_root(q.numer(), k)?;
    let d = exact_int_root(q.denom(), k)?;
    Some(BigRational::new(n, d))
}

/// One elementary step. Block and slot indices refer to the presentation
/// current at that point of the replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// New block `k` is old block `order[k]`.
    PermuteBlocks { order: Vec<usize> },
    /// New slot `s` of `block` is old slot `order[s]`.
    ReorderBlock { block: usize, order: Vec<usize> },
    /// Change of the linear forms `u = T₀^β₀`, `v = T₁^β₁`: after the block
    /// permutation preceding it, the new `(u′, v′)` are `matrix · (u, v)`.
    Pivot { matrix: [[BigRational; 2]; 2] },
    /// `t′ = factor · t` for the variable in `slot` of `block`.
    Rescale {
        block: usize,
        slot: usize,
        factor: FormalRadical,
    },
    /// Drop a linear block whose variable equals `substitution` in the
    /// remaining variables (current numbering, eliminated variable included).
    Eliminate {
        block: usize,
        substitution: Polynomial,
    },
    /// Forget a relation-free presentation and regroup its variables: the
    /// flattened variable list is cut into blocks of the given sizes and the
    /// rest become free polynomial variables.
    Regroup { partition: Vec<usize> },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::PermuteBlocks { order } => {
                write!(f, "permute blocks: new block k is old block {order:?}[k]")
            }
            Move::ReorderBlock { block, order } => {
                write!(
                    f,
                    "reorder block {block}: new slot s is old slot {order:?}[s]"
                )
            }
            Move::Pivot { matrix } => write!(
                f,
                "pivot: u' = {}*u + {}*v, v' = {}*u + {}*v",
                matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1]
            ),
            Move::Rescale {
                block,
                slot,
                factor,
            } => write!(
                f,
                "rescale t[{block}][{slot}] -> {factor} * t[{block}][{slot}]"
            ),
            Move::Eliminate {
                block,
                substitution,
            } => write!(f, "eliminate block {block}: t[{block}][0] = {substitution}"),
            Move::Regroup { partition } => {
                write!(f, "regroup variables into blocks {partition:?}, rest free")
            }
        }
    }
}

/// A source variable times a product of radical scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarImage {
    pub source: usize,
    pub factors: Vec<FormalRadical>,
}

impl VarImage {
    fn exact_scalar(&self) -> Option<BigRational> {
        self.factors
            .iter()
            .try_fold(BigRational::one(), |acc, f| f.value().map(|v| acc * v))
    }
}

/// The net variable map of a witness: each variable of the target
/// presentation as a scaled source variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub blocks: Vec<Vec<VarImage>>,
    pub free: Vec<VarImage>,
}

impl Replay {
    /// Target variables in block-major order followed by the free ones.
    pub fn images(&self) -> Vec<&VarImage> {
        self.blocks.iter().flatten().chain(&self.free).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessStatus {
    /// Exact scalars, and every target relation maps into the source ideal.
    Verified,
    /// Some scalar is an irrational radical; the script is for a human or a
    /// computer algebra system.
    Unverified {
        script: String,
    },
    Failed {
        reason: String,
    },
}

/// Ordered list of moves relating two presentations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubstitutionWitness {
    pub moves: Vec<Move>,
}

impl SubstitutionWitness {
    pub fn new() -> Self {
        SubstitutionWitness::default()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.moves.push(m);
    }

    pub fn extend(&mut self, other: SubstitutionWitness) {
        self.moves.extend(other.moves);
    }

    /// True when every rescale factor is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.moves.iter().all(|m| match m {
            Move::Rescale { factor, .. } => factor.is_exact(),
            _ => true,
        })
    }

    pub fn script(&self) -> String {
        self.moves
            .iter()
            .enumerate()
            .map(|(i, m)| format!("{}. {m}\n", i + 1))
            .collect()
    }

    /// Replays the moves starting from a presentation with the given block
    /// sizes and `free` additional variables.
    pub fn replay(&self, partition: &[usize], free: usize) -> Result<Replay, String> {
        let mut next = 0;
        let mut blocks: Vec<Vec<VarImage>> = partition
            .iter()
            .map(|&size| {
                (0..size)
                    .map(|_| {
                        next += 1;
                        VarImage {
                            source: next - 1,
                            factors: vec![],
                        }
                    })
                    .collect()
            })
            .collect();
        let mut free: Vec<VarImage> = (0..free)
            .map(|k| VarImage {
                source: next + k,
                factors: vec![],
            })
            .collect();

        for (step, m) in self.moves.iter().enumerate() {
            let bad = |what: &str| format!("move {}: {what}", step + 1);
            match m {
                Move::PermuteBlocks { order } => {
                    if !is_permutation(order, blocks.len()) {
                        return Err(bad("block order is not a permutation"));
                    }
                    blocks = order.iter().map(|&k| blocks[k].clone()).collect();
                }
                Move::ReorderBlock { block, order } => {
                    let b = blocks.get(*block).ok_or_else(|| bad("no such block"))?;
                    if !is_permutation(order, b.len()) {
                        return Err(bad("slot order is not a permutation"));
                    }
                    blocks[*block] = order.iter().map(|&s| b[s].clone()).collect();
                }
                Move::Pivot { .. } => {}
                Move::Rescale {
                    block,
                    slot,
                    factor,
                } => {
                    let v = blocks
                        .get_mut(*block)
                        .and_then(|b| b.get_mut(*slot))
                        .ok_or_else(|| bad("no such variable"))?;
                    if !factor.is_one() {
                        v.factors.push(factor.clone());
                    }
                }
                Move::Eliminate { block, .. } => {
                    if *block >= blocks.len() {
                        return Err(bad("no such block"));
                    }
                    blocks.remove(*block);
                }
                Move::Regroup { partition } => {
                    let mut all: Vec<VarImage> = blocks.drain(..).flatten().collect();
                    all.append(&mut free);
                    if partition.iter().sum::<usize>() > all.len() {
                        return Err(bad("regroup needs more variables than exist"));
                    }
                    let mut rest = all.into_iter();
                    blocks = partition
                        .iter()
                        .map(|&size| rest.by_ref().take(size).collect())
                        .collect();
                    free = rest.collect();
                }
            }
        }
        Ok(Replay { blocks, free })
    }

    /// Checks that substituting the replayed variable images into the
    /// relations of `target` gives zero in `k[source]`.
    pub fn verify(&self, source: &TrinomialData, target: &ClassifiedRing) -> WitnessStatus {
        let replay = match self.replay(&source.partition(), 0) {
            Ok(r) => r,
            Err(reason) => return WitnessStatus::Failed { reason },
        };
        let sizes: Vec<usize> = replay.blocks.iter().map(Vec::len).collect();
        if sizes != target.data.partition() || replay.free.len() != target.poly_vars {
            return WitnessStatus::Failed {
                reason: format!(
                    "replay yields blocks {sizes:?} with {} free variables, target has {:?} with {}",
                    replay.free.len(),
                    target.data.partition(),
                    target.poly_vars
                ),
            };
        }
        let images = replay.images();
        let mut seen = vec![false; source.n()];
        for img in &images {
            if std::mem::replace(&mut seen[img.source], true) {
                return WitnessStatus::Failed {
                    reason: format!("source variable {} used twice", img.source),
                };
            }
        }
        let Some(scalars) = images
            .iter()
            .map(|img| img.exact_scalar())
            .collect::<Option<Vec<_>>>()
        else {
            return WitnessStatus::Unverified {
                script: self.script(),
            };
        };

        let n = source.n();
        let mut subst: Vec<Polynomial> = images
            .iter()
            .zip(&scalars)
            .map(|(img, c)| Polynomial::variable(n, img.source).scale(c))
            .collect();
        // Relations only involve the block variables.
        subst.truncate(target.data.n());
        let src_ring = RewriteSystem::new(source);
        let tgt_ring = RewriteSystem::new(&target.data);
        for (i, rel) in tgt_ring.relations().iter().enumerate() {
            let image = rel.substitute(&subst);
            let nf = src_ring
                .normal_form(&image)
                .expect("variable count matches");
            if !nf.is_zero() {
                return WitnessStatus::Failed {
                    reason: format!("relation {} maps to {nf} in the source ring", i + 2),
                };
            }
        }
        WitnessStatus::Verified
    }
}

fn is_permutation(order: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    order.len() == len
        && order
            .iter()
            .all(|&k| k < len && !std::mem::replace(&mut seen[k], true))
}

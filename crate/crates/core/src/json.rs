//! JSON encodings of the library types.
//!
//! Rationals travel as strings `"p/q"` (integers as `"p"`); integers as JSON
//! numbers, or as decimal strings when they exceed 64 bits. Parsing accepts
//! both forms of each.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::Error;
use crate::grading::GradingMatrix;
use crate::lattice::IntMatrix;
use crate::monoid::{GroupOrder, MaximalSubgroup, MonoidSpec, PositiveBasis, UnmixedCertificate};
use crate::ring::{Monomial, Polynomial};
use crate::signature::SignatureSequence;
use crate::trinomial::{
    ClassifiedRing, FormalRadical, Move, SubstitutionWitness, TrinomialData, ValidationError,
};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Malformed(e.to_string())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| format!("bad rational {s:?}"))?;
    let d = BigInt::from_str(den).map_err(|_| format!("bad rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An exact rational as a JSON string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub BigRational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => parse_rational(&s)
                .map(JsonRational)
                .map_err(D::Error::custom),
            Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string())
                .map(JsonRational)
                .map_err(D::Error::custom),
            other => Err(D::Error::custom(format!(
                "expected a rational, got {other}"
            ))),
        }
    }
}

/// An arbitrary-precision integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) if n.is_i64() || n.is_u64() => BigInt::from_str(&n.to_string())
                .map(JsonInt)
                .map_err(D::Error::custom),
            Value::String(s) => BigInt::from_str(s.trim())
                .map(JsonInt)
                .map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
            other => Err(D::Error::custom(format!(
                "expected an integer, got {other}"
            ))),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn unints(v: Vec<JsonInt>) -> Vec<BigInt> {
    v.into_iter().map(|x| x.0).collect()
}

fn int_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<JsonInt>> {
    rows.iter().map(|r| ints(r)).collect()
}

fn unint_rows(rows: Vec<Vec<JsonInt>>) -> Vec<Vec<BigInt>> {
    rows.into_iter().map(unints).collect()
}

pub fn int_vector_from_str(s: &str) -> Result<Vec<BigInt>, JsonError> {
    let v: Vec<JsonInt> = serde_json::from_str(s)?;
    Ok(unints(v))
}

pub fn int_vector_to_value(v: &[BigInt]) -> Value {
    serde_json::to_value(ints(v)).expect("serializable")
}

// Trinomial data

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DataDto {
    partition: Vec<usize>,
    beta: Vec<Vec<u64>>,
    lambda: Vec<JsonRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poly_vars: Option<usize>,
}

fn data_dto(data: &TrinomialData, poly_vars: Option<usize>) -> DataDto {
    DataDto {
        partition: data.partition(),
        beta: data.beta().to_vec(),
        lambda: data.lambda().iter().cloned().map(JsonRational).collect(),
        poly_vars,
    }
}

pub fn data_to_value(data: &TrinomialData) -> Value {
    serde_json::to_value(data_dto(data, None)).expect("serializable")
}

pub fn ring_to_value(ring: &ClassifiedRing) -> Value {
    serde_json::to_value(data_dto(&ring.data, Some(ring.poly_vars))).expect("serializable")
}

/// Parses trinomial data; a `poly_vars` field is accepted and returned.
pub fn ring_from_value(v: Value) -> Result<ClassifiedRing, JsonError> {
    let dto: DataDto = serde_json::from_value(v)?;
    let lambda = dto.lambda.into_iter().map(|q| q.0).collect();
    let data = TrinomialData::new(dto.partition, dto.beta, lambda)?;
    Ok(ClassifiedRing::new(data, dto.poly_vars.unwrap_or(0)))
}

pub fn data_from_value(v: Value) -> Result<TrinomialData, JsonError> {
    Ok(ring_from_value(v)?.data)
}

// Polynomials

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDto {
    coeff: JsonRational,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDto {
    vars: usize,
    terms: Vec<TermDto>,
}

fn poly_dto(p: &Polynomial) -> PolyDto {
    let mut terms: Vec<(&Monomial, &BigRational)> = p.terms().collect();
    // Canonical order: total degree descending, then lexicographic descending.
    terms.sort_by(|a, b| {
        b.0.total_degree()
            .cmp(&a.0.total_degree())
            .then_with(|| b.0.cmp(a.0))
    });
    PolyDto {
        vars: p.nvars(),
        terms: terms
            .into_iter()
            .map(|(m, c)| TermDto {
                coeff: JsonRational(c.clone()),
                exp: m.exponents().to_vec(),
            })
            .collect(),
    }
}

fn poly_from_dto(dto: PolyDto) -> Result<Polynomial, JsonError> {
    let mut p = Polynomial::zero(dto.vars);
    for t in dto.terms {
        if t.exp.len() != dto.vars {
            return Err(JsonError::Malformed(format!(
                "term exponent has length {}, expected {}",
                t.exp.len(),
                dto.vars
            )));
        }
        p.add_term(Monomial::new(t.exp), t.coeff.0);
    }
    Ok(p)
}

pub fn polynomial_to_value(p: &Polynomial) -> Value {
    serde_json::to_value(poly_dto(p)).expect("serializable")
}

pub fn polynomial_from_value(v: Value) -> Result<Polynomial, JsonError> {
    poly_from_dto(serde_json::from_value(v)?)
}

/// A single polynomial or a list of them.
pub fn polynomials_from_value(v: Value) -> Result<Vec<Polynomial>, JsonError> {
    match v {
        Value::Array(items) => items.into_iter().map(polynomial_from_value).collect(),
        other => Ok(vec![polynomial_from_value(other)?]),
    }
}

// Gradings

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingDto {
    rank: usize,
    /// One column per variable.
    degrees: Vec<Vec<JsonInt>>,
}

pub fn grading_to_value(gm: &GradingMatrix) -> Value {
    serde_json::to_value(GradingDto {
        rank: gm.rank(),
        degrees: int_rows(&gm.columns()),
    })
    .expect("serializable")
}

pub fn grading_from_value(v: Value) -> Result<GradingMatrix, JsonError> {
    let dto: GradingDto = serde_json::from_value(v)?;
    let cols = unint_rows(dto.degrees);
    if cols.iter().any(|c| c.len() != dto.rank) {
        return Err(JsonError::Malformed(format!(
            "every degree column must have {} entries",
            dto.rank
        )));
    }
    Ok(GradingMatrix::from_columns(dto.rank, &cols)?)
}

// Monoids

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidDto {
    ambient_rank: usize,
    generators: Vec<Vec<JsonInt>>,
}

pub fn monoid_to_value(m: &MonoidSpec) -> Value {
    serde_json::to_value(MonoidDto {
        ambient_rank: m.ambient_rank(),
        generators: int_rows(m.generators()),
    })
    .expect("serializable")
}

pub fn monoid_from_value(v: Value) -> Result<MonoidSpec, JsonError> {
    let dto: MonoidDto = serde_json::from_value(v)?;
    Ok(MonoidSpec::new(
        dto.ambient_rank,
        unint_rows(dto.generators),
    )?)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum CertificateDto {
    PositiveFunctional { functional: Vec<JsonInt> },
    NullRelation { relation: Vec<JsonInt> },
}

pub fn certificate_to_value(c: &UnmixedCertificate) -> Value {
    let dto = match c {
        UnmixedCertificate::PositiveFunctional(f) => CertificateDto::PositiveFunctional {
            functional: ints(f),
        },
        UnmixedCertificate::NullRelation(r) => CertificateDto::NullRelation { relation: ints(r) },
    };
    serde_json::to_value(dto).expect("serializable")
}

pub fn certificate_from_value(v: Value) -> Result<UnmixedCertificate, JsonError> {
    Ok(match serde_json::from_value(v)? {
        CertificateDto::PositiveFunctional { functional } => {
            UnmixedCertificate::PositiveFunctional(unints(functional))
        }
        CertificateDto::NullRelation { relation } => {
            UnmixedCertificate::NullRelation(unints(relation))
        }
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDto {
    basis: Vec<Vec<JsonInt>>,
    coordinates: Vec<Vec<JsonInt>>,
}

pub fn positive_basis_to_value(b: &PositiveBasis) -> Value {
    serde_json::to_value(BasisDto {
        basis: int_rows(&b.basis),
        coordinates: int_rows(&b.coordinates),
    })
    .expect("serializable")
}

pub fn positive_basis_from_value(v: Value) -> Result<PositiveBasis, JsonError> {
    let dto: BasisDto = serde_json::from_value(v)?;
    Ok(PositiveBasis {
        basis: unint_rows(dto.basis),
        coordinates: unint_rows(dto.coordinates),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderDto {
    weight: Vec<JsonInt>,
    tiebreak: Vec<usize>,
}

pub fn order_to_value(o: &GroupOrder) -> Value {
    serde_json::to_value(OrderDto {
        weight: ints(o.weight()),
        tiebreak: o.tiebreak().to_vec(),
    })
    .expect("serializable")
}

pub fn order_from_value(v: Value) -> Result<GroupOrder, JsonError> {
    let dto: OrderDto = serde_json::from_value(v)?;
    Ok(GroupOrder::new(unints(dto.weight), dto.tiebreak)?)
}

pub fn maximal_subgroup_to_value(m: &MaximalSubgroup) -> Value {
    serde_json::json!({
        "units": m.units,
        "witnesses": m.witnesses.iter().map(|w| serde_json::json!({
            "generator": w.generator,
            "negation": ints(&w.negation),
        })).collect::<Vec<_>>(),
        "basis": int_rows(&m.basis.to_rows()),
        "group_basis": int_rows(&m.group_basis.to_rows()),
        "invariant_factors": ints(&m.invariant_factors),
        "torsion_free": m.torsion_free,
    })
}

// Witnesses

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RadicalDto {
    base: JsonRational,
    root_index: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case", deny_unknown_fields)]
enum MoveDto {
    PermuteBlocks {
        order: Vec<usize>,
    },
    ReorderBlock {
        block: usize,
        order: Vec<usize>,
    },
    Pivot {
        matrix: [[JsonRational; 2]; 2],
    },
    Rescale {
        block: usize,
        slot: usize,
        factor: RadicalDto,
    },
    Eliminate {
        block: usize,
        substitution: PolyDto,
    },
    Regroup {
        partition: Vec<usize>,
    },
}

fn move_dto(m: &Move) -> MoveDto {
    let jr = |q: &BigRational| JsonRational(q.clone());
    match m {
        Move::PermuteBlocks { order } => MoveDto::PermuteBlocks {
            order: order.clone(),
        },
        Move::ReorderBlock { block, order } => MoveDto::ReorderBlock {
            block: *block,
            order: order.clone(),
        },
        Move::Pivot { matrix } => MoveDto::Pivot {
            matrix: [
                [jr(&matrix[0][0]), jr(&matrix[0][1])],
                [jr(&matrix[1][0]), jr(&matrix[1][1])],
            ],
        },
        Move::Rescale {
            block,
            slot,
            factor,
        } => MoveDto::Rescale {
            block: *block,
            slot: *slot,
            factor: RadicalDto {
                base: jr(factor.base()),
                root_index: factor.root_index(),
            },
        },
        Move::Eliminate {
            block,
            substitution,
        } => MoveDto::Eliminate {
            block: *block,
            substitution: poly_dto(substitution),
        },
        Move::Regroup { partition } => MoveDto::Regroup {
            partition: partition.clone(),
        },
    }
}

fn move_from_dto(dto: MoveDto) -> Result<Move, JsonError> {
    Ok(match dto {
        MoveDto::PermuteBlocks { order } => Move::PermuteBlocks { order },
        MoveDto::ReorderBlock { block, order } => Move::ReorderBlock { block, order },
        MoveDto::Pivot { matrix } => {
            let [[a, b], [c, d]] = matrix;
            Move::Pivot {
                matrix: [[a.0, b.0], [c.0, d.0]],
            }
        }
        MoveDto::Rescale {
            block,
            slot,
            factor,
        } => {
            if factor.base.0.is_zero() || factor.root_index == 0 {
                return Err(JsonError::Malformed(
                    "radical needs a nonzero base and a positive index".into(),
                ));
            }
            Move::Rescale {
                block,
                slot,
                factor: FormalRadical::new(factor.base.0, factor.root_index),
            }
        }
        MoveDto::Eliminate {
            block,
            substitution,
        } => Move::Eliminate {
            block,
            substitution: poly_from_dto(substitution)?,
        },
        MoveDto::Regroup { partition } => Move::Regroup { partition },
    })
}

pub fn witness_to_value(w: &SubstitutionWitness) -> Value {
    serde_json::to_value(w.moves.iter().map(move_dto).collect::<Vec<_>>()).expect("serializable")
}

pub fn witness_from_value(v: Value) -> Result<SubstitutionWitness, JsonError> {
    let dtos: Vec<MoveDto> = serde_json::from_value(v)?;
    Ok(SubstitutionWitness {
        moves: dtos
            .into_iter()
            .map(move_from_dto)
            .collect::<Result<_, _>>()?,
    })
}

// Signature sequences

pub fn signature_to_value(s: &SignatureSequence) -> Value {
    serde_json::json!({
        "elements": s.elements.iter().map(polynomial_to_value).collect::<Vec<_>>(),
        "degrees": int_rows(&s.degrees),
        "complete": s.complete,
        "order": order_to_value(&s.order),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureDto {
    elements: Vec<Value>,
    degrees: Vec<Vec<JsonInt>>,
    complete: bool,
    order: Value,
}

pub fn signature_from_value(v: Value) -> Result<SignatureSequence, JsonError> {
    let dto: SignatureDto = serde_json::from_value(v)?;
    Ok(SignatureSequence {
        elements: dto
            .elements
            .into_iter()
            .map(polynomial_from_value)
            .collect::<Result<_, _>>()?,
        degrees: unint_rows(dto.degrees),
        complete: dto.complete,
        order: order_from_value(dto.order)?,
    })
}

pub fn int_matrix_to_value(m: &IntMatrix) -> Value {
    serde_json::to_value(int_rows(&m.to_rows())).expect("serializable")
}

//! `trinom`: JSON front end for the trinom library.
//!
//! Every subcommand reads JSON files and prints one JSON object on standard
//! output with the answer under `"result"`. Inputs may also be such an
//! output object, in which case its `"result"` field is read. Exit status:
//! 0 on an answer (including a false one), 1 when the operation fails on
//! well-formed input, 2 when the input is malformed or invalid.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trinom::grading::{
    check_b0_trivial, check_effective, check_unmixed_grading, induced_grading, GradingMatrix,
};
use trinom::json::{self as tj, JsonError};
use trinom::monoid::{build_order, is_unmixed, maximal_subgroup, positive_basis, GroupOrder};
use trinom::ring::{enumerate_graded_piece, subalgebra_membership, RewriteSystem};
use trinom::signature::{canonical_generator_order, greedy_signature_sequence};
use trinom::trinomial::{
    dim3_normal_form, dimension, is_isomorphic_dim2, is_smooth, jacobian_rank_at_origin,
    mori_normal_form, reduce, tangent_dimension, ClassifiedRing, Dim3NormalForm, TrinomialData,
    ValidationError, WitnessStatus,
};
use trinom::Error;

#[derive(Parser)]
#[command(name = "trinom", version, about = "Trinomial data and the rings k[Δ]")]
struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check trinomial data against the definition.
    Validate { data: PathBuf },
    /// Krull dimension of k[Δ].
    Dim { data: PathBuf },
    /// Eliminate linear blocks; prints the reduced ring and the substitution.
    Reduce { data: PathBuf },
    /// Mori form of unit-partition data.
    Mori { data: PathBuf },
    /// Whether two unit-partition data sets present isomorphic rings.
    Iso { a: PathBuf, b: PathBuf },
    /// Normal form of data with exactly one block of size two.
    Dim3 { data: PathBuf },
    /// Tangent space dimension at the origin.
    Tangent { data: PathBuf },
    /// Whether k[Δ] is a polynomial ring.
    Smooth { data: PathBuf },
    /// The induced grading and its structural checks.
    Grading { data: PathBuf },
    /// Check a substitution witness from SOURCE to the ring in TARGET.
    Witness {
        source: PathBuf,
        witness: PathBuf,
        #[arg(long, value_name = "PATH")]
        target: PathBuf,
    },
    /// Normal form of a polynomial modulo the relations.
    Nf { data: PathBuf, polynomial: PathBuf },
    /// Standard monomials of one degree.
    Piece {
        data: PathBuf,
        /// Degree as a JSON integer vector, e.g. `[30]`.
        #[arg(long, value_name = "JSON")]
        degree: String,
        #[arg(long, value_name = "PATH")]
        grading: Option<PathBuf>,
    },
    /// Whether a homogeneous element lies in the subalgebra of GENERATORS.
    Member {
        data: PathBuf,
        element: PathBuf,
        generators: PathBuf,
        #[arg(long, value_name = "PATH")]
        grading: Option<PathBuf>,
    },
    /// Signature sequence: sorted variables, or the greedy construction.
    Sigseq {
        data: PathBuf,
        #[arg(long)]
        greedy: bool,
        #[arg(long, default_value_t = 32)]
        step_budget: usize,
        #[arg(long, default_value_t = 1024)]
        degree_budget: u64,
        #[arg(long, value_name = "PATH")]
        grading: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        order: Option<PathBuf>,
    },
    /// Questions about a finitely generated submonoid of Zⁿ.
    Monoid {
        #[arg(value_enum)]
        query: MonoidQuery,
        monoid: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MonoidQuery {
    Unmixed,
    Basis,
    Order,
    Units,
}

/// A failed run: exit status and the error object.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn new(code: u8, kind: &str, message: impl Into<String>) -> Self {
        Failure {
            code,
            body: json!({ "kind": kind, "message": message.into() }),
        }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.body[key] = value;
        self
    }
}

fn invalid(e: &ValidationError) -> Failure {
    let violations: Vec<Value> = e
        .violations
        .iter()
        .map(|v| {
            json!({
                "clause": v.clause.label(),
                "name": v.clause.name(),
                "indices": v.indices,
                "message": v.message,
            })
        })
        .collect();
    Failure::new(2, "invalid", e.to_string()).with("violations", Value::Array(violations))
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Malformed(m) => Failure::new(2, "malformed", m),
            JsonError::Invalid(v) => invalid(&v),
            JsonError::Domain(Error::Invalid(v)) => invalid(&v),
            JsonError::Domain(e) => Failure::new(2, "invalid", e.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Invalid(v) => invalid(&v),
            Error::Shape(_) | Error::VariableCountMismatch { .. } | Error::InvalidTarget(_) => {
                Failure::new(2, "malformed", message)
            }
            Error::NotUnmixed { relation } => Failure::new(1, "not_unmixed", message)
                .with("relation", tj::int_vector_to_value(&relation)),
            Error::BudgetExhausted(partial) => Failure::new(1, "budget_exhausted", message)
                .with("partial", tj::signature_to_value(&partial)),
            Error::NotUnitPartition => Failure::new(1, "not_unit_partition", message),
            Error::NotDimensionThree { .. } => Failure::new(1, "not_dimension_three", message),
            Error::NotReduced => Failure::new(1, "not_reduced", message),
            Error::NotPointed => Failure::new(1, "not_pointed", message),
            Error::NotHomogeneous { .. } => Failure::new(1, "not_homogeneous", message),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(2, "io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(2, "malformed", format!("{}: {e}", path.display())))
}

/// The file's JSON, or its `key` field when it is an object carrying one.
fn read_payload(path: &Path, key: &str) -> Result<Value, Failure> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.as_object_mut().and_then(|o| o.remove(key)) {
        return Ok(inner);
    }
    Ok(v)
}

fn read_ring(path: &Path) -> Result<ClassifiedRing, Failure> {
    Ok(tj::ring_from_value(read_payload(path, "result")?)?)
}

fn read_data(path: &Path) -> Result<TrinomialData, Failure> {
    Ok(read_ring(path)?.data)
}

fn read_grading(path: Option<&PathBuf>, data: &TrinomialData) -> Result<GradingMatrix, Failure> {
    match path {
        Some(p) => Ok(tj::grading_from_value(read_payload(p, "result")?)?),
        None => Ok(induced_grading(data)),
    }
}

fn result(v: impl Into<Value>) -> Value {
    json!({ "result": v.into() })
}

fn status_fields(status: &WitnessStatus) -> Value {
    match status {
        WitnessStatus::Verified => json!({ "status": "verified" }),
        WitnessStatus::Unverified { script } => json!({ "status": "unverified", "script": script }),
        WitnessStatus::Failed { reason } => json!({ "status": "failed", "reason": reason }),
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn dim3_value(nf: &Dim3NormalForm) -> Value {
    let (c, d) = nf.last_block();
    json!({
        "result": tj::data_to_value(&nf.data),
        "witness": tj::witness_to_value(&nf.witness),
        "last_block": [c, d],
        "gcd": nf.gcd_condition(),
        "note": Dim3NormalForm::NOTE,
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { data } => {
            read_data(&data)?;
            Ok(result(true))
        }
        Command::Dim { data } => Ok(result(dimension(&read_data(&data)?))),
        Command::Reduce { data } => {
            let source = read_data(&data)?;
            let (ring, witness) = reduce(&source);
            let status = witness.verify(&source, &ring);
            Ok(merge(
                json!({
                    "result": tj::ring_to_value(&ring),
                    "witness": tj::witness_to_value(&witness),
                }),
                status_fields(&status),
            ))
        }
        Command::Mori { data } => {
            let (out, witness) = mori_normal_form(&read_data(&data)?)?;
            Ok(json!({
                "result": tj::data_to_value(&out),
                "witness": tj::witness_to_value(&witness),
            }))
        }
        Command::Iso { a, b } => Ok(result(is_isomorphic_dim2(
            &read_data(&a)?,
            &read_data(&b)?,
        )?)),
        Command::Dim3 { data } => Ok(dim3_value(&dim3_normal_form(&read_data(&data)?)?)),
        Command::Tangent { data } => {
            let d = read_data(&data)?;
            Ok(json!({
                "result": tangent_dimension(&d),
                "jacobian_rank": jacobian_rank_at_origin(&d),
                "variables": d.n(),
            }))
        }
        Command::Smooth { data } => Ok(result(is_smooth(&read_data(&data)?))),
        Command::Grading { data } => {
            let gm = induced_grading(&read_data(&data)?);
            let (unmixed, certificate) = check_unmixed_grading(&gm);
            Ok(json!({
                "result": tj::grading_to_value(&gm),
                "effective": check_effective(&gm),
                "unmixed": unmixed,
                "certificate": tj::certificate_to_value(&certificate),
                "b0_trivial": check_b0_trivial(&gm),
            }))
        }
        Command::Witness {
            source,
            witness,
            target,
        } => {
            let source = read_data(&source)?;
            let target = read_ring(&target)?;
            let witness = tj::witness_from_value(read_payload(&witness, "witness")?)?;
            let status = witness.verify(&source, &target);
            let verified = matches!(status, WitnessStatus::Verified);
            Ok(merge(result(verified), status_fields(&status)))
        }
        Command::Nf { data, polynomial } => {
            let d = read_data(&data)?;
            let p = tj::polynomial_from_value(read_payload(&polynomial, "result")?)?;
            let nf = RewriteSystem::new(&d).normal_form(&p)?;
            Ok(result(tj::polynomial_to_value(&nf)))
        }
        Command::Piece {
            data,
            degree,
            grading,
        } => {
            let d = read_data(&data)?;
            let gm = read_grading(grading.as_ref(), &d)?;
            let g = tj::int_vector_from_str(&degree)?;
            let piece = enumerate_graded_piece(&g, &gm, &d)?;
            let monomials: Vec<Value> = piece.iter().map(|m| json!(m.exponents())).collect();
            Ok(json!({ "result": monomials, "dimension": piece.len() }))
        }
        Command::Member {
            data,
            element,
            generators,
            grading,
        } => {
            let d = read_data(&data)?;
            let gm = read_grading(grading.as_ref(), &d)?;
            let x = tj::polynomial_from_value(read_payload(&element, "result")?)?;
            let gens = tj::polynomials_from_value(read_payload(&generators, "result")?)?;
            Ok(result(subalgebra_membership(&x, &gens, &gm, &d)?))
        }
        Command::Sigseq {
            data,
            greedy,
            step_budget,
            degree_budget,
            grading,
            order,
        } => {
            let d = read_data(&data)?;
            let gm = read_grading(grading.as_ref(), &d)?;
            let order: GroupOrder = match order {
                Some(p) => tj::order_from_value(read_payload(&p, "result")?)?,
                None => build_order(&gm.monoid())?,
            };
            let seq = if greedy {
                greedy_signature_sequence(&d, &gm, &order, step_budget, degree_budget)?
            } else {
                canonical_generator_order(&d, &gm, &order)?
            };
            Ok(result(tj::signature_to_value(&seq)))
        }
        Command::Monoid { query, monoid } => {
            let m = tj::monoid_from_value(read_payload(&monoid, "result")?)?;
            match query {
                MonoidQuery::Unmixed => {
                    let (ok, certificate) = is_unmixed(&m);
                    Ok(json!({
                        "result": ok,
                        "certificate": tj::certificate_to_value(&certificate),
                    }))
                }
                MonoidQuery::Basis => Ok(result(tj::positive_basis_to_value(&positive_basis(&m)?))),
                MonoidQuery::Order => Ok(result(tj::order_to_value(&build_order(&m)?))),
                MonoidQuery::Units => {
                    Ok(result(tj::maximal_subgroup_to_value(&maximal_subgroup(&m))))
                }
            }
        }
    }
}

fn emit(value: &Value, output: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(value) => match emit(&value, cli.output.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("trinom: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(failure) => {
            eprintln!(
                "trinom: {}",
                failure.body["message"].as_str().unwrap_or("error")
            );
            let _ = emit(&json!({ "error": failure.body }), None);
            ExitCode::from(failure.code)
        }
    }
}

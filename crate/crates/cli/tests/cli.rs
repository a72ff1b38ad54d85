use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;
use trinom::json as tj;

const DELTA0: &str = r#"{"partition":[1,1,1],"beta":[[5],[3],[2]],"lambda":["1"]}"#;

struct Workdir {
    dir: TempDir,
}

impl Workdir {
    fn new() -> Self {
        Workdir {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn trinom<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_trinom"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn ok(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    if out.stdout.is_empty() {
        return Value::Null;
    }
    stdout_json(out)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn dimension_of_delta0() {
    let w = Workdir::new();
    let d = w.file("d0.json", DELTA0);
    let out = trinom(["dim", p(&d)]);
    assert_eq!(ok(&out), json!({ "result": 2 }));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"result\":2}\n");
}

#[test]
fn duplicate_lambda_names_the_clause() {
    let w = Workdir::new();
    let bad = w.file(
        "bad.json",
        r#"{"partition":[1,1,1,1],"beta":[[2],[3],[5],[7]],"lambda":["1","1"]}"#,
    );
    let out = trinom(["validate", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stdout_json(&out);
    assert_eq!(err["error"]["kind"], "invalid");
    assert_eq!(err["error"]["violations"][0]["clause"], "Δ.3");
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_input_exits_two() {
    let w = Workdir::new();
    let junk = w.file("junk.json", "{ not json");
    assert_eq!(trinom(["dim", p(&junk)]).status.code(), Some(2));
    let wrong = w.file("wrong.json", r#"{"partition":[1,1],"beta":[[2],[3]]}"#);
    assert_eq!(trinom(["dim", p(&wrong)]).status.code(), Some(2));
    let d = w.file("d0.json", DELTA0);
    assert_eq!(trinom(["dim", p(&d), "--bogus"]).status.code(), Some(2));
    assert_eq!(
        trinom(["piece", p(&d), "--degree", "[1,2]"]).status.code(),
        Some(2)
    );
}

#[test]
fn isomorphism_of_permuted_delta0() {
    let w = Workdir::new();
    let a = w.file("a.json", DELTA0);
    let b = w.file(
        "b.json",
        r#"{"partition":[1,1,1],"beta":[[5],[2],[3]],"lambda":["-7/2"]}"#,
    );
    assert_eq!(
        ok(&trinom(["iso", p(&a), p(&b)])),
        json!({ "result": true })
    );
    let c = w.file(
        "c.json",
        r#"{"partition":[1,1,1],"beta":[[7],[3],[2]],"lambda":["1"]}"#,
    );
    assert_eq!(
        ok(&trinom(["iso", p(&a), p(&c)])),
        json!({ "result": false })
    );
}

#[test]
fn predicates_answer_false_with_exit_zero() {
    let w = Workdir::new();
    let d = w.file("d0.json", DELTA0);
    assert_eq!(ok(&trinom(["smooth", p(&d)])), json!({ "result": false }));
    let mixed = w.file("m.json", r#"{"ambient_rank":1,"generators":[[1],[-1]]}"#);
    let out = ok(&trinom(["monoid", "unmixed", p(&mixed)]));
    assert_eq!(out["result"], false);
    assert_eq!(out["certificate"]["kind"], "null_relation");
}

#[test]
fn structural_failures_exit_one() {
    let w = Workdir::new();
    let mixed = w.file("m.json", r#"{"ambient_rank":1,"generators":[[1],[-1]]}"#);
    let out = trinom(["monoid", "basis", p(&mixed)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"]["kind"], "not_unmixed");

    let linear = w.file(
        "lin.json",
        r#"{"partition":[1,1,1],"beta":[[1],[3],[5]],"lambda":["1"]}"#,
    );
    let out = trinom(["sigseq", p(&linear)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"]["kind"], "not_reduced");

    let two = w.file(
        "two.json",
        r#"{"partition":[2,1,1],"beta":[[1,1],[3],[5]],"lambda":["1"]}"#,
    );
    assert_eq!(trinom(["mori", p(&two)]).status.code(), Some(1));
}

#[test]
fn exhausted_budget_reports_the_partial_sequence() {
    let w = Workdir::new();
    let d = w.file("d0.json", DELTA0);
    let out = trinom(["sigseq", p(&d), "--greedy", "--step-budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stdout_json(&out);
    assert_eq!(err["error"]["kind"], "budget_exhausted");
    let partial = tj::signature_from_value(err["error"]["partial"].clone()).unwrap();
    assert!(!partial.complete);
}

#[test]
fn delta0_pipeline() {
    let w = Workdir::new();
    let d = w.file("d0.json", DELTA0);
    let tangent = ok(&trinom(["tangent", p(&d)]));
    assert_eq!(tangent["result"], 3);
    assert_eq!(tangent["jacobian_rank"], 0);

    let grading = ok(&trinom(["grading", p(&d)]));
    assert_eq!(grading["result"]["degrees"], json!([[6], [10], [15]]));
    assert_eq!(grading["effective"], true);
    assert_eq!(grading["b0_trivial"], true);

    let seq = ok(&trinom(["sigseq", p(&d), "--greedy"]));
    assert_eq!(seq["result"]["degrees"], json!([[0], [6], [10], [15]]));
    assert_eq!(seq["result"]["complete"], true);

    let piece = ok(&trinom(["piece", p(&d), "--degree", "[30]"]));
    assert_eq!(piece["dimension"], 2);
}

#[test]
fn normal_form_and_membership() {
    let w = Workdir::new();
    let d = w.file("d0.json", DELTA0);
    let relation = w.file(
        "rel.json",
        r#"{"vars":3,"terms":[{"coeff":"1","exp":[5,0,0]},{"coeff":"1","exp":[0,3,0]},{"coeff":"1","exp":[0,0,2]}]}"#,
    );
    let nf = ok(&trinom(["nf", p(&d), p(&relation)]));
    assert_eq!(nf["result"]["terms"], json!([]));

    let t0_5 = w.file(
        "x.json",
        r#"{"vars":3,"terms":[{"coeff":"1","exp":[5,0,0]}]}"#,
    );
    let t0 = w.file(
        "t0.json",
        r#"{"vars":3,"terms":[{"coeff":"1","exp":[1,0,0]}]}"#,
    );
    let gens = w.file(
        "gens.json",
        r#"[{"vars":3,"terms":[{"coeff":"1","exp":[0,1,0]}]},{"vars":3,"terms":[{"coeff":"1","exp":[0,0,1]}]}]"#,
    );
    assert_eq!(
        ok(&trinom(["member", p(&d), p(&t0_5), p(&gens)]))["result"],
        true
    );
    assert_eq!(
        ok(&trinom(["member", p(&d), p(&t0), p(&gens)]))["result"],
        false
    );
}

#[test]
fn outputs_feed_back_as_inputs() {
    let w = Workdir::new();
    let source = w.file(
        "src.json",
        r#"{"partition":[1,1,1,1],"beta":[[3],[5],[2],[1]],"lambda":["2","-1/3"]}"#,
    );

    let reduced = w.path("reduced.json");
    ok(&trinom(["reduce", p(&source), "--output", p(&reduced)]));
    let reduce_out: Value =
        serde_json::from_str(&std::fs::read_to_string(&reduced).unwrap()).unwrap();
    assert_eq!(reduce_out["status"], "verified");
    tj::ring_from_value(reduce_out["result"].clone()).unwrap();
    tj::witness_from_value(reduce_out["witness"].clone()).unwrap();
    let check = ok(&trinom([
        "witness",
        p(&source),
        p(&reduced),
        "--target",
        p(&reduced),
    ]));
    assert_eq!(check["result"], true);
    assert_eq!(ok(&trinom(["dim", p(&reduced)]))["result"], 2);

    let mori = w.path("mori.json");
    ok(&trinom(["mori", p(&source), "--output", p(&mori)]));
    assert_eq!(ok(&trinom(["iso", p(&mori), p(&source)]))["result"], true);

    let grading = w.path("grading.json");
    ok(&trinom(["grading", p(&reduced), "--output", p(&grading)]));
    let seq = ok(&trinom(["sigseq", p(&reduced), "--grading", p(&grading)]));
    tj::signature_from_value(seq["result"].clone()).unwrap();

    let monoid = w.file(
        "m.json",
        r#"{"ambient_rank":2,"generators":[[1,0],[1,1],[2,-1]]}"#,
    );
    let order = w.path("order.json");
    ok(&trinom([
        "monoid",
        "order",
        p(&monoid),
        "--output",
        p(&order),
    ]));
    let basis = ok(&trinom(["monoid", "basis", p(&monoid)]));
    tj::positive_basis_from_value(basis["result"].clone()).unwrap();
    let units = ok(&trinom(["monoid", "units", p(&monoid)]));
    assert_eq!(units["result"]["units"], json!([]));
}

#[test]
fn dim3_output_carries_the_note() {
    let w = Workdir::new();
    let d = w.file(
        "d3.json",
        r#"{"partition":[1,2,1],"beta":[[2],[1,3],[5]],"lambda":["3"]}"#,
    );
    let out = ok(&trinom(["dim3", p(&d)]));
    assert!(out["note"]
        .as_str()
        .unwrap()
        .contains("not an isomorphism invariant"));
    let data = tj::data_from_value(out["result"].clone()).unwrap();
    assert_eq!(data.partition().last(), Some(&2));
    let (c, dd) = (
        out["last_block"][0].as_u64().unwrap(),
        out["last_block"][1].as_u64().unwrap(),
    );
    assert!(c >= dd);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let w = Workdir::new();
    let d = w.file(
        "d.json",
        r#"{"partition":[1,1,1,1],"beta":[[2],[3],[5],[7]],"lambda":["1","5/4"]}"#,
    );
    for args in [
        vec!["grading"],
        vec!["reduce"],
        vec!["mori"],
        vec!["sigseq", "--greedy"],
        vec!["piece", "--degree", "[210]"],
    ] {
        let mut full: Vec<&str> = args.clone();
        full.insert(1, p(&d));
        let first = trinom(&full);
        let second = trinom(&full);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

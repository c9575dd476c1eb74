use std::collections::BTreeMap;
use std::io::Write;

use detmor_cli::spec::{ArrowSpec, InstanceSpec, Kind, MorphismSpec, ObjectSpec};
use detmor_cli::{exit, run, Outcome};
use proptest::prelude::*;
use serde_json::Value;

const TUBE: &str = r#"{
  "kind": "tube",
  "field_p": 2,
  "objects": {"J2": {"partition": [2]}},
  "morphisms": {
    "q": {"source": "J2", "target": "J1", "matrix": [[0, 1]]},
    "i": {"source": "J1", "target": "J2", "matrix": [[1], [0]]},
    "z": {"source": "J1", "target": "J1", "matrix": [[0]]}
  }
}"#;

const A2: &str = r#"{
  "kind": "quiver",
  "field_p": 2,
  "vertices": ["1", "2"],
  "arrows": [{"name": "a", "source": "1", "target": "2"}],
  "morphisms": {"top": {"source": "P1", "target": "S1", "maps": {"1": [[1]]}}}
}"#;

fn cli(input: &str, args: &[&str]) -> Outcome {
    let mut argv = vec!["detmor"];
    argv.extend_from_slice(&args[..1]);
    argv.push("-");
    argv.extend_from_slice(&args[1..]);
    run(argv, &mut input.as_bytes())
}

fn report(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn hom_dimensions() {
    let out = cli(A2, &["hom", "P1", "S1"]);
    assert_eq!(out.code, exit::PASS);
    assert_eq!(report(&out)["result"]["dim"], 1);
    assert_eq!(report(&cli(TUBE, &["hom", "J2", "J1"]))["result"]["dim"], 1);
    let r = report(&cli(TUBE, &["hom", "J2", "J2"]));
    assert_eq!(r["result"]["dim"], 2);
    let basis = r["result"]["basis"].as_array().unwrap();
    assert!(basis
        .iter()
        .any(|f| f["matrix"] == serde_json::json!([[1, 0], [0, 1]])));
}

#[test]
fn determined_verdicts() {
    let r = report(&cli(TUBE, &["determined", "q", "J1"]));
    assert_eq!(r["result"]["report"]["verdict"], "true-up-to-bound");
    assert_eq!(r["bounds"]["pool"], 5);
    let r = report(&cli(TUBE, &["determined", "z", "J1"]));
    let rep = &r["result"]["report"];
    assert_eq!(rep["verdict"], "false");
    assert_eq!(rep["witness"]["object"]["name"], "J(2)");
    assert_eq!(
        rep["witness"]["morphism"]["matrix"],
        serde_json::json!([[0, 1]])
    );
    let r = report(&cli(TUBE, &["determined", "id:J(2,1)", "J(2,1)"]));
    assert_eq!(r["result"]["report"]["verdict"], "true-up-to-bound");
    let r = report(&cli(A2, &["determined", "id:P1", "P1"]));
    assert_eq!(r["result"]["report"]["verdict"], "true");
    let r = report(&cli(TUBE, &["determined", "i", "J1", "--left"]));
    assert_eq!(r["result"]["report"]["verdict"], "true-up-to-bound");
}

#[test]
fn tables() {
    for (c, y, rows) in [("J1", "J1", 2), ("J2", "J2", 3), ("0", "J2", 1)] {
        let out = cli(TUBE, &["table", c, y]);
        assert_eq!(out.code, exit::PASS, "{}", out.stdout);
        assert_eq!(report(&out)["result"]["row_count"], rows);
    }
    let r = report(&cli(TUBE, &["table", "J1", "J1"]));
    let rows = r["result"]["rows"].as_array().unwrap();
    assert_eq!(rows[0]["representative"]["components"][0]["source"], "J(2)");
    assert_eq!(rows[1]["representative"]["components"][0]["source"], "J(1)");
    let tsv = cli(TUBE, &["table", "J2", "J2", "--tsv"]).stdout;
    assert_eq!(tsv.lines().count(), 4);
    assert!(tsv.starts_with("row\tdim_H"));
}

#[test]
fn other_commands() {
    let r = report(&cli(TUBE, &["kernel", "q"]));
    assert_eq!(r["result"]["kernel"]["name"], "J(1)");
    assert_eq!(r["result"]["is_epi"], true);
    let r = report(&cli(TUBE, &["ext", "J2", "J1"]));
    assert_eq!(r["result"]["dim"], 1);
    assert_eq!(r["result"]["classes"][0]["middle"]["name"], "J(3)");
    assert_eq!(
        report(&cli(TUBE, &["tau", "J(2,1)"]))["result"]["result"]["name"],
        "J(2,1)"
    );
    assert_eq!(
        report(&cli(A2, &["tau", "S1"]))["result"]["summands"],
        serde_json::json!(["rep(0,1)"])
    );
    assert_eq!(
        report(&cli(A2, &["tau", "S2", "--inverse"]))["result"]["summands"],
        serde_json::json!(["rep(1,0)"])
    );
    let r = report(&cli(TUBE, &["decompose", "J(2,1)"]));
    assert_eq!(r["result"]["summands"].as_array().unwrap().len(), 2);
    let r = report(&cli(TUBE, &["minimize", "q"]));
    assert_eq!(r["result"]["certified"], true);
    let r = report(&cli(TUBE, &["represent", "J1", "J1", "--index", "0"]));
    assert_eq!(r["result"]["rows"].as_array().unwrap().len(), 1);
    assert_eq!(
        r["result"]["rows"][0]["minimized"]["components"][0]["source"],
        "J(2)"
    );
    let r = report(&cli(TUBE, &["almost-split", "J2"]));
    assert_eq!(r["result"]["middle"]["name"], "J(3,1)");
    assert_eq!(r["result"]["certificate"]["holds"], true);
    let r = report(&cli(A2, &["almost-split", "S1"]));
    assert_eq!(r["result"]["middle"]["name"], "rep(1,1)");
    let r = report(&cli(TUBE, &["serre-pairing", "J2", "J(2,1)"]));
    assert_eq!(r["result"]["perfect"], true);
    assert_eq!(r["result"]["rank"], 3);
}

#[test]
fn verify_suites() {
    let out = cli(TUBE, &["verify", "serre-dim"]);
    assert_eq!(out.code, exit::PASS);
    assert_eq!(report(&out)["result"]["passed"], true);
    let out = cli(r#"{"kind": "quiver", "field_p": 2}"#, &["verify", "all"]);
    assert_eq!(out.code, exit::PASS);
    let r = report(&out);
    assert_eq!(r["result"]["vacuous"], true);
    assert_eq!(r["result"]["checks"], 0);
    let r = report(&cli(TUBE, &["verify", "list"]));
    assert_eq!(r["result"]["suites"].as_array().unwrap().len(), 10);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(TUBE, &["hom", "J2", "Nope"]).code, exit::INPUT);
    assert_eq!(cli(TUBE, &["verify", "nope"]).code, exit::INPUT);
    assert_eq!(cli(A2, &["verify", "serre-dim"]).code, exit::INPUT);
    assert_eq!(cli(A2, &["almost-split", "P1"]).code, exit::INPUT);
    assert_eq!(
        cli(TUBE, &["table", "J4", "J4", "--limit", "4"]).code,
        exit::LIMIT
    );
    assert_eq!(cli("{", &["hom", "J1", "J1"]).code, exit::INPUT);
    // Faithful run of the short witness bound; see the acceptance notes.
    assert_eq!(
        cli(TUBE, &["verify", "epi-dichotomy", "--quiet"]).code,
        exit::COUNTEREXAMPLE
    );
    assert_eq!(
        run(["detmor", "--version"], &mut "".as_bytes()).code,
        exit::PASS
    );
    assert_eq!(
        run(["detmor", "frobnicate"], &mut "".as_bytes()).code,
        exit::INPUT
    );
}

#[test]
fn errors_carry_line_positions() {
    let bad = "{\n  \"kind\": \"tube\",\n  \"field_p\": 2,\n  \"objects\": {\"X\": {\"operator\": [[1]]}}\n}";
    let out = cli(bad, &["hom", "X", "X"]);
    assert_eq!(out.code, exit::INPUT);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    let out = cli(
        "{\n  \"kind\": \"tube\",\n  \"field_p\": 2,,\n}",
        &["hom", "J1", "J1"],
    );
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    let out = cli(r#"{"kind": "tube", "field_p": 4}"#, &["hom", "J1", "J1"]);
    assert_eq!(out.code, exit::INPUT);
}

#[test]
fn files_stdin_and_field_override_agree() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(TUBE.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let from_file = run(["detmor", "hom", path, "J2", "J2"], &mut "".as_bytes());
    let from_stdin = cli(TUBE, &["hom", "J2", "J2"]);
    assert_eq!(report(&from_file)["result"], report(&from_stdin)["result"]);
    assert_eq!(
        report(&from_file)["instance"],
        report(&from_stdin)["instance"]
    );
    let f3 = report(&cli(TUBE, &["ext", "J2", "J2", "--field", "3"]));
    assert_eq!(f3["instance"]["field_p"], 3);
    assert_ne!(
        f3["instance"]["digest"],
        report(&from_stdin)["instance"]["digest"]
    );
}

#[test]
fn reports_are_reproducible_unless_timed() {
    let a = cli(TUBE, &["table", "J2", "J2"]);
    let b = cli(TUBE, &["table", "J2", "J2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["wall_clock_ms"], Value::Null);
    let t = report(&cli(TUBE, &["table", "J2", "J2", "--timing"]));
    assert!(t["wall_clock_ms"].is_number());
}

fn matrix() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (0usize..3, 0usize..3)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0u64..7, c), r))
}

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9_]{0,5}"
}

fn object() -> impl Strategy<Value = ObjectSpec> {
    prop_oneof![
        prop::collection::vec(1usize..4, 0..3).prop_map(|p| ObjectSpec {
            partition: Some(p),
            ..Default::default()
        }),
        matrix().prop_map(|m| ObjectSpec {
            operator: Some(m),
            ..Default::default()
        }),
        (
            prop::collection::vec(0usize..3, 0..3),
            prop::collection::btree_map(name(), matrix(), 0..3)
        )
            .prop_map(|(d, m)| ObjectSpec {
                dims: Some(d),
                maps: Some(m),
                ..Default::default()
            }),
    ]
}

fn morphism() -> impl Strategy<Value = MorphismSpec> {
    (
        name(),
        name(),
        prop::option::of(matrix()),
        prop::option::of(prop::collection::btree_map(name(), matrix(), 0..3)),
    )
        .prop_map(|(source, target, matrix, maps)| MorphismSpec {
            source,
            target,
            matrix,
            maps,
        })
}

fn instance() -> impl Strategy<Value = InstanceSpec> {
    (
        prop_oneof![Just(Kind::Quiver), Just(Kind::Tube)],
        prop::sample::select(vec![2u64, 3, 5, 7]),
        prop::collection::vec(name(), 0..4),
        prop::collection::vec((name(), name(), name()), 0..3),
        prop::collection::btree_map(name(), object(), 0..4),
        prop::collection::btree_map(name(), morphism(), 0..3),
    )
        .prop_map(
            |(kind, field_p, vertices, arrows, objects, morphisms)| InstanceSpec {
                kind,
                field_p,
                vertices,
                arrows: arrows
                    .into_iter()
                    .map(|(name, source, target)| ArrowSpec {
                        name,
                        source,
                        target,
                    })
                    .collect(),
                objects,
                morphisms,
            },
        )
}

proptest! {
    #[test]
    fn instance_specs_round_trip(spec in instance()) {
        let back = InstanceSpec::parse(&spec.to_json()).unwrap();
        prop_assert_eq!(&back, &spec);
        let compact = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(InstanceSpec::parse(&compact).unwrap(), spec);
    }
}

#[test]
fn builders_match_handwritten_specs() {
    let a2 = InstanceSpec::linear_a(2, 2);
    let mut hand = InstanceSpec::parse(A2).unwrap();
    hand.morphisms = BTreeMap::new();
    assert_eq!(a2.vertices, hand.vertices);
    assert_eq!(a2.arrows.len(), 1);
    assert_eq!(InstanceSpec::tube(2).kind, Kind::Tube);
}

use std::fs;
use std::path::Path;
use std::process::Command;

use plconj::random::random_map;
use plconj::{rat, PlMap};
use plconj_cli::{parse_map, run, serialize_map};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const F: &str = "0 0\n1/2 3/4\n1 1\n";
const H: &str = "0 0\n1/2 1/4\n1 1\n";
const Z: &str = "0 0\n1/3 1/2\n1/2 7/12\n2/3 5/6\n1 1\n";

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["plconj", "--format", "json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let body = if out.code == 2 {
        out.stderr
    } else {
        out.stdout
    };
    (out.code, serde_json::from_str(&body).expect("json output"))
}

fn map_of(v: &Value) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| format!("{} {}\n", p[0].as_str().unwrap(), p[1].as_str().unwrap()))
        .collect()
}

#[test]
fn conjugate_pair_gives_a_certificate_that_verifies() {
    let d = tempfile::tempdir().unwrap();
    let (f, z) = (write(d.path(), "f.pl", F), write(d.path(), "z.pl", Z));
    let (code, doc) = json(&["conjugate", &f, &z]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "conjugate");
    let g = write(d.path(), "g.pl", &map_of(&doc["certificate"]));
    let (code, doc) = json(&["verify", &g, &f, &z]);
    assert_eq!((code, doc["status"].as_str()), (0, Some("valid")));
    let h = write(d.path(), "h.pl", H);
    assert_eq!(json(&["verify", &h, &f, &z]).0, 0);
    assert_eq!(json(&["verify", &h, &f, &f]).0, 1);
}

#[test]
fn identity_verifies_a_map_against_itself() {
    let d = tempfile::tempdir().unwrap();
    let id = write(d.path(), "id.pl", "0 0\n1 1\n");
    let f = write(d.path(), "f.pl", F);
    assert_eq!(json(&["verify", &id, &f, &f]).0, 0);
}

#[test]
fn square_root_of_f_is_rejected_with_reason() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "f.pl", F);
    let (code, doc) = json(&["root", &f, "-n", "2"]);
    assert_eq!(code, 1);
    assert_eq!(
        doc["reason"],
        "initial slope 3/2 has no rational square root"
    );
    let text = run(["plconj", "root", &f, "-n", "2"]);
    assert!(text
        .stdout
        .contains("reason: initial slope 3/2 has no rational square root"));
}

#[test]
fn algebra_subcommands() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "f.pl", F);
    let h = write(d.path(), "h.pl", H);
    let (code, doc) = json(&["eval", &f, "1/4"]);
    assert_eq!((code, doc["value"].as_str()), (0, Some("3/8")));
    let (_, doc) = json(&["compose", &f, &f]);
    assert_eq!(map_of(&doc["map"]), "0 0\n1/3 3/4\n1/2 7/8\n1 1\n");
    let (_, doc) = json(&["power", &f, "-1"]);
    assert_eq!(map_of(&doc["map"]), "0 0\n3/4 1/2\n1 1\n");
    let (_, doc) = json(&["invert", &f]);
    assert_eq!(map_of(&doc["map"]), "0 0\n3/4 1/2\n1 1\n");
    let hi = write(d.path(), "hi.pl", &map_of(&json(&["invert", &h]).1["map"]));
    let (_, doc) = json(&["compose", &hi, &f, &h]);
    assert_eq!(map_of(&doc["map"]), Z);
    let (_, doc) = json(&["classify", &f]);
    assert_eq!(doc["class"], "above");
    let c = write(d.path(), "c.pl", "0 0\n1/4 1/2\n5/8 9/16\n1 1\n");
    assert_eq!(
        json(&["classify", &c]).1["fixed"],
        serde_json::json!(["11/20"])
    );
}

#[test]
fn germ_and_centralizer_output() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "f.pl", F);
    let (code, doc) = json(&["mather", &f]);
    assert_eq!(code, 0);
    assert_eq!(
        (doc["m0"].as_str(), doc["m1"].as_str(), doc["t0"].as_str()),
        (Some("3/2"), Some("1/2"), Some("1/3"))
    );
    assert_eq!(doc["N"], 1);
    assert_eq!(map_of(&doc["V"]), "1/3 1/2\n1/2 1/4\n");
    let f2 = write(
        d.path(),
        "f2.pl",
        &serialize_map(&parse_map(F).unwrap().power(2)),
    );
    let (code, doc) = json(&["centralizer", &f2]);
    assert_eq!(code, 0);
    assert_eq!(map_of(&doc["generator"]), F);
    assert_eq!(doc["d"], 2);
    let (code, doc) = json(&["root", &f2, "-n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(map_of(&doc["root"]), F);
    let (_, doc) = json(&["boxes", &f, &f]);
    assert_eq!(
        (doc["alpha"].as_str(), doc["beta"].as_str()),
        (Some("1/2"), Some("1/2"))
    );
}

#[test]
fn negative_answers_exit_one() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "f.pl", F);
    let z3 = write(d.path(), "z3.pl", "0 0\n1/4 3/8\n5/8 13/16\n1 1\n");
    let (code, doc) = json(&["conjugate", &f, &z3]);
    assert_eq!(code, 1);
    assert_eq!(
        (doc["y_classes"].as_i64(), doc["z_classes"].as_i64()),
        (Some(1), Some(2))
    );
    let h = write(d.path(), "h.pl", H);
    let (code, doc) = json(&["conjugate", &f, &h]);
    assert_eq!(code, 1);
    assert_eq!(
        doc["reason"],
        "the maps lie on opposite sides of the diagonal"
    );
    assert_eq!(json(&["conjugator-with-slope", &f, &f, "5/7"]).0, 1);
    assert_eq!(json(&["conjugator-with-slope", &f, &f, "3/2"]).0, 0);
}

#[test]
fn input_errors_exit_two() {
    let d = tempfile::tempdir().unwrap();
    let bad = write(d.path(), "bad.pl", "0 0\n# comment\n1/2 0.75\n1 1\n");
    let out = run(["plconj", "invert", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    assert!(out.stderr.contains("decimals"));
    let missing = write(d.path(), "m.pl", "0 0\n1/2 3/4\n");
    assert!(run(["plconj", "invert", &missing])
        .stderr
        .contains("line 2: last breakpoint must be 1 1"));
    let crossing = write(d.path(), "c.pl", "0 0\n1/4 1/2\n5/8 9/16\n1 1\n");
    let f = write(d.path(), "f.pl", F);
    let (code, doc) = json(&["conjugate", &crossing, &f]);
    assert_eq!(code, 2);
    assert_eq!(doc["violated"], "NotOneBump");
    assert_eq!(run(["plconj", "eval", &f, "2"]).code, 2);
    assert_eq!(run(["plconj", "nonsense"]).code, 2);
    assert_eq!(run(["plconj", "invert", "/nonexistent/file.pl"]).code, 2);
    assert_eq!(run(["plconj", "--help"]).code, 0);
}

#[test]
fn plot_is_deterministic_and_exact() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "f.pl", F);
    let (a, b) = (d.path().join("a.svg"), d.path().join("b.svg"));
    assert_eq!(
        run(["plconj", "plot", &f, "-o", a.to_str().unwrap()]).code,
        0
    );
    assert_eq!(
        run(["plconj", "plot", &f, "-o", b.to_str().unwrap()]).code,
        0
    );
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg.as_bytes(), fs::read(&b).unwrap());
    assert!(svg.contains(r#"data-x="1/2" data-y="3/4""#));
    assert!(svg.contains(r#"points="20.000,520.000 270.000,145.000 520.000,20.000""#));
    let id = write(d.path(), "id.pl", "0 0\n1 1\n");
    let out = run(["plconj", "plot", &id]);
    assert!(out
        .stdout
        .contains(r#"points="20.000,520.000 520.000,20.000""#));
    assert!(out.stdout.contains(r#"x1="20" y1="520" x2="520" y2="20""#));
}

#[test]
fn binary_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "f.pl", F);
    let z = write(d.path(), "z.pl", Z);
    let bin = env!("CARGO_BIN_EXE_plconj");
    let ok = Command::new(bin)
        .args(["conjugate", &f, &z])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout)
        .unwrap()
        .starts_with("status: conjugate\ncertificate:\n"));
    let no = Command::new(bin)
        .args(["root", &f, "-n", "2"])
        .output()
        .unwrap();
    assert_eq!(no.status.code(), Some(1));
    let bad = Command::new(bin).args(["power", &f]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn random_round_trips() {
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let f = random_map(&mut r, 20, 1_000_000);
        assert_eq!(parse_map(&serialize_map(&f)).unwrap(), f);
    }
}

proptest! {
    #[test]
    fn round_trip_of_generated_breakpoints(xs in prop::collection::btree_set(1i64..1000, 0..12), lift in 1i64..50) {
        let mut pts = vec![(rat(0, 1), rat(0, 1))];
        for (i, x) in xs.iter().enumerate() {
            pts.push((rat(*x, 1000), rat(*x * lift + i as i64, 1000 * lift + 20)));
        }
        pts.push((rat(1, 1), rat(1, 1)));
        if let Ok(f) = PlMap::new(pts) {
            let text = serialize_map(&f);
            prop_assert_eq!(parse_map(&text).unwrap(), f);
            prop_assert_eq!(serialize_map(&parse_map(&text).unwrap()), text);
        }
    }
}

//! Runs the binary end to end.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stackpat")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn headline_examples() {
    assert_eq!(stdout(&["sortable", "--sigma", "132", "2413"]), "true");
    assert_eq!(stdout(&["enumerate", "--sigma", "231", "--n", "6"]), "496");
    assert_eq!(stdout(&["bijection", "eta", "13 14 15 10 12 6 7 8 11 9 3 1 4 5 2"]), "111223332345445");
}

#[test]
fn machine_examples() {
    assert_eq!(stdout(&["sort", "--sigma", "231", "2413"]), "1234");
    let t = json(&["trace", "--sigma", "231", "2413"]);
    assert_eq!(t["first_output"], serde_json::json!([1, 4, 3, 2]));
    assert_eq!(t["sortable"], true);
    assert!(stdout(&["trace", "--sigma", "231", "2413"]).ends_with("first output: 1432\nfinal output: 1234\nsortable: true"));
    assert_eq!(json(&["sort", "--sigma", "123", "132"])["first_output"], serde_json::json!([2, 3, 1]));
    assert_eq!(json(&["sort", "--sigma", "11", "--domain", "cay", "42132"])["first_output"], serde_json::json!([3, 1, 2, 2, 4]));
    for (sigma, yes, no) in [("123", "4132", "132"), ("231", "361425", "1324"), ("21", "35241", "3241")] {
        for method in ["brute", "oracle"] {
            assert_eq!(stdout(&["sortable", "--sigma", sigma, "--method", method, yes]), "true");
            assert_eq!(stdout(&["sortable", "--sigma", sigma, "--method", method, no]), "false");
        }
    }
}

#[test]
fn fertility_and_sorted_sets() {
    assert_eq!(stdout(&["fertility", "--sigma", "123", "12", "--list"]), "1\n21");
    assert_eq!(stdout(&["fertility", "--sigma", "123", "132", "--list"]), "1\n231");
    assert_eq!(stdout(&["fertility", "--sigma", "123", "123"]), "0");
    assert_eq!(stdout(&["sorted-set", "--sigma", "123", "--n", "3", "--list"]), "4\n132\n213\n312\n321");
    assert_eq!(stdout(&["sorted-set", "--sigma", "231", "--n", "3"]), "5");
    let sizes: Vec<String> =
        (1..=6).map(|n| stdout(&["sorted-set", "--sigma", "123", "--n", &n.to_string()])).collect();
    assert_eq!(sizes, ["1", "2", "4", "7", "11", "16"]);
}

#[test]
fn classification_examples() {
    assert_eq!(stdout(&["classify", "--sigma", "321"]), "class\nbasis: 132, 123");
    assert_eq!(
        stdout(&["classify", "--sigma", "231"]),
        "non-class\nwitness: 361425 is sortable, its pattern 1324 is not"
    );
    let c = json(&["classify", "--sigma", "112", "--domain", "asc"]);
    assert_eq!(c["is_class"], false);
    assert_eq!(c["witness"]["word"], serde_json::json!([1, 2, 1, 3, 1, 2]));
    assert_eq!(c["witness"]["pattern"], serde_json::json!([1, 2, 3, 2]));
}

#[test]
fn counting_methods() {
    assert_eq!(stdout(&["enumerate", "--sigma", "123,312", "--n", "6", "--series", "--method", "tree"]), "1,2,5,15,51,188");
    assert_eq!(stdout(&["enumerate", "--sigma", "132,321", "--n", "6", "--series", "--method", "tree"]), "1,2,4,10,26,72");
    assert_eq!(stdout(&["enumerate", "--sigma", "123", "--n", "6", "--series"]), "1,2,5,13,35,99");
    assert_eq!(stdout(&["enumerate", "--sigma", "21", "--domain", "cay", "--n", "5", "--series"]), "1,3,13,73,483");
    assert_eq!(stdout(&["enumerate", "--sigma", "123,321", "--n", "8", "--series", "--method", "brute"]), "1,2,4,7,14,28,56,112");

    let fallback = run(&["enumerate", "--sigma", "12", "--domain", "rgf", "--n", "5"]);
    assert!(fallback.status.success());
    assert!(String::from_utf8_lossy(&fallback.stderr).contains("notice"));
    let j = json(&["enumerate", "--sigma", "12", "--domain", "rgf", "--n", "5"]);
    assert_eq!((j["method"].as_str(), j["fell_back"].as_bool()), (Some("brute"), Some(true)));
    assert_eq!(code(&["enumerate", "--sigma", "12", "--domain", "rgf", "--n", "5", "--strict"]), 1);
    assert_eq!(code(&["enumerate", "--sigma", "231", "--n", "5", "--method", "tree"]), 1);
}

#[test]
fn output_does_not_depend_on_threads() {
    let args = ["enumerate", "--sigma", "1324", "--n", "8", "--method", "brute", "--json"];
    let one = stdout(&[&args[..], &["--threads", "1"]].concat());
    let four = stdout(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
    let set = ["sorted-set", "--sigma", "132", "--n", "6", "--list"];
    assert_eq!(stdout(&[&set[..], &["--threads", "1"]].concat()), stdout(&[&set[..], &["--threads", "3"]].concat()));
}

#[test]
fn sequences() {
    assert_eq!(stdout(&["sequence", "CATALAN", "5"]), "42");
    assert_eq!(stdout(&["sequence", "fishburn", "5"]), "53");
    assert_eq!(stdout(&["sequence", "BINOM_TRANSFORM_CATALAN", "9"]), "12235");
    assert_eq!(stdout(&["sequence", "narayana", "4", "2"]), "6");
    assert_eq!(json(&["sequence", "catalan", "30"])["value"], "3814986502092304");
    assert_eq!(code(&["sequence", "NOPE", "3"]), 2);
    assert_eq!(code(&["sequence", "narayana", "3"]), 2);
    assert_eq!(code(&["sequence", "narayana", "3", "5"]), 1);
}

#[test]
fn bijection_examples() {
    let cases = [
        ("eta", "4321", "1234"),
        ("eta-inverse", "111223332345445", "13 14 15 10 12 6 7 8 11 9 3 1 4 5 2"),
        ("dyck-to-av213", "UUDUUDDDUD", "25341"),
        ("dyck-to-av213", "UD", "1"),
        ("av213-to-dyck", "25341", "UUDUUDDDUD"),
        ("schroder", "567489132", "H2H2UDUUDUDDH2H2"),
        ("schroder", "12345", "H2H2H2H2"),
        ("schroder-inverse", "H2H2UDUUDUDDH2H2", "567489132"),
        ("beta-stack", "l0 l1 U U D l2 l0 D l0 l0", "12134435367"),
        ("pi", "121314234", "351729468"),
        ("pi-inverse", "351729468", "121314234"),
        ("psi", "1", "UD"),
        ("modify", "12124", "13124"),
        ("unmodify", "13124", "12124"),
        ("reverse", "25341", "14352"),
        ("complement", "25341", "41325"),
        ("inverse", "312", "231"),
    ];
    for (map, input, want) in cases {
        assert_eq!(stdout(&["bijection", map, input]), want, "{map}({input})");
    }
    let r = stdout(&["bijection", "delta", "1213"]);
    assert_eq!(stdout(&["bijection", "delta-inverse", &r]), "1213");
    assert!(stdout(&["bijection", "list"]).lines().count() >= 15);
}

#[test]
fn exit_codes() {
    // domain and precondition errors
    assert_eq!(code(&["sortable", "--sigma", "132", "1134"]), 1);
    assert_eq!(code(&["bijection", "eta", "132"]), 1);
    assert_eq!(code(&["bijection", "dyck-to-av213", "UDD"]), 1);
    assert_eq!(code(&["enumerate", "--sigma", "12", "--domain", "cay", "--n", "12"]), 1);
    assert_eq!(code(&["classify", "--sigma", "123,132"]), 1);
    assert_eq!(code(&["sortable", "--sigma", "mesh(132;(0,2))", "123"]), 1);
    // parse errors
    assert_eq!(code(&["sortable", "--sigma", "13x2", "1"]), 2);
    assert_eq!(code(&["sortable", "--sigma", "132", "1a"]), 2);
    assert_eq!(code(&["enumerate", "--sigma", "132", "--n", "3", "--method", "magic"]), 2);
    assert_eq!(code(&["enumerate", "--sigma", "132", "--n", "3", "--domain", "graphs"]), 2);
    assert_eq!(code(&["bijection", "nope", "1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["verify", "no_such_table"]), 2);
}

#[test]
fn guard_override() {
    assert_eq!(code(&["sorted-set", "--sigma", "12", "--domain", "cay", "--n", "9"]), 1);
    assert_eq!(stdout(&["sorted-set", "--sigma", "12", "--domain", "cay", "--n", "2", "--max-n", "9"]), "2");
}

#[test]
fn verification() {
    let out = stdout(&["verify", "pairs", "--n", "6"]);
    assert!(out.ends_with("15 of 15 rows pass"), "{out}");
    let j = json(&["verify", "decr", "--n", "6"]);
    assert_eq!(j[0]["pass"], true);

    let dir = std::env::temp_dir().join(format!("stackpat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    let bad = dir.join("bad.txt");
    let garbled = dir.join("garbled.txt");
    std::fs::File::create(&good).unwrap().write_all(b"single/123: 1,2,5,13,35@1\n").unwrap();
    std::fs::File::create(&bad).unwrap().write_all(b"single/123: 1,2,5,14@1\n").unwrap();
    std::fs::File::create(&garbled).unwrap().write_all(b"single 123 1 2 5\n").unwrap();
    assert_eq!(code(&["verify", "--file", good.to_str().unwrap()]), 0);
    let failed = run(&["verify", "--file", bad.to_str().unwrap()]);
    assert_eq!(failed.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&failed.stdout).contains("diverges at n=4"));
    assert_eq!(code(&["verify", "--file", garbled.to_str().unwrap()]), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

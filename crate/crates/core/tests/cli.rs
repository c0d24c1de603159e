use std::process::Command;

use coverage_depth::cli::execute;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = execute(std::iter::once("covdepth").chain(args.iter().copied()));
    (out.code, out.stdout, out.stderr)
}

fn json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}.txt", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn pmf_mds_csv() {
    let (code, out, _) = run(&[
        "pmf", "--family", "mds", "--q", "8", "--n", "7", "--k", "3", "--rmax", "7", "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "strands,r,num,den,approx");
    assert_eq!(lines[1], "1 2 3,1,1,7,0.143");
    assert_eq!(lines[3], "1 2 3,3,156,343,0.455");
    assert_eq!(lines[8], "1 2 3,tail,1896,823543,0.002");
}

#[test]
fn family_and_file_agree() {
    let a = json(&["moments", "--family", "hamming", "--q", "2", "--m", "3"]);
    let b = json(&["moments", "--file", &data("hamming_2_3")]);
    assert_eq!(a["groups"][0]["moments"], b["groups"][0]["moments"]);
    assert_eq!(a["verified_by_enumeration"], true);
    assert_eq!(a["strand_independent"], true);
    assert_eq!(b["alpha_source"], "enumeration");
    assert_eq!(a["groups"][0]["variance"]["num"], "151");
    assert_eq!(a["groups"][0]["variance"]["den"], "30");
}

#[test]
fn tail_sum_method_tags_bounds() {
    let v = json(&[
        "moments", "--family", "identity", "--n", "7", "--order", "2", "--method", "tail-sum",
    ]);
    assert_eq!(v["method"], "tail-sum");
    let m = &v["groups"][0]["moments"];
    assert_eq!(m[0]["value"]["approx"], "7.000");
    assert!(m[1]["remainder_bound"].is_object());
}

#[test]
fn alpha_groups_unequal_strands() {
    // Strand 1 is repeated; strand 2 appears once.
    let path = std::env::temp_dir().join("covdepth_unequal.txt");
    std::fs::write(&path, "2 2 1 2 3\n1 0 1\n0 1 0\n").unwrap();
    let v = json(&["alpha", "--file", path.to_str().unwrap()]);
    assert_eq!(v["strand_independent"], false);
    assert_eq!(v["groups"].as_array().unwrap().len(), 2);
    assert_eq!(
        v["groups"][0]["alpha"],
        serde_json::json!(["0", "2", "3", "1"])
    );
}

#[test]
fn reproduce_and_optimize() {
    let v = json(&["reproduce", "table2"]);
    assert_eq!(v["mismatches"], 0);
    let v = json(&["reproduce", "table1"]);
    assert_eq!(v["mismatches"], 0);
    let v = json(&["optimize-epsilon", "--tol", "1e-10", "--precision", "6"]);
    assert_eq!(v["epsilon"]["approx"], "0.833968");
    let v = json(&["quasiarc", "--eps", "1"]);
    assert_eq!(v["asymptotic"]["limit"]["num"], "397");
    let v = json(&["limit", "--digits", "20"]);
    assert_eq!(v["constant"], "0.94559943487486031163");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["pmf"]).0, 1);
    assert_eq!(run(&["pmf", "--family", "mds", "--q", "8"]).0, 1);
    assert_eq!(run(&["quasiarc"]).0, 1);
    assert_eq!(
        run(&[
            "alpha",
            "--file",
            &data("mds_8_7_3"),
            "--source",
            "closed-form"
        ])
        .0,
        1
    );
    assert_eq!(
        run(&["alpha", "--family", "identity", "--n", "3", "--strand", "4"]).0,
        2
    );
    assert_eq!(
        run(&["alpha", "--family", "mds", "--q", "6", "--n", "5", "--k", "2"]).0,
        2
    );
    assert_eq!(
        run(&["alpha", "--family", "mds", "--q", "4", "--n", "9", "--k", "2"]).0,
        2
    );
    assert_eq!(run(&["pmf", "--file", "/nonexistent/g.txt"]).0, 2);
}

#[test]
fn simulation_is_reproducible_across_threads() {
    let args = |t: &'static str| {
        vec![
            "simulate",
            "--family",
            "mds",
            "--q",
            "8",
            "--n",
            "7",
            "--k",
            "3",
            "--strand",
            "2",
            "--trials",
            "5000",
            "--seed",
            "11",
            "--threads",
            t,
        ]
    };
    let a = run(&args("1"));
    let b = run(&args("4"));
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert!(v["runs"][0]["exact"]["mean_z"].as_f64().unwrap().abs() < 5.0);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_covdepth");
    let ok = Command::new(bin)
        .args([
            "alpha", "--family", "identity", "--n", "4", "--format", "tsv",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout)
        .unwrap()
        .starts_with("strands\ts\talpha\tcomplement\n"));
    let bad = Command::new(bin)
        .args(["limit", "--digits", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let env = Command::new(bin)
        .env("COVDEPTH_THREADS", "2")
        .args(["reproduce", "figure1", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    assert_eq!(String::from_utf8(env.stdout).unwrap().lines().count(), 36);
}

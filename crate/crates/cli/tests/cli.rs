use std::io::Write;
use std::process::{Command, Output};

use dualdist_cli::ReportDocument;
use serde_json::Value;
use tempfile::NamedTempFile;

fn dualdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (ReportDocument, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = dualdist(&all);
    let doc = ReportDocument::from_json(&stdout(&o)).expect("valid report");
    (doc, o.status.code().unwrap())
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn bound_all_methods() {
    let (doc, code) = json(&["bound", "--d", "5", "--dperp", "4", "--methods", "all"]);
    assert_eq!(code, 0);
    let r = &doc.results;
    let got: Vec<u64> = [
        "singleton_lb",
        "griesmer_lb",
        "hamming_lb",
        "lp_lb",
        "lp_refined_lb",
        "gv_ub",
    ]
    .iter()
    .map(|k| r[k].as_u64().unwrap())
    .collect();
    assert_eq!(got, [9, 8, 11, 11, 13, 29]);
    assert_eq!(doc.provenance.len(), 6);
}

#[test]
fn bound_trivial_and_single_method() {
    let (doc, _) = json(&["bound", "--d", "2", "--dperp", "6"]);
    assert_eq!(doc.results["true_value"]["n"], 6);
    let (doc, _) = json(&["bound", "--d", "3", "--dperp", "3", "--methods", "hamming"]);
    assert_eq!(doc.results["hamming_lb"], 6);
    assert_eq!(doc.results["singleton_lb"], Value::Null);
}

#[test]
fn bound_usage_errors() {
    assert_eq!(
        dualdist(&["bound", "--d", "1", "--dperp", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dualdist(&["bound", "--d", "3", "--dperp", "3", "--methods", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(dualdist(&["bound", "--d", "3"]).status.code(), Some(2));
    assert_eq!(dualdist(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bound_lp_dump() {
    let o = dualdist(&[
        "bound",
        "--d",
        "3",
        "--dperp",
        "3",
        "--methods",
        "lp",
        "--dump-lp",
        "6",
    ]);
    let text = stdout(&o);
    assert!(text.contains("Subject To"), "{text}");
    assert!(text.contains("End"));
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&dualdist(&["bound", "--d", "6", "--dperp", "4"]));
    let (doc, _) = json(&["bound", "--d", "6", "--dperp", "4"]);
    for (method, key) in [
        ("griesmer", "griesmer_lb"),
        ("lp-refined", "lp_refined_lb"),
        ("gv", "gv_ub"),
    ] {
        let line = text
            .lines()
            .find(|l| l.trim_start().starts_with(method))
            .unwrap();
        let value: u64 = line.split_whitespace().nth(2).unwrap().parse().unwrap();
        assert_eq!(Some(value), doc.results[key].as_u64(), "{method}");
    }
}

#[test]
fn report_round_trips() {
    let o = dualdist(&["--json", "bound", "--d", "4", "--dperp", "3"]);
    let s = stdout(&o);
    let doc = ReportDocument::from_json(&s).unwrap();
    assert_eq!(doc.to_json().trim(), s.trim());
    assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
}

const N54: &str = "1000000001111\n0100001110001\n0010010110110\n0001011011010\n0000111101101\n";

#[test]
fn verify_matrix_files() {
    let f = file(N54);
    let (doc, code) = json(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = &doc.results;
    assert_eq!(
        (
            r["n"].as_u64(),
            r["m"].as_u64(),
            r["d"].as_u64(),
            r["dperp"].as_u64()
        ),
        (Some(13), Some(5), Some(5), Some(4))
    );
    assert_eq!(r["ell_bound_holds"], true);

    let id = file("100\n010\n001\n");
    let o = dualdist(&["verify", id.path().to_str().unwrap(), "--expect", "3,2,2"]);
    assert_eq!(o.status.code(), Some(3));

    let bad = file("101\n01\n");
    assert_eq!(
        dualdist(&["verify", bad.path().to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        dualdist(&["verify", "/nonexistent/matrix"]).status.code(),
        Some(1)
    );
}

#[test]
fn verify_catalog_export() {
    let o = dualdist(&["catalog", "--d", "6", "--dperp", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let f = file(&stdout(&o));
    let o = dualdist(&["verify", f.path().to_str().unwrap(), "--expect", "18,6,6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn table1_reports_every_cell() {
    let (doc, code) = json(&["table1"]);
    let rows = doc.results["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 14);
    let mismatches: Vec<(u64, u64, String)> = rows
        .iter()
        .flat_map(|r| {
            r["cells"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|c| c["matches"] == false)
                .map(move |c| {
                    (
                        r["d"].as_u64().unwrap(),
                        r["dperp"].as_u64().unwrap(),
                        c["column"].as_str().unwrap().to_string(),
                    )
                })
        })
        .collect();
    // the published Singleton-type entry for (6,6) is d + d⊥ − 2 = 10; the
    // bound for d, d⊥ >= 3 is d + d⊥ = 12
    assert_eq!(mismatches, vec![(6, 6, "singleton".to_string())]);
    assert_eq!(code, 3);
    assert_eq!(doc.results["all_match"], false);
    let row = rows
        .iter()
        .find(|r| r["d"] == 8 && r["dperp"] == 3)
        .unwrap();
    let computed: Vec<u64> = row["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["computed"].as_u64().unwrap())
        .collect();
    assert_eq!(computed, [15, 11, 10, 14, 15, 15, 35]);
}

#[test]
fn table1_subset_exit_zero() {
    let (_, code) = json(&["table1", "--methods", "griesmer,hamming,gv"]);
    assert_eq!(code, 0);
}

#[test]
fn search_commands() {
    let (doc, code) = json(&["--seq", "search", "--d", "3", "--dperp", "3", "--n", "5"]);
    assert_eq!(
        (doc.results["verdict"].as_str(), code),
        (Some("exhausted-none"), 0)
    );

    let (doc, code) = json(&["--seq", "search", "--d", "3", "--dperp", "3", "--n", "6"]);
    assert_eq!((doc.results["verdict"].as_str(), code), (Some("found"), 0));
    let rows: Vec<&str> = doc.results["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap())
        .collect();
    let f = file(&rows.join("\n"));
    assert_eq!(
        dualdist(&["verify", f.path().to_str().unwrap(), "--expect", "6,3,3"])
            .status
            .code(),
        Some(0)
    );

    let (doc, code) = json(&["search", "--d", "4", "--dperp", "4", "--find-true"]);
    assert_eq!(
        (
            doc.results["value"].as_u64(),
            doc.results["status"].as_str(),
            code
        ),
        (Some(8), Some("proved"), 0)
    );
}

#[test]
fn search_budget_and_guards() {
    let (doc, code) = json(&[
        "--budget-nodes",
        "50",
        "search",
        "--d",
        "5",
        "--dperp",
        "5",
        "--n",
        "15",
    ]);
    assert_eq!(code, 4);
    assert_eq!(doc.results["verdict"], "aborted-nodes");
    assert_eq!(doc.results["witness"], Value::Null);
    assert_eq!(
        dualdist(&["search", "--d", "3", "--dperp", "3", "--n", "30"])
            .status
            .code(),
        Some(5)
    );
    assert_eq!(
        dualdist(&["search", "--d", "3", "--dperp", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_checkpoint_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ckpt");
    let p = path.to_str().unwrap();
    let args = [
        "--seq",
        "search",
        "--d",
        "5",
        "--dperp",
        "3",
        "--n",
        "10",
        "--checkpoint",
        p,
    ];
    let (first, _) = json(&args);
    assert_eq!(first.results["verdict"], "exhausted-none");
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("# dualdist search checkpoint v1"));
    let (again, _) = json(&args);
    assert_eq!(again.results["nodes_explored"], 0);
}

const BENT: &str = "n=4 m=1\n0\n0\n0\n1\n0\n0\n0\n1\n0\n0\n0\n1\n1\n1\n1\n0\n";

#[test]
fn epc_truth_tables() {
    let f = file(BENT);
    let (doc, code) = json(&[
        "epc",
        f.path().to_str().unwrap(),
        "--ell",
        "4",
        "--order",
        "0",
    ]);
    assert_eq!((doc.results["satisfies"].as_bool(), code), (Some(true), 0));

    let (doc, _) = json(&[
        "epc",
        f.path().to_str().unwrap(),
        "--ell",
        "1",
        "--order",
        "2",
    ]);
    assert_eq!(doc.results["satisfies"], false);
    assert!(doc.results["counterexample"]["delta"].as_u64().is_some());

    let linear = file("n=2 m=1\n0\n1\n0\n1\n");
    let (doc, _) = json(&[
        "epc",
        linear.path().to_str().unwrap(),
        "--ell",
        "1",
        "--order",
        "0",
    ]);
    assert_eq!(doc.results["satisfies"], false);

    let bad = file("n=2 m=1\n0\n1\n");
    assert_eq!(
        dualdist(&[
            "epc",
            bad.path().to_str().unwrap(),
            "--ell",
            "1",
            "--order",
            "0"
        ])
        .status
        .code(),
        Some(1)
    );
    let mut huge = String::from("n=21 m=1\n");
    huge.push_str(&"0\n".repeat(1 << 21));
    let huge = file(&huge);
    assert_eq!(
        dualdist(&[
            "epc",
            huge.path().to_str().unwrap(),
            "--ell",
            "1",
            "--order",
            "0"
        ])
        .status
        .code(),
        Some(5)
    );
}

#[test]
fn epc_requirements() {
    let (doc, _) = json(&["epc-requirement", "--ell", "4", "--order", "4"]);
    assert_eq!(doc.results["min_input_length"], 32);
    let (doc, _) = json(&["epc-requirement", "--ell", "2", "--order", "2"]);
    assert_eq!(doc.results["min_input_length"], 12);
    // (6,6) is in the catalog, so the value is exact
    let (doc, _) = json(&["epc-requirement", "--ell", "5", "--order", "5"]);
    assert_eq!(doc.results["min_input_length"], 36);
    // no witness for (7,7): only an interval
    let (doc, _) = json(&[
        "epc-requirement",
        "--ell",
        "6",
        "--order",
        "6",
        "--methods",
        "singleton,griesmer,hamming,gv",
    ]);
    assert_eq!(doc.results["status"], "interval");
    let (lo, hi) = (
        doc.results["interval"][0].as_u64().unwrap(),
        doc.results["interval"][1].as_u64().unwrap(),
    );
    assert!(lo < hi && lo % 2 == 0 && hi % 2 == 0);
}

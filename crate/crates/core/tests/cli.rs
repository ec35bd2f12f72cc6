use icosa::cli::run_cli;
use serde_json::Value;

fn run(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("icosa").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn r_of_h_is_zero() {
    let (code, out, _) = run(&["r", "(x*y+1)*x^2*(x^2-1)*(x^2-4)"]);
    assert_eq!((code, out.trim()), (0, "0"));
    assert_eq!(run(&["r", "x^2*y^2"]).1.trim(), "1");
    assert_eq!(run(&["r", "-x^2"]).1.trim(), "-1");
}

#[test]
fn degree_too_high_exits_one() {
    let (code, out, err) = run(&["r", "x^5*y^4"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("degree 9"), "{err}");
}

#[test]
fn syntax_errors_exit_two() {
    let (code, _, err) = run(&["r", "x^^2"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 2"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["rtable", "--format", "yaml"]).0, 2);
    assert_eq!(run(&["rtable", "--bogus"]).0, 2);
    assert_eq!(run(&["mult"]).0, 2);
    assert_eq!(run(&["mult", "--k", "1", "--upto", "2"]).0, 2);
    assert_eq!(run(&["identities", "--only", "I99"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-all") && err.is_empty());
}

#[test]
fn rtable_formats() {
    let (code, text, _) = run(&["rtable"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(
        rows[1].split_whitespace().collect::<Vec<_>>(),
        ["0", "1", "0", "1", "0", "2", "0", "5", "0", "14"]
    );
    assert_eq!(rows[9].split_whitespace().collect::<Vec<_>>(), ["8", "14"]);
    let (_, csv, _) = run(&["rtable", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 46);
    assert!(csv.contains("\n5,3,4\n"));
    let rows = json(&["rtable", "--format", "json"]);
    assert_eq!(rows.as_array().unwrap().len(), 45);
}

#[test]
fn identities_json() {
    let rows = json(&["identities", "--format", "json"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    for row in rows {
        assert_eq!(row["pass"], Value::Bool(true));
        assert!(row["location"].is_string());
    }
    let one = json(&["identities", "--only", "i8", "--format", "json"]);
    assert_eq!(one[0]["id"], "I8");
}

#[test]
fn chartable_json() {
    let doc = json(&["chartable", "--format", "json"]);
    let sizes: Vec<u64> = doc["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [1, 1, 20, 20, 30, 12, 12, 12, 12]);
    assert_eq!(doc["characters"][1]["values"][5], "phi");
    assert_eq!(doc["characters"][2]["values"][5], "phibar");
    let (_, csv, _) = run(&["chartable", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn multiplicity_rows() {
    let row = json(&["mult", "--k", "5"]);
    assert_eq!(row["m"], serde_json::json!([0, 0, 0, 0, 0, 0, 0, 0, 1]));
    assert_eq!(row["degree"], 6);
    let rows = json(&["mult", "--upto", "10"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row["k"], k);
        assert_eq!(row["degree"], k + 1);
    }
}

#[test]
fn pik_lists_atoms() {
    let doc = json(&["pik", "--k", "5"]);
    assert_eq!(doc["degree"], 6);
    assert_eq!(doc["atoms"].as_array().unwrap().len(), 9);
    assert_eq!(doc["atoms"][8], "pi x sym2 pi'");
    assert_eq!(doc["mult"][8], 1);
}

#[test]
fn densities_json() {
    let rows = json(&["densities", "--format", "json"]);
    let dens: Vec<&str> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["density"].as_str().unwrap())
        .collect();
    assert_eq!(
        dens,
        ["1/4", "1/6", "1/6", "1/120", "1/120", "1/10", "1/10", "1/10", "1/10"]
    );
}

#[test]
fn simulate_schema() {
    let doc = json(&[
        "simulate", "--x", "10000", "--seed", "7", "--f", "1", "--f", "x^2*y^2", "--format", "json",
    ]);
    assert_eq!(doc["pi_x"], 1229);
    let keys: Vec<&String> = doc["densities"].as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["0", "1", "-1", "2", "-2", "phi", "-phi", "phibar", "-phibar"]
    );
    let ps = doc["partial_sums"].as_array().unwrap();
    assert_eq!(ps.len(), 2);
    assert_eq!(ps[1]["f"], "x^2*y^2");
    assert_eq!(ps[1]["target"], 1.0);
    let args = ["simulate", "--x", "10000", "--seed", "7", "--format", "json"];
    assert_eq!(json(&args), json(&args));
    assert_eq!(run(&["simulate", "--x", "100", "--f", "x^9"]).0, 1);
    assert_eq!(run(&["simulate", "--x", "100", "--f", "x^"]).0, 2);
}

#[test]
fn verify_all_passes() {
    let doc = json(&["verify-all"]);
    assert_eq!(doc["pass"], true);
    let names: Vec<&str> = doc["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "golden",
            "bipoly",
            "rescalc",
            "identities",
            "icosagroup",
            "isobaric",
            "frobsim"
        ]
    );
    assert!(doc["sections"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["pass"] == true));
}

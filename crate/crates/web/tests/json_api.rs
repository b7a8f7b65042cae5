use chring_web::{catalog_json, gorenstein, hilbert, local_cohomology};
use serde_json::{json, Value};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("valid JSON")
}

#[test]
fn catalog_lists_pairs_with_codimension() {
    let c = parse(catalog_json());
    let pairs = c["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 20);
    assert!(pairs.contains(&json!({"pair": "SU(3)>SU(2)", "codim": 5})));
    assert!(c["groups"].as_array().unwrap().iter().any(|g| g["name"] == "T2"));
}

#[test]
fn gorenstein_shift_is_the_codimension() {
    for (pair, shift) in [("SO(2)>1", 1), ("U(2)>T2", 2), ("SU(3)>SU(2)", 5)] {
        let v = parse(gorenstein(pair));
        assert_eq!(v["detected"], shift, "{pair}");
        assert_eq!(v["matches"], true, "{pair}");
    }
}

#[test]
fn unknown_pair_is_an_error() {
    let v = parse(gorenstein("G2>T2"));
    assert!(v["error"].as_str().unwrap().contains("G2>T2"));
}

#[test]
fn local_cohomology_of_a_polynomial_ring() {
    let v = parse(local_cohomology(r#"{"ring": "SO(2)", "window": "-6:2"}"#));
    assert_eq!(v["agree"], true);
    assert_eq!(v["koszul"][0], json!([0, 0, 0, 0, 0, 0, 0, 0, 0]));
    assert_eq!(v["koszul"][1], json!([1, 0, 1, 0, 1, 0, 0, 0, 0]));
    assert_eq!(v["duality"], v["koszul"]);
    assert!(v["certified_entries"].as_u64().unwrap() > 0);
}

#[test]
fn local_cohomology_of_a_torsion_module() {
    let req = r#"{"module": {"ring": "T2", "generators": [0, 2], "relations": [["t1", "0"], ["t2", "0"]]},
                  "window": "-6:6"}"#;
    let v = parse(local_cohomology(req));
    assert_eq!(v["agree"], true);
    assert_eq!(v["koszul"][0][6], 1);
}

#[test]
fn hilbert_series_closed_form() {
    let req = r#"{"module": {"ring": "U(2)", "generators": [0], "relations": [["c1^2"]]}, "window": "0:12"}"#;
    let v = parse(hilbert(req));
    assert_eq!(v["dims"], json!([1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]));
    assert_eq!(v["consistent"], true);
    assert_eq!(v["closed_form"]["numerator"], json!({"0": 1, "4": -1}));
}

#[test]
fn bad_requests_are_errors() {
    for req in [
        "not json",
        r#"{"window": "0:4"}"#,
        r#"{"ring": "E8"}"#,
        r#"{"ring": "T2", "window": "4:0"}"#,
        r#"{"ring": "T2", "window": "-100:100"}"#,
        r#"{"module": {"ring": "T2", "generators": [0], "relations": [["t1 +"]]}}"#,
    ] {
        let v = parse(hilbert(req));
        assert!(v["error"].is_string(), "{req}: {v}");
    }
}

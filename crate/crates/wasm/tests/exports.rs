use hyperturan_wasm::{entropy_json, generate_report, lagrangian_report};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn generate_and_check() {
    let v = parse(&generate_report("turan", 6, 3, "tfam").unwrap());
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 8);
    assert_eq!(v["free"], true);
    let v = parse(&generate_report("t", 3, 1, "tfam").unwrap());
    assert_eq!(v["free"], false);
    assert!(v["witness"].is_array());
    assert!(generate_report("petersen", 0, 0, "tfam").is_err());
    assert!(generate_report("fano", 0, 0, "nope").is_err());
}

#[test]
fn lagrangian_of_fano() {
    let hg = parse(&generate_report("fano", 0, 0, "tfam").unwrap())["hg"]
        .as_str()
        .unwrap()
        .to_string();
    let v = parse(&lagrangian_report(&hg, 8).unwrap());
    assert_eq!(v["result"]["exact_value"], "1/27");
    assert_eq!(v["result"]["certified"], true);
    let big = "3 13\n1 2 3\n";
    assert!(lagrangian_report(big, 8).is_err());
}

#[test]
fn entropy_of_an_edge() {
    let v = parse(&entropy_json("2 2\n1 2\n", "0.25\n0.75\n").unwrap());
    let h = v["report"]["prefix_entropies"].as_array().unwrap();
    assert!((h[0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(entropy_json("2 2\n1 2\n", "1\n").is_err());
}

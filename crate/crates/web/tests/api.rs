use qh_web::{orbit, ring_info, span_info};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn ring_info_gr25() {
    let v = parse(ring_info("gr:2,5"));
    assert_eq!(v["delta"], "5*q*(1) + 10*(3,3)");
    assert_eq!(v["formulas_agree"], true);
}

#[test]
fn orbit_quadric4() {
    let v = parse(orbit("quadric:4", "unit", 40));
    assert_eq!(v["closed"], false);
    assert_eq!(v["limit_points"], serde_json::json!(["[1 + s4]"]));
    let v = parse(orbit("pn:2", "unit", 20));
    assert_eq!(v["states"].as_array().unwrap().len(), 3);
}

#[test]
fn span_gr26() {
    let v = parse(span_info("gr:2,6"));
    assert_eq!(v["dim_f"], 9);
    assert_eq!(v["bound"], 9);
    assert_eq!(v["a_positive_definite"], true);
}

#[test]
fn errors_are_json() {
    assert_eq!(parse(ring_info("nope"))["error"]["kind"], "parse");
    assert_eq!(parse(orbit("pn:2", "zz", 5))["error"]["kind"], "parse");
    assert_eq!(parse(span_info("fci:3;r=3"))["a_matrix"], Value::Null);
}

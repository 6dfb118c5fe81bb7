use qfano_web::{rr_json, search_json, wps_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn rr_table_for_index_five() {
    let v = parse(rr_json("2:1", 5, "", -6, 5));
    assert_eq!(v["l_cubed"], "1/2");
    assert_eq!(v["degree"], "125/2");
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 12);
    let at = |t: i64| pts.iter().find(|p| p["t"] == t).unwrap();
    assert_eq!(at(2)["chi"], "7");
    assert_eq!(at(2)["dim"], 6);
    assert_eq!(at(-1)["chi"], "0");
    assert_eq!(at(-6)["chi_value"], -3.0);
    assert!(at(0)["dim"].is_null());
}

#[test]
fn rr_rejects_bad_input() {
    assert!(rr_json("2:1", 2, "", 1, 2).is_err());
    assert!(rr_json("4:2", 5, "", 1, 2).is_err());
    assert!(rr_json("2:1", 5, "x", 1, 2).is_err());
    assert!(rr_json("2:1", 5, "", 3, 1).is_err());
    assert!(rr_json("2:1", 5, "", 0, 1000).is_err());
    let v = parse(rr_json("3:1", 2, "25/3", 1, 2));
    assert_eq!(v["points"][0]["dim"], 9);
}

#[test]
fn wps_scan_lists_seven() {
    let v = parse(wps_json(30));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[1]["weights"], serde_json::json!([1, 1, 1, 2]));
    assert_eq!(rows[1]["antican_dim"], 33);
    assert!(wps_json(1000).is_err());
}

#[test]
fn search_by_threshold() {
    let v = parse(search_json("250/3", 4, false));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["label"], "(2, 6)");
    assert_eq!(rows[0]["dims"], serde_json::json!([2, 7, 15, 27, 43]));
    assert!(search_json("0", 4, false).is_err());
    assert!(search_json("abc", 4, false).is_err());
}

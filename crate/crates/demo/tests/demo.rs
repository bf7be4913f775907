use ncforest_demo::{bound_point_json, construction_json, counts_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn tree_counts() {
    let v = parse(counts_json("TREES", 1, 5).unwrap());
    assert_eq!(v["counts"], serde_json::json!(["1", "1", "3", "12", "55"]));
    assert!(counts_json("TREES", 5, 1).is_err());
    assert!(counts_json("SHRUBS", 1, 5).is_err());
}

#[test]
fn quoted_tree_point() {
    let v = parse(bound_point_json("lb-trees", 0.267, 0.267, 0.0).unwrap());
    assert!((v["base"].as_f64().unwrap() - 12.5232).abs() < 1e-3);
    assert!(bound_point_json("lb-trees", 0.5, 0.1, 0.0).is_err());
}

#[test]
fn constructions_draw_spanning_trees() {
    for index in [0, 17, 100] {
        let v = parse(construction_json("tree", 2, index).unwrap());
        assert_eq!(v["edges"].as_array().unwrap().len(), 3);
        assert_eq!(v["points"].as_array().unwrap().len(), 4);
    }
    assert!(construction_json("tree", 4, 0).is_err());
}

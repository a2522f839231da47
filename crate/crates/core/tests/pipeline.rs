use eigenloc::pipeline::{apply_override, run, ErrorClass, RunConfig, Subcommand};
use serde_json::json;

#[test]
fn config_round_trips_through_json() {
    let text = r#"{"manifold": "torus", "n": 2, "degrees": {"start": 1, "end": 9, "step": 2},
                   "cover": {"eps": 0.1, "anchor": "corner"}, "seed": 7}"#;
    let cfg = RunConfig::from_json(text).unwrap();
    let again = RunConfig::from_json(&cfg.to_json()).unwrap();
    assert_eq!(cfg.to_json(), again.to_json());
    assert_eq!(cfg.degree_list().unwrap(), vec![1, 3, 5, 7, 9]);
}

#[test]
fn overrides_create_nested_fields() {
    let mut doc = json!({"n": 3});
    apply_override(&mut doc, "grid.step=0.25").unwrap();
    apply_override(&mut doc, "manifold=torus").unwrap();
    apply_override(&mut doc, "degrees=[1,3]").unwrap();
    assert_eq!(doc, json!({"n": 3, "grid": {"step": 0.25}, "manifold": "torus", "degrees": [1, 3]}));
    assert!(apply_override(&mut doc, "no-equals").is_err());
}

#[test]
fn subcommand_names_round_trip() {
    for s in Subcommand::ALL {
        assert_eq!(Subcommand::parse(s.name()), Some(s));
    }
    assert_eq!(Subcommand::parse("plot"), None);
}

#[test]
fn missing_target_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig::from_json(r#"{"degree": 20}"#).unwrap();
    let e = run(Subcommand::Synthesize, &cfg, Some(dir.path())).unwrap_err();
    assert_eq!(e.class, ErrorClass::Validation);
    assert_eq!(e.exit_code(), 2);
    assert!(dir.path().join("error.json").exists());
}

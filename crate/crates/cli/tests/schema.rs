use semifact_cli::{GraphDocument, Report, GRAPH_SCHEMA, REPORT_SCHEMA};

fn generated<T: schemars::JsonSchema>() -> String {
    serde_json::to_string_pretty(&schemars::schema_for!(T)).unwrap() + "\n"
}

/// The shipped schema files match the types. Run with `SEMIFACT_BLESS=1` to
/// rewrite them after changing the types.
#[test]
fn shipped_schemas_are_current() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schema");
    for (file, shipped, fresh) in [
        ("graph.schema.json", GRAPH_SCHEMA, generated::<GraphDocument>()),
        ("report.schema.json", REPORT_SCHEMA, generated::<Report>()),
    ] {
        if std::env::var_os("SEMIFACT_BLESS").is_some() {
            std::fs::write(dir.join(file), &fresh).unwrap();
        } else {
            assert_eq!(shipped, fresh, "{file} is stale; rerun with SEMIFACT_BLESS=1");
        }
    }
}

//! Shared helpers for the CLI test suites: binary invocation and a small
//! JSON Schema checker covering the subset the published schemas use
//! (type, properties, required, additionalProperties: false, items, enum,
//! oneOf).
#![allow(dead_code)] // each test binary uses a different subset

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

pub fn deleg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deleg"))
}

pub fn run(args: &[&str]) -> Output {
    deleg()
        .args(args)
        .env_remove("DELEG_FORMAT")
        .output()
        .expect("spawn deleg")
}

pub fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "deleg {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

pub fn run_json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).expect("JSON output")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Loads a shipped schema and checks the instance against it.
pub fn assert_schema(schema_name: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{schema_name}.schema.json"));
    let text =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()));
    let schema: Value = serde_json::from_str(&text).expect("schema parses");
    if let Err(err) = validate(&schema, instance, "$") {
        panic!("{schema_name}: {err}\ninstance: {instance:#}");
    }
}

pub fn validate(schema: &Value, instance: &Value, at: &str) -> Result<(), String> {
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let hits = options
            .iter()
            .filter(|option| validate(option, instance, at).is_ok())
            .count();
        if hits == 0 {
            return Err(format!("{at}: matched none of the oneOf branches"));
        }
        return Ok(());
    }

    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(instance) {
            return Err(format!("{at}: {instance} not in {allowed:?}"));
        }
        return Ok(());
    }

    if let Some(ty) = schema.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{at}: malformed schema type")),
        };
        if !names.iter().any(|name| type_matches(name, instance)) {
            return Err(format!("{at}: expected type {names:?}, got {instance}"));
        }
    }

    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        let Some(obj) = instance.as_object() else {
            return Ok(());
        };
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{at}: missing required key `{key}`"));
                }
            }
        }
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if !props.contains_key(key) {
                    return Err(format!("{at}: unexpected key `{key}`"));
                }
            }
        }
        for (key, sub) in props {
            if let Some(value) = obj.get(key) {
                validate(sub, value, &format!("{at}.{key}"))?;
            }
        }
    }

    if let Some(items) = schema.get("items") {
        if let Some(array) = instance.as_array() {
            for (i, element) in array.iter().enumerate() {
                validate(items, element, &format!("{at}[{i}]"))?;
            }
        }
    }

    Ok(())
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "number" => value.is_number(),
        "integer" => value.is_i64() || value.is_u64(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

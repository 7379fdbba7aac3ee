use std::path::Path;
use std::process::{Command, Output};

use regex::Regex;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepgamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Validates the keyword subset used by the shipped schemas: type, enum,
/// required, properties, additionalProperties, items, minItems, minimum,
/// pattern and local `$ref`s.
fn validate(v: &Value, s: &Value, root: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let target = r
            .strip_prefix("#/")
            .unwrap()
            .split('/')
            .fold(root, |node, key| &node[key]);
        return validate(v, target, root, path);
    }
    if let Some(t) = s.get("type") {
        let types: Vec<&str> = match t {
            Value::String(x) => vec![x.as_str()],
            Value::Array(xs) => xs.iter().filter_map(Value::as_str).collect(),
            _ => unreachable!(),
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            "integer" => v.is_i64() || v.is_u64(),
            "number" => v.is_number(),
            _ => false,
        });
        if !ok {
            return Err(format!("{path}: expected {types:?}, got {v}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return Err(format!("{path}: {v} not in {e:?}"));
        }
    }
    if let (Some(min), Some(x)) = (s.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            return Err(format!("{path}: {x} below {min}"));
        }
    }
    if let (Some(p), Some(x)) = (s.get("pattern").and_then(Value::as_str), v.as_str()) {
        if !Regex::new(p).unwrap().is_match(x) {
            return Err(format!("{path}: {x:?} does not match {p}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("{path}: missing {key}"));
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, x) in obj {
            let sub = format!("{path}.{k}");
            match props.and_then(|p| p.get(k)) {
                Some(ps) => validate(x, ps, root, &sub)?,
                None => match s.get("additionalProperties") {
                    Some(Value::Bool(false)) => return Err(format!("{sub}: not allowed")),
                    Some(extra @ Value::Object(_)) => validate(x, extra, root, &sub)?,
                    _ => {}
                },
            }
        }
    }
    if let Some(arr) = v.as_array() {
        if let Some(min) = s.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(items) = s.get("items") {
            for (i, x) in arr.iter().enumerate() {
                validate(x, items, root, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn check(name: &str, v: &Value) {
    let s = schema(name);
    validate(v, &s, &s, "$").unwrap_or_else(|e| panic!("{name}: {e}"));
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn gamma_reports() {
    let k5 = json_of(&["gamma", "--family", "K5"]);
    check("gamma-report", &k5);
    assert_eq!(strings(&k5["gamma"]), ["1", "12", "6"]);
    let c4 = json_of(&["gamma", "--family", "C4", "--method", "full"]);
    check("gamma-report", &c4);
    assert_eq!(strings(&c4["gamma"]), ["1", "2"]);
    assert_eq!(c4["method"], "full-enumeration");
    let pet = json_of(&["gamma", "--family", "Petersen", "--k", "2", "--order-seed", "9"]);
    check("gamma-report", &pet);
    assert_eq!(pet["order_seed"], 9);
}

#[test]
fn gamma_of_a_tree_from_an_edge_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.txt");
    std::fs::write(&path, "# a small tree\n1 2\n2 3\n2 4\n4 5\n").unwrap();
    let rep = json_of(&["gamma", "--edges", path.to_str().unwrap()]);
    check("gamma-report", &rep);
    assert_eq!(strings(&rep["gamma"]), ["1", "0", "0"]);
}

#[test]
fn classify_verdicts() {
    let k24 = json_of(&["classify", "--family", "K2,4"]);
    check("classify", &k24);
    assert_eq!(k24["gamma2_zero"], true);
    let c4 = json_of(&["classify", "--family", "C4"]);
    assert_eq!(c4["simple"], true);
    let c5 = json_of(&["classify", "--family", "C5"]);
    check("classify", &c5);
    assert_eq!(c5["simple"], false);
    let edge = json_of(&["classify", "--graph6", "A_"]);
    check("classify", &edge);
}

#[test]
fn contract_chain() {
    let o = run(&["contract", "5"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let rep = json_of(&["contract", "6", "--format", "json"]);
    check("contract-report", &rep);
    assert_eq!(rep["contractions"], 8);
    assert_eq!(rep["final_crosspolytope"], true);
    assert_eq!(run(&["contract", "3"]).status.code(), Some(2));
}

#[test]
fn sweep_is_clean() {
    let o = run(&["sweep", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 violations"));
    let rep = json_of(&["sweep", "4", "--format", "json"]);
    check("sweep-report", &rep);
}

#[test]
fn experiment_output() {
    let args = ["experiment", "beta=0.5", "n=10,14", "trials=4", "k=3", "seed=11"];
    let a = run(&args);
    let b = run(&["--threads", "1", "experiment", "--beta", "1/2", "--n", "10,14", "--trials", "4", "--k", "3", "--seed", "11"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    assert_eq!(
        csv.lines().next().unwrap(),
        "n,trial,seed,edges,connected,x3,x4,x5,x6,nf0,nf1,nf2,f0,f1,f2,g0,g1,g2,g3,millis"
    );
    assert_eq!(csv.lines().count(), 9);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    check("experiment", &json_of(&json_args));
}

#[test]
fn experiment_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"beta": 1.5, "n_values": [60], "trials": 5, "k": 1, "base_seed": 2}"#).unwrap();
    let o = run(&["experiment", "--config", path.to_str().unwrap(), "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n=60 trials=5"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gamma", "--family", "X9"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "--graph6", "~~"]).status.code(), Some(2));
    assert_eq!(run(&["gamma"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "--family", "K5", "--graph6", "A_"]).status.code(), Some(2));
    assert_eq!(
        run(&["gamma", "--family", "K7", "--method", "full", "--cap-faces", "10"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["experiment", "beta=0.5", "n=400", "k=3", "trials=1"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["experiment", "trials=0"]).status.code(), Some(2));
}

//! End-to-end checks of the command-line facade: documented exit codes,
//! byte-stable outputs and the golden subcommand results.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ordercraft"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    let mut child = bin()
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(stdin.as_bytes())
        .expect("stdin writable");
    child.wait_with_output().expect("binary exits")
}

const CHAIN: &str =
    r#"{"elements":["a","b","c"],"pairs":[["a","b"],["b","c"]],"mode":"covers"}"#;
const CYCLE: &str = r#"{"elements":["a","b"],"pairs":[["a","b"],["b","a"]],"mode":"covers"}"#;

#[test]
fn build_normalizes_and_is_byte_stable() {
    let a = run(&["poset", "build"], CHAIN);
    let b = run(&["poset", "build"], CHAIN);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("\"relation\""), "normalized output closes the relation");
    assert!(text.contains("[\n      \"a\",\n      \"c\"\n    ]") || text.contains("\"a\""));
}

#[test]
fn dot_emits_cover_edges_in_id_order() {
    let out = run(&["poset", "dot"], CHAIN);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let ab = text.find("\"a\" -> \"b\"").expect("first cover edge");
    let bc = text.find("\"b\" -> \"c\"").expect("second cover edge");
    assert!(ab < bc);
    assert!(!text.contains("\"a\" -> \"c\""));
}

#[test]
fn analyze_reports_width_two_for_diamond() {
    let diamond = r#"{"elements":["bot","a","b","top"],
        "pairs":[["bot","a"],["bot","b"],["a","top"],["b","top"]],"mode":"covers"}"#;
    let out = run(&["poset", "analyze"], diamond);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["width"], 2);
    assert_eq!(doc["antichain_rank"], 2);
    assert_eq!(doc["minimals"], serde_json::json!(["bot"]));
}

#[test]
fn exit_codes_match_documentation() {
    // 2: parse error
    let out = run(&["poset", "build"], "not json");
    assert_eq!(out.status.code(), Some(2));
    // 3: invariant violation (cycle)
    let out = run(&["poset", "build"], CYCLE);
    assert_eq!(out.status.code(), Some(3));
    // 4: cap exceeded
    let out = run(&["order", "downsets", "--cap", "2"], CHAIN);
    assert_eq!(out.status.code(), Some(4));
    // 0: success
    let out = run(&["order", "rado", "3"], "");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn env_cap_override_applies() {
    let mut child = bin();
    child.env("ORDERCRAFT_CAP", "2");
    let out = {
        use std::io::Write;
        let mut c = child
            .args(["order", "downsets"])
            .stdin(std::process::Stdio::piped())
            .stdout(std::process::Stdio::piped())
            .stderr(std::process::Stdio::piped())
            .spawn()
            .unwrap();
        c.stdin.as_mut().unwrap().write_all(CHAIN.as_bytes()).unwrap();
        c.wait_with_output().unwrap()
    };
    assert_eq!(out.status.code(), Some(4), "env cap must bound the construction");
}

#[test]
fn order_subcommands_produce_expected_sizes() {
    // rado 4 -> 10 pairs
    let out = run(&["order", "rado", "4"], "");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 10);

    // powerdom of the 2-chain -> 3 classes
    let two = r#"{"elements":["0","1"],"pairs":[["0","1"]],"mode":"covers"}"#;
    let out = run(&["order", "powerdom"], two);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 3);

    // downsets of the 2-chain -> 3-chain
    let out = run(&["order", "downsets"], two);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 3);

    // sequences of length <= 2 over a singleton -> 3-chain
    let one = r#"{"elements":["p"],"pairs":[],"mode":"covers"}"#;
    let out = run(&["order", "seqembed", "--len", "2"], one);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 3);
}

#[test]
fn ds_fragment_over_linear_index_matches_antilex_shape() {
    let family = r#"{
        "index": {"elements":["lo","hi"],"pairs":[["lo","hi"]],"mode":"covers"},
        "components": {
            "lo": {"poset":{"elements":["0","1"],"pairs":[["0","1"]],"mode":"covers"},"zero":"0"},
            "hi": {"poset":{"elements":["0","1"],"pairs":[["0","1"]],"mode":"covers"},"zero":"0"}
        }
    }"#;
    let out = run(&["order", "ds"], family);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // four vectors forming a linear (antilex) order: 3 + 2 + 1 strict pairs
    assert_eq!(doc["elements"].as_array().unwrap().len(), 4);
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 6);
}

#[test]
fn barrier_subcommands_reproduce_goldens() {
    let singles = r#"{"base":[0,1,2,3,4],"blocks":[[0],[1],[2],[3],[4]]}"#;
    let out = run(&["barrier", "square"], singles);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["blocks"].as_array().unwrap().len(), 10, "square of singletons is the pairs");

    // the successive-sequence golden
    let pairs: Vec<Vec<u32>> = (0u32..=20)
        .flat_map(|a| (a + 1..=20).map(move |b| vec![a, b]))
        .collect();
    let barrier = serde_json::json!({"base": (0u32..=20).collect::<Vec<_>>(), "blocks": pairs});
    let out = run(
        &["barrier", "successive", "--from", "3,7", "--to", "16,20"],
        &barrier.to_string(),
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc, serde_json::json!(["3,7", "7,16", "16,20"]));
}

#[test]
fn classify_flags_the_rado_array_bad() {
    // assemble the rado array document for N = 4
    let n = 4u32;
    let blocks: Vec<Vec<u32>> = (0..n)
        .flat_map(|a| (a + 1..=n).map(move |b| vec![a, b]))
        .collect();
    let elements: Vec<String> = (0..n)
        .flat_map(|a| (a + 1..=n).map(move |b| format!("({a},{b})")))
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if i == j {
                continue;
            }
            let parse = |s: &str| -> (u32, u32) {
                let inner = &s[1..s.len() - 1];
                let (x, y) = inner.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            };
            let (pa, pb) = (parse(a), parse(b));
            if (pa.0 == pb.0 && pa.1 <= pb.1) || pa.1 < pb.0 {
                pairs.push(serde_json::json!([a, b]));
            }
        }
    }
    let values: serde_json::Map<String, serde_json::Value> = blocks
        .iter()
        .map(|blk| {
            (
                format!("{},{}", blk[0], blk[1]),
                serde_json::json!(format!("({},{})", blk[0], blk[1])),
            )
        })
        .collect();
    let doc = serde_json::json!({
        "barrier": {"base": (0u32..=n).collect::<Vec<_>>(), "blocks": blocks},
        "target": {"elements": elements, "pairs": pairs, "mode": "relation"},
        "values": values,
    });
    let out = run(&["barrier", "classify"], &doc.to_string());
    assert!(out.status.success(), "{out:?}");
    let verdict: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict["verdict"], "BAD");
    assert_eq!(verdict["perfect"], false);
}

#[test]
fn cover_reports_verdict_with_certificate() {
    let net = r#"{"dimension":2,"transitions":[
        {"guard":[1,0],"delta":[-1,1]},
        {"guard":[0,1],"delta":[1,-1]}]}"#;
    let out = run(&["cover", "--init", "1,0", "--target", "0,1"], net);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "Coverable");
    assert_eq!(doc["firing"], serde_json::json!([0]));
    assert_eq!(doc["markings"][1], serde_json::json!([0, 1]));

    let shrink = r#"{"dimension":1,"transitions":[{"guard":[1],"delta":[-1]}]}"#;
    let out = run(&["cover", "--init", "0", "--target", "5"], shrink);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "NotCoverable");
    assert_eq!(doc["firing"], serde_json::Value::Null);
}

#[test]
fn suite_exit_codes() {
    // a green run exits 0; the failure path (exit 5) is exercised through
    // the injected mutant in the acceptance suite
    let out = run(&["suite", "core", "--seed", "1", "--budget", "5"], "");
    assert_eq!(out.status.code(), Some(0));
    // unknown suite names are parse errors
    let out = run(&["suite", "nonsense"], "");
    assert_eq!(out.status.code(), Some(2));
}

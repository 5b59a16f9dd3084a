use std::fs;
use std::path::PathBuf;

use orbit_atlas::exactla::{parse_rational, ExtVector};
use orbit_atlas::io::{parse_dot, parse_hasse_json, parse_tangent_json};
use orbit_atlas::rootsys::DynkinType;

fn corpus(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

/// Seed plus truncations and single-byte edits, fed to a parser that must not panic.
fn mutations(data: &[u8]) -> Vec<Vec<u8>> {
    let mut out = vec![data.to_vec()];
    for cut in (0..data.len()).step_by(data.len() / 16 + 1) {
        out.push(data[..cut].to_vec());
        for b in [b'"', b'{', b'-', b'9', 0xff] {
            let mut m = data.to_vec();
            m[cut] = b;
            out.push(m);
        }
    }
    out
}

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

#[test]
fn rational_seeds() {
    for (name, data) in corpus("rational") {
        let ok = parse_rational(text(&data).unwrap()).is_ok();
        assert_eq!(ok, name != "zero_denominator", "{name}");
        for m in mutations(&data) {
            if let Some(s) = text(&m) {
                let _ = parse_rational(s);
            }
        }
    }
}

#[test]
fn dynkin_seeds() {
    for (name, data) in corpus("dynkin") {
        let ok = text(&data).unwrap().parse::<DynkinType>().is_ok();
        assert_eq!(ok, !matches!(name.as_str(), "Z9" | "E9"), "{name}");
        for m in mutations(&data) {
            if let Some(s) = text(&m) {
                let _ = s.parse::<DynkinType>();
            }
        }
    }
}

#[test]
fn tangent_json_seeds() {
    for (name, data) in corpus("tangent_json") {
        assert_eq!(parse_tangent_json(&data).is_ok(), name != "asymmetric.json", "{name}");
        for m in mutations(&data) {
            let _ = parse_tangent_json(&m);
        }
    }
}

#[test]
fn hasse_json_seeds() {
    for (name, data) in corpus("hasse_json") {
        assert!(parse_hasse_json(&data).is_ok(), "{name}");
        for m in mutations(&data) {
            let _ = parse_hasse_json(&m);
        }
    }
}

#[test]
fn ext_json_seeds() {
    for (name, data) in corpus("ext_json") {
        assert!(serde_json::from_slice::<ExtVector>(&data).is_ok(), "{name}");
        for m in mutations(&data) {
            let _ = serde_json::from_slice::<ExtVector>(&m);
        }
    }
}

#[test]
fn dot_seeds() {
    for (name, data) in corpus("dot") {
        let g = parse_dot(text(&data).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(g.is_dag(), name != "cycle.dot", "{name}");
        for m in mutations(&data) {
            if let Some(s) = text(&m) {
                let _ = parse_dot(s);
            }
        }
    }
}

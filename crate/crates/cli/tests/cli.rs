use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use orbit_atlas::io::{parse_dot, parse_hasse_json};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-atlas"))
        .args(args)
        .arg("--output-dir")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn cominuscule_lagrangian_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["cominuscule", "--type", "C", "--rank", "4", "--node", "4"], dir.path());
    assert!(out.status.success());
    let dot = parse_dot(&read(dir.path(), "C4_node4.dot")).unwrap();
    assert_eq!(dot.nodes.len(), 6);
    assert_eq!(dot.edges.len(), 6);
    assert!(dot.is_dag());
    let tsv = read(dir.path(), "C4_node4.tsv");
    assert_eq!(tsv.lines().count(), 7);
    let json: serde_json::Value = serde_json::from_str(&read(dir.path(), "C4_node4.json")).unwrap();
    assert_eq!(json["family"]["d"], 4);
    assert_eq!(json["poset"]["nodes"].as_array().unwrap().len(), 6);
}

#[test]
fn cominuscule_grassmannian_decomposition_dim() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["cominuscule", "--type", "A", "--rank", "5", "--node", "2"], dir.path()).status.success());
    let tsv = read(dir.path(), "A5_node2.tsv");
    let header: Vec<&str> = tsv.lines().next().unwrap().split('\t').collect();
    let col = header.iter().position(|&h| h == "decomposition_locus_dim").unwrap();
    let row = tsv.lines().find(|l| l.starts_with("Sigma2\t")).unwrap();
    assert_eq!(row.split('\t').nth(col), Some("4"));
}

#[test]
fn non_cominuscule_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["cominuscule", "--type", "C", "--rank", "4", "--node", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m_k(rho) = 2"));
}

#[test]
fn isotropic_tables() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["isotropic", "--n", "4", "--k", "3"], dir.path()).status.success());
    let tsv = read(dir.path(), "IG_3_8_orbits.tsv");
    let mut dims: Vec<u32> = tsv.lines().skip(1).map(|l| l.split('\t').nth(4).unwrap().parse().unwrap()).collect();
    dims.sort();
    assert_eq!(dims, [0, 4, 5, 6, 8, 9, 9, 11, 12]);
    for name in ["IG_3_8_hasse.dot", "IG_3_8_tangential.dot"] {
        assert!(parse_dot(&read(dir.path(), name)).unwrap().is_dag(), "{name}");
    }
    let hasse = parse_hasse_json(read(dir.path(), "IG_3_8_hasse.json").as_bytes()).unwrap();
    assert_eq!(hasse.edge_count(), 10);

    assert!(run(&["isotropic", "--n", "5", "--k", "3"], dir.path()).status.success());
    assert_eq!(read(dir.path(), "IG_3_10_orbits.tsv").lines().count(), 13);
}

#[test]
fn isotropic_out_of_range_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["isotropic", "--n", "4", "--k", "4"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["isotropic", "--n", "4", "--k", "1"], dir.path()).status.code(), Some(2));
}

#[test]
fn classify_reads_tangent_json() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"n": 4, "k": 3,
        "sigma": [["1","0","0"],["0","1/2","0"],["0","0","0"]],
        "h": [["0","0"],["0","0"],["1","0"]]}"#;
    let input = dir.path().join("x.json");
    fs::write(&input, doc).unwrap();
    let out = run(&["classify", "--input", input.to_str().unwrap()], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit"], serde_json::json!([2, 1, 1]));
    assert_eq!(v["dim"], 11);

    fs::write(&input, r#"{"n": 4, "k": 3, "sigma": [["1"]], "h": []}"#).unwrap();
    assert_eq!(run(&["classify", "--input", input.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn verify_passes_and_detects_fault() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--seed", "42"], dir.path());
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "verify_report.json")).unwrap();
    assert_eq!(report["passed"], true);

    let out = run(&["verify", "--inject-fault", "dim-sign", "--families", "isotropic"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims = report["suites"].as_array().unwrap().iter().find(|s| s["name"] == "dimensions").unwrap();
    assert!(dims["counterexample"].is_object());

    let out = run(&["verify", "--families", "cominuscule", "--max-rank", "8"], dir.path());
    assert!(out.status.success());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        let out = Command::new(env!("CARGO_BIN_EXE_orbit-atlas"))
            .args(["sweep", "--max-rank", "6", "--max-n", "4", "--seed", "7"])
            .arg("--output-dir")
            .arg(dir)
            .env("ORBIT_ATLAS_THREADS", "3")
            .output()
            .unwrap();
        assert!(out.status.success());
        assert!(run(&["verify", "--seed", "7", "--samples", "5"], dir).status.success());
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() > 20);
    for name in names {
        let (x, y) = (fs::read(a.path().join(&name)).unwrap(), fs::read(b.path().join(&name)).unwrap());
        assert_eq!(x, y, "{name:?}");
    }
}

#[test]
fn every_emitted_dot_is_a_dag() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["sweep", "--max-rank", "8", "--max-n", "5", "--emit", "dot"], dir.path()).status.success());
    let mut count = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "dot") {
            let g = parse_dot(&fs::read_to_string(&path).unwrap()).unwrap();
            assert!(g.is_dag(), "{}", path.display());
            assert!(g.nodes.iter().all(|n| n.label.as_deref().is_some_and(|l| l.contains("dim")) || !path.to_string_lossy().contains("hasse")));
            count += 1;
        }
    }
    assert!(count > 40);
}

#[test]
fn bad_thread_count_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_orbit-atlas"))
        .args(["isotropic", "--n", "3", "--k", "2", "--output-dir"])
        .arg(dir.path())
        .env("ORBIT_ATLAS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

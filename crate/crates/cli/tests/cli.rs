use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use hochschild_cli::format::{to_pretty, AlgebraFile, BimoduleFile, CochainFile, ExtensionFile, ModuleFile};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hochschild"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let value = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (out.status.code().unwrap(), value, stderr)
}

fn ok(args: &[&str]) -> Value {
    let (code, v, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    v
}

#[test]
fn hh_examples() {
    let v = ok(&["hh", "dual_numbers_f2.json", "--degree", "2"]);
    assert_eq!((v["free_rank"].as_u64(), v["torsion"].as_array().unwrap().len()), (Some(2), 0));
    let v = ok(&["hh", "dual_numbers_Z.json", "--degree", "2"]);
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["torsion"], serde_json::json!(["2"]));
    let v = ok(&["hh", "scalar_ring.json", "--degree", "5"]);
    assert_eq!(v["free_rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([]));
}

#[test]
fn hh_paths_and_coefficients() {
    for flag in ["--normalized", "--unnormalized"] {
        let v = ok(&["hh", "dual_numbers_Z.json", "--degree", "2", flag]);
        assert_eq!(v["display"], "k + k/2");
    }
    // HCdim 1
    let v = ok(&["hh", "upper_triangular_q.json", "enveloping", "--degree", "2"]);
    assert_eq!(v["free_rank"], 0);
    let v = ok(&["hh", "dual_numbers_f2.json", "regular_dual_f2.json", "--degree", "1", "--representatives"]);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
    let v = ok(&["hh", "m2_q.json", "--homology", "--degree", "0"]);
    assert_eq!(v["free_rank"], 1);
}

#[test]
fn analyze_examples() {
    let v = ok(&["analyze", "m2_q.json"]);
    assert_eq!(v["separability"]["separable"], true);
    assert_eq!(v["hcdim"]["proved_upper"], 0);

    let v = ok(&["analyze", "zxz.json"]);
    assert_eq!(v["quasi_free"]["quasi_free"], true);

    let v = ok(&["analyze", "dual_numbers_q.json", "--cap", "2"]);
    assert_eq!(v["quasi_free"]["quasi_free"], false);
    let cocycle = &v["quasi_free"]["witness"]["cocycle"];
    assert!(cocycle.as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).any(|x| x != "0"));
    assert_eq!(v["hcdim"]["proved_upper"], ">2");
}

#[test]
fn extension_examples() {
    let v = ok(&["extensions", "dual_numbers_f2.json", "regular_dual_f2.json", "--enumerate"]);
    assert_eq!(v["classes"], 4);
    let v = ok(&["extensions", "dual_numbers_f2.json", "regular", "--lift", "trivial_dual_f2.json"]);
    assert_eq!(v["lift"], true);
    let v = ok(&["extensions", "dual_numbers_f2.json", "--lift", "nontrivial_dual_f2.json"]);
    assert_eq!(v["lift"], false);
    let v = ok(&["extensions", "dual_numbers_f2.json", "--class", "coboundary_dual_f2.json"]);
    assert_eq!(v["cohomologous_to_zero"], true);
    assert!(v["zeta"].is_array());
    let v = ok(&["extensions", "dual_numbers_f2.json", "--class", "cocycle_dual_f2.json"]);
    assert_eq!(v["cohomologous_to_zero"], false);
}

#[test]
fn koszul_examples() {
    let v = ok(&["koszul", "--vars", "2", "--ring", "Z", "--cap", "3"]);
    assert_eq!(v["ranks"], serde_json::json!([1, 2, 1, 0]));
    assert_eq!(v["flat_dimension"], 2);
    assert_eq!(v["resolution_verified"], true);

    let v = ok(&["koszul", "scalar_ring.json", "--sequence", "2;3"]);
    assert_eq!(v["fails_at"], 2);
    let v = ok(&["koszul", "scalar_ring.json", "--sequence", "2", "--module", "z_mod_2.json"]);
    assert_eq!(v["flat_dimension"], 1);
    let v = ok(&["koszul", "scalar_ring.json", "--sequence", "2", "--quotient", "2"]);
    assert_eq!(v["tor"][1]["display"], "k/2");
}

#[test]
fn bound_examples() {
    let v = ok(&["bound", "--fd", "2", "--Dk", "1", "--fdk", "0"]);
    assert_eq!(v["bound"], "HCdim ≥ 1");
    assert_eq!(v["not_quasi_free"], false);
    let v = ok(&["bound", "--fd", "0", "--Dk", "0"]);
    assert_eq!(v["bound"], "HCdim ≥ 0");
    let v = ok(&["bound", "--fd", "3", "--ring", "Z"]);
    assert_eq!(v["not_quasi_free"], true);
}

#[test]
fn failures_have_codes_and_json() {
    let (code, _, err) = run(&["hh", "no_such_file.json"]);
    assert_eq!(code, 2);
    let e: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(e["stage"], "parse");

    // 𝔅(1, 1) = 1 alone: δ𝔅(x, 1, 1) = x
    let dir = std::env::temp_dir().join(format!("hochschild-cli-bad-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    fs::write(&bad, r#"{"cochain": [["1","0","0","0"],["0","0","0","0"]]}"#).unwrap();
    let (code, _, err) = run(&["extensions", "dual_numbers_q.json", "--class", bad.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("cocycle"), "{err}");
    fs::remove_dir_all(dir).unwrap();

    let (code, _, err) = run(&["--guard", "10", "hh", "m2_q.json", "--degree", "2"]);
    assert_eq!(code, 3);
    assert!(err.contains("size guard"));
}

#[test]
fn output_flag_writes_report() {
    let dir = std::env::temp_dir().join(format!("hochschild-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, stdout, _) = run(&["hh", "dual_numbers_q.json", "--degree", "1", "--output", path.to_str().unwrap()]);
    assert_eq!((code, stdout), (0, Value::Null));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["free_rank"], 1);
    fs::remove_dir_all(dir).unwrap();
}

fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> String {
    to_pretty(&serde_json::from_str::<T>(text).unwrap())
}

#[test]
fn bundled_fixtures_round_trip() {
    let (code, v, err) = run(&["fixtures", ".", "--check"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["checked"], 17);

    let mut seen = 0;
    for entry in fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let again = if name.starts_with("regular_") {
            let b: BimoduleFile = serde_json::from_str(&text).unwrap();
            let alg = b.algebra_file(&fixtures()).unwrap().load().unwrap();
            match alg {
                hochschild_cli::format::AnyAlgebra::Fp(a) => b.to_bimodule(&a).map(|_| ()).unwrap(),
                other => panic!("unexpected {other:?}"),
            }
            round_trip::<BimoduleFile>(&text)
        } else if name.starts_with("cocycle_") || name.starts_with("coboundary_") {
            round_trip::<CochainFile>(&text)
        } else if name.contains("trivial_") {
            round_trip::<ExtensionFile>(&text)
        } else if name == "z_mod_2.json" {
            round_trip::<ModuleFile>(&text)
        } else {
            let a: AlgebraFile = serde_json::from_str(&text).unwrap();
            let reloaded = match a.load().unwrap() {
                hochschild_cli::format::AnyAlgebra::Z(x) => AlgebraFile::from_algebra(&x),
                hochschild_cli::format::AnyAlgebra::Q(x) => AlgebraFile::from_algebra(&x),
                hochschild_cli::format::AnyAlgebra::Fp(x) => AlgebraFile::from_algebra(&x),
            };
            assert_eq!(reloaded, a, "{name}");
            to_pretty(&reloaded)
        };
        assert_eq!(again, text, "{name}");
        seen += 1;
    }
    assert_eq!(seen, 17);
}

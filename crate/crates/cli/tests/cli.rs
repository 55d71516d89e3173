use std::process::{Command, Output};

use flagfix::algebra::{field_make, Mat};
use flagfix::building::Ambient;
use flagfix::grouplat::{GroupSpec, DEFAULT_AMBIENT_CAP};
use flagfix::theorems::find_centre;

fn flagfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagfix")).args(args).env_remove("FLAGFIX_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn complex_examples() {
    let o = flagfix(&["complex", "--q", "2", "--n", "2", "--gens", "1,1;0,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("X^H: 1 vertex (⟨e1⟩)"));

    let o = flagfix(&["complex", "--q", "2", "--n", "3", "--gens", "1,0,0;0,1,0;0,0,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["simplices"], 35);
    assert_eq!(v["simplex_counts"], serde_json::json!([14, 21]));

    let o = flagfix(&["complex", "--q", "2", "--gens", "1,1;1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular"));
}

#[test]
fn crcheck_examples() {
    assert!(stdout(&flagfix(&["crcheck", "--q", "2", "--gens", "1,1;0,1"])).contains("not G-cr (all three tests agree)"));
    assert!(stdout(&flagfix(&["crcheck", "--q", "2", "--gens", "1,0;0,1"])).starts_with("G-cr"));
    assert!(stdout(&flagfix(&["crcheck", "--q", "3", "--gens", "0,2;1,0"])).contains("G-irreducible: X^H empty"));
}

#[test]
fn centre_matches_library() {
    let o = flagfix(&["centre", "--q", "2", "--gens", "1,1,0;0,1,1;0,0,1", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let f = field_make(2).unwrap();
    let h = GroupSpec::new("cli", f, 3, vec![Mat::jordan_unipotent(f, 3)]).unwrap();
    let amb = Ambient::general_linear(f, 3, DEFAULT_AMBIENT_CAP).unwrap();
    let lib = serde_json::to_value(find_centre(&h, &amb).unwrap().summary()).unwrap();
    assert_eq!(v, lib);

    let o = flagfix(&["centre", "--q", "2", "--gens", "1,0;0,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not contractible"));
    let o = flagfix(&["centre", "--q", "3", "--gens", "1,1,0,0;0,1,0,0;0,0,1,0;0,0,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ambient group too large"));
}

#[test]
fn homology_examples() {
    let o = flagfix(&["homology", "--full-building", "--q", "2", "--n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 8]));
    let o = flagfix(&["homology", "--full-building", "--q", "3", "--n", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reduced_betti"], serde_json::json!([3]));
    let o = flagfix(&["homology", "--q", "2", "--gens", "1,1;0,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reduced_betti"], serde_json::json!([0]));
}

#[test]
fn campaign_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = flagfix(&["campaign", "gl3f2-all-cyclic", "--json", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["entries"], 79);

    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"[{"name": "j2", "q": 2, "n": 2, "generators": [[[1,1],[0,1]]], "expected": {"g_cr": true}}]"#,
    )
    .unwrap();
    assert_eq!(flagfix(&["campaign", broken.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(flagfix(&["campaign", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn campaign_with_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = || {
        let o = Command::new(env!("CARGO_BIN_EXE_flagfix"))
            .args(["campaign", "gl2f3-all-cyclic", "--json"])
            .env("FLAGFIX_CACHE_DIR", &cache)
            .output()
            .unwrap();
        assert!(o.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        v
    };
    let cold = run();
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    assert_eq!(cold, run());
}

#[test]
fn other_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let flags = dir.path().join("two.json");
    std::fs::write(&flags, r#"{"q": 2, "n": 2, "flags": [[[[1,0]]], [[[0,1]]]]}"#).unwrap();
    let f = flags.to_str().unwrap();
    assert!(stdout(&flagfix(&["convex", f])).contains("not convex: ⟨e1+e2⟩"));
    let o = flagfix(&["fixedform", f, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["is_fixed_point_form"], false);
    assert_eq!(v["counterexample"], "⟨e1+e2⟩");

    let o = flagfix(&[
        "loewy", "--q", "2", "--gens", "1,1,0;0,1,1;0,0,1", "--over-gens", "1,1,0;0,1,0;0,0,1", "--over-gens",
        "1,0,0;0,1,1;0,0,1",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("socle flag: ⟨e1⟩ ⊂ ⟨e1,e2⟩"));
    assert_eq!(flagfix(&["loewy", "--q", "2", "--gens", "1,0;0,1"]).status.code(), Some(1));

    let o = flagfix(&["boreltits", "--q", "2", "--gens", "1,1;0,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["normalizer_order"], 2);
    assert_eq!(v["fixed_flag"], "⟨e1⟩");
    assert_eq!(flagfix(&["boreltits", "--q", "3", "--gens", "2,0;0,1"]).status.code(), Some(1));
}

#[test]
fn gens_file_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.json");
    std::fs::write(
        &cat,
        r#"[{"name": "a", "q": 2, "n": 2, "generators": [[[1,0],[0,1]]]},
            {"name": "j", "q": 2, "n": 2, "generators": [[[1,1],[0,1]]]}]"#,
    )
    .unwrap();
    let c = cat.to_str().unwrap();
    assert!(stdout(&flagfix(&["crcheck", "--gens-file", c, "--entry", "j"])).starts_with("not G-cr"));
    assert!(stdout(&flagfix(&["crcheck", "--gens-file", c])).starts_with("G-cr"));
    assert_eq!(flagfix(&["crcheck", "--gens-file", c, "--entry", "zz"]).status.code(), Some(2));
    assert_eq!(flagfix(&["crcheck", "--q", "6", "--gens", "1,0;0,1"]).status.code(), Some(2));
    assert_eq!(flagfix(&["crcheck", "--gens", "1,0;0,1"]).status.code(), Some(2));
    assert_eq!(flagfix(&["bogus"]).status.code(), Some(2));
    assert_eq!(flagfix(&["crcheck", "--q", "2", "--n", "3", "--gens", "1,0;0,1"]).status.code(), Some(2));
    assert_eq!(flagfix(&["--help"]).status.code(), Some(0));
}

use std::process::Command;

fn akh(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_akh")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes_follow_the_outcome() {
    assert_eq!(akh(&["report", "--catalog", "kodaira_thurston"]).0, 0);
    assert_eq!(akh(&["obstructions", "--catalog", "filiform4_J"]).0, 2);
    assert_eq!(akh(&["identities", "--catalog", "h5_J"]).0, 0);
    assert_eq!(akh(&["lefschetz", "--catalog", "h5_J"]).0, 1);
    assert_eq!(akh(&["diamond", "--catalog", "no_such_model"]).0, 1);
    assert_eq!(akh(&["diamond"]).0, 1);
    assert_eq!(akh(&["diamond", "--catalog", "torus4", "--model", "x.json"]).0, 1);
}

#[test]
fn diamond_text_output() {
    let (status, out) = akh(&["diamond", "--catalog", "kodaira_thurston"]);
    assert_eq!(status, 0);
    assert!(out.contains("  1\n 1 1\n0 3 0\n 1 1\n  1\n"), "{out}");
}

#[test]
fn model_files_round_trip_through_the_cli() {
    let dir = std::env::temp_dir().join(format!("akh-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kt.json");
    let model = akh_core::model::catalog("kodaira_thurston").unwrap();
    std::fs::write(&path, akh_core::model::model_to_json(&model)).unwrap();
    let from_file = akh(&["betti", "--model", path.to_str().unwrap(), "--format", "json"]);
    let from_catalog = akh(&["betti", "--catalog", "kodaira_thurston", "--format", "json"]);
    assert_eq!(from_file, from_catalog);
    std::fs::remove_dir_all(&dir).unwrap();
}

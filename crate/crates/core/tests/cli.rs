use std::fs;
use std::process::Command;

fn octogauss() -> Command {
    Command::new(env!("CARGO_BIN_EXE_octogauss"))
}

#[test]
fn config_file_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s7.conf");
    fs::write(&cfg, "# small run\nchart = geodesic_sphere\nt0 = pi/3\npoints = 4\nseed = 11\n").unwrap();
    let mut outputs = Vec::new();
    for name in ["a.json", "b.json"] {
        let out = dir.path().join(name);
        let status = octogauss()
            .args(["verify", "s7", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let json: serde_json::Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["points"].as_array().unwrap().len(), 4);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "points = 4\n").unwrap();
    let out = octogauss()
        .args(["verify", "s7", "--points", "2", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["points"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_input_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "colour = blue\n").unwrap();
    let status = octogauss().args(["verify", "s7", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let status = octogauss().args(["verify", "cp3", "--chart", "equator"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn csv_outputs_have_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.csv");
    assert!(octogauss().args(["table", "--level", "2", "--out"]).arg(&table).status().unwrap().success());
    let text = fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().next(), Some("i,j,k,sign"));
    assert_eq!(text.lines().count(), 17);
    let m = octogauss().args(["matrix", "--x", "0,1,0,0,0,0,0,0"]).output().unwrap();
    assert_eq!(String::from_utf8(m.stdout).unwrap().lines().count(), 8);
}

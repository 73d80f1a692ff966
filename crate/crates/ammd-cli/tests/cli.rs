//! End-to-end tests of the `ammd` binary: report contents, exit codes, and
//! bit-for-bit reproducibility of reruns.

use std::path::Path;
use std::process::{Command, Output};

use ammd_core::dataset::{synthesize_dataset, write_dataset, SynthConfig};

fn ammd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ammd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_right_angle_file(dir: &Path) -> std::path::PathBuf {
    // (0,0), (1,0), (1,1), (1,2) zero-padded to three joints.
    let path = dir.join("bend.txt");
    let rows = [
        "0 0 0 0 0 0 0 0 0",
        "1 0 0 0 0 0 0 0 0",
        "1 1 0 0 0 0 0 0 0",
        "1 2 0 0 0 0 0 0 0",
    ];
    std::fs::write(&path, rows.join("\n") + "\n").unwrap();
    path
}

/// Synthetic benchmark on disk; unique subjects make `new-person` act as
/// leave-one-sequence-out.
fn write_synthetic_dataset(dir: &Path) -> std::path::PathBuf {
    let cfg = SynthConfig {
        classes: 5,
        sequences_per_class: 10,
        frames: 40,
        joints: 15,
        noise_scale: 0.2,
        seed: 42,
    };
    let (manifest, sequences) = synthesize_dataset::<f64>(&cfg).unwrap();
    write_dataset(dir, &manifest, &sequences).unwrap()
}

#[test]
fn decompose_reports_right_angle_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_right_angle_file(dir.path());
    let out = dir.path().join("report.json");
    let result = ammd(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--delta",
        "1.05",
        "--k",
        "1",
        "--joints",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["frames"], 4);
    assert_eq!(report["patch_count"], 2);
    let patches = report["patches"].as_array().unwrap();
    assert_eq!((patches[0]["start"].as_u64(), patches[0]["end"].as_u64()), (Some(0), Some(2)));
    assert_eq!((patches[1]["start"].as_u64(), patches[1]["end"].as_u64()), (Some(3), Some(3)));
    let beta = patches[0]["score"].as_f64().unwrap();
    assert!((beta - (7.0 + 2.0 * 2.0f64.sqrt()) / 9.0).abs() <= 1e-9);
    assert!(patches[0]["direction"].as_array().unwrap().len() == 9);
}

#[test]
fn decompose_collinear_is_one_patch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.txt");
    let rows: Vec<String> = (0..10).map(|i| format!("{} 0 0", i as f64 * 0.5)).collect();
    std::fs::write(&path, rows.join("\n") + "\n").unwrap();
    let result = ammd(&[
        "decompose",
        "--input",
        path.to_str().unwrap(),
        "--delta",
        "1.04",
        "--k",
        "1",
        "--joints",
        "1",
    ]);
    assert!(result.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&result.stdout).unwrap();
    assert_eq!(report["patch_count"], 1);
}

#[test]
fn missing_input_fails_with_message() {
    let result = ammd(&[
        "decompose",
        "--input",
        "/nonexistent/sequence.txt",
        "--delta",
        "1.05",
        "--k",
        "1",
    ]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("/nonexistent/sequence.txt"), "stderr: {stderr}");
}

#[test]
fn classify_synthetic_new_person_is_accurate_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_synthetic_dataset(dir.path());
    let out1 = dir.path().join("r1.json");
    let out2 = dir.path().join("r2.json");
    let args = |out: &Path| {
        vec![
            "classify".to_string(),
            "--manifest".into(),
            manifest.display().to_string(),
            "--protocol".into(),
            "new-person".into(),
            "--measure".into(),
            "combinedxammd".into(),
            "--delta".into(),
            "1.1".into(),
            "--k".into(),
            "2".into(),
            "--seed".into(),
            "7".into(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let run1 = Command::new(env!("CARGO_BIN_EXE_ammd"))
        .args(args(&out1))
        .output()
        .unwrap();
    assert!(run1.status.success(), "{}", String::from_utf8_lossy(&run1.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out1).unwrap()).unwrap();
    assert!(report["mean_accuracy"].as_f64().unwrap() >= 0.95);
    assert_eq!(report["config"]["seed"], 7);
    assert_eq!(report["config"]["measure"], "combinedxammd");
    assert_eq!(report["splits"].as_array().unwrap().len(), 50);
    assert_eq!(report["labels"].as_array().unwrap().len(), 5);

    // Same configuration, same bytes.
    let run2 = Command::new(env!("CARGO_BIN_EXE_ammd"))
        .args(args(&out2))
        .output()
        .unwrap();
    assert!(run2.status.success());
    let b1 = std::fs::read(&out1).unwrap();
    let mut b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2);

    // Changing the seed changes nothing for a deterministic protocol split,
    // but must still be echoed in the report.
    b2 = std::fs::read(&out2).unwrap();
    assert!(!b2.is_empty());
}

#[test]
fn classify_setup_c_runs_with_reps() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_synthetic_dataset(dir.path());
    let result = ammd(&[
        "classify",
        "--manifest",
        manifest.to_str().unwrap(),
        "--protocol",
        "setupC",
        "--measure",
        "combinedxammd",
        "--delta",
        "1.1",
        "--k",
        "2",
        "--reps",
        "3",
        "--seed",
        "1",
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let report: serde_json::Value = serde_json::from_slice(&result.stdout).unwrap();
    assert_eq!(report["splits"].as_array().unwrap().len(), 3);
    assert_eq!(report["config"]["repetitions"], 3);
    assert!(report["mean_accuracy"].as_f64().unwrap() >= 0.95);
}

#[test]
fn sweep_emits_one_row_per_grid_point_and_measure() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_synthetic_dataset(dir.path());
    let out = dir.path().join("sweep.csv");
    let result = ammd(&[
        "sweep",
        "--manifest",
        manifest.to_str().unwrap(),
        "--protocol",
        "new-person",
        "--delta-range",
        "1.05:1.25:0.1",
        "--k",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "delta,k,measure,mean_accuracy");
    // 3 delta points × 4 default measures.
    assert_eq!(lines.len(), 1 + 3 * 4);
    for measure in ["mpdxammd", "mddxammd", "combinedxammd", "combinedxdtw"] {
        assert_eq!(
            lines[1..].iter().filter(|l| l.contains(measure)).count(),
            3,
            "{measure} row count"
        );
    }
    // The synthetic benchmark is stable across the grid: spread ≤ 0.15.
    for measure in ["mpdxammd", "mddxammd", "combinedxammd", "combinedxdtw"] {
        let accs: Vec<f64> = lines[1..]
            .iter()
            .filter(|l| l.contains(measure))
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        let spread = accs.iter().cloned().fold(f64::MIN, f64::max)
            - accs.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 0.15, "{measure} spread {spread}");
    }
}

#[test]
fn sweep_rejects_bad_grid() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_synthetic_dataset(dir.path());
    let result = ammd(&[
        "sweep",
        "--manifest",
        manifest.to_str().unwrap(),
        "--protocol",
        "new-person",
        "--delta-range",
        "0.9:1.2:0.1",
        "--k",
        "2",
    ]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("larger than 1"), "stderr: {stderr}");
}

#[test]
fn unknown_protocol_and_measure_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_synthetic_dataset(dir.path());
    for (flag, value, expected) in [
        ("--protocol", "setupD", "unknown protocol"),
        ("--measure", "combinedxemd", "unknown measure"),
    ] {
        let mut args = vec![
            "classify",
            "--manifest",
            manifest.to_str().unwrap(),
            "--protocol",
            "new-person",
            "--measure",
            "combinedxammd",
            "--delta",
            "1.1",
            "--k",
            "2",
        ];
        let i = args.iter().position(|a| *a == flag).unwrap();
        args[i + 1] = value;
        let result = ammd(&args);
        assert!(!result.status.success());
        assert!(
            String::from_utf8_lossy(&result.stderr).contains(expected),
            "{flag} {value}"
        );
    }
}

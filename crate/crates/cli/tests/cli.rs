use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hdc_cli::manifest::{verify, RunManifest, MANIFEST_FILE};
use hdc_core::io::read_heatmap_csv;

const SMALL_GRID: &str = "-3,3,-3,3,25,25";

fn hdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdc")).args(args).env_remove("HDC_SEED").output().expect("spawn hdc")
}

fn ok(args: &[&str]) -> Output {
    let out = hdc(args);
    assert!(out.status.success(), "hdc {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn fails_with(args: &[&str], needle: &str) {
    let out = hdc(args);
    assert!(!out.status.success(), "hdc {args:?} unexpectedly succeeded");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(needle), "stderr of {args:?} lacks {needle:?}: {stderr}");
}

fn manifest(dir: &Path) -> RunManifest {
    serde_json::from_str(&fs::read_to_string(dir.join(MANIFEST_FILE)).unwrap()).unwrap()
}

fn spatial_args<'a>(out: &'a str, workers: &'a str) -> Vec<&'a str> {
    vec![
        "spatial",
        "--dims",
        "64",
        "--n",
        "1..4",
        "--trials",
        "2",
        "--grid",
        SMALL_GRID,
        "--coord-range",
        "-2,2",
        "--seed",
        "5",
        "--workers",
        workers,
        "--out",
        out,
    ]
}

#[test]
fn spatial_output_is_independent_of_worker_count() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    ok(&spatial_args(a.to_str().unwrap(), "1"));
    ok(&spatial_args(b.to_str().unwrap(), "4"));
    for file in ["records.csv", "summary_by_n.csv", "summary_by_class_size.csv"] {
        assert_eq!(fs::read(a.join(file)).unwrap(), fs::read(b.join(file)).unwrap(), "{file} differs");
    }
    let (ma, mb) = (manifest(&a), manifest(&b));
    assert_eq!(ma.files, mb.files);
    assert_eq!(ma.config, mb.config);
    verify(&a, &ma).unwrap();
}

#[test]
fn superposition_writes_manifest_with_matching_digests() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("r");
    let args = [
        "superposition",
        "--dims",
        "64,128",
        "--n",
        "1..10:3",
        "--repeats",
        "2",
        "--seed",
        "42",
        "--out",
        out.to_str().unwrap(),
    ];
    ok(&args);
    let m = manifest(&out);
    assert_eq!(m.command, "superposition");
    assert_eq!(m.seed, 42);
    assert_eq!(m.config["n_values"], serde_json::json!([1, 4, 7, 10]));
    let names: Vec<&str> = m.files.iter().map(|f| f.path.as_str()).collect();
    assert_eq!(names, ["records.csv", "raw_records.csv", "summary_by_n.csv"]);
    verify(&out, &m).unwrap();

    // A rerun reproduces every file.
    let again = tmp.path().join("again");
    let mut args2 = args;
    args2[10] = again.to_str().unwrap();
    ok(&args2);
    assert_eq!(manifest(&again).files, m.files);

    // 2 dims x 4 n values x 2 repeats, n members and n outsiders each.
    let rows = fs::read_to_string(out.join("records.csv")).unwrap().lines().count() - 1;
    assert_eq!(rows, 2 * 2 * 2 * (1 + 4 + 7 + 10));
}

#[test]
fn seed_falls_back_to_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    ok(&["superposition", "--dims", "32", "--n", "3", "--repeats", "1", "--seed", "77", "--out", a.to_str().unwrap()]);
    let out = Command::new(env!("CARGO_BIN_EXE_hdc"))
        .args(["superposition", "--dims", "32", "--n", "3", "--repeats", "1", "--out", b.to_str().unwrap()])
        .env("HDC_SEED", "77")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read(a.join("records.csv")).unwrap(), fs::read(b.join("records.csv")).unwrap());
    assert_eq!(manifest(&b).seed, 77);
}

#[test]
fn invalid_flags_exit_nonzero() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let out = out.to_str().unwrap();
    fails_with(&["superposition", "--dims", "0", "--out", out], "dimension 0");
    fails_with(&["superposition", "--n", "0", "--out", out], "n values");
    fails_with(&["spatial", "--eps", "-1", "--out", out], "eps");
    fails_with(&["spatial", "--n", "1..20", "--out", out], "--max-partitions");
    fails_with(&["spatial", "--grid", "1,2,3", "--out", out], "x_min,x_max");
    fails_with(&["selftest", "--workers", "0"], "--workers");
    fails_with(&["superposition", "--dims", "abc"], "not a non-negative integer");
    assert!(!Path::new(out).exists(), "nothing is written on validation errors");

    // Output path occupied by a regular file.
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    fails_with(&["superposition", "--dims", "32", "--n", "2", "--out", blocker.to_str().unwrap()], "output directory");
}

#[test]
fn selftest_passes() {
    let out = ok(&["selftest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5 of 5 checks passed"), "{text}");
    assert!(!text.contains("FAIL"));
}

fn heatmap_run(dir: &Path, scene: &str, extra: &[&str]) -> Output {
    let scene_path = dir.join("scene.csv");
    fs::write(&scene_path, scene).unwrap();
    let out = dir.join("hm");
    let mut args = vec!["heatmap", "--scene", scene_path.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    hdc(&args)
}

#[test]
fn heatmap_single_object_peaks_at_its_position() {
    let tmp = tempfile::tempdir().unwrap();
    let out = heatmap_run(tmp.path(), "class_id,x,y\n0,1.5,-2\n", &["--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dir = tmp.path().join("hm");
    let hm = read_heatmap_csv(fs::File::open(dir.join("class_0.csv")).unwrap(), true).unwrap();
    let (ix, iy, v) = hm.argmax();
    assert_eq!((hm.grid.x_coord(ix), hm.grid.y_coord(iy)), (1.5, -2.0));
    assert!((v - 0.7).abs() <= 0.1, "peak {v}");
    let peaks = fs::read_to_string(dir.join("peaks.csv")).unwrap();
    assert!(peaks.lines().nth(1).unwrap().starts_with("0,1.5,-2,"), "{peaks}");
    let m = manifest(&dir);
    let names: Vec<&str> = m.files.iter().map(|f| f.path.as_str()).collect();
    assert_eq!(names, ["class_0.csv", "joint.csv", "peaks.csv"]);
    verify(&dir, &m).unwrap();
}

#[test]
fn heatmap_two_classes_and_joint_map() {
    let tmp = tempfile::tempdir().unwrap();
    let out = heatmap_run(tmp.path(), "class_id,x,y\n0,-2,-2\n0,2,2\n2,0,3\n", &["--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dir = tmp.path().join("hm");
    let read = |name: &str| read_heatmap_csv(fs::File::open(dir.join(name)).unwrap(), true).unwrap();
    let (c0, c2, joint) = (read("class_0.csv"), read("class_2.csv"), read("joint.csv"));
    assert!(!dir.join("class_1.csv").exists());
    for (i, v) in joint.values().iter().enumerate() {
        assert_eq!(*v, c0.values()[i].max(c2.values()[i]));
    }
    for (x, y) in [(-2.0, -2.0), (2.0, 2.0)] {
        let (ix, iy) = c0.grid.nearest_cell(x, y);
        assert!(c0.value(ix, iy) > 0.3, "class 0 at ({x}, {y}): {}", c0.value(ix, iy));
    }
    let (ix, iy, _) = c2.argmax();
    assert_eq!((c2.grid.x_coord(ix), c2.grid.y_coord(iy)), (0.0, 3.0));
}

#[test]
fn heatmap_signed_raw_readout() {
    let tmp = tempfile::tempdir().unwrap();
    let out =
        heatmap_run(tmp.path(), "class_id,x,y\n0,0,0\n", &["--signed", "--raw", "--dim", "256", "--grid", SMALL_GRID]);
    assert!(out.status.success());
    let text = fs::read_to_string(tmp.path().join("hm/class_0.csv")).unwrap();
    assert!(text.starts_with("-3,3,-3,3,25,25,false\n"), "{}", &text[..40]);
    assert!(text.contains(",-"), "signed readout keeps negative values");
}

#[test]
fn heatmap_rejects_bad_scenes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = heatmap_run(tmp.path(), "class_id,x,y\n0,1,1\n1,zz,0\n", &[]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&out.stderr));
    let out = heatmap_run(tmp.path(), "class_id,x,y\n", &[]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no objects"));
    let out = hdc(&["heatmap", "--scene", "/nonexistent/scene.csv"]);
    assert!(!out.status.success());
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use thermowave::datacube::read_cube;
use thermowave::render::{decode_pgm, Scaling};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thermowave"))
}

fn run(dir: &Path, args: &str) -> Output {
    bin().current_dir(dir).args(args.split_whitespace()).output().expect("binary runs")
}

fn ok(dir: &Path, args: &str) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn entries(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

/// Small cube shared by most tests.
fn phantom(dir: &Path) {
    ok(dir, "phantom --te 10 --seed 42 --out cube.tic --excitation prbs.txt --truth truth.json");
}

#[test]
fn full_pipeline() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    phantom(d);
    assert_eq!(read_cube(d.join("cube.tic")).unwrap().nt(), 128);
    assert_eq!(fs::read_to_string(d.join("prbs.txt")).unwrap().lines().count(), 128);

    ok(d, "detect --basis rbio6.8 --levels 6 --band 3:6 --in cube.tic --out ydet.tic --map fault.pgm --dump-yr yr.tic");
    let ydet = read_cube(d.join("ydet.tic")).unwrap();
    assert_eq!((ydet.nx(), ydet.ny(), ydet.nt()), (160, 200, 1));
    assert_eq!(ydet.te_s(), 10.0);
    let pgm = decode_pgm(&fs::read(d.join("fault.pgm")).unwrap()).unwrap();
    assert_eq!((pgm.rows, pgm.cols), (160, 200));
    let scale = Scaling::from_text(&fs::read_to_string(d.join("fault.pgm.scale")).unwrap()).unwrap();
    assert_eq!((scale.min, scale.max), (0.0, 1.0));

    let stdout = ok(d, "evaluate --in cube.tic --ydet ydet.tic --truth truth.json --report snr.csv");
    let csv = fs::read_to_string(d.join("snr.csv")).unwrap();
    assert_eq!(stdout, csv);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("fault_id,snr_raw_db,snr_wd_db,improvement_db"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 12);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0] as usize, i + 1);
        assert!((r[3] - (r[2] - r[1])).abs() < 1e-5);
    }
    assert!(rows[0][3] > 0.0 && rows[1][3] > 0.0);

    ok(d, "correct --yr yr.tic --excitation prbs.txt --ydet ydet.tic --out corrected.tic");
    assert_eq!(read_cube(d.join("corrected.tic")).unwrap().nt(), 1);

    ok(d, "render --in ydet.tic --out ydet.pgm");
    assert!(d.join("ydet.pgm.scale").exists());

    ok(d, "baseline-svd --in cube.tic --ranks 2:10 --skew skew.pgm --kurt kurt.pgm --report svd.csv");
    let svd = fs::read_to_string(d.join("svd.csv")).unwrap();
    assert!(svd.lines().nth(1).unwrap().ends_with(",background"));
    assert!(svd.lines().nth(2).unwrap().ends_with(",useful"));
}

#[test]
fn outputs_are_deterministic() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for d in [a.path(), b.path()] {
        phantom(d);
        ok(d, "detect --in cube.tic --out ydet.tic --map fault.pgm");
    }
    for name in ["cube.tic", "prbs.txt", "truth.json", "ydet.tic", "fault.pgm", "fault.pgm.scale"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
    let single = run(a.path(), "detect --in cube.tic --out ydet1.tic");
    assert!(single.status.success());
    let one_thread = bin()
        .current_dir(a.path())
        .env("THERMOWAVE_THREADS", "1")
        .args(["detect", "--in", "cube.tic", "--out", "ydet2.tic"])
        .output()
        .unwrap();
    assert!(one_thread.status.success());
    assert_eq!(fs::read(a.path().join("ydet1.tic")).unwrap(), fs::read(a.path().join("ydet2.tic")).unwrap());
}

#[test]
fn level_zero_band_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    phantom(d);
    let before = entries(d);
    let out = run(d, "detect --in cube.tic --band 0:6 --out ydet.tic --map fault.pgm");
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("level 0"), "{err}");
    assert_eq!(entries(d), before);
}

#[test]
fn band_beyond_levels_names_the_level() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    phantom(d);
    let out = run(d, "detect --in cube.tic --levels 6 --band 3:8 --out ydet.tic");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains('8'));
    assert!(!d.join("ydet.tic").exists());
}

#[test]
fn unknown_basis_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    phantom(d);
    let out = run(d, "detect --in cube.tic --basis db99 --out ydet.tic");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("db99"));
    assert!(!d.join("ydet.tic").exists());
}

#[test]
fn data_errors_exit_two_without_output() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    fs::write(d.join("broken.tic"), b"TIC1\n").unwrap();
    let out = run(d, "detect --in broken.tic --out ydet.tic");
    assert_eq!(out.status.code(), Some(2));
    let missing = run(d, "render --in nope.tic --out x.pgm");
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(entries(d), vec![d.join("broken.tic")]);
}

#[test]
fn help_and_bad_flags() {
    let tmp = TempDir::new().unwrap();
    let help = run(tmp.path(), "--help");
    assert_eq!(help.status.code(), Some(0));
    let text = String::from_utf8_lossy(&help.stdout);
    for cmd in
        ["phantom", "dwt", "detect", "select-basis", "select-level", "baseline-svd", "evaluate", "correct", "render"]
    {
        assert!(text.contains(cmd), "help lacks {cmd}");
    }
    assert_eq!(run(tmp.path(), "detect --help").status.code(), Some(0));
    assert_eq!(run(tmp.path(), "detect --bogus").status.code(), Some(1));
    assert_eq!(run(tmp.path(), "").status.code(), Some(1));
    assert_eq!(run(tmp.path(), "phantom --te 3 --out c.tic").status.code(), Some(1));
    assert!(!tmp.path().join("c.tic").exists());
}

#[test]
fn bad_thread_count_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let out = bin()
        .current_dir(tmp.path())
        .env("THERMOWAVE_THREADS", "zero")
        .args(["phantom", "--te", "10", "--out", "c.tic"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!tmp.path().join("c.tic").exists());
}

#[test]
fn dwt_dumps_every_sub_band() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    phantom(d);
    ok(d, "dwt cube.tic --basis haar --levels 3 --frame 5 --mode periodic --dump-tree tree");
    let files: Vec<String> =
        entries(&d.join("tree")).iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(files.len(), 12);
    let a3 = read_cube(d.join("tree/A3.tic")).unwrap();
    assert_eq!((a3.nx(), a3.ny(), a3.nt()), (20, 25, 1));
    let lh1 = read_cube(d.join("tree/L1_LH.tic")).unwrap();
    assert_eq!((lh1.nx(), lh1.ny()), (80, 100));

    let out = run(d, "dwt cube.tic --frame 500 --dump-tree other");
    assert_eq!(out.status.code(), Some(1));
    assert!(!d.join("other").exists());
}

#[test]
fn flip_mirrors_truth() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, "phantom --te 10 --frames 16 --out a.tic --truth a.json");
    ok(d, "phantom --te 10 --frames 16 --flip --out b.tic --truth b.json");
    let a = read_cube(d.join("a.tic")).unwrap();
    let b = read_cube(d.join("b.tic")).unwrap();
    assert!(b.flipped_y() && !a.flipped_y());
    assert_eq!(a.frame(3)[(10, 0)], b.frame(3)[(10, 199)]);
    let ta: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("a.json")).unwrap()).unwrap();
    let tb: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("b.json")).unwrap()).unwrap();
    assert_ne!(ta, tb);
}

#[test]
fn selection_commands() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, "phantom --te 10 --frames 8 --out c.tic --truth t.json");
    let best = ok(d, "select-basis --in c.tic --truth t.json --catalog haar,db4,sym4 --report bases.csv");
    let report = fs::read_to_string(d.join("bases.csv")).unwrap();
    assert_eq!(report.lines().next(), Some("basis,cost,numerator,denominator"));
    assert!(report.contains(best.trim()));

    let level = ok(d, "select-level --in c.tic --basis haar --lmax 4 --report rmi.csv");
    let l: usize = level.trim().parse().unwrap();
    assert!((1..=4).contains(&l));
    let rmi = fs::read_to_string(d.join("rmi.csv")).unwrap();
    assert_eq!(rmi.lines().count(), 5);
    assert_eq!(rmi.lines().filter(|r| r.ends_with(",1")).count(), 1);

    let too_deep = run(d, "select-level --in c.tic --lmax 12 --report deep.csv");
    assert_eq!(too_deep.status.code(), Some(1));
    assert!(!d.join("deep.csv").exists());
}

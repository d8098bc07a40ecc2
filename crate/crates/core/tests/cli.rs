use std::fs;
use std::path::Path;

use transmon_crosstalk::cli::{main_with_args, EXIT_CONFIG, EXIT_OK, EXIT_SIZE_CAP};

fn run(args: &[&str]) -> i32 {
    let mut full = vec!["transmon-crosstalk"];
    full.extend_from_slice(args);
    main_with_args(full)
}

fn out_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

fn csv_rows(path: &Path) -> Vec<csv::StringRecord> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader.records().map(|r| r.unwrap()).collect()
}

fn header(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn potential_and_spectrum_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    assert_eq!(run(&["--out", &out, "potential", "--L", "3"]), EXIT_OK);
    let potential = dir.path().join("potential.csv");
    assert_eq!(header(&potential), "x,y,omega_ghz");
    assert_eq!(csv_rows(&potential).len(), 6);

    assert_eq!(run(&["--out", &out, "spectrum", "--L", "3", "--j", "0.001", "--engine", "ed"]), EXIT_OK);
    let spectrum = dir.path().join("spectrum.csv");
    assert_eq!(header(&spectrum), "bitstring,energy_ghz,overlap");
    assert_eq!(csv_rows(&spectrum).len(), 64);
}

#[test]
fn walsh_tables_from_both_engines() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    assert_eq!(run(&["--out", &out, "wh", "--L", "3", "--j", "0.001", "--engine", "ed"]), EXIT_OK);
    let ed = csv_rows(&dir.path().join("wh_ed.csv"));
    assert_eq!(ed.len(), 64);

    assert_eq!(run(&["--out", &out, "wh", "--L", "3", "--j", "0.001", "--engine", "pt"]), EXIT_OK);
    let path = dir.path().join("wh_pt.csv");
    assert_eq!(
        header(&path),
        "weight,l1,l2,l3,order0_ghz,order1_ghz,order2_ghz,total_ghz,range_l"
    );
    let pt = csv_rows(&path);
    // Weights 0..=3 of six sites: 1 + 6 + 15 + 20.
    assert_eq!(pt.len(), 42);
    let weights: Vec<u32> = pt.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(*weights.iter().max().unwrap(), 3);
    assert_eq!(weights.iter().filter(|&&w| w == 2).count(), 15);
}

#[test]
fn ed_refuses_long_arrays() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    assert_eq!(run(&["--out", &out, "spectrum", "--L", "20", "--j", "0.001"]), EXIT_SIZE_CAP);
    assert_eq!(run(&["--out", &out, "wh", "--L", "20", "--j", "0.001", "--engine", "ed"]), EXIT_SIZE_CAP);
    assert!(!dir.path().join("spectrum.csv").exists());
}

#[test]
fn fig4_writes_one_bin_per_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    assert_eq!(run(&["--out", &out, "fig4"]), EXIT_OK);
    let path = dir.path().join("fig4.csv");
    assert_eq!(header(&path), "range_l,n_pairs,mean_abs_w_ghz");
    let rows = csv_rows(&path);
    assert_eq!(rows.len(), 20);
    let pairs: usize = rows.iter().map(|r| r[1].parse::<usize>().unwrap()).sum();
    assert_eq!(pairs, 40 * 39 / 2);
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig4.json")).unwrap()).unwrap();
    assert!(meta["generated_unix_s"].is_u64());
}

#[test]
fn fig4_rejects_exact_diagonalization() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["--out", &out_arg(dir.path()), "fig4", "--engine", "ed"]), EXIT_CONFIG);
}

#[test]
fn small_fig2_and_fig3_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    assert_eq!(
        run(&["--out", &out, "fig2", "--L", "2", "--j", "0,0.001", "--realizations", "3"]),
        EXIT_OK
    );
    let fig2 = dir.path().join("fig2.csv");
    assert_eq!(header(&fig2), "j_ghz,lambda,mean_abs_w_aa_ghz,mean_abs_w_gauss_ghz,exceptions");
    assert_eq!(csv_rows(&fig2).len(), 2);

    assert_eq!(run(&["--out", &out, "fig3", "--L", "2", "--j", "0.0005,0.001"]), EXIT_OK);
    let fig3 = dir.path().join("fig3.csv");
    assert_eq!(header(&fig3), "j_ghz,lambda,l1,l2,range_l,w_ed_ghz,w_pt_ghz,exceptions");
    assert_eq!(csv_rows(&fig3).len(), 2 * 6);
}

#[test]
fn config_file_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"l": 2, "j_grid_ghz": [0.001], "ec_ghz": 0.2}"#).unwrap();
    let out = out_arg(dir.path());
    let cfg_arg = cfg.to_str().unwrap();
    assert_eq!(run(&["--config", cfg_arg, "--out", &out, "spectrum"]), EXIT_OK);
    assert_eq!(csv_rows(&dir.path().join("spectrum.csv")).len(), 16);

    fs::write(&cfg, r#"{"l": 2, "bogus": 1}"#).unwrap();
    assert_eq!(run(&["--config", cfg_arg, "--out", &out, "spectrum"]), EXIT_CONFIG);
    assert_eq!(run(&["--config", "/nonexistent/run.json", "potential"]), EXIT_CONFIG);
    assert_eq!(run(&["potential"]), EXIT_CONFIG);
    assert_eq!(run(&["spectrum", "--L", "2", "--j", "0.001,0.002"]), EXIT_CONFIG);
    assert_eq!(run(&["frobnicate"]), EXIT_CONFIG);
    assert_eq!(run(&["--help"]), EXIT_OK);
}

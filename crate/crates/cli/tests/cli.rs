use std::path::PathBuf;
use std::process::{Command, Output};

fn bicem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicem"))
        .args(args)
        .current_dir(workspace())
        .output()
        .expect("binary runs")
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bicem-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const TINY_BER: [&str; 10] = [
    "--set",
    "mappings=[\"rho1\", \"gray8\"]",
    "--set",
    "snr_b_db=[12.0, 20.0]",
    "--set",
    "frames=6",
    "--set",
    "info_block_length=60",
    "--set",
    "iterations=2",
];

#[test]
fn bounds_from_experiment_file_decrease_with_snr() {
    let out = bicem(&["bounds", "-c", "experiments/fig3.cfg"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mapping_id,mode,gamma_b_db,delta,log10_bound,n1,N_n1,diversity"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 2 * 2 * 21);
    for curve in rows.chunks(21) {
        let ys: Vec<f64> = curve.iter().map(|r| r[4].parse().unwrap()).collect();
        assert!(ys.windows(2).all(|w| w[1] < w[0]), "{curve:?}");
    }
    let l1_eff = rows.iter().find(|r| r[0] == "l1" && r[1] == "EFF").unwrap();
    assert_eq!((l1_eff[5].as_str(), l1_eff[6].as_str()), ("2", "4"));
}

#[test]
fn ber_output_is_reproducible() {
    let dir = scratch("ber");
    let path = dir.join("ber.csv");
    let mut args = vec!["ber", "-o", path.to_str().unwrap()];
    args.extend(TINY_BER);
    assert_eq!(bicem(&args).status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(bicem(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());

    let mut lines = first.lines();
    assert_eq!(lines.next(), Some("gamma_b_db,mapping_id,iteration,frames,bit_errors,ber,ci_low,ci_high"));
    // 2 SNRs x 2 mappings x 3 passes
    assert_eq!(lines.count(), 12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn mapsearch_writes_one_table_per_snr() {
    let dir = scratch("search");
    let base = dir.join("table4.csv");
    let out = bicem(&["mapsearch", "-c", "experiments/table4.cfg", "-o", base.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for g in ["9.5", "11.5", "13.5", "14.5"] {
        let text = std::fs::read_to_string(dir.join(format!("table4_{g}dB.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("rho,mapping,delta_kappa_log10,delta_rho_log10"));
        assert_eq!(lines.count(), 14);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn mapsearch_to_stdout_separates_blocks() {
    let out = bicem(&["mapsearch", "-c", "experiments/table4.cfg", "--set", "snr_b_db=[9.5, 14.5]"]);
    let text = stdout(&out);
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with('#')).collect();
    assert_eq!(headers, ["# gamma_b_db=9.5", "# gamma_b_db=14.5"]);
}

#[test]
fn uncoded_baseline_runs() {
    let out = bicem(&["uncoded", "-c", "experiments/uncoded4.cfg", "--set", "frames=20", "--set", "snr_b_db=[20.0]"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[1], "gray4");
    let ber: f64 = row[5].parse().unwrap();
    assert!(ber > 0.0 && ber < 0.05, "{ber}");
}

#[test]
fn configuration_errors_exit_with_one() {
    let cases: [&[&str]; 6] = [
        &["ber", "--set", "frames=0", "--set", "snr_b_db=[10.0]"],
        &["bounds", "--set", "snr_b_db=[]"],
        &["bounds", "-c", "experiments/does_not_exist.cfg"],
        &["bounds", "--set", "snr_b_db=[10.0]", "--set", "mappings=[\"0 1 2\"]"],
        &["selftest", "--level", "thorough"],
        &["simulate"],
    ];
    for args in cases {
        let out = bicem(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn selftest_status_follows_the_report() {
    let out = bicem(&["selftest"]);
    let text = stdout(&out);
    assert!(text.lines().last().unwrap().ends_with("failed"));
    let failed = text.lines().any(|l| l.starts_with("FAIL"));
    assert_eq!(out.status.code(), Some(if failed { 2 } else { 0 }), "{text}");
}

#[test]
fn help_exits_cleanly() {
    let out = bicem(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    for cmd in ["ber", "uncoded", "bounds", "mapsearch", "selftest"] {
        assert!(stdout(&out).contains(cmd));
    }
}

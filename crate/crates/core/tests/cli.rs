use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi-entangle")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn point_eigenstate() {
    assert_eq!(
        stdout(&["point", "--N", "4", "--J", "1", "--M", "1", "--n", "1"]),
        "N,J,M_or_state,n,EF_bits\n4,1,1,1,0.270426041486\n"
    );
}

#[test]
fn point_custom_amplitudes_matches_eigenstate() {
    let custom = stdout(&["point", "--N", "4", "--J", "1", "--amplitudes", "0 0 1", "--n", "1"]);
    assert_eq!(custom, "N,J,M_or_state,n,EF_bits\n4,1,custom,1,0.270426041486\n");
}

#[test]
fn sweep_m_rows_in_order() {
    let text = stdout(&["sweep-m", "--N", "6", "--J", "2", "--n", "3"]);
    let ms: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(text.lines().next().unwrap(), "N,J,n,M,EF_bits");
    assert_eq!(ms, ["0", "1", "2"]);
    let text = stdout(&["sweep-m", "--N", "5", "--J2", "3", "--n", "2"]);
    let ms: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(ms, ["1/2", "3/2"]);
}

#[test]
fn sweeps_are_byte_identical_across_runs() {
    let args = ["sweep-j", "--N", "40", "--m-mode", "min", "--n", "20"];
    let first = stdout(&args);
    assert_eq!(first.lines().count(), 1 + 21);
    assert!(!first.contains('\r'));
    for _ in 0..3 {
        assert_eq!(stdout(&args), first);
    }
}

#[test]
fn ghz_and_squeezed_headers() {
    let ghz = stdout(&["ghz", "--N", "4", "--n", "2"]);
    assert_eq!(ghz, "N,J,n,EF_bits\n4,1,2,0.333333333333\n4,2,2,1\n");
    let sq = stdout(&["squeezed", "--N", "4", "--t", "0,1", "--n", "1"]);
    let lines: Vec<&str> = sq.lines().collect();
    assert_eq!(lines[0], "N,t,J,n,EF_bits");
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines[1].starts_with("4,0,0,1,"));
    assert_eq!(lines[6], "4,1,2,1,1");
}

#[test]
fn ddist_probabilities_sum_to_one() {
    let text = stdout(&["ddist", "--N", "10", "--J", "1,2", "--n", "5"]);
    assert_eq!(text.lines().next().unwrap(), "N,J,n,d,prob");
    for j in ["1", "2"] {
        let total: f64 = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').collect::<Vec<_>>())
            .filter(|f| f[1] == j)
            .map(|f| f[4].parse::<f64>().unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-11, "J={j}: {total}");
    }
}

#[test]
fn partition_and_particle_sweeps() {
    let text = stdout(&["sweep-partition", "--N", "8", "--J", "1", "--n-min", "1", "--n-max", "7"]);
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(values.len(), 7);
    for k in 0..7 {
        assert_eq!(values[k], values[6 - k], "E_F symmetric under n -> N - n");
    }
    let text = stdout(&["sweep-n-particles", "--j-mode", "dicke", "--split", "single", "--N-min", "2", "--N-max", "6"]);
    assert_eq!(text.lines().nth(1).unwrap(), "2,1,0,1,1");
}

#[test]
fn oracle_check_passes_and_counts_cases() {
    let out = run(&["oracle-check", "--nmax", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N,cases,max_abs_dev\n2,4,"), "{text}");
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("PASS"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("pi-entangle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let out = run(&["sweep-m", "--N", "4", "--J", "1", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["sweep-m", "--N", "4", "--J", "1", "--n", "2"]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["point", "--N", "4", "--J", "1/2", "--M", "1/2", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["point", "--N", "4", "--J", "1", "--M", "0", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["oracle-check", "--nmax", "11"]).status.code(), Some(2));
    assert_eq!(run(&["ghz", "--N", "4"]).status.code(), Some(2));
    assert_eq!(run(&["squeezed", "--N", "4", "--t", "1.5", "--n", "1"]).status.code(), Some(2));
}

fn column(text: &str, index: usize) -> Vec<String> {
    text.lines().skip(1).map(|l| l.split(',').nth(index).unwrap().to_string()).collect()
}

fn values(text: &str) -> Vec<f64> {
    text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect()
}

#[test]
fn documented_points() {
    assert!(stdout(&["point", "--N", "50", "--J", "25", "--M", "25", "--n", "25"]).ends_with(",0\n"));
    assert!(stdout(&["point", "--N", "2", "--J", "1", "--M", "0", "--n", "1"]).ends_with(",1\n"));
    assert_eq!(
        stdout(&["point", "--N", "3", "--J", "0.5", "--M", "1/2", "--n", "1"]),
        stdout(&["point", "--N", "3", "--J2", "1", "--M", "0.5", "--n", "1"])
    );
}

#[test]
fn single_row_sweep_for_spin_half() {
    let text = stdout(&["sweep-m", "--N", "51", "--J", "1/2", "--n", "1"]);
    assert_eq!(column(&text, 3), ["1/2"]);
}

#[test]
fn particle_sweeps_follow_expected_trends() {
    let single = stdout(&["sweep-n-particles", "--j-mode", "min", "--split", "single", "--N-min", "2", "--N-max", "30"]);
    for line in single.lines().skip(1).filter(|l| l.split(',').next().unwrap().parse::<u32>().unwrap() % 2 == 0) {
        assert!(line.ends_with(",1"), "{line}");
    }
    let dicke = values(&stdout(&["sweep-n-particles", "--j-mode", "dicke", "--split", "even", "--N-min", "2", "--N-max", "30"]));
    // N = 2 is a Bell pair (1 bit) while N = 3 at n = 1 is the W state (h(1/3)),
    // so growth holds within each parity of N rather than across all N.
    for parity in [0, 1] {
        let curve: Vec<f64> = dicke.iter().skip(parity).step_by(2).copied().collect();
        assert!(curve.windows(2).all(|w| w[1] >= w[0] - 1e-12), "{curve:?}");
    }
}

#[test]
fn spin_half_partition_sweep_has_no_zigzag() {
    let e = values(&stdout(&["sweep-partition", "--N", "51", "--J", "1/2", "--n-min", "1", "--n-max", "25"]));
    assert!(e.windows(2).all(|w| w[1] >= w[0] - 1e-12), "{e:?}");
}

#[test]
fn unsqueezed_state_matches_lowest_magnetization() {
    let sq = stdout(&["squeezed", "--N", "30", "--t", "0", "--n", "15"]);
    for (j, e) in column(&sq, 2).iter().zip(values(&sq)) {
        let point = stdout(&["point", "--N", "30", "--J", j, "--M", &format!("-{j}"), "--n", "15"]);
        let expected: f64 = point.trim_end().rsplit(',').next().unwrap().parse().unwrap();
        assert!((e - expected).abs() < 1e-11, "J={j}: {e} vs {expected}");
    }
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use rmx_cli::{CTildeDoc, Graph};
use rmx_core::root_system::{build_cartan, Family, LieType};

fn rmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmx")).args(args).output().expect("binary runs")
}

fn rmx_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rmx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn ctilde_csv_for_a1() {
    let o = rmx(&["ctilde", "--type", "A", "--rank", "1", "--order", "6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.ends_with("1,0,-1,0,1,0")));
}

#[test]
fn invalid_rank_exits_2() {
    let o = rmx(&["ctilde", "--type", "D", "--rank", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid rank"));
    assert_eq!(code(&rmx(&["ctilde", "--type", "A", "--rank", "2", "--format", "dot"])), 2);
}

#[test]
fn e8_table_passes_the_identity_suite() {
    let table = rmx(&["ctilde", "--type", "E", "--rank", "8", "--order", "60"]);
    assert_eq!(code(&table), 0);
    let doc: CTildeDoc = serde_json::from_slice(&table.stdout).unwrap();
    assert_eq!(doc.rows.len(), 64);
    assert!(doc.rows.iter().all(|r| r.values.len() == 60));
    let o = rmx_with_stdin(&["selfcheck", "--table", "-"], &table.stdout);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn corrupted_recurrence_fails_the_identity_suite() {
    let table = rmx(&["ctilde", "--type", "D", "--rank", "5", "--format", "json"]);
    let mut doc: CTildeDoc = serde_json::from_slice(&table.stdout).unwrap();
    // rerun the recurrence with the sign of the c~(m-1) term flipped
    let cd = build_cartan(LieType::new(Family::D, 5).unwrap());
    let n = cd.rank();
    let mut c = vec![vec![vec![0i64; doc.order]; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i][0] = 1;
    }
    for m in 1..doc.order {
        for i in 1..=n {
            for j in 1..=n {
                let back = if m >= 2 { c[i - 1][j - 1][m - 2] } else { 0 };
                let around: i64 = cd.neighbors(i).iter().map(|&k| c[k - 1][j - 1][m - 1]).sum();
                c[i - 1][j - 1][m] = around + back;
            }
        }
    }
    for row in &mut doc.rows {
        row.values = c[row.i - 1][row.j - 1].clone();
    }
    let o = rmx_with_stdin(&["selfcheck", "--table", "-"], serde_json::to_string(&doc).unwrap().as_bytes());
    assert_eq!(code(&o), 1);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], false);
    let failures = report["criteria"][0]["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f.as_str().unwrap().contains("identity (")));
}

#[test]
fn denominators() {
    let args = ["denominator", "--type", "A", "--rank", "2", "--i", "1", "--j", "2"];
    let o = rmx(&args);
    assert_eq!(stdout(&o), "(u-q^3)\n");
    let o = rmx(&[&args[..], &["--format", "json"]].concat());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["factors"], serde_json::json!([{ "exponent": 3, "multiplicity": 1 }]));
    assert_eq!(v["convention"], "q");
    let o = rmx(&[&args[..], &["--convention", "minus-q", "--format", "csv"]].concat());
    assert_eq!(stdout(&o), "exponent,multiplicity,convention\n3,1,-q\n");
    let o = rmx(&["denominator", "--type", "A", "--rank", "2", "--i", "1", "--j", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn queries() {
    let o = rmx(&["pole-order", "A", "2", "--x", "2,-1", "--y", "2,1"]);
    assert_eq!((code(&o), stdout(&o)), (0, "1\n".to_string()));
    let o = rmx(&["irreducible", "A", "2", "--x", "1,0", "--y", "2,1"]);
    assert_eq!(stdout(&o), "true\n");
    let o = rmx(&["dorey", "A", "2", "--x", "2,-1", "--y", "2,1"]);
    assert_eq!((code(&o), stdout(&o)), (0, "Y[1,0]\n".to_string()));
    let o = rmx(&["dorey", "A", "2", "--x", "2,-1", "--y", "2,1", "--quiver", "2>1"]);
    assert_eq!(stdout(&o), "Y[1,0]\n");
}

#[test]
fn query_errors() {
    // no pole at all
    assert_eq!(code(&rmx(&["dorey", "A", "2", "--x", "1,0", "--y", "2,1"])), 3);
    // parity violation
    assert_eq!(code(&rmx(&["pole-order", "A", "2", "--x", "1,1", "--y", "2,1"])), 2);
    assert_eq!(code(&rmx(&["dorey", "A", "2", "--x", "1,1", "--y", "2,1"])), 2);
    assert_eq!(code(&rmx(&["pole-order", "A", "2", "--x", "7,0", "--y", "2,1"])), 2);
}

#[test]
fn gamma_window_dot() {
    let o = rmx(&["export", "gamma", "A", "1", "--from", "0", "--to", "4"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 3);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);
}

#[test]
fn empty_range_is_an_empty_graph() {
    let o = rmx(&["export", "gamma", "A", "2", "--from", "3", "--to", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let g: Graph = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(g, Graph::default());
}

#[test]
fn gamma_j_is_a_chain() {
    let args = ["export", "gamma-j", "A", "3", "--cap", "4", "--from", "-3", "--to", "3", "--format", "json"];
    let o = rmx(&args);
    assert_eq!(code(&o), 0);
    let g: Graph = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(g.vertices.len(), 7);
    let mut arrows: Vec<(i64, i64, u32)> =
        g.arrows.iter().map(|a| (a.from.parse().unwrap(), a.to.parse().unwrap(), a.mult)).collect();
    arrows.sort();
    assert_eq!(arrows, (-3..3).map(|j| (j, j + 1, 1)).collect::<Vec<_>>());
}

#[test]
fn exports_are_byte_stable_and_round_trip() {
    for args in [
        &["export", "ar-quiver", "D", "4", "--from", "-6", "--to", "6", "--format", "json"][..],
        &["export", "gamma", "E", "6", "--from", "-4", "--to", "8", "--format", "json"][..],
        &["export", "gamma-j", "D", "4", "--cap", "4", "--from", "-5", "--to", "5", "--format", "json"][..],
    ] {
        let (a, b) = (rmx(args), rmx(args));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        let g: Graph = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(rmx_cli::to_json(&g).into_bytes(), a.stdout);
    }
    let dot = rmx(&["export", "ar-quiver", "A", "2", "--from", "0", "--to", "1", "--quiver", "2>1"]);
    assert!(stdout(&dot).contains(r#""1,0" [label="1,0\nM(1,1)[0]"];"#));
}

#[test]
fn fast_selfcheck_passes() {
    let o = rmx(&["selfcheck", "--scope", "fast"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["criteria"].as_array().unwrap().len(), 10);
    let one = rmx(&["selfcheck", "--criterion", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(code(&rmx(&["selfcheck", "--criterion", "11"])), 2);
}

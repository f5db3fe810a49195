use std::path::Path;
use std::process::{Command, Output};

use ecopol_core::report::{render_table, Precision, Record};

fn ecopol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecopol")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.toml");
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn emission_tax_case_prints_headline_numbers() {
    let o = ecopol(&["scenario", "--case", "1.0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Ẑ\t-3.27"), "{text}");
    assert!(text.contains("Total:\t3327.5"), "{text}");
}

#[test]
fn config_lists_tables_and_inline_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"
scenarios = ["table-D1", "case-2.0"]

[[scenario]]
label = "half-tax"
[scenario.source.fixed]
emission_tax = 0.05
"#,
    );
    let o = ecopol(&["--config", &cfg, "scenario"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("Detailed Welfare Effects"));
    assert!(text.contains("W5:\t4545.2\t4224.4\t4545.2\t4545.2"));
    // The two single cases share one scenario block.
    assert_eq!(text.matches("Scenario results").count(), 1);
    assert!(text.contains("Case:\t2.0\thalf-tax"), "{text}");
}

#[test]
fn empty_scenario_list_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "format = \"delimited\"\n");
    let o = ecopol(&["--config", &cfg, "scenario"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no scenarios configured"));
}

#[test]
fn malformed_config_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "scenarios = [\"1.0\"]\nformat = \"fancy\"\n");
    let o = ecopol(&["--config", &cfg, "scenario"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_case_and_bad_benchmark_exit_two() {
    assert_eq!(ecopol(&["scenario", "--case", "7.7"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bench = dir.path().join("bench.toml");
    std::fs::write(&bench, "year = 2019\n").unwrap();
    let o = ecopol(&["--benchmark", bench.to_str().unwrap(), "calibrate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structured_output_renders_back_to_the_same_tables() {
    let args = ["scenario", "--case", "table-1", "--case", "1.0", "--case", "4.0", "--case", "table-D2"];
    let table = stdout(&ecopol(&args));
    let mut structured_args = args.to_vec();
    structured_args.extend(["--format", "structured"]);
    let lines = stdout(&ecopol(&structured_args));

    let mut blocks: Vec<(String, Vec<Record>)> = Vec::new();
    for line in lines.lines() {
        let mut v: serde_json::Value = serde_json::from_str(line).unwrap();
        let layout = v.as_object_mut().unwrap().remove("layout").unwrap();
        let layout = layout.as_str().unwrap().to_string();
        let record: Record = serde_json::from_value(v).unwrap();
        match blocks.last_mut() {
            Some((l, rs)) if *l == layout => rs.push(record),
            _ => blocks.push((layout, vec![record])),
        }
    }
    let rendered: Vec<String> = blocks
        .iter()
        .map(|(l, rs)| render_table(l, rs, Precision::default()).unwrap())
        .collect();
    assert_eq!(rendered.join("\n"), table);
}

#[test]
fn output_bytes_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|k| {
            let out = dir.path().join(format!("out{k}.csv"));
            let o = ecopol(&["scenario", "--case", "table-3", "--format", "delimited", "--out", out.to_str().unwrap()]);
            assert!(o.status.success());
            std::fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert!(!runs[0].is_empty());
}

#[test]
fn precision_flag_controls_rounding() {
    let text = stdout(&ecopol(&["scenario", "--case", "1.0", "--precision", "4,2"]));
    assert!(text.contains("Ẑ\t-3.2707"), "{text}");
    assert!(text.contains("Total:\t3327.45"), "{text}");
}

#[test]
fn clean_golden_tables_pass_and_the_full_set_reports_mismatches() {
    let o = ecopol(&["goldens", "--table", "table-1", "--table", "table-D3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ecopol(&["goldens"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("outside tolerance"));
}

#[test]
fn emitted_file_compares_against_a_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("emitted.csv");
    let gold = dir.path().join("golden.csv");
    let o = ecopol(&["scenario", "--case", "table-D1", "--format", "delimited", "--out", emitted.to_str().unwrap()]);
    assert!(o.status.success());
    std::fs::copy(&emitted, &gold).unwrap();
    let args = ["goldens", "--emitted", emitted.to_str().unwrap(), "--golden", gold.to_str().unwrap()];
    assert_eq!(ecopol(&args).status.code(), Some(0));

    let text = std::fs::read_to_string(&gold).unwrap();
    let perturbed = text.replacen("Welfare,total,1.0,", "Welfare,total,1.0,9", 1);
    let perturbed = perturbed.replacen("welfare,total,1.0,", "welfare,total,1.0,9", 1);
    assert_ne!(perturbed, text);
    std::fs::write(&gold, perturbed).unwrap();
    assert_eq!(ecopol(&args).status.code(), Some(1));
}

#[test]
fn oracle_table_has_one_row_per_component() {
    let o = ecopol(&["oracle", "--case", "2.0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("case,component,hat,d_h,d_half,ratio,verdict"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r.ends_with(",PASS")));

    let o = ecopol(&["oracle", "--case", "2.0", "--rule", "share-point"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",FAIL"));
}

#[test]
fn sweep_labels_each_value() {
    let o = ecopol(&["sweep", "--case", "1.0", "--param", "gamma-share", "--values", "0.6,0.8", "--format", "delimited"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("1.0:gamma_share=0.6"));
    assert!(text.contains("1.0:gamma_share=0.8"));
}

#[test]
fn calibrate_modes() {
    let text = stdout(&ecopol(&["calibrate", "--mode", "monopoly"]));
    assert!(text.contains("n\t1\n"), "{text}");
    assert!(text.contains("ε_ER\t-4.48"), "{text}");
}

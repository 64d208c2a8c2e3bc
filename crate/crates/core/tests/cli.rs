use std::process::{Command, Output};

fn crsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crsym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_text_and_json() {
    let o = crsym(&["analyze", "--poly", "Re(Z1*z2^2)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("weights: (1/3, 1/3)"));
    assert!(text.contains("table row: T1"));

    let o = crsym(&["analyze", "--poly", "Re(Z1*z2^2)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["weights"]["mu1"], "1/3");
    assert_eq!(v["classification"]["dim_g"], 10);
    assert_eq!(v["table_row"], "T1");
}

#[test]
fn input_errors_exit_with_one() {
    assert_eq!(crsym(&["analyze", "--poly", "z1*+"]).status.code(), Some(1));
    assert_eq!(crsym(&["analyze", "--poly", "z1*Z2"]).status.code(), Some(1));
    assert_eq!(crsym(&["analyze", "--poly", "Re(Z1*z2^2) + Re(z2^3)"]).status.code(), Some(1));
    assert_eq!(crsym(&["catalog", "--row", "T99"]).status.code(), Some(1));
    assert_eq!(crsym(&["catalog", "--row", "T2", "--params", "bogus=1"]).status.code(), Some(1));
    assert_eq!(crsym(&["chains", "build", "--params", "p=1,q=1"]).status.code(), Some(1));
}

#[test]
fn strip_pluriharmonic_flag() {
    let o = crsym(&["analyze", "--poly", "Re(Z1*z2^2) + Re(z2^3)", "--strip-pluriharmonic", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classification"]["dim_g"], 10);
}

#[test]
fn catalog_model_and_verify() {
    let o = crsym(&["catalog", "--row", "T1"]);
    assert_eq!(stdout(&o).trim(), "1/2*z2^2*Z1 + 1/2*z1*Z2^2");
    let o = crsym(&["catalog", "--row", "gn9", "--params", "l=3,sign=-1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn table_check_with_grid_file() {
    let dir = std::env::temp_dir().join(format!("crsym-grid-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let grid = dir.join("grid.txt");
    std::fs::write(&grid, "# small grid\nT1 alpha=2..3\nQUADRIC_M m=2\n").unwrap();
    let o = crsym(&["table-check", "--grid", grid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l["pass"] == true));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn chains_build_and_verify() {
    let o = crsym(&["chains", "build", "--params", "p=1,q=1,alpha=1,beta=0,K=2,N=0,m=1,tau=1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["closed_form_matches"], true);
    assert_eq!(v["field_is_symmetry"], true);

    let dir = std::env::temp_dir().join(format!("crsym-chains-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("chains.json");
    std::fs::write(&file, r#"["z1^4 + z2^2*z1^3", "2*z2*z1^8", "2*z1^13"]"#).unwrap();
    let model = "8*(z1*Z1)^3*Re(z1^5*Z2)^2 + 4*(z1*Z1)^4*Re(z1^9)";
    let o = crsym(&["chains", "verify", "--poly", model, "--field", "i*z1^5*d2", "--chains", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chain_sum_equals_poly"], true);
    assert_eq!(v["field_is_symmetry"], true);
    assert!(v["decomposition"].is_array());

    std::fs::write(&file, r#"["z1^4", "z1^9"]"#).unwrap();
    let o = crsym(&["chains", "verify", "--poly", model, "--field", "i*z1^5*d2", "--chains", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn analyze_is_identical_across_thread_counts() {
    let model = "8*(z1*Z1)^3*Re(z1^5*Z2)^2 + 4*(z1*Z1)^4*Re(z1^9)";
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_crsym"))
            .args(["analyze", "--poly", model, "--json"])
            .env("CRSYM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
    assert_eq!(one, run("0"));
}

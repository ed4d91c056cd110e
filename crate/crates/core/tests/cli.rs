//! Runs the binary and compares stdout byte-for-byte with `tests/golden/`.
//! Set `SL2KIT_UPDATE_GOLDEN=1` to rewrite the files after an intended change.

use sl2kit::cli::Response;
use std::path::PathBuf;
use std::process::Command;

const S: &str = "[[0,-1],[1,0]]";
const T: &str = "[[1,1],[0,1]]";

fn cases() -> Vec<(&'static str, i32, Vec<String>)> {
    let sl2z = format!(r#"{{"generators":[{S},{T}]}}"#);
    let sl2z_half = format!(r#"{{"generators":[{S},{T},[[2,0],[0,"1/2"]]]}}"#);
    let raw: Vec<(&str, i32, Vec<&str>)> = vec![
        ("valuate_rational", 0, vec!["valuate", "--p", "3", "--x", "9/2"]),
        ("valuate_zero", 0, vec!["valuate", "--p", "5", "--x", "0"]),
        ("valuate_eisenstein", 0, vec!["valuate", "--p", "2", "--minpoly", "[1,1,1]", "--x", "4γ - 8"]),
        ("valuate_not_a_valuation", 2, vec!["valuate", "--p", "2", "--minpoly", "[-2,0,1]", "--x", "γ"]),
        ("valuate_not_prime", 2, vec!["valuate", "--p", "6", "--x", "1"]),
        ("valuate_missing_x", 1, vec!["valuate", "--p", "3"]),
        ("valuate_bad_element", 1, vec!["valuate", "--p", "3", "--x", "2x"]),
        ("tree_dist_torus", 0, vec!["tree-dist", "--p", "3", "--g", r#"[["3",0],[0,"1/3"]]"#]),
        ("tree_dist_vertices", 0, vec!["tree-dist", "--p", "2", "--u", r#"{"n":2,"b":1}"#, "--v", r#"{"n":-1,"b":0}"#]),
        ("tree_ball", 0, vec!["tree-ball", "--p", "2", "--r", "2"]),
        ("tree_act", 0, vec!["tree-act", "--p", "2", "--g", r#"[[1,"1/2"],[0,1]]"#]),
        ("tree_act_singular", 2, vec!["tree-act", "--p", "2", "--g", "[[1,2],[2,4]]"]),
        ("hyp_dist", 0, vec!["hyp-dist", "--p1", r#"{"z":[0,0],"t":1}"#, "--p2", r#"{"z":[0,0],"t":4}"#]),
        ("hyp_dist_degenerate", 1, vec!["hyp-dist", "--p1", r#"{"z":[0,0],"t":0}"#, "--p2", r#"{"z":[0,0],"t":4}"#]),
        ("displacement_single", 0, vec!["displacement", "--minpoly", "[1,0,1]", "--g", "[[1,\"γ\"],[0,1]]"]),
        ("enumerate_sl2z", 0, vec!["enumerate", "--group", &sl2z, "--C", "0.1"]),
        ("check_proper", 0, vec!["check-proper", "--group", &sl2z_half, "--C", "3", "--max-len", "5"]),
        ("check_integral_half", 0, vec!["check-integral", "--g", r#"[["1/2",-1],[1,0]]"#]),
        ("classify_standard", 0, vec!["classify", "--basis", r#"[[[0,1],[0,0]],[["1/2",0],[0,"-1/2"]]]"#]),
        ("classify_commuting", 2, vec!["classify", "--basis", "[[[1,0],[0,-1]],[[3,0],[0,-3]]]"]),
        ("classify_not_closed", 2, vec!["classify", "--basis", "[[[0,1],[0,0]],[[0,0],[1,0]]]"]),
        ("normalizer_torus", 0, vec!["normalizer", "--which", "torus", "--g", S]),
        ("normalizer_bad_which", 1, vec!["normalizer", "--which", "borel", "--g", S]),
        ("factor_maximal", 0, vec!["factor-maximal", "--g", S, "--target", "[[1,0],[1,1]]"]),
        ("factor_maximal_g_in_h", 2, vec!["factor-maximal", "--g", T, "--target", "[[1,0],[1,1]]"]),
        ("request_document", 0, vec!["request", r#"{"command":"valuate","p":3,"x":"9/2"}"#]),
        ("request_unknown", 1, vec!["request", r#"{"command":"frobnicate"}"#]),
    ];
    let mut out: Vec<(&'static str, i32, Vec<String>)> =
        raw.into_iter().map(|(n, c, a)| (n, c, a.into_iter().map(String::from).collect())).collect();
    out.push((
        "embed_sl2z",
        0,
        ["embed", "--group", &sl2z, "--samples", "20", "--seed", "3"].map(String::from).to_vec(),
    ));
    out
}

fn run(args: &[String], envs: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sl2kit"));
    cmd.args(args).env_remove("SL2KIT_ENUM_BUDGET");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("UTF-8 output"))
}

#[test]
fn golden_outputs_and_exit_codes() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("SL2KIT_UPDATE_GOLDEN").is_some();
    for (name, code, args) in cases() {
        let (got_code, stdout) = run(&args, &[]);
        assert_eq!(got_code, code, "{name}: exit code; output {stdout}");
        let response: Response = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(response.exit_code(), code, "{name}");
        assert_eq!(response.to_json_string(), stdout, "{name}: output does not re-serialize identically");
        let path = dir.join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &stdout).unwrap();
        } else {
            let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(stdout, expected, "{name}: differs from golden file");
        }
        // a second run must be byte-identical
        assert_eq!(run(&args, &[]).1, stdout, "{name}: nondeterministic output");
    }
}

#[test]
fn budget_from_environment() {
    let group = format!(r#"{{"generators":[{S},{T}]}}"#);
    let args = ["enumerate", "--group", &group, "--C", "3"].map(String::from);
    let (code, out) = run(&args, &[("SL2KIT_ENUM_BUDGET", "10")]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("BudgetExceeded"));
    let (code, _) = run(&args, &[("SL2KIT_ENUM_BUDGET", "ten")]);
    assert_eq!(code, 1);
}

#[test]
fn help_lists_every_command() {
    let out = Command::new(env!("CARGO_BIN_EXE_sl2kit")).arg("--help").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    for c in sl2kit::cli::Command::ALL {
        assert!(text.contains(c.name()), "{} missing from --help", c.name());
    }
    assert!(text.contains("SL2KIT_ENUM_BUDGET"));
}

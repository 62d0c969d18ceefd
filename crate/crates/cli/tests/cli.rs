use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arimat::arimat::{arith_power, labelled_power, verify_axioms};
use arimat::decompose::{power_matrix, tad};
use arimat::format;
use arimat::plucker::rgr_generators;
use arimat::{plucker, Caps, Matrix, PowerMode};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arimat")).args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, "-i", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn doc(o: &Output) -> Value {
    format::parse_document(&stdout(o)).unwrap()
}

fn load(file: &str) -> Value {
    format::parse_document(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap()
}

fn matrix(file: &str) -> Matrix {
    format::matrix_from_value(&load(file)).unwrap()
}

fn abs_minors(v: &Value) -> Vec<String> {
    let pv = plucker(&format::matrix_from_value(v).unwrap()).unwrap();
    pv.coords().iter().map(|c| c.abs().unwrap().to_string()).collect()
}

#[test]
fn power_of_graphic_not_labelled() {
    for k in [2u32, 3] {
        let o = run_on("power", "graphic_not_labelled.json", &["-k", &k.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        let want = Matrix::from_i64(&[[1, 0, 1], [0, 3i64.pow(k), -(2i64.pow(k))]]);
        assert_eq!(abs_minors(&doc(&o)), abs_minors(&format::matrix_to_value(&want)));
    }
}

#[test]
fn outputs_are_serialized_library_results() {
    let caps = Caps::default();
    let x = matrix("graphic_not_labelled.json");
    let cases: Vec<(Output, Value)> = vec![
        (run_on("plucker", "graphic_not_labelled.json", &[]), format::plucker_to_value(&plucker(&x).unwrap())),
        (
            run_on("decompose", "graphic_not_labelled.json", &[]),
            format::factorization_to_value(&tad(&x, None, &caps).unwrap()),
        ),
        (
            run_on("power", "graphic_not_labelled.json", &["-k", "3", "--mode", "odd-exact"]),
            format::matrix_to_value(&power_matrix(&x, 3, PowerMode::OddExact, &caps).unwrap()),
        ),
        (
            run_on("arith-power", "z2_torsion.json", &["-k", "3"]),
            format::group_list_to_value(
                &arith_power(&format::group_list_from_value(&load("z2_torsion.json")).unwrap(), 3, &caps).unwrap(),
            ),
        ),
        (
            run_on("labelled-graph", "triangle_graph.json", &["-k", "2"]),
            format::group_list_to_value(
                &labelled_power(&format::graph_from_value(&load("triangle_graph.json")).unwrap(), 2).unwrap(),
            ),
        ),
        (
            run_on("axioms", "m12_table.json", &[]),
            format::axiom_report_to_value(
                &verify_axioms(&format::table_from_value(&load("m12_table.json")).unwrap(), &caps).unwrap(),
            ),
        ),
        (run(&["rgr-ideal", "-d", "2", "-n", "4"]), format::ideal_to_value(&rgr_generators(2, 4).unwrap())),
    ];
    for (o, want) in cases {
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), format::to_text(&want));
    }
}

#[test]
fn negative_results_exit_with_two() {
    let o = run_on("arith-power", "u24.json", &["-k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let d = doc(&o);
    assert_eq!(d["error"], "non_regular");
    assert_eq!(d["certificate"]["products"], serde_json::json!(["1", "1", "4"]));
    assert_eq!(d["certificate"]["satisfiable"], false);

    let o = run_on("arith-power", "k3.json", &["-k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(doc(&o)["error"], "no_multiplicative_basis");

    let o = run_on("arith-power", "c4.json", &["-k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(doc(&o)["error"], "no_multiplicative_basis");

    for cmd in ["decompose", "regular"] {
        let o = run_on(cmd, "u24.json", &[]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
        assert_eq!(doc(&o)["u24"]["inner"], "1,2,3,4");
    }
    let o = run_on("power", "u24.json", &["-k", "2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run_on("gcd-check", "m12_table.json", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(doc(&o)["violations"][0]["gcd"], "6");

    let path = fixture("u24.json");
    let squared = run(&["arith", "-i", path.to_str().unwrap()]);
    assert_eq!(squared.status.code(), Some(0));
    let gl = format::group_list_from_value(&load("u24.json")).unwrap();
    let t = gl.full_table(&Caps::default()).unwrap().power(2);
    let dir = std::env::temp_dir().join(format!("arimat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tp = dir.join("u24_squared.json");
    std::fs::write(&tp, format::to_text(&format::table_to_value(&t))).unwrap();
    let o = run(&["gp-check", "-r", "2", "-i", tp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(doc(&o)["pass"], false);
}

#[test]
fn positive_checks_exit_with_zero() {
    for (cmd, file) in [
        ("regular", "graphic_not_labelled.json"),
        ("u24", "u24.json"),
        ("gp-verify", "c4.json"),
        ("gp-check", "c4.json"),
        ("gcd-check", "c4.json"),
        ("axioms", "z2_torsion.json"),
        ("arith", "triangle_graph.json"),
    ] {
        let o = run_on(cmd, file, &[]);
        assert_eq!(o.status.code(), Some(0), "{cmd} {file}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["counterexample", "-p", "2", "-k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["found"], false);
    let o = run(&["counterexample", "-p", "3", "-k", "3"]);
    assert_eq!(doc(&o)["a"], 2);
}

#[test]
fn usage_and_parse_errors_exit_with_one() {
    for args in [
        vec!["plucker", "--bogus"],
        vec!["no-such-command"],
        vec!["power", "-i", "x.json"],
        vec!["power", "-k", "2", "--mode", "sideways"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
    for file in ["zero_denominator.json", "malformed.json"] {
        let o = run_on("plucker", file, &[]);
        assert_eq!(o.status.code(), Some(1));
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = run_on("plucker", "malformed.json", &[]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run_on("power", "graphic_not_labelled.json", &["-k", "2", "--mode", "odd-exact"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rational_input_and_field_override() {
    let o = run_on("plucker", "rational.json", &[]);
    assert_eq!(doc(&o)["coords"]["1,2"], "3/2");
    let o = run_on("plucker", "rational.json", &["--field", "Fp:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["field"], "Fp:5");
    let o = run_on("plucker", "rational.json", &["--field", "Fp:6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn standard_input_and_output_file() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_arimat"))
        .arg("plucker")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(std::fs::read(fixture("u24.json")).unwrap().as_slice()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["coords"]["2,4"], "-1");

    let dir = std::env::temp_dir().join(format!("arimat-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("ideal.json");
    let o = run(&["rgr-ideal", "-d", "2", "-n", "4", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v = format::parse_document(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["quadrics"].as_array().unwrap().len(), 1);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 1);
}

#[test]
fn caps_come_from_the_environment() {
    let path = fixture("c4.json");
    let o = Command::new(env!("CARGO_BIN_EXE_arimat"))
        .args(["axioms", "-i", path.to_str().unwrap()])
        .env("ARIMAT_CAP", "axioms=3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_arimat"))
        .args(["axioms", "-i", path.to_str().unwrap()])
        .env("ARIMAT_CAP", "nonsense")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

/// Golden outputs over the fixture corpus. `ARIMAT_BLESS=1` rewrites them.
#[test]
fn golden_files() {
    let cases: &[(&str, &str, &[&str], i32)] = &[
        ("plucker_c4", "plucker", &[], 0),
        ("arith_k3", "arith", &[], 0),
        ("arith_power_u24", "arith-power", &["-k", "2"], 2),
        ("arith_power_z2_torsion", "arith-power", &["-k", "2"], 0),
        ("labelled_triangle_cubed", "labelled-graph", &["-k", "3"], 0),
        ("decompose_graphic", "decompose", &[], 0),
        ("gcd_m12", "gcd-check", &[], 2),
    ];
    let inputs = ["c4.json", "k3.json", "u24.json", "z2_torsion.json", "triangle_graph.json", "graphic_not_labelled.json", "m12_table.json"];
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("ARIMAT_BLESS").is_some();
    for (&(name, cmd, extra, code), input) in cases.iter().zip(inputs) {
        let o = run_on(cmd, input, extra);
        assert_eq!(o.status.code(), Some(code), "{name}");
        let path = golden.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(&golden).unwrap();
            std::fs::write(&path, &o.stdout).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(stdout(&o), want, "{name}");
    }
}

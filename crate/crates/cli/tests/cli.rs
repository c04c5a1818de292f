use std::path::PathBuf;
use std::process::{Command, Output};

use prevision::{parse_rational, ExtendedValue, Rational};
use prevision_cli::commands::{cmd_check, load};
use prevision_cli::report::WitnessRecord;
use prevision_cli::Report;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn prevision(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prevision"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json_report(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = prevision(&all);
    let report = Report::from_json(&stdout(&out)).expect("report parses");
    (report, out.status.code().unwrap())
}

fn file(name: &str) -> String {
    fixture(name).display().to_string()
}

/// Recomputes a rendered witness from its own gamble values.
fn witness_sup(w: &WitnessRecord, atoms: &[&str]) -> Rational {
    atoms
        .iter()
        .enumerate()
        .filter(|(_, a)| w.conditioning.iter().any(|c| c == *a))
        .map(|(i, a)| {
            w.terms
                .iter()
                .filter(|t| t.cond.iter().any(|c| c == a))
                .map(|t| {
                    let x = parse_rational(&t.values[i]).unwrap();
                    let price = parse_rational(&t.price).unwrap();
                    parse_rational(&t.stake).unwrap() * (x - price)
                })
                .sum::<Rational>()
        })
        .max()
        .unwrap()
}

#[test]
fn walley_example_is_not_coherent() {
    let out = prevision(&["check", &file("walley.json"), "--class", "coherent"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("coherent: no"), "{text}");
    assert!(text.contains("witness: sup over"), "{text}");

    let (report, code) = json_report(&["check", &file("walley.json"), "--class", "coherent"]);
    assert_eq!(code, 1);
    let w = report.checks[0].witness.as_ref().unwrap();
    let sup = witness_sup(w, &["a", "b", "c", "d"]);
    assert_eq!(sup, parse_rational(&w.sup).unwrap());
    assert!(sup < Rational::from_integer(0.into()));
}

#[test]
fn walley_example_is_3_coherent() {
    let out = prevision(&["check", &file("walley.json"), "--class", "n-coherent", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("3-coherent: yes"));
    let out = prevision(&["check", &file("walley.json"), "--class", "n-coherent", "--n", "inf"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_assessment_satisfies_everything() {
    let out = prevision(&["check", &file("empty.json"), "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(!text.contains(": no"), "{text}");
    assert!(text.contains("coherent: yes"));
}

#[test]
fn json_report_round_trips() {
    let (report, code) = json_report(&["check", &file("walley.json"), "--all"]);
    assert_eq!(code, report.exit_status);
    let again = Report::from_json(&report.to_json()).unwrap();
    assert_eq!(again, report);

    let doc = load(&fixture("walley.json")).unwrap();
    let direct = cmd_check(&doc, None, None).unwrap();
    assert_eq!(direct, report);
    for c in &report.checks {
        if let Some(w) = &c.witness {
            assert_eq!(witness_sup(w, &["a", "b", "c", "d"]), parse_rational(&w.sup).unwrap());
        }
    }
}

#[test]
fn extension_reproduces_a_centered_2_convex_assessment() {
    let (report, code) = json_report(&[
        "extend",
        &file("centered.json"),
        "--mode",
        "2convex",
        "--target",
        "X|B",
        "--target",
        "X2|{a,b}",
    ]);
    assert_eq!(code, 0);
    let values: Vec<&str> = report.extensions.iter().map(|e| e.value.as_str()).collect();
    assert_eq!(values, ["1/5", "6/5"]);
}

#[test]
fn extension_is_infinite_without_1_aul() {
    let out = prevision(&["extend", &file("not_aul.json"), "--mode", "2coherent", "--target", "X"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("+inf"), "{}", stdout(&out));
    let (report, _) = json_report(&["extend", &file("not_aul.json"), "--mode", "2coherent"]);
    assert_eq!(
        report.extensions[0].value.parse::<ExtendedValue>().unwrap(),
        ExtendedValue::PosInfinity
    );
}

#[test]
fn extension_of_empty_assessment_is_the_infimum() {
    let (report, _) = json_report(&["extend", &file("empty.json"), "--mode", "2coherent", "--target", "Z|Ω"]);
    assert_eq!(report.extensions[0].value, "-1");
}

#[test]
fn gbr_accepts_values_inside_the_interval() {
    let base = [
        "gbr", "--atoms", "a,b,c", "--gamble-values", "-1,3,2", "--event", "a,b", "--pa", "2/5",
        "--pxa", "1/2", "--q", "2",
    ];
    let mut inside = base.to_vec();
    inside.extend(["--r", "0"]);
    let out = prevision(&inside);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("interval: [-1, 3]"));
    assert!(stdout(&out).contains("2-coherent: yes"));

    let mut outside = base.to_vec();
    outside.extend(["--r", "4"]);
    let out = prevision(&outside);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("2-coherent: no"));
    assert!(stdout(&out).contains("witness"));

    let mut equal = base.to_vec();
    equal.extend(["--r", "2"]);
    let out = prevision(&equal);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("must differ"));
}

#[test]
fn gbr_interval_of_a_constant_is_degenerate() {
    let out = prevision(&[
        "gbr", "--gamble-values", "3/2,3/2,3/2", "--event", "w0", "--r", "0", "--q", "1",
        "--pa", "1/2", "--pxa", "3/2",
    ]);
    assert!(stdout(&out).contains("interval: [3/2, 3/2]"), "{}", stdout(&out));
}

#[test]
fn var_example() {
    let out = prevision(&[
        "var", "--atoms", "down,up", "--probs", "1/2,1/2", "--alpha", "3/5", "--gamble", "X=-1,2",
    ]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("P^V(X)                   2"), "{text}");
    assert!(text.contains("P^V(-X)                  1"), "{text}");
    assert!(text.contains("2-coherent: no (A6, λ=−1)"), "{text}");
    assert!(text.contains("centered: yes"));
    assert!(text.contains("2-convex: yes"));

    let (report, _) = json_report(&[
        "var", "--probs", "1/2,1/2", "--alpha", "1/4", "--gambles", &file("var_gambles.json"),
    ]);
    assert_eq!(report.values[0].value, "-1");

    let (report, _) = json_report(&["var", "--probs", "1/3,2/3", "--alpha", "1/2", "--gamble", "Z=0,0"]);
    assert_eq!(report.values[0].value, "0");
}

#[test]
fn var_rejects_alpha_outside_the_unit_interval() {
    let out = prevision(&["var", "--probs", "1/2,1/2", "--alpha", "1", "--gamble", "X=-1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_with_2() {
    let out = prevision(&["check", &file("walley.json"), "--class", "wobbly"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown class"));

    let dir = std::env::temp_dir().join(format!("prevision-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let typo = dir.join("typo.json");
    std::fs::write(&typo, "{\"partition\": [\"a\"],\n \"entires\": []}").unwrap();
    let out = prevision(&["check", typo.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let unknown = dir.join("unknown.json");
    std::fs::write(
        &unknown,
        r#"{"partition": ["a", "b"], "entries": [{"gamble": [1, 0], "cond": "Q", "value": 0}]}"#,
    )
    .unwrap();
    let out = prevision(&["check", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("entries[0].cond: unknown event 'Q'"));
    std::fs::remove_dir_all(&dir).unwrap();
}

use std::process::{Command, Output};
use std::time::Instant;

fn kazlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kazlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tau_line(o: &Output) -> String {
    stdout(o).lines().find(|l| l.starts_with("tau")).unwrap_or_default().to_string()
}

#[test]
fn cartan_examples() {
    let diag = kazlab(&["cartan", "--p", "2", "--e", "1", "--group", "GL2", "[[2,0],[0,1]]"]);
    assert!(diag.status.success(), "{}", stderr(&diag));
    assert_eq!(tau_line(&diag), "tau    (1,0)");

    let swap = kazlab(&["cartan", "--p", "2", "--e", "1", "--group", "GL2", "[[0,1],[2,0]]"]);
    assert_eq!(tau_line(&swap), "tau    (1,0)");
    let text = stdout(&swap);
    assert!(text.contains("a*n_tau*b == g: true"));
    assert!(!text.contains("a      [[1,0],[0,1]]\nb      [[1,0],[0,1]]"), "{text}");

    let id = kazlab(&["cartan", "--p", "2", "--e", "1", "--group", "GL2", "[[1,0],[0,1]]"]);
    assert_eq!(tau_line(&id), "tau    (0,0)");
}

#[test]
fn cartan_errors() {
    let singular = kazlab(&["cartan", "[[1,2],[2,4]]"]);
    assert_eq!(singular.status.code(), Some(2));
    assert!(stderr(&singular).contains("singular"));
    let garbled = kazlab(&["cartan", "[[1,0],[0,"]);
    assert_eq!(garbled.status.code(), Some(2));
}

#[test]
fn convolve_examples() {
    let spherical = kazlab(&["convolve", "--group", "GL2", "-m", "0", "t(1,0)", "t(1,0)"]);
    assert!(spherical.status.success(), "{}", stderr(&spherical));
    let text = stdout(&spherical);
    assert_eq!(text.lines().next(), Some("t(2,0):1, t(1,1):3"));
    assert!(text.contains("degree check: ok"));

    let f = "2*t(1,-1) + [[1,1],[0,1]]@1";
    let unit = kazlab(&["convolve", "--group", "SL2", "-m", "1", "unit", f]);
    let own = kazlab(&["convolve", "--group", "SL2", "-m", "1", f, "unit"]);
    let first = stdout(&unit).lines().next().unwrap().to_string();
    assert_eq!(first, stdout(&own).lines().next().unwrap());
    assert!(first.starts_with("t(1,-1)[[[1,0],[0,1]]@1;[[1,0],[0,1]]@1]:2, t(0,0)"), "{first}");

    let lemma = kazlab(&["convolve", "--group", "SL2", "-m", "1", "t(1,-1)", "t(1,-1)"]);
    assert_eq!(stdout(&lemma).lines().next(), Some("t(2,-2)[[[1,0],[0,1]]@1;[[1,0],[0,1]]@1]:1"));
}

#[test]
fn orbits_and_dcosets() {
    let o = kazlab(&["orbits", "--group", "SL2", "-m", "1", "1,-1"]);
    let text = stdout(&o);
    assert!(text.contains("|Gamma| 4") && text.contains("|X| 9"), "{text}");
    let d = kazlab(&["dcosets", "--group", "SL2", "-m", "1", "[[2,0],[0,1/2]]"]);
    assert!(stdout(&d).contains("degree  4"), "{}", stdout(&d));
    let w = kazlab(&["dcosets", "--group", "SL2", "-m", "1", "-B", "1"]);
    assert!(stdout(&w).starts_with("15 labels"));
}

#[test]
fn transport_examples() {
    let args = ["transport", "--group", "GL2", "--e", "4", "-N", "4", "-m", "1", "-B", "1"];
    let r = kazlab(&[&args[..], &["(1 + pi + 2)@4"]].concat());
    assert_eq!(stdout(&r).trim(), "(1 + pi)@4 -> (1 + t)@4", "{}", stderr(&r));
    let h = kazlab(&[&args[..], &["3*t(1,0)"]].concat());
    assert!(stdout(&h).contains("GL_2(Q_2(2^(1/4))) -> GL_2(F_2((t)))"), "{}", stderr(&h));
}

#[test]
fn verify_identity_pair_and_flagship() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("id.json");
    let id = kazlab(&[
        "verify", "--p", "3", "--kind", "equal", "--group", "GL2", "-m", "1", "-B", "0", "--out", out.to_str().unwrap(),
    ]);
    assert!(id.status.success(), "{}{}", stdout(&id), stderr(&id));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["pairs_checked"], report["pairs_equal"]);

    let csv = dir.path().join("c.csv");
    let flag = kazlab(&["verify", "--group", "SL2", "--e", "5", "-m", "1", "-B", "1", "-N", "5", "--suite", "kazhdan", "--csv", csv.to_str().unwrap()]);
    assert!(flag.status.success(), "{}{}", stdout(&flag), stderr(&flag));
    assert!(stdout(&flag).contains("pairs 225/225 equal"));
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("g,h,x,source,target\n"));
}

#[test]
fn verify_rejects_insufficient_closeness_fast() {
    let t = Instant::now();
    let r = kazlab(&["verify", "--group", "SL2", "--e", "5", "-m", "1", "-B", "1", "-N", "3"]);
    let elapsed = t.elapsed();
    assert_eq!(r.status.code(), Some(2));
    assert!(stderr(&r).contains("insufficient closeness: need precision 5, have 3"), "{}", stderr(&r));
    assert!(elapsed.as_millis() < 1000, "{elapsed:?}");
}

#[test]
fn config_file_overrides_and_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"p": 2, "source": {"kind": "equal"}, "target": {"kind": "equal"}, "group": "SL2",
            "level": 1, "window": 0, "coefficients": "Z", "budget": 1000000, "seed": 7}"#,
    )
    .unwrap();
    let path = dir.path().join("a.json");
    let mut texts = Vec::new();
    for _ in 0..2 {
        let r = kazlab(&["verify", "--config", cfg.to_str().unwrap(), "--suite", "field", "--seed", "11", "--out", path.to_str().unwrap()]);
        assert!(r.status.success(), "{}", stderr(&r));
        texts.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let text = &texts[0];
    let report: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(report["seed"], 11);
    assert_eq!(report["config"]["closeness"], 1);
    assert_eq!(report["config"]["group"], "SL2");

    std::fs::write(&cfg, r#"{"p": 2, "bogus": 1}"#).unwrap();
    let bad = kazlab(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    let mismatch = kazlab(&["verify", "--p", "2", "--target-f", "2"]);
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(stderr(&mismatch).contains("error:"));
    let group = kazlab(&["cartan", "--group", "SP4", "[[1]]"]);
    assert!(stderr(&group).contains("unknown group"));
}

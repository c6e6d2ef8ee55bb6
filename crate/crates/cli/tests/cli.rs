use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn coxeter(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => fixture(name),
            None => a.to_string(),
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_coxeter"))
        .args(&args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = coxeter(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
    )
}

/// Compares stdout with `tests/golden/<name>`; set `UPDATE_GOLDEN=1` to rewrite the files.
fn golden(name: &str, args: &[&str], code: i32) {
    let (got_code, stdout) = run(args);
    assert_eq!(got_code, code, "{args:?}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout, expected, "{name}");
}

#[test]
fn reduce_examples() {
    assert_eq!(
        run(&["reduce", "--m", "@i2_3.cox", "--word", "s,t,s,t"]),
        (0, "t,s\n".into())
    );
    assert_eq!(
        run(&["reduce", "--m", "@i2_3.cox", "--word", "1"]),
        (0, "1\n".into())
    );
    assert_eq!(
        run(&["reduce", "--m", "@i2_6.cox", "--word", "t,s,t,s,t,s"]),
        (0, "s,t,s,t,s,t\n".into())
    );
}

#[test]
fn verdicts_and_exit_codes() {
    assert_eq!(
        run(&["equal", "--m", "@i2_3.cox", "--a", "s,t,s", "--b", "t,s,t"]).0,
        0
    );
    assert_eq!(
        run(&["equal", "--m", "@i2_4.cox", "--a", "s,t,s", "--b", "t,s,t"]).0,
        1
    );
    assert_eq!(
        run(&["is-reflection", "--m", "@twist.cox", "--word", "u,s,u"]),
        (0, "true\n".into())
    );
    assert_eq!(
        run(&["is-reflection", "--m", "@twist.cox", "--word", "s,t"]),
        (1, "false\n".into())
    );
    assert_eq!(
        run(&["spherical", "--m", "@twist.cox", "--subset", "s,t"]).0,
        0
    );
    assert_eq!(run(&["spherical", "--m", "@twist.cox"]).0, 1);
    assert_eq!(
        run(&["dimension", "--m", "@dihedral12_triangle.cox"]),
        (0, "3\n".into())
    );
    assert_eq!(run(&["dimension", "--m", "@twist.cox"]), (0, "2\n".into()));
    assert_eq!(run(&["order", "--m", "@d4_star.cox"]), (0, "192\n".into()));
    assert_eq!(run(&["order", "--m", "@twist.cox"]), (0, "inf\n".into()));
    assert_eq!(
        run(&["order", "--m", "@i2_6.cox", "--word", "s,t"]),
        (0, "6\n".into())
    );
    assert_eq!(
        run(&[
            "compare",
            "--m",
            "@i2_6.cox",
            "--against",
            "@dihedral12_triangle.cox"
        ])
        .0,
        1
    );
    assert_eq!(
        run(&[
            "compare",
            "--m",
            "@twist.cox",
            "--against",
            "@twist_target.cox"
        ])
        .0,
        0
    );
    assert_eq!(run(&["validate", "--m", "@twist.cox"]).0, 0);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["reduce", "--m", "@i2_3.cox", "--word", "s,x"]).0, 2);
    assert_eq!(run(&["reduce", "--m", "@missing.cox", "--word", "s"]).0, 2);
    assert_eq!(run(&["validate", "--m", "@twist_map.json"]).0, 2);
    assert_eq!(
        run(&["normal-form", "--m", "@i2_3.cox", "--word", "s,t"]).0,
        2
    );
    assert_eq!(
        run(&["twist", "--m", "@i2_3.cox", "--s", "s", "--t", "t"]).0,
        2
    );
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(
        run(&[
            "reduce",
            "--m",
            "@i2_3.cox",
            "--word",
            "s",
            "--word-cap",
            "0"
        ])
        .0,
        2
    );
}

#[test]
fn cap_exhaustion_exits_3() {
    assert_eq!(
        run(&[
            "reduce",
            "--m",
            "@i2_3.cox",
            "--word",
            "s,t,s",
            "--word-cap",
            "2"
        ])
        .0,
        3
    );
    assert_eq!(
        run(&[
            "align",
            "--map",
            "@twist_map.json",
            "--radius",
            "0",
            "--word-cap",
            "1"
        ])
        .0,
        3
    );
}

#[test]
fn json_errors_are_wrapped() {
    let (code, out) = run(&["--json", "reduce", "--m", "@i2_3.cox", "--word", "s,x"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["result"]["kind"], "input");
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &[
            "--json",
            "davis",
            "build",
            "--m",
            "@i2_6.cox",
            "--radius",
            "6",
        ][..],
        &[
            "--json",
            "table",
            "export",
            "--m",
            "@twist.cox",
            "--enum-radius",
            "4",
        ][..],
        &["--json", "align", "--map", "@twist_double_map.json"][..],
    ] {
        let (a, b) = (coxeter(args), coxeter(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn davis_cell_counts() {
    let (_, out) = run(&[
        "--json",
        "davis",
        "build",
        "--m",
        "@i2_6.cox",
        "--radius",
        "6",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["cells"].as_array().unwrap().len(), 25);
    assert_eq!(v["result"]["complete"], true);
    let (_, out) = run(&[
        "--json",
        "davis",
        "build",
        "--m",
        "@twist.cox",
        "--radius",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["complete"], false);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn goldens() {
    golden(
        "reduce.json",
        &["--json", "reduce", "--m", "@i2_3.cox", "--word", "s,t,s,t"],
        0,
    );
    golden(
        "spherical_triangle.json",
        &["--json", "spherical", "--m", "@dihedral12_triangle.cox"],
        0,
    );
    golden(
        "normal_form.txt",
        &["normal-form", "--m", "@twist.cox", "--word", "u,s,t,u"],
        0,
    );
    golden(
        "twist.txt",
        &["twist", "--m", "@twist.cox", "--s", "s", "--t", "t"],
        0,
    );
    golden("align.txt", &["align", "--map", "@twist_map.json"], 0);
    golden(
        "align.json",
        &["--json", "align", "--map", "@twist_map.json"],
        0,
    );
    golden(
        "compare_dihedral.txt",
        &[
            "compare",
            "--m",
            "@i2_6.cox",
            "--against",
            "@dihedral12_triangle.cox",
            "--search-iso",
        ],
        1,
    );
    golden(
        "compare_path_star.json",
        &[
            "--json",
            "compare",
            "--m",
            "@a4_path.cox",
            "--against",
            "@d4_star.cox",
        ],
        0,
    );
    golden(
        "davis_i2_2.dot",
        &[
            "davis",
            "build",
            "--m",
            "@i2_2.cox",
            "--radius",
            "4",
            "--format",
            "dot",
        ],
        0,
    );
    golden(
        "davis_skeleton.json",
        &[
            "--json",
            "davis",
            "build",
            "--m",
            "@i2_2.cox",
            "--radius",
            "4",
            "--view",
            "skeleton",
        ],
        0,
    );
    golden(
        "table_i2_3.dot",
        &["table", "export", "--m", "@i2_3.cox", "--format", "dot"],
        0,
    );
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use lexirank::lexrank::lex_compare;

fn lexirank(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lexirank"))
        .args(args)
        .env_remove("LEXIRANK_FORMAT")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FIVE_CLASSES: &str = "\
team,a,b,c,d,e
X,1,0,0,0,0
Y,0,9,9,9,9
Z,1,0,0,0,1
W,0,9,9,9,10
V,1,0,0,0,0
";

#[test]
fn five_class_sheet_ranks_lexicographically() {
    let out = lexirank(&["table", "-", "--format", "csv"], FIVE_CLASSES, &[]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("country,a,b,c,d,e,binary,decimal"));
    let rows: Vec<(String, Vec<u64>)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1..6].iter().map(|x| x.parse().unwrap()).collect())
        })
        .collect();
    let labels: Vec<&str> = rows.iter().map(|(l, _)| l.as_str()).collect();
    assert_eq!(labels, ["Z", "V", "X", "W", "Y"]);
    for pair in rows.windows(2) {
        assert!(lex_compare(&pair[0].1, &pair[1].1).is_ge());
    }
}

#[test]
fn format_from_environment() {
    let out = lexirank(&["table", "-"], "team,a,b\nX,1,0\n", &[("LEXIRANK_FORMAT", "json")]);
    assert_eq!(
        stdout(&out),
        "{\"country\":\"X\",\"medals\":[1,0],\"binary\":\"0.1\",\"decimal\":\"0.5000000\"}\n"
    );
    let flag = lexirank(
        &["table", "-", "--format", "csv"],
        "team,a,b\nX,1,0\n",
        &[("LEXIRANK_FORMAT", "json")],
    );
    assert_eq!(stdout(&flag), "country,a,b,binary,decimal\nX,1,0,0.1,0.5000000\n");
}

#[test]
fn bundled_table_is_deterministic() {
    let first = lexirank(&["table"], "", &[]);
    assert!(first.status.success());
    assert!(stdout(&first).lines().nth(1).unwrap().starts_with("Russia"));
    for _ in 0..3 {
        assert_eq!(lexirank(&["table"], "", &[]).stdout, first.stdout);
    }
}

#[test]
fn empty_sheet() {
    let out = lexirank(&["table", "-"], "", &[]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "Country  Binary  Decimal\n");
}

#[test]
fn table_errors() {
    let out = lexirank(&["table", "/nonexistent/medals.csv"], "", &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = lexirank(&["table", "-"], "team,a\nX,-1\n", &[]);
    assert_eq!(out.status.code(), Some(4));
    let out = lexirank(&["table", "-"], "team,a\nX,one\n", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 7] = [
        (&["rank", "13,11,9"], 0),
        (&["rank", "1,x"], 1),
        (&["bogus"], 1),
        (&["gross", "G^(G^-1)"], 2),
        (&["lc", "exp(d^-1)"], 3),
        (&["lc", "1/0"], 4),
        (&["lc", "--derive", "1/x", "--at", "0"], 4),
    ];
    for (args, code) in cases {
        assert_eq!(lexirank(args, "", &[]).status.code(), Some(code), "{args:?}");
    }
}

#[test]
fn rank_unrank_roundtrip() {
    let out = stdout(&lexirank(&["rank", "13,11,9"], "", &[]));
    let binary = out.split_whitespace().next().unwrap();
    assert_eq!(stdout(&lexirank(&["unrank", binary], "", &[])), "13,11,9\n");
}

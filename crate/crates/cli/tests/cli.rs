use std::process::Command;

use qfano_cli::records::{CandidateRecord, ReportRecord, RrRecord, TorsionRecord, WpsRecord};
use qfano_cli::run;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn qfano(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qfano").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn round_trip<T: Serialize + DeserializeOwned>(stdout: &str) -> usize {
    let mut n = 0;
    for line in stdout.lines() {
        let record: T = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&record).unwrap(), line);
        n += 1;
    }
    n
}

#[test]
fn rr_second_multiple() {
    let (code, out, _) = qfano(&["rr", "--q", "5", "--basket", "2:1", "--t", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("chi(2L)=7 dim|2L|=6"), "{out}");
}

#[test]
fn rr_defaults_and_negative_multiples() {
    let (code, out, _) = qfano(&["rr", "--q", "5", "--basket", "2:1", "--format", "json"]);
    assert_eq!(code, 0);
    let r: RrRecord = serde_json::from_str(out.trim()).unwrap();
    let dims: Vec<_> = r.values.iter().map(|v| v.dim).collect();
    assert_eq!(dims, [Some(2), Some(6), Some(12), Some(21), Some(33)]);

    let (code, out, _) = qfano(&[
        "rr", "--q", "5", "--basket", "2:1", "--t", "-1", "--t", "-5", "--t", "0",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("chi(-L)=0\n") && out.contains("chi(-5L)=-1\n") && out.contains("chi(0L)=1\n"),
        "{out}"
    );
}

#[test]
fn rr_low_index_needs_degree() {
    let (code, _, err) = qfano(&["rr", "--q", "2", "--basket", "3:1"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);
    let (code, out, _) = qfano(&[
        "rr", "--q", "2", "--basket", "3:1", "--degree", "200/3", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let r: RrRecord = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(r.l_cubed.to_string(), "25/3");
    assert_eq!(
        r.values.iter().map(|v| v.dim).collect::<Vec<_>>(),
        [Some(9), Some(35)]
    );
}

#[test]
fn search_json_has_nine_records() {
    let (code, out, _) = qfano(&[
        "search",
        "--min-degree",
        "125/2",
        "--q-min",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(round_trip::<CandidateRecord>(&out), 9);
    let first: CandidateRecord = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(first.q, 7);
    assert!(out.contains(r#""dims":{"1":1,"2":3,"3":6,"4":11,"5":17,"6":25,"7":35}"#));
}

#[test]
fn search_output_independent_of_jobs() {
    for format in ["json", "csv", "table"] {
        let one = qfano(&["search", "--q-max", "3", "--format", format, "--jobs", "1"]);
        let many = qfano(&["search", "--q-max", "3", "--format", format, "--jobs", "8"]);
        assert_eq!(one, many, "{format}");
        assert_eq!(one.0, 0);
    }
}

#[test]
fn search_csv_pads_dims() {
    let (code, out, _) = qfano(&["search", "--q-min", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "q,basket,degree,l_cubed,kc2,dim1,dim2,dim3,dim4,dim5,dim6,dim7,antican_dim"
    );
    assert_eq!(lines.len(), 10);
    assert_eq!(
        *lines.last().unwrap(),
        "4,\"5:1,5:2\",64,1,72/5,2,8,18,33,,,,33"
    );
}

#[test]
fn search_slack_mode() {
    let (_, strict, _) = qfano(&["search", "--q-max", "2", "--format", "json"]);
    let (_, slack, _) = qfano(&[
        "search",
        "--q-max",
        "2",
        "--mode",
        "paper-slack",
        "--format",
        "json",
    ]);
    assert_eq!(round_trip::<CandidateRecord>(&strict), 6);
    assert_eq!(round_trip::<CandidateRecord>(&slack), 7);
    assert!(slack.contains(r#""degree":"137/2""#) && !strict.contains("137/2"));
}

#[test]
fn wps_csv_has_seven_rows() {
    let (code, out, _) = qfano(&["wps", "--max-weight", "30", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().any(|l| l == "1,1,1,2,125/2,5,33,2:1"));
    let (_, json, _) = qfano(&["wps", "--max-weight", "30", "--format", "json"]);
    assert_eq!(round_trip::<WpsRecord>(&json), 7);
}

#[test]
fn torsion_command() {
    let (code, out, _) = qfano(&["torsion", "--basket", "2:1,6:1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"basket":[{"r":2,"b":1},{"r":6,"b":1}],"feasible":false}"#
    );
    round_trip::<TorsionRecord>(&out);
    let sixteen = ["2:1"; 16].join(",");
    let (_, out, _) = qfano(&["torsion", "--basket", &sixteen]);
    assert!(out.contains("feasible: true"));
    let eleven = ["11:1"; 7].join(",");
    let (code, _, err) = qfano(&["torsion", "--basket", &eleven]);
    assert_eq!((code, err.lines().count()), (2, 1));
}

#[test]
fn reproduce_targets() {
    let (code, out, _) = qfano(&["reproduce", "--target", "all", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(round_trip::<ReportRecord>(&out), 4);
    let (code, out, _) = qfano(&["reproduce", "--target", "prop4", "--mode", "paper-slack"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS prop4"));
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    let cases: &[&[&str]] = &[
        &["search", "--min-degree", "1/0"],
        &["search", "--min-degree", "2.5"],
        &["search", "--bogus"],
        &["search", "--q-max", "many"],
        &["search", "--jobs", "0"],
        &["search", "--min-degree", "-3"],
        &["rr", "--q", "5", "--basket", "4:2"],
        &["rr", "--q", "4", "--basket", "2:1"],
        &[
            "rr",
            "--q",
            "5",
            "--basket",
            "2:1",
            "--l-cubed",
            "1/2",
            "--degree",
            "125/2",
        ],
        &["torsion", "--basket", "1:1"],
        &["reproduce", "--target", "prop9"],
        &["frobnicate"],
    ];
    for args in cases {
        let (code, out, err) = qfano(args);
        assert_eq!(code, 2, "{args:?}: {out}{err}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(out.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qfano");
    let ok = Command::new(bin)
        .args(["rr", "--q", "5", "--basket", "2:1", "--t", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("dim|2L|=6"));
    let bad = Command::new(bin)
        .args(["search", "--basket-sum-cap"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&bad.stderr).lines().count(), 1);
}

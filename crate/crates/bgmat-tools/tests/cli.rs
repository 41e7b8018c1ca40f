//! End-to-end checks of the `bgmat` binary: exit codes, the machine-readable
//! line grammar, fixture round-trips, and byte-identical determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use bgmat_tools::format::{
    parse_biased_graph, parse_matroid, serialize_biased_graph, serialize_matroid,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn bgmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgmat")).args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn bounds_table_includes_the_pinned_value() {
    let out = bgmat(&["bounds", "--rank", "2"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("10485760"), "{text}");
    assert!(text.contains("frame-canonical"), "{text}");
    assert_eq!(text.lines().count(), 18, "{text}");

    let lines = bgmat(&["--emit", "lines", "bounds", "--rank", "2"]);
    assert!(stdout_of(&lines).contains("bound 2 frame-line-length 10485760"));
}

#[test]
fn bounds_rejects_rank_zero() {
    let out = bgmat(&["bounds", "--rank", "0"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn circuits_of_the_bundle_are_the_four_triples() {
    let bg = fixture("bundle4.bg");
    let out = bgmat(&["circuits", "--class", "frame", bg.to_str().expect("path")]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("bundle4 frame circuits: 4"), "{text}");
    let triples = text.lines().skip(1).filter(|l| l.split_whitespace().count() == 5).count();
    assert_eq!(triples, 4, "{text}");

    let out = bgmat(&["--emit", "lines", "circuits", "--class", "lift", bg.to_str().expect("path")]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.lines().all(|l| l.starts_with("circuit bundle4 lift ")), "{text}");
}

#[test]
fn quasi_has_no_circuit_family() {
    let bg = fixture("bundle4.bg");
    let out = bgmat(&["circuits", "--class", "quasi", bg.to_str().expect("path")]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn rank_subsets_follow_the_formulas() {
    let bg = fixture("bundle4.bg");
    let out = bgmat(&["--emit", "lines", "rank", "--class", "frame", bg.to_str().expect("path")]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "rank bundle4 frame 2");
    let out = bgmat(&[
        "--emit", "lines", "rank", "--class", "lift",
        bg.to_str().expect("path"), "--subset", "e1",
    ]);
    assert_eq!(stdout_of(&out).trim(), "rank bundle4 lift 1");
    let out = bgmat(&["rank", "--class", "frame", bg.to_str().expect("path"), "--subset", "zz"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn axiom_checks_split_exit_codes() {
    let ok = bgmat(&["check-axioms", fixture("u24.matroid").to_str().expect("path")]);
    assert_eq!(code_of(&ok), 0);
    let bad = bgmat(&["check-axioms", fixture("invalid.matroid").to_str().expect("path")]);
    assert_eq!(code_of(&bad), 1);
    assert!(stdout_of(&bad).contains("elimination"), "{}", stdout_of(&bad));
    let missing = bgmat(&["check-axioms", "no-such-file.matroid"]);
    assert_eq!(code_of(&missing), 3);
}

#[test]
fn represent_member_and_non_member_verdicts() {
    let m = fixture("u24sum.matroid");
    let member = bgmat(&["--emit", "lines", "represent", "--class", "frame", m.to_str().expect("path")]);
    assert_eq!(code_of(&member), 0);
    let text = stdout_of(&member);
    assert!(text.starts_with("verdict u24sum frame member"), "{text}");
    assert!(text.contains("biasedgraph u24sum-frame-rep"), "{text}");

    let non = bgmat(&[
        "--emit", "lines", "represent", "--class", "lift",
        "--max-vertices", "5", m.to_str().expect("path"),
    ]);
    assert_eq!(code_of(&non), 1);
    assert_eq!(stdout_of(&non).trim(), "verdict u24sum lift non-member");
}

#[test]
fn fixing_graph_lists_the_long_line() {
    let out = bgmat(&[
        "--emit", "lines", "fixing-graph",
        fixture("pendant.bg").to_str().expect("path"),
        fixture("pendant.matroid").to_str().expect("path"),
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "fixing-line pendant l1,l2,l3,l4,l5,l6 u v");
}

#[test]
fn fixing_graph_rejects_a_wrong_matroid() {
    let out = bgmat(&[
        "fixing-graph",
        fixture("bundle4.bg").to_str().expect("path"),
        fixture("pendant.matroid").to_str().expect("path"),
    ]);
    assert_eq!(code_of(&out), 1, "a graph on other labels never represents");
    let out = bgmat(&[
        "fixing-graph",
        fixture("pendant.bg").to_str().expect("path"),
        fixture("pendant-wrongbias.matroid").to_str().expect("path"),
    ]);
    assert_eq!(code_of(&out), 1, "same labels, wrong matroid: negative verdict");
    assert!(stdout_of(&out).starts_with("verdict"), "{}", stdout_of(&out));
}

#[test]
fn canonicalize_emits_a_parseable_graph() {
    let out = bgmat(&[
        "canonicalize", "--class", "frame",
        fixture("pendant.bg").to_str().expect("path"),
        fixture("pendant.matroid").to_str().expect("path"),
    ]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let body: String =
        text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let ng = parse_biased_graph(&body).expect("canonical output parses");
    assert_eq!(ng.name, "pendant-canonical");
    let out = bgmat(&[
        "canonicalize", "--class", "frame",
        fixture("bundle4.bg").to_str().expect("path"),
        fixture("u27.matroid").to_str().expect("path"),
    ]);
    assert_eq!(code_of(&out), 1, "not a representation of that matroid");
}

#[test]
fn reconstruct_emits_one_span_per_component() {
    let out = bgmat(&["reconstruct", fixture("pendant.matroid").to_str().expect("path")]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.matches("biasedgraph pendant-span").count(), 1, "{text}");
}

#[test]
fn glue_rebuilds_the_bundle() {
    let out = bgmat(&[
        "glue",
        fixture("bundle7-no-e0.bg").to_str().expect("path"),
        fixture("bundle7-no-e1.bg").to_str().expect("path"),
        fixture("bundle7-no-e2.bg").to_str().expect("path"),
        "--line", "e0,e1,e2",
        fixture("u27.matroid").to_str().expect("path"),
    ]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("biasedgraph u27-glued"), "{text}");
    assert_eq!(text.matches("link ").count(), 7, "{text}");

    let bad = bgmat(&[
        "glue",
        fixture("bundle7-no-e0.bg").to_str().expect("path"),
        fixture("bundle7-no-e1.bg").to_str().expect("path"),
        fixture("bundle7-no-e2.bg").to_str().expect("path"),
        "--line", "e0,e1",
        fixture("u27.matroid").to_str().expect("path"),
    ]);
    assert_eq!(code_of(&bad), 3);
}

#[test]
fn scans_respect_the_envelope() {
    let out = bgmat(&[
        "--emit", "lines", "excluded-scan",
        "--class", "frame", "--rank", "2", "--max-elements", "6",
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "scan frame 2 6 0");
    let out = bgmat(&[
        "excluded-scan", "--class", "frame", "--rank", "4", "--max-elements", "7",
    ]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn verify_runs_a_fast_suite_and_rejects_unknown_names() {
    let out = bgmat(&["--emit", "lines", "verify", "--suite", "u24"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "suite u24 pass");
    let out = bgmat(&["verify", "--suite", "u24"]);
    assert!(stdout_of(&out).contains("ok   "), "{}", stdout_of(&out));
    let out = bgmat(&["verify", "--suite", "nope"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn bad_arguments_and_help_use_the_right_codes() {
    let out = bgmat(&["no-such-command"]);
    assert_eq!(code_of(&out), 3);
    let out = bgmat(&["--help"]);
    assert_eq!(code_of(&out), 0);
    let out = bgmat(&["circuits", "--class", "frantic", "x.bg"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn fixture_corpus_round_trips() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut seen = 0usize;
    let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("fixtures dir")
        .map(|e| e.expect("entry").path())
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path).expect("fixture reads");
        match path.extension().and_then(|s| s.to_str()) {
            Some("matroid") => {
                if path.file_name().and_then(|s| s.to_str()) == Some("invalid.matroid") {
                    // Parses (well-formed) but fails the axioms; round-trips too.
                    let nm = parse_matroid(&text).expect("parses");
                    let back = parse_matroid(&serialize_matroid(&nm)).expect("re-parses");
                    assert_eq!(back, nm);
                    seen += 1;
                    continue;
                }
                let nm = parse_matroid(&text).expect("parses");
                let once = serialize_matroid(&nm);
                let back = parse_matroid(&once).expect("re-parses");
                assert_eq!(back, nm, "{}", path.display());
                assert_eq!(serialize_matroid(&back), once, "{}", path.display());
            }
            Some("bg") => {
                let ng = parse_biased_graph(&text).expect("parses");
                let once = serialize_biased_graph(&ng);
                let back = parse_biased_graph(&once).expect("re-parses");
                assert_eq!(back.name, ng.name, "{}", path.display());
                assert_eq!(back.balanced, ng.balanced, "{}", path.display());
                assert_eq!(serialize_biased_graph(&back), once, "{}", path.display());
            }
            _ => panic!("unexpected fixture {}", path.display()),
        }
        seen += 1;
    }
    assert!(seen >= 8, "fixture corpus went missing: {seen}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["represent", "--class", "frame", "u24sum.matroid"],
        vec!["circuits", "--class", "frame", "pendant.bg"],
        vec!["reconstruct", "pendant.matroid"],
        vec!["--emit", "lines", "fixing-graph", "pendant.bg", "pendant.matroid"],
        vec!["excluded-scan", "--class", "lift", "--rank", "2", "--max-elements", "5"],
    ];
    for command in commands {
        let resolved: Vec<String> = command
            .iter()
            .map(|a| {
                if a.ends_with(".matroid") || a.ends_with(".bg") {
                    fixture(a).to_str().expect("path").to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        let args: Vec<&str> = resolved.iter().map(|s| s.as_str()).collect();
        let first = bgmat(&args);
        let second = bgmat(&args);
        assert_eq!(first.stdout, second.stdout, "{command:?}");
        assert_eq!(code_of(&first), code_of(&second), "{command:?}");
    }
}

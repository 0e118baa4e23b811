//! Commands end to end: reports, exit statuses and SVG renderings.

use std::process::Command as Process;

use cobcalc::demo::demo_presentation;
use cobcalc::geometry::{detect_crossings, CobordismDiagram, End, PlCurve, Point2, Strand};
use cobcalc_cli::run::{run, Command, Options};
use cobcalc_cli::svg::render;
use cobcalc_cli::text::point;
use cobcalc_cli::word_text::word;
use proptest::prelude::*;

mod common;

const DEMO: &str = include_str!("../data/demo.cob");
const IDENTITY: &str = include_str!("../data/identity.cob");

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cobcalc(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_cobcalc")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 report"))
}

fn lines(report: &str) -> Vec<&str> {
    report.lines().collect()
}

#[test]
fn shadow_of_the_identity_file_is_zero() {
    let (code, out) = cobcalc(&["shadow", "--input", &data("identity.cob")]);
    assert_eq!(code, 0);
    assert!(lines(&out).contains(&"shadow=0/1"), "{out}");
}

#[test]
fn demo_surgeries_on_x_and_y_are_equivalent_through_z() {
    let (code, out) = cobcalc(&["equiv", "(surgery A B (x) 0)", "(surgery A B (y) 0)", "--input", &data("demo.cob")]);
    assert_eq!(code, 0);
    assert!(lines(&out).contains(&"equivalent witness={z}"), "{out}");
    assert!(lines(&out).contains(&"verified=true"), "{out}");
}

#[test]
fn k0_and_omega_of_the_demo_have_equal_dimensions() {
    let dim = |cmd| {
        let (code, out) = cobcalc(&[cmd, "--input", &data("demo.cob")]);
        assert_eq!(code, 0);
        out.lines().find_map(|l| l.strip_prefix("dim=")).expect("dim line").to_string()
    };
    assert_eq!(dim("k0"), dim("omega"));
}

#[test]
fn exit_statuses_separate_parse_and_engine_errors() {
    let demo = data("demo.cob");
    assert_eq!(cobcalc(&["validate", "--input", &demo]).0, 0);
    assert_eq!(cobcalc(&["shadow", "(gen nowhere)", "--input", &demo]).0, 1);
    assert_eq!(cobcalc(&["compose", "(gen g)", "(gen g)", "--input", &demo]).0, 1);
    assert_eq!(cobcalc(&["shadow", "(gen g", "--input", &demo]).0, 2);
    assert_eq!(cobcalc(&["rotate", "(gen g)", "two", "--input", &demo]).0, 2);
    assert_eq!(cobcalc(&["validate", "--input", "/nonexistent/file.cob"]).0, 2);
    assert_eq!(cobcalc(&["frobnicate"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cob");
    std::fs::write(&bad, "[objects]\nA\n[mystery]\n").unwrap();
    let (code, out) = cobcalc(&["validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("error=parse error at 3:2: unknown section [mystery]"), "{out}");
}

#[test]
fn strict_minmax_changes_the_action_rule() {
    // x: f_A = 2 > f_B = 1 and y: 1 > 0 pass pointwise, but min f_A = 1 is not above max f_B = 1
    let text = DEMO.replace("\nx 1/1 0/1\n", "\nx 2/1 1/1\n");
    let args = vec!["A".to_string(), "B".into(), "(x y)".into(), "0".into()];
    let loose = run(Command::Surgery, Some(&text), &args, &Options::default()).report;
    assert_eq!(loose.status, 0, "{loose}");
    let strict = run(Command::Surgery, Some(&text), &args, &Options { strict_minmax: true, ..Options::default() }).report;
    assert_eq!(strict.status, 1);
    assert_eq!(strict.lines, vec!["error=point y is not action-negative for (A, B)".to_string()]);
}

#[test]
fn dist_reports_value_bound_and_certificate() {
    let (code, out) = cobcalc(&["dist", "A", "B", "--depth", "3", "--input", &data("demo.cob")]);
    assert_eq!(code, 0);
    let line = out.lines().find(|l| l.starts_with("value=")).expect("value line");
    assert_eq!(line, "value=1/2 bound=3 certificate=(gen g)");
}

fn all_commands() -> Vec<(Command, Vec<&'static str>, Options)> {
    let o = Options::default;
    vec![
        (Command::Validate, vec![], o()),
        (Command::Shadow, vec!["(gen sx)"], o()),
        (Command::Compose, vec!["(gen gi)", "(gen g)"], o()),
        (Command::Rotate, vec!["(gen sx)", "2"], o()),
        (Command::Cable, vec!["(gen sx)", "(gen sy)", "(z)", "1/3"], o()),
        (Command::Surgery, vec!["A", "B", "(x)", "1/4"], Options { strict_minmax: true, ..o() }),
        (Command::Theta, vec!["(compose (gen gi) (gen g))"], o()),
        (Command::Equiv, vec!["(gen sx)", "(gen sy)"], o()),
        (Command::K0, vec![], o()),
        (Command::Omega, vec![], o()),
        (Command::Dist, vec!["B", "A"], Options { depth: 3, family: vec!["A#[x]B".into()], ..o() }),
        (Command::CheckAxioms, vec![], Options { seed: Some(5), ..o() }),
        (Command::Render, vec!["(gen sy)"], o()),
    ]
}

#[test]
fn every_report_is_reproducible() {
    for (cmd, args, opts) in all_commands() {
        let args: Vec<String> = args.into_iter().map(String::from).collect();
        let first = run(cmd, Some(DEMO), &args, &opts);
        let second = run(cmd, Some(DEMO), &args, &opts);
        assert_eq!(first.report.status, 0, "{}", first.report);
        assert_eq!(first.report.to_string(), second.report.to_string());
        assert_eq!(first.svg, second.svg);
        let text = first.report.to_string();
        let l = lines(&text);
        assert_eq!(l[0], format!("command={}", cmd.name()));
        assert!(l[1].starts_with("inputs=") && l[1].len() == 7 + 64);
        assert_eq!(l.last(), Some(&"status=0"));
        assert!(l.iter().all(|x| !x.is_empty()));
    }
    let demo = data("demo.cob");
    let args = ["check-axioms", "--input", demo.as_str(), "--seed", "3"];
    assert_eq!(cobcalc(&args), cobcalc(&args));
}

#[test]
fn inputs_digest_tracks_inputs() {
    let a = run(Command::Shadow, Some(IDENTITY), &[], &Options::default()).report;
    let b = run(Command::Shadow, Some(&IDENTITY.replace("A", "B")), &[], &Options::default()).report;
    let c = run(Command::Shadow, Some(IDENTITY), &[], &Options { depth: 5, ..Options::default() }).report;
    assert_ne!(a.digest, b.digest);
    assert_ne!(a.digest, c.digest);
    assert_eq!(a.lines, b.lines);
}

fn attr<'a>(element: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = element.find(&key)? + key.len();
    let len = element[start..].find('"')?;
    Some(&element[start..start + len])
}

fn end(s: &str) -> Option<End> {
    let (side, h) = s.split_once(':')?;
    let h = h.parse().ok()?;
    Some(if side == "left" { End::left(h) } else { End::right(h) })
}

struct Parsed {
    diagram: CobordismDiagram,
    crossings: Vec<Point2>,
    ends: usize,
    annotations: Vec<Point2>,
}

/// Reads back strands, ends, crossings and annotations from the exact data attributes.
fn reparse(svg: &str) -> Parsed {
    let mut out = Parsed { diagram: CobordismDiagram::default(), crossings: Vec::new(), ends: 0, annotations: Vec::new() };
    for element in svg.split('<').filter(|e| !e.starts_with('/')) {
        match attr(element, "class") {
            Some("strand") => {
                let vertices = attr(element, "data-points").unwrap().split(' ').map(|p| point(p).unwrap()).collect();
                let (first, last) = (end(attr(element, "data-first").unwrap()), end(attr(element, "data-last").unwrap()));
                out.diagram.strands.push(Strand::new(PlCurve::new(vertices, first, last), attr(element, "data-object").unwrap()));
            }
            Some("end") => out.ends += 1,
            Some("crossing") => out.crossings.push(point(attr(element, "data-at").unwrap()).unwrap()),
            Some("mark" | "handle") => out.annotations.push(point(attr(element, "data-at").unwrap()).unwrap()),
            _ => {}
        }
    }
    out
}

fn check_render(d: &CobordismDiagram) -> Result<(), TestCaseError> {
    let svg = render(d).unwrap();
    prop_assert!(svg.starts_with("<?xml") && svg.contains(r#"version="1.1""#) && svg.trim_end().ends_with("</svg>"));
    let parsed = reparse(&svg);
    let expected: Vec<Point2> = detect_crossings(d).unwrap().into_iter().map(|c| c.point).collect();
    let rebuilt: Vec<Point2> = detect_crossings(&parsed.diagram).unwrap().into_iter().map(|c| c.point).collect();
    prop_assert_eq!(&parsed.crossings, &expected);
    prop_assert_eq!(&rebuilt, &expected);
    prop_assert_eq!(&parsed.diagram.strands, &d.strands);
    prop_assert_eq!(parsed.ends, d.end_count());
    let at: Vec<Point2> = d.annotations.iter().map(|a| a.at.clone()).collect();
    prop_assert_eq!(parsed.annotations, at);
    Ok(())
}

#[test]
fn demo_renderings_reparse_to_their_crossings() {
    let p = demo_presentation().unwrap();
    for s in ["(gen g)", "(surgery A B (x) 1/4)", "(cable (gen sx) (gen sy) (z) 1/2)", "(compose (gen g) (rotate (gen sx) 2))"] {
        check_render(word(s, &p).unwrap().diagram()).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn renderings_reparse_to_their_crossings(d in common::diagrams()) {
        prop_assume!(d.validate().is_ok());
        check_render(&d)?;
    }
}

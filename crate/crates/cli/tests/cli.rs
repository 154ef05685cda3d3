use std::collections::BTreeSet;

use clap::CommandFactory;
use hocat_cli::{run, Cli, OPERATIONS};

mod common;

use common::{data, hocat, machine_transcript, suite, SUBCOMMANDS};

#[test]
fn documented_examples() {
    let out = hocat(&["check-kan", &data("nerve-of-D.cat"), "--dim", "3"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "KAN: pass (d=3)\n"));
    let out = hocat(&["check-quasicat", &data("nerve-of-E.cat"), "--dim", "3"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "QUASI: pass; UNIQUE-INNER: pass; KAN: fail (V[2,0] witness)\n"));
    let out = hocat(&["hall-product", &data("a1.quiver"), "--q", "2", "--dims", "1", "1"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "[1]·[1] = 3·[2]\n"));
}

#[test]
fn negative_verdicts_exit_zero() {
    let out = hocat(&["check-kan", &data("nerve-of-E.cat")]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "KAN: fail (V[2,0] witness)\n"));
    let out = hocat(&["dk-check", &data("E-to-D.functor")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("DK: NotEquivalent"));
    let out = hocat(&["dk-check", &data("C-to-D.functor")]);
    assert!(out.stdout.contains("DK: Equivalent") && out.stdout.contains("ENRICHED: Equivalent"));
}

#[test]
fn input_errors_exit_one() {
    let out = hocat(&["check-kan", &data("missing.cat")]);
    assert_eq!(out.code, 1);
    let out = hocat(&["check-kan", &data("bad.cat")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("parse error at line 3"), "{}", out.stderr);
    assert_eq!(hocat(&["check-kan", &data("a1.quiver")]).code, 1);
    assert_eq!(hocat(&["no-such-command"]).code, 1);
    assert_eq!(hocat(&["check-kan", &data("nerve-of-E.cat"), "--dim", "1"]).code, 1);
    assert_eq!(hocat(&["localize", &data("nerve-of-E.cat"), "--class", "nope"]).code, 1);
    assert_eq!(hocat(&["hall-product", &data("a1.quiver"), "--q", "6", "--dims", "1", "1"]).code, 1);
    assert_eq!(hocat(&["derived-hall", "--q", "2", "1@5", "1@0"]).code, 1);
    assert_eq!(hocat(&["--help"]).code, 0);
}

#[test]
fn caps_and_unknowns_exit_two() {
    let out = hocat(&["coherent-nerve", &data("nerve-of-E.cat"), "--dim", "4"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("coherent nerve dimension"), "{}", out.stderr);
    let out = hocat(&["localize", &data("parallel.cat"), "--class", "all", "--word-cap", "3", "--from", "x", "--to", "y"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("Unknown"));
}

#[test]
fn every_operation_has_one_subcommand() {
    let declared: BTreeSet<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    let expected: BTreeSet<String> = SUBCOMMANDS.iter().map(|s| s.to_string()).collect();
    assert_eq!(declared, expected);
    let ops: Vec<&str> = OPERATIONS.iter().map(|(op, _)| *op).collect();
    let unique: BTreeSet<&str> = ops.iter().copied().collect();
    assert_eq!(unique.len(), ops.len(), "an operation is listed twice");
    let used: BTreeSet<&str> = OPERATIONS.iter().map(|(_, sub)| *sub).collect();
    assert_eq!(used, SUBCOMMANDS.iter().copied().collect());
    let suite = suite();
    let covered: BTreeSet<&str> = suite.iter().map(|args| args[0].as_str()).collect();
    assert_eq!(covered, used);
    for args in &suite {
        let out = run(std::iter::once("hocat".to_string()).chain(args.iter().cloned()));
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn machine_output_is_deterministic() {
    let first = machine_transcript();
    let second = machine_transcript();
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.matches("status code=0").count(), SUBCOMMANDS.len());
}

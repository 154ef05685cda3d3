//! Shared fixtures: the subcommand list and one invocation per subcommand.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use hocat_cli::{run, Outcome};

pub const SUBCOMMANDS: [&str; 18] = [
    "nerve",
    "check-kan",
    "check-quasicat",
    "classify-nerve",
    "classifying-diagram",
    "segal-check",
    "complete-check",
    "dk-check",
    "discretize",
    "homology",
    "coherent-nerve",
    "localize",
    "hammock",
    "ore-check",
    "theta-hom",
    "hall-product",
    "hall-assoc",
    "derived-hall",
];

pub fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

pub fn hocat(args: &[&str]) -> Outcome {
    run(std::iter::once("hocat").chain(args.iter().copied()))
}

/// One invocation per subcommand.
pub fn suite() -> Vec<Vec<String>> {
    let d = data;
    vec![
        vec!["nerve".into(), d("nerve-of-E.cat"), "--emit".into()],
        vec!["check-kan".into(), d("nerve-of-D.cat"), "--dim".into(), "3".into()],
        vec!["check-quasicat".into(), d("nerve-of-E.cat"), "--dim".into(), "3".into()],
        vec!["classify-nerve".into(), d("circle.sset")],
        vec!["classifying-diagram".into(), d("nerve-of-E.cat"), "--dim".into(), "2".into(), "--emit".into()],
        vec!["segal-check".into(), d("E.bisset")],
        vec!["complete-check".into(), d("nerve-of-D.cat")],
        vec!["dk-check".into(), d("E-to-D.functor")],
        vec!["discretize".into(), d("nerve-of-D.cat"), "--emit".into()],
        vec!["homology".into(), d("circle.sset")],
        vec!["coherent-nerve".into(), d("iso-codiscrete.scat"), "--dim".into(), "2".into(), "--emit".into()],
        vec!["localize".into(), d("nerve-of-E.cat"), "--class".into(), "f".into()],
        vec!["hammock".into(), d("nerve-of-E.cat"), "--class".into(), "f".into()],
        vec!["ore-check".into(), d("parallel.cat"), "--class".into(), "all".into()],
        vec!["theta-hom".into(), "[2]([0],[0])".into(), "[2]([1],[0])".into(), "--then".into(), "[1]([2])".into(), "--emit".into()],
        vec!["hall-product".into(), d("a2.quiver"), "--q".into(), "2".into(), "--bound".into(), "1".into(), "1".into()],
        vec!["hall-assoc".into(), d("a1.quiver"), "--q".into(), "2".into(), "--bound".into(), "3".into()],
        vec!["derived-hall".into(), "--q".into(), "2".into(), "--window".into(), "0".into(), "1".into(), "1@0".into(), "1@1".into()],
    ]
}

/// Machine output of the whole suite, run through the binary.
pub fn machine_transcript() -> Vec<u8> {
    let mut transcript = Vec::new();
    for args in suite() {
        let out = Command::new(env!("CARGO_BIN_EXE_hocat")).arg("--format").arg("machine").args(&args).output().unwrap();
        transcript.extend(format!("# {}\n", args[0]).into_bytes());
        transcript.extend(out.stdout);
        transcript.extend(format!("# exit {}\n", out.status.code().unwrap_or(-1)).into_bytes());
    }
    transcript
}

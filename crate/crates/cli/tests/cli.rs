//! End-to-end tests that drive the compiled `convcode` binary.
//!
//! Every test spawns the real executable, so these exercise argument
//! parsing, exit codes, on-disk formats, and printed output exactly as a
//! user would see them.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_convcode"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("failed to spawn convcode")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout was not utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr was not utf-8")
}

/// Runs the binary and asserts it succeeded, returning stdout.
fn run_ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "command {args:?} failed\nstdout: {}\nstderr: {}",
        stdout_of(&out),
        stderr_of(&out),
    );
    stdout_of(&out)
}

/// Runs the binary and asserts it failed with the given exit code,
/// returning stderr.
fn run_err(dir: &Path, args: &[&str], code: i32) -> String {
    let out = run(dir, args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "command {args:?} exited with {:?}, expected {code}\nstdout: {}\nstderr: {}",
        out.status.code(),
        stdout_of(&out),
        stderr_of(&out),
    );
    stderr_of(&out)
}

#[test]
fn construct_reports_scheme_field_and_bound() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();

    let cases: &[(&[&str], &str, &str, &str)] = &[
        (
            &["--scheme", "hankel1", "--lambda", "2", "--ki", "5", "--ri", "4", "--rf", "2"],
            "hankel1",
            "GF(11)",
            "6",
        ),
        (
            &["--scheme", "hankel2", "--lambda", "2", "--ki", "4", "--ri", "3", "--rf", "2"],
            "hankel2",
            "GF(13)",
            "6",
        ),
        (
            &["--scheme", "general", "--lambda", "2", "--ki", "3", "--ri", "3", "--rf", "3"],
            "general",
            "GF(2^15)",
            "9",
        ),
        (
            &["--scheme", "trivial", "--lambda", "2", "--ki", "2", "--ri", "1", "--rf", "2"],
            "trivial",
            "GF(7)",
            "6",
        ),
    ];

    for (i, (flags, scheme, field, bound)) in cases.iter().enumerate() {
        let out_file = format!("code-{i}.json");
        let mut args: Vec<&str> = vec!["construct"];
        args.extend_from_slice(flags);
        args.extend_from_slice(&["--out", &out_file]);
        let stdout = run_ok(dir, &args);
        let expected =
            format!("scheme: {scheme}\nfield: {field}\naccess lower bound: {bound}\n");
        assert_eq!(stdout, expected, "unexpected construct output for {scheme}");
        assert!(dir.join(&out_file).is_file(), "manifest {out_file} not written");
    }
}

#[test]
fn auto_picks_the_cheapest_scheme_and_field() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    let stdout = run_ok(
        dir,
        &[
            "construct", "--scheme", "auto", "--lambda", "2", "--ki", "3", "--ri", "9",
            "--rf", "2", "--out", "auto.json",
        ],
    );
    assert_eq!(
        stdout,
        "scheme: hankel-s (s = 3)\nfield: GF(11)\naccess lower bound: 6\n"
    );

    // Pinning s explicitly must reproduce the same construction.
    run_ok(
        dir,
        &[
            "construct", "--scheme", "hankel-s", "--s", "3", "--lambda", "2", "--ki", "3",
            "--ri", "9", "--rf", "2", "--out", "pinned.json",
        ],
    );
    let auto = fs::read(dir.join("auto.json")).unwrap();
    let pinned = fs::read(dir.join("pinned.json")).unwrap();
    assert_eq!(auto, pinned, "auto and explicit hankel-s manifests differ");
}

#[test]
fn construct_rejects_violated_preconditions() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    // hankel1 requires rF <= floor(rI / lambda); 2 > floor(4 / 3).
    let stderr = run_err(
        dir,
        &[
            "construct", "--scheme", "hankel1", "--lambda", "3", "--ki", "5", "--ri", "4",
            "--rf", "2", "--out", "bad.json",
        ],
        2,
    );
    assert!(
        stderr.contains("precondition violated for hankel1"),
        "stderr should name the failed scheme: {stderr}"
    );
    assert!(
        stderr.contains("rF <= floor(rI / lambda)"),
        "stderr should name the violated inequality: {stderr}"
    );
    assert!(!dir.join("bad.json").exists(), "no manifest should be written on failure");
}

#[test]
fn construct_rejects_conflicting_flags() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();

    // auto chooses its own field.
    run_err(
        dir,
        &[
            "construct", "--scheme", "auto", "--lambda", "2", "--ki", "5", "--ri", "4",
            "--rf", "2", "--field-q", "11", "--out", "x.json",
        ],
        2,
    );
    // hankel-s needs --s.
    run_err(
        dir,
        &[
            "construct", "--scheme", "hankel-s", "--lambda", "2", "--ki", "3", "--ri", "9",
            "--rf", "2", "--out", "x.json",
        ],
        2,
    );
    // --char only applies to the general scheme.
    run_err(
        dir,
        &[
            "construct", "--scheme", "hankel1", "--lambda", "2", "--ki", "5", "--ri", "4",
            "--rf", "2", "--char", "2", "--out", "x.json",
        ],
        2,
    );
}

#[test]
fn bounds_prints_the_closed_forms() {
    let tmp = TempDir::new().unwrap();
    let stdout = run_ok(
        tmp.path(),
        &["bounds", "--lambda", "2", "--ki", "10", "--ri", "4", "--rf", "4"],
    );
    assert_eq!(
        stdout,
        "access lower bound: 12\n\
         baseline (read all data, write all parities): 24\n\
         minimum reads per stripe: 4\n\
         maximum unchanged blocks: 20\n"
    );
}

/// A 20-byte message for the (lambda, kI, rI, rF) = (2, 5, 4, 2) fixture
/// over GF(11): ten message rows, two positions per block, one byte per
/// symbol, position-major. Every byte must stay below 11.
fn fixture_message() -> Vec<u8> {
    vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0, 7, 3, 9, 1, 4, 2, 8, 5]
}

/// Constructs the hankel1 fixture, encodes `fixture_message`, and returns
/// the workspace directory. Layout: code.json, input.bin, stripes/stripe-N.
fn set_up_fixture(dir: &Path) {
    run_ok(
        dir,
        &[
            "construct", "--scheme", "hankel1", "--lambda", "2", "--ki", "5", "--ri", "4",
            "--rf", "2", "--out", "code.json",
        ],
    );
    fs::write(dir.join("input.bin"), fixture_message()).unwrap();
    run_ok(
        dir,
        &[
            "encode", "--code", "code.json", "--input", "input.bin", "--out", "stripes",
        ],
    );
}

#[test]
fn round_trip_encode_convert_decode() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    set_up_fixture(dir);

    for i in 1..=2 {
        let stripe = dir.join(format!("stripes/stripe-{i}"));
        assert!(stripe.join("stripe.json").is_file());
        // nI = 9 blocks, one byte per symbol, two positions per block.
        for b in 1..=9 {
            let file = stripe.join(format!("block-{b}.bin"));
            assert_eq!(fs::read(&file).unwrap().len(), 2, "{file:?}");
        }
    }

    let stdout = run_ok(
        dir,
        &[
            "convert", "--code", "code.json", "--stripes", "stripes", "--out", "final",
            "--report", "report.json",
        ],
    );
    let expected_report = "{\"accessOptimal\":true,\"baselineAccess\":12,\"lowerBound\":6,\
                           \"reads\":4,\"readsPerStripe\":[2,2],\"totalAccess\":6,\"writes\":2}";
    assert_eq!(stdout.trim_end(), expected_report);
    assert_eq!(
        fs::read_to_string(dir.join("report.json")).unwrap().trim_end(),
        expected_report
    );

    // The merged stripe has nF = 12 blocks.
    for b in 1..=12 {
        assert!(dir.join(format!("final/block-{b:02}.bin")).is_file());
    }

    // Erase both new parities; the ten data blocks still decode.
    run_ok(
        dir,
        &[
            "decode", "--code", "code.json", "--stripe", "final", "--erase", "11,12",
            "--out", "roundtrip.bin",
        ],
    );
    assert_eq!(
        fs::read(dir.join("roundtrip.bin")).unwrap(),
        fixture_message(),
        "decoded bytes differ from the original message"
    );

    // Erasing data blocks instead must give the same answer.
    run_ok(
        dir,
        &[
            "decode", "--code", "code.json", "--stripe", "final", "--erase", "1,6",
            "--out", "roundtrip2.bin",
        ],
    );
    assert_eq!(fs::read(dir.join("roundtrip2.bin")).unwrap(), fixture_message());
}

#[test]
fn reencode_writes_the_same_stripe_at_higher_cost() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    set_up_fixture(dir);

    run_ok(
        dir,
        &[
            "convert", "--code", "code.json", "--stripes", "stripes", "--out", "fast",
            "--report", "fast.json",
        ],
    );
    let stdout = run_ok(
        dir,
        &[
            "reencode", "--code", "code.json", "--stripes", "stripes", "--out", "slow",
            "--report", "slow.json",
        ],
    );
    assert_eq!(
        stdout.trim_end(),
        "{\"accessOptimal\":false,\"baselineAccess\":12,\"lowerBound\":6,\
         \"reads\":10,\"readsPerStripe\":[5,5],\"totalAccess\":12,\"writes\":2}"
    );

    // Same code, same data: every output file must match byte for byte.
    let mut names: Vec<String> = fs::read_dir(dir.join("fast"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 13, "12 blocks plus stripe.json");
    for name in names {
        let a = fs::read(dir.join("fast").join(&name)).unwrap();
        let b = fs::read(dir.join("slow").join(&name)).unwrap();
        assert_eq!(a, b, "{name} differs between convert and reencode");
    }
}

#[test]
fn decode_recovers_an_initial_stripe() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    set_up_fixture(dir);

    // Drop two of stripe 1's data blocks; any five of the seven remaining
    // blocks determine its rows.
    run_ok(
        dir,
        &[
            "decode", "--code", "code.json", "--stripe", "stripes/stripe-1", "--erase",
            "1,2", "--out", "part.bin",
        ],
    );
    // Stripe 1 carries message rows 0..5; the raw layout is position-major.
    let full = fixture_message();
    let mut expected = Vec::new();
    for pos in 0..2 {
        expected.extend_from_slice(&full[pos * 10..pos * 10 + 5]);
    }
    assert_eq!(fs::read(dir.join("part.bin")).unwrap(), expected);
}

#[test]
fn seeded_random_encodings_are_reproducible() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "construct", "--scheme", "hankel1", "--lambda", "2", "--ki", "5", "--ri", "4",
            "--rf", "2", "--out", "code.json",
        ],
    );
    for out in ["a", "b"] {
        run_ok(
            dir,
            &[
                "encode", "--code", "code.json", "--random", "3", "--seed", "7", "--out",
                out,
            ],
        );
    }
    run_ok(
        dir,
        &[
            "encode", "--code", "code.json", "--random", "3", "--seed", "8", "--out", "c",
        ],
    );
    let a = fs::read(dir.join("a/stripe-1/block-1.bin")).unwrap();
    let b = fs::read(dir.join("b/stripe-1/block-1.bin")).unwrap();
    let c = fs::read(dir.join("c/stripe-1/block-1.bin")).unwrap();
    assert_eq!(a.len(), 3);
    assert_eq!(a, b, "same seed must reproduce the same stripes");
    assert_ne!(a, c, "different seeds should give different data");
}

#[test]
fn verify_passes_for_a_fresh_construction() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "construct", "--scheme", "hankel2", "--lambda", "2", "--ki", "4", "--ri", "3",
            "--rf", "2", "--out", "code.json",
        ],
    );
    // No flags means run everything.
    let stdout = run_ok(dir, &["verify", "--code", "code.json"]);
    for line in [
        "mds initial (7;4): pass",
        "mds final (10;8): pass",
        "constructible at t = 2: pass (witness columns per stripe: [[1, 2], [2, 3]])",
        "min read set: 4 (closed form 4): pass",
        "stability: pass",
        "plan soundness: pass",
        "result: pass",
    ] {
        assert!(stdout.contains(line), "missing line {line:?} in:\n{stdout}");
    }
}

#[test]
fn verify_catches_a_tampered_plan() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "construct", "--scheme", "hankel2", "--lambda", "2", "--ki", "4", "--ri", "3",
            "--rf", "2", "--out", "code.json",
        ],
    );
    let manifest = fs::read_to_string(dir.join("code.json")).unwrap();
    let tampered = manifest.replacen("\"coeff\":1", "\"coeff\":2", 1);
    assert_ne!(manifest, tampered, "fixture should contain a unit coefficient");
    fs::write(dir.join("bad.json"), &tampered).unwrap();

    let out = run(dir, &["verify", "--code", "bad.json", "--all"]);
    assert_eq!(out.status.code(), Some(1), "a failed check must exit 1");
    let stdout = stdout_of(&out);
    assert!(stdout.contains("plan soundness: FAIL"), "{stdout}");
    assert!(stdout.contains("result: fail"), "{stdout}");

    // The parity matrices themselves are untouched, so an MDS-only pass
    // still succeeds on the tampered manifest.
    let stdout = run_ok(dir, &["verify", "--code", "bad.json", "--mds"]);
    assert!(stdout.contains("result: pass"), "{stdout}");
}

#[test]
fn verify_skips_constructibility_for_the_trivial_scheme() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "construct", "--scheme", "trivial", "--lambda", "2", "--ki", "2", "--ri", "1",
            "--rf", "2", "--out", "code.json",
        ],
    );
    let stdout = run_ok(dir, &["verify", "--code", "code.json", "--all"]);
    assert!(
        stdout.contains("constructible: skipped (the trivial scheme reads data blocks directly)"),
        "{stdout}"
    );
    assert!(stdout.contains("result: pass"), "{stdout}");
}

#[test]
fn usage_and_data_errors_use_distinct_exit_codes() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "construct", "--scheme", "hankel1", "--lambda", "2", "--ki", "5", "--ri", "4",
            "--rf", "2", "--out", "code.json",
        ],
    );

    // A raw byte that is not a GF(11) symbol: precondition, exit 2.
    let mut bad = fixture_message();
    bad[3] = 11;
    fs::write(dir.join("bad.bin"), &bad).unwrap();
    let stderr = run_err(
        dir,
        &["encode", "--code", "code.json", "--input", "bad.bin", "--out", "s"],
        2,
    );
    assert!(stderr.contains("out of range"), "{stderr}");

    // A raw input whose length is not a whole number of positions: exit 2.
    fs::write(dir.join("short.bin"), [1, 2, 3]).unwrap();
    let stderr = run_err(
        dir,
        &["encode", "--code", "code.json", "--input", "short.bin", "--out", "s"],
        2,
    );
    assert!(stderr.contains("invalid parameters"), "{stderr}");

    // Missing stripe directories: I/O, exit 3.
    let stderr = run_err(
        dir,
        &[
            "convert", "--code", "code.json", "--stripes", "nowhere", "--out", "f",
            "--report", "r.json",
        ],
        3,
    );
    assert!(stderr.contains("nowhere"), "the path should be named: {stderr}");

    // A manifest that is not valid JSON: corrupt data, exit 3.
    fs::write(dir.join("garbage.json"), "{").unwrap();
    run_err(
        dir,
        &["verify", "--code", "garbage.json", "--all"],
        3,
    );
}

#[test]
fn decode_refuses_too_many_erasures() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    set_up_fixture(dir);
    // Stripe 1 has nI = 9 blocks and kI = 5; erasing five leaves four.
    let stderr = run_err(
        dir,
        &[
            "decode", "--code", "code.json", "--stripe", "stripes/stripe-1", "--erase",
            "1,2,3,4,5", "--out", "x.bin",
        ],
        2,
    );
    assert!(
        stderr.contains("not enough blocks to decode: have 4, need 5"),
        "{stderr}"
    );
}

#[test]
fn convert_rejects_stripes_from_a_different_code() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    set_up_fixture(dir);
    // Same field and shape but different coefficients: that is a different
    // code, and its hash no longer matches the one the stripes reference.
    let manifest = fs::read_to_string(dir.join("code.json")).unwrap();
    let other = manifest.replacen("\"coeff\":1", "\"coeff\":2", 1);
    assert_ne!(manifest, other);
    fs::write(dir.join("other.json"), other).unwrap();
    let stderr = run_err(
        dir,
        &[
            "convert", "--code", "other.json", "--stripes", "stripes", "--out", "f",
            "--report", "r.json",
        ],
        2,
    );
    assert!(stderr.contains("does not match code"), "{stderr}");
}

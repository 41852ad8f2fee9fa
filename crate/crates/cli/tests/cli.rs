use std::process::{Command, Output};

use ellcy_cli::document::SeriesDocument;
use ellcy_cli::SeriesName;
use ellcy_core::QSeries;
use num_rational::BigRational;
use proptest::prelude::*;

fn ellcy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellcy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    ellcy(args).status.code().unwrap()
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["gv", "--help"]), 0);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["series", "e8"][..],
        &["series", "e4", "--prec", "0"],
        &["gv", "multifiber"],
        &["gv", "multifiber", "--m", "1"],
        &["gv", "fiber", "--m", "2"],
        &["gv", "fiber", "--method", "sideways"],
        &["euler", "--lsq", "0"],
        &["check", "--inject", "e8:1"],
        &["check", "--inject", "delta:0"],
        &["check", "--prec", "4", "--inject", "e4:4"],
        &["nl", "--h", "0"],
        &[],
    ] {
        assert_eq!(code(args), 1, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_2() {
    assert_eq!(code(&["nl", "--h", "-100000", "--d1", "0", "--d2", "0"]), 2);
    assert_eq!(code(&["check", "--prec", "6", "--inject", "eta12:5/2"]), 2);
}

#[test]
fn negative_discriminant_prints_zero_with_note() {
    let out = ellcy(&["nl", "--h", "5", "--d1", "-3", "--d2", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("discriminant negative"));
    let zero = ellcy(&["nl", "--h", "1", "--d1", "-1", "--d2", "1"]);
    assert_eq!(String::from_utf8_lossy(&zero.stdout), "-4\n");
}

#[test]
fn euler_at_unit_square() {
    let out = String::from_utf8(ellcy(&["euler", "--lsq", "1"]).stdout).unwrap();
    assert!(out.contains("deg K_Delta = 132"));
    assert!(out.contains("cusps = 24"));
    assert!(out.contains("e(Delta) = -84"));
    assert!(out.contains("e(X) = -60"));
    assert!(!out.contains("hodge"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["check", "--prec", "8"][..],
        &[
            "gv",
            "multifiber",
            "--m",
            "3",
            "--prec",
            "8",
            "--method",
            "direct",
        ],
        &["series", "theta-e8", "--prec", "10", "--json"],
    ] {
        let (a, b) = (ellcy(args), ellcy(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status, b.status);
    }
}

#[test]
fn json_output_round_trips() {
    for (name, label) in [
        (SeriesName::InvSqrtDelta, "inv-sqrt-delta"),
        (SeriesName::InvDelta, "inv-delta"),
    ] {
        let out = ellcy(&["series", label, "--prec", "30", "--json"]);
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed = SeriesDocument::from_json(&text)
            .unwrap()
            .to_series()
            .unwrap();
        let expected = name.expand(30);
        assert_eq!(parsed, expected);
        assert_eq!(parsed.prec(), expected.prec());
        assert_eq!(parsed.exp_den(), expected.exp_den());
    }
}

#[test]
fn half_integer_exponents_print_as_fractions() {
    let out =
        String::from_utf8(ellcy(&["series", "inv-sqrt-delta", "--prec", "3"]).stdout).unwrap();
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["-1/2 1", "1/2 12", "3/2 90"]);
}

proptest! {
    #[test]
    fn documents_round_trip(
        exp_den in 1u32..4,
        offset in -5i64..5,
        lead in (1i64..1000, 1i64..50),
        rest in prop::collection::vec((-1_000_000_000i64..1_000_000_000, 1i64..1000), 0..12),
        big in 0u32..4,
    ) {
        let scale = num_bigint::BigInt::from(10).pow(big * 20);
        let coeffs: Vec<BigRational> = std::iter::once(lead)
            .chain(rest)
            .map(|(n, d)| BigRational::new(num_bigint::BigInt::from(n) * &scale, d.into()))
            .collect();
        let s = QSeries::new(exp_den, offset, coeffs);
        let doc = SeriesDocument::from_series(&s);
        let back = SeriesDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let t = back.to_series().unwrap();
        prop_assert_eq!(t.prec(), s.prec());
        prop_assert_eq!(t, s);
    }
}

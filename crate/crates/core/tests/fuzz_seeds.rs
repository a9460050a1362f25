//! Replays the checked-in fuzz seeds through the same bodies as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use mckay::arith::MotiveExpr;
use mckay::expr;
use mckay::group::spec::parse_spec;
use mckay::invariants::parse_polynomial;
use mckay::toric::SimplicialFan;
use proptest::prelude::*;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let bytes = fs::read(&path).unwrap();
            (path.file_name().unwrap().to_string_lossy().into_owned(), String::from_utf8_lossy(&bytes).into_owned())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

/// Returns the names of the seeds that parsed.
fn accepted(target: &str, mut body: impl FnMut(&str) -> bool) -> Vec<String> {
    seeds(target).into_iter().filter(|(_, text)| body(text)).map(|(name, _)| name).collect()
}

fn group_spec_body(text: &str) -> bool {
    let Ok(mut spec) = parse_spec(text) else { return false };
    spec.bound = spec.bound.min(256);
    if let Ok(g) = spec.build() {
        let _ = g.conjugacy_classes();
        let _ = mckay::age::age_census(&g);
    }
    true
}

fn expression_body(text: &str) -> bool {
    let Ok(e) = expr::parse(text) else { return false };
    assert_eq!(expr::parse(&e.to_string()).unwrap(), e);
    let _ = expr::eval_cyclotomic(&e, 12, "z");
    let _ = expr::eval_motive(&e);
    true
}

fn motive_body(text: &str) -> bool {
    let Ok(m) = text.parse::<MotiveExpr>() else { return false };
    assert_eq!(m.to_string().parse::<MotiveExpr>().unwrap(), m);
    true
}

fn fan_body(text: &str) -> bool {
    let Ok(fan) = text.parse::<SimplicialFan>() else { return false };
    assert_eq!(fan.to_string().parse::<SimplicialFan>().unwrap(), fan);
    let _ = fan.is_smooth();
    true
}

fn polynomial_body(text: &str) -> bool {
    let Ok(p) = parse_polynomial(text, 4) else { return false };
    let _ = p.to_string();
    true
}

#[test]
fn group_spec_seeds() {
    let ok = accepted("group_spec", group_spec_body);
    assert!(ok.contains(&"bd12".to_string()) && ok.contains(&"c7_124".to_string()), "{ok:?}");
    assert!(!ok.contains(&"malformed".to_string()));
}

#[test]
fn expression_seeds() {
    let ok = accepted("expression", expression_body);
    assert!(ok.contains(&"cyclo".to_string()), "{ok:?}");
    assert!(!ok.contains(&"bad".to_string()));
}

#[test]
fn motive_text_seeds() {
    let ok = accepted("motive_text", motive_body);
    assert!(ok.contains(&"laurent".to_string()) && ok.contains(&"rational".to_string()), "{ok:?}");
    assert!(!ok.contains(&"zero_denominator".to_string()));
}

#[test]
fn fan_text_seeds() {
    let ok = accepted("fan_text", fan_body);
    assert!(ok.contains(&"a1".to_string()) && ok.contains(&"trivial".to_string()), "{ok:?}");
    assert!(!ok.contains(&"zero".to_string()));
}

#[test]
fn polynomial_seeds() {
    let ok = accepted("polynomial", polynomial_body);
    assert!(ok.contains(&"sum".to_string()) && ok.contains(&"product".to_string()), "{ok:?}");
    assert!(!ok.contains(&"truncated".to_string()));
}

/// A seed of `target` with one byte range replaced by `insert`.
fn mutated(target: &str, pick: usize, at: usize, cut: usize, insert: &str) -> String {
    let all = seeds(target);
    let text = all[pick % all.len()].1.as_bytes();
    let at = at % (text.len() + 1);
    let end = (at + cut).min(text.len());
    let mut out = text[..at].to_vec();
    out.extend_from_slice(insert.as_bytes());
    out.extend_from_slice(&text[end..]);
    String::from_utf8_lossy(&out).into_owned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn expressions_never_panic(text in "[0-9xzLE()+*/^ -]{0,40}") {
        expression_body(&text);
        motive_body(&text);
        polynomial_body(&text);
    }

    #[test]
    fn mutated_seeds_never_panic(
        pick in 0usize..16,
        at in 0usize..400,
        cut in 0usize..8,
        insert in "[0-9a-z=,;/()^* \n-]{0,8}",
    ) {
        group_spec_body(&mutated("group_spec", pick, at, cut, &insert));
        fan_body(&mutated("fan_text", pick, at, cut, &insert));
        expression_body(&mutated("expression", pick, at, cut, &insert));
        motive_body(&mutated("motive_text", pick, at, cut, &insert));
    }
}

//! `mckay verify`: built-in cross-checks plus the `expect.*` golden values of every spec in a corpus.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use mckay::age::{age_census, format_census};
use mckay::arith::{rat, MotiveExpr};
use mckay::cluster::{enumerate_torus_fixed_clusters, verify_regular_representation};
use mckay::group::DEFAULT_SUBGROUP_BOUND;
use mckay::rep::{character_table, dynkin_recognize, mckay_quiver};
use mckay::stringy::{orbifold_euler, orbifold_euler_strata, stringy_from_crepant_fan, stringy_from_group};
use mckay::toric::{chain_self_intersections, Strategy};
use serde::Serialize;
use serde_json::json;

use crate::commands::{junior_count, load, Loaded};
use crate::report::{input, Failure, Outcome, Report};

/// Groups up to this order get the cluster and character-table checks.
const CLUSTER_CHECK_ORDER: usize = 30;
const TABLE_CHECK_ORDER: usize = 200;

const EXPECT_KEYS: &[&str] = &[
    "order",
    "classes",
    "census",
    "junior",
    "euler",
    "stringy",
    "polynomial",
    "dynkin",
    "subgroups",
    "clusters",
    "self-intersections",
];

#[derive(Debug, Serialize)]
struct CheckResult {
    file: String,
    check: String,
    pass: bool,
    expected: Option<String>,
    got: Option<String>,
}

/// Collects `*.group` files from the given files and directories, sorted by path.
fn collect(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let entries = fs::read_dir(p).with_context(|| format!("reading {}", p.display())).map_err(input)?;
            for e in entries {
                let path = e.map_err(input)?.path();
                if path.extension().is_some_and(|x| x == "group") {
                    out.push(path);
                }
            }
        } else if p.is_file() {
            out.push(p.clone());
        } else {
            return Err(input(anyhow!("{} does not exist", p.display())));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn label(path: &Path) -> String {
    path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

struct Checker {
    file: String,
    results: Vec<CheckResult>,
}

impl Checker {
    fn holds(&mut self, check: &str, pass: bool, detail: Option<String>) {
        self.results.push(CheckResult { file: self.file.clone(), check: check.into(), pass, expected: None, got: detail });
    }

    fn compare(&mut self, check: &str, expected: &str, got: impl Into<String>) {
        let got = got.into();
        let pass = expected.trim() == got;
        self.results.push(CheckResult {
            file: self.file.clone(),
            check: format!("expect.{check}"),
            pass,
            expected: Some(expected.trim().to_string()),
            got: Some(got),
        });
    }

    fn error(&mut self, check: &str, e: impl std::fmt::Display) {
        self.holds(check, false, Some(format!("error: {e}")));
    }
}

fn built_in(c: &mut Checker, l: &Loaded) {
    let g = &l.group;
    let classes = g.conjugacy_classes().len();
    let euler = orbifold_euler(g).euler;
    c.holds("euler = class count", euler == rat(classes as i64, 1), Some(format!("{euler} vs {classes}")));
    if g.order() <= TABLE_CHECK_ORDER {
        match character_table(g).and_then(|t| t.verify()) {
            Ok(()) => c.holds("character table orthogonality", true, None),
            Err(e) => c.error("character table orthogonality", e),
        }
    }
    if !g.is_abelian_diagonal() {
        return;
    }
    match orbifold_euler_strata(g) {
        Ok(s) => c.holds("strata euler = class count", s.euler == euler, Some(s.euler.to_string())),
        Err(e) => c.error("strata euler = class count", e),
    }
    let group_route = match stringy_from_group(g) {
        Ok(res) => {
            c.holds("group motive at L = 1 = class count", res.euler == euler, Some(res.euler.to_string()));
            res.motive
        }
        Err(e) => {
            c.error("group motive", e);
            None
        }
    };
    if (2..=3).contains(&g.dim()) {
        for s in [Strategy::Deterministic, Strategy::Alternate] {
            let check = format!("fan route ({s}) = group route");
            match stringy_from_crepant_fan(g, s) {
                Ok(res) => c.holds(&check, res.motive == group_route, res.motive.map(|m| m.to_string())),
                Err(e) => c.error(&check, e),
            }
        }
        if g.order() <= CLUSTER_CHECK_ORDER {
            match enumerate_torus_fixed_clusters(g, CLUSTER_CHECK_ORDER) {
                Ok(cs) => {
                    c.holds("cluster count = |G|", cs.len() == g.order(), Some(cs.len().to_string()));
                    let regular = cs
                        .iter()
                        .all(|x| verify_regular_representation(g, &x.staircase.basis).is_ok_and(|cert| cert.regular));
                    c.holds("clusters carry the regular representation", regular, None);
                }
                Err(e) => c.error("cluster count = |G|", e),
            }
        }
    }
}

fn expectations(c: &mut Checker, l: &Loaded) -> Result<(), Failure> {
    let g = &l.group;
    for (key, want) in &l.spec.expect {
        if !EXPECT_KEYS.contains(&key.as_str()) {
            return Err(input(anyhow!("{}: unknown expectation `expect.{key}`", c.file)));
        }
        let got: Result<String, String> = match key.as_str() {
            "order" => Ok(g.order().to_string()),
            "classes" => Ok(g.conjugacy_classes().len().to_string()),
            "census" => age_census(g).map(|x| format_census(&x)).map_err(|e| e.to_string()),
            "junior" => junior_count(g).map(|x| x.to_string()).map_err(|e| e.to_string()),
            "euler" => Ok(orbifold_euler(g).euler.to_string()),
            "stringy" | "polynomial" => stringy_from_group(g).map_err(|e| e.to_string()).and_then(|r| {
                let m = r.motive.ok_or("no motive")?;
                Ok(if key == "stringy" {
                    // compare as motives so equivalent spellings match
                    match want.parse::<MotiveExpr>() {
                        Ok(w) if w == m => want.trim().to_string(),
                        _ => m.to_string(),
                    }
                } else if m.is_polynomial() {
                    "yes".into()
                } else {
                    "no".into()
                })
            }),
            "dynkin" => mckay_quiver(g).map(|(q, _)| dynkin_recognize(&q).to_string()).map_err(|e| e.to_string()),
            "subgroups" => g.subgroup_lattice(DEFAULT_SUBGROUP_BOUND).map(|s| s.subgroups.len().to_string()).map_err(|e| e.to_string()),
            "clusters" => enumerate_torus_fixed_clusters(g, mckay::cluster::DEFAULT_CLUSTER_BOUND)
                .map(|x| x.len().to_string())
                .map_err(|e| e.to_string()),
            "self-intersections" => chain_self_intersections(g)
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .map_err(|e| e.to_string()),
            _ => unreachable!("checked against EXPECT_KEYS"),
        };
        match got {
            Ok(v) => c.compare(key, want, v),
            Err(e) => c.compare(key, want, format!("error: {e}")),
        }
    }
    Ok(())
}

pub fn verify(paths: &[PathBuf]) -> Outcome {
    let files = collect(paths)?;
    let mut r = Report::new("verify");
    let mut results = Vec::new();
    if files.is_empty() {
        log::warn!("no group specs found");
        r.line("warning: no group specs found");
    }
    for path in &files {
        let l = load(path)?;
        let mut c = Checker { file: label(path), results: Vec::new() };
        built_in(&mut c, &l);
        expectations(&mut c, &l)?;
        results.append(&mut c.results);
    }
    for res in &results {
        let status = if res.pass { "PASS" } else { "FAIL" };
        let detail = match (&res.expected, &res.got) {
            (Some(e), Some(g)) if !res.pass => format!(": expected {e}, got {g}"),
            (Some(e), _) => format!(": {e}"),
            (None, Some(g)) if !res.pass => format!(": {g}"),
            _ => String::new(),
        };
        r.line(format!("{status} {} {}{detail}", res.file, res.check));
    }
    let failed = results.iter().filter(|x| !x.pass).count();
    let passed = results.len() - failed;
    r.line(format!("{} files, {passed} passed, {failed} failed", files.len()));
    if failed > 0 {
        r.fail(format!("{failed} checks failed"));
    }
    r.data = json!({ "files": files.len(), "passed": passed, "failed": failed, "results": results });
    Ok(r)
}

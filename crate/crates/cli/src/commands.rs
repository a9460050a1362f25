//! One function per subcommand. Each builds a [`Report`] and leaves printing to the caller.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use mckay::age::{age_census, age_profiles, format_census, junior_classes};
use mckay::arcs::{
    measure_of_order_level, motivic_integral_closed_form, motivic_integral_truncated, series_compare,
    stringy_from_strata, MonomialDivisorChart,
};
use mckay::arith::{rat, MotiveExpr, Rational};
use mckay::cluster::{
    enumerate_torus_fixed_clusters, monomial_text, nakamura_generator_shape, staircase_art, tripod_profile,
    verify_regular_representation,
};
use mckay::group::spec::{parse_spec, GroupSpec};
use mckay::group::{FiniteGroup, GroupKind, DEFAULT_SUBGROUP_BOUND};
use mckay::invariants::{check_relation, default_variables, is_invariant, parse_polynomial};
use mckay::rep::{dynkin_recognize, mckay_quiver};
use mckay::stringy::{
    census_motive, orbifold_euler, orbifold_euler_strata, stringy_from_crepant_fan, stringy_from_group, StringyError,
    StringyResult,
};
use mckay::toric::{corner_chop, crepant_fan, crepant_triangulate_3d, Strategy, ToricError};
use serde_json::{json, Value};

use crate::report::{input, internal, Failure, Outcome, Report};

pub struct Loaded {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
}

impl Loaded {
    pub fn name(&self) -> String {
        self.spec.display_name()
    }
}

pub fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(input)?;
    let spec = parse_spec(&text).with_context(|| format!("{}", path.display())).map_err(input)?;
    let group = spec.build().with_context(|| format!("{}: building the group", path.display())).map_err(input)?;
    Ok(Loaded { spec, group })
}

fn kind_name(g: &FiniteGroup) -> &'static str {
    match g.kind() {
        GroupKind::AbelianDiagonal => "abelian",
        GroupKind::Matrix => "matrix",
    }
}

pub fn group_info(l: &Loaded) -> Outcome {
    let g = &l.group;
    let classes = g.conjugacy_classes();
    let subgroups = g.subgroup_lattice(DEFAULT_SUBGROUP_BOUND).map_err(input)?;
    let census = age_census(g).map_err(internal)?;
    let mut r = Report::new("group-info");
    r.line(format!("group: {}", l.name()));
    r.line(format!("kind: {}", kind_name(g)));
    r.line(format!("dimension: {}", g.dim()));
    r.line(format!("order: {}", g.order()));
    r.line(format!("abelian: {}", if g.is_abelian() { "yes" } else { "no" }));
    r.line(format!("classes: {}", classes.len()));
    r.line(format!("subgroups: {} ({} up to conjugacy)", subgroups.subgroups.len(), subgroups.classes.len()));
    r.line(format!("age census: {}", format_census(&census)));
    r.data = json!({
        "group": l.name(),
        "kind": kind_name(g),
        "dimension": g.dim(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "classes": classes.len(),
        "class_sizes": classes.iter().map(|c| c.size()).collect::<Vec<_>>(),
        "subgroups": subgroups.subgroups.len(),
        "subgroup_classes": subgroups.classes.len(),
        "age_census": census.iter().map(|(a, c)| (a.to_string(), *c)).collect::<BTreeMap<_, _>>(),
    });
    Ok(r)
}

pub fn ages(l: &Loaded) -> Outcome {
    let g = &l.group;
    let classes = g.conjugacy_classes();
    let profiles = age_profiles(g, &classes).map_err(internal)?;
    let mut r = Report::new("ages");
    r.line(format!("group: {}", l.name()));
    r.line(format!("{:<6} {:<28} {:>4} {:<16} {:>3} {:>5} {}", "class", "representative", "r", "exponents", "age", "fixed", "junior"));
    let mut rows = Vec::new();
    for p in &profiles {
        let rep = g.element(p.representative).to_string();
        let exps = p.exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
        r.line(format!(
            "{:<6} {:<28} {:>4} {:<16} {:>3} {:>5} {}",
            p.class_index,
            rep,
            p.order,
            exps,
            p.age,
            p.fixed_dim,
            if p.junior { "yes" } else { "no" }
        ));
        rows.push(json!({
            "class": p.class_index,
            "representative": rep,
            "r": p.order,
            "exponents": p.exponents,
            "age": p.age,
            "fixed_dim": p.fixed_dim,
            "junior": p.junior,
            "size": classes[p.class_index].size(),
        }));
    }
    let junior = profiles.iter().filter(|p| p.junior).count();
    r.line(format!("junior classes: {junior}"));
    r.data = json!({ "group": l.name(), "classes": rows, "junior": junior });
    Ok(r)
}

pub fn mckay(l: &Loaded) -> Outcome {
    let (q, table) = mckay_quiver(&l.group).map_err(internal)?;
    table.verify().map_err(internal)?;
    let label = dynkin_recognize(&q);
    let mut r = Report::new("mckay");
    r.line(format!("group: {}", l.name()));
    r.line(format!("irreducibles: {}", q.len()));
    r.line(format!("degrees: {}", q.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")));
    r.line(format!("symmetric: {}", if q.is_symmetric() { "yes" } else { "no" }));
    r.line(format!("dynkin: {label}"));
    r.line("adjacency:");
    for (name, row) in q.labels.iter().zip(&q.adjacency) {
        r.line(format!("  {name:<6} {}", row.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")));
    }
    r.dot = Some(q.to_dot(false));
    r.data = json!({ "group": l.name(), "dynkin": label.to_string(), "quiver": q });
    Ok(r)
}

fn toric_error(e: ToricError) -> Failure {
    match e {
        ToricError::Inconsistent(_) => internal(e),
        _ => input(e),
    }
}

pub fn toric(l: &Loaded, strategy: Strategy, chop: bool) -> Outcome {
    let g = &l.group;
    let mut r = Report::new("toric");
    r.line(format!("group: {}", l.name()));
    if chop {
        let c = corner_chop(g).map_err(toric_error)?;
        r.line(format!("junior simplex points: {}", c.points.len()));
        for (corner, vol) in c.corners.iter().zip(&c.corner_volumes) {
            let pts: Vec<String> = corner.iter().map(|&i| c.points[i].to_string()).collect();
            r.line(format!("corner {} volume {vol}", pts.join(" ")));
        }
        let central: Vec<String> = c.central.iter().map(|&i| c.points[i].to_string()).collect();
        r.line(format!("central cell: {} vertices, volume {}", central.len(), c.central_volume));
        r.line(format!("central vertices: {}", central.join(" ")));
        r.line(format!("central cell is a simplex: {}", if c.central_is_simplex() { "yes" } else { "no" }));
        r.line(format!("central cell is terminal: {}", if c.central_is_terminal() { "yes" } else { "no" }));
        let verdict = match c.check_resolution() {
            Ok(()) => "resolution: yes".to_string(),
            Err(e) => format!("resolution: no ({e})"),
        };
        r.line(&verdict);
        r.data = json!({ "group": l.name(), "chop": c, "resolution": c.check_resolution().is_ok() });
        return Ok(r);
    }
    let fan = crepant_fan(g, strategy).map_err(toric_error)?;
    fan.check_smooth().map_err(internal)?;
    r.line(format!("strategy: {strategy}"));
    r.line(format!("rays: {}", fan.rays().len()));
    r.line(format!("cones: {}", fan.cones().len()));
    r.line(format!("smooth: {}", if fan.is_smooth() { "yes" } else { "no" }));
    r.line("fan:");
    for line in fan.to_string().lines() {
        r.line(format!("  {line}"));
    }
    let mut data = json!({ "group": l.name(), "strategy": strategy.to_string(), "fan": fan });
    if g.dim() == 3 && g.order() > 1 {
        let t = crepant_triangulate_3d(g, strategy).map_err(toric_error)?;
        t.check().map_err(internal)?;
        r.line(format!("triangles: {} edges: {} vertices: {}", t.cells.len(), t.edges().len(), t.vertex_count()));
        r.svg = Some(t.to_svg());
        data["triangulation"] = serde_json::to_value(&t).map_err(internal)?;
    }
    r.data = data;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RouteChoice {
    Fan,
    Group,
    Both,
}

fn stringy_failure(e: StringyError) -> Failure {
    match e {
        StringyError::Toric(t) => toric_error(t),
        StringyError::NotAbelian | StringyError::TooLarge(_) => input(e),
        other => internal(other),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe(res: &StringyResult) -> String {
    match &res.motive {
        Some(m) => format!("{m} (euler {}, polynomial {})", res.euler, if res.is_polynomial() { "yes" } else { "no" }),
        None => format!("euler {}", res.euler),
    }
}

pub fn stringy(l: &Loaded, route: RouteChoice, strategy: Strategy) -> Outcome {
    let g = &l.group;
    let mut r = Report::new("stringy");
    r.line(format!("group: {}", l.name()));
    let mut motives: Vec<(String, MotiveExpr)> = Vec::new();
    let mut eulers: Vec<(String, Rational)> = Vec::new();
    let mut routes = Vec::new();

    let want_fan = matches!(route, RouteChoice::Fan | RouteChoice::Both);
    let want_group = matches!(route, RouteChoice::Group | RouteChoice::Both);
    let mut unavailable = Vec::new();
    if want_fan {
        match stringy_from_crepant_fan(g, strategy) {
            Ok(res) => {
                r.line(format!("route fan ({strategy}): {}", describe(&res)));
                routes.push(json!({ "route": "fan", "strategy": strategy.to_string(), "result": res }));
                let m = res.motive.clone().expect("fan route gives a motive");
                motives.push((format!("fan ({strategy})"), m));
                eulers.push(("fan".into(), res.euler));
            }
            Err(e) if route == RouteChoice::Both && !matches!(e, StringyError::Toric(ToricError::Inconsistent(_))) => {
                r.line(format!("route fan: unavailable ({e})"));
                unavailable.push(json!({ "route": "fan", "reason": e.to_string() }));
            }
            Err(e) => return Err(stringy_failure(e)),
        }
    }
    if want_group {
        match stringy_from_group(g) {
            Ok(res) => {
                r.line(format!("route group: {}", describe(&res)));
                let m = res.motive.clone().expect("group route gives a motive");
                routes.push(json!({ "route": "group", "result": res }));
                motives.push(("group".into(), m));
                eulers.push(("group".into(), res.euler));
                let census = census_motive(g).map_err(stringy_failure)?;
                r.line(format!("census: {census}"));
                motives.push(("census".into(), census));
            }
            Err(e) if route == RouteChoice::Both && matches!(e, StringyError::NotAbelian | StringyError::TooLarge(_)) => {
                r.line(format!("route group: unavailable ({e})"));
                unavailable.push(json!({ "route": "group", "reason": e.to_string() }));
            }
            Err(e) => return Err(stringy_failure(e)),
        }
    }
    let pairs = orbifold_euler(g);
    r.line(format!("euler commuting-pairs: {}", pairs.euler));
    eulers.push(("commuting-pairs".into(), pairs.euler.clone()));
    if g.is_abelian_diagonal() {
        let strata = orbifold_euler_strata(g).map_err(stringy_failure)?;
        r.line(format!("euler strata: {}", strata.euler));
        eulers.push(("strata".into(), strata.euler));
    }
    let classes = g.conjugacy_classes().len();
    r.line(format!("conjugacy classes: {classes}"));
    eulers.push(("classes".into(), rat(classes as i64, 1)));

    r.line("cross-check:");
    let mut checks = Vec::new();
    for i in 0..motives.len() {
        for j in i + 1..motives.len() {
            let ok = motives[i].1 == motives[j].1;
            r.line(format!("  {} = {}: {}", motives[i].0, motives[j].0, if ok { "PASS" } else { "FAIL" }));
            checks.push(json!({ "lhs": motives[i].0, "rhs": motives[j].0, "pass": ok }));
            if !ok {
                r.fail(format!("{} and {} disagree: {} vs {}", motives[i].0, motives[j].0, motives[i].1, motives[j].1));
            }
        }
    }
    for i in 1..eulers.len() {
        let ok = eulers[0].1 == eulers[i].1;
        r.line(format!("  euler {} = {}: {}", eulers[0].0, eulers[i].0, if ok { "PASS" } else { "FAIL" }));
        checks.push(json!({ "lhs": format!("euler {}", eulers[0].0), "rhs": eulers[i].0, "pass": ok }));
        if !ok {
            r.fail(format!("euler {} is {}, {} gives {}", eulers[0].0, eulers[0].1, eulers[i].0, eulers[i].1));
        }
    }
    r.data = json!({
        "group": l.name(),
        "routes": routes,
        "unavailable": unavailable,
        "euler": pairs.euler.to_string(),
        "classes": classes,
        "checks": checks,
    });
    Ok(r)
}

fn parse_list(what: &str, s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| input(anyhow!("{what}: `{x}` is not a non-negative integer"))))
        .collect()
}

pub fn arcs(multiplicities: &str, discrepancies: Option<&str>, depth: u32, truncation: Option<u32>) -> Outcome {
    let m = parse_list("multiplicities", multiplicities)?;
    let a = match discrepancies {
        Some(d) => parse_list("discrepancies", d)?,
        None => vec![1; m.len()],
    };
    let chart = MonomialDivisorChart::new(m.clone()).map_err(input)?;
    let truncation = truncation.unwrap_or(depth.max(mckay::arcs::DEFAULT_TRUNCATION));
    let weighted = chart.weighted(&a).map_err(input)?;
    let mut r = Report::new("arcs");
    r.line(format!("chart: {chart} (n = {})", chart.dim()));
    r.line(format!("discrepancies: {}", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    r.line(format!("divisor: {weighted}"));
    let mut levels = Vec::new();
    for s in 0..=truncation {
        let mu = measure_of_order_level(&weighted, s).map_err(input)?;
        if !mu.is_zero() {
            r.line(format!("level {s}: {mu}"));
        }
        levels.push(json!({ "level": s, "measure": mu }));
    }
    let partial = motivic_integral_truncated(&chart, &a, truncation).map_err(input)?;
    let closed = motivic_integral_closed_form(&chart, &a).map_err(input)?;
    let strata = stringy_from_strata(&chart, &a).map_err(input)?;
    r.line(format!("partial sum (s <= {truncation}): {partial}"));
    r.line(format!("closed form: {closed}"));
    r.line(format!("strata form: {strata}"));
    let report = series_compare(&closed, &partial, depth as usize).map_err(input)?;
    let agreement = match &report.first_disagreement {
        None => depth as i64,
        Some((k, _, _)) => *k as i64 - 1,
    };
    r.line(format!("series: {report}"));
    r.line(format!("agreement depth: {agreement}"));
    if closed != strata {
        r.fail(format!("closed form {closed} differs from strata form {strata}"));
    }
    // each level s only reaches L^{n-s}, so a truncation at or past the depth must agree
    if truncation >= depth && !report.agree() {
        r.fail(format!("truncated integral disagrees with the closed form: {report}"));
    }
    r.data = json!({
        "multiplicities": m,
        "discrepancies": a,
        "levels": levels,
        "partial": partial,
        "closed_form": closed,
        "strata_form": strata,
        "series": report,
        "agreement_depth": agreement,
    });
    Ok(r)
}

pub fn ghilb(l: &Loaded, bound: usize) -> Outcome {
    let g = &l.group;
    let clusters = enumerate_torus_fixed_clusters(g, bound).map_err(input)?;
    let mut r = Report::new("ghilb");
    r.line(format!("group: {}", l.name()));
    if g.dim() == 4 {
        r.line("note: four-variable enumeration is experimental");
    }
    r.line(format!("torus-fixed clusters: {} (|G| = {})", clusters.len(), g.order()));
    let mut items = Vec::new();
    let mut all_regular = true;
    for (i, c) in clusters.iter().enumerate() {
        let cert = verify_regular_representation(g, &c.staircase.basis).map_err(internal)?;
        all_regular &= cert.regular;
        let gens: Vec<String> = c.staircase.generators.iter().map(|m| monomial_text(m)).collect();
        r.line(format!("cluster {i}: {} monomials, ideal ({})", c.staircase.basis.len(), gens.join(", ")));
        r.line(format!("  check: {cert}"));
        let mut item = json!({ "index": i, "cluster": c, "certificate": cert });
        match g.dim() {
            2 => {
                if let Some(art) = staircase_art(&c.staircase) {
                    for line in art.lines() {
                        r.line(format!("  {line}"));
                    }
                }
            }
            3 => {
                let t = tripod_profile(c).map_err(internal)?;
                let shape = nakamura_generator_shape(c).map_err(internal)?;
                let planar: Vec<String> = t.planar.iter().map(|(a, b)| format!("({a},{b})")).collect();
                r.line(format!("  legs: {} {} {}", t.legs[0], t.legs[1], t.legs[2]));
                r.line(format!("  tripod: {}", planar.join(" ")));
                r.line(format!(
                    "  generators: {} (shape {}, xyz in ideal {})",
                    shape.shapes.len(),
                    if shape.conforming { "conforming" } else { "nonconforming" },
                    yes_no(shape.xyz_in_ideal)
                ));
                item["tripod"] = serde_json::to_value(&t).map_err(internal)?;
                item["generators"] = serde_json::to_value(&shape).map_err(internal)?;
            }
            _ => {}
        }
        items.push(item);
    }
    if !all_regular {
        r.fail("a cluster fails the regular representation check");
    }
    if g.dim() <= 3 && clusters.len() != g.order() {
        r.fail(format!("{} clusters for a group of order {}", clusters.len(), g.order()));
    }
    r.data = json!({ "group": l.name(), "order": g.order(), "count": clusters.len(), "clusters": items });
    Ok(r)
}

pub fn invariants(l: &Loaded, polys: &[String], relation: Option<&str>, bindings: &[String]) -> Outcome {
    let g = &l.group;
    let vars = default_variables(g.dim());
    let conductor = g.conductor();
    let mut r = Report::new("invariants");
    r.line(format!("group: {}", l.name()));
    r.line(format!("variables: {}", vars.join(", ")));
    let mut results = Vec::new();
    for text in polys {
        let p = parse_polynomial(text, conductor).map_err(input)?;
        let ok = is_invariant(&p, g, &vars).map_err(input)?;
        r.line(format!("{p}: {}", if ok { "invariant" } else { "not invariant" }));
        results.push(json!({ "polynomial": p.to_string(), "invariant": ok }));
    }
    let mut rel = Value::Null;
    if let Some(text) = relation {
        let lhs = parse_polynomial(text, conductor).map_err(input)?;
        let mut map = HashMap::new();
        for b in bindings {
            let (name, value) =
                b.split_once('=').ok_or_else(|| input(anyhow!("binding `{b}` must look like `name=polynomial`")))?;
            map.insert(name.trim().to_string(), parse_polynomial(value, conductor).map_err(input)?);
        }
        let holds = check_relation(&lhs, &map).map_err(input)?;
        r.line(format!("relation {lhs} = 0: {}", if holds { "holds" } else { "fails" }));
        rel = json!({ "relation": lhs.to_string(), "holds": holds });
    }
    r.data = json!({ "group": l.name(), "variables": vars, "polynomials": results, "relation": rel });
    Ok(r)
}

/// Junior class count, used by `verify`.
pub fn junior_count(g: &FiniteGroup) -> Result<usize, Failure> {
    Ok(junior_classes(g).map_err(internal)?.len())
}

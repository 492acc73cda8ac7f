//! One function per verb.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use cover_forge::catalog::{
    self, degree6_instance, delta_tc, section_point, triple_cover_instance, Certificate, Status,
    Verified, DEG6_FIBER, DEG6_Q, DEG6_TRACE_FREE, TRIPLE_TRACE_FREE,
};
use cover_forge::cover::{
    cover_relations, verify_fiber, CoverProblem, CoverRelations, RelationsJson,
};
use cover_forge::groebner::{
    eliminate, free_resolution, module_min_generators, syzygy_module, BettiEntry,
};
use cover_forge::rational::{format_rational, parse_rational};
use cover_forge::{Error, Polynomial, Rational, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::problem::{order_name, parse_problem, ProblemFile};
use crate::{exit, Command, Common};

type Out<'a> = &'a mut dyn Write;

fn io(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

fn load(path: &Path, common: &Common) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text)?.with_order(common.order)
}

fn texts(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn emit_json(out: Out, v: &Value) -> Result<()> {
    let s = serde_json::to_string_pretty(v).expect("json values serialize");
    writeln!(out, "{s}").map_err(io)
}

fn emit_lines(out: Out, lines: &[String]) -> Result<()> {
    for l in lines {
        writeln!(out, "{l}").map_err(io)?;
    }
    Ok(())
}

pub fn dispatch(cmd: &Command, common: &Common, out: Out) -> Result<u8> {
    match cmd {
        Command::Gb { file } => gb(&load(file, common)?, common, out),
        Command::Nf { file, polys } => nf(&load(file, common)?, polys, common, out),
        Command::Syz { file } => syz(&load(file, common)?, common, out),
        Command::Resolve { file, steps } => resolve(&load(file, common)?, *steps, common, out),
        Command::Eliminate { file, vars } => elim(&load(file, common)?, vars, common, out),
        Command::Relations { file } => relations(&load(file, common)?, common, out),
        Command::Fiber { file, e, c, point } => fiber(
            &load(file, common)?,
            e.as_deref(),
            c.as_deref(),
            point.as_deref(),
            common,
            out,
        ),
        Command::Catalog { names, all } => catalog_cmd(names, *all, common, out),
        Command::Verify { name, against } => verify(name, against.as_deref(), common, out),
    }
}

fn header(pf: &ProblemFile) -> Value {
    json!({ "ring": pf.ring.names(), "order": order_name(pf.ring.order()) })
}

fn gb(pf: &ProblemFile, common: &Common, out: Out) -> Result<u8> {
    let basis = pf.ideal()?.groebner()?.to_text();
    if common.json {
        let mut v = header(pf);
        v["basis"] = json!(basis);
        emit_json(out, &v)?;
    } else {
        emit_lines(out, &basis)?;
    }
    Ok(exit::OK)
}

fn nf(pf: &ProblemFile, polys: &[String], common: &Common, out: Out) -> Result<u8> {
    let gb = pf.ideal()?.groebner()?;
    let mut forms = Vec::new();
    for (k, text) in polys.iter().enumerate() {
        let f = pf.ring.parse(text).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line: k + 1,
                column,
                message: format!("in --poly: {message}"),
            },
            other => other,
        })?;
        forms.push(gb.normal_form(&f)?);
    }
    if common.json {
        let mut v = header(pf);
        v["normal_forms"] = json!(texts(&forms));
        v["members"] = json!(forms.iter().map(Polynomial::is_zero).collect::<Vec<_>>());
        emit_json(out, &v)?;
    } else {
        emit_lines(out, &texts(&forms))?;
    }
    Ok(exit::OK)
}

fn syz(pf: &ProblemFile, common: &Common, out: Out) -> Result<u8> {
    let all = syzygy_module(&pf.gens)?;
    let homogeneous = pf.gens.iter().all(Polynomial::is_homogeneous);
    let syz = if homogeneous {
        let twists: Vec<u32> = pf
            .gens
            .iter()
            .map(|g| g.total_degree().unwrap_or(0))
            .collect();
        module_min_generators(&all, &twists)?
    } else {
        all
    };
    let rows: Vec<Vec<String>> = syz.iter().map(|s| texts(s.components())).collect();
    if common.json {
        let mut v = header(pf);
        v["minimal"] = json!(homogeneous);
        v["syzygies"] = json!(rows);
        emit_json(out, &v)?;
    } else {
        emit_lines(
            out,
            &syz.iter().map(ToString::to_string).collect::<Vec<_>>(),
        )?;
    }
    Ok(exit::OK)
}

fn betti_line(table: &[BettiEntry]) -> String {
    table
        .iter()
        .map(|b| b.rank.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn resolve(pf: &ProblemFile, steps: Option<usize>, common: &Common, out: Out) -> Result<u8> {
    let ideal = pf.ideal()?;
    if !ideal.is_homogeneous() {
        return Err(Error::Precondition(
            "resolve needs homogeneous generators".into(),
        ));
    }
    let res = free_resolution(&ideal, steps.unwrap_or(pf.ring.arity() + 1))?;
    let table = res.table();
    if common.json {
        emit_json(out, &json!(table))?;
        return Ok(exit::OK);
    }
    writeln!(out, "betti: {}", betti_line(&table)).map_err(io)?;
    for b in &table {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for t in &b.twists {
            *counts.entry(*t).or_default() += 1;
        }
        let parts: Vec<String> = counts
            .iter()
            .map(|(t, n)| {
                if *t == 0 {
                    format!("S^{n}")
                } else {
                    format!("S(-{t})^{n}")
                }
            })
            .collect();
        writeln!(out, "F{}: {}", b.step, parts.join(" + ")).map_err(io)?;
    }
    if res.is_truncated() {
        writeln!(out, "truncated").map_err(io)?;
    }
    Ok(exit::OK)
}

fn elim(pf: &ProblemFile, vars: &[String], common: &Common, out: Out) -> Result<u8> {
    let drop = vars
        .iter()
        .map(|v| pf.ring.require_index(v))
        .collect::<Result<Vec<_>>>()?;
    let gens = texts(eliminate(&pf.ideal()?, &drop)?.gens());
    if common.json {
        let mut v = header(pf);
        v["eliminated"] = json!(vars);
        v["generators"] = json!(gens);
        emit_json(out, &v)?;
    } else {
        emit_lines(out, &gens)?;
    }
    Ok(exit::OK)
}

/// A catalog cover instance with the same ring, generators and trace
/// conditions as the file, if there is one.
fn catalog_match(pf: &ProblemFile) -> Result<Option<Verified>> {
    // fiber variables, generators, trace conditions, builder
    type Candidate = (
        &'static [&'static str],
        &'static [&'static str],
        &'static [&'static str],
        fn() -> Result<Verified>,
    );
    let candidates: [Candidate; 2] = [
        (
            &["z1", "z2"],
            &["z1^2", "z1*z2", "z2^2"],
            &TRIPLE_TRACE_FREE,
            triple_cover_instance,
        ),
        (&DEG6_FIBER, &DEG6_Q, &DEG6_TRACE_FREE, degree6_instance),
    ];
    for (vars, q, tf, build) in candidates {
        if pf.ring.names() != vars
            || pf.ring.order() != Default::default()
            || pf.gens.len() != q.len()
        {
            continue;
        }
        let same_q = pf
            .gens
            .iter()
            .zip(q.iter())
            .all(|(g, t)| pf.ring.parse(t).is_ok_and(|p| &p == g));
        if !same_q {
            continue;
        }
        let Some(given) = &pf.trace_free else {
            continue;
        };
        let v = build()?;
        let c = v.relations.c_ring();
        let parse = |ts: &[String]| -> Option<Vec<String>> {
            let mut ps: Vec<String> = ts
                .iter()
                .map(|t| c.parse(t).ok().map(|p| p.to_string()))
                .collect::<Option<_>>()?;
            ps.sort();
            Some(ps)
        };
        let want: Vec<String> = tf.iter().map(|s| s.to_string()).collect();
        if parse(given).is_some() && parse(given) == parse(&want) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn solve(pf: &ProblemFile) -> Result<(CoverProblem, CoverRelations, Option<Verified>)> {
    let problem = pf.cover()?;
    match catalog_match(pf)? {
        Some(v) => Ok((v.instance.problem.clone(), v.relations.clone(), Some(v))),
        None => {
            let rel = cover_relations(&problem)?;
            Ok((problem, rel, None))
        }
    }
}

/// `D` and `I_q` in the catalog's display names.
fn display(v: &Verified, rel: &CoverRelations) -> Result<(Vec<String>, Vec<String>)> {
    let ren = &v.renaming;
    let d = rel
        .d_exprs()
        .iter()
        .map(|p| Ok((-&ren.apply(&p.to_ring(ren.domain())?)?).to_string()))
        .collect::<Result<Vec<_>>>()?;
    let iq = rel
        .quadratic_relations()
        .iter()
        .map(|p| Ok(ren.apply(&p.to_ring(ren.domain())?)?.to_string()))
        .collect::<Result<Vec<_>>>()?;
    Ok((d, iq))
}

fn relations(pf: &ProblemFile, common: &Common, out: Out) -> Result<u8> {
    let (_, rel, matched) = solve(pf)?;
    let shown = matched.as_ref().map(|v| display(v, &rel)).transpose()?;
    if common.json {
        let mut v = serde_json::to_value(RelationsJson::from_relations(&rel)).expect("plain data");
        v["order"] = json!(order_name(pf.ring.order()));
        if let (Some(m), Some((d, iq))) = (&matched, &shown) {
            v["instance"] = json!(m.instance.name);
            v["display"] = json!({ "D": d, "Iq": iq });
        }
        emit_json(out, &v)?;
        return Ok(exit::OK);
    }
    let mut lines = vec![format!("free parameters: {}", rel.free_c().join(" "))];
    for (name, p) in rel.n_subst().iter().chain(rel.c_subst()) {
        lines.push(format!("  {name} = {p}"));
    }
    lines.push(format!(
        "linear relations: {}",
        rel.linear_relations().len()
    ));
    lines.push("C^t:".into());
    lines.extend(rel.c_matrix()?.to_text().lines().map(|l| format!("  {l}")));
    lines.push("d:".into());
    for (name, p) in rel.layout().d.iter().zip(rel.d_exprs()) {
        lines.push(format!("  {name} = {p}"));
    }
    lines.push(format!("I_q: {} quadrics", rel.quadratic_relations().len()));
    lines.extend(rel.quadratic_relations().iter().map(|g| format!("  {g}")));
    lines.push(format!("cubic residues vanish: {}", rel.cubics_ok()));
    if let (Some(m), Some((d, iq))) = (&matched, &shown) {
        lines.push(format!(
            "catalog instance {}, display names:",
            m.instance.name
        ));
        lines.push(format!("  D = ({})", d.join(", ")));
        lines.extend(iq.iter().map(|g| format!("  I_q: {g}")));
    }
    emit_lines(out, &lines)?;
    Ok(exit::OK)
}

fn rationals(flag: &str, items: &[String]) -> Result<[Rational; 4]> {
    let vals = items
        .iter()
        .map(|s| {
            parse_rational(s.trim()).ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!("--{flag}: `{s}` is not a rational"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    vals.try_into().map_err(|v: Vec<Rational>| {
        Error::Precondition(format!("--{flag} needs 4 values, got {}", v.len()))
    })
}

fn fiber(
    pf: &ProblemFile,
    e: Option<&[String]>,
    c: Option<&[String]>,
    point: Option<&[String]>,
    common: &Common,
    out: Out,
) -> Result<u8> {
    let (problem, rel, matched) = solve(pf)?;
    let mut extra = serde_json::Map::new();
    let values = match (e, c, point) {
        (Some(e), Some(c), _) => {
            let v = matched
                .as_ref()
                .filter(|v| v.instance.name == "deg6")
                .ok_or_else(|| {
                    Error::Precondition(
                        "--e/--c need the degree-6 problem with its trace conditions".into(),
                    )
                })?;
            let (e, c) = (rationals("e", e)?, rationals("c", c)?);
            extra.insert("delta_tc(e)".into(), json!(format_rational(&delta_tc(&e))));
            extra.insert("delta_tc(c)".into(), json!(format_rational(&delta_tc(&c))));
            section_point(v, &e, &c)?
        }
        (_, _, Some(pairs)) => {
            let mut m = BTreeMap::new();
            for p in pairs {
                let (k, val) = p.split_once('=').ok_or_else(|| Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("--point: expected name=value, got `{p}`"),
                })?;
                let q = parse_rational(val.trim()).ok_or_else(|| Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("--point: `{val}` is not a rational"),
                })?;
                m.insert(k.trim().to_string(), q);
            }
            m
        }
        _ => {
            return Err(Error::Precondition(
                "fiber needs --e and --c, or --point".into(),
            ))
        }
    };
    let report = verify_fiber(&problem, &rel, &values)?;
    let points = report.quotient_dimension;
    let betti = report.betti_ranks();
    let summary = format!(
        "points: {}, betti: {}",
        points.map_or("infinite".to_string(), |n| n.to_string()),
        betti
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    if common.json {
        let mut v = json!({
            "points": points,
            "betti": betti,
            "flat": report.is_flat(),
            "point": values.iter().map(|(k, q)| (k.clone(), format_rational(q))).collect::<BTreeMap<_, _>>(),
            "report": report,
        });
        for (k, x) in extra {
            v[k] = x;
        }
        emit_json(out, &v)?;
    } else {
        let mut lines = vec![summary, format!("flat: {}", report.is_flat())];
        for (k, x) in &extra {
            lines.push(format!("{k} = {}", x.as_str().unwrap_or_default()));
        }
        lines.push("generators:".into());
        lines.extend(report.generators.iter().map(|g| format!("  {g}")));
        emit_lines(out, &lines)?;
    }
    Ok(exit::OK)
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("COVER_FORGE_THREADS") {
        let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
            Error::Precondition(format!(
                "COVER_FORGE_THREADS must be a positive integer, got `{v}`"
            ))
        })?;
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

fn finish(cert: Certificate, common: &Common) -> Certificate {
    if common.timings {
        cert
    } else {
        cert.without_timings()
    }
}

fn catalog_cmd(names: &[String], all: bool, common: &Common, out: Out) -> Result<u8> {
    if names.is_empty() && !all {
        emit_lines(
            out,
            &catalog::ENTRIES
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
        )?;
        return Ok(exit::OK);
    }
    let mut chosen: Vec<String> = if all {
        catalog::ENTRIES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    chosen.sort();
    chosen.dedup();
    for n in &chosen {
        if !catalog::ENTRIES.contains(&n.as_str()) {
            return Err(Error::Precondition(format!(
                "unknown catalog entry `{n}`; known: {}",
                catalog::ENTRIES.join(", ")
            )));
        }
    }
    let pool = thread_pool()?;
    let results: Vec<Result<Certificate>> = pool.install(|| {
        chosen
            .par_iter()
            .map(|n| catalog::run(n).map(|c| finish(c, common)))
            .collect()
    });

    let mut code = exit::OK;
    let mut certs = Vec::new();
    let mut lines = Vec::new();
    for (name, r) in chosen.iter().zip(results) {
        match r {
            Ok(cert) => {
                let fails: Vec<&str> = cert.failures().iter().map(|c| c.id.as_str()).collect();
                if !fails.is_empty() && code == exit::OK {
                    code = exit::REGRESSION;
                }
                let checks = cert
                    .checks
                    .iter()
                    .filter(|c| c.status != Status::Info)
                    .count();
                if !all {
                    lines.push(cert.report());
                }
                lines.push(if fails.is_empty() {
                    format!("{name}: PASS ({checks} checks)")
                } else {
                    format!(
                        "{name}: FAIL ({} of {checks} checks: {})",
                        fails.len(),
                        fails.join(", ")
                    )
                });
                certs.push(serde_json::to_value(&cert).expect("plain data"));
            }
            Err(e) => {
                if code == exit::OK || code == exit::REGRESSION {
                    code = crate::exit_code(&e);
                }
                lines.push(format!("{name}: ERROR {e}"));
                certs.push(json!({ "name": name, "error": e.to_string() }));
            }
        }
    }
    if common.json {
        emit_json(out, &Value::Array(certs))?;
    } else {
        emit_lines(out, &lines)?;
    }
    Ok(code)
}

/// Differences between two certificates, ignoring timings.
fn differences(old: &Certificate, new: &Certificate) -> Vec<String> {
    let mut out = Vec::new();
    if old.name != new.name {
        out.push(format!("name {} vs {}", old.name, new.name));
    }
    let index = |c: &Certificate| -> BTreeMap<String, (Status, String)> {
        c.checks
            .iter()
            .map(|k| (k.id.clone(), (k.status, k.witness.clone())))
            .collect()
    };
    let (a, b) = (index(old), index(new));
    for id in a.keys().chain(b.keys().filter(|k| !a.contains_key(*k))) {
        match (a.get(id), b.get(id)) {
            (Some(x), Some(y)) if x == y => {}
            (Some((s, _)), Some((t, _))) if s != t => {
                out.push(format!("check {id}: {s:?} -> {t:?}"))
            }
            (Some(_), Some(_)) => out.push(format!("check {id}: witness changed")),
            (Some(_), None) => out.push(format!("check {id} disappeared")),
            (None, _) => out.push(format!("check {id} is new")),
        }
    }
    for k in old.artifacts.keys().chain(new.artifacts.keys()) {
        if old.artifacts.get(k) != new.artifacts.get(k)
            && !out.iter().any(|l| l.ends_with(&format!("artifact {k}")))
        {
            out.push(format!("artifact {k}"));
        }
    }
    out
}

fn verify(name: &str, against: Option<&Path>, common: &Common, out: Out) -> Result<u8> {
    let saved = against
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", p.display())))?;
            Certificate::from_json(&text)
        })
        .transpose()?;
    let cert = finish(catalog::run(name)?, common);
    if common.json {
        emit_json(out, &serde_json::to_value(&cert).expect("plain data"))?;
    } else {
        write!(out, "{}", cert.report()).map_err(io)?;
        writeln!(
            out,
            "verdict: {}",
            if cert.passed() { "PASS" } else { "FAIL" }
        )
        .map_err(io)?;
    }
    if let Some(old) = saved {
        let diff = differences(&old, &cert);
        if !diff.is_empty() {
            return Err(Error::Regression(format!(
                "certificate differs: {}",
                diff.join("; ")
            )));
        }
    }
    Ok(if cert.passed() {
        exit::OK
    } else {
        exit::REGRESSION
    })
}

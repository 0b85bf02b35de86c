//! The acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any gated criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use pcentral::autsearch::{brute_force_aut, sylow_p_subgroup, DEFAULT_BUDGET};
use pcentral::catalog::{build_str, sigma_pair, sigma_power_closed_form};
use pcentral::corpus::{build_action, replay_bundle, run_corpus, ActionSpec, ExperimentConfig, Record, RunReport};
use pcentral::verify::{sigma_wording, Outcome};
use pcentral::{Element, FpMatrix};
use serde_json::Value;

type Outcome_ = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {:.1}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()),
    )
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sigma_reproduction() -> Outcome_ {
    let start = Instant::now();
    let mut parts = Vec::new();
    for p in [2u32, 3, 5] {
        let pair = sigma_pair(p).map_err(err)?;
        let g = pair.group();
        let exp = g.exponent_of(&pair.commutator_ga());
        let sigma = &pair.a_generators()[0];
        let p = p as u64;
        ensure(exp == p, format!("p={p}: exp[E,A] = {exp}"))?;
        ensure(!sigma.power(p).is_identity(), format!("p={p}: sigma^p = 1"))?;
        ensure(sigma.power(p * p).is_identity(), format!("p={p}: sigma^(p^2) != 1"))?;
        ensure(sigma.order() == p * p, format!("p={p}: order {}", sigma.order()))?;
        parts.push(format!("p={p}: exp[E,A]={exp}, |sigma|={}", sigma.order()));
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{} ({:.2}s)", parts.join("; "), start.elapsed().as_secs_f64()))
}

fn closed_form() -> Outcome_ {
    let start = Instant::now();
    let mut checked = 0;
    for p in [2u32, 3, 5] {
        let sigma = Element::from(FpMatrix::jordan_block(p, p as usize + 1).map_err(err)?);
        for n in 0..=(p * p) as u64 {
            let lhs = Element::from(sigma_power_closed_form(p, n).map_err(err)?);
            ensure(lhs == sigma.power(n), format!("p={p} n={n} differs"))?;
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "{checked} (p, n) cases entry-exact ({:.3}s)",
        start.elapsed().as_secs_f64()
    ))
}

fn series_oracle(cfg: &ExperimentConfig) -> Outcome_ {
    let mut pairs = 0;
    let mut families = BTreeSet::new();
    let mut actions = BTreeSet::new();
    for entry in &cfg.corpus {
        let g = Arc::new(build_str(&entry.group).map_err(err)?);
        if g.order() > 256 || g.prime().is_none() {
            continue;
        }
        for a in &entry.actions {
            let spec = ActionSpec::parse(a).map_err(err)?;
            let pair = build_action(&g, &spec, &cfg.caps).map_err(err)?;
            let defs = pair
                .gamma_ga_definitional_series(5, g.order() * 5 + 1, cfg.caps.definitional_budget)
                .map_err(err)?;
            let fast = pair.gamma_ga(5);
            for (k, d) in (1..=5).zip(&defs) {
                ensure(
                    Some(d) == fast.term(k),
                    format!("{} | {a}: k={k} mismatch", entry.group),
                )?;
            }
            pairs += 1;
            families.insert(entry.group.split('(').next().unwrap_or("").to_string());
            actions.insert(a.split('(').next().unwrap_or("").to_string());
        }
    }
    ensure(pairs >= 10, format!("only {pairs} pairs"))?;
    for f in [
        "elementary_abelian",
        "cyclic",
        "heisenberg",
        "ut",
        "dihedral",
        "quaternion",
    ] {
        ensure(families.contains(f), format!("no {f} pair"))?;
    }
    for a in ["inner", "jordan", "trivial"] {
        ensure(actions.contains(a), format!("no {a} action"))?;
    }
    Ok(format!("{pairs} pairs, k <= 5, zero mismatches"))
}

fn of_check<'a>(r: &'a RunReport, checks: &'a [&str]) -> impl Iterator<Item = &'a Record> + 'a {
    r.records
        .iter()
        .filter(move |x| checks.contains(&x.verdict.check.as_str()))
}

fn count_line(r: &RunReport, checks: &[&str]) -> Result<String, String> {
    let all: Vec<&Record> = of_check(r, checks).collect();
    let hyp = all.iter().filter(|x| x.verdict.hypothesis == Outcome::Pass).count();
    let bad: Vec<String> = all
        .iter()
        .filter(|x| x.verdict.is_failure())
        .map(|x| format!("{} on {}", x.verdict.check, x.verdict.subject))
        .collect();
    ensure(bad.is_empty(), format!("failures: {}", bad.join(", ")))?;
    ensure(!all.is_empty(), "no verdicts")?;
    Ok(format!(
        "{} verdicts, {hyp} with hypothesis passing, 0 failures",
        all.len()
    ))
}

fn main1_suite(r: &RunReport, elapsed: Duration) -> Outcome_ {
    ensure(r.errors.is_empty(), format!("{} aborted entries", r.errors.len()))?;
    let line = count_line(r, &["main1"])?;
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("{line}; full corpus run {:.1}s", elapsed.as_secs_f64()))
}

fn lemma_suite(r: &RunReport) -> Outcome_ {
    let line = count_line(
        r,
        &["l0.1", "l0.2", "l0.3", "l1", "c5", "l2", "l6", "l6prime", "p7", "p8"],
    )?;
    let control: Vec<&Record> = of_check(r, &["p7"])
        .filter(|x| x.group_spec == "elementary_abelian(3,2)" && x.action.as_deref() == Some("full_aut"))
        .collect();
    ensure(!control.is_empty(), "negative control missing")?;
    ensure(
        control.iter().all(|x| x.verdict.hypothesis == Outcome::Fail),
        "GL(2,3) control has a passing hypothesis",
    )?;
    Ok(format!(
        "{line}; GL(2,3) control: hypothesis fails for i = 1..={}",
        control.len()
    ))
}

fn detail_u64(rec: &Record, key: &str) -> Option<u64> {
    rec.verdict.details.get(key).and_then(Value::as_u64)
}

fn corollary(r: &RunReport) -> Outcome_ {
    let main = count_line(r, &["cor"])?;
    let omega = count_line(r, &["cor.omega"])?;
    for (g, e) in [("heisenberg(3)", 3), ("quaternion(8)", 2)] {
        let rec = of_check(r, &["cor"])
            .find(|x| x.group_spec == g)
            .ok_or_else(|| format!("{g} missing"))?;
        ensure(
            rec.verdict.hypothesis == Outcome::Pass,
            format!("{g}: hypothesis fails"),
        )?;
        let got = (detail_u64(rec, "exp_derived"), detail_u64(rec, "exp_central_quotient"));
        ensure(got == (Some(e), Some(e)), format!("{g}: exponents {got:?}"))?;
    }
    Ok(format!(
        "cor: {main}; strengthened identity: {omega}; Heisenberg 3/3, Q8 2/2"
    ))
}

fn complement_checks(r: &RunReport, cfg: &ExperimentConfig) -> Outcome_ {
    count_line(r, &["main2", "gw"])?;
    let main2 = |g: &str, p: u64| -> Vec<&Record> {
        of_check(r, &["main2"])
            .filter(|x| x.group_spec == g && x.verdict.params.get("p") == Some(&p))
            .collect()
    };
    let q8c3 = main2("direct_product(quaternion(8),cyclic(3,1))", 2);
    ensure(
        q8c3.iter().any(|x| {
            x.verdict.params["i"] == 2 && x.verdict.hypothesis == Outcome::Pass && x.verdict.conclusion == Outcome::Pass
        }),
        "Q8 x C3 at p=2, i=2 does not pass",
    )?;
    let s3 = main2("sym(3)", 3);
    ensure(
        s3.iter()
            .any(|x| x.verdict.params["i"] == 2 && x.verdict.hypothesis == Outcome::Fail),
        "S3 at p=3, i=2 passes its hypothesis",
    )?;
    ensure(
        main2("sl2_3", 2).iter().all(|x| x.verdict.hypothesis == Outcome::Fail),
        "SL(2,3) at p=2 passes its hypothesis",
    )?;
    let mut nilpotent = 0;
    for entry in &cfg.corpus {
        if entry.expect.as_ref().and_then(|e| e.class).is_none_or(|c| c < 0) {
            continue;
        }
        let recs: Vec<&Record> = of_check(r, &["main2"])
            .filter(|x| x.group_spec == entry.group)
            .collect();
        let ps: BTreeSet<u64> = recs.iter().map(|x| x.verdict.params["p"]).collect();
        for p in ps {
            let at_p: Vec<&&Record> = recs.iter().filter(|x| x.verdict.params["p"] == p).collect();
            ensure(
                at_p.iter()
                    .any(|x| x.verdict.hypothesis == Outcome::Pass && x.verdict.conclusion == Outcome::Pass),
                format!("{} p={p}: never passes", entry.group),
            )?;
        }
        nilpotent += 1;
    }
    // gw and main2 share a conclusion; it must agree per (group, p)
    let mut answers: BTreeMap<(String, u64), BTreeSet<bool>> = BTreeMap::new();
    for x in of_check(r, &["main2", "gw"]) {
        let held = x.verdict.details.get("conclusion_holds").and_then(Value::as_bool);
        if let Some(h) = held {
            answers
                .entry((x.group_spec.clone(), x.verdict.params["p"]))
                .or_default()
                .insert(h);
        }
    }
    let inconsistent: Vec<String> = answers
        .iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|((g, p), _)| format!("{g} p={p}"))
        .collect();
    ensure(
        inconsistent.is_empty(),
        format!("gw/main2 disagree: {}", inconsistent.join(", ")),
    )?;
    Ok(format!(
        "Q8xC3 passes, S3 and SL(2,3) hypotheses fail, {nilpotent} nilpotent groups pass, gw consistent on {} (group, p)",
        answers.len()
    ))
}

fn ya1() -> Outcome_ {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (spec, p) in [
        ("elementary_abelian(2,2)", 2u64),
        ("elementary_abelian(3,2)", 3),
        ("elementary_abelian(3,3)", 3),
        ("heisenberg(3)", 3),
    ] {
        let g = Arc::new(build_str(spec).map_err(err)?);
        let aut = brute_force_aut(g, DEFAULT_BUDGET).map_err(err)?;
        let s = sylow_p_subgroup(&aut.perm, p as u32);
        let e = aut.perm.exponent_of(&s);
        ensure(e == p, format!("{spec}: Sylow exponent {e}"))?;
        parts.push(format!("{spec}: |Aut|={} |P|={} exp={e}", aut.order(), s.order()));
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{} ({:.1}s)", parts.join("; "), start.elapsed().as_secs_f64()))
}

fn ambiguity_report() -> Outcome_ {
    let rep = sigma_wording(3, 4096).map_err(err)?;
    ensure(rep.gamma_p_dim == 2, format!("dim gamma_p = {}", rep.gamma_p_dim))?;
    ensure(rep.gamma_p_dim_definitional == Some(2), "definitional dim differs")?;
    ensure(!rep.p_central_on_gamma_p, "p-central on gamma_p")?;
    ensure(rep.iterated_dim == 1, format!("dim [E,_pA] = {}", rep.iterated_dim))?;
    ensure(rep.p_central_on_iterated, "not p-central on [E,_pA]")?;
    Ok(format!(
        "p=3: dim gamma_3(E,A)=2 not p-central; dim [E,_3A]=1 p-central (report only, holds for {:?})",
        rep.claim_holds_for
    ))
}

fn self_test(scratch: &Path) -> Outcome_ {
    let cfg_path = scratch.join("seeded.toml");
    std::fs::write(
        &cfg_path,
        "checks = [\"catalog\"]\n[[corpus]]\ngroup = \"heisenberg(3)\"\nexpect = { order = 27, exponent = 9, class = 2 }\n",
    )
    .map_err(err)?;
    let out = scratch.join("out");
    let status = Command::new(env!("CARGO_BIN_EXE_pcentral"))
        .arg("run")
        .arg(&cfg_path)
        .arg("--out")
        .arg(&out)
        .output()
        .map_err(err)?;
    ensure(
        status.status.code() == Some(2),
        format!("exit code {:?}", status.status.code()),
    )?;
    let bundles: Vec<_> = std::fs::read_dir(out.join("bundles"))
        .map_err(err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    ensure(bundles.len() == 1, format!("{} bundles", bundles.len()))?;
    let replay = replay_bundle(&bundles[0]).map_err(err)?;
    ensure(replay.reproduced(), "replay differs from the recorded verdict")?;
    ensure(replay.replayed.is_failure(), "replay does not fail")?;
    Ok(format!(
        "exit 2, bundle {} replays to the same failure",
        bundles[0].display()
    ))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, result: Outcome_| match result {
        Ok(msg) => println!("PASS criterion {n:>2} {name}: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL criterion {n:>2} {name}: {msg}");
        }
    };
    let cfg = ExperimentConfig::default_corpus();
    report(1, "sigma example", sigma_reproduction());
    report(2, "closed-form powers", closed_form());
    report(3, "series oracle", series_oracle(&cfg));

    let scratch = tempfile::tempdir().expect("temp dir");
    let start = Instant::now();
    let run = run_corpus(&cfg, scratch.path());
    let elapsed = start.elapsed();
    match run {
        Ok(r) => {
            report(4, "main1 suite", main1_suite(&r, elapsed));
            report(5, "lemma suite", lemma_suite(&r));
            report(6, "corollary", corollary(&r));
            report(7, "Sylow of Aut", ya1());
            report(8, "normal complements", complement_checks(&r, &cfg));
        }
        Err(e) => {
            for (n, name) in [
                (4, "main1 suite"),
                (5, "lemma suite"),
                (6, "corollary"),
                (8, "normal complements"),
            ] {
                report(n, name, Err(format!("corpus run failed: {e}")));
            }
            report(7, "Sylow of Aut", ya1());
        }
    }
    report(9, "ambiguity report", ambiguity_report());
    report(10, "harness self-test", self_test(scratch.path()));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}

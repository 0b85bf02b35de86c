//! Experiment configs, the corpus runner, reports and reproducer bundles.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::action::{ActionPair, A_CAP, DEFINITIONAL_BUDGET};
use crate::autsearch::{brute_force_aut, sylow_p_subgroup, AutGroupResult, DEFAULT_BUDGET};
use crate::backend::{Element, FpMatrix};
use crate::cache::{build_cached, cache_dir, load_group, save_group};
use crate::catalog::{matrix_automorphism, FamilyArg, FamilySpec};
use crate::error::{Error, Result};
use crate::group::{log_p, GroupTable, DEFAULT_CAP};
use crate::series::lower_central_series;
use crate::verify::{self, Expectation, Facts, Verdict};

/// The built-in corpus.
pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.toml");

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Main1,
    Cor,
    L0,
    L1,
    C5,
    L2,
    L6,
    P7,
    P8,
    Main2,
    Gw,
    Ya1,
    L4,
    Catalog,
    Sigma,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub group_order: usize,
    pub aut_order: usize,
    pub aut_budget: u64,
    pub definitional_order: usize,
    pub definitional_budget: u64,
    pub definitional_k: usize,
    /// Largest series index `i` tried by index-quantified checks.
    pub max_index: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: DEFAULT_CAP,
            aut_order: A_CAP,
            aut_budget: DEFAULT_BUDGET,
            definitional_order: 256,
            definitional_budget: DEFINITIONAL_BUDGET,
            definitional_k: 5,
            max_index: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct ReportPaths {
    pub ndjson: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub bundles: PathBuf,
}

impl Default for ReportPaths {
    fn default() -> Self {
        ReportPaths {
            ndjson: None,
            summary: None,
            bundles: PathBuf::from("bundles"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub group: String,
    #[serde(default)]
    pub actions: Vec<String>,
    /// Primes for the normal-complement checks; default: every prime divisor of `|G|`.
    #[serde(default)]
    pub primes: Vec<u32>,
    #[serde(default)]
    pub expect: Option<Expectation>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Worker threads; 0 uses every core.
    #[serde(default)]
    pub parallelism: usize,
    /// Checks to run; all of them when absent.
    #[serde(default)]
    pub checks: Option<Vec<CheckKind>>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default)]
    pub report: ReportPaths,
    /// Primes for which the σ-example wording report is produced.
    #[serde(default)]
    pub sigma: Vec<u32>,
    #[serde(default)]
    pub corpus: Vec<CorpusEntry>,
}

/// How `A` is obtained from `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    Trivial,
    Inner,
    /// The full-size Jordan block on an elementary abelian group.
    Jordan,
    JordanPower(u64),
    SylowAut,
    FullAut,
}

impl ActionSpec {
    pub fn parse(text: &str) -> Result<ActionSpec> {
        let s = FamilySpec::parse(text)?;
        let arity = |n: usize| {
            if s.args.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "action {} takes {n} argument(s)",
                    s.name
                )))
            }
        };
        match s.name.as_str() {
            "trivial" => arity(0).map(|_| ActionSpec::Trivial),
            "inner" => arity(0).map(|_| ActionSpec::Inner),
            "jordan" => arity(0).map(|_| ActionSpec::Jordan),
            "sylow_aut" => arity(0).map(|_| ActionSpec::SylowAut),
            "full_aut" => arity(0).map(|_| ActionSpec::FullAut),
            "jordan_power" => {
                arity(1)?;
                match s.args[0] {
                    FamilyArg::Int(k) if k >= 0 => Ok(ActionSpec::JordanPower(k as u64)),
                    _ => Err(Error::InvalidArgument(
                        "jordan_power needs a nonnegative integer".into(),
                    )),
                }
            }
            other => Err(Error::InvalidArgument(format!("unknown action `{other}`"))),
        }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Trivial => write!(f, "trivial"),
            ActionSpec::Inner => write!(f, "inner"),
            ActionSpec::Jordan => write!(f, "jordan"),
            ActionSpec::JordanPower(k) => write!(f, "jordan_power({k})"),
            ActionSpec::SylowAut => write!(f, "sylow_aut"),
            ActionSpec::FullAut => write!(f, "full_aut"),
        }
    }
}

fn aut_actions(g: &Arc<GroupTable>, aut: &AutGroupResult, gens: &[usize], cap: usize) -> Result<ActionPair> {
    let autos = gens
        .iter()
        .map(|&x| aut.automorphism_at(x))
        .collect::<Result<Vec<_>>>()?;
    ActionPair::with_cap(Arc::clone(g), autos, cap)
}

/// Realizes an action on `g`.
pub fn build_action(g: &Arc<GroupTable>, spec: &ActionSpec, caps: &Caps) -> Result<ActionPair> {
    let pair = match spec {
        ActionSpec::Trivial => ActionPair::trivial(Arc::clone(g)),
        ActionSpec::Inner => ActionPair::inner(Arc::clone(g))?,
        ActionSpec::Jordan | ActionSpec::JordanPower(_) => {
            let p = g.require_prime()?;
            let n = g.generators().len();
            let k = match spec {
                ActionSpec::JordanPower(k) => *k,
                _ => 1,
            };
            let m = match Element::from(FpMatrix::jordan_block(p, n)?).power(k) {
                Element::Matrix(m) => m,
                Element::Perm(_) => unreachable!(),
            };
            let a = matrix_automorphism(g, &m)?;
            ActionPair::with_cap(Arc::clone(g), vec![a], caps.aut_order)?
        }
        ActionSpec::SylowAut | ActionSpec::FullAut => {
            let aut = brute_force_aut(Arc::clone(g), caps.aut_budget)?;
            if matches!(spec, ActionSpec::FullAut) {
                let gens = aut.perm.generators().to_vec();
                aut_actions(g, &aut, &gens, caps.aut_order)?
            } else {
                let p = g.require_prime()?;
                let s = sylow_p_subgroup(&aut.perm, p);
                aut_actions(g, &aut, s.gens(), caps.aut_order)?
            }
        }
    };
    Ok(pair.with_label(spec.to_string()))
}

fn config_error(context: &str, e: impl fmt::Display) -> Error {
    Error::Config(format!("{context}: {e}"))
}

impl ExperimentConfig {
    /// Parses and validates; unknown checks, keys, families and actions are rejected here.
    pub fn from_toml_str(text: &str) -> Result<ExperimentConfig> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = fs::read_to_string(path)?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn default_corpus() -> ExperimentConfig {
        Self::from_toml_str(DEFAULT_CONFIG).expect("built-in config is valid")
    }

    fn validate(&self) -> Result<()> {
        for (i, e) in self.corpus.iter().enumerate() {
            let ctx = format!("corpus entry {} (`{}`)", i + 1, e.group);
            FamilySpec::parse(&e.group).map_err(|err| config_error(&ctx, err))?;
            for a in &e.actions {
                ActionSpec::parse(a).map_err(|err| config_error(&ctx, err))?;
            }
            for &p in &e.primes {
                if !crate::backend::is_prime(p) {
                    return Err(config_error(&ctx, format!("{p} is not prime")));
                }
            }
        }
        for &p in &self.sigma {
            if !matches!(p, 2 | 3 | 5) {
                return Err(config_error("sigma", format!("prime {p} is outside {{2, 3, 5}}")));
            }
        }
        Ok(())
    }

    pub fn enabled(&self, c: CheckKind) -> bool {
        self.checks.as_ref().is_none_or(|v| v.contains(&c))
    }
}

/// A verdict together with what is needed to reproduce it.
#[derive(Clone, Debug)]
pub struct Record {
    pub group_spec: String,
    pub action: Option<String>,
    pub group: Option<Arc<GroupTable>>,
    pub expect: Option<Expectation>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunError {
    pub subject: String,
    pub message: String,
    /// Cap or budget exhaustion, as opposed to any other error.
    pub cap: bool,
}

#[derive(Debug, Default)]
pub struct RunReport {
    pub records: Vec<Record>,
    pub errors: Vec<RunError>,
    pub bundles: Vec<PathBuf>,
}

/// Exit status of a run.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_ABORT: i32 = 3;

impl RunReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.records.iter().map(|r| &r.verdict)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.verdict.is_failure())
    }

    /// 2 if any conclusion failed, else 3 if anything aborted, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() {
            EXIT_FAILURE
        } else if !self.errors.is_empty() {
            EXIT_ABORT
        } else {
            EXIT_OK
        }
    }

    pub fn to_ndjson(&self) -> String {
        let mut out = String::new();
        for v in self.verdicts() {
            out.push_str(&serde_json::to_string(v).expect("verdicts serialize"));
            out.push('\n');
        }
        for e in &self.errors {
            out.push_str(&json!({"error": e}).to_string());
            out.push('\n');
        }
        out
    }

    /// Per-check counts, failures and aborts as plain text.
    pub fn summary_table(&self) -> String {
        #[derive(Default)]
        struct Row {
            total: usize,
            hyp_pass: usize,
            concl_pass: usize,
            concl_fail: usize,
            skipped: usize,
        }
        let mut rows: BTreeMap<&str, Row> = BTreeMap::new();
        for v in self.verdicts() {
            let r = rows.entry(&v.check).or_default();
            r.total += 1;
            if v.hypothesis == verify::Outcome::Pass {
                r.hyp_pass += 1
            }
            match v.conclusion {
                verify::Outcome::Pass => r.concl_pass += 1,
                verify::Outcome::Fail => r.concl_fail += 1,
                verify::Outcome::Skipped => r.skipped += 1,
            }
        }
        let mut out = format!(
            "{:<14} {:>7} {:>9} {:>10} {:>10} {:>8}\n",
            "check", "total", "hyp-pass", "concl-ok", "concl-fail", "skipped"
        );
        for (name, r) in &rows {
            out.push_str(&format!(
                "{:<14} {:>7} {:>9} {:>10} {:>10} {:>8}\n",
                name, r.total, r.hyp_pass, r.concl_pass, r.concl_fail, r.skipped
            ));
        }
        for f in self.failures() {
            out.push_str(&format!("FAIL {} on {}\n", f.verdict.check, f.verdict.subject));
        }
        for e in &self.errors {
            out.push_str(&format!("ABORT {}: {}\n", e.subject, e.message));
        }
        for b in &self.bundles {
            out.push_str(&format!("bundle {}\n", b.display()));
        }
        out.push_str(&format!("exit code {}\n", self.exit_code()));
        out
    }
}

fn prime_divisors(mut n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q as u32);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

struct EntryOutput {
    records: Vec<Record>,
    errors: Vec<RunError>,
}

fn to_run_error(subject: String, e: &Error) -> RunError {
    RunError {
        subject,
        message: e.to_string(),
        cap: matches!(e, Error::CapExceeded(_) | Error::BudgetExceeded(_)),
    }
}

fn run_action_checks(
    cfg: &ExperimentConfig,
    pair: &ActionPair,
    push: &mut dyn FnMut(Verdict, Option<&str>),
) -> Result<()> {
    let caps = &cfg.caps;
    let f = Facts::new(pair)?;
    let p = f.p as usize;
    if cfg.enabled(CheckKind::Main1) {
        push(verify::check_theorem_main1(&f), None);
    }
    if cfg.enabled(CheckKind::L0) {
        push(verify::check_lemma_l0_1(&f), None);
        push(
            verify::check_lemma_l0_2(
                &f,
                caps.definitional_k,
                caps.definitional_order,
                caps.definitional_budget,
            )?,
            None,
        );
        push(verify::check_lemma_l0_3(&f), None);
    }
    if cfg.enabled(CheckKind::L1) {
        for k in 2..=p + 1 {
            push(verify::check_lemma_l1(&f, k), None);
        }
    }
    if cfg.enabled(CheckKind::C5) {
        push(verify::check_c5(&f)?, None);
    }
    if cfg.enabled(CheckKind::L2) {
        push(verify::check_lemma_l2(&f), None);
        for (idx, sub) in pair.order_p_subactions(f.p)?.iter().enumerate() {
            let sf = Facts::new(sub)?;
            let mut v = verify::check_lemma_l2(&sf);
            v.params.insert("sub".into(), idx as u64);
            push(v, None);
        }
    }
    if cfg.enabled(CheckKind::L6) {
        let top = log_p(f.group().exponent_of(&f.h), f.p as u64).max(1);
        for k in 1..=p {
            for i in 1..=top {
                push(verify::check_lemma_l6(&f, k, i)?, None);
                push(verify::check_lemma_l6prime(&f, k, i)?, None);
            }
        }
    }
    if cfg.enabled(CheckKind::P7) {
        for i in 1..=caps.max_index {
            push(verify::check_p7(&f, i), None);
        }
    }
    if cfg.enabled(CheckKind::P8) {
        push(verify::check_p8(&f), None);
    }
    Ok(())
}

fn run_entry(cfg: &ExperimentConfig, entry: &CorpusEntry) -> EntryOutput {
    let mut out = EntryOutput {
        records: Vec::new(),
        errors: Vec::new(),
    };
    let spec = FamilySpec::parse(&entry.group).expect("validated");
    let g = match build_cached(&spec, cfg.caps.group_order, cache_dir().as_deref()) {
        Ok(g) => Arc::new(g),
        Err(e) => {
            out.errors.push(to_run_error(entry.group.clone(), &e));
            return out;
        }
    };
    let mut push_group = |v: Verdict, action: Option<&str>, expect: Option<&Expectation>| {
        out.records.push(Record {
            group_spec: entry.group.clone(),
            action: action.map(str::to_string),
            group: Some(Arc::clone(&g)),
            expect: expect.cloned(),
            verdict: v,
        });
    };
    if let (true, Some(expect)) = (cfg.enabled(CheckKind::Catalog), &entry.expect) {
        push_group(verify::check_catalog(&g, expect), None, Some(expect));
    }
    let primes = if entry.primes.is_empty() {
        prime_divisors(g.order() as u64)
    } else {
        entry.primes.clone()
    };
    let mut errors = Vec::new();
    // past max_index when needed, so the series always reaches its stable term
    let top = cfg.caps.max_index.max(lower_central_series(&g).stabilized_at);
    for &p in &primes {
        if cfg.enabled(CheckKind::Main2) {
            for i in 1..=top {
                push_group(verify::check_main2(&g, p, i), None, None);
            }
        }
        if cfg.enabled(CheckKind::Gw) {
            for k in 1..=top {
                match verify::check_gw(&g, p, k) {
                    Ok(v) => push_group(v, None, None),
                    Err(e) => errors.push(to_run_error(format!("{} gw", entry.group), &e)),
                }
            }
        }
    }
    if g.prime().is_some() {
        if cfg.enabled(CheckKind::Cor) {
            match verify::check_corollary_cor(&g) {
                Ok((a, b)) => {
                    push_group(a, None, None);
                    push_group(b, None, None);
                }
                Err(e) => errors.push(to_run_error(format!("{} cor", entry.group), &e)),
            }
        }
        if cfg.enabled(CheckKind::L4) {
            match verify::check_l4(&g) {
                Ok(v) => push_group(v, None, None),
                Err(e) => errors.push(to_run_error(format!("{} l4", entry.group), &e)),
            }
        }
        if cfg.enabled(CheckKind::Ya1) {
            match verify::check_ya1(Arc::clone(&g), cfg.caps.aut_budget) {
                Ok(v) => push_group(v, None, None),
                Err(e) => errors.push(to_run_error(format!("{} ya1", entry.group), &e)),
            }
        }
        for a in &entry.actions {
            let aspec = ActionSpec::parse(a).expect("validated");
            let subject = format!("{} | {}", entry.group, aspec);
            let result = build_action(&g, &aspec, &cfg.caps).and_then(|pair| {
                let label = aspec.to_string();
                run_action_checks(cfg, &pair, &mut |v, _| push_group(v, Some(&label), None))
            });
            if let Err(e) = result {
                errors.push(to_run_error(subject, &e));
            }
        }
    } else if !entry.actions.is_empty() {
        errors.push(RunError {
            subject: entry.group.clone(),
            message: "action checks need a p-group".into(),
            cap: false,
        });
    }
    out.errors.extend(errors);
    out
}

/// Runs every configured check. Bundles for failing verdicts are written under `out_dir`.
pub fn run_corpus(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let outputs: Vec<EntryOutput> = pool.install(|| cfg.corpus.par_iter().map(|e| run_entry(cfg, e)).collect());
    let mut report = RunReport::default();
    for o in outputs {
        report.records.extend(o.records);
        report.errors.extend(o.errors);
    }
    if cfg.enabled(CheckKind::Sigma) {
        for &p in &cfg.sigma {
            match verify::check_sigma_wording(p, cfg.caps.definitional_order.max(4096)) {
                Ok(v) => report.records.push(Record {
                    group_spec: format!("elementary_abelian({p},{})", p + 1),
                    action: Some("jordan".into()),
                    group: None,
                    expect: None,
                    verdict: v,
                }),
                Err(e) => report.errors.push(to_run_error(format!("sigma({p})"), &e)),
            }
        }
    }
    let bundle_root = out_dir.join(&cfg.report.bundles);
    let failing: Vec<(usize, Record)> = report.failures().cloned().enumerate().collect();
    for (n, rec) in failing {
        let dir = bundle_root.join(format!("{:03}-{}", n + 1, rec.verdict.check.replace('.', "_")));
        write_bundle(&dir, &rec, &cfg.caps)?;
        report.bundles.push(dir);
    }
    if let Some(path) = &cfg.report.ndjson {
        write_file(&out_dir.join(path), &report.to_ndjson())?;
    }
    if let Some(path) = &cfg.report.summary {
        write_file(&out_dir.join(path), &report.summary_table())?;
    }
    Ok(report)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BundleManifest {
    pub check: String,
    pub group_spec: String,
    pub action: Option<String>,
    pub params: BTreeMap<String, u64>,
    pub expect: Option<Expectation>,
    pub caps: Caps,
    pub verdict: Verdict,
}

fn write_bundle(dir: &Path, rec: &Record, caps: &Caps) -> Result<()> {
    fs::create_dir_all(dir)?;
    let group = match &rec.group {
        Some(g) => Arc::clone(g),
        None => Arc::new(crate::catalog::build(&FamilySpec::parse(&rec.group_spec)?)?),
    };
    save_group(&group, &dir.join("group.bin"))?;
    let manifest = BundleManifest {
        check: rec.verdict.check.clone(),
        group_spec: rec.group_spec.clone(),
        action: rec.action.clone(),
        params: rec.verdict.params.clone(),
        expect: rec.expect.clone(),
        caps: caps.clone(),
        verdict: rec.verdict.clone(),
    };
    fs::write(dir.join("bundle.json"), serde_json::to_string_pretty(&manifest)?)?;
    Ok(())
}

/// The original verdict from a bundle and the verdict recomputed from its contents.
#[derive(Debug)]
pub struct Replay {
    pub manifest: BundleManifest,
    pub replayed: Verdict,
}

impl Replay {
    /// Same outcome and the same witnesses.
    pub fn reproduced(&self) -> bool {
        let a = &self.manifest.verdict;
        let b = &self.replayed;
        a.hypothesis == b.hypothesis && a.conclusion == b.conclusion && a.witnesses == b.witnesses
    }
}

/// Recomputes a bundled verdict from `group.bin` and `bundle.json` alone.
pub fn replay_bundle(dir: &Path) -> Result<Replay> {
    let manifest: BundleManifest = serde_json::from_str(&fs::read_to_string(dir.join("bundle.json"))?)?;
    let g = Arc::new(load_group(&dir.join("group.bin"))?);
    let replayed = run_single(&manifest, g)?;
    Ok(Replay { manifest, replayed })
}

fn param(m: &BundleManifest, key: &str) -> Result<u64> {
    m.params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Decode(format!("bundle lacks parameter `{key}`")))
}

fn run_single(m: &BundleManifest, g: Arc<GroupTable>) -> Result<Verdict> {
    let caps = &m.caps;
    let pair = match &m.action {
        Some(a) if m.check != "sigma.wording" => Some(build_action(&g, &ActionSpec::parse(a)?, caps)?),
        _ => None,
    };
    let need_pair = || {
        pair.as_ref()
            .ok_or_else(|| Error::Decode("bundle lacks an action".into()))
    };
    let v = match m.check.as_str() {
        "catalog" => verify::check_catalog(
            &g,
            m.expect
                .as_ref()
                .ok_or_else(|| Error::Decode("no expectation".into()))?,
        ),
        "cor" => verify::check_corollary_cor(&g)?.0,
        "cor.omega" => verify::check_corollary_cor(&g)?.1,
        "l4" => verify::check_l4(&g)?,
        "ya1" => verify::check_ya1(Arc::clone(&g), caps.aut_budget)?,
        "main2" => verify::check_main2(&g, param(m, "p")? as u32, param(m, "i")? as usize),
        "gw" => verify::check_gw(&g, param(m, "p")? as u32, param(m, "k")? as usize)?,
        "sigma.wording" => verify::check_sigma_wording(param(m, "p")? as u32, caps.definitional_order.max(4096))?,
        "l2" if m.params.contains_key("sub") => {
            let pair = need_pair()?;
            let p = g.require_prime()?;
            let subs = pair.order_p_subactions(p)?;
            let idx = param(m, "sub")? as usize;
            let sub = subs
                .get(idx)
                .ok_or_else(|| Error::Decode("subaction index out of range".into()))?;
            let mut v = verify::check_lemma_l2(&Facts::new(sub)?);
            v.params.insert("sub".into(), idx as u64);
            v
        }
        other => {
            let pair = need_pair()?;
            let f = Facts::new(pair)?;
            match other {
                "main1" => verify::check_theorem_main1(&f),
                "l0.1" => verify::check_lemma_l0_1(&f),
                "l0.2" => verify::check_lemma_l0_2(
                    &f,
                    param(m, "kmax")? as usize,
                    caps.definitional_order,
                    caps.definitional_budget,
                )?,
                "l0.3" => verify::check_lemma_l0_3(&f),
                "l1" => verify::check_lemma_l1(&f, param(m, "k")? as usize),
                "c5" => verify::check_c5(&f)?,
                "l2" => verify::check_lemma_l2(&f),
                "l6" => verify::check_lemma_l6(&f, param(m, "k")? as usize, param(m, "i")? as u32)?,
                "l6prime" => verify::check_lemma_l6prime(&f, param(m, "k")? as usize, param(m, "i")? as u32)?,
                "p7" => verify::check_p7(&f, param(m, "i")? as usize),
                "p8" => verify::check_p8(&f),
                _ => return Err(Error::Decode(format!("unknown check `{other}`"))),
            }
        }
    };
    Ok(v)
}

//! The `treegrp` command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 enumeration cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::harness::{self, Method};
use crate::pattern::{
    dimension_in_allowed_set, essential_reduction, hausdorff_dimension, is_essential, is_finite,
    is_level_transitive, DimensionJson, LinearPatternGroup,
};
use crate::portrait::{FiniteAutomorphism, LevelSet, Vertex};
use crate::subgroup::{close, EnumeratedSubgroup, EnumerationCap, PredicateSubgroup, SubgroupKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// JSON report schema version.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "treegrp", version, about = "Exact computation in finite binary tree automorphism groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Omit the timestamp from JSON output.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Enumeration cap (elements); overrides TREEGRP_CAP.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Element arithmetic on hex-encoded portraits.
    #[command(subcommand)]
    Elem(ElemCommand),
    /// Classify every P_J of G(d) as a pattern group.
    Classify {
        #[arg(long)]
        d: usize,
        /// Use the linear-algebra route (allows d = 5).
        #[arg(long)]
        gf2: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Analyze a subgroup or pattern group described by a JSON file.
    Analyze {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ni,
    Noadad,
    Topfg,
    Relation,
    Aux,
    All,
}

#[derive(Args, Debug)]
pub struct Pair {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
}

#[derive(Subcommand, Debug)]
pub enum ElemCommand {
    /// lhs * rhs (rhs acts first).
    Compose(Pair),
    Invert {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: String,
    },
    /// Image of the word w.
    Apply {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "")]
        w: String,
    },
    /// Section at the word w.
    Section {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "")]
        w: String,
    },
    /// Label parity over the levels in J.
    Alpha {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: String,
        #[arg(long = "J", value_delimiter = ',', required = true)]
        j: Vec<usize>,
    },
    Distance(Pair),
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Lib(e) if e.is_resource() => EXIT_CAP,
            Failure::Lib(Error::Inconsistent(_)) => EXIT_CHECK_FAILED,
            Failure::Lib(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

/// A finished command: its JSON payload, text rendering and verdict.
struct Outcome {
    command: String,
    result: Value,
    text: String,
    passed: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let cap = cli.cap.map(EnumerationCap).unwrap_or_else(EnumerationCap::from_env);
    match execute(&cli.command, cap) {
        Ok(o) => {
            let rendered = match cli.format {
                Format::Text => o.text.clone(),
                Format::Json => {
                    let mut doc = serde_json::Map::new();
                    doc.insert("schema".into(), json!(SCHEMA));
                    doc.insert("command".into(), json!(o.command));
                    if !cli.no_timestamp {
                        let secs = std::time::SystemTime::now()
                            .duration_since(std::time::UNIX_EPOCH)
                            .map(|d| d.as_secs())
                            .unwrap_or(0);
                        doc.insert("timestamp".into(), json!(secs));
                    }
                    doc.insert("passed".into(), json!(o.passed));
                    doc.insert("result".into(), o.result);
                    serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable") + "\n"
                }
            };
            let _ = out.write_all(rendered.as_bytes());
            if o.passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "treegrp: {} reported failures", o.command);
                EXIT_CHECK_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "treegrp: {}", f.message());
            f.exit_code()
        }
    }
}

fn execute(cmd: &Command, cap: EnumerationCap) -> Result<Outcome, Failure> {
    match cmd {
        Command::Elem(e) => elem(e),
        Command::Classify { d, gf2 } => classify(*d, *gf2, cap),
        Command::Verify { suite, d, samples, seed } => verify(*suite, *d, *samples, *seed, cap),
        Command::Analyze { file } => analyze(file, cap),
    }
}

fn parse_elem(field: &str, hex: &str, d: usize) -> Result<FiniteAutomorphism, Failure> {
    FiniteAutomorphism::from_hex(hex, d).map_err(|e| Failure::Usage(format!("--{field}: {e}")))
}

fn parse_word(field: &str, w: &str) -> Result<Vertex, Failure> {
    w.parse().map_err(|e: Error| Failure::Usage(format!("--{field}: {e}")))
}

fn simple(command: &str, result: Value, text: String) -> Outcome {
    Outcome {
        command: command.into(),
        result,
        text: text + "\n",
        passed: true,
    }
}

fn elem(cmd: &ElemCommand) -> Result<Outcome, Failure> {
    Ok(match cmd {
        ElemCommand::Compose(p) => {
            let (a, b) = (parse_elem("lhs", &p.lhs, p.d)?, parse_elem("rhs", &p.rhs, p.d)?);
            let c = a.compose(&b)?.to_hex();
            simple("elem compose", json!({"d": p.d, "lhs": p.lhs, "rhs": p.rhs, "value": c}), c)
        }
        ElemCommand::Invert { d, g } => {
            let v = parse_elem("g", g, *d)?.invert().to_hex();
            simple("elem invert", json!({"d": d, "g": g, "value": v}), v)
        }
        ElemCommand::Apply { d, g, w } => {
            let x = parse_elem("g", g, *d)?;
            let v = x.apply(&parse_word("w", w)?)?.to_string();
            simple("elem apply", json!({"d": d, "g": g, "w": w, "value": v}), v)
        }
        ElemCommand::Section { d, g, w } => {
            let x = parse_elem("g", g, *d)?;
            let s = x.section(&parse_word("w", w)?)?;
            let v = s.to_hex();
            simple(
                "elem section",
                json!({"d": d, "g": g, "w": w, "depth": s.depth(), "value": v}),
                v,
            )
        }
        ElemCommand::Alpha { d, g, j } => {
            let x = parse_elem("g", g, *d)?;
            if let Some(bad) = j.iter().find(|&&l| l >= 32) {
                return Err(Failure::Usage(format!("--J: level {bad} out of range")));
            }
            let levels: LevelSet = j.iter().copied().collect();
            let v = x.alpha(levels)?.as_u8();
            simple("elem alpha", json!({"d": d, "g": g, "J": levels, "value": v}), v.to_string())
        }
        ElemCommand::Distance(p) => {
            let (a, b) = (parse_elem("lhs", &p.lhs, p.d)?, parse_elem("rhs", &p.rhs, p.d)?);
            let dist = a.distance(&b)?;
            let v = dist.to_string();
            simple(
                "elem distance",
                json!({
                    "d": p.d, "lhs": p.lhs, "rhs": p.rhs,
                    "first_difference_level": dist.first_difference_level,
                    "value": v,
                }),
                v,
            )
        }
    })
}

fn classify(d: usize, gf2: bool, cap: EnumerationCap) -> Result<Outcome, Failure> {
    let method = if gf2 { Method::Gf2 } else { Method::Enumeration };
    if !gf2 && d > harness::MAX_ENUMERATION_DEPTH {
        cap.check_full_group(d)?;
    }
    let report = harness::classify_maximal(d, method, cap)?;
    let mut text = format!("classification of the maximal subgroups P_J of G({d})\n");
    text += "J           essential  |R|      a_{d-1}  [G,G]  dim     max  not-tfg\n";
    for r in &report.rows {
        text += &format!(
            "{:<11} {:<10} 2^{:<6} {:<8} {:<6} {:<7} {:<4} {}\n",
            r.j.to_string(),
            r.essential,
            r.reduced_order_log2,
            if r.contains_a_dminus1 { "in" } else { "out" },
            if r.contains_derived_of_gd { "yes" } else { "no" },
            format!("{}/{}", r.dimension.num, r.dimension.den),
            if r.is_max_dimension { "yes" } else { "no" },
            match r.bs_premise_fails {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            }
        );
    }
    text += &format!(
        "{} of {} sets J give maximal dimension (expected {})\n",
        report.max_dimension_count,
        report.rows.len(),
        report.expected_max_dimension_count
    );
    for v in &report.violations {
        text += &format!("VIOLATION: {v}\n");
    }
    text += if report.passed() { "PASS\n" } else { "FAIL\n" };
    Ok(Outcome {
        command: "classify".into(),
        passed: report.passed(),
        result: serde_json::to_value(&report).expect("serializable"),
        text,
    })
}

fn suites_for(suite: Suite) -> Vec<Suite> {
    match suite {
        Suite::All => vec![Suite::Ni, Suite::Noadad, Suite::Topfg, Suite::Relation, Suite::Aux],
        s => vec![s],
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Ni => "ni",
        Suite::Noadad => "noadad",
        Suite::Topfg => "topfg",
        Suite::Relation => "relation",
        Suite::Aux => "aux",
        Suite::All => "all",
    }
}

fn verify(suite: Suite, d: usize, samples: u64, seed: u64, cap: EnumerationCap) -> Result<Outcome, Failure> {
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    let mut all_passed = true;
    for s in suites_for(suite) {
        let (value, passed, summary) = run_suite(s, d, samples, seed, cap)?;
        all_passed &= passed;
        text += &format!("{:<9} {}  {summary}\n", suite_name(s), if passed { "PASS" } else { "FAIL" });
        results.insert(suite_name(s).into(), value);
    }
    Ok(Outcome {
        command: format!("verify {}", suite_name(suite)),
        result: json!({"d": d, "samples": samples, "seed": seed, "suites": results}),
        text,
        passed: all_passed,
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn run_suite(s: Suite, d: usize, samples: u64, seed: u64, cap: EnumerationCap) -> Result<(Value, bool, String), Failure> {
    Ok(match s {
        Suite::Ni => {
            let r = harness::verify_ni_suite(d, samples, seed)?;
            let pairs: u64 = r.random.iter().chain(&r.exhaustive).map(|x| x.pairs_checked).sum();
            let fails: u64 = r.random.iter().chain(&r.exhaustive).map(|x| x.failures).sum();
            let summary = format!(
                "N_0/N_1 identities: {pairs} pairs over {} sets J, {fails} failures; commutator parities: {} samples, {} failures",
                r.random.len(),
                r.commutator_samples,
                r.commutator_failures
            );
            (to_value(&r), r.passed(), summary)
        }
        Suite::Noadad => {
            let r = harness::verify_no_adad(d, cap)?;
            let arms = if d <= harness::MAX_ENUMERATION_DEPTH { "certificate and enumeration agree" } else { "certificate only" };
            let summary = format!("[a_0,a_{{d-1}}] outside [P_J,P_J] for {} sets J ({arms})", r.cases.iter().filter(|c| c.certificate.excludes()).count());
            (to_value(&r), r.passed(), summary)
        }
        Suite::Topfg => {
            let r = harness::verify_not_top_fg(d, cap)?;
            let summary = format!("{} maximal-dimension P_J: P_{{d-1}} not inside [P,P]", r.cases.len());
            (to_value(&r), r.passed(), summary)
        }
        Suite::Relation => {
            let r = harness::verify_new_relation(d, cap)?;
            let summary = format!(
                "2|P| = |P_{{d-1}}|^2 [HxH:H_1] on {} pattern groups{}",
                r.cases.len(),
                if r.complete() { "" } else { " (index unstabilized)" }
            );
            (to_value(&r), r.passed() && r.complete(), summary)
        }
        Suite::Aux => {
            let r = harness::verify_auxiliary(d, samples, seed, cap)?;
            let summary = format!(
                "{} conjugate label checks, {} failures; {} finite/transitive/dimension cases",
                r.conjugate_pairs_checked,
                r.conjugate_failures,
                r.cases.len()
            );
            (to_value(&r), r.passed(), summary)
        }
        Suite::All => unreachable!("expanded by suites_for"),
    })
}

/// Input schema for `analyze`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgroupFile {
    d: usize,
    kind: FileKind,
    #[serde(default)]
    generators: Vec<String>,
    #[serde(rename = "J", default)]
    j: Vec<usize>,
    #[serde(rename = "V", default)]
    v: Vec<String>,
    #[serde(default)]
    role: Option<Role>,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
enum FileKind {
    #[serde(rename = "generated")]
    Generated,
    PJ,
    MV,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Role {
    PatternGroup,
    Subgroup,
}

#[derive(Debug, Serialize)]
struct PatternAnalysis {
    essential: bool,
    witness: Option<Value>,
    reduced_order_log2: u32,
    dimension: DimensionJson,
    dimension_allowed: Option<bool>,
    finite: bool,
    level_transitive: Option<bool>,
}

fn analyze(path: &PathBuf, cap: EnumerationCap) -> Result<Outcome, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("--file {}: {e}", path.display())))?;
    let input: Value = serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("--file: {e}")))?;
    let input_file: SubgroupFile =
        serde_json::from_value(input.clone()).map_err(|e| Failure::Usage(format!("--file: {e}")))?;
    let d = input_file.d;
    crate::portrait::check_depth(d).map_err(|e| Failure::Usage(format!("d: {e}")))?;

    let predicate = match input_file.kind {
        FileKind::Generated => None,
        FileKind::PJ => {
            if let Some(bad) = input_file.j.iter().find(|&&l| l >= 32) {
                return Err(Failure::Usage(format!("J: level {bad} out of range")));
            }
            Some(SubgroupKind::PJ(input_file.j.iter().copied().collect()))
        }
        FileKind::MV => {
            let vs = input_file
                .v
                .iter()
                .map(|w| parse_word("V", w))
                .collect::<Result<Vec<_>, _>>()?;
            Some(SubgroupKind::MV(vs))
        }
    }
    .map(|k| PredicateSubgroup::new(d, k))
    .transpose()
    .map_err(|e| Failure::Usage(format!("kind: {e}")))?;

    let enumerated: Option<EnumeratedSubgroup> = match &predicate {
        None => {
            let gens = input_file
                .generators
                .iter()
                .map(|h| parse_elem("generators", h, d))
                .collect::<Result<Vec<_>, _>>()?;
            Some(close(d, &gens, cap)?)
        }
        Some(p) => {
            if cap.check_full_group(d).is_ok() {
                Some(p.enumerate(cap)?)
            } else {
                None
            }
        }
    };

    let mut result = serde_json::Map::new();
    result.insert("input".into(), input);
    let order_log2 = match (&enumerated, &predicate) {
        (Some(e), _) => e.order_log2()?,
        (None, Some(p)) => p.order_log2() as u32,
        (None, None) => unreachable!("generated subgroups are enumerated"),
    };
    result.insert("order_log2".into(), json!(order_log2));
    result.insert("method".into(), json!(if enumerated.is_some() { "enumeration" } else { "gf2" }));
    let mut text = format!("subgroup of G({d}) of order 2^{order_log2}\n");
    if let Some(e) = &enumerated {
        let derived = e.derived_subgroup(cap)?;
        result.insert("generators".into(), json!(e.generators().iter().map(|g| g.to_hex()).collect::<Vec<_>>()));
        result.insert("abelian".into(), json!(e.is_abelian()?));
        result.insert("derived_order_log2".into(), json!(derived.order_log2()?));
        text += &format!("derived subgroup of order 2^{}\n", derived.order_log2()?);
    }

    if input_file.role == Some(Role::PatternGroup) {
        if d < 2 {
            return Err(Failure::Usage("pattern groups need d >= 2".into()));
        }
        let analysis = match (&enumerated, &predicate) {
            (Some(e), _) => {
                let check = is_essential(e)?;
                let r = essential_reduction(e)?;
                let dim = hausdorff_dimension(&r)?;
                PatternAnalysis {
                    essential: check.essential,
                    witness: check.witness.map(|(g, i)| json!({"g": g.to_hex(), "i": i})),
                    reduced_order_log2: r.group().order_log2()?,
                    dimension: dim.into(),
                    dimension_allowed: Some(dimension_in_allowed_set(&r)?),
                    finite: is_finite(&r)?,
                    level_transitive: Some(is_level_transitive(&r)?),
                }
            }
            (None, Some(p)) => {
                let lin = LinearPatternGroup::from_predicate(p)?;
                let r = lin.essential_reduction();
                PatternAnalysis {
                    essential: lin.is_essential(),
                    witness: None,
                    reduced_order_log2: r.order_log2() as u32,
                    dimension: r.dimension()?.into(),
                    dimension_allowed: None,
                    finite: r.is_finite()?,
                    level_transitive: Some(!r.is_finite()?),
                }
            }
            (None, None) => unreachable!(),
        };
        text += &format!(
            "pattern group: essential {}, reduced order 2^{}, Hausdorff dimension {}/{}, {}\n",
            analysis.essential,
            analysis.reduced_order_log2,
            analysis.dimension.num,
            analysis.dimension.den,
            if analysis.finite { "finite" } else { "infinite, level transitive" }
        );
        result.insert("pattern".into(), to_value(&analysis));
    }
    Ok(Outcome {
        command: "analyze".into(),
        result: Value::Object(result),
        text,
        passed: true,
    })
}

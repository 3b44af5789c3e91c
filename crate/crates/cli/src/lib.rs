//! The `magic` command line.

pub mod farey;

use std::fs;
use std::io::BufReader;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use magic_core::classify::{classify, Classification};
use magic_core::cusp::{self, CuspShape, Surd, Threshold};
use magic_core::exceptional::{cosmetic_pairs, cosmetic_scan, exceptional_slopes};
use magic_core::homology::{filling_h1, h1};
use magic_core::manifold::{canonicalize_traced, equivalent_with_depth, parse_manifold, EqualityVerdict, ManifoldDesc};
use magic_core::slope::{parse_slope, FillingSpec, Slope};
use magic_core::symmetry::orbit;

#[derive(Parser, Debug)]
#[command(name = "magic", about = "Dehn fillings of the three-chain-link complement")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Search depth for eq and orbit.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Digits of π used for the 2π bound (overrides MAGIC_PI_DIGITS).
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify N filled along one to three slopes.
    Classify {
        #[arg(allow_hyphen_values = true, required = true)]
        slopes: Vec<String>,
    },
    /// Print the canonical form of a manifold literal.
    Normalize { manifold: String },
    /// Decide whether two manifold literals are homeomorphic.
    Eq { left: String, right: String },
    /// First homology of a manifold literal, or of a filling given by slopes.
    Homology {
        #[arg(allow_hyphen_values = true, required = true)]
        args: Vec<String>,
    },
    /// Specs reachable by the symmetry moves.
    Orbit {
        #[arg(allow_hyphen_values = true, required = true)]
        slopes: Vec<String>,
    },
    /// Exceptional slopes of N filled along up to two slopes.
    Exceptional {
        #[arg(allow_hyphen_values = true)]
        slopes: Vec<String>,
    },
    /// Cosmetic pairs of N or N(s), or a scan over |p|,|q| ≤ B.
    Cosmetic {
        #[arg(allow_hyphen_values = true)]
        slopes: Vec<String>,
        #[arg(long)]
        scan_bound: Option<i64>,
    },
    /// Short slope sets.
    Enumerate {
        set: SetName,
        /// x,y for `short`; y may be written c*sqrt(m).
        #[arg(long, allow_hyphen_values = true)]
        shape: Option<String>,
        #[arg(long)]
        area: Option<String>,
    },
    /// Disc-model Farey picture of a slope set; entries are `slope` or `slope=label`.
    FareySvg {
        #[arg(allow_hyphen_values = true)]
        slopes: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Short slopes from a cusp data file (JSON lines).
    IngestCusps { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SetName {
    S1,
    S1Tilde,
    S3,
    Short,
}

#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Parse(String),
    Domain(&'static str, String),
}

fn parse_err(e: impl ToString) -> Failure {
    Failure::Parse(e.to_string())
}

fn slopes(args: &[String]) -> Result<Vec<Slope>, Failure> {
    args.iter().map(|a| parse_slope(a).map_err(parse_err)).collect()
}

fn spec(args: &[String]) -> Result<FillingSpec, Failure> {
    FillingSpec::new(slopes(args)?).map_err(parse_err)
}

fn manifold(text: &str) -> Result<ManifoldDesc, Failure> {
    parse_manifold(text).map_err(parse_err)
}

const SWITCHES: [&str; 3] = ["--json", "--help", "-h"];
const VALUED: [&str; 6] = ["--depth", "--precision", "--scan-bound", "--shape", "--area", "--out"];

/// Moves long options written after the positional slopes in front of them, since
/// slopes such as -3/2 make the positionals accept leading hyphens.
fn hoist_flags(args: Vec<std::ffi::OsString>) -> Vec<std::ffi::OsString> {
    if args.len() < 3 {
        return args;
    }
    let (head, rest) = args.split_at(2);
    let (mut flags, mut plain) = (vec![], vec![]);
    let mut it = rest.iter();
    while let Some(a) = it.next() {
        let text = a.to_string_lossy();
        let name = text.split('=').next().unwrap_or("");
        if SWITCHES.contains(&text.as_ref()) || (VALUED.contains(&name) && text.contains('=')) {
            flags.push(a.clone());
        } else if VALUED.contains(&name) {
            flags.push(a.clone());
            if let Some(v) = it.next() {
                flags.push(v.clone());
            }
        } else {
            plain.push(a.clone());
        }
    }
    head.iter().cloned().chain(flags).chain(plain).collect()
}

/// Runs the command line given as arguments (the first is the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString>,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(hoist_flags(args)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, ..Output::default() }
            } else {
                Output { code, stderr: text, ..Output::default() }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        Err(Failure::Parse(m)) => Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("{}\n", json!({"error": "parse", "message": m})),
        },
        Err(Failure::Domain(kind, m)) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("{}\n", json!({"error": kind, "message": m})),
        },
    }
}

fn emit(cli: &Cli, value: Value, text: String) -> String {
    if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
    } else {
        text
    }
}

fn classification_text(c: &Classification) -> String {
    match &c.manifold {
        Some(m) => format!("{}\nrule: {}\n", m.pretty(), c.rule.as_deref().unwrap_or("")),
        None => "hyperbolic\n".to_string(),
    }
}

fn bound(cli: &Cli, strict: bool) -> Result<Threshold, Failure> {
    let t = match cli.precision {
        Some(d) => Threshold::four_pi_sq_at(d, strict),
        None => Threshold::four_pi_sq(strict),
    };
    t.map_err(|e| Failure::Domain("precision", e.to_string()))
}

fn slope_list(s: impl IntoIterator<Item = Slope>) -> String {
    s.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Parses `c`, `sqrt(m)`, `c*sqrt(m)` or `sqrt(m)/d` with rational c.
pub fn parse_surd(text: &str) -> Option<Surd> {
    use num_rational::BigRational;
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let rational = |s: &str| -> Option<BigRational> {
        match s.split_once('/') {
            Some((a, b)) => {
                let (a, b) = (cusp::parse_decimal(a)?, cusp::parse_decimal(b)?);
                (b != BigRational::from_integer(0.into())).then(|| a / b)
            }
            None => cusp::parse_decimal(s),
        }
    };
    let Some(i) = t.find("sqrt(") else {
        return rational(&t).map(Surd::rational);
    };
    let close = t[i..].find(')')? + i;
    let m: u64 = t[i + 5..close].parse().ok()?;
    let before = t[..i].trim_end_matches('*');
    let after = &t[close + 1..];
    let mut coef = if before.is_empty() { BigRational::from_integer(1.into()) } else { rational(before)? };
    if let Some(d) = after.strip_prefix('/') {
        coef /= rational(d)?;
    } else if !after.is_empty() {
        return None;
    }
    Some(Surd::new(coef, m))
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let depth = cli.depth;
    match &cli.command {
        Command::Classify { slopes: args } => {
            let c = classify(&spec(args)?);
            let v = json!({
                "verdict": c.verdict,
                "manifold": c.manifold.as_ref().map(|m| m.to_string()),
                "pretty": c.manifold.as_ref().map(|m| m.pretty()),
                "description": c.manifold,
                "rule": c.rule,
                "permutation": c.permutation,
            });
            Ok(emit(cli, v, classification_text(&c)))
        }
        Command::Normalize { manifold: text } => {
            let m = manifold(text)?;
            let (c, trace) = canonicalize_traced(&m).map_err(|e| Failure::Domain("model", e.to_string()))?;
            let v = json!({"input": m.to_string(), "canonical": c.to_string(), "description": c, "trace": trace});
            Ok(emit(cli, v, format!("{c}\n")))
        }
        Command::Eq { left, right } => {
            let (a, b) = (manifold(left)?, manifold(right)?);
            let d = depth.unwrap_or(magic_core::manifold::DEFAULT_DEPTH);
            let v = equivalent_with_depth(&a, &b, d).map_err(|e| Failure::Domain("model", e.to_string()))?;
            let text = match &v {
                EqualityVerdict::Distinct { invariant, left, right } => format!("Distinct ({invariant}: {left} vs {right})\n"),
                other => format!("{}\n", other.label()),
            };
            Ok(emit(cli, serde_json::to_value(&v).expect("json"), text))
        }
        Command::Homology { args } => {
            let all_slopes = args.iter().all(|a| parse_slope(a).is_ok());
            let g = if all_slopes {
                filling_h1(&spec(args)?)
            } else if args.len() == 1 {
                h1(&manifold(&args[0])?).map_err(|e| Failure::Domain("homology", e.to_string()))?
            } else {
                return Err(Failure::Parse("expected slopes or one manifold literal".into()));
            };
            Ok(emit(cli, json!({"group": g.to_string(), "rank": g.rank, "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()}), format!("{g}\n")))
        }
        Command::Orbit { slopes: args } => {
            let o = orbit(&spec(args)?, depth.unwrap_or(4));
            let text: String = o
                .iter()
                .map(|e| {
                    let w: Vec<String> = e.word.iter().map(|m| m.to_string()).collect();
                    format!("{}  [{}]\n", e.spec, w.join(" "))
                })
                .collect();
            Ok(emit(cli, serde_json::to_value(&o).expect("json"), text))
        }
        Command::Exceptional { slopes: args } => {
            let r = exceptional_slopes(&slopes(args)?).map_err(|e| Failure::Domain("exceptional", e.to_string()))?;
            let text = format!("{{{}}}\ncount: {}\n", slope_list(r.slopes.iter().copied()), r.count);
            Ok(emit(cli, serde_json::to_value(&r).expect("json"), text))
        }
        Command::Cosmetic { slopes: args, scan_bound } => {
            let pairs = match scan_bound {
                Some(b) => cosmetic_scan(*b),
                None => cosmetic_pairs(&slopes(args)?),
            }
            .map_err(|e| Failure::Domain("exceptional", e.to_string()))?;
            let text: String = pairs
                .iter()
                .map(|p| {
                    let base = if p.base.is_empty() { "N".to_string() } else { format!("N({})", slope_list(p.base.iter().copied())) };
                    let tag = if p.tabled { "" } else { "  (not tabled)" };
                    format!("{base}: {} {} -> {}{tag}\n", p.alpha, p.beta, p.manifold.pretty())
                })
                .collect();
            let text = if text.is_empty() { "none\n".to_string() } else { text };
            Ok(emit(cli, serde_json::to_value(&pairs).expect("json"), text))
        }
        Command::Enumerate { set, shape, area } => {
            let err = |e: cusp::CuspError| Failure::Domain("cusp", e.to_string());
            let got = match set {
                SetName::S1Tilde => cusp::short_slopes(&CuspShape::magic(), &bound(cli, true)?).map_err(err)?,
                SetName::S1 => {
                    let t = cusp::short_slopes(&CuspShape::magic(), &bound(cli, true)?).map_err(err)?;
                    let ok = cusp::s1().map_err(err)?;
                    t.into_iter().filter(|s| ok.contains(s)).collect()
                }
                SetName::S3 => cusp::s3_with(&bound(cli, false)?).map_err(err)?,
                SetName::Short => {
                    let shape = shape.as_deref().ok_or_else(|| Failure::Parse("--shape x,y is required".into()))?;
                    let (x, y) = shape.split_once(',').ok_or_else(|| Failure::Parse("--shape wants x,y".into()))?;
                    let x = parse_surd(x).filter(|s| s.radicand == 1).ok_or_else(|| Failure::Parse(format!("bad x `{x}`")))?;
                    let y = parse_surd(y).ok_or_else(|| Failure::Parse(format!("bad y `{y}`")))?;
                    let a = match area {
                        Some(a) => parse_surd(a).ok_or_else(|| Failure::Parse(format!("bad area `{a}`")))?,
                        None => y.clone(),
                    };
                    let shape = CuspShape::new(x.coef, y, a).map_err(err)?;
                    cusp::short_slopes(&shape, &bound(cli, true)?).map_err(err)?
                }
            };
            let v = json!({"count": got.len(), "slopes": got});
            Ok(emit(cli, v, format!("{{{}}}\ncount: {}\n", slope_list(got.iter().copied()), got.len())))
        }
        Command::FareySvg { slopes: args, out } => {
            let mut pts = vec![];
            for a in args {
                let (s, label) = a.split_once('=').unwrap_or((a, ""));
                pts.push((parse_slope(s).map_err(parse_err)?, label.to_string()));
            }
            let doc = farey::farey_svg(&pts);
            match out {
                Some(p) => {
                    fs::write(p, &doc).map_err(|e| Failure::Domain("io", format!("{}: {e}", p.display())))?;
                    let edges = farey::farey_edges(&pts.iter().map(|(s, _)| *s).collect::<Vec<_>>()).len();
                    Ok(emit(cli, json!({"path": p, "points": pts.len(), "edges": edges}), format!("wrote {}\n", p.display())))
                }
                None => Ok(doc),
            }
        }
        Command::IngestCusps { file } => {
            let f = fs::File::open(file).map_err(|e| Failure::Domain("io", format!("{}: {e}", file.display())))?;
            let recs = cusp::read_cusp_data(BufReader::new(f)).map_err(|e| match e {
                cusp::CuspError::Record { .. } => parse_err(e),
                other => Failure::Domain("cusp", other.to_string()),
            })?;
            let err = |e: cusp::CuspError| Failure::Domain("cusp", e.to_string());
            let rep = cusp::short_slopes_from_data(&recs, &bound(cli, true)?, &cusp::non_hyperbolic_exclusion).map_err(err)?;
            let count = cusp::CandidateCount::new(cusp::s1().map_err(err)?.len(), rep.union.len(), cusp::s3_set().map_err(err)?.len());
            let mut text = String::new();
            for r in &rep.records {
                text.push_str(&format!(
                    "filled ({}) cusp {}: {{{}}}\n",
                    slope_list(r.filled.iter().copied()),
                    r.cusp,
                    slope_list(r.slopes.iter().copied())
                ));
            }
            text.push_str(&format!("union: {} slopes\n|S1|·|S2|·|S3| = {count}\n", rep.union.len()));
            Ok(emit(cli, json!({"report": rep, "count": count}), text))
        }
    }
}

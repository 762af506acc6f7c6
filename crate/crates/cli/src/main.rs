use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use minflow::codes::{classify_aut_group, compose, enumerate_endomorphisms, invert, SlidingBlockCode, CHECK_LEN};
use minflow::factors::{
    address, desubstitute, fiber_census, pushforward_frequencies, sample_addresses, word_frequencies, OdometerAddress,
};
use minflow::joins::{
    alternating_point, coalescence_check, dichotomy, equicontinuity_check, finite_join, joint_language,
    odometer_sr_witness, sr_report, DichotomyParams, SrParams,
};
use minflow::pairs::{
    asymptotic_collapse, classify_pair, distal_certificate, odometer_certificate, Direction, DEFAULT_HORIZON,
    DEFAULT_RESOLUTION,
};
use minflow::points::{parse_point, Point};
use minflow::report::to_json_string;
use minflow::words::{SubshiftSystem, Word, BUILTIN_SYSTEMS};
use minflow::Error;

/// Symbolic dynamics laboratory: minimal subshifts, their codes, pairs, odometer factors and joins.
///
/// Point specs: fix0, fix(1), flip(P), rev(P) (left half of a splice only), shift(P,k),
/// splice(L,R) with one-sided L and R, addr(0101...,s) for an LSB-first address on sheet s.
#[derive(Parser, Debug)]
#[command(name = "minflow", version)]
struct Cli {
    /// key=value file supplying defaults for horizon, resolution, steps, radius, check_len,
    /// level, samples, seed, format and out
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory receiving `<subcommand>.<format>`
    #[arg(long, global = true, env = "MINFLOW_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Fail with exit status 1 unless the top-level report field KEY renders as VALUE
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    expect: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, false)
    }
}

#[derive(Args, Debug, Clone)]
struct SystemArg {
    #[arg(value_parser = BUILTIN_SYSTEMS)]
    system: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Admissible words of one length (one per line in tsv, the default here)
    Lang {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        length: usize,
    },
    /// Window [lo, hi] of a point
    Point {
        #[command(flatten)]
        sys: SystemArg,
        spec: String,
        #[arg(long, default_value_t = -16, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 16, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Endomorphisms of a given radius, or operations on code files
    Aut {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        check_len: Option<usize>,
        /// Report the group shape of the enumerated codes instead of the list
        #[arg(long)]
        group: bool,
        /// Code file (JSON) to operate on instead of enumerating
        #[arg(long)]
        code: Option<PathBuf>,
        /// Apply the code file to this word
        #[arg(long, requires = "code")]
        apply: Option<String>,
        /// Invert the code file, up to this inverse radius
        #[arg(long, requires = "code")]
        invert: Option<usize>,
        /// Compose: code file after this second code file
        #[arg(long, requires = "code")]
        after: Option<PathBuf>,
    },
    /// Classify a pair of points, or certify one point distal
    Pairs {
        #[command(flatten)]
        sys: SystemArg,
        p: String,
        q: Option<String>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        resolution: Option<usize>,
        /// Distal certificate for P at this census level (Q must be absent)
        #[arg(long, conflicts_with = "q")]
        certificate: Option<usize>,
    },
    /// Asymptotic collapse of the seam fiber
    Collapse {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, default_value = "forward")]
        direction: String,
        #[arg(long, default_value_t = 0)]
        seed_symbol: u8,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Odometer address of a point, or the block parse of a word
    Factor {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(required_unless_present = "desub")]
        spec: Option<String>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, conflicts_with = "spec")]
        desub: Option<String>,
    },
    /// Fiber census over an address, a point's address, or sampled addresses
    Census {
        #[command(flatten)]
        sys: SystemArg,
        /// LSB-first digits
        #[arg(long, conflicts_with_all = ["point", "sample"])]
        address: Option<String>,
        #[arg(long, conflicts_with = "sample")]
        point: Option<String>,
        /// Number of uniformly sampled addresses
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Word frequencies along the generated prefix, or their pushforward by a code
    Freq {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        code: Option<PathBuf>,
    },
    /// Joint windows of finitely many points
    Join {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(required = true, num_args = 1..)]
        points: Vec<String>,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
        /// With two points: check constancy of the address difference up to this level
        #[arg(long)]
        equicontinuity: Option<usize>,
    },
    /// Dichotomy experiment for (x0, x); x0 defaults to the alternating-address point
    Dichotomy {
        #[command(flatten)]
        sys: SystemArg,
        x: String,
        #[arg(long)]
        x0: Option<String>,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        check_len: Option<usize>,
    },
    /// Semi-regularity report
    Sr {
        #[command(flatten)]
        sys: SystemArg,
        /// Candidate points; default: shifts and flipped shifts of the base point
        candidates: Vec<String>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Flags endomorphisms without a bounded-radius inverse
    Coalesce {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        check_len: Option<usize>,
    },
    /// Translations of the cyclic approximation Z/2^k, or a distal certificate for an address
    Odometer {
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// LSB-first digits of an odometer point to certify distal
        #[arg(long)]
        address: Option<String>,
        #[arg(long)]
        horizon: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lang { .. } => "lang",
            Command::Point { .. } => "point",
            Command::Aut { .. } => "aut",
            Command::Pairs { .. } => "pairs",
            Command::Collapse { .. } => "collapse",
            Command::Factor { .. } => "factor",
            Command::Census { .. } => "census",
            Command::Freq { .. } => "freq",
            Command::Join { .. } => "join",
            Command::Dichotomy { .. } => "dichotomy",
            Command::Sr { .. } => "sr",
            Command::Coalesce { .. } => "coalesce",
            Command::Odometer { .. } => "odometer",
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

const CONFIG_KEYS: [&str; 10] =
    ["horizon", "resolution", "steps", "radius", "check_len", "level", "samples", "seed", "format", "out"];

struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Config, Failure> {
        let mut map = BTreeMap::new();
        let Some(path) = path else { return Ok(Config(map)) };
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
            let k = k.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&k.as_str()) {
                return Err(Failure::Usage(format!("{}:{}: unknown key {k:?}", path.display(), i + 1)));
            }
            map.insert(k, v.trim().to_string());
        }
        Ok(Config(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        self.0
            .get(key)
            .map(|v| v.parse().map_err(|_| Failure::Usage(format!("config {key}: cannot parse {v:?}"))))
            .transpose()
    }

    /// Flag, then config, then default.
    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Failure> {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }
}

struct Output {
    body: Value,
    /// Plain-text rendering used for tsv, when the report has a natural one.
    tsv: Option<String>,
}

impl Output {
    fn json(body: Value) -> Output {
        Output { body, tsv: None }
    }

    fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => Ok(to_json_string(&self.body)?),
            Format::Tsv => Ok(match &self.tsv {
                Some(t) => t.clone(),
                None => flatten_tsv(&self.body),
            }),
        }
    }
}

fn flatten_tsv(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}\t{}\n", scalar(v))).collect(),
        Value::Array(items) => items.iter().map(|v| format!("{}\n", scalar(v))).collect(),
        other => format!("{}\n", scalar(other)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Runtime(e.to_string()))
}

fn load_code(sys: &Arc<SubshiftSystem>, path: &Path) -> Result<SlidingBlockCode, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(SlidingBlockCode::from_json(sys, &v)?)
}

fn word(s: &str) -> Result<Word, Failure> {
    s.parse::<Word>().map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli, cfg: &Config) -> Result<Output, Failure> {
    let system = |a: &SystemArg| SubshiftSystem::builtin(&a.system).map_err(Failure::from);
    let point = |sys: &Arc<SubshiftSystem>, s: &str| parse_point(sys, s).map_err(Failure::from);
    match &cli.command {
        Command::Lang { sys, length } => {
            let sys = system(sys)?;
            let lang = sys.language(*length)?;
            let words: Vec<String> = lang.words().iter().map(ToString::to_string).collect();
            let tsv = words.iter().map(|w| format!("{w}\n")).collect();
            Ok(Output {
                body: json!({ "system": sys.name(), "length": length, "complexity": words.len(), "words": words }),
                tsv: Some(tsv),
            })
        }
        Command::Point { sys, spec, lo, hi } => {
            let sys = system(sys)?;
            let p = point(&sys, spec)?;
            let w = p.window(*lo, *hi)?.to_string();
            let range = p.determined_range().map(|(a, b)| vec![a.to_string(), b.to_string()]);
            Ok(Output {
                tsv: Some(format!("{w}\n")),
                body: json!({ "point": p.spec(), "lo": lo, "hi": hi, "window": w, "determined_range": range }),
            })
        }
        Command::Aut { sys, radius, check_len, group, code, apply, invert: inv, after } => {
            let sys = system(sys)?;
            let check_len = cfg.pick(*check_len, "check_len", CHECK_LEN)?;
            if let Some(path) = code {
                let c = load_code(&sys, path)?;
                if let Some(w) = apply {
                    let image = c.apply(&word(w)?)?.to_string();
                    return Ok(Output { tsv: Some(format!("{image}\n")), body: json!({ "input": w, "image": image }) });
                }
                if let Some(max) = inv {
                    let inverse = invert(&c, *max)?;
                    return Ok(Output::json(json!({
                        "max_radius": max,
                        "invertible": inverse.is_some(),
                        "inverse": inverse.as_ref().map(SlidingBlockCode::to_json),
                    })));
                }
                if let Some(other) = after {
                    let inner = load_code(&sys, other)?;
                    return Ok(Output::json(compose(&c, &inner)?.to_json()));
                }
                return Ok(Output::json(json!({
                    "code": c.to_json(),
                    "endomorphism": minflow::codes::verify_endomorphism(&c, check_len)?,
                    "normal_form": c.normal_form().map(|f| f.to_string()),
                })));
            }
            let radius = cfg.pick(*radius, "radius", 1)?;
            let codes = enumerate_endomorphisms(&sys, radius, check_len)?;
            if *group {
                return Ok(Output::json(to_value(&classify_aut_group(&codes))?));
            }
            let tsv = codes
                .iter()
                .map(|c| {
                    let form = c.normal_form().map_or_else(|| "?".to_string(), |f| f.to_string());
                    let table: String = c.outputs().iter().map(|s| s.to_string()).collect();
                    format!("{form}\t{table}\n")
                })
                .collect();
            Ok(Output { body: Value::Array(codes.iter().map(SlidingBlockCode::to_json).collect()), tsv: Some(tsv) })
        }
        Command::Pairs { sys, p, q, horizon, resolution, certificate } => {
            let sys = system(sys)?;
            let horizon = cfg.pick(*horizon, "horizon", DEFAULT_HORIZON)?;
            let resolution = cfg.pick(*resolution, "resolution", DEFAULT_RESOLUTION)?;
            let p = point(&sys, p)?;
            match q {
                Some(q) => {
                    let q = point(&sys, q)?;
                    let mut v = to_value(&classify_pair(&p, &q, horizon, resolution)?)?;
                    v["p"] = json!(p.spec());
                    v["q"] = json!(q.spec());
                    Ok(Output::json(v))
                }
                None => {
                    let level = match certificate {
                        Some(l) => *l,
                        None => cfg.pick(None, "level", 12)?,
                    };
                    Ok(Output::json(to_value(&distal_certificate(&p, horizon, resolution, level)?)?))
                }
            }
        }
        Command::Collapse { sys, direction, seed_symbol, horizon, resolution } => {
            let sys = system(sys)?;
            let direction: Direction = direction.parse()?;
            let horizon = cfg.pick(*horizon, "horizon", DEFAULT_HORIZON)?;
            let resolution = cfg.pick(*resolution, "resolution", DEFAULT_RESOLUTION)?;
            let fiber = Point::seam_fiber(&sys, *seed_symbol)?;
            let mut v = to_value(&asymptotic_collapse(&fiber, direction, horizon, resolution)?)?;
            v["H"] = json!(horizon);
            v["L"] = json!(resolution);
            Ok(Output::json(v))
        }
        Command::Factor { sys, spec, level, desub } => {
            let sys = system(sys)?;
            if let Some(w) = desub {
                return Ok(Output::json(to_value(&desubstitute(&sys, &word(w)?)?)?));
            }
            let level = cfg.pick(*level, "level", 12)?;
            let p = point(&sys, spec.as_deref().unwrap_or_default())?;
            let a = address(&p, level)?;
            Ok(Output {
                tsv: Some(format!("{a}\n")),
                body: json!({ "point": p.spec(), "level": level, "address": a.to_string(), "value": a.value().to_string() }),
            })
        }
        Command::Census { sys, address: digits, point: spec, sample, level, resolution, seed } => {
            let sys = system(sys)?;
            let resolution = cfg.pick(*resolution, "resolution", 16)?;
            let level = cfg.pick(*level, "level", 12)?;
            let base = sys
                .constant_length()
                .ok_or_else(|| Failure::Runtime(format!("{} has no odometer factor", sys.name())))?;
            let base = u8::try_from(base).map_err(|_| Failure::Runtime("substitution length too large".into()))?;
            if let Some(count) = sample {
                let seed = cfg.pick(*seed, "seed", 0)?;
                let censuses = sample_addresses(base, level, *count, seed)?
                    .iter()
                    .map(|a| fiber_census(&sys, a, resolution).map_err(Failure::from).and_then(|c| to_value(&c)))
                    .collect::<Result<Vec<_>, _>>()?;
                return Ok(Output::json(json!({
                    "generator": minflow::factors::SAMPLER,
                    "seed": seed,
                    "level": level,
                    "censuses": censuses,
                })));
            }
            let a = match (digits, spec) {
                (Some(d), _) => OdometerAddress::parse(base, d)?,
                (None, Some(s)) => address(&point(&sys, s)?, level)?,
                (None, None) => return Err(Failure::Usage("census needs --address, --point or --sample".into())),
            };
            Ok(Output::json(to_value(&fiber_census(&sys, &a, resolution)?)?))
        }
        Command::Freq { sys, length, steps, code } => {
            let sys = system(sys)?;
            let steps = cfg.pick(*steps, "steps", 1 << 16)?;
            let table = match code {
                Some(path) => pushforward_frequencies(&load_code(&sys, path)?, *length, steps)?,
                None => word_frequencies(&sys, *length, steps)?,
            };
            Ok(Output { body: table.to_json(), tsv: Some(table.to_tsv()) })
        }
        Command::Join { sys, points, resolution, steps, equicontinuity } => {
            let sys = system(sys)?;
            let resolution = cfg.pick(*resolution, "resolution", 8)?;
            let steps = cfg.pick(*steps, "steps", 1 << 14)?;
            let pts = points.iter().map(|s| point(&sys, s)).collect::<Result<Vec<_>, _>>()?;
            if let Some(levels) = equicontinuity {
                let [p, q] = pts.as_slice() else {
                    return Err(Failure::Usage("--equicontinuity needs exactly two points".into()));
                };
                let w = joint_language(p, q, resolution, steps)?;
                let samples = cfg.pick(None, "samples", 64)?;
                return Ok(Output::json(to_value(&equicontinuity_check(p, q, &w, *levels, samples)?)?));
            }
            Ok(Output::json(to_value(&finite_join(&pts, resolution, steps)?)?))
        }
        Command::Dichotomy { sys, x, x0, resolution, steps, radius, check_len } => {
            let sys = system(sys)?;
            let d = DichotomyParams::default();
            let params = DichotomyParams {
                resolution: cfg.pick(*resolution, "resolution", d.resolution)?,
                steps: cfg.pick(*steps, "steps", d.steps)?,
                radius_budget: cfg.pick(*radius, "radius", d.radius_budget)?,
                check_len: cfg.pick(*check_len, "check_len", d.check_len)?,
            };
            let x0 = match x0 {
                Some(s) => point(&sys, s)?,
                None => alternating_point(&sys)?,
            };
            let x = point(&sys, x)?;
            let mut v = dichotomy(&x0, &x, &params)?.to_json();
            v["x0"] = json!(x0.spec());
            v["x"] = json!(x.spec());
            Ok(Output::json(v))
        }
        Command::Sr { sys, candidates, steps, horizon, level, radius } => {
            let sys = system(sys)?;
            let d = SrParams::default();
            let params = SrParams {
                dichotomy: DichotomyParams { steps: cfg.pick(*steps, "steps", d.dichotomy.steps)?, ..d.dichotomy },
                horizon: cfg.pick(*horizon, "horizon", d.horizon)?,
                certificate_level: cfg.pick(*level, "level", d.certificate_level)?,
                aut_radius: cfg.pick(*radius, "radius", d.aut_radius)?,
                ..d
            };
            let candidates = if candidates.is_empty() {
                None
            } else {
                Some(candidates.iter().map(|s| point(&sys, s)).collect::<Result<Vec<_>, _>>()?)
            };
            Ok(Output::json(to_value(&sr_report(&sys, candidates, &params)?)?))
        }
        Command::Coalesce { sys, radius, check_len } => {
            let sys = system(sys)?;
            let radius = cfg.pick(*radius, "radius", 2)?;
            let check_len = cfg.pick(*check_len, "check_len", CHECK_LEN)?;
            Ok(Output::json(to_value(&coalescence_check(&sys, radius, check_len)?)?))
        }
        Command::Odometer { level, samples, seed, address: digits, horizon } => {
            if let Some(d) = digits {
                let z = OdometerAddress::parse(2, d)?;
                let horizon = cfg.pick(*horizon, "horizon", DEFAULT_HORIZON)?;
                return Ok(Output::json(to_value(&odometer_certificate(&z, horizon))?));
            }
            let level = cfg.pick(*level, "level", 10)?;
            let samples = cfg.pick(*samples, "samples", 256)?;
            let seed = cfg.pick(*seed, "seed", 0)?;
            Ok(Output::json(to_value(&odometer_sr_witness(level, samples, seed)?)?))
        }
    }
}

fn check_expectations(expect: &[String], body: &Value) -> Result<(), Failure> {
    for e in expect {
        let (key, want) =
            e.split_once('=').ok_or_else(|| Failure::Usage(format!("--expect {e:?}: expected KEY=VALUE")))?;
        let got = match body {
            Value::Array(items) if key == "len" => items.len().to_string(),
            _ => body.get(key).map(scalar).ok_or_else(|| Failure::Check(format!("report has no field {key:?}")))?,
        };
        if got != want {
            return Err(Failure::Check(format!("{key}: expected {want}, got {got}")));
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let cfg = Config::load(cli.config.as_deref())?;
    let default_format = if matches!(cli.command, Command::Lang { .. }) { Format::Tsv } else { Format::Json };
    let format = cfg.pick(cli.format, "format", default_format)?;
    let out = match &cli.out {
        Some(dir) => Some(dir.clone()),
        None => cfg.get::<PathBuf>("out")?,
    };
    let output = run(cli, &cfg)?;
    let text = output.render(format)?;
    print!("{text}");
    if let Some(dir) = out {
        fs::create_dir_all(&dir).map_err(|e| Failure::Runtime(format!("{}: {e}", dir.display())))?;
        let ext = match format {
            Format::Json => "json",
            Format::Tsv => "tsv",
        };
        let path = dir.join(format!("{}.{ext}", cli.command.name()));
        fs::write(&path, &text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    }
    check_expectations(&cli.expect, &output.body)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

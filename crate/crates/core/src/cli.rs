//! Command-line front end: argument parsing, configuration, result cache
//! and report rendering.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebraic_group::{
    builtin_presentation, is_solvable_lie, reduce_mod_p, restriction_of_scalars, tangent_space_at_identity,
    GroupPresentation,
};
use crate::congruence::{
    builtin_group, canonical_group_bytes, image_at_modulus, one_for_all_scan, principal_congruence_index,
    strong_approx_scan, SIntegerGroup,
};
use crate::density::{density_verdict, lubotzky_scan};
use crate::exact::{DensePoly, Int, Integers, PolyRing, Rat};
use crate::number_field::{FieldCatalog, NumberField};
use crate::padic::{hensel_lift, PadicInt, PadicNumber};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "ARITHGROUP_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// Settings shared by every command. Later sources override earlier ones:
/// defaults, config file, environment, command-line flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub prime_bound: u64,
    pub exponent: u32,
    pub cap: usize,
    pub max_word_len: usize,
    pub field_catalog: Option<PathBuf>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime_bound: 31,
            exponent: 1,
            cap: crate::congruence::DEFAULT_CAP,
            max_word_len: crate::density::DEFAULT_MAX_WORD_LEN,
            field_catalog: None,
            format: Format::Json,
            cache_dir: None,
        }
    }
}

impl RunConfig {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |what: &str| format!("config line {}: bad {what} {v:?}", i + 1);
            match k {
                "prime_bound" => self.prime_bound = v.parse().map_err(|_| bad(k))?,
                "exponent" => self.exponent = v.parse().map_err(|_| bad(k))?,
                "cap" => self.cap = v.parse().map_err(|_| bad(k))?,
                "max_word_len" => self.max_word_len = v.parse().map_err(|_| bad(k))?,
                "field_catalog" => self.field_catalog = Some(PathBuf::from(v)),
                "format" => self.format = v.parse().map_err(|_| bad(k))?,
                "cache_dir" => self.cache_dir = Some(PathBuf::from(v)),
                other => return Err(format!("config line {}: unknown key {other:?}", i + 1)),
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.prime_bound < 2 {
            return Err(format!("prime bound must be >= 2, got {}", self.prime_bound));
        }
        if self.cap < 1 {
            return Err("cap must be >= 1".into());
        }
        if self.exponent < 1 {
            return Err("exponent must be >= 1".into());
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "arithgroup", version, about = "Exact computations with number fields, p-adics and arithmetic groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// key=value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for cached scan results.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Disable the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Field catalog file replacing the built-in fields.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number fields.
    #[command(subcommand)]
    Nf(NfCmd),
    /// p-adic integers.
    #[command(subcommand)]
    Padic(PadicCmd),
    /// Algebraic groups given by equations.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Congruence images.
    #[command(subcommand)]
    Cong(CongCmd),
    /// Zariski-density evidence.
    #[command(subcommand)]
    Density(DensityCmd),
    /// Density verdict plus congruence scan.
    #[command(subcommand)]
    Lubotzky(LubotzkyCmd),
}

#[derive(Subcommand, Debug)]
pub enum NfCmd {
    /// Factor (p) into prime ideals.
    Factor {
        #[arg(long)]
        field: String,
        #[arg(long)]
        prime: u64,
    },
    /// Proportion of split primes up to a bound.
    Chebotarev {
        #[arg(long)]
        field: String,
        #[arg(long)]
        bound: u64,
    },
    /// Degree, signature and discriminant.
    Signature {
        #[arg(long)]
        field: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PadicCmd {
    /// Hensel-lift a simple root.
    Lift {
        /// Integer coefficients, constant term first, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        root: i64,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        precision: usize,
    },
    /// p-adic expansion of a rational.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        precision: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Lie algebra at the identity.
    Lie {
        #[arg(long)]
        group: String,
    },
    /// Restriction of scalars to Q.
    Ros {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
    },
    /// Reduction mod p.
    Reduce {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CongCmd {
    /// Surjectivity onto SL_n(Z/p^k) for all primes up to a bound.
    Scan {
        #[arg(long)]
        group: String,
        #[arg(long)]
        pmax: Option<u64>,
        #[arg(long)]
        exp: Option<u32>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Image at one modulus.
    Image {
        #[arg(long)]
        group: String,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Index of the principal congruence subgroup.
    Index {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Primes where each sample set generates SL_n(F_p).
    Oneforall {
        /// Comma-separated group names or files.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        #[arg(long)]
        pmax: Option<u64>,
        /// Comma-separated primes excluded from the witness condition.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        bad: Vec<u64>,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DensityCmd {
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        maxlen: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LubotzkyCmd {
    Scan {
        #[arg(long)]
        group: String,
        #[arg(long)]
        pmax: Option<u64>,
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
    },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// A domain failure: the module's error name and message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainError {
    pub kind: String,
    pub message: String,
}

impl<E: std::error::Error> From<E> for DomainError {
    fn from(e: E) -> Self {
        let message = e.to_string();
        let kind = message.split(':').next().unwrap_or("Error").trim().to_string();
        DomainError { kind, message }
    }
}

enum Failure {
    Usage(String),
    Domain(DomainError),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

/// Parses the command line, runs the command and renders its report.
/// Exit code 0 on success, 1 on a domain error, 2 on a usage error.
pub fn dispatch<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: Vec::new(),
                    stderr: text,
                }
            };
        }
    };
    let config = match build_config(&cli.global) {
        Ok(c) => c,
        Err(msg) => return usage(msg),
    };
    let result = run(&cli.command, &cli.global, &config);
    match result {
        Ok(bytes) => {
            if let Some(path) = &cli.global.out {
                if let Err(e) = write_atomic(path, &bytes) {
                    return usage(format!("cannot write {}: {e}", path.display()));
                }
                Outcome {
                    code: 0,
                    stdout: Vec::new(),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: bytes,
                    stderr: String::new(),
                }
            }
        }
        Err(Failure::Usage(msg)) => usage(msg),
        Err(Failure::Domain(e)) => {
            let body = json!({"error": {"kind": e.kind, "message": e.message}});
            Outcome {
                code: 1,
                stdout: render_value(&body, config.format),
                stderr: format!("error: {}\n", e.message),
            }
        }
    }
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: Vec::new(),
        stderr: format!("usage error: {msg}\n"),
    }
}

fn build_config(g: &GlobalOpts) -> Result<RunConfig, String> {
    let mut c = RunConfig::default();
    if let Some(path) = &g.config {
        let text = fs::read_to_string(path).map_err(|e| format!("--config {}: {e}", path.display()))?;
        c.apply_text(&text)?;
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        c.cache_dir = Some(PathBuf::from(dir));
    }
    if let Some(d) = &g.cache_dir {
        c.cache_dir = Some(d.clone());
    }
    if g.no_cache {
        c.cache_dir = None;
    }
    if let Some(f) = g.format {
        c.format = f;
    }
    if let Some(p) = &g.catalog {
        c.field_catalog = Some(p.clone());
    }
    c.validate()?;
    Ok(c)
}

fn run(cmd: &Command, g: &GlobalOpts, cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    let _ = g;
    match cmd {
        Command::Nf(c) => run_nf(c, cfg),
        Command::Padic(c) => run_padic(c, cfg),
        Command::Group(c) => run_group(c, cfg),
        Command::Cong(c) => run_cong(c, cfg),
        Command::Density(DensityCmd::Check { group, maxlen }) => {
            let grp = load_group(group)?;
            let v = density_verdict(&grp, maxlen.unwrap_or(cfg.max_word_len))?;
            Ok(render_report(&v, cfg.format))
        }
        Command::Lubotzky(LubotzkyCmd::Scan {
            group,
            pmax,
            maxlen,
            cap,
        }) => {
            let grp = load_group(group)?;
            let bound = pmax.unwrap_or(cfg.prime_bound);
            let maxlen = maxlen.unwrap_or(cfg.max_word_len);
            let cap = cap.unwrap_or(cfg.cap);
            check_bound(bound)?;
            let key = cache_key("lubotzky scan", &canonical_group_bytes(&grp), &[("pmax", bound.to_string()), ("maxlen", maxlen.to_string()), ("cap", cap.to_string())], cfg.format);
            cached(cfg, &key, || {
                let r = lubotzky_scan(&grp, bound, maxlen, cap)?;
                Ok(render_report(&r, cfg.format))
            })
        }
    }
}

fn check_bound(b: u64) -> Result<(), Failure> {
    if b < 2 {
        return Err(Failure::Usage(format!("prime bound must be >= 2, got {b}")));
    }
    Ok(())
}

fn catalog(cfg: &RunConfig) -> Result<FieldCatalog, Failure> {
    match &cfg.field_catalog {
        None => Ok(FieldCatalog::builtin()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("catalog {}: {e}", p.display())))?;
            Ok(text.parse::<FieldCatalog>()?)
        }
    }
}

fn load_field(name: &str, cfg: &RunConfig) -> Result<NumberField, Failure> {
    Ok(catalog(cfg)?.get(name)?.build()?)
}

/// Built-in name, or a path to a generator file.
pub fn load_group(spec: &str) -> Result<SIntegerGroup, DomainError> {
    if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec).map_err(DomainError::from)?;
        return text.parse::<SIntegerGroup>().map_err(DomainError::from);
    }
    builtin_group(spec).map_err(DomainError::from)
}

/// Built-in name, or a path to a presentation file.
pub fn load_presentation(spec: &str) -> Result<GroupPresentation, DomainError> {
    if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec).map_err(DomainError::from)?;
        return text.parse::<GroupPresentation>().map_err(DomainError::from);
    }
    builtin_presentation(spec).map_err(DomainError::from)
}

impl From<DomainError> for Failure {
    fn from(e: DomainError) -> Self {
        Failure::Domain(e)
    }
}

fn run_nf(c: &NfCmd, cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    match c {
        NfCmd::Factor { field, prime } => {
            let k = load_field(field, cfg)?;
            let fac = k.factor_prime(*prime)?;
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "e": f.e,
                        "f": f.f,
                        "factor": f.factor_poly.render_var("x"),
                        "verified": f.verified,
                    })
                })
                .collect();
            let v = json!({
                "field": k.name(),
                "p": prime,
                "factors": factors,
                "degree_sum": fac.degree_sum(),
                "verified": fac.verified(),
            });
            Ok(render_value(&v, cfg.format))
        }
        NfCmd::Chebotarev { field, bound } => {
            check_bound(*bound)?;
            let k = load_field(field, cfg)?;
            let key = cache_key("nf chebotarev", k.min_poly().render_var("x").as_bytes(), &[("field", k.name().to_string()), ("bound", bound.to_string())], cfg.format);
            cached(cfg, &key, || Ok(render_report(&k.chebotarev_scan(*bound), cfg.format)))
        }
        NfCmd::Signature { field } => {
            let k = load_field(field, cfg)?;
            let (r1, r2) = k.signature();
            let v = json!({
                "field": k.name(),
                "min_poly": k.min_poly().render_var("x"),
                "degree": k.degree(),
                "r1": r1,
                "r2": r2,
                "discriminant": k.discriminant().to_string(),
            });
            Ok(render_value(&v, cfg.format))
        }
    }
}

fn run_padic(c: &PadicCmd, cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    match c {
        PadicCmd::Lift {
            poly,
            root,
            prime,
            precision,
        } => {
            let coeffs: Vec<Int> = poly
                .split(',')
                .map(|t| t.trim().parse::<Int>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("--poly {poly:?}: expected comma-separated integers")))?;
            let f: DensePoly<Int> = PolyRing::new(Integers).from_coeffs(coeffs);
            let r = hensel_lift(&f, &Int::from(*root), *prime, *precision)?;
            let digits = PadicInt::from_int(&r, *prime, *precision)?;
            let v = json!({
                "poly": f.render_var("x"),
                "p": prime,
                "precision": precision,
                "root": r.to_string(),
                "digits": digits.digits(),
                "expansion": digits.to_string(),
            });
            Ok(render_value(&v, cfg.format))
        }
        PadicCmd::Eval {
            value,
            prime,
            precision,
        } => {
            let x: Rat = value
                .parse()
                .map_err(|_| Failure::Usage(format!("--value {value:?}: expected a rational a/b")))?;
            let pn = PadicNumber::from_rat(&x, *prime, *precision)?;
            let (valuation, digits) = match &pn {
                PadicNumber::Zero { .. } => (Value::Null, Vec::new()),
                PadicNumber::Value { valuation, unit } => (json!(valuation), unit.digits().to_vec()),
            };
            let v = json!({
                "value": x.to_string(),
                "p": prime,
                "precision": precision,
                "valuation": valuation,
                "unit_digits": digits,
                "expansion": pn.to_string(),
            });
            Ok(render_value(&v, cfg.format))
        }
    }
}

/// Lie algebra report used by `group lie`.
pub fn lie_report(g: &GroupPresentation) -> Result<Value, DomainError> {
    let l = tangent_space_at_identity(g)?;
    let s = is_solvable_lie(&l);
    let mat = |m: &crate::exact::Matrix<Rat>| -> Value {
        Value::Array(
            m.rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect()))
                .collect(),
        )
    };
    let constants: Vec<Value> = l
        .structure_constants()
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|cs| Value::Array(cs.iter().map(|c| Value::String(c.to_string())).collect()))
                    .collect(),
            )
        })
        .collect();
    Ok(json!({
        "group": g.label(),
        "n": g.size(),
        "equations": g.render_equations(),
        "dimension": l.dimension(),
        "basis": l.basis().iter().map(mat).collect::<Vec<_>>(),
        "structure_constants": constants,
        "jacobi": l.jacobi_holds(),
        "solvable": s.solvable,
        "derived_series_dims": s.series_dims,
    }))
}

fn run_group(c: &GroupCmd, cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    match c {
        GroupCmd::Lie { group } => {
            let g = load_presentation(group)?;
            Ok(render_value(&lie_report(&g)?, cfg.format))
        }
        GroupCmd::Ros { group, field } => {
            let g = load_presentation(group)?;
            let k = load_field(field, cfg)?;
            let r = restriction_of_scalars(&g, &k);
            let v = json!({
                "group": g.label(),
                "field": k.name(),
                "label": r.label(),
                "n": r.size(),
                "variables": r.size() * r.size(),
                "equation_count": r.polys().len(),
                "equations": r.render_equations(),
            });
            Ok(render_value(&v, cfg.format))
        }
        GroupCmd::Reduce { group, prime } => {
            let g = load_presentation(group)?;
            let r = reduce_mod_p(&g, *prime)?;
            let eqs: Vec<String> = r
                .polys
                .iter()
                .map(|f| {
                    let terms: Vec<String> = f
                        .terms()
                        .map(|(e, c)| {
                            let mono: Vec<String> = e
                                .iter()
                                .enumerate()
                                .filter(|(_, k)| **k > 0)
                                .map(|(v, k)| {
                                    let name = g.var_name(v);
                                    if *k == 1 { name } else { format!("{name}^{k}") }
                                })
                                .collect();
                            if mono.is_empty() {
                                c.to_string()
                            } else if *c == 1 {
                                mono.join("*")
                            } else {
                                format!("{c}*{}", mono.join("*"))
                            }
                        })
                        .collect();
                    if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }
                })
                .collect();
            let v = json!({
                "group": g.label(),
                "p": prime,
                "good_reduction": r.good_reduction,
                "equations": eqs,
            });
            Ok(render_value(&v, cfg.format))
        }
    }
}

fn run_cong(c: &CongCmd, cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    match c {
        CongCmd::Scan { group, pmax, exp, cap } => {
            let grp = load_group(group)?;
            let bound = pmax.unwrap_or(cfg.prime_bound);
            let k = exp.unwrap_or(cfg.exponent);
            let cap = cap.unwrap_or(cfg.cap);
            check_bound(bound)?;
            if k < 1 {
                return Err(Failure::Usage("--exp must be >= 1".into()));
            }
            let key = cache_key("cong scan", &canonical_group_bytes(&grp), &[("pmax", bound.to_string()), ("exp", k.to_string()), ("cap", cap.to_string())], cfg.format);
            cached(cfg, &key, || {
                let r = strong_approx_scan(&grp, bound, k, cap)?;
                Ok(render_report(&r, cfg.format))
            })
        }
        CongCmd::Image { group, modulus, cap } => {
            if *modulus == 0 {
                return Err(Failure::Usage("--mod must be >= 1".into()));
            }
            let grp = load_group(group)?;
            let rec = image_at_modulus(&grp, *modulus, cap.unwrap_or(cfg.cap))?;
            let mut v = serde_json::to_value(&rec).expect("serializable");
            v["group"] = json!(grp.label());
            Ok(render_value(&v, cfg.format))
        }
        CongCmd::Index { n, modulus } => {
            if *modulus == 0 || !(1..=4).contains(n) {
                return Err(Failure::Usage("need 1 <= n <= 4 and --mod >= 1".into()));
            }
            let idx = principal_congruence_index(*n, *modulus);
            let v = json!({"n": n, "m": modulus, "index": int_value(&idx)});
            Ok(render_value(&v, cfg.format))
        }
        CongCmd::Oneforall { groups, pmax, bad, cap } => {
            if groups.is_empty() {
                return Err(Failure::Usage("--groups needs at least one group".into()));
            }
            let sets: Vec<SIntegerGroup> = groups.iter().map(|s| load_group(s)).collect::<Result<_, _>>()?;
            let bound = pmax.unwrap_or(cfg.prime_bound);
            check_bound(bound)?;
            let r = one_for_all_scan(&sets, bound, bad, cap.unwrap_or(cfg.cap))?;
            Ok(render_report(&r, cfg.format))
        }
    }
}

fn int_value(x: &Int) -> Value {
    use num_traits::ToPrimitive;
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Serializes `report` with sorted keys (JSON) or as a fixed-width table.
pub fn render_report<T: Serialize>(report: &T, format: Format) -> Vec<u8> {
    let v = serde_json::to_value(report).expect("reports serialize");
    render_value(&v, format)
}

/// Renders a JSON value. Object keys come out sorted because
/// `serde_json::Map` is ordered by key.
pub fn render_value(v: &Value, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("valid json");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => render_text(v).into_bytes(),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render_text(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return format!("{}\n", scalar(v));
    };
    let mut scalars: Vec<(String, String)> = Vec::new();
    let mut tables: Vec<(String, &Vec<Value>)> = Vec::new();
    flatten(map, "", &mut scalars, &mut tables);
    let w = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, val) in &scalars {
        out.push_str(&format!("{k:<w$}  {val}\n"));
    }
    for (name, rows) in tables {
        out.push('\n');
        out.push_str(&format!("[{name}]\n"));
        let mut cols: Vec<String> = Vec::new();
        for r in rows {
            if let Value::Object(m) = r {
                for k in m.keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
        }
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| cols.iter().map(|c| r.get(c).map_or("-".into(), scalar)).collect())
            .collect();
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap())
            .collect();
        let line = |items: &[String]| -> String {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out.push_str(&line(&cols));
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
    }
    out
}

fn flatten<'a>(
    map: &'a serde_json::Map<String, Value>,
    prefix: &str,
    scalars: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, &'a Vec<Value>)>,
) {
    for (k, v) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => flatten(m, &key, scalars, tables),
            Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_object) => tables.push((key, a)),
            Value::Array(a) => scalars.push((key, a.iter().map(scalar).collect::<Vec<_>>().join(", "))),
            other => scalars.push((key, scalar(other))),
        }
    }
}

/// Cache entry on disk: the payload plus what produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ScanCacheEntry {
    pub key: String,
    pub tool_version: String,
    pub payload: String,
}

/// SHA-256 over the operation, canonical input bytes, sorted parameters,
/// output format and tool version.
pub fn cache_key(op: &str, input: &[u8], params: &[(&str, String)], format: Format) -> String {
    let mut h = Sha256::new();
    let mut field = |b: &[u8]| {
        h.update((b.len() as u64).to_be_bytes());
        h.update(b);
    };
    field(op.as_bytes());
    field(input);
    let mut ps: Vec<_> = params.to_vec();
    ps.sort();
    for (k, v) in ps {
        field(k.as_bytes());
        field(v.as_bytes());
    }
    field(if format == Format::Json { b"json" } else { b"text" });
    field(TOOL_VERSION.as_bytes());
    hex::encode(h.finalize())
}

fn cached(cfg: &RunConfig, key: &str, compute: impl FnOnce() -> Result<Vec<u8>, Failure>) -> Result<Vec<u8>, Failure> {
    let Some(dir) = &cfg.cache_dir else {
        return compute();
    };
    let path = dir.join(format!("{key}.json"));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(entry) = serde_json::from_str::<ScanCacheEntry>(&text) {
            if entry.key == key && entry.tool_version == TOOL_VERSION {
                return Ok(entry.payload.into_bytes());
            }
        }
    }
    let bytes = compute()?;
    let entry = ScanCacheEntry {
        key: key.to_string(),
        tool_version: TOOL_VERSION.to_string(),
        payload: String::from_utf8(bytes.clone()).expect("reports are UTF-8"),
    };
    // a failed cache write is not an error for the command
    if fs::create_dir_all(dir).is_ok() {
        let _ = write_atomic(&path, serde_json::to_string(&entry).expect("json").as_bytes());
    }
    Ok(bytes)
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        let mut v = vec!["arithgroup", "--no-cache"];
        v.extend_from_slice(args);
        dispatch(v)
    }

    fn json_of(o: &Outcome) -> Value {
        serde_json::from_slice(&o.stdout).unwrap()
    }

    #[test]
    fn nf_factor_qi_5() {
        let o = run(&["nf", "factor", "--field", "qi", "--prime", "5"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v = json_of(&o);
        let fs = v["factors"].as_array().unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| f["e"] == 1 && f["f"] == 1));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["nf", "factor", "--field", "qi", "--prime", "-1"]).code, 2);
        assert_eq!(run(&["nf", "factor", "--field", "qi"]).code, 2);
        assert_eq!(run(&["bogus"]).code, 2);
    }

    #[test]
    fn domain_errors_exit_1() {
        let o = run(&["nf", "factor", "--field", "qi", "--prime", "4"]);
        assert_eq!(o.code, 1);
        assert_eq!(json_of(&o)["error"]["kind"], "NotPrime");
        let o = run(&["nf", "factor", "--field", "nope", "--prime", "5"]);
        assert_eq!(json_of(&o)["error"]["kind"], "UnknownField");
    }

    #[test]
    fn cong_image_sanov_mod_4() {
        let o = run(&["cong", "image", "--group", "sanov", "--mod", "4"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(json_of(&o)["surjective"], false);
    }

    #[test]
    fn chebotarev_schema() {
        let o = run(&["nf", "chebotarev", "--field", "qi", "--bound", "100"]);
        let v = json_of(&o);
        for k in ["field", "bound", "split", "total", "ratio", "expected"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }

    #[test]
    fn lubotzky_verdict_is_a_string() {
        let o = run(&["lubotzky", "scan", "--group", "triangular", "--pmax", "7"]);
        assert_eq!(json_of(&o)["density"]["verdict"], "NOT_DENSE");
    }

    #[test]
    fn text_format_is_a_table() {
        let o = run(&["--format", "text", "cong", "scan", "--group", "sanov", "--pmax", "7"]);
        let s = String::from_utf8(o.stdout).unwrap();
        assert!(s.contains("[records]"), "{s}");
        assert!(s.lines().any(|l| l.starts_with("exceptional_primes")));
    }

    #[test]
    fn config_parsing() {
        let mut c = RunConfig::default();
        c.apply_text("prime_bound=13\n# comment\nformat=text\ncap=10\n").unwrap();
        assert_eq!((c.prime_bound, c.format, c.cap), (13, Format::Text, 10));
        assert!(RunConfig::default().apply_text("prime_bound=1").is_err());
        assert!(RunConfig::default().apply_text("format=xml").is_err());
        assert!(RunConfig::default().apply_text("colour=red").is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let args = ["arithgroup", "--cache-dir", d, "cong", "scan", "--group", "sanov", "--pmax", "11"];
        let first = dispatch(args);
        let second = dispatch(args);
        assert_eq!(first.code, 0);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}

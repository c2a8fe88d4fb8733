mod endos;
mod word;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use torelli::acceptance;
use torelli::diagrams::{diagrammatic_tau_alt, eta_inverse};
use torelli::johnson::*;
use torelli::schema::{ClassicalDoc, DerivationDoc, DiagramDoc, GElementDoc, LevineDoc};
use torelli::series::{Expansion, ExpansionKind};
use torelli::surface::{twist_library, SurfaceEndo};
use torelli::Error;

#[derive(Parser, Debug)]
#[command(name = "torelli", version, about = "Johnson-type homomorphisms of surface mapping classes")]
struct Cli {
    /// Genus of the surface; required by every command except `selftest`.
    #[arg(short = 'g', long, global = true)]
    genus: Option<usize>,

    /// Truncation degree of the expansion (at least level + 3).
    #[arg(long, env = "TORELLI_TRUNCATION", global = true)]
    truncation: Option<usize>,

    /// `default-alt`, `classical`, `handlebody` or `perturbed:<seed>`.
    #[arg(long, global = true, value_parser = parse_expansion)]
    expansion: Option<ExpansionKind>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// JSON array of `{name, genus, images}` entries usable in words.
    #[arg(long, global = true)]
    endos: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Alt,
    Classical,
    Levine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value of a Johnson homomorphism.
    Tau {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        word: String,
    },
    /// `τ^a_0` of a Lagrangian mapping class.
    Tau0 {
        #[arg(long)]
        word: String,
    },
    /// Membership in a filtration term.
    Member {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        word: String,
    },
    /// `τ^a_m` as a combination of tree diagrams.
    Diagram {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        word: String,
    },
    /// Runs the acceptance checks.
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

fn parse_expansion(s: &str) -> Result<ExpansionKind, String> {
    match s {
        "default-alt" => Ok(ExpansionKind::Alternative),
        "classical" => Ok(ExpansionKind::Classical),
        "handlebody" => Ok(ExpansionKind::Handlebody),
        _ => {
            let seed = s
                .strip_prefix("perturbed:")
                .or_else(|| s.strip_prefix("perturbed(").and_then(|t| t.strip_suffix(')')))
                .ok_or_else(|| format!("unknown expansion `{s}`"))?;
            seed.parse().map(ExpansionKind::Perturbed).map_err(|_| format!("bad seed `{seed}`"))
        }
    }
}

/// How a run ended; maps onto the exit status.
enum Failure {
    /// Bad input or an operational error (exit 1).
    Usage(String),
    /// The mapping class is not where the computation needs it (exit 2).
    Refusal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Membership(v) => Failure::Refusal(v.to_string()),
            Error::NotLagrangian(_) | Error::NotInImage(_) => Failure::Refusal(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

struct Run {
    genus: usize,
    truncation: Option<usize>,
    expansion: Option<ExpansionKind>,
    format: Format,
    library: BTreeMap<String, SurfaceEndo>,
    user: BTreeMap<String, SurfaceEndo>,
}

impl Run {
    fn word(&self, text: &str) -> Result<SurfaceEndo, Failure> {
        let w = word::parse_mc_word(text, self.genus, &self.user).map_err(|e| Failure::Usage(format!("in `{text}` at {e}")))?;
        Ok(word::resolve(&w, &self.library, &self.user)?)
    }

    /// The expansion for `kind`, or `None` for the built-in default path.
    fn expansion(&self, kind: Kind, level: usize) -> Result<Option<Expansion>, Failure> {
        if let Some(t) = self.truncation {
            if t < level + 3 {
                return Err(Failure::Usage(format!("truncation {t} is below level + 3 = {}", level + 3)));
            }
        }
        let default = match kind {
            Kind::Alt => ExpansionKind::Alternative,
            Kind::Classical => ExpansionKind::Classical,
            Kind::Levine => ExpansionKind::Handlebody,
        };
        let chosen = self.expansion.unwrap_or(default);
        let fits = match kind {
            Kind::Alt => matches!(chosen, ExpansionKind::Alternative | ExpansionKind::Perturbed(_)),
            _ => chosen == default,
        };
        if !fits {
            return Err(Failure::Usage(format!("expansion {chosen} does not apply to kind {kind:?}")));
        }
        if self.expansion.is_none() && self.truncation.is_none() {
            return Ok(None);
        }
        let t = self.truncation.unwrap_or(default_truncation(level));
        Ok(Some(Expansion::new(chosen, self.genus, t)?))
    }

    fn meta(&self, kind: Kind, level: usize) -> Value {
        let expansion = match kind {
            Kind::Classical => ExpansionKind::Classical,
            Kind::Levine => ExpansionKind::Handlebody,
            Kind::Alt => self.expansion.unwrap_or(ExpansionKind::Alternative),
        };
        self.meta_with(expansion, self.truncation.unwrap_or(default_truncation(level)))
    }

    fn meta_with(&self, expansion: ExpansionKind, truncation: usize) -> Value {
        json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "genus": self.genus,
            "truncation": truncation,
            "expansion": expansion.to_string(),
            "certificate": "rational",
        })
    }

    fn emit(&self, text: String, doc: Value) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("serializable")),
        }
    }

    fn tau(&self, kind: Kind, level: usize, text: &str) -> Result<(), Failure> {
        let h = self.word(text)?;
        let e = self.expansion(kind, level)?;
        let (shown, result) = match kind {
            Kind::Alt => {
                let d = match &e {
                    Some(e) => tau_alt_with(&h, level, e)?,
                    None => tau_alt(&h, level)?,
                };
                (d.to_string(), to_json(DerivationDoc::of(&d)?))
            }
            Kind::Classical => {
                let d = match &e {
                    Some(e) => tau_classical_with(&h, level, e)?,
                    None => tau_classical(&h, level)?,
                };
                (d.to_string(), to_json(ClassicalDoc::of(&d)?))
            }
            Kind::Levine => {
                let d = match &e {
                    Some(e) => tau_levine_with(&h, level, e)?,
                    None => tau_levine(&h, level)?,
                };
                (d.to_string(), to_json(LevineDoc::of(&d)?))
            }
        };
        let doc = json!({"meta": self.meta(kind, level), "command": "tau", "word": text, "result": result});
        self.emit(shown, doc);
        Ok(())
    }

    fn tau0(&self, text: &str) -> Result<(), Failure> {
        let h = self.word(text)?;
        let x = tau0_alt(&h)?;
        let doc = json!({"meta": self.meta_with(ExpansionKind::Handlebody, 2), "command": "tau0", "word": text, "result": GElementDoc::of(&x)?});
        self.emit(x.to_string(), doc);
        Ok(())
    }

    fn member(&self, kind: Kind, level: usize, text: &str) -> Result<(), Failure> {
        let h = self.word(text)?;
        let e = self.expansion(kind, level)?;
        let g = self.genus;
        // an explicit expansion runs the rational check, which also names
        // the violation; otherwise the integer kernel answers first
        let fast = match (&e, kind) {
            (Some(_), _) => None,
            (None, Kind::Alt) => Some(membership_alt(&h, level)?),
            (None, Kind::Classical) => Some(membership_classical(&h, level)?),
            (None, Kind::Levine) => Some(membership_levine(&h, level)?),
        };
        let check = if fast == Some(true) {
            Ok(())
        } else {
            let t = self.truncation.unwrap_or(default_truncation(level));
            let e = match e {
                Some(e) => e,
                None => Expansion::new(
                    match kind {
                        Kind::Alt => ExpansionKind::Alternative,
                        Kind::Classical => ExpansionKind::Classical,
                        Kind::Levine => ExpansionKind::Handlebody,
                    },
                    g,
                    t,
                )?,
            };
            match kind {
                Kind::Alt => check_alt(&h, level, &e),
                Kind::Classical => check_classical(&h, level, &e),
                Kind::Levine => check_levine(&h, level, &e),
            }
        };
        let (is_member, violation) = match check {
            Ok(()) => (true, None),
            Err(Error::Membership(v)) => (false, Some(v)),
            Err(e) => return Err(e.into()),
        };
        if let Some(v) = &violation {
            eprintln!("{v}");
        }
        let doc = json!({
            "meta": self.meta(kind, level),
            "command": "member",
            "word": text,
            "result": {
                "member": is_member,
                "violation": violation.map(|v| json!({"generator": v.generator, "degree": v.degree, "slice": v.slice})),
            },
        });
        self.emit(is_member.to_string(), doc);
        Ok(())
    }

    fn diagram(&self, level: usize, text: &str) -> Result<(), Failure> {
        let h = self.word(text)?;
        let d = match self.expansion(Kind::Alt, level)? {
            Some(e) => eta_inverse(&tau_alt_with(&h, level, &e)?)?,
            None => diagrammatic_tau_alt(&h, level)?,
        };
        let doc = json!({"meta": self.meta(Kind::Alt, level), "command": "diagram", "word": text, "result": DiagramDoc::of(&d)?});
        self.emit(d.to_string(), doc);
        Ok(())
    }
}

fn to_json(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn selftest(quick: bool, format: Format) -> ExitCode {
    let mut all = true;
    let mut rows = Vec::new();
    for id in 1..=acceptance::TITLES.len() {
        let o = acceptance::run_one(id, quick);
        all &= o.passed;
        if format == Format::Text {
            println!("{}", acceptance::report_line(&o));
        }
        rows.push(json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}));
    }
    if format == Format::Json {
        let doc = json!({
            "meta": {"tool_version": env!("CARGO_PKG_VERSION"), "certificate": "rational"},
            "command": "selftest",
            "quick": quick,
            "passed": all,
            "criteria": rows,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Command::Selftest { quick } = cli.command {
        return selftest(quick, cli.format);
    }
    let Some(genus) = cli.genus else {
        eprintln!("error: -g/--genus is required");
        return ExitCode::from(1);
    };
    if genus == 0 {
        eprintln!("error: genus must be at least 1");
        return ExitCode::from(1);
    }
    let library = twist_library(genus);
    let user = match &cli.endos {
        Some(p) => match endos::load_user_endos(p, genus, &library) {
            Ok(u) => u,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        None => BTreeMap::new(),
    };
    let run = Run { genus, truncation: cli.truncation, expansion: cli.expansion, format: cli.format, library, user };
    let r = match &cli.command {
        Command::Tau { kind, level, word } => run.tau(*kind, *level, word),
        Command::Tau0 { word } => run.tau0(word),
        Command::Member { kind, level, word } => run.member(*kind, *level, word),
        Command::Diagram { level, word } => run.diagram(*level, word),
        Command::Selftest { .. } => unreachable!(),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Refusal(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
    }
}

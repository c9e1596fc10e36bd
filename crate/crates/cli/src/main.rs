//! `sliderule`: render rules, run scale analyses and start the HTTP service.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sliderule_core::api;
use sliderule_core::render::{render_rule, Rule, RuleLayout};
use sliderule_core::{Error, ScaleRegistry};

const INPUT_ERROR: u8 = 2;
const ANALYSIS_ERROR: u8 = 3;
const RADIUS_VAR: &str = "SLIDERULE_R_KM";

#[derive(Parser)]
#[command(name = "sliderule", version, about = "Slide-rule scale construction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a rule layout to SVG.
    Render {
        #[arg(long)]
        layout: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the tick sets and geometry as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Override the layout's minimum tick gap, in mm.
        #[arg(long)]
        min_gap: Option<f64>,
        /// Eye resolution used only to check `--min-gap` against.
        #[arg(long)]
        h: Option<f64>,
    },
    /// Run an analysis and print its JSON report.
    Analyze {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Scale file (JSON) or registry name; give two for alignment.
        #[arg(long = "scale")]
        scales: Vec<String>,
        /// Complete request body (JSON file); other flags are merged into it.
        #[arg(long)]
        request: Option<PathBuf>,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        xc: Option<f64>,
        #[arg(long)]
        xr: Option<f64>,
        #[arg(long)]
        x_lo: Option<f64>,
        #[arg(long)]
        x_hi: Option<f64>,
        #[arg(long)]
        separation_factor: Option<f64>,
        #[arg(long)]
        rational_bound: Option<u32>,
        /// Length for registry scales, in mm.
        #[arg(long)]
        length: Option<f64>,
        /// Tick gap to check against `--h`.
        #[arg(long)]
        min_gap: Option<f64>,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Accuracy,
    Alignment,
    Triangle,
    Coincidence,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::Accuracy => "accuracy",
            Kind::Alignment => "alignment",
            Kind::Triangle => "triangle",
            Kind::Coincidence => "coincidence",
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: INPUT_ERROR,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() {
                INPUT_ERROR
            } else {
                ANALYSIS_ERROR
            },
            message: format!("[{}] {e}", e.code()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn registry() -> Result<ScaleRegistry, Failure> {
    match std::env::var(RADIUS_VAR) {
        Ok(text) => {
            let r: f64 = text
                .trim()
                .parse()
                .map_err(|_| Failure::input(format!("{RADIUS_VAR}={text:?} is not a number")))?;
            Ok(ScaleRegistry::with_earth_radius_km(r)?)
        }
        Err(_) => Ok(ScaleRegistry::standard()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Parses JSON, pointing at the offending line on failure.
fn parse_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::input(format!(
            "{}:{}:{}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn check_gap(min_gap: Option<f64>, h: Option<f64>) {
    if let (Some(gap), Some(h)) = (min_gap, h) {
        if gap > h {
            eprintln!(
                "warning: min_gap {gap} mm exceeds h {h} mm; ticks will be sparser than the eye can resolve"
            );
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Render {
            layout,
            out,
            json,
            min_gap,
            h,
        } => {
            let reg = registry()?;
            let mut doc: RuleLayout = parse_file(&layout)?;
            if let Some(gap) = min_gap {
                doc.policy.min_gap_mm = gap;
            }
            check_gap(Some(doc.policy.min_gap_mm), h);
            let rule = Rule::from_layout(&doc, &reg)
                .map_err(|e| Failure::input(format!("{}: {e}", layout.display())))?;
            let rendered = render_rule(&rule);
            for w in &rendered.warnings {
                eprintln!("warning: {w}");
            }
            fs::write(&out, &rendered.svg)
                .map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
            if let Some(path) = json {
                fs::write(&path, api::to_json(&rendered))
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        }
        Command::Analyze {
            kind,
            scales,
            request,
            h,
            a,
            xc,
            xr,
            x_lo,
            x_hi,
            separation_factor,
            rational_bound,
            length,
            min_gap,
        } => {
            check_gap(min_gap, h);
            let reg = registry()?;
            let mut body = match &request {
                Some(path) => match parse_file::<Value>(path)? {
                    Value::Object(m) => m,
                    _ => {
                        return Err(Failure::input(format!(
                            "{}: expected an object",
                            path.display()
                        )))
                    }
                },
                None => Map::new(),
            };
            let mut set = |key: &str, v: Option<Value>| {
                if let Some(v) = v {
                    body.insert(key.to_string(), v);
                }
            };
            let mut refs = scales
                .iter()
                .map(|s| scale_arg(s))
                .collect::<Result<Vec<_>, _>>()?;
            if refs.len() > 2 {
                return Err(Failure::input("at most two --scale arguments"));
            }
            let second = (refs.len() == 2).then(|| refs.remove(1));
            set("scale", refs.pop());
            set("scale2", second);
            set("h", h.map(|v| json!(v)));
            set("a", a.map(|v| json!(v)));
            set("x_c", xc.map(|v| json!(v)));
            set("x_r", xr.map(|v| json!(v)));
            set("x_lo", x_lo.map(|v| json!(v)));
            set("x_hi", x_hi.map(|v| json!(v)));
            set("separation_factor", separation_factor.map(|v| json!(v)));
            set("rational_bound", rational_bound.map(|v| json!(v)));
            set("length_mm", length.map(|v| json!(v)));
            let report = api::analyze(&reg, kind.as_str(), Value::Object(body))?;
            print!("{}", api::to_json(&report));
            Ok(())
        }
        Command::Serve { port } => {
            let reg = registry()?;
            let runtime = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(|e| Failure::input(e.to_string()))?;
            eprintln!("listening on port {port}");
            runtime
                .block_on(sliderule_service::serve(port, reg))
                .map_err(|e| Failure::input(format!("port {port}: {e}")))
        }
    }
}

/// A path to a JSON scale document, or else a registry name.
fn scale_arg(arg: &str) -> Result<Value, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        parse_file(path)
    } else if arg.ends_with(".json") {
        Err(Failure::input(format!("{arg}: no such file")))
    } else {
        Ok(Value::String(arg.to_string()))
    }
}

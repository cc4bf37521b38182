use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skein::tangle::DEFAULT_MAX_CROSSINGS;
use skein::verify::{self, SuiteReport};
use skein::{enumerate_smoothings, OrientedSmoothing, PlanarArcDiagram, SkeinElement, TangleDiagram};

#[derive(Parser)]
#[command(name = "skein", version, about = "Jones invariants of alternating tangles and their alternation properties")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the verification suites.
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    /// Largest number of crossings a state sum may expand.
    #[arg(long, env = "SKEIN_MAX_CROSSINGS", global = true)]
    max_crossings: Option<usize>,
    /// Require terms on a minimal and a maximal smoothing.
    #[arg(long, global = true)]
    strict_minmax: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Jones invariant of a tangle file (link value for closed diagrams).
    Jones { file: PathBuf },
    /// Is a skein element (or the invariant of a tangle) alternating?
    CheckAlt { file: PathBuf },
    /// Is a skein element (or the invariant of a tangle) coherently alternating?
    CheckCoherent { file: PathBuf },
    /// Plug tangles, skein elements, smoothings or diagrams into a diagram.
    Compose { diagram: PathBuf, inputs: Vec<PathBuf> },
    /// Rotation number of a smoothing or rotation-associated number of a diagram.
    Rotation { file: PathBuf },
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// List basis objects.
    Enumerate {
        #[arg(value_enum)]
        what: Enumerable,
        k: usize,
        /// In-point parity; both parities when omitted.
        #[arg(long)]
        parity: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Theorem1,
    Theorem2,
    Morphism,
    RotationAdditivity,
    BasicConstants,
    Decompose,
}

#[derive(Clone, Copy, ValueEnum)]
enum Enumerable {
    Smoothings,
}

/// Contents of an input file, recognised by shape.
enum Loaded {
    Tangle(TangleDiagram),
    Element(SkeinElement),
    Smoothing(OrientedSmoothing),
    Diagram(PlanarArcDiagram),
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let located = |e: String| Failure(format!("{}: {e}", path.display()));
    if !text.trim_start().starts_with('{') {
        return text.parse().map(Loaded::Tangle).map_err(|e| located(format!("{e}")));
    }
    let value: Value = serde_json::from_str(&text).map_err(|e| located(e.to_string()))?;
    let has = |key: &str| value.get(key).is_some();
    let parsed = if has("terms") {
        serde_json::from_value(value).map(Loaded::Element)
    } else if has("crossings") {
        serde_json::from_value(value).map(Loaded::Tangle)
    } else if has("arcs") {
        serde_json::from_value(value).map(Loaded::Diagram)
    } else if has("pairs") {
        serde_json::from_value(value).map(Loaded::Smoothing)
    } else {
        return Err(located("unrecognised JSON object".into()));
    };
    parsed.map_err(|e| located(e.to_string()))
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values serialise"),
    }
}

struct Runner {
    format: Format,
    seed: u64,
    cap: usize,
    strict: bool,
}

impl Runner {
    fn element(&self, loaded: Loaded) -> Result<SkeinElement, Failure> {
        match loaded {
            Loaded::Element(e) => Ok(e),
            Loaded::Tangle(t) => Ok(t.jones_capped(self.cap)?),
            Loaded::Smoothing(s) => Ok(SkeinElement::monomial(s, skein::LaurentPoly::one())),
            Loaded::Diagram(_) => Err(Failure("expected a tangle or a skein element, got a diagram".into())),
        }
    }

    fn jones(&self, file: &Path) -> Outcome {
        let Loaded::Tangle(t) = load(file)? else {
            return Err(Failure(format!("{}: not a tangle", file.display())));
        };
        if t.k() == 0 {
            let (jhat, j) = t.evaluate_link_capped(self.cap)?;
            let text = format!("unnormalized: {jhat}\nnormalized: {j}");
            return Ok((render(self.format, text, json!({ "jhat": jhat, "j": j })), true));
        }
        let e = t.jones_capped(self.cap)?;
        Ok((render(self.format, e.to_string(), json!(e)), true))
    }

    fn check_alt(&self, file: &Path) -> Outcome {
        let e = self.element(load(file)?)?;
        let failure = e.alternation_failure(self.strict);
        let ok = failure.is_none();
        let mut text = ok.to_string();
        if let Some(f) = &failure {
            write!(text, "\n{f}").unwrap();
        }
        let value = json!({
            "alternating": ok,
            "witness": failure.map(|f| f.to_string()),
        });
        Ok((render(self.format, text, value), ok))
    }

    fn check_coherent(&self, file: &Path) -> Outcome {
        let e = self.element(load(file)?)?;
        let report = e.coherence_report();
        let ok = report.is_coherent();
        let mut text = ok.to_string();
        for (depth, n) in report.census.iter().enumerate() {
            write!(text, "\ndepth {depth}: {n} closures").unwrap();
        }
        let witness = report.failure.as_ref().map(|(depth, closure, why)| {
            write!(text, "\nfailing closure at depth {depth}: {closure}\n{why}").unwrap();
            json!({ "depth": depth, "closure": closure, "reason": why.to_string() })
        });
        let value = json!({ "coherent": ok, "census": report.census, "witness": witness });
        Ok((render(self.format, text, value), ok))
    }

    fn compose(&self, diagram: &Path, inputs: &[PathBuf]) -> Outcome {
        let Loaded::Diagram(d) = load(diagram)? else {
            return Err(Failure(format!("{}: not a planar arc diagram", diagram.display())));
        };
        let loaded = inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
        let mixed = || Failure("inputs must all be of one kind".into());
        let (text, value) = match loaded.first() {
            Some(Loaded::Tangle(_)) => {
                let ts = loaded
                    .into_iter()
                    .map(|l| if let Loaded::Tangle(t) = l { Ok(t) } else { Err(mixed()) })
                    .collect::<Result<Vec<_>, _>>()?;
                let t = TangleDiagram::compose(&d, &ts)?;
                (t.to_string().trim_end().to_string(), json!(t))
            }
            Some(Loaded::Element(_)) => {
                let es = loaded
                    .into_iter()
                    .map(|l| if let Loaded::Element(e) = l { Ok(e) } else { Err(mixed()) })
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&SkeinElement> = es.iter().collect();
                let e = SkeinElement::apply_operator(&d, &refs)?;
                (e.to_string(), json!(e))
            }
            Some(Loaded::Smoothing(_)) => {
                let ss = loaded
                    .into_iter()
                    .map(|l| if let Loaded::Smoothing(s) = l { Ok(s) } else { Err(mixed()) })
                    .collect::<Result<Vec<_>, _>>()?;
                let s = d.apply(&ss)?;
                (s.to_string(), json!(s))
            }
            Some(Loaded::Diagram(_)) => {
                let ds = loaded
                    .into_iter()
                    .map(|l| if let Loaded::Diagram(x) = l { Ok(x) } else { Err(mixed()) })
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&PlanarArcDiagram> = ds.iter().collect();
                let out = d.substitute(&refs)?;
                (serde_json::to_string(&out)?, json!(out))
            }
            None => return Err(Failure("nothing to plug in".into())),
        };
        Ok((render(self.format, text, value), true))
    }

    fn rotation(&self, file: &Path) -> Outcome {
        let (label, r) = match load(file)? {
            Loaded::Smoothing(s) => ("R", s.rotation_number()),
            Loaded::Diagram(d) => ("R_D", d.rotation_associated_number()?),
            _ => return Err(Failure("expected a smoothing or a planar arc diagram".into())),
        };
        let text = format!("{label} = {r}");
        Ok((render(self.format, text, json!({ label: r.to_string() })), true))
    }

    fn verify(&self, suite: Suite, cases: usize) -> Outcome {
        let max_crossings = self.cap.min(6);
        let report = match suite {
            Suite::RotationAdditivity => verify::rotation_additivity(self.seed, cases, 16),
            Suite::BasicConstants => verify::basic_constants(5),
            Suite::Morphism => verify::morphism(self.seed, cases, max_crossings),
            Suite::Theorem2 => verify::theorem2(self.seed, cases, max_crossings, 4).0,
            Suite::Theorem1 => {
                let (base, pool) = verify::theorem2(self.seed, 300, max_crossings, 4);
                if !base.all_passed() {
                    base
                } else {
                    verify::theorem1(self.seed, cases, &pool, 5)
                }
            }
            Suite::Decompose => verify::decompose_soundness(self.seed, cases, 3, 12),
        };
        Ok(self.suite_output(report))
    }

    fn suite_output(&self, report: SuiteReport) -> (String, bool) {
        let ok = report.all_passed();
        let value = json!({
            "suite": report.name,
            "cases": report.cases,
            "passed": report.passed,
            "counterexamples": report.failures,
        });
        (render(self.format, report.to_string(), value), ok)
    }

    fn enumerate(&self, k: usize, parity: Option<u8>) -> Outcome {
        if k == 0 {
            return Err(Failure("k must be positive".into()));
        }
        let parities = match parity {
            Some(p @ (0 | 1)) => vec![p],
            Some(p) => return Err(Failure(format!("parity must be 0 or 1, got {p}"))),
            None => vec![0, 1],
        };
        let basis: Vec<OrientedSmoothing> = parities.into_iter().flat_map(|p| enumerate_smoothings(k, p)).collect();
        let text = basis
            .iter()
            .map(|s| format!("{s}  R = {}", s.rotation_number()))
            .collect::<Vec<_>>()
            .join("\n");
        Ok((render(self.format, text, json!(basis)), true))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let runner = Runner {
        format: cli.format,
        seed: cli.seed,
        cap: cli.max_crossings.unwrap_or(DEFAULT_MAX_CROSSINGS),
        strict: cli.strict_minmax,
    };
    let outcome = match &cli.command {
        Command::Jones { file } => runner.jones(file),
        Command::CheckAlt { file } => runner.check_alt(file),
        Command::CheckCoherent { file } => runner.check_coherent(file),
        Command::Compose { diagram, inputs } => runner.compose(diagram, inputs),
        Command::Rotation { file } => runner.rotation(file),
        Command::Verify { suite, cases } => runner.verify(*suite, *cases),
        Command::Enumerate { what: Enumerable::Smoothings, k, parity } => runner.enumerate(*k, *parity),
    };
    match outcome {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ratluk::decision::{equivalent_with, is_satisfiable_with, is_tautology_with, Verdict};
use ratluk::duality::{
    compose_pwl, mv_approximant_with, qmap_compose_with, vanishing_witness, zeroset, Presentation,
    QMap, QuotientElement, RatPolyhedron,
};
use ratluk::pwl::{compile_in, Compile, Limits, PwlFunc};
use ratluk::semantics::{eval, random_rational_point, Valuation};
use ratluk::syntax::{parse_ql, parse_ratluk, translate_i1, translate_i2, Term};
use ratluk::Error;

/// Exact decision procedures for rational Łukasiewicz logic.
///
/// Formula arguments are either inline text or a path to a file holding
/// formula text or a piecewise-linear function in JSON.
#[derive(Parser, Debug)]
#[command(name = "ratluk", version)]
struct Cli {
    /// Input language; `auto` picks ratluk when the text uses `delta(`.
    #[arg(long, value_enum, default_value_t = Lang::Auto, global = true)]
    lang: Lang,

    /// Cell budget for piecewise-linear computations.
    #[arg(long, default_value_t = ratluk::pwl::DEFAULT_MAX_CELLS, global = true)]
    max_cells: usize,

    /// Seed for randomly chosen evaluation points.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula at a rational point (a seeded random one if `--at` is absent).
    Eval {
        #[arg(long)]
        at: Option<String>,
        formula: String,
    },
    /// Decide whether a formula takes value 1 everywhere.
    Taut { formula: String },
    /// Decide whether a formula takes value 1 somewhere.
    Sat { formula: String },
    /// Decide whether two formulas define the same function.
    Equiv { left: String, right: String },
    /// Translate between the two languages.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        formula: String,
    },
    /// Compute the zeroset of a formula or function.
    Zeroset {
        #[arg(short, long)]
        output: Option<PathBuf>,
        formula: String,
    },
    /// Decide whether G lies in the principal ideal generated by F.
    IdealMember {
        #[arg(short)]
        f: String,
        #[arg(short)]
        g: String,
    },
    /// Integer-coefficient generator with the same zeroset.
    MvApprox {
        #[arg(short, long)]
        output: Option<PathBuf>,
        formula: String,
    },
    /// Compose two maps: apply M first, then N.
    Compose {
        #[arg(short)]
        m: PathBuf,
        #[arg(short)]
        n: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pull a function on the codomain of MAP back to its domain.
    Dual {
        #[arg(short)]
        m: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        formula: String,
    },
    /// Decide equality of A and B in the quotient by a presentation.
    ///
    /// The presentation is a polyhedron file, a function file or a formula.
    QuotientEq {
        #[arg(short)]
        p: String,
        a: String,
        b: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Lang {
    Auto,
    Ql,
    Ratluk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Ql,
    Ratluk,
}

enum Outcome {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Holds) => ExitCode::from(0),
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            report(&e);
            ExitCode::from(match e.error {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}

struct Failure {
    error: Error,
    source: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            error,
            source: None,
        }
    }
}

fn report(f: &Failure) {
    eprintln!("error: {}", f.error);
    if let (Error::Syntax { pos, .. }, Some(text)) = (&f.error, &f.source) {
        if !text.contains('\n') {
            eprintln!("  {text}");
            eprintln!(
                "  {}^",
                " ".repeat(text[..(*pos).min(text.len())].chars().count())
            );
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Formula text, or a function loaded from JSON.
enum Input {
    Text(String),
    Func(PwlFunc),
}

fn read_input(arg: &str) -> Run<Input> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(Input::Text(arg.to_string()));
    }
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        Ok(Input::Func(PwlFunc::from_json(&text)?))
    } else {
        Ok(Input::Text(text.trim().to_string()))
    }
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())).into())
}

fn write(path: &Path, text: &str) -> Run<()> {
    fs::write(path, format!("{text}\n"))
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())).into())
}

fn formula_text(arg: &str) -> Run<String> {
    match read_input(arg)? {
        Input::Text(t) => Ok(t),
        Input::Func(_) => {
            Err(Error::Format(format!("{arg}: expected formula text, found a function")).into())
        }
    }
}

fn resolve(lang: Lang, texts: &[&str]) -> Lang {
    match lang {
        Lang::Auto if texts.iter().any(|t| t.contains("delta(")) => Lang::Ratluk,
        Lang::Auto => Lang::Ql,
        l => l,
    }
}

fn parse<C, F>(text: &str, parser: F) -> Run<Term<C>>
where
    F: Fn(&str) -> ratluk::Result<Term<C>>,
{
    parser(text).map_err(|error| Failure {
        error,
        source: Some(text.to_string()),
    })
}

/// Runs `body` on the parsed formulas, in whichever language applies.
macro_rules! with_lang {
    ($lang:expr, $texts:expr, |$terms:ident| $body:expr) => {{
        let texts: &[&str] = $texts;
        match resolve($lang, texts) {
            Lang::Ratluk => {
                let $terms = texts
                    .iter()
                    .map(|t| parse(t, parse_ratluk))
                    .collect::<Run<Vec<_>>>()?;
                $body
            }
            _ => {
                let $terms = texts
                    .iter()
                    .map(|t| parse(t, parse_ql))
                    .collect::<Run<Vec<_>>>()?;
                $body
            }
        }
    }};
}

/// Compiles formula arguments and loaded functions to a common dimension.
fn functions(cli: &Cli, args: &[&str], min_dim: usize) -> Run<Vec<PwlFunc>> {
    let inputs = args
        .iter()
        .map(|a| read_input(a))
        .collect::<Run<Vec<_>>>()?;
    let texts: Vec<&str> = inputs
        .iter()
        .filter_map(|i| match i {
            Input::Text(t) => Some(t.as_str()),
            Input::Func(_) => None,
        })
        .collect();
    let lang = resolve(cli.lang, &texts);
    let limits = Limits::new(cli.max_cells);
    let mut dim = min_dim;
    for i in &inputs {
        if let Input::Func(f) = i {
            dim = dim.max(f.dim());
        }
    }
    let compile = |text: &str, dim: usize| -> Run<PwlFunc> {
        Ok(match lang {
            Lang::Ratluk => compile_in(&parse(text, parse_ratluk)?, dim, &limits)?,
            _ => compile_in(&parse(text, parse_ql)?, dim, &limits)?,
        })
    };
    for t in &texts {
        dim = dim.max(match lang {
            Lang::Ratluk => parse(t, parse_ratluk)?.dim(),
            _ => parse(t, parse_ql)?.dim(),
        });
    }
    inputs
        .iter()
        .map(|i| match i {
            Input::Text(t) => compile(t, dim),
            Input::Func(f) if f.dim() == dim => Ok(f.clone()),
            Input::Func(f) => Err(Error::DimensionMismatch {
                expected: dim,
                got: f.dim(),
            }
            .into()),
        })
        .collect()
}

fn point_json(v: &Valuation) -> Value {
    Value::Array(
        v.coords()
            .iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

fn verdict(cli: &Cli, v: &Verdict) -> Outcome {
    if cli.json {
        let w = v.witness.as_ref().map(point_json).unwrap_or(Value::Null);
        println!("{}", json!({ "answer": v.answer, "witness": w }));
    } else {
        println!("{v}");
    }
    if v.answer {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

fn emit_text(
    cli: &Cli,
    output: &Option<PathBuf>,
    json_text: String,
    plain: String,
) -> Run<Outcome> {
    match output {
        Some(path) => write(path, &json_text)?,
        None if cli.json => println!("{json_text}"),
        None => println!("{plain}"),
    }
    Ok(Outcome::Holds)
}

fn decide<C: Compile>(cli: &Cli, name: &str, terms: &[Term<C>]) -> Run<Verdict> {
    let limits = Limits::new(cli.max_cells);
    Ok(match name {
        "taut" => is_tautology_with(&terms[0], &limits)?,
        "sat" => is_satisfiable_with(&terms[0], &limits)?,
        _ => equivalent_with(&terms[0], &terms[1], &limits)?,
    })
}

fn evaluate<C: Compile>(cli: &Cli, phi: &Term<C>, at: &Option<String>) -> Run<Outcome> {
    let point = match at {
        Some(text) => Valuation::parse(text)?,
        None => random_rational_point(phi.dim(), 12, cli.seed),
    };
    let value = eval(phi, &point)?;
    if cli.json {
        println!(
            "{}",
            json!({ "value": value.to_string(), "point": point_json(&point) })
        );
    } else if at.is_some() {
        println!("{value}");
    } else {
        println!("{value} [{point}]");
    }
    Ok(Outcome::Holds)
}

fn load_map(path: &Path) -> Run<QMap> {
    Ok(QMap::from_json(&read(path)?)?)
}

fn presentation(cli: &Cli, arg: &str) -> Run<Presentation> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        let value: Value = serde_json::from_str(&text).unwrap_or(Value::Null);
        if value.get("ambient_dim").is_some() {
            return Ok(Presentation::of_polyhedron(&RatPolyhedron::from_json(
                &text,
            )?)?);
        }
    }
    let f = functions(cli, &[arg], 0)?.remove(0);
    Ok(Presentation::new(f))
}

fn run(cli: &Cli) -> Run<Outcome> {
    let limits = Limits::new(cli.max_cells);
    match &cli.command {
        Command::Eval { at, formula } => {
            let text = formula_text(formula)?;
            with_lang!(cli.lang, &[text.as_str()], |t| evaluate(cli, &t[0], at))
        }
        Command::Taut { formula } | Command::Sat { formula } => {
            let name = if matches!(cli.command, Command::Taut { .. }) {
                "taut"
            } else {
                "sat"
            };
            let text = formula_text(formula)?;
            let v = with_lang!(cli.lang, &[text.as_str()], |t| decide(cli, name, &t))?;
            Ok(verdict(cli, &v))
        }
        Command::Equiv { left, right } => {
            let (a, b) = (formula_text(left)?, formula_text(right)?);
            let v = with_lang!(cli.lang, &[a.as_str(), b.as_str()], |t| decide(
                cli, "equiv", &t
            ))?;
            Ok(verdict(cli, &v))
        }
        Command::Translate { to, formula } => {
            let text = formula_text(formula)?;
            let out = match to {
                Target::Ql => translate_i1(&parse(&text, parse_ratluk)?).to_string(),
                Target::Ratluk => translate_i2(&parse(&text, parse_ql)?).to_string(),
            };
            if cli.json {
                println!("{}", json!({ "formula": out }));
            } else {
                println!("{out}");
            }
            Ok(Outcome::Holds)
        }
        Command::Zeroset { output, formula } => {
            let f = functions(cli, &[formula], 0)?.remove(0);
            let z = zeroset(&f);
            emit_text(cli, output, z.to_json(), z.to_string())
        }
        Command::IdealMember { f, g } => {
            let fs = functions(cli, &[f, g], 0)?;
            let witness = vanishing_witness(&fs[1], &zeroset(&fs[0]))?;
            Ok(verdict(
                cli,
                &Verdict {
                    answer: witness.is_none(),
                    witness,
                },
            ))
        }
        Command::MvApprox { output, formula } => {
            let f = functions(cli, &[formula], 0)?.remove(0);
            let b = mv_approximant_with(&f, &limits)?;
            emit_text(cli, output, b.to_json(), b.to_string())
        }
        Command::Compose { m, n, output } => {
            let (lambda, sigma) = (load_map(m)?, load_map(n)?);
            let c = qmap_compose_with(&sigma, &lambda, &limits)?;
            let text = c.to_json();
            match output {
                Some(path) => write(path, &text)?,
                None => println!("{text}"),
            }
            Ok(Outcome::Holds)
        }
        Command::Dual { m, output, formula } => {
            let map = load_map(m)?;
            let g = functions(cli, &[formula], map.components().len())?.remove(0);
            let pulled = compose_pwl(&g, map.components(), &limits)?;
            emit_text(cli, output, pulled.to_json(), pulled.to_string())
        }
        Command::QuotientEq { p, a, b } => {
            let pres = Arc::new(presentation(cli, p)?);
            let fs = functions(cli, &[a, b], pres.n())?;
            let (x, y) = (
                QuotientElement::new(fs[0].clone(), Arc::clone(&pres))?,
                QuotientElement::new(fs[1].clone(), Arc::clone(&pres))?,
            );
            let d = limits.distance(x.rep(), y.rep())?;
            let witness = vanishing_witness(&d, pres.zeroset())?;
            Ok(verdict(
                cli,
                &Verdict {
                    answer: witness.is_none(),
                    witness,
                },
            ))
        }
    }
}

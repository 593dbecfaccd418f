macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

mod matrix;
mod monoid;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rookwreath::presentations::{Expr, Presentation, PresentationKind};
use rookwreath::verify::{self, Answer, Verdict, VerifyOptions};
use rookwreath::words::{
    base_words, canonical_category_path, hat, normal_form_min, normal_form_sing_tuple, plus, psi1,
    psi2, reverse,
};
use rookwreath::wreath::{count_variant, count_wreath, enumerate_wreath, Caps, Variant};
use serde_json::json;

const EXIT_PASS: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Presentations of wreath products of monoids with symmetric inverse
/// monoids and with the tensor category of partial bijections.
///
/// Exit status: 0 pass, 1 usage error, 2 verification failure, 3 inconclusive.
#[derive(Parser)]
#[command(name = "rookwreath", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generators and relations of a presentation.
    Emit(Target),
    /// Check soundness, generation and size of a presentation.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Evaluate a word, path or term to its element.
    Eval {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        expr: String,
    },
    /// Rewrite a word, path or term into its normal form. The singular kinds
    /// use the first word reached by breadth-first search.
    NormalForm {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        expr: String,
    },
    /// Decide whether two words are equal modulo the relations.
    WordProblem {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Enumerate a hom-set M ≀ I_{m,n} or one of its singular parts.
    Enumerate {
        #[arg(long, default_value = "trivial")]
        monoid: String,
        #[arg(long)]
        m: usize,
        /// Defaults to `m`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
        /// Print every element, not only the count.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply one of the alphabet translations.
    Translate {
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long, default_value = "trivial")]
        monoid: String,
        /// Level of the input.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a JSON file of verification cells, concurrently.
    Matrix {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, env = "ROOKWREATH_BUDGET")]
        budget: Option<usize>,
    },
}

#[derive(Args)]
struct Target {
    /// r-in, r-in-popova, r-min, r-min-small, omega-mi, xi-i, xi-mi,
    /// r-sing-in, r-sing-tuples or r-m-sing-in.
    #[arg(long)]
    kind: PresentationKind,
    /// Built-in name (trivial, c2, c3, semilattice, s3, bicyclic) or a JSON file.
    #[arg(long, default_value = "trivial")]
    monoid: String,
    /// Level, or object cap for omega-mi, xi-i and xi-mi.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Tuning {
    /// Node budget for the enumeration.
    #[arg(long, env = "ROOKWREATH_BUDGET")]
    budget: Option<usize>,
    /// Starting headroom above the object cap.
    #[arg(long, default_value_t = verify::DEFAULT_HEADROOM)]
    headroom: usize,
    #[arg(long, default_value_t = verify::MAX_HEADROOM)]
    max_headroom: usize,
    /// Extra relation `lhs=rhs` appended to the presentation; repeatable.
    #[arg(long = "extra", value_name = "LHS=RHS")]
    extra: Vec<String>,
    /// Seed for the random property samples.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl Tuning {
    fn options(&self) -> Result<VerifyOptions> {
        let extra_relations = self
            .extra
            .iter()
            .map(|r| {
                r.split_once('=')
                    .map(|(l, r)| (l.trim().to_string(), r.trim().to_string()))
                    .ok_or_else(|| anyhow!("extra relation {r:?} lacks '='"))
            })
            .collect::<Result<_>>()?;
        Ok(VerifyOptions {
            budget: self.budget,
            headroom: self.headroom,
            max_headroom: self.max_headroom,
            extra_relations,
            seed: self.seed,
            ..Default::default()
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    SingularMonoid,
    SingularTuples,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    /// Large alphabet to the small one.
    Psi1,
    /// Small alphabet to the large one.
    Psi2,
    /// Reverse a word over the s_i.
    Reverse,
    /// Shift a level-n path up one level.
    Plus,
    /// A category path to a tensor term.
    Hat,
}

fn print_json(value: &serde_json::Value) {
    outln!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn verdict_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn build(target: &Target) -> Result<Presentation> {
    let base = monoid::load(&target.monoid)?;
    Ok(Presentation::build(target.kind, &base, target.n)?)
}

fn emit(target: &Target) -> Result<u8> {
    let p = build(target)?;
    match target.format {
        Format::Text => out!("{}", p.to_text()),
        Format::Json => print_json(&p.to_json()),
    }
    Ok(EXIT_PASS)
}

fn run_verify(target: &Target, tuning: &Tuning) -> Result<u8> {
    let base = monoid::load(&target.monoid)?;
    let report = verify::verify_presentation(target.kind, &base, target.n, &tuning.options()?)?;
    match target.format {
        Format::Text => out!("{}", render::report(&report)),
        Format::Json => print_json(&serde_json::to_value(&report)?),
    }
    Ok(verdict_code(report.verdict))
}

fn eval(target: &Target, text: &str) -> Result<u8> {
    let p = build(target)?;
    let ev = p.evaluator()?;
    let value = p.evaluate(&ev, &p.parse_expr(text)?)?;
    match target.format {
        Format::Text => out!("{}", render::element(&value)),
        Format::Json => print_json(&json!({
            "input": text,
            "value": value,
        })),
    }
    Ok(EXIT_PASS)
}

fn normal_form(target: &Target, text: &str) -> Result<u8> {
    let p = build(target)?;
    let ev = p.evaluator()?;
    let words = base_words(p.base())?;
    let expr = p.parse_expr(text)?;
    let n = p.n();
    let normal = match (p.kind(), &expr) {
        (PresentationKind::RIn | PresentationKind::RMIn, Expr::Word(w)) => {
            Expr::Word(normal_form_min(w, n, &ev, &words)?.word())
        }
        (PresentationKind::RInPopova | PresentationKind::RMInSmall, Expr::Word(w)) => {
            Expr::Word(psi1(&normal_form_min(&psi2(w)?, n, &ev, &words)?.word())?)
        }
        (PresentationKind::RSingTuples, Expr::Word(w)) => {
            Expr::Word(normal_form_sing_tuple(w, n, &ev, &words)?.word())
        }
        (PresentationKind::OmegaMI, Expr::Path(path)) => {
            Expr::Path(canonical_category_path(&ev.path(path)?, &words)?)
        }
        (PresentationKind::XiI | PresentationKind::XiMI, Expr::Term(t)) => {
            Expr::Term(hat(&canonical_category_path(&ev.term(t)?, &words)?)?)
        }
        (PresentationKind::RSingIn | PresentationKind::RMSingIn, Expr::Word(w)) => {
            let value = ev.word(w, n)?;
            let generation = verify::check_generation(&p)?;
            let witness = generation
                .witnesses
                .get(&value)
                .ok_or_else(|| anyhow!("the value of {text:?} was not reached"))?;
            Expr::Word(witness.clone())
        }
        (kind, _) => bail!("no normal form is implemented for {kind}"),
    };
    let formatted = p.format_expr(&normal);
    match target.format {
        Format::Text => outln!("{formatted}"),
        Format::Json => print_json(&json!({
            "kind": p.kind().name(),
            "input": text,
            "normal_form": formatted,
        })),
    }
    Ok(EXIT_PASS)
}

fn word_problem(target: &Target, tuning: &Tuning, lhs: &str, rhs: &str) -> Result<u8> {
    let p = build(target)?;
    let (l, r) = (p.parse_expr(lhs)?, p.parse_expr(rhs)?);
    let answer = verify::word_problem(&p, &l, &r, &tuning.options()?)?;
    match target.format {
        Format::Text => outln!("{}", serde_json::to_value(answer)?.as_str().unwrap_or_default()),
        Format::Json => print_json(&json!({
            "kind": p.kind().name(),
            "lhs": lhs,
            "rhs": rhs,
            "answer": answer,
        })),
    }
    Ok(match answer {
        Answer::Inconclusive => EXIT_INCONCLUSIVE,
        _ => EXIT_PASS,
    })
}

fn enumerate(monoid: &str, m: usize, n: Option<usize>, variant: VariantArg, list: bool, format: Format) -> Result<u8> {
    let base = monoid::load(monoid)?;
    let m0 = base.zero_extended()?;
    let n = n.unwrap_or(m);
    let variant = match variant {
        VariantArg::Full => Variant::Full,
        VariantArg::SingularMonoid => Variant::SingularMonoid,
        VariantArg::SingularTuples => Variant::SingularTuples,
    };
    if variant != Variant::Full && m != n {
        bail!("the singular variants need m = n");
    }
    let size = m0.base().size();
    let expected = match variant {
        Variant::Full => count_wreath(size, m, n),
        v => count_variant(size, n, v),
    };
    let elements = enumerate_wreath(&m0, m, n, variant, Caps::default())?;
    match format {
        Format::Text => {
            outln!("{} elements (closed form {expected})", elements.len());
            if list {
                for el in &elements {
                    out!("{}", render::element(el));
                }
            }
        }
        Format::Json => {
            let mut out = json!({
                "monoid": base.name(),
                "m": m,
                "n": n,
                "variant": variant,
                "count": elements.len(),
                "expected": expected,
            });
            if list {
                out["elements"] = serde_json::to_value(&elements)?;
            }
            print_json(&out);
        }
    }
    Ok(EXIT_PASS)
}

fn translate(map: MapArg, monoid: &str, n: usize, text: &str, format: Format) -> Result<u8> {
    let base = monoid::load(monoid)?;
    let large = || Presentation::build(PresentationKind::RMIn, &base, n);
    let small = || Presentation::build(PresentationKind::RMInSmall, &base, n);
    let (source, target) = match map {
        MapArg::Psi1 => (large()?, small()?),
        MapArg::Psi2 => (small()?, large()?),
        MapArg::Reverse => (large()?, large()?),
        MapArg::Plus => {
            let omega = Presentation::build(PresentationKind::OmegaMI, &base, n + 1)?;
            (omega.clone(), omega)
        }
        MapArg::Hat => (
            Presentation::build(PresentationKind::OmegaMI, &base, n)?,
            Presentation::build(PresentationKind::XiMI, &base, n)?,
        ),
    };
    let input = source.parse_expr(text)?;
    let output = match (map, &input) {
        (MapArg::Psi1, Expr::Word(w)) => Expr::Word(psi1(w)?),
        (MapArg::Psi2, Expr::Word(w)) => Expr::Word(psi2(w)?),
        (MapArg::Reverse, Expr::Word(w)) => Expr::Word(reverse(w)?),
        (MapArg::Plus, Expr::Path(path)) => Expr::Path(plus(path)?),
        (MapArg::Hat, Expr::Path(path)) => Expr::Term(hat(path)?),
        _ => unreachable!("the source presentation fixes the expression type"),
    };
    let formatted = target.format_expr(&output);
    match format {
        Format::Text => outln!("{formatted}"),
        Format::Json => print_json(&json!({ "input": text, "output": formatted })),
    }
    Ok(EXIT_PASS)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Emit(target) => emit(&target),
        Command::Verify { target, tuning } => run_verify(&target, &tuning),
        Command::Eval { target, expr } => eval(&target, &expr),
        Command::NormalForm { target, expr } => normal_form(&target, &expr),
        Command::WordProblem {
            target,
            tuning,
            lhs,
            rhs,
        } => word_problem(&target, &tuning, &lhs, &rhs),
        Command::Enumerate {
            monoid,
            m,
            n,
            variant,
            list,
            format,
        } => enumerate(&monoid, m, n, variant, list, format),
        Command::Translate {
            map,
            monoid,
            n,
            expr,
            format,
        } => translate(map, &monoid, n, &expr, format),
        Command::Matrix {
            config,
            format,
            budget,
        } => matrix::run(&config, budget, format == Format::Json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
